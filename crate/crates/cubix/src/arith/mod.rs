//! Exact Bernoulli arithmetic, annihilator integers, vanishing verdicts and
//! the class-group data checker.

mod annihilator;
mod bernoulli;
mod cnpm;

pub use annihilator::{
    annihilator_bounds, e_value, epsilon_g, ord_p, vanishing_ext, AnnihilatorReport, EMode,
    EValue, EValueEntry, ExtReport, ExtVerdict, VandiverTable,
};
pub use bernoulli::{
    bernoulli, bernoulli_mod_p, bernoulli_mod_p_recurrence, bernoulli_reduced, irregular_pairs,
    is_prime, numerator_bn_over_n, primes_up_to, superfactorial, von_staudt_clausen_denominator,
};
pub use cnpm::{cnpm_check, CnpmData, CnpmLevel, CnpmReport, CnpmViolation, GaloisGen};
