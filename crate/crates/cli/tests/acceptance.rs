//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p cubix-cli --test acceptance` (add
//! `-- --nocapture` to see the lines as they go by).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubix::arith::{
    annihilator_bounds, bernoulli, epsilon_g, irregular_pairs, numerator_bn_over_n,
    vanishing_ext, von_staudt_clausen_denominator, EMode, ExtVerdict, VandiverTable,
};
use cubix::cn::cn_structure;
use cubix::cubic::{
    induce, is_cubic, multiextension_laws_check, oracle_cubic_check, theta_cocycle, CubicElement,
};
use cubix::ring::enumerate_group_ring_elements;
use cubix::sym::{
    build_a_b_p, build_phi, build_psi, evaluate_sym_at, flat, phi_closed_form, relation_element,
    subsets, verify_identities, EvalMode, FreeMonomial,
};
use cubix::{Coeff, CoeffRing, Error, FiniteAbelianGroup, GroupRingElement};

const CAP: u128 = 1 << 40;

fn pass(line: &str) {
    println!("[PASS] {line}");
}

fn z_n(n: u64) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(n).unwrap()
}

#[test]
fn criterion_01_identity_suite() {
    let start = Instant::now();
    for n in 2..=6 {
        let report = verify_identities(n).unwrap();
        assert!(report.all_pass, "n={n}: {report:?}");
        assert_eq!(report.checks.len(), 4);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "identity suite took {elapsed:?}");
    pass(&format!(
        "criterion 1: identity suite exact for n=2..6 in {:.1}s",
        elapsed.as_secs_f64()
    ));
}

#[test]
fn criterion_02_lemma_powers() {
    for n in 2..=6usize {
        for s in subsets(n) {
            let (a, _, p) = build_a_b_p(&s);
            let expected = p.to_laurent().pow(n as u32).sub(&a.to_laurent().pow(n as u32));
            assert_eq!(build_psi(&s, n).to_laurent(), expected, "n={n}, S={s:?}");
        }
    }
    pass("criterion 2: Psi_S = P_S^n - A_S^n for every S, n <= 6");
}

#[test]
fn criterion_03_dual_representation() {
    for n in 2..=5usize {
        assert_eq!(build_phi(n).to_laurent(), phi_closed_form(n), "n={n}");
    }
    pass("criterion 3: tensor expansion of Phi matches the closed form for n <= 5");
}

#[test]
fn criterion_04_exhaustive_cubic_sweep() {
    for m in [3u64, 2] {
        let ring = CoeffRing::modulus(m).unwrap();
        let all = enumerate_group_ring_elements(&ring, &z_n(2), 2, 1 << 24).unwrap();
        assert_eq!(all.len() as u64, m.pow(4));
        let mut cubics = Vec::new();
        for c in &all {
            let elementwise = match is_cubic(c, 2) {
                Ok(check) => check.ok,
                Err(Error::NotAUnit) => false,
                Err(e) => panic!("{e}"),
            };
            let oracle = oracle_cubic_check(c, 2, CAP).unwrap().ok && c.is_unit();
            assert_eq!(elementwise, oracle, "verdict disagreement over Z/{m} at {c}");
            if elementwise {
                cubics.push(c.clone());
            }
        }
        assert!(!cubics.is_empty());
        for a in &cubics {
            assert!(is_cubic(&a.invert_unit().unwrap(), 2).unwrap().ok);
            let verified = CubicElement::verify(a.clone(), 2).unwrap();
            assert!(multiextension_laws_check(&verified).unwrap().all_pass);
            for b in &cubics {
                assert!(is_cubic(&a.multiply(b).unwrap(), 2).unwrap().ok);
            }
        }
    }
    pass("criterion 4: 81- and 16-element sweeps agree with the oracle; cubics form a group; laws pass");
}

fn fuzz_normalized_units(
    rng: &mut ChaCha8Rng,
    ring: &CoeffRing,
    g: &FiniteAbelianGroup,
    count: usize,
) -> Vec<GroupRingElement> {
    let m = match ring {
        CoeffRing::Mod(m) => *m,
        _ => unreachable!(),
    };
    let basis = g.elements(1);
    let mut out = Vec::new();
    while out.len() < count {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(0..m as i64)).collect();
        let mut u = GroupRingElement::from_terms(
            ring.clone(),
            g.clone(),
            1,
            basis
                .iter()
                .cloned()
                .zip(coeffs.iter().map(|&c| Coeff::Int(BigInt::from(c)))),
        );
        // shift the identity coefficient so the augmentation is 1
        let aug = u.augmentation();
        let adjust = ring.add(&ring.one(), &ring.neg(&aug));
        let delta = GroupRingElement::from_terms(
            ring.clone(),
            g.clone(),
            1,
            [(g.zero(1), adjust)],
        );
        u = u.add(&delta).unwrap();
        if u.is_unit() {
            out.push(u);
        }
    }
    out
}

#[test]
fn criterion_05_constructive_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let groups = [z_n(2), z_n(3), FiniteAbelianGroup::new(vec![2, 2]).unwrap()];
    let mut theta_count = 0;
    for m in [3u64, 5] {
        let ring = CoeffRing::modulus(m).unwrap();
        for g in &groups {
            for u in fuzz_normalized_units(&mut rng, &ring, g, 5) {
                for n in 2..=3 {
                    let c = theta_cocycle(&u, n).unwrap();
                    assert!(is_cubic(&c, n).unwrap().ok, "theta({u}, {n}) over Z/{m}[{g}]");
                    theta_count += 1;
                }
                for n in 3..=4 {
                    let lifted = induce(&theta_cocycle(&u, n - 1).unwrap()).unwrap();
                    assert_eq!(lifted, theta_cocycle(&u, n).unwrap(), "induce at n={n}");
                }
            }
        }
    }
    pass(&format!(
        "criterion 5: {theta_count}/{theta_count} fuzzed theta outputs cubic; induce matches theta at n=3,4"
    ));
}

#[test]
fn criterion_06_flat_correctness() {
    let ring = CoeffRing::Mod(3);
    let all = enumerate_group_ring_elements(&ring, &z_n(2), 3, 1 << 24).unwrap();
    assert_eq!(all.len(), 6561);
    let cubics: Vec<GroupRingElement> = all
        .into_iter()
        .filter(|c| matches!(is_cubic(c, 3), Ok(check) if check.ok))
        .collect();
    assert!(!cubics.is_empty());

    // flat lands in the 2-cubics (flat itself revalidates; assert anyway)
    let mut flats = Vec::new();
    for c in &cubics {
        let d = flat(c).unwrap();
        assert!(is_cubic(&d, 2).unwrap().ok);
        flats.push(d);
    }

    // multiplicativity on sampled pairs
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1a7);
    for _ in 0..40 {
        let a = &cubics[rng.gen_range(0..cubics.len())];
        let b = &cubics[rng.gen_range(0..cubics.len())];
        let lhs = flat(&a.multiply(b).unwrap()).unwrap();
        let rhs = flat(a).unwrap().multiply(&flat(b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    // every defining relation evaluates to 1 at every sampled cubic element
    let x = FreeMonomial::var;
    for (n, sample) in [(3usize, &cubics), (2usize, &flats)] {
        for c in sample.iter() {
            for assignment in 0..(n + 1).pow(n as u32 + 1) {
                let mut w = Vec::new();
                let mut rest = assignment;
                for _ in 0..=n {
                    w.push(x(rest % (n + 1)));
                    rest /= n + 1;
                }
                let rel = relation_element(&w);
                let v = evaluate_sym_at(&rel, c, n + 1, EvalMode::CollapseCubic).unwrap();
                assert!(v.is_one(), "relation {assignment} at arity {n}");
            }
        }
    }
    pass(&format!(
        "criterion 6: {} brute-forced 3-cubics flatten to 2-cubics; flat multiplicative; relations evaluate to 1",
        cubics.len()
    ));
}

#[test]
fn criterion_07_bernoulli_anchors() {
    use num_rational::BigRational;
    let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(bernoulli(2), rat(1, 6));
    assert_eq!(bernoulli(4), rat(-1, 30));
    assert_eq!(numerator_bn_over_n(12).unwrap(), BigInt::from(691));
    for k in (2..=100u64).step_by(2) {
        assert_eq!(
            bernoulli(k).denom().clone(),
            von_staudt_clausen_denominator(k),
            "k={k}"
        );
    }
    pass("criterion 7: B_2 = 1/6, B_4 = -1/30, numerator(B_12/12) = 691, von Staudt-Clausen up to 100");
}

#[test]
fn criterion_08_irregular_pairs() {
    // irregular_pairs runs both modular algorithms internally and errors on
    // any disagreement, so a clean return is the agreement check
    let pairs = irregular_pairs(1000, None).unwrap();
    for anchor in [(691, 12), (37, 32), (103, 24)] {
        assert!(pairs.contains(&anchor), "missing {anchor:?}");
    }
    pass(&format!(
        "criterion 8: {} irregular pairs below 1000 identical under both algorithms",
        pairs.len()
    ));
}

#[test]
fn criterion_09_annihilator_anchors() {
    let vd = VandiverTable::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(0xa991);
    for _ in 0..50 {
        let factors = rng.gen_range(1..=3);
        let orders: Vec<u64> = (0..factors).map(|_| rng.gen_range(1..=40)).collect();
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let report = annihilator_bounds(&g, 3, &EMode::Strict, &vd, None).unwrap();
        assert_eq!(report.m, "1", "M_4 for {g}");
    }

    let z691 = z_n(691);
    let r11 = annihilator_bounds(&z691, 11, &EMode::Vandiver, &vd, None).unwrap();
    assert_eq!(r11.m_prime, "691");

    let r10 = annihilator_bounds(&z691, 10, &EMode::Vandiver, &vd, None).unwrap();
    assert!(
        r10.verdicts.iter().any(|v| v.starts_with("trivial")),
        "{:?}",
        r10.verdicts
    );

    assert_eq!(epsilon_g(&z_n(3)), 1);
    assert_eq!(epsilon_g(&FiniteAbelianGroup::new(vec![2, 5]).unwrap()), 2);
    assert_eq!(r10.epsilon, 1);
    let genus_report =
        annihilator_bounds(&FiniteAbelianGroup::new(vec![2, 3]).unwrap(), 2, &EMode::Strict, &vd, Some(4))
            .unwrap();
    assert_eq!(genus_report.epsilon, 2);
    assert_eq!(genus_report.epsilon_gy, Some(2));
    let odd_genus =
        annihilator_bounds(&FiniteAbelianGroup::new(vec![2, 3]).unwrap(), 2, &EMode::Strict, &vd, Some(3))
            .unwrap();
    assert_eq!(odd_genus.epsilon_gy, Some(1));
    pass("criterion 9: M_4 = 1 on 50 random groups; M'_12(Z/691) = 691; d=10 verdict trivial; epsilon gcds");
}

#[test]
fn criterion_10_vanishing_ext() {
    let vd = VandiverTable::bundled();
    let irregular: BTreeSet<u64> = irregular_pairs(100, None)
        .unwrap()
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    for p in cubix::arith::primes_up_to(100).into_iter().filter(|&p| p >= 3) {
        if irregular.contains(&p) {
            continue;
        }
        for n in 2..=12 {
            let r = vanishing_ext(p, n, &vd).unwrap();
            assert_eq!(r.verdict, ExtVerdict::Vanishes, "p={p}, n={n}: {r:?}");
        }
    }
    let r = vanishing_ext(691, 12, &vd).unwrap();
    assert_eq!(r.verdict, ExtVerdict::Nonvanishing);
    assert!(r.provenance.contains("Ribet"), "{}", r.provenance);
    assert!(!r.provenance.contains("Herbrand"), "{}", r.provenance);
    let r = vanishing_ext(37, 2, &vd).unwrap();
    assert_eq!(r.verdict, ExtVerdict::Vanishes);
    assert!(r.provenance.contains("Herbrand"), "{}", r.provenance);
    pass("criterion 10: vanishing for regular p <= 100, n = 2..12; (691,12) nonvanishing; provenance named");
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All abelian groups of order exactly n, as lists of prime-power orders.
fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    let mut shapes: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in cubix::ring::factorize(n) {
        let mut next = Vec::new();
        for partition in partitions(e) {
            for shape in &shapes {
                let mut extended = shape.clone();
                extended.extend(partition.iter().map(|&a| p.pow(a)));
                next.push(extended);
            }
        }
        shapes = next;
    }
    shapes
}

#[test]
fn criterion_11_c1_structure() {
    let mut checked = 0;
    for order in 1..=64u64 {
        for orders in abelian_groups_of_order(order) {
            let a = FiniteAbelianGroup::new(if orders.is_empty() { vec![1] } else { orders })
                .unwrap();
            let s = cn_structure(&a, 1, CAP).unwrap();
            assert_eq!(s.free_rank as u64, order - 1, "A = {a}");
            assert!(s.invariant_factors.is_empty(), "A = {a}");
            checked += 1;
        }
    }
    // reordering invariance on a nontrivial instance
    let s1 = cn_structure(&FiniteAbelianGroup::new(vec![2, 3]).unwrap(), 2, CAP).unwrap();
    let s2 = cn_structure(&FiniteAbelianGroup::new(vec![3, 2]).unwrap(), 2, CAP).unwrap();
    assert_eq!(s1.invariant_factors, s2.invariant_factors);
    assert_eq!(s1.free_rank, s2.free_rank);
    pass(&format!(
        "criterion 11: C_1 free of rank |A|-1 for {checked} groups with |A| <= 64; order-permutation invariant"
    ));
}

struct CliRun {
    code: i32,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
}

fn run_cli(args: &[&str]) -> CliRun {
    let out = Command::new(env!("CARGO_BIN_EXE_cubix"))
        .args(args)
        .output()
        .expect("binary runs");
    CliRun {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn criterion_12_cli_determinism_and_exit_codes() {
    let trivial = fixture("trivial.json");
    let noncubic = fixture("noncubic.json");
    let malformed = fixture("malformed.json");
    let unit = fixture("unit_z5.json");
    let cnpm_good = fixture("cnpm_good.json");
    let cnpm_bad = fixture("cnpm_bad.json");

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["cubic", "check", &trivial, "--arity", "3"], 0),
        (vec!["cubic", "check", &noncubic, "--arity", "2"], 1),
        (vec!["cubic", "check", &malformed, "--arity", "2"], 2),
        (vec!["cubic", "theta", "--unit", &unit, "--arity", "2"], 0),
        (vec!["sym", "identities", "--n", "3"], 0),
        (vec!["sym", "phi", "--n", "2", "--closed-form"], 0),
        (vec!["sym", "phi", "--n", "3", "--verify"], 0),
        (vec!["cn", "structure", "--group", "2,2", "--n", "2"], 0),
        (vec!["arith", "bernoulli", "--k", "2"], 0),
        (vec!["arith", "bernoulli", "--k", "12"], 0),
        (vec!["arith", "irregular", "--limit", "100", "--csv"], 0),
        (vec!["arith", "annihilator", "--group", "691", "--dim", "10"], 0),
        (vec!["arith", "ext-vanishing", "--p", "691", "--n", "12"], 0),
        (vec!["arith", "cnpm-check", &cnpm_good, "--p", "37", "--n", "2"], 0),
        (vec!["arith", "cnpm-check", &cnpm_bad, "--p", "37", "--n", "2"], 1),
        (vec!["arith", "annihilator", "--group", "0", "--dim", "1"], 2),
    ];

    for (args, expected_code) in &cases {
        let first = run_cli(args);
        assert_eq!(
            first.code, *expected_code,
            "args {args:?}: stderr {}",
            String::from_utf8_lossy(&first.stderr)
        );
        let second = run_cli(args);
        assert_eq!(first.stdout, second.stdout, "stdout differs for {args:?}");
        assert_eq!(first.stderr, second.stderr, "stderr differs for {args:?}");
        if *expected_code == 2 {
            assert!(
                serde_json::from_slice::<serde_json::Value>(&first.stderr).is_ok(),
                "stderr not machine-readable for {args:?}"
            );
        }
    }

    // spot-check a payload: B_2 prints exactly 1/6
    let b2 = run_cli(&["arith", "bernoulli", "--k", "2"]);
    assert_eq!(String::from_utf8_lossy(&b2.stdout).trim(), "1/6");

    pass(&format!(
        "criterion 12: {} CLI cases byte-identical across runs with the exit-code contract honored",
        cases.len()
    ));
}
