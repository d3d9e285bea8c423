//! The invariant-line and semi-invariant searches, cross-checked against a
//! slow evaluation-based oracle and against gauge equivariance.

mod common;

use common::{line_identity_holds, oracle_line_spectrum, random_gauge, TestRng};
use skewdyn::invariant::{
    is_semi_invariant, period_search, semi_invariants_total, skew_eigenvectors,
    skew_eigenvectors_report,
};
use skewdyn::multipoly::MultiPoly;
use skewdyn::polymat::PolyMatrix;
use skewdyn::rat::{rat, Rat};
use skewdyn::system::{PointState, SkewSystem};
use std::collections::BTreeSet;

fn conjugated_diagonal(rng: &mut TestRng, a1: Rat, a2: Rat, ops: usize) -> (SkewSystem, usize) {
    let t = random_gauge(rng, 2, ops, 1);
    let diag = SkewSystem::new(PolyMatrix::diagonal_consts(&[a1, a2])).unwrap();
    let s = diag.gauge_conjugate(&t.inverse()).unwrap();
    let line_degree_bound = 2 * t.matrix().max_degree() + 2;
    (s, line_degree_bound)
}

/// The library's line search against the elementary sampled-kernel oracle,
/// on systems planted so that every eigenvalue lies inside the oracle's
/// search box.
#[test]
fn line_search_agrees_with_sampling_oracle() {
    let mut rng = TestRng::seeded(42);
    for case in 0..25 {
        let a1 = rng.nonzero_rat(4);
        let a2 = rng.nonzero_rat(4);
        let (s, m) = conjugated_diagonal(&mut rng, a1.clone(), a2.clone(), 2);
        let fast = skew_eigenvectors(&s, m);
        let slow = oracle_line_spectrum(&s, 1, m, 8);

        // Both searches agree on the set of eigenvalues found, as long as
        // the planted values fit in the oracle box (|p|, q <= 8 by choice
        // of generator bounds: numerators/denominators at most 4).
        let fast_cs: BTreeSet<Rat> = fast.iter().map(|l| l.c.clone()).collect();
        let slow_cs: BTreeSet<Rat> = slow.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(fast_cs, slow_cs, "case {case}: eigenvalue sets differ");
        assert!(fast_cs.contains(&a1), "case {case}: planted {a1} missing");
        assert!(fast_cs.contains(&a2), "case {case}: planted {a2} missing");

        // Solution counts per eigenvalue match the oracle's kernel
        // dimensions.
        for (c, dim) in &slow {
            let count = fast.iter().filter(|l| &l.c == c).count();
            assert_eq!(count, *dim, "case {case}: multiplicity at {c}");
        }

        // Each returned line satisfies the defining identity, checked by
        // direct polynomial arithmetic.
        for line in &fast {
            assert!(line_identity_holds(s.matrix(), &line.c, &line.v));
        }
    }
}

#[test]
fn line_search_is_gauge_equivariant() {
    let mut rng = TestRng::seeded(43);
    for _ in 0..20 {
        let a1 = rng.nonzero_rat(3);
        let a2 = rng.nonzero_rat(3);
        let (s, m) = conjugated_diagonal(&mut rng, a1, a2, 2);
        let t = random_gauge(&mut rng, 2, 2, 1);
        let conj = s.gauge_conjugate(&t).unwrap();
        let m_total = m + 2 * t.matrix().max_degree() + 2;

        let original: BTreeSet<Rat> = skew_eigenvectors(&s, m_total)
            .into_iter()
            .map(|l| l.c)
            .collect();
        let transported: BTreeSet<Rat> = skew_eigenvectors(&conj, m_total)
            .into_iter()
            .map(|l| l.c)
            .collect();
        assert_eq!(original, transported);
    }
}

#[test]
fn diagonal_systems_have_exactly_their_entries_as_eigenvalues() {
    let mut rng = TestRng::seeded(44);
    for _ in 0..20 {
        let a1 = rng.nonzero_rat(5);
        let a2 = loop {
            let v = rng.nonzero_rat(5);
            if v != a1 {
                break v;
            }
        };
        let s = SkewSystem::new(PolyMatrix::diagonal_consts(&[a1.clone(), a2.clone()])).unwrap();
        let lines = skew_eigenvectors(&s, 3);
        let cs: BTreeSet<Rat> = lines.iter().map(|l| l.c.clone()).collect();
        let expected: BTreeSet<Rat> = [a1, a2].into_iter().collect();
        assert_eq!(cs, expected);
        assert_eq!(lines.len(), 2);
    }
}

#[test]
fn repeated_eigenvalue_is_flagged_parametric() {
    let s = SkewSystem::new(PolyMatrix::diagonal_consts(&[rat(3), rat(3)])).unwrap();
    let report = skew_eigenvectors_report(&s, 2);
    assert!(report.parametric);
    assert!(report.candidates.contains(&rat(3)));
}

/// Re-verifies a claimed semi-invariant without the library's checker: the
/// pullback condition P(x+1, A(x) y) = q P(x, y) is tested pointwise at a
/// spread of rational points, enough to pin the polynomial identity.
fn semi_invariant_holds_pointwise(s: &SkewSystem, p: &MultiPoly, q: &Rat) -> bool {
    for t in -6i64..=6 {
        for u in -3i64..=3 {
            for v in -3i64..=3 {
                let x = rat(t);
                let y = vec![rat(u), rat(v)];
                let fy = s.matrix().apply_at(&x, &y);
                let lhs = p.eval(&(&x + rat(1)), &fy);
                let rhs = q * p.eval(&x, &y);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn semi_invariants_verify_pointwise_and_transport_under_gauge() {
    let mut rng = TestRng::seeded(45);
    for _ in 0..10 {
        let a1 = rng.nonzero_rat(3);
        let a2 = rng.nonzero_rat(3);
        let (s, _) = conjugated_diagonal(&mut rng, a1, a2, 2);
        let found = semi_invariants_total(&s, 2, 6);
        assert!(!found.is_empty(), "conjugated diagonals carry semi-invariants");
        for family in &found {
            for p in &family.basis {
                assert!(is_semi_invariant(&s, p, &family.q).unwrap());
                assert!(semi_invariant_holds_pointwise(&s, p, &family.q));
            }
        }

        // The multiset of scale factors is a gauge invariant.
        let t = random_gauge(&mut rng, 2, 2, 1);
        let conj = s.gauge_conjugate(&t).unwrap();
        let qs: BTreeSet<Rat> = found.iter().map(|f| f.q.clone()).collect();
        let qs_conj: BTreeSet<Rat> = semi_invariants_total(&conj, 2, 6 + 2 * t.matrix().max_degree() as u32)
            .iter()
            .map(|f| f.q.clone())
            .collect();
        assert!(
            qs.is_subset(&qs_conj),
            "gauge conjugation must preserve scale factors: {qs:?} vs {qs_conj:?}"
        );
    }
}

#[test]
fn period_is_invariant_under_polynomial_transport() {
    let mut rng = TestRng::seeded(46);
    let entries = [rat(1), rat(-1), rat(2), rat(-2), rat(3)];
    for _ in 0..10 {
        let a1 = entries[rng.int(0, 4) as usize].clone();
        let a2 = entries[rng.int(0, 4) as usize].clone();
        let s = SkewSystem::new(PolyMatrix::diagonal_consts(&[a1, a2])).unwrap();
        let p = MultiPoly::var_y(2, 0).add(&MultiPoly::var_y(2, 1));
        if let Some(period) = period_search(&s, &p, 8).unwrap() {
            let moved = s.pushforward_poly(&p, 1).unwrap();
            assert_eq!(period_search(&s, &moved, 8).unwrap(), Some(period));
        }
    }
}

#[test]
fn period_search_counts_sign_flips() {
    let s = SkewSystem::new(PolyMatrix::diagonal_consts(&[rat(1), rat(-1)])).unwrap();
    let y1 = MultiPoly::var_y(2, 0);
    let y2 = MultiPoly::var_y(2, 1);
    // y1 and y2 are semi-invariants of f itself.
    assert_eq!(period_search(&s, &y1, 6).unwrap(), Some(1));
    assert_eq!(period_search(&s, &y2, 6).unwrap(), Some(1));
    // y1 + y2 maps to y1 - y2, which is independent; two steps restore it.
    assert_eq!(period_search(&s, &y1.add(&y2), 6).unwrap(), Some(2));
}

#[test]
fn two_step_cocycle_spectrum_refines_the_one_step_one() {
    // For the antidiagonal swap with a square ratio, one-step lines exist
    // and every one-step eigenvalue squares to a two-step eigenvalue.
    let mut rng = TestRng::seeded(47);
    for _ in 0..10 {
        let r = rng.nonzero_rat(3);
        let q = &r * &r;
        let m = PolyMatrix::from_rows(vec![
            vec![skewdyn::poly::Poly::zero(), skewdyn::poly::Poly::constant(q)],
            vec![skewdyn::poly::Poly::one(), skewdyn::poly::Poly::zero()],
        ]);
        let s = SkewSystem::new(m).unwrap();
        let one_step = skew_eigenvectors(&s, 2);
        let two_step: BTreeSet<Rat> = oracle_line_spectrum(&s, 2, 2, 9)
            .into_iter()
            .map(|(c, _)| c)
            .collect();
        assert!(!one_step.is_empty());
        for line in &one_step {
            assert!(two_step.contains(&(&line.c * &line.c)));
        }
    }
}

#[test]
fn orbits_of_found_lines_stay_on_the_line() {
    // Dynamical meaning of a line: starting on it, the orbit stays on it.
    let mut rng = TestRng::seeded(48);
    for _ in 0..10 {
        let a1 = rng.nonzero_rat(3);
        let a2 = rng.nonzero_rat(3);
        let (s, m) = conjugated_diagonal(&mut rng, a1, a2, 2);
        for line in skew_eigenvectors(&s, m) {
            let x0 = rat(rng.int(-3, 3));
            let y0: Vec<Rat> = line.v.iter().map(|p| p.eval(&x0)).collect();
            if y0.iter().all(|c| c == &rat(0)) {
                continue;
            }
            let orbit = s.orbit(&PointState::new(x0, y0), 5).unwrap();
            for pt in &orbit {
                // pt.y is proportional to v(pt.x).
                let vx: Vec<Rat> = line.v.iter().map(|p| p.eval(&pt.x)).collect();
                let cross = &pt.y[0] * &vx[1] - &pt.y[1] * &vx[0];
                assert_eq!(cross, rat(0));
            }
        }
    }
}
