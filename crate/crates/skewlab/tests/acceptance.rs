//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured numbers (run with `--nocapture` to see them all).
//! Every tolerance and threshold is pinned here, in code.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;

use skewlab::algebra::{self, ZeroDivisorSearch};
use skewlab::apoly::Witnesses;
use skewlab::central::{self, Trilean};
use skewlab::context::KElement;
use skewlab::parse;
use skewlab::report::analyze;
use skewlab::skew::{self, SkewPolynomial};
use skewlab::sweep::{self, SweepReport};

fn f4_sweep() -> &'static SweepReport {
    static SWEEP: OnceLock<SweepReport> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let ctx = f4();
        let instances = sweep::twisted_instances(&ctx, 4).unwrap();
        sweep::run(&instances, 1, "twisted-exhaustive").unwrap()
    })
}

#[test]
fn criterion_1_oracle_equivalence_f4() {
    let start = Instant::now();
    let ctx = f4();
    let instances = sweep::twisted_instances(&ctx, 4).unwrap();
    assert_eq!(
        instances.len(),
        255,
        "monic, nonzero constant term, degrees 1..4"
    );
    let rep = sweep::run(&instances, 1, "twisted-exhaustive").unwrap();
    let elapsed = start.elapsed();
    // every non-skipped instance is decided by both routes and they agree
    for o in &rep.outcomes {
        if o.skipped() {
            continue;
        }
        assert_ne!(
            o.report.is_apoly,
            Trilean::Unknown,
            "undecided instance {:?}",
            o.f
        );
        assert_ne!(
            o.oracle_simple,
            Some(Trilean::Unknown),
            "undecided oracle {:?}",
            o.f
        );
        assert!(!o.mismatch, "theorem/oracle mismatch on {:?}", o.f);
    }
    assert_eq!(rep.summary.mismatches, 0);
    assert!(
        elapsed < Duration::from_secs(60),
        "criterion 1 took {elapsed:?}"
    );
    println!(
        "[PASS] criterion 1: F_4 sweep deg<=4: {} instances ({} yes, {} no, {} skipped), \
         0 mismatches in {:.1?}",
        rep.summary.instances,
        rep.summary.apoly_yes,
        rep.summary.apoly_no,
        rep.summary.skipped_not_squarefree,
        elapsed
    );
}

#[test]
fn criterion_2_oracle_equivalence_f8_f9() {
    let start = Instant::now();
    let mut printed = vec![];
    for (ctx, maxdeg, name) in [(f8(), 3, "F_8 deg<=3"), (f9(), 2, "F_9 deg<=2")] {
        let instances = sweep::twisted_instances(&ctx, maxdeg).unwrap();
        let rep = sweep::run(&instances, 1, "twisted-exhaustive").unwrap();
        for o in &rep.outcomes {
            assert!(!o.mismatch, "theorem/oracle mismatch on {:?}", o.f);
        }
        assert_eq!(rep.summary.mismatches, 0);
        printed.push(format!(
            "{name}: {} instances, {} yes, 0 mismatches",
            rep.summary.instances, rep.summary.apoly_yes
        ));
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "criterion 2 took {elapsed:?}"
    );
    println!(
        "[PASS] criterion 2: {}; total {:.1?}",
        printed.join("; "),
        elapsed
    );
}

#[test]
fn criterion_3_dimension_identities() {
    let rep = f4_sweep();
    let mut irreducible_checked = 0;
    let mut apoly_checked = 0;
    for o in &rep.outcomes {
        if o.skipped() {
            continue;
        }
        let m = o.degree;
        let hdeg = o.report.hhat.degree();
        if central::is_irreducible_over_f(&o.report.hhat) == Trilean::Yes {
            assert_eq!(m * m % hdeg, 0, "deg hhat divides m^2 for {:?}", o.f);
            assert_eq!(
                o.dim,
                Some(m * m / hdeg),
                "dim != m^2/deg hhat for {:?}",
                o.f
            );
            irreducible_checked += 1;
        }
        if o.report.is_apoly == Trilean::Yes {
            assert_eq!(o.dim, Some(m * m), "A-polynomial dim != m^2 for {:?}", o.f);
            assert_eq!(
                o.center_dim,
                Some(1),
                "A-polynomial center != F for {:?}",
                o.f
            );
            apoly_checked += 1;
        }
    }
    assert!(irreducible_checked > 0 && apoly_checked > 0);
    println!(
        "[PASS] criterion 3: dim = m^2/deg(hhat) on {irreducible_checked} irreducible-hhat \
         instances; dim = m^2, center = F on {apoly_checked} A-polynomials"
    );
}

#[test]
fn criterion_4_corollary_shape() {
    let ctx = f4();
    let rep = f4_sweep();
    let mut multi = 0;
    let mut linear = 0;
    for o in &rep.outcomes {
        if o.skipped() || o.report.is_apoly != Trilean::Yes {
            continue;
        }
        let m = o.degree;
        let alg = algebra::eigenring(&o.f).unwrap();
        let has_zd = match algebra::find_zero_divisor(&alg).unwrap() {
            ZeroDivisorSearch::Found { .. } => true,
            ZeroDivisorSearch::NoneExhaustive => false,
            ZeroDivisorSearch::NoneWithinBound => panic!("finite search must be exhaustive"),
        };
        if m >= 2 {
            // factors into m linear factors with verified Omega-witnesses
            let roots = o
                .report
                .factorization
                .as_ref()
                .expect("classification factorization");
            assert_eq!(roots.len(), m);
            match o.report.witnesses.as_ref().expect("case (ii) witnesses") {
                Witnesses::CaseIi { b, cs } => {
                    assert_eq!(*cs.last().unwrap(), ctx.one());
                    for (c, r) in cs.iter().zip(roots.iter()) {
                        assert_eq!(skew::omega(&ctx, c, b).unwrap(), *r, "witness mismatch");
                    }
                }
                w => panic!("unexpected witnesses {w:?}"),
            }
            // re-multiplication reproduces f bit-exactly
            assert_eq!(skew::product_of_linear(&ctx, roots).unwrap(), o.f);
            assert!(has_zd, "m >= 2 A-polynomial must be reducible: {:?}", o.f);
            multi += 1;
        } else {
            assert!(!has_zd, "m = 1 A-polynomial must be irreducible: {:?}", o.f);
            linear += 1;
        }
    }
    assert!(multi > 0 && linear > 0);
    println!(
        "[PASS] criterion 4: {multi} A-polynomials with m >= 2 factor into verified \
         Omega-products; the {linear} instances with m = 1 are exactly the irreducible ones"
    );
}

#[test]
fn criterion_5_differential_worked_examples() {
    let (ctx, spec) =
        parse::parse_ring_spec(r#"{"kind":"differential","p":2,"search_degree_bound":6}"#).unwrap();

    // f = t^2 + u^2 + 1: hhat = x - (u^2+1), yes, dim 4 over F with center dim 1
    let f = parse::parse_poly(&ctx, "[u^2+1, 0, 1]").unwrap();
    let rep = analyze(&ctx, spec.clone(), &f).unwrap();
    assert_eq!(rep.apoly.is_apoly, Trilean::Yes);
    assert_eq!(rep.hhat, vec!["(u^2+1)/1", "1/1"]);
    assert_eq!(rep.eigenring.dim, 4);
    assert_eq!(rep.eigenring.center_dim, 1);

    // f = t^2 + t + u: hhat = x^2 + x + 1 + u^2, not an A-polynomial
    let f = parse::parse_poly(&ctx, "[u, 1, 1]").unwrap();
    let rep = analyze(&ctx, spec.clone(), &f).unwrap();
    assert_eq!(rep.apoly.is_apoly, Trilean::No);
    assert_eq!(rep.hhat, vec!["(u^2+1)/1", "1/1", "1/1"]);

    // f = t - u: E(f) = F of dimension 1
    let f = parse::parse_poly(&ctx, "[u, 1]").unwrap();
    let rep = analyze(&ctx, spec, &f).unwrap();
    assert_eq!(rep.apoly.is_apoly, Trilean::Yes);
    assert_eq!(rep.hhat, vec!["(u^2+1)/1", "1/1"]);
    assert_eq!(rep.eigenring.dim, 1);
    assert_eq!(rep.eigenring.center_dim, 1);

    println!("[PASS] criterion 5: differential worked examples match the derived values exactly");
}

#[test]
fn criterion_6_linear_factor_criterion() {
    let mut rng = rng();
    let mut zeros = 0usize;
    for ctx in [f2u(), f3u()] {
        let p = ctx.characteristic();
        let check = |b: &KElement, a1: &KElement, a0: &KElement| {
            // f = t^p - a1 t - a0
            let f = SkewPolynomial::monomial(ctx.clone(), ctx.one(), p as usize)
                .sub(&SkewPolynomial::monomial(ctx.clone(), a1.clone(), 1))
                .sub(&SkewPolynomial::constant(ctx.clone(), a0.clone()));
            let lin = SkewPolynomial::linear(ctx.clone(), b);
            let divides = f.divmod_right(&lin).unwrap().1.is_zero();
            let vp_val = ctx.sub(&ctx.sub(&skew::vp(&ctx, b).unwrap(), &ctx.mul(a1, b)), a0);
            assert_eq!(
                divides,
                ctx.is_zero(&vp_val),
                "Lemma criterion disagrees with right division for b={b:?} a1={a1:?} a0={a0:?}"
            );
            divides
        };
        // 200 random triples
        for _ in 0..200 {
            let b = random_element(&ctx, &mut rng, 2);
            let a1 = random_element(&ctx, &mut rng, 2);
            let a0 = random_element(&ctx, &mut rng, 2);
            if check(&b, &a1, &a0) {
                zeros += 1;
            }
        }
        // 100 engineered positives: a0 = V_p(b) - a1 b, so both sides are zero
        for _ in 0..100 {
            let b = random_element(&ctx, &mut rng, 2);
            let a1 = random_element(&ctx, &mut rng, 2);
            let a0 = ctx.sub(&skew::vp(&ctx, &b).unwrap(), &ctx.mul(&a1, &b));
            assert!(check(&b, &a1, &a0));
        }
    }
    println!(
        "[PASS] criterion 6: 200 random + 100 engineered (b, a1, a0) per field, \
         right-division and V_p criteria agree 100% ({zeros} incidental positives)"
    );
}

#[test]
fn criterion_7_algebraic_identity_suites() {
    let mut rng = rng();
    let mut total = 0usize;
    for ctx in [f4(), f9(), f2u(), f3u()] {
        // degree law
        for _ in 0..200 {
            let df = rng.gen_range(0..=4);
            let dg = rng.gen_range(0..=4);
            let f = random_poly(&ctx, &mut rng, df, 2);
            let g = random_poly(&ctx, &mut rng, dg, 2);
            assert_eq!(f.mul(&g).unwrap().degree(), Some(df + dg));
            total += 1;
        }
        // divmod round trip
        for _ in 0..200 {
            let df = rng.gen_range(0..=5);
            let dg = rng.gen_range(0..=3);
            let f = random_poly(&ctx, &mut rng, df, 2);
            let g = random_poly(&ctx, &mut rng, dg, 2);
            let (q, r) = f.divmod_right(&g).unwrap();
            assert_eq!(q.mul(&g).unwrap().add(&r), f);
            assert!(r.degree() < g.degree());
            total += 1;
        }
        // gcrd Bezout
        for _ in 0..200 {
            let df = rng.gen_range(1..=4);
            let dg = rng.gen_range(1..=3);
            let f = random_poly(&ctx, &mut rng, df, 1);
            let g = random_poly(&ctx, &mut rng, dg, 1);
            let (d, a, b) = skew::gcrd_extended(&f, &g).unwrap();
            assert_eq!(a.mul(&f).unwrap().add(&b.mul(&g).unwrap()), d);
            total += 1;
        }
        // Omega composition
        for _ in 0..200 {
            let v = random_nonzero(&ctx, &mut rng, 2);
            let w = random_nonzero(&ctx, &mut rng, 2);
            let alpha = random_element(&ctx, &mut rng, 2);
            let lhs = skew::omega(&ctx, &ctx.mul(&v, &w), &alpha).unwrap();
            let rhs = skew::omega(&ctx, &v, &skew::omega(&ctx, &w, &alpha).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            total += 1;
        }
        // (t - b)^p = t^p - V_p(b) in the differential contexts
        if !ctx.is_twisted() {
            let p = ctx.characteristic();
            for _ in 0..200 {
                let b = random_element(&ctx, &mut rng, 2);
                let lin = SkewPolynomial::linear(ctx.clone(), &b);
                let mut pow = SkewPolynomial::one(ctx.clone());
                for _ in 0..p {
                    pow = pow.mul(&lin).unwrap();
                }
                let rhs = SkewPolynomial::monomial(ctx.clone(), ctx.one(), p as usize).sub(
                    &SkewPolynomial::constant(ctx.clone(), skew::vp(&ctx, &b).unwrap()),
                );
                assert_eq!(pow, rhs);
                total += 1;
            }
        }
    }
    println!("[PASS] criterion 7: {total} random identity instances, zero failures");
}

#[test]
fn criterion_8_mclm_minimality() {
    let rep = f4_sweep();
    let mut divisors_checked = 0usize;
    for o in &rep.outcomes {
        for phat in central::proper_monic_divisors(&o.report.hhat).unwrap() {
            assert!(
                !central::central_multiple_rem(&o.f, &phat)
                    .unwrap()
                    .is_zero(),
                "proper divisor {:?} of hhat is a central multiple of {:?}",
                phat.coeffs,
                o.f
            );
            divisors_checked += 1;
        }
    }
    assert!(divisors_checked > 0);
    println!(
        "[PASS] criterion 8: minimality of hhat verified against {divisors_checked} proper \
         monic divisors across all {} F_4 sweep instances",
        rep.outcomes.len()
    );
}
