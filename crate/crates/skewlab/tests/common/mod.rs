//! Shared helpers for the integration suites: deterministic RNG seeded
//! from SKEWLAB_SEED (default 0), random element/polynomial generators,
//! and the brute-force reducibility oracle used to cross-check eigenring
//! results. The oracle only uses right division, never the eigenring or
//! classification code paths it is checking.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewlab::context::{Context, KElement};
use skewlab::fp::FpPoly;
use skewlab::ratfun::RatFun;
use skewlab::skew::SkewPolynomial;

pub fn seed() -> u64 {
    std::env::var("SKEWLAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

pub fn f4() -> Context {
    Context::twisted(2, 1, 2, None).unwrap()
}

pub fn f8() -> Context {
    Context::twisted(2, 1, 3, None).unwrap()
}

pub fn f9() -> Context {
    Context::twisted(3, 1, 2, None).unwrap()
}

pub fn f2u() -> Context {
    Context::differential(2, 6).unwrap()
}

pub fn f3u() -> Context {
    Context::differential(3, 3).unwrap()
}

fn random_fp_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> FpPoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    FpPoly::new(p, coeffs)
}

/// A random element of K; differential elements have numerator and
/// denominator degree at most `height`.
pub fn random_element(ctx: &Context, rng: &mut ChaCha8Rng, height: usize) -> KElement {
    match ctx {
        Context::Twisted(c) => {
            let coords: Vec<u64> = (0..c.dim_over_fp())
                .map(|_| rng.gen_range(0..c.p))
                .collect();
            KElement::Twisted(coords)
        }
        Context::Differential(c) => {
            let num = random_fp_poly(rng, c.p, height);
            let den = loop {
                let d = random_fp_poly(rng, c.p, height);
                if !d.is_zero() {
                    break d;
                }
            };
            KElement::Differential(RatFun::new(num, den))
        }
    }
}

pub fn random_nonzero(ctx: &Context, rng: &mut ChaCha8Rng, height: usize) -> KElement {
    loop {
        let a = random_element(ctx, rng, height);
        if !ctx.is_zero(&a) {
            return a;
        }
    }
}

/// A random polynomial of exactly the given degree.
pub fn random_poly(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    deg: usize,
    height: usize,
) -> SkewPolynomial {
    let mut coeffs: Vec<KElement> = (0..deg).map(|_| random_element(ctx, rng, height)).collect();
    coeffs.push(random_nonzero(ctx, rng, height));
    SkewPolynomial::new(ctx.clone(), coeffs)
}

pub fn random_monic_poly(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    deg: usize,
    height: usize,
) -> SkewPolynomial {
    let mut coeffs: Vec<KElement> = (0..deg).map(|_| random_element(ctx, rng, height)).collect();
    coeffs.push(ctx.one());
    SkewPolynomial::new(ctx.clone(), coeffs)
}

/// Brute-force reducibility oracle over a finite K: trial right division
/// by every monic polynomial of degree 1..deg f - 1.
pub fn has_proper_right_factor(f: &SkewPolynomial) -> bool {
    let ctx = &f.ctx;
    let els: Vec<KElement> = ctx.enumerate().unwrap().collect();
    let size = els.len() as u128;
    let m = f.degree().unwrap();
    for d in 1..m {
        let total = size.pow(d as u32);
        for mut idx in 0..total {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(els[(idx % size) as usize].clone());
                idx /= size;
            }
            coeffs.push(ctx.one());
            let g = SkewPolynomial::new(ctx.clone(), coeffs);
            if SkewPolynomial::right_divides(&g, f).unwrap() {
                return true;
            }
        }
    }
    false
}
