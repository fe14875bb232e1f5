//! The center of R and minimal central left multiples.
//!
//! The center is F[z] with z = t^n (twisted, u = 1) or z = t^p
//! (differential, g(t) = t^p, c = 0). The minimal central left multiple of
//! f is the monic hhat in F[x] of least degree with hhat(z) in Rf; it is
//! found by reducing successive powers of z modulo Rf and watching for the
//! first F-linear dependence.

use crate::context::{Context, KElement};
use crate::error::{Error, Result};
use crate::linalg::DependenceFinder;
use crate::skew::SkewPolynomial;

/// Three-valued verdict for decision procedures that may honestly not know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trilean {
    Yes,
    No,
    Unknown,
}

/// A monic polynomial over F in the central variable x.
#[derive(Debug, Clone)]
pub struct CentralPolynomial {
    pub ctx: Context,
    /// Lowest degree first; all entries lie in F; leading entry is 1.
    pub coeffs: Vec<KElement>,
}

impl PartialEq for CentralPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_ring(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for CentralPolynomial {}

impl CentralPolynomial {
    pub fn new(ctx: Context, coeffs: Vec<KElement>) -> Result<Self> {
        let cp = CentralPolynomial { ctx, coeffs };
        if cp.coeffs.is_empty() || *cp.coeffs.last().unwrap() != cp.ctx.one() {
            return Err(Error::Precondition(
                "central polynomial must be monic".into(),
            ));
        }
        for c in &cp.coeffs {
            if !cp.ctx.in_f(c) {
                return Err(Error::Precondition(
                    "central polynomial coefficient lies outside F".into(),
                ));
            }
        }
        Ok(cp)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// For hhat = x - a, the value a.
    pub fn linear_root(&self) -> Option<KElement> {
        if self.degree() == 1 {
            Some(self.ctx.neg(&self.coeffs[0]))
        } else {
            None
        }
    }

    /// Evaluate at a K-element by Horner's rule.
    pub fn eval(&self, x: &KElement) -> KElement {
        let ctx = &self.ctx;
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, x), c);
        }
        acc
    }

    /// Expand in R by substituting the center generator: sum a_i t^(i*k).
    pub fn expand_at_z(&self) -> SkewPolynomial {
        let k = center_exponent(&self.ctx);
        let mut coeffs = vec![self.ctx.zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        SkewPolynomial::new(self.ctx.clone(), coeffs)
    }
}

// ---- plain polynomial arithmetic over F on raw coefficient vectors ----

fn fx_trim(ctx: &Context, mut v: Vec<KElement>) -> Vec<KElement> {
    while v.last().map(|c| ctx.is_zero(c)).unwrap_or(false) {
        v.pop();
    }
    v
}

fn fx_sub(ctx: &Context, a: &[KElement], b: &[KElement]) -> Vec<KElement> {
    let n = a.len().max(b.len());
    let z = ctx.zero();
    let v = (0..n)
        .map(|i| ctx.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    fx_trim(ctx, v)
}

fn fx_mul(ctx: &Context, a: &[KElement], b: &[KElement]) -> Vec<KElement> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ctx.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    fx_trim(ctx, out)
}

fn fx_divmod(ctx: &Context, a: &[KElement], b: &[KElement]) -> (Vec<KElement>, Vec<KElement>) {
    assert!(!b.is_empty(), "division by zero polynomial over F");
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![], fx_trim(ctx, rem));
    }
    let lead_inv = ctx.inv(&b[db]).expect("nonzero leading coefficient");
    let mut quo = vec![ctx.zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = ctx.mul(&rem[k + db], &lead_inv);
        if ctx.is_zero(&c) {
            continue;
        }
        quo[k] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            let s = ctx.mul(&c, bc);
            rem[k + j] = ctx.sub(&rem[k + j], &s);
        }
    }
    (fx_trim(ctx, quo), fx_trim(ctx, rem))
}

fn fx_monic(ctx: &Context, a: &[KElement]) -> Vec<KElement> {
    match a.last() {
        None => vec![],
        Some(l) => {
            let inv = ctx.inv(l).expect("nonzero leading coefficient");
            a.iter().map(|c| ctx.mul(c, &inv)).collect()
        }
    }
}

pub(crate) fn fx_gcd(ctx: &Context, a: &[KElement], b: &[KElement]) -> Vec<KElement> {
    let mut a = fx_trim(ctx, a.to_vec());
    let mut b = fx_trim(ctx, b.to_vec());
    while !b.is_empty() {
        let (_, r) = fx_divmod(ctx, &a, &b);
        a = b;
        b = r;
    }
    fx_monic(ctx, &a)
}

fn fx_derivative(ctx: &Context, a: &[KElement]) -> Vec<KElement> {
    if a.len() <= 1 {
        return vec![];
    }
    let v = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ctx.mul(&ctx.from_int(i as i64), c))
        .collect();
    fx_trim(ctx, v)
}

fn fx_pow_mod(ctx: &Context, base: &[KElement], mut e: u64, m: &[KElement]) -> Vec<KElement> {
    let mut acc = vec![ctx.one()];
    let mut b = fx_divmod(ctx, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = fx_divmod(ctx, &fx_mul(ctx, &acc, &b), m).1;
        }
        b = fx_divmod(ctx, &fx_mul(ctx, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// The power of t generating the center: n (twisted) or p (differential).
pub fn center_exponent(ctx: &Context) -> usize {
    match ctx {
        Context::Twisted(c) => c.n,
        Context::Differential(c) => c.p as usize,
    }
}

/// z = t^n (twisted) or z = t^p (differential).
pub fn center_generator(ctx: &Context) -> SkewPolynomial {
    SkewPolynomial::monomial(ctx.clone(), ctx.one(), center_exponent(ctx))
}

/// The minimal central left multiple hhat of f: monic, minimal degree,
/// hhat(z) in Rf. Twisted contexts additionally require a nonzero constant
/// term (gcrd(f, t) = 1).
pub fn mclm(f: &SkewPolynomial) -> Result<CentralPolynomial> {
    let ctx = &f.ctx;
    let m = match f.degree() {
        Some(m) if m >= 1 => m,
        _ => return Err(Error::Precondition("mclm needs deg f >= 1".into())),
    };
    if !f.is_monic() {
        return Err(Error::Precondition("mclm needs f monic".into()));
    }
    if ctx.is_twisted() && ctx.is_zero(&f.constant_term()) {
        return Err(Error::ZeroConstantTerm);
    }
    let r = ctx.k_dim_over_f();
    let cap = m * r + 1;
    let z_mod = center_generator(ctx).divmod_right(f)?.1;
    let mut rho = SkewPolynomial::one(ctx.clone());
    let mut finder = DependenceFinder::new(ctx);
    for _ in 0..cap {
        let mut flat = Vec::with_capacity(m * r);
        for i in 0..m {
            flat.extend(ctx.coords_over_f(&rho.coeff(i)));
        }
        if let Some(lambda) = finder.push(flat) {
            return CentralPolynomial::new(ctx.clone(), lambda);
        }
        // z * rho = rho * z since z is central, and reducing z first is valid
        // under right division.
        rho = rho.mul(&z_mod)?.divmod_right(f)?.1;
    }
    Err(Error::Internal(format!(
        "no central dependence within {cap} steps; the center reduction is broken"
    )))
}

/// h(t) = hhat(z) expanded in R; right-divisibility by f is verified.
pub fn bound_of(f: &SkewPolynomial) -> Result<SkewPolynomial> {
    let hhat = mclm(f)?;
    let h = hhat.expand_at_z();
    if !SkewPolynomial::right_divides(f, &h)? {
        return Err(Error::Internal("mclm is not right-divisible by f".into()));
    }
    Ok(h)
}

/// gcd(hhat, hhat') = 1 over F. The formal derivative catches
/// characteristic-p inseparability such as x^2 + u^2.
pub fn is_squarefree(hhat: &CentralPolynomial) -> bool {
    let d = fx_derivative(&hhat.ctx, &hhat.coeffs);
    if d.is_empty() {
        return hhat.degree() == 0;
    }
    fx_gcd(&hhat.ctx, &hhat.coeffs, &d).len() == 1
}

/// Irreducibility of hhat over F.
///
/// Finite F (twisted): exact, by the x^(q^d) Frobenius criterion.
/// Function field F (differential): degree 1 is yes; otherwise a root
/// search. When the coefficients are all polynomial in v = u^p, a monic
/// hhat only admits polynomial roots of degree bounded by the coefficient
/// degrees, so for deg hhat <= 3 the search is complete and the answer
/// exact; otherwise the bounded search reports no on a found root and
/// unknown when nothing turns up within the configured degree bound.
pub fn is_irreducible_over_f(hhat: &CentralPolynomial) -> Trilean {
    let ctx = &hhat.ctx;
    let k = hhat.degree();
    if k == 0 {
        return Trilean::No;
    }
    if k == 1 {
        return Trilean::Yes;
    }
    match ctx {
        Context::Twisted(tc) => {
            let q = tc.q();
            let x = vec![ctx.zero(), ctx.one()];
            // frob[j] = x^(q^j) mod hhat
            let mut frob = fx_divmod(ctx, &x, &hhat.coeffs).1;
            let mut frob_pows = vec![frob.clone()];
            for _ in 0..k {
                frob = fx_pow_mod(ctx, &frob, q, &hhat.coeffs);
                frob_pows.push(frob.clone());
            }
            if frob_pows[k] != fx_divmod(ctx, &x, &hhat.coeffs).1 {
                return Trilean::No;
            }
            for r in crate::fp::prime_divisors(k as u64) {
                let diff = fx_sub(ctx, &frob_pows[k / r as usize], &x);
                if fx_gcd(ctx, &diff, &hhat.coeffs).len() != 1 {
                    return Trilean::No;
                }
            }
            Trilean::Yes
        }
        Context::Differential(dc) => {
            let p = dc.p as usize;
            let bound = dc.search_degree_bound;
            let all_poly = hhat.coeffs.iter().all(|c| match c {
                KElement::Differential(r) => r.is_poly(),
                _ => false,
            });
            if all_poly {
                // Roots are integral over F_p[v], hence polynomials in v of
                // degree at most max_i ceil(deg a_i / (k - i)).
                let mut dmax = 0usize;
                for (i, c) in hhat.coeffs.iter().enumerate().take(k) {
                    if let KElement::Differential(r) = c {
                        if let Some(d) = r.num.degree() {
                            let dv = d / p; // coefficients live in F, exponents are multiples of p
                            dmax = dmax.max(dv.div_ceil(k - i));
                        }
                    }
                }
                let complete = dmax <= bound as usize && k <= 3;
                let limit = dmax.min(bound as usize);
                let total = (p as u128).pow(limit as u32 + 1) as u64;
                for m in 0..total {
                    let cand = KElement::Differential(
                        crate::ratfun::RatFun::from_poly(crate::fp::FpPoly::from_counter(dc.p, m))
                            .inflate(p),
                    );
                    if ctx.is_zero(&hhat.eval(&cand)) {
                        return Trilean::No;
                    }
                }
                if complete {
                    Trilean::Yes
                } else {
                    Trilean::Unknown
                }
            } else {
                let cands = match ctx.bounded_f_elements(bound) {
                    Ok(it) => it,
                    Err(_) => return Trilean::Unknown,
                };
                for cand in cands {
                    if ctx.is_zero(&hhat.eval(&cand)) {
                        return Trilean::No;
                    }
                }
                Trilean::Unknown
            }
        }
    }
}

/// All proper monic divisors of hhat over a finite F (degree 1..deg-1),
/// found by trial division over the enumerated coefficient tuples.
pub fn proper_monic_divisors(hhat: &CentralPolynomial) -> Result<Vec<CentralPolynomial>> {
    let ctx = &hhat.ctx;
    let tc = ctx.as_twisted()?;
    let q = tc.q();
    let f_els: Vec<KElement> = ctx.enumerate_f()?.collect();
    let mut out = vec![];
    for d in 1..hhat.degree() {
        let total = (q as u128).pow(d as u32) as u64;
        for m in 0..total {
            let mut idx = m;
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                let sel = idx % q;
                idx /= q;
                coeffs.push(f_els[sel as usize].clone());
            }
            coeffs.push(ctx.one());
            let (_, r) = fx_divmod(ctx, &hhat.coeffs, &coeffs);
            if r.is_empty() {
                out.push(CentralPolynomial::new(ctx.clone(), coeffs)?);
            }
        }
    }
    Ok(out)
}

/// Remainder of phat(z) under right division by f; zero iff phat(z) in Rf.
pub fn central_multiple_rem(
    f: &SkewPolynomial,
    phat: &CentralPolynomial,
) -> Result<SkewPolynomial> {
    Ok(phat.expand_at_z().divmod_right(f)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::SkewPolynomial;

    fn f4() -> Context {
        Context::twisted(2, 1, 2, None).unwrap()
    }

    fn f2u() -> Context {
        Context::differential(2, 6).unwrap()
    }

    fn poly(ctx: &Context, coeffs: &[KElement]) -> SkewPolynomial {
        SkewPolynomial::new(ctx.clone(), coeffs.to_vec())
    }

    #[test]
    fn center_generator_commutes() {
        for ctx in [f4(), f2u()] {
            let z = center_generator(&ctx);
            let a = SkewPolynomial::constant(ctx.clone(), ctx.generator());
            assert_eq!(z.mul(&a).unwrap(), a.mul(&z).unwrap());
            assert_eq!(z.degree(), Some(2));
        }
    }

    #[test]
    fn mclm_linear_twisted() {
        let ctx = f4();
        let w = ctx.generator();
        // f = t - w: z = t^2 = 1 mod Rf, hhat = x - 1 = x - N(w)
        let f = SkewPolynomial::linear(ctx.clone(), &w);
        let hhat = mclm(&f).unwrap();
        assert_eq!(hhat.coeffs, vec![ctx.one(), ctx.one()]);
        assert_eq!(hhat.linear_root(), Some(ctx.one()));
    }

    #[test]
    fn mclm_quadratic_twisted() {
        let ctx = f4();
        let w = ctx.generator();
        // f = t^2 - w: hhat = x^2 + x + 1
        let f = poly(&ctx, &[ctx.neg(&w), ctx.zero(), ctx.one()]);
        let hhat = mclm(&f).unwrap();
        assert_eq!(hhat.coeffs, vec![ctx.one(), ctx.one(), ctx.one()]);
    }

    #[test]
    fn mclm_differential() {
        let ctx = f2u();
        let u = ctx.generator();
        // f = t - u: hhat = x - (u^2 + 1)
        let f = SkewPolynomial::linear(ctx.clone(), &u);
        let hhat = mclm(&f).unwrap();
        let u2p1 = ctx.add(&ctx.mul(&u, &u), &ctx.one());
        assert_eq!(hhat.coeffs, vec![u2p1.clone(), ctx.one()]);
        assert_eq!(hhat.linear_root(), Some(u2p1));
    }

    #[test]
    fn mclm_rejects_zero_constant_term_twisted() {
        let ctx = f4();
        let f = SkewPolynomial::monomial(ctx.clone(), ctx.one(), 1); // t
        assert_eq!(mclm(&f), Err(Error::ZeroConstantTerm));
        // differential has no such requirement: hhat(t) = x for f = t
        let ctx = f2u();
        let f = SkewPolynomial::monomial(ctx.clone(), ctx.one(), 1);
        let hhat = mclm(&f).unwrap();
        assert_eq!(hhat.coeffs, vec![ctx.zero(), ctx.one()]);
    }

    #[test]
    fn bound_of_examples() {
        let ctx = f4();
        let w = ctx.generator();
        let t2m1 = poly(&ctx, &[ctx.one(), ctx.zero(), ctx.one()]);
        // f = t - w: bound = t^2 - 1
        let f = SkewPolynomial::linear(ctx.clone(), &w);
        assert_eq!(bound_of(&f).unwrap(), t2m1);
        // f = t^2 - 1 is already central: bound = itself
        assert_eq!(bound_of(&t2m1).unwrap(), t2m1);
        // f = t - u: bound = t^2 + 1 + u^2
        let ctx = f2u();
        let u = ctx.generator();
        let f = SkewPolynomial::linear(ctx.clone(), &u);
        let c = ctx.add(&ctx.mul(&u, &u), &ctx.one());
        assert_eq!(
            bound_of(&f).unwrap(),
            poly(&ctx, &[c, ctx.zero(), ctx.one()])
        );
    }

    #[test]
    fn squarefree_checks() {
        let ctx = f4();
        let linear = CentralPolynomial::new(ctx.clone(), vec![ctx.one(), ctx.one()]).unwrap();
        assert!(is_squarefree(&linear));
        let quad =
            CentralPolynomial::new(ctx.clone(), vec![ctx.one(), ctx.one(), ctx.one()]).unwrap();
        assert!(is_squarefree(&quad));
        // x^2 + u^2 over the differential F: derivative vanishes
        let ctx = f2u();
        let u2 = ctx.pow(&ctx.generator(), 2);
        let insep = CentralPolynomial::new(ctx.clone(), vec![u2, ctx.zero(), ctx.one()]).unwrap();
        assert!(!is_squarefree(&insep));
    }

    #[test]
    fn irreducibility_over_f() {
        let ctx = f4();
        // x - a
        let lin = CentralPolynomial::new(ctx.clone(), vec![ctx.one(), ctx.one()]).unwrap();
        assert_eq!(is_irreducible_over_f(&lin), Trilean::Yes);
        // x^2 + 1 = (x+1)^2 over F_2
        let sq =
            CentralPolynomial::new(ctx.clone(), vec![ctx.one(), ctx.zero(), ctx.one()]).unwrap();
        assert_eq!(is_irreducible_over_f(&sq), Trilean::No);
        // x^2 + x + 1 over F_2
        let irr =
            CentralPolynomial::new(ctx.clone(), vec![ctx.one(), ctx.one(), ctx.one()]).unwrap();
        assert_eq!(is_irreducible_over_f(&irr), Trilean::Yes);

        // x^2 + x + (1 + u^2) over F_2(u^2): no polynomial root exists
        let ctx = f2u();
        let u2p1 = ctx.add(&ctx.pow(&ctx.generator(), 2), &ctx.one());
        let h = CentralPolynomial::new(ctx.clone(), vec![u2p1, ctx.one(), ctx.one()]).unwrap();
        assert_eq!(is_irreducible_over_f(&h), Trilean::Yes);
        // x^2 - u^2 = (x - u^2)(x + u^2) ... root u^2 in F
        let u2 = ctx.pow(&ctx.generator(), 2);
        let h = CentralPolynomial::new(
            ctx.clone(),
            vec![ctx.neg(&ctx.mul(&u2, &u2)), ctx.zero(), ctx.one()],
        )
        .unwrap();
        assert_eq!(is_irreducible_over_f(&h), Trilean::No);
    }

    #[test]
    fn divisor_enumeration_and_minimality() {
        let ctx = f4();
        let w = ctx.generator();
        let f = poly(&ctx, &[ctx.neg(&w), ctx.zero(), ctx.one()]); // t^2 - w
        let hhat = mclm(&f).unwrap(); // x^2 + x + 1, irreducible
        assert!(proper_monic_divisors(&hhat).unwrap().is_empty());
        // a reducible hhat: (x-1)^2 = x^2 + 1 over F_2
        let sq =
            CentralPolynomial::new(ctx.clone(), vec![ctx.one(), ctx.zero(), ctx.one()]).unwrap();
        let divs = proper_monic_divisors(&sq).unwrap();
        assert_eq!(divs.len(), 1); // only x + 1
        assert_eq!(divs[0].coeffs, vec![ctx.one(), ctx.one()]);
        // minimality: x - 1 is not a central multiple of t^2 - w
        let lin = CentralPolynomial::new(ctx.clone(), vec![ctx.one(), ctx.one()]).unwrap();
        assert!(!central_multiple_rem(&f, &lin).unwrap().is_zero());
        // but hhat itself is
        assert!(central_multiple_rem(&f, &hhat).unwrap().is_zero());
    }
}
