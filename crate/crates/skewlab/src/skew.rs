//! Skew polynomial arithmetic in R = K[t; sigma, delta] and the right
//! Euclidean toolkit: multiplication by the defining relation
//! t*a = sigma(a)*t + delta(a), two-sided division, gcrd/lclm with
//! cofactors, the Omega_v map, linear similarity, and the V_p operator.

use crate::context::{Context, KElement};
use crate::error::{Error, Result};
use crate::linalg;

/// Coefficients lowest degree first, trailing zeros stripped; the zero
/// polynomial has an empty coefficient vector.
#[derive(Debug, Clone)]
pub struct SkewPolynomial {
    pub ctx: Context,
    pub coeffs: Vec<KElement>,
}

impl PartialEq for SkewPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_ring(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for SkewPolynomial {}

impl SkewPolynomial {
    pub fn new(ctx: Context, mut coeffs: Vec<KElement>) -> Self {
        while coeffs.last().map(|c| ctx.is_zero(c)).unwrap_or(false) {
            coeffs.pop();
        }
        SkewPolynomial { ctx, coeffs }
    }

    pub fn zero(ctx: Context) -> Self {
        SkewPolynomial {
            ctx,
            coeffs: vec![],
        }
    }

    pub fn one(ctx: Context) -> Self {
        let one = ctx.one();
        SkewPolynomial {
            ctx,
            coeffs: vec![one],
        }
    }

    pub fn constant(ctx: Context, c: KElement) -> Self {
        SkewPolynomial::new(ctx, vec![c])
    }

    /// c * t^k.
    pub fn monomial(ctx: Context, c: KElement, k: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c;
        SkewPolynomial::new(ctx, coeffs)
    }

    /// t - root.
    pub fn linear(ctx: Context, root: &KElement) -> Self {
        let neg = ctx.neg(root);
        let one = ctx.one();
        SkewPolynomial {
            ctx,
            coeffs: vec![neg, one],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` is the deg(0) = -infinity sentinel.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> &KElement {
        self.coeffs
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && *self.leading() == self.ctx.one()
    }

    pub fn coeff(&self, i: usize) -> KElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn constant_term(&self) -> KElement {
        self.coeff(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.ctx.same_ring(&other.ctx));
        let ctx = self.ctx.clone();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| ctx.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        SkewPolynomial::new(ctx, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let ctx = self.ctx.clone();
        let coeffs = self.coeffs.iter().map(|c| ctx.neg(c)).collect();
        SkewPolynomial { ctx, coeffs }
    }

    /// Left scalar multiple c * f (coefficients multiplied on the left).
    pub fn scale_left(&self, c: &KElement) -> Self {
        let ctx = self.ctx.clone();
        let coeffs = self.coeffs.iter().map(|a| ctx.mul(c, a)).collect();
        SkewPolynomial::new(ctx, coeffs)
    }

    /// t * f, one application of the defining relation per coefficient.
    fn t_times(&self) -> Self {
        let ctx = self.ctx.clone();
        let mut coeffs = vec![ctx.zero(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            let s = ctx.sigma(c, 1);
            coeffs[j + 1] = ctx.add(&coeffs[j + 1], &s);
            let d = ctx.delta(c, 1);
            coeffs[j] = ctx.add(&coeffs[j], &d);
        }
        SkewPolynomial::new(ctx, coeffs)
    }

    /// Product in R. The rows t^i * g are built once each by iterating the
    /// defining relation, then combined with the left coefficients of f.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !self.ctx.same_ring(&other.ctx) {
            return Err(Error::MixedContexts);
        }
        let ctx = self.ctx.clone();
        let mut acc = SkewPolynomial::zero(ctx.clone());
        let mut row = other.clone(); // t^i * other
        for (i, c) in self.coeffs.iter().enumerate() {
            if !ctx.is_zero(c) {
                acc = acc.add(&row.scale_left(c));
            }
            if i + 1 < self.coeffs.len() {
                row = row.t_times();
            }
        }
        Ok(acc)
    }

    /// Right division: f = q*g + r with deg r < deg g.
    pub fn divmod_right(&self, g: &Self) -> Result<(Self, Self)> {
        if !self.ctx.same_ring(&g.ctx) {
            return Err(Error::MixedContexts);
        }
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.ctx.clone();
        let dg = g.degree().unwrap();
        let glead = g.leading().clone();
        let mut r = self.clone();
        let mut q = SkewPolynomial::zero(ctx.clone());
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let k = dr - dg;
            // leading term of (c t^k) * g is c * sigma^k(g_lead) * t^(k+dg)
            let sl = ctx.sigma(&glead, k as i64);
            let c = ctx.div(r.leading(), &sl)?;
            let mono = SkewPolynomial::monomial(ctx.clone(), c, k);
            q = q.add(&mono);
            r = r.sub(&mono.mul(g)?);
        }
        Ok((q, r))
    }

    /// Left division: f = g*q + r with deg r < deg g.
    pub fn divmod_left(&self, g: &Self) -> Result<(Self, Self)> {
        if !self.ctx.same_ring(&g.ctx) {
            return Err(Error::MixedContexts);
        }
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.ctx.clone();
        let dg = g.degree().unwrap();
        let glead_inv = ctx
            .inv(g.leading())
            .expect("monic-or-unit leading coefficient");
        let mut r = self.clone();
        let mut q = SkewPolynomial::zero(ctx.clone());
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let k = dr - dg;
            // leading term of g * (c t^k) is g_lead * sigma^dg(c) * t^(k+dg)
            let c = ctx.sigma(&ctx.mul(&glead_inv, r.leading()), -(dg as i64));
            let mono = SkewPolynomial::monomial(ctx.clone(), c, k);
            q = q.add(&mono);
            r = r.sub(&g.mul(&mono)?);
        }
        Ok((q, r))
    }

    /// Does g right-divide f?
    pub fn right_divides(g: &Self, f: &Self) -> Result<bool> {
        Ok(f.divmod_right(g)?.1.is_zero())
    }

    /// Normalize to a monic polynomial by scaling on the left.
    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .ctx
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale_left(&inv)
    }
}

/// Greatest common right divisor with Bezout cofactors:
/// returns (d, a, b) with d monic and a*f + b*g = d.
pub fn gcrd_extended(
    f: &SkewPolynomial,
    g: &SkewPolynomial,
) -> Result<(SkewPolynomial, SkewPolynomial, SkewPolynomial)> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::Precondition("gcrd(0, 0) is undefined".into()));
    }
    let ctx = f.ctx.clone();
    let mut r0 = f.clone();
    let mut a0 = SkewPolynomial::one(ctx.clone());
    let mut b0 = SkewPolynomial::zero(ctx.clone());
    let mut r1 = g.clone();
    let mut a1 = SkewPolynomial::zero(ctx.clone());
    let mut b1 = SkewPolynomial::one(ctx.clone());
    while !r1.is_zero() {
        let (q, r2) = r0.divmod_right(&r1)?;
        let a2 = a0.sub(&q.mul(&a1)?);
        let b2 = b0.sub(&q.mul(&b1)?);
        r0 = r1;
        a0 = a1;
        b0 = b1;
        r1 = r2;
        a1 = a2;
        b1 = b2;
    }
    let lead_inv = ctx.inv(r0.leading()).expect("nonzero gcrd");
    Ok((
        r0.scale_left(&lead_inv),
        a0.scale_left(&lead_inv),
        b0.scale_left(&lead_inv),
    ))
}

pub fn gcrd(f: &SkewPolynomial, g: &SkewPolynomial) -> Result<SkewPolynomial> {
    Ok(gcrd_extended(f, g)?.0)
}

/// Least common left multiple, monic: the minimal-degree h with both f and
/// g as right divisors. Obtained from the cofactors at the end of the right
/// Euclidean algorithm (a*f = -b*g at the step where the remainder
/// vanishes).
pub fn lclm(f: &SkewPolynomial, g: &SkewPolynomial) -> Result<SkewPolynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Precondition("lclm with a zero argument".into()));
    }
    let ctx = f.ctx.clone();
    if !ctx.same_ring(&g.ctx) {
        return Err(Error::MixedContexts);
    }
    let mut r0 = f.clone();
    let mut a0 = SkewPolynomial::one(ctx.clone());
    let mut r1 = g.clone();
    let mut a1 = SkewPolynomial::zero(ctx.clone());
    while !r1.is_zero() {
        let (q, r2) = r0.divmod_right(&r1)?;
        let a2 = a0.sub(&q.mul(&a1)?);
        r0 = r1;
        a0 = a1;
        r1 = r2;
        a1 = a2;
    }
    // a1*f + b1*g = 0 here, so a1*f is a common left multiple of minimal degree.
    let m = a1.mul(f)?;
    debug_assert_eq!(
        m.degree(),
        Some(f.degree().unwrap() + g.degree().unwrap() - r0.degree().unwrap())
    );
    Ok(m.make_monic())
}

/// Omega_v(alpha) = sigma(v) * alpha * v^{-1} + delta(v) * v^{-1}; v != 0.
pub fn omega(ctx: &Context, v: &KElement, alpha: &KElement) -> Result<KElement> {
    let v_inv = ctx.inv(v).ok_or(Error::DivisionByZero)?;
    let s = ctx.mul(&ctx.mul(&ctx.sigma(v, 1), alpha), &v_inv);
    let d = ctx.mul(&ctx.delta(v, 1), &v_inv);
    Ok(ctx.add(&s, &d))
}

/// A witness v != 0 with Omega_v(alpha) = beta, i.e.
/// sigma(v)*alpha + delta(v) = beta*v, when (t - alpha) ~ (t - beta).
/// Solved as an F-linear kernel computation in the coordinates of K over F.
pub fn similar_linear(ctx: &Context, alpha: &KElement, beta: &KElement) -> Option<KElement> {
    let r = ctx.k_dim_over_f();
    let gen = ctx.generator();
    let mut basis_elt = ctx.one();
    let mut cols = vec![];
    for _ in 0..r {
        let img = ctx.sub(
            &ctx.add(
                &ctx.mul(&ctx.sigma(&basis_elt, 1), alpha),
                &ctx.delta(&basis_elt, 1),
            ),
            &ctx.mul(beta, &basis_elt),
        );
        cols.push(ctx.coords_over_f(&img));
        basis_elt = ctx.mul(&basis_elt, &gen);
    }
    let kern = linalg::kernel(ctx, r, &cols);
    kern.basis.first().map(|v| ctx.from_coords(v))
}

/// V_p(b) = b^p + delta^(p-1)(b); differential contexts only.
/// Satisfies (t - b)^p = t^p - V_p(b).
pub fn vp(ctx: &Context, b: &KElement) -> Result<KElement> {
    let d = ctx.as_differential()?;
    let p = d.p;
    Ok(ctx.add(&ctx.pow(b, p), &ctx.delta(b, (p - 1) as u32)))
}

/// prod_i (t - roots[i]), factors multiplied left to right (index 0
/// leftmost). Errors on an empty list.
pub fn product_of_linear(ctx: &Context, roots: &[KElement]) -> Result<SkewPolynomial> {
    if roots.is_empty() {
        return Err(Error::Precondition(
            "product of an empty factor list".into(),
        ));
    }
    let mut acc = SkewPolynomial::linear(ctx.clone(), &roots[0]);
    for r in &roots[1..] {
        acc = acc.mul(&SkewPolynomial::linear(ctx.clone(), r))?;
    }
    Ok(acc)
}
