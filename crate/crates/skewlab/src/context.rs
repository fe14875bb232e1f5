//! Coefficient contexts: the two concrete fields K the skew rings are
//! built over, together with their endomorphism/derivation structure and
//! the F-linear coordinate machinery.
//!
//! * Twisted: K = F_{q^n} given as F_p[w]/(modulus), q = p^e, with
//!   sigma(a) = a^q the Frobenius of order n and fixed field F = F_q.
//! * Differential: K = F_p(u) with delta = d/du, sigma = id, and
//!   F = Const(delta) = F_p(u^p), with F-basis {1, u, ..., u^(p-1)}.
//!
//! Elements of F are represented as elements of K that happen to lie in F
//! (checked where it matters); all F-linear algebra elsewhere in the crate
//! runs on such elements using plain K arithmetic.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp::{sadd, smul, ssub, FpPoly};
use crate::ratfun::RatFun;

/// An element of K. Twisted: F_p-coordinate vector of fixed length e*n in
/// the power basis of w. Differential: reduced rational function in u.
/// Both representations are canonical, so `==` is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KElement {
    Twisted(Vec<u64>),
    Differential(RatFun),
}

/// Built-in irreducible moduli, keyed by (p, e*n). Fixed choices keep
/// element encodings reproducible across runs; users may override in the
/// ring spec.
pub const BUILTIN_MODULI: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1, 1]),       // w^2 + w + 1          (F_4)
    (2, 3, &[1, 1, 0, 1]),    // w^3 + w + 1          (F_8)
    (2, 4, &[1, 1, 0, 0, 1]), // w^4 + w + 1          (F_16)
    (3, 2, &[2, 2, 1]),       // w^2 + 2w + 2         (F_9)
    (3, 3, &[1, 2, 0, 1]),    // w^3 + 2w + 1         (F_27)
    (5, 2, &[2, 4, 1]),       // w^2 + 4w + 2         (F_25)
];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// F_{q^n} with the Frobenius twist a -> a^q.
#[derive(Debug)]
pub struct TwistedContext {
    pub p: u64,
    pub e: usize,
    pub n: usize,
    pub modulus: FpPoly,
    pub gen_label: String,
    /// e*n, the degree of K over F_p.
    dim: usize,
    /// sigma^j as an F_p-matrix in the power basis; column i is the image
    /// of w^i. Index j in 0..n.
    sigma_mats: Vec<Vec<Vec<u64>>>,
    /// F_p-basis of F = Fix(sigma), as coordinate vectors.
    f_basis: Vec<Vec<u64>>,
    /// Inverse of the matrix whose column i*e+j holds coords of w^i * f_j;
    /// realizes decomposition over the F-basis {1, w, ..., w^(n-1)}.
    coords_inv: Vec<Vec<u64>>,
}

/// F_p(u) with delta = d/du.
#[derive(Debug)]
pub struct DifferentialContext {
    pub p: u64,
    pub var_label: String,
    /// Degree bound for rational-function searches (numerator and
    /// denominator degree, in u or in the central variable v = u^p).
    pub search_degree_bound: u32,
}

#[derive(Debug, Clone)]
pub enum Context {
    Twisted(Arc<TwistedContext>),
    Differential(Arc<DifferentialContext>),
}

// ---- F_p matrix helpers (internal; dimensions are tiny) ----

fn mat_apply(p: u64, cols: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    let dim = cols.len();
    let mut out = vec![0u64; dim];
    for (i, col) in cols.iter().enumerate() {
        let a = v[i];
        if a == 0 {
            continue;
        }
        for (o, &c) in out.iter_mut().zip(col.iter()) {
            *o = sadd(p, *o, smul(p, a, c));
        }
    }
    out
}

/// Invert a square matrix over F_p given as columns; None if singular.
fn mat_inverse(p: u64, cols: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = cols.len();
    // rows of [A | I]
    let mut aug: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row: Vec<u64> = (0..n).map(|c| cols[c][r]).collect();
            let mut id = vec![0u64; n];
            id[r] = 1;
            row.extend(id);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot);
        let inv = crate::fp::sinv(p, aug[col][col]);
        for x in aug[col].iter_mut() {
            *x = smul(p, *x, inv);
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let f = aug[r][col];
                for c in 0..2 * n {
                    let s = smul(p, f, aug[col][c]);
                    aug[r][c] = ssub(p, aug[r][c], s);
                }
            }
        }
    }
    // return as columns of the inverse
    Some(
        (0..n)
            .map(|c| (0..n).map(|r| aug[r][n + c]).collect())
            .collect(),
    )
}

/// Kernel basis (over F_p) of the matrix given as columns.
fn mat_kernel(p: u64, cols: &[Vec<u64>], rows: usize) -> Vec<Vec<u64>> {
    let ncols = cols.len();
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|r| (0..ncols).map(|c| cols[c][r]).collect())
        .collect();
    let mut pivot_cols = vec![];
    let mut rank = 0;
    for col in 0..ncols {
        if let Some(r) = (rank..rows).find(|&r| m[r][col] != 0) {
            m.swap(rank, r);
            let inv = crate::fp::sinv(p, m[rank][col]);
            for x in m[rank].iter_mut() {
                *x = smul(p, *x, inv);
            }
            for r2 in 0..rows {
                if r2 != rank && m[r2][col] != 0 {
                    let f = m[r2][col];
                    for c2 in 0..ncols {
                        let s = smul(p, f, m[rank][c2]);
                        m[r2][c2] = ssub(p, m[r2][c2], s);
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
    }
    let mut basis = vec![];
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = ssub(p, 0, m[r][free]);
        }
        basis.push(v);
    }
    basis
}

impl TwistedContext {
    pub fn new(
        p: u64,
        e: usize,
        n: usize,
        modulus: Option<FpPoly>,
        gen_label: String,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRingSpec(format!("p = {p} is not prime")));
        }
        if e == 0 || n == 0 {
            return Err(Error::InvalidRingSpec("e and n must be positive".into()));
        }
        let dim = e * n;
        if (dim as u32) * (64 - p.leading_zeros()) > 40 {
            return Err(Error::InvalidRingSpec(format!(
                "field F_{p}^{dim} too large for this tool"
            )));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.p != p {
                    return Err(Error::InvalidRingSpec(
                        "modulus characteristic mismatch".into(),
                    ));
                }
                m
            }
            None => {
                let entry = BUILTIN_MODULI
                    .iter()
                    .find(|&&(bp, bd, _)| bp == p && bd == dim);
                match entry {
                    Some(&(_, _, coeffs)) => FpPoly::new(p, coeffs.to_vec()),
                    None => {
                        return Err(Error::InvalidRingSpec(format!(
                            "no built-in modulus for F_{p}^{dim}; supply one in the ring spec"
                        )))
                    }
                }
            }
        };
        if modulus.degree() != Some(dim) {
            return Err(Error::InvalidRingSpec(format!(
                "modulus must have degree e*n = {dim}, got {:?}",
                modulus.degree()
            )));
        }
        if !modulus.is_monic() {
            return Err(Error::InvalidRingSpec("modulus must be monic".into()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::InvalidRingSpec(
                "modulus is not irreducible over F_p".into(),
            ));
        }

        let q = (p as u128).pow(e as u32) as u64;

        // sigma^j matrices: column i of sigma^j is (w^(q^j))^i mod modulus.
        let w = FpPoly::monomial(p, 1);
        let mut sigma_mats = vec![];
        let mut wqj = w.rem(&modulus);
        for _j in 0..n {
            let mut cols = vec![];
            let mut pow = FpPoly::one(p);
            for _i in 0..dim {
                cols.push(pad(&pow, dim));
                pow = pow.mul(&wqj).rem(&modulus);
            }
            sigma_mats.push(cols);
            wqj = wqj.pow_mod(q, &modulus);
        }
        // sigma must return to the identity after exactly n steps
        let w_coords = pad(&w.rem(&modulus), dim);
        if pad(&wqj, dim) != w_coords {
            return Err(Error::InvalidRingSpec(
                "sigma does not have order n on K".into(),
            ));
        }
        for (j, mat) in sigma_mats.iter().enumerate().skip(1) {
            if mat_apply(p, mat, &w_coords) == w_coords {
                return Err(Error::InvalidRingSpec(format!(
                    "sigma has order {j} < n on K"
                )));
            }
        }

        // F = Fix(sigma): kernel of (sigma - id) over F_p.
        let sub_cols: Vec<Vec<u64>> = (0..dim)
            .map(|i| {
                let mut unit = vec![0u64; dim];
                unit[i] = 1;
                let img = mat_apply(p, &sigma_mats[1], &unit);
                img.iter()
                    .zip(unit.iter())
                    .map(|(&a, &b)| ssub(p, a, b))
                    .collect()
            })
            .collect();
        let f_basis = mat_kernel(p, &sub_cols, dim);
        if f_basis.len() != e {
            return Err(Error::Internal(format!(
                "fixed field has F_p-dimension {} instead of e = {e}",
                f_basis.len()
            )));
        }

        // w^i for i < n, and the change-of-basis matrix for coords over F.
        let mut w_pows = vec![];
        let mut pow = FpPoly::one(p);
        for _ in 0..n {
            w_pows.push(pad(&pow, dim));
            pow = pow.mul(&w).rem(&modulus);
        }
        let mut basis_cols = vec![];
        for wp in &w_pows {
            for fb in &f_basis {
                let prod = poly(p, wp).mul(&poly(p, fb)).rem(&modulus);
                basis_cols.push(pad(&prod, dim));
            }
        }
        let coords_inv = mat_inverse(p, &basis_cols)
            .ok_or_else(|| Error::Internal("power basis over F is not a basis".into()))?;

        Ok(TwistedContext {
            p,
            e,
            n,
            modulus,
            gen_label,
            dim,
            sigma_mats,
            f_basis,
            coords_inv,
        })
    }

    /// q = p^e.
    pub fn q(&self) -> u64 {
        (self.p as u128).pow(self.e as u32) as u64
    }

    /// |K| = q^n.
    pub fn field_size(&self) -> u64 {
        (self.p as u128).pow(self.dim as u32) as u64
    }

    pub fn dim_over_fp(&self) -> usize {
        self.dim
    }
}

fn pad(f: &FpPoly, dim: usize) -> Vec<u64> {
    let mut v = f.coeffs.clone();
    v.resize(dim, 0);
    v
}

fn poly(p: u64, coords: &[u64]) -> FpPoly {
    FpPoly::new(p, coords.to_vec())
}

impl Context {
    pub fn twisted(p: u64, e: usize, n: usize, modulus: Option<FpPoly>) -> Result<Context> {
        Context::twisted_labeled(p, e, n, modulus, "w".into())
    }

    pub fn twisted_labeled(
        p: u64,
        e: usize,
        n: usize,
        modulus: Option<FpPoly>,
        gen_label: String,
    ) -> Result<Context> {
        Ok(Context::Twisted(Arc::new(TwistedContext::new(
            p, e, n, modulus, gen_label,
        )?)))
    }

    pub fn differential(p: u64, search_degree_bound: u32) -> Result<Context> {
        Context::differential_labeled(p, search_degree_bound, "u".into())
    }

    pub fn differential_labeled(
        p: u64,
        search_degree_bound: u32,
        var_label: String,
    ) -> Result<Context> {
        if !is_prime(p) {
            return Err(Error::InvalidRingSpec(format!("p = {p} is not prime")));
        }
        Ok(Context::Differential(Arc::new(DifferentialContext {
            p,
            var_label,
            search_degree_bound,
        })))
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, Context::Twisted(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Context::Twisted(c) => c.p,
            Context::Differential(c) => c.p,
        }
    }

    pub fn as_twisted(&self) -> Result<&TwistedContext> {
        match self {
            Context::Twisted(c) => Ok(c),
            Context::Differential(_) => Err(Error::WrongContext {
                expected: "twisted",
            }),
        }
    }

    pub fn as_differential(&self) -> Result<&DifferentialContext> {
        match self {
            Context::Differential(c) => Ok(c),
            Context::Twisted(_) => Err(Error::WrongContext {
                expected: "differential",
            }),
        }
    }

    /// Structural compatibility: same kind and same field parameters.
    pub fn same_ring(&self, other: &Context) -> bool {
        match (self, other) {
            (Context::Twisted(a), Context::Twisted(b)) => {
                a.p == b.p && a.e == b.e && a.n == b.n && a.modulus == b.modulus
            }
            (Context::Differential(a), Context::Differential(b)) => a.p == b.p,
            _ => false,
        }
    }

    // ---- element constructors ----

    pub fn zero(&self) -> KElement {
        match self {
            Context::Twisted(c) => KElement::Twisted(vec![0; c.dim]),
            Context::Differential(c) => KElement::Differential(RatFun::zero(c.p)),
        }
    }

    pub fn one(&self) -> KElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> KElement {
        let p = self.characteristic() as i64;
        let r = ((v % p) + p) % p;
        match self {
            Context::Twisted(c) => {
                let mut coords = vec![0; c.dim];
                coords[0] = r as u64;
                KElement::Twisted(coords)
            }
            Context::Differential(c) => KElement::Differential(RatFun::constant(c.p, r as u64)),
        }
    }

    /// The generator: w (twisted) or u (differential).
    pub fn generator(&self) -> KElement {
        match self {
            Context::Twisted(c) => {
                let mut coords = vec![0; c.dim];
                if c.dim > 1 {
                    coords[1] = 1;
                } else {
                    // degree-1 modulus: w is the root of a linear polynomial
                    coords[0] = ssub(c.p, 0, c.modulus.coeff(0));
                }
                KElement::Twisted(coords)
            }
            Context::Differential(c) => {
                KElement::Differential(RatFun::from_poly(FpPoly::monomial(c.p, 1)))
            }
        }
    }

    pub fn from_ratfun(&self, r: RatFun) -> Result<KElement> {
        let c = self.as_differential()?;
        if r.p() != c.p {
            return Err(Error::MixedContexts);
        }
        Ok(KElement::Differential(r))
    }

    // ---- field arithmetic ----

    pub fn is_zero(&self, a: &KElement) -> bool {
        match a {
            KElement::Twisted(v) => v.iter().all(|&c| c == 0),
            KElement::Differential(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &KElement, b: &KElement) -> KElement {
        match (self, a, b) {
            (Context::Twisted(c), KElement::Twisted(x), KElement::Twisted(y)) => KElement::Twisted(
                x.iter()
                    .zip(y.iter())
                    .map(|(&u, &v)| sadd(c.p, u, v))
                    .collect(),
            ),
            (Context::Differential(_), KElement::Differential(x), KElement::Differential(y)) => {
                KElement::Differential(x.add(y))
            }
            _ => panic!("context/element kind mismatch"),
        }
    }

    pub fn sub(&self, a: &KElement, b: &KElement) -> KElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &KElement) -> KElement {
        match (self, a) {
            (Context::Twisted(c), KElement::Twisted(x)) => {
                KElement::Twisted(x.iter().map(|&u| ssub(c.p, 0, u)).collect())
            }
            (Context::Differential(_), KElement::Differential(x)) => {
                KElement::Differential(x.neg())
            }
            _ => panic!("context/element kind mismatch"),
        }
    }

    pub fn mul(&self, a: &KElement, b: &KElement) -> KElement {
        match (self, a, b) {
            (Context::Twisted(c), KElement::Twisted(x), KElement::Twisted(y)) => {
                let prod = poly(c.p, x).mul(&poly(c.p, y)).rem(&c.modulus);
                KElement::Twisted(pad(&prod, c.dim))
            }
            (Context::Differential(_), KElement::Differential(x), KElement::Differential(y)) => {
                KElement::Differential(x.mul(y))
            }
            _ => panic!("context/element kind mismatch"),
        }
    }

    /// None for zero.
    pub fn inv(&self, a: &KElement) -> Option<KElement> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Context::Twisted(c), KElement::Twisted(x)) => {
                let e = c.field_size() - 2;
                let r = poly(c.p, x).pow_mod(e, &c.modulus);
                Some(KElement::Twisted(pad(&r, c.dim)))
            }
            (Context::Differential(_), KElement::Differential(x)) => {
                x.inv().map(KElement::Differential)
            }
            _ => panic!("context/element kind mismatch"),
        }
    }

    pub fn div(&self, a: &KElement, b: &KElement) -> Result<KElement> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &bi))
    }

    pub fn pow(&self, a: &KElement, e: u64) -> KElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    // ---- sigma, delta, norm ----

    /// sigma^j; j may be negative (inverse automorphism). Identity in the
    /// differential context.
    pub fn sigma(&self, a: &KElement, j: i64) -> KElement {
        match (self, a) {
            (Context::Twisted(c), KElement::Twisted(x)) => {
                let n = c.n as i64;
                let jm = ((j % n) + n) % n;
                KElement::Twisted(mat_apply(c.p, &c.sigma_mats[jm as usize], x))
            }
            (Context::Differential(_), KElement::Differential(_)) => a.clone(),
            _ => panic!("context/element kind mismatch"),
        }
    }

    /// delta^j; zero map (for j >= 1) in the twisted context.
    pub fn delta(&self, a: &KElement, j: u32) -> KElement {
        if j == 0 {
            return a.clone();
        }
        match (self, a) {
            (Context::Twisted(_), KElement::Twisted(_)) => self.zero(),
            (Context::Differential(_), KElement::Differential(r)) => {
                let mut out = r.clone();
                for _ in 0..j {
                    out = out.derivative();
                }
                KElement::Differential(out)
            }
            _ => panic!("context/element kind mismatch"),
        }
    }

    /// The field norm N_{K/F}(b) = prod_{j=0}^{n-1} sigma^j(b). Twisted only.
    pub fn norm(&self, b: &KElement) -> Result<KElement> {
        let c = self.as_twisted()?;
        let mut acc = self.one();
        for j in 0..c.n {
            acc = self.mul(&acc, &self.sigma(b, j as i64));
        }
        debug_assert!(self.in_f(&acc), "norm landed outside F");
        Ok(acc)
    }

    // ---- F-structure ----

    /// [K : F]: n (twisted) or p (differential).
    pub fn k_dim_over_f(&self) -> usize {
        match self {
            Context::Twisted(c) => c.n,
            Context::Differential(c) => c.p as usize,
        }
    }

    /// Membership in F = Fix(sigma) resp. Const(delta).
    pub fn in_f(&self, a: &KElement) -> bool {
        match self {
            Context::Twisted(_) => self.sigma(a, 1) == *a,
            Context::Differential(_) => self.is_zero(&self.delta(a, 1)),
        }
    }

    /// Coordinates of `a` in the fixed F-basis of K: {1, w, ..., w^(n-1)}
    /// (twisted) or {1, u, ..., u^(p-1)} (differential). Entries are
    /// elements of F.
    pub fn coords_over_f(&self, a: &KElement) -> Vec<KElement> {
        match (self, a) {
            (Context::Twisted(c), KElement::Twisted(x)) => {
                let raw = mat_apply(c.p, &c.coords_inv, x);
                (0..c.n)
                    .map(|i| {
                        let mut acc = vec![0u64; c.dim];
                        for (j, fb) in c.f_basis.iter().enumerate() {
                            let s = raw[i * c.e + j];
                            for (av, &bv) in acc.iter_mut().zip(fb.iter()) {
                                *av = sadd(c.p, *av, smul(c.p, s, bv));
                            }
                        }
                        KElement::Twisted(acc)
                    })
                    .collect()
            }
            (Context::Differential(c), KElement::Differential(r)) => {
                let p = c.p as usize;
                // a = N/D = M / D(u)^p with M = N * D^(p-1); D(u)^p = D~(u^p).
                let mut m = r.num.clone();
                for _ in 1..p {
                    m = m.mul(&r.den);
                }
                let mut parts = vec![vec![]; p];
                for (i, &cf) in m.coeffs.iter().enumerate() {
                    let res = i % p;
                    let quo = i / p;
                    for part in parts.iter_mut() {
                        if part.len() <= quo {
                            part.resize(quo + 1, 0);
                        }
                    }
                    parts[res][quo] = cf;
                }
                parts
                    .into_iter()
                    .map(|coeffs| {
                        let num_v = FpPoly::new(c.p, coeffs).inflate(p);
                        let den_v = r.den.inflate(p);
                        KElement::Differential(RatFun::new(num_v, den_v))
                    })
                    .collect()
            }
            _ => panic!("context/element kind mismatch"),
        }
    }

    /// Inverse of [`Context::coords_over_f`].
    pub fn from_coords(&self, coords: &[KElement]) -> KElement {
        assert_eq!(coords.len(), self.k_dim_over_f());
        let gen = self.generator();
        let mut acc = self.zero();
        let mut basis_elt = self.one();
        for c in coords {
            acc = self.add(&acc, &self.mul(c, &basis_elt));
            basis_elt = self.mul(&basis_elt, &gen);
        }
        acc
    }

    // ---- enumeration ----

    /// All q^n elements of a twisted K, each exactly once. Coordinate
    /// tuples (c_0, ..., c_{k-1}) appear in lexicographic order: the
    /// coefficient of w^0 is the first key, so the lowest coordinate varies
    /// slowest (0, w, 1, 1+w over F_4).
    pub fn enumerate(&self) -> Result<impl Iterator<Item = KElement> + '_> {
        let c = self.as_twisted()?;
        let p = c.p;
        let dim = c.dim;
        let total = c.field_size();
        Ok((0..total).map(move |m| {
            let mut coords = vec![0u64; dim];
            let mut m = m;
            for i in (0..dim).rev() {
                coords[i] = m % p;
                m /= p;
            }
            KElement::Twisted(coords)
        }))
    }

    /// All q elements of F inside a twisted K, in lexicographic order of
    /// their F_p-coordinates over the fixed-field basis.
    pub fn enumerate_f(&self) -> Result<impl Iterator<Item = KElement> + '_> {
        let c = self.as_twisted()?;
        let p = c.p;
        let e = c.e;
        let total = c.q();
        Ok((0..total).map(move |m| {
            let mut acc = vec![0u64; c.dim];
            let mut m = m;
            for j in (0..e).rev() {
                let digit = m % p;
                m /= p;
                if digit != 0 {
                    for (av, &bv) in acc.iter_mut().zip(c.f_basis[j].iter()) {
                        *av = sadd(p, *av, smul(p, digit, bv));
                    }
                }
            }
            KElement::Twisted(acc)
        }))
    }

    /// Differential K-elements P/Q with deg P, deg Q <= bound, reduced and
    /// each value exactly once. Order: monic denominators ascending by
    /// base-p counter (1, u, u+1, u^2, ...), numerators ascending inside
    /// each block (0, 1, u, u+1, u^2, ...).
    pub fn bounded_elements(&self, bound: u32) -> Result<impl Iterator<Item = KElement> + '_> {
        let c = self.as_differential()?;
        let p = c.p;
        let max = (p as u128).pow(bound + 1) as u64;
        Ok((1..max)
            .map(move |qc| FpPoly::from_counter(p, qc))
            .filter(|q| q.is_monic())
            .flat_map(move |q| {
                (0..max).filter_map(move |pc| {
                    let num = FpPoly::from_counter(p, pc);
                    if num.gcd(&q).degree() == Some(0) || (num.is_zero() && q.degree() == Some(0)) {
                        Some(KElement::Differential(RatFun::new(num, q.clone())))
                    } else {
                        None
                    }
                })
            }))
    }

    /// Differential F-elements P(v)/Q(v) with v = u^p and deg_v P,
    /// deg_v Q <= bound, same order as [`Context::bounded_elements`].
    pub fn bounded_f_elements(&self, bound: u32) -> Result<impl Iterator<Item = KElement> + '_> {
        let p = self.as_differential()?.p as usize;
        Ok(self.bounded_elements(bound)?.map(move |el| match el {
            KElement::Differential(r) => KElement::Differential(r.inflate(p)),
            _ => unreachable!(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Context {
        Context::twisted(2, 1, 2, None).unwrap()
    }

    fn f9() -> Context {
        Context::twisted(3, 1, 2, None).unwrap()
    }

    fn f2u() -> Context {
        Context::differential(2, 6).unwrap()
    }

    #[test]
    fn sigma_on_f4() {
        let ctx = f4();
        let w = ctx.generator();
        // sigma(w) = w^2 = w + 1 under w^2 + w + 1
        let expect = ctx.add(&w, &ctx.one());
        assert_eq!(ctx.sigma(&w, 1), expect);
        // base field is fixed
        assert_eq!(ctx.sigma(&ctx.one(), 1), ctx.one());
        assert_eq!(ctx.sigma(&ctx.zero(), 1), ctx.zero());
        // order n = 2
        assert_eq!(ctx.sigma(&w, 2), w);
        assert_eq!(ctx.sigma(&w, -1), ctx.sigma(&w, 1));
    }

    #[test]
    fn delta_on_f2u() {
        let ctx = f2u();
        let u = ctx.generator();
        assert_eq!(ctx.delta(&u, 1), ctx.one());
        // delta(u^2) = 0 in characteristic 2
        let u2 = ctx.mul(&u, &u);
        assert!(ctx.is_zero(&ctx.delta(&u2, 1)));
        // delta(1/u) = 1/u^2
        let inv_u = ctx.inv(&u).unwrap();
        let expect = ctx.inv(&u2).unwrap();
        assert_eq!(ctx.delta(&inv_u, 1), expect);
    }

    #[test]
    fn norm_values() {
        let ctx = f4();
        let w = ctx.generator();
        // N(w) = w * w^2 = w^3 = 1
        assert_eq!(ctx.norm(&w).unwrap(), ctx.one());
        assert_eq!(ctx.norm(&ctx.one()).unwrap(), ctx.one());

        // Over F_9 with w^2 + 2w + 2, w generates the multiplicative group
        // and N(w) = w^4 = 2.
        let ctx = f9();
        let g = ctx.generator();
        assert_eq!(ctx.norm(&g).unwrap(), ctx.from_int(2));
    }

    #[test]
    fn coords_over_f_twisted() {
        let ctx = f4();
        let w = ctx.generator();
        let a = ctx.add(&w, &ctx.one());
        let coords = ctx.coords_over_f(&a);
        assert_eq!(coords, vec![ctx.one(), ctx.one()]);
        assert_eq!(ctx.from_coords(&coords), a);
    }

    #[test]
    fn coords_over_f_differential() {
        let ctx = f2u();
        let u = ctx.generator();
        // u^3 = 0*1 + u^2 * u
        let u2 = ctx.mul(&u, &u);
        let u3 = ctx.mul(&u2, &u);
        assert_eq!(ctx.coords_over_f(&u3), vec![ctx.zero(), u2.clone()]);
        // 1/(u+1) = 1/(u^2+1) + u/(u^2+1)
        let a = ctx.inv(&ctx.add(&u, &ctx.one())).unwrap();
        let denom = ctx.add(&u2, &ctx.one());
        let part = ctx.inv(&denom).unwrap();
        assert_eq!(ctx.coords_over_f(&a), vec![part.clone(), part.clone()]);
        assert_eq!(ctx.from_coords(&[part.clone(), part]), a);
        // the coordinates really lie in F
        for c in ctx.coords_over_f(&a) {
            assert!(ctx.in_f(&c));
        }
    }

    #[test]
    fn enumerate_orders() {
        let ctx = f4();
        let els: Vec<KElement> = ctx.enumerate().unwrap().collect();
        assert_eq!(els.len(), 4);
        let w = ctx.generator();
        // lexicographic on (c_0, c_1): 0, w, 1, 1+w
        assert_eq!(els[0], ctx.zero());
        assert_eq!(els[1], w);
        assert_eq!(els[2], ctx.one());
        assert_eq!(els[3], ctx.add(&ctx.one(), &w));
        // no repeats over F_9
        let ctx9 = f9();
        let els: Vec<KElement> = ctx9.enumerate().unwrap().collect();
        assert_eq!(els.len(), 9);
        for (i, a) in els.iter().enumerate() {
            for b in &els[i + 1..] {
                assert_ne!(a, b);
            }
        }
        // rejected for differential contexts
        assert!(f2u().enumerate().is_err());
    }

    #[test]
    fn bounded_elements_order() {
        let ctx = f2u();
        let els: Vec<KElement> = ctx.bounded_elements(1).unwrap().take(5).collect();
        let u = ctx.generator();
        assert_eq!(els[0], ctx.zero());
        assert_eq!(els[1], ctx.one());
        assert_eq!(els[2], u);
        assert_eq!(els[3], ctx.add(&u, &ctx.one()));
        // next block: denominator u, first numerator coprime to u is 1
        assert_eq!(els[4], ctx.inv(&u).unwrap());
    }

    #[test]
    fn fixed_field_structure() {
        // F_16 over F_4: e = 2, n = 2, so [K:F] = 2 with |F| = 4.
        let ctx = Context::twisted(2, 2, 2, None).unwrap();
        assert_eq!(ctx.k_dim_over_f(), 2);
        let f_els: Vec<KElement> = ctx.enumerate_f().unwrap().collect();
        assert_eq!(f_els.len(), 4);
        for a in &f_els {
            assert!(ctx.in_f(a));
        }
        for a in ctx.enumerate().unwrap() {
            let coords = ctx.coords_over_f(&a);
            assert!(coords.iter().all(|c| ctx.in_f(c)));
            assert_eq!(ctx.from_coords(&coords), a);
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(Context::twisted(4, 1, 2, None).is_err()); // p not prime
        let reducible = FpPoly::new(2, vec![1, 0, 1]); // (w+1)^2
        assert!(Context::twisted(2, 1, 2, Some(reducible)).is_err());
        assert!(Context::differential(6, 4).is_err());
    }
}
