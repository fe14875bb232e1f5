//! Dense polynomials over a prime field F_p.
//!
//! Coefficients are stored lowest degree first as `u64` values in `[0, p)`,
//! with trailing zeros stripped; the zero polynomial has an empty vector.
//! The characteristic `p` is carried on every polynomial and must agree
//! between operands (checked by debug assertions).

/// Scalar addition mod p.
#[inline]
pub fn sadd(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// Scalar subtraction mod p.
#[inline]
pub fn ssub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// Scalar multiplication mod p.
#[inline]
pub fn smul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Scalar exponentiation mod p.
pub fn spow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = smul(p, acc, a);
        }
        a = smul(p, a, a);
        e >>= 1;
    }
    acc
}

/// Scalar inverse mod p (p prime, a != 0).
#[inline]
pub fn sinv(p: u64, a: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    spow(p, a, p - 2)
}

/// A dense polynomial over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// The monomial x^k.
    pub fn monomial(p: u64, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        FpPoly { p, coeffs: c }
    }

    /// Decode a polynomial from a base-p counter, least significant digit
    /// = constant coefficient. Counter order is degree-compatible:
    /// 0, 1, ..., p-1, x, x+1, ...
    pub fn from_counter(p: u64, mut m: u64) -> Self {
        let mut coeffs = vec![];
        while m > 0 {
            coeffs.push(m % p);
            m /= p;
        }
        FpPoly { p, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0; n];
        for (i, item) in c.iter_mut().enumerate() {
            *item = sadd(p, self.coeff(i), other.coeff(i));
        }
        FpPoly::new(p, c)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0; n];
        for (i, item) in c.iter_mut().enumerate() {
            *item = ssub(p, self.coeff(i), other.coeff(i));
        }
        FpPoly::new(p, c)
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| ssub(p, 0, c)).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(p);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = sadd(p, c[i + j], smul(p, a, b));
            }
        }
        FpPoly::new(p, c)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| smul(p, c, s)).collect())
    }

    /// Euclidean division; panics if `other` is zero.
    pub fn divmod(&self, other: &FpPoly) -> (FpPoly, FpPoly) {
        debug_assert_eq!(self.p, other.p);
        assert!(!other.is_zero(), "division by zero polynomial");
        let p = self.p;
        let db = other.coeffs.len();
        if self.coeffs.len() < db {
            return (FpPoly::zero(p), self.clone());
        }
        let lead_inv = sinv(p, other.leading());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len() - db + 1];
        for k in (0..quo.len()).rev() {
            let c = smul(p, rem[k + db - 1], lead_inv);
            if c == 0 {
                continue;
            }
            quo[k] = c;
            for (j, &b) in other.coeffs.iter().enumerate() {
                rem[k + j] = ssub(p, rem[k + j], smul(p, c, b));
            }
        }
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    pub fn rem(&self, other: &FpPoly) -> FpPoly {
        self.divmod(other).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(sinv(self.p, self.leading()))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(p);
        }
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| smul(p, a, (i as u64) % p))
            .collect();
        FpPoly::new(p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = sadd(p, smul(p, acc, x), c);
        }
        acc
    }

    /// Substitute x -> x^k (coefficient spreading). Used to embed
    /// F_p(v) into F_p(u) along v = u^k.
    pub fn inflate(&self, k: usize) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0u64; (self.coeffs.len() - 1) * k + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i * k] = a;
        }
        FpPoly {
            p: self.p,
            coeffs: c,
        }
    }

    /// Inverse of [`FpPoly::inflate`]: returns Some(q) with q(x^k) = self
    /// when every exponent with a nonzero coefficient is a multiple of k.
    pub fn deflate(&self, k: usize) -> Option<FpPoly> {
        let mut c = vec![];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i.is_multiple_of(k) {
                c.push(a);
            } else if a != 0 {
                return None;
            }
        }
        Some(FpPoly::new(self.p, c))
    }

    /// self^e reduced mod `modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &FpPoly) -> FpPoly {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Exact irreducibility over F_p: x^(p^d) == x mod f, and for every
    /// prime divisor r of d, gcd(x^(p^(d/r)) - x, f) = 1.
    pub fn is_irreducible(&self) -> bool {
        let p = self.p;
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        if !self.is_monic() {
            return self.make_monic().is_irreducible();
        }
        let x = FpPoly::monomial(p, 1);
        // frob[j] = x^(p^j) mod self
        let mut frob = x.rem(self);
        let mut frob_pows = vec![x.rem(self)];
        for _ in 0..d {
            frob = frob.pow_mod(p, self);
            frob_pows.push(frob.clone());
        }
        if frob_pows[d] != x.rem(self) {
            return false;
        }
        for r in prime_divisors(d as u64) {
            let j = d / r as usize;
            let diff = frob_pows[j].sub(&x);
            if self.gcd(&diff).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

/// Distinct prime divisors of n by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
