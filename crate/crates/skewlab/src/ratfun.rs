//! Reduced rational functions over F_p.
//!
//! Every value is kept in canonical form at all times: the denominator is
//! monic and coprime to the numerator, and zero is 0/1. Canonical form makes
//! structural equality coincide with field equality.

use crate::fp::{sinv, FpPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    pub num: FpPoly,
    pub den: FpPoly,
}

impl RatFun {
    /// Build and reduce. Panics if `den` is zero (callers guard).
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let p = num.p;
        debug_assert_eq!(p, den.p);
        if num.is_zero() {
            return RatFun {
                num,
                den: FpPoly::one(p),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divmod(&g).0, den.divmod(&g).0)
        };
        let lead_inv = sinv(p, den.leading());
        if lead_inv != 1 {
            num = num.scale(lead_inv);
            den = den.scale(lead_inv);
        }
        RatFun { num, den }
    }

    pub fn zero(p: u64) -> Self {
        RatFun {
            num: FpPoly::zero(p),
            den: FpPoly::one(p),
        }
    }

    pub fn one(p: u64) -> Self {
        RatFun {
            num: FpPoly::one(p),
            den: FpPoly::one(p),
        }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.p;
        RatFun {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        RatFun::from_poly(FpPoly::constant(p, c))
    }

    pub fn p(&self) -> u64 {
        self.num.p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// None for zero.
    pub fn inv(&self) -> Option<RatFun> {
        if self.is_zero() {
            return None;
        }
        Some(RatFun::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u64) -> RatFun {
        let mut acc = RatFun::one(self.p());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// d/du via the quotient rule.
    pub fn derivative(&self) -> RatFun {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFun::new(n, self.den.mul(&self.den))
    }

    /// Substitute u -> u^k in both numerator and denominator.
    /// Reducedness and the monic denominator are preserved.
    pub fn inflate(&self, k: usize) -> RatFun {
        RatFun {
            num: self.num.inflate(k),
            den: self.den.inflate(k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[u64], den: &[u64]) -> RatFun {
        RatFun::new(FpPoly::new(2, num.to_vec()), FpPoly::new(2, den.to_vec()))
    }

    #[test]
    fn reduction_is_canonical() {
        // (u^2+u)/(u+1) = u over F_2
        let a = rf(&[0, 1, 1], &[1, 1]);
        assert_eq!(a, rf(&[0, 1], &[1]));
        assert!(a.is_poly());
    }

    #[test]
    fn monic_denominator_over_f3() {
        // 1/(2u) = 2/u over F_3
        let a = RatFun::new(FpPoly::one(3), FpPoly::new(3, vec![0, 2]));
        assert_eq!(a.den, FpPoly::new(3, vec![0, 1]));
        assert_eq!(a.num, FpPoly::constant(3, 2));
    }

    #[test]
    fn derivative_quotient_rule() {
        // (1/u)' = -1/u^2 = 1/u^2 over F_2
        let a = rf(&[1], &[0, 1]);
        assert_eq!(a.derivative(), rf(&[1], &[0, 0, 1]));
        // (u^2)' = 0 over F_2
        assert!(rf(&[0, 0, 1], &[1]).derivative().is_zero());
    }

    #[test]
    fn field_ops() {
        let a = rf(&[1, 1], &[0, 1]); // (u+1)/u
        let b = rf(&[0, 1], &[1, 1]); // u/(u+1)
        assert_eq!(a.mul(&b), RatFun::one(2));
        assert_eq!(a.inv().unwrap(), b);
        assert!(a.sub(&a).is_zero());
    }
}
