//! Exact rational arithmetic on dyadic inputs, used as the last rung of the
//! series precision ladder.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// m * 2^e with integer m.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub(crate) fn from_f64(v: f64) -> Self {
        debug_assert!(v.is_finite());
        if v == 0.0 {
            return Self {
                mant: BigInt::zero(),
                exp: 0,
            };
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { Sign::Minus } else { Sign::Plus };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let tz = m.trailing_zeros() as i64;
        Self {
            mant: BigInt::from_biguint(sign, BigUint::from(m >> tz)),
            exp: e + tz,
        }
    }

    fn integer(k: i64) -> Self {
        Self {
            mant: BigInt::from(k),
            exp: 0,
        }
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        Self { mant: a + b, exp: e }
    }

    pub(crate) fn add_int(&self, k: i64) -> Self {
        self.add(&Self::integer(k))
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        Self {
            mant: &self.mant * &o.mant,
            exp: self.exp + o.exp,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
}

/// Exact rational num/den.
#[derive(Debug, Clone)]
pub(crate) struct Rational {
    pub num: BigInt,
    pub den: BigInt,
}

impl Rational {
    /// num/den from two dyadics; den must be nonzero.
    pub(crate) fn from_dyadic_ratio(num: &Dyadic, den: &Dyadic) -> Self {
        let mut n = num.mant.clone();
        let mut d = den.mant.clone();
        let e = num.exp - den.exp;
        if e >= 0 {
            n <<= e as usize;
        } else {
            d <<= (-e) as usize;
        }
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Self { num: n, den: d }
    }

    #[cfg(test)]
    pub(crate) fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }
}

/// Σ_{k=k0}^{K} t_k / t_{k0} for t_{k+1} = r_k t_k, evaluated exactly by
/// backward Horner: V = 1 + r_k V.
pub(crate) fn horner_ratio_sum(ratios: &[Rational]) -> f64 {
    let mut n = BigInt::one();
    let mut d = BigInt::one();
    for r in ratios.iter().rev() {
        let nd = &d * &r.den;
        n = nd.clone() + &r.num * &n;
        d = nd;
        let tz = match (n.trailing_zeros(), d.trailing_zeros()) {
            (Some(a), Some(b)) => a.min(b),
            (None, Some(b)) => b,
            _ => 0,
        };
        if tz > 0 {
            n >>= tz as usize;
            d >>= tz as usize;
        }
    }
    ratio_to_f64(&n, &d)
}

/// Correctly rounded (to within one extra rounding) conversion of n/d.
pub(crate) fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let negative = (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus);
    let n = n.magnitude();
    let d = d.magnitude();
    let shift = 66 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let q = q.to_u128().expect("quotient fits in 128 bits") as f64;
    let v = ldexp(q, -shift);
    if negative {
        -v
    } else {
        v
    }
}

pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_roundtrip() {
        for &v in &[1.0, -0.375, 3.0e-310, 1.0e300, 0.1] {
            let d = Dyadic::from_f64(v);
            let r = Rational::from_dyadic_ratio(&d, &Dyadic::from_f64(1.0));
            assert_eq!(r.to_f64(), v);
        }
    }

    #[test]
    fn horner_geometric() {
        // 1 + 1/2 + 1/4 + 1/8
        let half = Rational::from_dyadic_ratio(&Dyadic::from_f64(1.0), &Dyadic::from_f64(2.0));
        let v = horner_ratio_sum(&[half.clone(), half.clone(), half]);
        assert_eq!(v, 1.875);
    }

    #[test]
    fn thirds() {
        let r = ratio_to_f64(&BigInt::from(1), &BigInt::from(3));
        assert_eq!(r, 1.0 / 3.0);
        let r = ratio_to_f64(&BigInt::from(-2), &BigInt::from(3));
        assert_eq!(r, -2.0 / 3.0);
    }
}
