//! Exact rational functions in (q, t): pairs of Laurent polynomials kept
//! without multivariate gcd reduction. Only cheap normalizations are
//! applied (rational content and common monomial factors); final results
//! are recovered by exact polynomial division.

use num::BigRational;
use num::traits::{One, Signed, Zero};

use crate::exactpoly::{LaurentPoly, Mono};
use crate::{Error, Result};

/// num / den with den nonzero.
#[derive(Clone, Debug)]
pub struct QtFrac {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl QtFrac {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = QtFrac { num, den };
        f.normalize();
        f
    }

    pub fn zero() -> Self {
        QtFrac { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        QtFrac { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        QtFrac { num: p, den: LaurentPoly::one() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // Strip common monomial factors from numerator and denominator.
        let strip = |p: &LaurentPoly| -> Mono {
            let mut a2 = i64::MAX;
            let mut q2 = i64::MAX;
            let mut t2 = i64::MAX;
            for (m, _) in p.iter_terms() {
                a2 = a2.min(m.a2);
                q2 = q2.min(m.q2);
                t2 = t2.min(m.t2);
            }
            Mono { a2, q2, t2 }
        };
        let mn = strip(&self.num);
        let md = strip(&self.den);
        let common = Mono {
            a2: mn.a2.min(md.a2),
            q2: mn.q2.min(md.q2),
            t2: mn.t2.min(md.t2),
        };
        if common != Mono::ONE {
            let inv = Mono { a2: -common.a2, q2: -common.q2, t2: -common.t2 };
            self.num = self.num.mul_mono(inv);
            self.den = self.den.mul_mono(inv);
        }
        // Scale so the denominator has content one and positive leading
        // coefficient (leading in the term order).
        let lead = self
            .den
            .iter_terms()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap();
        let scale = lead.recip();
        if !scale.is_one() {
            self.num = self.num.scale(&scale);
            self.den = self.den.scale(&scale);
        }
        // Pull the rational content out of the denominator entirely when it
        // is a constant.
        if self.den.is_one() {
            return;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return QtFrac::new(self.num.add(&other.num), self.den.clone());
        }
        QtFrac::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QtFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Cheap cross cancellation when one side divides the other exactly.
        if let Some(q) = self.num.div_exact(&other.den) {
            let mut out = QtFrac { num: q.mul(&other.num), den: self.den.clone() };
            out.normalize();
            return out;
        }
        if let Some(q) = other.num.div_exact(&self.den) {
            let mut out = QtFrac { num: q.mul(&self.num), den: other.den.clone() };
            out.normalize();
            return out;
        }
        QtFrac::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::arith("division by zero rational function"));
        }
        Ok(self.mul(&QtFrac { num: other.den.clone(), den: other.num.clone() }))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QtFrac { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        QtFrac::new(self.num.mul(p), self.den.clone())
    }

    pub fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Exact conversion to a Laurent polynomial; errors when the division
    /// is not exact.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        self.num
            .div_exact(&self.den)
            .ok_or_else(|| Error::arith("rational function is not a Laurent polynomial"))
    }

    /// Substitutes t -> 1/t in both numerator and denominator.
    pub fn invert_t(&self) -> Self {
        let flip = |p: &LaurentPoly| -> LaurentPoly {
            let mut out = LaurentPoly::zero();
            for (m, c) in p.iter_terms() {
                out = out.add(&LaurentPoly::monomial(
                    Mono { a2: m.a2, q2: m.q2, t2: -m.t2 },
                    c.clone(),
                ));
            }
            out
        };
        QtFrac::new(flip(&self.num), flip(&self.den))
    }
}

/// 1 - q^k (doubled exponent 2k) as a polynomial.
pub fn one_minus_q_pow(k: i64) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::monomial(
        Mono { a2: 0, q2: 2 * k, t2: 0 },
        num::BigRational::one(),
    ))
}

/// 1 - t^k.
pub fn one_minus_t_pow(k: i64) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::monomial(
        Mono { a2: 0, q2: 0, t2: 2 * k },
        num::BigRational::one(),
    ))
}

/// q^i t^j as a polynomial (integer exponents).
pub fn qt_mono(i: i64, j: i64) -> LaurentPoly {
    LaurentPoly::monomial(Mono { a2: 0, q2: 2 * i, t2: 2 * j }, num::BigRational::one())
}

/// Content check helper used by sanity assertions.
pub fn is_nonneg_integer_poly(p: &LaurentPoly) -> bool {
    p.iter_terms().all(|(m, c)| {
        m.a2 >= 0 && m.q2 >= 0 && m.t2 >= 0 && c.is_integer() && !c.is_negative()
    })
}
