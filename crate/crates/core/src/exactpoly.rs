//! Exact Laurent-polynomial and truncated q-series arithmetic in the
//! variables a, q, t over arbitrary-precision rationals.
//!
//! Exponents are stored doubled ([`HalfInt`]) so that the half-integer
//! substitutions used by the grading conversions (q^(1/2), t^(e/2)) stay
//! exact. Coefficients are `BigRational` throughout.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational};
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

// ---------------------------------------------------------------------------
// HalfInt
// ---------------------------------------------------------------------------

/// A half-integer exponent, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Doubled value, i.e. the exponent times two.
    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value; panics when the exponent is a strict half.
    pub fn to_int(self) -> i64 {
        assert!(self.is_integer(), "exponent {self} is not an integer");
        self.0 / 2
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// The three series variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    A,
    Q,
    T,
}

/// Exponent triple of a monomial a^ea q^eq t^et, all doubled.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono {
    pub a2: i64,
    pub q2: i64,
    pub t2: i64,
}

impl Mono {
    pub const ONE: Mono = Mono { a2: 0, q2: 0, t2: 0 };

    pub fn var(v: Var) -> Self {
        match v {
            Var::A => Mono { a2: 2, q2: 0, t2: 0 },
            Var::Q => Mono { a2: 0, q2: 2, t2: 0 },
            Var::T => Mono { a2: 0, q2: 0, t2: 2 },
        }
    }

    fn mul(self, other: Mono) -> Mono {
        Mono {
            a2: self.a2 + other.a2,
            q2: self.q2 + other.q2,
            t2: self.t2 + other.t2,
        }
    }

    /// Raises a monomial to a half-integer power; errors when the result
    /// would need exponents finer than half-integers.
    fn pow_half(self, e: HalfInt) -> Result<Mono> {
        let scale = |x: i64| -> Result<i64> {
            let p = x.checked_mul(e.0).ok_or_else(|| Error::arith("exponent overflow"))?;
            if p % 2 != 0 {
                return Err(Error::arith(
                    "substitution would require exponents finer than half-integers",
                ));
            }
            Ok(p / 2)
        };
        Ok(Mono { a2: scale(self.a2)?, q2: scale(self.q2)?, t2: scale(self.t2)? })
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// LaurentPoly
// ---------------------------------------------------------------------------

/// Exact multivariate Laurent polynomial in a, q, t with half-integer
/// exponents and `BigRational` coefficients. Zero coefficients are never
/// stored; the term map is ordered lexicographically on (ea, eq, et).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Mono::ONE, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Mono::var(v), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// Convenience constructor: coefficient `c` times a^ea q^eq t^et with
    /// integer exponents.
    pub fn term(c: i64, ea: i64, eq: i64, et: i64) -> Self {
        Self::monomial(Mono { a2: 2 * ea, q2: 2 * eq, t2: 2 * et }, rat(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Mono::ONE).map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mono) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn insert_add(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, c0) in &self.terms {
            out.terms.insert(*m, c0 * c);
        }
        out
    }

    pub fn mul_mono(&self, m: Mono) -> Self {
        let mut out = Self::zero();
        for (m0, c0) in &self.terms {
            out.terms.insert(m0.mul(m), c0.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Minimum and maximum doubled q-exponent over the support.
    pub fn q2_range(&self) -> Option<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for m in self.terms.keys() {
            lo = lo.min(m.q2);
            hi = hi.max(m.q2);
        }
        if self.terms.is_empty() { None } else { Some((lo, hi)) }
    }

    pub fn min_exp(&self, v: Var) -> Option<HalfInt> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::A => m.a2,
                Var::Q => m.q2,
                Var::T => m.t2,
            })
            .min()
            .map(HalfInt)
    }

    pub fn max_exp(&self, v: Var) -> Option<HalfInt> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::A => m.a2,
                Var::Q => m.q2,
                Var::T => m.t2,
            })
            .max()
            .map(HalfInt)
    }

    /// Splits into q-homogeneous layers: maps doubled q-exponent to the
    /// (a,t)-polynomial coefficient.
    pub fn q_layers(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.q2;
            let stripped = Mono { a2: m.a2, q2: 0, t2: m.t2 };
            out.entry(key).or_insert_with(LaurentPoly::zero).insert_add(stripped, c.clone());
        }
        out
    }

    /// Extracts the coefficient of a^k (integer k) as a polynomial in the
    /// remaining variables.
    pub fn a_coeff(&self, k: i64) -> LaurentPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.a2 == 2 * k {
                out.insert_add(Mono { a2: 0, q2: m.q2, t2: m.t2 }, c.clone());
            }
        }
        out
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Evaluates at integer points (for test oracles), a -> va etc.
    pub fn eval_rational(&self, va: &BigRational, vq: &BigRational, vt: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let f = |b: &BigRational, e2: i64| -> Option<BigRational> {
                if e2 % 2 != 0 {
                    return None;
                }
                let e = e2 / 2;
                if e >= 0 {
                    Some(num::pow::pow(b.clone(), e as usize))
                } else {
                    if b.is_zero() {
                        return None;
                    }
                    Some(num::pow::pow(b.clone(), (-e) as usize).recip())
                }
            };
            acc += c * f(va, m.a2)? * f(vq, m.q2)? * f(vt, m.t2)?;
        }
        Some(acc)
    }

    /// Substitutes each variable by a rational multiple of a monomial.
    /// Composition of substitutions equals substitution of composed maps.
    pub fn substitute(&self, map: &MonomialMap) -> Result<LaurentPoly> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (ca, ma) = map.image(Var::A);
            let (cq, mq) = map.image(Var::Q);
            let (ct, mt) = map.image(Var::T);
            let mono = ma
                .pow_half(HalfInt(m.a2))?
                .mul(mq.pow_half(HalfInt(m.q2))?)
                .mul(mt.pow_half(HalfInt(m.t2))?);
            let coeff = c
                * coeff_pow(ca, HalfInt(m.a2))?
                * coeff_pow(cq, HalfInt(m.q2))?
                * coeff_pow(ct, HalfInt(m.t2))?;
            out.insert_add(mono, coeff);
        }
        Ok(out)
    }

    /// Exact division; returns None when `self` is not divisible by `d`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Recursive univariate long division, outermost variable first.
        div_exact_rec(self, d, 0)
    }

    /// Divides by (1 + a); errors when not exactly divisible.
    pub fn div_one_plus_a(&self) -> Result<LaurentPoly> {
        let d = LaurentPoly::one().add(&LaurentPoly::var(Var::A));
        self.div_exact(&d)
            .ok_or_else(|| Error::arith("polynomial is not divisible by (1+a)"))
    }

    /// JSON term list in the documented `{a2,q2,t2,c}` schema.
    pub fn to_json(&self) -> serde_json::Value {
        let mut sorted: Vec<(&Mono, &BigRational)> = self.terms.iter().collect();
        sorted.sort_by_key(|(m, _)| (m.q2, m.a2, m.t2));
        serde_json::Value::Array(
            sorted
                .into_iter()
                .map(|(m, c)| {
                    serde_json::json!({
                        "a2": m.a2,
                        "q2": m.q2,
                        "t2": m.t2,
                        "c": c.to_string(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LaurentPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::parse("expected a JSON array of terms"))?;
        let mut out = Self::zero();
        for item in arr {
            let get = |k: &str| -> Result<i64> {
                item.get(k)
                    .and_then(|x| x.as_i64())
                    .ok_or_else(|| Error::parse(format!("missing integer field '{k}'")))
            };
            let c_str = item
                .get("c")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::parse("missing string field 'c'"))?;
            let c: BigRational = c_str
                .parse()
                .map_err(|_| Error::parse(format!("bad rational '{c_str}'")))?;
            out.insert_add(Mono { a2: get("a2")?, q2: get("q2")?, t2: get("t2")? }, c);
        }
        Ok(out)
    }
}

fn coeff_pow(base: &BigRational, e: HalfInt) -> Result<BigRational> {
    if base.is_one() {
        return Ok(BigRational::one());
    }
    if !e.is_integer() {
        return Err(Error::arith(
            "substitution raises a non-unit coefficient to a fractional power",
        ));
    }
    let n = e.to_int();
    if n >= 0 {
        Ok(num::pow::pow(base.clone(), n as usize))
    } else if base.is_zero() {
        Err(Error::arith("zero coefficient raised to a negative power"))
    } else {
        Ok(num::pow::pow(base.clone(), (-n) as usize).recip())
    }
}

// Division helper: variables indexed 0 = a, 1 = q, 2 = t.
fn get_exp(m: &Mono, idx: usize) -> i64 {
    match idx {
        0 => m.a2,
        1 => m.q2,
        _ => m.t2,
    }
}

fn div_exact_rec(f: &LaurentPoly, g: &LaurentPoly, var_idx: usize) -> Option<LaurentPoly> {
    if var_idx == 3 {
        // Both must be constants here.
        if g.terms.len() != 1 {
            return None;
        }
        let (gm, gc) = g.terms.iter().next().unwrap();
        debug_assert_eq!(*gm, Mono::ONE);
        let mut out = LaurentPoly::zero();
        for (m, c) in &f.terms {
            out.terms.insert(*m, c / gc);
        }
        return Some(out);
    }
    // View f and g as univariate in the current variable with Laurent
    // coefficients in the later variables.
    let split = |p: &LaurentPoly| -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &p.terms {
            let e = get_exp(m, var_idx);
            let mut stripped = *m;
            match var_idx {
                0 => stripped.a2 = 0,
                1 => stripped.q2 = 0,
                _ => stripped.t2 = 0,
            }
            out.entry(e).or_insert_with(LaurentPoly::zero).insert_add(stripped, c.clone());
        }
        out
    };
    let mut fs = split(f);
    let gs = split(g);
    let (&gtop, gl) = gs.iter().next_back()?;
    let gmin = *gs.keys().next().unwrap();
    // If g divides f, the quotient's exponents in this variable lie in
    // [min(f) - min(g), max(f) - max(g)]; anything below is non-divisible.
    let qmin_bound = fs.keys().next().map(|&m| m - gmin);
    let mut quot = LaurentPoly::zero();
    while let Some((&ftop, _)) = fs.iter().next_back() {
        let fl = fs.remove(&ftop).unwrap();
        if fl.is_zero() {
            continue;
        }
        let qe = ftop - gtop;
        if let Some(bound) = qmin_bound {
            if qe < bound {
                return None;
            }
        }
        let ql = div_exact_rec(&fl, gl, var_idx + 1)?;
        // quot += x^qe * ql ; fs -= x^qe * ql * g
        let shift = |e: i64| -> Mono {
            match var_idx {
                0 => Mono { a2: e, q2: 0, t2: 0 },
                1 => Mono { a2: 0, q2: e, t2: 0 },
                _ => Mono { a2: 0, q2: 0, t2: e },
            }
        };
        quot = quot.add(&ql.mul_mono(shift(qe)));
        for (&ge, gcoef) in &gs {
            if ge == gtop {
                continue;
            }
            let prod = ql.mul(gcoef).neg();
            let slot = fs.entry(qe + ge).or_insert_with(LaurentPoly::zero);
            *slot = slot.add(&prod);
            if slot.is_zero() {
                fs.remove(&(qe + ge));
            }
        }
        // Terms with exponent above qe + gtop = ftop were consumed exactly.
    }
    Some(quot)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Canonical order: (eq, ea, et).
        let mut sorted: Vec<(&Mono, &BigRational)> = self.terms.iter().collect();
        sorted.sort_by_key(|(m, _)| (m.q2, m.a2, m.t2));
        let mut first = true;
        for (m, c) in sorted {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            for (name, e2) in [("a", m.a2), ("q", m.q2), ("t", m.t2)] {
                if e2 == 0 {
                    continue;
                }
                if e2 == 2 {
                    pieces.push(name.to_string());
                } else if e2 % 2 == 0 {
                    pieces.push(format!("{name}^{}", e2 / 2));
                } else {
                    pieces.push(format!("{name}^({e2}/2)"));
                }
            }
            if pieces.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", pieces.join("*"))?;
            } else {
                write!(f, "{mag}*{}", pieces.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Per-variable monomial images for [`LaurentPoly::substitute`].
#[derive(Clone, Debug)]
pub struct MonomialMap {
    a: (BigRational, Mono),
    q: (BigRational, Mono),
    t: (BigRational, Mono),
}

impl MonomialMap {
    pub fn identity() -> Self {
        MonomialMap {
            a: (BigRational::one(), Mono::var(Var::A)),
            q: (BigRational::one(), Mono::var(Var::Q)),
            t: (BigRational::one(), Mono::var(Var::T)),
        }
    }

    /// Sends `v` to `c` times the monomial with doubled exponents
    /// (a2, q2, t2).
    pub fn set(mut self, v: Var, c: BigRational, a2: i64, q2: i64, t2: i64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::arith("substitution image must be nonzero"));
        }
        let img = (c, Mono { a2, q2, t2 });
        match v {
            Var::A => self.a = img,
            Var::Q => self.q = img,
            Var::T => self.t = img,
        }
        Ok(self)
    }

    /// Monomial image with unit coefficient and integer exponents.
    pub fn set_mono(self, v: Var, ea: i64, eq: i64, et: i64) -> Self {
        self.set(v, BigRational::one(), 2 * ea, 2 * eq, 2 * et)
            .expect("unit coefficient is nonzero")
    }

    fn image(&self, v: Var) -> (&BigRational, Mono) {
        match v {
            Var::A => (&self.a.0, self.a.1),
            Var::Q => (&self.q.0, self.q.1),
            Var::T => (&self.t.0, self.t.1),
        }
    }
}

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

/// A power series in q, truncated at a recorded order, whose coefficients
/// are Laurent polynomials in (a, t). The lower q-bound may be negative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    /// Doubled q-exponent -> coefficient (a,t)-polynomial.
    coeffs: BTreeMap<i64, LaurentPoly>,
    /// All q-exponents strictly above this doubled bound are unknown.
    trunc2: i64,
}

impl QSeries {
    pub fn zero(trunc2: i64) -> Self {
        QSeries { coeffs: BTreeMap::new(), trunc2 }
    }

    pub fn one(trunc2: i64) -> Self {
        let mut s = Self::zero(trunc2);
        s.set_coeff(0, LaurentPoly::one());
        s
    }

    /// Builds a series from an exact polynomial: all terms with q-exponent
    /// at most the truncation are kept, and the polynomial must not have
    /// hidden terms above it.
    pub fn from_poly(p: &LaurentPoly, trunc2: i64) -> Result<Self> {
        let mut s = Self::zero(trunc2);
        for (q2, layer) in p.q_layers() {
            if q2 > trunc2 {
                return Err(Error::arith(format!(
                    "polynomial has q-exponent {} above truncation {}",
                    HalfInt(q2),
                    HalfInt(trunc2)
                )));
            }
            s.set_coeff(q2, layer);
        }
        Ok(s)
    }

    pub fn trunc2(&self) -> i64 {
        self.trunc2
    }

    pub fn coeff(&self, q2: i64) -> LaurentPoly {
        self.coeffs.get(&q2).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn set_coeff(&mut self, q2: i64, p: LaurentPoly) {
        assert!(q2 <= self.trunc2, "coefficient above truncation");
        assert!(
            p.iter_terms().all(|(m, _)| m.q2 == 0),
            "series coefficients must be q-free"
        );
        if p.is_zero() {
            self.coeffs.remove(&q2);
        } else {
            self.coeffs.insert(q2, p);
        }
    }

    pub fn add_to_coeff(&mut self, q2: i64, p: &LaurentPoly) {
        let cur = self.coeff(q2);
        self.set_coeff(q2, cur.add(p));
    }

    pub fn iter_coeffs(&self) -> impl Iterator<Item = (&i64, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn low_or_zero(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0).min(0)
    }

    pub fn min_q2(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc2 = self.trunc2.min(other.trunc2);
        let mut out = Self::zero(trunc2);
        for (q2, p) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if *q2 <= trunc2 {
                out.add_to_coeff(*q2, p);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.trunc2);
        for (q2, p) in &self.coeffs {
            out.set_coeff(*q2, p.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc2 = (self.trunc2 + other.low_or_zero())
            .min(other.trunc2 + self.low_or_zero());
        let mut out = Self::zero(trunc2);
        for (q1, p1) in &self.coeffs {
            for (q2, p2) in &other.coeffs {
                let q = q1 + q2;
                if q <= trunc2 {
                    out.add_to_coeff(q, &p1.mul(p2));
                }
            }
        }
        out
    }

    /// Multiplies by an exact polynomial in (a, q, t).
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let layers = p.q_layers();
        let low = layers.keys().next().copied().unwrap_or(0).min(0);
        let trunc2 = self.trunc2 + low;
        let mut out = Self::zero(trunc2);
        for (dq, layer) in &layers {
            for (q0, c0) in &self.coeffs {
                let q = q0 + dq;
                if q <= trunc2 {
                    out.add_to_coeff(q, &c0.mul(layer));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.trunc2);
        for (q2, p) in &self.coeffs {
            out.set_coeff(*q2, p.scale(c));
        }
        out
    }

    /// Shifts every q-exponent by the doubled amount `dq2`.
    pub fn shift_q2(&self, dq2: i64) -> Self {
        let mut out = Self::zero(self.trunc2 + dq2);
        for (q2, p) in &self.coeffs {
            out.set_coeff(q2 + dq2, p.clone());
        }
        out
    }

    /// Formal division by (1-q)^b via geometric expansion; the truncation
    /// is preserved.
    pub fn div_one_minus_q_pow(&self, b: u32) -> Self {
        let mut cur = self.clone();
        for _ in 0..b {
            let mut out = Self::zero(cur.trunc2);
            // Cumulative sums stay within each residue class of q2 mod 2.
            for residue in [0i64, 1] {
                let keys: Vec<i64> = cur
                    .coeffs
                    .keys()
                    .copied()
                    .filter(|k| k.rem_euclid(2) == residue)
                    .collect();
                let Some(&start) = keys.first() else { continue };
                let mut running = LaurentPoly::zero();
                let mut q2 = start;
                while q2 <= cur.trunc2 {
                    running = running.add(&cur.coeff(q2));
                    if !running.is_zero() {
                        out.set_coeff(q2, running.clone());
                    }
                    q2 += 2;
                }
            }
            cur = out;
        }
        cur
    }

    /// True iff all coefficients agree for q-exponents at most `order2`;
    /// errors when `order2` exceeds either truncation.
    pub fn equal_upto(&self, other: &Self, order2: i64) -> Result<bool> {
        if order2 > self.trunc2 || order2 > other.trunc2 {
            return Err(Error::arith(format!(
                "comparison order {} exceeds a truncation ({} / {})",
                HalfInt(order2),
                HalfInt(self.trunc2),
                HalfInt(other.trunc2)
            )));
        }
        Ok(self.first_discrepancy(other, order2).is_none())
    }

    /// First q-order (doubled) at which the two series differ, up to
    /// `order2`, together with the difference at that order.
    pub fn first_discrepancy(&self, other: &Self, order2: i64) -> Option<(i64, LaurentPoly)> {
        let mut keys: Vec<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|k| *k <= order2)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for q2 in keys {
            let diff = self.coeff(q2).sub(&other.coeff(q2));
            if !diff.is_zero() {
                return Some((q2, diff));
            }
        }
        None
    }

    /// Applies a monomial substitution to the full three-variable series.
    /// Terms landing above the resulting truncation are dropped; the new
    /// truncation is chosen so every kept order is complete.
    ///
    /// Requirement: the image of q must have positive q-exponent, and the
    /// images of a and t must have nonnegative q-exponents.
    pub fn substitute(&self, map: &MonomialMap, extra_known_scale: i64) -> Result<QSeries> {
        let (_, mq) = map.image(Var::Q);
        if mq.q2 <= 0 {
            return Err(Error::arith("series substitution needs q -> positive q-power"));
        }
        // Orders complete through (trunc2 + step) - 1 in doubled units: the
        // first unknown input order maps to q-exponent >= (trunc2+2)/2 * mq.
        let step = mq.q2;
        let new_trunc2 = (self.trunc2 + 2) / 2 * step - 1 + extra_known_scale;
        let mut out = Self::zero(new_trunc2);
        for (q2, p) in &self.coeffs {
            let full = p.mul_mono(Mono { a2: 0, q2: *q2, t2: 0 });
            let image = full.substitute(map)?;
            for (lq2, layer) in image.q_layers() {
                if lq2 <= new_trunc2 {
                    out.add_to_coeff(lq2, &layer);
                }
            }
        }
        Ok(out)
    }

    /// Nonnegative-integrality of every coefficient.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs.values().all(|p| p.is_nonneg_integral())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = Vec::new();
        for (q2, p) in &self.coeffs {
            for (m, c) in p.iter_terms() {
                terms.push(serde_json::json!({
                    "a2": m.a2,
                    "q2": *q2,
                    "t2": m.t2,
                    "c": c.to_string(),
                }));
            }
        }
        serde_json::json!({ "trunc2": self.trunc2, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QSeries> {
        let trunc2 = v
            .get("trunc2")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| Error::parse("missing 'trunc2'"))?;
        let terms = v
            .get("terms")
            .ok_or_else(|| Error::parse("missing 'terms'"))?;
        let poly = LaurentPoly::from_json(terms)?;
        let mut out = Self::zero(trunc2);
        for (q2, layer) in poly.q_layers() {
            if q2 > trunc2 {
                return Err(Error::parse("term above truncation"));
            }
            out.set_coeff(q2, layer);
        }
        Ok(out)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut all = LaurentPoly::zero();
        for (q2, p) in &self.coeffs {
            all = all.add(&p.mul_mono(Mono { a2: 0, q2: *q2, t2: 0 }));
        }
        if all.is_zero() {
            write!(f, "0")?;
        } else {
            write!(f, "{all}")?;
        }
        let next = self.trunc2 + 1;
        if next % 2 == 0 {
            write!(f, " + O(q^{})", next / 2)
        } else {
            write!(f, " + O(q^({next}/2))")
        }
    }
}

/// Truncated q-expansion of 1/(1-q)^b times an exact polynomial.
pub fn geometric_series(numerator: &LaurentPoly, b: u32, trunc2: i64) -> Result<QSeries> {
    Ok(QSeries::from_poly(numerator, trunc2)?.div_one_minus_q_pow(b))
}

pub fn half(n: i64) -> HalfInt {
    HalfInt(n)
}

/// Parses "p" or "p/q" into a rational (used by the CLI and JSON readers).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.parse::<BigRational>()
        .map_err(|_| Error::parse(format!("bad rational '{s}'")))
}

/// Converts a small integer for convenience in tests and builders.
pub fn big(n: i64) -> BigRational {
    rat(n)
}

pub fn usize_of(h: HalfInt) -> Option<usize> {
    h.0.to_usize()
}
