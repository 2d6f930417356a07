//! The coefficient ring `Z[a, b, c, c^-1]` and its specializations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Fp;

/// Arbitrary-precision integer with an inline fast path.
#[derive(Clone, Debug)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    fn big(v: BigInt) -> Int {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(Box::new(v)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(s) => BigInt::from(*s),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_minus_one(&self) -> bool {
        matches!(self, Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(s) => *s < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    /// Residue in `[0, p)`.
    pub fn rem_euclid(&self, p: u64) -> u64 {
        match self {
            Int::Small(s) => (*s as i128).rem_euclid(p as i128) as u64,
            Int::Big(b) => {
                let r = (**b).clone() % BigInt::from(p);
                let r = if r.is_negative() {
                    r + BigInt::from(p)
                } else {
                    r
                };
                r.to_u64().unwrap()
            }
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Int {
        Int::big(v)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (self, other) {
            (Int::Small(x), Int::Small(y)) => x == y,
            // the Big variant never holds a value that fits in i64
            (Int::Big(x), Int::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl std::hash::Hash for Int {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(s) => s.hash(state),
            Int::Big(b) => b.hash(state),
        }
    }
}

impl Add<&Int> for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(x), Int::Small(y)) = (self, rhs) {
            if let Some(s) = x.checked_add(*y) {
                return Int::Small(s);
            }
        }
        Int::big(self.to_bigint() + rhs.to_bigint())
    }
}

impl Mul<&Int> for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(x), Int::Small(y)) = (self, rhs) {
            if let Some(s) = x.checked_mul(*y) {
                return Int::Small(s);
            }
        }
        Int::big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(s) => match s.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::big(-BigInt::from(*s)),
            },
            Int::Big(b) => Int::big(-(**b).clone()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(s) => write!(f, "{s}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

const EB_SHIFT: u32 = 21;
const EA_SHIFT: u32 = 42;
const FIELD: u64 = (1 << 21) - 1;
const EC_BIAS: i64 = 1 << 20;

/// Packed exponent triple; the packing preserves the `(ea, eb, ec)` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(EC_BIAS as u64);

    pub fn new(ea: u32, eb: u32, ec: i32) -> Mono {
        assert!(
            (ea as u64) < FIELD && (eb as u64) < FIELD,
            "exponent overflow"
        );
        assert!((ec as i64).abs() < EC_BIAS, "exponent overflow");
        Mono(((ea as u64) << EA_SHIFT) | ((eb as u64) << EB_SHIFT) | ((ec as i64 + EC_BIAS) as u64))
    }

    pub fn ea(self) -> u32 {
        (self.0 >> EA_SHIFT) as u32
    }

    pub fn eb(self) -> u32 {
        ((self.0 >> EB_SHIFT) & FIELD) as u32
    }

    pub fn ec(self) -> i32 {
        ((self.0 & FIELD) as i64 - EC_BIAS) as i32
    }

    #[inline]
    fn times(self, o: Mono) -> Mono {
        Mono(self.0 + o.0 - EC_BIAS as u64)
    }

    /// Weighted degree with `deg a = 1`, `deg b = 2`, `deg c = 3`.
    pub fn weight(self) -> i64 {
        self.ea() as i64 + 2 * self.eb() as i64 + 3 * self.ec() as i64
    }
}

/// An element of `R = Z[a, b, c, c^-1]`, stored as a sorted list of nonzero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentCoeff {
    terms: Vec<(Mono, Int)>,
}

impl LaurentCoeff {
    pub fn zero() -> Self {
        LaurentCoeff { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::term(Mono::ONE, Int::Small(k))
    }

    fn term(m: Mono, k: Int) -> Self {
        if k.is_zero() {
            Self::zero()
        } else {
            LaurentCoeff {
                terms: vec![(m, k)],
            }
        }
    }

    /// `k a^ea b^eb c^ec`; negative `ea` or `eb` is rejected.
    pub fn monomial(ea: i32, eb: i32, ec: i32, k: impl Into<Int>) -> Result<Self> {
        if ea < 0 || eb < 0 {
            return Err(Error::NegativeExponent { ea, eb });
        }
        Ok(Self::term(Mono::new(ea as u32, eb as u32, ec), k.into()))
    }

    pub fn a() -> Self {
        Self::term(Mono::new(1, 0, 0), Int::Small(1))
    }

    pub fn b() -> Self {
        Self::term(Mono::new(0, 1, 0), Int::Small(1))
    }

    pub fn c() -> Self {
        Self::term(Mono::new(0, 0, 1), Int::Small(1))
    }

    pub fn c_inv() -> Self {
        Self::term(Mono::new(0, 0, -1), Int::Small(1))
    }

    pub fn c_pow(k: i32) -> Self {
        Self::term(Mono::new(0, 0, k), Int::Small(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i32, &Int)> {
        self.terms.iter().map(|(m, k)| (m.ea(), m.eb(), m.ec(), k))
    }

    /// Units of `R` are exactly `±c^k`.
    pub fn is_unit(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let (m, k) = &self.terms[0];
        m.ea() == 0 && m.eb() == 0 && (k.is_one() || k.is_minus_one())
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (m, k) = &self.terms[0];
        Some(Self::term(Mono::new(0, 0, -m.ec()), k.clone()))
    }

    /// Whether every term has the same weighted degree.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let w = self.terms.first()?.0.weight();
        self.terms.iter().all(|(m, _)| m.weight() == w).then_some(w)
    }

    fn from_unsorted(mut raw: Vec<(Mono, Int)>) -> Self {
        raw.sort_unstable_by_key(|x| x.0);
        let mut terms: Vec<(Mono, Int)> = Vec::with_capacity(raw.len());
        for (m, k) in raw {
            match terms.last_mut() {
                Some((lm, lk)) if *lm == m => *lk = &*lk + &k,
                _ => terms.push((m, k)),
            }
        }
        terms.retain(|(_, k)| !k.is_zero());
        LaurentCoeff { terms }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let k = Int::Small(k);
        LaurentCoeff {
            terms: self.terms.iter().map(|(m, x)| (*m, x * &k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `a ↦ -b c^-1`, `b ↦ -a c^-1`, `c ↦ c^-1`.
    pub fn phi_coeff(&self) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|(m, k)| {
                let (i, j, l) = (m.ea(), m.eb(), m.ec());
                let k = if (i + j) % 2 == 1 { -k } else { k.clone() };
                (Mono::new(j, i, -(i as i32) - (j as i32) - l), k)
            })
            .collect();
        Self::from_unsorted(raw)
    }

    pub fn eval_mod(&self, f: &Fp, a: u64, b: u64, c: u64) -> u64 {
        let cinv = f.inv(c);
        let mut acc = 0;
        for (m, k) in &self.terms {
            let mut t = k.rem_euclid(f.p());
            t = f.mul(t, f.pow(a, m.ea() as u64));
            t = f.mul(t, f.pow(b, m.eb() as u64));
            let ec = m.ec();
            t = if ec >= 0 {
                f.mul(t, f.pow(c, ec as u64))
            } else {
                f.mul(t, f.pow(cinv, (-ec) as u64))
            };
            acc = f.add(acc, t);
        }
        acc
    }

    pub fn eval(&self, at: &SpecPoint) -> Result<SpecValue> {
        if at.c.is_zero() {
            return Err(Error::ZeroC);
        }
        if at.p == 0 {
            let a = BigRational::from(at.a.to_bigint());
            let b = BigRational::from(at.b.to_bigint());
            let c = BigRational::from(at.c.to_bigint());
            let mut acc = BigRational::zero();
            for (m, k) in &self.terms {
                let mut t = BigRational::from(k.to_bigint());
                t *= num_traits::pow(a.clone(), m.ea() as usize);
                t *= num_traits::pow(b.clone(), m.eb() as usize);
                let ec = m.ec();
                let cp = num_traits::pow(c.clone(), ec.unsigned_abs() as usize);
                if ec >= 0 {
                    t *= cp;
                } else {
                    t /= cp;
                }
                acc += t;
            }
            return Ok(SpecValue::Rational(acc));
        }
        let f = Fp::new(at.p);
        let (a, b, c) = at.residues();
        if c == 0 {
            return Err(Error::ZeroC);
        }
        Ok(SpecValue::Mod(self.eval_mod(&f, a, b, c), at.p))
    }

    /// Leading term under the `(ea, eb, ec)` order, used to orient pivots.
    pub fn max_mono(&self) -> Option<(u32, u32, i32)> {
        self.terms.last().map(|(m, _)| (m.ea(), m.eb(), m.ec()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, k)| {
                serde_json::json!({"ea": m.ea(), "eb": m.eb(), "ec": m.ec(), "k": k.to_string()})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("coefficient: {m}"));
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing terms"))?;
        let mut raw = Vec::with_capacity(terms.len());
        for t in terms {
            let get = |key: &str| t.get(key).and_then(|x| x.as_i64()).ok_or_else(|| bad(key));
            let (ea, eb, ec) = (get("ea")?, get("eb")?, get("ec")?);
            if ea < 0 || eb < 0 {
                return Err(Error::NegativeExponent {
                    ea: ea as i32,
                    eb: eb as i32,
                });
            }
            let k: BigInt = match t.get("k") {
                Some(serde_json::Value::String(s)) => s.parse().map_err(|_| bad("k"))?,
                Some(serde_json::Value::Number(n)) => {
                    BigInt::from(n.as_i64().ok_or_else(|| bad("k"))?)
                }
                _ => return Err(bad("k")),
            };
            raw.push((Mono::new(ea as u32, eb as u32, ec as i32), Int::from(k)));
        }
        Ok(Self::from_unsorted(raw))
    }
}

impl Serialize for LaurentCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LaurentCoeff::from_json(&v).map_err(D::Error::custom)
    }
}

fn merge(x: &[(Mono, Int)], y: &[(Mono, Int)], negate_y: bool) -> Vec<(Mono, Int)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some(a), Some(b)) => a.0.cmp(&b.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(x[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let k = if negate_y { -&y[j].1 } else { y[j].1.clone() };
                out.push((y[j].0, k));
                j += 1;
            }
            Ordering::Equal => {
                let k = if negate_y {
                    &x[i].1 + &(-&y[j].1)
                } else {
                    &x[i].1 + &y[j].1
                };
                if !k.is_zero() {
                    out.push((x[i].0, k));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Add<&LaurentCoeff> for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn add(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        LaurentCoeff {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub<&LaurentCoeff> for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn sub(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        LaurentCoeff {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl AddAssign<&LaurentCoeff> for LaurentCoeff {
    fn add_assign(&mut self, rhs: &LaurentCoeff) {
        if rhs.is_zero() {
            return;
        }
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl Mul<&LaurentCoeff> for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn mul(self, rhs: &LaurentCoeff) -> LaurentCoeff {
        if self.is_zero() || rhs.is_zero() {
            return LaurentCoeff::zero();
        }
        if rhs.terms.len() == 1 {
            let (m, k) = &rhs.terms[0];
            return LaurentCoeff {
                terms: self
                    .terms
                    .iter()
                    .map(|(n, x)| (n.times(*m), x * k))
                    .collect(),
            };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, x) in &self.terms {
            for (n, y) in &rhs.terms {
                raw.push((m.times(*n), x * y));
            }
        }
        LaurentCoeff::from_unsorted(raw)
    }
}

impl Neg for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn neg(self) -> LaurentCoeff {
        LaurentCoeff {
            terms: self.terms.iter().map(|(m, k)| (*m, -k)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentCoeff> for LaurentCoeff {
            type Output = LaurentCoeff;
            fn $f(self, rhs: LaurentCoeff) -> LaurentCoeff {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentCoeff {
    type Output = LaurentCoeff;
    fn neg(self) -> LaurentCoeff {
        -&self
    }
}

impl Zero for LaurentCoeff {
    fn zero() -> Self {
        LaurentCoeff::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentCoeff {
    fn one() -> Self {
        LaurentCoeff::one()
    }
}

impl fmt::Display for LaurentCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, k)) in self.terms.iter().enumerate() {
            let neg = k.is_negative();
            let mag = if neg { -k } else { k.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (sym, e) in [("a", m.ea() as i32), ("b", m.eb() as i32), ("c", m.ec())] {
                match e {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A ring homomorphism `R -> Q` (`p = 0`) or `R -> F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPoint {
    pub p: u64,
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl SpecPoint {
    pub fn new(p: u64, a: i64, b: i64, c: i64) -> Result<Self> {
        let pt = SpecPoint {
            p,
            a: a.into(),
            b: b.into(),
            c: c.into(),
        };
        if pt.c.is_zero() || (p != 0 && pt.c.rem_euclid(p) == 0) {
            return Err(Error::ZeroC);
        }
        Ok(pt)
    }

    /// Parameters reduced into `[0, p)`; only meaningful for `p > 0`.
    pub fn residues(&self) -> (u64, u64, u64) {
        (
            self.a.rem_euclid(self.p),
            self.b.rem_euclid(self.p),
            self.c.rem_euclid(self.p),
        )
    }
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p={}, a={}, b={}, c={})",
            self.p, self.a, self.b, self.c
        )
    }
}

/// Value of a coefficient at a [`SpecPoint`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecValue {
    Mod(u64, u64),
    Rational(BigRational),
}

impl fmt::Display for SpecValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecValue::Mod(v, _) => write!(f, "{v}"),
            SpecValue::Rational(r) => write!(f, "{r}"),
        }
    }
}
