//! The value quantale `V`.
//!
//! Two exact presentations share one interface:
//!
//! - [`QuantaleMode::UnitRational`]: rationals in `[0,1]` with the numeric
//!   order and multiplication as tensor. Top is `1`, bottom is `0`.
//! - [`QuantaleMode::Lukasiewicz`]: the finite chain `{0,..,n}` read as
//!   distances. The order is reversed numeric order, so `0` is top (full
//!   convergence) and `n` is bottom; the tensor is capped addition.
//!
//! All comparisons below (`<=`, [`QuantaleValue::join`], ...) use the order of
//! the quantale, never the numeric order of the representation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuantaleMode {
    UnitRational,
    /// Chain `{0,..,n}` of distances, `n >= 1`.
    Lukasiewicz(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuantaleValue {
    Unit(BigRational),
    Chain { dist: u32, n: u32 },
}

impl QuantaleMode {
    pub fn lukasiewicz(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("lukasiewicz chain needs n >= 1".into()));
        }
        Ok(QuantaleMode::Lukasiewicz(n))
    }

    pub fn top(self) -> QuantaleValue {
        match self {
            QuantaleMode::UnitRational => QuantaleValue::Unit(BigRational::one()),
            QuantaleMode::Lukasiewicz(n) => QuantaleValue::Chain { dist: 0, n },
        }
    }

    pub fn bottom(self) -> QuantaleValue {
        match self {
            QuantaleMode::UnitRational => QuantaleValue::Unit(BigRational::zero()),
            QuantaleMode::Lukasiewicz(n) => QuantaleValue::Chain { dist: n, n },
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, QuantaleMode::Lukasiewicz(_))
    }

    /// Number of elements of a finite chain.
    pub fn size(self) -> Option<usize> {
        match self {
            QuantaleMode::UnitRational => None,
            QuantaleMode::Lukasiewicz(n) => Some(n as usize + 1),
        }
    }

    /// All elements in increasing quantale order (bottom first), finite modes only.
    pub fn elements(self) -> Option<Vec<QuantaleValue>> {
        match self {
            QuantaleMode::UnitRational => None,
            QuantaleMode::Lukasiewicz(n) => {
                Some((0..=n).rev().map(|dist| QuantaleValue::Chain { dist, n }).collect())
            }
        }
    }

    /// Chain element at a given distance.
    pub fn chain(self, dist: u32) -> Result<QuantaleValue> {
        match self {
            QuantaleMode::Lukasiewicz(n) if dist <= n => Ok(QuantaleValue::Chain { dist, n }),
            QuantaleMode::Lukasiewicz(_) => Err(Error::ValueOutOfRange {
                value: dist.to_string(),
                mode: self.to_string(),
            }),
            QuantaleMode::UnitRational => {
                Err(Error::Unsupported("chain values need lukasiewicz mode".into()))
            }
        }
    }

    /// Rational value `num/den` in unit-rational mode.
    pub fn ratio(self, num: i64, den: i64) -> Result<QuantaleValue> {
        if self != QuantaleMode::UnitRational {
            return Err(Error::Unsupported("rational values need unit-rational mode".into()));
        }
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        QuantaleValue::unit(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Join of a family, bottom for the empty family.
    pub fn join<'a, I>(self, values: I) -> QuantaleValue
    where
        I: IntoIterator<Item = &'a QuantaleValue>,
    {
        values
            .into_iter()
            .fold(self.bottom(), |acc, v| if acc < *v { v.clone() } else { acc })
    }

    /// Meet of a family, top for the empty family.
    pub fn meet<'a, I>(self, values: I) -> QuantaleValue
    where
        I: IntoIterator<Item = &'a QuantaleValue>,
    {
        values
            .into_iter()
            .fold(self.top(), |acc, v| if *v < acc { v.clone() } else { acc })
    }

    /// Parse a value literal: `p/q` or an integer in unit-rational mode, a
    /// distance or `inf` in lukasiewicz mode.
    pub fn parse_value(self, text: &str) -> Result<QuantaleValue> {
        let text = text.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse value `{text}` in mode {self}"));
        match self {
            QuantaleMode::UnitRational => {
                let r = match text.split_once('/') {
                    Some((p, q)) => {
                        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                        if q.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(p, q)
                    }
                    None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
                };
                QuantaleValue::unit(r)
            }
            QuantaleMode::Lukasiewicz(n) => {
                if text == "inf" {
                    return Ok(self.bottom());
                }
                let d: u64 = text.parse().map_err(|_| bad())?;
                if d > n as u64 {
                    return Err(Error::ValueOutOfRange { value: text.into(), mode: self.to_string() });
                }
                Ok(QuantaleValue::Chain { dist: d as u32, n })
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            ["unit-rational"] => Ok(QuantaleMode::UnitRational),
            ["lukasiewicz", n] => {
                let n: u32 = n
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad chain size `{n}`")))?;
                QuantaleMode::lukasiewicz(n)
            }
            _ => Err(Error::InvalidArgument(format!("unknown mode `{text}`"))),
        }
    }

    pub(crate) fn check(self, other: QuantaleMode) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModeMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for QuantaleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantaleMode::UnitRational => f.write_str("unit-rational"),
            QuantaleMode::Lukasiewicz(n) => write!(f, "lukasiewicz {n}"),
        }
    }
}

impl QuantaleValue {
    pub fn unit(r: BigRational) -> Result<Self> {
        if r < BigRational::zero() || r > BigRational::one() {
            return Err(Error::ValueOutOfRange {
                value: r.to_string(),
                mode: QuantaleMode::UnitRational.to_string(),
            });
        }
        Ok(QuantaleValue::Unit(r))
    }

    pub fn mode(&self) -> QuantaleMode {
        match self {
            QuantaleValue::Unit(_) => QuantaleMode::UnitRational,
            QuantaleValue::Chain { n, .. } => QuantaleMode::Lukasiewicz(*n),
        }
    }

    pub fn is_top(&self) -> bool {
        match self {
            QuantaleValue::Unit(r) => r.is_one(),
            QuantaleValue::Chain { dist, .. } => *dist == 0,
        }
    }

    pub fn is_bottom(&self) -> bool {
        match self {
            QuantaleValue::Unit(r) => r.is_zero(),
            QuantaleValue::Chain { dist, n } => dist == n,
        }
    }

    /// Distance of a chain element; `None` in unit-rational mode.
    pub fn dist(&self) -> Option<u32> {
        match self {
            QuantaleValue::Chain { dist, .. } => Some(*dist),
            QuantaleValue::Unit(_) => None,
        }
    }

    /// `u ⊗ v`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.mode().check(other.mode())?;
        Ok(self.tensor_unchecked(other))
    }

    /// `self ⊘ v`: the largest `x` with `v ⊗ x <= self`.
    pub fn residuate(&self, v: &Self) -> Result<Self> {
        self.mode().check(v.mode())?;
        Ok(self.residuate_unchecked(v))
    }

    fn tensor_unchecked(&self, other: &Self) -> Self {
        match (self, other) {
            (QuantaleValue::Unit(a), QuantaleValue::Unit(b)) => QuantaleValue::Unit(a * b),
            (QuantaleValue::Chain { dist: a, n }, QuantaleValue::Chain { dist: b, n: m }) if n == m => {
                QuantaleValue::Chain { dist: (a + b).min(*n), n: *n }
            }
            _ => panic!("tensor of values in different modes: {self:?} and {other:?}"),
        }
    }

    fn residuate_unchecked(&self, v: &Self) -> Self {
        match (self, v) {
            (QuantaleValue::Unit(y), QuantaleValue::Unit(v)) => {
                if v.is_zero() || y >= v {
                    QuantaleValue::Unit(BigRational::one())
                } else {
                    QuantaleValue::Unit(y / v)
                }
            }
            (QuantaleValue::Chain { dist: y, n }, QuantaleValue::Chain { dist: v, n: m }) if n == m => {
                QuantaleValue::Chain { dist: y.saturating_sub(*v), n: *n }
            }
            _ => panic!("residuation of values in different modes: {self:?} and {v:?}"),
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        if *self < *other {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        if *other < *self {
            other.clone()
        } else {
            self.clone()
        }
    }
}

/// `&a * &b` is the tensor `a ⊗ b`. Panics when the modes differ; use
/// [`QuantaleValue::tensor`] for the checked form.
impl Mul for &QuantaleValue {
    type Output = QuantaleValue;

    fn mul(self, rhs: &QuantaleValue) -> QuantaleValue {
        self.tensor_unchecked(rhs)
    }
}

/// `&y / &v` is the residuation `y ⊘ v`. Panics when the modes differ; use
/// [`QuantaleValue::residuate`] for the checked form.
impl Div for &QuantaleValue {
    type Output = QuantaleValue;

    fn div(self, rhs: &QuantaleValue) -> QuantaleValue {
        self.residuate_unchecked(rhs)
    }
}

impl PartialOrd for QuantaleValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (QuantaleValue::Unit(a), QuantaleValue::Unit(b)) => a.partial_cmp(b),
            (QuantaleValue::Chain { dist: a, n }, QuantaleValue::Chain { dist: b, n: m }) if n == m => {
                Some(b.cmp(a))
            }
            _ => None,
        }
    }
}

impl fmt::Display for QuantaleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantaleValue::Unit(r) => write!(f, "{r}"),
            QuantaleValue::Chain { dist, .. } => write!(f, "{dist}"),
        }
    }
}

/// Sort values in increasing quantale order and drop duplicates.
pub fn sorted_distinct(mut values: Vec<QuantaleValue>) -> Vec<QuantaleValue> {
    values.sort_by(|a, b| a.partial_cmp(b).expect("values share a mode"));
    values.dedup();
    values
}
