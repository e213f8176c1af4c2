//! `V`-valued functions on a finite carrier and point maps between carriers.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{Carrier, Subset};
use crate::quantale::{sorted_distinct, QuantaleMode, QuantaleValue};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VFunction {
    carrier: Carrier,
    mode: QuantaleMode,
    values: Vec<QuantaleValue>,
}

impl VFunction {
    pub fn new(carrier: &Carrier, mode: QuantaleMode, values: Vec<QuantaleValue>) -> Result<Self> {
        if values.len() != carrier.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} points",
                values.len(),
                carrier.len()
            )));
        }
        for v in &values {
            mode.check(v.mode())?;
        }
        Ok(VFunction { carrier: carrier.clone(), mode, values })
    }

    /// Lukasiewicz-mode function from raw distances.
    pub fn from_dists(carrier: &Carrier, mode: QuantaleMode, dists: &[u32]) -> Result<Self> {
        let values = dists.iter().map(|d| mode.chain(*d)).collect::<Result<_>>()?;
        VFunction::new(carrier, mode, values)
    }

    pub fn constant(carrier: &Carrier, mode: QuantaleMode, v: QuantaleValue) -> Self {
        VFunction { carrier: carrier.clone(), mode, values: vec![v; carrier.len()] }
    }

    /// Indicator `θ_A`: top on `A`, bottom elsewhere.
    pub fn theta(carrier: &Carrier, mode: QuantaleMode, a: Subset) -> Self {
        VFunction::theta_eps(carrier, mode, a, &mode.bottom())
    }

    /// `θ_A^ε`: top on `A`, `ε` elsewhere. Any `ε` is accepted here; the
    /// space-level wrapper rejects `ε = top`.
    pub fn theta_eps(carrier: &Carrier, mode: QuantaleMode, a: Subset, eps: &QuantaleValue) -> Self {
        let values = (0..carrier.len())
            .map(|x| if a.contains(x) { mode.top() } else { eps.clone() })
            .collect();
        VFunction { carrier: carrier.clone(), mode, values }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn mode(&self) -> QuantaleMode {
        self.mode
    }

    pub fn values(&self) -> &[QuantaleValue] {
        &self.values
    }

    pub fn get(&self, x: usize) -> &QuantaleValue {
        &self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn zip_with(&self, other: &VFunction, op: impl Fn(&QuantaleValue, &QuantaleValue) -> QuantaleValue) -> Result<Self> {
        self.carrier.check(&other.carrier)?;
        self.mode.check(other.mode)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect();
        Ok(VFunction { carrier: self.carrier.clone(), mode: self.mode, values })
    }

    fn map(&self, op: impl Fn(&QuantaleValue) -> QuantaleValue) -> Self {
        VFunction {
            carrier: self.carrier.clone(),
            mode: self.mode,
            values: self.values.iter().map(op).collect(),
        }
    }

    pub fn join(&self, other: &VFunction) -> Result<Self> {
        self.zip_with(other, QuantaleValue::join)
    }

    pub fn meet(&self, other: &VFunction) -> Result<Self> {
        self.zip_with(other, QuantaleValue::meet)
    }

    /// Pointwise `f ⊗ v`.
    pub fn tensor_const(&self, v: &QuantaleValue) -> Result<Self> {
        self.mode.check(v.mode())?;
        Ok(self.map(|a| a * v))
    }

    /// Pointwise `f ⊘ v`.
    pub fn residuate_const(&self, v: &QuantaleValue) -> Result<Self> {
        self.mode.check(v.mode())?;
        Ok(self.map(|a| a / v))
    }

    /// Pointwise order.
    pub fn le(&self, other: &VFunction) -> bool {
        self.carrier == other.carrier
            && self.mode == other.mode
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// `{x : f(x) > bottom}`.
    pub fn support(&self) -> Subset {
        Subset::from_points((0..self.len()).filter(|&x| !self.values[x].is_bottom()))
    }

    /// `{x : f(x) = top}`.
    pub fn top_set(&self) -> Subset {
        Subset::from_points((0..self.len()).filter(|&x| self.values[x].is_top()))
    }

    /// `{x : f(x) >= ε}`.
    pub fn level_set(&self, eps: &QuantaleValue) -> Subset {
        Subset::from_points((0..self.len()).filter(|&x| self.values[x] >= *eps))
    }

    /// `f⁻¹(v)`.
    pub fn preimage(&self, v: &QuantaleValue) -> Subset {
        Subset::from_points((0..self.len()).filter(|&x| self.values[x] == *v))
    }

    /// Distinct values in increasing order.
    pub fn range(&self) -> Vec<QuantaleValue> {
        sorted_distinct(self.values.clone())
    }

    /// `f ∘ map`, a function on the domain of `map`.
    pub fn compose(&self, map: &PointMap) -> Result<Self> {
        self.carrier.check(map.codomain())?;
        let values = map.images().iter().map(|&y| self.values[y].clone()).collect();
        Ok(VFunction { carrier: map.domain().clone(), mode: self.mode, values })
    }

    /// Every function `X -> V` for a finite chain, in lexicographic order.
    pub fn enumerate_all(carrier: &Carrier, mode: QuantaleMode) -> Result<Vec<VFunction>> {
        let elements = mode
            .elements()
            .ok_or_else(|| Error::Unsupported("enumeration needs a finite chain".into()))?;
        let k = elements.len();
        let n = carrier.len();
        let total = k
            .checked_pow(n as u32)
            .filter(|t| *t <= 1 << 20)
            .ok_or_else(|| Error::TooLarge(format!("{k}^{n} functions")))?;
        Ok((0..total)
            .map(|mut code| {
                let values = (0..n)
                    .map(|_| {
                        let v = elements[code % k].clone();
                        code /= k;
                        v
                    })
                    .collect();
                VFunction { carrier: carrier.clone(), mode, values }
            })
            .collect())
    }

    /// Renders as `p=2 q=0 r=8`.
    pub fn render(&self) -> String {
        (0..self.len())
            .map(|x| format!("{}={}", self.carrier.name(x), self.values[x]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace-separated `point=value` tokens; `#` starts a comment.
    /// Omitted points are bottom.
    pub fn parse(carrier: &Carrier, mode: QuantaleMode, text: &str) -> Result<Self> {
        let mut values = vec![mode.bottom(); carrier.len()];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for token in line.split_whitespace() {
                let err = |message: String| Error::Parse { line: lineno + 1, message };
                let (name, value) = token
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected point=value, got `{token}`")))?;
                let x = carrier
                    .index_of(name)
                    .ok_or_else(|| err(format!("unknown point `{name}`")))?;
                values[x] = mode.parse_value(value).map_err(|e| err(e.to_string()))?;
            }
        }
        Ok(VFunction { carrier: carrier.clone(), mode, values })
    }
}

impl fmt::Display for VFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A total map between two finite carriers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    domain: Carrier,
    codomain: Carrier,
    images: Vec<usize>,
}

impl PointMap {
    pub fn new(domain: &Carrier, codomain: &Carrier, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::InvalidArgument("point map is not total".into()));
        }
        if images.iter().any(|&y| y >= codomain.len()) {
            return Err(Error::InvalidArgument("point map image outside the codomain".into()));
        }
        Ok(PointMap { domain: domain.clone(), codomain: codomain.clone(), images })
    }

    pub fn identity(carrier: &Carrier) -> Self {
        PointMap { domain: carrier.clone(), codomain: carrier.clone(), images: (0..carrier.len()).collect() }
    }

    pub fn constant(domain: &Carrier, codomain: &Carrier, y: usize) -> Result<Self> {
        PointMap::new(domain, codomain, vec![y; domain.len()])
    }

    pub fn domain(&self) -> &Carrier {
        &self.domain
    }

    pub fn codomain(&self) -> &Carrier {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `f(B)`.
    pub fn image(&self, b: Subset) -> Subset {
        Subset::from_points(b.points().map(|x| self.images[x]))
    }

    /// `f⁻¹(A)`.
    pub fn preimage(&self, a: Subset) -> Subset {
        Subset::from_points((0..self.images.len()).filter(|&x| a.contains(self.images[x])))
    }

    /// Parses lines `x -> y`; `#` starts a comment. Every domain point must
    /// be mapped exactly once.
    pub fn parse(domain: &Carrier, codomain: &Carrier, text: &str) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; domain.len()];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: lineno + 1, message };
            let (from, to) = line
                .split_once("->")
                .ok_or_else(|| err(format!("expected `x -> y`, got `{line}`")))?;
            let x = domain
                .index_of(from.trim())
                .ok_or_else(|| err(format!("unknown domain point `{}`", from.trim())))?;
            let y = codomain
                .index_of(to.trim())
                .ok_or_else(|| err(format!("unknown codomain point `{}`", to.trim())))?;
            if images[x].replace(y).is_some() {
                return Err(err(format!("point `{}` mapped twice", from.trim())));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(x, y)| {
                y.ok_or_else(|| Error::Parse { line: 0, message: format!("point `{}` is not mapped", domain.name(x)) })
            })
            .collect::<Result<_>>()?;
        Ok(PointMap { domain: domain.clone(), codomain: codomain.clone(), images })
    }

    pub fn render(&self) -> String {
        (0..self.images.len())
            .map(|x| format!("{} -> {}\n", self.domain.name(x), self.codomain.name(self.images[x])))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_and_sets() {
        let c = Carrier::new(["p", "q", "r"]).unwrap();
        let m = QuantaleMode::Lukasiewicz(8);
        let t = VFunction::theta(&c, m, Subset::singleton(2));
        assert_eq!(t.render(), "p=8 q=8 r=0");
        assert_eq!(t.support(), Subset::singleton(2));
        let f = VFunction::from_dists(&c, m, &[4, 2, 0]).unwrap();
        assert_eq!(f.level_set(&m.chain(2).unwrap()), Subset(0b110));
        assert_eq!(f.range().len(), 3);
        assert!(t.le(&f));
        assert!(!f.le(&t));
    }

    #[test]
    fn parse_function_file() {
        let c = Carrier::new(["p", "q", "r"]).unwrap();
        let m = QuantaleMode::Lukasiewicz(8);
        let f = VFunction::parse(&c, m, "p=4 # comment\nr=0\n").unwrap();
        assert_eq!(f.render(), "p=4 q=8 r=0");
        assert!(matches!(VFunction::parse(&c, m, "\ns=1"), Err(Error::Parse { line: 2, .. })));
        assert!(VFunction::parse(&c, m, "p=9").is_err());
    }

    #[test]
    fn point_maps() {
        let x = Carrier::new(["a", "b"]).unwrap();
        let y = Carrier::new(["p", "q", "r"]).unwrap();
        let f = PointMap::parse(&x, &y, "a -> r\nb -> r\n").unwrap();
        assert_eq!(f.image(Subset(0b11)), Subset(0b100));
        assert_eq!(f.preimage(Subset(0b100)), Subset(0b11));
        assert_eq!(f.preimage(Subset(0b001)), Subset::EMPTY);
        assert!(PointMap::parse(&x, &y, "a -> r\n").is_err());
        assert!(PointMap::parse(&x, &y, "a -> r\na -> p\nb -> p").is_err());
        assert_eq!(PointMap::parse(&x, &y, &f.render()).unwrap(), f);
    }

    #[test]
    fn enumerate_counts() {
        let c = Carrier::numbered(3).unwrap();
        assert_eq!(VFunction::enumerate_all(&c, QuantaleMode::Lukasiewicz(2)).unwrap().len(), 27);
        assert!(VFunction::enumerate_all(&c, QuantaleMode::UnitRational).is_err());
    }
}
