//! Finite carriers, subsets, set families and principal filters.
//!
//! Subsets are bitmasks over the ordered carrier. On a finite carrier every
//! proper filter is principal, so [`PrincipalFilter`] stands for all of them,
//! and the ultrafilters are exactly the point filters.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantale::QuantaleValue;
use crate::vfunc::VFunction;

/// Upper bound on carrier size; subsets are `u64` masks.
pub const MAX_POINTS: usize = 63;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Subset {
        points.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1u64 << i)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn meets(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Points in increasing order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including `∅` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }
}

/// All `2^n` subsets of an `n`-point carrier in mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u64 << n).map(Subset)
}

/// All nonempty subsets of an `n`-point carrier in mask order.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (1..1u64 << n).map(Subset)
}

/// Ordered list of distinct point names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    names: Arc<[String]>,
}

impl Carrier {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptySet("carrier"));
        }
        if names.len() > MAX_POINTS {
            return Err(Error::TooLarge(format!("{} points, at most {MAX_POINTS}", names.len())));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || "{},=:#".contains(c)) {
                return Err(Error::InvalidArgument(format!("bad point name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate point `{name}`")));
            }
        }
        Ok(Carrier { names: names.into() })
    }

    /// Carrier `x0, x1, ...` of the given size.
    pub fn numbered(n: usize) -> Result<Self> {
        Carrier::new((0..n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        all_subsets(self.len())
    }

    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Subset> {
        nonempty_subsets(self.len())
    }

    /// Renders a subset as `{p,q}`.
    pub fn render(&self, s: Subset) -> String {
        let names: Vec<&str> = s.points().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Parses `{p,q}` (whitespace tolerated).
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidArgument(format!("subset literal `{text}` must look like {{p,q}}")))?;
        let mut s = Subset::EMPTY;
        for name in inner.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown point `{name}`")))?;
            s = s.with(i);
        }
        Ok(s)
    }

    pub(crate) fn check(&self, other: &Carrier) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!("{:?} vs {:?}", self.names, other.names)))
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(" "))
    }
}

/// A family of subsets of a carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    carrier: Carrier,
    members: BTreeSet<Subset>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = Subset>>(carrier: &Carrier, members: I) -> Result<Self> {
        let full = carrier.full();
        let members: BTreeSet<Subset> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.is_subset_of(full)) {
            return Err(Error::InvalidArgument(format!("member {:#b} outside the carrier", bad.0)));
        }
        Ok(SetFamily { carrier: carrier.clone(), members })
    }

    pub fn empty(carrier: &Carrier) -> Self {
        SetFamily { carrier: carrier.clone(), members: BTreeSet::new() }
    }

    /// Every subset of the carrier.
    pub fn powerset(carrier: &Carrier) -> Self {
        SetFamily { carrier: carrier.clone(), members: carrier.subsets().collect() }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn members(&self) -> &BTreeSet<Subset> {
        &self.members
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `{B : B ∩ A ≠ ∅ for every A in the family}`.
    pub fn grill(&self) -> SetFamily {
        let members = self
            .carrier
            .subsets()
            .filter(|b| self.members.iter().all(|a| b.meets(*a)))
            .collect();
        SetFamily { carrier: self.carrier.clone(), members }
    }

    /// Every member of `self` meets every member of `other`.
    pub fn meshes(&self, other: &SetFamily) -> Result<bool> {
        self.carrier.check(&other.carrier)?;
        Ok(self.members.iter().all(|a| other.members.iter().all(|b| a.meets(*b))))
    }

    /// `self` is finer than `other`: every member of `other` contains a
    /// member of `self`.
    pub fn is_finer_than(&self, other: &SetFamily) -> Result<bool> {
        self.carrier.check(&other.carrier)?;
        Ok(other
            .members
            .iter()
            .all(|b| self.members.iter().any(|a| a.is_subset_of(*b))))
    }

    /// All supersets of members.
    pub fn isotone_hull(&self) -> SetFamily {
        let members = self
            .carrier
            .subsets()
            .filter(|b| self.members.iter().any(|a| a.is_subset_of(*b)))
            .collect();
        SetFamily { carrier: self.carrier.clone(), members }
    }

    /// `⋁_{F∈F} ⋀_{x∈F} φ(x)`.
    pub fn liminf(&self, phi: &VFunction) -> Result<QuantaleValue> {
        self.carrier.check(phi.carrier())?;
        let mode = phi.mode();
        let inner: Vec<QuantaleValue> = self
            .members
            .iter()
            .map(|f| mode.meet(f.points().map(|x| phi.get(x))))
            .collect();
        Ok(mode.join(&inner))
    }

    /// `⋀_{F∈F} ⋁_{x∈F} φ(x)`.
    pub fn limsup(&self, phi: &VFunction) -> Result<QuantaleValue> {
        self.carrier.check(phi.carrier())?;
        let mode = phi.mode();
        let inner: Vec<QuantaleValue> = self
            .members
            .iter()
            .map(|f| mode.join(f.points().map(|x| phi.get(x))))
            .collect();
        Ok(mode.meet(&inner))
    }
}

/// The filter `B↑` of all supersets of a nonempty base `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalFilter {
    carrier: Carrier,
    base: Subset,
}

impl PrincipalFilter {
    pub fn new(carrier: &Carrier, base: Subset) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptySet("filter base"));
        }
        if !base.is_subset_of(carrier.full()) {
            return Err(Error::InvalidArgument("filter base outside the carrier".into()));
        }
        Ok(PrincipalFilter { carrier: carrier.clone(), base })
    }

    /// The point filter `ẋ`.
    pub fn point(carrier: &Carrier, x: usize) -> Self {
        PrincipalFilter { carrier: carrier.clone(), base: Subset::singleton(x) }
    }

    /// The filter generated by a filter base: on a finite carrier it is
    /// principal, generated by the intersection of the base.
    pub fn from_base(family: &SetFamily) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptySet("filter base family"));
        }
        let core = family
            .members
            .iter()
            .fold(family.carrier.full(), |acc, m| acc.intersection(*m));
        if core.is_empty() {
            return Err(Error::InvalidArgument("filter base generates the degenerate filter".into()));
        }
        Ok(PrincipalFilter { carrier: family.carrier.clone(), base: core })
    }

    pub fn base(&self) -> Subset {
        self.base
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.base.is_subset_of(s)
    }

    pub fn members(&self) -> SetFamily {
        SetFamily {
            carrier: self.carrier.clone(),
            members: self.carrier.subsets().filter(|s| self.contains(*s)).collect(),
        }
    }

    /// `{A : A ∩ B ≠ ∅}`.
    pub fn grill(&self) -> SetFamily {
        SetFamily {
            carrier: self.carrier.clone(),
            members: self.carrier.subsets().filter(|s| s.meets(self.base)).collect(),
        }
    }

    /// The ultrafilters finer than this filter: point filters at base points.
    pub fn ultrafilters(&self) -> Vec<PrincipalFilter> {
        self.base.points().map(|y| PrincipalFilter::point(&self.carrier, y)).collect()
    }

    /// `⋀_{x∈B} φ(x)`.
    pub fn liminf(&self, phi: &VFunction) -> Result<QuantaleValue> {
        self.carrier.check(phi.carrier())?;
        Ok(phi.mode().meet(self.base.points().map(|x| phi.get(x))))
    }

    /// `⋁_{x∈B} φ(x)`.
    pub fn limsup(&self, phi: &VFunction) -> Result<QuantaleValue> {
        self.carrier.check(phi.carrier())?;
        Ok(phi.mode().join(self.base.points().map(|x| phi.get(x))))
    }
}

/// `βA`: the ultrafilters containing `A`, i.e. the point filters at points of `A`.
pub fn ultrafilters_over(carrier: &Carrier, a: Subset) -> Result<Vec<PrincipalFilter>> {
    Ok(PrincipalFilter::new(carrier, a)?.ultrafilters())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::QuantaleMode;

    fn pqr() -> Carrier {
        Carrier::new(["p", "q", "r"]).unwrap()
    }

    fn fam(c: &Carrier, sets: &[&str]) -> SetFamily {
        SetFamily::new(c, sets.iter().map(|s| c.parse_subset(s).unwrap())).unwrap()
    }

    #[test]
    fn grill_examples() {
        let c = pqr();
        let g = fam(&c, &["{p}", "{p,q}"]).grill();
        let expected: Vec<Subset> = c.subsets().filter(|b| b.contains(0)).collect();
        assert_eq!(g.members().iter().copied().collect::<Vec<_>>(), expected);
        let g = fam(&c, &["{p,q,r}"]).grill();
        assert_eq!(g.len(), 7);
        assert!(!g.contains(Subset::EMPTY));
        assert_eq!(SetFamily::empty(&c).grill(), SetFamily::powerset(&c));
    }

    #[test]
    fn mesh_and_finer() {
        let c = pqr();
        assert!(fam(&c, &["{p}"]).meshes(&fam(&c, &["{p,q}"])).unwrap());
        assert!(!fam(&c, &["{p}"]).meshes(&fam(&c, &["{q}"])).unwrap());
        assert!(fam(&c, &["{p}"]).is_finer_than(&fam(&c, &["{p,q}"])).unwrap());
        assert!(!fam(&c, &["{p,q}"]).is_finer_than(&fam(&c, &["{p}"])).unwrap());
        let other = Carrier::new(["a", "b", "c"]).unwrap();
        assert!(fam(&c, &["{p}"]).meshes(&SetFamily::empty(&other)).is_err());
    }

    #[test]
    fn ultrafilters() {
        let c = pqr();
        let u = ultrafilters_over(&c, c.parse_subset("{p,q}").unwrap()).unwrap();
        assert_eq!(u, vec![PrincipalFilter::point(&c, 0), PrincipalFilter::point(&c, 1)]);
        assert_eq!(ultrafilters_over(&c, c.parse_subset("{r}").unwrap()).unwrap().len(), 1);
        assert_eq!(ultrafilters_over(&c, c.full()).unwrap().len(), 3);
        assert!(ultrafilters_over(&c, Subset::EMPTY).is_err());
    }

    #[test]
    fn limits_over_principal_filter() {
        let c = pqr();
        let m = QuantaleMode::Lukasiewicz(8);
        let phi = VFunction::from_dists(&c, m, &[2, 0, 8]).unwrap();
        let f = PrincipalFilter::new(&c, c.parse_subset("{p,q}").unwrap()).unwrap();
        assert_eq!(f.limsup(&phi).unwrap(), m.chain(0).unwrap());
        assert_eq!(f.liminf(&phi).unwrap(), m.chain(2).unwrap());
        // the full member family agrees with the base shortcut
        assert_eq!(f.members().limsup(&phi).unwrap(), f.limsup(&phi).unwrap());
        assert_eq!(f.members().liminf(&phi).unwrap(), f.liminf(&phi).unwrap());
        let r = PrincipalFilter::point(&c, 2);
        assert_eq!(r.liminf(&phi).unwrap(), *phi.get(2));
        assert_eq!(r.limsup(&phi).unwrap(), *phi.get(2));
    }

    #[test]
    fn from_base_canonicalizes() {
        let c = pqr();
        let f = PrincipalFilter::from_base(&fam(&c, &["{p,q}", "{p,r}"])).unwrap();
        assert_eq!(f.base(), Subset::singleton(0));
        assert!(PrincipalFilter::from_base(&fam(&c, &["{p}", "{q}"])).is_err());
        let isotone = fam(&c, &["{p,q}"]).isotone_hull();
        assert_eq!(isotone, PrincipalFilter::new(&c, c.parse_subset("{p,q}").unwrap()).unwrap().members());
    }

    #[test]
    fn subset_enumeration() {
        let s = Subset(0b1010);
        let subs: Vec<u64> = s.subsets().map(|t| t.0).collect();
        assert_eq!(subs, vec![0, 0b0010, 0b1000, 0b1010]);
        assert_eq!(Subset::from_points([0, 2]).points().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(Subset(0b011).complement(3), Subset(0b100));
    }

    #[test]
    fn carrier_validation() {
        assert!(Carrier::new(Vec::<String>::new()).is_err());
        assert!(Carrier::new(["p", "p"]).is_err());
        assert!(Carrier::new(["a b"]).is_err());
        let c = pqr();
        assert_eq!(c.render(c.parse_subset("{ r , p }").unwrap()), "{p,r}");
        assert!(c.parse_subset("{s}").is_err());
        assert!(c.parse_subset("p").is_err());
    }
}
