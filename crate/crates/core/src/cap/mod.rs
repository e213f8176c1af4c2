//! Convergence approach spaces on a finite carrier.
//!
//! A space is a table `a(B, x) = λ(B↑)(x)` over nonempty subsets `B` and
//! points `x`, centered (`a({x}, x) = top`) and monotone (larger bases
//! converge no better). Every filter on a finite set is principal, so the
//! table is the whole structure.
//!
//! The singleton matrix `M(x, y) = a({y}, x)` carries everything that
//! adherence, continuity into `V`, the lower hull and the approach
//! reflection depend on; see [`matrix`].

mod closure;
pub mod matrix;
mod reflect;

use std::fmt;

use crate::conv::FiniteConvergence;
use crate::error::{Error, Result};
use crate::finset::{Carrier, PrincipalFilter, Subset};
use crate::quantale::{QuantaleMode, QuantaleValue};
use crate::vfunc::VFunction;

pub use closure::{DevelopmentTerm, TauEpsWitness};
pub use matrix::VMatrix;
pub use reflect::{from_metric, from_metric_with, ContractionReport};

/// Largest carrier for which a space table is materialized.
pub const MAX_CAP_POINTS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapSpace {
    carrier: Carrier,
    mode: QuantaleMode,
    /// Row-major by subset mask; row 0 is unused and holds top.
    table: Vec<QuantaleValue>,
}

/// A failed space axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `a({x}, x) != top`.
    NotCentered { x: usize, value: QuantaleValue },
    /// `a(larger, x) > a(smaller, x)` although `smaller ⊆ larger`.
    NotMonotone { smaller: Subset, larger: Subset, x: usize },
}

/// `a(left ∪ right, x) != a(left, x) ∧ a(right, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrapViolation {
    pub left: Subset,
    pub right: Subset,
    pub x: usize,
}

/// `a(B, x) != ⋀_{y∈B} a({y}, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsapViolation {
    pub base: Subset,
    pub x: usize,
}

/// `adh A(x) < adh A^(ε)(x) ⊗ ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalViolation {
    pub set: Subset,
    pub eps: QuantaleValue,
    pub x: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApproachViolation {
    NotPrap(PrapViolation),
    Diagonal(DiagonalViolation),
}

impl CapSpace {
    /// Builds the table from a function on (nonempty base, point). Only
    /// shape and mode are checked; see [`CapSpace::validate`].
    pub fn from_table(
        carrier: &Carrier,
        mode: QuantaleMode,
        a: impl Fn(Subset, usize) -> QuantaleValue,
    ) -> Result<Self> {
        let n = carrier.len();
        if n > MAX_CAP_POINTS {
            return Err(Error::TooLarge(format!("space on {n} points, at most {MAX_CAP_POINTS}")));
        }
        let mut table = vec![mode.top(); n];
        table.reserve(n << n);
        for b in carrier.nonempty_subsets() {
            for x in 0..n {
                let v = a(b, x);
                mode.check(v.mode())?;
                table.push(v);
            }
        }
        Ok(CapSpace { carrier: carrier.clone(), mode, table })
    }

    /// [`CapSpace::from_table`] followed by validation.
    pub fn new(carrier: &Carrier, mode: QuantaleMode, a: impl Fn(Subset, usize) -> QuantaleValue) -> Result<Self> {
        let space = Self::from_table(carrier, mode, a)?;
        space.ensure_valid()?;
        Ok(space)
    }

    /// Space whose singleton rows are `rows[y] = λ(ẏ)`, with every other row
    /// completed as the meet of the singleton rows of its points.
    pub fn from_singleton_rows(carrier: &Carrier, mode: QuantaleMode, rows: &[VFunction]) -> Result<Self> {
        if rows.len() != carrier.len() {
            return Err(Error::InvalidArgument(format!("{} rows for {} points", rows.len(), carrier.len())));
        }
        for r in rows {
            carrier.check(r.carrier())?;
            mode.check(r.mode())?;
        }
        Self::new(carrier, mode, |b, x| mode.meet(b.points().map(|y| rows[y].get(x))))
    }

    /// Space from a singleton matrix `M(x, y) = a({y}, x)`, completed as in
    /// [`CapSpace::from_singleton_rows`].
    pub fn from_matrix(carrier: &Carrier, m: &VMatrix) -> Result<Self> {
        if m.len() != carrier.len() {
            return Err(Error::InvalidArgument("matrix size differs from carrier".into()));
        }
        let mode = m.mode();
        Self::new(carrier, mode, |b, x| mode.meet(b.points().map(|y| m.get(x, y))))
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::Axiom(self.describe_axiom(v))),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn mode(&self) -> QuantaleMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// `λ(B↑)(x)`; `B` must be nonempty.
    pub fn lambda(&self, b: Subset, x: usize) -> &QuantaleValue {
        debug_assert!(!b.is_empty(), "λ is defined on proper filters only");
        &self.table[b.index() * self.len() + x]
    }

    /// `λ(B↑)` as a function.
    pub fn row(&self, b: Subset) -> VFunction {
        let n = self.len();
        let start = b.index() * n;
        VFunction::new(&self.carrier, self.mode, self.table[start..start + n].to_vec()).expect("row shape")
    }

    /// `λ(F)` for a principal filter.
    pub fn lambda_filter(&self, f: &PrincipalFilter) -> Result<VFunction> {
        self.carrier.check(f.carrier())?;
        Ok(self.row(f.base()))
    }

    /// `M(x, y) = a({y}, x)`.
    pub fn singleton_matrix(&self) -> VMatrix {
        let n = self.len();
        VMatrix::from_fn(self.mode, n, |x, y| self.lambda(Subset::singleton(y), x).clone())
    }

    /// Every centeredness and monotonicity failure; empty when the table is a space.
    pub fn validate(&self) -> Vec<AxiomViolation> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            let v = self.lambda(Subset::singleton(x), x);
            if !v.is_top() {
                out.push(AxiomViolation::NotCentered { x, value: v.clone() });
            }
        }
        for b in self.carrier.nonempty_subsets() {
            for y in b.complement(n).points() {
                let larger = b.with(y);
                for x in 0..n {
                    if !(self.lambda(larger, x) <= self.lambda(b, x)) {
                        out.push(AxiomViolation::NotMonotone { smaller: b, larger, x });
                    }
                }
            }
        }
        out
    }

    pub fn describe_axiom(&self, v: &AxiomViolation) -> String {
        match v {
            AxiomViolation::NotCentered { x, value } => {
                let name = self.carrier.name(*x);
                format!("not centered: lambda {{{name}}} at {name} is {value}, expected top")
            }
            AxiomViolation::NotMonotone { smaller, larger, x } => format!(
                "not monotone: lambda {} at {} is {} but lambda {} there is {}",
                self.carrier.render(*larger),
                self.carrier.name(*x),
                self.lambda(*larger, *x),
                self.carrier.render(*smaller),
                self.lambda(*smaller, *x)
            ),
        }
    }

    /// `adh A(x) = ⋁_{y∈A} a({y}, x)`; the adherence of `∅` is constant bottom.
    pub fn adh_set(&self, a: Subset) -> VFunction {
        let values = (0..self.len())
            .map(|x| self.mode.join(a.points().map(|y| self.lambda(Subset::singleton(y), x))))
            .collect();
        VFunction::new(&self.carrier, self.mode, values).expect("row shape")
    }

    /// Adherence of `B↑`, equal to the adherence of its base.
    pub fn adh_filter(&self, f: &PrincipalFilter) -> Result<VFunction> {
        self.carrier.check(f.carrier())?;
        Ok(self.adh_set(f.base()))
    }

    /// Adherence functions of every subset, indexed by mask.
    pub fn adh_table(&self) -> Vec<VFunction> {
        self.carrier.subsets().map(|a| self.adh_set(a)).collect()
    }

    /// `A^(ε) = {x : adh A(x) >= ε}`.
    pub fn level_set(&self, a: Subset, eps: &QuantaleValue) -> Result<Subset> {
        self.mode.check(eps.mode())?;
        Ok(self.adh_set(a).level_set(eps))
    }

    /// First pair of bases whose union breaks `λ(F ∩ G) = λF ∧ λG`.
    pub fn prap_violation(&self) -> Option<PrapViolation> {
        let n = self.len();
        for left in self.carrier.nonempty_subsets() {
            for right in nonempty_masks_from(left, n) {
                let union = left.union(right);
                for x in 0..n {
                    if *self.lambda(union, x) != self.lambda(left, x).meet(self.lambda(right, x)) {
                        return Some(PrapViolation { left, right, x });
                    }
                }
            }
        }
        None
    }

    /// Pre-approach: `λ` turns intersections of filters into meets.
    pub fn is_prap(&self) -> bool {
        self.prap_violation().is_none()
    }

    /// First base where `λ(F)` differs from the meet over the ultrafilters of `F`.
    pub fn psap_violation(&self) -> Option<PsapViolation> {
        for b in self.carrier.nonempty_subsets() {
            for x in 0..self.len() {
                let via_ultra = self.mode.meet(b.points().map(|y| self.lambda(Subset::singleton(y), x)));
                if *self.lambda(b, x) != via_ultra {
                    return Some(PsapViolation { base: b, x });
                }
            }
        }
        None
    }

    /// Pseudo-approach: `λ(F) = ⋀_{U∈βF} λ(U)`. On a finite carrier this
    /// coincides with [`CapSpace::is_prap`].
    pub fn is_psap(&self) -> bool {
        self.psap_violation().is_none()
    }

    /// Thresholds at which the diagonal condition for `A` is tight: the
    /// values of `adh A` together with top, in increasing order.
    pub fn diagonal_thresholds(&self, a: Subset) -> Vec<QuantaleValue> {
        let mut eps = self.adh_set(a).range();
        if eps.last().is_none_or(|v| !v.is_top()) {
            eps.push(self.mode.top());
        }
        eps
    }

    /// First `(ε, x)` with `adh A(x) < adh A^(ε)(x) ⊗ ε`, checking `ε` over
    /// [`CapSpace::diagonal_thresholds`]. Between two consecutive achieved
    /// values of `adh A` the level set is constant, and the condition is
    /// tightest at the achieved value.
    pub fn diagonal_violation(&self, a: Subset) -> Option<DiagonalViolation> {
        self.diagonal_violation_over(a, &self.diagonal_thresholds(a))
    }

    /// As [`CapSpace::diagonal_violation`] with an explicit set of thresholds.
    pub fn diagonal_violation_over(&self, a: Subset, thresholds: &[QuantaleValue]) -> Option<DiagonalViolation> {
        let adh = self.adh_set(a);
        for eps in thresholds {
            let level = self.adh_set(adh.level_set(eps));
            for x in 0..self.len() {
                if !(level.get(x) * eps <= *adh.get(x)) {
                    return Some(DiagonalViolation { set: a, eps: eps.clone(), x });
                }
            }
        }
        None
    }

    /// Approach space: pre-approach and the diagonal condition for every set.
    pub fn approach_violation(&self) -> Option<ApproachViolation> {
        if let Some(v) = self.prap_violation() {
            return Some(ApproachViolation::NotPrap(v));
        }
        self.carrier
            .subsets()
            .find_map(|a| self.diagonal_violation(a))
            .map(ApproachViolation::Diagonal)
    }

    pub fn is_approach(&self) -> bool {
        self.approach_violation().is_none()
    }

    /// Level convergence: `x ∈ lim B↑` iff `λ(B↑)(x) > ε`. Requires `ε != top`.
    pub fn tau_eps(&self, eps: &QuantaleValue) -> Result<FiniteConvergence> {
        self.mode.check(eps.mode())?;
        if eps.is_top() {
            return Err(Error::InvalidArgument("level ε must be below top".into()));
        }
        FiniteConvergence::new(&self.carrier, |b| {
            Subset::from_points((0..self.len()).filter(|&x| self.lambda(b, x) > eps))
        })
    }

    /// Concrete reflection `r`: `x ∈ lim B↑` iff `λ(B↑)(x) > bottom`.
    pub fn r_reflect(&self) -> FiniteConvergence {
        self.tau_eps(&self.mode.bottom()).expect("bottom is below top")
    }

    /// Concrete coreflection `c`: `x ∈ lim B↑` iff `λ(B↑)(x) = top`.
    pub fn c_coreflect(&self) -> FiniteConvergence {
        FiniteConvergence::new(&self.carrier, |b| {
            Subset::from_points((0..self.len()).filter(|&x| self.lambda(b, x).is_top()))
        })
        .expect("space axioms give convergence axioms")
    }

    /// Pointwise order of the tables: `self` converges no better than `other`.
    pub fn le(&self, other: &CapSpace) -> bool {
        self.carrier == other.carrier
            && self.mode == other.mode
            && self.table.iter().zip(&other.table).all(|(a, b)| a <= b)
    }

    /// Pointwise meet of two spaces on the same carrier.
    pub fn meet(&self, other: &CapSpace) -> Result<CapSpace> {
        self.carrier.check(&other.carrier)?;
        self.mode.check(other.mode)?;
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a.meet(b)).collect();
        Ok(CapSpace { carrier: self.carrier.clone(), mode: self.mode, table })
    }

    /// One line per nonempty base: `{p,q} : p=0 q=2 r=8`.
    pub fn render_table(&self) -> String {
        self.carrier
            .nonempty_subsets()
            .map(|b| format!("{} : {}\n", self.carrier.render(b), self.row(b).render()))
            .collect()
    }
}

/// Nonempty masks `>= from`, so that each unordered pair is visited once.
fn nonempty_masks_from(from: Subset, n: usize) -> impl Iterator<Item = Subset> {
    (from.0..1u64 << n).map(Subset)
}

impl fmt::Display for CapSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::render_space(self, None))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// lukasiewicz(8) on p,q,r with M(p,q) = 2, M(q,r) = 2 and every other
    /// off-diagonal entry bottom.
    pub fn k3() -> CapSpace {
        let c = Carrier::new(["p", "q", "r"]).unwrap();
        let mode = QuantaleMode::Lukasiewicz(8);
        let m = VMatrix::from_fn(mode, 3, |x, y| {
            let d = match (x, y) {
                _ if x == y => 0,
                (0, 1) | (1, 2) => 2,
                _ => 8,
            };
            mode.chain(d).unwrap()
        });
        CapSpace::from_matrix(&c, &m).unwrap()
    }

    /// unit-rational on p,q: a({p},q) = 1/2, a({q},p) = 0, a({p,q},·) = 0.
    pub fn n2() -> CapSpace {
        let c = Carrier::new(["p", "q"]).unwrap();
        let mode = QuantaleMode::UnitRational;
        CapSpace::new(&c, mode, |b, x| match (b.0, x) {
            (0b01, 0) | (0b10, 1) => mode.top(),
            (0b01, 1) => mode.ratio(1, 2).unwrap(),
            _ => mode.bottom(),
        })
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{k3, n2};
    use super::*;

    fn ch(d: u32) -> QuantaleValue {
        QuantaleMode::Lukasiewicz(8).chain(d).unwrap()
    }

    #[test]
    fn k3_is_a_valid_prap_space() {
        let s = k3();
        assert!(s.validate().is_empty());
        assert!(s.is_prap());
        assert!(s.is_psap());
    }

    #[test]
    fn validation_reports_witnesses() {
        let c = Carrier::new(["p", "q", "r"]).unwrap();
        let mode = QuantaleMode::Lukasiewicz(8);
        let bad = CapSpace::from_table(&c, mode, |b, x| {
            if b == Subset::singleton(0) && x == 0 {
                mode.bottom()
            } else {
                k3().lambda(b, x).clone()
            }
        })
        .unwrap();
        let v = bad.validate();
        assert!(v.contains(&AxiomViolation::NotCentered { x: 0, value: mode.bottom() }));
        let bad = CapSpace::from_table(&c, mode, |b, x| if b.0 == 0b011 && x == 1 { mode.top() } else { k3().lambda(b, x).clone() })
            .unwrap();
        let v = bad.validate();
        assert!(v.contains(&AxiomViolation::NotMonotone { smaller: Subset(0b001), larger: Subset(0b011), x: 1 }));
        assert!(matches!(CapSpace::new(&c, mode, |_, _| mode.bottom()), Err(Error::Axiom(_))));
    }

    #[test]
    fn adherence_examples() {
        let s = k3();
        let r = Subset::singleton(2);
        assert_eq!(s.adh_set(r).values(), &[ch(8), ch(2), ch(0)]);
        for x in 0..3 {
            assert!(s.adh_set(Subset::singleton(x)).get(x).is_top());
        }
        let f = PrincipalFilter::new(s.carrier(), Subset(0b110)).unwrap();
        assert_eq!(s.adh_filter(&f).unwrap(), s.adh_set(Subset(0b110)));
        assert_eq!(s.adh_set(Subset::EMPTY), VFunction::constant(s.carrier(), s.mode(), s.mode().bottom()));
    }

    #[test]
    fn level_sets() {
        let s = k3();
        let r = Subset::singleton(2);
        assert_eq!(s.level_set(r, &ch(2)).unwrap(), Subset(0b110));
        assert_eq!(s.level_set(r, &ch(8)).unwrap(), s.carrier().full());
        assert!(r.is_subset_of(s.level_set(r, &ch(0)).unwrap()));
    }

    #[test]
    fn prap_witness_on_n2() {
        let s = n2();
        let v = s.prap_violation().unwrap();
        assert_eq!((v.left.union(v.right), v.x), (Subset(0b11), 1));
        assert_eq!(s.psap_violation(), Some(PsapViolation { base: Subset(0b11), x: 1 }));
    }

    #[test]
    fn approach_witness_on_k3() {
        let s = k3();
        assert_eq!(
            s.approach_violation(),
            Some(ApproachViolation::Diagonal(DiagonalViolation { set: Subset::singleton(2), eps: ch(2), x: 0 }))
        );
    }

    #[test]
    fn level_convergences() {
        let s = k3();
        let r = Subset::singleton(2);
        assert_eq!(s.r_reflect().lim(r), Subset(0b110));
        assert_eq!(s.c_coreflect().lim(r), r);
        assert!(s.r_reflect().is_pretopology());
        assert!(s.tau_eps(&ch(0)).is_err());
        assert_eq!(s.tau_eps(&ch(2)).unwrap().lim(r), r);
    }
}
