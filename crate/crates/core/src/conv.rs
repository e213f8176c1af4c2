//! Plain convergence structures on finite carriers.
//!
//! A convergence is stored by its limits on principal filters `B↑`, which is
//! lossless on a finite set.

use crate::error::{Error, Result};
use crate::finset::{Carrier, Subset};
use crate::vfunc::PointMap;

/// Largest carrier for which limit tables are materialized.
pub const MAX_CONV_POINTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteConvergence {
    carrier: Carrier,
    /// Indexed by subset mask; entry 0 is unused and holds `X`.
    lim: Vec<Subset>,
}

impl FiniteConvergence {
    /// Builds from a limit function on nonempty bases and checks the axioms.
    pub fn new(carrier: &Carrier, lim: impl Fn(Subset) -> Subset) -> Result<Self> {
        let conv = Self::from_fn_unchecked(carrier, lim)?;
        if let Some(v) = conv.axiom_violation() {
            return Err(Error::Axiom(v));
        }
        Ok(conv)
    }

    pub(crate) fn from_fn_unchecked(carrier: &Carrier, lim: impl Fn(Subset) -> Subset) -> Result<Self> {
        if carrier.len() > MAX_CONV_POINTS {
            return Err(Error::TooLarge(format!(
                "convergence on {} points, at most {MAX_CONV_POINTS}",
                carrier.len()
            )));
        }
        let full = carrier.full();
        let mut table = Vec::with_capacity(1 << carrier.len());
        table.push(full);
        for b in carrier.nonempty_subsets() {
            table.push(lim(b).intersection(full));
        }
        Ok(FiniteConvergence { carrier: carrier.clone(), lim: table })
    }

    /// Describes the first centeredness or monotonicity failure.
    pub fn axiom_violation(&self) -> Option<String> {
        for x in 0..self.carrier.len() {
            if !self.lim(Subset::singleton(x)).contains(x) {
                return Some(format!("not centered at {}", self.carrier.name(x)));
            }
        }
        for b in self.carrier.nonempty_subsets() {
            for y in b.complement(self.carrier.len()).points() {
                let bigger = b.with(y);
                if !self.lim(bigger).is_subset_of(self.lim(b)) {
                    return Some(format!(
                        "not monotone: lim {}↑ is not inside lim {}↑",
                        self.carrier.render(bigger),
                        self.carrier.render(b)
                    ));
                }
            }
        }
        None
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// `lim B↑`.
    pub fn lim(&self, b: Subset) -> Subset {
        self.lim[b.index()]
    }

    /// `adh A = ⋃_{y∈A} lim ẏ`, with `adh ∅ = ∅`.
    pub fn adh(&self, a: Subset) -> Subset {
        a.points()
            .fold(Subset::EMPTY, |acc, y| acc.union(self.lim(Subset::singleton(y))))
    }

    /// `A` is closed when every filter containing `A` has its limits in `A`.
    pub fn is_closed(&self, a: Subset) -> bool {
        a.subsets()
            .filter(|b| !b.is_empty())
            .all(|b| self.lim(b).is_subset_of(a))
    }

    /// `A` is open when `lim B↑ ∩ A ≠ ∅` forces `A ∈ B↑`.
    pub fn is_open(&self, a: Subset) -> bool {
        self.carrier
            .nonempty_subsets()
            .all(|b| !self.lim(b).meets(a) || b.is_subset_of(a))
    }

    pub fn closed_sets(&self) -> Vec<Subset> {
        self.carrier.subsets().filter(|a| self.is_closed(*a)).collect()
    }

    pub fn open_sets(&self) -> Vec<Subset> {
        self.carrier.subsets().filter(|a| self.is_open(*a)).collect()
    }

    /// Closure in the topological modification: the adherence iterated to
    /// its fixpoint.
    pub fn closure(&self, a: Subset) -> Subset {
        let mut cur = a;
        loop {
            let next = cur.union(self.adh(cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    fn rebuild(&self, lim: impl Fn(Subset) -> Subset) -> FiniteConvergence {
        Self::from_fn_unchecked(&self.carrier, lim).expect("same carrier size")
    }

    /// Pretopological reflection: `lim B↑ = ⋂_{y∈B} adh {y}`.
    pub fn pretop_reflection(&self) -> FiniteConvergence {
        let point_adh: Vec<Subset> = (0..self.carrier.len()).map(|y| self.adh(Subset::singleton(y))).collect();
        self.rebuild(|b| b.points().fold(self.carrier.full(), |acc, y| acc.intersection(point_adh[y])))
    }

    /// Topological reflection: `lim B↑ = ⋂_{y∈B} cl {y}`.
    pub fn topo_reflection(&self) -> FiniteConvergence {
        let point_cl: Vec<Subset> = (0..self.carrier.len()).map(|y| self.closure(Subset::singleton(y))).collect();
        self.rebuild(|b| b.points().fold(self.carrier.full(), |acc, y| acc.intersection(point_cl[y])))
    }

    /// `lim (B ∪ B')↑ = lim B↑ ∩ lim B'↑` for all bases.
    pub fn is_pretopology(&self) -> bool {
        let n = self.carrier.len();
        self.carrier.nonempty_subsets().all(|b| {
            b.points()
                .fold(Subset::full(n), |acc, y| acc.intersection(self.lim(Subset::singleton(y))))
                == self.lim(b)
        })
    }

    /// Pretopology with idempotent adherence.
    pub fn is_topology(&self) -> bool {
        self.is_pretopology() && self.carrier.subsets().all(|a| self.adh(self.adh(a)) == self.adh(a))
    }

    /// Every limit of `self` is a limit of `other`.
    pub fn is_finer_than(&self, other: &FiniteConvergence) -> Result<bool> {
        self.carrier.check(&other.carrier)?;
        Ok(self
            .carrier
            .nonempty_subsets()
            .all(|b| self.lim(b).is_subset_of(other.lim(b))))
    }

    /// `f(x) ∈ lim f(B)↑` whenever `x ∈ lim B↑`; returns the first failing
    /// `(B, x)` if any.
    pub fn continuity_violation(f: &PointMap, from: &FiniteConvergence, to: &FiniteConvergence) -> Result<Option<(Subset, usize)>> {
        from.carrier.check(f.domain())?;
        to.carrier.check(f.codomain())?;
        for b in from.carrier.nonempty_subsets() {
            let target = to.lim(f.image(b));
            if let Some(x) = from.lim(b).points().find(|&x| !target.contains(f.apply(x))) {
                return Ok(Some((b, x)));
            }
        }
        Ok(None)
    }

    pub fn continuous(f: &PointMap, from: &FiniteConvergence, to: &FiniteConvergence) -> Result<bool> {
        Ok(Self::continuity_violation(f, from, to)?.is_none())
    }

    /// One line per base: `{p,q} -> {r}`.
    pub fn render(&self) -> String {
        self.carrier
            .nonempty_subsets()
            .map(|b| format!("{} -> {}\n", self.carrier.render(b), self.carrier.render(self.lim(b))))
            .collect()
    }
}
