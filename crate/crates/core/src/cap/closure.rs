//! Continuity into `V`, the lower-hull operator and closure functions.

use super::CapSpace;
use crate::conv::FiniteConvergence;
use crate::error::{Error, Result};
use crate::finset::Subset;
use crate::quantale::QuantaleValue;
use crate::vfunc::VFunction;

/// One term `v ⊗ cl(f⁻¹(v))` of a development.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevelopmentTerm {
    pub value: QuantaleValue,
    pub preimage: Subset,
}

/// A filter `B↑` containing `A` converging at level `ε` to a point outside `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauEpsWitness {
    pub base: Subset,
    pub x: usize,
}

impl CapSpace {
    fn check_function(&self, f: &VFunction) -> Result<()> {
        self.carrier().check(f.carrier())?;
        self.mode().check(f.mode())
    }

    /// First `(B, x)` with `f(x) ⊘ limsup_{B↑} f < λ(B↑)(x)`.
    pub fn continuity_violation(&self, f: &VFunction) -> Result<Option<(Subset, usize)>> {
        self.check_function(f)?;
        for b in self.carrier().nonempty_subsets() {
            let limsup = self.mode().join(b.points().map(|y| f.get(y)));
            for x in 0..self.len() {
                if !(self.lambda(b, x) <= &(f.get(x) / &limsup)) {
                    return Ok(Some((b, x)));
                }
            }
        }
        Ok(None)
    }

    /// `f` is a contraction `(X, λ) -> (V, λ_V)`.
    pub fn is_continuous_to_v(&self, f: &VFunction) -> Result<bool> {
        Ok(self.continuity_violation(f)?.is_none())
    }

    /// `C(f)`: the least contraction into `V` above `f`, computed as
    /// `M* ⊗ f` for the singleton matrix `M`.
    pub fn hull(&self, f: &VFunction) -> Result<VFunction> {
        self.check_function(f)?;
        Ok(self.singleton_matrix().kleene_star().apply(f))
    }

    /// `θ_A`.
    pub fn theta(&self, a: Subset) -> VFunction {
        VFunction::theta(self.carrier(), self.mode(), a)
    }

    /// `θ_A^ε`; `ε` must be below top.
    pub fn theta_eps(&self, a: Subset, eps: &QuantaleValue) -> Result<VFunction> {
        self.mode().check(eps.mode())?;
        if eps.is_top() {
            return Err(Error::InvalidArgument("θ^ε needs ε below top".into()));
        }
        Ok(VFunction::theta_eps(self.carrier(), self.mode(), a, eps))
    }

    /// Closure function `cl A = C(θ_A)`; `cl ∅` is constant bottom.
    pub fn closure_fn(&self, a: Subset) -> VFunction {
        self.hull(&self.theta(a)).expect("θ_A lives on this carrier")
    }

    /// Closure functions of every subset, indexed by mask.
    pub fn closure_table(&self) -> Vec<VFunction> {
        let star = self.singleton_matrix().kleene_star();
        self.carrier().subsets().map(|a| star.apply(&self.theta(a))).collect()
    }

    /// The development `⋁_{v ∈ range f} v ⊗ θ_{f⁻¹(v)}` of `f`.
    pub fn development(&self, f: &VFunction) -> Vec<DevelopmentTerm> {
        f.range()
            .into_iter()
            .map(|v| DevelopmentTerm { preimage: f.preimage(&v), value: v })
            .collect()
    }

    /// `C(f) = ⋁_{v ∈ range f} v ⊗ cl(f⁻¹(v))`, assembled from closure
    /// functions of level sets instead of the matrix closure of `f` itself.
    pub fn hull_via_development(&self, f: &VFunction) -> Result<VFunction> {
        self.check_function(f)?;
        let mut acc = VFunction::constant(self.carrier(), self.mode(), self.mode().bottom());
        for term in self.development(f) {
            acc = acc.join(&self.closure_fn(term.preimage).tensor_const(&term.value)?)?;
        }
        Ok(acc)
    }

    /// Filter containing `A` whose `τ_ε`-limit leaves `A`, if any.
    pub fn tau_eps_closed_violation(&self, a: Subset, eps: &QuantaleValue) -> Result<Option<TauEpsWitness>> {
        let tau: FiniteConvergence = self.tau_eps(eps)?;
        for b in a.subsets().filter(|b| !b.is_empty()) {
            if let Some(x) = tau.lim(b).points().find(|&x| !a.contains(x)) {
                return Ok(Some(TauEpsWitness { base: b, x }));
            }
        }
        Ok(None)
    }

    /// `A` is closed in the level convergence `τ_ε`.
    pub fn is_tau_eps_closed(&self, a: Subset, eps: &QuantaleValue) -> Result<bool> {
        Ok(self.tau_eps_closed_violation(a, eps)?.is_none())
    }

    /// Every contraction into `V`, for a finite chain.
    pub fn continuous_functions(&self) -> Result<Vec<VFunction>> {
        let m = self.singleton_matrix();
        Ok(VFunction::enumerate_all(self.carrier(), self.mode())?
            .into_iter()
            .filter(|f| {
                (0..self.len()).all(|x| (0..self.len()).all(|y| &(m.get(x, y) * f.get(y)) <= f.get(x)))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::k3;
    use super::*;
    use crate::quantale::QuantaleMode;

    fn f(d: &[u32]) -> VFunction {
        let s = k3();
        VFunction::from_dists(s.carrier(), s.mode(), d).unwrap()
    }

    #[test]
    fn continuity_examples() {
        let s = k3();
        assert!(!s.is_continuous_to_v(&s.theta(Subset::singleton(2))).unwrap());
        for d in 0..=8 {
            assert!(s.is_continuous_to_v(&f(&[d, d, d])).unwrap());
        }
        assert!(s.is_continuous_to_v(&f(&[4, 2, 0])).unwrap());
        let other = QuantaleMode::Lukasiewicz(4);
        let g = VFunction::constant(s.carrier(), other, other.top());
        assert!(s.is_continuous_to_v(&g).is_err());
    }

    #[test]
    fn hull_examples() {
        let s = k3();
        let r = Subset::singleton(2);
        assert_eq!(s.hull(&s.theta(r)).unwrap(), f(&[4, 2, 0]));
        let g = f(&[4, 2, 0]);
        assert_eq!(s.hull(&g).unwrap(), g);
        let empty = s.theta(Subset::EMPTY);
        assert_eq!(s.hull(&empty).unwrap(), empty);
    }

    #[test]
    fn closure_examples() {
        let s = k3();
        let r = Subset::singleton(2);
        let cl = s.closure_fn(r);
        assert_eq!(cl, f(&[4, 2, 0]));
        assert!(s.adh_set(r).le(&cl) && cl != s.adh_set(r));
        assert_eq!(s.closure_fn(Subset::EMPTY), s.theta(Subset::EMPTY));
        assert_eq!(s.hull(&s.adh_set(r)).unwrap(), cl);
    }

    #[test]
    fn development_matches_hull() {
        let s = k3();
        let theta = s.theta(Subset::singleton(2));
        assert_eq!(s.hull_via_development(&theta).unwrap(), s.hull(&theta).unwrap());
        let c = f(&[3, 3, 3]);
        assert_eq!(s.hull_via_development(&c).unwrap(), c);
        for g in VFunction::enumerate_all(s.carrier(), s.mode()).unwrap().iter().step_by(37) {
            assert_eq!(s.hull_via_development(g).unwrap(), s.hull(g).unwrap());
        }
    }

    #[test]
    fn tau_eps_closedness() {
        let s = k3();
        let m = s.mode();
        let r = Subset::singleton(2);
        assert!(s.is_tau_eps_closed(r, &m.chain(2).unwrap()).unwrap());
        assert!(s.is_continuous_to_v(&s.theta_eps(r, &m.chain(2).unwrap()).unwrap()).unwrap());
        assert_eq!(
            s.tau_eps_closed_violation(r, &m.bottom()).unwrap(),
            Some(TauEpsWitness { base: r, x: 1 })
        );
        assert!(s.is_tau_eps_closed(s.carrier().full(), &m.chain(5).unwrap()).unwrap());
        assert!(s.theta_eps(r, &m.top()).is_err());
    }

    #[test]
    fn continuous_functions_enumeration() {
        let s = k3();
        let all = s.continuous_functions().unwrap();
        assert!(all.contains(&f(&[4, 2, 0])));
        assert!(!all.contains(&s.theta(Subset::singleton(2))));
        for g in &all {
            assert!(s.is_continuous_to_v(g).unwrap());
        }
    }
}
