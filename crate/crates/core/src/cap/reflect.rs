//! Reflectors, contractions, initial structures and metric examples.

use num_rational::BigRational;
use num_traits::Signed;

use super::CapSpace;
use crate::error::{Error, Result};
use crate::finset::{Carrier, Subset};
use crate::quantale::{QuantaleMode, QuantaleValue};
use crate::vfunc::{PointMap, VFunction};

/// Outcome of [`CapSpace::contraction_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    /// First `(B, x)` with `λ_Y(f(B)↑)(f(x)) < λ_X(B↑)(x)`.
    pub violation: Option<(Subset, usize)>,
    /// First `(A, x)` with `adh_X(f⁻A)(x) > adh_Y A(f(x))`.
    pub adh_preimage_violation: Option<(Subset, usize)>,
    /// First `(A, x)` with `cl_X(f⁻A)(x) > cl_Y A(f(x))`.
    pub closure_preimage_violation: Option<(Subset, usize)>,
    pub codomain_prap: bool,
    pub codomain_approach: bool,
}

impl ContractionReport {
    pub fn is_contraction(&self) -> bool {
        self.violation.is_none()
    }

    /// Contractions satisfy both preimage inequalities, and the inequalities
    /// decide the verdict when the codomain is pre-approach (adherence) or
    /// approach (closure).
    pub fn consistent(&self) -> bool {
        let contraction = self.is_contraction();
        let adh_ok = self.adh_preimage_violation.is_none();
        let cl_ok = self.closure_preimage_violation.is_none();
        let forward = !contraction || (adh_ok && cl_ok);
        let adh_converse = !self.codomain_prap || adh_ok == contraction;
        let cl_converse = !self.codomain_approach || cl_ok == contraction;
        forward && adh_converse && cl_converse
    }
}

impl CapSpace {
    /// Pre-approach reflection: `λ(B↑)(x) = ⋀_{A ∩ B ≠ ∅} adh A(x)`, which is
    /// `⋀_{y∈B} a({y}, x)` because adherence is monotone.
    pub fn prap_reflection(&self) -> CapSpace {
        let mode = self.mode();
        CapSpace::from_table(self.carrier(), mode, |b, x| {
            mode.meet(b.points().map(|y| self.lambda(Subset::singleton(y), x)))
        })
        .expect("same shape")
    }

    /// Pseudo-approach reflection: `λ(F) = ⋀_{U∈βF} λ(U)`. On a finite
    /// carrier the ultrafilters of `B↑` are the point filters of `B`, so this
    /// agrees with [`CapSpace::prap_reflection`].
    pub fn psap_reflection(&self) -> CapSpace {
        let mode = self.mode();
        let point_rows: Vec<VFunction> = (0..self.len()).map(|y| self.row(Subset::singleton(y))).collect();
        CapSpace::from_table(self.carrier(), mode, |b, x| {
            let values: Vec<QuantaleValue> = b.points().map(|y| point_rows[y].get(x).clone()).collect();
            mode.meet(&values)
        })
        .expect("same shape")
    }

    /// Approach reflection: `λ(B↑)(x) = ⋀_{y∈B} cl{y}(x)`.
    pub fn ap_reflection(&self) -> CapSpace {
        let star = self.singleton_matrix().kleene_star();
        let mode = self.mode();
        CapSpace::from_table(self.carrier(), mode, |b, x| mode.meet(b.points().map(|y| star.get(x, y))))
            .expect("same shape")
    }

    fn check_map(f: &PointMap, from: &CapSpace, to: &CapSpace) -> Result<()> {
        from.carrier().check(f.domain())?;
        to.carrier().check(f.codomain())?;
        from.mode().check(to.mode())
    }

    /// First `(B, x)` where `f: from -> to` fails to be a contraction.
    pub fn contraction_violation(f: &PointMap, from: &CapSpace, to: &CapSpace) -> Result<Option<(Subset, usize)>> {
        Self::check_map(f, from, to)?;
        for b in from.carrier().nonempty_subsets() {
            let image = f.image(b);
            for x in 0..from.len() {
                if !(from.lambda(b, x) <= to.lambda(image, f.apply(x))) {
                    return Ok(Some((b, x)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_contraction(f: &PointMap, from: &CapSpace, to: &CapSpace) -> Result<bool> {
        Ok(Self::contraction_violation(f, from, to)?.is_none())
    }

    /// Contraction verdict together with the adherence and closure preimage
    /// inequalities over every `A ⊆ Y`.
    pub fn contraction_report(f: &PointMap, from: &CapSpace, to: &CapSpace) -> Result<ContractionReport> {
        let violation = Self::contraction_violation(f, from, to)?;
        let from_cl = from.closure_table();
        let to_cl = to.closure_table();
        let mut adh_preimage_violation = None;
        let mut closure_preimage_violation = None;
        for a in to.carrier().subsets() {
            let pre = f.preimage(a);
            let adh_x = from.adh_set(pre);
            let adh_y = to.adh_set(a).compose(f)?;
            if adh_preimage_violation.is_none() {
                adh_preimage_violation = (0..from.len()).find(|&x| !(adh_x.get(x) <= adh_y.get(x))).map(|x| (a, x));
            }
            let cl_y = to_cl[a.index()].compose(f)?;
            if closure_preimage_violation.is_none() {
                closure_preimage_violation = (0..from.len())
                    .find(|&x| !(from_cl[pre.index()].get(x) <= cl_y.get(x)))
                    .map(|x| (a, x));
            }
        }
        Ok(ContractionReport {
            violation,
            adh_preimage_violation,
            closure_preimage_violation,
            codomain_prap: to.is_prap(),
            codomain_approach: to.is_approach(),
        })
    }

    /// Initial structure for a source of maps `f_i: X -> Y_i`:
    /// `a(B, x) = ⋀_i λ_i(f_i(B)↑)(f_i(x))`.
    pub fn initial_structure(carrier: &Carrier, maps: &[(PointMap, &CapSpace)]) -> Result<CapSpace> {
        let (_, first) = maps.first().ok_or(Error::EmptySet("source of maps"))?;
        let mode = first.mode();
        for (f, target) in maps {
            carrier.check(f.domain())?;
            target.carrier().check(f.codomain())?;
            mode.check(target.mode())?;
        }
        CapSpace::new(carrier, mode, |b, x| {
            mode.meet(maps.iter().map(|(f, t)| t.lambda(f.image(b), f.apply(x))))
        })
    }

    /// Initial structure for maps `f_i: X -> V` into the approach space `V`:
    /// `a(B, x) = ⋀_i f_i(x) ⊘ ⋁_{b∈B} f_i(b)`.
    pub fn initial_into_v(carrier: &Carrier, fs: &[VFunction]) -> Result<CapSpace> {
        let first = fs.first().ok_or(Error::EmptySet("source of functions"))?;
        let mode = first.mode();
        for f in fs {
            carrier.check(f.carrier())?;
            mode.check(f.mode())?;
        }
        CapSpace::new(carrier, mode, |b, x| {
            let terms: Vec<QuantaleValue> = fs
                .iter()
                .map(|f| f.get(x) / &mode.join(b.points().map(|y| f.get(y))))
                .collect();
            mode.meet(&terms)
        })
    }

    /// Checks `λ(B↑) = ⋀_{C ∩ B ≠ ∅} cl C` and `adh B = ⋀_{F ⊇ B} cl F` for
    /// every base. Requires an approach space.
    pub fn adh_filter_closure_check(&self) -> Result<bool> {
        if !self.is_approach() {
            return Err(Error::Precondition("space is not an approach space".into()));
        }
        let cl = self.closure_table();
        let mode = self.mode();
        let n = self.len();
        for b in self.carrier().nonempty_subsets() {
            let adh = self.adh_set(b);
            for x in 0..n {
                let via_grill = mode.meet(self.carrier().subsets().filter(|c| c.meets(b)).map(|c| cl[c.index()].get(x)));
                let via_members = mode.meet(self.carrier().subsets().filter(|c| b.is_subset_of(*c)).map(|c| cl[c.index()].get(x)));
                if *self.lambda(b, x) != via_grill || *adh.get(x) != via_members {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Space of a finite set of rational points on the line:
/// `a(B, x) = sup_{t∈B} |t − x|`, read in the chain as a distance. Needs
/// `lukasiewicz(n)` with integer distances `<= n`, or unit-rational with
/// integer distances mapped to `2^-d`.
pub fn from_metric(points: &[BigRational], mode: QuantaleMode) -> Result<CapSpace> {
    match mode {
        QuantaleMode::Lukasiewicz(_) => from_metric_with(points, mode, |d| {
            if !d.is_integer() {
                return Err(Error::InvalidArgument(format!("distance {d} is not an integer")));
            }
            let d = u32::try_from(d.to_integer()).map_err(|_| Error::ValueOutOfRange {
                value: d.to_string(),
                mode: mode.to_string(),
            })?;
            mode.chain(d)
        }),
        QuantaleMode::UnitRational => from_metric_with(points, mode, |d| {
            if !d.is_integer() {
                return Err(Error::InvalidArgument(format!("distance {d} is not an integer")));
            }
            let d = u32::try_from(d.to_integer())
                .map_err(|_| Error::InvalidArgument(format!("distance {d} too large")))?;
            let half = BigRational::new(1.into(), 2.into());
            QuantaleValue::unit(num_traits::pow(half, d as usize))
        }),
    }
}

/// As [`from_metric`] with a caller-supplied decreasing transform from
/// distances to values. The result is an approach space whenever the
/// transform turns sums of distances into tensors.
pub fn from_metric_with(
    points: &[BigRational],
    mode: QuantaleMode,
    transform: impl Fn(&BigRational) -> Result<QuantaleValue>,
) -> Result<CapSpace> {
    if points.is_empty() {
        return Err(Error::EmptySet("metric points"));
    }
    let names: Vec<String> = points.iter().map(|p| p.to_string().replace('/', "_")).collect();
    let carrier = Carrier::new(names)?;
    let n = points.len();
    let mut dist = Vec::with_capacity(n * n);
    for x in points {
        for y in points {
            let v = transform(&(x - y).abs())?;
            mode.check(v.mode())?;
            dist.push(v);
        }
    }
    if (0..n).any(|x| dist[x * n + x] != mode.top()) {
        return Err(Error::InvalidArgument("transform must send distance 0 to top".into()));
    }
    CapSpace::new(&carrier, mode, |b, x| mode.meet(b.points().map(|t| &dist[t * n + x])))
}
