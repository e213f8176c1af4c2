//! Named law and theorem checks on a single space.
//!
//! Each check enumerates instances (subsets, functions, values) and tests a
//! predicate on each. The first failing instance becomes the witness, a list
//! of `key = value` pairs in file syntax, and [`replay`] feeds such a
//! witness back through the same predicate.
//!
//! Function-valued checks run over all of `V^X` when the chain and carrier
//! are small enough, and otherwise over a fixed sample built from indicator
//! functions, level functions, adherence and closure functions.

use crate::cap::{CapSpace, VMatrix};
use crate::error::{Error, Result};
use crate::finset::Subset;
use crate::ptfree::{cap_from_lim, lattice_size, lim_from_cap_bounded, DEFAULT_MAX_LATTICE};
use crate::quantale::{sorted_distinct, QuantaleMode, QuantaleValue};
use crate::vfunc::{PointMap, VFunction};

/// Largest `|V^X|` enumerated exhaustively.
pub const MAX_ENUMERATED_FUNCTIONS: usize = 4096;
const MAX_PAIR_FUNCTIONS: usize = 64;
const MAX_TENSOR_FUNCTIONS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Group {
    Law,
    Theorem,
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub group: Group,
    pub pass: bool,
    /// Number of instances evaluated.
    pub checked: usize,
    /// Inputs of the first failing instance.
    pub witness: Vec<(String, String)>,
    /// Why a check was not run, or what it was run over.
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Instance {
    Whole,
    Set(Subset),
    Sets(Subset, Subset),
    SetValue(Subset, QuantaleValue),
    Fun(VFunction),
    Funs(VFunction, VFunction),
    FunValue(VFunction, QuantaleValue),
}

/// Precomputed data shared by the checks.
struct Context<'a> {
    s: &'a CapSpace,
    star: VMatrix,
    adh: Vec<VFunction>,
    cl: Vec<VFunction>,
    values: Vec<QuantaleValue>,
    functions: Vec<VFunction>,
    continuous: Vec<VFunction>,
    enumerable: bool,
    prap: CapSpace,
    psap: CapSpace,
    ap: CapSpace,
    max_lattice: usize,
}

impl<'a> Context<'a> {
    fn new(s: &'a CapSpace, max_lattice: usize) -> Self {
        let mode = s.mode();
        let star = s.singleton_matrix().kleene_star();
        let adh = s.adh_table();
        let cl = s.closure_table();
        let values = match mode.elements() {
            Some(all) => all,
            None => {
                let mut v = vec![mode.bottom(), mode.top()];
                for b in s.carrier().nonempty_subsets() {
                    for x in 0..s.len() {
                        let a = s.lambda(b, x);
                        v.push(a.clone());
                        if let QuantaleValue::Unit(r) = a {
                            v.push(QuantaleValue::unit(r / num_rational::BigRational::from_integer(2.into())).expect("in range"));
                        }
                    }
                }
                sorted_distinct(v)
            }
        };
        let enumerable = mode
            .size()
            .and_then(|m| m.checked_pow(s.len() as u32))
            .is_some_and(|total| total <= MAX_ENUMERATED_FUNCTIONS);
        let functions = if enumerable {
            VFunction::enumerate_all(s.carrier(), mode).expect("small chain")
        } else {
            let mut seen = std::collections::BTreeSet::new();
            let mut out = Vec::new();
            let mut push = |f: VFunction| {
                if seen.insert(f.render()) {
                    out.push(f);
                }
            };
            for a in s.carrier().subsets() {
                for eps in values.iter().filter(|v| !v.is_top()) {
                    push(VFunction::theta_eps(s.carrier(), mode, a, eps));
                }
                push(adh[a.0 as usize].clone());
                push(cl[a.0 as usize].clone());
            }
            for y in 0..s.len() {
                push(s.row(Subset::singleton(y)));
            }
            out
        };
        let continuous = functions.iter().filter(|f| matrix_continuous(s, f)).cloned().collect();
        Context {
            s,
            star,
            adh,
            cl,
            values,
            functions,
            continuous,
            enumerable,
            prap: s.prap_reflection(),
            psap: s.psap_reflection(),
            ap: s.ap_reflection(),
            max_lattice,
        }
    }

    fn hull(&self, f: &VFunction) -> VFunction {
        self.star.apply(f)
    }

    fn continuous(&self, f: &VFunction) -> bool {
        self.s.is_continuous_to_v(f).expect("same carrier")
    }

    fn theta(&self, a: Subset) -> VFunction {
        self.s.theta(a)
    }

    fn r_closed(&self, a: Subset) -> bool {
        self.s.r_reflect().is_closed(a)
    }

    fn below_top(&self) -> impl Iterator<Item = &QuantaleValue> {
        self.values.iter().filter(|v| !v.is_top())
    }
}

/// `∀x, y: f(x) >= M(x, y) ⊗ f(y)`.
fn matrix_continuous(s: &CapSpace, f: &VFunction) -> bool {
    let m = s.singleton_matrix();
    (0..s.len()).all(|x| (0..s.len()).all(|y| &(m.get(x, y) * f.get(y)) <= f.get(x)))
}

type Instances = fn(&Context) -> Vec<Instance>;
type Holds = fn(&Context, &Instance) -> bool;

struct Check {
    name: &'static str,
    group: Group,
    instances: Instances,
    holds: Holds,
}

fn whole(_: &Context) -> Vec<Instance> {
    vec![Instance::Whole]
}

fn points(c: &Context) -> Vec<Instance> {
    (0..c.s.len()).map(|x| Instance::Set(Subset::singleton(x))).collect()
}

fn sets(c: &Context) -> Vec<Instance> {
    c.s.carrier().subsets().map(Instance::Set).collect()
}

fn nonempty_sets(c: &Context) -> Vec<Instance> {
    c.s.carrier().nonempty_subsets().map(Instance::Set).collect()
}

/// `(A, A ∪ {y})` for `y ∉ A`.
fn covers(c: &Context) -> Vec<Instance> {
    let n = c.s.len();
    c.s.carrier()
        .subsets()
        .flat_map(|a| (0..n).filter(move |&y| !a.contains(y)).map(move |y| Instance::Sets(a, a.with(y))))
        .collect()
}

fn nonempty_covers(c: &Context) -> Vec<Instance> {
    covers(c)
        .into_iter()
        .filter(|i| matches!(i, Instance::Sets(a, _) if !a.is_empty()))
        .collect()
}

fn set_pairs(c: &Context) -> Vec<Instance> {
    let all: Vec<Subset> = c.s.carrier().subsets().collect();
    all.iter()
        .flat_map(|&a| all.iter().filter(move |b| b.0 >= a.0).map(move |&b| Instance::Sets(a, b)))
        .collect()
}

fn sets_below_top(c: &Context) -> Vec<Instance> {
    c.s.carrier()
        .subsets()
        .flat_map(|a| c.below_top().map(move |v| Instance::SetValue(a, v.clone())))
        .collect()
}

fn functions(c: &Context) -> Vec<Instance> {
    c.functions.iter().cloned().map(Instance::Fun).collect()
}

fn function_thetas(c: &Context) -> Vec<Instance> {
    c.functions
        .iter()
        .take(MAX_PAIR_FUNCTIONS)
        .flat_map(|f| c.s.carrier().subsets().map(move |a| Instance::Funs(f.clone(), c.theta(a))))
        .collect()
}

fn function_values(c: &Context) -> Vec<Instance> {
    c.functions
        .iter()
        .take(MAX_TENSOR_FUNCTIONS)
        .flat_map(|f| c.values.iter().map(move |v| Instance::FunValue(f.clone(), v.clone())))
        .collect()
}

fn continuous_values(c: &Context) -> Vec<Instance> {
    c.continuous
        .iter()
        .take(MAX_TENSOR_FUNCTIONS)
        .flat_map(|f| c.values.iter().map(move |v| Instance::FunValue(f.clone(), v.clone())))
        .collect()
}

fn continuous_pairs(c: &Context) -> Vec<Instance> {
    let fs: Vec<&VFunction> = c.continuous.iter().take(MAX_PAIR_FUNCTIONS).collect();
    fs.iter()
        .enumerate()
        .flat_map(|(i, f)| fs[i..].iter().map(move |g| Instance::Funs((*f).clone(), (*g).clone())))
        .collect()
}

fn enumerable_sets(c: &Context) -> Vec<Instance> {
    if c.enumerable {
        sets(c)
    } else {
        Vec::new()
    }
}

fn frame_instances(c: &Context) -> Vec<Instance> {
    match c.s.mode() {
        QuantaleMode::Lukasiewicz(n) if lattice_size(c.s.len(), n, c.max_lattice).is_ok() => vec![Instance::Whole],
        _ => Vec::new(),
    }
}

fn skip_note(c: &Context, name: &str) -> Option<String> {
    match name {
        "thm.lower_regular_frame" if !c.enumerable => {
            Some(format!("needs |V^X| <= {MAX_ENUMERATED_FUNCTIONS} on a finite chain"))
        }
        "thm.frame_characterization" if frame_instances(c).is_empty() => {
            Some(format!("needs a finite chain with |V^X| <= {}", c.max_lattice))
        }
        _ => None,
    }
}

macro_rules! with {
    ($i:expr, $pat:pat => $body:expr) => {
        match $i {
            $pat => $body,
            _ => unreachable!("instance shape"),
        }
    };
}

fn checks() -> Vec<Check> {
    use Group::*;
    vec![
        Check {
            name: "axiom.centered",
            group: Law,
            instances: points,
            holds: |c, i| with!(i, Instance::Set(b) => c.s.lambda(*b, b.points().next().unwrap()).is_top()),
        },
        Check {
            name: "axiom.monotone",
            group: Law,
            instances: nonempty_covers,
            holds: |c, i| with!(i, Instance::Sets(a, b) => c.s.row(*b).le(&c.s.row(*a))),
        },
        Check {
            name: "closure.above_adherence",
            group: Law,
            instances: sets,
            holds: |c, i| with!(i, Instance::Set(a) => {
                let adh = &c.adh[a.0 as usize];
                c.theta(*a).le(adh) && adh.le(&c.cl[a.0 as usize])
            }),
        },
        Check {
            name: "closure.empty",
            group: Law,
            instances: whole,
            holds: |c, _| c.cl[0] == c.theta(Subset::EMPTY),
        },
        Check {
            name: "closure.monotone",
            group: Law,
            instances: covers,
            holds: |c, i| with!(i, Instance::Sets(a, b) => c.cl[a.0 as usize].le(&c.cl[b.0 as usize])),
        },
        Check {
            name: "closure.top_set",
            group: Law,
            instances: sets,
            holds: |c, i| with!(i, Instance::Set(a) => {
                let cl = &c.cl[a.0 as usize];
                &c.cl[cl.top_set().0 as usize] == cl
            }),
        },
        Check {
            name: "closure.union",
            group: Law,
            instances: set_pairs,
            holds: |c, i| with!(i, Instance::Sets(a, b) => {
                c.cl[a.union(*b).0 as usize] == c.cl[a.0 as usize].join(&c.cl[b.0 as usize]).unwrap()
            }),
        },
        Check {
            name: "continuity.join",
            group: Law,
            instances: continuous_pairs,
            holds: |c, i| with!(i, Instance::Funs(f, g) => c.continuous(&f.join(g).unwrap())),
        },
        Check {
            name: "continuity.matrix_form",
            group: Law,
            instances: functions,
            holds: |c, i| with!(i, Instance::Fun(f) => c.continuous(f) == matrix_continuous(c.s, f)),
        },
        Check {
            name: "continuity.meet",
            group: Law,
            instances: continuous_pairs,
            holds: |c, i| with!(i, Instance::Funs(f, g) => c.continuous(&f.meet(g).unwrap())),
        },
        Check {
            name: "continuity.tensor_const",
            group: Law,
            instances: continuous_values,
            holds: |c, i| with!(i, Instance::FunValue(f, v) => !c.continuous(f) || c.continuous(&f.tensor_const(v).unwrap())),
        },
        Check {
            name: "hull.continuous",
            group: Law,
            instances: functions,
            holds: |c, i| with!(i, Instance::Fun(f) => c.continuous(&c.hull(f))),
        },
        Check {
            name: "hull.development",
            group: Law,
            instances: functions,
            holds: |c, i| with!(i, Instance::Fun(f) => c.s.hull_via_development(f).unwrap() == c.hull(f)),
        },
        Check {
            name: "hull.expansive",
            group: Law,
            instances: functions,
            holds: |c, i| with!(i, Instance::Fun(f) => f.le(&c.hull(f))),
        },
        Check {
            name: "hull.idempotent",
            group: Law,
            instances: functions,
            holds: |c, i| with!(i, Instance::Fun(f) => { let h = c.hull(f); c.hull(&h) == h }),
        },
        Check {
            name: "hull.join",
            group: Law,
            instances: function_thetas,
            holds: |c, i| with!(i, Instance::Funs(f, g) => {
                c.hull(&f.join(g).unwrap()) == c.hull(f).join(&c.hull(g)).unwrap()
            }),
        },
        Check {
            name: "hull.tensor_const",
            group: Law,
            instances: function_values,
            holds: |c, i| with!(i, Instance::FunValue(f, v) => {
                c.hull(&f.tensor_const(v).unwrap()) == c.hull(f).tensor_const(v).unwrap()
            }),
        },
        Check {
            name: "reflect.ap_is_approach",
            group: Law,
            instances: whole,
            holds: |c, _| c.ap.is_approach() && c.prap.is_prap() && c.psap.is_psap(),
        },
        Check {
            name: "reflect.identity_contraction",
            group: Law,
            instances: whole,
            holds: |c, _| {
                let id = PointMap::identity(c.s.carrier());
                CapSpace::is_contraction(&id, c.s, &c.ap).unwrap()
                    && CapSpace::is_contraction(&id, c.s, &c.prap).unwrap()
            },
        },
        Check {
            name: "reflect.idempotent",
            group: Law,
            instances: whole,
            holds: |c, _| {
                c.prap.prap_reflection() == c.prap
                    && c.psap.psap_reflection() == c.psap
                    && c.ap.ap_reflection() == c.ap
            },
        },
        Check {
            name: "reflect.order",
            group: Law,
            instances: whole,
            holds: |c, _| c.s.le(&c.prap) && c.prap.le(&c.ap),
        },
        Check {
            name: "reflect.same_adherence",
            group: Law,
            instances: sets,
            holds: |c, i| with!(i, Instance::Set(a) => c.prap.adh_set(*a) == c.adh[a.0 as usize]),
        },
        Check {
            name: "reflect.same_continuous",
            group: Law,
            instances: functions,
            holds: |c, i| with!(i, Instance::Fun(f) => c.continuous(f) == c.ap.is_continuous_to_v(f).unwrap()),
        },
        Check {
            name: "lemma.theta_eps_iff_tau_eps_closed",
            group: Theorem,
            instances: sets_below_top,
            holds: |c, i| with!(i, Instance::SetValue(a, eps) => {
                c.continuous(&c.s.theta_eps(*a, eps).unwrap()) == c.s.is_tau_eps_closed(*a, eps).unwrap()
            }),
        },
        Check {
            name: "thm.adh_continuous_iff_diagonal",
            group: Theorem,
            instances: nonempty_sets,
            holds: |c, i| with!(i, Instance::Set(a) => {
                let cont = c.continuous(&c.adh[a.0 as usize]);
                let full = c.s.diagonal_violation_over(*a, &c.values).is_none();
                let reduced = c.s.diagonal_violation(*a).is_none();
                cont == full && full == reduced
            }),
        },
        Check {
            name: "thm.approach_iff_prap_and_adh_continuous",
            group: Theorem,
            instances: whole,
            holds: |c, _| {
                let adh_cont = c.s.carrier().nonempty_subsets().all(|a| c.continuous(&c.adh[a.0 as usize]));
                c.s.is_approach() == (c.s.is_prap() && adh_cont)
            },
        },
        Check {
            name: "thm.adh_filter_closure",
            group: Theorem,
            instances: |c| if c.s.is_approach() { whole(c) } else { Vec::new() },
            holds: |c, _| c.s.adh_filter_closure_check().unwrap_or(false),
        },
        Check {
            name: "thm.closure_of_adherence",
            group: Theorem,
            instances: sets,
            holds: |c, i| with!(i, Instance::Set(a) => c.hull(&c.adh[a.0 as usize]) == c.cl[a.0 as usize]),
        },
        Check {
            name: "thm.frame_characterization",
            group: Theorem,
            instances: frame_instances,
            holds: |c, _| {
                let Ok(frame) = lim_from_cap_bounded(c.s, c.max_lattice) else { return false };
                let r = c.s.r_reflect();
                let closed: Vec<VFunction> =
                    c.s.carrier().subsets().filter(|a| r.is_closed(*a)).map(|a| c.theta(a)).collect();
                let found = frame.closed_elements();
                frame.is_vcap()
                    && cap_from_lim(&frame).as_ref() == Ok(c.s)
                    && frame.is_vprap() == c.s.is_prap()
                    && frame.is_vap() == c.s.is_approach()
                    && found.len() == closed.len()
                    && closed.iter().all(|t| found.contains(t))
            },
        },
        Check {
            name: "thm.lower_regular_frame",
            group: Theorem,
            instances: enumerable_sets,
            holds: |c, i| with!(i, Instance::Set(a) => {
                let theta = c.theta(*a);
                let above: Vec<&VFunction> = c.continuous.iter().filter(|g| theta.le(g)).collect();
                let meet = (0..c.s.len())
                    .map(|x| c.s.mode().meet(above.iter().map(|g| g.get(x))))
                    .collect();
                VFunction::new(c.s.carrier(), c.s.mode(), meet).unwrap() == c.cl[a.0 as usize]
            }),
        },
        Check {
            name: "thm.matrix_characterization",
            group: Theorem,
            instances: whole,
            holds: |c, _| {
                let m = c.s.singleton_matrix();
                c.s.is_approach() == (c.s.is_prap() && m.is_reflexive() && m.is_transitive())
            },
        },
        Check {
            name: "thm.psap_iff_prap",
            group: Theorem,
            instances: whole,
            holds: |c, _| c.s.is_psap() == c.s.is_prap(),
        },
        Check {
            name: "thm.theta_continuous_iff_closed",
            group: Theorem,
            instances: sets,
            holds: |c, i| with!(i, Instance::Set(a) => c.continuous(&c.theta(*a)) == c.r_closed(*a)),
        },
        Check {
            name: "thm.theta_eps_continuous_iff_closed",
            group: Theorem,
            instances: sets,
            holds: |c, i| with!(i, Instance::Set(a) => {
                let all_levels = c
                    .below_top()
                    .filter(|e| !e.is_bottom())
                    .all(|e| c.continuous(&c.s.theta_eps(*a, e).unwrap()));
                all_levels == c.r_closed(*a)
            }),
        },
    ]
}

impl Instance {
    fn witness(&self, s: &CapSpace) -> Vec<(String, String)> {
        let c = s.carrier();
        let kv = |k: &str, v: String| (k.to_string(), v);
        match self {
            Instance::Whole => Vec::new(),
            Instance::Set(a) => vec![kv("set", c.render(*a))],
            Instance::Sets(a, b) => vec![kv("set", c.render(*a)), kv("set2", c.render(*b))],
            Instance::SetValue(a, v) => vec![kv("set", c.render(*a)), kv("value", v.to_string())],
            Instance::Fun(f) => vec![kv("f", f.render())],
            Instance::Funs(f, g) => vec![kv("f", f.render()), kv("g", g.render())],
            Instance::FunValue(f, v) => vec![kv("f", f.render()), kv("value", v.to_string())],
        }
    }

    fn from_witness(s: &CapSpace, witness: &[(String, String)]) -> Result<Instance> {
        let get = |k: &str| witness.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
        let set = |t: &str| s.carrier().parse_subset(t);
        let fun = |t: &str| VFunction::parse(s.carrier(), s.mode(), t);
        let value = |t: &str| s.mode().parse_value(t);
        Ok(match (get("set"), get("set2"), get("f"), get("g"), get("value")) {
            (None, None, None, None, None) => Instance::Whole,
            (Some(a), None, None, None, None) => Instance::Set(set(a)?),
            (Some(a), Some(b), None, None, None) => Instance::Sets(set(a)?, set(b)?),
            (Some(a), None, None, None, Some(v)) => Instance::SetValue(set(a)?, value(v)?),
            (None, None, Some(f), None, None) => Instance::Fun(fun(f)?),
            (None, None, Some(f), Some(g), None) => Instance::Funs(fun(f)?, fun(g)?),
            (None, None, Some(f), None, Some(v)) => Instance::FunValue(fun(f)?, value(v)?),
            _ => return Err(Error::InvalidArgument("unrecognised witness keys".into())),
        })
    }

    fn has_function(&self) -> bool {
        matches!(self, Instance::Fun(_) | Instance::Funs(..) | Instance::FunValue(..))
    }

    fn same_shape(&self, other: &Instance) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

/// Names of the checks in a group, sorted.
pub fn check_names(group: Option<Group>) -> Vec<&'static str> {
    let mut names: Vec<_> = checks().into_iter().filter(|c| group.is_none_or(|g| c.group == g)).map(|c| c.name).collect();
    names.sort_unstable();
    names
}

/// Runs the checks of `group` (all when `None`), sorted by name.
pub fn run(space: &CapSpace, group: Option<Group>) -> Vec<Outcome> {
    run_bounded(space, group, DEFAULT_MAX_LATTICE)
}

/// [`run`] with an explicit bound on frame size.
pub fn run_bounded(space: &CapSpace, group: Option<Group>, max_lattice: usize) -> Vec<Outcome> {
    let ctx = Context::new(space, max_lattice);
    let mut out: Vec<Outcome> = checks()
        .into_iter()
        .filter(|c| group.is_none_or(|g| c.group == g))
        .map(|check| {
            let instances = (check.instances)(&ctx);
            let failing = instances.iter().position(|i| !(check.holds)(&ctx, i));
            let checked = failing.map_or(instances.len(), |p| p + 1);
            let note = if instances.is_empty() {
                skip_note(&ctx, check.name).or_else(|| Some("not applicable".into()))
            } else if !ctx.enumerable && instances[0].has_function() {
                Some(format!("over a sample of {} functions", ctx.functions.len()))
            } else {
                None
            };
            Outcome {
                name: check.name,
                group: check.group,
                pass: failing.is_none(),
                checked,
                witness: failing.map(|p| instances[p].witness(space)).unwrap_or_default(),
                note,
            }
        })
        .collect();
    out.sort_by_key(|o| o.name);
    out
}

/// Re-evaluates the named check on a witness; `true` if it still fails.
pub fn replay(space: &CapSpace, name: &str, witness: &[(String, String)]) -> Result<bool> {
    let check = checks()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{name}`")))?;
    let instance = Instance::from_witness(space, witness)?;
    let ctx = Context::new(space, DEFAULT_MAX_LATTICE);
    let shape = (check.instances)(&ctx);
    if let Some(sample) = shape.first() {
        if !sample.same_shape(&instance) {
            return Err(Error::InvalidArgument(format!("witness does not fit check `{name}`")));
        }
    }
    Ok(!(check.holds)(&ctx, &instance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::fixtures::{k3, n2};
    use crate::cap::from_metric;
    use crate::finset::Carrier;
    use num_rational::BigRational;

    fn mline() -> CapSpace {
        let pts: Vec<BigRational> = [1, 2, 4].iter().map(|&p| BigRational::from_integer(p.into())).collect();
        from_metric(&pts, QuantaleMode::Lukasiewicz(8)).unwrap()
    }

    #[test]
    fn outcomes_are_sorted_and_complete() {
        let out = run(&k3(), None);
        let names: Vec<_> = out.iter().map(|o| o.name).collect();
        assert_eq!(names, check_names(None));
        assert!(out.iter().all(|o| o.pass), "{:?}", out.iter().filter(|o| !o.pass).collect::<Vec<_>>());
    }

    #[test]
    fn mline_passes_everything() {
        for o in run(&mline(), None) {
            assert!(o.pass, "{} failed at {:?}", o.name, o.witness);
        }
    }

    #[test]
    fn unit_mode_runs() {
        for o in run(&n2(), Some(Group::Theorem)) {
            assert!(o.pass, "{} failed at {:?}", o.name, o.witness);
        }
    }

    #[test]
    fn level_functions_in_a_coarse_chain() {
        // a({y}, x) is one step above bottom, so every θ^ε with ε above
        // bottom is continuous although {y} is not r-closed.
        let c = Carrier::new(["x", "y"]).unwrap();
        let mode = QuantaleMode::Lukasiewicz(4);
        let s = CapSpace::new(&c, mode, |b, x| match (b.0, x) {
            (0b01, 0) | (0b10, 1) => mode.top(),
            (0b10, 0) => mode.chain(3).unwrap(),
            _ => mode.bottom(),
        })
        .unwrap();
        let out = run(&s, Some(Group::Theorem));
        let o = out.iter().find(|o| o.name == "thm.theta_eps_continuous_iff_closed").unwrap();
        assert!(!o.pass);
        assert_eq!(o.witness, vec![("set".to_string(), "{y}".to_string())]);
        assert!(replay(&s, o.name, &o.witness).unwrap());
        assert!(out.iter().filter(|o| o.name != "thm.theta_eps_continuous_iff_closed").all(|o| o.pass));
    }

    #[test]
    fn replay_rejects_mismatched_witnesses() {
        let s = k3();
        assert!(!replay(&s, "closure.union", &[("set".into(), "{p}".into()), ("set2".into(), "{r}".into())]).unwrap());
        assert!(replay(&s, "closure.union", &[("f".into(), "p=0".into())]).is_err());
        assert!(replay(&s, "no.such.check", &[]).is_err());
    }
}
