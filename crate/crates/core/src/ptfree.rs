//! Finite convergence frames `L = V^X` over a finite chain.
//!
//! A frame stores `Lim(m)`, the limit of the principal filter `↑m`, for every
//! `m ∈ L`. Since `↑m ⊆ ↑m'` whenever `m' <= m`, `Lim` is antitone:
//! `m' <= m` implies `Lim(m) <= Lim(m')`. The degenerate filter `↑⊥` is
//! given the limit top everywhere; every check whose verdict could depend on
//! that convention says so in its documentation.
//!
//! Elements are coded in base `n + 1` with one digit per point, the digit
//! being the distance of the value, so code 0 is top and the last code is
//! bottom.

use crate::cap::CapSpace;
use crate::conv::FiniteConvergence;
use crate::error::{Error, Result};
use crate::finset::{Carrier, SetFamily, Subset};
use crate::quantale::QuantaleMode;
use crate::vfunc::VFunction;
use crate::vspace::chain_carrier;

/// Default bound on `|L|`.
pub const DEFAULT_MAX_LATTICE: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvFrame {
    carrier: Carrier,
    n: u32,
    /// Row-major by element code: distance of `Lim(m)(x)`.
    lim: Vec<u32>,
}

/// A failed frame law, with elements as witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameViolation {
    /// `Lim(m) != Lim(m**)`.
    NotStarStarRegular { m: VFunction },
    /// `frame_adh(l)(x) < l(x)`.
    NotCentered { l: VFunction, x: usize },
    /// `Lim(m1 ∨ m2)(x) != (Lim(m1) ∧ Lim(m2))(x)`.
    NotPrap { m1: VFunction, m2: VFunction, x: usize },
    /// `Lim(g)(x) > h(x) ⊘ ⋁_{y ∈ supp g} h(y)` for `h = frame_adh(f)`.
    NotAp { f: VFunction, g: VFunction, x: usize },
}

/// Size of `V^X`, if within `max`.
pub fn lattice_size(points: usize, n: u32, max: usize) -> Result<usize> {
    let size = (n as usize + 1)
        .checked_pow(points as u32)
        .filter(|&s| s <= max)
        .ok_or_else(|| Error::TooLarge(format!("frame of ({n}+1)^{points} elements exceeds {max}")))?;
    Ok(size)
}

fn chain_n(mode: QuantaleMode) -> Result<u32> {
    match mode {
        QuantaleMode::Lukasiewicz(n) => Ok(n),
        QuantaleMode::UnitRational => Err(Error::Unsupported("frames need a finite chain".into())),
    }
}

/// `ℓ*`: top where `ℓ` is bottom, bottom elsewhere.
pub fn pseudocomplement(l: &VFunction) -> VFunction {
    let empty = l.support().complement(l.len());
    VFunction::theta(l.carrier(), l.mode(), empty)
}

/// `ℓ** = θ_{supp ℓ}`.
pub fn star_star(l: &VFunction) -> VFunction {
    pseudocomplement(&pseudocomplement(l))
}

impl ConvFrame {
    /// Frame from `Lim` given as a function on elements, with the default
    /// size bound. `Lim(⊥)` must be top and `Lim` must be antitone.
    pub fn new(carrier: &Carrier, mode: QuantaleMode, lim: impl Fn(&VFunction) -> VFunction) -> Result<Self> {
        Self::with_max_lattice(carrier, mode, DEFAULT_MAX_LATTICE, lim)
    }

    pub fn with_max_lattice(
        carrier: &Carrier,
        mode: QuantaleMode,
        max: usize,
        lim: impl Fn(&VFunction) -> VFunction,
    ) -> Result<Self> {
        let n = chain_n(mode)?;
        let size = lattice_size(carrier.len(), n, max)?;
        let k = carrier.len();
        let mut frame = ConvFrame { carrier: carrier.clone(), n, lim: Vec::with_capacity(size * k) };
        for code in 0..size {
            let value = lim(&frame.element(code));
            carrier.check(value.carrier())?;
            mode.check(value.mode())?;
            frame.lim.extend(value.values().iter().map(|v| v.dist().expect("chain value")));
        }
        frame.check_contract()?;
        Ok(frame)
    }

    fn check_contract(&self) -> Result<()> {
        let k = self.len();
        let bottom = self.size() - 1;
        if let Some(x) = (0..k).find(|&x| self.lim_d(bottom)[x] != 0) {
            return Err(Error::Axiom(format!("Lim(⊥) must be top, but is not at {}", self.carrier.name(x))));
        }
        // Covering pairs suffice: lowering one digit by one step.
        for code in 0..self.size() {
            let digits = self.digits(code);
            for (x, &d) in digits.iter().enumerate() {
                if d < self.n {
                    let lower = code + self.weight(x);
                    if let Some(y) = (0..k).find(|&y| self.lim_d(code)[y] < self.lim_d(lower)[y]) {
                        return Err(Error::Axiom(format!(
                            "Lim is not antitone: m = {} lies above {} but Lim(m)({}) is larger",
                            self.element(code),
                            self.element(lower),
                            self.carrier.name(y)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn mode(&self) -> QuantaleMode {
        QuantaleMode::Lukasiewicz(self.n)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// `|L|`.
    pub fn size(&self) -> usize {
        self.lim.len() / self.len().max(1)
    }

    fn weight(&self, x: usize) -> usize {
        (self.n as usize + 1).pow(x as u32)
    }

    fn digits(&self, mut code: usize) -> Vec<u32> {
        let base = self.n as usize + 1;
        (0..self.len())
            .map(|_| {
                let d = (code % base) as u32;
                code /= base;
                d
            })
            .collect()
    }

    fn code(&self, digits: &[u32]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * (self.n as usize + 1) + d as usize)
    }

    fn code_of(&self, l: &VFunction) -> Result<usize> {
        self.carrier.check(l.carrier())?;
        self.mode().check(l.mode())?;
        Ok(self.code(&l.values().iter().map(|v| v.dist().expect("chain value")).collect::<Vec<_>>()))
    }

    fn theta_code(&self, a: Subset) -> usize {
        self.code(&(0..self.len()).map(|x| if a.contains(x) { 0 } else { self.n }).collect::<Vec<_>>())
    }

    fn support_of(&self, code: usize) -> Subset {
        Subset::from_points(self.digits(code).into_iter().enumerate().filter(|&(_, d)| d < self.n).map(|(x, _)| x))
    }

    fn lim_d(&self, code: usize) -> &[u32] {
        let k = self.len();
        &self.lim[code * k..(code + 1) * k]
    }

    fn to_function(&self, d: &[u32]) -> VFunction {
        VFunction::from_dists(&self.carrier, self.mode(), d).expect("distances within the chain")
    }

    /// Element with the given code.
    pub fn element(&self, code: usize) -> VFunction {
        self.to_function(&self.digits(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = VFunction> + '_ {
        (0..self.size()).map(|c| self.element(c))
    }

    /// `lim ↑m`.
    pub fn lim(&self, m: &VFunction) -> Result<VFunction> {
        Ok(self.to_function(self.lim_d(self.code_of(m)?)))
    }

    /// Join of `Lim(m)` over the elements with support exactly `B`, by mask.
    fn support_joins(&self) -> Vec<Vec<u32>> {
        let k = self.len();
        let mut joins = vec![vec![self.n; k]; 1 << k];
        for code in 0..self.size() {
            let j = &mut joins[self.support_of(code).0 as usize];
            for (acc, &d) in j.iter_mut().zip(self.lim_d(code)) {
                *acc = (*acc).min(d);
            }
        }
        joins
    }

    /// `frame_adh` as a function of `supp ℓ`, since `m ∧ ℓ != ⊥` only
    /// depends on the supports.
    fn adh_by_support(&self) -> Vec<Vec<u32>> {
        let k = self.len();
        let joins = self.support_joins();
        (0..1u64 << k)
            .map(|s| {
                let mut acc = vec![self.n; k];
                for (b, j) in joins.iter().enumerate() {
                    if Subset(b as u64).meets(Subset(s)) {
                        for (a, &d) in acc.iter_mut().zip(j) {
                            *a = (*a).min(d);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// `adh ℓ = ⋁{Lim(m) : m ∧ ℓ != ⊥}`; bottom for `ℓ = ⊥`.
    pub fn frame_adh(&self, l: &VFunction) -> Result<VFunction> {
        self.code_of(l)?;
        Ok(self.to_function(&self.adh_by_support()[l.support().0 as usize]))
    }

    /// First `m` with `Lim(m) != Lim(m**)`.
    pub fn star_star_violation(&self) -> Option<FrameViolation> {
        (0..self.size())
            .find(|&c| self.lim_d(c) != self.lim_d(self.theta_code(self.support_of(c))))
            .map(|c| FrameViolation::NotStarStarRegular { m: self.element(c) })
    }

    pub fn is_star_star_regular(&self) -> bool {
        self.star_star_violation().is_none()
    }

    /// First `ℓ, x` with `frame_adh(ℓ)(x) < ℓ(x)`.
    pub fn centered_violation(&self) -> Option<FrameViolation> {
        let adh = self.adh_by_support();
        for code in 0..self.size() {
            let digits = self.digits(code);
            let a = &adh[self.support_of(code).0 as usize];
            if let Some(x) = (0..self.len()).find(|&x| a[x] > digits[x]) {
                return Some(FrameViolation::NotCentered { l: self.element(code), x });
            }
        }
        None
    }

    pub fn is_centered(&self) -> bool {
        self.centered_violation().is_none()
    }

    pub fn vcap_violation(&self) -> Option<FrameViolation> {
        self.star_star_violation().or_else(|| self.centered_violation())
    }

    /// The frame comes from a space: `**`-regular and centered.
    pub fn is_vcap(&self) -> bool {
        self.vcap_violation().is_none()
    }

    /// [`ConvFrame::vcap_violation`], then `Lim(m1 ∨ m2) = Lim(m1) ∧ Lim(m2)`.
    /// For a `**`-regular frame `Lim` factors through supports, so pairs of
    /// indicator functions cover every pair of elements. Pairs involving
    /// `⊥` hold by the top convention on `Lim(⊥)`.
    pub fn vprap_violation(&self) -> Option<FrameViolation> {
        if let Some(v) = self.vcap_violation() {
            return Some(v);
        }
        let k = self.len();
        for b1 in 0..1u64 << k {
            for b2 in b1..1u64 << k {
                let l1 = self.lim_d(self.theta_code(Subset(b1)));
                let l2 = self.lim_d(self.theta_code(Subset(b2)));
                let l12 = self.lim_d(self.theta_code(Subset(b1 | b2)));
                if let Some(x) = (0..k).find(|&x| l12[x] != l1[x].max(l2[x])) {
                    return Some(FrameViolation::NotPrap {
                        m1: self.element(self.theta_code(Subset(b1))),
                        m2: self.element(self.theta_code(Subset(b2))),
                        x,
                    });
                }
            }
        }
        None
    }

    pub fn is_vprap(&self) -> bool {
        self.vprap_violation().is_none()
    }

    /// [`ConvFrame::vprap_violation`], then for all `f, g`:
    /// `Lim(g) <= h ⊘ ⋁_{x ∈ supp g} h(x)` with `h = frame_adh(f)`. Both
    /// sides depend on `f` and `g` only through their supports. `g = ⊥`
    /// holds by the top convention on `Lim(⊥)`.
    pub fn vap_violation(&self) -> Option<FrameViolation> {
        if let Some(v) = self.vprap_violation() {
            return Some(v);
        }
        let k = self.len();
        let adh = self.adh_by_support();
        for (s, h) in adh.iter().enumerate() {
            for b in 1..1u64 << k {
                let sup = Subset(b).points().map(|y| h[y]).min().expect("nonempty");
                let lg = self.lim_d(self.theta_code(Subset(b)));
                // In distances, y ⊘ v is max(y - v, 0).
                if let Some(x) = (0..k).find(|&x| lg[x] < h[x].saturating_sub(sup)) {
                    return Some(FrameViolation::NotAp {
                        f: self.element(self.theta_code(Subset(s as u64))),
                        g: self.element(self.theta_code(Subset(b))),
                        x,
                    });
                }
            }
        }
        None
    }

    pub fn is_vap(&self) -> bool {
        self.vap_violation().is_none()
    }

    /// `{ℓ : m <= ℓ, m != ⊥ ⇒ Lim(m) <= ℓ}`. `Lim` is antitone, so it is
    /// enough to test the atoms below `ℓ`. In particular `⊥` is closed.
    pub fn closed_elements(&self) -> Vec<VFunction> {
        let k = self.len();
        if self.n == 0 {
            return self.elements().collect();
        }
        let atoms: Vec<&[u32]> = (0..k)
            .map(|x| {
                let mut d = vec![self.n; k];
                d[x] = self.n - 1;
                self.lim_d(self.code(&d))
            })
            .collect();
        (0..self.size())
            .filter(|&c| {
                let digits = self.digits(c);
                self.support_of(c)
                    .points()
                    .all(|x| (0..k).all(|y| atoms[x][y] >= digits[y]))
            })
            .map(|c| self.element(c))
            .collect()
    }

    /// `f★↑g = {A ⊆ V : f(x) ∈ A for every x ∈ supp g}`, over the chain
    /// carrier of [`crate::vspace::chain_carrier`].
    pub fn f_star(&self, f: &VFunction, g: &VFunction) -> Result<SetFamily> {
        self.code_of(f)?;
        self.code_of(g)?;
        let chain = chain_carrier(self.mode())?;
        let needed = Subset::from_points(g.support().points().map(|x| f.get(x).dist().expect("chain") as usize));
        SetFamily::new(&chain, chain.subsets().filter(|a| needed.is_subset_of(*a)))
    }

    fn describe(&self, v: &FrameViolation) -> String {
        match v {
            FrameViolation::NotStarStarRegular { m } => format!("Lim(m) != Lim(m**) at m = {m}"),
            FrameViolation::NotCentered { l, x } => {
                format!("adh(l) < l at {} for l = {l}", self.carrier.name(*x))
            }
            FrameViolation::NotPrap { m1, m2, x } => {
                format!("Lim(m1 ∨ m2) != Lim(m1) ∧ Lim(m2) at {} for m1 = {m1}, m2 = {m2}", self.carrier.name(*x))
            }
            FrameViolation::NotAp { f, g, x } => {
                format!("Lim(g) exceeds adh(f) ⊘ sup at {} for f = {f}, g = {g}", self.carrier.name(*x))
            }
        }
    }
}

/// `Lim(m) = λ(supp(m)↑)`, with `Lim(⊥)` top.
pub fn lim_from_cap(space: &CapSpace) -> Result<ConvFrame> {
    lim_from_cap_bounded(space, DEFAULT_MAX_LATTICE)
}

pub fn lim_from_cap_bounded(space: &CapSpace, max: usize) -> Result<ConvFrame> {
    let mode = space.mode();
    ConvFrame::with_max_lattice(space.carrier(), mode, max, |m| {
        let b = m.support();
        if b.is_empty() {
            VFunction::constant(space.carrier(), mode, mode.top())
        } else {
            space.row(b)
        }
    })
}

/// `λ(B↑) = Lim(θ_B)`, for a `**`-regular centered frame.
pub fn cap_from_lim(frame: &ConvFrame) -> Result<CapSpace> {
    if let Some(v) = frame.vcap_violation() {
        return Err(Error::Precondition(frame.describe(&v)));
    }
    let mode = frame.mode();
    CapSpace::new(frame.carrier(), mode, |b, x| {
        mode.chain(frame.lim_d(frame.theta_code(b))[x]).expect("within chain")
    })
}

/// The convergence on `X × V` with `(x, v) ∈ lim B↑` iff
/// `λ(p_X(B)↑)(x) > v` for `v` below top, and `λ(p_X(B)↑)(x) = top` for
/// `v` top. Point `(x, v)` is named `x@d` with `d` the distance of `v`.
pub fn point_space(space: &CapSpace) -> Result<FiniteConvergence> {
    let n = chain_n(space.mode())?;
    let mode = space.mode();
    let width = n as usize + 1;
    let k = space.len();
    let names = (0..k).flat_map(|x| (0..width).map(move |d| (x, d)));
    let carrier = Carrier::new(names.map(|(x, d)| format!("{}@{d}", space.carrier().name(x))))?;
    if carrier.len() > crate::conv::MAX_CONV_POINTS {
        return Err(Error::TooLarge(format!("{} points in X × V", carrier.len())));
    }
    FiniteConvergence::new(&carrier, |b| {
        let proj = Subset::from_points(b.points().map(|i| i / width));
        Subset::from_points((0..k * width).filter(|&i| {
            let (x, d) = (i / width, i % width);
            let v = mode.chain(d as u32).expect("within chain");
            let a = space.lambda(proj, x);
            if v.is_top() {
                a.is_top()
            } else {
                a > &v
            }
        }))
    })
}
