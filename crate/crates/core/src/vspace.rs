//! The approach structure of `V` itself.
//!
//! For a filter `F` on `V`, `λ_V(F)(v) = v ⊘ liminf_{F#} id`. On a principal
//! filter `B↑` this is `v ⊘ ⋁B`, and the adherence of a nonempty `A ⊆ V` has
//! the closed form `adh_V A(v) = v ⊘ ⋀A`. The unit interval is infinite, so
//! in unit-rational mode only these closed forms on caller-supplied finite
//! sets are available; a finite chain is realized as a [`CapSpace`].

use crate::cap::CapSpace;
use crate::error::{Error, Result};
use crate::finset::Carrier;
use crate::quantale::{QuantaleMode, QuantaleValue};

fn common_mode(values: &[QuantaleValue], v: &QuantaleValue) -> Result<QuantaleMode> {
    let mode = v.mode();
    for b in values {
        mode.check(b.mode())?;
    }
    Ok(mode)
}

/// `λ_V(B↑)(v) = v ⊘ ⋁B`.
pub fn lambda_v(base: &[QuantaleValue], v: &QuantaleValue) -> Result<QuantaleValue> {
    if base.is_empty() {
        return Err(Error::EmptySet("filter base in V"));
    }
    let mode = common_mode(base, v)?;
    Ok(v / &mode.join(base))
}

/// `adh_V A(v) = v ⊘ ⋀A`.
pub fn adh_v(a: &[QuantaleValue], v: &QuantaleValue) -> Result<QuantaleValue> {
    if a.is_empty() {
        return Err(Error::EmptySet("subset of V"));
    }
    let mode = common_mode(a, v)?;
    Ok(v / &mode.meet(a))
}

/// Carrier naming the chain elements by their distances, `0` (top) first.
pub fn chain_carrier(mode: QuantaleMode) -> Result<Carrier> {
    match mode {
        QuantaleMode::Lukasiewicz(n) => Carrier::new((0..=n).map(|d| d.to_string())),
        QuantaleMode::UnitRational => Err(Error::Unsupported("unit-rational V is infinite".into())),
    }
}

/// Chain element at a carrier index of [`chain_carrier`].
pub fn chain_point(mode: QuantaleMode, index: usize) -> QuantaleValue {
    mode.chain(index as u32).expect("index within the chain")
}

/// `(V, λ_V)` as a space on the finite chain.
pub fn v_as_cap(mode: QuantaleMode) -> Result<CapSpace> {
    let carrier = chain_carrier(mode)?;
    CapSpace::new(&carrier, mode, |b, v| {
        let base: Vec<QuantaleValue> = b.points().map(|i| chain_point(mode, i)).collect();
        lambda_v(&base, &chain_point(mode, v)).expect("nonempty base")
    })
}
