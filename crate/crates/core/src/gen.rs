//! Seeded random instances on finite chains.
//!
//! Singleton rows are drawn i.i.d. uniformly over the chain with the
//! diagonal forced to top, and larger rows are completed by the meet of the
//! singleton rows. [`SpaceKind::Plain`] then walks the larger bases in order
//! of increasing size and, independently per entry, pushes some entries
//! further down; each row is first capped by its immediate subsets so the
//! result stays monotone. [`SpaceKind::Ap`] applies the approach reflection.
//!
//! Output is deterministic in the seed for this implementation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cap::CapSpace;
use crate::error::{Error, Result};
use crate::finset::{Carrier, Subset};
use crate::quantale::{QuantaleMode, QuantaleValue};
use crate::vfunc::{PointMap, VFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    /// Possibly not pre-approach.
    Plain,
    Prap,
    Ap,
}

/// Chance that an entry of a larger row is pushed down in [`SpaceKind::Plain`].
const DEGRADE_PROBABILITY: f64 = 0.25;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn chain_mode(mode: QuantaleMode) -> Result<u32> {
    match mode {
        QuantaleMode::Lukasiewicz(n) => Ok(n),
        QuantaleMode::UnitRational => Err(Error::Unsupported("random instances need a finite chain".into())),
    }
}

/// Uniform element of a finite chain.
pub fn random_value<R: Rng>(rng: &mut R, mode: QuantaleMode) -> Result<QuantaleValue> {
    let n = chain_mode(mode)?;
    mode.chain(rng.gen_range(0..=n))
}

/// Uniform `V`-function on a finite chain.
pub fn random_function<R: Rng>(rng: &mut R, carrier: &Carrier, mode: QuantaleMode) -> Result<VFunction> {
    let values = (0..carrier.len()).map(|_| random_value(rng, mode)).collect::<Result<_>>()?;
    VFunction::new(carrier, mode, values)
}

/// Uniform map between carriers.
pub fn random_map<R: Rng>(rng: &mut R, domain: &Carrier, codomain: &Carrier) -> PointMap {
    let images = (0..domain.len()).map(|_| rng.gen_range(0..codomain.len())).collect();
    PointMap::new(domain, codomain, images).expect("images are in range")
}

/// Random space on `carrier` in a finite-chain mode.
pub fn random_space_on<R: Rng>(rng: &mut R, carrier: &Carrier, mode: QuantaleMode, kind: SpaceKind) -> Result<CapSpace> {
    let n = chain_mode(mode)?;
    let k = carrier.len();
    let mut singleton = vec![vec![mode.top(); k]; k];
    for (y, row) in singleton.iter_mut().enumerate() {
        for (x, v) in row.iter_mut().enumerate() {
            if x != y {
                *v = mode.chain(rng.gen_range(0..=n))?;
            }
        }
    }
    let mut rows: Vec<Vec<QuantaleValue>> = vec![Vec::new(); 1 << k];
    let mut bases: Vec<Subset> = carrier.nonempty_subsets().collect();
    bases.sort_by_key(|b| (b.len(), b.0));
    for b in bases {
        let row: Vec<QuantaleValue> = if b.len() == 1 {
            singleton[b.points().next().expect("singleton")].clone()
        } else {
            (0..k)
                .map(|x| {
                    let mut v = mode.meet(b.points().map(|y| &singleton[y][x]));
                    if kind == SpaceKind::Plain {
                        v = b.points().fold(v, |acc, y| {
                            let smaller = Subset(b.0 & !(1 << y));
                            acc.meet(&rows[smaller.0 as usize][x])
                        });
                        if rng.gen_bool(DEGRADE_PROBABILITY) {
                            let d = v.dist().expect("chain value");
                            v = mode.chain(rng.gen_range(d..=n)).expect("within chain");
                        }
                    }
                    v
                })
                .collect()
        };
        rows[b.0 as usize] = row;
    }
    let space = CapSpace::new(carrier, mode, |b, x| rows[b.0 as usize][x].clone())?;
    Ok(match kind {
        SpaceKind::Ap => space.ap_reflection(),
        _ => space,
    })
}

/// Random space on `points` numbered points in `lukasiewicz(chain)`.
pub fn random_space<R: Rng>(rng: &mut R, points: usize, chain: u32, kind: SpaceKind) -> Result<CapSpace> {
    let carrier = Carrier::numbered(points)?;
    random_space_on(rng, &carrier, QuantaleMode::lukasiewicz(chain)?, kind)
}

/// [`random_space`] from a fresh generator seeded with `seed`.
pub fn space_from_seed(seed: u64, points: usize, chain: u32, kind: SpaceKind) -> Result<CapSpace> {
    random_space(&mut rng(seed), points, chain, kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        for kind in [SpaceKind::Plain, SpaceKind::Prap, SpaceKind::Ap] {
            assert_eq!(space_from_seed(7, 3, 4, kind).unwrap(), space_from_seed(7, 3, 4, kind).unwrap());
        }
        let a: Vec<_> = (0..20).map(|s| space_from_seed(s, 3, 4, SpaceKind::Prap).unwrap()).collect();
        assert!(a.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn kinds_have_their_shape() {
        let mut r = rng(1);
        let mut saw_non_prap = false;
        for _ in 0..100 {
            let s = random_space(&mut r, 3, 2, SpaceKind::Plain).unwrap();
            assert!(s.validate().is_empty());
            saw_non_prap |= !s.is_prap();
            assert!(random_space(&mut r, 3, 2, SpaceKind::Prap).unwrap().is_prap());
            assert!(random_space(&mut r, 3, 2, SpaceKind::Ap).unwrap().is_approach());
        }
        assert!(saw_non_prap);
    }

    #[test]
    fn unit_mode_is_rejected() {
        let c = Carrier::numbered(2).unwrap();
        assert!(random_space_on(&mut rng(0), &c, QuantaleMode::UnitRational, SpaceKind::Prap).is_err());
    }
}
