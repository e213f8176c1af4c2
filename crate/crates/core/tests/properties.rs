use apxconv::format::{parse_space, render_space};
use apxconv::gen::{self, SpaceKind};
use apxconv::{CapSpace, Carrier, PrincipalFilter, QuantaleMode, QuantaleValue, SetFamily, Subset, VFunction};
use proptest::prelude::*;

fn unit_value() -> impl Strategy<Value = QuantaleValue> {
    (1i64..=12)
        .prop_flat_map(|q| (0..=q, Just(q)))
        .prop_map(|(p, q)| QuantaleMode::UnitRational.ratio(p, q).unwrap())
}

/// Three values of one mode, from either presentation.
fn triple() -> impl Strategy<Value = (QuantaleValue, QuantaleValue, QuantaleValue)> {
    prop_oneof![
        (1u32..=8).prop_flat_map(|n| (Just(n), 0..=n, 0..=n, 0..=n)).prop_map(|(n, a, b, c)| {
            let m = QuantaleMode::lukasiewicz(n).unwrap();
            (m.chain(a).unwrap(), m.chain(b).unwrap(), m.chain(c).unwrap())
        }),
        (unit_value(), unit_value(), unit_value()),
    ]
}

fn kind() -> impl Strategy<Value = SpaceKind> {
    prop_oneof![Just(SpaceKind::Plain), Just(SpaceKind::Prap), Just(SpaceKind::Ap)]
}

fn space() -> impl Strategy<Value = CapSpace> {
    (any::<u64>(), 1usize..=3, 1u32..=4, kind())
        .prop_map(|(seed, points, chain, kind)| gen::space_from_seed(seed, points, chain, kind).unwrap())
}

/// A carrier, a nonempty base on it and a function into `lukasiewicz(n)`.
fn filter_and_function() -> impl Strategy<Value = (PrincipalFilter, VFunction)> {
    (1usize..=4, 1u32..=6).prop_flat_map(|(k, n)| {
        (1u64..1 << k, proptest::collection::vec(0..=n, k)).prop_map(move |(base, ds)| {
            let c = Carrier::numbered(k).unwrap();
            let mode = QuantaleMode::lukasiewicz(n).unwrap();
            (PrincipalFilter::new(&c, Subset(base)).unwrap(), VFunction::from_dists(&c, mode, &ds).unwrap())
        })
    })
}

proptest! {
    #[test]
    fn tensor_residuation_adjunction((u, v, w) in triple()) {
        prop_assert_eq!(&u * &v <= w, v <= &w / &u);
    }

    #[test]
    fn tensor_is_a_commutative_monoid((u, v, w) in triple()) {
        let top = u.mode().top();
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &top, u);
    }

    #[test]
    fn tensor_distributes_over_joins((u, v, w) in triple()) {
        prop_assert_eq!(&u * &v.join(&w), (&u * &v).join(&(&u * &w)));
    }

    #[test]
    fn residuation_turns_joins_into_meets((u, v, w) in triple()) {
        prop_assert_eq!(&w / &u.join(&v), (&w / &u).meet(&(&w / &v)));
    }

    #[test]
    fn double_residuation((v, x, t) in triple()) {
        prop_assert!(&(&v / &x) / &(&v / &t) >= &t / &x);
    }

    #[test]
    fn residuation_bounds((u, w, _) in triple()) {
        prop_assert!(&(&w / &u) * &u <= w);
        prop_assert!(w <= &(&w * &u) / &u);
        prop_assert!((&w / &u).is_top() == (u <= w));
    }

    #[test]
    fn filter_grill_limits_agree((f, phi) in filter_and_function()) {
        let members = f.members();
        prop_assert_eq!(f.grill().liminf(&phi).unwrap(), members.limsup(&phi).unwrap());
        prop_assert_eq!(members.liminf(&phi).unwrap(), f.liminf(&phi).unwrap());
        prop_assert_eq!(f.limsup(&phi).unwrap(), members.limsup(&phi).unwrap());
        prop_assert_eq!(members.grill().grill(), members);
    }

    #[test]
    fn meshing_is_grill_containment((f, _) in filter_and_function(), other in 1u64..16) {
        let c = f.carrier().clone();
        let Ok(g) = PrincipalFilter::new(&c, Subset(other & c.full().0)) else { return Ok(()) };
        let (fm, gm) = (f.members(), g.members());
        let inside = gm.members().iter().all(|b| fm.grill().contains(*b));
        prop_assert_eq!(fm.meshes(&gm).unwrap(), inside);
        prop_assert_eq!(fm.meshes(&gm).unwrap(), f.base().meets(g.base()));
    }

    #[test]
    fn subset_identities(k in 1usize..=8, a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (Subset(a & Subset::full(k).0), Subset(b & Subset::full(k).0));
        prop_assert_eq!(a.union(b).complement(k), a.complement(k).intersection(b.complement(k)));
        prop_assert_eq!(a.len() + b.len(), a.union(b).len() + a.intersection(b).len());
        prop_assert_eq!(a.meets(b), !a.intersection(b).is_empty());
        prop_assert_eq!(a.subsets().count(), 1 << a.len());
        let fam = SetFamily::new(&Carrier::numbered(k).unwrap(), [a]).unwrap();
        prop_assert_eq!(fam.isotone_hull().len(), 1 << (k - a.len()));
    }

    #[test]
    fn hull_is_the_least_continuous_majorant(s in space(), ds in proptest::collection::vec(0u32..=4, 3)) {
        let QuantaleMode::Lukasiewicz(n) = s.mode() else { unreachable!() };
        let ds: Vec<u32> = ds.into_iter().take(s.len()).map(|d| d.min(n)).collect();
        let f = VFunction::from_dists(s.carrier(), s.mode(), &ds).unwrap();
        let h = s.hull(&f).unwrap();
        prop_assert!(f.le(&h));
        prop_assert!(s.is_continuous_to_v(&h).unwrap());
        prop_assert_eq!(s.hull_via_development(&f).unwrap(), h.clone());
        for g in s.continuous_functions().unwrap() {
            if f.le(&g) {
                prop_assert!(h.le(&g));
            }
        }
    }

    #[test]
    fn reflections(s in space()) {
        let s0 = s.prap_reflection();
        let t = s.ap_reflection();
        prop_assert!(s.le(&s0) && s0.le(&t));
        prop_assert!(s0.is_prap() && t.is_approach());
        prop_assert_eq!(s.adh_table(), s0.adh_table());
        prop_assert_eq!(s.is_psap(), s.is_prap());
        prop_assert_eq!(s.psap_reflection(), s0);
    }

    #[test]
    fn level_closedness_matches_theta_eps(s in space()) {
        let mode = s.mode();
        for eps in mode.elements().unwrap().into_iter().filter(|e| !e.is_top()) {
            let tau = s.tau_eps(&eps).unwrap();
            for a in s.carrier().subsets() {
                let cont = s.is_continuous_to_v(&s.theta_eps(a, &eps).unwrap()).unwrap();
                prop_assert_eq!(cont, tau.is_closed(a));
                prop_assert_eq!(cont, s.is_tau_eps_closed(a, &eps).unwrap());
            }
        }
    }

    #[test]
    fn space_files_round_trip(s in space()) {
        prop_assert_eq!(parse_space(&render_space(&s, Some("s"))).unwrap(), s);
    }
}
