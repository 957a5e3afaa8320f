use proptest::prelude::*;
use std::collections::BTreeSet;

use tropr::crystal::*;
use tropr::tropical_r::{tropical_r, v0};
use tropr::{GcTuple, GeomCrystal, MaxPlus};

const LEVELS: [(i64, i64); 5] = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)];

fn pairs(n: usize, l1: i64, l2: i64) -> Vec<CrystalPair> {
    let b = enumerate(n, l2);
    enumerate(n, l1).into_iter().flat_map(|a| b.iter().map(move |y| (a.clone(), y.clone()))).collect()
}

fn r(p: &CrystalPair) -> CrystalPair {
    comb_r(&p.0, &p.1).unwrap()
}

#[test]
fn enumeration_matches_zeta_side() {
    for n in 3..=4 {
        for l in 0..=3 {
            let elems = enumerate(n, l);
            let zetas = enumerate_zeta(n, l);
            assert_eq!(elems.len(), zetas.len());
            assert!(elems.windows(2).all(|w| w[0] < w[1]));
            let back: BTreeSet<CrystalElem> = zetas.iter().map(|z| CrystalElem::from_zeta(z).unwrap()).collect();
            assert_eq!(back, elems.iter().cloned().collect());
            for e in &elems {
                assert_eq!(CrystalElem::from_zeta(&e.to_zeta()).unwrap(), *e);
            }
        }
    }
    // the predicate accepts nothing outside the generated set
    let set: BTreeSet<Vec<i64>> = enumerate(3, 2).iter().map(|e| e.coords().to_vec()).collect();
    let mut accepted = 0;
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    let v = vec![a, b, c, d, 2 - a - b - c - d];
                    if is_member(3, 2, &v) {
                        assert!(set.contains(&v));
                        accepted += 1;
                    }
                }
            }
        }
    }
    assert_eq!(accepted, set.iter().filter(|v| v.iter().all(|k| k.abs() <= 2)).count());
}

#[test]
fn operators_match_tropical_point_structure() {
    for n in 3..=4 {
        for e in enumerate(n, 2) {
            let p = e.to_point();
            for i in 0..=n {
                assert_eq!(MaxPlus(c_eps(i, &e)), p.eps(i));
                assert_eq!(MaxPlus(c_phi(i, &e)), p.phi(i));
                for c in -2..=2 {
                    let moved = c_apply_e(i, c, &e);
                    if let Some(m) = &moved {
                        assert_eq!(m.to_point(), p.apply_e(i, &MaxPlus(c)));
                        assert_eq!(c_apply_e(i, -c, m).as_ref(), Some(&e));
                    }
                    if c > 0 {
                        assert_eq!(moved.is_some(), c <= c_eps(i, &e), "n={n} i={i} c={c} {e:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn tensor_rule_matches_tropical_product() {
    let n = 3;
    for p in pairs(n, 2, 1) {
        let t = GcTuple::new(vec![p.0.to_point(), p.1.to_point()]).unwrap();
        for i in 0..=n {
            assert_eq!(MaxPlus(tensor_eps(i, &p)), t.eps(i));
            assert_eq!(MaxPlus(tensor_phi(i, &p)), t.phi(i));
            for c in -2..=2 {
                if let Some(q) = tensor_apply_e(i, c, &p) {
                    let moved = t.apply_e(i, &MaxPlus(c));
                    assert_eq!(moved.points()[0], q.0.to_point());
                    assert_eq!(moved.points()[1], q.1.to_point());
                }
            }
        }
    }
}

#[test]
fn comb_r_against_generic_r_and_oracle() {
    let n = 3;
    for (l1, l2) in LEVELS {
        let domain = pairs(n, l1, l2);
        let oracle = oracle_r(n, l1, l2).unwrap();
        let mut images = BTreeSet::new();
        for p in &domain {
            let q = r(p);
            assert_eq!(oracle[p], q);
            let (a, b) = tropical_r(&p.0.to_point(), &p.1.to_point()).unwrap();
            assert_eq!((a, b), (q.0.to_point(), q.1.to_point()));
            assert_eq!(r(&q), *p);
            assert_eq!(energy(&p.0, &p.1), v0(&p.0.to_point(), &p.1.to_point()).0);
            images.insert(q);
        }
        assert_eq!(images, pairs(n, l2, l1).into_iter().collect());
        if l1 == l2 {
            assert!(domain.iter().all(|p| r(p) == *p));
        }
        let h = (CrystalElem::highest(n, l1).unwrap(), CrystalElem::highest(n, l2).unwrap());
        assert_eq!(r(&h), (h.1.clone(), h.0.clone()));
    }
}

#[test]
fn comb_r_spot_checks_rank_four() {
    let n = 4;
    let oracle = oracle_r(n, 2, 1).unwrap();
    for p in pairs(n, 2, 1) {
        let q = r(&p);
        assert_eq!(oracle[&p], q);
        assert_eq!(r(&q), p);
    }
}

#[test]
fn equivariance() {
    let n = 3;
    for p in pairs(n, 2, 1) {
        let q = r(&p);
        for i in 0..=n {
            for c in [-2, -1, 1, 2] {
                if let Some(m) = tensor_apply_e(i, c, &p) {
                    assert_eq!(tensor_apply_e(i, c, &q), Some(r(&m)));
                }
            }
        }
    }
}

#[test]
fn yang_baxter_exhaustive() {
    let n = 3;
    for l1 in 1..=2 {
        for l2 in 1..=2 {
            for l3 in 1..=2 {
                for a in enumerate(n, l1) {
                    for b in enumerate(n, l2) {
                        for c in enumerate(n, l3) {
                            let r12 = |t: [CrystalElem; 3]| {
                                let (u, v) = comb_r(&t[0], &t[1]).unwrap();
                                [u, v, t[2].clone()]
                            };
                            let r23 = |t: [CrystalElem; 3]| {
                                let (u, v) = comb_r(&t[1], &t[2]).unwrap();
                                [t[0].clone(), u, v]
                            };
                            let t = [a.clone(), b.clone(), c];
                            assert_eq!(r12(r23(r12(t.clone()))), r23(r12(r23(t))));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn energy_minimum_and_recursion() {
    let n = 3;
    for (l1, l2) in LEVELS {
        let domain = pairs(n, l1, l2);
        let min = domain.iter().map(|p| energy(&p.0, &p.1)).min().unwrap();
        assert_eq!(min, (l1 - l2).abs());
        for p in &domain {
            let q = r(p);
            let e = energy(&p.0, &p.1);
            for i in 0..=n {
                let Some(m) = tensor_apply_e(i, 1, p) else { continue };
                let expected = if i != 0 {
                    e
                } else {
                    let up = c_phi(0, &p.0) >= c_eps(0, &p.1) && c_phi(0, &q.0) >= c_eps(0, &q.1);
                    let down = c_phi(0, &p.0) < c_eps(0, &p.1) && c_phi(0, &q.0) < c_eps(0, &q.1);
                    e + i64::from(up) - i64::from(down)
                };
                assert_eq!(energy(&m.0, &m.1), expected, "{p:?} i={i}");
            }
        }
    }
}

#[test]
fn oracle_highest_pair() {
    let m = oracle_r(3, 2, 1).unwrap();
    let h = (CrystalElem::highest(3, 2).unwrap(), CrystalElem::highest(3, 1).unwrap());
    assert_eq!(m[&h], (h.1.clone(), h.0.clone()));
}

#[test]
fn json_shape() {
    let e = CrystalElem::highest(3, 2).unwrap();
    let s = serde_json::to_string(&e).unwrap();
    assert_eq!(s, r#"{"n":3,"l":2,"coords":[2,0,0,0,0]}"#);
    assert_eq!(serde_json::from_str::<CrystalElem>(&s).unwrap(), e);
    assert!(serde_json::from_str::<CrystalElem>(r#"{"n":3,"l":1,"coords":[2,0,0,0,0]}"#).is_err());
}

fn arb_pair() -> impl Strategy<Value = CrystalPair> {
    (3usize..=4, 0i64..=3, 0i64..=3, any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(
        |(n, l1, l2, a, b)| {
            let xs = enumerate(n, l1);
            let ys = enumerate(n, l2);
            (a.get(&xs).clone(), b.get(&ys).clone())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn comb_r_involution_and_energy_bound(p in arb_pair()) {
        let q = r(&p);
        prop_assert_eq!((q.0.l(), q.1.l()), (p.1.l(), p.0.l()));
        prop_assert_eq!(r(&q), p.clone());
        prop_assert!(energy(&p.0, &p.1) >= (p.0.l() - p.1.l()).abs());
        prop_assert_eq!(CrystalElem::from_zeta(&p.0.to_zeta()).unwrap(), p.0.clone());
    }
}
