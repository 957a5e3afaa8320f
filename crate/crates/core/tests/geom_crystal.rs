use proptest::prelude::*;
use tropr::geom_crystal::{pairing, star};
use tropr::sample::Sampler;
use tropr::semifield::{int, rat};
use tropr::{GcPoint, GcTuple, GeomCrystal, Rational, Semifield};

fn sample_c(s: &mut Sampler) -> Rational {
    s.small_rational(9)
}

fn axioms<X: GeomCrystal<Rational> + std::fmt::Debug>(x: &X, c: &Rational, d: &Rational) {
    let n = x.rank();
    for i in 0..=n {
        assert_eq!(x.apply_e(i, &int(1)), *x);
        assert_eq!(x.apply_e(i, c).apply_e(i, d), x.apply_e(i, &(c * d)));
        let y = x.apply_e(i, c);
        assert_eq!(y.eps(i), x.eps(i) / c);
        assert_eq!(y.phi(i), x.phi(i) * c);
        assert_eq!(y.level(), x.level());
        for j in 0..=n {
            let a = pairing(n, j, i);
            assert_eq!(y.gamma(j), x.gamma(j) * c.powi(a), "gamma_{j} under e_{i}");
            if i == j {
                continue;
            }
            match pairing(n, i, j) {
                0 => assert_eq!(x.apply_e(i, c).apply_e(j, d), x.apply_e(j, d).apply_e(i, c)),
                _ => assert_eq!(
                    x.apply_e(i, c).apply_e(j, &(c * d)).apply_e(i, d),
                    x.apply_e(j, d).apply_e(i, &(c * d)).apply_e(j, c),
                    "braid ({i},{j})"
                ),
            }
        }
    }
}

#[test]
fn axioms_on_points_and_triples() {
    let mut s = Sampler::new(11);
    for n in 3..=5 {
        for _ in 0..5 {
            let (c, d) = (sample_c(&mut s), sample_c(&mut s));
            axioms(&s.point(n), &c, &d);
            axioms(&s.tuple(n, 3), &c, &d);
        }
    }
}

#[test]
fn weyl_group_relations() {
    let mut s = Sampler::new(12);
    for n in 3..=5 {
        let x = s.point(n);
        for i in 0..=n {
            assert_eq!(x.weyl_s(i).weyl_s(i), x);
            assert_eq!(x.weyl_s(i).level(), x.level());
            for j in i + 1..=n {
                if pairing(n, i, j) == 0 {
                    assert_eq!(x.weyl_s(i).weyl_s(j), x.weyl_s(j).weyl_s(i));
                } else {
                    assert_eq!(
                        x.weyl_s(i).weyl_s(j).weyl_s(i),
                        x.weyl_s(j).weyl_s(i).weyl_s(j)
                    );
                }
            }
        }
    }
}

fn pair_decomposition<X: GeomCrystal<Rational>>(x: &X, c: &Rational) {
    let n = x.rank();
    for i in 0..=n {
        for j in 0..=n {
            if pairing(n, i, j) != -1 {
                assert!(x.phi_pair(i, j).is_err());
                continue;
            }
            let (pij, pji) = (x.phi_pair(i, j).unwrap(), x.phi_pair(j, i).unwrap());
            assert_eq!(&pij + &pji, x.phi(i) * x.phi(j));
            let (eij, eji) = (x.eps_pair(i, j).unwrap(), x.eps_pair(j, i).unwrap());
            assert_eq!(&eij + &eji, x.eps(i) * x.eps(j));
            let ei = x.apply_e(i, c);
            let ej = x.apply_e(j, c);
            assert_eq!(ei.phi_pair(i, j).unwrap(), c * &pij);
            assert_eq!(ej.phi_pair(i, j).unwrap(), pij);
            assert_eq!(ei.eps_pair(i, j).unwrap(), &eij / c);
            assert_eq!(ej.eps_pair(i, j).unwrap(), eij);
        }
    }
}

#[test]
fn phi_pair_decomposition() {
    let mut s = Sampler::new(13);
    for n in 3..=6 {
        let c = sample_c(&mut s);
        pair_decomposition(&s.point(n), &c);
        pair_decomposition(&s.tuple(n, 2), &c);
        pair_decomposition(&s.tuple(n, 3), &c);
    }
}

#[test]
fn product_is_associative() {
    let mut s = Sampler::new(14);
    for n in 3..=4 {
        let t = s.tuple(n, 3);
        let p = t.points();
        let c = sample_c(&mut s);
        for i in 0..=n {
            let left = GcTuple::new(vec![p[0].clone(), p[1].clone()]).unwrap();
            let right = GcTuple::new(vec![p[1].clone(), p[2].clone()]).unwrap();
            let eps_l = &left.eps(i) + left.eps(i) * p[2].eps(i) / left.phi(i);
            let eps_r = p[0].eps(i) + p[0].eps(i) * right.eps(i) / p[0].phi(i);
            assert_eq!(t.eps(i), eps_l);
            assert_eq!(t.eps(i), eps_r);
            let phi_l = p[2].phi(i) + left.phi(i) * p[2].phi(i) / p[2].eps(i);
            assert_eq!(t.phi(i), phi_l);

            let cs = t.split_c(i, &c);
            assert_eq!(cs.iter().product::<Rational>(), c);
            let lc = left.split_c(i, &(&cs[0] * &cs[1]));
            assert_eq!(lc, cs[..2].to_vec());
            let rc = right.split_c(i, &(&cs[1] * &cs[2]));
            assert_eq!(rc, cs[1..].to_vec());
        }
    }
}

#[test]
fn automorphisms() {
    let mut s = Sampler::new(15);
    for n in 3..=5 {
        let x = s.point(n);
        let y = s.point(n);
        let c = sample_c(&mut s);
        assert_eq!(x.sigma1().sigma1(), x);
        assert_eq!(x.sigman().sigman(), x);
        assert_eq!(x.tau().tau(), x);
        assert_eq!(x.sigma1().sigman(), x.sigman().sigma1());
        assert_eq!(x.sigma1().tau(), x.tau().sigma1());
        assert_eq!(x.sigman().tau(), x.tau().sigman());
        let (xs, ys) = star(&x, &y).unwrap();
        assert_eq!(star(&xs, &ys).unwrap(), (x.clone(), y.clone()));

        assert_eq!(x.sigma1().eps(1), x.eps(0));
        assert_eq!(x.sigma1().phi(1), x.phi(0));
        assert_eq!(x.sigman().eps(n - 1), x.eps(n));
        assert_eq!(x.sigman().phi(n - 1), x.phi(n));
        assert_eq!(x.sigma1().apply_e(1, &c), x.apply_e(0, &c).sigma1());
        assert_eq!(x.sigman().apply_e(n - 1, &c), x.apply_e(n, &c).sigman());
        for i in 2..n - 1 {
            assert_eq!(x.sigma1().eps(i), x.eps(i));
            assert_eq!(x.sigman().phi(i), x.phi(i));
        }

        let t = s.tuple(n, 3);
        assert_eq!(t.sigma1().apply_e(1, &c), t.apply_e(0, &c).sigma1());
        assert_eq!(t.sigman().apply_e(n - 1, &c), t.apply_e(n, &c).sigman());
        assert_eq!(t.sigma1().eps(1), t.eps(0));
        assert_eq!(t.sigman().phi(n - 1), t.phi(n));
    }
}

#[test]
fn gamma_is_positive_at_level_one() {
    let x = GcPoint::new(3, vec![int(2), rat(1, 2).unwrap(), int(3), rat(1, 3).unwrap(), int(1)]).unwrap();
    assert_eq!(x.level(), int(1));
    for i in 0..=3 {
        assert!(x.gamma(i) > int(0));
        assert_eq!(x.gamma(i), x.phi(i) / x.eps(i));
    }
}

fn arb_point(n: usize) -> impl Strategy<Value = GcPoint<Rational>> {
    prop::collection::vec((1i64..=200, 1i64..=200), 2 * n - 1).prop_map(move |v| {
        GcPoint::new(n, v.into_iter().map(|(p, q)| rat(p, q).unwrap()).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn level_conserved(x in arb_point(4), i in 0usize..=4, c in (1i64..50, 1i64..50)) {
        let c = rat(c.0, c.1).unwrap();
        prop_assert_eq!(x.apply_e(i, &c).level(), x.level());
        prop_assert_eq!(x.weyl_s(i).level(), x.level());
    }

    #[test]
    fn e_is_a_group_action(x in arb_point(3), i in 0usize..=3, c in (1i64..50, 1i64..50), d in (1i64..50, 1i64..50)) {
        let c = rat(c.0, c.1).unwrap();
        let d = rat(d.0, d.1).unwrap();
        prop_assert_eq!(x.apply_e(i, &c).apply_e(i, &d), x.apply_e(i, &(&c * &d)));
        prop_assert_eq!(x.apply_e(i, &c).apply_e(i, &(int(1) / &c)), x);
    }
}
