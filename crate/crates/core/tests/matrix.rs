use tropr::geom_crystal::{pairing, star};
use tropr::matrix_real::*;
use tropr::sample::Sampler;
use tropr::semifield::{int, rat};
use tropr::{Error, GcPoint, GcTuple, GeomCrystal, Rational};

fn z_samples(s: &mut Sampler, k: usize) -> Vec<Rational> {
    (0..k).map(|_| s.small_rational(50)).collect()
}

#[test]
fn factorization_of_a() {
    let mut s = Sampler::new(21);
    for n in 3..=5 {
        for _ in 0..4 {
            let x = s.point(n);
            assert!(check_factor_a(&x));
            for fac in factor_a(&x) {
                assert_eq!(&fac * &check_of(&fac), Matrix::identity(2 * n));
            }
        }
    }
    assert_eq!(d_matrix(&GcPoint::constant(3, int(1)).unwrap()), Matrix::identity(6));
}

#[test]
fn first_column_and_last_row() {
    let mut s = Sampler::new(22);
    for n in 3..=5 {
        let x = s.point(n);
        let a = build_m_triple(&x).a;
        let d = 2 * n;
        let l = x.level();
        let xs = |a: usize, b: usize| (a..=b).map(|k| x.x(k).clone()).product::<Rational>();
        let xbs = |a: usize, b: usize| (a..=b).map(|k| x.xb(k).clone()).product::<Rational>();
        for i in 1..=n {
            assert_eq!(*a.at(d, i), &l / xs(1, i - 1));
        }
        assert_eq!(*a.at(d, n + 1), xbs(1, n - 1));
        for i in n + 2..d {
            let k = d + 1 - i;
            assert_eq!(*a.at(d, i), xbs(1, d - i) * (int(1) + x.xb(k) / x.x(k)));
        }
        assert_eq!(*a.at(d, d), x.xb(1) / x.x(1));
        for i in 1..n {
            for j in 1..n {
                assert_eq!(*a.at(d + 1 - i, j), xs(j, n) * xbs(i, n - 1));
            }
            assert_eq!(*a.at(n, i), xs(i, n));
            assert_eq!(*a.at(n + 1, i), xs(i, n - 1));
            assert_eq!(*a.at(d + 1 - i, n), xbs(i, n - 1) * x.x(n));
            assert_eq!(*a.at(d + 1 - i, n + 1), xbs(i, n - 1));
        }
    }
}

#[test]
fn msms_and_determinant() {
    let mut s = Sampler::new(23);
    for n in 3..=4 {
        for _ in 0..3 {
            let x = s.point(n);
            for z in z_samples(&mut s, 3).into_iter().chain([int(0), int(1) / x.level()]) {
                assert!(check_msms(&x, &z));
                assert!(check_det(&x, &z));
            }
            assert!(check_rank_one(&x));
        }
    }
}

#[test]
fn gmg_single_and_product() {
    let mut s = Sampler::new(24);
    for n in 3..=4 {
        let x = s.point(n);
        let c = s.small_rational(9);
        for z in z_samples(&mut s, 3) {
            for i in 0..=n {
                assert_eq!(check_gmg(i, &c, &x, &z), Ok(true), "i={i}");
            }
        }
        let t = s.tuple(n, 3);
        let z = s.small_rational(50);
        for i in 0..=n {
            assert_eq!(check_prod_gmg(i, &c, &t, &z), Ok(true), "tuple i={i}");
        }
    }
}

#[test]
fn conjugations() {
    let mut s = Sampler::new(25);
    for n in 3..=4 {
        let (x, y) = (s.point(n), s.point(n));
        for z in z_samples(&mut s, 3) {
            let r = check_jmj(&x, &y, &z).unwrap();
            assert_eq!(r, JmjReport { j1: Some(true), jn: true, j: true, j_star: true });
        }
        let r = check_jmj(&x, &y, &int(0)).unwrap();
        assert_eq!(r.j1, None);
        assert!(r.all());
        let (_, ys) = star(&x, &y).unwrap();
        let z = int(3);
        let js = j_star(n);
        assert_eq!(&(&js * &build_m(&x, &z).transpose()) * &js, build_m(&ys, &z).m);
    }
}

#[test]
fn g_relations_and_j_intertwiners() {
    let mut s = Sampler::new(26);
    for n in 3..=5 {
        let (a, b, c) = (s.rational(), s.rational(), s.rational());
        for i in 0..=n {
            for j in 0..=n {
                if i == j {
                    continue;
                }
                let (gi, gj) = (|v: &Rational| g(n, i, v), |v: &Rational| g(n, j, v));
                match pairing(n, i, j) {
                    0 => assert_eq!(&gi(&a) * &gj(&b), &gj(&b) * &gi(&a)),
                    _ => {
                        let lhs = &(&gi(&a) * &gj(&b)) * &gi(&c);
                        let s_ = &a + &c;
                        let rhs = &(&gj(&(&b * &c / &s_)) * &gi(&s_)) * &gj(&(&a * &b / &s_));
                        assert_eq!(lhs, rhs, "({i},{j})");
                    }
                }
            }
        }
        let z = s.rational();
        let j = j1(n, &z).unwrap();
        assert_eq!(&j * &g(n, 1, &a), &g(n, 0, &(&a / &z)) * &j);
        assert_eq!(&jn(n) * &g(n, n - 1, &a), &g(n, n, &a) * &jn(n));
        assert_eq!(j1(n, &int(0)), Err(Error::ZeroSpectralParameter));
    }
}

#[test]
fn lower_triangular_action() {
    let mut s = Sampler::new(27);
    for n in 3..=4 {
        let (x, y) = (s.point(n), s.point(n));
        let xm = &build_m_triple(&x).a * &build_m_triple(&y).a;
        let t = GcTuple::new(vec![x.clone(), y.clone()]).unwrap();
        let (c, d) = (s.small_rational(9), s.small_rational(9));
        for i in 1..n {
            assert_eq!(matrix_eps_phi(&xm, i).unwrap(), (t.eps(i), t.phi(i)));
            let e = apply_e_lower(i, &c, &xm).unwrap();
            assert!(e.is_lower_triangular());
            assert_eq!(&e * &check_of(&e), Matrix::identity(2 * n));
            let te = t.apply_e(i, &c);
            assert_eq!(e, &build_m_triple(&te.points()[0]).a * &build_m_triple(&te.points()[1]).a);
        }
        for i in 1..n - 1 {
            let cd = &c * &d;
            let lhs = apply_e_lower(i, &d, &apply_e_lower(i + 1, &cd, &apply_e_lower(i, &c, &xm).unwrap()).unwrap())
                .unwrap();
            let rhs = apply_e_lower(i + 1, &c, &apply_e_lower(i, &cd, &apply_e_lower(i + 1, &d, &xm).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(check_pair_fixtures(&x, &y));
    }
    let up = Matrix::from_fn(6, |i, j| if j >= i { int(1) } else { int(0) });
    assert_eq!(apply_e_lower(1, &int(2), &up), Err(Error::NotLowerTriangular));
}

#[test]
fn recovery_round_trips() {
    let mut s = Sampler::new(28);
    for n in 3..=4 {
        for len in 1..=3 {
            let xs = s.points_distinct_levels(n, len);
            let levels: Vec<Rational> = xs.iter().map(|p| p.level()).collect();
            let got = recover_components(n, &levels, |z| build_m_product(&xs, z)).unwrap();
            assert_eq!(got, xs);
        }
    }
    let x = s.point(3);
    let y = GcPoint::new(3, x.coords().iter().rev().cloned().collect()).unwrap();
    let levels = [x.level(), y.level()];
    let r = recover_components(3, &levels, |z| build_m_product(&[x.clone(), y.clone()], z));
    assert_eq!(r, Err(Error::EqualLevels));
    let bogus = recover_components(3, &[rat(7, 3).unwrap()], |_| Matrix::identity(6));
    assert!(matches!(bogus, Err(Error::NotMProduct(_))));
}
