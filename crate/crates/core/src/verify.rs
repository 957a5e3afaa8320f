//! Named property checks run on seeded random or exhaustive inputs.
//!
//! Every trial draws from its own generator derived from `(seed, trial)`,
//! so reports are identical whatever the thread schedule.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::crystal::{self, CrystalElem, CrystalPair};
use crate::error::{Error, Result};
use crate::geom_crystal::{pairing, star, GcPoint, GcTuple, GeomCrystal};
use crate::io::{point_to_json, JsonScalar};
use crate::matrix_real::*;
use crate::sample::Sampler;
use crate::semifield::{Audited, MaxPlus, Rational, Semifield};
use crate::tropical_r::*;

/// Registered check names.
pub const CHECKS: &[&str] = &[
    "axioms",
    "verma",
    "msms",
    "det",
    "rank1",
    "gmg",
    "jmj",
    "recover",
    "ybe",
    "inversion",
    "equivariance",
    "invariance-table",
    "energy-recursion",
    "ud-consistency",
    "oracle-diff",
    "dual-path",
    "fixtures",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SemifieldKind {
    Rational,
    Tropical,
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub n: usize,
    pub semifield: SemifieldKind,
    pub trials: usize,
    pub seed: u64,
    pub z_samples: usize,
    pub l1: i64,
    pub l2: i64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { n: 3, semifield: SemifieldKind::Rational, trials: 20, seed: 0, z_samples: 5, l1: 2, l2: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub semifield: SemifieldKind,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub witnesses: Vec<Value>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

const MAX_WITNESSES: usize = 10;

type Outcome = std::result::Result<(), Value>;

fn witness(what: impl Into<String>, input: Value) -> Value {
    json!({"failed": what.into(), "input": input})
}

fn ensure(ok: bool, what: impl Into<String>, input: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(witness(what, input()))
    }
}

fn lift<T>(r: Result<T>, input: impl FnOnce() -> Value) -> std::result::Result<T, Value> {
    r.map_err(|e| witness(e.to_string(), input()))
}

fn trial_sampler(seed: u64, trial: usize) -> Sampler {
    Sampler::new(seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn collect(name: &str, cfg: &CheckConfig, semifield: SemifieldKind, outcomes: Vec<Outcome>) -> CheckReport {
    let cases = outcomes.len();
    let witnesses: Vec<Value> = outcomes.into_iter().filter_map(|o| o.err()).collect();
    CheckReport {
        check: name.to_string(),
        n: cfg.n,
        semifield,
        seed: cfg.seed,
        cases,
        passed: cases - witnesses.len(),
        failed: witnesses.len(),
        witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
    }
}

fn sampled(cfg: &CheckConfig, f: impl Fn(&mut Sampler) -> Outcome + Sync) -> Vec<Outcome> {
    (0..cfg.trials).into_par_iter().map(|t| f(&mut trial_sampler(cfg.seed, t))).collect()
}

/// Values of one semifield that the generic checks can draw.
pub trait Draw: JsonScalar {
    fn scalar(s: &mut Sampler) -> Self;
    fn point(s: &mut Sampler, n: usize) -> GcPoint<Self>;
    fn points(s: &mut Sampler, n: usize, len: usize) -> Vec<GcPoint<Self>>;
}

impl Draw for Rational {
    fn scalar(s: &mut Sampler) -> Self {
        s.small_rational(9)
    }
    fn point(s: &mut Sampler, n: usize) -> GcPoint<Self> {
        s.point(n)
    }
    fn points(s: &mut Sampler, n: usize, len: usize) -> Vec<GcPoint<Self>> {
        s.points_distinct_levels(n, len)
    }
}

impl Draw for MaxPlus<i64> {
    fn scalar(s: &mut Sampler) -> Self {
        MaxPlus(s.int(-5, 5))
    }
    fn point(s: &mut Sampler, n: usize) -> GcPoint<Self> {
        GcPoint::new(n, (0..2 * n - 1).map(|_| MaxPlus(s.int(-20, 20))).collect()).expect("valid rank")
    }
    fn points(s: &mut Sampler, n: usize, len: usize) -> Vec<GcPoint<Self>> {
        (0..len).map(|_| Self::point(s, n)).collect()
    }
}

fn pts_json<S: JsonScalar>(ps: &[GcPoint<S>]) -> Value {
    Value::Array(ps.iter().map(point_to_json).collect())
}

/// The first failing law among `e^1 = id`, `e^c e^d = e^{cd}`, the
/// transformation of `eps`, `phi`, `gamma` and the level.
pub fn crystal_laws<S: Semifield, X: GeomCrystal<S>>(x: &X, c: &S, d: &S) -> Option<String> {
    let n = x.rank();
    for i in 0..=n {
        if x.apply_e(i, &S::one()) != *x {
            return Some(format!("e_{i}^1 is not the identity"));
        }
        let y = x.apply_e(i, c);
        if y.apply_e(i, d) != x.apply_e(i, &c.mul(d)) {
            return Some(format!("e_{i}^c e_{i}^d != e_{i}^(cd)"));
        }
        if y.eps(i) != x.eps(i).div(c) || y.phi(i) != x.phi(i).mul(c) {
            return Some(format!("eps_{i}/phi_{i} under e_{i}^c"));
        }
        if y.level() != x.level() {
            return Some(format!("level under e_{i}^c"));
        }
        for j in 0..=n {
            if y.gamma(j) != x.gamma(j).mul(&c.powi(pairing(n, j, i))) {
                return Some(format!("gamma_{j} under e_{i}^c"));
            }
        }
    }
    None
}

/// The first failing commutation or braid relation.
pub fn verma_laws<S: Semifield, X: GeomCrystal<S>>(x: &X, c: &S, d: &S) -> Option<String> {
    let n = x.rank();
    let cd = c.mul(d);
    for i in 0..=n {
        for j in i + 1..=n {
            let ok = match pairing(n, i, j) {
                0 => x.apply_e(i, c).apply_e(j, d) == x.apply_e(j, d).apply_e(i, c),
                _ => x.apply_e(i, c).apply_e(j, &cd).apply_e(i, d) == x.apply_e(j, d).apply_e(i, &cd).apply_e(j, c),
            };
            if !ok {
                return Some(format!("relation between e_{i} and e_{j}"));
            }
        }
    }
    None
}

fn check_axioms<S: Draw>(cfg: &CheckConfig, verma: bool) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let (c, d) = (S::scalar(s), S::scalar(s));
        let x = S::point(s, n);
        let t = GcTuple::new(S::points(s, n, 3)).expect("same rank");
        let law = |x: &GcPoint<S>, t: &GcTuple<S>| {
            if verma {
                verma_laws(x, &c, &d).or_else(|| verma_laws(t, &c, &d))
            } else {
                crystal_laws(x, &c, &d).or_else(|| crystal_laws(t, &c, &d))
            }
        };
        match law(&x, &t) {
            None => Ok(()),
            Some(what) => {
                let mut ps = vec![x.clone()];
                ps.extend(t.points().iter().cloned());
                Err(witness(what, json!({"points": pts_json(&ps), "c": c.to_json(), "d": d.to_json()})))
            }
        }
    })
}

fn z_list(s: &mut Sampler, k: usize) -> Vec<Rational> {
    (0..k).map(|_| s.rational()).collect()
}

fn check_point_z(cfg: &CheckConfig, what: &str, f: impl Fn(&GcPoint<Rational>, &Rational) -> bool + Sync) -> Vec<Outcome> {
    sampled(cfg, |s| {
        let x = s.point(cfg.n);
        for z in z_list(s, cfg.z_samples) {
            ensure(f(&x, &z), what, || json!({"x": point_to_json(&x), "z": z.to_json()}))?;
        }
        Ok(())
    })
}

fn check_gmg_all(cfg: &CheckConfig) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let x = s.point(n);
        let t = s.tuple(n, 2);
        let c = s.small_rational(9);
        let single = GcTuple::new(vec![x.clone()]).expect("one point");
        let cases: Vec<(&str, &GcTuple<Rational>)> = vec![("G M G", &single), ("G M G on a product", &t)];
        let prepared: Vec<_> = cases
            .iter()
            .map(|(label, tup)| {
                let triples: Vec<MTriple> = tup.points().iter().map(build_m_triple).collect();
                let moved: Vec<Vec<MTriple>> =
                    (0..=n).map(|i| tup.apply_e(i, &c).points().iter().map(build_m_triple).collect()).collect();
                (*label, *tup, triples, moved)
            })
            .collect();
        let eval = |ts: &[MTriple], z: &Rational| product(&ts.iter().map(|t| t.eval(z)).collect::<Vec<_>>());
        for z in z_list(s, cfg.z_samples) {
            let input = || json!({"x": point_to_json(&x), "pair": pts_json(t.points()), "c": c.to_json(), "z": z.to_json()});
            for (label, tup, triples, moved) in &prepared {
                let m = eval(triples, &z);
                for i in 0..=n {
                    let holds = lift(gmg_holds(i, &c, tup, &m, &eval(&moved[i], &z), &z), input)?;
                    ensure(holds, format!("{label} at i={i}"), input)?;
                }
            }
        }
        Ok(())
    })
}

fn check_jmj_all(cfg: &CheckConfig) -> Vec<Outcome> {
    sampled(cfg, |s| {
        let (x, y) = (s.point(cfg.n), s.point(cfg.n));
        for z in z_list(s, cfg.z_samples) {
            let input = || json!({"x": point_to_json(&x), "y": point_to_json(&y), "z": z.to_json()});
            let r = lift(check_jmj(&x, &y, &z), input)?;
            ensure(r.all(), format!("{r:?}"), input)?;
        }
        Ok(())
    })
}

fn check_recover(cfg: &CheckConfig) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let len = 1 + s.index(2);
        let xs = s.points_distinct_levels(n, len);
        let levels: Vec<Rational> = xs.iter().map(|p| p.level()).collect();
        let input = || pts_json(&xs);
        let got = lift(recover_components(n, &levels, |z| build_m_product(&xs, z)), input)?;
        ensure(got == xs, "recovered factors differ", input)?;
        let x = s.point(n);
        let y = GcPoint::new(n, x.coords().iter().rev().cloned().collect()).expect("valid");
        let pair = [x.clone(), y];
        let same = [x.level(), x.level()];
        let r = recover_components(n, &same, |z| build_m_product(&pair, z));
        ensure(r == Err(Error::EqualLevels), "equal levels accepted", || pts_json(&pair))
    })
}

fn r_at<S: Semifield>(ps: &[GcPoint<S>], k: usize) -> Result<Vec<GcPoint<S>>> {
    let mut out = ps.to_vec();
    let (a, b) = tropical_r(&ps[k], &ps[k + 1])?;
    out[k] = a;
    out[k + 1] = b;
    Ok(out)
}

fn check_ybe<S: Draw>(cfg: &CheckConfig) -> Vec<Outcome> {
    sampled(cfg, |s| {
        let ps = S::points(s, cfg.n, 3);
        let input = || pts_json(&ps);
        let lhs = lift(r_at(&ps, 0).and_then(|p| r_at(&p, 1)).and_then(|p| r_at(&p, 0)), input)?;
        let rhs = lift(r_at(&ps, 1).and_then(|p| r_at(&p, 0)).and_then(|p| r_at(&p, 1)), input)?;
        ensure(lhs == rhs, "R12 R23 R12 != R23 R12 R23", input)
    })
}

fn check_inversion<S: Draw>(cfg: &CheckConfig) -> Vec<Outcome> {
    sampled(cfg, |s| {
        let ps = S::points(s, cfg.n, 2);
        let input = || pts_json(&ps);
        let once = lift(r_at(&ps, 0), input)?;
        let twice = lift(r_at(&once, 0), input)?;
        ensure(twice == ps, "R R != id", input)?;
        ensure(once[0].level() == ps[1].level() && once[1].level() == ps[0].level(), "levels not swapped", input)
    })
}

/// Equivariance of R under `e_i^c`, the automorphisms and preservation of `eps`, `phi`.
fn check_equivariance<S: Draw>(cfg: &CheckConfig) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let ps = S::points(s, n, 2);
        let c = S::scalar(s);
        let input = || json!({"pair": pts_json(&ps), "c": c.to_json()});
        let t = GcTuple::new(ps.clone()).expect("same rank");
        let rt = GcTuple::new(lift(r_at(&ps, 0), input)?).expect("same rank");
        let r_of = |u: &GcTuple<S>| r_at(u.points(), 0).map(|v| GcTuple::new(v).expect("same rank"));
        for i in 0..=n {
            ensure(rt.eps(i) == t.eps(i) && rt.phi(i) == t.phi(i), format!("eps/phi_{i} not preserved"), input)?;
            let moved = lift(r_of(&t.apply_e(i, &c)), input)?;
            ensure(moved == rt.apply_e(i, &c), format!("R e_{i}^c != e_{i}^c R"), input)?;
        }
        ensure(lift(r_of(&t.sigma1()), input)? == rt.sigma1(), "sigma_1", input)?;
        ensure(lift(r_of(&t.sigman()), input)? == rt.sigman(), "sigma_n", input)?;
        let (xs, ys) = lift(star(&ps[0], &ps[1]), input)?;
        let (a, b) = lift(star(&rt.points()[0], &rt.points()[1]), input)?;
        ensure(lift(tropical_r(&xs, &ys), input)? == (a, b), "star", input)
    })
}

/// Invariances under R and the action of `e_i^c` on the `V`, `W` values.
fn check_invariance_table(cfg: &CheckConfig) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let (x, y) = s.pair(n);
        let c = s.small_rational(9);
        let input = || json!({"x": point_to_json(&x), "y": point_to_json(&y), "c": c.to_json()});
        let t = lift(vw_table(&x, &y), input)?;
        let (xp, yp) = lift(tropical_r(&x, &y), input)?;
        let tp = lift(vw_table(&xp, &yp), input)?;
        let fixed = tp.v(0) == t.v(0)
            && tp.vt.v0_sigma1 == t.vt.v0_sigma1
            && tp.v(n - 1) == t.v(n - 1)
            && tp.v_star(n - 1) == t.v_star(n - 1)
            && tp.w == t.w;
        ensure(fixed, "invariant value moved under R", input)?;
        for i in 1..=n - 2 {
            ensure(*tp.v(i) == t.w(i) / t.v_star(i), format!("R(V_{i}) != W_{i}/V*_{i}"), input)?;
            ensure(*tp.v_star(i) == t.w(i) / t.v(i), format!("R(V*_{i}) != W_{i}/V_{i}"), input)?;
        }
        let pair = GcTuple::new(vec![x.clone(), y.clone()]).expect("same rank");
        for i in 0..=n {
            let moved = pair.apply_e(i, &c);
            let tm = lift(vw_table(&moved.points()[0], &moved.points()[1]), input)?;
            let f = ec_factors(i, &c, &x, &y);
            let fr = ec_factors(i, &c, &xp, &yp);
            let small = &fr.omega / &f.psi;
            let scaled = |hit: bool, v: &Rational| if hit { v * &small } else { v.clone() };
            let ok = *tm.v(0) == scaled(i == 0, t.v(0))
                && tm.vt.v0_sigma1 == scaled(i == 1, &t.vt.v0_sigma1)
                && *tm.v_star(n - 1) == scaled(i == n - 1, t.v_star(n - 1))
                && *tm.v(n - 1) == scaled(i == n, t.v(n - 1));
            ensure(ok, format!("e_{i}^c on V_0, V_0^sigma1, V_(n-1), V*_(n-1)"), input)?;
            for j in 1..=n - 2 {
                let expect = if j == i || (j == 1 && i == 0) {
                    match (&fr.big_omega, &f.big_psi) {
                        (Some(a), Some(b)) => t.v(j) * a / b,
                        _ => unreachable!("factors exist for i <= n-2"),
                    }
                } else {
                    t.v(j).clone()
                };
                ensure(*tm.v(j) == expect, format!("e_{i}^c on V_{j}"), input)?;
            }
            for j in 2..=n - 2 {
                ensure(*tm.w(j) == scaled(j == i, t.w(j)), format!("e_{i}^c on W_{j}"), input)?;
            }
        }
        Ok(())
    })
}

fn pair_json(p: &CrystalPair) -> Value {
    json!([p.0, p.1])
}

fn crystal_pairs(n: usize, l1: i64, l2: i64) -> Vec<CrystalPair> {
    let b = crystal::enumerate(n, l2);
    crystal::enumerate(n, l1)
        .into_iter()
        .flat_map(|a| b.iter().map(move |y| (a.clone(), y.clone())))
        .collect()
}

/// The energy recursion under `e_i` on `B'_{l1} (x) B'_{l2}` and the stated minimum.
pub fn energy_outcomes(n: usize, l1: i64, l2: i64) -> Vec<Outcome> {
    let domain = crystal_pairs(n, l1, l2);
    let mut out: Vec<Outcome> = domain
        .par_iter()
        .map(|p| {
            let q = crystal::comb_r(&p.0, &p.1).map_err(|e| witness(e.to_string(), pair_json(p)))?;
            let e = crystal::energy(&p.0, &p.1);
            for i in 0..=n {
                let Some(m) = crystal::tensor_apply_e(i, 1, p) else { continue };
                let step = if i == 0 {
                    let before = crystal::c_phi(0, &p.0) >= crystal::c_eps(0, &p.1);
                    let after = crystal::c_phi(0, &q.0) >= crystal::c_eps(0, &q.1);
                    i64::from(before && after) - i64::from(!before && !after)
                } else {
                    0
                };
                ensure(crystal::energy(&m.0, &m.1) == e + step, format!("energy step under e_{i}"), || pair_json(p))?;
            }
            Ok(())
        })
        .collect();
    let min = domain.iter().map(|p| crystal::energy(&p.0, &p.1)).min().unwrap_or(0);
    out.push(ensure(min == (l1 - l2).abs(), format!("minimum energy {min}"), || json!({"l1": l1, "l2": l2})));
    out
}

fn check_energy_rational(cfg: &CheckConfig) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let (x, y) = s.pair(n);
        let c = s.small_rational(9);
        let input = || json!({"x": point_to_json(&x), "y": point_to_json(&y), "c": c.to_json()});
        let (xp, yp) = lift(tropical_r(&x, &y), input)?;
        let base = v0(&x, &y);
        let pair = GcTuple::new(vec![x.clone(), y.clone()]).expect("same rank");
        for i in 0..=n {
            let m = pair.apply_e(i, &c);
            let expect = if i == 0 {
                let (px, ey) = (x.phi(0), y.eps(0));
                let (pxp, eyp) = (xp.phi(0), yp.eps(0));
                &base * (&c * &pxp + &eyp) / (&pxp + &eyp) * (&c * &px + &ey) / (&c * &px + &c * &ey)
            } else {
                base.clone()
            };
            ensure(v0(&m.points()[0], &m.points()[1]) == expect, format!("V_0 under e_{i}^c"), input)?;
        }
        Ok(())
    })
}

/// Agreement of the piecewise-linear crystal formulas with the tropical
/// evaluation of the generic ones on `B'_{l1} (x) B'_{l2}`.
pub fn ud_outcomes(n: usize, l1: i64, l2: i64) -> Vec<Outcome> {
    crystal_pairs(n, l1, l2)
        .par_iter()
        .map(|p| {
            let input = || pair_json(p);
            let (xt, yt) = (p.0.to_point(), p.1.to_point());
            let q = lift(crystal::comb_r(&p.0, &p.1), input)?;
            let r = lift(tropical_r(&xt, &yt), input)?;
            ensure(r == (q.0.to_point(), q.1.to_point()), "comb_r differs from tropical R", input)?;
            ensure(MaxPlus(crystal::energy(&p.0, &p.1)) == v0(&xt, &yt), "energy differs from V_0", input)?;
            let t = GcTuple::new(vec![xt.clone(), yt.clone()]).expect("same rank");
            for i in 0..=n {
                for e in [&p.0, &p.1] {
                    let pt = e.to_point();
                    let same = MaxPlus(crystal::c_eps(i, e)) == pt.eps(i) && MaxPlus(crystal::c_phi(i, e)) == pt.phi(i);
                    ensure(same, format!("eps/phi_{i}"), input)?;
                }
                for c in -2..=2 {
                    if let Some(m) = crystal::tensor_apply_e(i, c, p) {
                        let moved = t.apply_e(i, &MaxPlus(c));
                        let same = moved.points()[0] == m.0.to_point() && moved.points()[1] == m.1.to_point();
                        ensure(same, format!("tensor e_{i}^{c}"), input)?;
                    }
                }
            }
            Ok(())
        })
        .collect()
}

/// Element-wise comparison of `comb_r` with the propagated oracle, plus
/// bijectivity and inversion of `comb_r`.
pub fn oracle_outcomes(n: usize, l1: i64, l2: i64) -> Vec<Outcome> {
    let oracle = match crystal::oracle_r(n, l1, l2) {
        Ok(m) => m,
        Err(e) => return vec![Err(witness(e.to_string(), json!({"l1": l1, "l2": l2})))],
    };
    let domain = crystal_pairs(n, l1, l2);
    let mut images = std::collections::BTreeSet::new();
    let mut out: Vec<Outcome> = domain
        .iter()
        .map(|p| {
            let input = || pair_json(p);
            let q = lift(crystal::comb_r(&p.0, &p.1), input)?;
            images.insert(q.clone());
            ensure(oracle.get(p) == Some(&q), "oracle and comb_r differ", input)?;
            ensure(lift(crystal::comb_r(&q.0, &q.1), input)? == *p, "comb_r is not an involution", input)
        })
        .collect();
    let target = crystal_pairs(n, l2, l1).len();
    out.push(ensure(images.len() == target, "comb_r is not a bijection", || json!({"l1": l1, "l2": l2})));
    let h = (CrystalElem::highest(n, l1), CrystalElem::highest(n, l2));
    if let (Ok(a), Ok(b)) = h {
        let swapped = crystal::comb_r(&a, &b).map(|q| q == (b.clone(), a.clone())).unwrap_or(false);
        out.push(ensure(swapped, "highest pair not swapped", || json!({"l1": l1, "l2": l2})));
    }
    out
}

fn check_dual_path(cfg: &CheckConfig) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let (x, y) = s.pair(n);
        let input = || json!({"x": point_to_json(&x), "y": point_to_json(&y)});
        let vt = lift(v_table(&x, &y), input)?;
        ensure(v_recursive(&x, &y) == vt.v, "explicit V differs from the recursion", input)?;
        let t = w_table(&x, &y, vt.clone());
        for i in 1..=n - 2 {
            ensure(*t.w(i) == w_with_subtraction(i, &x, &y, &vt), format!("two forms of W_{i} differ"), input)?;
        }
        let xa = x.map(|v| Audited(v.clone()));
        let ya = y.map(|v| Audited(v.clone()));
        let audited = std::panic::catch_unwind(|| tropical_r(&xa, &ya).map(|(a, b)| (a.map(|v| v.0.clone()), b.map(|v| v.0.clone()))));
        match audited {
            Ok(r) => ensure(r == tropical_r(&x, &y), "audited evaluation differs", input),
            Err(_) => Err(witness("non-positive intermediate value", input())),
        }
    })
}

fn check_fixtures(cfg: &CheckConfig) -> Vec<Outcome> {
    let n = cfg.n;
    sampled(cfg, |s| {
        let (x, y) = (s.point(n), s.point(n));
        let (c, d) = (s.small_rational(9), s.small_rational(9));
        let input = || json!({"x": point_to_json(&x), "y": point_to_json(&y), "c": c.to_json(), "d": d.to_json()});
        ensure(check_pair_fixtures(&x, &y), "entries of A(x) A(y)", input)?;
        let xm = &build_m_triple(&x).a * &build_m_triple(&y).a;
        let e = |i: usize, c: &Rational, m: &Matrix| apply_e_lower(i, c, m);
        let cd = &c * &d;
        for i in 1..n - 1 {
            let lhs = lift(e(i, &c, &xm).and_then(|m| e(i + 1, &cd, &m)).and_then(|m| e(i, &d, &m)), input)?;
            let rhs = lift(e(i + 1, &d, &xm).and_then(|m| e(i, &cd, &m)).and_then(|m| e(i + 1, &c, &m)), input)?;
            ensure(lhs == rhs, format!("braid relation on matrices at i={i}"), input)?;
        }
        Ok(())
    })
}

/// Runs the named check.
pub fn run_check(name: &str, cfg: &CheckConfig) -> Result<CheckReport> {
    if cfg.n < 3 {
        return Err(Error::RankTooSmall(cfg.n));
    }
    let tropical = cfg.semifield == SemifieldKind::Tropical;
    let sf = if tropical { SemifieldKind::Tropical } else { SemifieldKind::Rational };
    let (kind, outcomes) = match name {
        "axioms" if tropical => (sf, check_axioms::<MaxPlus<i64>>(cfg, false)),
        "axioms" => (sf, check_axioms::<Rational>(cfg, false)),
        "verma" if tropical => (sf, check_axioms::<MaxPlus<i64>>(cfg, true)),
        "verma" => (sf, check_axioms::<Rational>(cfg, true)),
        "msms" => (SemifieldKind::Rational, check_point_z(cfg, "M checkM", check_msms)),
        "det" => (SemifieldKind::Rational, check_point_z(cfg, "det M", check_det)),
        "rank1" => (
            SemifieldKind::Rational,
            sampled(cfg, |s| {
                let x = s.point(cfg.n);
                ensure(check_rank_one(&x), "rank-one collapse", || point_to_json(&x))
            }),
        ),
        "gmg" => (SemifieldKind::Rational, check_gmg_all(cfg)),
        "jmj" => (SemifieldKind::Rational, check_jmj_all(cfg)),
        "recover" => (SemifieldKind::Rational, check_recover(cfg)),
        "ybe" if tropical => (sf, check_ybe::<MaxPlus<i64>>(cfg)),
        "ybe" => (sf, check_ybe::<Rational>(cfg)),
        "inversion" if tropical => (sf, check_inversion::<MaxPlus<i64>>(cfg)),
        "inversion" => (sf, check_inversion::<Rational>(cfg)),
        "equivariance" if tropical => (sf, check_equivariance::<MaxPlus<i64>>(cfg)),
        "equivariance" => (sf, check_equivariance::<Rational>(cfg)),
        "invariance-table" => (SemifieldKind::Rational, check_invariance_table(cfg)),
        "energy-recursion" if tropical => (sf, energy_outcomes(cfg.n, cfg.l1, cfg.l2)),
        "energy-recursion" => (sf, check_energy_rational(cfg)),
        "ud-consistency" => (SemifieldKind::Tropical, ud_outcomes(cfg.n, cfg.l1, cfg.l2)),
        "oracle-diff" => (SemifieldKind::Tropical, oracle_outcomes(cfg.n, cfg.l1, cfg.l2)),
        "dual-path" => (SemifieldKind::Rational, check_dual_path(cfg)),
        "fixtures" => (SemifieldKind::Rational, check_fixtures(cfg)),
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    Ok(collect(name, cfg, kind, outcomes))
}
