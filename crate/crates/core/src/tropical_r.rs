//! The tropical R on pairs of crystal points, generic over the semifield.
//!
//! Over rationals this is the birational map solving
//! `M(x,z) M(y,z) = M(x',z) M(y',z)` with swapped levels; over max-plus it
//! is the piecewise-linear combinatorial R.

use serde::Serialize;

use crate::error::Result;
use crate::geom_crystal::{star, GcPoint, GeomCrystal};
use crate::semifield::{Rational, Semifield};

/// The auxiliary `V`-functions of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VTable<S> {
    /// `V_0, ..., V_{n-1}`.
    pub v: Vec<S>,
    /// `V_0^*, ..., V_{n-1}^*`.
    pub v_star: Vec<S>,
    pub v0_sigma1: S,
}

/// `V`-functions together with `W_1..W_{n-1}` and `Vt_1..Vt_{n-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VwTable<S> {
    #[serde(flatten)]
    pub vt: VTable<S>,
    /// `W_1, ..., W_{n-1}` at positions `0..n-1`.
    pub w: Vec<S>,
    /// `Vt_1, ..., Vt_{n-2}` at positions `0..n-2`.
    pub v_tilde: Vec<S>,
}

impl<S> VwTable<S> {
    pub fn v(&self, i: usize) -> &S {
        &self.vt.v[i]
    }
    pub fn v_star(&self, i: usize) -> &S {
        &self.vt.v_star[i]
    }
    /// `W_i`, `1 <= i <= n-1`.
    pub fn w(&self, i: usize) -> &S {
        &self.w[i - 1]
    }
}

/// Running products `prod_{k=a}^{b} f(k)` with an empty product equal to one.
fn prod_range<S: Semifield>(a: usize, b: usize, f: impl Fn(usize) -> S) -> S {
    (a..=b).fold(S::one(), |acc, k| acc.mul(&f(k)))
}

/// `V_i` as an explicit sum of monomials, `0 <= i <= n-1`.
pub fn v_explicit<S: Semifield>(i: usize, x: &GcPoint<S>, y: &GcPoint<S>) -> S {
    let n = x.n();
    assert!(i < n, "V index out of range");
    let lx = x.level();
    let ly = y.level();
    let ratio: Vec<S> = (0..n).map(|k| if k == 0 { S::one() } else { y.xb(k).div(x.xb(k)) }).collect();
    // branch[j] is lx * prod_{k=j+1}^{i} ratio_k for j <= i, ly / prod_{k=i+1}^{j} ratio_k above
    let mut branch = vec![S::one(); n];
    branch[i] = lx.clone();
    for j in (0..i).rev() {
        branch[j] = branch[j + 1].mul(&ratio[j + 1]);
    }
    let mut up = ly.clone();
    for j in i + 1..n {
        up = up.div(&ratio[j]);
        branch[j] = up.clone();
    }
    let head = branch[0].clone();

    let mut terms: Vec<S> = Vec::with_capacity(4 * n);
    let mut lead = head.clone();
    for j in 1..n {
        lead = lead.mul(&y.x(j).div(x.x(j)));
        if j <= n - 2 {
            terms.push(branch[j].clone());
            terms.push(lead.clone());
        }
        terms.push(branch[j].mul(&y.xb(j).div(x.x(j))));
        terms.push(lead.mul(&x.x(j).div(y.xb(j))));
    }
    terms.push(up.mul(x.x(n)));
    let mut last = lead.div(x.x(n));
    if i == n - 1 {
        last = last.mul(&lx.div(&ly));
    }
    terms.push(last);
    S::sum(&terms)
}

pub fn v0<S: Semifield>(x: &GcPoint<S>, y: &GcPoint<S>) -> S {
    v_explicit(0, x, y)
}

pub fn v_table<S: Semifield>(x: &GcPoint<S>, y: &GcPoint<S>) -> Result<VTable<S>> {
    let n = x.n();
    let (xs, ys) = star(x, y)?;
    Ok(VTable {
        v: (0..n).map(|i| v_explicit(i, x, y)).collect(),
        v_star: (0..n).map(|i| v_explicit(i, &xs, &ys)).collect(),
        v0_sigma1: v_explicit(0, &x.sigma1(), &y.sigma1()),
    })
}

/// `W_i` from `V_i`, `V_{i-1}` and their starred values, `1 <= i <= n-2`.
pub fn w_from_v<S: Semifield>(i: usize, x: &GcPoint<S>, y: &GcPoint<S>, vt: &VTable<S>) -> S {
    let a = vt.v[i].mul(&vt.v_star[i - 1]).div(y.x(i));
    let b = vt.v[i - 1].mul(&vt.v_star[i]).div(x.xb(i));
    let d = x.x(i).inv().add(&y.xb(i).inv());
    a.add(&b).div(&d)
}

pub fn w_table<S: Semifield>(x: &GcPoint<S>, y: &GcPoint<S>, vt: VTable<S>) -> VwTable<S> {
    let n = x.n();
    let mut w = Vec::with_capacity(n - 1);
    w.push(vt.v[0].mul(&vt.v0_sigma1));
    for i in 2..=n - 2 {
        w.push(w_from_v(i, x, y, &vt));
    }
    w.push(vt.v[n - 1].mul(&vt.v_star[n - 1]));
    let v_tilde = (1..=n - 2)
        .map(|j| w[j - 1].add(&x.xb(j + 1).div(x.x(j + 1)).mul(&w[j])).div(&vt.v_star[j]))
        .collect();
    VwTable { vt, w, v_tilde }
}

pub fn vw_table<S: Semifield>(x: &GcPoint<S>, y: &GcPoint<S>) -> Result<VwTable<S>> {
    let vt = v_table(x, y)?;
    Ok(w_table(x, y, vt))
}

/// The tropical R: `(x, y) -> (x', y')`.
pub fn tropical_r<S: Semifield>(x: &GcPoint<S>, y: &GcPoint<S>) -> Result<(GcPoint<S>, GcPoint<S>)> {
    let t = vw_table(x, y)?;
    Ok(apply_table(x, y, &t))
}

/// Output coordinates of R given the table of `V`, `W` values.
pub fn apply_table<S: Semifield>(x: &GcPoint<S>, y: &GcPoint<S>, t: &VwTable<S>) -> (GcPoint<S>, GcPoint<S>) {
    let n = x.n();
    let (v, vs, v0s) = (&t.vt.v, &t.vt.v_star, &t.vt.v0_sigma1);
    let mut xp = vec![S::one(); n + 1];
    let mut xbp = vec![S::one(); n];
    let mut yp = vec![S::one(); n + 1];
    let mut ybp = vec![S::one(); n];

    xp[1] = y.x(1).mul(v0s).div(&v[1]);
    xbp[1] = y.xb(1).mul(&v[0]).div(&v[1]);
    yp[1] = x.x(1).mul(&v[0]).div(&vs[1]);
    ybp[1] = x.xb(1).mul(v0s).div(&vs[1]);
    for i in 2..n {
        let wr = t.w(i).div(t.w(i - 1));
        xp[i] = y.x(i).mul(&v[i - 1]).div(&v[i]).mul(&wr);
        xbp[i] = y.xb(i).mul(&v[i - 1]).div(&v[i]);
        yp[i] = x.x(i).mul(&vs[i - 1]).div(&vs[i]);
        ybp[i] = x.xb(i).mul(&vs[i - 1]).div(&vs[i]).mul(&wr);
    }
    xp[n] = y.x(n).mul(&v[n - 1]).div(&vs[n - 1]);
    yp[n] = x.x(n).mul(&vs[n - 1]).div(&v[n - 1]);

    let assemble = |a: Vec<S>, b: Vec<S>| {
        let coords: Vec<S> = a.into_iter().skip(1).chain(b.into_iter().skip(1).rev()).collect();
        GcPoint::new(n, coords).expect("R preserves admissibility")
    };
    (assemble(xp, xbp), assemble(yp, ybp))
}

/// `V_i` by the recursion from `V_0`; rationals only, uses subtraction.
pub fn v_recursive(x: &GcPoint<Rational>, y: &GcPoint<Rational>) -> Vec<Rational> {
    let n = x.n();
    let dl = x.level() - y.level();
    let one = Rational::from_integer(1.into());
    let mut v = vec![v0(x, y)];
    for i in 1..=n - 2 {
        let next = y.xb(i) / x.xb(i) * &v[i - 1] + &dl * (&one + y.xb(i) / x.x(i));
        v.push(next);
    }
    let k = n - 1;
    let last = y.xb(k) / x.xb(k) * &v[k - 1] + &dl * (&one / y.x(n) + y.xb(k) / x.x(k));
    v.push(last);
    v
}

/// `W_i = V_i V_i^* + (l(y)-l(x)) V_i^* + (l(x)-l(y)) V_i`, `1 <= i <= n-2`; rationals only.
pub fn w_with_subtraction(i: usize, x: &GcPoint<Rational>, y: &GcPoint<Rational>, vt: &VTable<Rational>) -> Rational {
    let dl = x.level() - y.level();
    &vt.v[i] * &vt.v_star[i] - &dl * &vt.v_star[i] + &dl * &vt.v[i]
}

/// The type A reference R on cyclic `n`-tuples.
pub fn type_a_r<S: Semifield>(x: &[S], y: &[S]) -> (Vec<S>, Vec<S>) {
    let n = x.len();
    assert_eq!(n, y.len(), "length mismatch");
    // 1-based cyclic index
    let at = |v: &[S], k: usize| v[(k - 1) % n].clone();
    let p = |i: usize| {
        let terms: Vec<S> = (1..=n)
            .map(|k| {
                let xs = prod_range(k, n, |j| at(x, i + j));
                xs.mul(&prod_range(1, k, |j| at(y, i + j)))
            })
            .collect();
        S::sum(&terms)
    };
    let ps: Vec<S> = (0..=n).map(p).collect();
    let xp = (1..=n).map(|i| at(y, i).mul(&ps[i]).div(&ps[i - 1])).collect();
    let yp = (1..=n).map(|i| at(x, i).mul(&ps[i - 1]).div(&ps[i])).collect();
    (xp, yp)
}

/// `(omega_i, psi_i, Omega_i, Psi_i)` for `e_i^c` acting on a pair.
///
/// `Omega_i` and `Psi_i` involve the coordinates at `i+1` and exist for
/// `i = 0` and `1 <= i <= n-2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcFactors<S> {
    pub omega: S,
    pub psi: S,
    pub big_omega: Option<S>,
    pub big_psi: Option<S>,
}

pub fn ec_factors<S: Semifield>(i: usize, c: &S, x: &GcPoint<S>, y: &GcPoint<S>) -> EcFactors<S> {
    let n = x.n();
    let (p, e) = (x.phi(i), y.eps(i));
    let cp = c.mul(&p);
    let omega = cp.add(&e).div(&p.add(&e));
    let psi = cp.add(&c.mul(&e)).div(&cp.add(&e));
    let k = match i {
        0 => Some(2),
        _ if i <= n - 2 => Some(i + 1),
        _ => None,
    };
    let ratio = |z: &GcPoint<S>, w: &S, k: usize| z.x(k).add(&w.mul(z.xb(k))).div(&z.x(k).add(z.xb(k)));
    EcFactors {
        big_omega: k.map(|k| ratio(x, &omega, k)),
        big_psi: k.map(|k| ratio(y, &psi, k)),
        omega,
        psi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{int, MaxPlus};

    fn trop(n: usize, v: &[i64]) -> GcPoint<MaxPlus<i64>> {
        GcPoint::new(n, v.iter().map(|&k| MaxPlus(k)).collect()).unwrap()
    }

    #[test]
    fn highest_pair_swaps() {
        let x = trop(3, &[2, 0, 0, 0, 0]);
        let y = trop(3, &[1, 0, 0, 0, 0]);
        let t = vw_table(&x, &y).unwrap();
        assert!(t.vt.v.iter().chain(&t.vt.v_star).all(|v| *v == MaxPlus(3)));
        assert_eq!(t.vt.v0_sigma1, MaxPlus(3));
        let (xp, yp) = tropical_r(&x, &y).unwrap();
        assert_eq!((xp, yp), (y, x));
    }

    #[test]
    fn all_ones_is_fixed() {
        let x = GcPoint::constant(3, int(1)).unwrap();
        assert_eq!(tropical_r(&x, &x).unwrap(), (x.clone(), x));
    }

    #[test]
    fn omega_factors_trivial_at_c_one() {
        let x = GcPoint::new(4, (1..=7).map(int).collect()).unwrap();
        let y = GcPoint::new(4, (3..=9).map(int).collect()).unwrap();
        for i in 0..=4 {
            let f = ec_factors(i, &int(1), &x, &y);
            assert_eq!(f.omega, int(1));
            assert_eq!(f.psi, int(1));
            assert_eq!(f.big_omega.is_some(), i <= 2);
            if let (Some(a), Some(b)) = (f.big_omega, f.big_psi) {
                assert_eq!((a, b), (int(1), int(1)));
            }
        }
    }
}
