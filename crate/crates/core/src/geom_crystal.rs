//! The geometric D_n^(1) crystal on 2n-1 coordinates and its L-fold products.

use crate::error::{Error, Result};
use crate::semifield::Semifield;

/// Cartan pairing of Dynkin nodes `i`, `j` of D_n^(1), `n >= 3`.
///
/// For `n >= 4` the chain `1 - 2 - ... - (n-1)` carries node 0 on node 2
/// and node `n` on node `n-2`. For `n = 3` the diagram is the 4-cycle
/// `0 - 2 - 1 - 3 - 0`.
pub fn pairing(n: usize, i: usize, j: usize) -> i32 {
    assert!(i <= n && j <= n, "Dynkin index out of range");
    if i == j {
        2
    } else if adjacent(n, i, j) {
        -1
    } else {
        0
    }
}

pub fn adjacent(n: usize, i: usize, j: usize) -> bool {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    if a == b {
        return false;
    }
    if n == 3 {
        return matches!((a, b), (0, 2) | (1, 2) | (0, 3) | (1, 3));
    }
    (a >= 1 && b == a + 1 && b <= n - 1) || (a == 0 && b == 2) || (a == n - 2 && b == n)
}

/// A point of the crystal: `(x_1, ..., x_n, xb_{n-1}, ..., xb_1)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GcPoint<S> {
    n: usize,
    coords: Vec<S>,
}

impl<S: Semifield> GcPoint<S> {
    /// Builds a point from its coordinates in canonical order.
    pub fn new(n: usize, coords: Vec<S>) -> Result<Self> {
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        if coords.len() != 2 * n - 1 {
            return Err(Error::CoordinateCount { expected: 2 * n - 1, got: coords.len() });
        }
        if let Some(k) = coords.iter().position(|c| !c.is_admissible()) {
            return Err(Error::NonPositive { index: k, value: format!("{:?}", coords[k]) });
        }
        Ok(GcPoint { n, coords })
    }

    /// `x = (x_1..x_n)`, `xbar = (xb_{n-1}, ..., xb_1)`.
    pub fn from_parts(x: Vec<S>, xbar: Vec<S>) -> Result<Self> {
        let n = x.len();
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        if xbar.len() + 1 != n {
            return Err(Error::CoordinateCount { expected: n - 1, got: xbar.len() });
        }
        let mut coords = x;
        coords.extend(xbar);
        Self::new(n, coords)
    }

    /// Point with every coordinate equal to `v`.
    pub fn constant(n: usize, v: S) -> Result<Self> {
        Self::new(n, vec![v; 2 * n - 1])
    }
}

impl<S> GcPoint<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    /// `x_i`, `1 <= i <= n`.
    pub fn x(&self, i: usize) -> &S {
        assert!((1..=self.n).contains(&i), "x index {i} out of range");
        &self.coords[i - 1]
    }

    /// `xb_i`, `1 <= i <= n-1`.
    pub fn xb(&self, i: usize) -> &S {
        assert!((1..self.n).contains(&i), "xbar index {i} out of range");
        &self.coords[2 * self.n - 1 - i]
    }

    pub fn x_part(&self) -> &[S] {
        &self.coords[..self.n]
    }

    /// `(xb_{n-1}, ..., xb_1)`.
    pub fn xbar_part(&self) -> &[S] {
        &self.coords[self.n..]
    }

    fn set_x(&mut self, i: usize, v: S) {
        self.coords[i - 1] = v;
    }

    fn set_xb(&mut self, i: usize, v: S) {
        let k = 2 * self.n - 1 - i;
        self.coords[k] = v;
    }

    /// Coordinatewise conversion, e.g. from integers to max-plus values.
    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> GcPoint<T> {
        GcPoint { n: self.n, coords: self.coords.iter().map(f).collect() }
    }
}

/// Structure shared by single points and products of points.
pub trait GeomCrystal<S: Semifield>: Clone + PartialEq {
    fn rank(&self) -> usize;
    fn eps(&self, i: usize) -> S;
    fn phi(&self, i: usize) -> S;
    fn apply_e(&self, i: usize, c: &S) -> Self;
    /// The `phi_ij` of a pair of adjacent nodes.
    fn phi_pair(&self, i: usize, j: usize) -> Result<S>;
    fn level(&self) -> S;

    fn gamma(&self, i: usize) -> S {
        self.phi(i).div(&self.eps(i))
    }

    fn eps_pair(&self, i: usize, j: usize) -> Result<S> {
        let p = self.phi_pair(j, i)?;
        Ok(p.div(&self.gamma(i).mul(&self.gamma(j))))
    }

    /// Simple reflection `s_i(x) = e_i^{1/gamma_i(x)}(x)`.
    fn weyl_s(&self, i: usize) -> Self {
        self.apply_e(i, &self.gamma(i).inv())
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    for k in [i, j] {
        if k > n {
            return Err(Error::BadIndex { index: k, n });
        }
    }
    if !adjacent(n, i, j) {
        return Err(Error::NotAdjacent(i, j));
    }
    Ok(())
}

impl<S: Semifield> GeomCrystal<S> for GcPoint<S> {
    fn rank(&self) -> usize {
        self.n
    }

    fn eps(&self, i: usize) -> S {
        let n = self.n;
        match i {
            0 => self.x(1).mul(&self.x(2).div(self.xb(2)).add(&S::one())),
            _ if i <= n - 2 => self.xb(i).mul(&self.x(i + 1).div(self.xb(i + 1)).add(&S::one())),
            _ if i == n - 1 => self.x(n).mul(self.xb(n - 1)),
            _ if i == n => self.xb(n - 1).clone(),
            _ => panic!("Dynkin index {i} out of range"),
        }
    }

    fn phi(&self, i: usize) -> S {
        let n = self.n;
        match i {
            0 => self.xb(1).mul(&self.xb(2).div(self.x(2)).add(&S::one())),
            _ if i <= n - 2 => self.x(i).mul(&self.xb(i + 1).div(self.x(i + 1)).add(&S::one())),
            _ if i == n - 1 => self.x(n - 1).clone(),
            _ if i == n => self.x(n - 1).mul(self.x(n)),
            _ => panic!("Dynkin index {i} out of range"),
        }
    }

    fn apply_e(&self, i: usize, c: &S) -> Self {
        let n = self.n;
        let mut out = self.clone();
        let xi = |k: usize| self.x(k).add(&c.mul(self.xb(k))).div(&self.x(k).add(self.xb(k)));
        match i {
            0 => {
                let t = xi(2);
                out.set_x(1, self.x(1).div(&t));
                out.set_x(2, t.mul(self.x(2)).div(c));
                out.set_xb(2, t.mul(self.xb(2)));
                out.set_xb(1, c.mul(self.xb(1)).div(&t));
            }
            _ if i <= n - 2 => {
                let t = xi(i + 1);
                out.set_x(i, c.mul(self.x(i)).div(&t));
                out.set_x(i + 1, t.mul(self.x(i + 1)).div(c));
                out.set_xb(i + 1, t.mul(self.xb(i + 1)));
                out.set_xb(i, self.xb(i).div(&t));
            }
            _ if i == n - 1 => {
                out.set_x(n - 1, c.mul(self.x(n - 1)));
                out.set_x(n, self.x(n).div(c));
            }
            _ if i == n => {
                out.set_x(n, c.mul(self.x(n)));
                out.set_xb(n - 1, self.xb(n - 1).div(c));
            }
            _ => panic!("Dynkin index {i} out of range"),
        }
        out
    }

    fn phi_pair(&self, i: usize, j: usize) -> Result<S> {
        let n = self.n;
        check_pair(n, i, j)?;
        if i == 0 || j == 0 {
            let swap = |k: usize| if k == 0 { 1 } else { k };
            return self.sigma1().phi_pair(swap(i), swap(j));
        }
        let one = S::one();
        let tail = |k: usize| self.xb(k).div(self.x(k)).add(&one);
        let v = if j == i + 1 && i <= n - 3 {
            self.x(i).mul(self.xb(i + 1)).mul(&tail(i + 2))
        } else if i == j + 1 && j <= n - 3 {
            self.x(j).mul(self.x(i)).mul(&tail(j + 2))
        } else if (i, j) == (n - 2, n - 1) {
            self.x(n - 2).mul(self.xb(n - 1))
        } else if (i, j) == (n - 1, n - 2) {
            self.x(n - 2).mul(self.x(n - 1))
        } else if (i, j) == (n - 2, n) {
            self.x(n - 2).mul(self.x(n)).mul(self.xb(n - 1))
        } else if (i, j) == (n, n - 2) {
            self.x(n - 2).mul(self.x(n - 1)).mul(self.x(n))
        } else {
            unreachable!("adjacent pair ({i},{j}) without a formula")
        };
        Ok(v)
    }

    fn level(&self) -> S {
        S::product(&self.coords)
    }
}

impl<S: Semifield> GcPoint<S> {
    /// `x_1 <-> xb_1`.
    pub fn sigma1(&self) -> Self {
        let mut out = self.clone();
        out.set_x(1, self.xb(1).clone());
        out.set_xb(1, self.x(1).clone());
        out
    }

    /// `x_{n-1} -> x_{n-1} x_n`, `xb_{n-1} -> xb_{n-1} x_n`, `x_n -> 1/x_n`.
    pub fn sigman(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        out.set_x(n - 1, self.x(n - 1).mul(self.x(n)));
        out.set_xb(n - 1, self.xb(n - 1).mul(self.x(n)));
        out.set_x(n, self.x(n).inv());
        out
    }

    pub fn tau(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 1..=n - 2 {
            out.set_x(i, self.xb(i).clone());
            out.set_xb(i, self.x(i).clone());
        }
        out.set_x(n - 1, self.xb(n - 1).mul(self.x(n)));
        out.set_xb(n - 1, self.x(n - 1).mul(self.x(n)));
        out.set_x(n, self.x(n).inv());
        out
    }
}

/// The pair involution `x_i <-> yb_i`, `xb_i <-> y_i` (`i <= n-1`), `x_n <-> y_n`.
pub fn star<S: Semifield>(x: &GcPoint<S>, y: &GcPoint<S>) -> Result<(GcPoint<S>, GcPoint<S>)> {
    if x.n != y.n {
        return Err(Error::RankMismatch(x.n, y.n));
    }
    let n = x.n;
    let mut xs = x.clone();
    let mut ys = y.clone();
    for i in 1..n {
        xs.set_x(i, y.xb(i).clone());
        xs.set_xb(i, y.x(i).clone());
        ys.set_x(i, x.xb(i).clone());
        ys.set_xb(i, x.x(i).clone());
    }
    xs.set_x(n, y.x(n).clone());
    ys.set_x(n, x.x(n).clone());
    Ok((xs, ys))
}

/// An ordered product `(x^1, ..., x^L)` of points of one rank.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GcTuple<S> {
    points: Vec<GcPoint<S>>,
}

impl<S: Semifield> GcTuple<S> {
    pub fn new(points: Vec<GcPoint<S>>) -> Result<Self> {
        let first = points.first().ok_or(Error::CoordinateCount { expected: 1, got: 0 })?;
        if let Some(p) = points.iter().find(|p| p.n != first.n) {
            return Err(Error::RankMismatch(first.n, p.n));
        }
        Ok(GcTuple { points })
    }

    pub fn points(&self) -> &[GcPoint<S>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<GcPoint<S>> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The weights `a_k = prod_{j=2}^k eps(x^j) * prod_{j=k}^{L-1} phi(x^j)`.
    fn weights(&self, i: usize) -> Vec<S> {
        let eps: Vec<S> = self.points.iter().map(|p| p.eps(i)).collect();
        let phi: Vec<S> = self.points.iter().map(|p| p.phi(i)).collect();
        let l = self.points.len();
        (1..=l)
            .map(|k| {
                let e = S::product(&eps[1..k]);
                e.mul(&S::product(&phi[k - 1..l - 1]))
            })
            .collect()
    }

    /// The multipliers `c_1, ..., c_L` with which `e_i^c` acts on each factor.
    pub fn split_c(&self, i: usize, c: &S) -> Vec<S> {
        let a = self.weights(i);
        let l = a.len();
        let weighted = |cut: usize| {
            let terms: Vec<S> =
                a.iter().enumerate().map(|(k, v)| if k + 1 <= cut { c.mul(v) } else { v.clone() }).collect();
            S::sum(&terms)
        };
        (1..=l).map(|m| weighted(m).div(&weighted(m - 1))).collect()
    }

    pub fn sigma1(&self) -> Self {
        GcTuple { points: self.points.iter().map(GcPoint::sigma1).collect() }
    }

    pub fn sigman(&self) -> Self {
        GcTuple { points: self.points.iter().map(GcPoint::sigman).collect() }
    }

    /// Splits off the last factor: `(x^1..x^{L-1}, x^L)`.
    fn split_last(&self) -> Option<(GcTuple<S>, &GcPoint<S>)> {
        let (last, rest) = self.points.split_last()?;
        if rest.is_empty() {
            None
        } else {
            Some((GcTuple { points: rest.to_vec() }, last))
        }
    }
}

impl<S: Semifield> GeomCrystal<S> for GcTuple<S> {
    fn rank(&self) -> usize {
        self.points[0].n
    }

    fn eps(&self, i: usize) -> S {
        let eps: Vec<S> = self.points.iter().map(|p| p.eps(i)).collect();
        let phi: Vec<S> = self.points.iter().map(|p| p.phi(i)).collect();
        let l = self.points.len();
        let terms: Vec<S> =
            (1..=l).map(|k| S::product(&eps[..k]).mul(&S::product(&phi[k - 1..l - 1]))).collect();
        S::sum(&terms).div(&S::product(&phi[..l - 1]))
    }

    fn phi(&self, i: usize) -> S {
        let eps: Vec<S> = self.points.iter().map(|p| p.eps(i)).collect();
        let phi: Vec<S> = self.points.iter().map(|p| p.phi(i)).collect();
        let l = self.points.len();
        let terms: Vec<S> =
            (1..=l).map(|k| S::product(&eps[1..k]).mul(&S::product(&phi[k - 1..]))).collect();
        S::sum(&terms).div(&S::product(&eps[1..]))
    }

    fn apply_e(&self, i: usize, c: &S) -> Self {
        let cs = self.split_c(i, c);
        GcTuple { points: self.points.iter().zip(&cs).map(|(p, cl)| p.apply_e(i, cl)).collect() }
    }

    fn phi_pair(&self, i: usize, j: usize) -> Result<S> {
        match self.split_last() {
            None => self.points[0].phi_pair(i, j),
            Some((xs, y)) => {
                let head = xs.phi_pair(i, j)?;
                let (gi, gj) = (y.gamma(i), y.gamma(j));
                Ok(y.phi_pair(i, j)?
                    .add(&xs.phi(i).mul(&y.phi(j)).mul(&gi))
                    .add(&head.mul(&gi).mul(&gj)))
            }
        }
    }

    fn level(&self) -> S {
        let levels: Vec<S> = self.points.iter().map(|p| p.level()).collect();
        S::product(&levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{int, rat, Rational};

    fn pt(n: usize, v: &[i64]) -> GcPoint<Rational> {
        GcPoint::new(n, v.iter().map(|&k| int(k)).collect()).unwrap()
    }

    #[test]
    fn all_ones_values() {
        let x = GcPoint::constant(3, int(1)).unwrap();
        assert_eq!(x.eps(0), int(2));
        assert_eq!(x.phi(0), int(2));
        assert_eq!(x.eps(2), int(1));
        assert_eq!(x.level(), int(1));
    }

    #[test]
    fn level_is_product() {
        assert_eq!(pt(3, &[1, 2, 3, 4, 5]).level(), int(120));
    }

    #[test]
    fn coordinate_layout() {
        let x = pt(4, &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(*x.x(4), int(4));
        assert_eq!(*x.xb(3), int(5));
        assert_eq!(*x.xb(1), int(7));
    }

    #[test]
    fn rejects_bad_points() {
        assert_eq!(GcPoint::new(2, vec![int(1); 3]), Err(Error::RankTooSmall(2)));
        assert!(matches!(GcPoint::new(3, vec![int(1); 4]), Err(Error::CoordinateCount { .. })));
        assert!(matches!(
            GcPoint::new(3, vec![int(1), int(0), int(1), int(1), int(1)]),
            Err(Error::NonPositive { index: 1, .. })
        ));
    }

    #[test]
    fn phi_pair_last_nodes() {
        let x = pt(4, &[2, 3, 5, 7, 11, 13, 17]);
        assert_eq!(x.phi_pair(2, 3).unwrap(), int(3 * 11));
        assert_eq!(x.phi_pair(3, 2).unwrap(), int(3 * 5));
        assert_eq!(x.phi_pair(2, 4).unwrap(), int(3 * 7 * 11));
        assert_eq!(x.phi_pair(4, 2).unwrap(), int(3 * 5 * 7));
        assert_eq!(x.phi_pair(1, 3), Err(Error::NotAdjacent(1, 3)));
    }

    #[test]
    fn phi_pair_node_zero_matches_listed_form() {
        let x = pt(4, &[2, 3, 5, 7, 11, 13, 17]);
        // xb_1 xb_2 (xb_3/x_3 + 1) and xb_1 x_2 (xb_3/x_3 + 1)
        let tail = rat(11, 5).unwrap() + int(1);
        assert_eq!(x.phi_pair(0, 2).unwrap(), int(17 * 13) * &tail);
        assert_eq!(x.phi_pair(2, 0).unwrap(), int(17 * 3) * &tail);
    }

    #[test]
    fn pairing_tables() {
        assert_eq!(pairing(3, 0, 3), -1);
        assert_eq!(pairing(3, 0, 1), 0);
        assert_eq!(pairing(3, 2, 3), 0);
        assert_eq!(pairing(5, 0, 2), -1);
        assert_eq!(pairing(5, 5, 3), -1);
        assert_eq!(pairing(5, 5, 4), 0);
        assert_eq!(pairing(5, 1, 2), -1);
        assert_eq!(pairing(5, 0, 1), 0);
    }

    #[test]
    fn two_fold_product_formulas() {
        let x = pt(3, &[2, 3, 5, 7, 11]);
        let y = pt(3, &[13, 1, 4, 6, 9]);
        let t = GcTuple::new(vec![x.clone(), y.clone()]).unwrap();
        for i in 0..=3 {
            assert_eq!(t.eps(i), x.eps(i) + x.eps(i) * y.eps(i) / x.phi(i));
            assert_eq!(t.phi(i), y.phi(i) + x.phi(i) * y.phi(i) / y.eps(i));
            let c = rat(3, 7).unwrap();
            let cs = t.split_c(i, &c);
            let (p, e) = (x.phi(i), y.eps(i));
            assert_eq!(cs[0], (&c * &p + &e) / (&p + &e));
            assert_eq!(cs[1], (&p + &e) / (&p + &e / &c));
        }
    }

    #[test]
    fn single_factor_tuple_reduces() {
        let x = pt(4, &[2, 3, 5, 7, 11, 13, 17]);
        let t = GcTuple::new(vec![x.clone()]).unwrap();
        for i in 0..=4 {
            assert_eq!(t.eps(i), x.eps(i));
            assert_eq!(t.phi(i), x.phi(i));
        }
    }
}
