//! The 2n x 2n matrix realization `M(x,z) = A(x) + z B(x) + z^2 C(x)`.
//!
//! Entries are exact rationals. Identities between polynomials in `z` are
//! certified by exact equality at enough distinct sample points.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geom_crystal::{GcPoint, GcTuple, GeomCrystal};
use crate::semifield::{format_rational, int, Rational};

/// Dense square matrix over exact rationals. Accessors take 1-based indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.dim, self.dim)?;
        for i in 1..=self.dim {
            let row: Vec<String> = (1..=self.dim).map(|j| format_rational(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.dim))?;
        for i in 1..=self.dim {
            let row: Vec<String> = (1..=self.dim).map(|j| format_rational(self.at(i, j))).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn diag(entries: Vec<Rational>) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (k, v) in entries.into_iter().enumerate() {
            m.set(k + 1, k + 1, v);
        }
        m
    }

    /// Builds a matrix from a function of 1-based indices.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 1..=dim {
            for j in 1..=dim {
                data.push(f(i, j));
            }
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[(i - 1) * self.dim + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[(i - 1) * self.dim + (j - 1)] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Matrix { dim: self.dim, data: self.data.iter().map(|v| v * k).collect() }
    }

    pub fn is_lower_triangular(&self) -> bool {
        (1..=self.dim).all(|i| (i + 1..=self.dim).all(|j| self.at(i, j).is_zero()))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (1..=self.dim).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        (1..=self.dim).map(|j| self.at(i, j).clone()).collect()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(d);
        for col in 1..=d {
            let piv = (col..=d).find(|&r| !a.at(r, col).is_zero())?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p = a.at(col, col).clone();
            for j in 1..=d {
                let v = a.at(col, j) / &p;
                a.set(col, j, v);
                let v = inv.at(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 1..=d {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 1..=d {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    a.set(r, j, v);
                    let v = inv.at(r, j) - &f * inv.at(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 1..=self.dim {
            self.data.swap((r1 - 1) * self.dim + j - 1, (r2 - 1) * self.dim + j - 1);
        }
    }

    pub fn rank(&self) -> usize {
        let d = self.dim;
        let mut a = self.clone();
        let mut rank = 0;
        for col in 1..=d {
            let Some(piv) = (rank + 1..=d).find(|&r| !a.at(r, col).is_zero()) else { continue };
            rank += 1;
            a.swap_rows(piv, rank);
            let p = a.at(rank, col).clone();
            for r in rank + 1..=d {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col) / &p;
                for j in col..=d {
                    let v = a.at(r, j) - &f * a.at(rank, j);
                    a.set(r, j, v);
                }
            }
        }
        rank
    }

    /// Determinant by fraction-free elimination on an integer rescaling.
    pub fn det(&self) -> Rational {
        let d = self.dim;
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(d);
        for i in 1..=d {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            m.push(row.iter().map(|v| v.numer() * (&l / v.denom())).collect());
            scale *= l;
        }
        Rational::new(bareiss(m), scale)
    }
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let d = m.len();
    if d == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..d - 1 {
        if m[k][k].is_zero() {
            match (k + 1..d).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[d - 1][d - 1]
}

/// Integer numerators over one common denominator.
fn common_denominator<'a>(vals: impl Iterator<Item = &'a Rational> + Clone) -> (Vec<BigInt>, BigInt) {
    let den = vals.clone().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = vals.map(|v| v.numer() * (&den / v.denom())).collect();
    (nums, den)
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let rows: Vec<_> = (0..d).map(|i| common_denominator(self.data[i * d..(i + 1) * d].iter())).collect();
        let cols: Vec<_> = (0..d).map(|j| common_denominator(rhs.data[j..].iter().step_by(d))).collect();
        let mut out = Matrix::zeros(d);
        for (i, (a, da)) in rows.iter().enumerate() {
            for (j, (b, db)) in cols.iter().enumerate() {
                let mut acc = BigInt::zero();
                for (p, q) in a.iter().zip(b) {
                    if !p.is_zero() && !q.is_zero() {
                        acc += p * q;
                    }
                }
                if !acc.is_zero() {
                    out.data[i * d + j] = Rational::new(acc, da * db);
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// Product of a nonempty list of matrices.
pub fn product(ms: &[Matrix]) -> Matrix {
    let mut it = ms.iter();
    let first = it.next().expect("empty product").clone();
    it.fold(first, |acc, m| &acc * m)
}

/// `M(x,z)` together with the spectral parameter it was evaluated at.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZMatrix {
    pub z: Rational,
    pub m: Matrix,
}

impl std::ops::Deref for ZMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.m
    }
}

/// Coefficients of `M(x,z)` in `z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MTriple {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

impl MTriple {
    pub fn eval(&self, z: &Rational) -> Matrix {
        &(&self.a + &self.b.scale(z)) + &self.c.scale(&(z * z))
    }
}

/// Polynomial in z of degree at most 2.
#[derive(Clone, Debug, Default)]
struct Quad([Rational; 3]);

impl Quad {
    fn constant(v: Rational) -> Self {
        Quad([v, Rational::zero(), Rational::zero()])
    }
    fn linear(c0: Rational, c1: Rational) -> Self {
        Quad([c0, c1, Rational::zero()])
    }
    fn scale(&self, k: &Rational) -> Self {
        Quad([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
    }
    fn shift(&self) -> Self {
        assert!(self.0[2].is_zero(), "degree in z exceeds 2");
        Quad([Rational::zero(), self.0[0].clone(), self.0[1].clone()])
    }
    fn plus(&self, o: &Quad) -> Self {
        Quad([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

pub fn build_m_triple(x: &GcPoint<Rational>) -> MTriple {
    let n = x.n();
    let d = 2 * n;
    let l = x.level();
    let one = Rational::one();
    let lz1 = Quad::linear(-one.clone(), l.clone());
    let one_lz = Quad::linear(one.clone(), -l.clone());
    let xs = |i: usize| x.x(i).clone();
    let xb = |i: usize| x.xb(i).clone();
    let xbar_cap = |i: usize| &one + xb(i) / xs(i);

    let mut cols: Vec<Vec<Quad>> = vec![Vec::new(); d + 1];

    let mut first = vec![Quad::default(); d + 1];
    first[1] = Quad::constant(xs(1) / xb(1));
    let mut prefix = one.clone();
    for i in 2..n {
        prefix *= xs(i - 1);
        first[i] = Quad::constant(&prefix * (&one + xs(i) / xb(i)));
    }
    let x_to_nm1: Rational = (1..n).map(xs).product();
    first[n] = Quad::constant(&x_to_nm1 * xs(n));
    first[n + 1] = Quad::constant(x_to_nm1.clone());
    for i in n + 2..=d {
        let den: Rational = (1..=d - i).map(xb).product();
        first[i] = Quad::constant(&l / den);
    }
    cols[1] = first;

    let step = |prev: &[Quad], div: &Rational, extra: &[(usize, Quad)]| -> Vec<Quad> {
        let inv = &one / div;
        let mut col: Vec<Quad> = prev.iter().map(|q| q.scale(&inv)).collect();
        for (i, q) in extra {
            col[*i] = col[*i].plus(q);
        }
        col
    };

    for j in 1..=n - 2 {
        let extra = [(j, lz1.scale(&(&one / xb(j)))), (j + 1, lz1.clone())];
        cols[j + 1] = step(&cols[j], &xs(j), &extra);
    }
    let extra = [(n - 1, lz1.scale(&(&one / xb(n - 1)))), (n + 1, lz1.clone())];
    cols[n] = step(&cols[n - 1], &xs(n - 1), &extra);
    let extra = [(n - 1, lz1.scale(&(&one / (xb(n - 1) * xs(n))))), (n, lz1.clone())];
    cols[n + 1] = step(&cols[n - 1], &(xs(n - 1) * xs(n)), &extra);

    let r1 = xb(1) / xs(1);
    let mut col: Vec<Quad> = cols[1].iter().map(|q| q.scale(&r1).shift()).collect();
    col[d] = col[d].plus(&one_lz.scale(&r1));
    col[1] = col[1].plus(&lz1.shift());
    cols[d] = col;

    let k = xb(1) * xbar_cap(2);
    let mut col: Vec<Quad> = cols[1].iter().map(|q| q.scale(&k).shift()).collect();
    col[d] = col[d].plus(&one_lz.scale(&k));
    col[d - 1] = col[d - 1].plus(&one_lz.scale(&(xb(2) / xs(2))));
    cols[d - 1] = col;

    for j in 2..=n - 2 {
        let k = xb(j) * xbar_cap(j + 1) / xbar_cap(j);
        let mut col: Vec<Quad> = cols[d + 1 - j].iter().map(|q| q.scale(&k)).collect();
        col[d + 1 - j] = col[d + 1 - j].plus(&one_lz.scale(&k));
        col[d - j] = col[d - j].plus(&one_lz.scale(&(xb(j + 1) / xs(j + 1))));
        cols[d - j] = col;
    }

    let coeff = |p: usize| Matrix::from_fn(d, |i, j| cols[j][i].0[p].clone());
    MTriple { a: coeff(0), b: coeff(1), c: coeff(2) }
}

pub fn build_m(x: &GcPoint<Rational>, z: &Rational) -> ZMatrix {
    ZMatrix { z: z.clone(), m: build_m_triple(x).eval(z) }
}

/// `M(x^1,z) ... M(x^L,z)`.
pub fn build_m_product(xs: &[GcPoint<Rational>], z: &Rational) -> Matrix {
    let ms: Vec<Matrix> = xs.iter().map(|x| build_m(x, z).m).collect();
    product(&ms)
}

/// Unipotent generator `G_i(a)`, `0 <= i <= n`.
pub fn g(n: usize, i: usize, a: &Rational) -> Matrix {
    assert!(i <= n, "Dynkin index out of range");
    let mut m = Matrix::identity(2 * n);
    for (r, c) in g_cells(n, i) {
        m.set(r, c, a.clone());
    }
    m
}

fn g_cells(n: usize, i: usize) -> [(usize, usize); 2] {
    let d = 2 * n;
    match i {
        0 => [(d - 1, 1), (d, 2)],
        _ if i == n => [(n - 1, n + 1), (n, n + 2)],
        _ => [(i, i + 1), (d - i, d + 1 - i)],
    }
}

/// `G_i(a) m G_i(b)` by row and column operations.
pub fn conjugate_g(i: usize, a: &Rational, m: &Matrix, b: &Rational) -> Matrix {
    let n = m.dim() / 2;
    let cells = g_cells(n, i);
    let mut out = m.clone();
    for (r, c) in cells {
        for j in 1..=2 * n {
            let v = out.at(r, j) + a * out.at(c, j);
            out.set(r, j, v);
        }
    }
    for (r, c) in cells {
        for k in 1..=2 * n {
            let v = out.at(k, c) + b * out.at(k, r);
            out.set(k, c, v);
        }
    }
    out
}

/// `F_i(a)`, the transpose of `G_i(a)`.
pub fn f(n: usize, i: usize, a: &Rational) -> Matrix {
    g(n, i, a).transpose()
}

/// The diagonal factor of `A(x)`.
pub fn d_matrix(x: &GcPoint<Rational>) -> Matrix {
    let n = x.n();
    let mut e: Vec<Rational> = (1..n).map(|i| x.x(i) / x.xb(i)).collect();
    e.push(x.x(n).clone());
    e.push(Rational::one() / x.x(n));
    e.extend((1..n).rev().map(|i| x.xb(i) / x.x(i)));
    Matrix::diag(e)
}

pub fn j1(n: usize, z: &Rational) -> Result<Matrix> {
    if z.is_zero() {
        return Err(Error::ZeroSpectralParameter);
    }
    let d = 2 * n;
    let mut m = Matrix::identity(d);
    m.set(1, 1, Rational::zero());
    m.set(d, d, Rational::zero());
    m.set(1, d, z.clone());
    m.set(d, 1, Rational::one() / z);
    Ok(m)
}

pub fn jn(n: usize) -> Matrix {
    let mut m = Matrix::identity(2 * n);
    m.set(n, n, Rational::zero());
    m.set(n + 1, n + 1, Rational::zero());
    m.set(n, n + 1, Rational::one());
    m.set(n + 1, n, Rational::one());
    m
}

/// Anti-diagonal permutation `J`.
pub fn j_rev(n: usize) -> Matrix {
    let d = 2 * n;
    Matrix::from_fn(d, |i, j| if i + j == d + 1 { Rational::one() } else { Rational::zero() })
}

pub fn j_star(n: usize) -> Matrix {
    let d = 2 * n;
    Matrix::from_fn(d, |i, j| {
        let hit = if i == n || i == n + 1 { i == j } else { i + j == d + 1 };
        if hit { Rational::one() } else { Rational::zero() }
    })
}

/// Sign matrix `S = [[0, T], [T^t, 0]]` with `T_ij = (-1)^{i-1}` on the anti-diagonal.
pub fn s_matrix(n: usize) -> Matrix {
    let t = |i: usize, j: usize| {
        if i + j == n + 1 {
            if i % 2 == 1 { int(1) } else { int(-1) }
        } else {
            Rational::zero()
        }
    };
    Matrix::from_fn(2 * n, |i, j| {
        if i <= n && j > n {
            t(i, j - n)
        } else if i > n && j <= n {
            t(j, i - n)
        } else {
            Rational::zero()
        }
    })
}

pub fn p_ones(n: usize) -> Matrix {
    Matrix::from_fn(2 * n, |_, _| Rational::one())
}

/// `diag` of the last row of `A(x)`.
pub fn d1(x: &GcPoint<Rational>) -> Matrix {
    let a = build_m_triple(x).a;
    Matrix::diag(a.row(a.dim()))
}

/// `diag` of the first column of `A(x)`.
pub fn d2(x: &GcPoint<Rational>) -> Matrix {
    Matrix::diag(build_m_triple(x).a.column(1))
}

/// `S X^t S`.
pub fn check_of(x: &Matrix) -> Matrix {
    let s = s_matrix(x.dim() / 2);
    &(&s * &x.transpose()) * &s
}

/// The factors of `A(x)` in order:
/// `F_1(xb_1) ... F_{n-2}(xb_{n-2}) F_n(xb_{n-1}) d(x) F_{n-1}(x_{n-1}) ... F_1(x_1)`.
pub fn factor_a(x: &GcPoint<Rational>) -> Vec<Matrix> {
    let n = x.n();
    let mut out: Vec<Matrix> = (1..=n - 2).map(|i| f(n, i, x.xb(i))).collect();
    out.push(f(n, n, x.xb(n - 1)));
    out.push(d_matrix(x));
    out.extend((1..n).rev().map(|i| f(n, i, x.x(i))));
    out
}

pub fn check_factor_a(x: &GcPoint<Rational>) -> bool {
    product(&factor_a(x)) == build_m_triple(x).a
}

pub fn check_msms(x: &GcPoint<Rational>, z: &Rational) -> bool {
    let m = build_m(x, z).m;
    let k = Rational::one() - z * x.level();
    &m * &check_of(&m) == Matrix::identity(m.dim()).scale(&(&k * &k))
}

pub fn det_m(x: &GcPoint<Rational>, z: &Rational) -> Rational {
    build_m(x, z).det()
}

pub fn check_det(x: &GcPoint<Rational>, z: &Rational) -> bool {
    let k = Rational::one() - z * x.level();
    det_m(x, z) == num_traits::pow(k, 2 * x.n())
}

/// Rank-one collapse at `z = 1/l(x)` and the resulting formula for `B(x)`.
pub fn check_rank_one(x: &GcPoint<Rational>) -> bool {
    let n = x.n();
    let l = x.level();
    let t = build_m_triple(x);
    let dpd = &(&d2(x) * &p_ones(n)) * &d1(x);
    let collapsed = t.eval(&(Rational::one() / &l));
    let b = &(&dpd - &t.a.scale(&l)) - &t.c.scale(&(Rational::one() / &l));
    collapsed == dpd.scale(&(Rational::one() / &l)) && t.b == b && collapsed.rank() == 1
}

fn spectral_divisor(i: usize, z: &Rational) -> Result<Rational> {
    if i == 0 {
        if z.is_zero() {
            return Err(Error::ZeroSpectralParameter);
        }
        Ok(z.clone())
    } else {
        Ok(Rational::one())
    }
}

/// `G_i((c-1)/(z^{d} eps)) M G_i((1/c-1)/(z^{d} phi)) == M(e_i^c x)` with `d = [i = 0]`.
pub fn check_gmg(i: usize, c: &Rational, x: &GcPoint<Rational>, z: &Rational) -> Result<bool> {
    let t = GcTuple::new(vec![x.clone()])?;
    check_prod_gmg(i, c, &t, z)
}

pub fn check_prod_gmg(i: usize, c: &Rational, xs: &GcTuple<Rational>, z: &Rational) -> Result<bool> {
    let n = xs.rank();
    if i > n {
        return Err(Error::BadIndex { index: i, n });
    }
    let m = build_m_product(xs.points(), z);
    let moved = build_m_product(xs.apply_e(i, c).points(), z);
    gmg_holds(i, c, xs, &m, &moved, z)
}

/// The conjugation identity with both products at `z` already evaluated.
pub fn gmg_holds(
    i: usize,
    c: &Rational,
    xs: &GcTuple<Rational>,
    m: &Matrix,
    moved: &Matrix,
    z: &Rational,
) -> Result<bool> {
    let zd = spectral_divisor(i, z)?;
    let one = Rational::one();
    let a = (c - &one) / (&zd * xs.eps(i));
    let b = (&one / c - &one) / (&zd * xs.phi(i));
    Ok(conjugate_g(i, &a, m, &b) == *moved)
}

/// Outcome of the four conjugation identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JmjReport {
    /// `None` at `z = 0`, where `J_1(z)` is undefined.
    pub j1: Option<bool>,
    pub jn: bool,
    pub j: bool,
    pub j_star: bool,
}

impl JmjReport {
    pub fn all(&self) -> bool {
        self.j1.unwrap_or(true) && self.jn && self.j && self.j_star
    }
}

pub fn check_jmj(x: &GcPoint<Rational>, y: &GcPoint<Rational>, z: &Rational) -> Result<JmjReport> {
    let n = x.n();
    let m = build_m(x, z).m;
    let j1 = match j1(n, z) {
        Ok(j) => Some(&(&j * &m) * &j == build_m(&x.sigma1(), z).m),
        Err(_) => None,
    };
    let jn_ok = &(&jn(n) * &m) * &jn(n) == build_m(&x.sigman(), z).m;
    let j_ok = &(&j_rev(n) * &m.transpose()) * &j_rev(n) == build_m(&x.tau(), z).m;
    let (xs, _) = crate::geom_crystal::star(x, y)?;
    let my = build_m(y, z).m;
    let js_ok = &(&j_star(n) * &my.transpose()) * &j_star(n) == build_m(&xs, z).m;
    Ok(JmjReport { j1, jn: jn_ok, j: j_ok, j_star: js_ok })
}

/// Solves for `x` from a vector proportional to the first column of `A(x)`
/// and the level `l(x)`.
pub fn point_from_first_column(n: usize, a: &[Rational], level: &Rational) -> Result<GcPoint<Rational>> {
    let bad = |what: &str| Error::NotMProduct(what.to_string());
    let d = 2 * n;
    if a.len() != d {
        return Err(bad("column has wrong length"));
    }
    if a.iter().any(|v| v.is_zero()) {
        return Err(bad("zero entry in first column"));
    }
    let at = |i: usize| &a[i - 1];
    let one = Rational::one();
    let mut x = vec![Rational::zero(); n + 1];
    let mut xb = vec![Rational::zero(); n];
    x[n] = at(n) / at(n + 1);
    xb[n - 1] = at(n + 2) / (at(n + 1) * &x[n]);
    for j in 1..=n - 2 {
        xb[j] = at(d + 1 - j) / at(d - j);
    }
    let r = at(n) / at(n - 1);
    x[n - 1] = &r / (&x[n] - &r / &xb[n - 1]);
    for k in (2..=n - 2).rev() {
        let q = at(k + 1) / at(k);
        let cap = &one + &x[k + 1] / &xb[k + 1];
        x[k] = &q / (cap - &q / &xb[k]);
    }
    let rest: Rational = x[2..=n].iter().chain(xb[1..n].iter()).product();
    x[1] = level / rest;
    let coords: Vec<Rational> = x[1..=n].iter().cloned().chain(xb[1..n].iter().rev().cloned()).collect();
    if coords.iter().any(|v| !v.is_positive()) {
        return Err(bad("recovered coordinates are not positive"));
    }
    GcPoint::new(n, coords)
}

/// Recovers `x^1, ..., x^L` from `z -> M(x^1,z) ... M(x^L,z)` and the levels.
pub fn recover_components(
    n: usize,
    levels: &[Rational],
    eval: impl Fn(&Rational) -> Matrix,
) -> Result<Vec<GcPoint<Rational>>> {
    for (k, a) in levels.iter().enumerate() {
        if levels[..k].contains(a) {
            return Err(Error::EqualLevels);
        }
        if !a.is_positive() {
            return Err(Error::NotMProduct(format!("level {a} is not positive")));
        }
    }
    let mut found: Vec<GcPoint<Rational>> = Vec::new();
    for l in levels {
        let z = Rational::one() / l;
        let mut m = eval(&z);
        if m.dim() != 2 * n {
            return Err(Error::NotMProduct("dimension mismatch".into()));
        }
        if !found.is_empty() {
            let known = build_m_product(&found, &z);
            let inv = known
                .inverse()
                .ok_or_else(|| Error::NotMProduct("recovered prefix is singular".into()))?;
            m = &inv * &m;
        }
        if m.rank() != 1 {
            return Err(Error::NotMProduct(format!("rank {} at z = 1/level", m.rank())));
        }
        let col = (1..=m.dim())
            .map(|j| m.column(j))
            .find(|c| c.iter().any(|v| !v.is_zero()))
            .ok_or_else(|| Error::NotMProduct("zero matrix".into()))?;
        found.push(point_from_first_column(n, &col, l)?);
    }
    let samples = 2 * levels.len() + 1;
    for k in 0..samples {
        let z = int(k as i64);
        if build_m_product(&found, &z) != eval(&z) {
            return Err(Error::NotMProduct(format!("mismatch at z = {k}")));
        }
    }
    Ok(found)
}

/// Closed forms for entries of `I = A(x) A(y)`: the diagonal, the quadratic
/// column relations, `I_{n,n-1}`, `I_{n+2,n-1}` and `I_{n+1,n} = 0`.
pub fn check_pair_fixtures(x: &GcPoint<Rational>, y: &GcPoint<Rational>) -> bool {
    let n = x.n();
    let i_m = &build_m_triple(x).a * &build_m_triple(y).a;
    let one = Rational::one();
    let diag = (1..n).all(|i| *i_m.at(i, i) == x.x(i) * y.x(i) / (x.xb(i) * y.xb(i)))
        && *i_m.at(n, n) == x.x(n) * y.x(n);
    let quadratic = (1..=n).all(|i| {
        let s: Rational = (i..=n)
            .map(|m| {
                let t = i_m.at(m, i) * i_m.at(2 * n + 1 - m, i);
                if m % 2 == 0 { t } else { -t }
            })
            .sum();
        s.is_zero()
    });
    let tail = &one / x.x(n - 1) + &one / (y.xb(n - 1) * y.x(n));
    let e12a = *i_m.at(n, n - 1) == x.x(n - 1) * x.x(n) * y.x(n - 1) * y.x(n) * &tail;
    let a11 = *i_m.at(n + 2, n - 1)
        == y.x(n - 1) * y.x(n) * x.xb(n - 1) * (y.xb(n - 1) + x.x(n - 1) * x.x(n)) * &tail;
    diag && quadratic && e12a && a11 && i_m.at(n + 1, n).is_zero()
}

fn check_lower_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::BadIndex { index: i, n });
    }
    Ok(())
}

/// `e_i^c` on a lower-triangular matrix, `1 <= i <= n-1`.
pub fn apply_e_lower(i: usize, c: &Rational, x: &Matrix) -> Result<Matrix> {
    let n = x.dim() / 2;
    check_lower_index(n, i)?;
    if !x.is_lower_triangular() {
        return Err(Error::NotLowerTriangular);
    }
    let sub = x.at(i + 1, i);
    if sub.is_zero() {
        return Err(Error::ZeroPivot(i + 1, i));
    }
    let one = Rational::one();
    let u = x.at(i, i) / sub * (c - &one);
    let v = x.at(i + 1, i + 1) / sub * (c - &one) / c;
    Ok(&(&g(n, i, &u) * x) * &g(n, i, &-v))
}

/// `(X_{i+1,i}/X_{i,i}, X_{i+1,i}/X_{i+1,i+1})`.
pub fn matrix_eps_phi(x: &Matrix, i: usize) -> Result<(Rational, Rational)> {
    let n = x.dim() / 2;
    check_lower_index(n, i)?;
    for k in [i, i + 1] {
        if x.at(k, k).is_zero() {
            return Err(Error::ZeroPivot(k, k));
        }
    }
    let s = x.at(i + 1, i);
    Ok((s / x.at(i, i), s / x.at(i + 1, i + 1)))
}
