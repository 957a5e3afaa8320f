//! The finite crystals `B'_l` of type `D_n^(1)`, their tensor products and
//! the combinatorial R written as explicit piecewise-linear formulas.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom_crystal::GcPoint;
use crate::semifield::MaxPlus;

/// An element `(x_1..x_n, xb_{n-1}..xb_1)` of `B'_l`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElem")]
pub struct CrystalElem {
    n: usize,
    l: i64,
    coords: Vec<i64>,
}

#[derive(Deserialize)]
struct RawElem {
    n: usize,
    l: i64,
    coords: Vec<i64>,
}

impl TryFrom<RawElem> for CrystalElem {
    type Error = Error;
    fn try_from(r: RawElem) -> Result<Self> {
        CrystalElem::new(r.n, r.l, r.coords)
    }
}

impl fmt::Debug for CrystalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// Membership in `B'_l`.
pub fn is_member(n: usize, l: i64, coords: &[i64]) -> bool {
    if n < 3 || coords.len() != 2 * n - 1 {
        return false;
    }
    let x = |i: usize| coords[i - 1];
    let xb = |i: usize| coords[2 * n - 1 - i];
    (1..n).all(|i| x(i) >= 0 && xb(i) >= 0)
        && x(n) >= -x(n - 1).min(xb(n - 1))
        && coords.iter().sum::<i64>() == l
}

impl CrystalElem {
    pub fn new(n: usize, l: i64, coords: Vec<i64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        if coords.len() != 2 * n - 1 {
            return Err(Error::CoordinateCount { expected: 2 * n - 1, got: coords.len() });
        }
        if !is_member(n, l, &coords) {
            return Err(Error::InvalidCrystalElem(format!("{coords:?} is not in B'_{l} for n={n}")));
        }
        Ok(CrystalElem { n, l, coords })
    }

    /// The element `(l, 0, ..., 0)`.
    pub fn highest(n: usize, l: i64) -> Result<Self> {
        let mut coords = vec![0; 2 * n - 1];
        coords[0] = l;
        CrystalElem::new(n, l, coords)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn x(&self, i: usize) -> i64 {
        self.coords[i - 1]
    }

    pub fn xb(&self, i: usize) -> i64 {
        self.coords[2 * self.n - 1 - i]
    }

    pub fn to_point(&self) -> GcPoint<MaxPlus<i64>> {
        GcPoint::new(self.n, self.coords.iter().map(|&v| MaxPlus(v)).collect()).expect("valid rank")
    }

    pub fn from_point(p: &GcPoint<MaxPlus<i64>>) -> Result<Self> {
        let coords: Vec<i64> = p.coords().iter().map(|v| v.0).collect();
        let l = coords.iter().sum();
        CrystalElem::new(p.n(), l, coords)
    }

    pub fn to_zeta(&self) -> ZetaElem {
        let n = self.n;
        let xn = self.x(n);
        let mut zeta = vec![0; 2 * n];
        for i in 1..=n - 2 {
            zeta[i - 1] = self.x(i);
            zeta[2 * n - i] = self.xb(i);
        }
        zeta[n - 2] = self.x(n - 1) + xn.min(0);
        zeta[n - 1] = xn.max(0);
        zeta[n] = (-xn).max(0);
        zeta[n + 1] = self.xb(n - 1) + xn.min(0);
        ZetaElem { n, l: self.l, zeta }
    }

    pub fn from_zeta(z: &ZetaElem) -> Result<Self> {
        z.validate()?;
        let n = z.n;
        let mut coords = vec![0; 2 * n - 1];
        for i in 1..=n - 2 {
            coords[i - 1] = z.zeta(i);
            coords[2 * n - 1 - i] = z.zeta_bar(i);
        }
        coords[n - 2] = z.zeta(n - 1) + z.zeta_bar(n);
        coords[n - 1] = z.zeta(n) - z.zeta_bar(n);
        coords[n] = z.zeta_bar(n - 1) + z.zeta_bar(n);
        CrystalElem::new(n, z.l, coords)
    }
}

/// An element `(zeta_1..zeta_n, zetab_n..zetab_1)` of `B_l`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZetaElem {
    pub n: usize,
    pub l: i64,
    pub zeta: Vec<i64>,
}

impl ZetaElem {
    pub fn zeta(&self, i: usize) -> i64 {
        self.zeta[i - 1]
    }

    pub fn zeta_bar(&self, i: usize) -> i64 {
        self.zeta[2 * self.n - i]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let ok = self.zeta.len() == 2 * n
            && self.zeta.iter().all(|&v| v >= 0)
            && self.zeta.iter().sum::<i64>() == self.l
            && self.zeta(n) * self.zeta_bar(n) == 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCrystalElem(format!("{:?} is not in B_{} for n={n}", self.zeta, self.l)))
        }
    }
}

fn pos(v: i64) -> i64 {
    v.max(0)
}

pub fn c_eps(i: usize, e: &CrystalElem) -> i64 {
    let n = e.n;
    match i {
        0 => e.x(1) + pos(e.x(2) - e.xb(2)),
        _ if i <= n - 2 => e.xb(i) + pos(e.x(i + 1) - e.xb(i + 1)),
        _ if i == n - 1 => e.x(n) + e.xb(n - 1),
        _ if i == n => e.xb(n - 1),
        _ => panic!("Dynkin index {i} out of range"),
    }
}

pub fn c_phi(i: usize, e: &CrystalElem) -> i64 {
    let n = e.n;
    match i {
        0 => e.xb(1) + pos(e.xb(2) - e.x(2)),
        _ if i <= n - 2 => e.x(i) + pos(e.xb(i + 1) - e.x(i + 1)),
        _ if i == n - 1 => e.x(n - 1),
        _ if i == n => e.x(n - 1) + e.x(n),
        _ => panic!("Dynkin index {i} out of range"),
    }
}

/// `e_i^c` for `c >= 0` and `f_i^{-c}` for `c < 0`; `None` when the result leaves `B'_l`.
pub fn c_apply_e(i: usize, c: i64, e: &CrystalElem) -> Option<CrystalElem> {
    let n = e.n;
    let xi = |k: usize| e.x(k).max(e.xb(k) + c) - e.x(k).max(e.xb(k));
    let mut out = e.coords.clone();
    let ix = |k: usize| k - 1;
    let ixb = |k: usize| 2 * n - 1 - k;
    match i {
        0 => {
            let t = xi(2);
            out[ix(1)] -= t;
            out[ix(2)] += t - c;
            out[ixb(2)] += t;
            out[ixb(1)] += c - t;
        }
        _ if i <= n - 2 => {
            let t = xi(i + 1);
            out[ix(i)] += c - t;
            out[ix(i + 1)] += t - c;
            out[ixb(i + 1)] += t;
            out[ixb(i)] -= t;
        }
        _ if i == n - 1 => {
            out[ix(n - 1)] += c;
            out[ix(n)] -= c;
        }
        _ if i == n => {
            out[ix(n)] += c;
            out[ixb(n - 1)] -= c;
        }
        _ => panic!("Dynkin index {i} out of range"),
    }
    is_member(n, e.l, &out).then(|| CrystalElem { n, l: e.l, coords: out })
}

pub type CrystalPair = (CrystalElem, CrystalElem);

pub fn tensor_eps(i: usize, p: &CrystalPair) -> i64 {
    let (ex, px, ey) = (c_eps(i, &p.0), c_phi(i, &p.0), c_eps(i, &p.1));
    ex.max(ex + ey - px)
}

pub fn tensor_phi(i: usize, p: &CrystalPair) -> i64 {
    let (px, ey, py) = (c_phi(i, &p.0), c_eps(i, &p.1), c_phi(i, &p.1));
    py.max(px + py - ey)
}

pub fn tensor_apply_e(i: usize, c: i64, p: &CrystalPair) -> Option<CrystalPair> {
    let (px, ey) = (c_phi(i, &p.0), c_eps(i, &p.1));
    let c1 = (c + px).max(ey) - px.max(ey);
    let c2 = px.max(ey) - px.max(ey - c);
    Some((c_apply_e(i, c1, &p.0)?, c_apply_e(i, c2, &p.1)?))
}

/// Raw coordinate vector with the accessors of a point, used for the
/// piecewise-linear evaluation of R on inputs that need not lie in `B'`.
#[derive(Clone)]
struct Lin {
    n: usize,
    c: Vec<i64>,
}

impl Lin {
    fn of(e: &CrystalElem) -> Self {
        Lin { n: e.n, c: e.coords.clone() }
    }
    fn x(&self, i: usize) -> i64 {
        self.c[i - 1]
    }
    fn xb(&self, i: usize) -> i64 {
        self.c[2 * self.n - 1 - i]
    }
    fn level(&self) -> i64 {
        self.c.iter().sum()
    }
    fn sigma1(&self) -> Self {
        let mut c = self.c.clone();
        c.swap(0, 2 * self.n - 2);
        Lin { n: self.n, c }
    }
}

fn star_lin(x: &Lin, y: &Lin) -> (Lin, Lin) {
    let n = x.n;
    let mut xs = x.c.clone();
    let mut ys = y.c.clone();
    for i in 1..n {
        xs[i - 1] = y.xb(i);
        xs[2 * n - 1 - i] = y.x(i);
        ys[i - 1] = x.xb(i);
        ys[2 * n - 1 - i] = x.x(i);
    }
    xs[n - 1] = y.x(n);
    ys[n - 1] = x.x(n);
    (Lin { n, c: xs }, Lin { n, c: ys })
}

/// `V_i` as a maximum of linear forms.
fn v_pl(i: usize, x: &Lin, y: &Lin) -> i64 {
    let n = x.n;
    let (lx, ly) = (x.level(), y.level());
    let dbar = |a: usize, b: usize| (a..=b).map(|k| y.xb(k) - x.xb(k)).sum::<i64>();
    let dx = |a: usize, b: usize| (a..=b).map(|k| y.x(k) - x.x(k)).sum::<i64>();
    let branch = |j: usize| if j <= i { lx + dbar(j + 1, i) } else { ly - dbar(i + 1, j) };
    let head = lx + dbar(1, i);
    let mut best = i64::MIN;
    for j in 1..=n - 2 {
        best = best.max(branch(j)).max(head + dx(1, j));
    }
    for j in 1..n {
        best = best.max(branch(j) + y.xb(j) - x.x(j));
        best = best.max(head + dx(1, j) + x.x(j) - y.xb(j));
    }
    best = best.max(ly - dbar(i + 1, n - 1) + x.x(n));
    let shift = if i == n - 1 { lx - ly } else { 0 };
    best.max(head + dx(1, n - 1) - x.x(n) + shift)
}

/// The energy of a pair: the piecewise-linear `V_0`.
pub fn energy(x: &CrystalElem, y: &CrystalElem) -> i64 {
    v_pl(0, &Lin::of(x), &Lin::of(y))
}

/// The combinatorial R `B'_{l1} (x) B'_{l2} -> B'_{l2} (x) B'_{l1}`.
pub fn comb_r(x: &CrystalElem, y: &CrystalElem) -> Result<CrystalPair> {
    if x.n != y.n {
        return Err(Error::RankMismatch(x.n, y.n));
    }
    let n = x.n;
    let (lx, ly) = (Lin::of(x), Lin::of(y));
    let (xs, ys) = star_lin(&lx, &ly);
    let v: Vec<i64> = (0..n).map(|i| v_pl(i, &lx, &ly)).collect();
    let vs: Vec<i64> = (0..n).map(|i| v_pl(i, &xs, &ys)).collect();
    let v0s = v_pl(0, &lx.sigma1(), &ly.sigma1());
    // w[i] = W_i for 1 <= i <= n-1
    let mut w = vec![0; n];
    w[1] = v[0] + v0s;
    for i in 2..=n - 2 {
        w[i] = (v[i] + vs[i - 1] - y.x(i)).max(v[i - 1] + vs[i] - x.xb(i)) + x.x(i).min(y.xb(i));
    }
    w[n - 1] = v[n - 1] + vs[n - 1];

    let mut xp = vec![0; 2 * n - 1];
    let mut yp = vec![0; 2 * n - 1];
    let ixb = |k: usize| 2 * n - 1 - k;
    xp[0] = y.x(1) + v0s - v[1];
    xp[ixb(1)] = y.xb(1) + v[0] - v[1];
    yp[0] = x.x(1) + v[0] - vs[1];
    yp[ixb(1)] = x.xb(1) + v0s - vs[1];
    for i in 2..n {
        let dw = w[i] - w[i - 1];
        xp[i - 1] = y.x(i) + v[i - 1] - v[i] + dw;
        xp[ixb(i)] = y.xb(i) + v[i - 1] - v[i];
        yp[i - 1] = x.x(i) + vs[i - 1] - vs[i];
        yp[ixb(i)] = x.xb(i) + vs[i - 1] - vs[i] + dw;
    }
    xp[n - 1] = y.x(n) + v[n - 1] - vs[n - 1];
    yp[n - 1] = x.x(n) + vs[n - 1] - v[n - 1];
    Ok((CrystalElem::new(n, y.l, xp)?, CrystalElem::new(n, x.l, yp)?))
}

/// All of `B'_l` in lexicographic order of coordinates.
pub fn enumerate(n: usize, l: i64) -> Vec<CrystalElem> {
    assert!(n >= 3 && l >= 0, "enumerate needs n >= 3 and l >= 0");
    let free = 2 * n - 2;
    let mut out = Vec::new();
    let mut rest = vec![0i64; free];
    loop {
        let s: i64 = rest.iter().sum();
        let mut coords = Vec::with_capacity(2 * n - 1);
        coords.extend_from_slice(&rest[..n - 1]);
        coords.push(l - s);
        coords.extend_from_slice(&rest[n - 1..]);
        if is_member(n, l, &coords) {
            out.push(CrystalElem { n, l, coords });
        }
        let mut k = free;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if rest[k] < l {
                rest[k] += 1;
                break;
            }
            rest[k] = 0;
        }
    }
}

/// All of `B_l` in lexicographic order.
pub fn enumerate_zeta(n: usize, l: i64) -> Vec<ZetaElem> {
    fn compositions(parts: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=total {
            prefix.push(v);
            compositions(parts - 1, total - v, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    compositions(2 * n, l, &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|zeta| ZetaElem { n, l, zeta })
        .filter(|z| z.zeta(n) * z.zeta_bar(n) == 0)
        .collect()
}

/// The combinatorial R obtained by propagating the highest pair swap along
/// `e_i^{+-1}` on `B'_{l1} (x) B'_{l2}`.
pub fn oracle_r(n: usize, l1: i64, l2: i64) -> Result<BTreeMap<CrystalPair, CrystalPair>> {
    let start = (CrystalElem::highest(n, l1)?, CrystalElem::highest(n, l2)?);
    let image = (CrystalElem::highest(n, l2)?, CrystalElem::highest(n, l1)?);
    let mut map = BTreeMap::new();
    map.insert(start.clone(), image);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let r = map[&p].clone();
        for i in 0..=n {
            for c in [1, -1] {
                let Some(q) = tensor_apply_e(i, c, &p) else { continue };
                let rq = tensor_apply_e(i, c, &r).ok_or_else(|| {
                    Error::OracleConflict(format!("e_{i}^{c} defined on {p:?} but not on its image {r:?}"))
                })?;
                match map.get(&q) {
                    Some(prev) if *prev != rq => {
                        return Err(Error::OracleConflict(format!("{q:?} maps to both {prev:?} and {rq:?}")));
                    }
                    Some(_) => {}
                    None => {
                        map.insert(q.clone(), rq);
                        queue.push_back(q);
                    }
                }
            }
        }
    }
    let domain = enumerate(n, l1).len() * enumerate(n, l2).len();
    if map.len() != domain {
        let mut sample = Vec::new();
        'outer: for a in enumerate(n, l1) {
            for b in enumerate(n, l2) {
                let p = (a.clone(), b);
                if !map.contains_key(&p) {
                    sample.push(format!("{p:?}"));
                    if sample.len() == 5 {
                        break 'outer;
                    }
                }
            }
        }
        return Err(Error::Connectivity { uncovered: domain - map.len(), sample });
    }
    Ok(map)
}
