//! Crystals: the explicit structure on `Z^infinity[lambda]`, the elementary
//! crystals `B_i` and `R_lambda`, and tensor products.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::iota::IotaSequence;

/// An integer or `-infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::NegInf => None,
            ExtInt::Finite(v) => Some(v),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: i64) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::NegInf,
            ExtInt::Finite(v) => ExtInt::Finite(v + rhs),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A weight kept as `sum_i f_i Lambda_i + sum_j r_j alpha_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightExpr {
    pub fundamental: Vec<i64>,
    pub roots: Vec<i64>,
}

impl WeightExpr {
    pub fn zero(rank: usize) -> Self {
        Self {
            fundamental: vec![0; rank],
            roots: vec![0; rank],
        }
    }

    pub fn from_weight(w: &Weight) -> Self {
        Self {
            fundamental: w.coeffs().to_vec(),
            roots: vec![0; w.rank()],
        }
    }

    /// `x alpha_i`.
    pub fn root(rank: usize, i: usize, x: i64) -> Self {
        let mut w = Self::zero(rank);
        w.roots[i - 1] = x;
        w
    }

    /// `<h_i, self>`.
    pub fn pairing(&self, cartan: &CartanData, i: usize) -> i64 {
        let mut v = self.fundamental[i - 1];
        for (j, r) in self.roots.iter().enumerate() {
            v += cartan.a(i, j + 1) * r;
        }
        v
    }

    pub fn pairings(&self, cartan: &CartanData) -> Vec<i64> {
        (1..=cartan.rank()).map(|i| self.pairing(cartan, i)).collect()
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            fundamental: self.fundamental.iter().zip(&other.fundamental).map(|(a, b)| a + b).collect(),
            roots: self.roots.iter().zip(&other.roots).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_root(&self, i: usize, x: i64) -> Self {
        let mut w = self.clone();
        w.roots[i - 1] += x;
        w
    }
}

/// A finitely supported integer vector `(..., x_2, x_1)`.
///
/// Stored densely with `x_1` first and trailing zeros trimmed, so derived
/// equality and hashing are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    /// From coordinates in position order `x_1, x_2, ...`.
    pub fn from_positions(mut v: Vec<i64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Self(v)
    }

    /// From the right-to-left display `(..., x_2, x_1)`.
    pub fn from_display(display: &[i64]) -> Self {
        Self::from_positions(display.iter().rev().copied().collect())
    }

    pub fn from_sparse(entries: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut v = Vec::new();
        for (k, x) in entries {
            assert!(k >= 1, "positions start at 1");
            if v.len() < k {
                v.resize(k, 0);
            }
            v[k - 1] += x;
        }
        Self::from_positions(v)
    }

    /// `x_k`, zero outside the support.
    #[inline]
    pub fn get(&self, k: usize) -> i64 {
        self.0.get(k.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Coordinates `x_1, x_2, ...` up to the last nonzero one.
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Largest position with a nonzero entry, 0 for the zero vector.
    pub fn max_support(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// `sum_k x_k`, the number of lowering steps from the zero vector.
    pub fn depth(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn with_added(&self, k: usize, delta: i64) -> Self {
        let mut v = self.0.clone();
        if v.len() < k {
            v.resize(k, 0);
        }
        v[k - 1] += delta;
        Self::from_positions(v)
    }

    /// Nonzero entries `(k, x_k)`.
    pub fn sparse(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().enumerate().filter(|(_, &x)| x != 0).map(|(p, &x)| (p + 1, x))
    }

    /// `m_i = sum_{i_k = i} x_k` for every color.
    pub fn root_content(&self, s: &IotaSequence) -> Vec<i64> {
        let mut m = vec![0; s.rank()];
        for (k, x) in self.sparse() {
            m[s.index_at(k) - 1] += x;
        }
        m
    }
}

impl fmt::Display for LatticePoint {
    /// `(x_L, ..., x_1)`, or `(0)` for the zero vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        let shown: Vec<String> = self.0.iter().rev().map(|x| x.to_string()).collect();
        write!(f, "({})", shown.join(","))
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, i64> = self.sparse().collect();
        map.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<usize, i64>::deserialize(de)?;
        if map.contains_key(&0) {
            return Err(serde::de::Error::custom("positions start at 1"));
        }
        Ok(Self::from_sparse(map))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// `Z^infinity[lambda]`.
    HighestWeight,
    /// `Z^infinity` itself: `sigma_0` is `-infinity`.
    BInfinity,
}

/// The values of `sigma_k` relevant to one color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaData {
    /// `sigma^(i)`, the maximum over positions carrying `i`.
    pub sigma: i64,
    /// `sigma_0^(i)`, absent in `BInfinity` mode.
    pub sigma0: Option<i64>,
    pub min_m: usize,
    /// Largest position attaining the maximum; only meaningful when
    /// `sigma > 0`, since otherwise the maximizing set is infinite.
    pub max_m: usize,
}

/// Context of a lattice crystal: the sequence, the highest weight, the mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCrystal {
    seq: IotaSequence,
    lambda: Weight,
    mode: Mode,
}

impl LatticeCrystal {
    /// `Z^infinity[lambda]`; `lambda` must be dominant.
    pub fn highest_weight(seq: IotaSequence, lambda: Weight) -> Result<Self> {
        lambda.check_rank(seq.cartan())?;
        lambda.check_dominant()?;
        Ok(Self {
            seq,
            lambda,
            mode: Mode::HighestWeight,
        })
    }

    pub fn b_infinity(seq: IotaSequence) -> Self {
        let rank = seq.rank();
        Self {
            seq,
            lambda: Weight::zero(rank),
            mode: Mode::BInfinity,
        }
    }

    pub fn seq(&self) -> &IotaSequence {
        &self.seq
    }

    pub fn cartan(&self) -> &CartanData {
        self.seq.cartan()
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.seq.rank()
    }

    /// `sigma_k(x) = x_k + sum_{j>k} <h_{i_k}, alpha_{i_j}> x_j`.
    pub fn sigma_k(&self, x: &LatticePoint, k: usize) -> i64 {
        let mut v = x.get(k);
        for j in k + 1..=x.max_support() {
            let xj = x.get(j);
            if xj != 0 {
                v += self.seq.pair_pos(k, j) * xj;
            }
        }
        v
    }

    /// `sigma_0^(i)(x) = -<h_i, lambda> + sum_j <h_i, alpha_{i_j}> x_j`.
    pub fn sigma0(&self, x: &LatticePoint, i: usize) -> Result<i64> {
        if self.mode == Mode::BInfinity {
            return Err(Error::ModeError("sigma_0 is -infinity on Z^infinity"));
        }
        let cartan = self.cartan();
        let sum: i64 = x.sparse().map(|(j, xj)| cartan.a(i, self.seq.index_at(j)) * xj).sum();
        Ok(sum - self.lambda.get(i))
    }

    /// One backward scan over `1..=max_support + period` computing every
    /// `sigma_k` with `i_k = i`; beyond the support `sigma_k = 0`, so the
    /// window holds the first maximizer and, when the maximum is positive,
    /// all of them.
    pub fn sigma_data(&self, x: &LatticePoint, i: usize) -> SigmaData {
        let cartan = self.cartan();
        let top = x.max_support() + self.seq.period_len();
        let mut tail = 0i64;
        let mut best: Option<(i64, usize, usize)> = None;
        for k in (1..=top).rev() {
            let ik = self.seq.index_at(k);
            let xk = x.get(k);
            if ik == i {
                let sk = xk + tail;
                best = match best {
                    None => Some((sk, k, k)),
                    Some((b, lo, hi)) => match sk.cmp(&b) {
                        Ordering::Greater => Some((sk, k, k)),
                        Ordering::Equal => Some((b, k, hi)),
                        Ordering::Less => Some((b, lo, hi)),
                    },
                };
            }
            if xk != 0 {
                tail += cartan.a(i, ik) * xk;
            }
        }
        let (sigma, min_m, max_m) = best.expect("every index occurs within one period");
        let sigma0 = match self.mode {
            Mode::HighestWeight => Some(tail - self.lambda.get(i)),
            Mode::BInfinity => None,
        };
        SigmaData {
            sigma,
            sigma0,
            min_m,
            max_m,
        }
    }

    pub fn f_tilde(&self, x: &LatticePoint, i: usize) -> Option<LatticePoint> {
        let d = self.sigma_data(x, i);
        match d.sigma0 {
            Some(s0) if d.sigma <= s0 => None,
            _ => Some(x.with_added(d.min_m, 1)),
        }
    }

    pub fn e_tilde(&self, x: &LatticePoint, i: usize) -> Option<LatticePoint> {
        let d = self.sigma_data(x, i);
        if d.sigma <= 0 {
            return None;
        }
        match d.sigma0 {
            Some(s0) if d.sigma < s0 => None,
            _ => Some(x.with_added(d.max_m, -1)),
        }
    }

    pub fn epsilon(&self, x: &LatticePoint, i: usize) -> i64 {
        let d = self.sigma_data(x, i);
        d.sigma0.map_or(d.sigma, |s0| d.sigma.max(s0))
    }

    pub fn phi(&self, x: &LatticePoint, i: usize) -> i64 {
        self.weight(x).pairing(self.cartan(), i) + self.epsilon(x, i)
    }

    /// `lambda - sum_j x_j alpha_{i_j}`.
    pub fn weight(&self, x: &LatticePoint) -> WeightExpr {
        WeightExpr {
            fundamental: self.lambda.coeffs().to_vec(),
            roots: x.root_content(&self.seq).into_iter().map(|m| -m).collect(),
        }
    }

    /// The largest element of `E^(i) = {sigma_k(x) : i_k = i} U {sigma_0^(i)(x)}`.
    pub fn e_set_max(&self, x: &LatticePoint, i: usize) -> Result<i64> {
        let top = x.max_support() + self.seq.period_len();
        let best = self
            .seq
            .positions_of(i, top)
            .map(|k| self.sigma_k(x, k))
            .max()
            .expect("every index occurs within one period");
        Ok(best.max(self.sigma0(x, i)?))
    }
}

/// An element of one of the supported crystals, or the ideal element `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CrystalElem {
    Lattice(LatticePoint),
    /// `(x)_i` in `B_i`.
    Elementary { i: usize, x: i64 },
    /// `r_lambda` in `R_lambda`.
    RLambda(Weight),
    Tensor(Box<CrystalElem>, Box<CrystalElem>),
    Zero,
}

/// Evaluates crystal data for [`CrystalElem`] values. Lattice elements are
/// interpreted in `lattice`, when present.
#[derive(Debug, Clone)]
pub struct CrystalOps<'a> {
    cartan: &'a CartanData,
    lattice: Option<&'a LatticeCrystal>,
}

impl<'a> CrystalOps<'a> {
    pub fn new(cartan: &'a CartanData) -> Self {
        Self { cartan, lattice: None }
    }

    pub fn with_lattice(lattice: &'a LatticeCrystal) -> Self {
        Self {
            cartan: lattice.cartan(),
            lattice: Some(lattice),
        }
    }

    pub fn cartan(&self) -> &CartanData {
        self.cartan
    }

    fn lattice(&self) -> &LatticeCrystal {
        self.lattice.expect("lattice element without a lattice crystal context")
    }

    pub fn weight(&self, b: &CrystalElem) -> Result<WeightExpr> {
        let n = self.cartan.rank();
        Ok(match b {
            CrystalElem::Zero => return Err(Error::ZeroElement),
            CrystalElem::Lattice(x) => self.lattice().weight(x),
            CrystalElem::Elementary { i, x } => WeightExpr::root(n, *i, *x),
            CrystalElem::RLambda(w) => WeightExpr::from_weight(w),
            CrystalElem::Tensor(b1, b2) => self.weight(b1)?.plus(&self.weight(b2)?),
        })
    }

    pub fn epsilon(&self, b: &CrystalElem, i: usize) -> Result<ExtInt> {
        Ok(match b {
            CrystalElem::Zero => return Err(Error::ZeroElement),
            CrystalElem::Lattice(x) => ExtInt::Finite(self.lattice().epsilon(x, i)),
            CrystalElem::Elementary { i: j, x } if *j == i => ExtInt::Finite(-x),
            CrystalElem::Elementary { .. } => ExtInt::NegInf,
            CrystalElem::RLambda(w) => ExtInt::Finite(-w.get(i)),
            CrystalElem::Tensor(b1, b2) => {
                let shift = self.weight(b1)?.pairing(self.cartan, i);
                self.epsilon(b1, i)?.max(self.epsilon(b2, i)? + (-shift))
            }
        })
    }

    pub fn phi(&self, b: &CrystalElem, i: usize) -> Result<ExtInt> {
        Ok(match b {
            CrystalElem::Zero => return Err(Error::ZeroElement),
            CrystalElem::Lattice(x) => ExtInt::Finite(self.lattice().phi(x, i)),
            CrystalElem::Elementary { i: j, x } if *j == i => ExtInt::Finite(*x),
            CrystalElem::Elementary { .. } => ExtInt::NegInf,
            CrystalElem::RLambda(_) => ExtInt::Finite(0),
            CrystalElem::Tensor(b1, b2) => {
                let shift = self.weight(b2)?.pairing(self.cartan, i);
                self.phi(b2, i)?.max(self.phi(b1, i)? + shift)
            }
        })
    }

    pub fn f_tilde(&self, b: &CrystalElem, i: usize) -> CrystalElem {
        match b {
            CrystalElem::Zero | CrystalElem::RLambda(_) => CrystalElem::Zero,
            CrystalElem::Lattice(x) => self.lattice().f_tilde(x, i).map_or(CrystalElem::Zero, CrystalElem::Lattice),
            CrystalElem::Elementary { i: j, x } if *j == i => CrystalElem::Elementary { i, x: x - 1 },
            CrystalElem::Elementary { .. } => CrystalElem::Zero,
            CrystalElem::Tensor(b1, b2) => {
                let (p1, e2) = (self.phi(b1, i).unwrap(), self.epsilon(b2, i).unwrap());
                if p1 > e2 {
                    tensor(self.f_tilde(b1, i), (**b2).clone())
                } else {
                    tensor((**b1).clone(), self.f_tilde(b2, i))
                }
            }
        }
    }

    pub fn e_tilde(&self, b: &CrystalElem, i: usize) -> CrystalElem {
        match b {
            CrystalElem::Zero | CrystalElem::RLambda(_) => CrystalElem::Zero,
            CrystalElem::Lattice(x) => self.lattice().e_tilde(x, i).map_or(CrystalElem::Zero, CrystalElem::Lattice),
            CrystalElem::Elementary { i: j, x } if *j == i => CrystalElem::Elementary { i, x: x + 1 },
            CrystalElem::Elementary { .. } => CrystalElem::Zero,
            CrystalElem::Tensor(b1, b2) => {
                let (p1, e2) = (self.phi(b1, i).unwrap(), self.epsilon(b2, i).unwrap());
                if p1 >= e2 {
                    tensor(self.e_tilde(b1, i), (**b2).clone())
                } else {
                    tensor((**b1).clone(), self.e_tilde(b2, i))
                }
            }
        }
    }
}

/// `b1 (x) b2`, collapsing to `Zero` if either side is `Zero`.
pub fn tensor(b1: CrystalElem, b2: CrystalElem) -> CrystalElem {
    match (&b1, &b2) {
        (CrystalElem::Zero, _) | (_, CrystalElem::Zero) => CrystalElem::Zero,
        _ => CrystalElem::Tensor(Box::new(b1), Box::new(b2)),
    }
}

/// Rewrites `(b1 (x) b2) (x) b3` as `b1 (x) (b2 (x) b3)` at the top level.
pub fn reassociate(b: &CrystalElem) -> Option<CrystalElem> {
    match b {
        CrystalElem::Tensor(left, b3) => match &**left {
            CrystalElem::Tensor(b1, b2) => Some(tensor((**b1).clone(), tensor((**b2).clone(), (**b3).clone()))),
            _ => None,
        },
        _ => None,
    }
}

/// Renders a crystal graph in DOT, nodes labeled by `(x_L, ..., x_1)` and
/// edges `x -> f_i x` labeled by the color `i`.
pub fn to_dot<'a>(lattice: &LatticeCrystal, points: impl IntoIterator<Item = &'a LatticePoint>) -> String {
    let points: Vec<&LatticePoint> = points.into_iter().collect();
    let index: BTreeMap<&LatticePoint, usize> = points.iter().enumerate().map(|(n, p)| (*p, n)).collect();
    let mut out = String::from("digraph crystal {\n");
    for (n, p) in points.iter().enumerate() {
        out.push_str(&format!("  n{n} [label=\"{p}\"];\n"));
    }
    for (n, p) in points.iter().enumerate() {
        for i in 1..=lattice.rank() {
            if let Some(q) = lattice.f_tilde(p, i) {
                if let Some(m) = index.get(&q) {
                    out.push_str(&format!("  n{n} -> n{m} [label=\"{i}\"];\n"));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
