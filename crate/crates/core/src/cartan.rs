//! Root data: generalized Cartan matrices, symmetrizers and weights.
//!
//! Indices are 1-based throughout, matching the usual `I = {1, ..., n}`.
//! Entry `a(i, j)` is the pairing `<h_i, alpha_j>`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The families of Cartan data the library knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Rank 2 with `<h_1, alpha_2> = -c1` and `<h_2, alpha_1> = -c2`.
    Rank2 { c1: i64, c2: i64 },
    /// Finite type `A_n`.
    TypeA(usize),
    /// Untwisted affine type with `n` nodes arranged in a cycle (`n >= 3`).
    AffineA(usize),
    /// Caller-supplied matrix.
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Rank2 { c1, c2 } => write!(f, "rank2:{c1},{c2}"),
            Family::TypeA(n) => write!(f, "an:{n}"),
            Family::AffineA(n) => write!(f, "affine-a:{n}"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `rank2:c1,c2`, `an:n` or `affine-a:n`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("family `{s}` has no parameters")))?;
        let nums = parse_list(params)?;
        match (tag.trim(), nums.as_slice()) {
            ("rank2", [c1, c2]) => Ok(Family::Rank2 { c1: *c1, c2: *c2 }),
            ("an", [n]) if *n >= 0 => Ok(Family::TypeA(*n as usize)),
            ("affine-a", [n]) if *n >= 0 => Ok(Family::AffineA(*n as usize)),
            _ => Err(Error::Parse(format!("unrecognized family `{s}`"))),
        }
    }
}

/// Parses a comma separated list of integers.
pub(crate) fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
        })
        .collect()
}

/// A validated symmetrizable generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    rank: usize,
    matrix: Vec<Vec<i64>>,
    family: Family,
    symmetrizer: Vec<i64>,
}

/// JSON shape accepted for custom matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CustomCartan {
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl CartanData {
    /// Builds the Cartan data of a named family.
    ///
    /// `Family::Custom` carries no matrix, use [`CartanData::custom`] for that.
    pub fn build(family: Family) -> Result<Self> {
        match family {
            Family::Rank2 { c1, c2 } => {
                let ok = (c1 == 0 && c2 == 0) || (c1 > 0 && c2 > 0);
                if !ok {
                    return Err(Error::InvalidCartan {
                        row: 1,
                        col: 2,
                        reason: format!("need c1 = c2 = 0 or both positive, got ({c1}, {c2})"),
                    });
                }
                let symmetrizer = if c1 == 0 {
                    vec![1, 1]
                } else {
                    let g = gcd(c1, c2);
                    vec![c2 / g, c1 / g]
                };
                Self::checked(2, vec![vec![2, -c1], vec![-c2, 2]], family, symmetrizer)
            }
            Family::TypeA(n) => {
                if n == 0 {
                    return Err(Error::InvalidCartan {
                        row: 0,
                        col: 0,
                        reason: "A_n needs n >= 1".into(),
                    });
                }
                let matrix = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| match i.abs_diff(j) {
                                0 => 2,
                                1 => -1,
                                _ => 0,
                            })
                            .collect()
                    })
                    .collect();
                Self::checked(n, matrix, family, vec![1; n])
            }
            Family::AffineA(n) => {
                if n < 3 {
                    return Err(Error::InvalidCartan {
                        row: 0,
                        col: 0,
                        reason: "cyclic affine type needs n >= 3 (use rank2:2,2 for n = 2)".into(),
                    });
                }
                let matrix = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let d = i.abs_diff(j);
                                if d == 0 {
                                    2
                                } else if d == 1 || d == n - 1 {
                                    -1
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                Self::checked(n, matrix, family, vec![1; n])
            }
            Family::Custom => Err(Error::InvalidArgument(
                "custom Cartan data must be built with CartanData::custom".into(),
            )),
        }
    }

    /// Validates a caller-supplied matrix together with its symmetrizer.
    pub fn custom(matrix: Vec<Vec<i64>>, symmetrizer: Vec<i64>) -> Result<Self> {
        let rank = matrix.len();
        Self::checked(rank, matrix, Family::Custom, symmetrizer)
    }

    /// Parses the `{"rank", "matrix", "symmetrizer"}` JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CustomCartan =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if spec.rank != spec.matrix.len() {
            return Err(Error::InvalidCartan {
                row: 0,
                col: 0,
                reason: format!("rank {} but {} rows", spec.rank, spec.matrix.len()),
            });
        }
        Self::custom(spec.matrix, spec.symmetrizer)
    }

    pub fn to_custom(&self) -> CustomCartan {
        CustomCartan {
            rank: self.rank,
            matrix: self.matrix.clone(),
            symmetrizer: self.symmetrizer.clone(),
        }
    }

    fn checked(
        rank: usize,
        matrix: Vec<Vec<i64>>,
        family: Family,
        symmetrizer: Vec<i64>,
    ) -> Result<Self> {
        let bad = |row: usize, col: usize, reason: String| Error::InvalidCartan { row, col, reason };
        if rank == 0 {
            return Err(bad(0, 0, "empty matrix".into()));
        }
        if symmetrizer.len() != rank {
            return Err(bad(0, 0, format!("symmetrizer has {} entries", symmetrizer.len())));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(bad(i + 1, 0, format!("row has {} entries", row.len())));
            }
        }
        for i in 0..rank {
            if symmetrizer[i] <= 0 {
                return Err(bad(i + 1, i + 1, "symmetrizer entries must be positive".into()));
            }
            for j in 0..rank {
                let (aij, aji) = (matrix[i][j], matrix[j][i]);
                if i == j {
                    if aij != 2 {
                        return Err(bad(i + 1, j + 1, format!("diagonal entry {aij} != 2")));
                    }
                    continue;
                }
                if aij > 0 {
                    return Err(bad(i + 1, j + 1, format!("off-diagonal entry {aij} > 0")));
                }
                if (aij == 0) != (aji == 0) {
                    return Err(bad(i + 1, j + 1, "zero pattern is not symmetric".into()));
                }
                if symmetrizer[i] * aij != symmetrizer[j] * aji {
                    return Err(bad(i + 1, j + 1, "d_i a_ij != d_j a_ji".into()));
                }
            }
        }
        Ok(Self {
            rank,
            matrix,
            family,
            symmetrizer,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `<h_i, alpha_j>` with bounds checking.
    pub fn pairing(&self, i: usize, j: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.matrix[i - 1][j - 1])
    }

    /// `<h_i, alpha_j>` for indices already known to be valid.
    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// Indices `1..=rank`.
    pub fn indices(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }
}

/// An integral weight `sum_i lambda_i Lambda_i` in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Weight(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `Lambda_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i - 1] = 1;
        Weight(w)
    }

    /// Parses a comma separated coefficient list such as `1,0,2`.
    pub fn parse(s: &str) -> Result<Self> {
        parse_list(s).map(Weight)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `<h_i, lambda>`.
    #[inline]
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Weight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn check_rank(&self, cartan: &CartanData) -> Result<()> {
        if self.rank() != cartan.rank() {
            return Err(Error::InvalidWeight(format!(
                "weight has {} coefficients, algebra has rank {}",
                self.rank(),
                cartan.rank()
            )));
        }
        Ok(())
    }

    pub fn check_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::InvalidWeight(format!("{self} is not dominant")))
        }
    }

    /// All dominant weights of the given rank with coefficient sum at most `total`.
    pub fn dominant_up_to(rank: usize, total: i64) -> Vec<Weight> {
        fn rec(rank: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
            if cur.len() == rank {
                out.push(Weight(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur.push(v);
                rec(rank, left - v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rank, total, &mut Vec::with_capacity(rank), &mut out);
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match c {
                1 => format!("Λ_{}", i + 1),
                -1 => format!("-Λ_{}", i + 1),
                _ => format!("{c}Λ_{}", i + 1),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
