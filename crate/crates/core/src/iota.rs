//! Periodic index sequences `iota = (..., i_3, i_2, i_1)`.
//!
//! Positions are 1-based and `i_1` is the rightmost entry in the usual
//! display. A sequence is stored as one period `(i_1, ..., i_m)` in position
//! order; [`IotaSequence::from_display`] accepts the right-to-left display.

use std::fmt;
use std::sync::Arc;

use crate::cartan::{parse_list, CartanData};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IotaSequence {
    cartan: Arc<CartanData>,
    /// `period[p]` is `i_{p+1}`.
    period: Vec<usize>,
    /// `first[i - 1]` is the first position carrying index `i`.
    first: Vec<usize>,
}

impl IotaSequence {
    /// Builds a sequence from one period listed in position order `i_1, i_2, ...`.
    pub fn new(cartan: Arc<CartanData>, period: Vec<usize>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidIota("empty period".into()));
        }
        for &i in &period {
            cartan
                .check_index(i)
                .map_err(|_| Error::InvalidIota(format!("index {i} is not in 1..={}", cartan.rank())))?;
        }
        let m = period.len();
        if m == 1 {
            if cartan.rank() != 1 {
                return Err(Error::InvalidIota("a period of length one repeats its index".into()));
            }
            log::warn!("period of length 1 repeats index {}: i_k != i_(k+1) fails", period[0]);
        } else {
            for p in 0..m {
                if period[p] == period[(p + 1) % m] {
                    return Err(Error::InvalidIota(format!(
                        "positions {} and {} carry the same index {}",
                        p + 1,
                        p + 2,
                        period[p]
                    )));
                }
            }
        }
        let mut first = vec![0; cartan.rank()];
        for (p, &i) in period.iter().enumerate() {
            if first[i - 1] == 0 {
                first[i - 1] = p + 1;
            }
        }
        if let Some(missing) = first.iter().position(|&f| f == 0) {
            return Err(Error::InvalidIota(format!("index {} never occurs", missing + 1)));
        }
        Ok(Self {
            cartan,
            period,
            first,
        })
    }

    /// Builds a sequence from its right-to-left display, e.g. `[3, 2, 1]`
    /// for `(..., 3, 2, 1, 3, 2, 1)`.
    pub fn from_display(cartan: Arc<CartanData>, display: &[usize]) -> Result<Self> {
        let mut period = display.to_vec();
        period.reverse();
        Self::new(cartan, period)
    }

    /// Parses the display string used on the command line, e.g. `"3,2,1"`.
    pub fn parse_display(cartan: Arc<CartanData>, s: &str) -> Result<Self> {
        let nums = parse_list(s)?;
        let idx = nums
            .into_iter()
            .map(|v| usize::try_from(v).map_err(|_| Error::InvalidIota(format!("negative index {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_display(cartan, &idx)
    }

    /// The default sequence `(..., n, ..., 2, 1)` with period `1, 2, ..., n`.
    pub fn standard(cartan: Arc<CartanData>) -> Result<Self> {
        let n = cartan.rank();
        Self::new(cartan, (1..=n).collect())
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn cartan_arc(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// `i_k` for `k >= 1`.
    #[inline]
    pub fn index_at(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        self.period[(k - 1) % self.period.len()]
    }

    /// `<h_{i_a}, alpha_{i_b}>`.
    #[inline]
    pub fn pair_pos(&self, a: usize, b: usize) -> i64 {
        self.cartan.a(self.index_at(a), self.index_at(b))
    }

    /// `k^(+)`: the least `l > k` with `i_l = i_k`.
    pub fn k_plus(&self, k: usize) -> usize {
        let i = self.index_at(k);
        (k + 1..=k + self.period.len())
            .find(|&l| self.index_at(l) == i)
            .expect("every index recurs within one period")
    }

    /// `k^(-)`: the greatest `l < k` with `i_l = i_k`, or 0.
    pub fn k_minus(&self, k: usize) -> usize {
        let i = self.index_at(k);
        let lo = k.saturating_sub(self.period.len()).max(1);
        (lo..k).rev().find(|&l| self.index_at(l) == i).unwrap_or(0)
    }

    /// `iota^(i)`: the first position carrying index `i`.
    pub fn iota_first(&self, i: usize) -> usize {
        self.first[i - 1]
    }

    /// Positions `k` with `k^(-) = 0`, one per index, in index order.
    pub fn first_occurrences(&self) -> &[usize] {
        &self.first
    }

    pub fn is_first_occurrence(&self, k: usize) -> bool {
        k <= self.period.len() && self.first[self.index_at(k) - 1] == k
    }

    /// Positions `k <= bound` carrying index `i`.
    pub fn positions_of(&self, i: usize, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=bound).filter(move |&k| self.index_at(k) == i)
    }
}

impl fmt::Display for IotaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.period.iter().rev().map(|i| i.to_string()).collect();
        write!(f, "(..., {})", shown.join(", "))
    }
}
