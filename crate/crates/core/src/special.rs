//! Closed-form inequality systems: rank 2 via Chebyshev coefficients, type
//! `A_n`, and type `A^(1)_{n-1}` via admissible matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Family};
use crate::crystal::LatticePoint;
use crate::error::{Error, Result};
use crate::linforms::{FormSet, LinForm};
use crate::scalar::Coeff;

/// `l_max`, the least `l` with `a_{l+1} < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LMax {
    Finite(usize),
    Infinite,
}

impl fmt::Display for LMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LMax::Finite(l) => write!(f, "{l}"),
            LMax::Infinite => write!(f, "+inf"),
        }
    }
}

/// `P_k(X)` from `P_0 = 1`, `P_1 = X`, `P_k = X P_{k-1} - P_{k-2}`.
pub fn cheb_p<T: Coeff>(x: i64, k: usize) -> Result<T> {
    let x = T::from(x);
    let (mut prev, mut cur) = (T::one(), x.clone());
    if k == 0 {
        return Ok(prev);
    }
    for _ in 1..k {
        let next = x.mul_c(&cur)?.sub_c(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `a_l(c1, c2)`.
pub fn cheb_a<T: Coeff>(c1: i64, c2: i64, l: usize) -> Result<T> {
    let x = c1 * c2 - 2;
    match l {
        0 => Ok(T::zero()),
        1 => Ok(T::one()),
        _ if l.is_multiple_of(2) => T::from(c1).mul_c(&cheb_p::<T>(x, l / 2 - 1)?),
        _ => {
            let k = l / 2;
            cheb_p::<T>(x, k)?.add_c(&cheb_p::<T>(x, k - 1)?)
        }
    }
}

/// Coefficient data of the rank-2 sequence `(..., 2, 1, 2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChebCoeffs {
    pub c1: i64,
    pub c2: i64,
    pub l_max: LMax,
}

impl ChebCoeffs {
    pub fn new(c1: i64, c2: i64) -> Result<Self> {
        CartanData::build(Family::Rank2 { c1, c2 })?;
        let l_max = if c1 * c2 >= 4 {
            LMax::Infinite
        } else {
            let l = (0..)
                .find(|&l| cheb_a::<i64>(c1, c2, l + 1).is_ok_and(|a| a < 0))
                .expect("c1 c2 <= 3 gives a negative coefficient by l = 7");
            LMax::Finite(l)
        };
        Ok(Self { c1, c2, l_max })
    }

    pub fn x(&self) -> i64 {
        self.c1 * self.c2 - 2
    }

    pub fn a<T: Coeff>(&self, l: usize) -> Result<T> {
        cheb_a(self.c1, self.c2, l)
    }

    /// `a'_l = a_l(c2, c1)`.
    pub fn a_prime<T: Coeff>(&self, l: usize) -> Result<T> {
        cheb_a(self.c2, self.c1, l)
    }

    /// The largest `l` with `l < l_max` and `l + 1 <= window`.
    fn family_end(&self, window: usize) -> usize {
        match self.l_max {
            LMax::Finite(lm) => (lm - 1).min(window.saturating_sub(1)),
            LMax::Infinite => window.saturating_sub(1),
        }
    }

    /// `eta_l = a'_{l+1} x_l - a'_l x_{l+1}`.
    pub fn eta(&self, l: usize) -> Result<LinForm<i64>> {
        Ok(LinForm::from_terms(0, [(l, self.a_prime(l + 1)?), (l + 1, -self.a_prime::<i64>(l)?)]))
    }

    /// `{eta_l : 1 <= l < l_max, l + 1 <= window}`.
    pub fn eta_family(&self, window: usize) -> Result<BTreeSet<LinForm<i64>>> {
        (1..=self.family_end(window)).map(|l| self.eta(l)).collect()
    }

    /// The closed-form `epsilon*_2`: `max_{1 <= l <= l_max} (a'_l x_{l+1} - a'_{l+1} x_l)`,
    /// over `l <= window` when `l_max` is infinite.
    pub fn epsilon_star_2(&self, x: &LatticePoint, window: usize) -> Result<i64> {
        let top = match self.l_max {
            LMax::Finite(lm) => lm,
            LMax::Infinite => window,
        };
        let mut best = i64::MIN;
        for l in 1..=top {
            let v = self
                .a_prime::<i64>(l)?
                .mul_c(&x.get(l + 1))?
                .sub_c(&self.a_prime::<i64>(l + 1)?.mul_c(&x.get(l))?)?;
            best = best.max(v);
        }
        Ok(best)
    }
}

/// The rank-2 system over positions `1..=window`, weight kept symbolic.
///
/// `x_k = 0` is emitted as the pair `x_k >= 0`, `-x_k >= 0`. For `l_max`
/// infinite a window is mandatory and the result is marked truncated.
pub fn rank2_system(c1: i64, c2: i64, window: Option<usize>) -> Result<FormSet<i64>> {
    let cc = ChebCoeffs::new(c1, c2)?;
    let window = match (cc.l_max, window) {
        (LMax::Infinite, None) => {
            return Err(Error::InvalidArgument(
                "an explicit window is required when l_max is infinite".into(),
            ))
        }
        (LMax::Infinite, Some(w)) => w,
        (LMax::Finite(lm), w) => w.unwrap_or(lm + 2),
    };
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let mut forms = Vec::new();
    for k in 1..=window {
        forms.push(LinForm::var(k));
        if let LMax::Finite(lm) = cc.l_max {
            if k > lm {
                forms.push(LinForm::from_terms(0, [(k, -1)]));
            }
        }
    }
    forms.push(LinForm::from_terms(0, [(1, -1)]).with_lambda(1, 1));
    for l in 1..=cc.family_end(window) {
        forms.push(LinForm::from_terms(0, [(l, cc.a(l)?), (l + 1, -cc.a::<i64>(l - 1)?)]));
        forms.push(cc.eta(l)?.with_lambda(2, 1));
    }
    Ok(FormSet::from_forms(forms, window, cc.l_max == LMax::Infinite))
}

/// Position of `x_{j;i}` in type `A_n`: `(j - 1) n + i`.
pub fn an_pos(n: usize, j: usize, i: usize) -> usize {
    (j - 1) * n + i
}

/// `x_{j;i} - x_{j;i-1}` terms with the `A_n` convention `x_{j;0} = 0`.
fn an_diff(n: usize, j: usize, i: usize) -> LinForm<i64> {
    let mut terms = vec![(an_pos(n, j, i), 1)];
    if i > 1 {
        terms.push((an_pos(n, j, i - 1), -1));
    }
    LinForm::from_terms(0, terms)
}

/// The `A_n` system over rows `1..=n + 1`, weight kept symbolic.
pub fn an_system(n: usize) -> Result<FormSet<i64>> {
    CartanData::build(Family::TypeA(n))?;
    let mut forms = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            forms.push(LinForm::from_terms(0, [(an_pos(n, j, i - j + 1), 1), (an_pos(n, j + 1, i - j), -1)]));
        }
        forms.push(LinForm::var(an_pos(n, i, 1)));
        for j in 1..=i {
            forms.push(an_diff(n, j, i - j + 1).neg().with_lambda(i, 1));
        }
    }
    for j in 1..=n + 1 {
        for i in 1..=n {
            if i + j > n + 1 {
                let p = an_pos(n, j, i);
                forms.push(LinForm::var(p));
                forms.push(LinForm::from_terms(0, [(p, -1)]));
            }
        }
    }
    Ok(FormSet::from_forms(forms, n * (n + 1), false))
}

/// `{-x_{j;i-j+1} + x_{j;i-j} : 1 <= j <= i}`.
pub fn an_xi_family(n: usize, i: usize) -> BTreeSet<LinForm<i64>> {
    (1..=i).map(|j| an_diff(n, j, i - j + 1).neg()).collect()
}

/// `max_{1 <= j <= i} (x_{j;i-j+1} - x_{j;i-j})`.
pub fn an_epsilon_star(n: usize, x: &LatticePoint, i: usize) -> Result<i64> {
    let mut best = i64::MIN;
    for j in 1..=i {
        best = best.max(an_diff(n, j, i - j + 1).eval(x.as_slice(), None)?);
    }
    Ok(best)
}

/// `j;i[k] = k - 1 + (j - 1)(n - 1) + i` for `A^(1)_{n-1}`.
pub fn affine_pos(n: usize, j: usize, i: usize, k: usize) -> usize {
    k + (j - 1) * (n - 1) + i - 1
}

/// An admissible matrix, stored through its column partial sums over rows
/// `1..row_bound`; from row `row_bound` on, `s_{j;i} = delta_{i,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleMatrix {
    n: usize,
    row_bound: usize,
    /// `s[j - 1][i - 1]` for `j < row_bound`.
    s: Vec<Vec<i64>>,
}

impl AdmissibleMatrix {
    /// `C_0`, with `c_{j;i} = delta_{(j;i),(1;1)}`.
    pub fn c0(n: usize) -> Self {
        Self {
            n,
            row_bound: 1,
            s: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_bound(&self) -> usize {
        self.row_bound
    }

    pub fn s(&self, j: usize, i: usize) -> i64 {
        if j == 0 {
            0
        } else if j < self.row_bound {
            self.s[j - 1][i - 1]
        } else {
            i64::from(i == 1)
        }
    }

    pub fn c(&self, j: usize, i: usize) -> i64 {
        self.s(j, i) - self.s(j - 1, i)
    }

    /// Nonzero entries `((j, i), c_{j;i})`.
    pub fn entries(&self) -> BTreeMap<(usize, usize), i64> {
        let mut out = BTreeMap::new();
        for j in 1..=self.row_bound {
            for i in 1..self.n {
                let c = self.c(j, i);
                if c != 0 {
                    out.insert((j, i), c);
                }
            }
        }
        out
    }

    pub fn is_c0(&self) -> bool {
        self.entries().into_iter().eq([((1, 1), 1)])
    }

    /// `phi_{C[k]} = sum c_{j;i} x_{j;i[k]}`; `None` for `k = 0` when
    /// `c_{1;1} != 0`, since there is no `x_0`.
    pub fn form(&self, k: usize) -> Option<LinForm<i64>> {
        let entries = self.entries();
        if k == 0 && entries.contains_key(&(1, 1)) {
            return None;
        }
        Some(LinForm::from_terms(
            0,
            entries.into_iter().map(|((j, i), c)| (affine_pos(self.n, j, i, k), c)),
        ))
    }

    /// Checks the four admissibility conditions over rows `1..=row_bound + 1`.
    pub fn check(&self) -> Result<()> {
        let width = self.n - 1;
        let rows = self.row_bound + 1;
        let flat: Vec<i64> = (1..=rows).flat_map(|j| (1..=width).map(move |i| (j, i))).map(|(j, i)| self.s(j, i)).collect();
        let fail = |what: String| Err(Error::InvalidArgument(format!("not admissible: {what}")));
        let mut cum = 0;
        for (t, &v) in flat.iter().enumerate() {
            let (j, i) = (t / width + 1, t % width + 1);
            if v < 0 {
                return fail(format!("s_{{{j};{i}}} = {v} < 0"));
            }
            cum += v;
            if cum > j as i64 || (j >= self.row_bound && cum != j as i64) {
                return fail(format!("partial sum {cum} at ({j};{i})"));
            }
            if v > 0 && t + width < flat.len() && !flat[t + 1..=t + width].iter().any(|&w| w > 0) {
                return fail(format!("no positive entry after ({j};{i})"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for AdmissibleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().into_iter().map(|((j, i), c)| format!("c_{j};{i}={c}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct AdmissibleJson {
    entries: BTreeMap<String, i64>,
    row_bound: usize,
}

impl AdmissibleMatrix {
    /// `{"entries": {"j;i": c}, "row_bound": J}`.
    pub fn to_json(&self) -> String {
        let entries = self.entries().into_iter().map(|((j, i), c)| (format!("{j};{i}"), c)).collect();
        serde_json::to_string(&AdmissibleJson {
            entries,
            row_bound: self.row_bound,
        })
        .expect("plain data serializes")
    }

    pub fn from_json(n: usize, text: &str) -> Result<Self> {
        let raw: AdmissibleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let width = n - 1;
        let rows = raw.row_bound.max(1);
        let mut c = vec![vec![0i64; width]; rows];
        for (key, v) in raw.entries {
            let (j, i) = key
                .split_once(';')
                .and_then(|(j, i)| Some((j.trim().parse::<usize>().ok()?, i.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad entry key {key:?}")))?;
            if j == 0 || j > rows || i == 0 || i > width {
                return Err(Error::Parse(format!("entry ({j};{i}) outside the matrix")));
            }
            c[j - 1][i - 1] = v;
        }
        let mut s = Vec::with_capacity(rows - 1);
        let mut acc = vec![0i64; width];
        for row in c.iter().take(rows - 1) {
            for (a, v) in acc.iter_mut().zip(row) {
                *a += v;
            }
            s.push(acc.clone());
        }
        let m = Self { n, row_bound: rows, s };
        if m.entries().values().sum::<i64>() != c.iter().flatten().sum::<i64>()
            || (1..=width).any(|i| m.c(rows, i) != c[rows - 1][i - 1])
        {
            return Err(Error::Parse("entries do not stabilize by the row bound".into()));
        }
        m.check()?;
        Ok(m)
    }
}

/// All admissible matrices for `A^(1)_{n-1}` whose partial sums equal
/// `delta_{i,1}` from row `row_bound` on, by backtracking over partial sums
/// in lexicographic order.
pub fn enumerate_admissible(n: usize, row_bound: usize, count_bound: usize) -> Result<Vec<AdmissibleMatrix>> {
    if n < 3 {
        return Err(Error::InvalidArgument("A^(1)_{n-1} needs n >= 3".into()));
    }
    if row_bound == 0 {
        return Err(Error::InvalidArgument("row bound must be positive".into()));
    }
    let width = n - 1;
    let cells = (row_bound - 1) * width;
    let mut flat = vec![0i64; cells];
    let mut out = Vec::new();
    search(n, row_bound, &mut flat, 0, 0, None, &mut out, count_bound)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    row_bound: usize,
    flat: &mut Vec<i64>,
    t: usize,
    cum: i64,
    last_pos: Option<usize>,
    out: &mut Vec<AdmissibleMatrix>,
    count_bound: usize,
) -> Result<()> {
    let width = n - 1;
    if t == flat.len() {
        if cum != row_bound as i64 - 1 {
            return Ok(());
        }
        if out.len() >= count_bound {
            return Err(Error::BudgetExceeded {
                max_forms: count_bound,
                generated: out.len() + 1,
            });
        }
        let s = flat.chunks(width).map(|r| r.to_vec()).collect();
        out.push(AdmissibleMatrix { n, row_bound, s });
        return Ok(());
    }
    let j = t / width + 1;
    let remaining_rows_cap = row_bound as i64 - 1;
    for v in 0..=(j as i64 - cum).min(remaining_rows_cap - cum) {
        let last = if v > 0 { Some(t) } else { last_pos };
        if t >= width && flat[t - width] > 0 && last.is_none_or(|p| p + width <= t) {
            continue;
        }
        flat[t] = v;
        search(n, row_bound, flat, t + 1, cum + v, last, out, count_bound)?;
        flat[t] = 0;
    }
    Ok(())
}

/// The `A^(1)_{n-1}` system from admissible matrices with row bound
/// `row_bound` and shifts `1..=k_bound`, weight kept symbolic. Always
/// truncated: membership tests against it are necessary conditions only.
pub fn affine_a_system(n: usize, row_bound: usize, k_bound: usize) -> Result<FormSet<i64>> {
    CartanData::build(Family::AffineA(n))?;
    let mats = enumerate_admissible(n, row_bound, 1_000_000)?;
    let mut forms = Vec::new();
    for c in &mats {
        for k in 1..=k_bound {
            forms.push(c.form(k).expect("k >= 1"));
        }
        if !c.is_c0() {
            forms.push(c.form(0).expect("only C_0 has c_{1;1} != 0").with_lambda(n, 1));
        }
    }
    let top = forms.iter().map(LinForm::max_support).max().unwrap_or(0);
    // lambda_i - x_{j;i} + x_{j;i-1}; for i = 1 only j = 1 is generated.
    forms.push(LinForm::from_terms(0, [(1, -1)]).with_lambda(1, 1));
    for p in 2..=top {
        let i = (p - 1) % (n - 1) + 1;
        if i > 1 {
            forms.push(LinForm::from_terms(0, [(p, -1), (p - 1, 1)]).with_lambda(i, 1));
        }
    }
    Ok(FormSet::from_forms(forms, top, true))
}

/// The explicit generated families: `{-x_{1;1}}` for `i = 1`,
/// `{-x_{j;i} + x_{j;i-1} : j <= j_bound}` for `1 < i < n`, and
/// `{phi_{C[0]} : C != C_0}` over matrices with row bound `j_bound` for `i = n`.
pub fn affine_xi_family(n: usize, i: usize, j_bound: usize) -> Result<BTreeSet<LinForm<i64>>> {
    if i == 1 {
        return Ok([LinForm::from_terms(0, [(1, -1)])].into_iter().collect());
    }
    if i < n {
        return Ok((1..=j_bound)
            .map(|j| {
                let p = affine_pos(n, j, i, 1);
                LinForm::from_terms(0, [(p, -1), (p - 1, 1)])
            })
            .collect());
    }
    Ok(enumerate_admissible(n, j_bound, 1_000_000)?
        .iter()
        .filter(|c| !c.is_c0())
        .map(|c| c.form(0).expect("only C_0 has c_{1;1} != 0"))
        .collect())
}
