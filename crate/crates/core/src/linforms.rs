//! Affine-linear forms on the lattice and the piecewise-linear operators
//! that generate the defining inequality systems.
//!
//! A [`LinForm`] is `c + sum_i l_i <h_i, lambda> + sum_k phi_k x_k`. The
//! `lambda` part is kept symbolic: constants picked up through the
//! `k^(-) = 0` branch of the hat operator are multiples of `<h_i, lambda>`,
//! and keeping them symbolic lets one closure serve every highest weight.
//! [`LinForm::at_weight`] folds them into the numeric constant.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::iota::IotaSequence;
use crate::scalar::Coeff;

/// An affine-linear form with exact coefficients.
///
/// The representation is canonical: no stored zero coefficients, so derived
/// equality is equality of forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm<T> {
    coeffs: BTreeMap<usize, T>,
    lambda: BTreeMap<usize, T>,
    constant: T,
}

impl<T: Coeff> Default for LinForm<T> {
    fn default() -> Self {
        Self::zero()
    }
}

fn insert_nonzero<T: Coeff>(map: &mut BTreeMap<usize, T>, key: usize, value: T) {
    if value.is_zero() {
        map.remove(&key);
    } else {
        map.insert(key, value);
    }
}

/// `a - f * b` on sparse maps.
fn sub_scaled_map<T: Coeff>(
    a: &BTreeMap<usize, T>,
    f: &T,
    b: &BTreeMap<usize, T>,
) -> Result<BTreeMap<usize, T>> {
    let mut out = a.clone();
    for (&k, v) in b {
        let prod = f.mul_c(v)?;
        let cur = out.get(&k).cloned().unwrap_or_else(T::zero);
        insert_nonzero(&mut out, k, cur.sub_c(&prod)?);
    }
    Ok(out)
}

impl<T: Coeff> LinForm<T> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
            lambda: BTreeMap::new(),
            constant: T::zero(),
        }
    }

    /// The coordinate function `x_k`.
    pub fn var(k: usize) -> Self {
        assert!(k >= 1, "positions start at 1");
        Self::from_terms(T::zero(), [(k, T::one())])
    }

    /// The symbolic term `<h_i, lambda>`.
    pub fn lambda_term(i: usize) -> Self {
        let mut f = Self::zero();
        f.lambda.insert(i, T::one());
        f
    }

    /// Builds `constant + sum coeff * x_k`; repeated positions are summed.
    pub fn from_terms(constant: T, terms: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            let cur = coeffs.remove(&k).unwrap_or_else(T::zero);
            insert_nonzero(&mut coeffs, k, cur + c);
        }
        Self {
            coeffs,
            lambda: BTreeMap::new(),
            constant,
        }
    }

    /// Adds `c * <h_i, lambda>`.
    pub fn with_lambda(mut self, i: usize, c: T) -> Self {
        let cur = self.lambda.remove(&i).unwrap_or_else(T::zero);
        insert_nonzero(&mut self.lambda, i, cur + c);
        self
    }

    pub fn with_constant(mut self, c: T) -> Self {
        self.constant = c;
        self
    }

    /// `phi_k`, zero when absent.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(&k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, T> {
        &self.coeffs
    }

    pub fn lambda_coeffs(&self) -> &BTreeMap<usize, T> {
        &self.lambda
    }

    /// The purely numeric part of the constant term.
    pub fn constant(&self) -> &T {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.lambda.is_empty() && self.constant.is_zero()
    }

    pub fn has_lambda(&self) -> bool {
        !self.lambda.is_empty()
    }

    /// Largest position with a nonzero coefficient, 0 for constant forms.
    pub fn max_support(&self) -> usize {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// `self - f * other`.
    pub fn sub_scaled(&self, f: &T, other: &Self) -> Result<Self> {
        Ok(Self {
            coeffs: sub_scaled_map(&self.coeffs, f, &other.coeffs)?,
            lambda: sub_scaled_map(&self.lambda, f, &other.lambda)?,
            constant: self.constant.sub_c(&f.mul_c(&other.constant)?)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.sub_scaled(&(-T::one()), other)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, -v.clone())).collect(),
            lambda: self.lambda.iter().map(|(&k, v)| (k, -v.clone())).collect(),
            constant: -self.constant.clone(),
        }
    }

    /// The numeric constant at a concrete highest weight.
    pub fn constant_at(&self, lambda: &Weight) -> Result<T> {
        let mut c = self.constant.clone();
        for (&i, v) in &self.lambda {
            c = c.add_c(&v.mul_c(&T::from(lambda.get(i)))?)?;
        }
        Ok(c)
    }

    /// Folds the symbolic `<h_i, lambda>` terms into the constant.
    pub fn at_weight(&self, lambda: &Weight) -> Result<Self> {
        Ok(Self {
            coeffs: self.coeffs.clone(),
            lambda: BTreeMap::new(),
            constant: self.constant_at(lambda)?,
        })
    }

    /// Evaluates at `x`, where `x[k - 1]` is `x_k` and missing entries are 0.
    ///
    /// Forms with symbolic weight terms need `lambda`.
    pub fn eval(&self, x: &[i64], lambda: Option<&Weight>) -> Result<T> {
        let mut acc = match lambda {
            Some(w) => self.constant_at(w)?,
            None if self.lambda.is_empty() => self.constant.clone(),
            None => {
                return Err(Error::InvalidArgument(format!(
                    "form {self} needs a highest weight to evaluate"
                )))
            }
        };
        for (&k, v) in &self.coeffs {
            if let Some(&xk) = x.get(k - 1) {
                if xk != 0 {
                    acc = acc.add_c(&v.mul_c(&T::from(xk))?)?;
                }
            }
        }
        Ok(acc)
    }

    /// Renders as an inequality with negative terms moved to the right,
    /// e.g. `λ_1 ≥ x_1`.
    pub fn render_inequality(&self) -> String {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut push = |c: &T, name: Option<String>| {
            let side = if c.is_negative() { &mut right } else { &mut left };
            side.push(term(&c.abs(), name.as_deref()));
        };
        if !self.constant.is_zero() {
            push(&self.constant, None);
        }
        for (i, c) in &self.lambda {
            push(c, Some(format!("λ_{i}")));
        }
        for (k, c) in &self.coeffs {
            push(c, Some(format!("x_{k}")));
        }
        let side = |v: Vec<String>| if v.is_empty() { "0".to_string() } else { v.join(" + ") };
        format!("{} ≥ {}", side(left), side(right))
    }
}

fn term<T: Coeff>(abs: &T, name: Option<&str>) -> String {
    match name {
        None => abs.to_string(),
        Some(n) if abs.is_one() => n.to_string(),
        Some(n) => format!("{abs}{n}"),
    }
}

impl<T: Coeff> fmt::Display for LinForm<T> {
    /// `λ_2 + 3x_4 − x_5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        if !self.constant.is_zero() {
            terms.push((self.constant.is_negative(), term(&self.constant.abs(), None)));
        }
        for (i, c) in &self.lambda {
            terms.push((c.is_negative(), term(&c.abs(), Some(&format!("λ_{i}")))));
        }
        for (k, c) in &self.coeffs {
            terms.push((c.is_negative(), term(&c.abs(), Some(&format!("x_{k}")))));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (neg, t)) in terms.iter().enumerate() {
            match (n, neg) {
                (0, true) => write!(f, "−{t}")?,
                (0, false) => write!(f, "{t}")?,
                (_, true) => write!(f, " − {t}")?,
                (_, false) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

/// `beta_k^(+) = x_k + sum_{k<j<k^(+)} <h_{i_k}, alpha_{i_j}> x_j + x_{k^(+)}`.
///
/// This is also the `beta_k` used by the plain operator.
pub fn beta_plus<T: Coeff>(s: &IotaSequence, k: usize) -> LinForm<T> {
    let kp = s.k_plus(k);
    let terms = std::iter::once((k, T::one()))
        .chain((k + 1..kp).map(|j| (j, T::from(s.pair_pos(k, j)))))
        .chain(std::iter::once((kp, T::one())));
    LinForm::from_terms(T::zero(), terms)
}

/// `beta_k^(-)`: `beta_{k^(-)}` when `k^(-) > 0`, otherwise
/// `-<h_{i_k}, lambda> + sum_{j<k} <h_{i_k}, alpha_{i_j}> x_j + x_k`.
pub fn beta_minus<T: Coeff>(s: &IotaSequence, k: usize) -> LinForm<T> {
    let km = s.k_minus(k);
    if km > 0 {
        return beta_plus(s, km);
    }
    let terms = (1..k)
        .map(|j| (j, T::from(s.pair_pos(k, j))))
        .chain(std::iter::once((k, T::one())));
    LinForm::from_terms(T::zero(), terms).with_lambda(s.index_at(k), -T::one())
}

/// The hat operator: `phi - phi_k beta_k^(+)` if `phi_k > 0`, else
/// `phi - phi_k beta_k^(-)`.
pub fn s_hat<T: Coeff>(s: &IotaSequence, phi: &LinForm<T>, k: usize) -> Result<LinForm<T>> {
    let c = phi.coeff(k);
    if c.is_zero() {
        Ok(phi.clone())
    } else if c.is_positive() {
        phi.sub_scaled(&c, &beta_plus(s, k))
    } else {
        phi.sub_scaled(&c, &beta_minus(s, k))
    }
}

/// The plain operator: like [`s_hat`] but with `beta_0 = 0`, so it never
/// introduces weight terms.
pub fn s_plain<T: Coeff>(s: &IotaSequence, phi: &LinForm<T>, k: usize) -> Result<LinForm<T>> {
    let c = phi.coeff(k);
    if c.is_zero() {
        Ok(phi.clone())
    } else if c.is_positive() {
        phi.sub_scaled(&c, &beta_plus(s, k))
    } else {
        match s.k_minus(k) {
            0 => Ok(phi.clone()),
            km => phi.sub_scaled(&c, &beta_plus(s, km)),
        }
    }
}

/// `xi^(i) = -sum_{j < iota^(i)} <h_i, alpha_{i_j}> x_j - x_{iota^(i)}`.
pub fn xi<T: Coeff>(s: &IotaSequence, i: usize) -> LinForm<T> {
    let first = s.iota_first(i);
    let cartan = s.cartan();
    let terms = (1..first)
        .map(|j| (j, T::from(-cartan.a(i, s.index_at(j)))))
        .chain(std::iter::once((first, -T::one())));
    LinForm::from_terms(T::zero(), terms)
}

/// `lambda^(i) = <h_i, lambda> + xi^(i)`, kept symbolic in `lambda`.
pub fn lambda_form<T: Coeff>(s: &IotaSequence, i: usize) -> LinForm<T> {
    xi(s, i).with_lambda(i, T::one())
}

/// Which piecewise-linear operator family drives a closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operator {
    Plain,
    Hat,
}

impl Operator {
    pub fn apply<T: Coeff>(self, s: &IotaSequence, phi: &LinForm<T>, k: usize) -> Result<LinForm<T>> {
        match self {
            Operator::Plain => s_plain(s, phi, k),
            Operator::Hat => s_hat(s, phi, k),
        }
    }
}

/// Limits for a closure computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureBounds {
    /// Forms whose support exceeds this are kept but not expanded.
    pub support_bound: usize,
    /// Hard cap on the number of distinct forms.
    pub max_forms: usize,
}

impl Default for ClosureBounds {
    fn default() -> Self {
        Self {
            support_bound: 48,
            max_forms: 200_000,
        }
    }
}

/// A deduplicated set of generated forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSet<T> {
    pub forms: BTreeSet<LinForm<T>>,
    /// Set when some generated form could not be expanded because its
    /// support exceeded `support_bound`, or the form budget ran out.
    pub truncated: bool,
    pub support_bound: usize,
    pub generators: Vec<LinForm<T>>,
}

impl<T: Coeff> FormSet<T> {
    /// A finished set that was not produced by a closure (closed-form systems).
    pub fn from_forms(forms: impl IntoIterator<Item = LinForm<T>>, support_bound: usize, truncated: bool) -> Self {
        Self {
            forms: forms.into_iter().filter(|f| !f.is_zero()).collect(),
            truncated,
            support_bound,
            generators: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn contains(&self, f: &LinForm<T>) -> bool {
        self.forms.contains(f)
    }

    /// The numeric forms at a concrete highest weight, deduplicated again.
    pub fn at_weight(&self, lambda: &Weight) -> Result<BTreeSet<LinForm<T>>> {
        self.forms
            .iter()
            .map(|f| f.at_weight(lambda))
            .filter(|f| f.as_ref().map_or(true, |f| !f.is_zero()))
            .collect()
    }

    /// Whether every form is nonnegative at `x`.
    pub fn satisfied_by(&self, x: &[i64], lambda: Option<&Weight>) -> Result<bool> {
        Ok(self.first_violation(x, lambda)?.is_none())
    }

    pub fn first_violation(&self, x: &[i64], lambda: Option<&Weight>) -> Result<Option<&LinForm<T>>> {
        for f in &self.forms {
            if f.eval(x, lambda)?.is_negative() {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

/// Failure of [`generate_closure`].
#[derive(Debug, Clone, PartialEq)]
pub enum ClosureError<T> {
    /// The form budget ran out; the partial set is attached (marked truncated).
    BudgetExceeded(Box<FormSet<T>>),
    Arithmetic(Error),
}

impl<T> From<Error> for ClosureError<T> {
    fn from(e: Error) -> Self {
        ClosureError::Arithmetic(e)
    }
}

impl<T> From<ClosureError<T>> for Error {
    fn from(e: ClosureError<T>) -> Self {
        match e {
            ClosureError::BudgetExceeded(partial) => Error::BudgetExceeded {
                max_forms: partial.forms.len().saturating_sub(1),
                generated: partial.forms.len(),
            },
            ClosureError::Arithmetic(e) => e,
        }
    }
}

impl<T: fmt::Debug> fmt::Display for ClosureError<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureError::BudgetExceeded(_) => write!(f, "form budget exceeded"),
            ClosureError::Arithmetic(e) => write!(f, "{e}"),
        }
    }
}

/// Worklist closure of `seeds` under the chosen operator family.
///
/// Operators with `phi_k = 0` act trivially, so each form is only expanded
/// at the positions in its support. A set returned with `truncated == false`
/// is therefore closed under every operator, not just those at positions
/// `<= support_bound`. The zero form is discarded.
pub fn generate_closure<T: Coeff>(
    s: &IotaSequence,
    seeds: impl IntoIterator<Item = LinForm<T>>,
    op: Operator,
    bounds: ClosureBounds,
) -> std::result::Result<FormSet<T>, ClosureError<T>> {
    let generators: Vec<LinForm<T>> = seeds.into_iter().collect();
    for g in &generators {
        if g.max_support() > bounds.support_bound {
            return Err(Error::InvalidArgument(format!(
                "seed {g} reaches beyond support bound {}",
                bounds.support_bound
            ))
            .into());
        }
    }
    if generators.len() > bounds.max_forms {
        return Err(Error::InvalidArgument("more seeds than the form budget allows".into()).into());
    }
    let mut seen: HashSet<LinForm<T>> = HashSet::new();
    let mut queue = VecDeque::new();
    for g in &generators {
        if !g.is_zero() && seen.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    let mut truncated = false;
    let finish = |seen: HashSet<LinForm<T>>, truncated: bool, generators: Vec<LinForm<T>>| FormSet {
        forms: seen.into_iter().collect(),
        truncated,
        support_bound: bounds.support_bound,
        generators,
    };
    while let Some(phi) = queue.pop_front() {
        if phi.max_support() > bounds.support_bound {
            truncated = true;
            continue;
        }
        for &k in phi.coeffs().keys() {
            let next = op.apply(s, &phi, k)?;
            if next.is_zero() || seen.contains(&next) {
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
            if seen.len() > bounds.max_forms {
                return Err(ClosureError::BudgetExceeded(Box::new(finish(seen, true, generators))));
            }
        }
    }
    Ok(finish(seen, truncated, generators))
}

/// `x_1, ..., x_count`.
pub fn coordinate_seeds<T: Coeff>(count: usize) -> Vec<LinForm<T>> {
    (1..=count).map(LinForm::var).collect()
}

/// The set generated by the plain operators from `x_1, ..., x_seeds`.
pub fn xi_infinity<T: Coeff>(
    s: &IotaSequence,
    seeds: usize,
    bounds: ClosureBounds,
) -> std::result::Result<FormSet<T>, ClosureError<T>> {
    generate_closure(s, coordinate_seeds(seeds), Operator::Plain, bounds)
}

/// The set generated by the plain operators from `xi^(i)`.
pub fn xi_family<T: Coeff>(
    s: &IotaSequence,
    i: usize,
    bounds: ClosureBounds,
) -> std::result::Result<FormSet<T>, ClosureError<T>> {
    generate_closure(s, [xi(s, i)], Operator::Plain, bounds)
}

/// The set generated by the hat operators from `x_1, ..., x_seeds` and every
/// `lambda^(i)`, with the weight kept symbolic.
pub fn xi_lambda<T: Coeff>(
    s: &IotaSequence,
    seeds: usize,
    bounds: ClosureBounds,
) -> std::result::Result<FormSet<T>, ClosureError<T>> {
    let mut all = coordinate_seeds(seeds);
    all.extend((1..=s.rank()).map(|i| lambda_form(s, i)));
    generate_closure(s, all, Operator::Hat, bounds)
}

/// Outcome of a positivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityReport<T> {
    pub passed: bool,
    /// `(form, position)` pairs with a negative coefficient at a position
    /// `k` with `k^(-) = 0`.
    pub violations: Vec<(LinForm<T>, usize)>,
}

/// Checks the (strict) positivity assumption on a generated set.
///
/// Strict mode skips the seed forms `xi^(i)`. A violation is conclusive even
/// for a truncated set; a truncated set without violations is reported as
/// [`Error::Inconclusive`].
pub fn check_positivity<T: Coeff>(
    fs: &FormSet<T>,
    s: &IotaSequence,
    strict: bool,
) -> Result<PositivityReport<T>> {
    let excluded: HashSet<LinForm<T>> = if strict {
        (1..=s.rank()).map(|i| xi(s, i)).collect()
    } else {
        HashSet::new()
    };
    let mut violations = Vec::new();
    for f in fs.forms.iter().filter(|f| !excluded.contains(*f)) {
        for &k in s.first_occurrences() {
            if f.coeff(k).is_negative() {
                violations.push((f.clone(), k));
            }
        }
    }
    if violations.is_empty() && fs.truncated {
        return Err(Error::Inconclusive(format!(
            "no violation among {} forms, but the closure was truncated",
            fs.len()
        )));
    }
    Ok(PositivityReport {
        passed: violations.is_empty(),
        violations,
    })
}

/// Strict positivity over `Xi_iota` and every `Xi_iota^(i)`.
pub fn check_strict_positivity<T: Coeff>(
    s: &IotaSequence,
    seeds: usize,
    bounds: ClosureBounds,
) -> Result<PositivityReport<T>> {
    let mut sets = vec![closure_or_partial(xi_infinity(s, seeds, bounds))?];
    for i in 1..=s.rank() {
        sets.push(closure_or_partial(xi_family(s, i, bounds))?);
    }
    let mut violations = Vec::new();
    let mut inconclusive = None;
    for fs in &sets {
        match check_positivity(fs, s, true) {
            Ok(r) => violations.extend(r.violations),
            Err(e) => inconclusive = Some(e),
        }
    }
    if violations.is_empty() {
        if let Some(e) = inconclusive {
            return Err(e);
        }
    }
    Ok(PositivityReport {
        passed: violations.is_empty(),
        violations,
    })
}

/// Keeps the partial set when the budget runs out; it is already marked truncated.
pub fn closure_or_partial<T: Coeff>(r: std::result::Result<FormSet<T>, ClosureError<T>>) -> Result<FormSet<T>> {
    match r {
        Ok(fs) => Ok(fs),
        Err(ClosureError::BudgetExceeded(partial)) => Ok(*partial),
        Err(ClosureError::Arithmetic(e)) => Err(e),
    }
}

/// Whether `(iota, lambda)` is ample, i.e. the zero vector satisfies every
/// generated inequality.
///
/// Returns `Ok(false)` as soon as a form with a negative constant is found,
/// even in a truncated set; a truncated set with no such form is
/// [`Error::Inconclusive`].
pub fn check_ample(s: &IotaSequence, lambda: &Weight, seeds: usize, bounds: ClosureBounds) -> Result<bool> {
    lambda.check_rank(s.cartan())?;
    lambda.check_dominant()?;
    let fs: FormSet<i64> = closure_or_partial(xi_lambda(s, seeds, bounds))?;
    for f in &fs.forms {
        if f.constant_at(lambda)? < 0 {
            return Ok(false);
        }
    }
    if fs.truncated {
        return Err(Error::Inconclusive(format!(
            "all {} generated constants are nonnegative but the closure was truncated",
            fs.len()
        )));
    }
    Ok(true)
}

/// JSON shape of one numeric form: `{"const": c, "coeffs": {"k": phi_k}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    #[serde(rename = "const")]
    pub constant: i64,
    pub coeffs: BTreeMap<usize, i64>,
}

impl LinForm<i64> {
    /// Numeric JSON record; symbolic weight terms need `lambda`.
    pub fn to_json(&self, lambda: Option<&Weight>) -> Result<FormJson> {
        let constant = match lambda {
            Some(w) => self.constant_at(w)?,
            None if self.lambda.is_empty() => self.constant,
            None => return Err(Error::InvalidArgument("symbolic form needs a weight".into())),
        };
        Ok(FormJson {
            constant,
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn from_json(j: &FormJson) -> Result<Self> {
        if j.coeffs.contains_key(&0) {
            return Err(Error::Parse("positions start at 1".into()));
        }
        Ok(Self::from_terms(j.constant, j.coeffs.iter().map(|(&k, &v)| (k, v))))
    }
}

impl FormSet<i64> {
    /// Serializes as a sorted JSON array of numeric forms.
    pub fn to_json(&self, lambda: Option<&Weight>) -> Result<String> {
        let numeric: BTreeSet<LinForm<i64>> = match lambda {
            Some(w) => self.at_weight(w)?,
            None => self.forms.clone(),
        };
        let records = numeric
            .iter()
            .map(|f| f.to_json(None))
            .collect::<Result<Vec<_>>>()?;
        serde_json::to_string_pretty(&records).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str, support_bound: usize, truncated: bool) -> Result<Self> {
        let records: Vec<FormJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let forms = records.iter().map(LinForm::from_json).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_forms(forms, support_bound, truncated))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanData, Family};
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use std::sync::Arc;

    type F = LinForm<i64>;

    fn f(c: i64, terms: &[(usize, i64)]) -> F {
        F::from_terms(c, terms.iter().copied())
    }

    fn sl4_nonpositive() -> IotaSequence {
        let c = Arc::new(CartanData::build(Family::TypeA(3)).unwrap());
        IotaSequence::new(c, vec![1, 2, 3, 2]).unwrap()
    }

    fn rank2(c1: i64, c2: i64) -> IotaSequence {
        let c = Arc::new(CartanData::build(Family::Rank2 { c1, c2 }).unwrap());
        IotaSequence::from_display(c, &[2, 1]).unwrap()
    }

    fn type_a(n: usize) -> IotaSequence {
        IotaSequence::standard(Arc::new(CartanData::build(Family::TypeA(n)).unwrap())).unwrap()
    }

    #[test]
    fn canonical_representation() {
        let a = f(0, &[(1, 1), (2, -1), (2, 1)]);
        assert_eq!(a, F::var(1));
        assert_eq!(a.max_support(), 1);
        assert!(f(0, &[(3, 2), (3, -2)]).is_zero());
    }

    #[test]
    fn evaluation_is_exact() {
        let phi = f(3, &[(1, 2), (4, -1)]).with_lambda(2, 1);
        let w = Weight::new(vec![0, 5, 0]);
        assert_eq!(phi.eval(&[1, 0, 0, 7], Some(&w)).unwrap(), 3 + 5 + 2 - 7);
        assert!(phi.eval(&[1], None).is_err());
        let big = LinForm::<i64>::from_terms(0, [(1, i64::MAX)]);
        assert_eq!(big.eval(&[2], None), Err(Error::Overflow));
    }

    #[test]
    fn rendering() {
        let phi = f(0, &[(4, 3), (5, -1)]).with_lambda(2, 1);
        assert_eq!(phi.to_string(), "λ_2 + 3x_4 − x_5");
        assert_eq!(phi.render_inequality(), "λ_2 + 3x_4 ≥ x_5");
        let lam1 = f(0, &[(1, -1)]).with_lambda(1, 1);
        assert_eq!(lam1.render_inequality(), "λ_1 ≥ x_1");
        assert_eq!(F::zero().to_string(), "0");
        assert_eq!(f(0, &[(2, -1)]).render_inequality(), "0 ≥ x_2");
    }

    #[test]
    fn betas_of_nonpositive_sequence() {
        let s = sl4_nonpositive();
        assert_eq!(beta_plus::<i64>(&s, 1), f(0, &[(1, 1), (2, -1), (4, -1), (5, 1)]));
        assert_eq!(beta_plus::<i64>(&s, 2), f(0, &[(2, 1), (3, -1), (4, 1)]));
        assert_eq!(
            beta_minus::<i64>(&s, 2),
            f(0, &[(1, -1), (2, 1)]).with_lambda(2, -1)
        );
    }

    #[test]
    fn beta_examples_rank2() {
        let s = rank2(3, 5);
        assert_eq!(beta_plus::<i64>(&s, 1), f(0, &[(1, 1), (2, -3), (3, 1)]));
        assert_eq!(beta_minus::<i64>(&s, 3), beta_plus(&s, 1));
        assert_eq!(beta_minus::<i64>(&s, 1), f(0, &[(1, 1)]).with_lambda(1, -1));
        // lambda^(1) = -beta^(-)_1
        assert_eq!(lambda_form::<i64>(&s, 1), beta_minus::<i64>(&s, 1).neg());
    }

    #[test]
    fn plain_operator_chain() {
        let s = sl4_nonpositive();
        let x1 = F::var(1);
        let s1 = s_plain(&s, &x1, 1).unwrap();
        assert_eq!(s1, f(0, &[(2, 1), (4, 1), (5, -1)]));
        let s21 = s_plain(&s, &s1, 2).unwrap();
        assert_eq!(s21, f(0, &[(3, 1), (5, -1)]));
        let s521 = s_plain(&s, &s21, 5).unwrap();
        assert_eq!(s521, f(0, &[(1, 1), (2, -1), (3, 1), (4, -1)]));
        assert_eq!(s_plain(&s, &F::var(3), 1).unwrap(), F::var(3));
    }

    #[test]
    fn hat_operator_chain() {
        let s = sl4_nonpositive();
        let x1 = F::var(1);
        let h1 = s_hat(&s, &x1, 1).unwrap();
        assert_eq!(h1, f(0, &[(2, 1), (4, 1), (5, -1)]));
        let h = s_hat(&s, &h1, 2).unwrap();
        let h = s_hat(&s, &h, 5).unwrap();
        let h = s_hat(&s, &h, 2).unwrap();
        assert_eq!(h, f(0, &[(3, 1), (4, -1)]).with_lambda(2, -1));
        let phi = f(0, &[(3, 4)]);
        assert_eq!(s_hat(&s, &phi, 2).unwrap(), phi);
    }

    #[test]
    fn xi_examples() {
        for (c1, c2) in [(1, 1), (2, 3), (4, 1)] {
            let s = rank2(c1, c2);
            assert_eq!(xi::<i64>(&s, 1), f(0, &[(1, -1)]));
            assert_eq!(xi::<i64>(&s, 2), f(0, &[(1, c2), (2, -1)]));
            assert_eq!(lambda_form::<i64>(&s, 1), f(0, &[(1, -1)]).with_lambda(1, 1));
        }
        let s = type_a(4);
        for i in 2..=4 {
            assert_eq!(xi::<i64>(&s, i), f(0, &[(i, -1), (i - 1, 1)]));
        }
        let c = Arc::new(CartanData::build(Family::AffineA(5)).unwrap());
        let s = IotaSequence::standard(c).unwrap();
        // x_{1;1} + x_{1;n-1} - x_{2;1} with j;i = (j-1)(n-1) + i
        assert_eq!(xi::<i64>(&s, 5), f(0, &[(1, 1), (4, 1), (5, -1)]));
    }

    #[test]
    fn lambda_form_at_zero_weight_is_xi() {
        let s = type_a(3);
        for i in 1..=3 {
            let folded = lambda_form::<i64>(&s, i).at_weight(&Weight::zero(3)).unwrap();
            assert_eq!(folded, xi(&s, i));
        }
    }

    #[test]
    fn closure_rank2_xi_families() {
        let s = rank2(1, 1);
        let fs1: FormSet<i64> = xi_family(&s, 1, ClosureBounds::default()).unwrap();
        assert_eq!(fs1.forms.into_iter().collect::<Vec<_>>(), vec![f(0, &[(1, -1)])]);
        let fs2: FormSet<i64> = xi_family(&s, 2, ClosureBounds::default()).unwrap();
        assert!(!fs2.truncated);
        // a'_l for (1,1): 0, 1, 1, 0
        let expected: BTreeSet<F> = [f(0, &[(1, 1), (2, -1)]), f(0, &[(3, -1)])].into_iter().collect();
        assert_eq!(fs2.forms, expected);
    }

    #[test]
    fn closure_type_a_xi_family() {
        let n = 4;
        let s = type_a(n);
        let pos = |j: usize, i: usize| (j - 1) * n + i;
        for i in 1..=n {
            let fs: FormSet<i64> = xi_family(&s, i, ClosureBounds::default()).unwrap();
            let expected: BTreeSet<F> = (1..=i)
                .map(|j| {
                    let mut terms = vec![(pos(j, i - j + 1), -1)];
                    if i - j >= 1 {
                        terms.push((pos(j, i - j), 1));
                    }
                    f(0, &terms)
                })
                .collect();
            assert_eq!(fs.forms, expected, "i = {i}");
        }
    }

    #[test]
    fn closure_budget_and_truncation() {
        let s = rank2(2, 2);
        let fs: FormSet<i64> = xi_family(&s, 2, ClosureBounds { support_bound: 10, max_forms: 1000 }).unwrap();
        assert!(fs.truncated);
        match xi_family::<i64>(&s, 2, ClosureBounds { support_bound: 1000, max_forms: 5 }) {
            Err(ClosureError::BudgetExceeded(partial)) => {
                assert!(partial.truncated);
                assert_eq!(partial.len(), 6);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        let bad = generate_closure::<i64>(&s, [F::var(20)], Operator::Plain, ClosureBounds { support_bound: 10, max_forms: 10 });
        assert!(matches!(bad, Err(ClosureError::Arithmetic(Error::InvalidArgument(_)))));
    }

    #[test]
    fn positivity_examples() {
        let s = rank2(1, 2);
        let fs: FormSet<i64> = xi_infinity(&s, 10, ClosureBounds::default()).unwrap();
        assert!(!fs.truncated);
        assert!(check_positivity(&fs, &s, false).unwrap().passed);
        assert!(check_strict_positivity::<i64>(&s, 10, ClosureBounds::default()).unwrap().passed);

        let s = sl4_nonpositive();
        let fs: FormSet<i64> = closure_or_partial(xi_infinity(&s, 8, ClosureBounds { support_bound: 24, max_forms: 20_000 })).unwrap();
        let report = check_positivity(&fs, &s, false).unwrap();
        assert!(!report.passed);
        assert!(report.violations.contains(&(f(0, &[(1, 1), (2, -1), (3, 1), (4, -1)]), 2)));

        let empty = FormSet::<i64>::from_forms([], 5, false);
        assert!(check_positivity(&empty, &s, false).unwrap().passed);
        let truncated = FormSet::<i64>::from_forms([], 5, true);
        assert!(matches!(check_positivity(&truncated, &s, false), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn ample_examples() {
        let s = rank2(1, 3);
        for lam in Weight::dominant_up_to(2, 3) {
            assert!(check_ample(&s, &lam, 12, ClosureBounds::default()).unwrap());
        }
        let s = sl4_nonpositive();
        let bounds = ClosureBounds { support_bound: 24, max_forms: 20_000 };
        assert!(!check_ample(&s, &Weight::new(vec![0, 1, 0]), 8, bounds).unwrap());
        assert!(!check_ample(&s, &Weight::new(vec![2, 3, 1]), 8, bounds).unwrap());
        let s = type_a(3);
        assert!(check_ample(&s, &Weight::zero(3), 12, ClosureBounds::default()).unwrap());
        assert!(check_ample(&s, &Weight::new(vec![-1, 0, 0]), 12, ClosureBounds::default()).is_err());
    }

    #[test]
    fn bigint_instantiation_agrees() {
        let s = rank2(2, 3);
        let small: FormSet<i64> = xi_family(&s, 2, ClosureBounds { support_bound: 12, max_forms: 1000 }).unwrap();
        let big: FormSet<BigInt> = xi_family(&s, 2, ClosureBounds { support_bound: 12, max_forms: 1000 }).unwrap();
        assert_eq!(small.len(), big.len());
        let converted: BTreeSet<String> = big.forms.iter().map(|f| f.to_string()).collect();
        let direct: BTreeSet<String> = small.forms.iter().map(|f| f.to_string()).collect();
        assert_eq!(converted, direct);
    }

    #[test]
    fn json_round_trip() {
        let s = type_a(2);
        let fs: FormSet<i64> = xi_lambda(&s, 6, ClosureBounds::default()).unwrap();
        let w = Weight::new(vec![2, 1]);
        let text = fs.to_json(Some(&w)).unwrap();
        let back = FormSet::from_json(&text, fs.support_bound, false).unwrap();
        assert_eq!(back.forms, fs.at_weight(&w).unwrap());
        assert_eq!(back.to_json(None).unwrap(), text);
    }

    fn form_strategy(max_pos: usize) -> impl Strategy<Value = F> {
        (
            -3i64..=3,
            proptest::collection::btree_map(1..=max_pos, -4i64..=4, 0..6),
            proptest::option::of(1usize..=3),
        )
            .prop_map(|(c, terms, lam)| {
                let base = F::from_terms(c, terms);
                match lam {
                    Some(i) => base.with_lambda(i, 1),
                    None => base,
                }
            })
    }

    proptest! {
        #[test]
        fn hat_is_idempotent(phi in form_strategy(12), k in 1usize..12) {
            let s = sl4_nonpositive();
            let once = s_hat(&s, &phi, k).unwrap();
            prop_assert_eq!(s_hat(&s, &once, k).unwrap(), once);
            let once = s_plain(&s, &phi, k).unwrap();
            prop_assert_eq!(s_plain(&s, &once, k).unwrap(), once);
        }

        #[test]
        fn hat_agrees_with_plain(phi in form_strategy(12), k in 1usize..12) {
            let s = sl4_nonpositive();
            if s.k_minus(k) > 0 || phi.coeff(k) >= 0 {
                prop_assert_eq!(s_hat(&s, &phi, k).unwrap(), s_plain(&s, &phi, k).unwrap());
            }
        }

        #[test]
        fn hat_chains_reduce_to_plain_under_strict_positivity(
            which in 0usize..4,
            j0 in 1usize..8,
            chain in proptest::collection::vec(1usize..10, 0..12),
        ) {
            let s = [rank2(1, 2), rank2(1, 3), type_a(3), type_a(4)][which].clone();
            let mut hat = F::var(j0);
            let mut plain = F::var(j0);
            for &k in &chain {
                hat = s_hat(&s, &hat, k).unwrap();
                plain = s_plain(&s, &plain, k).unwrap();
            }
            prop_assert_eq!(hat, plain);
            for i in 1..=s.rank() {
                let mut hat = lambda_form::<i64>(&s, i);
                let mut plain = xi::<i64>(&s, i);
                for &k in &chain {
                    hat = s_hat(&s, &hat, k).unwrap();
                    if hat.is_zero() {
                        break;
                    }
                    plain = s_plain(&s, &plain, k).unwrap();
                    prop_assert_eq!(&hat, &plain.clone().with_lambda(i, 1));
                }
            }
        }
    }
}
