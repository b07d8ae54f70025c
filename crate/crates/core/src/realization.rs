//! Membership in `Sigma_iota[lambda]`, enumeration of `B(lambda)` inside the lattice,
//! `epsilon*_i`, weight multiplicities and Littlewood-Richardson numbers.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Family, Weight};
use crate::crystal::{to_dot, LatticeCrystal, LatticePoint};
use crate::error::{Error, Result};
use crate::iota::IotaSequence;
use crate::linforms::{check_positivity, closure_or_partial, xi_family, xi_lambda, ClosureBounds, FormSet};
use crate::special::{affine_a_system, an_system, rank2_system, ChebCoeffs, LMax};

/// Outcome of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub satisfied: bool,
    /// The system is truncated, or the point reaches past the positions it
    /// describes: a positive answer is a necessary condition only.
    pub necessary_only: bool,
}

/// Whether `x` satisfies every form of `fs` at highest weight `lambda`.
pub fn member(x: &LatticePoint, fs: &FormSet<i64>, lambda: &Weight) -> Result<Membership> {
    Ok(Membership {
        satisfied: fs.satisfied_by(x.as_slice(), Some(lambda))?,
        necessary_only: fs.truncated || x.max_support() > fs.support_bound,
    })
}

/// How to build the inequality system for a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemConfig {
    /// Always use the generic closure, even when a closed form is known.
    pub generic: bool,
    /// Coordinate seeds `x_1..x_seeds` for the generic closure.
    pub seeds: usize,
    pub bounds: ClosureBounds,
    /// Position window for rank 2 with infinite `l_max`, and the shift bound
    /// for the affine system.
    pub window: usize,
    /// Row bound for admissible matrices.
    pub rows: usize,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            generic: false,
            seeds: 16,
            bounds: ClosureBounds::default(),
            window: 12,
            rows: 4,
        }
    }
}

fn is_standard(s: &IotaSequence) -> bool {
    s.period().iter().copied().eq(1..=s.rank())
}

/// The defining system of `Sigma_iota[lambda]`, weight kept symbolic: the
/// closed form when the family and sequence have one, else the closure.
pub fn inequality_system(s: &IotaSequence, cfg: &SystemConfig) -> Result<FormSet<i64>> {
    if !cfg.generic && is_standard(s) {
        match s.cartan().family() {
            Family::Rank2 { c1, c2 } => {
                let window = match ChebCoeffs::new(c1, c2)?.l_max {
                    LMax::Finite(_) => None,
                    LMax::Infinite => Some(cfg.window),
                };
                return rank2_system(c1, c2, window);
            }
            Family::TypeA(n) if n >= 2 => return an_system(n),
            Family::AffineA(n) => return affine_a_system(n, cfg.rows, cfg.window),
            _ => {}
        }
    }
    let bounds = ClosureBounds {
        support_bound: cfg.bounds.support_bound.max(cfg.seeds),
        ..cfg.bounds
    };
    closure_or_partial(xi_lambda(s, cfg.seeds, bounds))
}

/// Options for [`enumerate_blambda`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Largest depth `sum_k x_k` explored.
    pub depth_cap: usize,
    /// Check every reached point against the inequality system.
    pub cross_validate: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            depth_cap: 64,
            cross_validate: cfg!(debug_assertions),
        }
    }
}

/// The realized crystal, possibly cut off at a depth cap.
#[derive(Debug, Clone)]
pub struct RealizationResult {
    pub crystal: LatticeCrystal,
    pub elements: BTreeSet<LatticePoint>,
    /// Element count per depth.
    pub layers: Vec<usize>,
    /// Whether no element lies beyond the explored depth.
    pub complete: bool,
    /// Element counts keyed by root content `m`.
    pub by_weight: BTreeMap<Vec<i64>, usize>,
    pub depth_used: usize,
}

/// Serialized form of a [`RealizationResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub lambda: Vec<i64>,
    pub complete: bool,
    pub depth_used: usize,
    pub size: usize,
    pub layers: Vec<usize>,
    /// Keyed by the root content written `m1,...,mn`.
    pub by_weight: BTreeMap<String, usize>,
    pub elements: Vec<LatticePoint>,
}

impl RealizationReport {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl RealizationResult {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn require_complete(&self) -> Result<&Self> {
        if self.complete {
            Ok(self)
        } else {
            Err(Error::DepthCapReached {
                depth_cap: self.depth_used,
            })
        }
    }

    /// Number of elements with root content `m`, i.e. the multiplicity of
    /// the weight `lambda - sum m_i alpha_i`.
    pub fn weight_multiplicity(&self, m: &[i64]) -> Result<usize> {
        if m.len() != self.crystal.rank() || m.iter().any(|&v| v < 0) {
            return Err(Error::InvalidArgument(format!("bad root content {m:?}")));
        }
        let depth = m.iter().sum::<i64>() as usize;
        if !self.complete && depth > self.depth_used {
            return Err(Error::IncompleteEnumeration {
                requested: depth,
                explored: self.depth_used,
            });
        }
        Ok(self.by_weight.get(m).copied().unwrap_or(0))
    }

    /// Elements killed by every `e_i`.
    pub fn highest_weight_elements(&self) -> Vec<&LatticePoint> {
        self.elements
            .iter()
            .filter(|x| (1..=self.crystal.rank()).all(|i| self.crystal.e_tilde(x, i).is_none()))
            .collect()
    }

    pub fn report(&self) -> RealizationReport {
        RealizationReport {
            lambda: self.crystal.lambda().coeffs().to_vec(),
            complete: self.complete,
            depth_used: self.depth_used,
            size: self.elements.len(),
            layers: self.layers.clone(),
            by_weight: self
                .by_weight
                .iter()
                .map(|(m, c)| (m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","), *c))
                .collect(),
            elements: self.elements.iter().cloned().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report()).expect("plain data serializes")
    }

    pub fn to_dot(&self) -> String {
        to_dot(&self.crystal, self.elements.iter())
    }
}

/// Breadth-first closure of the zero vector under all `f_i`, layer by layer
/// in depth, expanding each layer in parallel.
///
/// Returns `Ok` with `complete == false` when the cap cuts the crystal off.
/// When `fs` is given and `opts.cross_validate` is set, every reached point
/// is checked against it.
pub fn enumerate_crystal(
    crystal: LatticeCrystal,
    fs: Option<&FormSet<i64>>,
    opts: EnumerateOptions,
) -> Result<RealizationResult> {
    let lambda = crystal.lambda().clone();
    let validate = |x: &LatticePoint| -> Result<()> {
        if let (true, Some(fs)) = (opts.cross_validate, fs) {
            if let Some(f) = fs.first_violation(x.as_slice(), Some(&lambda))? {
                return Err(Error::CrossValidation {
                    point: x.to_string(),
                    form: f.render_inequality(),
                });
            }
        }
        Ok(())
    };
    let n = crystal.rank();
    let mut elements = BTreeSet::new();
    let mut layers = Vec::new();
    let mut frontier = vec![LatticePoint::zero()];
    let mut depth = 0;
    let complete = loop {
        for x in &frontier {
            validate(x)?;
        }
        layers.push(frontier.len());
        let next: BTreeSet<LatticePoint> = frontier
            .par_iter()
            .flat_map_iter(|x| (1..=n).filter_map(|i| crystal.f_tilde(x, i)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        elements.extend(frontier.drain(..));
        if next.is_empty() {
            break true;
        }
        if depth == opts.depth_cap {
            break false;
        }
        frontier = next.into_iter().collect();
        depth += 1;
    };
    let mut by_weight = BTreeMap::new();
    for x in &elements {
        *by_weight.entry(x.root_content(crystal.seq())).or_insert(0) += 1;
    }
    if !complete {
        log::info!("enumeration cut off at depth {depth}");
    }
    Ok(RealizationResult {
        crystal,
        elements,
        layers,
        complete,
        by_weight,
        depth_used: depth,
    })
}

/// Enumerates the image of `B(lambda)`.
///
/// The zero vector must satisfy `fs`, otherwise the pair is not ample.
pub fn enumerate_blambda(
    s: &IotaSequence,
    lambda: &Weight,
    fs: &FormSet<i64>,
    opts: EnumerateOptions,
) -> Result<RealizationResult> {
    let crystal = LatticeCrystal::highest_weight(s.clone(), lambda.clone())?;
    if let Some(f) = fs.first_violation(&[], Some(lambda))? {
        return Err(Error::NotAmple(format!("the zero vector violates {}", f.render_inequality())));
    }
    if fs.truncated {
        log::warn!("ampleness checked against a truncated system only");
    }
    enumerate_crystal(crystal, Some(fs), opts)
}

/// `max{-phi(x) : phi in xi_set}`.
pub fn epsilon_star(x: &LatticePoint, xi_set: &FormSet<i64>) -> Result<i64> {
    let mut best: Option<i64> = None;
    for f in &xi_set.forms {
        let v = -f.eval(x.as_slice(), None)?;
        best = Some(best.map_or(v, |b| b.max(v)));
    }
    best.ok_or_else(|| Error::InvalidArgument("empty form set".into()))
}

/// `epsilon*_i` on the realization of `B(infinity)`, through the generated
/// families `Xi_iota^(i)`.
#[derive(Debug, Clone)]
pub struct EpsilonStar {
    families: Vec<FormSet<i64>>,
}

impl EpsilonStar {
    /// Generates every `Xi_iota^(i)` and checks strict positivity on them.
    ///
    /// Fails with [`Error::StrictPositivityViolated`] on a found violation.
    /// Truncated families are kept; values are then lower bounds.
    pub fn new(s: &IotaSequence, bounds: ClosureBounds) -> Result<Self> {
        let mut families = Vec::with_capacity(s.rank());
        for i in 1..=s.rank() {
            let fs = closure_or_partial(xi_family(s, i, bounds))?;
            match check_positivity(&fs, s, true) {
                Ok(r) if !r.passed => {
                    let (f, k) = &r.violations[0];
                    return Err(Error::StrictPositivityViolated(format!("{f} has a negative coefficient at x_{k}")));
                }
                Ok(_) | Err(Error::Inconclusive(_)) => {}
                Err(e) => return Err(e),
            }
            families.push(fs);
        }
        Ok(Self { families })
    }

    pub fn family(&self, i: usize) -> &FormSet<i64> {
        &self.families[i - 1]
    }

    /// Whether every family was generated completely.
    pub fn exact(&self) -> bool {
        self.families.iter().all(|f| !f.truncated)
    }

    pub fn value(&self, x: &LatticePoint, i: usize) -> Result<i64> {
        epsilon_star(x, self.family(i))
    }
}

/// The largest element of `E^(i)` is at most `<h_i, lambda>` for every `i`.
pub fn lr_filter(crystal_mu: &LatticeCrystal, x: &LatticePoint, lambda: &Weight) -> Result<bool> {
    for i in 1..=crystal_mu.rank() {
        if crystal_mu.e_set_max(x, i)? > lambda.get(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves `A m = rhs` exactly; `Ok(None)` when the unique solution is not a
/// nonnegative integer vector.
pub fn solve_root_content(cartan: &CartanData, rhs: &[i64]) -> Result<Option<Vec<i64>>> {
    let n = cartan.rank();
    let mut a: Vec<Vec<BigRational>> = (1..=n)
        .map(|i| {
            let mut row: Vec<BigRational> = (1..=n).map(|j| BigRational::from_integer(cartan.a(i, j).into())).collect();
            row.push(BigRational::from_integer(rhs[i - 1].into()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::WeightNotDetermined("the Cartan matrix is singular".into()))?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *v = &*v - &factor * p;
                }
            }
        }
    }
    let mut m = Vec::with_capacity(n);
    for row in &a {
        let v = &row[n];
        if !v.denom().is_one() || v.is_negative() {
            return Ok(None);
        }
        m.push(v.to_integer().to_i64().ok_or(Error::Overflow)?);
    }
    Ok(Some(m))
}

/// Multiplicity of the component with highest weight
/// `lambda + mu - sum m_j alpha_j` in `V(lambda) (x) V(mu)`, by filtering the
/// realized `B(mu)`.
pub fn lr_coefficient_at(result_mu: &RealizationResult, lambda: &Weight, m: &[i64]) -> Result<u64> {
    let crystal = &result_mu.crystal;
    lambda.check_rank(crystal.cartan())?;
    lambda.check_dominant()?;
    result_mu.weight_multiplicity(m)?;
    let seq = crystal.seq();
    let mut count = 0;
    for x in result_mu.elements.iter().filter(|x| x.root_content(seq) == m) {
        if lr_filter(crystal, x, lambda)? {
            count += 1;
        }
    }
    Ok(count)
}

/// `c^nu_{lambda, mu}`; needs a nonsingular Cartan matrix to recover the
/// root content from `nu`.
pub fn lr_coefficient(result_mu: &RealizationResult, lambda: &Weight, nu: &Weight) -> Result<u64> {
    let crystal = &result_mu.crystal;
    let cartan = crystal.cartan();
    nu.check_rank(cartan)?;
    nu.check_dominant()?;
    lambda.check_rank(cartan)?;
    let mu = crystal.lambda();
    let rhs: Vec<i64> = (1..=cartan.rank()).map(|i| lambda.get(i) + mu.get(i) - nu.get(i)).collect();
    match solve_root_content(cartan, &rhs)? {
        Some(m) => lr_coefficient_at(result_mu, lambda, &m),
        None => Ok(0),
    }
}

/// All components of `V(lambda) (x) V(mu)` from a complete `B(mu)`.
pub fn lr_decomposition(result_mu: &RealizationResult, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    result_mu.require_complete()?;
    let crystal = &result_mu.crystal;
    let cartan = crystal.cartan();
    lambda.check_rank(cartan)?;
    lambda.check_dominant()?;
    let mut out = BTreeMap::new();
    for x in &result_mu.elements {
        if lr_filter(crystal, x, lambda)? {
            let wt = crystal.weight(x).pairings(cartan);
            let nu: Vec<i64> = wt.iter().zip(lambda.coeffs()).map(|(a, b)| a + b).collect();
            *out.entry(Weight::new(nu)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Nonnegative vectors with `sum x <= depth` supported on positions
/// `1..=positions`, pruned by `keep` on every partial vector.
pub fn lattice_ball(positions: usize, depth: i64, keep: &dyn Fn(&[i64]) -> bool) -> Vec<LatticePoint> {
    fn go(v: &mut Vec<i64>, k: usize, left: i64, keep: &dyn Fn(&[i64]) -> bool, out: &mut Vec<LatticePoint>) {
        if k == v.len() {
            out.push(LatticePoint::from_positions(v.clone()));
            return;
        }
        for x in 0..=left {
            v[k] = x;
            if keep(&v[..=k]) {
                go(v, k + 1, left - x, keep, out);
            }
        }
        v[k] = 0;
    }
    let mut out = Vec::new();
    go(&mut vec![0; positions], 0, depth, keep, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn seq(f: Family) -> IotaSequence {
        IotaSequence::standard(Arc::new(CartanData::build(f).unwrap())).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn realize(f: Family, lam: &[i64]) -> RealizationResult {
        let s = seq(f);
        let fs = inequality_system(&s, &SystemConfig::default()).unwrap();
        enumerate_blambda(&s, &w(lam), &fs, EnumerateOptions::default()).unwrap()
    }

    const A2: Family = Family::Rank2 { c1: 1, c2: 1 };
    const AFFINE_A1: Family = Family::Rank2 { c1: 2, c2: 2 };

    #[test]
    fn membership_examples() {
        let s = seq(AFFINE_A1);
        let fs = inequality_system(&s, &SystemConfig::default()).unwrap();
        let lam = w(&[1, 0]);
        let m = member(&LatticePoint::from_positions(vec![2]), &fs, &lam).unwrap();
        assert!(!m.satisfied);
        let m = member(&LatticePoint::from_positions(vec![1]), &fs, &lam).unwrap();
        assert!(m.satisfied && m.necessary_only);
        let a2 = inequality_system(&seq(A2), &SystemConfig::default()).unwrap();
        let m = member(&LatticePoint::zero(), &a2, &w(&[0, 0])).unwrap();
        assert!(m.satisfied && !m.necessary_only);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(realize(A2, &[1, 0]).len(), 3);
        assert_eq!(realize(A2, &[1, 1]).len(), 8);
        for f in [A2, Family::TypeA(3), Family::Rank2 { c1: 1, c2: 3 }] {
            let r = realize(f, &vec![0; f_rank(f)]);
            assert_eq!(r.elements.iter().collect::<Vec<_>>(), vec![&LatticePoint::zero()]);
            assert!(r.complete);
        }
    }

    fn f_rank(f: Family) -> usize {
        CartanData::build(f).unwrap().rank()
    }

    #[test]
    fn multiplicities_and_depth() {
        let r = realize(A2, &[1, 1]);
        assert_eq!(r.weight_multiplicity(&[0, 0]).unwrap(), 1);
        assert_eq!(r.weight_multiplicity(&[1, 1]).unwrap(), 2);
        assert_eq!(realize(A2, &[1, 0]).weight_multiplicity(&[1, 0]).unwrap(), 1);

        let s = seq(AFFINE_A1);
        let fs = inequality_system(&s, &SystemConfig::default()).unwrap();
        let opts = EnumerateOptions {
            depth_cap: 4,
            cross_validate: true,
        };
        let r = enumerate_blambda(&s, &w(&[1, 0]), &fs, opts).unwrap();
        assert!(!r.complete);
        assert_eq!(r.require_complete().unwrap_err(), Error::DepthCapReached { depth_cap: 4 });
        assert_eq!(r.weight_multiplicity(&[2, 2]).unwrap(), r.by_weight.get(&vec![2, 2]).copied().unwrap_or(0));
        assert!(matches!(r.weight_multiplicity(&[3, 2]), Err(Error::IncompleteEnumeration { .. })));
        assert_eq!(r.highest_weight_elements(), vec![&LatticePoint::zero()]);
    }

    #[test]
    fn non_ample_pair_is_rejected() {
        let c = Arc::new(CartanData::build(Family::TypeA(3)).unwrap());
        let s = IotaSequence::new(c, vec![1, 2, 3, 2]).unwrap();
        let cfg = SystemConfig {
            seeds: 8,
            bounds: ClosureBounds {
                support_bound: 24,
                max_forms: 20_000,
            },
            ..SystemConfig::default()
        };
        let fs = inequality_system(&s, &cfg).unwrap();
        let err = enumerate_blambda(&s, &w(&[0, 1, 0]), &fs, EnumerateOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NotAmple(_)));
    }

    #[test]
    fn epsilon_star_rank2_closed_form() {
        let s = seq(Family::Rank2 { c1: 1, c2: 2 });
        let es = EpsilonStar::new(&s, ClosureBounds::default()).unwrap();
        assert!(es.exact());
        let cc = ChebCoeffs::new(1, 2).unwrap();
        let binf = enumerate_crystal(
            LatticeCrystal::b_infinity(s.clone()),
            None,
            EnumerateOptions {
                depth_cap: 6,
                cross_validate: false,
            },
        )
        .unwrap();
        for x in &binf.elements {
            assert_eq!(es.value(x, 1).unwrap(), x.get(1));
            assert_eq!(es.value(x, 2).unwrap(), cc.epsilon_star_2(x, 8).unwrap(), "{x}");
        }
    }

    #[test]
    fn epsilon_star_rejects_nonpositive_sequence() {
        let c = Arc::new(CartanData::build(Family::TypeA(3)).unwrap());
        let s = IotaSequence::new(c, vec![1, 2, 3, 2]).unwrap();
        let bounds = ClosureBounds {
            support_bound: 20,
            max_forms: 5000,
        };
        match EpsilonStar::new(&s, bounds) {
            Err(Error::StrictPositivityViolated(_)) | Ok(_) => {}
            Err(e) => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn littlewood_richardson_a2() {
        let r = realize(A2, &[0, 1]);
        assert_eq!(lr_coefficient(&r, &w(&[1, 0]), &w(&[1, 1])).unwrap(), 1);
        assert_eq!(lr_coefficient(&r, &w(&[1, 0]), &w(&[0, 0])).unwrap(), 1);
        let r = realize(A2, &[1, 0]);
        assert_eq!(lr_coefficient(&r, &w(&[1, 0]), &w(&[2, 0])).unwrap(), 1);
        assert_eq!(lr_coefficient(&r, &w(&[1, 0]), &w(&[0, 1])).unwrap(), 1);
        assert_eq!(lr_coefficient(&r, &w(&[1, 0]), &w(&[1, 1])).unwrap(), 0);
        let trivial = realize(A2, &[0, 0]);
        assert_eq!(lr_coefficient(&trivial, &w(&[2, 1]), &w(&[2, 1])).unwrap(), 1);
        assert_eq!(lr_coefficient(&trivial, &w(&[2, 1]), &w(&[1, 1])).unwrap(), 0);
        assert_eq!(
            lr_decomposition(&r, &w(&[1, 0])).unwrap(),
            [(w(&[2, 0]), 1), (w(&[0, 1]), 1)].into_iter().collect()
        );
    }

    #[test]
    fn lr_needs_nonsingular_matrix() {
        let s = seq(AFFINE_A1);
        let fs = inequality_system(&s, &SystemConfig::default()).unwrap();
        let opts = EnumerateOptions {
            depth_cap: 3,
            cross_validate: true,
        };
        let r = enumerate_blambda(&s, &w(&[1, 0]), &fs, opts).unwrap();
        assert!(matches!(lr_coefficient(&r, &w(&[0, 1]), &w(&[1, 1])), Err(Error::WeightNotDetermined(_))));
        assert_eq!(lr_coefficient_at(&r, &w(&[0, 1]), &[0, 0]).unwrap(), 1);
    }

    #[test]
    fn root_content_solver() {
        let c = CartanData::build(Family::TypeA(2)).unwrap();
        assert_eq!(solve_root_content(&c, &[1, 1]).unwrap(), Some(vec![1, 1]));
        assert_eq!(solve_root_content(&c, &[1, 0]).unwrap(), None);
        assert_eq!(solve_root_content(&c, &[-1, 2]).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn ball_enumeration() {
        let all = lattice_ball(3, 2, &|_| true);
        assert_eq!(all.len(), 10);
        let pruned = lattice_ball(3, 2, &|v| v[0] == 0);
        assert_eq!(pruned.len(), 6);
    }

    #[test]
    fn json_and_dot_outputs() {
        let r = realize(A2, &[1, 0]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["size"], 3);
        assert_eq!(v["by_weight"]["1,1"], 1);
        assert_eq!(RealizationReport::from_json(&r.to_json()).unwrap(), r.report());
        assert!(r.to_dot().contains("->"));
    }
}
