//! Brute-force ground truth for finite types: Weyl's dimension formula,
//! Freudenthal's multiplicity recursion and tensor product decomposition by
//! character multiplication. Used by tests and `verify`, never by the
//! realization code.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};

/// A character, keyed by root content `k` of the weight `lambda - sum k_j alpha_j`.
pub type Character = BTreeMap<Vec<i64>, u64>;

/// Positive roots of a finite-type Cartan matrix in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    cartan: CartanData,
    positive: Vec<Vec<i64>>,
}

fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    // Fraction-free elimination: every leading principal minor must be positive.
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    true
}

impl RootSystem {
    pub fn new(cartan: &CartanData) -> Result<Self> {
        let n = cartan.rank();
        let d = cartan.symmetrizer();
        let sym: Vec<Vec<i64>> = (1..=n).map(|i| (1..=n).map(|j| d[i - 1] * cartan.a(i, j)).collect()).collect();
        if !is_positive_definite(&sym) {
            return Err(Error::NotFiniteType);
        }
        let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut all: HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut positive = simple.clone();
        let mut layer = simple;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 1..=n {
                    // The alpha_i-string through beta runs from beta - p alpha_i
                    // to beta + q alpha_i with p - q = <h_i, beta>.
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i - 1] -= 1;
                        if all.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (1..=n).map(|j| cartan.a(i, j) * beta[j - 1]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i - 1] += 1;
                        if all.insert(up.clone()) {
                            positive.push(up.clone());
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        Ok(Self {
            cartan: cartan.clone(),
            positive,
        })
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    fn d(&self, i: usize) -> i64 {
        self.cartan.symmetrizer()[i - 1]
    }

    /// `(alpha, beta)` for root-basis vectors, normalized by `(alpha_i, alpha_j) = d_i a_ij`.
    pub fn inner_roots(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.cartan.rank();
        let mut s = 0;
        for i in 1..=n {
            if a[i - 1] == 0 {
                continue;
            }
            for j in 1..=n {
                s += a[i - 1] * b[j - 1] * self.d(i) * self.cartan.a(i, j);
            }
        }
        s
    }

    /// `(mu, beta)` for `mu` in fundamental coordinates.
    pub fn inner_weight_root(&self, mu: &[i64], beta: &[i64]) -> i64 {
        (1..=self.cartan.rank()).map(|j| beta[j - 1] * self.d(j) * mu[j - 1]).sum()
    }

    /// `<h_i, lambda - sum k_j alpha_j>` for every `i`.
    pub fn fundamental_coords(&self, lambda: &[i64], k: &[i64]) -> Vec<i64> {
        let n = self.cartan.rank();
        (1..=n)
            .map(|i| lambda[i - 1] - (1..=n).map(|j| self.cartan.a(i, j) * k[j - 1]).sum::<i64>())
            .collect()
    }

    fn check(&self, lambda: &Weight) -> Result<()> {
        lambda.check_rank(&self.cartan)?;
        lambda.check_dominant()
    }

    /// `prod_{beta > 0} (lambda + rho, beta) / (rho, beta)`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        self.check(lambda)?;
        let shifted: Vec<i64> = lambda.coeffs().iter().map(|l| l + 1).collect();
        let rho = vec![1; self.cartan.rank()];
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for beta in &self.positive {
            num *= self.inner_weight_root(&shifted, beta);
            den *= self.inner_weight_root(&rho, beta);
        }
        let q = &num / &den;
        if !(&num % &den).is_zero() {
            return Err(Error::InvalidArgument("Weyl dimension is not an integer".into()));
        }
        q.to_u64().ok_or(Error::Overflow)
    }

    /// The full character of `V(lambda)` by Freudenthal's recursion, level
    /// by level in the height of `k`.
    pub fn character(&self, lambda: &Weight) -> Result<Character> {
        self.check(lambda)?;
        let n = self.cartan.rank();
        let lam = lambda.coeffs();
        let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
        let zero = vec![0; n];
        mult.insert(zero.clone(), 1);
        let mut layer = vec![zero];
        while !layer.is_empty() {
            let candidates: std::collections::BTreeSet<Vec<i64>> = layer
                .iter()
                .flat_map(|k| {
                    (0..n).map(move |i| {
                        let mut c = k.clone();
                        c[i] += 1;
                        c
                    })
                })
                .collect();
            let mut next = Vec::new();
            for k in candidates {
                // 2 (lambda + rho, kappa) - (kappa, kappa) with kappa = sum k_j alpha_j
                let lr: i64 = (1..=n).map(|j| k[j - 1] * self.d(j) * (lam[j - 1] + 1)).sum();
                let denom = 2 * lr - self.inner_roots(&k, &k);
                let mut rhs = 0i64;
                for beta in &self.positive {
                    let mut t = 1;
                    loop {
                        let above: Vec<i64> = k.iter().zip(beta).map(|(a, b)| a - t * b).collect();
                        if above.iter().any(|&v| v < 0) {
                            break;
                        }
                        if let Some(&m) = mult.get(&above) {
                            let mu_t: Vec<i64> = self.fundamental_coords(lam, &above);
                            rhs += m * self.inner_weight_root(&mu_t, beta);
                        }
                        t += 1;
                    }
                }
                rhs *= 2;
                if denom == 0 {
                    if rhs != 0 {
                        return Err(Error::InvalidArgument("Freudenthal recursion hit a zero denominator".into()));
                    }
                    continue;
                }
                if rhs % denom != 0 {
                    return Err(Error::InvalidArgument("Freudenthal recursion is not integral".into()));
                }
                let m = rhs / denom;
                if m > 0 {
                    mult.insert(k.clone(), m);
                    next.push(k);
                }
            }
            layer = next;
        }
        Ok(mult.into_iter().map(|(k, m)| (k, m as u64)).collect())
    }

    /// Multiplicity of `lambda - sum m_j alpha_j` in `V(lambda)`.
    pub fn freudenthal(&self, lambda: &Weight, m: &[i64]) -> Result<u64> {
        if m.len() != self.cartan.rank() || m.iter().any(|&v| v < 0) {
            return Err(Error::InvalidArgument("root content must be nonnegative of full rank".into()));
        }
        Ok(self.character(lambda)?.get(m).copied().unwrap_or(0))
    }

    /// `V(lambda) (x) V(mu)` as multiplicities of highest weights, by
    /// multiplying characters and repeatedly removing the character of a
    /// highest remaining weight.
    pub fn tensor_decomposition(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        let cl = self.character(lambda)?;
        let cm = self.character(mu)?;
        let top: Vec<i64> = lambda.coeffs().iter().zip(mu.coeffs()).map(|(a, b)| a + b).collect();
        let mut product: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (k1, m1) in &cl {
            for (k2, m2) in &cm {
                let k: Vec<i64> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                *product.entry(k).or_insert(0) += (m1 * m2) as i64;
            }
        }
        let mut out = BTreeMap::new();
        let mut cache: HashMap<Vec<i64>, Character> = HashMap::new();
        loop {
            let next = product
                .iter()
                .filter(|(_, &m)| m != 0)
                .min_by_key(|(k, _)| (k.iter().sum::<i64>(), (*k).clone()))
                .map(|(k, &m)| (k.clone(), m));
            let Some((k, m)) = next else { break };
            if m < 0 {
                return Err(Error::InvalidArgument("negative multiplicity during extraction".into()));
            }
            let nu = self.fundamental_coords(&top, &k);
            let nu_w = Weight::new(nu.clone());
            if !nu_w.is_dominant() {
                return Err(Error::InvalidArgument(format!("extracted weight {nu:?} is not dominant")));
            }
            if !cache.contains_key(&nu) {
                cache.insert(nu.clone(), self.character(&nu_w)?);
            }
            for (k2, m2) in &cache[&nu] {
                let kk: Vec<i64> = k.iter().zip(k2).map(|(a, b)| a + b).collect();
                *product.entry(kk).or_insert(0) -= m * (*m2 as i64);
            }
            out.insert(nu_w, m as u64);
        }
        Ok(out)
    }

    /// Multiplicity of `V(nu)` in `V(lambda) (x) V(mu)`.
    pub fn char_product_lr(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        nu.check_rank(&self.cartan)?;
        nu.check_dominant()?;
        Ok(self.tensor_decomposition(lambda, mu)?.get(nu).copied().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    fn rs(f: Family) -> RootSystem {
        RootSystem::new(&CartanData::build(f).unwrap()).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn root_counts() {
        assert_eq!(rs(Family::Rank2 { c1: 0, c2: 0 }).positive_roots().len(), 2);
        assert_eq!(rs(Family::Rank2 { c1: 1, c2: 1 }).positive_roots().len(), 3);
        assert_eq!(rs(Family::Rank2 { c1: 1, c2: 2 }).positive_roots().len(), 4);
        assert_eq!(rs(Family::Rank2 { c1: 2, c2: 1 }).positive_roots().len(), 4);
        assert_eq!(rs(Family::Rank2 { c1: 1, c2: 3 }).positive_roots().len(), 6);
        for n in 1..=5 {
            assert_eq!(rs(Family::TypeA(n)).positive_roots().len(), n * (n + 1) / 2);
        }
        for f in [Family::Rank2 { c1: 2, c2: 2 }, Family::Rank2 { c1: 1, c2: 4 }, Family::AffineA(3)] {
            assert_eq!(RootSystem::new(&CartanData::build(f).unwrap()), Err(Error::NotFiniteType));
        }
    }

    #[test]
    fn dimensions() {
        let a2 = rs(Family::TypeA(2));
        assert_eq!(a2.weyl_dim(&w(&[1, 0])).unwrap(), 3);
        assert_eq!(a2.weyl_dim(&w(&[1, 1])).unwrap(), 8);
        assert_eq!(a2.weyl_dim(&w(&[0, 0])).unwrap(), 1);
        let g2 = rs(Family::Rank2 { c1: 1, c2: 3 });
        // <h_2, alpha_1> = -3 makes alpha_1 long, so V(Lambda_2) is the 7-dimensional one.
        assert_eq!(g2.weyl_dim(&w(&[0, 1])).unwrap(), 7);
        assert_eq!(g2.weyl_dim(&w(&[1, 0])).unwrap(), 14);
        let b2 = rs(Family::Rank2 { c1: 1, c2: 2 });
        let mut dims: Vec<u64> = [[1, 0], [0, 1]].iter().map(|l| b2.weyl_dim(&w(l)).unwrap()).collect();
        dims.sort();
        assert_eq!(dims, vec![4, 5]);
        assert_eq!(rs(Family::TypeA(3)).weyl_dim(&w(&[0, 1, 0])).unwrap(), 6);
    }

    #[test]
    fn multiplicities() {
        let a2 = rs(Family::TypeA(2));
        assert_eq!(a2.freudenthal(&w(&[1, 1]), &[1, 1]).unwrap(), 2);
        assert_eq!(a2.freudenthal(&w(&[1, 1]), &[0, 0]).unwrap(), 1);
        assert_eq!(a2.freudenthal(&w(&[1, 0]), &[1, 0]).unwrap(), 1);
        assert_eq!(a2.freudenthal(&w(&[1, 0]), &[0, 1]).unwrap(), 0);
        for f in [Family::Rank2 { c1: 1, c2: 3 }, Family::Rank2 { c1: 2, c2: 1 }, Family::TypeA(3)] {
            let r = rs(f);
            for lam in Weight::dominant_up_to(r.cartan().rank(), 3) {
                let total: u64 = r.character(&lam).unwrap().values().sum();
                assert_eq!(total, r.weyl_dim(&lam).unwrap(), "{lam}");
            }
        }
    }

    #[test]
    fn tensor_products() {
        let a2 = rs(Family::TypeA(2));
        let d = a2.tensor_decomposition(&w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(d, [(w(&[1, 1]), 1), (w(&[0, 0]), 1)].into_iter().collect());
        assert_eq!(a2.char_product_lr(&w(&[1, 0]), &w(&[1, 0]), &w(&[2, 0])).unwrap(), 1);
        assert_eq!(a2.char_product_lr(&w(&[1, 0]), &w(&[1, 0]), &w(&[0, 1])).unwrap(), 1);
        assert_eq!(a2.char_product_lr(&w(&[2, 1]), &w(&[0, 0]), &w(&[2, 1])).unwrap(), 1);
        for f in [Family::Rank2 { c1: 1, c2: 2 }, Family::Rank2 { c1: 1, c2: 3 }] {
            let r = rs(f);
            for lam in Weight::dominant_up_to(2, 2) {
                for mu in Weight::dominant_up_to(2, 2) {
                    let total: u64 = r
                        .tensor_decomposition(&lam, &mu)
                        .unwrap()
                        .iter()
                        .map(|(nu, c)| c * r.weyl_dim(nu).unwrap())
                        .sum();
                    assert_eq!(total, r.weyl_dim(&lam).unwrap() * r.weyl_dim(&mu).unwrap());
                }
            }
        }
    }
}
