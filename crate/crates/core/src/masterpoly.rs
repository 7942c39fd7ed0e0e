//! The master family `H(k)`, the classification of a family by membership
//! pattern (its r-vector) and memoized chain data of the master polytope.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::constructions::{ChainDatum, SupportSet};
use crate::error::{Error, Result};
use crate::facelattice::{enumerate_chains_with, enumerate_faces_with, FaceLattice, OracleConfig, SetFamily};

/// Default upper bound on `k` for the master family.
pub const DEFAULT_K_CAP: u32 = 4;

/// Largest `k` accepted by [`r_vector`].
const R_VECTOR_K_MAX: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MasterConfig {
    pub k_cap: u32,
    pub oracle: OracleConfig,
}

impl Default for MasterConfig {
    fn default() -> Self {
        Self {
            k_cap: DEFAULT_K_CAP,
            oracle: OracleConfig::default(),
        }
    }
}

impl MasterConfig {
    pub fn from_env() -> Result<Self> {
        Ok(Self {
            oracle: OracleConfig::from_env()?,
            ..Self::default()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterFamily {
    k: u32,
    family: SetFamily,
}

impl MasterFamily {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// `N(i)` for `i = 1..=2^k - 1`, as a mask with bit `j - 1` for `j ∈ [k]`.
    pub fn pattern(&self, i: usize) -> u64 {
        pattern(self.k as usize, i)
    }
}

/// `N(i)`: the k-bit binary form of `2^k - i`, element 1 being the most
/// significant bit.
fn pattern(k: usize, i: usize) -> u64 {
    let value = (1u64 << k) - i as u64;
    (0..k)
        .filter(|j| value >> (k - 1 - j) & 1 == 1)
        .fold(0, |m, j| m | 1 << j)
}

/// Inverse of [`pattern`].
fn pattern_index(k: usize, membership: u64) -> usize {
    let value: u64 = (0..k)
        .filter(|j| membership >> j & 1 == 1)
        .map(|j| 1u64 << (k - 1 - j))
        .sum();
    ((1u64 << k) - value) as usize
}

pub fn master_family(k: u32) -> Result<MasterFamily> {
    master_family_with(k, &MasterConfig::default())
}

pub fn master_family_with(k: u32, config: &MasterConfig) -> Result<MasterFamily> {
    if k == 0 || k > config.k_cap {
        return Err(Error::InvalidArgument(format!(
            "master family needs 1 <= k <= {}, got {k}",
            config.k_cap
        )));
    }
    let ku = k as usize;
    let n = (1usize << ku) - 1;
    let sets: Vec<Vec<usize>> = (0..ku)
        .map(|j| (1..=n).filter(|&i| pattern(ku, i) >> j & 1 == 1).collect())
        .collect();
    Ok(MasterFamily {
        k,
        family: SetFamily::new(&sets)?,
    })
}

/// Counts `(r_1, .., r_{2^k - 1})` of ground elements per membership pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RVector {
    k: usize,
    counts: Vec<u64>,
}

impl RVector {
    pub fn new(k: usize, counts: Vec<u64>) -> Result<Self> {
        if k == 0 || k > R_VECTOR_K_MAX || counts.len() != (1 << k) - 1 {
            return Err(Error::InvalidArgument(format!(
                "an r-vector for k = {k} needs 2^k - 1 entries, got {}",
                counts.len()
            )));
        }
        Ok(Self { k, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `r_i`, 1-based.
    pub fn get(&self, i: usize) -> u64 {
        self.counts[i - 1]
    }

    pub fn r(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// A family realizing these counts: pattern `i` gets `r_i` fresh elements.
    pub fn realize(&self) -> Result<SetFamily> {
        let mut sets = vec![Vec::new(); self.k];
        let mut next = 1;
        for (idx, &c) in self.counts.iter().enumerate() {
            let n = pattern(self.k, idx + 1);
            for _ in 0..c {
                for (j, set) in sets.iter_mut().enumerate() {
                    if n >> j & 1 == 1 {
                        set.push(next);
                    }
                }
                next += 1;
            }
        }
        SetFamily::new(&sets)
    }
}

pub fn r_vector(family: &SetFamily) -> Result<RVector> {
    let k = family.k();
    if k > R_VECTOR_K_MAX {
        return Err(Error::InvalidArgument(format!("r-vector for k = {k} is too large")));
    }
    let mut counts = vec![0u64; (1 << k) - 1];
    for j in 0..family.r() {
        counts[pattern_index(k, family.membership(j)) - 1] += 1;
    }
    RVector::new(k, counts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterChainData {
    pub k: u32,
    pub ell: usize,
    /// Supports are subsets of the pattern indices, bit `α - 1` for `α`.
    pub chains: Vec<ChainDatum>,
}

type Slot<T> = Arc<Mutex<Option<Arc<T>>>>;

/// Per-key memo: the outer lock is held only to find the slot, the slot lock
/// serializes the single computation for that key.
struct Memo<K, T>(OnceLock<Mutex<HashMap<K, Slot<T>>>>);

impl<K: std::hash::Hash + Eq + Copy, T> Memo<K, T> {
    const fn new() -> Self {
        Self(OnceLock::new())
    }

    fn get_or_try(&self, key: K, compute: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        let slot = {
            let mut map = self.0.get_or_init(Default::default).lock().expect("memo poisoned");
            map.entry(key).or_default().clone()
        };
        let mut guard = slot.lock().expect("memo slot poisoned");
        if let Some(v) = guard.as_ref() {
            return Ok(v.clone());
        }
        let v = Arc::new(compute()?);
        *guard = Some(v.clone());
        Ok(v)
    }
}

static LATTICES: Memo<u32, FaceLattice> = Memo::new();
static CHAINS: Memo<(u32, usize), MasterChainData> = Memo::new();

/// Face lattice of `P(k)`, memoized per `k`.
pub fn master_lattice(k: u32, config: &MasterConfig) -> Result<Arc<FaceLattice>> {
    let h = master_family_with(k, config)?;
    LATTICES.get_or_try(k, || {
        let lattice = enumerate_faces_with(h.family(), &config.oracle)?;
        log::info!("P({k}): f-vector {:?}", lattice.f_vector());
        Ok(lattice)
    })
}

pub fn master_chains(k: u32, ell: usize) -> Result<Arc<MasterChainData>> {
    master_chains_with(k, ell, &MasterConfig::default())
}

pub fn master_chains_with(k: u32, ell: usize, config: &MasterConfig) -> Result<Arc<MasterChainData>> {
    if ell == 0 {
        return Err(Error::InvalidArgument("chain length must be positive".into()));
    }
    CHAINS.get_or_try((k, ell), || {
        let lattice = master_lattice(k, config)?;
        let chains: Vec<ChainDatum> = enumerate_chains_with(&lattice, ell, &config.oracle)?
            .into_iter()
            .map(|ch| ChainDatum {
                supports: ch.supports(&lattice),
                deltadims: ch.deltadims,
            })
            .collect();
        log::info!("P({k}): {} chains of length {ell}", chains.len());
        Ok(MasterChainData { k, ell, chains })
    })
}

/// Drops every chain whose supports touch a pattern with `r_α = 0`.
pub fn realized_chains<'a>(data: &'a MasterChainData, r: &RVector) -> impl Iterator<Item = &'a ChainDatum> {
    let missing = SupportSet::from_indices((0..r.counts().len()).filter(|&a| r.counts()[a] == 0));
    data.chains
        .iter()
        .filter(move |ch| ch.supports.last().is_some_and(|s| s.0 & missing.0 == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{flag_product, FlagFamily};
    use crate::facelattice::flag_poly_by_counting;
    use num_bigint::BigInt;

    fn lists(h: &MasterFamily) -> Vec<Vec<usize>> {
        h.family().set_lists()
    }

    #[test]
    fn master_family_examples() {
        assert_eq!(lists(&master_family(1).unwrap()), vec![vec![1]]);
        assert_eq!(lists(&master_family(2).unwrap()), vec![vec![1, 2], vec![1, 3]]);
        assert_eq!(
            lists(&master_family(3).unwrap()),
            vec![vec![1, 2, 3, 4], vec![1, 2, 5, 6], vec![1, 3, 5, 7]]
        );
        assert!(master_family(0).is_err());
        assert!(master_family(5).is_err());
        let wide = MasterConfig {
            k_cap: 5,
            ..Default::default()
        };
        assert!(master_family_with(5, &wide).is_ok());
    }

    #[test]
    fn master_sets_have_half_the_elements() {
        for k in 1..=4 {
            let h = master_family(k).unwrap();
            for &s in h.family().sets() {
                assert_eq!(s.count_ones(), 1 << (k - 1));
            }
        }
    }

    #[test]
    fn patterns_follow_descending_binary() {
        let h = master_family(3).unwrap();
        // N(1) = {1,2,3}, N(2) = {1,2}, N(4) = {1}, N(7) = {3}
        assert_eq!(h.pattern(1), 0b111);
        assert_eq!(h.pattern(2), 0b011);
        assert_eq!(h.pattern(4), 0b001);
        assert_eq!(h.pattern(7), 0b100);
        for i in 1..8 {
            assert_eq!(pattern_index(3, pattern(3, i)), i);
        }
    }

    #[test]
    fn r_vector_examples() {
        let f = SetFamily::new(&[vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        assert_eq!(r_vector(&f).unwrap().counts(), &[2, 1, 1]);
        let g = SetFamily::new(&[vec![1, 2], vec![1, 3]]).unwrap();
        assert_eq!(r_vector(&g).unwrap().counts(), &[1, 1, 1]);
        for k in 1..=4 {
            let h = master_family(k).unwrap();
            let rv = r_vector(h.family()).unwrap();
            assert!(rv.counts().iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn realize_inverts_r_vector() {
        let rv = RVector::new(3, vec![2, 0, 1, 3, 0, 0, 1]).unwrap();
        let fam = rv.realize().unwrap();
        assert_eq!(r_vector(&fam).unwrap(), rv);
        assert_eq!(rv.r(), 7);
        assert!(RVector::new(2, vec![1, 1]).is_err());
    }

    #[test]
    fn master_chain_examples() {
        assert_eq!(master_chains(2, 2).unwrap().chains.len(), 25);
        let one = master_chains(2, 1).unwrap();
        assert_eq!(one.chains.len(), 9);
        let vertex_supports: Vec<u64> = one
            .chains
            .iter()
            .filter(|c| c.deltadims == [0])
            .map(|c| c.supports[0].0)
            .collect();
        // A = (2,0,0) has support {1}; B = (1,1,0), C, D have two elements.
        assert_eq!(vertex_supports.iter().filter(|&&s| s == 0b001).count(), 1);
        assert_eq!(vertex_supports.iter().filter(|&&s| s.count_ones() == 2).count(), 3);
    }

    #[test]
    fn p3_has_dimension_six_and_41_vertices() {
        let lat = master_lattice(3, &MasterConfig::default()).unwrap();
        assert_eq!(lat.dim(), 6);
        assert_eq!(lat.f_vector()[0], 41);
        let one = master_chains(3, 1).unwrap();
        assert_eq!(one.chains.len(), lat.faces().len());
        assert_eq!(one.chains.iter().filter(|c| c.deltadims == [0]).count(), 41);
    }

    #[test]
    fn chain_counts_are_monotone() {
        for k in 1..=3 {
            let counts: Vec<usize> = (1..=3).map(|l| master_chains(k, l).unwrap().chains.len()).collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]), "k={k}: {counts:?}");
        }
    }

    #[test]
    fn p2_is_a_square() {
        let h = master_family(2).unwrap();
        for ell in 1..=3 {
            let seg = FlagFamily::<BigInt>::simplex(2, ell).unwrap().flag(ell).unwrap();
            let square = flag_product(&seg, &seg).unwrap();
            let counted = flag_poly_by_counting::<BigInt>(h.family(), ell).unwrap();
            assert_eq!(&counted, square.poly());
        }
    }

    #[test]
    fn memo_returns_shared_data() {
        let a = master_chains(2, 3).unwrap();
        let b = master_chains(2, 3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| master_chains(3, 2).unwrap()))
            .collect();
        let got: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(got.windows(2).all(|w| Arc::ptr_eq(&w[0], &w[1])));
    }

    #[test]
    fn realized_chains_drop_missing_patterns() {
        let data = master_chains(2, 1).unwrap();
        let rv = RVector::new(2, vec![2, 0, 0]).unwrap();
        let kept: Vec<_> = realized_chains(&data, &rv).collect();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].supports[0].0, 0b001);
    }
}
