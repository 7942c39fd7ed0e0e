//! Brute-force face lattice of a Minkowski sum of standard simplices.
//!
//! A candidate face is a tuple `(G_1, .., G_k)` with `G_i ⊆ F_i`. It is a face
//! iff some linear functional has `G_i` as its argmax on every `F_i`, which
//! reduces to extending a strict weak order on the ground set. Everything
//! here uses integer arithmetic only and none of the closed formulas, so the
//! results can serve as an oracle for the rest of the crate.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::constructions::SupportSet;
use crate::error::{Error, Result};
use crate::polyring::{Coefficient, Polynomial};

/// Default cap on candidate tuples and on enumerated chains.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "FLAGFORGE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET }
    }
}

impl OracleConfig {
    /// Reads the budget from `FLAGFORGE_BUDGET`, falling back to the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|budget| Self { budget })
                .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={v} is not a count"))),
            Err(_) => Ok(Self::default()),
        }
    }
}

/// An ordered family `(F_1, .., F_k)` of nonempty subsets of `[r]`, stored as
/// bitmasks over `0..r`. The ground set is always the union of the sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    r: usize,
    sets: Vec<u64>,
    labels: Vec<usize>,
}

impl SetFamily {
    /// Builds a family from 1-based element lists. Elements outside the
    /// union are dropped and the rest relabelled `1..=r` in increasing order.
    pub fn new<S: AsRef<[usize]>>(sets: &[S]) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidArgument("family needs at least one set".into()));
        }
        let mut union = BTreeSet::new();
        for (i, s) in sets.iter().enumerate() {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(Error::InvalidArgument(format!("set F{} is empty", i + 1)));
            }
            if let Some(&0) = s.iter().min() {
                return Err(Error::InvalidArgument("ground elements are 1-based".into()));
            }
            union.extend(s.iter().copied());
        }
        if union.len() > 64 {
            return Err(Error::InvalidArgument(format!(
                "ground set of size {} exceeds 64",
                union.len()
            )));
        }
        let labels: Vec<usize> = union.into_iter().collect();
        let index: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let masks = sets
            .iter()
            .map(|s| s.as_ref().iter().fold(0u64, |m, e| m | 1 << index[e]))
            .collect();
        Ok(Self {
            r: labels.len(),
            sets: masks,
            labels,
        })
    }

    /// Builds a family over `0..r` from bitmasks, restricting to the union.
    pub fn from_masks(sets: &[u64]) -> Result<Self> {
        let lists: Vec<Vec<usize>> = sets
            .iter()
            .map(|&m| (0..64).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect())
            .collect();
        Self::new(&lists)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    /// Original 1-based label of each ground element after relabelling.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// The sets as sorted 1-based element lists over the relabelled ground set.
    pub fn set_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&m| bits(m).map(|b| b + 1).collect()).collect()
    }

    /// Indices of the sets containing ground element `j` (0-based), as a mask.
    pub fn membership(&self, j: usize) -> u64 {
        self.sets
            .iter()
            .enumerate()
            .filter(|(_, &m)| m >> j & 1 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// True if two sets are equal.
    pub fn has_duplicates(&self) -> bool {
        let distinct: BTreeSet<u64> = self.sets.iter().copied().collect();
        distinct.len() != self.sets.len()
    }

    /// Number of connected components of the graph on the sets where two sets
    /// are adjacent when they intersect.
    pub fn intersection_components(&self) -> usize {
        let k = self.k();
        let mut uf = UnionFind::new(k);
        for a in 0..k {
            for b in a + 1..k {
                if self.sets[a] & self.sets[b] != 0 {
                    uf.union(a, b);
                }
            }
        }
        (0..k).filter(|&a| uf.find(a) == a).count()
    }

    fn candidate_count(&self) -> Option<u128> {
        self.sets.iter().try_fold(1u128, |acc, m| {
            let n = m.count_ones();
            let choices = if n >= 64 { u64::MAX as u128 } else { (1u128 << n) - 1 };
            acc.checked_mul(choices)
        })
    }
}

impl std::fmt::Display for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .set_lists()
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| m >> b & 1 == 1)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Checks whether `(G_1, .., G_k)` (bitmasks) is the argmax pattern of some
/// linear functional on the family.
pub fn is_face(family: &SetFamily, candidate: &[u64]) -> Result<bool> {
    if candidate.len() != family.k() {
        return Err(Error::InvalidArgument(format!(
            "candidate has {} parts, family has {} sets",
            candidate.len(),
            family.k()
        )));
    }
    for (i, (&g, &f)) in candidate.iter().zip(family.sets()).enumerate() {
        if g == 0 || g & !f != 0 {
            return Err(Error::InvalidArgument(format!(
                "part G{} must be a nonempty subset of F{}",
                i + 1,
                i + 1
            )));
        }
    }
    Ok(face_test(family, candidate))
}

fn face_test(family: &SetFamily, candidate: &[u64]) -> bool {
    let r = family.r();
    let mut uf = UnionFind::new(r);
    for &g in candidate {
        let first = g.trailing_zeros() as usize;
        for j in bits(g) {
            uf.union(first, j);
        }
    }
    let class: Vec<usize> = (0..r).map(|j| uf.find(j)).collect();
    // below[c] = classes that must lie strictly below class c
    let mut below = vec![0u64; r];
    for (&g, &f) in candidate.iter().zip(family.sets()) {
        let mut lower = 0u64;
        for j in bits(f & !g) {
            lower |= 1 << class[j];
        }
        for j in bits(g) {
            if lower >> class[j] & 1 == 1 {
                return false;
            }
            below[class[j]] |= lower;
        }
    }
    // Kahn's algorithm on the class digraph.
    let nodes: Vec<usize> = (0..r).filter(|&j| class[j] == j).collect();
    let mut indegree = vec![0usize; r];
    for &c in &nodes {
        for d in bits(below[c]) {
            indegree[d] += 1;
        }
    }
    let mut stack: Vec<usize> = nodes.iter().copied().filter(|&c| indegree[c] == 0).collect();
    let mut seen = 0;
    while let Some(c) = stack.pop() {
        seen += 1;
        for d in bits(below[c]) {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                stack.push(d);
            }
        }
    }
    seen == nodes.len()
}

/// An integer point of the ambient space `Z^r`.
pub type Point = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinkFace {
    /// `(G_1, .., G_k)` as bitmasks over the ground set.
    pub parts: Vec<u64>,
    /// Indices into [`FaceLattice::vertices`], sorted.
    pub vertex_ids: Vec<usize>,
    pub dim: usize,
    /// Union of the parts.
    pub support: u64,
}

impl MinkFace {
    pub fn parts_as_lists(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|&m| bits(m).map(|b| b + 1).collect()).collect()
    }
}

/// Containment of faces of the same lattice: `a ⊆ b` iff every vertex of `a`
/// is a vertex of `b`.
pub fn face_leq(a: &MinkFace, b: &MinkFace) -> bool {
    let mut it = b.vertex_ids.iter();
    a.vertex_ids.iter().all(|v| it.any(|w| w == v))
}

#[derive(Debug, Clone)]
pub struct FaceLattice {
    family: SetFamily,
    vertices: Vec<Point>,
    faces: Vec<MinkFace>,
    merged: usize,
}

impl FaceLattice {
    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// Vertex points in lexicographic order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Faces ordered by dimension, then by vertex set.
    pub fn faces(&self) -> &[MinkFace] {
        &self.faces
    }

    pub fn face_points(&self, face: &MinkFace) -> Vec<&Point> {
        face.vertex_ids.iter().map(|&v| &self.vertices[v]).collect()
    }

    pub fn dim(&self) -> usize {
        self.faces.last().map_or(0, |f| f.dim)
    }

    /// Number of candidate tuples that collapsed onto an already seen face.
    pub fn merged_candidates(&self) -> usize {
        self.merged
    }

    /// `(f_0, .., f_d)`, the polytope itself included.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.dim() + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// For every face, the faces containing it (itself included).
    pub fn up_sets(&self) -> Vec<Vec<usize>> {
        let n = self.faces.len();
        (0..n)
            .into_par_iter()
            .map(|a| (a..n).filter(|&b| face_leq(&self.faces[a], &self.faces[b])).collect())
            .collect()
    }
}

/// Enumerates all nonempty faces with the default budget.
pub fn enumerate_faces(family: &SetFamily) -> Result<FaceLattice> {
    enumerate_faces_with(family, &OracleConfig::default())
}

pub fn enumerate_faces_with(family: &SetFamily, config: &OracleConfig) -> Result<FaceLattice> {
    let needed = family.candidate_count().unwrap_or(u128::MAX);
    if needed > config.budget {
        return Err(Error::BudgetExceeded {
            what: "face candidates",
            needed,
            limit: config.budget,
        });
    }
    let vertices = enumerate_vertices(family);
    let vertex_index: HashMap<&Point, usize> = vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Per set, the list of its nonempty subsets (mixed-radix digits).
    let subsets: Vec<Vec<u64>> = family.sets().iter().map(|&f| nonempty_submasks(f)).collect();
    let raw: Vec<(Vec<u64>, Vec<usize>)> = (0..needed as u64)
        .into_par_iter()
        .filter_map(|mut code| {
            let parts: Vec<u64> = subsets
                .iter()
                .map(|s| {
                    let p = s[(code % s.len() as u64) as usize];
                    code /= s.len() as u64;
                    p
                })
                .collect();
            if !face_test(family, &parts) {
                return None;
            }
            let ids = face_vertex_ids(family.r(), &parts, &vertex_index);
            Some((parts, ids))
        })
        .collect();

    let mut by_points: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    let mut merged = 0;
    for (parts, ids) in raw {
        match by_points.get(&ids) {
            Some(kept) => {
                merged += 1;
                log::warn!(
                    "family {family}: candidates {:?} and {:?} give the same face",
                    kept,
                    parts
                );
            }
            None => {
                by_points.insert(ids, parts);
            }
        }
    }

    let mut faces: Vec<MinkFace> = by_points
        .into_par_iter()
        .map(|(vertex_ids, parts)| {
            let pts: Vec<&Point> = vertex_ids.iter().map(|&v| &vertices[v]).collect();
            MinkFace {
                dim: affine_rank(&pts),
                support: parts.iter().fold(0, |a, &g| a | g),
                parts,
                vertex_ids,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertex_ids).cmp(&(b.dim, &b.vertex_ids)));
    Ok(FaceLattice {
        family: family.clone(),
        vertices,
        faces,
        merged,
    })
}

fn nonempty_submasks(f: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut s = f;
    while s != 0 {
        out.push(s);
        s = (s - 1) & f;
    }
    out.reverse();
    out
}

fn enumerate_vertices(family: &SetFamily) -> Vec<Point> {
    let singletons: Vec<Vec<u64>> = family
        .sets()
        .iter()
        .map(|&f| bits(f).map(|b| 1u64 << b).collect())
        .collect();
    let mut found = BTreeSet::new();
    let mut choice = vec![0usize; singletons.len()];
    loop {
        let parts: Vec<u64> = choice.iter().zip(&singletons).map(|(&c, s)| s[c]).collect();
        if face_test(family, &parts) {
            let mut p = vec![0u32; family.r()];
            for g in &parts {
                p[g.trailing_zeros() as usize] += 1;
            }
            found.insert(p);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return found.into_iter().collect();
            }
            choice[i] += 1;
            if choice[i] < singletons[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Vertices of the sum that lie in `{ sum_i e_{j_i} : j_i ∈ G_i }`.
fn face_vertex_ids(r: usize, parts: &[u64], index: &HashMap<&Point, usize>) -> Vec<usize> {
    let mut sums: BTreeSet<Point> = BTreeSet::from([vec![0u32; r]]);
    for &g in parts {
        sums = sums
            .iter()
            .flat_map(|p| {
                bits(g).map(move |j| {
                    let mut q = p.clone();
                    q[j] += 1;
                    q
                })
            })
            .collect();
    }
    let mut ids: Vec<usize> = sums.iter().filter_map(|p| index.get(p).copied()).collect();
    ids.sort_unstable();
    ids
}

/// Affine rank of a nonempty point set, by fraction-free elimination.
pub fn affine_rank(points: &[&Point]) -> usize {
    let Some((base, rest)) = points.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|p| {
            p.iter()
                .zip(base.iter())
                .map(|(&a, &b)| BigInt::from(a as i64 - b as i64))
                .collect()
        })
        .collect();
    bareiss_rank(rows)
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..m.len() {
            for j in col + 1..ncols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// A nondecreasing chain of faces, by index into [`FaceLattice::faces`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceChain {
    pub faces: Vec<usize>,
    pub dims: Vec<u32>,
    pub deltadims: Vec<u32>,
}

impl FaceChain {
    pub fn supports(&self, lattice: &FaceLattice) -> Vec<SupportSet> {
        self.faces
            .iter()
            .map(|&f| SupportSet(lattice.faces[f].support))
            .collect()
    }
}

fn delta(dims: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(dims.len());
    let mut prev = 0;
    for &d in dims {
        out.push(d - prev);
        prev = d;
    }
    out
}

/// Number of `ell`-chains, without listing them.
pub fn count_chains(lattice: &FaceLattice, ell: usize) -> Result<u128> {
    count_chains_in(&lattice.up_sets(), ell)
}

fn count_chains_in(up: &[Vec<usize>], ell: usize) -> Result<u128> {
    if ell == 0 {
        return Err(Error::InvalidArgument("chain length must be positive".into()));
    }
    // ends[a] = number of chains of the current length starting at a
    let mut ends = vec![1u128; up.len()];
    for _ in 1..ell {
        ends = up
            .iter()
            .map(|ups| {
                ups.iter()
                    .try_fold(0u128, |s, &b| s.checked_add(ends[b]))
                    .ok_or(Error::Overflow("chain count"))
            })
            .collect::<Result<_>>()?;
    }
    ends.iter()
        .try_fold(0u128, |s, &c| s.checked_add(c))
        .ok_or(Error::Overflow("chain count"))
}

pub fn enumerate_chains(lattice: &FaceLattice, ell: usize) -> Result<Vec<FaceChain>> {
    enumerate_chains_with(lattice, ell, &OracleConfig::default())
}

pub fn enumerate_chains_with(lattice: &FaceLattice, ell: usize, config: &OracleConfig) -> Result<Vec<FaceChain>> {
    let up = lattice.up_sets();
    let needed = count_chains_in(&up, ell)?;
    if needed > config.budget {
        return Err(Error::BudgetExceeded {
            what: "face chains",
            needed,
            limit: config.budget,
        });
    }
    let chains = (0..lattice.faces.len())
        .into_par_iter()
        .flat_map_iter(|start| {
            let mut out = Vec::new();
            let mut path = vec![start];
            extend_chains(lattice, &up, ell, &mut path, &mut out);
            out
        })
        .collect();
    Ok(chains)
}

fn extend_chains(
    lattice: &FaceLattice,
    up: &[Vec<usize>],
    ell: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<FaceChain>,
) {
    if path.len() == ell {
        let dims: Vec<u32> = path.iter().map(|&f| lattice.faces[f].dim as u32).collect();
        out.push(FaceChain {
            faces: path.clone(),
            deltadims: delta(&dims),
            dims,
        });
        return;
    }
    let last = *path.last().expect("chain is nonempty");
    for &next in &up[last] {
        path.push(next);
        extend_chains(lattice, up, ell, path, out);
        path.pop();
    }
}

/// `ell`-flag polynomial by direct chain counting.
pub fn flag_poly_by_counting<C: Coefficient>(family: &SetFamily, ell: usize) -> Result<Polynomial<C>> {
    flag_poly_by_counting_with(family, ell, &OracleConfig::default())
}

pub fn flag_poly_by_counting_with<C: Coefficient>(
    family: &SetFamily,
    ell: usize,
    config: &OracleConfig,
) -> Result<Polynomial<C>> {
    let lattice = enumerate_faces_with(family, config)?;
    let chains = enumerate_chains_with(&lattice, ell, config)?;
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for ch in chains {
        *counts.entry(ch.deltadims).or_default() += 1;
    }
    Polynomial::from_terms(
        ell,
        counts
            .into_iter()
            .map(|(e, c)| (e, C::from_u64(c).expect("count fits coefficient type"))),
    )
}
