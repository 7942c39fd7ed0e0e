//! Flag polynomials of derived polytopes: products, prisms, hypercubes,
//! pyramids, free joins and the general action of a polytope on a list of
//! polytopes. Also the strict-chain polynomial obtained by
//! inclusion-exclusion over repeated faces.
//!
//! Formulas that reference lower-order flag polynomials in shifted variable
//! windows take a [`FlagFamily`] (orders `1..=l`) or any other
//! [`FlagSource`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::{Coefficient, Polynomial};
use crate::simplexflag::{flag_simplex, VariableWindow};

/// An `l`-flag polynomial detached from the polytope it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractFlag<C: Coefficient = num_bigint::BigInt> {
    ell: usize,
    poly: Polynomial<C>,
}

impl<C: Coefficient> AbstractFlag<C> {
    pub fn new(poly: Polynomial<C>) -> Result<Self> {
        let ell = poly.nvars();
        if ell == 0 {
            return Err(Error::InvalidArgument("chain length must be positive".into()));
        }
        Ok(Self { ell, poly })
    }

    /// The one-point polytope.
    pub fn point(ell: usize) -> Self {
        Self {
            ell,
            poly: Polynomial::one(ell),
        }
    }

    pub fn empty(ell: usize) -> Self {
        Self {
            ell,
            poly: Polynomial::zero(ell),
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn poly(&self) -> &Polynomial<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial<C> {
        self.poly
    }

    /// True for the empty polytope, whose flag polynomial vanishes.
    pub fn is_empty_polytope(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Something that can produce its flag polynomial of order
/// `window.order()` in the variables `(x_start, .., x_total)`.
pub trait FlagSource<C: Coefficient>: Sync {
    fn windowed(&self, window: VariableWindow) -> Result<Polynomial<C>>;
}

/// The `(r-1)`-simplex, realized through the closed form. `r = 0` stands for
/// the empty polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplexSource(pub u32);

impl<C: Coefficient> FlagSource<C> for SimplexSource {
    fn windowed(&self, window: VariableWindow) -> Result<Polynomial<C>> {
        match self.0 {
            0 => Ok(Polynomial::zero(window.total())),
            r => flag_simplex(r, window),
        }
    }
}

/// Flag polynomials of one polytope for every order `1..=max_order`.
/// `orders[j - 1]` is the `j`-flag polynomial in `j` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagFamily<C: Coefficient = num_bigint::BigInt> {
    orders: Vec<Polynomial<C>>,
}

impl<C: Coefficient> FlagFamily<C> {
    pub fn new(orders: Vec<Polynomial<C>>) -> Result<Self> {
        for (i, p) in orders.iter().enumerate() {
            if p.nvars() != i + 1 {
                return Err(Error::VariableCount {
                    expected: i + 1,
                    found: p.nvars(),
                });
            }
        }
        Ok(Self { orders })
    }

    pub fn from_fn(max_order: usize, mut f: impl FnMut(usize) -> Result<Polynomial<C>>) -> Result<Self> {
        Self::new((1..=max_order).map(&mut f).collect::<Result<_>>()?)
    }

    pub fn point(max_order: usize) -> Self {
        Self {
            orders: (1..=max_order).map(Polynomial::one).collect(),
        }
    }

    pub fn empty(max_order: usize) -> Self {
        Self {
            orders: (1..=max_order).map(Polynomial::zero).collect(),
        }
    }

    pub fn simplex(r: u32, max_order: usize) -> Result<Self> {
        Self::from_fn(max_order, |j| flag_simplex(r, VariableWindow::full(j)?))
    }

    pub fn hypercube(d: u32, max_order: usize) -> Self {
        Self {
            orders: (1..=max_order).map(|j| flag_hypercube::<C>(d, j).poly).collect(),
        }
    }

    pub fn max_order(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self, j: usize) -> Result<&Polynomial<C>> {
        if j == 0 {
            return Err(Error::InvalidArgument("flag order must be positive".into()));
        }
        self.orders.get(j - 1).ok_or(Error::MissingFlagOrder {
            needed: j,
            available: self.orders.len(),
        })
    }

    pub fn flag(&self, ell: usize) -> Result<AbstractFlag<C>> {
        Ok(AbstractFlag {
            ell,
            poly: self.order(ell)?.clone(),
        })
    }

    fn require(&self, ell: usize) -> Result<()> {
        self.order(ell).map(|_| ())
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        let n = self.max_order().min(other.max_order());
        Self::from_fn(n, |j| Ok(self.order(j)? * other.order(j)?))
    }

    pub fn prism(&self) -> Self {
        Self {
            orders: self.orders.iter().map(|p| p * &prism_factor(p.nvars())).collect(),
        }
    }

    pub fn pyramid(&self) -> Result<Self> {
        Self::from_fn(self.max_order(), |j| Ok(flag_pyramid(self, j)?.poly))
    }

    pub fn free_join(&self, other: &Self) -> Result<Self> {
        let n = self.max_order().min(other.max_order());
        Self::from_fn(n, |j| Ok(flag_free_join(self, other, j)?.poly))
    }
}

impl<C: Coefficient> FlagSource<C> for FlagFamily<C> {
    fn windowed(&self, window: VariableWindow) -> Result<Polynomial<C>> {
        let positions: Vec<usize> = window.positions().collect();
        self.order(window.order())?.embed(window.total(), &positions)
    }
}

/// `2 + x_1 + 2(x_2 + .. + x_l)`, the flag polynomial of a segment.
fn prism_factor<C: Coefficient>(ell: usize) -> Polynomial<C> {
    let two = C::one() + C::one();
    let mut f = Polynomial::constant(ell, two.clone());
    for i in 0..ell {
        let mut e = vec![0; ell];
        e[i] = 1;
        f.add_term(e, if i == 0 { C::one() } else { two.clone() });
    }
    f
}

/// Sum of the variables `x_from..=x_ell` (1-based) plus `constant`.
fn linear_tail<C: Coefficient>(ell: usize, from: usize, constant: C) -> Polynomial<C> {
    let mut f = Polynomial::constant(ell, constant);
    for i in from - 1..ell {
        f = f + Polynomial::var(ell, i);
    }
    f
}

pub fn flag_product<C: Coefficient>(a: &AbstractFlag<C>, b: &AbstractFlag<C>) -> Result<AbstractFlag<C>> {
    if a.ell != b.ell {
        return Err(Error::ChainLength(a.ell, b.ell));
    }
    Ok(AbstractFlag {
        ell: a.ell,
        poly: &a.poly * &b.poly,
    })
}

pub fn flag_prism<C: Coefficient>(p: &AbstractFlag<C>) -> AbstractFlag<C> {
    AbstractFlag {
        ell: p.ell,
        poly: &p.poly * &prism_factor(p.ell),
    }
}

pub fn flag_hypercube<C: Coefficient>(d: u32, ell: usize) -> AbstractFlag<C> {
    AbstractFlag {
        ell,
        poly: prism_factor::<C>(ell).pow(d),
    }
}

/// `f^l_P (1 + x_1 + .. + x_l) + 1 + sum_{i=2}^{l} x_i f^{l-i+1}_P(x_i, .., x_l)`
pub fn flag_pyramid<C: Coefficient>(p: &FlagFamily<C>, ell: usize) -> Result<AbstractFlag<C>> {
    p.require(ell)?;
    let mut poly = p.order(ell)? * &linear_tail(ell, 1, C::one()) + Polynomial::one(ell);
    for i in 2..=ell {
        let tail = p.windowed(VariableWindow::new(ell, i)?)?;
        poly = poly + Polynomial::var(ell, i - 1) * tail;
    }
    Ok(AbstractFlag { ell, poly })
}

/// `1 + sum_{i=2}^{l} x_i f^{l-i+1}_Q(x_i, .., x_l)`: the factor counting how a
/// chain of P can be continued by joining with faces of Q.
fn join_tail<C: Coefficient>(q: &FlagFamily<C>, ell: usize) -> Result<Polynomial<C>> {
    let mut t = Polynomial::one(ell);
    for i in 2..=ell {
        t = t + Polynomial::var(ell, i - 1) * q.windowed(VariableWindow::new(ell, i)?)?;
    }
    Ok(t)
}

/// Flag polynomial of the free join `P * Q`. The empty polytope (all-zero
/// family) acts as the identity.
pub fn flag_free_join<C: Coefficient>(p: &FlagFamily<C>, q: &FlagFamily<C>, ell: usize) -> Result<AbstractFlag<C>> {
    p.require(ell)?;
    q.require(ell)?;
    let fp = p.order(ell)?;
    let fq = q.order(ell)?;
    let poly = fp * &join_tail(q, ell)? + fq * &join_tail(p, ell)? + Polynomial::var(ell, 0) * fp * fq;
    Ok(AbstractFlag { ell, poly })
}

/// Subset of the acted-on indices `{0, .., m-1}` as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SupportSet(pub u64);

impl SupportSet {
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self(indices.into_iter().fold(0, |m, i| m | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn minus(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }
}

/// One `l`-chain of faces of the acting polytope: the successive dimension
/// differences and the support of every face in the chain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainDatum {
    pub deltadims: Vec<u32>,
    pub supports: Vec<SupportSet>,
}

/// Chain data of the `(m-1)`-simplex: every chain `S_1 ⊆ .. ⊆ S_l` of
/// nonempty subsets of `[m]`, face dimension `|S_i| - 1`.
pub fn simplex_chain_data(m: usize, ell: usize) -> Vec<ChainDatum> {
    // Assign each element the first level (1..=l) at which it joins the
    // chain, or l + 1 if never.
    let mut out = Vec::new();
    let mut levels = vec![1usize; m];
    loop {
        let supports: Vec<SupportSet> = (1..=ell)
            .map(|i| SupportSet::from_indices((0..m).filter(|&e| levels[e] <= i)))
            .collect();
        if !supports[0].is_empty() {
            let dims: Vec<u32> = supports.iter().map(|s| s.len() as u32 - 1).collect();
            let mut deltadims = vec![dims[0]];
            deltadims.extend(dims.windows(2).map(|w| w[1] - w[0]));
            out.push(ChainDatum { deltadims, supports });
        }
        let mut pos = 0;
        loop {
            if pos == m {
                out.sort();
                return out;
            }
            levels[pos] += 1;
            if levels[pos] <= ell + 1 {
                break;
            }
            levels[pos] = 1;
            pos += 1;
        }
    }
}

/// Flag polynomial of `P(Q_1, .., Q_m)`:
///
/// sum over chains of P of `x^{∂dim} * prod_i prod_{α ∈ supp(A_i) \ supp(A_{i-1})} f^{l-i+1}_{Q_α}(x_i, .., x_l)`
pub fn flag_p_action<C, S>(chains: &[ChainDatum], qflags: &[S], ell: usize) -> Result<AbstractFlag<C>>
where
    C: Coefficient,
    S: FlagSource<C>,
{
    let m = qflags.len();
    for ch in chains {
        if ch.deltadims.len() != ell || ch.supports.len() != ell {
            return Err(Error::ChainLength(ch.deltadims.len().max(ch.supports.len()), ell));
        }
        if let Some(index) = ch.supports.iter().filter_map(|s| s.max_index()).max() {
            if index >= m {
                return Err(Error::SupportOutOfRange { index: index + 1, m });
            }
        }
    }
    // table[α][i - 1] = f^{l-i+1}_{Q_α}(x_i, .., x_l)
    let table: Vec<Vec<Polynomial<C>>> = qflags
        .iter()
        .map(|q| {
            (1..=ell)
                .map(|i| q.windowed(VariableWindow::new(ell, i)?))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let poly = chains
        .par_iter()
        .map(|ch| chain_term(ch, &table, ell))
        .reduce(|| Polynomial::zero(ell), |a, b| a + b);
    Ok(AbstractFlag { ell, poly })
}

/// The contribution of a single chain of the acting polytope.
pub(crate) fn chain_term<C: Coefficient>(ch: &ChainDatum, table: &[Vec<Polynomial<C>>], ell: usize) -> Polynomial<C> {
    let mut term = Polynomial::monomial(ch.deltadims.clone(), C::one());
    let mut prev = SupportSet::default();
    for (i, &supp) in ch.supports.iter().enumerate() {
        for alpha in supp.minus(prev).iter() {
            let factor = &table[alpha][i];
            if factor.is_zero() {
                return Polynomial::zero(ell);
            }
            term = term * factor;
        }
        prev = supp;
    }
    term
}

/// Strict-chain polynomial by inclusion-exclusion:
///
/// `g^l = sum_{h=0}^{l-1} (-1)^h sum_{2 <= i_1 < .. < i_h <= l} f^{l-h}(x with x_{i_1}, .., x_{i_h} removed)`
pub fn strict_chain_poly<C: Coefficient>(flags: &FlagFamily<C>, ell: usize) -> Result<Polynomial<C>> {
    flags.require(ell)?;
    let mut g = Polynomial::zero(ell);
    // Each subset of {2, .., l} is a bitmask over positions 1..l (0-based).
    for mask in 0u64..1 << (ell - 1) {
        let removed: Vec<usize> = (0..ell - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let kept: Vec<usize> = (0..ell).filter(|p| !removed.contains(p)).collect();
        let term = flags.order(kept.len())?.embed(ell, &kept)?;
        g = if removed.len().is_multiple_of(2) {
            g + term
        } else {
            g - term
        };
    }
    Ok(g)
}
