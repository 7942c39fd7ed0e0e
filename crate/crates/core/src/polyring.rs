//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`Polynomial`] maps exponent vectors to nonzero coefficients. Terms are
//! kept in a `BTreeMap`, so iteration (and therefore every printed or
//! serialized form) follows ascending lexicographic order on exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, ToPrimitive};

use crate::error::{Error, Result};

/// Coefficient ring for [`Polynomial`].
///
/// Implemented for every signed numeric type that supports the usual ring
/// operations; in practice `BigInt` (the default) and `i64`/`i128` for fast
/// small-range experiments.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + Eq + Ord + Send + Sync + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive
{
}

impl<T> Coefficient for T where
    T: Clone + fmt::Debug + fmt::Display + Eq + Ord + Send + Sync + Num + Neg<Output = T> + FromPrimitive + ToPrimitive
{
}

/// Exponent vector of a single monomial. Length equals the variable count.
pub type ExponentVector = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C = BigInt> {
    nvars: usize,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The monomial `x_{var+1}` (variables are 0-indexed internally).
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Self::monomial(exps, C::one())
    }

    pub fn monomial(exps: ExponentVector, c: C) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VariableCount {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// Adds `c * x^exps` in place.
    pub fn add_term(&mut self, exps: ExponentVector, c: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (ExponentVector, C)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coefficient_sum(&self) -> C {
        self.terms.values().cloned().fold(C::zero(), |a, b| a + b)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent of `var` over all terms.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Exact convolution product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn shift(&self, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by `x_{var+1}`, failing if some term has exponent 0 in it.
    pub fn exact_div_by_var(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::InvalidArgument(format!(
                "variable index {var} out of range for {} variables",
                self.nvars
            )));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                return Err(Error::NotDivisible { var });
            }
            let mut e = e.clone();
            e[var] -= 1;
            terms.insert(e, c.clone());
        }
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Maps exponents `(a_1, .., a_l)` to their partial sums
    /// `(a_1, a_1 + a_2, ..)`. This is the substitution
    /// `x_i = y_i y_{i+1} .. y_l`, after which the exponent of `y_i` is the
    /// dimension of the i-th face of a chain.
    pub fn phi_transform(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let sums = e
                        .iter()
                        .scan(0u32, |acc, &a| {
                            *acc += a;
                            Some(*acc)
                        })
                        .collect();
                    (sums, c.clone())
                })
                .collect(),
        }
    }

    /// Inverse of [`phi_transform`](Self::phi_transform): successive
    /// differences of each exponent vector. Fails if some exponent vector is
    /// not nondecreasing.
    pub fn delta_transform(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut out = Vec::with_capacity(e.len());
            let mut prev = 0u32;
            for &s in e {
                if s < prev {
                    return Err(Error::InvalidArgument(format!(
                        "exponent vector {e:?} is not nondecreasing"
                    )));
                }
                out.push(s - prev);
                prev = s;
            }
            terms.insert(out, c.clone());
        }
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Sets `x_{var+1} = 0`, keeping the variable count.
    pub fn set_var_zero(&self, var: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets the last variable to zero and drops it.
    pub fn specialize_last_zero(&self) -> Result<Self> {
        if self.nvars == 0 {
            return Err(Error::InvalidArgument(
                "cannot drop a variable from a constant-only ring".into(),
            ));
        }
        let n = self.nvars - 1;
        Ok(Self {
            nvars: n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[n] == 0)
                .map(|(e, c)| (e[..n].to_vec(), c.clone()))
                .collect(),
        })
    }

    /// Re-indexes variables into a larger ring: variable `j` of `self`
    /// becomes variable `positions[j]` of the result.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.nvars {
            return Err(Error::VariableCount {
                expected: self.nvars,
                found: positions.len(),
            });
        }
        if let Some(&p) = positions.iter().find(|&&p| p >= nvars) {
            return Err(Error::InvalidArgument(format!(
                "target position {p} out of range for {nvars} variables"
            )));
        }
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (j, &a) in e.iter().enumerate() {
                exps[positions[j]] += a;
            }
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::VariableCount {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &a) in point.iter().zip(e) {
                for _ in 0..a {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    pub fn map_coefficients<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Formats the polynomial using the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }

    fn default_names(&self) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("x{i}")).collect()
    }
}

struct DisplayWith<'a, C> {
    poly: &'a Polynomial<C>,
    names: &'a [String],
}

impl<C: Coefficient> fmt::Display for DisplayWith<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.terms.iter().enumerate() {
            let negative = *c < C::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(j, &a)| match a {
                    1 => self.names[j].clone(),
                    _ => format!("{}^{a}", self.names[j]),
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{abs}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let shown = DisplayWith {
            poly: self,
            names: &names,
        };
        fmt::Display::fmt(&shown, f)
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.nvars)
    }
}

// Operator impls panic on a variable-count mismatch; the `try_*` methods
// report it as an error instead.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<C: Coefficient> $trait<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$try(rhs).expect("polynomial variable counts differ")
            }
        }
        impl<C: Coefficient> $trait<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coefficient> $trait<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -self.clone()
    }
}

/// Row `n` of Pascal's triangle, built by additions only so it works for
/// any coefficient ring.
pub(crate) fn binomial_row<C: Coefficient>(n: u32) -> Vec<C> {
    let mut row = vec![C::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(C::one());
        for w in row.windows(2) {
            next.push(w[0].clone() + w[1].clone());
        }
        next.push(C::one());
        row = next;
    }
    row
}

/// Expands `(x_{v_1} + .. + x_{v_m} + 1)^n` in `nvars` variables by iterated
/// binomial expansion.
pub(crate) fn affine_sum_pow<C: Coefficient>(nvars: usize, vars: &[usize], n: u32) -> Polynomial<C> {
    let mut out = Polynomial::zero(nvars);
    let mut exps = vec![0u32; nvars];
    expand_into(&mut out, &mut exps, vars, n, C::one());
    out
}

fn expand_into<C: Coefficient>(out: &mut Polynomial<C>, exps: &mut Vec<u32>, vars: &[usize], n: u32, coef: C) {
    match vars.split_first() {
        None => out.add_term(exps.clone(), coef),
        Some((&v, rest)) => {
            // (x_v + rest + 1)^n = sum_t C(n, t) x_v^t (rest + 1)^(n - t)
            let row = binomial_row::<C>(n);
            for (t, b) in row.into_iter().enumerate() {
                exps[v] += t as u32;
                expand_into(out, exps, rest, n - t as u32, coef.clone() * b);
                exps[v] -= t as u32;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Polynomial<BigInt>;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> P {
        P::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn add_cancels() {
        let a = p(1, &[(&[1], 1), (&[0], 1)]);
        let b = p(1, &[(&[1], 1), (&[0], -1)]);
        assert_eq!(&a + &b, p(1, &[(&[1], 2)]));
    }

    #[test]
    fn add_identity_and_doubling() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], 2)]);
        assert_eq!(&a + &P::zero(2), a);
        assert_eq!(&a + &a, p(2, &[(&[1, 0], 2), (&[0, 1], 4), (&[0, 0], 4)]));
    }

    #[test]
    fn mismatched_variable_counts_are_rejected() {
        let a = P::one(1);
        let b = P::one(2);
        assert!(matches!(a.try_add(&b), Err(Error::VariableCount { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::VariableCount { .. })));
    }

    #[test]
    fn mul_examples() {
        let a = p(1, &[(&[1], 1), (&[0], 2)]);
        assert_eq!(&a * &a, p(1, &[(&[2], 1), (&[1], 4), (&[0], 4)]));
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], 2)]);
        let expected = p(
            2,
            &[
                (&[2, 0], 1),
                (&[1, 1], 4),
                (&[1, 0], 4),
                (&[0, 2], 4),
                (&[0, 1], 8),
                (&[0, 0], 4),
            ],
        );
        assert_eq!(&b * &b, expected);
        assert_eq!(&b * &P::one(2), b);
    }

    #[test]
    fn exact_division() {
        let a = p(1, &[(&[2], 1), (&[1], 2)]);
        assert_eq!(a.exact_div_by_var(0).unwrap(), p(1, &[(&[1], 1), (&[0], 2)]));

        let s = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let t = p(2, &[(&[0, 1], 1), (&[0, 0], 1)]);
        let diff = &(&s * &s) - &(&t * &t);
        assert_eq!(
            diff.exact_div_by_var(0).unwrap(),
            p(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], 2)])
        );

        let x2 = p(2, &[(&[0, 1], 1)]);
        assert!(matches!(x2.exact_div_by_var(0), Err(Error::NotDivisible { var: 0 })));
    }

    #[test]
    fn phi_examples() {
        let base = p(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 2), (&[0, 0, 1], 2), (&[0, 0, 0], 2)]);
        let sq = &base * &base;
        let expected = p(
            3,
            &[
                (&[2, 2, 2], 1),
                (&[1, 2, 2], 4),
                (&[1, 1, 2], 4),
                (&[0, 2, 2], 4),
                (&[1, 1, 1], 4),
                (&[0, 1, 2], 8),
                (&[0, 1, 1], 8),
                (&[0, 0, 2], 4),
                (&[0, 0, 1], 8),
                (&[0, 0, 0], 4),
            ],
        );
        assert_eq!(sq.phi_transform(), expected);
        assert_eq!(P::constant(3, 7.into()).phi_transform(), P::constant(3, 7.into()));
        assert_eq!(P::var(2, 0).phi_transform(), p(2, &[(&[1, 1], 1)]));
    }

    #[test]
    fn display_is_canonical() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], -2), (&[0, 0], 3)]);
        assert_eq!(a.to_string(), "3 - 2*x2 + x1");
        assert_eq!(P::zero(2).to_string(), "0");
    }

    #[test]
    fn affine_power_matches_repeated_product() {
        let lin = p(3, &[(&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[0, 0, 0], 1)]);
        assert_eq!(affine_sum_pow::<BigInt>(3, &[1, 2], 5), lin.pow(5));
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = P> {
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..6), 0..6)
            .prop_map(move |ts| P::from_terms(nvars, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap())
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(3), b in small_poly(3), c in small_poly(3)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn division_undoes_multiplication(a in small_poly(3), var in 0usize..3) {
            let x = P::var(3, var);
            prop_assert_eq!((&a * &x).exact_div_by_var(var).unwrap(), a);
        }

        #[test]
        fn phi_round_trips(a in small_poly(4)) {
            let phi = a.phi_transform();
            prop_assert_eq!(phi.len(), a.len());
            for (e, _) in phi.terms() {
                prop_assert!(e.windows(2).all(|w| w[0] <= w[1]));
            }
            prop_assert_eq!(phi.delta_transform().unwrap(), a);
        }

        #[test]
        fn small_and_big_coefficients_agree(a in small_poly(2), b in small_poly(2)) {
            let small = |q: &P| q.map_coefficients(|c| c.to_i64().unwrap());
            let prod = &small(&a) * &small(&b);
            prop_assert_eq!(prod.map_coefficients(|&c| BigInt::from(c)), &a * &b);
        }
    }
}
