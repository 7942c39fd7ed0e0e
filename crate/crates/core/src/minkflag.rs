//! Flag polynomials of Minkowski sums of standard simplices, computed from
//! the chain data of the master polytope, and the closed forms for two sets.

use crate::constructions::{chain_term, flag_p_action, ChainDatum, SimplexSource};
use crate::error::{Error, Result};
use crate::extremal::gen_binom;
use crate::facelattice::SetFamily;
use crate::masterpoly::{master_chains_with, r_vector, realized_chains, MasterConfig, RVector};
use crate::polyring::{Coefficient, Polynomial};
use crate::simplexflag::{f_simplex, flag_simplex, VariableWindow};

/// Shape of a two-set family: `r1 = |F1 ∩ F2|`, `r2 = |F1 \ F2|`,
/// `r3 = |F2 \ F1|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct K2Profile {
    pub r1: u64,
    pub r2: u64,
    pub r3: u64,
}

impl K2Profile {
    pub fn new(r1: u64, r2: u64, r3: u64) -> Result<Self> {
        if r1 + r2 + r3 == 0 {
            return Err(Error::InvalidArgument("profile needs r >= 1".into()));
        }
        Ok(Self { r1, r2, r3 })
    }

    pub fn r(&self) -> u64 {
        self.r1 + self.r2 + self.r3
    }

    pub fn swapped(&self) -> Self {
        Self {
            r1: self.r1,
            r2: self.r3,
            r3: self.r2,
        }
    }

    pub fn from_family(family: &SetFamily) -> Result<Self> {
        if family.k() != 2 {
            return Err(Error::InvalidArgument(format!(
                "a two-set profile needs k = 2, got k = {}",
                family.k()
            )));
        }
        let c = r_vector(family)?;
        Self::new(c.get(1), c.get(2), c.get(3))
    }

    pub fn r_vector(&self) -> RVector {
        RVector::new(2, vec![self.r1, self.r2, self.r3]).expect("three entries for k = 2")
    }

    /// A family with this profile; `None` if one of the sets would be empty.
    pub fn family(&self) -> Option<SetFamily> {
        if self.r1 + self.r2 == 0 || self.r1 + self.r3 == 0 {
            return None;
        }
        self.r_vector().realize().ok()
    }

    /// All profiles with `r1 + r2 + r3 = r` whose two sets are nonempty.
    pub fn all_with_r(r: u64) -> impl Iterator<Item = Self> {
        (0..=r).flat_map(move |r1| {
            (0..=r - r1).filter_map(move |r2| {
                let p = Self {
                    r1,
                    r2,
                    r3: r - r1 - r2,
                };
                (p.r1 + p.r2 > 0 && p.r1 + p.r3 > 0).then_some(p)
            })
        })
    }
}

impl std::fmt::Display for K2Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.r1, self.r2, self.r3)
    }
}

fn realized(family: &SetFamily, ell: usize, config: &MasterConfig) -> Result<(RVector, Vec<ChainDatum>)> {
    let rv = r_vector(family)?;
    let k = u32::try_from(family.k()).map_err(|_| Error::InvalidArgument("k too large".into()))?;
    let data = master_chains_with(k, ell, config)?;
    let chains = realized_chains(&data, &rv).cloned().collect();
    Ok((rv, chains))
}

fn simplex_sources(rv: &RVector) -> Result<Vec<SimplexSource>> {
    rv.counts()
        .iter()
        .map(|&c| {
            u32::try_from(c)
                .map(SimplexSource)
                .map_err(|_| Error::InvalidArgument(format!("pattern count {c} too large")))
        })
        .collect()
}

/// The `ell`-flag polynomial of the Minkowski sum of the family.
pub fn flag_minkowski<C: Coefficient>(family: &SetFamily, ell: usize) -> Result<Polynomial<C>> {
    flag_minkowski_with(family, ell, &MasterConfig::default())
}

pub fn flag_minkowski_with<C: Coefficient>(
    family: &SetFamily,
    ell: usize,
    config: &MasterConfig,
) -> Result<Polynomial<C>> {
    let (rv, chains) = realized(family, ell, config)?;
    Ok(flag_p_action(&chains, &simplex_sources(&rv)?, ell)?.into_poly())
}

/// Per-chain contributions of the master polytope, zero terms omitted.
pub fn flag_minkowski_terms<C: Coefficient>(
    family: &SetFamily,
    ell: usize,
    config: &MasterConfig,
) -> Result<Vec<(ChainDatum, Polynomial<C>)>> {
    let (rv, chains) = realized(family, ell, config)?;
    let table: Vec<Vec<Polynomial<C>>> = rv
        .counts()
        .iter()
        .map(|&c| {
            (1..=ell)
                .map(|i| match c {
                    0 => Ok(Polynomial::zero(ell)),
                    c => flag_simplex(c as u32, VariableWindow::new(ell, i)?),
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    Ok(chains
        .into_iter()
        .map(|ch| {
            let t = chain_term(&ch, &table, ell);
            (ch, t)
        })
        .filter(|(_, t)| !t.is_zero())
        .collect())
}

/// f-polynomial: sum over faces `A` of the master polytope of
/// `x^{dim A} prod_{i ∈ supp A} f_{Δ_{r_i - 1}}(x)`.
pub fn f_poly_minkowski<C: Coefficient>(family: &SetFamily) -> Result<Polynomial<C>> {
    f_poly_minkowski_with(family, &MasterConfig::default())
}

pub fn f_poly_minkowski_with<C: Coefficient>(family: &SetFamily, config: &MasterConfig) -> Result<Polynomial<C>> {
    let (rv, chains) = realized(family, 1, config)?;
    let fs: Vec<Option<Polynomial<C>>> = rv
        .counts()
        .iter()
        .map(|&c| (c > 0).then(|| f_simplex(c as u32)).transpose())
        .collect::<Result<_>>()?;
    let mut out = Polynomial::zero(1);
    for ch in chains {
        let mut term = Polynomial::monomial(ch.deltadims.clone(), C::one());
        for alpha in ch.supports[0].iter() {
            term = term * fs[alpha].as_ref().expect("realized chains avoid empty patterns");
        }
        out = out + term;
    }
    Ok(out)
}

fn simplex_or_zero<C: Coefficient>(r: u64, window: VariableWindow) -> Polynomial<C> {
    match r {
        0 => Polynomial::zero(window.total()),
        r => flag_simplex(r as u32, window).expect("r >= 1"),
    }
}

/// The two-set 2-flag polynomial written out over the 25 chains of the
/// square, in terms of simplex flag polynomials `f_i^2(x1, x2)` and
/// `f_i^1(x2)`.
pub fn flag2_closed_k2<C: Coefficient>(p: K2Profile) -> Polynomial<C> {
    let full = VariableWindow::full(2).expect("two variables");
    let tail = VariableWindow::new(2, 2).expect("two variables");
    let rs = [p.r1, p.r2, p.r3];
    let f2: Vec<Polynomial<C>> = rs.iter().map(|&r| simplex_or_zero(r, full)).collect();
    let f1: Vec<Polynomial<C>> = rs.iter().map(|&r| simplex_or_zero(r, tail)).collect();
    let m = |terms: &[([u32; 2], i64)]| -> Polynomial<C> {
        let mut q = Polynomial::zero(2);
        for (e, c) in terms {
            q.add_term(e.to_vec(), C::from_i64(*c).expect("small constant"));
        }
        q
    };
    let (a, b, c) = (&f2[0], &f2[1], &f2[2]);
    let (a1, b1, c1) = (&f1[0], &f1[1], &f1[2]);

    m(&[([1, 0], 2), ([2, 0], 1), ([1, 1], 2)]) * a * b * c
        + m(&[([0, 1], 1), ([1, 1], 1), ([0, 2], 1)]) * (a * b * c1 + a * c * b1)
        + m(&[([0, 1], 2), ([0, 2], 1)]) * b * c * a1
        + m(&[([0, 2], 1)]) * a * b1 * c1
        + m(&[([0, 0], 1), ([1, 0], 1), ([0, 1], 1)]) * (a * b + a * c)
        + m(&[([0, 1], 1)]) * (a * b1 + a * c1)
        + b * c
        + a.clone()
}

fn affine_power<C: Coefficient>(n: u64) -> Polynomial<C> {
    let x1 = Polynomial::var(1, 0) + Polynomial::one(1);
    x1.pow(n as u32)
}

/// `((x + 2)(x + 1)^r - (x + 1)^a - (x + 1)^b - (x + 1)^c + 1) / x^2`.
fn two_set_f_poly<C: Coefficient>(r: u64, a: u64, b: u64, c: u64) -> Result<Polynomial<C>> {
    let two = C::one() + C::one();
    let lead = Polynomial::var(1, 0) + Polynomial::constant(1, two);
    let numerator = lead * affine_power(r) - affine_power(a) - affine_power(b) - affine_power(c) + Polynomial::one(1);
    numerator.exact_div_by_var(0)?.exact_div_by_var(0)
}

pub fn f_poly_closed_k2<C: Coefficient>(p: K2Profile) -> Result<Polynomial<C>> {
    two_set_f_poly(p.r(), p.r1 + p.r2, p.r1 + p.r3, p.r2 + p.r3 + 1)
}

/// Same closed form written with `|F1 ∪ F2|`, `|F1|`, `|F2|` and `|F1 △ F2|`.
pub fn f_poly_set_form<C: Coefficient>(family: &SetFamily) -> Result<Polynomial<C>> {
    let [f1, f2] = family.sets() else {
        return Err(Error::InvalidArgument("set form needs exactly two sets".into()));
    };
    let size = |m: u64| m.count_ones() as u64;
    two_set_f_poly(size(f1 | f2), size(*f1), size(*f2), size(f1 ^ f2) + 1)
}

/// Number of `d`-faces of a two-set sum.
pub fn f_d(p: K2Profile, d: u32) -> num_bigint::BigInt {
    let c = d + 2;
    let n = |x: u64| x as i64;
    gen_binom(n(p.r()) + 1, c) + gen_binom(n(p.r()), c)
        - gen_binom(n(p.r1 + p.r2), c)
        - gen_binom(n(p.r1 + p.r3), c)
        - gen_binom(n(p.r2 + p.r3) + 1, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Polynomial<BigInt>;

    fn poly2(terms: &[([u32; 2], i64)]) -> P {
        P::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    fn uni(coefs: &[i64]) -> P {
        P::from_terms(
            1,
            coefs
                .iter()
                .enumerate()
                .map(|(i, &c)| (vec![i as u32], BigInt::from(c))),
        )
        .unwrap()
    }

    fn worked_example() -> P {
        poly2(&[
            ([0, 0], 7),
            ([1, 0], 11),
            ([2, 0], 6),
            ([3, 0], 1),
            ([0, 1], 22),
            ([1, 1], 22),
            ([2, 1], 6),
            ([0, 2], 22),
            ([1, 2], 11),
            ([0, 3], 7),
        ])
    }

    fn rhombus2() -> P {
        let base = poly2(&[([1, 0], 1), ([0, 1], 2), ([0, 0], 2)]);
        &base * &base
    }

    fn fam(sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(sets).unwrap()
    }

    #[test]
    fn flag_minkowski_examples() {
        let f = fam(&[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(flag_minkowski::<BigInt>(&f, 2).unwrap(), worked_example());
        let g = fam(&[&[1, 2], &[1, 3]]);
        assert_eq!(flag_minkowski::<BigInt>(&g, 2).unwrap(), rhombus2());
    }

    #[test]
    fn constant_term_counts_vertices() {
        for r in 1..=7 {
            for p in K2Profile::all_with_r(r) {
                let f = p.family().unwrap();
                let got = flag_minkowski::<BigInt>(&f, 2).unwrap().constant_term();
                let expected = p.r1 * p.r2 + p.r1 * p.r3 + p.r2 * p.r3 + p.r1;
                assert_eq!(got, BigInt::from(expected), "{p}");
            }
        }
    }

    #[test]
    fn terms_sum_to_the_polynomial() {
        let f = fam(&[&[1, 2, 3], &[1, 2, 4]]);
        let terms = flag_minkowski_terms::<BigInt>(&f, 2, &MasterConfig::default()).unwrap();
        let total = terms.into_iter().fold(P::zero(2), |acc, (_, t)| acc + t);
        assert_eq!(total, worked_example());
    }

    #[test]
    fn closed_k2_examples() {
        assert_eq!(
            flag2_closed_k2::<BigInt>(K2Profile::new(2, 1, 1).unwrap()),
            worked_example()
        );
        assert_eq!(flag2_closed_k2::<BigInt>(K2Profile::new(1, 1, 1).unwrap()), rhombus2());
        for r in 1..=6 {
            for p in K2Profile::all_with_r(r) {
                let q = flag2_closed_k2::<BigInt>(p);
                let f0 = p.r1 * p.r2 + p.r1 * p.r3 + p.r2 * p.r3 + p.r1;
                assert_eq!(q.constant_term(), BigInt::from(f0));
                assert_eq!(q, flag2_closed_k2(p.swapped()));
            }
        }
    }

    #[test]
    fn f_poly_examples() {
        let f = fam(&[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(f_poly_minkowski::<BigInt>(&f).unwrap(), uni(&[7, 11, 6, 1]));
        assert_eq!(
            f_poly_minkowski::<BigInt>(&fam(&[&[1, 2], &[1, 3]])).unwrap(),
            uni(&[4, 4, 1])
        );
        assert_eq!(
            f_poly_minkowski::<BigInt>(&fam(&[&[1, 2], &[3, 4]])).unwrap(),
            uni(&[4, 4, 1])
        );

        let p = K2Profile::new(2, 1, 1).unwrap();
        assert_eq!(f_poly_closed_k2::<BigInt>(p).unwrap(), uni(&[7, 11, 6, 1]));
        assert_eq!(f_d(p, 1), BigInt::from(11));
        assert_eq!(f_d(K2Profile::new(1, 1, 1).unwrap(), 0), BigInt::from(4));
        assert_eq!(f_d(K2Profile::new(1, 1, 1).unwrap(), 2), BigInt::from(1));
        assert_eq!(f_poly_set_form::<BigInt>(&f).unwrap(), uni(&[7, 11, 6, 1]));
    }

    #[test]
    fn f_d_matches_closed_polynomial() {
        for r in 1..=9 {
            for p in K2Profile::all_with_r(r) {
                let poly = f_poly_closed_k2::<BigInt>(p).unwrap();
                for d in 0..r as u32 + 2 {
                    assert_eq!(poly.coefficient(&[d]), f_d(p, d), "{p} d={d}");
                }
            }
        }
    }

    #[test]
    fn duplicate_sets_give_a_dilated_simplex() {
        let f = fam(&[&[1, 2, 3], &[1, 2, 3]]);
        let got = flag_minkowski::<BigInt>(&f, 2).unwrap();
        assert_eq!(got, flag_simplex(3, VariableWindow::full(2).unwrap()).unwrap());
    }

    #[test]
    fn profile_validation() {
        assert!(K2Profile::new(0, 0, 0).is_err());
        assert!(K2Profile::new(0, 3, 0).unwrap().family().is_none());
        assert_eq!(K2Profile::all_with_r(4).count(), 13);
        let three = fam(&[&[1], &[2], &[3]]);
        assert!(K2Profile::from_family(&three).is_err());
        assert!(f_poly_set_form::<BigInt>(&three).is_err());
    }
}
