//! Closed-form f- and flag polynomials of the standard simplex.

use crate::error::{Error, Result};
use crate::polyring::{affine_sum_pow, binomial_row, Coefficient, Polynomial};

/// The argument list `(x_start, .., x_total)` of a flag polynomial of order
/// `total - start + 1`, embedded in a ring of `total` variables. `start` is
/// 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VariableWindow {
    total: usize,
    start: usize,
}

impl VariableWindow {
    pub fn new(total: usize, start: usize) -> Result<Self> {
        if start == 0 || start > total {
            return Err(Error::InvalidArgument(format!(
                "window start {start} outside 1..={total}"
            )));
        }
        Ok(Self { total, start })
    }

    /// The window covering every variable.
    pub fn full(total: usize) -> Result<Self> {
        Self::new(total, 1)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Chain length of the flag polynomial that lives in this window.
    pub fn order(&self) -> usize {
        self.total - self.start + 1
    }

    /// 0-based ring positions covered by the window.
    pub fn positions(&self) -> std::ops::Range<usize> {
        self.start - 1..self.total
    }
}

/// f-polynomial of the `(r-1)`-simplex: `((x + 1)^r - 1) / x`.
pub fn f_simplex<C: Coefficient>(r: u32) -> Result<Polynomial<C>> {
    if r == 0 {
        return Err(Error::InvalidArgument("simplex needs r >= 1".into()));
    }
    // coefficient of x^i is C(r, i + 1)
    let row = binomial_row::<C>(r);
    Polynomial::from_terms(
        1,
        row.into_iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (vec![i as u32 - 1], c)),
    )
}

/// Flag polynomial of the `(r-1)`-simplex in the given window:
///
/// `((x_s + .. + x_l + 1)^r - (x_{s+1} + .. + x_l + 1)^r) / x_s`
///
/// Variables below `s` appear with exponent zero.
pub fn flag_simplex<C: Coefficient>(r: u32, window: VariableWindow) -> Result<Polynomial<C>> {
    if r == 0 {
        return Err(Error::InvalidArgument("simplex needs r >= 1".into()));
    }
    let lead = window.start() - 1;
    let rest: Vec<usize> = window.positions().skip(1).collect();
    // (x_s + B)^r - B^r = sum_{j >= 1} C(r, j) x_s^j B^(r - j); divide by x_s.
    let row = binomial_row::<C>(r);
    let mut out = Polynomial::zero(window.total());
    let mut shift = vec![0u32; window.total()];
    for (j, b) in row.into_iter().enumerate().skip(1) {
        shift[lead] = j as u32 - 1;
        let tail = affine_sum_pow::<C>(window.total(), &rest, r - j as u32);
        out = out + tail.shift(&shift).scale(&b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Polynomial<BigInt>;

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

    #[test]
    fn f_simplex_examples() {
        assert_eq!(f_simplex::<BigInt>(3).unwrap(), uni(&[3, 3, 1]));
        assert_eq!(f_simplex::<BigInt>(1).unwrap(), uni(&[1]));
        assert_eq!(f_simplex::<BigInt>(4).unwrap(), uni(&[4, 6, 4, 1]));
        assert!(f_simplex::<BigInt>(0).is_err());
    }

    #[test]
    fn flag_simplex_examples() {
        let w = VariableWindow::new(3, 1).unwrap();
        let got = flag_simplex::<BigInt>(2, w).unwrap();
        let expected = P::from_terms(
            3,
            [
                (vec![1, 0, 0], 1),
                (vec![0, 1, 0], 2),
                (vec![0, 0, 1], 2),
                (vec![0, 0, 0], 2),
            ]
            .map(|(e, c)| (e, BigInt::from(c))),
        )
        .unwrap();
        assert_eq!(got, expected);

        for (total, start) in [(1, 1), (3, 2), (4, 4)] {
            let w = VariableWindow::new(total, start).unwrap();
            assert_eq!(flag_simplex::<BigInt>(1, w).unwrap(), P::one(total));
        }
        let w = VariableWindow::full(1).unwrap();
        assert_eq!(flag_simplex::<BigInt>(3, w).unwrap(), uni(&[3, 3, 1]));
        assert!(flag_simplex::<BigInt>(0, w).is_err());
    }

    #[test]
    fn window_validation() {
        assert!(VariableWindow::new(3, 0).is_err());
        assert!(VariableWindow::new(3, 4).is_err());
        let w = VariableWindow::new(5, 2).unwrap();
        assert_eq!(w.order(), 4);
        assert_eq!(w.positions(), 1..5);
    }

    #[test]
    fn windowed_is_shifted_lower_order() {
        // The window (x_2, x_3) of a 3-variable ring holds the 2-flag polynomial.
        let shifted = flag_simplex::<BigInt>(4, VariableWindow::new(3, 2).unwrap()).unwrap();
        let base = flag_simplex::<BigInt>(4, VariableWindow::full(2).unwrap()).unwrap();
        assert_eq!(shifted, base.embed(3, &[1, 2]).unwrap());
    }

    #[test]
    fn one_variable_agrees_with_f_polynomial() {
        for r in 1..=20 {
            let w = VariableWindow::full(1).unwrap();
            assert_eq!(flag_simplex::<BigInt>(r, w).unwrap(), f_simplex::<BigInt>(r).unwrap());
        }
    }

    #[test]
    fn last_variable_specialization() {
        for r in 1..=7 {
            for l in 2..=4 {
                let hi = flag_simplex::<BigInt>(r, VariableWindow::full(l).unwrap()).unwrap();
                let lo = flag_simplex::<BigInt>(r, VariableWindow::full(l - 1).unwrap()).unwrap();
                assert_eq!(hi.specialize_last_zero().unwrap(), lo);
            }
        }
    }

    fn factorial(n: u32) -> u128 {
        (1..=n as u128).product()
    }

    /// Chain `s_1 <= .. <= s_l <= r - 1` of face dimensions: count by the
    /// multinomial `r! / ((r - s_l - 1)! (s_l - s_{l-1})! .. (s_1 + 1)!)`.
    fn multinomial_chain_count(r: u32, s: &[u32]) -> u128 {
        let l = s.len();
        let mut denom = factorial(r - s[l - 1] - 1) * factorial(s[0] + 1);
        for w in s.windows(2) {
            denom *= factorial(w[1] - w[0]);
        }
        factorial(r) / denom
    }

    fn chains(l: usize, max: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..l {
            out = out
                .into_iter()
                .flat_map(|c: Vec<u32>| {
                    let lo = c.last().copied().unwrap_or(0);
                    (lo..=max).map(move |s| {
                        let mut c = c.clone();
                        c.push(s);
                        c
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn coefficients_match_multinomial_chain_counts() {
        for r in 1..=7u32 {
            for l in 1..=4usize {
                let poly = flag_simplex::<BigInt>(r, VariableWindow::full(l).unwrap()).unwrap();
                let mut seen = 0;
                for s in chains(l, r - 1) {
                    let mut delta = vec![s[0]];
                    delta.extend(s.windows(2).map(|w| w[1] - w[0]));
                    let expected = multinomial_chain_count(r, &s);
                    assert_eq!(poly.coefficient(&delta), BigInt::from(expected), "r={r} s={s:?}");
                    seen += 1;
                }
                assert_eq!(seen, poly.len());
            }
        }
    }

    #[test]
    fn machine_integers_agree_with_bigints() {
        let w = VariableWindow::new(4, 2).unwrap();
        let small = flag_simplex::<i64>(9, w).unwrap();
        let big = flag_simplex::<BigInt>(9, w).unwrap();
        assert_eq!(small.map_coefficients(|&c| BigInt::from(c)), big);
    }
}
