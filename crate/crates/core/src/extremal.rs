//! Extremal face statistics over all two-set Minkowski sums with a fixed
//! ground set size: maximum face counts, vertex-to-face chain counts and
//! their discrepancy from the simple case, and the window that localizes
//! the discrepancy maximizer.
//!
//! Maximizations are exhaustive; the closed forms and the window are
//! provided separately so they can be checked against the searches.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::minkflag::K2Profile;

/// `binom(x, c)` with the convention `binom(x, c) = 0` for `x < c`.
pub fn gen_binom(x: i64, c: u32) -> BigInt {
    if x < c as i64 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..c as i64 {
        acc = acc * (x - i) / (i + 1);
    }
    acc
}

/// `gen_binom(n, c)` for `n = 0..=max`.
struct BinomColumn {
    c: u32,
    values: Vec<BigInt>,
    zero: BigInt,
}

impl BinomColumn {
    fn new(c: u32, max: u64) -> Self {
        let mut values = Vec::with_capacity(max as usize + 1);
        let mut cur = BigInt::zero();
        for n in 0..=max {
            if n == c as u64 {
                cur = BigInt::one();
            } else if n > c as u64 {
                cur = cur * n / (n - c as u64);
            }
            values.push(cur.clone());
        }
        Self {
            c,
            values,
            zero: BigInt::zero(),
        }
    }

    fn get(&self, x: i64) -> &BigInt {
        if x < self.c as i64 {
            return &self.zero;
        }
        &self.values[x as usize]
    }
}

fn as_i64(x: u64) -> i64 {
    i64::try_from(x).expect("profile entries fit in i64")
}

/// Number of `d`-faces, by the five-binomial formula.
pub fn f_d_count(p: K2Profile, d: u32) -> BigInt {
    crate::minkflag::f_d(p, d)
}

fn f_d_with(col: &BinomColumn, p: K2Profile) -> BigInt {
    let r = as_i64(p.r());
    col.get(r + 1) + col.get(r)
        - col.get(as_i64(p.r1 + p.r2))
        - col.get(as_i64(p.r1 + p.r3))
        - col.get(as_i64(p.r2 + p.r3) + 1)
}

/// A maximum over profiles and every profile attaining it, in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    pub value: BigInt,
    pub argmaxes: Vec<K2Profile>,
}

impl ExtremalResult {
    /// Checks that `argmaxes` is nonempty and that each entry evaluates to
    /// `value`.
    pub fn new(value: BigInt, mut argmaxes: Vec<K2Profile>, eval: impl Fn(K2Profile) -> BigInt) -> Result<Self> {
        if argmaxes.is_empty() {
            return Err(Error::InvalidArgument("an extremal result needs an argmax".into()));
        }
        if let Some(p) = argmaxes.iter().find(|&&p| eval(p) != value) {
            return Err(Error::InvalidArgument(format!("{p} does not attain {value}")));
        }
        argmaxes.sort();
        argmaxes.dedup();
        Ok(Self { value, argmaxes })
    }
}

fn search(r: u64, r1_min: u64, eval: impl Fn(K2Profile) -> BigInt + Sync) -> ExtremalResult {
    let best = (r1_min..=r)
        .into_par_iter()
        .map(|r1| {
            let mut value: Option<BigInt> = None;
            let mut arg = Vec::new();
            for r2 in 0..=r - r1 {
                let p = K2Profile {
                    r1,
                    r2,
                    r3: r - r1 - r2,
                };
                let v = eval(p);
                match value.as_ref().map(|b| v.cmp(b)) {
                    Some(std::cmp::Ordering::Less) => {}
                    Some(std::cmp::Ordering::Equal) => arg.push(p),
                    _ => {
                        value = Some(v);
                        arg = vec![p];
                    }
                }
            }
            (value.expect("at least one triple"), arg)
        })
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => (a.0, [a.1, b.1].concat()),
        })
        .expect("nonempty range");
    let mut argmaxes = best.1;
    argmaxes.sort();
    ExtremalResult {
        value: best.0,
        argmaxes,
    }
}

fn check_rd(r: u64, d: u32) -> Result<()> {
    if r == 0 || d as u64 >= r {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= d <= r - 1, got r = {r}, d = {d}"
        )));
    }
    Ok(())
}

/// Maximum number of `d`-faces over all triples `r1 + r2 + r3 = r`.
pub fn max_faces(r: u64, d: u32) -> Result<ExtremalResult> {
    check_rd(r, d)?;
    let col = BinomColumn::new(d + 2, r + 1);
    Ok(search(r, 0, |p| f_d_with(&col, p)))
}

/// The nearest integer to `num / den`; only odd `den` is accepted, so there
/// is never a tie.
pub fn nearest_integer(num: i64, den: i64) -> Result<i64> {
    if den <= 0 || den % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "nearest integer is defined here only for odd positive denominators, got {den}"
        )));
    }
    Ok((2 * num + den).div_euclid(2 * den))
}

/// `binom(r+1, d+2) + binom(r, d+2) - binom(⌊t⌋, d+2) - binom([t], d+2) - binom(⌈t⌉, d+2)`
/// with `t = (2r + 1) / 3`.
pub fn closed_max_faces(r: u64, d: u32) -> Result<BigInt> {
    check_rd(r, d)?;
    let c = d + 2;
    let n = 2 * as_i64(r) + 1;
    let floor = n.div_euclid(3);
    let ceil = floor + i64::from(n.rem_euclid(3) != 0);
    let nearest = nearest_integer(n, 3)?;
    let r = as_i64(r);
    Ok(gen_binom(r + 1, c) + gen_binom(r, c) - gen_binom(floor, c) - gen_binom(nearest, c) - gen_binom(ceil, c))
}

/// The triples the maximum is expected at, by residue of `r` modulo 3.
pub fn predicted_argmaxes(r: u64) -> Vec<K2Profile> {
    let q = r / 3;
    let t = |r1, r2, r3| K2Profile { r1, r2, r3 };
    let mut v = match r % 3 {
        0 if q >= 1 => vec![t(q, q, q), t(q + 1, q, q - 1), t(q + 1, q - 1, q)],
        0 => vec![],
        1 => vec![t(q + 1, q, q)],
        _ => vec![t(q + 2, q, q), t(q + 1, q + 1, q), t(q + 1, q, q + 1)],
    };
    v.sort();
    v
}

/// `lim f_{2;d}(r) / r^{d+2} = 2(3^{d+1} - 2^{d+1}) / (3^{d+1} (d+2)!)`.
pub fn asympt_max_faces_limit(d: u32) -> BigRational {
    let three = BigInt::from(3).pow(d + 1);
    let two = BigInt::from(2).pow(d + 1);
    let fact: BigInt = (1..=d as u64 + 2).map(BigInt::from).product();
    BigRational::new(BigInt::from(2) * (&three - two), three * fact)
}

fn vertex_count(p: K2Profile) -> u64 {
    p.r1 * p.r2 + p.r1 * p.r3 + p.r2 * p.r3 + p.r1
}

/// Number of pairs (vertex, `d`-face containing it).
pub fn chains0d(p: K2Profile, d: u32) -> BigInt {
    let r = as_i64(p.r());
    BigInt::from(vertex_count(p)) * gen_binom(r - 1, d) + discrepancy(p, d)
}

/// Simplicity test; meaningful only when the two sets intersect.
pub fn is_simple_k2(p: K2Profile) -> Result<bool> {
    if p.r1 == 0 {
        return Err(Error::InvalidArgument("simplicity criterion needs r1 >= 1".into()));
    }
    Ok(p.r2 == 0 || p.r3 == 0 || p.r1 == 1)
}

/// Excess of [`chains0d`] over `binom(r - 1, d) f_0`:
/// `r2 r3 (binom(r - 2, d) - binom(r2 + r3 - 1, d))`.
pub fn discrepancy(p: K2Profile, d: u32) -> BigInt {
    let r = as_i64(p.r());
    let gap = gen_binom(r - 2, d) - gen_binom(as_i64(p.r2 + p.r3) - 1, d);
    BigInt::from(p.r2) * p.r3 * gap
}

/// Maximum discrepancy over `r1 >= 1`, `r1 + r2 + r3 = r`.
pub fn max_discrepancy(r: u64, d: u32) -> Result<ExtremalResult> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("discrepancy needs r >= 2, got {r}")));
    }
    check_rd(r, d)?;
    let col = BinomColumn::new(d, r);
    let base = col.get(as_i64(r) - 2).clone();
    Ok(search(r, 1, |p| {
        let gap = &base - col.get(as_i64(p.r2 + p.r3) - 1);
        BigInt::from(p.r2) * p.r3 * gap
    }))
}

fn rho<F: Float>(d: u32) -> F {
    let two = F::one() + F::one();
    let d_f = F::from(d).expect("d representable");
    (two / (d_f + two)).powf(d_f.recip())
}

fn check_window_args(d: u32, r: u64) -> Result<()> {
    if d == 0 || d as u64 >= r {
        return Err(Error::InvalidArgument(format!("need 1 <= d < r, got d = {d}, r = {r}")));
    }
    Ok(())
}

/// `L(d; r) = ρ (r - 2) + (1 - ρ)(d - 1)/2` with `ρ = (2/(d+2))^{1/d}`.
#[allow(non_snake_case)]
pub fn discrep_lower_L<F: Float>(d: u32, r: u64) -> Result<F> {
    check_window_args(d, r)?;
    let rho = rho::<F>(d);
    let r_f = F::from(r).expect("r representable");
    let d_f = F::from(d).expect("d representable");
    let two = F::one() + F::one();
    Ok(rho * (r_f - two) + (F::one() - rho) * (d_f - F::one()) / two)
}

/// Bounds `[lower, lower + upper_slack]` for `r2 + r3` at a discrepancy
/// maximizer, and the integers `min..=max` inside them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyWindow<F> {
    pub lower: F,
    pub upper_slack: F,
    pub min: i64,
    pub max: i64,
}

impl<F: Float> DiscrepancyWindow<F> {
    pub fn contains(&self, s: i64) -> bool {
        self.min <= s && s <= self.max
    }

    pub fn len(&self) -> usize {
        (self.max - self.min + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ints(&self) -> std::ops::RangeInclusive<i64> {
        self.min..=self.max
    }

    /// Real width of the window, `upper_slack`.
    pub fn width(&self) -> F {
        self.upper_slack
    }
}

fn near_integer<F: Float>(v: F) -> bool {
    let tol = F::from(1e-9)
        .expect("tolerance representable")
        .max(F::epsilon() * F::from(64).expect("64") * v.abs().max(F::one()));
    (v - v.round()).abs() < tol
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact test of `L(d; r) <= n`, via `ρ (2r - d - 3) <= 2n - d + 1`.
fn lower_at_most(d: u32, r: u64, n: i64) -> bool {
    let a = 2 * as_i64(r) - d as i64 - 3;
    let b = 2 * n - d as i64 + 1;
    if a == 0 {
        return b >= 0;
    }
    if b <= 0 {
        return false;
    }
    ratio(2, d as i64 + 2) <= ratio(b, a).pow(d as i32)
}

fn exact_ceil_lower(d: u32, r: u64, guess: i64) -> i64 {
    let mut n = guess;
    while !lower_at_most(d, r, n) {
        n += 1;
    }
    while lower_at_most(d, r, n - 1) {
        n -= 1;
    }
    n
}

/// `[lo, hi]` containing `ρ`, of width `2^-bits`.
fn rho_interval(d: u32, bits: u32) -> (BigRational, BigRational) {
    let target = ratio(2, d as i64 + 2);
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    let half = ratio(1, 2);
    for _ in 0..bits {
        let mid = (&lo + &hi) * &half;
        if mid.pow(d as i32) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// `[lo, hi]` containing `atanh(t)` for rational `0 <= t < 1`.
fn atanh_interval(t: &BigRational, terms: u32) -> (BigRational, BigRational) {
    let t2 = t * t;
    let mut power = t.clone();
    let mut sum = BigRational::zero();
    for j in 0..terms {
        sum += &power / BigInt::from(2 * j + 1);
        power *= &t2;
    }
    let tail = &power / BigInt::from(2 * terms + 1) / (BigRational::one() - t2);
    let hi = &sum + tail;
    (sum, hi)
}

/// `[lo, hi]` containing `ln x` for an integer `x >= 1`.
fn ln_interval(x: u64, terms: u32) -> (BigRational, BigRational) {
    let m = 63 - x.leading_zeros();
    let y = ratio(as_i64(x), 1i64 << m);
    let ty = (&y - BigRational::one()) / (&y + BigRational::one());
    let (ylo, yhi) = atanh_interval(&ty, terms);
    let (l2lo, l2hi) = atanh_interval(&ratio(1, 3), terms);
    let two = BigRational::from_integer(BigInt::from(2));
    let mm = BigRational::from_integer(BigInt::from(m));
    (&two * (ylo + &mm * l2lo), &two * (yhi + mm * l2hi))
}

/// `floor(L + (2d+5)/(2d+4) + d ln(d+2) / (2(2r-d-3)))` by interval
/// refinement, or `None` if the bound could not be separated from an integer.
fn exact_floor_upper(d: u32, r: u64) -> Option<i64> {
    let a = 2 * as_i64(r) - d as i64 - 3;
    let di = d as i64;
    let base = ratio(di - 1, 2) + ratio(2 * di + 5, 2 * di + 4);
    let mut bits = 64;
    while bits <= 4096 {
        let (rlo, rhi) = rho_interval(d, bits);
        let (llo, lhi) = ln_interval(d as u64 + 2, bits / 2 + 8);
        let scale = ratio(a, 2);
        let log_scale = ratio(di, 2 * a);
        let lo = &base + rlo * &scale + llo * &log_scale;
        let hi = &base + rhi * &scale + lhi * &log_scale;
        let (flo, fhi) = (lo.floor().to_integer(), hi.floor().to_integer());
        if flo == fhi {
            return flo.to_i64();
        }
        bits *= 2;
    }
    None
}

/// The window `[⌈L⌉, ⌊L + (2d+5)/(2d+4) + d ln(d+2) / (2(2r-d-3))⌋]`.
///
/// When `2r - d - 3 = 0` (only `d = 1`, `r = 2`) the slack is infinite and the
/// window is capped at `r - 1`, the largest admissible `r2 + r3`. Endpoints
/// that land within `1e-9` of an integer are settled with exact arithmetic.
pub fn discrep_window<F: Float>(d: u32, r: u64) -> Result<DiscrepancyWindow<F>> {
    let lower = discrep_lower_L::<F>(d, r)?;
    let a = 2 * as_i64(r) - d as i64 - 3;
    let min = {
        let guess = lower.ceil().to_i64().ok_or(Error::Overflow("window lower bound"))?;
        if near_integer(lower) {
            exact_ceil_lower(d, r, guess)
        } else {
            guess
        }
    };
    if a == 0 {
        return Ok(DiscrepancyWindow {
            lower,
            upper_slack: F::infinity(),
            min,
            max: as_i64(r) - 1,
        });
    }
    let f = |x: i64| F::from(x).expect("small integer");
    let df = f(d as i64);
    let upper_slack = (f(2) * df + f(5)) / (f(2) * df + f(4)) + df * (df + f(2)).ln() / (f(2) * f(a));
    let upper = lower + upper_slack;
    let guess = upper.floor().to_i64().ok_or(Error::Overflow("window upper bound"))?;
    let max = if near_integer(upper) {
        exact_floor_upper(d, r).unwrap_or_else(|| {
            log::warn!("window upper bound for d = {d}, r = {r} is numerically at an integer");
            guess
        })
    } else {
        guess
    };
    Ok(DiscrepancyWindow {
        lower,
        upper_slack,
        min,
        max,
    })
}

/// The triple `(r - ⌊c/2⌋ - ⌈c/2⌉, ⌊c/2⌋, ⌈c/2⌉)` with `c = ⌈L(d; r)⌉`,
/// returned only when the window holds a single integer.
pub fn exact_location_triple(d: u32, r: u64) -> Result<Option<K2Profile>> {
    let w = discrep_window::<f64>(d, r)?;
    if w.len() != 1 {
        return Ok(None);
    }
    let c = w.min as u64;
    let (r2, r3) = (c / 2, c.div_ceil(2));
    Ok((c < r).then_some(K2Profile { r1: r - c, r2, r3 }))
}

/// `2^{2/d - 2} / ((d + 2)^{2/d - 1} (d - 1)!)`.
pub fn asympt_discrep_limit<F: Float>(d: u32) -> Result<F> {
    if d == 0 {
        return Err(Error::InvalidArgument("discrepancy limit needs d >= 1".into()));
    }
    let f = |x: u64| F::from(x).expect("small integer");
    let df = f(d as u64);
    let e = f(2) / df;
    let fact = (1..d as u64).fold(F::one(), |acc, i| acc * f(i));
    Ok(f(2).powf(e - f(2)) / ((df + f(2)).powf(e - F::one()) * fact))
}

/// Exact ratio `value / r^{d+2}` as a float, for trend checks.
pub fn scaled_ratio(value: &BigInt, r: u64, d: u32) -> f64 {
    let q = BigRational::new(value.clone(), BigInt::from(r).pow(d + 2));
    q.to_f64().unwrap_or(f64::NAN)
}
