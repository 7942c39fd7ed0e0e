//! Families used by the verification command and the test suites.

use crate::facelattice::SetFamily;
use crate::masterpoly::RVector;
use crate::minkflag::K2Profile;

/// Every two-set profile with `1 <= r <= max_r` and both sets nonempty.
pub fn k2_profiles(max_r: u64) -> Vec<K2Profile> {
    (1..=max_r).flat_map(K2Profile::all_with_r).collect()
}

pub fn k2_families(max_r: u64) -> Vec<SetFamily> {
    k2_profiles(max_r)
        .into_iter()
        .map(|p| p.family().expect("profiles from all_with_r are realizable"))
        .collect()
}

/// Three-set families with every pattern count 0 or 1 and no empty set.
pub fn k3_binary_families() -> Vec<SetFamily> {
    (1u32..1 << 7)
        .filter_map(|mask| {
            let counts: Vec<u64> = (0..7).map(|i| u64::from(mask >> i & 1)).collect();
            RVector::new(3, counts).ok()?.realize().ok()
        })
        .filter(|f| f.k() == 3 && f.sets().iter().all(|&s| s != 0))
        .collect()
}

/// A few hand-picked three-set families with repeated patterns.
pub fn k3_representatives() -> Vec<SetFamily> {
    let raw: [&[&[usize]]; 5] = [
        &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]],
        &[&[1, 2], &[2, 3], &[1, 3]],
        &[&[1, 2, 3, 4], &[1, 2], &[3, 4, 5]],
        &[&[1, 2, 3], &[1, 4, 5], &[2, 4]],
        &[&[1, 2, 3, 4, 5], &[1, 2, 3], &[1, 4]],
    ];
    raw.iter()
        .map(|sets| SetFamily::new(sets).expect("valid literal family"))
        .collect()
}

/// Families paired with the largest chain length to check them at.
pub fn verification_corpus() -> Vec<(SetFamily, usize)> {
    let mut out: Vec<(SetFamily, usize)> = k2_families(6).into_iter().map(|f| (f, 3)).collect();
    out.extend(k3_binary_families().into_iter().map(|f| (f, 2)));
    out.extend(k3_representatives().into_iter().map(|f| (f, 2)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let expected: usize = (1..=6u64)
            .map(|r| {
                let all = (r + 1) * (r + 2) / 2;
                // all triples except (0, r, 0) and (0, 0, r)
                (all - 2) as usize
            })
            .sum();
        assert_eq!(k2_profiles(6).len(), expected);
        let k3 = k3_binary_families();
        assert!(k3.iter().all(|f| f.k() == 3 && f.r() <= 7));
        assert!(k3.iter().any(|f| f.r() == 7));
        assert!(k3_representatives().iter().all(|f| f.r() <= 5));
    }
}
