//! Textual forms accepted on the command line.

use flagforge::{FlagFamily, MasterConfig, SetFamily};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A set family written as `"1,2,3;1,2,4"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    sets: Vec<Vec<usize>>,
    family: SetFamily,
}

impl FamilySpec {
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn from_family(family: &SetFamily) -> Self {
        let labels = family.labels();
        let sets = family
            .set_lists()
            .into_iter()
            .map(|s| s.into_iter().map(|i| labels[i - 1]).collect())
            .collect();
        Self {
            sets,
            family: family.clone(),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for (i, part) in s.split(';').enumerate() {
            let mut seen = BTreeSet::new();
            let mut set = Vec::new();
            for tok in part.split(',').map(str::trim) {
                if tok.is_empty() {
                    return Err(format!("set {} has an empty entry", i + 1));
                }
                let e: usize = tok
                    .parse()
                    .map_err(|_| format!("'{tok}' in set {} is not a positive integer", i + 1))?;
                if e == 0 {
                    return Err(format!("set {} contains 0; elements start at 1", i + 1));
                }
                if !seen.insert(e) {
                    return Err(format!("set {} repeats element {e}", i + 1));
                }
                set.push(e);
            }
            set.sort_unstable();
            if let Some(j) = sets.iter().position(|t| *t == set) {
                return Err(format!("sets {} and {} are equal", j + 1, i + 1));
            }
            sets.push(set);
        }
        let family = SetFamily::new(&sets).map_err(|e| e.to_string())?;
        Ok(Self { sets, family })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, set) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, e) in set.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// An operand of `construct`: `point`, `simplex:R`, `cube:D` or `family:SPEC`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectSpec {
    Point,
    Simplex(u32),
    Cube(u32),
    Family(FamilySpec),
}

impl ObjectSpec {
    /// Flag polynomials of orders `1..=ell`.
    pub fn flags(&self, ell: usize, config: &MasterConfig) -> flagforge::Result<FlagFamily> {
        match self {
            Self::Point => Ok(FlagFamily::point(ell)),
            Self::Simplex(r) => FlagFamily::simplex(*r, ell),
            Self::Cube(d) => Ok(FlagFamily::hypercube(*d, ell)),
            Self::Family(spec) => FlagFamily::from_fn(ell, |j| {
                flagforge::minkflag::flag_minkowski_with(spec.family(), j, config)
            }),
        }
    }
}

impl FromStr for ObjectSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "point" {
            return Ok(Self::Point);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("'{s}' is not point, simplex:R, cube:D or family:SPEC"))?;
        let count = |what: &str| -> Result<u32, String> {
            arg.trim()
                .parse()
                .map_err(|_| format!("{what} needs a nonnegative integer, got '{arg}'"))
        };
        match kind {
            "simplex" => match count("simplex")? {
                0 => Err("simplex:0 is empty; use simplex:1 for a point".into()),
                r => Ok(Self::Simplex(r)),
            },
            "cube" => Ok(Self::Cube(count("cube")?)),
            "family" => Ok(Self::Family(arg.parse()?)),
            _ => Err(format!("unknown object kind '{kind}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_families() {
        let f: FamilySpec = "1,2,3; 1,2,4".parse().unwrap();
        assert_eq!(f.to_string(), "1,2,3;1,2,4");
        assert_eq!(f.family().k(), 2);
        assert_eq!(f.family().r(), 4);
        let g: FamilySpec = "3,1;2".parse().unwrap();
        assert_eq!(g.sets(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn rejects_bad_families() {
        for bad in ["", "1,,2", "1,a", "0,1", "1,2,1", "1,2;2,1", "1;;2", "1,2;"] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad:?}");
        }
        let msg = "1,2;2,1".parse::<FamilySpec>().unwrap_err();
        assert!(msg.contains("equal"), "{msg}");
    }

    #[test]
    fn round_trips_through_set_family() {
        let f: FamilySpec = "5,7;7,9".parse().unwrap();
        assert_eq!(FamilySpec::from_family(f.family()), f);
    }

    #[test]
    fn parses_objects() {
        assert_eq!("point".parse::<ObjectSpec>().unwrap(), ObjectSpec::Point);
        assert_eq!("simplex:3".parse::<ObjectSpec>().unwrap(), ObjectSpec::Simplex(3));
        assert_eq!("cube:2".parse::<ObjectSpec>().unwrap(), ObjectSpec::Cube(2));
        assert!(matches!(
            "family:1,2;1,3".parse::<ObjectSpec>().unwrap(),
            ObjectSpec::Family(_)
        ));
        for bad in ["simplex:0", "simplex", "cube:-1", "prism:2", "family:1;1"] {
            assert!(bad.parse::<ObjectSpec>().is_err(), "{bad:?}");
        }
    }
}
