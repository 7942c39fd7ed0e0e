//! Serialized forms of command results.

use flagforge::Poly;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// A polynomial as JSON: named variables and terms in canonical
/// (lexicographic exponent) order, coefficients as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDocument {
    pub variables: Vec<String>,
    pub terms: Vec<TermDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub exp: Vec<u32>,
    pub coef: String,
}

/// `prefix1, .., prefixN`.
pub fn variable_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl PolynomialDocument {
    /// Panics if `variables` does not match the variable count.
    pub fn new(poly: &Poly, variables: Vec<String>) -> Self {
        assert_eq!(variables.len(), poly.nvars(), "one name per variable");
        let terms = poly
            .terms()
            .map(|(e, c)| TermDocument {
                exp: e.clone(),
                coef: c.to_string(),
            })
            .collect();
        Self { variables, terms }
    }

    /// Inverse of [`PolynomialDocument::new`]. Rejects anything `new` would
    /// not produce: unsorted or repeated exponents, zero or non-canonical
    /// coefficients, and exponent vectors of the wrong length.
    pub fn to_poly(&self) -> Result<Poly, String> {
        let n = self.variables.len();
        let mut out = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            if t.exp.len() != n {
                return Err(format!("term {i} has {} exponents for {n} variables", t.exp.len()));
            }
            if i > 0 && self.terms[i - 1].exp >= t.exp {
                return Err(format!("term {i} is out of canonical order"));
            }
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| format!("term {i}: '{}' is not an integer", t.coef))?;
            if c == BigInt::from(0) || c.to_string() != t.coef {
                return Err(format!("term {i}: '{}' is not a canonical nonzero integer", t.coef));
            }
            out.push((t.exp.clone(), c));
        }
        Poly::from_terms(n, out).map_err(|e| e.to_string())
    }

    /// One column per variable exponent, then the coefficient.
    pub fn table(&self) -> Table {
        let mut header = self.variables.clone();
        header.push("coef".into());
        let rows = self
            .terms
            .iter()
            .map(|t| {
                let mut row: Vec<String> = t.exp.iter().map(u32::to_string).collect();
                row.push(t.coef.clone());
                row
            })
            .collect();
        Table { header, rows }
    }
}

/// A flat table for `--format csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
    }
}
