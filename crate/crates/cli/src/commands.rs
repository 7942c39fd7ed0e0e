//! One function per subcommand. Each returns a [`Report`] holding both the
//! JSON and the CSV rendering.

use crate::document::{variable_names, PolynomialDocument, Table};
use crate::spec::{FamilySpec, ObjectSpec};
use crate::Failure;
use flagforge::corpus::verification_corpus;
use flagforge::facelattice::{count_chains, enumerate_faces_with, flag_poly_by_counting_with};
use flagforge::masterpoly::{master_family_with, master_lattice};
use flagforge::minkflag::{f_poly_minkowski_with, flag_minkowski_with};
use flagforge::{
    discrep_window, max_discrepancy, max_faces, strict_chain_poly, ExtremalResult, FlagFamily, MasterConfig, Poly,
    SetFamily,
};
use num_bigint::BigInt;
use serde::Serialize;

pub struct Report {
    pub json: String,
    pub table: Table,
    /// Set by `verify` when the theorem and the oracle disagree.
    pub mismatch: bool,
}

impl Report {
    fn new<T: Serialize>(doc: &T, table: Table) -> Self {
        Self {
            json: serde_json::to_string_pretty(doc).expect("documents serialize"),
            table,
            mismatch: false,
        }
    }

    fn polynomial(doc: PolynomialDocument) -> Self {
        let table = doc.table();
        Self::new(&doc, table)
    }
}

pub fn flag(spec: &FamilySpec, ell: usize, phi: bool, strict: bool, cfg: &MasterConfig) -> Result<Report, Failure> {
    let f = spec.family();
    let mut poly: Poly = if strict {
        let flags: FlagFamily = FlagFamily::from_fn(ell, |j| flag_minkowski_with(f, j, cfg))?;
        strict_chain_poly(&flags, ell)?
    } else {
        flag_minkowski_with(f, ell, cfg)?
    };
    if phi {
        poly = poly.phi_transform();
    }
    let prefix = if phi { "y" } else { "x" };
    Ok(Report::polynomial(PolynomialDocument::new(
        &poly,
        variable_names(prefix, ell),
    )))
}

pub fn fpoly(spec: &FamilySpec, cfg: &MasterConfig) -> Result<Report, Failure> {
    let poly: Poly = f_poly_minkowski_with(spec.family(), cfg)?;
    Ok(Report::polynomial(PolynomialDocument::new(&poly, vec!["x".into()])))
}

#[derive(Serialize)]
struct MasterDoc {
    k: u32,
    family: Vec<Vec<usize>>,
    dim: usize,
    f_vector: Vec<u64>,
    chains: Vec<ChainCount>,
}

#[derive(Serialize)]
struct ChainCount {
    ell: usize,
    count: u128,
}

pub fn master(k: u32, ell: usize, cfg: &MasterConfig) -> Result<Report, Failure> {
    let family = master_family_with(k, cfg)?;
    let lattice = master_lattice(k, cfg)?;
    let chains = (1..=ell)
        .map(|j| {
            Ok(ChainCount {
                ell: j,
                count: count_chains(&lattice, j)?,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let doc = MasterDoc {
        k,
        family: family.family().set_lists(),
        dim: lattice.dim(),
        f_vector: lattice.f_vector(),
        chains,
    };
    let mut table = Table::new(&["kind", "index", "count"]);
    for (d, n) in doc.f_vector.iter().enumerate() {
        table.push(vec!["faces".into(), d.to_string(), n.to_string()]);
    }
    for c in &doc.chains {
        table.push(vec!["chains".into(), c.ell.to_string(), c.count.to_string()]);
    }
    Ok(Report::new(&doc, table))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Op {
    Prism,
    Pyramid,
    Product,
    Join,
    Hypercube,
}

pub struct ConstructArgs<'a> {
    pub op: Op,
    pub of: Option<&'a ObjectSpec>,
    pub with: Option<&'a ObjectSpec>,
    pub ell: usize,
    pub d: Option<u32>,
}

fn operand<'a>(o: Option<&'a ObjectSpec>, op: Op, flag: &str) -> Result<&'a ObjectSpec, Failure> {
    o.ok_or_else(|| Failure::Usage(format!("--op {} needs {flag}", format!("{op:?}").to_lowercase())))
}

pub fn construct(args: ConstructArgs<'_>, cfg: &MasterConfig) -> Result<Report, Failure> {
    let ell = args.ell;
    let need = |o, flag| operand(o, args.op, flag);
    let flags = match args.op {
        Op::Hypercube => {
            let d = args
                .d
                .ok_or_else(|| Failure::Usage("--op hypercube needs --d".into()))?;
            FlagFamily::hypercube(d, ell)
        }
        Op::Prism => need(args.of, "--of")?.flags(ell, cfg)?.prism(),
        Op::Pyramid => need(args.of, "--of")?.flags(ell, cfg)?.pyramid()?,
        Op::Product | Op::Join => {
            let a = need(args.of, "--of")?.flags(ell, cfg)?;
            let b = need(args.with, "--with")?.flags(ell, cfg)?;
            if args.op == Op::Product {
                a.product(&b)?
            } else {
                a.free_join(&b)?
            }
        }
    };
    let poly = flags.order(ell)?;
    Ok(Report::polynomial(PolynomialDocument::new(
        poly,
        variable_names("x", ell),
    )))
}

#[derive(Serialize)]
struct WindowDoc {
    lower: f64,
    /// Absent when the upper bound is infinite.
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<f64>,
    min: i64,
    max: i64,
}

#[derive(Serialize)]
struct ExtremalDoc {
    r: u64,
    d: u32,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    argmaxes: Option<Vec<[u64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<WindowDoc>,
}

fn extremal_report(r: u64, d: u32, res: ExtremalResult, argmax: bool, window: Option<WindowDoc>) -> Report {
    let doc = ExtremalDoc {
        r,
        d,
        value: res.value.to_string(),
        argmaxes: argmax.then(|| res.argmaxes.iter().map(|p| [p.r1, p.r2, p.r3]).collect()),
        window,
    };
    let mut header = vec!["r", "d", "value"];
    if argmax {
        header.extend(["r1", "r2", "r3"]);
    }
    if doc.window.is_some() {
        header.extend(["window_min", "window_max"]);
    }
    let mut table = Table::new(&header);
    let base = vec![r.to_string(), d.to_string(), doc.value.clone()];
    let tail: Vec<String> = doc
        .window
        .iter()
        .flat_map(|w| [w.min.to_string(), w.max.to_string()])
        .collect();
    let rows: Vec<Option<&[u64; 3]>> = match &doc.argmaxes {
        Some(a) => a.iter().map(Some).collect(),
        None => vec![None],
    };
    for p in rows {
        let mut row = base.clone();
        row.extend(p.into_iter().flat_map(|p| p.map(|x| x.to_string())));
        row.extend(tail.iter().cloned());
        table.push(row);
    }
    Report::new(&doc, table)
}

pub fn max_faces_cmd(r: u64, d: u32, argmax: bool) -> Result<Report, Failure> {
    Ok(extremal_report(r, d, max_faces(r, d)?, argmax, None))
}

pub fn discrepancy_cmd(r: u64, d: u32, argmax: bool, window: bool) -> Result<Report, Failure> {
    let res = max_discrepancy(r, d)?;
    let window = if window {
        let w = discrep_window::<f64>(d, r)?;
        let upper = w.lower + w.upper_slack;
        Some(WindowDoc {
            lower: w.lower,
            upper: upper.is_finite().then_some(upper),
            min: w.min,
            max: w.max,
        })
    } else {
        None
    };
    Ok(extremal_report(r, d, res, argmax, window))
}

#[derive(Serialize)]
struct VerifyDoc {
    ok: bool,
    families: Vec<FamilyCheck>,
}

#[derive(Serialize)]
struct FamilyCheck {
    family: String,
    checks: Vec<OrderCheck>,
}

#[derive(Serialize)]
struct OrderCheck {
    ell: usize,
    theorem_chains: String,
    oracle_chains: String,
    /// `"theorem = oracle"`, or `"theorem != oracle"`.
    chains: String,
    polynomials_equal: bool,
}

fn check_family(family: &SetFamily, max_ell: usize, cfg: &MasterConfig) -> Result<FamilyCheck, Failure> {
    let lattice = enumerate_faces_with(family, &cfg.oracle)?;
    let checks = (1..=max_ell)
        .map(|ell| {
            let theorem: Poly = flag_minkowski_with(family, ell, cfg)?;
            let oracle: Poly = flag_poly_by_counting_with(family, ell, &cfg.oracle)?;
            let a = theorem.coefficient_sum();
            let b = count_chains(&lattice, ell)?;
            let rel = if a == BigInt::from(b) { "=" } else { "!=" };
            Ok(OrderCheck {
                ell,
                chains: format!("{a} {rel} {b}"),
                theorem_chains: a.to_string(),
                oracle_chains: b.to_string(),
                polynomials_equal: theorem == oracle,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let check = FamilyCheck {
        family: FamilySpec::from_family(family).to_string(),
        checks,
    };
    log::info!("verified {}", check.family);
    Ok(check)
}

impl OrderCheck {
    fn ok(&self) -> bool {
        self.polynomials_equal && self.theorem_chains == self.oracle_chains
    }
}

/// `families` pairs each family with the largest chain length to check.
pub fn verify(families: &[(SetFamily, usize)], cfg: &MasterConfig) -> Result<Report, Failure> {
    let families = families
        .iter()
        .map(|(f, ell)| check_family(f, *ell, cfg))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(verify_report(families))
}

fn verify_report(families: Vec<FamilyCheck>) -> Report {
    let ok = families.iter().all(|f| f.checks.iter().all(OrderCheck::ok));
    let mut table = Table::new(&["family", "ell", "chains", "polynomials_equal"]);
    for f in &families {
        for c in &f.checks {
            table.push(vec![
                f.family.clone(),
                c.ell.to_string(),
                c.chains.clone(),
                c.polynomials_equal.to_string(),
            ]);
        }
    }
    let mut report = Report::new(&VerifyDoc { ok, families }, table);
    report.mismatch = !ok;
    report
}

/// The built-in corpus, optionally with every chain length capped.
pub fn corpus(cap: Option<usize>) -> Vec<(SetFamily, usize)> {
    verification_corpus()
        .into_iter()
        .map(|(f, ell)| (f, cap.map_or(ell, |c| c.min(ell))))
        .collect()
}
