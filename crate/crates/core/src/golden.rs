//! Golden checks against published example values, driven by a JSON fixture.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::automorphism::automorphism_count;
use crate::descriptor::{self, BuildOptions, CodeDescriptor};
use crate::distance;
use crate::error::{Error, Result};
use crate::field::Poly;
use crate::parse;
use crate::ring::Ring;

pub const EMBEDDED: &str = include_str!("../fixtures/published.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Singleton,
    Griesmer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "lowercase")]
pub enum Check {
    Factor {
        field: String,
        n: usize,
        factors: Vec<String>,
        idempotents: Vec<String>,
    },
    Automorphisms {
        field: String,
        n: usize,
        count: u64,
    },
    Permutation {
        field: String,
        n: usize,
        sigma: String,
        perm: String,
    },
    Product {
        field: String,
        n: usize,
        sigma: String,
        left: String,
        right: String,
        expected: String,
    },
    Inverse {
        field: String,
        n: usize,
        sigma: String,
        unit: String,
        inverse: String,
    },
    Code {
        code: CodeDescriptor,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<String>>>,
    },
    Bound {
        kind: BoundKind,
        n: usize,
        k: usize,
        delta: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<u32>,
        value: usize,
    },
    Complement {
        field: String,
        n: usize,
        sigma: String,
        generator: String,
        unit: String,
        expected: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub group: String,
    /// Marks a printed value known to be wrong; the check is expected to fail.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    pub checks: Vec<Entry>,
}

impl Fixtures {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED).expect("embedded fixture parses")
    }

    pub fn groups(&self) -> Vec<&str> {
        let mut g: Vec<&str> = Vec::new();
        for e in &self.checks {
            if !g.contains(&e.group.as_str()) {
                g.push(&e.group);
            }
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail(String),
    /// Failed exactly as a recorded erratum predicts.
    Erratum(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub name: String,
    pub group: String,
    #[serde(flatten)]
    pub status: Status,
}

impl Outcome {
    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail(_))
    }
}

fn ring(field: &str, n: usize) -> Result<Ring> {
    Ring::new(Arc::new(parse::field(field)?), n)
}

fn mismatch(what: &str, want: impl std::fmt::Display, got: impl std::fmt::Display) -> Option<String> {
    Some(format!("{what}: expected {want}, got {got}"))
}

/// `None` when the check holds, otherwise a description of the difference.
pub fn evaluate(check: &Check, opts: BuildOptions) -> Result<Option<String>> {
    match check {
        Check::Factor { field, n, factors, idempotents } => {
            let r = ring(field, *n)?;
            let want: Vec<Poly> =
                factors.iter().map(|s| parse::ring_elem(&r, s).map(|a| a.to_poly())).collect::<Result<_>>()?;
            if want != r.factors() {
                let got: Vec<String> = r.factors().iter().map(|p| p.format("x", r.field())).collect();
                return Ok(mismatch("factors", factors.join(", "), got.join(", ")));
            }
            for (i, s) in idempotents.iter().enumerate() {
                let e = parse::ring_elem(&r, s)?;
                if &e != r.idempotent(i + 1)? {
                    return Ok(mismatch(&format!("idempotent {}", i + 1), s, r.format(r.idempotent(i + 1)?)));
                }
            }
            if idempotents.len() != r.r() {
                return Ok(mismatch("number of idempotents", idempotents.len(), r.r()));
            }
            Ok(None)
        }
        Check::Automorphisms { field, n, count } => {
            let got = automorphism_count(&ring(field, *n)?);
            let count = *count as u128;
            Ok((got != count).then(|| format!("count: expected {count}, got {got}")))
        }
        Check::Permutation { field, n, sigma, perm } => {
            let s = parse::skew_ring(field, *n, sigma)?;
            let got = s.sigma().perm_string();
            Ok((&got != perm).then(|| format!("permutation: expected {perm}, got {got}")))
        }
        Check::Product { field, n, sigma, left, right, expected } => {
            let s = parse::skew_ring(field, *n, sigma)?;
            let p = s.mul(&parse::skew_poly(&s, left)?, &parse::skew_poly(&s, right)?);
            let want = parse::skew_poly(&s, expected)?;
            Ok((p != want).then(|| format!("product: expected {}, got {}", s.format(&want), s.format(&p))))
        }
        Check::Inverse { field, n, sigma, unit, inverse } => {
            let s = parse::skew_ring(field, *n, sigma)?;
            let (u, w) = (parse::skew_poly(&s, unit)?, parse::skew_poly(&s, inverse)?);
            let (uw, wu) = (s.mul(&u, &w), s.mul(&w, &u));
            if uw != s.one() {
                return Ok(Some(format!("unit*inverse = {}", s.format(&uw))));
            }
            Ok((wu != s.one()).then(|| format!("inverse*unit = {}", s.format(&wu))))
        }
        Check::Code { code, matrix } => {
            let out = descriptor::build(code, opts)?;
            let res = out.result.as_ref().expect("build fills result");
            if let Some(m) = matrix {
                let f = parse::field(&code.field)?;
                let want: Vec<Vec<Poly>> = m
                    .iter()
                    .map(|r| r.iter().map(|e| parse::zpoly(&f, e)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                let got: Vec<Vec<Poly>> = res
                    .matrix
                    .entries
                    .iter()
                    .map(|r| r.iter().map(|e| parse::zpoly(&f, e)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                if want != got {
                    return Ok(mismatch("generator matrix", format!("{m:?}"), format!("{:?}", res.matrix.entries)));
                }
            }
            let errs = out.mismatches();
            Ok((!errs.is_empty()).then(|| errs.join("; ")))
        }
        Check::Bound { kind, n, k, delta, m, q, value } => {
            let got = match kind {
                BoundKind::Singleton => distance::singleton_bound(*n, *k, *delta)?,
                BoundKind::Griesmer => {
                    let (Some(m), Some(q)) = (m, q) else {
                        return Err(Error::BadParameters("griesmer check needs m and q".into()));
                    };
                    distance::griesmer_bound(*n, *k, *delta, *m, *q)?
                }
            };
            Ok((got != *value).then(|| format!("bound: expected {value}, got {got}")))
        }
        Check::Complement { field, n, sigma, generator, unit, expected } => {
            let s = parse::skew_ring(field, *n, sigma)?;
            let g = parse::skew_poly(&s, generator)?;
            let u = parse::skew_poly(&s, unit)?;
            let got = crate::builder::direct_complement(&s, &g, &u)?;
            let want = parse::skew_poly(&s, expected)?;
            if got != want {
                return Ok(mismatch("complement", s.format(&want), s.format(&got)));
            }
            let sum = s.add(&g, &got);
            Ok((sum != u).then(|| format!("g + g' = {} differs from the unit", s.format(&sum))))
        }
    }
}

/// Runs all checks, or those in group `only`.
pub fn run(fixtures: &Fixtures, only: Option<&str>, opts: BuildOptions) -> Result<Vec<Outcome>> {
    if let Some(g) = only {
        if !fixtures.groups().contains(&g) {
            return Err(Error::BadParameters(format!("unknown group `{g}`")));
        }
    }
    Ok(fixtures
        .checks
        .iter()
        .filter(|e| only.is_none_or(|g| g == e.group))
        .map(|e| {
            let verdict = match evaluate(&e.check, opts) {
                Ok(v) => v,
                Err(err) => Some(format!("error: {err}")),
            };
            let status = match (verdict, &e.erratum) {
                (None, None) => Status::Pass,
                (Some(msg), None) => Status::Fail(msg),
                (Some(msg), Some(note)) => Status::Erratum(format!("{msg} ({note})")),
                (None, Some(_)) => Status::Fail("recorded erratum no longer reproduces".into()),
            };
            Outcome { name: e.name.clone(), group: e.group.clone(), status }
        })
        .collect())
}
