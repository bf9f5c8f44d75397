//! Result documents, rendered as plain text or JSON from the same values.
//! Exact numbers are always strings so JSON readers never round them.

use std::fmt::Write;

use serde::Serialize;

use crate::matroid::BivariatePolynomial;
use crate::quasipoly::RationalQuasipolynomial;
use crate::theorems::VerificationReport;

#[derive(Debug, Serialize)]
pub struct Constituent {
    pub residue: usize,
    pub modulus: usize,
    pub coefficients: Vec<String>,
    pub polynomial: String,
}

#[derive(Debug, Serialize)]
pub struct PolyDoc {
    pub graph: String,
    pub mode: &'static str,
    pub cyclomatic: usize,
    pub period: usize,
    pub degree: usize,
    pub leading_coefficient: Option<String>,
    /// Unbalanced graph whose fit collapsed to a single polynomial.
    pub unbalanced_period_one: bool,
    pub constituents: Vec<Constituent>,
}

impl PolyDoc {
    pub fn new(graph: String, mode: &'static str, cyclomatic: usize, balanced: bool, q: &RationalQuasipolynomial) -> Self {
        let period = q.period();
        PolyDoc {
            graph,
            mode,
            cyclomatic,
            period,
            degree: q.degree(),
            leading_coefficient: q.leading_coefficient().map(|c| c.to_string()),
            unbalanced_period_one: !balanced && period == 1,
            constituents: (0..period)
                .map(|residue| Constituent {
                    residue,
                    modulus: period,
                    coefficients: q.coefficients(residue).iter().map(|c| c.to_string()).collect(),
                    polynomial: q.constituent(residue).to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ModflowDoc {
    pub graph: String,
    pub group: String,
    pub order: String,
    pub total: String,
    pub nowhere_zero: String,
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub x: usize,
    pub y: usize,
    pub coefficient: String,
}

#[derive(Debug, Serialize)]
pub struct TutteDoc {
    pub graph: String,
    pub polynomial: String,
    pub terms: Vec<Term>,
}

impl TutteDoc {
    pub fn new(graph: String, t: &BivariatePolynomial) -> Self {
        TutteDoc {
            graph,
            polynomial: t.to_string(),
            terms: t
                .terms()
                .into_iter()
                .map(|((x, y), c)| Term {
                    x,
                    y,
                    coefficient: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TcoDoc {
    pub graph: String,
    pub totally_cyclic: String,
}

#[derive(Debug, Serialize)]
pub struct EvalDoc {
    pub graph: String,
    pub mode: &'static str,
    pub at: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct RecordDoc {
    pub params: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub check: &'static str,
    pub pass: bool,
    pub records: Vec<RecordDoc>,
}

impl From<&VerificationReport> for ReportDoc {
    fn from(r: &VerificationReport) -> Self {
        ReportDoc {
            check: r.check.name(),
            pass: r.passed(),
            records: r
                .records
                .iter()
                .map(|rec| RecordDoc {
                    params: rec.params.clone(),
                    left: rec.left.to_string(),
                    right: rec.right.to_string(),
                    pass: rec.pass,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub graph: String,
    pub pass: bool,
    pub reports: Vec<ReportDoc>,
    pub skipped: Vec<String>,
}

/// A command result that can be printed either way.
pub trait Document: Serialize {
    fn plain(&self) -> String;

    fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
            s.push('\n');
            s
        } else {
            self.plain()
        }
    }
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Document for PolyDoc {
    fn plain(&self) -> String {
        let mut s = String::new();
        writeln!(s, "graph: {}", self.graph).unwrap();
        writeln!(s, "mode: {}", self.mode).unwrap();
        writeln!(s, "cyclomatic: {}", self.cyclomatic).unwrap();
        writeln!(s, "period: {}", self.period).unwrap();
        writeln!(s, "degree: {}", self.degree).unwrap();
        match &self.leading_coefficient {
            Some(c) => writeln!(s, "leading coefficient: {c}").unwrap(),
            None => writeln!(s, "leading coefficient: differs by residue").unwrap(),
        }
        if self.unbalanced_period_one {
            writeln!(s, "note: unbalanced graph with period 1").unwrap();
        }
        for c in &self.constituents {
            writeln!(
                s,
                "k = {} mod {}: [{}]  {}",
                c.residue,
                c.modulus,
                c.coefficients.join(", "),
                c.polynomial
            )
            .unwrap();
        }
        s
    }
}

impl Document for ModflowDoc {
    fn plain(&self) -> String {
        format!(
            "graph: {}\ngroup: {}\norder: {}\ntotal: {}\nnowhere-zero: {}\n",
            self.graph, self.group, self.order, self.total, self.nowhere_zero
        )
    }
}

impl Document for TutteDoc {
    fn plain(&self) -> String {
        let mut s = format!("graph: {}\ntutte: {}\n", self.graph, self.polynomial);
        for t in &self.terms {
            writeln!(s, "  x^{} y^{}: {}", t.x, t.y, t.coefficient).unwrap();
        }
        s
    }
}

impl Document for TcoDoc {
    fn plain(&self) -> String {
        format!("graph: {}\ntotally cyclic orientations: {}\n", self.graph, self.totally_cyclic)
    }
}

impl Document for EvalDoc {
    fn plain(&self) -> String {
        format!(
            "graph: {}\nmode: {}\nat: {}\nvalue: {}\n",
            self.graph, self.mode, self.at, self.value
        )
    }
}

impl Document for VerifyDoc {
    fn plain(&self) -> String {
        let mut s = format!("graph: {}\n", self.graph);
        for r in &self.reports {
            writeln!(s, "{}: {}", r.check, pass_word(r.pass)).unwrap();
            for rec in &r.records {
                let rel = if rec.pass { "=" } else { "!=" };
                writeln!(s, "  {}: {} {} {}", rec.params, rec.left, rel, rec.right).unwrap();
            }
        }
        for name in &self.skipped {
            writeln!(s, "{name}: skipped (graph is not all-positive)").unwrap();
        }
        writeln!(s, "overall: {}", pass_word(self.pass)).unwrap();
        s
    }
}
