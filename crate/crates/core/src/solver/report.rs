//! Solver cross-check of positions claimed to be draws.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{solve, Pruning, SolveError, Verdict};
use crate::board::Position;
use crate::configs::{check_certificate, DrawCertificate};
use crate::fixtures::Fixture;

/// A position claimed to be at most a draw, with an optional proof.
#[derive(Debug, Clone)]
pub struct Claim {
    pub name: String,
    pub position: Position,
    pub certificate: Option<DrawCertificate>,
}

impl From<&Fixture> for Claim {
    fn from(f: &Fixture) -> Claim {
        Claim {
            name: f.name.to_string(),
            position: f.position(),
            certificate: Some(f.certificate()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRow {
    pub fixture: String,
    pub verdict: Verdict,
    pub nodes_none: u64,
    pub nodes_hj: u64,
    pub nodes_setmatch: u64,
    /// "Valid", "Invalid (n violations)" or "none".
    pub certificate_status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    pub rows: Vec<ClaimRow>,
}

const HEADER_NOTE: &str = "# nodes = every position the search function was called on, root included;\n\
# a move completing a line is scored at its parent and not counted.";

impl ClaimsReport {
    pub fn black_wins(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| r.verdict == Verdict::BlackWin)
            .map(|r| r.fixture.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

impl fmt::Display for ClaimsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER_NOTE}")?;
        let width = self
            .rows
            .iter()
            .map(|r| r.fixture.len())
            .chain(["fixture".len()])
            .max()
            .unwrap_or(0);
        writeln!(
            f,
            "{:<width$}  {:<8}  {:>10}  {:>10}  {:>14}  certificate_status",
            "fixture", "verdict", "nodes_none", "nodes_hj", "nodes_setmatch"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<width$}  {:<8}  {:>10}  {:>10}  {:>14}  {}",
                r.fixture,
                r.verdict.to_string(),
                r.nodes_none,
                r.nodes_hj,
                r.nodes_setmatch,
                r.certificate_status
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ClaimsError {
    #[error("{fixture}: {source}")]
    Solve {
        fixture: String,
        #[source]
        source: SolveError,
    },
    #[error("claimed draw is a Black win: {}", .fixtures.join(", "))]
    BlackWin {
        fixtures: Vec<String>,
        report: ClaimsReport,
    },
}

/// Solves every claim under all three pruning modes and re-checks its
/// certificate. Any Black win is returned as an error carrying the report.
pub fn verify_draw_claims(claims: &[Claim]) -> Result<ClaimsReport, ClaimsError> {
    let mut rows = Vec::with_capacity(claims.len());
    for claim in claims {
        let run = |p| {
            solve(&claim.position, p).map_err(|source| ClaimsError::Solve {
                fixture: claim.name.clone(),
                source,
            })
        };
        let (verdict, none) = run(Pruning::None)?;
        let (_, hj) = run(Pruning::HjPairing)?;
        let (_, sm) = run(Pruning::SetMatching)?;
        let certificate_status = match &claim.certificate {
            None => "none".to_string(),
            Some(cert) => {
                let result = check_certificate(cert);
                if result.is_valid() {
                    "Valid".to_string()
                } else {
                    format!("Invalid ({} violations)", result.violations.len())
                }
            }
        };
        rows.push(ClaimRow {
            fixture: claim.name.clone(),
            verdict,
            nodes_none: none.nodes_examined,
            nodes_hj: hj.nodes_examined,
            nodes_setmatch: sm.nodes_examined,
            certificate_status,
        });
    }
    let report = ClaimsReport { rows };
    let fixtures: Vec<String> = report.black_wins().iter().map(|s| s.to_string()).collect();
    if fixtures.is_empty() {
        Ok(report)
    } else {
        Err(ClaimsError::BlackWin { fixtures, report })
    }
}
