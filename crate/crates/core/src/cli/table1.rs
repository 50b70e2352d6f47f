//! Configuration metadata next to the published values, followed by the
//! solver's check of every bundled example.

use std::fmt;

use num_rational::Ratio;

use crate::configs::{cycle_formula, format_ratio, ConfigTemplate, TemplateName, REFERENCE_ROWS};
use crate::fixtures;
use crate::solver::{verify_draw_claims, Claim, ClaimsError, ClaimsReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    pub markers: usize,
    pub groups: usize,
    pub reduction: isize,
    pub ratio: Ratio<usize>,
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>7} {:>6} {:>9} {:>5}",
            self.markers,
            self.groups,
            self.reduction,
            format_ratio(self.ratio)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetadataRow {
    pub name: TemplateName,
    pub computed: Counts,
    pub published: Counts,
}

impl MetadataRow {
    pub fn matches(&self) -> bool {
        self.computed == self.published
    }
}

/// Catalog rows for the named configurations and the cycle families
/// `C_n`, `C_n/Line` for n = 3..=8.
pub fn metadata_rows() -> Vec<MetadataRow> {
    let computed = |name| {
        let m = ConfigTemplate::get(name).metadata();
        Counts {
            markers: m.num_markers,
            groups: m.num_groups,
            reduction: m.reduction,
            ratio: m.ratio,
        }
    };
    let mut rows: Vec<MetadataRow> = REFERENCE_ROWS
        .iter()
        .map(|r| {
            let ratio = Ratio::new(r.markers, r.groups);
            debug_assert_eq!(format_ratio(ratio), r.ratio);
            MetadataRow {
                name: r.name,
                computed: computed(r.name),
                published: Counts {
                    markers: r.markers,
                    groups: r.groups,
                    reduction: r.reduction,
                    ratio,
                },
            }
        })
        .collect();
    for line in [false, true] {
        for n in 3..=8 {
            let name = if line {
                TemplateName::CycleNLine(n)
            } else {
                TemplateName::CycleN(n)
            };
            let (markers, groups) = cycle_formula(n, line);
            rows.push(MetadataRow {
                name,
                computed: computed(name),
                published: Counts {
                    markers,
                    groups,
                    reduction: 2 * groups as isize - markers as isize,
                    ratio: Ratio::new(markers, groups),
                },
            });
        }
    }
    rows
}

#[derive(Debug)]
pub struct Table1 {
    pub rows: Vec<MetadataRow>,
    pub claims: Result<ClaimsReport, ClaimsError>,
}

impl Table1 {
    /// Every row matches and no example turned out to be a Black win.
    pub fn ok(&self) -> bool {
        self.rows.iter().all(MetadataRow::matches) && self.claims.is_ok()
    }
}

pub fn table1_report() -> Table1 {
    let claims: Vec<Claim> = fixtures::all().iter().map(Claim::from).collect();
    Table1 {
        rows: metadata_rows(),
        claims: verify_draw_claims(&claims),
    }
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<18} {:>7} {:>6} {:>9} {:>5} flag",
            "configuration", "markers", "groups", "reduction", "ratio"
        )?;
        for row in &self.rows {
            if row.matches() {
                writeln!(f, "{:<18} {} MATCH", row.name.to_string(), row.computed)?;
            } else {
                writeln!(
                    f,
                    "{:<18} {} MISMATCH (published {})",
                    row.name.to_string(),
                    row.computed,
                    row.published.to_string().split_whitespace().collect::<Vec<_>>().join(" ")
                )?;
            }
        }
        writeln!(f)?;
        match &self.claims {
            Ok(report) => write!(f, "{report}"),
            Err(ClaimsError::BlackWin { fixtures, report }) => {
                write!(f, "{report}")?;
                writeln!(f, "ERROR: claimed draws are Black wins: {}", fixtures.join(", "))
            }
            Err(e) => writeln!(f, "ERROR: {e}"),
        }
    }
}
