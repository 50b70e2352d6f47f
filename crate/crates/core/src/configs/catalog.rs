//! The named drawing configurations and the cycle generators.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::setmatch::{Covering, Label, MatchingSet, Permutation, Remainder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateName {
    Triangle,
    Square,
    CycleN(usize),
    TriangleLine,
    SquareLine,
    CycleNLine(usize),
    BiTriangle,
    BiTriangleX,
    FlatStar,
    BiTriangleLine,
    BiTriangleBiLine,
    BiTriangleXLine,
    FlatStarLine,
    TriTriangleX,
}

impl TemplateName {
    /// The twelve named configurations, in catalog order.
    pub const NAMED: [TemplateName; 12] = [
        TemplateName::Triangle,
        TemplateName::Square,
        TemplateName::TriangleLine,
        TemplateName::SquareLine,
        TemplateName::BiTriangle,
        TemplateName::BiTriangleX,
        TemplateName::FlatStar,
        TemplateName::BiTriangleLine,
        TemplateName::BiTriangleBiLine,
        TemplateName::BiTriangleXLine,
        TemplateName::FlatStarLine,
        TemplateName::TriTriangleX,
    ];
}

impl fmt::Display for TemplateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplateName::Triangle => f.write_str("Triangle"),
            TemplateName::Square => f.write_str("Square"),
            TemplateName::CycleN(n) => write!(f, "C_{n}"),
            TemplateName::TriangleLine => f.write_str("Triangle/Line"),
            TemplateName::SquareLine => f.write_str("Square/Line"),
            TemplateName::CycleNLine(n) => write!(f, "C_{n}/Line"),
            TemplateName::BiTriangle => f.write_str("BiTriangle"),
            TemplateName::BiTriangleX => f.write_str("BiTriangleX"),
            TemplateName::FlatStar => f.write_str("FlatStar"),
            TemplateName::BiTriangleLine => f.write_str("BiTriangle/Line"),
            TemplateName::BiTriangleBiLine => f.write_str("BiTriangle/BiLine"),
            TemplateName::BiTriangleXLine => f.write_str("BiTriangleX/Line"),
            TemplateName::FlatStarLine => f.write_str("FlatStar/Line"),
            TemplateName::TriTriangleX => f.write_str("TriTriangleX"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown configuration {0:?}")]
pub struct UnknownTemplate(pub String);

impl FromStr for TemplateName {
    type Err = UnknownTemplate;

    /// Accepts the display names and loose spellings such as `bitrianglex-line`,
    /// `C5`, `cyclen(5)` or `c_5/line`; case and punctuation are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        if let Some(name) = TemplateName::NAMED
            .iter()
            .find(|t| normalize(&t.to_string()) == key)
        {
            return Ok(*name);
        }
        let cycle = |rest: &str| -> Option<TemplateName> {
            let (digits, line) = match rest.strip_suffix("line") {
                Some(d) => (d, true),
                None => (rest, false),
            };
            let n: usize = digits.parse().ok()?;
            (n >= 3).then_some(if line {
                TemplateName::CycleNLine(n)
            } else {
                TemplateName::CycleN(n)
            })
        };
        key.strip_prefix("cyclen")
            .and_then(cycle)
            .or_else(|| key.strip_prefix('c').and_then(cycle))
            .ok_or_else(|| UnknownTemplate(s.to_string()))
    }
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

impl Serialize for TemplateName {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TemplateName {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Counts derived from a configuration's matching set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metadata {
    pub num_markers: usize,
    pub num_groups: usize,
    pub reduction: isize,
    pub ratio: Ratio<usize>,
}

/// An abstract configuration: lettered markers, groups over them, and the
/// matching set with its symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigTemplate {
    pub name: TemplateName,
    pub set: MatchingSet<Label>,
}

impl ConfigTemplate {
    pub fn get(name: TemplateName) -> ConfigTemplate {
        let set = match name {
            TemplateName::CycleN(n) => cycle(n, false),
            TemplateName::CycleNLine(n) => cycle(n, true),
            _ => {
                let (groups, coverings, symmetry) = notation(name);
                MatchingSet::from_notation(groups, coverings, symmetry)
                    .expect("catalog notation is well formed")
            }
        };
        ConfigTemplate { name, set }
    }

    pub fn labels(&self) -> &BTreeSet<Label> {
        &self.set.markers
    }

    pub fn groups(&self) -> &[Vec<Label>] {
        &self.set.groups
    }

    pub fn metadata(&self) -> Metadata {
        Metadata {
            num_markers: self.set.num_markers(),
            num_groups: self.set.num_groups(),
            reduction: self.set.reduction(),
            ratio: Ratio::new(self.set.num_markers(), self.set.num_groups()),
        }
    }
}

/// All named configurations.
pub fn catalog() -> Vec<ConfigTemplate> {
    TemplateName::NAMED.iter().map(|&n| ConfigTemplate::get(n)).collect()
}

fn notation(name: TemplateName) -> (&'static str, &'static str, &'static str) {
    match name {
        TemplateName::Triangle => ("ab adc bec", "a>b cd; c>a be; d>a bc", "(ab)(de)"),
        TemplateName::Square => (
            "ab aed bfc cgd",
            "a>b cg de; c>a bf dg; e>a bc dg; g>a bf cd",
            "(ab)(cd)(ef)",
        ),
        TemplateName::TriangleLine => (
            "ab adc bec dfe",
            "a>b cd ef; c>a be df; d>a bc ef; f>a bc de",
            "(ab)(de)",
        ),
        TemplateName::SquareLine => (
            "ab aed bfc cgd ehf",
            "a>b cg de fh; c>a bf dg eh; e>a bc dg fh; g>a bf cd eh; h>a bc dg ef",
            "(ab)(cd)(ef)",
        ),
        TemplateName::BiTriangle => (
            "ab adc agf bec bhf",
            "a>b cd fg; c>a be fh; d>a bc fh",
            "(ab)(de)(gh); (cf)(dg)(eh)",
        ),
        TemplateName::BiTriangleX => (
            "ab adc aef bec bgf",
            "a>b cd ef; c>a be fg; d>a bf ce; e>a bc fg",
            "(ab)(cf)(dg)",
        ),
        TemplateName::FlatStar => (
            "abc adg bdf beh ceg fgh",
            "a>b ce dg fh; b>g ac df eh; d>b ag ce fh",
            "(ac)(fh)(de); (af)(bg)(ch)",
        ),
        TemplateName::BiTriangleLine => (
            "ab adc agf bec bhf dei",
            "a>b cd fg ei; c>a be fh di; d>a bc fh ei; f>a bh ce di; g>a bf ce di; i>a bc de fh",
            "(ab)(de)(gh)",
        ),
        TemplateName::BiTriangleBiLine => (
            "ab adc agf bec bhf dei ghj",
            "a>b cd fg ei hj; c>a be fh di gj; d>a bc fh ei gj; i>a bc fh de gj",
            "(ab)(de)(gh); (cf)(dg)(eh)(ij)",
        ),
        TemplateName::BiTriangleXLine => (
            "ab adc aef bec bgf dgh",
            "a>b cd ef gh; c>a be fg dh; d>a bf ce gh; e>a bc fg dh; h>a bf ce dg",
            "(ab)(cf)(dg)",
        ),
        TemplateName::FlatStarLine => (
            "abc adg bdf beh ceg fgh bg",
            "a>b ce dg fh; b>g ac df eh; d>b ag ce fh",
            "(ac)(fh)(de); (af)(bg)(ch)",
        ),
        TemplateName::TriTriangleX => (
            "ab adc aef aih bec bgf bjh",
            "a>b cd ef hi; c>a be fg hj; d>a bf ce hj; e>a bc fg hj; h>a bj ce fg; i>a bc fg hj",
            "(ab)(cf)(dg)(ij)",
        ),
        TemplateName::CycleN(_) | TemplateName::CycleNLine(_) => unreachable!(),
    }
}

/// Pairs covering a path of sides `(p[i], e[i], p[i+1])` while avoiding the
/// Black stone at `x`. A stone on corner `p[j]` pairs earlier sides with
/// their start corner and later sides with their end corner; a stone on
/// edge `e[j]` pairs that side's two corners. A stone off the path is
/// treated like a stone on the first edge.
fn path_pairs(p: &[Label], e: &[Label], x: Label) -> Vec<(Label, Label)> {
    let sides = e.len();
    let (cut, edge_hit) = if let Some(j) = p.iter().position(|&c| c == x) {
        (j, false)
    } else if let Some(j) = e.iter().position(|&c| c == x) {
        (j, true)
    } else {
        (0, true)
    };
    (0..sides)
        .map(|i| {
            if edge_hit && i == cut {
                (p[i], p[i + 1])
            } else if i < cut {
                (p[i], e[i])
            } else {
                (e[i], p[i + 1])
            }
        })
        .collect()
}

/// The cycle configuration on `n` corners, optionally with the extra line
/// through the two edge markers next to the corner `a`.
///
/// Corners are `a, b, ...`; then the edge marker of the closing side (back
/// to `a`), then the edge markers of the sides `b`-`c`, `c`-`d`, ... in
/// order, and finally the extra line's own marker.
fn cycle(n: usize, line: bool) -> MatchingSet<Label> {
    assert!(n >= 3, "cycles need at least three corners");
    let corner = |i: usize| Label(i as u8);
    let e_close = Label(n as u8);
    let side = |i: usize| Label((n + i) as u8); // side c_i - c_{i+1}, i >= 1
    let extra = Label((2 * n - 1) as u8);
    let e_b = side(1);

    let mut groups = vec![vec![corner(0), corner(1)], vec![corner(0), e_close, corner(n - 1)]];
    for i in 1..n - 1 {
        groups.push(vec![corner(i), side(i), corner(i + 1)]);
    }
    if line {
        groups.push(vec![e_close, extra, e_b]);
    }
    let markers: BTreeSet<Label> = groups.iter().flatten().copied().collect();

    let mut mirror = vec![(corner(0), corner(1)), (e_close, e_b)];
    for i in 2..n {
        let j = (n + 1 - i) % n;
        if i < j {
            mirror.push((corner(i), corner(j)));
        }
    }
    for i in 2..n - 1 {
        let j = n - i;
        if i < j {
            mirror.push((side(i), side(j)));
        }
    }
    let mirror = Permutation::from_cycles(
        &mirror.into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>(),
    );

    // one covering per mirror orbit; the rest follow by symmetry
    let mut coverings = Vec::new();
    for &x in markers.iter().filter(|&&x| x <= mirror.apply(x)) {
        let (white, path_corners, path_edges): (Label, Vec<Label>, Vec<Label>) = if x == corner(0) {
            let mut p: Vec<Label> = (2..n).map(corner).collect();
            p.push(corner(0));
            let mut e: Vec<Label> = (2..n - 1).map(side).collect();
            e.push(e_close);
            (corner(1), p, e)
        } else {
            ((corner(0)), (1..n).map(corner).collect(), (1..n - 1).map(side).collect())
        };
        let mut path_x = x;
        let mut pairs = Vec::new();
        if line {
            let line_pair = if white == corner(1) {
                (e_b, extra)
            } else if x == e_close {
                path_x = e_b;
                (e_b, extra)
            } else if x == extra {
                path_x = e_b;
                (e_close, e_b)
            } else {
                (e_close, extra)
            };
            pairs.push(line_pair);
        }
        let mut all = path_pairs(&path_corners, &path_edges, path_x);
        all.extend(pairs);
        coverings.push(Covering {
            black: x,
            white,
            remainder: Remainder::Pairs(all),
        });
    }

    MatchingSet::new(markers, groups, coverings, vec![mirror])
}

/// Published values for one configuration: markers, groups, reduction and
/// the coverage ratio rounded to two decimals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub name: TemplateName,
    pub markers: usize,
    pub groups: usize,
    pub reduction: isize,
    pub ratio: &'static str,
}

pub const REFERENCE_ROWS: [ReferenceRow; 12] = [
    ReferenceRow { name: TemplateName::Triangle, markers: 5, groups: 3, reduction: 1, ratio: "1.67" },
    ReferenceRow { name: TemplateName::Square, markers: 7, groups: 4, reduction: 1, ratio: "1.75" },
    ReferenceRow { name: TemplateName::TriangleLine, markers: 6, groups: 4, reduction: 2, ratio: "1.50" },
    ReferenceRow { name: TemplateName::SquareLine, markers: 8, groups: 5, reduction: 2, ratio: "1.60" },
    ReferenceRow { name: TemplateName::BiTriangle, markers: 8, groups: 5, reduction: 2, ratio: "1.60" },
    ReferenceRow { name: TemplateName::BiTriangleX, markers: 7, groups: 5, reduction: 3, ratio: "1.40" },
    ReferenceRow { name: TemplateName::FlatStar, markers: 8, groups: 6, reduction: 4, ratio: "1.33" },
    ReferenceRow { name: TemplateName::BiTriangleLine, markers: 9, groups: 6, reduction: 3, ratio: "1.50" },
    ReferenceRow { name: TemplateName::BiTriangleBiLine, markers: 10, groups: 7, reduction: 4, ratio: "1.43" },
    ReferenceRow { name: TemplateName::BiTriangleXLine, markers: 8, groups: 6, reduction: 4, ratio: "1.33" },
    ReferenceRow { name: TemplateName::FlatStarLine, markers: 8, groups: 7, reduction: 6, ratio: "1.14" },
    ReferenceRow { name: TemplateName::TriTriangleX, markers: 10, groups: 7, reduction: 4, ratio: "1.43" },
];

/// Closed-form counts for the cycle families: `(markers, groups)`.
pub fn cycle_formula(n: usize, line: bool) -> (usize, usize) {
    if line {
        (2 * n, n + 1)
    } else {
        (2 * n - 1, n)
    }
}

/// A ratio rounded half-up to two decimals, as printed in tables.
pub fn format_ratio(r: Ratio<usize>) -> String {
    let hundredths = (r * 100 * 2 + Ratio::from_integer(1)) / 2;
    let h = hundredths.to_integer();
    format!("{}.{:02}", h / 100, h % 100)
}
