//! Example positions shipped with the crate, one per figure, each with the
//! configuration that proves it and its certificate.

use crate::board::{parse_position, Position};
use crate::configs::{DrawCertificate, TemplateName};

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    /// The configuration the example illustrates.
    pub template: TemplateName,
    pub board: &'static str,
    pub certificate: &'static str,
}

impl Fixture {
    pub fn position(&self) -> Position {
        parse_position(self.board).expect("bundled board parses")
    }

    pub fn certificate(&self) -> DrawCertificate {
        DrawCertificate::from_json(self.certificate).expect("bundled certificate parses")
    }
}

macro_rules! fixture {
    ($name:literal, $template:expr) => {
        Fixture {
            name: $name,
            template: $template,
            board: include_str!(concat!("../../../fixtures/", $name, ".board")),
            certificate: include_str!(concat!("../../../fixtures/", $name, ".cert")),
        }
    };
}

/// The example positions, in figure order.
pub const EXAMPLES: [Fixture; 12] = [
    fixture!("fig1", TemplateName::Triangle),
    fixture!("fig2", TemplateName::Square),
    fixture!("fig3", TemplateName::TriangleLine),
    fixture!("fig4", TemplateName::SquareLine),
    fixture!("fig5", TemplateName::BiTriangle),
    fixture!("fig7", TemplateName::BiTriangleX),
    fixture!("fig8", TemplateName::FlatStar),
    fixture!("fig9a", TemplateName::BiTriangleLine),
    fixture!("fig9b", TemplateName::BiTriangleBiLine),
    fixture!("fig9c", TemplateName::BiTriangleXLine),
    fixture!("fig10", TemplateName::FlatStarLine),
    fixture!("fig11", TemplateName::TriTriangleX),
];

/// The empty 4x4 board with its two-BiTriangle certificate.
pub const EMPTY_4X4: Fixture = fixture!("empty4x4", TemplateName::BiTriangle);

pub fn all() -> Vec<Fixture> {
    let mut v = EXAMPLES.to_vec();
    v.push(EMPTY_4X4);
    v
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
