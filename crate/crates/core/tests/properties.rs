mod common;

use mnk_draw::configs::{check_certificate, prove_draw, DrawCertificate};
use mnk_draw::pairing::{find_hj_pairing, verify_pairing};
use mnk_draw::solver::{solve, solve_with, Pruning, SolveOptions, Verdict};
use mnk_draw::{parse_position, BoardSpec, Cell, Color, Position};
use proptest::prelude::*;

/// Plays the listed moves (indices into the empty cells) until a line
/// appears or the list runs out.
fn play(spec: BoardSpec, picks: &[usize]) -> Position {
    let mut pos = Position::empty(spec);
    for &p in picks {
        let empty: Vec<Cell> = pos.empty_cells().collect();
        if empty.is_empty() {
            break;
        }
        let next = pos.apply_move(empty[p % empty.len()]).unwrap();
        if next.has_line(Color::Black) || next.has_line(Color::White) {
            break;
        }
        pos = next;
    }
    pos
}

fn small_spec() -> impl Strategy<Value = BoardSpec> {
    prop_oneof![
        Just((3, 3, 3)),
        Just((4, 3, 3)),
        Just((3, 4, 3)),
        Just((4, 3, 4)),
        Just((2, 4, 2)),
    ]
    .prop_map(|(m, n, k)| BoardSpec::new(m, n, k).unwrap())
}

fn proof_spec() -> impl Strategy<Value = BoardSpec> {
    prop_oneof![Just((3, 3, 3)), Just((4, 4, 4)), Just((5, 4, 4)), Just((4, 5, 4))]
        .prop_map(|(m, n, k)| BoardSpec::new(m, n, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(spec in small_spec(), picks in prop::collection::vec(0usize..20, 0..12)) {
        let pos = play(spec, &picks);
        prop_assert_eq!(parse_position(&pos.render()).unwrap(), pos);
    }

    #[test]
    fn solver_agrees_with_minimax(spec in small_spec(), picks in prop::collection::vec(0usize..20, 0..8)) {
        let pos = play(spec, &picks);
        let expected = common::Minimax::new(spec).verdict(&pos);
        for p in [Pruning::None, Pruning::HjPairing, Pruning::SetMatching] {
            prop_assert_eq!(solve(&pos, p).unwrap().0, expected);
        }
        let mut no_table = SolveOptions::new(Pruning::None);
        no_table.use_table = false;
        prop_assert_eq!(solve_with(&pos, &no_table).unwrap().0, expected);
    }

    #[test]
    fn pairings_are_sound(spec in proof_spec(), picks in prop::collection::vec(0usize..25, 0..10)) {
        let pos = play(spec, &picks);
        let live = pos.live_black_groups();
        if let Some(p) = find_hj_pairing(&pos, &live).unwrap() {
            prop_assert!(verify_pairing(&pos, &p).is_empty());
            prop_assert_eq!(p.len(), live.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_verify_and_round_trip(
        spec in proof_spec(),
        half in prop::collection::vec(0usize..25, 2..5),
    ) {
        // an even number of moves keeps Black to move
        let mut picks = half.clone();
        picks.extend(half.iter().map(|x| x + 7));
        let pos = play(spec, &picks);
        prop_assume!(pos.to_move() == Color::Black);
        if let Some(cert) = prove_draw(&pos) {
            prop_assert!(check_certificate(&cert).is_valid());
            let back = DrawCertificate::from_json(&cert.to_json()).unwrap();
            prop_assert_eq!(&back, &cert);
            prop_assert_ne!(solve(&pos, Pruning::None).unwrap().0, Verdict::BlackWin);
        }
    }
}
