use super::*;
use crate::board::parse_position;
use crate::par::Exec;

const FIG1: &str = "5 4 4 B\n.OOXO\nXXXOO\nXO..X\n.X..O\n";

fn triangle() -> MatchingSet<Label> {
    MatchingSet::from_notation("ab adc bec", "a>b cd; c>a be; d>a bc", "(ab)(de)").unwrap()
}

fn cell(s: &str) -> Cell {
    s.parse().unwrap()
}

fn cells(list: &[&str]) -> Vec<Cell> {
    list.iter().map(|s| cell(s)).collect()
}

/// The triangle on the first example board: a=a1, b=a4, c=d1, d=c1, e=c2.
fn bound_triangle() -> MatchingSet<Cell> {
    let bind = |l: Label| cell(["a1", "a4", "d1", "c1", "c2"][l.index()]);
    let abstract_set = triangle();
    let mut set = abstract_set.map_nodes(&bind);
    set.groups = vec![
        cells(&["a1", "a2", "a3", "a4"]),
        cells(&["a1", "b1", "c1", "d1"]),
        cells(&["d1", "c2", "b3", "a4"]),
    ];
    set
}

/// Maker-breaker value on a tiny hypergraph: can the first player claim
/// every node of some edge when both sides play optimally?
fn maker_wins(edges: &[u32], universe: u32, maker: u32, breaker: u32) -> bool {
    let free = universe & !maker & !breaker;
    if free == 0 {
        return false;
    }
    let mut bits = free;
    while bits != 0 {
        let m = bits & bits.wrapping_neg();
        bits &= bits - 1;
        let mk = maker | m;
        if edges.iter().any(|&e| e & !mk == 0) {
            return true;
        }
        let after = free & !m;
        if after == 0 {
            continue;
        }
        let mut replies = after;
        let mut all_replies_lose = true;
        while replies != 0 {
            let r = replies & replies.wrapping_neg();
            replies &= replies - 1;
            if !maker_wins(edges, universe, mk, breaker | r) {
                all_replies_lose = false;
                break;
            }
        }
        if all_replies_lose {
            return true;
        }
    }
    false
}

fn masks(set: &MatchingSet<Label>) -> (Vec<u32>, u32) {
    let edges: Vec<u32> = set
        .groups
        .iter()
        .map(|g| g.iter().fold(0, |acc, l| acc | 1 << l.index()))
        .collect();
    let universe = edges.iter().fold(0, |a, e| a | e);
    (edges, universe)
}

#[test]
fn notation_round_trip() {
    let t = triangle();
    assert_eq!(t.num_markers(), 5);
    assert_eq!(t.num_groups(), 3);
    assert_eq!(t.reduction(), 1);
    assert_eq!(t.to_string(), "({a,b,c,d,e}, {ab,adc,bec}, {a\u{2192}b {(c,d)}, c\u{2192}a {(b,e)}, d\u{2192}a {(b,c)}})");
    assert!(MatchingSet::from_notation("aB", "", "").is_err());
    assert!(MatchingSet::from_notation("ab", "a-b", "").is_err());
}

#[test]
fn symmetry_expansion_fills_mirrors() {
    let t = triangle();
    let expanded = t.expanded_coverings();
    let opened: Vec<String> = expanded.iter().map(|c| c.black.to_string()).collect();
    assert_eq!(opened, vec!["a", "c", "d", "b", "e"]);
    let b = &expanded[3];
    assert_eq!(b.label(), "b\u{2192}a");
    assert_eq!(b.remainder, Remainder::Pairs(vec![(Label(2), Label(4))]));
}

#[test]
fn abstract_triangle_is_valid() {
    let r = verify_abstract(&triangle());
    assert!(r.is_valid(), "{r}");
    assert_eq!(r.verdict(), Verdict::Valid);
}

#[test]
fn triangle_on_example_board() {
    let pos = parse_position(FIG1).unwrap();
    let r = verify_matching_set(&pos, &bound_triangle());
    assert!(r.is_valid(), "{r}");
}

#[test]
fn missing_covering_is_reported() {
    let mut t = triangle();
    t.coverings.retain(|c| c.black != Label(2));
    let r = verify_on(&Blank, &t, VerifyOptions { expand_symmetry: false });
    assert_eq!(r.verdict(), Verdict::Invalid);
    assert!(r.mentions("no covering for first move c"), "{r}");
    // without expansion the mirrored openings are missing too
    assert!(r.mentions("no covering for first move b"));
    let r = verify_abstract(&t);
    assert!(r.mentions("no covering for first move c"));
    assert!(!r.mentions("first move b"));
}

#[test]
fn uncovered_group_is_reported() {
    let mut t = triangle();
    t.coverings[0].remainder = Remainder::Pairs(vec![(Label(2), Label(4))]);
    let r = verify_abstract(&t);
    assert!(r.mentions("group adc uncovered after a\u{2192}b"), "{r}");
}

#[test]
fn structural_violations() {
    let mut t = triangle();
    t.coverings[0].remainder = Remainder::Pairs(vec![(Label(2), Label(3)), (Label(3), Label(1))]);
    let r = verify_abstract(&t);
    assert!(r.mentions("pair reuses b"));
    assert!(r.mentions("marker d used in two pairs"));

    let overlapping = MatchingSet::from_notation("abc abd", "", "").unwrap();
    let r = verify_abstract(&overlapping);
    assert!(r.mentions("groups abc and abd overlap"));

    let mut bad_sym = triangle();
    bad_sym.symmetry.push(Permutation::from_cycles(&[vec![Label(0), Label(7)]]));
    assert!(verify_abstract(&bad_sym).mentions("symmetry #1"));

    let pos = parse_position(FIG1).unwrap();
    let mut set = bound_triangle();
    set.markers.insert(cell("b1"));
    let r = verify_matching_set(&pos, &set);
    assert!(r.mentions("marker b1 is not empty"));
    set = bound_triangle();
    set.groups.push(cells(&["b4", "c4", "d4", "e4"]));
    let r = verify_matching_set(&pos, &set);
    assert!(r.mentions("contains a White stone"));
    assert!(r.mentions("has no marker"));
}

#[test]
fn coverage_ratios() {
    assert_eq!(triangle().coverage_ratio().unwrap(), Ratio::new(5, 3));
    let flat_star_line = MatchingSet::from_notation(
        "abc adg bdf beh ceg fgh bg",
        "a>b ce dg fh; b>g ac df eh; d>b ag ce fh",
        "(ac)(fh)(de); (af)(bg)(ch)",
    )
    .unwrap();
    assert_eq!(flat_star_line.coverage_ratio().unwrap(), Ratio::new(8, 7));
    assert!(verify_abstract(&flat_star_line).is_valid());
    let pairing = MatchingSet::from_pairs(
        &[(Label(0), Label(1)), (Label(2), Label(3))],
        vec![vec![Label(0), Label(1)], vec![Label(2), Label(3)]],
    );
    assert_eq!(pairing.coverage_ratio().unwrap(), Ratio::new(2, 1));
    assert!(verify_abstract(&pairing).is_valid());
    let empty: MatchingSet<Label> = MatchingSet::new([], vec![], vec![], vec![]);
    assert_eq!(empty.coverage_ratio(), Err(SetMatchError::NoGroups));
}

#[test]
fn nested_remainder() {
    // Three disjoint pairs; after any opening the other two are handed to a
    // nested set.
    let inner = MatchingSet::from_pairs(
        &[(Label(2), Label(3)), (Label(4), Label(5))],
        vec![vec![Label(2), Label(3)], vec![Label(4), Label(5)]],
    );
    let outer = MatchingSet::new(
        (0..6).map(Label),
        vec![
            vec![Label(0), Label(1)],
            vec![Label(2), Label(3)],
            vec![Label(4), Label(5)],
        ],
        vec![
            Covering {
                black: Label(0),
                white: Label(1),
                remainder: Remainder::MatchingSet(Box::new(inner.clone())),
            },
            Covering {
                black: Label(1),
                white: Label(0),
                remainder: Remainder::MatchingSet(Box::new(inner.clone())),
            },
        ],
        vec![Permutation::from_cycles(&[vec![Label(0), Label(2), Label(4)], vec![Label(1), Label(3), Label(5)]])],
    );
    assert!(verify_abstract(&outer).is_valid(), "{}", verify_abstract(&outer));
    let board = StrategyBoard::new(&Blank, outer.universe());
    assert!(exhaustive_adversary(&board, &outer, Exec::Sequential).is_sound());

    let mut broken = outer.clone();
    if let Remainder::MatchingSet(m) = &mut broken.coverings[0].remainder {
        m.groups.pop();
    }
    assert!(verify_abstract(&broken).mentions("nested matching set does not cover group ef"));
}

#[test]
fn serde_round_trip() {
    let set = bound_triangle();
    let json = serde_json::to_string(&set).unwrap();
    assert!(json.contains("\"black\":\"a1\""));
    assert!(json.contains("\"pairs\":[[\"d1\",\"c1\"]]"));
    let back: MatchingSet<Cell> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, set);
}

#[test]
fn strategy_holds_against_every_black_line() {
    let t = triangle();
    let (edges, universe) = masks(&t);
    assert!(!maker_wins(&edges, universe, 0, 0));
    let board = StrategyBoard::new(&Blank, t.universe());
    let report = exhaustive_adversary(&board, &t, Exec::Parallel);
    assert!(report.is_sound());
    // 5 first moves, then 3, then 1
    assert_eq!(report.games, 15);
    assert_eq!(report, exhaustive_adversary(&board, &t, Exec::Sequential));
}

#[test]
fn adversary_finds_a_broken_strategy() {
    let fork = MatchingSet::from_notation("ab ac", "a>b; b>a; c>a", "").unwrap();
    let (edges, universe) = masks(&fork);
    assert!(maker_wins(&edges, universe, 0, 0));
    let board = StrategyBoard::new(&Blank, fork.universe());
    let report = exhaustive_adversary(&board, &fork, Exec::Sequential);
    assert!(!report.is_sound());
    assert_eq!(report.counterexample.unwrap()[0], Label(0));
}

#[test]
fn executed_game_on_example_board() {
    let pos = parse_position(FIG1).unwrap();
    let set = bound_triangle();
    let mut script = vec![cell("a1"), cell("c1"), cell("c2")].into_iter();
    let trace = execute_strategy(&pos, &set, |_| script.next()).unwrap();
    assert_eq!(trace.moves[0], (cell("a1"), Some(cell("a4"))));
    // after a1-a4 the remaining pair (d1,c1) answers c1
    assert_eq!(trace.moves[1], (cell("c1"), Some(cell("d1"))));
    assert_eq!(trace.moves[2], (cell("c2"), None));
    assert!(!trace.black_won());
    assert!(trace
        .outcomes
        .iter()
        .all(|(_, o)| *o == GroupOutcome::BlockedByWhite));
    let err = execute_strategy(&pos, &set, |_| Some(cell("b1"))).unwrap_err();
    assert_eq!(err, StrategyError::IllegalMove("b1".into()));
}

#[test]
fn oriented_arena_swaps_colours() {
    let pos = parse_position(FIG1).unwrap();
    let view = Oriented { position: &pos, attacker: Color::White };
    assert_eq!(view.state(cell("b1")), CellState::White);
    assert_eq!(view.state(cell("e1")), CellState::Black);
    assert_eq!(view.state(cell("a1")), CellState::Empty);
    assert_eq!(pos.state(Cell::new(9, 0)), CellState::White);
}
