//! Seeded synthetic game databases from two simple playout policies.
//!
//! Both policies are test instruments with deliberately different local
//! statistics: one plays uniformly among legal non-eye-filling moves, the
//! other always takes a capture when one is available.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::board::{Board, Cell, Color, Coord, N_POINTS};
use crate::rng::SplitMix64;
use crate::sgf::{GameRecord, MoveAction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolicyKind {
    UniformRandom,
    GreedyCapture,
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyKind::UniformRandom => "uniform-random",
            PolicyKind::GreedyCapture => "greedy-capture",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlayoutPolicy {
    pub kind: PolicyKind,
    /// Move budget per game, passes included.
    pub max_moves: usize,
    pub seed: u64,
}

impl PlayoutPolicy {
    pub const DEFAULT_MAX_MOVES: usize = 250;

    pub fn new(kind: PolicyKind, seed: u64) -> Self {
        Self {
            kind,
            max_moves: Self::DEFAULT_MAX_MOVES,
            seed,
        }
    }
}

/// Legal, non-eye-filling moves for `color`, and the subset that captures.
///
/// An eye is an empty point whose on-board orthogonal neighbours are all
/// `color` stones. Suicides are excluded, so every candidate keeps at
/// least one liberty after captures.
pub fn candidate_moves(board: &Board, color: Color) -> (Vec<Coord>, Vec<Coord>) {
    let libs = board.liberty_map();
    let own = color.stone();
    let enemy = color.opponent().stone();
    let mut moves = Vec::new();
    let mut captures = Vec::new();
    for i in 0..N_POINTS {
        let p = Coord::from_index(i);
        if board.get(p) != Cell::Empty {
            continue;
        }
        let mut eye = true;
        let mut breathes = false;
        let mut captures_here = false;
        for n in Board::neighbors(p) {
            let c = board.get(n);
            let l = libs[n.index()];
            if c != own {
                eye = false;
            }
            if c == Cell::Empty || (c == own && l >= 2) {
                breathes = true;
            }
            if c == enemy && l == 1 {
                captures_here = true;
            }
        }
        if eye || !(breathes || captures_here) {
            continue;
        }
        moves.push(p);
        if captures_here {
            captures.push(p);
        }
    }
    (moves, captures)
}

fn play_one(policy: &PlayoutPolicy, seed: u64) -> GameRecord {
    let mut rng = SplitMix64::new(seed);
    let mut board = Board::new();
    let mut game = GameRecord::empty(format!("{}-{}", policy.kind, seed));
    let mut color = Color::Black;
    let mut passes = 0;
    while game.moves.len() < policy.max_moves && passes < 2 {
        let (moves, captures) = candidate_moves(&board, color);
        let choice = match policy.kind {
            PolicyKind::GreedyCapture if !captures.is_empty() => captures.iter().min().copied(),
            _ if moves.is_empty() => None,
            _ => Some(moves[rng.below(moves.len() as u64) as usize]),
        };
        match choice {
            Some(p) => {
                board
                    .apply_move(color, p)
                    .expect("candidates are empty points");
                game.moves.push(MoveAction::play(color, p));
                passes = 0;
            }
            None => {
                game.moves.push(MoveAction::pass(color));
                passes += 1;
            }
        }
        color = color.opponent();
    }
    game
}

/// Game `g` is played with seed `policy.seed + g`.
pub fn generate_games(policy: &PlayoutPolicy, n_games: usize) -> Vec<GameRecord> {
    (0..n_games as u64)
        .map(|g| play_one(policy, policy.seed.wrapping_add(g)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::replay;
    use crate::sgf::{to_sgf, MoveKind};
    use alloc::string::String;

    #[test]
    fn zero_games() {
        assert!(generate_games(&PlayoutPolicy::new(PolicyKind::UniformRandom, 0), 0).is_empty());
    }

    #[test]
    fn deterministic_output() {
        for kind in [PolicyKind::UniformRandom, PolicyKind::GreedyCapture] {
            let p = PlayoutPolicy::new(kind, 77);
            let a: String = generate_games(&p, 3).iter().map(to_sgf).collect();
            let b: String = generate_games(&p, 3).iter().map(to_sgf).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn games_offset_by_seed() {
        let p = PlayoutPolicy::new(PolicyKind::UniformRandom, 10);
        let games = generate_games(&p, 3);
        let shifted = generate_games(&PlayoutPolicy { seed: 11, ..p }, 2);
        assert_eq!(games[1], shifted[0]);
        assert_eq!(games[2], shifted[1]);
    }

    #[test]
    fn generated_moves_replay_cleanly() {
        for kind in [PolicyKind::UniformRandom, PolicyKind::GreedyCapture] {
            for g in generate_games(&PlayoutPolicy::new(kind, 3), 10) {
                assert!(g.moves.len() <= PlayoutPolicy::DEFAULT_MAX_MOVES);
                let (events, diags) = replay(&g);
                assert!(diags.is_empty(), "{diags:?}");
                assert_eq!(events.len(), g.play_count());
            }
        }
    }

    #[test]
    fn greedy_takes_the_lowest_capture() {
        let mut board = Board::new();
        let c = |x, y| Coord::new(x, y).unwrap();
        // Two white stones in atari.
        board.set(c(5, 5), Cell::White);
        for n in [c(4, 5), c(6, 5), c(5, 4)] {
            board.set(n, Cell::Black);
        }
        board.set(c(1, 0), Cell::White);
        board.set(c(2, 0), Cell::Black);
        board.set(c(1, 1), Cell::Black);
        let (_, captures) = candidate_moves(&board, Color::Black);
        assert_eq!(captures, [c(0, 0), c(5, 6)]);
        assert_eq!(captures.iter().min(), Some(&c(0, 0)));
    }

    #[test]
    fn eyes_and_suicides_are_not_candidates() {
        let c = |x, y| Coord::new(x, y).unwrap();
        let mut board = Board::new();
        board.set(c(1, 0), Cell::Black);
        board.set(c(0, 1), Cell::Black);
        let (black, _) = candidate_moves(&board, Color::Black);
        assert!(!black.contains(&c(0, 0)));
        let (white, _) = candidate_moves(&board, Color::White);
        assert!(!white.contains(&c(0, 0)));
        assert!(white.contains(&c(5, 5)));
    }

    #[test]
    fn policies_end_or_hit_the_budget() {
        let g = &generate_games(
            &PlayoutPolicy {
                max_moves: 40,
                ..PlayoutPolicy::new(PolicyKind::GreedyCapture, 1)
            },
            1,
        )[0];
        assert_eq!(g.moves.len(), 40);
        assert!(g.moves.iter().all(|m| matches!(m.kind, MoveKind::Play(_))));
    }
}
