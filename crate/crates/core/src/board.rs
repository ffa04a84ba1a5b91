//! 19×19 board with capture rules, and replay of game records.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::sgf::{GameRecord, MoveKind};

pub const BOARD_SIZE: usize = 19;
pub const N_POINTS: usize = BOARD_SIZE * BOARD_SIZE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opponent(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn stone(self) -> Cell {
        match self {
            Color::Black => Cell::Black,
            Color::White => Cell::White,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Cell {
    #[default]
    Empty,
    Black,
    White,
}

impl Cell {
    pub fn color(self) -> Option<Color> {
        match self {
            Cell::Empty => None,
            Cell::Black => Some(Color::Black),
            Cell::White => Some(Color::White),
        }
    }
}

/// An intersection, `x` is the column and `y` the row, both in `0..19`.
///
/// Ordering is lexicographic on `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: u8,
    pub y: u8,
}

impl Coord {
    pub fn new(x: usize, y: usize) -> Option<Coord> {
        (x < BOARD_SIZE && y < BOARD_SIZE).then(|| Coord {
            x: x as u8,
            y: y as u8,
        })
    }

    /// Offset by `(dx, dy)`, `None` when it leaves the board.
    pub fn offset(self, dx: i32, dy: i32) -> Option<Coord> {
        let x = self.x as i32 + dx;
        let y = self.y as i32 + dy;
        if (0..BOARD_SIZE as i32).contains(&x) && (0..BOARD_SIZE as i32).contains(&y) {
            Some(Coord {
                x: x as u8,
                y: y as u8,
            })
        } else {
            None
        }
    }

    pub fn index(self) -> usize {
        self.y as usize * BOARD_SIZE + self.x as usize
    }

    pub fn from_index(index: usize) -> Coord {
        debug_assert!(index < N_POINTS);
        Coord {
            x: (index % BOARD_SIZE) as u8,
            y: (index / BOARD_SIZE) as u8,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GoError {
    #[error("point {0} is already occupied")]
    OccupiedPoint(Coord),
}

/// Stones removed by one move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MoveOutcome {
    /// Opponent stones captured.
    pub captured: usize,
    /// Own stones removed because the move left its group without liberties.
    pub suicided: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Board {
    cells: [Cell; N_POINTS],
}

impl Default for Board {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in 0..BOARD_SIZE {
            for x in 0..BOARD_SIZE {
                let c = match self.cells[y * BOARD_SIZE + x] {
                    Cell::Empty => '.',
                    Cell::Black => 'X',
                    Cell::White => 'O',
                };
                write!(f, "{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn neighbors(index: usize) -> impl Iterator<Item = usize> {
    let x = index % BOARD_SIZE;
    let y = index / BOARD_SIZE;
    let left = (x > 0).then(|| index - 1);
    let right = (x + 1 < BOARD_SIZE).then(|| index + 1);
    let up = (y > 0).then(|| index - BOARD_SIZE);
    let down = (y + 1 < BOARD_SIZE).then(|| index + BOARD_SIZE);
    [left, right, up, down].into_iter().flatten()
}

impl Board {
    pub fn new() -> Self {
        Self {
            cells: [Cell::Empty; N_POINTS],
        }
    }

    pub fn get(&self, pos: Coord) -> Cell {
        self.cells[pos.index()]
    }

    /// Sets a cell directly, without any capture processing.
    pub fn set(&mut self, pos: Coord, cell: Cell) {
        self.cells[pos.index()] = cell;
    }

    pub fn stone_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c != Cell::Empty).count()
    }

    pub fn neighbors(pos: Coord) -> impl Iterator<Item = Coord> {
        neighbors(pos.index()).map(Coord::from_index)
    }

    /// Stones of the group containing `pos` and its number of distinct liberties.
    pub fn group(&self, pos: Coord) -> (Vec<Coord>, usize) {
        let (stones, libs) = self.group_at(pos.index());
        (stones.into_iter().map(Coord::from_index).collect(), libs)
    }

    fn group_at(&self, start: usize) -> (Vec<usize>, usize) {
        let color = self.cells[start];
        debug_assert!(color != Cell::Empty);
        let mut seen = [false; N_POINTS];
        let mut lib_seen = [false; N_POINTS];
        let mut stack = alloc::vec![start];
        let mut stones = Vec::new();
        let mut libs = 0;
        seen[start] = true;
        while let Some(i) = stack.pop() {
            stones.push(i);
            for n in neighbors(i) {
                let c = self.cells[n];
                if c == Cell::Empty {
                    if !lib_seen[n] {
                        lib_seen[n] = true;
                        libs += 1;
                    }
                } else if c == color && !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        (stones, libs)
    }

    fn remove_if_dead(&mut self, start: usize) -> usize {
        let (stones, libs) = self.group_at(start);
        if libs > 0 {
            return 0;
        }
        for &s in &stones {
            self.cells[s] = Cell::Empty;
        }
        stones.len()
    }

    /// Places a stone and resolves captures.
    ///
    /// Adjacent opponent groups left without liberties are removed first;
    /// if the played group then has no liberty it is removed as well
    /// (permissive suicide).
    pub fn apply_move(&mut self, color: Color, pos: Coord) -> Result<MoveOutcome, GoError> {
        let at = pos.index();
        if self.cells[at] != Cell::Empty {
            return Err(GoError::OccupiedPoint(pos));
        }
        self.cells[at] = color.stone();
        let enemy = color.opponent().stone();
        let mut outcome = MoveOutcome::default();
        for n in neighbors(at) {
            if self.cells[n] == enemy {
                outcome.captured += self.remove_if_dead(n);
            }
        }
        if !neighbors(at).any(|n| self.cells[n] == Cell::Empty) {
            outcome.suicided = self.remove_if_dead(at);
        }
        if outcome.suicided > 0 {
            log::warn!("suicide at {pos} removed {} stone(s)", outcome.suicided);
        }
        Ok(outcome)
    }

    /// Liberty count of the group owning each stone, 0 for empty points.
    pub fn liberty_map(&self) -> [u16; N_POINTS] {
        const NONE: u16 = u16::MAX;
        let mut out = [0u16; N_POINTS];
        let mut group = [NONE; N_POINTS];
        let mut lib_mark = [NONE; N_POINTS];
        let mut stack = Vec::new();
        let mut members = Vec::new();
        let mut gid = 0u16;
        for i in 0..N_POINTS {
            let color = self.cells[i];
            if color == Cell::Empty || group[i] != NONE {
                continue;
            }
            members.clear();
            stack.push(i);
            group[i] = gid;
            let mut libs = 0u16;
            while let Some(s) = stack.pop() {
                members.push(s);
                for n in neighbors(s) {
                    let c = self.cells[n];
                    if c == Cell::Empty {
                        if lib_mark[n] != gid {
                            lib_mark[n] = gid;
                            libs += 1;
                        }
                    } else if c == color && group[n] == NONE {
                        group[n] = gid;
                        stack.push(n);
                    }
                }
            }
            for &m in &members {
                out[m] = libs;
            }
            gid += 1;
        }
        out
    }
}

/// One played stone, with the board as it was just before the stone landed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayEvent {
    /// Index into `GameRecord::moves` (passes included).
    pub move_index: usize,
    pub color: Color,
    pub position: Coord,
    pub board_before: Board,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplayIssue {
    /// The move targeted an occupied point and was skipped.
    Occupied,
    /// The move was played but its own group was removed.
    Suicide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplayDiagnostic {
    pub move_index: usize,
    pub position: Coord,
    pub issue: ReplayIssue,
}

/// Streams the replay of `game`, calling `on_event` once per placed stone.
///
/// Setup stones are placed first and emit nothing. Passes emit nothing.
/// Moves onto occupied points are logged and skipped.
pub fn replay_with<F>(game: &GameRecord, mut on_event: F) -> Vec<ReplayDiagnostic>
where
    F: FnMut(&ReplayEvent),
{
    let mut board = Board::new();
    for &p in &game.setup_black {
        board.set(p, Cell::Black);
    }
    for &p in &game.setup_white {
        board.set(p, Cell::White);
    }
    let mut diagnostics = Vec::new();
    for (move_index, action) in game.moves.iter().enumerate() {
        let MoveKind::Play(pos) = action.kind else {
            continue;
        };
        if board.get(pos) != Cell::Empty {
            log::warn!(
                "{}: move {move_index} at {pos} targets an occupied point, skipped",
                game.source_id
            );
            diagnostics.push(ReplayDiagnostic {
                move_index,
                position: pos,
                issue: ReplayIssue::Occupied,
            });
            continue;
        }
        let event = ReplayEvent {
            move_index,
            color: action.color,
            position: pos,
            board_before: board,
        };
        on_event(&event);
        let outcome = board
            .apply_move(action.color, pos)
            .expect("emptiness checked above");
        if outcome.suicided > 0 {
            diagnostics.push(ReplayDiagnostic {
                move_index,
                position: pos,
                issue: ReplayIssue::Suicide,
            });
        }
    }
    diagnostics
}

/// Collects every replay event of `game`.
pub fn replay(game: &GameRecord) -> (Vec<ReplayEvent>, Vec<ReplayDiagnostic>) {
    let mut events = Vec::new();
    let diagnostics = replay_with(game, |e| events.push(e.clone()));
    (events, diagnostics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::sgf::{parse_games, MoveAction};

    fn c(x: usize, y: usize) -> Coord {
        Coord::new(x, y).unwrap()
    }

    #[test]
    fn corner_capture() {
        let mut b = Board::new();
        b.set(c(0, 0), Cell::Black);
        b.set(c(0, 1), Cell::White);
        let out = b.apply_move(Color::White, c(1, 0)).unwrap();
        assert_eq!(out.captured, 1);
        assert_eq!(b.get(c(0, 0)), Cell::Empty);
    }

    #[test]
    fn open_point_captures_nothing() {
        let mut b = Board::new();
        let out = b.apply_move(Color::Black, c(9, 9)).unwrap();
        assert_eq!(out, MoveOutcome::default());
    }

    #[test]
    fn occupied_point_rejected() {
        let mut b = Board::new();
        b.apply_move(Color::Black, c(3, 3)).unwrap();
        assert_eq!(
            b.apply_move(Color::White, c(3, 3)),
            Err(GoError::OccupiedPoint(c(3, 3)))
        );
    }

    #[test]
    fn suicide_removes_own_group() {
        let mut b = Board::new();
        b.set(c(1, 0), Cell::White);
        b.set(c(0, 1), Cell::White);
        let out = b.apply_move(Color::Black, c(0, 0)).unwrap();
        assert_eq!(out.suicided, 1);
        assert_eq!(b.get(c(0, 0)), Cell::Empty);
    }

    #[test]
    fn capture_precedes_suicide_check() {
        // Black fills the last liberty of a white stone that also surrounds it.
        let mut b = Board::new();
        b.set(c(1, 0), Cell::White);
        b.set(c(2, 0), Cell::Black);
        b.set(c(1, 1), Cell::Black);
        b.set(c(0, 1), Cell::White);
        b.set(c(0, 2), Cell::Black);
        let out = b.apply_move(Color::Black, c(0, 0)).unwrap();
        assert_eq!(out.captured, 2);
        assert_eq!(out.suicided, 0);
        assert_eq!(b.get(c(0, 0)), Cell::Black);
    }

    #[test]
    fn replay_simple_game() {
        let game = &parse_games("(;SZ[19];B[pd];W[dp])").unwrap()[0];
        let (events, diags) = replay(game);
        assert!(diags.is_empty());
        assert_eq!(events.len(), 2);
        for e in &events {
            assert_eq!(e.board_before.get(e.position), Cell::Empty);
        }
        assert_eq!(events[1].board_before.get(c(15, 3)), Cell::Black);
    }

    #[test]
    fn handicap_stones_are_on_the_first_board() {
        let game = &parse_games("(;SZ[19]HA[2]AB[dd][pp];W[pd])").unwrap()[0];
        let (events, _) = replay(game);
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].board_before.get(c(3, 3)), Cell::Black);
        assert_eq!(events[0].board_before.get(c(15, 15)), Cell::Black);
        assert_eq!(events[0].board_before.stone_count(), 2);
    }

    #[test]
    fn occupied_move_is_skipped() {
        let game = &parse_games("(;SZ[19];B[pd];W[pd];W[dd];B[])").unwrap()[0];
        let (events, diags) = replay(game);
        assert_eq!(events.len(), 2);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].move_index, 1);
        assert_eq!(diags[0].issue, ReplayIssue::Occupied);
    }

    fn random_game(seed: u64, len: usize) -> (GameRecord, usize, usize) {
        let mut rng = SplitMix64::new(seed);
        let mut board = Board::new();
        let mut game = GameRecord::empty("random");
        let mut color = Color::Black;
        let (mut placed, mut removed) = (0, 0);
        while game.moves.len() < len {
            let p = Coord::from_index(rng.below(N_POINTS as u64) as usize);
            if board.get(p) != Cell::Empty {
                continue;
            }
            let out = board.apply_move(color, p).unwrap();
            placed += 1;
            removed += out.captured + out.suicided;
            game.moves.push(MoveAction::play(color, p));
            color = color.opponent();
        }
        assert_eq!(board.stone_count(), placed - removed);
        (game, placed, removed)
    }

    #[test]
    fn stone_count_matches_placed_minus_captured() {
        for seed in 0..200 {
            let (game, placed, removed) = random_game(seed, 50);
            let (events, _) = replay(&game);
            assert_eq!(events.len(), placed);
            // Brute-force recount on the final board.
            let mut board = Board::new();
            for e in &events {
                board.apply_move(e.color, e.position).unwrap();
            }
            assert_eq!(board.stone_count(), placed - removed);
        }
    }

    #[test]
    fn every_group_keeps_a_liberty() {
        for seed in 0..100 {
            let (game, _, _) = random_game(1000 + seed, 120);
            let mut board = Board::new();
            for m in &game.moves {
                if let MoveKind::Play(p) = m.kind {
                    board.apply_move(m.color, p).unwrap();
                    let libs = board.liberty_map();
                    for i in 0..N_POINTS {
                        if board.cells[i] != Cell::Empty {
                            assert!(libs[i] >= 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn replay_is_deterministic() {
        let (game, _, _) = random_game(42, 80);
        assert_eq!(replay(&game), replay(&game));
    }
}
