//! 3×3 patterns around an empty intersection and their 1107 symmetry classes.
//!
//! Cells are read relative to the player about to move (own / opponent
//! stones), which identifies a pattern with its colour-swapped twin. The
//! remaining identification is by the 8 symmetries of the square: a class is
//! named by the smallest base-4 encoding over its dihedral images.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::board::{Board, Cell, Color, Coord};

/// Number of pattern classes on a 19×19 board.
pub const N_CLASSES: usize = 1107;

/// Neighbour offsets `(dx, dy)` in encoding order.
pub const OFFSETS: [(i32, i32); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PatternCell {
    Empty = 0,
    Own = 1,
    Opponent = 2,
    OffBoard = 3,
}

impl PatternCell {
    fn from_digit(d: u16) -> Self {
        match d & 3 {
            0 => PatternCell::Empty,
            1 => PatternCell::Own,
            2 => PatternCell::Opponent,
            _ => PatternCell::OffBoard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    Interior,
    Edge,
    Corner,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Interior => "interior",
            Geometry::Edge => "edge",
            Geometry::Corner => "corner",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern centre {0} is not empty")]
    CenterNotEmpty(Coord),
    #[error("off-board cells do not form an edge or a corner")]
    InvalidOffBoardGeometry,
}

/// The eight neighbours of an intersection, in [`OFFSETS`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawPattern {
    pub cells: [PatternCell; 8],
}

fn offset_index(dx: i32, dy: i32) -> usize {
    OFFSETS
        .iter()
        .position(|&o| o == (dx, dy))
        .expect("offset is a neighbour")
}

/// The dihedral group of the square acting on `(dx, dy)`.
const SYMMETRIES: [fn(i32, i32) -> (i32, i32); 8] = [
    |x, y| (x, y),
    |x, y| (-y, x),
    |x, y| (-x, -y),
    |x, y| (y, -x),
    |x, y| (-x, y),
    |x, y| (x, -y),
    |x, y| (y, x),
    |x, y| (-y, -x),
];

/// `PERMUTATIONS[t][i]`: position of cell `i` after symmetry `t`.
fn permutations() -> [[usize; 8]; 8] {
    let mut out = [[0; 8]; 8];
    for (t, sym) in SYMMETRIES.iter().enumerate() {
        for (i, &(dx, dy)) in OFFSETS.iter().enumerate() {
            let (nx, ny) = sym(dx, dy);
            out[t][i] = offset_index(nx, ny);
        }
    }
    out
}

impl RawPattern {
    pub const EMPTY: RawPattern = RawPattern {
        cells: [PatternCell::Empty; 8],
    };

    /// Base-4 encoding, first cell most significant.
    pub fn encode(&self) -> u16 {
        self.cells
            .iter()
            .fold(0u16, |acc, &c| (acc << 2) | c as u16)
    }

    pub fn decode(code: u16) -> Self {
        let mut cells = [PatternCell::Empty; 8];
        for (i, cell) in cells.iter_mut().enumerate() {
            *cell = PatternCell::from_digit(code >> (2 * (7 - i)));
        }
        RawPattern { cells }
    }

    pub fn cell(&self, dx: i32, dy: i32) -> PatternCell {
        self.cells[offset_index(dx, dy)]
    }

    /// Image under symmetry `t` (`0..8`, 0 is the identity).
    pub fn transform(&self, t: usize) -> RawPattern {
        let perm = &permutations()[t];
        let mut cells = [PatternCell::Empty; 8];
        for i in 0..8 {
            cells[perm[i]] = self.cells[i];
        }
        RawPattern { cells }
    }

    /// Own and opponent stones exchanged.
    pub fn swap_colors(&self) -> RawPattern {
        let mut out = *self;
        for c in &mut out.cells {
            *c = match *c {
                PatternCell::Own => PatternCell::Opponent,
                PatternCell::Opponent => PatternCell::Own,
                other => other,
            };
        }
        out
    }

    pub fn geometry(&self) -> Result<Geometry, PatternError> {
        let off: Vec<(i32, i32)> = OFFSETS
            .iter()
            .zip(self.cells.iter())
            .filter(|(_, &c)| c == PatternCell::OffBoard)
            .map(|(&o, _)| o)
            .collect();
        let side = |pred: &dyn Fn(i32, i32) -> bool| -> Vec<(i32, i32)> {
            OFFSETS.iter().copied().filter(|&(x, y)| pred(x, y)).collect()
        };
        match off.len() {
            0 => Ok(Geometry::Interior),
            3 => {
                for s in [-1, 1] {
                    if off == side(&|x, _| x == s) || off == side(&|_, y| y == s) {
                        return Ok(Geometry::Edge);
                    }
                }
                Err(PatternError::InvalidOffBoardGeometry)
            }
            5 => {
                for sx in [-1, 1] {
                    for sy in [-1, 1] {
                        if off == side(&|x, y| x == sx || y == sy) {
                            return Ok(Geometry::Corner);
                        }
                    }
                }
                Err(PatternError::InvalidOffBoardGeometry)
            }
            _ => Err(PatternError::InvalidOffBoardGeometry),
        }
    }
}

/// Smallest encoding among the 8 dihedral images of `raw`.
pub fn canonical_code(raw: &RawPattern) -> Result<u16, PatternError> {
    raw.geometry()?;
    let perms = permutations();
    let mut best = u16::MAX;
    for perm in &perms {
        let mut cells = [PatternCell::Empty; 8];
        for i in 0..8 {
            cells[perm[i]] = raw.cells[i];
        }
        best = best.min(RawPattern { cells }.encode());
    }
    Ok(best)
}

/// Reads the neighbourhood of `pos` from the point of view of `mover`.
pub fn extract_pattern(board: &Board, pos: Coord, mover: Color) -> Result<RawPattern, PatternError> {
    if board.get(pos) != Cell::Empty {
        return Err(PatternError::CenterNotEmpty(pos));
    }
    let own = mover.stone();
    let mut cells = [PatternCell::OffBoard; 8];
    for (cell, &(dx, dy)) in cells.iter_mut().zip(OFFSETS.iter()) {
        if let Some(n) = pos.offset(dx, dy) {
            *cell = match board.get(n) {
                Cell::Empty => PatternCell::Empty,
                c if c == own => PatternCell::Own,
                _ => PatternCell::Opponent,
            };
        }
    }
    Ok(RawPattern { cells })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalPatternId(pub u16);

impl CanonicalPatternId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CanonicalPatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const NO_CLASS: u16 = u16::MAX;

/// All pattern classes, with ids assigned by ascending canonical encoding.
#[derive(Clone)]
pub struct PatternCatalog {
    representatives: Vec<RawPattern>,
    geometry: Vec<Geometry>,
    orbit_size: Vec<u32>,
    lookup: Vec<u16>,
}

impl fmt::Debug for PatternCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PatternCatalog")
            .field("classes", &self.representatives.len())
            .finish()
    }
}

impl Default for PatternCatalog {
    fn default() -> Self {
        Self::new()
    }
}

impl PatternCatalog {
    /// Enumerates every raw pattern with a valid off-board geometry and
    /// groups them into classes.
    pub fn new() -> Self {
        let mut classes: BTreeMap<u16, (Geometry, u32)> = BTreeMap::new();
        let mut canonical_of = vec![NO_CLASS; 1 << 16];
        for code in 0..=u16::MAX {
            let raw = RawPattern::decode(code);
            let Ok(geometry) = raw.geometry() else {
                continue;
            };
            let canon = canonical_code(&raw).expect("geometry checked");
            canonical_of[code as usize] = canon;
            classes.entry(canon).or_insert((geometry, 0)).1 += 1;
        }
        let mut id_of = BTreeMap::new();
        let mut representatives = Vec::with_capacity(classes.len());
        let mut geometry = Vec::with_capacity(classes.len());
        let mut orbit_size = Vec::with_capacity(classes.len());
        for (id, (&canon, &(geo, size))) in classes.iter().enumerate() {
            id_of.insert(canon, id as u16);
            representatives.push(RawPattern::decode(canon));
            geometry.push(geo);
            orbit_size.push(size);
        }
        let lookup = canonical_of
            .into_iter()
            .map(|c| if c == NO_CLASS { NO_CLASS } else { id_of[&c] })
            .collect();
        PatternCatalog {
            representatives,
            geometry,
            orbit_size,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representative(&self, id: CanonicalPatternId) -> &RawPattern {
        &self.representatives[id.index()]
    }

    pub fn geometry(&self, id: CanonicalPatternId) -> Geometry {
        self.geometry[id.index()]
    }

    /// Number of raw patterns in the class.
    pub fn orbit_size(&self, id: CanonicalPatternId) -> u32 {
        self.orbit_size[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = CanonicalPatternId> {
        (0..self.len() as u16).map(CanonicalPatternId)
    }

    /// Class counts as `(interior, edge, corner)`.
    pub fn geometry_counts(&self) -> (usize, usize, usize) {
        let count = |g| self.geometry.iter().filter(|&&x| x == g).count();
        (
            count(Geometry::Interior),
            count(Geometry::Edge),
            count(Geometry::Corner),
        )
    }

    pub fn canonicalize(&self, raw: &RawPattern) -> Result<CanonicalPatternId, PatternError> {
        match self.lookup[raw.encode() as usize] {
            NO_CLASS => Err(PatternError::InvalidOffBoardGeometry),
            id => Ok(CanonicalPatternId(id)),
        }
    }

    /// Class of the pattern `mover` faces when playing at the empty point `pos`.
    pub fn classify(
        &self,
        board: &Board,
        pos: Coord,
        mover: Color,
    ) -> Result<CanonicalPatternId, PatternError> {
        let raw = extract_pattern(board, pos, mover)?;
        self.canonicalize(&raw)
    }
}
