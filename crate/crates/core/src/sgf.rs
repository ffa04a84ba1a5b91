//! SGF (FF[3]/FF[4]) game records, main variation only.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::board::{Color, Coord, BOARD_SIZE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Play(Coord),
    Pass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MoveAction {
    pub color: Color,
    pub kind: MoveKind,
}

impl MoveAction {
    pub fn play(color: Color, at: Coord) -> Self {
        Self {
            color,
            kind: MoveKind::Play(at),
        }
    }

    pub fn pass(color: Color) -> Self {
        Self {
            color,
            kind: MoveKind::Pass,
        }
    }
}

/// One game: setup stones and the main-line moves in record order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameRecord {
    pub board_size: u8,
    pub setup_black: BTreeSet<Coord>,
    pub setup_white: BTreeSet<Coord>,
    pub moves: Vec<MoveAction>,
    pub source_id: String,
}

impl GameRecord {
    pub fn empty(source_id: impl Into<String>) -> Self {
        Self {
            board_size: BOARD_SIZE as u8,
            setup_black: BTreeSet::new(),
            setup_white: BTreeSet::new(),
            moves: Vec::new(),
            source_id: source_id.into(),
        }
    }

    pub fn play_count(&self) -> usize {
        self.moves
            .iter()
            .filter(|m| matches!(m.kind, MoveKind::Play(_)))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SgfError {
    #[error("malformed SGF (game {game}, byte {offset}): {reason}")]
    MalformedSgf {
        game: usize,
        offset: usize,
        reason: &'static str,
    },
    #[error("unsupported board size {size:?} in game {game}")]
    UnsupportedBoardSize { game: usize, size: String },
}

#[derive(Debug, Clone)]
struct Property {
    ident: String,
    values: Vec<Vec<u8>>,
}

type Node = Vec<Property>;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

enum TreeError {
    Unbalanced(usize),
    Syntax(usize, &'static str),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// Parses a game tree starting at `(`. When `main` is set, the nodes of
    /// the first variation are appended to `nodes`; other branches are
    /// consumed and dropped.
    fn tree(&mut self, nodes: &mut Vec<Node>, main: bool) -> Result<(), TreeError> {
        debug_assert_eq!(self.peek(), Some(b'('));
        let open = self.pos;
        self.pos += 1;
        let mut seen_node = false;
        let mut child_taken = false;
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Err(TreeError::Unbalanced(open)),
                Some(b';') => {
                    if child_taken {
                        return Err(TreeError::Syntax(self.pos, "node after a variation"));
                    }
                    self.pos += 1;
                    let node = self.node()?;
                    if main {
                        nodes.push(node);
                    }
                    seen_node = true;
                }
                Some(b'(') => {
                    if !seen_node {
                        return Err(TreeError::Syntax(self.pos, "game tree without a node"));
                    }
                    self.tree(nodes, main && !child_taken)?;
                    child_taken = true;
                }
                Some(b')') => {
                    if !seen_node {
                        return Err(TreeError::Syntax(self.pos, "game tree without a node"));
                    }
                    self.pos += 1;
                    return Ok(());
                }
                Some(_) => return Err(TreeError::Syntax(self.pos, "unexpected character")),
            }
        }
    }

    fn node(&mut self) -> Result<Node, TreeError> {
        let mut props = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_alphabetic() => props.push(self.property()?),
                _ => return Ok(props),
            }
        }
    }

    fn property(&mut self) -> Result<Property, TreeError> {
        let mut ident = String::new();
        while let Some(b) = self.peek() {
            if b.is_ascii_uppercase() {
                ident.push(b as char);
            } else if !b.is_ascii_lowercase() {
                break;
            }
            // FF[3] allows lowercase letters inside identifiers; they are ignored.
            self.pos += 1;
        }
        let mut values = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() != Some(b'[') {
                break;
            }
            let start = self.pos;
            self.pos += 1;
            let mut value = Vec::new();
            loop {
                match self.peek() {
                    None => return Err(TreeError::Syntax(start, "unterminated property value")),
                    Some(b'\\') => {
                        self.pos += 1;
                        match self.peek() {
                            None => {
                                return Err(TreeError::Syntax(start, "unterminated property value"))
                            }
                            // soft line break
                            Some(b'\n') | Some(b'\r') => {
                                self.pos += 1;
                            }
                            Some(b) => {
                                value.push(b);
                                self.pos += 1;
                            }
                        }
                    }
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    Some(b) => {
                        value.push(b);
                        self.pos += 1;
                    }
                }
            }
            values.push(value);
        }
        if ident.is_empty() || values.is_empty() {
            return Err(TreeError::Syntax(self.pos, "property without identifier or value"));
        }
        Ok(Property { ident, values })
    }
}

enum Point {
    Pass,
    At(Coord),
}

fn decode_point(raw: &[u8]) -> Option<Point> {
    let raw = raw.trim_ascii();
    match raw {
        [] | b"tt" => Some(Point::Pass),
        [a, b] => {
            let x = a.checked_sub(b'a')? as usize;
            let y = b.checked_sub(b'a')? as usize;
            Coord::new(x, y).map(Point::At)
        }
        _ => None,
    }
}

/// Setup values: single points or FF[4] rectangles `aa:cc`.
fn decode_point_list(raw: &[u8], out: &mut BTreeSet<Coord>) -> bool {
    let raw = raw.trim_ascii();
    if let Some(split) = raw.iter().position(|&b| b == b':') {
        let (Some(Point::At(a)), Some(Point::At(b))) =
            (decode_point(&raw[..split]), decode_point(&raw[split + 1..]))
        else {
            return false;
        };
        for x in a.x.min(b.x)..=a.x.max(b.x) {
            for y in a.y.min(b.y)..=a.y.max(b.y) {
                out.insert(Coord { x, y });
            }
        }
        true
    } else {
        match decode_point(raw) {
            Some(Point::At(p)) => {
                out.insert(p);
                true
            }
            _ => false,
        }
    }
}

fn text(raw: &[u8]) -> String {
    String::from_utf8_lossy(raw).into_owned()
}

fn build_record(
    nodes: &[Node],
    game: usize,
    origin: &str,
    offset: usize,
) -> Result<GameRecord, SgfError> {
    let mut record = GameRecord::empty(format!("{origin}#{game}"));
    for (node_index, node) in nodes.iter().enumerate() {
        for prop in node {
            match prop.ident.as_str() {
                "SZ" if node_index == 0 => {
                    let v = text(&prop.values[0]);
                    let v = v.trim();
                    let ok = v == "19" || v == "19:19";
                    if !ok {
                        return Err(SgfError::UnsupportedBoardSize {
                            game,
                            size: v.to_string(),
                        });
                    }
                }
                "GN" if node_index == 0 => record.source_id = text(&prop.values[0]),
                "AB" | "AW" if node_index == 0 => {
                    let target = if prop.ident == "AB" {
                        &mut record.setup_black
                    } else {
                        &mut record.setup_white
                    };
                    for v in &prop.values {
                        if !decode_point_list(v, target) {
                            log::warn!(
                                "{}: ignoring bad setup point {:?}",
                                record.source_id,
                                text(v)
                            );
                        }
                    }
                }
                "AB" | "AW" | "AE" => {
                    log::warn!(
                        "{}: setup property {} outside the root node ignored",
                        record.source_id,
                        prop.ident
                    );
                }
                "B" | "W" => {
                    let color = if prop.ident == "B" {
                        Color::Black
                    } else {
                        Color::White
                    };
                    match decode_point(&prop.values[0]) {
                        Some(Point::Pass) => record.moves.push(MoveAction::pass(color)),
                        Some(Point::At(p)) => record.moves.push(MoveAction::play(color, p)),
                        None => log::warn!(
                            "{}: skipping unreadable move {}[{}]",
                            record.source_id,
                            prop.ident,
                            text(&prop.values[0])
                        ),
                    }
                }
                _ => {}
            }
        }
    }
    if record.setup_black.intersection(&record.setup_white).next().is_some() {
        return Err(SgfError::MalformedSgf {
            game,
            offset,
            reason: "setup stones of both colours on one point",
        });
    }
    Ok(record)
}

/// Parses every game tree of an SGF collection.
///
/// Games without a `GN` property get the source id `"#<index>"`.
pub fn parse_sgf(text: &str) -> Vec<Result<GameRecord, SgfError>> {
    parse_sgf_named(text, "")
}

/// Like [`parse_sgf`], with `origin` prefixed to generated source ids.
pub fn parse_sgf_named(text: &str, origin: &str) -> Vec<Result<GameRecord, SgfError>> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut out = Vec::new();
    let mut game = 0;
    loop {
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some(b'(') => {
                let start = parser.pos;
                let mut nodes = Vec::new();
                match parser.tree(&mut nodes, true) {
                    Ok(()) => out.push(build_record(&nodes, game, origin, start)),
                    Err(TreeError::Unbalanced(offset)) => {
                        out.push(Err(SgfError::MalformedSgf {
                            game,
                            offset,
                            reason: "unbalanced parentheses",
                        }));
                        break;
                    }
                    Err(TreeError::Syntax(offset, reason)) => {
                        out.push(Err(SgfError::MalformedSgf {
                            game,
                            offset,
                            reason,
                        }));
                        skip_to_tree_end(&mut parser, start);
                    }
                }
                game += 1;
            }
            Some(b')') => {
                out.push(Err(SgfError::MalformedSgf {
                    game,
                    offset: parser.pos,
                    reason: "unbalanced parentheses",
                }));
                parser.pos += 1;
                game += 1;
            }
            Some(_) => {
                // text between trees is ignored
                parser.pos += 1;
            }
        }
    }
    out
}

/// Best-effort skip to just past the parenthesis closing the tree opened at `start`.
fn skip_to_tree_end(parser: &mut Parser<'_>, start: usize) {
    let mut depth = 0i64;
    let mut i = start;
    let bytes = parser.bytes;
    let mut in_value = false;
    while i < bytes.len() {
        let b = bytes[i];
        if in_value {
            if b == b'\\' {
                i += 1;
            } else if b == b']' {
                in_value = false;
            }
        } else if b == b'[' {
            in_value = true;
        } else if b == b'(' {
            depth += 1;
        } else if b == b')' {
            depth -= 1;
            if depth == 0 {
                parser.pos = i + 1;
                return;
            }
        }
        i += 1;
    }
    parser.pos = bytes.len();
}

/// Parses a collection, failing on the first bad game.
pub fn parse_games(text: &str) -> Result<Vec<GameRecord>, SgfError> {
    parse_sgf(text).into_iter().collect()
}

fn push_point(out: &mut String, p: Coord) {
    out.push((b'a' + p.x) as char);
    out.push((b'a' + p.y) as char);
}

fn push_escaped(out: &mut String, s: &str) {
    for ch in s.chars() {
        if ch == ']' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
}

/// Minimal FF[4] serialisation: root properties, setup stones and moves.
pub fn to_sgf(game: &GameRecord) -> String {
    let mut out = String::from("(;FF[4]GM[1]SZ[19]GN[");
    push_escaped(&mut out, &game.source_id);
    out.push(']');
    for (ident, stones) in [("AB", &game.setup_black), ("AW", &game.setup_white)] {
        if stones.is_empty() {
            continue;
        }
        out.push_str(ident);
        for &p in stones {
            out.push('[');
            push_point(&mut out, p);
            out.push(']');
        }
    }
    for m in &game.moves {
        out.push_str(match m.color {
            Color::Black => ";B[",
            Color::White => ";W[",
        });
        if let MoveKind::Play(p) = m.kind {
            push_point(&mut out, p);
        }
        out.push(']');
    }
    out.push_str(")\n");
    out
}
