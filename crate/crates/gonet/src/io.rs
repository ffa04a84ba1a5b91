//! Loading SGF databases from disk and writing generated ones.

use std::fs;
use std::path::{Path, PathBuf};

use gonet_core::sgf::{parse_sgf_named, to_sgf, SgfError};
use gonet_core::GameRecord;
use walkdir::WalkDir;

use crate::{Error, Result};

/// A game that could not be ingested, with the file it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Rejected {
    pub path: PathBuf,
    pub error: SgfError,
}

#[derive(Debug, Clone, Default)]
pub struct Database {
    pub games: Vec<GameRecord>,
    pub files: usize,
    pub rejected: Vec<Rejected>,
}

/// `path` itself when it is a file, otherwise every `*.sgf` below it in
/// file-name order.
pub fn sgf_files(path: &Path) -> Result<Vec<PathBuf>> {
    let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
    if meta.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in WalkDir::new(path).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let p = e.path().unwrap_or(path).to_path_buf();
            Error::io(p, e.into())
        })?;
        let is_sgf = entry
            .path()
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("sgf"));
        if entry.file_type().is_file() && is_sgf {
            files.push(entry.into_path());
        }
    }
    Ok(files)
}

/// Parses every game under `path`. Games that fail to parse are logged and
/// listed in [`Database::rejected`]; only unreadable files are errors.
pub fn load_database(path: &Path) -> Result<Database> {
    let mut db = Database::default();
    for file in sgf_files(path)? {
        let bytes = fs::read(&file).map_err(|e| Error::io(&file, e))?;
        // Only ASCII matters for moves; other text is carried lossily.
        let text = String::from_utf8_lossy(&bytes);
        let origin = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        for result in parse_sgf_named(&text, &origin) {
            match result {
                Ok(game) => db.games.push(game),
                Err(error) => {
                    log::warn!("{}: {error}", file.display());
                    db.rejected.push(Rejected {
                        path: file.clone(),
                        error,
                    });
                }
            }
        }
        db.files += 1;
    }
    log::info!(
        "loaded {} games from {} files ({} rejected)",
        db.games.len(),
        db.files,
        db.rejected.len()
    );
    Ok(db)
}

/// Writes one `<index>-<source_id>.sgf` per game into `dir`, creating it if
/// needed. The zero-padded index keeps file-name order equal to game order.
pub fn write_games(dir: &Path, games: &[GameRecord]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::with_capacity(games.len());
    for (i, game) in games.iter().enumerate() {
        let name: String = game
            .source_id
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        let path = dir.join(format!("{i:06}-{name}.sgf"));
        fs::write(&path, to_sgf(game)).map_err(|e| Error::io(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gonet_core::playout::generate_games;
    use gonet_core::{PlayoutPolicy, PolicyKind};

    #[test]
    fn round_trip_through_directory() {
        let dir = tempfile::tempdir().unwrap();
        let mut policy = PlayoutPolicy::new(PolicyKind::GreedyCapture, 3);
        policy.max_moves = 40;
        let games = generate_games(&policy, 4);
        write_games(dir.path(), &games).unwrap();
        fs::write(dir.path().join("notes.txt"), "not a game").unwrap();
        let db = load_database(dir.path()).unwrap();
        assert_eq!(db.files, 4);
        assert_eq!(db.games, games);
        assert!(db.rejected.is_empty());
    }

    #[test]
    fn bad_games_are_collected_not_fatal() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.sgf"), "(;SZ[19];B[pd])(;SZ[9];B[cc])(;SZ[19];W[dd])").unwrap();
        let db = load_database(dir.path()).unwrap();
        assert_eq!(db.games.len(), 2);
        assert_eq!(db.games[0].source_id, "a#0");
        assert_eq!(db.rejected.len(), 1);
        assert!(matches!(db.rejected[0].error, SgfError::UnsupportedBoardSize { .. }));
    }

    #[test]
    fn missing_path_is_an_io_error() {
        let err = load_database(Path::new("/definitely/not/here")).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
