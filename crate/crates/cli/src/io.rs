use std::io::Write;
use std::path::{Path, PathBuf};

use himax::{Error, Result};
use tempfile::NamedTempFile;

/// A file written next to its destination and moved into place only once
/// complete.
pub struct Staged {
    file: NamedTempFile,
    dest: PathBuf,
}

pub fn stage(dest: &Path, contents: &[u8]) -> Result<Staged> {
    let dir = match dest.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut file = NamedTempFile::new_in(dir)?;
    file.write_all(contents)?;
    file.as_file().sync_all()?;
    Ok(Staged {
        file,
        dest: dest.to_path_buf(),
    })
}

impl Staged {
    pub fn commit(self) -> Result<()> {
        self.file.persist(&self.dest).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

/// Writes every file or none of them (up to the final renames).
pub fn write_all_atomic(files: &[(&Path, &[u8])]) -> Result<()> {
    let staged = files
        .iter()
        .map(|(path, contents)| stage(path, contents))
        .collect::<Result<Vec<_>>>()?;
    for s in staged {
        s.commit()?;
    }
    Ok(())
}

pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    write_all_atomic(&[(path, contents)])
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}
