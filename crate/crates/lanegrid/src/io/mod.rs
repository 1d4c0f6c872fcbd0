//! Field ingestion and result emission: GeoJSON fields, plan JSON, SVG
//! figures, and CSV reports. Every file write is whole-file atomic — the
//! bytes go to a temporary sibling first, which then replaces the target by
//! rename — so a crash mid-write never leaves a half-written artifact.

pub mod geojson;
pub mod plan_json;
pub mod report;
pub mod svg;

use std::io::Write;
use std::path::Path;

use crate::error::InputError;

/// Atomically replace `path` with `contents`: the bytes land in a unique
/// temporary sibling which then takes the target's place by rename.
pub fn atomic_write(path: &Path, contents: &str) -> Result<(), InputError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| InputError::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("out.txt");
        std::fs::write(&target, "old").unwrap();
        atomic_write(&target, "new contents").unwrap();
        assert_eq!(std::fs::read_to_string(&target).unwrap(), "new contents");
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1, "no stray temporary files");
    }
}
