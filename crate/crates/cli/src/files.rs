use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use silverbig_core::designs::Design;
use silverbig_core::format;
use silverbig_core::silver::Coloring;
use silverbig_core::Graph;

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_design(path: &Path) -> Result<Design> {
    format::read_design(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    format::read_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn read_coloring(path: &Path) -> Result<Coloring> {
    format::read_coloring(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn read_alpha_set(path: &Path) -> Result<Vec<usize>> {
    format::read_alpha_set(&read(path)?).with_context(|| format!("in {}", path.display()))
}
