use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }
}

/// The requested format, or `default`; rejects formats the command cannot produce.
pub fn choose(
    requested: Option<Format>,
    default: Format,
    allowed: &[Format],
    command: &str,
) -> Result<Format> {
    let f = requested.unwrap_or(default);
    if !allowed.contains(&f) {
        let names: Vec<&str> = allowed.iter().map(|a| a.name()).collect();
        bail!(
            "`{command}` does not support --format {}; use one of {}",
            f.name(),
            names.join(", ")
        );
    }
    Ok(f)
}

/// Writes to `out` through a temporary file in the same directory and a rename, or to
/// stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    let Some(path) = out else {
        let mut stdout = io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        return Ok(stdout.flush()?);
    };
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .with_context(|| format!("{} is not a file path", path.display()))?;
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| {
        let _ = fs::remove_file(&tmp);
        format!("renaming into {}", path.display())
    })
}
