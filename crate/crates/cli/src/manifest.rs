use crate::error::CliError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Artifact {
    pub path: PathBuf,
    pub sha256: String,
}

impl Artifact {
    pub fn of_bytes(path: &Path, bytes: &[u8]) -> Self {
        Artifact {
            path: path.to_path_buf(),
            sha256: sha256_hex(bytes),
        }
    }

    pub fn of_file(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(CliError::io(path))?;
        Ok(Self::of_bytes(path, &bytes))
    }
}

/// Everything needed to repeat a run and check its output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Arguments after the program name, as given.
    pub argv: Vec<String>,
    /// The parsed arguments, defaults filled in.
    pub params: serde_json::Value,
    pub seeds: Vec<u64>,
    pub inputs: Vec<Artifact>,
    pub outputs: Vec<Artifact>,
    pub wall_clock_seconds: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

impl RunManifest {
    pub fn write_next_to(&self, output: &Path) -> Result<PathBuf, CliError> {
        let path = manifest_path(output);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        std::fs::write(&path, text).map_err(CliError::io(&path))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(CliError::io(path))?;
        serde_json::from_slice(&bytes).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
    }

    /// The recorded arguments with the output path replaced.
    pub fn argv_with_out(&self, out: &Path) -> Vec<OsString> {
        let mut argv: Vec<OsString> = Vec::with_capacity(self.argv.len() + 2);
        let mut replaced = false;
        let mut iter = self.argv.iter();
        while let Some(arg) = iter.next() {
            if arg == "--out" {
                iter.next();
            } else if !arg.starts_with("--out=") {
                argv.push(arg.into());
                continue;
            }
            argv.push("--out".into());
            argv.push(out.as_os_str().to_owned());
            replaced = true;
        }
        if !replaced {
            argv.push("--out".into());
            argv.push(out.as_os_str().to_owned());
        }
        argv
    }
}
