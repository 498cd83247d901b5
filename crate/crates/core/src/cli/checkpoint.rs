//! Append-only JSONL checkpoint of computed records.
//!
//! Each line is one record tagged with the engine version, the subset key and
//! the metrics flags it was computed with. Lines from another version are
//! ignored, so a version change forces recomputation. A torn last line (from
//! an interrupted write) is dropped when the file is reopened.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::MetricsRecord;

/// Bumped whenever record contents could change for the same input.
pub const ENGINE_VERSION: &str = concat!("numtope-", env!("CARGO_PKG_VERSION"), "/1");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointLine {
    pub version: String,
    pub subset: String,
    pub ehrhart: bool,
    pub faces: bool,
    pub record: MetricsRecord,
}

/// Valid entries of a checkpoint file, keyed by `N`. Later lines win.
#[derive(Debug, Clone, Default)]
pub struct SweepCheckpoint {
    pub entries: BTreeMap<u64, CheckpointLine>,
    /// Lines skipped because they were torn or from another version.
    pub discarded: usize,
}

impl SweepCheckpoint {
    /// Reads `path`; a missing file is an empty checkpoint.
    pub fn load(path: &Path) -> Result<Self> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(Error::io(path, e)),
        };
        let mut cp = SweepCheckpoint::default();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str::<CheckpointLine>(line) {
                Ok(l) if l.version == ENGINE_VERSION => {
                    cp.entries.insert(l.record.n, l);
                }
                _ => cp.discarded += 1,
            }
        }
        Ok(cp)
    }

    /// Entries usable for a sweep with the given subset and flags.
    pub fn matching(&self, subset: &str, ehrhart: bool, faces: bool) -> BTreeMap<u64, MetricsRecord> {
        self.entries
            .iter()
            .filter(|(_, l)| l.subset == subset && l.ehrhart == ehrhart && l.faces == faces)
            .map(|(&n, l)| (n, l.record.clone()))
            .collect()
    }

    /// Records for `subset` regardless of flags.
    pub fn records_for(&self, subset: &str) -> BTreeMap<u64, MetricsRecord> {
        self.entries
            .iter()
            .filter(|(_, l)| l.subset == subset)
            .map(|(&n, l)| (n, l.record.clone()))
            .collect()
    }
}

/// Appends lines to a checkpoint, first rewriting it without torn lines.
pub struct CheckpointWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CheckpointWriter {
    pub fn open(path: &Path, keep: &SweepCheckpoint) -> Result<Self> {
        if keep.discarded > 0 {
            let tmp = path.with_extension("rewrite.tmp");
            let mut w = BufWriter::new(File::create(&tmp).map_err(|e| Error::io(&tmp, e))?);
            for l in keep.entries.values() {
                write_line(&mut w, l).map_err(|e| Error::io(&tmp, e))?;
            }
            w.flush().map_err(|e| Error::io(&tmp, e))?;
            fs::rename(&tmp, path).map_err(|e| Error::io(path, e))?;
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        Ok(CheckpointWriter {
            path: path.to_path_buf(),
            out: BufWriter::new(file),
        })
    }

    pub fn append(&mut self, line: &CheckpointLine) -> Result<()> {
        write_line(&mut self.out, line)
            .and_then(|()| self.out.flush())
            .map_err(|e| Error::io(&self.path, e))
    }
}

fn write_line(w: &mut impl Write, line: &CheckpointLine) -> std::io::Result<()> {
    let s = serde_json::to_string(line).map_err(std::io::Error::other)?;
    writeln!(w, "{s}")
}
