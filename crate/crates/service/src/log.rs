//! Append-only JSON-lines record of accepted moves.

use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use chrono::{SecondsFormat, Utc};
use lctr_core::{MoveKind, Partition};
use serde::{Deserialize, Serialize};

use crate::session::{Actor, HistoryEntry};

/// One line of the log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogRecord {
    pub ts: String,
    pub game: String,
    pub actor: Actor,
    #[serde(rename = "move")]
    pub kind: MoveKind,
    pub resulting: Partition,
}

#[derive(Debug)]
pub struct MoveLog {
    path: PathBuf,
    file: Mutex<File>,
}

impl MoveLog {
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(MoveLog {
            path,
            file: Mutex::new(file),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn record(&self, game: &str, entries: &[HistoryEntry]) -> io::Result<()> {
        let ts = Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true);
        let mut buf = Vec::new();
        for e in entries {
            let record = LogRecord {
                ts: ts.clone(),
                game: game.to_string(),
                actor: e.actor,
                kind: e.kind,
                resulting: e.resulting.clone(),
            };
            serde_json::to_writer(&mut buf, &record)?;
            buf.push(b'\n');
        }
        let mut file = self.file.lock().unwrap_or_else(|e| e.into_inner());
        file.write_all(&buf)?;
        file.flush()
    }
}
