use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use lctr_core::{MoveKind, Partition};
use rand::RngCore;

use crate::error::ServiceError;
use crate::log::MoveLog;
use crate::session::{EngineRole, GameSession, Hint, SessionView};

/// In-memory sessions. Lookups share a read lock on the index; each session
/// has its own mutex so moves on one game are serialized without blocking
/// the others.
#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<GameSession>>>>,
    log: Option<MoveLog>,
}

fn new_id() -> String {
    let mut bytes = [0u8; 16];
    rand::thread_rng().fill_bytes(&mut bytes);
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl SessionStore {
    pub fn new(log: Option<MoveLog>) -> Self {
        SessionStore {
            sessions: RwLock::default(),
            log,
        }
    }

    pub fn log(&self) -> Option<&MoveLog> {
        self.log.as_ref()
    }

    pub fn len(&self) -> usize {
        self.sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<GameSession>>, ServiceError> {
        self.sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(format!("no game with id `{id}`")))
    }

    fn with_session<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut GameSession) -> Result<T, ServiceError>,
    ) -> Result<T, ServiceError> {
        let session = self.get(id)?;
        let mut guard = session.lock().unwrap_or_else(|e| e.into_inner());
        f(&mut guard)
    }

    pub fn create(&self, start: Partition, role: EngineRole) -> Result<SessionView, ServiceError> {
        let session = GameSession::new(new_id(), start, role)?;
        if let Some(log) = &self.log {
            log.record(session.id(), session.history())?;
        }
        let view = session.view();
        self.sessions
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(view.id.clone(), Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn state(&self, id: &str) -> Result<SessionView, ServiceError> {
        self.with_session(id, |s| Ok(s.view()))
    }

    pub fn human_move(
        &self,
        id: &str,
        kind: MoveKind,
        expected_ply: Option<usize>,
    ) -> Result<SessionView, ServiceError> {
        self.with_session(id, |s| {
            let added = s.apply_human_move(kind, expected_ply)?;
            if let Some(log) = &self.log {
                log.record(id, added)?;
            }
            Ok(s.view())
        })
    }

    pub fn hint(&self, id: &str) -> Result<Hint, ServiceError> {
        self.with_session(id, |s| s.hint())
    }
}
