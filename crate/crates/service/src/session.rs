//! Sessions and their optional JSON-lines snapshot log.

use rootgame::solver::replay_from;
use rootgame::{Embedding, GameError, Mode, Position, Step};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub pi: String,
    pub initial: Position,
    pub position: Position,
    pub revision: u64,
    pub created_ms: u64,
    pub updated_ms: u64,
}

/// One line of the snapshot log.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Snapshot {
    Live {
        id: String,
        embedding: String,
        pi: String,
        mode: Mode,
        history: Vec<Step>,
        revision: u64,
        created_ms: u64,
        updated_ms: u64,
    },
    Deleted {
        id: String,
        deleted: bool,
    },
}

impl Session {
    fn snapshot(&self) -> Snapshot {
        Snapshot::Live {
            id: self.id.clone(),
            embedding: self.position.embedding().spec().to_string(),
            pi: self.pi.clone(),
            mode: self.position.mode(),
            history: self.position.history().to_vec(),
            revision: self.revision,
            created_ms: self.created_ms,
            updated_ms: self.updated_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StoreError {
    UnknownSession(String),
    Conflict { expected: u64, current: u64 },
    NothingToUndo,
    Game(GameError),
    Io(String),
}

impl From<GameError> for StoreError {
    fn from(e: GameError) -> Self {
        StoreError::Game(e)
    }
}

/// All live sessions, guarded by one lock; operations are short.
#[derive(Debug, Default)]
pub struct Store {
    sessions: Mutex<HashMap<String, Session>>,
    log: Option<Mutex<File>>,
}

impl Store {
    pub fn in_memory() -> Store {
        Store::default()
    }

    /// Opens or creates the log at `path` and restores the sessions it records.
    pub fn open(path: &Path) -> io::Result<Store> {
        let mut sessions = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (n, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let bad = |msg: String| io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {msg}", n + 1));
                let snap: Snapshot = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
                match snap {
                    Snapshot::Deleted { id, .. } => {
                        sessions.remove(&id);
                    }
                    Snapshot::Live {
                        id,
                        embedding,
                        pi,
                        mode,
                        history,
                        revision,
                        created_ms,
                        updated_ms,
                    } => {
                        let e = Arc::new(Embedding::parse(&embedding).map_err(|e| bad(e.to_string()))?);
                        let initial = Position::initial_from_literal(e, &pi, mode).map_err(|e| bad(e.to_string()))?;
                        let position = replay_from(&initial, &history).map_err(|e| bad(e.to_string()))?;
                        sessions.insert(
                            id.clone(),
                            Session {
                                id,
                                pi,
                                initial,
                                position,
                                revision,
                                created_ms,
                                updated_ms,
                            },
                        );
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Store {
            sessions: Mutex::new(sessions),
            log: Some(Mutex::new(file)),
        })
    }

    fn append(&self, snap: &Snapshot) -> Result<(), StoreError> {
        let Some(log) = &self.log else { return Ok(()) };
        let mut f = log.lock().unwrap();
        let line = serde_json::to_string(snap).expect("snapshots serialize");
        writeln!(f, "{line}")
            .and_then(|_| f.flush())
            .map_err(|e| StoreError::Io(e.to_string()))
    }

    pub fn create(&self, embedding: &str, pi: &str, mode: Mode) -> Result<Session, StoreError> {
        let e = Arc::new(Embedding::parse(embedding).map_err(GameError::from)?);
        let initial = Position::initial_from_literal(e, pi, mode)?;
        let t = now_ms();
        let s = Session {
            id: uuid::Uuid::new_v4().simple().to_string(),
            pi: pi.trim().to_string(),
            position: initial.clone(),
            initial,
            revision: 0,
            created_ms: t,
            updated_ms: t,
        };
        self.append(&s.snapshot())?;
        self.sessions.lock().unwrap().insert(s.id.clone(), s.clone());
        Ok(s)
    }

    pub fn get(&self, id: &str) -> Result<Session, StoreError> {
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| StoreError::UnknownSession(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn update(
        &self,
        id: &str,
        expected: Option<u64>,
        f: impl FnOnce(&Session) -> Result<Position, StoreError>,
    ) -> Result<Session, StoreError> {
        let mut all = self.sessions.lock().unwrap();
        let s = all.get_mut(id).ok_or_else(|| StoreError::UnknownSession(id.to_string()))?;
        if let Some(expected) = expected {
            if expected != s.revision {
                return Err(StoreError::Conflict {
                    expected,
                    current: s.revision,
                });
            }
        }
        let position = f(s)?;
        let mut next = s.clone();
        next.position = position;
        next.revision += 1;
        next.updated_ms = now_ms();
        self.append(&next.snapshot())?;
        *s = next.clone();
        Ok(next)
    }

    pub fn apply(&self, id: &str, step: &Step, expected: Option<u64>) -> Result<Session, StoreError> {
        self.update(id, expected, |s| Ok(s.position.apply_step(step)?))
    }

    /// Drops the last step by replaying the rest of the history.
    pub fn undo(&self, id: &str, expected: Option<u64>) -> Result<Session, StoreError> {
        self.update(id, expected, |s| {
            let h = s.position.history();
            if h.is_empty() {
                return Err(StoreError::NothingToUndo);
            }
            replay_from(&s.initial, &h[..h.len() - 1]).map_err(|e| StoreError::Game(e.error))
        })
    }

    pub fn delete(&self, id: &str) -> Result<(), StoreError> {
        let mut all = self.sessions.lock().unwrap();
        if all.remove(id).is_none() {
            return Err(StoreError::UnknownSession(id.to_string()));
        }
        self.append(&Snapshot::Deleted {
            id: id.to_string(),
            deleted: true,
        })
    }
}
