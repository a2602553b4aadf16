//! JSON-over-HTTP service for playing LCTR against the optimal engine.
//!
//! | method | path                | body                              | success |
//! |--------|---------------------|-----------------------------------|---------|
//! | POST   | `/games`            | `{start, engine_role}`            | 201 `{id, state}` |
//! | GET    | `/games/{id}`       |                                   | 200 state |
//! | POST   | `/games/{id}/moves` | `{move: "L" \| "T", ply?}`        | 200 state |
//! | GET    | `/games/{id}/hint`  |                                   | 200 hint |
//!
//! Errors are `{error: string}` with status 404 (unknown game), 409 (game
//! finished, wrong turn, stale ply) or 422 (bad partition, role or move).

pub mod error;
pub mod log;
pub mod routes;
pub mod session;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use tokio::net::TcpListener;

pub use error::ServiceError;
pub use routes::router;
pub use session::{Actor, EngineRole, GameSession, Hint, HistoryEntry, SessionView};
pub use store::SessionStore;

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, log_path: Option<PathBuf>) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    serve_on(listener, log_path).await
}

/// Serves on an already bound listener.
pub async fn serve_on(listener: TcpListener, log_path: Option<PathBuf>) -> std::io::Result<()> {
    let log = log_path.map(log::MoveLog::open).transpose()?;
    if let Some(log) = &log {
        tracing::info!(path = %log.path().display(), "logging moves");
    }
    let store = Arc::new(SessionStore::new(log));
    tracing::info!(addr = %listener.local_addr()?, "serving LCTR games");
    axum::serve(listener, router(store)).await
}
