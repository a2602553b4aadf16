use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use lctr_core::{MoveKind, Partition};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::error::ServiceError;
use crate::session::{EngineRole, Hint, SessionView};
use crate::store::SessionStore;

#[derive(Debug, Deserialize)]
pub struct CreateGame {
    pub start: String,
    #[serde(default)]
    pub engine_role: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Created {
    pub id: String,
    pub state: SessionView,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub kind: String,
    /// Optional optimistic-concurrency check against `SessionView::ply`.
    #[serde(default)]
    pub ply: Option<usize>,
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ServiceError> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ServiceError::Unprocessable(e.body_text()))
}

async fn create_game(
    State(store): State<Arc<SessionStore>>,
    payload: Result<Json<CreateGame>, JsonRejection>,
) -> Result<(StatusCode, Json<Created>), ServiceError> {
    let req = body(payload)?;
    let start: Partition = req
        .start
        .parse()
        .map_err(|e| ServiceError::Unprocessable(format!("invalid start partition: {e}")))?;
    let role = match req.engine_role.as_deref() {
        Some(text) => text.parse()?,
        None => EngineRole::default(),
    };
    let state = store.create(start, role)?;
    Ok((
        StatusCode::CREATED,
        Json(Created {
            id: state.id.clone(),
            state,
        }),
    ))
}

async fn get_game(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ServiceError> {
    store.state(&id).map(Json)
}

async fn post_move(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<SessionView>, ServiceError> {
    // unknown games are 404 even when the body is bad
    store.state(&id)?;
    let req = body(payload)?;
    let kind = match req.kind.as_str() {
        "L" => MoveKind::LeftColumn,
        "T" => MoveKind::TopRow,
        other => {
            return Err(ServiceError::Unprocessable(format!(
                "invalid move `{other}`, expected \"L\" or \"T\""
            )))
        }
    };
    store.human_move(&id, kind, req.ply).map(Json)
}

async fn get_hint(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> Result<Json<Hint>, ServiceError> {
    store.hint(&id).map(Json)
}

/// The game API. Cross-origin requests are allowed so a separately served
/// browser client can talk to it.
pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(post_move))
        .route("/games/{id}/hint", get(get_hint))
        .layer(CorsLayer::permissive())
        .with_state(store)
}
