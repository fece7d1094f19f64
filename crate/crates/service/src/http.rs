//! JSON-over-HTTP routes for [`SessionStore`].

use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use crate::session::{CreateSession, HistoryEntry, MoveAnnotation, SessionError, SessionStore, SessionView};

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl From<SessionError> for ApiError {
    fn from(err: SessionError) -> Self {
        let status = match &err {
            SessionError::Parse { .. } | SessionError::Game(_) | SessionError::TooLarge(..) => {
                StatusCode::BAD_REQUEST
            }
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::IllegalMove(..) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::Finished => StatusCode::CONFLICT,
            SessionError::Journal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        Self {
            status,
            body: ErrorBody {
                code: err.code().to_string(),
                message: err.to_string(),
            },
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(rejection: JsonRejection) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            body: ErrorBody {
                code: "parse_error".into(),
                message: rejection.body_text(),
            },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub mv: String,
}

#[derive(Debug, Serialize)]
pub struct MovesResponse {
    pub state: String,
    pub to_move: cdsort::Player,
    pub moves: Vec<MoveAnnotation>,
}

#[derive(Debug, Serialize)]
pub struct MoveResponse {
    pub played: HistoryEntry,
    pub session: SessionView,
}

type Store = Arc<SessionStore>;

pub fn router(store: Store) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/moves", get(moves))
        .route("/sessions/{id}/move", post(play))
        .route("/sessions/{id}/engine-move", post(engine_move))
        .with_state(store)
}

/// Runs `f` on the session's lock in a blocking task so a long solve does not
/// stall the async workers.
async fn with_session<T: Send + 'static>(
    store: Store,
    id: String,
    f: impl FnOnce(&mut crate::session::Session) -> Result<T, SessionError> + Send + 'static,
) -> Result<T, ApiError> {
    let session = store.get(&id)?;
    tokio::task::spawn_blocking(move || {
        let mut guard = session.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
        f(&mut guard)
    })
    .await
    .expect("session task panicked")
    .map_err(ApiError::from)
}

async fn create(
    State(store): State<Store>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let Json(request) = body?;
    let view = tokio::task::spawn_blocking(move || {
        let session = store.create(&request)?;
        let view = session.lock().expect("fresh session lock").view();
        Ok::<_, SessionError>(view)
    })
    .await
    .expect("create task panicked")?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn show(State(store): State<Store>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    with_session(store, id, |s| Ok(s.view())).await.map(Json)
}

async fn moves(State(store): State<Store>, Path(id): Path<String>) -> Result<Json<MovesResponse>, ApiError> {
    with_session(store, id, |s| {
        Ok(MovesResponse {
            moves: s.legal_moves()?,
            state: s.state().to_string(),
            to_move: s.to_move(),
        })
    })
    .await
    .map(Json)
}

async fn play(
    State(store): State<Store>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<MoveResponse>, ApiError> {
    let Json(request) = body?;
    with_session(store, id, move |s| {
        let played = s.play(&request.mv)?.clone();
        Ok(MoveResponse {
            played,
            session: s.view(),
        })
    })
    .await
    .map(Json)
}

async fn engine_move(State(store): State<Store>, Path(id): Path<String>) -> Result<Json<MoveResponse>, ApiError> {
    with_session(store, id, |s| {
        let played = s.engine_move()?.clone();
        Ok(MoveResponse {
            played,
            session: s.view(),
        })
    })
    .await
    .map(Json)
}

/// Serves the API until the process is stopped.
pub async fn serve(addr: std::net::SocketAddr, store: SessionStore) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(Arc::new(store))).await
}
