use crate::session::StoreError;
use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

/// Error body: `{"error": code, "reason": message}`.
#[derive(Debug, Clone, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub error: String,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revision: Option<u64>,
}

impl ApiError {
    pub fn new(status: StatusCode, error: &str, reason: impl Into<String>) -> ApiError {
        ApiError {
            status,
            error: error.to_string(),
            reason: reason.into(),
            revision: None,
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::UnknownSession(id) => {
                ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session `{id}`"))
            }
            StoreError::Conflict { expected, current } => ApiError {
                revision: Some(current),
                ..ApiError::new(
                    StatusCode::CONFLICT,
                    "revision_conflict",
                    format!("expected revision {expected}, session is at {current}"),
                )
            },
            StoreError::NothingToUndo => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "nothing_to_undo", "history is empty")
            }
            StoreError::Game(g) => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, g.code(), g.to_string()),
            StoreError::Io(msg) => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "io", msg),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::new(r.status(), "bad_request", r.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        ApiError::new(r.status(), "bad_request", r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}
