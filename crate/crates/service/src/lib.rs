//! HTTP session API for playing the root game by hand.
//!
//! Sessions live in memory, optionally mirrored to a JSON-lines log so a
//! restarted server picks them up again. Every response carries the
//! session revision; a step or undo naming a stale revision gets 409.

pub mod api;
pub mod error;
pub mod schema;
pub mod session;

pub use api::{CreateRequest, HintsView, Layout, SessionView, StepRequest};
pub use error::ApiError;
pub use session::{Session, Store, StoreError};

use axum::http::{header, HeaderValue, Method};
use axum::routing::{get, post};
use axum::Router;
use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::services::ServeDir;

#[derive(Debug, Clone)]
pub struct AppState {
    pub store: Arc<Store>,
}

#[derive(Debug, Clone, Default)]
pub struct Config {
    /// JSON-lines snapshot log; sessions are in memory only without it.
    pub persist: Option<PathBuf>,
    /// Directory of UI assets served under `/`.
    pub static_dir: Option<PathBuf>,
    /// Allowed CORS origin; any origin when unset.
    pub cors_origin: Option<String>,
}

impl AppState {
    pub fn new(config: &Config) -> io::Result<AppState> {
        let store = match &config.persist {
            Some(path) => Store::open(path)?,
            None => Store::in_memory(),
        };
        Ok(AppState { store: Arc::new(store) })
    }
}

fn cors(origin: Option<&str>) -> io::Result<CorsLayer> {
    let allow = match origin {
        Some(o) => AllowOrigin::exact(
            HeaderValue::from_str(o).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?,
        ),
        None => AllowOrigin::from(Any),
    };
    Ok(CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST, Method::DELETE])
        .allow_headers([header::CONTENT_TYPE]))
}

pub fn router(state: AppState, config: &Config) -> io::Result<Router> {
    let api = Router::new()
        .route("/sessions", post(api::create))
        .route("/sessions/{id}", get(api::get).delete(api::delete))
        .route("/sessions/{id}/steps", post(api::step))
        .route("/sessions/{id}/undo", post(api::undo))
        .route("/sessions/{id}/hints", get(api::hints))
        .route("/layouts", get(api::layout))
        .route("/schema", get(api::schema))
        .with_state(state);
    let app = match &config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    Ok(app.layer(cors(config.cors_origin.as_deref())?))
}

/// Binds `addr` and serves until the process ends.
pub async fn serve(addr: SocketAddr, config: Config) -> io::Result<()> {
    let app = router(AppState::new(&config)?, &config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app).await
}
