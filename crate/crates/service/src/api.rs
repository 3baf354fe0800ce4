//! Request and response bodies, and the route handlers.

use crate::error::ApiError;
use crate::session::Session;
use crate::AppState;
use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::IntoResponse;
use axum::Json;
use rootgame::solver::solve_position;
use rootgame::{Embedding, InjectivityWitness, Mode, PositionRecord, RootId, RootSet, SolverConfig, Status, Step, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreateRequest {
    pub embedding: String,
    pub pi: String,
    #[serde(default)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepRequest {
    #[serde(flatten)]
    pub step: Step,
    #[serde(default)]
    pub revision: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RevisionQuery {
    pub revision: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct HintsQuery {
    /// Solver node budget; without it no verdict is computed.
    pub budget: Option<u64>,
    #[serde(default)]
    pub merges: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayoutQuery {
    pub embedding: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub revision: u64,
    pub pi: String,
    pub position: PositionRecord,
    pub status: Status,
    /// Why the tokens are not yet injective; absent once they are.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<InjectivityWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layout: Option<Layout>,
    pub created_ms: u64,
    pub updated_ms: u64,
}

impl SessionView {
    pub fn of(s: &Session) -> SessionView {
        SessionView {
            id: s.id.clone(),
            revision: s.revision,
            pi: s.pi.clone(),
            position: s.position.record(),
            status: s.position.status(),
            obstruction: s.position.injectivity().err(),
            labels: s.position.render_labels(),
            layout: None,
            created_ms: s.created_ms,
            updated_ms: s.updated_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HintsView {
    pub id: String,
    pub revision: u64,
    pub legal_moves: Vec<Step>,
    pub legal_merges: Vec<Step>,
    pub qualifying_splits: Vec<RootSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareView {
    pub id: RootId,
    pub name: String,
    pub component: usize,
    /// 1-based, on the combined board.
    pub row: usize,
    pub col: usize,
    pub height: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Board {
    pub group: String,
    pub rows: usize,
    pub cols: usize,
    pub squares: Vec<SquareView>,
}

impl Board {
    fn of(rs: &rootgame::RootSystem) -> Board {
        let (rows, cols) = rs.board_size();
        let squares = (0..rs.len())
            .map(|id| {
                let sq = rs.square(id);
                SquareView {
                    id,
                    name: rs.name(id),
                    component: sq.component,
                    row: sq.row,
                    col: rs.board_col_offset(sq.component) + sq.col,
                    height: rs.height(id),
                }
            })
            .collect();
        Board {
            group: rs.spec().to_string(),
            rows,
            cols,
            squares,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub embedding: String,
    pub target: Board,
    pub source: Board,
    /// Image of each target root in the source, `null` for zero.
    pub phat: Vec<Option<RootId>>,
    pub copies: usize,
    pub identity_diagonal: bool,
}

impl Layout {
    pub fn of(e: &Embedding) -> Layout {
        Layout {
            embedding: e.spec().to_string(),
            target: Board::of(e.target()),
            source: Board::of(e.source()),
            phat: e.phat_table().to_vec(),
            copies: e.copies(),
            identity_diagonal: e.is_identity_diagonal(),
        }
    }
}

pub async fn create(
    State(st): State<AppState>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<impl IntoResponse, ApiError> {
    let Json(req) = body?;
    let s = st.store.create(&req.embedding, &req.pi, req.mode)?;
    let mut view = SessionView::of(&s);
    view.layout = Some(Layout::of(s.position.embedding()));
    Ok((StatusCode::CREATED, Json(view)))
}

pub async fn get(State(st): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    Ok(Json(SessionView::of(&st.store.get(&id)?)))
}

pub async fn delete(State(st): State<AppState>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    st.store.delete(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

pub async fn step(
    State(st): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<StepRequest>, JsonRejection>,
) -> Result<Json<SessionView>, ApiError> {
    let Json(req) = body?;
    Ok(Json(SessionView::of(&st.store.apply(&id, &req.step, req.revision)?)))
}

pub async fn undo(
    State(st): State<AppState>,
    Path(id): Path<String>,
    q: Result<Query<RevisionQuery>, QueryRejection>,
) -> Result<Json<SessionView>, ApiError> {
    let Query(q) = q?;
    Ok(Json(SessionView::of(&st.store.undo(&id, q.revision)?)))
}

pub async fn hints(
    State(st): State<AppState>,
    Path(id): Path<String>,
    q: Result<Query<HintsQuery>, QueryRejection>,
) -> Result<Json<HintsView>, ApiError> {
    let Query(q) = q?;
    let s = st.store.get(&id)?;
    let view = tokio::task::spawn_blocking(move || {
        let p = &s.position;
        let solver_verdict = q.budget.map(|budget| {
            let cfg = SolverConfig {
                mode: p.mode(),
                allow_merges: q.merges,
                node_budget: budget,
                ..SolverConfig::default()
            };
            solve_position(p, &cfg)
        });
        HintsView {
            id: s.id.clone(),
            revision: s.revision,
            legal_moves: p.legal_moves(),
            legal_merges: p.legal_merges(),
            qualifying_splits: match p.mode() {
                Mode::TopDegree => p.qualifying_splits(),
                Mode::FreeDegree => Vec::new(),
            },
            solver_verdict,
        }
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "hint_failed", e.to_string()))?;
    Ok(Json(view))
}

pub async fn layout(q: Result<Query<LayoutQuery>, QueryRejection>) -> Result<Json<Layout>, ApiError> {
    let Query(q) = q?;
    let e = Embedding::parse(&q.embedding)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "bad_embedding", e.to_string()))?;
    Ok(Json(Layout::of(&e)))
}

pub async fn schema() -> Json<serde_json::Value> {
    Json(crate::schema::all())
}
