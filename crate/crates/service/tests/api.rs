use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use rootgame::{Embedding, Mode, Position, RootSet, Step};
use rootgame_service::{router, AppState, Config};
use serde_json::{json, Value};
use std::sync::Arc;
use tower::ServiceExt;

const A4X3: &str = "diag(id:A4,id:A4,id:A4)";
const WINNING_PI: &str = "21435;32154;24153";
const A3X3: &str = "diag(id:A3,id:A3,id:A3)";

fn app_with(config: &Config) -> Router {
    router(AppState::new(config).unwrap(), config).unwrap()
}

fn app() -> Router {
    app_with(&Config::default())
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header(header::CONTENT_TYPE, "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let v = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
    };
    (status, v)
}

async fn raw_get(app: &Router, uri: &str) -> String {
    let req = Request::builder().uri(uri).body(Body::empty()).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    String::from_utf8(resp.into_body().collect().await.unwrap().to_bytes().to_vec()).unwrap()
}

async fn create(app: &Router, embedding: &str, pi: &str) -> Value {
    let (s, v) = call(
        app,
        Method::POST,
        "/sessions",
        Some(json!({"embedding": embedding, "pi": pi, "mode": "top"})),
    )
    .await;
    assert_eq!(s, StatusCode::CREATED, "{v}");
    v
}

fn root(embedding: &str, name: &str) -> usize {
    Embedding::parse(embedding).unwrap().target().parse_root(name).unwrap()
}

fn winning_moves() -> Vec<Value> {
    vec![
        json!({"kind": "move", "beta": root(A4X3, "c2:α_{3,4}"), "region": 0}),
        json!({"kind": "move", "beta": root(A4X3, "c1:α_{2,5}"), "region": 0}),
    ]
}

#[tokio::test]
async fn create_reports_the_initial_position() {
    let app = app();
    let v = create(&app, A4X3, WINNING_PI).await;
    assert_eq!(v["status"]["verdict"], "open");
    assert_eq!(v["revision"], 0);
    assert_eq!(v["layout"]["target"]["squares"].as_array().unwrap().len(), 30);
    assert_eq!(v["position"]["tokens"].as_array().unwrap().len(), 10);
    assert_eq!(v["position"]["regions"].as_array().unwrap().len(), 1);
    assert_eq!(v["layout"]["copies"], 3);
    assert!(v["obstruction"].is_object());
}

#[tokio::test]
async fn two_moves_win() {
    let app = app();
    let id = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    let mut last = Value::Null;
    for (i, m) in winning_moves().into_iter().enumerate() {
        let (s, v) = call(&app, Method::POST, &format!("/sessions/{id}/steps"), Some(m)).await;
        assert_eq!(s, StatusCode::OK, "{v}");
        assert_eq!(v["revision"], i as u64 + 1);
        last = v;
    }
    assert_eq!(last["status"]["verdict"], "won");
    assert!(last.get("obstruction").is_none());
    let (s, got) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(got["position"], last["position"]);
}

#[tokio::test]
async fn non_ideal_split_is_rejected() {
    let app = app();
    let id = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    let low = root(A4X3, "c1:α_{1,2}");
    let (s, v) = call(
        &app,
        Method::POST,
        &format!("/sessions/{id}/steps"),
        Some(json!({"kind": "split", "ideal": [low]})),
    )
    .await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"], "not_ideal");
    assert_eq!(v["reason"], "not closed under raising");
    let (_, after) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(after["revision"], 0);
}

#[tokio::test]
async fn game_errors_carry_core_codes() {
    let app = app();
    let id = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    let uri = format!("/sessions/{id}/steps");
    let (s, v) = call(&app, Method::POST, &uri, Some(json!({"kind": "move", "beta": 0, "region": 7}))).await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("unknown_region")));
    let (s, v) = call(&app, Method::POST, &uri, Some(json!({"kind": "move", "beta": 99, "region": 0}))).await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("unknown_root")));
    let (s, v) = call(
        &app,
        Method::POST,
        &uri,
        Some(json!({"kind": "merge", "region": 0, "from_copy": 1, "to_copy": 9})),
    )
    .await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("unknown_copy")));
}

#[tokio::test]
async fn bad_create_requests() {
    let app = app();
    let (s, v) = call(
        &app,
        Method::POST,
        "/sessions",
        Some(json!({"embedding": "diag(id:Q9)", "pi": "1"})),
    )
    .await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("bad_embedding")));
    let (s, v) = call(
        &app,
        Method::POST,
        "/sessions",
        Some(json!({"embedding": A4X3, "pi": "12345;12345;12345"})),
    )
    .await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("length_mismatch")));
    let (s, v) = call(&app, Method::POST, "/sessions", Some(json!({"pi": "1"}))).await;
    assert!(s.is_client_error());
    assert_eq!(v["error"], "bad_request");
    let (s, _) = call(&app, Method::POST, "/sessions", None).await;
    assert!(s.is_client_error());
}

#[tokio::test]
async fn unknown_sessions_are_404() {
    let app = app();
    for (m, uri) in [
        (Method::GET, "/sessions/nope"),
        (Method::DELETE, "/sessions/nope"),
        (Method::POST, "/sessions/nope/undo"),
        (Method::GET, "/sessions/nope/hints"),
    ] {
        let (s, v) = call(&app, m, uri, None).await;
        assert_eq!(s, StatusCode::NOT_FOUND, "{uri}");
        assert_eq!(v["error"], "unknown_session");
    }
    let (s, _) = call(
        &app,
        Method::POST,
        "/sessions/nope/steps",
        Some(json!({"kind": "move", "beta": 0, "region": 0})),
    )
    .await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn stale_revision_conflicts() {
    let app = app();
    let id = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    let uri = format!("/sessions/{id}/steps");
    let mut m = winning_moves();
    m[0]["revision"] = json!(0);
    let (s, _) = call(&app, Method::POST, &uri, Some(m[0].clone())).await;
    assert_eq!(s, StatusCode::OK);
    m[1]["revision"] = json!(0);
    let (s, v) = call(&app, Method::POST, &uri, Some(m[1].clone())).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert_eq!(v["error"], "revision_conflict");
    assert_eq!(v["revision"], 1);
    let (s, _) = call(&app, Method::POST, &format!("/sessions/{id}/undo?revision=0"), None).await;
    assert_eq!(s, StatusCode::CONFLICT);
    m[1]["revision"] = json!(1);
    let (s, v) = call(&app, Method::POST, &uri, Some(m[1].clone())).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["status"]["verdict"], "won");
}

#[tokio::test]
async fn undo_pops_one_step() {
    let app = app();
    let created = create(&app, A4X3, WINNING_PI).await;
    let id = created["id"].as_str().unwrap().to_string();
    let uri = format!("/sessions/{id}/undo");
    let (s, v) = call(&app, Method::POST, &uri, None).await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("nothing_to_undo")));

    let mut states = vec![created["position"].clone()];
    for m in winning_moves() {
        let (_, v) = call(&app, Method::POST, &format!("/sessions/{id}/steps"), Some(m)).await;
        states.push(v["position"].clone());
    }
    for expect in states[..2].iter().rev() {
        let (s, v) = call(&app, Method::POST, &uri, None).await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!(&v["position"], expect);
    }
    let (_, v) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(v["revision"], 4);
    assert_eq!(v["status"]["verdict"], "open");
}

#[tokio::test]
async fn api_matches_direct_play() {
    let app = app();
    let e = Arc::new(Embedding::parse(A4X3).unwrap());
    let mut p = Position::initial_from_literal(e.clone(), WINNING_PI, Mode::TopDegree).unwrap();
    let id = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    // A split before the moves, then the winning line.
    let closure = e.target().closure(&RootSet::singleton(root(A4X3, "c1:α_{2,3}")));
    let mut steps = vec![Step::Split { ideal: closure }];
    steps.extend(winning_moves().into_iter().map(|v| serde_json::from_value::<Step>(v).unwrap()));
    for step in steps {
        let (s, v) = call(
            &app,
            Method::POST,
            &format!("/sessions/{id}/steps"),
            Some(serde_json::to_value(&step).unwrap()),
        )
        .await;
        match p.apply_step(&step) {
            Ok(next) => {
                assert_eq!(s, StatusCode::OK, "{v}");
                p = next;
                assert_eq!(v["position"], serde_json::to_value(&p).unwrap());
                let body = raw_get(&app, &format!("/sessions/{id}")).await;
                assert!(body.contains(&serde_json::to_string(&p).unwrap()), "{body}");
                assert_eq!(v["status"], serde_json::to_value(p.status()).unwrap());
            }
            Err(err) => {
                assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
                assert_eq!(v["error"], err.code());
            }
        }
    }
}

#[tokio::test]
async fn hints_do_not_mutate() {
    let app = app();
    let id = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    let (_, before) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    let (s, h) = call(&app, Method::GET, &format!("/sessions/{id}/hints?budget=100000"), None).await;
    assert_eq!(s, StatusCode::OK, "{h}");
    assert_eq!(h["solver_verdict"]["verdict"], "won");
    assert!(!h["legal_moves"].as_array().unwrap().is_empty());
    assert!(!h["legal_merges"].as_array().unwrap().is_empty());
    let p = Position::initial_from_literal(Arc::new(Embedding::parse(A4X3).unwrap()), WINNING_PI, Mode::TopDegree)
        .unwrap();
    assert_eq!(h["legal_moves"], serde_json::to_value(p.legal_moves()).unwrap());
    assert_eq!(h["qualifying_splits"], serde_json::to_value(p.qualifying_splits()).unwrap());
    let cert = h["solver_verdict"]["certificate"].clone();
    for step in cert.as_array().unwrap() {
        let (s, _) = call(&app, Method::POST, &format!("/sessions/{id}/steps"), Some(step.clone())).await;
        assert_eq!(s, StatusCode::OK);
    }
    let (_, won) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(won["status"]["verdict"], "won");

    let (_, after) = call(&app, Method::GET, &format!("/sessions/{id}/hints"), None).await;
    assert!(after.get("solver_verdict").is_none());
    assert_ne!(before["revision"], won["revision"]);
}

#[tokio::test]
async fn hints_agree_with_solver() {
    let app = app();
    let e = Arc::new(Embedding::parse(A3X3).unwrap());
    for pi in ["1432;2314;2134", "2143;2143;1342", "1342;1342;3124"] {
        let id = create(&app, A3X3, pi).await["id"].as_str().unwrap().to_string();
        let (_, h) = call(&app, Method::GET, &format!("/sessions/{id}/hints?budget=5000"), None).await;
        let w = rootgame::WeylElement::parse(e.target(), pi).unwrap();
        let cfg = rootgame::SolverConfig {
            node_budget: 5000,
            ..Default::default()
        };
        let direct = rootgame::solve(&e, &w, &cfg).unwrap();
        assert_eq!(h["solver_verdict"], serde_json::to_value(direct).unwrap(), "{pi}");
    }
}

#[tokio::test]
async fn layouts_describe_the_board() {
    let app = app();
    let (s, v) = call(&app, Method::GET, "/layouts?embedding=id:A5", None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["target"]["rows"], 6);
    let squares = v["target"]["squares"].as_array().unwrap();
    assert_eq!(squares.len(), 15);
    let a13 = squares.iter().find(|q| q["name"] == "α_{1,3}").unwrap();
    assert_eq!((a13["row"].as_u64(), a13["col"].as_u64(), a13["height"].as_u64()), (Some(1), Some(3), Some(2)));
    let mut cells: Vec<(u64, u64)> = squares
        .iter()
        .map(|q| (q["row"].as_u64().unwrap(), q["col"].as_u64().unwrap()))
        .collect();
    cells.sort();
    cells.dedup();
    assert_eq!(cells.len(), 15);

    let (_, v) = call(&app, Method::GET, &format!("/layouts?embedding={}", "diag(id:A4,id:A4,id:A4)".replace(',', "%2C").replace('(', "%28").replace(')', "%29")), None).await;
    assert_eq!(v["target"]["squares"].as_array().unwrap().len(), 30);
    assert_eq!(v["source"]["squares"].as_array().unwrap().len(), 10);
    let phat = v["phat"].as_array().unwrap();
    assert_eq!(phat.len(), 30);
    assert!(phat.iter().all(|x| x.is_u64()));
    let cols: Vec<u64> = v["target"]["squares"].as_array().unwrap().iter().map(|q| q["col"].as_u64().unwrap()).collect();
    assert!(cols.iter().any(|&c| c > 5));

    let (s, v) = call(&app, Method::GET, "/layouts?embedding=nonsense", None).await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("bad_embedding")));
    let (s, _) = call(&app, Method::GET, "/layouts", None).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn schema_lists_every_body() {
    let app = app();
    let (s, v) = call(&app, Method::GET, "/schema", None).await;
    assert_eq!(s, StatusCode::OK);
    for name in [
        "Step", "Position", "Status", "Verdict", "Layout", "CreateRequest", "StepRequest", "Session", "Hints", "Error",
    ] {
        assert!(v["definitions"][name].is_object(), "{name}");
    }
    assert_eq!(v["routes"].as_object().unwrap().len(), 8);
}

#[tokio::test]
async fn cors_preflight_is_answered() {
    let app = app_with(&Config {
        cors_origin: Some("http://localhost:5173".into()),
        ..Config::default()
    });
    let req = Request::builder()
        .method(Method::OPTIONS)
        .uri("/sessions")
        .header(header::ORIGIN, "http://localhost:5173")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(
        resp.headers().get(header::ACCESS_CONTROL_ALLOW_ORIGIN).unwrap(),
        "http://localhost:5173"
    );
}

#[tokio::test]
async fn delete_removes_a_session() {
    let app = app();
    let id = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    let (s, _) = call(&app, Method::DELETE, &format!("/sessions/{id}"), None).await;
    assert_eq!(s, StatusCode::NO_CONTENT);
    let (s, _) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn persisted_sessions_survive_restart() {
    let dir = tempfile::tempdir().unwrap();
    let config = Config {
        persist: Some(dir.path().join("sessions.jsonl")),
        ..Config::default()
    };
    let app = app_with(&config);
    let keep = create(&app, A4X3, WINNING_PI).await["id"].as_str().unwrap().to_string();
    let gone = create(&app, A3X3, "1432;2314;2134").await["id"].as_str().unwrap().to_string();
    let mut last = Value::Null;
    for m in winning_moves() {
        last = call(&app, Method::POST, &format!("/sessions/{keep}/steps"), Some(m)).await.1;
    }
    call(&app, Method::DELETE, &format!("/sessions/{gone}"), None).await;
    drop(app);

    let app = app_with(&config);
    let (s, v) = call(&app, Method::GET, &format!("/sessions/{keep}"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v, last);
    let (s, _) = call(&app, Method::GET, &format!("/sessions/{gone}"), None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn corrupt_log_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.jsonl");
    std::fs::write(&path, "{\"id\": 3}\n").unwrap();
    let err = AppState::new(&Config {
        persist: Some(path),
        ..Config::default()
    })
    .unwrap_err();
    assert_eq!(err.kind(), std::io::ErrorKind::InvalidData);
}

#[tokio::test]
async fn static_assets_are_served() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>board</p>").unwrap();
    let app = app_with(&Config {
        static_dir: Some(dir.path().to_path_buf()),
        ..Config::default()
    });
    let (s, v) = call(&app, Method::GET, "/index.html", None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v, Value::String("<p>board</p>".into()));
    let (s, _) = call(&app, Method::GET, "/schema", None).await;
    assert_eq!(s, StatusCode::OK);
}
