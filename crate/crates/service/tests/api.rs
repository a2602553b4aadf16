use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use lctr_core::sample::random_small_partition;
use lctr_core::{outcome, MoveKind, Outcome, Partition};
use lctr_service::log::{LogRecord, MoveLog};
use lctr_service::{router, Actor, EngineRole, SessionStore, SessionView};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(SessionStore::new(None)))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let builder = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => builder
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => builder.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, start: &str, role: &str) -> (StatusCode, Value) {
    call(
        app,
        "POST",
        "/games",
        Some(json!({"start": start, "engine_role": role})),
    )
    .await
}

async fn new_game(app: &Router, start: &str, role: &str) -> String {
    let (status, body) = create(app, start, role).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    body["id"].as_str().unwrap().to_string()
}

async fn play(app: &Router, id: &str, mv: &str) -> (StatusCode, Value) {
    call(
        app,
        "POST",
        &format!("/games/{id}/moves"),
        Some(json!({"move": mv})),
    )
    .await
}

fn view(v: &Value) -> SessionView {
    serde_json::from_value(v.clone()).unwrap()
}

#[tokio::test]
async fn create_session() {
    let app = app();
    let (status, body) = create(&app, "5,3^2,2,1^2", "plays_second").await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["id"], body["state"]["id"]);
    assert_eq!(body["state"]["position"], json!([5, 3, 3, 2, 1, 1]));
    assert_eq!(body["state"]["rows"], json!([5, 3, 3, 2, 1, 1]));
    assert_eq!(body["state"]["history"], json!([]));
    assert_eq!(body["state"]["turn"], json!("human"));
    assert_eq!(body["state"]["finished"], json!(false));
    assert_eq!(body["state"]["winner"], Value::Null);

    let (status, body) = create(&app, "5,3^2,2,1^2", "plays_first").await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["state"]["position"], json!([3, 3, 2, 1, 1]));
    assert_eq!(
        body["state"]["history"],
        json!([{"actor": "engine", "move": "T", "resulting": [3, 3, 2, 1, 1]}])
    );

    let (status, body) = create(&app, "()", "plays_second").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].is_string());

    for bad in ["2,3", "x", "0"] {
        let (status, _) = create(&app, bad, "none").await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{bad}");
    }
    let (status, body) = create(&app, "3,1", "sometimes").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].as_str().unwrap().contains("engine_role"));

    let (status, body) = call(&app, "POST", "/games", Some(json!({"begin": "3"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].is_string());
}

#[tokio::test]
async fn moves() {
    let app = app();

    let id = new_game(&app, "2,1", "plays_second").await;
    let (status, body) = play(&app, &id, "T").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["position"], json!([]));
    assert_eq!(body["finished"], json!(true));
    assert_eq!(body["winner"], json!("engine"));
    assert_eq!(body["history"].as_array().unwrap().len(), 2);
    assert_eq!(body["history"][0]["resulting"], json!([1]));

    let (status, body) = play(&app, &id, "L").await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(body["error"].is_string());

    let id = new_game(&app, "7", "plays_second").await;
    let (status, body) = play(&app, &id, "T").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["winner"], json!("human"));
    assert_eq!(body["turn"], Value::Null);
    assert!(view(&body).is_consistent());

    let id = new_game(&app, "4,4", "plays_second").await;
    let (status, _) = play(&app, &id, "X").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);

    let (status, _) = play(&app, "nope", "T").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn state() {
    let app = app();
    let id = new_game(&app, "5,3^2,2,1^2", "plays_second").await;
    let (status, body) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["turn"], json!("human"));
    assert_eq!(body["engine_role"], json!("plays_second"));

    play(&app, &id, "L").await;
    let (_, body) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(body["history"].as_array().unwrap().len(), 2);
    assert_eq!(body["history"][0]["actor"], json!("human"));
    assert_eq!(body["history"][1]["actor"], json!("engine"));
    assert!(view(&body).is_consistent());

    let (status, body) = call(&app, "GET", "/games/unknown", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body["error"].is_string());
}

#[tokio::test]
async fn hints() {
    let app = app();
    let id = new_game(&app, "5,3^2,2,1^2", "plays_second").await;
    let (status, body) = call(&app, "GET", &format!("/games/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        body,
        json!({
            "sg": 1,
            "outcome": "N",
            "followers": {
                "L": {"partition": [4, 2, 2, 1], "sg": 2},
                "T": {"partition": [3, 3, 2, 1, 1], "sg": 0}
            }
        })
    );

    let id = new_game(&app, "6,1^4", "plays_second").await;
    let (_, body) = call(&app, "GET", &format!("/games/{id}/hint"), None).await;
    assert_eq!(
        (body["sg"].clone(), body["outcome"].clone()),
        (json!(0), json!("P"))
    );

    let id = new_game(&app, "4,4", "plays_second").await;
    let (_, body) = call(&app, "GET", &format!("/games/{id}/hint"), None).await;
    assert_eq!(body["sg"], json!(0));
    assert_eq!(body["followers"]["L"]["sg"], json!(2));
    assert_eq!(body["followers"]["T"]["sg"], json!(2));

    let id = new_game(&app, "3", "plays_second").await;
    play(&app, &id, "T").await;
    let (status, _) = call(&app, "GET", &format!("/games/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);

    let (status, _) = call(&app, "GET", "/games/unknown/hint", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_moves_on_one_session() {
    let app = app();
    for round in 0..20 {
        let id = new_game(&app, "9^9", "plays_second").await;
        let mut tasks = Vec::new();
        for i in 0..8 {
            let app = app.clone();
            let id = id.clone();
            let mv = if (i + round) % 2 == 0 { "L" } else { "T" };
            tasks.push(tokio::spawn(async move {
                call(
                    &app,
                    "POST",
                    &format!("/games/{id}/moves"),
                    Some(json!({"move": mv, "ply": 0})),
                )
                .await
                .0
            }));
        }
        let mut ok = 0;
        let mut conflict = 0;
        for t in tasks {
            match t.await.unwrap() {
                StatusCode::OK => ok += 1,
                StatusCode::CONFLICT => conflict += 1,
                other => panic!("unexpected status {other}"),
            }
        }
        assert_eq!((ok, conflict), (1, 7));
        let (_, body) = call(&app, "GET", &format!("/games/{id}"), None).await;
        let state = view(&body);
        assert!(state.is_consistent());
        assert_eq!(state.ply, 2);
    }
}

/// Plays random human moves against the engine until the game ends.
fn random_playout(
    store: &SessionStore,
    start: Partition,
    role: EngineRole,
    rng: &mut ChaCha8Rng,
) -> SessionView {
    let mut state = store.create(start, role).unwrap();
    while !state.finished {
        let kind = if rng.gen_bool(0.5) {
            MoveKind::LeftColumn
        } else {
            MoveKind::TopRow
        };
        state = store.human_move(&state.id, kind, Some(state.ply)).unwrap();
        assert!(state.is_consistent());
    }
    state
}

#[test]
fn engine_never_loses_from_a_winning_start() {
    let store = SessionStore::new(None);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut n_starts = 0;
    let mut p_starts = 0;
    for _ in 0..1_000 {
        let start = random_small_partition(&mut rng, 20);
        let role = match outcome(&start) {
            Outcome::NextPlayerWins => {
                n_starts += 1;
                EngineRole::PlaysFirst
            }
            Outcome::PreviousPlayerWins => {
                p_starts += 1;
                EngineRole::PlaysSecond
            }
        };
        let end = random_playout(&store, start.clone(), role, &mut rng);
        assert_eq!(end.winner, Some(Actor::Engine), "start {start}");
    }
    assert!(n_starts > 0 && p_starts > 0);
}

#[test]
fn moves_are_logged_as_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("games.jsonl");
    let store = SessionStore::new(Some(MoveLog::open(&path).unwrap()));
    let first = store
        .create("5,3^2,2,1^2".parse().unwrap(), EngineRole::PlaysFirst)
        .unwrap();
    store
        .human_move(&first.id, MoveKind::LeftColumn, None)
        .unwrap();
    let second = store
        .create("7".parse().unwrap(), EngineRole::PlaysSecond)
        .unwrap();
    store
        .human_move(&second.id, MoveKind::TopRow, None)
        .unwrap();

    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<LogRecord> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // engine opening, human + engine reply, then the one-move game
    assert_eq!(records.len(), 4);
    assert_eq!(records[0].game, first.id);
    assert_eq!(records[0].actor, Actor::Engine);
    assert_eq!(records[0].kind, MoveKind::TopRow);
    assert_eq!(records[0].resulting, "3^2,2,1^2".parse().unwrap());
    assert_eq!(records[1].actor, Actor::Human);
    assert_eq!(records[3].game, second.id);
    assert!(records[3].resulting.is_empty());
    assert!(chrono::DateTime::parse_from_rfc3339(&records[0].ts).is_ok());
    let raw: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    for key in ["ts", "game", "actor", "move", "resulting"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
}

#[tokio::test]
async fn serves_over_tcp() {
    use tokio::io::{AsyncReadExt, AsyncWriteExt};

    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(lctr_service::serve_on(listener, None));

    let body = r#"{"start":"2,1","engine_role":"plays_second"}"#;
    let request = format!(
        "POST /games HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    stream.write_all(request.as_bytes()).await.unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).await.unwrap();
    assert!(response.starts_with("HTTP/1.1 201"), "{response}");
    assert!(response.contains(r#""position":[2,1]"#), "{response}");
}
