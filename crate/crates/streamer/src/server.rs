//! WebSocket and HTTP front end.

use std::path::PathBuf;
use std::sync::mpsc::{self, Receiver, TryRecvError};
use std::sync::Arc;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use futures::{SinkExt, StreamExt};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;
use tracing::{error, info, warn};
use vida_core::{AudioBuffer, Timestamp};

use crate::{Clock, Hub, RealClock, Request, Session, VirtualClock};

/// Control frames sent by clients as JSON text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClientMessage {
    Text { text: String },
    AudioBegin,
    AudioEnd,
    Metrics,
}

#[derive(Debug, Clone, Default)]
pub struct ServerOptions {
    /// Each session gets its own virtual clock that advances one frame
    /// whenever the client has consumed everything sent so far.
    pub virtual_clock: bool,
    pub static_dir: Option<PathBuf>,
}

#[derive(Clone)]
struct AppState {
    hub: Arc<Hub>,
    clock: Arc<RealClock>,
    opts: Arc<ServerOptions>,
}

pub fn router(hub: Arc<Hub>, opts: ServerOptions) -> Router {
    let static_dir = opts.static_dir.clone();
    let state = AppState {
        hub,
        clock: Arc::new(RealClock::new()),
        opts: Arc::new(opts),
    };
    let app = Router::new()
        .route("/ws", get(ws_upgrade))
        .route("/metrics", get(metrics));
    let app = match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.fallback(|| async { (StatusCode::NOT_FOUND, "no static directory configured\n") }),
    };
    app.with_state(state)
}

/// Serves until the listener fails.
pub async fn serve(listener: TcpListener, hub: Arc<Hub>, opts: ServerOptions) -> std::io::Result<()> {
    axum::serve(listener, router(hub, opts)).await
}

async fn metrics(State(app): State<AppState>) -> impl IntoResponse {
    Json(app.hub.metrics())
}

async fn ws_upgrade(ws: WebSocketUpgrade, State(app): State<AppState>) -> Response {
    ws.on_upgrade(move |socket| run_socket(socket, app))
}

async fn run_socket(mut socket: WebSocket, app: AppState) {
    let virtual_clock = app.opts.virtual_clock.then(|| Arc::new(VirtualClock::new()));
    let clock: Arc<dyn Clock> = match &virtual_clock {
        Some(v) => v.clone(),
        None => app.clock.clone(),
    };
    let session = match app.hub.open_session(clock.clone()) {
        Ok(s) => s,
        Err(e) => {
            warn!("rejecting connection: {e}");
            let _ = socket.send(Message::Text(error_json(&e.to_string()).into())).await;
            let _ = socket.close().await;
            return;
        }
    };
    let id = session.id();
    let origin = session.origin();
    let queue = session.queue().clone();
    info!(session = id, "session open");

    let (req_tx, req_rx) = mpsc::channel::<(Request, Timestamp)>();
    let pacer = std::thread::spawn(move || pacing_loop(session, req_rx, virtual_clock));

    let (out_tx, mut out_rx) = tokio::sync::mpsc::channel::<Message>(1);
    let forward_tx = out_tx.clone();
    let forward_queue = queue.clone();
    let forwarder = std::thread::spawn(move || {
        while let Some(p) = forward_queue.pop() {
            if forward_tx.blocking_send(Message::Binary(p.bytes.into())).is_err() {
                break;
            }
        }
        forward_queue.close();
    });

    let (mut sink, mut stream) = socket.split();
    let writer = tokio::spawn(async move {
        while let Some(m) = out_rx.recv().await {
            if sink.send(m).await.is_err() {
                break;
            }
        }
    });

    let mut audio: Option<Vec<i16>> = None;
    while let Some(Ok(msg)) = stream.next().await {
        match msg {
            Message::Text(t) => {
                let reply = match serde_json::from_str::<ClientMessage>(t.as_str()) {
                    Ok(ClientMessage::Text { text }) => {
                        let _ = req_tx.send((Request::Text(text), clock.now().saturating_sub(origin)));
                        None
                    }
                    Ok(ClientMessage::AudioBegin) => {
                        audio = Some(Vec::new());
                        None
                    }
                    Ok(ClientMessage::AudioEnd) => match audio.take() {
                        Some(samples) => {
                            let buf = AudioBuffer::new(samples);
                            let _ = req_tx.send((Request::Audio(buf), clock.now().saturating_sub(origin)));
                            None
                        }
                        None => Some(error_json("audio_end without audio_begin")),
                    },
                    Ok(ClientMessage::Metrics) => {
                        Some(serde_json::to_string(&app.hub.metrics()).expect("metrics serialize"))
                    }
                    Err(e) => Some(error_json(&format!("bad control message: {e}"))),
                };
                if let Some(r) = reply {
                    if out_tx.send(Message::Text(r.into())).await.is_err() {
                        break;
                    }
                }
            }
            Message::Binary(b) => match audio.as_mut() {
                Some(buf) => buf.extend(b.chunks_exact(2).map(|c| i16::from_le_bytes([c[0], c[1]]))),
                None => {
                    let _ = out_tx
                        .send(Message::Text(
                            error_json("binary frame outside audio_begin/audio_end").into(),
                        ))
                        .await;
                }
            },
            Message::Close(_) => break,
            _ => {}
        }
    }

    queue.close();
    drop(req_tx);
    writer.abort();
    let _ = tokio::task::spawn_blocking(move || {
        let _ = pacer.join();
        let _ = forwarder.join();
    })
    .await;
    info!(session = id, "session close");
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "type": "error", "message": message }).to_string()
}

fn pacing_loop(
    mut session: Session,
    requests: Receiver<(Request, Timestamp)>,
    virtual_clock: Option<Arc<VirtualClock>>,
) {
    loop {
        match &virtual_clock {
            Some(v) => {
                if !session.queue().wait_empty() {
                    break;
                }
                v.set(session.origin() + session.next_due());
            }
            None => session.clock().sleep_until(session.origin() + session.next_due()),
        }
        loop {
            match requests.try_recv() {
                Ok((req, t)) => {
                    if let Err(e) = session.handle_request(req, t) {
                        error!(session = session.id(), "request failed: {e}");
                    }
                }
                Err(TryRecvError::Empty) => break,
                Err(TryRecvError::Disconnected) => return,
            }
        }
        if let Err(e) = session.pace_elapsed() {
            error!(session = session.id(), "pacing failed: {e}");
            break;
        }
        if session.queue().is_closed() {
            break;
        }
    }
}
