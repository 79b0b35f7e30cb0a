//! HTTP front end over [`Service`].

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;
use crate::session::Service;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveRequest {
    edge: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.http_status()).expect("valid status");
        let body = ErrorBody {
            error: ErrorDetail {
                code: self.code().to_string(),
                message: self.to_string(),
            },
        };
        (status, Json(body)).into_response()
    }
}

pub fn router(service: Arc<Service>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/:id", get(state))
        .route("/sessions/:id/moves", post(submit))
        .route("/sessions/:id/transcript", get(transcript))
        .with_state(service)
}

async fn create(State(svc): State<Arc<Service>>) -> Result<Response, ServiceError> {
    Ok(Json(svc.create()?).into_response())
}

async fn state(
    State(svc): State<Arc<Service>>,
    Path(id): Path<String>,
) -> Result<Response, ServiceError> {
    Ok(Json(svc.get(&id)?).into_response())
}

async fn submit(
    State(svc): State<Arc<Service>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ServiceError> {
    let req: MoveRequest =
        serde_json::from_slice(&body).map_err(|e| ServiceError::MalformedRequest(e.to_string()))?;
    // SP's reply runs a subgraph search; keep it off the async workers
    let reply = tokio::task::spawn_blocking(move || svc.submit(&id, &req.edge))
        .await
        .expect("move task panicked")?;
    Ok(Json(reply).into_response())
}

async fn transcript(
    State(svc): State<Arc<Service>>,
    Path(id): Path<String>,
) -> Result<Response, ServiceError> {
    let text = svc.transcript(&id)?;
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], text).into_response())
}

/// Serves until the process is stopped.
pub async fn serve(service: Arc<Service>, addr: &str) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(service)).await
}
