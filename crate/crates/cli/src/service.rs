//! HTTP matching service.
//!
//! `POST /match` takes a JSON document
//!
//! ```json
//! { "ontology1": "<turtle>", "ontology2": "<turtle>",
//!   "config": { "threshold": 0.7, "crosstype": false },
//!   "inputAlignment": "<alignment tsv>" }
//! ```
//!
//! where `config` and `inputAlignment` are optional. `config` keys are the
//! `match.*` keys of the TOML file and override the server's settings for
//! this request only; `weights` replaces the weight table as a whole.
//!
//! The reply is `application/json` with fields `alignment` (TSV text) and
//! `report`, or the bare TSV as `text/tab-separated-values` when the
//! request's `Accept` header asks for it. Failures reply with
//! `{"stage": .., "error": ..}`: 400 for a malformed request, bad Turtle,
//! bad TSV or bad overrides, 422 when a later stage fails.
//!
//! `GET /health` replies `ok`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use pivot_align::alignment::serialize_alignment_tsv;
use pivot_align::lexicon::ResourceBundle;
use pivot_align::pipeline::Stage;
use pivot_align::{MatchConfig, PipelineConfig, PipelineError, PipelineReport};

pub const TSV_MEDIA_TYPE: &str = "text/tab-separated-values";

/// Shared by all requests and never mutated after startup.
#[derive(Debug)]
pub struct ServiceState {
    pub config: PipelineConfig,
    pub bundle: ResourceBundle,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MatchRequest {
    pub ontology1: String,
    pub ontology2: String,
    #[serde(default)]
    pub config: Option<serde_json::Map<String, serde_json::Value>>,
    #[serde(default)]
    pub input_alignment: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct MatchResponse {
    pub alignment: String,
    pub report: PipelineReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub stage: String,
    pub error: String,
}

fn failure(status: StatusCode, stage: impl ToString, error: impl ToString) -> Response {
    let body = ErrorBody {
        stage: stage.to_string(),
        error: error.to_string(),
    };
    (status, Json(body)).into_response()
}

fn stage_failure(e: PipelineError) -> Response {
    let status = match e.stage {
        Stage::Config | Stage::Parse => StatusCode::BAD_REQUEST,
        _ => StatusCode::UNPROCESSABLE_ENTITY,
    };
    failure(status, e.stage, e.message)
}

/// `base` with the keys of `overrides` laid over it, validated.
pub fn apply_overrides(
    base: &MatchConfig,
    overrides: &serde_json::Map<String, serde_json::Value>,
) -> Result<MatchConfig, PipelineError> {
    let bad = |e: &dyn std::fmt::Display| PipelineError::new(Stage::Config, e);
    let mut value = serde_json::to_value(base).map_err(|e| bad(&e))?;
    let fields = value.as_object_mut().expect("config serializes as an object");
    for (k, v) in overrides {
        fields.insert(k.clone(), v.clone());
    }
    let cfg: MatchConfig = serde_json::from_value(value).map_err(|e| bad(&e))?;
    cfg.validate().map_err(|e| bad(&e))?;
    Ok(cfg)
}

fn run_request(state: &ServiceState, req: MatchRequest) -> Result<MatchResponse, PipelineError> {
    let mut cfg = state.config.clone();
    if let Some(o) = &req.config {
        cfg.matching = apply_overrides(&cfg.matching, o)?;
    }
    let (a, report) = crate::match_texts(
        &req.ontology1,
        &req.ontology2,
        &cfg,
        &state.bundle,
        req.input_alignment.as_deref(),
    )?;
    Ok(MatchResponse {
        alignment: serialize_alignment_tsv(&a),
        report,
    })
}

async fn health() -> &'static str {
    "ok"
}

async fn match_handler(State(state): State<Arc<ServiceState>>, headers: HeaderMap, body: Bytes) -> Response {
    let req: MatchRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return failure(StatusCode::BAD_REQUEST, "request", e),
    };
    let wants_tsv = headers
        .get(header::ACCEPT)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.contains(TSV_MEDIA_TYPE));

    // matching is CPU bound; keep it off the async workers
    let outcome = tokio::task::spawn_blocking(move || run_request(&state, req)).await;
    match outcome {
        Ok(Ok(resp)) => {
            log::info!("matched: {} correspondences", resp.report.alignment.correspondences);
            if wants_tsv {
                ([(header::CONTENT_TYPE, TSV_MEDIA_TYPE)], resp.alignment).into_response()
            } else {
                Json(resp).into_response()
            }
        }
        Ok(Err(e)) => {
            log::warn!("match failed: {e}");
            stage_failure(e)
        }
        Err(e) => failure(StatusCode::INTERNAL_SERVER_ERROR, "matchers", e),
    }
}

pub fn router(state: Arc<ServiceState>) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/match", post(match_handler))
        .layer(DefaultBodyLimit::max(64 << 20))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, state: Arc<ServiceState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
