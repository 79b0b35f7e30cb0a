//! A session service that lets a human play FP against the drawing
//! strategy over HTTP. The wire schema is documented in `SCHEMA.md`.

mod error;
pub mod http;
mod session;

pub use error::ServiceError;
pub use http::{router, serve, ErrorBody};
pub use session::{Config, MonitorFn, MoveReply, Service, SessionView, Status, SCHEMA_VERSION};
