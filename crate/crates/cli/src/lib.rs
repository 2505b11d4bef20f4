//! Session files, the shipped corpus and command drivers for `depthlab`.

pub mod corpus;
pub mod run;
pub mod session;

pub use run::Outcome;
pub use session::{Built, ParseError, Session};
