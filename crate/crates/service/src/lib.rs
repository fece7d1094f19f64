//! Play service and command line for the `cdsort` engines.
//!
//! [`session`] holds game sessions and their journals, [`http`] exposes them
//! as JSON over HTTP, and [`cli`] implements the `cdsort` command.

pub mod cli;
pub mod http;
pub mod session;

pub use session::{CreateSession, FavorableItem, Session, SessionError, SessionStore, SessionView};
