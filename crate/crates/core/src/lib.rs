pub mod bridgeland;
pub mod cli;
pub mod cyclic;
pub mod error;
pub mod exactnum;
pub mod hallcore;
pub mod latticeheis;
pub mod quiverrep;
pub mod session;

pub use error::{Error, Result};
pub use session::Session;
