//! (under construction)

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {}
