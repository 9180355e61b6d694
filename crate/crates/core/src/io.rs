//! Shared serialization helpers.

use crate::error::Error;

/// Version stamped on every CSV and JSON artifact.
pub const FORMAT_VERSION: u32 = 1;

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
