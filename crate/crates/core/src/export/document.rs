use serde::{Deserialize, Serialize};

use super::format::fnv1a64;
use super::mesh::TOOL_VERSION;
use crate::error::{Error, Result};

pub const DOCUMENT_SCHEMA_VERSION: u32 = 1;

/// Envelope for trace, monodromy, report and scan outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<P> {
    pub schema_version: u32,
    /// `"trace"`, `"monodromy"`, `"report"`, …
    pub kind: String,
    pub tool_version: String,
    /// Not covered by the checksum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    /// FNV-1a over the JSON of `data`.
    pub checksum: String,
    pub data: P,
}

fn checksum_of<P: Serialize>(data: &P) -> Result<String> {
    let bytes = serde_json::to_vec(data).map_err(|e| Error::invalid(format!("serialization failed: {e}")))?;
    Ok(format!("fnv1a64:{:016x}", fnv1a64(&bytes)))
}

impl<P: Serialize> Document<P> {
    pub fn new(kind: impl Into<String>, data: P) -> Result<Self> {
        Ok(Document {
            schema_version: DOCUMENT_SCHEMA_VERSION,
            kind: kind.into(),
            tool_version: TOOL_VERSION.into(),
            timestamp: None,
            checksum: checksum_of(&data)?,
            data,
        })
    }

    pub fn with_timestamp(mut self, timestamp: impl Into<String>) -> Self {
        self.timestamp = Some(timestamp.into());
        self
    }

    pub fn verify(&self) -> Result<()> {
        if self.schema_version != DOCUMENT_SCHEMA_VERSION {
            return Err(Error::invalid(format!("unsupported schema version {}", self.schema_version)));
        }
        if self.checksum != checksum_of(&self.data)? {
            return Err(Error::invalid("document checksum mismatch"));
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::invalid(format!("serialization failed: {e}")))
    }
}
