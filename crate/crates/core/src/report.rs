//! Deterministic JSON emission and hashing for reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Canonical JSON text: `serde_json` with struct field order and no
/// platform-dependent content.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Numerical(format!("serialisation failed: {e}")))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash of the canonical JSON form of `value`.
pub fn report_hash<T: Serialize>(value: &T) -> Result<String> {
    Ok(sha256_hex(to_canonical_json(value)?.as_bytes()))
}
