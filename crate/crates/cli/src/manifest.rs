use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use planar2::gf2::{table_modulus, MODULI_TABLE};
use planar2::gr4::graeffe_lift;

/// One JSON line on stderr describing a run. Equal manifests (ignoring
/// `elapsed_ms`) imply equal result digests.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub params: serde_json::Value,
    pub n: Option<u32>,
    pub modulus: Option<String>,
    pub lifted_modulus: Option<String>,
    pub moduli_table_sha256: String,
    pub elapsed_ms: u128,
    pub result_sha256: String,
    pub status: &'static str,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, params: serde_json::Value, n: Option<u32>) -> Self {
        let modulus = n.and_then(|n| table_modulus(n).ok());
        RunManifest {
            tool: "planar2",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            params,
            n,
            modulus: modulus.map(|m| format!("0x{m:x}")),
            lifted_modulus: n.zip(modulus).map(|(n, m)| {
                graeffe_lift(m, n)
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }),
            moduli_table_sha256: sha256_hex(MODULI_TABLE.as_bytes()),
            elapsed_ms: 0,
            result_sha256: sha256_hex(b""),
            status: "ok",
            exit_code: 0,
        }
    }

    pub fn finish(&mut self, elapsed: Duration, result: &str, status: &'static str, exit_code: i32) {
        self.elapsed_ms = elapsed.as_millis();
        self.result_sha256 = sha256_hex(result.as_bytes());
        self.status = status;
        self.exit_code = exit_code;
    }

    pub fn emit(&self) {
        eprintln!("{}", serde_json::to_string(self).expect("manifest serializes"));
    }
}
