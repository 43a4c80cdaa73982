use serde::Serialize;
use serde_json::Value;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Provenance of a run.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tol: f64,
    pub seed: u64,
    pub resolution: usize,
    pub lines: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    config: &'a Provenance,
    result: &'a T,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

pub struct Emitter {
    pub format: Format,
    pub timestamp: bool,
    pub provenance: Provenance,
}

impl Emitter {
    /// Render the record in the chosen format.
    pub fn render<T: Serialize>(&self, command: &str, result: &T) -> Result<String, String> {
        let stamp = self.timestamp.then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        let env = Envelope {
            command,
            version: env!("CARGO_PKG_VERSION"),
            config: &self.provenance,
            result,
            timestamp: stamp,
        };
        match self.format {
            Format::Json => serde_json::to_string_pretty(&env)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string()),
            Format::Csv => {
                let value = serde_json::to_value(&env).map_err(|e| e.to_string())?;
                let mut rows = Vec::new();
                flatten("", &value, &mut rows);
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::CRLF)
                    .from_writer(Vec::new());
                w.write_record(["key", "value"]).map_err(|e| e.to_string())?;
                for (k, v) in rows {
                    w.write_record([k, v]).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }

    /// Print the record, and also write it to `out` when given.
    pub fn emit<T: Serialize>(&self, command: &str, result: &T, out: Option<&Path>) -> Result<(), String> {
        let text = self.render(command, result)?;
        if let Some(path) = out {
            std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())
    }
}

/// Leaves of a JSON value as dotted keys.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
