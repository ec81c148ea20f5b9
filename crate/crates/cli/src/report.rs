use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct InputRef {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

/// Machine-readable outcome of one invocation. Field order is fixed; maps are sorted.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub pass: bool,
    pub inputs: Vec<InputRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub stats: Value,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            pass: true,
            inputs: Vec::new(),
            timestamp: None,
            stats: Value::Object(Default::default()),
            checks: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    /// Reads a file, recording its hash.
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputRef { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: Option<Value>) {
        self.pass &= pass;
        self.checks.push(Check { name: name.to_string(), pass, detail });
    }

    pub fn stat(&mut self, key: &str, value: impl Serialize) {
        if let Value::Object(m) = &mut self.stats {
            m.insert(key.to_string(), serde_json::to_value(value).expect("serializable stat"));
        }
    }

    pub fn stamp(&mut self, on: bool) {
        if on {
            let now =
                std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            self.timestamp = Some(now);
        }
    }

    pub fn write(&mut self, dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
        self.artifacts.push(path.display().to_string());
        Ok(())
    }
}

pub fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
