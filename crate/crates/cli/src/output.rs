//! Provenance headers and output sinks.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use twolevel::{Error, TOOLKIT_VERSION};

use crate::failure::CliError;

/// Who produced a file and from which inputs. Serialized with sorted keys,
/// so identical invocations give identical bytes.
#[derive(Debug, Serialize)]
pub struct Provenance {
    pub toolkit_version: &'static str,
    pub command: &'static str,
    pub parameters: BTreeMap<String, Value>,
}

impl Provenance {
    /// Records every parsed argument except those that cannot change the
    /// content: the output path and the worker count.
    pub fn new<A: Serialize>(command: &'static str, args: &A) -> Result<Self, CliError> {
        let mut parameters = BTreeMap::new();
        if let Value::Object(map) = serde_json::to_value(args)? {
            flatten("", map, &mut parameters);
        }
        parameters.remove("out");
        parameters.remove("workers");
        Ok(Provenance {
            toolkit_version: TOOLKIT_VERSION,
            command,
            parameters,
        })
    }

    /// `# key = value` lines for text formats; unset options are omitted.
    pub fn comment_lines(&self) -> String {
        let mut s = format!(
            "# toolkit_version = {}\n# command = {}\n",
            self.toolkit_version, self.command
        );
        for (k, v) in &self.parameters {
            if !v.is_null() {
                s.push_str(&format!("# {k} = {v}\n"));
            }
        }
        s
    }
}

fn flatten(prefix: &str, map: serde_json::Map<String, Value>, out: &mut BTreeMap<String, Value>) {
    for (k, v) in map {
        match v {
            // Flattened argument groups keep their leaf names.
            Value::Object(inner) => flatten(prefix, inner, out),
            v => {
                out.insert(format!("{prefix}{k}"), v);
            }
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut buf = serde_json::to_vec_pretty(value)?;
    buf.push(b'\n');
    Ok(buf)
}

/// Writes to `path`, or standard output when absent.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| {
            CliError::Core(Error::Io {
                context: format!("writing {}", p.display()),
                source,
            })
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|source| {
                    CliError::Core(Error::Io {
                        context: "writing standard output".into(),
                        source,
                    })
                })
        }
    }
}
