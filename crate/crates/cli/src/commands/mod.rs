pub mod constants;
pub mod lifetime;
pub mod slice;
pub mod surface;
pub mod validate;

use twolevel::physcore::{AtomPreset, PresetRegistry};

use crate::args::PresetArgs;
use crate::failure::CliError;

/// Resolves an atom from the built-ins plus an optional preset file.
pub fn load_atom(name: &str, presets: Option<&std::path::Path>) -> Result<AtomPreset, CliError> {
    let mut registry = PresetRegistry::default();
    if let Some(path) = presets {
        registry.load_file(path)?;
    }
    registry.atom(name).cloned().ok_or_else(|| {
        CliError::Usage(format!(
            "unknown atom preset '{name}' (known: {})",
            registry.names().join(", ")
        ))
    })
}

impl PresetArgs {
    pub fn resolve(&self) -> Result<AtomPreset, CliError> {
        load_atom(&self.atom, self.presets.as_deref())
    }
}
