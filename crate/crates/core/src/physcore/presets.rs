use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::dipole_from_atomic_units;
use crate::error::{Error, Result};

/// Transition data for a named two-level atom.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomPreset {
    pub name: String,
    /// Transition angular frequency, rad/s.
    pub omega0: f64,
    /// Transition dipole moment, C·m.
    pub dipole: f64,
    /// Fine-structure splitting of the upper level, rad/s.
    pub fine_splitting: Option<f64>,
    pub notes: String,
}

impl AtomPreset {
    /// Lithium 2S-2P: ω₀ = 2π·4.468e14 rad/s, d = 1.988e-29 C·m (2.3452 a.u.).
    pub fn lithium() -> Self {
        AtomPreset {
            name: "lithium".into(),
            omega0: TAU * 4.468e14,
            dipole: 1.988e-29,
            fine_splitting: Some(TAU * 10.0e9),
            notes: "2S-2P transition; dipole 2.3452 a.u.; 2P1/2-2P3/2 splitting about 2pi*10 GHz"
                .into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::Config("preset name is empty".into()));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::domain(format!(
                "preset {}: omega0 must be positive, got {}",
                self.name, self.omega0
            )));
        }
        if !(self.dipole.is_finite() && self.dipole > 0.0) {
            return Err(Error::domain(format!(
                "preset {}: dipole must be positive, got {}",
                self.name, self.dipole
            )));
        }
        if let Some(fs) = self.fine_splitting {
            if !(fs.is_finite() && fs >= 0.0) {
                return Err(Error::domain(format!(
                    "preset {}: fine splitting must be non-negative, got {fs}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// Instrument figures of merit for a laser source. Data only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaserPreset {
    pub name: String,
    /// Hz.
    pub linewidth: Option<f64>,
    /// Hz per hour.
    pub drift_rate: Option<f64>,
    /// Hz per °C.
    pub temp_sensitivity: Option<f64>,
    /// W.
    pub power: Option<f64>,
    pub notes: String,
}

pub fn builtin_atoms() -> Vec<AtomPreset> {
    vec![AtomPreset::lithium()]
}

pub fn builtin_lasers() -> Vec<LaserPreset> {
    vec![
        LaserPreset {
            name: "coherent-899-21".into(),
            linewidth: Some(500e3),
            drift_rate: Some(50e6),
            temp_sensitivity: None,
            power: None,
            notes: "ring dye laser with temperature stabilized reference cell".into(),
        },
        LaserPreset {
            name: "spectra-physics-375d".into(),
            linewidth: None,
            drift_rate: None,
            temp_sensitivity: Some(90e6),
            power: None,
            notes: "broadband dye laser, quartz rod resonator, single mode; \
                    410 MHz/degC including the refractive index of air"
                .into(),
        },
        LaserPreset {
            name: "new-focus-6202".into(),
            linewidth: Some(100e3),
            drift_rate: None,
            temp_sensitivity: None,
            power: Some(6e-3),
            notes: "diode laser".into(),
        },
        LaserPreset {
            name: "eosi-diode".into(),
            linewidth: Some(100e3),
            drift_rate: None,
            temp_sensitivity: None,
            power: Some(6e-3),
            notes: "diode laser".into(),
        },
    ]
}

/// Parses atom presets from a plain-text key/value file.
///
/// ```text
/// # comment
/// name = sodium
/// omega0_rad_s = 3.1967e15
/// dipole_Cm = 2.53e-29        # or dipole_au = 2.98
/// fine_splitting_rad_s = 1.08e13
/// notes = D2 line
/// ```
///
/// Every `name` key opens a new record. Whitespace and `#` comments are
/// ignored.
pub fn parse_presets(text: &str) -> Result<Vec<AtomPreset>> {
    struct Pending {
        line: usize,
        name: String,
        omega0: Option<f64>,
        dipole: Option<f64>,
        fine_splitting: Option<f64>,
        notes: String,
    }

    fn finish(p: Pending) -> Result<AtomPreset> {
        let missing = |key: &str| Error::Parse {
            line: p.line,
            message: format!("preset '{}' is missing {key}", p.name),
        };
        let preset = AtomPreset {
            omega0: p.omega0.ok_or_else(|| missing("omega0_rad_s"))?,
            dipole: p.dipole.ok_or_else(|| missing("dipole_Cm"))?,
            fine_splitting: p.fine_splitting,
            notes: p.notes,
            name: p.name,
        };
        preset.validate()?;
        Ok(preset)
    }

    let mut out = Vec::new();
    let mut current: Option<Pending> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected 'key = value', got '{line}'"),
        })?;
        let key = key.trim();
        let value = value.trim();

        if key == "name" {
            if let Some(p) = current.take() {
                out.push(finish(p)?);
            }
            current = Some(Pending {
                line: line_no,
                name: value.to_string(),
                omega0: None,
                dipole: None,
                fine_splitting: None,
                notes: String::new(),
            });
            continue;
        }

        let p = current.as_mut().ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("'{key}' appears before any 'name'"),
        })?;
        let number = || -> Result<f64> {
            value.parse::<f64>().map_err(|e| Error::Parse {
                line: line_no,
                message: format!("{key}: {e}"),
            })
        };
        let set_dipole = |slot: &mut Option<f64>, v: f64| -> Result<()> {
            if slot.replace(v).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "dipole given more than once".into(),
                });
            }
            Ok(())
        };
        match key {
            "omega0_rad_s" => p.omega0 = Some(number()?),
            "dipole_Cm" => set_dipole(&mut p.dipole, number()?)?,
            "dipole_au" => set_dipole(&mut p.dipole, dipole_from_atomic_units(number()?))?,
            "fine_splitting_rad_s" => p.fine_splitting = Some(number()?),
            "notes" => p.notes = value.to_string(),
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key '{other}'"),
                })
            }
        }
    }
    if let Some(p) = current.take() {
        out.push(finish(p)?);
    }
    Ok(out)
}

/// Built-in presets plus any loaded from files. Lookup is case-insensitive;
/// later entries shadow earlier ones with the same name.
#[derive(Clone, Debug)]
pub struct PresetRegistry {
    atoms: Vec<AtomPreset>,
}

impl Default for PresetRegistry {
    fn default() -> Self {
        PresetRegistry {
            atoms: builtin_atoms(),
        }
    }
}

impl PresetRegistry {
    pub fn load_str(&mut self, text: &str) -> Result<usize> {
        let parsed = parse_presets(text)?;
        let n = parsed.len();
        self.atoms.extend(parsed);
        Ok(n)
    }

    pub fn load_file(&mut self, path: &std::path::Path) -> Result<usize> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            context: format!("reading presets from {}", path.display()),
            source,
        })?;
        self.load_str(&text)
    }

    pub fn atom(&self, name: &str) -> Option<&AtomPreset> {
        self.atoms
            .iter()
            .rev()
            .find(|a| a.name.eq_ignore_ascii_case(name))
    }

    pub fn names(&self) -> Vec<&str> {
        self.atoms.iter().map(|a| a.name.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lithium_preset_values() {
        let li = AtomPreset::lithium();
        assert_eq!(li.omega0, TAU * 4.468e14);
        assert_eq!(li.dipole, 1.988e-29);
        li.validate().unwrap();
    }

    #[test]
    fn laser_presets_are_non_negative() {
        for l in builtin_lasers() {
            for v in [l.linewidth, l.drift_rate, l.temp_sensitivity, l.power]
                .into_iter()
                .flatten()
            {
                assert!(v >= 0.0, "{}", l.name);
            }
        }
    }

    #[test]
    fn parses_two_records() {
        let text = "\
# custom atoms
name = test-a
omega0_rad_s = 1e15
dipole_Cm = 2e-29

name = test-b
omega0_rad_s = 2e15   # trailing comment
dipole_au = 1.0
fine_splitting_rad_s = 5e10
notes = second one
";
        let atoms = parse_presets(text).unwrap();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0].name, "test-a");
        assert_eq!(atoms[0].fine_splitting, None);
        assert_eq!(atoms[1].dipole, dipole_from_atomic_units(1.0));
        assert_eq!(atoms[1].fine_splitting, Some(5e10));
        assert_eq!(atoms[1].notes, "second one");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_presets("omega0_rad_s = 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_presets("name = x\nomega0_rad_s = abc\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_presets("name = x\nomega0_rad_s = 1e15\n").unwrap_err();
        assert!(err.to_string().contains("dipole_Cm"));
        let err = parse_presets("name = x\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("bogus"));
        assert!(parse_presets("name = x\nomega0_rad_s = -1\ndipole_Cm = 1e-29\n").is_err());
    }

    #[test]
    fn registry_lookup_and_shadowing() {
        let mut reg = PresetRegistry::default();
        assert!(reg.atom("LITHIUM").is_some());
        assert!(reg.atom("sodium").is_none());
        reg.load_str("name = Lithium\nomega0_rad_s = 1e15\ndipole_Cm = 1e-29\n")
            .unwrap();
        assert_eq!(reg.atom("lithium").unwrap().omega0, 1e15);
    }
}
