//! CLI/file configuration for a single verification run.

use std::path::Path;

use serde::Deserialize;

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{Error, Result};

/// On-disk form: `{"family":"so","p":2,"q":2,"xi":[1,2,3]}`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<String>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub xi: Option<Vec<f64>>,
    pub seed: Option<u64>,
}

pub fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))
}

/// Merge flags over file values into a concrete algebra spec.
pub fn resolve_spec(
    file: &FileConfig,
    family: Option<&str>,
    p: Option<u32>,
    q: Option<u32>,
    m: Option<u32>,
    n: Option<u32>,
) -> Result<AlgebraSpec> {
    let family = family
        .map(str::to_owned)
        .or_else(|| file.family.clone())
        .ok_or_else(|| Error::Config("no algebra family given (need --family or a config file)".into()))?;
    let family = match family.to_ascii_lowercase().as_str() {
        "so" => Family::So,
        "sp" => Family::Sp,
        other => {
            return Err(Error::Config(format!(
                "unknown family '{other}' (expected 'so' or 'sp')"
            )))
        }
    };
    let spec = match family {
        Family::So => {
            let p = p.or(file.p).ok_or_else(|| Error::Config("family 'so' needs --p".into()))?;
            let q = q.or(file.q).ok_or_else(|| Error::Config("family 'so' needs --q".into()))?;
            AlgebraSpec::so(p, q)
        }
        Family::Sp => {
            let m = m.or(file.m).ok_or_else(|| Error::Config("family 'sp' needs --m".into()))?;
            let n = n.or(file.n).ok_or_else(|| Error::Config("family 'sp' needs --n".into()))?;
            AlgebraSpec::sp(m, n)
        }
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let file = FileConfig {
            family: Some("so".into()),
            p: Some(1),
            q: Some(2),
            ..Default::default()
        };
        let spec = resolve_spec(&file, None, Some(3), None, None, None).unwrap();
        assert_eq!(spec, AlgebraSpec::so(3, 2));
    }

    #[test]
    fn missing_parameters_are_config_errors() {
        let file = FileConfig::default();
        assert!(matches!(
            resolve_spec(&file, Some("sp"), None, None, Some(1), None),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            resolve_spec(&file, Some("su"), None, None, None, None),
            Err(Error::Config(_))
        ));
    }
}
