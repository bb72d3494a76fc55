//! Mass-aspect input files (JSON or TOML).
//!
//! Indices i, j are 1-based. An entry for (i, j) with i != j sets both m_ij and m_ji;
//! entries for the same unordered pair are summed.

use super::{transversalize, SphereTensor};
use crate::error::{Error, Result};
use crate::exactcore::json::parse_q;
use crate::exactcore::{Poly, PolyTensor, Q};
use serde::Deserialize;
use std::path::Path;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn text(&self) -> String {
        match self {
            IntOrString::Int(v) => v.to_string(),
            IntOrString::Str(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub i: usize,
    pub j: usize,
    pub exponents: Vec<u8>,
    pub num: IntOrString,
    #[serde(default)]
    pub den: Option<IntOrString>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassAspectFile {
    pub n: usize,
    pub k: u32,
    pub entries: Vec<EntryFile>,
}

impl MassAspectFile {
    pub fn to_tensor(&self) -> Result<SphereTensor> {
        let n = self.n;
        if !(2..=8).contains(&n) {
            return Err(Error::Parse(format!("n = {} outside 2..=8", n)));
        }
        let mut t = PolyTensor::<Q>::zero(n, 2, n);
        for (idx, e) in self.entries.iter().enumerate() {
            let at = |msg: String| Error::Parse(format!("entries[{}]: {}", idx, msg));
            if e.i == 0 || e.j == 0 || e.i > n || e.j > n {
                return Err(at(format!("index ({}, {}) outside 1..={}", e.i, e.j, n)));
            }
            if e.exponents.len() != n {
                return Err(at(format!("expected {} exponents, got {}", n, e.exponents.len())));
            }
            let den = e.den.as_ref().map(|d| d.text()).unwrap_or_else(|| "1".into());
            let c = parse_q(&e.num.text(), &den).map_err(at)?;
            let p = Poly::monomial(e.exponents.clone(), c);
            let one = Q::from_integer(1.into());
            t.add_to(&[e.i - 1, e.j - 1], &p, &one);
            if e.i != e.j {
                t.add_to(&[e.j - 1, e.i - 1], &p, &one);
            }
        }
        SphereTensor::new(n, self.k, t).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parses JSON (text starting with '{') or TOML.
pub fn parse_mass_aspect(text: &str, adjust: bool) -> Result<SphereTensor> {
    let file: MassAspectFile = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e)))?
    } else {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
    };
    let m = file.to_tensor()?;
    if adjust {
        transversalize(&m)
    } else {
        Ok(m)
    }
}

pub fn load_mass_aspect(path: &Path, adjust: bool) -> Result<SphereTensor> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {}", path.display(), e)))?;
    parse_mass_aspect(&text, adjust)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_toml_agree() {
        let js = r#"{"n": 3, "k": 2, "entries": [
            {"i": 1, "j": 2, "exponents": [0, 0, 1], "num": "3", "den": "4"},
            {"i": 3, "j": 3, "exponents": [0, 0, 0], "num": -1}
        ]}"#;
        let tm = "n = 3\nk = 2\n[[entries]]\ni = 1\nj = 2\nexponents = [0, 0, 1]\nnum = \"3\"\nden = \"4\"\n\n[[entries]]\ni = 3\nj = 3\nexponents = [0, 0, 0]\nnum = -1\n";
        let a = parse_mass_aspect(js, false).unwrap();
        let b = parse_mass_aspect(tm, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.m.get(&[1, 0]), a.m.get(&[0, 1]));
        assert!(parse_mass_aspect(js, true).unwrap().is_transverse());
    }

    #[test]
    fn errors_carry_position() {
        let bad = "{\"n\": 3,\n \"k\": 2, \"entries\": [ {\"i\": 1 ]}";
        let e = parse_mass_aspect(bad, false).unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        let wrong = r#"{"n": 3, "k": 2, "entries": [{"i": 4, "j": 1, "exponents": [0,0,0], "num": 1}]}"#;
        assert!(parse_mass_aspect(wrong, false).unwrap_err().to_string().contains("entries[0]"));
    }
}
