//! JSON documents for games and profiles.
//!
//! Every number is an exact rational written as a string, `"p/q"` or `"p"`.
//! Matrices are flat row-major arrays of length `m·n`.
//!
//! ```json
//! {"version": 1, "m": 2, "n": 2,
//!  "A": ["1", "-1", "-1", "1"], "B": ["-1", "1", "1", "-1"],
//!  "metadata": {"family": "pennies"}}
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedProfile};
use crate::rational::{format_rational, parse_rational, RatMatrix, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub version: u32,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_vec(name: &str, v: &[String]) -> Result<Vec<Rational>> {
    v.iter()
        .enumerate()
        .map(|(k, s)| parse_rational(s).map_err(|e| e.in_field(format!("{name}[{k}]"))))
        .collect()
}

fn parse_matrix(name: &str, v: &[String], m: usize, n: usize) -> Result<RatMatrix> {
    if v.len() != m * n {
        return Err(Error::Dimension(format!(
            "{name} has {} entries, expected m·n = {}",
            v.len(),
            m * n
        )));
    }
    let data = v
        .iter()
        .enumerate()
        .map(|(k, s)| {
            parse_rational(s).map_err(|e| e.in_field(format!("{name}[{}][{}]", k / n, k % n)))
        })
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_flat(m, n, data)
}

impl GameDocument {
    pub fn from_game(game: &BimatrixGame, metadata: Option<Metadata>) -> Self {
        GameDocument {
            version: FORMAT_VERSION,
            m: game.m(),
            n: game.n(),
            a: strings(game.a().as_slice()),
            b: strings(game.b().as_slice()),
            metadata,
        }
    }

    pub fn to_game(&self) -> Result<BimatrixGame> {
        if self.version != FORMAT_VERSION {
            return Err(Error::UnknownVersion(self.version));
        }
        let a = parse_matrix("A", &self.a, self.m, self.n)?;
        let b = parse_matrix("B", &self.b, self.m, self.n)?;
        BimatrixGame::new(a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub version: u32,
    pub x: Vec<String>,
    pub y: Vec<String>,
    #[serde(default)]
    pub solver: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
    #[serde(default)]
    pub verified: bool,
}

impl ProfileDocument {
    pub fn new(p: &MixedProfile, solver: &str, params: Value, verified: bool) -> Self {
        ProfileDocument {
            version: FORMAT_VERSION,
            x: strings(p.x()),
            y: strings(p.y()),
            solver: solver.to_string(),
            params,
            verified,
        }
    }

    pub fn to_profile(&self) -> Result<MixedProfile> {
        if self.version != FORMAT_VERSION {
            return Err(Error::UnknownVersion(self.version));
        }
        MixedProfile::new(parse_vec("x", &self.x)?, parse_vec("y", &self.y)?)
    }
}

pub fn parse_game(text: &str) -> Result<BimatrixGame> {
    serde_json::from_str::<GameDocument>(text)?.to_game()
}

pub fn game_to_json(game: &BimatrixGame, metadata: Option<Metadata>) -> String {
    serde_json::to_string_pretty(&GameDocument::from_game(game, metadata)).expect("serializable")
}

pub fn read_game(path: impl AsRef<Path>) -> Result<BimatrixGame> {
    parse_game(&fs::read_to_string(path)?)
}

pub fn write_game(path: impl AsRef<Path>, game: &BimatrixGame, metadata: Option<Metadata>) -> Result<()> {
    fs::write(path, game_to_json(game, metadata) + "\n")?;
    Ok(())
}

pub fn parse_profile(text: &str) -> Result<MixedProfile> {
    serde_json::from_str::<ProfileDocument>(text)?.to_profile()
}

pub fn read_profile(path: impl AsRef<Path>) -> Result<MixedProfile> {
    parse_profile(&fs::read_to_string(path)?)
}

pub fn write_profile(path: impl AsRef<Path>, doc: &ProfileDocument) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(doc).expect("serializable") + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn round_trip() {
        let mut a = RatMatrix::zeros(2, 3);
        a[(0, 1)] = frac(1, 3);
        a[(1, 2)] = frac(-7, 2);
        let g = BimatrixGame::new(a.clone(), a.transpose().transpose()).unwrap();
        let meta = Metadata {
            family: Some("test".into()),
            seed: Some(4),
            params: serde_json::json!({"l": 2}),
        };
        let text = game_to_json(&g, Some(meta.clone()));
        assert_eq!(parse_game(&text).unwrap(), g);
        let doc: GameDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.metadata, Some(meta));
        assert_eq!(doc.a[1], "1/3");
    }

    #[test]
    fn field_errors() {
        let text = r#"{"version":1,"m":1,"n":2,"A":["1","0.5"],"B":["0","0"]}"#;
        let err = parse_game(text).unwrap_err().to_string();
        assert!(err.contains("A[0][1]"), "{err}");
        assert!(err.contains("0.5"), "{err}");

        let text = r#"{"version":1,"m":2,"n":2,"A":["1"],"B":["0","0","0","0"]}"#;
        assert!(matches!(parse_game(text), Err(Error::Dimension(_))));

        let text = r#"{"version":2,"m":1,"n":1,"A":["1"],"B":["0"]}"#;
        assert!(matches!(parse_game(text), Err(Error::UnknownVersion(2))));

        let err = parse_game(r#"{"version":1,"m":1}"#).unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn profiles() {
        let p = MixedProfile::new(vec![frac(1, 2), frac(1, 2)], vec![frac(1, 3), frac(2, 3)]).unwrap();
        let doc = ProfileDocument::new(&p, "baseline", Value::Null, false);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse_profile(&text).unwrap(), p);

        let bad = r#"{"version":1,"x":["1/2","1/3"],"y":["1"]}"#;
        assert!(matches!(parse_profile(bad), Err(Error::InvalidProfile(_))));
    }
}
