//! JSON file format for presentations.
//!
//! ```json
//! {"commutators": {"y,x": [["c", -1]]}, "names": ["x", "y", "c"],
//!  "powers": {}, "prime": 5}
//! ```
//!
//! A commutator key `"gj,gi"` means `[g_j, g_i]` with `g_j` the later
//! generator. Trivial relations are omitted. Struct fields are declared in
//! key order so the serialized form is already sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PcPresentation, Word};
use crate::{Error, Result};

/// `[[name, exponent], ...]`
pub type WordFile = Vec<(String, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default)]
    pub commutators: BTreeMap<String, WordFile>,
    pub names: Vec<String>,
    #[serde(default)]
    pub powers: BTreeMap<String, WordFile>,
    pub prime: u32,
}

impl PresentationFile {
    pub fn from_presentation(pres: &PcPresentation) -> Self {
        let names = pres.names().to_vec();
        let to_file = |w: &Word| -> WordFile { w.iter().map(|&(g, e)| (names[g].clone(), e)).collect() };
        let mut powers = BTreeMap::new();
        for i in 0..pres.rank() {
            let w = pres.power_word(i);
            if !w.is_empty() {
                powers.insert(names[i].clone(), to_file(w));
            }
        }
        let mut commutators = BTreeMap::new();
        for j in 0..pres.rank() {
            for i in 0..j {
                let w = pres.commutator_word(j, i);
                if !w.is_empty() {
                    commutators.insert(format!("{},{}", names[j], names[i]), to_file(w));
                }
            }
        }
        PresentationFile {
            commutators,
            names,
            powers,
            prime: pres.prime(),
        }
    }

    pub fn to_presentation(&self) -> Result<PcPresentation> {
        let lookup = |n: &str| -> Result<usize> {
            self.names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
        };
        let to_word = |w: &WordFile| -> Result<Word> {
            w.iter().map(|(n, e)| Ok((lookup(n)?, *e))).collect()
        };
        let mut b = PcPresentation::builder(self.prime, self.names.clone());
        for (g, w) in &self.powers {
            b = b.power(lookup(g)?, to_word(w)?);
        }
        for (key, w) in &self.commutators {
            let (later, earlier) = key
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("commutator key {key:?} is not \"gj,gi\"")))?;
            let (j, i) = (lookup(later.trim())?, lookup(earlier.trim())?);
            if j <= i {
                return Err(Error::Format(format!(
                    "commutator key {key:?} must name the later generator first"
                )));
            }
            b = b.commutator(j, i, to_word(w)?);
        }
        b.build()
    }
}

impl PcPresentation {
    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&PresentationFile::from_presentation(self))
            .expect("presentation serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.to_presentation()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reordered_keys_save_sorted() {
        let text = r#"{"prime": 5, "names": ["x", "y", "c"],
            "powers": {}, "commutators": {"y,x": [["c", -1]]}}"#;
        let pres = PcPresentation::from_json(text).unwrap();
        let saved = pres.to_json();
        let value: serde_json::Value = serde_json::from_str(text).unwrap();
        let mut expected = serde_json::to_string_pretty(&value).unwrap();
        expected.push('\n');
        assert_eq!(saved, expected);
        assert_eq!(PcPresentation::from_json(&saved).unwrap().to_json(), saved);
    }

    #[test]
    fn rejects_backwards_commutator_key() {
        let text = r#"{"prime": 5, "names": ["x", "y", "c"], "commutators": {"x,y": [["c", 1]]}}"#;
        assert!(matches!(PcPresentation::from_json(text), Err(Error::Format(_))));
    }

    #[test]
    fn rejects_unknown_names() {
        let text = r#"{"prime": 5, "names": ["x"], "powers": {"x": [["z", 1]]}}"#;
        assert!(matches!(
            PcPresentation::from_json(text),
            Err(Error::UnknownGenerator(_))
        ));
    }
}
