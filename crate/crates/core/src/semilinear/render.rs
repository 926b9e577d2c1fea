use serde::{Deserialize, Serialize};

use super::{LinearSet, NVector, SemilinearError, SemilinearSet};
use crate::parikh::Alphabet;

/// A semilinear set whose coordinates are named by an alphabet, as printed
/// by the command-line tool.
///
/// Text form:
///
/// ```text
/// alphabet: a b
/// linear base=[1,1] periods=[[1,1]]
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhImage {
    pub alphabet: Alphabet,
    pub set: SemilinearSet,
}

#[derive(Serialize, Deserialize)]
struct ImageJson {
    alphabet: Vec<String>,
    components: Vec<ComponentJson>,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    base: NVector,
    periods: Vec<NVector>,
}

impl ParikhImage {
    pub fn new(alphabet: Alphabet, set: SemilinearSet) -> Result<Self, SemilinearError> {
        super::check_dim(alphabet.len(), set.dim())?;
        Ok(ParikhImage { alphabet, set })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("alphabet:");
        for l in self.alphabet.letters() {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        for c in self.set.components() {
            out.push_str(&render_linear(c));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = ImageJson {
            alphabet: self.alphabet.letters().to_vec(),
            components: self
                .set
                .components()
                .iter()
                .map(|c| ComponentJson {
                    base: c.base().clone(),
                    periods: c.periods().to_vec(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, SemilinearError> {
        let doc: ImageJson =
            serde_json::from_str(text).map_err(|e| SemilinearError::Malformed(e.to_string()))?;
        let alphabet = Alphabet::new(doc.alphabet);
        let comps = doc
            .components
            .into_iter()
            .map(|c| LinearSet::new(c.base, c.periods))
            .collect::<Result<_, _>>()?;
        ParikhImage::new(alphabet.clone(), SemilinearSet::new(alphabet.len(), comps)?)
    }
}

pub(crate) fn render_linear(c: &LinearSet) -> String {
    let periods: Vec<String> = c.periods().iter().map(NVector::to_string).collect();
    format!("linear base={} periods=[{}]", c.base(), periods.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering() {
        let set = SemilinearSet::from_linear(
            LinearSet::new(NVector::new(vec![1, 1]), vec![NVector::new(vec![1, 1])]).unwrap(),
        );
        let img = ParikhImage::new(Alphabet::from_chars("ab"), set).unwrap();
        assert_eq!(
            img.to_text(),
            "alphabet: a b\nlinear base=[1,1] periods=[[1,1]]\n"
        );
        let empty = ParikhImage::new(Alphabet::from_chars("a"), SemilinearSet::empty(1)).unwrap();
        assert_eq!(empty.to_text(), "alphabet: a\n");
    }

    #[test]
    fn json_round_trip() {
        let set = SemilinearSet::new(
            2,
            vec![
                LinearSet::singleton(NVector::new(vec![0, 0])),
                LinearSet::new(NVector::new(vec![1, 1]), vec![NVector::new(vec![1, 1])]).unwrap(),
            ],
        )
        .unwrap();
        let img = ParikhImage::new(Alphabet::from_chars("lr"), set).unwrap();
        let json = img.to_json();
        assert!(json.contains("\"components\""));
        assert_eq!(ParikhImage::from_json(&json).unwrap(), img);
    }

    #[test]
    fn json_errors() {
        assert!(ParikhImage::from_json("{").is_err());
        let bad = r#"{"alphabet":["a"],"components":[{"base":[1,2],"periods":[]}]}"#;
        assert!(matches!(
            ParikhImage::from_json(bad),
            Err(SemilinearError::DimensionMismatch { .. })
        ));
    }
}
