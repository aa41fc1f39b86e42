//! JSON point-set files: `{p, h, n, points: [[c_0..c_n], ...], meta}`.

use std::fmt::Write as _;

use pgcone::{Field, Geometry, PointSet};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub object: String,
    pub expected_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct PointSetFile {
    pub p: u64,
    pub h: u32,
    pub n: usize,
    pub points: Vec<Vec<u64>>,
    #[serde(default)]
    pub meta: Option<Meta>,
}

impl PointSetFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("cannot parse point-set file: {e}")))
    }

    /// Geometry and point set, rejecting malformed or repeated vectors by name.
    pub fn load(&self) -> Result<(Geometry, PointSet), CliError> {
        let field = Field::new(self.p, self.h)?;
        let q = u64::from(field.order());
        let geometry = Geometry::new(field, self.n)?;
        let mut set = PointSet::empty(&geometry);
        for raw in &self.points {
            if raw.len() != self.n + 1 || raw.iter().any(|&c| c >= q) {
                return Err(CliError::Invalid(format!(
                    "vector {raw:?} is not a point of PG({},{q}): need {} coordinates below {q}",
                    self.n,
                    self.n + 1
                )));
            }
            let v: Vec<u32> = raw.iter().map(|&c| c as u32).collect();
            let index =
                geometry.index_of(&v).map_err(|_| CliError::Invalid(format!("vector {raw:?} is the zero vector")))?;
            if set.contains(index) {
                return Err(CliError::Invalid(format!("vector {raw:?} repeats an earlier point")));
            }
            set.insert(index);
        }
        Ok((geometry, set))
    }
}

/// One normalized vector per line so files diff cleanly.
pub fn render(geometry: &Geometry, set: &PointSet, meta: &Meta) -> String {
    let field = geometry.field();
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"p\": {},", field.characteristic());
    let _ = writeln!(out, "  \"h\": {},", field.degree());
    let _ = writeln!(out, "  \"n\": {},", geometry.dim());
    let _ = writeln!(out, "  \"meta\": {},", serde_json::to_string(meta).expect("plain struct"));
    let _ = writeln!(out, "  \"points\": [");
    let last = set.len().saturating_sub(1);
    for (i, v) in set.vectors(geometry).enumerate() {
        let sep = if i == last { "" } else { "," };
        let _ = writeln!(out, "    {}{sep}", serde_json::to_string(v).expect("integers"));
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Geometry::new(Field::from_order(4).unwrap(), 2).unwrap();
        let set = PointSet::from_indices(&g, [0, 3, 20]).unwrap();
        let meta = Meta { object: "test".into(), expected_size: 3 };
        let text = render(&g, &set, &meta);
        let file = PointSetFile::parse(&text).unwrap();
        assert_eq!(file.meta, Some(meta));
        let (g2, set2) = file.load().unwrap();
        assert_eq!(g2.num_points(), 21);
        assert_eq!(set2, set);
    }

    #[test]
    fn rejects_bad_vectors() {
        let bad = r#"{"p":2,"h":2,"n":2,"points":[[0,0,4]]}"#;
        let err = PointSetFile::parse(bad).unwrap().load().unwrap_err();
        assert!(err.to_string().contains("[0, 0, 4]"), "{err}");
        let dup = r#"{"p":2,"h":2,"n":2,"points":[[0,0,1],[0,0,2]]}"#;
        assert!(PointSetFile::parse(dup).unwrap().load().unwrap_err().to_string().contains("repeats"));
        let zero = r#"{"p":2,"h":2,"n":2,"points":[[0,0,0]]}"#;
        assert!(PointSetFile::parse(zero).unwrap().load().is_err());
    }
}
