//! Pettifor's phenomenological ordering of the elements, used as the axis of
//! structure maps.

use std::collections::HashMap;
use std::io::Read;

use serde::Serialize;

use crate::error::{Error, Result};

/// The sequence as printed, read as contiguous. Yttrium does not appear in
/// it and is therefore not ranked.
const SEQUENCE: [&str; 102] = [
    "He", "Ne", "Ar", "Kr", "Xe", "Rn", "Fr", "Cs", "Rb", "K", "Na", "Li", "Ra", "Ba", "Sr", "Ca",
    "Yb", "Eu", "Sc", "Lu", "Tm", "Er", "Ho", "Dy", "Tb", "Gd", "Sm", "Pm", "Nd", "Pr", "Ce", "La",
    "Lr", "No", "Md", "Fm", "Es", "Cf", "Bk", "Cm", "Am", "Pu", "Np", "U", "Pa", "Th", "Ac", "Zr",
    "Hf", "Ti", "Ta", "Nb", "V", "W", "Mo", "Cr", "Re", "Tc", "Mn", "Fe", "Ru", "Os", "Co", "Rh",
    "Ir", "Ni", "Pt", "Pd", "Au", "Ag", "Cu", "Mg", "Hg", "Cd", "Zn", "Be", "Tl", "In", "Al", "Ga",
    "Pb", "Sn", "Ge", "Si", "B", "Bi", "Sb", "As", "P", "Po", "Te", "Se", "S", "C", "At", "I",
    "Br", "Cl", "N", "O", "F", "H",
];

/// A total order on element symbols with 1-based ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PettiforScale {
    order: Vec<String>,
    rank: HashMap<String, usize>,
}

impl PettiforScale {
    pub fn new(order: Vec<String>) -> Result<Self> {
        let mut rank = HashMap::with_capacity(order.len());
        for (i, s) in order.iter().enumerate() {
            if rank.insert(s.clone(), i + 1).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { order, rank })
    }

    pub fn symbols(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn rank(&self, symbol: &str) -> Result<usize> {
        self.rank
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownElement(symbol.to_string()))
    }

    pub fn symbol_at(&self, rank: usize) -> Option<&str> {
        rank.checked_sub(1)
            .and_then(|i| self.order.get(i))
            .map(String::as_str)
    }
}

pub fn pettifor_scale() -> PettiforScale {
    PettiforScale::new(SEQUENCE.iter().map(|s| s.to_string()).collect())
        .expect("built-in sequence has no duplicates")
}

pub fn pettifor_rank(symbol: &str) -> Result<usize> {
    pettifor_scale().rank(symbol)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapPoint {
    pub x: usize,
    pub y: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct StructureMap {
    pub points: Vec<MapPoint>,
    pub errors: Vec<RowError>,
}

impl StructureMap {
    /// `x,y,label` CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,label\n");
        for p in &self.points {
            out.push_str(&format!("{},{},{}\n", p.x, p.y, csv_field(&p.label)));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Places binary compounds `(A, B, label)` on the scale. Rows naming an
/// element outside the scale are reported and skipped.
///
/// The input is CSV with header `element_a,element_b,structure`.
pub fn structure_map<R: Read>(compounds: R, axis: &PettiforScale) -> Result<StructureMap> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(compounds);
    let headers = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if !headers.is_empty()
        && headers.iter().collect::<Vec<_>>() != ["element_a", "element_b", "structure"]
    {
        return Err(Error::Parse {
            line: 1,
            message: "header must be `element_a,element_b,structure`".into(),
        });
    }
    let mut map = StructureMap::default();
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                map.errors.push(RowError {
                    line: e.position().map_or(0, |p| p.line() as usize),
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line() as usize);
        match (axis.rank(&record[0]), axis.rank(&record[1])) {
            (Ok(x), Ok(y)) => map.points.push(MapPoint {
                x,
                y,
                label: record[2].to_string(),
            }),
            (Err(e), _) | (_, Err(e)) => map.errors.push(RowError {
                line,
                message: e.to_string(),
            }),
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(pettifor_rank("He").unwrap(), 1);
        assert_eq!(pettifor_rank("Ne").unwrap(), 2);
        let scale = pettifor_scale();
        assert_eq!(pettifor_rank("H").unwrap(), scale.len());
        assert!(pettifor_rank("Cs").unwrap() < pettifor_rank("K").unwrap());
        assert!(pettifor_rank("Y").is_err());
        assert_eq!(
            pettifor_rank("Tb").unwrap(),
            pettifor_rank("Dy").unwrap() + 1
        );
    }

    #[test]
    fn bijection() {
        let scale = pettifor_scale();
        for r in 1..=scale.len() {
            assert_eq!(scale.rank(scale.symbol_at(r).unwrap()).unwrap(), r);
        }
        assert_eq!(scale.symbol_at(0), None);
        assert!(PettiforScale::new(vec!["H".into(), "H".into()]).is_err());
    }

    #[test]
    fn maps() {
        let scale = pettifor_scale();
        let empty = structure_map("element_a,element_b,structure\n".as_bytes(), &scale).unwrap();
        assert!(empty.points.is_empty() && empty.errors.is_empty());
        let one = structure_map(
            "element_a,element_b,structure\nHe,Ne,L\n".as_bytes(),
            &scale,
        )
        .unwrap();
        assert_eq!(
            one.points,
            [MapPoint {
                x: 1,
                y: 2,
                label: "L".into()
            }]
        );
        let bad = structure_map(
            "element_a,element_b,structure\nNa,Cl,B1\nXx,Cl,B2\n".as_bytes(),
            &scale,
        )
        .unwrap();
        assert_eq!(bad.points.len(), 1);
        assert_eq!(bad.errors.len(), 1);
        assert_eq!(bad.errors[0].line, 3);
        assert_eq!(
            bad.to_csv(),
            format!(
                "x,y,label\n{},{},B1\n",
                pettifor_rank("Na").unwrap(),
                pettifor_rank("Cl").unwrap()
            )
        );
    }
}
