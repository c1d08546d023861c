//! Element property tables and the conventional 18-column layout.
//!
//! Tables are read from CSV with the header `Z,symbol,group,period,<prop>...`.
//! A property column may declare its unit in brackets, e.g.
//! `ionization_energy[eV]`. Empty cells are missing values and stay missing.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};

const FIXED_COLUMNS: [&str; 4] = ["Z", "symbol", "group", "period"];

static BUNDLED_LAYOUT: &str = include_str!("../data/layout.csv");
static BUNDLED_TABLE: &str = include_str!("../data/elements.csv");

/// One row of a property table.
#[derive(Debug, Clone, PartialEq)]
pub struct ChemicalElement {
    pub atomic_number: u32,
    pub symbol: String,
    pub group: Option<u8>,
    pub period: Option<u8>,
    /// Values aligned with [`PropertyTable::properties`].
    pub values: Vec<Option<f64>>,
}

/// A named property column with an optional unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertySpec {
    pub name: String,
    pub unit: Option<String>,
}

impl PropertySpec {
    fn parse_header(cell: &str) -> Result<Self> {
        let cell = cell.trim();
        let (name, unit) = match cell.find('[') {
            Some(open) if cell.ends_with(']') => {
                let unit = &cell[open + 1..cell.len() - 1];
                (cell[..open].trim(), Some(unit.trim().to_string()))
            }
            Some(_) => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("malformed unit in header `{cell}`"),
                })
            }
            None => (cell, None),
        };
        if name.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty property name".into(),
            });
        }
        Ok(Self {
            name: name.to_string(),
            unit,
        })
    }

    fn header(&self) -> String {
        match &self.unit {
            Some(unit) => format!("{}[{}]", self.name, unit),
            None => self.name.clone(),
        }
    }
}

/// The set of elements under study, each described by measured properties.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyTable {
    elements: Vec<ChemicalElement>,
    properties: Vec<PropertySpec>,
}

impl PropertyTable {
    /// Builds a table, checking uniqueness of atomic numbers and symbols.
    pub fn new(properties: Vec<PropertySpec>, elements: Vec<ChemicalElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut names = HashSet::new();
        for p in &properties {
            check_cell_text(&p.name)?;
            if !names.insert(p.name.as_str()) {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("duplicate property `{}`", p.name),
                });
            }
        }
        let mut numbers = HashSet::new();
        let mut symbols = HashSet::new();
        for e in &elements {
            if e.atomic_number == 0 {
                return Err(Error::InvalidArgument(
                    "atomic number must be positive".into(),
                ));
            }
            if !numbers.insert(e.atomic_number) {
                return Err(Error::DuplicateAtomicNumber(e.atomic_number));
            }
            check_cell_text(&e.symbol)?;
            if !symbols.insert(e.symbol.as_str()) {
                return Err(Error::DuplicateSymbol(e.symbol.clone()));
            }
            if e.group.is_some_and(|g| !(1..=18).contains(&g)) {
                return Err(Error::InvalidArgument(format!(
                    "{}: group out of range",
                    e.symbol
                )));
            }
            if e.period.is_some_and(|p| !(1..=8).contains(&p)) {
                return Err(Error::InvalidArgument(format!(
                    "{}: period out of range",
                    e.symbol
                )));
            }
            if e.values.len() != properties.len() {
                return Err(Error::InvalidArgument(format!(
                    "{}: {} values for {} properties",
                    e.symbol,
                    e.values.len(),
                    properties.len()
                )));
            }
        }
        Ok(Self {
            elements,
            properties,
        })
    }

    /// The desk-scale table shipped with the crate (Z = 1-57, 72-86).
    pub fn bundled() -> Self {
        parse_table(BUNDLED_TABLE).expect("bundled element table is valid")
    }

    pub fn elements(&self) -> &[ChemicalElement] {
        &self.elements
    }

    pub fn properties(&self) -> &[PropertySpec] {
        &self.properties
    }

    pub fn property_names(&self) -> impl Iterator<Item = &str> {
        self.properties.iter().map(|p| p.name.as_str())
    }

    pub fn property_index(&self, name: &str) -> Result<usize> {
        self.properties
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| Error::UnknownProperty(name.to_string()))
    }

    pub fn unit(&self, name: &str) -> Option<&str> {
        self.properties
            .iter()
            .find(|p| p.name == name)
            .and_then(|p| p.unit.as_deref())
    }

    pub fn element(&self, symbol: &str) -> Option<&ChemicalElement> {
        self.elements.iter().find(|e| e.symbol == symbol)
    }

    pub fn value(&self, symbol: &str, property: &str) -> Result<Option<f64>> {
        let column = self.property_index(property)?;
        let element = self
            .element(symbol)
            .ok_or_else(|| Error::UnknownElement(symbol.to_string()))?;
        Ok(element.values[column])
    }

    pub fn symbols(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.symbol.clone()).collect()
    }

    /// Properties without a single missing value.
    pub fn complete_properties(&self) -> Vec<String> {
        self.properties
            .iter()
            .enumerate()
            .filter(|(i, _)| self.elements.iter().all(|e| e.values[*i].is_some()))
            .map(|(_, p)| p.name.clone())
            .collect()
    }

    /// Canonical CSV: `\n` line endings, empty cells for missing values,
    /// numbers in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&FIXED_COLUMNS.join(","));
        for p in &self.properties {
            out.push(',');
            out.push_str(&p.header());
        }
        out.push('\n');
        for e in &self.elements {
            let _ = write!(out, "{},{},", e.atomic_number, e.symbol);
            if let Some(g) = e.group {
                let _ = write!(out, "{g}");
            }
            out.push(',');
            if let Some(p) = e.period {
                let _ = write!(out, "{p}");
            }
            for v in &e.values {
                out.push(',');
                if let Some(v) = v {
                    let _ = write!(out, "{v}");
                }
            }
            out.push('\n');
        }
        out
    }
}

fn check_cell_text(text: &str) -> Result<()> {
    if text.is_empty() || text.contains([',', '"', '\n', '\r', '[', ']']) {
        return Err(Error::InvalidArgument(format!(
            "`{text}` is not a valid name"
        )));
    }
    Ok(())
}

/// Reads a property table from CSV.
pub fn load_table<R: Read>(source: R) -> Result<PropertyTable> {
    let mut text = String::new();
    let mut source = source;
    source.read_to_string(&mut text).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    parse_table(&text)
}

pub fn parse_table(text: &str) -> Result<PropertyTable> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r.map_err(csv_error)?,
        None => return Err(Error::EmptyInput),
    };
    for (i, expected) in FIXED_COLUMNS.iter().enumerate() {
        if header.get(i) != Some(*expected) {
            return Err(Error::Parse {
                line: 1,
                message: format!("header must start with `{}`", FIXED_COLUMNS.join(",")),
            });
        }
    }
    let properties = header
        .iter()
        .skip(FIXED_COLUMNS.len())
        .map(PropertySpec::parse_header)
        .collect::<Result<Vec<_>>>()?;

    let mut elements = Vec::new();
    for record in records {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let cell = |i: usize| record.get(i).unwrap_or("");
        let column_name = |i: usize| -> String {
            if i < FIXED_COLUMNS.len() {
                FIXED_COLUMNS[i].to_string()
            } else {
                properties[i - FIXED_COLUMNS.len()].name.clone()
            }
        };
        let malformed = |i: usize| Error::MalformedNumber {
            line,
            column: column_name(i),
            value: cell(i).to_string(),
        };

        let atomic_number: u32 = cell(0).parse().map_err(|_| malformed(0))?;
        let symbol = cell(1).to_string();
        if symbol.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty symbol".into(),
            });
        }
        let group = optional_int(cell(2)).map_err(|_| malformed(2))?;
        let period = optional_int(cell(3)).map_err(|_| malformed(3))?;
        let values = (0..properties.len())
            .map(|j| {
                let i = j + FIXED_COLUMNS.len();
                let raw = cell(i);
                if raw.is_empty() {
                    Ok(None)
                } else {
                    raw.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .map(Some)
                        .ok_or_else(|| malformed(i))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        elements.push(ChemicalElement {
            atomic_number,
            symbol,
            group,
            period,
            values,
        });
    }
    PropertyTable::new(properties, elements)
}

fn optional_int(raw: &str) -> std::result::Result<Option<u8>, std::num::ParseIntError> {
    if raw.is_empty() {
        Ok(None)
    } else {
        raw.parse().map(Some)
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

/// Position of an element in the 18-column table. `group` is absent for the
/// lanthanides and actinides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coordinates {
    pub group: Option<u8>,
    pub period: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutCell {
    pub symbol: String,
    pub coordinates: Coordinates,
}

/// The conventional 18-column table with the f-block excluded from groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutFixture {
    cells: BTreeMap<u32, LayoutCell>,
}

impl LayoutFixture {
    /// Z = 1..103, parsed from the shipped `layout.csv`.
    pub fn bundled() -> Self {
        Self::from_csv(BUNDLED_LAYOUT).expect("bundled layout is valid")
    }

    /// Parses a `Z,symbol,group,period` CSV.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader.headers().map_err(csv_error)?.clone();
        if headers.iter().collect::<Vec<_>>() != FIXED_COLUMNS {
            return Err(Error::Parse {
                line: 1,
                message: "layout header must be `Z,symbol,group,period`".into(),
            });
        }
        let mut cells = BTreeMap::new();
        let mut occupied = HashSet::new();
        let mut symbols = HashSet::new();
        for record in reader.records() {
            let record = record.map_err(csv_error)?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let bad = |message: &str| Error::Parse {
                line,
                message: message.to_string(),
            };
            let z: u32 = record[0].parse().map_err(|_| bad("bad Z"))?;
            let symbol = record[1].to_string();
            let group = optional_int(&record[2]).map_err(|_| bad("bad group"))?;
            let period: u8 = record[3].parse().map_err(|_| bad("bad period"))?;
            if group.is_some_and(|g| !(1..=18).contains(&g)) || !(1..=8).contains(&period) {
                return Err(bad("cell out of range"));
            }
            if let Some(g) = group {
                if !occupied.insert((g, period)) {
                    return Err(bad("two elements share a cell"));
                }
            }
            if !symbols.insert(symbol.clone()) {
                return Err(Error::DuplicateSymbol(symbol));
            }
            let cell = LayoutCell {
                symbol,
                coordinates: Coordinates { group, period },
            };
            if cells.insert(z, cell).is_some() {
                return Err(Error::DuplicateAtomicNumber(z));
            }
        }
        if cells.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self { cells })
    }

    pub fn coordinates(&self, atomic_number: u32) -> Result<Coordinates> {
        self.cells
            .get(&atomic_number)
            .map(|c| c.coordinates)
            .ok_or(Error::UnknownAtomicNumber(atomic_number))
    }

    pub fn symbol(&self, atomic_number: u32) -> Option<&str> {
        self.cells.get(&atomic_number).map(|c| c.symbol.as_str())
    }

    pub fn atomic_number(&self, symbol: &str) -> Option<u32> {
        self.cells
            .iter()
            .find(|(_, c)| c.symbol == symbol)
            .map(|(z, _)| *z)
    }

    pub fn coordinates_of(&self, symbol: &str) -> Result<Coordinates> {
        let z = self
            .atomic_number(symbol)
            .ok_or_else(|| Error::UnknownElement(symbol.to_string()))?;
        self.coordinates(z)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &LayoutCell)> {
        self.cells.iter().map(|(z, c)| (*z, c))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Column-standardized property values: rows follow the table's element
/// order, columns follow `columns`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

/// Centers each selected column and scales it to unit sample standard
/// deviation over its non-missing entries. Missing entries stay missing.
pub fn standardize(table: &PropertyTable, selected: &[&str]) -> Result<StandardizedMatrix> {
    if selected.is_empty() {
        return Err(Error::InvalidArgument("no properties selected".into()));
    }
    let indices = selected
        .iter()
        .map(|name| table.property_index(name))
        .collect::<Result<Vec<_>>>()?;

    let n = table.elements.len();
    let mut values = vec![vec![None; selected.len()]; n];
    for (col, (&name, &index)) in selected.iter().zip(&indices).enumerate() {
        let present: Vec<f64> = table
            .elements
            .iter()
            .filter_map(|e| e.values[index])
            .collect();
        if present.len() < 2 {
            return Err(Error::TooFewValues(name.to_string()));
        }
        let count = present.len() as f64;
        let mean = present.iter().sum::<f64>() / count;
        let variance = present.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
        let sd = variance.sqrt();
        if sd == 0.0 || !sd.is_finite() {
            return Err(Error::ZeroSpread(name.to_string()));
        }
        for (row, e) in table.elements.iter().enumerate() {
            values[row][col] = e.values[index].map(|v| (v - mean) / sd);
        }
    }
    Ok(StandardizedMatrix {
        rows: table.symbols(),
        columns: selected.iter().map(|s| s.to_string()).collect(),
        values,
    })
}

/// Property values without rescaling, in the same shape as [`standardize`].
pub fn raw_matrix(table: &PropertyTable, selected: &[&str]) -> Result<StandardizedMatrix> {
    if selected.is_empty() {
        return Err(Error::InvalidArgument("no properties selected".into()));
    }
    let indices = selected
        .iter()
        .map(|name| table.property_index(name))
        .collect::<Result<Vec<_>>>()?;
    let values = table
        .elements
        .iter()
        .map(|e| indices.iter().map(|&i| e.values[i]).collect())
        .collect();
    Ok(StandardizedMatrix {
        rows: table.symbols(),
        columns: selected.iter().map(|s| s.to_string()).collect(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_column(values: &[f64]) -> PropertyTable {
        let mut csv = String::from("Z,symbol,group,period,x\n");
        for (i, v) in values.iter().enumerate() {
            csv.push_str(&format!("{},E{},,,{}\n", i + 1, i, v));
        }
        parse_table(&csv).unwrap()
    }

    fn column(m: &StandardizedMatrix) -> Vec<f64> {
        m.values.iter().map(|r| r[0].unwrap()).collect()
    }

    #[test]
    fn loads_minimal_row() {
        let t = parse_table("Z,symbol,group,period,ie\n1,H,1,1,13.598\n").unwrap();
        assert_eq!(t.elements().len(), 1);
        assert_eq!(t.value("H", "ie").unwrap(), Some(13.598));
        assert_eq!(t.elements()[0].group, Some(1));
    }

    #[test]
    fn rejects_duplicate_z() {
        let err = parse_table("Z,symbol,group,period,x\n3,Li,1,2,1\n3,Na,1,3,2\n").unwrap_err();
        assert_eq!(err, Error::DuplicateAtomicNumber(3));
    }

    #[test]
    fn rejects_duplicate_symbol() {
        let err = parse_table("Z,symbol,group,period,x\n3,Li,1,2,1\n4,Li,2,2,2\n").unwrap_err();
        assert_eq!(err, Error::DuplicateSymbol("Li".into()));
    }

    #[test]
    fn malformed_number_names_row_and_column() {
        let err = parse_table("Z,symbol,group,period,mass\n1,H,1,1,abc\n").unwrap_err();
        assert_eq!(
            err,
            Error::MalformedNumber {
                line: 2,
                column: "mass".into(),
                value: "abc".into()
            }
        );
    }

    #[test]
    fn rejects_empty_input() {
        assert_eq!(parse_table("").unwrap_err(), Error::EmptyInput);
        assert_eq!(
            parse_table("Z,symbol,group,period,x\n").unwrap_err(),
            Error::EmptyInput
        );
    }

    #[test]
    fn empty_group_cell_matches_layout_for_lanthanide() {
        let t = parse_table("Z,symbol,group,period,x\n58,Ce,,6,1.0\n").unwrap();
        let ce = t.element("Ce").unwrap();
        assert_eq!(ce.group, None);
        let layout = LayoutFixture::bundled();
        assert_eq!(layout.coordinates(58).unwrap().group, ce.group);
    }

    #[test]
    fn units_are_parsed_from_headers() {
        let t = parse_table("Z,symbol,group,period,ie[eV],plain\n1,H,1,1,13.6,\n").unwrap();
        assert_eq!(t.unit("ie"), Some("eV"));
        assert_eq!(t.unit("plain"), None);
        assert_eq!(t.value("H", "plain").unwrap(), None);
    }

    #[test]
    fn coordinates_lookup() {
        let layout = LayoutFixture::bundled();
        let c = |z| layout.coordinates(z).unwrap();
        assert_eq!(
            c(11),
            Coordinates {
                group: Some(1),
                period: 3
            }
        );
        assert_eq!(
            c(1),
            Coordinates {
                group: Some(1),
                period: 1
            }
        );
        assert_eq!(
            c(60),
            Coordinates {
                group: None,
                period: 6
            }
        );
        assert_eq!(
            layout.coordinates(104),
            Err(Error::UnknownAtomicNumber(104))
        );
    }

    #[test]
    fn layout_is_total_and_f_block_has_no_group() {
        let layout = LayoutFixture::bundled();
        for z in 1..=103 {
            let c = layout.coordinates(z).unwrap();
            let f_block = (57..=71).contains(&z) || (89..=103).contains(&z);
            assert_eq!(c.group.is_none(), f_block, "Z={z}");
        }
    }

    #[test]
    fn standardize_three_points() {
        let m = standardize(&one_column(&[1.0, 2.0, 3.0]), &["x"]).unwrap();
        assert_eq!(column(&m), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn standardize_four_points() {
        let m = standardize(&one_column(&[2.0, 4.0, 6.0, 8.0]), &["x"]).unwrap();
        let expected = [-1.1619, -0.3873, 0.3873, 1.1619];
        for (got, want) in column(&m).iter().zip(expected) {
            assert!((got - want).abs() < 5e-5, "{got} vs {want}");
        }
    }

    #[test]
    fn standardize_rejects_zero_spread() {
        let err = standardize(&one_column(&[5.0, 5.0, 5.0]), &["x"]).unwrap_err();
        assert_eq!(err, Error::ZeroSpread("x".into()));
    }

    #[test]
    fn standardize_keeps_missing_entries() {
        let t = parse_table("Z,symbol,group,period,x\n1,A,,,1\n2,B,,,\n3,C,,,3\n").unwrap();
        let m = standardize(&t, &["x"]).unwrap();
        assert_eq!(m.values[1][0], None);
        assert!((m.values[0][0].unwrap() + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn unknown_property_is_rejected() {
        let err = standardize(&one_column(&[1.0, 2.0]), &["y"]).unwrap_err();
        assert_eq!(err, Error::UnknownProperty("y".into()));
    }

    #[test]
    fn bundled_table_coverage() {
        let t = PropertyTable::bundled();
        assert_eq!(t.elements().len(), 72);
        assert!(t.properties().len() >= 7);
        assert!(t
            .elements()
            .iter()
            .all(|e| !(58..=71).contains(&e.atomic_number)));
        let layout = LayoutFixture::bundled();
        for e in t.elements() {
            let c = layout.coordinates(e.atomic_number).unwrap();
            assert_eq!(layout.symbol(e.atomic_number), Some(e.symbol.as_str()));
            assert_eq!((c.group, Some(c.period)), (e.group, e.period));
        }
    }
}
