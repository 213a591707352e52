//! Versioned data files compiled into the library.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::arith::Matrix;
use crate::eisenstein::CycNum;
use crate::fibration::{validate_pencil, BinaryForm, KodairaType, Order, SexticPencil};

pub const LAMBDA1_JSON: &str = include_str!("../fixtures/lambda1.json");
pub const PENCILS_JSON: &str = include_str!("../fixtures/pencils.json");
pub const KODAIRA_ORACLE_JSON: &str = include_str!("../fixtures/kodaira_oracle.json");

const FORMAT_VERSION: u32 = 1;

#[derive(Deserialize)]
struct GeneratorFile {
    format_version: u32,
    generators: Vec<Vec<CycNum>>,
}

/// Rows spanning Λ₁: `[[√−3,0,0],[0,√−3,0],[1,1,1]]`.
pub fn lambda1_generators() -> Matrix<CycNum> {
    let f: GeneratorFile = serde_json::from_str(LAMBDA1_JSON).expect("valid fixture");
    assert_eq!(f.format_version, FORMAT_VERSION);
    Matrix::from_rows(&f.generators)
}

/// A named pencil with labelled line test points `a1:a2`.
#[derive(Clone, Debug)]
pub struct PencilFixture {
    pub name: String,
    pub pencil: SexticPencil,
    pub points: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct PencilEntry {
    name: String,
    f3: BinaryForm,
    f6: BinaryForm,
    points: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct PencilFile {
    format_version: u32,
    pencils: Vec<PencilEntry>,
}

pub fn pencils() -> Vec<PencilFixture> {
    let f: PencilFile = serde_json::from_str(PENCILS_JSON).expect("valid fixture");
    assert_eq!(f.format_version, FORMAT_VERSION);
    f.pencils
        .into_iter()
        .map(|e| PencilFixture {
            pencil: validate_pencil(&e.f3, &e.f6).expect("admissible fixture pencil"),
            name: e.name,
            points: e.points,
        })
        .collect()
}

/// f3 = X1³ + X2³, f6 = X1⁶ + X2⁶.
pub fn standard_pencil() -> PencilFixture {
    pencil_named("standard").expect("shipped")
}

pub fn pencil_named(name: &str) -> Option<PencilFixture> {
    pencils().into_iter().find(|p| p.name == name)
}

/// One row of the hand-traced Tate table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaCase {
    pub ord_a: Order,
    pub ord_b: Order,
    pub ord_disc: u32,
    pub expected: KodairaType,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Finite(u32),
    Named(String),
}

impl OrderRepr {
    fn order(self) -> Order {
        match self {
            OrderRepr::Finite(v) => Some(v),
            OrderRepr::Named(s) if s == "inf" => None,
            OrderRepr::Named(s) => panic!("bad order `{s}` in fixture"),
        }
    }
}

#[derive(Deserialize)]
struct CaseEntry {
    ord_a: OrderRepr,
    ord_b: OrderRepr,
    ord_disc: u32,
    #[serde(rename = "type")]
    kodaira: KodairaType,
}

#[derive(Deserialize)]
struct OracleFile {
    format_version: u32,
    cases: Vec<CaseEntry>,
}

pub fn kodaira_oracle() -> Vec<KodairaCase> {
    let f: OracleFile = serde_json::from_str(KODAIRA_ORACLE_JSON).expect("valid fixture");
    assert_eq!(f.format_version, FORMAT_VERSION);
    f.cases
        .into_iter()
        .map(|c| KodairaCase {
            ord_a: c.ord_a.order(),
            ord_b: c.ord_b.order(),
            ord_disc: c.ord_disc,
            expected: c.kodaira,
        })
        .collect()
}
