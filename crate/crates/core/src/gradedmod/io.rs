//! JSON files for modules and maps.
//!
//! ```json
//! { "n": 6,
//!   "degrees": { "0": 1, "2": 1 },
//!   "actions": { "d2": [ { "from_degree": 0, "matrix": [["1"]] } ] } }
//! ```
//!
//! Entries are field elements written in `z`. Degrees absent from
//! `degrees` are zero-dimensional. A map file has `source`, `target`,
//! `degree` and `blocks` (a list of `{from_degree, matrix}`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::hopf::Structure;
use crate::linalg::Mat;

use super::{GradedModule, ModuleError, ModuleMap};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlockFile {
    pub from_degree: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleFile {
    pub n: u64,
    pub degrees: BTreeMap<String, usize>,
    #[serde(default)]
    pub actions: BTreeMap<String, Vec<BlockFile>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapFile {
    pub source: ModuleFile,
    pub target: ModuleFile,
    pub degree: i64,
    #[serde(default)]
    pub blocks: Vec<BlockFile>,
}

fn write_block<F: Field>(field: &F, from_degree: i64, m: &Mat<F::Elem>) -> BlockFile {
    let matrix = (0..m.rows()).map(|r| m.row(r).iter().map(|x| field.format(x)).collect()).collect();
    BlockFile { from_degree, matrix }
}

fn read_block<F: Field>(field: &F, block: &BlockFile, rows: usize, cols: usize) -> Result<Mat<F::Elem>, ModuleError> {
    let found_cols = block.matrix.first().map(Vec::len).unwrap_or(0);
    if block.matrix.len() != rows || block.matrix.iter().any(|r| r.len() != found_cols) || (rows > 0 && found_cols != cols) {
        return Err(ModuleError::Format(format!(
            "block at degree {} is {}x{}, expected {rows}x{cols}",
            block.from_degree,
            block.matrix.len(),
            found_cols
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in &block.matrix {
        for entry in row {
            data.push(field.parse(entry)?);
        }
    }
    Ok(Mat::from_rows(rows, cols, data))
}

pub fn module_to_file<F: Field>(m: &GradedModule<F>) -> ModuleFile {
    let s = m.structure();
    let f = m.field();
    let degrees = m.dims().iter().map(|(i, d)| (i.to_string(), *d)).collect();
    let mut actions = BTreeMap::new();
    for k in 0..s.num_primes() {
        let blocks: Vec<BlockFile> = m
            .action_blocks(k)
            .iter()
            .filter(|(_, b)| !crate::linalg::is_zero(f, b))
            .map(|(i, b)| write_block(f, *i, b))
            .collect();
        if !blocks.is_empty() {
            actions.insert(format!("d{}", k + 1), blocks);
        }
    }
    ModuleFile { n: s.n(), degrees, actions }
}

pub fn module_from_file<F: Field>(structure: &Structure<F>, file: &ModuleFile) -> Result<GradedModule<F>, ModuleError> {
    if file.n != structure.n() {
        return Err(ModuleError::StructureMismatch(file.n, structure.n()));
    }
    let mut dims = BTreeMap::new();
    for (key, d) in &file.degrees {
        let i: i64 = key.trim().parse().map_err(|_| ModuleError::Format(format!("degree key {key:?} is not an integer")))?;
        dims.insert(i, *d);
    }
    let dim_at = |i: i64| dims.get(&i).copied().unwrap_or(0);
    let t = structure.num_primes();
    let mut actions = vec![BTreeMap::new(); t];
    for (name, blocks) in &file.actions {
        let k = name
            .strip_prefix('d')
            .and_then(|x| x.parse::<usize>().ok())
            .filter(|k| *k >= 1)
            .ok_or_else(|| ModuleError::Format(format!("action key {name:?} is not d<k>")))?;
        if k > t {
            return Err(ModuleError::PrimeIndex { k, t });
        }
        for b in blocks {
            let rows = dim_at(b.from_degree + structure.degree(k - 1));
            let m = read_block(structure.field(), b, rows, dim_at(b.from_degree))?;
            if actions[k - 1].insert(b.from_degree, m).is_some() {
                return Err(ModuleError::Format(format!("d{k} given twice at degree {}", b.from_degree)));
            }
        }
    }
    GradedModule::new(structure.clone(), dims, actions)
}

pub fn module_to_json<F: Field>(m: &GradedModule<F>) -> String {
    serde_json::to_string_pretty(&module_to_file(m)).expect("module files serialize")
}

pub fn module_from_json<F: Field>(structure: &Structure<F>, text: &str) -> Result<GradedModule<F>, ModuleError> {
    module_from_file(structure, &serde_json::from_str(text)?)
}

pub fn map_to_json<F: Field>(map: &ModuleMap<F>) -> String {
    let f = map.source().field();
    let file = MapFile {
        source: module_to_file(map.source()),
        target: module_to_file(map.target()),
        degree: map.degree(),
        blocks: map.blocks().iter().map(|(i, b)| write_block(f, *i, b)).collect(),
    };
    serde_json::to_string_pretty(&file).expect("map files serialize")
}

pub fn map_from_json<F: Field>(structure: &Structure<F>, text: &str) -> Result<ModuleMap<F>, ModuleError> {
    let file: MapFile = serde_json::from_str(text)?;
    let source = module_from_file(structure, &file.source)?;
    let target = module_from_file(structure, &file.target)?;
    let mut blocks = BTreeMap::new();
    for b in &file.blocks {
        let m = read_block(structure.field(), b, target.dim(b.from_degree + file.degree), source.dim(b.from_degree))?;
        blocks.insert(b.from_degree, m);
    }
    ModuleMap::new(source, target, file.degree, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedmod::{example_three_primes, example_v, hom_space};
    use crate::hopf::HnStructure;

    #[test]
    fn module_round_trip() {
        let s = HnStructure::rational(30).unwrap();
        let m = example_three_primes(&s).unwrap();
        let back = module_from_json(&s, &module_to_json(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn map_round_trip() {
        let s = HnStructure::rational(6).unwrap();
        let v = example_v(&s).unwrap();
        let f = hom_space(&v, &v, 0).unwrap().pop().unwrap();
        let back = map_from_json(&s, &map_to_json(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn invalid_files_report_the_violation() {
        let s = HnStructure::rational(6).unwrap();
        let bad = r#"{"n": 6, "degrees": {"0": 1, "2": 1, "4": 1, "6": 1},
            "actions": {"d2": [{"from_degree": 0, "matrix": [["1"]]},
                               {"from_degree": 2, "matrix": [["1"]]},
                               {"from_degree": 4, "matrix": [["1"]]}]}}"#;
        assert!(matches!(module_from_json(&s, bad), Err(ModuleError::NilpotencyViolation { k: 2, .. })));
        let wrong_n = r#"{"n": 4, "degrees": {"0": 1}}"#;
        assert!(matches!(module_from_json(&s, wrong_n), Err(ModuleError::StructureMismatch(4, 6))));
        let bad_key = r#"{"n": 6, "degrees": {"0": 1}, "actions": {"x1": []}}"#;
        assert!(matches!(module_from_json(&s, bad_key), Err(ModuleError::Format(_))));
    }
}
