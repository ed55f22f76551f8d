//! On-disk layout for families, operator sets and reports.
//!
//! ```text
//! out/
//!   family.json        {"dim", "source", "convention", "bases": [{"label", "file"}]}
//!   basis_0.json ...   one matrix per basis, columns = basis vectors
//!   operators.json     {"dim", "classes": [{"basis_label", "operators": [file, ...]}]}
//!   class0_op0.json ...
//!   report.json
//! ```
//!
//! Matrices use `{"rows", "cols", "data": [[{"re", "im"}, ...], ...]}` with
//! shortest round-trip float formatting, so export followed by import is
//! bit-exact.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::classes::{CommutingClass, OperatorSet};
use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::mub::{Basis, FamilySource, MubFamily, CONVENTION};

pub const FAMILY_MANIFEST: &str = "family.json";
pub const OPERATORS_MANIFEST: &str = "operators.json";
pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyManifest {
    pub dim: usize,
    pub source: FamilySource,
    pub convention: String,
    pub bases: Vec<BasisEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub basis_label: String,
    pub operators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorsManifest {
    pub dim: usize,
    pub classes: Vec<ClassEntry>,
}

fn io_err(path: &Path, e: impl ToString) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| io_err(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

/// Writes the manifest and one file per basis; returns the files written.
pub fn write_family(dir: &Path, family: &MubFamily) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    let mut entries = Vec::new();
    for (i, b) in family.bases().iter().enumerate() {
        let file = format!("basis_{i}.json");
        let path = dir.join(&file);
        write_json(&path, b.matrix())?;
        written.push(path);
        entries.push(BasisEntry {
            label: b.label().to_string(),
            file,
        });
    }
    let manifest = FamilyManifest {
        dim: family.dim(),
        source: family.source(),
        convention: CONVENTION.to_string(),
        bases: entries,
    };
    let path = dir.join(FAMILY_MANIFEST);
    write_json(&path, &manifest)?;
    written.push(path);
    Ok(written)
}

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        message: message.into(),
    }
}

fn read_square(path: &Path, dim: usize) -> Result<ComplexMatrix> {
    let m: ComplexMatrix = read_json(path)?;
    if m.rows() != dim || m.cols() != dim {
        return Err(parse_err(
            path,
            format!("expected a {dim}x{dim} matrix, found {}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(m)
}

/// Loads a family without certifying it.
pub fn read_family(dir: &Path) -> Result<MubFamily> {
    let mpath = dir.join(FAMILY_MANIFEST);
    let manifest: FamilyManifest = read_json(&mpath)?;
    if manifest.convention != CONVENTION {
        return Err(parse_err(&mpath, format!("unknown convention {:?}", manifest.convention)));
    }
    if manifest.dim < 2 || manifest.bases.is_empty() {
        return Err(parse_err(&mpath, "manifest lists no bases or has dim < 2"));
    }
    let bases = manifest
        .bases
        .iter()
        .map(|e| Ok(Basis::new_unchecked(e.label.clone(), read_square(&dir.join(&e.file), manifest.dim)?)))
        .collect::<Result<Vec<_>>>()?;
    MubFamily::from_bases(bases, manifest.source)
}

/// Writes operator files and the manifest.
pub fn write_operators(dir: &Path, set: &OperatorSet) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    let mut classes = Vec::new();
    for (c, class) in set.classes().iter().enumerate() {
        let mut files = Vec::new();
        for (k, op) in class.operators().iter().enumerate() {
            let file = format!("class{c}_op{k}.json");
            let path = dir.join(&file);
            write_json(&path, op)?;
            written.push(path);
            files.push(file);
        }
        classes.push(ClassEntry {
            basis_label: class.basis_label().to_string(),
            operators: files,
        });
    }
    let path = dir.join(OPERATORS_MANIFEST);
    write_json(
        &path,
        &OperatorsManifest {
            dim: set.dim(),
            classes,
        },
    )?;
    written.push(path);
    Ok(written)
}

/// Loads operators, pairing each class with its basis from `family`.
pub fn read_operators(dir: &Path, family: &MubFamily) -> Result<OperatorSet> {
    let mpath = dir.join(OPERATORS_MANIFEST);
    let manifest: OperatorsManifest = read_json(&mpath)?;
    if manifest.dim != family.dim() {
        return Err(parse_err(
            &mpath,
            format!("operators have dim {}, family has {}", manifest.dim, family.dim()),
        ));
    }
    if manifest.classes.is_empty() {
        return Err(parse_err(&mpath, "manifest lists no classes"));
    }
    let classes = manifest
        .classes
        .iter()
        .map(|c| {
            let basis = family
                .basis(&c.basis_label)
                .ok_or_else(|| parse_err(&mpath, format!("no basis labelled {:?} in the family", c.basis_label)))?;
            let ops = c
                .operators
                .iter()
                .map(|f| read_square(&dir.join(f), manifest.dim))
                .collect::<Result<Vec<_>>>()?;
            CommutingClass::from_parts(basis.clone(), ops)
        })
        .collect::<Result<Vec<_>>>()?;
    OperatorSet::from_parts(classes)
}
