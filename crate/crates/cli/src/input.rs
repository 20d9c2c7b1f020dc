//! Reading input files and telling the three formats apart.

use std::io::Read;
use std::path::Path;

use hkdiag::annulus::{parse_annulus, AnnulusDiagram};
use hkdiag::diagram::{parse_diagram, CharDiagram};
use hkdiag::spatial::{parse_code, SpatialGraphCode};

use crate::Failure;

pub enum Input {
    Diagram(CharDiagram),
    Annulus(AnnulusDiagram),
    Code(SpatialGraphCode),
}

pub fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Diagram,
    Annulus,
    Code,
}

fn sniff(src: &str) -> Kind {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') {
        return match serde_json::from_str::<serde_json::Value>(trimmed) {
            Ok(v) if v.get("labels").is_some() => Kind::Annulus,
            Ok(v) if v.get("vertices").is_some() => Kind::Code,
            _ => Kind::Diagram,
        };
    }
    let mut kind = Kind::Diagram;
    for line in src.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("graph" | "origin" | "vertex" | "pass") => return Kind::Code,
            Some("edge") if line.split_whitespace().any(|t| t.starts_with("label=")) => {
                kind = Kind::Annulus
            }
            _ => {}
        }
    }
    kind
}

fn located(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

pub fn parse_input(path: &Path, src: &str) -> Result<Input, Failure> {
    match sniff(src) {
        Kind::Diagram => parse_diagram(src)
            .map(Input::Diagram)
            .map_err(|e| located(path, e)),
        Kind::Annulus => parse_annulus(src)
            .map(Input::Annulus)
            .map_err(|e| located(path, e)),
        Kind::Code => read_code(path, src).map(Input::Code),
    }
}

pub fn read_code(path: &Path, src: &str) -> Result<SpatialGraphCode, Failure> {
    if src.trim_start().starts_with('{') {
        return serde_json::from_str(src).map_err(|e| located(path, e));
    }
    parse_code(src).map_err(|e| located(path, e))
}

pub fn load_code(path: &Path) -> Result<SpatialGraphCode, Failure> {
    let src = read_source(path)?;
    read_code(path, &src)
}

pub fn load(path: &Path) -> Result<Input, Failure> {
    let src = read_source(path)?;
    parse_input(path, &src)
}
