//! Text format for polytopes and affine lattices.
//!
//! ```text
//! # comments and blank lines are ignored
//! v 0, 0, 0
//! v 1, 0, 0
//! v 0, 1, 0
//! v 0, 0, 1/2 + 3/4*sqrt2
//! origin 0, 0, 0        # optional, defaults to 0
//! basis 1, 0, 0         # optional block of exactly three lines,
//! basis 0, 1, 0         # defaults to the standard basis
//! basis 0, 0, 1
//! ```
//!
//! Scalars use the exact syntax `p/q`, `r/s*sqrt2` or `p/q + r/s*sqrt2`;
//! decimal points are rejected.

use thiserror::Error;

use crate::exactnum::{parse_qsqrt2, QSqrt2};
use crate::widthlab::{AffineLattice, Polytope, Vec3, WidthError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("no vertices")]
    NoVertices,
    #[error("expected 3 basis vectors, found {0}")]
    BasisCount(usize),
    #[error("origin given twice (line {0})")]
    DuplicateOrigin(usize),
    #[error(transparent)]
    Geometry(#[from] WidthError),
}

#[derive(Clone, Debug)]
pub struct PolytopeFile {
    pub polytope: Polytope,
    pub lattice: AffineLattice,
    /// The file gave its own lattice.
    pub explicit_lattice: bool,
}

fn parse_vec3(rest: &str, line: usize) -> Result<Vec3, PolyFileError> {
    let err = |msg: String| PolyFileError::Syntax { line, msg };
    let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(err(format!(
            "expected 3 comma-separated coordinates, found {}",
            parts.len()
        )));
    }
    let mut out = Vec::with_capacity(3);
    for p in parts {
        out.push(parse_qsqrt2(p).map_err(|e| err(e.to_string()))?);
    }
    Ok(out.try_into().expect("three"))
}

pub fn parse_polytope_file(text: &str) -> Result<PolytopeFile, PolyFileError> {
    let mut vertices = Vec::new();
    let mut origin: Option<Vec3> = None;
    let mut basis = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match key {
            "v" => vertices.push(parse_vec3(rest, line)?),
            "origin" => {
                if origin.is_some() {
                    return Err(PolyFileError::DuplicateOrigin(line));
                }
                origin = Some(parse_vec3(rest, line)?);
            }
            "basis" => basis.push(parse_vec3(rest, line)?),
            other => {
                return Err(PolyFileError::Syntax {
                    line,
                    msg: format!("unknown keyword {other:?}"),
                });
            }
        }
    }
    if vertices.is_empty() {
        return Err(PolyFileError::NoVertices);
    }
    let explicit_lattice = origin.is_some() || !basis.is_empty();
    let lattice = match basis.len() {
        0 => {
            let std = AffineLattice::standard();
            AffineLattice::new(origin.unwrap_or_else(|| std.origin().clone()), std.basis().clone())?
        }
        3 => {
            let zero = || [QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()];
            AffineLattice::new(origin.unwrap_or_else(zero), basis.try_into().expect("three"))?
        }
        n => return Err(PolyFileError::BasisCount(n)),
    };
    Ok(PolytopeFile {
        polytope: Polytope::new(vertices)?,
        lattice,
        explicit_lattice,
    })
}

/// Renders a polytope (and a non-standard lattice) in the file format.
pub fn write_polytope_file(p: &Polytope, lattice: Option<&AffineLattice>) -> String {
    let row = |v: &Vec3| format!("{}, {}, {}", v[0], v[1], v[2]);
    let mut out = String::new();
    for v in p.vertices() {
        out.push_str(&format!("v {}\n", row(v)));
    }
    if let Some(l) = lattice {
        out.push_str(&format!("origin {}\n", row(l.origin())));
        for b in l.basis() {
            out.push_str(&format!("basis {}\n", row(b)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBE: &str = "# unit cube\nv 0,0,0\nv 1,0,0\nv 0,1,0\nv 0,0,1\nv 1,1,0\nv 1,0,1\nv 0,1,1\nv 1,1,1\n";

    #[test]
    fn parses_cube_with_default_lattice() {
        let f = parse_polytope_file(CUBE).unwrap();
        assert_eq!(f.polytope.vertices().len(), 8);
        assert!(!f.explicit_lattice);
    }

    #[test]
    fn lattice_block() {
        let text = "v 0,0,0\nv 2,0,0\nv 0,2,0\nv 0,0,2\norigin 1/2, 0, 0\nbasis 2,0,0\nbasis 0,1,0\nbasis 0,0,sqrt2\n";
        let f = parse_polytope_file(text).unwrap();
        assert!(f.explicit_lattice);
        assert_eq!(f.lattice.basis()[2][2], QSqrt2::sqrt2());
        let back = parse_polytope_file(&write_polytope_file(&f.polytope, Some(&f.lattice))).unwrap();
        assert_eq!(back.polytope, f.polytope);
        assert_eq!(back.lattice.basis(), f.lattice.basis());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_polytope_file("v 0,0,0\n\nv 1.5, 0, 0\n").unwrap_err();
        assert!(matches!(e, PolyFileError::Syntax { line: 3, .. }), "{e}");
        let e = parse_polytope_file("v 0,0\n").unwrap_err();
        assert!(matches!(e, PolyFileError::Syntax { line: 1, .. }));
        let e = parse_polytope_file("v 0,0,0\nvertex 1,1,1\n").unwrap_err();
        assert!(e.to_string().starts_with("line 2:"));
        assert_eq!(
            parse_polytope_file("# nothing\n").unwrap_err(),
            PolyFileError::NoVertices
        );
        assert_eq!(
            parse_polytope_file("v 0,0,0\nbasis 1,0,0\n").unwrap_err(),
            PolyFileError::BasisCount(1)
        );
    }
}
