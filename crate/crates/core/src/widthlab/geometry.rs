use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::lp::is_in_convex_hull;
use super::WidthError;
use crate::exactlinalg::QMatrix;
use crate::exactnum::QSqrt2;

pub type Vec3 = [QSqrt2; 3];

/// Upper limit on enumerated lattice points.
pub(crate) const MAX_BOX: u128 = 50_000_000;

pub(crate) fn sub3(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub(crate) fn dot3(a: &Vec3, b: &Vec3) -> QSqrt2 {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub(crate) fn vec3(v: Vec<QSqrt2>) -> Vec3 {
    v.try_into().expect("three coordinates")
}

pub fn fmt_vec3(v: &Vec3) -> String {
    format!("({}, {}, {})", v[0], v[1], v[2])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    vertices: Vec<Vec3>,
}

impl Polytope {
    pub fn new(vertices: Vec<Vec3>) -> Result<Self, WidthError> {
        if vertices.is_empty() {
            return Err(WidthError::Empty);
        }
        for i in 1..vertices.len() {
            if vertices[..i].contains(&vertices[i]) {
                return Err(WidthError::DuplicateVertex(i));
            }
        }
        Ok(Polytope { vertices })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn translate(&self, t: &Vec3) -> Polytope {
        let vertices = self
            .vertices
            .iter()
            .map(|v| [&v[0] + &t[0], &v[1] + &t[1], &v[2] + &t[2]])
            .collect();
        Polytope { vertices }
    }

    /// Three affinely independent edge vectors from the first vertex, if any.
    pub(crate) fn spanning_edges(&self) -> Option<[Vec3; 3]> {
        let v0 = &self.vertices[0];
        let mut chosen: Vec<Vec<QSqrt2>> = Vec::new();
        for v in &self.vertices[1..] {
            let e = sub3(v, v0).to_vec();
            let mut trial = chosen.clone();
            trial.push(e);
            if QMatrix::from_rows(trial.clone()).expect("rect").rank() == trial.len() {
                chosen = trial;
                if chosen.len() == 3 {
                    let [a, b, c]: [Vec<QSqrt2>; 3] = chosen.try_into().expect("three");
                    return Some([vec3(a), vec3(b), vec3(c)]);
                }
            }
        }
        None
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.spanning_edges().is_some()
    }
}

/// `origin + Z b1 + Z b2 + Z b3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    origin: Vec3,
    basis: [Vec3; 3],
}

impl AffineLattice {
    pub fn new(origin: Vec3, basis: [Vec3; 3]) -> Result<Self, WidthError> {
        let lat = AffineLattice { origin, basis };
        if lat.basis_matrix().det().expect("square").is_zero() {
            return Err(WidthError::SingularBasis);
        }
        Ok(lat)
    }

    pub fn standard() -> Self {
        let e = |i: usize| -> Vec3 {
            let mut v = [QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()];
            v[i] = QSqrt2::one();
            v
        };
        AffineLattice {
            origin: [QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()],
            basis: [e(0), e(1), e(2)],
        }
    }

    pub fn origin(&self) -> &Vec3 {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec3; 3] {
        &self.basis
    }

    /// Basis vectors as rows.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.basis.iter().map(|b| b.to_vec()).collect()).expect("3x3")
    }

    pub fn point(&self, coords: &[i64; 3]) -> Vec3 {
        let mut p = self.origin.clone();
        for (b, &c) in self.basis.iter().zip(coords) {
            let c = QSqrt2::from_int(c);
            for (pi, bi) in p.iter_mut().zip(b) {
                *pi += &(bi * &c);
            }
        }
        p
    }
}

/// Linear functional `x -> coeffs . x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Functional(pub Vec3);

impl Functional {
    pub fn apply(&self, x: &Vec3) -> QSqrt2 {
        dot3(&self.0, x)
    }

    pub fn neg(&self) -> Functional {
        Functional([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

/// Affine functional `x -> normal . x + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFunctional {
    pub normal: Vec3,
    pub offset: QSqrt2,
}

impl AffineFunctional {
    pub fn eval(&self, x: &Vec3) -> QSqrt2 {
        &dot3(&self.normal, x) + &self.offset
    }
}

fn simplex_vertices(k: &Polytope) -> Result<&[Vec3], WidthError> {
    if k.vertices.len() != 4 {
        return Err(WidthError::NotSimplex);
    }
    Ok(&k.vertices)
}

/// Barycentric coordinate functionals of a simplex: entry `i` vanishes on
/// the facet opposite vertex `i` and equals 1 at vertex `i`.
pub fn facet_hyperplanes(k: &Polytope) -> Result<[AffineFunctional; 4], WidthError> {
    let v = simplex_vertices(k)?;
    // Columns (v_i, 1); the rows of the inverse are the barycentric forms.
    let rows: Vec<Vec<QSqrt2>> = (0..4)
        .map(|r| {
            (0..4)
                .map(|i| if r < 3 { v[i][r].clone() } else { QSqrt2::one() })
                .collect()
        })
        .collect();
    let inv = QMatrix::from_rows(rows)
        .expect("4x4")
        .inverse()
        .map_err(|_| WidthError::Degenerate)?;
    Ok(std::array::from_fn(|i| AffineFunctional {
        normal: [inv.get(i, 0).clone(), inv.get(i, 1).clone(), inv.get(i, 2).clone()],
        offset: inv.get(i, 3).clone(),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hollowness {
    Hollow,
    /// A lattice point in the interior, with its lattice coordinates.
    Witness {
        point: Vec3,
        coords: [i64; 3],
    },
}

fn to_i64(b: BigInt) -> i64 {
    b.to_i64().expect("coordinate range")
}

/// Integer box `[lo_k, hi_k]` containing the lattice coordinates of every
/// point of `conv(points)`.
pub(crate) fn lattice_box(points: &[Vec3], lattice: &AffineLattice) -> Result<[(i64, i64); 3], WidthError> {
    let dual = super::width::dual_lattice(lattice)?;
    let coords: Vec<Vec<QSqrt2>> = points
        .iter()
        .map(|p| dual.iter().map(|d| d.apply(&sub3(p, &lattice.origin))).collect())
        .collect();
    let bounds: [(i64, i64); 3] = std::array::from_fn(|k| {
        let lo = coords.iter().map(|c| c[k].clone()).min().expect("nonempty");
        let hi = coords.iter().map(|c| c[k].clone()).max().expect("nonempty");
        (to_i64(lo.floor()), to_i64(hi.ceil()))
    });
    let size: u128 = bounds.iter().map(|(lo, hi)| (hi - lo + 1) as u128).product();
    if size > MAX_BOX {
        return Err(WidthError::BoxTooLarge(size));
    }
    Ok(bounds)
}

/// Searches the lattice points of the bounding box of a simplex for one in
/// its interior.
pub fn hollow_check(k: &Polytope, lattice: &AffineLattice) -> Result<Hollowness, WidthError> {
    let facets = facet_hyperplanes(k)?;
    let b = lattice_box(k.vertices(), lattice)?;
    for y0 in b[0].0..=b[0].1 {
        for y1 in b[1].0..=b[1].1 {
            for y2 in b[2].0..=b[2].1 {
                let coords = [y0, y1, y2];
                let x = lattice.point(&coords);
                if facets.iter().all(|f| f.eval(&x).is_positive()) {
                    return Ok(Hollowness::Witness { point: x, coords });
                }
            }
        }
    }
    Ok(Hollowness::Hollow)
}

/// Vertices of `K - K`, in the order the differences `v_i - v_j` are first
/// generated.
pub fn difference_body_vertices(k: &Polytope) -> Vec<Vec3> {
    let v = k.vertices();
    let mut candidates: Vec<Vec3> = Vec::new();
    for (i, a) in v.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            if i != j {
                let d = sub3(a, b);
                if !candidates.contains(&d) {
                    candidates.push(d);
                }
            }
        }
    }
    if candidates.is_empty() {
        return vec![[QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()]];
    }
    (0..candidates.len())
        .filter(|&i| {
            let others: Vec<Vec3> = candidates
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c.clone())
                .collect();
            !is_in_convex_hull(&candidates[i], &others)
        })
        .map(|i| candidates[i].clone())
        .collect()
}
