use num_traits::ToPrimitive;
use serde::Serialize;

use super::geometry::{vec3, AffineLattice, Functional, Polytope, Vec3, MAX_BOX};
use super::WidthError;
use crate::exactlinalg::QMatrix;
use crate::exactnum::QSqrt2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthResult {
    pub width: QSqrt2,
    /// Attaining functionals, one of each pair `f, -f`.
    pub minimizers: Vec<Functional>,
    /// Coordinates of each minimizer in the dual basis; the first nonzero
    /// coordinate is positive.
    pub coords: Vec<[i64; 3]>,
}

pub fn width_in_direction(k: &Polytope, f: &Functional) -> QSqrt2 {
    let values: Vec<QSqrt2> = k.vertices().iter().map(|v| f.apply(v)).collect();
    let max = values.iter().max().expect("nonempty");
    let min = values.iter().min().expect("nonempty");
    max - min
}

/// Dual basis `d_j` with `b_i . d_j = delta_ij`: the columns of the inverse
/// of the matrix whose rows are the lattice basis vectors.
pub fn dual_lattice(lattice: &AffineLattice) -> Result<[Functional; 3], WidthError> {
    let inv = lattice
        .basis_matrix()
        .inverse()
        .map_err(|_| WidthError::SingularBasis)?;
    Ok(std::array::from_fn(|j| Functional(vec3(inv.col(j)))))
}

fn combine(dual: &[Functional; 3], c: &[i64; 3]) -> Functional {
    let mut out = [QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()];
    for (d, &ck) in dual.iter().zip(c) {
        if ck != 0 {
            let ck = QSqrt2::from_int(ck);
            for (o, x) in out.iter_mut().zip(&d.0) {
                *o += &(x * &ck);
            }
        }
    }
    Functional(out)
}

/// LLL reduction (delta = 3/4) of three row vectors in floating point.
/// Returns the unimodular `u` with `reduced = u * rows`; only `u` is used,
/// so rounding here can cost speed but never exactness.
fn lll3(rows: [[f64; 3]; 3]) -> [[i64; 3]; 3] {
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let mut b = rows;
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let gso = |b: &[[f64; 3]; 3]| {
        let mut bs = *b;
        let mut mu = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / dot(&bs[j], &bs[j]);
                for t in 0..3 {
                    bs[i][t] -= mu[i][j] * bs[j][t];
                }
            }
        }
        (bs, mu)
    };
    let mut k = 1;
    let mut steps = 0;
    while k < 3 && steps < 1000 {
        steps += 1;
        for j in (0..k).rev() {
            let (_, mu) = gso(&b);
            let r = mu[k][j].round();
            if r != 0.0 && r.is_finite() && r.abs() < 1e15 {
                for t in 0..3 {
                    b[k][t] -= r * b[j][t];
                    u[k][t] -= r as i64 * u[j][t];
                }
            }
        }
        let (bs, mu) = gso(&b);
        if dot(&bs[k], &bs[k]) >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) * dot(&bs[k - 1], &bs[k - 1]) {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    u
}

fn det3(u: &[[i64; 3]; 3]) -> i128 {
    let m = |i: usize, j: usize| u[i][j] as i128;
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Exact lattice width with every attaining dual-lattice functional.
///
/// The lattice basis is first reduced relative to the body, then the
/// attaining functionals are enumerated in the reduced dual basis and
/// reported in the dual basis of `lattice`.
pub fn lattice_width(k: &Polytope, lattice: &AffineLattice) -> Result<WidthResult, WidthError> {
    let edges = k.spanning_edges().ok_or(WidthError::Degenerate)?;
    let e = QMatrix::from_rows(edges.iter().map(|v| v.to_vec()).collect()).expect("3x3");
    let e_inv = e.inverse().map_err(|_| WidthError::Degenerate)?;
    let alpha = lattice.basis_matrix().mul(&e_inv).expect("3x3");
    let rows: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| alpha.get(i, j).to_f64()));
    let mut u = lll3(rows);
    if det3(&u).abs() != 1 {
        u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    }
    let basis = lattice.basis();
    let reduced_basis: [Vec3; 3] = std::array::from_fn(|i| {
        let mut out = [QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()];
        for (b, &c) in basis.iter().zip(&u[i]) {
            let c = QSqrt2::from_int(c);
            for (o, x) in out.iter_mut().zip(b) {
                *o += &(x * &c);
            }
        }
        out
    });
    let reduced = AffineLattice::new(lattice.origin().clone(), reduced_basis)?;
    let (width, reduced_coords) = enumerate_width(k, &reduced, &edges)?;

    // Back to the dual basis of `lattice`: c_k = f . b_k.
    let dual = dual_lattice(lattice)?;
    let rdual = dual_lattice(&reduced)?;
    let mut coords: Vec<[i64; 3]> = reduced_coords
        .iter()
        .map(|c| {
            let f = combine(&rdual, c);
            let mut out: [i64; 3] =
                std::array::from_fn(|kk| f.apply(&basis[kk]).floor().to_i64().expect("integral coordinate"));
            if out.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                out = out.map(|x| -x);
            }
            out
        })
        .collect();
    coords.sort();
    let minimizers = coords.iter().map(|c| combine(&dual, c)).collect();
    Ok(WidthResult {
        width,
        minimizers,
        coords,
    })
}

/// A functional `f = sum c_k d_k` has `c_k = f . b_k`. Writing each basis
/// vector in terms of three independent edge vectors `E_i` of the body,
/// `b_k = sum_i alpha_ki E_i`, any `f` of width at most `w` satisfies
/// `|c_k| <= w * sum_i |alpha_ki|`, which bounds the search box.
fn enumerate_width(
    k: &Polytope,
    lattice: &AffineLattice,
    edges: &[Vec3; 3],
) -> Result<(QSqrt2, Vec<[i64; 3]>), WidthError> {
    let dual = dual_lattice(lattice)?;
    let w0 = dual.iter().map(|d| width_in_direction(k, d)).min().expect("three");

    let e = QMatrix::from_rows(edges.iter().map(|v| v.to_vec()).collect()).expect("3x3");
    let e_inv = e.inverse().map_err(|_| WidthError::Degenerate)?;
    let alpha = lattice.basis_matrix().mul(&e_inv).expect("3x3");
    let bounds: [i64; 3] = std::array::from_fn(|kk| {
        let s = (0..3).fold(QSqrt2::zero(), |acc, i| &acc + &alpha.get(kk, i).abs());
        (&w0 * &s).floor().to_i64().expect("box bound")
    });
    let size: u128 = bounds.iter().map(|b| (2 * b + 1) as u128).product();
    if size > MAX_BOX {
        return Err(WidthError::BoxTooLarge(size));
    }

    // Values of the dual basis at the vertices, so f(v) = sum c_k g_k(v).
    let verts = k.vertices();
    let g: Vec<[QSqrt2; 3]> = verts
        .iter()
        .map(|v| std::array::from_fn(|kk| dual[kk].apply(v)))
        .collect();
    let mut best: Option<QSqrt2> = None;
    let mut coords: Vec<[i64; 3]> = Vec::new();
    for c0 in 0..=bounds[0] {
        for c1 in -bounds[1]..=bounds[1] {
            for c2 in -bounds[2]..=bounds[2] {
                let c = [c0, c1, c2];
                let first = c.iter().find(|&&x| x != 0);
                if first.is_none_or(|&x| x < 0) {
                    continue;
                }
                let cq = c.map(QSqrt2::from_int);
                let values = g
                    .iter()
                    .map(|gv| &(&(&gv[0] * &cq[0]) + &(&gv[1] * &cq[1])) + &(&gv[2] * &cq[2]));
                let (mut lo, mut hi) = (None::<QSqrt2>, None::<QSqrt2>);
                for v in values {
                    if lo.as_ref().is_none_or(|l| v < *l) {
                        lo = Some(v.clone());
                    }
                    if hi.as_ref().is_none_or(|h| v > *h) {
                        hi = Some(v);
                    }
                }
                let w = &hi.expect("vertex") - &lo.expect("vertex");
                match best.as_ref().map(|b| w.cmp(b)) {
                    None | Some(std::cmp::Ordering::Less) => {
                        best = Some(w);
                        coords = vec![c];
                    }
                    Some(std::cmp::Ordering::Equal) => coords.push(c),
                    Some(std::cmp::Ordering::Greater) => {}
                }
            }
        }
    }
    Ok((best.expect("the dual basis lies in the box"), coords))
}
