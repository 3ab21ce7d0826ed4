use serde::Serialize;

use super::model::{build_delta_model, DeltaModel, PerturbationRing, NVARS};
use super::CertError;
use crate::exactlinalg::QMatrix;
use crate::exactnum::QSqrt2;
use crate::mvpoly::MvPoly;
use crate::widthlab::{facet_hyperplanes, Vec3};

/// Symmetry-adapted coordinates `s = T t`, one pair `(s^h_j, s^v_j)` per
/// facet point.
#[derive(Clone, Debug)]
pub struct SCoords {
    pub t_to_s: QMatrix,
    pub s_to_t: QMatrix,
}

/// The 2x2 blocks of `4 T`, each as `[[a, b], [c, d]]` with entries `x + y sqrt2`.
const BLOCKS: [[[(i64, i64); 2]; 2]; 4] = [
    [[(-1, 1), (-1, 0)], [(-1, 0), (1, -1)]],
    [[(1, 0), (-1, 1)], [(-1, 1), (-1, 0)]],
    [[(1, -1), (1, 0)], [(1, 0), (-1, 1)]],
    [[(-1, 0), (1, -1)], [(1, -1), (1, 0)]],
];

impl SCoords {
    pub fn new() -> Self {
        let mut t = QMatrix::zeros(NVARS, NVARS);
        for (j, block) in BLOCKS.iter().enumerate() {
            for r in 0..2 {
                for c in 0..2 {
                    let (x, y) = block[r][c];
                    t.set(2 * j + r, 2 * j + c, QSqrt2::frac(x, y, 4));
                }
            }
        }
        let s_to_t = t.inverse().expect("invertible change of variables");
        SCoords { t_to_s: t, s_to_t }
    }

    /// Rewrites a polynomial in `t` as a polynomial in `s`.
    pub fn to_s(&self, p: &MvPoly) -> MvPoly {
        p.substitute_linear(&self.s_to_t, &vec![QSqrt2::zero(); NVARS])
            .expect("8 variables")
    }

    pub fn from_s(&self, p: &MvPoly) -> MvPoly {
        p.substitute_linear(&self.t_to_s, &vec![QSqrt2::zero(); NVARS])
            .expect("8 variables")
    }

    pub fn point_to_s(&self, t: &[QSqrt2]) -> Vec<QSqrt2> {
        self.t_to_s.mul_vec(t).expect("8 coordinates")
    }

    /// `(s^h_j, s^v_j)` of a pair of Cartesian coordinates in facet `j`.
    pub fn pair(&self, j: usize, x: &QSqrt2, y: &QSqrt2) -> (QSqrt2, QSqrt2) {
        let g = |r: usize| &(self.t_to_s.get(2 * j + r, 2 * j) * x) + &(self.t_to_s.get(2 * j + r, 2 * j + 1) * y);
        (g(0), g(1))
    }
}

impl Default for SCoords {
    fn default() -> Self {
        SCoords::new()
    }
}

/// `(x, y, z) -> (y, -x, -z)`.
fn rotary(v: &Vec3) -> Vec3 {
    [v[1].clone(), -&v[0], -&v[2]]
}

fn rotary_inverse(v: &Vec3) -> Vec3 {
    [-&v[1], v[0].clone(), -&v[2]]
}

/// The rotary reflection acting on the perturbation variables:
/// `(t_i1, t_i2) -> (t_{i+1,2}, -t_{i+1,1})`.
pub fn t_symmetry() -> QMatrix {
    let mut p = QMatrix::zeros(NVARS, NVARS);
    for i in 0..4 {
        let next = (i + 1) % 4;
        p.set(2 * i, 2 * next + 1, QSqrt2::one());
        p.set(2 * i + 1, 2 * next, QSqrt2::from_int(-1));
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    /// `(y, -x, -z)` sends `a_{i+1} -> a_i` and `p_{i+1} -> p_i`.
    pub forward_sends_next_to_previous: bool,
    /// Its inverse `(-y, x, -z)` sends `a_i -> a_{i+1}` and `p_i -> p_{i+1}`.
    pub inverse_sends_to_next: bool,
    /// The induced map on `t` respects the facet-plane elimination.
    pub t_map_consistent: bool,
    /// Offset `k` with `s'_m = s_{m+k}` for the induced map on `s`, if it is
    /// a cyclic shift.
    pub s_shift: Option<i64>,
    /// The linear parts `l_i(s)` are permuted by the shift.
    pub linear_parts_permuted: bool,
    /// s-coordinates of `p_1`.
    pub p1_s: (QSqrt2, QSqrt2),
    /// `s^v_1 = b_3` and `s^h_1 = b_4 - b_2` on the facet plane of `p_1`.
    pub barycentric_identity: bool,
    pub verdict: bool,
}

fn shift_offset(q: &QMatrix) -> Option<i64> {
    [2i64, -2].into_iter().find(|&k| {
        (0..NVARS).all(|m| {
            (0..NVARS).all(|n| {
                let target = (m as i64 + k).rem_euclid(NVARS as i64) as usize;
                *q.get(m, n) == if n == target { QSqrt2::one() } else { QSqrt2::zero() }
            })
        })
    })
}

pub fn symmetry_check() -> Result<SymmetryReport, CertError> {
    let model = build_delta_model()?;
    let ring = PerturbationRing::new(&model)?;
    let sc = SCoords::new();
    symmetry_check_with(&model, &ring, &sc, None)
}

pub(crate) fn symmetry_check_with(
    model: &DeltaModel,
    ring: &PerturbationRing,
    sc: &SCoords,
    linear_s: Option<&[MvPoly]>,
) -> Result<SymmetryReport, CertError> {
    let next = |i: usize| (i + 1) % 4;
    let forward_sends_next_to_previous =
        (0..4).all(|i| rotary(&model.a[next(i)]) == model.a[i] && rotary(&model.p[next(i)]) == model.p[i]);
    let inverse_sends_to_next = (0..4)
        .all(|i| rotary_inverse(&model.a[i]) == model.a[next(i)] && rotary_inverse(&model.p[i]) == model.p[next(i)]);

    // Transporting p_{i+1}(t) by the map lands on p_i(t') with t' = P t; the
    // third displacement coordinate must agree with the elimination at t'.
    let p = t_symmetry();
    let zero = vec![QSqrt2::zero(); NVARS];
    let mut t_map_consistent = true;
    for i in 0..4 {
        let moved = &ring.displacement[next(i)];
        let image = [moved[1].clone(), -&moved[0], -&moved[2]];
        let target: Vec<MvPoly> = ring.displacement[i]
            .iter()
            .map(|d| d.substitute_linear(&p, &zero).expect("8 variables"))
            .collect();
        t_map_consistent &= image.iter().zip(&target).all(|(a, b)| a == b);
    }

    let q = sc.t_to_s.mul(&p)?.mul(&sc.s_to_t)?;
    let s_shift = shift_offset(&q);

    let linear_parts_permuted = match linear_s {
        Some(ls) => {
            let moved: Vec<MvPoly> = ls
                .iter()
                .map(|l| l.substitute_linear(&q, &zero).expect("8 variables"))
                .collect();
            moved.iter().all(|m| ls.contains(m))
        }
        None => true,
    };

    let p1_s = sc.pair(0, &model.p[0][0], &model.p[0][1]);
    let facets = facet_hyperplanes(&model.delta)?;
    // Both sides are affine on the facet plane, so checking the three vertices
    // of the facet proves the identity.
    let barycentric_identity = [1usize, 2, 3].iter().all(|&k| {
        let x = &model.a[k];
        let (sh, sv) = sc.pair(0, &x[0], &x[1]);
        sv == facets[2].eval(x) && sh == &facets[3].eval(x) - &facets[1].eval(x)
    }) && p1_s == (QSqrt2::frac(2, -1, 4), QSqrt2::frac(0, 1, 4));

    let verdict = forward_sends_next_to_previous
        && inverse_sends_to_next
        && t_map_consistent
        && s_shift.is_some()
        && linear_parts_permuted
        && barycentric_identity;
    Ok(SymmetryReport {
        forward_sends_next_to_previous,
        inverse_sends_to_next,
        t_map_consistent,
        s_shift,
        linear_parts_permuted,
        p1_s,
        barycentric_identity,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let sc = SCoords::new();
        let p = &(&MvPoly::var(NVARS, 0) * &MvPoly::var(NVARS, 5)) + &MvPoly::var(NVARS, 7).scale(&QSqrt2::sqrt2());
        assert_eq!(sc.from_s(&sc.to_s(&p)), p);
    }

    #[test]
    fn p1_coordinates_and_vertices() {
        let sc = SCoords::new();
        let m = build_delta_model().unwrap();
        assert_eq!(
            sc.pair(0, &m.p[0][0], &m.p[0][1]),
            (QSqrt2::frac(2, -1, 4), QSqrt2::frac(0, 1, 4))
        );
        assert_eq!(
            sc.pair(0, &m.a[1][0], &m.a[1][1]),
            (QSqrt2::from_int(-1), QSqrt2::zero())
        );
        assert_eq!(sc.pair(0, &m.a[2][0], &m.a[2][1]), (QSqrt2::zero(), QSqrt2::one()));
        assert_eq!(sc.pair(0, &m.a[3][0], &m.a[3][1]), (QSqrt2::one(), QSqrt2::zero()));
    }

    #[test]
    fn symmetry_holds() {
        let r = symmetry_check().unwrap();
        assert!(r.verdict, "{r:?}");
        assert!(!r.inverse_sends_to_next || r.forward_sends_next_to_previous);
    }
}
