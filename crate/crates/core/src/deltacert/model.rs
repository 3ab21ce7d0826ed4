use super::CertError;
use crate::exactlinalg::PolyMatrix;
use crate::exactnum::QSqrt2;
use crate::mvpoly::MvPoly;
use crate::widthlab::{
    difference_body_vertices, facet_hyperplanes, hollow_check, lattice_width, AffineLattice, Functional, Hollowness,
    Polytope, Vec3, WidthResult,
};

/// Number of perturbation variables `(t11, t12, t21, t22, t31, t32, t41, t42)`.
pub const NVARS: usize = 8;

fn q(a: i64, b: i64) -> QSqrt2 {
    QSqrt2::ints(a, b)
}

fn v3(x: QSqrt2, y: QSqrt2, z: QSqrt2) -> Vec3 {
    [x, y, z]
}

fn iv(x: i64, y: i64, z: i64) -> Vec3 {
    [QSqrt2::from_int(x), QSqrt2::from_int(y), QSqrt2::from_int(z)]
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

#[derive(Clone, Debug)]
pub struct DeltaModel {
    pub a: [Vec3; 4],
    pub p: [Vec3; 4],
    pub u: [[i64; 3]; 7],
    /// Width-attaining vertices of the difference body for u1..u6.
    pub v: [Vec3; 6],
    pub lambda: [QSqrt2; 6],
    pub delta: Polytope,
    pub lattice: AffineLattice,
    pub width: WidthResult,
    pub hollow: bool,
    /// Barycentric coordinates of `p_i` with respect to the vertices.
    pub p_barycentric: Vec<[QSqrt2; 4]>,
    pub difference_vertices: Vec<Vec3>,
}

/// The seven width-attaining functionals in Cartesian coordinates.
pub fn extremal_functionals() -> [Functional; 7] {
    let quarter =
        |x: i64, y: i64, z: i64| Functional([QSqrt2::frac(x, 0, 4), QSqrt2::frac(y, 0, 4), QSqrt2::frac(z, 0, 4)]);
    let half =
        |x: i64, y: i64, z: i64| Functional([QSqrt2::frac(x, 0, 2), QSqrt2::frac(y, 0, 2), QSqrt2::frac(z, 0, 2)]);
    [
        quarter(1, 1, 1),
        quarter(-1, 1, 1),
        quarter(1, 1, -1),
        quarter(1, -1, 1),
        half(1, 0, 0),
        half(0, 1, 0),
        half(0, 0, 1),
    ]
}

fn raw_model() -> ([Vec3; 4], [Vec3; 4]) {
    let a = [
        v3(q(2, 1), q(0, 1), q(2, 1)),
        v3(q(0, -1), q(2, 1), q(-2, -1)),
        v3(q(-2, -1), q(0, -1), q(2, 1)),
        v3(q(0, 1), q(-2, -1), q(-2, -1)),
    ];
    let p = [iv(-1, -1, -1), iv(1, -1, 1), iv(1, 1, -1), iv(-1, 1, 1)];
    (a, p)
}

/// Builds the tetrahedron, its lattice and all derived constants, checking
/// every structural claim about them along the way.
pub fn build_delta_model() -> Result<DeltaModel, CertError> {
    let (a, p) = raw_model();
    let u = [
        [1, 1, 1],
        [1, 0, 0],
        [0, 0, 1],
        [0, 1, 0],
        [0, 1, 1],
        [1, 0, 1],
        [1, 1, 0],
    ];
    let v = [
        sub(&a[0], &a[3]),
        sub(&a[2], &a[3]),
        sub(&a[1], &a[2]),
        sub(&a[0], &a[1]),
        sub(&a[0], &a[2]),
        sub(&a[1], &a[3]),
    ];
    let r2 = QSqrt2::sqrt2();
    let lambda = [
        QSqrt2::one(),
        QSqrt2::one(),
        QSqrt2::one(),
        QSqrt2::one(),
        r2.clone(),
        r2,
    ];
    let delta = Polytope::new(a.to_vec())?;
    let lattice = AffineLattice::new(p[0].clone(), [sub(&p[3], &p[0]), sub(&p[1], &p[0]), sub(&p[2], &p[0])])?;
    let fail = |msg: &str| Err(CertError::Invariant(msg.to_string()));

    // p_i lies in the relative interior of the facet opposite a_i.
    let facets = facet_hyperplanes(&delta)?;
    let p_barycentric: Vec<[QSqrt2; 4]> = p.iter().map(|pi| std::array::from_fn(|k| facets[k].eval(pi))).collect();
    for (i, b) in p_barycentric.iter().enumerate() {
        if !b[i].is_zero() || b.iter().enumerate().any(|(k, x)| k != i && !x.is_positive()) {
            return fail(&format!("p{} is not interior to its facet", i + 1));
        }
    }

    let hollow = hollow_check(&delta, &lattice)? == Hollowness::Hollow;
    if !hollow {
        return fail("tetrahedron is not hollow");
    }
    let width = lattice_width(&delta, &lattice)?;
    if width.width != QSqrt2::ints(2, 1) {
        return fail("lattice width differs from 2 + sqrt2");
    }
    // Minimizers, in the dual basis, are exactly the u vectors up to sign.
    let mut found: Vec<[i64; 3]> = width.coords.clone();
    let mut expected: Vec<[i64; 3]> = u.to_vec();
    found.sort();
    expected.sort();
    if found != expected {
        return fail("width minimizers differ from the u vectors");
    }
    // ...and the Cartesian functionals are the seven extremal ones.
    let cart = extremal_functionals();
    if width.minimizers.len() != 7
        || !width
            .minimizers
            .iter()
            .all(|f| cart.contains(f) || cart.contains(&f.neg()))
    {
        return fail("width minimizers differ from the extremal functionals");
    }

    let difference_vertices = difference_body_vertices(&delta);
    if difference_vertices.len() != 12 || !v.iter().all(|vi| difference_vertices.contains(vi)) {
        return fail("difference body vertices");
    }
    // v_i is the unique maximizer of the i-th functional over the difference body.
    let dual = crate::widthlab::dual_lattice(&lattice)?;
    for (i, vi) in v.iter().enumerate() {
        let f = functional_of(&dual, &u[i]);
        let best = f.apply(vi);
        if best != width.width || difference_vertices.iter().any(|w| w != vi && f.apply(w) >= best) {
            return fail(&format!("v{} is not the unique width-attaining vertex", i + 1));
        }
    }
    Ok(DeltaModel {
        a,
        p,
        u,
        v,
        lambda,
        delta,
        lattice,
        width,
        hollow,
        p_barycentric,
        difference_vertices,
    })
}

pub(crate) fn functional_of(dual: &[Functional; 3], c: &[i64; 3]) -> Functional {
    let mut out = [QSqrt2::zero(), QSqrt2::zero(), QSqrt2::zero()];
    for (d, &ck) in dual.iter().zip(c) {
        let ck = QSqrt2::from_int(ck);
        for (o, x) in out.iter_mut().zip(&d.0) {
            *o += &(x * &ck);
        }
    }
    Functional(out)
}

/// The perturbed lattice points `p_i(t)` with the third coordinate of each
/// displacement eliminated so that `p_i(t)` stays on its facet plane.
#[derive(Clone, Debug)]
pub struct PerturbationRing {
    /// Displacements `(t_i1, t_i2, t_i3(t))` as polynomials in the 8 variables.
    pub displacement: [[MvPoly; 3]; 4],
    pub m: PolyMatrix,
}

fn elimination() -> [MvPoly; 4] {
    let t = |i: usize| MvPoly::var(NVARS, i);
    let half = |a: i64, b: i64| QSqrt2::frac(a, b, 2);
    // t13 = -((2+r2) t11 + r2 t12)/2, t23 = (-r2 t21 + (2+r2) t22)/2,
    // t33 = ((2+r2) t31 + r2 t32)/2, t43 = (r2 t41 - (2+r2) t42)/2.
    [
        &t(0).scale(&half(-2, -1)) + &t(1).scale(&half(0, -1)),
        &t(2).scale(&half(0, -1)) + &t(3).scale(&half(2, 1)),
        &t(4).scale(&half(2, 1)) + &t(5).scale(&half(0, 1)),
        &t(6).scale(&half(0, 1)) + &t(7).scale(&half(-2, -1)),
    ]
}

impl PerturbationRing {
    pub fn new(model: &DeltaModel) -> Result<Self, CertError> {
        let elim = elimination();
        let displacement: [[MvPoly; 3]; 4] = std::array::from_fn(|i| {
            [
                MvPoly::var(NVARS, 2 * i),
                MvPoly::var(NVARS, 2 * i + 1),
                elim[i].clone(),
            ]
        });
        let point = |i: usize| -> [MvPoly; 3] {
            std::array::from_fn(|k| &MvPoly::constant(NVARS, model.p[i][k].clone()) + &displacement[i][k])
        };
        let pts: Vec<[MvPoly; 3]> = (0..4).map(point).collect();
        // Each p_i(t) stays on the plane of the facet opposite a_i.
        let facets = facet_hyperplanes(&model.delta)?;
        for (i, pt) in pts.iter().enumerate() {
            let f = &facets[i];
            let mut val = MvPoly::constant(NVARS, f.offset.clone());
            for k in 0..3 {
                val = &val + &pt[k].scale(&f.normal[k]);
            }
            if !val.is_zero() {
                return Err(CertError::Invariant(format!("p{}(t) leaves its facet plane", i + 1)));
            }
        }
        let row = |i: usize| -> Vec<MvPoly> { (0..3).map(|k| &pts[i][k] - &pts[0][k]).collect() };
        let m = PolyMatrix::from_rows(vec![row(3), row(1), row(2)])?;
        let zero = vec![QSqrt2::zero(); NVARS];
        if m.eval(&zero) != model.lattice.basis_matrix() {
            return Err(CertError::Invariant("M(0) differs from the lattice basis".into()));
        }
        Ok(PerturbationRing { displacement, m })
    }
}
