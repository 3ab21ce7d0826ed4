//! Independent oracles shared by the property suite and the acceptance run.
#![allow(dead_code)]

use hollowcert::deltacert::{build_delta_model, build_h_polys, DeltaModel, PerturbationRing};
use hollowcert::exactlinalg::{PolyMatrix, QMatrix};
use hollowcert::exactnum::{QSqrt2, RatInterval, Rational};
use hollowcert::mvpoly::{cauchy_companion, positive_root_lower_bound, Monomial, MvPoly};
use hollowcert::widthlab::{hollow_check, lattice_width, AffineLattice, Hollowness, Polytope, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use hollowcert::deltacert::NVARS;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_q(rng: &mut impl Rng, num: i64, den: i64) -> QSqrt2 {
    let d = rng.gen_range(1..=den);
    QSqrt2::frac(rng.gen_range(-num..=num), rng.gen_range(-num..=num), d)
}

pub fn rand_rat(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Random polynomial with a nonzero constant term.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_deg: u8, terms: usize) -> MvPoly {
    let mut p = MvPoly::zero(nvars);
    let c = loop {
        let c = rand_q(rng, 9, 4);
        if !c.is_zero() {
            break c;
        }
    };
    p.add_term(Monomial::from_exponents(&vec![0; nvars]), &c);
    for _ in 0..terms {
        let mut e = vec![0u8; nvars];
        let deg = rng.gen_range(1..=max_deg);
        for _ in 0..deg {
            e[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(Monomial::from_exponents(&e), &rand_q(rng, 9, 4));
    }
    p
}

/// Checks that `f` keeps the sign of its constant term on `npoints` points of
/// the open max-norm ball given by the root bound, including its corners.
pub fn root_bound_sound_on(f: &MvPoly, npoints: usize, rng: &mut impl Rng) -> Result<(), String> {
    let f0 = cauchy_companion(f).map_err(|e| e.to_string())?;
    let r = positive_root_lower_bound(&f0, &Rational::new(1, 1_000_000)).map_err(|e| e.to_string())?;
    if r.signum() <= 0 {
        return Err(format!("non-positive radius {r}"));
    }
    let sign = f.constant_term().signum();
    // Just inside the boundary: r (1 - 10^-9).
    let edge = &r * &(&Rational::one() - &Rational::pow10_neg(9));
    for k in 0..npoints {
        let point: Vec<QSqrt2> = (0..f.nvars())
            .map(|_| {
                let x = if k % 4 == 0 {
                    if rng.gen_bool(0.5) {
                        edge.clone()
                    } else {
                        -&edge
                    }
                } else {
                    &r * &Rational::new(rng.gen_range(-999_999..=999_999), 1_000_000)
                };
                QSqrt2::from_rational(x)
            })
            .collect();
        if f.eval(&point).signum() != sign {
            return Err(format!("sign change at {point:?} within radius {r}"));
        }
    }
    Ok(())
}

/// Random full-dimensional rational tetrahedron with vertices in a box,
/// with volume bounded below so that width minimizers stay small.
pub fn random_tetrahedron(rng: &mut impl Rng) -> Polytope {
    loop {
        let verts: Vec<Vec3> = (0..4)
            .map(|_| std::array::from_fn(|_| QSqrt2::from_rational(rand_rat(rng, 12, 3))))
            .collect();
        let edges: Vec<Vec<QSqrt2>> = (1..4)
            .map(|i| (0..3).map(|k| &verts[i][k] - &verts[0][k]).collect())
            .collect();
        let det = QMatrix::from_rows(edges).unwrap().det().unwrap().abs();
        if det >= QSqrt2::from_int(6) {
            return Polytope::new(verts).unwrap();
        }
    }
}

/// Brute-force lattice width over integer functionals with sup-norm at most
/// `bound` (standard lattice), computed in integer arithmetic after clearing
/// denominators. Returns the width and the minimizers with positive first
/// nonzero coordinate.
pub fn brute_width(k: &Polytope, bound: i64) -> (Rational, Vec<[i64; 3]>) {
    let mut denom = num_bigint::BigInt::from(1);
    for v in k.vertices() {
        for x in v {
            assert!(x.irr.is_zero(), "rational vertices only");
            denom = num_integer::Integer::lcm(&denom, x.rat.denom());
        }
    }
    let scaled: Vec<[i128; 3]> = k
        .vertices()
        .iter()
        .map(|v| {
            std::array::from_fn(|i| {
                let n = v[i].rat.numer() * (&denom / v[i].rat.denom());
                i128::try_from(n).unwrap()
            })
        })
        .collect();
    let mut best: Option<i128> = None;
    let mut arg = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let f = [a, b, c];
                let first = f.iter().find(|x| **x != 0);
                if first.is_none_or(|x| *x < 0) {
                    continue;
                }
                let vals = scaled
                    .iter()
                    .map(|v| v[0] * a as i128 + v[1] * b as i128 + v[2] * c as i128);
                let (lo, hi) = vals.fold((i128::MAX, i128::MIN), |(l, h), x| (l.min(x), h.max(x)));
                let w = hi - lo;
                match best {
                    Some(bw) if w > bw => {}
                    Some(bw) if w == bw => arg.push(f),
                    _ => {
                        best = Some(w);
                        arg = vec![f];
                    }
                }
            }
        }
    }
    let w = Rational::from_bigs(num_bigint::BigInt::from(best.unwrap()), denom).unwrap();
    arg.sort();
    (w, arg)
}

/// Compares `lattice_width` with the brute-force oracle on one tetrahedron.
pub fn width_matches_oracle(k: &Polytope) -> Result<(), String> {
    let got = lattice_width(k, &AffineLattice::standard()).map_err(|e| e.to_string())?;
    let (w, arg) = brute_width(k, 20);
    let mut coords = got.coords.clone();
    coords.sort();
    if got.width != QSqrt2::from_rational(w.clone()) || coords != arg {
        return Err(format!(
            "width {} vs oracle {w}; minimizers {coords:?} vs {arg:?}",
            got.width
        ));
    }
    Ok(())
}

/// Hollowness by enumerating every integer point in the bounding box and
/// testing strict interiority with exact barycentric coordinates.
pub fn brute_hollow(k: &Polytope) -> bool {
    let v = k.vertices();
    let lo: Vec<i64> = (0..3)
        .map(|i| v.iter().map(|p| p[i].floor()).min().unwrap().try_into().unwrap())
        .collect();
    let hi: Vec<i64> = (0..3)
        .map(|i| v.iter().map(|p| p[i].ceil()).max().unwrap().try_into().unwrap())
        .collect();
    let rows: Vec<Vec<QSqrt2>> = (1..4).map(|j| (0..3).map(|i| &v[j][i] - &v[0][i]).collect()).collect();
    let inv = QMatrix::from_rows(rows).unwrap().transpose().inverse().unwrap();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let d: Vec<QSqrt2> = [x, y, z]
                    .iter()
                    .zip(&v[0])
                    .map(|(c, o)| &QSqrt2::from_int(*c) - o)
                    .collect();
                let b = inv.mul_vec(&d).unwrap();
                let b0 = b.iter().fold(QSqrt2::one(), |acc, t| &acc - t);
                if b0.is_positive() && b.iter().all(QSqrt2::is_positive) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn hollow_matches_oracle(k: &Polytope) -> Result<(), String> {
    let got = hollow_check(k, &AffineLattice::standard()).map_err(|e| e.to_string())? == Hollowness::Hollow;
    if got != brute_hollow(k) {
        return Err(format!("hollow_check says {got} for {:?}", k.vertices()));
    }
    Ok(())
}

pub fn delta() -> (DeltaModel, PerturbationRing) {
    let m = build_delta_model().unwrap();
    let r = PerturbationRing::new(&m).unwrap();
    (m, r)
}

/// `M M^# = det M I` as a polynomial identity, plus at random points.
pub fn adjugate_identity(m: &PolyMatrix, rng: &mut impl Rng, npoints: usize) -> Result<(), String> {
    let adj = m.adjugate_poly().map_err(|e| e.to_string())?;
    let det = m.det_poly().map_err(|e| e.to_string())?;
    let prod = m.mul(&adj).map_err(|e| e.to_string())?;
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { det.clone() } else { MvPoly::zero(m.nvars()) };
            if *prod.get(i, j) != want {
                return Err(format!("entry ({i}, {j}) of M M^#"));
            }
        }
    }
    for _ in 0..npoints {
        let t: Vec<QSqrt2> = (0..m.nvars()).map(|_| rand_q(rng, 5, 40)).collect();
        let mt = m.eval(&t);
        let at = adj.eval(&t);
        let d = mt.det().map_err(|e| e.to_string())?;
        if mt.mul(&at).unwrap() != QMatrix::identity(n).scale(&d) || det.eval(&t) != d {
            return Err(format!("adjugate identity fails at {t:?}"));
        }
    }
    Ok(())
}

/// `h_i(t) = det M(t) (v_i M(t)^{-1} u_i - (2 + sqrt2))` at random points.
pub fn h_identity(npoints: usize, rng: &mut impl Rng) -> Result<(), String> {
    let (model, ring) = delta();
    let hs = build_h_polys(&ring, &model).map_err(|e| e.to_string())?;
    let w = QSqrt2::ints(2, 1);
    for _ in 0..npoints {
        let t: Vec<QSqrt2> = (0..NVARS)
            .map(|_| QSqrt2::from_rational(rand_rat(rng, 10, 97)))
            .collect();
        let m = ring.m.eval(&t);
        let d = m.det().unwrap();
        let inv = m.inverse().map_err(|e| e.to_string())?;
        for i in 0..6 {
            let u: Vec<QSqrt2> = model.u[i].iter().map(|&x| QSqrt2::from_int(x)).collect();
            let mu = inv.mul_vec(&u).unwrap();
            let f = hollowcert::exactlinalg::dot(&model.v[i], &mu);
            if hs[i].eval(&t) != &d * &(&f - &w) {
                return Err(format!("h_{} identity fails at {t:?}", i + 1));
            }
        }
    }
    Ok(())
}

/// Interval operations enclose the exact result of the same operation on
/// any contained points.
pub fn interval_enclosure(rng: &mut impl Rng, trials: usize) -> Result<(), String> {
    let iv = |rng: &mut ChaCha8Rng| {
        let a = rand_rat(rng, 50, 7);
        let b = &a + &Rational::new(rng.gen_range(0..20), rng.gen_range(1..9));
        let t = Rational::new(rng.gen_range(0..=10), 10);
        let x = &a + &(&t * &(&b - &a));
        (RatInterval::new(a, b).unwrap(), x)
    };
    let mut r = ChaCha8Rng::seed_from_u64(rng.gen());
    for _ in 0..trials {
        let (i, x) = iv(&mut r);
        let (j, y) = iv(&mut r);
        let checks = [
            ("add", i.add(&j), &x + &y),
            ("sub", i.sub(&j), &x - &y),
            ("mul", i.mul(&j), &x * &y),
            ("neg", i.neg(), -&x),
            ("pow3", i.powi(3), x.pow(3)),
        ];
        for (name, enc, val) in checks {
            if !enc.contains(&val) {
                return Err(format!("{name}: {val} not in {enc}"));
            }
        }
        if !j.contains_zero() && !i.div(&j).unwrap().contains(&(&x / &y)) {
            return Err("div".into());
        }
        if x.signum() >= 0 && i.lo().signum() >= 0 {
            let s = i.sqrt(64).unwrap();
            if s.lo().square() > x || s.hi().square() < x {
                return Err("sqrt".into());
            }
        }
    }
    Ok(())
}

/// Field axioms of Q(sqrt2) on random elements.
pub fn field_axioms(rng: &mut impl Rng, trials: usize) -> Result<(), String> {
    for _ in 0..trials {
        let a = rand_q(rng, 30, 12);
        let b = rand_q(rng, 30, 12);
        let c = rand_q(rng, 30, 12);
        let ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a + &b == &b + &a
            && &a * &b == &b * &a
            && &a + &(-&a) == QSqrt2::zero()
            && (a.is_zero() || &a * &a.inv().unwrap() == QSqrt2::one())
            && ((&a * &b).signum() == a.signum() * b.signum())
            && (a <= b) == ((&b - &a).signum() >= 0);
        if !ok {
            return Err(format!("axiom fails for {a}, {b}, {c}"));
        }
    }
    Ok(())
}
