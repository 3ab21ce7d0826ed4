//! Exact feasibility LP by the phase-one simplex method with Bland's rule.

use super::geometry::Vec3;
use crate::exactnum::QSqrt2;

/// Whether `A mu = b` has a solution with `mu >= 0`.
pub fn feasible(a: &[Vec<QSqrt2>], b: &[QSqrt2]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let last = width - 1;
    let mut t: Vec<Vec<QSqrt2>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r = vec![QSqrt2::zero(); width];
        for (j, x) in row.iter().enumerate() {
            r[j] = if flip { -x } else { x.clone() };
        }
        r[n + i] = QSqrt2::one();
        r[last] = if flip { -bi } else { bi.clone() };
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the artificial objective; cost[last] = -objective.
    let mut cost = vec![QSqrt2::zero(); width];
    for r in &t {
        for j in (0..n).chain([last]) {
            cost[j] -= &r[j];
        }
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, QSqrt2)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = r[last].checked_div(&r[enter]).expect("positive pivot");
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (pr, _) = leave.expect("bounded phase one");
        let piv = t[pr][enter].inv().expect("nonzero pivot");
        for x in t[pr].iter_mut() {
            *x = &*x * &piv;
        }
        let pivot_row = t[pr].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != pr && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, p) in cost.iter_mut().zip(&pivot_row) {
                *x -= &(&f * p);
            }
        }
        basis[pr] = enter;
    }
    cost[last].is_zero()
}

/// Whether `x` is a convex combination of `points`.
pub fn is_in_convex_hull(x: &Vec3, points: &[Vec3]) -> bool {
    if points.is_empty() {
        return false;
    }
    let mut a: Vec<Vec<QSqrt2>> = (0..3).map(|k| points.iter().map(|p| p[k].clone()).collect()).collect();
    a.push(vec![QSqrt2::one(); points.len()]);
    let b = vec![x[0].clone(), x[1].clone(), x[2].clone(), QSqrt2::one()];
    feasible(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> QSqrt2 {
        QSqrt2::from_int(a)
    }

    #[test]
    fn simple_systems() {
        // x + y = 1, x - y = 3 -> x = 2, y = -1: infeasible with y >= 0.
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert!(!feasible(&a, &[q(1), q(3)]));
        assert!(feasible(&a, &[q(3), q(1)]));
        // Negative right-hand side.
        assert!(feasible(&[vec![q(-1), q(2)]], &[q(-5)]));
        assert!(!feasible(&[vec![q(1), q(2)]], &[q(-5)]));
    }

    #[test]
    fn hull_membership() {
        let pts: Vec<Vec3> = vec![
            [q(0), q(0), q(0)],
            [q(2), q(0), q(0)],
            [q(0), q(2), q(0)],
            [q(0), q(0), q(2)],
        ];
        assert!(is_in_convex_hull(&[q(0), q(1), q(1)], &pts));
        assert!(!is_in_convex_hull(&[q(1), q(1), q(1)], &pts));
        let inside = [QSqrt2::frac(0, 1, 2), QSqrt2::frac(0, 1, 2), QSqrt2::frac(1, 0, 3)];
        assert!(is_in_convex_hull(&inside, &pts));
        let outside = [QSqrt2::ints(0, 1), QSqrt2::ints(0, 1), QSqrt2::zero()];
        assert!(!is_in_convex_hull(&outside, &pts));
    }
}
