//! Multi-modular determinant of a polynomial matrix over Q(sqrt 2).
//!
//! The matrix is scaled by a common denominator so every coefficient lies in
//! Z[sqrt 2]. The same memoized Laplace expansion is then run over
//! Z_p[X]/(X^2 - 2) for enough word-sized primes, with every minor stored as
//! a dense array indexed by monomial rank, and the integer coefficients are
//! recovered by Chinese remaindering against a rigorous a-priori bound.

use std::time::Instant;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{LinalgError, PolyMatrix};
use crate::exactnum::{QSqrt2, Rational};
use crate::mvpoly::{Monomial, MvPoly};

/// Largest dense minor table we are willing to allocate.
const MAX_DENSE: usize = 1 << 26;

#[derive(Clone, Debug, Serialize)]
pub struct ModularReport {
    pub primes: Vec<u64>,
    /// Bits of the bound on |a| + |b| for every scaled coefficient a + b sqrt2.
    pub bound_bits: u64,
    /// Common denominator of the matrix entries.
    pub denominator: String,
    pub terms: usize,
    /// Agreement of the reconstruction with an extra, unused prime.
    pub check_prime_agrees: bool,
    #[serde(skip)]
    pub seconds: f64,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank of a monomial among all monomials of degree <= max_deg in `nvars`
/// variables, ordered by suffix exponent sums.
struct Ranker {
    nvars: usize,
    table: Vec<Vec<usize>>,
    size: usize,
}

impl Ranker {
    fn new(nvars: usize, max_deg: usize) -> Self {
        // table[i][s] = number of monomials in nvars - i variables of degree < s.
        let table = (0..nvars)
            .map(|i| {
                (0..=max_deg)
                    .map(|s| {
                        if s == 0 {
                            0
                        } else {
                            binomial(s - 1 + nvars - i, nvars - i)
                        }
                    })
                    .collect()
            })
            .collect();
        Ranker {
            nvars,
            table,
            size: binomial(max_deg + nvars, nvars),
        }
    }

    #[inline]
    fn rank(&self, packed: u64) -> usize {
        let bytes = packed.to_le_bytes();
        let mut suffix = 0usize;
        let mut r = 0usize;
        for i in (0..self.nvars).rev() {
            suffix += bytes[i] as usize;
            r += self.table[i][suffix];
        }
        r
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Descending primes below 2^30 congruent to 3 mod 8 (so 2 is a
/// non-residue; the ring mod p is then a field, though nothing relies on it).
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1 << 30).rev().filter(|p| p % 8 == 3 && is_prime(*p))
}

fn mod_big(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("reduced")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Matrix with integer coefficients in Z[sqrt 2], term lists per entry.
struct IntMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<Vec<(u64, BigInt, BigInt)>>,
    row_degree: Vec<usize>,
}

fn lcm_denominators(m: &PolyMatrix) -> BigInt {
    let mut d = BigInt::one();
    for e in m.entries() {
        for (_, c) in e.terms() {
            d = d.lcm(c.rat.denom()).lcm(c.irr.denom());
        }
    }
    d
}

fn scale_to_integers(m: &PolyMatrix, d: &BigInt) -> IntMatrix {
    let n = m.rows();
    let dr = Rational::from_bigint(d.clone());
    let entries: Vec<Vec<(u64, BigInt, BigInt)>> = m
        .entries()
        .iter()
        .map(|e| {
            e.terms()
                .map(|(mono, c)| {
                    let a = &c.rat * &dr;
                    let b = &c.irr * &dr;
                    debug_assert!(a.is_integer() && b.is_integer());
                    (mono.pack(), a.numer().clone(), b.numer().clone())
                })
                .collect()
        })
        .collect();
    let row_degree = (0..n)
        .map(|i| (0..n).filter_map(|j| m.get(i, j).total_degree()).max().unwrap_or(0) as usize)
        .collect();
    IntMatrix {
        n,
        nvars: m.nvars(),
        entries,
        row_degree,
    }
}

/// Bound on |a| + |b| over all coefficients of the scaled determinant:
/// N(x) = |a| + |b| is subadditive and N(xy) <= 2 N(x) N(y), so every
/// coefficient is bounded by 2^(n-1) perm(B) with B_ij the sum of N over
/// the terms of entry (i, j).
fn coefficient_bound(m: &IntMatrix) -> BigInt {
    let n = m.n;
    let b: Vec<BigInt> = m
        .entries
        .iter()
        .map(|terms| terms.iter().map(|(_, a, b)| a.abs() + b.abs()).sum())
        .collect();
    // Permanent by dynamic programming over used-column subsets.
    let mut dp = vec![BigInt::zero(); 1 << n];
    dp[0] = BigInt::one();
    for mask in 0usize..(1 << n) {
        let row = mask.count_ones() as usize;
        if row >= n || dp[mask].is_zero() {
            continue;
        }
        for col in (0..n).filter(|c| mask & (1 << c) == 0) {
            let add = &dp[mask] * &b[row * n + col];
            dp[mask | (1 << col)] += add;
        }
    }
    let perm = dp[(1 << n) - 1].clone();
    perm << (n - 1)
}

/// Dense residues `(a, b)` of a polynomial in Z_p[sqrt 2].
type Dense = Vec<(u32, u32)>;

fn sparse_of(dense: &Dense, monos: &[u64]) -> Vec<(u64, u64, u64)> {
    dense
        .iter()
        .zip(monos)
        .filter(|((a, b), _)| *a != 0 || *b != 0)
        .map(|(&(a, b), &m)| (m, a as u64, b as u64))
        .collect()
}

/// All monomials of degree <= max_deg in `nvars` variables, by rank.
fn monomials_by_rank(r: &Ranker, max_deg: usize) -> Vec<u64> {
    let mut out = vec![0u64; r.size];
    let mut exps = [0u8; 8];
    fn walk(i: usize, left: usize, exps: &mut [u8; 8], r: &Ranker, out: &mut [u64]) {
        if i == r.nvars {
            let packed = Monomial(*exps).pack();
            out[r.rank(packed)] = packed;
            return;
        }
        for e in 0..=left {
            exps[i] = e as u8;
            walk(i + 1, left - e, exps, r, out);
        }
        exps[i] = 0;
    }
    walk(0, max_deg, &mut exps, r, &mut out);
    out
}

/// Determinant residues modulo `p`, dense over the ranker of the full degree.
fn det_mod_p(m: &IntMatrix, p: u64, rankers: &[Ranker], monos: &[Vec<u64>]) -> Dense {
    let n = m.n;
    let entries: Vec<Vec<(u64, u64, u64, u64)>> = m
        .entries
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|(mono, a, b)| {
                    let a = mod_big(a, p);
                    let b = mod_big(b, p);
                    (*mono, a, b, 2 * b % p)
                })
                .filter(|t| t.1 != 0 || t.2 != 0)
                .collect()
        })
        .collect();

    // Layer 1: entries of row 0, stored sparsely.
    let mut layer: rustc_hash::FxHashMap<u32, Vec<(u64, u64, u64)>> = (0..n)
        .map(|j| (1u32 << j, entries[j].iter().map(|&(mo, a, b, _)| (mo, a, b)).collect()))
        .collect();
    let mut result = Dense::new();
    for k in 2..=n {
        let row = k - 1;
        let ranker = &rankers[k];
        let masks: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect();
        let compute = |mask: u32| -> Dense {
            let mut acc: Dense = vec![(0, 0); ranker.size];
            for (pos, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
                let minor = &layer[&(mask & !(1 << col))];
                let negate = (row + pos) % 2 == 1;
                for &(em, ea, eb, eb2) in &entries[row * n + col] {
                    let (ea, eb, eb2) = if negate {
                        ((p - ea) % p, (p - eb) % p, (p - eb2) % p)
                    } else {
                        (ea, eb, eb2)
                    };
                    for &(mm, ma, mb) in minor {
                        let slot = &mut acc[ranker.rank(em + mm)];
                        let xa = (ma * ea + mb * eb2) % p;
                        let xb = (ma * eb + mb * ea) % p;
                        let mut sa = slot.0 as u64 + xa;
                        if sa >= p {
                            sa -= p;
                        }
                        let mut sb = slot.1 as u64 + xb;
                        if sb >= p {
                            sb -= p;
                        }
                        *slot = (sa as u32, sb as u32);
                    }
                }
            }
            acc
        };
        if k == n {
            result = compute(masks[0]);
        } else {
            layer = masks
                .par_iter()
                .map(|&mask| (mask, sparse_of(&compute(mask), &monos[k])))
                .collect();
        }
    }
    if n == 1 {
        let ranker = &rankers[1];
        let mut acc: Dense = vec![(0, 0); ranker.size];
        for &(mo, a, b, _) in &entries[0] {
            acc[ranker.rank(mo)] = (a as u32, b as u32);
        }
        result = acc;
    }
    result
}

/// Garner reconstruction of a symmetric residue from residues modulo
/// `primes`; `half` is floor(prod / 2).
fn garner(residues: &[u64], primes: &[u64], inverses: &[Vec<u64>], prod: &BigInt, half: &BigInt) -> BigInt {
    let k = primes.len();
    let mut v = vec![0u64; k];
    for i in 0..k {
        let p = primes[i];
        let mut t = residues[i] % p;
        for j in 0..i {
            // t = (t - v_j) * inv(p_j) mod p_i
            t = (t + p - v[j] % p) % p * inverses[i][j] % p;
        }
        v[i] = t;
    }
    let mut x = BigInt::zero();
    for i in (0..k).rev() {
        x = x * primes[i] + v[i];
    }
    if &x > half {
        x - prod
    } else {
        x
    }
}

/// Exact determinant of a square polynomial matrix by multi-modular Laplace
/// expansion.
pub fn modular_det(m: &PolyMatrix) -> Result<(MvPoly, ModularReport), LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::NotSquare);
    }
    let start = Instant::now();
    let n = m.rows();
    if n > 16 {
        return Err(LinalgError::Reconstruction("matrix too large".into()));
    }
    let d = lcm_denominators(m);
    let im = scale_to_integers(m, &d);
    let nvars = im.nvars.max(1);

    let mut prefix_deg = vec![0usize; n + 1];
    for k in 1..=n {
        prefix_deg[k] = prefix_deg[k - 1] + im.row_degree[k - 1];
    }
    let rankers: Vec<Ranker> = prefix_deg.iter().map(|&deg| Ranker::new(nvars, deg)).collect();
    if rankers[n].size > MAX_DENSE {
        return Err(LinalgError::Reconstruction("dense monomial table too large".into()));
    }
    if prefix_deg[n] > 255 {
        return Err(LinalgError::Reconstruction(
            "degree exceeds packed exponent range".into(),
        ));
    }
    let monos: Vec<Vec<u64>> = prefix_deg
        .iter()
        .zip(&rankers)
        .map(|(&deg, r)| monomials_by_rank(r, deg))
        .collect();

    let bound = coefficient_bound(&im);
    let target: BigInt = &bound * 2 + 1;
    let mut chosen = Vec::new();
    let mut prod = BigInt::one();
    let mut candidates = primes();
    while prod <= target {
        let p = candidates.next().expect("enough primes");
        prod *= p;
        chosen.push(p);
    }
    let check_prime = candidates.next().expect("enough primes");

    let results: Vec<Dense> = chosen.iter().map(|&p| det_mod_p(&im, p, &rankers, &monos)).collect();
    let check = det_mod_p(&im, check_prime, &rankers, &monos);

    let inverses: Vec<Vec<u64>> = chosen
        .iter()
        .enumerate()
        .map(|(i, &pi)| chosen[..i].iter().map(|&pj| inv_mod(pj % pi, pi)).collect())
        .collect();
    let half: BigInt = &prod >> 1;
    let scale = Rational::from_bigint(d.pow(n as u32))
        .recip()
        .map_err(|e| LinalgError::Reconstruction(e.to_string()))?;
    let size = rankers[n].size;
    let mut agrees = true;
    let mut terms: Vec<(Monomial, QSqrt2)> = Vec::new();
    let mut ra = vec![0u64; chosen.len()];
    let mut rb = vec![0u64; chosen.len()];
    for idx in 0..size {
        for (i, r) in results.iter().enumerate() {
            ra[i] = r[idx].0 as u64;
            rb[i] = r[idx].1 as u64;
        }
        let a = garner(&ra, &chosen, &inverses, &prod, &half);
        let b = garner(&rb, &chosen, &inverses, &prod, &half);
        if mod_big(&a, check_prime) != check[idx].0 as u64 || mod_big(&b, check_prime) != check[idx].1 as u64 {
            agrees = false;
        }
        if a.sign() == Sign::NoSign && b.sign() == Sign::NoSign {
            continue;
        }
        let c = QSqrt2::new(Rational::from_bigint(a), Rational::from_bigint(b)).scale(&scale);
        terms.push((Monomial::unpack(monos[n][idx]), c));
    }
    if !agrees {
        return Err(LinalgError::Reconstruction(
            "check prime disagrees with reconstruction".into(),
        ));
    }
    let det = MvPoly::from_terms(m.nvars(), terms);
    let report = ModularReport {
        primes: chosen,
        bound_bits: bound.bits(),
        denominator: d.to_string(),
        terms: det.len(),
        check_prime_agrees: agrees,
        seconds: start.elapsed().as_secs_f64(),
    };
    Ok((det, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MvPoly {
        MvPoly::var(n, i)
    }

    fn c(n: usize, v: QSqrt2) -> MvPoly {
        MvPoly::constant(n, v)
    }

    #[test]
    fn ranker_is_a_bijection() {
        let r = Ranker::new(3, 4);
        let monos = monomials_by_rank(&r, 4);
        assert_eq!(monos.len(), binomial(7, 3));
        let mut seen = monos.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), monos.len());
        for (i, &m) in monos.iter().enumerate() {
            assert_eq!(r.rank(m), i);
        }
    }

    #[test]
    fn agrees_with_exact_expansion() {
        let n = 3;
        let half = QSqrt2::frac(1, 0, 2);
        let rows = vec![
            vec![
                &x(n, 0).pow(2) + &c(n, QSqrt2::ints(1, 1)),
                x(n, 1).scale(&half),
                c(n, QSqrt2::frac(-3, 1, 7)),
            ],
            vec![
                &x(n, 2) * &x(n, 0),
                c(n, QSqrt2::sqrt2()),
                &x(n, 1) - &x(n, 2).scale(&QSqrt2::from_int(5)),
            ],
            vec![
                c(n, QSqrt2::from_int(-4)),
                &x(n, 1).pow(2) + &x(n, 0),
                x(n, 2).scale(&QSqrt2::frac(2, -9, 5)),
            ],
        ];
        let m = PolyMatrix::from_rows(rows).unwrap();
        let (det, report) = modular_det(&m).unwrap();
        assert_eq!(det, m.det_poly().unwrap());
        assert!(report.check_prime_agrees);
        assert_eq!(report.terms, det.len());
    }

    #[test]
    fn singular_matrix_gives_zero() {
        let n = 2;
        let row = vec![x(n, 0), x(n, 1)];
        let m = PolyMatrix::from_rows(vec![row.clone(), row]).unwrap();
        assert!(modular_det(&m).unwrap().0.is_zero());
    }

    #[test]
    fn one_by_one() {
        let p = &x(2, 0) + &c(2, QSqrt2::frac(1, 1, 3));
        let m = PolyMatrix::from_rows(vec![vec![p.clone()]]).unwrap();
        assert_eq!(modular_det(&m).unwrap().0, p);
    }
}
