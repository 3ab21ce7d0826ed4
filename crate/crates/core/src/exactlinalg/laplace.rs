use rayon::prelude::*;

/// Coefficient ring for division-free determinant expansion.
pub trait DetRing: Clone + Send + Sync {
    /// Additive identity compatible with `self` (same variable count, same
    /// modulus, ...).
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `self += a * b`, or `self -= a * b` when `negate` is set.
    fn add_product(&mut self, a: &Self, b: &Self, negate: bool);
}

/// Determinant of the `n x n` row-major matrix `entries` by Laplace expansion
/// along successive rows, memoizing every minor on the leading rows by its
/// column subset.
///
/// Layer `k` holds the `C(n, k)` minors built from rows `0..k`; each is a
/// signed sum of `k` products of an entry of row `k-1` with a minor of layer
/// `k-1`. No division is ever performed.
pub fn memoized_det<R: DetRing>(n: usize, entries: &[R]) -> R {
    assert_eq!(entries.len(), n * n, "entries must be n x n");
    assert!(n > 0 && n <= 16, "unsupported matrix size");
    let mut layer: Vec<(u32, R)> = (0..n).map(|j| (1u32 << j, entries[j].clone())).collect();
    for k in 2..=n {
        let row = k - 1;
        let prev: rustc_hash::FxHashMap<u32, &R> = layer.iter().map(|(m, r)| (*m, r)).collect();
        let masks: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect();
        let next: Vec<(u32, R)> = masks
            .par_iter()
            .map(|&mask| {
                let mut acc = entries[0].zero_like();
                for (pos, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
                    let e = &entries[row * n + col];
                    if e.is_zero() {
                        continue;
                    }
                    let minor = prev[&(mask & !(1 << col))];
                    if minor.is_zero() {
                        continue;
                    }
                    // Cofactor sign for position (k-1, pos) of the k x k minor.
                    acc.add_product(e, minor, (row + pos) % 2 == 1);
                }
                (mask, acc)
            })
            .collect();
        layer = next;
    }
    layer.pop().expect("full minor").1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    struct Int(i64);

    impl DetRing for Int {
        fn zero_like(&self) -> Self {
            Int(0)
        }
        fn is_zero(&self) -> bool {
            self.0 == 0
        }
        fn add_product(&mut self, a: &Self, b: &Self, negate: bool) {
            let p = a.0 * b.0;
            self.0 += if negate { -p } else { p };
        }
    }

    fn det_by_permutations(n: usize, m: &[i64]) -> i64 {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                sign * (0..n).map(|i| m[i * n + p[i]]).product::<i64>()
            })
            .sum()
    }

    #[test]
    fn agrees_with_permutation_expansion() {
        let mut seed = 12345u64;
        for n in 1..=6 {
            for _ in 0..20 {
                let m: Vec<i64> = (0..n * n)
                    .map(|_| {
                        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((seed >> 33) % 11) as i64 - 5
                    })
                    .collect();
                let entries: Vec<Int> = m.iter().map(|&x| Int(x)).collect();
                assert_eq!(
                    memoized_det(n, &entries).0,
                    det_by_permutations(n, &m),
                    "n = {n}, m = {m:?}"
                );
            }
        }
    }
}
