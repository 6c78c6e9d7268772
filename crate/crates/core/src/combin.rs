//! Lexicographic k-subsets of `[0, n)` without per-item allocation.

use rayon::prelude::*;

/// Advances `c` (strictly increasing, entries < n) to the next k-subset in
/// lexicographic order. Returns `false` once `c` was the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every k-subset of `[0, n)` whose smallest element is `first`.
pub fn for_each_with_first(n: usize, k: usize, first: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 || first + k > n {
        return;
    }
    let mut c: Vec<usize> = (first..first + k).collect();
    loop {
        f(&c);
        if k == 1 || !next_combination(&mut c[1..], n) {
            break;
        }
    }
}

/// Calls `f` on every k-subset of `[0, n)` in lexicographic order.
pub fn for_each(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        f(&[]);
        return;
    }
    for first in 0..n {
        for_each_with_first(n, k, first, &mut f);
    }
}

/// Sums `f` over every k-subset, partitioning the work by smallest element.
pub fn par_sum<F>(n: usize, k: usize, f: F) -> u64
where
    F: Fn(&[usize]) -> u64 + Sync,
{
    if k == 0 {
        return f(&[]);
    }
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut acc = 0;
            for_each_with_first(n, k, first, |c| acc += f(c));
            acc
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zn::binomial;

    #[test]
    fn visits_every_subset_once_in_order() {
        for n in 0..9 {
            for k in 0..=n {
                let mut seen: Vec<Vec<usize>> = Vec::new();
                for_each(n, k, |c| seen.push(c.to_vec()));
                assert_eq!(
                    seen.len() as u128,
                    binomial(n as u64, k as u64),
                    "n={n} k={k}"
                );
                assert!(seen.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn par_sum_counts() {
        assert_eq!(par_sum(16, 4, |_| 1), 1820);
        assert_eq!(par_sum(8, 0, |_| 1), 1);
    }
}
