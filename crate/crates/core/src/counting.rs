//! Exact counts of orthogonal sampling sets and unitary pairs for `N = p^M`,
//! brute-force oracles, and the `theta`/`phi` tables.

use std::fmt;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::SearchBounds;
use crate::combin;
use crate::digit_table::build_table;
use crate::error::{Error, Result};
use crate::poly::CyclotomicTable;
use crate::zn::{binomial, divisors_proper, is_prime, IndexSet, Modulus};

/// Largest count, in bits, that the closed forms will build.
const MAX_COUNT_BITS: u128 = 1 << 28;

/// Arbitrary-precision nonnegative count. Serialized as a decimal string.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    /// `log_base(self)`; `-inf` for zero.
    pub fn log(&self, base: f64) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        let log2 = if bits <= 1000 {
            self.0.to_f64().expect("fits in f64").log2()
        } else {
            let shift = bits - 64;
            let top = (&self.0 >> shift).to_u64().expect("64 bits");
            (top as f64).log2() + shift as f64
        };
        log2 / base.log2()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for BigCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(BigCount)
            .ok_or_else(|| serde::de::Error::custom(format!("{s:?} is not a decimal count")))
    }
}

/// `r_0, ..., r_{log d}`: the unmarked columns before the first mark,
/// between consecutive marks, and after the last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GapVector {
    pub r: Vec<usize>,
}

impl GapVector {
    pub fn log_d(&self) -> usize {
        self.r.len() - 1
    }

    pub fn total(&self) -> usize {
        self.r.iter().sum()
    }

    /// `lambda(r) = sum r_i p^i`.
    pub fn lambda(&self, p: usize) -> u128 {
        weighted(&self.r, |i| pow128(p, i))
    }

    /// `sum r_i (p^i + d / p^i)`.
    pub fn pair_exponent(&self, p: usize) -> u128 {
        let d = pow128(p, self.log_d());
        weighted(&self.r, |i| pow128(p, i).saturating_add(d / pow128(p, i)))
    }

    /// Every gap vector with `log_d + 1` entries summing to `total`, in
    /// lexicographic order.
    pub fn all(total: usize, log_d: usize) -> Vec<GapVector> {
        let mut out = Vec::new();
        let mut r = vec![0; log_d + 1];
        fill_compositions(&mut r, 0, total, &mut out);
        out
    }
}

fn fill_compositions(r: &mut Vec<usize>, at: usize, left: usize, out: &mut Vec<GapVector>) {
    if at + 1 == r.len() {
        r[at] = left;
        out.push(GapVector { r: r.clone() });
        return;
    }
    for v in 0..=left {
        r[at] = v;
        fill_compositions(r, at + 1, left - v, out);
    }
}

fn pow128(p: usize, i: usize) -> u128 {
    u32::try_from(i)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e))
        .unwrap_or(u128::MAX)
}

fn weighted(r: &[usize], w: impl Fn(usize) -> u128) -> u128 {
    r.iter().enumerate().fold(0u128, |acc, (i, &ri)| {
        acc.saturating_add((ri as u128).saturating_mul(w(i)))
    })
}

fn check_params(p: usize, m: usize, log_d: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if log_d > m {
        return Err(Error::InvalidArgument(format!(
            "log d = {log_d} exceeds M = {m}"
        )));
    }
    Ok(())
}

/// `p^e` as a big integer, refusing absurd sizes.
fn big_power(p: usize, e: u128) -> Result<BigUint> {
    let bits = e.saturating_mul((usize::BITS - p.leading_zeros()) as u128);
    SearchBounds::check("count size in bits", bits, MAX_COUNT_BITS)?;
    Ok(BigUint::from(p).pow(e as u32))
}

fn sum_over_gaps(
    p: usize,
    m: usize,
    log_d: usize,
    exponent: impl Fn(&GapVector) -> u128,
) -> Result<BigCount> {
    check_params(p, m, log_d)?;
    let mut total = BigUint::zero();
    for g in GapVector::all(m - log_d, log_d) {
        total += big_power(p, exponent(&g))?;
    }
    Ok(BigCount(total))
}

/// Orthogonal sampling sets of size `p^{log d}` in `Z_{p^M}`:
/// `sum_r p^{lambda(r)}`.
pub fn count_sampling_sets(p: usize, m: usize, log_d: usize) -> Result<BigCount> {
    sum_over_gaps(p, m, log_d, |g| g.lambda(p))
}

/// Ordered unitary pairs of size `p^{log d}` in `Z_{p^M}`:
/// `sum_r p^{sum r_i (p^i + d/p^i)}`.
pub fn count_unitary_pairs(p: usize, m: usize, log_d: usize) -> Result<BigCount> {
    sum_over_gaps(p, m, log_d, |g| g.pair_exponent(p))
}

/// Coefficients of `prod_{i=0}^{log d} 1 / (1 - p^{w_i} x)` up to `x^order`.
fn product_series(p: usize, weights: &[u128], order: usize) -> Result<Vec<BigCount>> {
    let mut series = vec![BigUint::zero(); order + 1];
    series[0] = BigUint::one();
    for &w in weights {
        let a = big_power(p, w)?;
        // multiply by 1/(1 - a x): s'_k = s_k + a s'_{k-1}
        for k in 1..=order {
            let prev = &series[k - 1] * &a;
            series[k] += prev;
        }
    }
    Ok(series.into_iter().map(BigCount).collect())
}

/// Series coefficients of the sampling-set generating function for `d = p^{log d}`;
/// entry `k` is the count for `M = log d + k`.
pub fn theta_series(p: usize, log_d: usize, order: usize) -> Result<Vec<BigCount>> {
    check_params(p, log_d, log_d)?;
    let weights: Vec<u128> = (0..=log_d).map(|i| pow128(p, i)).collect();
    product_series(p, &weights, order)
}

/// Same for unitary pairs.
pub fn phi_series(p: usize, log_d: usize, order: usize) -> Result<Vec<BigCount>> {
    check_params(p, log_d, log_d)?;
    let d = pow128(p, log_d);
    let weights: Vec<u128> = (0..=log_d)
        .map(|i| pow128(p, i) + d / pow128(p, i))
        .collect();
    product_series(p, &weights, order)
}

fn check_modulus_size(modulus: &Modulus, d: usize) -> Result<()> {
    if d == 0 || d > modulus.n() {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= d <= {}, got {d}",
            modulus.n()
        )));
    }
    Ok(())
}

/// Subsets `I` of size `d` admitting some `J` with `(I, J)` orthogonal.
/// Prime powers use the digit-table criterion `d = p^{|pivots|}`; other
/// moduli use [`brute_force_count_sampling_sets_by_divisors`].
pub fn brute_force_count_sampling_sets(
    modulus: &Modulus,
    d: usize,
    bounds: &SearchBounds,
) -> Result<BigCount> {
    check_modulus_size(modulus, d)?;
    let n = modulus.n();
    SearchBounds::check(
        "brute-force subsets",
        binomial(n as u64, d as u64),
        bounds.brute_force,
    )?;
    let Some((p, m)) = modulus.as_prime_power() else {
        return brute_force_count_sampling_sets_by_divisors(modulus, d, bounds);
    };
    let m = m as usize;
    let count = combin::par_sum(n, d, |c| {
        let set = IndexSet::from_residues(modulus, c.iter().copied());
        let pivots = build_table(&set, p, m, &[]).expect("same modulus").pivots();
        u64::from(p.checked_pow(pivots.len() as u32) == Some(d))
    });
    Ok(BigCount::from(count))
}

/// Index of each proper divisor, for bitmask encodings of divisor sets.
struct DivisorIndex {
    n: usize,
    index: Vec<u32>,
}

impl DivisorIndex {
    fn new(modulus: &Modulus) -> Self {
        let n = modulus.n();
        let mut index = vec![u32::MAX; n + 1];
        for (k, &dv) in divisors_proper(modulus).divisors().iter().enumerate() {
            index[dv] = k as u32;
        }
        DivisorIndex { n, index }
    }

    fn mask(&self, divisors: &[usize]) -> u64 {
        divisors.iter().fold(0, |m, &dv| m | 1 << self.index[dv])
    }

    /// Gcd classes of the nonzero differences of a sorted subset.
    fn difference_mask(&self, c: &[usize]) -> u64 {
        let mut m = 0u64;
        for (k, &a) in c.iter().enumerate() {
            for &b in &c[k + 1..] {
                m |= 1 << self.index[crate::zn::gcd(b - a, self.n)];
            }
        }
        m
    }
}

fn all_subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    combin::for_each(n, d, |c| out.push(c.to_vec()));
    out
}

/// `I` counted iff its difference classes lie inside `D(h_J)` for some
/// `d`-subset `J`. Works for any N.
pub fn brute_force_count_sampling_sets_by_divisors(
    modulus: &Modulus,
    d: usize,
    bounds: &SearchBounds,
) -> Result<BigCount> {
    check_modulus_size(modulus, d)?;
    let n = modulus.n();
    let subsets = binomial(n as u64, d as u64);
    SearchBounds::check(
        "brute-force subsets",
        subsets.saturating_mul(2),
        bounds.brute_force,
    )?;
    let table = CyclotomicTable::for_modulus(modulus);
    let idx = DivisorIndex::new(modulus);
    let sets = all_subsets(n, d);
    let mut realized: Vec<u64> = sets
        .par_iter()
        .map(|c| idx.mask(&table.zero_set_divisors(c)))
        .collect();
    realized.sort_unstable();
    realized.dedup();
    // keep only maximal masks
    let maximal: Vec<u64> = realized
        .iter()
        .copied()
        .filter(|&a| !realized.iter().any(|&b| b != a && a & b == a))
        .collect();
    let count = sets
        .par_iter()
        .filter(|c| {
            let need = idx.difference_mask(c);
            maximal.iter().any(|&have| need & have == need)
        })
        .count();
    Ok(BigCount::from(count as u64))
}

/// Ordered pairs `(I, J)` of `d`-subsets with the exact unitarity test
/// passing, checked pair by pair.
pub fn brute_force_count_unitary_pairs(
    modulus: &Modulus,
    d: usize,
    bounds: &SearchBounds,
) -> Result<BigCount> {
    let (rows, cols) = pair_masks(modulus, d, bounds)?;
    Ok(BigCount::from(count_pairs(&rows, &cols)))
}

/// Same count with the roles of `I` and `J` exchanged.
pub fn brute_force_count_unitary_pairs_swapped(
    modulus: &Modulus,
    d: usize,
    bounds: &SearchBounds,
) -> Result<BigCount> {
    let (rows, cols) = pair_masks(modulus, d, bounds)?;
    // pair (J, I): J's differences inside D(h_I); same pair list, transposed
    Ok(BigCount::from(
        cols.par_iter()
            .map(|&have| rows.iter().filter(|&&need| need & have == need).count() as u64)
            .sum::<u64>(),
    ))
}

fn pair_masks(modulus: &Modulus, d: usize, bounds: &SearchBounds) -> Result<(Vec<u64>, Vec<u64>)> {
    check_modulus_size(modulus, d)?;
    let n = modulus.n();
    let subsets = binomial(n as u64, d as u64);
    SearchBounds::check(
        "brute-force ordered pairs",
        subsets.saturating_mul(subsets),
        bounds.brute_force,
    )?;
    let table = CyclotomicTable::for_modulus(modulus);
    let idx = DivisorIndex::new(modulus);
    let sets = all_subsets(n, d);
    let rows = sets.par_iter().map(|c| idx.difference_mask(c)).collect();
    let cols = sets
        .par_iter()
        .map(|c| idx.mask(&table.zero_set_divisors(c)))
        .collect();
    Ok((rows, cols))
}

fn count_pairs(rows: &[u64], cols: &[u64]) -> u64 {
    rows.par_iter()
        .map(|&need| cols.iter().filter(|&&have| need & have == need).count() as u64)
        .sum()
}

/// One line of the `theta`/`phi` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaPhiRow {
    pub log_d: usize,
    pub count: BigCount,
    /// `log_p(count) / d`.
    pub theta: f64,
    pub phi_count: BigCount,
    pub phi: f64,
    /// `M - log d + log_p C(M, floor(M/2))`.
    pub theta_bound: f64,
    /// `2M - 2 log d + log_p C(M, floor(M/2))`.
    pub phi_bound: f64,
}

/// Rows for `log d = 0..=M`, computed from the generating functions.
pub fn theta_phi_table(p: usize, m: usize) -> Result<Vec<ThetaPhiRow>> {
    check_params(p, m, 0)?;
    let central = binomial(m as u64, (m / 2) as u64) as f64;
    let log_central = central.ln() / (p as f64).ln();
    (0..=m)
        .map(|log_d| {
            let count = theta_series(p, log_d, m - log_d)?.pop().expect("nonempty");
            let phi_count = phi_series(p, log_d, m - log_d)?.pop().expect("nonempty");
            let d = (p as f64).powi(log_d as i32);
            Ok(ThetaPhiRow {
                log_d,
                theta: count.log(p as f64) / d,
                phi: phi_count.log(p as f64) / d,
                count,
                phi_count,
                theta_bound: (m - log_d) as f64 + log_central,
                phi_bound: 2.0 * (m - log_d) as f64 + log_central,
            })
        })
        .collect()
}

/// `theta <= theta_bound` decided in integers: `count <= C^d p^{d (M - log d)}`.
pub fn theta_within_bound(p: usize, m: usize, row: &ThetaPhiRow) -> bool {
    let (c, d) = bound_parts(p, m, row.log_d);
    let limit = c.pow(d as u32) * BigUint::from(p).pow((d * (m - row.log_d)) as u32);
    row.count.0 <= limit
}

/// `phi <= phi_bound` decided in integers: `phi_count <= C^d p^{2 d (M - log d)}`.
pub fn phi_within_bound(p: usize, m: usize, row: &ThetaPhiRow) -> bool {
    let (c, d) = bound_parts(p, m, row.log_d);
    let limit = c.pow(d as u32) * BigUint::from(p).pow((2 * d * (m - row.log_d)) as u32);
    row.phi_count.0 <= limit
}

fn bound_parts(p: usize, m: usize, log_d: usize) -> (BigUint, usize) {
    let c = BigUint::from(binomial(m as u64, (m / 2) as u64));
    (c, p.pow(log_d as u32))
}

pub const CSV_HEADER: &str = "log_d,count,theta,phi_count,phi,theta_bound,phi_bound";

/// `x` to 15 significant digits, without trailing zeros.
pub fn format_significant(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (14 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_csv(rows: &[ThetaPhiRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.log_d,
            r.count,
            format_significant(r.theta),
            r.phi_count,
            format_significant(r.phi),
            format_significant(r.theta_bound),
            format_significant(r.phi_bound)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::find_orthogonal_sampling_set;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_sampling_sets(2, 3, 2).unwrap(), big(22));
        assert_eq!(count_sampling_sets(2, 4, 2).unwrap(), big(380));
        assert_eq!(count_sampling_sets(3, 3, 1).unwrap(), big(819));
        assert_eq!(count_unitary_pairs(2, 3, 2).unwrap(), big(80));
        assert_eq!(count_unitary_pairs(2, 4, 2).unwrap(), big(4352));
        assert_eq!(count_unitary_pairs(2, 3, 1).unwrap(), big(192));
        assert!(count_sampling_sets(4, 3, 1).is_err());
        assert!(count_sampling_sets(2, 3, 4).is_err());
    }

    #[test]
    fn boundary_rows() {
        for (p, m) in [(2usize, 1usize), (2, 6), (3, 4), (5, 3), (7, 2)] {
            assert_eq!(
                count_sampling_sets(p, m, 0).unwrap(),
                big(p.pow(m as u32) as u64)
            );
            assert_eq!(count_sampling_sets(p, m, m).unwrap(), big(1));
            assert_eq!(count_unitary_pairs(p, m, m).unwrap(), big(1));
        }
    }

    #[test]
    fn gap_vectors() {
        let all = GapVector::all(2, 2);
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|g| g.total() == 2 && g.log_d() == 2));
        assert_eq!(GapVector { r: vec![1, 1, 0] }.lambda(2), 3);
        assert_eq!(GapVector { r: vec![1, 0] }.pair_exponent(3), 4);
        for (total, log_d) in [(0usize, 0usize), (3, 4), (6, 2)] {
            let n = GapVector::all(total, log_d).len() as u128;
            assert_eq!(n, binomial((total + log_d) as u64, log_d as u64));
        }
    }

    #[test]
    fn series_matches_compositions() {
        for (p, max_m) in [(2usize, 9usize), (3, 6), (5, 4)] {
            for log_d in 0..=max_m {
                let theta = theta_series(p, log_d, max_m - log_d).unwrap();
                let phi = phi_series(p, log_d, max_m - log_d).unwrap();
                for k in 0..=max_m - log_d {
                    assert_eq!(theta[k], count_sampling_sets(p, log_d + k, log_d).unwrap());
                    assert_eq!(phi[k], count_unitary_pairs(p, log_d + k, log_d).unwrap());
                }
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        let b = SearchBounds::default();
        let z8 = Modulus::new(8).unwrap();
        assert_eq!(
            brute_force_count_sampling_sets(&z8, 4, &b).unwrap(),
            big(22)
        );
        assert_eq!(brute_force_count_sampling_sets(&z8, 5, &b).unwrap(), big(0));
        assert_eq!(
            brute_force_count_unitary_pairs(&z8, 4, &b).unwrap(),
            big(80)
        );
        let z4 = Modulus::new(4).unwrap();
        assert_eq!(brute_force_count_unitary_pairs(&z4, 4, &b).unwrap(), big(1));
        let z27 = Modulus::new(27).unwrap();
        assert_eq!(
            brute_force_count_sampling_sets(&z27, 3, &b).unwrap(),
            big(819)
        );
        assert_eq!(
            brute_force_count_unitary_pairs(&z8, 2, &b).unwrap(),
            big(192)
        );
        let tight = b.with_search_limit(100);
        assert!(brute_force_count_unitary_pairs(&z8, 4, &tight)
            .unwrap_err()
            .is_bound_exceeded());
    }

    #[test]
    fn oracles_agree_with_closed_forms() {
        let b = SearchBounds::default();
        for (p, max_m) in [(2usize, 4usize), (3, 2)] {
            for m in 1..=max_m {
                let modulus = Modulus::prime_power(p, m as u32).unwrap();
                for log_d in 0..=m {
                    let d = p.pow(log_d as u32);
                    let closed = count_sampling_sets(p, m, log_d).unwrap();
                    assert_eq!(
                        brute_force_count_sampling_sets(&modulus, d, &b).unwrap(),
                        closed
                    );
                    assert_eq!(
                        brute_force_count_sampling_sets_by_divisors(&modulus, d, &b).unwrap(),
                        closed
                    );
                    let pairs = count_unitary_pairs(p, m, log_d).unwrap();
                    let c = binomial(modulus.n() as u64, d as u64);
                    if c * c <= b.brute_force {
                        assert_eq!(
                            brute_force_count_unitary_pairs(&modulus, d, &b).unwrap(),
                            pairs
                        );
                        assert_eq!(
                            brute_force_count_unitary_pairs_swapped(&modulus, d, &b).unwrap(),
                            pairs
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn divisor_oracle_matches_sampling_search_on_composites() {
        use crate::idempotent::Idempotent;
        let b = SearchBounds::default();
        for (n, max_d) in [(6usize, 3usize), (10, 5), (12, 6), (15, 4)] {
            let modulus = Modulus::new(n).unwrap();
            for d in 1..=max_d {
                let by_divisors =
                    brute_force_count_sampling_sets_by_divisors(&modulus, d, &b).unwrap();
                let mut sets = Vec::new();
                combin::for_each(n, d, |c| {
                    sets.push(IndexSet::new(&modulus, c.iter().copied()).unwrap())
                });
                // zero-set divisors of the J that the clique search says have a sampling set
                let mut targets: Vec<crate::zn::DivisorSet> = sets
                    .iter()
                    .filter(|j| find_orthogonal_sampling_set(j, &b).unwrap().is_some())
                    .map(|j| {
                        Idempotent::new(j.clone())
                            .unwrap()
                            .zero_set_divisors()
                            .clone()
                    })
                    .collect();
                targets.dedup();
                let direct = sets
                    .iter()
                    .filter(|i| {
                        targets
                            .iter()
                            .any(|t| i.difference_classes().iter().all(|&k| t.contains(k)))
                    })
                    .count();
                assert_eq!(by_divisors, big(direct as u64), "N={n} d={d}");
            }
        }
    }

    #[test]
    fn table_rows() {
        let rows = theta_phi_table(2, 3).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].count, big(8));
        assert!((rows[0].theta - 3.0).abs() < 1e-12);
        assert_eq!(rows[2].count, big(22));
        assert!((rows[2].theta - 22f64.log2() / 4.0).abs() < 1e-12);
        assert_eq!(rows[2].phi_count, big(80));
        for (p, m) in [(2usize, 10usize), (3, 10), (5, 6)] {
            for r in theta_phi_table(p, m).unwrap() {
                assert!(theta_within_bound(p, m, &r), "p={p} M={m} {r:?}");
                assert!(phi_within_bound(p, m, &r), "p={p} M={m} {r:?}");
                assert!(r.theta <= r.theta_bound + 1e-12);
            }
        }
    }

    #[test]
    fn csv_output() {
        let mut buf = Vec::new();
        write_csv(&theta_phi_table(2, 2).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "0,4,2,16,4,3,5");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(3.0), "3");
        assert_eq!(format_significant(1.0 / 3.0), "0.333333333333333");
        assert_eq!(format_significant(22f64.log2() / 4.0), "1.11485790465932");
        assert_eq!(format_significant(0.0), "0");
    }

    #[test]
    fn big_count_logs_and_json() {
        let c = BigCount(BigUint::from(2u32).pow(4000) * 3u32);
        assert!((c.log(2.0) - (4000.0 + 3f64.log2())).abs() < 1e-9);
        let json = serde_json::to_string(&big(4352)).unwrap();
        assert_eq!(json, "\"4352\"");
        assert_eq!(serde_json::from_str::<BigCount>(&json).unwrap(), big(4352));
    }
}
