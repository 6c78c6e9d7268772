//! Convolution idempotents `h = F^{-1} 1_J` on Z_N: numeric values, exact
//! zero-set divisors, Ramanujan sums and the prescribed-zero-set problem.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::SearchBounds;
use crate::combin;
use crate::digit_table::{build_table, dual_markings};
use crate::error::{Error, Result};
use crate::poly::{CyclotomicTable, IntPolynomial};
use crate::zn::{euler_phi, first_nonzero_digit_index, gcd, mobius, DivisorSet, IndexSet, Modulus};

/// Idempotent determined by its frequency support `J`. Always carries the
/// `1/N` factor, so `h(0) = |J|/N`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "IdempotentRepr", into = "IdempotentRepr")]
pub struct Idempotent {
    support: IndexSet,
    divisors: OnceLock<DivisorSet>,
}

#[derive(Serialize, Deserialize)]
struct IdempotentRepr {
    n: usize,
    elements: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    divisors: Option<Vec<usize>>,
}

impl TryFrom<IdempotentRepr> for Idempotent {
    type Error = Error;

    fn try_from(r: IdempotentRepr) -> Result<Self> {
        let h = Idempotent::new(IndexSet::new(&Modulus::new(r.n)?, r.elements)?)?;
        if let Some(claimed) = r.divisors {
            let claimed = DivisorSet::new(h.modulus(), claimed)?;
            if claimed != *h.zero_set_divisors() {
                return Err(Error::InvalidArgument(format!(
                    "stated divisors {:?} differ from the computed {:?}",
                    claimed.divisors(),
                    h.zero_set_divisors().divisors()
                )));
            }
        }
        Ok(h)
    }
}

impl From<Idempotent> for IdempotentRepr {
    fn from(h: Idempotent) -> Self {
        let divisors = Some(h.zero_set_divisors().divisors().to_vec());
        IdempotentRepr {
            n: h.support.n(),
            elements: h.support.elements().to_vec(),
            divisors,
        }
    }
}

impl fmt::Debug for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h[{:?}]", self.support)
    }
}

impl PartialEq for Idempotent {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support
    }
}

impl Eq for Idempotent {}

impl Idempotent {
    pub fn new(support: IndexSet) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidArgument(
                "an idempotent needs a nonempty frequency set".into(),
            ));
        }
        Ok(Idempotent {
            support,
            divisors: OnceLock::new(),
        })
    }

    pub fn support(&self) -> &IndexSet {
        &self.support
    }

    pub fn modulus(&self) -> &Modulus {
        self.support.modulus()
    }

    pub fn n(&self) -> usize {
        self.support.n()
    }

    /// `h(0) = |J|/N`.
    pub fn value_at_zero(&self) -> f64 {
        self.support.len() as f64 / self.n() as f64
    }

    /// `(1/N) sum_{j in J} exp(2 pi i m j / N)`.
    pub fn eval(&self, m: usize) -> Complex64 {
        let n = self.n();
        let m = m % n;
        let sum: Complex64 = self
            .support
            .elements()
            .iter()
            .map(|&j| Complex64::from_polar(1.0, TAU * ((m * j) % n) as f64 / n as f64))
            .sum();
        sum / n as f64
    }

    pub fn values(&self) -> Vec<Complex64> {
        (0..self.n()).map(|m| self.eval(m)).collect()
    }

    pub fn indicator_polynomial(&self) -> IntPolynomial {
        IntPolynomial::indicator(&self.support)
    }

    /// Exact `D(h)`: the `k < N` with `Phi_{N/k}` dividing `p_J`.
    pub fn zero_set_divisors(&self) -> &DivisorSet {
        self.divisors.get_or_init(|| {
            let table = CyclotomicTable::for_modulus(self.modulus());
            let divs = table.zero_set_divisors(self.support.elements());
            DivisorSet::new(self.modulus(), divs).expect("table yields proper divisors")
        })
    }

    /// `{i : gcd(i, N) in D(h)}`.
    pub fn zero_set(&self) -> IndexSet {
        self.zero_set_divisors().zero_set()
    }

    /// Points where `|h(m)| < rel_tol * h(0)`; a floating-point cross-check only.
    pub fn numeric_zero_set(&self, rel_tol: f64) -> IndexSet {
        let threshold = rel_tol * self.value_at_zero();
        let zeros = (0..self.n()).filter(|&m| self.eval(m).norm() < threshold);
        IndexSet::new(self.modulus(), zeros).expect("residues are distinct and in range")
    }
}

pub fn eval_numeric(h: &Idempotent, m: usize) -> Complex64 {
    h.eval(m)
}

pub fn zero_set_divisors(h: &Idempotent) -> DivisorSet {
    h.zero_set_divisors().clone()
}

pub fn zero_set(h: &Idempotent) -> IndexSet {
    h.zero_set()
}

/// Ramanujan's sum `c_q(k)` via `mu(q/g) phi(q) / phi(q/g)`, `g = gcd(k, q)`.
pub fn ramanujan_sum(q: usize, k: i64) -> i64 {
    assert!(q >= 1, "Ramanujan sums need q >= 1");
    let r = k.rem_euclid(q as i64) as usize;
    let g = if r == 0 { q } else { gcd(r, q) };
    let t = q / g;
    mobius(t) * (euler_phi(q) / euler_phi(t)) as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrescribeMode {
    /// Prime-power N only: the minimal single-block solution.
    Constructive,
    /// Size-ascending, lexicographic search over all subsets of Z_N.
    Exhaustive,
}

/// Finds `J` with `D(h_J) = divisors`, or `None` when no subset works.
pub fn prescribe_zero_set(
    divisors: &DivisorSet,
    mode: PrescribeMode,
    bounds: &SearchBounds,
) -> Result<Option<IndexSet>> {
    match mode {
        PrescribeMode::Constructive => minimal_solution(divisors).map(Some),
        PrescribeMode::Exhaustive => exhaustive_solution(divisors, bounds),
    }
}

/// `{ sum_k i_k p^{M - l_k - 1} : i in [0, p-1]^|L| }` for `L = log_p D`.
fn minimal_solution(divisors: &DivisorSet) -> Result<IndexSet> {
    let modulus = divisors.modulus();
    let (p, m) = modulus
        .as_prime_power()
        .ok_or(Error::NotPrimePower(modulus.n()))?;
    let m = m as usize;
    let weights: Vec<usize> = divisors
        .exponents()?
        .into_iter()
        .map(|l| p.pow((m - l - 1) as u32))
        .collect();
    let mut elements = vec![0usize];
    for w in weights {
        elements = elements
            .iter()
            .flat_map(|&e| (0..p).map(move |digit| e + digit * w))
            .collect();
    }
    IndexSet::new(modulus, elements)
}

fn exhaustive_solution(divisors: &DivisorSet, bounds: &SearchBounds) -> Result<Option<IndexSet>> {
    let modulus = divisors.modulus();
    let n = modulus.n();
    let subsets = if n >= 127 { u128::MAX } else { 1u128 << n };
    SearchBounds::check(
        "exhaustive prescribed-zero-set search",
        subsets,
        bounds.exhaustive_subsets,
    )?;
    let table = CyclotomicTable::for_modulus(modulus);
    let target = divisors.divisors();
    for size in 1..=n {
        // partitions by smallest element are themselves in lexicographic order
        let hit = (0..n).into_par_iter().find_map_first(|first| {
            let mut found = None;
            combin::for_each_with_first(n, size, first, |c| {
                if found.is_none() && table.zero_set_divisors(c) == target {
                    found = Some(c.to_vec());
                }
            });
            found
        });
        if let Some(elements) = hit {
            return IndexSet::new(modulus, elements).map(Some);
        }
    }
    Ok(None)
}

/// Partition of `J` into valid digit-tables with marked columns `L*`, if one exists.
pub fn block_partition(
    set: &IndexSet,
    p: usize,
    m: usize,
    columns: &[usize],
) -> Result<Option<Vec<IndexSet>>> {
    let modulus = Modulus::prime_power(p, m as u32)?;
    if modulus.n() != set.n() {
        return Err(Error::ModulusMismatch(set.n(), modulus.n()));
    }
    let dual = dual_markings(columns, m)?;
    let group = p.pow(columns.len() as u32);
    if set.len() % group != 0 {
        return Ok(None);
    }
    let n = set.n();
    let compatible = |a: usize, b: usize| {
        let diff = (b + n - a) % n;
        first_nonzero_digit_index(diff, p, m).is_some_and(|i| dual.binary_search(&i).is_ok())
    };
    let mut remaining = set.elements().to_vec();
    let Some(groups) = partition_into_cliques(&mut remaining, group, &compatible) else {
        return Ok(None);
    };
    let mut blocks = Vec::with_capacity(groups.len());
    for g in groups {
        let block = IndexSet::new(&modulus, g)?;
        debug_assert!(build_table(&block, p, m, &dual)?.is_valid());
        blocks.push(block);
    }
    Ok(Some(blocks))
}

/// Whether the digit-table of `J` is a stack of valid tables with marked columns `L*`.
pub fn is_block_concatenation_form(
    set: &IndexSet,
    p: usize,
    m: usize,
    columns: &[usize],
) -> Result<bool> {
    Ok(block_partition(set, p, m, columns)?.is_some())
}

fn partition_into_cliques(
    remaining: &mut Vec<usize>,
    size: usize,
    compatible: &impl Fn(usize, usize) -> bool,
) -> Option<Vec<Vec<usize>>> {
    let Some(&anchor) = remaining.first() else {
        return Some(Vec::new());
    };
    let candidates: Vec<usize> = remaining[1..]
        .iter()
        .copied()
        .filter(|&x| compatible(anchor, x))
        .collect();
    let mut chosen = vec![anchor];
    extend_clique(remaining, &candidates, size, &mut chosen, compatible)
}

fn extend_clique(
    remaining: &mut Vec<usize>,
    candidates: &[usize],
    size: usize,
    chosen: &mut Vec<usize>,
    compatible: &impl Fn(usize, usize) -> bool,
) -> Option<Vec<Vec<usize>>> {
    if chosen.len() == size {
        let saved = remaining.clone();
        remaining.retain(|x| !chosen.contains(x));
        let rest = partition_into_cliques(remaining, size, compatible);
        *remaining = saved;
        return rest.map(|mut groups| {
            groups.insert(0, chosen.clone());
            groups
        });
    }
    if chosen.len() + candidates.len() < size {
        return None;
    }
    for (k, &x) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[k + 1..]
            .iter()
            .copied()
            .filter(|&y| compatible(x, y))
            .collect();
        chosen.push(x);
        let found = extend_clique(remaining, &next, size, chosen, compatible);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zn::divisors_proper;

    fn zn(n: usize) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(&zn(n), e.iter().copied()).unwrap()
    }

    fn h(n: usize, e: &[usize]) -> Idempotent {
        Idempotent::new(set(n, e)).unwrap()
    }

    #[test]
    fn eval_examples() {
        let full = h(8, &(0..8).collect::<Vec<_>>());
        assert!((full.eval(0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for m in 1..8 {
            assert!(full.eval(m).norm() < 1e-12);
        }
        let two = h(16, &[0, 4]);
        for m in 0..16 {
            let expected = (Complex64::new(1.0, 0.0)
                + Complex64::from_polar(1.0, TAU * m as f64 / 4.0))
                / 16.0;
            assert!((two.eval(m) - expected).norm() < 1e-12);
        }
        let single = h(12, &[5]);
        for m in 0..12 {
            assert!((single.eval(m).norm() - 1.0 / 12.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_set_divisor_examples() {
        assert_eq!(h(16, &[0, 4]).zero_set_divisors().divisors(), [2]);
        assert_eq!(h(16, &[0, 1, 4, 5]).zero_set_divisors().divisors(), [2, 8]);
        let all = h(12, &(0..12).collect::<Vec<_>>());
        assert_eq!(*all.zero_set_divisors(), divisors_proper(&zn(12)));
    }

    #[test]
    fn zero_set_examples() {
        let two = h(16, &[0, 4]);
        assert_eq!(two.zero_set().elements(), [2, 6, 10, 14]);
        assert_eq!(two.numeric_zero_set(1e-9), two.zero_set());
        assert!(h(16, &[7]).zero_set().is_empty());
        assert_eq!(h(16, &[0, 1, 2, 3]).zero_set().elements(), [4, 8, 12]);
    }

    #[test]
    fn table_path_matches_unfolded_division() {
        // exact divisibility of the unreduced indicator polynomial
        for (n, e) in [
            (16, vec![0, 1, 4, 5]),
            (12, vec![0, 3, 6, 9]),
            (18, vec![1, 2, 7, 13, 14]),
        ] {
            let hh = h(n, &e);
            let poly = hh.indicator_polynomial();
            let direct: Vec<usize> = divisors_proper(&zn(n))
                .divisors()
                .iter()
                .copied()
                .filter(|&k| poly.is_divisible_by_monic(&crate::poly::cyclotomic(n / k)))
                .collect();
            assert_eq!(hh.zero_set_divisors().divisors(), direct.as_slice());
        }
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(4, 1), 0);
        assert_eq!(ramanujan_sum(4, 2), -2);
        assert_eq!(ramanujan_sum(4, 4), 2);
        assert_eq!(ramanujan_sum(1, 7), 1);
        assert_eq!(ramanujan_sum(12, 0), 4);
    }

    #[test]
    fn ramanujan_prime_power_property() {
        // c_{p^s}(n): phi(p^s) if p^s | n, -p^{s-1} if p^{s-1} || n, else 0
        for (p, s) in [(2usize, 1u32), (2, 4), (3, 3), (5, 2), (7, 1)] {
            let q = p.pow(s);
            let low = p.pow(s - 1);
            for k in 0..(3 * q) as i64 {
                let k_u = k as usize;
                let expected = if k_u % q == 0 {
                    euler_phi(q) as i64
                } else if k_u % low == 0 {
                    -(low as i64)
                } else {
                    0
                };
                assert_eq!(ramanujan_sum(q, k), expected, "q={q} k={k}");
            }
        }
    }

    #[test]
    fn prescribe_constructive_examples() {
        let b = SearchBounds::default();
        let d2 = DivisorSet::new(&zn(16), [2]).unwrap();
        assert_eq!(
            prescribe_zero_set(&d2, PrescribeMode::Constructive, &b).unwrap(),
            Some(set(16, &[0, 4]))
        );
        let d28 = DivisorSet::new(&zn(16), [2, 8]).unwrap();
        assert_eq!(
            prescribe_zero_set(&d28, PrescribeMode::Constructive, &b).unwrap(),
            Some(set(16, &[0, 1, 4, 5]))
        );
        let none = DivisorSet::empty(&zn(27));
        assert_eq!(
            prescribe_zero_set(&none, PrescribeMode::Constructive, &b).unwrap(),
            Some(set(27, &[0]))
        );
        let composite = DivisorSet::new(&zn(12), [2]).unwrap();
        assert_eq!(
            prescribe_zero_set(&composite, PrescribeMode::Constructive, &b),
            Err(Error::NotPrimePower(12))
        );
    }

    #[test]
    fn prescribe_exhaustive_examples() {
        let b = SearchBounds::default();
        let z6 = set(6, &[2, 3, 4]);
        let d = DivisorSet::from_zero_set(&z6).unwrap();
        assert_eq!(d.divisors(), [2, 3]);
        assert_eq!(
            prescribe_zero_set(&d, PrescribeMode::Exhaustive, &b).unwrap(),
            None
        );

        let d2 = DivisorSet::new(&zn(16), [2]).unwrap();
        let found = prescribe_zero_set(&d2, PrescribeMode::Exhaustive, &b)
            .unwrap()
            .unwrap();
        assert_eq!(found, set(16, &[0, 4]));

        // no pair works in Z_6 for D = {2}; 1 + x + x^2 = Phi_3 is the first hit
        let d6 = DivisorSet::new(&zn(6), [2]).unwrap();
        let j = prescribe_zero_set(&d6, PrescribeMode::Exhaustive, &b)
            .unwrap()
            .unwrap();
        assert_eq!(j, set(6, &[0, 1, 2]));

        let big = DivisorSet::empty(&zn(30));
        let err = prescribe_zero_set(&big, PrescribeMode::Exhaustive, &b).unwrap_err();
        assert!(err.is_bound_exceeded());
    }

    #[test]
    fn block_form_examples() {
        assert!(is_block_concatenation_form(&set(16, &[0, 1, 4, 5]), 2, 4, &[1, 3]).unwrap());
        assert!(!is_block_concatenation_form(&set(8, &[0, 1, 5, 6]), 2, 3, &[0, 2]).unwrap());
        // two disjoint translates of the minimal solution {0, 4}
        let two_blocks = set(16, &[0, 4, 1, 5]);
        let blocks = block_partition(&two_blocks, 2, 4, &[1]).unwrap().unwrap();
        assert_eq!(blocks, vec![set(16, &[0, 4]), set(16, &[1, 5])]);
        // size not a multiple of p^|L|
        assert!(!is_block_concatenation_form(&set(16, &[0, 4, 1]), 2, 4, &[1]).unwrap());
    }

    #[test]
    fn idempotent_json() {
        let hh = h(16, &[0, 1, 4, 5]);
        let json = serde_json::to_string(&hh).unwrap();
        assert_eq!(json, r#"{"n":16,"elements":[0,1,4,5],"divisors":[2,8]}"#);
        let back: Idempotent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, hh);
        assert!(
            serde_json::from_str::<Idempotent>(r#"{"n":16,"elements":[0,4],"divisors":[4]}"#)
                .is_err()
        );
        let bare: Idempotent = serde_json::from_str(r#"{"n":16,"elements":[0,4]}"#).unwrap();
        assert_eq!(bare.zero_set_divisors().divisors(), [2]);
    }

    #[test]
    fn empty_support_rejected() {
        assert!(Idempotent::new(IndexSet::new(&zn(4), []).unwrap()).is_err());
    }
}
