//! Arithmetic on the cyclic group Z_N: moduli, index sets, divisor sets,
//! gcd classes, base-p digits and bracelets.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bounds::MAX_MODULUS;
use crate::error::{Error, Result};

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn euler_phi(n: usize) -> usize {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: usize) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut a = 1;
    while a * a <= n {
        if n % a == 0 {
            small.push(a);
            if a * a != n {
                large.push(n / a);
            }
        }
        a += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: usize,
    factors: Vec<(usize, u32)>,
}

impl Modulus {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&n) {
            return Err(Error::InvalidModulus(n as u64, MAX_MODULUS));
        }
        Ok(Modulus {
            n,
            factors: factorize(n),
        })
    }

    /// `p^m`, rejecting composite `p`.
    pub fn prime_power(p: usize, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = p
            .checked_pow(m)
            .ok_or(Error::InvalidModulus(u64::MAX, MAX_MODULUS))?;
        Modulus::new(n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factorization(&self) -> &[(usize, u32)] {
        &self.factors
    }

    /// `(p, M)` when N = p^M.
    pub fn as_prime_power(&self) -> Option<(usize, u32)> {
        match self.factors.as_slice() {
            [(p, m)] => Some((*p, *m)),
            _ => None,
        }
    }

    pub fn is_prime(&self) -> bool {
        self.as_prime_power().is_some_and(|(_, m)| m == 1)
    }

    /// Product of two distinct primes.
    pub fn is_two_prime_product(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1), (_, 1)])
    }

    pub fn gcd_class(&self, i: usize) -> usize {
        gcd_class(i, self)
    }

    pub fn proper_divisors(&self) -> DivisorSet {
        divisors_proper(self)
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.n)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// `{a : a | N, 1 <= a < N}`, ascending.
pub fn divisors_proper(n: &Modulus) -> DivisorSet {
    let mut divs = divisors(n.n);
    divs.pop();
    DivisorSet {
        modulus: n.clone(),
        divisors: divs,
    }
}

/// `gcd(i, N)`, with 0 mapped to N itself.
pub fn gcd_class(i: usize, n: &Modulus) -> usize {
    let r = i % n.n;
    if r == 0 {
        n.n
    } else {
        gcd(r, n.n)
    }
}

/// Base-`p` digits of `z`, least significant first.
pub fn digits_base_p(z: usize, p: usize, m: usize) -> Result<Vec<usize>> {
    let out_of_range = Error::DigitRange { z, p, m };
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let bound = p.checked_pow(m as u32).ok_or(out_of_range.clone())?;
    if z >= bound {
        return Err(out_of_range);
    }
    let mut rest = z;
    let mut digits = Vec::with_capacity(m);
    for _ in 0..m {
        digits.push(rest % p);
        rest /= p;
    }
    Ok(digits)
}

/// Index `i` with `gcd(z, p^m) = p^i`, or `None` for `z = 0`.
pub fn first_nonzero_digit_index(z: usize, p: usize, m: usize) -> Option<usize> {
    debug_assert!(p.checked_pow(m as u32).is_none_or(|b| z < b));
    if z == 0 {
        return None;
    }
    let mut rest = z;
    let mut i = 0;
    while rest % p == 0 {
        rest /= p;
        i += 1;
    }
    Some(i)
}

/// Finite subset of Z_N, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IndexSetRepr", into = "IndexSetRepr")]
pub struct IndexSet {
    modulus: Modulus,
    elements: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct IndexSetRepr {
    n: usize,
    elements: Vec<usize>,
}

impl TryFrom<IndexSetRepr> for IndexSet {
    type Error = Error;

    fn try_from(r: IndexSetRepr) -> Result<Self> {
        IndexSet::new(&Modulus::new(r.n)?, r.elements)
    }
}

impl From<IndexSet> for IndexSetRepr {
    fn from(s: IndexSet) -> Self {
        IndexSetRepr {
            n: s.modulus.n,
            elements: s.elements,
        }
    }
}

impl IndexSet {
    /// Rejects out-of-range and repeated elements; input order is irrelevant.
    pub fn new(modulus: &Modulus, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0]));
            }
        }
        if let Some(&last) = elements.last() {
            if last >= modulus.n {
                return Err(Error::ElementOutOfRange {
                    element: last,
                    n: modulus.n,
                });
            }
        }
        Ok(IndexSet {
            modulus: modulus.clone(),
            elements,
        })
    }

    /// Reduces every element mod N and drops repeats.
    pub fn from_residues(modulus: &Modulus, elements: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = elements.into_iter().map(|e| e % modulus.n).collect();
        IndexSet {
            modulus: modulus.clone(),
            elements: set.into_iter().collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(modulus: &Modulus, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.last().is_none_or(|&e| e < modulus.n));
        IndexSet {
            modulus: modulus.clone(),
            elements,
        }
    }

    pub fn full(modulus: &Modulus) -> Self {
        IndexSet::from_sorted_unchecked(modulus, (0..modulus.n).collect())
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> usize {
        self.modulus.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `{x + t mod N}`.
    pub fn translate(&self, t: usize) -> Self {
        let n = self.modulus.n;
        IndexSet::from_residues(
            &self.modulus,
            self.elements.iter().map(|&x| (x + t % n) % n),
        )
    }

    /// Reversal `x -> -x mod N`.
    pub fn negate(&self) -> Self {
        let n = self.modulus.n;
        IndexSet::from_residues(&self.modulus, self.elements.iter().map(|&x| (n - x) % n))
    }

    pub fn complement(&self) -> Self {
        let elements = (0..self.modulus.n).filter(|&x| !self.contains(x)).collect();
        IndexSet::from_sorted_unchecked(&self.modulus, elements)
    }

    /// Sorted distinct gcd classes of the nonzero differences `a - b`.
    pub fn difference_classes(&self) -> Vec<usize> {
        let n = self.modulus.n;
        let mut seen = BTreeSet::new();
        for (k, &a) in self.elements.iter().enumerate() {
            for &b in &self.elements[k + 1..] {
                seen.insert(gcd(b - a, n));
            }
        }
        seen.into_iter().collect()
    }

    pub(crate) fn same_modulus(&self, other: &IndexSet) -> Result<()> {
        if self.modulus.n != other.modulus.n {
            Err(Error::ModulusMismatch(self.modulus.n, other.modulus.n))
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in Z_{}", self.elements, self.modulus.n)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Subset of the proper divisors of N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DivisorSet {
    modulus: Modulus,
    divisors: Vec<usize>,
}

impl DivisorSet {
    pub fn new(modulus: &Modulus, divisors: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = divisors.into_iter().collect();
        for &d in &set {
            if d == 0 || d >= modulus.n || modulus.n % d != 0 {
                return Err(Error::NotAProperDivisor(d, modulus.n));
            }
        }
        Ok(DivisorSet {
            modulus: modulus.clone(),
            divisors: set.into_iter().collect(),
        })
    }

    pub fn empty(modulus: &Modulus) -> Self {
        DivisorSet {
            modulus: modulus.clone(),
            divisors: Vec::new(),
        }
    }

    /// `{p^l : l in columns}` for N = p^M.
    pub fn from_exponents(modulus: &Modulus, columns: &[usize]) -> Result<Self> {
        let (p, m) = modulus
            .as_prime_power()
            .ok_or(Error::NotPrimePower(modulus.n))?;
        let mut divs = Vec::with_capacity(columns.len());
        for &l in columns {
            if l >= m as usize {
                return Err(Error::ColumnOutOfRange {
                    column: l,
                    m: m as usize,
                });
            }
            divs.push(p.pow(l as u32));
        }
        DivisorSet::new(modulus, divs)
    }

    /// Divisor set whose classes make up exactly `zero_set`, if it is such a union.
    pub fn from_zero_set(zero_set: &IndexSet) -> Result<Self> {
        let modulus = zero_set.modulus();
        let classes: BTreeSet<usize> = zero_set
            .elements()
            .iter()
            .map(|&i| gcd_class(i, modulus))
            .collect();
        if classes.contains(&modulus.n) {
            return Err(Error::NotDivisorClassUnion("0 lies in no gcd class".into()));
        }
        let d = DivisorSet::new(modulus, classes)?;
        if d.zero_set() != *zero_set {
            return Err(Error::NotDivisorClassUnion(format!(
                "{zero_set} covers only part of the classes {:?}",
                d.divisors
            )));
        }
        Ok(d)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn divisors(&self) -> &[usize] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.divisors.binary_search(&k).is_ok()
    }

    pub fn is_subset(&self, other: &DivisorSet) -> bool {
        self.divisors.iter().all(|&d| other.contains(d))
    }

    /// Proper divisors of N not in this set.
    pub fn complement(&self) -> Self {
        let divisors = divisors_proper(&self.modulus)
            .divisors
            .into_iter()
            .filter(|&d| !self.contains(d))
            .collect();
        DivisorSet {
            modulus: self.modulus.clone(),
            divisors,
        }
    }

    /// `{i in [1, N-1] : gcd(i, N) in D}`.
    pub fn zero_set(&self) -> IndexSet {
        let elements = (1..self.modulus.n)
            .filter(|&i| self.contains(gcd(i, self.modulus.n)))
            .collect();
        IndexSet::from_sorted_unchecked(&self.modulus, elements)
    }

    /// `log_p` of each divisor for N = p^M.
    pub fn exponents(&self) -> Result<Vec<usize>> {
        let (p, _) = self
            .modulus
            .as_prime_power()
            .ok_or(Error::NotPrimePower(self.modulus.n))?;
        Ok(self
            .divisors
            .iter()
            .map(|&d| first_nonzero_digit_index(d, p, usize::BITS as usize).unwrap_or(0))
            .collect())
    }
}

impl fmt::Debug for DivisorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{:?} of {}", self.divisors, self.modulus.n)
    }
}

/// Orbit of `set` under translation and reversal, sorted and deduplicated.
pub fn bracelet(set: &IndexSet) -> Vec<IndexSet> {
    let n = set.n();
    let reversed = set.negate();
    let orbit: BTreeSet<Vec<usize>> = (0..n)
        .flat_map(|t| [set.translate(t), reversed.translate(t)])
        .map(|s| s.elements)
        .collect();
    orbit
        .into_iter()
        .map(|e| IndexSet::from_sorted_unchecked(set.modulus(), e))
        .collect()
}
