//! Integer polynomials and cyclotomic polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::zn::{divisors, IndexSet, Modulus};

/// Polynomial over Z, constant term first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coefficients };
        p.trim();
        p
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        IntPolynomial::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        IntPolynomial::new(c)
    }

    /// `sum_{j in J} x^j`.
    pub fn indicator(set: &IndexSet) -> Self {
        let Some(&top) = set.elements().last() else {
            return IntPolynomial::zero();
        };
        let mut c = vec![BigInt::zero(); top + 1];
        for &j in set.elements() {
            c[j] = BigInt::one();
        }
        IntPolynomial::new(c)
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(|c| c.is_zero()) {
            self.coefficients.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }

    /// Quotient and remainder by a monic divisor; exact over Z.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coefficients.len() - 1;
        let mut rem = self.coefficients.clone();
        if rem.len() <= dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[top]);
            if lead.is_zero() {
                continue;
            }
            for (k, dc) in divisor.coefficients[..dd].iter().enumerate() {
                rem[top - dd + k] -= &lead * dc;
            }
            quot[top - dd] = lead;
        }
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    pub fn is_divisible_by_monic(&self, divisor: &IntPolynomial) -> bool {
        self.div_rem_monic(divisor).1.is_zero()
    }

    /// Reduction modulo `x^s - 1`, returned as a dense length-`s` vector.
    pub fn fold(&self, s: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); s];
        for (i, c) in self.coefficients.iter().enumerate() {
            out[i % s] += c;
        }
        out
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The `s`-th cyclotomic polynomial, by dividing `x^s - 1` by `Phi_d` for
/// every proper divisor `d` of `s`.
pub fn cyclotomic(s: usize) -> IntPolynomial {
    assert!(s >= 1, "cyclotomic index must be positive");
    let mut memo = HashMap::new();
    cyclotomic_memo(s, &mut memo)
}

fn cyclotomic_memo(s: usize, memo: &mut HashMap<usize, IntPolynomial>) -> IntPolynomial {
    if let Some(p) = memo.get(&s) {
        return p.clone();
    }
    let mut acc = IntPolynomial::x_pow_minus_one(s);
    for d in divisors(s) {
        if d == s {
            continue;
        }
        let phi_d = cyclotomic_memo(d, memo);
        let (q, r) = acc.div_rem_monic(&phi_d);
        debug_assert!(r.is_zero());
        acc = q;
    }
    memo.insert(s, acc.clone());
    acc
}

/// Cyclotomic polynomials `Phi_{N/k}` for every proper divisor `k` of N,
/// used to decide `Phi_{N/k} | p_J` exactly.
#[derive(Debug)]
pub struct CyclotomicTable {
    n: usize,
    /// (k, s = N/k, Phi_s as machine integers when they fit)
    entries: Vec<CyclotomicEntry>,
}

#[derive(Debug)]
struct CyclotomicEntry {
    k: usize,
    s: usize,
    exact: IntPolynomial,
    small: Option<Vec<i64>>,
}

static TABLES: OnceLock<RwLock<HashMap<usize, Arc<CyclotomicTable>>>> = OnceLock::new();

impl CyclotomicTable {
    /// Shared, lazily built table for `modulus`.
    pub fn for_modulus(modulus: &Modulus) -> Arc<CyclotomicTable> {
        let tables = TABLES.get_or_init(Default::default);
        if let Some(t) = tables
            .read()
            .expect("table cache poisoned")
            .get(&modulus.n())
        {
            return Arc::clone(t);
        }
        let built = Arc::new(CyclotomicTable::build(modulus));
        let mut guard = tables.write().expect("table cache poisoned");
        Arc::clone(guard.entry(modulus.n()).or_insert(built))
    }

    fn build(modulus: &Modulus) -> CyclotomicTable {
        let n = modulus.n();
        let mut memo = HashMap::new();
        let entries = divisors(n)
            .into_iter()
            .filter(|&k| k < n)
            .map(|k| {
                let s = n / k;
                let exact = cyclotomic_memo(s, &mut memo);
                let small = exact
                    .coefficients()
                    .iter()
                    .map(|c| c.to_i64())
                    .collect::<Option<Vec<_>>>();
                CyclotomicEntry { k, s, exact, small }
            })
            .collect();
        CyclotomicTable { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted `k` with `Phi_{N/k}` dividing `sum_{j in J} x^j`.
    pub fn zero_set_divisors(&self, elements: &[usize]) -> Vec<usize> {
        let mut folded = Vec::new();
        self.entries
            .iter()
            .filter(|e| e.divides_indicator(elements, &mut folded))
            .map(|e| e.k)
            .collect()
    }
}

impl CyclotomicEntry {
    fn divides_indicator(&self, elements: &[usize], folded: &mut Vec<i64>) -> bool {
        folded.clear();
        folded.resize(self.s, 0);
        for &j in elements {
            folded[j % self.s] += 1;
        }
        if let Some(small) = &self.small {
            if let Some(zero) = remainder_is_zero_i64(folded, small) {
                return zero;
            }
        }
        // overflow: `folded` was partially reduced, start over exactly
        let mut exact = vec![BigInt::zero(); self.s];
        for &j in elements {
            exact[j % self.s] += 1;
        }
        IntPolynomial::new(exact).is_divisible_by_monic(&self.exact)
    }
}

/// Long division by a monic divisor in machine integers. `None` on overflow.
fn remainder_is_zero_i64(rem: &mut [i64], divisor: &[i64]) -> Option<bool> {
    let dd = divisor.len() - 1;
    if rem.len() > dd {
        for top in (dd..rem.len()).rev() {
            let lead = rem[top];
            if lead == 0 {
                continue;
            }
            rem[top] = 0;
            for (k, &dc) in divisor[..dd].iter().enumerate() {
                let slot = &mut rem[top - dd + k];
                *slot = slot.checked_sub(lead.checked_mul(dc)?)?;
            }
        }
    }
    Some(rem.iter().all(|&c| c == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(8), IntPolynomial::from_i64(&[1, 0, 0, 0, 1]));
        for p in [2usize, 3, 5, 7, 11, 13] {
            assert_eq!(cyclotomic(p), IntPolynomial::from_i64(&vec![1; p]));
        }
        assert_eq!(
            cyclotomic(6),
            IntPolynomial::from_i64(&[1, -1, 1]),
            "Phi_6 = x^2 - x + 1"
        );
        // first cyclotomic with a coefficient of magnitude 2
        let phi105 = cyclotomic(105);
        assert_eq!(phi105.degree(), Some(48));
        assert!(phi105.coefficients().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_pow_minus_one() {
        for s in 1..60 {
            let product = divisors(s)
                .into_iter()
                .fold(IntPolynomial::from_i64(&[1]), |acc, d| {
                    acc.mul(&cyclotomic(d))
                });
            assert_eq!(product, IntPolynomial::x_pow_minus_one(s), "s={s}");
        }
    }

    #[test]
    fn division_identity() {
        let a = IntPolynomial::from_i64(&[3, -2, 0, 5, 1, 7]);
        let b = IntPolynomial::from_i64(&[-4, 2, 1]);
        let (q, r) = a.div_rem_monic(&b);
        let back = q.mul(&b);
        let mut sum = back.coefficients().to_vec();
        sum.resize(a.coefficients().len(), BigInt::zero());
        for (i, c) in r.coefficients().iter().enumerate() {
            sum[i] += c;
        }
        assert_eq!(IntPolynomial::new(sum), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn display() {
        assert_eq!(cyclotomic(6).to_string(), "x^2 - x + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
