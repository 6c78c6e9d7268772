//! Orthogonal sampling sets, unitary pairs, Fourier submatrices, interpolating
//! bases and two closed-form families of idempotents.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::SearchBounds;
use crate::digit_table::{canonical_valid_table, dual_markings};
use crate::error::{Error, Result};
use crate::graph::{build_graph, clique_of_size};
use crate::idempotent::Idempotent;
use crate::zn::{gcd, IndexSet, Modulus};

/// Numeric tolerance for the linear-algebra checks, relative to the natural
/// scale of each quantity.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

/// Below this ratio of extreme singular values a submatrix counts as singular.
const SINGULAR_RATIO: f64 = 1e-10;

fn omega(n: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (k % n) as f64 / n as f64)
}

/// `E_I^T F^{-1} E_J`, entry `(a, b) = exp(2 pi i i_a j_b / N) / N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSubmatrix {
    rows: IndexSet,
    cols: IndexSet,
    entries: DMatrix<Complex64>,
}

impl FourierSubmatrix {
    pub fn new(rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        rows.same_modulus(cols)?;
        let n = rows.n();
        let entries = DMatrix::from_fn(rows.len(), cols.len(), |a, b| {
            omega(n, rows.elements()[a] * cols.elements()[b]) / n as f64
        });
        Ok(FourierSubmatrix {
            rows: rows.clone(),
            cols: cols.clone(),
            entries,
        })
    }

    pub fn rows(&self) -> &IndexSet {
        &self.rows
    }

    pub fn cols(&self) -> &IndexSet {
        &self.cols
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.rows.n()
    }

    /// `S S^*`.
    pub fn gram(&self) -> DMatrix<Complex64> {
        &self.entries * self.entries.adjoint()
    }

    /// Descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .entries
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// `sigma_max / sigma_min`; infinite for singular or non-square matrices.
    pub fn condition_number(&self) -> f64 {
        if self.entries.nrows() != self.entries.ncols() || self.entries.is_empty() {
            return f64::INFINITY;
        }
        let s = self.singular_values();
        let (max, min) = (s[0], s[s.len() - 1]);
        if min <= max * SINGULAR_RATIO {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// The entries scaled by N, i.e. the corresponding block of the unnormalized matrix.
    pub fn scaled(&self) -> DMatrix<Complex64> {
        &self.entries * Complex64::new(self.n() as f64, 0.0)
    }
}

/// Exact check: `|I| = |J|` and every nonzero difference of `I` lies in the
/// zero set of `h_J`.
pub fn is_orthogonal_sampling_set(samples: &IndexSet, freqs: &IndexSet) -> Result<bool> {
    samples.same_modulus(freqs)?;
    if samples.len() != freqs.len() {
        return Ok(false);
    }
    let h = Idempotent::new(freqs.clone())?;
    let d = h.zero_set_divisors();
    Ok(samples.difference_classes().iter().all(|&k| d.contains(k)))
}

/// The canonical witness for prime-power N; a clique search in the
/// difference graph of `D(h_J)` otherwise.
pub fn find_orthogonal_sampling_set(
    freqs: &IndexSet,
    bounds: &SearchBounds,
) -> Result<Option<IndexSet>> {
    let h = Idempotent::new(freqs.clone())?;
    let d = h.zero_set_divisors();
    let modulus = freqs.modulus();
    if let Some((p, m)) = modulus.as_prime_power() {
        let marks = d.exponents()?;
        if freqs.len() != p.pow(marks.len() as u32) {
            return Ok(None);
        }
        return canonical_valid_table(p, m as usize, &marks)?
            .index_set()
            .map(Some);
    }
    if freqs.len() == 1 {
        return IndexSet::new(modulus, [0]).map(Some);
    }
    clique_of_size(&build_graph(d)?, freqs.len(), bounds)
}

/// Canonical tables for `L` and its dual.
pub fn make_unitary_pair(p: usize, m: usize, columns: &[usize]) -> Result<(IndexSet, IndexSet)> {
    let rows = canonical_valid_table(p, m, columns)?.index_set()?;
    let cols = canonical_valid_table(p, m, &dual_markings(columns, m)?)?.index_set()?;
    Ok((rows, cols))
}

/// Exact unitarity (up to the factor `|J|/N^2`) of the submatrix.
pub fn is_unitary_pair(rows: &IndexSet, cols: &IndexSet) -> Result<bool> {
    is_orthogonal_sampling_set(rows, cols)
}

/// Floating-point check that `S S^* = (|J|/N^2) Id`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramCheck {
    /// `|J| / N^2`.
    pub scale: f64,
    pub offdiag_max: f64,
    pub diag_max_error: f64,
    pub unitary: bool,
}

pub fn gram_check(rows: &IndexSet, cols: &IndexSet) -> Result<GramCheck> {
    let s = FourierSubmatrix::new(rows, cols)?;
    let g = s.gram();
    let n = rows.n() as f64;
    let scale = cols.len() as f64 / (n * n);
    let mut offdiag_max: f64 = 0.0;
    let mut diag_max_error: f64 = 0.0;
    for a in 0..g.nrows() {
        for b in 0..g.ncols() {
            if a == b {
                diag_max_error = diag_max_error.max((g[(a, b)] - scale).norm());
            } else {
                offdiag_max = offdiag_max.max(g[(a, b)].norm());
            }
        }
    }
    let unitary = rows.len() == cols.len()
        && offdiag_max < NUMERIC_TOLERANCE * scale
        && diag_max_error < NUMERIC_TOLERANCE * scale;
    Ok(GramCheck {
        scale,
        offdiag_max,
        diag_max_error,
        unitary,
    })
}

/// Basis `u_i` of `B^J` with `u_i(i') = delta_{i i'}` on the sample set.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolatingBasis {
    pub sample_set: IndexSet,
    /// One length-N vector per sample point, in the order of `sample_set`.
    pub vectors: Vec<Vec<Complex64>>,
    pub condition_number: f64,
}

impl InterpolatingBasis {
    pub fn norms(&self) -> Vec<f64> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect()
    }

    /// `sum_i samples[i] u_i`.
    pub fn combine(&self, samples: &[Complex64]) -> Result<Vec<Complex64>> {
        if samples.len() != self.vectors.len() {
            return Err(Error::InvalidArgument(format!(
                "{} samples for {} sample points",
                samples.len(),
                self.vectors.len()
            )));
        }
        let n = self.sample_set.n();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (c, u) in samples.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(u) {
                *o += c * x;
            }
        }
        Ok(out)
    }
}

/// Columns of `F^{-1} E_J (E_I^T F^{-1} E_J)^{-1}`.
pub fn interpolating_basis(samples: &IndexSet, freqs: &IndexSet) -> Result<InterpolatingBasis> {
    let s = FourierSubmatrix::new(samples, freqs)?;
    let singular = |sigma_min: f64| Error::SingularSubmatrix {
        rows: samples.elements().to_vec(),
        cols: freqs.elements().to_vec(),
        sigma_min,
    };
    if samples.len() != freqs.len() || samples.is_empty() {
        return Err(singular(0.0));
    }
    let sv = s.singular_values();
    let (max, min) = (sv[0], sv[sv.len() - 1]);
    if min <= max * SINGULAR_RATIO {
        return Err(singular(min));
    }
    let inverse = s
        .entries
        .clone()
        .try_inverse()
        .ok_or_else(|| singular(min))?;
    let n = samples.n();
    let synth = DMatrix::from_fn(n, freqs.len(), |row, b| {
        omega(n, row * freqs.elements()[b]) / n as f64
    });
    let u = synth * inverse;
    let vectors = (0..u.ncols())
        .map(|c| u.column(c).iter().copied().collect())
        .collect();
    Ok(InterpolatingBasis {
        sample_set: samples.clone(),
        vectors,
        condition_number: max / min,
    })
}

/// `u_i = tau^i h / h(0)` for an orthogonal sampling set `I` of `B^J`.
pub fn shifted_idempotent_basis(
    samples: &IndexSet,
    freqs: &IndexSet,
) -> Result<Vec<Vec<Complex64>>> {
    samples.same_modulus(freqs)?;
    let h = Idempotent::new(freqs.clone())?;
    let n = freqs.n();
    let values = h.values();
    let h0 = h.value_at_zero();
    Ok(samples
        .elements()
        .iter()
        .map(|&i| (0..n).map(|k| values[(k + n - i) % n] / h0).collect())
        .collect())
}

/// Recovers `f` in `B^J` from its values on `I`.
pub fn reconstruct(
    samples: &[Complex64],
    sample_set: &IndexSet,
    freqs: &IndexSet,
) -> Result<Vec<Complex64>> {
    interpolating_basis(sample_set, freqs)?.combine(samples)
}

/// `F^{-1} E_J c` for a spectrum `c` drawn uniformly from the unit square.
pub fn random_bandlimited(freqs: &IndexSet, rng: &mut impl Rng) -> Vec<Complex64> {
    let n = freqs.n();
    let spectrum: Vec<Complex64> = freqs
        .elements()
        .iter()
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    (0..n)
        .map(|k| {
            freqs
                .elements()
                .iter()
                .zip(&spectrum)
                .map(|(&j, c)| c * omega(n, k * j))
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// Max over `k` of `|a_k - b_k|`, divided by max `|b_k|` (or 1 if `b` vanishes).
pub fn relative_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// JSON report for one `(I, J)` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub n: usize,
    pub unitary: bool,
    pub gram_offdiag_max: f64,
    /// Largest Euclidean norm among the interpolating basis vectors; `null`
    /// when the submatrix is singular or not square.
    pub witness_basis_norm: Option<f64>,
}

pub fn pair_report(rows: &IndexSet, cols: &IndexSet) -> Result<PairReport> {
    let unitary = is_unitary_pair(rows, cols)?;
    let gram = gram_check(rows, cols)?;
    let witness_basis_norm = match interpolating_basis(rows, cols) {
        Ok(b) => b.norms().into_iter().reduce(f64::max),
        Err(Error::SingularSubmatrix { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(PairReport {
        i: rows.elements().to_vec(),
        j: cols.elements().to_vec(),
        n: rows.n(),
        unitary,
        gram_offdiag_max: gram.offdiag_max,
        witness_basis_norm,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilyKind {
    /// `J = {offset, ..., offset + d - 1}`.
    Consecutive { d: usize, offset: usize },
    /// `J = {offset + k s : 0 <= k < d}`.
    Progression { s: usize, d: usize, offset: usize },
}

/// An idempotent with a closed form, its zero set and sampling set.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyRecord {
    pub kind: FamilyKind,
    pub j: IndexSet,
    pub zero_set: IndexSet,
    pub sampling_set: Option<IndexSet>,
}

impl FamilyRecord {
    pub fn n(&self) -> usize {
        self.j.n()
    }

    /// `h_J(m)` from the closed form.
    pub fn eval_closed_form(&self, m: usize) -> Complex64 {
        let n = self.n();
        let (step, d, offset) = match self.kind {
            FamilyKind::Consecutive { d, offset } => (1, d, offset),
            FamilyKind::Progression { s, d, offset } => (s, d, offset),
        };
        let m = m % n;
        let shift = omega(n, m * (offset % n));
        let a = (m * (step % n)) % n;
        if a == 0 {
            return shift * d as f64 / n as f64;
        }
        let theta = PI * a as f64 / n as f64;
        let ratio = (theta * d as f64).sin() / theta.sin();
        shift * Complex64::from_polar(ratio, theta * (d as f64 - 1.0)) / n as f64
    }
}

/// `J` = `d` consecutive residues from `offset`. The zero set is the nonzero
/// multiples of `N / gcd(d, N)`; `{0} ∪ Z` samples iff `d | N`.
pub fn consecutive_family(modulus: &Modulus, d: usize, offset: usize) -> Result<FamilyRecord> {
    let n = modulus.n();
    if d == 0 || d > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= d <= {n}, got {d}"
        )));
    }
    let j = IndexSet::new(modulus, (0..d).map(|k| (offset + k) % n))?;
    let step = n / gcd(d, n);
    let zero_set = IndexSet::new(modulus, (step..n).step_by(step))?;
    let sampling_set = if n % d == 0 {
        Some(IndexSet::new(modulus, (0..n).step_by(step))?)
    } else {
        None
    };
    Ok(FamilyRecord {
        kind: FamilyKind::Consecutive { d, offset },
        j,
        zero_set,
        sampling_set,
    })
}

/// `J = {offset + k s}`. With `s0 = gcd(s, N)` and `g = gcd(s d, N)` the zero
/// set is the multiples of `N/g` that are not multiples of `N/s0`, and
/// `(N/g) {0, ..., d-1}` samples iff `g = s0 d`, i.e. `d | N/s0`.
pub fn progression_family(
    modulus: &Modulus,
    s: usize,
    d: usize,
    offset: usize,
) -> Result<FamilyRecord> {
    let n = modulus.n();
    let s0 = gcd(s % n, n);
    let period = n / s0;
    if d == 0 || d > period {
        return Err(Error::InvalidArgument(format!(
            "step {s} repeats after {period} terms, so d = {d} gives repeated elements"
        )));
    }
    let j = IndexSet::new(modulus, (0..d).map(|k| (offset + k * (s % n)) % n))?;
    let g = gcd((s % n) * d % n, n);
    let g = if g == 0 { n } else { g };
    let outer = n / g;
    let zero_set = IndexSet::new(
        modulus,
        (outer..n).step_by(outer).filter(|m| m % period != 0),
    )?;
    let sampling_set = if g == s0 * d {
        Some(IndexSet::new(modulus, (0..d).map(|k| k * outer))?)
    } else {
        None
    };
    Ok(FamilyRecord {
        kind: FamilyKind::Progression { s, d, offset },
        j,
        zero_set,
        sampling_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zn(n: usize) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn set(n: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(&zn(n), e.iter().copied()).unwrap()
    }

    #[test]
    fn sampling_set_examples() {
        assert!(
            is_orthogonal_sampling_set(&set(16, &[0, 2, 8, 10]), &set(16, &[0, 1, 4, 5])).unwrap()
        );
        assert!(is_orthogonal_sampling_set(&set(4, &[0]), &set(4, &[0])).unwrap());
        let i = set(16, &[0, 1, 2, 3]);
        let j = set(16, &[0, 1, 4, 5]);
        assert!(!is_orthogonal_sampling_set(&i, &j).unwrap());
        assert!(!gram_check(&i, &j).unwrap().unitary);
        assert_eq!(
            is_orthogonal_sampling_set(&set(8, &[0]), &set(16, &[0])),
            Err(Error::ModulusMismatch(8, 16))
        );
    }

    #[test]
    fn find_examples() {
        let b = SearchBounds::default();
        assert_eq!(
            find_orthogonal_sampling_set(&set(16, &[0, 1, 4, 5]), &b).unwrap(),
            Some(set(16, &[0, 2, 8, 10]))
        );
        assert_eq!(
            find_orthogonal_sampling_set(&set(8, &[0, 1, 5, 6]), &b).unwrap(),
            None
        );
        for n in [5usize, 12, 16, 30] {
            assert_eq!(
                find_orthogonal_sampling_set(&set(n, &[3]), &b).unwrap(),
                Some(set(n, &[0]))
            );
        }
        let general = find_orthogonal_sampling_set(&set(12, &[0, 1, 2]), &b)
            .unwrap()
            .unwrap();
        assert!(is_orthogonal_sampling_set(&general, &set(12, &[0, 1, 2])).unwrap());
        assert_eq!(general, set(12, &[0, 4, 8]));
    }

    #[test]
    fn find_agrees_with_exhaustive_search() {
        // J has a sampling set iff some |J|-subset of Z_N passes the exact check
        let b = SearchBounds::default();
        for n in [6usize, 8, 9, 10, 12] {
            for k in 1..=n / 2 {
                combin::for_each(n, k, |jc| {
                    let j = set(n, jc);
                    let found = find_orthogonal_sampling_set(&j, &b).unwrap();
                    let mut any = false;
                    combin::for_each(n, k, |ic| {
                        any = any || is_orthogonal_sampling_set(&set(n, ic), &j).unwrap()
                    });
                    assert_eq!(found.is_some(), any, "J={j}");
                    if let Some(i) = found {
                        assert!(is_orthogonal_sampling_set(&i, &j).unwrap());
                    }
                });
            }
        }
    }

    #[test]
    fn unitary_pair_examples() {
        let (i, j) = make_unitary_pair(2, 4, &[1, 3]).unwrap();
        assert_eq!(
            (i.elements(), j.elements()),
            (&[0, 2, 8, 10][..], &[0, 1, 4, 5][..])
        );
        let (i0, j0) = make_unitary_pair(2, 4, &[]).unwrap();
        assert_eq!((i0.elements(), j0.elements()), (&[0][..], &[0][..]));
        let (i3, j3) = make_unitary_pair(3, 2, &[0]).unwrap();
        assert_eq!(
            (i3.elements(), j3.elements()),
            (&[0, 1, 2][..], &[0, 3, 6][..])
        );
        assert!(is_unitary_pair(&i3, &j3).unwrap());
        assert!(gram_check(&i3, &j3).unwrap().unitary);

        let dft = FourierSubmatrix::new(&set(16, &[0, 4, 8, 12]), &set(16, &[0, 1, 2, 3])).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert!((dft.scaled()[(a, b)] - omega(4, a * b)).norm() < 1e-12);
            }
        }
        assert!(is_unitary_pair(&set(16, &[0, 4, 8, 12]), &set(16, &[0, 1, 2, 3])).unwrap());
        assert!(!is_unitary_pair(&set(4, &[0, 1]), &set(4, &[0, 1])).unwrap());
    }

    #[test]
    fn worked_matrix_matches_display() {
        let s = FourierSubmatrix::new(&set(16, &[0, 2, 8, 10]), &set(16, &[0, 1, 4, 5])).unwrap();
        let w = omega(8, 1);
        let one = Complex64::new(1.0, 0.0);
        let expected = [
            [one, one, one, one],
            [one, w, -one, -w],
            [one, -one, one, -one],
            [one, -w, -one, w],
        ];
        for a in 0..4 {
            for b in 0..4 {
                assert!((s.entries()[(a, b)] - expected[a][b] / 16.0).norm() < 1e-12);
            }
        }
        let g = gram_check(s.rows(), s.cols()).unwrap();
        assert!(g.unitary);
        assert!((g.scale - 4.0 / 256.0).abs() < 1e-15);
    }

    #[test]
    fn exact_and_numeric_verdicts_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let n = rng.random_range(2..=40usize);
            let k = rng.random_range(1..=n.min(8));
            let pick = |rng: &mut ChaCha8Rng| {
                let v = rand::seq::index::sample(rng, n, k).into_vec();
                IndexSet::new(&zn(n), v).unwrap()
            };
            let (i, j) = (pick(&mut rng), pick(&mut rng));
            assert_eq!(
                is_unitary_pair(&i, &j).unwrap(),
                gram_check(&i, &j).unwrap().unitary,
                "{i} {j}"
            );
            assert_eq!(
                is_unitary_pair(&i, &j).unwrap(),
                is_unitary_pair(&j, &i).unwrap()
            );
        }
    }

    #[test]
    fn interpolating_basis_examples() {
        let (i, j) = (set(16, &[0, 2, 8, 10]), set(16, &[0, 1, 4, 5]));
        let basis = interpolating_basis(&i, &j).unwrap();
        for norm in basis.norms() {
            assert!((norm * norm - 4.0).abs() < 1e-9);
        }
        for (a, u) in basis.vectors.iter().enumerate() {
            for (b, &x) in i.elements().iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                assert!((u[x] - target).norm() < 1e-9);
            }
        }
        let shifted = shifted_idempotent_basis(&i, &j).unwrap();
        for (u, v) in basis.vectors.iter().zip(&shifted) {
            assert!(relative_error(u, v) < 1e-9);
        }

        let full = IndexSet::full(&zn(6));
        let std_basis = interpolating_basis(&full, &full).unwrap();
        for (a, u) in std_basis.vectors.iter().enumerate() {
            for (k, x) in u.iter().enumerate() {
                let target = if a == k { 1.0 } else { 0.0 };
                assert!((x - target).norm() < 1e-9);
            }
        }

        let cons = consecutive_family(&zn(16), 4, 0).unwrap();
        let cons_basis = interpolating_basis(cons.sampling_set.as_ref().unwrap(), &cons.j).unwrap();
        let h = Idempotent::new(cons.j.clone()).unwrap();
        for (&s, u) in cons
            .sampling_set
            .as_ref()
            .unwrap()
            .elements()
            .iter()
            .zip(&cons_basis.vectors)
        {
            for k in 0..16 {
                let expected = cons.eval_closed_form((k + 16 - s) % 16) / h.value_at_zero();
                assert!((u[k] - expected).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn singular_pairs_are_reported() {
        let err = interpolating_basis(&set(4, &[0, 2]), &set(4, &[0, 2])).unwrap_err();
        match err {
            Error::SingularSubmatrix {
                rows,
                cols,
                sigma_min,
            } => {
                assert_eq!(rows, [0, 2]);
                assert_eq!(cols, [0, 2]);
                assert!(sigma_min < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        let report = pair_report(&set(4, &[0, 2]), &set(4, &[0, 2])).unwrap();
        assert_eq!(report.witness_basis_norm, None);
        assert!(!report.unitary);
    }

    #[test]
    fn invertible_non_unitary_pair() {
        let (i, j) = (set(4, &[0, 1]), set(4, &[0, 1]));
        let basis = interpolating_basis(&i, &j).unwrap();
        assert!(basis.condition_number.is_finite() && basis.condition_number > 1.0);
        let f = random_bandlimited(&j, &mut ChaCha8Rng::seed_from_u64(1));
        let samples: Vec<Complex64> = i.elements().iter().map(|&x| f[x]).collect();
        assert!(relative_error(&basis.combine(&samples).unwrap(), &f) < 1e-9);
    }

    #[test]
    fn reconstruction_examples() {
        let (i, j) = (set(16, &[0, 2, 8, 10]), set(16, &[0, 1, 4, 5]));
        let h = Idempotent::new(j.clone()).unwrap().values();
        let samples: Vec<Complex64> = i.elements().iter().map(|&x| h[x]).collect();
        assert!(relative_error(&reconstruct(&samples, &i, &j).unwrap(), &h) < 1e-9);
        let zero = reconstruct(&[Complex64::new(0.0, 0.0); 4], &i, &j).unwrap();
        assert!(zero.iter().all(|z| z.norm() == 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let f = random_bandlimited(&j, &mut rng);
            let samples: Vec<Complex64> = i.elements().iter().map(|&x| f[x]).collect();
            assert!(relative_error(&reconstruct(&samples, &i, &j).unwrap(), &f) < 1e-9);
        }
        assert!(reconstruct(&[Complex64::new(1.0, 0.0)], &i, &j).is_err());
    }

    #[test]
    fn consecutive_examples() {
        let r = consecutive_family(&zn(16), 4, 0).unwrap();
        assert_eq!(r.zero_set, set(16, &[4, 8, 12]));
        assert_eq!(r.sampling_set, Some(set(16, &[0, 4, 8, 12])));
        let coprime = consecutive_family(&zn(16), 5, 2).unwrap();
        assert!(coprime.zero_set.is_empty());
        assert_eq!(coprime.sampling_set, None);
        let full = consecutive_family(&zn(10), 10, 3).unwrap();
        assert_eq!(full.j, IndexSet::full(&zn(10)));
        assert_eq!(full.sampling_set, Some(IndexSet::full(&zn(10))));
    }

    #[test]
    fn family_formulas_match_exact_computation() {
        let b = SearchBounds::default();
        for n in 2..=36usize {
            let modulus = zn(n);
            for d in 1..=n {
                for offset in [0, 1, n / 2] {
                    let r = consecutive_family(&modulus, d, offset).unwrap();
                    check_record(&r, &b);
                }
            }
            for s in 0..n {
                let period = n / gcd(s, n);
                for d in 1..=period {
                    let r = progression_family(&modulus, s, d, 1).unwrap();
                    check_record(&r, &b);
                }
                assert!(progression_family(&modulus, s, period + 1, 0).is_err());
            }
        }
    }

    fn check_record(r: &FamilyRecord, b: &SearchBounds) {
        let h = Idempotent::new(r.j.clone()).unwrap();
        assert_eq!(h.zero_set(), r.zero_set, "{:?}", r.kind);
        for m in 0..r.n() {
            assert!(
                (h.eval(m) - r.eval_closed_form(m)).norm() < 1e-9,
                "{:?} m={m}",
                r.kind
            );
        }
        if let Some(i) = &r.sampling_set {
            assert!(is_orthogonal_sampling_set(i, &r.j).unwrap(), "{:?}", r.kind);
        }
        if r.n() <= 64 {
            let found = find_orthogonal_sampling_set(&r.j, b).unwrap();
            assert_eq!(
                found.is_some(),
                r.sampling_set.is_some(),
                "{:?} N={}",
                r.kind,
                r.n()
            );
        }
    }

    #[test]
    fn progression_examples() {
        let r = progression_family(&zn(16), 6, 4, 0).unwrap();
        assert_eq!(r.j, set(16, &[0, 2, 6, 12]));
        let evens: Vec<usize> = (2..16).step_by(2).filter(|m| m % 8 != 0).collect();
        assert_eq!(r.zero_set.elements(), evens.as_slice());
        let i = r.sampling_set.clone().unwrap();
        assert_eq!(i, set(16, &[0, 2, 4, 6]));
        assert!(is_unitary_pair(&i, &r.j).unwrap());

        assert_eq!(
            progression_family(&zn(12), 1, 4, 3).unwrap().sampling_set,
            consecutive_family(&zn(12), 4, 3).unwrap().sampling_set
        );
        assert_eq!(
            progression_family(&zn(12), 1, 5, 0).unwrap().zero_set,
            consecutive_family(&zn(12), 5, 0).unwrap().zero_set
        );
        let coprime = progression_family(&zn(16), 3, 5, 0).unwrap();
        assert!(coprime.zero_set.is_empty());
        assert_eq!(coprime.sampling_set, None);
        // d | N but d does not divide N / gcd(s, N)
        let r36 = progression_family(&zn(36), 6, 4, 0).unwrap();
        assert_eq!(r36.sampling_set, None);
        assert_eq!(
            find_orthogonal_sampling_set(&r36.j, &SearchBounds::default()).unwrap(),
            None
        );
    }

    #[test]
    fn report_json_shape() {
        let r = pair_report(&set(16, &[0, 2, 8, 10]), &set(16, &[0, 1, 4, 5])).unwrap();
        assert!(r.unitary);
        assert!((r.witness_basis_norm.unwrap() - 2.0).abs() < 1e-9);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(
            keys,
            [
                "gram_offdiag_max",
                "i",
                "j",
                "n",
                "unitary",
                "witness_basis_norm"
            ]
        );
        let back: PairReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
