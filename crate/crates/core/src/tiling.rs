//! Tilings `J + K = Z_N` and the sampling/tiling equivalence for prime powers.

use serde::{Deserialize, Serialize};

use crate::bounds::SearchBounds;
use crate::combin;
use crate::error::{Error, Result};
use crate::idempotent::{prescribe_zero_set, Idempotent, PrescribeMode};
use crate::sampling::find_orthogonal_sampling_set;
use crate::zn::{binomial, IndexSet, Modulus};

/// `1_J * 1_K = 1` on Z_N.
pub fn tiles(tile: &IndexSet, translates: &IndexSet) -> Result<bool> {
    tile.same_modulus(translates)?;
    let n = tile.n();
    if tile.len() * translates.len() != n {
        return Ok(false);
    }
    let mut hits = vec![0u32; n];
    for &j in tile.elements() {
        for &k in translates.elements() {
            let slot = &mut hits[(j + k) % n];
            if *slot == 1 {
                return Ok(false);
            }
            *slot = 1;
        }
    }
    Ok(true)
}

/// A checked tiling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingWitness {
    pub tile: IndexSet,
    pub translates: IndexSet,
}

impl TilingWitness {
    pub fn new(tile: IndexSet, translates: IndexSet) -> Result<Self> {
        if !tiles(&tile, &translates)? {
            return Err(Error::InvalidArgument(format!(
                "{tile} + {translates} is not a tiling"
            )));
        }
        Ok(TilingWitness { tile, translates })
    }
}

/// Some `K` with `J + K = Z_N`. For prime powers the minimal solution of the
/// prescribed-zero-set problem for `D(h_J)^c` is tried first; anything else
/// (including every negative answer) comes from the exhaustive search.
pub fn find_tiling_complement(tile: &IndexSet, bounds: &SearchBounds) -> Result<Option<IndexSet>> {
    let n = tile.n();
    if tile.is_empty() || n % tile.len() != 0 {
        return Ok(None);
    }
    if tile.modulus().as_prime_power().is_some() {
        let h = Idempotent::new(tile.clone())?;
        let complement = h.zero_set_divisors().complement();
        if let Some(k) = prescribe_zero_set(&complement, PrescribeMode::Constructive, bounds)? {
            if tiles(tile, &k)? {
                return Ok(Some(k));
            }
        }
    }
    exhaustive_complement(tile, bounds)
}

/// Lexicographically first `K` of size `N/|J|`, by depth-first search with
/// the smallest uncovered residue as a feasibility cut. Any tiling can be
/// translated to contain 0, so the search starts from 0.
pub fn exhaustive_complement(tile: &IndexSet, bounds: &SearchBounds) -> Result<Option<IndexSet>> {
    let n = tile.n();
    if tile.is_empty() || n % tile.len() != 0 {
        return Ok(None);
    }
    let mut search = ComplementSearch {
        n,
        tile: tile.elements(),
        size: n / tile.len(),
        covered: vec![false; n],
        chosen: Vec::new(),
        nodes: 0,
        limit: bounds.tiling_nodes,
    };
    if !search.place(0) {
        return Ok(None);
    }
    let found = search.run()?;
    Ok(if found {
        Some(IndexSet::new(tile.modulus(), search.chosen)?)
    } else {
        None
    })
}

struct ComplementSearch<'a> {
    n: usize,
    tile: &'a [usize],
    size: usize,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    nodes: u128,
    limit: u128,
}

impl ComplementSearch<'_> {
    fn fits(&self, k: usize) -> bool {
        self.tile.iter().all(|&j| !self.covered[(j + k) % self.n])
    }

    fn place(&mut self, k: usize) -> bool {
        if !self.fits(k) {
            return false;
        }
        for &j in self.tile {
            self.covered[(j + k) % self.n] = true;
        }
        self.chosen.push(k);
        true
    }

    fn remove(&mut self) {
        let k = self.chosen.pop().expect("nonempty");
        for &j in self.tile {
            self.covered[(j + k) % self.n] = false;
        }
    }

    fn run(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BoundExceeded {
                what: "tiling complement search nodes",
                required: self.nodes,
                limit: self.limit,
            });
        }
        if self.chosen.len() == self.size {
            return Ok(true);
        }
        let last = *self.chosen.last().expect("0 is placed first");
        // the smallest uncovered residue needs some later translate
        let u = self
            .covered
            .iter()
            .position(|&c| !c)
            .expect("not all covered");
        let coverable = self.tile.iter().any(|&j| {
            let k = (u + self.n - j) % self.n;
            k > last && self.fits(k)
        });
        if !coverable {
            return Ok(false);
        }
        for k in last + 1..self.n {
            if self.place(k) {
                if self.run()? {
                    return Ok(true);
                }
                self.remove();
            }
        }
        Ok(false)
    }
}

/// Both sides of the sampling/tiling equivalence for one `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FugledeReport {
    pub j: Vec<usize>,
    pub n: usize,
    pub sampling_set: Option<Vec<usize>>,
    pub tiling_complement: Option<Vec<usize>>,
    pub agree: bool,
    /// Whether N is a prime power, where the two verdicts must agree.
    pub theorem_scope: bool,
}

pub fn fuglede_check(tile: &IndexSet, bounds: &SearchBounds) -> Result<FugledeReport> {
    let sampling = find_orthogonal_sampling_set(tile, bounds)?;
    let complement = find_tiling_complement(tile, bounds)?;
    Ok(FugledeReport {
        j: tile.elements().to_vec(),
        n: tile.n(),
        agree: sampling.is_some() == complement.is_some(),
        sampling_set: sampling.map(|s| s.elements().to_vec()),
        tiling_complement: complement.map(|k| k.elements().to_vec()),
        theorem_scope: tile.modulus().as_prime_power().is_some(),
    })
}

/// Aggregate of `fuglede_check` over every `J` of one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FugledeSweep {
    pub n: usize,
    pub size: usize,
    /// Sets containing 0 actually checked.
    pub checked: u64,
    /// Sets of this size (all translates) with a sampling set.
    pub sampling_positives: u64,
    /// Sets of this size (all translates) that tile.
    pub tiling_positives: u64,
    /// Checked sets whose two verdicts differ.
    pub disagreements: Vec<Vec<usize>>,
}

/// Runs `fuglede_check` on every size-`size` subset containing 0. Both
/// verdicts are translation invariant, and each translation class of
/// `d`-subsets meets the sets containing 0 in `d/N` of its members, so the
/// full counts are the checked counts scaled by `N/d`.
pub fn fuglede_sweep(
    modulus: &Modulus,
    size: usize,
    bounds: &SearchBounds,
) -> Result<FugledeSweep> {
    let n = modulus.n();
    if size == 0 || size > n {
        return Err(Error::InvalidArgument(format!(
            "subset size {size} out of range for N={n}"
        )));
    }
    let checked = binomial((n - 1) as u64, (size - 1) as u64);
    SearchBounds::check("fuglede sweep subsets", checked, bounds.exhaustive_subsets)?;
    let (mut sampling, mut tiling) = (0u64, 0u64);
    let mut disagreements = Vec::new();
    let mut failure = None;
    combin::for_each_with_first(n, size, 0, |c| {
        if failure.is_some() {
            return;
        }
        let outcome =
            IndexSet::new(modulus, c.iter().copied()).and_then(|j| fuglede_check(&j, bounds));
        match outcome {
            Ok(r) => {
                sampling += u64::from(r.sampling_set.is_some());
                tiling += u64::from(r.tiling_complement.is_some());
                if !r.agree {
                    disagreements.push(r.j);
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let scale = |count: u64| count * n as u64 / size as u64;
    Ok(FugledeSweep {
        n,
        size,
        checked: checked as u64,
        sampling_positives: scale(sampling),
        tiling_positives: scale(tiling),
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zn::bracelet;

    fn set(n: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(&Modulus::new(n).unwrap(), e.iter().copied()).unwrap()
    }

    /// Direct convolution over all residues.
    fn convolution_is_one(j: &IndexSet, k: &IndexSet) -> bool {
        let n = j.n();
        (0..n).all(|r| {
            let hits = j
                .elements()
                .iter()
                .filter(|&&a| k.contains((r + n - a) % n))
                .count();
            hits == 1
        })
    }

    #[test]
    fn tiles_examples() {
        assert!(tiles(&set(16, &[0, 1, 4, 5]), &set(16, &[0, 2, 8, 10])).unwrap());
        assert!(tiles(&IndexSet::full(&Modulus::new(9).unwrap()), &set(9, &[0])).unwrap());
        assert!(!tiles(&set(4, &[0, 1]), &set(4, &[0, 1])).unwrap());
        assert!(tiles(&set(8, &[0, 1]), &set(16, &[0])).is_err());
    }

    #[test]
    fn tiles_matches_convolution_and_symmetry() {
        for n in [6usize, 8, 9, 12] {
            for a in 1..=n / 2 {
                if n % a != 0 {
                    continue;
                }
                combin::for_each(n, a, |jc| {
                    let j = set(n, jc);
                    combin::for_each(n, n / a, |kc| {
                        let k = set(n, kc);
                        let t = tiles(&j, &k).unwrap();
                        assert_eq!(t, convolution_is_one(&j, &k));
                        assert_eq!(t, tiles(&k, &j).unwrap());
                        if t {
                            assert!(tiles(&j.translate(3), &k).unwrap());
                            assert!(tiles(&j, &k.translate(5)).unwrap());
                        }
                    });
                });
            }
        }
    }

    #[test]
    fn complement_examples() {
        let b = SearchBounds::default();
        assert_eq!(
            find_tiling_complement(&set(16, &[0, 1, 4, 5]), &b).unwrap(),
            Some(set(16, &[0, 2, 8, 10]))
        );
        assert_eq!(
            find_tiling_complement(&set(8, &[0, 1, 5, 6]), &b).unwrap(),
            None
        );
        assert_eq!(
            exhaustive_complement(&set(8, &[0, 1, 5, 6]), &b).unwrap(),
            None
        );
        for n in [7usize, 12, 16] {
            assert_eq!(
                find_tiling_complement(&set(n, &[2]), &b).unwrap(),
                Some(IndexSet::full(&Modulus::new(n).unwrap()))
            );
        }
        // composite N goes straight to the exhaustive search
        let k = find_tiling_complement(&set(12, &[0, 1, 2]), &b)
            .unwrap()
            .unwrap();
        assert_eq!(k, set(12, &[0, 3, 6, 9]));
    }

    #[test]
    fn exhaustive_is_lexicographically_first() {
        let b = SearchBounds::default();
        for n in [8usize, 9, 10, 12] {
            for a in 2..=n / 2 {
                if n % a != 0 {
                    continue;
                }
                combin::for_each(n, a, |jc| {
                    let j = set(n, jc);
                    let mut first = None;
                    combin::for_each(n, n / a, |kc| {
                        if first.is_none() && tiles(&j, &set(n, kc)).unwrap() {
                            first = Some(set(n, kc));
                        }
                    });
                    assert_eq!(exhaustive_complement(&j, &b).unwrap(), first, "J={j}");
                });
            }
        }
    }

    #[test]
    fn node_limit() {
        let tight = SearchBounds::default().with_search_limit(3);
        let err = exhaustive_complement(&set(27, &[0, 1, 2]), &tight).unwrap_err();
        assert!(err.is_bound_exceeded());
    }

    #[test]
    fn fuglede_examples() {
        let b = SearchBounds::default();
        let neg = fuglede_check(&set(8, &[0, 1, 5, 6]), &b).unwrap();
        assert_eq!(
            (neg.sampling_set.is_some(), neg.tiling_complement.is_some()),
            (false, false)
        );
        assert!(neg.agree && neg.theorem_scope);
        let big = fuglede_check(&set(8, &[0, 1, 2, 3, 5]), &b).unwrap();
        assert_eq!((big.sampling_set, big.tiling_complement), (None, None));
        let outside = fuglede_check(&set(12, &[0, 1, 2]), &b).unwrap();
        assert!(!outside.theorem_scope);
        let json = serde_json::to_value(&neg).unwrap();
        for key in ["j", "n", "sampling_set", "tiling_complement", "agree"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn z8_size_four() {
        let b = SearchBounds::default();
        let mut positives = 0;
        combin::for_each(8, 4, |c| {
            let r = fuglede_check(&set(8, c), &b).unwrap();
            assert!(r.agree);
            positives += usize::from(r.sampling_set.is_some());
        });
        assert_eq!(positives, 22);
    }

    #[test]
    fn idempotent_product_is_delta() {
        let b = SearchBounds::default();
        for jc in [&[0usize, 1, 4, 5][..], &[0, 3], &[1, 2, 9, 10]] {
            let j = set(16, jc);
            let k = find_tiling_complement(&j, &b).unwrap().unwrap();
            let (hj, hk) = (Idempotent::new(j).unwrap(), Idempotent::new(k).unwrap());
            for m in 0..16 {
                let target = if m == 0 { 1.0 / 16.0 } else { 0.0 };
                assert!((hj.eval(m) * hk.eval(m) - target).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn bracelet_invariance() {
        let j = set(16, &[0, 1, 4, 5]);
        let k = set(16, &[0, 2, 8, 10]);
        for member in bracelet(&j) {
            assert!(tiles(&member, &k).unwrap() || tiles(&member, &k.negate()).unwrap());
        }
    }

    #[test]
    fn sweep_matches_full_enumeration() {
        let b = SearchBounds::default();
        for (n, size) in [(8usize, 4usize), (9, 3), (12, 4), (12, 3), (16, 4)] {
            let modulus = Modulus::new(n).unwrap();
            let sweep = fuglede_sweep(&modulus, size, &b).unwrap();
            let (mut samp, mut tile) = (0u64, 0u64);
            combin::for_each(n, size, |c| {
                let r = fuglede_check(&set(n, c), &b).unwrap();
                samp += u64::from(r.sampling_set.is_some());
                tile += u64::from(r.tiling_complement.is_some());
            });
            assert_eq!(
                (sweep.sampling_positives, sweep.tiling_positives),
                (samp, tile),
                "N={n} d={size}"
            );
        }
    }
}
