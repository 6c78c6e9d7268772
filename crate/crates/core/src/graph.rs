//! Difference (GCD) graphs on Z_N: cliques, odd holes and the divisibility scan.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::sync::Mutex;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::SearchBounds;
use crate::digit_table::canonical_valid_table;
use crate::error::{Error, Result};
use crate::poly::CyclotomicTable;
use crate::zn::{is_prime, DivisorSet, IndexSet, Modulus};

/// Largest N for which adjacency rows are materialized.
pub const MAX_GRAPH_N: usize = 4096;

/// Vertices Z_N, `i ~ j` iff `gcd(i - j, N)` lies in the divisor set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceGraph {
    divisors: DivisorSet,
    rows: Vec<FixedBitSet>,
}

pub fn build_graph(divisors: &DivisorSet) -> Result<DifferenceGraph> {
    let n = divisors.modulus().n();
    if n > MAX_GRAPH_N {
        return Err(Error::InvalidArgument(format!(
            "difference graphs are limited to N <= {MAX_GRAPH_N}, got {n}"
        )));
    }
    let offsets = divisors.zero_set();
    let rows = (0..n)
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(n);
            for &s in offsets.elements() {
                row.insert((i + s) % n);
            }
            row
        })
        .collect();
    Ok(DifferenceGraph {
        divisors: divisors.clone(),
        rows,
    })
}

impl DifferenceGraph {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> &Modulus {
        self.divisors.modulus()
    }

    pub fn divisors(&self) -> &DivisorSet {
        &self.divisors
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn degree(&self) -> usize {
        self.rows.first().map_or(0, |r| r.count_ones(..))
    }

    pub fn edge_count(&self) -> usize {
        self.n() * self.degree() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|i| {
                self.rows[i]
                    .ones()
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    /// The complement is again a difference graph, for the complementary divisors.
    pub fn complement(&self) -> DifferenceGraph {
        build_graph(&self.divisors.complement()).expect("same size as self")
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &a)| vertices[k + 1..].iter().all(|&b| self.is_edge(a, b)))
    }
}

/// A maximum clique. Prime powers use the canonical digit-table with marks
/// `log_p D`; other moduli fall back to [`max_clique_search`].
pub fn max_clique(graph: &DifferenceGraph, bounds: &SearchBounds) -> Result<IndexSet> {
    let modulus = graph.modulus();
    match modulus.as_prime_power() {
        Some((p, m)) => {
            let marks = graph.divisors.exponents()?;
            canonical_valid_table(p, m as usize, &marks)?.index_set()
        }
        None => max_clique_search(graph, bounds),
    }
}

/// Branch and bound with a greedy-colouring bound. Vertex 0 is fixed by
/// vertex-transitivity and vertices are tried in ascending order, so the
/// witness is the lexicographically first maximum clique through 0.
pub fn max_clique_search(graph: &DifferenceGraph, bounds: &SearchBounds) -> Result<IndexSet> {
    search_clique(graph, usize::MAX, bounds)
        .map(|c| IndexSet::new(graph.modulus(), c).expect("clique vertices are residues"))
}

/// A clique of exactly `size` vertices through 0, if one exists.
pub fn clique_of_size(
    graph: &DifferenceGraph,
    size: usize,
    bounds: &SearchBounds,
) -> Result<Option<IndexSet>> {
    let mut c = search_clique(graph, size, bounds)?;
    if c.len() < size {
        return Ok(None);
    }
    c.truncate(size);
    Ok(Some(IndexSet::new(graph.modulus(), c)?))
}

fn search_clique(
    graph: &DifferenceGraph,
    stop_at: usize,
    bounds: &SearchBounds,
) -> Result<Vec<usize>> {
    let n = graph.n();
    SearchBounds::check(
        "clique search modulus",
        n as u128,
        bounds.clique_max_n as u128,
    )?;
    let mut best = vec![0];
    let mut current = vec![0];
    expand_clique(
        graph,
        &mut current,
        graph.rows[0].clone(),
        &mut best,
        stop_at,
    );
    Ok(best)
}

fn expand_clique(
    graph: &DifferenceGraph,
    current: &mut Vec<usize>,
    candidates: FixedBitSet,
    best: &mut Vec<usize>,
    stop_at: usize,
) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if best.len() >= stop_at || candidates.is_clear() {
        return;
    }
    if current.len() + colour_bound(graph, &candidates) <= best.len() {
        return;
    }
    let order: Vec<usize> = candidates.ones().collect();
    for (k, &v) in order.iter().enumerate() {
        if current.len() + order.len() - k <= best.len() || best.len() >= stop_at {
            return;
        }
        let mut next = candidates.clone();
        next.intersect_with(&graph.rows[v]);
        next.set_range(..v + 1, false);
        current.push(v);
        expand_clique(graph, current, next, best, stop_at);
        current.pop();
    }
}

/// Number of colours in a greedy colouring of the induced subgraph.
fn colour_bound(graph: &DifferenceGraph, vertices: &FixedBitSet) -> usize {
    let mut uncoloured = vertices.clone();
    let mut colours = 0;
    while !uncoloured.is_clear() {
        colours += 1;
        let mut available = uncoloured.clone();
        while let Some(v) = available.minimum() {
            uncoloured.set(v, false);
            available.set(v, false);
            available.difference_with(&graph.rows[v]);
        }
    }
    colours
}

/// Whether `cycle` (in order, length >= 4) is an induced cycle of `graph`.
pub fn is_chordless_cycle(graph: &DifferenceGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().any(|&v| v >= graph.n()) {
        return false;
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    if distinct.len() != k {
        return false;
    }
    (0..k).all(|a| {
        (a + 1..k).all(|b| {
            let consecutive = b == a + 1 || (a == 0 && b == k - 1);
            graph.is_edge(cycle[a], cycle[b]) == consecutive
        })
    })
}

/// Shortest chordless odd cycle of length in `5..=max_len` in the graph (or
/// its complement). Holes are translated so that they pass through 0.
pub fn find_odd_hole(
    graph: &DifferenceGraph,
    in_complement: bool,
    max_len: usize,
    bounds: &SearchBounds,
) -> Result<Option<Vec<usize>>> {
    SearchBounds::check(
        "odd-hole search modulus",
        graph.n() as u128,
        bounds.hole_max_n as u128,
    )?;
    let complement;
    let g = if in_complement {
        complement = graph.complement();
        &complement
    } else {
        graph
    };
    for len in (5..=max_len).step_by(2) {
        if let Some(hole) = hole_of_length(g, len) {
            return Ok(Some(hole));
        }
    }
    Ok(None)
}

/// Induced cycles `0, v1, ..., v_{len-1}` with all `v_i > 0` and `v1 < v_{len-1}`.
fn hole_of_length(g: &DifferenceGraph, len: usize) -> Option<Vec<usize>> {
    let first: Vec<usize> = g.rows[0].ones().collect();
    first.par_iter().find_map_first(|&v1| {
        let mut path = vec![0, v1];
        // neighbours of the interior path vertices, excluding the last two
        let interior = FixedBitSet::with_capacity(g.n());
        extend_hole(g, &mut path, interior, len)
    })
}

fn extend_hole(
    g: &DifferenceGraph,
    path: &mut Vec<usize>,
    interior: FixedBitSet,
    len: usize,
) -> Option<Vec<usize>> {
    let last = *path.last().expect("path is never empty");
    let t = path.len();
    let mut blocked = interior.clone();
    if t >= 3 {
        // neighbours of the vertex before `last` would create a chord
        blocked.union_with(&g.rows[path[t - 2]]);
    }
    for u in g.rows[last].ones() {
        if u == 0 || blocked.contains(u) || path.contains(&u) {
            continue;
        }
        if g.is_edge(0, u) {
            // u closes the cycle; anything longer through u would have a chord
            if t + 1 == len && path[1] < u {
                path.push(u);
                let hole = path.clone();
                path.pop();
                return Some(hole);
            }
            continue;
        }
        if t + 1 < len {
            let mut next_interior = interior.clone();
            if t >= 3 {
                next_interior.union_with(&g.rows[path[t - 2]]);
            }
            path.push(u);
            let found = extend_hole(g, path, next_interior, len);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Odd holes found in a graph and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeReport {
    pub n: usize,
    pub divisors: Vec<usize>,
    pub max_len: usize,
    pub graph_hole: Option<Vec<usize>>,
    pub complement_hole: Option<Vec<usize>>,
}

impl BergeReport {
    /// No odd hole up to `max_len` on either side.
    pub fn is_berge_up_to_max_len(&self) -> bool {
        self.graph_hole.is_none() && self.complement_hole.is_none()
    }

    pub fn holes(&self) -> Vec<Vec<usize>> {
        self.graph_hole
            .iter()
            .chain(&self.complement_hole)
            .cloned()
            .collect()
    }
}

pub fn berge_certify(
    graph: &DifferenceGraph,
    max_len: usize,
    bounds: &SearchBounds,
) -> Result<BergeReport> {
    Ok(BergeReport {
        n: graph.n(),
        divisors: graph.divisors.divisors().to_vec(),
        max_len,
        graph_hole: find_odd_hole(graph, false, max_len, bounds)?,
        complement_hole: find_odd_hole(graph, true, max_len, bounds)?,
    })
}

/// JSON summary of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub n: usize,
    pub divisors: Vec<usize>,
    pub max_clique: Vec<usize>,
    pub holes: Vec<Vec<usize>>,
}

pub fn graph_report(
    graph: &DifferenceGraph,
    max_len: usize,
    bounds: &SearchBounds,
) -> Result<GraphReport> {
    let clique = max_clique(graph, bounds)?;
    let berge = berge_certify(graph, max_len, bounds)?;
    Ok(GraphReport {
        n: graph.n(),
        divisors: graph.divisors.divisors().to_vec(),
        max_clique: clique.elements().to_vec(),
        holes: berge.holes(),
    })
}

/// Graphviz rendering with vertices on a circle.
pub fn export_dot(graph: &DifferenceGraph) -> String {
    let n = graph.n();
    let mut out = String::new();
    let _ = writeln!(out, "graph difference_{n} {{");
    let _ = writeln!(out, "  layout=neato;");
    let _ = writeln!(out, "  node [shape=circle];");
    let radius = (n as f64 / 4.0).max(1.0);
    for v in 0..n {
        let angle = TAU * v as f64 / n as f64;
        let _ = writeln!(
            out,
            "  {v} [pos=\"{:.3},{:.3}!\"];",
            radius * angle.cos(),
            radius * angle.sin()
        );
    }
    for (a, b) in graph.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Realizable {
    Yes,
    No,
    /// Too many subsets to decide exhaustively.
    Undetermined,
}

/// One divisor set of a scanned modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSetEntry {
    pub divisors: Vec<usize>,
    pub realizable: Realizable,
    pub max_clique: Option<usize>,
    pub clique_divides_n: Option<bool>,
    /// Sizes of the `J` with exactly these zero-set divisors.
    pub realizing_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub exhaustive: bool,
    pub subsets_examined: u64,
    /// `(|J|, number of J of that size with an orthogonal sampling set)`.
    pub sampling_counts: Vec<(usize, u64)>,
    /// `J` with a sampling set and `|J|` not dividing N.
    pub violations: Vec<Vec<usize>>,
    pub divisor_sets: Vec<DivisorSetEntry>,
}

/// For each composite N: which `J` with `|J|` in `sizes` and `|J| <= N/2`
/// have an orthogonal sampling set, whether any has `|J|` not dividing N,
/// and which divisor sets are zero-set divisors of some idempotent.
pub fn divisibility_scan(
    ns: impl IntoIterator<Item = usize>,
    sizes: std::ops::RangeInclusive<usize>,
    bounds: &SearchBounds,
) -> Result<Vec<ScanReport>> {
    ns.into_iter()
        .filter(|&n| n >= 4 && !is_prime(n))
        .map(|n| scan_modulus(&Modulus::new(n)?, sizes.clone(), None, bounds))
        .collect()
}

/// Scan of a single divisor set; undetermined instead of an error when N is
/// beyond the exhaustive bound.
pub fn scan_divisor_set(divisors: &DivisorSet, bounds: &SearchBounds) -> Result<DivisorSetEntry> {
    #[allow(clippy::reversed_empty_ranges)] // no size scan, only the entry for `divisors`
    let report = scan_modulus(divisors.modulus(), 1..=0, Some(divisors), bounds)?;
    Ok(report
        .divisor_sets
        .into_iter()
        .next()
        .expect("one entry requested"))
}

fn scan_modulus(
    modulus: &Modulus,
    sizes: std::ops::RangeInclusive<usize>,
    only: Option<&DivisorSet>,
    bounds: &SearchBounds,
) -> Result<ScanReport> {
    let n = modulus.n();
    let all_divisors = modulus.proper_divisors();
    let subsets = if n >= 127 { u128::MAX } else { 1u128 << n };
    let exhaustive = subsets <= bounds.exhaustive_subsets;
    if !exhaustive && only.is_none() {
        SearchBounds::check(
            "divisibility scan subsets",
            subsets,
            bounds.exhaustive_subsets,
        )?;
    }
    let candidates: Vec<DivisorSet> = match only {
        Some(d) => vec![d.clone()],
        None => subsets_of(&all_divisors),
    };
    let clique_sizes: BTreeMap<Vec<usize>, Option<usize>> = candidates
        .iter()
        .map(|d| {
            let size = if n <= bounds.clique_max_n || modulus.as_prime_power().is_some() {
                Some(max_clique(&build_graph(d)?, bounds)?.len())
            } else {
                None
            };
            Ok((d.divisors().to_vec(), size))
        })
        .collect::<Result<_>>()?;

    let mut realizing: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut examined = 0u64;
    if exhaustive {
        let table = CyclotomicTable::for_modulus(modulus);
        // clique numbers for every divisor set realized along the way
        let all_cliques: Mutex<BTreeMap<Vec<usize>, usize>> = Mutex::new(BTreeMap::new());
        let clique_for = |d: &[usize]| -> Result<usize> {
            if let Some(&c) = all_cliques.lock().expect("poisoned").get(d) {
                return Ok(c);
            }
            let ds = DivisorSet::new(modulus, d.iter().copied())?;
            let c = max_clique(&build_graph(&ds)?, bounds)?.len();
            all_cliques.lock().expect("poisoned").insert(d.to_vec(), c);
            Ok(c)
        };
        for size in 1..n {
            let per_first: Vec<Result<SizeScan>> = (0..n)
                .into_par_iter()
                .map(|first| {
                    let mut s = SizeScan::default();
                    let mut err = None;
                    crate::combin::for_each_with_first(n, size, first, |c| {
                        if err.is_some() {
                            return;
                        }
                        let d = table.zero_set_divisors(c);
                        s.examined += 1;
                        if 2 * size <= n && sizes.contains(&size) {
                            match clique_for(&d) {
                                Ok(clique) if clique >= size => {
                                    s.sampling += 1;
                                    if n % size != 0 {
                                        s.violations.push(c.to_vec());
                                    }
                                }
                                Ok(_) => {}
                                Err(e) => err = Some(e),
                            }
                        }
                        s.realized.insert(d);
                    });
                    match err {
                        Some(e) => Err(e),
                        None => Ok(s),
                    }
                })
                .collect();
            for s in per_first {
                let s = s?;
                examined += s.examined;
                if 2 * size <= n && sizes.contains(&size) {
                    *counts.entry(size).or_default() += s.sampling;
                }
                violations.extend(s.violations);
                for d in s.realized {
                    realizing.entry(d).or_default().insert(size);
                }
            }
        }
        // Z_N itself
        examined += 1;
        realizing
            .entry(all_divisors.divisors().to_vec())
            .or_default()
            .insert(n);
    }

    let divisor_sets = candidates
        .iter()
        .map(|d| {
            let key = d.divisors().to_vec();
            let clique = clique_sizes[&key];
            let sizes_found: Vec<usize> = realizing
                .get(&key)
                .map(|s| s.iter().copied().collect())
                .unwrap_or_default();
            DivisorSetEntry {
                realizable: match (exhaustive, sizes_found.is_empty()) {
                    (false, _) => Realizable::Undetermined,
                    (true, false) => Realizable::Yes,
                    (true, true) => Realizable::No,
                },
                divisors: key,
                max_clique: clique,
                clique_divides_n: clique.map(|c| n % c == 0),
                realizing_sizes: sizes_found,
            }
        })
        .collect();
    Ok(ScanReport {
        n,
        exhaustive,
        subsets_examined: examined,
        sampling_counts: counts.into_iter().collect(),
        violations,
        divisor_sets,
    })
}

#[derive(Default)]
struct SizeScan {
    examined: u64,
    sampling: u64,
    violations: Vec<Vec<usize>>,
    realized: BTreeSet<Vec<usize>>,
}

/// Every subset of `d`, ordered by bitmask.
pub(crate) fn subsets_of(d: &DivisorSet) -> Vec<DivisorSet> {
    let all = d.divisors();
    (0..1usize << all.len())
        .map(|mask| {
            let pick = all
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v);
            DivisorSet::new(d.modulus(), pick).expect("subset of proper divisors")
        })
        .collect()
}
