//! Canonical decomposition of positive integers over the J series, plus an
//! exhaustive subset-sum search used as the uniqueness oracle and for probing
//! representability over variant sequences.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{self, SequenceTable};

/// How far apart selected indices must be for a subset to count as a
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentabilityConstraint {
    /// Any index subset (minimum gap 1).
    AnySubset,
    /// No two consecutive indices (minimum gap 2).
    NonAdjacent,
    /// The canonical form produced by the greedy walk (minimum gap 3).
    Canonical,
}

impl RepresentabilityConstraint {
    pub fn min_index_gap(self) -> usize {
        match self {
            RepresentabilityConstraint::AnySubset => 1,
            RepresentabilityConstraint::NonAdjacent => 2,
            RepresentabilityConstraint::Canonical => 3,
        }
    }

    pub fn from_min_gap(gap: usize) -> Option<Self> {
        match gap {
            1 => Some(RepresentabilityConstraint::AnySubset),
            2 => Some(RepresentabilityConstraint::NonAdjacent),
            3 => Some(RepresentabilityConstraint::Canonical),
            _ => None,
        }
    }
}

/// The canonical set of J-series indices summing to a positive integer.
///
/// Indices are strictly increasing with pairwise gaps of at least 3; this is
/// exactly what the greedy walk produces, and it is unique per value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    indices: Vec<usize>,
    value: u64,
}

impl Decomposition {
    /// Build from a canonical index set, recomputing the value it represents.
    ///
    /// Panics if `indices` is empty, not strictly increasing, or has a pair
    /// closer than 3 apart; those are caller contract violations. Returns an
    /// error only when the summed value leaves the encodable range.
    pub fn from_indices(indices: Vec<usize>) -> Result<Self> {
        assert!(
            !indices.is_empty(),
            "a decomposition selects at least one index"
        );
        assert!(
            indices.windows(2).all(|w| w[0] + 3 <= w[1]),
            "canonical indices must be increasing with gaps of at least 3"
        );
        let mut sum: i128 = 0;
        for &i in &indices {
            sum += sequences::j_term(i)?;
        }
        let value = u64::try_from(sum).map_err(|_| Error::CapacityExceeded {
            index: *indices.last().expect("non-empty"),
        })?;
        Ok(Decomposition { indices, value })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Number of selected terms.
    pub fn term_count(&self) -> usize {
        self.indices.len()
    }

    /// Largest selected index; equals `largest_j_index_leq(value)`.
    pub fn largest_index(&self) -> usize {
        *self.indices.last().expect("non-empty by construction")
    }
}

/// Greedy canonical decomposition: repeatedly take the largest J term that
/// fits the remainder. After taking J(d) the remainder is below J(d-2), so
/// selected indices always end up at least 3 apart.
pub fn decompose(n: u64) -> Result<Decomposition> {
    assert!(n >= 1, "n must be positive");
    sequences::with_j_terms_spanning(n, |terms| {
        let mut indices = Vec::new();
        let mut remainder = n as i128;
        let mut upper = terms.len();
        while remainder > 0 {
            let d = terms[..upper].partition_point(|&t| t <= remainder) - 1;
            indices.push(d);
            remainder -= terms[d];
            upper = d;
        }
        indices.reverse();
        Decomposition { indices, value: n }
    })
}

/// Sum the selected J terms back into the represented integer.
pub fn recompose(d: &Decomposition) -> u64 {
    let sum: i128 = d
        .indices
        .iter()
        .map(|&i| sequences::j_term(i).expect("indices were validated within capacity"))
        .sum();
    u64::try_from(sum).expect("validated at construction")
}

/// Bounds for the exhaustive decomposition search.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Highest index considered (inclusive). `None` derives the default
    /// window: the first index whose positive term exceeds the target, plus
    /// 3 slack to cover non-monotone variant prefixes.
    pub max_index: Option<usize>,
    /// Cap on visited search nodes before giving up.
    pub node_budget: u64,
}

pub const DEFAULT_NODE_BUDGET: u64 = 1 << 24;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_index: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

const WINDOW_SCAN_CAP: usize = 256;

fn default_window_end(n: u64, table: &SequenceTable) -> Result<usize> {
    for k in 0..WINDOW_SCAN_CAP {
        let t = table.term(k)?;
        if t > n as i128 {
            return Ok(k + 3);
        }
    }
    // Only reachable for degenerate seed choices whose terms never pass n.
    Err(Error::CapacityExceeded {
        index: WINDOW_SCAN_CAP,
    })
}

struct Search<'a> {
    terms: &'a [i128],
    gap: usize,
    /// Strictly increasing positive tables admit the obvious cutoffs.
    monotone: bool,
    budget: u64,
    nodes: u64,
    result_cap: Option<usize>,
    found: Vec<Vec<usize>>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    /// Depth-first over index subsets in lexicographic order. Returns true
    /// when the result cap has been reached and the walk should unwind.
    fn run(&mut self, start: usize, remainder: i128) -> Result<bool> {
        for i in start..self.terms.len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.budget,
                });
            }
            let term = self.terms[i];
            if self.monotone && term > remainder {
                break;
            }
            let next = remainder - term;
            self.chosen.push(i);
            if next == 0 {
                self.found.push(self.chosen.clone());
                if self.result_cap.is_some_and(|cap| self.found.len() >= cap) {
                    self.chosen.pop();
                    return Ok(true);
                }
            }
            // With mixed-sign terms a superset of an exact hit can sum back
            // to the target, so keep descending unless positivity rules it out.
            if !(self.monotone && next <= 0) && self.run(i + self.gap, next)? {
                self.chosen.pop();
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

fn enumerate(
    n: u64,
    table: &SequenceTable,
    constraint: RepresentabilityConstraint,
    options: &SearchOptions,
    result_cap: Option<usize>,
) -> Result<Vec<Vec<usize>>> {
    assert!(n >= 1, "n must be positive");
    let end = match options.max_index {
        Some(end) => end,
        None => default_window_end(n, table)?,
    };
    table.with_terms(end + 1, |all| {
        let terms = &all[..=end.min(all.len() - 1)];
        let monotone = terms[0] > 0 && terms.windows(2).all(|w| w[0] < w[1]);
        let mut search = Search {
            terms,
            gap: constraint.min_index_gap(),
            monotone,
            budget: options.node_budget,
            nodes: 0,
            result_cap,
            found: Vec::new(),
            chosen: Vec::new(),
        };
        search.run(0, n as i128)?;
        Ok(search.found)
    })?
}

/// Every index subset of `[0, max_index]` that satisfies the gap constraint
/// and sums to `n` over `table`, in lexicographic order. This is the
/// brute-force oracle behind the uniqueness checks.
pub fn all_decompositions(
    n: u64,
    table: &SequenceTable,
    constraint: RepresentabilityConstraint,
    options: &SearchOptions,
) -> Result<Vec<Vec<usize>>> {
    enumerate(n, table, constraint, options, None)
}

/// Whether any representation of `n` exists under the constraint.
pub fn representable(
    n: u64,
    table: &SequenceTable,
    constraint: RepresentabilityConstraint,
    options: &SearchOptions,
) -> Result<bool> {
    Ok(!enumerate(n, table, constraint, options, Some(1))?.is_empty())
}
