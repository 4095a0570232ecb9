//! Relevance scoring and feature selection over a membership matrix.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fuzzy::{CategorySet, MembershipMatrix};

/// Per-feature relevance scores and their deterministic ranking.
///
/// `ranking` lists feature indices by descending score; equal scores keep
/// ascending index order.
#[derive(Debug, Clone, PartialEq)]
pub struct RelevanceScores {
    scores: Vec<f64>,
    ranking: Vec<usize>,
}

impl RelevanceScores {
    /// Wraps precomputed scores, validating them and deriving the ranking.
    pub fn from_scores(scores: Vec<f64>) -> Result<Self> {
        if let Some(bad) = scores.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return Err(Error::invalid("score", format!("must be finite and >= 0, got {bad}")));
        }
        let ranking = rank(&scores);
        Ok(RelevanceScores { scores, ranking })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// 1-based rank of every feature, indexed by feature.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.len()];
        for (pos, &i) in self.ranking.iter().enumerate() {
            ranks[i] = pos + 1;
        }
        ranks
    }
}

fn rank(scores: &[f64]) -> Vec<usize> {
    let mut ranking: Vec<usize> = (0..scores.len()).collect();
    // scores are finite, so partial_cmp never fails; sort_by is stable
    ranking.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap_or(Ordering::Equal));
    ranking
}

/// `R_i = sum_j w_j * u_ij` for every row of `matrix`.
pub fn relevance_scores(matrix: &MembershipMatrix, cats: &CategorySet) -> Result<RelevanceScores> {
    relevance_scores_with(matrix, cats, Execution::default())
}

pub fn relevance_scores_with(
    matrix: &MembershipMatrix,
    cats: &CategorySet,
    exec: Execution,
) -> Result<RelevanceScores> {
    if matrix.cols() != cats.len() {
        return Err(Error::Dimension {
            expected: cats.len(),
            actual: matrix.cols(),
        });
    }
    let weights: Vec<f64> = cats.categories().iter().map(|c| c.weight()).collect();
    let rows: Vec<usize> = (0..matrix.rows()).collect();
    let scores = exec::map_collect(exec, &rows, |&i| {
        matrix
            .row(i)
            .iter()
            .zip(&weights)
            .fold(0.0, |acc, (u, w)| acc + w * u)
    });
    let ranking = rank(&scores);
    Ok(RelevanceScores { scores, ranking })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionMode {
    TopK(usize),
    Threshold(f64),
}

/// Selected feature indices, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    mode: SelectionMode,
    indices: Vec<usize>,
}

impl Selection {
    pub fn mode(&self) -> SelectionMode {
        self.mode
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Every index in `0..n`, as a top-k selection with `k = n`.
    pub fn all(n: usize) -> Self {
        Selection {
            mode: SelectionMode::TopK(n.max(1)),
            indices: (0..n).collect(),
        }
    }

    /// Arbitrary index set; sorted and deduplicated. Used for hand-picked
    /// selections that did not come out of a scoring pass.
    pub fn from_indices(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Selection {
            mode: SelectionMode::TopK(indices.len().max(1)),
            indices,
        }
    }
}

/// The `k` highest-ranked features; saturates at `n` when `k > n`.
pub fn select_top_k(scores: &RelevanceScores, k: usize) -> Result<Selection> {
    if k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    let mut indices: Vec<usize> = scores.ranking.iter().take(k).copied().collect();
    indices.sort_unstable();
    Ok(Selection {
        mode: SelectionMode::TopK(k),
        indices,
    })
}

/// Every feature whose score is at least `tau`.
pub fn select_by_threshold(scores: &RelevanceScores, tau: f64) -> Result<Selection> {
    if !tau.is_finite() {
        return Err(Error::invalid("tau", format!("must be finite, got {tau}")));
    }
    let indices = scores
        .scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s >= tau)
        .map(|(i, _)| i)
        .collect();
    Ok(Selection {
        mode: SelectionMode::Threshold(tau),
        indices,
    })
}
