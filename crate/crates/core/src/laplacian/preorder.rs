use super::LaplacianError;

/// Total preorder on `0..len`: `i ≤ j` iff `rank[i] ≤ rank[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalPreorder {
    rank: Vec<i64>,
}

impl TotalPreorder {
    pub fn from_ranks(rank: Vec<i64>) -> Self {
        TotalPreorder { rank }
    }

    /// Preorder induced by comparing values.
    pub fn from_values<T: PartialOrd>(values: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("comparable values"));
        let mut rank = vec![0; values.len()];
        let mut r = 0;
        for w in 0..idx.len() {
            if w > 0 && values[idx[w - 1]] < values[idx[w]] {
                r += 1;
            }
            rank[idx[w]] = r;
        }
        TotalPreorder { rank }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rank[i] <= self.rank[j]
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.rank[i] < self.rank[j]
    }
}

/// Strict total order refining two harmonious preorders (`i <₁ j ⇒ i ≤₂ j`
/// and `i <₂ j ⇒ i ≤₁ j`), returned as the vertex sequence of a chain.
/// Ties in both preorders are broken by index.
pub fn chain_graph_from_preorders(p1: &TotalPreorder, p2: &TotalPreorder) -> Result<Vec<usize>, LaplacianError> {
    if p1.len() != p2.len() {
        return Err(LaplacianError::PreorderLengthMismatch);
    }
    let n = p1.len();
    for i in 0..n {
        for j in 0..n {
            if (p1.less(i, j) && !p2.leq(i, j)) || (p2.less(i, j) && !p1.leq(i, j)) {
                return Err(LaplacianError::NotHarmonious { i, j });
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (p1.rank[i], p2.rank[i], i));
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_refinement() {
        let strict = TotalPreorder::from_ranks(vec![0, 1, 2]);
        assert_eq!(chain_graph_from_preorders(&strict, &strict).unwrap(), vec![0, 1, 2]);
        let p1 = TotalPreorder::from_ranks(vec![0, 0, 1]);
        let p2 = TotalPreorder::from_ranks(vec![0, 1, 1]);
        assert_eq!(chain_graph_from_preorders(&p1, &p2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn rejects_conflicting_orders() {
        let p1 = TotalPreorder::from_ranks(vec![0, 1]);
        let p2 = TotalPreorder::from_ranks(vec![1, 0]);
        assert!(matches!(chain_graph_from_preorders(&p1, &p2), Err(LaplacianError::NotHarmonious { .. })));
    }

    #[test]
    fn ranks_from_values() {
        assert_eq!(TotalPreorder::from_values(&[2.0, 1.0, 2.0]).rank, vec![1, 0, 1]);
    }
}
