//! Bottleneck assignment between two point multisets.

use num_complex::Complex64;

/// Smallest `t` such that every point of `left` can be matched to a distinct
/// point of `right` at distance at most `t`. Requires `left.len() <= right.len()`.
///
/// Returns the value and the assignment `left[i] -> right[assign[i]]`.
pub fn bottleneck_assignment(left: &[Complex64], right: &[Complex64]) -> (f64, Vec<usize>) {
    assert!(left.len() <= right.len(), "left side must not be larger");
    if left.is_empty() {
        return (0.0, Vec::new());
    }
    let dist: Vec<Vec<f64>> = left
        .iter()
        .map(|a| right.iter().map(|b| (a - b).norm()).collect())
        .collect();
    let mut levels: Vec<f64> = dist.iter().flatten().copied().collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let (mut lo, mut hi) = (0, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(&dist, levels[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let assign = perfect_matching(&dist, levels[lo]).expect("largest level always admits a matching");
    (levels[lo], assign)
}

/// Kuhn's augmenting paths on the threshold graph.
fn perfect_matching(dist: &[Vec<f64>], t: f64) -> Option<Vec<usize>> {
    let n_right = dist[0].len();
    let mut owner: Vec<Option<usize>> = vec![None; n_right];

    fn augment(
        i: usize,
        dist: &[Vec<f64>],
        t: f64,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..owner.len() {
            if dist[i][j] <= t && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, dist, t, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    for i in 0..dist.len() {
        let mut seen = vec![false; n_right];
        if !augment(i, dist, t, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assign = vec![0; dist.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            assign[*i] = j;
        }
    }
    Some(assign)
}
