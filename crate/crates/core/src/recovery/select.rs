use std::cmp::Ordering;

/// Indices of the `big_n` largest `|correlations[i]|` outside `excluded`,
/// largest first. Equal magnitudes are ordered by lower index.
///
/// Returns fewer than `big_n` indices when not enough candidates remain.
pub fn select_top_n(correlations: &[f64], excluded: &[usize], big_n: usize) -> Vec<usize> {
    let mut mask = vec![false; correlations.len()];
    for &i in excluded {
        if i < mask.len() {
            mask[i] = true;
        }
    }
    select_top_n_masked(correlations, &mask, big_n)
}

pub(crate) fn select_top_n_masked(correlations: &[f64], excluded: &[bool], big_n: usize) -> Vec<usize> {
    let mut candidates: Vec<usize> = (0..correlations.len()).filter(|&i| !excluded[i]).collect();
    let by_magnitude = |&a: &usize, &b: &usize| -> Ordering {
        correlations[b]
            .abs()
            .total_cmp(&correlations[a].abs())
            .then(a.cmp(&b))
    };
    let take = big_n.min(candidates.len());
    if take == 0 {
        return Vec::new();
    }
    if take < candidates.len() {
        candidates.select_nth_unstable_by(take - 1, by_magnitude);
        candidates.truncate(take);
    }
    candidates.sort_by(by_magnitude);
    candidates
}
