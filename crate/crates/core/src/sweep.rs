//! Sort-and-sweep candidate generation used while building indexes.

/// All pairs `(a, b)`, `a < b`, whose closed spans `(lo, hi)` overlap and
/// for which `accept(a, b)` holds. Runs in `O(n log n + P)` where `P` is the
/// number of overlapping pairs. Spans must not contain NaN.
pub(crate) fn sweep_pairs<T: Copy + PartialOrd>(
    xs: &[(T, T)],
    mut accept: impl FnMut(usize, usize) -> bool,
) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_unstable_by(|&a, &b| xs[a].0.partial_cmp(&xs[b].0).expect("NaN span").then(a.cmp(&b)));
    let mut active: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for k in order {
        let lo = xs[k].0;
        active.retain(|&j| xs[j].1 >= lo);
        for &j in &active {
            let (a, b) = if j < k { (j, k) } else { (k, j) };
            if accept(a, b) {
                out.push((a, b));
            }
        }
        active.push(k);
    }
    out.sort_unstable();
    out
}

/// Neighbor lists from a pair list.
pub(crate) fn adjacency(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_overlapping_pairs() {
        let xs = [(0, 5), (3, 4), (5, 9), (10, 12), (-3, 0)];
        let got = sweep_pairs(&xs, |_, _| true);
        let mut want = Vec::new();
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                if xs[a].0 <= xs[b].1 && xs[b].0 <= xs[a].1 {
                    want.push((a, b));
                }
            }
        }
        assert_eq!(got, want);
    }
}
