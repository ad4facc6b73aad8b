use crate::error::{Error, Result};

/// Kendall's τ-b between two equally long sequences, in O(n log n).
///
/// Pairs are sorted by `(x, y)`; discordant pairs are then the inversions
/// of the `y` sequence, counted during a bottom-up merge sort. Tie
/// corrections follow the usual τ-b formula.
///
/// When either sequence is constant the statistic is undefined; this
/// returns 1.0 if both are constant and 0.0 otherwise.
pub fn kendall_tau<T: Ord + Copy>(estimates: &[T], exact: &[T]) -> Result<f64> {
    if estimates.len() != exact.len() {
        return Err(Error::LengthMismatch {
            left: estimates.len(),
            right: exact.len(),
        });
    }
    if estimates.len() < 2 {
        return Err(Error::InvalidConfig(
            "Kendall tau needs at least two values".into(),
        ));
    }
    let n = estimates.len() as u64;
    let mut pairs: Vec<(T, T)> = estimates.iter().copied().zip(exact.iter().copied()).collect();
    pairs.sort_unstable();

    let total = n * (n - 1) / 2;
    let tied_x = tied_pairs(pairs.iter().map(|p| p.0));
    let tied_xy = tied_pairs(pairs.iter().copied());

    let mut ys: Vec<T> = pairs.iter().map(|p| p.1).collect();
    let swaps = count_inversions(&mut ys);
    let tied_y = tied_pairs(ys.iter().copied());

    let concordant_minus_discordant =
        total as f64 - tied_x as f64 - tied_y as f64 + tied_xy as f64 - 2.0 * swaps as f64;
    let denom = ((total - tied_x) as f64 * (total - tied_y) as f64).sqrt();
    if denom == 0.0 {
        return Ok(if tied_x == total && tied_y == total { 1.0 } else { 0.0 });
    }
    Ok(concordant_minus_discordant / denom)
}

/// Pairs of equal adjacent-run elements in a sorted sequence.
fn tied_pairs<T: PartialEq, I: Iterator<Item = T>>(sorted: I) -> u64 {
    let mut total = 0u64;
    let mut run = 0u64;
    let mut prev: Option<T> = None;
    for item in sorted {
        if prev.as_ref() == Some(&item) {
            run += 1;
        } else {
            total += run * (run.saturating_sub(1)) / 2;
            run = 1;
        }
        prev = Some(item);
    }
    total + run * run.saturating_sub(1) / 2
}

/// Sorts `v` and returns the number of strictly inverted pairs.
fn count_inversions<T: Ord + Copy>(v: &mut [T]) -> u64 {
    let n = v.len();
    let mut buf = v.to_vec();
    let mut swaps = 0u64;
    let mut width = 1;
    while width < n {
        let mut start = 0;
        while start < n {
            let mid = (start + width).min(n);
            let end = (start + 2 * width).min(n);
            let (mut i, mut j, mut k) = (start, mid, start);
            while i < mid && j < end {
                if v[j] < v[i] {
                    buf[k] = v[j];
                    swaps += (mid - i) as u64;
                    j += 1;
                } else {
                    buf[k] = v[i];
                    i += 1;
                }
                k += 1;
            }
            buf[k..k + (mid - i)].copy_from_slice(&v[i..mid]);
            k += mid - i;
            buf[k..k + (end - j)].copy_from_slice(&v[j..end]);
            start = end;
        }
        v.copy_from_slice(&buf);
        width *= 2;
    }
    swaps
}
