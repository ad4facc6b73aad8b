//! Linear-time h-index.
//!
//! `H(K)` is the largest `k` such that at least `k` elements of `K` are `>= k`.
//! Values above a cap `c` are clamped to `c` before counting, so a table of
//! `c + 1` counters and one suffix scan suffice. With `c = |K|` this is exact;
//! with a smaller cap the result is `min(H(K), c)`, which is how the engines
//! use a clique's current estimate as an upper bound and stop early.

/// Streaming h-index over values fed one at a time.
///
/// The table is reused across [`reset`](Self::reset) calls so the engines do
/// not allocate per clique.
#[derive(Debug, Clone, Default)]
pub struct HIndexAccumulator {
    counts: Vec<u32>,
    cap: u32,
}

impl HIndexAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts a new multiset whose h-index is known to be at most `cap`.
    pub fn reset(&mut self, cap: u32) {
        self.cap = cap;
        self.counts.clear();
        self.counts.resize(cap as usize + 1, 0);
    }

    /// Adds a value. Returns `true` once at least `cap` values are `>= cap`,
    /// at which point the result is fixed at `cap` and further values are
    /// irrelevant.
    #[inline]
    pub fn push(&mut self, value: u32) -> bool {
        let slot = value.min(self.cap) as usize;
        self.counts[slot] += 1;
        self.saturated()
    }

    #[inline]
    pub fn saturated(&self) -> bool {
        self.counts[self.cap as usize] >= self.cap
    }

    pub fn finish(&self) -> u32 {
        let mut at_least = 0u32;
        for h in (1..=self.cap).rev() {
            at_least += self.counts[h as usize];
            if at_least >= h {
                return h;
            }
        }
        0
    }
}

/// `H(values)`.
pub fn h_index(values: &[u32]) -> u32 {
    h_index_capped(values, values.len() as u32)
}

/// `min(H(values), current_tau)`.
///
/// Stops scanning as soon as `current_tau` values `>= current_tau` have been
/// seen. When `current_tau` is an upper bound of `H(values)` (the engines
/// guarantee this by monotonicity) the result is exactly `H(values)`.
pub fn h_index_with_hint(values: &[u32], current_tau: u32) -> u32 {
    h_index_capped(values, current_tau.min(values.len() as u32))
}

fn h_index_capped(values: &[u32], cap: u32) -> u32 {
    let mut acc = HIndexAccumulator::new();
    acc.reset(cap);
    for &v in values {
        if acc.push(v) {
            return cap;
        }
    }
    acc.finish()
}
