//! Direct enumeration of all `p`-subsets. Only used where `C(N, p)` is small.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::point::{LatticePoint, PointConfiguration, MAX_DIM};

/// Largest number of subsets the naive method will enumerate.
pub const NAIVE_SUBSET_BUDGET: u128 = 10_000_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub(crate) fn naive_wedge(base: &PointConfiguration, p: usize) -> Result<PointConfiguration> {
    let count = binomial(base.len(), p);
    if count > NAIVE_SUBSET_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "naive wedge subsets",
            needed: count,
            limit: NAIVE_SUBSET_BUDGET,
        });
    }
    let dim = base.dim();
    let mut sums: HashSet<LatticePoint> = HashSet::new();
    for subset in base.points().iter().combinations(p) {
        let mut acc = [0i128; MAX_DIM];
        for m in subset {
            for (a, c) in acc.iter_mut().zip(m.coords()) {
                *a += *c as i128;
            }
        }
        sums.insert(LatticePoint::from_wide(&acc[..dim])?);
    }
    PointConfiguration::new(dim, sums)
}
