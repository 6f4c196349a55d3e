//! Exhaustive counts split across threads, one partition per image of the
//! first element.

use std::thread;

use num_bigint::BigInt;
use typeb_core::permcore::OracleQuery;

use crate::CliResult;

/// Same result as [`OracleQuery::counts`], computed in parallel. Partition
/// results are summed in index order, so the output does not depend on
/// scheduling.
pub fn parallel_counts(query: &OracleQuery, bound: usize) -> CliResult<Vec<BigInt>> {
    let parts = query.partitions();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(parts);
    let results: Vec<CliResult<Vec<BigInt>>> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut acc = vec![BigInt::default(); query.n + 1];
                    for part in (w..parts).step_by(workers) {
                        for (a, c) in acc.iter_mut().zip(query.count_partition(part, bound)?) {
                            *a += c;
                        }
                    }
                    Ok(acc)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle worker panicked"))
            .collect()
    });
    let mut total = vec![BigInt::default(); query.n + 1];
    for r in results {
        for (t, c) in total.iter_mut().zip(r?) {
            *t += c;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use typeb_core::Mode;

    #[test]
    fn matches_sequential_counts() {
        for (n, r, m) in [(0, 0, 2), (3, 2, 2), (4, 1, 3), (5, 0, 1)] {
            let q = OracleQuery::new(n, r, Mode::Associated, m);
            assert_eq!(parallel_counts(&q, 8).unwrap(), q.counts(8).unwrap());
        }
    }

    #[test]
    fn bound_is_enforced() {
        let q = OracleQuery::new(6, 3, Mode::Associated, 2);
        assert!(parallel_counts(&q, 8).is_err());
    }
}
