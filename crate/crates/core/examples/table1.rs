//! Recompute every row of the expected table and print the diff.

use std::time::Instant;

use qsplit::nakamura::compute_all;
use qsplit::report::{diff_row, TABLE1};

fn main() {
    let start = Instant::now();
    let mut clean = 0;
    for row in &TABLE1 {
        let t = Instant::now();
        let r = compute_all(row.disc).expect("row computes");
        let diff = diff_row(&r).expect("row diffs");
        clean += diff.is_clean() as usize;
        println!("{diff}  primes={:?} delta={:?}  ({:.2?})", r.primes, r.delta, t.elapsed());
    }
    println!("{clean}/{} rows match in {:.2?}", TABLE1.len(), start.elapsed());
}
