//! Wall-clock of generation and the exact DP at a few sizes.
//!
//! `cargo run --release -p apollonia-core --example dp_timing -- 1000000`

use apollonia_core::longest_path::{heuristic_long_path, longest_path_exact, longest_path_length, table_size_histogram};
use apollonia_core::Ran;
use std::time::Instant;

fn main() {
    let sizes: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("size"))
        .collect();
    for n in if sizes.is_empty() { vec![100_000, 1_000_000] } else { sizes } {
        let t = Instant::now();
        let ran = Ran::generate(n, 1);
        let gen = t.elapsed();
        let t = Instant::now();
        let len = longest_path_length(&ran);
        let dp = t.elapsed();
        let t = Instant::now();
        let lp = longest_path_exact(&ran);
        let full = t.elapsed();
        let t = Instant::now();
        let h = heuristic_long_path(&ran);
        let heur = t.elapsed();
        assert_eq!(len, lp.length);
        println!(
            "n={n} L={len} heuristic={} generate={gen:?} length-only={dp:?} with-witness={full:?} heuristic={heur:?}",
            h.len_edges()
        );
        if n <= 100_000 {
            println!("  table sizes: {:?}", table_size_histogram(&ran));
        }
    }
}
