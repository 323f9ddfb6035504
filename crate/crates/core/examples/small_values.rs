//! Prints the exact extremal numbers that are cheap to compute.
//!
//! `cargo run --release -p weak-delta --example small_values [max_n]`

use std::time::Instant;

use weak_delta::search::{capset_number, g3, max_equilateral_free_slice, max_sunflower_free_slice, SearchConfig};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let seq = SearchConfig::sequential();

    println!("{:>3} {:>6} {:>8}   sunflower-free slices   equilateral-free slices", "n", "g3", "capset");
    for n in 0..=max_n {
        let start = Instant::now();
        let g = g3(n, &seq).expect("g3");
        // Capset numbers beyond dimension 4 take far longer than the rest.
        let c = if n <= 4 { capset_number(n, &seq).expect("capset").extremal_size.to_string() } else { "-".into() };
        let sf: Vec<String> =
            (0..=n).map(|k| max_sunflower_free_slice(n, k, &seq).expect("slice").extremal_size.to_string()).collect();
        let eq: Vec<String> =
            (0..=n).map(|k| max_equilateral_free_slice(n, k, &seq).expect("slice").extremal_size.to_string()).collect();
        println!(
            "{n:>3} {:>6} {c:>8}   {:<23} {:<23} ({:.2?})",
            g.extremal_size,
            sf.join(" "),
            eq.join(" "),
            start.elapsed()
        );
    }
}
