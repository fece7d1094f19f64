//! Sorting by context directed swaps, move by move.

use cdsort::{apply_cds, cds_duration, is_cds_sortable, list_cds_contexts, sort_by_cds, Permutation};

fn main() {
    for text in ["[3 2 1]", "[2 4 1 5 3 6]", "[4 2 6 7 1 3 5]"] {
        let pi: Permutation = text.parse().unwrap();
        println!("{pi}: duration {}, sortable {}", cds_duration(&pi), is_cds_sortable(&pi));
        match sort_by_cds(&pi) {
            Ok(moves) => {
                let mut state = pi.clone();
                for ctx in moves {
                    state = apply_cds(&state, &ctx).unwrap();
                    println!("  {ctx} -> {state}");
                }
            }
            Err(e) => {
                // play the first context until nothing applies
                println!("  {e}");
                let mut state = pi.clone();
                while let Some(ctx) = list_cds_contexts(&state).first().copied() {
                    state = apply_cds(&state, &ctx).unwrap();
                    println!("  {ctx} -> {state}");
                }
                println!("  stuck at the fixed point {state}");
            }
        }
    }
}
