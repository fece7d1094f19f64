//! The cycle product, strategic pile, and moves that remove or keep a pile
//! element.

use cdsort::{
    apply_cds, build_c, reachable_cds_fixed_points, removal_move, retention_move, strategic_pile, Permutation,
};

fn main() {
    let pi: Permutation = "[6 5 4 3 2 1]".parse().unwrap();
    let pile = strategic_pile(&pi);
    println!("C = {}", build_c(&pi));
    println!("pile {pile}");
    for k in reachable_cds_fixed_points(&pi) {
        println!("  reachable {}", Permutation::rotation(6, k).unwrap());
    }
    for &x in pile.elements() {
        let gone = removal_move(&pi, x).unwrap();
        let kept = retention_move(&pi, x).unwrap();
        println!(
            "x = {x}: {gone} leaves pile {}, {kept} leaves pile {}",
            strategic_pile(&apply_cds(&pi, &gone).unwrap()),
            strategic_pile(&apply_cds(&pi, &kept).unwrap()),
        );
    }
}
