//! Exhaustive counts: cds-sortable permutations, cdr-sortable signed
//! permutations and fixed points.

use cdsort::{count_cdr, count_cds_sortable, count_fixed_points, odd_formula_check, CdrTarget, Operation};

fn main() {
    println!("cds-sortable permutations of n letters");
    for n in 1..=9 {
        println!("{}", count_cds_sortable(n).unwrap());
    }
    for k in 1..=4 {
        println!("n = {}: count equals (k+1)(2k)! is {}", 2 * k + 1, odd_formula_check(k).unwrap());
    }
    println!("cdr-sortable signed permutations, identity and reversed targets");
    for n in 1..=5 {
        let id = count_cdr(n, CdrTarget::Identity).unwrap();
        let rev = count_cdr(n, CdrTarget::ReversedNegative).unwrap();
        println!("{:>3}  {:>8}  {:>8}", n, id.count, rev.count);
    }
    for n in 1..=5 {
        println!(
            "n = {n}: cds fixed points {}, signed cds fixed points {}, cdr fixed points {}",
            count_fixed_points(n, Operation::Cds, false).unwrap().count,
            count_fixed_points(n, Operation::Cds, true).unwrap().count,
            count_fixed_points(n, Operation::Cdr, true).unwrap().count,
        );
    }
}
