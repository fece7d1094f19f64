//! Context directed reversals on signed permutations.

use cdsort::{
    apply_cdr, build_d, cdr_necessary_condition, expand_star, list_cdr_contexts, reachable_cdr_fixed_points,
    search_cdr_sort, CdrTarget, SignedPermutation,
};

fn main() {
    for text in ["[3 -1 -2 5 4]", "[2 4 3 5 -1 6]", "[2 -1]"] {
        let sp: SignedPermutation = text.parse().unwrap();
        println!("{sp}");
        println!("  expanded {}", expand_star(&sp));
        println!("  D = {}", build_d(&sp));
        println!("  0 and 2n in different cycles: {}", cdr_necessary_condition(&sp));
        println!("  contexts: {:?}", list_cdr_contexts(&sp).iter().map(|c| c.to_string()).collect::<Vec<_>>());
        for target in [CdrTarget::Identity, CdrTarget::ReversedNegative] {
            match search_cdr_sort(&sp, target) {
                Some(moves) => {
                    let end = moves.iter().fold(sp.clone(), |s, c| apply_cdr(&s, c).unwrap());
                    let line: Vec<String> = moves.iter().map(|c| c.to_string()).collect();
                    println!("  to {target}: {} reaches {end}", line.join(" "));
                }
                None => println!("  to {target}: unreachable"),
            }
        }
        let ends: Vec<String> = reachable_cdr_fixed_points(&sp).iter().map(|f| f.to_string()).collect();
        println!("  reachable fixed points: {}", ends.join(" "));
    }
}
