//! Inverses, the relabelled cycle product of the inverse, parity classes and
//! the dihedral family of signed fixed points.

use cdsort::{
    build_c, c_of_inverse, dihedral_generators, dihedral_group, is_cds_sortable, parity_class, signed_parity_class,
    Permutation, SignedPermutation,
};

fn main() {
    for text in ["[4 2 6 7 1 3 5]", "[2 1 4 3]", "[3 1 2]"] {
        let pi: Permutation = text.parse().unwrap();
        let inv = pi.inverse();
        println!("{pi}  inverse {inv}");
        println!("  C(inverse) = {} = {}", build_c(&inv), c_of_inverse(&pi));
        println!("  sortable {} / {}", is_cds_sortable(&pi), is_cds_sortable(&inv));
        println!("  parity {}", parity_class(&pi));
    }
    let sp: SignedPermutation = "[2 -1 4 -3]".parse().unwrap();
    println!("{sp} parity {}", signed_parity_class(&sp));

    let (mu, nu) = dihedral_generators(4);
    println!("mu = {mu}, nu = {nu}");
    for f in dihedral_group(4) {
        print!("{f} ");
    }
    println!();
}
