//! Sorting permutations by context directed swaps (cds) and signed
//! permutations by context directed reversals (cdr).
//!
//! The crate covers the operations themselves, the cycle products that
//! predict where sorting ends up, exact solvers for the two-player games in
//! which players alternate moves, and exhaustive counting sweeps.
//!
//! ```
//! use cdsort::{apply_cds_pair, strategic_pile, Permutation};
//!
//! let pi: Permutation = "[4 2 6 7 1 3 5]".parse().unwrap();
//! assert_eq!(strategic_pile(&pi).to_string(), "{5,2,1,4,3}");
//! let (_, sigma) = apply_cds_pair(&pi, "{(3,4),(5,6)}".parse().unwrap()).unwrap();
//! assert_eq!(sigma.to_string(), "[5 6 7 1 3 4 2]");
//! ```

pub mod cdr;
pub mod cds;
pub mod cycle;
pub mod enumerate;
pub mod game;
pub mod perm;
pub mod report;

pub use cdr::{
    apply_cdr, apply_cdr_pointer, build_d, cdr_necessary_condition, dihedral_generators, dihedral_group,
    expand_star, is_cdr_fixed_point, is_cdr_sortable, list_cdr_contexts, parse_cdr_pointer, pile_analogue,
    reachable_cdr_fixed_points, search_cdr_sort, signed_parity_class, CdrContext, CdrError, CdrSearch, CdrTarget,
    ExpandedString,
};
pub use cds::{
    apply_cds, apply_cds_pair, build_c, c_of_inverse, cds_duration, cycle_count, is_cds_fixed_point,
    is_cds_sortable, is_signed_cds_fixed_point, list_cds_contexts, parity_class, reachable_cds_fixed_points,
    removal_move, retention_move, sort_by_cds, strategic_pile, CdsContext, CdsError, ParityClass, PointerPair,
    StrategicPile,
};
pub use cycle::CyclePermutation;
pub use enumerate::{
    count_cdr, count_cds_sortable, count_fixed_points, odd_formula_check, odd_formula_value, permutations,
    signed_permutations, CountReport, EnumerateError, Operation,
};
pub use game::{
    cds_parity_fast_path, greedy_bound, greedy_strategy_move, greedy_threshold, solve, GameEngine, GameError,
    GameKind, GameMove, GameOutcome, GameSpec, Goal, Player,
};
pub use perm::{
    parse, Adjacency, AnyPermutation, OneLine, ParseError, PermError, Permutation, Pointer, PointerOccurrence,
    SignedPermutation, Side,
};
