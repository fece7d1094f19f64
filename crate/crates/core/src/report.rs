//! Aggregated analyses, shared by the command line and the HTTP service.

use std::fmt;

use serde::Serialize;

use crate::cdr::{
    build_d, cdr_necessary_condition, expand_star, is_cdr_fixed_point, list_cdr_contexts, pile_analogue,
    reachable_cdr_fixed_points, signed_parity_class, CdrContext, CdrSearch, CdrTarget, ExpandedString,
};
use crate::cds::{
    build_c, cds_duration, is_cds_fixed_point, is_cds_sortable, list_cds_contexts, parity_class,
    reachable_cds_fixed_points, strategic_pile, CdsContext, ParityClass,
};
use crate::cycle::CyclePermutation;
use crate::perm::{AnyPermutation, OneLine, Permutation, SignedPermutation};

#[derive(Debug, Clone, Serialize)]
pub struct CdsAnalysis {
    pub permutation: Permutation,
    pub c: CyclePermutation,
    pub cycle_count: usize,
    /// Pile elements in cycle order.
    pub strategic_pile: Vec<usize>,
    pub sortable: bool,
    pub fixed_point: bool,
    pub duration: usize,
    pub reachable_fixed_points: Vec<Permutation>,
    pub parity: ParityClass,
    pub adjacencies: Vec<usize>,
    pub contexts: Vec<CdsContext>,
}

pub fn analyze_cds(pi: &Permutation) -> CdsAnalysis {
    let c = build_c(pi);
    CdsAnalysis {
        permutation: pi.clone(),
        cycle_count: c.cycle_count(),
        c,
        strategic_pile: strategic_pile(pi).elements().to_vec(),
        sortable: is_cds_sortable(pi),
        fixed_point: is_cds_fixed_point(pi),
        duration: cds_duration(pi),
        reachable_fixed_points: reachable_cds_fixed_points(pi)
            .into_iter()
            .map(|k| Permutation::rotation(pi.n(), k).expect("pile elements are below n"))
            .collect(),
        parity: parity_class(pi),
        adjacencies: pi.adjacencies().iter().map(|a| a.position).collect(),
        contexts: list_cds_contexts(pi),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CdrAnalysis {
    pub permutation: SignedPermutation,
    pub expanded: ExpandedString,
    pub d: CyclePermutation,
    pub cycle_count: usize,
    pub necessary_condition: bool,
    /// The `D_π` segment between `2n` and `0`, when they share a cycle.
    pub pile_analogue: Option<Vec<usize>>,
    pub fixed_point: bool,
    pub sortable: bool,
    pub reverse_sortable: bool,
    pub reachable_fixed_points: Vec<SignedPermutation>,
    pub parity: ParityClass,
    pub contexts: Vec<CdrContext>,
}

pub fn analyze_cdr(sp: &SignedPermutation) -> CdrAnalysis {
    let d = build_d(sp);
    let search = CdrSearch::global();
    CdrAnalysis {
        permutation: sp.clone(),
        expanded: expand_star(sp),
        cycle_count: d.cycle_count(),
        d,
        necessary_condition: cdr_necessary_condition(sp),
        pile_analogue: pile_analogue(sp),
        fixed_point: is_cdr_fixed_point(sp),
        sortable: search.can_reach(sp, CdrTarget::Identity),
        reverse_sortable: search.can_reach(sp, CdrTarget::ReversedNegative),
        reachable_fixed_points: reachable_cdr_fixed_points(sp).into_iter().collect(),
        parity: signed_parity_class(sp),
        contexts: list_cdr_contexts(sp),
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "operation", rename_all = "lowercase")]
pub enum Analysis {
    Cds(CdsAnalysis),
    Cdr(CdrAnalysis),
}

pub fn analyze(p: &AnyPermutation) -> Analysis {
    match p {
        AnyPermutation::Unsigned(pi) => Analysis::Cds(analyze_cds(pi)),
        AnyPermutation::Signed(sp) => Analysis::Cdr(analyze_cdr(sp)),
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for CdsAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "permutation      {}", self.permutation)?;
        writeln!(f, "C                {}", self.c)?;
        writeln!(f, "cycles           {}", self.cycle_count)?;
        writeln!(f, "strategic pile   {{{}}}", join(&self.strategic_pile, ","))?;
        writeln!(f, "sortable         {}", self.sortable)?;
        writeln!(f, "fixed point      {}", self.fixed_point)?;
        writeln!(f, "duration         {}", self.duration)?;
        writeln!(f, "reachable        {}", join(&self.reachable_fixed_points, " "))?;
        writeln!(f, "parity           {}", self.parity)?;
        write!(f, "contexts         {}", join(&self.contexts, " "))
    }
}

impl fmt::Display for CdrAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "permutation      {}", self.permutation)?;
        writeln!(f, "expanded         {}", self.expanded)?;
        writeln!(f, "D                {}", self.d)?;
        writeln!(f, "cycles           {}", self.cycle_count)?;
        writeln!(f, "0, 2n disjoint   {}", self.necessary_condition)?;
        if let Some(seg) = &self.pile_analogue {
            writeln!(f, "pile analogue    {{{}}}", join(seg, ","))?;
        }
        writeln!(f, "fixed point      {}", self.fixed_point)?;
        writeln!(f, "sortable         {}", self.sortable)?;
        writeln!(f, "reverse sortable {}", self.reverse_sortable)?;
        writeln!(f, "reachable        {}", join(&self.reachable_fixed_points, " "))?;
        writeln!(f, "parity           {}", self.parity)?;
        write!(f, "contexts         {}", join(&self.contexts, " "))
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Analysis::Cds(a) => a.fmt(f),
            Analysis::Cdr(a) => a.fmt(f),
        }
    }
}
