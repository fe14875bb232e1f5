//! Exact Gaussian elimination over the subfield F.
//!
//! Matrix entries are `KElement`s that lie in F; arithmetic goes through
//! the ambient context, which keeps every value canonical (rational
//! functions stay reduced at each step, so there is no coefficient
//! blow-up beyond what the reduced forms require).

use crate::context::{Context, KElement};

/// Kernel of a matrix given by columns, with the reduced-row-echelon
/// structure exposed: each basis vector has entry 1 at "its" free column
/// and entry 0 at every other free column, so any kernel vector's
/// coefficients in this basis can be read off at the free columns.
pub struct KernelResult {
    pub basis: Vec<Vec<KElement>>,
    pub free_cols: Vec<usize>,
    pub rank: usize,
}

pub fn kernel(ctx: &Context, nrows: usize, cols: &[Vec<KElement>]) -> KernelResult {
    let ncols = cols.len();
    let mut m: Vec<Vec<KElement>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut pivot_cols: Vec<usize> = vec![];
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot_row = (rank..nrows).find(|&r| !ctx.is_zero(&m[r][col]));
        let Some(pr) = pivot_row else { continue };
        m.swap(rank, pr);
        let inv = ctx.inv(&m[rank][col]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = ctx.mul(x, &inv);
        }
        for r in 0..nrows {
            if r != rank && !ctx.is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let s = ctx.mul(&f, &m[rank][c]);
                    m[r][c] = ctx.sub(&m[r][c], &s);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut basis = vec![];
    let mut free_cols = vec![];
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![ctx.zero(); ncols];
        v[free] = ctx.one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = ctx.neg(&m[r][free]);
        }
        basis.push(v);
        free_cols.push(free);
    }
    KernelResult {
        basis,
        free_cols,
        rank,
    }
}

/// Incremental F-linear dependence detector. Vectors are pushed one at a
/// time; the first vector that is a combination of its predecessors
/// returns the combination coefficients (with 1 on the new vector).
pub struct DependenceFinder<'a> {
    ctx: &'a Context,
    /// echelon rows
    rows: Vec<Vec<KElement>>,
    /// rows[i] as a combination of the pushed vectors
    combos: Vec<Vec<KElement>>,
    pivots: Vec<usize>,
    pushed: usize,
}

impl<'a> DependenceFinder<'a> {
    pub fn new(ctx: &'a Context) -> Self {
        DependenceFinder {
            ctx,
            rows: vec![],
            combos: vec![],
            pivots: vec![],
            pushed: 0,
        }
    }

    /// Push the next vector. `Some(lambda)` means
    /// `sum_i lambda[i] * v_i = 0` over all vectors pushed so far, with
    /// `lambda.last() == 1`.
    pub fn push(&mut self, mut v: Vec<KElement>) -> Option<Vec<KElement>> {
        let ctx = self.ctx;
        let mut combo = vec![ctx.zero(); self.pushed + 1];
        combo[self.pushed] = ctx.one();
        self.pushed += 1;
        for (row, (rcombo, &piv)) in self
            .rows
            .iter()
            .zip(self.combos.iter().zip(self.pivots.iter()))
        {
            if ctx.is_zero(&v[piv]) {
                continue;
            }
            let f = v[piv].clone();
            for (x, r) in v.iter_mut().zip(row.iter()) {
                let s = ctx.mul(&f, r);
                *x = ctx.sub(x, &s);
            }
            for (c, rc) in combo.iter_mut().zip(rcombo.iter()) {
                let s = ctx.mul(&f, rc);
                *c = ctx.sub(c, &s);
            }
        }
        let pivot = v.iter().position(|x| !ctx.is_zero(x));
        match pivot {
            None => Some(combo),
            Some(piv) => {
                let inv = ctx.inv(&v[piv]).expect("pivot nonzero");
                for x in v.iter_mut() {
                    *x = ctx.mul(x, &inv);
                }
                for c in combo.iter_mut() {
                    *c = ctx.mul(c, &inv);
                }
                combo.resize(self.pushed, ctx.zero());
                self.rows.push(v);
                self.combos.push(combo);
                self.pivots.push(piv);
                None
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Incremental rank tracker (echelon rows only, no combination tracking).
pub struct RankAccumulator<'a> {
    ctx: &'a Context,
    rows: Vec<Vec<KElement>>,
    pivots: Vec<usize>,
}

impl<'a> RankAccumulator<'a> {
    pub fn new(ctx: &'a Context) -> Self {
        RankAccumulator {
            ctx,
            rows: vec![],
            pivots: vec![],
        }
    }

    /// Add a vector; returns true if it increased the rank.
    pub fn add(&mut self, mut v: Vec<KElement>) -> bool {
        let ctx = self.ctx;
        for (row, &piv) in self.rows.iter().zip(self.pivots.iter()) {
            if ctx.is_zero(&v[piv]) {
                continue;
            }
            let f = v[piv].clone();
            for (x, r) in v.iter_mut().zip(row.iter()) {
                let s = ctx.mul(&f, r);
                *x = ctx.sub(x, &s);
            }
        }
        match v.iter().position(|x| !ctx.is_zero(x)) {
            None => false,
            Some(piv) => {
                let inv = ctx.inv(&v[piv]).expect("pivot nonzero");
                for x in v.iter_mut() {
                    *x = ctx.mul(x, &inv);
                }
                self.rows.push(v);
                self.pivots.push(piv);
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}
