//! Dense linear algebra over GF(p): rank, kernel, and an incremental echelon
//! basis tuned for the large graded-piece eliminations.
//!
//! Small matrices (rank censuses, kernels of evaluated Hessians) use plain
//! u64 elimination. The [`EchelonBasis`] keeps pivot rows as u32 with monic
//! leads and reduces incoming rows in a u64 workspace with a single lazy
//! modular reduction, so the hot loop is one widening multiply-add per entry.

use super::field::{Field, Gf};

/// Exact rank of a dense matrix over GF(p) by Gaussian elimination.
pub fn rank_ff(rows: &[Vec<u64>], gf: Gf) -> usize {
    let p = gf.prime();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v % p).collect())
        .collect();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = gf.inv(&m[rank][col]).unwrap();
        for v in m[rank][col..].iter_mut() {
            *v = *v * inv % p;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for r in rest.iter_mut() {
            let c = r[col];
            if c != 0 {
                let cneg = p - c;
                for (v, &pv) in r[col..].iter_mut().zip(&prow[col..]) {
                    *v = (*v + cneg * pv) % p;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Basis of the right kernel of a dense matrix over GF(p).
pub fn kernel_basis(rows: &[Vec<u64>], ncols: usize, gf: Gf) -> Vec<Vec<u64>> {
    let p = gf.prime();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v % p).collect())
        .collect();
    let nrows = m.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = gf.inv(&m[rank][col]).unwrap();
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..nrows {
            if r != rank && m[r][col] != 0 {
                let cneg = p - m[r][col];
                let prow = m[rank].clone();
                for (v, pv) in m[r].iter_mut().zip(prow) {
                    *v = (*v + cneg * pv) % p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![0u64; ncols];
        v[fc] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[r][fc] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Matrix-vector product over GF(p).
pub fn mat_vec(rows: &[Vec<u64>], v: &[u64], gf: Gf) -> Vec<u64> {
    let p = gf.prime();
    rows.iter()
        .map(|r| {
            let mut acc: u128 = 0;
            for (&a, &b) in r.iter().zip(v) {
                acc += (a as u128) * (b as u128);
            }
            (acc % p as u128) as u64
        })
        .collect()
}

/// Incrementally built row-echelon basis over GF(p), p < 2^20.
///
/// Pivot rows are monic with distinct leading columns. `insert` reduces a row
/// against the existing pivots and either absorbs it (rank unchanged) or adds
/// a new pivot. Accumulated values stay below 2^63 for p < 2^20 and fewer
/// than 2^22 pivots, so the inner loop needs no per-entry reduction.
pub struct EchelonBasis {
    p: u64,
    gf: Gf,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    leads: Vec<usize>,
    pivot_of_col: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl EchelonBasis {
    pub fn new(ncols: usize, gf: Gf) -> Self {
        assert!(gf.prime() < (1 << 20), "echelon basis needs p < 2^20");
        EchelonBasis {
            p: gf.prime(),
            gf,
            ncols,
            rows: Vec::new(),
            leads: Vec::new(),
            pivot_of_col: vec![NO_PIVOT; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[u32])> {
        self.leads
            .iter()
            .copied()
            .zip(self.rows.iter().map(|r| r.as_slice()))
    }

    /// Reduces `row` (arbitrary u64 entries) against the basis; returns true
    /// when it extends the rank.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        let p = self.p;
        let mut col = 0;
        while col < self.ncols {
            let v = row[col] % p;
            if v == 0 {
                col += 1;
                continue;
            }
            let pivot = self.pivot_of_col[col];
            if pivot == NO_PIVOT {
                // new pivot: normalize to monic and store as u32
                let inv = self.gf.pow(v, p - 2);
                let stored: Vec<u32> = row[col..]
                    .iter()
                    .map(|&x| ((x % p) * inv % p) as u32)
                    .collect();
                let mut full = vec![0u32; col];
                full.extend(stored);
                self.pivot_of_col[col] = self.rows.len() as u32;
                self.rows.push(full);
                self.leads.push(col);
                return true;
            }
            // row -= v * pivot (pivot is monic), done as row += (p - v) * pivot
            let c = p - v;
            let prow = &self.rows[pivot as usize];
            for (x, &pv) in row[col..].iter_mut().zip(&prow[col..]) {
                *x += c * pv as u64;
            }
            debug_assert_eq!(row[col] % p, 0);
            col += 1;
        }
        false
    }

    /// Inserts a row already known to have a fresh leading column and monic
    /// lead, skipping reduction. Used for the first multiply-up batch, where
    /// monomial shifts of an echelon set stay echelon.
    pub fn insert_unreduced(&mut self, lead: usize, row: Vec<u32>) {
        debug_assert_eq!(self.pivot_of_col[lead], NO_PIVOT);
        debug_assert_eq!(row[lead], 1);
        self.pivot_of_col[lead] = self.rows.len() as u32;
        self.rows.push(row);
        self.leads.push(lead);
    }
}
