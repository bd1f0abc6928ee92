//! Square matrices of polynomials: determinants and minors.
//!
//! Determinants are computed by dynamic programming over column subsets so
//! that the expansion of shared row prefixes is reused. Matrices here are at
//! most 8x8 (Hessians up to n = 7), so the 2^size state table is small. A
//! plain cofactor expansion is kept as the independent oracle.

use super::field::Field;
use super::poly::Polynomial;
use super::PolyError;

pub const MAX_DET_SIZE: usize = 8;

#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix<F: Field> {
    size: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    /// Builds a matrix from row-major entries; all entries must agree on the
    /// number of variables.
    pub fn new(size: usize, entries: Vec<Polynomial<F>>) -> Result<Self, PolyError> {
        if entries.len() != size * size {
            return Err(PolyError::MatrixShape {
                expected: size * size,
                got: entries.len(),
            });
        }
        if let Some(first) = entries.first() {
            let nv = first.nvars();
            if entries.iter().any(|e| e.nvars() != nv) {
                return Err(PolyError::MixedVariableCounts);
            }
        }
        Ok(PolyMatrix { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.entries.first().map_or(0, |e| e.nvars())
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.size + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (i + 1..self.size).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix<F> {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.entry(i, j).clone()))
            .collect();
        PolyMatrix {
            size: rows.len(),
            entries,
        }
    }

    /// Determinant via subset dynamic programming.
    pub fn det(&self) -> Result<Polynomial<F>, PolyError> {
        if self.size > MAX_DET_SIZE {
            return Err(PolyError::MatrixTooLarge(self.size));
        }
        let field = match self.entries.first() {
            None => return Err(PolyError::MatrixShape { expected: 1, got: 0 }),
            Some(e) => e.field().clone(),
        };
        let n = self.size;
        let nvars = self.nvars();
        // state[mask] = det of rows 0..popcount(mask) on the columns of mask;
        // None means that prefix contributes zero
        let mut state: Vec<Option<Polynomial<F>>> = vec![None; 1 << n];
        state[0] = Some(Polynomial::constant(field.clone(), nvars, field.one()));
        for r in 0..n {
            let mut next: Vec<Option<Polynomial<F>>> = vec![None; 1 << n];
            for mask in 0..(1u32 << n) {
                let prev = match &state[mask as usize] {
                    Some(p) if !p.is_zero() => p,
                    _ => continue,
                };
                // expand along row r into each column j not in mask
                for j in 0..n {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let mij = self.entry(r, j);
                    if mij.is_zero() {
                        continue;
                    }
                    // local column index of j within mask | 1<<j
                    let below = (mask & ((1 << j) - 1)).count_ones() as usize;
                    let term = prev.mul(mij);
                    let term = if (r + below) % 2 == 1 { term.neg() } else { term };
                    let slot = &mut next[(mask | (1 << j)) as usize];
                    *slot = Some(match slot.take() {
                        Some(acc) => acc.add(&term),
                        None => term,
                    });
                }
            }
            state = next;
        }
        Ok(state[(1usize << n) - 1]
            .take()
            .unwrap_or_else(|| Polynomial::zero(field, nvars)))
    }

    /// Determinant by first-row cofactor expansion; the independent route
    /// used to cross-check the subset DP.
    pub fn det_cofactor(&self) -> Result<Polynomial<F>, PolyError> {
        if self.size > MAX_DET_SIZE {
            return Err(PolyError::MatrixTooLarge(self.size));
        }
        let field = match self.entries.first() {
            None => return Err(PolyError::MatrixShape { expected: 1, got: 0 }),
            Some(e) => e.field().clone(),
        };
        let nvars = self.nvars();
        if self.size == 1 {
            return Ok(self.entry(0, 0).clone());
        }
        let rows: Vec<usize> = (1..self.size).collect();
        let mut acc = Polynomial::zero(field, nvars);
        for j in 0..self.size {
            let a = self.entry(0, j);
            if a.is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..self.size).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rows, &cols).det_cofactor()?;
            let term = a.mul(&minor);
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        Ok(acc)
    }

    /// All `order x order` minors. With `dedupe_symmetric` on a symmetric
    /// matrix, one representative is kept per unordered (row-set, column-set)
    /// pair; minor(R,C) = minor(C,R) there since the submatrices are mutual
    /// transposes.
    pub fn minors(&self, order: usize, dedupe_symmetric: bool) -> Result<Vec<Polynomial<F>>, PolyError> {
        if order == 0 || order > self.size {
            return Err(PolyError::MinorOrder {
                order,
                size: self.size,
            });
        }
        if dedupe_symmetric {
            assert!(
                self.is_symmetric(),
                "dedupe_symmetric requires a symmetric matrix"
            );
        }
        let sets = subsets(self.size, order);
        let mut out = Vec::new();
        for (ri, rows) in sets.iter().enumerate() {
            for (ci, cols) in sets.iter().enumerate() {
                if dedupe_symmetric && ci < ri {
                    continue;
                }
                out.push(self.submatrix(rows, cols).det()?);
            }
        }
        Ok(out)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::field::{Gf, Rat};
    use crate::polycore::parse::poly_parse;

    fn pm(texts: &[&str], nvars: usize) -> PolyMatrix<Rat> {
        let n = (texts.len() as f64).sqrt() as usize;
        let entries = texts
            .iter()
            .map(|t| poly_parse(t, nvars, Rat).unwrap())
            .collect();
        PolyMatrix::new(n, entries).unwrap()
    }

    #[test]
    fn identity_det() {
        let m = pm(&["1", "0", "0", "0", "1", "0", "0", "0", "1"], 1);
        assert_eq!(m.det().unwrap().to_string(), "1");
    }

    #[test]
    fn dp_matches_cofactor_on_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let gf = Gf::new(101).unwrap();
        for size in 1..=5usize {
            for _ in 0..8 {
                let entries: Vec<_> = (0..size * size)
                    .map(|_| {
                        let terms: Vec<_> = (0..3)
                            .map(|i| {
                                (
                                    crate::polycore::Monomial::var(i, 3),
                                    rng.gen_range(0..101u64),
                                )
                            })
                            .collect();
                        Polynomial::from_terms(gf, 3, terms)
                    })
                    .collect();
                let m = PolyMatrix::new(size, entries).unwrap();
                assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
            }
        }
    }

    #[test]
    fn minor_counts_for_symmetric_6x6() {
        // symmetric 6x6 of linear forms
        let gf = Gf::new(31).unwrap();
        let mut entries = vec![Polynomial::zero(gf, 6); 36];
        for i in 0..6 {
            for j in i..6 {
                let p = Polynomial::variable(gf, 6, (i + j) % 6);
                entries[i * 6 + j] = p.clone();
                entries[j * 6 + i] = p;
            }
        }
        let m = PolyMatrix::new(6, entries).unwrap();
        assert_eq!(m.minors(5, true).unwrap().len(), 21);
        assert_eq!(m.minors(5, false).unwrap().len(), 36);
        let full = m.minors(6, false).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0], m.det().unwrap());
    }

    #[test]
    fn det_degree_on_linear_entries() {
        let m = pm(&["x0", "x1", "x1", "x0"], 2);
        let d = m.det().unwrap();
        assert_eq!(d.homogeneous_degree(), Some(2));
        assert_eq!(d.to_string(), "x0^2 - x1^2");
    }
}
