//! Finite-field enumeration of the Hessian rank strata, the symmetric
//! correspondence of annihilating pairs, triangles, and the pointwise
//! singular-locus check.
//!
//! Every assertion here is about GF(p)-rational points. Emptiness over F_p
//! never certifies emptiness over the closure; reports carry the prime used
//! so callers can rerun at several primes.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::hessian::{hessian_data, CubicForm};
use crate::polycore::{kernel_basis, Field, Gf, Polynomial};

/// Hard cap on enumerated points (about P^5 over F_31).
pub const ENUMERATION_BUDGET: u64 = 32_000_000;
/// Cap on stored point lists in a census report; counts stay exact.
pub const POINT_LIST_CAP: usize = 4096;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("enumeration budget exceeded: |P^{n}(F_{p})| = {points} > {budget}")]
    BudgetExceeded {
        n: usize,
        p: u64,
        points: u64,
        budget: u64,
    },
}

/// A point of P^n(F_p), normalized so the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<u64>,
}

impl ProjPoint {
    /// Normalizes arbitrary homogeneous coordinates; `None` if all zero.
    pub fn normalized(coords: &[u64], gf: Gf) -> Option<ProjPoint> {
        let p = gf.prime();
        let lead = coords.iter().position(|&c| c % p != 0)?;
        let inv = gf.inv(&(coords[lead] % p)).unwrap();
        Some(ProjPoint {
            coords: coords.iter().map(|&c| (c % p) * inv % p).collect(),
        })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(":")
        )
    }
}

/// |P^n(F_p)| = (p^{n+1} - 1)/(p - 1).
pub fn proj_point_count(n: usize, p: u64) -> u64 {
    let mut acc: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..=n {
        acc += pw;
        pw = pw.saturating_mul(p);
    }
    acc
}

/// Iterates P^n(F_p) in canonical order: leading index ascending, trailing
/// coordinates counting up base p.
pub fn proj_points(n: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..=n).flat_map(move |lead| {
        let free = n - lead;
        let total = p.pow(free as u32);
        (0..total).map(move |mut code| {
            let mut coords = vec![0u64; n + 1];
            coords[lead] = 1;
            for i in (lead + 1..=n).rev() {
                coords[i] = code % p;
                code /= p;
            }
            coords
        })
    })
}

fn check_budget(n: usize, p: u64) -> Result<u64, StrataError> {
    let points = proj_point_count(n, p);
    if points > ENUMERATION_BUDGET {
        return Err(StrataError::BudgetExceeded {
            n,
            p,
            points,
            budget: ENUMERATION_BUDGET,
        });
    }
    Ok(points)
}

/// The Hessian as an (n+1)x(n+1) grid of linear-form coefficient vectors,
/// cheap to evaluate pointwise.
pub struct LinearMatrix {
    size: usize,
    p: u64,
    // coeffs[(i*size+j)*size + k] = coefficient of x_k in entry (i,j)
    coeffs: Vec<u64>,
}

impl LinearMatrix {
    pub fn from_cubic(f: &CubicForm<Gf>) -> LinearMatrix {
        let data = hessian_data(f);
        let size = f.nvars();
        let p = f.poly().field().prime();
        let mut coeffs = vec![0u64; size * size * size];
        for i in 0..size {
            for j in 0..size {
                let entry = data.matrix.entry(i, j);
                for (m, c) in entry.terms() {
                    let k = m.exps().iter().position(|&e| e == 1).unwrap();
                    coeffs[(i * size + j) * size + k] = *c;
                }
            }
        }
        LinearMatrix { size, p, coeffs }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Fills `out` (size*size scratch) with the evaluated matrix.
    pub fn eval_into(&self, x: &[u64], out: &mut [u64]) {
        let s = self.size;
        let p = self.p;
        for i in 0..s {
            for j in i..s {
                let base = (i * s + j) * s;
                let mut acc: u64 = 0;
                for k in 0..s {
                    acc += self.coeffs[base + k] * x[k] % p;
                }
                let v = acc % p;
                out[i * s + j] = v;
                out[j * s + i] = v;
            }
        }
    }

    pub fn eval_rows(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let s = self.size;
        let mut flat = vec![0u64; s * s];
        self.eval_into(x, &mut flat);
        flat.chunks(s).map(|r| r.to_vec()).collect()
    }
}

/// In-place rank of a small row-major s x s matrix over GF(p).
fn rank_small(m: &mut [u64], s: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..s {
        let mut piv = None;
        for r in rank..s {
            if m[r * s + col] % p != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        if piv != rank {
            for c in 0..s {
                m.swap(rank * s + c, piv * s + c);
            }
        }
        let inv = mod_inv(m[rank * s + col] % p, p);
        for c in col..s {
            m[rank * s + c] = m[rank * s + c] % p * inv % p;
        }
        for r in rank + 1..s {
            let f = m[r * s + col] % p;
            if f != 0 {
                let fneg = p - f;
                for c in col..s {
                    m[r * s + c] = (m[r * s + c] + fneg * m[rank * s + c]) % p;
                }
            }
        }
        rank += 1;
        if rank == s {
            break;
        }
    }
    rank
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Point list for one rank value; `truncated` marks a capped list (the count
/// in the census stays exact).
#[derive(Clone, Debug)]
pub struct RankPoints {
    pub rank: usize,
    pub points: Vec<ProjPoint>,
    pub truncated: bool,
}

/// Exhaustive rank census of P^n(F_p) under x -> Rank(H_f(x)).
#[derive(Clone, Debug)]
pub struct StratumReport {
    pub prime: u64,
    pub n: usize,
    /// counts[k] = number of points with rank exactly k, k = 0..=n+1.
    pub counts: Vec<u64>,
    /// Point lists for the two smallest nonempty ranks.
    pub low_rank_points: Vec<RankPoints>,
}

impl StratumReport {
    pub fn total_points(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn points_of_rank(&self, k: usize) -> Option<&RankPoints> {
        self.low_rank_points.iter().find(|rp| rp.rank == k)
    }

    /// Number of points with rank <= k.
    pub fn count_at_most(&self, k: usize) -> u64 {
        self.counts.iter().take(k + 1).sum()
    }
}

struct ChunkCensus {
    counts: Vec<u64>,
    points: Vec<Vec<ProjPoint>>,
}

/// Enumeration chunks: fixed leading index plus fixed first free coordinate.
/// Chunk order is canonical so merged output is deterministic.
fn chunks(n: usize, p: u64) -> Vec<(usize, Option<u64>)> {
    let mut out = Vec::new();
    for lead in 0..n {
        for v in 0..p {
            out.push((lead, Some(v)));
        }
    }
    out.push((n, None));
    out
}

fn for_each_in_chunk(n: usize, p: u64, lead: usize, first: Option<u64>, mut f: impl FnMut(&[u64])) {
    let mut coords = vec![0u64; n + 1];
    coords[lead] = 1;
    match first {
        None => f(&coords),
        Some(v) => {
            coords[lead + 1] = v;
            let free = n - lead - 1;
            let total = p.pow(free as u32);
            for mut code in 0..total {
                for i in (lead + 2..=n).rev() {
                    coords[i] = code % p;
                    code /= p;
                }
                f(&coords);
            }
        }
    }
}

pub fn stratify(f: &CubicForm<Gf>) -> Result<StratumReport, StrataError> {
    let gf = *f.poly().field();
    let p = gf.prime();
    let n = f.n();
    check_budget(n, p)?;
    let lm = LinearMatrix::from_cubic(f);
    let s = n + 1;

    let partial: Vec<ChunkCensus> = chunks(n, p)
        .into_par_iter()
        .map(|(lead, first)| {
            let mut counts = vec![0u64; s + 1];
            let mut points: Vec<Vec<ProjPoint>> = vec![Vec::new(); s + 1];
            let mut buf = vec![0u64; s * s];
            for_each_in_chunk(n, p, lead, first, |coords| {
                lm.eval_into(coords, &mut buf);
                let r = rank_small(&mut buf, s, p);
                counts[r] += 1;
                if r < s && points[r].len() < POINT_LIST_CAP {
                    points[r].push(ProjPoint {
                        coords: coords.to_vec(),
                    });
                }
            });
            ChunkCensus { counts, points }
        })
        .collect();

    let mut counts = vec![0u64; s + 1];
    let mut merged: Vec<Vec<ProjPoint>> = vec![Vec::new(); s + 1];
    for c in partial {
        for (k, v) in c.counts.iter().enumerate() {
            counts[k] += v;
        }
        for (k, pts) in c.points.into_iter().enumerate() {
            let room = POINT_LIST_CAP.saturating_sub(merged[k].len());
            merged[k].extend(pts.into_iter().take(room));
        }
    }

    let mut low_rank_points = Vec::new();
    for k in 0..=s {
        if counts[k] > 0 && low_rank_points.len() < 2 {
            let pts = std::mem::take(&mut merged[k]);
            low_rank_points.push(RankPoints {
                rank: k,
                truncated: (pts.len() as u64) < counts[k],
                points: pts,
            });
        }
    }

    Ok(StratumReport {
        prime: p,
        n,
        counts,
        low_rank_points,
    })
}

/// One side of the singular-locus equivalence failing at a point.
#[derive(Clone, Debug)]
pub struct SingularLocusCounterexample {
    pub point: ProjPoint,
    pub gradient_vanishes: bool,
    pub rank: usize,
}

/// Pointwise check that, on the hessian hypersurface, the gradient of `hess`
/// vanishes exactly at the points of rank <= n-1.
#[derive(Clone, Debug)]
pub struct SingularLocusCert {
    pub prime: u64,
    pub n: usize,
    pub pass: bool,
    pub counterexample: Option<SingularLocusCounterexample>,
    pub hessian_points: u64,
    pub singular_points: u64,
}

pub fn verify_singular_locus(f: &CubicForm<Gf>) -> Result<SingularLocusCert, StrataError> {
    let gf = *f.poly().field();
    let p = gf.prime();
    let n = f.n();
    check_budget(n, p)?;
    let data = hessian_data(f);
    let lm = LinearMatrix::from_cubic(f);
    let s = n + 1;
    let hess_grad: Vec<Polynomial<Gf>> = (0..s).map(|i| data.hess.diff(i).unwrap()).collect();

    let mut buf = vec![0u64; s * s];
    let mut hessian_points = 0u64;
    let mut singular_points = 0u64;
    let mut counterexample = None;
    for coords in proj_points(n, p) {
        lm.eval_into(&coords, &mut buf);
        let r = rank_small(&mut buf, s, p);
        if r == s {
            continue; // off the hessian hypersurface
        }
        hessian_points += 1;
        if r <= n - 1 {
            singular_points += 1;
        }
        let grad_zero = hess_grad.iter().all(|g| g.eval(&coords).unwrap() == 0);
        if grad_zero != (r <= n - 1) && counterexample.is_none() {
            counterexample = Some(SingularLocusCounterexample {
                point: ProjPoint { coords: coords.clone() },
                gradient_vanishes: grad_zero,
                rank: r,
            });
        }
    }
    Ok(SingularLocusCert {
        prime: p,
        n,
        pass: counterexample.is_none(),
        counterexample,
        hessian_points,
        singular_points,
    })
}

/// A rational pair of the annihilation correspondence: H_f(x).y = 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GammaPair {
    pub x: ProjPoint,
    pub y: ProjPoint,
}

pub fn gamma_pairs(f: &CubicForm<Gf>) -> Result<Vec<GammaPair>, StrataError> {
    let gf = *f.poly().field();
    let p = gf.prime();
    let n = f.n();
    check_budget(n, p)?;
    let lm = LinearMatrix::from_cubic(f);
    let s = n + 1;
    let mut out = Vec::new();
    let mut buf = vec![0u64; s * s];
    for coords in proj_points(n, p) {
        lm.eval_into(&coords, &mut buf);
        let rows: Vec<Vec<u64>> = buf.chunks(s).map(|r| r.to_vec()).collect();
        let ker = kernel_basis(&rows, s, gf);
        if ker.is_empty() {
            continue;
        }
        let x = ProjPoint {
            coords: coords.clone(),
        };
        for y in proj_points(ker.len() - 1, p) {
            let mut yc = vec![0u64; s];
            for (ci, b) in y.iter().zip(&ker) {
                for k in 0..s {
                    yc[k] = (yc[k] + ci * b[k]) % p;
                }
            }
            let y = ProjPoint::normalized(&yc, gf).unwrap();
            out.push(GammaPair { x: x.clone(), y });
        }
    }
    Ok(out)
}

/// All rational triangles: unordered triples pairwise annihilating under the
/// Hessian product. Output is canonical (each triple sorted, set sorted);
/// every vertex is drawn from the rank <= n-1 stratum.
pub fn find_triangles(f: &CubicForm<Gf>) -> Result<Vec<[ProjPoint; 3]>, StrataError> {
    let gf = *f.poly().field();
    let p = gf.prime();
    let n = f.n();
    check_budget(n, p)?;
    let lm = LinearMatrix::from_cubic(f);
    let s = n + 1;

    // vertices must lie in the singular stratum
    let mut verts: Vec<(ProjPoint, Vec<Vec<u64>>)> = Vec::new();
    let mut buf = vec![0u64; s * s];
    for coords in proj_points(n, p) {
        lm.eval_into(&coords, &mut buf);
        let mut rk = buf.clone();
        if rank_small(&mut rk, s, p) <= n - 1 {
            let rows: Vec<Vec<u64>> = buf.chunks(s).map(|r| r.to_vec()).collect();
            verts.push((ProjPoint { coords: coords.clone() }, rows));
        }
    }
    let vert_set: HashSet<ProjPoint> = verts.iter().map(|(pt, _)| pt.clone()).collect();

    let mut triples = BTreeSet::new();
    for (ai, (a, ma)) in verts.iter().enumerate() {
        for (b, mb) in verts.iter().skip(ai) {
            // b must annihilate under H(a)
            let hb = crate::polycore::mat_vec(ma, b.coords(), gf);
            if hb.iter().any(|&v| v != 0) {
                continue;
            }
            // common kernel of H(a) and H(b)
            let mut stacked = ma.clone();
            stacked.extend(mb.iter().cloned());
            let ker = kernel_basis(&stacked, s, gf);
            if ker.is_empty() {
                continue;
            }
            for z in proj_points(ker.len() - 1, p) {
                let mut zc = vec![0u64; s];
                for (ci, base) in z.iter().zip(&ker) {
                    for k in 0..s {
                        zc[k] = (zc[k] + ci * base[k]) % p;
                    }
                }
                let z = ProjPoint::normalized(&zc, gf).unwrap();
                if !vert_set.contains(&z) {
                    continue;
                }
                let mut t = [a.clone(), b.clone(), z];
                t.sort();
                triples.insert(t);
            }
        }
    }
    Ok(triples.into_iter().collect())
}

/// Pairs of the correspondence at which the stacked block (H(y) | H(x)) drops
/// below full rank, i.e. the two kernels intersect. These are exactly the
/// pairs extending to a triangle.
pub fn gamma_singular_pairs(f: &CubicForm<Gf>) -> Result<Vec<GammaPair>, StrataError> {
    let gf = *f.poly().field();
    let pairs = gamma_pairs(f)?;
    let lm = LinearMatrix::from_cubic(f);
    let s = f.n() + 1;
    let mut out = Vec::new();
    for pair in pairs {
        let mx = lm.eval_rows(pair.x.coords());
        let my = lm.eval_rows(pair.y.coords());
        // (H(y) | H(x)) has rank < s iff ker H(x) meets ker H(y)
        let mut stacked = mx;
        stacked.extend(my);
        if !kernel_basis(&stacked, s, gf).is_empty() {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Randomized check of the isotropic rank bound: a symmetric form vanishing
/// on an l-dimensional subspace of an (e+1)-dimensional space has rank at
/// most 2(e+1-l). Returns false on any violation.
pub fn rank_bound_lemma_check(trials: usize, seed: u64) -> bool {
    let gf = Gf::new(101).unwrap();
    let p = gf.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let size = rng.gen_range(3..=8usize);
        let l = rng.gen_range(1..=size);
        // random invertible change of basis
        let basis = loop {
            let c: Vec<Vec<u64>> = (0..size)
                .map(|_| (0..size).map(|_| rng.gen_range(0..p)).collect())
                .collect();
            if crate::polycore::rank_ff(&c, gf) == size {
                break c;
            }
        };
        // Gram matrix with zero upper-left l x l block
        let mut gram = vec![vec![0u64; size]; size];
        for i in 0..size {
            for j in i..size {
                if i < l && j < l {
                    continue;
                }
                let v = rng.gen_range(0..p);
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        // phi = C^{-T} G C^{-1}, so that C^T phi C = G and the span of the
        // first l columns of C is isotropic for phi
        let cinv = invert(&basis, gf).unwrap();
        let cinv_t = transpose(&cinv);
        let phi = mat_mul(&mat_mul(&cinv_t, &gram, p), &cinv, p);
        let rank = crate::polycore::rank_ff(&phi, gf);
        if rank > 2 * (size - l) {
            return false;
        }
    }
    true
}

fn transpose(m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let r = m.len();
    let c = m[0].len();
    (0..c).map(|j| (0..r).map(|i| m[i][j]).collect()).collect()
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc: u128 = 0;
                    for t in 0..k {
                        acc += a[i][t] as u128 * b[t][j] as u128;
                    }
                    (acc % p as u128) as u64
                })
                .collect()
        })
        .collect()
}

/// Matrix inverse over GF(p) by augmented elimination.
pub fn invert(m: &[Vec<u64>], gf: Gf) -> Option<Vec<Vec<u64>>> {
    let p = gf.prime();
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u64> = row.iter().map(|&v| v % p).collect();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = mod_inv(a[col][col], p);
        for v in a[col].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = p - a[r][col];
                let prow = a[col].clone();
                for (v, pv) in a[r].iter_mut().zip(prow) {
                    *v = (*v + f * pv) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
