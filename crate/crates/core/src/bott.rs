//! Cohomology of Schur-functor bundles on the Grassmannian of 4-planes in
//! 6-space, via the weight algorithm: add rho to the block weight, vanish on
//! repeats, otherwise sort and count inversions. The exterior powers of the
//! symmetric square of the tautological subbundle are decomposed twice —
//! a closed-form rule on Frobenius symbols and a brute-force character
//! expansion — and the two must agree.
//!
//! On top of the table sit the Kunneth assembly over the product with P^5
//! and the chained Koszul vanishing certificates for the zero locus of the
//! isotropy section.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;

use crate::polycore::{big_ratio, binomial};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum BottError {
    #[error("partition has {parts} parts, bundle rank is {rank}")]
    TooManyParts { parts: usize, rank: usize },
    #[error("partition parts must be weakly decreasing")]
    NotDecreasing,
    #[error("cover profile degenerate for k = {0}")]
    DegenerateCover(usize),
    #[error("rank k = {k} exceeds bundle rank {rank}")]
    RankTooLarge { k: usize, rank: usize },
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, BottError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(BottError::NotDecreasing);
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A GL(6) weight split into a quotient block of length 2 and a sub block of
/// length 4, each weakly decreasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightVector {
    entries: [i64; 6],
}

impl WeightVector {
    pub fn new(quotient: [i64; 2], sub: [i64; 4]) -> Result<Self, BottError> {
        if quotient[0] < quotient[1] || sub.windows(2).any(|w| w[0] < w[1]) {
            return Err(BottError::NotDecreasing);
        }
        let mut entries = [0i64; 6];
        entries[..2].copy_from_slice(&quotient);
        entries[2..].copy_from_slice(&sub);
        Ok(WeightVector { entries })
    }

    pub fn entries(&self) -> &[i64; 6] {
        &self.entries
    }
}

/// Schur summands of the j-th exterior power of Sym^2 of a rank-`rank`
/// space: partitions of 2j with Frobenius symbol (b+1 | b), at most `rank`
/// rows. Each summand appears with multiplicity one.
pub fn wedge_sym2_decompose(j: usize, rank: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for r in 1..=j {
        if j < r {
            break;
        }
        let target = (j - r) as u32;
        // strictly decreasing b_1 > ... > b_r >= 0 summing to j - r
        let mut bs = Vec::with_capacity(r);
        collect_strict(target, r, u32::MAX, &mut bs, &mut |bs| {
            if let Some(lam) = partition_from_frobenius(bs, rank) {
                out.push(lam);
            }
        });
    }
    out.sort();
    out.reverse();
    out
}

fn collect_strict(
    target: u32,
    slots: usize,
    max: u32,
    cur: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if slots == 0 {
        if target == 0 {
            f(cur);
        }
        return;
    }
    // remaining values must be distinct and below `max`
    let lo = ((slots * (slots - 1)) / 2) as u32;
    if target < lo {
        return;
    }
    let hi = target.min(max.saturating_sub(1));
    for v in (0..=hi).rev() {
        if v < (slots - 1) as u32 {
            break;
        }
        cur.push(v);
        collect_strict(target - v, slots - 1, v, cur, f);
        cur.pop();
    }
}

/// Rebuilds the partition with Frobenius arms b_i + 1 and legs b_i; `None`
/// if it needs more than `rank` rows.
fn partition_from_frobenius(bs: &[u32], rank: usize) -> Option<Partition> {
    let r = bs.len();
    let nrows = (bs[0] + 1) as usize;
    if nrows > rank {
        return None;
    }
    let mut lam = Vec::with_capacity(nrows);
    for i in 0..nrows {
        if i < r {
            // arm a_i = b_i + 1 gives row length a_i + i + 1 (0-indexed)
            lam.push(bs[i] + 1 + i as u32 + 1);
        } else {
            // below the Durfee square: column lengths are b_k + k + 1
            let v = bs
                .iter()
                .enumerate()
                .filter(|(k, b)| **b as usize + k + 1 >= i + 1)
                .count() as u32;
            lam.push(v);
        }
    }
    Some(Partition::new(lam).unwrap())
}

/// Dimension of the Schur functor S_mu(C^rank) for a weakly decreasing
/// integer weight, by the Weyl dimension formula.
pub fn dim_schur(mu: &[i64], rank: usize) -> u128 {
    let mut padded = mu.to_vec();
    padded.resize(rank, 0);
    let mut acc = BigRational::one();
    for i in 0..rank {
        for j in i + 1..rank {
            acc *= big_ratio(padded[i] - padded[j] + (j - i) as i64, (j - i) as i64);
        }
    }
    let int = acc.to_integer();
    u128::try_from(int).expect("Weyl dimension must be a positive integer")
}

/// A single nonvanishing cohomology group: its degree and dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CohomologyEntry {
    pub degree: usize,
    pub dim: u128,
}

/// Cohomology of S_lambda(S) on the Grassmannian of `k_sub`-planes in
/// `n_amb`-space, S the tautological subbundle: form (0^{n_amb-k_sub} | lam),
/// add rho, vanish on repeats, else the inversion count is the only
/// nonvanishing degree.
pub fn bott_cohomology(
    lambda: &Partition,
    k_sub: usize,
    n_amb: usize,
) -> Result<Option<CohomologyEntry>, BottError> {
    if lambda.len() > k_sub {
        return Err(BottError::TooManyParts {
            parts: lambda.len(),
            rank: k_sub,
        });
    }
    let q = n_amb - k_sub;
    let mut v: Vec<i64> = vec![0; q];
    v.extend(lambda.parts().iter().map(|&p| p as i64));
    v.resize(n_amb, 0);
    // dotted weight
    for (i, x) in v.iter_mut().enumerate() {
        *x += (n_amb - 1 - i) as i64;
    }
    let mut seen = BTreeSet::new();
    for &x in &v {
        if !seen.insert(x) {
            return Ok(None);
        }
    }
    let inversions = bubble_sort_descending(&mut v);
    let mu: Vec<i64> = v
        .iter()
        .enumerate()
        .map(|(i, &x)| x - (n_amb - 1 - i) as i64)
        .collect();
    Ok(Some(CohomologyEntry {
        degree: inversions,
        dim: dim_schur(&mu, n_amb),
    }))
}

/// Sorts descending in place, returning the number of adjacent
/// transpositions used.
pub fn bubble_sort_descending(v: &mut [i64]) -> usize {
    let mut swaps = 0;
    for i in 0..v.len() {
        for j in (i + 1..v.len()).rev() {
            if v[j - 1] < v[j] {
                v.swap(j - 1, j);
                swaps += 1;
            }
        }
    }
    swaps
}

/// The (i, j) pairs with nonvanishing H^i of the j-th exterior power of
/// Sym^2(S) on the Grassmannian of 4-planes in 6-space, j = 1..=10.
pub fn vanishing_table() -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for j in 1..=10 {
        for lam in wedge_sym2_decompose(j, 4) {
            if let Some(entry) = bott_cohomology(&lam, 4, 6).unwrap() {
                out.insert((entry.degree, j));
            }
        }
    }
    out
}

/// Checks the rank bookkeeping sum dim S_lambda(C^4) over the summands of
/// the j-th wedge equals C(10, j).
pub fn wedge_dimension_identity(j: usize) -> bool {
    let total: u128 = wedge_sym2_decompose(j, 4)
        .iter()
        .map(|lam| {
            let mu: Vec<i64> = lam.parts().iter().map(|&p| p as i64).collect();
            dim_schur(&mu, 4)
        })
        .sum();
    total == binomial(10, j as u64) as u128
}

/// H^b of O(m) on P^5: degree 0 for m >= 0, degree 5 for m <= -6, else none.
pub fn line_bundle_cohomology_p5(m: i64) -> Option<CohomologyEntry> {
    if m >= 0 {
        Some(CohomologyEntry {
            degree: 0,
            dim: binomial((m + 5) as u64, 5) as u128,
        })
    } else if m <= -6 {
        Some(CohomologyEntry {
            degree: 5,
            dim: binomial((-m - 1) as u64, 5) as u128,
        })
    } else {
        None
    }
}

/// Cohomology of O(d) boxed with the j-th wedge of the dual isotropy bundle
/// on the product of the Grassmannian with P^5, assembled by Kunneth from
/// the vanishing table and line-bundle cohomology of O(d - j).
pub fn kunneth_h(j: usize, d: i64) -> Vec<CohomologyEntry> {
    let Some(line) = line_bundle_cohomology_p5(d - j as i64) else {
        return Vec::new();
    };
    let mut by_degree: BTreeMap<usize, u128> = BTreeMap::new();
    for lam in wedge_sym2_decompose(j, 4) {
        if let Some(e) = bott_cohomology(&lam, 4, 6).unwrap() {
            *by_degree.entry(e.degree + line.degree).or_insert(0) += e.dim * line.dim;
        }
    }
    by_degree
        .into_iter()
        .map(|(degree, dim)| CohomologyEntry { degree, dim })
        .collect()
}

/// The chained-vanishing hypothesis along the Koszul resolution of the
/// isotropy zero locus: H^{j+k-1}(O(d) (x) wedge^j P^*) = 0 for j = 1..=10.
/// True certifies H^k of the twisted ideal sheaf vanishing, hence
/// connectedness (k = 1, d = 0), vanishing irregularity (k = 2, d = 0), and
/// the absence of low-degree equations (k = 0, d = 1, 2).
pub fn koszul_certificate(k: usize, d: i64) -> bool {
    (1..=10).all(|j| {
        let want = j + k;
        if want == 0 {
            return true;
        }
        let target = want - 1;
        kunneth_h(j, d).iter().all(|e| e.degree != target)
    })
}

/// Shape of the isotropic-family cover over the rank <= k stratum for a
/// twisted symmetric map on a rank `e_rank` trivial bundle over P^5.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleCoverProfile {
    pub h: usize,
    /// Linear dimension of the isotropic subspaces in the fiber.
    pub m: usize,
    pub families: usize,
    pub family_dim: u64,
    pub edim_z: i64,
}

pub fn double_cover_profile(e_rank: usize, k: usize) -> Result<DoubleCoverProfile, BottError> {
    if k > e_rank {
        return Err(BottError::RankTooLarge { k, rank: e_rank });
    }
    if k == 0 {
        return Err(BottError::DegenerateCover(k));
    }
    let (h, m, families, family_dim) = if k % 2 == 0 {
        let h = k / 2;
        (h, e_rank - h, 2, binomial(h as u64, 2))
    } else {
        let h = (k - 1) / 2;
        (h, e_rank - h - 1, 1, binomial(h as u64 + 1, 2))
    };
    if m == 0 || m > e_rank {
        return Err(BottError::DegenerateCover(k));
    }
    let edim_z = 5 + (m * (e_rank - m)) as i64 - binomial(m as u64 + 1, 2) as i64;
    Ok(DoubleCoverProfile {
        h,
        m,
        families,
        family_dim,
        edim_z,
    })
}

// ---------------------------------------------------------------------------
// Character brute force: the independent route to the plethysm.
// ---------------------------------------------------------------------------

type SymPoly = BTreeMap<Vec<u8>, i64>;

fn sym_insert(p: &mut SymPoly, key: Vec<u8>, c: i64) {
    use std::collections::btree_map::Entry;
    if c == 0 {
        return;
    }
    match p.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

fn sym_mul(a: &SymPoly, b: &SymPoly) -> SymPoly {
    let mut out = SymPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let key: Vec<u8> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            sym_insert(&mut out, key, ca * cb);
        }
    }
    out
}

fn sym_sub(a: &mut SymPoly, b: &SymPoly, scale: i64) {
    for (k, c) in b {
        sym_insert(a, k.clone(), -scale * c);
    }
}

/// Complete homogeneous symmetric polynomial h_k in `rank` variables.
fn complete_homogeneous(k: i64, rank: usize) -> SymPoly {
    let mut out = SymPoly::new();
    if k < 0 {
        return out;
    }
    let mut cur = vec![0u8; rank];
    fn rec(out: &mut SymPoly, cur: &mut Vec<u8>, i: usize, rem: u8) {
        if i + 1 == cur.len() {
            cur[i] = rem;
            out.insert(cur.clone(), 1);
            return;
        }
        for e in 0..=rem {
            cur[i] = e;
            rec(out, cur, i + 1, rem - e);
        }
        cur[i] = 0;
    }
    rec(&mut out, &mut cur, 0, k as u8);
    out
}

/// Schur polynomial s_lambda in `rank` variables via the Jacobi-Trudi
/// determinant in complete homogeneous polynomials.
fn schur_polynomial(lam: &Partition, rank: usize) -> SymPoly {
    let l = lam.len().max(1);
    let entry = |i: usize, j: usize| -> SymPoly {
        let part = lam.parts().get(i).copied().unwrap_or(0) as i64;
        complete_homogeneous(part - i as i64 + j as i64, rank)
    };
    det_sym(&entry, l)
}

fn det_sym(entry: &dyn Fn(usize, usize) -> SymPoly, n: usize) -> SymPoly {
    // cofactor expansion over the first row with explicit column lists
    fn go(entry: &dyn Fn(usize, usize) -> SymPoly, rows: &[usize], cols: &[usize]) -> SymPoly {
        if rows.len() == 1 {
            return entry(rows[0], cols[0]);
        }
        let mut acc = SymPoly::new();
        for (idx, &c) in cols.iter().enumerate() {
            let e = entry(rows[0], c);
            if e.is_empty() {
                continue;
            }
            let rest_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&x| x != c)
                .collect();
            let minor = go(entry, &rows[1..], &rest_cols);
            let prod = sym_mul(&e, &minor);
            let sign = if idx % 2 == 0 { 1 } else { -1 };
            for (k, v) in prod {
                sym_insert(&mut acc, k, sign * v);
            }
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    go(entry, &rows, &cols)
}

/// Brute-force decomposition of the character of the j-th wedge of Sym^2 in
/// `rank` variables into Schur summands with multiplicities.
pub fn wedge_sym2_character_decompose(j: usize, rank: usize) -> Vec<(Partition, i64)> {
    // roots of Sym^2: x_a x_b for a <= b
    let mut roots = Vec::new();
    for a in 0..rank {
        for b in a..rank {
            let mut e = vec![0u8; rank];
            e[a] += 1;
            e[b] += 1;
            roots.push(e);
        }
    }
    // elementary symmetric functions of the roots, by one-root DP
    let mut es: Vec<SymPoly> = vec![SymPoly::new(); j + 1];
    es[0].insert(vec![0u8; rank], 1);
    for root in &roots {
        for t in (1..=j).rev() {
            let shifted: SymPoly = es[t - 1]
                .iter()
                .map(|(k, c)| {
                    let key: Vec<u8> = k.iter().zip(root).map(|(x, y)| x + y).collect();
                    (key, *c)
                })
                .collect();
            for (k, c) in shifted {
                sym_insert(&mut es[t], k, c);
            }
        }
    }
    let mut chi = es.pop().unwrap();
    // strip lex-leading dominant terms
    let mut out = Vec::new();
    while let Some((key, mult)) = chi.iter().next_back().map(|(k, m)| (k.clone(), *m)) {
        debug_assert!(
            key.windows(2).all(|w| w[0] >= w[1]),
            "leading exponent of a symmetric polynomial must be dominant"
        );
        let lam = Partition::new(key.iter().map(|&e| e as u32).collect()).unwrap();
        let s = schur_polynomial(&lam, rank);
        sym_sub(&mut chi, &s, mult);
        out.push((lam, mult));
    }
    out.sort();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn frobenius_rule_small() {
        assert_eq!(wedge_sym2_decompose(1, 4), vec![p(&[2])]);
        assert_eq!(wedge_sym2_decompose(2, 4), vec![p(&[3, 1])]);
        assert_eq!(
            wedge_sym2_decompose(3, 4),
            vec![p(&[4, 1, 1]), p(&[3, 3])]
        );
        assert_eq!(wedge_sym2_decompose(10, 4), vec![p(&[5, 5, 5, 5])]);
    }

    #[test]
    fn closed_form_matches_character_all_j() {
        for j in 1..=10 {
            let closed = wedge_sym2_decompose(j, 4);
            let brute = wedge_sym2_character_decompose(j, 4);
            assert!(
                brute.iter().all(|(_, m)| *m == 1),
                "multiplicity free expected at j = {j}"
            );
            let brute_parts: Vec<Partition> = brute.into_iter().map(|(l, _)| l).collect();
            assert_eq!(closed, brute_parts, "j = {j}");
        }
    }

    #[test]
    fn dimension_bookkeeping() {
        assert_eq!(
            dim_schur(&[3, 1, 0, 0], 4),
            45,
            "S_(3,1) of a 4-space has dimension 45"
        );
        assert_eq!(dim_schur(&[1, 1, 1, 1, 0, 0], 6), 15);
        for j in 1..=10 {
            assert!(wedge_dimension_identity(j), "dimension sum fails at j = {j}");
        }
    }

    #[test]
    fn bott_structure_sheaf() {
        let e = bott_cohomology(&Partition::empty(), 4, 6)
            .unwrap()
            .unwrap();
        assert_eq!(e.degree, 0);
        assert_eq!(e.dim, 1);
    }

    #[test]
    fn bott_repeat_vanishes() {
        assert_eq!(bott_cohomology(&p(&[2]), 4, 6).unwrap(), None);
        // the top wedge is a determinant twist and contributes nothing
        assert_eq!(bott_cohomology(&p(&[5, 5, 5, 5]), 4, 6).unwrap(), None);
    }

    #[test]
    fn bott_sym_square_of_wedge_two() {
        let e = bott_cohomology(&p(&[3, 1]), 4, 6).unwrap().unwrap();
        assert_eq!(e.degree, 2);
        assert_eq!(e.dim, 15);
    }

    #[test]
    fn bott_rejects_wide_partitions() {
        assert!(bott_cohomology(&p(&[1, 1, 1, 1, 1]), 4, 6).is_err());
    }

    #[test]
    fn table_matches_exception_set() {
        let want: BTreeSet<(usize, usize)> = [(2, 2), (2, 3), (2, 4), (4, 5), (4, 6), (4, 7), (6, 9)]
            .into_iter()
            .collect();
        assert_eq!(vanishing_table(), want);
    }

    #[test]
    fn unique_degree_matches_weyl_orbit_search() {
        // brute-force check: inversion count equals the length of the unique
        // sorting permutation, for all summand weights up to |lambda| <= 8
        for j in 1..=4 {
            for lam in wedge_sym2_decompose(j, 4) {
                let mut v: Vec<i64> = vec![0, 0];
                v.extend(lam.parts().iter().map(|&x| x as i64));
                v.resize(6, 0);
                for (i, x) in v.iter_mut().enumerate() {
                    *x += (5 - i) as i64;
                }
                let distinct = v.iter().collect::<BTreeSet<_>>().len() == 6;
                let mut sortings = 0;
                let mut best = None;
                permutations(6, &mut |perm| {
                    let w: Vec<i64> = perm.iter().map(|&i| v[i]).collect();
                    if w.windows(2).all(|x| x[0] > x[1]) {
                        sortings += 1;
                        best = Some(perm_length(perm));
                    }
                });
                if !distinct {
                    assert_eq!(sortings, 0);
                    continue;
                }
                assert_eq!(sortings, 1, "sorting permutation must be unique");
                let mut vv = v.clone();
                assert_eq!(bubble_sort_descending(&mut vv), best.unwrap());
            }
        }
    }

    fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
        let mut idx: Vec<usize> = (0..n).collect();
        heap(&mut idx, n, f);
        fn heap(a: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
            if k == 1 {
                f(a);
                return;
            }
            for i in 0..k {
                heap(a, k - 1, f);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
        }
    }

    fn perm_length(perm: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn kunneth_spec_rows() {
        // H^j of the j-th wedge vanishes for every j
        for j in 1..=10usize {
            assert!(kunneth_h(j, 0).iter().all(|e| e.degree != j));
            assert!(kunneth_h(j, 0).iter().all(|e| e.degree != j + 1));
        }
        // twists by 1 and 2 keep H^{j-1} empty
        for d in 1..=2i64 {
            for j in 1..=10usize {
                assert!(kunneth_h(j, d).iter().all(|e| e.degree != j - 1));
            }
        }
    }

    #[test]
    fn koszul_certificates() {
        assert!(koszul_certificate(1, 0));
        assert!(koszul_certificate(2, 0));
        assert!(koszul_certificate(0, 1));
        assert!(koszul_certificate(0, 2));
    }

    #[test]
    fn cover_profiles() {
        let even = double_cover_profile(6, 4).unwrap();
        assert_eq!(
            even,
            DoubleCoverProfile {
                h: 2,
                m: 4,
                families: 2,
                family_dim: 1,
                edim_z: 3
            }
        );
        let odd = double_cover_profile(6, 5).unwrap();
        assert_eq!(odd.families, 1);
        assert_eq!(odd.family_dim, 3);
        assert!(double_cover_profile(6, 0).is_err());
        assert!(double_cover_profile(6, 7).is_err());
    }

    #[test]
    fn line_bundle_table() {
        assert_eq!(line_bundle_cohomology_p5(0).unwrap().dim, 1);
        assert_eq!(line_bundle_cohomology_p5(-1), None);
        assert_eq!(line_bundle_cohomology_p5(-5), None);
        let e = line_bundle_cohomology_p5(-6).unwrap();
        assert_eq!(e.degree, 5);
        assert_eq!(e.dim, 1);
    }
}
