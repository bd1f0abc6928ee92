//! One reproduction command per claim family, each returning a deterministic
//! claim-by-claim report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bott;
use crate::chern;
use crate::hessian::{self, NamedCubic};
use crate::hilbert::{self, GradedIdeal};
use crate::polycore::{big_ratio, dim_graded_piece, poly_parse, Field, Gf, Rat};
use crate::report::{rational_value, Report, ReportInputs};
use crate::strata;

#[derive(thiserror::Error, Debug)]
pub enum CommandError {
    #[error(transparent)]
    Poly(#[from] crate::polycore::PolyError),
    #[error(transparent)]
    Hessian(#[from] hessian::HessianError),
    #[error(transparent)]
    Strata(#[from] strata::StrataError),
    #[error(transparent)]
    Hilbert(#[from] hilbert::HilbertError),
    #[error(transparent)]
    Chern(#[from] chern::ChernError),
    #[error("{0}")]
    Usage(String),
}

pub const DEFAULT_ENUM_PRIMES: [u64; 2] = [11, 31];
pub const DEFAULT_HILBERT_PRIME: u64 = 32003;
const IDENTITY_TRIALS_PER_CELL: usize = 125;

/// Identity batteries: the three Hessian product identities and the
/// directional Euler identity on seeded random data, plus a corrupted-matrix
/// self test.
pub fn cmd_identities(seed: u64, primes: &[u64]) -> Result<Report, CommandError> {
    if primes.is_empty() {
        return Err(CommandError::Usage("need at least one prime".into()));
    }
    let mut report = Report::new(
        "identities",
        ReportInputs {
            primes: primes.to_vec(),
            seeds: vec![seed],
            ..Default::default()
        },
    );
    for &p in primes {
        let gf = Gf::new(p)?;
        for n in 2..=5usize {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ n as u64);
            let mut product_pass = 0usize;
            let mut euler_pass = 0usize;
            for t in 0..IDENTITY_TRIALS_PER_CELL {
                let f = hessian::random_cubic(n, gf, &mut rng);
                let v: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..p)).collect();
                let w: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..p)).collect();
                if hessian::check_hessian_identities(&f, &v, &w).all_pass() {
                    product_pass += 1;
                }
                let deg = 2 + (t % 3);
                let g = random_homogeneous(n, deg, gf, &mut rng);
                if hessian::euler_identity_check(&g, &v).unwrap_or(false) {
                    euler_pass += 1;
                }
            }
            report.claim(
                &format!("identities.product.n{n}.p{p}"),
                "H_f(v).w = grad(vw(f)), 2 grad(f)(v) = H_f(v).v, w^T H_f(v) w = 2(v(f))(w)",
                json!(IDENTITY_TRIALS_PER_CELL),
                json!(product_pass),
            );
            report.claim(
                &format!("identities.euler.n{n}.p{p}"),
                "v^m(G) = m! G(v)",
                json!(IDENTITY_TRIALS_PER_CELL),
                json!(euler_pass),
            );
        }
    }
    // self test: a corrupted matrix must be flagged
    let gf = Gf::new(primes[0])?;
    let f = hessian::named_cubic(NamedCubic::Fermat, 2, gf)?;
    let honest = hessian::hessian_matrix(&f);
    let mut entries: Vec<_> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| honest.entry(i, j).clone())
        .collect();
    entries[1] = poly_parse("x0 + 1", 3, gf)?;
    let broken = crate::polycore::PolyMatrix::new(3, entries)?;
    let detected = !hessian::hessian_identities_with(&broken, &f, &[1, 2, 3], &[4, 5, 6]).all_pass();
    report.claim(
        "identities.selftest.corrupted",
        "a tampered Hessian matrix fails the identity battery",
        json!(true),
        json!(detected),
    );
    Ok(report)
}

fn random_homogeneous(
    n: usize,
    deg: usize,
    gf: Gf,
    rng: &mut ChaCha8Rng,
) -> crate::polycore::Polynomial<Gf> {
    let terms = crate::polycore::monomials_of_degree(n + 1, deg)
        .into_iter()
        .map(|m| (m, rng.gen_range(0..gf.prime())))
        .collect::<Vec<_>>();
    crate::polycore::Polynomial::from_terms(gf, n + 1, terms)
}

/// Where the strata command gets its cubic from.
pub enum CubicSource {
    Named(NamedCubic),
    Seeded(u64),
}

/// Census + singular-locus certificate + correspondence checks for one cubic
/// at one prime.
pub fn cmd_strata(
    source: &CubicSource,
    n: usize,
    prime: u64,
    slow: bool,
) -> Result<Report, CommandError> {
    let gf = Gf::new(prime)?;
    let points = strata::proj_point_count(n, prime);
    if points > 2_000_000 && !slow {
        return Err(CommandError::Usage(format!(
            "census of {points} points needs --slow"
        )));
    }
    let (f, cubic_name, seeds) = match source {
        CubicSource::Named(name) => (
            hessian::named_cubic(*name, n, gf)?,
            name.as_str().to_string(),
            vec![],
        ),
        CubicSource::Seeded(seed) => (
            hessian::random_smooth_cubic(n, prime, *seed)?,
            format!("seeded({seed})"),
            vec![*seed],
        ),
    };
    let mut report = Report::new(
        "strata",
        ReportInputs {
            primes: vec![prime],
            seeds,
            cubic: Some(cubic_name.clone()),
            n: Some(n),
            slow,
        },
    );

    let census = strata::stratify(&f)?;
    report.claim(
        "strata.census.total",
        "counts sum to |P^n(F_p)|",
        json!(points),
        json!(census.total_points()),
    );
    report.claim_with(
        "strata.census.counts",
        "rank census of H_f(x) over P^n(F_p)",
        json!("counts by rank"),
        json!(census.counts),
        true,
    );
    report.claim_with(
        "strata.census.low_ranks",
        "point lists for the two smallest nonempty ranks",
        json!("capped point lists"),
        json!(census
            .low_rank_points
            .iter()
            .map(|rp| json!({
                "rank": rp.rank,
                "truncated": rp.truncated,
                "points": rp.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>()),
        true,
    );

    match source {
        CubicSource::Named(NamedCubic::Klein6) => {
            let r3 = census.count_at_most(3);
            report.claim_with(
                "strata.klein.rank3",
                "the rank <= 3 stratum of the Klein cubic is nonempty",
                json!({"at_least": 6}),
                json!(r3),
                r3 >= 6,
            );
        }
        CubicSource::Named(NamedCubic::Cuspidal3) => {
            let d1: Vec<String> = census
                .points_of_rank(1)
                .map(|rp| rp.points.iter().map(|p| p.to_string()).collect())
                .unwrap_or_default();
            let want = vec!["(0:1:0)".to_string(), "(0:0:1)".to_string()];
            let pass = {
                let mut a = d1.clone();
                let mut b = want.clone();
                a.sort();
                b.sort();
                a == b
            };
            report.claim_with(
                "strata.cuspidal.d1",
                "D_1 = {(0:0:1), (0:1:0)} for the cuspidal plane cubic",
                json!(want),
                json!(d1),
                pass,
            );
        }
        _ => {}
    }

    let cert = strata::verify_singular_locus(&f)?;
    let expect_pass = !matches!(source, CubicSource::Named(NamedCubic::Cuspidal3));
    report.claim(
        "strata.singular_locus_equivalence",
        "grad(hess) = 0 on H_f exactly at rank <= n-1",
        json!(expect_pass),
        json!(cert.pass),
    );

    let pairs = strata::gamma_pairs(&f)?;
    let set: std::collections::BTreeSet<(Vec<u64>, Vec<u64>)> = pairs
        .iter()
        .map(|q| (q.x.coords().to_vec(), q.y.coords().to_vec()))
        .collect();
    let involutive = pairs
        .iter()
        .all(|q| set.contains(&(q.y.coords().to_vec(), q.x.coords().to_vec())));
    report.claim(
        "strata.gamma.involution",
        "(x,y) in the correspondence iff (y,x) is",
        json!(true),
        json!(involutive),
    );
    let diagonal = pairs.iter().filter(|q| q.x == q.y).count();
    report.claim(
        "strata.gamma.diagonal",
        "diagonal pairs exist exactly for singular cubics",
        json!(expect_pass),
        json!(diagonal == 0),
    );

    let triangles = strata::find_triangles(&f)?;
    let singular_pairs = strata::gamma_singular_pairs(&f)?;
    report.claim(
        "strata.triangles.vs_block_jacobian",
        "singular points of the correspondence are the pairs extending to triangles",
        json!(triangles.is_empty()),
        json!(singular_pairs.is_empty()),
    );
    report.claim_with(
        "strata.triangles.count",
        "triangles of the Hessian product",
        json!("count"),
        json!(triangles.len()),
        true,
    );

    Ok(report)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HilbertTarget {
    KleinSurface,
    AdlerCurve,
    CubicSurfacePoints,
}

impl std::str::FromStr for HilbertTarget {
    type Err = CommandError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "klein-surface" => Ok(HilbertTarget::KleinSurface),
            "adler-curve" => Ok(HilbertTarget::AdlerCurve),
            "cubic-surface-points" => Ok(HilbertTarget::CubicSurfacePoints),
            other => Err(CommandError::Usage(format!(
                "unknown hilbert target {other:?}; use klein-surface | adler-curve | cubic-surface-points"
            ))),
        }
    }
}

/// Minor-ideal construction, Hilbert windows, polynomial fits, and invariant
/// extraction for the three stratum families.
pub fn cmd_hilbert(
    target: HilbertTarget,
    prime: u64,
    seed: u64,
    slow: bool,
) -> Result<Report, CommandError> {
    let gf = Gf::new(prime)?;
    match target {
        HilbertTarget::KleinSurface => {
            let mut report = Report::new(
                "hilbert",
                ReportInputs {
                    primes: vec![prime],
                    seeds: vec![],
                    cubic: Some("klein6".into()),
                    n: Some(5),
                    slow,
                },
            );
            let f = hessian::named_cubic(NamedCubic::Klein6, 5, gf)?;
            report.claim(
                "hilbert.klein.hessian_scalar",
                "det H is 64 times the displayed 18-term sextic",
                json!("64"),
                json!(klein_hessian_scalar()?),
            );
            let ideal = GradedIdeal::minor_ideal(&f, 5);
            report.claim(
                "hilbert.klein.generators",
                "the rank <= 4 stratum is cut by 21 quintics",
                json!(21),
                json!(ideal.generators().len()),
            );
            let w = hilbert::hf_window(&ideal, 0, 5);
            report.claim(
                "hilbert.klein.window",
                "HF prefix 1, 6, 21, 56, 126, 231",
                json!([1, 6, 21, 56, 126, 231]),
                json!(w.values),
            );
            report.claim(
                "hilbert.klein.series",
                "HF matches (15t^4+10t^3+6t^2+3t+1)/(1-t)^3",
                json!(true),
                json!(hilbert::series_match(&w, &hilbert::klein_series())),
            );
            let h05: Vec<u64> = (0..=4)
                .map(|d| dim_graded_piece(6, d) as u64 - w.value(d).unwrap())
                .collect();
            report.claim(
                "hilbert.klein.low_degree_equations",
                "h^0(I(d)) = 0 for d <= 4 and h^0(I(5)) = 21",
                json!([[0, 0, 0, 0, 0], 21]),
                json!([h05, dim_graded_piece(6, 5) as u64 - w.value(5).unwrap()]),
            );
            if slow {
                let wf = hilbert::hf_window(&ideal, 6, 11);
                let fit = hilbert::fit_hilbert_polynomial(&wf, 2)?;
                report.claim(
                    "hilbert.klein.fit",
                    "HP(d) = (35/2)d^2 - (105/2)d + 56 on [6,11]",
                    json!([rational_value(&big_ratio(56, 1)), rational_value(&big_ratio(-105, 2)), rational_value(&big_ratio(35, 2))]),
                    json!(fit.coeffs.iter().map(rational_value).collect::<Vec<_>>()),
                );
                let inv = hilbert::extract_invariants(&fit)?;
                report.claim(
                    "hilbert.klein.invariants",
                    "dimension 2, degree 35, chi 56",
                    json!({"dimension": 2, "degree": 35, "chi": 56}),
                    json!({"dimension": inv.dimension, "degree": inv.degree, "chi": inv.chi}),
                );
            }
            Ok(report)
        }
        HilbertTarget::AdlerCurve => {
            let mut report = Report::new(
                "hilbert",
                ReportInputs {
                    primes: vec![prime],
                    seeds: vec![seed],
                    cubic: Some("seeded smooth threefold".into()),
                    n: Some(4),
                    slow,
                },
            );
            let f = hessian::random_filtered_integer_cubic(4, seed, &DEFAULT_ENUM_PRIMES)?;
            let fp = f.reduce_mod(gf)?;
            let ideal = GradedIdeal::minor_ideal(&fp, 4);
            report.claim(
                "hilbert.adler.generators",
                "order-4 minors of a symmetric 5x5, one per unordered pair",
                json!(15),
                json!(ideal.generators().len()),
            );
            let w = hilbert::hf_window(&ideal, 8, 15);
            let fit = hilbert::fit_hilbert_polynomial(&w, 1)?;
            report.claim(
                "hilbert.adler.fit",
                "HP(d) = 20d - 25 on [8,15]",
                json!([rational_value(&big_ratio(-25, 1)), rational_value(&big_ratio(20, 1))]),
                json!(fit.coeffs.iter().map(rational_value).collect::<Vec<_>>()),
            );
            let inv = hilbert::extract_invariants(&fit)?;
            report.claim(
                "hilbert.adler.invariants",
                "a degree-20 curve of genus 26",
                json!({"dimension": 1, "degree": 20, "genus": 26}),
                json!({"dimension": inv.dimension, "degree": inv.degree, "genus": 1 - inv.chi}),
            );
            Ok(report)
        }
        HilbertTarget::CubicSurfacePoints => {
            let mut report = Report::new(
                "hilbert",
                ReportInputs {
                    primes: vec![prime],
                    seeds: vec![seed],
                    cubic: Some("seeded smooth surface".into()),
                    n: Some(3),
                    slow,
                },
            );
            let f = hessian::random_filtered_integer_cubic(3, seed, &DEFAULT_ENUM_PRIMES)?;
            let fp = f.reduce_mod(gf)?;
            let ideal = GradedIdeal::minor_ideal(&fp, 3);
            let w = hilbert::hf_window(&ideal, 8, 12);
            let fit = hilbert::fit_hilbert_polynomial(&w, 0)?;
            report.claim(
                "hilbert.surface.fit",
                "HF stabilizes at the constant 10",
                json!([rational_value(&big_ratio(10, 1))]),
                json!(fit.coeffs.iter().map(rational_value).collect::<Vec<_>>()),
            );
            let inv = hilbert::extract_invariants(&fit)?;
            report.claim(
                "hilbert.surface.invariants",
                "10 isolated singular points",
                json!({"dimension": 0, "degree": 10}),
                json!({"dimension": inv.dimension, "degree": inv.degree}),
            );
            Ok(report)
        }
    }
}

/// Closed-form intersection-theory claims.
pub fn cmd_chern() -> Result<Report, CommandError> {
    let mut report = Report::new("chern", ReportInputs::default());
    for (n, k, want) in [(3usize, 2usize, 10i64), (4, 3, 20), (5, 4, 35)] {
        report.claim(
            &format!("chern.degree.{n}.{k}"),
            "deg of the rank <= k stratum equals the determinantal degree",
            json!(want),
            json!(chern::degree_qk(n, k)?),
        );
    }
    report.claim(
        "chern.codim",
        "the first degenerate stratum has codimension 3 in P^n",
        json!([3, 3, 3, 3]),
        json!((2..=5)
            .map(|n| chern::expected_codim(n, n - 1).unwrap())
            .collect::<Vec<_>>()),
    );
    report.claim(
        "chern.canonical.5.4",
        "2K_Y = 6H on the rank-4 surface",
        json!(6),
        json!(chern::canonical_double(5, 4)),
    );
    report.claim(
        "chern.canonical.4.3",
        "2K_C = 5H on the rank-3 curve",
        json!(5),
        json!(chern::canonical_double(4, 3)),
    );
    for s in 1..=3usize {
        let c = chern::smallest_locus_curve(s)?;
        report.claim_with(
            &format!("chern.curve.s{s}"),
            "smallest stratum curve: parameters, degree, genus",
            json!({"n": c.n, "k": c.k}),
            json!({"n": c.n, "k": c.k, "degree": c.degree, "genus": c.genus}),
            match s {
                1 => (c.degree, c.genus) == (3, 1),
                2 => (c.n, c.k, c.degree, c.genus) == (4, 3, 20, 26),
                _ => c.degree > 0,
            },
        );
    }
    let q_values = [
        ((2usize, 1usize), 3usize, big_ratio(35, 1)),
        ((3, 1), 4, big_ratio(105, 1)),
        ((4, 1), 5, big_ratio(777, 4)),
        ((3, 2), 5, big_ratio(483, 4)),
    ];
    for ((a, b), k, want) in q_values {
        let q = chern::q_schur_tworow(a, b, 5);
        report.claim_with(
            &format!("chern.qschur.{a}.{b}"),
            "two-row Q-Schur value in the half-twisted rank-6 bundle",
            json!({ "coeff": rational_value(&want), "power": k }),
            json!({ "coeff": rational_value(&q.coeff(k)), "power": k }),
            q.is_pure(k) && q.coeff(k) == want,
        );
    }
    report.claim(
        "chern.euler",
        "e(Y) = 357",
        json!(357),
        json!(chern::degeneracy_euler_number()),
    );
    let s = chern::surface_invariants()?;
    report.claim(
        "chern.surface",
        "chi = 56, q = 0, pg = 55, h11 = 245",
        json!({"chi": 56, "q": 0, "pg": 55, "h11": 245, "K2": 315, "KH": 105}),
        json!({"chi": s.chi, "q": s.q, "pg": s.pg, "h11": s.h11, "K2": s.k2, "KH": s.kh}),
    );
    report.claim(
        "chern.chi_twist5",
        "chi(O_Y(5)) = 231 cross-checks the Hilbert window",
        json!(rational_value(&big_ratio(231, 1))),
        json!(rational_value(&s.chi_of_twist(5))),
    );
    // the 2-torsion contradiction: pg = 55 against HF(S_Y, 3) = 56
    let gf = Gf::new(DEFAULT_HILBERT_PRIME)?;
    let klein = hessian::named_cubic(NamedCubic::Klein6, 5, gf)?;
    let hf3 = hilbert::hf_value(&GradedIdeal::minor_ideal(&klein, 5), 3) as i64;
    report.claim(
        "chern.eta.hf3",
        "the cubic graded piece of the coordinate ring has dimension 56",
        json!(56),
        json!(hf3),
    );
    report.claim(
        "chern.eta",
        "pg = 55 < 56 rules out K_Y = 3H linearly",
        json!(true),
        json!(chern::eta_certificate(s.pg, hf3)),
    );
    Ok(report)
}

/// Cohomology table, Koszul vanishing certificates, cover profile, and the
/// projective-normality series identity.
pub fn cmd_bott(slow: bool) -> Result<Report, CommandError> {
    let mut report = Report::new(
        "bott",
        ReportInputs {
            slow,
            ..Default::default()
        },
    );
    let table = bott::vanishing_table();
    let want: std::collections::BTreeSet<(usize, usize)> =
        [(2, 2), (2, 3), (2, 4), (4, 5), (4, 6), (4, 7), (6, 9)]
            .into_iter()
            .collect();
    report.claim(
        "bott.table",
        "nonvanishing (i,j) = {(2,2),(2,3),(2,4),(4,5),(4,6),(4,7),(6,9)}",
        json!(want.iter().collect::<Vec<_>>()),
        json!(table.iter().collect::<Vec<_>>()),
    );
    report.claim(
        "bott.dimension_bookkeeping",
        "summand dimensions add to C(10, j) for every j",
        json!(true),
        json!((1..=10).all(bott::wedge_dimension_identity)),
    );
    report.claim(
        "bott.plethysm_oracle",
        "closed-form summands match the character expansion for every j",
        json!(true),
        json!((1..=10).all(|j| {
            let brute: Vec<_> = bott::wedge_sym2_character_decompose(j, 4)
                .into_iter()
                .map(|(l, _)| l)
                .collect();
            bott::wedge_sym2_decompose(j, 4) == brute
        })),
    );
    for (k, d, id, anchor) in [
        (1usize, 0i64, "bott.koszul.connected", "H^1 of the ideal sheaf vanishes: the isotropy locus is connected"),
        (2, 0, "bott.koszul.h1", "h^1(O_Z) = 0"),
        (0, 1, "bott.koszul.h0_1", "no linear equations through the locus"),
        (0, 2, "bott.koszul.h0_2", "no quadric equations through the locus"),
    ] {
        report.claim(id, anchor, json!(true), json!(bott::koszul_certificate(k, d)));
    }
    let profile = bott::double_cover_profile(6, 4).map_err(|e| CommandError::Usage(e.to_string()))?;
    report.claim(
        "bott.cover_profile",
        "two one-dimensional ruling families over a threefold zero locus",
        json!({"h": 2, "families": 2, "family_dim": 1, "edim_z": 3}),
        json!({"h": profile.h, "families": profile.families, "family_dim": profile.family_dim, "edim_z": profile.edim_z}),
    );
    report.claim(
        "bott.proj_normality",
        "chi series minus the h^2 column reproduces the coordinate-ring series to degree 30",
        json!(true),
        json!(hilbert::proj_normality_series_check()),
    );
    Ok(report)
}

/// Klein hessian proportionality, shared by the CLI and the acceptance suite.
pub fn klein_hessian_scalar() -> Result<String, CommandError> {
    let f = hessian::named_cubic(NamedCubic::Klein6, 5, Rat)?;
    let hess = hessian::hessian_data(&f).hess;
    let display = klein_hessian_display()?;
    let s = hess
        .proportionality(&display)
        .ok_or_else(|| CommandError::Usage("hessian not proportional to the display".into()))?;
    Ok(s.to_string())
}

/// The 18-term sextic the Klein hessian is proportional to, indices mod 6.
pub fn klein_hessian_display() -> Result<crate::polycore::Polynomial<Rat>, CommandError> {
    let mut acc = crate::polycore::Polynomial::zero(Rat, 6);
    let term = |pows: &[(usize, u16)]| -> crate::polycore::Polynomial<Rat> {
        let mut exps = vec![0u16; 6];
        for &(i, e) in pows {
            exps[i % 6] += e;
        }
        crate::polycore::Polynomial::from_terms(
            Rat,
            6,
            [(crate::polycore::Monomial::new(exps), Rat.one())],
        )
    };
    for i in 0..3 {
        acc = acc.add(&term(&[(i, 3), (i + 3, 3)]));
    }
    acc = acc.sub(&term(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]));
    for i in 0..6 {
        acc = acc.add(&term(&[(i, 1), (i + 1, 3), (i + 3, 2)]));
        acc = acc.sub(&term(&[(i, 1), (i + 1, 1), (i + 2, 1), (i + 3, 3)]));
    }
    for i in 0..2 {
        acc = acc.sub(&term(&[(i, 2), (i + 2, 2), (i + 4, 2)]));
    }
    Ok(acc)
}

/// JSON value listing which claims failed, for quick CLI output.
pub fn failures(report: &Report) -> Value {
    json!(report
        .claims
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.id.clone())
        .collect::<Vec<_>>())
}
