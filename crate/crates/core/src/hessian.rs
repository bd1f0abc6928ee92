//! Cubic forms, their Hessian matrices and hessian polynomials, Jacobian
//! gradients, and the identity layer tying the Hessian to directional
//! derivatives.
//!
//! Conventions: the Hessian entry (i,j) is the literal second partial (the
//! factor 2 is kept, no normalization), so `hess` for a cubic in n+1
//! variables is zero or homogeneous of degree n+1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polycore::{
    monomials_of_degree, poly_parse, Field, Gf, PolyError, PolyMatrix, Polynomial, Rat,
};
use crate::strata;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum HessianError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial is not a nonzero homogeneous cubic")]
    NotCubic,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("unknown cubic name {0:?}")]
    UnknownName(String),
    #[error("cubic {name} needs n = {expected}, got {got}")]
    IncompatibleDimension {
        name: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("no smooth cubic found within {0} attempts")]
    SamplingBudget(usize),
}

/// A nonzero homogeneous cubic form in n+1 variables.
#[derive(Clone, PartialEq, Debug)]
pub struct CubicForm<F: Field> {
    poly: Polynomial<F>,
}

impl<F: Field> CubicForm<F> {
    pub fn new(poly: Polynomial<F>) -> Result<Self, HessianError> {
        if poly.homogeneous_degree() != Some(3) {
            return Err(HessianError::NotCubic);
        }
        Ok(CubicForm { poly })
    }

    pub fn poly(&self) -> &Polynomial<F> {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Ambient projective dimension n (nvars - 1).
    pub fn n(&self) -> usize {
        self.poly.nvars() - 1
    }
}

impl CubicForm<Rat> {
    pub fn reduce_mod(&self, gf: Gf) -> Result<CubicForm<Gf>, HessianError> {
        let p = self.poly.reduce_mod(gf)?;
        CubicForm::new(p)
    }
}

/// The Hessian matrix, its determinant, and the gradient of the cubic.
#[derive(Clone, Debug)]
pub struct HessianData<F: Field> {
    pub matrix: PolyMatrix<F>,
    pub hess: Polynomial<F>,
    pub gradient: Vec<Polynomial<F>>,
}

/// Just the matrix of second partials, skipping the determinant.
pub fn hessian_matrix<F: Field>(f: &CubicForm<F>) -> PolyMatrix<F> {
    let nv = f.nvars();
    let mut entries = vec![Polynomial::zero(f.poly.field().clone(), nv); nv * nv];
    for i in 0..nv {
        let gi = f.poly.diff(i).unwrap();
        for j in i..nv {
            let e = gi.diff(j).unwrap();
            entries[i * nv + j] = e.clone();
            entries[j * nv + i] = e;
        }
    }
    PolyMatrix::new(nv, entries).unwrap()
}

pub fn hessian_data<F: Field>(f: &CubicForm<F>) -> HessianData<F> {
    let nv = f.nvars();
    let gradient: Vec<_> = (0..nv).map(|i| f.poly.diff(i).unwrap()).collect();
    let matrix = hessian_matrix(f);
    let hess = matrix.det().unwrap();
    HessianData {
        matrix,
        hess,
        gradient,
    }
}

/// Applies the differential operator v = sum v_k d/dx_k once or twice.
pub fn directional<F: Field>(
    f: &Polynomial<F>,
    v: &[F::Elem],
    order: u8,
) -> Result<Polynomial<F>, PolyError> {
    assert!(order == 1 || order == 2, "order must be 1 or 2");
    let once = apply_operator(f, v)?;
    if order == 1 {
        Ok(once)
    } else {
        apply_operator(&once, v)
    }
}

fn apply_operator<F: Field>(f: &Polynomial<F>, v: &[F::Elem]) -> Result<Polynomial<F>, PolyError> {
    if v.len() != f.nvars() {
        return Err(PolyError::PointLength {
            got: v.len(),
            nvars: f.nvars(),
        });
    }
    let field = f.field().clone();
    let mut acc = Polynomial::zero(field.clone(), f.nvars());
    for (i, c) in v.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        acc = acc.add(&f.diff(i)?.scale(c));
    }
    Ok(acc)
}

/// Evaluated Hessian product H_f(v) . w as a coordinate vector.
fn hessian_product<F: Field>(m: &PolyMatrix<F>, v: &[F::Elem], w: &[F::Elem]) -> Vec<F::Elem> {
    let field = m.entry(0, 0).field().clone();
    let n = m.size();
    (0..n)
        .map(|i| {
            let mut acc = field.zero();
            for j in 0..n {
                let e = m.entry(i, j).eval(v).unwrap();
                acc = field.add(&acc, &field.mul(&e, &w[j]));
            }
            acc
        })
        .collect()
}

/// Per-identity outcome of the three Hessian product identities for cubics:
/// H_f(v).w = grad(vw(f)) together with H_f(v).w = H_f(w).v, then
/// 2 grad(f)(v) = H_f(v).v, then w^T H_f(v) w = 2 (v(f))(w).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HessianIdentityReport {
    pub gradient_identity: bool,
    pub polar_identity: bool,
    pub quadric_identity: bool,
}

impl HessianIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.gradient_identity && self.polar_identity && self.quadric_identity
    }
}

pub fn check_hessian_identities<F: Field>(
    f: &CubicForm<F>,
    v: &[F::Elem],
    w: &[F::Elem],
) -> HessianIdentityReport {
    hessian_identities_with(&hessian_matrix(f), f, v, w)
}

/// Same checks against a caller-supplied matrix; the reproduction harness
/// uses this with a corrupted matrix to prove the checks can fail.
pub fn hessian_identities_with<F: Field>(
    matrix: &PolyMatrix<F>,
    f: &CubicForm<F>,
    v: &[F::Elem],
    w: &[F::Elem],
) -> HessianIdentityReport {
    let field = f.poly.field().clone();
    let nv = f.nvars();
    assert_eq!(v.len(), nv);
    assert_eq!(w.len(), nv);

    let hv_w = hessian_product(matrix, v, w);
    let hw_v = hessian_product(matrix, w, v);

    // (a) H_f(v).w = grad(vw(f)) and symmetry in v, w
    let vwf = directional(&directional(&f.poly, w, 1).unwrap(), v, 1).unwrap();
    let grad_vwf: Vec<_> = (0..nv)
        .map(|i| {
            vwf.diff(i)
                .unwrap()
                .eval(&vec![field.zero(); nv])
                .unwrap()
        })
        .collect();
    let gradient_identity = hv_w == grad_vwf && hv_w == hw_v;

    // (b) 2 grad(f)(v) = H_f(v).v
    let hv_v = hessian_product(matrix, v, v);
    let two = field.from_int(2);
    let grad_f_v: Vec<_> = (0..nv)
        .map(|i| {
            let g = f.poly.diff(i).unwrap().eval(v).unwrap();
            field.mul(&two, &g)
        })
        .collect();
    let polar_identity = hv_v == grad_f_v;

    // (c) w^T H_f(v) w = 2 (v(f))(w)
    let mut lhs = field.zero();
    for (i, hi) in hessian_product(matrix, v, w).iter().enumerate() {
        lhs = field.add(&lhs, &field.mul(&w[i], hi));
    }
    let vf_at_w = directional(&f.poly, v, 1).unwrap().eval(w).unwrap();
    let quadric_identity = lhs == field.mul(&two, &vf_at_w);

    HessianIdentityReport {
        gradient_identity,
        polar_identity,
        quadric_identity,
    }
}

/// True iff v^m(G) = m! G(v) for homogeneous G of degree m.
pub fn euler_identity_check<F: Field>(
    g: &Polynomial<F>,
    v: &[F::Elem],
) -> Result<bool, HessianError> {
    if g.is_zero() {
        return Ok(true);
    }
    let m = g.homogeneous_degree().ok_or(HessianError::NotHomogeneous)?;
    let field = g.field().clone();
    let mut op = g.clone();
    let mut factorial = field.one();
    for k in 0..m {
        op = apply_operator(&op, v)?;
        factorial = field.mul(&factorial, &field.from_int((k + 1) as i64));
    }
    let lhs = op.eval(&vec![field.zero(); g.nvars()])?;
    let rhs = field.mul(&factorial, &g.eval(v)?);
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NamedCubic {
    Fermat,
    Klein6,
    Cuspidal3,
}

impl std::str::FromStr for NamedCubic {
    type Err = HessianError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fermat" => Ok(NamedCubic::Fermat),
            "klein6" => Ok(NamedCubic::Klein6),
            "cuspidal3" => Ok(NamedCubic::Cuspidal3),
            other => Err(HessianError::UnknownName(other.to_string())),
        }
    }
}

impl NamedCubic {
    pub fn as_str(&self) -> &'static str {
        match self {
            NamedCubic::Fermat => "fermat",
            NamedCubic::Klein6 => "klein6",
            NamedCubic::Cuspidal3 => "cuspidal3",
        }
    }
}

pub const KLEIN6_TEXT: &str = "x0^2*x1 + x1^2*x2 + x2^2*x3 + x3^2*x4 + x4^2*x5 + x5^2*x0";
pub const CUSPIDAL3_TEXT: &str = "x0^2*x2 - x1^3";

pub fn named_cubic<F: Field>(
    name: NamedCubic,
    n: usize,
    field: F,
) -> Result<CubicForm<F>, HessianError> {
    let text = match name {
        NamedCubic::Fermat => {
            if n < 1 {
                return Err(HessianError::IncompatibleDimension {
                    name: "fermat",
                    expected: 1,
                    got: n,
                });
            }
            (0..=n)
                .map(|i| format!("x{i}^3"))
                .collect::<Vec<_>>()
                .join(" + ")
        }
        NamedCubic::Klein6 => {
            if n != 5 {
                return Err(HessianError::IncompatibleDimension {
                    name: "klein6",
                    expected: 5,
                    got: n,
                });
            }
            KLEIN6_TEXT.to_string()
        }
        NamedCubic::Cuspidal3 => {
            if n != 2 {
                return Err(HessianError::IncompatibleDimension {
                    name: "cuspidal3",
                    expected: 2,
                    got: n,
                });
            }
            CUSPIDAL3_TEXT.to_string()
        }
    };
    let poly = poly_parse(&text, n + 1, field)?;
    CubicForm::new(poly)
}

/// Uniform seeded cubic over GF(p), no smoothness filter.
pub fn random_cubic(n: usize, gf: Gf, rng: &mut ChaCha8Rng) -> CubicForm<Gf> {
    loop {
        let p = gf.prime();
        let terms = monomials_of_degree(n + 1, 3)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..p)))
            .collect::<Vec<_>>();
        let poly = Polynomial::from_terms(gf, n + 1, terms);
        if let Ok(c) = CubicForm::new(poly) {
            return c;
        }
    }
}

/// Random cubic with small integer coefficients over the rationals, for
/// checks that reduce the same form modulo several primes.
pub fn random_integer_cubic(n: usize, seed: u64, bound: i64) -> CubicForm<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    loop {
        let terms = monomials_of_degree(n + 1, 3)
            .into_iter()
            .map(|m| (m, Rat.from_int(rng.gen_range(-bound..=bound))))
            .collect::<Vec<_>>();
        let poly = Polynomial::from_terms(Rat, n + 1, terms);
        if let Ok(c) = CubicForm::new(poly) {
            return c;
        }
    }
}

pub const SAMPLING_BUDGET: usize = 1000;

/// True iff no GF(p)-rational point kills the whole gradient. A necessary
/// condition for smoothness, not a certificate over the closure.
pub fn no_rational_singular_point(f: &CubicForm<Gf>) -> bool {
    let data = hessian_data(f);
    no_rational_singular_point_with(f, &data.gradient)
}

fn no_rational_singular_point_with(f: &CubicForm<Gf>, gradient: &[Polynomial<Gf>]) -> bool {
    let gf = *f.poly().field();
    !strata::proj_points(f.n(), gf.prime())
        .any(|pt| gradient.iter().all(|g| g.eval(&pt).unwrap() == 0))
}

/// Seeded rejection sampler for a cubic over GF(p) with no rational singular
/// point and nonvanishing hessian. Deterministic in (n, p, seed).
pub fn random_smooth_cubic(n: usize, p: u64, seed: u64) -> Result<CubicForm<Gf>, HessianError> {
    let gf = Gf::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLING_BUDGET {
        let f = random_cubic(n, gf, &mut rng);
        let data = hessian_data(&f);
        if data.hess.is_zero() {
            continue;
        }
        if no_rational_singular_point_with(&f, &data.gradient) {
            return Ok(f);
        }
    }
    Err(HessianError::SamplingBudget(SAMPLING_BUDGET))
}

/// Integer cubic passing the rational-smoothness filter at every listed
/// prime, plus hess != 0 over the rationals. Backs the minor-ideal studies
/// where the working prime is too large to enumerate.
pub fn random_filtered_integer_cubic(
    n: usize,
    seed: u64,
    filter_primes: &[u64],
) -> Result<CubicForm<Rat>, HessianError> {
    for attempt in 0..SAMPLING_BUDGET as u64 {
        let f = random_integer_cubic(n, seed.wrapping_add(attempt.wrapping_mul(0x5851_f42d)), 50);
        if hessian_data(&f).hess.is_zero() {
            continue;
        }
        let ok = filter_primes.iter().all(|&p| {
            let gf = Gf::new(p).unwrap();
            match f.reduce_mod(gf) {
                Ok(fp) => {
                    !hessian_data(&fp).hess.is_zero() && no_rational_singular_point(&fp)
                }
                Err(_) => false,
            }
        });
        if ok {
            return Ok(f);
        }
    }
    Err(HessianError::SamplingBudget(SAMPLING_BUDGET))
}
