//! Python bindings: the cubic-form type plus the closed-form calculators
//! and certificate functions, with plain ints/strings/dicts at the boundary.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use hessloci::bott;
use hessloci::chern;
use hessloci::commands;
use hessloci::hessian::{self, CubicForm, NamedCubic};
use hessloci::hilbert::{self, GradedIdeal};
use hessloci::polycore::{poly_parse, Gf, Rat};
use hessloci::strata;

fn val_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A cubic form with exact rational coefficients.
#[pyclass]
struct Cubic {
    inner: CubicForm<Rat>,
}

#[pymethods]
impl Cubic {
    /// Parse from the toolkit grammar (variables x0..x9, explicit *).
    #[staticmethod]
    fn parse(text: &str, nvars: usize) -> PyResult<Self> {
        let poly = poly_parse(text, nvars, Rat).map_err(val_err)?;
        Ok(Cubic {
            inner: CubicForm::new(poly).map_err(val_err)?,
        })
    }

    /// One of the built-in cubics: "fermat", "klein6", "cuspidal3".
    #[staticmethod]
    fn named(name: &str, n: usize) -> PyResult<Self> {
        let name: NamedCubic = name.parse().map_err(val_err)?;
        Ok(Cubic {
            inner: hessian::named_cubic(name, n, Rat).map_err(val_err)?,
        })
    }

    /// Seeded random cubic over GF(p) with no rational singular point,
    /// lifted to integer coefficients.
    #[staticmethod]
    fn random_smooth(n: usize, prime: u64, seed: u64) -> PyResult<Self> {
        let f = hessian::random_smooth_cubic(n, prime, seed).map_err(val_err)?;
        let lifted = poly_parse(&f.poly().to_string(), n + 1, Rat).map_err(val_err)?;
        Ok(Cubic {
            inner: CubicForm::new(lifted).map_err(val_err)?,
        })
    }

    fn text(&self) -> String {
        self.inner.poly().to_string()
    }

    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    /// The hessian polynomial det(H_f), exact over the rationals.
    fn hess(&self) -> String {
        hessian::hessian_data(&self.inner).hess.to_string()
    }

    /// Scalar s with hess = s * other, or None.
    fn hess_proportionality(&self, other: &str) -> PyResult<Option<String>> {
        let target = poly_parse(other, self.inner.nvars(), Rat).map_err(val_err)?;
        let hess = hessian::hessian_data(&self.inner).hess;
        Ok(hess.proportionality(&target).map(|s| s.to_string()))
    }

    /// Exhaustive rank census over GF(prime).
    fn stratify<'py>(&self, py: Python<'py>, prime: u64) -> PyResult<Bound<'py, PyDict>> {
        let gf = Gf::new(prime).map_err(val_err)?;
        let f = self.inner.reduce_mod(gf).map_err(val_err)?;
        let rep = strata::stratify(&f).map_err(val_err)?;
        let out = PyDict::new(py);
        out.set_item("prime", rep.prime)?;
        out.set_item("counts", rep.counts.clone())?;
        let lows = PyList::empty(py);
        for rp in &rep.low_rank_points {
            let d = PyDict::new(py);
            d.set_item("rank", rp.rank)?;
            d.set_item("truncated", rp.truncated)?;
            d.set_item(
                "points",
                rp.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            )?;
            lows.append(d)?;
        }
        out.set_item("low_rank_points", lows)?;
        Ok(out)
    }

    /// Pointwise singular-locus equivalence over GF(prime).
    fn singular_locus_check<'py>(&self, py: Python<'py>, prime: u64) -> PyResult<Bound<'py, PyDict>> {
        let gf = Gf::new(prime).map_err(val_err)?;
        let f = self.inner.reduce_mod(gf).map_err(val_err)?;
        let cert = strata::verify_singular_locus(&f).map_err(val_err)?;
        let out = PyDict::new(py);
        out.set_item("pass", cert.pass)?;
        out.set_item("hessian_points", cert.hessian_points)?;
        out.set_item("singular_points", cert.singular_points)?;
        if let Some(ce) = &cert.counterexample {
            let d = PyDict::new(py);
            d.set_item("point", ce.point.to_string())?;
            d.set_item("gradient_vanishes", ce.gradient_vanishes)?;
            d.set_item("rank", ce.rank)?;
            out.set_item("counterexample", d)?;
        }
        Ok(out)
    }

    /// Hilbert function of the order-k minor ideal on [d0, d1] over GF(prime).
    fn minor_hilbert_window(
        &self,
        order: usize,
        d0: usize,
        d1: usize,
        prime: u64,
    ) -> PyResult<Vec<u64>> {
        let gf = Gf::new(prime).map_err(val_err)?;
        let f = self.inner.reduce_mod(gf).map_err(val_err)?;
        let ideal = GradedIdeal::minor_ideal(&f, order);
        Ok(hilbert::hf_window(&ideal, d0, d1).values)
    }
}

#[pyfunction]
fn degree_qk(n: usize, k: usize) -> PyResult<i64> {
    chern::degree_qk(n, k).map_err(val_err)
}

#[pyfunction]
fn expected_codim(n: usize, k: usize) -> PyResult<u64> {
    chern::expected_codim(n, k).map_err(val_err)
}

#[pyfunction]
fn canonical_double(n: usize, k: usize) -> i64 {
    chern::canonical_double(n, k)
}

#[pyfunction]
fn degeneracy_euler_number() -> i64 {
    chern::degeneracy_euler_number()
}

#[pyfunction]
fn q_schur_tworow(a: usize, b: usize) -> PyResult<(String, String, usize)> {
    let q = chern::q_schur_tworow(a, b, 5);
    let k = a + b;
    let c = q.coeff(k);
    Ok((c.numer().to_string(), c.denom().to_string(), k))
}

#[pyfunction]
fn surface_invariants(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let s = chern::surface_invariants().map_err(val_err)?;
    let out = PyDict::new(py);
    out.set_item("e", s.e)?;
    out.set_item("degree", s.h2)?;
    out.set_item("K2", s.k2)?;
    out.set_item("KH", s.kh)?;
    out.set_item("chi", s.chi)?;
    out.set_item("q", s.q)?;
    out.set_item("pg", s.pg)?;
    out.set_item("h11", s.h11)?;
    Ok(out)
}

#[pyfunction]
fn smallest_locus_curve(py: Python<'_>, s: usize) -> PyResult<Bound<'_, PyDict>> {
    let c = chern::smallest_locus_curve(s).map_err(val_err)?;
    let out = PyDict::new(py);
    out.set_item("n", c.n)?;
    out.set_item("k", c.k)?;
    out.set_item("degree", c.degree)?;
    out.set_item("genus", c.genus)?;
    Ok(out)
}

#[pyfunction]
fn vanishing_table() -> Vec<(usize, usize)> {
    bott::vanishing_table().into_iter().collect()
}

#[pyfunction]
fn koszul_certificate(k: usize, d: i64) -> bool {
    bott::koszul_certificate(k, d)
}

#[pyfunction]
fn double_cover_profile(py: Python<'_>, e_rank: usize, k: usize) -> PyResult<Bound<'_, PyDict>> {
    let p = bott::double_cover_profile(e_rank, k).map_err(val_err)?;
    let out = PyDict::new(py);
    out.set_item("h", p.h)?;
    out.set_item("m", p.m)?;
    out.set_item("families", p.families)?;
    out.set_item("family_dim", p.family_dim)?;
    out.set_item("edim_z", p.edim_z)?;
    Ok(out)
}

#[pyfunction]
fn proj_normality_check() -> bool {
    hilbert::proj_normality_series_check()
}

#[pyfunction]
fn klein_hessian_scalar() -> PyResult<String> {
    commands::klein_hessian_scalar().map_err(val_err)
}

/// Runs the product-identity battery: trials per (n, prime) cell, true iff all
/// pass.
#[pyfunction]
fn identity_battery(seed: u64, prime: u64, n: usize, trials: usize) -> PyResult<bool> {
    use rand::{Rng, SeedableRng};
    let gf = Gf::new(prime).map_err(val_err)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = hessian::random_cubic(n, gf, &mut rng);
        let v: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..prime)).collect();
        let w: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..prime)).collect();
        if !hessian::check_hessian_identities(&f, &v, &w).all_pass() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[pymodule]
fn hessloci_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Cubic>()?;
    m.add_function(wrap_pyfunction!(degree_qk, m)?)?;
    m.add_function(wrap_pyfunction!(expected_codim, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_double, m)?)?;
    m.add_function(wrap_pyfunction!(degeneracy_euler_number, m)?)?;
    m.add_function(wrap_pyfunction!(q_schur_tworow, m)?)?;
    m.add_function(wrap_pyfunction!(surface_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_locus_curve, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_table, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(double_cover_profile, m)?)?;
    m.add_function(wrap_pyfunction!(proj_normality_check, m)?)?;
    m.add_function(wrap_pyfunction!(klein_hessian_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(identity_battery, m)?)?;
    Ok(())
}
