//! Exact coefficient fields, sparse multivariate polynomials, and the linear
//! algebra over GF(p) that powers every other module.

pub mod field;
pub mod gfmat;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::{big_ratio, rat_as_i64, rat_to_gf, Field, Gf, Rat};
pub use gfmat::{kernel_basis, mat_vec, rank_ff, EchelonBasis};
pub use matrix::PolyMatrix;
pub use monomial::{monomials_of_degree, Monomial};
pub use parse::poly_parse;
pub use poly::Polynomial;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{var} out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },
    #[error("point has {got} coordinates, polynomial has {nvars} variables")]
    PointLength { got: usize, nvars: usize },
    #[error("{0} is not an odd prime below 2^31 (characteristics 2 and 3 are unsupported)")]
    BadPrime(u64),
    #[error("coefficient denominator is divisible by {0}")]
    BadReduction(u64),
    #[error("matrix needs {expected} entries, got {got}")]
    MatrixShape { expected: usize, got: usize },
    #[error("matrix entries disagree on variable count")]
    MixedVariableCounts,
    #[error("determinants supported up to size 8, got {0}")]
    MatrixTooLarge(usize),
    #[error("minor order {order} out of range for size {size}")]
    MinorOrder { order: usize, size: usize },
}

/// Binomial coefficient as u64; panics on overflow (arguments here stay tiny).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// dim S^d for n+1 = nvars variables: C(d + nvars - 1, nvars - 1).
pub fn dim_graded_piece(nvars: usize, d: usize) -> usize {
    binomial((d + nvars - 1) as u64, (nvars - 1) as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(dim_graded_piece(6, 5), 252);
        assert_eq!(dim_graded_piece(3, 2), 6);
    }
}
