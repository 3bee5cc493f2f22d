//! Fixtures shared by the criterion benches.

use mfhh_core::DiagonalPolynomial;

/// Stabilized instances of increasing size, as `(label, polynomial)`.
pub fn instances() -> Vec<(&'static str, DiagonalPolynomial)> {
    [
        ("2,2,3", &[2, 2, 3][..]),
        ("2,2,3,5", &[2, 2, 3, 5]),
        ("2,2,3,5,7", &[2, 2, 3, 5, 7]),
        ("2,2,5,7,11,13", &[2, 2, 5, 7, 11, 13]),
    ]
    .into_iter()
    .map(|(label, ks)| (label, DiagonalPolynomial::new(ks.to_vec(), true).expect("valid exponents")))
    .collect()
}
