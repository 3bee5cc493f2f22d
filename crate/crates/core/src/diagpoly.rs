//! Diagonal (Brieskorn-Pham) polynomials `z_1^{k_1} + ... + z_N^{k_N}`,
//! optionally stabilized by a variable z0 that never appears in the
//! polynomial itself.

use std::fmt;

use crate::charlat::{CharacterLattice, GroupElement, Weight, Z0};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalPolynomial {
    exponents: Vec<u32>,
    stabilized: bool,
}

impl DiagonalPolynomial {
    pub fn new(exponents: Vec<u32>, stabilized: bool) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidInput("exponent list is empty".into()));
        }
        if let Some(k) = exponents.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidInput(format!("exponent {k} is below 2")));
        }
        Ok(DiagonalPolynomial { exponents, stabilized })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    /// Number of variables in the polynomial, z0 excluded.
    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// `n = N - 1`, the complex dimension of the Milnor fiber.
    pub fn n(&self) -> i64 {
        self.exponents.len() as i64 - 1
    }

    /// Exponent of `z_j` for `j` in `1..=N`.
    pub fn exponent(&self, var: usize) -> u32 {
        self.exponents[var - 1]
    }

    pub fn exponent_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.exponents.len();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.exponents[i] } else { 0 }).collect())
            .collect()
    }

    /// Berglund-Hubsch transpose. The exponent matrix is diagonal, hence
    /// symmetric, so this returns an equal polynomial.
    pub fn transpose(&self) -> DiagonalPolynomial {
        let a = self.exponent_matrix();
        let n = a.len();
        let exponents = (0..n).map(|i| a[i][i]).collect();
        debug_assert!((0..n).all(|i| (0..n).all(|j| a[i][j] == a[j][i])));
        DiagonalPolynomial {
            exponents,
            stabilized: self.stabilized,
        }
    }

    /// `mu = prod (k_i - 1)`.
    pub fn milnor_number(&self) -> Result<u64> {
        self.exponents
            .iter()
            .try_fold(1u64, |acc, &k| acc.checked_mul(u64::from(k - 1)))
            .ok_or(Error::Overflow)
    }

    pub fn lattice(&self) -> Result<CharacterLattice> {
        CharacterLattice::new(&self.exponents, self.stabilized)
    }

    /// `sum 1/k_i == 1`, the case where z0 has torsion degree.
    pub fn is_calabi_yau(&self) -> bool {
        use num_rational::Ratio;
        let s: Ratio<i64> = self.exponents.iter().map(|&k| Ratio::new(1, i64::from(k))).sum();
        s == Ratio::from_integer(1)
    }

    pub fn restrict(&self, gamma: &GroupElement) -> Restriction {
        let vars: Vec<usize> = gamma.fixed_set().iter().copied().filter(|&j| j != Z0).collect();
        let exponents = vars.iter().map(|&j| self.exponent(j)).collect();
        Restriction {
            vars,
            exponents,
            z0_fixed: self.stabilized && gamma.fixes(Z0),
        }
    }
}

impl fmt::Display for DiagonalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, k)| format!("z{}^{}", i + 1, k))
            .collect();
        write!(f, "{}", terms.join(" + "))?;
        if self.stabilized {
            write!(f, " (stabilized by z0)")?;
        }
        Ok(())
    }
}

/// Restriction of `w` to the fixed locus of a group element: the diagonal
/// sub-polynomial on the fixed variables other than z0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// Fixed variables among `1..=N`, ascending.
    pub vars: Vec<usize>,
    /// Exponent of each variable in `vars`.
    pub exponents: Vec<u32>,
    pub z0_fixed: bool,
}

impl Restriction {
    pub fn is_zero_polynomial(&self) -> bool {
        self.vars.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiBasisElement {
    /// Full-length exponent vector indexed by variable (slot 0 is z0 and is
    /// always zero here).
    pub exponents: Vec<u32>,
    pub weight: Weight,
}

/// Monomial basis `z^a`, `0 <= a_i <= k_i - 2`, of the Jacobi ring of the
/// restriction, in lexicographic order (lowest variable most significant).
pub fn jacobi_basis(lat: &CharacterLattice, restriction: &Restriction) -> Result<Vec<JacobiBasisElement>> {
    let mut out = Vec::new();
    let mut a = vec![0u32; lat.num_vars() + 1];
    let vars = &restriction.vars;
    let tops: Vec<u32> = restriction.exponents.iter().map(|&k| k - 2).collect();
    loop {
        out.push(JacobiBasisElement {
            weight: lat.weight_of_monomial(&a, &[], false)?,
            exponents: a.clone(),
        });
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if a[vars[i]] < tops[i] {
                a[vars[i]] += 1;
                break;
            }
            a[vars[i]] = 0;
        }
    }
}
