//! The character lattice of the maximal diagonal symmetry group of a
//! diagonal polynomial, canonical weight arithmetic, and the finite group
//! ker(chi).
//!
//! The lattice is presented on the generators `chi_0` (only when stabilized),
//! `chi_1, ..., chi_N` and `chi`, subject to `k_i chi_i = chi` and, when
//! stabilized, `chi_0 + chi_1 + ... + chi_N = chi`. A Smith decomposition
//! `U R V = D` of the relation matrix gives canonical coordinates: a raw
//! row vector `x` maps to `x V`, whose entries against torsion factors are
//! reduced mod `d_i`, whose entries against unit factors are dropped, and
//! whose single remaining entry is the free coordinate.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Checked, Error, Result};
use crate::intlat::{self, AbelianGroupStructure, IntMatrix, SmithDecomposition};

/// Variable index of the stabilizing variable z0. Variables `1..=N` are the
/// variables of the polynomial itself.
pub const Z0: usize = 0;

/// An element of the character lattice in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    free: i64,
    torsion: Vec<i64>,
}

impl Weight {
    pub fn free(&self) -> i64 {
        self.free
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.iter().all(|&t| t == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {:?})", self.free, self.torsion)
    }
}

#[derive(Clone, Debug)]
pub struct CharacterLattice {
    exponents: Vec<u32>,
    stabilized: bool,
    relations: IntMatrix,
    snf: SmithDecomposition,
    /// SNF column feeding the free coordinate.
    free_col: usize,
    /// (SNF column, modulus) for each torsion coordinate.
    torsion_cols: Vec<(usize, i64)>,
    /// Canonical image of each raw generator.
    gen_images: Vec<Weight>,
}

impl CharacterLattice {
    pub fn new(exponents: &[u32], stabilized: bool) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidInput("exponent list is empty".into()));
        }
        if let Some(k) = exponents.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidInput(format!("exponent {k} is below 2")));
        }
        let n = exponents.len();
        let offset = usize::from(stabilized);
        let gens = n + 1 + offset;
        let chi_col = gens - 1;

        let mut rows = Vec::with_capacity(n + offset);
        for (i, &k) in exponents.iter().enumerate() {
            let mut r = vec![0i64; gens];
            r[offset + i] = i64::from(k);
            r[chi_col] = -1;
            rows.push(r);
        }
        if stabilized {
            let mut r = vec![1i64; gens];
            r[chi_col] = -1;
            rows.push(r);
        }
        let relations = IntMatrix::from_rows(gens, &rows)?;
        let snf = intlat::smith_normal_form(&relations)?;
        let diag = snf.diagonal();

        let mut free_cols = Vec::new();
        let mut torsion_cols = Vec::new();
        for col in 0..gens {
            match diag.get(col).copied().unwrap_or(0) {
                0 => free_cols.push(col),
                1 => {}
                d => torsion_cols.push((col, d)),
            }
        }
        if free_cols.len() != 1 {
            return Err(Error::Rank(free_cols.len()));
        }

        let mut lat = CharacterLattice {
            exponents: exponents.to_vec(),
            stabilized,
            relations,
            snf,
            free_col: free_cols[0],
            torsion_cols,
            gen_images: Vec::new(),
        };
        lat.gen_images = (0..gens)
            .map(|g| {
                let mut e = vec![0i64; gens];
                e[g] = 1;
                lat.canonicalize(&e)
            })
            .collect::<Result<_>>()?;
        if lat.chi().free == 0 {
            return Err(Error::Rank(0));
        }
        Ok(lat)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    /// All variable indices present: `0..=N` when stabilized, else `1..=N`.
    pub fn variables(&self) -> std::ops::RangeInclusive<usize> {
        let first = if self.stabilized { Z0 } else { 1 };
        first..=self.num_vars()
    }

    pub fn has_var(&self, j: usize) -> bool {
        self.variables().contains(&j)
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn snf(&self) -> &SmithDecomposition {
        &self.snf
    }

    /// Generator labels in raw coordinate order.
    pub fn generator_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = self.variables().map(|j| format!("chi_{j}")).collect();
        labels.push("chi".into());
        labels
    }

    /// Structure of the full character group.
    pub fn structure(&self) -> AbelianGroupStructure {
        intlat::structure_from_snf(&self.snf, self.relations.cols())
    }

    /// Structure of the quotient by the subgroup generated by `chi`,
    /// computed from a fresh Smith decomposition.
    pub fn quotient_by_chi(&self) -> Result<AbelianGroupStructure> {
        let gens = self.relations.cols();
        let mut rows: Vec<Vec<i64>> = (0..self.relations.rows())
            .map(|i| self.relations.row(i).to_vec())
            .collect();
        let mut chi = vec![0i64; gens];
        chi[gens - 1] = 1;
        rows.push(chi);
        intlat::cokernel(&IntMatrix::from_rows(gens, &rows)?)
    }

    fn raw_index(&self, var: usize) -> usize {
        debug_assert!(self.has_var(var));
        if self.stabilized {
            var
        } else {
            var - 1
        }
    }

    /// Canonical form of a raw generator-coordinate vector.
    pub fn canonicalize(&self, raw: &[i64]) -> Result<Weight> {
        let y = self.snf.v.left_apply(raw)?;
        Ok(Weight {
            free: y[self.free_col],
            torsion: self
                .torsion_cols
                .iter()
                .map(|&(c, d)| y[c].rem_euclid(d))
                .collect(),
        })
    }

    pub fn zero(&self) -> Weight {
        Weight {
            free: 0,
            torsion: vec![0; self.torsion_cols.len()],
        }
    }

    pub fn chi(&self) -> Weight {
        self.gen_images[self.gen_images.len() - 1].clone()
    }

    /// `chi_j`, the degree of the variable `z_j`.
    pub fn var_weight(&self, var: usize) -> Weight {
        self.gen_images[self.raw_index(var)].clone()
    }

    pub fn add(&self, a: &Weight, b: &Weight) -> Result<Weight> {
        self.add_scaled(a, b, 1)
    }

    pub fn sub(&self, a: &Weight, b: &Weight) -> Result<Weight> {
        self.add_scaled(a, b, -1)
    }

    /// `a + s * b`
    pub fn add_scaled(&self, a: &Weight, b: &Weight, s: i64) -> Result<Weight> {
        let free = a.free.add_c(b.free.mul_c(s)?)?;
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion_cols)
            .map(|((&x, &y), &(_, d))| {
                // reduce first so the product stays small
                let ys = (y.mul_c(s.rem_euclid(d))?).rem_euclid(d);
                Ok((x + ys).rem_euclid(d))
            })
            .collect::<Result<_>>()?;
        Ok(Weight { free, torsion })
    }

    pub fn scale(&self, a: &Weight, s: i64) -> Result<Weight> {
        self.add_scaled(&self.zero(), a, s)
    }

    /// Weight of `prod z_j^{a_j}` tensored with one dual `z_j^v` for each
    /// entry of `duals`, plus one more `z_0^v` when `z0_dual` is set.
    ///
    /// `a` is indexed by variable (`a[0]` is the z0 exponent and must be zero
    /// on an unstabilized lattice); its length must be `N + 1`.
    pub fn weight_of_monomial(&self, a: &[u32], duals: &[usize], z0_dual: bool) -> Result<Weight> {
        if a.len() != self.num_vars() + 1 {
            return Err(Error::InvalidInput(format!(
                "exponent vector has length {}, expected {}",
                a.len(),
                self.num_vars() + 1
            )));
        }
        if !self.stabilized && (a[Z0] != 0 || z0_dual) {
            return Err(Error::InvalidInput("z0 used on an unstabilized lattice".into()));
        }
        let mut raw = vec![0i64; self.relations.cols()];
        for var in self.variables() {
            raw[self.raw_index(var)] = i64::from(a[var]);
        }
        for &j in duals.iter().chain(z0_dual.then_some(&Z0)) {
            if !self.has_var(j) {
                return Err(Error::InvalidInput(format!("no variable z_{j}")));
            }
            let r = self.raw_index(j);
            raw[r] = raw[r].sub_c(1)?;
        }
        self.combine(&raw)
    }

    /// Canonical form of `sum raw[g] * gen_g` via the cached generator images.
    fn combine(&self, raw: &[i64]) -> Result<Weight> {
        raw.iter()
            .zip(&self.gen_images)
            .filter(|(&c, _)| c != 0)
            .try_fold(self.zero(), |acc, (&c, img)| self.add_scaled(&acc, img, c))
    }

    /// The unique `u` with `w = u * chi`, if any.
    pub fn is_multiple_of_chi(&self, w: &Weight) -> Option<i64> {
        let c = self.chi();
        if w.free % c.free != 0 {
            return None;
        }
        let u = w.free / c.free;
        match self.scale(&c, u) {
            Ok(ref m) if m == w => Some(u),
            _ => None,
        }
    }

    /// The unique `a0 >= 0` with `partial + a0 * chi_0 = u * chi`, if any.
    pub fn solve_a0(&self, u: i64, partial: &Weight) -> Result<Option<u32>> {
        if !self.stabilized {
            return Err(Error::InvalidInput("solve_a0 needs a stabilized lattice".into()));
        }
        let chi = self.chi();
        let chi0 = self.var_weight(Z0);
        if chi0.free == 0 {
            return Err(Error::AmbiguousGrading);
        }
        let rhs = u.mul_c(chi.free)?.sub_c(partial.free)?;
        if rhs % chi0.free != 0 {
            return Ok(None);
        }
        let a0 = rhs / chi0.free;
        let Ok(a0) = u32::try_from(a0) else {
            // negative, or beyond any exponent we represent
            return Ok(None);
        };
        let lhs = self.add_scaled(partial, &chi0, i64::from(a0))?;
        if lhs == self.scale(&chi, u)? {
            Ok(Some(a0))
        } else {
            Ok(None)
        }
    }
}

/// Phase `n / d` in `[0, 1)`, always reduced.
pub type Phase = Ratio<i64>;

/// An element of ker(chi), stored as one phase per variable: the element
/// acts on `z_j` by `exp(2 pi i q_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    /// `n_i` with `q_i = n_i / k_i`, for `i = 1..=N`.
    numerators: Vec<u32>,
    #[serde(serialize_with = "serialize_phases")]
    phases: Vec<Phase>,
    stabilized: bool,
    fixed: Vec<usize>,
    moving: Vec<usize>,
}

fn serialize_phases<S: serde::Serializer>(phases: &[Phase], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(phases.iter().map(|p| format!("{}/{}", p.numer(), p.denom())))
}

impl GroupElement {
    fn from_numerators(exponents: &[u32], numerators: Vec<u32>, stabilized: bool) -> Self {
        let mut phases = Vec::with_capacity(exponents.len() + 1);
        phases.push(Phase::from_integer(0));
        for (&n, &k) in numerators.iter().zip(exponents) {
            phases.push(Phase::new(i64::from(n), i64::from(k)));
        }
        if stabilized {
            let sum: Phase = phases[1..].iter().sum();
            phases[Z0] = fract(-sum);
        }
        let first = if stabilized { Z0 } else { 1 };
        let (fixed, moving) = (first..phases.len()).partition(|&j| phases[j] == Phase::from_integer(0));
        GroupElement {
            numerators,
            phases,
            stabilized,
            fixed,
            moving,
        }
    }

    /// Phase of `z_j`; for an unstabilized element `phase(0)` is zero and
    /// meaningless.
    pub fn phase(&self, var: usize) -> Phase {
        self.phases[var]
    }

    /// Phases of the present variables, z0 first when stabilized.
    pub fn phases(&self) -> &[Phase] {
        if self.stabilized {
            &self.phases
        } else {
            &self.phases[1..]
        }
    }

    pub fn numerators(&self) -> &[u32] {
        &self.numerators
    }

    /// V_gamma: variables with trivial phase, ascending.
    pub fn fixed_set(&self) -> &[usize] {
        &self.fixed
    }

    /// N_gamma: variables with nontrivial phase, ascending.
    pub fn moving_set(&self) -> &[usize] {
        &self.moving
    }

    pub fn fixes(&self, var: usize) -> bool {
        self.fixed.binary_search(&var).is_ok()
    }

    pub fn is_identity(&self) -> bool {
        self.numerators.iter().all(|&n| n == 0)
    }
}

fn fract(q: Phase) -> Phase {
    q - q.floor()
}

/// Every element of ker(chi), lexicographic in the numerators
/// `(n_1, ..., n_N)` with `q_i = n_i / k_i`; z0's phase is derived.
pub fn enumerate_ker_chi(lat: &CharacterLattice) -> Vec<GroupElement> {
    let ks = lat.exponents();
    let total: usize = ks.iter().map(|&k| k as usize).product();
    let mut out = Vec::with_capacity(total);
    let mut num = vec![0u32; ks.len()];
    loop {
        out.push(GroupElement::from_numerators(ks, num.clone(), lat.is_stabilized()));
        // odometer, last index fastest
        let mut i = ks.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            num[i] += 1;
            if num[i] < ks[i] {
                break;
            }
            num[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat2235() -> CharacterLattice {
        CharacterLattice::new(&[2, 2, 3, 5], true).unwrap()
    }

    fn mono(lat: &CharacterLattice, pairs: &[(usize, u32)]) -> Vec<u32> {
        let mut a = vec![0u32; lat.num_vars() + 1];
        for &(j, e) in pairs {
            a[j] = e;
        }
        a
    }

    #[test]
    fn free_rank_one_and_quotient_order() {
        let lat = lat2235();
        assert_eq!(lat.structure().free_rank, 1);
        let q = lat.quotient_by_chi().unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion_order(), Some(60));
    }

    #[test]
    fn single_variable_lattice_is_z() {
        let lat = CharacterLattice::new(&[2], false).unwrap();
        let s = lat.structure();
        assert_eq!(s, AbelianGroupStructure { free_rank: 1, torsion: vec![] });
        let chi1 = lat.var_weight(1);
        assert_eq!(lat.scale(&chi1, 2).unwrap(), lat.chi());
        assert_eq!(lat.chi().free().abs(), 2);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(matches!(CharacterLattice::new(&[], true), Err(Error::InvalidInput(_))));
        assert!(matches!(CharacterLattice::new(&[2, 1], true), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn monomial_weights() {
        let lat = lat2235();
        assert!(lat.weight_of_monomial(&mono(&lat, &[]), &[], false).unwrap().is_zero());
        for (j, &k) in lat.exponents().to_vec().iter().enumerate() {
            let w = lat.weight_of_monomial(&mono(&lat, &[(j + 1, k)]), &[], false).unwrap();
            assert_eq!(w, lat.chi());
        }
        let all: Vec<usize> = lat.variables().collect();
        let top = lat.weight_of_monomial(&mono(&lat, &[]), &all, false).unwrap();
        assert_eq!(top, lat.scale(&lat.chi(), -1).unwrap());
        // the z0_dual flag subtracts one more chi_0
        let w = lat.weight_of_monomial(&mono(&lat, &[]), &[], true).unwrap();
        assert_eq!(w, lat.scale(&lat.var_weight(Z0), -1).unwrap());
    }

    #[test]
    fn multiples_of_chi() {
        let lat = lat2235();
        assert_eq!(lat.is_multiple_of_chi(&lat.zero()), Some(0));
        let chi1 = lat.var_weight(1);
        assert_eq!(lat.is_multiple_of_chi(&chi1), None);
        for u in -10..=10 {
            assert_ne!(lat.scale(&lat.chi(), u).unwrap(), chi1);
        }
        assert_eq!(lat.is_multiple_of_chi(&lat.scale(&chi1, 2).unwrap()), Some(1));
    }

    #[test]
    fn solve_a0_examples() {
        let lat = lat2235();
        assert_eq!(lat.solve_a0(0, &lat.zero()).unwrap(), Some(0));
        // z0^2 z3^2 z4^2 has weight 0
        let p = lat.weight_of_monomial(&mono(&lat, &[(3, 2), (4, 2)]), &[], false).unwrap();
        assert_eq!(lat.solve_a0(0, &p).unwrap(), Some(2));
        // z0^2 z1^2 z2^2 z3^2 z4^2 has weight 2 chi
        let p = lat
            .weight_of_monomial(&mono(&lat, &[(1, 2), (2, 2), (3, 2), (4, 2)]), &[], false)
            .unwrap();
        assert_eq!(lat.solve_a0(0, &p).unwrap(), None);
        assert_eq!(lat.solve_a0(2, &p).unwrap(), Some(2));
        // chi_0 has negative free degree relative to chi here
        assert!(lat.var_weight(Z0).free().signum() != lat.chi().free().signum());
        assert_eq!(lat.solve_a0(5, &lat.zero()).unwrap(), None);
        let chi0 = lat.var_weight(Z0);
        let target = lat.scale(&lat.chi(), 5).unwrap();
        assert!((0..=100).all(|a0| lat.scale(&chi0, a0).unwrap() != target));
    }

    #[test]
    fn solve_a0_rejects_calabi_yau_weights() {
        // 1/3 + 1/3 + 1/3 = 1
        let lat = CharacterLattice::new(&[3, 3, 3], true).unwrap();
        assert_eq!(lat.var_weight(Z0).free(), 0);
        assert_eq!(lat.solve_a0(0, &lat.zero()), Err(Error::AmbiguousGrading));
        let unstab = CharacterLattice::new(&[3, 3, 3], false).unwrap();
        assert!(matches!(unstab.solve_a0(0, &unstab.zero()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn ker_chi_enumeration() {
        let lat = lat2235();
        let g = enumerate_ker_chi(&lat);
        assert_eq!(g.len(), 60);
        assert!(g[0].is_identity());
        assert_eq!(g[0].fixed_set(), &[0, 1, 2, 3, 4]);
        let free_acting = g.iter().filter(|e| e.fixed_set().is_empty()).count();
        assert_eq!(free_acting, 8);
        for e in &g {
            let s: Phase = e.phases().iter().sum();
            assert!(s.is_integer());
        }
    }

    #[test]
    fn unstabilized_elements_skip_z0() {
        let lat = CharacterLattice::new(&[3], false).unwrap();
        let g = enumerate_ker_chi(&lat);
        assert_eq!(g.len(), 3);
        assert_eq!(g[0].fixed_set(), &[1]);
        assert_eq!(g[1].moving_set(), &[1]);
        assert_eq!(g[2].phases(), &[Phase::new(2, 3)]);
    }
}
