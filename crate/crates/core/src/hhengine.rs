//! Hochschild cohomology dimensions of `MF(K^N, Gamma_w, w)` for diagonal
//! `w`.
//!
//! `HH^k` is a sum over `gamma` in ker(chi). Every restriction of a diagonal
//! polynomial has an isolated critical point, so the Koszul complex of
//! `dw_gamma` is resolved by the Jacobi ring and only its degree-zero part
//! appears. A sector contributes one dimension for each element
//!
//! ```text
//!   (even)  z0^{a0} m  (x)  top(N_gamma^v)               k = 2u + |N_gamma|
//!   (odd)   z0^v (x) z0^{a0} m  (x)  top(N_gamma^v)      k = 2u + |N_gamma| + 1
//! ```
//!
//! of weight `u chi`, where `m` runs over the Jacobi monomial basis of the
//! restriction to the fixed variables other than z0, and the z0 factors are
//! present only when z0 is fixed by `gamma`. For fixed `k` and `gamma`, `u`
//! is determined by parity; `a0` is solved from the free coordinate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charlat::{enumerate_ker_chi, CharacterLattice, GroupElement, Z0};
use crate::diagpoly::{jacobi_basis, DiagonalPolynomial, JacobiBasisElement, Restriction};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Summand {
    /// No `z0^v` factor.
    Even,
    /// Decorated by `z0^v`; only for sectors fixing z0.
    Odd,
}

/// One basis element of `HH^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHContribution {
    /// Index of `gamma` in [`enumerate_ker_chi`] order.
    pub gamma: usize,
    pub summand: Summand,
    /// Exponents indexed by variable; slot 0 holds `a0`.
    pub exponents: Vec<u32>,
    pub u: i64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub k: i64,
    pub dim: u64,
    /// Largest `a0` among the counted contributions.
    pub max_a0: Option<u32>,
    pub witnesses: Option<Vec<HHContribution>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EngineKind {
    #[serde(rename = "closed-form")]
    ClosedForm,
    #[serde(rename = "oracle")]
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HHReport {
    pub exponents: Vec<u32>,
    pub stabilized: bool,
    pub kerchi_order: u64,
    pub milnor: u64,
    pub degrees: Vec<DegreeResult>,
    pub engine: EngineKind,
}

impl HHReport {
    pub fn dim(&self, k: i64) -> Option<u64> {
        self.degrees.iter().find(|d| d.k == k).map(|d| d.dim)
    }

    pub fn max_a0(&self) -> Option<u32> {
        self.degrees.iter().filter_map(|d| d.max_a0).max()
    }
}

struct Sector {
    restriction: Restriction,
    moving: Vec<usize>,
    basis: Vec<JacobiBasisElement>,
}

#[derive(Default)]
struct SectorCount {
    dim: u64,
    max_a0: Option<u32>,
    witnesses: Vec<HHContribution>,
}

/// Precomputed group, lattice and Jacobi bases for one polynomial.
pub struct HHEngine {
    poly: DiagonalPolynomial,
    lattice: CharacterLattice,
    group: Vec<GroupElement>,
    sectors: Vec<Sector>,
    milnor: u64,
    pool: Option<rayon::ThreadPool>,
}

impl HHEngine {
    pub fn new(poly: &DiagonalPolynomial) -> Result<Self> {
        Self::with_threads(poly, 1)
    }

    /// `threads > 1` fans the per-sector counts out over a private pool.
    pub fn with_threads(poly: &DiagonalPolynomial, threads: usize) -> Result<Self> {
        let lattice = poly.lattice()?;
        let group = enumerate_ker_chi(&lattice);
        let pool = if threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        let build = |g: &GroupElement| -> Result<Sector> {
            let restriction = poly.restrict(g);
            let basis = jacobi_basis(&lattice, &restriction)?;
            Ok(Sector {
                restriction,
                moving: g.moving_set().to_vec(),
                basis,
            })
        };
        let sectors = match &pool {
            Some(p) => p.install(|| group.par_iter().map(build).collect::<Result<Vec<_>>>())?,
            None => group.iter().map(build).collect::<Result<Vec<_>>>()?,
        };
        Ok(HHEngine {
            poly: poly.clone(),
            milnor: poly.milnor_number()?,
            lattice,
            group,
            sectors,
            pool,
        })
    }

    pub fn polynomial(&self) -> &DiagonalPolynomial {
        &self.poly
    }

    pub fn lattice(&self) -> &CharacterLattice {
        &self.lattice
    }

    pub fn group(&self) -> &[GroupElement] {
        &self.group
    }

    pub fn milnor(&self) -> u64 {
        self.milnor
    }

    fn count_sector(&self, idx: usize, k: i64, witnesses: bool) -> Result<SectorCount> {
        let sector = &self.sectors[idx];
        let lat = &self.lattice;
        let mut out = SectorCount::default();
        let shift = sector.moving.len() as i64;

        for summand in [Summand::Even, Summand::Odd] {
            let odd = summand == Summand::Odd;
            if odd && !sector.restriction.z0_fixed {
                continue;
            }
            let twice_u = k - shift - i64::from(odd);
            if twice_u.rem_euclid(2) != 0 {
                continue;
            }
            let u = twice_u / 2;
            let decoration = lat.weight_of_monomial(&vec![0; lat.num_vars() + 1], &sector.moving, odd)?;
            let target = lat.scale(&lat.chi(), u)?;

            for m in &sector.basis {
                let partial = lat.add(&m.weight, &decoration)?;
                let a0 = if sector.restriction.z0_fixed {
                    match lat.solve_a0(u, &partial)? {
                        Some(a0) => a0,
                        None => continue,
                    }
                } else if partial == target {
                    0
                } else {
                    continue;
                };
                out.dim += 1;
                if sector.restriction.z0_fixed {
                    out.max_a0 = out.max_a0.max(Some(a0));
                }
                if witnesses {
                    let mut exponents = m.exponents.clone();
                    exponents[Z0] = a0;
                    out.witnesses.push(HHContribution {
                        gamma: idx,
                        summand,
                        exponents,
                        u,
                        k,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `dim HH^k`, optionally with the contributing basis elements.
    pub fn dimension(&self, k: i64, witnesses: bool) -> Result<DegreeResult> {
        let run = |i: usize| self.count_sector(i, k, witnesses);
        let counts = match &self.pool {
            Some(p) => p.install(|| (0..self.sectors.len()).into_par_iter().map(run).collect::<Result<Vec<_>>>())?,
            None => (0..self.sectors.len()).map(run).collect::<Result<Vec<_>>>()?,
        };
        let mut dim = 0u64;
        let mut max_a0 = None;
        let mut wit = Vec::new();
        for c in counts {
            dim = dim.checked_add(c.dim).ok_or(Error::Overflow)?;
            max_a0 = max_a0.max(c.max_a0);
            wit.extend(c.witnesses);
        }
        wit.sort_by(|a, b| (a.gamma, a.summand, &a.exponents).cmp(&(b.gamma, b.summand, &b.exponents)));
        Ok(DegreeResult {
            k,
            dim,
            max_a0,
            witnesses: witnesses.then_some(wit),
        })
    }

    pub fn range(&self, k_min: i64, k_max: i64, witnesses: bool) -> Result<HHReport> {
        if k_min > k_max {
            return Err(Error::InvalidInput(format!("empty degree range [{k_min}, {k_max}]")));
        }
        let degrees = (k_min..=k_max)
            .map(|k| self.dimension(k, witnesses))
            .collect::<Result<Vec<_>>>()?;
        Ok(HHReport {
            exponents: self.poly.exponents().to_vec(),
            stabilized: self.poly.is_stabilized(),
            kerchi_order: self.group.len() as u64,
            milnor: self.milnor,
            degrees,
            engine: EngineKind::ClosedForm,
        })
    }
}

pub fn hh_dimension(p: &DiagonalPolynomial, k: i64, witnesses: bool) -> Result<DegreeResult> {
    HHEngine::new(p)?.dimension(k, witnesses)
}

pub fn hh_range(p: &DiagonalPolynomial, k_min: i64, k_max: i64, witnesses: bool) -> Result<HHReport> {
    HHEngine::new(p)?.range(k_min, k_max, witnesses)
}

/// Exhaustive counterpart of [`hh_dimension`]: scans `u` in
/// `[-u_bound, u_bound]` and `a0` in `[0, a0_bound]`, and tests each
/// candidate's weight for equality with `u chi` directly.
pub fn hh_bruteforce(p: &DiagonalPolynomial, k: i64, a0_bound: u32, u_bound: u32) -> Result<u64> {
    let lat = p.lattice()?;
    let n = p.num_vars();
    let mut count = 0u64;
    for g in enumerate_ker_chi(&lat) {
        let z0_fixed = p.is_stabilized() && g.fixes(Z0);
        let moving = g.moving_set();
        let fixed: Vec<usize> = (1..=n).filter(|&j| g.fixes(j)).collect();
        for u in -i64::from(u_bound)..=i64::from(u_bound) {
            let target = lat.scale(&lat.chi(), u)?;
            for odd in [false, true] {
                if odd && !z0_fixed {
                    continue;
                }
                if 2 * u + moving.len() as i64 + i64::from(odd) != k {
                    continue;
                }
                let a0_max = if z0_fixed { a0_bound } else { 0 };
                for_each_box_point(&fixed, p, n, |a| {
                    let mut a = a.to_vec();
                    for a0 in 0..=a0_max {
                        a[Z0] = a0;
                        if lat.weight_of_monomial(&a, moving, odd)? == target {
                            count += 1;
                        }
                    }
                    Ok(())
                })?;
            }
        }
    }
    Ok(count)
}

/// Calls `f` on every exponent vector with `0 <= a_j <= k_j - 2` on `vars`
/// and zero elsewhere.
fn for_each_box_point(
    vars: &[usize],
    p: &DiagonalPolynomial,
    n: usize,
    mut f: impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    fn rec(
        vars: &[usize],
        p: &DiagonalPolynomial,
        a: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]) -> Result<()>,
    ) -> Result<()> {
        match vars.split_first() {
            None => f(a),
            Some((&j, rest)) => {
                for e in 0..=p.exponent(j) - 2 {
                    a[j] = e;
                    rec(rest, p, a, f)?;
                }
                a[j] = 0;
                Ok(())
            }
        }
    }
    let mut a = vec![0u32; n + 1];
    rec(vars, p, &mut a, &mut f)
}

/// Exact checks of `dim HH^0 = k_3 - 1` and `dim HH^n = mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropositionStatus {
    Pass,
    Mismatch,
    HypothesesNotMet(String),
    EngineError(Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub k: i64,
    pub computed: u64,
    pub expected: u64,
}

impl DegreeCheck {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionReport {
    pub status: PropositionStatus,
    pub checks: Vec<DegreeCheck>,
}

fn is_prime(k: u32) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

/// Smallest odd prime exponent when `p` is stabilized and its exponents are
/// two 2's plus distinct primes `>= 3`.
fn proposition_hypotheses(p: &DiagonalPolynomial) -> std::result::Result<u32, String> {
    if !p.is_stabilized() {
        return Err("polynomial is not stabilized by z0".into());
    }
    let mut ks = p.exponents().to_vec();
    ks.sort_unstable();
    let twos = ks.iter().take_while(|&&k| k == 2).count();
    if twos != 2 {
        return Err(format!("expected exactly two exponents equal to 2, found {twos}"));
    }
    let rest = &ks[2..];
    if rest.is_empty() {
        return Err("no exponents besides the two quadratic ones".into());
    }
    if let Some(k) = rest.iter().find(|&&k| !is_prime(k)) {
        return Err(format!("exponent {k} is not prime"));
    }
    if let Some(w) = rest.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("prime {} is repeated", w[0]));
    }
    Ok(rest[0])
}

pub fn verify_proposition(p: &DiagonalPolynomial) -> PropositionReport {
    let k3 = match proposition_hypotheses(p) {
        Ok(k3) => k3,
        Err(why) => {
            return PropositionReport {
                status: PropositionStatus::HypothesesNotMet(why),
                checks: vec![],
            }
        }
    };
    let run = || -> Result<Vec<DegreeCheck>> {
        let engine = HHEngine::new(p)?;
        Ok(vec![
            DegreeCheck {
                k: 0,
                computed: engine.dimension(0, false)?.dim,
                expected: u64::from(k3 - 1),
            },
            DegreeCheck {
                k: p.n(),
                computed: engine.dimension(p.n(), false)?.dim,
                expected: engine.milnor(),
            },
        ])
    };
    match run() {
        Ok(checks) => PropositionReport {
            status: if checks.iter().all(DegreeCheck::holds) {
                PropositionStatus::Pass
            } else {
                PropositionStatus::Mismatch
            },
            checks,
        },
        Err(e) => PropositionReport {
            status: PropositionStatus::EngineError(e),
            checks: vec![],
        },
    }
}
