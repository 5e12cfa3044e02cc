//! The (5,5) and (6,6) edge states, their range structure, and a handful of
//! reference states.
//!
//! Both edge states are stored as integer numerators over 13 so that ranks
//! and partial transposes can be checked exactly. The range bases are the
//! integer vectors obtained by setting one free parameter of the known range
//! parametrisation to 1 and the rest to 0.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bipartite::{partial_transpose, tensor_vectors, BipartiteOperator, ProductVector};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, RationalMatrix};

/// Selects the range of a state or of its partial transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RangeKind {
    State,
    PartialTranspose,
}

/// Integer numerators of a state and of its partial transpose as printed,
/// over a common denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactState {
    pub numerators: RationalMatrix,
    pub pt_numerators: RationalMatrix,
    pub denominator: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub state: BipartiteOperator,
    pub exact: Option<ExactState>,
    pub expected_rank: usize,
    pub expected_pt_rank: usize,
    pub expected_ppt: bool,
    pub range_basis: Option<Vec<Vec<Complex64>>>,
    pub pt_range_basis: Option<Vec<Vec<Complex64>>>,
}

impl CatalogEntry {
    /// `(rank, PT rank)` as a label, e.g. `(5,5)`.
    pub fn rank_label(&self) -> String {
        alloc::format!("({},{})", self.expected_rank, self.expected_pt_rank)
    }

    pub fn basis(&self, which: RangeKind) -> Option<&[Vec<Complex64>]> {
        match which {
            RangeKind::State => self.range_basis.as_deref(),
            RangeKind::PartialTranspose => self.pt_range_basis.as_deref(),
        }
    }

    /// Range projector, built from the stored exact basis when there is one
    /// and from the spectrum (threshold `rel_tol`) otherwise.
    pub fn range_projector(&self, which: RangeKind, rel_tol: f64) -> Result<ComplexMatrix> {
        if let Some(basis) = self.basis(which) {
            return linalg::span_projector(basis, self.state.dim());
        }
        match which {
            RangeKind::State => linalg::range_projector(self.state.matrix(), rel_tol),
            RangeKind::PartialTranspose => {
                linalg::range_projector(partial_transpose(&self.state).matrix(), rel_tol)
            }
        }
    }
}

#[rustfmt::skip]
const RHO_5_5: [i64; 81] = [
    0,  0,  0,  0,  0,  0,  0,  0,  0,
    0,  2, -1,  0,  0,  0,  0,  0,  1,
    0, -1,  1,  0,  0,  0,  0,  0, -1,
    0,  0,  0,  3,  0, -1, -1,  0,  0,
    0,  0,  0,  0,  0,  0,  0,  0,  0,
    0,  0,  0, -1,  0,  1,  1,  0,  0,
    0,  0,  0, -1,  0,  1,  1,  0,  0,
    0,  0,  0,  0,  0,  0,  0,  2, -2,
    0,  1, -1,  0,  0,  0,  0, -2,  3,
];

#[rustfmt::skip]
const RHO_5_5_PT: [i64; 81] = [
    0,  0,  0,  0,  0,  0,  0,  0,  0,
    0,  2, -1,  0,  0,  0,  0,  0,  0,
    0, -1,  1,  0,  0,  0,  0,  1, -1,
    0,  0,  0,  3,  0, -1, -1,  0,  1,
    0,  0,  0,  0,  0,  0,  0,  0,  0,
    0,  0,  0, -1,  0,  1,  0,  0,  0,
    0,  0,  0, -1,  0,  0,  1,  0,  0,
    0,  0,  1,  0,  0,  0,  0,  2, -2,
    0,  0, -1,  1,  0,  0,  0, -2,  3,
];

#[rustfmt::skip]
const RHO_6_6: [i64; 81] = [
     1,  0,  0,  0,  0,  0,  0,  0, -1,
     0,  2,  0, -1,  0,  0,  0,  0,  0,
     0,  0,  1,  0,  0,  0,  1,  0,  0,
     0, -1,  0,  1,  0,  0,  0,  0,  1,
     0,  0,  0,  0,  1,  0,  1,  0,  0,
     0,  0,  0,  0,  0,  1,  0, -1,  0,
     0,  0,  1,  0,  1,  0,  2,  0,  0,
     0,  0,  0,  0,  0, -1,  0,  1,  0,
    -1,  0,  0,  1,  0,  0,  0,  0,  3,
];

#[rustfmt::skip]
const RHO_6_6_PT: [i64; 81] = [
     1,  0,  0,  0, -1,  0,  0,  0,  1,
     0,  2,  0,  0,  0,  0,  0,  0,  0,
     0,  0,  1,  0,  0,  0, -1,  0,  0,
     0,  0,  0,  1,  0,  0,  0,  1,  0,
    -1,  0,  0,  0,  1,  0,  0,  0, -1,
     0,  0,  0,  0,  0,  1,  1,  0,  0,
     0,  0, -1,  0,  0,  1,  2,  0,  0,
     0,  0,  0,  1,  0,  0,  0,  1,  0,
     1,  0,  0,  0, -1,  0,  0,  0,  3,
];

// Range of ρ(5,5): V = (0, A, -E-F, C, 0, D, D, E, F); one row per parameter A, C, D, E, F.
#[rustfmt::skip]
const RANGE_5_5: [[i64; 9]; 5] = [
    [0, 1,  0, 0, 0, 0, 0, 0, 0],
    [0, 0,  0, 1, 0, 0, 0, 0, 0],
    [0, 0,  0, 0, 0, 1, 1, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 1, 0],
    [0, 0, -1, 0, 0, 0, 0, 0, 1],
];

// Range of ρ(5,5)^TB: V = (0, A, B, C, 0, D, E, A+2B, -A-2B+C+D+E); parameters A..E.
#[rustfmt::skip]
const PT_RANGE_5_5: [[i64; 9]; 5] = [
    [0, 1, 0, 0, 0, 0, 0, 1, -1],
    [0, 0, 1, 0, 0, 0, 0, 2, -2],
    [0, 0, 0, 1, 0, 0, 0, 0,  1],
    [0, 0, 0, 0, 0, 1, 0, 0,  1],
    [0, 0, 0, 0, 0, 0, 1, 0,  1],
];

// Range of ρ(6,6): V = (A, B, C, D, E, F, C+E, -F, B+2D-A); parameters A..F.
#[rustfmt::skip]
const RANGE_6_6: [[i64; 9]; 6] = [
    [1, 0, 0, 0, 0, 0, 0,  0, -1],
    [0, 1, 0, 0, 0, 0, 0,  0,  1],
    [0, 0, 1, 0, 0, 0, 1,  0,  0],
    [0, 0, 0, 1, 0, 0, 0,  0,  2],
    [0, 0, 0, 0, 1, 0, 1,  0,  0],
    [0, 0, 0, 0, 0, 1, 0, -1,  0],
];

// Range of ρ(6,6)^TB: V' = (A, B, C, D, -A, E, E-C, D, F); parameters A..F.
#[rustfmt::skip]
const PT_RANGE_6_6: [[i64; 9]; 6] = [
    [1, 0,  0, 0, -1, 0,  0, 0, 0],
    [0, 1,  0, 0,  0, 0,  0, 0, 0],
    [0, 0,  1, 0,  0, 0, -1, 0, 0],
    [0, 0,  0, 1,  0, 0,  0, 1, 0],
    [0, 0,  0, 0,  0, 1,  1, 0, 0],
    [0, 0,  0, 0,  0, 0,  0, 0, 1],
];

/// Catalog names accepted by [`lookup`].
pub const NAMES: [&str; 5] = ["rho_5_5", "rho_6_6", "max_mixed", "max_entangled", "separable_sample"];

/// Seed of the fixed separable reference mixture.
pub const SEPARABLE_SAMPLE_SEED: u64 = 0x5EED_0009;
/// Number of product states in the separable reference mixture.
pub const SEPARABLE_SAMPLE_TERMS: usize = 20;

fn integer_basis<const N: usize>(rows: &[[i64; N]]) -> Vec<Vec<Complex64>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect())
        .collect()
}

fn edge_entry(
    name: &str,
    numerators: &[i64; 81],
    pt_numerators: &[i64; 81],
    rank: usize,
    range: Vec<Vec<Complex64>>,
    pt_range: Vec<Vec<Complex64>>,
) -> CatalogEntry {
    let numerators = RationalMatrix::from_integers(9, 9, numerators).expect("9x9");
    let pt_numerators = RationalMatrix::from_integers(9, 9, pt_numerators).expect("9x9");
    let denominator = 13;
    let exact = numerators.scale(&BigRational::new(BigInt::from(1), BigInt::from(denominator)));
    let state = BipartiteOperator::new(3, 3, exact.to_complex()).expect("9x9 on 3x3");
    CatalogEntry {
        name: name.to_owned(),
        state,
        exact: Some(ExactState {
            numerators,
            pt_numerators,
            denominator,
        }),
        expected_rank: rank,
        expected_pt_rank: rank,
        expected_ppt: true,
        range_basis: Some(range),
        pt_range_basis: Some(pt_range),
    }
}

/// The rank-(5,5) edge state on `C^3 ⊗ C^3`.
pub fn rho_5_5() -> CatalogEntry {
    edge_entry(
        "rho_5_5",
        &RHO_5_5,
        &RHO_5_5_PT,
        5,
        integer_basis(&RANGE_5_5),
        integer_basis(&PT_RANGE_5_5),
    )
}

/// The rank-(6,6) edge state on `C^3 ⊗ C^3`.
pub fn rho_6_6() -> CatalogEntry {
    edge_entry(
        "rho_6_6",
        &RHO_6_6,
        &RHO_6_6_PT,
        6,
        integer_basis(&RANGE_6_6),
        integer_basis(&PT_RANGE_6_6),
    )
}

/// `I/9`
pub fn max_mixed() -> CatalogEntry {
    let mut ident = vec![0i64; 81];
    for i in 0..9 {
        ident[i * 10] = 1;
    }
    let numerators = RationalMatrix::from_integers(9, 9, &ident).expect("9x9");
    let unit = (0..9)
        .map(|i| {
            let mut e = vec![Complex64::new(0.0, 0.0); 9];
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect::<Vec<_>>();
    CatalogEntry {
        name: "max_mixed".to_owned(),
        state: BipartiteOperator::identity(3, 3).map_matrix(|m| m.scale_real(1.0 / 9.0)),
        exact: Some(ExactState {
            pt_numerators: numerators.clone(),
            numerators,
            denominator: 9,
        }),
        expected_rank: 9,
        expected_pt_rank: 9,
        expected_ppt: true,
        range_basis: Some(unit.clone()),
        pt_range_basis: Some(unit),
    }
}

/// `|φ⁺⟩⟨φ⁺|` with `|φ⁺⟩ = (|00⟩ + |11⟩ + |22⟩)/√3`.
pub fn max_entangled() -> CatalogEntry {
    let mut num = vec![0i64; 81];
    let mut pt = vec![0i64; 81];
    for i in 0..3 {
        for j in 0..3 {
            num[(4 * i) * 9 + 4 * j] = 1;
            // PT is SWAP: |ij⟩⟨ji|
            pt[(3 * i + j) * 9 + (3 * j + i)] = 1;
        }
    }
    let numerators = RationalMatrix::from_integers(9, 9, &num).expect("9x9");
    let state = numerators.scale(&BigRational::new(BigInt::from(1), BigInt::from(3)));
    let mut phi = vec![Complex64::new(0.0, 0.0); 9];
    for i in 0..3 {
        phi[4 * i] = Complex64::new(1.0, 0.0);
    }
    CatalogEntry {
        name: "max_entangled".to_owned(),
        state: BipartiteOperator::new(3, 3, state.to_complex()).expect("9x9"),
        exact: Some(ExactState {
            numerators,
            pt_numerators: RationalMatrix::from_integers(9, 9, &pt).expect("9x9"),
            denominator: 3,
        }),
        expected_rank: 1,
        expected_pt_rank: 9,
        expected_ppt: false,
        range_basis: Some(vec![phi]),
        pt_range_basis: None,
    }
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    linalg::normalized(&v).expect("gaussian sample is nonzero")
}

/// The product vectors and weights of a seeded separable mixture.
pub fn separable_mixture_terms(seed: u64, terms: usize) -> Vec<(f64, ProductVector)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<(f64, ProductVector)> = (0..terms)
        .map(|_| {
            let a = random_unit(&mut rng, 3);
            let b = random_unit(&mut rng, 3);
            let w: f64 = rng.random_range(0.1..1.0);
            (w, ProductVector::new(&a, &b).expect("unit factors"))
        })
        .collect();
    let total: f64 = raw.iter().map(|(w, _)| w).sum();
    raw.into_iter().map(|(w, p)| (w / total, p)).collect()
}

/// `Σ p_i |a_i b_i⟩⟨a_i b_i|`
pub fn separable_mixture(seed: u64, terms: usize) -> BipartiteOperator {
    let mut m = ComplexMatrix::zeros(9, 9);
    for (w, p) in separable_mixture_terms(seed, terms) {
        let t = p.tensor();
        m = &m + &ComplexMatrix::outer(&t, &t).scale_real(w);
    }
    BipartiteOperator::new(3, 3, m).expect("9x9")
}

/// Fixed mixture of 20 random product states (full rank).
pub fn separable_sample() -> CatalogEntry {
    CatalogEntry {
        name: "separable_sample".to_owned(),
        state: separable_mixture(SEPARABLE_SAMPLE_SEED, SEPARABLE_SAMPLE_TERMS),
        exact: None,
        expected_rank: 9,
        expected_pt_rank: 9,
        expected_ppt: true,
        range_basis: None,
        pt_range_basis: None,
    }
}

/// The sanity corpus: `max_mixed`, `max_entangled`, `separable_sample`.
pub fn reference_states() -> Vec<CatalogEntry> {
    vec![max_mixed(), max_entangled(), separable_sample()]
}

pub fn all_entries() -> Vec<CatalogEntry> {
    let mut v = vec![rho_5_5(), rho_6_6()];
    v.extend(reference_states());
    v
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    match name {
        "rho_5_5" => Ok(rho_5_5()),
        "rho_6_6" => Ok(rho_6_6()),
        "max_mixed" => Ok(max_mixed()),
        "max_entangled" => Ok(max_entangled()),
        "separable_sample" => Ok(separable_sample()),
        other => Err(Error::UnknownName(other.to_owned())),
    }
}

/// A parametrised family of product vectors lying in one of the ranges.
#[derive(Clone, Copy)]
pub struct RangeFamily {
    /// Case label in the range analysis, e.g. `1.2.1`.
    pub case: &'static str,
    /// Human-readable form of the family.
    pub form: &'static str,
    pub target: RangeKind,
    /// Number of complex parameters.
    pub params: usize,
    build: fn(&[Complex64]) -> Option<[[Complex64; 3]; 2]>,
}

impl core::fmt::Debug for RangeFamily {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RangeFamily")
            .field("case", &self.case)
            .field("form", &self.form)
            .field("target", &self.target)
            .field("params", &self.params)
            .finish()
    }
}

/// Parameter sets closer than this to a family's excluded locus are skipped.
const DEGENERACY_TOL: f64 = 1e-6;

impl RangeFamily {
    /// The normalised product vector for `params`, or `None` when the
    /// parameters hit an excluded or null case.
    pub fn generate(&self, params: &[Complex64]) -> Option<ProductVector> {
        assert_eq!(params.len(), self.params, "family {} takes {} parameters", self.case, self.params);
        let [a, b] = (self.build)(params)?;
        ProductVector::new(&a, &b).ok()
    }

    /// Unnormalised `a ⊗ b` for `params`.
    pub fn raw_tensor(&self, params: &[Complex64]) -> Option<Vec<Complex64>> {
        let [a, b] = (self.build)(params)?;
        Some(tensor_vectors(&a, &b))
    }

    /// `count` vectors: a fixed grid of parameter values first, then seeded
    /// complex Gaussian parameters.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<ProductVector> {
        const GRID: [(f64, f64); 6] = [(1.0, 0.0), (-1.0, 0.0), (2.0, 0.0), (0.5, 0.0), (0.0, 1.0), (1.0, -1.0)];
        let mut out = Vec::with_capacity(count);
        let grid_points = GRID.len().pow(self.params as u32);
        for idx in 0..grid_points {
            if out.len() == count {
                return out;
            }
            let mut k = idx;
            let params: Vec<Complex64> = (0..self.params)
                .map(|_| {
                    let (re, im) = GRID[k % GRID.len()];
                    k /= GRID.len();
                    Complex64::new(re, im)
                })
                .collect();
            if let Some(p) = self.generate(&params) {
                out.push(p);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while out.len() < count {
            let params: Vec<Complex64> = (0..self.params)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            if let Some(p) = self.generate(&params) {
                out.push(p);
            }
        }
        out
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

// Families use the (s,t,v) ⊗ (x,y,z) naming of the range analysis.

fn case_1_1(p: &[Complex64]) -> Option<[[Complex64; 3]; 2]> {
    let (y, z) = (p[0], p[1]);
    if (y + z).norm() < DEGENERACY_TOL * (y.norm() + z.norm()).max(1.0) {
        return None;
    }
    Some([[one(), zero(), -z / (y + z)], [zero(), y, z]])
}

fn case_2_1(p: &[Complex64]) -> Option<[[Complex64; 3]; 2]> {
    let (v, y) = (p[0], p[1]);
    Some([[zero(), zero(), v], [zero(), y, -y]])
}

fn case_2_2_1(p: &[Complex64]) -> Option<[[Complex64; 3]; 2]> {
    let (t, x) = (p[0], p[1]);
    Some([[zero(), t, zero()], [x, zero(), zero()]])
}

fn pt_case_1_1(p: &[Complex64]) -> Option<[[Complex64; 3]; 2]> {
    let (t, z) = (p[0], p[1]);
    Some([[zero(), t, t], [zero(), zero(), z]])
}

fn pt_case_1_2_1(p: &[Complex64]) -> Option<[[Complex64; 3]; 2]> {
    let (s, z) = (p[0], p[1]);
    Some([[s, zero(), zero()], [zero(), -z * 2.0, z]])
}

fn pt_case_1_2_2(p: &[Complex64]) -> Option<[[Complex64; 3]; 2]> {
    let (s, y) = (p[0], p[1]);
    Some([[-s, zero(), s], [zero(), y, -y]])
}

fn pt_case_2(p: &[Complex64]) -> Option<[[Complex64; 3]; 2]> {
    // second party-A component t, third v; (v - t) z = (v + t) x
    let (t, v, x) = (p[0], p[1], p[2]);
    let diff = v - t;
    if diff.norm() < DEGENERACY_TOL * (v.norm() + t.norm()).max(1.0) {
        return None;
    }
    let z = (v + t) * x / diff;
    Some([[zero(), t, v], [x, zero(), z]])
}

/// Product-vector families of the named range.
///
/// `rho_6_6` and `rho_6_6_pt` have none listed: no product vector in the
/// range of ρ(6,6) has its conjugate partner in the range of the partial
/// transpose, and individual membership there is checked against the linear
/// range constraints instead.
pub fn range_families(name: &str) -> Result<Vec<RangeFamily>> {
    use RangeKind::*;
    let fam = |case, form, target, params, build| RangeFamily {
        case,
        form,
        target,
        params,
        build,
    };
    match name {
        "rho_5_5" => Ok(vec![
            fam("1.1", "(1,0,-z/(y+z)) ⊗ (0,y,z), y != -z", State, 2, case_1_1),
            fam("2.1", "(0,0,v) ⊗ (0,y,-y)", State, 2, case_2_1),
            fam("2.2.1", "(0,t,0) ⊗ (x,0,0)", State, 2, case_2_2_1),
        ]),
        "rho_5_5_pt" => Ok(vec![
            fam("1.1", "(0,t,t) ⊗ (0,0,z)", PartialTranspose, 2, pt_case_1_1),
            fam("1.2.1", "(s,0,0) ⊗ (0,-2z,z)", PartialTranspose, 2, pt_case_1_2_1),
            fam("1.2.2", "(-s,0,s) ⊗ (0,y,-y)", PartialTranspose, 2, pt_case_1_2_2),
            fam("2", "(0,t,v) ⊗ (x,0,z), (v-t)z = (v+t)x", PartialTranspose, 3, pt_case_2),
        ]),
        "rho_6_6" | "rho_6_6_pt" => Ok(Vec::new()),
        other => Err(Error::UnknownName(other.to_owned())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::partial_transpose_exact;
    use crate::linalg::{exact_rank, residual_norm};

    #[test]
    fn traces_are_exactly_one() {
        for entry in [rho_5_5(), rho_6_6()] {
            let ex = entry.exact.as_ref().unwrap();
            assert_eq!(ex.numerators.trace(), BigRational::from_integer(BigInt::from(13)));
            assert!(ex.numerators.is_symmetric());
            assert!((entry.state.trace().re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn printed_entries() {
        let r = rho_5_5();
        assert_eq!(r.state.entry(0, 1, 0, 1).re, 2.0 / 13.0);
        assert_eq!(r.state.entry(2, 2, 0, 1).re, 1.0 / 13.0);
        let s = rho_6_6();
        assert_eq!(s.state.entry(0, 0, 2, 2).re, -1.0 / 13.0);
    }

    #[test]
    fn exact_ranks_and_pt() {
        for entry in [rho_5_5(), rho_6_6(), max_mixed(), max_entangled()] {
            let ex = entry.exact.as_ref().unwrap();
            assert_eq!(exact_rank(&ex.numerators), entry.expected_rank, "{}", entry.name);
            assert_eq!(exact_rank(&ex.pt_numerators), entry.expected_pt_rank, "{}", entry.name);
            assert_eq!(partial_transpose_exact(&ex.numerators, 3, 3).unwrap(), ex.pt_numerators);
        }
    }

    #[test]
    fn lookup_names() {
        for name in NAMES {
            assert_eq!(lookup(name).unwrap().name, name);
        }
        assert!(matches!(lookup("rho_7_7"), Err(Error::UnknownName(_))));
        assert!(matches!(range_families("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn named_family_examples() {
        let r = rho_5_5();
        let p_range = r.range_projector(RangeKind::State, 1e-9).unwrap();
        let p_pt = r.range_projector(RangeKind::PartialTranspose, 1e-9).unwrap();
        let fams = range_families("rho_5_5").unwrap();
        let v = fams[0].generate(&[one(), one()]).unwrap();
        let expected = ProductVector::from_real(&[1.0, 0.0, -0.5], &[0.0, 1.0, 1.0]).unwrap();
        assert!(linalg::norm(&sub(&v.tensor(), &expected.tensor())) < 1e-15);
        assert!(residual_norm(&v.tensor(), &p_range).unwrap() < 1e-10);

        let w = fams[2].generate(&[one(), one()]).unwrap();
        assert_eq!(w, ProductVector::from_real(&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]).unwrap());
        assert!(residual_norm(&w.tensor(), &p_range).unwrap() < 1e-10);

        let pt_fams = range_families("rho_5_5_pt").unwrap();
        let u = pt_fams[1].generate(&[one(), one()]).unwrap();
        let expected = ProductVector::from_real(&[1.0, 0.0, 0.0], &[0.0, -2.0, 1.0]).unwrap();
        assert!(linalg::norm(&sub(&u.tensor(), &expected.tensor())) < 1e-15);
        assert!(residual_norm(&u.tensor(), &p_pt).unwrap() < 1e-10);
    }

    #[test]
    fn pt_case_two_constraint_holds_before_conjugation() {
        let fam = range_families("rho_5_5_pt").unwrap()[3];
        let params = [Complex64::new(0.3, -0.2), Complex64::new(1.1, 0.4), Complex64::new(-0.7, 0.9)];
        let [a, b] = (fam.build)(&params).unwrap();
        let (t, v, x, z) = (a[1], a[2], b[0], b[2]);
        assert!(((v - t) * z - (v + t) * x).norm() < 1e-14);
    }

    #[test]
    fn edge_states_have_no_families_listed() {
        assert!(range_families("rho_6_6").unwrap().is_empty());
        assert!(range_families("rho_6_6_pt").unwrap().is_empty());
    }

    #[test]
    fn reference_labels() {
        let mm = max_mixed();
        assert_eq!(mm.rank_label(), "(9,9)");
        let me = max_entangled();
        assert_eq!(
            partial_transpose(&me.state).matrix(),
            &me.exact.as_ref().unwrap().pt_numerators.to_complex().scale_real(1.0 / 3.0)
        );
        let sep = separable_sample();
        assert_eq!(linalg::numeric_rank(sep.state.matrix(), 1e-9).unwrap(), 9);
        sep.state.validate_density(1e-12).unwrap();
    }

    fn sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
}
