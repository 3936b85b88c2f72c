//! Graded maps `φ: ⊕ R(-a_i) → ⊕ R(-b_j)` between twisted free modules over
//! `R = K[x, y, z]`, their per-degree matrices, and the Hilbert functions of
//! kernel and cokernel.
//!
//! For a map of ranks `n + 2 → n` whose cokernel `M` has finite length, the
//! kernel sheafifies to a rank-2 bundle `ℰ` with `H⁰(ℰ(t)) = ker φ_t` and
//! `H¹(ℰ(t)) = M_t`, and `M` is resolved by
//! `0 → G^∨(b-a) → F^∨(b-a) → F → G → M → 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};
use crate::poly::{monomial_basis, mult_matrix, num_monomials, random_homog, HomogPoly};

/// Attempts made by [`random_instance`] before giving up.
pub const GENERATION_RETRY_CAP: usize = 5;

/// The twists `(c_1, …)` of a free module `⊕ R(-c_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistSequence(Vec<i64>);

impl TwistSequence {
    pub fn new(twists: Vec<i64>) -> Result<Self> {
        if twists.is_empty() {
            return Err(Error::Shape("twist sequence must be non-empty".into()));
        }
        Ok(TwistSequence(twists))
    }

    pub fn twists(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> i64 {
        *self.0.iter().min().expect("non-empty")
    }

    pub fn max(&self) -> i64 {
        *self.0.iter().max().expect("non-empty")
    }

    /// `e₂`, the second elementary symmetric function of the twists.
    pub fn e2(&self) -> i64 {
        let s = self.sum();
        let sq: i64 = self.0.iter().map(|c| c * c).sum();
        (s * s - sq) / 2
    }

    /// `(shift - c_i)`: the twists of the dual module twisted by `-shift`.
    pub fn dual_twisted(&self, shift: i64) -> TwistSequence {
        TwistSequence(self.0.iter().map(|c| shift - c).collect())
    }

    /// Dimension of each summand in degree `d`.
    pub fn summand_dims(&self, d: i64) -> Vec<usize> {
        self.0.iter().map(|&c| num_monomials(d - c)).collect()
    }

    /// Offset of each summand's block within the degree-`d` piece.
    pub fn offsets(&self, d: i64) -> Vec<usize> {
        let mut acc = 0;
        self.summand_dims(d)
            .into_iter()
            .map(|n| {
                let o = acc;
                acc += n;
                o
            })
            .collect()
    }
}

impl fmt::Display for TwistSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `dim_K (⊕ R(-c_i))_d = Σ C(d - c_i + 2, 2)`.
pub fn free_dim(tw: &TwistSequence, d: i64) -> usize {
    tw.summand_dims(d).into_iter().sum()
}

/// `dim M_d` predicted by exactness of the Buchsbaum-Rim resolution: the
/// alternating sum of the four free modules in degree `d`.
pub fn expected_hilbert(src: &TwistSequence, tgt: &TwistSequence, d: i64) -> i64 {
    let shift = src.sum() - tgt.sum();
    free_dim(tgt, d) as i64 - free_dim(src, d) as i64 + free_dim(&src.dual_twisted(shift), d) as i64
        - free_dim(&tgt.dual_twisted(shift), d) as i64
}

/// Degrees `[min b_j, a - b - min b_j - 3]` outside of which a finite-length
/// cokernel vanishes.
pub fn scan_range(src: &TwistSequence, tgt: &TwistSequence) -> (i64, i64) {
    let lo = tgt.min();
    (lo, src.sum() - tgt.sum() - lo - 3)
}

/// A graded degree-zero map `⊕ R(-a_i) → ⊕ R(-b_j)` with `n + 2` source and
/// `n` target summands. Entry `(j, i)` is a form of degree `a_i - b_j`, or
/// absent (forced zero) when that degree is negative.
#[derive(Debug, Clone)]
pub struct GradedMap<F: Field> {
    field: F,
    source: TwistSequence,
    target: TwistSequence,
    entries: Vec<Vec<Option<HomogPoly<F::Elem>>>>,
}

impl<F: Field> GradedMap<F> {
    /// Validates shapes and entry degrees. `entries[j][i]` maps source `i` to
    /// target `j`; a `None` in a non-negative slot is read as zero.
    pub fn new(
        field: F,
        source: TwistSequence,
        target: TwistSequence,
        entries: Vec<Vec<Option<HomogPoly<F::Elem>>>>,
    ) -> Result<Self> {
        check_shape(&source, &target)?;
        if entries.len() != target.len() {
            return Err(Error::Shape(format!(
                "entry grid has {} rows, target has {} summands",
                entries.len(),
                target.len()
            )));
        }
        let mut grid = Vec::with_capacity(entries.len());
        for (j, row) in entries.into_iter().enumerate() {
            if row.len() != source.len() {
                return Err(Error::Shape(format!(
                    "entry row {j} has {} columns, source has {} summands",
                    row.len(),
                    source.len()
                )));
            }
            let mut out_row = Vec::with_capacity(row.len());
            for (i, entry) in row.into_iter().enumerate() {
                let deg = source.0[i] - target.0[j];
                let entry = match entry {
                    Some(p) if deg < 0 => {
                        if !p.is_zero(&field) {
                            return Err(Error::Degree(format!(
                                "entry ({j},{i}) must vanish (degree {deg} < 0)"
                            )));
                        }
                        None
                    }
                    Some(p) => {
                        if p.degree() as i64 != deg {
                            return Err(Error::Degree(format!(
                                "entry ({j},{i}) has degree {}, expected {deg}",
                                p.degree()
                            )));
                        }
                        Some(p)
                    }
                    None if deg >= 0 => Some(HomogPoly::zero(&field, deg as usize)),
                    None => None,
                };
                out_row.push(entry);
            }
            grid.push(out_row);
        }
        Ok(GradedMap {
            field,
            source,
            target,
            entries: grid,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn source(&self) -> &TwistSequence {
        &self.source
    }

    pub fn target(&self) -> &TwistSequence {
        &self.target
    }

    /// Entry mapping source summand `i` to target summand `j`.
    pub fn entry(&self, j: usize, i: usize) -> Option<&HomogPoly<F::Elem>> {
        self.entries[j][i].as_ref()
    }

    /// Images of the degree-`d` basis of the source, each as a vector in the
    /// degree-`d` piece of the target. These are the columns of `φ_d`.
    pub fn phi_columns(&self, d: i64) -> Vec<Vec<F::Elem>> {
        let field = &self.field;
        let width = free_dim(&self.target, d);
        let offsets = self.target.offsets(d);
        let mut cols = Vec::with_capacity(free_dim(&self.source, d));
        for (i, &a) in self.source.0.iter().enumerate() {
            if d < a {
                continue;
            }
            for mono in monomial_basis((d - a) as usize) {
                let mut v = vec![field.zero(); width];
                for (j, row) in self.entries.iter().enumerate() {
                    if let Some(p) = &row[i] {
                        for (n, c) in p.terms(field) {
                            v[offsets[j] + mono.times(&n).index()] = c.clone();
                        }
                    }
                }
                cols.push(v);
            }
        }
        cols
    }
}

fn check_shape(source: &TwistSequence, target: &TwistSequence) -> Result<()> {
    if target.is_empty() || source.len() != target.len() + 2 {
        return Err(Error::Shape(format!(
            "need n+2 source and n >= 1 target summands, got {} and {}",
            source.len(),
            target.len()
        )));
    }
    Ok(())
}

/// The matrix of `φ_d`, assembled blockwise from multiplication matrices in
/// summand-then-monomial order.
pub fn phi_matrix<F: Field>(m: &GradedMap<F>, d: i64) -> Matrix<F::Elem> {
    let field = m.field();
    let rows = m.target().summand_dims(d);
    let cols = m.source().summand_dims(d);
    let mut out = Matrix::zeros(field, rows.iter().sum(), cols.iter().sum());
    let row_off = m.target().offsets(d);
    let col_off = m.source().offsets(d);
    for (j, &b) in m.target().twists().iter().enumerate() {
        for (i, &a) in m.source().twists().iter().enumerate() {
            if d < a {
                continue;
            }
            if let Some(p) = m.entry(j, i) {
                debug_assert!(d >= b);
                out.put_block(
                    row_off[j],
                    col_off[i],
                    &mult_matrix(field, p, (d - a) as usize),
                );
            }
        }
    }
    out
}

/// Matrix of multiplication by a form `f` from `G_{d-deg f}` to `G_d`.
pub fn target_mult_matrix<F: Field>(
    m: &GradedMap<F>,
    f: &HomogPoly<F::Elem>,
    d: i64,
) -> Matrix<F::Elem> {
    let field = m.field();
    let e = f.degree() as i64;
    let tgt = m.target();
    let mut out = Matrix::zeros(field, free_dim(tgt, d), free_dim(tgt, d - e));
    let row_off = tgt.offsets(d);
    let col_off = tgt.offsets(d - e);
    for (j, &b) in tgt.twists().iter().enumerate() {
        if d - e < b {
            continue;
        }
        out.put_block(
            row_off[j],
            col_off[j],
            &mult_matrix(field, f, (d - e - b) as usize),
        );
    }
    out
}

/// Finite-support Hilbert function `d ↦ dim M_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    offset: i64,
    dims: Vec<usize>,
}

impl HilbertFunction {
    /// Trims leading and trailing zeros.
    pub fn new(offset: i64, dims: Vec<usize>) -> Self {
        let Some(first) = dims.iter().position(|&x| x != 0) else {
            return HilbertFunction {
                offset: 0,
                dims: Vec::new(),
            };
        };
        let last = dims.iter().rposition(|&x| x != 0).expect("nonzero exists");
        HilbertFunction {
            offset: offset + first as i64,
            dims: dims[first..=last].to_vec(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new())
    }

    /// Lowest degree of the support (0 for the zero function).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Highest degree of the support, if any.
    pub fn top(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.dims.len() as i64 - 1)
    }

    pub fn get(&self, d: i64) -> usize {
        if d < self.offset {
            return 0;
        }
        self.dims
            .get((d - self.offset) as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|c| c.to_string()).collect();
        write!(f, "({}) from degree {}", parts.join(","), self.offset)
    }
}

/// Everything computed about `φ_d` in one degree.
#[derive(Debug)]
pub struct DegreeData<E> {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Echelon basis of `im φ_d` in target coordinates; its free columns
    /// represent a basis of `M_d`.
    pub image: Echelon<E>,
}

impl<E: Clone> DegreeData<E> {
    pub fn rank(&self) -> usize {
        self.image.rank()
    }

    /// `dim M_d`.
    pub fn coker_dim(&self) -> usize {
        self.target_dim - self.rank()
    }

    /// `dim ker φ_d = h⁰(ℰ(d))`.
    pub fn kernel_dim(&self) -> usize {
        self.source_dim - self.rank()
    }
}

/// Per-degree results for one map, computed on first use and shared.
pub struct DegreeCache<'a, F: Field> {
    map: &'a GradedMap<F>,
    data: Mutex<BTreeMap<i64, Arc<DegreeData<F::Elem>>>>,
}

impl<'a, F: Field> DegreeCache<'a, F> {
    pub fn new(map: &'a GradedMap<F>) -> Self {
        DegreeCache {
            map,
            data: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn map(&self) -> &'a GradedMap<F> {
        self.map
    }

    fn compute(&self, d: i64) -> DegreeData<F::Elem> {
        let map = self.map;
        let width = free_dim(map.target(), d);
        let cols = map.phi_columns(d);
        let source_dim = cols.len();
        DegreeData {
            degree: d,
            source_dim,
            target_dim: width,
            image: Echelon::new(map.field(), width, cols),
        }
    }

    pub fn get(&self, d: i64) -> Arc<DegreeData<F::Elem>> {
        if let Some(hit) = self.data.lock().expect("cache lock").get(&d) {
            return Arc::clone(hit);
        }
        let fresh = Arc::new(self.compute(d));
        Arc::clone(
            self.data
                .lock()
                .expect("cache lock")
                .entry(d)
                .or_insert(fresh),
        )
    }

    /// Fills every degree in `lo..=hi` not yet cached, in parallel.
    pub fn prefetch(&self, lo: i64, hi: i64) {
        let missing: Vec<i64> = {
            let data = self.data.lock().expect("cache lock");
            (lo..=hi).filter(|d| !data.contains_key(d)).collect()
        };
        let computed: Vec<_> = missing
            .into_par_iter()
            .map(|d| (d, Arc::new(self.compute(d))))
            .collect();
        let mut data = self.data.lock().expect("cache lock");
        for (d, v) in computed {
            data.entry(d).or_insert(v);
        }
    }

    pub fn coker_dim(&self, d: i64) -> usize {
        if free_dim(self.map.target(), d) == 0 {
            return 0;
        }
        self.get(d).coker_dim()
    }

    pub fn kernel_dim(&self, d: i64) -> usize {
        if free_dim(self.map.source(), d) == 0 {
            return 0;
        }
        self.get(d).kernel_dim()
    }

    /// Hilbert function of the cokernel, validated against the resolution.
    /// `max_degree` replaces the upper end of the scan range when given.
    pub fn hilbert(&self, max_degree: Option<i64>) -> Result<HilbertFunction> {
        let map = self.map;
        let (src, tgt) = (map.source(), map.target());
        let (lo, natural_hi) = scan_range(src, tgt);
        let hi = max_degree.unwrap_or(natural_hi);
        // Beyond max b_j the cokernel is generated from the previous degree,
        // so a single vanishing degree there forces vanishing from then on.
        let beyond = (hi + 1).max(tgt.max());
        if hi >= lo {
            self.prefetch(lo, beyond);
        }
        let mut dims = Vec::new();
        for d in lo..=hi {
            let direct = self.coker_dim(d);
            let expected = expected_hilbert(src, tgt, d);
            if direct as i64 != expected {
                return Err(Error::NotFiniteLength(format!(
                    "dim M_{d} = {direct} but the resolution predicts {expected}"
                )));
            }
            dims.push(direct);
        }
        for d in (hi + 1)..=beyond {
            let direct = self.coker_dim(d);
            if direct != 0 {
                return Err(Error::NotFiniteLength(format!(
                    "dim M_{d} = {direct} above the top degree {hi}"
                )));
            }
        }
        Ok(HilbertFunction::new(lo, dims))
    }
}

/// Hilbert function of `coker φ`; fails if the cokernel is not of finite length.
pub fn coker_dims<F: Field>(m: &GradedMap<F>) -> Result<HilbertFunction> {
    DegreeCache::new(m).hilbert(None)
}

/// `dim ker φ_t = h⁰(ℰ(t))`.
pub fn kernel_dims<F: Field>(m: &GradedMap<F>, t: i64) -> usize {
    DegreeCache::new(m).kernel_dim(t)
}

/// A map with independent uniformly random entries, not checked for finite length.
pub fn random_map<F: Field, R: Rng + ?Sized>(
    field: &F,
    src: &TwistSequence,
    tgt: &TwistSequence,
    rng: &mut R,
) -> Result<GradedMap<F>> {
    check_shape(src, tgt)?;
    let entries = tgt
        .twists()
        .iter()
        .map(|&b| {
            src.twists()
                .iter()
                .map(|&a| (a >= b).then(|| random_homog(field, (a - b) as usize, rng)))
                .collect()
        })
        .collect();
    GradedMap::new(field.clone(), src.clone(), tgt.clone(), entries)
}

/// A map with independent uniformly random entries, redrawn until its
/// cokernel has finite length.
pub fn random_instance<F: Field, R: Rng + ?Sized>(
    field: &F,
    src: &TwistSequence,
    tgt: &TwistSequence,
    rng: &mut R,
) -> Result<GradedMap<F>> {
    check_shape(src, tgt)?;
    let mut last = String::new();
    for _ in 0..GENERATION_RETRY_CAP {
        let map = random_map(field, src, tgt, rng)?;
        match coker_dims(&map) {
            Ok(_) => return Ok(map),
            Err(e @ Error::NotFiniteLength(_)) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(generation_failed(src, tgt, &last))
}

pub(crate) fn generation_failed(src: &TwistSequence, tgt: &TwistSequence, last: &str) -> Error {
    Error::GenerationFailed {
        attempts: GENERATION_RETRY_CAP,
        detail: format!("source {src}, target {tgt}: {last}"),
    }
}

/// The Koszul presentation `R(-d_1) ⊕ R(-d_2) ⊕ R(-d_3) → R` of `R/(f_1, f_2, f_3)`.
pub fn ci_instance<F: Field>(field: &F, forms: [HomogPoly<F::Elem>; 3]) -> Result<GradedMap<F>> {
    if let Some(f) = forms.iter().find(|f| f.degree() == 0) {
        return Err(Error::Degree(format!(
            "complete-intersection generators need positive degree, got {f:?}"
        )));
    }
    let src = TwistSequence::new(forms.iter().map(|f| f.degree() as i64).collect())?;
    let tgt = TwistSequence::new(vec![0])?;
    GradedMap::new(
        field.clone(),
        src,
        tgt,
        vec![forms.into_iter().map(Some).collect()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::linalg::rank;
    use crate::poly::Monomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tw(v: &[i64]) -> TwistSequence {
        TwistSequence::new(v.to_vec()).unwrap()
    }

    fn monomial_form(f: &PrimeField, i: usize, j: usize, k: usize) -> HomogPoly<u32> {
        HomogPoly::from_terms(f, i + j + k, [(Monomial::new(i, j, k), 1)]).unwrap()
    }

    fn koszul_squares(f: &PrimeField) -> GradedMap<PrimeField> {
        ci_instance(
            f,
            [
                monomial_form(f, 2, 0, 0),
                monomial_form(f, 0, 2, 0),
                monomial_form(f, 0, 0, 2),
            ],
        )
        .unwrap()
    }

    /// Number of degree-`d` monomials not divisible by any of `gens`.
    fn monomial_quotient_dim(gens: &[[usize; 3]], d: usize) -> usize {
        monomial_basis(d)
            .into_iter()
            .filter(|m| !gens.iter().any(|g| (0..3).all(|v| m.exps[v] >= g[v])))
            .count()
    }

    #[test]
    fn free_dims() {
        assert_eq!(free_dim(&tw(&[0]), 2), 6);
        assert_eq!(free_dim(&tw(&[7, 2, 2, 2]), 5), 30);
        assert_eq!(free_dim(&tw(&[1, 0]), 5), 36);
        assert_eq!(free_dim(&tw(&[3]), 1), 0);
    }

    #[test]
    fn expected_hilbert_of_first_example() {
        let (src, tgt) = (tw(&[7, 2, 2, 2]), tw(&[1, 0]));
        let dims: Vec<i64> = (0..=9).map(|d| expected_hilbert(&src, &tgt, d)).collect();
        assert_eq!(dims, vec![1, 4, 6, 7, 7, 7, 7, 6, 4, 1]);
        assert_eq!(expected_hilbert(&src, &tgt, -1), 0);
        assert_eq!(expected_hilbert(&src, &tgt, 10), 0);
    }

    #[test]
    fn koszul_degree_three_rank() {
        let f = PrimeField::default();
        let m = koszul_squares(&f);
        let phi = phi_matrix(&m, 3);
        assert_eq!(phi.shape(), (10, 9));
        // Oracle: independent degree-3 multiples of x², y², z² are the
        // distinct monomials divisible by one of them.
        let oracle = 10 - monomial_quotient_dim(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]], 3);
        assert_eq!(oracle, 9);
        assert_eq!(rank(&f, &phi), 9);
    }

    #[test]
    fn koszul_degree_two_matrix() {
        let f = PrimeField::default();
        let m = koszul_squares(&f);
        let phi = phi_matrix(&m, 2);
        assert_eq!(phi.shape(), (6, 3));
        assert_eq!(rank(&f, &phi), 3);
        assert_eq!(phi.column(0), monomial_form(&f, 2, 0, 0).coeffs().to_vec());
    }

    #[test]
    fn phi_below_target_is_empty() {
        let f = PrimeField::default();
        let m = random_instance(
            &f,
            &tw(&[7, 2, 2, 2]),
            &tw(&[1, 0]),
            &mut ChaCha8Rng::seed_from_u64(1),
        )
        .unwrap();
        let phi = phi_matrix(&m, -1);
        assert_eq!(phi.rows(), 0);
    }

    #[test]
    fn phi_blocks_are_multiplication_matrices() {
        let f = PrimeField::default();
        let m = random_instance(
            &f,
            &tw(&[7, 2, 2, 2]),
            &tw(&[1, 0]),
            &mut ChaCha8Rng::seed_from_u64(2),
        )
        .unwrap();
        let d = 8;
        let phi = phi_matrix(&m, d);
        let row_off = m.target().offsets(d);
        let col_off = m.source().offsets(d);
        for (j, &r0) in row_off.iter().enumerate() {
            for (i, &c0) in col_off.iter().enumerate() {
                let a = m.source().twists()[i];
                let block = mult_matrix(&f, m.entry(j, i).unwrap(), (d - a) as usize);
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        assert_eq!(phi.get(r0 + r, c0 + c), block.get(r, c));
                    }
                }
            }
        }
        // The column route and the block route agree.
        let cols = Matrix::from_rows(phi.rows(), m.phi_columns(d)).transpose();
        assert_eq!(cols, phi);
    }

    #[test]
    fn koszul_cokernel_matches_monomial_oracle() {
        let f = PrimeField::default();
        let h = coker_dims(&koszul_squares(&f)).unwrap();
        let oracle: Vec<usize> = (0..6)
            .map(|d| monomial_quotient_dim(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]], d))
            .collect();
        assert_eq!(oracle, vec![1, 3, 3, 1, 0, 0]);
        assert_eq!(h, HilbertFunction::new(0, vec![1, 3, 3, 1]));
    }

    #[test]
    fn linear_ci_is_a_point() {
        let f = PrimeField::default();
        let m = ci_instance(
            &f,
            [
                monomial_form(&f, 1, 0, 0),
                monomial_form(&f, 0, 1, 0),
                monomial_form(&f, 0, 0, 1),
            ],
        )
        .unwrap();
        assert_eq!(coker_dims(&m).unwrap(), HilbertFunction::new(0, vec![1]));
    }

    #[test]
    fn non_regular_sequence_is_not_finite_length() {
        let f = PrimeField::default();
        let m = ci_instance(
            &f,
            [
                monomial_form(&f, 2, 0, 0),
                monomial_form(&f, 1, 1, 0),
                monomial_form(&f, 0, 2, 0),
            ],
        )
        .unwrap();
        assert!(matches!(coker_dims(&m), Err(Error::NotFiniteLength(_))));
    }

    #[test]
    fn ci_rejects_constants() {
        let f = PrimeField::default();
        let c = HomogPoly::from_coeffs(0, vec![1u32]).unwrap();
        let x = monomial_form(&f, 1, 0, 0);
        assert!(matches!(
            ci_instance(&f, [c, x.clone(), x]),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn first_example_kernel_dims() {
        let f = PrimeField::default();
        let m = random_instance(
            &f,
            &tw(&[7, 2, 2, 2]),
            &tw(&[1, 0]),
            &mut ChaCha8Rng::seed_from_u64(3),
        )
        .unwrap();
        assert_eq!(kernel_dims(&m, 4), 0);
        assert_eq!(kernel_dims(&m, 5), 1);
        assert_eq!(kernel_dims(&m, 1), 0);
        assert_eq!(
            coker_dims(&m).unwrap(),
            HilbertFunction::new(0, vec![1, 4, 6, 7, 7, 7, 7, 6, 4, 1])
        );
    }

    #[test]
    fn random_instance_is_deterministic() {
        let f = PrimeField::default();
        let (src, tgt) = (tw(&[3, 2, 2, 1]), tw(&[1, 0]));
        let a = random_instance(&f, &src, &tgt, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        let b = random_instance(&f, &src, &tgt, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        assert_eq!(phi_matrix(&a, 4), phi_matrix(&b, 4));
    }

    #[test]
    fn infeasible_degrees_fail_generation() {
        let f = PrimeField::default();
        let r = random_instance(
            &f,
            &tw(&[1, 1, 1]),
            &tw(&[5]),
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert!(matches!(r, Err(Error::GenerationFailed { .. })));
    }

    #[test]
    fn shape_and_degree_validation() {
        let f = PrimeField::default();
        assert!(matches!(
            GradedMap::new(f, tw(&[1, 1]), tw(&[0, 0]), vec![vec![None, None]; 2]),
            Err(Error::Shape(_))
        ));
        let wrong = Some(monomial_form(&f, 2, 0, 0));
        let mut grid = vec![vec![None; 3]];
        grid[0][0] = wrong;
        assert!(matches!(
            GradedMap::new(f, tw(&[1, 1, 1]), tw(&[0]), grid),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn hilbert_function_trims() {
        let h = HilbertFunction::new(-2, vec![0, 0, 1, 2, 0]);
        assert_eq!(h.offset(), 0);
        assert_eq!(h.dims(), &[1, 2]);
        assert_eq!(h.top(), Some(1));
        assert_eq!(h.get(5), 0);
        assert!(HilbertFunction::new(3, vec![0, 0]).is_zero());
    }
}
