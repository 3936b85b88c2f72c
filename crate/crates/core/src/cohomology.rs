//! Chern data, cohomology tables and the stability type of the rank-2 kernel
//! bundle `ℰ` of a graded map, together with its splitting type on a line.
//!
//! Twists come in two flavours. A *module degree* `d` refers to `ℰ(d)` for
//! the unnormalized kernel bundle, so that `H⁰(ℰ(d)) = ker φ_d` and
//! `H¹(ℰ(d)) = M_d`. A *normalized twist* `t` refers to `ℰ_norm(t)` where
//! `ℰ_norm = ℰ(s)` has `c₁ ∈ {-1, 0}`; the two are related by `d = t + s`.

use std::fmt;

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{scan_range, DegreeCache, GradedMap, TwistSequence};
use crate::linalg::Echelon;
use crate::poly::{restrict_to_line, BinaryForm, LineParam};

/// Random lines tried by [`computed_splitting`] before giving up.
pub const LINE_RESAMPLE_CAP: usize = 8;

/// Chern classes of the kernel bundle `ℰ` and its normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChernData {
    pub c1: i64,
    pub c2: i64,
    pub slope: Ratio<i64>,
    /// The twist `s` making `ℰ(s)` normalized.
    pub s: i64,
    pub c1_norm: i64,
}

impl ChernData {
    pub fn new(c1: i64, c2: i64) -> Self {
        let s = (-c1).div_euclid(2);
        ChernData {
            c1,
            c2,
            slope: Ratio::new(c1, 2),
            s,
            c1_norm: c1 + 2 * s,
        }
    }

    /// Chern data of `ℰ(t)`.
    pub fn twisted(&self, t: i64) -> ChernData {
        ChernData::new(self.c1 + 2 * t, self.c2 + self.c1 * t + t * t)
    }

    /// Chern data of `ℰ_norm = ℰ(s)`.
    pub fn normalized(&self) -> ChernData {
        self.twisted(self.s)
    }
}

/// `c(ℰ) = c(F) / c(G)` truncated at `h²`, from `0 → ℰ → F → G → 0`.
pub fn chern_classes(src: &TwistSequence, tgt: &TwistSequence) -> ChernData {
    let (a, b) = (src.sum(), tgt.sum());
    ChernData::new(b - a, src.e2() - tgt.e2() + b * (b - a))
}

/// `χ(ℰ(t))` by Riemann-Roch for a rank-2 sheaf on the projective plane.
pub fn euler_char(c: &ChernData, t: i64) -> i64 {
    let tw = c.twisted(t);
    let (c1, c2) = (tw.c1, tw.c2);
    2 + (3 * c1 + c1 * c1 - 2 * c2) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    /// Module degree `d`; the normalized twist is `d - s`.
    pub degree: i64,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub shift: i64,
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyTable {
    pub fn at_degree(&self, d: i64) -> Option<&CohomologyRow> {
        self.rows.iter().find(|r| r.degree == d)
    }

    pub fn at_twist(&self, t: i64) -> Option<&CohomologyRow> {
        self.at_degree(t + self.shift)
    }
}

/// Module degrees `[min b_j - 1, a - b - min b_j - 2]`, a window that is
/// closed under the Serre-duality reflection `d ↦ a - b - 3 - d`.
pub fn default_table_range<F: Field>(m: &GradedMap<F>) -> (i64, i64) {
    let (lo, hi) = scan_range(m.source(), m.target());
    (lo - 1, hi + 1)
}

/// `h⁰, h¹, h²` of `ℰ(d)` for module degrees `d` in `range`, cross-checked
/// against Riemann-Roch and Serre duality.
pub fn cohomology_table<F: Field>(
    cache: &DegreeCache<'_, F>,
    c: &ChernData,
    range: (i64, i64),
) -> Result<CohomologyTable> {
    let reflect = -3 - c.c1;
    let mut rows = Vec::new();
    for d in range.0..=range.1 {
        let h0 = cache.kernel_dim(d);
        let h1 = cache.coker_dim(d);
        let h2 = cache.kernel_dim(reflect - d);
        let chi = euler_char(c, d);
        if h0 as i64 - h1 as i64 + h2 as i64 != chi {
            return Err(Error::ConsistencyFailure(format!(
                "degree {d}: h0 - h1 + h2 = {h0} - {h1} + {h2} but chi = {chi}"
            )));
        }
        let dual_h1 = cache.coker_dim(reflect - d);
        if h1 != dual_h1 {
            return Err(Error::ConsistencyFailure(format!(
                "h1 at degree {d} is {h1} but {dual_h1} at the dual degree {}",
                reflect - d
            )));
        }
        rows.push(CohomologyRow {
            degree: d,
            h0,
            h1,
            h2,
        });
    }
    Ok(CohomologyTable { shift: c.s, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable { k: i64 },
}

/// Stability of the normalized bundle `ℰ_norm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BundleClass {
    pub stability: Stability,
    pub c1_norm: i64,
}

impl BundleClass {
    pub fn k(&self) -> Option<i64> {
        match self.stability {
            Stability::Unstable { k } => Some(k),
            _ => None,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self.stability {
            Stability::Stable => "stable",
            Stability::StrictlySemistable => "strictly-semistable",
            Stability::Unstable { .. } => "unstable",
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stability {
            Stability::Unstable { k } => write!(f, "unstable (k = {k}, c1 = {})", self.c1_norm),
            _ => write!(f, "{} (c1 = {})", self.variant_name(), self.c1_norm),
        }
    }
}

/// `h⁰(ℰ_norm(t))`.
fn h0_norm<F: Field>(cache: &DegreeCache<'_, F>, c: &ChernData, t: i64) -> usize {
    cache.kernel_dim(c.s + t)
}

pub fn classify<F: Field>(cache: &DegreeCache<'_, F>, c: &ChernData) -> BundleClass {
    let stability = if h0_norm(cache, c, 0) == 0 {
        Stability::Stable
    } else if c.c1_norm == 0 && h0_norm(cache, c, -1) == 0 {
        Stability::StrictlySemistable
    } else {
        let k = instability_index(cache, c).expect("sections in the threshold twist");
        Stability::Unstable { k }
    };
    BundleClass {
        stability,
        c1_norm: c.c1_norm,
    }
}

/// Largest `j` with `h⁰(ℰ_norm(-j)) ≠ 0`, starting from 1 when `c₁ = 0` and
/// from 0 when `c₁ = -1`. `None` if the bundle is semistable.
pub fn instability_index<F: Field>(cache: &DegreeCache<'_, F>, c: &ChernData) -> Option<i64> {
    let threshold = if c.c1_norm == 0 { 1 } else { 0 };
    if h0_norm(cache, c, -threshold) == 0 {
        return None;
    }
    // Below min a_i the source vanishes, so the scan stops there at the latest.
    let mut j = threshold;
    while h0_norm(cache, c, -j - 1) != 0 {
        j += 1;
    }
    Some(j)
}

/// `ℰ|_L ≅ O(e) ⊕ O(f)` with `e ≤ f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SplittingType {
    pub e: i64,
    pub f: i64,
}

impl SplittingType {
    pub fn new(e: i64, f: i64) -> Self {
        SplittingType {
            e: e.min(f),
            f: e.max(f),
        }
    }

    pub fn shifted(&self, by: i64) -> Self {
        SplittingType::new(self.e + by, self.f + by)
    }

    /// `h⁰(O(e + m) ⊕ O(f + m))` on the projective line.
    pub fn h0(&self, m: i64) -> usize {
        ((self.e + m + 1).max(0) + (self.f + m + 1).max(0)) as usize
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}) + O({})", self.e, self.f)
    }
}

/// Generic splitting type of `ℰ_norm` on a general line.
pub fn predicted_splitting(b: &BundleClass) -> SplittingType {
    match (b.stability, b.c1_norm) {
        (Stability::Unstable { k }, 0) => SplittingType::new(-k, k),
        (Stability::Unstable { k }, _) => SplittingType::new(-k - 1, k),
        (_, 0) => SplittingType::new(0, 0),
        (_, _) => SplittingType::new(-1, 0),
    }
}

/// The graded map restricted to a line: entries become binary forms.
pub struct RestrictedMap<F: Field> {
    field: F,
    source: TwistSequence,
    target: TwistSequence,
    entries: Vec<Vec<Option<BinaryForm<F::Elem>>>>,
}

impl<F: Field> RestrictedMap<F> {
    pub fn new(map: &GradedMap<F>, line: &LineParam<F::Elem>) -> Self {
        let field = map.field();
        let entries = (0..map.target().len())
            .map(|j| {
                (0..map.source().len())
                    .map(|i| map.entry(j, i).map(|p| restrict_to_line(field, p, line)))
                    .collect()
            })
            .collect();
        RestrictedMap {
            field: field.clone(),
            source: map.source().clone(),
            target: map.target().clone(),
            entries,
        }
    }

    /// `h⁰(ℰ|_L(m))`: the kernel of the restricted map in degree `m`.
    pub fn kernel_dim(&self, m: i64) -> usize {
        let field = &self.field;
        let tdims: Vec<usize> = self
            .target
            .twists()
            .iter()
            .map(|&b| (m - b + 1).max(0) as usize)
            .collect();
        let mut offsets = Vec::with_capacity(tdims.len());
        let mut width = 0;
        for &n in &tdims {
            offsets.push(width);
            width += n;
        }
        let mut cols = Vec::new();
        for (i, &a) in self.source.twists().iter().enumerate() {
            if m < a {
                continue;
            }
            for u in 0..=(m - a) as usize {
                let mut v = vec![field.zero(); width];
                for (j, row) in self.entries.iter().enumerate() {
                    if let Some(g) = &row[i] {
                        for (pos, c) in g.coeffs().iter().enumerate() {
                            v[offsets[j] + u + pos] = c.clone();
                        }
                    }
                }
                cols.push(v);
            }
        }
        let n = cols.len();
        n - Echelon::new(field, width, cols).rank()
    }
}

/// Reads off the (unnormalized) splitting type of `ℰ|_L` from the kernel
/// profile of the restricted map, or `None` if the profile is not that of a
/// rank-2 bundle with first Chern class `c₁`.
pub fn splitting_on_line<F: Field>(
    map: &GradedMap<F>,
    line: &LineParam<F::Elem>,
    c: &ChernData,
) -> Option<SplittingType> {
    let restricted = RestrictedMap::new(map, line);
    let start = map.source().min();
    // f ≥ c₁/2, so the first section appears no later than ⌊-c₁/2⌋.
    let stop = (-c.c1).div_euclid(2);
    let first = (start..=stop).find(|&m| restricted.kernel_dim(m) > 0)?;
    let f = -first;
    let e = c.c1 - f;
    if e > f {
        return None;
    }
    let split = SplittingType { e, f };
    let consistent = (first - 1..=-e + 1).all(|m| restricted.kernel_dim(m) == split.h0(m));
    consistent.then_some(split)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComputedSplitting<E> {
    /// Normalized splitting type.
    pub splitting: SplittingType,
    pub line: LineParam<E>,
    pub attempts: usize,
}

/// Normalized splitting type of `ℰ` on a random line, resampling the line
/// until the restricted kernel profile is consistent.
pub fn computed_splitting<F: Field, R: Rng + ?Sized>(
    map: &GradedMap<F>,
    c: &ChernData,
    rng: &mut R,
) -> Result<ComputedSplitting<F::Elem>> {
    for attempt in 1..=LINE_RESAMPLE_CAP {
        let line = LineParam::random(map.field(), rng);
        if let Some(split) = splitting_on_line(map, &line, c) {
            return Ok(ComputedSplitting {
                splitting: split.shifted(c.s),
                line,
                attempts: attempt,
            });
        }
    }
    Err(Error::LineDegenerate {
        attempts: LINE_RESAMPLE_CAP,
        detail: format!("source {}, target {}", map.source(), map.target()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H0Check {
    pub t: i64,
    pub measured: usize,
    pub expected: usize,
}

/// Outcome of comparing `h⁰(ℰ_norm(t))` with `C(k + t + 2, 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H0FormulaReport {
    pub k: i64,
    pub checks: Vec<H0Check>,
    pub mismatches: Vec<H0Check>,
}

impl H0FormulaReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn choose2(n: i64) -> usize {
    if n < 2 {
        0
    } else {
        (n * (n - 1) / 2) as usize
    }
}

/// For an unstable bundle, checks `h⁰(ℰ_norm(t)) = C(k + t + 2, 2)` for
/// `-k-2 ≤ t < k` (`c₁ = 0`) or `-k-2 ≤ t ≤ k` (`c₁ = -1`). `None` otherwise.
pub fn h0_formula_check<F: Field>(
    cache: &DegreeCache<'_, F>,
    b: &BundleClass,
    c: &ChernData,
) -> Option<H0FormulaReport> {
    let k = b.k()?;
    let upper = if b.c1_norm == 0 { k - 1 } else { k };
    let checks: Vec<H0Check> = (-k - 2..=upper)
        .map(|t| H0Check {
            t,
            measured: h0_norm(cache, c, t),
            expected: choose2(k + t + 2),
        })
        .collect();
    let mismatches = checks
        .iter()
        .filter(|c| c.measured != c.expected)
        .cloned()
        .collect();
    Some(H0FormulaReport {
        k,
        checks,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::graded::{ci_instance, random_instance};
    use crate::poly::{HomogPoly, Monomial};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tw(v: &[i64]) -> TwistSequence {
        TwistSequence::new(v.to_vec()).unwrap()
    }

    fn example(src: &[i64], tgt: &[i64], seed: u64) -> GradedMap<PrimeField> {
        random_instance(
            &PrimeField::default(),
            &tw(src),
            &tw(tgt),
            &mut ChaCha8Rng::seed_from_u64(seed),
        )
        .unwrap()
    }

    fn squares() -> GradedMap<PrimeField> {
        let f = PrimeField::default();
        let sq = |v: usize| {
            let mut e = [0; 3];
            e[v] = 2;
            HomogPoly::from_terms(&f, 2, [(Monomial { exps: e }, 1)]).unwrap()
        };
        ci_instance(&f, [sq(0), sq(1), sq(2)]).unwrap()
    }

    /// Oracle for `c₂`: expand `Π(1 - a_i h) · Π(1 - b_j h)^{-1}` as a power
    /// series by repeated multiplication, one linear factor at a time.
    fn c2_by_series(src: &[i64], tgt: &[i64]) -> (i64, i64) {
        let mut series = [1i64, 0, 0];
        let mul = |s: &mut [i64; 3], f: [i64; 3]| {
            *s = [
                s[0] * f[0],
                s[0] * f[1] + s[1] * f[0],
                s[0] * f[2] + s[1] * f[1] + s[2] * f[0],
            ];
        };
        for &a in src {
            mul(&mut series, [1, -a, 0]);
        }
        for &b in tgt {
            // 1 / (1 - b h) = 1 + b h + b² h²
            mul(&mut series, [1, b, b * b]);
        }
        (series[1], series[2])
    }

    #[test]
    fn chern_data_of_examples() {
        let c = chern_classes(&tw(&[7, 2, 2, 2]), &tw(&[1, 0]));
        assert_eq!((c.c1, c.s, c.c1_norm), (-12, 6, 0));
        assert_eq!((c.c1, c.c2), c2_by_series(&[7, 2, 2, 2], &[1, 0]));
        assert_eq!(c.normalized().c2, 6);
        // Normalizing the twisted resolution directly gives the same c₂.
        assert_eq!(c2_by_series(&[1, -4, -4, -4], &[-5, -6]), (0, 6));
        let c = chern_classes(&tw(&[8, 2, 2, 2, 2]), &tw(&[1, 0, 0]));
        assert_eq!((c.c1, c.s, c.c1_norm), (-15, 7, -1));
        assert_eq!((c.c1, c.c2), c2_by_series(&[8, 2, 2, 2, 2], &[1, 0, 0]));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_char(&ChernData::new(0, 0), 0), 2);
        assert_eq!(euler_char(&ChernData::new(-1, 0), 0), 1);
        let c = chern_classes(&tw(&[7, 2, 2, 2]), &tw(&[1, 0]));
        assert_eq!(euler_char(&c.normalized(), -2), -6);
        assert_eq!(euler_char(&c, 4), -6);
    }

    #[test]
    fn first_example_cohomology() {
        let m = example(&[7, 2, 2, 2], &[1, 0], 1);
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        let table = cohomology_table(&cache, &c, default_table_range(&m)).unwrap();
        let row = table.at_degree(4).unwrap();
        assert_eq!((row.h0, row.h1, row.h2), (0, 7, 1));
        assert_eq!(table.at_twist(-2), Some(row));
        // Above the support only h⁰ survives.
        let top = table.rows.last().unwrap();
        assert_eq!((top.h1, top.h2), (0, 0));
        assert_eq!(top.h0 as i64, euler_char(&c, top.degree));
    }

    #[test]
    fn second_example_cohomology() {
        let m = example(&[8, 2, 2, 2, 2], &[1, 0, 0], 2);
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        let table = cohomology_table(&cache, &c, default_table_range(&m)).unwrap();
        assert_eq!(table.at_degree(6).unwrap().h1, 17);
    }

    #[test]
    fn classification_of_examples() {
        let m = example(&[7, 2, 2, 2], &[1, 0], 3);
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        let class = classify(&cache, &c);
        assert_eq!(class.stability, Stability::Unstable { k: 1 });
        assert_eq!(instability_index(&cache, &c), Some(1));
        assert_eq!(predicted_splitting(&class), SplittingType::new(-1, 1));

        let m = example(&[8, 2, 2, 2, 2], &[1, 0, 0], 4);
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        let class = classify(&cache, &c);
        assert_eq!(
            class,
            BundleClass {
                stability: Stability::Unstable { k: 0 },
                c1_norm: -1
            }
        );
        assert_eq!(predicted_splitting(&class), SplittingType::new(-1, 0));
    }

    #[test]
    fn squares_are_stable() {
        let m = squares();
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        assert_eq!(c.s, 3);
        assert_eq!(cache.kernel_dim(3), 0);
        let class = classify(&cache, &c);
        assert_eq!(class.stability, Stability::Stable);
        assert_eq!(instability_index(&cache, &c), None);
        assert_eq!(predicted_splitting(&class), SplittingType::new(0, 0));
        let split = computed_splitting(&m, &c, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(split.splitting, SplittingType::new(0, 0));
    }

    #[test]
    fn index_two_from_two_linear_forms() {
        // (x, y, g) with deg g = 6: the Koszul syzygy between x and y sits in
        // degree 2 = s - 2, and nothing lives in degree 1.
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = HomogPoly::linear(1, 0, 0);
        let y = HomogPoly::linear(0, 1, 0);
        let g = crate::poly::random_homog(&f, 6, &mut rng);
        let m = ci_instance(&f, [x, y, g]).unwrap();
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        assert_eq!((c.s, c.c1_norm), (4, 0));
        assert_eq!(cache.kernel_dim(2), 1);
        assert_eq!(cache.kernel_dim(1), 0);
        let class = classify(&cache, &c);
        assert_eq!(class.k(), Some(2));
        let split = computed_splitting(&m, &c, &mut rng).unwrap();
        assert_eq!(split.splitting, SplittingType::new(-2, 2));
    }

    #[test]
    fn predicted_splitting_table() {
        let pred = |stability, c1_norm| predicted_splitting(&BundleClass { stability, c1_norm });
        assert_eq!(pred(Stability::Stable, 0), SplittingType::new(0, 0));
        assert_eq!(pred(Stability::Stable, -1), SplittingType::new(-1, 0));
        assert_eq!(
            pred(Stability::StrictlySemistable, 0),
            SplittingType::new(0, 0)
        );
        assert_eq!(
            pred(Stability::Unstable { k: 3 }, 0),
            SplittingType::new(-3, 3)
        );
        assert_eq!(
            pred(Stability::Unstable { k: 2 }, -1),
            SplittingType::new(-3, 2)
        );
    }

    #[test]
    fn computed_splitting_of_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = example(&[7, 2, 2, 2], &[1, 0], 5);
        let c = chern_classes(m.source(), m.target());
        let split = computed_splitting(&m, &c, &mut rng).unwrap();
        assert_eq!(split.splitting, SplittingType::new(-1, 1));
        assert_eq!(split.splitting.e + split.splitting.f, c.c1_norm);

        let m = example(&[8, 2, 2, 2, 2], &[1, 0, 0], 6);
        let c = chern_classes(m.source(), m.target());
        let split = computed_splitting(&m, &c, &mut rng).unwrap();
        assert_eq!(split.splitting, SplittingType::new(-1, 0));
    }

    #[test]
    fn h0_formula_on_examples() {
        let m = example(&[7, 2, 2, 2], &[1, 0], 7);
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        let class = classify(&cache, &c);
        let report = h0_formula_check(&cache, &class, &c).unwrap();
        assert!(report.holds(), "{report:?}");
        let at = |t| report.checks.iter().find(|x| x.t == t).unwrap().measured;
        assert_eq!(at(-1), 1);
        assert_eq!(at(-3), 0);
        assert_eq!(report.checks.last().unwrap().t, 0);

        let m = example(&[8, 2, 2, 2, 2], &[1, 0, 0], 8);
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        let class = classify(&cache, &c);
        let report = h0_formula_check(&cache, &class, &c).unwrap();
        assert!(report.holds());
        assert_eq!(
            report.checks.last().unwrap(),
            &H0Check {
                t: 0,
                measured: 1,
                expected: 1
            }
        );

        let stable = BundleClass {
            stability: Stability::Stable,
            c1_norm: 0,
        };
        assert!(h0_formula_check(&cache, &stable, &c).is_none());
    }

    #[test]
    fn h0_jumps_bounded_by_restriction() {
        let m = example(&[7, 2, 2, 2], &[1, 0], 9);
        let cache = DegreeCache::new(&m);
        let line = LineParam::random(m.field(), &mut ChaCha8Rng::seed_from_u64(9));
        let restricted = RestrictedMap::new(&m, &line);
        for d in 0..14 {
            let jump = cache.kernel_dim(d) as i64 - cache.kernel_dim(d - 1) as i64;
            assert!(jump >= 0);
            assert!(jump <= restricted.kernel_dim(d) as i64, "degree {d}");
        }
    }

    #[test]
    fn koszul_of_the_variables_is_stable() {
        let f = PrimeField::default();
        let m = ci_instance(
            &f,
            [
                HomogPoly::linear(1, 0, 0),
                HomogPoly::linear(0, 1, 0),
                HomogPoly::linear(0, 0, 1),
            ],
        )
        .unwrap();
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        assert_eq!((c.c1, c.s, c.c1_norm), (-3, 1, -1));
        assert_eq!(classify(&cache, &c).stability, Stability::Stable);
    }

    #[test]
    fn trivial_bundle_is_strictly_semistable() {
        // R² ⊕ R(-1) → R(-1) with a unit in the last slot: the kernel is O ⊕ O.
        let m = example(&[0, 0, 1], &[1], 10);
        let cache = DegreeCache::new(&m);
        let c = chern_classes(m.source(), m.target());
        assert_eq!((c.c1, c.s), (0, 0));
        assert_eq!(cache.kernel_dim(0), 2);
        let class = classify(&cache, &c);
        assert_eq!(class.stability, Stability::StrictlySemistable);
        assert_eq!(predicted_splitting(&class), SplittingType::new(0, 0));
        let split = computed_splitting(&m, &c, &mut ChaCha8Rng::seed_from_u64(10)).unwrap();
        assert_eq!(split.splitting, SplittingType::new(0, 0));
    }
}
