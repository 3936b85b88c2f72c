//! Multiplication by a linear form on the cokernel `M`, the Weak Lefschetz
//! verdict, and comparison with the injectivity and surjectivity ranges
//! predicted from the stability type of the kernel bundle.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::cohomology::{BundleClass, Stability};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{phi_matrix, target_mult_matrix, DegreeCache, GradedMap, HilbertFunction};
use crate::linalg::{rank, Echelon};
use crate::poly::{monomial_basis, random_homog, HomogPoly, Monomial};

/// Random linear forms drawn by [`generic_profile`] unless told otherwise.
pub const DEFAULT_SAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    /// `×L: M_{d-1} → M_d`.
    pub degree: i64,
    pub dim_prev: usize,
    pub dim_cur: usize,
    pub rank: usize,
    /// Index into [`RankProfile::forms`] of a form reaching `rank`.
    pub form: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankProfile<E> {
    pub entries: Vec<ProfileEntry>,
    pub forms: Vec<HomogPoly<E>>,
}

impl<E> RankProfile<E> {
    pub fn get(&self, d: i64) -> Option<&ProfileEntry> {
        self.entries.iter().find(|e| e.degree == d)
    }
}

/// Degrees `d` for which `M_{d-1}` or `M_d` may be nonzero.
fn profile_degrees(h: &HilbertFunction) -> std::ops::RangeInclusive<i64> {
    match h.top() {
        Some(top) => h.offset()..=top + 1,
        #[allow(clippy::reversed_empty_ranges)]
        None => 1..=0,
    }
}

/// Rank of `×L: M_{d-1} → M_d`, computed on quotient representatives: the
/// free columns of the echelon basis of `im φ_{d-1}` are pushed forward by
/// `L` and reduced modulo `im φ_d`.
fn quotient_mult_rank<F: Field>(
    cache: &DegreeCache<'_, F>,
    form: &HomogPoly<F::Elem>,
    d: i64,
) -> (usize, usize, usize) {
    let map = cache.map();
    let field = map.field();
    let (prev_dim, cur_dim) = (cache.coker_dim(d - 1), cache.coker_dim(d));
    if prev_dim == 0 || cur_dim == 0 {
        return (prev_dim, cur_dim, 0);
    }
    let prev = cache.get(d - 1);
    let cur = cache.get(d);
    let tgt = map.target();
    let prev_offsets = tgt.offsets(d - 1);
    let cur_offsets = tgt.offsets(d);
    let prev_bases: Vec<Vec<Monomial>> = tgt
        .twists()
        .iter()
        .map(|&b| {
            if d > b {
                monomial_basis((d - 1 - b) as usize)
            } else {
                Vec::new()
            }
        })
        .collect();
    let cur_free = cur.image.free_columns();
    let mut position = vec![usize::MAX; cur.target_dim];
    for (k, &c) in cur_free.iter().enumerate() {
        position[c] = k;
    }

    let images: Vec<Vec<F::Elem>> = prev
        .image
        .free_columns()
        .into_iter()
        .map(|coord| {
            let j = prev_offsets
                .iter()
                .rposition(|&o| o <= coord)
                .expect("offset 0");
            let mono = prev_bases[j][coord - prev_offsets[j]];
            let mut v = vec![field.zero(); cur.target_dim];
            for (var, c) in form.terms(field) {
                let slot = &mut v[cur_offsets[j] + mono.times(&var).index()];
                *slot = field.add(slot, c);
            }
            cur.image.reduce(field, &mut v);
            let mut reduced = vec![field.zero(); cur_free.len()];
            for (c, x) in v.into_iter().enumerate() {
                if !field.is_zero(&x) {
                    debug_assert!(position[c] != usize::MAX);
                    reduced[position[c]] = x;
                }
            }
            reduced
        })
        .collect();
    let r = Echelon::new(field, cur_free.len(), images).rank();
    (prev_dim, cur_dim, r)
}

/// `rank [φ_d | L·] - rank φ_d`, straight from the presentation matrices.
pub fn direct_mult_rank<F: Field>(m: &GradedMap<F>, form: &HomogPoly<F::Elem>, d: i64) -> usize {
    let field = m.field();
    let a = phi_matrix(m, d);
    let b = target_mult_matrix(m, form, d);
    rank(field, &a.hconcat(&b)) - rank(field, &a)
}

/// Ranks of `×L` over every degree of the support of `M`.
pub fn mult_rank_profile<F: Field>(
    cache: &DegreeCache<'_, F>,
    h: &HilbertFunction,
    form: &HomogPoly<F::Elem>,
) -> RankProfile<F::Elem> {
    profile_over_forms(cache, h, vec![form.clone()])
}

/// Componentwise maximum of the profiles of several forms. Rank is lower
/// semicontinuous, so the maximum over random forms is the generic rank.
pub fn profile_over_forms<F: Field>(
    cache: &DegreeCache<'_, F>,
    h: &HilbertFunction,
    forms: Vec<HomogPoly<F::Elem>>,
) -> RankProfile<F::Elem> {
    assert!(!forms.is_empty(), "need at least one linear form");
    let entries = profile_degrees(h)
        .map(|d| {
            let mut best: Option<ProfileEntry> = None;
            for (idx, form) in forms.iter().enumerate() {
                let (dim_prev, dim_cur, rank) = quotient_mult_rank(cache, form, d);
                if best.is_none_or(|b| rank > b.rank) {
                    best = Some(ProfileEntry {
                        degree: d,
                        dim_prev,
                        dim_cur,
                        rank,
                        form: idx,
                    });
                }
            }
            best.expect("forms is non-empty")
        })
        .collect();
    RankProfile { entries, forms }
}

/// Profile for `samples` random linear forms.
pub fn generic_profile<F: Field, R: Rng + ?Sized>(
    cache: &DegreeCache<'_, F>,
    h: &HilbertFunction,
    rng: &mut R,
    samples: usize,
) -> RankProfile<F::Elem> {
    let field = cache.map().field();
    let forms = (0..samples.max(1))
        .map(|_| random_homog(field, 1, rng))
        .collect();
    profile_over_forms(cache, h, forms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Injective,
    Surjective,
    Bijective,
    Neither,
}

impl Flag {
    pub fn injective(self) -> bool {
        matches!(self, Flag::Injective | Flag::Bijective)
    }

    pub fn surjective(self) -> bool {
        matches!(self, Flag::Surjective | Flag::Bijective)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flag::Injective => "injective",
            Flag::Surjective => "surjective",
            Flag::Bijective => "bijective",
            Flag::Neither => "neither",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub degree: i64,
    pub dim_prev: usize,
    pub dim_cur: usize,
    pub rank: usize,
    pub flag: Flag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WlpVerdict {
    pub degrees: Vec<DegreeVerdict>,
    pub wlp: bool,
    /// Largest degree up to which every map is injective.
    pub injective_through: Option<i64>,
    /// Smallest degree from which every map is surjective.
    pub first_surjective_degree: Option<i64>,
}

pub fn wlp_verdict<E>(p: &RankProfile<E>) -> WlpVerdict {
    let degrees: Vec<DegreeVerdict> = p
        .entries
        .iter()
        .map(|e| {
            let flag = match (e.rank == e.dim_prev, e.rank == e.dim_cur) {
                (true, true) => Flag::Bijective,
                (true, false) => Flag::Injective,
                (false, true) => Flag::Surjective,
                (false, false) => Flag::Neither,
            };
            DegreeVerdict {
                degree: e.degree,
                dim_prev: e.dim_prev,
                dim_cur: e.dim_cur,
                rank: e.rank,
                flag,
            }
        })
        .collect();
    let wlp = degrees.iter().all(|v| v.flag != Flag::Neither);
    let injective_through = degrees
        .iter()
        .take_while(|v| v.flag.injective())
        .last()
        .map(|v| v.degree);
    let first_surjective_degree = if degrees.is_empty() {
        None
    } else {
        let tail = degrees
            .iter()
            .rev()
            .take_while(|v| v.flag.surjective())
            .count();
        (tail > 0).then(|| degrees[degrees.len() - tail].degree)
    };
    WlpVerdict {
        degrees,
        wlp,
        injective_through,
        first_surjective_degree,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeSource {
    Theorem,
    /// Strictly semistable bundles: ranges obtained from the splitting
    /// `O ⊕ O` via the restriction criteria rather than read off a statement.
    DerivedFromProof,
}

/// Normalized twists `t` where `×L` into degree `t` is claimed injective
/// (`t ≤ inj_max_t`) or surjective (`t ≥ surj_min_t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedRanges {
    pub inj_max_t: i64,
    pub surj_min_t: i64,
    /// Module degree of twist 0.
    pub shift: i64,
    pub source: RangeSource,
}

impl PredictedRanges {
    pub fn inj_max_d(&self) -> i64 {
        self.inj_max_t + self.shift
    }

    pub fn surj_min_d(&self) -> i64 {
        self.surj_min_t + self.shift
    }
}

pub fn theorem_ranges(b: &BundleClass, shift: i64) -> PredictedRanges {
    let (inj_max_t, surj_min_t, source) = match (b.stability, b.c1_norm) {
        (Stability::Stable, 0) => (-1, -1, RangeSource::Theorem),
        (Stability::Stable, _) => (-1, 0, RangeSource::Theorem),
        (Stability::StrictlySemistable, _) => (-1, -1, RangeSource::DerivedFromProof),
        (Stability::Unstable { k }, 0) => (k - 1, -k - 1, RangeSource::Theorem),
        (Stability::Unstable { k }, _) => (k, -k - 1, RangeSource::Theorem),
    };
    PredictedRanges {
        inj_max_t,
        surj_min_t,
        shift,
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Concordance {
    pub checked_injective: usize,
    pub checked_surjective: usize,
    pub discrepancies: Vec<String>,
}

impl Concordance {
    pub fn concordant(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares measured flags with the predicted ranges. A measured rank that
/// contradicts a claim is an error; gaps in coverage, truncated profiles and
/// a failed WLP are listed as discrepancies.
pub fn verify_theorem(v: &WlpVerdict, r: &PredictedRanges) -> Result<Concordance> {
    let mut out = Concordance {
        checked_injective: 0,
        checked_surjective: 0,
        discrepancies: Vec::new(),
    };
    for dv in &v.degrees {
        let d = dv.degree;
        let claims_inj = d <= r.inj_max_d();
        let claims_surj = d >= r.surj_min_d();
        if claims_inj {
            out.checked_injective += 1;
            if !dv.flag.injective() {
                return Err(Error::TheoremViolation(format!(
                    "x L: M_{} -> M_{d} has rank {} < {} but is predicted injective (d <= {})",
                    d - 1,
                    dv.rank,
                    dv.dim_prev,
                    r.inj_max_d()
                )));
            }
        }
        if claims_surj {
            out.checked_surjective += 1;
            if !dv.flag.surjective() {
                return Err(Error::TheoremViolation(format!(
                    "x L: M_{} -> M_{d} has rank {} < {} but is predicted surjective (d >= {})",
                    d - 1,
                    dv.rank,
                    dv.dim_cur,
                    r.surj_min_d()
                )));
            }
        }
        if !claims_inj && !claims_surj {
            out.discrepancies
                .push(format!("degree {d} is covered by neither predicted range"));
        }
    }
    if let (Some(first), Some(last)) = (v.degrees.first(), v.degrees.last()) {
        if first.dim_prev != 0 {
            out.discrepancies.push(format!(
                "profile starts at degree {} but M_{} is nonzero",
                first.degree,
                first.degree - 1
            ));
        }
        if last.dim_cur != 0 {
            out.discrepancies.push(format!(
                "profile ends at degree {} but M_{} is nonzero",
                last.degree, last.degree
            ));
        }
        for pair in v.degrees.windows(2) {
            if pair[1].degree != pair[0].degree + 1 || pair[1].dim_prev != pair[0].dim_cur {
                out.discrepancies.push(format!(
                    "profile skips from degree {} to {}",
                    pair[0].degree, pair[1].degree
                ));
            }
        }
    }
    if !v.wlp {
        out.discrepancies
            .push("some multiplication map has neither full rank nor full corank".into());
    }
    Ok(out)
}

/// Non-decreasing, then non-increasing.
pub fn unimodality(h: &HilbertFunction) -> bool {
    let dims = h.dims();
    let peak = dims.windows(2).take_while(|w| w[0] <= w[1]).count();
    dims[peak..].windows(2).all(|w| w[0] >= w[1])
}
