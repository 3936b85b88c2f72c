//! End-to-end analysis of one instance, complete intersections, and random
//! corpora.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{
    chern_classes, classify, cohomology_table, computed_splitting, default_table_range,
    h0_formula_check, predicted_splitting,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::graded::{
    expected_hilbert, free_dim, generation_failed, random_map, scan_range, DegreeCache, GradedMap,
    TwistSequence, GENERATION_RETRY_CAP,
};
use crate::instance::Instance;
use crate::lefschetz::{generic_profile, theorem_ranges, unimodality, verify_theorem, wlp_verdict};
use crate::report::*;

/// Environment variable capping the worker threads used by [`fuzz`].
pub const THREADS_ENV: &str = "LEFSCHETZ_THREADS";

struct Stopwatch {
    last: Instant,
    stages: Vec<(String, f64)>,
}

impl Stopwatch {
    fn new() -> Self {
        Stopwatch {
            last: Instant::now(),
            stages: Vec::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        let ms = (now - self.last).as_secs_f64() * 1e3;
        self.stages
            .push((stage.to_string(), (ms * 1e3).round() / 1e3));
        self.last = now;
    }
}

/// Runs the full pipeline. Failed expectations (WLP, splitting type,
/// unimodality, the section count of an unstable bundle, range
/// contradictions) become a [`Error::TheoremViolation`].
pub fn analyze(inst: &Instance) -> Result<Report> {
    let report = analyze_unchecked(inst)?;
    report.check()?;
    Ok(report)
}

/// Like [`analyze`], but failed expectations are only listed in
/// [`Report::violations`].
pub fn analyze_unchecked(inst: &Instance) -> Result<Report> {
    inst.validate()?;
    match inst.field {
        FieldSpec::Prime { p } => analyze_over(&PrimeField::new(p)?, inst),
        FieldSpec::Rationals => analyze_over(&Rationals, inst),
    }
}

fn analyze_over<F: Field>(field: &F, inst: &Instance) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed);
    if inst.entries.is_some() {
        let mut clock = Stopwatch::new();
        let map = inst.build_map(field, &mut rng)?;
        clock.lap("generate");
        return analyze_map(&map, inst, &mut rng, clock);
    }
    // Generic entries: a draw without finite length is redrawn, reusing the
    // Hilbert function computation as the test.
    let (src, tgt) = inst.twists()?;
    let mut last = String::new();
    for _ in 0..GENERATION_RETRY_CAP {
        let mut clock = Stopwatch::new();
        let map = random_map(field, &src, &tgt, &mut rng)?;
        clock.lap("generate");
        match analyze_map(&map, inst, &mut rng, clock) {
            Err(Error::NotFiniteLength(e)) => last = e,
            other => return other,
        }
    }
    Err(generation_failed(&src, &tgt, &last))
}

fn analyze_map<F: Field>(
    map: &GradedMap<F>,
    inst: &Instance,
    rng: &mut ChaCha8Rng,
    mut clock: Stopwatch,
) -> Result<Report> {
    let field = map.field();
    let cache = DegreeCache::new(map);
    let h = cache.hilbert(inst.max_degree)?;
    clock.lap("hilbert");

    let c = chern_classes(map.source(), map.target());
    let cn = c.normalized();
    let table = cohomology_table(&cache, &c, default_table_range(map))?;
    clock.lap("cohomology");

    let class = classify(&cache, &c);
    let h0_formula = h0_formula_check(&cache, &class, &c);
    let predicted = predicted_splitting(&class);
    let computed = computed_splitting(map, &c, rng)?;
    clock.lap("splitting");

    let profile = generic_profile(&cache, &h, rng, inst.samples);
    clock.lap("profile");

    let verdict = wlp_verdict(&profile);
    let ranges = theorem_ranges(&class, c.s);
    let unimodal = unimodality(&h);

    let mut violations = Vec::new();
    let concordance = match verify_theorem(&verdict, &ranges) {
        Ok(conc) => conc,
        Err(e) => {
            violations.push(e.to_string());
            crate::lefschetz::Concordance {
                checked_injective: 0,
                checked_surjective: 0,
                discrepancies: Vec::new(),
            }
        }
    };
    if !verdict.wlp {
        let bad: Vec<String> = verdict
            .degrees
            .iter()
            .filter(|v| !v.flag.injective() && !v.flag.surjective())
            .map(|v| v.degree.to_string())
            .collect();
        violations.push(format!(
            "x L has neither full rank nor corank in degrees {}",
            bad.join(",")
        ));
    }
    if computed.splitting != predicted {
        violations.push(format!(
            "splitting on a line is {} but the classification predicts {}",
            computed.splitting, predicted
        ));
    }
    if predicted.e + predicted.f != c.c1_norm {
        violations.push(format!(
            "splitting {predicted} does not add up to c1 = {}",
            c.c1_norm
        ));
    }
    if !unimodal {
        violations.push("Hilbert function is not unimodal".into());
    }
    if let Some(rep) = h0_formula.as_ref().filter(|r| !r.holds()) {
        let list: Vec<String> = rep
            .mismatches
            .iter()
            .map(|m| format!("t={} has {} (expected {})", m.t, m.measured, m.expected))
            .collect();
        violations.push(format!("h0 of the normalized bundle: {}", list.join(", ")));
    }
    clock.lap("verify");

    let json3 =
        |v: &[F::Elem]| -> [serde_json::Value; 3] { std::array::from_fn(|i| field.to_json(&v[i])) };
    Ok(Report {
        instance: InstanceInfo {
            field: field.spec().to_string(),
            source: map.source().twists().to_vec(),
            target: map.target().twists().to_vec(),
            explicit: inst.entries.is_some(),
        },
        hilbert: HilbertInfo {
            offset: h.offset(),
            dims: h.dims().to_vec(),
        },
        chern: ChernInfo {
            c1: c.c1,
            c2: c.c2,
            s: c.s,
            c1_norm: cn.c1,
            c2_norm: cn.c2,
            slope: c.slope.to_string(),
        },
        class: ClassInfo {
            variant: class.variant_name().to_string(),
            k: class.k(),
        },
        splitting: SplittingInfo {
            predicted: [predicted.e, predicted.f],
            computed: [computed.splitting.e, computed.splitting.f],
            line_attempts: computed.attempts,
        },
        cohomology: table
            .rows
            .iter()
            .map(|r| [r.degree - c.s, r.h0 as i64, r.h1 as i64, r.h2 as i64])
            .collect(),
        profile: verdict
            .degrees
            .iter()
            .map(|v| ProfileRow(v.degree, v.dim_prev, v.dim_cur, v.rank, v.flag))
            .collect(),
        ranges: RangesInfo {
            inj_max_d: ranges.inj_max_d(),
            surj_min_d: ranges.surj_min_d(),
            inj_max_t: ranges.inj_max_t,
            surj_min_t: ranges.surj_min_t,
            source: ranges.source,
        },
        verdict: VerdictInfo {
            injective_through: verdict.injective_through,
            surjective_from: verdict.first_surjective_degree,
        },
        wlp: verdict.wlp,
        unimodal,
        concordance,
        h0_formula,
        violations,
        seeds: SeedInfo {
            seed: inst.seed,
            samples: profile.forms.len(),
            forms: profile.forms.iter().map(|f| json3(f.coeffs())).collect(),
            line: [json3(&computed.line.p0), json3(&computed.line.p1)],
        },
        timings: clock.stages,
    })
}

/// `R/(f_1, f_2, f_3)` for random forms of the given degrees.
pub fn ci_instance_spec(degrees: [i64; 3], seed: u64, field: FieldSpec) -> Result<Instance> {
    if let Some(d) = degrees.iter().find(|&&d| d < 1) {
        return Err(Error::Degree(format!(
            "complete-intersection degrees must be >= 1, got {d}"
        )));
    }
    let mut inst = Instance::generic(degrees.to_vec(), vec![0], seed);
    inst.field = field;
    Ok(inst)
}

/// Analyzes a complete intersection of three random forms. Non-regular
/// draws are redrawn a bounded number of times.
pub fn ci_mode(degrees: [i64; 3], seed: u64, field: FieldSpec) -> Result<Report> {
    analyze(&ci_instance_spec(degrees, seed, field)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzConfig {
    pub count: usize,
    pub max_n: usize,
    pub max_twist: i64,
    pub seed: u64,
    pub samples: usize,
    /// Upper bound on [`elimination_cost`] for generated shapes.
    pub budget: u64,
}

/// Shapes above this estimated cost are redrawn by default.
pub const DEFAULT_FUZZ_BUDGET: u64 = 50_000_000_000;

/// Draws of a shape before giving up on the bounds.
const SHAPE_DRAW_CAP: usize = 10_000;

impl FuzzConfig {
    pub fn new(count: usize, max_n: usize, max_twist: i64, seed: u64) -> Self {
        FuzzConfig {
            count,
            max_n,
            max_twist,
            seed,
            samples: crate::lefschetz::DEFAULT_SAMPLES,
            budget: DEFAULT_FUZZ_BUDGET,
        }
    }
}

/// Rough operation count for eliminating every degree the analysis touches.
pub fn elimination_cost(src: &TwistSequence, tgt: &TwistSequence) -> u64 {
    let (lo, hi) = scan_range(src, tgt);
    (lo - 1..=hi + 1)
        .map(|d| {
            let (r, c) = (free_dim(src, d) as u64, free_dim(tgt, d) as u64);
            r * c * r.min(c)
        })
        .sum()
}

/// One random shape: `n` uniform in `1..=max_n`, target twists uniform in
/// `0..=max_twist`, source twists uniform between the largest target twist
/// and `max_twist`. Every entry then has non-negative degree, which makes a
/// generic map drop rank only in codimension three. Shapes with a zero
/// cokernel or a cost above the budget are redrawn.
pub fn random_shape<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &FuzzConfig,
) -> Result<(Vec<i64>, Vec<i64>)> {
    if cfg.max_n == 0 || cfg.max_twist < 1 {
        return Err(Error::Shape(format!(
            "fuzz bounds need max-n >= 1 and max-twist >= 1, got {} and {}",
            cfg.max_n, cfg.max_twist
        )));
    }
    for _ in 0..SHAPE_DRAW_CAP {
        let n = rng.gen_range(1..=cfg.max_n);
        let mut target: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=cfg.max_twist)).collect();
        let top = *target.iter().max().expect("n >= 1");
        let mut source: Vec<i64> = (0..n + 2)
            .map(|_| rng.gen_range(top..=cfg.max_twist))
            .collect();
        source.sort_unstable_by(|a, b| b.cmp(a));
        target.sort_unstable_by(|a, b| b.cmp(a));
        let (src, tgt) = (
            TwistSequence::new(source.clone())?,
            TwistSequence::new(target.clone())?,
        );
        let (lo, hi) = scan_range(&src, &tgt);
        if (lo..=hi).all(|d| expected_hilbert(&src, &tgt, d) == 0) {
            continue;
        }
        if elimination_cost(&src, &tgt) > cfg.budget {
            continue;
        }
        return Ok((source, target));
    }
    Err(Error::GenerationFailed {
        attempts: SHAPE_DRAW_CAP,
        detail: format!(
            "no shape with a nonzero cokernel within budget {} for max-n {} and max-twist {}",
            cfg.budget, cfg.max_n, cfg.max_twist
        ),
    })
}

/// The instances a fuzz run analyzes, fixed by the configuration alone.
pub fn fuzz_corpus(cfg: &FuzzConfig) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.count)
        .map(|_| {
            let (source, target) = random_shape(&mut rng, cfg)?;
            let mut inst = Instance::generic(source, target, rng.gen());
            inst.samples = cfg.samples;
            Ok(inst)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzCase {
    pub index: usize,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub seed: u64,
    pub class: Option<String>,
    pub error: Option<String>,
    #[serde(skip)]
    pub exit_code: i32,
    #[serde(skip)]
    pub report: Option<Report>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub wlp: usize,
    pub splitting_concordant: usize,
    pub unimodal: usize,
    pub classes: BTreeMap<String, usize>,
    pub cases: Vec<FuzzCase>,
}

impl FuzzSummary {
    pub fn success(&self) -> bool {
        self.failed == 0
    }

    /// Largest exit code among the failed cases.
    pub fn exit_code(&self) -> i32 {
        self.cases.iter().map(|c| c.exit_code).max().unwrap_or(0)
    }
}

fn class_label(r: &Report) -> String {
    match r.class.k {
        Some(k) => format!("{} k={k} c1={}", r.class.variant, r.chern.c1_norm),
        None => format!("{} c1={}", r.class.variant, r.chern.c1_norm),
    }
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            builder = builder.num_threads(n);
        }
    }
    builder
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
}

/// Analyzes a random corpus. Per-instance errors are collected, not raised.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary> {
    let corpus = fuzz_corpus(cfg)?;
    let cases: Vec<FuzzCase> = worker_pool()?.install(|| {
        corpus
            .par_iter()
            .enumerate()
            .map(|(index, inst)| {
                let (class, error, exit_code, report) = match analyze_unchecked(inst) {
                    Ok(r) => match r.check() {
                        Ok(()) => (Some(class_label(&r)), None, 0, Some(r)),
                        Err(e) => (
                            Some(class_label(&r)),
                            Some(e.to_string()),
                            e.exit_code(),
                            Some(r),
                        ),
                    },
                    Err(e) => (None, Some(e.to_string()), e.exit_code(), None),
                };
                FuzzCase {
                    index,
                    source: inst.source.clone(),
                    target: inst.target.clone(),
                    seed: inst.seed,
                    class,
                    error,
                    exit_code,
                    report,
                }
            })
            .collect()
    });
    let mut summary = FuzzSummary {
        config: cfg.clone(),
        total: cases.len(),
        passed: 0,
        failed: 0,
        wlp: 0,
        splitting_concordant: 0,
        unimodal: 0,
        classes: BTreeMap::new(),
        cases: Vec::new(),
    };
    for case in &cases {
        if case.error.is_some() {
            summary.failed += 1;
        } else {
            summary.passed += 1;
        }
        if let Some(r) = &case.report {
            summary.wlp += r.wlp as usize;
            summary.unimodal += r.unimodal as usize;
            summary.splitting_concordant +=
                (r.splitting.predicted == r.splitting.computed) as usize;
            *summary.classes.entry(class_label(r)).or_default() += 1;
        }
    }
    summary.cases = cases;
    Ok(summary)
}
