//! Machine- and human-readable analysis reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::cohomology::H0FormulaReport;
use crate::error::{Error, Result};
use crate::lefschetz::{Concordance, Flag, RangeSource};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceInfo {
    pub field: String,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub explicit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertInfo {
    pub offset: i64,
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChernInfo {
    pub c1: i64,
    pub c2: i64,
    pub s: i64,
    pub c1_norm: i64,
    pub c2_norm: i64,
    pub slope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub variant: String,
    pub k: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplittingInfo {
    pub predicted: [i64; 2],
    pub computed: [i64; 2],
    pub line_attempts: usize,
}

/// `[d, dim M_{d-1}, dim M_d, rank, flag]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileRow(pub i64, pub usize, pub usize, pub usize, pub Flag);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RangesInfo {
    pub inj_max_d: i64,
    pub surj_min_d: i64,
    pub inj_max_t: i64,
    pub surj_min_t: i64,
    pub source: RangeSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictInfo {
    pub injective_through: Option<i64>,
    pub surjective_from: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedInfo {
    pub seed: u64,
    pub samples: usize,
    /// Coefficients of `x, y, z` in each sampled linear form.
    pub forms: Vec<[Value; 3]>,
    /// Two points spanning the line used for the splitting type.
    pub line: [[Value; 3]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub instance: InstanceInfo,
    pub hilbert: HilbertInfo,
    pub chern: ChernInfo,
    pub class: ClassInfo,
    pub splitting: SplittingInfo,
    /// `[t, h0, h1, h2]` for the normalized twist `t = d - s`.
    pub cohomology: Vec<[i64; 4]>,
    pub profile: Vec<ProfileRow>,
    pub ranges: RangesInfo,
    pub verdict: VerdictInfo,
    pub wlp: bool,
    pub unimodal: bool,
    pub concordance: Concordance,
    pub h0_formula: Option<H0FormulaReport>,
    pub violations: Vec<String>,
    pub seeds: SeedInfo,
    /// Wall-clock milliseconds per stage. Left out of JSON unless asked for,
    /// so that reports stay byte-identical between runs.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl Report {
    /// `Err(TheoremViolation)` if any expected property failed.
    pub fn check(&self) -> Result<()> {
        if self.violations.is_empty() {
            Ok(())
        } else {
            Err(Error::TheoremViolation(self.violations.join("; ")))
        }
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if timings {
            let t: serde_json::Map<String, Value> = self
                .timings
                .iter()
                .map(|(k, ms)| (k.clone(), Value::from(*ms)))
                .collect();
            v["timings"] = Value::Object(t);
        }
        v
    }

    pub fn to_json_string(&self, timings: bool) -> String {
        serde_json::to_string_pretty(&self.to_json(timings)).expect("report serializes")
    }

    pub fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        let i = &self.instance;
        let list = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(
            out,
            "instance   F = ({}), G = ({}) over {}{}",
            list(&i.source),
            list(&i.target),
            i.field,
            if i.explicit { ", explicit entries" } else { "" }
        );
        let h = &self.hilbert;
        let dims = h
            .dims
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "hilbert    ({dims}) from degree {}", h.offset);
        let c = &self.chern;
        let _ = writeln!(
            out,
            "chern      c1 = {}, c2 = {}, slope {}; s = {}, normalized c1 = {}, c2 = {}",
            c.c1, c.c2, c.slope, c.s, c.c1_norm, c.c2_norm
        );
        let _ = match self.class.k {
            Some(k) => writeln!(out, "class      {} with k = {k}", self.class.variant),
            None => writeln!(out, "class      {}", self.class.variant),
        };
        let sp = &self.splitting;
        let _ = writeln!(
            out,
            "splitting  predicted ({}, {}), computed ({}, {}) after {} line(s)",
            sp.predicted[0], sp.predicted[1], sp.computed[0], sp.computed[1], sp.line_attempts
        );

        let _ = writeln!(
            out,
            "\ncohomology of E_norm(t)\n     t     d    h0    h1    h2"
        );
        for row in &self.cohomology {
            let _ = writeln!(
                out,
                "{:>6}{:>6}{:>6}{:>6}{:>6}",
                row[0],
                row[0] + c.s,
                row[1],
                row[2],
                row[3]
            );
        }

        let _ = writeln!(
            out,
            "\nx L : M_(d-1) -> M_d\n     d     t  dims        rank  map"
        );
        for r in &self.profile {
            let _ = writeln!(
                out,
                "{:>6}{:>6}  {:>4} -> {:<4}{:>6}  {}",
                r.0,
                r.0 - c.s,
                r.1,
                r.2,
                r.3,
                r.4
            );
        }

        let rg = &self.ranges;
        let src = match rg.source {
            RangeSource::Theorem => "",
            RangeSource::DerivedFromProof => " (derived from proof, not the theorem statement)",
        };
        let _ = writeln!(
            out,
            "\npredicted  injective for d <= {} (t <= {}), surjective for d >= {} (t >= {}){src}",
            rg.inj_max_d, rg.inj_max_t, rg.surj_min_d, rg.surj_min_t
        );
        let opt = |v: Option<i64>| v.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(
            out,
            "measured   injective through d = {}, surjective from d = {}",
            opt(self.verdict.injective_through),
            opt(self.verdict.surjective_from)
        );
        let _ = writeln!(out, "wlp        {}", self.wlp);
        let _ = writeln!(out, "unimodal   {}", self.unimodal);
        if let Some(h0) = &self.h0_formula {
            let _ = writeln!(
                out,
                "h0 formula {} of {} twists match",
                h0.checks.len() - h0.mismatches.len(),
                h0.checks.len()
            );
        }
        for d in &self.concordance.discrepancies {
            let _ = writeln!(out, "note       {d}");
        }
        for v in &self.violations {
            let _ = writeln!(out, "VIOLATION  {v}");
        }
        let _ = writeln!(
            out,
            "seed       {} ({} linear forms)",
            self.seeds.seed, self.seeds.samples
        );
        if timings {
            for (stage, ms) in &self.timings {
                let _ = writeln!(out, "time       {stage:<12}{ms:>10.1} ms");
            }
        }
        out
    }
}
