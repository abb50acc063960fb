use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cohomology::{spectrum_from_table, TwistRange};
use crate::error::{Error, Result};
use crate::invariants::{kernel_invariants, ChernClasses};
use crate::spectrum::{enumerate_spectra, s_upper_bound, ChainUpParam, Regime, Spectrum, SpectrumWithS};

use super::catalog::{Catalog, ComponentDescriptor, Family, VerificationLevel};

/// Outcome of recomputing a stored spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    /// Recomputed value equals the stored one.
    Verified,
    /// No construction recipe; the stored value is taken as given.
    Stored,
    Mismatch { recomputed: SpectrumWithS },
    Failed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    pub family: Family,
    pub dimension: i64,
    pub spectrum: Spectrum,
    pub s: i64,
    pub level: VerificationLevel,
    #[serde(flatten)]
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub moduli: ChernClasses,
    pub rows: Vec<ReportRow>,
}

impl ComponentReport {
    /// Fails on the first row whose recomputation disagreed or broke.
    pub fn ensure_verified(&self) -> Result<()> {
        for row in &self.rows {
            let reason = match &row.status {
                RowStatus::Verified | RowStatus::Stored => continue,
                RowStatus::Mismatch { recomputed } => format!(
                    "stored {} s={} but construction gives {recomputed}",
                    row.spectrum, row.s
                ),
                RowStatus::Failed { reason } => reason.clone(),
            };
            return Err(Error::Verification {
                component: row.name.clone(),
                reason,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Component | Dimension | General Spectrum | s | Level | Check |\n|---|---|---|---|---|---|\n");
        for r in &self.rows {
            let check = match &r.status {
                RowStatus::Verified => "verified".to_string(),
                RowStatus::Stored => "stored".to_string(),
                RowStatus::Mismatch { recomputed } => format!("MISMATCH: {recomputed}"),
                RowStatus::Failed { reason } => format!("FAILED: {reason}"),
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                r.name, r.dimension, r.spectrum, r.s, r.level, check
            );
        }
        out
    }
}

/// Twist range wide enough for the inversion of any spectrum of this class.
pub fn verification_range(cc: &ChernClasses) -> TwistRange {
    let c2 = cc.c2().max(1);
    TwistRange::new(-3 * c2 - 8, 2 * c2 + 4).expect("nonempty range")
}

/// Recomputes the spectrum of a component from its construction.
pub fn recompute(component: &ComponentDescriptor) -> Option<Result<SpectrumWithS>> {
    let construction = component.construction.as_ref()?;
    let cc = component.moduli;
    Some(
        construction
            .table(verification_range(&cc))
            .and_then(|t| spectrum_from_table(&t, &cc.splitting_type())),
    )
}

/// Table 1 / Table 6 style report, recomputing every spectrum that has a recipe.
pub fn component_report(catalog: &Catalog, moduli: &ChernClasses) -> ComponentReport {
    let rows = catalog
        .for_moduli(moduli)
        .into_iter()
        .map(|c| {
            let status = match recompute(c) {
                None => RowStatus::Stored,
                Some(Ok(sw)) if sw == c.spectrum_with_s() => RowStatus::Verified,
                Some(Ok(sw)) => RowStatus::Mismatch { recomputed: sw },
                Some(Err(e)) => RowStatus::Failed { reason: e.to_string() },
            };
            ReportRow {
                name: c.name.clone(),
                family: c.family,
                dimension: c.dimension,
                spectrum: c.spectrum.clone(),
                s: c.s,
                level: c.verification_level(),
                status,
            }
        })
        .collect();
    ComponentReport { moduli: *moduli, rows }
}

/// Two distinct components whose generic sheaves share a spectrum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RaoPair {
    pub first: String,
    pub second: String,
    pub spectrum: Spectrum,
    pub s_first: i64,
    pub s_second: i64,
}

/// Pairs of components with equal spectrum values (s may differ), sorted by name.
pub fn rao_pairs(catalog: &Catalog, moduli: &ChernClasses) -> Vec<RaoPair> {
    let mut comps = catalog.for_moduli(moduli);
    comps.sort_by(|a, b| a.name.cmp(&b.name));
    let mut out = Vec::new();
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            if a.spectrum == b.spectrum {
                out.push(RaoPair {
                    first: a.name.clone(),
                    second: b.name.clone(),
                    spectrum: a.spectrum.clone(),
                    s_first: a.s,
                    s_second: b.s,
                });
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub moduli: ChernClasses,
    pub candidates: Vec<SpectrumWithS>,
    /// Candidates no catalog component realizes.
    pub missing: Vec<Spectrum>,
    /// Candidates absent from the printed list, if the catalog has one.
    pub extra_candidates: Option<Vec<Spectrum>>,
}

/// Compares the enumerated candidates with the catalog and the printed list.
///
/// Fails if a catalog spectrum is not among the candidates: then either the
/// enumerator or the catalog is wrong.
pub fn realizability_gap(catalog: &Catalog, cc: &ChernClasses, p: ChainUpParam) -> Result<GapReport> {
    let candidates = enumerate_spectra(cc, p)?;
    let comps = catalog.for_moduli(cc);
    for c in &comps {
        if !candidates.iter().any(|sw| sw.spectrum == c.spectrum) {
            return Err(Error::Verification {
                component: c.name.clone(),
                reason: format!("spectrum {} is not among the enumerated candidates", c.spectrum),
            });
        }
    }
    let missing = candidates
        .iter()
        .filter(|sw| !comps.iter().any(|c| c.spectrum == sw.spectrum))
        .map(|sw| sw.spectrum.clone())
        .collect();
    let extra_candidates = catalog.printed_candidates(cc).map(|printed| {
        candidates
            .iter()
            .filter(|sw| !printed.contains(&sw.spectrum))
            .map(|sw| sw.spectrum.clone())
            .collect()
    });
    Ok(GapReport {
        moduli: *cc,
        candidates,
        missing,
        extra_candidates,
    })
}

/// A kernel of a reflexive sheaf onto points, checked against the
/// zero-dimensional bound on s.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeExample {
    pub label: String,
    pub reflexive: ChernClasses,
    pub points: u32,
    pub moduli: ChernClasses,
    pub s: i64,
    /// Candidates of the kernel's class with this s; exactly one in every
    /// example below.
    pub spectra: Vec<Spectrum>,
    pub zero_dimensional_bound: i64,
    pub violates_bound: bool,
}

impl SlopeExample {
    pub fn spectrum(&self) -> Option<&Spectrum> {
        match self.spectra.as_slice() {
            [one] => Some(one),
            _ => None,
        }
    }
}

fn slope_example(label: &str, reflexive: ChernClasses, points: u32) -> Result<SlopeExample> {
    let (moduli, s) = kernel_invariants(&reflexive, points)?;
    let spectra = enumerate_spectra(&moduli, ChainUpParam::Unbounded)?
        .into_iter()
        .filter(|sw| sw.s == s)
        .map(|sw| sw.spectrum)
        .collect();
    let bound = s_upper_bound(moduli.e(), moduli.c2(), Regime::ZeroDimensional)?;
    Ok(SlopeExample {
        label: label.to_string(),
        reflexive,
        points,
        moduli,
        s,
        spectra,
        zero_dimensional_bound: bound,
        violates_bound: s > bound,
    })
}

/// The two slope-semistable kernels with gap spectra, plus a realized control.
pub fn check_slope_examples() -> Result<Vec<SlopeExample>> {
    let cc = |e, c2, c3| ChernClasses::new(e, c2, c3);
    Ok(vec![
        slope_example("E = ker(F -> O_S), F in R(0,3,12), 6 points", cc(0, 3, 12)?, 6)?,
        slope_example("E' = ker(F' -> O_S'), F' in R(0,3,10), 5 points", cc(0, 3, 10)?, 5)?,
        slope_example("control: ker(F -> O_S), F in R(-1,2,4), 2 points", cc(-1, 2, 4)?, 2)?,
    ])
}

pub fn slope_examples_markdown(rows: &[SlopeExample]) -> String {
    let mut out = String::from("| Sheaf | Class | s | Spectrum | Bound | Gieseker-semistable possible |\n|---|---|---|---|---|---|\n");
    for r in rows {
        let spectrum = r
            .spectra
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" or ");
        let verdict = if r.violates_bound { "no (not Gieseker-semistable)" } else { "yes" };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.label, r.moduli, r.s, spectrum, r.zero_dimensional_bound, verdict
        );
    }
    out
}
