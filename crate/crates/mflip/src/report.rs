//! JSON analysis report.

use std::collections::BTreeMap;

use mflip_core::complementarity::{self, ComplementarityTriple};
use mflip_core::tripartite::{self, TripartiteDecomposition};
use mflip_core::{bounds, flip, Result};
use serde::Serialize;

use crate::statefile::{Kind, LoadedState};

pub const SCHEMA: &str = "mflip.report/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub dims: Vec<usize>,
    pub kind: Kind,
    /// Entanglement fields come from lower bounds, not exact values.
    pub estimate: bool,
    pub subsystems: Vec<SubsystemReport>,
    pub concurrence_spectrum: Option<SpectrumReport>,
    pub bounds: Option<BoundsReport>,
    pub tripartite: Option<TripartiteReport>,
    pub info_budget: BudgetReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsystemReport {
    pub site: usize,
    pub predictability: f64,
    pub coherence: f64,
    pub mixedness: f64,
    pub single_property_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// `C_(m)^2` keyed by `m`.
    pub per_m: BTreeMap<usize, f64>,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    /// `B^m` keyed by `m`.
    pub per_m: BTreeMap<usize, f64>,
    pub total_sq: f64,
    pub detected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripartiteReport {
    pub e12: f64,
    pub e13: f64,
    pub e23: f64,
    pub e2_total: f64,
    pub e3: f64,
    pub total: f64,
    pub estimate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetReport {
    pub n: usize,
    pub local_info: f64,
    pub entanglement: f64,
    pub residual: f64,
}

impl SubsystemReport {
    fn new(site: usize, t: &ComplementarityTriple) -> Self {
        SubsystemReport {
            site,
            predictability: t.predictability,
            coherence: t.coherence,
            mixedness: t.mixedness,
            single_property_sq: t.single_property_sq,
        }
    }
}

impl From<TripartiteDecomposition> for TripartiteReport {
    fn from(d: TripartiteDecomposition) -> Self {
        TripartiteReport {
            e12: d.e12,
            e13: d.e13,
            e23: d.e23,
            e2_total: d.e2_total,
            e3: d.e3,
            total: d.total,
            estimate: d.estimate,
        }
    }
}

pub fn analyze(state: &LoadedState) -> Result<Report> {
    let dims = state.dims().clone();
    let three_qubits = dims.local() == [2, 2, 2];
    let rho = state.to_density();
    let (kind, spectrum, bound, tri, entanglement) = match state {
        LoadedState::Pure(psi) => {
            let s = flip::concurrence_spectrum(psi);
            let tri = if three_qubits { Some(tripartite::decompose(psi)?.into()) } else { None };
            let total = s.total;
            let spec = SpectrumReport { per_m: s.per_m.into_iter().collect(), total };
            (Kind::Pure, Some(spec), None, tri, total)
        }
        LoadedState::Mixed(rho) => {
            let b = bounds::bounds(rho)?;
            let tri = if three_qubits { Some(tripartite::decompose_mixed(rho)?.into()) } else { None };
            let total_sq = b.total_sq();
            let rep = BoundsReport { per_m: b.per_m.into_iter().collect(), total_sq, detected: b.detected };
            (Kind::Mixed, None, Some(rep), tri, total_sq)
        }
    };
    let budget = complementarity::info_budget(&rho, entanglement)?;
    Ok(Report {
        schema: SCHEMA,
        dims: dims.local().to_vec(),
        kind,
        estimate: kind == Kind::Mixed,
        subsystems: budget.per_subsystem.iter().enumerate().map(|(s, t)| SubsystemReport::new(s, t)).collect(),
        concurrence_spectrum: spectrum,
        bounds: bound,
        tripartite: tri,
        info_budget: BudgetReport {
            n: budget.n,
            local_info: budget.local_info,
            entanglement: budget.entanglement,
            residual: budget.residual,
        },
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
