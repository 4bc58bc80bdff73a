//! Three-stage certified construction of induced subgraphs with many
//! distinct sizes.
//!
//! Stage one samples a vertex set `U` whose induced edge count is pinned
//! near a target and carves a witness pool `W` with distinct, tightly
//! windowed degrees into `U`. Stage two treats those degrees as vertex
//! weights and manufactures certificates of distinct weighted size on the
//! pool. Stage three repeats the first two stages across an adaptive ladder
//! of edge-count targets and stitches the per-scale certificates into one
//! family whose absolute sizes are pairwise distinct — every claim is
//! re-verified by exact recount before anything is returned.

mod step1;
mod step2;
mod step3;

pub use step1::{degree_graph, step1_build, turan_independent_set, Step1Witness};
pub use step2::{compatible, mu_expected, step2_build, Step2Plan, VertexType};
pub use step3::{certify, step3_stitch, CertifyReport, ScaleFamily, ScaleRecord, StitchOutcome};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Tuning knobs for the construction pipeline.
///
/// The defaults are desk-scale stand-ins for the asymptotic constants: they
/// are chosen so the pipeline succeeds on dense random graphs from a few
/// hundred vertices up, not so the bounds are tight as n → ∞.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineParams {
    /// Diversity exponent δ: near-twin allowances are floor(n^δ) and the
    /// degree-concentration tolerance is n^{1/2+δ}/2.
    pub delta: f64,
    /// Diversity constant c. Stitching probes downward from this value until
    /// the input graph passes the diversity check.
    pub c: f64,
    /// The stage-one degree window aims for ⌈√n · w1_mult⌉ vertices.
    pub w1_mult: f64,
    /// Accepted deviation of e(G[U]) from the target: slack_coeff · n^{3/2}.
    pub slack_coeff: f64,
    /// Random draws allowed per stage-one invocation.
    pub retry_budget: u64,
    /// Random draws allowed for the bipartite diversity split.
    pub split_budget: u64,
    /// Feasible edge-count targets span [m_lo · e(G), m_hi · e(G)].
    pub m_lo: f64,
    pub m_hi: f64,
    /// Index rectangle: k ∈ [⌈m′/k_lo_div⌉, ⌈m′/k_hi_div⌉] and
    /// i ∈ [⌈m′/i_lo_div⌉, ⌈m′/i_hi_div⌉] ∩ {i ≤ k}.
    pub k_lo_div: u64,
    pub k_hi_div: u64,
    pub i_lo_div: u64,
    pub i_hi_div: u64,
    /// Width of the Z weight window as a fraction of the realized S/T gap.
    pub z_window_frac: f64,
    /// Each scale's witness pool is truncated to this many vertices.
    pub w_max: usize,
    /// Scales whose pool ends up smaller than this are skipped.
    pub min_w: usize,
    /// Extra separation inserted between consecutive scale targets.
    pub scale_margin: u64,
}

impl Default for PipelineParams {
    fn default() -> PipelineParams {
        PipelineParams {
            delta: 0.2,
            c: 0.3,
            w1_mult: 2.0,
            slack_coeff: 0.25,
            retry_budget: 64,
            split_budget: 64,
            m_lo: 0.2,
            m_hi: 0.8,
            k_lo_div: 10,
            k_hi_div: 5,
            i_lo_div: 25,
            i_hi_div: 12,
            z_window_frac: 0.25,
            w_max: 64,
            min_w: 6,
            scale_margin: 4,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parameter(format!("parameter `{key}` cannot parse value `{value}`")))
}

impl PipelineParams {
    /// Applies one `key=value` override. Unknown keys are rejected so typos
    /// in a params file fail loudly instead of silently running defaults.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "delta" => self.delta = parse_value(key, value)?,
            "c" => self.c = parse_value(key, value)?,
            "w1_mult" => self.w1_mult = parse_value(key, value)?,
            "slack_coeff" => self.slack_coeff = parse_value(key, value)?,
            "retry_budget" => self.retry_budget = parse_value(key, value)?,
            "split_budget" => self.split_budget = parse_value(key, value)?,
            "m_lo" => self.m_lo = parse_value(key, value)?,
            "m_hi" => self.m_hi = parse_value(key, value)?,
            "k_lo_div" => self.k_lo_div = parse_value(key, value)?,
            "k_hi_div" => self.k_hi_div = parse_value(key, value)?,
            "i_lo_div" => self.i_lo_div = parse_value(key, value)?,
            "i_hi_div" => self.i_hi_div = parse_value(key, value)?,
            "z_window_frac" => self.z_window_frac = parse_value(key, value)?,
            "w_max" => self.w_max = parse_value(key, value)?,
            "min_w" => self.min_w = parse_value(key, value)?,
            "scale_margin" => self.scale_margin = parse_value(key, value)?,
            other => {
                return Err(Error::Parameter(format!("unknown parameter key `{other}`")));
            }
        }
        Ok(())
    }

    /// Parses `key=value` lines: blank lines and `#` comments are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parameter(format!("params line `{line}` is not key=value"))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    // Positivity is asserted through negation so that NaN fails validation.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| -> Result<()> {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must lie in (0, 1), got {v}")))
            }
        };
        unit("delta", self.delta)?;
        unit("c", self.c)?;
        unit("z_window_frac", self.z_window_frac)?;
        if !(self.w1_mult > 0.0) || !(self.slack_coeff > 0.0) {
            return Err(Error::Parameter(
                "w1_mult and slack_coeff must be positive".into(),
            ));
        }
        if self.retry_budget == 0 || self.split_budget == 0 {
            return Err(Error::Parameter("retry budgets must be positive".into()));
        }
        if !(self.m_lo > 0.0 && self.m_lo < self.m_hi && self.m_hi <= 1.0) {
            return Err(Error::Parameter(format!(
                "need 0 < m_lo < m_hi <= 1, got m_lo={} m_hi={}",
                self.m_lo, self.m_hi
            )));
        }
        if self.k_hi_div == 0 || self.k_lo_div < self.k_hi_div {
            return Err(Error::Parameter("need k_lo_div >= k_hi_div >= 1".into()));
        }
        if self.i_hi_div == 0 || self.i_lo_div < self.i_hi_div {
            return Err(Error::Parameter("need i_lo_div >= i_hi_div >= 1".into()));
        }
        if self.w_max == 0 || self.min_w < 4 {
            return Err(Error::Parameter(
                "w_max must be positive and min_w at least 4".into(),
            ));
        }
        Ok(())
    }
}

/// One verified induced subgraph together with its claimed order and size.
/// `vertices` always refers to the graph the certificate was issued for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeCertificate {
    pub vertices: VertexSet,
    pub order: u32,
    pub size: u64,
    pub scale_index: usize,
}

/// Flat JSON form of a certificate: vertex ids ascending, fields in the
/// order scale_index, vertices, order, size.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateWire {
    pub scale_index: usize,
    pub vertices: Vec<u32>,
    pub order: u32,
    pub size: u64,
}

impl SizeCertificate {
    pub fn to_wire(&self) -> CertificateWire {
        CertificateWire {
            scale_index: self.scale_index,
            vertices: self.vertices.iter().map(|v| v as u32).collect(),
            order: self.order,
            size: self.size,
        }
    }

    /// Rehydrates a wire certificate against a graph of order `universe_n`;
    /// claimed order and size are left for `certify` to audit.
    pub fn from_wire(wire: &CertificateWire, universe_n: usize) -> Result<SizeCertificate> {
        let ids: Vec<usize> = wire.vertices.iter().map(|&v| v as usize).collect();
        Ok(SizeCertificate {
            vertices: VertexSet::from_indices(universe_n, &ids)?,
            order: wire.order,
            size: wire.size,
            scale_index: wire.scale_index,
        })
    }
}

/// Canonical JSON for a certificate list. Output is a pure function of the
/// list, so equal inputs give byte-equal files.
pub fn certificates_to_json(certs: &[SizeCertificate]) -> String {
    let wires: Vec<CertificateWire> = certs.iter().map(SizeCertificate::to_wire).collect();
    let mut out = serde_json::to_string_pretty(&wires).expect("certificate serialization");
    out.push('\n');
    out
}

pub fn certificates_from_json(text: &str, universe_n: usize) -> Result<Vec<SizeCertificate>> {
    let wires: Vec<CertificateWire> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: format!("certificate JSON: {e}"),
    })?;
    wires
        .iter()
        .map(|w| SizeCertificate::from_wire(w, universe_n))
        .collect()
}
