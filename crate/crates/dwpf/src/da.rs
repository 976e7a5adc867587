//! Vertex weight tables for the N-state external-field family.
//!
//! Weights are sparse: a table holds one evaluator per listed vertex (6 for
//! N=2, 19 for N=3, 44 for N=4) and every unlisted index tuple is exactly
//! zero. Each evaluator takes the two line fields `(alpha, beta)` and
//! `x = e^{u - v}` and returns the complex weight. Radicals are evaluated
//! with the principal branch, grouped exactly as the source formulas group
//! them; regrouping changes signs across branch cuts.
//!
//! Tables for N >= 5 are not built in; they can be loaded through the plugin
//! file format (see [`expr`] and [`register_plugin_table`]).

pub mod expr;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{principal_sqrt as sq, root_of_unity, NumericsError, RootOfUnity};
use crate::vertex::VertexIndex;
use expr::{Formula, FormulaError};

/// Weight evaluator: `(alpha, beta, x) -> weight`.
pub type WeightFn = Arc<dyn Fn(Complex64, Complex64, Complex64) -> Complex64 + Send + Sync>;

/// Per-line external field pair entering a single vertex: `alpha` rides the
/// vertical line, `beta` the horizontal one.
#[derive(Clone, Copy, Debug)]
pub struct ExternalFields {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl ExternalFields {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }
}

#[derive(Debug, Error)]
pub enum DaError {
    #[error("no built-in table for N={0}; load N>=5 tables through the plugin format")]
    UnsupportedStateCount(u8),
    #[error("vertex index {idx} out of range for N={n_states}")]
    IndexOutOfRange { idx: VertexIndex, n_states: u8 },
    #[error("vertex index {0} is not an entry of this table")]
    MissingEntry(VertexIndex),
    #[error("duplicate entry for vertex index {0}")]
    DuplicateEntry(VertexIndex),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("entry {idx}: {source}")]
    Formula {
        idx: VertexIndex,
        source: FormulaError,
    },
    #[error("plugin file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Sparse weight table for one value of N.
#[derive(Clone)]
pub struct DaWeightTable {
    n_states: u8,
    rho: RootOfUnity,
    entries: BTreeMap<VertexIndex, WeightFn>,
    label: String,
}

impl DaWeightTable {
    /// The built-in table for N in {2, 3, 4} with `rho = e^{2 pi i n / N}`.
    pub fn builtin(n_states: u8, unity_index: u32) -> Result<Self, DaError> {
        let rho = root_of_unity(unity_index, u32::from(n_states))?;
        let list = match n_states {
            2 => entries_n2(),
            3 => entries_n3(&rho),
            4 => entries_n4(&rho),
            other => return Err(DaError::UnsupportedStateCount(other)),
        };
        let mut entries = BTreeMap::new();
        for (idx, f) in list {
            entries.insert(idx, f);
        }
        Ok(Self {
            n_states,
            rho,
            entries,
            label: format!("da[N={n_states},n={unity_index}]"),
        })
    }

    pub fn n_states(&self) -> u8 {
        self.n_states
    }

    pub fn rho(&self) -> &RootOfUnity {
        &self.rho
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn entry_indices(&self) -> impl Iterator<Item = VertexIndex> + '_ {
        self.entries.keys().copied()
    }

    pub fn has_entry(&self, idx: VertexIndex) -> bool {
        self.entries.contains_key(&idx)
    }

    /// Weight at rapidity difference `w` (so `x = e^w`). Unlisted tuples give
    /// zero; tuples outside `1..=N` are an error.
    pub fn weight(
        &self,
        idx: VertexIndex,
        fields: &ExternalFields,
        w: Complex64,
    ) -> Result<Complex64, DaError> {
        if !idx.in_range(self.n_states) {
            return Err(DaError::IndexOutOfRange {
                idx,
                n_states: self.n_states,
            });
        }
        Ok(self.weight_at_x(idx, fields.alpha, fields.beta, w.exp()))
    }

    /// Weight with `x = e^{u-v}` already formed. Out-of-table tuples are zero.
    pub fn weight_at_x(
        &self,
        idx: VertexIndex,
        alpha: Complex64,
        beta: Complex64,
        x: Complex64,
    ) -> Complex64 {
        match self.entries.get(&idx) {
            Some(f) => f(alpha, beta, x),
            None => Complex64::ZERO,
        }
    }

    /// The corner vertex that an expanded domain wall reduces to:
    /// minimal in from the left and out the top, maximal in from below and
    /// out the right.
    pub fn c_plus(&self, fields: &ExternalFields, w: Complex64) -> Complex64 {
        let n = self.n_states;
        self.weight_at_x(VertexIndex::new(1, n, 1, n), fields.alpha, fields.beta, w.exp())
    }

    /// The two diagonal vertices `(a_plus, a_minus)` used to permute adjacent
    /// lattice lines: all-minimal and all-maximal.
    pub fn line_permuters(&self, fields: &ExternalFields, w: Complex64) -> (Complex64, Complex64) {
        let n = self.n_states;
        let x = w.exp();
        (
            self.weight_at_x(VertexIndex::new(1, 1, 1, 1), fields.alpha, fields.beta, x),
            self.weight_at_x(VertexIndex::new(n, n, n, n), fields.alpha, fields.beta, x),
        )
    }

    /// Copy of the table with one entry multiplied by `factor`. Used by the
    /// mutation-sensitivity checks.
    pub fn with_entry_scaled(&self, idx: VertexIndex, factor: Complex64) -> Result<Self, DaError> {
        let f = self.entries.get(&idx).ok_or(DaError::MissingEntry(idx))?.clone();
        let mut out = self.clone();
        out.entries
            .insert(idx, Arc::new(move |a, b, x| factor * f(a, b, x)));
        out.label = format!("{}*perturbed{}", self.label, idx);
        Ok(out)
    }
}

fn entry(
    top: u8,
    right: u8,
    left: u8,
    bottom: u8,
    f: impl Fn(Complex64, Complex64, Complex64) -> Complex64 + Send + Sync + 'static,
) -> (VertexIndex, WeightFn) {
    (VertexIndex::new(top, right, left, bottom), Arc::new(f))
}

/// N=2: 6 vertices.
fn entries_n2() -> Vec<(VertexIndex, WeightFn)> {
    vec![
        entry(1, 1, 1, 1, |a, b, x| 1.0 - a * b * x),
        entry(1, 2, 1, 2, |a, b, x| x * sq((1.0 - a * a) * (1.0 - b * b))),
        entry(1, 2, 2, 1, |a, b, x| a - b * x),
        entry(2, 1, 1, 2, |a, b, x| b - a * x),
        entry(2, 1, 2, 1, |a, b, _x| sq((1.0 - a * a) * (1.0 - b * b))),
        entry(2, 2, 2, 2, |a, b, x| x - a * b),
    ]
}

/// N=3: 19 vertices.
fn entries_n3(rho: &RootOfUnity) -> Vec<(VertexIndex, WeightFn)> {
    let r = rho.pow(1);
    let r2 = rho.pow(2);
    // sqrt(1-rho^2)/sqrt(1-rho), kept as a ratio of two principal radicals.
    let rat2 = sq(1.0 - r2) / sq(1.0 - r);
    vec![
        entry(1, 1, 1, 1, move |a, b, x| {
            (1.0 - a * b * x) * (1.0 - a * b * r * x)
        }),
        entry(1, 2, 1, 2, move |a, b, x| {
            x * sq((1.0 - a * a) * (1.0 - b * b)) * (1.0 - a * b * r * x)
        }),
        entry(1, 2, 2, 1, move |a, b, x| {
            (a - b * x) * (1.0 - a * b * r * x)
        }),
        entry(1, 3, 1, 3, move |a, b, x| {
            x * x * sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b) * (1.0 - b * b * r))
        }),
        entry(1, 3, 2, 2, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - b * b * r)) * rat2 * x * (a - b * x)
        }),
        entry(1, 3, 3, 1, move |a, b, x| (a - b * x) * (a - b * r * x)),
        entry(2, 1, 1, 2, move |a, b, x| {
            (b - a * x) * (1.0 - a * b * r * x)
        }),
        entry(2, 1, 2, 1, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - b * b)) * (1.0 - a * b * r * x)
        }),
        entry(2, 2, 1, 3, move |a, b, x| {
            sq((1.0 - a * a * r) * (1.0 - b * b)) * rat2 * x * (b - a * x)
        }),
        entry(2, 2, 2, 2, move |a, b, x| {
            (1.0 - a * a) * (1.0 - b * b * r) * x - (b - a * x) * (b * x - a * r)
        }),
        entry(2, 2, 3, 1, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - b * b * r)) * rat2 * (a - b * x)
        }),
        entry(2, 3, 2, 3, move |a, b, x| {
            x * (x - a * b) * sq((1.0 - a * a * r) * (1.0 - b * b * r))
        }),
        entry(2, 3, 3, 2, move |a, b, x| {
            (1.0 + r) * (a - b * x) * (x - a * b)
        }),
        entry(3, 1, 1, 3, move |a, b, x| (b - a * x) * (b - a * r * x)),
        entry(3, 1, 2, 2, move |a, b, x| {
            sq((1.0 - b * b) * (1.0 - a * a * r)) * rat2 * (b - a * x)
        }),
        entry(3, 1, 3, 1, move |a, b, _x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b) * (1.0 - b * b * r))
        }),
        entry(3, 2, 2, 3, move |a, b, x| {
            (1.0 + r) * (b - x * a) * (x - a * b)
        }),
        entry(3, 2, 3, 2, move |a, b, x| {
            sq((1.0 - a * a * r) * (1.0 - b * b * r)) * (x - a * b)
        }),
        entry(3, 3, 3, 3, move |a, b, x| (x - a * b) * (x - a * b * r)),
    ]
}

/// N=4: 44 vertices.
fn entries_n4(rho: &RootOfUnity) -> Vec<(VertexIndex, WeightFn)> {
    let r = rho.pow(1);
    let r2 = rho.pow(2);
    let r3 = rho.pow(3);
    let rat2 = sq(1.0 - r2) / sq(1.0 - r);
    let rat3 = sq(1.0 - r3) / sq(1.0 - r);
    // sqrt((1-rho^2)(1-rho^3))/(1-rho): one radical over the product.
    let rat23 = sq((1.0 - r2) * (1.0 - r3)) / (1.0 - r);
    // (1-rho^3)/(1-rho), no radicals.
    let geo3 = (1.0 - r3) / (1.0 - r);
    vec![
        entry(1, 1, 1, 1, move |a, b, x| {
            (1.0 - a * b * x) * (1.0 - a * b * r * x) * (1.0 - a * b * r2 * x)
        }),
        entry(1, 2, 1, 2, move |a, b, x| {
            x * sq((1.0 - a * a) * (1.0 - b * b)) * (1.0 - a * b * r * x) * (1.0 - a * b * r2 * x)
        }),
        entry(1, 2, 2, 1, move |a, b, x| {
            (a - b * x) * (1.0 - a * b * r * x) * (1.0 - a * b * r2 * x)
        }),
        entry(1, 3, 1, 3, move |a, b, x| {
            x * x
                * sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b) * (1.0 - b * b * r))
                * (1.0 - a * b * r2 * x)
        }),
        entry(1, 3, 2, 2, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - b * b * r)) * rat2 * x * (a - b * x) * (1.0 - a * b * r2 * x)
        }),
        entry(1, 3, 3, 1, move |a, b, x| {
            (a - b * x) * (a - b * r * x) * (1.0 - a * b * r2 * x)
        }),
        entry(1, 4, 1, 4, move |a, b, x| {
            x * x
                * x
                * sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - a * a * r2))
                * sq((1.0 - b * b) * (1.0 - b * b * r) * (1.0 - b * b * r2))
        }),
        entry(1, 4, 2, 3, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b) * (1.0 - b * b * r))
                * rat3
                * x
                * x
                * (a - b * x)
        }),
        entry(1, 4, 3, 2, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - b * b * r2)) * rat3 * x * (a - b * x) * (a - b * r * x)
        }),
        entry(1, 4, 4, 1, move |a, b, x| {
            (a - b * x) * (a - b * r * x) * (a - b * r2 * x)
        }),
        entry(2, 1, 1, 2, move |a, b, x| {
            (b - a * x) * (1.0 - a * b * r * x) * (1.0 - a * b * r2 * x)
        }),
        entry(2, 1, 2, 1, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - b * b)) * (1.0 - a * b * r * x) * (1.0 - a * b * r2 * x)
        }),
        entry(2, 2, 1, 3, move |a, b, x| {
            sq((1.0 - a * a * r) * (1.0 - b * b)) * rat2 * x * (b - a * x) * (1.0 - a * b * r2 * x)
        }),
        entry(2, 2, 2, 2, move |a, b, x| {
            ((1.0 - a * a) * (1.0 - b * b * r) * x - (b - a * x) * (b * x - a * r))
                * (1.0 - a * b * r2 * x)
        }),
        entry(2, 2, 3, 1, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - b * b * r)) * rat2 * (a - b * x) * (1.0 - a * b * r2 * x)
        }),
        entry(2, 3, 1, 4, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b) * (1.0 - b * b * r))
                * rat3
                * (a - b * x)
                * (1.0 - a * b * r2 * x)
        }),
        entry(2, 3, 2, 3, move |a, b, x| {
            sq((1.0 - a * a * r) * (1.0 - b * b * r))
                * ((1.0 - b * b) * (1.0 - a * a * r2) - (1.0 + r) * x * (a * x - b * r) * (a - b * x))
        }),
        entry(2, 3, 3, 2, move |a, b, x| {
            (a - b * x) * ((1.0 - a * a * b * b) * (1.0 - r3) * x - r * (a * x - b * r) * (a - b * x))
        }),
        entry(2, 3, 4, 1, move |a, b, x| {
            rat3 * sq((1.0 - a * a) * (1.0 - b * b * r2)) * (a - b * x) * (a - b * r * x)
        }),
        entry(2, 4, 2, 4, move |a, b, x| {
            x * x
                * sq(1.0 - a * a * r)
                * sq((1.0 - a * a * r2) * (1.0 - b * b * r) * (1.0 - b * b * r2))
                * (x - a * b)
        }),
        entry(2, 4, 3, 3, move |a, b, x| {
            x * rat23 * sq((1.0 - a * a * r) * (1.0 - b * b * r2)) * (x - a * b) * (a - b * x)
        }),
        entry(2, 4, 4, 2, move |a, b, x| {
            geo3 * (x - a * b) * (a - b * x) * (a - b * r * x)
        }),
        entry(3, 1, 1, 3, move |a, b, x| {
            (b - a * x) * (b - a * r * x) * (1.0 - a * b * r2 * x)
        }),
        entry(3, 1, 2, 2, move |a, b, x| {
            sq((1.0 - b * b) * (1.0 - a * a * r)) * rat2 * (b - a * x) * (1.0 - a * b * r2 * x)
        }),
        entry(3, 1, 3, 1, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b) * (1.0 - b * b * r))
                * (1.0 - a * b * r2 * x)
        }),
        entry(3, 2, 1, 4, move |a, b, x| {
            sq((1.0 - a * a * r2) * (1.0 - b * b)) * rat3 * x * (b - a * x) * (b - a * r * x)
        }),
        entry(3, 2, 2, 3, move |a, b, x| {
            (b - a * x) * ((1.0 - a * a * b * b) * (1.0 - r3) * x - r * (b - a * x) * (b * x - a * r))
        }),
        entry(3, 2, 3, 2, move |a, b, x| {
            sq((1.0 - a * a * r) * (1.0 - b * b * r))
                * ((1.0 - a * a) * (1.0 - b * b * r2) * x - (1.0 + r) * (b - a * x) * (b * x - a * r))
        }),
        entry(3, 2, 4, 1, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b * r) * (1.0 - b * b * r2))
                * rat3
                * (a - b * x)
        }),
        entry(3, 3, 2, 4, move |a, b, x| {
            x * rat23 * sq((1.0 - a * a * r2) * (1.0 - b * b * r)) * (x - a * b) * (a - b * x)
        }),
        entry(3, 3, 3, 3, move |a, b, x| {
            ((1.0 - a * a * r) * (1.0 - b * b * r2) * x
                - (1.0 + r + r2) * (b - a * x) * (b * x - a * r))
                * (x - a * b)
        }),
        entry(3, 3, 4, 2, move |a, b, x| {
            sq((1.0 - a * a * r) * (1.0 - b * b * r)) * rat23 * (x - a * b) * (a - b * x)
        }),
        entry(3, 4, 3, 4, move |a, b, x| {
            x * sq(1.0 - a * a * r2) * sq(1.0 - b * b * r2) * (x - a * b) * (x - a * b * r)
        }),
        entry(3, 4, 4, 3, move |a, b, x| {
            geo3 * (x - a * b) * (x - a * b * r) * (a - b * x)
        }),
        entry(4, 1, 1, 4, move |a, b, x| {
            (b - a * x) * (b - a * r * x) * (b - a * r2 * x)
        }),
        entry(4, 1, 2, 3, move |a, b, x| {
            sq((1.0 - a * a * r2) * (1.0 - b * b)) * rat3 * (b - a * x) * (b - a * r * x)
        }),
        entry(4, 1, 3, 2, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b * r) * (1.0 - b * b * r2))
                * rat3
                * (b - a * x)
        }),
        entry(4, 1, 4, 1, move |a, b, _x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - a * a * r2))
                * sq((1.0 - b * b) * (1.0 - b * b * r) * (1.0 - b * b * r2))
        }),
        entry(4, 2, 2, 4, move |a, b, x| {
            geo3 * (x - a * b) * (b - a * x) * (b - a * r * x)
        }),
        entry(4, 2, 3, 3, move |a, b, x| {
            sq((1.0 - a * a * r2) * (1.0 - b * b * r)) * rat23 * (x - a * b) * (b - a * x)
        }),
        entry(4, 2, 4, 2, move |a, b, x| {
            sq((1.0 - a * a) * (1.0 - a * a * r) * (1.0 - b * b * r) * (1.0 - b * b * r2))
                * (x - a * b)
        }),
        entry(4, 3, 3, 4, move |a, b, x| {
            geo3 * (x - a * b) * (x - a * b * r) * (b - a * x)
        }),
        entry(4, 3, 4, 3, move |a, b, x| {
            sq((1.0 - a * a * r2) * (1.0 - b * b * r2)) * (x - a * b) * (x - a * b * r)
        }),
        entry(4, 4, 4, 4, move |a, b, x| {
            (x - a * b) * (x - a * b * r) * (x - a * b * r2)
        }),
    ]
}

/// External table description: the JSON plugin file, deserialized.
///
/// Formulas are restricted arithmetic expressions over `alpha`, `beta`, `x`
/// and `rho` with `+ - * / ^` and `sqrt()`; see [`expr`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PluginTableSpec {
    #[serde(rename = "N")]
    pub n_states: u8,
    #[serde(rename = "n")]
    pub unity_index: u32,
    pub entries: Vec<PluginEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PluginEntry {
    pub iota1: u8,
    pub iota2: u8,
    pub kappa2: u8,
    pub kappa1: u8,
    pub formula: String,
}

/// Compiles a plugin description into a usable weight table.
///
/// Intended for conjectural tables with N >= 5, but any N >= 2 is accepted so
/// a built-in table can be round-tripped through this path as a self-test.
/// An empty entry list is valid and yields the all-zero table.
pub fn register_plugin_table(spec: &PluginTableSpec) -> Result<DaWeightTable, DaError> {
    let rho = root_of_unity(spec.unity_index, u32::from(spec.n_states))?;
    let mut entries: BTreeMap<VertexIndex, WeightFn> = BTreeMap::new();
    for e in &spec.entries {
        let idx = VertexIndex::new(e.iota1, e.iota2, e.kappa2, e.kappa1);
        if !idx.in_range(spec.n_states) {
            return Err(DaError::IndexOutOfRange {
                idx,
                n_states: spec.n_states,
            });
        }
        if entries.contains_key(&idx) {
            return Err(DaError::DuplicateEntry(idx));
        }
        let formula = Formula::parse(&e.formula).map_err(|source| DaError::Formula { idx, source })?;
        let rho_value = rho.value();
        entries.insert(
            idx,
            Arc::new(move |a, b, x| formula.eval(a, b, x, rho_value)),
        );
    }
    Ok(DaWeightTable {
        n_states: spec.n_states,
        rho,
        entries,
        label: format!("da-plugin[N={},n={}]", spec.n_states, spec.unity_index),
    })
}

/// Parses the JSON plugin document and compiles it.
pub fn plugin_table_from_json(json: &str) -> Result<DaWeightTable, DaError> {
    let spec: PluginTableSpec = serde_json::from_str(json)?;
    register_plugin_table(&spec)
}

/// The built-in table for N in {2, 3, 4}, written out in the plugin formula
/// language. Besides documenting the file format, this gives a second,
/// independently evaluated encoding of every built-in weight, which the
/// self-tests compare against the native closures.
pub fn builtin_plugin_spec(n_states: u8, unity_index: u32) -> Result<PluginTableSpec, DaError> {
    // Validate (n, N) the same way the table constructor does.
    root_of_unity(unity_index, u32::from(n_states))?;
    let entries: &[(u8, u8, u8, u8, &str)] = match n_states {
        2 => &FORMULAS_N2,
        3 => &FORMULAS_N3,
        4 => &FORMULAS_N4,
        other => return Err(DaError::UnsupportedStateCount(other)),
    };
    Ok(PluginTableSpec {
        n_states,
        unity_index,
        entries: entries
            .iter()
            .map(|&(iota1, iota2, kappa2, kappa1, formula)| PluginEntry {
                iota1,
                iota2,
                kappa2,
                kappa1,
                formula: formula.to_string(),
            })
            .collect(),
    })
}

const FORMULAS_N2: [(u8, u8, u8, u8, &str); 6] = [
    (1, 1, 1, 1, "1 - alpha*beta*x"),
    (1, 2, 1, 2, "x*sqrt((1 - alpha^2)*(1 - beta^2))"),
    (1, 2, 2, 1, "alpha - beta*x"),
    (2, 1, 1, 2, "beta - alpha*x"),
    (2, 1, 2, 1, "sqrt((1 - alpha^2)*(1 - beta^2))"),
    (2, 2, 2, 2, "x - alpha*beta"),
];

const FORMULAS_N3: [(u8, u8, u8, u8, &str); 19] = [
    (1, 1, 1, 1, "(1 - alpha*beta*x)*(1 - alpha*beta*rho*x)"),
    (1, 2, 1, 2, "x*sqrt((1 - alpha^2)*(1 - beta^2))*(1 - alpha*beta*rho*x)"),
    (1, 2, 2, 1, "(alpha - beta*x)*(1 - alpha*beta*rho*x)"),
    (1, 3, 1, 3, "x^2*sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2)*(1 - beta^2*rho))"),
    (1, 3, 2, 2, "sqrt((1 - alpha^2)*(1 - beta^2*rho))*(sqrt(1 - rho^2)/sqrt(1 - rho))*x*(alpha - beta*x)"),
    (1, 3, 3, 1, "(alpha - beta*x)*(alpha - beta*rho*x)"),
    (2, 1, 1, 2, "(beta - alpha*x)*(1 - alpha*beta*rho*x)"),
    (2, 1, 2, 1, "sqrt((1 - alpha^2)*(1 - beta^2))*(1 - alpha*beta*rho*x)"),
    (2, 2, 1, 3, "sqrt((1 - alpha^2*rho)*(1 - beta^2))*(sqrt(1 - rho^2)/sqrt(1 - rho))*x*(beta - alpha*x)"),
    (2, 2, 2, 2, "(1 - alpha^2)*(1 - beta^2*rho)*x - (beta - alpha*x)*(beta*x - alpha*rho)"),
    (2, 2, 3, 1, "sqrt((1 - alpha^2)*(1 - beta^2*rho))*(sqrt(1 - rho^2)/sqrt(1 - rho))*(alpha - beta*x)"),
    (2, 3, 2, 3, "x*(x - alpha*beta)*sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))"),
    (2, 3, 3, 2, "(1 + rho)*(alpha - beta*x)*(x - alpha*beta)"),
    (3, 1, 1, 3, "(beta - alpha*x)*(beta - alpha*rho*x)"),
    (3, 1, 2, 2, "sqrt((1 - beta^2)*(1 - alpha^2*rho))*(sqrt(1 - rho^2)/sqrt(1 - rho))*(beta - alpha*x)"),
    (3, 1, 3, 1, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2)*(1 - beta^2*rho))"),
    (3, 2, 2, 3, "(1 + rho)*(beta - x*alpha)*(x - alpha*beta)"),
    (3, 2, 3, 2, "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*(x - alpha*beta)"),
    (3, 3, 3, 3, "(x - alpha*beta)*(x - alpha*beta*rho)"),
];

const FORMULAS_N4: [(u8, u8, u8, u8, &str); 44] = [
    (1, 1, 1, 1, "(1 - alpha*beta*x)*(1 - alpha*beta*rho*x)*(1 - alpha*beta*rho^2*x)"),
    (1, 2, 1, 2, "x*sqrt((1 - alpha^2)*(1 - beta^2))*(1 - alpha*beta*rho*x)*(1 - alpha*beta*rho^2*x)"),
    (1, 2, 2, 1, "(alpha - beta*x)*(1 - alpha*beta*rho*x)*(1 - alpha*beta*rho^2*x)"),
    (1, 3, 1, 3, "x^2*sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2)*(1 - beta^2*rho))*(1 - alpha*beta*rho^2*x)"),
    (1, 3, 2, 2, "sqrt((1 - alpha^2)*(1 - beta^2*rho))*(sqrt(1 - rho^2)/sqrt(1 - rho))*x*(alpha - beta*x)*(1 - alpha*beta*rho^2*x)"),
    (1, 3, 3, 1, "(alpha - beta*x)*(alpha - beta*rho*x)*(1 - alpha*beta*rho^2*x)"),
    (1, 4, 1, 4, "x^3*sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - alpha^2*rho^2))*sqrt((1 - beta^2)*(1 - beta^2*rho)*(1 - beta^2*rho^2))"),
    (1, 4, 2, 3, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2)*(1 - beta^2*rho))*(sqrt(1 - rho^3)/sqrt(1 - rho))*x^2*(alpha - beta*x)"),
    (1, 4, 3, 2, "sqrt((1 - alpha^2)*(1 - beta^2*rho^2))*(sqrt(1 - rho^3)/sqrt(1 - rho))*x*(alpha - beta*x)*(alpha - beta*rho*x)"),
    (1, 4, 4, 1, "(alpha - beta*x)*(alpha - beta*rho*x)*(alpha - beta*rho^2*x)"),
    (2, 1, 1, 2, "(beta - alpha*x)*(1 - alpha*beta*rho*x)*(1 - alpha*beta*rho^2*x)"),
    (2, 1, 2, 1, "sqrt((1 - alpha^2)*(1 - beta^2))*(1 - alpha*beta*rho*x)*(1 - alpha*beta*rho^2*x)"),
    (2, 2, 1, 3, "sqrt((1 - alpha^2*rho)*(1 - beta^2))*(sqrt(1 - rho^2)/sqrt(1 - rho))*x*(beta - alpha*x)*(1 - alpha*beta*rho^2*x)"),
    (2, 2, 2, 2, "((1 - alpha^2)*(1 - beta^2*rho)*x - (beta - alpha*x)*(beta*x - alpha*rho))*(1 - alpha*beta*rho^2*x)"),
    (2, 2, 3, 1, "sqrt((1 - alpha^2)*(1 - beta^2*rho))*(sqrt(1 - rho^2)/sqrt(1 - rho))*(alpha - beta*x)*(1 - alpha*beta*rho^2*x)"),
    (2, 3, 1, 4, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2)*(1 - beta^2*rho))*(sqrt(1 - rho^3)/sqrt(1 - rho))*(alpha - beta*x)*(1 - alpha*beta*rho^2*x)"),
    (2, 3, 2, 3, "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*((1 - beta^2)*(1 - alpha^2*rho^2) - (1 + rho)*x*(alpha*x - beta*rho)*(alpha - beta*x))"),
    (2, 3, 3, 2, "(alpha - beta*x)*((1 - alpha^2*beta^2)*(1 - rho^3)*x - rho*(alpha*x - beta*rho)*(alpha - beta*x))"),
    (2, 3, 4, 1, "(sqrt(1 - rho^3)/sqrt(1 - rho))*sqrt((1 - alpha^2)*(1 - beta^2*rho^2))*(alpha - beta*x)*(alpha - beta*rho*x)"),
    (2, 4, 2, 4, "x^2*sqrt(1 - alpha^2*rho)*sqrt((1 - alpha^2*rho^2)*(1 - beta^2*rho)*(1 - beta^2*rho^2))*(x - alpha*beta)"),
    (2, 4, 3, 3, "x*(sqrt((1 - rho^2)*(1 - rho^3))/(1 - rho))*sqrt((1 - alpha^2*rho)*(1 - beta^2*rho^2))*(x - alpha*beta)*(alpha - beta*x)"),
    (2, 4, 4, 2, "((1 - rho^3)/(1 - rho))*(x - alpha*beta)*(alpha - beta*x)*(alpha - beta*rho*x)"),
    (3, 1, 1, 3, "(beta - alpha*x)*(beta - alpha*rho*x)*(1 - alpha*beta*rho^2*x)"),
    (3, 1, 2, 2, "sqrt((1 - beta^2)*(1 - alpha^2*rho))*(sqrt(1 - rho^2)/sqrt(1 - rho))*(beta - alpha*x)*(1 - alpha*beta*rho^2*x)"),
    (3, 1, 3, 1, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2)*(1 - beta^2*rho))*(1 - alpha*beta*rho^2*x)"),
    (3, 2, 1, 4, "sqrt((1 - alpha^2*rho^2)*(1 - beta^2))*(sqrt(1 - rho^3)/sqrt(1 - rho))*x*(beta - alpha*x)*(beta - alpha*rho*x)"),
    (3, 2, 2, 3, "(beta - alpha*x)*((1 - alpha^2*beta^2)*(1 - rho^3)*x - rho*(beta - alpha*x)*(beta*x - alpha*rho))"),
    (3, 2, 3, 2, "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*((1 - alpha^2)*(1 - beta^2*rho^2)*x - (1 + rho)*(beta - alpha*x)*(beta*x - alpha*rho))"),
    (3, 2, 4, 1, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2*rho)*(1 - beta^2*rho^2))*(sqrt(1 - rho^3)/sqrt(1 - rho))*(alpha - beta*x)"),
    (3, 3, 2, 4, "x*(sqrt((1 - rho^2)*(1 - rho^3))/(1 - rho))*sqrt((1 - alpha^2*rho^2)*(1 - beta^2*rho))*(x - alpha*beta)*(alpha - beta*x)"),
    (3, 3, 3, 3, "((1 - alpha^2*rho)*(1 - beta^2*rho^2)*x - (1 + rho + rho^2)*(beta - alpha*x)*(beta*x - alpha*rho))*(x - alpha*beta)"),
    (3, 3, 4, 2, "sqrt((1 - alpha^2*rho)*(1 - beta^2*rho))*(sqrt((1 - rho^2)*(1 - rho^3))/(1 - rho))*(x - alpha*beta)*(alpha - beta*x)"),
    (3, 4, 3, 4, "x*sqrt(1 - alpha^2*rho^2)*sqrt(1 - beta^2*rho^2)*(x - alpha*beta)*(x - alpha*beta*rho)"),
    (3, 4, 4, 3, "((1 - rho^3)/(1 - rho))*(x - alpha*beta)*(x - alpha*beta*rho)*(alpha - beta*x)"),
    (4, 1, 1, 4, "(beta - alpha*x)*(beta - alpha*rho*x)*(beta - alpha*rho^2*x)"),
    (4, 1, 2, 3, "sqrt((1 - alpha^2*rho^2)*(1 - beta^2))*(sqrt(1 - rho^3)/sqrt(1 - rho))*(beta - alpha*x)*(beta - alpha*rho*x)"),
    (4, 1, 3, 2, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2*rho)*(1 - beta^2*rho^2))*(sqrt(1 - rho^3)/sqrt(1 - rho))*(beta - alpha*x)"),
    (4, 1, 4, 1, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - alpha^2*rho^2))*sqrt((1 - beta^2)*(1 - beta^2*rho)*(1 - beta^2*rho^2))"),
    (4, 2, 2, 4, "((1 - rho^3)/(1 - rho))*(x - alpha*beta)*(beta - alpha*x)*(beta - alpha*rho*x)"),
    (4, 2, 3, 3, "sqrt((1 - alpha^2*rho^2)*(1 - beta^2*rho))*(sqrt((1 - rho^2)*(1 - rho^3))/(1 - rho))*(x - alpha*beta)*(beta - alpha*x)"),
    (4, 2, 4, 2, "sqrt((1 - alpha^2)*(1 - alpha^2*rho)*(1 - beta^2*rho)*(1 - beta^2*rho^2))*(x - alpha*beta)"),
    (4, 3, 3, 4, "((1 - rho^3)/(1 - rho))*(x - alpha*beta)*(x - alpha*beta*rho)*(beta - alpha*x)"),
    (4, 3, 4, 3, "sqrt((1 - alpha^2*rho^2)*(1 - beta^2*rho^2))*(x - alpha*beta)*(x - alpha*beta*rho)"),
    (4, 4, 4, 4, "(x - alpha*beta)*(x - alpha*beta*rho)*(x - alpha*beta*rho^2)"),
];
