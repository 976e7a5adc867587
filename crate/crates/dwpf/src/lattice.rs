//! Exact evaluation of the domain-wall partition function on an L x L
//! lattice: the sum over all interior bond assignments of the product of the
//! L^2 vertex weights.
//!
//! Two independent engines compute the same sum. [`dwpf_enumerate`] walks
//! every interior bond assignment with a base-N odometer and serves as the
//! brute-force oracle. [`dwpf_contract`] sweeps the lattice column by column,
//! carrying a dense cut vector over the N^L states of the horizontal bonds
//! crossing one vertical cut, and reaches much larger L. A third sweep,
//! [`dwpf_max_abs_term`], replaces (+, *) by (max, *) on magnitudes and
//! returns the largest configuration magnitude exactly; it is the scale
//! reference for deciding that a partition function vanishes.
//!
//! Lattice geometry: vertical lines are numbered 1..=L left to right and
//! carry `(u_i, alpha_i)`, horizontal lines 1..=L top to bottom with
//! `(v_j, beta_j)`. Vertical lines are oriented bottom to top and horizontal
//! lines left to right, so at each vertex `left` and `bottom` are incoming.

use num_complex::Complex64;
use thiserror::Error;

use crate::da::DaWeightTable;
use crate::ps::PsWeightTable;
use crate::vertex::VertexIndex;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("lattice size must be at least 1")]
    EmptyLattice,
    #[error("parameter arrays must all have length {expected}, got {got}")]
    ParamLengthMismatch { expected: usize, got: usize },
    #[error("boundary condition length {got} does not match lattice size {expected}")]
    BoundaryLengthMismatch { expected: usize, got: usize },
    #[error("boundary state {state} out of range for N={n_states}")]
    BoundaryStateOutOfRange { state: u8, n_states: u8 },
    #[error(
        "enumeration over {assignments} interior assignments exceeds the cap {cap}; use the contraction engine"
    )]
    EnumerationCapExceeded { assignments: u128, cap: u128 },
    #[error("contraction needs {entries} cut-vector entries, above the cap {cap}")]
    ContractionCapExceeded { entries: u128, cap: usize },
    #[error("{0:?} is not a permutation of 0..{1}")]
    InvalidPermutation(Vec<usize>, usize),
}

/// Resource limits. Exceeding a cap is an error, never a silent truncation.
#[derive(Clone, Copy, Debug)]
pub struct EngineCaps {
    /// Largest number of interior bond assignments `N^(2L(L-1))` the
    /// enumeration engine will walk.
    pub max_enumeration_assignments: u128,
    /// Largest intermediate vector length `N^(L+1)` the contraction engine
    /// will allocate.
    pub max_cut_entries: usize,
}

impl Default for EngineCaps {
    fn default() -> Self {
        Self {
            max_enumeration_assignments: 100_000_000,
            max_cut_entries: 1 << 22,
        }
    }
}

/// State assignments on the 4L boundary bonds, one array per side, indexed by
/// row (left/right) or column (top/bottom).
#[derive(Clone, Debug)]
pub struct BoundaryCondition {
    left: Vec<u8>,
    top: Vec<u8>,
    right: Vec<u8>,
    bottom: Vec<u8>,
}

impl BoundaryCondition {
    pub fn new(left: Vec<u8>, top: Vec<u8>, right: Vec<u8>, bottom: Vec<u8>) -> Self {
        assert!(
            left.len() == top.len() && top.len() == right.len() && right.len() == bottom.len(),
            "boundary arrays must have equal length"
        );
        Self { left, top, right, bottom }
    }

    /// Domain wall: minimal state on every left/top bond, maximal on every
    /// right/bottom bond — an expanded corner vertex.
    pub fn domain_wall(l: usize, n_states: u8) -> Self {
        Self::uniform(l, 1, n_states)
    }

    /// Domain wall with chosen minimal-side and maximal-side states; used to
    /// vary the boundary inside `B_minus`/`B_plus` for the graded family.
    pub fn uniform(l: usize, low: u8, high: u8) -> Self {
        Self {
            left: vec![low; l],
            top: vec![low; l],
            right: vec![high; l],
            bottom: vec![high; l],
        }
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self) -> &[u8] {
        &self.left
    }

    pub fn top(&self) -> &[u8] {
        &self.top
    }

    pub fn right(&self) -> &[u8] {
        &self.right
    }

    pub fn bottom(&self) -> &[u8] {
        &self.bottom
    }

    fn validate(&self, l: usize, n_states: u8) -> Result<(), EngineError> {
        if self.len() != l {
            return Err(EngineError::BoundaryLengthMismatch {
                expected: l,
                got: self.len(),
            });
        }
        for side in [&self.left, &self.top, &self.right, &self.bottom] {
            for &s in side.iter() {
                if s == 0 || s > n_states {
                    return Err(EngineError::BoundaryStateOutOfRange { state: s, n_states });
                }
            }
        }
        Ok(())
    }
}

/// Anything the engines can contract: a weighted L x L vertex arrangement.
pub trait LatticeModel {
    fn n_states(&self) -> u8;
    fn size(&self) -> usize;
    /// Weight of the vertex where vertical line `col` crosses horizontal
    /// line `row` (both 1-based).
    fn site_weight(&self, col: usize, row: usize, idx: VertexIndex) -> Complex64;
    fn descriptor(&self) -> String;
}

/// Rapidities and external fields for the N-state family on an L x L lattice.
#[derive(Clone, Debug)]
pub struct DaParams {
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
}

impl DaParams {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let l = self.u.len();
        if l == 0 {
            return Err(EngineError::EmptyLattice);
        }
        for got in [self.v.len(), self.alpha.len(), self.beta.len()] {
            if got != l {
                return Err(EngineError::ParamLengthMismatch { expected: l, got });
            }
        }
        Ok(())
    }

    /// Applies `perm` to the vertical-line data: entry `k` of the result is
    /// entry `perm[k]` of the original `(u, alpha)`.
    pub fn permuted_columns(&self, perm: &[usize]) -> Result<Self, EngineError> {
        check_permutation(perm, self.len())?;
        Ok(Self {
            u: perm.iter().map(|&k| self.u[k]).collect(),
            v: self.v.clone(),
            alpha: perm.iter().map(|&k| self.alpha[k]).collect(),
            beta: self.beta.clone(),
        })
    }

    /// Drops vertical line 1 and horizontal line L, the reduction step of the
    /// recursion relation: removes index 1 from `(u, alpha)` and index L from
    /// `(v, beta)`, then reindexes.
    pub fn reduced(&self) -> Self {
        Self {
            u: self.u[1..].to_vec(),
            v: self.v[..self.v.len() - 1].to_vec(),
            alpha: self.alpha[1..].to_vec(),
            beta: self.beta[..self.beta.len() - 1].to_vec(),
        }
    }
}

/// Rapidities for the graded family (the crossing parameter lives in the
/// weight table).
#[derive(Clone, Debug)]
pub struct PsParams {
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

impl PsParams {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let l = self.u.len();
        if l == 0 {
            return Err(EngineError::EmptyLattice);
        }
        if self.v.len() != l {
            return Err(EngineError::ParamLengthMismatch {
                expected: l,
                got: self.v.len(),
            });
        }
        Ok(())
    }

    pub fn permuted_columns(&self, perm: &[usize]) -> Result<Self, EngineError> {
        check_permutation(perm, self.len())?;
        Ok(Self {
            u: perm.iter().map(|&k| self.u[k]).collect(),
            v: self.v.clone(),
        })
    }

    pub fn reduced(&self) -> Self {
        Self {
            u: self.u[1..].to_vec(),
            v: self.v[..self.v.len() - 1].to_vec(),
        }
    }
}

fn check_permutation(perm: &[usize], l: usize) -> Result<(), EngineError> {
    let mut seen = vec![false; l];
    let valid = perm.len() == l
        && perm.iter().all(|&k| {
            if k >= l || seen[k] {
                false
            } else {
                seen[k] = true;
                true
            }
        });
    if valid {
        Ok(())
    } else {
        Err(EngineError::InvalidPermutation(perm.to_vec(), l))
    }
}

/// N-state lattice: a weight table plus per-line parameters.
#[derive(Clone)]
pub struct DaLattice<'a> {
    table: &'a DaWeightTable,
    params: DaParams,
}

impl<'a> DaLattice<'a> {
    pub fn new(table: &'a DaWeightTable, params: DaParams) -> Result<Self, EngineError> {
        params.validate()?;
        Ok(Self { table, params })
    }

    pub fn params(&self) -> &DaParams {
        &self.params
    }

    pub fn table(&self) -> &DaWeightTable {
        self.table
    }

    pub fn with_permuted_columns(&self, perm: &[usize]) -> Result<Self, EngineError> {
        Ok(Self {
            table: self.table,
            params: self.params.permuted_columns(perm)?,
        })
    }
}

impl LatticeModel for DaLattice<'_> {
    fn n_states(&self) -> u8 {
        self.table.n_states()
    }

    fn size(&self) -> usize {
        self.params.len()
    }

    fn site_weight(&self, col: usize, row: usize, idx: VertexIndex) -> Complex64 {
        let x = (self.params.u[col - 1] - self.params.v[row - 1]).exp();
        self.table.weight_at_x(
            idx,
            self.params.alpha[col - 1],
            self.params.beta[row - 1],
            x,
        )
    }

    fn descriptor(&self) -> String {
        format!("{} L={}", self.table.label(), self.size())
    }
}

/// Graded lattice: a weight table plus rapidities.
#[derive(Clone)]
pub struct PsLattice<'a> {
    table: &'a PsWeightTable,
    params: PsParams,
}

impl<'a> PsLattice<'a> {
    pub fn new(table: &'a PsWeightTable, params: PsParams) -> Result<Self, EngineError> {
        params.validate()?;
        Ok(Self { table, params })
    }

    pub fn params(&self) -> &PsParams {
        &self.params
    }

    pub fn table(&self) -> &PsWeightTable {
        self.table
    }

    pub fn with_permuted_columns(&self, perm: &[usize]) -> Result<Self, EngineError> {
        Ok(Self {
            table: self.table,
            params: self.params.permuted_columns(perm)?,
        })
    }
}

impl LatticeModel for PsLattice<'_> {
    fn n_states(&self) -> u8 {
        self.table.n_states()
    }

    fn size(&self) -> usize {
        self.params.len()
    }

    fn site_weight(&self, col: usize, row: usize, idx: VertexIndex) -> Complex64 {
        self.table
            .weight_raw(idx, self.params.u[col - 1] - self.params.v[row - 1])
    }

    fn descriptor(&self) -> String {
        format!("{} L={}", self.table.label(), self.size())
    }
}

/// Wrapper that zeroes one site's weights unless `(top, right)` matches the
/// given pair: the "freeze this vertex" probe used by the recursion checks.
pub struct PinnedVertex<'m, M: LatticeModel> {
    inner: &'m M,
    col: usize,
    row: usize,
    top: u8,
    right: u8,
}

impl<'m, M: LatticeModel> PinnedVertex<'m, M> {
    pub fn new(inner: &'m M, col: usize, row: usize, top: u8, right: u8) -> Self {
        Self { inner, col, row, top, right }
    }
}

impl<M: LatticeModel> LatticeModel for PinnedVertex<'_, M> {
    fn n_states(&self) -> u8 {
        self.inner.n_states()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn site_weight(&self, col: usize, row: usize, idx: VertexIndex) -> Complex64 {
        if col == self.col && row == self.row && (idx.top, idx.right) != (self.top, self.right) {
            return Complex64::ZERO;
        }
        self.inner.site_weight(col, row, idx)
    }

    fn descriptor(&self) -> String {
        format!(
            "{} pinned({},{})->({},{})",
            self.inner.descriptor(),
            self.col,
            self.row,
            self.top,
            self.right
        )
    }
}

/// Dense per-site weight tensor, indexed `[top, right, left, bottom]`.
struct SiteTensor {
    n: usize,
    data: Vec<Complex64>,
}

impl SiteTensor {
    fn build<M: LatticeModel>(model: &M, col: usize, row: usize) -> Self {
        let n = usize::from(model.n_states());
        let mut data = vec![Complex64::ZERO; n * n * n * n];
        for t in 1..=n as u8 {
            for r in 1..=n as u8 {
                for le in 1..=n as u8 {
                    for b in 1..=n as u8 {
                        let w = model.site_weight(col, row, VertexIndex::new(t, r, le, b));
                        if w != Complex64::ZERO {
                            data[Self::offset(n, t, r, le, b)] = w;
                        }
                    }
                }
            }
        }
        Self { n, data }
    }

    #[inline]
    fn offset(n: usize, t: u8, r: u8, le: u8, b: u8) -> usize {
        (((usize::from(t) - 1) * n + usize::from(r) - 1) * n + usize::from(le) - 1) * n
            + usize::from(b)
            - 1
    }

    #[inline]
    fn get0(&self, t: usize, r: usize, le: usize, b: usize) -> Complex64 {
        self.data[((t * self.n + r) * self.n + le) * self.n + b]
    }

    /// Entries regrouped for the column sweep: for each incoming pair
    /// `(top, left)` (0-based, `key = top*n + left`) the nonzero outgoing
    /// `(right, bottom, weight)` triples.
    fn grouped_by_inputs(&self) -> Vec<Vec<(usize, usize, Complex64)>> {
        let n = self.n;
        let mut groups = vec![Vec::new(); n * n];
        for t in 0..n {
            for r in 0..n {
                for le in 0..n {
                    for b in 0..n {
                        let w = self.get0(t, r, le, b);
                        if w != Complex64::ZERO {
                            groups[t * n + le].push((r, b, w));
                        }
                    }
                }
            }
        }
        groups
    }
}

/// The vertex tensor cache: one dense tensor per lattice site.
fn all_site_tensors<M: LatticeModel>(model: &M) -> Vec<SiteTensor> {
    let l = model.size();
    let mut tensors = Vec::with_capacity(l * l);
    for col in 1..=l {
        for row in 1..=l {
            tensors.push(SiteTensor::build(model, col, row));
        }
    }
    tensors
}

#[derive(Clone, Copy)]
enum BondRef {
    Fixed(usize),
    Interior(usize),
}

/// Bond bookkeeping for the enumeration engine: for each site, where its
/// four bond states come from (a boundary constant or an interior bond slot).
fn bond_layout(l: usize, bc: &BoundaryCondition) -> Vec<[BondRef; 4]> {
    // Interior slots: horizontal bond between columns i and i+1 on row j gets
    // slot (j-1)(L-1) + (i-1); vertical bond between rows j and j+1 on column
    // i gets slot L(L-1) + (i-1)(L-1) + (j-1).
    let nh = l * (l - 1);
    let h = |i: usize, j: usize| (j - 1) * (l - 1) + (i - 1);
    let vslot = |i: usize, j: usize| nh + (i - 1) * (l - 1) + (j - 1);
    let fixed = |s: u8| BondRef::Fixed(usize::from(s) - 1);
    let mut sites = Vec::with_capacity(l * l);
    for col in 1..=l {
        for row in 1..=l {
            let top = if row == 1 {
                fixed(bc.top[col - 1])
            } else {
                BondRef::Interior(vslot(col, row - 1))
            };
            let bottom = if row == l {
                fixed(bc.bottom[col - 1])
            } else {
                BondRef::Interior(vslot(col, row))
            };
            let left = if col == 1 {
                fixed(bc.left[row - 1])
            } else {
                BondRef::Interior(h(col - 1, row))
            };
            let right = if col == l {
                fixed(bc.right[row - 1])
            } else {
                BondRef::Interior(h(col, row))
            };
            sites.push([top, right, left, bottom]);
        }
    }
    sites
}

/// Brute-force oracle: sums the weight product over all `N^(2L(L-1))`
/// interior bond assignments. Assignments containing a zero weight contribute
/// zero (the running product stops early). Sequential and bit-deterministic.
pub fn dwpf_enumerate<M: LatticeModel>(
    model: &M,
    bc: &BoundaryCondition,
    caps: &EngineCaps,
) -> Result<Complex64, EngineError> {
    let l = model.size();
    if l == 0 {
        return Err(EngineError::EmptyLattice);
    }
    let n = usize::from(model.n_states());
    bc.validate(l, model.n_states())?;

    let n_bonds = 2 * l * (l - 1);
    let assignments = (n as u128)
        .checked_pow(n_bonds as u32)
        .unwrap_or(u128::MAX);
    if assignments > caps.max_enumeration_assignments {
        return Err(EngineError::EnumerationCapExceeded {
            assignments,
            cap: caps.max_enumeration_assignments,
        });
    }

    let tensors = all_site_tensors(model);
    let sites = bond_layout(l, bc);
    let mut bonds = vec![0usize; n_bonds];
    let mut sum = Complex64::ZERO;
    loop {
        let mut term = Complex64::new(1.0, 0.0);
        for (site, tensor) in sites.iter().zip(&tensors) {
            let state = |r: BondRef| match r {
                BondRef::Fixed(s) => s,
                BondRef::Interior(slot) => bonds[slot],
            };
            let w = tensor.get0(state(site[0]), state(site[1]), state(site[2]), state(site[3]));
            if w == Complex64::ZERO {
                term = Complex64::ZERO;
                break;
            }
            term *= w;
        }
        sum += term;

        // Base-N odometer over the interior bonds.
        let mut carry = true;
        for digit in bonds.iter_mut() {
            *digit += 1;
            if *digit < n {
                carry = false;
                break;
            }
            *digit = 0;
        }
        if carry {
            break;
        }
    }
    Ok(sum)
}

fn contraction_sizes(n: usize, l: usize, caps: &EngineCaps) -> Result<(usize, usize), EngineError> {
    let entries = (n as u128).checked_pow(l as u32 + 1).unwrap_or(u128::MAX);
    if entries > caps.max_cut_entries as u128 {
        return Err(EngineError::ContractionCapExceeded {
            entries,
            cap: caps.max_cut_entries,
        });
    }
    Ok((n.pow(l as u32), n.pow(l as u32 + 1)))
}

fn boundary_digit_index(states: &[u8], n: usize) -> usize {
    // Row 1 is the least significant digit.
    states
        .iter()
        .rev()
        .fold(0usize, |acc, &s| acc * n + (usize::from(s) - 1))
}

/// Cut-vector engine: sweeps columns left to right. The cut vector holds one
/// amplitude per state tuple of the L horizontal bonds crossing the current
/// vertical cut; applying a column contracts its L vertices top to bottom
/// while threading the column's internal vertical bonds through an extra
/// index slot.
pub fn dwpf_contract<M: LatticeModel>(
    model: &M,
    bc: &BoundaryCondition,
    caps: &EngineCaps,
) -> Result<Complex64, EngineError> {
    let l = model.size();
    if l == 0 {
        return Err(EngineError::EmptyLattice);
    }
    let n = usize::from(model.n_states());
    bc.validate(l, model.n_states())?;
    let (cut_len, work_len) = contraction_sizes(n, l, caps)?;

    let mut cut = vec![Complex64::ZERO; cut_len];
    cut[boundary_digit_index(&bc.left, n)] = Complex64::new(1.0, 0.0);

    let mut work = vec![Complex64::ZERO; work_len];
    let mut next = vec![Complex64::ZERO; work_len];
    for col in 1..=l {
        // Vertical slot (stride N^L) starts as the bond above row 1.
        work.fill(Complex64::ZERO);
        let top = usize::from(bc.top[col - 1]) - 1;
        work[top * cut_len..(top + 1) * cut_len].copy_from_slice(&cut);

        for row in 1..=l {
            let groups = SiteTensor::build(model, col, row).grouped_by_inputs();
            next.fill(Complex64::ZERO);
            let stride = n.pow(row as u32 - 1);
            for (idx, &amp) in work.iter().enumerate() {
                if amp == Complex64::ZERO {
                    continue;
                }
                let vert = idx / cut_len;
                let rest = idx % cut_len;
                let left = (rest / stride) % n;
                let base = rest - left * stride;
                for &(right, bottom, w) in &groups[vert * n + left] {
                    next[bottom * cut_len + base + right * stride] += amp * w;
                }
            }
            std::mem::swap(&mut work, &mut next);
        }

        let bottom = usize::from(bc.bottom[col - 1]) - 1;
        cut.copy_from_slice(&work[bottom * cut_len..(bottom + 1) * cut_len]);
    }
    Ok(cut[boundary_digit_index(&bc.right, n)])
}

/// Largest configuration magnitude `max over configurations of prod |w|`,
/// computed exactly by the same column sweep with (max, *) in place of
/// (+, *). Used as the scale reference when asserting that Z vanishes.
pub fn dwpf_max_abs_term<M: LatticeModel>(
    model: &M,
    bc: &BoundaryCondition,
    caps: &EngineCaps,
) -> Result<f64, EngineError> {
    let l = model.size();
    if l == 0 {
        return Err(EngineError::EmptyLattice);
    }
    let n = usize::from(model.n_states());
    bc.validate(l, model.n_states())?;
    let (cut_len, work_len) = contraction_sizes(n, l, caps)?;

    let mut cut = vec![0.0f64; cut_len];
    cut[boundary_digit_index(&bc.left, n)] = 1.0;

    let mut work = vec![0.0f64; work_len];
    let mut next = vec![0.0f64; work_len];
    for col in 1..=l {
        work.fill(0.0);
        let top = usize::from(bc.top[col - 1]) - 1;
        work[top * cut_len..(top + 1) * cut_len].copy_from_slice(&cut);

        for row in 1..=l {
            let groups = SiteTensor::build(model, col, row).grouped_by_inputs();
            next.fill(0.0);
            let stride = n.pow(row as u32 - 1);
            for (idx, &amp) in work.iter().enumerate() {
                if amp == 0.0 {
                    continue;
                }
                let vert = idx / cut_len;
                let rest = idx % cut_len;
                let left = (rest / stride) % n;
                let base = rest - left * stride;
                for &(right, bottom, w) in &groups[vert * n + left] {
                    let slot = &mut next[bottom * cut_len + base + right * stride];
                    *slot = slot.max(amp * w.norm());
                }
            }
            std::mem::swap(&mut work, &mut next);
        }

        let bottom = usize::from(bc.bottom[col - 1]) - 1;
        cut.copy_from_slice(&work[bottom * cut_len..(bottom + 1) * cut_len]);
    }
    Ok(cut[boundary_digit_index(&bc.right, n)])
}

/// Partition function with the vertical lines rearranged: entry `k` of the
/// permuted lattice carries `(u, alpha)` entry `perm[k]` of the original.
pub fn dwpf_with_permuted_columns_da(
    lattice: &DaLattice<'_>,
    perm: &[usize],
    bc: &BoundaryCondition,
    caps: &EngineCaps,
) -> Result<Complex64, EngineError> {
    dwpf_contract(&lattice.with_permuted_columns(perm)?, bc, caps)
}

/// Same for the graded family.
pub fn dwpf_with_permuted_columns_ps(
    lattice: &PsLattice<'_>,
    perm: &[usize],
    bc: &BoundaryCondition,
    caps: &EngineCaps,
) -> Result<Complex64, EngineError> {
    dwpf_contract(&lattice.with_permuted_columns(perm)?, bc, caps)
}
