//! K-ary hierarchical partitioning of an axis-aligned box domain.
//!
//! At depth `h` the domain is tiled by `K^h` same-sized cells. A cell is
//! addressed by [`CellId`] as `(depth, index)`; the children of `(h, i)` are
//! exactly `(h+1, K*i + k)` for `k` in `0..K`. One coordinate is split into
//! `K` equal sub-intervals per depth, cycling through the axes `(h mod p)`,
//! so the scheme works in any dimension with a constant arity.
//!
//! Cells are half-open boxes `[lo, hi)`. Along each axis, the cell touching
//! the domain's upper boundary also contains that boundary, so every point
//! of the (closed) domain belongs to exactly one cell per depth. With this
//! convention an optimum sitting on a split boundary is owned by the cell on
//! its right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Address of one cell: `(depth, index)` with `0 <= index < K^depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId {
    pub depth: u32,
    pub index: u128,
}

impl CellId {
    pub const ROOT: CellId = CellId { depth: 0, index: 0 };

    pub fn new(depth: u32, index: u128) -> Self {
        CellId { depth, index }
    }

    /// Parent address, or `None` for the root.
    pub fn parent(&self, arity: u32) -> Option<CellId> {
        if self.depth == 0 {
            None
        } else {
            Some(CellId::new(self.depth - 1, self.index / arity as u128))
        }
    }
}

/// Axis-aligned box given by per-coordinate intervals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Region {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Config("region needs matching, nonempty bounds".into()));
        }
        for j in 0..lo.len() {
            if !(lo[j].is_finite() && hi[j].is_finite() && lo[j] < hi[j]) {
                return Err(Error::Config(format!("bad interval on axis {j}")));
            }
        }
        Ok(Region { lo, hi })
    }

    /// The unit box `[0,1)^dim`.
    pub fn unit(dim: usize) -> Self {
        Region { lo: vec![0.0; dim], hi: vec![1.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn width(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    /// Geometric center, the representative point of the cell.
    pub fn center(&self) -> Vec<f64> {
        (0..self.dim()).map(|j| self.lo[j] + self.width(j) * 0.5).collect()
    }

    /// Membership with the upper boundary included (domain convention).
    pub fn contains_closed(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && (0..self.dim()).all(|j| self.lo[j] <= x[j] && x[j] <= self.hi[j])
    }

    /// Edge `k` of the K-way split along `axis`; `k == arity` returns the
    /// upper bound exactly so sibling cells tile the parent with no gap.
    pub(crate) fn split_edge(&self, axis: usize, k: u32, arity: u32) -> f64 {
        if k == 0 {
            self.lo[axis]
        } else if k == arity {
            self.hi[axis]
        } else {
            self.lo[axis] + self.width(axis) * (k as f64 / arity as f64)
        }
    }

    /// Sub-box `k` of the K-way split along `axis`.
    pub(crate) fn child_along(&self, axis: usize, k: u32, arity: u32) -> Region {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        lo[axis] = self.split_edge(axis, k, arity);
        hi[axis] = self.split_edge(axis, k + 1, arity);
        Region { lo, hi }
    }
}

/// Regular K-ary partitioning: depth `h` splits axis `h mod p`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardPartitioning {
    domain: Region,
    arity: u32,
}

impl StandardPartitioning {
    pub fn new(domain: Region, arity: u32) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Config("arity must be at least 2".into()));
        }
        Ok(StandardPartitioning { domain, arity })
    }

    pub fn domain(&self) -> &Region {
        &self.domain
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Axis split when expanding a depth-`h` cell.
    pub fn split_axis(&self, depth: u32) -> usize {
        depth as usize % self.dim()
    }

    /// `K^depth` if it is representable, i.e. the number of cells at `depth`.
    pub fn cell_count(&self, depth: u32) -> Option<u128> {
        (self.arity as u128).checked_pow(depth)
    }

    fn validate(&self, cell: &CellId) -> Result<()> {
        let count = self.cell_count(cell.depth).ok_or(Error::DepthOverflow(cell.depth))?;
        if cell.index < count {
            Ok(())
        } else {
            Err(Error::InvalidAddress { depth: cell.depth, index: cell.index })
        }
    }

    /// The `K` children of `cell`, in sub-interval order.
    pub fn children(&self, cell: &CellId) -> Result<Vec<CellId>> {
        self.validate(cell)?;
        self.cell_count(cell.depth + 1).ok_or(Error::DepthOverflow(cell.depth + 1))?;
        let base = cell.index * self.arity as u128;
        Ok((0..self.arity as u128)
            .map(|k| CellId::new(cell.depth + 1, base + k))
            .collect())
    }

    /// Box obtained by applying the split rule along the root-to-cell path.
    pub fn region(&self, cell: &CellId) -> Result<Region> {
        self.validate(cell)?;
        // Base-K digits of the index, most significant first, give the
        // child choices from the root down.
        let mut digits = vec![0u32; cell.depth as usize];
        let mut rest = cell.index;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % self.arity as u128) as u32;
            rest /= self.arity as u128;
        }
        let mut region = self.domain.clone();
        for (h, &k) in digits.iter().enumerate() {
            region = region.child_along(h % self.dim(), k, self.arity);
        }
        Ok(region)
    }

    /// Center of the cell's region; the point sampled for this cell.
    pub fn representative(&self, cell: &CellId) -> Result<Vec<f64>> {
        Ok(self.region(cell)?.center())
    }

    /// The unique depth-`depth` cell whose half-open region contains `x`.
    pub fn locate(&self, x: &[f64], depth: u32) -> Result<CellId> {
        if !self.domain.contains_closed(x) {
            return Err(Error::OutsideDomain);
        }
        self.cell_count(depth).ok_or(Error::DepthOverflow(depth))?;
        let mut region = self.domain.clone();
        let mut index: u128 = 0;
        for h in 0..depth {
            let axis = h as usize % self.dim();
            // Scan the split edges so the chosen sub-interval agrees
            // bit-for-bit with `region`.
            let mut k = self.arity - 1;
            for cand in 0..self.arity - 1 {
                if x[axis] < region.split_edge(axis, cand + 1, self.arity) {
                    k = cand;
                    break;
                }
            }
            index = index * self.arity as u128 + k as u128;
            region = region.child_along(axis, k, self.arity);
        }
        Ok(CellId::new(depth, index))
    }
}
