//! Invariant-metric geometry of the two homogeneous quotients: the base
//! G/K (symmetric) and the total space G/V (complement m + (k (-) v)).

mod connection;
mod curvature;
mod fibration;
mod survey;
mod table;

pub use connection::{koszul_connection, Connection};
pub use curvature::{
    curvature_tensor, jacobi_operator, ricci_tensor, sectional_curvature, CurvatureModel,
    JacobiData, R4,
};
pub use fibration::{fiber_bracket_orthogonality, fiber_second_fundamental_form, killing_field_residual};
pub use survey::{curvature_survey, FlatWitness, OptimizerConfig, CurvatureReport};
pub use table::{fit_table_scale, table_row, TableFit, TableRow};

use crate::algebra::{IndexRanges, StructureTensor};
use crate::error::{Error, Result};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    /// G/K with horizontal complement m
    Base,
    /// G/V with complement m + (k (-) v)
    Total,
}

/// A reductive quotient in canonical coordinates. The complement occupies
/// the leading canonical indices and carries the metric Gram = identity;
/// the isotropy algebra occupies the rest.
pub struct HomogeneousSpace {
    pub kind: SpaceKind,
    pub ranges: IndexRanges,
    pub complement_dim: usize,
    /// max isotropy component of [isotropy, complement]
    pub ad_invariance_residual: f64,
    /// max |c_{phi c}^d + c_{phi d}^c| over isotropy phi and complement c, d
    pub metric_invariance_residual: f64,
}

impl HomogeneousSpace {
    pub fn base(st: &StructureTensor) -> Result<Self> {
        Self::with_complement(st, SpaceKind::Base, st.ranges.n)
    }

    pub fn total(st: &StructureTensor) -> Result<Self> {
        Self::with_complement(st, SpaceKind::Total, st.ranges.n1())
    }

    /// Construct with an explicit complement size (the leading canonical
    /// indices), validating reductivity and metric invariance.
    pub fn with_complement(
        st: &StructureTensor,
        kind: SpaceKind,
        complement_dim: usize,
    ) -> Result<Self> {
        let dim = st.dim();
        let mut ad_res = 0.0_f64;
        let mut metric_res = 0.0_f64;
        for phi in complement_dim..dim {
            for c in 0..complement_dim {
                for d in complement_dim..dim {
                    ad_res = ad_res.max(st.c_up.get(phi, c, d).abs());
                }
                for d in 0..complement_dim {
                    metric_res =
                        metric_res.max((st.c_up.get(phi, c, d) + st.c_up.get(phi, d, c)).abs());
                }
            }
        }
        if ad_res > tol::IDENTITY {
            return Err(Error::NotReductive(ad_res));
        }
        Ok(Self {
            kind,
            ranges: st.ranges,
            complement_dim,
            ad_invariance_residual: ad_res,
            metric_invariance_residual: metric_res,
        })
    }

    pub fn total_dim(&self) -> usize {
        self.ranges.dim()
    }
}
