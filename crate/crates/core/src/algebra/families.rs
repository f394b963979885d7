//! Matrix realizations of the two families of noncompact algebras.
//!
//! `so(p,2q)` is realized as real (p+2q)-square matrices X with
//! X^T eta + eta X = 0, eta = diag(I_p, -I_{2q}).
//!
//! `sp(m,n)` is the quaternionic-unitary algebra realized over the reals:
//! a quaternion q = a + bi + cj + dk embeds as the 4x4 left-multiplication
//! matrix L(q) in the basis (1, i, j, k), and an (m+n)-square quaternionic
//! matrix becomes a 4(m+n)-square real matrix of L-blocks. Quaternionic
//! conjugate-transpose realifies to the real transpose (L(conj q) = L(q)^T),
//! so the defining condition X* eta + eta X = 0 carries over verbatim with
//! eta = diag(I_{4m}, -I_{4n}).
//!
//! The basis is ordered m-part first, then the compact part, so the Cartan
//! involution theta(X) = eta X eta is diagonal on it from the start.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::BasisExpander;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    So,
    Sp,
}

/// A concrete algebra: family plus the two positive integer parameters
/// (p, q for so(p,2q); m, n for sp(m,n)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub param1: u32,
    pub param2: u32,
}

impl AlgebraSpec {
    pub fn so(p: u32, q: u32) -> Self {
        Self {
            family: Family::So,
            param1: p,
            param2: q,
        }
    }

    pub fn sp(m: u32, n: u32) -> Self {
        Self {
            family: Family::Sp,
            param1: m,
            param2: n,
        }
    }

    /// Hard validation; returns warnings for parameters that construct fine
    /// but fall outside the curvature-table hypotheses.
    pub fn validate(&self) -> Result<Vec<String>> {
        let (a, b) = (self.param1, self.param2);
        if a == 0 || b == 0 {
            return Err(Error::InvalidSpec(format!(
                "{} requires positive parameters, got ({a}, {b})",
                self.family_name()
            )));
        }
        match self.family {
            Family::So => {
                if a + 2 * b < 3 {
                    return Err(Error::InvalidSpec(
                        "so(p,2q) with p+2q < 3 is not semisimple".into(),
                    ));
                }
                let mut warnings = Vec::new();
                if b < 2 {
                    warnings.push(format!(
                        "so({a},{}) has q = {b} < 2: outside the curvature-table hypotheses",
                        2 * b
                    ));
                }
                Ok(warnings)
            }
            Family::Sp => {
                if a + b < 2 {
                    return Err(Error::InvalidSpec(
                        "sp(m,n) with m+n < 2 is trivial for this toolkit".into(),
                    ));
                }
                Ok(Vec::new())
            }
        }
    }

    /// Whether the curvature table applies to this space.
    pub fn table_applicable(&self) -> bool {
        match self.family {
            Family::So => self.param2 >= 2,
            Family::Sp => self.param1 >= 1 && self.param2 >= 1,
        }
    }

    fn family_name(&self) -> &'static str {
        match self.family {
            Family::So => "so(p,2q)",
            Family::Sp => "sp(m,n)",
        }
    }

    /// Size of the real matrices realizing the algebra.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::So => (self.param1 + 2 * self.param2) as usize,
            Family::Sp => 4 * (self.param1 + self.param2) as usize,
        }
    }

    /// Real dimension of the algebra.
    pub fn expected_dim(&self) -> usize {
        match self.family {
            Family::So => {
                let n = (self.param1 + 2 * self.param2) as usize;
                n * (n - 1) / 2
            }
            Family::Sp => {
                let t = (self.param1 + self.param2) as usize;
                t * (2 * t + 1)
            }
        }
    }

    /// Dimension of the m-block (the base space G/K).
    pub fn expected_base_dim(&self) -> usize {
        match self.family {
            Family::So => (self.param1 * 2 * self.param2) as usize,
            Family::Sp => 4 * (self.param1 * self.param2) as usize,
        }
    }

    /// Rank of the compact part k (dimension of its maximal torus).
    pub fn compact_rank(&self) -> usize {
        match self.family {
            Family::So => (self.param1 / 2 + self.param2) as usize,
            Family::Sp => (self.param1 + self.param2) as usize,
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::So => format!("so({},{})", self.param1, 2 * self.param2),
            Family::Sp => format!("sp({},{})", self.param1, self.param2),
        }
    }

    /// Human label of the associated symmetric space, as the curvature
    /// table prints it.
    pub fn type_label(&self) -> String {
        match self.family {
            Family::So => format!(
                "SO({p},{q2})/SO({p})xSO({q2})",
                p = self.param1,
                q2 = 2 * self.param2
            ),
            Family::Sp => format!(
                "Sp({m},{n})/Sp({m})xSp({n})",
                m = self.param1,
                n = self.param2
            ),
        }
    }
}

/// The signature matrix eta; theta(X) = eta X eta is the Cartan involution.
pub fn eta(spec: &AlgebraSpec) -> DMatrix<f64> {
    let dim = spec.ambient_dim();
    let plus = match spec.family {
        Family::So => spec.param1 as usize,
        Family::Sp => 4 * spec.param1 as usize,
    };
    DMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            0.0
        } else if i < plus {
            1.0
        } else {
            -1.0
        }
    })
}

/// 4x4 left-multiplication matrix of the quaternion unit `u`
/// (0 = 1, 1 = i, 2 = j, 3 = k) in the basis (1, i, j, k).
fn quaternion_unit(u: usize) -> DMatrix<f64> {
    let rows: [[f64; 4]; 4] = match u {
        0 => [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        1 => [
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ],
        2 => [
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
        ],
        3 => [
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ],
        _ => unreachable!("quaternion unit index"),
    };
    DMatrix::from_fn(4, 4, |i, j| rows[i][j])
}

fn place_block(target: &mut DMatrix<f64>, r: usize, s: usize, block: &DMatrix<f64>) {
    target.view_mut((4 * r, 4 * s), (4, 4)).copy_from(block);
}

fn so_basis(p: usize, q2: usize) -> Vec<DMatrix<f64>> {
    let n = p + q2;
    let mut basis = Vec::new();
    // m-part: symmetric off-block generators E_{u,p+v} + E_{p+v,u}
    for u in 0..p {
        for v in 0..q2 {
            let mut x = DMatrix::zeros(n, n);
            x[(u, p + v)] = 1.0;
            x[(p + v, u)] = 1.0;
            basis.push(x);
        }
    }
    // k-part: so(p) then so(2q)
    for u in 0..p {
        for v in (u + 1)..p {
            let mut x = DMatrix::zeros(n, n);
            x[(u, v)] = 1.0;
            x[(v, u)] = -1.0;
            basis.push(x);
        }
    }
    for u in 0..q2 {
        for v in (u + 1)..q2 {
            let mut x = DMatrix::zeros(n, n);
            x[(p + u, p + v)] = 1.0;
            x[(p + v, p + u)] = -1.0;
            basis.push(x);
        }
    }
    basis
}

fn sp_basis(m: usize, n: usize) -> Vec<DMatrix<f64>> {
    let t = m + n;
    let dim = 4 * t;
    let mut basis = Vec::new();
    // m-part: X_{rs} = q, X_{sr} = conj(q) for r < m <= s
    for r in 0..m {
        for s in m..t {
            for u in 0..4 {
                let mut x = DMatrix::zeros(dim, dim);
                let l = quaternion_unit(u);
                place_block(&mut x, r, s, &l);
                place_block(&mut x, s, r, &l.transpose());
                basis.push(x);
            }
        }
    }
    // k-part: sp(m) then sp(n); diagonals carry the imaginary units,
    // pairs carry all four units with X_{sr} = -conj(X_{rs}).
    for (lo, hi) in [(0, m), (m, t)] {
        for r in lo..hi {
            for u in 1..4 {
                let mut x = DMatrix::zeros(dim, dim);
                place_block(&mut x, r, r, &quaternion_unit(u));
                basis.push(x);
            }
        }
        for r in lo..hi {
            for s in (r + 1)..hi {
                for u in 0..4 {
                    let mut x = DMatrix::zeros(dim, dim);
                    let l = quaternion_unit(u);
                    place_block(&mut x, r, s, &l);
                    place_block(&mut x, s, r, &(-l.transpose()));
                    basis.push(x);
                }
            }
        }
    }
    basis
}

/// Explicit basis of the standard maximal torus of k.
///
/// For so(p) + so(2q) these are the commuting 2x2 rotation generators;
/// for sp(m) + sp(n) the diagonal imaginary units i E_{rr}. In both cases
/// the span is maximal abelian in k, which `MatrixBasis::validate_torus`
/// certifies numerically.
pub fn torus_basis(spec: &AlgebraSpec) -> Vec<DMatrix<f64>> {
    let dim = spec.ambient_dim();
    let mut out = Vec::new();
    match spec.family {
        Family::So => {
            let p = spec.param1 as usize;
            let q2 = 2 * spec.param2 as usize;
            for t in 0..p / 2 {
                let mut x = DMatrix::zeros(dim, dim);
                x[(2 * t, 2 * t + 1)] = 1.0;
                x[(2 * t + 1, 2 * t)] = -1.0;
                out.push(x);
            }
            for t in 0..q2 / 2 {
                let mut x = DMatrix::zeros(dim, dim);
                x[(p + 2 * t, p + 2 * t + 1)] = 1.0;
                x[(p + 2 * t + 1, p + 2 * t)] = -1.0;
                out.push(x);
            }
        }
        Family::Sp => {
            let t = (spec.param1 + spec.param2) as usize;
            for r in 0..t {
                let mut x = DMatrix::zeros(dim, dim);
                place_block(&mut x, r, r, &quaternion_unit(1));
                out.push(x);
            }
        }
    }
    out
}

/// A closed, independent basis of the realized matrix algebra.
pub struct MatrixBasis {
    pub spec: AlgebraSpec,
    pub basis: Vec<DMatrix<f64>>,
    pub eta: DMatrix<f64>,
    pub closure_residual: f64,
    expander: BasisExpander,
}

impl MatrixBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Smallest singular value of the flattened basis matrix.
    pub fn min_singular_value(&self) -> f64 {
        self.expander.min_singular_value()
    }

    pub fn bracket(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
        x * y - y * x
    }

    pub fn theta(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        &self.eta * x * &self.eta
    }

    /// Expansion over the stored basis; returns coefficients and the
    /// max-norm of the out-of-span component.
    pub fn expand(&self, x: &DMatrix<f64>) -> (nalgebra::DVector<f64>, f64) {
        self.expander.expand(x)
    }
}

/// Construct the matrix realization of `spec`.
pub fn build_algebra(spec: &AlgebraSpec) -> Result<MatrixBasis> {
    spec.validate()?;
    let basis = match spec.family {
        Family::So => so_basis(spec.param1 as usize, 2 * spec.param2 as usize),
        Family::Sp => sp_basis(spec.param1 as usize, spec.param2 as usize),
    };
    debug_assert_eq!(basis.len(), spec.expected_dim());
    let expander = BasisExpander::new(&basis);
    if expander.min_singular_value() <= 1e-10 {
        return Err(Error::DependentBasis(expander.min_singular_value()));
    }
    let mut closure_residual: f64 = 0.0;
    for a in 0..basis.len() {
        for b in (a + 1)..basis.len() {
            let br = MatrixBasis::bracket(&basis[a], &basis[b]);
            let (_, res) = expander.expand(&br);
            closure_residual = closure_residual.max(res);
        }
    }
    if closure_residual >= tol::IDENTITY {
        return Err(Error::NotClosed {
            residual: closure_residual,
            tol: tol::IDENTITY,
        });
    }
    Ok(MatrixBasis {
        spec: *spec,
        eta: eta(spec),
        basis,
        closure_residual,
        expander,
    })
}
