//! Residual checks for the structure-constant identities of the canonical
//! basis: the Killing contraction, total antisymmetry of the lowered
//! tensor, the two block contractions it forces, and the Jacobi identity
//! (equivalently d^2 = 0 for the invariant coframe).

use serde::Serialize;

use crate::algebra::StructureTensor;
use crate::tol;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    /// the identity being checked, written out
    pub statement: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &str, statement: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    /// FNV-1a fingerprint of the structure tensor and Killing Gram,
    /// identifying the exact basis the residuals were computed on
    pub structure_hash: String,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

/// Deterministic fingerprint of the tensor data (bit patterns of c_ab^c
/// and B_ab in index order).
pub fn structure_fingerprint(st: &StructureTensor) -> String {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |value: f64| {
        for byte in value.to_bits().to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    let dim = st.dim();
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                feed(st.c_up.get(a, b, c));
            }
            feed(st.gram_b[(a, b)]);
        }
    }
    format!("{h:016x}")
}

impl IdentityReport {
    pub fn residual(&self, name: &str) -> f64 {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.residual)
            .unwrap_or(f64::NAN)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// max |sum_ef c_ae^f c_bf^e - B_ab|
pub fn killing_contraction_residual(st: &StructureTensor) -> f64 {
    let dim = st.dim();
    let mut worst = 0.0_f64;
    for a in 0..dim {
        for b in 0..dim {
            let mut s = 0.0;
            for e in 0..dim {
                for f in 0..dim {
                    s += st.c_up.get(a, e, f) * st.c_up.get(b, f, e);
                }
            }
            worst = worst.max((s - st.gram_b[(a, b)]).abs());
        }
    }
    worst
}

/// max |sum_{alpha,k} c_{alpha i k} c_{alpha j k} - delta_ij / 2| over the
/// m-block (alpha runs over k, the summed k over m).
pub fn mixed_contraction_residual(st: &StructureTensor) -> f64 {
    let n = st.ranges.n;
    let dim = st.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for alpha in n..dim {
                for k in 0..n {
                    s += st.c_low.get(alpha, i, k) * st.c_low.get(alpha, j, k);
                }
            }
            let expected = if i == j { 0.5 } else { 0.0 };
            worst = worst.max((s - expected).abs());
        }
    }
    worst
}

/// max |sum_{i,j} c_{i alpha j} c_{i beta j}
///      + sum_{gamma,delta} c_{gamma alpha delta} c_{gamma beta delta}
///      - delta_{alpha beta}| over the k-block.
pub fn compact_contraction_residual(st: &StructureTensor) -> f64 {
    let n = st.ranges.n;
    let dim = st.dim();
    let mut worst = 0.0_f64;
    for alpha in n..dim {
        for beta in n..dim {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += st.c_low.get(i, alpha, j) * st.c_low.get(i, beta, j);
                }
            }
            for gamma in n..dim {
                for delta in n..dim {
                    s += st.c_low.get(gamma, alpha, delta) * st.c_low.get(gamma, beta, delta);
                }
            }
            let expected = if alpha == beta { 1.0 } else { 0.0 };
            worst = worst.max((s - expected).abs());
        }
    }
    worst
}

/// max |c_ab^e c_ce^f + c_ca^e c_be^f + c_bc^e c_ae^f| (sum over e).
pub fn jacobi_residual(st: &StructureTensor) -> f64 {
    let dim = st.dim();
    let mut worst = 0.0_f64;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for f in 0..dim {
                    let mut s = 0.0;
                    for e in 0..dim {
                        s += st.c_up.get(a, b, e) * st.c_up.get(c, e, f)
                            + st.c_up.get(c, a, e) * st.c_up.get(b, e, f)
                            + st.c_up.get(b, c, e) * st.c_up.get(a, e, f);
                    }
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    worst
}

/// Evaluate all five identities at the suite tolerance (scaled by
/// `tol_scale`).
pub fn verify_identities(st: &StructureTensor, tol_scale: f64) -> IdentityReport {
    let tolerance = tol::SUITE * tol_scale;
    let checks = vec![
        IdentityCheck::new(
            "killing_contraction",
            "B_ab = sum_ef c_ae^f c_bf^e",
            killing_contraction_residual(st),
            tolerance,
        ),
        IdentityCheck::new(
            "lowered_antisymmetry",
            "c_abc is antisymmetric in every index pair",
            st.lower_antisymmetry_residual(),
            tolerance,
        ),
        IdentityCheck::new(
            "mixed_contraction",
            "sum_{alpha,k} c_{alpha i k} c_{alpha j k} = delta_ij / 2",
            mixed_contraction_residual(st),
            tolerance,
        ),
        IdentityCheck::new(
            "compact_contraction",
            "sum_{i,j} c_{i alpha j} c_{i beta j} + sum_{gamma,delta} c_{gamma alpha delta} c_{gamma beta delta} = delta_{alpha beta}",
            compact_contraction_residual(st),
            tolerance,
        ),
        IdentityCheck::new(
            "jacobi",
            "c_ab^e c_ce^f + c_ca^e c_be^f + c_bc^e c_ae^f = 0",
            jacobi_residual(st),
            tolerance,
        ),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    IdentityReport {
        structure_hash: structure_fingerprint(st),
        checks,
        all_pass,
    }
}
