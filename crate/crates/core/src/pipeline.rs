//! Orchestration: build the algebra, run every verification stage, and
//! assemble the machine-readable report.

use std::time::Instant;

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{build_full, AlgebraData, AlgebraSpec};
use crate::coercivity::{coercivity_constant, growth_report, pairing_batch};
use crate::comparison::{
    a_s_profile, comparison_check, comparison_params_from_fit, default_grid, radial_hessian,
    riccati_oracle, RadialProfile,
};
use crate::error::{Error, Result};
use crate::geometry::{
    curvature_survey, curvature_tensor, fiber_bracket_orthogonality,
    fiber_second_fundamental_form, fit_table_scale, jacobi_operator, killing_field_residual,
    koszul_connection, Connection, CurvatureModel, HomogeneousSpace, OptimizerConfig, TableFit,
};
use crate::harmonic::{
    constraint_map, horizontality_batch, invariant_harmonic_space, symmetrized_control_batch,
    vertical_constancy_check,
};
use crate::identities::verify_identities;
use crate::report::{
    AlgebraDocument, AlgebraEcho, CheckRecord, Section, VerificationReport,
};
use crate::tol;

/// Which part of the pipeline a CLI invocation asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Algebra,
    Identities,
    Curvature,
    Fibration,
    Harmonic,
    Comparison,
    Coercivity,
    All,
}

impl Stage {
    fn wants(self, section: &str) -> bool {
        match self {
            Stage::All => true,
            Stage::Algebra => section == "construction",
            Stage::Identities => section == "identities",
            Stage::Curvature => section == "curvature",
            Stage::Fibration => section == "fibration",
            Stage::Harmonic => section == "harmonic",
            Stage::Comparison => section == "comparison",
            Stage::Coercivity => section == "coercivity" || section == "growth",
        }
    }

    fn needs_curvature(self) -> bool {
        matches!(
            self,
            Stage::Curvature | Stage::Comparison | Stage::Coercivity | Stage::All
        )
    }

    fn needs_profiles(self) -> bool {
        matches!(self, Stage::Comparison | Stage::Coercivity | Stage::All)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: AlgebraSpec,
    pub xi: Option<Vec<f64>>,
    pub seed: u64,
    pub tol_scale: f64,
    /// random 2-planes sampled by the curvature survey
    pub samples: usize,
    /// gradient restarts per extremum
    pub restarts: usize,
    /// random radial directions for the comparison stage
    pub directions: usize,
    /// random frames for the stress-energy dual-route check
    pub frames: usize,
    /// random forms for the horizontality batch
    pub forms: usize,
}

impl RunConfig {
    pub fn new(spec: AlgebraSpec) -> Self {
        Self {
            spec,
            xi: None,
            seed: 0,
            tol_scale: 1.0,
            samples: 100_000,
            restarts: 50,
            directions: 200,
            frames: 1000,
            forms: 1000,
        }
    }
}

pub struct PipelineOutput {
    pub report: VerificationReport,
    pub fit: Option<TableFit>,
    /// first few direction profiles, for CSV export
    pub export_profiles: Vec<RadialProfile>,
    pub algebra_doc: AlgebraDocument,
}

struct CurvatureArtifacts {
    cm: CurvatureModel,
    fit: Option<TableFit>,
    fit_error: Option<String>,
}

/// Run the stages `stage` asks for (plus their prerequisites) and collect
/// the requested sections into one report.
pub fn run(cfg: &RunConfig, stage: Stage) -> Result<PipelineOutput> {
    if stage.needs_curvature() && !cfg.spec.table_applicable() {
        return Err(Error::Config(format!(
            "{}: the curvature table requires q >= 2 for the SO family; \
             only the algebra, identities, fibration, and harmonic stages apply",
            cfg.spec.label()
        )));
    }

    let t0 = Instant::now();
    let data = build_full(&cfg.spec, cfg.xi.as_deref())?;
    let construction_ms = t0.elapsed().as_secs_f64() * 1e3;

    let echo = AlgebraEcho::new(&cfg.spec, &data.xi_coefficients);
    let mut report = VerificationReport::new(echo.clone(), cfg.seed, cfg.tol_scale);
    let ts = cfg.tol_scale;

    if stage.wants("construction") {
        let mut section = construction_section(&data, ts);
        section.notes = Some(serde_json::json!({
            "warnings": data.warnings,
            "index_ranges": {
                "n": data.cb.n, "n1": data.cb.n1(), "r": data.cb.r,
                "r1": data.cb.r1, "r2": data.cb.r2,
            },
        }));
        report.push_section(section, construction_ms);
    }

    if stage.wants("identities") {
        let t = Instant::now();
        let section = identities_section(&data, ts);
        report.push_section(section, t.elapsed().as_secs_f64() * 1e3);
    }

    let mut curvature: Option<CurvatureArtifacts> = None;
    if stage.needs_curvature() {
        let t = Instant::now();
        let (section, artifacts) = curvature_section(&data, cfg)?;
        if stage.wants("curvature") {
            report.push_section(section, t.elapsed().as_secs_f64() * 1e3);
        }
        curvature = Some(artifacts);
    }

    if stage.wants("fibration") {
        let t = Instant::now();
        let section = fibration_section(&data, ts)?;
        report.push_section(section, t.elapsed().as_secs_f64() * 1e3);
    }

    if stage.wants("harmonic") {
        let t = Instant::now();
        let section = harmonic_section(&data, cfg);
        report.push_section(section, t.elapsed().as_secs_f64() * 1e3);
    }

    let mut profiles: Vec<RadialProfile> = Vec::new();
    let mut export_profiles: Vec<RadialProfile> = Vec::new();
    if stage.needs_profiles() {
        let artifacts = curvature.as_ref().expect("curvature runs before profiles");
        let t = Instant::now();
        let (section, built) = comparison_section(&data, cfg, artifacts)?;
        if stage.wants("comparison") {
            report.push_section(section, t.elapsed().as_secs_f64() * 1e3);
        }
        export_profiles = built.iter().take(3).cloned().collect();
        profiles = built;
    }

    if stage.wants("coercivity") && !profiles.is_empty() {
        let t = Instant::now();
        let (section, c0) = coercivity_section(&data, cfg, &profiles);
        report.push_section(section, t.elapsed().as_secs_f64() * 1e3);

        let t = Instant::now();
        let section = growth_section(c0, &profiles[0]);
        report.push_section(section, t.elapsed().as_secs_f64() * 1e3);
    }

    let algebra_doc = algebra_document(&data, &echo);
    Ok(PipelineOutput {
        fit: curvature.and_then(|c| c.fit),
        report,
        export_profiles,
        algebra_doc,
    })
}

fn construction_section(data: &AlgebraData, ts: f64) -> Section {
    let mut s = Section::new("construction");
    let spec = &data.spec;
    s.checks.push(CheckRecord::residual(
        "dimension_formula",
        "dim g matches the family dimension formula",
        (data.mb.dim() as f64 - spec.expected_dim() as f64).abs(),
        0.5,
    ));
    s.checks.push(CheckRecord::residual(
        "bracket_closure",
        "every [X_a, X_b] expands over the basis",
        data.mb.closure_residual,
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::lower_bound(
        "basis_independence",
        "smallest singular value of the flattened basis",
        data.mb.min_singular_value(),
        1e-10,
    ));
    s.checks.push(CheckRecord::residual(
        "theta_invariance_of_killing",
        "B(theta X, theta Y) = B(X, Y)",
        data.cartan.theta_compatibility,
        tol::CONSTRUCTION * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "base_dimension",
        "dim m matches the family",
        (data.cb.n as f64 - spec.expected_base_dim() as f64).abs(),
        0.5,
    ));
    s.checks.push(CheckRecord::lower_bound(
        "standing_assumption",
        "dim V = r1 + r2 + 1 < r = dim K",
        (data.cb.r - data.cb.v_dim()) as f64,
        0.5,
    ));
    s.checks.push(CheckRecord::residual(
        "compact_cartan",
        "the maximal torus of k centralizes only itself in g (rank G = rank K)",
        (data.full_centralizer_dim as f64 - (data.centralizer.r1 + 1) as f64).abs(),
        0.5,
    ));
    let dim = data.cb.dim();
    let mut gram_res = 0.0_f64;
    for a in 0..dim {
        for b in 0..dim {
            let expected = if a == b { data.cb.killing_sign(a) } else { 0.0 };
            gram_res = gram_res.max((data.st.gram_b[(a, b)] - expected).abs());
        }
    }
    s.checks.push(CheckRecord::residual(
        "canonical_killing_gram",
        "B(X_i, X_j) = delta_ij on m and -delta on k",
        gram_res,
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "bracket_block_pattern",
        "only c_{alpha beta}^gamma, c_ij^alpha, c_{j alpha}^i, c_{alpha j}^i are nonzero",
        data.st.forbidden_block_residual(),
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "canonical_closure",
        "max |[X_a, X_b] - c_ab^c X_c| over the canonical basis",
        data.st.closure_identity_residual(&data.cb),
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "lowered_total_antisymmetry",
        "c_abc = -c_bac = -c_acb",
        data.st.lower_antisymmetry_residual(),
        tol::IDENTITY * ts,
    ));
    s
}

fn identities_section(data: &AlgebraData, ts: f64) -> Section {
    let mut s = Section::new("identities");
    let id_report = verify_identities(&data.st, ts);
    s.notes = Some(serde_json::json!({
        "structure_hash": id_report.structure_hash,
    }));
    for check in id_report.checks {
        s.checks.push(CheckRecord::residual(
            &check.name,
            &check.statement,
            check.residual,
            check.tolerance,
        ));
    }
    s
}

fn base_curvature(data: &AlgebraData) -> Result<(HomogeneousSpace, Connection, CurvatureModel)> {
    let space = HomogeneousSpace::base(&data.st)?;
    let conn = koszul_connection(&space, &data.st)?;
    let cm = curvature_tensor(&space, &data.st, &conn)?;
    Ok((space, conn, cm))
}

fn curvature_section(
    data: &AlgebraData,
    cfg: &RunConfig,
) -> Result<(Section, CurvatureArtifacts)> {
    let ts = cfg.tol_scale;
    let (_, conn, cm) = base_curvature(data)?;
    let optimizer = OptimizerConfig {
        restarts: cfg.restarts,
        ..OptimizerConfig::default()
    };
    let mut survey = curvature_survey(&cm, &data.st, cfg.samples, &optimizer, cfg.seed);
    let (fit, fit_error) = match fit_table_scale(&survey, &data.spec) {
        Ok(f) => {
            survey.fitted_scale = Some(f.scale);
            (Some(f), None)
        }
        Err(e) => (None, Some(e.to_string())),
    };

    let mut s = Section::new("curvature");
    s.checks.push(CheckRecord::residual(
        "symmetric_connection_vanishes",
        "Gamma = 0 on the symmetric complement m",
        conn.max_coefficient(),
        tol::CONSTRUCTION * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "curvature_symmetries",
        "R_abcd = -R_bacd = -R_abdc = R_cdab",
        cm.symmetry_residual,
        tol::CURVATURE * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "first_bianchi",
        "R_abcd + R_bcad + R_cabd = 0",
        cm.bianchi_residual,
        tol::CURVATURE * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "sectional_nonpositivity",
        "max K over sampled and optimized planes <= 0",
        survey.max_k,
        tol::NONPOSITIVITY,
    ));
    s.checks.push(CheckRecord::residual(
        "einstein_property",
        "Ric = rho g",
        survey.einstein_residual,
        tol::EINSTEIN * ts,
    ));
    match &fit {
        Some(f) => {
            s.checks.push(CheckRecord::residual(
                "table_ricci_cross_check",
                "the scale fitted on min K forces the table's Ricci value",
                f.ricci_relative_error,
                tol::FIT_RICCI_REL,
            ));
            let ratio_err = (f.min_ratio - f.expected_min_ratio).abs() / f.expected_min_ratio.abs();
            s.checks.push(CheckRecord::residual(
                "min_curvature_ratio",
                "scale-invariant min K / rho matches the table row",
                ratio_err,
                tol::SURVEY_RATIO_REL,
            ));
            if f.expected_max_ratio != 0.0 {
                let ratio_err =
                    (f.max_ratio - f.expected_max_ratio).abs() / f.expected_max_ratio.abs();
                s.checks.push(CheckRecord::residual(
                    "max_curvature_ratio",
                    "scale-invariant max K / rho matches the pinched table row",
                    ratio_err,
                    tol::SURVEY_RATIO_REL,
                ));
            } else {
                // rank >= 2: a flat plane must exist and certify max K = 0
                let witness = survey
                    .flat_plane
                    .as_ref()
                    .map(|w| w.bracket_norm_sq)
                    .unwrap_or(f64::MAX);
                s.checks.push(CheckRecord::residual(
                    "flat_plane_witness",
                    "an orthonormal pair with [X, Y] = 0 realizes K = 0",
                    witness,
                    1e-16,
                ));
            }
            if f.row.sec_min == f.row.sec_max {
                s.checks.push(CheckRecord::residual(
                    "constant_curvature_spread",
                    "sampled K has vanishing standard deviation after the fit",
                    f.fitted_sample_std,
                    tol::NONPOSITIVITY,
                ));
            }
        }
        None => {
            s.checks.push(CheckRecord::failed(
                "table_scale_fit",
                fit_error.as_deref().unwrap_or("scale fit failed"),
            ));
        }
    }
    s.notes = Some(serde_json::json!({
        "survey": survey,
        "fit": fit,
    }));
    Ok((
        s,
        CurvatureArtifacts { cm, fit, fit_error },
    ))
}

fn fibration_section(data: &AlgebraData, ts: f64) -> Result<Section> {
    let space = HomogeneousSpace::total(&data.st)?;
    let conn = koszul_connection(&space, &data.st)?;
    let mut s = Section::new("fibration");
    s.checks.push(CheckRecord::residual(
        "reductive_complement",
        "[v, m + (k (-) v)] stays in the complement",
        space.ad_invariance_residual,
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "isotropy_metric_invariance",
        "ad(v) acts skew on the complement",
        space.metric_invariance_residual,
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "metric_compatibility",
        "Gamma_ab^c + Gamma_ac^b = 0",
        conn.metric_compatibility_residual,
        tol::CONSTRUCTION * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "torsion_free",
        "Gamma_ab^c - Gamma_ba^c matches the bracket",
        conn.torsion_residual(&data.st),
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "totally_geodesic_fibers",
        "second fundamental form of K/V vanishes",
        fiber_second_fundamental_form(&space, &conn),
        tol::IDENTITY * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "fiber_bracket_orthogonality",
        "<[X_s, X_t]_h, X_i> = 0 because [k,k] stays in k",
        fiber_bracket_orthogonality(&space, &data.st),
        tol::IDENTITY * ts,
    ));
    let mut killing_max = 0.0_f64;
    for fiber_index in data.cb.fiber_range() {
        killing_max = killing_max.max(killing_field_residual(&space, &data.st, fiber_index));
    }
    s.checks.push(CheckRecord::residual(
        "fiber_fields_are_killing",
        "the Lie derivative of the metric along every projected fiber field vanishes",
        killing_max,
        tol::IDENTITY * ts,
    ));
    Ok(s)
}

fn harmonic_section(data: &AlgebraData, cfg: &RunConfig) -> Section {
    let ts = cfg.tol_scale;
    let mut s = Section::new("harmonic");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6861_726d);
    s.checks.push(CheckRecord::residual(
        "horizontality",
        "sum_ij c_{jsi} u_i u_j = 0 for every form and fiber direction",
        horizontality_batch(&data.st, cfg.forms, &mut rng),
        tol::ANTISYMMETRY_EXACT * ts,
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6374_726c);
    s.checks.push(CheckRecord::lower_bound(
        "symmetrized_negative_control",
        "the same contraction with |c| entries stays far from zero",
        symmetrized_control_batch(&data.st, cfg.forms, &mut rng),
        tol::NEGATIVE_CONTROL_MIN,
    ));
    let space = invariant_harmonic_space(&data.st);
    s.checks.push(CheckRecord::residual(
        "invariant_solution_dimension",
        "the invariant closedness constraints admit only u = 0",
        space.dimension as f64,
        0.5,
    ));
    s.checks.push(CheckRecord::lower_bound(
        "constraint_smallest_singular_value",
        "the constraint matrix is uniformly nondegenerate",
        space.smallest_singular_value,
        tol::HARMONIC_SV_MIN,
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6c69_6e65);
    let n1 = data.cb.n1();
    let mut linearity = 0.0_f64;
    for _ in 0..20 {
        let u: Vec<f64> = (0..n1).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..n1).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (a, b): (f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let combo: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        let lhs = constraint_map(&data.st, &combo);
        let lu = constraint_map(&data.st, &u);
        let lv = constraint_map(&data.st, &v);
        for ((l, x), y) in lhs.iter().zip(&lu).zip(&lv) {
            linearity = linearity.max((l - (a * x + b * y)).abs());
        }
    }
    s.checks.push(CheckRecord::residual(
        "constraint_linearity",
        "the constraint map respects superposition",
        linearity,
        tol::ANTISYMMETRY_EXACT * ts,
    ));
    let constancy = vertical_constancy_check(&format!("{} total space", data.spec.label()));
    s.notes = Some(serde_json::json!({
        "solution_space": space,
        "vertical_constancy": constancy,
    }));
    s
}

fn comparison_section(
    data: &AlgebraData,
    cfg: &RunConfig,
    artifacts: &CurvatureArtifacts,
) -> Result<(Section, Vec<RadialProfile>)> {
    let ts = cfg.tol_scale;
    let mut s = Section::new("comparison");
    let grid = default_grid();

    // oracle agreement for the canonical curvature values
    let mut oracle_worst = 0.0_f64;
    for k in [0.0, -0.5, -1.0, -2.0, -4.0] {
        let oracle = riccati_oracle(k, &grid)?;
        for (g, &r) in grid.iter().enumerate() {
            let closed = radial_hessian(k, r)?;
            oracle_worst = oracle_worst.max((oracle[g] - closed).abs());
        }
    }
    s.checks.push(CheckRecord::residual(
        "riccati_oracle_agreement",
        "closed-form mu coth(mu r) matches the integrated Riccati equation",
        oracle_worst,
        tol::ORACLE * ts,
    ));

    let fit = artifacts.fit.as_ref().ok_or_else(|| {
        Error::ScaleFit(
            artifacts
                .fit_error
                .clone()
                .unwrap_or_else(|| "table fit unavailable".into()),
        )
    })?;
    let n = data.cb.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6469_7273);
    let directions = cfg.directions.max(1);
    let mut profiles = Vec::with_capacity(directions);
    let mut jacobi_max = f64::NEG_INFINITY;
    let mut flat_margin = f64::INFINITY;
    let mut monotone = f64::NEG_INFINITY;
    let mut a_s_min = f64::INFINITY;
    let mut fd_margin = f64::INFINITY;
    let mut radial_coeff_min = f64::INFINITY;
    for _ in 0..directions {
        let mut v =
            DVector::from_fn(n, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
        v /= v.norm();
        let jd = jacobi_operator(&artifacts.cm, &v)?;
        jacobi_max = jacobi_max.max(*jd.eigenvalues.last().unwrap());
        let fitted: Vec<f64> = jd.eigenvalues.iter().map(|k| k / fit.scale).collect();
        let profile =
            RadialProfile::new(v.iter().cloned().collect(), &fitted, grid.clone())?;
        flat_margin = flat_margin.min(profile.flat_bound_margin());
        monotone = monotone.max(profile.monotonicity_margin());
        for s_idx in 0..profile.a_s.len() {
            let a = a_s_profile(&profile, s_idx);
            a_s_min = a_s_min.min(a.min_value);
            fd_margin = fd_margin.min(a.differential_margin);
        }
        radial_coeff_min = radial_coeff_min.min(comparison_check(&profile));
        profiles.push(profile);
    }

    s.checks.push(CheckRecord::residual(
        "jacobi_nonpositivity",
        "every radial sectional curvature is nonpositive",
        jacobi_max,
        tol::CURVATURE * ts,
    ));
    s.checks.push(CheckRecord::lower_bound(
        "hessian_flat_lower_bound",
        "lambda_i(r) >= 1/r against the flat model",
        flat_margin,
        -tol::COMPARISON * ts,
    ));
    s.checks.push(CheckRecord::residual(
        "hessian_monotonicity",
        "each lambda_i decreases along r",
        monotone,
        1e-15,
    ));
    s.checks.push(CheckRecord::lower_bound(
        "a_s_positivity",
        "A_s(r) > 0 at every grid point and direction",
        a_s_min,
        0.0,
    ));
    s.checks.push(CheckRecord::lower_bound(
        "a_s_differential_inequality",
        "dA_s/dr >= -A_s Delta r by finite differences",
        fd_margin,
        -tol::COERCIVITY_SLACK * ts,
    ));
    let bound = (n as f64 - 2.0) / 2.0;
    s.checks.push(CheckRecord::lower_bound(
        "radial_coefficient_bound",
        "(1/2) sum r lambda - 1/2 >= (n-2)/2",
        radial_coeff_min,
        bound - tol::COMPARISON * ts,
    ));
    let params = comparison_params_from_fit(fit, n)?;
    s.checks.push(CheckRecord::lower_bound(
        "ricci_gap",
        "b^2 - 2 a^2 >= 0 for the fitted curvature bounds",
        params.ricci_gap(),
        -tol::COERCIVITY_SLACK * ts,
    ));
    s.notes = Some(serde_json::json!({
        "comparison_params": params,
        "directions": directions,
        "grid": { "min": grid[0], "max": grid[grid.len()-1], "points": grid.len() },
    }));
    Ok((s, profiles))
}

fn coercivity_section(
    data: &AlgebraData,
    cfg: &RunConfig,
    profiles: &[RadialProfile],
) -> (Section, f64) {
    let ts = cfg.tol_scale;
    let mut s = Section::new("coercivity");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6672_616d);
    let mut pairing_worst = 0.0_f64;
    let per_profile = (cfg.frames / profiles.len().max(1)).max(1);
    for profile in profiles {
        pairing_worst = pairing_worst.max(pairing_batch(profile, per_profile, &mut rng));
    }
    s.checks.push(CheckRecord::residual(
        "stress_energy_dual_route",
        "direct and grouped evaluations of <S_omega, nabla X> agree (scaled by operand size)",
        pairing_worst,
        tol::PAIRING * ts,
    ));
    let n = data.cb.n as f64;
    let bound = ((n - 2.0) / 2.0).min(0.5);
    match coercivity_constant(profiles) {
        Ok(c) => {
            s.checks.push(CheckRecord::lower_bound(
                "coercivity_constant",
                "<S_omega, nabla X> >= C0 |omega|^2 with C0 >= min((n-2)/2, 1/2)",
                c.c0,
                bound - tol::COERCIVITY_SLACK * ts,
            ));
            s.notes = Some(serde_json::json!({ "coercivity": c }));
            (s, c.c0)
        }
        Err(e) => {
            s.checks
                .push(CheckRecord::failed("coercivity_constant", &e.to_string()));
            (s, 0.0)
        }
    }
}

fn growth_section(c0: f64, profile: &RadialProfile) -> Section {
    let mut s = Section::new("growth");
    if c0.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        s.checks.push(CheckRecord::failed(
            "growth_divergence",
            "no positive coercivity constant available",
        ));
        return s;
    }
    // the smallest grid radius at which the integrated coercivity clears a
    // fixed threshold stands in for the existential R0
    let r0 = profile
        .grid
        .iter()
        .cloned()
        .find(|&r| c0 * r >= 1.0)
        .unwrap_or(*profile.grid.last().unwrap());
    match growth_report(c0, r0) {
        Ok(g) => {
            let mut worst = 0.0_f64;
            for entry in &g.entries {
                let independent = 2.0 * c0 * (entry.radius / r0).ln();
                worst = worst.max((entry.integral_lower_bound - independent).abs());
            }
            s.checks.push(CheckRecord::residual(
                "logarithmic_partial_integrals",
                "boundary bound 2C/R integrates to 2C ln(R/R0)",
                worst,
                tol::PAIRING,
            ));
            s.checks.push(CheckRecord::lower_bound(
                "integral_divergence",
                "the lower bounds grow without bound, so |omega| = 0",
                if g.integral_diverges { 1.0 } else { 0.0 },
                0.5,
            ));
            s.notes = Some(serde_json::json!({
                "growth": g,
                "r0_rule": "smallest grid radius r with C0 * r >= 1",
            }));
        }
        Err(e) => {
            s.checks
                .push(CheckRecord::failed("growth_divergence", &e.to_string()));
        }
    }
    s
}

fn algebra_document(data: &AlgebraData, echo: &AlgebraEcho) -> AlgebraDocument {
    let side = data.cb.eta.nrows();
    let basis_row_major: Vec<Vec<f64>> = data
        .cb
        .basis
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(side * side);
            for i in 0..side {
                for j in 0..side {
                    row.push(x[(i, j)]);
                }
            }
            row
        })
        .collect();
    AlgebraDocument {
        schema: crate::report::SCHEMA_VERSION,
        algebra: echo.clone(),
        matrix_size: side,
        dim: data.mb.dim(),
        n: data.cb.n,
        n1: data.cb.n1(),
        r: data.cb.r,
        r1: data.cb.r1,
        r2: data.cb.r2,
        closure_residual: data.mb.closure_residual,
        min_basis_singular_value: data.mb.min_singular_value(),
        structure_expansion_residual: data.st.expansion_residual,
        basis_row_major,
    }
}
