//! Subcommand implementations. Inputs are validated before any heavy work
//! starts; rows are computed in parallel and emitted in input order.

use std::path::Path;

use anyhow::{bail, Context, Result};
use magnion::effective_potential::{EffectivePotential, Evaluation};
use magnion::energy_surface::{
    classify_stability, critical_charges, minimize_over_r, total_energy, EquilibriumResult,
    SurfaceConfig,
};
use magnion::oracle_fd::{lowest_eigenvalue, FdGrid};
use magnion::reference::{ComparisonRow, ComparisonSet, CHARGE_STUDY};
use magnion::scaling::{ModelInput, ScaledModel};
use rayon::prelude::*;
use serde_json::json;

use crate::output::{self, Artifact, Sidecar, Table};
use crate::{Command, Which};

pub fn run(command: Command, cfg: &SurfaceConfig) -> Result<()> {
    match command {
        Command::Energy {
            field_gauss,
            distance,
            charge,
            oracle,
            fd_points,
            out,
        } => energy(
            field_gauss,
            distance,
            charge,
            oracle.then_some(fd_points),
            out.as_deref(),
            cfg,
        ),
        Command::Minimize {
            field_gauss,
            charge,
            out,
        } => minimize(&field_gauss, charge, out.as_deref(), cfg),
        Command::Table { which, out } => table(which, out.as_deref(), cfg),
        Command::Stability {
            field_gauss,
            charge,
            no_critical,
            out,
        } => stability(&field_gauss, &charge, !no_critical, out.as_deref(), cfg),
        Command::Figures { out } => figures(&out, cfg),
    }
}

fn config_json(cfg: &SurfaceConfig) -> serde_json::Value {
    let p = &cfg.perturbation;
    json!({
        "evaluation": match cfg.evaluation {
            Evaluation::ClosedForm => "closed_form",
            Evaluation::Quadrature => "quadrature",
        },
        "tolerances": {
            "inner": { "abs": p.inner.abs, "rel": p.inner.rel },
            "outer": { "abs": p.outer.abs, "rel": p.outer.rel },
            "distance_rel": cfg.distance_tolerance,
            "plateau_rel": cfg.plateau_tolerance,
            "charge": cfg.charge_tolerance,
        },
        "distance_scan": { "window_bohr": [cfg.window.0, cfg.window.1], "points": cfg.scan_points },
        "charge_scan": { "window": [cfg.charge_window.0, cfg.charge_window.1], "step": cfg.charge_step },
    })
}

fn sidecar<'a>(
    command: &'a str,
    arguments: serde_json::Value,
    cfg: &SurfaceConfig,
    table: &'a Table,
) -> Sidecar<'a> {
    Sidecar {
        format_version: 1,
        generator: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        arguments,
        config: config_json(cfg),
        columns: &table.header,
        rows: table.rows.len(),
    }
}

fn check_field(field_gauss: f64, charge: f64, cfg: &SurfaceConfig) -> Result<()> {
    ModelInput::new(field_gauss, cfg.window.0, charge)
        .with_context(|| format!("invalid input B={field_gauss} G, Z={charge}"))?;
    Ok(())
}

fn energy(
    field_gauss: f64,
    distance: f64,
    charge: f64,
    fd_points: Option<usize>,
    out: Option<&Path>,
    cfg: &SurfaceConfig,
) -> Result<()> {
    let input = ModelInput::new(field_gauss, distance, charge)?;
    if fd_points.is_some_and(|n| n < 2000) {
        bail!("--fd-points must be at least 2000");
    }
    let t = total_energy(&input, cfg)?;
    let mut header = vec![
        "B_gauss",
        "R_au",
        "Z",
        "L",
        "a",
        "alpha0",
        "e0",
        "first_order",
        "second_order",
        "e2",
        "E2_hartree",
        "quadrature_error",
    ];
    let b = &t.breakdown;
    let mut row = vec![
        output::field(field_gauss),
        output::distance(distance),
        charge.to_string(),
        output::significant(t.model.scale, 6),
        output::significant(t.model.half_separation, 6),
        output::significant(t.ground.alpha, 6),
        output::energy(b.e0),
        output::energy(b.first_order),
        output::energy(b.second_order),
        output::energy(b.e2),
        output::energy(t.total),
        format!("{:.1e}", b.quadrature_error),
    ];
    if let Some(n) = fd_points {
        let w = EffectivePotential::new(&t.model).with_evaluation(cfg.evaluation);
        let grid = FdGrid::for_ground(&t.ground, n)?;
        let lambda = lowest_eigenvalue(&w, &grid).extrapolated;
        header.extend(["lambda0_fd", "oracle_gap_pct"]);
        row.push(output::energy(lambda));
        row.push(output::percent(((b.e2 - lambda) / lambda).abs()));
    }
    let mut table = Table::new(&header);
    table.push(row);
    let args = json!({
        "field_gauss": field_gauss, "distance": distance, "charge": charge, "fd_points": fd_points,
    });
    output::emit(&table, out, sidecar("energy", args, cfg, &table))
}

fn minima(fields: &[f64], charge: f64, cfg: &SurfaceConfig) -> Result<Vec<EquilibriumResult>> {
    for &b in fields {
        check_field(b, charge, cfg)?;
    }
    fields
        .par_iter()
        .map(|&b| {
            minimize_over_r(b, charge, cfg)
                .with_context(|| format!("minimizing at B={b} G, Z={charge}"))
        })
        .collect()
}

fn scale_at(field_gauss: f64, distance: f64, charge: f64) -> Result<f64> {
    Ok(ScaledModel::new(&ModelInput::new(field_gauss, distance, charge)?)?.scale)
}

fn minimize(fields: &[f64], charge: f64, out: Option<&Path>, cfg: &SurfaceConfig) -> Result<()> {
    let results = minima(fields, charge, cfg)?;
    let mut table = Table::new(&[
        "B_gauss",
        "Z",
        "R_eq_au",
        "E2_hartree",
        "L",
        "R_eq_L",
        "R_lo_au",
        "R_hi_au",
        "iterations",
    ]);
    for (&b, m) in fields.iter().zip(&results) {
        let l = scale_at(b, m.distance, charge)?;
        table.push(vec![
            output::field(b),
            charge.to_string(),
            output::distance(m.distance),
            output::energy(m.energy),
            output::significant(l, 6),
            output::significant(m.distance * l, 4),
            output::distance(m.bracket.0),
            output::distance(m.bracket.1),
            m.iterations.to_string(),
        ]);
    }
    let args = json!({ "field_gauss": fields, "charge": charge });
    output::emit(&table, out, sidecar("minimize", args, cfg, &table))
}

/// Published-table tolerances: ±0.01 bohr (±0.002 from 1e13 G), 1.5% in energy.
fn distance_tolerance(field_gauss: f64) -> f64 {
    if field_gauss >= 1e13 {
        0.002
    } else {
        0.01
    }
}
const ENERGY_TOLERANCE: f64 = 0.015;

fn comparison_set(which: Which) -> Option<ComparisonSet> {
    match which {
        Which::Melo => Some(ComparisonSet::Melo),
        Which::Guillou => Some(ComparisonSet::Guillou),
        Which::Lai => Some(ComparisonSet::Lai),
        Which::Heyl => Some(ComparisonSet::Heyl),
        Which::Zstudy => None,
    }
}

/// Published `(B, Z, R, -E)` and optional comparison `(R, -E)`.
struct Published {
    field_gauss: f64,
    charge: f64,
    distance: Option<f64>,
    binding: f64,
    other: Option<(Option<f64>, f64)>,
}

fn published(which: Which) -> Vec<Published> {
    match comparison_set(which) {
        Some(set) => set
            .rows()
            .iter()
            .map(|r: &ComparisonRow| Published {
                field_gauss: r.field_gauss,
                charge: 1.0,
                distance: Some(r.distance),
                binding: r.binding,
                other: Some((r.other_distance, r.other_binding)),
            })
            .collect(),
        None => CHARGE_STUDY
            .iter()
            .map(|r| Published {
                field_gauss: r.field_gauss,
                charge: r.charge,
                // Printed as "0168" in the source table; not compared.
                distance: (!(r.field_gauss == 1e13 && r.charge == 1.4)).then_some(r.distance),
                binding: r.binding,
                other: None,
            })
            .collect(),
    }
}

fn table(which: Which, out: Option<&Path>, cfg: &SurfaceConfig) -> Result<()> {
    let rows = published(which);
    let results: Vec<EquilibriumResult> = rows
        .par_iter()
        .map(|p| {
            minimize_over_r(p.field_gauss, p.charge, cfg)
                .with_context(|| format!("minimizing at B={} G, Z={}", p.field_gauss, p.charge))
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(&[
        "B_gauss",
        "Z",
        "R_eq_au",
        "E2_hartree",
        "R_eq_published_au",
        "E2_published_hartree",
        "R_eq_ref_au",
        "E_ref_hartree",
        "dR_au",
        "dE_pct",
        "R_tol_au",
        "E_tol_pct",
        "within_tol",
    ]);
    for (p, m) in rows.iter().zip(&results) {
        let r_tol = distance_tolerance(p.field_gauss);
        let d_r = p.distance.map(|r| m.distance - r);
        let d_e = (-m.energy - p.binding) / p.binding;
        let ok = d_r.is_none_or(|d| d.abs() <= r_tol) && d_e.abs() <= ENERGY_TOLERANCE;
        table.push(vec![
            output::field(p.field_gauss),
            p.charge.to_string(),
            output::distance(m.distance),
            output::energy(m.energy),
            output::optional(p.distance, output::distance),
            output::energy(-p.binding),
            output::optional(p.other.and_then(|o| o.0), output::distance),
            output::optional(p.other.map(|o| -o.1), output::energy),
            output::optional(d_r, output::distance),
            output::percent(d_e),
            output::distance(r_tol),
            output::percent(ENERGY_TOLERANCE),
            ok.to_string(),
        ]);
    }
    let args = json!({ "which": format!("{which:?}").to_lowercase() });
    output::emit(&table, out, sidecar("table", args, cfg, &table))
}

fn stability(
    fields: &[f64],
    charges: &[f64],
    critical: bool,
    out: Option<&Path>,
    cfg: &SurfaceConfig,
) -> Result<()> {
    for &b in fields {
        for &z in charges {
            check_field(b, z, cfg)?;
        }
    }
    let pairs: Vec<(f64, f64)> = fields
        .iter()
        .flat_map(|&b| charges.iter().map(move |&z| (b, z)))
        .collect();
    let reports = pairs
        .par_iter()
        .map(|&(b, z)| {
            classify_stability(b, z, cfg).with_context(|| format!("classifying B={b} G, Z={z}"))
        })
        .collect::<Result<Vec<_>>>()?;
    let thresholds = if critical {
        fields
            .par_iter()
            .map(|&b| {
                critical_charges(b, cfg)
                    .map(|c| Some((c.bound_state, c.critical)))
                    .with_context(|| format!("critical charges at B={b} G"))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![None; fields.len()]
    };
    let mut table = Table::new(&[
        "B_gauss",
        "Z",
        "classification",
        "R_eq_au",
        "E2_hartree",
        "E_dissoc_hartree",
        "Z_c_bs",
        "Z_cr",
    ]);
    for ((b, z), r) in pairs.iter().zip(&reports) {
        let i = fields
            .iter()
            .position(|f| f == b)
            .expect("field from the list");
        table.push(vec![
            output::field(*b),
            z.to_string(),
            r.classification.to_string(),
            output::optional(r.minimum.map(|m| m.distance), output::distance),
            output::optional(r.minimum.map(|m| m.energy), output::energy),
            output::optional(r.dissociation.map(|d| d.energy), output::energy),
            output::optional(thresholds[i].map(|t| t.0), |x| format!("{x:.2}")),
            output::optional(thresholds[i].map(|t| t.1), |x| format!("{x:.2}")),
        ]);
    }
    let args = json!({ "field_gauss": fields, "charge": charges, "critical": critical });
    output::emit(&table, out, sidecar("stability", args, cfg, &table))
}

/// Every field of the four comparison tables, ascending, without repeats.
pub fn default_fields() -> Vec<f64> {
    let mut fields: Vec<f64> = ComparisonSet::ALL.iter().flat_map(|s| s.fields()).collect();
    fields.sort_by(f64::total_cmp);
    fields.dedup();
    fields
}

/// Upper end of the low-field detail figure.
const DETAIL_MAX_FIELD: f64 = 1.2e12;

fn figures(dir: &Path, cfg: &SurfaceConfig) -> Result<()> {
    if !dir.is_dir() {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
    }
    let fields = default_fields();
    let results = minima(&fields, 1.0, cfg)?;
    let scales: Vec<f64> = fields
        .iter()
        .zip(&results)
        .map(|(&b, m)| scale_at(b, m.distance, 1.0))
        .collect::<Result<_>>()?;

    let binding_header = ["B_gauss", "L", "L2", "minus_E2_hartree"];
    let mut fig1 = Table::new(&binding_header);
    let mut fig2 = Table::new(&binding_header);
    let mut fig3 = Table::new(&["B_gauss", "L", "R_eq_au"]);
    let mut fig4 = Table::new(&["B_gauss", "L", "R_eq_L"]);
    for ((&b, m), &l) in fields.iter().zip(&results).zip(&scales) {
        let binding_row = vec![
            output::field(b),
            output::significant(l, 6),
            output::significant(l * l, 6),
            output::energy(-m.energy),
        ];
        if b <= DETAIL_MAX_FIELD {
            fig2.push(binding_row.clone());
        }
        fig1.push(binding_row);
        fig3.push(vec![
            output::field(b),
            output::significant(l, 6),
            output::distance(m.distance),
        ]);
        fig4.push(vec![
            output::field(b),
            output::significant(l, 6),
            output::significant(m.distance * l, 4),
        ]);
    }
    let args = json!({ "field_gauss": fields, "charge": 1.0 });
    let artifacts: Vec<Artifact<'_>> = [
        ("fig1.csv", &fig1),
        ("fig2.csv", &fig2),
        ("fig3.csv", &fig3),
        ("fig4.csv", &fig4),
    ]
    .into_iter()
    .map(|(name, table)| Artifact {
        path: dir.join(name),
        table,
        sidecar: sidecar("figures", args.clone(), cfg, table),
    })
    .collect();
    output::write_all(&artifacts)
}
