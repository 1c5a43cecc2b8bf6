//! Command implementations: figure data files, sweeps, capacity tables
//! and the fuzz harness.

use fesflow::bounds::{
    bound_ratio_general, bound_ratio_tight, sweep, BoundKind, GridRelation, SweepGrid,
};
use fesflow::partitions::{
    asymptotic_distinct_count_ln, capacity_boson_asym, capacity_bound, capacity_fermion_asym,
    capacity_ratio_curve, exact_capacity, Multiplicity, PartitionTable,
};
use fesflow::qinfo::{
    generalized_holevo2_check, random_ensemble, random_povm, random_unitary, verify_holevo,
    TwoWayChannel,
};
use fesflow::stat::StatParam;
use fesflow::transport::{ChannelSetup, Reservoir};
use fesflow::units::PLANCK_H;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{GridView, RunConfig, UsageError};
use crate::csvout::Csv;
use crate::matrixfile::{assemble_scenario, parse_matrices, Scenario};

/// What a command produced: the CSV text, a one-line summary, and
/// whether every check passed.
pub struct CommandResult {
    /// CSV contents, ready to write.
    pub csv: String,
    /// One-line summary for standard output.
    pub summary: String,
    /// `false` means a bound violation or failed check (exit status 1).
    pub ok: bool,
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (lo.ln(), hi.ln());
    if n <= 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

struct RatioTally {
    max_ratio: f64,
    violations: usize,
    errors: usize,
    rows: usize,
}

impl RatioTally {
    fn new() -> RatioTally {
        RatioTally {
            max_ratio: f64::NEG_INFINITY,
            violations: 0,
            errors: 0,
            rows: 0,
        }
    }

    fn ok(&self) -> bool {
        self.violations == 0 && self.errors == 0
    }
}

/// Figure-style sweep: one curve per `(g, parameter)` pair.
fn figure_sweep(
    curves: &[(StatParam, f64)],
    relation: impl Fn(f64) -> GridRelation,
    kind: BoundKind,
    axis: &[f64],
    param_name: &str,
) -> (Csv, RatioTally) {
    let mut csv = Csv::new(&["g", param_name, "axis", "ratio", "satisfied"]);
    let mut tally = RatioTally::new();
    for &(g, param) in curves {
        let grid = SweepGrid {
            g_values: vec![g],
            axis: axis.to_vec(),
            relation: relation(param),
        };
        for row in sweep(&grid, kind) {
            tally.rows += 1;
            match row.outcome {
                Ok(report) => {
                    tally.max_ratio = tally.max_ratio.max(report.ratio);
                    if !report.satisfied {
                        tally.violations += 1;
                    }
                    csv.row(vec![
                        g.to_string().into(),
                        param.into(),
                        row.axis.into(),
                        report.ratio.into(),
                        report.satisfied.into(),
                    ]);
                }
                Err(_) => {
                    tally.errors += 1;
                    csv.row(vec![
                        g.to_string().into(),
                        param.into(),
                        row.axis.into(),
                        f64::NAN.into(),
                        false.into(),
                    ]);
                }
            }
        }
    }
    (csv, tally)
}

/// `fig1`: general-bound ratio against `T_L/mu_L` for degenerate
/// channels with a scaled right band edge.
pub fn fig1(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["points", "axis_min", "axis_max", "edge_scale"])?;
    let axis = log_grid(
        grid.f64("axis_min", 0.01)?,
        grid.f64("axis_max", 10.0)?,
        grid.u64("points", 49)? as usize,
    );
    let edge_scale = grid.f64("edge_scale", 100.0)?;
    let curves = [
        (StatParam::FERMI, 1.0),
        (StatParam::FERMI, 1.01),
        (StatParam::FERMI, 1.1),
        (StatParam::SEMION, 1.0),
    ];
    let (csv, tally) = figure_sweep(
        &curves,
        |mu_ratio| GridRelation::ScaledRightEdge {
            edge_scale,
            mu_ratio,
        },
        BoundKind::General,
        &axis,
        "mu_ratio",
    );
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "fig1: {} rows, max ratio {:.9}, violations {}, errors {}",
            tally.rows, tally.max_ratio, tally.violations, tally.errors
        ),
        ok: tally.ok(),
    })
}

/// `fig2`: tight-bound ratio against the boson band edge `-mu/T_L` for
/// three temperature ratios.
pub fn fig2(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["points", "axis_min", "axis_max"])?;
    let axis = log_grid(
        grid.f64("axis_min", 0.01)?,
        grid.f64("axis_max", 10.0)?,
        grid.u64("points", 49)? as usize,
    );
    let curves = [
        (StatParam::BOSE, 0.9),
        (StatParam::BOSE, 0.5),
        (StatParam::BOSE, 0.1),
    ];
    let (csv, tally) = figure_sweep(
        &curves,
        |t_ratio| GridRelation::SharedPotentialEdgeAxis { t_ratio },
        BoundKind::Tight,
        &axis,
        "t_ratio",
    );
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "fig2: {} rows, max ratio {:.9}, violations {}, errors {}",
            tally.rows, tally.max_ratio, tally.violations, tally.errors
        ),
        ok: tally.ok(),
    })
}

/// `fig3`: tight-bound ratio against `T_L/mu` for three statistics at
/// `T_R = T_L/2`.
pub fn fig3(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["points", "axis_min", "axis_max"])?;
    let axis = log_grid(
        grid.f64("axis_min", 0.01)?,
        grid.f64("axis_max", 10.0)?,
        grid.u64("points", 49)? as usize,
    );
    let curves = [
        (StatParam::FERMI, 0.5),
        (StatParam::SEMION, 0.5),
        (StatParam::new(1, 4).expect("valid fraction"), 0.5),
    ];
    let (csv, tally) = figure_sweep(
        &curves,
        |t_ratio| GridRelation::SharedPotentialTemperatureAxis { t_ratio },
        BoundKind::Tight,
        &axis,
        "t_ratio",
    );
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "fig3: {} rows, max ratio {:.9}, violations {}, errors {}",
            tally.rows, tally.max_ratio, tally.violations, tally.errors
        ),
        ok: tally.ok(),
    })
}

/// `fig4`: the capacity-coefficient ratio curve over rational `g`.
pub fn fig4(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["max_den"])?;
    let max_den = grid.u64("max_den", 8)? as u32;
    let gs = StatParam::farey_sequence(max_den);
    let rows = match capacity_ratio_curve(&gs) {
        Ok(rows) => rows,
        Err(e) => return Ok(failed_result("fig4", &format!("quadrature failed: {e}"))),
    };

    let mut csv = Csv::new(&["g", "ratio"]);
    let mut monotone = true;
    let mut prev = f64::INFINITY;
    for (g, ratio) in &rows {
        if *ratio >= prev {
            monotone = false;
        }
        prev = *ratio;
        csv.row(vec![g.to_string().into(), (*ratio).into()]);
    }
    let first = rows.first().map(|r| r.1).unwrap_or(f64::NAN);
    let last = rows.last().map(|r| r.1).unwrap_or(f64::NAN);
    let endpoints_ok = first == 1.0 && (last - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6;
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "fig4: {} rational g values, endpoints ({:.6}, {:.6}), strictly decreasing: {}",
            rows.len(),
            first,
            last,
            monotone
        ),
        ok: monotone && endpoints_ok,
    })
}

fn failed_result(name: &str, message: &str) -> CommandResult {
    CommandResult {
        csv: String::new(),
        summary: format!("{name}: FAILED ({message})"),
        ok: false,
    }
}

/// `bounds-sweep`: randomized setups over statistics, temperature ratio
/// and chemical potential; emits the bounds module's row format.
pub fn bounds_sweep(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["points", "kind"])?;
    let points = grid.u64("points", 10_000)?;
    let kind = match grid.text("kind").unwrap_or("general") {
        "general" => BoundKind::General,
        "tight" => BoundKind::Tight,
        other => {
            return Err(UsageError(format!(
                "grid key `kind`: expected general|tight, got `{other}`"
            )))
        }
    };

    let gs: Vec<StatParam> = [
        (0u32, 1u32),
        (1, 5),
        (1, 4),
        (1, 3),
        (1, 2),
        (2, 3),
        (3, 4),
        (1, 1),
    ]
    .iter()
    .map(|&(n, d)| StatParam::new(n, d).expect("valid fraction"))
    .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut csv = Csv::new(&["g", "axis", "ratio", "satisfied"]);
    let mut tally = RatioTally::new();
    for i in 0..points {
        let g = gs[(i % gs.len() as u64) as usize];
        let t_l = rng.random_range(0.2..2.0);
        let t_ratio = rng.random_range(1e-4..0.999);
        let mu_over_t: f64 = if g.is_bose() {
            -rng.random_range(1e-3..5.0)
        } else {
            rng.random_range(-5.0..200.0)
        };
        let setup = ChannelSetup {
            g,
            left: Reservoir::new(t_l, mu_over_t * t_l),
            right: Reservoir::new(t_l * t_ratio, mu_over_t * t_l),
        };
        let outcome = match kind {
            BoundKind::General => bound_ratio_general(&setup),
            BoundKind::Tight => bound_ratio_tight(&setup),
        };
        tally.rows += 1;
        match outcome {
            Ok(report) => {
                tally.max_ratio = tally.max_ratio.max(report.ratio);
                if !report.satisfied {
                    tally.violations += 1;
                }
                csv.row(vec![
                    g.to_string().into(),
                    mu_over_t.into(),
                    report.ratio.into(),
                    report.satisfied.into(),
                ]);
            }
            Err(_) => {
                tally.errors += 1;
                csv.row(vec![
                    g.to_string().into(),
                    mu_over_t.into(),
                    f64::NAN.into(),
                    false.into(),
                ]);
            }
        }
    }
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "bounds-sweep ({kind}): {} setups, max ratio {:.12}, violations {}, errors {}",
            tally.rows, tally.max_ratio, tally.violations, tally.errors
        ),
        ok: tally.ok(),
    })
}

/// `capacity`: exact and asymptotic capacities over an `N` grid, with
/// the universal ceiling.
pub fn capacity(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["nmax", "time"])?;
    let nmax = grid.u64("nmax", 10_000)?.max(10);
    let time = grid.f64("time", 1.0)?;
    if time <= 0.0 {
        return Err(UsageError("grid key `time` must be positive".into()));
    }

    let mut ns: Vec<u64> = [10u64, 31, 100, 316, 1_000, 3_162, 10_000, 31_623, 100_000]
        .into_iter()
        .filter(|&n| n < nmax)
        .collect();
    ns.push(nmax);

    let mut csv = Csv::new(&[
        "N",
        "T",
        "boson_exact",
        "boson_asym",
        "fermion_exact",
        "fermion_asym",
        "universal_bound",
    ]);
    let mut worst_rel: f64 = 0.0;
    let mut below_bound = true;
    for &n in &ns {
        let p = n as f64 * PLANCK_H / (time * time);
        let boson_exact = match exact_capacity(n, Multiplicity::Unlimited, time) {
            Ok(c) => c.bits_per_time,
            Err(e) => {
                return Ok(failed_result(
                    "capacity",
                    &format!("count failed at N={n}: {e}"),
                ))
            }
        };
        let fermion_exact = match exact_capacity(n, Multiplicity::AtMost(1), time) {
            Ok(c) => c.bits_per_time,
            Err(e) => {
                return Ok(failed_result(
                    "capacity",
                    &format!("count failed at N={n}: {e}"),
                ))
            }
        };
        let boson_asym = capacity_boson_asym(p, time)
            .map(|c| c.bits_per_time)
            .unwrap_or(f64::NAN);
        let fermion_asym = capacity_fermion_asym(p, time)
            .map(|c| c.bits_per_time)
            .unwrap_or(f64::NAN);
        let ceiling = capacity_bound(p);
        below_bound &= boson_exact < ceiling
            && fermion_exact < ceiling
            && boson_asym < ceiling
            && fermion_asym < ceiling;
        if n == nmax && nmax >= 1_000 {
            worst_rel = ((boson_asym - boson_exact) / boson_exact)
                .abs()
                .max(((fermion_asym - fermion_exact) / fermion_exact).abs());
        }
        csv.row(vec![
            n.into(),
            time.into(),
            boson_exact.into(),
            boson_asym.into(),
            fermion_exact.into(),
            fermion_asym.into(),
            ceiling.into(),
        ]);
    }
    let consistent = nmax < 1_000 || worst_rel <= 0.01;
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "capacity: {} rows, asym vs exact at N={}: {:.4e} rel, below universal bound: {}",
            ns.len(),
            nmax,
            worst_rel,
            below_bound
        ),
        ok: consistent && below_bound,
    })
}

/// `partitions`: exact distinct-part counts against the asymptotic
/// formula over an `N` grid.
pub fn partitions(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["nmax", "multiplicity"])?;
    let nmax = grid.u64("nmax", 10_000)?.max(1);
    let mult = match grid.text("multiplicity").unwrap_or("1") {
        "unlimited" => Multiplicity::Unlimited,
        text => Multiplicity::AtMost(text.parse::<u32>().map_err(|_| {
            UsageError(format!(
                "grid key `multiplicity`: expected a positive integer or `unlimited`, got `{text}`"
            ))
        })?),
    };
    if let Multiplicity::AtMost(m) = mult {
        if m == 0 {
            return Err(UsageError(
                "grid key `multiplicity` must be positive".into(),
            ));
        }
        if m >= 2 {
            eprintln!(
                "note: for 0 < g < 1 the multiplicity cap is necessary but not complete; capped counts are upper bounds"
            );
        }
    }

    // geometric grid with about six points per decade
    let mut ns: Vec<u64> = Vec::new();
    let mut x = 1.0f64;
    while (x as u64) < nmax {
        let n = x as u64;
        if ns.last() != Some(&n) {
            ns.push(n);
        }
        x *= 10f64.powf(1.0 / 6.0);
    }
    ns.push(nmax);

    let table = match PartitionTable::up_to(nmax) {
        Ok(t) => t,
        Err(e) => return Ok(failed_result("partitions", &e.to_string())),
    };

    let distinct = mult == Multiplicity::AtMost(1);
    let mut csv = Csv::new(&["N", "exact", "asymptotic", "relerr"]);
    let mut log_rel_at_max = f64::NAN;
    for &n in &ns {
        let exact = match table.count(n, mult) {
            Ok(c) => c,
            Err(e) => return Ok(failed_result("partitions", &e.to_string())),
        };
        // the asymptotic column is the distinct-parts formula; for other
        // caps there is no closed form in scope and the columns are nan
        let (asym, relerr) = if distinct {
            let ln_asym = asymptotic_distinct_count_ln(n);
            let ln_exact = exact.log2() * std::f64::consts::LN_2;
            let relerr = (ln_asym - ln_exact).exp() - 1.0;
            if n == nmax && ln_exact > 0.0 {
                log_rel_at_max = ((ln_asym - ln_exact) / ln_exact).abs();
            }
            (ln_asym.exp(), relerr)
        } else {
            (f64::NAN, f64::NAN)
        };
        csv.row(vec![
            n.into(),
            exact.to_string().into(),
            asym.into(),
            relerr.into(),
        ]);
    }

    let ok = !distinct || nmax < 1_000 || log_rel_at_max <= 0.005;
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "partitions: {} rows up to N={}, log-domain agreement at N={}: {:.4e}",
            ns.len(),
            nmax,
            nmax,
            log_rel_at_max
        ),
        ok,
    })
}

/// `qinfo-fuzz`: randomized Holevo checks, or a scenario file check.
pub fn qinfo_fuzz(cfg: &RunConfig) -> Result<CommandResult, UsageError> {
    let grid = GridView::new(&cfg.grid, &["kind", "scenario"])?;

    if let Some(path) = grid.text("scenario") {
        return scenario_check(path);
    }

    let kind = grid.text("kind").unwrap_or("both");
    let (run_oneway, run_twoway) = match kind {
        "oneway" => (true, false),
        "twoway" => (false, true),
        "both" => (true, true),
        other => {
            return Err(UsageError(format!(
                "grid key `kind`: expected oneway|twoway|both, got `{other}`"
            )))
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut csv = Csv::new(&["trial", "kind", "info", "bound", "holds"]);
    let mut violations = 0usize;
    let mut rows = 0usize;

    if run_oneway {
        for trial in 0..cfg.trials {
            let dim = rng.random_range(2..=6);
            let ensemble = random_ensemble(dim, rng.random_range(2..=6), &mut rng);
            let povm = random_povm(dim, rng.random_range(2..=2 * dim), &mut rng);
            let check = verify_holevo(&ensemble, &povm).expect("sampled objects are valid");
            if !check.holds {
                violations += 1;
            }
            rows += 1;
            csv.row(vec![
                trial.into(),
                "oneway".into(),
                check.mutual_info.into(),
                check.chi.into(),
                check.holds.into(),
            ]);
        }
    }
    if run_twoway {
        let trials = (cfg.trials / 10).max(1);
        for trial in 0..trials {
            let d_l = rng.random_range(2..=3);
            let d_r = rng.random_range(2..=3);
            let ch = TwoWayChannel::new(
                random_ensemble(d_l, rng.random_range(2..=4), &mut rng),
                random_ensemble(d_r, rng.random_range(2..=4), &mut rng),
                random_unitary(d_l * d_r, &mut rng),
                random_povm(d_l, rng.random_range(2..=4), &mut rng),
                random_povm(d_r, rng.random_range(2..=4), &mut rng),
            )
            .expect("sampled channel is valid");
            let check = generalized_holevo2_check(&ch).expect("sampled channel evaluates");
            if !check.holds {
                violations += 1;
            }
            rows += 1;
            csv.row(vec![
                trial.into(),
                "twoway".into(),
                check.info.into(),
                check.rhs.into(),
                check.holds.into(),
            ]);
        }
    }

    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!("qinfo-fuzz: {rows} trials, violations: {violations}"),
        ok: violations == 0,
    })
}

fn scenario_check(path: &str) -> Result<CommandResult, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read scenario `{path}`: {e}")))?;
    let matrices =
        parse_matrices(&text).map_err(|e| UsageError(format!("scenario `{path}`: {e}")))?;
    let scenario =
        assemble_scenario(&matrices).map_err(|e| UsageError(format!("scenario `{path}`: {e}")))?;

    let mut csv = Csv::new(&["trial", "kind", "info", "bound", "holds"]);
    let (kind, info, bound, holds) = match scenario {
        Scenario::OneWay(ensemble, povm) => {
            let check = verify_holevo(&ensemble, &povm)
                .map_err(|e| UsageError(format!("scenario `{path}`: {e}")))?;
            ("scenario-oneway", check.mutual_info, check.chi, check.holds)
        }
        Scenario::TwoWay(channel) => {
            let check = generalized_holevo2_check(&channel)
                .map_err(|e| UsageError(format!("scenario `{path}`: {e}")))?;
            ("scenario-twoway", check.info, check.rhs, check.holds)
        }
    };
    csv.row(vec![
        0u64.into(),
        kind.into(),
        info.into(),
        bound.into(),
        holds.into(),
    ]);
    Ok(CommandResult {
        csv: csv.contents().to_owned(),
        summary: format!(
            "qinfo-fuzz: scenario {kind}, info {info:.6}, bound {bound:.6}, violations: {}",
            usize::from(!holds)
        ),
        ok: holds,
    })
}
