use ecred_core::channels::ChannelSpec;
use ecred_core::energy::{build_ledger, EnergyContext};
use ecred_core::estimator::{upper_bound_ecred, EstimatorConfig, UpperBound};
use ecred_core::lowerbounds::lb_for_channel;
use ecred_core::protocols::oracle::oracle_step;
use ecred_core::protocols::step;
use ecred_core::{BellDiagonalState, ChannelKind, ProtocolKind};
use rayon::prelude::*;

use crate::args::{
    Common, ConstantsArgs, EstimatorArgs, LowerBoundArgs, StepArgs, SweepArgs, SweepVariable, UpperBoundArgs,
};
use crate::error::CliError;
use crate::output::{num, Report, Table};

pub const MAX_GRID_POINTS: usize = 1_000_000;

fn context(common: &Common) -> Result<EnergyContext, CliError> {
    Ok(EnergyContext::new(
        common.temp_k(),
        common.wavelength_nm() * 1e-9,
        common.p_cnot(),
    )?)
}

fn echo_common(r: &mut Report, c: &Common) {
    let tag = |given: bool| if given { "" } else { " (default)" };
    r.config("temp_k", format!("{}{}", c.temp_k(), tag(c.temp_k.is_some())));
    r.config("wavelength_nm", format!("{}{}", c.wavelength_nm(), tag(c.wavelength_nm.is_some())));
    r.config("p_cnot", format!("{}{}", c.p_cnot(), tag(c.p_cnot.is_some())));
}

fn echo_estimator(r: &mut Report, e: &EstimatorArgs) {
    r.config("f_des", e.f_des);
    r.config("attenuation_db_per_km", e.attenuation_db_per_km);
    r.config("memory_exponent", e.memory_exponent);
    r.config("max_steps", e.max_steps);
    r.config("continuity_correction", e.continuity_correction);
}

/// Points `start + i·step` up to `stop` inclusive.
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(CliError::Usage("grid bounds must be finite".into()));
    }
    if start > stop {
        return Err(CliError::Usage(format!("--start {start} exceeds --stop {stop}")));
    }
    if step <= 0.0 {
        return Err(CliError::Usage("--step must be positive".into()));
    }
    let count = ((stop - start) / step + 1e-9).floor() + 1.0;
    if count > MAX_GRID_POINTS as f64 {
        return Err(CliError::Usage(format!("grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok((0..count as usize).map(|i| start + i as f64 * step).collect())
}

pub fn constants(a: &ConstantsArgs) -> Result<Report, CliError> {
    let ctx = context(&a.common)?;
    let mut r = Report::new("constants");
    echo_common(&mut r, &a.common);
    r.config("erasure_epsilon", ctx.erasure_epsilon);
    let mut t = Table::new(vec!["name", "value_J"]);
    for (name, v) in build_ledger(&ctx).entries() {
        t.push(vec![name.into(), num(v)]);
    }
    r.table(t);
    Ok(r)
}

pub fn lower_bound(a: &LowerBoundArgs) -> Result<Report, CliError> {
    let ctx = context(&a.common)?;
    let kind: ChannelKind = a.channel.into();
    let params = match (a.param, a.grid.start, a.grid.stop, a.grid.step) {
        (Some(p), ..) => vec![p],
        (None, Some(s), Some(e), Some(d)) => grid(s, e, d)?,
        (None, None, None, None) => return Err(CliError::Usage("give --param or --start/--stop/--step".into())),
        _ => return Err(CliError::Usage("--start, --stop and --step go together".into())),
    };
    let mut r = Report::new("lower-bound");
    echo_common(&mut r, &a.common);
    r.config("channel", kind);
    let mut t = Table::new(vec!["param", "bound_J_per_ebit", "formula_id"]);
    for p in params {
        let spec = ChannelSpec::new(kind, p)?;
        let b = lb_for_channel(spec, &ctx)?;
        t.push(vec![num(p), num(b.value.value()), b.formula.name().into()]);
    }
    r.table(t);
    Ok(r)
}

fn estimator_config(
    protocol: ProtocolKind,
    lambda: f64,
    distance_km: f64,
    e: &EstimatorArgs,
    ctx: EnergyContext,
) -> EstimatorConfig {
    let mut cfg = EstimatorConfig::new(protocol, lambda, e.f_des);
    cfg.ctx = ctx;
    cfg.distance_km = distance_km;
    cfg.attenuation_db_per_km = e.attenuation_db_per_km;
    cfg.memory_exposure_exponent = e.memory_exponent;
    cfg.max_steps = e.max_steps;
    cfg.continuity_correction = e.continuity_correction;
    cfg
}

fn summary_cells(ub: &UpperBound) -> [String; 4] {
    [
        num(ub.value),
        ub.schedule.n1().to_string(),
        ub.schedule.runs_total.to_string(),
        ub.path.k_steps().to_string(),
    ]
}

pub fn upper_bound(a: &UpperBoundArgs) -> Result<Report, CliError> {
    let ctx = context(&a.common)?;
    let protocol: ProtocolKind = a.protocol.into();
    let cfg = estimator_config(protocol, a.lambda, a.distance_km, &a.est, ctx);
    cfg.validate()?;
    let ub = upper_bound_ecred(&cfg)?;

    let mut r = Report::new("upper-bound");
    echo_common(&mut r, &a.common);
    r.config("protocol", protocol);
    r.config("lambda", a.lambda);
    r.config("distance_km", a.distance_km);
    echo_estimator(&mut r, &a.est);

    let mut t = Table::new(vec!["lambda", "protocol", "J_per_ebit", "n1", "runs_total", "K_steps"]);
    let mut row = vec![num(a.lambda), protocol.name().into()];
    row.extend(summary_cells(&ub));
    t.push(row);
    r.table(t);

    if a.detail {
        let mut d = Table::new(vec!["k", "F_k", "p_k", "n_k", "delta_k"]);
        for (k, st) in ub.path.steps.iter().enumerate() {
            d.push(vec![
                (k + 1).to_string(),
                num(st.fidelity),
                num(st.success_prob),
                ub.schedule.n[k].to_string(),
                num(ub.schedule.delta[k]),
            ]);
        }
        r.table(d);
    }
    Ok(r)
}

pub fn step_cmd(a: &StepArgs) -> Result<Report, CliError> {
    let protocol: ProtocolKind = a.protocol.into();
    let state = match (&a.coeffs, a.fidelity) {
        (Some(c), _) => {
            let c: [f64; 4] = c
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Usage(format!("--coeffs needs 4 values, got {}", c.len())))?;
            BellDiagonalState::new(c)?
        }
        (None, Some(f)) => BellDiagonalState::isotropic(f)?,
        (None, None) => return Err(CliError::Usage("give --coeffs or --fidelity".into())),
    };
    let out = step(protocol, &state)?;

    let mut r = Report::new("step");
    r.config("protocol", protocol);
    let c = state.coeffs();
    r.config("input", format!("{},{},{},{}", c[0], c[1], c[2], c[3]));

    let mut header = vec![
        "protocol", "branch", "p_succ", "fidelity", "phi_plus", "psi_plus", "phi_minus", "psi_minus",
    ];
    let mut row = vec![
        protocol.name().to_string(),
        out.branch.map(|b| b.name()).unwrap_or("-").to_string(),
        num(out.success_prob),
        num(out.fidelity),
    ];
    row.extend(out.next_state.coeffs().iter().map(|&x| num(x)));
    if a.oracle {
        let o = oracle_step(&state.to_density(), protocol)?;
        header.extend(["oracle_p_succ", "oracle_fidelity"]);
        row.extend([num(o.success_prob), num(o.fidelity)]);
    }
    let mut t = Table::new(header);
    t.push(row);
    r.table(t);
    Ok(r)
}

struct SweepPoint {
    protocol: ProtocolKind,
    lambda: f64,
    distance_km: f64,
    f_des: f64,
}

pub fn sweep(a: &SweepArgs) -> Result<Report, CliError> {
    let ctx = context(&a.common)?;
    let xs = grid(a.start, a.stop, a.step)?;
    let bad = |what: &str| CliError::Usage(format!("{what} grid out of range"));
    match a.variable {
        SweepVariable::Lambda if xs.iter().any(|x| !(0.0..=1.0).contains(x)) => return Err(bad("lambda")),
        SweepVariable::FDes if xs.iter().any(|x| !(*x > 0.5 && *x < 1.0)) => return Err(bad("f_des")),
        SweepVariable::DistanceKm if xs.iter().any(|x| *x < 0.0) => return Err(bad("distance")),
        _ => {}
    }
    if a.distances.iter().any(|d| !(*d >= 0.0)) {
        return Err(CliError::Usage("distances must be non-negative".into()));
    }
    let distances = if a.variable == SweepVariable::DistanceKm {
        vec![f64::NAN]
    } else {
        a.distances.clone()
    };

    let mut points = Vec::new();
    for &x in &xs {
        for &p in &a.protocols {
            for &d in &distances {
                let (lambda, distance_km, f_des) = match a.variable {
                    SweepVariable::Lambda => (x, d, a.est.f_des),
                    SweepVariable::DistanceKm => (a.lambda, x, a.est.f_des),
                    SweepVariable::FDes => (a.lambda, d, x),
                };
                points.push(SweepPoint {
                    protocol: p.into(),
                    lambda,
                    distance_km,
                    f_des,
                });
            }
        }
    }

    let eval = |pt: &SweepPoint| {
        let mut est = a.est.clone();
        est.f_des = pt.f_des;
        let cfg = estimator_config(pt.protocol, pt.lambda, pt.distance_km, &est, ctx);
        upper_bound_ecred(&cfg).ok()
    };
    let jobs = a.common.jobs.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    let results: Vec<Option<UpperBound>> = pool.install(|| points.par_iter().map(eval).collect());

    let mut r = Report::new("sweep");
    echo_common(&mut r, &a.common);
    r.config("variable", a.variable.column());
    r.config("start", a.start);
    r.config("stop", a.stop);
    r.config("step", a.step);
    let names: Vec<_> = a.protocols.iter().map(|&p| ProtocolKind::from(p).name()).collect();
    r.config("protocols", names.join(","));
    if a.variable != SweepVariable::DistanceKm {
        let ds: Vec<_> = a.distances.iter().map(|d| d.to_string()).collect();
        r.config("distances", ds.join(","));
    }
    if a.variable != SweepVariable::Lambda {
        r.config("lambda", a.lambda);
    }
    echo_estimator(&mut r, &a.est);

    let mut t = Table::new(vec![
        "protocol",
        "lambda",
        "distance_km",
        "f_des",
        "J_per_ebit",
        "n1",
        "runs_total",
        "K_steps",
    ]);
    let mut feasible = 0;
    for (pt, res) in points.iter().zip(&results) {
        let mut row = vec![
            pt.protocol.name().into(),
            num(pt.lambda),
            num(pt.distance_km),
            num(pt.f_des),
        ];
        match res {
            Some(ub) => {
                feasible += 1;
                row.extend(summary_cells(ub));
            }
            None => row.extend(std::iter::repeat_n("inf".to_string(), 4)),
        }
        t.push(row);
    }
    if feasible == 0 {
        eprintln!("warning: no feasible point in the sweep");
    }
    r.table(t);
    Ok(r)
}
