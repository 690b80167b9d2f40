use rayon::prelude::*;
use serde_json::{json, Value};

use prolate::bounds::{
    certify_corollary1_on, certify_theorem1_on, dft_block_singular_values, prolate_spectrum,
    Setting, TransitionReport,
};
use prolate::commuting::{
    compare_with_direct, eigenvectors_via_tridiagonal, fit_commuting_tridiagonal, COMMUTATOR_TOL,
};
use prolate::eigen::{eigh_householder_ql, eigh_jacobi, Method};
use prolate::kernels::build_periodic_prolate;
use prolate::lowrank::certify_decomposition;
use prolate::{Error, ProlateParams};

use crate::report::{Cell, Plot, Report, Table};
use crate::{CommandKind, Failure, RunConfig, Target};

/// Eigenvalue agreement required between the tridiagonal and direct paths.
const PATH_VALUE_TOL: f64 = 1e-8;

pub(crate) fn execute(config: &RunConfig) -> Result<Report, Failure> {
    match (config.command, &config.target) {
        (CommandKind::Eigs, Target::Prolate(p)) => eigs(p, config.method),
        (CommandKind::Transition, Target::Prolate(p)) => {
            transition(std::slice::from_ref(p), &config.epsilon_list, false)
        }
        (CommandKind::Transition, Target::RatioSweep(ps)) => {
            transition(ps, &config.epsilon_list, true)
        }
        (CommandKind::Certify, Target::Prolate(p)) => certify_prolate(p, &config.epsilon_list),
        (CommandKind::Certify, Target::DftBlock { m, p, offsets }) => {
            certify_blocks(*m, *p, offsets, &config.epsilon_list)
        }
        (CommandKind::DftSub, Target::DftBlock { m, p, offsets }) => dft_sub(*m, *p, offsets[0]),
        (CommandKind::Decompose, Target::Prolate(p)) => decompose(p, &config.epsilon_list),
        (CommandKind::Commute, Target::Prolate(p)) => commute(p),
        (cmd, _) => Err(Failure::Usage(format!(
            "{} does not take this target",
            cmd.name()
        ))),
    }
}

/// Order-preserving parallel map; the first error wins.
fn par_try_map<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<R, Error> + Sync + Send,
) -> Result<Vec<R>, Failure> {
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::from)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn params_json(p: &ProlateParams) -> Value {
    json!({ "M": p.m(), "N": p.n(), "K": p.k(), "W": p.w(), "cluster_point": p.cluster_point() })
}

fn eigs(p: &ProlateParams, method: Method) -> Result<Report, Failure> {
    let spectrum = match method {
        Method::Jacobi => eigh_jacobi(&build_periodic_prolate(p).to_dense())?,
        _ => prolate_spectrum(p)?,
    };
    let mut table = Table::new(&["index", "eigenvalue"]);
    for (i, v) in spectrum.values.iter().enumerate() {
        table.push(vec![i.into(), (*v).into()]);
    }
    let mut detail = params_json(p);
    detail["method"] = to_value(&spectrum.method);
    detail["sum"] = json!(spectrum.sum());
    Ok(Report {
        table,
        detail,
        plot: Some(Plot {
            title: format!("eigenvalues, M = {}, N = {}, K = {}", p.m(), p.n(), p.k()),
            xlabel: "index",
            ylabel: "eigenvalue",
            logscale: None,
            marker_x: Some(p.cluster_point()),
            series: vec!["DATA using 1:2 skip 1 with points pt 7 ps 0.5 notitle".into()],
        }),
        failures: Vec::new(),
    })
}

fn failed_reports(reports: &[TransitionReport]) -> Vec<Value> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(to_value)
        .collect()
}

fn transition(points: &[ProlateParams], epsilons: &[f64], sweep: bool) -> Result<Report, Failure> {
    let per_point = par_try_map(points, |p| {
        let spectrum = prolate_spectrum(p)?;
        epsilons
            .iter()
            .map(|&e| certify_theorem1_on(p, &spectrum, e))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let reports: Vec<TransitionReport> = per_point.into_iter().flatten().collect();

    let mut table = Table::new(&["M", "N", "K", "epsilon", "width", "bound_2R", "pass"]);
    for r in &reports {
        let Setting::Prolate { params } = r.setting else {
            unreachable!()
        };
        table.push(vec![
            params.m().into(),
            params.n().into(),
            params.k().into(),
            r.epsilon.into(),
            r.width.into(),
            r.bound.into(),
            r.passed().into(),
        ]);
    }

    let plot = if sweep {
        let mut series = Vec::new();
        for (i, e) in epsilons.iter().enumerate() {
            series.push(format!(
                "DATA using 1:($4 == {e:e} ? $5 : 1/0) skip 1 with linespoints lt {} title 'width, eps = {e:e}'",
                i + 1
            ));
            series.push(format!(
                "DATA using 1:($4 == {e:e} ? $6 : 1/0) skip 1 with lines lt {} dashtype 2 title '2R, eps = {e:e}'",
                i + 1
            ));
        }
        Plot {
            title: "transition width, N = M/4, K = M/8".into(),
            xlabel: "M",
            ylabel: "width",
            logscale: Some("x 2"),
            marker_x: None,
            series,
        }
    } else {
        Plot {
            title: "transition width".into(),
            xlabel: "epsilon",
            ylabel: "width",
            logscale: Some("x"),
            marker_x: None,
            series: vec![
                "DATA using 4:5 skip 1 with linespoints title 'width'".into(),
                "DATA using 4:6 skip 1 with lines dashtype 2 title '2R'".into(),
            ],
        }
    };

    Ok(Report {
        table,
        detail: json!({ "reports": reports.iter().map(to_value).collect::<Vec<_>>() }),
        plot: Some(plot),
        failures: failed_reports(&reports),
    })
}

const CERTIFY_HEADER: [&str; 16] = [
    "setting",
    "M",
    "N",
    "K",
    "p",
    "row_offset",
    "col_offset",
    "epsilon",
    "R",
    "lower_index",
    "lower_ok",
    "upper_index",
    "upper_ok",
    "width",
    "bound_2R",
    "pass",
];

fn certify_row(r: &TransitionReport) -> Vec<Cell> {
    let (setting, m, n, k, p, row, col) = match r.setting {
        Setting::Prolate { params } => (
            "prolate",
            params.m(),
            params.n(),
            Some(params.k()),
            None,
            None,
            None,
        ),
        Setting::DftBlock {
            m,
            p,
            row_offset,
            col_offset,
        } => (
            "dft_block",
            m,
            m / p,
            None,
            Some(p),
            Some(row_offset),
            Some(col_offset),
        ),
    };
    vec![
        Cell::Text(setting),
        m.into(),
        n.into(),
        k.into(),
        p.into(),
        row.into(),
        col.into(),
        r.epsilon.into(),
        r.r.into(),
        r.lower_index.into(),
        r.lower_index_ok.into(),
        r.upper_index.into(),
        r.upper_index_ok.into(),
        r.width.into(),
        r.bound.into(),
        r.passed().into(),
    ]
}

fn certify_report(reports: Vec<TransitionReport>) -> Report {
    let mut table = Table::new(&CERTIFY_HEADER);
    for r in &reports {
        table.push(certify_row(r));
    }
    Report {
        table,
        detail: json!({
            "reports": reports.iter().map(to_value).collect::<Vec<_>>(),
        }),
        plot: None,
        failures: failed_reports(&reports),
    }
}

fn certify_prolate(p: &ProlateParams, epsilons: &[f64]) -> Result<Report, Failure> {
    let spectrum = prolate_spectrum(p)?;
    let reports = epsilons
        .iter()
        .map(|&e| certify_theorem1_on(p, &spectrum, e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(certify_report(reports))
}

fn certify_blocks(
    m: usize,
    p: usize,
    offsets: &[(usize, usize)],
    epsilons: &[f64],
) -> Result<Report, Failure> {
    let per_offset = par_try_map(offsets, |&(row, col)| {
        let sv = dft_block_singular_values(m, p, row, col)?;
        epsilons
            .iter()
            .map(|&e| certify_corollary1_on(m, p, row, col, &sv, e))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(certify_report(per_offset.into_iter().flatten().collect()))
}

fn dft_sub(m: usize, p: usize, (row, col): (usize, usize)) -> Result<Report, Failure> {
    let sv = dft_block_singular_values(m, p, row, col)?;
    let mut table = Table::new(&["index", "singular_value"]);
    for (i, s) in sv.iter().enumerate() {
        table.push(vec![i.into(), (*s).into()]);
    }
    let l = m / p;
    let cluster = l as f64 / p as f64;
    Ok(Report {
        table,
        detail: json!({ "M": m, "p": p, "L": l, "row_offset": row, "col_offset": col, "cluster_point": cluster }),
        plot: Some(Plot {
            title: format!("singular values of the {l} x {l} DFT block, M = {m}"),
            xlabel: "index",
            ylabel: "singular value",
            logscale: None,
            marker_x: Some(cluster),
            series: vec!["DATA using 1:2 skip 1 with points pt 7 ps 0.5 notitle".into()],
        }),
        failures: Vec::new(),
    })
}

fn decompose(p: &ProlateParams, epsilons: &[f64]) -> Result<Report, Failure> {
    let reports = par_try_map(epsilons, |&e| certify_decomposition(p, e))?;
    let mut table = Table::new(&[
        "R",
        "rank_L2_certified",
        "tail_bound",
        "row_sum_residual",
        "pass",
    ]);
    for r in &reports {
        table.push(vec![
            r.r.into(),
            r.rank.significant.into(),
            r.tail_bound.into(),
            r.residual.max_row_sum.into(),
            r.passed().into(),
        ]);
    }
    Ok(Report {
        table,
        detail: json!({
            "params": params_json(p),
            "reports": reports.iter().map(to_value).collect::<Vec<_>>(),
        }),
        plot: None,
        failures: reports
            .iter()
            .filter(|r| !r.passed())
            .map(to_value)
            .collect(),
    })
}

fn commute(p: &ProlateParams) -> Result<Report, Failure> {
    let b = build_periodic_prolate(p).to_dense();
    let fit = fit_commuting_tridiagonal(&b)?;
    let direct = eigh_householder_ql(&b, false)?;
    let mut failures = Vec::new();

    let (via_t, comparison) = match eigenvectors_via_tridiagonal(&fit, &b) {
        Ok(s) => {
            let cmp = compare_with_direct(&s, &b)?;
            (Some(s), Some(cmp))
        }
        Err(Error::UnusableFit(msg)) => {
            failures.push(json!({ "reason": "unusable_fit", "message": msg, "commutator_norm": fit.commutator_norm }));
            (None, None)
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(cmp) = &comparison {
        if !(fit.commutator_norm <= COMMUTATOR_TOL && cmp.passed(PATH_VALUE_TOL)) {
            failures.push(json!({
                "reason": "path_mismatch",
                "commutator_norm": fit.commutator_norm,
                "comparison": to_value(cmp),
            }));
        }
    }

    let mut table = Table::new(&[
        "index",
        "eigenvalue_direct",
        "eigenvalue_tridiagonal",
        "abs_diff",
        "alignment",
        "t_diagonal",
        "t_offdiagonal",
    ]);
    for i in 0..fit.n() {
        let tri = via_t.as_ref().map(|s| s.values[i]);
        table.push(vec![
            i.into(),
            direct.values[i].into(),
            tri.into(),
            tri.map(|t| (t - direct.values[i]).abs()).into(),
            comparison.as_ref().and_then(|c| c.alignment[i]).into(),
            fit.diag[i].into(),
            fit.offdiag.get(i).copied().into(),
        ]);
    }
    Ok(Report {
        table,
        detail: json!({
            "params": params_json(p),
            "fit": to_value(&fit),
            "comparison": comparison.as_ref().map(to_value),
        }),
        plot: None,
        failures,
    })
}
