//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p prolate-cli --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prolate::bounds::{
    bound_r, certify_corollary1_on, certify_theorem1_on, dft_block_singular_values,
    prolate_spectrum,
};
use prolate::commuting::{
    compare_with_direct, eigenvectors_via_tridiagonal, fit_commuting_tridiagonal, COMMUTATOR_TOL,
};
use prolate::eigen::{eigh_householder_ql, eigh_jacobi};
use prolate::kernels::{build_periodic_prolate, dft_submatrix, DirichletKernel, ProlateParams};
use prolate::lowrank::{build_parts, certify_decomposition, verify_lemma1_numeric};
use prolate::DenseMatrix;

type Outcome = Result<String, String>;

fn params(m: usize, n: usize, k: usize) -> ProlateParams {
    ProlateParams::new(m, n, k).expect("admissible parameters")
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = params(1024, 256, 128);
    let s = prolate_spectrum(&p).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let above_half = s.values.iter().filter(|&&v| v >= 0.5).count();
    let r = bound_r(256, 1024, 1e-3).unwrap().ceil() as usize;
    let sum = s.sum();
    let in_range = s
        .values
        .iter()
        .all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v));
    check(
        above_half.abs_diff(64) <= r
            && (sum - 64.25).abs() <= 1e-9
            && in_range
            && elapsed < Duration::from_secs(30),
        format!(
            "#{{lambda >= 1/2}} = {above_half} (64 +/- {r}), sum = {sum:.12}, range ok = {in_range}, {}",
            secs(elapsed)
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let grid = [
        (256, 64, 15),
        (512, 128, 31),
        (1024, 256, 128),
        (2048, 512, 255),
    ];
    let mut failed = Vec::new();
    let mut checked = 0;
    for (m, n, k) in grid {
        let p = params(m, n, k);
        let s = prolate_spectrum(&p).map_err(|e| e.to_string())?;
        for eps in [1e-3, 1e-6, 1e-9, 1e-12] {
            let rep = certify_theorem1_on(&p, &s, eps).map_err(|e| e.to_string())?;
            checked += 1;
            if !rep.passed() {
                failed.push(format!("({m},{n},{k}, eps={eps:e})"));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        failed.is_empty() && elapsed < Duration::from_secs(300),
        format!("{checked} cases, failed: {failed:?}, {}", secs(elapsed)),
    )
}

fn criterion_3() -> Outcome {
    let eps_list = [1e-3, 1e-6, 1e-9, 1e-12];
    let mut widths = Vec::new(); // (M, eps index, width)
    let mut over = Vec::new();
    let mut m = 64;
    while m <= 4096 {
        let mut k = m / 8;
        if 2 * k + 1 >= m {
            k = (m - 2) / 2;
        }
        let p = params(m, m / 4, k);
        let s = prolate_spectrum(&p).map_err(|e| e.to_string())?;
        for (i, &eps) in eps_list.iter().enumerate() {
            let rep = certify_theorem1_on(&p, &s, eps).map_err(|e| e.to_string())?;
            if !rep.width_ok {
                over.push((m, eps));
            }
            widths.push((m, i, rep.width));
        }
        m *= 2;
    }
    let limit = (4096.0f64 * 8.0).ln() / (256.0f64 * 8.0).ln() + 0.5;
    let width_at =
        |m: usize, i: usize| widths.iter().find(|w| w.0 == m && w.1 == i).unwrap().2 as f64;
    let ratios: Vec<f64> = (0..eps_list.len())
        .map(|i| width_at(4096, i) / width_at(256, i))
        .collect();
    let sublinear = ratios.iter().all(|&r| r <= limit);
    check(
        over.is_empty() && sublinear,
        format!(
            "width > 2R at {over:?}; width(4096)/width(256) = {:?} (limit {limit:.3})",
            ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>()
        ),
    )
}

fn criterion_4() -> Outcome {
    let m = 1024;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c0f_f5e7);
    let mut failed = Vec::new();
    let mut worst = 0.0f64;
    let mut checked = 0;
    for p in [2, 4, 8] {
        let base = dft_block_singular_values(m, p, 0, 0).map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let (row, col) = (rng.gen_range(0..m), rng.gen_range(0..m));
            let sv = dft_block_singular_values(m, p, row, col).map_err(|e| e.to_string())?;
            let diff = sv
                .iter()
                .zip(&base)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            worst = worst.max(diff);
            if diff > 1e-10 {
                failed.push(format!("p={p} ({row},{col}) offset drift {diff:e}"));
            }
            for eps in [1e-3, 1e-6] {
                let rep =
                    certify_corollary1_on(m, p, row, col, &sv, eps).map_err(|e| e.to_string())?;
                checked += 1;
                if !rep.passed() {
                    failed.push(format!("p={p} ({row},{col}) eps={eps:e}"));
                }
            }
        }
    }
    check(
        failed.is_empty(),
        format!("{checked} certificates, max offset drift {worst:.2e}, failed: {failed:?}"),
    )
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for (m, p) in [(64, 4), (256, 8)] {
        let l = m / p;
        let gram = dft_submatrix(m, p, 0, 0).map_err(|e| e.to_string())?.gram();
        let b = DirichletKernel::new(m, l)
            .and_then(|k| k.symbol_matrix(l))
            .map_err(|e| e.to_string())?
            .to_dense();
        for i in 0..l {
            for j in 0..l {
                worst = worst.max((gram[(i, j)].norm() - b[(i, j)].abs()).abs());
            }
        }
    }
    check(
        worst <= 1e-12,
        format!("max entrywise deviation {worst:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let p = params(1024, 256, 128);
    let mut lines = Vec::new();
    let mut ok = true;
    for eps in [1e-3, 1e-6] {
        let rep = certify_decomposition(&p, eps).map_err(|e| e.to_string())?;
        let parts = build_parts(&p, eps).map_err(|e| e.to_string())?;
        let sv_ratio = rep.rank.ratio_past_4r;
        let entry_ok = rep.residual.max_entry <= eps / (16.0 * 256.0);
        let row_ok = rep.residual.max_row_sum <= eps / 16.0;
        let rank_ok = sv_ratio < 1e-10;
        ok &= entry_ok && row_ok && rank_ok && rep.passed() && parts.r == rep.r;
        lines.push(format!(
            "eps={eps:e}: R={} (printed {}), row sum {:.2e} <= {:.2e}: {row_ok}, |E2| {:.2e} <= {:.2e}: {entry_ok}, sigma_4R+1/sigma_1 = {sv_ratio:.1e}",
            rep.r,
            rep.r_printed,
            rep.residual.max_row_sum,
            eps / 16.0,
            rep.residual.max_entry,
            eps / (16.0 * 256.0),
        ));
    }
    check(ok, lines.join("; "))
}

fn criterion_7() -> Outcome {
    let w = 257.0 / 2048.0;
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [128, 256] {
        for eps in [1e-3, 1e-6] {
            let r = verify_lemma1_numeric(n, w, eps).map_err(|e| e.to_string())?;
            ok &= r.holds();
            lines.push(format!("n={n} eps={eps:e}: {} <= {:.1}", r.count, r.bound));
        }
    }
    check(ok, lines.join("; "))
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = rng.gen_range(-1.0..1.0);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}

fn max_value_diff(a: &DenseMatrix) -> Result<f64, String> {
    let ql = eigh_householder_ql(a, false).map_err(|e| e.to_string())?;
    let jac = eigh_jacobi(a).map_err(|e| e.to_string())?;
    Ok(ql
        .values
        .iter()
        .zip(&jac.values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let mut worst_random = 0.0f64;
    for _ in 0..20 {
        worst_random = worst_random.max(max_value_diff(&random_symmetric(&mut rng, 64))?);
    }
    let mut worst_prolate = 0.0f64;
    for (m, n, k) in [
        (256, 64, 15),
        (512, 128, 31),
        (128, 128, 20),
        (100, 37, 11),
        (1024, 128, 128),
    ] {
        worst_prolate = worst_prolate.max(max_value_diff(
            &build_periodic_prolate(&params(m, n, k)).to_dense(),
        )?);
    }
    check(
        worst_random <= 1e-10 && worst_prolate <= 1e-10,
        format!("max |QL - Jacobi|: random {worst_random:.2e}, prolate {worst_prolate:.2e}"),
    )
}

fn criterion_9() -> Outcome {
    let sets = [
        (64, 16, 8),
        (128, 32, 16),
        (100, 37, 11),
        (256, 64, 15),
        (512, 128, 31),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (m, n, k) in sets {
        let b = build_periodic_prolate(&params(m, n, k)).to_dense();
        let fit = fit_commuting_tridiagonal(&b).map_err(|e| e.to_string())?;
        let outcome =
            eigenvectors_via_tridiagonal(&fit, &b).and_then(|s| compare_with_direct(&s, &b));
        match outcome {
            Ok(cmp) => {
                let pass = fit.commutator_norm <= COMMUTATOR_TOL && cmp.passed(1e-8);
                ok &= pass;
                lines.push(format!(
                    "({m},{n},{k}): ||[B,T]|| = {:.1e}, max diff {:.1e} over {} separated",
                    fit.commutator_norm, cmp.max_value_diff, cmp.separated
                ));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("({m},{n},{k}): {e}"));
            }
        }
    }
    check(ok, lines.join("; "))
}

fn run_cli(args: &[&str], out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_prolate"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("{args:?} exited with {}", status.status));
    }
    let mut bytes = std::fs::read(out).map_err(|e| e.to_string())?;
    if let Ok(plot) = std::fs::read(out.with_extension("gp")) {
        bytes.extend(plot);
    }
    Ok(bytes)
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let commands: [&[&str]; 8] = [
        &["eigs", "M=1024", "N=256", "K=128"],
        &["transition", "ratio-sweep", "M=64..1024", "--jobs", "4"],
        &["certify", "M=256", "N=64", "K=15"],
        &[
            "certify",
            "M=256",
            "p=4",
            "offsets=0:0,3:17,101:5",
            "--jobs",
            "3",
        ],
        &["dft-sub", "M=256", "p=8", "offsets=7:3"],
        &["decompose", "M=1024", "N=256", "K=128", "eps=1e-3,1e-6"],
        &["commute", "M=64", "N=16", "K=8"],
        &["commute", "M=64", "N=16", "K=8", "--format", "json"],
    ];
    let mut differing = Vec::new();
    for (i, args) in commands.iter().enumerate() {
        let a = run_cli(args, &dir.path().join(format!("a{i}.csv")))?;
        let b = run_cli(args, &dir.path().join(format!("b{i}.csv")))?;
        // Scripts name their data file; compare with that name normalized.
        let norm = |v: Vec<u8>, tag: &str| {
            String::from_utf8_lossy(&v).replace(&format!("{tag}{i}.csv"), "DATA")
        };
        if norm(a, "a") != norm(b, "b") {
            differing.push(args.join(" "));
        }
    }
    check(
        differing.is_empty(),
        format!(
            "{} commands run twice, differing: {differing:?}",
            commands.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("figure 1 spectrum (M=1024, N=256, K=128)", criterion_1),
        ("transition-band certificates on the grid", criterion_2),
        (
            "width sweep N=M/4, K=M/8 within 2R, sub-linear",
            criterion_3,
        ),
        ("DFT block certificates and offset invariance", criterion_4),
        ("DFT block Gram matches the prolate kernel", criterion_5),
        ("low-rank plus small-tail decomposition", criterion_6),
        (
            "effective rank of sinc minus low-frequency projector",
            criterion_7,
        ),
        ("QL and Jacobi eigenvalues agree", criterion_8),
        ("commuting tridiagonal fit", criterion_9),
        ("CLI output is byte-identical across runs", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name} [{}]: {detail}",
            i + 1,
            secs(start.elapsed())
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
