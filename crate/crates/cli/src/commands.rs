use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use drglines::cliquelines::{extract_lines_with, AnticliqueOptions, ExtractOptions, PlsParams};
use drglines::drgparams::{
    classical_intersection_numbers, default_s, feasible_s_search, grassmann_params,
    grassmann_spectrum, kfree_parameters, metsch_exception_case, theorem_main_conditions,
    verify_tridiagonal_spectrum,
};
use drglines::graphcore::{
    audit_distance_regular, build_grassmann_graph_with_budget, grassmann_automorphisms,
    local_graph, min_eigenvalue_with, AuditMode, Graph, PowerIterationOptions,
};
use drglines::plspace::{
    build_pls, compare_line_sets, grassmann_line_oracle_with_budget, pls_point_graph,
    verify_rcs_with, RcsOptions,
};
use drglines::qlinalg::{gauss_binomial, gauss_bracket};
use drglines::{Budget, Error};

use crate::formats::{read_graph, read_lines, write_graph, write_lines};
use crate::{
    AuditArgs, AuditModeArg, CheckMainArgs, Cli, CliError, Command, Dims, EigenArgs, ExtractArgs,
    GenArgs, Outcome, RcsArgs, SearchArgs, Status,
};

/// `V * 2E` up to which `--mode auto` runs BFS from every vertex.
pub const FULL_AUDIT_LIMIT: u128 = 5_000_000_000;

/// Slack allowed below the eigenvalue bound for a converged estimate.
pub const EIGEN_SLACK: f64 = 1e-6;

type CmdResult = Result<Outcome, CliError>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn ok(result: Value) -> CmdResult {
    Ok(Outcome {
        status: Status::Ok,
        result,
    })
}

fn checked(pass: bool, result: Value) -> CmdResult {
    Ok(Outcome {
        status: if pass {
            Status::Ok
        } else {
            Status::Verification
        },
        result,
    })
}

pub fn run(cli: &Cli) -> CmdResult {
    let budget = Budget::with_mem_bytes(cli.mem_cap.0);
    match &cli.command {
        Command::Params(d) => params(*d),
        Command::Gen(a) => gen(a, &budget),
        Command::CheckMain(a) => check_main(*a),
        Command::SearchS(a) => search_s(*a),
        Command::Audit(a) => audit(a, cli.seed),
        Command::Extract(a) => extract(a, cli.seed),
        Command::VerifyRcs(a) => verify_rcs(a, cli.seed, &budget),
        Command::LocalEigen(a) => local_eigen(a, cli.seed),
    }
}

fn dims32(d: Dims) -> Result<(u32, u32), CliError> {
    match (u32::try_from(d.n), u32::try_from(d.d)) {
        (Ok(n), Ok(dd)) => Ok((n, dd)),
        _ => Err(CliError::input("dimensions out of range")),
    }
}

pub fn params(d: Dims) -> CmdResult {
    let (n, dd) = dims32(d)?;
    let p = grassmann_params(n, dd, d.q)?;
    let arr = classical_intersection_numbers(&p)?;
    let spectrum = grassmann_spectrum(n, dd, d.q)?;
    let tridiagonal = verify_tridiagonal_spectrum(&arr, &spectrum)?;
    let vertices = gauss_binomial(n, dd, d.q)?;
    let case = match metsch_exception_case(n, dd, d.q) {
        Ok(c) => json!(c),
        Err(Error::Hypothesis(_) | Error::InvalidDimensions(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let c2 = (arr.diameter() >= 2).then(|| arr.c(2));
    ok(json!({
        "n": n,
        "D": dd,
        "q": d.q,
        "vertices": vertices,
        "classical": p,
        "intersection_array": { "b": arr.b_list(), "c": arr.c_list() },
        "k": arr.k(),
        "a1": arr.a(1),
        "c2": c2,
        "spectrum": spectrum,
        "multiplicity_sum": spectrum.vertex_count(),
        "trace": spectrum.trace()?,
        "tridiagonal_verified": tridiagonal,
        "case": case,
    }))
}

pub fn gen(a: &GenArgs, budget: &Budget) -> CmdResult {
    let g = build_grassmann_graph_with_budget(a.dims.n, a.dims.d, a.dims.q, budget)?;
    let g = if a.no_labels {
        Graph::from_csr(g.offsets().to_vec(), g.targets().to_vec())?
    } else {
        g
    };
    write_graph(&a.out, &g)?;
    eprintln!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "degree": g.regular_degree(),
        "labels": g.labels().is_some(),
        "path": a.out,
    }))
}

pub fn check_main(a: CheckMainArgs) -> CmdResult {
    if a.ell < 3 {
        return Err(CliError::input(format!(
            "ell = {} is outside the hypothesis beta >= [D+4]_2 - 1 (ell >= 3)",
            a.ell
        )));
    }
    let beta = gauss_bracket(a.d + a.ell + 1, 2)?;
    let beta = i128::try_from(beta).map_err(|_| Error::Overflow("beta"))? - 1;
    let r = theorem_main_conditions(a.d, beta)?;
    checked(r.pass.all, to_value(&r))
}

pub fn search_s(a: SearchArgs) -> CmdResult {
    let (n, d) = dims32(a.dims)?;
    let p = grassmann_params(n, d, a.dims.q)?;
    let arr = classical_intersection_numbers(&p)?;
    if arr.diameter() < 2 {
        return Err(CliError::input("need D >= 2 for c_2"));
    }
    let lambda = a.dims.q as i128 + 1;
    let (m, kn) = kfree_parameters(lambda);
    let e = arr.c(2) - 1;
    let s_max = match a.s_max {
        Some(s) => s,
        None => 4u64
            .checked_mul(a.dims.q.checked_pow(d).ok_or(Error::Overflow("s_max"))?)
            .ok_or(Error::Overflow("s_max"))?,
    };
    let feasible = feasible_s_search(&p, m, kn, e, s_max)?;
    ok(json!({
        "lambda": lambda,
        "m": m,
        "n": kn,
        "w": arr.a(1),
        "e": e,
        "k": arr.k(),
        "s_max": s_max,
        "default_s": default_s(a.dims.q as i128, d)?,
        "feasible": feasible,
    }))
}

/// Mode picked by `--mode auto`.
pub fn auto_audit_mode(g: &Graph) -> AuditModeArg {
    if g.vertex_count() as u128 * g.targets().len() as u128 <= FULL_AUDIT_LIMIT {
        AuditModeArg::Full
    } else if g.labels().is_some() {
        AuditModeArg::Transitive
    } else {
        AuditModeArg::Sampled
    }
}

pub fn audit(a: &AuditArgs, seed: u64) -> CmdResult {
    let g = read_graph(&a.graph)?;
    let chosen = if a.mode == AuditModeArg::Auto {
        auto_audit_mode(&g)
    } else {
        a.mode
    };
    let mode = match chosen {
        AuditModeArg::Full | AuditModeArg::Auto => AuditMode::Full,
        AuditModeArg::Sampled => AuditMode::Sampled {
            count: a.sample,
            seed,
        },
        AuditModeArg::Transitive => AuditMode::Transitive {
            generators: grassmann_automorphisms(&g)?,
        },
    };
    let r = audit_distance_regular(&g, &mode);
    let mut result =
        json!({ "mode": chosen, "vertices": g.vertex_count(), "edges": g.edge_count() });
    result["audit"] = to_value(&r);
    checked(r.is_drg, result)
}

fn pls_params(g: &Graph, a: &ExtractArgs) -> Result<PlsParams, CliError> {
    let k = g
        .regular_degree()
        .ok_or_else(|| CliError::input("graph is not regular"))? as i128;
    let base = match g.labels() {
        Some(l) => Some(PlsParams::from_grassmann(l.n, l.d, l.q as u64)?),
        None => None,
    };
    let lambda = a
        .lambda
        .unwrap_or_else(|| g.labels().map_or(3, |l| l.q as i128 + 1));
    let (m, n) = kfree_parameters(lambda);
    let pick = |flag: Option<i128>, from: Option<i128>, name: &str| {
        flag.or(from)
            .ok_or_else(|| CliError::input(format!("unlabelled graph: --{name} is required")))
    };
    let s = pick(a.s, base.map(|p| p.s), "s")?;
    let w = pick(a.w, base.map(|p| p.w), "w")?;
    let e = pick(a.e, base.map(|p| p.e), "e")?;
    Ok(PlsParams::new(s, m, n, w, e, k, k)?)
}

fn size_histogram(lines: &[Vec<u32>]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for l in lines {
        *h.entry(l.len()).or_insert(0) += 1;
    }
    h
}

pub fn extract(a: &ExtractArgs, seed: u64) -> CmdResult {
    let g = read_graph(&a.graph)?;
    let p = pls_params(&g, a)?;
    let opts = ExtractOptions {
        anticlique: AnticliqueOptions {
            seed,
            node_budget: a.node_budget,
            ..AnticliqueOptions::default()
        },
        ..ExtractOptions::default()
    };
    let ex = extract_lines_with(&g, &p, a.mode, &opts)?;
    write_lines(&a.out, &ex.lines)?;
    let pass = ex.pass();
    checked(
        pass,
        json!({
            "params": p,
            "mode": ex.mode,
            "threshold": ex.threshold,
            "line_count": ex.lines.len(),
            "line_sizes": size_histogram(&ex.lines),
            "local_failure_count": ex.local_failure_count,
            "local_failures": ex.local_failures,
            "certification": ex.certification,
            "pass": pass,
            "path": a.out,
        }),
    )
}

pub fn verify_rcs(a: &RcsArgs, seed: u64, budget: &Budget) -> CmdResult {
    let g = read_graph(&a.graph)?;
    let lines = read_lines(&a.lines)?;
    let pls = build_pls(g.vertex_count(), lines)?;
    let opts = RcsOptions {
        exhaustive_cutoff: a.exhaustive_cutoff,
        sample_points: a.sample,
        seed,
    };
    let r = verify_rcs_with(&pls, a.q, &opts);
    let point_graph = pls_point_graph(&pls);
    let point_graph_matches =
        point_graph.offsets() == g.offsets() && point_graph.targets() == g.targets();
    let oracle = match g.labels() {
        Some(l) => {
            let expected = grassmann_line_oracle_with_budget(l.n, l.d, l.q as u64, budget)?;
            Some(compare_line_sets(pls.lines(), &expected))
        }
        None => None,
    };
    let pass = r.pass && oracle.as_ref().is_none_or(|c| c.equal);
    checked(
        pass,
        json!({
            "rcs": r,
            "point_graph_matches": point_graph_matches,
            "oracle": oracle,
            "pass": pass,
        }),
    )
}

pub fn local_eigen(a: &EigenArgs, seed: u64) -> CmdResult {
    let g = read_graph(&a.graph)?;
    let v = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<u32> = sample(&mut rng, v, a.sample.min(v))
        .into_iter()
        .map(|x| x as u32)
        .collect();
    xs.sort_unstable();
    let opts = PowerIterationOptions {
        tol: a.tol,
        max_iter: a.max_iter,
        seed,
    };
    let mut estimates = Vec::with_capacity(xs.len());
    for &x in &xs {
        let local = local_graph(&g, x)?;
        let est = min_eigenvalue_with(&local.graph, &opts)?;
        estimates.push(json!({ "vertex": x, "value": est.value, "residual": est.residual, "iterations": est.iterations }));
    }
    let min = estimates
        .iter()
        .filter_map(|e| e["value"].as_f64())
        .fold(f64::INFINITY, f64::min);
    let bound = g.labels().map(|l| -(l.q as f64) - 1.0);
    let pass = bound.is_none_or(|b| min >= b - EIGEN_SLACK);
    checked(
        pass,
        json!({
            "vertices": xs.len(),
            "min": if min.is_finite() { json!(min) } else { Value::Null },
            "bound": bound,
            "slack": EIGEN_SLACK,
            "estimates": estimates,
            "pass": pass,
        }),
    )
}
