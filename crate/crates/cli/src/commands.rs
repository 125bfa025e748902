use crate::args::*;
use crate::error::CliError;
use crate::manifest::{sha256_hex, Artifact, RunManifest};
use apollonia_core::analysis::{run_rounds, theorem_bounds, AnalysisParams, Profile, RoundReport};
use apollonia_core::longest_path::{heuristic_long_path, longest_path_bruteforce, longest_path_exact, longest_path_length};
use apollonia_core::occupancy::{check_lemma_p2, OccupancyLaw, EXACT_MAX_N};
use apollonia_core::Ran;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

/// What a subcommand produced before anything is written.
pub struct Outcome {
    /// Primary output: the file body, or what goes to stdout without `--out`.
    pub body: Vec<u8>,
    /// Printed instead of the body when the body went to a file.
    pub summary: String,
    pub inputs: Vec<Artifact>,
    pub seeds: Vec<u64>,
}

/// Run `cli`, write its output and manifest, and return what to print.
pub fn execute(cli: &Cli, argv: &[String]) -> Result<String, CliError> {
    let start = Instant::now();
    let out = match &cli.command {
        Command::Replay(args) => return replay(args, cli.json),
        Command::Generate(a) => a.out.clone(),
        Command::Solve(a) => a.out.clone(),
        Command::Occupancy(OccupancyCommand::Pmf(a)) => a.out.clone(),
        Command::Occupancy(OccupancyCommand::Tailcheck(a)) => a.out.clone(),
        Command::Experiment(ExperimentCommand::Rounds(a)) => a.out.clone(),
        Command::Experiment(ExperimentCommand::Scaling(a)) => a.out.clone(),
    };
    let outcome = match &cli.command {
        Command::Generate(a) => generate(a, cli.json),
        Command::Solve(a) => solve(a),
        Command::Occupancy(OccupancyCommand::Pmf(a)) => pmf(a, cli.json),
        Command::Occupancy(OccupancyCommand::Tailcheck(a)) => tailcheck(a, cli.json),
        Command::Experiment(ExperimentCommand::Rounds(a)) => rounds(a, cli),
        Command::Experiment(ExperimentCommand::Scaling(a)) => scaling(a, cli),
        Command::Replay(_) => unreachable!(),
    }?;
    let Some(path) = out else {
        return Ok(String::from_utf8(outcome.body).expect("outputs are UTF-8"));
    };
    std::fs::write(&path, &outcome.body).map_err(CliError::io(&path))?;
    let manifest = RunManifest {
        tool: "apollonia".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: cli.command.name().into(),
        argv: argv.to_vec(),
        params: serde_json::to_value(cli).expect("arguments serialize"),
        seeds: outcome.seeds,
        inputs: outcome.inputs,
        outputs: vec![Artifact::of_bytes(&path, &outcome.body)],
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    manifest.write_next_to(&path)?;
    Ok(outcome.summary)
}

fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} workers: {e}")))?;
    Ok(pool.install(job))
}

fn generate(a: &GenerateArgs, json: bool) -> Result<Outcome, CliError> {
    let ran = Ran::generate(a.n, a.seed);
    let summary = if json {
        json_line(json!({
            "n": a.n,
            "seed": a.seed,
            "vertices": ran.vertex_count(),
            "edges": ran.edge_count(),
            "faces": ran.face_count(),
        }))
    } else {
        format!(
            "n={} seed={} vertices={} edges={} faces={}\n",
            a.n,
            a.seed,
            ran.vertex_count(),
            ran.edge_count(),
            ran.face_count()
        )
    };
    let mut body = ran.serialize();
    if a.out.is_none() {
        body.push(b'\n');
    }
    Ok(Outcome {
        body,
        summary,
        inputs: vec![],
        seeds: vec![a.seed],
    })
}

fn solve(a: &SolveArgs) -> Result<Outcome, CliError> {
    let bytes = std::fs::read(&a.input).map_err(CliError::io(&a.input))?;
    let ran = Ran::deserialize(&bytes)?;
    let (length, path) = match a.method {
        Method::Exact if !a.emit_path => (longest_path_length(&ran), None),
        Method::Exact => {
            let lp = longest_path_exact(&ran);
            (lp.length, Some(lp.path))
        }
        Method::Brute => {
            let lp = longest_path_bruteforce(&ran.adjacency())?;
            (lp.length, Some(lp.path))
        }
        Method::Heuristic => {
            let p = heuristic_long_path(&ran);
            (p.len_edges(), Some(p))
        }
    };
    let value = match path.filter(|_| a.emit_path) {
        Some(p) => json!({ "length": length, "path": p.vertices() }),
        None => json!({ "length": length }),
    };
    let body = json_line(value);
    Ok(Outcome {
        summary: body.clone(),
        body: body.into_bytes(),
        inputs: vec![Artifact::of_bytes(&a.input, &bytes)],
        seeds: vec![],
    })
}

fn pmf(a: &PmfArgs, json: bool) -> Result<Outcome, CliError> {
    let law = OccupancyLaw::new(a.faces, a.marked, a.insertions)?;
    let ms: Vec<u64> = match a.m {
        Some(m) if m > a.insertions => {
            return Err(CliError::Domain(format!("m = {m} is outside 0..={}", a.insertions)))
        }
        Some(m) => vec![m],
        None => (0..=a.insertions).collect(),
    };
    if a.rational && a.insertions > EXACT_MAX_N {
        return Err(CliError::Capacity(format!(
            "exact arithmetic is limited to N <= {EXACT_MAX_N}, got {}",
            a.insertions
        )));
    }
    let exact = a.insertions <= EXACT_MAX_N;
    let table = if exact { Vec::new() } else { law.pmf_table() };
    let mut rows = Vec::with_capacity(ms.len());
    for &m in &ms {
        let (p, fraction) = if exact {
            let r = law.pmf_exact(m)?;
            (r.to_f64().expect("probability fits in f64"), Some(r.to_string()))
        } else {
            (table[m as usize], None)
        };
        rows.push((m, p, fraction));
    }
    let body = if json {
        let list: Vec<_> = rows
            .iter()
            .map(|(m, p, f)| match (a.rational, f) {
                (true, Some(f)) => json!({ "m": m, "probability": p, "exact": f }),
                _ => json!({ "m": m, "probability": p }),
            })
            .collect();
        json_line(serde_json::Value::Array(list))
    } else {
        let mut s = String::from(if a.rational { "m,probability,exact\n" } else { "m,probability\n" });
        for (m, p, f) in &rows {
            write!(s, "{m},{}", fmt_f64(*p)).unwrap();
            if a.rational {
                write!(s, ",{}", f.as_deref().unwrap_or("")).unwrap();
            }
            s.push('\n');
        }
        s
    };
    Ok(Outcome {
        summary: format!("wrote {} rows\n", rows.len()),
        body: body.into_bytes(),
        inputs: vec![],
        seeds: vec![],
    })
}

fn tailcheck(a: &TailcheckArgs, json: bool) -> Result<Outcome, CliError> {
    let ran = Ran::generate(a.sigma, a.seed);
    let c = check_lemma_p2(&ran, a.sigma, a.tau, a.insertions, a.trials, a.seed)?;
    let body = if json {
        json_line(json!({
            "sigma": a.sigma,
            "tau": a.tau,
            "insertions": a.insertions,
            "trials": c.trials,
            "seed": a.seed,
            "threshold": c.threshold,
            "violations": c.violations,
            "max_sum": c.max_sum,
            "mean_sum": c.mean_sum,
            "tau_below_lambda1": c.tau_below_lambda1,
        }))
    } else {
        format!(
            "sigma={} tau={} insertions={} trials={} threshold={} violations={} max_sum={} mean_sum={} tau_below_lambda1={}\n",
            a.sigma,
            a.tau,
            a.insertions,
            c.trials,
            c.threshold.map_or("none".into(), fmt_f64),
            c.violations,
            c.max_sum,
            fmt_f64(c.mean_sum),
            c.tau_below_lambda1
        )
    };
    Ok(Outcome {
        summary: body.clone(),
        body: body.into_bytes(),
        inputs: vec![],
        seeds: vec![a.seed],
    })
}

pub const ROUNDS_HEADER: &str = "seed,i,sigma_i,tau_i,ratio,J,J1,visited,horizon,heavy_faces,j1_bound,projection,runs_ok,p5";

fn rounds(a: &RoundsArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let profile = match a.profile {
        ProfileArg::Thm1 => Profile::Thm1,
        ProfileArg::Thm2 => Profile::Thm2,
    };
    let params = AnalysisParams::new(a.alpha, a.c, a.n)?.with_profile(profile);
    let seeds = a.seeds.seeds();
    let reports: Vec<RoundReport> = with_pool(cli.parallel, || {
        seeds.par_iter().map(|&s| run_rounds(&params, s)).collect::<Result<Vec<_>, _>>()
    })??;

    let body = if cli.json {
        let list: Vec<_> = seeds
            .iter()
            .zip(&reports)
            .flat_map(|(seed, r)| {
                r.rows.iter().map(move |row| {
                    json!({
                        "seed": seed, "i": row.i, "sigma_i": row.sigma, "tau_i": row.tau,
                        "ratio": row.ratio, "J": row.j, "J1": row.j1, "visited": row.visited,
                        "horizon": row.horizon, "heavy_faces": row.heavy_faces,
                        "j1_bound": row.j1_bound, "projection": row.projection_holds,
                        "runs_ok": row.run_bound_holds, "p5": row.p5,
                    })
                })
            })
            .collect();
        json_line(serde_json::Value::Array(list))
    } else {
        let mut s = String::from(ROUNDS_HEADER);
        s.push('\n');
        for (seed, r) in seeds.iter().zip(&reports) {
            for row in &r.rows {
                writeln!(
                    s,
                    "{seed},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    row.i,
                    row.sigma,
                    row.tau,
                    fmt_f64(row.ratio),
                    row.j,
                    row.j1,
                    row.visited,
                    row.horizon,
                    row.heavy_faces,
                    fmt_f64(row.j1_bound),
                    row.projection_holds,
                    row.run_bound_holds,
                    row.p5
                )
                .unwrap();
            }
        }
        s
    };

    let median = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        let k = v.len();
        if k % 2 == 1 { v[k / 2] } else { 0.5 * (v[k / 2 - 1] + v[k / 2]) }
    };
    let initial = median(reports.iter().map(|r| r.initial_ratio()).collect());
    let last = median(reports.iter().map(|r| r.final_ratio()).collect());
    let projection: usize = reports.iter().map(|r| r.projection_violations()).sum();
    let j1: usize = reports.iter().map(|r| r.j1_bound_violations()).sum();
    let summary = if cli.json {
        json_line(json!({
            "seeds": seeds.len(), "median_initial_ratio": initial, "median_final_ratio": last,
            "projection_violations": projection, "j1_bound_violations": j1,
        }))
    } else {
        format!(
            "seeds={} median_initial_ratio={} median_final_ratio={} projection_violations={} j1_bound_violations={}\n",
            seeds.len(),
            fmt_f64(initial),
            fmt_f64(last),
            projection,
            j1
        )
    };
    Ok(Outcome {
        body: body.into_bytes(),
        summary,
        inputs: vec![],
        seeds,
    })
}

pub const SCALING_HEADER: &str = "n,seed,L_exact,L_heuristic,thm1,thm2,lemma_p4,always";

fn scaling(a: &ScalingArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let seeds: Vec<u64> = (0..a.seeds_per_size).collect();
    let jobs: Vec<(u64, u64)> = a.sizes.iter().flat_map(|&n| seeds.iter().map(move |&s| (n, s))).collect();
    let lengths: Vec<(usize, usize)> = with_pool(cli.parallel, || {
        jobs.par_iter()
            .map(|&(n, seed)| {
                let ran = Ran::generate(n as usize, seed);
                (longest_path_length(&ran), heuristic_long_path(&ran).len_edges())
            })
            .collect()
    })?;
    let mut bounds = Vec::with_capacity(a.sizes.len());
    for &n in &a.sizes {
        bounds.push(if n >= 27 {
            Some(theorem_bounds(&AnalysisParams::new(a.alpha, a.c, n)?)?)
        } else {
            None
        });
    }
    let per_size = a.seeds_per_size as usize;
    let body = if cli.json {
        let list: Vec<_> = jobs
            .iter()
            .zip(&lengths)
            .enumerate()
            .map(|(k, (&(n, seed), &(exact, heur)))| {
                let b = bounds[k / per_size];
                json!({
                    "n": n, "seed": seed, "L_exact": exact, "L_heuristic": heur,
                    "thm1": b.map(|b| b.thm1), "thm2": b.map(|b| b.thm2),
                    "lemma_p4": b.map(|b| b.lemma_p4), "always": apollonia_core::analysis::always_bound(n),
                })
            })
            .collect();
        json_line(serde_json::Value::Array(list))
    } else {
        let mut s = String::from(SCALING_HEADER);
        s.push('\n');
        for (k, (&(n, seed), &(exact, heur))) in jobs.iter().zip(&lengths).enumerate() {
            let b = bounds[k / per_size];
            let cell = |f: fn(&apollonia_core::analysis::TheoremBounds) -> f64| b.as_ref().map_or(String::new(), |b| fmt_f64(f(b)));
            writeln!(
                s,
                "{n},{seed},{exact},{heur},{},{},{},{}",
                cell(|b| b.thm1),
                cell(|b| b.thm2),
                cell(|b| b.lemma_p4),
                fmt_f64(apollonia_core::analysis::always_bound(n))
            )
            .unwrap();
        }
        s
    };
    Ok(Outcome {
        summary: format!("wrote {} rows\n", jobs.len()),
        body: body.into_bytes(),
        inputs: vec![],
        seeds,
    })
}

fn replay(a: &ReplayArgs, json: bool) -> Result<String, CliError> {
    let manifest = RunManifest::read(&a.manifest)?;
    for input in &manifest.inputs {
        let now = Artifact::of_file(&input.path)?;
        if now.sha256 != input.sha256 {
            return Err(CliError::Domain(format!("input {} changed since the run", input.path.display())));
        }
    }
    let recorded = manifest
        .outputs
        .first()
        .ok_or_else(|| CliError::Domain("manifest records no output".into()))?;
    let target: PathBuf = a.out.clone().unwrap_or_else(|| recorded.path.clone());
    let argv: Vec<String> = manifest
        .argv_with_out(&target)
        .into_iter()
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    let cli = crate::parse(&argv)?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(CliError::Domain("a manifest cannot record a replay".into()));
    }
    execute(&cli, &argv)?;
    let actual = sha256_hex(&std::fs::read(&target).map_err(CliError::io(&target))?);
    if actual != recorded.sha256 {
        return Err(CliError::ReplayMismatch {
            path: target,
            expected: recorded.sha256.clone(),
            actual,
        });
    }
    Ok(if json {
        json_line(json!({ "identical": true, "output": target, "sha256": actual }))
    } else {
        format!("identical {} {}\n", target.display(), actual)
    })
}
