use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use schnyder_core::planar::{format_tri, generate_stacked, randomize_flips};
use schnyder_core::routing::{
    compare_strategies, route, verify_all_pairs, Counterexample, DeliveryReport,
    InstanceDescriptor, Outcome, RouteTrace, RoutingInstance, Strategy,
};
use schnyder_core::schnyder::{
    compute_drawing, compute_realizer, format_bary, region_counts_oracle, validate_drawing,
    validate_enclosing_triangle, validate_planarity, validate_realizer, validate_three_wedge,
};
use schnyder_core::vrac::{
    boundary_classifications, check_saturated, extract_saturated, format_sat,
    saturated_equals_realizer,
};
use schnyder_core::{
    Drawing, Realizer, Tree, Triangulation, ValidationReport, VertexId, Violation,
};

use crate::config::RunConfig;
use crate::files::{load_tri, to_json, write_atomic};
use crate::{svg, Command, Fault, Format, Output};

/// Counterexample files written per run, at most.
const MAX_DUMPS: usize = 50;
/// Instances above this size skip the quadratic region oracle in `verify`.
const ORACLE_LIMIT: usize = 500;

pub fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Gen {
            n,
            seed,
            flips,
            output,
        } => gen(n, seed, flips, output),
        Command::Realize {
            input,
            output,
            sat,
            out,
        } => realize(&input, output, sat, &out),
        Command::Draw {
            input,
            svg,
            bary,
            scale,
            no_tree_colors,
            out,
        } => draw(&input, svg, bary, scale, !no_tree_colors, &out),
        Command::Verify {
            input,
            counterexamples,
            inject_fault,
            out,
        } => verify(&input, &counterexamples, inject_fault, &out),
        Command::Route {
            input,
            from,
            to,
            strategy,
            max_hops,
            out,
        } => route_cmd(&input, from, to, strategy, max_hops, &out),
        Command::Allpairs {
            input,
            strategy,
            counterexamples,
            out,
        } => allpairs(&input, strategy, counterexamples, &out),
        Command::Compare {
            inputs,
            seeds,
            n,
            flips,
            strategies,
            out,
        } => compare(inputs, seeds, n, flips, strategies, &out),
    }
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

/// Prints the report in the requested format and copies it to `--report`.
fn emit<T: Serialize>(out: &Output, config: &RunConfig, body: &T, text: &str) -> Result<()> {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        config: &'a RunConfig,
        #[serde(flatten)]
        body: &'a T,
    }
    let json = to_json(&Envelope { config, body });
    match out.format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{text}"),
    }
    if let Some(p) = &out.report {
        let contents = match out.format {
            Format::Json => json,
            Format::Text => text.to_string(),
        };
        write_atomic(p, contents.as_bytes())?;
    }
    Ok(())
}

fn gen(n: usize, seed: u64, flips: usize, output: Option<PathBuf>) -> Result<ExitCode> {
    let base = generate_stacked(n, seed).with_context(|| format!("cannot generate n = {n}"))?;
    let t = randomize_flips(&base, flips, seed);
    let mut text = format!("# stacked n={n} seed={seed} flips={flips}\n");
    text.push_str(&format_tri(&t));
    let summary = format!(
        "n={} edges={} faces={}",
        t.n(),
        t.edge_count(),
        t.face_count()
    );
    match output {
        Some(p) => {
            write_atomic(&p, text.as_bytes())?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn realizer_of(t: &Triangulation) -> Result<Realizer> {
    compute_realizer(t).context("computing the realizer")
}

fn realize(
    input: &Path,
    output: Option<PathBuf>,
    sat: Option<PathBuf>,
    out: &Output,
) -> Result<ExitCode> {
    let (t, descriptor) = load_tri(input)?;
    let r = realizer_of(&t)?;
    let report = validate_realizer(&t, &r);
    let mut table = String::new();
    for v in t.internal_vertices() {
        let p = r.parents(v).unwrap();
        writeln!(table, "{} {} {} {}", v, p[0], p[1], p[2]).unwrap();
    }
    let mut config = RunConfig::new("realize", out.format);
    config.inputs.push(path_str(input));
    if let Some(p) = &output {
        write_atomic(p, table.as_bytes())?;
        config.outputs.push(path_str(p));
    }
    if let Some(p) = &sat {
        let d = compute_drawing(&t, &r)?;
        let sg = extract_saturated(&t, &d).context("extracting the saturated graph")?;
        write_atomic(p, format_sat(&sg).as_bytes())?;
        config.outputs.push(path_str(p));
    }

    #[derive(Serialize)]
    struct Body<'a> {
        instance: InstanceDescriptor,
        parents: &'a [Option<[VertexId; 3]>],
        check: &'a ValidationReport,
    }
    let mut text = if output.is_some() {
        String::new()
    } else {
        table.clone()
    };
    writeln!(text, "{report}").unwrap();
    let body = Body {
        instance: descriptor,
        parents: r.parent_table(),
        check: &report,
    };
    emit(out, &config, &body, &text)?;
    Ok(code(report.is_valid()))
}

fn with_extension(input: &Path, ext: &str) -> PathBuf {
    input.with_extension(ext)
}

fn draw(
    input: &Path,
    svg_path: Option<PathBuf>,
    bary_path: Option<PathBuf>,
    scale: f64,
    tree_colors: bool,
    out: &Output,
) -> Result<ExitCode> {
    if !(scale.is_finite() && scale > 0.0) {
        bail!("--scale must be a positive number");
    }
    let (t, descriptor) = load_tri(input)?;
    let r = realizer_of(&t)?;
    let d = compute_drawing(&t, &r)?;
    // all validation happens on exact coordinates before any rendering
    let checks = vec![validate_drawing(&t, &d), validate_planarity(&t, &d)];
    let ok = checks.iter().all(ValidationReport::is_valid);

    let svg_path = svg_path.unwrap_or_else(|| with_extension(input, "svg"));
    let bary_path = bary_path.unwrap_or_else(|| with_extension(input, "bary"));
    write_atomic(&bary_path, format_bary(&d).as_bytes())?;
    let picture = svg::render(&t, &d, tree_colors.then_some(&r), scale);
    write_atomic(&svg_path, picture.as_bytes())?;

    let mut config = RunConfig::new("draw", out.format);
    config.inputs.push(path_str(input));
    config.outputs = vec![path_str(&bary_path), path_str(&svg_path)];
    config.svg_scale = Some(scale);
    config.tree_colors = Some(tree_colors);

    #[derive(Serialize)]
    struct Body<'a> {
        instance: InstanceDescriptor,
        denom: i64,
        checks: &'a [ValidationReport],
    }
    let mut text = format!("wrote {} and {}\n", bary_path.display(), svg_path.display());
    for c in &checks {
        writeln!(text, "{c}").unwrap();
    }
    emit(
        out,
        &config,
        &Body {
            instance: descriptor,
            denom: d.denom(),
            checks: &checks,
        },
        &text,
    )?;
    Ok(code(ok))
}

#[derive(Debug, Clone, Serialize)]
struct CheckResult {
    name: String,
    status: &'static str,
    violations: usize,
    notes: usize,
    /// first few violations, canonically sorted
    details: Vec<Violation>,
}

impl CheckResult {
    fn from_report(mut r: ValidationReport) -> Self {
        r.canonicalize();
        CheckResult {
            name: r.check.clone(),
            status: if r.is_valid() { "pass" } else { "fail" },
            violations: r.violations.len(),
            notes: r.notes.len(),
            details: r.violations.into_iter().take(20).collect(),
        }
    }

    fn failed(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            status: "fail",
            violations: 1,
            notes: 0,
            details: vec![Violation::new("error", vec![], detail)],
        }
    }

    fn skipped(name: &str, why: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            status: "skipped",
            violations: 0,
            notes: 0,
            details: vec![Violation::new("skipped", vec![], why)],
        }
    }
}

#[derive(Serialize)]
struct DeliverySummary {
    strategy: Strategy,
    pairs_tested: usize,
    delivered: usize,
    failed: usize,
    max_hops: usize,
    mean_hops: f64,
    max_stretch: f64,
    non_simple: usize,
}

impl From<&DeliveryReport> for DeliverySummary {
    fn from(r: &DeliveryReport) -> Self {
        DeliverySummary {
            strategy: r.strategy,
            pairs_tested: r.pairs_tested,
            delivered: r.delivered,
            failed: r.failed,
            max_hops: r.max_hops,
            mean_hops: r.mean_hops,
            max_stretch: r.max_stretch,
            non_simple: r.non_simple,
        }
    }
}

#[derive(Serialize)]
struct CheckDump<'a> {
    instance: &'a InstanceDescriptor,
    check: &'a CheckResult,
    rotation: &'a [Vec<VertexId>],
    denom: i64,
    coords: &'a [[i64; 3]],
}

fn dump_routes(
    dir: &Path,
    descriptor: &InstanceDescriptor,
    t: &Triangulation,
    d: &Drawing,
    sg: &schnyder_core::SaturatedGraph,
    traces: &[RouteTrace],
) -> Result<Vec<String>> {
    let mut written = Vec::new();
    for trace in traces.iter().take(MAX_DUMPS) {
        let ce = Counterexample::new(Some(descriptor.clone()), t, d, sg, trace.clone());
        let p = dir.join(format!(
            "route-{}-{}-{}.json",
            trace.strategy,
            trace.source.index(),
            trace.destination.index()
        ));
        write_atomic(&p, to_json(&ce).as_bytes())?;
        written.push(path_str(&p));
    }
    Ok(written)
}

fn verify(input: &Path, dump_dir: &Path, fault: Option<Fault>, out: &Output) -> Result<ExitCode> {
    let (t, descriptor) = load_tri(input)?;
    if fault.is_some() && t.n() < 5 {
        bail!("--inject-fault needs at least two inner vertices");
    }
    let r = realizer_of(&t)?;
    let mut d = compute_drawing(&t, &r)?;
    if fault == Some(Fault::Drawing) {
        d.coords_mut().swap(3, 4);
    }

    let mut checks = vec![
        CheckResult::from_report(validate_realizer(&t, &r)),
        CheckResult::from_report(validate_drawing(&t, &d)),
    ];
    if t.n() <= ORACLE_LIMIT {
        let oracle = region_counts_oracle(&t, &r);
        let mut rep = ValidationReport::new("region-oracle");
        for v in t.vertices() {
            if oracle[v.index()] != d.coord(v) {
                rep.push(Violation::new(
                    "region-count",
                    vec![v],
                    format!(
                        "{v}: drawing {:?}, flood fill {:?}",
                        d.coord(v),
                        oracle[v.index()]
                    ),
                ));
            }
        }
        checks.push(CheckResult::from_report(rep));
    } else {
        checks.push(CheckResult::skipped(
            "region-oracle",
            "instance above the oracle size limit",
        ));
    }
    checks.push(CheckResult::from_report(validate_three_wedge(&t, &r, &d)));
    checks.push(CheckResult::from_report(validate_enclosing_triangle(
        &t, &r, &d,
    )));
    checks.push(CheckResult::from_report(validate_planarity(&t, &d)));

    let boundary = boundary_classifications(&t, &d).len();
    let mut delivery = None;
    let mut route_failures = Vec::new();
    match extract_saturated(&t, &d) {
        Err(e) => {
            checks.push(CheckResult::failed("saturated-extraction", e.to_string()));
            checks.push(CheckResult::skipped("saturated", "no saturated graph"));
            checks.push(CheckResult::skipped(
                "saturated-equals-realizer",
                "no saturated graph",
            ));
            checks.push(CheckResult::skipped("all-pairs", "no saturated graph"));
        }
        Ok(mut sg) => {
            checks.push(CheckResult::from_report(ValidationReport::new(
                "saturated-extraction",
            )));
            if fault == Some(Fault::Saturated) {
                sg.set(VertexId::new(3), Tree::T1, Some(VertexId::new(3)));
            }
            checks.push(CheckResult::from_report(check_saturated(&t, &d, &sg)));
            let mut rep = ValidationReport::new("saturated-equals-realizer");
            for m in saturated_equals_realizer(&sg, &r) {
                let cell = |v: Option<VertexId>| v.map_or("-".to_string(), |v| v.to_string());
                rep.push(Violation::new(
                    "mismatch",
                    vec![m.vertex],
                    format!(
                        "{} {}: saturated {}, parent {}",
                        m.vertex,
                        m.tree,
                        cell(m.saturated),
                        cell(m.parent)
                    ),
                ));
            }
            checks.push(CheckResult::from_report(rep));

            let report = verify_all_pairs(&t, &d, &sg, Strategy::SectorGreedy);
            let mut rep = ValidationReport::new("all-pairs");
            for c in &report.counterexamples {
                rep.push(Violation::new(
                    "undelivered",
                    vec![c.source, c.destination],
                    format!(
                        "{} -> {}: {:?} after {} hops",
                        c.source,
                        c.destination,
                        c.outcome,
                        c.hop_count()
                    ),
                ));
            }
            if report.non_simple > 0 {
                rep.push(Violation::new(
                    "non-simple",
                    vec![],
                    format!(
                        "{} delivered routes repeat a vertex or exceed n - 1 hops",
                        report.non_simple
                    ),
                ));
            }
            checks.push(CheckResult::from_report(rep));
            route_failures =
                dump_routes(dump_dir, &descriptor, &t, &d, &sg, &report.counterexamples)?;
            delivery = Some(DeliverySummary::from(&report));
        }
    }

    let passed = checks.iter().all(|c| c.status != "fail");
    let mut dumps = route_failures;
    if !passed {
        for c in checks
            .iter()
            .filter(|c| c.status == "fail" && c.name != "all-pairs")
        {
            let p = dump_dir.join(format!("check-{}.json", c.name));
            let dump = CheckDump {
                instance: &descriptor,
                check: c,
                rotation: t.rotation(),
                denom: d.denom(),
                coords: d.coords(),
            };
            write_atomic(&p, to_json(&dump).as_bytes())?;
            dumps.push(path_str(&p));
        }
    }

    let mut config = RunConfig::new("verify", out.format);
    config.inputs.push(path_str(input));
    config.strategies = vec![Strategy::SectorGreedy];
    config.max_hops = Some(t.n());
    config.inject_fault = fault;

    #[derive(Serialize)]
    struct Body {
        instance: InstanceDescriptor,
        n: usize,
        passed: bool,
        checks: Vec<CheckResult>,
        boundary_classifications: usize,
        delivery: Option<DeliverySummary>,
        counterexample_files: Vec<String>,
    }
    let mut text = String::new();
    for c in &checks {
        writeln!(
            text,
            "{:<26} {:>7}  ({} violations)",
            c.name, c.status, c.violations
        )
        .unwrap();
        for v in c.details.iter().take(5) {
            if c.status == "fail" {
                writeln!(text, "    {v}").unwrap();
            }
        }
    }
    if let Some(dl) = &delivery {
        writeln!(
            text,
            "sector-greedy: {}/{} delivered, max hops {}, max stretch {:.3}",
            dl.delivered, dl.pairs_tested, dl.max_hops, dl.max_stretch
        )
        .unwrap();
    }
    for p in &dumps {
        writeln!(text, "counterexample: {p}").unwrap();
    }
    writeln!(text, "{}", if passed { "PASS" } else { "FAIL" }).unwrap();
    let body = Body {
        instance: descriptor,
        n: t.n(),
        passed,
        checks,
        boundary_classifications: boundary,
        delivery,
        counterexample_files: dumps,
    };
    emit(out, &config, &body, &text)?;
    Ok(code(passed))
}

struct Prepared {
    t: Triangulation,
    d: Drawing,
    sg: schnyder_core::SaturatedGraph,
    descriptor: InstanceDescriptor,
}

fn prepare(input: &Path) -> Result<Prepared> {
    let (t, descriptor) = load_tri(input)?;
    let r = realizer_of(&t)?;
    let d = compute_drawing(&t, &r)?;
    let sg = extract_saturated(&t, &d).context("extracting the saturated graph")?;
    Ok(Prepared {
        t,
        d,
        sg,
        descriptor,
    })
}

fn route_cmd(
    input: &Path,
    from: VertexId,
    to: VertexId,
    strategy: Strategy,
    max_hops: Option<usize>,
    out: &Output,
) -> Result<ExitCode> {
    let p = prepare(input)?;
    let budget = max_hops.unwrap_or(p.t.n());
    let trace = route(&p.t, &p.d, &p.sg, from, to, strategy, budget)?;

    let mut config = RunConfig::new("route", out.format);
    config.inputs.push(path_str(input));
    config.strategies = vec![strategy];
    config.max_hops = Some(budget);
    config.from = Some(from.to_string());
    config.to = Some(to.to_string());

    let path: Vec<String> = trace.hops.iter().map(|v| v.to_string()).collect();
    let mut text = format!(
        "{}  ({:?}, {} hops)\n",
        path.join(" -> "),
        trace.outcome,
        trace.hop_count()
    );
    for dec in &trace.decisions {
        let sector = dec.sector.map_or("-".to_string(), |s| s.to_string());
        let next = dec.next.map_or("stuck".to_string(), |v| v.to_string());
        writeln!(
            text,
            "  at {:<4} sector {:<4} {:<10} -> {next}",
            dec.at,
            sector,
            format!("{:?}", dec.tier)
        )
        .unwrap();
    }

    #[derive(Serialize)]
    struct Body<'a> {
        instance: InstanceDescriptor,
        trace: &'a RouteTrace,
    }
    emit(
        out,
        &config,
        &Body {
            instance: p.descriptor,
            trace: &trace,
        },
        &text,
    )?;
    Ok(code(trace.outcome == Outcome::Delivered))
}

fn allpairs(
    input: &Path,
    strategy: Strategy,
    dump_dir: Option<PathBuf>,
    out: &Output,
) -> Result<ExitCode> {
    let p = prepare(input)?;
    let mut report = verify_all_pairs(&p.t, &p.d, &p.sg, strategy);
    report.descriptor = Some(p.descriptor.clone());

    let mut config = RunConfig::new("allpairs", out.format);
    config.inputs.push(path_str(input));
    config.strategies = vec![strategy];
    config.max_hops = Some(p.t.n());
    let mut files = Vec::new();
    if let Some(dir) = &dump_dir {
        files = dump_routes(
            dir,
            &p.descriptor,
            &p.t,
            &p.d,
            &p.sg,
            &report.counterexamples,
        )?;
        config.outputs.push(path_str(dir));
    }

    let mut text = format!(
        "{strategy}: {}/{} delivered, max hops {}, mean hops {:.3}, max stretch {:.3}\n",
        report.delivered,
        report.pairs_tested,
        report.max_hops,
        report.mean_hops,
        report.max_stretch
    );
    for c in report.counterexamples.iter().take(10) {
        writeln!(text, "  {} -> {}: {:?}", c.source, c.destination, c.outcome).unwrap();
    }
    for f in &files {
        writeln!(text, "counterexample: {f}").unwrap();
    }

    #[derive(Serialize)]
    struct Body<'a> {
        report: &'a DeliveryReport,
        counterexample_files: Vec<String>,
    }
    emit(
        out,
        &config,
        &Body {
            report: &report,
            counterexample_files: files,
        },
        &text,
    )?;
    let must_deliver = strategy != Strategy::EuclideanGreedy;
    Ok(code(!must_deliver || report.all_delivered()))
}

fn compare(
    inputs: Vec<PathBuf>,
    seeds: Option<(u64, u64)>,
    n: usize,
    flips: Option<usize>,
    strategies: Vec<Strategy>,
    out: &Output,
) -> Result<ExitCode> {
    let mut config = RunConfig::new("compare", out.format);
    config.strategies = strategies.clone();
    let mut instances = Vec::new();
    if let Some((a, b)) = seeds {
        let flips = flips.unwrap_or(10 * n);
        config.n = Some(n);
        config.seeds = Some([a, b]);
        config.flips = Some(flips);
        for seed in a..=b {
            let t = randomize_flips(
                &generate_stacked(n, seed).with_context(|| format!("cannot generate n = {n}"))?,
                flips,
                seed,
            );
            let r = realizer_of(&t)?;
            let d = compute_drawing(&t, &r)?;
            let sg = extract_saturated(&t, &d)?;
            instances.push(RoutingInstance {
                descriptor: InstanceDescriptor::Generated { n, seed, flips },
                triangulation: t,
                drawing: d,
                saturated: sg,
            });
        }
    } else if inputs.is_empty() {
        bail!("compare needs --seeds or at least one input file");
    } else {
        for input in &inputs {
            let p = prepare(input)?;
            config.inputs.push(path_str(input));
            instances.push(RoutingInstance {
                descriptor: p.descriptor,
                triangulation: p.t,
                drawing: p.d,
                saturated: p.sg,
            });
        }
    }
    let report = compare_strategies(&instances, &strategies);

    let mut text = String::from("instance");
    for s in &strategies {
        write!(text, "\t{s}").unwrap();
    }
    text.push('\n');
    for row in &report.rows {
        let name = match &row.descriptor {
            InstanceDescriptor::Generated { n, seed, .. } => format!("n={n} seed={seed}"),
            InstanceDescriptor::File { path, .. } => path.clone(),
            InstanceDescriptor::Fixture { name } => name.clone(),
        };
        text.push_str(&name);
        for r in &row.results {
            write!(text, "\t{:.4}", r.rate).unwrap();
        }
        text.push('\n');
    }
    text.push_str("total");
    for r in &report.totals {
        write!(text, "\t{:.4}", r.rate).unwrap();
    }
    text.push('\n');

    emit(out, &config, &report, &text)?;
    let sector_ok = report
        .totals
        .iter()
        .filter(|s| s.strategy == Strategy::SectorGreedy)
        .all(|s| s.delivered == s.pairs_tested);
    Ok(code(sector_ok))
}
