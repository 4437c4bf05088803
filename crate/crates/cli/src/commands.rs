use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use silverbig_core::big::{build_big, expected_srg, verify_srg};
use silverbig_core::decider::{
    decide_silver, decide_silver_any, find_triple_certificate, Decision, DEFAULT_DECIDE_BUDGET,
};
use silverbig_core::designs::{
    find_parallel_class, make_affine_plane, make_kts, make_projective_plane, make_sts,
    product_design, verify_design, ClassMode, ClassSearch, ColorLabel, Design, StsVariant,
};
use silverbig_core::format::{
    write_alpha_set, write_coloring, write_design, write_graph, write_triple_certificate,
};
use silverbig_core::independence::{
    enumerate_alpha_sets, max_independent_set, IndependentSet, DEFAULT_ENUM_BUDGET,
    DEFAULT_MIS_BUDGET,
};
use silverbig_core::silver::{
    construct_silver_canonical, is_proper, is_silver, rainbow_vertices, screen, Certificate,
    Coloring, Refutation, ScreenFacts, Verdict,
};
use silverbig_core::Graph;

use crate::files::{read_alpha_set, read_coloring, read_design, read_graph, write_atomic};
use crate::report::RunReport;
use crate::{Cli, Command, ConstructArgs, Family, MakeArgs, SilverCommand, Status};

pub fn run(cli: Cli) -> Result<Status> {
    let mut rep = RunReport::new();
    let budget = |default| cli.budget.unwrap_or(default);
    let status = match cli.command {
        Command::Make(args) => make(args, &mut rep)?,
        Command::Verify { design } => verify(&design, &mut rep)?,
        Command::Big { i, design, output } => big(i, &design, &output, &mut rep)?,
        Command::Alpha { graph, enumerate } => {
            alpha(&graph, enumerate, budget(DEFAULT_ENUM_BUDGET), &mut rep)?
        }
        Command::Screen { design, i } => {
            let d = read_design(&design)?;
            rep.design(&d);
            screen_cmd(&d, i, budget(DEFAULT_MIS_BUDGET), true, &mut rep)?.0
        }
        Command::Silver(SilverCommand::Check {
            graph,
            coloring,
            alpha_set,
            design,
        }) => check(
            &graph,
            &coloring,
            &alpha_set,
            design.as_deref(),
            budget(DEFAULT_MIS_BUDGET),
            &mut rep,
        )?,
        Command::Silver(SilverCommand::Decide {
            design,
            i,
            alpha_set,
            all_alpha: _,
            output,
        }) => decide(
            &design,
            i,
            alpha_set.as_deref(),
            output.as_deref(),
            budget(DEFAULT_DECIDE_BUDGET),
            &mut rep,
        )?,
        Command::Silver(SilverCommand::Construct(args)) => construct(args, &mut rep)?,
        Command::Report { design, output } => {
            let dir = output.unwrap_or_else(|| {
                let mut s = design.clone().into_os_string();
                s.push(".report");
                PathBuf::from(s)
            });
            report(&design, &dir, cli.budget, &mut rep)?
        }
    };
    rep.print();
    Ok(status)
}

fn put(rep: &mut RunReport, dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    write_atomic(&path, contents)?;
    rep.file(&path);
    Ok(())
}

fn make(args: MakeArgs, rep: &mut RunReport) -> Result<Status> {
    let v = || args.v.context("this family needs --v");
    let n = || args.n.context("this family needs --n");
    let d = match args.family {
        Family::StsBose => make_sts(v()?, StsVariant::Bose)?,
        Family::StsSkolem => make_sts(v()?, StsVariant::Skolem)?,
        Family::Sts13Cyclic => make_sts(args.v.unwrap_or(13), StsVariant::Cyclic13)?,
        Family::Sts13Noncyclic => make_sts(args.v.unwrap_or(13), StsVariant::Noncyclic13)?,
        Family::Kts => make_kts(v()?)?,
        Family::Ag => make_affine_plane(n()?)?,
        Family::Pg => make_projective_plane(n()?)?,
    };
    write_atomic(&args.output, &write_design(&d))?;
    rep.design(&d);
    rep.note(format!("blocks: {}", d.b()));
    if let Some(res) = d.resolution() {
        rep.note(format!("parallel classes: {}", res.len()));
    }
    rep.file(&args.output);
    Ok(Status::Ok)
}

fn verify(path: &Path, rep: &mut RunReport) -> Result<Status> {
    let d = read_design(path)?;
    rep.design(&d);
    let r = verify_design(&d);
    rep.note(format!("blocks: {} (expected {})", r.b, r.expected_b));
    for (times, pairs) in &r.coverage {
        rep.note(format!("pairs covered {times} times: {pairs}"));
    }
    for ((x, y), c) in r.violations.iter().take(10) {
        rep.note(format!("pair {{{x}, {y}}} covered {c} times"));
    }
    if let Some(res) = d.resolution() {
        rep.note(format!("resolution: {} parallel classes", res.len()));
    }
    rep.verdict(None, if r.ok { "balanced" } else { "not balanced" });
    Ok(if r.ok { Status::Ok } else { Status::Negative })
}

fn note_srg(d: &Design, i: usize, g: &Graph, rep: &mut RunReport) -> Result<()> {
    rep.note(format!(
        "{i}-BIG: {} vertices, {} edges",
        g.n(),
        g.edge_count()
    ));
    if d.lambda() != 1 || i > 1 {
        return Ok(());
    }
    let p = expected_srg(d.v(), d.k(), i)?;
    let r = verify_srg(g, &p);
    match (r.ok, p.degenerate) {
        (true, true) => rep.note(format!(
            "{i}-BIG: {}-regular, complete or edgeless",
            p.degree
        )),
        (true, false) => rep.note(format!(
            "{i}-BIG: SRG({}, {}, {}, {})",
            p.n, p.degree, p.lambda_adj, p.mu
        )),
        (false, _) => rep.note(format!(
            "{i}-BIG: not SRG{:?}: {:?}",
            (p.n, p.degree, p.lambda_adj, p.mu),
            r.counterexample
        )),
    }
    Ok(())
}

fn big(i: usize, design: &Path, output: &Path, rep: &mut RunReport) -> Result<Status> {
    let d = read_design(design)?;
    rep.design(&d);
    let g = build_big(&d, i)?;
    write_atomic(output, &write_graph(&g))?;
    note_srg(&d, i, &g, rep)?;
    rep.file(output);
    Ok(Status::Ok)
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn alpha(path: &Path, enumerate: bool, budget: u64, rep: &mut RunReport) -> Result<Status> {
    let g = read_graph(path)?;
    let mis = max_independent_set(&g, budget)?;
    rep.alpha(None, Some(mis.set.len()), mis.exact);
    rep.note(format!("alpha-set: {}", join(mis.set.vertices())));
    if !mis.exact {
        return Ok(Status::Budget);
    }
    if enumerate {
        let all = enumerate_alpha_sets(&g, mis.set.len(), budget)?;
        rep.note(format!(
            "maximum independent sets: {}{}",
            all.sets.len(),
            if all.complete { "" } else { " (incomplete)" }
        ));
        for s in &all.sets {
            rep.note(format!("alpha-set: {}", join(s.vertices())));
        }
        if !all.complete {
            return Ok(Status::Budget);
        }
    }
    Ok(Status::Ok)
}

fn describe(c: &Certificate) -> String {
    match c {
        Certificate::ParallelClass(b) => format!("parallel class, blocks {}", join(b)),
        Certificate::NearParallelClass(b) => format!("near parallel class, blocks {}", join(b)),
        Certificate::LowerBound { alpha, bound } => format!("alpha = {alpha} > {bound}"),
        Certificate::Threshold { v, threshold } => format!("v = {v} > {threshold}"),
        Certificate::Refutations(r) => format!("{} alpha-sets refuted", r.len()),
    }
}

/// Runs every applicable screen. Returns the status and whether a screen fired.
fn screen_cmd(
    d: &Design,
    i: usize,
    budget: u64,
    final_word: bool,
    rep: &mut RunReport,
) -> Result<(Status, bool)> {
    ensure!(i <= 1, "screens exist for i = 0 and i = 1 only");
    let mut facts = ScreenFacts::default();
    let mut incomplete = false;
    if i == 1 {
        for (mode, slot) in [
            (ClassMode::Full, &mut facts.pc),
            (ClassMode::Near, &mut facts.near_pc),
        ] {
            match find_parallel_class(d, mode, budget)? {
                ClassSearch::Found(c) => *slot = Some(c),
                ClassSearch::NoneExists => {}
                ClassSearch::Unknown => incomplete = true,
            }
        }
        let mis = max_independent_set(&build_big(d, 1)?, budget)?;
        rep.alpha(Some(1), Some(mis.set.len()), mis.exact);
        if mis.exact {
            facts.alpha = Some(mis.set.len());
        } else {
            incomplete = true;
        }
    }
    let verdicts = screen(d, i, &facts)?;
    for v in &verdicts {
        if let Verdict::NotSilver {
            reason,
            certificate,
        } = v
        {
            rep.verdict(
                Some(i),
                format!("not silver: {reason} ({})", describe(certificate)),
            );
        }
    }
    if !verdicts.is_empty() {
        return Ok((Status::Negative, true));
    }
    let text = if incomplete {
        "no screen applies (some searches ran out of budget)"
    } else {
        "no screen applies"
    };
    if final_word {
        rep.verdict(Some(i), text);
    } else {
        rep.note(format!("{i}-BIG: {text}"));
    }
    Ok((
        if incomplete {
            Status::Budget
        } else {
            Status::Ok
        },
        false,
    ))
}

/// Pairwise disjoint blocks cover `k` points each, so the 1-BIG has alpha at
/// most `floor(v/k)`. `None` unless `g` is that graph.
fn disjoint_block_bound(design: Option<&Path>, g: &Graph) -> Result<Option<usize>> {
    let Some(path) = design else {
        return Ok(None);
    };
    let d = read_design(path)?;
    ensure!(
        build_big(&d, 1)? == *g,
        "the graph is not the 1-BIG of {}",
        path.display()
    );
    Ok(Some(d.v() / d.k()))
}

fn check(
    graph: &Path,
    coloring: &Path,
    set: &Path,
    design: Option<&Path>,
    budget: u64,
    rep: &mut RunReport,
) -> Result<Status> {
    let g = read_graph(graph)?;
    let c = read_coloring(coloring)?;
    let s = read_alpha_set(set)?;
    ensure!(
        g.is_independent(&s),
        "{} is not an independent set of the graph",
        set.display()
    );
    let proper = is_proper(&g, &c)?;
    rep.note(format!("proper: {}", if proper { "yes" } else { "no" }));
    let rainbow = rainbow_vertices(&g, &c)?;
    let hit = s
        .iter()
        .filter(|x| rainbow.binary_search(x).is_ok())
        .count();
    rep.note(format!("rainbow vertices: {} of {}", rainbow.len(), g.n()));
    rep.note(format!("rainbow vertices of the set: {hit} of {}", s.len()));
    let (alpha, exact) = match disjoint_block_bound(design, &g)? {
        Some(bound) if bound == s.len() => (bound, true),
        _ => {
            let mis = max_independent_set(&g, budget)?;
            (mis.set.len(), mis.exact)
        }
    };
    rep.alpha(None, Some(alpha.max(s.len())), exact);
    let maximum = alpha <= s.len();
    if !maximum {
        rep.note(format!(
            "the set has {} vertices, fewer than alpha",
            s.len()
        ));
    }
    let silver = is_silver(&g, &c, &s, None)? && maximum;
    rep.verdict(
        None,
        match (silver, exact) {
            (true, true) => "silver",
            (true, false) => "silver with respect to the set; maximality not proven within budget",
            (false, _) => "not silver",
        },
    );
    Ok(match (silver, exact) {
        (false, _) => Status::Negative,
        (true, true) => Status::Ok,
        (true, false) => Status::Budget,
    })
}

fn write_silver(
    dir: Option<&Path>,
    g: &Graph,
    c: &Coloring,
    set: &[usize],
    rep: &mut RunReport,
) -> Result<()> {
    match dir {
        Some(dir) => {
            put(rep, dir, "graph.txt", &write_graph(g))?;
            put(rep, dir, "coloring.txt", &write_coloring(c))?;
            put(rep, dir, "alpha-set.txt", &write_alpha_set(set))?;
        }
        None => rep.note("pass -o <dir> to write the coloring"),
    }
    Ok(())
}

fn decide(
    design: &Path,
    i: usize,
    set_file: Option<&Path>,
    out: Option<&Path>,
    budget: u64,
    rep: &mut RunReport,
) -> Result<Status> {
    let d = read_design(design)?;
    rep.design(&d);
    let g = build_big(&d, i)?;
    if let Some(path) = set_file {
        let set = IndependentSet::new(&g, read_alpha_set(path)?)
            .with_context(|| format!("in {}", path.display()))?;
        let cert = find_triple_certificate(&g, &set)?;
        let report = decide_silver(&g, &set, budget)?;
        rep.note(format!("search steps: {}", report.steps));
        return Ok(match report.decision {
            Decision::Sat(c) => {
                rep.verdict(Some(i), "silver with respect to the given set");
                write_silver(out, &g, &c, set.vertices(), rep)?;
                Status::Ok
            }
            Decision::Unsat => {
                rep.verdict(
                    Some(i),
                    "not silver with respect to the given set (exhaustive search)",
                );
                if let Some(cert) = cert {
                    rep.note(write_triple_certificate(&cert).trim_end().to_string());
                    if let Some(dir) = out {
                        put(
                            rep,
                            dir,
                            "certificate.txt",
                            &write_triple_certificate(&cert),
                        )?;
                    }
                }
                Status::Negative
            }
            Decision::Unknown => {
                rep.verdict(
                    Some(i),
                    format!("unknown: budget of {budget} steps exhausted"),
                );
                Status::Budget
            }
        });
    }
    let verdict = decide_silver_any(&g, budget)?;
    record_verdict(i, &g, verdict, out, rep)
}

fn record_verdict(
    i: usize,
    g: &Graph,
    v: Verdict,
    out: Option<&Path>,
    rep: &mut RunReport,
) -> Result<Status> {
    Ok(match v {
        Verdict::Silver {
            coloring,
            alpha_set,
        } => {
            rep.alpha(Some(i), Some(alpha_set.len()), true);
            rep.verdict(Some(i), "silver");
            write_silver(out, g, &coloring, alpha_set.vertices(), rep)?;
            Status::Ok
        }
        Verdict::NotSilver {
            reason,
            certificate,
        } => {
            rep.verdict(Some(i), format!("not silver: {reason}"));
            if let Certificate::Refutations(list) = &certificate {
                if let Some(first) = list.first() {
                    rep.alpha(Some(i), Some(first.alpha_set.len()), true);
                }
                rep.note(format!("{i}-BIG certificates: {}", list.len()));
                for (j, r) in list.iter().enumerate() {
                    let mut text = format!("alpha-set {}\n", join(r.alpha_set.vertices()));
                    match &r.by {
                        Refutation::Triple(c) => text.push_str(&write_triple_certificate(c)),
                        Refutation::Search { steps } => {
                            text.push_str(&format!("exhaustive search, {steps} steps\n"))
                        }
                    }
                    rep.note(format!("{i}-BIG certificate {j}:\n{}", text.trim_end()));
                    if let Some(dir) = out {
                        put(rep, dir, &format!("i{i}-certificate-{j:03}.txt"), &text)?;
                    }
                }
            } else {
                rep.note(describe(&certificate));
            }
            Status::Negative
        }
        Verdict::Unknown { budget } => {
            rep.verdict(Some(i), format!("unknown: budget of {budget} exhausted"));
            Status::Budget
        }
    })
}

fn construct(args: ConstructArgs, rep: &mut RunReport) -> Result<Status> {
    let dir = &args.output;
    if args.canonical {
        let (Some(path), Some(i)) = (&args.design, args.i) else {
            bail!("--canonical needs --design and --i");
        };
        let d = read_design(path)?;
        rep.design(&d);
        let (c, s) = construct_silver_canonical(&d, i)
            .context("no explicit coloring: the design is neither symmetric nor an affine plane")?;
        let g = build_big(&d, i)?;
        ensure!(
            is_silver(&g, &c, s.vertices(), None)?,
            "internal error: coloring failed verification"
        );
        put(rep, dir, "design.blk", &write_design(&d))?;
        write_silver(Some(dir), &g, &c, s.vertices(), rep)?;
        rep.verdict(Some(i), format!("silver, {} colors", c.num_colors()));
        return Ok(Status::Ok);
    }
    let (Some(n), Some(path)) = (args.plane, &args.rbibd) else {
        bail!("--product needs --plane and --rbibd");
    };
    let base = read_design(path)?;
    let out = product_design(&make_affine_plane(n)?, &base)?;
    let g = build_big(&out.design, 1)?;
    ensure!(
        is_silver(&g, &out.coloring, out.alpha_set.vertices(), None)?,
        "internal error: product coloring failed verification"
    );
    rep.design(&out.design);
    put(rep, dir, "design.blk", &write_design(&out.design))?;
    write_silver(Some(dir), &g, &out.coloring, out.alpha_set.vertices(), rep)?;
    let mut legend = String::from("# color: source\n");
    for (c, label) in out.color_legend.iter().enumerate() {
        let text = match label {
            ColorLabel::Zero => "collapsed class".to_string(),
            ColorLabel::Pair { plane_block, class } => {
                format!("plane block {plane_block}, base class {class}")
            }
        };
        legend.push_str(&format!("{c}: {text}\n"));
    }
    put(rep, dir, "legend.txt", &legend)?;
    rep.verdict(
        Some(1),
        format!("silver, {} colors", out.coloring.num_colors()),
    );
    Ok(Status::Ok)
}

fn report(path: &Path, dir: &Path, budget: Option<u64>, rep: &mut RunReport) -> Result<Status> {
    let d = read_design(path)?;
    rep.design(&d);
    let r = verify_design(&d);
    if !r.ok {
        rep.verdict(None, "not balanced");
        return Ok(Status::Negative);
    }
    ensure!(
        d.lambda() == 1,
        "the report covers Steiner 2-designs (lambda = 1)"
    );
    let mut status = Status::Ok;
    for i in 0..=1 {
        let g = build_big(&d, i)?;
        put(rep, dir, &format!("graph-i{i}.txt"), &write_graph(&g))?;
        note_srg(&d, i, &g, rep)?;
        let (screened, fired) =
            screen_cmd(&d, i, budget.unwrap_or(DEFAULT_MIS_BUDGET), false, rep)?;
        if fired {
            continue;
        }
        if screened == Status::Budget {
            status = Status::Budget;
        }
        if let Some((c, s)) = construct_silver_canonical(&d, i) {
            rep.verdict(Some(i), "silver (explicit coloring)");
            let sub = dir.join(format!("i{i}"));
            write_silver(Some(&sub), &g, &c, s.vertices(), rep)?;
            continue;
        }
        let v = decide_silver_any(&g, budget.unwrap_or(DEFAULT_DECIDE_BUDGET))?;
        if record_verdict(i, &g, v, Some(&dir.join(format!("i{i}"))), rep)? == Status::Budget {
            status = Status::Budget;
        }
    }
    Ok(status)
}
