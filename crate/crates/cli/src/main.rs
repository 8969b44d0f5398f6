use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gzoo::catalog::{Catalog, GroupSource, LoadedCatalog};
use gzoo::contextuality::{kappa, ContextualityError};
use gzoo::coset::{
    low_index_subgroups_with, todd_coxeter, CosetError, CosetTable, LowIndexOptions,
    DEFAULT_MAX_COSETS, DEFAULT_NODE_BUDGET,
};
use gzoo::dessin::{modular_invariants, passport, signature};
use gzoo::geometry::{
    basic_hyperplanes, build_defined_geometry, build_stabilized_geometry,
    classify_generalized_polygon, classify_gu, dual_geometry, graph_stats, is_hyperplane,
    predict_polar_space, veldkamp_closure, CliqueSelection, DefinedOptions, GeometryError,
    HyperplaneOptions, IncidenceGeometry, DEFAULT_CLIQUE_BUDGET, DEFAULT_CLOSURE_BUDGET,
};
use gzoo::perm::{classify_two_point_stabilizers, group_from, OrbitalStructure, PermutationGroup};
use gzoo::pipeline::{
    analyze, emit_json, emit_text, run_presentation, table_representation, PipelineOptions,
};
use gzoo::report::{check_catalog, entry_rows, CheckOptions, Verdict};
use gzoo::textio::{
    parse_group_file, parse_permutations, parse_subgroup, PermutationInput, Presentation,
    SubgroupSpec,
};

const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Permutation representations of two-generator groups, their dessins and
/// the point-line geometries cut out by two-point stabilizers.
#[derive(Parser)]
#[command(name = "gzoo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Todd-Coxeter enumeration of the cosets of a subgroup.
    Enumerate {
        #[arg(long)]
        grp: PathBuf,
        /// Subgroup generators (`sub:` block); defaults to the one in the
        /// group file, else the trivial subgroup.
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long)]
        json: bool,
    },
    /// All conjugacy classes of subgroups up to a given index.
    LowIndex {
        #[arg(long)]
        grp: PathBuf,
        #[arg(long)]
        max_index: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        /// Write one `.perm` file per class into this directory.
        #[arg(long)]
        emit_perm: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Order, rank, subdegrees and two-point stabilizer classes.
    Analyze {
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Dessin signature and passport.
    Dessin {
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Geometry of one stabilizer class.
    Geometry {
        #[command(flatten)]
        target: GeometryArgs,
        /// Swap points and lines.
        #[arg(long)]
        dual: bool,
        /// Print the lines.
        #[arg(long)]
        lines: bool,
        #[arg(long)]
        json: bool,
    },
    /// Contextuality ratio of a geometry on the cosets of a subgroup.
    Kappa {
        #[arg(long, conflicts_with = "perm")]
        grp: Option<PathBuf>,
        #[arg(long)]
        sub: Option<PathBuf>,
        /// Rejected: a raw permutation representation has no coset
        /// representatives.
        #[arg(long)]
        perm: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        class: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Stabilized)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, default_value_t = DEFAULT_CLIQUE_BUDGET)]
        clique_budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form parameters of the polar space of n qudits of dimension p.
    PredictPolar {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Basic hyperplanes of a geometry and their Veldkamp closure.
    Hyperplanes {
        #[command(flatten)]
        target: GeometryArgs,
        #[arg(long)]
        closure: bool,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_BUDGET)]
        closure_budget: u64,
        /// Leave the point itself out of its basic hyperplane.
        #[arg(long)]
        open: bool,
        /// Do not add the points at maximal distance.
        #[arg(long)]
        no_far: bool,
        #[arg(long)]
        json: bool,
    },
    /// Full run on a catalog entry, a presentation or a permutation file.
    Pipeline {
        /// Catalog entry name.
        name: Option<String>,
        #[arg(long, conflicts_with_all = ["name", "perm"])]
        grp: Option<PathBuf>,
        #[arg(long, conflicts_with = "name")]
        perm: Option<PathBuf>,
        #[command(flatten)]
        budgets: PipelineArgs,
        #[arg(long)]
        json: bool,
    },
    /// Runs the catalog; with --check compares against expected values.
    Report {
        #[arg(long)]
        check: bool,
        /// Include entries marked extended.
        #[arg(long)]
        extended: bool,
        /// Restrict to these entries.
        #[arg(long = "group")]
        groups: Vec<String>,
        #[command(flatten)]
        budgets: PipelineArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct GeometryArgs {
    #[arg(long)]
    perm: PathBuf,
    #[arg(long, default_value_t = 0)]
    class: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Stabilized)]
    mode: ModeArg,
    /// Defined mode: every maximal clique instead of the maximum ones.
    #[arg(long)]
    maximal: bool,
    /// Stabilized mode: build on a class with trivial stabilizer.
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = DEFAULT_CLIQUE_BUDGET)]
    clique_budget: usize,
}

#[derive(Args)]
struct PipelineArgs {
    /// Catalog directory (containing catalog.toml) instead of the built-in one.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Overrides the catalog bound for presentations.
    #[arg(long)]
    max_index: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    #[arg(long, default_value_t = DEFAULT_CLIQUE_BUDGET)]
    clique_budget: usize,
    /// Defined mode keeps only maximum cliques.
    #[arg(long)]
    maximum_only: bool,
    #[arg(long)]
    no_kappa: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Stabilized,
    Defined,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let budget = error.chain().any(|c| {
            matches!(
                c.downcast_ref::<CosetError>(),
                Some(
                    CosetError::EnumerationOverflow { .. }
                        | CosetError::SearchBudgetExceeded { .. }
                )
            ) || matches!(
                c.downcast_ref::<GeometryError>(),
                Some(
                    GeometryError::CliqueBudgetExceeded(_)
                        | GeometryError::ClosureBudgetExceeded { .. }
                )
            )
        });
        Failure {
            code: if budget { EXIT_BUDGET } else { EXIT_INPUT },
            error,
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`gzoo ... | head`) instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if f.code != EXIT_MISMATCH {
                eprintln!("error: {:#}", f.error);
            }
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_perm(path: &Path) -> Result<PermutationInput> {
    parse_permutations(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_group(grp: &Path, sub: Option<&Path>) -> Result<(Presentation, SubgroupSpec)> {
    let file =
        parse_group_file(&read(grp)?).with_context(|| format!("parsing {}", grp.display()))?;
    let spec = match sub {
        Some(s) => parse_subgroup(&read(s)?, &file.presentation)
            .with_context(|| format!("parsing {}", s.display()))?,
        None => file.subgroup.unwrap_or_default(),
    };
    Ok((file.presentation, spec))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Enumerate {
            grp,
            sub,
            max_cosets,
            json,
        } => enumerate(&grp, sub.as_deref(), max_cosets, json),
        Command::LowIndex {
            grp,
            max_index,
            node_budget,
            emit_perm,
            json,
        } => low_index(&grp, max_index, node_budget, emit_perm.as_deref(), json),
        Command::Analyze { perm, json } => analyze_cmd(&perm, json),
        Command::Dessin { perm, json } => dessin_cmd(&perm, json),
        Command::Geometry {
            target,
            dual,
            lines,
            json,
        } => geometry_cmd(&target, dual, lines, json),
        Command::Kappa {
            grp,
            sub,
            perm,
            class,
            mode,
            max_cosets,
            clique_budget,
            json,
        } => {
            if perm.is_some() {
                return Err(ContextualityError::NoCosetTable.into());
            }
            let grp = grp.ok_or_else(|| anyhow!("--grp is required"))?;
            kappa_cmd(
                &grp,
                sub.as_deref(),
                class,
                mode,
                max_cosets,
                clique_budget,
                json,
            )
        }
        Command::PredictPolar { p, n, json } => {
            let pred = predict_polar_space(p, n)?;
            if json {
                print_json(&pred);
            } else {
                println!("{pred}");
            }
            Ok(())
        }
        Command::Hyperplanes {
            target,
            closure,
            closure_budget,
            open,
            no_far,
            json,
        } => {
            let opts = HyperplaneOptions {
                include_center: !open,
                far_points: !no_far,
            };
            hyperplanes_cmd(&target, closure.then_some(closure_budget), opts, json)
        }
        Command::Pipeline {
            name,
            grp,
            perm,
            budgets,
            json,
        } => pipeline_cmd(name, grp, perm, &budgets, json),
        Command::Report {
            check,
            extended,
            groups,
            budgets,
            json,
        } => report_cmd(check, extended, &groups, &budgets, json),
    }
}

fn enumerate(grp: &Path, sub: Option<&Path>, max_cosets: usize, json: bool) -> Outcome {
    let (p, h) = load_group(grp, sub)?;
    let t = todd_coxeter(&p, &h, max_cosets)?;
    let reps: Vec<String> = t
        .representatives()
        .iter()
        .map(|w| p.format_word(w))
        .collect();
    let rows: Vec<Vec<u32>> = t
        .rows()
        .chunks(4)
        .map(|r| r.iter().map(|c| c + 1).collect())
        .collect();
    if json {
        print_json(&json!({ "index": t.index(), "table": rows, "representatives": reps }));
        return Ok(());
    }
    let [x, y] = p.generator_names;
    let (xi, yi) = (x.to_ascii_uppercase(), y.to_ascii_uppercase());
    println!("index: {}", t.index());
    println!(
        "{:>6} {:>6} {:>6} {:>6} {:>6}  representative",
        "coset", x, xi, y, yi
    );
    for (i, (r, w)) in rows.iter().zip(&reps).enumerate() {
        println!(
            "{:>6} {:>6} {:>6} {:>6} {:>6}  {}",
            i + 1,
            r[0],
            r[1],
            r[2],
            r[3],
            w
        );
    }
    Ok(())
}

fn labels(tables: &[CosetTable]) -> Vec<String> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for t in tables {
        *counts.entry(t.index()).or_default() += 1;
    }
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    tables
        .iter()
        .map(|t| {
            let n = t.index();
            let k = seen.entry(n).or_default();
            *k += 1;
            if counts[&n] > 1 {
                format!("{n}_{}", (b'a' + ((*k - 1) % 26) as u8) as char)
            } else {
                n.to_string()
            }
        })
        .collect()
}

fn low_index(
    grp: &Path,
    max_index: usize,
    node_budget: u64,
    emit: Option<&Path>,
    json: bool,
) -> Outcome {
    let (p, _) = load_group(grp, None)?;
    let tables = low_index_subgroups_with(
        &p,
        &LowIndexOptions {
            max_index,
            node_budget,
        },
    )?;
    let labels = labels(&tables);
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (t, l) in tables.iter().zip(&labels) {
            let path = dir.join(format!("{l}.perm"));
            std::fs::write(&path, table_representation(t).to_string())
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let rows: Vec<_> = tables
        .iter()
        .zip(&labels)
        .map(|(t, l)| {
            let input = table_representation(t);
            let sig = signature(&input).ok();
            let sub: Vec<String> = t
                .subgroup_generators()
                .generators
                .iter()
                .map(|w| p.format_word(w))
                .collect();
            (l.clone(), t.index(), sig, sub)
        })
        .collect();
    if json {
        let v: Vec<_> = rows
            .iter()
            .map(
                |(l, n, s, sub)| json!({ "label": l, "index": n, "signature": s, "subgroup": sub }),
            )
            .collect();
        print_json(&v);
    } else {
        println!(
            "{:<8} {:>6}  {:<14} subgroup generators",
            "label", "index", "signature"
        );
        for (l, n, s, sub) in rows {
            let s = s.map_or("-".to_string(), |s| s.to_string());
            println!("{l:<8} {n:>6}  {s:<14} {}", sub.join(" "));
        }
    }
    Ok(())
}

fn analyze_cmd(perm: &Path, json: bool) -> Outcome {
    let input = load_perm(perm)?;
    if json {
        let opts = PipelineOptions {
            kappa: false,
            ..PipelineOptions::default()
        };
        let row = analyze(&perm.display().to_string(), &input, None, &opts);
        print_json(&row);
        return Ok(());
    }
    let g = group_from(&input);
    println!("degree: {}", g.degree());
    println!("order: {}", g.order());
    let orb = OrbitalStructure::new(&g)?;
    let profile = orb.rank_profile();
    println!("rank: {}", profile.rank);
    let sub: Vec<String> = profile.subdegrees.iter().map(|d| d.to_string()).collect();
    println!("subdegrees: {}", sub.join(" "));
    let cls = classify_two_point_stabilizers(&g)?;
    println!("m: {}", cls.m);
    println!("point stabilizer order: {}", cls.point_stabilizer.order());
    for (k, c) in cls.classes.iter().enumerate() {
        let approx = if c.fingerprint.is_approximate() {
            " (fingerprint only)"
        } else {
            ""
        };
        println!(
            "class {k}: order {}, valency {}{approx}",
            c.order, c.valency
        );
    }
    Ok(())
}

fn dessin_cmd(perm: &Path, json: bool) -> Outcome {
    let input = load_perm(perm)?;
    let sig = signature(&input)?;
    let pass = passport(&input)?;
    let modular = modular_invariants(&input).ok();
    if json {
        print_json(&json!({ "signature": sig, "passport": pass, "modular": modular }));
    } else {
        println!(
            "signature (B,W,F,g): {sig}  [B={}, W={}, F={}, g={}, edges={}]",
            sig.black, sig.white, sig.faces, sig.genus, sig.edges
        );
        println!("passport: {pass}");
        if let Some(m) = modular {
            println!("modular (n,g,nu2,nu3,c,f): {m}");
        }
    }
    Ok(())
}

fn build(g: &PermutationGroup, target: &GeometryArgs) -> Result<IncidenceGeometry> {
    let orb = OrbitalStructure::new(g)?;
    let cls = classify_two_point_stabilizers(g)?;
    Ok(match target.mode {
        ModeArg::Stabilized => {
            build_stabilized_geometry(g, &orb, &cls, target.class, target.force)?
        }
        ModeArg::Defined => {
            let opts = DefinedOptions {
                selection: if target.maximal {
                    CliqueSelection::Maximal
                } else {
                    CliqueSelection::Maximum
                },
                budget: target.clique_budget,
            };
            build_defined_geometry(g, &orb, &cls, target.class, &opts)?
        }
    })
}

fn one_based(lines: &[Vec<u32>]) -> Vec<Vec<u32>> {
    lines
        .iter()
        .map(|l| l.iter().map(|p| p + 1).collect())
        .collect()
}

fn geometry_cmd(target: &GeometryArgs, dual: bool, print_lines: bool, json: bool) -> Outcome {
    let input = load_perm(&target.perm)?;
    let g = group_from(&input);
    let mut geo = build(&g, target)?;
    if dual {
        geo = dual_geometry(&geo);
    }
    let conf = geo.configuration();
    let stats = graph_stats(&geo)?;
    let gu = classify_gu(&geo).ok();
    let polygon = classify_generalized_polygon(&geo);
    if json {
        print_json(&json!({
            "mode": geo.mode,
            "dual": geo.dual,
            "configuration": conf.to_string(),
            "config": conf,
            "partial_linear": geo.partial_linear,
            "graph": stats,
            "gu": gu,
            "polygon": polygon.map(|p| p.to_string()),
            "lines": print_lines.then(|| one_based(&geo.lines)),
        }));
        return Ok(());
    }
    println!(
        "mode: {}{}",
        geo.mode,
        if geo.dual { " (dual)" } else { "" }
    );
    println!("configuration: {conf}");
    println!(
        "partial linear space: {}",
        if geo.partial_linear { "yes" } else { "no" }
    );
    if let Some(s) = stats.srg {
        println!("collinearity graph: {s}");
    }
    if let Some(sp) = &stats.spectrum {
        println!("spectrum: {sp}");
    }
    println!(
        "diameter: {}, girth: {}",
        stats.diameter.map_or("inf".to_string(), |d| d.to_string()),
        stats.girth.map_or("none".to_string(), |d| d.to_string())
    );
    if let Some(gu) = gu {
        let hist: Vec<String> = gu
            .histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        match gu.u {
            Some(u) => println!("nearest points per line: u = {u}"),
            None => println!("nearest points per line: not constant ({})", hist.join(" ")),
        }
    }
    if let Some(p) = polygon {
        println!("generalized polygon: {p}");
    }
    if print_lines {
        for l in one_based(&geo.lines) {
            let s: Vec<String> = l.iter().map(|p| p.to_string()).collect();
            println!("{}", s.join(" "));
        }
    }
    Ok(())
}

fn kappa_cmd(
    grp: &Path,
    sub: Option<&Path>,
    class: usize,
    mode: ModeArg,
    max_cosets: usize,
    clique_budget: usize,
    json: bool,
) -> Outcome {
    let (p, h) = load_group(grp, sub)?;
    let t = todd_coxeter(&p, &h, max_cosets)?;
    let input = table_representation(&t);
    let g = group_from(&input);
    let target = GeometryArgs {
        perm: PathBuf::new(),
        class,
        mode,
        maximal: false,
        force: false,
        clique_budget,
    };
    let geo = build(&g, &target)?;
    let k = kappa(&t, &geo)?;
    let (num, den) = k.ratio();
    if json {
        print_json(&json!({
            "index": t.index(),
            "configuration": geo.configuration().to_string(),
            "edges": k.edges,
            "contextual_edges": k.contextual_edges,
            "kappa": k.rounded(),
            "exact": format!("{num}/{den}"),
        }));
    } else {
        println!("index: {}", t.index());
        println!("configuration: {}", geo.configuration());
        println!("kappa: {k}");
    }
    Ok(())
}

fn hyperplanes_cmd(
    target: &GeometryArgs,
    closure: Option<u64>,
    opts: HyperplaneOptions,
    json: bool,
) -> Outcome {
    let input = load_perm(&target.perm)?;
    let g = group_from(&input);
    let geo = build(&g, target)?;
    let basics = basic_hyperplanes(&geo, opts)?;
    let genuine = basics.iter().filter(|h| is_hyperplane(&geo, h)).count();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for h in &basics {
        *sizes.entry(h.count()).or_default() += 1;
    }
    let summary = match closure {
        Some(budget) => Some(veldkamp_closure(&basics, geo.points, budget)?),
        None => None,
    };
    if json {
        print_json(&json!({
            "configuration": geo.configuration().to_string(),
            "basic": basics.len(),
            "hyperplanes": genuine,
            "sizes": sizes,
            "closure": summary,
        }));
        return Ok(());
    }
    println!("configuration: {}", geo.configuration());
    println!(
        "basic hyperplanes: {} ({} meet every line in 1 or all points)",
        basics.len(),
        genuine
    );
    let s: Vec<String> = sizes.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    println!("sizes: {}", s.join(" "));
    if let Some(v) = summary {
        println!(
            "closure: 2^{} = {} sets in {} size classes",
            v.rank,
            v.total,
            v.classes.len()
        );
        for (size, count) in &v.classes {
            println!("  {size:>6} points: {count}");
        }
    }
    Ok(())
}

fn load_catalog(dir: Option<&Path>) -> Result<LoadedCatalog> {
    Ok(match dir {
        Some(d) => Catalog::load(d)?,
        None => Catalog::embedded(),
    })
}

fn pipeline_options(args: &PipelineArgs) -> PipelineOptions {
    let mut opts = PipelineOptions {
        node_budget: args.node_budget,
        kappa: !args.no_kappa,
        ..PipelineOptions::default()
    };
    opts.defined.budget = args.clique_budget;
    if args.maximum_only {
        opts.defined.selection = CliqueSelection::Maximum;
    }
    if let Some(m) = args.max_index {
        opts.max_index = m;
    }
    opts
}

fn pipeline_cmd(
    name: Option<String>,
    grp: Option<PathBuf>,
    perm: Option<PathBuf>,
    args: &PipelineArgs,
    json: bool,
) -> Outcome {
    let mut opts = pipeline_options(args);
    let rows = match (name, grp, perm) {
        (Some(name), None, None) => {
            let cat = load_catalog(args.catalog.as_deref())?;
            let entry = cat.entry(&name)?;
            match cat.source(entry)? {
                GroupSource::Presentation(p) => {
                    if args.max_index.is_none() {
                        opts.max_index = entry.max_index.unwrap_or(opts.max_index);
                    }
                    run_presentation(&entry.name, &p, &opts)?
                }
                GroupSource::Permutations(input) => vec![analyze(&entry.name, &input, None, &opts)],
                GroupSource::Unavailable => {
                    return Err(anyhow!(
                        "{} has no representation in the catalog: {}",
                        entry.name,
                        entry.note.as_deref().unwrap_or("not-computable-at-budget")
                    )
                    .into())
                }
            }
        }
        (None, Some(grp), None) => {
            let (p, _) = load_group(&grp, None)?;
            let name = grp
                .file_stem()
                .map_or("group".into(), |s| s.to_string_lossy().into_owned());
            run_presentation(&name, &p, &opts)?
        }
        (None, None, Some(perm)) => {
            let input = load_perm(&perm)?;
            let name = perm
                .file_stem()
                .map_or("group".into(), |s| s.to_string_lossy().into_owned());
            vec![analyze(&name, &input, None, &opts)]
        }
        _ => return Err(anyhow!("give a catalog name, --grp FILE or --perm FILE").into()),
    };
    if rows
        .iter()
        .any(|r| r.flags.iter().any(|f| f == gzoo::pipeline::FLAG_BUDGET))
    {
        eprintln!("warning: some geometries exceeded the clique budget");
    }
    print!(
        "{}",
        if json {
            emit_json(&rows)
        } else {
            emit_text(&rows)
        }
    );
    Ok(())
}

fn report_cmd(
    check: bool,
    extended: bool,
    groups: &[String],
    args: &PipelineArgs,
    json: bool,
) -> Outcome {
    let mut cat = load_catalog(args.catalog.as_deref())?;
    if !groups.is_empty() {
        for g in groups {
            cat.entry(g)?;
        }
        cat.catalog
            .groups
            .retain(|e| groups.iter().any(|g| g.eq_ignore_ascii_case(&e.name)));
    }
    for e in &cat.catalog.groups {
        cat.source(e)?;
    }
    let mut opts = CheckOptions {
        pipeline: pipeline_options(args),
        extended,
    };
    if args.max_index.is_none() {
        opts.pipeline.max_index = PipelineOptions::default().max_index;
    }
    if !check {
        let mut rows = Vec::new();
        for e in &cat.catalog.groups {
            match entry_rows(&cat, e, &opts) {
                Ok(r) => rows.extend(r),
                Err(reason) => eprintln!("{}: not-computable-at-budget: {reason}", e.name),
            }
        }
        print!(
            "{}",
            if json {
                emit_json(&rows)
            } else {
                emit_text(&rows)
            }
        );
        return Ok(());
    }
    let results = check_catalog(&cat, &opts);
    if json {
        print_json(&results);
    } else {
        for r in &results {
            println!("{r}");
        }
        let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
        let warnings: usize = results.iter().map(|r| r.warnings().count()).sum();
        println!(
            "{} match, {} mismatch, {} not-computable-at-budget, {} warnings",
            count(Verdict::Match),
            count(Verdict::Mismatch),
            count(Verdict::NotComputableAtBudget),
            warnings
        );
    }
    if results.iter().any(|r| r.verdict == Verdict::Mismatch) {
        return Err(Failure {
            code: EXIT_MISMATCH,
            error: anyhow!("regression mismatch"),
        });
    }
    Ok(())
}
