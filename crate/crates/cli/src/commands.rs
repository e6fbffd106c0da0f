//! Command implementations. Each returns the report text and an exit status
//! instead of printing, so that tests can drive them in-process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use flipdist::lp::{
    primal_lower_bound, verify_certificate, LpError, LpOptions, LpStatus,
    WeightFunction,
};
use flipdist::model::{triangulation_to_tree, tree_to_triangulation, BinaryTree, Triangulation};
use flipdist::search::{diameter, exact_distance, DiameterMode, SearchError, SearchOptions};
use flipdist::sphere::{
    default_separation, rotated_zigzag, select_rotation, sphere_union, zigzag, SphereError,
    SphereTriangulation, UnionMode,
};
use flipdist::weights::{
    assemble_weight_function, assemble_with, build_flow_instance, check_lemmas,
    check_tetrahedral_constraints, solve_figure_gap, total_weight, AssembledWeights,
    FigureOutcome, Variant, WeightContext, WeightError,
};
use thiserror::Error;

use crate::config::{Command, Format, RunConfig};

/// Stable process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Input = 2,
    Budget = 3,
    Verification = 4,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Input(_) | CliError::Io { .. } => ExitStatus::Input,
            CliError::Budget(_) => ExitStatus::Budget,
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SphereError> for CliError {
    fn from(e: SphereError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Report text plus the status the process should exit with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub status: ExitStatus,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Self {
            report,
            status: ExitStatus::Success,
        }
    }
}

/// Runs the configured command on a pool of `threads` workers (all cores
/// when unset).
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Input(format!("cannot start thread pool: {e}")))?;
    pool.install(|| dispatch(cfg))
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Distance {
            trees,
            show_path,
            decompose,
            fallback,
        } => cmd_distance(cfg, *trees, *show_path, *decompose, *fallback),
        Command::Bound {
            verify,
            certificate,
        } => cmd_bound(cfg, verify.as_deref(), certificate.as_deref()),
        Command::Construct {
            single,
            relaxed,
            out_dir,
        } => cmd_construct(cfg, *single, *relaxed, out_dir.as_deref()),
        Command::VerifyWeights {
            verify,
            certificate,
            provenance,
            vertex,
        } => cmd_verify_weights(cfg, verify.as_deref(), certificate.as_deref(), provenance.as_deref(), *vertex),
        Command::Diameter {
            sweep,
            sampled,
            seed,
        } => cmd_diameter(cfg, *sweep, *sampled, *seed),
        Command::Convert => cmd_convert(cfg),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    Triangulation::parse(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<BinaryTree, CliError> {
    BinaryTree::parse(read(path)?.trim())
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn unsupported(cfg: &RunConfig) -> CliError {
    CliError::Input(format!(
        "{} has no {} output",
        cfg.command.name(),
        cfg.format
    ))
}

fn diagonal_list(t: &Triangulation) -> String {
    t.diagonals()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

pub fn cmd_distance(
    cfg: &RunConfig,
    trees: bool,
    show_path: bool,
    decompose: bool,
    fallback: bool,
) -> Result<Outcome, CliError> {
    let (t1, t2) = if trees {
        let a = read_tree(&cfg.inputs[0])?;
        let b = read_tree(&cfg.inputs[1])?;
        (
            tree_to_triangulation(&a).map_err(|e| CliError::Input(e.to_string()))?,
            tree_to_triangulation(&b).map_err(|e| CliError::Input(e.to_string()))?,
        )
    } else {
        (read_triangulation(&cfg.inputs[0])?, read_triangulation(&cfg.inputs[1])?)
    };
    let opts = SearchOptions {
        node_budget: cfg.node_budget,
        decompose,
        ida_fallback: fallback,
        ..SearchOptions::default()
    };
    let (d, path) = exact_distance(&t1, &t2, &opts)?;
    let report = match cfg.format {
        Format::Text => {
            let mut out = format!("n={}\ndistance={d}\n", t1.n());
            if show_path {
                out.push_str(&path.to_text().map_err(|e| CliError::Input(e.to_string()))?);
            }
            out
        }
        Format::Csv => format!("n,distance\n{},{d}\n", t1.n()),
        Format::Dot => return Err(unsupported(cfg)),
    };
    Ok(Outcome::ok(report))
}

pub fn cmd_bound(
    cfg: &RunConfig,
    verify: Option<&Path>,
    certificate: Option<&Path>,
) -> Result<Outcome, CliError> {
    let t1 = read_triangulation(&cfg.inputs[0])?;
    let t2 = read_triangulation(&cfg.inputs[1])?;
    if let Some(cert) = verify {
        let w = WeightFunction::parse_certificate(&read(cert)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", cert.display())))?;
        return match verify_certificate(&w, &t1, &t2) {
            Ok(b) => Ok(Outcome::ok(match cfg.format {
                Format::Text => format!("bound={}\n", b),
                Format::Csv => format!("n,bound\n{},{}\n", t1.n(), b),
                Format::Dot => return Err(unsupported(cfg)),
            })),
            Err(e) => Err(CliError::Input(e.to_string())),
        };
    }
    let report = primal_lower_bound(&t1, &t2, &LpOptions::default())
        .map_err(|e: LpError| CliError::Input(e.to_string()))?;
    match report.status {
        LpStatus::Optimal => {}
        LpStatus::BudgetExceeded => return Err(CliError::Budget("simplex pivot budget exhausted".into())),
        LpStatus::Infeasible => {
            return Ok(Outcome {
                report: "status=infeasible\n".into(),
                status: ExitStatus::Verification,
            })
        }
    }
    let value = report.optimum.as_ref().expect("optimal LP has a value");
    let mut out = match cfg.format {
        Format::Text => format!("status=optimal\nm*={value} M*={value}\n"),
        Format::Csv => report.to_csv(),
        Format::Dot => return Err(unsupported(cfg)),
    };
    if let Some(path) = certificate {
        write(path, &report.dual.to_certificate())?;
        if cfg.format == Format::Text {
            let _ = writeln!(out, "certificate={}", path.display());
        }
    }
    Ok(Outcome::ok(out))
}

fn histogram_line(s: &SphereTriangulation) -> String {
    s.degree_histogram()
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn rotation(cfg: &RunConfig, n: usize) -> Result<usize, CliError> {
    match cfg.r {
        Some(r) => Ok(r),
        None => Ok(select_rotation(n, default_separation(n))?.r),
    }
}

pub fn cmd_construct(
    cfg: &RunConfig,
    single: bool,
    relaxed: bool,
    out_dir: Option<&Path>,
) -> Result<Outcome, CliError> {
    let n = cfg.n.expect("validated");
    let t1 = zigzag(n)?;
    if single {
        if let Some(dir) = out_dir {
            write(&dir.join("zigzag.tri"), &t1.to_text())?;
        }
        return match cfg.format {
            Format::Text => Ok(Outcome::ok(t1.to_text())),
            _ => Err(unsupported(cfg)),
        };
    }
    let r = rotation(cfg, n)?;
    let t2 = rotated_zigzag(n, r)?;
    let mode = if relaxed { UnionMode::Relaxed } else { UnionMode::Strict };
    let sphere = sphere_union(&t1, &t2, mode)?;
    let histogram = histogram_line(&sphere);
    let mut out = String::new();
    let _ = write!(
        out,
        "n={n}\nr={r}\nvertices={}\nfaces={}\nedges={}\nhistogram={histogram}\nsimple={}\n",
        sphere.vertex_count(),
        sphere.faces().len(),
        sphere.edge_count(),
        sphere.is_simple()
    );
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let files = [
            ("zigzag.tri", t1.to_text()),
            ("rotated.tri", t2.to_text()),
            ("sphere.faces", sphere.to_face_list()),
            ("histogram.txt", format!("histogram={histogram}\n")),
            ("sphere.dot", sphere.to_dot()),
        ];
        for (name, text) in files {
            let path = dir.join(name);
            write(&path, &text)?;
            let _ = writeln!(out, "wrote={}", path.display());
        }
    }
    let report = match cfg.format {
        Format::Text => out,
        Format::Csv => sphere.distance_csv(),
        Format::Dot => sphere.to_dot(),
    };
    Ok(Outcome::ok(report))
}

fn sphere_for(cfg: &RunConfig, n: usize) -> Result<(usize, Triangulation, Triangulation, SphereTriangulation), CliError> {
    let r = rotation(cfg, n)?;
    let t1 = zigzag(n)?;
    let t2 = rotated_zigzag(n, r)?;
    let sphere = sphere_union(&t1, &t2, UnionMode::Strict)?;
    Ok((r, t1, t2, sphere))
}

pub fn cmd_verify_weights(
    cfg: &RunConfig,
    verify: Option<&Path>,
    certificate: Option<&Path>,
    provenance: Option<&Path>,
    vertex: usize,
) -> Result<Outcome, CliError> {
    let n = cfg.n.expect("validated");
    let (r, t1, t2, sphere) = sphere_for(cfg, n)?;
    let mut out = String::new();

    if let Some(cert) = verify {
        let w = WeightFunction::parse_certificate(&read(cert)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", cert.display())))?;
        if w.n() != n {
            return Err(CliError::Input(format!("certificate has n={}, expected {n}", w.n())));
        }
        let report = check_tetrahedral_constraints(&w, Some(&sphere));
        let bound = verify_certificate(&w, &t2, &t1).ok();
        if cfg.format == Format::Csv {
            return Ok(Outcome {
                report: report.to_csv(),
                status: if report.is_valid() { ExitStatus::Success } else { ExitStatus::Verification },
            });
        }
        let _ = writeln!(out, "n={n}\nr={r}\ntetrahedra_checked={}\nviolations={}", report.checked, report.violations.len());
        for v in report.violations.iter().take(10) {
            let [i, j, k, l] = v.quadruple;
            let _ = writeln!(out, "violation={i},{j},{k},{l} sum={}", v.sum);
        }
        match bound {
            Some(b) => {
                let _ = writeln!(out, "bound={}", b);
            }
            None => out.push_str("bound=none\n"),
        }
        let status = if report.is_valid() { ExitStatus::Success } else { ExitStatus::Verification };
        return Ok(Outcome { report: out, status });
    }

    let ctx = WeightContext::new(sphere);
    let vcfg = cfg.variant_config();
    let (aw, solver_note) = match vcfg.variant {
        Variant::Simplified => (assemble_weight_function(&ctx, &vcfg)?, None),
        Variant::Full => match solve_figure_gap(&ctx, &vcfg)? {
            FigureOutcome::Found(sol) => (
                assemble_with(&ctx, &vcfg, &sol.assignment)?,
                Some(format!("solver=found evaluations={}", sol.evaluations)),
            ),
            FigureOutcome::Failed(fail) => match &fail.best {
                Some(best) => (
                    assemble_with(&ctx, &vcfg, best)?,
                    Some(format!("solver=failed {fail}")),
                ),
                None => {
                    return Ok(Outcome {
                        report: format!("variant=full\nn={n}\nsolver=failed {fail}\n"),
                        status: ExitStatus::Verification,
                    })
                }
            },
        },
    };

    if let Some(path) = certificate {
        write(path, &aw.to_certificate())?;
    }
    if let Some(path) = provenance {
        write(path, &aw.provenance_sidecar())?;
    }
    let report = check_tetrahedral_constraints(aw.weights(), Some(ctx.sphere()));
    let ok = report.is_valid() && aw.all_flows_saturated() && solver_note.as_deref().is_none_or(|s| s.starts_with("solver=found"));
    let status = if ok { ExitStatus::Success } else { ExitStatus::Verification };

    match cfg.format {
        Format::Csv => return Ok(Outcome { report: report.to_csv(), status }),
        Format::Dot => {
            if vertex >= ctx.sphere().vertex_count() {
                return Err(CliError::Input(format!("vertex {vertex} is not on the sphere")));
            }
            let net = build_flow_instance(&ctx, &vcfg, &aw.assignment, vertex)?;
            return Ok(Outcome { report: net.to_dot(), status });
        }
        Format::Text => {}
    }

    write_weight_report(&mut out, &ctx, &aw, &vcfg, r, &report, solver_note.as_deref());
    if let Some(path) = certificate {
        let _ = writeln!(out, "certificate={}", path.display());
    }
    if let Some(path) = provenance {
        let _ = writeln!(out, "provenance={}", path.display());
    }
    let _ = writeln!(out, "status={}", if ok { "ok" } else { "fail" });
    Ok(Outcome { report: out, status })
}

fn write_weight_report(
    out: &mut String,
    ctx: &WeightContext,
    aw: &AssembledWeights,
    vcfg: &flipdist::weights::VariantConfig,
    r: usize,
    report: &flipdist::weights::TetraReport,
    solver_note: Option<&str>,
) {
    let n = ctx.n();
    let total = total_weight(ctx, aw);
    let _ = writeln!(out, "variant={}\nn={n}\nr={r}\nc={}\nc_outer={}\nr0={}", vcfg.variant, vcfg.c, vcfg.c_outer, vcfg.r0);
    if let Some(note) = solver_note {
        let _ = writeln!(out, "{note}");
    }
    let _ = writeln!(out, "total_weight={}", total);
    let k = flipdist::lp::int(2 * n as i64) - &total;
    let _ = writeln!(out, "constant={}", k);
    let _ = writeln!(out, "tetrahedra_checked={}", report.checked);
    let _ = writeln!(out, "violations={}", report.violations.len());
    let _ = writeln!(out, "case_two_violations={}/{}", report.case_two_violations.len(), report.case_two_checked);
    for v in report.violations.iter().take(10) {
        let [i, j, k, l] = v.quadruple;
        let _ = writeln!(out, "violation={i},{j},{k},{l} sum={}", v.sum);
    }
    let saturated = aw.flows.iter().filter(|f| f.saturated()).count();
    let _ = writeln!(out, "flows_saturated={saturated}/{}", aw.flows.len());
    for f in aw.flows.iter().filter(|f| !f.saturated()) {
        let _ = writeln!(
            out,
            "unsaturated={} flow={} source={}",
            f.s,
            f.flow,
            f.source_value
        );
    }
    let lemmas = check_lemmas(ctx, vcfg, aw);
    let verdict = |bad: usize, checked: usize| format!("{} checked={checked} failures={bad}", if bad == 0 { "ok" } else { "fail" });
    let _ = writeln!(out, "bound_half={}", verdict(lemmas.half_bound.len(), lemmas.half_bound_checked));
    let _ = writeln!(out, "bound_quarter={}", verdict(lemmas.quarter_bound.len(), lemmas.quarter_bound_checked));
    let _ = writeln!(out, "far_zero={}", verdict(lemmas.far_zero.len(), lemmas.far_zero_checked));
    let _ = writeln!(out, "flat_zero={}", verdict(lemmas.flat.len(), lemmas.flat_checked));
    let _ = writeln!(out, "warnings={}", aw.warnings.len());
}

pub fn cmd_diameter(
    cfg: &RunConfig,
    sweep: bool,
    sampled: Option<usize>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let n = cfg.n.expect("validated");
    let mode = match sampled {
        Some(sources) => DiameterMode::Sampled { sources, seed },
        None => DiameterMode::Exhaustive,
    };
    let sizes: Vec<usize> = if sweep && n >= 2 { (2..=n).collect() } else { vec![n] };
    let mut rows = Vec::new();
    for m in sizes {
        rows.push(diameter(m, mode)?);
    }
    let report = match cfg.format {
        Format::Text => {
            let mut out = String::new();
            for d in &rows {
                let _ = writeln!(out, "n={} diameter={} exact={}", d.n, d.value, d.exact);
            }
            if let (false, Some(d)) = (sweep, rows.first()) {
                let _ = writeln!(out, "witness_from={}", diagonal_list(&d.witness.0));
                let _ = writeln!(out, "witness_to={}", diagonal_list(&d.witness.1));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,diameter,exact\n");
            for d in &rows {
                let _ = writeln!(out, "{},{},{}", d.n, d.value, d.exact);
            }
            out
        }
        Format::Dot => return Err(unsupported(cfg)),
    };
    Ok(Outcome::ok(report))
}

/// Triangulation text in, tree text out, and the reverse; the direction is
/// read from the input.
pub fn cmd_convert(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.format != Format::Text {
        return Err(unsupported(cfg));
    }
    let path = &cfg.inputs[0];
    let text = read(path)?;
    let report = if text.trim_start().starts_with("n=") {
        let t = Triangulation::parse(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        format!("{}\n", triangulation_to_tree(&t).to_text())
    } else {
        let tree = BinaryTree::parse(text.trim())
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        tree_to_triangulation(&tree)
            .map_err(|e| CliError::Input(e.to_string()))?
            .to_text()
    };
    Ok(Outcome::ok(report))
}
