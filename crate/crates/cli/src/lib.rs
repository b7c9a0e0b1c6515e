//! Command-line front end for the `commgraph` library.
//!
//! Every subcommand prints a report of `key=value` lines (or one JSON object
//! with `--json`) and exits with 0 on accept/pass, 1 on reject, 2 when the
//! input is outside what the recognizer handles, and 3 on errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commgraph::commuting::{
    build_commuting_graph, class_count_ratio, screen_all, verify_labeling, GroupRef, LabelingFile,
};
use commgraph::extraspecial::{recognize_extraspecial, recognize_p3};
use commgraph::graph::{
    closed_twin_classes, dominant_vertices, parse_edge_list, permute, random_permutation, write_edge_list, Graph,
};
use commgraph::group::{
    direct_product, make_alternating, make_cyclic, make_dihedral, make_extraspecial, make_quaternion,
    make_semidirect_cyclic, ExtraspecialVariant, GroupTable,
};
use commgraph::products::{factor_strong, oracle_chain, product_reduction, strong_product, Oracle};
use commgraph::structure::{frobenius_splits, recognize_dihedral_odd, recognize_frobenius};
use commgraph::symplectic::recognize_orthogonality_graph;
use commgraph::{CertifiedLabeling, Labeling, Verdict};

#[derive(Parser, Debug)]
#[command(name = "commgraph", version, about = "Commuting graphs of finite groups: build, screen, recognize")]
struct Cli {
    /// Print the report as a JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a group multiplication table.
    Gen(GenArgs),
    /// Build the commuting graph of a group.
    Build {
        #[arg(short = 'g', long)]
        group: PathBuf,
        #[arg(short = 'o', long)]
        out: PathBuf,
        /// Also write the identity labeling.
        #[arg(long)]
        labeling: Option<PathBuf>,
    },
    /// Counts, class count and necessary-condition screens.
    Analyze { graph: PathBuf },
    #[command(subcommand)]
    Recognize(Recognize),
    /// Strong product of two graphs.
    Product {
        #[arg(long, required = true)]
        strong: bool,
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o', long)]
        out: PathBuf,
    },
    /// Prime factorization under the strong product.
    Factor {
        graph: PathBuf,
        #[arg(long, default_value_t = commgraph::products::DEFAULT_FACTOR_LIMIT)]
        limit: usize,
        /// Write factor_<i>.el files here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check a labeling against a graph.
    Verify {
        /// Group file; defaults to the one the labeling points at.
        #[arg(short = 'g', long)]
        group: Option<PathBuf>,
        #[arg(short = 'x', long)]
        graph: PathBuf,
        #[arg(short = 'l', long)]
        labeling: PathBuf,
    },
    /// Relabel a graph by a seeded random permutation.
    Permute {
        graph: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long)]
        out: PathBuf,
        /// Write the permutation (old vertex -> new vertex) as JSON.
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Cyclic/alternating degree, dihedral m, or extraspecial n.
    #[arg(long, alias = "m")]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Factor group files for `--family product`.
    #[arg(long)]
    a: Option<PathBuf>,
    #[arg(long)]
    b: Option<PathBuf>,
    #[arg(short = 'o', long)]
    out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Cyclic,
    Dihedral,
    Extraspecial1,
    Extraspecial2,
    Semidirect,
    Product,
    Quaternion,
    Alternating,
}

#[derive(Subcommand, Debug)]
enum Recognize {
    Extraspecial {
        graph: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    P3 {
        graph: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    DihedralOdd {
        graph: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    Frobenius {
        graph: PathBuf,
        /// Kernel and complement orders, `n,k`.
        #[arg(long, conflicts_with = "enumerate", required_unless_present = "enumerate")]
        split: Option<String>,
        #[arg(long)]
        enumerate: bool,
    },
    Product {
        graph: PathBuf,
        #[arg(long = "oracle", value_enum, required = true, num_args = 1..)]
        oracles: Vec<OracleArg>,
        #[arg(long, default_value_t = commgraph::products::DEFAULT_FACTOR_LIMIT)]
        limit: usize,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Orthogonality graph of the standard symplectic form over GF(p).
    Orthogonality {
        graph: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleArg {
    Extraspecial,
    P3,
    Complete,
    DihedralOdd,
}

impl From<OracleArg> for Oracle {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Extraspecial => Oracle::Extraspecial,
            OracleArg::P3 => Oracle::P3,
            OracleArg::Complete => Oracle::Complete,
            OracleArg::DihedralOdd => Oracle::DihedralOdd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Accept,
    Pass,
    Reject,
    Unsupported,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Accept => "accept",
            Outcome::Pass => "pass",
            Outcome::Reject => "reject",
            Outcome::Unsupported => "unsupported",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Accept | Outcome::Pass => 0,
            Outcome::Reject => 1,
            Outcome::Unsupported => 2,
        }
    }
}

pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub outcome: Outcome,
    pub stage: Option<String>,
    pub fields: Vec<(String, String)>,
    pub files: Vec<PathBuf>,
    pub wall_ms: Option<u128>,
}

impl RunReport {
    fn new(command: &str, outcome: Outcome) -> Self {
        RunReport {
            command: command.to_string(),
            outcome,
            stage: None,
            fields: Vec::new(),
            files: Vec::new(),
            wall_ms: None,
        }
    }

    fn field(mut self, k: &str, v: impl ToString) -> Self {
        self.fields.push((k.to_string(), v.to_string()));
        self
    }

    fn file(mut self, p: &Path) -> Self {
        self.files.push(p.to_path_buf());
        self
    }

    fn from_verdict<C>(command: &str, v: &Verdict<C>) -> Self {
        match v {
            Verdict::Accept(_) => RunReport::new(command, Outcome::Accept),
            Verdict::Reject(r) => {
                let mut rep = RunReport::new(command, Outcome::Reject).field("reason", &r.reason);
                rep.stage = Some(r.stage.clone());
                if !r.witness.is_empty() {
                    rep = rep.field("witness", join(&r.witness));
                }
                rep
            }
            Verdict::Unsupported(why) => RunReport::new(command, Outcome::Unsupported).field("reason", why),
        }
    }

    fn render_text(&self) -> String {
        let mut s = format!("command={}\nverdict={}\n", self.command, self.outcome.name());
        if let Some(st) = &self.stage {
            s += &format!("stage={st}\n");
        }
        for (k, v) in &self.fields {
            s += &format!("{k}={v}\n");
        }
        for f in &self.files {
            s += &format!("file={}\n", f.display());
        }
        if let Some(ms) = self.wall_ms {
            s += &format!("wall_ms={ms}\n");
        }
        s
    }

    fn render_json(&self) -> String {
        let mut m = serde_json::Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("verdict".into(), self.outcome.name().into());
        if let Some(st) = &self.stage {
            m.insert("stage".into(), st.clone().into());
        }
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone().into());
        }
        let files: Vec<serde_json::Value> = self.files.iter().map(|f| f.display().to_string().into()).collect();
        m.insert("files".into(), files.into());
        if let Some(ms) = self.wall_ms {
            m.insert("wall_ms".into(), (ms as u64).into());
        }
        serde_json::Value::Object(m).to_string() + "\n"
    }
}

type CmdResult = std::result::Result<RunReport, Box<dyn std::error::Error>>;

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn read_graph(path: &Path) -> std::result::Result<Graph, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn read_group(path: &Path) -> std::result::Result<GroupTable, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(GroupTable::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn write(path: &Path, contents: &str) -> std::result::Result<(), Box<dyn std::error::Error>> {
    std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}

/// Path of the group file written next to a labeling: `g` + file name.
pub fn group_path_for(labeling: &Path) -> PathBuf {
    let name = labeling.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    labeling.with_file_name(format!("g{name}"))
}

fn write_labeling(path: &Path, lab: &Labeling) -> std::result::Result<PathBuf, Box<dyn std::error::Error>> {
    let gpath = group_path_for(path);
    write(&gpath, &lab.group.to_json_string()?)?;
    let file = LabelingFile {
        group_file: GroupRef::Path(gpath.file_name().expect("has a file name").to_string_lossy().into_owned()),
        map: lab.map.clone(),
    };
    write(path, &(serde_json::to_string(&file)? + "\n"))?;
    Ok(gpath)
}

fn labeling_report(command: &str, v: Verdict<CertifiedLabeling>, out: Option<&Path>) -> CmdResult {
    let mut rep = RunReport::from_verdict(command, &v);
    if let Verdict::Accept(cert) = v {
        rep = rep.field("order", cert.group().order());
        if let Some(path) = out {
            let gpath = write_labeling(path, cert.labeling())?;
            rep = rep.file(path).file(&gpath);
        }
    }
    Ok(rep)
}

fn cmd_gen(a: &GenArgs) -> CmdResult {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| format!("--family needs --{name}"));
    let g = match a.family {
        Family::Cyclic => make_cyclic(need(a.n, "n")?)?,
        Family::Dihedral => make_dihedral(need(a.n, "n")?)?,
        Family::Extraspecial1 | Family::Extraspecial2 => {
            let variant = if matches!(a.family, Family::Extraspecial1) { 1 } else { 2 };
            make_extraspecial(need(a.p, "p")?, need(a.n, "n")?, ExtraspecialVariant::from_number(variant)?)?
        }
        Family::Semidirect => make_semidirect_cyclic(need(a.q, "q")?, need(a.k, "k")?, need(a.r, "r")?)?,
        Family::Product => {
            let ga = read_group(a.a.as_deref().ok_or("--family product needs --a")?)?;
            let gb = read_group(a.b.as_deref().ok_or("--family product needs --b")?)?;
            direct_product(&ga, &gb)
        }
        Family::Quaternion => make_quaternion(),
        Family::Alternating => make_alternating(need(a.n, "n")?)?,
    };
    write(&a.out, &g.to_json_string()?)?;
    Ok(RunReport::new("gen", Outcome::Pass).field("order", g.order()).file(&a.out))
}

fn cmd_build(group: &Path, out: &Path, labeling: Option<&Path>) -> CmdResult {
    let g = read_group(group)?;
    let (x, lab) = build_commuting_graph(&g);
    write(out, &write_edge_list(&x))?;
    let mut rep = RunReport::new("build", Outcome::Pass)
        .field("n", x.n_vertices())
        .field("m", x.edge_count())
        .file(out);
    if let Some(path) = labeling {
        let file = LabelingFile {
            group_file: GroupRef::Path(group.display().to_string()),
            map: lab.map,
        };
        write(path, &(serde_json::to_string(&file)? + "\n"))?;
        rep = rep.file(path);
    }
    Ok(rep)
}

fn cmd_analyze(path: &Path) -> CmdResult {
    let x = read_graph(path)?;
    let n = x.n_vertices();
    if n == 0 {
        return Err("empty graph".into());
    }
    let (num, den) = class_count_ratio(&x);
    let k = if num % den == 0 { (num / den).to_string() } else { format!("{num}/{den}") };
    let all: Vec<usize> = (0..n).collect();
    let twins = closed_twin_classes(&x, &all);
    let profile: Vec<String> = twins.size_profile().iter().map(|(s, c)| format!("{s}:{c}")).collect();
    let results = screen_all(&x);
    let first_fail = results.iter().find_map(|(_, r)| r.as_ref().err());
    let mut rep = match first_fail {
        None => RunReport::new("analyze", Outcome::Pass),
        Some(r) => {
            let mut rep = RunReport::new("analyze", Outcome::Reject);
            rep.stage = Some(r.stage.clone());
            rep.field("reason", &r.reason)
        }
    };
    rep = rep
        .field("n", n)
        .field("m", x.edge_count())
        .field("dominant", dominant_vertices(&x).len())
        .field("two_m_plus_n", num)
        .field("k", k);
    for (s, r) in &results {
        rep = rep.field(&format!("screen.{}", s.name()), if r.is_ok() { "pass" } else { "fail" });
    }
    Ok(rep.field("twin_classes", twins.len()).field("twin_profile", profile.join(",")))
}

fn cmd_recognize(r: &Recognize) -> CmdResult {
    match r {
        Recognize::Extraspecial { graph, out } => {
            let x = read_graph(graph)?;
            labeling_report("recognize extraspecial", recognize_extraspecial(&x)?, out.as_deref())
        }
        Recognize::P3 { graph, out } => {
            let x = read_graph(graph)?;
            labeling_report("recognize p3", recognize_p3(&x)?, out.as_deref())
        }
        Recognize::DihedralOdd { graph, out } => {
            let x = read_graph(graph)?;
            labeling_report("recognize dihedral-odd", recognize_dihedral_odd(&x)?, out.as_deref())
        }
        Recognize::Frobenius { graph, split, enumerate } => {
            let x = read_graph(graph)?;
            let cmd = "recognize frobenius";
            if *enumerate {
                let splits = frobenius_splits(&x);
                let outcome = if splits.is_empty() { Outcome::Reject } else { Outcome::Accept };
                let list: Vec<String> = splits.iter().map(|(n, k)| format!("{n}:{k}")).collect();
                return Ok(RunReport::new(cmd, outcome).field("splits", list.join(",")));
            }
            let s = split.as_deref().expect("clap requires --split without --enumerate");
            let (n, k) = s
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| format!("--split expects n,k, got {s:?}"))?;
            let v = recognize_frobenius(&x, n, k)?;
            let mut rep = RunReport::from_verdict(cmd, &v);
            if let Verdict::Accept(c) = v {
                rep = rep
                    .field("kernel", c.n)
                    .field("complement", c.k)
                    .field("dominant_vertex", c.dominant_vertex)
                    .field("kernel_component", join(&c.kernel_component));
            }
            Ok(rep)
        }
        Recognize::Product { graph, oracles, limit, out } => {
            let x = read_graph(graph)?;
            let oracles: Vec<Oracle> = oracles.iter().map(|&o| o.into()).collect();
            let v = product_reduction(&x, oracle_chain(&oracles), *limit)?;
            let mut rep = RunReport::from_verdict("recognize product", &v);
            if let Verdict::Accept(cert) = v {
                rep = rep
                    .field("order", cert.labeling.group().order())
                    .field("factor_sizes", join(&cert.factor_sizes))
                    .field("oracle_calls", cert.oracle_calls)
                    .field("recognized_directly", join(&cert.recognized_directly));
                if let Some(path) = out {
                    let gpath = write_labeling(path, cert.labeling.labeling())?;
                    rep = rep.file(path).file(&gpath);
                }
            }
            Ok(rep)
        }
        Recognize::Orthogonality { graph, p, out } => {
            let x = read_graph(graph)?;
            let v = recognize_orthogonality_graph(&x, *p)?;
            let mut rep = RunReport::from_verdict("recognize orthogonality", &v);
            if let Verdict::Accept(lab) = v {
                rep = rep.field("p", lab.p()).field("n", lab.n()).field("zero_vertex", lab.zero_vertex());
                if let Some(path) = out {
                    write(path, &(serde_json::to_string(&lab.to_file())? + "\n"))?;
                    rep = rep.file(path);
                }
            }
            Ok(rep)
        }
    }
}

fn cmd_factor(path: &Path, limit: usize, out_dir: Option<&Path>) -> CmdResult {
    let x = read_graph(path)?;
    let f = factor_strong(&x, limit)?;
    let sizes: Vec<usize> = f.factors.iter().map(Graph::n_vertices).collect();
    let mut rep = RunReport::new("factor", Outcome::Pass)
        .field("factors", f.factors.len())
        .field("sizes", join(&sizes))
        .field("prime", f.is_prime());
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        for (i, g) in f.factors.iter().enumerate() {
            let p = dir.join(format!("factor_{i}.el"));
            write(&p, &write_edge_list(g))?;
            rep = rep.file(&p);
        }
    }
    Ok(rep)
}

fn cmd_verify(group: Option<&Path>, graph: &Path, labeling: &Path) -> CmdResult {
    let x = read_graph(graph)?;
    let text = std::fs::read_to_string(labeling).map_err(|e| format!("{}: {e}", labeling.display()))?;
    let file: LabelingFile = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", labeling.display()))?;
    let lab = match group {
        Some(g) => Labeling {
            group: read_group(g)?,
            map: file.map,
        },
        None => file.resolve(labeling.parent())?,
    };
    let v = verify_labeling(&x, lab)?;
    Ok(RunReport::from_verdict("verify", &v))
}

fn cmd_permute(path: &Path, seed: u64, out: &Path, map: Option<&Path>) -> CmdResult {
    let x = read_graph(path)?;
    let pi = random_permutation(x.n_vertices(), seed);
    write(out, &write_edge_list(&permute(&x, &pi)?))?;
    let mut rep = RunReport::new("permute", Outcome::Pass).field("seed", seed).file(out);
    if let Some(m) = map {
        write(m, &(serde_json::to_string(&pi)? + "\n"))?;
        rep = rep.file(m);
    }
    Ok(rep)
}

fn dispatch(cmd: &Cmd) -> CmdResult {
    match cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Build { group, out, labeling } => cmd_build(group, out, labeling.as_deref()),
        Cmd::Analyze { graph } => cmd_analyze(graph),
        Cmd::Recognize(r) => cmd_recognize(r),
        Cmd::Product { strong: _, a, b, out } => {
            let x = strong_product(&read_graph(a)?, &read_graph(b)?)?;
            write(out, &write_edge_list(&x))?;
            Ok(RunReport::new("product", Outcome::Pass)
                .field("n", x.n_vertices())
                .field("m", x.edge_count())
                .file(out))
        }
        Cmd::Factor { graph, limit, out_dir } => cmd_factor(graph, *limit, out_dir.as_deref()),
        Cmd::Verify { group, graph, labeling } => cmd_verify(group.as_deref(), graph, labeling),
        Cmd::Permute { graph, seed, out, map } => cmd_permute(graph, *seed, out, map.as_deref()),
    }
}

/// Runs one command line, writing the report to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(&cli.cmd) {
        Ok(mut rep) => {
            if cli.timing {
                rep.wall_ms = Some(start.elapsed().as_millis());
            }
            let text = if cli.json { rep.render_json() } else { rep.render_text() };
            let _ = out.write_all(text.as_bytes());
            rep.outcome.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
