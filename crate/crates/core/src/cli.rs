//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code with the full textual report, so it can be tested without spawning
//! a process. Exit codes: 0 success, 1 bad input data, 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::itrans::{build_intersection_circuit, count_disjoint, count_subsets_of};
use crate::lattice::{all_k_subsets, format_set, parse_family, SetFamily, SubsetMask};
use crate::oracle::{brute_count_cycles, brute_count_paths, brute_intersection_transform};
use crate::paths::{
    count_cycles_by_weight, count_paths_by_weight, reconstruct_path, WeightedDigraph,
};
use crate::ring::{BigIntRing, ModPrimeRing, PolyRing, Ring};

#[derive(Debug, Parser)]
#[command(name = "subset-itrans", version, about = "Trimmed intersection transform and path counting")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection transform table of f on --sets, evaluated on --targets.
    Itrans(ItransArgs),
    /// Per target, the number of input sets disjoint from it.
    Disjoint(FamilyArgs),
    /// Per target, the number of input sets contained in it.
    Subsets(FamilyArgs),
    /// Simple paths from s to t with the given length, by weight.
    CountPaths(PathArgs),
    /// Directed cycles of the given length, by weight.
    CountCycles(CycleArgs),
    /// One simple path with given endpoints, length and weight.
    FindPath(FindArgs),
    /// Circuit sizes, truncated-lattice sizes and timings across n.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family file with the input sets F.
    #[arg(long)]
    pub sets: PathBuf,
    /// Family file with the target sets G.
    #[arg(long)]
    pub targets: PathBuf,
    /// Ground-set size; defaults to one past the largest element seen.
    #[arg(long)]
    pub n: Option<usize>,
    /// Cross-check against brute force and report MATCH or MISMATCH.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingKind {
    Bigint,
    Poly,
    Modp,
}

#[derive(Debug, Args)]
pub struct ItransArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// One integer per line, aligned with the lines of --sets; default all ones.
    #[arg(long)]
    pub values: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "bigint")]
    pub ring: RingKind,
    /// Prime modulus for `--ring modp`.
    #[arg(long, default_value_t = ModPrimeRing::DEFAULT_PRIME)]
    pub prime: u64,
    /// Write the constructed circuit in text form to this path.
    #[arg(long)]
    pub dump_circuit: Option<PathBuf>,
    /// Append gate counts to the report.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub len: usize,
    #[arg(long)]
    pub oracle: bool,
    /// Append truncated-lattice sizes to the report.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct CycleArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub len: usize,
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub len: usize,
    #[arg(long)]
    pub weight: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Vertex counts to run.
    #[arg(long, value_delimiter = ',', default_value = "10,12,14,16")]
    pub ns: Vec<usize>,
    /// Path length as a fraction of n - 1.
    #[arg(long, default_value_t = 0.5)]
    pub frac: f64,
    /// Arc density of the random test digraphs.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 3)]
    pub max_weight: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Natural-log binary entropy, `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.ln() };
    term(p) + term(1.0 - p)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Size of the truncated lattice the path count works on, against the
/// entropy estimate.
///
/// With `k = ceil(l/2) + 1` and `p = k / n`, returns
/// `(exp(H(p) n), sum_{i <= k} C(n, i))`, the prediction clamped to `2^n`
/// once `p` passes one half.
pub fn entropy_bound(n: usize, len: usize) -> (f64, u128) {
    let k = len.div_ceil(2) + 1;
    let measured = (0..=k.min(n)).map(|i| binomial(n, i)).sum();
    let p = k as f64 / n as f64;
    let predicted = if p > 0.5 {
        2f64.powi(n as i32)
    } else {
        (binary_entropy(p) * n as f64).exp()
    };
    (predicted, measured)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Argument(_) => 2,
        _ => 1,
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cfg) {
        Ok((code, out)) => (code, out),
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}

fn execute(cfg: &RunConfig) -> Result<(i32, String)> {
    match &cfg.command {
        Command::Itrans(a) => itrans(a),
        Command::Disjoint(a) => counts(a, false),
        Command::Subsets(a) => counts(a, true),
        Command::CountPaths(a) => paths(a),
        Command::CountCycles(a) => cycles(a),
        Command::FindPath(a) => find(a),
        Command::Bench(a) => bench(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn verdict(out: &mut String, ok: bool) -> i32 {
    out.push_str(if ok { "MATCH\n" } else { "MISMATCH\n" });
    if ok {
        0
    } else {
        1
    }
}

/// Both families over a common ground set, plus the file order of the sets.
fn load_families(a: &FamilyArgs) -> Result<(SetFamily, Vec<SubsetMask>, SetFamily)> {
    let f_masks = parse_family(&read(&a.sets)?)?;
    let g_masks = parse_family(&read(&a.targets)?)?;
    let seen = f_masks
        .iter()
        .chain(&g_masks)
        .map(|&m| 32 - m.leading_zeros() as usize)
        .max()
        .unwrap_or(0);
    let n = match a.n {
        Some(n) if n < seen => {
            return Err(Error::arg(format!(
                "--n {n} is too small for element {}",
                seen - 1
            )))
        }
        Some(n) => n,
        None => seen,
    };
    let family = SetFamily::new(n, f_masks.clone())?;
    let targets = SetFamily::new(n, g_masks)?;
    Ok((family, f_masks, targets))
}

fn load_values(path: Option<&Path>, order: &[SubsetMask], family: &SetFamily) -> Result<Vec<i64>> {
    let Some(path) = path else {
        return Ok(vec![1; family.len()]);
    };
    let text = read(path)?;
    let mut in_file_order = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: i64 = line
            .parse()
            .map_err(|_| Error::parse(i + 1, format!("`{line}` is not an integer")))?;
        in_file_order.push(v);
    }
    if in_file_order.len() != order.len() {
        return Err(Error::parse(
            text.lines().count().max(1),
            format!("{} values for {} sets", in_file_order.len(), order.len()),
        ));
    }
    let mut out = vec![0; family.len()];
    for (&m, v) in order.iter().zip(in_file_order) {
        out[family.position(m).unwrap()] = v;
    }
    Ok(out)
}

fn itrans(a: &ItransArgs) -> Result<(i32, String)> {
    let (family, order, targets) = load_families(&a.family)?;
    let values = load_values(a.values.as_deref(), &order, &family)?;
    let (circuit, labels) = build_intersection_circuit(&family, &targets)?;
    if let Some(path) = &a.dump_circuit {
        fs::write(path, circuit.to_string())?;
    }
    let mut out = match a.ring {
        RingKind::Bigint => itrans_report(&circuit, &labels, &family, &values, &targets, &BigIntRing, a.family.oracle)?,
        RingKind::Poly => itrans_report(&circuit, &labels, &family, &values, &targets, &PolyRing, a.family.oracle)?,
        RingKind::Modp => {
            let ring = ModPrimeRing::new(a.prime)?;
            itrans_report(&circuit, &labels, &family, &values, &targets, &ring, a.family.oracle)?
        }
    };
    if a.stats {
        let s = circuit.stats();
        let _ = writeln!(
            out.1,
            "# gates={} adds={} muls={} consts={}",
            s.gates, s.adds, s.muls, s.consts
        );
    }
    Ok(out)
}

fn itrans_report<R: Ring>(
    circuit: &Circuit,
    labels: &crate::itrans::IntersectionTable<String>,
    family: &SetFamily,
    values: &[i64],
    targets: &SetFamily,
    ring: &R,
    oracle: bool,
) -> Result<(i32, String)> {
    let inputs: Vec<R::Elem> = values.iter().map(|&v| ring.from_integer(v)).collect();
    let outputs = circuit.evaluate(&inputs, ring)?;
    let table = labels.map(|l| outputs[l.as_str()].clone());
    let mut out = table.to_tsv();
    let mut code = 0;
    if oracle {
        let brute = brute_intersection_transform(family, &inputs, targets, ring);
        code = verdict(&mut out, brute == table);
    }
    Ok((code, out))
}

fn counts(a: &FamilyArgs, subsets: bool) -> Result<(i32, String)> {
    let (family, _, targets) = load_families(a)?;
    let got = if subsets {
        count_subsets_of(&family, &targets)?
    } else {
        count_disjoint(&family, &targets)?
    };
    let mut out = String::from("set\tcount\n");
    for (&y, c) in &got {
        let _ = writeln!(out, "{}\t{c}", format_set(y));
    }
    let mut code = 0;
    if a.oracle {
        let ok = got.iter().all(|(&y, &c)| {
            let brute = family
                .iter()
                .filter(|&x| if subsets { x & !y == 0 } else { x & y == 0 })
                .count() as u64;
            brute == c
        });
        code = verdict(&mut out, ok);
    }
    Ok((code, out))
}

fn load_graph(path: &Path) -> Result<WeightedDigraph> {
    WeightedDigraph::parse(&read(path)?)
}

fn paths(a: &PathArgs) -> Result<(i32, String)> {
    let d = load_graph(&a.graph)?;
    let g = count_paths_by_weight(&d, a.s, a.t, a.len)?;
    let mut out = format!("{g}\n");
    if a.stats {
        let (predicted, measured) = entropy_bound(d.vertex_count(), a.len);
        let _ = writeln!(out, "# sets={measured} predicted={predicted:.1}");
    }
    let mut code = 0;
    if a.oracle {
        code = verdict(&mut out, brute_count_paths(&d, a.s, a.t, a.len) == g);
    }
    Ok((code, out))
}

fn cycles(a: &CycleArgs) -> Result<(i32, String)> {
    let d = load_graph(&a.graph)?;
    let c = count_cycles_by_weight(&d, a.len)?;
    let mut out = format!("{c}\n");
    let mut code = 0;
    if a.oracle {
        code = verdict(&mut out, brute_count_cycles(&d, a.len) == c);
    }
    Ok((code, out))
}

fn find(a: &FindArgs) -> Result<(i32, String)> {
    let d = load_graph(&a.graph)?;
    Ok(match reconstruct_path(&d, a.s, a.t, a.len, a.weight)? {
        Some(p) => {
            let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
            (0, format!("{}\n", parts.join(" ")))
        }
        None => (0, "none\n".to_string()),
    })
}

fn bench(a: &BenchArgs) -> Result<(i32, String)> {
    if !(0.0..=1.0).contains(&a.frac) || !(0.0..=1.0).contains(&a.density) {
        return Err(Error::arg("--frac and --density must lie in [0, 1]"));
    }
    let mut out = format!("# seed={}\n", a.seed);
    out.push_str("n\tlen\tmeasured_sets\tpredicted_sets\tgates\tgates_per_set\tcount_ms\tpaths\n");
    for &n in &a.ns {
        if !(2..=32).contains(&n) {
            return Err(Error::arg(format!("bench n = {n} outside 2..=32")));
        }
        let len = ((a.frac * (n - 1) as f64).round() as usize).min(n - 1);
        let (predicted, measured) = entropy_bound(n, len);
        let fam = all_k_subsets(n, len.div_ceil(2) + 1)?;
        let tgt = all_k_subsets(n, len / 2 + 1)?;
        let (circuit, _) = build_intersection_circuit(&fam, &tgt)?;
        let gates = circuit.stats().gates;
        drop(circuit);

        let d = WeightedDigraph::random(n, a.density, a.max_weight, a.seed ^ n as u64)?;
        let start = Instant::now();
        let g = count_paths_by_weight(&d, 0, n - 1, len)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let total: BigInt = g.coeff_sum();
        let _ = writeln!(
            out,
            "{n}\t{len}\t{measured}\t{predicted:.1}\t{gates}\t{:.2}\t{ms:.1}\t{total}",
            gates as f64 / measured as f64
        );
    }
    Ok((0, out))
}
