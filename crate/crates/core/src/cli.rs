//! Command-line front end. Objects travel over stdin/stdout in the text
//! formats of their modules, or as JSON with `--format json`.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::asm::{asm_to_bpd, enumerate_asm, Asm, AsmJson};
use crate::bijections::{
    schubert_from_bpd, schubert_from_pd, sweep, table1, verify_blocks, verify_bottom_yam,
    verify_droop_covers, verify_grass, verify_inv_grass, verify_slide_preserves_py,
    verify_theorem_main, verify_tsscpp_yam, Report, TABLE1_HEADER,
};
use crate::bpd::{droop_poset, rothe_bpd, Bpd};
use crate::pd::{bottom_pd, enumerate_pd, enumerate_pd_red, slide_poset, BoundedCompatibleSequence, PipeDream};
use crate::perm::{block_decomposition, Permutation};
use crate::tsscpp::{enumerate_triangles, pd_to_triangle, BooleanTriangle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "asm-tsscpp", version, about = "Enumerate and cross-check ASMs, TSSCPP, pipe dreams and bumpless pipe dreams")]
pub struct Cli {
    /// Worker threads for enumeration and verification sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectKind {
    Asm,
    Bpd,
    Pd,
    Triangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertKind {
    Asm,
    Bpd,
    Pd,
    Sequence,
    Triangle,
    Permutation,
    RotheBpd,
    BottomPd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightObject {
    Asm,
    Bpd,
    Pd,
    Sequence,
    Triangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Pd,
    Bpd,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Main,
    TsscppYam,
    BottomYam,
    SlidePreservesPy,
    InvGrass,
    Grass,
    Blocks,
    DroopCovers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PosetKind {
    Slide,
    Droop,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every object of a kind and size.
    Enumerate {
        #[arg(long)]
        object: ObjectKind,
        #[arg(long)]
        n: Option<usize>,
        /// Keep reduced objects whose permutation is PI.
        #[arg(long)]
        perm: Option<Permutation>,
        /// Keep objects whose (bumpless) pipe dream is reduced.
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Convert one object read from stdin.
    Convert {
        #[arg(long)]
        from: ConvertKind,
        #[arg(long)]
        to: ConvertKind,
        /// Size of the pipe dream built from a sequence (default: largest letter + 1).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the weight monomial of one object read from stdin.
    Weight {
        #[arg(long)]
        object: WeightObject,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Schubert polynomial from reduced pipe dreams, reduced BPDs, or both.
    Schubert {
        #[arg(long)]
        perm: Permutation,
        #[arg(long, value_enum, default_value = "both")]
        via: Via,
    },
    /// Check a theorem on one permutation or on every applicable one of size N.
    Verify {
        #[arg(long)]
        theorem: Theorem,
        #[arg(long, conflicts_with = "perm")]
        n: Option<usize>,
        #[arg(long)]
        perm: Option<Permutation>,
    },
    /// Print the slide or droop poset of a permutation.
    Poset {
        #[arg(long)]
        perm: Permutation,
        #[arg(long)]
        kind: PosetKind,
        #[arg(long)]
        dot: bool,
    },
    /// Print the block decomposition of a (1432, 2143)-avoiding permutation.
    Decompose {
        #[arg(long)]
        perm: Permutation,
    },
    /// Counts of ASMs and TSSCPP in correspondence, sizes 1..=N.
    Table1 {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        tsv: bool,
    },
}

/// Failure of a command: a message and the exit code to use.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

type CliResult = Result<i32, CliError>;

macro_rules! input {
    ($e:expr) => {
        $e.map_err(CliError::usage)?
    };
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.jobs {
        if k == 0 {
            let _ = writeln!(err, "error: --jobs must be positive");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(k);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let needs_input = matches!(cli.command, Command::Convert { .. } | Command::Weight { .. });
    let input = if needs_input {
        match read_all(stdin) {
            Ok(s) => s,
            Err(e) => {
                let _ = writeln!(err, "error: {}", e.message);
                return e.code;
            }
        }
    } else {
        String::new()
    };
    let mut buffer = Vec::new();
    let result = pool.install(|| execute(&cli.command, &input, &mut buffer));
    if let Err(e) = out.write_all(&buffer) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_FAILED;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn execute(cmd: &Command, text: &str, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Enumerate {
            object,
            n,
            perm,
            reduced,
            count_only,
            format,
        } => cmd_enumerate(*object, *n, perm.as_ref(), *reduced, *count_only, *format, out),
        Command::Convert { from, to, n, format } => cmd_convert(*from, *to, *n, *format, text, out),
        Command::Weight { object, n } => cmd_weight(*object, *n, text, out),
        Command::Schubert { perm, via } => cmd_schubert(perm, *via, out),
        Command::Verify { theorem, n, perm } => cmd_verify(*theorem, *n, perm.as_ref(), out),
        Command::Poset { perm, kind, dot } => cmd_poset(perm, *kind, *dot, out),
        Command::Decompose { perm } => cmd_decompose(perm, out),
        Command::Table1 { max_n, tsv } => cmd_table1(*max_n, *tsv, out),
    }
}

fn read_all(stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
    Ok(s)
}

fn io(e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_FAILED,
        message: e.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
struct TriangleJson {
    n: usize,
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct BpdJson {
    n: usize,
    rows: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PdJson {
    n: usize,
    crosses: Vec<(usize, usize)>,
}

fn asm_out(a: &Asm, format: Format) -> String {
    match format {
        Format::Text => a.to_text(),
        Format::Json => serde_json::to_string(&a.to_json()).unwrap() + "\n",
    }
}

fn bpd_out(d: &Bpd, format: Format) -> String {
    match format {
        Format::Text => d.to_text(),
        Format::Json => {
            let rows = d.to_text().lines().map(String::from).collect();
            serde_json::to_string(&BpdJson { n: d.n(), rows }).unwrap() + "\n"
        }
    }
}

fn pd_out(d: &PipeDream, format: Format) -> String {
    match format {
        Format::Text => d.to_text(),
        Format::Json => serde_json::to_string(&PdJson {
            n: d.n(),
            crosses: d.crosses(),
        })
        .unwrap()
            + "\n",
    }
}

fn triangle_out(t: &BooleanTriangle, format: Format) -> String {
    match format {
        Format::Text => t.to_text(),
        Format::Json => serde_json::to_string(&TriangleJson { n: t.n(), rows: t.rows() }).unwrap() + "\n",
    }
}

fn sequence_out(s: &BoundedCompatibleSequence) -> String {
    s.to_json() + "\n"
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn parse_asm(text: &str) -> Result<Asm, CliError> {
    if is_json(text) {
        let j: AsmJson = input!(serde_json::from_str(text));
        Ok(input!(Asm::from_json(&j)))
    } else {
        Ok(input!(Asm::from_text(text)))
    }
}

fn parse_bpd(text: &str) -> Result<Bpd, CliError> {
    if is_json(text) {
        let j: BpdJson = input!(serde_json::from_str(text));
        let d = input!(Bpd::from_text(&j.rows.join("\n")));
        if d.n() != j.n {
            return Err(CliError::usage(format!("declared n = {} but grid has size {}", j.n, d.n())));
        }
        Ok(d)
    } else {
        Ok(input!(Bpd::from_text(text)))
    }
}

fn parse_pd(text: &str) -> Result<PipeDream, CliError> {
    if is_json(text) {
        let j: PdJson = input!(serde_json::from_str(text));
        Ok(input!(PipeDream::from_crosses(j.n, j.crosses)))
    } else {
        Ok(input!(PipeDream::from_text(text)))
    }
}

fn parse_triangle(text: &str) -> Result<BooleanTriangle, CliError> {
    if is_json(text) {
        let j: TriangleJson = input!(serde_json::from_str(text));
        Ok(input!(BooleanTriangle::new(j.n, &j.rows)))
    } else {
        Ok(input!(BooleanTriangle::from_text(text)))
    }
}

fn parse_sequence(text: &str, n: Option<usize>) -> Result<(BoundedCompatibleSequence, usize), CliError> {
    let s = input!(BoundedCompatibleSequence::from_json(text.trim()));
    let n = n.unwrap_or_else(|| s.a.iter().copied().max().unwrap_or(0) + 1);
    input!(s.validate(n));
    Ok((s, n))
}

fn parse_perm(text: &str) -> Result<Permutation, CliError> {
    Ok(input!(text.trim().parse::<Permutation>()))
}

fn resolve_n(n: Option<usize>, perm: Option<&Permutation>) -> Result<usize, CliError> {
    match (n, perm) {
        (Some(n), Some(p)) if n != p.len() => Err(CliError::usage(format!(
            "--n {n} disagrees with permutation {p} of size {}",
            p.len()
        ))),
        (Some(n), _) => Ok(n),
        (None, Some(p)) => Ok(p.len()),
        (None, None) => Err(CliError::usage("one of --n or --perm is required")),
    }
}

fn emit<T>(
    items: impl Iterator<Item = T>,
    count_only: bool,
    show: impl Fn(&T) -> String,
    separate: bool,
    out: &mut dyn Write,
) -> CliResult {
    if count_only {
        let count = items.count();
        writeln!(out, "{count}").map_err(io)?;
    } else {
        for (k, item) in items.enumerate() {
            if separate && k > 0 {
                writeln!(out).map_err(io)?;
            }
            out.write_all(show(&item).as_bytes()).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(
    object: ObjectKind,
    n: Option<usize>,
    perm: Option<&Permutation>,
    reduced: bool,
    count_only: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let n = resolve_n(n, perm)?;
    let separate = format == Format::Text;
    // keep an object with reduced permutation `p` according to the flags
    let keep = |p: Option<Permutation>| match perm {
        Some(target) => p.as_ref() == Some(target),
        None => !reduced || p.is_some(),
    };
    match object {
        ObjectKind::Asm => {
            let it = input!(enumerate_asm(n)).filter(|a| keep(asm_to_bpd(a).reduced_permutation()));
            emit(it, count_only, |a| asm_out(a, format), separate, out)
        }
        ObjectKind::Bpd => {
            let it = input!(enumerate_asm(n))
                .map(|a| asm_to_bpd(&a))
                .filter(|d| keep(d.reduced_permutation()));
            emit(it, count_only, |d| bpd_out(d, format), separate, out)
        }
        ObjectKind::Pd => match perm {
            Some(p) => emit(input!(enumerate_pd_red(p)), count_only, |d| pd_out(d, format), separate, out),
            None => {
                let it = input!(enumerate_pd(n)).filter(|d| !reduced || d.is_reduced());
                emit(it, count_only, |d| pd_out(d, format), separate, out)
            }
        },
        ObjectKind::Triangle => {
            let it = input!(enumerate_triangles(n)).filter(|t| keep(t.to_pd().reduced_permutation()));
            emit(it, count_only, |t| triangle_out(t, format), separate, out)
        }
    }
}

fn cmd_convert(
    from: ConvertKind,
    to: ConvertKind,
    n: Option<usize>,
    format: Format,
    text: &str,
    out: &mut dyn Write,
) -> CliResult {
    use ConvertKind as K;
    let result = match (from, to) {
        (K::Asm, K::Bpd) => bpd_out(&asm_to_bpd(&parse_asm(text)?), format),
        (K::Bpd, K::Asm) => asm_out(&parse_bpd(text)?.to_asm(), format),
        (K::Pd, K::Sequence) => sequence_out(&parse_pd(text)?.to_sequence()),
        (K::Sequence, K::Pd) => {
            let (s, n) = parse_sequence(text, n)?;
            pd_out(&input!(PipeDream::from_sequence(&s, n)), format)
        }
        (K::Triangle, K::Pd) => pd_out(&parse_triangle(text)?.to_pd(), format),
        (K::Pd, K::Triangle) => triangle_out(&input!(pd_to_triangle(&parse_pd(text)?)), format),
        (K::Permutation, K::RotheBpd) => bpd_out(&rothe_bpd(&parse_perm(text)?), format),
        (K::Permutation, K::BottomPd) => pd_out(&bottom_pd(&parse_perm(text)?), format),
        (from, to) => {
            return Err(CliError::usage(format!(
                "unsupported conversion {} -> {}",
                kind_name(from),
                kind_name(to)
            )))
        }
    };
    out.write_all(result.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn kind_name(k: ConvertKind) -> String {
    k.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn cmd_weight(object: WeightObject, n: Option<usize>, text: &str, out: &mut dyn Write) -> CliResult {
    let w = match object {
        WeightObject::Asm => parse_asm(text)?.weight(),
        WeightObject::Bpd => parse_bpd(text)?.blank_weight(),
        WeightObject::Pd => parse_pd(text)?.cross_weight(),
        WeightObject::Sequence => {
            let (s, n) = parse_sequence(text, n)?;
            input!(PipeDream::from_sequence(&s, n)).cross_weight()
        }
        WeightObject::Triangle => parse_triangle(text)?.weight(),
    };
    writeln!(out, "{w}").map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_schubert(pi: &Permutation, via: Via, out: &mut dyn Write) -> CliResult {
    let from_pd = || schubert_from_pd(pi).map_err(CliError::usage);
    let from_bpd = || schubert_from_bpd(pi).map_err(CliError::usage);
    match via {
        Via::Pd => writeln!(out, "{}", from_pd()?).map_err(io)?,
        Via::Bpd => writeln!(out, "{}", from_bpd()?).map_err(io)?,
        Via::Both => {
            let (a, b) = (from_pd()?, from_bpd()?);
            if a != b {
                writeln!(out, "pd:  {a}\nbpd: {b}").map_err(io)?;
                return Ok(EXIT_FAILED);
            }
            writeln!(out, "{a}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(theorem: Theorem, n: Option<usize>, perm: Option<&Permutation>, out: &mut dyn Write) -> CliResult {
    let reports: Vec<Report> = match theorem {
        Theorem::TsscppYam | Theorem::BottomYam | Theorem::SlidePreservesPy => {
            let n = resolve_n(n, perm)?;
            let r = match theorem {
                Theorem::TsscppYam => verify_tsscpp_yam(n),
                Theorem::BottomYam => verify_bottom_yam(n),
                _ => verify_slide_preserves_py(n),
            };
            vec![r]
        }
        _ => {
            let check: fn(&Permutation) -> Report = match theorem {
                Theorem::Main => verify_theorem_main,
                Theorem::InvGrass => verify_inv_grass,
                Theorem::Grass => verify_grass,
                Theorem::Blocks => verify_blocks,
                _ => verify_droop_covers,
            };
            let perms: Vec<Permutation> = match (perm, n) {
                (Some(p), _) => vec![p.clone()],
                (None, Some(n)) => Permutation::all(n)
                    .filter(|p| match theorem {
                        Theorem::InvGrass => p.is_inverse_grassmannian(),
                        Theorem::Grass => p.is_grassmannian(),
                        Theorem::Blocks => p.avoids_1432() && p.avoids_2143(),
                        _ => true,
                    })
                    .collect(),
                (None, None) => return Err(CliError::usage("one of --n or --perm is required")),
            };
            sweep(&perms, check)
        }
    };
    let mut ok = true;
    for r in &reports {
        ok &= r.is_ok();
        writeln!(out, "{}", r.to_json()).map_err(io)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_poset(pi: &Permutation, kind: PosetKind, dot: bool, out: &mut dyn Write) -> CliResult {
    let (texts, labels, covers, dot_text) = match kind {
        PosetKind::Slide => {
            let p = slide_poset(pi);
            let d = dot.then(|| p.to_dot(|d| d.to_text()));
            let texts: Vec<String> = p.elements().iter().map(|d| d.to_text()).collect();
            (texts, p.labels().to_vec(), p.covers().to_vec(), d)
        }
        PosetKind::Droop => {
            let p = droop_poset(pi);
            let d = dot.then(|| p.to_dot(|d| d.to_text()));
            let texts: Vec<String> = p.elements().iter().map(|d| d.to_text()).collect();
            (texts, p.labels().to_vec(), p.covers().to_vec(), d)
        }
    };
    if let Some(d) = dot_text {
        out.write_all(d.as_bytes()).map_err(io)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "elements: {}", texts.len()).map_err(io)?;
    writeln!(out, "covers: {}", covers.len()).map_err(io)?;
    for (i, (t, w)) in texts.iter().zip(&labels).enumerate() {
        writeln!(out, "\n[{i}] {w}").map_err(io)?;
        out.write_all(t.as_bytes()).map_err(io)?;
    }
    writeln!(out).map_err(io)?;
    for (a, b) in covers {
        writeln!(out, "{a} < {b}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_decompose(pi: &Permutation, out: &mut dyn Write) -> CliResult {
    let d = input!(block_decomposition(pi));
    let dominant: Vec<String> = d.dominant.iter().map(|x| x.to_string()).collect();
    writeln!(out, "dominant: ({})", dominant.join(",")).map_err(io)?;
    for (name, blocks) in [
        ("grassmannian", &d.grassmannian_blocks),
        ("inverse-grassmannian", &d.inverse_grassmannian_blocks),
    ] {
        for b in blocks {
            writeln!(
                out,
                "{name} {} rows {}..{} cols {}..{}",
                b.perm,
                b.rect.top,
                b.rect.bottom(),
                b.rect.left,
                b.rect.right()
            )
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_table1(max_n: usize, tsv: bool, out: &mut dyn Write) -> CliResult {
    let rows = input!(table1(max_n));
    let mut ok = true;
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            ok &= r.matched_1432 == r.avoiding_1432;
            [r.n, r.perm as usize, r.both_avoiding as usize, r.avoiding_1432 as usize, r.matched as usize, r.total as usize]
                .map(|x| x.to_string())
        })
        .collect();
    if tsv {
        writeln!(out, "{}", TABLE1_HEADER.join("\t")).map_err(io)?;
        for c in &cells {
            writeln!(out, "{}", c.join("\t")).map_err(io)?;
        }
    } else {
        let widths: Vec<usize> = (0..6)
            .map(|k| cells.iter().map(|c| c[k].len()).chain([TABLE1_HEADER[k].len()]).max().unwrap())
            .collect();
        let line = |parts: Vec<&str>| {
            parts
                .iter()
                .zip(&widths)
                .map(|(p, w)| format!("{p:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(TABLE1_HEADER.to_vec())).map_err(io)?;
        for c in &cells {
            writeln!(out, "{}", line(c.iter().map(String::as_str).collect())).map_err(io)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}
