//! Command-line front end: every subcommand returns its report as text and
//! an exit status (0 success or proved, 1 failure or refutation, 2 usage
//! error, 3 inconclusive).

pub mod render;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use idcode::bounds::frames::{
    check_forcing, classify_min_configs, default_margin, frame_min_count, orientations_with, Claim,
    FrameCount, FrameShape, Forcing, DEFAULT_BUDGET,
};
use idcode::bounds::table::{compute_table, CellReport, PrintedCell};
use idcode::bounds::{frame_certificate, reference_bounds, Provenance};
use idcode::codes::{
    builtin_code, construct_38, construct_diag, construct_family, construct_grid,
    construct_int_half, parse_codespec, serialize_codespec, CodeFamily, PeriodicCode,
};
use idcode::lattice::{ball, Point, PointSet, RadiusPair, SqRadius};
use idcode::patterns::{
    column_profile, delta_m_sq, diagonal_pattern, exists_code, horizontal_pattern, max_mod,
    pattern_size, sym_diff_pattern, LineDirection,
};
use idcode::verify::{simulate_trials, verify_identifying};
use render::{Circles, Window};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "idcode", version, about = "Tolerant identifying codes on the square lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Radii {
    /// Squared inner radius r², as N or N/D.
    #[arg(long = "r2")]
    pub r2: SqRadius,
    /// Squared outer radius (r+Δ)², as N or N/D.
    #[arg(long = "R2")]
    pub big_r2: SqRadius,
}

impl Radii {
    fn pair(&self) -> Result<RadiusPair, Fail> {
        RadiusPair::new(self.r2, self.big_r2).map_err(|e| Fail::usage(e.to_string()))
    }
}

#[derive(Args, Debug, Clone)]
pub struct OptRadii {
    /// Squared inner radius r², as N or N/D.
    #[arg(long = "r2")]
    pub r2: Option<SqRadius>,
    /// Squared outer radius (r+Δ)², as N or N/D.
    #[arg(long = "R2")]
    pub big_r2: Option<SqRadius>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternKind {
    Horizontal,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Grid,
    Diag,
    IntHalf,
    C38,
    Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    S4,
    S6,
    S8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Code,
    Pattern,
    Ball,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Existence threshold, pattern sizes and column profile.
    Analyze {
        #[command(flatten)]
        radii: Radii,
    },
    /// Lists the points of S(u, v).
    Pattern {
        #[command(flatten)]
        radii: Radii,
        #[arg(long, value_enum, default_value = "horizontal")]
        kind: PatternKind,
        /// Explicit pair, overriding --kind.
        #[arg(long, value_parser = parse_point, requires = "v")]
        u: Option<Point>,
        #[arg(long, value_parser = parse_point, requires = "u")]
        v: Option<Point>,
    },
    /// Whether any identifying code exists.
    Exists {
        #[command(flatten)]
        radii: Radii,
    },
    /// Builds a periodic code and prints it as a codespec.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[command(flatten)]
        radii: OptRadii,
        /// Diagonal line spacing for diag.
        #[arg(long)]
        s: Option<u64>,
        /// Horizontal line spacing for diag; omit for diagonals only.
        #[arg(long)]
        t: Option<u64>,
        /// Drops cells lying on both a diagonal and a horizontal line.
        #[arg(long)]
        remove: bool,
        /// Integer radius for int-half.
        #[arg(long)]
        r: Option<i64>,
        #[arg(long, value_enum)]
        family: Option<FamilyName>,
        /// Family parameter k.
        #[arg(long)]
        k: Option<i64>,
        /// Odd parameter i of the s4 family.
        #[arg(long)]
        i: Option<i64>,
        /// Also verify the code at the given or implied radii.
        #[arg(long)]
        check: bool,
        /// Writes the codespec here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decides whether a code is identifying.
    Verify {
        /// Builtin name or codespec path.
        #[arg(long)]
        code: String,
        #[command(flatten)]
        radii: OptRadii,
    },
    /// Density lower bounds: reference values, or one frame lemma.
    Bound {
        #[command(flatten)]
        radii: Radii,
        #[arg(long, value_parser = ["F12", "F20", "F14"])]
        frame: Option<String>,
        /// Window border around the frame; defaults to ⌈√R²⌉+2.
        #[arg(long)]
        margin: Option<i64>,
        /// Search node limit before giving up as inconclusive.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Writes the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal frame configurations up to symmetry, and forced claims.
    Classify {
        #[command(flatten)]
        radii: Radii,
        #[arg(long, value_parser = ["F12", "F20", "F14"])]
        frame: String,
        /// Vertex count; defaults to the proved minimum.
        #[arg(long)]
        count: Option<usize>,
        /// e.g. "some 4 F(1,0) F(-1,0) F(0,1) F(0,-1)".
        #[arg(long)]
        claim: Option<String>,
        /// Checks the claim for every orientation putting a vertex here.
        #[arg(long, value_parser = parse_point)]
        corner: Option<Point>,
        /// Window border around the frame; defaults to ⌈√R²⌉+2.
        #[arg(long)]
        margin: Option<i64>,
        /// Search node limit before giving up as inconclusive.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Recomputes the table of small cases.
    Table,
    /// Seeded fault-localization trials.
    Simulate {
        /// Builtin name or codespec path.
        #[arg(long)]
        code: String,
        #[command(flatten)]
        radii: OptRadii,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draws a code, pattern or ball.
    Render {
        #[arg(long, value_enum)]
        target: Target,
        /// Builtin name or codespec path.
        #[arg(long)]
        code: Option<String>,
        #[command(flatten)]
        radii: OptRadii,
        /// Ball centre, or u of the pattern.
        #[arg(long, value_parser = parse_point, default_value = "0,0")]
        center: Point,
        /// v of the pattern; defaults to centre − (1,0).
        #[arg(long, value_parser = parse_point)]
        v: Option<Point>,
        /// Draws circles of radius √r² and √R² around this vertex (SVG).
        #[arg(long, value_parser = parse_point)]
        mark: Option<Point>,
        /// Width x height in cells.
        #[arg(long, value_parser = parse_window, default_value = "21x21")]
        window: (i64, i64),
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// Largest number of cells drawn.
        #[arg(long, default_value_t = 250_000)]
        max_cells: i64,
        /// Writes the drawing here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_point(s: &str) -> Result<Point, String> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = t.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x: i64 = a.trim().parse().map_err(|_| format!("bad coordinate {a:?}"))?;
    let y: i64 = b.trim().parse().map_err(|_| format!("bad coordinate {b:?}"))?;
    if x.abs() > 1_000_000_000 || y.abs() > 1_000_000_000 {
        return Err("coordinate out of range".into());
    }
    Ok(Point::new(x, y))
}

/// `WxH` with both sides positive.
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: i64 = w.parse().map_err(|_| format!("bad width {w:?}"))?;
    let h: i64 = h.parse().map_err(|_| format!("bad height {h:?}"))?;
    if !(1..=1_000_000).contains(&w) || !(1..=1_000_000).contains(&h) {
        return Err("window sides must be in 1..=1000000".into());
    }
    Ok((w, h))
}

/// Text written to stdout and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Fail {
    status: i32,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Self {
        Fail {
            status: EXIT_USAGE,
            message: message.into(),
        }
    }
}

type Res = Result<(i32, String), Fail>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if status == EXIT_OK {
                Output { status, stdout: text, stderr: String::new() }
            } else {
                Output { status, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.command) {
        Ok((status, stdout)) => Output {
            status,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Output {
            status: f.status,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn execute(cmd: Command) -> Res {
    match cmd {
        Command::Analyze { radii } => analyze(radii.pair()?),
        Command::Pattern { radii, kind, u, v } => pattern(radii.pair()?, kind, u.zip(v)),
        Command::Exists { radii } => exists(radii.pair()?),
        Command::Construct {
            kind,
            radii,
            s,
            t,
            remove,
            r,
            family,
            k,
            i,
            check,
            out,
        } => construct(kind, &radii, s, t, remove, r, family, k, i, check, out),
        Command::Verify { code, radii } => verify(&code, &radii),
        Command::Bound {
            radii,
            frame,
            margin,
            budget,
            out,
        } => bound(radii.pair()?, frame.as_deref(), margin, budget, out),
        Command::Classify {
            radii,
            frame,
            count,
            claim,
            corner,
            margin,
            budget,
        } => classify(radii.pair()?, &frame, count, claim.as_deref(), corner, margin, budget),
        Command::Table => table(),
        Command::Simulate {
            code,
            radii,
            trials,
            seed,
        } => simulate(&code, &radii, trials, seed),
        Command::Render {
            target,
            code,
            radii,
            center,
            v,
            mark,
            window,
            format,
            max_cells,
            out,
        } => render_cmd(target, code.as_deref(), &radii, center, v, mark, window, format, max_cells, out),
    }
}

fn decimal(q: num_rational::Rational64) -> String {
    format!("{:.4}", *q.numer() as f64 / *q.denom() as f64)
}

fn need_code(rp: RadiusPair) -> Result<(), Fail> {
    if exists_code(rp) {
        Ok(())
    } else {
        Err(Fail {
            status: EXIT_FAILURE,
            message: format!("no code exists for {rp}"),
        })
    }
}

fn analyze(rp: RadiusPair) -> Res {
    let mut out = String::new();
    let threshold = delta_m_sq(rp.r2);
    let _ = writeln!(out, "{rp}");
    if !exists_code(rp) {
        let _ = writeln!(out, "no code exists (requires R² < {threshold})");
        return Ok((EXIT_FAILURE, out));
    }
    let _ = writeln!(out, "code exists (R² < {threshold})");
    let (enumerated, formula) = pattern_size(rp);
    let h = horizontal_pattern(rp);
    let d = diagonal_pattern(rp);
    let _ = writeln!(out, "horizontal pattern: {enumerated} points (closed form {formula})");
    let _ = writeln!(out, "diagonal pattern: {} points", d.len());
    if let Ok(p) = column_profile(rp) {
        let _ = writeln!(out, "x0 = {} (lower bound {})", p.x0, p.x0_formula_lb);
        let x1f = p.x1_formula.map_or("undefined".to_string(), |v| v.to_string());
        let _ = writeln!(out, "x1 = {} (closed form {x1f})", p.x1);
        let _ = writeln!(out, "m = {} (closed form {})", p.m, p.m_formula);
    }
    for (name, dir) in [
        ("horizontal", LineDirection::Horizontal),
        ("diagonal", LineDirection::Diagonal),
    ] {
        if let Ok(k) = max_mod(&h, dir) {
            let _ = writeln!(out, "horizontal pattern meets every {name} line modulo {k}");
        }
    }
    let _ = writeln!(out, "separation cutoff |u−v|² ≤ {}", rp.cutoff_sq());
    Ok((EXIT_OK, out))
}

fn list_points(out: &mut String, s: &PointSet) {
    for p in s {
        let _ = writeln!(out, "point {} {}", p.x, p.y);
    }
}

fn pattern(rp: RadiusPair, kind: PatternKind, pair: Option<(Point, Point)>) -> Res {
    let s = match (pair, kind) {
        (Some((u, v)), _) => sym_diff_pattern(u, v, rp).map_err(|e| Fail::usage(e.to_string()))?,
        (None, PatternKind::Horizontal) => horizontal_pattern(rp),
        (None, PatternKind::Diagonal) => diagonal_pattern(rp),
    };
    let mut out = format!("size {}\n", s.len());
    list_points(&mut out, &s);
    Ok((if s.is_empty() { EXIT_FAILURE } else { EXIT_OK }, out))
}

fn exists(rp: RadiusPair) -> Res {
    let threshold = delta_m_sq(rp.r2);
    Ok(if exists_code(rp) {
        (EXIT_OK, format!("code exists (R² < {threshold})\n"))
    } else {
        (EXIT_FAILURE, format!("no code exists (requires R² < {threshold})\n"))
    })
}

fn required<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Fail> {
    v.ok_or_else(|| Fail::usage(format!("{kind} needs --{flag}")))
}

fn opt_pair(radii: &OptRadii) -> Result<Option<RadiusPair>, Fail> {
    match (radii.r2, radii.big_r2) {
        (Some(a), Some(b)) => RadiusPair::new(a, b)
            .map(Some)
            .map_err(|e| Fail::usage(e.to_string())),
        (None, None) => Ok(None),
        _ => Err(Fail::usage("--r2 and --R2 go together")),
    }
}

fn write_or_return(text: String, out: Option<PathBuf>, summary: String) -> Result<String, Fail> {
    match out {
        Some(path) => {
            std::fs::write(&path, text)
                .map_err(|e| Fail::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(summary)
        }
        None => Ok(text),
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    kind: ConstructKind,
    radii: &OptRadii,
    s: Option<u64>,
    t: Option<u64>,
    remove: bool,
    r: Option<i64>,
    family: Option<FamilyName>,
    k: Option<i64>,
    i: Option<i64>,
    check: bool,
    out: Option<PathBuf>,
) -> Res {
    let rp = opt_pair(radii)?;
    let err = |e: idcode::codes::ConstructError| Fail::usage(e.to_string());
    let mut notes = String::new();
    let (code, implied): (PeriodicCode, Option<RadiusPair>) = match kind {
        ConstructKind::Grid => {
            let rp = required(rp, "r2/--R2", "grid")?;
            (construct_grid(rp).map_err(err)?, Some(rp))
        }
        ConstructKind::C38 => {
            let rp = required(rp, "r2/--R2", "c38")?;
            (construct_38(rp).map_err(err)?, Some(rp))
        }
        ConstructKind::Diag => (construct_diag(required(s, "s", "diag")?, t, remove).map_err(err)?, rp),
        ConstructKind::IntHalf => {
            let r = required(r, "r", "int-half")?;
            let implied = (1..=3_000_000_000i64 / 2).contains(&r).then(|| {
                RadiusPair::ints(r * r, r * r + 2 * r - 1)
            });
            (construct_int_half(r).map_err(err)?, rp.or(implied))
        }
        ConstructKind::Family => {
            let k = required(k, "k", "family")?;
            let fam = match required(family, "family", "family")? {
                FamilyName::S4 => CodeFamily::S4 {
                    k,
                    i: required(i, "i", "s4")?,
                },
                FamilyName::S6 => CodeFamily::S6 { k },
                FamilyName::S8 => CodeFamily::S8 { k },
            };
            let rep = construct_family(fam).map_err(err)?;
            let residues: Vec<String> = rep.diagonal_residues.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(notes, "# {fam}: {}", rep.rp);
            let _ = writeln!(
                notes,
                "# |S| = {} (expected {}), diagonal residues mod {}: {}",
                rep.pattern.len(),
                rep.modulus,
                rep.modulus,
                residues.join(" ")
            );
            let _ = writeln!(
                notes,
                "# distinct residues: {}, all diagonals met: {}",
                rep.residues_distinct, rep.covers_diagonals
            );
            (rep.code.clone(), rp.or(Some(rep.rp)))
        }
    };
    let mut status = EXIT_OK;
    let _ = writeln!(notes, "# density {} ({})", code.density(), decimal(code.density()));
    if check {
        let rp = required(implied, "r2/--R2", "--check")?;
        need_code(rp)?;
        let rep = verify_identifying(&code, rp).map_err(|e| Fail::usage(e.to_string()))?;
        match rep.failure {
            None => {
                let _ = writeln!(notes, "# verified identifying for {rp}");
            }
            Some(f) => {
                let _ = writeln!(notes, "# not identifying for {rp}: {f}");
                status = EXIT_FAILURE;
            }
        }
    }
    let text = format!("{notes}{}", serialize_codespec(&code));
    Ok((status, write_or_return(text, out, notes)?))
}

fn load_code(source: &str) -> Result<(PeriodicCode, Option<RadiusPair>), Fail> {
    if let Ok((rp, code)) = builtin_code(source) {
        return Ok((code, Some(rp)));
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Fail::usage(format!("{source:?} is neither a builtin nor a readable file: {e}")))?;
    let code = parse_codespec(&text).map_err(|e| Fail::usage(format!("{source}: {e}")))?;
    Ok((code, None))
}

fn code_and_pair(source: &str, radii: &OptRadii) -> Result<(PeriodicCode, RadiusPair), Fail> {
    let (code, default) = load_code(source)?;
    let rp = opt_pair(radii)?
        .or(default)
        .ok_or_else(|| Fail::usage("codespec files need --r2 and --R2"))?;
    Ok((code, rp))
}

fn verify(source: &str, radii: &OptRadii) -> Res {
    let (code, rp) = code_and_pair(source, radii)?;
    need_code(rp)?;
    let rep = verify_identifying(&code, rp).map_err(|e| Fail::usage(e.to_string()))?;
    Ok(match rep.failure {
        None => (EXIT_OK, format!("OK density {}\n", code.density())),
        Some(f) => (EXIT_FAILURE, format!("FAIL {f}\n")),
    })
}

fn margin_for(rp: RadiusPair, margin: Option<i64>) -> Result<i64, Fail> {
    match margin {
        Some(m) if m < 0 => Err(Fail::usage(format!("margin must be nonnegative, got {m}"))),
        Some(m) => Ok(m),
        None => Ok(default_margin(rp)),
    }
}

fn bound(
    rp: RadiusPair,
    frame: Option<&str>,
    margin: Option<i64>,
    budget: u64,
    out: Option<PathBuf>,
) -> Res {
    need_code(rp)?;
    let margin = margin_for(rp, margin)?;
    let bounds_err = |e: idcode::bounds::frames::BoundsError| Fail::usage(e.to_string());
    if let Some(name) = frame {
        let f = FrameShape::named(name).map_err(bounds_err)?;
        return match frame_certificate(rp, &f, margin, budget).map_err(bounds_err)? {
            Some(c) => {
                let line = format!("proved min {}, density ≥ {}\n", c.min_count, c.bound);
                let text = match out {
                    Some(_) => write_or_return(c.to_text(), out, line)?,
                    None => line,
                };
                Ok((EXIT_OK, text))
            }
            None => {
                let why = match frame_min_count(rp, &f, margin, budget).map_err(bounds_err)? {
                    FrameCount::Inconclusive { reason } => reason,
                    FrameCount::Proved { .. } => String::new(),
                };
                Ok((EXIT_INCONCLUSIVE, format!("inconclusive: {why}\n")))
            }
        };
    }
    let r = reference_bounds(rp).map_err(bounds_err)?;
    let mut text = String::new();
    let _ = writeln!(text, "{rp}");
    let _ = writeln!(
        text,
        "reference lower 1/(3.22r+4) ≈ {:.4} (decimal, not exact)",
        r.fixed_reference
    );
    let _ = writeln!(
        text,
        "pattern: density ≥ {} ({}, |S| = {})",
        r.pattern.bound,
        r.pattern.provenance,
        r.pattern.witness.len()
    );
    if let Some(f) = &r.frame {
        let _ = writeln!(
            text,
            "frame: density ≥ {} = {}/{} ({})",
            f.bound,
            f.min_count,
            f.witness.len(),
            f.provenance
        );
    }
    for a in &r.asserted {
        let _ = writeln!(text, "density ≥ {} ({}, {})", a.value, a.provenance, a.source);
    }
    if let Some(g) = r.grid_upper {
        let _ = writeln!(text, "grid code: density ≤ {g} (exact)");
    }
    Ok((EXIT_OK, text))
}

fn fmt_set(s: &PointSet) -> String {
    s.iter().map(|p| format!("({},{})", p.x, p.y)).collect::<Vec<_>>().join(" ")
}

fn classify(
    rp: RadiusPair,
    frame: &str,
    count: Option<usize>,
    claim: Option<&str>,
    corner: Option<Point>,
    margin: Option<i64>,
    budget: u64,
) -> Res {
    need_code(rp)?;
    let margin = margin_for(rp, margin)?;
    let bounds_err = |e: idcode::bounds::frames::BoundsError| Fail::usage(e.to_string());
    let f = FrameShape::named(frame).map_err(bounds_err)?;
    let claim: Option<Claim> = claim
        .map(|c| c.parse().map_err(|e: idcode::bounds::frames::ClaimError| Fail::usage(e.to_string())))
        .transpose()?;
    let count = match count {
        Some(c) => c,
        None => match frame_min_count(rp, &f, margin, budget).map_err(bounds_err)? {
            FrameCount::Proved { min } => min,
            FrameCount::Inconclusive { reason } => {
                return Ok((EXIT_INCONCLUSIVE, format!("inconclusive: {reason}\n")))
            }
        },
    };
    let classes = classify_min_configs(rp, &f, count).map_err(bounds_err)?;
    let mut text = format!("{} classes with {count} vertices in {f}\n", classes.len());
    let mut status = EXIT_OK;
    for (n, c) in classes.iter().enumerate() {
        let _ = writeln!(text, "class {} orbit {}: {}", n + 1, c.orbit, fmt_set(&c.representative));
        let Some(cl) = &claim else { continue };
        let configs = match corner {
            Some(p) => orientations_with(&f, &c.representative, p),
            None => vec![c.representative.clone()],
        };
        if configs.is_empty() {
            let _ = writeln!(text, "  no orientation has a vertex there");
            status = status.max(EXIT_INCONCLUSIVE);
        }
        for cfg in configs {
            match check_forcing(rp, &f, &cfg, cl, margin, budget).map_err(bounds_err)? {
                Forcing::Proved => {
                    let _ = writeln!(text, "  {}: proved", fmt_set(&cfg));
                }
                Forcing::Inconclusive { reason, .. } => {
                    let _ = writeln!(text, "  {}: inconclusive ({reason})", fmt_set(&cfg));
                    status = EXIT_INCONCLUSIVE;
                }
            }
        }
    }
    Ok((status, text))
}

fn radius_label(r2: i64) -> String {
    let s = (r2 as u64).isqrt() as i64;
    if s * s == r2 {
        s.to_string()
    } else {
        format!("√{r2}")
    }
}

fn tag(p: Provenance) -> &'static str {
    match p {
        Provenance::MachineProved => "computed",
        Provenance::Asserted => "asserted",
        Provenance::Literature => "literature",
    }
}

fn cell_line(c: &CellReport) -> Option<String> {
    let head = format!("r={:<3} r+Δ={:<4}", radius_label(c.r2), radius_label(c.big_r2));
    match c.printed {
        PrintedCell::Blank => None,
        PrintedCell::NoCode => Some(format!(
            "{head} X  no code ({})",
            if c.exists { "MISMATCH: a code exists" } else { "computed" }
        )),
        PrintedCell::Bounds { .. } if !c.literature.is_empty() => {
            let vals: Vec<String> = c.literature.iter().map(|b| b.value.to_string()).collect();
            let mut line = format!("{head} {} (literature)", vals.join(" to "));
            if let Some(up) = c.best_upper() {
                let _ = write!(line, "; verified code {up} (computed)");
            }
            Some(line)
        }
        PrintedCell::Bounds { .. } => {
            let machine: Vec<String> = c
                .lower
                .iter()
                .filter(|b| b.provenance == Provenance::MachineProved)
                .map(|b| format!("{} {} {}", b.value, tag(b.provenance), b.source))
                .collect();
            let asserted = c.lower.iter().filter(|b| b.provenance != Provenance::MachineProved).max_by_key(|b| b.value);
            let lower = match asserted {
                Some(a) => format!("{} ({}; {})", a.value, tag(a.provenance), machine.join(", ")),
                None => format!("{} ({})", c.best_machine_lower().map_or("?".into(), |v| v.to_string()), machine.join(", ")),
            };
            let codes: Vec<String> = c
                .upper
                .iter()
                .map(|u| format!("{} {}", u.name, if u.verified { "verified" } else { "NOT verified" }))
                .collect();
            let upper = c.best_upper().map_or("?".into(), |v| v.to_string());
            Some(format!(
                "{head} lower {lower}; upper {upper} (computed: {}); printed {}",
                codes.join(", "),
                printed_text(c.printed)
            ))
        }
    }
}

fn printed_text(cell: PrintedCell) -> String {
    let show = |n: idcode::bounds::table::Noted| match n.note {
        Some(c) => format!("{}^{c}", n.value),
        None => n.value.to_string(),
    };
    match cell {
        PrintedCell::Bounds { lower, upper } if lower == upper => show(lower),
        PrintedCell::Bounds { lower, upper } => format!("[{}, {}]", show(lower), show(upper)),
        PrintedCell::NoCode => "X".into(),
        PrintedCell::Blank => "-".into(),
    }
}

fn table() -> Res {
    let cells = compute_table().map_err(|e| Fail::usage(e.to_string()))?;
    let mut text = String::new();
    let mut status = EXIT_OK;
    for c in &cells {
        if let Some(line) = cell_line(c) {
            let _ = writeln!(text, "{line}");
        }
        let bad_x = c.printed == PrintedCell::NoCode && c.exists;
        let bad_code = c.upper.iter().any(|u| !u.verified);
        if bad_x || bad_code {
            status = EXIT_FAILURE;
        }
    }
    Ok((status, text))
}

fn simulate(source: &str, radii: &OptRadii, trials: u64, seed: u64) -> Res {
    let (code, rp) = code_and_pair(source, radii)?;
    need_code(rp)?;
    let rep = simulate_trials(&code, rp, trials, seed);
    let text = format!(
        "trials {} unique-correct {} ambiguous {} wrong {}\n",
        rep.trials, rep.unique_correct, rep.ambiguous, rep.wrong
    );
    Ok((if rep.unique_correct == rep.trials { EXIT_OK } else { EXIT_FAILURE }, text))
}

#[allow(clippy::too_many_arguments)]
fn render_cmd(
    target: Target,
    code: Option<&str>,
    radii: &OptRadii,
    center: Point,
    v: Option<Point>,
    mark: Option<Point>,
    (w, h): (i64, i64),
    format: Format,
    max_cells: i64,
    out: Option<PathBuf>,
) -> Res {
    let win = Window::centered(center, w, h);
    if win.cells() > max_cells {
        return Err(Fail::usage(format!(
            "window {w}x{h} exceeds the cap of {max_cells} cells"
        )));
    }
    let empty = PointSet::new();
    let loaded;
    let (filled, highlight): (Box<dyn Fn(Point) -> bool>, PointSet) = match target {
        Target::Ball => {
            let r2 = radii.r2.ok_or_else(|| Fail::usage("ball needs --r2"))?;
            let b = ball(center, r2);
            (Box::new(move |p| b.contains(&p)), empty)
        }
        Target::Pattern => {
            let rp = opt_pair(radii)?.ok_or_else(|| Fail::usage("pattern needs --r2 and --R2"))?;
            let v = v.unwrap_or(center - Point::new(1, 0));
            let s = sym_diff_pattern(center, v, rp).map_err(|e| Fail::usage(e.to_string()))?;
            (Box::new(|_| false), s)
        }
        Target::Code => {
            let source = code.ok_or_else(|| Fail::usage("code needs --code"))?;
            loaded = load_code(source)?.0;
            let c = &loaded;
            (Box::new(move |p| c.contains(p)), empty)
        }
    };
    let text = match format {
        Format::Ascii => render::ascii(win, &*filled, &highlight),
        Format::Svg => {
            let circles = mark.map(|m| Circles {
                center: m,
                radii: [radii.r2, radii.big_r2].into_iter().flatten().collect(),
            });
            render::svg(win, &*filled, &highlight, circles.as_ref())
        }
    };
    let summary = format!("wrote {w}x{h} {format:?} drawing\n").to_lowercase();
    Ok((EXIT_OK, write_or_return(text, out, summary)?))
}
