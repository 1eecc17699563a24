use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxnorm_core::format::{fmt_real, parse_word};
use coxnorm_core::operator::{
    compression, exact_norm_finite_group, gram_psd, negdef_check, norm_interval, schur_contraction_check,
};
use coxnorm_core::semigroup::{
    decompose, epsnet_params, epsnet_verify, generator_check, heat_apply, k_membership, psi_params, rd_estimate,
    HeatParams, RdConstants,
};
use coxnorm_core::{CoxeterGroup, CoxeterMatrix, Error, GroupElement, GroupFunction, ScalarMode};

/// Coxeter group arithmetic, convolution operator norms and heat semigroup
/// tools. Every report is plain `key = value` text.
#[derive(Parser)]
#[command(name = "coxnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Args)]
struct GroupArg {
    /// Coxeter group file (`rank r` then `m i j v` lines)
    #[arg(long, value_name = "PATH")]
    group: PathBuf,
    /// Arithmetic for the geometric representation (default: exact when possible)
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

#[derive(Args)]
struct FnArg {
    #[command(flatten)]
    group: GroupArg,
    /// Function file (`<word> <re> <im>` per line)
    #[arg(long = "fn", value_name = "PATH")]
    func: PathBuf,
}

#[derive(Args)]
struct RdArg {
    /// Rapid-decay constant C (an assumption, not derived)
    #[arg(long = "C", default_value_t = 1.0)]
    c: f64,
    /// Rapid-decay exponent k (an assumption, not derived)
    #[arg(long, default_value_t = 2)]
    k: u32,
}

#[derive(Subcommand)]
enum Command {
    /// ShortLex normal form and length of the group element named by a word
    Reduce {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
    },
    /// Product of group elements, in normal form
    Mult {
        #[command(flatten)]
        group: GroupArg,
        /// Factors, left to right (repeat the flag)
        #[arg(long, required = true)]
        word: Vec<String>,
    },
    /// Inverse of a group element
    Inv {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
    },
    /// The word-metric ball B_N in ShortLex order with cumulative sizes
    Ball {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Inversion set N(g): the positive roots sent negative by g⁻¹, one per wall crossed
    Invset {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        word: String,
    },
    /// Wall-crossing distance |N(g) Δ N(h)|, checked against l(g⁻¹h)
    Crossdist {
        #[command(flatten)]
        group: GroupArg,
        /// Exactly two words, g then h
        #[arg(long, num_args = 1, required = true)]
        word: Vec<String>,
    },
    /// Convolution product f∗h in the group algebra
    Conv {
        #[command(flatten)]
        group: GroupArg,
        /// Exactly two function files, f then h
        #[arg(long = "fn", value_name = "PATH", required = true)]
        func: Vec<PathBuf>,
    },
    /// Involution f*(g) = conj f(g⁻¹)
    Adjoint {
        #[command(flatten)]
        f: FnArg,
    },
    /// ℓ¹, ℓ² and Sobolev norm ‖(1+l)^k f‖₂
    Norms {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Compression P_N λ(f) P_N of the left-regular operator to the ball B_N
    Compress {
        #[command(flatten)]
        f: FnArg,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Certified bracket lower ≤ ‖λ(f)‖ ≤ upper for the reduced C*-norm
    Opnorm {
        #[command(flatten)]
        f: FnArg,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Exact ‖λ(f)‖ from the full regular representation of a finite group
    OracleNorm {
        #[command(flatten)]
        f: FnArg,
    },
    /// Positive semidefiniteness of the heat kernel Gram matrix [e^{-t l(x⁻¹y)}] on B_N
    GramPsd {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        t: f64,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Conditional negative definiteness of the length kernel l(x⁻¹y) on B_N
    Negdef {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Schur multiplier contraction ‖P_N λ(φ_t f) P_N‖ ≤ ‖P_N λ(f) P_N‖
    SchurCheck {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        t: f64,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Heat semigroup M_t f = e^{-tl} f, truncated to B_N when -N is given
    Heat {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        t: f64,
        #[arg(short = 'N')]
        n: Option<usize>,
    },
    /// Generator residual ‖P_N λ((M_t f - f)/t + l f) P_N‖ against (t/2)·max l²·ℓ¹(f)
    GenCheck {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        t: f64,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Parameters (t, n) of the approximating multiplier ψ_m = φ_{n,t}
    Psi {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        rd: RdArg,
        /// Optional function file; prints ψ_m·f
        #[arg(long = "fn", value_name = "PATH", requires = "group")]
        func: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        group: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Membership of f in K = {‖λ(f)‖ ≤ 1, ‖λ(l·f)‖ ≤ 1}
    KMember {
        #[command(flatten)]
        f: FnArg,
        #[arg(short = 'N')]
        n: usize,
    },
    /// ε-net parameters t, n, |B_n| and radius bound for K
    Epsnet {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        rd: RdArg,
    },
    /// Distance from f to its ε-net approximant φ_{n,t}·f, against the analytic bound
    EpsnetVerify {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        eps: f64,
        #[arg(short = 'N')]
        n: usize,
        #[command(flatten)]
        rd: RdArg,
    },
    /// Decomposition h = m·k + c·δ_e with k in K
    Decompose {
        #[command(flatten)]
        f: FnArg,
        #[arg(short = 'N')]
        n: usize,
    },
    /// Lower bound on the rapid-decay constant: max lower‖λ(f)‖ / ‖(1+l)^k f‖₂
    RdEstimate {
        #[command(flatten)]
        group: GroupArg,
        /// Sample function files (repeat the flag)
        #[arg(long = "fn", value_name = "PATH", required = true)]
        func: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(short = 'N')]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

#[derive(Default)]
struct Report(String);

impl Report {
    fn kv(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.0.push_str(&format!("{key} = {value}\n"));
        self
    }

    fn real(&mut self, key: &str, x: f64) -> &mut Self {
        self.kv(key, fmt_real(x))
    }

    fn raw(&mut self, text: &str) -> &mut Self {
        self.0.push_str(text);
        self
    }

    fn rd(&mut self, rd: &RdConstants) -> &mut Self {
        self.kv("rd_constants", format!("C={} k={} (assumed)", fmt_real(rd.c), rd.k))
    }

    fn function(&mut self, prefix: &str, f: &GroupFunction) -> &mut Self {
        for line in f.to_text().lines() {
            self.0.push_str(prefix);
            self.0.push_str(line);
            self.0.push('\n');
        }
        self
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: coxnorm_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { .. } | Error::InvalidMatrix(_) => Failure::Usage(format!("{}: {e}", path.display())),
        other => Failure::Lib(other),
    })
}

fn load_group(path: &Path, mode: Option<Mode>) -> Result<Arc<CoxeterGroup>, Failure> {
    let matrix = with_path(path, CoxeterMatrix::parse(&read(path)?))?;
    let mode = mode.map(|m| match m {
        Mode::Exact => ScalarMode::Exact,
        Mode::Float => ScalarMode::Float,
    });
    Ok(Arc::new(CoxeterGroup::new(matrix, mode)?))
}

fn load_fn(group: &Arc<CoxeterGroup>, path: &Path) -> Result<GroupFunction, Failure> {
    with_path(path, GroupFunction::parse(group.clone(), &read(path)?))
}

impl GroupArg {
    fn load(&self) -> Result<Arc<CoxeterGroup>, Failure> {
        load_group(&self.group, self.mode)
    }
}

impl FnArg {
    fn load(&self) -> Result<GroupFunction, Failure> {
        let g = self.group.load()?;
        load_fn(&g, &self.func)
    }
}

impl RdArg {
    fn constants(&self) -> Result<RdConstants, Failure> {
        Ok(RdConstants::new(self.c, self.k)?)
    }
}

fn element(group: &CoxeterGroup, text: &str) -> Result<GroupElement, Failure> {
    let word = parse_word(text).map_err(|e| Failure::Usage(format!("word `{text}`: {e}")))?;
    Ok(group.reduce(&word)?)
}

fn exactly_two<'a, T>(items: &'a [T], what: &str) -> Result<(&'a T, &'a T), Failure> {
    match items {
        [a, b] => Ok((a, b)),
        _ => Err(Failure::Usage(format!(
            "expected exactly two {what}, got {}",
            items.len()
        ))),
    }
}

fn run(command: Command, out: &mut Report) -> Outcome {
    match command {
        Command::Reduce { group, word } => {
            let g = group.load()?;
            let x = element(&g, &word)?;
            out.kv("nf", &x).kv("length", x.length());
        }
        Command::Mult { group, word } => {
            let g = group.load()?;
            let mut acc = GroupElement::identity();
            for w in &word {
                acc = g.multiply(&acc, &element(&g, w)?)?;
            }
            out.kv("product", &acc).kv("length", acc.length());
        }
        Command::Inv { group, word } => {
            let g = group.load()?;
            let x = g.inverse(&element(&g, &word)?)?;
            out.kv("inverse", &x).kv("length", x.length());
        }
        Command::Ball { group, n } => {
            let g = group.load()?;
            let ball = g.ball(n)?;
            for x in ball.elements() {
                out.raw(&format!("{x}\n"));
            }
            let sizes: Vec<String> = ball.cumulative_sizes().iter().map(|s| s.to_string()).collect();
            out.kv("sizes", sizes.join(","));
        }
        Command::Invset { group, word } => {
            let g = group.load()?;
            let x = element(&g, &word)?;
            let roots = g.inversion_set(&x)?;
            out.kv("element", &x).kv("mode", g.mode()).kv("size", roots.len());
            for (i, r) in roots.iter().enumerate() {
                out.kv(&format!("root[{}]", i + 1), r);
            }
        }
        Command::Crossdist { group, word } => {
            let g = group.load()?;
            let (a, b) = exactly_two(&word, "--word values")?;
            let (x, y) = (element(&g, a)?, element(&g, b)?);
            let d = g.crossing_distance(&x, &y)?;
            let quotient = g.multiply(&g.inverse(&x)?, &y)?;
            out.kv("distance", d)
                .kv("quotient", &quotient)
                .kv("quotient_length", quotient.length());
        }
        Command::Conv { group, func } => {
            let g = group.load()?;
            let (a, b) = exactly_two(&func, "--fn files")?;
            let f = load_fn(&g, a)?.convolve(&load_fn(&g, b)?)?;
            out.function("", &f);
        }
        Command::Adjoint { f } => {
            out.function("", &f.load()?.adjoint()?);
        }
        Command::Norms { f, k } => {
            let norms = f.load()?.norms(k);
            out.real("l1", norms.l1)
                .real("l2", norms.l2)
                .kv("k", k)
                .real("sobolev", norms.sobolev);
        }
        Command::Compress { f, n } => {
            let m = compression(&f.load()?, n)?;
            out.kv("radius", n).kv("dim", m.dim()).raw(&m.to_text());
        }
        Command::Opnorm { f, n } => {
            let iv = norm_interval(&f.load()?, n)?;
            out.real("lower", iv.lower)
                .real("upper", iv.upper)
                .kv("radius", iv.radius)
                .real("compressed", iv.compressed)
                .real("l2", iv.l2)
                .kv("iterations", iv.iterations);
        }
        Command::OracleNorm { f } => {
            let func = f.load()?;
            let norm = exact_norm_finite_group(&func)?;
            let order = func.group().enumerate_finite()?.len();
            out.kv("order", order).real("norm", norm);
        }
        Command::GramPsd { group, t, n } => {
            let r = gram_psd(&group.load()?, t, n)?;
            out.real("t", t)
                .kv("radius", n)
                .kv("dim", r.dim)
                .real("min_eigenvalue", r.min_eigenvalue)
                .real("max_entry", r.max_entry)
                .kv("verdict", r.verdict);
        }
        Command::Negdef { group, n } => {
            let r = negdef_check(&group.load()?, n)?;
            out.kv("radius", n).kv("dim", r.dim);
            match r.max_eigenvalue {
                Some(x) => out.real("max_eigenvalue", x),
                None => out.kv("max_eigenvalue", "none"),
            };
            out.real("max_entry", r.max_entry).kv("verdict", r.verdict);
        }
        Command::SchurCheck { f, t, n } => {
            let r = schur_contraction_check(t, &f.load()?, n)?;
            out.real("t", t)
                .kv("radius", n)
                .real("lhs", r.lhs)
                .real("rhs", r.rhs)
                .kv("verdict", r.verdict);
        }
        Command::Heat { f, t, n } => {
            let p = HeatParams::new(t, n)?;
            out.function("", &heat_apply(&p, &f.load()?));
        }
        Command::GenCheck { f, t, n } => {
            let r = generator_check(&f.load()?, t, n)?;
            out.real("t", t)
                .kv("radius", n)
                .real("value", r.value)
                .real("bound", r.bound)
                .kv("verdict", r.value <= r.bound);
        }
        Command::Psi {
            m,
            rd,
            func,
            group,
            mode,
        } => {
            let rd = rd.constants()?;
            let p = psi_params(m, &rd)?;
            let n = p.truncation.expect("psi is truncated");
            out.kv("m", m)
                .real("t", p.t)
                .kv("n", n)
                .real("threshold", (1.0 / m as f64).min(2.0))
                .rd(&rd);
            if let (Some(path), Some(gpath)) = (func, group) {
                let g = load_group(&gpath, mode)?;
                out.function("psi_f ", &heat_apply(&p, &load_fn(&g, &path)?));
            }
        }
        Command::KMember { f, n } => {
            let v = k_membership(&f.load()?, n)?;
            out.kv("status", v.status)
                .kv("radius", n)
                .real("norm_lower", v.norm.lower)
                .real("norm_upper", v.norm.upper)
                .real("weighted_lower", v.weighted_norm.lower)
                .real("weighted_upper", v.weighted_norm.upper);
        }
        Command::Epsnet { group, eps, rd } => {
            let rd = rd.constants()?;
            let p = epsnet_params(&*group.load()?, eps, &rd)?;
            let s = p.schedule;
            out.real("eps", s.eps)
                .real("t", s.t)
                .kv("n", s.n)
                .real("tail", s.tail)
                .kv("dimension", p.dimension)
                .real("radius_bound", s.radius_bound)
                .rd(&rd)
                .kv(
                    "net",
                    "parameters only; the net is a finite grid in the ball of this radius in span{δ_g : g in B_n}",
                );
        }
        Command::EpsnetVerify { f, eps, n, rd } => {
            let rd = rd.constants()?;
            let r = epsnet_verify(&f.load()?, eps, &rd, n)?;
            out.kv("status", r.membership.status)
                .real("eps", eps)
                .real("t", r.schedule.t)
                .kv("n", r.schedule.n)
                .kv("radius", n)
                .real("heat_term", r.heat_term)
                .real("tail_term", r.tail_term)
                .real("analytic_bound", r.analytic_bound)
                .real("empirical_distance", r.empirical_distance)
                .real("heat_distance", r.heat_distance)
                .real("tail_distance", r.tail_distance)
                .kv("empirical_within_bound", r.empirical_within_bound)
                .kv(
                    "bound_within_eps",
                    r.bound_within_eps.map_or("n/a".to_string(), |b| b.to_string()),
                )
                .kv("passed", r.passed())
                .rd(&rd);
        }
        Command::Decompose { f, n } => {
            let d = decompose(&f.load()?, n)?;
            out.kv("m", d.m)
                .kv("c", format!("{} {}", fmt_real(d.c.re), fmt_real(d.c.im)))
                .kv("status", d.certificate.status)
                .function("k_part ", &d.k_part);
        }
        Command::RdEstimate { group, func, k, n } => {
            let g = group.load()?;
            let samples = func.iter().map(|p| load_fn(&g, p)).collect::<Result<Vec<_>, _>>()?;
            let c = rd_estimate(&samples, k, n)?;
            out.kv("samples", samples.len())
                .kv("k", k)
                .kv("radius", n)
                .real("lower_bound_C", c);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut report = Report::default();
    match run(cli.command, &mut report) {
        Ok(()) => {
            print!("{}", report.0);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&failure))
        }
    }
}

fn exit_code(failure: &Failure) -> u8 {
    match failure {
        Failure::Lib(e) if e.is_invariant_violation() => 2,
        _ => 1,
    }
}
