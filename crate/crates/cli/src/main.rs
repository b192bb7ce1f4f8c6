use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use thetalift::ktypes::{correspond_ktype, split_mu, KType};
use thetalift::nonvanishing::{c_count, occurs};
use thetalift::packets::{
    eta_prime_sign_ok, pi_from_eta, sigma_from_eta_prime, ACharacter, AParameter, LParameter,
};
use thetalift::suites::{enumerate_lifts, run_suite, EnumerationBounds, Suite};
use thetalift::{lift, Half, HcParam, LiftContext, Sign, Signature};

#[derive(Parser)]
#[command(
    name = "thetalift",
    version,
    about = "Theta lifts of discrete series between unitary groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Theta lift of a discrete series of U(p,q) to U(r,s).
    Lift(LiftArgs),
    /// Nonvanishing criterion and tower position.
    Occurs(LiftArgs),
    /// Combinatorial invariants with the window counts for t = 0..10.
    Invariants(LiftArgs),
    /// All members of the L-packet with the given characters.
    Packet {
        #[arg(long, allow_hyphen_values = true)]
        kappas: String,
    },
    /// All members of the A-packet of an A-parameter on U(r,s).
    Apacket {
        #[arg(long, allow_hyphen_values = true)]
        mus: String,
        #[arg(long, allow_hyphen_values = true)]
        mu0: Half,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Joint-harmonics image of a K-type of U(p)×U(q) in U(r)×U(s).
    KtypeMap {
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        a: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        b: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, allow_hyphen_values = true)]
        m0: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n0: Option<i64>,
        /// Also split μ with these characters (requires --m2).
        #[arg(long, allow_hyphen_values = true, requires = "m2")]
        m1: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "m1")]
        m2: Option<i64>,
    },
    /// Run a verification suite, one JSON line per case and a summary last.
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Emit the lift of every bounded parameter to every target as JSON lines.
    Enumerate {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    /// Comma-separated entries, p-part first, e.g. `1/2,-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    /// Defaults to (r+s) mod 2.
    #[arg(long, allow_hyphen_values = true)]
    m0: Option<i64>,
    /// Defaults to (p+q) mod 2.
    #[arg(long, allow_hyphen_values = true)]
    n0: Option<i64>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long, default_value_t = 8)]
    max_dm: usize,
    /// Bound on the absolute value of shifted entries.
    #[arg(long, default_value = "11/2")]
    height: Half,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] thetalift::Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|e| CliError::Input(format!("cannot parse {t:?}: {e}")))
        })
        .collect()
}

fn ctx_for(
    source: Signature,
    target: Signature,
    m0: Option<i64>,
    n0: Option<i64>,
) -> Result<LiftContext, CliError> {
    let (n, m) = (source.dim(), target.dim());
    if n == 0 || m == 0 {
        return Err(CliError::Input(
            "signatures must have positive dimension".into(),
        ));
    }
    Ok(LiftContext::new(
        m0.unwrap_or((m % 2) as i64),
        n0.unwrap_or((n % 2) as i64),
        n,
        m,
    )?)
}

struct Query {
    lam: HcParam,
    ctx: LiftContext,
    target: Signature,
}

impl LiftArgs {
    fn query(&self) -> Result<Query, CliError> {
        let entries: Vec<Half> = parse_list(&self.lambda)?;
        let lam = HcParam::new(Signature::new(self.p, self.q), &entries)?;
        let target = Signature::new(self.r, self.s);
        let ctx = ctx_for(lam.sig(), target, self.m0, self.n0)?;
        Ok(Query { lam, ctx, target })
    }
}

impl BoundsArgs {
    fn bounds(&self) -> Result<EnumerationBounds, CliError> {
        Ok(EnumerationBounds::new(
            self.max_n,
            self.max_dm,
            self.height,
        )?)
    }
}

fn all_characters(n: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0..1u64 << n).map(move |bits| {
        (0..n)
            .map(|i| {
                if bits >> i & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect()
    })
}

fn emit(out: &mut impl Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Lift(args) => {
            let Query { lam, ctx, target } = args.query()?;
            emit(
                out,
                &serde_json::to_value(lift(&lam, &ctx, target)?).unwrap(),
            )?;
        }
        Command::Occurs(args) => {
            let Query { lam, ctx, target } = args.query()?;
            let o = occurs(&lam, ctx.m0(), target)?;
            emit(
                out,
                &json!({
                    "nonzero": o.nonzero,
                    "position": o.position,
                    "failure": o.failure,
                    "k_lambda": o.invariants.k_lambda,
                    "r_lambda": o.invariants.r_lambda,
                    "s_lambda": o.invariants.s_lambda,
                }),
            )?;
        }
        Command::Invariants(args) => {
            let Query { lam, ctx, target } = args.query()?;
            let o = occurs(&lam, ctx.m0(), target)?;
            let inv = &o.invariants;
            let table: Vec<Value> = (0..=10)
                .map(|t| {
                    json!({
                        "t": t,
                        "plus": c_count(inv, Sign::Plus, t),
                        "minus": c_count(inv, Sign::Minus, t),
                    })
                })
                .collect();
            emit(
                out,
                &json!({
                    "k0": inv.k0,
                    "k_lambda": inv.k_lambda,
                    "r_lambda": inv.r_lambda,
                    "s_lambda": inv.s_lambda,
                    "x": inv.x,
                    "x_inf": inv.x_inf,
                    "rounds": inv.rounds,
                    "swapped": o.position.swapped,
                    "c_counts": table,
                }),
            )?;
        }
        Command::Packet { kappas } => {
            let phi = LParameter::new(parse_list(&kappas)?)?;
            let rows = all_characters(phi.n())
                .map(|eta| {
                    let lam = pi_from_eta(&phi, &eta)?;
                    Ok(json!({"eta": eta, "p": lam.sig().p, "q": lam.sig().q, "lambda": lam}))
                })
                .collect::<Result<Vec<Value>, CliError>>()?;
            emit(out, &Value::Array(rows))?;
        }
        Command::Apacket { mus, mu0, r, s } => {
            let target = Signature::new(r, s);
            let phi = AParameter::new(parse_list(&mus)?, mu0, target.dim())?;
            let mut rows = Vec::new();
            for eta in ACharacter::all(phi.n()) {
                if phi.check_character(&eta).is_err() {
                    continue;
                }
                let member = sigma_from_eta_prime(&phi, &eta, target)?;
                rows.push(json!({
                    "eta": eta,
                    "sign_ok": eta_prime_sign_ok(&phi, &eta, target)?,
                    "member": member.map(|aq| aq.blocks().to_vec()),
                }));
            }
            emit(out, &json!({"i0": phi.i0(), "members": rows}))?;
        }
        Command::KtypeMap {
            a,
            b,
            r,
            s,
            m0,
            n0,
            m1,
            m2,
        } => {
            let mu = KType::new(parse_list(&a)?, parse_list(&b)?)?;
            let target = Signature::new(r, s);
            let ctx = ctx_for(mu.sig(), target, m0, n0)?;
            let image = correspond_ktype(&mu, &ctx, target)?;
            let mut rec = json!({"mu": mu, "mu_prime": image});
            if let (Some(m1), Some(m2)) = (m1, m2) {
                let (mu1, mu2) = split_mu(&mu, &ctx, target, m1, m2)?;
                rec["split"] = json!({"mu1": mu1, "mu2": mu2});
            }
            emit(out, &rec)?;
        }
        Command::Verify { suite, bounds } => {
            let suite: Suite = suite.parse().map_err(|e| CliError::Input(format!("{e}")))?;
            let bounds = bounds.bounds()?;
            let mut io_err = None;
            let summary = {
                let mut sink = |v: &Value| {
                    if io_err.is_none() {
                        io_err = emit(out, v).err();
                    }
                };
                run_suite(suite, &bounds, Some(&mut sink))
            };
            if let Some(e) = io_err {
                return Err(e.into());
            }
            emit(out, &json!({"summary": summary}))?;
            if !summary.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Enumerate { bounds } => {
            let bounds = bounds.bounds()?;
            let mut io_err = None;
            let count = {
                let mut sink = |v: &Value| {
                    if io_err.is_none() {
                        io_err = emit(out, v).err();
                    }
                };
                enumerate_lifts(&bounds, &mut sink)?
            };
            if let Some(e) = io_err {
                return Err(e.into());
            }
            emit(
                out,
                &json!({"summary": {"records": count, "bounds": bounds}}),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    code
}
