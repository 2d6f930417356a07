use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_hecke::braid::BraidWord;
use cubic_hecke::enumerate::regular;
use cubic_hecke::error::Error;
use cubic_hecke::exact::{exact_algebra, reduce_word};
use cubic_hecke::level5::Level5;
use cubic_hecke::ring::SpecPoint;
use cubic_hecke::scalar::ModP;
use cubic_hecke::tower::{basis_words, header, specialize_table, AlgebraElement, Element};
use cubic_hecke::verify::{self, A5Options, VerificationReport};

#[derive(Parser)]
#[command(
    name = "cubic-hecke",
    version,
    about = "Normal forms and action tables for cubic Hecke algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Point {
    /// Reduce coefficients modulo this prime.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    b: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    c: i64,
}

impl Point {
    fn modp(&self) -> Result<Option<ModP>, Error> {
        match self.prime {
            None => Ok(None),
            Some(p) => Ok(Some(ModP::from_point(&SpecPoint::new(
                p, self.a, self.b, self.c,
            )?)?)),
        }
    }

    fn require(&self) -> Result<ModP, Error> {
        self.modp()?
            .ok_or_else(|| Error::BadPoint("level 5 needs --prime".into()))
    }
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Checkpoint directory for level-5 data.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Identities,
    Relations,
    All,
    A5,
}

#[derive(Copy, Clone, ValueEnum, PartialEq)]
enum Mode {
    Exact,
    Spec,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of a braid word, letters separated by spaces.
    Normalize {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        depth_limit: Option<usize>,
        /// Include the rewrite trace (levels 2 and 3).
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Product of two operands, each a word or `@file.json` element.
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Basis words of `A_n`.
    Basis {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Right action table of a generator.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        gen: i8,
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exit status 1 if a claim fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Include the level-5 cube of delta.
        #[arg(long)]
        delta_cubed: bool,
        /// Record per-claim timings.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension of `A_n` at a point by enumeration.
    Rank {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Error(Error),
    Unverified(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn check_level(n: usize, lo: usize, hi: usize) -> Result<(), Error> {
    if n < lo || n > hi {
        return Err(Error::LevelOutOfRange(n));
    }
    Ok(())
}

fn level5(s: ModP, common: &Common) -> Result<Level5, Error> {
    verify::level5_at(s, common.seed, common.resume.as_deref(), |k, t| {
        eprintln!("induced module {k}/{t}")
    })
}

fn modp_element_json(x: &Element<u64>) -> Result<Value, Error> {
    let cat = basis_words(x.n)?;
    let terms: Vec<Value> = x
        .terms
        .iter()
        .map(|(i, c)| json!({"word": cat.word(*i as usize).letters, "coeff": c.to_string()}))
        .collect();
    Ok(json!({"n": x.n, "terms": terms}))
}

fn point_json(s: &ModP) -> Value {
    json!({"p": s.f.p(), "a": s.a.to_string(), "b": s.b.to_string(), "c": s.c.to_string()})
}

fn operand(n: usize, text: &str) -> Result<AlgebraElement, Error> {
    match text.strip_prefix('@') {
        Some(path) => {
            let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let x = AlgebraElement::from_json(&v)?;
            if x.n != n {
                return Err(Error::StrandMismatch(x.n, n));
            }
            Ok(x)
        }
        None => Ok(exact_word(&BraidWord::parse(n, text)?, None)?.0),
    }
}

fn exact_word(
    w: &BraidWord,
    depth: Option<usize>,
) -> Result<(AlgebraElement, Option<Value>), Error> {
    let (x, trace) = reduce_word(w, depth)?;
    Ok((
        x,
        trace.map(|t| serde_json::to_value(t).expect("trace serializes")),
    ))
}

fn specialized(x: &AlgebraElement, s: &ModP) -> Element<u64> {
    use cubic_hecke::scalar::Scalars;
    let terms = x
        .terms
        .iter()
        .map(|(i, c)| (*i, s.embed(c)))
        .filter(|(_, c)| *c != 0)
        .collect();
    Element { n: x.n, terms }
}

fn run(cmd: Cmd) -> Result<(Value, Option<PathBuf>), Failure> {
    match cmd {
        Cmd::Normalize {
            n,
            word,
            depth_limit,
            trace,
            point,
            common,
        } => {
            check_level(n, 2, 5)?;
            let w = BraidWord::parse(n, &word)?;
            let mut out = json!({"header": header(n)?, "input": {"n": n, "word": w.letters}});
            if n == 5 {
                let s = point.require()?;
                let l5 = level5(s, &common)?;
                out["point"] = point_json(&s);
                out["result"] = modp_element_json(&l5.to_basis(&l5.word(&w)?))?;
            } else {
                let (x, tr) = exact_word(&w, depth_limit)?;
                match point.modp()? {
                    Some(s) => {
                        out["point"] = point_json(&s);
                        out["result"] = modp_element_json(&specialized(&x, &s))?;
                    }
                    None => out["result"] = x.to_json()?,
                }
                if trace {
                    out["trace"] = tr.unwrap_or(Value::Null);
                }
            }
            Ok((out, common.out))
        }
        Cmd::Mul {
            n,
            x,
            y,
            point,
            common,
        } => {
            check_level(n, 2, 5)?;
            let mut out = json!({"header": header(n)?});
            if n == 5 {
                let s = point.require()?;
                let l5 = level5(s, &common)?;
                let at = |text: &str| -> Result<Element<u64>, Error> {
                    match text.strip_prefix('@') {
                        Some(_) => Ok(specialized(&operand(5, text)?, &s)),
                        None => Ok(l5.to_basis(&l5.word(&BraidWord::parse(5, text)?)?)),
                    }
                };
                let z = l5.multiply_basis(&at(&x)?, &at(&y)?)?;
                out["point"] = point_json(&s);
                out["result"] = modp_element_json(&z)?;
            } else {
                let alg = exact_algebra(n)?;
                let z = alg.multiply(&operand(n, &x)?, &operand(n, &y)?)?;
                match point.modp()? {
                    Some(s) => {
                        out["point"] = point_json(&s);
                        out["result"] = modp_element_json(&specialized(&z, &s))?;
                    }
                    None => out["result"] = z.to_json()?,
                }
            }
            Ok((out, common.out))
        }
        Cmd::Basis { n, common } => {
            check_level(n, 2, 5)?;
            let cat = basis_words(n)?;
            let words: Vec<Value> = cat.words.iter().map(|w| json!(w.letters)).collect();
            Ok((json!({"header": header(n)?, "words": words}), common.out))
        }
        Cmd::Table {
            n,
            gen,
            point,
            common,
        } => {
            check_level(n, 2, 4)?;
            if gen == 0 || gen.unsigned_abs() as usize >= n {
                return Err(Error::IndexOutOfRange {
                    index: gen as i32,
                    strands: n,
                }
                .into());
            }
            let t = exact_algebra(n)?.table(gen);
            let mut out = json!({"header": header(n)?});
            match point.prime {
                Some(p) => {
                    let pt = SpecPoint::new(p, point.a, point.b, point.c)?;
                    let s = ModP::from_point(&pt)?;
                    out["point"] = point_json(&s);
                    out["table"] = specialize_table(t, &pt)?.to_json();
                }
                None => out["table"] = t.to_json(),
            }
            Ok((out, common.out))
        }
        Cmd::Verify {
            suite,
            mode,
            threads,
            delta_cubed,
            timings,
            point,
            common,
        } => {
            let seed = common.seed;
            let rep = match suite {
                Suite::Identities => verify::check_identity_lemmas(seed),
                Suite::Relations if mode == Mode::Exact => {
                    verify::check_relations_exact(&[2, 3, 4], seed)
                }
                Suite::Relations => {
                    let pts = match point.modp()? {
                        Some(s) => vec![s],
                        None => verify::a5_points(seed)?,
                    };
                    verify::check_relations_spec(&[2, 3, 4], &pts, seed)
                }
                Suite::All => verify::check_all(seed),
                Suite::A5 => {
                    let points = match point.modp()? {
                        Some(s) => vec![s],
                        None => verify::a5_points(seed)?,
                    };
                    let opts = A5Options {
                        seed,
                        checkpoint: common.resume.clone(),
                        delta_cubed,
                        hom_pairs: 100,
                        points,
                        threads,
                    };
                    verify::check_a5(&opts, |m| eprintln!("{m}"))
                }
            };
            report(rep, timings, common.out)
        }
        Cmd::Rank { n, point, common } => {
            check_level(n, 2, 5)?;
            let s = point.require()?;
            let dim = if n == 5 {
                level5(s, &common)?.dim()
            } else {
                regular(&s, n, 4 * basis_words(n)?.len())?.dim
            };
            Ok((
                json!({"header": header(n)?, "point": point_json(&s), "rank": dim}),
                common.out,
            ))
        }
    }
}

fn report(
    rep: VerificationReport,
    timings: bool,
    out: Option<PathBuf>,
) -> Result<(Value, Option<PathBuf>), Failure> {
    let v = rep.to_json(timings);
    for r in rep.failures() {
        eprintln!("FAIL {} ({})", r.id, r.anchor);
    }
    if rep.ok() {
        Ok((v, out))
    } else {
        if let Some(path) = &out {
            if let Err(e) = write(&v, Some(path)) {
                return Err(e.into());
            }
            return Err(Failure::Unverified(Value::Null));
        }
        Err(Failure::Unverified(v))
    }
}

fn write(v: &Value, path: Option<&PathBuf>) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok((v, out)) => match write(&v, out.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Unverified(v)) => {
            if !v.is_null() {
                let _ = write(&v, None);
            }
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::IrreducibleWord { .. } => 2,
                Error::Parse(_)
                | Error::IndexOutOfRange { .. }
                | Error::LevelOutOfRange(_)
                | Error::StrandMismatch(..)
                | Error::ZeroC
                | Error::BadPoint(_)
                | Error::UnknownName(_)
                | Error::Json(_) => 64,
                _ => 1,
            })
        }
    }
}
