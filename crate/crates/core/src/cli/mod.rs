//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors. Levels are
//! entered as the shifted level `p/q = k + h^vee` (`--level`), or as `k`
//! (`--k`).

mod output;
mod parse;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use crate::affine::{self, AffineWeylElement, Level};
use crate::annihilator::{self, SubmoduleLabels};
use crate::error::Error;
use crate::finchar::{TensorEngine, DEFAULT_CAP};
use crate::rootsys::{RootSystem, Weight};
use crate::translate::{self, FiltrationMultiset, LinkageCharacter};
use crate::weyl;

pub use output::Format;
use output::{element_alias, element_key, write_record, Record, Value};

/// Environment variable overriding the tensor dimension guard.
pub const CAP_ENV: &str = "AFFTRANS_CAP";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "afftrans", version, about = "Affine Weyl groups, linkage and translation functors at rational level")]
struct Cli {
    /// Output format: records or json-lines.
    #[arg(long, global = true, default_value = "records")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct LevelArgs {
    /// Shifted level p/q = k + h^vee.
    #[arg(long)]
    level: Option<String>,
    /// Level k, converted to k + h^vee.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root datum summary and positive roots.
    Info {
        #[arg(value_name = "TYPE")]
        r#type: String,
    },
    /// Finite W-orbit, or the truncated dominant W_k-orbit when a level is given.
    Orbit {
        #[arg(value_name = "TYPE")]
        r#type: String,
        weight: String,
        /// Use the dot action for the finite orbit.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        level: LevelArgs,
        /// Upper bound on (nu + rho, theta); required with a level.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Representative of a weight in the closed fundamental alcove.
    Alcove {
        #[arg(value_name = "TYPE")]
        r#type: String,
        weight: String,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Dominant integral weights of the open alcove, or up to --bound.
    Dominant {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        bound: Option<String>,
    },
    /// Tensor product decomposition of two finite irreducibles.
    Tensor {
        #[arg(value_name = "TYPE")]
        r#type: String,
        lambda: String,
        mu: String,
        /// Dimension guard on dim V_lambda * dim V_mu.
        #[arg(long)]
        cap: Option<String>,
        /// Use the independent convolution algorithm.
        #[arg(long)]
        oracle: bool,
    },
    /// Weyl (or Verma) filtration of a fusion product, optionally projected to one block.
    Filtration {
        #[arg(value_name = "TYPE")]
        r#type: String,
        lambda: String,
        mu: String,
        /// Verma filtration of V_lambda ⊗ M_mu.
        #[arg(long)]
        verma: bool,
        /// Keep only factors linked to this weight.
        #[arg(long)]
        project: Option<String>,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        cap: Option<String>,
    },
    /// Validate a translation datum (lambda_l, lambda, lambda_r).
    Datum {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        lambda: String,
    },
    /// Translate the Weyl (or Verma) module labelled g.mu to the block of lambda.
    TranslateWeyl {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        g: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        verma: bool,
    },
    /// Translate a Weyl-basis character `elem:coeff,...` from base --from to --to.
    TranslateChar {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long = "char", allow_hyphen_values = true)]
        character: String,
    },
    /// Exhaustive weight-geometry check for one element or the truncated orbit.
    VerifyLemma {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        bound: String,
    },
    /// Regular integral weights of the open alcove.
    Admissible {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Label of the singular generator of the maximal submodule of V_0.
    Generator {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Transport generator labels over [0] to the block of --to.
    Transport {
        #[arg(value_name = "TYPE")]
        r#type: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        labels: String,
    },
}

/// Runs one invocation; `args` excludes the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("afftrans".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let text = e.render().to_string();
                    let first = text.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{}", first.trim_start_matches("error: "));
                    2
                }
            };
        }
    };
    let mut ctx = Ctx { out, err };
    match dispatch(&cli, &mut ctx) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(ctx.err, "{msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(ctx.err, "{e}");
            1
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(ctx.err, "{e}");
            1
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn format_of(s: &str) -> Result<Format, CliError> {
    match s {
        "records" => Ok(Format::Records),
        "json-lines" => Ok(Format::JsonLines),
        other => Err(CliError::Usage(format!("unknown format {other}"))),
    }
}

fn cap_of(flag: &Option<String>) -> Result<u64, CliError> {
    if let Some(c) = flag {
        return parse::count(c, "cap");
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => parse::count(&v, CAP_ENV),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn optional_level(rs: &RootSystem, args: &LevelArgs, ctx: &mut Ctx) -> Result<Option<Level>, CliError> {
    let level = match (&args.level, &args.k) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--level and --k are mutually exclusive".into()));
        }
        (Some(l), None) => parse::level(l)?,
        (None, Some(k)) => parse::level_from_k(rs, k)?,
        (None, None) => return Ok(None),
    };
    if !rs.is_simply_laced() && level.q() > 1 {
        writeln!(
            ctx.err,
            "warning: {} is not simply laced and q={} > 1; the alcove may not be a strict fundamental domain",
            rs.spec(),
            level.q()
        )?;
    }
    Ok(Some(level))
}

fn required_level(rs: &RootSystem, args: &LevelArgs, ctx: &mut Ctx) -> Result<Level, CliError> {
    optional_level(rs, args, ctx)?
        .ok_or_else(|| CliError::Usage("missing --level (or --k)".into()))
}

fn emit(ctx: &mut Ctx, format: Format, records: &[Record]) -> Result<(), CliError> {
    for r in records {
        write_record(ctx.out, format, r)?;
    }
    Ok(())
}

fn multiset_records(parts: &FiltrationMultiset) -> Vec<Record> {
    parts
        .parts()
        .iter()
        .map(|(nu, m)| vec![("nu", Value::text(nu)), ("mult", Value::int(m))])
        .collect()
}

fn sorted_elements(rs: &RootSystem, mut elems: Vec<AffineWeylElement>) -> Vec<AffineWeylElement> {
    elems.sort_by_cached_key(|g| element_key(rs, g));
    elems
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<(), CliError> {
    let format = format_of(&cli.format)?;
    match &cli.command {
        Command::Info { r#type } => {
            let rs = parse::root_system(r#type)?;
            let mut records = vec![vec![
                ("type", Value::text(rs.spec())),
                ("rank", Value::int(rs.rank())),
                ("dual_coxeter", Value::int(rs.dual_coxeter())),
                ("positive_roots", Value::int(rs.positive_roots().len())),
                ("rho", Value::text(rs.rho())),
                ("theta", Value::text(rs.theta())),
                ("simply_laced", Value::Bool(rs.is_simply_laced())),
            ]];
            for (i, root) in rs.positive_roots().iter().enumerate() {
                records.push(vec![
                    ("root", Value::text(root)),
                    ("root_coords", Value::text(Weight::from_ints(rs.positive_root_coords()[i].iter().copied()))),
                    ("norm", Value::text(rs.bilinear(root, root))),
                ]);
            }
            emit(ctx, format, &records)
        }
        Command::Orbit {
            r#type,
            weight,
            dot,
            level,
            bound,
        } => {
            let rs = parse::root_system(r#type)?;
            let lam = parse::weight(weight)?;
            match optional_level(&rs, level, ctx)? {
                None => {
                    rs.check_rank(&lam)?;
                    let records: Vec<Record> = weyl::orbit(&rs, &lam, *dot)
                        .into_iter()
                        .map(|w| vec![("weight", Value::text(w))])
                        .collect();
                    emit(ctx, format, &records)
                }
                Some(level) => {
                    let bound = bound
                        .as_ref()
                        .ok_or_else(|| CliError::Usage("orbit with a level requires --bound".into()))?;
                    let bound = parse::rational(bound, "bound")?;
                    let records: Vec<Record> = affine::dominant_orbit(&rs, &lam, level, &bound)?
                        .into_iter()
                        .map(|(g, w)| vec![("element", Value::text(g.display(&rs))), ("weight", Value::text(w))])
                        .collect();
                    emit(ctx, format, &records)
                }
            }
        }
        Command::Alcove {
            r#type,
            weight,
            level,
        } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let lam = parse::weight(weight)?;
            let rep = affine::alcove_rep(&rs, &lam, level)?;
            emit(
                ctx,
                format,
                &[vec![
                    ("rep", Value::text(&rep.rep)),
                    ("element", Value::text(rep.element.display(&rs))),
                    ("regular", Value::Bool(rep.regular)),
                ]],
            )
        }
        Command::Dominant {
            r#type,
            level,
            bound,
        } => {
            let rs = parse::root_system(r#type)?;
            let weights = match (optional_level(&rs, level, ctx)?, bound) {
                (Some(level), _) => affine::enumerate_dominant(&rs, level),
                (None, Some(b)) => affine::dominant_up_to(&rs, &parse::rational(b, "bound")?),
                (None, None) => {
                    return Err(CliError::Usage("dominant requires --level or --bound".into()));
                }
            };
            let records: Vec<Record> = weights.into_iter().map(|w| vec![("lambda", Value::text(w))]).collect();
            emit(ctx, format, &records)
        }
        Command::Tensor {
            r#type,
            lambda,
            mu,
            cap,
            oracle,
        } => {
            let rs = parse::root_system(r#type)?;
            let (lam, mu) = (parse::weight(lambda)?, parse::weight(mu)?);
            let mut engine = TensorEngine::new(&rs).with_cap(cap_of(cap)?);
            let d = if *oracle {
                engine.oracle(&lam, &mu)?
            } else {
                engine.decompose(&lam, &mu)?
            };
            emit(ctx, format, &multiset_records(&d.into()))
        }
        Command::Filtration {
            r#type,
            lambda,
            mu,
            verma,
            project,
            level,
            cap,
        } => {
            let rs = parse::root_system(r#type)?;
            let (lam, mu) = (parse::weight(lambda)?, parse::weight(mu)?);
            let level = optional_level(&rs, level, ctx)?;
            let mut parts = if *verma {
                translate::verma_filtration(&rs, &lam, &mu)?
            } else {
                let mut engine = TensorEngine::new(&rs).with_cap(cap_of(cap)?);
                translate::kl_weyl_filtration_with(&mut engine, &lam, &mu)?
            };
            if let Some(target) = project {
                let level = level.ok_or_else(|| CliError::Usage("--project requires --level".into()))?;
                let target = parse::weight(target)?;
                if *verma {
                    // Verma keys need not be dominant; project by orbit.
                    let kept = parts
                        .parts()
                        .iter()
                        .filter_map(|(nu, m)| match affine::alcove_rep(&rs, nu, level) {
                            Ok(r) if r.rep == target => Some(Ok((nu.clone(), *m))),
                            Ok(_) => None,
                            Err(e) => Some(Err(e)),
                        })
                        .collect::<Result<_, _>>()?;
                    parts = FiltrationMultiset::from_parts(kept);
                } else {
                    parts = translate::project_linkage(&rs, &parts, &target, level)?;
                }
            }
            emit(ctx, format, &multiset_records(&parts))
        }
        Command::Datum {
            r#type,
            level,
            left,
            right,
            lambda,
        } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let (l, r, lam) = (parse::weight(left)?, parse::weight(right)?, parse::weight(lambda)?);
            let d = translate::check_datum(&rs, &l, &r, &lam, level)?;
            emit(
                ctx,
                format,
                &[vec![
                    ("lambda_l", Value::text(&d.lambda_l)),
                    ("lambda", Value::text(&d.lambda)),
                    ("lambda_r", Value::text(&d.lambda_r)),
                    ("valid", Value::Bool(true)),
                ]],
            )
        }
        Command::TranslateWeyl {
            r#type,
            level,
            g,
            from,
            to,
            verma,
        } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let g = parse::element(&rs, level, g)?;
            let (mu, lam) = (parse::weight(from)?, parse::weight(to)?);
            let target = if *verma {
                translate::translate_verma(&rs, &g, &mu, &lam, level)?
            } else {
                translate::translate_weyl(&rs, &g, &mu, &lam, level)?
            };
            let source = affine::affine_apply(&rs, &g, &mu, level)?;
            emit(
                ctx,
                format,
                &[vec![
                    ("element", Value::text(g.display(&rs))),
                    ("source", Value::text(source)),
                    ("target", Value::text(target)),
                ]],
            )
        }
        Command::TranslateChar {
            r#type,
            level,
            from,
            to,
            character,
        } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let (mu, lam) = (parse::weight(from)?, parse::weight(to)?);
            let terms = parse::character(&rs, level, character)?;
            let chi = LinkageCharacter::new(&rs, level, mu, terms)?;
            let moved = translate::translate_character(&rs, &chi, &lam)?;
            let keys = sorted_elements(&rs, moved.coeffs().keys().cloned().collect());
            let text: Vec<String> = keys
                .iter()
                .map(|g| format!("{}:{}", element_alias(&rs, level, g), moved.coeffs()[g]))
                .collect();
            let text = text.join(",");
            match format {
                Format::Records => writeln!(ctx.out, "{text} @ base={}", moved.base())?,
                Format::JsonLines => write_record(
                    ctx.out,
                    format,
                    &vec![("char", Value::text(text)), ("base", Value::text(moved.base()))],
                )?,
            }
            Ok(())
        }
        Command::VerifyLemma {
            r#type,
            level,
            from,
            to,
            g,
            bound,
        } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let (mu, lam) = (parse::weight(from)?, parse::weight(to)?);
            let bound: BigRational = parse::rational(bound, "bound")?;
            let elements = match g {
                Some(g) => vec![parse::element(&rs, level, g)?],
                None => translate::orbit_elements(&rs, &mu, level, &bound)?,
            };
            let mut failures = 0;
            let mut records = Vec::new();
            for g in &elements {
                let holds = translate::verify_weight_geometry(&rs, &lam, &mu, g, level, &bound)?;
                let solutions = translate::weight_geometry_solutions(&rs, &lam, &mu, g, level)?.len();
                failures += usize::from(!holds);
                records.push(vec![
                    ("element", Value::text(g.display(&rs))),
                    ("weight", Value::text(affine::affine_apply(&rs, g, &mu, level)?)),
                    ("holds", Value::Bool(holds)),
                    ("solutions", Value::int(solutions)),
                ]);
            }
            emit(ctx, format, &records)?;
            if failures > 0 {
                return Err(Error::Inconsistency(format!("weight geometry fails for {failures} element(s)")).into());
            }
            Ok(())
        }
        Command::Admissible { r#type, level } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let records: Vec<Record> = annihilator::admissible_list(&rs, level)
                .into_iter()
                .map(|w| vec![("lambda", Value::text(w))])
                .collect();
            emit(ctx, format, &records)
        }
        Command::Generator { r#type, level } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let g = annihilator::singular_generator_label(&rs, level)?;
            let singular = affine::affine_apply(&rs, &g, &Weight::zero(rs.rank()), level)?;
            emit(
                ctx,
                format,
                &[vec![("element", Value::text(g.display(&rs))), ("singular", Value::text(singular))]],
            )
        }
        Command::Transport {
            r#type,
            level,
            to,
            labels,
        } => {
            let rs = parse::root_system(r#type)?;
            let level = required_level(&rs, level, ctx)?;
            let lam = parse::weight(to)?;
            let gens = parse::element_list(&rs, level, labels)?;
            let labels = SubmoduleLabels::new(&rs, Weight::zero(rs.rank()), level, gens)?;
            let moved = annihilator::transport(&rs, &labels, &lam)?;
            let mut records = Vec::new();
            for g in sorted_elements(&rs, moved.generators().iter().cloned().collect()) {
                let singular = affine::affine_apply(&rs, &g, &lam, level)?;
                records.push(vec![("element", Value::text(g.display(&rs))), ("singular", Value::text(singular))]);
            }
            emit(ctx, format, &records)
        }
    }
}
