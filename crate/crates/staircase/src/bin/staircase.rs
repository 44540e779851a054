use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use staircase::json::{from_json, to_json, Json};
use staircase::{
    format_factorization, format_generators, parse_factorization, parse_ideal, render,
    run_selftest, Error, Parsed, RenderFormat, RenderOptions, Result, SelftestConfig,
};
use staircase_core::{
    admit_module, check_convergence, Admitted, BoundaryPath, FactorStream, Factorization,
    LatticePoint, ModuleDescription, MonomialModule, NamedFamily, Rect, StabilizationReport,
};

/// Integral closure, factorization and plotting of monomial ideals in two
/// variables.
///
/// Ideals are written as generator lists ("x^2, x*y, y^2"), factorizations
/// as products of simple ideals ("E[4/3]*E[5/2]^2*x*y"). Inputs may also be
/// JSON documents. An omitted input or "-" reads standard input; "@path"
/// reads a file.
#[derive(Parser)]
#[command(name = "staircase", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Same as --format json.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Integral closure of an ideal or module.
    Close { input: Option<String> },
    /// Factor an integrally closed ideal or module into simple ideals.
    Factor { input: Option<String> },
    /// Generators of a factorization.
    Expand { input: Option<String> },
    /// Product of two ideals or of two factorizations.
    Mul { a: String, b: String },
    /// Picture of the Newton boundary and the generators (ASCII unless --format svg).
    Plot {
        input: Option<String>,
        /// Viewport as "x0..x1,y0..y1".
        #[arg(long, allow_hyphen_values = true)]
        rect: Option<String>,
        /// Plot the integral closure instead of the input generators.
        #[arg(long)]
        closure: bool,
    },
    /// Operations on monomial modules in Z².
    #[command(subcommand)]
    Module(ModuleCommand),
    /// Run the randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: u32,
        #[arg(long, default_value_t = 128)]
        rmax: u32,
        /// Break the closure under test on purpose.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args)]
struct Source {
    /// Named family: triangular or antidiagonal.
    #[arg(long, conflicts_with = "spec")]
    family: Option<String>,
    /// Stream description in JSON ("-" for standard input).
    #[arg(long)]
    spec: Option<String>,
    /// Finite generator list.
    #[arg(conflicts_with_all = ["family", "spec"])]
    input: Option<String>,
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Integral closure.
    Close { input: Option<String> },
    /// Factorization, anchored at the corner of the module.
    Factor { input: Option<String> },
    /// Generators of the partial sum with n factors on each side.
    Approx {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Factors on the left side, when different from --n.
        #[arg(long)]
        left: Option<usize>,
    },
    /// Generators of x^a y^a M intersected with the positive quadrant.
    Truncate {
        #[command(flatten)]
        source: Source,
        /// Generators of the family to take, indices up to this bound.
        #[arg(long)]
        prefix: Option<u64>,
        #[arg(long)]
        a: u64,
    },
    /// Membership picture of the partial sum over a rectangle.
    Window {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Rectangle as "x0..x1,y0..y1".
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
    },
    /// Find where the windows of the partial sums stop changing.
    Converge {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 12)]
        to: u64,
    },
}

enum Output {
    Generators(MonomialModule),
    Factors(Factorization),
    Report(StabilizationReport),
    Picture {
        path: BoundaryPath,
        gens: Vec<LatticePoint>,
        viewport: Option<Rect>,
    },
    Text(String),
}

enum Item {
    Generators(Parsed),
    Factors(Factorization),
}

fn read_input(arg: Option<&str>) -> Result<String> {
    let text = match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(a) if a.starts_with('@') => std::fs::read_to_string(&a[1..])?,
        Some(a) => a.to_string(),
    };
    Ok(text.trim().to_string())
}

fn parse_item(text: &str) -> Result<Item> {
    if text.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text)?;
        return if value.get("factors").is_some() {
            Ok(Item::Factors(Factorization::from_value(&value, "")?))
        } else {
            let m = MonomialModule::from_value(&value, "")?;
            Ok(Item::Generators(
                if m.generators().iter().all(|p| p.in_positive_quadrant()) {
                    Parsed::Ideal(m.to_ideal()?)
                } else {
                    Parsed::Module(m)
                },
            ))
        };
    }
    if staircase::text::looks_like_factorization(text) {
        Ok(Item::Factors(parse_factorization(text)?))
    } else {
        Ok(Item::Generators(parse_ideal(text)?))
    }
}

fn read_item(arg: Option<&str>) -> Result<Item> {
    parse_item(&read_input(arg)?)
}

fn closure(p: Parsed) -> Result<MonomialModule> {
    Ok(match p {
        Parsed::Ideal(i) => i.integral_closure()?.into(),
        Parsed::Module(m) => m.closure()?,
    })
}

fn cmd_close(input: Option<&str>) -> Result<Output> {
    Ok(Output::Generators(match read_item(input)? {
        Item::Generators(p) => closure(p)?,
        Item::Factors(f) => f.expand_module()?,
    }))
}

fn cmd_factor(input: Option<&str>) -> Result<Output> {
    Ok(Output::Factors(match read_item(input)? {
        Item::Generators(p) => p.into_module().factor()?,
        Item::Factors(f) => f,
    }))
}

fn cmd_expand(input: Option<&str>) -> Result<Output> {
    match read_item(input)? {
        Item::Factors(f) => Ok(Output::Generators(f.expand_module()?)),
        // a lone monomial is also a product with no simple factors
        Item::Generators(p) if p.generators().len() == 1 => Ok(Output::Generators(
            Factorization::new(p.generators()[0]).expand_module()?,
        )),
        Item::Generators(_) => Err(Error::Parse {
            position: 0,
            message: "expected a factorization such as E[1/1]^2".into(),
        }),
    }
}

fn cmd_mul(a: &str, b: &str) -> Result<Output> {
    match (read_item(Some(a))?, read_item(Some(b))?) {
        (Item::Factors(f), Item::Factors(g)) => Ok(Output::Factors(f.multiply(&g)?)),
        (Item::Generators(i), Item::Generators(j)) => Ok(Output::Generators(
            i.into_module().multiply(&j.into_module())?,
        )),
        _ => Err(Error::Parse {
            position: 0,
            message: "both operands must be generator lists or both factorizations".into(),
        }),
    }
}

fn parse_range(text: &str, offset: usize) -> Result<(i64, i64)> {
    let bad = || Error::Parse {
        position: offset,
        message: format!("expected a range \"lo..hi\", got \"{text}\""),
    };
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

/// `x0..x1,y0..y1`, also written `[x0..x1]x[y0..y1]`.
fn parse_rect(text: &str) -> Result<Rect> {
    let cleaned = text
        .replace("]x[", ",")
        .replace("]×[", ",")
        .replace(['[', ']'], "");
    let (xs, ys) = cleaned.split_once(',').ok_or_else(|| Error::Parse {
        position: 0,
        message: "expected a rectangle \"x0..x1,y0..y1\"".into(),
    })?;
    let (x0, x1) = parse_range(xs, 0)?;
    let (y0, y1) = parse_range(ys, xs.len() + 1)?;
    Ok(Rect::new(x0, x1, y0, y1)?)
}

fn cmd_plot(input: Option<&str>, rect: Option<&str>, close: bool) -> Result<Output> {
    let module = match read_item(input)? {
        Item::Generators(p) if close => closure(p)?,
        Item::Generators(p) => p.into_module(),
        Item::Factors(f) => f.expand_module()?,
    };
    Ok(Output::Picture {
        path: module.newton_boundary()?,
        gens: module.generators().to_vec(),
        viewport: rect.map(parse_rect).transpose()?,
    })
}

fn family(name: &str) -> Result<NamedFamily> {
    NamedFamily::from_name(name).ok_or_else(|| Error::Parse {
        position: 0,
        message: format!("unknown family \"{name}\"; expected triangular or antidiagonal"),
    })
}

/// The stream behind a module source; finite inputs become finite streams.
fn stream(source: &Source) -> Result<FactorStream> {
    let admitted = if let Some(name) = &source.family {
        admit_module(ModuleDescription::Family(family(name)?))?
    } else if let Some(spec) = &source.spec {
        let text = match spec.as_str() {
            "-" => read_input(None)?,
            path => std::fs::read_to_string(path.strip_prefix('@').unwrap_or(path))?,
        };
        Admitted::Stream(from_json::<FactorStream>(&text)?)
    } else {
        let gens = match read_item(source.input.as_deref())? {
            Item::Generators(p) => p.generators().to_vec(),
            Item::Factors(f) => f.expand_module()?.generators().to_vec(),
        };
        admit_module(ModuleDescription::Finite(gens))?
    };
    Ok(match admitted {
        Admitted::Stream(s) => s,
        Admitted::Finite(m) => staircase_core::factor_stream_of_module(&m)?,
    })
}

fn cmd_module(command: &ModuleCommand) -> Result<Output> {
    match command {
        ModuleCommand::Close { input } => cmd_close(input.as_deref()),
        ModuleCommand::Factor { input } => cmd_factor(input.as_deref()),
        ModuleCommand::Approx { source, n, left } => {
            let s = stream(source)?;
            Ok(Output::Generators(s.partial_sum(left.unwrap_or(*n), *n)?))
        }
        ModuleCommand::Truncate { source, prefix, a } => {
            let module = match (&source.family, prefix) {
                (Some(name), Some(k)) => {
                    MonomialModule::from_generators(&family(name)?.prefix(*k)?)?
                }
                (Some(_), None) => {
                    return Err(Error::Parse {
                        position: 0,
                        message: "--family needs --prefix for truncate".into(),
                    })
                }
                (None, _) if source.spec.is_some() => {
                    return Err(Error::Parse {
                        position: 0,
                        message: "truncate takes --family or a generator list".into(),
                    })
                }
                (None, _) => match read_item(source.input.as_deref())? {
                    Item::Generators(p) => p.into_module(),
                    Item::Factors(f) => f.expand_module()?,
                },
            };
            Ok(Output::Generators(module.quadrant_truncation(*a)?.into()))
        }
        ModuleCommand::Window { source, n, rect } => {
            let s = stream(source)?;
            Ok(Output::Picture {
                path: s.partial_path(*n, *n)?,
                gens: s.partial_sum(*n, *n)?.generators().to_vec(),
                viewport: Some(parse_rect(rect)?),
            })
        }
        ModuleCommand::Converge {
            source,
            rect,
            from,
            to,
        } => {
            let s = stream(source)?;
            Ok(Output::Report(check_convergence(
                &s,
                parse_rect(rect)?,
                *from,
                *to,
            )?))
        }
    }
}

fn cmd_selftest(seed: u64, cases: u32, rmax: u32, inject_fault: bool) -> Result<Output> {
    let report = run_selftest(SelftestConfig {
        seed,
        cases,
        r_max: rmax,
        inject_fault,
    });
    // timings vary between runs, so they stay off standard output
    eprint!("{}", report.timings());
    if let Some(f) = &report.failure {
        print!("{}", report.summary());
        return Err(Error::PropertyViolation {
            property: f.suite,
            counterexample: f.counterexample.clone(),
        });
    }
    Ok(Output::Text(report.summary()))
}

fn report_text(r: &StabilizationReport) -> String {
    let rect = r.rect;
    let mut out = format!(
        "rect [{}..{}]x[{}..{}], n {}..{}\n",
        rect.x_min, rect.x_max, rect.y_min, rect.y_max, r.n_start, r.n_end
    );
    match r.stabilized_at {
        Some(n0) => out.push_str(&format!("stabilized at n = {n0}\n")),
        None => out.push_str("not stabilized\n"),
    }
    for y in (rect.y_min..=rect.y_max).rev() {
        for x in rect.x_min..=rect.x_max {
            out.push(if r.window.get(LatticePoint::new(x, y)) == Some(true) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

fn render_options(viewport: Option<Rect>) -> RenderOptions {
    RenderOptions {
        viewport,
        color: std::env::var("STAIRCASE_COLOR").is_ok_and(|v| v == "1"),
        ..RenderOptions::default()
    }
}

fn unsupported(what: &str) -> Error {
    Error::Parse {
        position: 0,
        message: format!("{what} cannot be written in this format"),
    }
}

fn emit(output: Output, format: Format) -> Result<String> {
    let picture = |module: &MonomialModule, format: RenderFormat| -> Result<String> {
        render(
            &module.newton_boundary()?,
            module.generators(),
            format,
            &render_options(None),
        )
    };
    Ok(match (output, format) {
        (Output::Generators(m), Format::Text) => format_generators(m.generators()) + "\n",
        (Output::Generators(m), Format::Json) => to_json(&m) + "\n",
        (Output::Generators(m), Format::Ascii) => picture(&m, RenderFormat::Ascii)?,
        (Output::Generators(m), Format::Svg) => picture(&m, RenderFormat::Svg)?,
        (Output::Factors(f), Format::Text) => format_factorization(&f) + "\n",
        (Output::Factors(f), Format::Json) => to_json(&f) + "\n",
        (Output::Factors(f), Format::Ascii) => picture(&f.expand_module()?, RenderFormat::Ascii)?,
        (Output::Factors(f), Format::Svg) => picture(&f.expand_module()?, RenderFormat::Svg)?,
        (Output::Report(r), Format::Json) => to_json(&r) + "\n",
        (Output::Report(r), Format::Text | Format::Ascii) => report_text(&r),
        (Output::Report(_), Format::Svg) => return Err(unsupported("a convergence report")),
        (
            Output::Picture {
                path,
                gens,
                viewport,
            },
            Format::Svg,
        ) => render(&path, &gens, RenderFormat::Svg, &render_options(viewport))?,
        (
            Output::Picture {
                path,
                gens,
                viewport,
            },
            Format::Text | Format::Ascii,
        ) => render(&path, &gens, RenderFormat::Ascii, &render_options(viewport))?,
        (Output::Picture { .. }, Format::Json) => return Err(unsupported("a picture")),
        (Output::Text(t), Format::Text) => t,
        (Output::Text(_), _) => return Err(unsupported("this report")),
    })
}

fn run(cli: &Cli) -> Result<String> {
    let format = if cli.json { Format::Json } else { cli.format };
    let output = match &cli.command {
        Command::Close { input } => cmd_close(input.as_deref())?,
        Command::Factor { input } => cmd_factor(input.as_deref())?,
        Command::Expand { input } => cmd_expand(input.as_deref())?,
        Command::Mul { a, b } => cmd_mul(a, b)?,
        Command::Plot {
            input,
            rect,
            closure,
        } => cmd_plot(input.as_deref(), rect.as_deref(), *closure)?,
        Command::Module(m) => cmd_module(m)?,
        Command::Selftest {
            seed,
            cases,
            rmax,
            inject_fault,
        } => cmd_selftest(*seed, *cases, *rmax, *inject_fault)?,
    };
    emit(output, format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Core(staircase_core::Error::NotIntegrallyClosed)) {
                eprintln!("hint: pipe the input through `staircase close` first");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
