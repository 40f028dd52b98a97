use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use finegrad::catalog::{load_catalog, parse_catalog, Catalog};
use finegrad::displayed::form_subalgebra;
use finegrad::gradings::{product_table, universal_group_of, Product};
use finegrad::maps::AutKind;
use finegrad::realforms::real_form;
use finegrad::report::{verify, Scope};

#[derive(Parser)]
#[command(name = "finegrad", version, about = "Exact verification of fine gradings of sl(4,C), sp(4,C), o(4,C) and their real forms")]
struct Cli {
    /// Catalog file to use instead of the bundled one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and print a report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
        /// Grading (scope grading) or real form (scope realform).
        #[arg(long)]
        name: Option<String>,
        /// Restrict scope realform to one grading.
        #[arg(long)]
        grading: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print a catalog object.
    Show {
        #[arg(value_enum)]
        kind: ShowKind,
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Grading,
    Realform,
    Displayed,
    Realparts,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShowKind {
    Grading,
    Madgroup,
    Realform,
}

enum Failure {
    Usage(String),
    Io(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("i/o error: {m}");
            ExitCode::from(2)
        }
    }
}

fn catalog(path: Option<&PathBuf>) -> Result<&'static Catalog, Failure> {
    match path {
        None => load_catalog().map_err(|e| Failure::Usage(e.to_string())),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            let cat = parse_catalog(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Box::leak(Box::new(cat)))
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let cat = catalog(cli.catalog.as_ref())?;
    let usage = |e: finegrad::error::Error| Failure::Usage(e.to_string());
    match cli.command {
        Command::Verify { scope, name, grading, format } => {
            let scope = match scope {
                ScopeArg::All => Scope::All,
                ScopeArg::Grading => Scope::Grading(name),
                ScopeArg::Realform => Scope::RealForm { name, grading },
                ScopeArg::Displayed => Scope::Displayed,
                ScopeArg::Realparts => Scope::RealParts,
                ScopeArg::Count => Scope::Count,
            };
            let report = verify(cat, &scope).map_err(usage)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Md => print!("{}", report.to_markdown()),
            }
            Ok(report.passed())
        }
        Command::Show { kind, name } => {
            let text = match kind {
                ShowKind::Grading => show_grading(cat, &name),
                ShowKind::Madgroup => show_madgroup(cat, &name),
                ShowKind::Realform => show_realform(cat, &name),
            }
            .map_err(usage)?;
            print!("{text}");
            Ok(true)
        }
    }
}

fn indent(m: &impl std::fmt::Display) -> String {
    m.to_string().lines().map(|l| format!("    {l}\n")).collect()
}

fn show_grading(cat: &Catalog, name: &str) -> finegrad::error::Result<String> {
    let spec = cat.grading(name)?;
    let g = spec.grading();
    let mut out = format!("grading {} (MAD-group {}, {} parts)\n", spec.name, spec.mad, spec.parts.len());
    for (k, p) in spec.parts.iter().enumerate() {
        out.push_str(&format!("part L{} = {}\n", k + 1, p.labels.join(" + ")));
        for (label, m) in p.labels.iter().zip(&p.basis) {
            out.push_str(&format!("  {label} =\n{}", indent(m)));
        }
    }
    let table = product_table(&g)?;
    out.push_str("products\n");
    for (&(j, k), p) in &table.entries {
        if let Product::Into(t) = p {
            out.push_str(&format!("  [L{}, L{}] in L{}\n", j + 1, k + 1, t + 1));
        }
    }
    let u = universal_group_of(&g, &table);
    out.push_str(&format!("universal group {}\n", u.group));
    Ok(out)
}

fn show_madgroup(cat: &Catalog, name: &str) -> finegrad::error::Result<String> {
    let m = cat.madgroup(name)?;
    let gens = m.generators();
    let inner = gens.iter().filter(|h| h.kind() == AutKind::Inner).count();
    let mut out = format!(
        "MAD-group {} ({} inner + {} outer generators, {})\n",
        m.name,
        inner,
        gens.len() - inner,
        if m.finite { "finite" } else { "parametric" }
    );
    for h in &gens {
        let kind = if h.kind() == AutKind::Inner { "inner" } else { "outer" };
        out.push_str(&format!("{kind}\n{}", indent(h.matrix())));
    }
    Ok(out)
}

fn show_realform(cat: &Catalog, name: &str) -> finegrad::error::Result<String> {
    let spec = cat.realform(name)?;
    let rf = real_form(cat, name)?;
    let mut out = format!("real form {} (dimension {})\n", spec.name, rf.dim());
    if let Some(k) = &spec.k {
        out.push_str(&format!(
            "form {} (subalgebra dimension {})\n{}",
            spec.k_name.as_deref().unwrap_or("K"),
            form_subalgebra(k).dim(),
            indent(k)
        ));
    }
    out.push_str(&format!("antiautomorphism {} {:?}\n{}", spec.reps[0], spec.antiaut.kind(), indent(spec.antiaut.matrix())));
    out.push_str(&format!("Killing signature {}\n", rf.killing_signature()?));
    if spec.reps.len() > 1 {
        out.push_str(&format!("other representations {}\n", spec.reps[1..].join(", ")));
    }
    Ok(out)
}
