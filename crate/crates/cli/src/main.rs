use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use superbrauer::{Error, Result};
use superbrauer_cli::commands::{self, FullnessArgs, Output};
use superbrauer_cli::config::{parse_category, parse_glmn, parse_sigma, RunConfig};

/// Diagram supercategories with tokens: normal forms, incarnations and
/// fullness checks. Expressions compose with `;` bottom to top: `f ; g` is
/// `f` followed by `g`.
#[derive(Parser)]
#[command(name = "superbrauer", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// `key = value` configuration file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// `oriented` or `unoriented`
    #[arg(long, global = true)]
    category: Option<String>,
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// `star` or `id`
    #[arg(long, global = true)]
    involution: Option<String>,
    /// `rational` or `gaussian`
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    sigma: Option<String>,
    /// loop parameter, a rational or Gaussian literal
    #[arg(long, global = true, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, global = true)]
    form: Option<String>,
    /// `--glmn M N` selects the oriented functor for gl(M|N)
    #[arg(long, global = true, num_args = 2, value_names = ["M", "N"])]
    glmn: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an expression as (coefficient, diagram) terms
    Normalize { expr: String },
    /// Number of basis diagrams between two objects
    DimHom {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Image of an expression under the form's functor or the gl(m|n) functor
    Eval { expr: String },
    /// Verify the defining and derived relations for the configured algebra
    CheckRelations {
        /// print a text table instead of JSON
        #[arg(long)]
        table: bool,
    },
    /// Compare the span of diagram images with the equivariant maps
    CheckFullness {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        /// oriented source word (with --glmn)
        #[arg(long)]
        src: Option<String>,
        /// oriented target word (with --glmn)
        #[arg(long)]
        tgt: Option<String>,
        /// include the elapsed time (makes the output vary between runs)
        #[arg(long)]
        timing: bool,
    },
    /// Image under the orientation expansion as a matrix of oriented morphisms
    ExpandOrientations { expr: String },
    /// Closure of an endomorphism to a scalar
    Trace { expr: String },
    /// The catalog of forms and algebras
    ListForms,
}

fn load(g: &Global) -> Result<RunConfig> {
    let base = match &g.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    let flags = RunConfig {
        category: g.category.as_deref().map(parse_category).transpose()?,
        algebra: g.algebra.clone(),
        involution: g.involution.clone(),
        field: g.field.clone(),
        sigma: g.sigma.as_deref().map(parse_sigma).transpose()?,
        d: g.d.as_deref().map(|d| d.parse()).transpose().map_err(|_| Error::Config(format!("--d: invalid scalar `{}`", g.d.as_deref().unwrap())))?,
        form: g.form.clone(),
        glmn: g.glmn.as_ref().map(|v| parse_glmn(&v.join(" "))).transpose()?,
    };
    Ok(base.overlay(flags))
}

fn run(cli: &Cli) -> Result<(Output, bool)> {
    let cfg = load(&cli.global)?;
    let mut table = false;
    let out = match &cli.cmd {
        Cmd::Normalize { expr } => commands::normalize(&cfg, expr)?,
        Cmd::DimHom { x, y } => commands::dim_hom(&cfg, x, y)?,
        Cmd::Eval { expr } => commands::eval(&cfg, expr)?,
        Cmd::CheckRelations { table: t } => {
            table = *t;
            commands::check_relations(&cfg)?
        }
        Cmd::CheckFullness { r, s, src, tgt, timing } => {
            commands::check_fullness(&cfg, FullnessArgs { r: *r, s: *s, src: src.as_deref(), tgt: tgt.as_deref(), timing: *timing })?
        }
        Cmd::ExpandOrientations { expr } => commands::expand_orientations(&cfg, expr)?,
        Cmd::Trace { expr } => commands::trace(&cfg, expr)?,
        Cmd::ListForms => commands::list_forms()?,
    };
    Ok((out, table))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, table)) => {
            if table {
                print!("{}", commands::relations_table(&out));
            } else {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", commands::error_json(&e));
            ExitCode::from(2)
        }
    }
}
