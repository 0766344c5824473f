//! The `ttg` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on malformed input or an unsupported request.

use std::fmt::{Display, Write as _};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dimfn::{self, DimensionKind};
use crate::ltg::{self, FiltrationOptions, SupportDatum};
use crate::space::{Space, SubsetHandle};
use crate::stone::{self, BooleanPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "ttg",
    version,
    about = "Spectral spaces, dimension functions and local-to-global filtrations"
)]
pub struct Command {
    #[command(subcommand)]
    pub action: Action,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Krull,
    Cbrank,
}

impl From<KindArg> for DimensionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Krull => DimensionKind::Krull,
            KindArg::Cbrank => DimensionKind::CbRank,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StoneAction {
    Spec,
    SemiArtinian,
    Roundtrip,
    Support,
    Sigma,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Action {
    /// Predicate suite: constructibility, visibility, ranks.
    Check { space: PathBuf },
    /// Dimension function and axiom report.
    Dim {
        /// Defaults to krull on finite spaces and cbrank otherwise.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        space: PathBuf,
    },
    /// Compatibility of the dimension function with its slices.
    Compat {
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        space: PathBuf,
    },
    /// Test one subset, or list all Thomason subsets of a finite space.
    Thomason {
        #[arg(long)]
        subset: Option<String>,
        space: PathBuf,
    },
    /// Visibility witnesses; all points of a finite space by default.
    Visible {
        #[arg(long)]
        point: Option<String>,
        space: PathBuf,
    },
    /// Filtration trace of a support.
    Ltg {
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Subset literal or `all`.
        #[arg(long, default_value = "all")]
        supp: String,
        /// Omit limit stages.
        #[arg(long)]
        compact: bool,
        space: PathBuf,
    },
    /// Boolean presentations: `fields:<k>`, `interval:<ordinal>`, `atomless`.
    Stone {
        #[arg(value_enum)]
        action: StoneAction,
        presentation: String,
        /// Graded object file (for `support` and `sigma`).
        #[arg(long)]
        objects: Option<PathBuf>,
    },
}

/// Exit code and rendered output of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn pass(output: String) -> Self {
        Outcome { code: 0, output }
    }

    fn verdict(ok: bool, output: String) -> Self {
        Outcome {
            code: if ok { 0 } else { 1 },
            output,
        }
    }
}

/// A failure that ends the command: `error: <Name>: ...`.
struct Failure {
    code: i32,
    message: String,
}

// errors that report a failed mathematical check rather than bad input
const MATHEMATICAL: &[&str] = &[
    "CompatibilityViolation",
    "ZeroStage",
    "RankMismatch",
    "WitnessDependence",
];

macro_rules! impl_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                let code = if MATHEMATICAL.contains(&e.name()) { 1 } else { 2 };
                Failure { code, message: e.to_string() }
            }
        }
    )*};
}

impl_failure!(
    crate::space::SpaceError,
    dimfn::DimError,
    ltg::LtgError,
    stone::StoneError
);

fn input_error(message: impl Display) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Command::try_parse_from(argv)
}

pub fn execute(command: &Command) -> Outcome {
    match run(&command.action) {
        Ok(outcome) => outcome,
        Err(f) => Outcome {
            code: f.code,
            output: format!("error: {}\n", f.message),
        },
    }
}

/// Parses `argv`, executes, and returns the exit code and full output
/// (usage errors included).
pub fn run_argv<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(c) => execute(&c),
        Err(e) => Outcome {
            code: if e.use_stderr() { 2 } else { 0 },
            output: e.render().to_string(),
        },
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("Io: {}: {e}", path.display())))
}

fn load_space(path: &PathBuf) -> Result<Space, Failure> {
    Ok(Space::from_text(&read(path)?)?)
}

fn default_kind(kind: Option<KindArg>, space: &Space) -> DimensionKind {
    match (kind, space) {
        (Some(k), _) => k.into(),
        (None, Space::Finite(_)) => DimensionKind::Krull,
        (None, _) => DimensionKind::CbRank,
    }
}

fn run(action: &Action) -> Result<Outcome, Failure> {
    match action {
        Action::Check { space } => check(&load_space(space)?),
        Action::Dim { kind, space } => {
            let space = load_space(space)?;
            let assignment = default_kind(*kind, &space).compute(&space)?;
            let report = dimfn::validate(&assignment);
            let mut out = assignment.render();
            out.push_str(&report.render());
            Ok(Outcome::verdict(report.passes(), out))
        }
        Action::Compat { kind, space } => {
            let space = load_space(space)?;
            let report = dimfn::check_compatibility(&space, default_kind(*kind, &space))?;
            Ok(Outcome::verdict(report.passes(), report.render(&space)))
        }
        Action::Thomason { subset, space } => {
            let space = load_space(space)?;
            match subset {
                Some(lit) => {
                    let s = space.parse_subset(lit)?;
                    let yes = space.is_thomason(&s)?;
                    Ok(Outcome::verdict(
                        yes,
                        format!("thomason {} {}\n", space.format_subset(&s), yes_no(yes)),
                    ))
                }
                None => {
                    let Space::Finite(f) = &space else {
                        return Err(input_error(
                            "Unsupported: enumeration needs a finite space; pass --subset",
                        ));
                    };
                    let ideals = ltg::thomason_ideals(f)?;
                    let mut out = String::new();
                    for s in &ideals {
                        let _ = writeln!(out, "{}", space.format_subset(s));
                    }
                    let _ = writeln!(out, "count {}", ideals.len());
                    Ok(Outcome::pass(out))
                }
            }
        }
        Action::Visible { point, space } => {
            let space = load_space(space)?;
            let points = match point {
                Some(p) => vec![space.parse_point(p)?],
                None => space
                    .finite_points()
                    .ok_or_else(|| input_error("Unsupported: infinite space; pass --point"))?,
            };
            let mut out = String::new();
            for x in &points {
                let w = space.visibility_witness(x)?;
                let _ = writeln!(
                    out,
                    "visible {} outer={} inner={}",
                    space.format_point(x),
                    space.format_subset(&w.outer),
                    space.format_subset(&w.inner)
                );
            }
            Ok(Outcome::pass(sort_lines(out)))
        }
        Action::Ltg {
            kind,
            supp,
            compact,
            space,
        } => {
            let space = load_space(space)?;
            let supp = space.parse_subset(supp)?;
            let kind = default_kind(*kind, &space);
            let datum = SupportDatum::new(space.clone(), supp)?;
            let trace = ltg::filtration(&datum, kind, FiltrationOptions { compact: *compact })?;
            Ok(Outcome::verdict(trace.terminal, trace.render(&space)))
        }
        Action::Stone {
            action,
            presentation,
            objects,
        } => stone_command(*action, presentation, objects.as_ref()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// finite point names sort by name, matching `format_subset`
fn sort_lines(text: String) -> String {
    let mut lines: Vec<&str> = text.lines().collect();
    lines.sort();
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn check(space: &Space) -> Result<Outcome, Failure> {
    let mut out = String::new();
    let _ = writeln!(out, "kind {}", space.kind_name());
    let _ = writeln!(out, "constructible {}", yes_no(space.constructible_check()));
    let mut ok = true;
    if let Some(points) = space.finite_points() {
        let _ = writeln!(out, "points {}", points.len());
        let invisible: Vec<String> = points
            .iter()
            .filter(|x| space.visibility_witness(x).is_err())
            .map(|x| space.format_point(x))
            .collect();
        ok &= invisible.is_empty();
        if invisible.is_empty() {
            let _ = writeln!(out, "visible all");
        } else {
            let _ = writeln!(out, "visible FAIL at {}", invisible.join(","));
        }
    } else if let Space::Ordinal(_) = space {
        let _ = writeln!(out, "points {}", space.format_subset(&space.all()?));
    }
    for kind in [DimensionKind::Krull, DimensionKind::CbRank] {
        match kind.compute(space) {
            Ok(a) => {
                let report = dimfn::validate(&a);
                ok &= report.passes();
                let _ = writeln!(
                    out,
                    "{kind} {} {}",
                    a.space_dim(),
                    if report.passes() { "spectral" } else { "FAIL" }
                );
            }
            Err(e) => {
                ok &= !MATHEMATICAL.contains(&e.name());
                let _ = writeln!(out, "{kind} undefined ({})", e.name());
            }
        }
    }
    Ok(Outcome::verdict(ok, out))
}

fn stone_command(
    action: StoneAction,
    presentation: &str,
    objects: Option<&PathBuf>,
) -> Result<Outcome, Failure> {
    let p: BooleanPresentation = presentation.parse()?;
    let load_objects = || -> Result<Vec<stone::GradedObject>, Failure> {
        let path = objects.ok_or_else(|| input_error("MissingArgument: --objects is required"))?;
        Ok(stone::parse_objects(&read(path)?)?)
    };
    let space = stone::spec_of(&p)?;
    match action {
        StoneAction::Spec => {
            let description = match &space {
                Space::Finite(f) => format!("discrete {} points", f.len()),
                Space::Ordinal(o) => format!("ordinal [0,{}]", o.top()),
                Space::Cantor => "cantor".to_string(),
            };
            Ok(Outcome::pass(format!(
                "spec {description}\nconstructible {}\n",
                yes_no(space.constructible_check())
            )))
        }
        StoneAction::SemiArtinian => {
            let by_tag = stone::is_semi_artinian(&p);
            let by_rank = stone::semi_artinian_by_rank(&p)?;
            if by_tag != by_rank {
                return Ok(Outcome::verdict(
                    false,
                    format!("FAIL presentation says {by_tag}, rank says {by_rank}\n"),
                ));
            }
            let rank = match dimfn::cbrank(&space) {
                Ok(a) => a.space_dim().to_string(),
                Err(e) => format!("undefined ({})", e.name()),
            };
            Ok(Outcome::pass(format!(
                "semi-artinian {}\ncbrank {rank}\n",
                yes_no(by_tag)
            )))
        }
        StoneAction::Roundtrip => {
            let report = stone::roundtrip_check(&p)?;
            Ok(Outcome::verdict(report.passes(), report.render()))
        }
        StoneAction::Support => {
            let mut out = String::new();
            for a in load_objects()? {
                let s = stone::object_support(&p, &a)?;
                let _ = writeln!(out, "support {} = {}", a.name, space.format_subset(&s));
            }
            Ok(Outcome::pass(out))
        }
        StoneAction::Sigma => {
            let s: SubsetHandle = stone::sigma(&p, &load_objects()?)?;
            Ok(Outcome::pass(format!(
                "sigma = {}\n",
                space.format_subset(&s)
            )))
        }
    }
}
