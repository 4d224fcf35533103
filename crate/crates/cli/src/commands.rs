//! Command dispatch.
//!
//! Every command reads one or more files into a single [`Document`], picks
//! the objects it needs (by `--name`-style options, or the first block of
//! the right kind), and produces deterministic text. Commands that build new
//! objects print them as blocks that parse back, together with the spaces
//! they reference.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error, 3 size
//! guard, 4 divergence between the fast path and the oracle.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use connective::oracle;
use connective::{
    canonical_representation, check_adjunction, connectivity_order, device_of_structure,
    foliation_order, irreducibles, kleisli_compose, orbit_device, phi, r_down, u_t, v_t,
    ConnectivitySpace, Error as CoreError, FiniteTopology, Foliation, FunctorialStructure,
    PermutationGroup, Representation, SeparationDevice, SetMap, Subset,
};

use crate::document::{
    render_device, render_foliation, render_representation, render_space, render_topology,
    reorder_points, Diagnostic, Document, Entry, Item, Kind,
};

pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;
pub const EXIT_DIVERGENCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "connective", version, about = "Finite connectivity spaces")]
pub struct Cli {
    /// Recompute the answer with the brute-force oracle where one exists and
    /// exit with status 4 if the two disagree.
    #[arg(long, global = true)]
    pub oracle: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Inputs {
    /// Input files, read as one namespace.
    #[arg(required = true, value_name = "FILE")]
    pub files: Vec<PathBuf>,
}

/// Functorial structure codes: `d` desintegrated, `k` identity, `g` coarse.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gamma {
    D,
    K,
    G,
}

impl From<Gamma> for FunctorialStructure {
    fn from(g: Gamma) -> Self {
        match g {
            Gamma::D => FunctorialStructure::Desintegrated,
            Gamma::K => FunctorialStructure::Identity,
            Gamma::G => FunctorialStructure::Coarse,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Whether a set of points is connected.
    IsConnected {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, num_args = 0.., required = true, value_name = "POINT")]
        set: Vec<String>,
    },
    /// Connected components of a set (default: every point).
    Components {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, num_args = 0.., value_name = "POINT")]
        set: Option<Vec<String>>,
    },
    /// The subspace on a set of points.
    Induced {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, num_args = 0.., required = true, value_name = "POINT")]
        set: Vec<String>,
        /// Name of the printed space.
        #[arg(long = "as")]
        name: Option<String>,
    },
    /// EQUAL, FINER, COARSER or INCOMPARABLE.
    Compare {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
    },
    /// Classical connectedness of a topology.
    #[command(name = "u-t")]
    UT {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        topology: Option<String>,
        #[arg(long, num_args = 0.., value_name = "POINT")]
        set: Option<Vec<String>>,
    },
    /// Connectedness of a topology by disjoint open pairs.
    #[command(name = "v-t")]
    VT {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        topology: Option<String>,
        #[arg(long, num_args = 0.., value_name = "POINT")]
        set: Option<Vec<String>>,
    },
    /// Separation device of an integral space.
    ToDevice {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
    },
    /// Space of the sets a device does not separate.
    FromDevice {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        device: Option<String>,
        #[arg(long, num_args = 0.., value_name = "POINT")]
        set: Option<Vec<String>>,
    },
    /// Closure of a device under a permutation group.
    OrbitDevice {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        device: Option<String>,
        /// Group generator in cycle notation, e.g. "(1 2)(3 4)"; repeatable.
        #[arg(long)]
        perm: Vec<String>,
        /// Use the full symmetric group.
        #[arg(long)]
        symmetric: bool,
    },
    /// Whether a representation is valid, with the reason if not.
    ValidateRep {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Whether a representation reflects non-connectedness.
    Clear {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Whether the images of a representation are pairwise disjoint.
    Distinct {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Kleisli composite `outer ⊙ inner`.
    Compose {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long = "as")]
        name: Option<String>,
    },
    /// Clear distinct representation of a space in an integral space.
    CanonicalRep {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
    },
    /// Leaves of a foliation.
    Leaves {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        foliation: Option<String>,
    },
    /// Induced leaf space of a foliation.
    LeafSpace {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        foliation: Option<String>,
    },
    /// Foliation built from a representation.
    Phi {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        rep: Option<String>,
        /// Structure inside images of non-connected points.
        #[arg(long, value_enum, default_value = "k")]
        gamma0: Gamma,
        /// Structure inside images of connected points.
        #[arg(long, value_enum, default_value = "k")]
        gamma1: Gamma,
    },
    /// Representation of a foliation's leaf space by its leaves.
    RDown {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        foliation: Option<String>,
    },
    /// Exhaustive check of the leaf-representation adjunction.
    CheckAdjunction {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        foliation: Option<String>,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Irreducible connected parts.
    Irreducibles {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
    },
    /// Connectivity order.
    Order {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
    },
    /// Connectivity order of a foliation's leaf space.
    FoliationOrder {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        foliation: Option<String>,
    },
    /// Witness that a space's structure is not that of a topology.
    Obstruction {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        space: Option<String>,
    },
    /// Smallest topology containing the listed opens.
    CloseTopology {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Whether a map sends connected sets to connected sets.
    IsMorphism {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        map: Option<String>,
    },
}

impl Command {
    fn inputs(&self) -> &Inputs {
        use Command::*;
        match self {
            IsConnected { inputs, .. }
            | Components { inputs, .. }
            | Induced { inputs, .. }
            | Compare { inputs, .. }
            | UT { inputs, .. }
            | VT { inputs, .. }
            | ToDevice { inputs, .. }
            | FromDevice { inputs, .. }
            | OrbitDevice { inputs, .. }
            | ValidateRep { inputs, .. }
            | Clear { inputs, .. }
            | Distinct { inputs, .. }
            | Compose { inputs, .. }
            | CanonicalRep { inputs, .. }
            | Leaves { inputs, .. }
            | LeafSpace { inputs, .. }
            | Phi { inputs, .. }
            | RDown { inputs, .. }
            | CheckAdjunction { inputs, .. }
            | Irreducibles { inputs, .. }
            | Order { inputs, .. }
            | FoliationOrder { inputs, .. }
            | Obstruction { inputs, .. }
            | CloseTopology { inputs, .. }
            | IsMorphism { inputs, .. } => inputs,
        }
    }

    /// Kinds whose deferred checks the command performs itself.
    fn unchecked_kinds(&self) -> &'static [Kind] {
        match self {
            Command::ValidateRep { .. } => &[Kind::Representation],
            Command::CloseTopology { .. } => &[Kind::Topology],
            _ => &[],
        }
    }
}

/// Exit status and captured output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Fail {
    Usage(String),
    Guard(String),
}

impl From<Diagnostic> for Fail {
    fn from(d: Diagnostic) -> Self {
        if d.size_guard {
            Fail::Guard(d.to_string())
        } else {
            Fail::Usage(d.to_string())
        }
    }
}

impl From<CoreError> for Fail {
    fn from(e: CoreError) -> Self {
        if e.is_size_guard() {
            Fail::Guard(e.to_string())
        } else {
            Fail::Usage(e.to_string())
        }
    }
}

#[derive(Default)]
struct Out {
    stdout: String,
    stderr: String,
    negative: bool,
    diverged: bool,
}

impl Out {
    fn line(&mut self, text: impl AsRef<str>) {
        self.stdout.push_str(text.as_ref());
        self.stdout.push('\n');
    }

    fn verdict(&mut self, value: bool) {
        self.line(if value { "true" } else { "false" });
        self.negative = !value;
    }
}

/// Loads the input files and runs the command.
pub fn run(cli: &Cli) -> Outcome {
    let mut out = Out::default();
    let result = load(&cli.command).and_then(|doc| dispatch(&cli.command, &doc, cli.oracle, &mut out));
    if result.is_err() {
        // no partial answers: an `--oracle` run that hits a guard has
        // already printed the fast result
        out.stdout.clear();
    }
    let code = match result {
        Err(Fail::Usage(message)) => {
            writeln!(out.stderr, "error: {message}").unwrap();
            EXIT_USAGE
        }
        Err(Fail::Guard(message)) => {
            writeln!(out.stderr, "error: {message}").unwrap();
            EXIT_SIZE_GUARD
        }
        Ok(()) if out.diverged => EXIT_DIVERGENCE,
        Ok(()) if out.negative => EXIT_NEGATIVE,
        Ok(()) => 0,
    };
    Outcome {
        code,
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

fn load(command: &Command) -> Result<Document, Fail> {
    let mut sources = Vec::new();
    for path in &command.inputs().files {
        let text = fs::read_to_string(path)
            .map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
        sources.push((path.display().to_string(), text));
    }
    let doc = Document::parse_sources(&sources)?;
    doc.validate(command.unchecked_kinds())?;
    Ok(doc)
}

fn pick<'d>(doc: &'d Document, kind: Kind, name: Option<&str>) -> Result<&'d Item, Fail> {
    let item = match name {
        Some(name) => doc
            .get(name)
            .ok_or_else(|| Fail::Usage(format!("no block named `{name}`")))?,
        None => doc
            .first_of(kind)
            .ok_or_else(|| Fail::Usage(format!("no {kind} block in the input")))?,
    };
    if item.entry.kind() != kind {
        return Err(Fail::Usage(format!(
            "`{}` is a {}, not a {kind}",
            item.name,
            item.entry.kind()
        )));
    }
    Ok(item)
}

fn space<'d>(doc: &'d Document, name: Option<&str>) -> Result<(&'d str, &'d ConnectivitySpace), Fail> {
    let item = pick(doc, Kind::Space, name)?;
    match &item.entry {
        Entry::Space(s) => Ok((&item.name, s)),
        _ => unreachable!(),
    }
}

fn topology<'d>(doc: &'d Document, name: Option<&str>) -> Result<(&'d str, &'d FiniteTopology), Fail> {
    let item = pick(doc, Kind::Topology, name)?;
    match &item.entry {
        Entry::Topology(t) => Ok((&item.name, t.checked.as_ref().expect("validated on load"))),
        _ => unreachable!(),
    }
}

fn device<'d>(doc: &'d Document, name: Option<&str>) -> Result<(&'d str, &'d SeparationDevice), Fail> {
    let item = pick(doc, Kind::Device, name)?;
    match &item.entry {
        Entry::Device(d) => Ok((&item.name, d)),
        _ => unreachable!(),
    }
}

/// A representation with the names of its object and space.
struct RepRef<'d> {
    name: &'d str,
    object: &'d str,
    space: &'d str,
    rep: &'d Representation,
}

fn representation<'d>(doc: &'d Document, name: Option<&str>) -> Result<RepRef<'d>, Fail> {
    let item = pick(doc, Kind::Representation, name)?;
    match &item.entry {
        Entry::Representation(r) => Ok(RepRef {
            name: &item.name,
            object: &r.object,
            space: &r.space,
            rep: r.checked.as_ref().expect("validated on load"),
        }),
        _ => unreachable!(),
    }
}

struct FoliationRef<'d> {
    name: &'d str,
    external: &'d str,
    foliation: &'d Foliation,
}

fn foliation<'d>(doc: &'d Document, name: Option<&str>) -> Result<FoliationRef<'d>, Fail> {
    let item = pick(doc, Kind::Foliation, name)?;
    match &item.entry {
        Entry::Foliation(f) => Ok(FoliationRef {
            name: &item.name,
            external: &f.external,
            foliation: &f.foliation,
        }),
        _ => unreachable!(),
    }
}

fn subset(space: &ConnectivitySpace, labels: &[String]) -> Result<Subset, Fail> {
    space
        .ground()
        .subset_of_labels(labels.iter().map(String::as_str))
        .map_err(|e| Fail::Usage(format!("--set: {e}")))
}

fn format_sets(space: &ConnectivitySpace, sets: &[Subset]) -> String {
    sets.iter()
        .map(|&s| format!("{}\n", space.ground().format_subset(s)))
        .collect()
}

/// Compares the fast answer with the oracle's when `--oracle` is given.
fn cross_check(
    out: &mut Out,
    enabled: bool,
    fast: &str,
    oracle: impl FnOnce() -> Result<String, Fail>,
) -> Result<(), Fail> {
    if !enabled {
        return Ok(());
    }
    let slow = oracle()?;
    if slow != fast {
        out.diverged = true;
        writeln!(out.stderr, "oracle divergence:\nfast path:\n{fast}oracle:\n{slow}").unwrap();
    }
    Ok(())
}

fn no_oracle(out: &mut Out, enabled: bool, command: &str) {
    if enabled {
        writeln!(out.stderr, "note: `{command}` has no oracle path; fast result only").unwrap();
    }
}

/// Closure of a document space's own generators, computed by the oracle.
fn oracle_closure(space: &ConnectivitySpace) -> Result<oracle::MaterializedStructure, Fail> {
    Ok(oracle::closure(&space.generators()?, space.is_integral(), space.ground())?)
}

/// Parses `(a b)(c d e)` into a permutation of the device's points.
fn parse_cycles(text: &str, device: &SeparationDevice) -> Result<SetMap, Fail> {
    let ground = device.ground();
    let bad = |why: &str| Fail::Usage(format!("invalid permutation `{text}`: {why}"));
    let mut images: Vec<usize> = (0..ground.len()).collect();
    let mut moved = Subset::EMPTY;
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(bad("expected `(`"));
        };
        let Some(close) = body.find(')') else {
            return Err(bad("missing `)`"));
        };
        let cycle: Vec<usize> = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|l| !l.is_empty())
            .map(|l| ground.index_of(l).ok_or_else(|| bad(&format!("unknown point `{l}`"))))
            .collect::<Result<_, _>>()?;
        for (k, &p) in cycle.iter().enumerate() {
            if moved.contains(p) {
                return Err(bad(&format!("point `{}` appears twice", ground.label(p))));
            }
            moved = moved.with(p);
            images[p] = cycle[(k + 1) % cycle.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(SetMap::new(ground.clone(), ground.clone(), images)?)
}

/// Space blocks for `names`, skipping repeats.
fn render_spaces(doc: &Document, names: &[&str]) -> Result<String, Fail> {
    let mut out = String::new();
    let mut seen: Vec<&str> = Vec::new();
    for &name in names {
        if seen.contains(&name) {
            continue;
        }
        seen.push(name);
        let (_, s) = space(doc, Some(name))?;
        out.push_str(&render_space(name, s));
        out.push('\n');
    }
    Ok(out)
}

/// Checks that `name` is free in the document, so that output blocks never
/// shadow an input block when both are loaded together.
fn fresh(doc: &Document, name: String) -> String {
    let mut name = name;
    while doc.get(&name).is_some() {
        name.push('\'');
    }
    name
}

fn materialized(space: &ConnectivitySpace) -> Result<ConnectivitySpace, Fail> {
    Ok(space.to_generated()?)
}

fn dispatch(command: &Command, doc: &Document, use_oracle: bool, out: &mut Out) -> Result<(), Fail> {
    match command {
        Command::IsConnected { space: name, set, .. } => {
            let (_, x) = space(doc, name.as_deref())?;
            let a = subset(x, set)?;
            let fast = x.is_connected(a)?;
            out.verdict(fast);
            cross_check(out, use_oracle, &format!("{fast}\n"), || {
                let slow = oracle::closure_membership(&x.generators()?, x.is_integral(), x.ground(), a)?;
                Ok(format!("{slow}\n"))
            })?;
        }
        Command::Components { space: name, set, .. } => {
            let (_, x) = space(doc, name.as_deref())?;
            let a = match set {
                Some(labels) => subset(x, labels)?,
                None => x.ground().full(),
            };
            let fast = format_sets(x, &x.components(a)?);
            out.stdout.push_str(&fast);
            cross_check(out, use_oracle, &fast, || Ok(format_sets(x, &oracle_closure(x)?.components(a))))?;
        }
        Command::Induced { space: name, set, name: as_name, .. } => {
            let (base, x) = space(doc, name.as_deref())?;
            let a = subset(x, set)?;
            let sub = materialized(&x.induced(a)?)?;
            let label = as_name.clone().unwrap_or_else(|| fresh(doc, format!("{base}_induced")));
            out.stdout.push_str(&render_space(&label, &sub));
            no_oracle(out, use_oracle, "induced");
        }
        Command::Compare { left, right, .. } => {
            let spaces: Vec<&Item> = doc.of_kind(Kind::Space).collect();
            let left_name = match left {
                Some(n) => n.as_str(),
                None => spaces.first().map(|i| i.name.as_str()).ok_or_else(|| Fail::Usage("no space block in the input".into()))?,
            };
            let right_name = match right {
                Some(n) => n.as_str(),
                None => spaces
                    .iter()
                    .map(|i| i.name.as_str())
                    .find(|&n| n != left_name)
                    .ok_or_else(|| Fail::Usage("compare needs two spaces".into()))?,
            };
            let (_, a) = space(doc, Some(left_name))?;
            let (_, b) = space(doc, Some(right_name))?;
            let b = reorder_points(b, a.ground())
                .ok_or_else(|| Fail::Usage(format!("`{left_name}` and `{right_name}` have different points")))?;
            let fast = a.compare(&b)?;
            out.line(fast.as_str());
            cross_check(out, use_oracle, &format!("{fast}\n"), || {
                let ka = oracle_closure(a)?;
                let kb = oracle_closure(&b)?;
                let a_in_b = ka.kappa().iter().all(|&k| kb.contains(k));
                let b_in_a = kb.kappa().iter().all(|&k| ka.contains(k));
                let relation = match (a_in_b, b_in_a) {
                    (true, true) => "EQUAL",
                    (true, false) => "FINER",
                    (false, true) => "COARSER",
                    (false, false) => "INCOMPARABLE",
                };
                Ok(format!("{relation}\n"))
            })?;
        }
        Command::UT { topology: name, set, .. } | Command::VT { topology: name, set, .. } => {
            let (top_name, top) = topology(doc, name.as_deref())?;
            let (x, suffix) = match command {
                Command::UT { .. } => (u_t(top), "u"),
                _ => (v_t(top), "v"),
            };
            match set {
                Some(labels) => {
                    let a = subset(&x, labels)?;
                    out.verdict(x.is_connected(a)?);
                }
                None => {
                    let label = fresh(doc, format!("{top_name}_{suffix}"));
                    out.stdout.push_str(&render_space(&label, &materialized(&x)?));
                }
            }
            no_oracle(out, use_oracle, if suffix == "u" { "u-t" } else { "v-t" });
        }
        Command::ToDevice { space: name, .. } => {
            let (base, x) = space(doc, name.as_deref())?;
            let d = device_of_structure(x)?;
            out.stdout.push_str(&render_device(&fresh(doc, format!("{base}_device")), &d));
            no_oracle(out, use_oracle, "to-device");
        }
        Command::FromDevice { device: name, set, .. } => {
            let (base, d) = device(doc, name.as_deref())?;
            let x = d.structure();
            match set {
                Some(labels) => {
                    let a = subset(&x, labels)?;
                    out.verdict(x.is_connected(a)?);
                }
                None => {
                    let label = fresh(doc, format!("{base}_space"));
                    out.stdout.push_str(&render_space(&label, &materialized(&x)?));
                }
            }
            no_oracle(out, use_oracle, "from-device");
        }
        Command::OrbitDevice { device: name, perm, symmetric, .. } => {
            let (base, d) = device(doc, name.as_deref())?;
            let group = if *symmetric {
                PermutationGroup::symmetric(d.ground().clone())
            } else {
                let generators = perm.iter().map(|p| parse_cycles(p, d)).collect::<Result<_, _>>()?;
                PermutationGroup::new(d.ground().clone(), generators)?
            };
            let orbit = orbit_device(&group, d)?;
            out.stdout.push_str(&render_device(&fresh(doc, format!("{base}_orbit")), &orbit));
            no_oracle(out, use_oracle, "orbit-device");
        }
        Command::ValidateRep { rep: name, .. } => {
            let item = pick(doc, Kind::Representation, name.as_deref())?;
            let Entry::Representation(r) = &item.entry else { unreachable!() };
            match &r.checked {
                Ok(_) => out.line("valid"),
                Err(reason) => {
                    out.line(format!("invalid: {reason}"));
                    out.negative = true;
                }
            }
        }
        Command::Clear { rep: name, .. } => {
            let r = representation(doc, name.as_deref())?;
            out.verdict(r.rep.is_clear()?);
            no_oracle(out, use_oracle, "clear");
        }
        Command::Distinct { rep: name, .. } => {
            let r = representation(doc, name.as_deref())?;
            out.verdict(r.rep.is_distinct());
        }
        Command::Compose { outer, inner, name: as_name, .. } => {
            let tau = representation(doc, Some(outer))?;
            let rho = representation(doc, Some(inner))?;
            if rho.space != tau.object {
                // same points and structure under two names is still fine
                let (_, a) = space(doc, Some(rho.space))?;
                let (_, b) = space(doc, Some(tau.object))?;
                if a.ground() != b.ground() {
                    return Err(Fail::Usage(format!(
                        "`{}` lands in `{}` but `{}` starts from `{}`",
                        rho.name, rho.space, tau.name, tau.object
                    )));
                }
            }
            let composite = kleisli_compose(tau.rep, rho.rep)?;
            let label = as_name.clone().unwrap_or_else(|| fresh(doc, format!("{}_{}", tau.name, rho.name)));
            out.stdout.push_str(&render_spaces(doc, &[rho.object, tau.space])?);
            out.stdout
                .push_str(&render_representation(&label, rho.object, tau.space, &composite));
        }
        Command::CanonicalRep { space: name, .. } => {
            let (base, x) = space(doc, name.as_deref())?;
            let rep = canonical_representation(x)?;
            let target = fresh(doc, format!("{base}_canonical"));
            out.stdout.push_str(&render_spaces(doc, &[base])?);
            out.stdout.push_str(&render_space(&target, rep.space()));
            out.stdout.push('\n');
            let rep_name = fresh(doc, format!("{base}_canonical_rep"));
            out.stdout.push_str(&render_representation(&rep_name, base, &target, &rep));
        }
        Command::Leaves { foliation: name, .. } => {
            let z = foliation(doc, name.as_deref())?;
            let fast = format_sets(z.foliation.internal(), &z.foliation.leaves()?);
            out.stdout.push_str(&fast);
            cross_check(out, use_oracle, &fast, || {
                let internal = z.foliation.internal();
                let slow = oracle_closure(internal)?.components(internal.ground().full());
                Ok(format_sets(internal, &slow))
            })?;
        }
        Command::LeafSpace { foliation: name, .. } => {
            let z = foliation(doc, name.as_deref())?;
            let leaf_space = z.foliation.induced_leaf_space()?.materialize()?;
            out.stdout
                .push_str(&render_space(&fresh(doc, format!("{}_leaves", z.name)), &leaf_space));
            no_oracle(out, use_oracle, "leaf-space");
        }
        Command::Phi { rep: name, gamma0, gamma1, .. } => {
            let r = representation(doc, name.as_deref())?;
            let z = phi((*gamma0).into(), (*gamma1).into(), r.rep)?;
            let internal = materialized(z.internal())?;
            let internal_name = fresh(doc, format!("{}_phi_internal", r.name));
            out.stdout.push_str(&render_spaces(doc, &[r.space])?);
            out.stdout.push_str(&render_space(&internal_name, &internal));
            out.stdout.push('\n');
            out.stdout.push_str(&render_foliation(
                &fresh(doc, format!("{}_phi", r.name)),
                &internal_name,
                r.space,
            ));
            no_oracle(out, use_oracle, "phi");
        }
        Command::RDown { foliation: name, .. } => {
            let z = foliation(doc, name.as_deref())?;
            let rep = r_down(z.foliation)?;
            let leaves_name = fresh(doc, format!("{}_leaves", z.name));
            let object = materialized(rep.object())?;
            out.stdout.push_str(&render_space(&leaves_name, &object));
            out.stdout.push('\n');
            out.stdout.push_str(&render_spaces(doc, &[z.external])?);
            out.stdout.push_str(&render_representation(
                &fresh(doc, format!("{}_down", z.name)),
                &leaves_name,
                z.external,
                &rep,
            ));
        }
        Command::CheckAdjunction { foliation: fname, rep: rname, .. } => {
            let z = foliation(doc, fname.as_deref())?;
            let r = representation(doc, rname.as_deref())?;
            let report = check_adjunction(z.foliation, r.rep)?;
            out.line(format!("representation morphisms: {}", report.representation_homs));
            out.line(format!("foliation morphisms: {}", report.foliation_homs));
            out.line(format!("projection lands: {}", report.projection_lands));
            out.line(format!("beta determines alpha: {}", report.beta_determines_alpha));
            out.line(format!("unique lift: {}", report.unique_lift));
            out.line(format!("bijection: {}", report.bijection));
            out.line(if report.holds() { "holds" } else { "fails" });
            out.negative = !report.holds();
            for failure in &report.failures {
                writeln!(out.stderr, "{failure}").unwrap();
            }
        }
        Command::Irreducibles { space: name, .. } => {
            let (_, x) = space(doc, name.as_deref())?;
            let fast = format_sets(x, irreducibles(x)?.elements());
            out.stdout.push_str(&fast);
            cross_check(out, use_oracle, &fast, || {
                Ok(format_sets(x, &oracle::irreducibles_by_definition(x)?))
            })?;
        }
        Command::Order { space: name, .. } => {
            let (_, x) = space(doc, name.as_deref())?;
            let fast = connectivity_order(x)?;
            out.line(fast.to_string());
            cross_check(out, use_oracle, &format!("{fast}\n"), || {
                Ok(format!("{}\n", oracle::order_by_definition(x)?))
            })?;
        }
        Command::FoliationOrder { foliation: name, .. } => {
            let z = foliation(doc, name.as_deref())?;
            let fast = foliation_order(z.foliation)?;
            out.line(fast.to_string());
            cross_check(out, use_oracle, &format!("{fast}\n"), || {
                let leaf_space = z.foliation.induced_leaf_space()?.materialize()?;
                Ok(format!("{}\n", oracle::order_by_definition(&leaf_space)?))
            })?;
        }
        Command::Obstruction { space: name, .. } => {
            let (_, x) = space(doc, name.as_deref())?;
            match x.topological_obstruction_witness()? {
                Some(w) => {
                    let g = x.ground();
                    out.line(format!("a {}", g.format_subset(w.a)));
                    out.line(format!("b {}", g.format_subset(w.b)));
                    out.line(format!("point {}", g.label(w.point)));
                }
                None => {
                    out.line("none");
                    out.negative = true;
                }
            }
            no_oracle(out, use_oracle, "obstruction");
        }
        Command::CloseTopology { topology: name, .. } => {
            let item = pick(doc, Kind::Topology, name.as_deref())?;
            let Entry::Topology(t) = &item.entry else { unreachable!() };
            let closed = FiniteTopology::close(t.ground.clone(), t.opens.clone())?;
            out.stdout
                .push_str(&render_topology(&item.name, &t.ground, closed.opens()));
        }
        Command::IsMorphism { map: name, .. } => {
            let item = pick(doc, Kind::Map, name.as_deref())?;
            let Entry::Map(m) = &item.entry else { unreachable!() };
            let (_, x) = space(doc, Some(&m.from))?;
            let (_, y) = space(doc, Some(&m.to))?;
            let fast = connective::is_morphism(&m.map, x, y)?;
            out.verdict(fast);
            cross_check(out, use_oracle, &format!("{fast}\n"), || {
                Ok(format!("{}\n", oracle::is_morphism_by_definition(&m.map, x, y)?))
            })?;
        }
    }
    Ok(())
}
