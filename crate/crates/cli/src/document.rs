//! Text format for spaces, topologies, devices, maps, representations and
//! foliations.
//!
//! A file is a sequence of blocks. A block opens with a header line and owns
//! the body lines that follow it:
//!
//! ```text
//! space B3
//! points 1 2 3
//! integral true
//! generator 1 2 3
//!
//! topology T
//! points 1 2 3
//! open 1 2
//!
//! device D
//! points 1 2 3
//! pair | 1 | 2 3 |
//!
//! map f from B3 to B3
//! send 1 -> 2
//!
//! representation r from B3 to B3
//! image 1 -> 1 2
//!
//! foliation z internal B3 external B3
//! ```
//!
//! `#` starts a comment, keywords are case-sensitive, and `|` is always a
//! token of its own. Names are global across every file loaded together and
//! may be referenced before they are defined.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use connective::{
    ConnectivitySpace, Error as CoreError, FiniteTopology, Foliation, GroundSet, Representation,
    SeparationDevice, SetMap, Subset,
};

/// A located problem in an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// The problem is a size limit rather than a malformed input.
    pub size_guard: bool,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.file, self.line, self.column, self.message)
    }
}

impl std::error::Error for Diagnostic {}

/// Kinds of block, in the order they are listed in diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Space,
    Topology,
    Device,
    Map,
    Representation,
    Foliation,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Space => "space",
            Kind::Topology => "topology",
            Kind::Device => "device",
            Kind::Map => "map",
            Kind::Representation => "representation",
            Kind::Foliation => "foliation",
        }
    }

    fn from_keyword(word: &str) -> Option<Kind> {
        Some(match word {
            "space" => Kind::Space,
            "topology" => Kind::Topology,
            "device" => Kind::Device,
            "map" => Kind::Map,
            "representation" => Kind::Representation,
            "foliation" => Kind::Foliation,
            _ => return None,
        })
    }

    fn body_keywords(self) -> &'static [&'static str] {
        match self {
            Kind::Space => &["points", "integral", "generator"],
            Kind::Topology => &["points", "open"],
            Kind::Device => &["points", "pair"],
            Kind::Map => &["send"],
            Kind::Representation => &["image"],
            Kind::Foliation => &[],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Where a block starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub file: String,
    pub line: usize,
}

/// A topology as written. `checked` fails when the opens are not closed
/// under union and intersection.
#[derive(Debug, Clone)]
pub struct TopologyEntry {
    pub ground: Arc<GroundSet>,
    pub opens: Vec<Subset>,
    pub checked: Result<FiniteTopology, String>,
}

#[derive(Debug, Clone)]
pub struct MapEntry {
    pub from: String,
    pub to: String,
    pub map: SetMap,
}

/// A representation as written. `checked` fails when an image is empty or
/// the image of a connected set is not connected.
#[derive(Debug, Clone)]
pub struct RepresentationEntry {
    pub object: String,
    pub space: String,
    pub images: Vec<Subset>,
    pub checked: Result<Representation, String>,
}

#[derive(Debug, Clone)]
pub struct FoliationEntry {
    pub internal: String,
    pub external: String,
    pub foliation: Foliation,
}

#[derive(Debug, Clone)]
pub enum Entry {
    Space(ConnectivitySpace),
    Topology(TopologyEntry),
    Device(SeparationDevice),
    Map(MapEntry),
    Representation(RepresentationEntry),
    Foliation(FoliationEntry),
}

impl Entry {
    pub fn kind(&self) -> Kind {
        match self {
            Entry::Space(_) => Kind::Space,
            Entry::Topology(_) => Kind::Topology,
            Entry::Device(_) => Kind::Device,
            Entry::Map(_) => Kind::Map,
            Entry::Representation(_) => Kind::Representation,
            Entry::Foliation(_) => Kind::Foliation,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Item {
    pub name: String,
    pub origin: Origin,
    pub entry: Entry,
}

/// Every block of a set of files, with references resolved.
#[derive(Debug, Clone, Default)]
pub struct Document {
    items: Vec<Item>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    column: usize,
}

#[derive(Debug)]
struct Line {
    number: usize,
    tokens: Vec<Token>,
    /// Column just past the last character, for "missing token" diagnostics.
    end: usize,
}

#[derive(Debug)]
struct Block<'a> {
    file: &'a str,
    kind: Kind,
    header: Line,
    body: Vec<Line>,
}

fn tokenize(number: usize, text: &str) -> Line {
    let text = text.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut current: Option<Token> = None;
    let mut column = 0;
    for (i, ch) in text.chars().enumerate() {
        column = i + 1;
        if ch.is_whitespace() || ch == '|' {
            if let Some(tok) = current.take() {
                tokens.push(tok);
            }
            if ch == '|' {
                tokens.push(Token {
                    text: "|".into(),
                    column,
                });
            }
        } else {
            current
                .get_or_insert_with(|| Token {
                    text: String::new(),
                    column,
                })
                .text
                .push(ch);
        }
    }
    if let Some(tok) = current {
        tokens.push(tok);
    }
    Line {
        number,
        tokens,
        end: column + 1,
    }
}

struct Ctx<'a> {
    file: &'a str,
}

impl Ctx<'_> {
    fn at(&self, line: usize, column: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            file: self.file.to_owned(),
            line,
            column,
            message: message.into(),
            size_guard: false,
        }
    }

    fn token(&self, line: &Line, tok: &Token, message: impl Into<String>) -> Diagnostic {
        self.at(line.number, tok.column, message)
    }

    fn core(&self, line: usize, column: usize, err: CoreError) -> Diagnostic {
        let mut d = self.at(line, column, err.to_string());
        d.size_guard = err.is_size_guard();
        d
    }
}

fn split_blocks<'a>(file: &'a str, text: &str) -> Result<Vec<Block<'a>>, Diagnostic> {
    let ctx = Ctx { file };
    let mut blocks: Vec<Block<'a>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = tokenize(i + 1, raw);
        let Some(first) = line.tokens.first() else { continue };
        if let Some(kind) = Kind::from_keyword(&first.text) {
            blocks.push(Block {
                file,
                kind,
                header: line,
                body: Vec::new(),
            });
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(ctx.token(&line, first, format!("expected a block header, found `{}`", first.text)));
        };
        if !block.kind.body_keywords().contains(&first.text.as_str()) {
            return Err(ctx.token(
                &line,
                first,
                format!("`{}` is not allowed in a {} block", first.text, block.kind),
            ));
        }
        block.body.push(line);
    }
    Ok(blocks)
}

/// Checks a name or label token.
fn check_word(ctx: &Ctx, line: &Line, tok: &Token, what: &str) -> Result<(), Diagnostic> {
    if tok.text == "|" || tok.text == "->" {
        return Err(ctx.token(line, tok, format!("`{}` cannot be used as a {what}", tok.text)));
    }
    Ok(())
}

/// Header of a block: `KIND NAME` followed by `keyword value` pairs.
fn header_fields<'t>(
    ctx: &Ctx,
    block: &'t Block,
    keywords: &[&str],
) -> Result<(&'t Token, Vec<&'t Token>), Diagnostic> {
    let line = &block.header;
    let tokens = &line.tokens;
    let Some(name) = tokens.get(1) else {
        return Err(ctx.at(line.number, line.end, format!("expected a name after `{}`", block.kind)));
    };
    check_word(ctx, line, name, "name")?;
    let mut values = Vec::new();
    for (k, &keyword) in keywords.iter().enumerate() {
        let at = 2 + 2 * k;
        match tokens.get(at) {
            Some(tok) if tok.text == keyword => {}
            Some(tok) => return Err(ctx.token(line, tok, format!("expected `{keyword}`, found `{}`", tok.text))),
            None => return Err(ctx.at(line.number, line.end, format!("expected `{keyword}`"))),
        }
        match tokens.get(at + 1) {
            Some(tok) => {
                check_word(ctx, line, tok, "name")?;
                values.push(tok);
            }
            None => return Err(ctx.at(line.number, line.end, format!("expected a name after `{keyword}`"))),
        }
    }
    if let Some(extra) = tokens.get(2 + 2 * keywords.len()) {
        return Err(ctx.token(line, extra, format!("unexpected `{}`", extra.text)));
    }
    Ok((name, values))
}

fn single_line<'b>(ctx: &Ctx, block: &'b Block, keyword: &str) -> Result<Option<&'b Line>, Diagnostic> {
    let mut found: Option<&Line> = None;
    for line in block.body.iter().filter(|l| l.tokens[0].text == keyword) {
        if found.is_some() {
            return Err(ctx.token(line, &line.tokens[0], format!("second `{keyword}` line")));
        }
        found = Some(line);
    }
    Ok(found)
}

fn ground_of(ctx: &Ctx, block: &Block) -> Result<Arc<GroundSet>, Diagnostic> {
    let Some(line) = single_line(ctx, block, "points")? else {
        return Err(ctx.at(block.header.number, 1, format!("{} block has no `points` line", block.kind)));
    };
    let mut seen: HashMap<&str, ()> = HashMap::new();
    for tok in &line.tokens[1..] {
        check_word(ctx, line, tok, "point label")?;
        if seen.insert(&tok.text, ()).is_some() {
            return Err(ctx.token(line, tok, format!("duplicate point `{}`", tok.text)));
        }
    }
    GroundSet::new(line.tokens[1..].iter().map(|t| t.text.clone()))
        .map(GroundSet::shared)
        .map_err(|e| ctx.core(line.number, line.tokens[0].column, e))
}

fn subset_of(ctx: &Ctx, line: &Line, tokens: &[Token], ground: &GroundSet) -> Result<Subset, Diagnostic> {
    let mut set = Subset::EMPTY;
    for tok in tokens {
        check_word(ctx, line, tok, "point label")?;
        match ground.index_of(&tok.text) {
            Some(i) => set = set.with(i),
            None => return Err(ctx.token(line, tok, format!("unknown point `{}`", tok.text))),
        }
    }
    Ok(set)
}

fn body_lines<'b>(block: &'b Block, keyword: &'b str) -> impl Iterator<Item = &'b Line> + 'b {
    block.body.iter().filter(move |l| l.tokens[0].text == keyword)
}

fn parse_space(ctx: &Ctx, block: &Block) -> Result<ConnectivitySpace, Diagnostic> {
    let ground = ground_of(ctx, block)?;
    let Some(line) = single_line(ctx, block, "integral")? else {
        return Err(ctx.at(block.header.number, 1, "space block has no `integral` line"));
    };
    let integral = match line.tokens.get(1).map(|t| t.text.as_str()) {
        Some("true") => true,
        Some("false") => false,
        Some(other) => {
            return Err(ctx.token(line, &line.tokens[1], format!("expected `true` or `false`, found `{other}`")))
        }
        None => return Err(ctx.at(line.number, line.end, "expected `true` or `false`")),
    };
    if let Some(extra) = line.tokens.get(2) {
        return Err(ctx.token(line, extra, format!("unexpected `{}`", extra.text)));
    }
    let mut generators = Vec::new();
    for line in body_lines(block, "generator") {
        generators.push(subset_of(ctx, line, &line.tokens[1..], &ground)?);
    }
    ConnectivitySpace::generated(ground, generators, integral)
        .map_err(|e| ctx.core(block.header.number, 1, e))
}

fn parse_topology(ctx: &Ctx, block: &Block) -> Result<TopologyEntry, Diagnostic> {
    let ground = ground_of(ctx, block)?;
    let mut opens = Vec::new();
    for line in body_lines(block, "open") {
        opens.push(subset_of(ctx, line, &line.tokens[1..], &ground)?);
    }
    let checked = FiniteTopology::new(ground.clone(), opens.clone()).map_err(|e| e.to_string());
    opens.retain(|&o| !o.is_empty() && o != ground.full());
    connective::subset::normalize_family(&mut opens);
    Ok(TopologyEntry {
        ground,
        opens,
        checked,
    })
}

fn parse_device(ctx: &Ctx, block: &Block) -> Result<SeparationDevice, Diagnostic> {
    let ground = ground_of(ctx, block)?;
    let mut pairs = Vec::new();
    for line in body_lines(block, "pair") {
        let toks = &line.tokens[1..];
        let bars: Vec<usize> = toks.iter().enumerate().filter(|(_, t)| t.text == "|").map(|(i, _)| i).collect();
        if bars.len() != 3 || bars[0] != 0 || bars[2] != toks.len() - 1 {
            return Err(ctx.at(line.number, line.tokens[0].column, "expected `pair | points | points |`"));
        }
        let s = subset_of(ctx, line, &toks[1..bars[1]], &ground)?;
        let t = subset_of(ctx, line, &toks[bars[1] + 1..bars[2]], &ground)?;
        let device = SeparationDevice::new(ground.clone(), [(s, t)]);
        if let Err(e) = device {
            return Err(ctx.core(line.number, line.tokens[0].column, e));
        }
        pairs.push((s, t));
    }
    SeparationDevice::new(ground, pairs).map_err(|e| ctx.core(block.header.number, 1, e))
}

/// `KEYWORD p -> q ...` lines of a map or representation, one per source
/// point, in source order.
fn arrows(
    ctx: &Ctx,
    block: &Block,
    keyword: &str,
    source: &GroundSet,
    target: &GroundSet,
    single: bool,
) -> Result<Vec<Subset>, Diagnostic> {
    let mut images: Vec<Option<Subset>> = vec![None; source.len()];
    for line in body_lines(block, keyword) {
        let toks = &line.tokens;
        let Some(point) = toks.get(1) else {
            return Err(ctx.at(line.number, line.end, "expected a source point"));
        };
        let Some(x) = source.index_of(&point.text) else {
            return Err(ctx.token(line, point, format!("unknown point `{}`", point.text)));
        };
        match toks.get(2) {
            Some(t) if t.text == "->" => {}
            Some(t) => return Err(ctx.token(line, t, format!("expected `->`, found `{}`", t.text))),
            None => return Err(ctx.at(line.number, line.end, "expected `->`")),
        }
        let targets = &toks[3..];
        if single {
            match targets {
                [] => return Err(ctx.at(line.number, line.end, "expected a target point after `->`")),
                [_] => {}
                [_, extra, ..] => return Err(ctx.token(line, extra, format!("unexpected `{}`", extra.text))),
            }
        }
        let image = subset_of(ctx, line, targets, target)?;
        if images[x].replace(image).is_some() {
            return Err(ctx.token(line, point, format!("point `{}` is given twice", point.text)));
        }
    }
    images
        .into_iter()
        .enumerate()
        .map(|(x, img)| {
            img.ok_or_else(|| {
                ctx.at(
                    block.header.number,
                    1,
                    format!("{} does not cover point `{}`", block.kind, source.label(x)),
                )
            })
        })
        .collect()
}

impl Document {
    /// Parses one file.
    pub fn parse(text: &str) -> Result<Document, Diagnostic> {
        Document::parse_sources(&[("<input>", text)])
    }

    /// Parses several files as one namespace. Each source is `(file name,
    /// contents)`.
    pub fn parse_sources<S: AsRef<str>, T: AsRef<str>>(sources: &[(S, T)]) -> Result<Document, Diagnostic> {
        let mut blocks = Vec::new();
        for (file, text) in sources {
            blocks.extend(split_blocks(file.as_ref(), text.as_ref())?);
        }

        let mut doc = Document::default();
        let mut names: Vec<(usize, &Token)> = Vec::with_capacity(blocks.len());
        for (i, block) in blocks.iter().enumerate() {
            let ctx = Ctx { file: block.file };
            let keywords: &[&str] = match block.kind {
                Kind::Map | Kind::Representation => &["from", "to"],
                Kind::Foliation => &["internal", "external"],
                _ => &[],
            };
            let (name, _) = header_fields(&ctx, block, keywords)?;
            if let Some(&(j, _)) = names.iter().find(|(_, n)| n.text == name.text) {
                let first = &blocks[j];
                return Err(ctx.token(
                    &block.header,
                    name,
                    format!(
                        "duplicate name `{}` (first defined at {}:{})",
                        name.text, first.file, first.header.number
                    ),
                ));
            }
            names.push((i, name));
        }

        // Blocks with their own points first, so references can resolve in
        // any order.
        let mut entries: Vec<Option<Entry>> = vec![None; blocks.len()];
        for (i, block) in blocks.iter().enumerate() {
            let ctx = Ctx { file: block.file };
            entries[i] = match block.kind {
                Kind::Space => Some(Entry::Space(parse_space(&ctx, block)?)),
                Kind::Topology => Some(Entry::Topology(parse_topology(&ctx, block)?)),
                Kind::Device => Some(Entry::Device(parse_device(&ctx, block)?)),
                _ => None,
            };
        }
        let kinds: HashMap<&str, Kind> = names
            .iter()
            .map(|&(j, n)| (n.text.as_str(), blocks[j].kind))
            .collect();
        let spaces: HashMap<&str, ConnectivitySpace> = names
            .iter()
            .filter_map(|&(j, n)| match &entries[j] {
                Some(Entry::Space(s)) => Some((n.text.as_str(), s.clone())),
                _ => None,
            })
            .collect();
        let space_named = |ctx: &Ctx, line: &Line, tok: &Token| -> Result<ConnectivitySpace, Diagnostic> {
            match (spaces.get(tok.text.as_str()), kinds.get(tok.text.as_str())) {
                (Some(s), _) => Ok(s.clone()),
                (None, Some(kind)) => Err(ctx.token(line, tok, format!("`{}` is a {kind}, not a space", tok.text))),
                (None, None) => Err(ctx.token(line, tok, format!("unresolved reference: no space named `{}`", tok.text))),
            }
        };
        let mut resolved: Vec<Option<Entry>> = vec![None; blocks.len()];
        for (i, block) in blocks.iter().enumerate() {
            let ctx = Ctx { file: block.file };
            let header = &block.header;
            let entry = match block.kind {
                Kind::Map => {
                    let (_, refs) = header_fields(&ctx, block, &["from", "to"])?;
                    let from = space_named(&ctx, header, refs[0])?;
                    let to = space_named(&ctx, header, refs[1])?;
                    let images = arrows(&ctx, block, "send", from.ground(), to.ground(), true)?;
                    let images = images.iter().map(|s| s.first().expect("single target")).collect();
                    let map = SetMap::new(from.ground().clone(), to.ground().clone(), images)
                        .map_err(|e| ctx.core(header.number, 1, e))?;
                    Entry::Map(MapEntry {
                        from: refs[0].text.clone(),
                        to: refs[1].text.clone(),
                        map,
                    })
                }
                Kind::Representation => {
                    let (_, refs) = header_fields(&ctx, block, &["from", "to"])?;
                    let object = space_named(&ctx, header, refs[0])?;
                    let space = space_named(&ctx, header, refs[1])?;
                    let images = arrows(&ctx, block, "image", object.ground(), space.ground(), false)?;
                    let checked = Representation::new(object, space, images.clone()).map_err(|e| e.to_string());
                    Entry::Representation(RepresentationEntry {
                        object: refs[0].text.clone(),
                        space: refs[1].text.clone(),
                        images,
                        checked,
                    })
                }
                Kind::Foliation => {
                    let (_, refs) = header_fields(&ctx, block, &["internal", "external"])?;
                    let internal = space_named(&ctx, header, refs[0])?;
                    let external = space_named(&ctx, header, refs[1])?;
                    let external = reorder_points(&external, internal.ground()).ok_or_else(|| {
                        ctx.token(
                            header,
                            refs[1],
                            format!("`{}` and `{}` have different points", refs[0].text, refs[1].text),
                        )
                    })?;
                    let foliation = Foliation::new(internal, external).map_err(|e| ctx.core(header.number, 1, e))?;
                    Entry::Foliation(FoliationEntry {
                        internal: refs[0].text.clone(),
                        external: refs[1].text.clone(),
                        foliation,
                    })
                }
                _ => entries[i].take().expect("parsed in the first pass"),
            };
            resolved[i] = Some(entry);
        }

        for (i, (block, entry)) in blocks.iter().zip(resolved).enumerate() {
            let name = names[i].1.text.clone();
            doc.index.insert(name.clone(), i);
            doc.items.push(Item {
                name,
                origin: Origin {
                    file: block.file.to_owned(),
                    line: block.header.number,
                },
                entry: entry.expect("every block resolved"),
            });
        }
        Ok(doc)
    }

    /// Checks the invariants that parsing records instead of enforcing:
    /// topologies closed under union and intersection, valid
    /// representations. Items of the kinds in `skip` are not checked.
    pub fn validate(&self, skip: &[Kind]) -> Result<(), Diagnostic> {
        for item in &self.items {
            if skip.contains(&item.entry.kind()) {
                continue;
            }
            let problem = match &item.entry {
                Entry::Topology(t) => t.checked.as_ref().err().map(|e| {
                    format!("topology `{}`: {e} (see `close-topology`)", item.name)
                }),
                Entry::Representation(r) => r
                    .checked
                    .as_ref()
                    .err()
                    .map(|e| format!("representation `{}`: {e}", item.name)),
                _ => None,
            };
            if let Some(message) = problem {
                return Err(Diagnostic {
                    file: item.origin.file.clone(),
                    line: item.origin.line,
                    column: 1,
                    message,
                    size_guard: false,
                });
            }
        }
        Ok(())
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.index.get(name).map(|&i| &self.items[i])
    }

    /// First item of a kind, in load order.
    pub fn first_of(&self, kind: Kind) -> Option<&Item> {
        self.items.iter().find(|i| i.entry.kind() == kind)
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(move |i| i.entry.kind() == kind)
    }

    /// Canonical text of every block, in load order.
    pub fn render(&self) -> String {
        let blocks: Vec<String> = self
            .items
            .iter()
            .map(|item| match &item.entry {
                Entry::Space(s) => render_space(&item.name, s),
                Entry::Topology(t) => render_topology(&item.name, &t.ground, &t.opens),
                Entry::Device(d) => render_device(&item.name, d),
                Entry::Map(m) => render_map(&item.name, &m.from, &m.to, &m.map),
                Entry::Representation(r) => {
                    let object = self.space_ground(&r.object);
                    let space = self.space_ground(&r.space);
                    render_images(&item.name, &r.object, &r.space, &object, &space, &r.images)
                }
                Entry::Foliation(f) => render_foliation(&item.name, &f.internal, &f.external),
            })
            .collect();
        blocks.join("\n")
    }

    fn space_ground(&self, name: &str) -> Arc<GroundSet> {
        match self.get(name).map(|i| &i.entry) {
            Some(Entry::Space(s)) => s.ground().clone(),
            _ => unreachable!("references resolve at parse time"),
        }
    }
}

/// `space` with its points listed in the order of `ground`, if both carry
/// the same labels.
pub fn reorder_points(space: &ConnectivitySpace, ground: &Arc<GroundSet>) -> Option<ConnectivitySpace> {
    if space.ground() == ground {
        return Some(space.clone());
    }
    if space.len() != ground.len() {
        return None;
    }
    let position: Vec<usize> = space
        .ground()
        .labels()
        .iter()
        .map(|l| ground.index_of(l))
        .collect::<Option<_>>()?;
    let move_set = |s: Subset| s.iter().map(|i| position[i]).collect::<Subset>();
    let generators: Vec<Subset> = space.generators().ok()?.iter().map(|&g| move_set(g)).collect();
    ConnectivitySpace::generated(ground.clone(), generators, space.is_integral()).ok()
}

fn labels(ground: &GroundSet, set: Subset) -> String {
    ground.labels_of(set).join(" ")
}

fn line(out: &mut String, keyword: &str, rest: &str) {
    out.push_str(keyword);
    if !rest.is_empty() {
        out.push(' ');
        out.push_str(rest);
    }
    out.push('\n');
}

/// Canonical space block. Delegated spaces are listed by their irreducible
/// generators, which requires at most 16 points.
pub fn render_space(name: &str, space: &ConnectivitySpace) -> String {
    let g = space.ground();
    let mut out = String::new();
    line(&mut out, "space", name);
    line(&mut out, "points", &g.labels().join(" "));
    line(&mut out, "integral", if space.is_integral() { "true" } else { "false" });
    let generators = space.generators().expect("renderable spaces are materializable");
    for &gen in generators.iter() {
        line(&mut out, "generator", &labels(g, gen));
    }
    out
}

/// Canonical topology block; `∅` and the whole carrier stay implicit.
pub fn render_topology(name: &str, ground: &GroundSet, opens: &[Subset]) -> String {
    let mut out = String::new();
    line(&mut out, "topology", name);
    line(&mut out, "points", &ground.labels().join(" "));
    let mut opens: Vec<Subset> = opens
        .iter()
        .copied()
        .filter(|&o| !o.is_empty() && o != ground.full())
        .collect();
    connective::subset::normalize_family(&mut opens);
    for o in opens {
        line(&mut out, "open", &labels(ground, o));
    }
    out
}

pub fn render_device(name: &str, device: &SeparationDevice) -> String {
    let g = device.ground();
    let mut out = String::new();
    line(&mut out, "device", name);
    line(&mut out, "points", &g.labels().join(" "));
    for &(s, t) in device.pairs() {
        line(&mut out, "pair", &format!("| {} | {} |", labels(g, s), labels(g, t)));
    }
    out
}

pub fn render_map(name: &str, from: &str, to: &str, map: &SetMap) -> String {
    let mut out = String::new();
    line(&mut out, "map", &format!("{name} from {from} to {to}"));
    for x in 0..map.source().len() {
        line(
            &mut out,
            "send",
            &format!("{} -> {}", map.source().label(x), map.target().label(map.apply(x))),
        );
    }
    out
}

pub fn render_representation(name: &str, object: &str, space: &str, rep: &Representation) -> String {
    render_images(
        name,
        object,
        space,
        rep.object().ground(),
        rep.space().ground(),
        rep.images(),
    )
}

fn render_images(
    name: &str,
    object: &str,
    space: &str,
    object_ground: &GroundSet,
    space_ground: &GroundSet,
    images: &[Subset],
) -> String {
    let mut out = String::new();
    line(&mut out, "representation", &format!("{name} from {object} to {space}"));
    for (x, &img) in images.iter().enumerate() {
        let rest = format!("{} -> {}", object_ground.label(x), labels(space_ground, img));
        line(&mut out, "image", rest.trim_end());
    }
    out
}

pub fn render_foliation(name: &str, internal: &str, external: &str) -> String {
    let mut out = String::new();
    line(&mut out, "foliation", &format!("{name} internal {internal} external {external}"));
    out
}
