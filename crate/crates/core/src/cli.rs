//! Command-line front end.
//!
//! Every command reads one input: a builtin diagram name, a PD code given
//! literally, a file holding a PD code or a complex (JSON), or `-` for
//! standard input. Output goes to the given writer; the binary maps errors
//! to exit codes with [`exit_code`].

use std::fmt::Display;
use std::io::{Read, Write};
use std::path::Path;

use clap::{Parser, ValueEnum};
use num_bigint::BigUint;

use crate::diagram_io::{builtin_diagram, parse_pd, PdCode, BUILTIN_NAMES};
use crate::dimers_trees::{
    count_matchings_bruteforce, count_matchings_fkt, count_spanning_trees, enumerate_matchings,
    enumerate_spanning_trees, matching_to_tree, tree_to_matching, BRUTEFORCE_CAP, TREE_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::morse::{
    complex_from_map, enumerate_morse, face_poset, hasse_dot, knot_from_complex, matching_to_morse,
    morse_to_json, parse_complex, validate_morse, Complex2,
};
use crate::planar_map::checkerboard;
use crate::tait_overlay::{
    balance, diagram_from_tait_with, overlay, star_candidates, tait_from_pd, BalancedGraph, OverlaidGraph, Sign,
    SignedTaitGraph, StarPair, TaitOptions, TaitPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Echo the canonical PD code.
    Parse,
    /// Emit the universe, Tait graphs, overlaid and balanced graphs.
    Build,
    /// Count perfect matchings of the balanced graph.
    Count,
    /// List perfect matchings.
    Enumerate,
    /// List the Morse functions of the matchings.
    Morse,
    /// Turn a complex file into a PD code.
    KnotFromComplex,
    /// Run the invariant suite.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Enumerate,
    Fkt,
    Bruteforce,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "tait-morse", version, about = "Tait graphs, dimers and discrete Morse functions on the sphere")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Builtin name, PD code, file path, or `-` for stdin.
    #[arg(long, short)]
    pub input: String,
    /// Index into the star candidates (default 0; `check` tries them all).
    #[arg(long)]
    pub star: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Stop after this many matchings or Morse functions
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Fkt)]
    pub method: Method,
    /// Call the other checkerboard class black.
    #[arg(long)]
    pub swap_colors: bool,
    /// Read crossings with the opposite sign convention.
    #[arg(long)]
    pub flip_signs: bool,
}

impl RunConfig {
    fn options(&self) -> TaitOptions {
        TaitOptions { swap_colors: self.swap_colors, flip_signs: self.flip_signs }
    }
}

/// 0 on success, 1 for bad input, 2 for a broken internal invariant.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is_internal() => 2,
        Err(_) => 1,
    }
}

enum Source {
    Diagram(PdCode),
    Complex(Complex2, Vec<Sign>),
}

fn load(input: &str, stdin: &mut dyn Read) -> Result<Source> {
    if BUILTIN_NAMES.contains(&input) {
        return builtin_diagram(input).map(Source::Diagram);
    }
    let text = if input == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else if input.trim_start().starts_with("PD") || input.trim_start().starts_with('{') {
        input.to_string()
    } else if Path::new(input).exists() {
        std::fs::read_to_string(input)?
    } else {
        return Err(Error::Input(format!("`{input}` is neither a builtin name nor a readable file")));
    };
    if text.trim_start().starts_with('{') {
        let (d, signs) = parse_complex(&text)?;
        Ok(Source::Complex(d, signs))
    } else {
        parse_pd(text.trim()).map(Source::Diagram)
    }
}

fn diagram_of(src: &Source) -> Result<PdCode> {
    match src {
        Source::Diagram(c) => Ok(c.clone()),
        Source::Complex(d, signs) => knot_from_complex(d, signs),
    }
}

fn pick_star(candidates: &[StarPair], index: Option<usize>) -> Result<StarPair> {
    let index = index.unwrap_or(0);
    candidates.get(index).copied().ok_or(Error::StarIndex { index, count: candidates.len() })
}

struct Pipeline {
    code: PdCode,
    universe: crate::planar_map::Universe,
    pair: TaitPair,
    overlaid: OverlaidGraph,
    candidates: Vec<StarPair>,
}

impl Pipeline {
    fn new(code: PdCode, options: TaitOptions) -> Result<Self> {
        let (universe, pair) = tait_from_pd(&code, options)?;
        let overlaid = overlay(&pair);
        let candidates = star_candidates(&overlaid);
        Ok(Pipeline { code, universe, pair, overlaid, candidates })
    }

    fn balanced(&self, star: Option<usize>) -> Result<BalancedGraph> {
        balance(&self.overlaid, pick_star(&self.candidates, star)?)
    }
}

fn unsupported(command: &str, format: Format) -> Error {
    Error::Input(format!("`{command}` has no {format:?} output").to_lowercase())
}

fn line(out: &mut dyn Write, s: impl Display) -> Result<()> {
    writeln!(out, "{s}")?;
    Ok(())
}

/// Runs one command.
pub fn run(config: &RunConfig, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<()> {
    let src = load(&config.input, stdin)?;
    match config.command {
        Command::Parse => cmd_parse(config, &src, out),
        Command::Build => cmd_build(config, &src, out),
        Command::Count => cmd_count(config, &src, out),
        Command::Enumerate => cmd_enumerate(config, &src, out),
        Command::Morse => cmd_morse(config, &src, out),
        Command::KnotFromComplex => cmd_knot_from_complex(config, &src, out),
        Command::Check => cmd_check(config, &src, out),
    }
}

fn cmd_parse(config: &RunConfig, src: &Source, out: &mut dyn Write) -> Result<()> {
    let code = diagram_of(src)?;
    match config.format {
        Format::Text => line(out, &code),
        Format::Json => line(
            out,
            serde_json::json!({"pd": code.to_string(), "crossings": code.crossings(), "labels": code.labels()}),
        ),
        Format::Dot => {
            let u = crate::planar_map::map_from_pd(&code)?;
            write!(out, "{}", u.map().to_dot())?;
            Ok(())
        }
    }
}

fn signs_text(g: &SignedTaitGraph) -> String {
    g.signs().iter().map(|s| s.to_string()).collect()
}

fn cmd_build(config: &RunConfig, src: &Source, out: &mut dyn Write) -> Result<()> {
    let p = Pipeline::new(diagram_of(src)?, config.options())?;
    let star = pick_star(&p.candidates, config.star)?;
    let g = balance(&p.overlaid, star)?;
    let (um, gm, dm, gh) = (p.universe.map(), p.pair.primal.graph(), p.pair.dual.graph(), &p.overlaid);
    match config.format {
        Format::Text => {
            line(out, format_args!("pd {}", p.code))?;
            line(out, format_args!("universe V={} E={} F={}", um.vertex_count(), um.edge_count(), um.face_count()))?;
            line(
                out,
                format_args!(
                    "tait V={} E={} signs={}",
                    gm.vertex_count(),
                    gm.edge_count(),
                    signs_text(&p.pair.primal)
                ),
            )?;
            line(out, format_args!("dual V={} E={}", dm.vertex_count(), dm.edge_count()))?;
            line(
                out,
                format_args!("overlaid V={} E={} F={}", gh.vertex_count(), gh.edge_count(), gh.face_count()),
            )?;
            line(
                out,
                format_args!(
                    "star {} of {}: v0={} f0={} square={}",
                    config.star.unwrap_or(0),
                    p.candidates.len(),
                    star.v0,
                    star.f0,
                    star.square
                ),
            )?;
            line(
                out,
                format_args!("balanced blacks={} whites={} edges={}", g.black_count(), g.white_count(), g.edges().len()),
            )
        }
        Format::Json => {
            let signs: Vec<i8> = p.pair.primal.signs().iter().map(|s| s.as_i8()).collect();
            let doc = serde_json::json!({
                "pd": p.code.to_string(),
                "universe": um.to_json(),
                "tait": {"primal": gm.to_json(), "signs": signs, "dual": dm.to_json()},
                "overlaid": gh.to_json(),
                "star_candidates": p.candidates,
                "balanced": g.to_json(),
            });
            line(out, doc)
        }
        Format::Dot => {
            write!(out, "{}{}", gh.to_dot(Some(&star)), g.to_dot())?;
            Ok(())
        }
    }
}

fn count_with(g: &BalancedGraph, method: Method) -> Result<BigUint> {
    match method {
        Method::Enumerate => Ok(BigUint::from(enumerate_matchings(g, None).len())),
        Method::Fkt => count_matchings_fkt(g),
        Method::Bruteforce => count_matchings_bruteforce(g),
    }
}

fn cmd_count(config: &RunConfig, src: &Source, out: &mut dyn Write) -> Result<()> {
    let p = Pipeline::new(diagram_of(src)?, config.options())?;
    let g = p.balanced(config.star)?;
    let n = count_with(&g, config.method)?;
    match config.format {
        Format::Text => line(out, n),
        Format::Json => {
            let method = format!("{:?}", config.method).to_lowercase();
            line(out, serde_json::json!({"method": method, "count": n.to_string()}))
        }
        Format::Dot => Err(unsupported("count", Format::Dot)),
    }
}

fn cmd_enumerate(config: &RunConfig, src: &Source, out: &mut dyn Write) -> Result<()> {
    let p = Pipeline::new(diagram_of(src)?, config.options())?;
    let g = p.balanced(config.star)?;
    for m in enumerate_matchings(&g, config.limit) {
        let t = m.triples(&g);
        match config.format {
            Format::Text => {
                let parts: Vec<String> = t.iter().map(|[b, w, e]| format!("{b}-{w}:{e}")).collect();
                line(out, parts.join(" "))?;
            }
            Format::Json => line(out, serde_json::to_string(&t)?)?,
            Format::Dot => return Err(unsupported("enumerate", Format::Dot)),
        }
    }
    Ok(())
}

fn complex_of(config: &RunConfig, src: &Source) -> Result<Complex2> {
    match src {
        Source::Complex(d, _) => Ok(d.clone()),
        Source::Diagram(code) => {
            let (_, pair) = tait_from_pd(code, config.options())?;
            complex_from_map(pair.primal.graph())
        }
    }
}

fn cmd_morse(config: &RunConfig, src: &Source, out: &mut dyn Write) -> Result<()> {
    let d = complex_of(config, src)?;
    let gh = face_poset(&d);
    let g = balance(&gh, pick_star(&star_candidates(&gh), config.star)?)?;
    match config.format {
        Format::Json => {
            for (i, f) in enumerate_morse(&d, &g, config.limit)?.iter().enumerate() {
                let mut rec = morse_to_json(&d, f);
                rec["index"] = i.into();
                line(out, rec)?;
            }
        }
        Format::Text => {
            for (i, f) in enumerate_morse(&d, &g, config.limit)?.iter().enumerate() {
                let crit = validate_morse(&d, f).critical;
                line(out, format_args!("{i}: critical={crit:?} values={:?}", f.values))?;
            }
        }
        Format::Dot => {
            for m in enumerate_matchings(&g, config.limit) {
                let (p, _) = matching_to_morse(&d, &g, &m)?;
                write!(out, "{}", hasse_dot(&d, &p))?;
            }
        }
    }
    Ok(())
}

fn cmd_knot_from_complex(config: &RunConfig, src: &Source, out: &mut dyn Write) -> Result<()> {
    let Source::Complex(d, signs) = src else {
        return Err(Error::Input("knot-from-complex needs a complex file".into()));
    };
    let g = SignedTaitGraph::new(d.map().clone(), signs.clone())?;
    let code = diagram_from_tait_with(&g, config.flip_signs);
    match config.format {
        Format::Text => line(out, code),
        Format::Json => line(out, serde_json::json!({"pd": code.to_string()})),
        Format::Dot => Err(unsupported("knot-from-complex", Format::Dot)),
    }
}

/// Outcome of one invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Skip(String),
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<Verdict> {
    Ok(if cond { Verdict::Pass } else { Verdict::Fail(msg()) })
}

fn balanced_all(p: &Pipeline) -> Result<Vec<BalancedGraph>> {
    p.candidates.iter().map(|&s| balance(&p.overlaid, s)).collect()
}

fn check_universe(p: &Pipeline) -> Result<Verdict> {
    let n = p.code.crossing_count();
    let m = p.universe.map();
    let got = (m.vertex_count(), m.edge_count(), m.face_count());
    ensure(got == (n, 2 * n, n + 2), || format!("(V, E, F) = {got:?}"))
}

fn check_coloring(p: &Pipeline) -> Result<Verdict> {
    let c = checkerboard(p.universe.map())?;
    ensure(c.is_proper(p.universe.map()), || "adjacent faces share a color".into())
}

fn check_dual(p: &Pipeline) -> Result<Verdict> {
    ensure(p.pair.primal.graph().dual().is_isomorphic(p.pair.dual.graph()), || "dual(G) differs from G*".into())
}

fn check_overlay(p: &Pipeline) -> Result<Verdict> {
    let n = p.code.crossing_count();
    let gh = &p.overlaid;
    let got = (gh.vertex_count(), gh.edge_count(), gh.face_count());
    ensure(got == (2 * n + 2, 4 * n, 2 * n) && gh.all_faces_square(), || format!("(V, E, F) = {got:?}"))
}

fn check_face_poset(p: &Pipeline) -> Result<Verdict> {
    let d = complex_from_map(p.pair.primal.graph())?;
    ensure(face_poset(&d).is_isomorphic(&p.overlaid), || "face poset differs from overlay".into())
}

fn check_balanced(p: &Pipeline) -> Result<Verdict> {
    let n = p.code.crossing_count();
    for g in balanced_all(p)? {
        if g.black_count() != n || g.white_count() != n {
            return Ok(Verdict::Fail(format!("{}/{} at {:?}", g.black_count(), g.white_count(), g.star())));
        }
    }
    Ok(Verdict::Pass)
}

fn check_counts(p: &Pipeline) -> Result<Verdict> {
    let trees = count_spanning_trees(p.pair.primal.graph());
    let dual_trees = count_spanning_trees(p.pair.dual.graph());
    if trees != dual_trees {
        return Ok(Verdict::Fail(format!("G has {trees} trees, G* has {dual_trees}")));
    }
    for g in balanced_all(p)? {
        let e = BigUint::from(enumerate_matchings(&g, None).len());
        let f = count_matchings_fkt(&g)?;
        let b = if g.black_count() <= BRUTEFORCE_CAP { count_matchings_bruteforce(&g)? } else { e.clone() };
        if e != trees || f != trees || b != trees {
            return Ok(Verdict::Fail(format!("star {:?}: enumerate {e}, fkt {f}, brute force {b}, trees {trees}", g.star())));
        }
    }
    Ok(Verdict::Pass)
}

fn check_bijection(p: &Pipeline) -> Result<Verdict> {
    let gm = p.pair.primal.graph();
    if gm.edge_count() > TREE_ENUMERATION_CAP {
        return Ok(Verdict::Skip(format!("more than {TREE_ENUMERATION_CAP} edges")));
    }
    for g in balanced_all(p)? {
        for m in enumerate_matchings(&g, None) {
            let (t, _) = matching_to_tree(&g, &m)?;
            if tree_to_matching(&g, &t)? != m {
                return Ok(Verdict::Fail(format!("matching {:?} does not come back", m.edges())));
            }
        }
        for t in enumerate_spanning_trees(gm, g.star().v0, None)? {
            let m = tree_to_matching(&g, &t)?;
            if matching_to_tree(&g, &m)?.0 != t {
                return Ok(Verdict::Fail(format!("tree {:?} does not come back", t.edges)));
            }
        }
    }
    Ok(Verdict::Pass)
}

fn check_morse(p: &Pipeline) -> Result<Verdict> {
    let d = complex_from_map(p.pair.primal.graph())?;
    let gh = face_poset(&d);
    for s in star_candidates(&gh) {
        let g = balance(&gh, s)?;
        // enumerate_morse validates every function and its critical cells
        let fs = enumerate_morse(&d, &g, None)?;
        let n = count_matchings_fkt(&g)?;
        if BigUint::from(fs.len()) != n {
            return Ok(Verdict::Fail(format!("{} functions for {n} matchings", fs.len())));
        }
    }
    Ok(Verdict::Pass)
}

fn check_swap(p: &Pipeline, config: &RunConfig) -> Result<Verdict> {
    let mut opts = config.options();
    opts.swap_colors = !opts.swap_colors;
    let q = Pipeline::new(p.code.clone(), opts)?;
    let a = count_matchings_fkt(&p.balanced(None)?)?;
    let b = count_matchings_fkt(&q.balanced(None)?)?;
    ensure(a == b, || format!("{a} matchings against {b} with colors swapped"))
}

fn check_round_trip(p: &Pipeline, config: &RunConfig) -> Result<Verdict> {
    let back = diagram_from_tait_with(&p.pair.primal, config.flip_signs);
    let first = p.pair.primal.sign(0).flip_if(config.flip_signs);
    // under the default coloring crossing 0 of a rebuilt diagram reads positive
    let opts = TaitOptions { swap_colors: first == Sign::Negative, flip_signs: config.flip_signs };
    let q = Pipeline::new(back, opts)?;
    if !p.universe.map().is_isomorphic(q.universe.map()) {
        return Ok(Verdict::Fail("universe changed".into()));
    }
    ensure(p.pair.primal.is_isomorphic(&q.pair.primal), || "signed Tait graph changed".into())
}

fn check_complex_round_trip(p: &Pipeline) -> Result<Verdict> {
    let g = &p.pair.primal;
    let d = complex_from_map(g.graph())?;
    let code = knot_from_complex(&d, g.signs())?;
    let (back, signs) = crate::morse::complex_from_diagram(&code, g.sign(0))?;
    let same = SignedTaitGraph::new(back.map().clone(), signs)?.is_isomorphic(g);
    ensure(same, || "complex changed".into())
}

type Check = fn(&Pipeline, &RunConfig) -> Result<Verdict>;

/// Names and bodies of the invariants run by `check`.
const CHECKS: [(&str, Check); 12] = [
    ("universe-counts", |p, _| check_universe(p)),
    ("checkerboard", |p, _| check_coloring(p)),
    ("tait-duality", |p, _| check_dual(p)),
    ("overlay-quadrangulation", |p, _| check_overlay(p)),
    ("face-poset-is-overlay", |p, _| check_face_poset(p)),
    ("balanced", |p, _| check_balanced(p)),
    ("count-agreement", |p, _| check_counts(p)),
    ("tree-bijection", |p, _| check_bijection(p)),
    ("morse-correspondence", |p, _| check_morse(p)),
    ("coloring-swap", check_swap),
    ("diagram-round-trip", check_round_trip),
    ("complex-round-trip", |p, _| check_complex_round_trip(p)),
];

/// Runs every invariant on one diagram.
pub fn invariant_suite(code: &PdCode, config: &RunConfig) -> Result<Vec<(&'static str, Verdict)>> {
    let p = Pipeline::new(code.clone(), config.options())?;
    Ok(CHECKS
        .iter()
        .map(|&(name, f)| {
            let v = match f(&p, config) {
                Ok(v) => v,
                Err(e) => Verdict::Fail(e.to_string()),
            };
            (name, v)
        })
        .collect())
}

fn cmd_check(config: &RunConfig, src: &Source, out: &mut dyn Write) -> Result<()> {
    let results = invariant_suite(&diagram_of(src)?, config)?;
    let mut failed = 0;
    for (name, v) in &results {
        match config.format {
            Format::Json => {
                let (status, detail) = match v {
                    Verdict::Pass => ("pass", None),
                    Verdict::Fail(s) => ("fail", Some(s)),
                    Verdict::Skip(s) => ("skip", Some(s)),
                };
                line(out, serde_json::json!({"invariant": name, "status": status, "detail": detail}))?;
            }
            Format::Text => match v {
                Verdict::Pass => line(out, format_args!("PASS {name}"))?,
                Verdict::Fail(s) => line(out, format_args!("FAIL {name}: {s}"))?,
                Verdict::Skip(s) => line(out, format_args!("SKIP {name}: {s}"))?,
            },
            Format::Dot => return Err(unsupported("check", Format::Dot)),
        }
        if matches!(v, Verdict::Fail(_)) {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(Error::Invariant(format!("{failed} of {} invariants failed", results.len())));
    }
    Ok(())
}
