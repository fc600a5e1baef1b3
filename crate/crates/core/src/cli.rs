//! Command-line front end. Every subcommand produces a JSON report (or a
//! plain rendering of it with `--format text`) and an exit status:
//! 0 on success, 1 when the computed property fails, 2 when the input
//! cannot be used.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::boundary::{self, Orbits, RepClass, RepDescriptor, SParam, SpecialVariant};
use crate::corpus;
use crate::cover::{self, build_ball, isometry_report, CoverVertex, IsometryKind, Overlap, Verdict};
use crate::doc::{Document, ModuleDecl};
use crate::error::{Error, Result};
use crate::fundgrp::{parse_word, presentation, GroupWord, Pi1};
use crate::gog::GraphOfGroups;
use crate::haagerup::{cocycle_of, verify_lemma_omega};
use crate::l2betti::{self, BettiCase, EdgeBettiTable, WitnessKind};
use crate::linalg::Matrix;
use crate::mvcoh::{self, ModuleSpec};
use crate::rational::{parse_q, Q};

#[derive(Parser, Debug)]
#[command(name = "gogkit", version, about = "Graphs of groups, Bass-Serre trees and first cohomology")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    /// Graphviz, for `cover` only.
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MvCheck {
    Exactness,
    H1,
    Iota,
    Semidirect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Trivial,
    Spherical,
    Special,
    Cuspidal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plus,
    Minus,
}

/// Input documents are file paths; a name of a bundled example also works.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// List structural violations of a graph of groups.
    Validate { doc: String },
    /// Contract edges whose edge group maps onto the head group.
    Reduce { doc: String },
    /// Presentation of the fundamental group.
    Present {
        doc: String,
        /// Keep the stable letters of tree edges and their killing relations.
        #[arg(long)]
        full: bool,
    },
    /// Ball of the Bass-Serre tree about the base vertex.
    Cover {
        doc: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Normal form of a word, or comparison with a second word.
    Word {
        doc: String,
        word: String,
        #[arg(long)]
        equals: Option<String>,
    },
    /// Image of the vertex `VERTEX·x0` under a word.
    Act {
        doc: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "1")]
        vertex: String,
        /// Fail when the image leaves the ball of this radius.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Displacement, translation length and axis or fixed vertex of a word.
    Isometry { doc: String, word: String },
    /// Fixed vertex, invariant end pair or ping-pong pair for a generating set.
    ClassifyAction {
        doc: String,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 12)]
        budget: usize,
    },
    /// The Haagerup cocycle `b(w) = 1_{w x0} − 1_{x0}` on oriented edges.
    Haagerup {
        doc: String,
        #[arg(long)]
        word: String,
        /// Check `‖b(w)‖² = 2 d(x0, w x0)`.
        #[arg(long)]
        check_norm: bool,
        /// Check that the connecting map of `ω_e = δ_{ē} − δ_e` gives `b`.
        #[arg(long)]
        verify_omega: bool,
    },
    /// Mayer-Vietoris computations for a finite-dimensional module.
    Mv {
        doc: String,
        /// Module file, or the name of a module in the document.
        #[arg(long)]
        module: String,
        #[arg(long, value_enum)]
        check: MvCheck,
    },
    /// First l2-Betti number.
    Betti1 {
        doc: String,
        #[arg(long)]
        expect_zero: bool,
    },
    /// l2-Betti number in degree at least 2.
    Betti {
        doc: String,
        #[arg(long)]
        degree: u32,
        /// JSON table `{"edge id or group": {"degree": "p/q"}}`.
        #[arg(long)]
        edge_betti: Option<PathBuf>,
    },
    /// Which vanishing case applies to a reduced graph of groups.
    BettiClassify { doc: String },
    /// Fixed spaces and `H¹` for representations of boundary-transitive tree groups.
    Boundary {
        #[arg(long)]
        orbits: u8,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        q2: Option<u64>,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        s: Option<String>,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Also run the orbit count on a ball of this depth.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// List the bundled examples, or print one.
    Examples { name: Option<String> },
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    result: Value,
    /// Replaces the generic text rendering when set.
    text: Option<String>,
    dot: Option<String>,
    ok: bool,
}

impl Report {
    fn ok(result: Value) -> Self {
        Report { result, text: None, dot: None, ok: true }
    }

    fn verdict(result: Value, ok: bool) -> Self {
        Report { result, text: None, dot: None, ok }
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { stdout: text, stderr: String::new(), code: 0 },
                _ => Outcome { stdout: String::new(), stderr: text, code: 2 },
            };
        }
    };
    let echo: Vec<&str> = args.iter().skip(1).map(String::as_str).collect();
    match dispatch(&cli.command) {
        Ok(report) => render(cli.format, &cli.command, &echo, report),
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("{}\n", json!({ "command": echo, "error": e.to_string() })),
            code: 2,
        },
    }
}

fn render(format: Format, cmd: &Command, echo: &[&str], r: Report) -> Outcome {
    let code = if r.ok { 0 } else { 1 };
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "command": echo, "ok": r.ok, "result": r.result })).expect("json");
            s.push('\n');
            s
        }
        Format::Text => r.text.unwrap_or_else(|| text_of(&r.result, 0)),
        Format::Dot => match (cmd, r.dot) {
            (Command::Cover { .. }, Some(d)) => d,
            _ => {
                return Outcome { stdout: String::new(), stderr: "--format dot is only available for cover\n".into(), code: 2 };
            }
        },
    };
    Outcome { stdout, stderr: String::new(), code }
}

/// Indented `key: value` rendering of a JSON report.
fn text_of(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if nested(x) {
                    out.push_str(&format!("{pad}{k}:\n{}", text_of(x, indent + 1)));
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if nested(x) {
                    out.push_str(&format!("{pad}-\n{}", text_of(x, indent + 1)));
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
    out
}

fn nested(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(a) => a.iter().any(|y| y.is_object() || y.is_array()),
        _ => false,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn load(doc: &str) -> Result<Document> {
    if Path::new(doc).exists() {
        Document::load(doc)
    } else if corpus::names().contains(&doc) {
        corpus::example(doc)
    } else {
        Err(Error::Parse(format!("{doc}: no such file or bundled example")))
    }
}

fn load_gog(doc: &str) -> Result<(Document, GraphOfGroups)> {
    let d = load(doc)?;
    let gog = d.gog()?;
    let report = gog.validate();
    if !report.is_valid() {
        return Err(Error::InvalidGraphOfGroups(report.violations.join("; ")));
    }
    Ok((d, gog))
}

fn load_pi(doc: &str) -> Result<Pi1> {
    Pi1::new(&load_gog(doc)?.1)
}

fn qs(x: &Q) -> Value {
    Value::String(x.to_string())
}

fn vec_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(qs).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vec_json(m.row(r))).collect())
}

fn vertex_json(pi: &Pi1, v: &CoverVertex) -> Value {
    let g = &pi.gog;
    json!({
        "type": g.graph.vertex_id(v.kind(pi)),
        "word": pi.vertex_word(&v.steps).display(g),
        "depth": v.depth(),
    })
}

fn word(pi: &Pi1, w: &str) -> Result<GroupWord> {
    parse_word(&pi.gog, w)
}

fn graph_json(gog: &GraphOfGroups) -> Value {
    let g = &gog.graph;
    json!({
        "vertices": (0..g.vertex_count()).map(|v| json!({"id": g.vertex_id(v), "group": gog.vertex_groups[v].name})).collect::<Vec<_>>(),
        "edges": gog.oriented_edges().into_iter().map(|e| json!({
            "id": g.edge(e).id,
            "tail": g.vertex_id(g.tail(e)),
            "head": g.vertex_id(g.head(e)),
            "group": gog.edge_groups[e].name,
            "tree": gog.is_tree_edge(e),
        })).collect::<Vec<_>>(),
        "base_vertex": g.vertex_id(gog.base),
    })
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Validate { doc } => {
            let gog = load(doc)?.gog()?;
            let r = gog.validate();
            Ok(Report::verdict(json!({ "valid": r.is_valid(), "violations": r.violations }), r.is_valid()))
        }
        Command::Reduce { doc } => {
            let (_, gog) = load_gog(doc)?;
            let (red, log) = gog.reduce()?;
            let log: Vec<Value> = log
                .iter()
                .map(|c| json!({"edge": c.edge, "removed_vertex": c.removed_vertex, "merged_into": c.merged_into}))
                .collect();
            Ok(Report::ok(json!({ "contractions": log, "reduced": red.is_reduced()?.reduced, "graph": graph_json(&red) })))
        }
        Command::Present { doc, full } => {
            let (_, gog) = load_gog(doc)?;
            let p = presentation(&gog)?;
            let shown = if *full { p.to_string() } else { p.simplified() };
            let rels: Vec<&str> = p.relations.iter().map(|r| r.text.as_str()).collect();
            let mut r = Report::ok(json!({
                "presentation": shown,
                "generators": p.generators,
                "relations": rels,
                "tree_letters": p.tree_letters,
            }));
            r.text = Some(format!("{shown}\n"));
            Ok(r)
        }
        Command::Cover { doc, radius } => {
            let pi = load_pi(doc)?;
            let ball = build_ball(&pi, *radius)?;
            let mut r = Report::ok(ball.to_json(&pi));
            r.dot = Some(ball.to_dot(&pi));
            Ok(r)
        }
        Command::Word { doc, word: w, equals } => {
            let pi = load_pi(doc)?;
            let w = word(&pi, w)?;
            let nf = pi.britton_reduce(&w)?;
            let mut out = json!({
                "input": w.display(&pi.gog),
                "normal_form": nf.word.display(&pi.gog),
                "is_identity": nf.is_identity,
            });
            if let Some(other) = equals {
                let o = word(&pi, other)?;
                out["equals"] = json!(pi.equals(&w, &o)?);
            }
            Ok(Report::ok(out))
        }
        Command::Act { doc, word: w, vertex, radius } => {
            let pi = load_pi(doc)?;
            let w = word(&pi, w)?;
            let vw = word(&pi, vertex)?;
            let v = cover::act(&pi, &pi.path_form(&vw)?, &CoverVertex::base());
            let image = cover::act(&pi, &pi.path_form(&w)?, &v);
            if let Some(r) = radius {
                if image.depth() > *r || v.depth() > *r {
                    return Err(Error::OutOfBall { radius: *r, depth: image.depth().max(v.depth()) });
                }
            }
            Ok(Report::ok(json!({
                "vertex": vertex_json(&pi, &v),
                "image": vertex_json(&pi, &image),
                "distance": cover::tree_distance(&v, &image),
            })))
        }
        Command::Isometry { doc, word: w } => {
            let pi = load_pi(doc)?;
            let r = isometry_report(&pi, &word(&pi, w)?)?;
            Ok(Report::ok(json!({
                "normal_form": r.element.word.display(&pi.gog),
                "displacement": r.displacement,
                "kind": match r.kind { IsometryKind::Elliptic => "elliptic", IsometryKind::Hyperbolic => "hyperbolic" },
                "translation_length": r.translation_length,
                "axis": r.axis.iter().map(|v| vertex_json(&pi, v)).collect::<Vec<_>>(),
                "fixed_vertex": r.fixed_vertex.as_ref().map(|v| vertex_json(&pi, v)),
            })))
        }
        Command::ClassifyAction { doc, gens, budget } => {
            let pi = load_pi(doc)?;
            let ws: Vec<GroupWord> = gens.iter().map(|g| word(&pi, g)).collect::<Result<_>>()?;
            let c = cover::classify_action(&pi, &ws, *budget)?;
            let verified = cover::verify_classification(&pi, &ws, &c)?;
            let d = |w: &GroupWord| w.display(&pi.gog);
            let certificate = match &c.verdict {
                Verdict::FixedVertex(v) => json!({ "fixed_vertex": vertex_json(&pi, v) }),
                Verdict::ElementaryEndPair { h, confirmations, window } => json!({
                    "h": d(h),
                    "confirmations": confirmations.iter().map(|c| format!("{c:?}").to_lowercase()).collect::<Vec<_>>(),
                    "window": window,
                }),
                Verdict::NonElementary(p) => {
                    let (kind, from, to) = match &p.overlap {
                        Overlap::Segment { from, to } => ("segment", from, to),
                        Overlap::Bridge { from, to } => ("bridge", from, to),
                    };
                    json!({
                        "h": d(&p.h),
                        "conjugator": gens[p.conjugator],
                        "h_conjugate": d(&p.h_conj),
                        "length_h": p.length_h,
                        "length_h_conjugate": p.length_h_conj,
                        "overlap": { "kind": kind, "from": vertex_json(&pi, from), "to": vertex_json(&pi, to) },
                        "overlap_length": p.overlap_length,
                        "power_h": p.power_h,
                        "power_h_conjugate": p.power_h_conj,
                    })
                }
                Verdict::Inconclusive { budget } => json!({ "budget": budget }),
            };
            Ok(Report::verdict(
                json!({ "verdict": c.name(), "certificate": certificate, "lengths": c.lengths, "verified": verified }),
                verified,
            ))
        }
        Command::Haagerup { doc, word: w, check_norm, verify_omega } => {
            let pi = load_pi(doc)?;
            let w = word(&pi, w)?;
            let pf = pi.path_form(&w)?;
            let b = cocycle_of(&pi, &pf);
            let dist = pf.steps.len();
            let norm = b.norm_sq();
            let mut out = json!({
                "word": w.display(&pi.gog),
                "cocycle": b.to_json(&pi),
                "norm_sq": qs(&norm),
                "distance": dist,
            });
            let mut ok = true;
            if *check_norm {
                let pass = norm == Q::from_integer((2 * dist).into());
                out["norm_identity"] = json!(pass);
                ok &= pass;
            }
            if *verify_omega {
                let radius = dist.max(2 * pi.gog.graph.vertex_count() + 2);
                let ball = build_ball(&pi, radius)?;
                let rep = verify_lemma_omega(&pi, &ball, std::slice::from_ref(&w))?;
                let checks = |v: &[crate::haagerup::LemmaCheck]| {
                    v.iter().map(|c| json!({"item": c.item, "pass": c.pass})).collect::<Vec<_>>()
                };
                out["omega"] = json!({
                    "invariant": rep.omega_invariant,
                    "generators": checks(&rep.generators),
                    "words": checks(&rep.words),
                    "pass": rep.all_pass(),
                });
                ok &= rep.all_pass();
            }
            Ok(Report::verdict(out, ok))
        }
        Command::Mv { doc, module, check } => mv(doc, module, *check),
        Command::Betti1 { doc, expect_zero } => {
            let (_, gog) = load_gog(doc)?;
            let b = l2betti::beta1(&gog)?;
            let zero = b == Q::from_integer(0.into());
            let mut r = Report::verdict(json!({ "beta1": qs(&b) }), !expect_zero || zero);
            r.text = Some(format!("{b}\n"));
            Ok(r)
        }
        Command::Betti { doc, degree, edge_betti } => {
            let (_, gog) = load_gog(doc)?;
            let table = match edge_betti {
                Some(p) => edge_betti_table(p)?,
                None => EdgeBettiTable::new(),
            };
            let b = l2betti::beta_higher(&gog, *degree, &table)?;
            let mut r = Report::ok(json!({ "degree": degree, "beta": qs(&b) }));
            r.text = Some(format!("{b}\n"));
            Ok(r)
        }
        Command::BettiClassify { doc } => {
            let (_, gog) = load_gog(doc)?;
            let c = l2betti::classify_beta1(&gog)?;
            let b = l2betti::beta1(&gog)?;
            let witness = match c {
                BettiCase::Nonzero(w) => json!({
                    "kind": match w.kind { WitnessKind::Loop => "loop", WitnessKind::Segment => "segment" },
                    "edge": gog.graph.edge(w.edge).id,
                }),
                _ => Value::Null,
            };
            let consistent = c.is_zero() == (b == Q::from_integer(0.into()));
            Ok(Report::verdict(
                json!({ "case": c.name(), "zero": c.is_zero(), "witness": witness, "beta1": qs(&b), "consistent": consistent }),
                consistent,
            ))
        }
        Command::Boundary { orbits, q, q2, class, s, variant, depth } => boundary_cmd(*orbits, *q, *q2, *class, s.as_deref(), *variant, *depth),
        Command::Examples { name } => match name {
            None => {
                let mut r = Report::ok(json!({ "examples": corpus::names() }));
                r.text = Some(corpus::names().join("\n") + "\n");
                Ok(r)
            }
            Some(n) => {
                let src = corpus::source(n)?;
                let mut r = Report::ok(serde_json::from_str(src).expect("bundled examples are JSON"));
                r.text = Some(src.to_string());
                Ok(r)
            }
        },
    }
}

fn edge_betti_table(path: &Path) -> Result<EdgeBettiTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, BTreeMap<String, String>> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("edge Betti table: {e}")))?;
    raw.into_iter()
        .map(|(k, t)| {
            let t = t
                .into_iter()
                .map(|(d, v)| Ok((d.parse().map_err(|_| Error::Parse(format!("bad degree `{d}`")))?, parse_q(&v)?)))
                .collect::<Result<_>>()?;
            Ok((k, t))
        })
        .collect()
}

fn mv(doc: &str, module: &str, check: MvCheck) -> Result<Report> {
    let (d, gog) = load_gog(doc)?;
    let spec: ModuleSpec = if Path::new(module).exists() {
        ModuleDecl::load(module)?.build(&gog)?
    } else {
        d.module(&gog, module)?
    };
    let mr = mvcoh::validate_module(&gog, &spec);
    if !mr.is_valid() {
        return Err(Error::InvalidModule(mr.violations.join("; ")));
    }
    Ok(match check {
        MvCheck::Exactness => {
            let r = mvcoh::check_exactness(&gog, &spec)?;
            Report::verdict(
                json!({
                    "dim_fixed": r.dim_fixed,
                    "dim_vertex_fixed": r.dim_vertex_fixed,
                    "dim_edge_fixed": r.dim_edge_fixed,
                    "rank_delta": r.rank_delta,
                    "rank_iota": r.rank_iota,
                    "rank_partial": r.rank_partial,
                    "dim_h1": r.dim_h1,
                    "dim_restriction_kernel": r.dim_restriction_kernel,
                    "vertex_h1": r.vertex_h1,
                    "delta_injective": r.delta_injective,
                    "exact_at_vertices": r.exact_at_vertices,
                    "exact_at_edges": r.exact_at_edges,
                    "exact_at_h1": r.exact_at_h1,
                    "h1_equals_cokernel": r.h1_equals_cokernel,
                }),
                r.all_pass(),
            )
        }
        MvCheck::H1 => {
            let h = mvcoh::h1(&gog, &spec);
            let per_vertex: BTreeMap<&str, usize> =
                (0..gog.graph.vertex_count()).map(|v| (gog.graph.vertex_id(v), mvcoh::vertex_h1(&gog, &spec, v).dim_h)).collect();
            Report::ok(json!({
                "dim_z1": h.dim_z,
                "dim_b1": h.dim_b,
                "dim_h1": h.dim_h,
                "vertex_h1": per_vertex,
                "h1_basis": h.h_basis.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
            }))
        }
        MvCheck::Iota => {
            let i = mvcoh::iota_matrix(&gog, &spec)?;
            Report::ok(json!({
                "domain_dim": i.domain_dim(),
                "codomain_dim": i.codomain_dim(),
                "rank": i.rank(),
                "cokernel_dim": i.cokernel_dim(),
                "matrix": matrix_json(&i.matrix),
            }))
        }
        MvCheck::Semidirect => {
            let v = mvcoh::semidirect_criterion(&gog, &spec)?;
            Report::verdict(
                json!({
                    "dim_fixed": v.dim_fixed,
                    "restricted": matrix_json(&v.restricted),
                    "one_is_eigenvalue": v.one_is_eigenvalue,
                    "predicted_vanishing": v.predicted_vanishing,
                    "dim_h1": v.h1_dim,
                    "agrees": v.agrees,
                }),
                v.agrees,
            )
        }
    })
}

fn boundary_cmd(
    orbits: u8,
    q: u64,
    q2: Option<u64>,
    class: ClassArg,
    s: Option<&str>,
    variant: Option<VariantArg>,
    depth: Option<usize>,
) -> Result<Report> {
    let orbits = match orbits {
        1 => Orbits::One,
        2 => Orbits::Two,
        n => return Err(Error::InvalidDescriptor(format!("orbit count must be 1 or 2, got {n}"))),
    };
    let class = match class {
        ClassArg::Trivial => RepClass::Trivial,
        ClassArg::Cuspidal => RepClass::Cuspidal,
        ClassArg::Spherical => {
            let s = s.ok_or_else(|| Error::InvalidDescriptor("spherical needs --s".into()))?;
            RepClass::Spherical(s.parse::<SParam>()?)
        }
        ClassArg::Special => RepClass::Special(match (orbits, variant) {
            (Orbits::Two, None) => SpecialVariant::Unique,
            (_, Some(VariantArg::Plus)) => SpecialVariant::Plus,
            (_, Some(VariantArg::Minus)) => SpecialVariant::Minus,
            (Orbits::One, None) => return Err(Error::InvalidDescriptor("one-orbit special needs --variant".into())),
        }),
    };
    let d = RepDescriptor::new(orbits, q, q2, class)?;
    let dims = boundary::fixed_dims(&d)?;
    let mut out = json!({
        "class": d.class.name(),
        "fixed_dims": { "a": dims.a, "b": dims.b, "e": dims.e },
        "h1_dim": boundary::h1_dim(&d)?,
    });
    if matches!(d.class, RepClass::Trivial | RepClass::Spherical(_)) {
        let i = boundary::iota_surjectivity(&d)?;
        out["iota"] = json!({
            "lambda": i.lambda.to_string(),
            "matrix": i.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "determinant": i.determinant.to_string(),
            "surjective": i.surjective,
        });
    }
    if let Some(depth) = depth {
        let t = boundary::truncated_check(d.q, d.q2, depth)?;
        out["truncated"] = json!({
            "depth": t.depth,
            "ball_size": t.ball_size,
            "sphere_size": t.sphere_size,
            "stab_a_orbits": t.stab_a_orbits,
            "stab_e_orbits": t.stab_e_orbits,
            "stab_b_orbits": t.stab_b_orbits,
            "density_ratio": qs(&t.density_ratio),
            "expected_ratio": qs(&t.expected_ratio),
            "ratio_matches": t.ratio_matches(),
        });
    }
    Ok(Report::ok(out))
}
