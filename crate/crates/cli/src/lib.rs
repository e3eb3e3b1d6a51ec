//! Command-line front end for `qtoric`.
//!
//! Every command reads one JSON document and prints a report
//! `{status, data, notes}`. Exit codes: 0 ok, 1 parse error, 2 invalid
//! input, 3 unclassifiable polygon, 4 square outside the witness patterns.

pub mod doc;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qtoric::boundary::{self, BuildOptions, PieceId};
use qtoric::charmap::{self, IsotropyMap, IsotropySearch, ValidationReport};
use qtoric::cobord4::{self, CobClass, CobordError, EqualityMode, Polygon4, Terminal};
use qtoric::intlat::Mat2;
use qtoric::polytope::{self, catalog, Functional};
use qtoric::TriangleClass;
use serde_json::{json, Value};

use doc::{DocError, Document};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNCLASSIFIABLE: i32 = 3;
pub const EXIT_PATTERN: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qtoric",
    version,
    about = "Quasitoric manifolds over polytopes: validation, boundaries, cobordism"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for the random linear functional.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Allow boundary models over polytopes of dimension above 3.
    #[arg(long, global = true)]
    pub experimental: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate any document with the checker for its kind.
    Validate { input: PathBuf },
    /// Boundary pieces of the manifold with quasitoric boundary.
    Boundary { input: PathBuf },
    /// Ranks of the relative homology.
    Homology { input: PathBuf },
    /// Euler characteristic with the half-boundary cross-check.
    Euler { input: PathBuf },
    /// Cobordism class of a polygon and its blow-down trace.
    Cobordism { input: PathBuf },
    /// Witness polytope for a square, verified.
    Witness { input: PathBuf },
    /// Search for an isotropy function on a polytope.
    Search {
        input: PathBuf,
        /// Largest absolute entry tried.
        #[arg(long, default_value_t = 2)]
        bound: u64,
    },
    /// Compare two polygons.
    Equal {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
    },
    /// Print a polytope from the built-in catalog.
    Catalog {
        #[arg(value_enum)]
        name: CatalogName,
        /// Dimension for simplices, vertex count for polygons.
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Re-emit a document in canonical form.
    Normalize { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Strict,
    Dihedral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalogName {
    Simplex,
    Cube,
    Octahedron,
    Polygon,
    SquarePyramid,
    PentagonalPyramid,
    Dodecahedron,
}

/// The outcome of a command.
#[derive(Debug)]
pub struct Report {
    pub code: i32,
    pub status: &'static str,
    pub data: Value,
    pub notes: Vec<String>,
    /// Human-readable lines for `--format text`.
    pub text: Vec<String>,
    /// Emit `data` alone, so the output is itself a document.
    pub bare: bool,
}

impl Report {
    fn ok(data: Value, text: Vec<String>) -> Self {
        Report {
            code: EXIT_OK,
            status: "ok",
            data,
            notes: Vec::new(),
            text,
            bare: false,
        }
    }

    fn document(data: Value) -> Self {
        let text = vec![doc::to_canonical_string(&data)];
        Report {
            bare: true,
            ..Report::ok(data, text)
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let message = message.into();
        Report {
            code,
            status: status_for(code),
            data: json!({ "error": message }),
            notes: Vec::new(),
            text: vec![message],
            bare: false,
        }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self.status = status_for(code);
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn to_value(&self) -> Value {
        json!({ "status": self.status, "data": self.data, "notes": self.notes })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json if self.bare => doc::to_canonical_string(&self.data),
            Format::Json => doc::to_canonical_string(&self.to_value()),
            Format::Text if self.bare => self.text.join("\n"),
            Format::Text => {
                let mut s = format!("status: {}\n", self.status);
                for line in &self.text {
                    let _ = writeln!(s, "{line}");
                }
                for n in &self.notes {
                    let _ = writeln!(s, "note: {n}");
                }
                s.pop();
                s
            }
        }
    }
}

fn status_for(code: i32) -> &'static str {
    match code {
        EXIT_OK => "ok",
        EXIT_PARSE => "parse_error",
        EXIT_INVALID => "invalid",
        EXIT_UNCLASSIFIABLE => "unclassifiable",
        _ => "pattern_not_matched",
    }
}

fn from_doc_error(e: DocError) -> Report {
    match e {
        DocError::Parse(m) => Report::fail(EXIT_PARSE, m),
        DocError::Invalid(m) => Report::fail(EXIT_INVALID, m),
    }
}

fn load(path: &PathBuf) -> Result<Document, Report> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Report::fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    doc::parse_document(&text).map_err(from_doc_error)
}

fn expect_kind(d: &Document, kinds: &[&str]) -> Result<(), Report> {
    if kinds.contains(&d.kind()) {
        Ok(())
    } else {
        Err(Report::fail(
            EXIT_PARSE,
            format!(
                "expected a document of kind {}, found {:?}",
                kinds.join(" or "),
                d.kind()
            ),
        ))
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Report {
    let result = match &cli.command {
        Command::Validate { input } => load(input).map(|d| validate(&d)),
        Command::Boundary { input } => load(input).and_then(|d| boundary_cmd(&d, cli)),
        Command::Homology { input } => load(input).and_then(|d| homology_cmd(&d, cli)),
        Command::Euler { input } => load(input).and_then(|d| euler_cmd(&d, cli)),
        Command::Cobordism { input } => load(input).and_then(|d| cobordism_cmd(&d)),
        Command::Witness { input } => load(input).and_then(|d| witness_cmd(&d)),
        Command::Search { input, bound } => load(input).and_then(|d| search_cmd(&d, *bound)),
        Command::Equal { left, right, mode } => {
            load(left).and_then(|l| load(right).and_then(|r| equal_cmd(&l, &r, *mode)))
        }
        Command::Catalog { name, size } => catalog_cmd(*name, *size),
        Command::Normalize { input } => load(input).map(|d| Report::document(d.to_value())),
    };
    result.unwrap_or_else(|r| r)
}

fn validation_report(kind: &str, r: &ValidationReport, p: &qtoric::CombPolytope) -> Report {
    let violations: Vec<String> = r
        .violations
        .iter()
        .map(|v| match v {
            charmap::Violation::NotSimple => "polytope is not simple".to_string(),
            charmap::Violation::NotEdgeSimple => "polytope is not edge-simple".to_string(),
            charmap::Violation::Face { facets } => format!("face {}", facet_names(p, facets)),
            charmap::Violation::Edge { ends, facets } => format!(
                "edge {}-{} on {}",
                p.vertex_id(ends.0),
                p.vertex_id(ends.1),
                facet_names(p, facets)
            ),
        })
        .collect();
    let data = json!({ "kind": kind, "checked": r.checked, "valid": r.is_valid(), "violations": violations });
    let mut text = vec![format!(
        "{kind}: {} checks, {} violations",
        r.checked,
        violations.len()
    )];
    text.extend(violations.iter().cloned());
    let report = Report::ok(data, text);
    if r.is_valid() {
        report
    } else {
        report.with_code(EXIT_INVALID)
    }
}

fn facet_names(p: &qtoric::CombPolytope, facets: &[usize]) -> String {
    let names: Vec<&str> = facets.iter().map(|&f| p.facet_id(f)).collect();
    format!("{{{}}}", names.join(", "))
}

fn validate(d: &Document) -> Report {
    match d {
        Document::Polytope(p) => {
            let h = polytope::h_vector(p).ok();
            let data = json!({
                "kind": "polytope",
                "valid": true,
                "dim": p.dim(),
                "vertices": p.vertex_count(),
                "edges": p.edges().len(),
                "facets": p.facet_count(),
                "simple": p.is_simple(),
                "edge_simple": p.is_edge_simple(),
                "h_vector": h.as_ref().map(|h| h.entries().to_vec()),
            });
            let mut text = vec![format!(
                "{}-polytope: {} vertices, {} edges, {} facets; simple: {}, edge-simple: {}",
                p.dim(),
                p.vertex_count(),
                p.edges().len(),
                p.facet_count(),
                p.is_simple(),
                p.is_edge_simple()
            )];
            if let Some(h) = &h {
                text.push(format!("h-vector: {:?}", h.entries()));
            }
            Report::ok(data, text)
        }
        Document::Isotropy(m) => {
            validation_report("isotropy", &charmap::validate_isotropy(m), m.polytope())
        }
        Document::Characteristic(c) => validation_report(
            "characteristic",
            &charmap::validate_characteristic(c),
            c.polytope(),
        ),
        Document::Mod2(m) => validation_report("mod2", &charmap::validate_mod2(m), m.polytope()),
        Document::Polygon4(p) => {
            let r = cobord4::validate_polygon(p);
            let data = json!({
                "kind": "polygon4",
                "valid": r.is_valid(),
                "bad_pairs": r.bad_pairs,
            });
            let report = Report::ok(data, vec![format!("polygon {p}: {r}")]);
            if r.is_valid() {
                report
            } else {
                report.with_code(EXIT_INVALID)
            }
        }
    }
}

fn valid_isotropy(d: &Document) -> Result<&IsotropyMap, Report> {
    expect_kind(d, &["isotropy"])?;
    let Document::Isotropy(m) = d else {
        unreachable!()
    };
    let r = charmap::validate_isotropy(m);
    if r.is_valid() {
        Ok(m)
    } else {
        Err(validation_report("isotropy", &r, m.polytope()).with_code(EXIT_INVALID))
    }
}

fn build_model(m: &IsotropyMap, cli: &Cli) -> Result<boundary::BoundaryModel, Report> {
    let opts = BuildOptions {
        functional: Functional::Seeded(cli.seed),
        experimental: cli.experimental,
    };
    boundary::build_boundary_model(m, &opts).map_err(|e| Report::fail(EXIT_INVALID, e.to_string()))
}

fn matrix_value(m: &Mat2) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(doc::int_value).collect()))
            .collect(),
    )
}

fn class_term_value(c: &TriangleClass) -> Value {
    matrix_value(c.matrix())
}

/// A class as a list of `{matrix, coefficient}` sorted by matrix.
fn cob_class_value(c: &CobClass) -> Value {
    Value::Array(
        c.terms()
            .iter()
            .map(
                |(t, k)| json!({ "matrix": class_term_value(t), "coefficient": doc::int_value(k) }),
            )
            .collect(),
    )
}

fn piece_value(p: &PieceId) -> Value {
    match p {
        PieceId::Triangle { class, sign } => {
            json!({ "type": "triangle", "class": class_term_value(class), "sign": sign.value() })
        }
        PieceId::Hirzebruch { k } => json!({ "type": "hirzebruch", "k": doc::int_value(k) }),
        PieceId::ProductOfSpheres => json!({ "type": "product_of_spheres" }),
        PieceId::Polygon { m, class } => {
            json!({ "type": "polygon", "m": m, "class": cob_class_value(class) })
        }
        PieceId::Unrecognized => json!({ "type": "unrecognized" }),
    }
}

fn piece_text(p: &PieceId) -> String {
    match p {
        PieceId::Triangle { class, sign } => format!("triangle {class} sign({sign})"),
        PieceId::Hirzebruch { k } => format!("hirzebruch k={k}"),
        PieceId::ProductOfSpheres => "product_of_spheres".to_string(),
        PieceId::Polygon { m, class } => format!("{m}-gon class {class}"),
        PieceId::Unrecognized => "unrecognized".to_string(),
    }
}

fn boundary_cmd(d: &Document, cli: &Cli) -> Result<Report, Report> {
    if let Document::Mod2(m) = d {
        let sections = boundary::build_small_cover_boundary(m)
            .map_err(|e| Report::fail(EXIT_INVALID, e.to_string()))?;
        let p = m.polytope();
        let data: Vec<Value> = sections
            .iter()
            .map(|(v, s)| json!({ "vertex": p.vertex_id(*v), "section": Document::Mod2(s.clone()).to_value() }))
            .collect();
        let text = sections
            .iter()
            .map(|(v, s)| {
                format!(
                    "{}: {}-polytope section",
                    p.vertex_id(*v),
                    s.polytope().dim()
                )
            })
            .collect();
        return Ok(Report::ok(json!({ "sections": data }), text));
    }
    let m = valid_isotropy(d)?;
    let model = build_model(m, cli)?;
    let p = m.polytope();
    if p.dim() != 3 {
        let data: Vec<Value> = model
            .pieces()
            .iter()
            .enumerate()
            .map(|(v, c)| json!({ "vertex": p.vertex_id(v), "section": Document::Characteristic(c.clone()).to_value() }))
            .collect();
        return Ok(Report::ok(
            json!({ "pieces": data }),
            vec![format!("{} sections", data.len())],
        )
        .note("pieces over sections of dimension above 2 are listed, not identified"));
    }
    let pieces = boundary::signed_piece_classes(&model)
        .map_err(|e| Report::fail(EXIT_INVALID, e.to_string()))?;
    let plus = pieces
        .iter()
        .filter(|(_, q)| q.sign() == Some(qtoric::Sign::Plus))
        .count();
    let minus = pieces
        .iter()
        .filter(|(_, q)| q.sign() == Some(qtoric::Sign::Minus))
        .count();
    let total = boundary::boundary_class(&pieces);
    let data = json!({
        "pieces": pieces.iter().map(|(v, q)| json!({ "vertex": p.vertex_id(*v), "piece": piece_value(q) })).collect::<Vec<_>>(),
        "plus": plus,
        "minus": minus,
        "boundary_class": total.as_ref().map(cob_class_value),
    });
    let mut text: Vec<String> = pieces
        .iter()
        .map(|(v, q)| format!("{}: {}", p.vertex_id(*v), piece_text(q)))
        .collect();
    text.push(format!("{plus} x sign(+1), {minus} x sign(-1)"));
    if let Some(t) = &total {
        text.push(format!("sum of boundary classes: {t}"));
    }
    Ok(Report::ok(data, text))
}

fn homology_cmd(d: &Document, cli: &Cli) -> Result<Report, Report> {
    let m = valid_isotropy(d)?;
    let model = build_model(m, cli)?;
    let h = boundary::homology_relative(&model);
    let counts = model.index().cell_counts();
    let ranks: serde_json::Map<String, Value> = h
        .ranks()
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let data = json!({
        "ranks": ranks,
        "cell_counts": counts,
        "edges": m.polytope().edges().len(),
        "direction": model.index().direction().iter().map(doc::int_value).collect::<Vec<_>>(),
    });
    let text = h
        .ranks()
        .iter()
        .map(|(k, v)| format!("H_{k}: rank {v}"))
        .collect();
    Ok(Report::ok(data, text))
}

fn euler_cmd(d: &Document, cli: &Cli) -> Result<Report, Report> {
    let m = valid_isotropy(d)?;
    let model = build_model(m, cli)?;
    let r =
        boundary::euler_report(&model).map_err(|e| Report::fail(EXIT_INVALID, e.to_string()))?;
    let data = json!({
        "chi": r.chi,
        "section_h_total": r.section_h_total,
        "half_boundary": r.half_boundary,
        "cell_counts": r.cell_counts,
        "chi_without_top_cells": r.chi_without_top_cells,
    });
    let text = vec![
        format!("euler characteristic: {}", r.chi),
        format!(
            "boundary check: {} / 2 = {}",
            r.section_h_total, r.half_boundary
        ),
    ];
    let mut report = Report::ok(data, text);
    report.notes = r.notes;
    if r.chi != r.half_boundary {
        report = report.note("cell count and half-boundary disagree");
    }
    Ok(report)
}

fn polygon_arg(d: &Document) -> Result<&Polygon4, Report> {
    expect_kind(d, &["polygon4"])?;
    let Document::Polygon4(p) = d else {
        unreachable!()
    };
    Ok(p)
}

fn cobord_failure(e: CobordError) -> Report {
    let code = match e {
        CobordError::Unclassifiable { .. } => EXIT_UNCLASSIFIABLE,
        CobordError::PatternNotMatched => EXIT_PATTERN,
        _ => EXIT_INVALID,
    };
    Report::fail(code, e.to_string())
}

fn cobordism_cmd(d: &Document) -> Result<Report, Report> {
    let p = polygon_arg(d)?;
    let (class, trace) = cobord4::cobordism_class(p).map_err(cobord_failure)?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "summand": s.summand.vecs().iter().map(|v| doc::vec_value(v.rep())).collect::<Vec<_>>(),
                "class": class_term_value(&s.class),
                "sign": s.sign.value(),
            })
        })
        .collect();
    let terminal = match &trace.terminal {
        Terminal::Triangle {
            triangle,
            class,
            sign,
        } => json!({
            "type": "triangle",
            "vecs": triangle.vecs().iter().map(|v| doc::vec_value(v.rep())).collect::<Vec<_>>(),
            "class": class_term_value(class),
            "sign": sign.value(),
        }),
        Terminal::Hirzebruch(k) => json!({ "type": "hirzebruch", "k": doc::int_value(k) }),
        Terminal::Product => json!({ "type": "product_of_spheres" }),
    };
    let data = json!({
        "class": cob_class_value(&class),
        "augmentation": doc::int_value(&class.augmentation()),
        "trace": { "steps": steps, "terminal": terminal },
    });
    let mut text = vec![format!("class: {class}")];
    for s in &trace.steps {
        text.push(format!(
            "blow down {}: {} -> {} sign({})",
            s.index, s.summand, s.class, s.sign
        ));
    }
    text.push(format!(
        "terminal: {}",
        terminal["type"].as_str().unwrap_or("")
    ));
    Ok(Report::ok(data, text))
}

fn witness_cmd(d: &Document) -> Result<Report, Report> {
    let p = polygon_arg(d)?;
    let w = cobord4::witness_polytope(p).map_err(cobord_failure)?;
    let r = cobord4::verify_witness(&w.iso, p);
    let data = json!({
        "kind": format!("{:?}", w.kind),
        "frame": matrix_value(&w.frame),
        "witness": Document::Isotropy(w.iso.clone()).to_value(),
        "verification": {
            "passed": r.passed(),
            "balanced": r.balanced(),
            "edge_simple": r.edge_simple,
            "isotropy_valid": r.isotropy_valid,
            "matching_sections": r.matching_sections,
            "plus": r.plus,
            "minus": r.minus,
            "triangle_sum": cob_class_value(&r.triangle_sum),
            "expected": r.expected.as_ref().map(cob_class_value),
            "boundary_total_zero": r.boundary_total_zero,
        },
    });
    let text = vec![
        format!(
            "witness {:?}: {} vertices, {} facets",
            w.kind,
            w.polytope().vertex_count(),
            w.polytope().facet_count()
        ),
        format!("matching sections: {:?}", r.matching_sections),
        format!(
            "triangles: {} x sign(+1), {} x sign(-1), sum {}",
            r.plus, r.minus, r.triangle_sum
        ),
        format!("verification: {}", if r.passed() { "pass" } else { "fail" }),
    ];
    let mut report = Report::ok(data, text);
    if let Some(e) = &r.model_error {
        report = report.note(e.clone());
    }
    Ok(if r.passed() {
        report
    } else {
        report.with_code(EXIT_INVALID)
    })
}

fn search_cmd(d: &Document, bound: u64) -> Result<Report, Report> {
    expect_kind(d, &["polytope"])?;
    let Document::Polytope(p) = d else {
        unreachable!()
    };
    Ok(match charmap::search_isotropy(p, bound) {
        IsotropySearch::Found(m) => {
            let v = Document::Isotropy(m).to_value();
            Report::ok(json!({ "found": true, "isotropy": v }), vec![doc::to_canonical_string(&v)])
        }
        IsotropySearch::Mod2Obstruction => Report::ok(
            json!({ "found": false, "certificate": "mod2" }),
            vec!["no isotropy function: no mod-2 isotropy function exists".to_string()],
        )
        .with_code(EXIT_INVALID)
        .note("every integral isotropy function reduces to a mod-2 one, and the exhaustive mod-2 search is empty"),
        IsotropySearch::NoneWithinBound(b) => Report::ok(
            json!({ "found": false, "bound": b }),
            vec![format!("no isotropy function with entries bounded by {b}")],
        )
        .with_code(EXIT_INVALID),
    })
}

fn equal_cmd(l: &Document, r: &Document, mode: Mode) -> Result<Report, Report> {
    let (p, q) = (polygon_arg(l)?, polygon_arg(r)?);
    let m = match mode {
        Mode::Strict => EqualityMode::Strict,
        Mode::Dihedral => EqualityMode::Dihedral,
    };
    let equal = cobord4::equivariantly_equal(p, q, m);
    let delta = cobord4::delta_equivalent(p, q);
    let data = json!({
        "equal": equal,
        "mode": format!("{mode:?}").to_lowercase(),
        "delta": delta.as_ref().map(matrix_value),
    });
    let mut text = vec![format!("equal ({mode:?}): {equal}")];
    if let Some(a) = &delta {
        text.push(format!("related by {a}"));
    }
    Ok(Report::ok(data, text))
}

fn catalog_cmd(name: CatalogName, size: usize) -> Result<Report, Report> {
    let p = match name {
        CatalogName::Simplex if size >= 1 => catalog::simplex(size),
        CatalogName::Polygon if size >= 3 => catalog::polygon(size),
        CatalogName::Simplex | CatalogName::Polygon => {
            return Err(Report::fail(EXIT_INVALID, format!("size {size} too small")))
        }
        CatalogName::Cube => catalog::cube(),
        CatalogName::Octahedron => catalog::octahedron(),
        CatalogName::SquarePyramid => catalog::square_pyramid(),
        CatalogName::PentagonalPyramid => catalog::pentagonal_pyramid(),
        CatalogName::Dodecahedron => catalog::dodecahedron(),
    };
    Ok(Report::document(Document::Polytope(p).to_value()))
}
