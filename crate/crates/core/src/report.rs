//! Assembling bounds into reports, and rendering them as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bands::{
    band_lower_bounds, band_upper_bound, braid_band_bound, braid_flat_bound, minimize_flat_bound,
    round_to_parity, BoundKind, BoundWitness, Quantity, DEFAULT_BUDGET,
};
use crate::braid::{closure_components, BraidWord};
use crate::conway::{
    band_index_one_check, conway_degree_genus_bound, conway_from_seifert, flat2_form_check,
    seifert_matrix_from_braid, ConwayPolynomial,
};
use crate::error::{Error, Result};
use crate::pretzel::{corollary_band_index, theta_graph, trace_components, CorollaryInput, PretzelSpec};
use crate::seifert_graph::{bipartition, euler_data, graph_from_braid, SignedMultigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Genus `g(L)` when known from elsewhere.
    pub known_genus: Option<u64>,
    /// Spanning-tree budget for exhaustive flat-bound minimization.
    pub budget: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { known_genus: None, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Interval for one index, with every witness that produced or tightened it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexBounds {
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub exact: bool,
    pub witnesses: Vec<BoundWitness>,
}

impl IndexBounds {
    fn add(&mut self, w: BoundWitness) {
        match w.kind {
            BoundKind::Lower => self.lower = Some(self.lower.map_or(w.value, |v| v.max(w.value))),
            BoundKind::Upper => self.upper = Some(self.upper.map_or(w.value, |v| v.min(w.value))),
        }
        self.witnesses.push(w);
    }

    /// Push the lower bound past excluded values, re-rounding by parity after
    /// each raise.
    fn exclude(&mut self, quantity: Quantity, l: usize, excluded: &[(u64, String)]) {
        let Some(mut lower) = self.lower else { return };
        while let Some((value, why)) = excluded.iter().find(|(v, _)| *v == lower) {
            let raised = round_to_parity(value + 1, l);
            self.add(BoundWitness::lower(
                quantity,
                raised,
                format!("{why}, so {quantity} != {value}; next value with components = n + 1 (mod 2) is {raised}"),
            ));
            lower = raised;
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        self.lower.is_none_or(|lo| lo <= value) && self.upper.is_none_or(|hi| value <= hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandIndexReport {
    pub input: String,
    pub l: usize,
    pub s: Option<usize>,
    pub c: Option<usize>,
    pub canonical_genus: Option<usize>,
    pub conway: Option<ConwayPolynomial>,
    pub b: IndexBounds,
    pub fb: IndexBounds,
    pub notes: Vec<String>,
}

impl BandIndexReport {
    fn new(input: String, l: usize) -> Self {
        BandIndexReport {
            input,
            l,
            s: None,
            c: None,
            canonical_genus: None,
            conway: None,
            b: IndexBounds::default(),
            fb: IndexBounds::default(),
            notes: Vec::new(),
        }
    }

    /// Set exactness flags and record any inconsistency as a note.
    fn finish(&mut self) {
        let l = self.l;
        for (name, bounds) in [("B", &mut self.b), ("FB", &mut self.fb)] {
            bounds.exact = bounds.lower.is_some() && bounds.lower == bounds.upper;
            if let (Some(lo), Some(hi)) = (bounds.lower, bounds.upper) {
                if lo > hi {
                    self.notes.push(format!(
                        "InvalidInput: {name} lower bound {lo} exceeds upper bound {hi}; the input data are inconsistent"
                    ));
                }
                if (hi + l as u64).is_multiple_of(2) {
                    self.notes.push(format!(
                        "parity violation: {name} upper bound {hi} with {l} components breaks components = n + 1 (mod 2)"
                    ));
                }
            }
        }
        if !self.fb.exact {
            let interval = match (self.fb.lower, self.fb.upper) {
                (Some(lo), Some(hi)) => format!("[{lo}, {hi}]"),
                (Some(lo), None) => format!("[{lo}, ?]"),
                _ => "unknown".to_string(),
            };
            self.notes.push(format!(
                "FB not determined: interval {interval}; upper bounds come only from braid discs and spanning-tree discs, and a hand-built flat banded surface may use fewer bands (the figure-eight knot has one with 4)"
            ));
        }
    }

    pub fn is_consistent(&self) -> bool {
        [&self.b, &self.fb].iter().all(|x| match (x.lower, x.upper) {
            (Some(lo), Some(hi)) => lo <= hi,
            _ => true,
        })
    }
}

fn genus_witnesses(report: &mut BandIndexReport, known_genus: Option<u64>) {
    let Some(g) = known_genus else { return };
    let value = 2 * g + report.l as u64 - 1;
    if report.b.upper == Some(value) {
        report.notes.push(format!(
            "genus equals canonical genus ({g}): B = 2g + l - 1 = {value}"
        ));
    }
}

/// Full analysis of a closed braid.
pub fn analyze_braid(w: &BraidWord, opts: &AnalysisOptions) -> Result<BandIndexReport> {
    let g = graph_from_braid(w)?;
    let l = closure_components(w);
    let mut report = BandIndexReport::new(format!("braid {w}"), l);
    let euler = euler_data(&g, l).map_err(|e| Error::Internal(format!("braid surface: {e}")))?;
    report.s = Some(euler.s);
    report.c = Some(euler.c);
    report.canonical_genus = Some(euler.canonical_genus);

    let via_graph = band_upper_bound(&g)?;
    let via_braid = braid_band_bound(w)?;
    if via_graph.value != via_braid.value {
        return Err(Error::Internal("braid and graph band bounds disagree".into()));
    }
    report.b.add(via_braid);
    report.b.add(via_graph);

    report.fb.add(braid_flat_bound(w)?);
    let (tree_bound, _) = minimize_flat_bound(&g, opts.budget)?;
    report.fb.add(tree_bound);

    let conway = conway_from_seifert(&seifert_matrix_from_braid(w)?)?;
    let conway_genus = conway_degree_genus_bound(&conway, l);
    if let Some(g) = opts.known_genus {
        if g < conway_genus {
            report.notes.push(format!(
                "InvalidInput: supplied genus {g} is below the Conway degree bound {conway_genus}"
            ));
        }
    }
    let genus_lower = opts.known_genus.map_or(conway_genus, |g| g.max(conway_genus));
    let (b_low, fb_low) = band_lower_bounds(l, conway.degree(), Some(genus_lower));
    report.b.add(b_low);
    report.fb.add(fb_low);

    let mut fb_excluded = Vec::new();
    if l == 1 && flat2_form_check(&conway).is_none() {
        fb_excluded.push((2, format!("Conway polynomial {conway} is not of the form 1 - k(k+1)z^2")));
    }
    if l == 2 && !conway.is_zero() {
        fb_excluded.push((1, "nonzero Conway polynomial, so not the trivial 2-component link".to_string()));
    }
    report.fb.exclude(Quantity::FB, l, &fb_excluded);

    if let Some(n) = band_index_one_check(w) {
        if n.abs() == 1 {
            let source = format!(
                "freely reduces to (sigma_1)^{}, a Hopf link: one band with one full twist",
                2 * n
            );
            report.b.add(BoundWitness::upper(Quantity::B, 1, source.clone()));
            report.b.add(BoundWitness::lower(Quantity::B, 1, source));
        } else {
            report.notes.push(format!(
                "word reduces to (sigma_1)^{}; band index 1 holds for its antiparallel orientation, not for this braid closure",
                2 * n
            ));
        }
    }
    genus_witnesses(&mut report, opts.known_genus);
    report.conway = Some(conway);
    report.finish();
    Ok(report)
}

/// Analysis of a user-supplied Seifert graph with `l` boundary components.
pub fn analyze_graph(g: &SignedMultigraph, l: usize, opts: &AnalysisOptions) -> Result<BandIndexReport> {
    analyze_graph_as(g, l, opts, format!("graph with {} vertices, {} edges", g.vertex_count(), g.edge_count()))
}

fn analyze_graph_as(
    g: &SignedMultigraph,
    l: usize,
    opts: &AnalysisOptions,
    input: String,
) -> Result<BandIndexReport> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let euler = euler_data(g, l).map_err(|e| {
        Error::InvalidInput(format!("{l} components is incompatible with this surface: {e}"))
    })?;
    let mut report = BandIndexReport::new(input, l);
    report.s = Some(euler.s);
    report.c = Some(euler.c);
    report.canonical_genus = Some(euler.canonical_genus);

    report.b.add(band_upper_bound(g)?);
    let (b_low, fb_low) = band_lower_bounds(l, None, opts.known_genus);
    report.b.add(b_low);
    report.fb.add(fb_low);
    if bipartition(g)?.is_some() {
        let (tree_bound, _) = minimize_flat_bound(g, opts.budget)?;
        report.fb.add(tree_bound);
    } else {
        report
            .notes
            .push("flat bounds omitted: graph is not bipartite, so it is not the graph of an orientable canonical surface".into());
    }
    report.notes.push("no Conway polynomial: no braid is available for this input".into());
    genus_witnesses(&mut report, opts.known_genus);
    report.finish();
    Ok(report)
}

/// Analysis of a pretzel link: all-even pretzels go through their theta graph,
/// pretzel knots with one even parameter through the closed form.
pub fn analyze_pretzel(spec: &PretzelSpec, opts: &AnalysisOptions) -> Result<BandIndexReport> {
    let l = trace_components(spec);
    if spec.is_all_even() {
        let g = theta_graph(spec, false)?;
        let mut report = analyze_graph_as(&g, l, opts, format!("pretzel {spec}"))?;
        report.notes.retain(|n| !n.starts_with("no Conway"));
        report.notes.push(format!(
            "Seifert graph: theta graph of {spec}, {l} components by strand tracing"
        ));
        return Ok(report);
    }
    let input = CorollaryInput::from_spec(spec)?;
    if l != 1 {
        return Err(Error::Internal(format!("{spec} has one even parameter but traces to {l} components")));
    }
    let (value, case) = corollary_band_index(&input)?;
    let value = value as u64;
    let mut report = BandIndexReport::new(format!("pretzel {spec}"), l);
    let source = format!(
        "pretzel knot closed form, case {}: alpha = {}, sign(p1) = {}, delta = {} gives {value}",
        case.label(),
        input.alpha(),
        input.b(),
        input.delta()
    );
    report.b.add(BoundWitness::upper(Quantity::B, value, source.clone()));
    report.b.add(BoundWitness::lower(Quantity::B, value, source));
    // a flat banded surface is a banded surface, and g = B/2 for these knots
    let genus = value / 2;
    let (_, fb_low) = band_lower_bounds(l, None, Some(opts.known_genus.unwrap_or(genus).max(genus)));
    report.fb.add(fb_low);
    report.notes.push("FB upper bound unavailable: no braid or Seifert graph for this input".into());
    report.finish();
    Ok(report)
}

#[derive(Serialize)]
struct JsonWitness<'a> {
    kind: BoundKind,
    value: u64,
    source: &'a str,
}

#[derive(Serialize)]
struct JsonBounds<'a> {
    lower: Option<u64>,
    upper: Option<u64>,
    exact: bool,
    witnesses: Vec<JsonWitness<'a>>,
}

#[derive(Serialize)]
struct JsonSeifert {
    s: usize,
    c: usize,
    canonical_genus: usize,
}

#[derive(Serialize)]
struct JsonConway<'a> {
    coeffs: &'a [i64],
}

#[derive(Serialize)]
struct JsonReport<'a> {
    input: &'a str,
    l: usize,
    seifert: Option<JsonSeifert>,
    conway: Option<JsonConway<'a>>,
    #[serde(rename = "B")]
    b: JsonBounds<'a>,
    #[serde(rename = "FB")]
    fb: JsonBounds<'a>,
    notes: &'a [String],
}

fn json_bounds(b: &IndexBounds) -> JsonBounds<'_> {
    JsonBounds {
        lower: b.lower,
        upper: b.upper,
        exact: b.exact,
        witnesses: b
            .witnesses
            .iter()
            .map(|w| JsonWitness { kind: w.kind, value: w.value, source: &w.source })
            .collect(),
    }
}

fn text_bounds(out: &mut String, name: &str, b: &IndexBounds) {
    let show = |v: Option<u64>| v.map_or("?".to_string(), |v| v.to_string());
    let _ = write!(out, "{name:<3} in [{}, {}]", show(b.lower), show(b.upper));
    if b.exact {
        let _ = write!(out, "  exact");
    }
    out.push('\n');
    for w in &b.witnesses {
        let kind = match w.kind {
            BoundKind::Lower => ">=",
            BoundKind::Upper => "<=",
        };
        let _ = writeln!(out, "    {kind} {:<4} {}", w.value, w.source);
    }
}

pub fn render(report: &BandIndexReport, format: Format) -> String {
    match format {
        Format::Json => {
            let seifert = match (report.s, report.c, report.canonical_genus) {
                (Some(s), Some(c), Some(canonical_genus)) => Some(JsonSeifert { s, c, canonical_genus }),
                _ => None,
            };
            let json = JsonReport {
                input: &report.input,
                l: report.l,
                seifert,
                conway: report.conway.as_ref().map(|p| JsonConway { coeffs: p.coeffs() }),
                b: json_bounds(&report.b),
                fb: json_bounds(&report.fb),
                notes: &report.notes,
            };
            let mut text = serde_json::to_string_pretty(&json).expect("report serializes");
            text.push('\n');
            text
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "input: {}", report.input);
            let _ = writeln!(out, "components: {}", report.l);
            if let (Some(s), Some(c), Some(g)) = (report.s, report.c, report.canonical_genus) {
                let _ = writeln!(out, "Seifert surface: s = {s}, c = {c}, genus = {g}");
            }
            if let Some(p) = &report.conway {
                let _ = writeln!(out, "Conway polynomial: {p}");
            }
            text_bounds(&mut out, "B", &report.b);
            text_bounds(&mut out, "FB", &report.fb);
            if !report.notes.is_empty() {
                out.push_str("notes:\n");
                for n in &report.notes {
                    let _ = writeln!(out, "  - {n}");
                }
            }
            out
        }
    }
}

#[derive(Serialize)]
struct JsonErrorBody<'a> {
    code: &'a str,
    message: String,
}

#[derive(Serialize)]
struct JsonError<'a> {
    error: JsonErrorBody<'a>,
}

pub fn render_error(err: &Error, format: Format) -> String {
    match format {
        Format::Json => {
            let body = JsonError { error: JsonErrorBody { code: err.code(), message: err.to_string() } };
            let mut text = serde_json::to_string_pretty(&body).expect("error serializes");
            text.push('\n');
            text
        }
        Format::Text => format!("error [{}]: {err}\n", err.code()),
    }
}
