//! Per-graph classification reports and count-table sweeps.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cycles::{cycle_census, CensusJson};
use crate::error::{Error, Result};
use crate::families::{construct_for_tag, expected_maps, Expected, FamilyMap, FamilyMaps, Route, TShape};
use crate::graph::{build_rose_window, recognize_all, FamilyTag, RoseWindowParams};
use crate::maps::{
    classify, equivariance_holds, face_classes, faces_alternate, faces_are_symmetric_consistent,
    has_one_step_rotations, map_automorphisms, map_invariants, maps_isomorphic, no_shared_consecutive_edges,
    petrie_dual, FlagSystem, MapClass, MapOnGraph,
};
use crate::oracle::{exhaustive_oracle_with, oracle_cap, ClassifiedMap, DEFAULT_DECOMPOSITION_CAP};
use crate::par::Parallelism;
use crate::perm::Symmetry;
use crate::search::{automorphism_group, verify_arc_transitivity};

/// Output format of [`emit_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Which family the report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    I,
    Ii,
    Iii,
    Iv,
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(FamilyKind::I),
            "ii" => Ok(FamilyKind::Ii),
            "iii" => Ok(FamilyKind::Iii),
            "iv" => Ok(FamilyKind::Iv),
            other => Err(Error::InvalidParams(format!("unknown family {other:?}"))),
        }
    }
}

/// How much of the classification was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// The exhaustive oracle found exactly the constructed maps.
    OracleVerified,
    /// Constructed maps agree with the predicted table.
    ConstructionVerified,
    /// A cap was hit before `Aut(Γ)` could be listed; only the construction ran.
    ConstructAndVerifyOnly,
}

impl Completeness {
    fn describe(self) -> &'static str {
        match self {
            Completeness::OracleVerified => "verified complete (oracle)",
            Completeness::ConstructionVerified => "verified per construction",
            Completeness::ConstructAndVerifyOnly => "construct-and-verify only (cap reached)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Mismatch { details: Vec<String> },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        *self == Verdict::Pass
    }
}

/// Per-map property checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapChecks {
    pub flag_axioms: bool,
    /// `16n` flags on `R_n(a,r)`.
    pub flag_count: bool,
    pub free_action: bool,
    pub class_two_orbit_01: bool,
    pub faces_symmetric_consistent: bool,
    pub one_step_rotations: bool,
    pub klein_four_stabilizer: bool,
    pub faces_alternate: bool,
    pub no_shared_consecutive_edges: bool,
    pub equivariance: bool,
}

impl MapChecks {
    fn entries(&self) -> [(&'static str, bool); 10] {
        [
            ("flag axioms", self.flag_axioms),
            ("flag count", self.flag_count),
            ("free action", self.free_action),
            ("class 2_{0,1}", self.class_two_orbit_01),
            ("faces symmetric consistent", self.faces_symmetric_consistent),
            ("one-step rotations", self.one_step_rotations),
            ("Klein-four vertex stabilizer", self.klein_four_stabilizer),
            ("alternating faces", self.faces_alternate),
            ("no shared consecutive edges", self.no_shared_consecutive_edges),
            ("equivariance", self.equivariance),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.entries().iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.entries().iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect()
    }
}

/// Runs every property check on a classified map.
pub fn map_checks(cm: &ClassifiedMap) -> Result<MapChecks> {
    let m = &cm.map;
    let fs = FlagSystem::new(m)?;
    let group = &cm.aut.group;
    let free_action =
        cm.aut.elements.iter().all(|a| a.flags.is_identity() || (0..fs.len()).all(|x| a.flags.apply(x) != x));
    let klein_four_stabilizer = group.stabilizer(0)?.is_klein_four();
    let vertex_actions: Vec<_> = cm.aut.elements.iter().map(|a| a.vertices.clone()).collect();
    Ok(MapChecks {
        flag_axioms: fs.check_axioms().is_ok(),
        flag_count: fs.len() == 8 * m.graph().vertex_count(),
        free_action,
        class_two_orbit_01: cm.class.is_two_orbit_01(),
        faces_symmetric_consistent: faces_are_symmetric_consistent(m, group),
        one_step_rotations: has_one_step_rotations(m, group),
        klein_four_stabilizer,
        faces_alternate: faces_alternate(m, &face_classes(m, group))?,
        no_shared_consecutive_edges: no_shared_consecutive_edges(m)?,
        equivariance: equivariance_holds(m, &vertex_actions)?,
    })
}

/// What the Petrie operation does to a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetrialReport {
    pub polytopal: bool,
    /// Class of the Petrial when it is polytopal.
    pub class: Option<String>,
    /// Petrial of the Petrial is isomorphic to the map.
    pub involutive: Option<bool>,
    pub face_lengths: Vec<usize>,
}

pub fn petrial_report(m: &MapOnGraph, par: Parallelism) -> Result<PetrialReport> {
    let petrial = match petrie_dual(m) {
        Ok(p) => p,
        Err(Error::PetrialNotPolytopal) => {
            return Ok(PetrialReport { polytopal: false, class: None, involutive: None, face_lengths: Vec::new() })
        }
        Err(e) => return Err(e),
    };
    let aut = map_automorphisms(&petrial, par)?;
    let class = classify(&petrial, &aut)?;
    let involutive = match petrie_dual(&petrial) {
        Ok(back) => maps_isomorphic(&back, m)?,
        Err(Error::PetrialNotPolytopal) => false,
        Err(e) => return Err(e),
    };
    Ok(PetrialReport {
        polytopal: true,
        class: Some(class.to_string()),
        involutive: Some(involutive),
        face_lengths: petrial.distinct_face_lengths(),
    })
}

/// One map in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSummary {
    pub face_lengths: (usize, usize),
    pub class: String,
    #[serde(rename = "type")]
    pub map_type: String,
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    #[serde(rename = "F")]
    pub faces: usize,
    pub euler: i64,
    pub orientable: bool,
    pub aut_order: u64,
    pub t_shape: Option<TShape>,
    pub group: Option<String>,
    pub checks: MapChecks,
    pub petrial: PetrialReport,
}

pub fn summarize_map(fm: &FamilyMap, par: Parallelism) -> Result<MapSummary> {
    let cm = &fm.classified;
    let inv = map_invariants(&cm.map)?;
    Ok(MapSummary {
        face_lengths: fm.face_lengths,
        class: cm.class.to_string(),
        map_type: inv.map_type,
        vertices: inv.vertices,
        edges: inv.edges,
        faces: inv.faces,
        euler: inv.euler,
        orientable: inv.orientable,
        aut_order: cm.aut.order(),
        t_shape: fm.t_shape,
        group: fm.group_name.clone(),
        checks: map_checks(cm)?,
        petrial: petrial_report(&cm.map, par)?,
    })
}

/// Classification of the 2_{0,1} maps on one Rose Window graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: String,
    pub graph: String,
    pub params: RoseWindowParams,
    pub family: FamilyTag,
    pub matches: Vec<FamilyTag>,
    /// More than one family pattern matches.
    pub overlap: bool,
    /// Graph the maps were built on; isomorphic to `params`.
    pub representative: Option<RoseWindowParams>,
    pub route: Option<Route>,
    pub aut_order: Option<u64>,
    pub arc_transitive: Option<bool>,
    pub census: Option<CensusJson>,
    pub maps: Vec<MapSummary>,
    pub expected: Option<Expected>,
    pub completeness: Completeness,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub par: Parallelism,
    /// Cross-check against the exhaustive oracle when the graph is small enough.
    pub oracle: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { par: Parallelism::default(), oracle: true }
    }
}

pub fn classify_params(p: RoseWindowParams) -> Result<ClassificationReport> {
    classify_params_with(p, ClassifyOptions::default())
}

pub fn classify_params_with(p: RoseWindowParams, opts: ClassifyOptions) -> Result<ClassificationReport> {
    let rec = recognize_all(p);
    let graph = build_rose_window(p)?;
    let mut details = Vec::new();
    let mut completeness = Completeness::ConstructionVerified;

    let (aut_order, arc_transitive, census) = match automorphism_group(&graph) {
        Ok(aut) => {
            let at = verify_arc_transitivity(&graph, &aut);
            let census = if at {
                let c = cycle_census(&aut, &graph, opts.par)?;
                if !c.identity_holds() {
                    details.push(format!("s + 2c = {} + 2·{} is not 3", c.symmetric, c.chiral));
                }
                Some(c.to_json(&graph))
            } else {
                None
            };
            (Some(aut.order()), Some(at), census)
        }
        Err(Error::VertexCap { .. } | Error::GroupTooLarge { .. } | Error::EnumerationTooLarge { .. }) => {
            completeness = Completeness::ConstructAndVerifyOnly;
            (None, None, None)
        }
        Err(e) => return Err(e),
    };
    let recognized = rec.canonical != FamilyTag::NotArcTransitive;
    if let Some(at) = arc_transitive {
        if at != recognized {
            details.push(format!("search says arc-transitive = {at}, recognition says {recognized}"));
        }
    }

    let mut report = ClassificationReport {
        schema: crate::SCHEMA.to_string(),
        graph: p.to_string(),
        params: p,
        family: rec.canonical,
        overlap: rec.matches.len() > 1,
        matches: rec.matches,
        representative: None,
        route: None,
        aut_order,
        arc_transitive,
        census,
        maps: Vec::new(),
        expected: None,
        completeness,
        verdict: Verdict::Pass,
    };
    if !recognized {
        report.verdict = verdict(details);
        return Ok(report);
    }

    let fm = construct_for_tag(rec.canonical, p, opts.par)?;
    let expected = expected_maps(fm.tag, fm.params.n).expect("arc-transitive tag");
    if let Err(d) = expected.check(&fm.face_length_pairs()) {
        details.push(d);
    }
    for (i, a) in fm.maps.iter().enumerate() {
        for b in &fm.maps[i + 1..] {
            if maps_isomorphic(a.map(), b.map())? {
                details.push("two constructed maps are isomorphic".into());
            }
        }
    }
    let maps = fm.maps.iter().map(|m| summarize_map(m, opts.par)).collect::<Result<Vec<_>>>()?;
    for (i, m) in maps.iter().enumerate() {
        let failures = m.checks.failures();
        if !failures.is_empty() {
            details.push(format!("map {}: {}", i + 1, failures.join(", ")));
        }
    }
    if opts.oracle && completeness != Completeness::ConstructAndVerifyOnly && 2 * fm.params.n <= oracle_cap() {
        match oracle_agrees(&fm, opts.par) {
            Ok(None) => report.completeness = Completeness::OracleVerified,
            Ok(Some(d)) => details.push(d),
            Err(Error::EnumerationTooLarge { .. } | Error::GroupTooLarge { .. } | Error::VertexCap { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    report.representative = Some(fm.params);
    report.route = Some(fm.route);
    report.maps = maps;
    report.expected = Some(expected);
    report.verdict = verdict(details);
    Ok(report)
}

fn verdict(details: Vec<String>) -> Verdict {
    if details.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Mismatch { details }
    }
}

/// `None` when the oracle finds exactly the constructed maps up to isomorphism.
fn oracle_agrees(fm: &FamilyMaps, par: Parallelism) -> Result<Option<String>> {
    let graph = build_rose_window(fm.params)?;
    let found = exhaustive_oracle_with(&graph, oracle_cap(), DEFAULT_DECOMPOSITION_CAP, par)?;
    if found.len() != fm.maps.len() {
        return Ok(Some(format!("oracle found {} maps, construction {}", found.len(), fm.maps.len())));
    }
    for o in &found {
        let mut hit = false;
        for m in &fm.maps {
            if maps_isomorphic(&o.map, m.map())? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(Some("oracle found a map the construction missed".into()));
        }
    }
    Ok(None)
}

/// Renders a report in the requested format.
pub fn emit_report(r: &ClassificationReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).map_err(|e| Error::Consistency(e.to_string())),
        ReportFormat::Csv => report_csv(r),
        ReportFormat::Text => Ok(report_text(r)),
    }
}

fn report_csv(r: &ClassificationReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Consistency(e.to_string());
    w.write_record(["n", "a", "r", "family", "len1", "len2", "class", "euler"]).map_err(csv_err)?;
    for m in &r.maps {
        w.write_record([
            r.params.n.to_string(),
            r.params.a.to_string(),
            r.params.r.to_string(),
            r.family.label().to_string(),
            m.face_lengths.0.to_string(),
            m.face_lengths.1.to_string(),
            m.class.clone(),
            m.euler.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Consistency(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Consistency(e.to_string()))
}

fn report_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}  family {}", r.graph, r.family.label());
    if r.overlap {
        let labels: Vec<&str> = r.matches.iter().map(FamilyTag::label).collect();
        let _ = write!(s, " (matches {})", labels.join(", "));
    }
    if let Some(rep) = r.representative.filter(|rep| *rep != r.params) {
        let _ = write!(s, ", built on {rep}");
    }
    s.push('\n');
    if let Some(order) = r.aut_order {
        let _ = writeln!(s, "|Aut| = {order}");
    }
    if let Some(c) = &r.census {
        let _ =
            writeln!(s, "consistent cycles: s = {}, c = {}, s + 2c = 3: {}", c.symmetric, c.chiral, c.identity_holds);
        for o in &c.orbits {
            let _ = writeln!(s, "  length {} {:?} [{}]", o.length, o.chirality, o.representative.join(" "));
        }
    }
    match &r.expected {
        Some(e) => {
            let _ = writeln!(s, "maps: {} (expected {})", r.maps.len(), e.count);
        }
        None => {
            let _ = writeln!(s, "maps: none (not arc-transitive)");
        }
    }
    for (i, m) in r.maps.iter().enumerate() {
        let _ = write!(
            s,
            "  map {}: class {}, faces {}, {}, type {}, V={} E={} F={}, euler {}, {}, |Aut(M)| = {}",
            i + 1,
            m.class,
            m.face_lengths.0,
            m.face_lengths.1,
            m.map_type,
            m.vertices,
            m.edges,
            m.faces,
            m.euler,
            if m.orientable { "orientable" } else { "non-orientable" },
            m.aut_order,
        );
        if let Some(t) = m.t_shape {
            let _ = write!(s, ", T = {t:?}");
        }
        if let Some(g) = &m.group {
            let _ = write!(s, ", Aut(M) = {g}");
        }
        match &m.petrial.class {
            Some(c) => {
                let _ = write!(s, ", Petrial {c}");
            }
            None => s.push_str(", Petrial not polytopal"),
        }
        s.push('\n');
    }
    match &r.verdict {
        Verdict::Pass => {
            let _ = writeln!(s, "verdict: pass, {}", r.completeness.describe());
        }
        Verdict::Mismatch { details } => {
            let _ = writeln!(s, "verdict: MISMATCH, {}", r.completeness.describe());
            for d in details {
                let _ = writeln!(s, "  {d}");
            }
        }
    }
    s
}

/// One graph of a table sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub graph: String,
    pub family: FamilyTag,
    /// The family's own parameter: `n` for (i) and (ii), `m` for (iii) and (iv).
    pub parameter: usize,
    pub expected: Expected,
    pub found: Vec<(usize, usize)>,
    pub checks_hold: bool,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub schema: String,
    pub family: FamilyKind,
    pub max: usize,
    pub rows: Vec<TableRow>,
    pub all_pass: bool,
}

impl TableSummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let found: Vec<String> = row.found.iter().map(|(a, b)| format!("{a},{b}")).collect();
            let _ = write!(
                s,
                "{:<18} {:>3}  expected {}  found {} [{}]  {}",
                row.graph,
                row.parameter,
                row.expected.count,
                row.found.len(),
                found.join(" "),
                if row.pass { "ok" } else { "MISMATCH" },
            );
            if let Some(e) = &row.error {
                let _ = write!(s, " ({e})");
            }
            s.push('\n');
        }
        let bad = self.rows.iter().filter(|r| !r.pass).count();
        let _ = writeln!(s, "{} graphs, {} mismatches", self.rows.len(), bad);
        s
    }
}

/// Graphs of one family up to its parameter bound `max`, in increasing order.
/// Families (iii) and (iv) stop at the automorphism-search vertex cap.
pub fn family_graphs(family: FamilyKind, max: usize) -> Result<Vec<(FamilyTag, RoseWindowParams, usize)>> {
    let cap = crate::graph::vertex_cap();
    let mut out = Vec::new();
    match family {
        FamilyKind::I => {
            for n in 3..=max {
                let tag = FamilyTag::FamilyI;
                out.push((tag, tag.canonical_params(n).expect("n ≥ 3"), n));
            }
        }
        FamilyKind::Ii => {
            for m in 3..=max {
                let tag = FamilyTag::FamilyII { m };
                out.push((tag, tag.canonical_params(2 * m).expect("m ≥ 3"), m));
            }
        }
        FamilyKind::Iii => {
            for m in 3..=max.min(cap / 4) {
                let mut tags = Vec::new();
                for b in 1..m {
                    for r in [1, m - 1] {
                        let Ok(p) = RoseWindowParams::new(2 * m, 2 * b as i64, r as i64) else { continue };
                        let rec = recognize_all(p);
                        if let FamilyTag::FamilyIII { .. } = rec.canonical {
                            if !tags.contains(&rec.canonical) {
                                tags.push(rec.canonical);
                                let canon = rec.canonical.canonical_params(2 * m).expect("family (iii)");
                                out.push((rec.canonical, canon, m));
                            }
                        }
                    }
                }
            }
        }
        FamilyKind::Iv => {
            for m in 1..=max.min(cap / 24) {
                for d in [m, 11 * m] {
                    let tag = FamilyTag::FamilyIV { m, d };
                    out.push((tag, tag.canonical_params(12 * m).expect("m ≥ 1"), m));
                }
            }
        }
    }
    Ok(out)
}

/// Checks a family's predicted table for every parameter up to `max`.
/// Rows run in parallel; the result does not depend on the schedule.
pub fn verify_theorem_tables(family: FamilyKind, max: usize, par: Parallelism) -> Result<TableSummary> {
    let graphs = family_graphs(family, max)?;
    let rows = par.map(&graphs, |&(tag, p, parameter)| table_row(tag, p, parameter));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(TableSummary { schema: crate::SCHEMA.to_string(), family, max, rows, all_pass })
}

fn table_row(tag: FamilyTag, p: RoseWindowParams, parameter: usize) -> Result<TableRow> {
    let expected = expected_maps(tag, p.n).expect("arc-transitive tag");
    let mut row = TableRow {
        graph: p.to_string(),
        family: tag,
        parameter,
        expected,
        found: Vec::new(),
        checks_hold: false,
        pass: false,
        error: None,
    };
    let fm = match construct_for_tag(tag, p, Parallelism::Sequential) {
        Ok(fm) => fm,
        Err(e @ (Error::VertexCap { .. } | Error::GroupTooLarge { .. } | Error::EnumerationTooLarge { .. })) => {
            row.error = Some(e.to_string());
            return Ok(row);
        }
        Err(e) => return Err(e),
    };
    row.found = fm.face_length_pairs();
    let mut checks_hold = true;
    for m in &fm.maps {
        checks_hold &= map_checks(&m.classified)?.all_hold();
    }
    row.checks_hold = checks_hold;
    match row.expected.check(&row.found) {
        Ok(()) => row.pass = checks_hold,
        Err(d) => row.error = Some(d),
    }
    if !checks_hold && row.error.is_none() {
        row.error = Some("property check failed".into());
    }
    Ok(row)
}

/// Class label of the Petrial of a 2_{0,1} map.
pub fn petrial_class_of_two_orbit_01() -> MapClass {
    MapClass::two_orbit(&[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, a: i64, r: i64) -> RoseWindowParams {
        RoseWindowParams::new(n, a, r).unwrap()
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!(matches!("yaml".parse::<ReportFormat>(), Err(Error::UnknownFormat(_))));
    }

    #[test]
    fn k44_report() {
        let r = classify_params(params(4, 2, 1)).unwrap();
        assert!(r.verdict.is_pass(), "{:?}", r.verdict);
        assert_eq!(r.completeness, Completeness::OracleVerified);
        assert_eq!(r.maps.len(), 1);
        assert_eq!(r.maps[0].face_lengths, (4, 8));
        let text = emit_report(&r, ReportFormat::Text).unwrap();
        assert!(text.contains("class 2_{0,1}"));
        assert!(text.contains("faces 4, 8"));
    }

    #[test]
    fn json_round_trip() {
        let r = classify_params(params(6, 2, 1)).unwrap();
        let json = emit_report(&r, ReportFormat::Json).unwrap();
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_rows() {
        let r = classify_params(params(6, 2, 1)).unwrap();
        let csv = emit_report(&r, ReportFormat::Csv).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,a,r,family,len1,len2,class,euler"));
        assert_eq!(lines.count(), r.maps.len());
    }

    #[test]
    fn not_arc_transitive() {
        let r = classify_params(params(7, 3, 2)).unwrap();
        assert_eq!(r.family, FamilyTag::NotArcTransitive);
        assert_eq!(r.arc_transitive, Some(false));
        assert!(r.maps.is_empty());
        assert!(r.verdict.is_pass());
    }

    #[test]
    fn petrial_of_small_maps() {
        let r = classify_params(params(6, 2, 1)).unwrap();
        let want = petrial_class_of_two_orbit_01().to_string();
        for m in r.maps.iter().filter(|m| m.petrial.polytopal) {
            assert_eq!(m.petrial.class.as_deref(), Some(want.as_str()));
            assert_eq!(m.petrial.involutive, Some(true));
        }
    }

    #[test]
    fn table_sweep_is_deterministic() {
        let a = verify_theorem_tables(FamilyKind::I, 8, Parallelism::Parallel).unwrap();
        let b = verify_theorem_tables(FamilyKind::I, 8, Parallelism::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(a.all_pass, "{}", a.to_text());
    }
}
