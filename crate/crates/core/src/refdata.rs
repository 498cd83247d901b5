//! Published reference tables, embedded as TSV, and comparison of computed
//! records against them.
//!
//! Every asset has one header line; `-` marks a blank cell and fractions are
//! written `p/q`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::MetricsRecord;
use crate::numsys::SubsetKind;

const APPENDIX_A: &str = include_str!("../data/appendix_a.tsv");
const APPENDIX_B: &str = include_str!("../data/appendix_b.tsv");
const TABLE_1_1: &str = include_str!("../data/table_1_1.tsv");
const TABLE_3_1: &str = include_str!("../data/table_3_1.tsv");
const TABLE_5_1: &str = include_str!("../data/table_5_1.tsv");
const CONSTANTS: &str = include_str!("../data/constants.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    #[serde(rename = "table1_1")]
    Table1_1,
    #[serde(rename = "table3_1")]
    Table3_1,
    #[serde(rename = "table5_1")]
    Table5_1,
    #[serde(rename = "appendixA")]
    AppendixA,
    #[serde(rename = "appendixB")]
    AppendixB,
}

impl TableId {
    pub const ALL: [TableId; 5] = [
        TableId::Table1_1,
        TableId::Table3_1,
        TableId::Table5_1,
        TableId::AppendixA,
        TableId::AppendixB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Table1_1 => "table1_1",
            TableId::Table3_1 => "table3_1",
            TableId::Table5_1 => "table5_1",
            TableId::AppendixA => "appendixA",
            TableId::AppendixB => "appendixB",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown reference table {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixARow {
    pub n: u64,
    pub diameter: Option<usize>,
    pub dim: usize,
    pub normalized_volume: BigInt,
    pub n_vertices: usize,
    pub n_edges: Option<usize>,
    pub n_facets: Option<usize>,
    pub facet_width: Option<i64>,
    pub n_hilbert_basis: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixBRow {
    pub n: u64,
    pub f_vector: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table11Row {
    pub n: u64,
    pub dim: usize,
    pub shape: String,
    pub n_lattice_points: usize,
    pub vertices: Vec<Vec<i64>>,
    pub vol: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table31Row {
    pub n: u64,
    pub dim: usize,
    pub normalized_volume: BigInt,
    /// `None` for the single point, which the table leaves blank.
    pub degree: Option<usize>,
    /// Printed coefficients `h_0* .. h_deg*`.
    pub h_star: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table51Row {
    pub subset: SubsetKind,
    pub n: u64,
    pub vol: BigRational,
    pub dim: usize,
}

/// Printed digits of a subset's volume-sum constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRow {
    pub subset: SubsetKind,
    pub digits: String,
    pub ratio_to_e: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReferenceTable {
    Table1_1(Vec<Table11Row>),
    Table3_1(Vec<Table31Row>),
    Table5_1(Vec<Table51Row>),
    AppendixA(Vec<AppendixARow>),
    AppendixB(Vec<AppendixBRow>),
}

impl ReferenceTable {
    pub fn id(&self) -> TableId {
        match self {
            ReferenceTable::Table1_1(_) => TableId::Table1_1,
            ReferenceTable::Table3_1(_) => TableId::Table3_1,
            ReferenceTable::Table5_1(_) => TableId::Table5_1,
            ReferenceTable::AppendixA(_) => TableId::AppendixA,
            ReferenceTable::AppendixB(_) => TableId::AppendixB,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ReferenceTable::Table1_1(r) => r.len(),
            ReferenceTable::Table3_1(r) => r.len(),
            ReferenceTable::Table5_1(r) => r.len(),
            ReferenceTable::AppendixA(r) => r.len(),
            ReferenceTable::AppendixB(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Values of `N` with a row for `subset`.
    pub fn covered(&self, subset: SubsetKind) -> Vec<u64> {
        let naturals = subset == SubsetKind::Naturals;
        match self {
            ReferenceTable::Table1_1(r) if naturals => r.iter().map(|x| x.n).collect(),
            ReferenceTable::Table3_1(r) if naturals => r.iter().map(|x| x.n).collect(),
            ReferenceTable::AppendixA(r) if naturals => r.iter().map(|x| x.n).collect(),
            ReferenceTable::AppendixB(r) if naturals => r.iter().map(|x| x.n).collect(),
            ReferenceTable::Table5_1(r) => {
                r.iter().filter(|x| x.subset == subset).map(|x| x.n).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// Tab-separated rows after the header, with 1-based line numbers.
fn rows<'a>(
    table: &'static str,
    text: &'a str,
    header: &[&str],
) -> Result<Vec<(usize, Vec<&'a str>)>> {
    let mut lines = text.lines().enumerate();
    let head: Vec<&str> = lines
        .next()
        .map(|(_, l)| l.split('\t').collect())
        .unwrap_or_default();
    if head != header {
        return Err(Error::Reference {
            table,
            line: 1,
            msg: format!("header {head:?} does not match {header:?}"),
        });
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != header.len() {
            return Err(Error::Reference {
                table,
                line: i + 1,
                msg: format!("{} cells, expected {}", cells.len(), header.len()),
            });
        }
        out.push((i + 1, cells));
    }
    Ok(out)
}

struct Cells<'a> {
    table: &'static str,
    line: usize,
    cells: Vec<&'a str>,
    header: &'a [&'a str],
}

impl Cells<'_> {
    fn err(&self, col: usize, what: &str) -> Error {
        Error::Reference {
            table: self.table,
            line: self.line,
            msg: format!("column {}: {:?} is not {what}", self.header[col], self.cells[col]),
        }
    }

    fn opt<T: FromStr>(&self, col: usize) -> Result<Option<T>> {
        match self.cells[col] {
            "-" => Ok(None),
            s => s.parse().map(Some).map_err(|_| self.err(col, "a number")),
        }
    }

    fn req<T: FromStr>(&self, col: usize) -> Result<T> {
        self.opt(col)?.ok_or_else(|| self.err(col, "present"))
    }

    fn text(&self, col: usize) -> &str {
        self.cells[col]
    }
}

fn parse_with<T>(
    table: &'static str,
    text: &str,
    header: &[&str],
    mut f: impl FnMut(&Cells<'_>) -> Result<T>,
) -> Result<Vec<T>> {
    rows(table, text, header)?
        .into_iter()
        .map(|(line, cells)| {
            f(&Cells {
                table,
                line,
                cells,
                header,
            })
        })
        .collect()
}

/// Checks that row keys run `1, 2, 3, ...`.
fn check_consecutive(table: &'static str, keys: impl Iterator<Item = u64>) -> Result<()> {
    for (i, n) in keys.enumerate() {
        if n != i as u64 + 1 {
            return Err(Error::Reference {
                table,
                line: i + 2,
                msg: format!("row for N = {n} where N = {} was expected", i + 1),
            });
        }
    }
    Ok(())
}

pub fn parse_appendix_a(text: &str) -> Result<Vec<AppendixARow>> {
    const H: [&str; 9] = [
        "N", "diameter", "dim", "Vol", "n_vertices", "n_edges", "n_facets", "facet_width",
        "n_hilbert_basis",
    ];
    let rows = parse_with("appendixA", text, &H, |c| {
        Ok(AppendixARow {
            n: c.req(0)?,
            diameter: c.opt(1)?,
            dim: c.req(2)?,
            normalized_volume: c.req(3)?,
            n_vertices: c.req(4)?,
            n_edges: c.opt(5)?,
            n_facets: c.opt(6)?,
            facet_width: c.opt(7)?,
            n_hilbert_basis: c.opt(8)?,
        })
    })?;
    check_consecutive("appendixA", rows.iter().map(|r| r.n))?;
    Ok(rows)
}

pub fn parse_appendix_b(text: &str) -> Result<Vec<AppendixBRow>> {
    let header: Vec<String> = std::iter::once("N".to_string())
        .chain((0..19).map(|i| format!("f{i}")))
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = parse_with("appendixB", text, &header, |c| {
        let mut f = Vec::new();
        let mut ended = false;
        for col in 1..c.cells.len() {
            match c.opt::<u64>(col)? {
                Some(_) if ended => return Err(c.err(col, "blank after a blank")),
                Some(v) => f.push(v),
                None => ended = true,
            }
        }
        Ok(AppendixBRow { n: c.req(0)?, f_vector: f })
    })?;
    check_consecutive("appendixB", rows.iter().map(|r| r.n))?;
    Ok(rows)
}

fn parse_vertex_list(c: &Cells<'_>, col: usize) -> Result<Vec<Vec<i64>>> {
    c.text(col)
        .split('|')
        .map(|v| {
            let inner = v
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| c.err(col, "a list of (x,y,...) vertices"))?;
            if inner.is_empty() {
                return Ok(Vec::new());
            }
            inner
                .split(',')
                .map(|x| x.parse().map_err(|_| c.err(col, "an integer vertex")))
                .collect()
        })
        .collect()
}

pub fn parse_table_1_1(text: &str) -> Result<Vec<Table11Row>> {
    const H: [&str; 6] = ["N", "dim", "shape", "n_lattice_points", "vertices", "vol"];
    let rows = parse_with("table1_1", text, &H, |c| {
        Ok(Table11Row {
            n: c.req(0)?,
            dim: c.req(1)?,
            shape: c.text(2).to_string(),
            n_lattice_points: c.req(3)?,
            vertices: parse_vertex_list(c, 4)?,
            vol: c.req(5)?,
        })
    })?;
    check_consecutive("table1_1", rows.iter().map(|r| r.n))?;
    Ok(rows)
}

pub fn parse_table_3_1(text: &str) -> Result<Vec<Table31Row>> {
    const H: [&str; 9] = ["N", "dim", "Vol", "deg", "h0", "h1", "h2", "h3", "h4"];
    let rows = parse_with("table3_1", text, &H, |c| {
        let degree: Option<usize> = c.opt(3)?;
        let mut h = Vec::new();
        for col in 4..9 {
            if let Some(v) = c.opt::<u64>(col)? {
                h.push(v);
            }
        }
        if let Some(d) = degree {
            if h.len() != d + 1 {
                return Err(c.err(3, "consistent with the printed coefficients"));
            }
        }
        Ok(Table31Row {
            n: c.req(0)?,
            dim: c.req(1)?,
            normalized_volume: c.req(2)?,
            degree,
            h_star: h,
        })
    })?;
    check_consecutive("table3_1", rows.iter().map(|r| r.n))?;
    Ok(rows)
}

pub fn parse_table_5_1(text: &str) -> Result<Vec<Table51Row>> {
    const H: [&str; 4] = ["subset", "N", "vol", "dim"];
    parse_with("table5_1", text, &H, |c| {
        Ok(Table51Row {
            subset: c.text(0).parse().map_err(|_| c.err(0, "a subset name"))?,
            n: c.req(1)?,
            vol: c.req(2)?,
            dim: c.req(3)?,
        })
    })
}

pub fn parse_constants(text: &str) -> Result<Vec<ConstantRow>> {
    const H: [&str; 3] = ["subset", "sum", "ratio_to_e"];
    parse_with("constants", text, &H, |c| {
        Ok(ConstantRow {
            subset: c.text(0).parse().map_err(|_| c.err(0, "a subset name"))?,
            digits: c.text(1).to_string(),
            ratio_to_e: Some(c.text(2).to_string()).filter(|s| s != "-"),
        })
    })
}

fn cached<T: Clone>(
    cell: &'static OnceLock<std::result::Result<T, String>>,
    f: impl FnOnce() -> Result<T>,
) -> Result<T> {
    cell.get_or_init(|| f().map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::internal)
}

pub fn appendix_a() -> Result<Vec<AppendixARow>> {
    static CELL: OnceLock<std::result::Result<Vec<AppendixARow>, String>> = OnceLock::new();
    cached(&CELL, || parse_appendix_a(APPENDIX_A))
}

pub fn appendix_b() -> Result<Vec<AppendixBRow>> {
    static CELL: OnceLock<std::result::Result<Vec<AppendixBRow>, String>> = OnceLock::new();
    cached(&CELL, || parse_appendix_b(APPENDIX_B))
}

pub fn table_1_1() -> Result<Vec<Table11Row>> {
    parse_table_1_1(TABLE_1_1)
}

pub fn table_3_1() -> Result<Vec<Table31Row>> {
    parse_table_3_1(TABLE_3_1)
}

pub fn table_5_1() -> Result<Vec<Table51Row>> {
    parse_table_5_1(TABLE_5_1)
}

/// Printed digits of the volume-sum constants and their ratios to `e`.
pub fn constants() -> Result<Vec<ConstantRow>> {
    parse_constants(CONSTANTS)
}

pub fn load_reference(id: TableId) -> Result<ReferenceTable> {
    Ok(match id {
        TableId::Table1_1 => ReferenceTable::Table1_1(table_1_1()?),
        TableId::Table3_1 => ReferenceTable::Table3_1(table_3_1()?),
        TableId::Table5_1 => ReferenceTable::Table5_1(table_5_1()?),
        TableId::AppendixA => ReferenceTable::AppendixA(appendix_a()?),
        TableId::AppendixB => ReferenceTable::AppendixB(appendix_b()?),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCheck {
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub table: TableId,
    pub subset: SubsetKind,
    #[serde(rename = "N")]
    pub n: u64,
    pub checks: Vec<FieldCheck>,
    /// Fields not compared, with the reason.
    pub skipped: Vec<String>,
}

impl ComparisonReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &FieldCheck> {
        self.checks.iter().filter(|c| !c.matches)
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches().next().is_none()
    }

    fn check(&mut self, field: &str, expected: impl fmt::Display, computed: impl fmt::Display) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        self.checks.push(FieldCheck {
            field: field.to_string(),
            matches: expected == computed,
            expected,
            computed,
        });
    }

    fn check_opt<T: fmt::Display>(&mut self, field: &str, expected: &Option<T>, computed: &Option<T>) {
        let show = |v: &Option<T>| v.as_ref().map_or("-".to_string(), T::to_string);
        self.check(field, show(expected), show(computed));
    }
}

fn joined(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Field-by-field exact comparison of `record` with its row in `table`.
pub fn compare(record: &MetricsRecord, table: &ReferenceTable) -> Result<ComparisonReport> {
    let mut rep = ComparisonReport {
        table: table.id(),
        subset: record.subset,
        n: record.n,
        checks: Vec::new(),
        skipped: Vec::new(),
    };
    let n = record.n;
    if !matches!(table, ReferenceTable::Table5_1(_)) && record.subset != SubsetKind::Naturals {
        return Err(Error::domain(format!(
            "{} lists the naturals only, record is for {}",
            table.id(),
            record.subset
        )));
    }
    let missing = || Error::MissingRow(n);
    match table {
        ReferenceTable::AppendixA(rows) => {
            let row = rows.iter().find(|r| r.n == n).ok_or_else(missing)?;
            rep.check_opt("diameter", &row.diameter, &record.diameter);
            rep.check("dim", row.dim, record.dim);
            rep.check("Vol", &row.normalized_volume, &record.normalized_volume);
            rep.check("n_vertices", row.n_vertices, record.n_vertices);
            rep.check_opt("n_edges", &row.n_edges, &record.n_edges);
            rep.check_opt("n_facets", &row.n_facets, &record.n_facets);
            rep.check_opt("facet_width", &row.facet_width, &record.facet_width);
            rep.skipped.push("n_hilbert_basis: Hilbert bases are not computed".into());
        }
        ReferenceTable::AppendixB(rows) => {
            let row = rows.iter().find(|r| r.n == n).ok_or_else(missing)?;
            match &record.f_vector {
                Some(f) => rep.check("f_vector", joined(&row.f_vector), joined(&f.0)),
                None => rep.skipped.push("f_vector: not computed".into()),
            }
        }
        ReferenceTable::Table3_1(rows) => {
            let row = rows.iter().find(|r| r.n == n).ok_or_else(missing)?;
            rep.check("dim", row.dim, record.dim);
            rep.check("Vol", &row.normalized_volume, &record.normalized_volume);
            match &record.h_star {
                Some(h) if row.degree.is_some() => {
                    rep.check("deg", row.degree.unwrap_or(0), h.degree());
                    rep.check("h_star", joined(&row.h_star), joined(h.trimmed()));
                }
                Some(_) => rep.skipped.push("h_star: blank in the table".into()),
                None => rep.skipped.push("h_star: not computed".into()),
            }
        }
        ReferenceTable::Table1_1(rows) => {
            let row = rows.iter().find(|r| r.n == n).ok_or_else(missing)?;
            rep.check("dim", row.dim, record.dim);
            rep.check("n_lattice_points", row.n_lattice_points, record.n_lattice_points);
            rep.check("n_vertices", row.vertices.len(), record.n_vertices);
            rep.check("vol", &row.vol, &record.euclidean_volume);
            rep.skipped.push("vertices: records carry counts, not coordinates".into());
        }
        ReferenceTable::Table5_1(rows) => {
            let row = rows
                .iter()
                .find(|r| r.n == n && r.subset == record.subset)
                .ok_or_else(missing)?;
            rep.check("vol", &row.vol, &record.euclidean_volume);
            rep.check("dim", row.dim, record.dim);
        }
    }
    Ok(rep)
}

/// Aggregate of many comparisons.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub rows: usize,
    pub fields_checked: usize,
    pub mismatches: usize,
    /// Skip reasons with how often each occurred.
    pub skipped: BTreeMap<String, usize>,
}

impl VerifySummary {
    pub fn of(reports: &[ComparisonReport]) -> Self {
        let mut s = VerifySummary::default();
        for r in reports {
            s.rows += 1;
            s.fields_checked += r.checks.len();
            s.mismatches += r.mismatches().count();
            for k in &r.skipped {
                *s.skipped.entry(format!("{}: {k}", r.table)).or_default() += 1;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{metrics_record, MetricsConfig};
    use crate::numsys::SubsetSpec;

    #[test]
    fn row_counts() {
        assert_eq!(appendix_a().unwrap().len(), 448);
        assert_eq!(appendix_b().unwrap().len(), 69);
        assert_eq!(table_3_1().unwrap().len(), 66);
        assert_eq!(table_1_1().unwrap().len(), 16);
        assert_eq!(constants().unwrap().len(), 6);
        for id in TableId::ALL {
            assert!(!load_reference(id).unwrap().is_empty());
            assert_eq!(id.name().parse::<TableId>().unwrap(), id);
        }
    }

    #[test]
    fn sample_rows() {
        let a = &appendix_a().unwrap()[55];
        assert_eq!(
            (a.diameter, a.dim, a.normalized_volume.clone(), a.n_vertices),
            (Some(2), 16, BigInt::from(343), 31)
        );
        assert_eq!(
            (a.n_edges, a.n_facets, a.facet_width, a.n_hilbert_basis),
            (Some(346), Some(29), Some(36), Some(56))
        );
        assert_eq!(table_3_1().unwrap()[24].h_star, vec![1, 15, 20, 2]);
        assert_eq!(
            appendix_b().unwrap()[22].f_vector,
            vec![16, 91, 274, 504, 602, 476, 246, 79, 14]
        );
        let t = &table_1_1().unwrap()[13];
        assert_eq!(t.vol, BigRational::new(11.into(), 720.into()));
        assert_eq!(table_1_1().unwrap()[0].vertices, vec![Vec::<i64>::new()]);
        let five = table_5_1().unwrap();
        let r = five
            .iter()
            .find(|r| r.subset == SubsetKind::OneEvensOddPrimes && r.n == 10)
            .unwrap();
        assert_eq!((r.vol.to_string(), r.dim), ("5/24".to_string(), 4));
    }

    #[test]
    fn corrupt_data_reports_the_line() {
        let mut text = APPENDIX_A.to_string();
        text = text.replacen("\n56\t2\t16\t343", "\n56\t2\t16\t3x3", 1);
        match parse_appendix_a(&text) {
            Err(Error::Reference { table, line, msg }) => {
                assert_eq!((table, line), ("appendixA", 57));
                assert!(msg.contains("Vol"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
        let short = "N\tdim\tVol\tdeg\th0\th1\th2\th3\th4\n1\t0\t1\n";
        assert!(matches!(parse_table_3_1(short), Err(Error::Reference { line: 2, .. })));
        let gap = APPENDIX_A.replacen("\n3\t", "\n4\t", 1);
        assert!(matches!(parse_appendix_a(&gap), Err(Error::Reference { .. })));
    }

    #[test]
    fn internal_consistency() {
        let a = appendix_a().unwrap();
        for w in a.windows(2) {
            if w[1].dim == w[0].dim + 1 {
                assert_eq!(w[1].normalized_volume, w[0].normalized_volume, "N = {}", w[1].n);
            }
        }
        for r in table_3_1().unwrap() {
            let s: u64 = r.h_star.iter().sum();
            if r.degree.is_some() {
                assert_eq!(BigInt::from(s), r.normalized_volume, "N = {}", r.n);
            }
        }
        for r in appendix_b().unwrap() {
            let n = r.f_vector.len() as i64;
            let alt: i64 = r
                .f_vector
                .iter()
                .enumerate()
                .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
                .sum();
            let ends = -1 + if n % 2 == 0 { 1 } else { -1 };
            if n > 0 {
                assert_eq!(alt + ends, 0, "N = {}", r.n);
            }
        }
    }

    #[test]
    fn comparisons() {
        let cfg = MetricsConfig {
            ehrhart: true,
            ..MetricsConfig::default()
        };
        let rec = metrics_record(&SubsetSpec::naturals(), 6, &cfg).unwrap();
        let rep = compare(&rec, &load_reference(TableId::AppendixA).unwrap()).unwrap();
        assert!(rep.is_clean(), "{rep:?}");
        assert_eq!(rep.checks.len(), 7);
        assert_eq!(rep.skipped.len(), 1);

        let mut bad = rec.clone();
        bad.normalized_volume += 1;
        let rep = compare(&bad, &load_reference(TableId::AppendixA).unwrap()).unwrap();
        assert_eq!(rep.mismatches().count(), 1);
        assert_eq!(rep.mismatches().next().unwrap().field, "Vol");

        let rec30 = metrics_record(&SubsetSpec::naturals(), 30, &cfg).unwrap();
        let rep = compare(&rec30, &load_reference(TableId::Table3_1).unwrap()).unwrap();
        assert!(rep.is_clean() && rep.skipped.is_empty(), "{rep:?}");

        let late = MetricsRecord { n: 500, ..rec };
        assert!(matches!(
            compare(&late, &load_reference(TableId::AppendixA).unwrap()),
            Err(Error::MissingRow(500))
        ));
    }
}
