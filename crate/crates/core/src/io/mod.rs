//! Count records and their table / CSV / JSON renderings.

pub mod cache;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{Genus2, MPoly, Monomial};
use crate::error::{Error, Result};
use crate::rec::bipartite::BipOneFaceTable;
use crate::rec::{IntTable, PolyTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountModel {
    Maps,
    Bipartite,
    Triangulations,
    Oneface,
    #[serde(alias = "bipartite-oneface")]
    BipOneface,
}

impl CountModel {
    pub fn name(self) -> &'static str {
        match self {
            CountModel::Maps => "maps",
            CountModel::Bipartite => "bipartite",
            CountModel::Triangulations => "triangulations",
            CountModel::Oneface => "oneface",
            CountModel::BipOneface => "bip-oneface",
        }
    }

    /// Variables named by the `indices` of a record, if any.
    pub fn index_names(self, arity: usize) -> &'static [&'static str] {
        match (self, arity) {
            (CountModel::Bipartite, 3) => &["u", "v", "z"],
            (CountModel::BipOneface, 2) => &["u", "v"],
            (_, 2) => &["u", "z"],
            _ => &[],
        }
    }
}

impl fmt::Display for CountModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Invalid(format!("unknown model `{s}`")))
    }
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| de::Error::custom(format!("not a decimal integer: {s}")))
    }
}

/// One stored count. `indices` are exponents of the refining variables:
/// `(u, z)` for maps, `(u, v, z)` for bipartite maps, `(u, v)` for one-face
/// bipartite maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub model: CountModel,
    pub n: u32,
    pub g2: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<u32>>,
    #[serde(with = "decimal")]
    pub value: BigInt,
}

pub type RecordKey = (CountModel, u32, u32, Option<Vec<u32>>);

impl CountRecord {
    pub fn key(&self) -> RecordKey {
        (self.model, self.n, self.g2, self.indices.clone())
    }

    fn indices_string(&self, sep: &str) -> String {
        self.indices.as_ref().map(|ix| ix.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)).unwrap_or_default()
    }
}

/// One record per `(n, g2)` in `1..=n_max × 0..=g2_max`; cells outside the
/// table's support are zero.
pub fn univariate_keys(model: CountModel, n_max: u32, g2_max: u32) -> Vec<RecordKey> {
    (1..=n_max).flat_map(|n| (0..=g2_max).map(move |g2| (model, n, g2, None))).collect()
}

/// Every monomial `u^i z^j` (or `u^i v^j z^k`) allowed by Euler's formula with
/// positive exponents: the exponents sum to `n + 2 - 2g`.
pub fn refined_keys(model: CountModel, n_max: u32, g2_max: u32) -> Vec<RecordKey> {
    let mut keys = Vec::new();
    for n in 1..=n_max {
        for g2 in 0..=g2_max {
            let Some(total) = (n + 2).checked_sub(g2) else { continue };
            if model == CountModel::Bipartite {
                for i in 1..total {
                    for j in 1..total - i {
                        keys.push((model, n, g2, Some(vec![i, j, total - i - j])));
                    }
                }
            } else {
                for i in 1..total {
                    keys.push((model, n, g2, Some(vec![i, total - i])));
                }
            }
        }
    }
    keys
}

/// `(i, j)` with `i, j >= 1`, `i + j <= n + 1`; the genus is `(n + 1 - i - j) / 2`.
pub fn bip_oneface_keys(n_max: u32) -> Vec<RecordKey> {
    let mut keys = Vec::new();
    for n in 1..=n_max {
        for i in 1..=n {
            for j in 1..=n + 1 - i {
                keys.push((CountModel::BipOneface, n, n + 1 - i - j, Some(vec![i, j])));
            }
        }
    }
    keys
}

pub fn oneface_keys(n_max: u32) -> Vec<RecordKey> {
    (1..=n_max).flat_map(|n| (0..=n).map(move |g2| (CountModel::Oneface, n, g2, None))).collect()
}

fn integral(c: &num_rational::BigRational) -> BigInt {
    debug_assert!(c.is_integer());
    c.to_integer()
}

fn monomial(model: CountModel, ix: &[u32]) -> Monomial {
    match (model, ix) {
        (CountModel::Bipartite, [i, j, k]) => Monomial::new(*i, *k, *j),
        (_, [i, j]) => Monomial::new(*i, *j, 0),
        _ => Monomial::new(0, 0, 0),
    }
}

/// Fills `keys` from a table of integers.
pub fn records_from_ints(keys: Vec<RecordKey>, table: &IntTable) -> Vec<CountRecord> {
    keys.into_iter()
        .map(|(model, n, g2, indices)| {
            let value = table.get(n, g2).cloned().unwrap_or_default();
            CountRecord { model, n, g2, indices, value }
        })
        .collect()
}

/// Fills `keys` from a table of polynomials: totals for unrefined keys,
/// coefficients otherwise.
pub fn records_from_polys(keys: Vec<RecordKey>, table: &PolyTable) -> Vec<CountRecord> {
    keys.into_iter()
        .map(|(model, n, g2, indices)| {
            let p = table.get(n, g2);
            let value = match (&indices, p) {
                (_, None) => BigInt::zero(),
                (None, Some(p)) => p.terms().map(|(_, c)| integral(c)).sum(),
                (Some(ix), Some(p)) => integral(&p.coeff(&monomial(model, ix))),
            };
            CountRecord { model, n, g2, indices, value }
        })
        .collect()
}

pub fn records_from_bip_oneface(keys: Vec<RecordKey>, table: &BipOneFaceTable) -> Vec<CountRecord> {
    keys.into_iter()
        .map(|(model, n, g2, indices)| {
            let value = match indices.as_deref() {
                Some([i, j]) => table.get(n, *i, *j).cloned().unwrap_or_default(),
                _ => BigInt::zero(),
            };
            CountRecord { model, n, g2, indices, value }
        })
        .collect()
}

/// Rebuilds polynomials from refined records.
pub fn polys_from_records(records: &[CountRecord]) -> PolyTable {
    let mut t = PolyTable::new();
    for r in records {
        let Some(ix) = &r.indices else { continue };
        if !t.contains(r.n, r.g2) {
            t.insert(r.n, r.g2, MPoly::zero());
        }
        let p = t.get_mut(r.n, r.g2).expect("inserted");
        p.add_term(monomial(r.model, ix), r.value.clone().into());
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Invalid(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    model: String,
    rows: Vec<CountRecord>,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    model: CountModel,
    n: u32,
    g2: u32,
    indices: String,
    value: String,
}

fn genus_label(g2: u32) -> String {
    format!("g={}", Genus2(g2))
}

/// Renders records; `model` names the table as a whole.
pub fn render(model: &str, records: &[CountRecord], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let t = JsonTable { model: model.to_string(), rows: records.to_vec() };
            serde_json::to_string_pretty(&t).map(|s| s + "\n").map_err(|e| Error::Invalid(e.to_string()))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if records.is_empty() {
                w.write_record(["model", "n", "g2", "indices", "value"]).map_err(|e| Error::Invalid(e.to_string()))?;
            }
            for r in records {
                let row = CsvRow {
                    model: r.model,
                    n: r.n,
                    g2: r.g2,
                    indices: r.indices_string(";"),
                    value: r.value.to_string(),
                };
                w.serialize(row).map_err(|e| Error::Invalid(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Table => Ok(render_table(model, records)),
    }
}

fn render_table(model: &str, records: &[CountRecord]) -> String {
    let mut out = format!("# {model}\n");
    if records.is_empty() {
        return out;
    }
    if records.iter().all(|r| r.indices.is_none()) {
        let mut g2s: Vec<u32> = records.iter().map(|r| r.g2).collect();
        g2s.sort_unstable();
        g2s.dedup();
        let mut ns: Vec<u32> = records.iter().map(|r| r.n).collect();
        ns.sort_unstable();
        ns.dedup();
        let cell = |n: u32, g2: u32| {
            records.iter().find(|r| r.n == n && r.g2 == g2).map(|r| r.value.to_string()).unwrap_or_else(|| ".".into())
        };
        let mut width = vec![2usize; g2s.len() + 1];
        for (c, &g2) in g2s.iter().enumerate() {
            width[c + 1] = genus_label(g2).len();
            for &n in &ns {
                width[c + 1] = width[c + 1].max(cell(n, g2).len());
            }
        }
        width[0] = ns.iter().map(|n| n.to_string().len()).max().unwrap_or(1).max(1);
        let mut line = format!("{:>w$}", "n", w = width[0]);
        for (c, &g2) in g2s.iter().enumerate() {
            line += &format!("  {:>w$}", genus_label(g2), w = width[c + 1]);
        }
        out += line.trim_end();
        out.push('\n');
        for &n in &ns {
            let mut line = format!("{:>w$}", n, w = width[0]);
            for (c, &g2) in g2s.iter().enumerate() {
                line += &format!("  {:>w$}", cell(n, g2), w = width[c + 1]);
            }
            out += &line;
            out.push('\n');
        }
    } else {
        let first = &records[0];
        let names = first.model.index_names(first.indices.as_ref().map_or(0, Vec::len));
        out += &format!("# n  g  {}  value\n", names.join(","));
        for r in records {
            out += &format!("{}  {}  {}  {}\n", r.n, genus_label(r.g2), r.indices_string(","), r.value);
        }
    }
    out
}

/// Reads back any of the three renderings. Table renderings need the model
/// from their `#` header.
pub fn parse(text: &str, format: Format) -> Result<Vec<CountRecord>> {
    let bad = |e: &dyn fmt::Display| Error::Invalid(format!("unreadable table: {e}"));
    match format {
        Format::Json => {
            let t: JsonTable = serde_json::from_str(text).map_err(|e| bad(&e))?;
            Ok(t.rows)
        }
        Format::Csv => {
            let mut rd = csv::Reader::from_reader(text.as_bytes());
            let mut out = Vec::new();
            for row in rd.deserialize::<CsvRow>() {
                let row = row.map_err(|e| bad(&e))?;
                out.push(CountRecord {
                    model: row.model,
                    n: row.n,
                    g2: row.g2,
                    indices: parse_indices(&row.indices, ';')?,
                    value: row.value.parse().map_err(|e| bad(&e))?,
                });
            }
            Ok(out)
        }
        Format::Table => parse_table(text),
    }
}

fn parse_indices(s: &str, sep: char) -> Result<Option<Vec<u32>>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.split(sep)
        .map(|x| x.parse().map_err(|_| Error::Invalid(format!("bad indices `{s}`"))))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn parse_genus(s: &str) -> Result<u32> {
    s.strip_prefix("g=")
        .and_then(Genus2::parse)
        .map(Genus2::twice)
        .ok_or_else(|| Error::Invalid(format!("bad genus label `{s}`")))
}

fn parse_table(text: &str) -> Result<Vec<CountRecord>> {
    let mut lines = text.lines();
    let model: CountModel = lines
        .next()
        .and_then(|l| l.strip_prefix("# "))
        .ok_or_else(|| Error::Invalid("table without a model header".into()))?
        .trim()
        .parse()?;
    let bad = |l: &str| Error::Invalid(format!("bad table line `{l}`"));
    let mut out = Vec::new();
    let mut header: Option<Vec<u32>> = None;
    for line in lines {
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.is_empty() || line.starts_with('#') {
            continue;
        }
        if cols[0] == "n" {
            header = Some(cols[1..].iter().map(|c| parse_genus(c)).collect::<Result<_>>()?);
            continue;
        }
        let n: u32 = cols[0].parse().map_err(|_| bad(line))?;
        match &header {
            Some(g2s) => {
                for (g2, v) in g2s.iter().zip(&cols[1..]) {
                    if *v != "." {
                        out.push(CountRecord {
                            model,
                            n,
                            g2: *g2,
                            indices: None,
                            value: v.parse().map_err(|_| bad(line))?,
                        });
                    }
                }
            }
            None => {
                if cols.len() != 4 {
                    return Err(bad(line));
                }
                out.push(CountRecord {
                    model,
                    n,
                    g2: parse_genus(cols[1])?,
                    indices: parse_indices(cols[2], ',')?,
                    value: cols[3].parse().map_err(|_| bad(line))?,
                });
            }
        }
    }
    Ok(out)
}
