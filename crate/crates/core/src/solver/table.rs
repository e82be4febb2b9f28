//! Published exact values of `k*(P_l, P_l)` and a checker against them.

use serde::Serialize;
use serde_json::Value;

use super::{kstar_branch_and_bound_with, SearchConfig};

/// Largest `l` with a published value.
pub const TABLE_MAX_L: usize = 45;

/// Values for `l = 28..=45`; every smaller `l >= 2` has value `l^2`.
const IRREGULAR: [u64; 18] = [
    791, 841, 902, 961, 1040, 1089, 1156, 1225, 1323, 1376, 1449, 1521, 1641, 1699, 1796, 1856, 1991, 2057,
];

/// Published `k*(P_l, P_l)` for `2 <= l <= 45`.
pub fn table_value(l: usize) -> Option<u64> {
    match l {
        2..=27 => Some((l * l) as u64),
        28..=TABLE_MAX_L => Some(IRREGULAR[l - 28]),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub l: usize,
    /// `None` when the search failed (for example on overflow).
    pub kstar: Option<u64>,
    pub table_value: u64,
    pub diff: Option<i64>,
    pub pass: bool,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("table report serializes")
    }

    /// Columns `l,kstar,table_value,diff,status`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,kstar,table_value,diff,status\n");
        for r in &self.rows {
            let opt = |v: Option<String>| v.unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.l,
                opt(r.kstar.map(|k| k.to_string())),
                r.table_value,
                opt(r.diff.map(|d| d.to_string())),
                if r.pass { "pass" } else { "fail" }
            ));
        }
        out
    }
}

/// Computes `k*(P_l, P_l)` for `l = 2..=max_l` and compares each value with
/// the published one. `max_l` is clamped to `2..=45`.
pub fn verify_table(max_l: usize, config: &SearchConfig) -> TableReport {
    verify_table_range(2, max_l, config)
}

/// As [`verify_table`] for `l = min_l..=max_l`, both clamped to `2..=45`.
pub fn verify_table_range(min_l: usize, max_l: usize, config: &SearchConfig) -> TableReport {
    let rows = (min_l.clamp(2, TABLE_MAX_L)..=max_l.clamp(2, TABLE_MAX_L))
        .map(|l| verify_one(l, config))
        .collect();
    TableReport { rows }
}

fn verify_one(l: usize, config: &SearchConfig) -> TableRow {
    let table_value = table_value(l).expect("l within table range");
    let start = std::time::Instant::now();
    let kstar = match kstar_branch_and_bound_with((l, l), config) {
        Ok(r) => Some(r.kstar),
        Err(e) => {
            log::warn!("search for l={l} failed: {e}");
            None
        }
    };
    let diff = kstar.map(|k| k as i64 - table_value as i64);
    TableRow {
        l,
        kstar,
        table_value,
        diff,
        pass: diff == Some(0),
        seconds: start.elapsed().as_secs_f64(),
    }
}
