//! Coefficient tables of `H_{g,1}` and `H_{g,7}` for the three classes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use umbral_core::characters::{h_component, GroupClass};

use crate::UsageError;

pub const GRADING_DENOMINATOR: i64 = 120;

/// Largest row label (exponent numerator) a single invocation may request.
pub const MAX_ROW_BUDGET: i64 = 12_000;

/// One row: the coefficient of `q^{exponent_numerator/120}` in each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub exponent_numerator: i64,
    /// Ordered as [`GroupClass::ALL`].
    pub values: [BigRational; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// First row label of a component.
pub fn first_row(component: i64) -> Result<i64, UsageError> {
    match component {
        1 => Ok(-1),
        7 => Ok(71),
        _ => Err(UsageError(format!("component must be 1 or 7, got {component}"))),
    }
}

/// Rows `first_row, first_row + 120, …` up to `max_row`.
pub fn table_rows(component: i64, max_row: i64) -> Result<Vec<TableRow>, UsageError> {
    let start = first_row(component)?;
    if max_row > MAX_ROW_BUDGET {
        return Err(UsageError(format!(
            "max-row {max_row} exceeds the compute budget of {MAX_ROW_BUDGET}"
        )));
    }
    if max_row < start {
        return Ok(Vec::new());
    }
    let order = Rational64::new(max_row, GRADING_DENOMINATOR);
    let series = GroupClass::ALL
        .par_iter()
        .map(|&g| h_component(g, component, order))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| UsageError(e.to_string()))?;
    (start..=max_row)
        .step_by(GRADING_DENOMINATOR as usize)
        .map(|e| {
            let x = Rational64::new(e, GRADING_DENOMINATOR);
            let get = |k: usize| series[k].coefficient(x).map_err(|e| UsageError(e.to_string()));
            Ok(TableRow { exponent_numerator: e, values: [get(0)?, get(1)?, get(2)?] })
        })
        .collect()
}

fn show(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("exponent_numerator,1A,2A,3A\n");
    for row in rows {
        let vals: Vec<String> = row.values.iter().map(show).collect();
        writeln!(out, "{},{}", row.exponent_numerator, vals.join(",")).unwrap();
    }
    out
}

#[derive(Serialize)]
struct JsonRow {
    exponent_numerator: i64,
    values: BTreeMap<&'static str, serde_json::Value>,
}

#[derive(Serialize)]
struct JsonTable {
    grading_denominator: i64,
    component: i64,
    rows: Vec<JsonRow>,
}

/// Integers become JSON numbers when they fit in `i64`, anything else a string.
fn json_value(x: &BigRational) -> serde_json::Value {
    match x.is_integer().then(|| x.to_integer().to_i64()).flatten() {
        Some(n) => serde_json::Value::from(n),
        None => serde_json::Value::from(show(x)),
    }
}

pub fn to_json(component: i64, rows: &[TableRow]) -> String {
    let table = JsonTable {
        grading_denominator: GRADING_DENOMINATOR,
        component,
        rows: rows
            .iter()
            .map(|r| JsonRow {
                exponent_numerator: r.exponent_numerator,
                values: GroupClass::ALL.iter().zip(&r.values).map(|(g, v)| (g.name(), json_value(v))).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&table).expect("table serializes");
    s.push('\n');
    s
}

pub fn render(component: i64, max_row: i64, format: Format) -> Result<String, UsageError> {
    let rows = table_rows(component, max_row)?;
    Ok(match format {
        Format::Csv => to_csv(&rows),
        Format::Json => to_json(component, &rows),
    })
}
