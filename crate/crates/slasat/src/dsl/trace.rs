//! Metric trace CSV: header `t,indicator,value`, one sample per row.
//!
//! Values are `true`/`false` or a 64-bit integer; timestamps are
//! non-negative integers in abstract time units. Rows may arrive in any
//! order — the trace keeps each series sorted.

use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::error::Error;
use crate::model::IndicatorValue;
use crate::verify::MetricTrace;

const HEADER: &str = "t,indicator,value";

/// Column (1-based, in characters) where field `index` starts.
fn field_column(fields: &[&str], index: usize) -> u32 {
    let chars: usize = fields[..index]
        .iter()
        .map(|f| f.chars().count() + 1)
        .sum();
    chars as u32 + 1
}

fn field_span(line_no: u32, fields: &[&str], index: usize) -> SourceSpan {
    SourceSpan::new(
        line_no,
        field_column(fields, index),
        fields[index].chars().count() as u32,
    )
}

pub fn parse_trace(text: &str) -> Result<MetricTrace, ParseError> {
    let mut lines = text.lines();
    match lines.next().map(str::trim) {
        Some(HEADER) => {}
        _ => {
            return Err(ParseError::new(
                SourceSpan::new(1, 1, text.lines().next().map_or(0, |l| l.chars().count()) as u32),
                ParseErrorKind::Header,
                format!("first line must be the header `{HEADER}`"),
            ))
        }
    }

    let mut trace = MetricTrace::new();
    for (idx, raw) in lines.enumerate() {
        let line_no = idx as u32 + 2;
        if raw.trim().is_empty() {
            continue;
        }
        let line_span = SourceSpan::new(line_no, 1, raw.chars().count() as u32);
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 3 {
            return Err(ParseError::new(
                line_span,
                ParseErrorKind::Syntax,
                format!("expected 3 comma-separated fields, found {}", fields.len()),
            )
            .expecting("`<t>,<indicator>,<value>`"));
        }

        let t: u64 = fields[0].trim().parse().map_err(|_| {
            ParseError::new(
                field_span(line_no, &fields, 0),
                ParseErrorKind::Value,
                format!("timestamp `{}` is not a non-negative integer", fields[0].trim()),
            )
        })?;

        let indicator = fields[1].trim();
        if indicator.is_empty() {
            return Err(ParseError::new(
                field_span(line_no, &fields, 1),
                ParseErrorKind::Value,
                "indicator name is empty",
            ));
        }

        let value_text = fields[2].trim();
        let value = match value_text {
            "true" => IndicatorValue::Bool(true),
            "false" => IndicatorValue::Bool(false),
            _ => match value_text.parse::<i64>() {
                Ok(n) => IndicatorValue::Int(n),
                Err(_) => {
                    return Err(ParseError::new(
                        field_span(line_no, &fields, 2),
                        ParseErrorKind::Value,
                        format!("value `{value_text}` is neither true/false nor an integer"),
                    ))
                }
            },
        };

        trace.insert(indicator, t, value).map_err(|e| match e {
            Error::DuplicateSample { indicator, t } => ParseError::new(
                line_span,
                ParseErrorKind::DuplicateSample,
                format!("duplicate sample for `{indicator}` at t={t}"),
            ),
            Error::TraceKindConflict { indicator } => ParseError::new(
                line_span,
                ParseErrorKind::Value,
                format!("indicator `{indicator}` mixes boolean and integer values"),
            ),
            other => ParseError::new(line_span, ParseErrorKind::Value, other.to_string()),
        })?;
    }
    Ok(trace)
}
