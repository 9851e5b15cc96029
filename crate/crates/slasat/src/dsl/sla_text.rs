//! SLA document syntax: recursive-descent parser and canonical serializer.
//!
//! Grammar (whitespace-insensitive, `#` comments):
//!
//! ```text
//! document := "sla" STRING "{" "clauses" "{" clause+ "}" "terms" ":" expr ";" "}"
//! clause   := IDENT ":" "indicator" "(" kind "," STRING ["," STRING] ")"
//!             "objective" "(" objset ")" "evaluator" "(" evkind ")"
//!             "penalty" "(" penspec ")" ";"
//!           | IDENT ":" "symbolic" ";"
//! kind     := "bool" | "int"
//! objset   := "set" "(" literal ("," literal)* ")" | "range" "(" INT "," INT ")"
//! evkind   := "membership" | "range" | "at_least" | "at_most"
//! penspec  := "none" | "constant" "(" INT ")" | "linear" "(" INT ")"
//!           | "step" "(" INT "," INT ")"
//! expr     := or ; or := and ("OR" and)* ; and := unary ("AND" unary)*
//! unary    := "NOT" unary | "(" expr ")" | IDENT
//! literal  := "true" | "false" | INT
//! ```
//!
//! The optional second string in `indicator` is a free-text description;
//! `symbolic` clauses carry no indicator at all (they exist so formulas
//! lifted from CNF can be written down and re-read). Identifiers may be
//! dotted (`nimbus.uptime`), which is how aggregated documents re-parse.
//!
//! A structurally well-formed document is still rejected when semantic
//! validation finds an error; the first such error is reported as a
//! [`ParseError`] at the offending clause or reference.

use std::fmt::Write as _;

use super::lexer::{lex, Token, TokenKind};
use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::model::{
    Clause, ClauseKind, EvaluatorKind, IndicatorSpec, Issue, IssueKind, ObjectiveSet, PenaltySpec,
    Severity, Sla, SlaExpr, ValueKind,
};

const RESERVED: [&str; 3] = ["AND", "OR", "NOT"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// Clause-id token spans in definition order (duplicates kept).
    clause_spans: Vec<(String, SourceSpan)>,
    /// Reference token spans in appearance order.
    ref_spans: Vec<(String, SourceSpan)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn unexpected(&self, expected: impl Into<String>) -> ParseError {
        let token = self.peek();
        ParseError::new(
            token.span,
            ParseErrorKind::Syntax,
            format!("unexpected {}", token.kind.describe()),
        )
        .expecting(expected)
    }

    fn expect_word(&mut self, keyword: &str) -> Result<SourceSpan, ParseError> {
        match &self.peek().kind {
            TokenKind::Word(w) if w == keyword => Ok(self.bump().span),
            _ => Err(self.unexpected(format!("`{keyword}`"))),
        }
    }

    fn expect(&mut self, kind: TokenKind, name: &str) -> Result<SourceSpan, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(name))
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match &self.peek().kind {
            TokenKind::Word(_) => {
                let token = self.bump();
                let TokenKind::Word(w) = token.kind else {
                    unreachable!()
                };
                Ok((w, token.span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn string(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match &self.peek().kind {
            TokenKind::Str(_) => {
                let token = self.bump();
                let TokenKind::Str(s) = token.kind else {
                    unreachable!()
                };
                Ok((s, token.span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn int(&mut self, what: &str) -> Result<(i64, SourceSpan), ParseError> {
        match self.peek().kind {
            TokenKind::Int(n) => Ok((n, self.bump().span)),
            _ => Err(self.unexpected(what)),
        }
    }

    fn document(&mut self) -> Result<Sla, ParseError> {
        self.expect_word("sla")?;
        let (name, _) = self.string("SLA name string")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        self.expect_word("clauses")?;
        self.expect(TokenKind::LBrace, "`{`")?;

        let mut clauses = Vec::new();
        loop {
            clauses.push(self.clause()?);
            if self.peek().kind == TokenKind::RBrace {
                break;
            }
        }
        self.expect(TokenKind::RBrace, "`}`")?;

        self.expect_word("terms")?;
        self.expect(TokenKind::Colon, "`:`")?;
        let terms = self.expr()?;
        self.expect(TokenKind::Semi, "`;`")?;
        self.expect(TokenKind::RBrace, "`}`")?;
        if self.peek().kind != TokenKind::Eof {
            return Err(self.unexpected("end of input"));
        }
        Ok(Sla::new(name, clauses, terms))
    }

    fn clause(&mut self) -> Result<Clause, ParseError> {
        let (id, id_span) = self.word("clause id")?;
        if RESERVED.contains(&id.as_str()) {
            return Err(ParseError::new(
                id_span,
                ParseErrorKind::Syntax,
                format!("`{id}` is a reserved word and cannot name a clause"),
            ));
        }
        self.clause_spans.push((id.clone(), id_span));
        self.expect(TokenKind::Colon, "`:`")?;

        if matches!(&self.peek().kind, TokenKind::Word(w) if w == "symbolic") {
            self.bump();
            self.expect(TokenKind::Semi, "`;`")?;
            return Ok(Clause::symbolic(id));
        }

        self.expect_word("indicator")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let (kind_word, kind_span) = self.word("`bool` or `int`")?;
        let value_kind = match kind_word.as_str() {
            "bool" => ValueKind::Bool,
            "int" => ValueKind::Int,
            _ => {
                return Err(ParseError::new(
                    kind_span,
                    ParseErrorKind::Syntax,
                    format!("unknown indicator kind `{kind_word}`"),
                )
                .expecting("`bool` or `int`"))
            }
        };
        self.expect(TokenKind::Comma, "`,`")?;
        let (metric_name, _) = self.string("metric name string")?;
        let description = if self.peek().kind == TokenKind::Comma {
            self.bump();
            Some(self.string("description string")?.0)
        } else {
            None
        };
        self.expect(TokenKind::RParen, "`)`")?;
        let mut indicator = IndicatorSpec::new(metric_name, value_kind);
        if let Some(d) = description {
            indicator = indicator.with_description(d);
        }

        self.expect_word("objective")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let objective = self.objective_set()?;
        self.expect(TokenKind::RParen, "`)`")?;

        self.expect_word("evaluator")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let (ev_word, ev_span) = self.word("evaluator kind")?;
        let evaluator = match ev_word.as_str() {
            "membership" => EvaluatorKind::Membership,
            "range" => EvaluatorKind::Range,
            "at_least" => EvaluatorKind::AtLeast,
            "at_most" => EvaluatorKind::AtMost,
            _ => {
                return Err(ParseError::new(
                    ev_span,
                    ParseErrorKind::Syntax,
                    format!("unknown evaluator `{ev_word}`"),
                )
                .expecting("one of `membership`, `range`, `at_least`, `at_most`"))
            }
        };
        self.expect(TokenKind::RParen, "`)`")?;

        self.expect_word("penalty")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let penalty = self.penalty_spec()?;
        self.expect(TokenKind::RParen, "`)`")?;
        self.expect(TokenKind::Semi, "`;`")?;

        Ok(Clause::concrete(id, indicator, objective, evaluator, penalty))
    }

    fn objective_set(&mut self) -> Result<ObjectiveSet, ParseError> {
        let (word, span) = self.word("`set` or `range`")?;
        match word.as_str() {
            "set" => {
                self.expect(TokenKind::LParen, "`(`")?;
                let mut bools = Vec::new();
                let mut ints = Vec::new();
                loop {
                    let lit_span = self.peek().span;
                    match &self.peek().kind {
                        TokenKind::Word(w) if w == "true" || w == "false" => {
                            bools.push(w == "true");
                            self.bump();
                        }
                        TokenKind::Int(n) => {
                            ints.push(*n);
                            self.bump();
                        }
                        _ => return Err(self.unexpected("`true`, `false`, or an integer")),
                    }
                    if !bools.is_empty() && !ints.is_empty() {
                        return Err(ParseError::new(
                            lit_span,
                            ParseErrorKind::Value,
                            "objective set mixes boolean and integer values",
                        ));
                    }
                    match self.peek().kind {
                        TokenKind::Comma => {
                            self.bump();
                        }
                        _ => break,
                    }
                }
                self.expect(TokenKind::RParen, "`)`")?;
                if bools.is_empty() {
                    Ok(ObjectiveSet::int_set(ints))
                } else {
                    Ok(ObjectiveSet::bool_set(bools))
                }
            }
            "range" => {
                self.expect(TokenKind::LParen, "`(`")?;
                let (lo, _) = self.int("range lower bound")?;
                self.expect(TokenKind::Comma, "`,`")?;
                let (hi, _) = self.int("range upper bound")?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(ObjectiveSet::int_range(lo, hi))
            }
            _ => Err(ParseError::new(
                span,
                ParseErrorKind::Syntax,
                format!("unknown objective form `{word}`"),
            )
            .expecting("`set` or `range`")),
        }
    }

    fn penalty_spec(&mut self) -> Result<PenaltySpec, ParseError> {
        let (word, span) = self.word("penalty kind")?;
        match word.as_str() {
            "none" => Ok(PenaltySpec::None),
            "constant" => {
                self.expect(TokenKind::LParen, "`(`")?;
                let (amount, _) = self.int("penalty amount")?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(PenaltySpec::Constant(amount))
            }
            "linear" => {
                self.expect(TokenKind::LParen, "`(`")?;
                let (rate, _) = self.int("penalty rate")?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(PenaltySpec::Linear(rate))
            }
            "step" => {
                self.expect(TokenKind::LParen, "`(`")?;
                let (threshold, t_span) = self.int("step threshold")?;
                let threshold = u64::try_from(threshold).map_err(|_| {
                    ParseError::new(
                        t_span,
                        ParseErrorKind::Value,
                        "step threshold must be non-negative",
                    )
                })?;
                self.expect(TokenKind::Comma, "`,`")?;
                let (amount, _) = self.int("step amount")?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(PenaltySpec::Step { threshold, amount })
            }
            _ => Err(ParseError::new(
                span,
                ParseErrorKind::Syntax,
                format!("unknown penalty `{word}`"),
            )
            .expecting("one of `none`, `constant`, `linear`, `step`")),
        }
    }

    fn expr(&mut self) -> Result<SlaExpr, ParseError> {
        let mut left = self.and_expr()?;
        while matches!(&self.peek().kind, TokenKind::Word(w) if w == "OR") {
            self.bump();
            let right = self.and_expr()?;
            left = SlaExpr::or(left, right);
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<SlaExpr, ParseError> {
        let mut left = self.unary_expr()?;
        while matches!(&self.peek().kind, TokenKind::Word(w) if w == "AND") {
            self.bump();
            let right = self.unary_expr()?;
            left = SlaExpr::and(left, right);
        }
        Ok(left)
    }

    fn unary_expr(&mut self) -> Result<SlaExpr, ParseError> {
        match &self.peek().kind {
            TokenKind::Word(w) if w == "NOT" => {
                self.bump();
                Ok(SlaExpr::not(self.unary_expr()?))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Word(w) if !RESERVED.contains(&w.as_str()) => {
                let (id, span) = self.word("clause reference")?;
                self.ref_spans.push((id.clone(), span));
                Ok(SlaExpr::clause_ref(id))
            }
            _ => Err(self.unexpected("clause reference, `NOT`, or `(`")),
        }
    }
}

/// Span best describing `issue`, for promotion to a parse diagnostic.
fn issue_span(issue: &Issue, sla: &Sla, parser: &Parser) -> SourceSpan {
    let clause_span = |id: &str| {
        parser
            .clause_spans
            .iter()
            .find(|(cid, _)| cid == id)
            .map(|(_, span)| *span)
    };
    let fallback = SourceSpan::new(1, 1, 0);
    match &issue.kind {
        IssueKind::DuplicateClauseId(id) => parser
            .clause_spans
            .iter()
            .filter(|(cid, _)| cid == id)
            .nth(1)
            .map(|(_, span)| *span)
            .or_else(|| clause_span(id))
            .unwrap_or(fallback),
        IssueKind::UnresolvedClauseRef(id) => parser
            .ref_spans
            .iter()
            .find(|(rid, _)| rid == id)
            .map(|(_, span)| *span)
            .unwrap_or(fallback),
        IssueKind::IndicatorKindConflict { metric_name } => {
            // blame the first clause whose kind disagrees with the first
            // clause sharing the metric
            let mut first_kind = None;
            for clause in &sla.clauses {
                let Some(name) = clause.metric_name() else {
                    continue;
                };
                if name != metric_name {
                    continue;
                }
                let kind = clause.indicator().expect("concrete").value_kind;
                match first_kind {
                    None => first_kind = Some(kind),
                    Some(k) if k != kind => {
                        return clause_span(&clause.id).unwrap_or(fallback);
                    }
                    Some(_) => {}
                }
            }
            fallback
        }
        IssueKind::InvalidClauseId(id) | IssueKind::UnreferencedClause(id) => {
            clause_span(id).unwrap_or(fallback)
        }
        IssueKind::EmptyMetricName { clause_id }
        | IssueKind::EmptyObjectiveSet { clause_id }
        | IssueKind::InvalidRange { clause_id }
        | IssueKind::ObjectiveKindMismatch { clause_id }
        | IssueKind::EvaluatorObjectiveMismatch { clause_id }
        | IssueKind::NegativePenalty { clause_id } => clause_span(clause_id).unwrap_or(fallback),
    }
}

/// Parses an SLA document. The result always passes semantic validation
/// with no errors; warnings (such as unreferenced clauses) survive.
pub fn parse_sla(text: &str) -> Result<Sla, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        clause_spans: Vec::new(),
        ref_spans: Vec::new(),
    };
    let sla = parser.document()?;

    let issues = sla.validate();
    if let Some(issue) = issues.iter().find(|i| i.severity == Severity::Error) {
        return Err(ParseError::new(
            issue_span(issue, &sla, &parser),
            ParseErrorKind::Validation,
            issue.message.clone(),
        ));
    }
    Ok(sla)
}

fn render_objective(objective: &ObjectiveSet, out: &mut String) {
    match objective {
        ObjectiveSet::BoolSet(values) => {
            out.push_str("set(");
            for (i, v) in values.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(if *v { "true" } else { "false" });
            }
            out.push(')');
        }
        ObjectiveSet::IntSet(values) => {
            out.push_str("set(");
            for (i, v) in values.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{v}");
            }
            out.push(')');
        }
        ObjectiveSet::IntRange { lo, hi } => {
            let _ = write!(out, "range({lo}, {hi})");
        }
    }
}

fn render_penalty(penalty: &PenaltySpec, out: &mut String) {
    match penalty {
        PenaltySpec::None => out.push_str("none"),
        PenaltySpec::Constant(amount) => {
            let _ = write!(out, "constant({amount})");
        }
        PenaltySpec::Linear(rate) => {
            let _ = write!(out, "linear({rate})");
        }
        PenaltySpec::Step { threshold, amount } => {
            let _ = write!(out, "step({threshold}, {amount})");
        }
    }
}

fn prec(expr: &SlaExpr) -> u8 {
    match expr {
        SlaExpr::Or(..) => 1,
        SlaExpr::And(..) => 2,
        SlaExpr::Not(_) => 3,
        SlaExpr::Ref(_) => 4,
    }
}

/// Renders with minimal parentheses: a subexpression is parenthesized only
/// when its precedence is below what its position requires, so the
/// left-associative shape survives a re-parse.
fn render_expr(expr: &SlaExpr, min: u8, out: &mut String) {
    let p = prec(expr);
    if p < min {
        out.push('(');
    }
    match expr {
        SlaExpr::Ref(id) => out.push_str(id),
        SlaExpr::Not(inner) => {
            out.push_str("NOT ");
            render_expr(inner, 3, out);
        }
        SlaExpr::And(a, b) => {
            render_expr(a, 2, out);
            out.push_str(" AND ");
            render_expr(b, 3, out);
        }
        SlaExpr::Or(a, b) => {
            render_expr(a, 1, out);
            out.push_str(" OR ");
            render_expr(b, 2, out);
        }
    }
    if p < min {
        out.push(')');
    }
}

/// Writes the canonical document form: two-space indentation, one clause
/// per line, minimal parentheses. `parse_sla` of the output reproduces the
/// input structure exactly.
pub fn serialize_sla(sla: &Sla) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sla \"{}\" {{", sla.name);
    out.push_str("  clauses {\n");
    for clause in &sla.clauses {
        match &clause.kind {
            ClauseKind::Symbolic => {
                let _ = writeln!(out, "    {}: symbolic;", clause.id);
            }
            ClauseKind::Concrete {
                indicator,
                objective,
                evaluator,
                penalty,
            } => {
                let _ = write!(
                    out,
                    "    {}: indicator({}, \"{}\"",
                    clause.id, indicator.value_kind, indicator.metric_name
                );
                if let Some(description) = &indicator.description {
                    let _ = write!(out, ", \"{description}\"");
                }
                out.push_str(") objective(");
                render_objective(objective, &mut out);
                let _ = write!(out, ") evaluator({evaluator}) penalty(");
                render_penalty(penalty, &mut out);
                out.push_str(");\n");
            }
        }
    }
    out.push_str("  }\n");
    out.push_str("  terms: ");
    render_expr(&sla.terms, 0, &mut out);
    out.push_str(";\n}\n");
    out
}
