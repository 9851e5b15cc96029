//! Tokenizer for the SLA document grammar.
//!
//! Whitespace-insensitive; `#` comments run to end of line. Words cover
//! both keywords and (dotted) identifiers — the parser decides which role
//! a word plays from context.

use super::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum TokenKind {
    /// Identifier or keyword, possibly dotted (`nimbus.uptime`).
    Word(String),
    Int(i64),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Eof,
}

impl TokenKind {
    pub(super) fn describe(&self) -> String {
        match self {
            TokenKind::Word(w) => format!("`{w}`"),
            TokenKind::Int(n) => format!("integer `{n}`"),
            TokenKind::Str(_) => "string".to_owned(),
            TokenKind::LBrace => "`{`".to_owned(),
            TokenKind::RBrace => "`}`".to_owned(),
            TokenKind::LParen => "`(`".to_owned(),
            TokenKind::RParen => "`)`".to_owned(),
            TokenKind::Colon => "`:`".to_owned(),
            TokenKind::Semi => "`;`".to_owned(),
            TokenKind::Comma => "`,`".to_owned(),
            TokenKind::Eof => "end of input".to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn at(&self, length: u32) -> SourceSpan {
        SourceSpan::new(self.line, self.column, length)
    }

    fn error(&self, span: SourceSpan, message: impl Into<String>) -> ParseError {
        ParseError::new(span, ParseErrorKind::Syntax, message)
    }

    fn lex(mut self) -> Result<Vec<Token>, ParseError> {
        let mut tokens = Vec::new();
        loop {
            match self.chars.peek().copied() {
                None => {
                    tokens.push(Token {
                        kind: TokenKind::Eof,
                        span: self.at(0),
                    });
                    return Ok(tokens);
                }
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                Some('"') => tokens.push(self.string()?),
                Some(c) if c.is_ascii_digit() || c == '-' => tokens.push(self.int()?),
                Some(c) if c.is_ascii_alphabetic() || c == '_' => tokens.push(self.word()),
                Some(c) => {
                    let kind = match c {
                        '{' => TokenKind::LBrace,
                        '}' => TokenKind::RBrace,
                        '(' => TokenKind::LParen,
                        ')' => TokenKind::RParen,
                        ':' => TokenKind::Colon,
                        ';' => TokenKind::Semi,
                        ',' => TokenKind::Comma,
                        other => {
                            return Err(self.error(
                                self.at(1),
                                format!("unexpected character `{other}`"),
                            ))
                        }
                    };
                    let span = self.at(1);
                    self.bump();
                    tokens.push(Token { kind, span });
                }
            }
        }
    }

    fn string(&mut self) -> Result<Token, ParseError> {
        let start = self.at(0);
        self.bump(); // opening quote
        let mut value = String::new();
        loop {
            match self.chars.peek().copied() {
                None | Some('\n') => {
                    return Err(self.error(
                        SourceSpan::new(start.line, start.column, value.chars().count() as u32 + 1),
                        "unterminated string",
                    ))
                }
                Some('"') => {
                    self.bump();
                    let length = value.chars().count() as u32 + 2;
                    return Ok(Token {
                        kind: TokenKind::Str(value),
                        span: SourceSpan::new(start.line, start.column, length),
                    });
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
    }

    fn int(&mut self) -> Result<Token, ParseError> {
        let start = self.at(0);
        let mut text = String::new();
        if self.chars.peek() == Some(&'-') {
            text.push('-');
            self.bump();
        }
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                text.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let span = SourceSpan::new(start.line, start.column, text.chars().count() as u32);
        if text == "-" {
            return Err(self.error(span, "`-` must introduce an integer"));
        }
        match text.parse::<i64>() {
            Ok(n) => Ok(Token {
                kind: TokenKind::Int(n),
                span,
            }),
            Err(_) => Err(ParseError::new(
                span,
                ParseErrorKind::LiteralOutOfRange,
                format!("integer `{text}` does not fit in 64 bits"),
            )),
        }
    }

    fn word(&mut self) -> Token {
        let start = self.at(0);
        let mut text = String::new();
        loop {
            while let Some(&c) = self.chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    text.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            // a dot continues the word only when an identifier follows:
            // `a.b` is one dotted word, `a.` is a word then a stray dot
            if self.chars.peek() == Some(&'.') {
                let mut ahead = self.chars.clone();
                ahead.next();
                if ahead
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
                {
                    text.push('.');
                    self.bump();
                    continue;
                }
            }
            break;
        }
        Token {
            span: SourceSpan::new(start.line, start.column, text.chars().count() as u32),
            kind: TokenKind::Word(text),
        }
    }
}

pub(super) fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    Lexer::new(text).lex()
}
