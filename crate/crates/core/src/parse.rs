//! Reader for COPS-style `.trs` files with an optional rule index after the
//! arrow (`l ->k r`), and for standalone terms.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::ParseError;
use crate::term::{Symbol, Term, Var};
use crate::trs::{IndexedTrs, Rule, RuleError, DEFAULT_INDEX};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Arrow(Option<u32>),
    Ident(String),
    Other(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().peekable(),
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

    fn tokens(mut self) -> Vec<Token> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let (line, column) = (self.line, self.column);
            let tok = if c.is_whitespace() {
                self.bump();
                continue;
            } else if c == '(' {
                self.bump();
                Tok::LParen
            } else if c == ')' {
                self.bump();
                Tok::RParen
            } else if c == ',' {
                self.bump();
                Tok::Comma
            } else if c == '-' {
                self.bump();
                if self.chars.peek() == Some(&'>') {
                    self.bump();
                    let mut digits = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    if digits.is_empty() {
                        Tok::Arrow(None)
                    } else {
                        match digits.parse() {
                            Ok(k) => Tok::Arrow(Some(k)),
                            Err(_) => Tok::Other(format!("->{digits}")),
                        }
                    }
                } else {
                    Tok::Other("-".into())
                }
            } else if is_ident_start(c) {
                let mut s = String::new();
                while let Some(&d) = self.chars.peek() {
                    if is_ident_char(d) {
                        s.push(d);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            } else {
                self.bump();
                Tok::Other(c.to_string())
            };
            out.push(Token { tok, line, column });
        }
        out
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: BTreeSet<String>,
    arities: BTreeMap<String, (usize, usize, usize)>,
    eof: (usize, usize),
}

impl Parser {
    fn new(src: &str) -> Self {
        let toks = Lexer::new(src).tokens();
        let lines: Vec<&str> = src.split('\n').collect();
        let eof = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
        Parser {
            toks,
            pos: 0,
            vars: BTreeSet::new(),
            arities: BTreeMap::new(),
            eof,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.column))
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(t) => match &t.tok {
                Tok::LParen => "`(`".into(),
                Tok::RParen => "`)`".into(),
                Tok::Comma => "`,`".into(),
                Tok::Arrow(_) => "`->`".into(),
                Tok::Ident(s) | Tok::Other(s) => format!("`{s}`"),
            },
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            _ => self.syntax(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s),
                line,
                column,
            }) => {
                let r = (s.clone(), *line, *column);
                self.pos += 1;
                Ok(r)
            }
            _ => self.syntax(format!("expected identifier, found {}", self.describe())),
        }
    }

    fn note_arity(&mut self, name: &str, arity: usize, line: usize, column: usize) -> Result<(), ParseError> {
        match self.arities.get(name) {
            Some(&(a, _, _)) if a != arity => Err(ParseError::ArityConflict {
                line,
                column,
                symbol: name.to_string(),
                expected: a,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(name.to_string(), (arity, line, column));
                Ok(())
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, line, column) = self.ident()?;
        let has_args = matches!(self.peek(), Some(Token { tok: Tok::LParen, .. }));
        if self.vars.contains(&name) {
            if has_args {
                return Err(ParseError::Syntax {
                    line,
                    column,
                    message: format!("variable `{name}` applied to arguments"),
                });
            }
            return Ok(Term::Var(Var::new(&name)));
        }
        let mut args = Vec::new();
        if has_args {
            self.pos += 1;
            if !matches!(self.peek(), Some(Token { tok: Tok::RParen, .. })) {
                loop {
                    args.push(self.term()?);
                    match self.peek().map(|t| &t.tok) {
                        Some(Tok::Comma) => self.pos += 1,
                        Some(Tok::RParen) => break,
                        _ => return self.syntax(format!("expected `,` or `)`, found {}", self.describe())),
                    }
                }
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        self.note_arity(&name, args.len(), line, column)?;
        Ok(Term::App(Symbol::new(&name, args.len()), args))
    }

    /// Skips a parenthesised block whose opening paren was consumed.
    fn skip_block(&mut self) -> Result<(), ParseError> {
        let mut depth = 1;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos += 1;
                        return Ok(());
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        self.syntax("unterminated section")
    }

    fn file(&mut self) -> Result<IndexedTrs, ParseError> {
        let mut rules: Vec<(Rule, usize, usize)> = Vec::new();
        let mut declared = BTreeSet::new();
        while self.peek().is_some() {
            self.expect(Tok::LParen, "`(` opening a section")?;
            let (kw, line, column) = self.ident()?;
            match kw.as_str() {
                "VAR" => {
                    while let Some(Token { tok: Tok::Ident(s), .. }) = self.peek() {
                        self.vars.insert(s.clone());
                        self.pos += 1;
                    }
                    self.expect(Tok::RParen, "`)` closing VAR")?;
                }
                "SIG" => {
                    while matches!(self.peek(), Some(Token { tok: Tok::LParen, .. })) {
                        self.pos += 1;
                        let (name, l, c) = self.ident()?;
                        let arity = match self.ident()? {
                            (n, _, _) if n.parse::<usize>().is_ok() => n.parse::<usize>().unwrap(),
                            _ => {
                                self.pos -= 1;
                                return self.syntax("expected arity");
                            }
                        };
                        self.note_arity(&name, arity, l, c)?;
                        declared.insert(Symbol::new(&name, arity));
                        self.expect(Tok::RParen, "`)` closing signature entry")?;
                    }
                    self.expect(Tok::RParen, "`)` closing SIG")?;
                }
                "RULES" => {
                    while !matches!(self.peek(), Some(Token { tok: Tok::RParen, .. }) | None) {
                        let (line, column) = self.here();
                        let lhs = self.term()?;
                        let index = match self.peek().map(|t| t.tok.clone()) {
                            Some(Tok::Arrow(k)) => {
                                self.pos += 1;
                                k.unwrap_or(DEFAULT_INDEX)
                            }
                            _ => return self.syntax(format!("expected `->`, found {}", self.describe())),
                        };
                        let rhs = self.term()?;
                        if let Some(Token { tok: Tok::Other(s), line, column }) = self.peek() {
                            if s == "|" {
                                return Err(ParseError::Unsupported {
                                    line: *line,
                                    column: *column,
                                    section: "RULES".into(),
                                    message: "conditional rules are not supported".into(),
                                });
                            }
                        }
                        rules.push((Rule::new(lhs, rhs, index), line, column));
                    }
                    self.expect(Tok::RParen, "`)` closing RULES")?;
                }
                "COMMENT" => self.skip_block()?,
                "CONDITIONTYPE" | "STRATEGY" | "THEORY" => {
                    return Err(ParseError::Unsupported {
                        line,
                        column,
                        section: kw.clone(),
                        message: "only unconditional first-order systems without strategies or theories are accepted".into(),
                    })
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        column,
                        message: format!("unknown section `{other}`"),
                    })
                }
            }
        }
        for (r, line, column) in &rules {
            if let Err(e) = IndexedTrs::new(vec![r.clone()]) {
                let message = e.to_string();
                return Err(match e {
                    RuleError::ArityConflict { .. } => ParseError::Syntax {
                        line: *line,
                        column: *column,
                        message,
                    },
                    _ => ParseError::IllFormedRule {
                        line: *line,
                        column: *column,
                        message,
                    },
                });
            }
        }
        let rules: Vec<Rule> = rules.into_iter().map(|(r, _, _)| r).collect();
        IndexedTrs::with_signature(rules, declared).map_err(|e| ParseError::Syntax {
            line: 1,
            column: 1,
            message: e.to_string(),
        })
    }
}

/// Parses a `.trs` document.
pub fn parse_trs(text: &str) -> Result<IndexedTrs, ParseError> {
    Parser::new(text).file()
}

/// Parses a standalone term; identifiers listed in `vars` are variables.
pub fn parse_term_with_vars(text: &str, vars: &[&str]) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    p.vars = vars.iter().map(|s| s.to_string()).collect();
    let t = p.term()?;
    if p.peek().is_some() {
        return p.syntax(format!("unexpected {} after term", p.describe()));
    }
    Ok(t)
}

/// Parses a term over the signature and variables of `trs`.
pub fn parse_term_for(text: &str, trs: &IndexedTrs) -> Result<Term, ParseError> {
    let vars: Vec<String> = trs.vars().iter().map(|v| v.name().to_string()).collect();
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let mut p = Parser::new(text);
    p.vars = refs.iter().map(|s| s.to_string()).collect();
    for s in trs.signature() {
        p.arities.insert(s.name().to_string(), (s.arity(), 0, 0));
    }
    let t = p.term()?;
    if p.peek().is_some() {
        return p.syntax(format!("unexpected {} after term", p.describe()));
    }
    Ok(t)
}

/// Parses ground equations `u = v`, one per line (blank lines and lines
/// starting with `#` ignored). Identifiers in `vars` are variables, which
/// congruence closure treats as constants anyway.
pub fn parse_equations(text: &str, vars: &[&str]) -> Result<Vec<(Term, Term)>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((l, r)) = line.split_once('=') else {
            return Err(ParseError::Syntax {
                line: i + 1,
                column: 1,
                message: "expected `u = v`".into(),
            });
        };
        let shift = |e: ParseError| match e {
            ParseError::Syntax { column, message, .. } => ParseError::Syntax {
                line: i + 1,
                column,
                message,
            },
            other => other,
        };
        out.push((
            parse_term_with_vars(l, vars).map_err(shift)?,
            parse_term_with_vars(r, vars).map_err(shift)?,
        ));
    }
    Ok(out)
}
