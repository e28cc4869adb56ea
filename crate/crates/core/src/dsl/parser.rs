//! Line-oriented recursive-descent parser for experiment specs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Undeclared,
    Arity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Undeclared => "undeclared name",
            ParseErrorKind::Arity => "arity error",
        };
        write!(f, "{}:{}: {what}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    /// Integer with its source text, which keeps leading zeros.
    Int(BigInt, String),
    Punct(char),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(_, s) => write!(f, "`{s}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: start.0,
                col: start.1,
            })
        };
        if c == '\n' {
            push(&mut out, Tok::Newline);
            i += 1;
            line += 1;
            col = 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c.is_ascii_digit()
            || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit))
        {
            let from = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[from..i].iter().collect();
            col += i - from;
            let v = s.parse().expect("digits");
            push(&mut out, Tok::Int(v, s));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let from = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-')
            {
                i += 1;
            }
            let s: String = chars[from..i].iter().collect();
            col += i - from;
            push(&mut out, Tok::Ident(s));
        } else if "=()[],:/!".contains(c) {
            push(&mut out, Tok::Punct(c));
            i += 1;
            col += 1;
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax,
                line,
                col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    names: HashMap<String, NameKind>,
    last_group: Option<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, t: &Token, kind: ParseErrorKind, message: String) -> ParseError {
        ParseError {
            kind,
            line: t.line,
            col: t.col,
            message,
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        let t = self.peek();
        self.err_at(
            t,
            ParseErrorKind::Syntax,
            format!("expected {what}, found {}", t.tok),
        )
    }

    fn punct(&mut self, c: char) -> PResult<()> {
        if self.peek().tok == Tok::Punct(c) {
            self.next();
            Ok(())
        } else {
            Err(self.expected(&format!("`{c}`")))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => Err(self.expected("a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.expected(&format!("`{kw}`"))),
        }
    }

    fn int(&mut self) -> PResult<BigInt> {
        match &self.peek().tok {
            Tok::Int(v, _) => {
                let v = v.clone();
                self.next();
                Ok(v)
            }
            _ => Err(self.expected("an integer")),
        }
    }

    fn small<T: TryFrom<u64>>(&mut self, what: &str) -> PResult<T> {
        let t = self.peek().clone();
        let v = self.int()?;
        v.to_u64().and_then(|u| T::try_from(u).ok()).ok_or_else(|| {
            self.err_at(
                &t,
                ParseErrorKind::Syntax,
                format!("{what} out of range: {v}"),
            )
        })
    }

    fn end_of_line(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Newline => {
                self.next();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.expected("end of line")),
        }
    }

    fn skip_blank(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.next();
        }
    }

    /// A previously declared name of the given kind.
    fn reference(&mut self, kind: NameKind) -> PResult<String> {
        let t = self.peek().clone();
        let name = self.ident()?;
        match self.names.get(&name) {
            Some(k) if *k == kind => Ok(name),
            Some(k) => Err(self.err_at(
                &t,
                ParseErrorKind::Undeclared,
                format!("`{name}` is a {k}, not a {kind}"),
            )),
            None => Err(self.err_at(
                &t,
                ParseErrorKind::Undeclared,
                format!("{kind} `{name}` is not declared"),
            )),
        }
    }

    fn comma_list<T>(
        &mut self,
        close: char,
        mut item: impl FnMut(&mut Self) -> PResult<T>,
    ) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.eat_punct(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat_punct(close) {
                return Ok(out);
            }
            self.punct(',')?;
        }
    }

    fn group_expr(&mut self) -> PResult<GroupExpr> {
        let name = self.ident()?;
        match name.as_str() {
            "Z" if self.eat_punct('/') => Ok(GroupExpr::Cyclic(self.small("modulus")?)),
            "Z" => Ok(GroupExpr::Integers),
            "semidirect_Z_Z2" => Ok(GroupExpr::Semidirect),
            "product" => {
                self.punct('(')?;
                let a = self.group_expr()?;
                self.punct(',')?;
                let b = self.group_expr()?;
                self.punct(')')?;
                Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
            }
            _ => {
                self.pos -= 1;
                Ok(GroupExpr::Named(self.reference(NameKind::Group)?))
            }
        }
    }

    fn sub_expr(&mut self) -> PResult<SubExpr> {
        let t = self.peek().clone();
        let name = self.ident()?;
        match name.as_str() {
            "whole" => Ok(SubExpr::Whole),
            "trivial" => Ok(SubExpr::Trivial),
            "Z_factor" => Ok(SubExpr::ZFactor),
            "multiples" => {
                self.punct('(')?;
                let k = self.small("multiple")?;
                self.punct(')')?;
                Ok(SubExpr::Multiples(k))
            }
            "product" => {
                self.punct('(')?;
                let a = self.sub_expr()?;
                self.punct(',')?;
                let b = self.sub_expr()?;
                self.punct(')')?;
                Ok(SubExpr::Product(Box::new(a), Box::new(b)))
            }
            "core" => {
                self.punct('(')?;
                let h = self.reference(NameKind::Subgroup)?;
                self.punct(')')?;
                Ok(SubExpr::Core(h))
            }
            other => Err(self.err_at(
                &t,
                ParseErrorKind::Syntax,
                format!("unknown subgroup form `{other}`"),
            )),
        }
    }

    fn sys_expr(&mut self) -> PResult<SysExpr> {
        let t = self.peek().clone();
        let name = self.ident()?;
        let e = match name.as_str() {
            "golden_mean" => SysExpr::GoldenMean,
            "full_shift" | "trivial" => {
                self.punct('(')?;
                let n = self.small("size")?;
                self.punct(')')?;
                self.keyword("over")?;
                let group = self.group_expr()?;
                if name == "full_shift" {
                    SysExpr::FullShift { alphabet: n, group }
                } else {
                    SysExpr::Trivial { points: n, group }
                }
            }
            "sft" => {
                self.punct('(')?;
                let rows = self.comma_list(')', |p| match &p.peek().tok {
                    Tok::Int(_, s) if s.chars().all(|c| c == '0' || c == '1') => {
                        let s = s.clone();
                        p.next();
                        Ok(s)
                    }
                    _ => Err(p.expected("a 0/1 row")),
                })?;
                SysExpr::Sft { rows }
            }
            "x1" => {
                self.punct('(')?;
                let k_max = self.small("level")?;
                self.punct(')')?;
                SysExpr::X1 { k_max }
            }
            "coinduce" => {
                self.punct('(')?;
                let base = self.reference(NameKind::System)?;
                self.punct(',')?;
                let subgroup = self.reference(NameKind::Subgroup)?;
                let mut shift = None;
                if self.eat_punct(',') {
                    self.keyword("shift")?;
                    self.punct('=')?;
                    shift = Some(self.elem()?);
                }
                self.punct(')')?;
                SysExpr::Coinduce {
                    base,
                    subgroup,
                    shift,
                }
            }
            "dihedral_pair" => {
                self.punct('(')?;
                let base = self.reference(NameKind::System)?;
                self.punct(')')?;
                SysExpr::DihedralPair { base }
            }
            "product" => {
                self.punct('(')?;
                let base = self.reference(NameKind::System)?;
                self.punct(',')?;
                let factors = self.small("factor count")?;
                self.punct(')')?;
                SysExpr::Product { base, factors }
            }
            other => {
                return Err(self.err_at(
                    &t,
                    ParseErrorKind::Syntax,
                    format!("unknown system form `{other}`"),
                ))
            }
        };
        Ok(e)
    }

    fn elem(&mut self) -> PResult<ElemExpr> {
        match &self.peek().tok {
            Tok::Int(..) => Ok(ElemExpr::Int(self.int()?)),
            Tok::Ident(s) if s == "x" => {
                self.next();
                Ok(ElemExpr::Refl)
            }
            Tok::Punct('(') => {
                self.next();
                let a = self.elem()?;
                self.punct(',')?;
                let b = self.elem()?;
                self.punct(')')?;
                Ok(ElemExpr::Pair(Box::new(a), Box::new(b)))
            }
            _ => Err(self.expected("a group element")),
        }
    }

    fn center(&mut self) -> PResult<CenterExpr> {
        match &self.peek().tok {
            Tok::Ident(s) if s == "inf" => {
                self.next();
                Ok(CenterExpr::Infinity)
            }
            _ => Ok(CenterExpr::Finite(self.int()?)),
        }
    }

    fn region(&mut self) -> PResult<RegionExpr> {
        if self.eat_punct('!') {
            self.keyword("pts")?;
            self.punct('(')?;
            return Ok(RegionExpr::NotPts(
                self.comma_list(')', |p| p.small("point"))?,
            ));
        }
        let t = self.peek().clone();
        let name = self.ident()?;
        Ok(match name.as_str() {
            "whole" => RegionExpr::Whole,
            "cyl" => {
                self.punct('(')?;
                RegionExpr::Cyl(self.comma_list(')', |p| {
                    let g = p.elem()?;
                    p.punct(':')?;
                    Ok((g, p.small("symbol")?))
                })?)
            }
            "pts" => {
                self.punct('(')?;
                RegionExpr::Pts(self.comma_list(')', |p| p.small("point"))?)
            }
            "nb" => {
                self.punct('(')?;
                let k = self.small("level")?;
                self.punct(',')?;
                let c = self.center()?;
                self.punct(')')?;
                RegionExpr::Nb(k, c)
            }
            "apt" => {
                self.punct('(')?;
                let c = self.center()?;
                self.punct(')')?;
                RegionExpr::APt(c)
            }
            "coords" => {
                self.punct('(')?;
                RegionExpr::Coords(self.comma_list(')', |p| {
                    let g = p.elem()?;
                    p.punct(':')?;
                    Ok((g, p.region()?))
                })?)
            }
            "tuple" => {
                self.punct('(')?;
                RegionExpr::Tuple(self.comma_list(')', Parser::region)?)
            }
            other => {
                return Err(self.err_at(
                    &t,
                    ParseErrorKind::Syntax,
                    format!("unknown region form `{other}`"),
                ))
            }
        })
    }

    fn pool_expr(&mut self) -> PResult<PoolExpr> {
        if self.eat_punct('[') {
            return Ok(PoolExpr::List(self.comma_list(']', Parser::elem)?));
        }
        self.keyword("ball")?;
        self.punct('(')?;
        let r = self.small("radius")?;
        self.punct(')')?;
        Ok(PoolExpr::Ball(r))
    }

    fn declare(&mut self, t: &Token, name: &str, kind: NameKind) -> PResult<()> {
        if self.names.contains_key(name) {
            return Err(self.err_at(
                t,
                ParseErrorKind::Syntax,
                format!("`{name}` is declared twice"),
            ));
        }
        self.names.insert(name.to_string(), kind);
        Ok(())
    }

    fn decl(&mut self, head: &str) -> PResult<Decl> {
        let t = self.peek().clone();
        let name = self.ident()?;
        self.punct('=')?;
        let d = match head {
            "group" => Decl::Group {
                name: name.clone(),
                expr: self.group_expr()?,
            },
            "subgroup" => {
                let expr = self.sub_expr()?;
                let group = if matches!(&self.peek().tok, Tok::Ident(s) if s == "of") {
                    self.next();
                    self.reference(NameKind::Group)?
                } else {
                    self.last_group.clone().ok_or_else(|| {
                        self.err_at(
                            &t,
                            ParseErrorKind::Undeclared,
                            "no group declared before this subgroup".into(),
                        )
                    })?
                };
                Decl::Subgroup {
                    name: name.clone(),
                    expr,
                    group,
                }
            }
            "system" => Decl::System {
                name: name.clone(),
                expr: self.sys_expr()?,
            },
            "tuple" | "cover" => {
                self.punct('[')?;
                let regions = self.comma_list(']', Parser::region)?;
                if regions.is_empty() {
                    return Err(self.err_at(
                        &t,
                        ParseErrorKind::Arity,
                        format!("{head} `{name}` has no regions"),
                    ));
                }
                if head == "tuple" {
                    Decl::Tuple {
                        name: name.clone(),
                        regions,
                    }
                } else {
                    Decl::Cover {
                        name: name.clone(),
                        regions,
                    }
                }
            }
            "pool" => Decl::Pool {
                name: name.clone(),
                expr: self.pool_expr()?,
            },
            _ => unreachable!("checked by caller"),
        };
        self.declare(&t, &name, d.kind())?;
        if head == "group" {
            self.last_group = Some(name);
        }
        Ok(d)
    }

    fn verb(&mut self, head: &Token, kind: VerbKind) -> PResult<Verb> {
        let params = kind.params();
        let mut args = BTreeMap::new();
        while !matches!(self.peek().tok, Tok::Newline | Tok::Eof) {
            let kt = self.peek().clone();
            let key = self.ident()?;
            let Some(&(_, arg, _)) = params.iter().find(|(k, _, _)| *k == key) else {
                return Err(self.err_at(
                    &kt,
                    ParseErrorKind::Arity,
                    format!("`{}` takes no argument `{key}`", kind.keyword()),
                ));
            };
            self.punct('=')?;
            let value = match arg {
                ArgKind::Int => Value::Int(self.int()?),
                ArgKind::Ref(k) => Value::Name(self.reference(k)?),
                ArgKind::Refs(k) => {
                    self.punct('[')?;
                    Value::List(self.comma_list(']', |p| p.reference(k))?)
                }
            };
            if args.insert(key.clone(), value).is_some() {
                return Err(self.err_at(
                    &kt,
                    ParseErrorKind::Arity,
                    format!("argument `{key}` given twice"),
                ));
            }
        }
        for (k, _, required) in params {
            if *required && !args.contains_key(*k) {
                return Err(self.err_at(
                    head,
                    ParseErrorKind::Arity,
                    format!("`{}` needs argument `{k}`", kind.keyword()),
                ));
            }
        }
        Ok(Verb { kind, args })
    }
}

/// Parses a spec: declarations, each on its own line, then one verb line.
pub fn parse_spec(text: &str) -> Result<ExperimentSpec, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        names: HashMap::new(),
        last_group: None,
    };
    let mut decls = Vec::new();
    p.skip_blank();
    loop {
        let t = p.peek().clone();
        let head = match &t.tok {
            Tok::Ident(s) => s.clone(),
            Tok::Eof => {
                return Err(p.err_at(
                    &t,
                    ParseErrorKind::Syntax,
                    "expected a declaration or a verb, found end of input".into(),
                ))
            }
            _ => return Err(p.expected("a declaration or a verb")),
        };
        p.next();
        match head.as_str() {
            "group" | "subgroup" | "system" | "tuple" | "cover" | "pool" => {
                decls.push(p.decl(&head)?);
                p.end_of_line()?;
                p.skip_blank();
            }
            _ => {
                let Some(kind) = VerbKind::from_keyword(&head) else {
                    return Err(p.err_at(
                        &t,
                        ParseErrorKind::Syntax,
                        format!("unknown declaration or verb `{head}`"),
                    ));
                };
                let verb = p.verb(&t, kind)?;
                p.end_of_line()?;
                p.skip_blank();
                if p.peek().tok != Tok::Eof {
                    let extra = p.peek().clone();
                    return Err(p.err_at(
                        &extra,
                        ParseErrorKind::Syntax,
                        "a spec has exactly one verb, and it comes last".into(),
                    ));
                }
                return Ok(ExperimentSpec { decls, verb });
            }
        }
    }
}
