use std::collections::HashSet;

use thiserror::Error;

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

/// λ-calculus with mutually recursive `letrec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LetrecTerm {
    Var {
        name: String,
        span: Span,
    },
    Abs {
        name: String,
        body: Box<LetrecTerm>,
        span: Span,
    },
    App {
        fun: Box<LetrecTerm>,
        arg: Box<LetrecTerm>,
        span: Span,
    },
    Letrec {
        bindings: Vec<(String, LetrecTerm)>,
        body: Box<LetrecTerm>,
        span: Span,
    },
}

impl LetrecTerm {
    pub fn span(&self) -> Span {
        match self {
            LetrecTerm::Var { span, .. }
            | LetrecTerm::Abs { span, .. }
            | LetrecTerm::App { span, .. }
            | LetrecTerm::Letrec { span, .. } => *span,
        }
    }

    /// Number of syntax nodes; each binding counts as the nodes of its body.
    pub fn size(&self) -> usize {
        match self {
            LetrecTerm::Var { .. } => 1,
            LetrecTerm::Abs { body, .. } => 1 + body.size(),
            LetrecTerm::App { fun, arg, .. } => 1 + fun.size() + arg.size(),
            LetrecTerm::Letrec { bindings, body, .. } => {
                1 + body.size() + bindings.iter().map(|(_, t)| t.size()).sum::<usize>()
            }
        }
    }

    pub fn var(name: &str) -> LetrecTerm {
        LetrecTerm::Var {
            name: name.into(),
            span: Span::default(),
        }
    }

    pub fn abs(name: &str, body: LetrecTerm) -> LetrecTerm {
        LetrecTerm::Abs {
            name: name.into(),
            body: Box::new(body),
            span: Span::default(),
        }
    }

    pub fn app(fun: LetrecTerm, arg: LetrecTerm) -> LetrecTerm {
        LetrecTerm::App {
            fun: Box::new(fun),
            arg: Box::new(arg),
            span: Span::default(),
        }
    }

    pub fn letrec(bindings: Vec<(&str, LetrecTerm)>, body: LetrecTerm) -> LetrecTerm {
        LetrecTerm::Letrec {
            bindings: bindings.into_iter().map(|(n, t)| (n.to_string(), t)).collect(),
            body: Box::new(body),
            span: Span::default(),
        }
    }
}

impl std::fmt::Display for LetrecTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LetrecTerm::Var { name, .. } => write!(f, "{name}"),
            LetrecTerm::Abs { name, body, .. } => write!(f, "\\{name}. {body}"),
            LetrecTerm::App { fun, arg, .. } => {
                match **fun {
                    LetrecTerm::Abs { .. } | LetrecTerm::Letrec { .. } => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match **arg {
                    LetrecTerm::Var { .. } => write!(f, " {arg}"),
                    _ => write!(f, " ({arg})"),
                }
            }
            LetrecTerm::Letrec { bindings, body, .. } => {
                write!(f, "letrec ")?;
                for (i, (n, t)) in bindings.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{n} = {t}")?;
                }
                write!(f, " in {body}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unbound variable `{name}` at byte {position}")]
    UnboundVariable { name: String, position: usize },
    #[error("duplicate binding `{name}` at byte {position}")]
    DuplicateBinding { name: String, position: usize },
    #[error("binding `{name}` only refers to itself through other bindings")]
    BlackHole { name: String, position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    LParen,
    RParen,
    Eq,
    Semi,
    Letrec,
    In,
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, FrontendError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let single = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((
                tok,
                Span {
                    start: i,
                    end: i + c.len_utf8(),
                },
            ));
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_alphabetic() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() {
                    end = j + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            let word = &text[i..end];
            let tok = match word {
                "letrec" => Tok::Letrec,
                "in" => Tok::In,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, Span { start: i, end }));
        } else {
            return Err(FrontendError::SyntaxError {
                position: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(_, s)| s.start)
    }

    fn error<T>(&self, message: &str) -> Result<T, FrontendError> {
        Err(FrontendError::SyntaxError {
            position: self.here(),
            message: message.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, FrontendError> {
        match self.toks.get(self.pos) {
            Some((t, s)) if *t == tok => {
                let s = *s;
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(&format!("expected {what}")),
        }
    }

    fn ident(&mut self) -> Result<(String, Span), FrontendError> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(n), s)) => {
                let out = (n.clone(), *s);
                self.pos += 1;
                Ok(out)
            }
            _ => self.error("expected identifier"),
        }
    }

    fn term(&mut self) -> Result<LetrecTerm, FrontendError> {
        if self.peek() == Some(&Tok::Lambda) {
            let start = self.expect(Tok::Lambda, "λ")?;
            let (name, _) = self.ident()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.term()?;
            let span = start.join(body.span());
            return Ok(LetrecTerm::Abs {
                name,
                body: Box::new(body),
                span,
            });
        }
        let mut acc = self.atom()?;
        while matches!(self.peek(), Some(Tok::Ident(_) | Tok::LParen | Tok::Letrec)) {
            let arg = self.atom()?;
            let span = acc.span().join(arg.span());
            acc = LetrecTerm::App {
                fun: Box::new(acc),
                arg: Box::new(arg),
                span,
            };
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<LetrecTerm, FrontendError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let (name, span) = self.ident()?;
                Ok(LetrecTerm::Var { name, span })
            }
            Some(Tok::LParen) => {
                let open = self.expect(Tok::LParen, "`(`")?;
                let inner = self.term()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok(match inner {
                    LetrecTerm::Var { name, .. } => LetrecTerm::Var {
                        name,
                        span: open.join(close),
                    },
                    other => other,
                })
            }
            Some(Tok::Letrec) => {
                let start = self.expect(Tok::Letrec, "`letrec`")?;
                let mut bindings = Vec::new();
                loop {
                    let (name, _) = self.ident()?;
                    self.expect(Tok::Eq, "`=`")?;
                    bindings.push((name, self.term()?));
                    if self.peek() == Some(&Tok::Semi) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect(Tok::In, "`;` or `in`")?;
                let body = self.term()?;
                let span = start.join(body.span());
                Ok(LetrecTerm::Letrec {
                    bindings,
                    body: Box::new(body),
                    span,
                })
            }
            _ => self.error("expected a variable, `(` or `letrec`"),
        }
    }
}

/// Parses a closed term, rejecting unbound names, duplicate bindings in one
/// group, and bindings that only alias each other in a cycle.
pub fn parse(text: &str) -> Result<LetrecTerm, FrontendError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: text.len(),
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    check_closed(&t)?;
    Ok(t)
}

#[derive(Clone, Copy)]
enum Scope<'t> {
    Lambda(&'t str),
    Group(&'t [(String, LetrecTerm)]),
}

/// Validates names and rejects black holes.
pub fn check_closed(t: &LetrecTerm) -> Result<(), FrontendError> {
    let mut env = Vec::new();
    walk(t, &mut env)
}

fn walk<'t>(t: &'t LetrecTerm, env: &mut Vec<Scope<'t>>) -> Result<(), FrontendError> {
    match t {
        LetrecTerm::Var { name, span } => {
            if lookup(env, name).is_none() {
                return Err(FrontendError::UnboundVariable {
                    name: name.clone(),
                    position: span.start,
                });
            }
            Ok(())
        }
        LetrecTerm::Abs { name, body, .. } => {
            env.push(Scope::Lambda(name));
            let r = walk(body, env);
            env.pop();
            r
        }
        LetrecTerm::App { fun, arg, .. } => {
            walk(fun, env)?;
            walk(arg, env)
        }
        LetrecTerm::Letrec { bindings, body, span } => {
            let mut seen = HashSet::new();
            for (n, _) in bindings {
                if !seen.insert(n.as_str()) {
                    return Err(FrontendError::DuplicateBinding {
                        name: n.clone(),
                        position: span.start,
                    });
                }
            }
            env.push(Scope::Group(bindings));
            for (_, b) in bindings {
                walk(b, env)?;
            }
            for (n, b) in bindings {
                if is_black_hole(b, env, n) {
                    return Err(FrontendError::BlackHole {
                        name: n.clone(),
                        position: b.span().start,
                    });
                }
            }
            let r = walk(body, env);
            env.pop();
            r
        }
    }
}

/// Resolution of a name: depth of the frame in `env` and, for groups, the slot.
fn lookup(env: &[Scope<'_>], name: &str) -> Option<(usize, Option<usize>)> {
    env.iter().enumerate().rev().find_map(|(d, s)| match s {
        Scope::Lambda(n) => (*n == name).then_some((d, None)),
        Scope::Group(bs) => bs.iter().position(|(n, _)| n == name).map(|i| (d, Some(i))),
    })
}

/// Follows a binding through bodies that are bare references to other
/// bindings (possibly under inner `letrec`s); a repeated binding is a cycle
/// that never reaches a constructor.
fn is_black_hole<'t>(start: &'t LetrecTerm, env: &[Scope<'t>], name: &str) -> bool {
    let mut env: Vec<Scope<'t>> = env.to_vec();
    let Some((d0, Some(s0))) = lookup(&env, name) else {
        return false;
    };
    let mut visited = vec![(d0, s0)];
    let mut term = start;
    loop {
        match term {
            LetrecTerm::Letrec { bindings, body, .. } => {
                env.push(Scope::Group(bindings));
                term = body;
            }
            LetrecTerm::Var { name, .. } => match lookup(&env, name) {
                Some((d, Some(s))) => {
                    if visited.contains(&(d, s)) {
                        return true;
                    }
                    visited.push((d, s));
                    let Scope::Group(bs) = env[d] else { unreachable!() };
                    env.truncate(d + 1);
                    term = &bs[s].1;
                }
                _ => return false,
            },
            _ => return false,
        }
    }
}
