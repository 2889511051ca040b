//! Text syntax for set expressions, schedules and words.
//!
//! ```text
//! set      := operand (("|" operand)* | ("&" operand)*)
//! operand  := "!" operand | "(" set ")" | atom
//! atom     := "empty" | "full" | "fin{" ints "}" | "res(" int "," int ")"
//!           | "thick(" schedule ")" | "ret(" word "," string ["," "base=" ("0"|"1")] ")"
//!           | ("shiftdown" | "shiftup" | "dilate" | "quot") "(" int "," set ")"
//! schedule := "geom" ("b=" | "c=" | "slope=" | "offset=") int ...
//!           | "explicit" "[" (int "-" int),* "]"
//!           | "sep" key=value ... | "thin(" int "," int "," schedule ")"
//! word     := "fib" | "thue" | "periodic" string | "sturm" "[" ints "]"
//!           | "subst" "{" (string "->" string),* "}" "seed" string
//! ```
//!
//! `|` and `&` cannot be mixed without parentheses. Printing is fully
//! parenthesized and re-parses to an equal expression.

use std::collections::BTreeMap;
use std::fmt;

use crate::schedule::{LengthMap, ScheduleSpec, SeparatedLayout, Spacing};
use crate::setcalc::{ReturnSpec, SetExpr};
use crate::symbolic::{IndexBase, WordSpec};
use crate::window::Interval;
use crate::{Error, Result};

mod lexer;

use lexer::{Tok, Token};

pub fn parse_set(text: &str) -> Result<SetExpr> {
    let mut p = Parser::new(text)?;
    let e = p.set()?;
    p.finish()?;
    e.validate().map_err(|e| p.error_at_start(e))?;
    Ok(e)
}

pub fn parse_schedule(text: &str) -> Result<ScheduleSpec> {
    let mut p = Parser::new(text)?;
    let s = p.schedule()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_word(text: &str) -> Result<WordSpec> {
    let mut p = Parser::new(text)?;
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: lexer::lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if !matches!(t.tok, Tok::Eof) {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: t.line, col: t.col, msg: msg.into() })
    }

    fn error_at_start(&self, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => Error::Parse { line: 1, col: 1, msg: other.to_string() },
        }
    }

    fn finish(&mut self) -> Result<()> {
        let t = self.next();
        match t.tok {
            Tok::Eof => Ok(()),
            _ => self.err(&t, format!("unexpected {} after expression", t.tok)),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            self.err(&t, format!("expected {want}, found {}", t.tok))
        }
    }

    fn int(&mut self) -> Result<u64> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(n),
            _ => self.err(&t, format!("expected integer, found {}", t.tok)),
        }
    }

    fn string(&mut self) -> Result<Vec<u8>> {
        let t = self.next();
        match t.tok {
            Tok::Str(s) => Ok(s.into_bytes()),
            _ => self.err(&t, format!("expected quoted string, found {}", t.tok)),
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            _ => self.err(&t, format!("expected identifier, found {}", t.tok)),
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if &self.peek().tok == want {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn set(&mut self) -> Result<SetExpr> {
        let first = self.operand()?;
        let op = match self.peek().tok {
            Tok::Pipe => Tok::Pipe,
            Tok::Amp => Tok::Amp,
            _ => return Ok(first),
        };
        let mut parts = vec![first];
        while matches!(self.peek().tok, Tok::Pipe | Tok::Amp) {
            let t = self.next();
            if t.tok != op {
                return self.err(&t, "cannot mix '|' and '&' without parentheses");
            }
            parts.push(self.operand()?);
        }
        Ok(if op == Tok::Pipe { SetExpr::Union(parts) } else { SetExpr::Inter(parts) })
    }

    fn operand(&mut self) -> Result<SetExpr> {
        if self.eat(&Tok::Bang) {
            return Ok(SetExpr::Compl(Box::new(self.operand()?)));
        }
        if self.eat(&Tok::LParen) {
            let e = self.set()?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        let (name, t) = self.ident()?;
        match name.as_str() {
            "empty" => Ok(SetExpr::Empty),
            "full" => Ok(SetExpr::Full),
            "fin" => {
                self.expect(Tok::LBrace)?;
                let mut v = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        let at = self.peek().clone();
                        let n = self.int()?;
                        if n == 0 {
                            return self.err(&at, "finite set members must be >= 1");
                        }
                        v.push(n);
                        if self.eat(&Tok::RBrace) {
                            break;
                        }
                        self.expect(Tok::Comma)?;
                    }
                }
                v.sort_unstable();
                v.dedup();
                Ok(SetExpr::Finite(v))
            }
            "res" => {
                self.expect(Tok::LParen)?;
                let r = self.int()?;
                self.expect(Tok::Comma)?;
                let m = self.int()?;
                self.expect(Tok::RParen)?;
                SetExpr::residue(r, m).or_else(|e| self.err(&t, e.to_string()))
            }
            "thick" => {
                self.expect(Tok::LParen)?;
                let s = self.schedule()?;
                self.expect(Tok::RParen)?;
                Ok(SetExpr::Thick(s))
            }
            "ret" => {
                self.expect(Tok::LParen)?;
                let word = self.word()?;
                self.expect(Tok::Comma)?;
                let pattern = self.string()?;
                let mut base = IndexBase::Zero;
                if self.eat(&Tok::Comma) {
                    let (key, kt) = self.ident()?;
                    if key != "base" {
                        return self.err(&kt, format!("unknown return option '{key}'"));
                    }
                    self.expect(Tok::Eq)?;
                    let vt = self.peek().clone();
                    base = match self.int()? {
                        0 => IndexBase::Zero,
                        1 => IndexBase::One,
                        _ => return self.err(&vt, "base must be 0 or 1"),
                    };
                }
                self.expect(Tok::RParen)?;
                Ok(SetExpr::Return(ReturnSpec { word, pattern, base }))
            }
            "shiftdown" | "shiftup" | "dilate" | "quot" => {
                self.expect(Tok::LParen)?;
                let at = self.peek().clone();
                let n = self.int()?;
                if n == 0 {
                    return self.err(&at, format!("{name} argument must be >= 1"));
                }
                self.expect(Tok::Comma)?;
                let inner = Box::new(self.set()?);
                self.expect(Tok::RParen)?;
                Ok(match name.as_str() {
                    "shiftdown" => SetExpr::ShiftDown(n, inner),
                    "shiftup" => SetExpr::ShiftUp(n, inner),
                    "dilate" => SetExpr::Dilate(n, inner),
                    _ => SetExpr::Quotient(n, inner),
                })
            }
            other => self.err(&t, format!("unknown set constructor '{other}'")),
        }
    }

    fn key_values(&mut self, allowed: &[&str]) -> Result<BTreeMap<String, (String, Token)>> {
        let mut out = BTreeMap::new();
        while let Tok::Ident(key) = &self.peek().tok {
            let key = key.clone();
            let kt = self.next();
            if !allowed.contains(&key.as_str()) {
                return self.err(&kt, format!("unknown key '{key}'"));
            }
            self.expect(Tok::Eq)?;
            let vt = self.next();
            let value = match &vt.tok {
                Tok::Int(n) => n.to_string(),
                Tok::Ident(s) => s.clone(),
                _ => return self.err(&vt, format!("expected value for '{key}', found {}", vt.tok)),
            };
            if out.insert(key.clone(), (value, vt)).is_some() {
                return self.err(&kt, format!("duplicate key '{key}'"));
            }
        }
        Ok(out)
    }

    fn kv_int(&self, kv: &BTreeMap<String, (String, Token)>, key: &str, default: Option<u64>, at: &Token) -> Result<u64> {
        match kv.get(key) {
            Some((v, t)) => v.parse().or_else(|_| self.err(t, format!("'{key}' must be an integer"))),
            None => default.map_or_else(|| self.err(at, format!("missing key '{key}'")), Ok),
        }
    }

    fn schedule(&mut self) -> Result<ScheduleSpec> {
        let (name, t) = self.ident()?;
        let s = match name.as_str() {
            "geom" => {
                let kv = self.key_values(&["b", "c", "slope", "offset"])?;
                ScheduleSpec::Geometric {
                    base: self.kv_int(&kv, "b", None, &t)?,
                    anchor: self.kv_int(&kv, "c", None, &t)?,
                    length: LengthMap {
                        slope: self.kv_int(&kv, "slope", Some(1), &t)?,
                        offset: self.kv_int(&kv, "offset", Some(1), &t)?,
                    },
                }
            }
            "explicit" => {
                self.expect(Tok::LBracket)?;
                let mut ivs = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        let at = self.peek().clone();
                        let lo = self.int()?;
                        self.expect(Tok::Dash)?;
                        let hi = self.int()?;
                        if lo == 0 || lo > hi {
                            return self.err(&at, format!("bad interval {lo}-{hi}"));
                        }
                        ivs.push(Interval::new(lo, hi));
                        if self.eat(&Tok::RBracket) {
                            break;
                        }
                        self.expect(Tok::Comma)?;
                    }
                }
                ScheduleSpec::Explicit(ivs)
            }
            "sep" => {
                let kv = self.key_values(&["rows", "cols", "row", "col", "factor", "spacing", "origin", "width"])?;
                let spacing = match kv.get("spacing").map(|(v, t)| (v.as_str(), t)) {
                    None | Some(("linear", _)) => Spacing::Linear,
                    Some(("doubling", _)) => Spacing::Doubling,
                    Some((v, t)) => return self.err(t, format!("unknown spacing '{v}'")),
                };
                let layout = SeparatedLayout {
                    rows: self.kv_int(&kv, "rows", None, &t)?,
                    cols: self.kv_int(&kv, "cols", None, &t)?,
                    factor: self.kv_int(&kv, "factor", Some(10), &t)?,
                    spacing,
                    origin: self.kv_int(&kv, "origin", Some(1), &t)?,
                    width: self.kv_int(&kv, "width", Some(1), &t)?,
                };
                ScheduleSpec::Separated {
                    layout,
                    row: self.kv_int(&kv, "row", None, &t)?,
                    col: self.kv_int(&kv, "col", None, &t)?,
                }
            }
            "thin" => {
                self.expect(Tok::LParen)?;
                let step = self.int()?;
                self.expect(Tok::Comma)?;
                let offset = self.int()?;
                self.expect(Tok::Comma)?;
                let inner = self.schedule()?;
                self.expect(Tok::RParen)?;
                ScheduleSpec::Thinned { inner: Box::new(inner), step, offset }
            }
            other => return self.err(&t, format!("unknown schedule kind '{other}'")),
        };
        s.validate().or_else(|e| self.err(&t, e.to_string()))?;
        Ok(s)
    }

    fn word(&mut self) -> Result<WordSpec> {
        let (name, t) = self.ident()?;
        let w = match name.as_str() {
            "fib" => WordSpec::fibonacci(),
            "thue" => WordSpec::thue_morse(),
            "periodic" => WordSpec::Periodic { word: self.string()? },
            "sturm" => {
                self.expect(Tok::LBracket)?;
                let mut terms = Vec::new();
                loop {
                    terms.push(self.int()?);
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                    self.expect(Tok::Comma)?;
                }
                WordSpec::Sturmian { terms }
            }
            "subst" => {
                self.expect(Tok::LBrace)?;
                let mut rules = BTreeMap::new();
                loop {
                    let lt = self.peek().clone();
                    let from = self.string()?;
                    if from.len() != 1 {
                        return self.err(&lt, "substitution rule must map a single letter");
                    }
                    self.expect(Tok::Arrow)?;
                    let to = self.string()?;
                    if rules.insert(from[0], to).is_some() {
                        return self.err(&lt, "duplicate substitution rule");
                    }
                    if self.eat(&Tok::RBrace) {
                        break;
                    }
                    self.expect(Tok::Comma)?;
                }
                let (kw, kt) = self.ident()?;
                if kw != "seed" {
                    return self.err(&kt, "expected 'seed'");
                }
                let st = self.peek().clone();
                let seed = self.string()?;
                if seed.len() != 1 {
                    return self.err(&st, "seed must be a single letter");
                }
                WordSpec::Substitution { rules, seed: seed[0] }
            }
            other => return self.err(&t, format!("unknown word kind '{other}'")),
        };
        w.validate().or_else(|e| self.err(&t, e.to_string()))?;
        Ok(w)
    }
}

fn quoted(f: &mut impl fmt::Write, bytes: &[u8]) -> fmt::Result {
    f.write_char('"')?;
    for &b in bytes {
        match b {
            b'"' => f.write_str("\\\"")?,
            b'\\' => f.write_str("\\\\")?,
            _ => f.write_char(b as char)?,
        }
    }
    f.write_char('"')
}

fn joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn write_set(f: &mut fmt::Formatter<'_>, e: &SetExpr) -> fmt::Result {
    match e {
        SetExpr::Empty => f.write_str("empty"),
        SetExpr::Full => f.write_str("full"),
        SetExpr::Finite(v) => {
            f.write_str("fin{")?;
            joined(f, v, ",")?;
            f.write_str("}")
        }
        SetExpr::Residue { residue, modulus } => write!(f, "res({residue},{modulus})"),
        SetExpr::Thick(s) => write!(f, "thick({s})"),
        SetExpr::Return(r) => {
            write!(f, "ret({}, ", r.word)?;
            quoted(f, &r.pattern)?;
            if r.base == IndexBase::One {
                f.write_str(", base=1")?;
            }
            f.write_str(")")
        }
        SetExpr::Union(v) | SetExpr::Inter(v) => {
            let (unit, sep) = if matches!(e, SetExpr::Union(_)) { ("empty", " | ") } else { ("full", " & ") };
            match v.len() {
                0 => f.write_str(unit),
                1 => write!(f, "{}", v[0]),
                _ => {
                    f.write_str("(")?;
                    joined(f, v, sep)?;
                    f.write_str(")")
                }
            }
        }
        SetExpr::Compl(a) => write!(f, "!{a}"),
        SetExpr::ShiftDown(n, a) => write!(f, "shiftdown({n}, {a})"),
        SetExpr::ShiftUp(n, a) => write!(f, "shiftup({n}, {a})"),
        SetExpr::Dilate(n, a) => write!(f, "dilate({n}, {a})"),
        SetExpr::Quotient(n, a) => write!(f, "quot({n}, {a})"),
    }
}

impl fmt::Display for ScheduleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleSpec::Geometric { base, anchor, length } => {
                write!(f, "geom b={base} c={anchor}")?;
                if *length != LengthMap::LINEAR {
                    write!(f, " slope={} offset={}", length.slope, length.offset)?;
                }
                Ok(())
            }
            ScheduleSpec::Explicit(ivs) => {
                f.write_str("explicit [")?;
                for (i, iv) in ivs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}-{}", iv.lo, iv.hi)?;
                }
                f.write_str("]")
            }
            ScheduleSpec::Separated { layout: l, row, col } => {
                let spacing = match l.spacing {
                    Spacing::Linear => "linear",
                    Spacing::Doubling => "doubling",
                };
                write!(
                    f,
                    "sep rows={} cols={} row={row} col={col} factor={} spacing={spacing} origin={} width={}",
                    l.rows, l.cols, l.factor, l.origin, l.width
                )
            }
            ScheduleSpec::Thinned { inner, step, offset } => write!(f, "thin({step}, {offset}, {inner})"),
        }
    }
}

pub(crate) fn write_word(f: &mut fmt::Formatter<'_>, w: &WordSpec) -> fmt::Result {
    if *w == WordSpec::fibonacci() {
        return f.write_str("fib");
    }
    if *w == WordSpec::thue_morse() {
        return f.write_str("thue");
    }
    match w {
        WordSpec::Periodic { word } => {
            f.write_str("periodic ")?;
            quoted(f, word)
        }
        WordSpec::Sturmian { terms } => {
            f.write_str("sturm [")?;
            joined(f, terms, ",")?;
            f.write_str("]")
        }
        WordSpec::Substitution { rules, seed } => {
            f.write_str("subst {")?;
            for (i, (from, to)) in rules.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                quoted(f, &[*from])?;
                f.write_str("->")?;
                quoted(f, to)?;
            }
            f.write_str("} seed ")?;
            quoted(f, &[*seed])
        }
    }
}
