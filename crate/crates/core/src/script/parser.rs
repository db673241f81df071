use std::sync::Arc;

use super::{AnyMap, AnyVariety, ScriptError, Session, Statement};
use crate::error::Error;
use crate::field::{Field, PrimeField, RationalField};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::rational_map::RationalMap;
use crate::ring::PolyRing;
use crate::variety::Variety;

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Blanks out comments, keeping every offset in place.
fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_comment = false;
    for (i, c) in text.char_indices() {
        if c == '\n' {
            in_comment = false;
            out.push(c);
            continue;
        }
        if !in_comment {
            let rest = &text[i..];
            let dashes = rest.starts_with("--") && !rest[2..].starts_with(|ch: char| ch.is_ascii_alphabetic());
            if rest.starts_with("//") || dashes {
                in_comment = true;
            }
        }
        if in_comment {
            for _ in 0..c.len_utf8() {
                out.push(' ');
            }
        } else {
            out.push(c);
        }
    }
    out
}

/// A cursor over one statement, reporting errors at absolute offsets.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, offset: usize, message: impl Into<String>) -> ScriptError {
        let (line, column) = line_col(self.text, offset);
        ScriptError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.end && self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.end
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..self.end].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ScriptError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ScriptError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..self.end];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(self.err(start, "expected a name"));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    fn integer(&mut self) -> Result<(usize, &'a str), ScriptError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..self.end].chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err(start, "expected an integer"));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    /// Comma-separated items up to the matching `close`, returned as raw
    /// text spans.
    fn delimited(&mut self, close: char) -> Result<Vec<(usize, &'a str)>, ScriptError> {
        let open_at = self.pos;
        let mut depth = 0i32;
        let mut items = Vec::new();
        let mut start = self.pos;
        for (i, c) in self.text[self.pos..self.end].char_indices() {
            let at = self.pos + i;
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' if depth > 0 => depth -= 1,
                ',' if depth == 0 => {
                    items.push((start, &self.text[start..at]));
                    start = at + 1;
                }
                c if c == close && depth == 0 => {
                    items.push((start, &self.text[start..at]));
                    self.pos = at + 1;
                    // a single empty item means an empty list
                    if items.len() == 1 && items[0].1.trim().is_empty() {
                        items.clear();
                    }
                    if let Some((o, _)) = items.iter().find(|(_, s)| s.trim().is_empty()) {
                        return Err(self.err(*o, "empty list entry"));
                    }
                    return Ok(items);
                }
                _ => {}
            }
        }
        Err(self.err(open_at, format!("missing `{close}`")))
    }
}

pub(super) fn parse(text: &str) -> Result<Session, ScriptError> {
    let clean = strip_comments(text);
    let mut session = Session::default();
    let mut start = 0;
    while let Some(rel) = clean[start..].find(';') {
        let end = start + rel;
        statement(&mut session, text, &clean, start, end)?;
        start = end + 1;
    }
    let tail = clean[start..].trim_start();
    if !tail.is_empty() {
        let at = clean.len() - tail.len();
        let (line, column) = line_col(text, at);
        return Err(ScriptError {
            line,
            column,
            message: "statement is not terminated by `;`".into(),
        });
    }
    Ok(session)
}

fn statement(session: &mut Session, text: &str, clean: &str, start: usize, end: usize) -> Result<(), ScriptError> {
    let mut cur = Cursor { text: clean, pos: start, end };
    if cur.at_end() {
        return Ok(());
    }
    let kw_at = cur.pos;
    let word_end = clean[kw_at..end].find(char::is_whitespace).map_or(end, |i| kw_at + i);
    match &clean[kw_at..word_end] {
        "ring" => {
            cur.pos = word_end;
            ring_decl(session, &mut cur)
        }
        "map" => {
            cur.pos = word_end;
            map_decl(session, &mut cur)
        }
        _ => {
            let words: Vec<&str> = clean[kw_at..end].split_whitespace().collect();
            let st = Statement::parse_words(&words).map_err(|m| cur.err(kw_at, m))?;
            for name in st.map_names() {
                if !session.maps.contains_key(name) {
                    return Err(cur.err(kw_at, format!("undeclared map `{name}`")));
                }
            }
            let (line, column) = line_col(text, kw_at);
            session.statements.push((line, column, st));
            Ok(())
        }
    }
}

fn ring_decl(session: &mut Session, cur: &mut Cursor<'_>) -> Result<(), ScriptError> {
    let (name_at, name) = cur.ident()?;
    if session.rings.contains_key(name) || session.maps.contains_key(name) {
        return Err(cur.err(name_at, format!("`{name}` is already declared")));
    }
    cur.expect("=")?;
    let (field_at, field) = cur.ident()?;
    let prime = match field {
        "QQ" => None,
        "GF" => {
            cur.expect("(")?;
            let (p_at, p) = cur.integer()?;
            cur.expect(")")?;
            let field = p
                .parse::<u32>()
                .ok()
                .and_then(PrimeField::new)
                .ok_or_else(|| cur.err(p_at, format!("{p} is not a prime below 2^31")))?;
            Some(field)
        }
        other => return Err(cur.err(field_at, format!("unknown field `{other}`; use QQ or GF(p)"))),
    };
    cur.expect("[")?;
    let vars = cur.delimited(']')?;
    let mut names: Vec<String> = Vec::new();
    for (at, raw) in &vars {
        let v = raw.trim();
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        let at = at + raw.len() - raw.trim_start().len();
        if !ok {
            return Err(cur.err(at, format!("`{v}` is not a valid variable name")));
        }
        if names.iter().any(|n| n == v) {
            return Err(cur.err(at, format!("variable `{v}` appears twice")));
        }
        names.push(v.to_string());
    }
    if names.is_empty() {
        return Err(cur.err(cur.pos, "a ring needs at least one variable"));
    }
    let relations = if cur.eat("/") {
        cur.expect("(")?;
        cur.delimited(')')?
    } else {
        Vec::new()
    };
    if !cur.at_end() {
        return Err(cur.err(cur.pos, "unexpected text after the ring declaration"));
    }
    let v = match prime {
        None => AnyVariety::Rational(build_variety(cur, RationalField, names, &relations)?),
        Some(k) => AnyVariety::Prime(build_variety(cur, k, names, &relations)?),
    };
    session.rings.insert(name.to_string(), v);
    Ok(())
}

fn parse_polys<F: Field>(
    cur: &Cursor<'_>,
    ring: &crate::ring::RingRef<F>,
    items: &[(usize, &str)],
) -> Result<Vec<Poly<F>>, ScriptError> {
    items
        .iter()
        .map(|(at, s)| parse_poly(ring, s).map_err(|e| cur.err(at + e.offset, e.message)))
        .collect()
}

fn build_variety<F: Field>(
    cur: &Cursor<'_>,
    field: F,
    names: Vec<String>,
    relations: &[(usize, &str)],
) -> Result<Arc<Variety<F>>, ScriptError> {
    let ring = PolyRing::new(field, names).into_ref();
    let gens = parse_polys(cur, &ring, relations)?;
    Variety::new(&ring, gens).map(Arc::new).map_err(|e| match e {
        Error::InhomogeneousForm(i) => cur.err(relations[i].0, format!("relation {} is not homogeneous", i + 1)),
        e => cur.err(relations.first().map_or(cur.pos, |r| r.0), e.to_string()),
    })
}

fn map_decl(session: &mut Session, cur: &mut Cursor<'_>) -> Result<(), ScriptError> {
    let (name_at, name) = cur.ident()?;
    if session.rings.contains_key(name) || session.maps.contains_key(name) {
        return Err(cur.err(name_at, format!("`{name}` is already declared")));
    }
    cur.expect(":")?;
    let (src_at, src) = cur.ident()?;
    cur.expect("->")?;
    let (tgt_at, tgt) = cur.ident()?;
    cur.expect("=")?;
    cur.expect("[")?;
    let bracket = cur.pos;
    let forms = cur.delimited(']')?;
    if !cur.at_end() {
        return Err(cur.err(cur.pos, "unexpected text after the map declaration"));
    }
    let lookup = |at: usize, n: &str| session.rings.get(n).cloned().ok_or_else(|| cur.err(at, format!("undeclared ring `{n}`")));
    let s = lookup(src_at, src)?;
    let t = lookup(tgt_at, tgt)?;
    let map = match (s, t) {
        (AnyVariety::Rational(s), AnyVariety::Rational(t)) => AnyMap::Rational(build_map(cur, s, t, &forms, bracket)?),
        (AnyVariety::Prime(s), AnyVariety::Prime(t)) if s.ring().field() == t.ring().field() => {
            AnyMap::Prime(build_map(cur, s, t, &forms, bracket)?)
        }
        _ => return Err(cur.err(tgt_at, "source and target rings have different coefficient fields")),
    };
    session.maps.insert(name.to_string(), map);
    Ok(())
}

fn build_map<F: Field>(
    cur: &Cursor<'_>,
    src: Arc<Variety<F>>,
    tgt: Arc<Variety<F>>,
    forms: &[(usize, &str)],
    bracket: usize,
) -> Result<RationalMap<F>, ScriptError> {
    let polys = parse_polys(cur, src.ring(), forms)?;
    let at = |i: usize| forms.get(i).map_or(bracket, |f| f.0 + (f.1.len() - f.1.trim_start().len()));
    RationalMap::new(src, tgt, polys).map_err(|e| match e {
        Error::DegreeMismatch { index, expected, found } => {
            cur.err(at(index), format!("form {} has degree {found}, but the first form has degree {expected}", index + 1))
        }
        Error::InhomogeneousForm(i) => cur.err(at(i), format!("form {} is not homogeneous", i + 1)),
        Error::NotInTarget(j) => cur.err(bracket, format!("the forms do not satisfy relation {} of the target", j + 1)),
        e => cur.err(bracket, e.to_string()),
    })
}
