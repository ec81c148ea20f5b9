//! Line-oriented text format for presentations.
//!
//! ```text
//! # comment
//! presentation
//! gens: a b J
//! J: J
//! rel: a b a^- b^- b^-
//! ```
//!
//! In `invpresentation` files the `J:` line is not allowed, `J` is reserved,
//! and a relation may start with the literal `J`.

use thiserror::Error;

use super::{FreeWord, Generators, InvPresentation, InvWord, Letter, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: generator `{name}` declared twice")]
    DuplicateGenerator { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: undeclared generator `{name}`")]
    UndeclaredLetter { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: `J` is reserved and cannot be a generator")]
    ReservedJ { line: usize, column: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedPresentation {
    Free(Presentation),
    Inv(InvPresentation),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(s: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push(Token { text: &s[st..i], column: offset + st + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(Token { text: &s[st..], column: offset + st + 1 });
    }
    out
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Free,
    Inv,
}

pub fn parse(text: &str) -> Result<ParsedPresentation, ParseError> {
    let mut mode = None;
    let mut gens: Option<Generators> = None;
    let mut free_rels = Vec::new();
    let mut inv_rels = Vec::new();
    let mut j_word: Option<FreeWord> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(mode) = mode else {
            mode = Some(match body.trim() {
                "presentation" => Mode::Free,
                "invpresentation" => Mode::Inv,
                other => {
                    let col = body.find(other).unwrap_or(0) + 1;
                    return Err(syntax(line, col, "expected `presentation` or `invpresentation` header"));
                }
            });
            continue;
        };
        let Some(colon) = body.find(':') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(syntax(line, col, "expected `gens:`, `J:` or `rel:`"));
        };
        let key = body[..colon].trim();
        let key_col = body.len() - body.trim_start().len() + 1;
        let toks = tokens(&body[colon + 1..], colon + 1);
        match key {
            "gens" => {
                if gens.is_some() {
                    return Err(syntax(line, key_col, "`gens:` given twice"));
                }
                let mut g = Generators::new();
                for t in &toks {
                    if t.text == "J" && mode == Mode::Inv {
                        return Err(ParseError::ReservedJ { line, column: t.column });
                    }
                    if !valid_name(t.text) {
                        return Err(syntax(line, t.column, format!("invalid generator name `{}`", t.text)));
                    }
                    if g.push(t.text).is_none() {
                        return Err(ParseError::DuplicateGenerator {
                            line,
                            column: t.column,
                            name: t.text.to_string(),
                        });
                    }
                }
                gens = Some(g);
            }
            "J" | "rel" => {
                let Some(g) = gens.as_ref() else {
                    return Err(syntax(line, key_col, "`gens:` must come first"));
                };
                match (mode, key) {
                    (Mode::Inv, "J") => {
                        return Err(syntax(line, key_col, "`J:` lines are only allowed in `presentation` files"))
                    }
                    (Mode::Free, "J") => {
                        if j_word.is_some() {
                            return Err(syntax(line, key_col, "`J:` given twice"));
                        }
                        j_word = Some(free_word(&toks, g, line)?);
                    }
                    (Mode::Free, _) => free_rels.push(free_word(&toks, g, line)?),
                    (Mode::Inv, _) => inv_rels.push(inv_word(&toks, g, line)?),
                }
            }
            _ => return Err(syntax(line, key_col, format!("unknown key `{key}`"))),
        }
    }

    let Some(mode) = mode else {
        return Err(syntax(1, 1, "empty input"));
    };
    let generators = gens.unwrap_or_default();
    Ok(match mode {
        Mode::Free => ParsedPresentation::Free(Presentation {
            generators,
            relations: free_rels,
            j_word: j_word.unwrap_or_default(),
        }),
        Mode::Inv => ParsedPresentation::Inv(InvPresentation { generators, relations: inv_rels }),
    })
}

fn free_word(toks: &[Token<'_>], g: &Generators, line: usize) -> Result<FreeWord, ParseError> {
    let mut letters = Vec::with_capacity(toks.len());
    for t in toks {
        let (name, inverse) = match t.text.strip_suffix("^-") {
            Some(n) => (n, true),
            None => (t.text, false),
        };
        if !valid_name(name) {
            return Err(syntax(line, t.column, format!("invalid token `{}`", t.text)));
        }
        let gen = g.id(name).ok_or_else(|| ParseError::UndeclaredLetter {
            line,
            column: t.column,
            name: name.to_string(),
        })?;
        letters.push(Letter { gen, inverse });
    }
    Ok(FreeWord::new(letters))
}

fn inv_word(toks: &[Token<'_>], g: &Generators, line: usize) -> Result<InvWord, ParseError> {
    let mut parity = false;
    let mut letters = Vec::with_capacity(toks.len());
    for (i, t) in toks.iter().enumerate() {
        if t.text == "J" {
            if i == 0 {
                parity = true;
                continue;
            }
            return Err(syntax(line, t.column, "`J` may only appear as the first token"));
        }
        if !valid_name(t.text) {
            return Err(syntax(line, t.column, format!("invalid token `{}`", t.text)));
        }
        let gen = g.id(t.text).ok_or_else(|| ParseError::UndeclaredLetter {
            line,
            column: t.column,
            name: t.text.to_string(),
        })?;
        letters.push(gen);
    }
    Ok(InvWord::new(parity, letters))
}

/// Parses a single involutive word such as `"J x y x"`.
pub fn parse_inv_word(text: &str, g: &Generators) -> Result<InvWord, ParseError> {
    inv_word(&tokens(text, 0), g, 1)
}

/// Parses a single free-group word such as `"a b^-"`.
pub fn parse_free_word(text: &str, g: &Generators) -> Result<FreeWord, ParseError> {
    free_word(&tokens(text, 0), g, 1)
}

pub fn serialize(p: &ParsedPresentation) -> String {
    let mut out = String::new();
    match p {
        ParsedPresentation::Free(p) => {
            out.push_str("presentation\n");
            out.push_str(&format!("gens: {}\n", p.generators.names().join(" ")));
            out.push_str(&format!("J: {}\n", p.j_word.render(&p.generators)));
            for r in &p.relations {
                out.push_str(&format!("rel: {}\n", r.render(&p.generators)));
            }
        }
        ParsedPresentation::Inv(p) => {
            out.push_str("invpresentation\n");
            out.push_str(&format!("gens: {}\n", p.generators.names().join(" ")));
            for r in &p.relations {
                out.push_str(&format!("rel: {}\n", r.render(&p.generators)));
            }
        }
    }
    out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG3: &str = "invpresentation\ngens: x y z u v\nrel: x y x z\nrel: x u v u\n";

    #[test]
    fn parses_two_relator_text() {
        let ParsedPresentation::Inv(p) = parse(FIG3).unwrap() else { panic!() };
        assert_eq!(p.generators.len(), 5);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(serialize(&ParsedPresentation::Inv(p.clone())), FIG3);
    }

    #[test]
    fn empty_relation_list() {
        let ParsedPresentation::Inv(p) = parse("invpresentation\ngens: a b\n").unwrap() else { panic!() };
        assert!(p.relations.is_empty());
    }

    #[test]
    fn j_is_an_ordinary_generator_in_free_mode() {
        let ParsedPresentation::Free(p) = parse("presentation\ngens: J\nJ: J\nrel: J J\n").unwrap() else { panic!() };
        assert_eq!(p.relations[0], FreeWord::new(vec![Letter::pos(0), Letter::pos(0)]));
        assert_eq!(p.j_word, FreeWord::new(vec![Letter::pos(0)]));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("invpresentation\ngens: x\nrel: x  q\n"),
            Err(ParseError::UndeclaredLetter { line: 3, column: 9, name: "q".into() })
        );
        assert_eq!(
            parse("invpresentation\ngens: x x\n"),
            Err(ParseError::DuplicateGenerator { line: 2, column: 9, name: "x".into() })
        );
        assert_eq!(parse("invpresentation\ngens: J\n"), Err(ParseError::ReservedJ { line: 2, column: 7 }));
        assert!(matches!(parse("invpresentation\ngens: x\nrel: x J\n"), Err(ParseError::Syntax { line: 3, .. })));
        assert!(matches!(parse("group\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse("invpresentation\ngens: x\nrel: x^-\n"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "# Higman-style\npresentation\ngens: a b\nJ:\nrel: a b a^- b^- b^-  # tail\n";
        let p = parse(text).unwrap();
        let again = parse(&serialize(&p)).unwrap();
        assert_eq!(p, again);
    }
}
