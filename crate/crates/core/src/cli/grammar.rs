//! Textual element syntax for the `*-mul` subcommands.
//!
//! ```text
//! word    := factor ('*' factor)*        products, read left to right
//! sum     := summand ('+' summand)*      direct sums of complexes
//! factor  := 'K(' alpha ',' slot ')' | 'Z(' index ',' slot ')' | 'e(' index ',' slot ')'
//! summand := 'C(' index ',' slot ')' | 'K(' alpha ',' slot ')'
//! alpha   := '[' int (',' int)* ']'      or a bare int on a one-vertex quiver
//! ```
//!
//! `index` refers to the position of a module class in the `enumerate` listing.

use crate::error::{Error, Result};
use crate::quiverrep::GClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    K(GClass, i64),
    Z(usize, i64),
    E(usize, i64),
    C(usize, i64),
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits on `sep` outside brackets and parentheses.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn int(text: &str) -> Result<i64> {
    text.trim().parse().map_err(|_| err(format!("expected an integer, found `{}`", text.trim())))
}

fn alpha(text: &str, nv: usize) -> Result<GClass> {
    let t = text.trim();
    let coords: Vec<i64> = match t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        Some(inner) => inner.split(',').map(int).collect::<Result<_>>()?,
        None if nv == 1 => vec![int(t)?],
        None => return Err(err(format!("expected a class like [1,0], found `{t}`"))),
    };
    if coords.len() != nv {
        return Err(err(format!("class `{t}` has {} coordinates, expected {nv}", coords.len())));
    }
    Ok(GClass(coords))
}

/// One `Name(arg, slot)` item.
pub fn parse_factor(text: &str, nv: usize) -> Result<Factor> {
    let t = text.trim();
    let open = t.find('(').ok_or_else(|| err(format!("expected `Name(…)`, found `{t}`")))?;
    let inner = t[open + 1..].strip_suffix(')').ok_or_else(|| err(format!("unbalanced parentheses in `{t}`")))?;
    let args = split_top(inner, ',');
    let [arg, slot] = args.as_slice() else {
        return Err(err(format!("`{t}` needs exactly two arguments")));
    };
    let slot = int(slot)?;
    let index = || -> Result<usize> {
        usize::try_from(int(arg)?).map_err(|_| err(format!("negative class index in `{t}`")))
    };
    match t[..open].trim() {
        "K" => Ok(Factor::K(alpha(arg, nv)?, slot)),
        "Z" => Ok(Factor::Z(index()?, slot)),
        "e" => Ok(Factor::E(index()?, slot)),
        "C" => Ok(Factor::C(index()?, slot)),
        other => Err(err(format!("unknown generator `{other}`"))),
    }
}

/// A `*`-separated word; `1` is the empty word.
pub fn parse_word(text: &str, nv: usize) -> Result<Vec<Factor>> {
    if text.trim() == "1" {
        return Ok(Vec::new());
    }
    split_top(text, '*').into_iter().map(|f| parse_factor(f, nv)).collect()
}

/// A `+`-separated direct sum; `0` is the zero complex.
pub fn parse_sum(text: &str, nv: usize) -> Result<Vec<Factor>> {
    if text.trim() == "0" {
        return Ok(Vec::new());
    }
    split_top(text, '+').into_iter().map(|f| parse_factor(f, nv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        let w = parse_word("K([1,-1],0) * Z(3,-1)*e(0, 2)", 2).unwrap();
        assert_eq!(w, vec![Factor::K(GClass(vec![1, -1]), 0), Factor::Z(3, -1), Factor::E(0, 2)]);
        assert!(parse_word("1", 2).unwrap().is_empty());
    }

    #[test]
    fn bare_alpha_on_one_vertex() {
        assert_eq!(parse_factor("K(-1,2)", 1).unwrap(), Factor::K(GClass(vec![-1]), 2));
        assert!(parse_factor("K(-1,2)", 2).is_err());
    }

    #[test]
    fn sums() {
        let s = parse_sum("C(1,0)+K([1,0],2)", 2).unwrap();
        assert_eq!(s, vec![Factor::C(1, 0), Factor::K(GClass(vec![1, 0]), 2)]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["Q(1,0)", "Z(1)", "Z(1,0", "K([1],0)", "Z(-1,0)", "Z(a,0)"] {
            assert!(parse_factor(bad, 2).is_err(), "{bad}");
        }
    }
}
