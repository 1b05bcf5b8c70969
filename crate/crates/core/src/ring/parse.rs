//! Class expressions and the line-oriented model file format.
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := rational? "*"? "[" label "]" | rational
//! rational := integer ("/" positive-integer)?
//! ```
//!
//! A bare rational denotes a multiple of the unit. The first term may carry
//! a leading sign. Whitespace is insignificant.
//!
//! Model files:
//!
//! ```text
//! model <name> topdeg <n>
//! basis <label> <degree>
//! mul <labelA> <labelB> = <expr>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored; a file may hold
//! several `model` blocks. Unlisted products are zero, except products with
//! the unit which default to the identity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BasisElement, CohClass, RingModel};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Parses a class expression against the basis of `model`.
pub fn parse_class(text: &str, model: &Arc<RingModel>) -> Result<CohClass> {
    let labels: Vec<&str> = model.basis().iter().map(|b| b.label.as_str()).collect();
    let coeffs = parse_coeffs(text, &labels, model.unit_index())?;
    CohClass::new(model.clone(), coeffs)
}

/// Parses an expression into a coefficient vector over `labels`; bare
/// rationals go to position `unit`.
pub fn parse_coeffs(text: &str, labels: &[&str], unit: usize) -> Result<Vec<Q>> {
    let mut p = Parser {
        src: text,
        pos: 0,
        labels,
        unit,
    };
    p.expr()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    labels: &'a [&'a str],
    unit: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Vec<Q>> {
        let mut out = vec![Q::zero(); self.labels.len()];
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.syntax("empty expression"));
        }
        let mut negate = self.sign();
        loop {
            let (idx, c) = self.term()?;
            out[idx] += if negate { -c } else { c };
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some('+') | Some('-') => negate = self.sign(),
                Some(c) => return Err(self.syntax(format!("unexpected `{c}`"))),
            }
        }
    }

    /// Consumes an optional sign; true when negative.
    fn sign(&mut self) -> bool {
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        }
    }

    fn term(&mut self) -> Result<(usize, Q)> {
        self.skip_ws();
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.rational()?),
            Some('[') => None,
            Some(c) => return Err(self.syntax(format!("expected a term, found `{c}`"))),
            None => return Err(self.syntax("expected a term")),
        };
        self.skip_ws();
        let star = self.peek() == Some('*');
        if star {
            self.pos += 1;
            self.skip_ws();
        }
        if self.peek() == Some('[') {
            let idx = self.label()?;
            Ok((idx, coeff.unwrap_or_else(Q::one)))
        } else if star {
            Err(self.syntax("expected `[` after `*`"))
        } else {
            Ok((self.unit, coeff.expect("coefficient parsed")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Q> {
        let num = self.integer()?;
        self.skip_ws();
        if self.peek() != Some('/') {
            return Ok(Q::from_integer(num));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let den = self.integer()?;
        if den.is_zero() || den.is_negative() {
            return Err(Error::Syntax {
                pos: at,
                msg: "denominator must be positive".into(),
            });
        }
        Ok(Q::new(num, den))
    }

    fn label(&mut self) -> Result<usize> {
        let open = self.pos;
        self.pos += 1;
        let rest = &self.src[self.pos..];
        let Some(close) = rest.find(']') else {
            return Err(Error::Syntax {
                pos: open,
                msg: "unclosed `[`".into(),
            });
        };
        let label = rest[..close].trim();
        self.pos += close + 1;
        self.labels
            .iter()
            .position(|l| *l == label)
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
                pos: open + 1,
            })
    }
}

/// Parses every `model` block in a model file.
pub fn parse_model_file(text: &str) -> Result<Vec<RingModel>> {
    struct Pending {
        name: String,
        topdeg: u32,
        basis: Vec<BasisElement>,
        muls: Vec<(usize, String, String, String)>,
    }

    fn finish(p: Pending) -> Result<RingModel> {
        let labels: Vec<&str> = p.basis.iter().map(|b| b.label.as_str()).collect();
        let unit = p.basis.iter().position(|b| b.degree == 0).unwrap_or(0);
        let mut products = Vec::new();
        for (line, a, b, expr) in &p.muls {
            let idx = |l: &str| {
                labels
                    .iter()
                    .position(|x| *x == l)
                    .ok_or_else(|| Error::ModelFile {
                        line: *line,
                        msg: format!("unknown basis label `{l}`"),
                    })
            };
            let (i, j) = (idx(a)?, idx(b)?);
            let coeffs = parse_coeffs(expr, &labels, unit).map_err(|e| Error::ModelFile {
                line: *line,
                msg: e.to_string(),
            })?;
            products.push((i, j, coeffs));
        }
        RingModel::new(p.name, p.topdeg, p.basis, products)
    }

    let mut models = Vec::new();
    let mut cur: Option<Pending> = None;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::ModelFile { line: line_no, msg };
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "model" => {
                if words.len() != 4 || words[2] != "topdeg" {
                    return Err(err("expected `model <name> topdeg <n>`".into()));
                }
                let topdeg = words[3]
                    .parse()
                    .map_err(|_| err(format!("bad top degree `{}`", words[3])))?;
                if let Some(p) = cur.take() {
                    models.push(finish(p)?);
                }
                cur = Some(Pending {
                    name: words[1].to_string(),
                    topdeg,
                    basis: Vec::new(),
                    muls: Vec::new(),
                });
            }
            "basis" => {
                let p = cur
                    .as_mut()
                    .ok_or_else(|| err("`basis` before `model`".into()))?;
                if words.len() != 3 {
                    return Err(err("expected `basis <label> <degree>`".into()));
                }
                let degree = words[2]
                    .parse()
                    .map_err(|_| err(format!("bad degree `{}`", words[2])))?;
                p.basis.push(BasisElement::new(words[1], degree));
            }
            "mul" => {
                let p = cur
                    .as_mut()
                    .ok_or_else(|| err("`mul` before `model`".into()))?;
                let (lhs, rhs) = line["mul".len()..]
                    .split_once('=')
                    .ok_or_else(|| err("expected `mul <a> <b> = <expr>`".into()))?;
                let pair: Vec<&str> = lhs.split_whitespace().collect();
                if pair.len() != 2 {
                    return Err(err("expected two labels before `=`".into()));
                }
                p.muls
                    .push((line_no, pair[0].into(), pair[1].into(), rhs.trim().into()));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if let Some(p) = cur.take() {
        models.push(finish(p)?);
    }
    if models.is_empty() {
        return Err(Error::ModelFile {
            line: 0,
            msg: "no model found".into(),
        });
    }
    Ok(models)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use crate::ring::v;

    #[test]
    fn parses_mixed_terms() {
        let c = parse_class("2[H] - 1/3[pt]", &v()).unwrap();
        assert_eq!(c.coeffs(), &[q(0), q(2), q(0), q(0), q(0), qf(-1, 3)]);
        let c = parse_class(" -[e] + 3 * [ l ] + 7 ", &v()).unwrap();
        assert_eq!(c.coeffs(), &[q(7), q(0), q(0), q(-1), q(3), q(0)]);
        let c = parse_class("[H] + [H] - 2/4[H]", &v()).unwrap();
        assert_eq!(c.coeff("H"), Some(&qf(3, 2)));
    }

    #[test]
    fn unknown_label_reports_position() {
        let err = parse_class("5[H] + [Q]", &v()).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownLabel {
                label: "Q".into(),
                pos: 8
            }
        );
    }

    #[test]
    fn syntax_errors() {
        let m = v();
        for bad in ["", "2[H", "2 * 3", "[H] [A]", "1/0[H]", "+", "[H] -", "2*"] {
            assert!(
                matches!(parse_class(bad, &m), Err(Error::Syntax { .. })),
                "{bad:?} should be a syntax error"
            );
        }
        assert_eq!(
            parse_class("[H] ? [A]", &m).unwrap_err(),
            Error::Syntax {
                pos: 4,
                msg: "unexpected `?`".into()
            }
        );
    }

    #[test]
    fn model_file_roundtrip() {
        let m = v();
        let text = m.to_model_file();
        let parsed = parse_model_file(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(&parsed[0], m.as_ref());
    }

    #[test]
    fn model_file_errors_carry_line_numbers() {
        let text = "model X topdeg 2\nbasis 1 0\nbasis p 2\nmul p p = [q]\n";
        assert!(matches!(
            parse_model_file(text),
            Err(Error::ModelFile { line: 4, .. })
        ));
        assert!(matches!(
            parse_model_file("basis x 0\n"),
            Err(Error::ModelFile { line: 1, .. })
        ));
        assert!(parse_model_file("# nothing\n").is_err());
    }
}
