//! Text interfaces: ring specs (JSON), element expressions, and bracketed
//! polynomial syntax, plus the canonical formatters that invert them.
//!
//! Element syntax is a small expression grammar over the context's symbol
//! (w or u): `w+1`, `2*w^2+w`, `(u^2+1)/u`. Polynomials are coefficient
//! lists lowest degree first: `[1, 0, 1]` is t^2 + 1.

use serde::{Deserialize, Serialize};

use crate::central::CentralPolynomial;
use crate::context::{Context, KElement};
use crate::error::{Error, Result};
use crate::fp::FpPoly;
use crate::skew::SkewPolynomial;

/// The on-disk ring description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingSpec {
    Twisted {
        p: u64,
        e: usize,
        n: usize,
        /// Coefficients lowest degree first; omitted = built-in table.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<String>,
    },
    Differential {
        p: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        search_degree_bound: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        variable: Option<String>,
    },
}

pub const DEFAULT_SEARCH_DEGREE_BOUND: u32 = 6;

/// Parse a ring spec from JSON text and build its context.
pub fn parse_ring_spec(text: &str) -> Result<(Context, RingSpec)> {
    let spec: RingSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: format!("ring spec JSON: {e}"),
    })?;
    let ctx = context_of_spec(&spec)?;
    Ok((ctx, spec))
}

pub fn context_of_spec(spec: &RingSpec) -> Result<Context> {
    match spec {
        RingSpec::Twisted {
            p,
            e,
            n,
            modulus,
            generator,
        } => {
            let m = modulus.as_ref().map(|c| FpPoly::new(*p, c.clone()));
            Context::twisted_labeled(
                *p,
                *e,
                *n,
                m,
                generator.clone().unwrap_or_else(|| "w".into()),
            )
        }
        RingSpec::Differential {
            p,
            search_degree_bound,
            variable,
        } => Context::differential_labeled(
            *p,
            search_degree_bound.unwrap_or(DEFAULT_SEARCH_DEGREE_BOUND),
            variable.clone().unwrap_or_else(|| "u".into()),
        ),
    }
}

// ---- tokenizer ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = vec![];
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            ']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Num(text[start..i].to_string())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Sym(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    Ok(Lexer {
        toks,
        idx: 0,
        end: text.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.idx).cloned();
        self.idx += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let pos = self.pos();
        match self.next() {
            Some((_, t)) if t == want => Ok(()),
            other => Err(Error::Parse {
                pos,
                msg: format!("expected {want:?}, found {:?}", other.map(|(_, t)| t)),
            }),
        }
    }
}

// ---- element expression parser ----

const MAX_NESTING: usize = 128;

struct ElemParser<'a> {
    ctx: &'a Context,
    lx: Lexer,
    depth: usize,
}

impl<'a> ElemParser<'a> {
    fn symbol_label(&self) -> &str {
        match self.ctx {
            Context::Twisted(c) => &c.gen_label,
            Context::Differential(c) => &c.var_label,
        }
    }

    fn descend(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Error::Parse {
                pos: self.lx.pos(),
                msg: format!("expression nested deeper than {MAX_NESTING}"),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<KElement> {
        let mut acc = self.term()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Plus) => {
                    self.lx.next();
                    let rhs = self.term()?;
                    acc = self.ctx.add(&acc, &rhs);
                }
                Some(Tok::Minus) => {
                    self.lx.next();
                    let rhs = self.term()?;
                    acc = self.ctx.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<KElement> {
        let mut acc = self.unary()?;
        loop {
            match self.lx.peek() {
                Some(Tok::Star) => {
                    self.lx.next();
                    let rhs = self.unary()?;
                    acc = self.ctx.mul(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    let pos = self.lx.pos();
                    self.lx.next();
                    let rhs = self.unary()?;
                    acc = self.ctx.div(&acc, &rhs).map_err(|_| Error::Parse {
                        pos,
                        msg: "division by zero".into(),
                    })?;
                }
                // juxtaposition: 2w, 2(w+1), w(w+1)
                Some(Tok::Sym(_)) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    let rhs = self.unary()?;
                    acc = self.ctx.mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<KElement> {
        if matches!(self.lx.peek(), Some(Tok::Minus)) {
            self.descend()?;
            self.lx.next();
            let v = self.unary()?;
            self.depth -= 1;
            return Ok(self.ctx.neg(&v));
        }
        let base = self.atom()?;
        if matches!(self.lx.peek(), Some(Tok::Caret)) {
            self.lx.next();
            let pos = self.lx.pos();
            match self.lx.next() {
                Some((_, Tok::Num(digits))) => {
                    let e: u64 = digits.parse().map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(self.ctx.pow(&base, e));
                }
                other => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!(
                            "expected an integer exponent, found {:?}",
                            other.map(|(_, t)| t)
                        ),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<KElement> {
        let pos = self.lx.pos();
        match self.lx.next() {
            Some((_, Tok::Num(digits))) => {
                let p = self.ctx.characteristic();
                let mut acc: u64 = 0;
                for d in digits.bytes() {
                    acc = (acc * 10 + (d - b'0') as u64) % p;
                }
                Ok(self.ctx.from_int(acc as i64))
            }
            Some((_, Tok::Sym(s))) => {
                if s == self.symbol_label() {
                    Ok(self.ctx.generator())
                } else {
                    Err(Error::Parse {
                        pos,
                        msg: format!(
                            "unknown symbol {s:?}; this ring uses {:?}",
                            self.symbol_label()
                        ),
                    })
                }
            }
            Some((_, Tok::LParen)) => {
                self.descend()?;
                let v = self.expr()?;
                self.lx.expect(Tok::RParen)?;
                self.depth -= 1;
                Ok(v)
            }
            other => Err(Error::Parse {
                pos,
                msg: format!(
                    "expected a number, symbol, or parenthesis, found {:?}",
                    other.map(|(_, t)| t)
                ),
            }),
        }
    }
}

/// Parse one element of K.
pub fn parse_element(ctx: &Context, text: &str) -> Result<KElement> {
    let lx = lex(text)?;
    let mut p = ElemParser { ctx, lx, depth: 0 };
    let v = p.expr()?;
    if let Some(_t) = p.lx.peek() {
        return Err(Error::Parse {
            pos: p.lx.pos(),
            msg: "trailing input after element".into(),
        });
    }
    Ok(v)
}

/// Parse a skew polynomial given as `[a0, a1, ...]`, lowest degree first.
pub fn parse_poly(ctx: &Context, text: &str) -> Result<SkewPolynomial> {
    let lx = lex(text)?;
    let mut p = ElemParser { ctx, lx, depth: 0 };
    p.lx.expect(Tok::LBracket)?;
    let mut coeffs = vec![];
    if matches!(p.lx.peek(), Some(Tok::RBracket)) {
        p.lx.next();
    } else {
        loop {
            coeffs.push(p.expr()?);
            match p.lx.next() {
                Some((_, Tok::Comma)) => continue,
                Some((_, Tok::RBracket)) => break,
                other => {
                    return Err(Error::Parse {
                        pos: p.lx.pos(),
                        msg: format!("expected ',' or ']', found {:?}", other.map(|(_, t)| t)),
                    })
                }
            }
        }
    }
    if let Some(_t) = p.lx.peek() {
        return Err(Error::Parse {
            pos: p.lx.pos(),
            msg: "trailing input after polynomial".into(),
        });
    }
    Ok(SkewPolynomial::new(ctx.clone(), coeffs))
}

/// Comma-separated element list (CLI --cs flag).
pub fn parse_element_list(ctx: &Context, text: &str) -> Result<Vec<KElement>> {
    text.split(',')
        .map(|part| parse_element(ctx, part))
        .collect()
}

// ---- canonical formatting ----

fn format_fp_poly(f: &FpPoly, var: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms = vec![];
    for (k, &c) in f.coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (k, c) {
            (0, c) => format!("{c}"),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}*{var}"),
            (k, 1) => format!("{var}^{k}"),
            (k, c) => format!("{c}*{var}^{k}"),
        };
        terms.push(t);
    }
    terms.join("+")
}

fn term_count(f: &FpPoly) -> usize {
    f.coeffs.iter().filter(|&&c| c != 0).count()
}

/// Canonical element text; parses back to the same value.
pub fn format_element(ctx: &Context, a: &KElement) -> String {
    match (ctx, a) {
        (Context::Twisted(c), KElement::Twisted(coords)) => {
            format_fp_poly(&FpPoly::new(c.p, coords.clone()), &c.gen_label)
        }
        (Context::Differential(c), KElement::Differential(r)) => {
            let num = format_fp_poly(&r.num, &c.var_label);
            let den = format_fp_poly(&r.den, &c.var_label);
            let num = if term_count(&r.num) > 1 {
                format!("({num})")
            } else {
                num
            };
            let den = if term_count(&r.den) > 1 {
                format!("({den})")
            } else {
                den
            };
            format!("{num}/{den}")
        }
        _ => panic!("context/element kind mismatch"),
    }
}

/// Canonical polynomial text `[a0, a1, ...]`.
pub fn format_poly(ctx: &Context, f: &SkewPolynomial) -> String {
    let parts: Vec<String> = f.coeffs.iter().map(|c| format_element(ctx, c)).collect();
    format!("[{}]", parts.join(", "))
}

/// Central polynomial as its coefficient strings, lowest degree first.
pub fn format_central(hhat: &CentralPolynomial) -> Vec<String> {
    hhat.coeffs
        .iter()
        .map(|c| format_element(&hhat.ctx, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Context {
        Context::twisted(2, 1, 2, None).unwrap()
    }

    fn f2u() -> Context {
        Context::differential(2, 6).unwrap()
    }

    #[test]
    fn ring_specs_parse_and_build() {
        let (ctx, spec) =
            parse_ring_spec(r#"{"kind":"twisted","p":2,"e":1,"n":2,"modulus":[1,1,1]}"#).unwrap();
        assert!(ctx.is_twisted());
        assert_eq!(
            spec,
            RingSpec::Twisted {
                p: 2,
                e: 1,
                n: 2,
                modulus: Some(vec![1, 1, 1]),
                generator: None
            }
        );
        let (ctx, _) = parse_ring_spec(r#"{"kind":"twisted","p":2,"e":1,"n":2}"#).unwrap();
        assert!(ctx.is_twisted());
        let (ctx, _) =
            parse_ring_spec(r#"{"kind":"differential","p":2,"search_degree_bound":4}"#).unwrap();
        assert_eq!(ctx.as_differential().unwrap().search_degree_bound, 4);
        // defaulted bound
        let (ctx, _) = parse_ring_spec(r#"{"kind":"differential","p":3}"#).unwrap();
        assert_eq!(ctx.as_differential().unwrap().search_degree_bound, 6);
        // bad JSON and bad semantics
        assert!(matches!(parse_ring_spec("{"), Err(Error::Parse { .. })));
        assert!(parse_ring_spec(r#"{"kind":"twisted","p":4,"e":1,"n":2}"#).is_err());
    }

    #[test]
    fn twisted_elements_roundtrip() {
        let ctx = f4();
        let w = ctx.generator();
        let w1 = ctx.add(&w, &ctx.one());
        assert_eq!(parse_element(&ctx, "w+1").unwrap(), w1);
        assert_eq!(parse_element(&ctx, "w^2").unwrap(), w1); // w^2 = w+1
        assert_eq!(parse_element(&ctx, "1+w").unwrap(), w1);
        assert_eq!(parse_element(&ctx, " ( w + 1 ) ").unwrap(), w1);
        assert_eq!(parse_element(&ctx, "2").unwrap(), ctx.zero());
        assert_eq!(parse_element(&ctx, "-w").unwrap(), w);
        assert_eq!(parse_element(&ctx, "w*w").unwrap(), w1);
        assert_eq!(parse_element(&ctx, "0").unwrap(), ctx.zero());
        for a in ctx.enumerate().unwrap() {
            let s = format_element(&ctx, &a);
            assert_eq!(parse_element(&ctx, &s).unwrap(), a, "roundtrip of {s}");
        }
    }

    #[test]
    fn differential_elements_roundtrip() {
        let ctx = f2u();
        let u = ctx.generator();
        let u2p1 = ctx.add(&ctx.mul(&u, &u), &ctx.one());
        let a = ctx.div(&u2p1, &u).unwrap();
        assert_eq!(parse_element(&ctx, "(u^2+1)/u").unwrap(), a);
        assert_eq!(format_element(&ctx, &a), "(u^2+1)/u");
        assert_eq!(format_element(&ctx, &ctx.zero()), "0/1");
        assert_eq!(format_element(&ctx, &ctx.one()), "1/1");
        assert_eq!(parse_element(&ctx, "1/(u+1)+u").unwrap(), {
            let inv = ctx.inv(&ctx.add(&u, &ctx.one())).unwrap();
            ctx.add(&inv, &u)
        });
        // division by zero is a parse-level error with a position
        assert!(matches!(
            parse_element(&ctx, "1/(u+u)"),
            Err(Error::Parse { msg, .. }) if msg.contains("division by zero")
        ));
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        let ctx = f4();
        assert!(matches!(
            parse_element(&ctx, "u+1"),
            Err(Error::Parse { .. })
        ));
        let ctx = f2u();
        assert!(matches!(parse_element(&ctx, "w"), Err(Error::Parse { .. })));
    }

    #[test]
    fn poly_roundtrip() {
        let ctx = f4();
        let f = parse_poly(&ctx, "[1, 0, 1]").unwrap();
        assert_eq!(f.degree(), Some(2));
        assert_eq!(format_poly(&ctx, &f), "[1, 0, 1]");
        let g = parse_poly(&ctx, "[w+1, w, 1]").unwrap();
        assert_eq!(format_poly(&ctx, &g), "[w+1, w, 1]");
        assert_eq!(parse_poly(&ctx, &format_poly(&ctx, &g)).unwrap(), g);
        // trailing zero coefficients are stripped
        assert_eq!(parse_poly(&ctx, "[1, 1, 0]").unwrap().degree(), Some(1));
        assert!(parse_poly(&ctx, "[]").unwrap().is_zero());
        // differential coefficients
        let ctx = f2u();
        let f = parse_poly(&ctx, "[(u^2+1)/1, 0/1, 1/1]").unwrap();
        assert_eq!(format_poly(&ctx, &f), "[(u^2+1)/1, 0/1, 1/1]");
        // parse errors carry positions
        assert!(matches!(
            parse_poly(&ctx, "[1، 2]"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&ctx, "[1, ]"),
            Err(Error::Parse { .. })
        ));
    }
}
