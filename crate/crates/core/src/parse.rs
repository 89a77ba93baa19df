//! Recursive-descent parser for polynomial expressions and algebra declarations.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := uint ('/' uint)? | 's' int | basis | 'x' | '(' expr ')'
//! basis  := 'i' | 'j' | 'k' | 'l' | 'il' | 'jl' | 'kl'
//! ```
//!
//! Products keep their written order and associate to the left. The variable
//! is central, so every expression normalizes to left-coefficient form. `k`
//! is `i*j`; `il` is `i*l`, and so on. `s5` is `sqrt(5)` and is only accepted
//! when the ground field is `Q(sqrt 5)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::oct::{OctSpec, Octonion, OCT_BASIS};
use crate::poly::Poly;
use crate::quat::{QuatSpec, Quaternion};
use crate::scalars::{FieldSpec, Scalar};

/// Algebras whose basis symbols can appear in expressions.
pub trait Symbolic: Element {
    fn basis_symbol(spec: &Self::Spec, name: &str) -> Option<Self>;
    fn kind_name() -> &'static str;
}

impl Symbolic for Quaternion {
    fn basis_symbol(spec: &Arc<QuatSpec>, name: &str) -> Option<Self> {
        let idx = ["i", "j", "k"].iter().position(|s| *s == name)?;
        Some(Quaternion::basis(spec, idx + 1))
    }

    fn kind_name() -> &'static str {
        "quaternion"
    }
}

impl Symbolic for Octonion {
    fn basis_symbol(spec: &Arc<OctSpec>, name: &str) -> Option<Self> {
        let idx = OCT_BASIS[1..].iter().position(|s| *s == name)?;
        Some(Octonion::basis(spec, idx + 1))
    }

    fn kind_name() -> &'static str {
        "octonion"
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Radical(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Radical(d) => write!(f, "s{d}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((tok, start));
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let n: BigInt = src[start..pos].parse().expect("digits");
            out.push((Tok::Int(n), start));
            continue;
        }
        if c.is_ascii_lowercase() {
            while pos < bytes.len() && bytes[pos].is_ascii_lowercase() {
                pos += 1;
            }
            let word = &src[start..pos];
            if word == "s" {
                // radical token s<d>, with d possibly negative: s5, s-3
                let num_start = pos;
                if pos < bytes.len() && bytes[pos] == b'-' {
                    pos += 1;
                }
                let digits = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if digits == pos {
                    return Err(Error::parse(start, "radical token 's' needs an integer, e.g. s5"));
                }
                let d: i64 = src[num_start..pos]
                    .parse()
                    .map_err(|_| Error::parse(start, "radicand out of range"))?;
                out.push((Tok::Radical(d), start));
            } else {
                out.push((Tok::Ident(word.to_string()), start));
            }
            continue;
        }
        return Err(Error::parse(
            start,
            format!("unexpected character '{}'", src[start..].chars().next().unwrap()),
        ));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'s, E: Symbolic> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    spec: &'s E::Spec,
}

impl<E: Symbolic> Parser<'_, E> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly<E>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<E>> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<E>> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e: usize = n
                    .try_into()
                    .ok()
                    .filter(|e| *e <= 1 << 16)
                    .ok_or_else(|| Error::parse(pos, "exponent too large"))?;
                Ok(base.pow(e))
            }
            t => Err(Error::parse(pos, format!("expected a nonnegative integer exponent, found {t}"))),
        }
    }

    fn atom(&mut self) -> Result<Poly<E>> {
        let pos = self.pos();
        let field = E::field_of(self.spec);
        let scalar = |s: Scalar| Poly::constant(E::from_scalar(self.spec, s));
        match self.bump() {
            Tok::Int(n) => {
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => BigRational::new(n, d),
                        Tok::Int(_) => return Err(Error::parse(dpos, "zero denominator")),
                        t => return Err(Error::parse(dpos, format!("expected a denominator, found {t}"))),
                    }
                } else {
                    BigRational::from_integer(n)
                };
                Ok(scalar(Scalar::rational(field, value)))
            }
            Tok::Radical(d) => {
                if field.radicand() != Some(d) {
                    return Err(Error::parse(
                        pos,
                        format!("radical s{d} does not belong to the field {field}"),
                    ));
                }
                Ok(scalar(Scalar::sqrt_d(field)?))
            }
            Tok::Ident(name) if name == "x" => Ok(Poly::x(self.spec)),
            Tok::Ident(name) => match E::basis_symbol(self.spec, &name) {
                Some(e) => Ok(Poly::constant(e)),
                None => Err(Error::parse(
                    pos,
                    format!("unknown symbol '{name}' in {} algebra", E::kind_name()),
                )),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    t => Err(Error::parse(close, format!("expected ')', found {t}"))),
                }
            }
            t => Err(Error::parse(pos, format!("unexpected {t}"))),
        }
    }
}

/// Parses a polynomial expression into left-coefficient normal form.
pub fn parse_poly<E: Symbolic>(source: &str, spec: &E::Spec) -> Result<Poly<E>> {
    let mut p = Parser::<E> {
        toks: lex(source)?,
        at: 0,
        spec,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Error::parse(p.pos(), format!("unexpected {}", p.peek())));
    }
    Ok(poly)
}

/// Parses an algebra element through the same grammar; `x` must not appear.
pub fn parse_element<E: Symbolic>(source: &str, spec: &E::Spec) -> Result<E> {
    let p = parse_poly::<E>(source, spec)?;
    match p.degree() {
        None => Ok(E::zero(spec)),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(Error::parse(0, "expected a constant (degree-0) expression")),
    }
}

pub fn parse_scalar(source: &str, field: FieldSpec) -> Result<Scalar> {
    let spec = QuatSpec::hamilton(field);
    parse_element::<Quaternion>(source, &spec)?
        .as_scalar()
        .ok_or_else(|| Error::parse(0, "expected a scalar"))
}

fn parse_field(src: &str) -> Result<FieldSpec> {
    let s = src.trim();
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let inner = s
        .strip_prefix("Q(s")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidField(format!("expected Q or Q(s<d>), found '{s}'")))?;
    let d: i64 = inner
        .parse()
        .map_err(|_| Error::InvalidField(format!("bad radicand '{inner}'")))?;
    FieldSpec::quadratic(d)
}

/// `quat:<alpha>,<beta>@<field>` or `oct:<alpha>,<beta>,<gamma>@<field>`,
/// with `<field>` one of `Q`, `Q(s<d>)`.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraDecl {
    Quat(Arc<QuatSpec>),
    Oct(Arc<OctSpec>),
}

impl AlgebraDecl {
    pub fn field(&self) -> FieldSpec {
        match self {
            AlgebraDecl::Quat(q) => q.field(),
            AlgebraDecl::Oct(o) => o.quat().field(),
        }
    }
}

impl FromStr for AlgebraDecl {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidAlgebra(format!("{m} in '{s}'"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let (params, field) = rest.rsplit_once('@').ok_or_else(|| bad("missing '@<field>'"))?;
        let field = parse_field(field)?;
        let params = params
            .split(',')
            .map(|p| parse_scalar(p, field))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| bad(&format!("bad parameter ({e})")))?;
        match (kind.trim(), params.as_slice()) {
            ("quat", [a, b]) => Ok(AlgebraDecl::Quat(QuatSpec::new(field, a.clone(), b.clone())?)),
            ("oct", [a, b, g]) => {
                let q = QuatSpec::new(field, a.clone(), b.clone())?;
                Ok(AlgebraDecl::Oct(OctSpec::new(q, g.clone())?))
            }
            ("quat", _) => Err(bad("quat needs two parameters")),
            ("oct", _) => Err(bad("oct needs three parameters")),
            (k, _) => Err(bad(&format!("unknown algebra kind '{k}'"))),
        }
    }
}

impl fmt::Display for AlgebraDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraDecl::Quat(q) => write!(f, "{q}"),
            AlgebraDecl::Oct(o) => write!(f, "{o}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Arc<QuatSpec> {
        QuatSpec::hamilton(FieldSpec::Rationals)
    }

    fn qp(s: &str) -> Poly<Quaternion> {
        parse_poly(s, &h()).unwrap()
    }

    #[test]
    fn fixed_point_example_polynomial() {
        let f = qp("x^2 + (i+1)*x + 1 + i*j");
        let spec = h();
        assert_eq!(f.coeff(2), Quaternion::from_ints(&spec, [1, 0, 0, 0]));
        assert_eq!(f.coeff(1), Quaternion::from_ints(&spec, [1, 1, 0, 0]));
        assert_eq!(f.coeff(0), Quaternion::from_ints(&spec, [1, 0, 0, 1]));
        assert_eq!(qp("x^2+(i+1)*x+1+k"), f);
    }

    #[test]
    fn identity_polynomial() {
        assert_eq!(qp("x"), Poly::x(&h()));
    }

    #[test]
    fn octonion_polynomial() {
        let spec = OctSpec::classical(FieldSpec::Rationals);
        let f: Poly<Octonion> = parse_poly("l*x^2 + (1 - i*l)*x + l - (i*j)*l", &spec).unwrap();
        assert_eq!(f.coeff(2), Octonion::basis(&spec, 4));
        assert_eq!(f.coeff(1), Octonion::from_ints(&spec, [1, 0, 0, 0, 0, -1, 0, 0]));
        assert_eq!(f.coeff(0), Octonion::from_ints(&spec, [0, 0, 0, 0, 1, 0, 0, -1]));
    }

    #[test]
    fn products_keep_written_order() {
        assert_eq!(qp("j*i"), -&qp("k"));
        assert_eq!(qp("x*i"), qp("i*x"));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(qp("-x^2"), -&qp("x^2"));
        assert_eq!(qp("(-x)^2"), qp("x^2"));
        assert_eq!(qp("--i"), qp("i"));
    }

    #[test]
    fn rationals_and_radicals() {
        let f = FieldSpec::quadratic(5).unwrap();
        let x = parse_scalar("-333/362 + 133/362*s5", f).unwrap();
        assert_eq!(x.to_string(), "-333/362 + 133/362*s5");
        assert!(parse_scalar("s5", FieldSpec::Rationals).is_err());
        assert!(parse_scalar("s7", f).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly::<Quaternion>("x + l", &h()),
            Err(Error::parse(4, "unknown symbol 'l' in quaternion algebra"))
        );
        assert!(matches!(parse_poly::<Quaternion>("x +", &h()), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly::<Quaternion>("2 i", &h()), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly::<Quaternion>("1/0", &h()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly::<Quaternion>("x % 2", &h()), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_element::<Quaternion>("x", &h()), Err(Error::Parse { .. })));
    }

    #[test]
    fn algebra_declarations() {
        let d: AlgebraDecl = "quat:-1,-1@Q".parse().unwrap();
        assert_eq!(d, AlgebraDecl::Quat(h()));
        assert_eq!(d.to_string(), "quat:-1,-1@Q");
        let d: AlgebraDecl = "quat:-1,-1@Q(s5)".parse().unwrap();
        assert_eq!(d.field(), FieldSpec::QuadExt(5));
        assert_eq!(d.to_string(), "quat:-1,-1@Q(s5)");
        let d: AlgebraDecl = "oct:-1,-1,-1@Q".parse().unwrap();
        assert_eq!(d, AlgebraDecl::Oct(OctSpec::classical(FieldSpec::Rationals)));
        assert!("quat:-1@Q".parse::<AlgebraDecl>().is_err());
        assert!("quat:0,-1@Q".parse::<AlgebraDecl>().is_err());
        assert!("quat:-1,-1@Q(s4)".parse::<AlgebraDecl>().is_err());
        assert!("sed:-1,-1@Q".parse::<AlgebraDecl>().is_err());
    }

    #[test]
    fn render_parse_round_trip_on_examples() {
        for src in [
            "x^2 + (i+1)*x + 1 + i*j",
            "i*x^2",
            "1/2*x^3 - 3/4*j*x + k",
            "0",
            "-x",
        ] {
            let f = qp(src);
            assert_eq!(qp(&f.to_string()), f, "{src}");
        }
    }
}
