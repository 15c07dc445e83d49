//! Plain-text polynomials and fields.
//!
//! Accepted grammar (whitespace ignored):
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := power (('*'|'/') power)*      // '/' only by a nonzero constant
//! power := atom ['^' uint]
//! atom  := number | 'i' | 's' uint | '(' expr ')'
//! ```
//!
//! `number` is an integer or a decimal with optional exponent, read exactly.
//! This covers the canonical output of [`format_poly`], e.g.
//! `(1/2)*s1^2 - i*s2*s1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::algebra::{BiTensor, NcPoly, VectorField};
use crate::error::{Error, Result};
use crate::scalar::{fmt_f64, serialize_scalar, GaussRational, Mode, Scalar};
use crate::word::Word;

/// Parses a polynomial in `n` generators.
pub fn parse_poly<S: Scalar>(text: &str, n: usize) -> Result<NcPoly<S>> {
    parse_poly_at(text, n, 0).map(|p| p.map_coeffs(S::from_gauss))
}

fn parse_poly_at(text: &str, n: usize, offset: usize) -> Result<NcPoly<GaussRational>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
        offset,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected character"));
    }
    Ok(out)
}

/// Parses `(p_1, ..., p_n)`. With `n = None` the generator count is the
/// number of components.
pub fn parse_field<S: Scalar>(text: &str, n: Option<usize>) -> Result<VectorField<S>> {
    let trimmed_start = text.len() - text.trim_start().len();
    let t = text.trim();
    let perr = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    if !t.starts_with('(') || !t.ends_with(')') {
        return Err(perr(trimmed_start, "a field is written (p1, ..., pn)"));
    }
    let inner = &t[1..t.len() - 1];
    let base = trimmed_start + 1;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(perr(base + i, "unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                parts.push((start, &inner[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &inner[start..]));
    let n = n.unwrap_or(parts.len());
    if parts.len() != n {
        return Err(Error::GeneratorMismatch {
            left: n,
            right: parts.len(),
        });
    }
    let comps = parts
        .into_iter()
        .map(|(s, part)| parse_poly_at(part, n, base + s).map(|p| p.map_coeffs(S::from_gauss)))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(n, comps)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    offset: usize,
}

type Q = GaussRational;

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.offset + self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NcPoly<Q>> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly<Q>> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.power()?;
                let inv = match d.degree() {
                    None => None,
                    Some(0) => d.coeff(&Word::empty()).inv(),
                    Some(_) => {
                        self.pos = at;
                        return Err(self.err("division by a non-constant"));
                    }
                };
                match inv {
                    Some(c) => acc = acc.scale(&c),
                    None => {
                        self.pos = at;
                        return Err(self.err("division by zero"));
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<NcPoly<Q>> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NcPoly<Q>> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(NcPoly::constant(self.n, Q::imag()))
            }
            Some(b's') => {
                let at = self.pos;
                self.pos += 1;
                let k = self.uint()?;
                NcPoly::generator(self.n, k).map_err(|e| match e {
                    Error::IndexOutOfRange { .. } if k == 0 => Error::Parse {
                        pos: self.offset + at,
                        msg: "generators are numbered from 1".into(),
                    },
                    other => other,
                })
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let r = self.number()?;
                Ok(NcPoly::constant(self.n, Q::real(r)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn uint(&mut self) -> Result<usize> {
        let d = self.digits();
        if d.is_empty() {
            return Err(self.err("expected a nonnegative integer"));
        }
        d.parse().map_err(|_| self.err("integer too large"))
    }

    fn number(&mut self) -> Result<BigRational> {
        let int = self.digits().to_string();
        let mut frac = String::new();
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac = self.digits().to_string();
        }
        if int.is_empty() && frac.is_empty() {
            return Err(self.err("malformed number"));
        }
        let mut exp: i64 = 0;
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            let sign = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                _ => 1,
            };
            let d = self.digits();
            if d.is_empty() {
                self.pos = save;
                return Err(self.err("malformed exponent"));
            }
            exp = sign * d.parse::<i64>().map_err(|_| self.err("exponent too large"))?;
        }
        let mantissa: BigInt = format!("{int}{frac}").parse().expect("digits");
        let exp = exp - frac.len() as i64;
        if exp.unsigned_abs() > 4096 {
            return Err(self.err("exponent out of range"));
        }
        let ten = BigInt::from(10u32);
        let scale: BigInt = Pow::pow(&ten, exp.unsigned_abs() as u32);
        Ok(if exp >= 0 {
            BigRational::from_integer(mantissa * scale)
        } else {
            BigRational::new(mantissa, scale)
        })
    }
}

/// Sign and unsigned text of a coefficient. The text is empty for a unit
/// magnitude and otherwise ready to be followed by `*factor`.
fn coeff_parts<S: Scalar>(c: &S) -> (bool, String) {
    let (re, im) = c.signs();
    let magnitude = |x: &S| -> String {
        if *x == S::one() {
            return String::new();
        }
        match S::MODE {
            Mode::Float => fmt_f64(x.to_complex().re),
            Mode::Exact => {
                let s = serialize_scalar(x);
                if s.contains('/') {
                    format!("({s})")
                } else {
                    s
                }
            }
        }
    };
    if im == 0 {
        let neg = re < 0;
        let m = if neg { c.neg_ref() } else { c.clone() };
        (neg, magnitude(&m))
    } else if re == 0 {
        let neg = im < 0;
        // c = ±m·i with m > 0 real
        let m = c.mul_ref(&S::imag()).neg_ref();
        let m = if neg { m.neg_ref() } else { m };
        let mag = magnitude(&m);
        (neg, if mag.is_empty() { "i".into() } else { format!("{mag}*i") })
    } else {
        (false, format!("({})", serialize_scalar(c)))
    }
}

fn join_terms(terms: impl Iterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (neg, body) in terms {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn term_body(mag: String, factor: String, factor_is_unit: bool) -> String {
    match (mag.is_empty(), factor_is_unit) {
        (true, true) => "1".into(),
        (true, false) => factor,
        (false, true) => mag,
        (false, false) => format!("{mag}*{factor}"),
    }
}

/// Canonical text form; terms in (length, lex) order.
pub fn format_poly<S: Scalar>(p: &NcPoly<S>) -> String {
    join_terms(p.terms().map(|(w, c)| {
        let (neg, mag) = coeff_parts(c);
        (neg, term_body(mag, w.to_string(), w.is_empty()))
    }))
}

/// `(p_1, ..., p_n)`
pub fn format_field<S: Scalar>(v: &VectorField<S>) -> String {
    let parts: Vec<String> = v.components().iter().map(format_poly).collect();
    format!("({})", parts.join(", "))
}

/// Terms written `c*(L ⊗ R)`.
pub fn format_bitensor<S: Scalar>(t: &BiTensor<S>) -> String {
    join_terms(t.terms().map(|(l, r, c)| {
        let (neg, mag) = coeff_parts(c);
        let pair = format!("{l} ⊗ {r}");
        let body = if mag.is_empty() {
            pair
        } else {
            format!("{mag}*({pair})")
        };
        (neg, body)
    }))
}

/// Parses a rational written `p`, `p/q` or a decimal.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let p = parse_poly_at(text, 1, 0)?;
    match p.degree() {
        None => Ok(BigRational::from_integer(0.into())),
        Some(0) => {
            let c = p.coeff(&Word::empty());
            if c.is_real() {
                Ok(c.re)
            } else {
                Err(Error::Parse {
                    pos: 0,
                    msg: "expected a real number".into(),
                })
            }
        }
        Some(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a number".into(),
        }),
    }
}

/// `p/q` text of a rational, `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn gen(j: usize) -> NcPoly<Q> {
        NcPoly::generator(2, j).unwrap()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_poly::<Q>("s2", 2).unwrap(), gen(2));
        let p = parse_poly::<Q>("(1/2)*s1^2 - i*s2*s1", 2).unwrap();
        let expected = &(&gen(1) * &gen(1)).scale(&Q::from_frac(1, 2)) - &(&gen(2) * &gen(1)).scale(&Q::imag());
        assert_eq!(p, expected);
        assert_eq!(format_poly(&p), "(1/2)*s1^2 - i*s2*s1");
        assert!(matches!(parse_poly::<Q>("s3", 2), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(parse_poly::<Q>("1", 2).unwrap(), NcPoly::one(2));
        assert_eq!(parse_poly::<Q>(" ( 1/2 + 3/4*i ) * s1", 2).unwrap().coeff(&Word::letter(1)), {
            Q::new(BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into()))
        });
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_poly::<Q>("s1 + * s2", 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly::<Q>("", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly::<Q>("s1/s2", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly::<Q>("(s1", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly::<Q>("s0", 2), Err(Error::Parse { .. })));
    }

    #[test]
    fn format_shapes() {
        let p = parse_poly::<Q>("-3 + 2*i*s1 - (1/3)*i*s2 + (1-i)*s1*s2 - s2^2", 2).unwrap();
        let text = format_poly(&p);
        assert_eq!(text, "-3 + 2*i*s1 - (1/3)*i*s2 + (1-1*i)*s1*s2 - s2^2");
        assert_eq!(parse_poly::<Q>(&text, 2).unwrap(), p);
        assert_eq!(format_poly(&NcPoly::<Q>::zero(2)), "0");
    }

    #[test]
    fn float_round_trip() {
        let p: NcPoly<Complex64> = NcPoly::from_terms(
            2,
            [
                (Word::letter(1), Complex64::new(0.1, 0.0)),
                (Word::from_letters(&[2, 1]), Complex64::new(-1.0 / 3.0, 2e-17)),
                (Word::empty(), Complex64::new(0.0, -7.25e12)),
            ],
        )
        .unwrap();
        let back: NcPoly<Complex64> = parse_poly(&format_poly(&p), 2).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn fields() {
        let f = parse_field::<Q>("(s1, s2)", None).unwrap();
        assert_eq!(f.n(), 2);
        assert_eq!(format_field(&f), "(s1, s2)");
        let g = parse_field::<Q>("((s1 + s2)*s1, -s2)", None).unwrap();
        assert_eq!(format_field(&g), "(s1^2 + s2*s1, -s2)");
        assert!(parse_field::<Q>("(s1, s2)", Some(3)).is_err());
        assert!(parse_field::<Q>("s1, s2", None).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/100").unwrap(), BigRational::new(1.into(), 100.into()));
        assert_eq!(parse_rational("0.01").unwrap(), BigRational::new(1.into(), 100.into()));
        assert_eq!(parse_rational("1e-3").unwrap(), BigRational::new(1.into(), 1000.into()));
        assert_eq!(format_rational(&BigRational::new(3.into(), 6.into())), "1/2");
    }
}
