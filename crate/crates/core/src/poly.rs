//! Textual polynomials in `x, y, z` with exact rational coefficients.
//!
//! Accepted syntax (whitespace is insignificant):
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := var | param | rational | '(' poly ')'
//! var    := 'x' | 'y' | 'z'
//! rational := uint ['/' uint]
//! param  := identifier other than x, y, z
//! ```
//!
//! Multiplication must be written out: `2x` and `xy` are rejected (the latter
//! reads as an unbound parameter named `xy`). Parameters are replaced by their
//! bound rational values while parsing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::support::Support;

pub type Bindings = HashMap<String, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigRational,
    pub exponent: ExponentVector,
}

/// A polynomial as a list of terms with pairwise distinct exponents and
/// nonzero coefficients. The empty list is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermList {
    terms: Vec<Term>,
}

impl TermList {
    fn from_map(map: BTreeMap<ExponentVector, BigRational>) -> Self {
        let mut terms: Vec<Term> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, coefficient)| Term {
                coefficient,
                exponent,
            })
            .collect();
        terms.sort_by(|a, b| {
            (a.exponent.degree(), a.exponent).cmp(&(b.exponent.degree(), b.exponent))
        });
        Self { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Canonical form: terms by increasing degree, then lexicographically.
impl fmt::Display for TermList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let negative = term.coefficient.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = term.coefficient.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_constant = term.exponent.degree() == 0;
            if !magnitude.is_one() || is_constant {
                factors.push(magnitude.to_string());
            }
            for (var, &e) in ["x", "y", "z"].iter().zip(term.exponent.0.iter()) {
                match e {
                    0 => {}
                    1 => factors.push((*var).to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn parse_polynomial(text: &str, bindings: &Bindings) -> Result<TermList> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        bindings,
    };
    let poly = parser.poly()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax(format!(
            "unexpected `{}`; multiplication must be explicit",
            parser.src[parser.pos] as char
        )));
    }
    Ok(TermList::from_map(poly))
}

pub fn support_of(p: &TermList) -> Result<Support> {
    if p.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    Support::new(p.terms.iter().map(|t| t.exponent))
}

type Poly = BTreeMap<ExponentVector, BigRational>;

fn constant(c: BigRational) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(ExponentVector::new(0, 0, 0), c);
    }
    p
}

fn add_into(acc: &mut Poly, other: Poly, sign: i32) {
    for (e, c) in other {
        let entry = acc.entry(e).or_insert_with(BigRational::zero);
        if sign < 0 {
            *entry -= c;
        } else {
            *entry += c;
        }
        if entry.is_zero() {
            acc.remove(&e);
        }
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ExponentVector([ea.0[0] + eb.0[0], ea.0[1] + eb.0[1], ea.0[2] + eb.0[2]]);
            let entry = out.entry(e).or_insert_with(BigRational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn pow(base: &Poly, mut exp: u32) -> Poly {
    let mut result = constant(BigRational::one());
    let mut square = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul(&result, &square);
        }
        exp >>= 1;
        if exp > 0 {
            square = mul(&square, &square);
        }
    }
    result
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    bindings: &'a Bindings,
}

impl Parser<'_> {
    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::new();
        let mut sign = 1;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                self.pos += 1;
                sign = -1;
            }
            None => return Err(self.syntax("empty expression")),
            _ => {}
        }
        loop {
            let term = self.term()?;
            add_into(&mut acc, term, sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(pow(&base, e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.peek() {
            Some(b'-') => Err(Error::NegativeExponent { pos: self.pos }),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                digits.parse::<u32>().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: format!("exponent `{digits}` is too large"),
                })
            }
            _ => Err(self.syntax("expected a nonnegative integer exponent")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly> {
        let Some(c) = self.peek() else {
            return Err(self.syntax("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let inner = self.poly()?;
            if self.peek() != Some(b')') {
                return Err(self.syntax("expected `)`"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let num: BigInt = self.digits().parse().expect("digit run");
            let mut value = BigRational::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                match self.peek() {
                    Some(d) if d.is_ascii_digit() => {
                        let start = self.pos;
                        let den: BigInt = self.digits().parse().expect("digit run");
                        if den.is_zero() {
                            return Err(Error::Syntax {
                                pos: start,
                                msg: "zero denominator".into(),
                            });
                        }
                        value /= BigRational::from_integer(den);
                    }
                    _ => return Err(self.syntax("expected a denominator after `/`")),
                }
            }
            return Ok(constant(value));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
            let axis = match ident {
                "x" => Some(0),
                "y" => Some(1),
                "z" => Some(2),
                _ => None,
            };
            if let Some(axis) = axis {
                let mut e = [0u32; 3];
                e[axis] = 1;
                let mut p = Poly::new();
                p.insert(ExponentVector(e), BigRational::one());
                return Ok(p);
            }
            return match self.bindings.get(ident) {
                Some(v) => Ok(constant(v.clone())),
                None => Err(Error::UnboundParameter {
                    name: ident.to_string(),
                    pos: start,
                }),
            };
        }
        Err(self.syntax(format!("unexpected `{}`", c as char)))
    }
}

/// Parses a rational literal such as `3`, `-1/2`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    let v = BigRational::new(num.parse().ok()?, den);
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_bindings() -> Bindings {
        Bindings::new()
    }

    fn support_triples(text: &str, b: &Bindings) -> Vec<[u32; 3]> {
        let p = parse_polynomial(text, b).unwrap();
        support_of(&p).unwrap().iter().map(|e| e.0).collect()
    }

    #[test]
    fn tpqr_with_p_q_r_equal_four() {
        let p = parse_polynomial("x*y*z + x^4 + y^4 + z^4", &no_bindings()).unwrap();
        assert_eq!(p.len(), 4);
        let s = support_of(&p).unwrap();
        assert_eq!(
            s,
            Support::from_triples(&[[1, 1, 1], [4, 0, 0], [0, 4, 0], [0, 0, 4]])
        );
    }

    #[test]
    fn zero_binding_drops_term() {
        let mut b = Bindings::new();
        b.insert("t".into(), BigRational::zero());
        assert_eq!(support_triples("t*x*y*z + x^2", &b), vec![[2, 0, 0]]);
    }

    #[test]
    fn cancellation_gives_zero_polynomial() {
        let p = parse_polynomial("x*y - x*y", &no_bindings()).unwrap();
        assert!(p.is_empty());
        assert_eq!(support_of(&p), Err(Error::ZeroPolynomial));
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn example_one_supports() {
        let text = "t*x*y*z + x*y*z*(x+y+z) + x^4*y + y^4*z + z^4*x";
        let mut b = Bindings::new();
        b.insert("t".into(), BigRational::one());
        let mut with_t = support_triples(text, &b);
        with_t.sort();
        let mut expected = vec![
            [1, 1, 1],
            [2, 1, 1],
            [1, 2, 1],
            [1, 1, 2],
            [4, 1, 0],
            [0, 4, 1],
            [1, 0, 4],
        ];
        expected.sort();
        assert_eq!(with_t, expected);

        b.insert("t".into(), BigRational::zero());
        let mut without = support_triples(text, &b);
        without.sort();
        expected.retain(|p| *p != [1, 1, 1]);
        assert_eq!(without, expected);
    }

    #[test]
    fn linear_support() {
        assert_eq!(
            support_triples("x+y+z", &no_bindings()),
            vec![[0, 0, 1], [0, 1, 0], [1, 0, 0]]
        );
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        assert!(matches!(
            parse_polynomial("2x", &no_bindings()),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert_eq!(
            parse_polynomial("xy + z", &no_bindings()),
            Err(Error::UnboundParameter {
                name: "xy".into(),
                pos: 0
            })
        );
        assert!(matches!(
            parse_polynomial("x (y)", &no_bindings()),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_polynomial("x^-2", &no_bindings()),
            Err(Error::NegativeExponent { pos: 2 })
        );
        assert_eq!(
            parse_polynomial("x + k*y", &no_bindings()),
            Err(Error::UnboundParameter {
                name: "k".into(),
                pos: 4
            })
        );
        assert!(matches!(
            parse_polynomial("x + ", &no_bindings()),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial("", &no_bindings()),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_polynomial("1/0*x", &no_bindings()),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn rationals_and_params() {
        let mut b = Bindings::new();
        b.insert("k".into(), parse_rational("-3/4").unwrap());
        let p = parse_polynomial("1/2*x^2 + k*y^2 + 3/4*y^2 - z", &b).unwrap();
        assert_eq!(p.to_string(), "-z + 1/2*x^2");
    }

    #[test]
    fn printing_is_canonical() {
        let p = parse_polynomial("z^2 + y^3 - x^6*y + 7", &no_bindings()).unwrap();
        assert_eq!(p.to_string(), "7 + z^2 + y^3 - x^6*y");
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("0"), Some(BigRational::zero()));
        assert_eq!(
            parse_rational("-2"),
            Some(BigRational::from_integer((-2).into()))
        );
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("a").is_none());
        assert!(parse_rational("").is_none());
    }
}
