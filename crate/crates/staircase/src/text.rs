//! Human-readable notation for monomials, ideals and factorizations.
//!
//! Ideals are comma-separated monomials such as `x^2, x*y, y^2`; `1` is the
//! unit monomial and exponents may be negative for modules (`x*y^-1`).
//! Factorizations are products such as `E[4/3]*E[5/2]^2*x*y^3`, where
//! `E[r/s]` is the simple ideal of slope `r/s` (in lowest terms) and a
//! trailing monomial gives the translation.

use staircase_core::{Factorization, LatticePoint, MonomialIdeal, MonomialModule, Slope};

use crate::error::{Error, Result};

/// A parsed generator list: an ideal when every exponent is nonnegative,
/// otherwise a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Ideal(MonomialIdeal),
    Module(MonomialModule),
}

impl Parsed {
    pub fn generators(&self) -> &[LatticePoint] {
        match self {
            Parsed::Ideal(i) => i.generators(),
            Parsed::Module(m) => m.generators(),
        }
    }

    pub fn into_module(self) -> MonomialModule {
        match self {
            Parsed::Ideal(i) => i.into(),
            Parsed::Module(m) => m,
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                position: start,
                message: "expected an integer".into(),
            })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('^') {
            self.integer()
        } else {
            Ok(1)
        }
    }
}

fn accumulate(acc: i64, e: i64, cursor: &Cursor) -> Result<i64> {
    acc.checked_add(e)
        .ok_or_else(|| cursor.error("exponent overflows 64 bits"))
}

/// One monomial: `1`, or `x`/`y` powers joined by `*`.
fn monomial(c: &mut Cursor) -> Result<LatticePoint> {
    let mut p = LatticePoint::ORIGIN;
    loop {
        c.skip_ws();
        match c.peek() {
            Some('x') => {
                c.pos += 1;
                let e = c.exponent()?;
                p.x = accumulate(p.x, e, c)?;
            }
            Some('y') => {
                c.pos += 1;
                let e = c.exponent()?;
                p.y = accumulate(p.y, e, c)?;
            }
            Some('1') => {
                c.pos += 1;
            }
            _ => return Err(c.error("expected 'x', 'y' or '1'")),
        }
        if !c.eat('*') {
            return Ok(p);
        }
    }
}

/// Parses a generator list and minimizes it.
pub fn parse_ideal(text: &str) -> Result<Parsed> {
    let mut c = Cursor::new(text);
    let mut points = vec![monomial(&mut c)?];
    while c.eat(',') {
        points.push(monomial(&mut c)?);
    }
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    if points.iter().all(|p| p.in_positive_quadrant()) {
        Ok(Parsed::Ideal(MonomialIdeal::minimize(&points)?))
    } else {
        Ok(Parsed::Module(MonomialModule::from_generators(&points)?))
    }
}

/// Parses a generator list that must describe an ideal of `k[x, y]`.
pub fn parse_monomial_ideal(text: &str) -> Result<MonomialIdeal> {
    match parse_ideal(text)? {
        Parsed::Ideal(i) => Ok(i),
        Parsed::Module(m) => {
            let p = m
                .generators()
                .iter()
                .find(|p| !p.in_positive_quadrant())
                .copied()
                .expect("modules parse only with a negative exponent");
            Err(staircase_core::Error::NotInPositiveQuadrant(p).into())
        }
    }
}

fn power(var: char, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

pub fn format_monomial(p: LatticePoint) -> String {
    let parts: Vec<String> = [power('x', p.x), power('y', p.y)]
        .into_iter()
        .flatten()
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Comma-separated generators in the given (sorted) order.
pub fn format_generators(points: &[LatticePoint]) -> String {
    points
        .iter()
        .map(|p| format_monomial(*p))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Parses a product of simple ideals and a monomial.
pub fn parse_factorization(text: &str) -> Result<Factorization> {
    let mut c = Cursor::new(text);
    let mut f = Factorization::default();
    loop {
        c.skip_ws();
        match c.peek() {
            Some('E') => {
                let at = c.pos;
                c.pos += 1;
                c.expect('[')?;
                let r = c.integer()?;
                c.expect('/')?;
                let s = c.integer()?;
                c.expect(']')?;
                let slope = Slope::reduced(r, s).ok_or_else(|| Error::Parse {
                    position: at,
                    message: format!("E[{r}/{s}] needs a positive fraction in lowest terms"),
                })?;
                let exp_at = c.pos;
                let b = c.exponent()?;
                if b < 1 {
                    return Err(Error::Parse {
                        position: exp_at,
                        message: "factor exponents must be positive".into(),
                    });
                }
                f.insert(slope, b as u64)?;
            }
            Some('x') | Some('y') | Some('1') => {
                c.skip_ws();
                let at = c.pos;
                let ch = c.peek();
                c.pos += 1;
                let e = if ch == Some('1') { 0 } else { c.exponent()? };
                let shift = match ch {
                    Some('x') => LatticePoint::new(e, 0),
                    Some('y') => LatticePoint::new(0, e),
                    _ => LatticePoint::ORIGIN,
                };
                f.anchor = f.anchor.checked_add(shift).map_err(|_| Error::Parse {
                    position: at,
                    message: "exponent overflows 64 bits".into(),
                })?;
            }
            _ => return Err(c.error("expected 'E[r/s]', 'x', 'y' or '1'")),
        }
        if !c.eat('*') {
            break;
        }
    }
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Canonical form: factors by increasing slope, then the translation.
pub fn format_factorization(f: &Factorization) -> String {
    let mut parts: Vec<String> = f
        .factors()
        .map(|(s, b)| {
            if b == 1 {
                format!("E[{s}]")
            } else {
                format!("E[{s}]^{b}")
            }
        })
        .collect();
    if f.anchor != LatticePoint::ORIGIN {
        parts.push(format_monomial(f.anchor));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Whether `text` is written in factor notation rather than as generators.
pub fn looks_like_factorization(text: &str) -> bool {
    text.contains('E')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_ideal("x^2, y^2").unwrap().generators(),
            pts(&[(0, 2), (2, 0)])
        );
        assert_eq!(parse_ideal("1").unwrap().generators(), pts(&[(0, 0)]));
        let m = parse_ideal("x*y^-1, 1").unwrap();
        assert!(matches!(m, Parsed::Module(_)));
        assert_eq!(m.generators(), pts(&[(0, 0), (1, -1)]));
        assert_eq!(
            parse_ideal(" y ^ 3 * x , x*x*x*x ").unwrap().generators(),
            pts(&[(1, 3), (4, 0)])
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_ideal("x^2, z") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_ideal("x^") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ideal(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_ideal("x y"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_monomial_ideal("x*y^-1"),
            Err(Error::Core(staircase_core::Error::NotInPositiveQuadrant(_)))
        ));
    }

    #[test]
    fn monomial_printing() {
        assert_eq!(format_monomial(LatticePoint::new(0, 0)), "1");
        assert_eq!(format_monomial(LatticePoint::new(1, 1)), "x*y");
        assert_eq!(format_monomial(LatticePoint::new(3, -2)), "x^3*y^-2");
        assert_eq!(format_monomial(LatticePoint::new(0, 2)), "y^2");
        assert_eq!(
            format_generators(&pts(&[(0, 2), (1, 1), (2, 0)])),
            "y^2, x*y, x^2"
        );
    }

    #[test]
    fn factor_text() {
        let f = parse_factorization("E[5/2] * E[4/3]").unwrap();
        assert_eq!(format_factorization(&f), "E[4/3]*E[5/2]");
        let g = parse_factorization("E[1/1]^2*x*y^3").unwrap();
        assert_eq!(g.anchor, LatticePoint::new(1, 3));
        assert_eq!(format_factorization(&g), "E[1/1]^2*x*y^3");
        assert_eq!(
            format_factorization(&parse_factorization("1").unwrap()),
            "1"
        );
        assert_eq!(
            format_factorization(&parse_factorization("E[1/1]*E[1/1]").unwrap()),
            "E[1/1]^2"
        );
        assert!(matches!(
            parse_factorization("E[2/2]"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_factorization("E[1/2]^0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_factorization("E[1/2"),
            Err(Error::Parse { .. })
        ));
    }
}
