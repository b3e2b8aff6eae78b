//! Textual polynomial syntax.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power (['*'] power)*
//! power  := atom ['^' integer]
//! atom   := integer | '[' code ']' | 'x' | '(' expr ')'
//! ```
//!
//! Bare integers are read modulo p (prime-subfield elements); `[k]` is the
//! field element with code `k`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Largest degree the parser will build.
const MAX_DEGREE: u64 = 1 << 22;

pub(super) fn parse(field: &Field, src: &str) -> Result<Poly> {
    let mut p = Parser {
        field,
        src: src.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    field: &'a Field,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(b'-') { -&self.term()? } else { self.term()? };
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

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            let explicit = self.eat(b'*');
            let starts_atom = matches!(self.peek(), Some(b'0'..=b'9' | b'[' | b'x' | b'('));
            if !explicit && !starts_atom {
                return Ok(acc);
            }
            let rhs = self.power()?;
            self.check_degree(acc.degree().unwrap_or(0) as u64 + rhs.degree().unwrap_or(0) as u64)?;
            acc = &acc * &rhs;
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            self.check_degree(base.degree().unwrap_or(0) as u64 * e)?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let f = self.field;
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x(f))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let start = self.pos;
                let code = self.integer()?;
                let e = f.try_elt(code).map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("element code {code} out of range for q = {}", f.q()),
                })?;
                if !self.eat(b']') {
                    return Err(self.err("expected ']'"));
                }
                Ok(Poly::constant(f, e))
            }
            Some(b'0'..=b'9') => {
                let v = self.integer()?;
                Ok(Poly::constant(f, f.from_int((v % f.p() as u64) as i64)))
            }
            _ => Err(self.err("expected a coefficient, 'x' or '('")),
        }
    }

    fn check_degree(&self, d: u64) -> Result<()> {
        if d > MAX_DEGREE {
            Err(self.err("polynomial degree too large"))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f9() -> Field {
        Field::new(3, 2, None).unwrap()
    }

    #[test]
    fn grammar() {
        let f = f9();
        let p = parse(&f, "(x^3-x)^2+x").unwrap();
        assert_eq!(p.codes(), vec![0, 1, 1, 0, 1, 0, 1]);
        assert_eq!(p.to_string(), "x^6+x^4+x^2+x");
        assert_eq!(parse(&f, "[5]*x^3 + [2]").unwrap().codes(), vec![2, 0, 0, 5]);
        assert_eq!(parse(&f, "2x^2 + 4").unwrap().codes(), vec![1, 0, 2]);
        assert_eq!(parse(&f, "-x").unwrap().to_string(), "-x");
        assert_eq!(parse(&f, "x^3 - x").unwrap().to_string(), "x^3-x");
        assert_eq!(parse(&f, "0").unwrap().to_string(), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let f = f9();
        assert!(matches!(parse(&f, "x^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse(&f, "[9]"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse(&f, "(x+1"), Err(Error::Parse { .. })));
        assert!(matches!(parse(&f, "x y"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse(&f, "x^99999999"), Err(Error::Parse { .. })));
    }

    proptest! {
        #[test]
        fn display_round_trips(codes in proptest::collection::vec(0u32..9, 0..12)) {
            let f = f9();
            let p = Poly::from_codes(&f, &codes);
            prop_assert_eq!(parse(&f, &p.to_string()).unwrap(), p);
        }
    }
}
