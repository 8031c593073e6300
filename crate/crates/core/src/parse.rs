//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)*
//! atom   := ident | integer | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Polynomial, Ring};

pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<Ring<F>>) -> Result<Polynomial<F>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring<F>>,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        if self.peek() == Some(b'/') {
            return Err(self.error("division is not supported"));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a non-negative exponent after `^`"));
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            let e: u32 = text.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: format!("exponent `{text}` is too large"),
            })?;
            if e > u16::MAX as u32 {
                return Err(Error::Parse { pos: start, msg: format!("exponent `{text}` is too large") });
            }
            base = base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let v: BigInt = text.parse().expect("digit string");
                Ok(Polynomial::constant(self.ring, self.ring.field.from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::Parse { pos: start, msg: format!("unknown variable `{name}`") }),
                }
            }
            Some(b'/') => Err(self.error("division is not supported")),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::Monomial;
    use proptest::prelude::*;

    fn ring() -> Arc<Ring<PrimeField>> {
        Ring::with_indexed_vars(PrimeField::default_prime(), 3).unwrap()
    }

    #[test]
    fn product_monomial() {
        let r = ring();
        let f = parse_polynomial("x0*x1", &r).unwrap();
        assert_eq!(f.terms(), &[(Monomial::from_exponents(&[1, 1, 0]).unwrap(), 1)]);
    }

    #[test]
    fn expands_products() {
        let r = ring();
        let f = parse_polynomial("x1*(x1-x2)*(x1+x2)", &r).unwrap();
        let want = Polynomial::from_terms(
            &r,
            vec![
                (Monomial::from_exponents(&[0, 3, 0]).unwrap(), 1),
                (Monomial::from_exponents(&[0, 1, 2]).unwrap(), r.field.from_i64(-1)),
            ],
        );
        assert_eq!(f, want);
    }

    #[test]
    fn cancellation_gives_zero() {
        assert!(parse_polynomial("x0 - x0", &ring()).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_polynomial("x0 + y", &r),
            Err(Error::Parse { pos: 5, msg: "unknown variable `y`".into() })
        );
        assert!(matches!(parse_polynomial("x0/2", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x0^", &r), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_polynomial("x0^-1", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("(x0", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn unary_signs_and_powers() {
        let r = ring();
        let a = parse_polynomial("-(x0 - x1)^2", &r).unwrap();
        let b = parse_polynomial("-x0^2 + 2*x0*x1 - x1^2", &r).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("2^3", &r).unwrap(), Polynomial::constant(&r, 8));
    }

    fn arb_poly_text() -> impl Strategy<Value = String> {
        let term = (-40i64..40, 0u32..4, 0u32..4, 0u32..4)
            .prop_map(|(c, a, b, d)| format!("({c})*x0^{a}*x1^{b}*x2^{d}"));
        proptest::collection::vec(term, 0..6).prop_map(|ts| {
            if ts.is_empty() {
                "0".to_string()
            } else {
                ts.join(" + ")
            }
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity_fp(text in arb_poly_text()) {
            let r = ring();
            let f = parse_polynomial(&text, &r).unwrap();
            prop_assert_eq!(parse_polynomial(&f.to_string(), &r).unwrap(), f);
        }

        #[test]
        fn print_then_parse_is_identity_q(text in arb_poly_text()) {
            let r = Ring::with_indexed_vars(Rationals, 3).unwrap();
            let f = parse_polynomial(&text, &r).unwrap();
            prop_assert_eq!(parse_polynomial(&f.to_string(), &r).unwrap(), f);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_poly_text(), b in arb_poly_text(), pt in proptest::collection::vec(-50i64..50, 3)) {
            let r = ring();
            let f = parse_polynomial(&a, &r).unwrap();
            let g = parse_polynomial(&b, &r).unwrap();
            let pt: Vec<u32> = pt.iter().map(|&v| r.field.from_i64(v)).collect();
            let fg = (&f * &g).evaluate(&pt).unwrap();
            prop_assert_eq!(fg, r.field.mul(&f.evaluate(&pt).unwrap(), &g.evaluate(&pt).unwrap()));
            let sum = (&f + &g).evaluate(&pt).unwrap();
            prop_assert_eq!(sum, r.field.add(&f.evaluate(&pt).unwrap(), &g.evaluate(&pt).unwrap()));
        }
    }
}
