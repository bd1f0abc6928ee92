//! Text grammar for polynomials.
//!
//! Variables `x0..x9`; operators `+ - * ^`; integer or rational literals
//! (`3`, `3/4`); parentheses allowed; whitespace insignificant; no implicit
//! multiplication. Canonical output (the `Display` impl on `Polynomial`)
//! sorts terms graded-lex descending.

use super::field::Field;
use super::poly::Polynomial;
use super::PolyError;

pub fn poly_parse<F: Field>(text: &str, nvars: usize, field: F) -> Result<Polynomial<F>, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        field,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    field: F,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = Polynomial::zero(self.field.clone(), self.nvars);
        let mut sign_neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign_neg { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign_neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign_neg = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            if e > 4096 {
                return Err(self.err("exponent too large"));
            }
            let mut acc = Polynomial::constant(self.field.clone(), self.nvars, self.field.one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let d = self
                    .src
                    .get(self.pos)
                    .copied()
                    .filter(u8::is_ascii_digit)
                    .ok_or_else(|| self.err("expected variable index after 'x'"))?;
                self.pos += 1;
                let i = (d - b'0') as usize;
                if i >= self.nvars {
                    return Err(PolyError::VariableOutOfRange {
                        var: i,
                        nvars: self.nvars,
                    });
                }
                Ok(Polynomial::variable(self.field.clone(), self.nvars, i))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let d = self.uint()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    1
                };
                let c = self
                    .field
                    .from_ratio(num as i64, den)
                    .ok_or_else(|| self.err("denominator vanishes in this field"))?;
                Ok(Polynomial::constant(self.field.clone(), self.nvars, c))
            }
            _ => Err(self.err("expected variable, literal or '('")),
        }
    }

    fn uint(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .map_or(false, u8::is_ascii_digit)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer literal too large"))
    }
}
