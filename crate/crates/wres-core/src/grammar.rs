//! A small textual term grammar for test fixtures, so expected boundary
//! values can be written the way they are read:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)* ('/' dens)?
//! dens   := den+
//! den    := '(' '1+xin^2' | 'xin-i' | 'xin+i' ')' ('^' nat)?  |  nat
//! factor := rational | 'i' | 'h1' | 'h2' | 'sm' | 'sb' | 'tv'
//!         | 'xin' ('^' nat)? | 'xi(' idx ')' ('^' nat)?
//!         | 'c(' idx ')' | 'cb(' idx ')'
//!         | 'R(' idx ',' idx ',' idx ',' idx ')'
//!         | '(' expr ')'
//! idx    := '1'..'6' | 'n' | '7'
//! ```
//!
//! Whitespace separates adjacent factors ("c(k) c(n)" multiplies). Parse
//! errors report the byte position and what was expected.

use thiserror::Error;

use crate::clifford::GeneratorKind;
use crate::curvature::CurvatureFamily;
use crate::jets::{evaluate_at_boundary, BoundaryValue, JetExpr};
use crate::poly::Poly;
use crate::ratfunc::PoleLimitedRational;
use crate::scalars::{rat, GaussianRational, Indeterminate, ParameterPolynomial};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {position}: expected {expected}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parses a fixture expression into a canonical boundary value.
pub fn parse_boundary_value(src: &str) -> Result<BoundaryValue, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("end of input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn err(&self, expected: &str) -> ParseError {
        ParseError { position: self.pos, expected: expected.to_string() }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("'{}'", b as char)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let bytes = word.as_bytes();
        if self.src[self.pos..].starts_with(bytes) {
            let after = self.pos + bytes.len();
            let boundary = self
                .src
                .get(after)
                .is_none_or(|c| !c.is_ascii_alphanumeric());
            // Function-style keywords are followed by '(' which is a boundary.
            if boundary {
                self.pos = after;
                return true;
            }
        }
        false
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("a number"))
    }

    fn index(&mut self) -> Result<u8, ParseError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'n') => {
                self.pos += 1;
                Ok(7)
            }
            Some(c @ b'1'..=b'7') => {
                self.pos += 1;
                Ok(c - b'0')
            }
            _ => Err(self.err("an index 1..7 or 'n'")),
        }
    }

    fn expr(&mut self) -> Result<BoundaryValue, ParseError> {
        let mut acc = if self.eat(b'-') {
            self.term()?.scale(&(-GaussianRational::one()))
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.add(&self.term()?.scale(&(-GaussianRational::one())));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BoundaryValue, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                // Juxtaposition: a factor can start right away.
                Some(c)
                    if c.is_ascii_alphabetic() || c == b'(' || c.is_ascii_digit() =>
                {
                    factors.push(self.factor()?);
                }
                _ => break,
            }
        }
        let expr = JetExpr::Prod(factors);
        let mut value = evaluate_at_boundary(&expr).map_err(|e| ParseError {
            position: self.pos,
            expected: format!("an evaluable term ({})", e),
        })?;
        if self.eat(b'/') {
            let (p, q, scale) = self.denominators()?;
            let den_inv = PoleLimitedRational::new(Poly::constant(scale), p, q);
            let mut divided = BoundaryValue::zero();
            for (key, xi_n) in value.terms() {
                divided.add_term(*key, xi_n.clone() * den_inv.clone());
            }
            value = divided;
        }
        Ok(value)
    }

    /// Returns pole powers (at +i, at -i) and the inverse numeric scale.
    fn denominators(&mut self) -> Result<(u32, u32, GaussianRational), ParseError> {
        let mut p = 0u32;
        let mut q = 0u32;
        let mut scale = GaussianRational::one();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let kind = if self.keyword("1+xin^2") {
                        0
                    } else if self.keyword("xin-i") {
                        1
                    } else if self.keyword("xin+i") {
                        2
                    } else {
                        return Err(self.err("'1+xin^2', 'xin-i' or 'xin+i'"));
                    };
                    self.expect(b')')?;
                    let power = if self.eat(b'^') { self.nat()? } else { 1 };
                    match kind {
                        0 => {
                            p += power;
                            q += power;
                        }
                        1 => p += power,
                        _ => q += power,
                    }
                    any = true;
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.nat()?;
                    scale = scale
                        .div(&GaussianRational::from_int(n as i64))
                        .map_err(|_| self.err("a nonzero denominator"))?;
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.err("a denominator"));
        }
        Ok((p, q, scale))
    }

    fn factor(&mut self) -> Result<JetExpr, ParseError> {
        self.skip_ws();
        if self.keyword("xin") {
            let power = if self.eat(b'^') { self.nat()? } else { 1 };
            return Ok(JetExpr::Prod(vec![JetExpr::XiN; power as usize]));
        }
        if self.keyword("xi") {
            self.expect(b'(')?;
            let idx = self.index()?;
            self.expect(b')')?;
            if idx == 7 {
                return Err(self.err("a tangential index 1..6 for xi(..)"));
            }
            let power = if self.eat(b'^') { self.nat()? } else { 1 };
            return Ok(JetExpr::Prod(vec![JetExpr::Xi(idx); power as usize]));
        }
        if self.keyword("cb") {
            self.expect(b'(')?;
            let idx = self.index()?;
            self.expect(b')')?;
            return Ok(JetExpr::Cliff(GeneratorKind::Cbar, idx));
        }
        if self.keyword("c") {
            self.expect(b'(')?;
            let idx = self.index()?;
            self.expect(b')')?;
            return Ok(JetExpr::Cliff(GeneratorKind::C, idx));
        }
        if self.keyword("R") {
            self.expect(b'(')?;
            let a = self.index()?;
            self.expect(b',')?;
            let b = self.index()?;
            self.expect(b',')?;
            let c = self.index()?;
            self.expect(b',')?;
            let d = self.index()?;
            self.expect(b')')?;
            return Ok(JetExpr::Riemann(CurvatureFamily::Boundary, [a, b, c, d]));
        }
        if self.keyword("h1") {
            return Ok(JetExpr::Param(ParameterPolynomial::variable(Indeterminate::H1)));
        }
        if self.keyword("h2") {
            return Ok(JetExpr::Param(ParameterPolynomial::variable(Indeterminate::H2)));
        }
        if self.keyword("sm") {
            return Ok(JetExpr::Param(ParameterPolynomial::variable(Indeterminate::SM)));
        }
        if self.keyword("sb") {
            return Ok(JetExpr::Param(ParameterPolynomial::variable(Indeterminate::SB)));
        }
        if self.keyword("tv") {
            return Ok(JetExpr::Param(ParameterPolynomial::variable(Indeterminate::TV)));
        }
        if self.keyword("i") {
            return Ok(JetExpr::Num(GaussianRational::i()));
        }
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                // A parenthesized sub-expression of structural factors.
                let start = self.pos;
                let mut depth = 1usize;
                while self.pos < self.src.len() && depth > 0 {
                    match self.src[self.pos] {
                        b'(' => depth += 1,
                        b')' => depth -= 1,
                        _ => {}
                    }
                    self.pos += 1;
                }
                if depth != 0 {
                    return Err(self.err("')'"));
                }
                let inner = std::str::from_utf8(&self.src[start..self.pos - 1]).unwrap();
                let mut sub = Parser { src: inner.as_bytes(), pos: 0 };
                let terms = sub.jet_expr()?;
                sub.skip_ws();
                if sub.pos != sub.src.len() {
                    return Err(ParseError {
                        position: start + sub.pos,
                        expected: "end of parenthesized expression".to_string(),
                    });
                }
                Ok(terms)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()? as i64;
                // "a/b" is a fraction only when digits follow immediately;
                // otherwise the slash belongs to a denominator.
                let saved = self.pos;
                if self.eat(b'/') {
                    self.skip_ws();
                    if matches!(self.src.get(self.pos), Some(d) if d.is_ascii_digit()) {
                        let d = self.nat()? as i64;
                        return Ok(JetExpr::Num(GaussianRational::from_rational(rat(n, d))));
                    }
                    self.pos = saved;
                }
                Ok(JetExpr::Num(GaussianRational::from_int(n)))
            }
            _ => Err(self.err("a factor")),
        }
    }

    /// Parses a sum of products as a raw jet expression (no division), used
    /// inside parentheses.
    fn jet_expr(&mut self) -> Result<JetExpr, ParseError> {
        let mut terms = Vec::new();
        let mut negate = self.eat(b'-');
        loop {
            let mut factors = vec![self.factor()?];
            loop {
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        factors.push(self.factor()?);
                    }
                    Some(c) if c.is_ascii_alphabetic() || c == b'(' || c.is_ascii_digit() => {
                        factors.push(self.factor()?);
                    }
                    _ => break,
                }
            }
            if negate {
                factors.push(JetExpr::Num(-GaussianRational::one()));
            }
            terms.push(JetExpr::Prod(factors));
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(JetExpr::Sum(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{sigma, Dir, XDir};

    #[test]
    fn parses_the_module_example() {
        let v = parse_boundary_value("i * h1 * xi(1) * c(1) c(n) / (1+xin^2)^2").unwrap();
        assert_eq!(v.term_count(), 1);
    }

    #[test]
    fn round_trips_sigma_minus2_derivative() {
        // d^3 sigma_-2 = (24 xin - 24 xin^3) / (1+xin^2)^4
        let parsed = parse_boundary_value("(24 xin - 24 xin^3) / (1+xin^2)^4").unwrap();
        let engine = evaluate_at_boundary(
            &sigma::build_sigma_minus2().derivative_n(Dir::XiNorm, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(parsed, engine);
    }

    #[test]
    fn parses_pi_plus_denominators() {
        // pi+ of the case-13 scalar sum: (9i - 7 xin)/(8 (xin - i)^3).
        let parsed = parse_boundary_value("(9 i - 7 xin) / 8 (xin-i)^3").unwrap();
        let direct = parse_boundary_value("(-5 i xin - 3 i xin^3) / (1+xin^2)^3")
            .unwrap()
            .pi_plus()
            .unwrap();
        assert_eq!(parsed, direct);
    }

    #[test]
    fn errors_carry_position_and_expectation() {
        let err = parse_boundary_value("xi(9)").unwrap_err();
        assert_eq!(err.position, 3);
        assert!(err.expected.contains("index"));

        let err = parse_boundary_value("h1 * / 2").unwrap_err();
        assert!(err.expected.contains("factor"));
    }

    #[test]
    fn sigma_minus3_fixture_matches_builder() {
        let fixture = "\
            -3 i h1 xin / (1+xin^2)^2 - 2 i h1 xin / (1+xin^2)^3 \
            - 1/2 i h1 (xi(1) c(1) c(n) + xi(2) c(2) c(n) + xi(3) c(3) c(n) \
            + xi(4) c(4) c(n) + xi(5) c(5) c(n) + xi(6) c(6) c(n)) / (1+xin^2)^2 \
            + 1/2 i h1 (xi(1) cb(1) cb(n) + xi(2) cb(2) cb(n) + xi(3) cb(3) cb(n) \
            + xi(4) cb(4) cb(n) + xi(5) cb(5) cb(n) + xi(6) cb(6) cb(n)) / (1+xin^2)^2";
        let parsed = parse_boundary_value(fixture).unwrap();
        let engine = evaluate_at_boundary(&sigma::build_sigma_minus3()).unwrap();
        assert_eq!(parsed, engine);
        let _ = XDir::Norm; // keep the import tied to this module's tests
    }
}
