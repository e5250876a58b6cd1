//! Exact arithmetic in the representation ring of Pin(2),
//! Z[d,h] / (d^2 - 1, dh - h), with lambda-classes and character
//! evaluation.
//!
//! The free Z-module basis {1, d, h, h^2, ...} is the canonical normal form;
//! zero coefficients are never stored.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Normal form c0 * 1 + c1 * d + sum over l >= 1 of c_l * h^l.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RepRingElement {
    pub c0: BigInt,
    pub c1: BigInt,
    ch: BTreeMap<u32, BigInt>,
}

impl RepRingElement {
    pub fn zero() -> Self {
        RepRingElement::default()
    }

    pub fn one() -> Self {
        RepRingElement {
            c0: BigInt::one(),
            ..Default::default()
        }
    }

    pub fn d() -> Self {
        RepRingElement {
            c1: BigInt::one(),
            ..Default::default()
        }
    }

    pub fn h() -> Self {
        let mut ch = BTreeMap::new();
        ch.insert(1, BigInt::one());
        RepRingElement {
            ch,
            ..Default::default()
        }
    }

    pub fn from_int(n: i64) -> Self {
        RepRingElement {
            c0: BigInt::from(n),
            ..Default::default()
        }
    }

    /// Coefficient of h^l for l >= 1.
    pub fn h_coeff(&self, l: u32) -> BigInt {
        self.ch.get(&l).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn h_coeffs(&self) -> &BTreeMap<u32, BigInt> {
        &self.ch
    }

    fn set_h(&mut self, l: u32, v: BigInt) {
        if v.is_zero() {
            self.ch.remove(&l);
        } else {
            self.ch.insert(l, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.ch.is_empty()
    }

    pub fn add(&self, other: &RepRingElement) -> RepRingElement {
        let mut out = self.clone();
        out.c0 += &other.c0;
        out.c1 += &other.c1;
        for (l, v) in &other.ch {
            let nv = out.h_coeff(*l) + v;
            out.set_h(*l, nv);
        }
        out
    }

    pub fn neg(&self) -> RepRingElement {
        let mut out = self.clone();
        out.c0 = -out.c0;
        out.c1 = -out.c1;
        for v in out.ch.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn sub(&self, other: &RepRingElement) -> RepRingElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: &BigInt) -> RepRingElement {
        if n.is_zero() {
            return RepRingElement::zero();
        }
        let mut out = self.clone();
        out.c0 *= n;
        out.c1 *= n;
        for v in out.ch.values_mut() {
            *v *= n;
        }
        out
    }

    pub fn pow(&self, e: u32) -> RepRingElement {
        let mut acc = RepRingElement::one();
        for _ in 0..e {
            acc = rr_mul(&acc, self);
        }
        acc
    }
}

/// Product in the quotient ring: reduces d^2 -> 1, d h^l -> h^l and
/// h^a h^b -> h^{a+b}.
pub fn rr_mul(x: &RepRingElement, y: &RepRingElement) -> RepRingElement {
    let mut out = RepRingElement::zero();
    out.c0 = &x.c0 * &y.c0 + &x.c1 * &y.c1;
    out.c1 = &x.c0 * &y.c1 + &x.c1 * &y.c0;
    // (x0 + x1 d) * h^l and (y0 + y1 d) * h^l both collapse the d
    let x_const = &x.c0 + &x.c1;
    let y_const = &y.c0 + &y.c1;
    for (l, v) in &y.ch {
        let nv = out.h_coeff(*l) + &x_const * v;
        out.set_h(*l, nv);
    }
    for (l, v) in &x.ch {
        let nv = out.h_coeff(*l) + &y_const * v;
        out.set_h(*l, nv);
    }
    for (la, va) in &x.ch {
        for (lb, vb) in &y.ch {
            let l = la + lb;
            let nv = out.h_coeff(l) + va * vb;
            out.set_h(l, nv);
        }
    }
    out
}

/// Total lambda class (2 - h)^num_h * (1 - d)^num_d in normal form.
pub fn lambda_total(num_h: u32, num_d: u32) -> RepRingElement {
    let lam_h = RepRingElement::from_int(2).sub(&RepRingElement::h());
    let lam_d = RepRingElement::one().sub(&RepRingElement::d());
    rr_mul(&lam_h.pow(num_h), &lam_d.pow(num_d))
}

/// Character at j: traces of all h-powers vanish, d contributes -1.
pub fn char_at_j(x: &RepRingElement) -> BigInt {
    &x.c0 - &x.c1
}

/// Character at i (a circle point with vanishing h-characters): d is trivial
/// on the circle branch.
pub fn char_at_i(x: &RepRingElement) -> BigInt {
    &x.c0 + &x.c1
}

/// Character on the circle branch as an integer polynomial in c = 2 cos(t);
/// index l holds the coefficient of c^l.  Evaluating at c = 0 reproduces
/// `char_at_i`.
pub fn char_on_circle(x: &RepRingElement) -> Vec<BigInt> {
    let deg = x.ch.keys().max().copied().unwrap_or(0) as usize;
    let mut poly = vec![BigInt::zero(); deg + 1];
    poly[0] = &x.c0 + &x.c1;
    for (l, v) in &x.ch {
        poly[*l as usize] += v;
    }
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    poly
}

fn fmt_term(f: &mut fmt::Formatter<'_>, first: &mut bool, coeff: &BigInt, sym: &str) -> fmt::Result {
    if coeff.is_zero() {
        return Ok(());
    }
    let mag = coeff.abs();
    if *first {
        if coeff.is_negative() {
            write!(f, "-")?;
        }
        *first = false;
    } else if coeff.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if sym.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{sym}")
    } else {
        write!(f, "{mag}{sym}")
    }
}

impl fmt::Display for RepRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        fmt_term(f, &mut first, &self.c0, "")?;
        fmt_term(f, &mut first, &self.c1, "d")?;
        for (l, v) in &self.ch {
            let sym = if *l == 1 {
                "h".to_string()
            } else {
                format!("h^{l}")
            };
            fmt_term(f, &mut first, v, &sym)?;
        }
        Ok(())
    }
}

/// Renders the circle character polynomial in the variable c.
pub fn circle_poly_to_string(poly: &[BigInt]) -> String {
    struct P<'a>(&'a [BigInt]);
    impl fmt::Display for P<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.iter().all(|c| c.is_zero()) {
                return write!(f, "0");
            }
            let mut first = true;
            for (l, v) in self.0.iter().enumerate() {
                let sym = match l {
                    0 => String::new(),
                    1 => "c".to_string(),
                    _ => format!("c^{l}"),
                };
                fmt_term(f, &mut first, v, &sym)?;
            }
            Ok(())
        }
    }
    P(poly).to_string()
}

/// Recursive-descent parser for the tiny expression grammar: integers, `d`,
/// `h`, `+`, `-`, `*`, `^`, parentheses; adjacency such as `2d` multiplies.
pub fn parse_expr(input: &str) -> Result<RepRingElement> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RepRingElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RepRingElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = rr_mul(&acc, &self.factor()?);
                }
                // adjacency: a digit, symbol or parenthesis follows directly
                Some(c) if c == b'd' || c == b'h' || c == b'(' || c.is_ascii_digit() => {
                    acc = rr_mul(&acc, &self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RepRingElement> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            if e > 4096 {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RepRingElement> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'd') => {
                self.pos += 1;
                Ok(RepRingElement::d())
            }
            Some(b'h') => {
                self.pos += 1;
                Ok(RepRingElement::h())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected closing parenthesis"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RepRingElement::from_int(n as i64))
            }
            Some(_) => Err(self.error("expected integer, d, h, or parenthesis")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                message: "integer out of range".into(),
            })
    }
}
