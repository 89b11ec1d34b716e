use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::ring::RingRef;

/// Sparse polynomial over F_p. Terms are kept in strictly descending monomial
/// order with nonzero coefficients; the zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        Self::monomial(ring, Monomial::ONE, ring.field().from_i64(c))
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(i), 1)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u32) -> Self {
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, u32)>) -> Self {
        let order = ring.order();
        let f = ring.field();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusted constructor: `terms` must already be sorted and zero-free.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1 == 1
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn constant_coeff(&self) -> u32 {
        self.terms.iter().find(|t| t.0.is_one()).map_or(0, |t| t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| t.0 == *m).map_or(0, |t| t.1)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c.is_multiple_of(f.characteristic()) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Rescales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, 1)) => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field().inv(c)),
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        debug_assert!(*self.ring == *other.ring, "ring mismatch");
        let f = self.ring.field();
        let order = self.ring.order();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: u32| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, sign(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, sign(b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, sign(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division with remainder by a single polynomial under the ring order.
    pub fn div_rem(&self, g: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!g.is_zero(), "division by zero polynomial");
        let f = self.ring.field();
        let (lm, lc) = g.terms[0];
        let lc_inv = f.inv(lc);
        let mut quotient = Vec::new();
        let mut remainder = Vec::new();
        let mut cur = self.clone();
        while let Some(&(m, c)) = cur.terms.first() {
            match m.div(&lm) {
                Some(q) => {
                    let qc = f.mul(c, lc_inv);
                    quotient.push((q, qc));
                    cur = cur.merge(&g.mul_term(&q, qc), true);
                }
                None => {
                    remainder.push((m, c));
                    cur.terms.remove(0);
                }
            }
        }
        (
            Polynomial::from_terms(&self.ring, quotient),
            Polynomial::from_sorted(&self.ring, remainder),
        )
    }

    /// `self / g` when `g` divides `self` exactly.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(g);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    /// Associates: each divides the other.
    pub fn is_associate(&self, other: &Polynomial) -> bool {
        self.monic() == other.monic()
    }

    /// Substitutes `images[i]` for variable i; images may live in another ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert!(images.len() >= self.ring.nvars());
        let target = images[0].ring().clone();
        let mut cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for &(m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c as i64);
            for (v, powers) in cache.iter_mut().enumerate().take(self.ring.nvars()) {
                let e = m.exponent(v) as usize;
                if e == 0 {
                    continue;
                }
                while powers.len() <= e {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                t = &t * &powers[e];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Reinterprets the exponent vectors in `target`, which must have at least
    /// as many variables as are used here.
    pub fn change_ring(&self, target: &RingRef) -> Polynomial {
        if std::sync::Arc::ptr_eq(&self.ring, target) {
            return self.clone();
        }
        debug_assert!(self.terms.iter().all(|t| (target.nvars()..crate::monomial::MAX_VARS).all(|v| t.0.exponent(v) == 0)));
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Homogenization to degree `d` in `ext`, whose last variable is the
    /// homogenizing one; `d` must be at least the total degree.
    pub fn homogenize(&self, ext: &RingRef, d: u32) -> Polynomial {
        let h = ext.nvars() - 1;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = *m;
                m.set_exponent(h, (d - m.degree()) as u16);
                (m, *c)
            })
            .collect();
        Polynomial::from_terms(ext, terms)
    }

    /// Sets the last variable to 1 and moves the result to `base`.
    pub fn dehomogenize(&self, base: &RingRef) -> Polynomial {
        let h = self.ring.nvars() - 1;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = *m;
                m.set_exponent(h, 0);
                (m, *c)
            })
            .collect();
        Polynomial::from_terms(base, terms)
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.ring.field();
        self.terms.iter().fold(0, |acc, &(m, c)| {
            let v = (0..self.ring.nvars()).fold(c, |t, i| f.mul(t, f.pow(point[i], m.exponent(i) as u64)));
            f.add(acc, v)
        })
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0.exponent(v) > 0)
    }

    /// Parses the text syntax `3*x1^2*x2 - x3 + 1`.
    pub fn parse(ring: &RingRef, text: &str) -> Result<Polynomial> {
        Parser { ring, src: text.as_bytes(), pos: 0 }.parse_poly()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.ring.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        let f = self.ring.field();
        let mut prods = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &rhs.terms {
                prods.push((ma.mul(&mb), f.mul(ca, cb)));
            }
        }
        Polynomial::from_terms(&self.ring, prods)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, nvars: usize) -> fmt::Result {
    let mut first = true;
    for v in 0..nvars {
        let e = m.exponent(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "x{}", v + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, &(m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &m, self.ring.nvars())?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a RingRef,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse { line: 1, column: self.pos + 1, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn parse_uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| AlgebraError::Parse { line: 1, column: start + 1, message: "number too large".into() })
    }

    fn parse_poly(&mut self) -> Result<Polynomial> {
        let f = *self.ring.field();
        let p = f.characteristic() as u64;
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let (m, c) = self.parse_term(p)?;
            terms.push((m, if negate { f.neg(c) } else { c }));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(ch) => return Err(self.err(format!("unexpected character `{}`", ch as char))),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn parse_term(&mut self, p: u64) -> Result<(Monomial, u32)> {
        let mut coeff: u64 = 1;
        let mut mono = Monomial::ONE;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let n = self.parse_uint()? % p;
                    coeff = coeff * n % p;
                }
                Some(b'x') => {
                    let col = self.pos;
                    self.pos += 1;
                    let idx = self.parse_uint()? as usize;
                    if idx == 0 || idx > self.ring.nvars() {
                        return Err(AlgebraError::Parse {
                            line: 1,
                            column: col + 1,
                            message: format!("unknown variable x{idx} (ring has {} variables)", self.ring.nvars()),
                        });
                    }
                    self.skip_ws();
                    let mut e = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.parse_uint()?;
                    }
                    let cur = mono.exponent(idx - 1) as u64 + e;
                    if cur > u16::MAX as u64 {
                        return Err(self.err("exponent too large"));
                    }
                    mono.set_exponent(idx - 1, cur as u16);
                }
                Some(ch) => return Err(self.err(format!("unexpected character `{}`", ch as char))),
                None => return Err(self.err("unexpected end of input")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((mono, coeff as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    fn ring(p: u64, r: usize) -> RingRef {
        Ring::new(RingSpec::grevlex(p, r)).unwrap()
    }

    fn poly(ring: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(ring, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = ring(5, 3);
        let f = poly(&r, "3*x1^2*x3 - x2 + 7 + x2");
        assert_eq!(f.to_string(), "-2*x1^2*x3 + 2");
        assert_eq!(poly(&r, &f.to_string()), f);
        assert_eq!(poly(&r, "0").to_string(), "0");
        assert_eq!(poly(&r, "x1*x1").to_string(), "x1^2");
        assert_eq!(poly(&r, "- x1 - 1").to_string(), "-x1 - 1");
    }

    #[test]
    fn parse_errors_have_columns() {
        let r = ring(5, 2);
        match Polynomial::parse(&r, "x1 + x3") {
            Err(AlgebraError::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(Polynomial::parse(&r, "x1 +").is_err());
        assert!(Polynomial::parse(&r, "x1 $ x2").is_err());
        assert!(Polynomial::parse(&r, "").is_err());
    }

    #[test]
    fn arithmetic() {
        let r = ring(2, 2);
        let a = poly(&r, "x1 + x2");
        assert_eq!((&a * &a).to_string(), "x1^2 + x2^2");
        let r5 = ring(5, 2);
        let a = poly(&r5, "x1 + 1");
        let b = poly(&r5, "x1 - 1");
        assert_eq!(&a * &b, poly(&r5, "x1^2 - 1"));
        assert_eq!(a.pow(5), poly(&r5, "x1^5 + 1"));
        assert_eq!((&a - &a), Polynomial::zero(&r5));
    }

    #[test]
    fn division() {
        let r = ring(5, 2);
        let f = poly(&r, "x1^2*x2 - x2");
        let g = poly(&r, "x1 + 1");
        assert_eq!(f.exact_div(&g), Some(poly(&r, "x1*x2 - x2")));
        assert_eq!(poly(&r, "x1 + 1").exact_div(&poly(&r, "x1")), None);
        assert!(poly(&r, "x1").divides(&poly(&r, "x1*x2")));
        assert!(poly(&r, "2*x1 + 2").is_associate(&poly(&r, "x1 + 1")));
    }

    #[test]
    fn substitution() {
        let r = ring(5, 2);
        let f = poly(&r, "x1^2*x2 + 1");
        let images = [poly(&r, "2*x1 + 1"), poly(&r, "x2")];
        assert_eq!(f.substitute(&images), poly(&r, "4*x1^2*x2 + 4*x1*x2 + x2 + 1"));
        assert_eq!(poly(&r, "x1*x2 + 3").evaluate(&[2, 3]), 4);
    }
}
