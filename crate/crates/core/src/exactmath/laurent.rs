use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, with no zero exponents. Variable `v` prints as `g{v+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(usize, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, i32)>) -> Self {
        pairs.sort_unstable();
        let mut out: Vec<(usize, i32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial(out)
    }

    pub fn exponents(&self) -> &[(usize, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: usize) -> i32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return ea.cmp(&0);
                    } else {
                        return 0.cmp(&eb);
                    }
                }
            }
        }
    }
}

// Graded lex on the dense exponent vectors: total degree first, then the
// first differing variable decides.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // positive exponents first
        let ordered = self
            .0
            .iter()
            .filter(|p| p.1 > 0)
            .chain(self.0.iter().filter(|p| p.1 < 0));
        for (idx, &(v, e)) in ordered.enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "g{}", v + 1)?;
            } else {
                write!(f, "g{}^{}", v + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Laurent polynomial over ℚ in g1, g2, …; terms kept in graded lex order,
/// zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Sub,
    Mul,
    DivByMonomial,
}

pub fn laurent_arith(a: &LaurentPoly, b: &LaurentPoly, op: LaurentOp) -> Result<LaurentPoly> {
    Ok(match op {
        LaurentOp::Add => a + b,
        LaurentOp::Sub => a - b,
        LaurentOp::Mul => a * b,
        LaurentOp::DivByMonomial => a.div_by_monomial(b)?,
    })
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// The variable g{v+1} raised to `e`.
    pub fn var(v: usize, e: i32) -> Self {
        LaurentPoly::term(Rational::one(), Monomial::var(v, e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms in descending graded lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> LaurentPoly {
        if r.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    /// self += c · a · b
    pub fn add_product(&mut self, c: &Rational, a: &LaurentPoly, b: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), c * ca * cb);
            }
        }
    }

    /// self += c · a
    pub fn add_scaled(&mut self, c: &Rational, a: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &a.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn div_by_monomial(&self, b: &LaurentPoly) -> Result<LaurentPoly> {
        if !b.is_monomial() {
            return Err(Error::NotMonomial);
        }
        let (m, c) = b.terms.iter().next().unwrap();
        Ok(self.mul_monomial(&m.inverse()).scale(&c.recip()))
    }

    pub fn pow(&self, e: i32) -> Result<LaurentPoly> {
        if e < 0 {
            let inv = LaurentPoly::one().div_by_monomial(self)?;
            return inv.pow(-e);
        }
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Value at a point given per variable index; fails when a variable with
    /// a negative exponent is zero.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = point.get(v).ok_or(Error::SizeMismatch {
                    expected: v + 1,
                    got: point.len(),
                })?;
                if x.is_zero() && e < 0 {
                    return Err(Error::DivisionByZero);
                }
                t *= x.pow(e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Multiplies by the monomial that makes every exponent nonnegative and
    /// minimal, then scales to a monic leading term. Zero stays zero.
    pub fn numerator(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut mins: BTreeMap<usize, i32> = BTreeMap::new();
        for m in self.terms.keys() {
            for &(v, _) in &m.0 {
                mins.entry(v).or_insert(0);
            }
        }
        for (v, lo) in mins.iter_mut() {
            *lo = self.terms.keys().map(|m| m.exponent(*v)).min().unwrap_or(0);
        }
        let shift = Monomial::from_pairs(mins.into_iter().map(|(v, e)| (v, -e)).collect());
        let p = self.mul_monomial(&shift);
        let lead = p.leading().unwrap().1.clone();
        p.scale(&lead.recip())
    }

    /// Replaces g{v+1} by `value`. Requires v to occur only with nonnegative
    /// exponents unless `value` is a single term.
    pub fn substitute(&self, v: usize, value: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e < 0 && !value.is_monomial() {
                return Err(Error::NegativeExponent(v + 1));
            }
            let rest = Monomial(m.0.iter().copied().filter(|&(w, _)| w != v).collect());
            let factor = value.pow(e)?;
            out = &out + &factor.mul_monomial(&rest).scale(c);
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<LaurentPoly> {
        let mut p = PolyParser {
            chars: text.char_indices().collect(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(Error::parse(p.offset(), "unexpected trailing input"));
        }
        Ok(v)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", format_rational(&a), m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

// expr := term (('+'|'-') term)*
// term := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := atom ('^' signed-int)?
struct PolyParser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl PolyParser {
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or_else(|| {
                self.chars
                    .last()
                    .map(|&(o, c)| o + c.len_utf8())
                    .unwrap_or(0)
            })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::parse(at, "division by zero"));
                    }
                    acc = acc
                        .div_by_monomial(&d)
                        .map_err(|_| Error::parse(at, "divisor must be a single term"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.offset();
            let mut neg = false;
            if self.peek() == Some('-') {
                neg = true;
                self.pos += 1;
            }
            let digits = self.digits();
            let e: i32 = digits
                .parse()
                .map_err(|_| Error::parse(at, "expected integer exponent"))?;
            let e = if neg { -e } else { e };
            return base
                .pow(e)
                .map_err(|_| Error::parse(at, "negative power of a sum"));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let at = self.offset();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('g') => {
                self.pos += 1;
                let d = self.digits();
                let i: usize = d
                    .parse()
                    .map_err(|_| Error::parse(at, "expected variable index after `g`"))?;
                if i == 0 {
                    return Err(Error::parse(at, "variables start at g1"));
                }
                Ok(LaurentPoly::var(i - 1, 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: num_bigint::BigInt = d.parse().unwrap();
                Ok(LaurentPoly::constant(Rational::from_integer(n)))
            }
            _ => Err(Error::parse(at, "expected number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn expansion() {
        assert_eq!(&p("g1 + g2") * &p("g1 - g2"), p("g1^2 - g2^2"));
        assert_eq!(p("g1*g3").div_by_monomial(&p("g3")).unwrap(), p("g1"));
        assert!((&p("(g1-g3)/g3") + &p("(g3-g1)/g3")).is_zero());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("(g1 - g3)*g3^-1").to_string(), "g1*g3^-1 - 1");
        assert_eq!(
            p("-g4^2/(2*g1^2) - g6/(2*g2)").to_string(),
            "-1/2*g6*g2^-1 - 1/2*g4^2*g1^-2"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("3/4").to_string(), "3/4");
    }

    #[test]
    fn round_trip() {
        for s in ["g1*g3^-1 - 1", "1/2*g2^3 + g1*g2 - 7/3", "-g5^-2"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn non_monomial_divisor() {
        assert_eq!(
            p("g1").div_by_monomial(&p("g1 + g2")),
            Err(Error::NotMonomial)
        );
    }

    #[test]
    fn graded_lex_order() {
        // degree 2 before degree 1, and g1 beats g2 at equal degree
        let q = p("g2 + g1 + g2^2");
        let order: Vec<String> = q.terms().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, vec!["g2^2", "g1", "g2"]);
    }

    #[test]
    fn numerator_and_substitution() {
        let q = p("(g1 - g3)/g3");
        assert_eq!(q.numerator(), p("g1 - g3"));
        let s = q.numerator().substitute(2, &p("g1")).unwrap();
        assert!(s.is_zero());
        assert_eq!(
            p("g3^-1 + g1").substitute(2, &p("g1 + g2")),
            Err(Error::NegativeExponent(3))
        );
        assert_eq!(p("g3^-1").substitute(2, &p("-g1")).unwrap(), p("-g1^-1"));
    }

    #[test]
    fn evaluation() {
        let q = p("g1*g2^-1 + 3");
        assert_eq!(q.eval(&[rat(2, 1), rat(4, 1)]).unwrap(), rat(7, 2));
        assert_eq!(q.eval(&[rat(2, 1), rat(0, 1)]), Err(Error::DivisionByZero));
    }
}
