//! The inline structure-constant notation, e.g. "(0,0,e^{12},e^{13}+2e^{24})".
//! An entry at position k is de^k; a term c·e^{ij} there means [e_i, e_j] = c·e_k.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};

/// Which sign the ± token stands for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PmChoice {
    Plus,
    Minus,
}

pub type Params = BTreeMap<String, Rational>;

/// "lambda" is accepted as a spelling of λ.
pub fn normalize_param_name(name: &str) -> String {
    match name {
        "lambda" => "λ".to_string(),
        other => other.to_string(),
    }
}

pub fn has_pm(text: &str) -> bool {
    text.contains('±')
}

/// Parses and checks the Jacobi identity. Text containing ± is rejected;
/// use `parse_structure_variant`.
pub fn parse_structure(text: &str, params: &Params) -> Result<LieAlgebra> {
    let terms = Parser::new(text, params, None).structure()?;
    LieAlgebra::from_terms(terms.0, terms.1)
}

pub fn parse_structure_variant(text: &str, params: &Params, pm: PmChoice) -> Result<LieAlgebra> {
    let terms = Parser::new(text, params, Some(pm)).structure()?;
    LieAlgebra::from_terms(terms.0, terms.1)
}

/// Parses without the Jacobi check.
pub fn parse_structure_unchecked(
    text: &str,
    params: &Params,
    pm: Option<PmChoice>,
) -> Result<LieAlgebra> {
    let terms = Parser::new(text, params, pm).structure()?;
    LieAlgebra::from_terms_unchecked(terms.0, terms.1)
}

/// Canonical text form; `parse_structure` inverts it exactly.
pub fn render_structure(a: &LieAlgebra) -> String {
    let n = a.dim();
    let mut entries: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); n];
    for (&(i, j), terms) in a.brackets() {
        for (k, c) in terms {
            entries[*k].push((i, j, c.clone()));
        }
    }
    let rendered: Vec<String> = entries
        .into_iter()
        .map(|mut terms| {
            if terms.is_empty() {
                return "0".to_string();
            }
            terms.sort_by_key(|a| (a.0, a.1));
            let mut s = String::new();
            for (idx, (i, j, c)) in terms.iter().enumerate() {
                let neg = *c < Rational::zero();
                let mag = if neg { -c.clone() } else { c.clone() };
                if neg {
                    s.push('-');
                } else if idx > 0 {
                    s.push('+');
                }
                if !mag.is_one() {
                    s.push_str(&format_rational(&mag));
                }
                if *i < 9 && *j < 9 {
                    s.push_str(&format!("e^{{{}{}}}", i + 1, j + 1));
                } else {
                    s.push_str(&format!("e^{{{},{}}}", i + 1, j + 1));
                }
            }
            s
        })
        .collect();
    format!("({})", rendered.join(","))
}

type Terms = (usize, Vec<(usize, usize, usize, Rational)>);

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    params: &'a Params,
    pm: Option<PmChoice>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, params: &'a Params, pm: Option<PmChoice>) -> Self {
        let chars = text
            .chars()
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        Parser {
            chars,
            pos: 0,
            params,
            pm,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn outer_parens(&self) -> bool {
        let first = self.chars.iter().position(|c| !c.is_whitespace());
        let last = self.chars.iter().rposition(|c| !c.is_whitespace());
        let (Some(f), Some(l)) = (first, last) else {
            return false;
        };
        if self.chars[f] != '(' || self.chars[l] != ')' {
            return false;
        }
        let mut depth = 0i32;
        for (idx, &c) in self.chars.iter().enumerate().take(l + 1).skip(f) {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 && idx != l {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn structure(mut self) -> Result<Terms> {
        let wrapped = self.outer_parens();
        if wrapped {
            self.expect('(')?;
        }
        let mut entries: Vec<Vec<(usize, usize, Rational)>> = Vec::new();
        loop {
            entries.push(self.entry()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') if wrapped => {
                    self.pos += 1;
                    break;
                }
                None if !wrapped => break,
                _ => return Err(self.err("expected `,` or end of structure")),
            }
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        let n = entries.len();
        let mut terms = Vec::new();
        for (k, entry) in entries.into_iter().enumerate() {
            for (i, j, c) in entry {
                if i >= n || j >= n {
                    return Err(Error::IndexOutOfRange {
                        index: i.max(j) + 1,
                        n,
                    });
                }
                terms.push((i, j, k, c));
            }
        }
        Ok((n, terms))
    }

    fn at_entry_end(&mut self) -> bool {
        matches!(self.peek(), None | Some(',') | Some(')'))
    }

    fn entry(&mut self) -> Result<Vec<(usize, usize, Rational)>> {
        if self.peek() == Some('0') {
            let save = self.pos;
            self.pos += 1;
            if self.at_entry_end() {
                return Ok(Vec::new());
            }
            self.pos = save;
        }
        let mut out = Vec::new();
        let mut first = true;
        while !self.at_entry_end() {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some('±') => {
                    let p = self.pos;
                    self.pos += 1;
                    match self.pm {
                        Some(PmChoice::Plus) => Rational::one(),
                        Some(PmChoice::Minus) => -Rational::one(),
                        None => return Err(Error::parse(p, "`±` needs a variant choice")),
                    }
                }
                _ if first => Rational::one(),
                _ => return Err(self.err("expected a sign between terms")),
            };
            first = false;
            let coef = if self.at_basis() {
                Rational::one()
            } else {
                self.product()?
            };
            let (i, j) = self.basis()?;
            out.push((i, j, sign * coef));
        }
        if out.is_empty() {
            return Err(self.err("empty entry"));
        }
        Ok(out)
    }

    fn at_basis(&mut self) -> bool {
        self.peek() == Some('e') && self.chars.get(self.pos + 1) == Some(&'^')
    }

    fn basis(&mut self) -> Result<(usize, usize)> {
        if !self.at_basis() {
            return Err(self.err("expected `e^{..}`"));
        }
        self.pos += 2;
        self.expect('{')?;
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos] != '}' {
            self.pos += 1;
        }
        if self.pos == self.chars.len() {
            return Err(Error::parse(start, "unclosed `{`"));
        }
        let inner: String = self.chars[start..self.pos]
            .iter()
            .filter(|c| !c.is_whitespace())
            .collect();
        self.pos += 1;
        let idx: Vec<usize> = if inner.contains(',') {
            inner
                .split(',')
                .map(|s| s.parse::<usize>().ok())
                .collect::<Option<_>>()
                .ok_or_else(|| Error::parse(start, "bad index list"))?
        } else if inner.len() == 2 && inner.chars().all(|c| c.is_ascii_digit()) {
            inner.chars().map(|c| c as usize - '0' as usize).collect()
        } else {
            return Err(Error::parse(
                start,
                "indices must be two digits or comma separated",
            ));
        };
        if idx.len() != 2 || idx.contains(&0) {
            return Err(Error::parse(start, "expected two indices numbered from 1"));
        }
        if idx[0] == idx[1] {
            return Err(Error::parse(start, "repeated index in e^{..}"));
        }
        Ok((idx[0] - 1, idx[1] - 1))
    }

    /// Juxtaposed or `*`-separated factors, up to the basis element.
    fn product(&mut self) -> Result<Rational> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
                if self.at_basis() {
                    return Ok(acc);
                }
                acc *= self.factor()?;
                continue;
            }
            if self.at_basis() || self.at_entry_end() {
                return Ok(acc);
            }
            match self.peek() {
                Some('+') | Some('-') | Some('±') => return Ok(acc),
                _ => acc *= self.factor()?,
            }
        }
    }

    fn factor(&mut self) -> Result<Rational> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(num / den)
                } else {
                    Ok(num)
                }
            }
            Some(c) if c.is_alphabetic() && !self.at_basis() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_alphabetic() {
                    if self.chars[self.pos] == 'e' && self.chars.get(self.pos + 1) == Some(&'^') {
                        break;
                    }
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let name = normalize_param_name(&name);
                self.params
                    .iter()
                    .find(|(k, _)| normalize_param_name(k) == name)
                    .map(|(_, v)| v.clone())
                    .ok_or(Error::MissingParameter(name))
            }
            _ => Err(self.err("expected a coefficient")),
        }
    }

    fn sum(&mut self) -> Result<Rational> {
        let mut acc = Rational::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some(')') if !first => return Ok(acc),
                _ if first => Rational::one(),
                _ => return Err(self.err("expected `+`, `-` or `)`")),
            };
            first = false;
            let mut t = self.factor()?;
            while !matches!(self.peek(), Some('+') | Some('-') | Some(')') | None) {
                if self.peek() == Some('*') {
                    self.pos += 1;
                }
                t *= self.factor()?;
            }
            acc += sign * t;
        }
    }

    fn integer(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<num_bigint::BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| Error::parse(start, "expected an integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn no_params() -> Params {
        Params::new()
    }

    #[test]
    fn basic() {
        let a = parse_structure("(0,0,e^{12},e^{13})", &no_params()).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.bracket_basis(0, 1), vec![(2, rat(1, 1))]);
        assert_eq!(a.bracket_basis(2, 0), vec![(3, rat(-1, 1))]);
        assert_eq!(render_structure(&a), "(0,0,e^{12},e^{13})");
    }

    #[test]
    fn unwrapped_and_spaces() {
        let a = parse_structure("0, 0, - e^{12}, e^{13}", &no_params()).unwrap();
        assert_eq!(render_structure(&a), "(0,0,-e^{12},e^{13})");
    }

    #[test]
    fn params_and_rationals() {
        let mut p = Params::new();
        p.insert("lambda".into(), rat(2, 1));
        let t = "(0,0,(1-λ)e^{12},e^{13},λe^{14}+e^{23},e^{24}+e^{15},e^{34}+e^{25}+e^{16})";
        let a = parse_structure(t, &p).unwrap();
        assert_eq!(a.structure_constant(0, 1, 2), rat(-1, 1));
        assert_eq!(a.structure_constant(0, 3, 4), rat(2, 1));
        assert!(matches!(
            parse_structure(t, &no_params()),
            Err(Error::MissingParameter(_))
        ));
        let b = parse_structure("(0,0,3/2e^{12},-2*e^{13})", &no_params()).unwrap();
        assert_eq!(render_structure(&b), "(0,0,3/2e^{12},-2e^{13})");
    }

    #[test]
    fn pm_variants() {
        let t = "(0,0,e^{12},e^{13},e^{23},e^{14}±e^{25})";
        assert!(has_pm(t));
        assert!(parse_structure(t, &no_params()).is_err());
        let b = parse_structure_variant(t, &no_params(), PmChoice::Minus).unwrap();
        assert_eq!(b.structure_constant(1, 4, 5), rat(-1, 1));
    }

    #[test]
    fn two_digit_indices() {
        let mut entries = vec!["0".to_string(); 10];
        entries[9] = "e^{1,9}".into();
        let a = parse_structure(&format!("({})", entries.join(",")), &no_params()).unwrap();
        assert_eq!(a.bracket_basis(0, 8), vec![(9, rat(1, 1))]);
        assert!(
            render_structure(&a).contains("e^{1,9}") || render_structure(&a).contains("e^{19}")
        );
    }

    #[test]
    fn errors_have_positions() {
        match parse_structure("(0,0,e^{12}e^{13})", &no_params()) {
            Err(Error::Parse { pos, .. }) => assert!(pos > 0),
            other => panic!("{other:?}"),
        }
        assert!(parse_structure("(0,0,e^{14})", &no_params()).is_err());
    }

    #[test]
    fn jacobi_failure() {
        let t = "(0,0,e^{12},e^{13},e^{14},e^{25}+e^{34},e^{16}+e^{35})";
        assert!(matches!(
            parse_structure(t, &no_params()),
            Err(Error::Jacobi { .. })
        ));
    }
}
