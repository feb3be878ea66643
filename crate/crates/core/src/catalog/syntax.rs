//! Small text forms shared by the catalog file and the command line.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, LaurentPoly, Rational};

/// A linear combination such as "e1-e2", "2e3+1/2e4" or "e1 + e2".
pub fn parse_vector(text: &str, n: usize) -> Result<Vec<Rational>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse(0, "empty vector"));
    }
    let mut out = vec![Rational::zero(); n];
    let mut rest = s.as_str();
    let mut pos = 0;
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if pos == 0 => (false, rest),
            _ => return Err(Error::parse(pos, "expected `+` or `-` between terms")),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        let e = term
            .find('e')
            .ok_or_else(|| Error::parse(pos, format!("term `{term}` has no basis vector")))?;
        let coef = match term[..e].trim_end_matches('*') {
            "" => Rational::from_integer(1.into()),
            c => parse_rational(c)
                .ok_or_else(|| Error::parse(pos, format!("bad coefficient `{c}`")))?,
        };
        let idx: usize = term[e + 1..]
            .parse()
            .map_err(|_| Error::parse(pos, format!("bad basis index in `{term}`")))?;
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
        out[idx - 1] += if neg { -coef } else { coef };
        pos += rest.len() - body.len() + end;
        rest = &body[end..];
    }
    Ok(out)
}

/// Two vectors separated by a comma or a wedge: "e1-e2, e3", "e1∧e3".
pub fn parse_plane(text: &str, n: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let (u, v) = text
        .split_once(',')
        .or_else(|| text.split_once('∧'))
        .ok_or_else(|| Error::parse(0, "a plane is two vectors separated by `,`"))?;
    Ok((parse_vector(u, n)?, parse_vector(v, n)?))
}

fn metric_variable(name: &str) -> Result<usize> {
    name.trim()
        .strip_prefix('g')
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k > 0)
        .map(|k| k - 1)
        .ok_or_else(|| {
            Error::parse(
                0,
                format!("expected a metric variable g<k>, found `{}`", name.trim()),
            )
        })
}

/// "g2 = -g1; g6 = g4^2/g1" as (variable index, value) pairs, applied in order.
pub fn parse_relations(text: &str) -> Result<Vec<(usize, LaurentPoly)>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|rel| {
            let (lhs, rhs) = rel
                .split_once('=')
                .ok_or_else(|| Error::parse(0, format!("relation `{}` has no `=`", rel.trim())))?;
            Ok((metric_variable(lhs)?, LaurentPoly::parse(rhs.trim())?))
        })
        .collect()
}

/// "g1=1, g2=-1/2" as index → value.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<usize, Rational>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (lhs, rhs) = item.split_once('=').ok_or_else(|| {
            Error::parse(
                0,
                format!("`{}` is not of the form g<k>=value", item.trim()),
            )
        })?;
        let v = parse_rational(rhs.trim())
            .ok_or_else(|| Error::parse(0, format!("bad value `{}`", rhs.trim())))?;
        out.insert(metric_variable(lhs)?, v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn vectors() {
        assert_eq!(
            parse_vector("e1-e3", 3).unwrap(),
            [rat(1, 1), rat(0, 1), rat(-1, 1)]
        );
        assert_eq!(
            parse_vector(" -1/2e2 + 3*e1", 2).unwrap(),
            [rat(3, 1), rat(-1, 2)]
        );
        assert!(parse_vector("e4", 3).is_err());
        assert!(parse_vector("e1e2", 3).is_err());
        let (u, v) = parse_plane("e1∧e2", 2).unwrap();
        assert_eq!((u[0].clone(), v[1].clone()), (rat(1, 1), rat(1, 1)));
    }

    #[test]
    fn relations() {
        let r = parse_relations("g2 = -g1; g6 = g4^2/g1").unwrap();
        assert_eq!(r[0], (1, LaurentPoly::parse("-g1").unwrap()));
        assert_eq!(r[1].0, 5);
        assert!(parse_relations("x = 1").is_err());
        let a = parse_assignment("g1=1,g3=-1/2").unwrap();
        assert_eq!(a[&2], rat(-1, 2));
    }
}
