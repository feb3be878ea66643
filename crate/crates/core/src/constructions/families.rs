use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::involution::Involution;
use crate::liealg::LieAlgebra;

/// h_{2n+1} with [e_{2i}, e_{2i−1}] = y = e_{2n+1}, and
/// σ = (1 y)(2 3)(4 5)…(2n−2 2n−1), fixing e_{2n}.
pub fn heisenberg(n: usize) -> Result<(LieAlgebra, Involution)> {
    if n == 0 {
        return Err(Error::Unsupported("heisenberg needs n ≥ 1".into()));
    }
    let dim = 2 * n + 1;
    let y = dim - 1;
    let one = Rational::from_integer(1.into());
    let terms = (1..=n).map(|i| (2 * i - 1, 2 * i - 2, y, one.clone()));
    let a = LieAlgebra::from_terms(dim, terms)?.with_name(format!("h{dim}"));
    let mut pairs = vec![(0, y)];
    pairs.extend((1..n).map(|i| (2 * i - 1, 2 * i)));
    Ok((a, Involution::from_transpositions(dim, &pairs)?))
}

/// Standard filiform [e1, e_i] = e_{i+1}, with σ(e_i) = e_{n−i+1}.
pub fn filiform(n: usize) -> Result<(LieAlgebra, Involution)> {
    if n < 3 {
        return Err(Error::Unsupported("filiform needs n ≥ 3".into()));
    }
    let one = Rational::from_integer(1.into());
    let terms = (1..n - 1).map(|i| (0, i, i + 1, one.clone()));
    let a = LieAlgebra::from_terms(n, terms)?.with_name(format!("filiform{n}"));
    let pairs: Vec<(usize, usize)> = (0..n / 2).map(|i| (i, n - 1 - i)).collect();
    Ok((a, Involution::from_transpositions(n, &pairs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::is_arrow_breaking;
    use crate::liealg::{extract_nice_structure, series_profile};

    #[test]
    fn heisenberg_shape() {
        for n in 1..5 {
            let (a, s) = heisenberg(n).unwrap();
            assert_eq!(a.dim(), 2 * n + 1);
            assert_eq!(s.fixed(), vec![2 * n - 1]);
            let d = extract_nice_structure(&a).unwrap().diagram;
            assert!(is_arrow_breaking(&d, &s).unwrap());
        }
        let (_, s) = heisenberg(3).unwrap();
        assert_eq!(s.to_string(), "(1 7)(2 3)(4 5)");
    }

    #[test]
    fn filiform_breaking() {
        for n in 4..9 {
            let (a, s) = filiform(n).unwrap();
            let d = extract_nice_structure(&a).unwrap().diagram;
            assert!(is_arrow_breaking(&d, &s).unwrap(), "n = {n}");
            assert_eq!(series_profile(&a).unwrap().step, n - 1);
        }
    }
}
