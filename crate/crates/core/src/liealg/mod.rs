//! Lie algebras with exact structure constants.

mod algebra;
mod nice;
mod notation;
mod series;

pub use algebra::{check_jacobi, JacobiWitness, LieAlgebra};
pub use nice::{extract_nice_structure, NiceStructure, NotNice};
pub use notation::{
    has_pm, normalize_param_name, parse_structure, parse_structure_unchecked,
    parse_structure_variant, render_structure, Params, PmChoice,
};
pub use series::{center_dim, lower_central_series, series_profile, SeriesProfile};

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &str) -> LieAlgebra {
        parse_structure(t, &Params::new()).unwrap()
    }

    #[test]
    fn profiles() {
        let a = p("(0,0,e^{12},e^{13},e^{14}+e^{23},e^{15}+e^{24})");
        let s = series_profile(&a).unwrap();
        assert_eq!(s.lcs_dims, vec![6, 4, 3, 2, 1]);
        assert!(s.filtration_ok);
        let h = series_profile(&p("(0,0,e^{12})")).unwrap();
        assert_eq!((h.lcs_dims.clone(), h.center_dim), (vec![3, 1], 1));
        let ab = series_profile(&LieAlgebra::abelian(3)).unwrap();
        assert_eq!((ab.lcs_dims, ab.center_dim, ab.step), (vec![3], 3, 1));
    }

    #[test]
    fn nice_extraction() {
        let a = p("(0,0,e^{12},e^{13},e^{14}+e^{23},e^{15}+e^{24})");
        let n = extract_nice_structure(&a).unwrap();
        assert_eq!(n.diagram.bracket_pairs().len(), 6);
        let b = p("(0,0,0,e^{12},e^{14},e^{15}+e^{23}+e^{24})");
        assert_eq!(
            extract_nice_structure(&b),
            Err(NotNice::Contraction {
                i: 1,
                j: 5,
                covectors: vec![2, 3]
            })
        );
        assert_eq!(
            extract_nice_structure(&LieAlgebra::abelian(3))
                .unwrap()
                .diagram
                .arrow_count(),
            0
        );
    }

    #[test]
    fn jacobi_pass() {
        assert!(check_jacobi(&LieAlgebra::abelian(4)).is_none());
        let mut params = Params::new();
        params.insert("λ".into(), crate::exactmath::rat(1, 2));
        let t = "(0,0,(1-λ)e^{12},e^{13},λe^{14}+e^{23},e^{24}+e^{15},e^{34}+e^{25}+e^{16})";
        assert!(parse_structure(t, &params).is_ok());
    }
}
