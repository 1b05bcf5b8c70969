//! The fiberwise isogeny `phi_H: V -> V^` of degree 64 on rational cohomology.
//!
//! Both varieties are threefolds and the map is finite, so pullback and
//! pushforward preserve degree. Neither table in the literature lists the
//! unit under pushforward; it is fixed by `phi_* phi^* = 64 id`.

use crate::ring::{parse::parse_class, v, vdual, CohClass, CohMap, MapKind};

/// Degree of the isogeny (its kernel is Z/8 x Z/8).
pub const ISOGENY_DEGREE: i64 = 64;

fn images(model: &std::sync::Arc<crate::RingModel>, exprs: &[&str]) -> Vec<CohClass> {
    exprs
        .iter()
        .map(|e| parse_class(e, model).expect("static image"))
        .collect()
}

/// `phi_H^*: H*(V^) -> H*(V)`.
pub fn phi_pullback() -> CohMap {
    let imgs = images(&v(), &["[V]", "8[H]", "[A]", "64[e]", "8[l]", "64[pt]"]);
    CohMap::from_images(vdual(), v(), &imgs, MapKind::Pullback, 0).expect("degree-preserving")
}

/// `phi_H*: H*(V) -> H*(V^)`.
pub fn phi_pushforward() -> CohMap {
    let imgs = images(
        &vdual(),
        &["64[V^]", "8[H^]", "64[A^]", "[e^]", "8[E^]", "[pt]"],
    );
    CohMap::from_images(v(), vdual(), &imgs, MapKind::Pushforward, 0).expect("degree-preserving")
}

/// Basis pairs `(x, y)` of `V^` (unordered) where `phi^*(xy) != phi^*(x) phi^*(y)`.
pub fn homomorphism_violations(pull: &CohMap) -> Vec<(usize, usize)> {
    let src = pull.source();
    let n = src.rank();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i..n {
            let x = CohClass::basis_vector(src, i);
            let y = CohClass::basis_vector(src, j);
            let lhs = pull.apply(&x.mul(&y).expect("same model")).expect("source");
            let rhs = pull
                .apply(&x)
                .and_then(|a| a.mul(&pull.apply(&y)?))
                .expect("source");
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Pairs `(x in V, y in V^)` violating `phi_*(x . phi^* y) = phi_*(x) . y`.
pub fn projection_formula_violations(pull: &CohMap, push: &CohMap) -> Vec<(usize, usize)> {
    let (vm, dm) = (push.source(), pull.source());
    let mut bad = Vec::new();
    for i in 0..vm.rank() {
        for j in 0..dm.rank() {
            let x = CohClass::basis_vector(vm, i);
            let y = CohClass::basis_vector(dm, j);
            let lhs = pull
                .apply(&y)
                .and_then(|py| push.apply(&x.mul(&py)?))
                .expect("models line up");
            let rhs = push
                .apply(&x)
                .and_then(|px| px.mul(&y))
                .expect("models line up");
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Basis elements of `V^` where `phi_* phi^* y != 64 y`.
pub fn degree_identity_violations(pull: &CohMap, push: &CohMap) -> Vec<usize> {
    let dm = pull.source();
    (0..dm.rank())
        .filter(|&j| {
            let y = CohClass::basis_vector(dm, j);
            let round = pull.apply(&y).and_then(|x| push.apply(&x)).expect("models");
            round != y.scale_int(ISOGENY_DEGREE)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMatrix;
    use crate::rational::q;

    fn cls(m: &std::sync::Arc<crate::RingModel>, s: &str) -> CohClass {
        parse_class(s, m).unwrap()
    }

    #[test]
    fn pullback_table() {
        let f = phi_pullback();
        let (d, m) = (vdual(), v());
        assert_eq!(f.apply(&cls(&d, "[H^]")).unwrap(), cls(&m, "8[H]"));
        assert_eq!(f.apply(&cls(&d, "[V^]")).unwrap(), cls(&m, "[V]"));
        assert_eq!(
            f.apply(&cls(&d, "[H^] + [A^]")).unwrap(),
            cls(&m, "8[H] + [A]")
        );
        assert_eq!(f.apply(&cls(&d, "[pt]")).unwrap(), cls(&m, "64[pt]"));
        // l^ = 8 E^ pulls back to 64 l
        assert_eq!(f.apply(&cls(&d, "8[E^]")).unwrap(), cls(&m, "64[l]"));
    }

    #[test]
    fn pushforward_table() {
        let g = phi_pushforward();
        let (d, m) = (vdual(), v());
        assert_eq!(g.apply(&cls(&m, "[l]")).unwrap(), cls(&d, "8[E^]"));
        assert_eq!(g.apply(&cls(&m, "[pt]")).unwrap(), cls(&d, "[pt]"));
        assert_eq!(
            g.apply(&cls(&m, "[e] + [l]")).unwrap(),
            cls(&d, "[e^] + 8[E^]")
        );
        assert!(g.apply(&CohClass::zero(&m)).unwrap().is_zero());
    }

    #[test]
    fn pullback_of_square_matches_square_of_pullback() {
        let f = phi_pullback();
        let (d, m) = (vdual(), v());
        let h2 = cls(&d, "[H^]").pow(2);
        assert_eq!(f.apply(&h2).unwrap(), cls(&m, "1024[e] + 1024[l]"));
        assert_eq!(
            cls(&m, "[H]").pow(2).scale_int(64),
            cls(&m, "1024[e] + 1024[l]")
        );
    }

    #[test]
    fn compositions() {
        let (f, g) = (phi_pullback(), phi_pushforward());
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.matrix(), &QMatrix::identity(6).scale(&q(64)));
        let fg = f.compose(&g).unwrap();
        let m = v();
        assert_eq!(fg.apply(&cls(&m, "[H]")).unwrap(), cls(&m, "64[H]"));
        assert!(f.compose(&f).is_err());
    }

    #[test]
    fn laws_hold() {
        let (f, g) = (phi_pullback(), phi_pushforward());
        assert!(homomorphism_violations(&f).is_empty());
        assert!(projection_formula_violations(&f, &g).is_empty());
        assert!(degree_identity_violations(&f, &g).is_empty());
    }
}
