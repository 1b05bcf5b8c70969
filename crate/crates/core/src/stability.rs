//! Numerical certificates on the dual fibration: Kleiman ampleness against
//! the effective curve cone, effectivity inequalities, slopes, the subsheaf
//! bound and the twisting threshold for slope stability.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};
use crate::rational::{floor, q, Q};
use crate::ring::{check_same, vdual, CohClass, RingModel};

/// The divisor `l H^ + k A^` on `V^`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationChoice {
    pub l: Q,
    pub k: Q,
}

impl PolarizationChoice {
    pub fn new(l: Q, k: Q) -> Self {
        PolarizationChoice { l, k }
    }

    pub fn ints(l: i64, k: i64) -> Self {
        Self::new(q(l), q(k))
    }

    pub fn divisor(&self) -> CohClass {
        let m = vdual();
        hat(&m, "H^")
            .scale(&self.l)
            .add(&hat(&m, "A^").scale(&self.k))
            .expect("same model")
    }

    pub fn scaled(&self, t: &Q) -> Self {
        Self::new(&self.l * t, &self.k * t)
    }
}

fn hat(m: &Arc<RingModel>, label: &str) -> CohClass {
    CohClass::basis(m, label).expect("built-in label")
}

/// Generators of the closed effective curve cone: `e^` and `l^ = 8 E^`.
pub fn curve_cone_generators() -> Vec<(&'static str, CohClass)> {
    let m = vdual();
    vec![("e^", hat(&m, "e^")), ("l^", hat(&m, "E^").scale_int(8))]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ampleness {
    pub ample: bool,
    /// Intersection numbers with each cone generator, in order.
    pub degrees: Vec<(&'static str, Q)>,
    /// First generator with nonpositive degree.
    pub witness: Option<&'static str>,
}

/// Kleiman: `D` is ample iff `D . C > 0` on both extremal rays.
pub fn is_ample(d: &PolarizationChoice) -> Ampleness {
    let div = d.divisor();
    let degrees: Vec<(&'static str, Q)> = curve_cone_generators()
        .into_iter()
        .map(|(name, c)| (name, div.mul(&c).expect("same model").integrate()))
        .collect();
    let witness = degrees
        .iter()
        .find(|(_, x)| !x.is_positive())
        .map(|(n, _)| *n);
    Ampleness {
        ample: witness.is_none(),
        degrees,
        witness,
    }
}

fn triple(x: &CohClass, y: &CohClass, z: &CohClass) -> Result<Q> {
    Ok(x.mul(y)?.mul(z)?.integrate())
}

/// `(D.A^2, D.H0.A, D.H0^2)` for an ample `H0`.
pub fn effectivity_inequalities(d: &CohClass, h0: &PolarizationChoice) -> Result<[Q; 3]> {
    if !d.is_homogeneous_of(2) {
        return Err(Error::Degree(format!("`{d}` is not a divisor class")));
    }
    let amp = is_ample(h0);
    if let Some(w) = amp.witness {
        return Err(Error::NotAmple(w.to_string()));
    }
    let m = vdual();
    check_same(&m, d.model())?;
    let (h, a) = (h0.divisor(), hat(&m, "A^"));
    Ok([triple(d, &a, &a)?, triple(d, &h, &a)?, triple(d, &h, &h)?])
}

/// `mu_D = (ch1 . D^2) / ch0`.
pub fn slope(ch: &ChernCharacter, d: &PolarizationChoice) -> Result<Q> {
    let r = ch.rank();
    if r.is_zero() {
        return Err(Error::ZeroRank);
    }
    let div = d.divisor();
    check_same(div.model(), ch.model())?;
    Ok(triple(&ch.ch(1), &div, &div)? / r)
}

/// Quotient line-bundle classes `c1(L_j)` of a filtration with rank-one quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationData {
    pub quotients: Vec<CohClass>,
}

/// Largest `c1(L_j) . H0^i . A^{2-i}` over the filtration and `i = 1, 2`
/// (the `i = 0` term vanishes since `A^2 = 0`).
pub fn subsheaf_bound(filtration: &FiltrationData, h0: &PolarizationChoice) -> Result<Q> {
    if filtration.quotients.is_empty() {
        return Err(Error::Empty("filtration".into()));
    }
    let m = vdual();
    let (h, a) = (h0.divisor(), hat(&m, "A^"));
    let mut best: Option<Q> = None;
    for c in &filtration.quotients {
        check_same(&m, c.model())?;
        for x in [triple(c, &h, &a)?, triple(c, &h, &h)?] {
            if best.as_ref().is_none_or(|b| &x > b) {
                best = Some(x);
            }
        }
    }
    Ok(best.expect("nonempty"))
}

/// Least integer `k >= 1` with `a - 2k/(n-1) < mu_E`.
pub fn stability_threshold(a: &Q, mu_e: &Q, n: i64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::Invalid(format!("rank {n} < 2")));
    }
    let x = (a - mu_e) * q(n - 1) / q(2);
    let k = floor(&x) + BigInt::one();
    Ok(k.max(BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::ring::parse::parse_class;

    fn cd(s: &str) -> CohClass {
        parse_class(s, &vdual()).unwrap()
    }

    #[test]
    fn ampleness_examples() {
        let a = is_ample(&PolarizationChoice::ints(1, 1));
        assert!(a.ample);
        assert_eq!(a.degrees, vec![("e^", q(1)), ("l^", q(8))]);
        let b = is_ample(&PolarizationChoice::ints(1, 0));
        assert!(!b.ample);
        assert_eq!(b.witness, Some("e^"));
        assert!(!is_ample(&PolarizationChoice::ints(0, 0)).ample);
        assert_eq!(
            is_ample(&PolarizationChoice::ints(0, 3)).witness,
            Some("l^")
        );
    }

    #[test]
    fn effectivity_examples() {
        let h0 = PolarizationChoice::ints(1, 1);
        assert_eq!(effectivity_inequalities(&cd("[A^]"), &h0).unwrap()[0], q(0));
        let r = effectivity_inequalities(&cd("[H^]"), &h0).unwrap();
        assert_eq!(r, [q(0), q(16), q(160)]);
        assert!(matches!(
            effectivity_inequalities(&cd("[H^]"), &PolarizationChoice::ints(1, 0)),
            Err(Error::NotAmple(_))
        ));
        assert!(effectivity_inequalities(&cd("[e^]"), &h0).is_err());
    }

    #[test]
    fn slope_examples() {
        let d11 = PolarizationChoice::ints(1, 1);
        let zero = ChernCharacter::new(cd("4[V^] + 3[E^]"));
        assert_eq!(slope(&zero, &d11).unwrap(), q(0));
        let h = ChernCharacter::new(cd("[V^] + [H^]"));
        assert_eq!(slope(&h, &d11).unwrap(), q(160));
        let a2 = ChernCharacter::new(cd("2[V^] + [A^]"));
        assert_eq!(slope(&a2, &PolarizationChoice::ints(1, 0)).unwrap(), q(8));
        assert_eq!(
            slope(&ChernCharacter::new(cd("[H^]")), &d11).unwrap_err(),
            Error::ZeroRank
        );
    }

    #[test]
    fn fiber_supported_slope_ignores_k() {
        let ch = ChernCharacter::new(cd("3[V^] + 5[A^]"));
        let base = slope(&ch, &PolarizationChoice::ints(2, 0)).unwrap();
        for k in 1..6 {
            assert_eq!(slope(&ch, &PolarizationChoice::ints(2, k)).unwrap(), base);
        }
    }

    #[test]
    fn subsheaf_bound_examples() {
        let f = |xs: &[&str]| FiltrationData {
            quotients: xs.iter().map(|s| cd(s)).collect(),
        };
        let h11 = PolarizationChoice::ints(1, 1);
        assert_eq!(subsheaf_bound(&f(&["0"]), &h11).unwrap(), q(0));
        assert_eq!(subsheaf_bound(&f(&["[H^]"]), &h11).unwrap(), q(160));
        assert_eq!(
            subsheaf_bound(&f(&["-[H^]", "[A^]"]), &PolarizationChoice::ints(1, 0)).unwrap(),
            q(16)
        );
        assert!(subsheaf_bound(&f(&[]), &h11).is_err());
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(
            stability_threshold(&q(0), &q(0), 4).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            stability_threshold(&q(160), &q(0), 4).unwrap(),
            BigInt::from(241)
        );
        assert_eq!(
            stability_threshold(&q(16), &q(0), 5).unwrap(),
            BigInt::from(33)
        );
        assert_eq!(
            stability_threshold(&qf(1, 3), &q(0), 2).unwrap(),
            BigInt::from(1)
        );
        assert!(stability_threshold(&q(1), &q(0), 1).is_err());
    }
}
