use std::sync::{Arc, OnceLock};

use super::parse::parse_model_file;
use super::RingModel;
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 4] = ["V", "Vdual", "S", "ExE"];

/// The fibered threefold: pullback of the hyperplane `H`, fiber `A`,
/// exceptional section `e`, line `l` in a smooth fiber.
const V_MODEL: &str = "\
model V topdeg 6
basis V 0
basis H 2
basis A 2
basis e 4
basis l 4
basis pt 6
mul H H = 16[e] + 16[l]
mul H A = 16[l]
mul H l = [pt]
mul A e = [pt]
";

/// The dual fibration. `E^` is the singular-locus curve, with `l^ = 8[E^]`.
const VDUAL_MODEL: &str = "\
model Vdual topdeg 6
basis V^ 0
basis H^ 2
basis A^ 2
basis e^ 4
basis E^ 4
basis pt 6
mul H^ H^ = 16[e^] + 128[E^]
mul H^ A^ = 16[E^]
mul H^ E^ = [pt]
mul A^ e^ = [pt]
";

/// Ruled surface over an elliptic curve normalising a translation scroll.
/// `C0^2 = 0` is forced by the Riemann-Roch count chi(H) = 8.
const SCROLL_MODEL: &str = "\
model S topdeg 4
basis S 0
basis C0 2
basis F 2
basis pt 4
mul C0 F = [pt]
";

/// The algebraic part of H*(E x E): horizontal and vertical fibers and the
/// diagonal.
const EXE_MODEL: &str = "\
model ExE topdeg 4
basis ExE 0
basis E 2
basis F 2
basis Delta 2
basis pt 4
mul E F = [pt]
mul E Delta = [pt]
mul F Delta = [pt]
";

fn load(text: &str) -> Arc<RingModel> {
    let mut models = parse_model_file(text).expect("built-in model text parses");
    Arc::new(models.remove(0))
}

macro_rules! cached {
    ($fn:ident, $text:expr) => {
        pub fn $fn() -> Arc<RingModel> {
            static CELL: OnceLock<Arc<RingModel>> = OnceLock::new();
            CELL.get_or_init(|| load($text)).clone()
        }
    };
}

cached!(v, V_MODEL);
cached!(vdual, VDUAL_MODEL);
cached!(scroll, SCROLL_MODEL);
cached!(exe, EXE_MODEL);

pub fn builtin_model(name: &str) -> Result<Arc<RingModel>> {
    match name {
        "V" => Ok(v()),
        "Vdual" => Ok(vdual()),
        "S" => Ok(scroll()),
        "ExE" => Ok(exe()),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::ring::{parse::parse_class, CohClass};

    fn b(m: &Arc<RingModel>, l: &str) -> CohClass {
        CohClass::basis(m, l).unwrap()
    }

    #[test]
    fn all_builtins_satisfy_ring_axioms() {
        for name in BUILTIN_NAMES {
            let m = builtin_model(name).unwrap();
            assert!(m.associativity_violations().is_empty(), "{name}");
            assert!(m.commutativity_violations().is_empty(), "{name}");
            assert!(m.unit_violations().is_empty(), "{name}");
            assert!(m.poincare_violations().is_empty(), "{name}");
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            builtin_model("P3").unwrap_err(),
            Error::UnknownModel("P3".into())
        );
    }

    #[test]
    fn top_intersections_on_v() {
        let m = v();
        let (h, a) = (b(&m, "H"), b(&m, "A"));
        let tri = |x: &CohClass, y: &CohClass, z: &CohClass| {
            x.mul(y).unwrap().mul(z).unwrap().integrate()
        };
        assert_eq!(tri(&h, &h, &h), q(16));
        assert_eq!(tri(&h, &h, &a), q(16));
        assert_eq!(tri(&h, &a, &a), q(0));
        assert_eq!(tri(&a, &a, &a), q(0));
        assert_eq!(h.mul(&a).unwrap(), parse_class("16[l]", &m).unwrap());
    }

    #[test]
    fn products_on_vdual() {
        let m = vdual();
        let (h, a) = (b(&m, "H^"), b(&m, "A^"));
        assert_eq!(h.mul(&h).unwrap().mul(&a).unwrap().integrate(), q(16));
        assert_eq!(h.pow(3).integrate(), q(128));
        // (H^ + A^)^2 = H^2 + 2 H^A^ + A^2 = 16e^ + 128E^ + 32E^
        let s = h.add(&a).unwrap();
        assert_eq!(s.pow(2), parse_class("16[e^] + 160[E^]", &m).unwrap());
    }

    #[test]
    fn fiber_classes_square_to_zero() {
        let m = exe();
        for l in ["E", "F", "Delta"] {
            assert!(b(&m, l).pow(2).is_zero(), "{l}");
        }
        let s = scroll();
        assert!(b(&s, "C0").pow(2).is_zero());
        assert_eq!(b(&s, "C0").mul(&b(&s, "F")).unwrap().integrate(), q(1));
    }

    #[test]
    fn unit_law() {
        let m = v();
        let x = parse_class("3[H] + [A]", &m).unwrap();
        assert_eq!(CohClass::unit(&m).mul(&x).unwrap(), x);
    }
}
