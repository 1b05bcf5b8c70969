//! The Fourier-Mukai transform `H*(V,Q) -> H*(V^,Q)` as an exact 6x6 matrix.
//!
//! The first two columns of the matrix (the images of `[V]` and `[H]`) rest on
//! transforms that are only expected, not proven, so every matrix carries a
//! per-column reliability flag. [`FmMatrix::apply_verified`] refuses classes
//! that reach an unverified column.

use std::fmt;

use num_traits::Zero;

use crate::chern::{BasisSheaf, ChernCharacter};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::qf;
use crate::ring::parse::parse_class;
use crate::ring::{check_same, v, vdual, CohClass, CohMap, MapKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Reconstructed,
    Builtin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnStatus {
    Verified,
    Expected,
}

impl fmt::Display for ColumnStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColumnStatus::Verified => "verified",
            ColumnStatus::Expected => "expected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmMatrix {
    map: CohMap,
    provenance: Provenance,
    columns: Vec<ColumnStatus>,
}

/// A sheaf character and the character of its transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmPair {
    pub source: CohClass,
    pub image: CohClass,
    pub verified: bool,
}

impl FmPair {
    pub fn new(source: CohClass, image: CohClass) -> Self {
        FmPair {
            source,
            image,
            verified: true,
        }
    }
}

impl FmMatrix {
    pub fn map(&self) -> &CohMap {
        &self.map
    }

    pub fn matrix(&self) -> &QMatrix {
        self.map.matrix()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn column_status(&self) -> &[ColumnStatus] {
        &self.columns
    }

    pub fn apply(&self, ch: &ChernCharacter) -> Result<ChernCharacter> {
        Ok(ChernCharacter::new(self.map.apply(ch.class())?))
    }

    /// Like [`FmMatrix::apply`] but only through verified columns.
    pub fn apply_verified(&self, ch: &ChernCharacter) -> Result<ChernCharacter> {
        check_same(self.map.source(), ch.model())?;
        for (j, c) in ch.class().coeffs().iter().enumerate() {
            if !c.is_zero() && self.columns[j] != ColumnStatus::Verified {
                return Err(Error::UnverifiedColumn(
                    self.map.source().label(j).to_string(),
                ));
            }
        }
        self.apply(ch)
    }

    /// The inverse map. A column of the inverse is verified when the
    /// corresponding target basis vector lies in the image of the verified
    /// columns.
    pub fn inverse(&self) -> Result<FmMatrix> {
        let inv = self.matrix().inverse()?;
        let kind = match self.map.kind() {
            MapKind::Fm => MapKind::FmInverse,
            MapKind::FmInverse => MapKind::Fm,
            k => k,
        };
        let map = CohMap::new(
            self.map.target().clone(),
            self.map.source().clone(),
            inv,
            kind,
        )?;
        let verified_images: Vec<Vec<_>> = (0..self.columns.len())
            .filter(|&j| self.columns[j] == ColumnStatus::Verified)
            .map(|j| self.matrix().col(j))
            .collect();
        Ok(FmMatrix {
            columns: span_status(&verified_images, self.matrix().rows()),
            map,
            provenance: self.provenance,
        })
    }
}

/// For each standard basis vector, whether it lies in the span of `vectors`.
fn span_status(vectors: &[Vec<crate::Q>], n: usize) -> Vec<ColumnStatus> {
    let base_rank = if vectors.is_empty() {
        0
    } else {
        QMatrix::from_cols(vectors).expect("equal lengths").rank()
    };
    (0..n)
        .map(|j| {
            let mut cols = vectors.to_vec();
            let mut e = vec![crate::Q::zero(); n];
            e[j] = crate::rational::q(1);
            cols.push(e);
            if QMatrix::from_cols(&cols).expect("equal lengths").rank() == base_rank {
                ColumnStatus::Verified
            } else {
                ColumnStatus::Expected
            }
        })
        .collect()
}

fn printed(rows: [[(i64, i64); 6]; 6]) -> QMatrix {
    QMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| qf(n, d)).collect())
            .collect(),
    )
    .expect("6x6")
}

const fn i(n: i64) -> (i64, i64) {
    (n, 1)
}

/// `s_P` in the bases `([V],[H],[A],[e],[l],[pt])` and
/// `([V^],[H^],[A^],[e^],[E^],[pt])`.
pub fn builtin_sp() -> FmMatrix {
    let m = printed([
        [i(0), i(0), i(0), i(1), i(0), i(0)],
        [i(0), i(-1), i(0), i(0), i(0), i(0)],
        [i(0), (16, 3), i(0), i(-1), i(0), i(1)],
        [i(1), i(0), i(0), i(0), i(0), i(0)],
        [i(0), i(16), i(0), i(0), i(-1), i(0)],
        [i(-1), (2, 3), i(1), i(0), i(0), i(0)],
    ]);
    use ColumnStatus::{Expected as X, Verified as Ok};
    FmMatrix {
        map: CohMap::new(v(), vdual(), m, MapKind::Fm).expect("6x6"),
        provenance: Provenance::Builtin,
        columns: vec![X, X, Ok, Ok, Ok, Ok],
    }
}

/// `s_P^{-1}` as printed.
pub fn builtin_sp_inverse() -> FmMatrix {
    let m = printed([
        [i(0), i(0), i(0), i(1), i(0), i(0)],
        [i(0), i(-1), i(0), i(0), i(0), i(0)],
        [i(0), (2, 3), i(0), i(1), i(0), i(1)],
        [i(1), i(0), i(0), i(0), i(0), i(0)],
        [i(0), i(-16), i(0), i(0), i(-1), i(0)],
        [i(1), (16, 3), i(1), i(0), i(0), i(0)],
    ]);
    use ColumnStatus::{Expected as X, Verified as Ok};
    FmMatrix {
        map: CohMap::new(vdual(), v(), m, MapKind::FmInverse).expect("6x6"),
        provenance: Provenance::Builtin,
        columns: vec![Ok, X, Ok, X, Ok, Ok],
    }
}

/// The unique linear map sending each `source` to its `image`.
///
/// Column `j` is flagged verified when the `j`-th source basis vector is in
/// the span of the verified pairs' sources.
pub fn reconstruct_from_pairs(pairs: &[FmPair]) -> Result<FmMatrix> {
    let first = pairs
        .first()
        .ok_or_else(|| Error::Empty("no pairs".into()))?;
    let (src, tgt) = (first.source.model().clone(), first.image.model().clone());
    for p in pairs {
        check_same(&src, p.source.model())?;
        check_same(&tgt, p.image.model())?;
    }
    let n = src.rank();
    let inputs: Vec<Vec<crate::Q>> = pairs.iter().map(|p| p.source.coeffs().to_vec()).collect();
    let x = QMatrix::from_cols(&inputs)?;
    let (_, pivots) = x.rref();
    if pivots.len() < n {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            needed: n,
        });
    }
    let pick = |f: &dyn Fn(&FmPair) -> Vec<crate::Q>| -> Result<QMatrix> {
        QMatrix::from_cols(&pivots.iter().map(|&k| f(&pairs[k])).collect::<Vec<_>>())
    };
    let xp = pick(&|p| p.source.coeffs().to_vec())?;
    let yp = pick(&|p| p.image.coeffs().to_vec())?;
    let m = yp.mul(&xp.inverse()?)?;
    let map = CohMap::new(src, tgt, m, MapKind::Fm)?;
    for (idx, p) in pairs.iter().enumerate() {
        if map.apply(&p.source)? != p.image {
            return Err(Error::Inconsistent { index: idx });
        }
    }
    let verified: Vec<Vec<crate::Q>> = pairs
        .iter()
        .filter(|p| p.verified)
        .map(|p| p.source.coeffs().to_vec())
        .collect();
    Ok(FmMatrix {
        columns: span_status(&verified, n),
        map,
        provenance: Provenance::Reconstructed,
    })
}

/// Recorded transforms of the six basis sheaves, as characters on `V^`.
/// The last two are expected rather than proven.
pub fn recorded_image(sheaf: BasisSheaf) -> (CohClass, bool) {
    let (text, verified) = match sheaf {
        BasisSheaf::OA => ("[pt]", true),
        BasisSheaf::Oe => ("[V^]", true),
        BasisSheaf::Opt => ("[A^]", true),
        BasisSheaf::OAH => ("8[A^] - 16[E^] + [pt]", true),
        BasisSheaf::OV => ("[e^] - [pt]", false),
        BasisSheaf::OVH => ("8[V^] - [H^] + [e^] + 8[E^] - 1/3[pt]", false),
    };
    (parse_class(text, &vdual()).expect("static"), verified)
}

/// `(ch(F), ch(S_P F))` for the six basis sheaves, `ch(F)` computed by GRR.
pub fn basis_sheaf_pairs() -> Vec<FmPair> {
    BasisSheaf::ALL
        .iter()
        .map(|&s| {
            let (image, verified) = recorded_image(s);
            FmPair {
                source: s.ch().into_class(),
                image,
                verified,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::spectral_character;
    use crate::rational::q;

    fn cd(s: &str) -> CohClass {
        parse_class(s, &vdual()).unwrap()
    }

    #[test]
    fn printed_columns() {
        let sp = builtin_sp();
        assert_eq!(sp.map().image_of(2), cd("[pt]"));
        assert_eq!(sp.map().image_of(5), cd("[A^]"));
    }

    #[test]
    fn printed_matrices_are_inverse() {
        let (sp, inv) = (builtin_sp(), builtin_sp_inverse());
        assert_eq!(sp.matrix().mul(inv.matrix()).unwrap(), QMatrix::identity(6));
        assert_eq!(inv.matrix().mul(sp.matrix()).unwrap(), QMatrix::identity(6));
        assert_eq!(sp.inverse().unwrap().matrix(), inv.matrix());
    }

    #[test]
    fn inverse_column_flags_follow_verified_span() {
        let computed = builtin_sp().inverse().unwrap();
        assert_eq!(
            computed.column_status(),
            builtin_sp_inverse().column_status()
        );
    }

    #[test]
    fn reconstruction_matches_printed_matrix() {
        let r = reconstruct_from_pairs(&basis_sheaf_pairs()).unwrap();
        assert_eq!(r.matrix(), builtin_sp().matrix());
        assert_eq!(r.column_status(), builtin_sp().column_status());
        assert_eq!(r.provenance(), Provenance::Reconstructed);
    }

    #[test]
    fn identity_pairs_give_identity() {
        let m = v();
        let pairs: Vec<FmPair> = (0..6)
            .map(|j| FmPair::new(CohClass::basis_vector(&m, j), CohClass::basis_vector(&m, j)))
            .collect();
        assert_eq!(
            reconstruct_from_pairs(&pairs).unwrap().matrix(),
            &QMatrix::identity(6)
        );
    }

    #[test]
    fn too_few_pairs() {
        let pairs = &basis_sheaf_pairs()[..5];
        assert_eq!(
            reconstruct_from_pairs(pairs).unwrap_err(),
            Error::RankDeficient { rank: 5, needed: 6 }
        );
    }

    #[test]
    fn inconsistent_extra_pair() {
        let mut pairs = basis_sheaf_pairs();
        pairs.push(FmPair::new(parse_class("[pt]", &v()).unwrap(), cd("2[A^]")));
        assert_eq!(
            reconstruct_from_pairs(&pairs).unwrap_err(),
            Error::Inconsistent { index: 6 }
        );
        // a consistent seventh pair is fine
        pairs[6] = FmPair::new(parse_class("2[pt]", &v()).unwrap(), cd("2[A^]"));
        assert!(reconstruct_from_pairs(&pairs).is_ok());
    }

    #[test]
    fn transform_of_o_h() {
        let ch = BasisSheaf::OVH.ch();
        let img = builtin_sp().apply(&ch).unwrap();
        assert_eq!(img.class(), &cd("8[V^] - [H^] + [e^] + 8[E^] - 1/3[pt]"));
    }

    #[test]
    fn spectral_closed_form_and_roundtrip() {
        let sp = builtin_sp();
        let img = sp.apply_verified(&spectral_character(3, 5, -2)).unwrap();
        assert_eq!(img.class(), &cd("3[V^] - 5[A^] - 5[E^]"));
        let back = builtin_sp_inverse().apply(&img).unwrap();
        assert_eq!(back, spectral_character(3, 5, -2));
        assert_eq!(
            sp.apply(&BasisSheaf::Oe.ch()).unwrap().class(),
            &CohClass::unit(&vdual())
        );
    }

    #[test]
    fn verified_application_refuses_unreliable_columns() {
        let sp = builtin_sp();
        let h = ChernCharacter::new(parse_class("[H]", &v()).unwrap());
        assert_eq!(
            sp.apply_verified(&h).unwrap_err(),
            Error::UnverifiedColumn("H".into())
        );
        let one = ChernCharacter::trivial(&v(), 1);
        assert!(sp.apply_verified(&one).is_err());
        assert_eq!(
            sp.apply_verified(&ChernCharacter::new(parse_class("[A]", &v()).unwrap()))
                .unwrap()
                .class()
                .integrate(),
            q(1)
        );
    }
}
