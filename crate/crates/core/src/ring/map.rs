use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::{check_same, CohClass, RingModel};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Pullback,
    Pushforward,
    Fm,
    FmInverse,
    Generic,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Pullback => "pullback",
            MapKind::Pushforward => "pushforward",
            MapKind::Fm => "fm",
            MapKind::FmInverse => "fm_inverse",
            MapKind::Generic => "generic",
        })
    }
}

/// A linear map between the rational cohomology of two models.
///
/// Columns are indexed by the source basis and rows by the target basis.
/// Pullbacks and pushforwards carry a fixed degree shift (zero for a finite
/// map between threefolds, `2 * codim` for the pushforward along an embedding)
/// which is checked entrywise on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohMap {
    source: Arc<RingModel>,
    target: Arc<RingModel>,
    matrix: QMatrix,
    kind: MapKind,
    shift: i32,
}

impl CohMap {
    pub fn new(
        source: Arc<RingModel>,
        target: Arc<RingModel>,
        matrix: QMatrix,
        kind: MapKind,
    ) -> Result<Self> {
        Self::with_shift(source, target, matrix, kind, 0)
    }

    pub fn with_shift(
        source: Arc<RingModel>,
        target: Arc<RingModel>,
        matrix: QMatrix,
        kind: MapKind,
        shift: i32,
    ) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.name(),
                target.name()
            )));
        }
        if matches!(kind, MapKind::Pullback | MapKind::Pushforward) {
            for j in 0..source.rank() {
                for i in 0..target.rank() {
                    if !matrix[(i, j)].is_zero()
                        && target.degree(i) as i32 != source.degree(j) as i32 + shift
                    {
                        return Err(Error::Degree(format!(
                            "{kind} sends `{}` to `{}` (shift {shift})",
                            source.label(j),
                            target.label(i)
                        )));
                    }
                }
            }
        }
        Ok(CohMap {
            source,
            target,
            matrix,
            kind,
            shift,
        })
    }

    /// Builds a map from the images of the source basis, in basis order.
    pub fn from_images(
        source: Arc<RingModel>,
        target: Arc<RingModel>,
        images: &[CohClass],
        kind: MapKind,
        shift: i32,
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::Dimension(format!(
                "{} images for a rank-{} source",
                images.len(),
                source.rank()
            )));
        }
        for img in images {
            check_same(&target, img.model())?;
        }
        let cols: Vec<Vec<Q>> = images.iter().map(|c| c.coeffs().to_vec()).collect();
        Self::with_shift(source, target, QMatrix::from_cols(&cols)?, kind, shift)
    }

    pub fn identity(model: &Arc<RingModel>) -> Self {
        CohMap {
            source: model.clone(),
            target: model.clone(),
            matrix: QMatrix::identity(model.rank()),
            kind: MapKind::Generic,
            shift: 0,
        }
    }

    pub fn source(&self) -> &Arc<RingModel> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingModel> {
        &self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn apply(&self, x: &CohClass) -> Result<CohClass> {
        check_same(&self.source, x.model())?;
        CohClass::new(self.target.clone(), self.matrix.mul_vec(x.coeffs())?)
    }

    /// Image of the `j`-th source basis element.
    pub fn image_of(&self, j: usize) -> CohClass {
        CohClass::new(self.target.clone(), self.matrix.col(j)).expect("column length")
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &CohMap) -> Result<CohMap> {
        check_same(&self.source, &g.target).map_err(|_| {
            Error::Dimension(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                g.source.name(),
                g.target.name()
            ))
        })?;
        let kind = if self.kind == g.kind {
            self.kind
        } else {
            MapKind::Generic
        };
        Ok(CohMap {
            source: g.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&g.matrix)?,
            kind,
            shift: self.shift + g.shift,
        })
    }

    pub fn scale(&self, s: &Q) -> CohMap {
        CohMap {
            matrix: self.matrix.scale(s),
            kind: MapKind::Generic,
            ..self.clone()
        }
    }
}
