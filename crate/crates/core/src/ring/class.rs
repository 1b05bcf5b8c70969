use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{check_same, RingModel};
use crate::error::{Error, Result};
use crate::rational::Q;

/// An exact-rational class: one coefficient per basis element of its model.
#[derive(Debug, Clone)]
pub struct CohClass {
    model: Arc<RingModel>,
    coeffs: Vec<Q>,
}

impl PartialEq for CohClass {
    fn eq(&self, other: &Self) -> bool {
        super::same_model(&self.model, &other.model) && self.coeffs == other.coeffs
    }
}

impl Eq for CohClass {}

impl CohClass {
    pub fn new(model: Arc<RingModel>, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != model.rank() {
            return Err(Error::Dimension(format!(
                "{} coefficients for a rank-{} model",
                coeffs.len(),
                model.rank()
            )));
        }
        Ok(CohClass { model, coeffs })
    }

    pub fn zero(model: &Arc<RingModel>) -> Self {
        CohClass {
            coeffs: vec![Q::zero(); model.rank()],
            model: model.clone(),
        }
    }

    pub fn basis_vector(model: &Arc<RingModel>, i: usize) -> Self {
        let mut c = Self::zero(model);
        c.coeffs[i] = Q::one();
        c
    }

    /// The basis element with the given label.
    pub fn basis(model: &Arc<RingModel>, label: &str) -> Result<Self> {
        let i = model.index_of(label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            pos: 0,
        })?;
        Ok(Self::basis_vector(model, i))
    }

    pub fn unit(model: &Arc<RingModel>) -> Self {
        Self::basis_vector(model, model.unit_index())
    }

    pub fn point(model: &Arc<RingModel>) -> Self {
        Self::basis_vector(model, model.point_index())
    }

    pub fn from_ints(model: &Arc<RingModel>, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            model.clone(),
            coeffs.iter().map(|&c| Q::from_integer(c.into())).collect(),
        )
    }

    pub fn model(&self) -> &Arc<RingModel> {
        &self.model
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    pub fn coeff(&self, label: &str) -> Option<&Q> {
        self.model.index_of(label).map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of the point class.
    pub fn integrate(&self) -> Q {
        self.coeffs[self.model.point_index()].clone()
    }

    /// Coefficient of the unit (the rank, for a Chern character).
    pub fn rank_part(&self) -> Q {
        self.coeffs[self.model.unit_index()].clone()
    }

    /// Projection onto the basis elements of real degree `d`.
    pub fn part(&self, d: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.model.degree(i) == d {
                    c.clone()
                } else {
                    Q::zero()
                }
            })
            .collect();
        CohClass {
            model: self.model.clone(),
            coeffs,
        }
    }

    /// True when every nonzero component has degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.model.degree(i) == d)
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        check_same(&self.model, &other.model)?;
        Ok(CohClass {
            model: self.model.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CohClass) -> Result<CohClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CohClass {
        CohClass {
            model: self.model.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> CohClass {
        CohClass {
            model: self.model.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_int(&self, s: i64) -> CohClass {
        self.scale(&Q::from_integer(s.into()))
    }

    /// Ring product, the bilinear extension of the model's table.
    pub fn mul(&self, other: &CohClass) -> Result<CohClass> {
        check_same(&self.model, &other.model)?;
        Ok(CohClass {
            model: self.model.clone(),
            coeffs: self.model.mul_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    /// `self^k`, with `self^0` the unit.
    pub fn pow(&self, k: u32) -> CohClass {
        let mut acc = Self::unit(&self.model);
        for _ in 0..k {
            acc = acc.mul(self).expect("same model");
        }
        acc
    }

    /// Sum of a sequence of classes over `model`.
    pub fn sum<'a>(
        model: &Arc<RingModel>,
        items: impl IntoIterator<Item = &'a CohClass>,
    ) -> Result<CohClass> {
        items
            .into_iter()
            .try_fold(Self::zero(model), |acc, x| acc.add(x))
    }
}

impl fmt::Display for CohClass {
    /// Canonical form: basis order, `p/q` coefficients, unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "[{}]", self.model.label(i))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
