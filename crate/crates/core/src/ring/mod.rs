//! Graded commutative intersection rings given by a finite basis and a full
//! multiplication table, together with exact classes and linear maps.

mod builtin;
mod class;
mod map;
pub mod parse;
mod registry;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Q;

pub use builtin::{builtin_model, exe, scroll, v, vdual, BUILTIN_NAMES};
pub use class::CohClass;
pub use map::{CohMap, MapKind};
pub use registry::ModelRegistry;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    /// Real cohomological degree: 0, 2, 4 or 6.
    pub degree: u32,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: u32) -> Self {
        BasisElement {
            label: label.into(),
            degree,
        }
    }
}

/// A finite-rank graded commutative ring with a distinguished point class.
///
/// Products are stored densely: `table[i * n + j]` is the coefficient vector
/// of `basis[i] * basis[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingModel {
    name: String,
    basis: Vec<BasisElement>,
    table: Vec<Vec<Q>>,
    top_degree: u32,
    unit: usize,
    point: usize,
}

impl RingModel {
    /// Builds a model from the products of unordered basis pairs.
    ///
    /// Pairs that are not listed multiply to zero, except that products with
    /// the unit default to the identity. Grading, label uniqueness and the
    /// unit/point structure are validated here; the ring axioms are checked
    /// separately by [`RingModel::associativity_violations`] and friends so a
    /// broken table can still be loaded and diagnosed.
    pub fn new(
        name: impl Into<String>,
        top_degree: u32,
        basis: Vec<BasisElement>,
        products: Vec<(usize, usize, Vec<Q>)>,
    ) -> Result<Self> {
        let name = name.into();
        let n = basis.len();
        let invalid = |msg: String| Error::InvalidModel(format!("{name}: {msg}"));

        if n == 0 {
            return Err(invalid("empty basis".into()));
        }
        if !top_degree.is_multiple_of(2) {
            return Err(invalid(format!("odd top degree {top_degree}")));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.label.is_empty() || b.label.contains(|c: char| c == ']' || c.is_whitespace()) {
                return Err(invalid(format!("bad label `{}`", b.label)));
            }
            if b.degree % 2 != 0 || b.degree > top_degree {
                return Err(invalid(format!(
                    "label `{}` has degree {}",
                    b.label, b.degree
                )));
            }
            if basis[..i].iter().any(|o| o.label == b.label) {
                return Err(invalid(format!("duplicate label `{}`", b.label)));
            }
        }
        let units: Vec<usize> = (0..n).filter(|&i| basis[i].degree == 0).collect();
        let points: Vec<usize> = (0..n).filter(|&i| basis[i].degree == top_degree).collect();
        if units.len() != 1 {
            return Err(invalid(format!("{} elements of degree 0", units.len())));
        }
        if points.len() != 1 {
            return Err(invalid(format!("{} elements of top degree", points.len())));
        }
        let (unit, point) = (units[0], points[0]);

        let mut table: Vec<Option<Vec<Q>>> = vec![None; n * n];
        for (i, j, coeffs) in products {
            if i >= n || j >= n || coeffs.len() != n {
                return Err(invalid(format!("malformed product entry ({i},{j})")));
            }
            let deg = basis[i].degree + basis[j].degree;
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() && basis[k].degree != deg {
                    return Err(invalid(format!(
                        "{}*{} has a component on `{}` of degree {} (expected {deg})",
                        basis[i].label, basis[j].label, basis[k].label, basis[k].degree
                    )));
                }
            }
            if table[i * n + j].is_some() {
                return Err(invalid(format!(
                    "product {}*{} given twice",
                    basis[i].label, basis[j].label
                )));
            }
            table[i * n + j] = Some(coeffs.clone());
            table[j * n + i] = Some(coeffs);
        }
        for j in 0..n {
            if table[unit * n + j].is_none() {
                let mut e = vec![Q::zero(); n];
                e[j] = Q::from_integer(1.into());
                table[unit * n + j] = Some(e.clone());
                table[j * n + unit] = Some(e);
            }
        }
        let table = table
            .into_iter()
            .map(|e| e.unwrap_or_else(|| vec![Q::zero(); n]))
            .collect();

        Ok(RingModel {
            name,
            basis,
            table,
            top_degree,
            unit,
            point,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn point_index(&self) -> usize {
        self.point
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    /// Coefficient vector of `basis[i] * basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &[Q] {
        &self.table[i * self.rank() + j]
    }

    pub(crate) fn mul_coeffs(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.rank();
        let mut out = vec![Q::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Basis triples `(i, j, k)` where `(b_i b_j) b_k != b_i (b_j b_k)`.
    pub fn associativity_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.rank();
        let e = |i: usize| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::from_integer(1.into());
            v
        };
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coeffs(self.product(i, j), &e(k));
                    let right = self.mul_coeffs(&e(i), self.product(j, k));
                    if left != right {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    pub fn commutativity_violations(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.product(i, j) != self.product(j, i))
            .collect()
    }

    /// Basis elements `x` with `1 * x != x`.
    pub fn unit_violations(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&j| {
                self.product(self.unit, j).iter().enumerate().any(|(k, c)| {
                    *c != if k == j {
                        Q::from_integer(1.into())
                    } else {
                        Q::zero()
                    }
                })
            })
            .collect()
    }

    /// Pairing between degree `d` and degree `top - d`, read off the point class.
    /// Rows are indexed by degree-`d` elements, columns by the complementary ones.
    pub fn pairing_matrix(&self, d: u32) -> (Vec<usize>, Vec<usize>, QMatrix) {
        let left: Vec<usize> = (0..self.rank()).filter(|&i| self.degree(i) == d).collect();
        let right: Vec<usize> = (0..self.rank())
            .filter(|&i| d <= self.top_degree && self.degree(i) == self.top_degree - d)
            .collect();
        let mut m = QMatrix::zeros(left.len(), right.len());
        for (a, &i) in left.iter().enumerate() {
            for (b, &j) in right.iter().enumerate() {
                m[(a, b)] = self.product(i, j)[self.point].clone();
            }
        }
        (left, right, m)
    }

    /// Degrees whose pairing matrix is not square of full rank.
    pub fn poincare_violations(&self) -> Vec<u32> {
        (0..=self.top_degree)
            .step_by(2)
            .filter(|&d| {
                let (l, r, m) = self.pairing_matrix(d);
                l.len() != r.len() || m.rank() != l.len()
            })
            .collect()
    }

    /// True when every ring axiom holds on the basis.
    pub fn is_well_formed(&self) -> bool {
        self.associativity_violations().is_empty()
            && self.commutativity_violations().is_empty()
            && self.unit_violations().is_empty()
            && self.poincare_violations().is_empty()
    }

    /// Serialises the model in the line-oriented model file format.
    pub fn to_model_file(self: &Arc<Self>) -> String {
        let mut out = format!("model {} topdeg {}\n", self.name, self.top_degree);
        for b in &self.basis {
            out.push_str(&format!("basis {} {}\n", b.label, b.degree));
        }
        let n = self.rank();
        for i in 0..n {
            for j in i..n {
                let c = self.product(i, j);
                if c.iter().any(|x| !x.is_zero()) {
                    let class = CohClass::new(self.clone(), c.to_vec()).expect("table row length");
                    out.push_str(&format!(
                        "mul {} {} = {}\n",
                        self.label(i),
                        self.label(j),
                        class
                    ));
                }
            }
        }
        out
    }
}

impl fmt::Display for RingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.basis.iter().map(|b| b.label.as_str()).collect();
        write!(
            f,
            "{} (topdeg {}; {})",
            self.name,
            self.top_degree,
            labels.join(", ")
        )
    }
}

pub(crate) fn same_model(a: &Arc<RingModel>, b: &Arc<RingModel>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same(a: &Arc<RingModel>, b: &Arc<RingModel>) -> Result<()> {
    if same_model(a, b) {
        Ok(())
    } else {
        Err(Error::ModelMismatch {
            expected: a.name().to_string(),
            found: b.name().to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn toy(products: Vec<(usize, usize, Vec<Q>)>) -> Result<RingModel> {
        RingModel::new(
            "toy",
            2,
            vec![BasisElement::new("1", 0), BasisElement::new("p", 2)],
            products,
        )
    }

    #[test]
    fn unit_products_are_implicit() {
        let m = toy(vec![]).unwrap();
        assert_eq!(m.product(0, 1), &[q(0), q(1)]);
        assert!(m.is_well_formed());
    }

    #[test]
    fn rejects_inhomogeneous_product() {
        let err = RingModel::new(
            "bad",
            4,
            vec![
                BasisElement::new("1", 0),
                BasisElement::new("h", 2),
                BasisElement::new("p", 4),
            ],
            vec![(1, 1, vec![q(0), q(1), q(0)])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidModel(_)));
    }

    #[test]
    fn rejects_duplicate_labels_and_missing_point() {
        let dup = RingModel::new(
            "dup",
            2,
            vec![BasisElement::new("x", 0), BasisElement::new("x", 2)],
            vec![],
        );
        assert!(dup.is_err());
        let nopt = RingModel::new("nopt", 4, vec![BasisElement::new("1", 0)], vec![]);
        assert!(nopt.is_err());
    }

    #[test]
    fn detects_broken_unit() {
        let m = toy(vec![(0, 1, vec![q(0), q(2)])]).unwrap();
        assert_eq!(m.unit_violations(), vec![1]);
        assert!(!m.is_well_formed());
    }
}
