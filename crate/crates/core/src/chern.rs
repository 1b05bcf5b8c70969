//! Chern classes and Chern characters on threefolds, Grothendieck-Riemann-Roch
//! along embeddings, complete-intersection tangent classes and the Euler
//! characteristic bookkeeping for a small resolution.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, qf, to_i64, Q};
use crate::ring::parse::{parse_class, parse_model_file};
use crate::ring::{scroll, v, CohClass, CohMap, MapKind, RingModel};

/// A Chern character, read by degree: `ch_k` is the degree-`2k` part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernCharacter(CohClass);

impl ChernCharacter {
    pub fn new(class: CohClass) -> Self {
        ChernCharacter(class)
    }

    pub fn class(&self) -> &CohClass {
        &self.0
    }

    pub fn into_class(self) -> CohClass {
        self.0
    }

    pub fn model(&self) -> &Arc<RingModel> {
        self.0.model()
    }

    pub fn rank(&self) -> Q {
        self.0.rank_part()
    }

    /// `ch_k`, the degree-`2k` component.
    pub fn ch(&self, k: u32) -> CohClass {
        self.0.part(2 * k)
    }

    /// Character of the trivial bundle of rank `r`.
    pub fn trivial(model: &Arc<RingModel>, r: i64) -> Self {
        ChernCharacter(CohClass::unit(model).scale_int(r))
    }

    /// `exp(D)` truncated at the top degree: the character of `O(D)`.
    pub fn line_bundle(d: &CohClass) -> Result<Self> {
        if !d.is_homogeneous_of(2) {
            return Err(Error::Degree(format!("`{d}` is not a divisor class")));
        }
        let model = d.model();
        let mut acc = CohClass::unit(model);
        let mut term = CohClass::unit(model);
        let mut fact = Q::one();
        for k in 1..=model.top_degree() / 2 {
            term = term.mul(d)?;
            fact *= q(k as i64);
            acc = acc.add(&term.scale(&fact.recip()))?;
        }
        Ok(ChernCharacter(acc))
    }

    /// Multiplicativity: the character of the tensor product.
    pub fn tensor(&self, other: &ChernCharacter) -> Result<ChernCharacter> {
        Ok(ChernCharacter(self.0.mul(&other.0)?))
    }

    pub fn add(&self, other: &ChernCharacter) -> Result<ChernCharacter> {
        Ok(ChernCharacter(self.0.add(&other.0)?))
    }

    pub fn scale_int(&self, n: i64) -> ChernCharacter {
        ChernCharacter(self.0.scale_int(n))
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rank and total Chern classes `c1, c2, c3` of degrees 2, 4, 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernClasses {
    pub rank: i64,
    pub c1: CohClass,
    pub c2: CohClass,
    pub c3: CohClass,
}

impl ChernClasses {
    pub fn new(rank: i64, c1: CohClass, c2: CohClass, c3: CohClass) -> Result<Self> {
        for (k, c) in [(1, &c1), (2, &c2), (3, &c3)] {
            if !c.is_homogeneous_of(2 * k) {
                return Err(Error::Degree(format!(
                    "c{k} = `{c}` is not of degree {}",
                    2 * k
                )));
            }
        }
        crate::ring::check_same(c1.model(), c2.model())?;
        crate::ring::check_same(c1.model(), c3.model())?;
        Ok(ChernClasses { rank, c1, c2, c3 })
    }

    pub fn trivial(model: &Arc<RingModel>, rank: i64) -> Self {
        let z = CohClass::zero(model);
        ChernClasses {
            rank,
            c1: z.clone(),
            c2: z.clone(),
            c3: z,
        }
    }
}

/// `ch = r + c1 + (c1^2 - 2c2)/2 + (c1^3 - 3c1c2 + 3c3)/6`.
pub fn ch_from_c(c: &ChernClasses) -> Result<ChernCharacter> {
    let ChernClasses { rank, c1, c2, c3 } = c;
    let model = c1.model();
    let c1sq = c1.mul(c1)?;
    let ch2 = c1sq.sub(&c2.scale_int(2))?.scale(&qf(1, 2));
    let ch3 = c1sq
        .mul(c1)?
        .sub(&c1.mul(c2)?.scale_int(3))?
        .add(&c3.scale_int(3))?
        .scale(&qf(1, 6));
    let total = CohClass::sum(
        model,
        [&CohClass::unit(model).scale_int(*rank), c1, &ch2, &ch3],
    )?;
    Ok(ChernCharacter(total))
}

/// Exact inverse of [`ch_from_c`].
pub fn c_from_ch(ch: &ChernCharacter) -> Result<ChernClasses> {
    let r = ch.rank();
    let rank = to_i64(&r).ok_or_else(|| Error::NonIntegerRank(r.to_string()))?;
    let c1 = ch.ch(1);
    let c1sq = c1.mul(&c1)?;
    let c2 = c1sq.sub(&ch.ch(2).scale_int(2))?.scale(&qf(1, 2));
    let c3 = ch
        .ch(3)
        .scale_int(2)
        .sub(&c1sq.mul(&c1)?.scale(&qf(1, 3)))?
        .add(&c1.mul(&c2)?)?;
    ChernClasses::new(rank, c1, c2, c3)
}

/// Normal bundle of an embedding, split as a sum of line bundles given by
/// their first Chern classes on the subvariety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalBundleData {
    pub summands: Vec<CohClass>,
}

impl NormalBundleData {
    pub fn trivial(sub: &Arc<RingModel>, rank: usize) -> Self {
        NormalBundleData {
            summands: vec![CohClass::zero(sub); rank],
        }
    }

    /// `O(d_1) + ... + O(d_k)` on a curve: each summand is `d_i [pt]`.
    pub fn on_curve(sub: &Arc<RingModel>, degrees: &[i64]) -> Self {
        NormalBundleData {
            summands: degrees
                .iter()
                .map(|&d| CohClass::point(sub).scale_int(d))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// `td(N)^{-1} = prod (1 - e^{-x})/x = prod (1 - x/2 + x^2/6 - x^3/24)`.
    pub fn todd_inverse(&self, sub: &Arc<RingModel>) -> Result<CohClass> {
        let coeffs = [q(1), qf(-1, 2), qf(1, 6), qf(-1, 24)];
        let mut acc = CohClass::unit(sub);
        for x in &self.summands {
            if !x.is_homogeneous_of(2) {
                return Err(Error::Degree(format!(
                    "normal summand `{x}` is not a divisor"
                )));
            }
            let mut factor = CohClass::zero(sub);
            let mut pow = CohClass::unit(sub);
            for c in &coeffs {
                factor = factor.add(&pow.scale(c))?;
                pow = pow.mul(x)?;
            }
            acc = acc.mul(&factor)?;
        }
        Ok(acc)
    }
}

/// `ch(i_* F) = i_*(ch(F) . td(N)^{-1})`.
pub fn grr_push(
    ch_sub: &ChernCharacter,
    normal: &NormalBundleData,
    push: &CohMap,
) -> Result<ChernCharacter> {
    let sub = push.source();
    crate::ring::check_same(sub, ch_sub.model())?;
    let (top_v, top_z) = (push.target().top_degree(), sub.top_degree());
    if top_z > top_v {
        return Err(Error::Codimension {
            rank: normal.rank(),
            codim: 0,
        });
    }
    let codim = ((top_v - top_z) / 2) as usize;
    if normal.rank() != codim || push.shift() != 2 * codim as i32 {
        return Err(Error::Codimension {
            rank: normal.rank(),
            codim,
        });
    }
    let integrand = ch_sub.class().mul(&normal.todd_inverse(sub)?)?;
    Ok(ChernCharacter(push.apply(&integrand)?))
}

/// A subvariety of `V` with its cohomology model and pushforward.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub name: &'static str,
    pub push: CohMap,
    pub normal: NormalBundleData,
}

impl Embedding {
    pub fn sub(&self) -> &Arc<RingModel> {
        self.push.source()
    }

    pub fn push_character(&self, ch_sub: &ChernCharacter) -> Result<ChernCharacter> {
        grr_push(ch_sub, &self.normal, &self.push)
    }
}

fn sub_model(cell: &'static OnceLock<Arc<RingModel>>, text: &str) -> Arc<RingModel> {
    cell.get_or_init(|| Arc::new(parse_model_file(text).expect("static model").remove(0)))
        .clone()
}

/// The exceptional section `e = sigma(B)`, `B = P^1`, with `N = O(-1) + O(-1)`.
pub fn section_curve() -> Embedding {
    static CELL: OnceLock<Arc<RingModel>> = OnceLock::new();
    let b = sub_model(&CELL, "model B topdeg 2\nbasis B 0\nbasis pt 2\n");
    let push = map_to_v(&b, &["[e]", "[pt]"], 4);
    Embedding {
        name: "e",
        normal: NormalBundleData::on_curve(&b, &[-1, -1]),
        push,
    }
}

/// A smooth fiber `A` with the restriction `h = i^*H` (`h^2 = 16`) and trivial
/// normal bundle.
pub fn fiber_surface() -> Embedding {
    static CELL: OnceLock<Arc<RingModel>> = OnceLock::new();
    let a = sub_model(
        &CELL,
        "model Afib topdeg 4\nbasis A 0\nbasis h 2\nbasis pt 4\nmul h h = 16[pt]\n",
    );
    let push = map_to_v(&a, &["[A]", "16[l]", "[pt]"], 2);
    Embedding {
        name: "A",
        normal: NormalBundleData::trivial(&a, 1),
        push,
    }
}

/// A point of `V`.
pub fn point() -> Embedding {
    static CELL: OnceLock<Arc<RingModel>> = OnceLock::new();
    let p = sub_model(&CELL, "model point topdeg 0\nbasis p 0\n");
    let push = map_to_v(&p, &["[pt]"], 6);
    Embedding {
        name: "pt",
        normal: NormalBundleData::trivial(&p, 3),
        push,
    }
}

fn map_to_v(sub: &Arc<RingModel>, images: &[&str], shift: i32) -> CohMap {
    let vm = v();
    let imgs: Vec<CohClass> = images
        .iter()
        .map(|s| parse_class(s, &vm).expect("static image"))
        .collect();
    CohMap::from_images(sub.clone(), vm, &imgs, MapKind::Pushforward, shift)
        .expect("static embedding")
}

/// `ch(i_* L) = [C] + chi(L) [pt]` for a line bundle on a curve of class
/// `a e + b l` in `V` (`K_V = 0`, so only `chi(L)` enters).
pub fn spectral_character(a: i64, b: i64, chi: i64) -> ChernCharacter {
    let m = v();
    ChernCharacter(CohClass::from_ints(&m, &[0, 0, 0, a, b, chi]).expect("rank 6"))
}

/// Same as [`spectral_character`] with `chi = deg - g + 1`.
pub fn spectral_character_from_degree(a: i64, b: i64, deg: i64, genus: i64) -> ChernCharacter {
    spectral_character(a, b, deg - genus + 1)
}

/// The six sheaves whose transforms pin down the Fourier-Mukai matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisSheaf {
    OA,
    Oe,
    Opt,
    OAH,
    OV,
    OVH,
}

impl BasisSheaf {
    pub const ALL: [BasisSheaf; 6] = [
        BasisSheaf::OA,
        BasisSheaf::Oe,
        BasisSheaf::Opt,
        BasisSheaf::OAH,
        BasisSheaf::OV,
        BasisSheaf::OVH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisSheaf::OA => "O_A",
            BasisSheaf::Oe => "O_e",
            BasisSheaf::Opt => "O_pt",
            BasisSheaf::OAH => "O_A(H)",
            BasisSheaf::OV => "O_V",
            BasisSheaf::OVH => "O_V(H)",
        }
    }

    /// `ch(F)` on `V`, computed by GRR for the sheaves supported on subvarieties.
    pub fn ch(self) -> ChernCharacter {
        let r: Result<ChernCharacter> = (|| match self {
            BasisSheaf::OA => {
                let a = fiber_surface();
                a.push_character(&ChernCharacter::trivial(a.sub(), 1))
            }
            BasisSheaf::Oe => {
                let e = section_curve();
                e.push_character(&ChernCharacter::trivial(e.sub(), 1))
            }
            BasisSheaf::Opt => {
                let p = point();
                p.push_character(&ChernCharacter::trivial(p.sub(), 1))
            }
            BasisSheaf::OAH => {
                let a = fiber_surface();
                let h = CohClass::basis(a.sub(), "h")?;
                a.push_character(&ChernCharacter::line_bundle(&h)?)
            }
            BasisSheaf::OV => Ok(ChernCharacter::trivial(&v(), 1)),
            BasisSheaf::OVH => {
                let vm = v();
                let z = CohClass::zero(&vm);
                ch_from_c(&ChernClasses::new(
                    1,
                    CohClass::basis(&vm, "H")?,
                    z.clone(),
                    z,
                )?)
            }
        })();
        r.expect("static basis-sheaf data")
    }

    /// Character of the image under the transform with kernel the pulled-back
    /// Poincare sheaf (landing back on `V`).
    pub fn sq_image_ch(self) -> ChernCharacter {
        let r: Result<ChernCharacter> = (|| match self {
            // 64 skyscrapers
            BasisSheaf::OA => Ok(BasisSheaf::Opt.ch().scale_int(64)),
            BasisSheaf::Oe => Ok(BasisSheaf::OV.ch()),
            BasisSheaf::Opt => Ok(BasisSheaf::OA.ch()),
            // H^0(A,H) (x) O_A(-H), eight copies of O_A(-H)
            BasisSheaf::OAH => {
                let a = fiber_surface();
                let h = CohClass::basis(a.sub(), "h")?;
                let inner = ChernCharacter::line_bundle(&h.neg())?.scale_int(8);
                a.push_character(&inner)
            }
            // 64 copies of sigma_* O_B(-2)
            BasisSheaf::OV => {
                let e = section_curve();
                let o = ChernCharacter::line_bundle(&CohClass::point(e.sub()).scale_int(-2))?;
                Ok(e.push_character(&o)?.scale_int(64))
            }
            // pi^* pi_* O(H) (x) O(-H), rank 8 trivial twisted by -H
            BasisSheaf::OVH => {
                let vm = v();
                let minus_h = CohClass::basis(&vm, "H")?.neg();
                ChernCharacter::trivial(&vm, 8).tensor(&ChernCharacter::line_bundle(&minus_h)?)
            }
        })();
        r.expect("static basis-sheaf data")
    }
}

/// Chern classes of a smooth complete intersection in `P^n`, as coefficients
/// of powers of the hyperplane class `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiChern {
    pub ambient_dim: u32,
    pub degrees: Vec<i64>,
    /// `coeffs[k]` is the coefficient of `h^k` in `c_k`, for `k = 0..=dim`.
    pub coeffs: Vec<Q>,
    /// `h^dim` integrates to the product of the degrees.
    pub h_top: i64,
}

impl CiChern {
    pub fn dim(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn c(&self, k: u32) -> Q {
        self.coeffs.get(k as usize).cloned().unwrap_or_else(Q::zero)
    }

    /// Topological Euler characteristic `∫ c_top`.
    pub fn euler(&self) -> Q {
        self.c(self.dim()) * q(self.h_top)
    }

    pub fn is_calabi_yau(&self) -> bool {
        self.c(1).is_zero()
    }
}

/// `c(T) = (1+h)^{n+1} / prod (1 + d_i h)`, truncated at the dimension.
pub fn ci_tangent_chern(ambient_dim: u32, degrees: &[i64]) -> Result<CiChern> {
    let n = ambient_dim as usize;
    if degrees.len() > n {
        return Err(Error::Invalid(format!(
            "{} equations in P^{ambient_dim}",
            degrees.len()
        )));
    }
    let dim = n - degrees.len();
    let binom = |m: usize, k: usize| -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * (m - i) / (i + 1))
    };
    let mut series: Vec<Q> = (0..=dim)
        .map(|k| Q::from_integer(binom(n + 1, k)))
        .collect();
    for &d in degrees {
        // multiply by 1/(1 + d h) = sum (-d)^k h^k
        let mut next = vec![Q::zero(); dim + 1];
        for (i, s) in series.iter().enumerate() {
            let mut p = Q::one();
            for slot in next.iter_mut().skip(i) {
                *slot += s * &p;
                p *= q(-d);
            }
        }
        series = next;
    }
    Ok(CiChern {
        ambient_dim,
        degrees: degrees.to_vec(),
        coeffs: series,
        h_top: degrees.iter().product(),
    })
}

/// Euler characteristic of the small resolution of a nodal degeneration:
/// each node adds one on degenerating and one more on inserting a `P^1`.
pub fn euler_resolution(chi_smooth: i64, nodes: i64) -> i64 {
    chi_smooth + 2 * nodes
}

/// `c2(T)` of the nodal complete intersection `V_{8,y}` in `P^7`, as a class on
/// `V` via `H^2 = 16e + 16l`. The small resolution may correct this; callers
/// that know better should override it.
pub fn ci_c2_on_v() -> CohClass {
    let ci = ci_tangent_chern(7, &[2, 2, 2, 2]).expect("valid complete intersection");
    let h = CohClass::basis(&v(), "H").expect("H");
    h.pow(2).scale(&ci.c(2))
}

/// `∫ ch . td` on a model.
pub fn riemann_roch(ch: &ChernCharacter, td: &CohClass) -> Result<Q> {
    Ok(ch.class().mul(td)?.integrate())
}

/// `td(S) = 1 + C0` on the ruled surface (no point term since chi(O_S) = 0).
pub fn scroll_todd() -> CohClass {
    parse_class("[S] + [C0]", &scroll()).expect("static")
}

/// The polarization restricted to the ruled surface, `C0 + 4F`.
pub fn scroll_polarization() -> CohClass {
    parse_class("[C0] + 4[F]", &scroll()).expect("static")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::vdual;

    fn cv(s: &str) -> CohClass {
        parse_class(s, &v()).unwrap()
    }

    #[test]
    fn line_bundle_h() {
        let vm = v();
        let z = CohClass::zero(&vm);
        let c = ChernClasses::new(1, cv("[H]"), z.clone(), z).unwrap();
        let ch = ch_from_c(&c).unwrap();
        assert_eq!(ch.class(), &cv("[V] + [H] + 8[e] + 8[l] + 8/3[pt]"));
        assert_eq!(ChernCharacter::line_bundle(&cv("[H]")).unwrap(), ch);
        assert_eq!(c_from_ch(&ch).unwrap(), c);
    }

    #[test]
    fn trivial_bundle_roundtrip() {
        let vm = v();
        let ch = ch_from_c(&ChernClasses::trivial(&vm, 5)).unwrap();
        assert_eq!(ch.class(), &cv("5[V]"));
        assert_eq!(c_from_ch(&ch).unwrap(), ChernClasses::trivial(&vm, 5));
    }

    #[test]
    fn c_from_ch_with_vanishing_c1() {
        // c1 = 0: c2 = -ch2 and c3 = 2 ch3
        let ch = ChernCharacter::new(cv("3[V] + 2[e] - 5[l] + 7/2[pt]"));
        let c = c_from_ch(&ch).unwrap();
        assert!(c.c1.is_zero());
        assert_eq!(c.c2, cv("-2[e] + 5[l]"));
        assert_eq!(c.c3, cv("7[pt]"));
        assert_eq!(ch_from_c(&c).unwrap(), ch);
    }

    #[test]
    fn non_integer_rank() {
        let ch = ChernCharacter::new(cv("1/2[V]"));
        assert!(matches!(c_from_ch(&ch), Err(Error::NonIntegerRank(_))));
    }

    #[test]
    fn degree_mismatch() {
        let vm = v();
        let z = CohClass::zero(&vm);
        assert!(matches!(
            ChernClasses::new(1, cv("[e]"), z.clone(), z),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn tensor_laws() {
        let h = ChernCharacter::line_bundle(&cv("[H]")).unwrap();
        let mh = ChernCharacter::line_bundle(&cv("-[H]")).unwrap();
        assert_eq!(h.tensor(&mh).unwrap().class(), &CohClass::unit(&v()));
        let one = ChernCharacter::trivial(&v(), 1);
        assert_eq!(h.tensor(&one).unwrap(), h);
        let eight = ChernCharacter::trivial(&v(), 8).tensor(&mh).unwrap();
        assert_eq!(eight.class(), &cv("8[V] - 8[H] + 64[e] + 64[l] - 64/3[pt]"));
        assert!(h.tensor(&ChernCharacter::trivial(&vdual(), 1)).is_err());
    }

    #[test]
    fn grr_examples() {
        assert_eq!(BasisSheaf::OA.ch().class(), &cv("[A]"));
        assert_eq!(BasisSheaf::Oe.ch().class(), &cv("[e] + [pt]"));
        assert_eq!(BasisSheaf::Opt.ch().class(), &cv("[pt]"));
        assert_eq!(BasisSheaf::OAH.ch().class(), &cv("[A] + 16[l] + 8[pt]"));
        let e = section_curve();
        let ob = ChernCharacter::line_bundle(&CohClass::point(e.sub()).scale_int(-2)).unwrap();
        assert_eq!(e.push_character(&ob).unwrap().class(), &cv("[e] - [pt]"));
    }

    #[test]
    fn todd_inverse_on_section() {
        let e = section_curve();
        let td = e.normal.todd_inverse(e.sub()).unwrap();
        assert_eq!(td, parse_class("[B] + [pt]", e.sub()).unwrap());
    }

    #[test]
    fn grr_rejects_wrong_codimension() {
        let e = section_curve();
        let bad = NormalBundleData::trivial(e.sub(), 1);
        let one = ChernCharacter::trivial(e.sub(), 1);
        assert!(matches!(
            grr_push(&one, &bad, &e.push),
            Err(Error::Codimension { rank: 1, codim: 2 })
        ));
    }

    #[test]
    fn grr_with_trivial_normal_is_plain_pushforward() {
        let a = fiber_surface();
        let x = ChernCharacter::new(parse_class("2[A] - 3[h] + 5/2[pt]", a.sub()).unwrap());
        let pushed = a.push_character(&x).unwrap();
        assert_eq!(pushed.class(), &a.push.apply(x.class()).unwrap());
    }

    #[test]
    fn spectral_characters() {
        assert_eq!(spectral_character(1, 0, 1), BasisSheaf::Oe.ch());
        assert_eq!(spectral_character(1, 0, -1).class(), &cv("[e] - [pt]"));
        assert!(spectral_character(0, 0, 0).class().is_zero());
        assert_eq!(
            spectral_character_from_degree(2, 3, 5, 2),
            spectral_character(2, 3, 4)
        );
        let s = spectral_character(3, -2, 9);
        assert!(s.ch(0).is_zero() && s.ch(1).is_zero());
    }

    #[test]
    fn complete_intersections() {
        let v8 = ci_tangent_chern(7, &[2, 2, 2, 2]).unwrap();
        assert_eq!(v8.coeffs, vec![q(1), q(0), q(4), q(-8)]);
        assert_eq!(v8.euler(), q(-128));
        assert!(v8.is_calabi_yau());
        let quintic = ci_tangent_chern(4, &[5]).unwrap();
        assert_eq!(quintic.coeffs, vec![q(1), q(0), q(10), q(-40)]);
        assert_eq!(quintic.euler(), q(-200));
        let p3 = ci_tangent_chern(3, &[]).unwrap();
        assert_eq!(p3.c(1), q(4));
        assert_eq!(p3.euler(), q(4));
        assert!(!p3.is_calabi_yau());
        assert!(ci_tangent_chern(1, &[2, 2]).is_err());
    }

    #[test]
    fn euler_of_resolution() {
        assert_eq!(euler_resolution(-128, 64), 0);
        assert_eq!(euler_resolution(-200, 0), -200);
        assert_eq!(euler_resolution(17, 0), 17);
    }

    #[test]
    fn c2_default_on_v() {
        assert_eq!(ci_c2_on_v(), cv("64[e] + 64[l]"));
    }

    #[test]
    fn scroll_riemann_roch() {
        let h = scroll_polarization();
        let ch = ChernCharacter::line_bundle(&h).unwrap();
        assert_eq!(
            ch.class(),
            &parse_class("[S] + [C0] + 4[F] + 4[pt]", &scroll()).unwrap()
        );
        assert_eq!(riemann_roch(&ch, &scroll_todd()).unwrap(), q(8));
    }
}
