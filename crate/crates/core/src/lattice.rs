//! The Neron-Severi lattice of `E x E` in the basis (horizontal fiber `E`,
//! vertical fiber `F`, diagonal `Delta`), the SL(2,Z) action on it, slope
//! curves and the effective cone.
//!
//! The intersection form has Gram matrix `[[0,1,1],[1,0,1],[1,1,0]]`, so
//! `v.v = 2(xy + xz + yz)` and cone generators are the primitive points of the
//! conic `xy + xz + yz = 0` on the side `x + y + z > 0`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{q, Q};

pub const GRAM: [[i64; 3]; 3] = [[0, 1, 1], [1, 0, 1], [1, 1, 0]];

/// `x E + y F + z Delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NsClass {
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

impl NsClass {
    pub fn new(x: Q, y: Q, z: Q) -> Self {
        NsClass { x, y, z }
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(q(x), q(y), q(z))
    }

    pub fn from_prim(p: Prim) -> Self {
        Self::ints(p[0], p[1], p[2])
    }

    pub fn coords(&self) -> [&Q; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl fmt::Display for NsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

pub fn ns_intersect(u: &NsClass, v: &NsClass) -> Q {
    let (a, b) = (u.coords(), v.coords());
    let mut s = Q::zero();
    for i in 0..3 {
        for j in 0..3 {
            if GRAM[i][j] != 0 {
                s += a[i] * b[j] * q(GRAM[i][j]);
            }
        }
    }
    s
}

/// Integer triple used for enumeration.
pub type Prim = [i64; 3];

fn dot(u: &Prim, v: &Prim) -> i128 {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| u[i] as i128 * GRAM[i][j] as i128 * v[j] as i128)
        .sum()
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Invalid(format!("lattice entry {x} exceeds 64 bits")))
}

fn on_conic(p: &Prim) -> bool {
    p[0] * p[1] + p[0] * p[2] + p[1] * p[2] == 0
}

/// Divides out the content and flips sign so that `x + y + z > 0`.
/// Returns `None` for the zero vector.
pub fn normalize(p: Prim) -> Option<Prim> {
    let g = p[0].gcd(&p[1]).gcd(&p[2]);
    if g == 0 {
        return None;
    }
    let mut r = [p[0] / g, p[1] / g, p[2] / g];
    let s: i64 = r.iter().sum();
    if s < 0 || (s == 0 && r.iter().find(|c| **c != 0).is_some_and(|c| *c < 0)) {
        r = [-r[0], -r[1], -r[2]];
    }
    Some(r)
}

fn height(p: &Prim) -> i64 {
    p.iter().map(|c| c.abs()).max().unwrap_or(0)
}

/// An element `(a, b, c, d)` of SL(2,Z) acting by `(x, y) -> (ax + cy, bx + dy)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sl2Element {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2Element {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Invalid(format!(
                "({a},{b},{c},{d}) has determinant {}",
                a * d - b * c
            )));
        }
        Ok(Sl2Element { a, b, c, d })
    }

    pub const IDENTITY: Sl2Element = Sl2Element {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    /// `(x, y) -> (y, -x)`
    pub const S: Sl2Element = Sl2Element {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    /// `(x, y) -> (x, x + y)`
    pub const T: Sl2Element = Sl2Element {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };

    /// Composition: first `other`, then `self`.
    pub fn compose(&self, o: &Sl2Element) -> Sl2Element {
        // matrices [[a, c], [b, d]] acting on column vectors (x, y)
        Sl2Element {
            a: self.a * o.a + self.c * o.b,
            b: self.b * o.a + self.d * o.b,
            c: self.a * o.c + self.c * o.d,
            d: self.b * o.c + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Sl2Element {
        Sl2Element {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

impl fmt::Display for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// `E_{a,b} = a(a-b) E + b(b-a) F + ab Delta`, the image of `x -> (ax, bx)`.
pub fn slope_curve(a: i64, b: i64) -> Result<NsClass> {
    if a.gcd(&b) != 1 {
        return Err(Error::Invalid(format!("({a}, {b}) is not coprime")));
    }
    Ok(NsClass::from_prim(slope_prim(a, b)))
}

fn slope_prim(a: i64, b: i64) -> Prim {
    [a * (a - b), b * (b - a), a * b]
}

/// Matrix of the induced action on NS, columns the images of `E, F, Delta`.
pub fn induced_action(g: &Sl2Element) -> Result<[[i64; 3]; 3]> {
    let Sl2Element { a, b, c, d } = *g;
    Sl2Element::new(a, b, c, d)?;
    let [a, b, c, d] = [a, b, c, d].map(i128::from);
    let m = [
        [a * (a - b), c * (c - d), (a + c) * (a + c - b - d)],
        [b * (b - a), d * (d - c), (b + d) * (b + d - a - c)],
        [a * b, c * d, (a + c) * (b + d)],
    ];
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = narrow(m[i][j])?;
        }
    }
    Ok(out)
}

fn checked_dot3(x: [i64; 3], y: [i64; 3]) -> Result<i64> {
    let mut acc: i128 = 0;
    for k in 0..3 {
        acc = (x[k] as i128)
            .checked_mul(y[k] as i128)
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(|| Error::Invalid("lattice arithmetic overflow".into()))?;
    }
    narrow(acc)
}

pub fn apply_action(m: &[[i64; 3]; 3], p: &Prim) -> Result<Prim> {
    let mut out = [0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = checked_dot3(m[i], *p)?;
    }
    Ok(out)
}

pub fn mat_mul3(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> Result<[[i64; 3]; 3]> {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = checked_dot3(a[i], [b[0][j], b[1][j], b[2][j]])?;
        }
    }
    Ok(out)
}

/// True when `M^T G M = G`.
pub fn preserves_form(m: &[[i64; 3]; 3]) -> bool {
    let cols: Vec<Prim> = (0..3).map(|j| [m[0][j], m[1][j], m[2][j]]).collect();
    let pair = |u: &Prim, v: &Prim| -> Option<i128> {
        let mut acc: i128 = 0;
        for i in 0..3 {
            for j in 0..3 {
                if GRAM[i][j] != 0 {
                    acc = acc.checked_add((u[i] as i128).checked_mul(v[j] as i128)?)?;
                }
            }
        }
        Some(acc)
    };
    (0..3).all(|i| (0..3).all(|j| pair(&cols[i], &cols[j]) == Some(GRAM[i][j] as i128)))
}

/// Primitive points of the conic with all coordinates bounded by `height`,
/// normalised with `x + y + z > 0` and sorted.
///
/// Points come from the pencil of lines through `[0:0:1]`: slope `t = p/r`
/// meets the conic again at `[-r(p+r) : -p(p+r) : pr]`, plus the two points
/// `[1:0:0]` and `[0:1:0]` at infinity. Every emitted point is checked
/// against the conic equation.
pub fn cone_generators(height_bound: i64) -> Result<Vec<Prim>> {
    if height_bound < 1 {
        return Err(Error::Invalid(format!("height {height_bound} < 1")));
    }
    let mut out = BTreeSet::new();
    let mut push = |p: Prim| {
        assert!(on_conic(&p), "parametrisation left the conic at {p:?}");
        if let Some(n) = normalize(p) {
            if height(&n) <= height_bound {
                out.insert(n);
            }
        }
    };
    push([1, 0, 0]);
    push([0, 1, 0]);
    // height of the image is at least max(|p|, |r|), see slope_curve
    for r in 1..=height_bound {
        for p in -height_bound..=height_bound {
            if p == 0 || p.gcd(&r) != 1 {
                continue;
            }
            push([-r * (p + r), -p * (p + r), p * r]);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub height: i64,
    pub targets: usize,
    /// Reached targets with an SL(2,Z) element carrying `E` onto them.
    pub reached: Vec<(Prim, Sl2Element)>,
    pub missed: Vec<Prim>,
}

/// Breadth-first search from `E` under `S^{±1}, T^{±1}`, over group elements
/// whose first column `(a, b)` stays in the box `|a|, |b| <= height`.
///
/// `E_{a,b}` has height at least `max(|a|, |b|)`, and the Euclidean descent
/// from `(a, b)` to `(1, 0)` never leaves the box, so every generator of
/// height `<= height` is reachable inside it.
pub fn orbit_transitivity(height_bound: i64) -> Result<OrbitReport> {
    let targets = cone_generators(height_bound)?;
    let e = [1, 0, 0];
    let gens = [
        Sl2Element::S,
        Sl2Element::S.inverse(),
        Sl2Element::T,
        Sl2Element::T.inverse(),
    ];
    let mut seen: HashMap<(i64, i64), Sl2Element> = HashMap::new();
    let mut reached: HashMap<Prim, Sl2Element> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert((1, 0), Sl2Element::IDENTITY);
    queue.push_back(Sl2Element::IDENTITY);
    while let Some(g) = queue.pop_front() {
        let img = apply_action(&induced_action(&g)?, &e)?;
        if let Some(n) = normalize(img) {
            reached.entry(n).or_insert(g);
        }
        for s in &gens {
            let h = s.compose(&g);
            if h.a.abs() > height_bound || h.b.abs() > height_bound {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(v) = seen.entry((h.a, h.b)) {
                v.insert(h);
                queue.push_back(h);
            }
        }
    }
    let mut hit = Vec::new();
    let mut missed = Vec::new();
    for t in &targets {
        match reached.get(t) {
            Some(g) => hit.push((*t, *g)),
            None => missed.push(*t),
        }
    }
    Ok(OrbitReport {
        height: height_bound,
        targets: targets.len(),
        reached: hit,
        missed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchwarzReport {
    pub height: i64,
    pub classes: usize,
    pub pairs: u64,
    /// `(D, H)` with `(D.H)^2 < (D.D)(H.H)`.
    pub violations: Vec<(Prim, Prim)>,
}

/// Effective classes used by [`reverse_schwarz_check`]: the cone generators
/// of height `<= height` and all sums `g1 + g2` and `2 g1 + g2` of them.
pub fn effective_sample(height_bound: i64) -> Result<Vec<Prim>> {
    let gens = cone_generators(height_bound)?;
    let mut out = BTreeSet::new();
    for g in &gens {
        out.insert(*g);
        for h in &gens {
            out.insert([g[0] + h[0], g[1] + h[1], g[2] + h[2]]);
            out.insert([2 * g[0] + h[0], 2 * g[1] + h[1], 2 * g[2] + h[2]]);
        }
    }
    Ok(out.into_iter().collect())
}

/// Checks `(D.H)^2 >= (D.D)(H.H)` over all pairs of [`effective_sample`].
pub fn reverse_schwarz_check(height_bound: i64) -> Result<SchwarzReport> {
    let sample = effective_sample(height_bound)?;
    let norms: Vec<i128> = sample.iter().map(|p| dot(p, p)).collect();
    let mut violations = Vec::new();
    let mut pairs = 0u64;
    for i in 0..sample.len() {
        for j in i..sample.len() {
            pairs += 1;
            let dh = dot(&sample[i], &sample[j]);
            if dh * dh < norms[i] * norms[j] {
                violations.push((sample[i], sample[j]));
            }
        }
    }
    Ok(SchwarzReport {
        height: height_bound,
        classes: sample.len(),
        pairs,
        violations,
    })
}
