//! Bounded exhaustive search over spectral data against the weak heterotic
//! constraints on `V^`.
//!
//! A candidate is a line bundle with Euler characteristic `chi` on a curve of
//! class `a[e] + b[l]` in `V`, optionally followed by a twist by `x H^ + y A^`
//! on `V^`. Its transform only touches the verified Fourier-Mukai columns, and
//! untwisted it has the closed form
//!
//! ```text
//! ch = a + (chi - a) A^ - b E^,   c3 = 0.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::chern::{c_from_ch, spectral_character, ChernCharacter, ChernClasses};
use crate::error::{Error, Result};
use crate::fm::{builtin_sp, FmMatrix};
use crate::isogeny::phi_pullback;
use crate::rational::{q, Q};
use crate::report::Node;
use crate::ring::{vdual, CohClass};

/// Inclusive integer range `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn new(lo: i64, hi: i64) -> Self {
        Range { lo, hi }
    }

    pub fn point(x: i64) -> Self {
        Range { lo: x, hi: x }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo) as u64 + 1
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl std::str::FromStr for Range {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("range `{s}` is not `lo:hi`"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        Ok(Range {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub a: Range,
    pub b: Range,
    pub chi: Range,
    /// Ranges for the twist coefficients of `H^` and `A^`.
    pub twist: Option<(Range, Range)>,
}

impl SearchBounds {
    /// `a = rank`, `b in [0,64]`, `chi in [-64,64]`, untwisted.
    pub fn default_for_rank(rank: i64) -> Self {
        SearchBounds {
            a: Range::point(rank),
            b: Range::new(0, 64),
            chi: Range::new(-64, 64),
            twist: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let mut all = vec![("a", self.a), ("b", self.b), ("chi", self.chi)];
        if let Some((x, y)) = self.twist {
            all.push(("twist-H", x));
            all.push(("twist-A", y));
        }
        match all.iter().find(|(_, r)| r.is_empty()) {
            Some((name, r)) => Err(Error::Empty(format!("{name} range {r}"))),
            None => Ok(()),
        }
    }

    pub fn candidates(&self) -> Vec<SpectralCandidate> {
        let twists: Vec<Option<(i64, i64)>> = match self.twist {
            None => vec![None],
            Some((x, y)) => x
                .iter()
                .flat_map(|i| y.iter().map(move |j| Some((i, j))))
                .collect(),
        };
        let mut out = Vec::new();
        for a in self.a.iter() {
            for b in self.b.iter() {
                for chi in self.chi.iter() {
                    for t in &twists {
                        out.push(SpectralCandidate {
                            a,
                            b,
                            chi,
                            twist: *t,
                        });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnomalyMode {
    RequireEffective,
    Ignore,
}

/// Which boundary of the curve cone `a[e^] + b[l^]` counts as effective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeConvention {
    /// `a > 0` and `b > 0`.
    Open,
    /// `a, b >= 0`.
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeteroticConstraints {
    pub rank: i64,
    pub c1_target: CohClass,
    pub c3_target: Q,
    pub c2_tangent: CohClass,
    pub anomaly_mode: AnomalyMode,
    pub anomaly_cone: ConeConvention,
    /// Require the spectral curve class on `V` to be effective: `a > 0, b >= 0`.
    pub require_effective_curve: bool,
}

impl HeteroticConstraints {
    /// Rank `r`, `c1 = 0`, `c3 = 6`, default tangent class, anomaly enforced.
    pub fn weak_heterotic(rank: i64) -> Self {
        HeteroticConstraints {
            rank,
            c1_target: CohClass::zero(&vdual()),
            c3_target: q(6),
            c2_tangent: default_c2_tangent(),
            anomaly_mode: AnomalyMode::RequireEffective,
            anomaly_cone: ConeConvention::Open,
            require_effective_curve: true,
        }
    }
}

/// `c2(T_{V^})` taken as the class pulling back to the complete-intersection
/// value `4H^2 = 64e + 64l` on `V` (the isogeny is etale). This gives
/// `e^ + 8E^`. It ignores any correction from the small resolution and is
/// meant to be overridden when a better value is known.
pub fn default_c2_tangent() -> CohClass {
    let pull = phi_pullback();
    let inv = pull.matrix().inverse().expect("pullback is invertible");
    let target = crate::chern::ci_c2_on_v();
    CohClass::new(vdual(), inv.mul_vec(target.coeffs()).expect("6x6")).expect("rank 6")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpectralCandidate {
    pub a: i64,
    pub b: i64,
    pub chi: i64,
    pub twist: Option<(i64, i64)>,
}

impl SpectralCandidate {
    pub fn untwisted(a: i64, b: i64, chi: i64) -> Self {
        SpectralCandidate {
            a,
            b,
            chi,
            twist: None,
        }
    }
}

impl PartialOrd for SpectralCandidate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SpectralCandidate {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.a, self.b, self.chi, self.twist).cmp(&(o.a, o.b, o.chi, o.twist))
    }
}

impl fmt::Display for SpectralCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            None => write!(f, "({}, {}, {})", self.a, self.b, self.chi),
            Some((x, y)) => write!(f, "({}, {}, {}; {}, {})", self.a, self.b, self.chi, x, y),
        }
    }
}

/// The transform of a candidate, through the verified columns only.
pub fn fm_of_candidate(c: &SpectralCandidate) -> Result<ChernCharacter> {
    fm_of_candidate_with(&builtin_sp(), c)
}

fn fm_of_candidate_with(sp: &FmMatrix, c: &SpectralCandidate) -> Result<ChernCharacter> {
    let img = sp.apply_verified(&spectral_character(c.a, c.b, c.chi))?;
    match c.twist {
        None => Ok(img),
        Some((x, y)) => {
            let m = vdual();
            let d = CohClass::basis(&m, "H^")?
                .scale_int(x)
                .add(&CohClass::basis(&m, "A^")?.scale_int(y))?;
            img.tensor(&ChernCharacter::line_bundle(&d)?)
        }
    }
}

/// Constraints in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constraint {
    Effective,
    Rank,
    C1,
    C3,
    Anomaly,
}

impl Constraint {
    pub const ALL: [Constraint; 5] = [
        Constraint::Effective,
        Constraint::Rank,
        Constraint::C1,
        Constraint::C3,
        Constraint::Anomaly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constraint::Effective => "effective",
            Constraint::Rank => "rank",
            Constraint::C1 => "c1",
            Constraint::C3 => "c3",
            Constraint::Anomaly => "anomaly",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintResult {
    pub constraint: Constraint,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub candidate: SpectralCandidate,
    pub character: ChernCharacter,
    pub classes: ChernClasses,
    pub results: Vec<ConstraintResult>,
}

impl Verdict {
    pub fn feasible(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<Constraint> {
        self.results.iter().find(|r| !r.pass).map(|r| r.constraint)
    }

    pub fn passes(&self, c: Constraint) -> bool {
        self.results.iter().any(|r| r.constraint == c && r.pass)
    }
}

fn in_cone(x: &Q, y: &Q, conv: ConeConvention) -> bool {
    match conv {
        ConeConvention::Open => x.is_positive() && y.is_positive(),
        ConeConvention::Closed => !x.is_negative() && !y.is_negative(),
    }
}

/// Checks every constraint on one candidate.
pub fn check(c: &SpectralCandidate, k: &HeteroticConstraints) -> Result<Verdict> {
    let ch = fm_of_candidate(c)?;
    check_character(c, ch, k)
}

fn check_character(
    c: &SpectralCandidate,
    ch: ChernCharacter,
    k: &HeteroticConstraints,
) -> Result<Verdict> {
    let rank = ch.rank();
    let classes = if crate::rational::is_integer(&rank) {
        c_from_ch(&ch)?
    } else {
        return Err(Error::NonIntegerRank(rank.to_string()));
    };
    let mut results = Vec::with_capacity(5);

    let effective = !k.require_effective_curve || (c.a > 0 && c.b >= 0);
    results.push(ConstraintResult {
        constraint: Constraint::Effective,
        pass: effective,
        detail: format!("curve {}[e] + {}[l]", c.a, c.b),
    });
    results.push(ConstraintResult {
        constraint: Constraint::Rank,
        pass: rank == q(k.rank),
        detail: format!("ch0 = {rank}"),
    });
    results.push(ConstraintResult {
        constraint: Constraint::C1,
        pass: classes.c1 == k.c1_target,
        detail: format!("c1 = {}", classes.c1),
    });
    let c3 = classes.c3.integrate();
    results.push(ConstraintResult {
        constraint: Constraint::C3,
        pass: c3 == k.c3_target,
        detail: format!("c3 = {c3}"),
    });
    let anomaly = k.c2_tangent.sub(&classes.c2)?;
    let pass = match k.anomaly_mode {
        AnomalyMode::Ignore => true,
        AnomalyMode::RequireEffective => {
            let zero = Q::zero();
            let x = anomaly.coeff("e^").unwrap_or(&zero);
            let y = anomaly.coeff("E^").unwrap_or(&zero);
            anomaly.is_homogeneous_of(4) && in_cone(x, y, k.anomaly_cone)
        }
    };
    results.push(ConstraintResult {
        constraint: Constraint::Anomaly,
        pass,
        detail: format!("c2(T) - c2 = {anomaly}"),
    });
    Ok(Verdict {
        candidate: *c,
        character: ch,
        classes,
        results,
    })
}

/// Mergeable scan totals. Merging is associative and commutative, so serial
/// and parallel scans agree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub total: u64,
    /// Candidates rejected, keyed by the first constraint they fail.
    pub rejected: BTreeMap<Constraint, u64>,
    pub feasible: Vec<SpectralCandidate>,
    /// Candidates whose `c3` is nonzero.
    pub c3_nonzero: u64,
    /// Candidates meeting the `c1` target whose `c3` is nonzero.
    pub c3_nonzero_given_c1: u64,
}

impl Tally {
    fn add(mut self, v: &Verdict) -> Self {
        self.total += 1;
        match v.first_failure() {
            Some(c) => *self.rejected.entry(c).or_insert(0) += 1,
            None => self.feasible.push(v.candidate),
        }
        if !v.classes.c3.is_zero() {
            self.c3_nonzero += 1;
            if v.passes(Constraint::C1) {
                self.c3_nonzero_given_c1 += 1;
            }
        }
        self
    }

    pub fn merge(mut self, o: Tally) -> Tally {
        self.total += o.total;
        for (c, n) in o.rejected {
            *self.rejected.entry(c).or_insert(0) += n;
        }
        self.feasible.extend(o.feasible);
        self.feasible.sort();
        self.c3_nonzero += o.c3_nonzero;
        self.c3_nonzero_given_c1 += o.c3_nonzero_given_c1;
        self
    }
}

/// Evaluates `candidates` on `workers` threads (1 = serial).
pub fn scan(
    candidates: &[SpectralCandidate],
    k: &HeteroticConstraints,
    workers: usize,
) -> Result<Tally> {
    let sp = builtin_sp();
    let eval = |c: &SpectralCandidate| {
        fm_of_candidate_with(&sp, c).and_then(|ch| check_character(c, ch, k))
    };
    if workers <= 1 {
        let mut t = Tally::default();
        for c in candidates {
            t = t.add(&eval(c)?);
        }
        t.feasible.sort();
        return Ok(t);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    pool.install(|| {
        candidates
            .par_iter()
            .map(|c| eval(c).map(|v| Tally::default().add(&v)))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Every untwisted candidate has `c3 = 0`.
    UntwistedC3Vanishes,
    /// Every candidate meeting the `c1` target has `c3 = 0`.
    C3VanishesGivenC1,
}

impl Certificate {
    pub fn statement(self) -> &'static str {
        match self {
            Certificate::UntwistedC3Vanishes => {
                "c3 ≡ 0 for all untwisted spectral candidates (closed form ch = a + (chi-a)[A^] - b[E^])"
            }
            Certificate::C3VanishesGivenC1 => {
                "c3 ≡ 0 for every enumerated candidate meeting the c1 target"
            }
        }
    }
}

/// Scope note attached to every certificate.
pub const CERTIFICATE_SCOPE: &str = "covers only the enumerated spectral family \
(line bundles on curves a[e] + b[l] in V, transformed through the verified Fourier-Mukai \
columns, optionally twisted by xH^ + yA^); it is not a proof that no bundle with these \
invariants exists";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub bounds: SearchBounds,
    pub constraints: HeteroticConstraints,
    pub tally: Tally,
    pub certificate: Option<Certificate>,
}

impl SearchReport {
    pub fn infeasible(&self) -> bool {
        self.tally.feasible.is_empty()
    }

    pub fn to_node(&self) -> Node {
        let k = &self.constraints;
        let t = &self.tally;
        let mut bounds = vec![
            Node::scalar("a", self.bounds.a),
            Node::scalar("b", self.bounds.b),
            Node::scalar("chi", self.bounds.chi),
        ];
        match self.bounds.twist {
            None => bounds.push(Node::scalar("twist", "none")),
            Some((x, y)) => bounds.push(Node::scalar("twist", format!("{x},{y}"))),
        }
        let rejected = Constraint::ALL
            .iter()
            .map(|c| Node::scalar(c.name(), t.rejected.get(c).copied().unwrap_or(0)))
            .collect();
        let mut children = vec![
            Node::map(
                "constraints",
                vec![
                    Node::scalar("rank", k.rank),
                    Node::scalar("c1", &k.c1_target),
                    Node::scalar("c3", &k.c3_target),
                    Node::scalar("c2_tangent", &k.c2_tangent),
                    Node::scalar(
                        "anomaly",
                        match k.anomaly_mode {
                            AnomalyMode::RequireEffective => "require-effective",
                            AnomalyMode::Ignore => "ignore",
                        },
                    ),
                    Node::scalar(
                        "anomaly_cone",
                        match k.anomaly_cone {
                            ConeConvention::Open => "open",
                            ConeConvention::Closed => "closed",
                        },
                    ),
                    Node::scalar("effective_curve", k.require_effective_curve),
                ],
            ),
            Node::map("bounds", bounds),
            Node::scalar("total", t.total),
            Node::map("rejected", rejected),
            Node::scalar("feasible_count", t.feasible.len()),
            Node::list(
                "feasible",
                t.feasible
                    .iter()
                    .map(|c| Node::item(c.to_string()))
                    .collect(),
            ),
            Node::scalar("infeasible_within_bounds", self.infeasible()),
        ];
        match self.certificate {
            Some(c) => children.push(Node::map(
                "certificate",
                vec![
                    Node::scalar("statement", c.statement()),
                    Node::scalar("scope", CERTIFICATE_SCOPE),
                ],
            )),
            None => children.push(Node::scalar("certificate", "none")),
        }
        Node::map("search", children)
    }
}

/// Exhaustive scan of `bounds` with a deterministic report.
pub fn enumerate(
    bounds: &SearchBounds,
    k: &HeteroticConstraints,
    workers: usize,
) -> Result<SearchReport> {
    bounds.validate()?;
    let tally = scan(&bounds.candidates(), k, workers)?;
    let certificate = if !tally.feasible.is_empty() || k.c3_target.is_zero() {
        None
    } else if bounds.twist.is_none() && tally.c3_nonzero == 0 {
        Some(Certificate::UntwistedC3Vanishes)
    } else if tally.c3_nonzero_given_c1 == 0 {
        Some(Certificate::C3VanishesGivenC1)
    } else {
        None
    };
    Ok(SearchReport {
        bounds: *bounds,
        constraints: k.clone(),
        tally,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_class;

    fn cd(s: &str) -> CohClass {
        parse_class(s, &vdual()).unwrap()
    }

    #[test]
    fn default_tangent_class() {
        assert_eq!(default_c2_tangent(), cd("[e^] + 8[E^]"));
    }

    #[test]
    fn candidate_transforms() {
        let ch = fm_of_candidate(&SpectralCandidate::untwisted(4, 7, 4)).unwrap();
        assert_eq!(ch.class(), &cd("4[V^] - 7[E^]"));
        let c = c_from_ch(&ch).unwrap();
        assert!(c.c1.is_zero());
        assert_eq!(c.c2, cd("7[E^]"));
        assert!(c.c3.is_zero());
        assert_eq!(
            fm_of_candidate(&SpectralCandidate::untwisted(1, 0, 1))
                .unwrap()
                .class(),
            &CohClass::unit(&vdual())
        );
        assert!(fm_of_candidate(&SpectralCandidate::untwisted(0, 0, 0))
            .unwrap()
            .class()
            .is_zero());
    }

    #[test]
    fn check_examples() {
        let k = HeteroticConstraints::weak_heterotic(4);
        let v = check(&SpectralCandidate::untwisted(4, 3, 4), &k).unwrap();
        assert_eq!(v.first_failure(), Some(Constraint::C3));
        let v = check(&SpectralCandidate::untwisted(4, 3, 5), &k).unwrap();
        assert_eq!(v.first_failure(), Some(Constraint::C1));
        assert_eq!(v.classes.c1, cd("[A^]"));
        let trivial = HeteroticConstraints {
            c3_target: q(0),
            ..HeteroticConstraints::weak_heterotic(1)
        };
        assert!(check(&SpectralCandidate::untwisted(1, 0, 1), &trivial)
            .unwrap()
            .feasible());
        let v = check(&SpectralCandidate::untwisted(1, 9, 1), &trivial).unwrap();
        assert_eq!(v.first_failure(), Some(Constraint::Anomaly));
        let ignore = HeteroticConstraints {
            anomaly_mode: AnomalyMode::Ignore,
            ..trivial
        };
        assert!(check(&SpectralCandidate::untwisted(1, 9, 1), &ignore)
            .unwrap()
            .feasible());
    }

    #[test]
    fn twist_changes_c1() {
        let ch = fm_of_candidate(&SpectralCandidate {
            a: 4,
            b: 2,
            chi: 8,
            twist: Some((0, -1)),
        })
        .unwrap();
        // (4 + 4A^ - 2E^)(1 - A^) = 4 + 0 A^ - 2E^
        assert_eq!(ch.class(), &cd("4[V^] - 2[E^]"));
    }

    #[test]
    fn empty_bounds_rejected() {
        let mut b = SearchBounds::default_for_rank(4);
        b.chi = Range::new(1, 0);
        assert!(matches!(
            enumerate(&b, &HeteroticConstraints::weak_heterotic(4), 1),
            Err(Error::Empty(_))
        ));
    }

    #[test]
    fn range_parsing() {
        assert_eq!("-3:5".parse::<Range>().unwrap(), Range::new(-3, 5));
        assert!("3".parse::<Range>().is_err());
        assert_eq!(Range::new(2, 1).len(), 0);
    }

    #[test]
    fn anomaly_cone_conventions() {
        let mut k = HeteroticConstraints {
            c3_target: q(0),
            ..HeteroticConstraints::weak_heterotic(4)
        };
        // anomaly class e^ + (8 - b) E^
        let at = |k: &HeteroticConstraints, b| {
            check(&SpectralCandidate::untwisted(4, b, 4), k)
                .unwrap()
                .feasible()
        };
        assert!(at(&k, 7));
        assert!(!at(&k, 8));
        k.anomaly_cone = ConeConvention::Closed;
        assert!(at(&k, 8));
        assert!(!at(&k, 9));
    }
}
