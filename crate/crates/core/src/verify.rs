//! Named verification suites. Each check compares a computed value with a
//! recorded one exactly and keeps both for the report.

use std::fmt::Display;
use std::sync::Arc;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chern::{
    ci_c2_on_v, ci_tangent_chern, euler_resolution, riemann_roch, scroll_polarization, scroll_todd,
    spectral_character, BasisSheaf, ChernCharacter,
};
use crate::error::{Error, Result};
use crate::fm::{
    basis_sheaf_pairs, builtin_sp, builtin_sp_inverse, reconstruct_from_pairs, recorded_image,
};
use crate::isogeny::{
    degree_identity_violations, homomorphism_violations, phi_pullback, phi_pushforward,
    projection_formula_violations,
};
use crate::lattice::{
    apply_action, cone_generators, induced_action, mat_mul3, ns_intersect, orbit_transitivity,
    preserves_form, reverse_schwarz_check, slope_curve, NsClass, Sl2Element,
};
use crate::linalg::QMatrix;
use crate::rational::{q, qf, Q};
use crate::report::Node;
use crate::ring::parse::parse_class;
use crate::ring::{v, vdual, CohClass, ModelRegistry, RingModel};
use crate::search::default_c2_tangent;
use crate::stability::{is_ample, stability_threshold, PolarizationChoice};

/// Seed for every pseudo-random sample drawn by the suites.
pub const SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: String,
    pub expected: String,
}

impl Check {
    pub fn compare<T: PartialEq + Display>(
        name: impl Into<String>,
        got: Result<T>,
        expected: T,
    ) -> Check {
        match got {
            Ok(g) => Check {
                name: name.into(),
                pass: g == expected,
                value: g.to_string(),
                expected: expected.to_string(),
            },
            Err(e) => Check {
                name: name.into(),
                pass: false,
                value: format!("error: {e}"),
                expected: expected.to_string(),
            },
        }
    }

    fn flag(name: impl Into<String>, pass: bool, value: impl Display) -> Check {
        Check {
            name: name.into(),
            pass,
            value: value.to_string(),
            expected: String::new(),
        }
    }

    pub fn line(&self) -> String {
        if self.pass {
            format!("PASS {}", self.name)
        } else if self.expected.is_empty() {
            format!("FAIL {}: {}", self.name, self.value)
        } else {
            format!(
                "FAIL {}: got {}, expected {}",
                self.name, self.value, self.expected
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationSuite {
    pub name: String,
    pub checks: Vec<Check>,
}

impl VerificationSuite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_node(&self) -> Node {
        Node::map(
            &self.name,
            vec![
                Node::scalar("status", if self.passed() { "pass" } else { "fail" }),
                Node::list(
                    "checks",
                    self.checks.iter().map(|c| Node::item(c.line())).collect(),
                ),
            ],
        )
    }
}

pub const SUITE_NAMES: [&str; 12] = [
    "ring-V",
    "ring-Vdual",
    "ring-S",
    "ring-ExE",
    "isogeny",
    "grr-table",
    "fm-matrix",
    "spectral",
    "euler",
    "scroll",
    "lattice",
    "stability",
];

/// Runs one suite, or every suite for `"all"` (plus axiom checks on any
/// loaded models).
pub fn run(name: &str, models: &ModelRegistry) -> Result<Vec<VerificationSuite>> {
    if name == "all" {
        let mut out = SUITE_NAMES
            .iter()
            .map(|n| run_one(n, models))
            .collect::<Result<Vec<_>>>()?;
        if !models.user_models().is_empty() {
            out.push(user_models(models));
        }
        return Ok(out);
    }
    if name == "models" {
        return Ok(vec![user_models(models)]);
    }
    Ok(vec![run_one(name, models)?])
}

fn run_one(name: &str, models: &ModelRegistry) -> Result<VerificationSuite> {
    let checks = match name {
        "ring-V" => ring_checks(&models.get("V")?, V_TABLE),
        "ring-Vdual" => ring_checks(&models.get("Vdual")?, VDUAL_TABLE),
        "ring-S" => ring_checks(&models.get("S")?, S_TABLE),
        "ring-ExE" => ring_checks(&models.get("ExE")?, EXE_TABLE),
        "isogeny" => isogeny_checks(),
        "grr-table" => grr_checks(),
        "fm-matrix" => fm_checks(),
        "spectral" => spectral_checks(),
        "euler" => euler_checks(),
        "scroll" => scroll_checks(),
        "lattice" => lattice_checks(),
        "stability" => stability_checks(),
        other => {
            return Err(Error::Invalid(format!(
                "unknown suite `{other}` (expected one of {}, models, all)",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(VerificationSuite {
        name: name.to_string(),
        checks,
    })
}

/// Products of basis labels and their recorded values.
type Table = &'static [(&'static str, &'static str)];

const V_TABLE: Table = &[
    ("H*H*H", "16[pt]"),
    ("H*H*A", "16[pt]"),
    ("H*A", "16[l]"),
    ("H*H", "16[e] + 16[l]"),
    ("A*A", "0"),
    ("H*e", "0"),
    ("H*l", "[pt]"),
    ("A*e", "[pt]"),
    ("A*l", "0"),
];

const VDUAL_TABLE: Table = &[
    ("H^*H^*H^", "128[pt]"),
    ("H^*H^*A^", "16[pt]"),
    ("H^*H^", "16[e^] + 128[E^]"),
    ("H^*A^", "16[E^]"),
    ("H^*E^", "[pt]"),
    ("A^*e^", "[pt]"),
    ("H^*e^", "0"),
    ("A^*E^", "0"),
    ("A^*A^", "0"),
];

const S_TABLE: Table = &[("C0*F", "[pt]"), ("F*F", "0"), ("C0*C0", "0")];

const EXE_TABLE: Table = &[
    ("E*E", "0"),
    ("F*F", "0"),
    ("Delta*Delta", "0"),
    ("E*F", "[pt]"),
    ("E*Delta", "[pt]"),
    ("F*Delta", "[pt]"),
];

fn product(model: &Arc<RingModel>, expr: &str) -> Result<CohClass> {
    let mut acc = CohClass::unit(model);
    for label in expr.split('*') {
        acc = acc.mul(&CohClass::basis(model, label)?)?;
    }
    Ok(acc)
}

fn axiom_checks(model: &RingModel) -> Vec<Check> {
    let name = model.name();
    let assoc = model.associativity_violations();
    let comm = model.commutativity_violations();
    let unit = model.unit_violations();
    let pd = model.poincare_violations();
    let witness = |n: usize, first: Option<String>| match first {
        None => "0 violations".to_string(),
        Some(w) => format!("{n} violations, first {w}"),
    };
    let lbl = |i: usize| model.label(i).to_string();
    vec![
        Check::flag(
            format!("{name}: associativity"),
            assoc.is_empty(),
            witness(
                assoc.len(),
                assoc
                    .first()
                    .map(|&(i, j, k)| format!("({}*{})*{}", lbl(i), lbl(j), lbl(k))),
            ),
        ),
        Check::flag(
            format!("{name}: commutativity"),
            comm.is_empty(),
            witness(
                comm.len(),
                comm.first().map(|&(i, j)| format!("{}*{}", lbl(i), lbl(j))),
            ),
        ),
        Check::flag(
            format!("{name}: unit"),
            unit.is_empty(),
            witness(unit.len(), unit.first().map(|&i| lbl(i))),
        ),
        Check::flag(
            format!("{name}: Poincare duality"),
            pd.is_empty(),
            witness(pd.len(), pd.first().map(|d| format!("degree {d}"))),
        ),
    ]
}

fn ring_checks(model: &Arc<RingModel>, table: Table) -> Vec<Check> {
    let mut out = axiom_checks(model);
    for (expr, expected) in table {
        let name = format!("{expr} = {expected}");
        match parse_class(expected, model) {
            Ok(e) => out.push(Check::compare(name, product(model, expr), e)),
            Err(err) => out.push(Check::flag(name, false, format!("error: {err}"))),
        }
    }
    out
}

fn user_models(models: &ModelRegistry) -> VerificationSuite {
    VerificationSuite {
        name: "models".to_string(),
        checks: models
            .user_models()
            .iter()
            .flat_map(|m| axiom_checks(m))
            .collect(),
    }
}

fn violations<T: std::fmt::Debug>(total: usize, bad: &[T]) -> String {
    match bad.first() {
        None => format!("{total} cases, 0 violations"),
        Some(w) => format!("{total} cases, {} violations, first {w:?}", bad.len()),
    }
}

fn isogeny_checks() -> Vec<Check> {
    let (pull, push) = (phi_pullback(), phi_pushforward());
    let hom = homomorphism_violations(&pull);
    let proj = projection_formula_violations(&pull, &push);
    let deg = degree_identity_violations(&pull, &push);
    let n = pull.source().rank();
    let m = push.source().rank();
    let composite = push.compose(&pull).map(|c| c.matrix().clone());
    vec![
        Check::flag(
            "phi^*(xy) = phi^*x phi^*y",
            hom.is_empty(),
            violations(n * (n + 1) / 2, &hom),
        ),
        Check::flag(
            "phi_*(x phi^*y) = phi_*x y",
            proj.is_empty(),
            violations(n * m, &proj),
        ),
        Check::flag("phi_* phi^* = 64", deg.is_empty(), violations(n, &deg)),
        Check::compare(
            "phi_* phi^* matrix",
            composite,
            QMatrix::identity(n).scale(&q(crate::isogeny::ISOGENY_DEGREE)),
        ),
    ]
}

/// `ch(F)` and `ch(S_Q F)` as recorded for the six basis sheaves.
pub fn recorded_table_one(s: BasisSheaf) -> (&'static str, &'static str) {
    match s {
        BasisSheaf::OA => ("[A]", "64[pt]"),
        BasisSheaf::Oe => ("[e] + [pt]", "[V]"),
        BasisSheaf::Opt => ("[pt]", "[A]"),
        BasisSheaf::OAH => ("[A] + 16[l] + 8[pt]", "8[A] - 128[l] + 64[pt]"),
        BasisSheaf::OV => ("[V]", "64[e] - 64[pt]"),
        BasisSheaf::OVH => (
            "[V] + [H] + 8[e] + 8[l] + 8/3[pt]",
            "8[V] - 8[H] + 64[e] + 64[l] - 64/3[pt]",
        ),
    }
}

fn grr_checks() -> Vec<Check> {
    let vm = v();
    let sp = builtin_sp();
    let mut out = Vec::new();
    for s in BasisSheaf::ALL {
        let (ch, sq) = recorded_table_one(s);
        out.push(Check::compare(
            format!("ch({})", s.name()),
            Ok(s.ch().into_class()),
            parse_class(ch, &vm).expect("static"),
        ));
        out.push(Check::compare(
            format!("ch(S_Q {})", s.name()),
            Ok(s.sq_image_ch().into_class()),
            parse_class(sq, &vm).expect("static"),
        ));
        out.push(Check::compare(
            format!("ch(S_P {})", s.name()),
            sp.apply(&s.ch()).map(ChernCharacter::into_class),
            recorded_image(s).0,
        ));
    }
    out
}

fn fm_checks() -> Vec<Check> {
    let sp = builtin_sp();
    let inv = builtin_sp_inverse();
    let id = QMatrix::identity(6);
    let rec = reconstruct_from_pairs(&basis_sheaf_pairs());
    let flags = |cols: &[crate::fm::ColumnStatus]| {
        cols.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    vec![
        Check::compare(
            "reconstruction = printed s_P",
            rec.as_ref()
                .map(|r| r.matrix().clone())
                .map_err(Clone::clone),
            sp.matrix().clone(),
        ),
        Check::compare(
            "reconstructed column status",
            rec.as_ref()
                .map(|r| flags(r.column_status()))
                .map_err(Clone::clone),
            flags(sp.column_status()),
        ),
        Check::compare("s_P s_P^-1 = 1", sp.matrix().mul(inv.matrix()), id.clone()),
        Check::compare("s_P^-1 s_P = 1", inv.matrix().mul(sp.matrix()), id),
        Check::compare(
            "inverse of s_P = printed s_P^-1",
            sp.inverse().map(|m| m.matrix().clone()),
            inv.matrix().clone(),
        ),
        Check::compare(
            "inverse column status",
            sp.inverse().map(|m| flags(m.column_status())),
            flags(inv.column_status()),
        ),
    ]
}

/// `a[V^] + (chi - a)[A^] - b[E^]`.
pub fn spectral_closed_form(a: i64, b: i64, chi: i64) -> CohClass {
    CohClass::from_ints(&vdual(), &[a, 0, chi - a, 0, -b, 0]).expect("rank 6")
}

type Triple = (i64, i64, i64);

/// Triples in the cube `|a|, |b|, |chi| <= bound` where the transform of the
/// spectral character misses the closed form.
///
/// The spectral character only touches the `[e], [l], [pt]` columns, which are
/// verified and integral, so the comparison runs in exact integer arithmetic.
pub fn spectral_closed_form_violations(bound: i64) -> Result<(u64, Vec<Triple>)> {
    let sp = builtin_sp();
    let vm = v();
    let mut cols = Vec::new();
    for label in ["e", "l", "pt"] {
        let j = vm.index_of(label).expect("built-in label");
        if sp.column_status()[j] != crate::fm::ColumnStatus::Verified {
            return Err(Error::UnverifiedColumn(label.to_string()));
        }
        let col: Vec<i128> = sp
            .matrix()
            .col(j)
            .iter()
            .map(|x| {
                crate::rational::to_i64(x)
                    .map(i128::from)
                    .ok_or_else(|| Error::Invalid(format!("column {label} is not integral")))
            })
            .collect::<Result<_>>()?;
        cols.push(col);
    }
    let mut bad = Vec::new();
    let mut total = 0u64;
    for a in -bound..=bound {
        for b in -bound..=bound {
            for chi in -bound..=bound {
                total += 1;
                let x = [a as i128, b as i128, chi as i128];
                let img: Vec<i128> = (0..6)
                    .map(|i| (0..3).map(|k| cols[k][i] * x[k]).sum())
                    .collect();
                let want = [a, 0, chi - a, 0, -b, 0].map(i128::from);
                if img[..] != want[..] {
                    bad.push((a, b, chi));
                }
            }
        }
    }
    Ok((total, bad))
}

fn spectral_checks() -> Vec<Check> {
    let sp = builtin_sp();
    let mut exact_bad = Vec::new();
    let mut exact_total = 0usize;
    for a in -6..=6 {
        for b in -6..=6 {
            for chi in -6..=6 {
                exact_total += 1;
                let got = sp.apply_verified(&spectral_character(a, b, chi));
                if got.map(ChernCharacter::into_class).ok() != Some(spectral_closed_form(a, b, chi))
                {
                    exact_bad.push((a, b, chi));
                }
            }
        }
    }
    let mut out = vec![Check::flag(
        "S_P ch(spectral) = closed form, |a|,|b|,|chi| <= 6",
        exact_bad.is_empty(),
        violations(exact_total, &exact_bad),
    )];
    out.push(match spectral_closed_form_violations(50) {
        Ok((n, bad)) => Check::flag(
            "closed form on integer columns, |a|,|b|,|chi| <= 50",
            bad.is_empty(),
            violations(n as usize, &bad),
        ),
        Err(e) => Check::flag(
            "closed form on integer columns",
            false,
            format!("error: {e}"),
        ),
    });
    let c = crate::chern::c_from_ch(&ChernCharacter::new(spectral_closed_form(4, 7, 4)));
    out.push(Check::compare(
        "c3 of closed form (4, 7, 4)",
        c.map(|c| c.c3.integrate()),
        q(0),
    ));
    out
}

fn euler_checks() -> Vec<Check> {
    let v4 = ci_tangent_chern(7, &[2, 2, 2, 2]);
    let quintic = ci_tangent_chern(4, &[5]);
    let vm = v();
    vec![
        Check::compare("c1 of (2,2,2,2) in P7", v4.clone().map(|c| c.c(1)), q(0)),
        Check::compare(
            "c2 of (2,2,2,2) in P7 / h^2",
            v4.clone().map(|c| c.c(2)),
            q(4),
        ),
        Check::compare("int c3 of (2,2,2,2) in P7", v4.map(|c| c.euler()), q(-128)),
        Check::compare("int c3 of quintic", quintic.map(|c| c.euler()), q(-200)),
        Check::compare(
            "euler_resolution(-128, 64)",
            Ok(euler_resolution(-128, 64)),
            0,
        ),
        Check::compare(
            "c2 on V",
            Ok(ci_c2_on_v()),
            parse_class("64[e] + 64[l]", &vm).expect("static"),
        ),
        Check::compare(
            "phi^* c2(T_V^) = c2(T_V)",
            phi_pullback().apply(&default_c2_tangent()),
            ci_c2_on_v(),
        ),
    ]
}

fn scroll_checks() -> Vec<Check> {
    let h = scroll_polarization();
    let chi = ChernCharacter::line_bundle(&h).and_then(|ch| riemann_roch(&ch, &scroll_todd()));
    vec![
        Check::compare("H^2 on S", h.mul(&h).map(|x| x.integrate()), q(8)),
        Check::compare("chi(H) on S", chi, q(8)),
        Check::compare(
            "chi(O) on S",
            riemann_roch(&ChernCharacter::trivial(h.model(), 1), &scroll_todd()),
            q(0),
        ),
    ]
}

/// Random element of SL(2,Z) as a word in `S` and `T^k`.
pub fn random_sl2(rng: &mut impl Rng) -> Sl2Element {
    let mut g = Sl2Element::IDENTITY;
    for _ in 0..rng.gen_range(1..=6) {
        let k = rng.gen_range(-4..=4);
        let t = Sl2Element::new(1, k, 0, 1).expect("det 1");
        g = Sl2Element::S.compose(&t.compose(&g));
    }
    g
}

fn lattice_checks() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sample: Vec<Sl2Element> = (0..100).map(|_| random_sl2(&mut rng)).collect();
    let mut form_bad = Vec::new();
    let mut hom_bad = Vec::new();
    let mut cons_bad = Vec::new();
    for (i, g) in sample.iter().enumerate() {
        let m = induced_action(g).expect("det 1");
        if !preserves_form(&m) {
            form_bad.push(*g);
        }
        let h = &sample[(i * 37 + 11) % sample.len()];
        let lhs = induced_action(&g.compose(h)).expect("det 1");
        if mat_mul3(&m, &induced_action(h).expect("det 1")).ok() != Some(lhs) {
            hom_bad.push((*g, *h));
        }
        let e = apply_action(&m, &[1, 0, 0]).ok().map(NsClass::from_prim);
        if slope_curve(g.a, g.b).ok() != e || e.is_none() {
            cons_bad.push(*g);
        }
    }
    let mut triple_bad = Vec::new();
    let mut triples = 0;
    let (e, f, d) = (
        NsClass::ints(1, 0, 0),
        NsClass::ints(0, 1, 0),
        NsClass::ints(0, 0, 1),
    );
    for a in -12i64..=12 {
        for b in -12i64..=12 {
            if a.gcd(&b) != 1 {
                continue;
            }
            triples += 1;
            let c = slope_curve(a, b).expect("coprime");
            let got = [
                ns_intersect(&c, &e),
                ns_intersect(&c, &f),
                ns_intersect(&c, &d),
            ];
            if got != [q(b * b), q(a * a), q((a - b) * (a - b))] || ns_intersect(&c, &c) != q(0) {
                triple_bad.push((a, b));
            }
        }
    }
    let mut out = vec![
        Check::flag(
            "M^T G M = G, 100 random elements",
            form_bad.is_empty(),
            violations(100, &form_bad),
        ),
        Check::flag(
            "M(gh) = M(g)M(h), 100 random pairs",
            hom_bad.is_empty(),
            violations(100, &hom_bad),
        ),
        Check::flag(
            "M(g)E = E_{a,b}, 100 random elements",
            cons_bad.is_empty(),
            violations(100, &cons_bad),
        ),
        Check::flag(
            "E_{a,b}.(E,F,Delta) = (b^2,a^2,(a-b)^2), |a|,|b| <= 12",
            triple_bad.is_empty(),
            violations(triples, &triple_bad),
        ),
    ];
    out.push(Check::compare(
        "cone generators of height 1",
        cone_generators(1).map(|g| format!("{g:?}")),
        "[[0, 0, 1], [0, 1, 0], [1, 0, 0]]".to_string(),
    ));
    out.push(match orbit_transitivity(16) {
        Ok(r) => Check::flag(
            "orbit of E reaches every generator, height 16",
            r.missed.is_empty(),
            format!("{} targets, {} missed", r.targets, r.missed.len()),
        ),
        Err(e) => Check::flag("orbit of E, height 16", false, format!("error: {e}")),
    });
    out.push(match reverse_schwarz_check(8) {
        Ok(r) => Check::flag(
            "(D.H)^2 >= D^2 H^2 on effective classes, height 8",
            r.violations.is_empty(),
            format!("{} pairs, {} violations", r.pairs, r.violations.len()),
        ),
        Err(e) => Check::flag("reverse Schwarz, height 8", false, format!("error: {e}")),
    });
    out
}

/// Random `(a, mu, n)` with `a, mu` rationals of small height and `2 <= n <= 8`.
pub fn random_threshold_triple(rng: &mut impl Rng) -> (Q, Q, i64) {
    let mut r = || qf(rng.gen_range(-300..=300), rng.gen_range(1..=12));
    let (a, mu) = (r(), r());
    (a, mu, rng.gen_range(2..=8))
}

/// `k` is the least integer `>= 1` with `a - 2k/(n-1) < mu`.
pub fn threshold_is_minimal(a: &Q, mu: &Q, n: i64, k: i64) -> bool {
    let ok = |k: i64| a - qf(2 * k, n - 1) < *mu;
    k >= 1 && ok(k) && (k == 1 || !ok(k - 1))
}

fn stability_checks() -> Vec<Check> {
    let mut table_bad = Vec::new();
    let mut mono_bad = Vec::new();
    for l in 0..=4 {
        for k in 0..=4 {
            let amp = is_ample(&PolarizationChoice::ints(l, k)).ample;
            if amp != (l > 0 && k > 0) {
                table_bad.push((l, k));
            }
            let up = is_ample(&PolarizationChoice::ints(l + 1, k)).ample
                && is_ample(&PolarizationChoice::ints(l, k + 1)).ample;
            if amp && !up {
                mono_bad.push((l, k));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x57ab);
    let mut thr_bad = Vec::new();
    for _ in 0..100 {
        let (a, mu, n) = random_threshold_triple(&mut rng);
        let k = stability_threshold(&a, &mu, n)
            .ok()
            .and_then(|k| i64::try_from(k).ok());
        if !k.is_some_and(|k| threshold_is_minimal(&a, &mu, n, k)) {
            thr_bad.push((a.to_string(), mu.to_string(), n));
        }
    }
    vec![
        Check::flag(
            "ampleness on (l,k) in [0,4]^2",
            table_bad.is_empty(),
            violations(25, &table_bad),
        ),
        Check::flag(
            "ampleness is monotone",
            mono_bad.is_empty(),
            violations(25, &mono_bad),
        ),
        Check::flag(
            "threshold is minimal, 100 random triples",
            thr_bad.is_empty(),
            violations(100, &thr_bad),
        ),
    ]
}

/// Node for a list of suites, with the overall status last.
pub fn report(suites: &[VerificationSuite]) -> Node {
    let mut children: Vec<Node> = suites.iter().map(VerificationSuite::to_node).collect();
    let first = suites
        .iter()
        .find_map(|s| s.first_failure().map(|c| format!("{}: {}", s.name, c.name)));
    children.push(Node::scalar(
        "result",
        match &first {
            None => "pass".to_string(),
            Some(f) => format!("fail (first failing check: {f})"),
        },
    ));
    Node::map("verify", children)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        let reg = ModelRegistry::builtin();
        for s in run("all", &reg).unwrap() {
            assert!(s.passed(), "{}: {:?}", s.name, s.first_failure());
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nope", &ModelRegistry::builtin()).is_err());
    }

    #[test]
    fn corrupted_model_names_identity() {
        let text = crate::ring::v()
            .to_model_file()
            .replace("mul H H = 16[e] + 16[l]", "mul H H = 17[e] + 16[l]");
        assert!(text.contains("17[e]"));
        let reg = ModelRegistry::from_model_file(&text).unwrap();
        let suites = run("ring-V", &reg).unwrap();
        assert!(!suites[0].passed());
        let failing: Vec<&str> = suites[0]
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert!(failing.contains(&"H*H = 16[e] + 16[l]"), "{failing:?}");
    }

    #[test]
    fn threshold_minimality_oracle() {
        assert!(threshold_is_minimal(&q(160), &q(0), 4, 241));
        assert!(!threshold_is_minimal(&q(160), &q(0), 4, 242));
        assert!(!threshold_is_minimal(&q(160), &q(0), 4, 240));
    }

    #[test]
    fn closed_form_small() {
        let (n, bad) = spectral_closed_form_violations(3).unwrap();
        assert_eq!(n, 343);
        assert!(bad.is_empty());
    }
}
