//! Named verification suites with pass/fail lines, and the builtin corpus.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::FinitelyPresentedAlgebra;
use crate::cech::{cech_exactness, CechStatus, Overring};
use crate::differentials::{de_rham_exactness_suite, kaehler};
use crate::error::{Error, Result};
use crate::field::Q;
use crate::hochschild::bigrading::{
    check_iterated, kunneth_base_change, weighted_polynomial_extension,
};
use crate::hochschild::cyclic::cyclic_homology;
use crate::hochschild::eulerian::verify_idempotents;
use crate::hochschild::hochschild_homology;
use crate::hochschild::hodge::hodge_decompose;
use crate::nk_engine::{tk_base_change, two_path_check};
use crate::semigroup::NumericalSemigroup;
use crate::witt_cartier::nhc::nhc_model;
use crate::witt_cartier::{check_relations, CartierModule, RelationReport};

/// `(name, ring description)`.
pub const BUILTINS: &[(&str, &str)] = &[
    ("dual-numbers", "ring Q[x]/(x^2) weights x=1"),
    ("cusp", "ring Q[x,y]/(y^2 - x^3) weights x=2 y=3"),
    ("cross", "ring Q[x,y]/(x*y) weights x=1 y=1"),
    ("etale2", "ring Q[x]/(x^2 - 1)"),
    ("fat-point-3", "ring Q[x,y]/(x^2, x*y, y^2) weights x=1 y=1"),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

/// The Artinian rings used by the whole-corpus checks.
pub fn artinian_corpus() -> Vec<(&'static str, FinitelyPresentedAlgebra<Q>)> {
    [
        ("dual-numbers", "ring Q[x]/(x^2) weights x=1"),
        ("Q[x]/(x^3)", "ring Q[x]/(x^3) weights x=1"),
        ("fat-point-3", "ring Q[x,y]/(x^2, x*y, y^2) weights x=1 y=1"),
        ("etale2", "ring Q[x]/(x^2 - 1)"),
    ]
    .into_iter()
    .map(|(n, s)| {
        (
            n,
            FinitelyPresentedAlgebra::parse(s).expect("corpus ring parses"),
        )
    })
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Derham,
    Cartier,
    Hodge,
    Kunneth,
    Sbi,
    Cech,
    Twopath,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Derham,
        Suite::Cartier,
        Suite::Hodge,
        Suite::Kunneth,
        Suite::Sbi,
        Suite::Cech,
        Suite::Twopath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Derham => "derham",
            Suite::Cartier => "cartier",
            Suite::Hodge => "hodge",
            Suite::Kunneth => "kunneth",
            Suite::Sbi => "sbi",
            Suite::Cech => "cech",
            Suite::Twopath => "twopath",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Invalid(format!(
                    "unknown suite '{s}'; available: {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            witness: None,
        }
    }

    fn with_witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub target: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("suite {} on {}\n", self.suite, self.target);
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {}: {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
            if let Some(w) = &c.witness {
                s.push_str(&format!("         witness: {w}\n"));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        s.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        s
    }
}

/// What a suite runs on.
#[derive(Clone, Debug)]
pub enum Target {
    /// The suite's default model (only `cartier` and `cech` have one).
    Default,
    Ring {
        label: String,
        ring: Box<FinitelyPresentedAlgebra<Q>>,
    },
}

impl Target {
    pub fn ring(label: impl Into<String>, ring: FinitelyPresentedAlgebra<Q>) -> Self {
        Target::Ring {
            label: label.into(),
            ring: Box::new(ring),
        }
    }

    fn label(&self) -> String {
        match self {
            Target::Default => "builtin model".into(),
            Target::Ring { label, .. } => label.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Homological degree bound.
    pub n: usize,
    /// Weight truncation for graded rings of positive dimension; the Cartier
    /// model's `N`.
    pub weight: Option<u32>,
    /// Degree bound for `cech`.
    pub degree: u32,
    /// `m, m' <= m_max` in `cartier`.
    pub m_max: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n: 3,
            weight: None,
            degree: 6,
            m_max: 4,
        }
    }
}

fn need_ring(target: &Target, suite: Suite) -> Result<&FinitelyPresentedAlgebra<Q>> {
    match target {
        Target::Ring { ring, .. } => Ok(ring),
        Target::Default => Err(Error::Invalid(format!("suite {suite} needs a ring"))),
    }
}

fn need_artinian(ring: &FinitelyPresentedAlgebra<Q>, suite: Suite) -> Result<()> {
    if ring.is_zero_dimensional() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "suite {suite} runs on Artinian algebras"
        )))
    }
}

pub fn run_suite(suite: Suite, target: &Target, opts: &SuiteOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Derham => derham(need_ring(target, suite)?, opts)?,
        Suite::Cartier => cartier(target, opts)?,
        Suite::Hodge => hodge(need_ring(target, suite)?, opts)?,
        Suite::Kunneth => kunneth(need_ring(target, suite)?, opts)?,
        Suite::Sbi => sbi(need_ring(target, suite)?, opts)?,
        Suite::Cech => cech(target, opts)?,
        Suite::Twopath => twopath(need_ring(target, suite)?, opts)?,
    };
    Ok(SuiteReport {
        suite,
        target: target.label(),
        checks,
    })
}

fn truncation(ring: &FinitelyPresentedAlgebra<Q>, opts: &SuiteOptions) -> Result<Option<u32>> {
    if ring.is_zero_dimensional() {
        Ok(None)
    } else {
        opts.weight.map(Some).ok_or(Error::MissingBound)
    }
}

fn derham(ring: &FinitelyPresentedAlgebra<Q>, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let r = de_rham_exactness_suite(ring, truncation(ring, opts)?)?;
    let mut checks = vec![Check::new(
        "d∘d = 0",
        r.d_squared_zero,
        "on every computed weight piece",
    )];
    for (name, seq) in [
        ("0 → nil → tors Ω¹ → tors Ω² → …", &r.torsion_sequence),
        ("0 → Ω⁰_cdh/Ω⁰ → Ω¹_cdh/Ω¹ → …", &r.cokernel_sequence),
    ] {
        let bad: Vec<_> = seq
            .iter()
            .filter(|s| s.homology.iter().any(|&h| h > 0))
            .collect();
        let witness = bad.first().map(|s| {
            format!(
                "weight {}: terms {:?}, homology {:?}",
                s.weight, s.terms, s.homology
            )
        });
        checks.push(
            Check::new(
                format!("exact: {name}"),
                bad.is_empty(),
                format!("{} weights", seq.len()),
            )
            .with_witness(witness),
        );
    }
    Ok(checks)
}

fn relation_checks(report: &RelationReport<Q>) -> Vec<Check> {
    report
        .checks
        .iter()
        .map(|c| {
            let w = c
                .witness
                .as_ref()
                .map(|w| format!("on {}: left {}, right {}", w.input, w.left, w.right));
            Check::new(
                format!("{}: {}", report.module, c.identity),
                w.is_none(),
                format!("{} evaluations", c.evaluations),
            )
            .with_witness(w)
        })
        .collect()
}

fn cartier(target: &Target, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let bound = opts.weight.unwrap_or(12);
    let mut checks = relation_checks(&check_relations(
        &CartierModule::<Q>::polynomial_model(bound),
        opts.m_max,
    )?);
    if let Target::Ring { ring, .. } = target {
        need_artinian(ring, Suite::Cartier)?;
        let basis = ring.basis_algebra(None)?;
        let hodge = hodge_decompose(&basis, opts.n)?;
        let nb = bound.min(6);
        for n in 0..=opts.n {
            for i in 0..=n {
                let model = nhc_model(&basis, n, Some(i), nb)?;
                checks.extend(relation_checks(&check_relations(
                    &model,
                    opts.m_max.min(3),
                )?));
                let tp = crate::witt_cartier::typical_piece(&model, &[])?;
                let expect = hodge.dim(n, i);
                checks.push(Check::new(
                    format!("typical piece of NHC_{n}^({i})"),
                    tp.dim() == expect && tp.tensor_identity,
                    format!("dim {} against HH_{n}^({i}) = {expect}", tp.dim()),
                ));
            }
        }
    }
    Ok(checks)
}

fn hodge(ring: &FinitelyPresentedAlgebra<Q>, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for m in 1..=(opts.n + 1).min(6) {
        let r = verify_idempotents(m);
        checks.push(
            Check::new(
                format!("Eulerian idempotents in Q[S_{m}]"),
                r.is_ok(),
                "orthogonal, complete",
            )
            .with_witness(r.err().map(|(i, j)| format!("pair ({i}, {j})"))),
        );
    }
    let bound = truncation(ring, opts)?;
    let basis = ring.basis_algebra(bound)?;
    let hh = hochschild_homology(&basis, opts.n)?;
    let hd = hodge_decompose(&basis, opts.n)?;
    for n in 0..=opts.n {
        let sum = hd.total(n);
        checks.push(Check::new(
            format!("Σ_i HH_{n}^(i) = HH_{n}"),
            sum == hh.total(n),
            format!("{sum} against {}", hh.total(n)),
        ));
        if ring.is_zero_dimensional() {
            let omega = kaehler(ring, n, None)?.dim();
            let top = hd.dim(n, n);
            checks.push(Check::new(
                format!("HH_{n}^({n}) = Ω^{n}"),
                top == omega,
                format!("{top} against {omega}"),
            ));
        }
    }
    Ok(checks)
}

fn kunneth(ring: &FinitelyPresentedAlgebra<Q>, opts: &SuiteOptions) -> Result<Vec<Check>> {
    need_artinian(ring, Suite::Kunneth)?;
    let basis = ring.basis_algebra(None)?;
    let n = opts.n;
    let mut checks = Vec::new();
    let ext = weighted_polynomial_extension(&basis, n.min(2), opts.weight.unwrap_or(3).min(3))?;
    for (name, rows) in [
        ("NHH^(i) of A[t] per t-weight", &ext.nhh),
        ("NHC^(i) of A[t] per t-weight", &ext.nhc),
    ] {
        let bad = rows.iter().find(|r| r.direct != r.predicted);
        checks.push(
            Check::new(
                name,
                bad.is_none(),
                format!("{} (n, i, weight) triples", rows.len()),
            )
            .with_witness(bad.map(|r| {
                format!(
                    "n={} i={} weight={}: direct {}, predicted {}",
                    r.n, r.i, r.weight, r.direct, r.predicted
                )
            })),
        );
    }
    let base = hodge_decompose(&basis, n)?;
    let bad = check_iterated(&base, 3);
    checks.push(
        Check::new("N^pHC iterated = closed form, p ≤ 3", bad.is_empty(), "")
            .with_witness(bad.first().map(|(p, n, i)| format!("p={p} n={n} i={i}"))),
    );
    let kb = kunneth_base_change(&basis, n)?;
    for r in &kb.rows {
        let ok = r.over_f == r.over_q
            && r.over_f_absolute == r.predicted
            && r.stable_direct.iter().all(|&d| d == r.predicted);
        checks.push(Check::new(
            format!("HH_{} over Q(u)", r.n),
            ok,
            format!(
                "over F {}, with du {}, predicted {}, via A[u] {:?}",
                r.over_f, r.over_f_absolute, r.predicted, r.stable_direct
            ),
        ));
    }
    let rows = tk_base_change(ring, n as i64)?;
    let bad = rows.iter().find(|r| r.over_f != r.predicted);
    checks.push(
        Check::new(
            "TK over Q(u) = TK + du-shift",
            bad.is_none(),
            format!("{} entries", rows.len()),
        )
        .with_witness(
            bad.map(|r| format!("TK_{}^({}): {} against {}", r.n, r.i, r.over_f, r.predicted)),
        ),
    );
    Ok(checks)
}

fn sbi(ring: &FinitelyPresentedAlgebra<Q>, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let basis = ring.basis_algebra(truncation(ring, opts)?)?;
    let c = cyclic_homology(&basis, opts.n)?;
    let graded = ring.weights().is_some();
    let mut checks = vec![Check::new(
        "SBI exact",
        c.sbi_failures.is_empty(),
        format!("{} weights, n ≤ {}", c.hc.len(), opts.n),
    )
    .with_witness(
        c.sbi_failures
            .first()
            .map(|f| format!("weight {}: {}", f.weight, f.spot)),
    )];
    if graded {
        checks.push(
            Check::new(
                "S = 0 in positive weight",
                c.s_nonzero_weights.is_empty(),
                "graded",
            )
            .with_witness(c.s_nonzero_weights.first().map(|w| format!("weight {w}"))),
        );
    }
    Ok(checks)
}

/// The overring used by `cech`: `Q[t]` for a semigroup ring, the product of
/// the branches for the coordinate cross.
pub fn cech_overring(ring: &FinitelyPresentedAlgebra<Q>) -> Result<Overring> {
    if let Some(s) = NumericalSemigroup::recognize(ring) {
        return Overring::semigroup_normalization(&s);
    }
    let cross = Overring::coordinate_cross()?;
    if ring.nvars() == 2
        && ring.weights() == cross.a.weights()
        && ring.groebner().same_ideal(cross.a.groebner())
    {
        return Ok(cross);
    }
    Err(Error::Unsupported(
        "cech runs on numerical-semigroup rings and the coordinate cross".into(),
    ))
}

fn cech(target: &Target, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let o = match target {
        Target::Default => Overring::coordinate_cross()?,
        Target::Ring { ring, .. } => cech_overring(ring)?,
    };
    let r = cech_exactness(&o, opts.degree)?;
    Ok(r.degrees
        .iter()
        .map(|d| {
            let detail = format!(
                "dim A {}, B {}, B⊗B {}, equalizer {}, image of A {}",
                d.dim_a, d.dim_b, d.dim_tensor, d.equalizer_dim, d.image_rank
            );
            let ok = d.status == CechStatus::Exact;
            let w = if ok {
                None
            } else {
                d.witnesses.first().cloned()
            };
            Check::new(
                format!("degree {}: 0 → A → B → B⊗_A B exact", d.degree),
                ok,
                detail,
            )
            .with_witness(w)
        })
        .collect())
}

fn twopath(ring: &FinitelyPresentedAlgebra<Q>, opts: &SuiteOptions) -> Result<Vec<Check>> {
    need_artinian(ring, Suite::Twopath)?;
    Ok(two_path_check(ring, opts.n as i64)?
        .into_iter()
        .map(|r| {
            Check::new(
                format!("Σ_i TK_{}^(i) = HH_{}(A, nil A)", r.n, r.n - 1),
                r.assembled == r.relative_hh,
                format!("{} against {}", r.assembled, r.relative_hh),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(name: &str) -> Target {
        Target::ring(
            name,
            FinitelyPresentedAlgebra::parse(builtin(name).unwrap()).unwrap(),
        )
    }

    #[test]
    fn suite_names() {
        assert_eq!("sbi".parse::<Suite>().unwrap(), Suite::Sbi);
        let err = "nope".parse::<Suite>().unwrap_err().to_string();
        assert!(
            err.contains("derham, cartier, hodge, kunneth, sbi, cech, twopath"),
            "{err}"
        );
    }

    #[test]
    fn default_models() {
        let r = run_suite(Suite::Cartier, &Target::Default, &SuiteOptions::default()).unwrap();
        assert!(r.passed());
        let r = run_suite(Suite::Cech, &Target::Default, &SuiteOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn ring_suites_pass_on_dual_numbers() {
        let opts = SuiteOptions {
            n: 2,
            ..Default::default()
        };
        for s in [
            Suite::Derham,
            Suite::Cartier,
            Suite::Hodge,
            Suite::Kunneth,
            Suite::Sbi,
            Suite::Twopath,
        ] {
            let r = run_suite(s, &ring("dual-numbers"), &opts).unwrap();
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn cusp_cech_is_reported() {
        let r = run_suite(Suite::Cech, &ring("cusp"), &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert!(r.checks[1].detail.contains("equalizer 0"));
    }

    struct SwappedFrobenius;

    impl crate::witt_cartier::CartierOperators<Q> for SwappedFrobenius {
        fn homothety(
            &self,
            r: &crate::linalg::SVec<Q>,
            w: u32,
        ) -> Result<crate::linalg::LinearMap<Q>> {
            use crate::field::Field;
            Ok(crate::linalg::LinearMap::identity(1).scale(&<Q as Field>::pow(&r.get(0), w)))
        }
        fn verschiebung(&self, _: u32, _: u32) -> Result<crate::linalg::LinearMap<Q>> {
            Ok(crate::linalg::LinearMap::identity(1))
        }
        fn frobenius(&self, _: u32, _: u32) -> Result<crate::linalg::LinearMap<Q>> {
            Ok(crate::linalg::LinearMap::identity(1))
        }
    }

    #[test]
    fn failures_carry_witnesses() {
        let m = CartierModule::from_parts(
            "broken",
            &crate::witt_cartier::ground_algebra(),
            vec![1; 4],
            vec![vec![crate::linalg::LinearMap::identity(1)]; 4],
            std::sync::Arc::new(SwappedFrobenius),
        );
        let report = SuiteReport {
            suite: Suite::Cartier,
            target: "broken".into(),
            checks: relation_checks(&check_relations(&m, 2).unwrap()),
        };
        assert!(!report.passed());
        let bad = report
            .checks
            .iter()
            .find(|c| c.name == "broken: F_2 V_2 = 2")
            .unwrap();
        assert!(bad.witness.as_ref().unwrap().starts_with("on "));
        assert!(report.render().contains("[FAIL] broken: F_2 V_2 = 2"));
    }

    #[test]
    fn unsupported_targets() {
        assert!(matches!(
            run_suite(Suite::Twopath, &ring("cusp"), &SuiteOptions::default()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            run_suite(Suite::Derham, &ring("cusp"), &SuiteOptions::default()),
            Err(Error::MissingBound)
        ));
        assert!(run_suite(Suite::Hodge, &Target::Default, &SuiteOptions::default()).is_err());
    }
}
