//! Certified closed-form bounds on hypothetical width maximizers among
//! hollow convex 3-bodies, and on the empty lattice polytopes inscribed in
//! them. Every constant is enclosed by rational intervals; covering minima,
//! successive minima and volumes of a general body only appear as names in
//! the replayed inequality chain.

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{interval_eval, AlgExpr, ArithError, QSqrt2, RatInterval, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("{0}: {1}")]
    Arith(&'static str, ArithError),
    #[error("{0}: enclosure does not separate from the claimed bound")]
    Undecided(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::Greater => ">",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    #[serde(serialize_with = "display")]
    pub expression: AlgExpr,
    pub enclosure: RatInterval,
    pub relation: Relation,
    pub claimed: Rational,
    /// The enclosure lies strictly on the claimed side of the bound.
    pub verdict: bool,
}

fn display<S: serde::Serializer, T: std::fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl BoundReport {
    fn holds(enclosure: &RatInterval, relation: Relation, claimed: &Rational) -> bool {
        match relation {
            Relation::Less => enclosure.hi() < claimed,
            Relation::Greater => enclosure.lo() > claimed,
        }
    }
}

// Refine below the requested precision at most this many times (each step
// divides the width budget by 2^16) before declaring the bound undecided.
const MAX_EXTRA_STEPS: u32 = 12;

/// Encloses `expr` to `precision`, refining further only if that enclosure
/// does not yet decide the claim. Enclosures are nested, so a finer
/// precision can never flip a verdict.
pub fn certify_bound(
    name: &'static str,
    expr: AlgExpr,
    relation: Relation,
    claimed: Rational,
    precision: &Rational,
) -> Result<BoundReport, BoundError> {
    let mut prec = precision.clone();
    for _ in 0..=MAX_EXTRA_STEPS {
        let enclosure = interval_eval(&expr, &prec).map_err(|e| BoundError::Arith(name, e))?;
        let opposite = match relation {
            Relation::Less => enclosure.lo() >= &claimed,
            Relation::Greater => enclosure.hi() <= &claimed,
        };
        if BoundReport::holds(&enclosure, relation, &claimed) || opposite {
            let verdict = !opposite;
            return Ok(BoundReport {
                name,
                expression: expr,
                enclosure,
                relation,
                claimed,
                verdict,
            });
        }
        prec = &prec * &Rational::pow2_neg(16);
    }
    Err(BoundError::Undecided(name))
}

fn dec(s: &str) -> Rational {
    Rational::from_decimal(s).expect("decimal literal")
}

/// `2 + sqrt2`, the width of the hollow tetrahedron.
pub fn tetra_width() -> AlgExpr {
    AlgExpr::quad(QSqrt2::ints(2, 1))
}

/// Hurkens' planar flatness constant `1 + 2/sqrt3`.
pub fn hurkens() -> AlgExpr {
    AlgExpr::int(1) + AlgExpr::int(2) / AlgExpr::int(3).sqrt()
}

/// `1 + 2/sqrt3 + 2 (3/4)^(1/3)`.
pub fn flatness_expr() -> AlgExpr {
    hurkens() + AlgExpr::int(2) * AlgExpr::frac(3, 4).cbrt()
}

/// `1 - (1 + 2/sqrt3)/(2 + sqrt2)`.
pub fn lambda1_expr() -> AlgExpr {
    AlgExpr::int(1) - hurkens() / tetra_width()
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessBounds {
    pub upper: BoundReport,
    pub lower: BoundReport,
    /// `2 + sqrt2 < 1 + 2/sqrt3 + 2 (3/4)^(1/3)`: the window is nonempty.
    pub window_nonempty: bool,
}

pub fn flatness_upper_bound(precision: &Rational) -> Result<FlatnessBounds, BoundError> {
    let upper = certify_bound("width upper", flatness_expr(), Relation::Less, dec("3.972"), precision)?;
    let lower = certify_bound("width lower", tetra_width(), Relation::Greater, dec("3.414"), precision)?;
    let window_nonempty = lower.enclosure.strictly_below(&upper.enclosure);
    Ok(FlatnessBounds {
        upper,
        lower,
        window_nonempty,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lambda1Bound {
    pub report: BoundReport,
    pub positive: bool,
    /// Enclosure of `1 / lambda1^3`.
    pub reciprocal_cube: RatInterval,
}

pub fn lambda1_lower_bound(precision: &Rational) -> Result<Lambda1Bound, BoundError> {
    let report = certify_bound(
        "lambda1(K-K) lower",
        lambda1_expr(),
        Relation::Greater,
        dec("0.3688"),
        precision,
    )?;
    let positive = report.enclosure.lo().signum() > 0;
    let reciprocal_cube = interval_eval(&lambda1_expr().powi(-3), precision)
        .map_err(|e| BoundError::Arith("lambda1 reciprocal cube", e))?;
    Ok(Lambda1Bound {
        report,
        positive,
        reciprocal_cube,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VolumeBounds {
    pub lower: BoundReport,
    pub upper: BoundReport,
    /// `(2 + sqrt2)^3 / 15`, computed exactly.
    pub lower_exact: QSqrt2,
    /// `lower_exact == (20 + 14 sqrt2)/15`.
    pub lower_exact_matches: bool,
}

/// `vol(K) >= (2+sqrt2)^3/15` and `vol(K) <= 1/lambda1^3`.
pub fn maximizer_volume_bounds(precision: &Rational) -> Result<VolumeBounds, BoundError> {
    let w = QSqrt2::ints(2, 1);
    let lower_exact = (&(&w * &w) * &w).scale(&Rational::new(1, 15));
    let lower_exact_matches = lower_exact == QSqrt2::frac(20, 14, 15);
    let lower = certify_bound(
        "volume lower",
        AlgExpr::quad(lower_exact.clone()),
        Relation::Greater,
        dec("2.653"),
        precision,
    )?;
    let upper = certify_bound(
        "volume upper",
        lambda1_expr().powi(-3),
        Relation::Less,
        dec("19.919"),
        precision,
    )?;
    Ok(VolumeBounds {
        lower,
        upper,
        lower_exact,
        lower_exact_matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InscribedBound {
    /// `6 X < floor + 1` for the real bound `X` on the volume.
    pub report: BoundReport,
    /// `6 X >= floor`, so the integer step is tight.
    pub floor_attained: bool,
    pub floor: i64,
    /// `floor / 6`.
    pub volume_bound: Rational,
}

fn inscribed(
    name: &'static str,
    volume: AlgExpr,
    floor: i64,
    precision: &Rational,
) -> Result<InscribedBound, BoundError> {
    let six = AlgExpr::int(6) * volume;
    let report = certify_bound(
        name,
        six.clone(),
        Relation::Less,
        Rational::from_int(floor + 1),
        precision,
    )?;
    let below = certify_bound(name, six, Relation::Greater, Rational::from_int(floor), precision)?;
    Ok(InscribedBound {
        floor_attained: below.verdict,
        floor,
        volume_bound: Rational::new(floor, 6),
        report,
    })
}

/// Since `6 vol(P)` is an integer for a lattice polytope, the real bounds
/// `1/lambda1^2` (any empty 3-polytope) and `8/(20 lambda1^2)` (empty
/// tetrahedron) round down to `44/6 = 22/3` and `17/6`.
pub fn inscribed_volume_bounds(precision: &Rational) -> Result<(InscribedBound, InscribedBound), BoundError> {
    let general = inscribed("inscribed polytope volume", lambda1_expr().powi(-2), 44, precision)?;
    let tetra = inscribed(
        "inscribed tetrahedron volume",
        AlgExpr::frac(8, 20) * lambda1_expr().powi(-2),
        17,
        precision,
    )?;
    Ok((general, tetra))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub statement: &'static str,
    /// How the step was checked.
    pub check: String,
    pub verdict: bool,
}

fn exact_step(statement: &'static str, lhs: &Rational, rhs: &Rational) -> ChainStep {
    ChainStep {
        statement,
        check: format!("{lhs} = {rhs}"),
        verdict: lhs == rhs,
    }
}

fn interval_step(statement: &'static str, r: &BoundReport) -> ChainStep {
    ChainStep {
        statement,
        check: format!(
            "{} in {} {} {}",
            r.expression,
            r.enclosure,
            r.relation.symbol(),
            r.claimed
        ),
        verdict: r.verdict,
    }
}

/// Replays every step of the width/volume argument with the constants
/// instantiated, certifying each intermediate relation.
pub fn chain_replay(precision: &Rational) -> Result<Vec<ChainStep>, BoundError> {
    let mut steps = Vec::new();
    // mu3 <= mu2 + lambda1, mu2 <= (1+2/sqrt3) mu1 and 1 <= mu3 give
    // 1 <= (1+2/sqrt3) mu1 + lambda1; with mu1 <= 1/(2+sqrt2) this yields the
    // lambda1 bound, which must be positive for the cube/square steps.
    let l1 = lambda1_lower_bound(precision)?;
    steps.push(ChainStep {
        statement: "lambda1(K-K) >= 1 - (1+2/sqrt3)/(2+sqrt2) > 0",
        check: format!("enclosure {}", l1.report.enclosure),
        verdict: l1.positive,
    });
    let hurkens_frac = certify_bound(
        "hurkens over width",
        hurkens() / tetra_width(),
        Relation::Less,
        Rational::one(),
        precision,
    )?;
    steps.push(interval_step("(1+2/sqrt3)/(2+sqrt2) < 1", &hurkens_frac));

    // Mahler (32/3 <= vol(K-K) vol((K-K)*)) with vol((K-K)*) <= 8 mu1^3:
    // 4 <= 3 mu1^3 vol(K-K).
    steps.push(exact_step(
        "(32/3) / 8 = 4/3 (Mahler with Minkowski on the polar)",
        &(&Rational::new(32, 3) * &Rational::new(1, 8)),
        &Rational::new(4, 3),
    ));
    // Minkowski on K-K: lambda1 <= 2 vol(K-K)^(-1/3) <= 2 (3/4)^(1/3) mu1.
    steps.push(exact_step(
        "(2 (3/4)^(1/3))^3 = 8 / (4/3)",
        &(&Rational::from_int(8) * &Rational::new(3, 4)),
        &(&Rational::from_int(8) * &Rational::new(4, 3).recip().expect("nonzero")),
    ));
    let fl = flatness_upper_bound(precision)?;
    steps.push(interval_step(
        "w(K) = 1/mu1 <= 1 + 2/sqrt3 + 2(3/4)^(1/3) < 3.972",
        &fl.upper,
    ));
    steps.push(interval_step("w(K) >= 2 + sqrt2 > 3.414", &fl.lower));
    steps.push(ChainStep {
        statement: "2 + sqrt2 < 1 + 2/sqrt3 + 2(3/4)^(1/3)",
        check: format!("{} below {}", fl.lower.enclosure, fl.upper.enclosure),
        verdict: fl.window_nonempty,
    });

    // Rogers-Shephard and the Mahler consequence: vol(K) >= (1/20)(4/3) w^3.
    steps.push(exact_step(
        "(1/20)(4/3) = 1/15 (Rogers-Shephard)",
        &(&Rational::new(1, 20) * &Rational::new(4, 3)),
        &Rational::new(1, 15),
    ));
    let vol = maximizer_volume_bounds(precision)?;
    steps.push(ChainStep {
        statement: "(2+sqrt2)^3/15 = (20+14 sqrt2)/15",
        check: vol.lower_exact.to_string(),
        verdict: vol.lower_exact_matches,
    });
    steps.push(interval_step("vol(K) >= (20+14 sqrt2)/15 > 2.653", &vol.lower));
    // Brunn-Minkowski and Minkowski on K-K: vol(K) <= vol(K-K)/8 <= 1/lambda1^3.
    steps.push(exact_step(
        "(1/8) * 8 = 1 (Brunn-Minkowski with Minkowski's first theorem)",
        &(&Rational::new(1, 8) * &Rational::from_int(8)),
        &Rational::one(),
    ));
    steps.push(interval_step("vol(K) <= 1/lambda1^3 < 19.919", &vol.upper));

    // Inscribed empty polytopes: lambda3(P-P) = 1 and Minkowski's second
    // theorem give vol(P-P) <= 8/lambda1^2, so vol(P) <= 1/lambda1(K-K)^2.
    steps.push(exact_step(
        "(1/8) * 8 = 1 (Minkowski's second theorem with lambda3 = 1)",
        &(&Rational::new(1, 8) * &Rational::from_int(8)),
        &Rational::one(),
    ));
    let (general, tetra) = inscribed_volume_bounds(precision)?;
    steps.push(interval_step(
        "6 vol(P) <= 6/lambda1^2 < 45, so vol(P) <= 44/6 = 22/3",
        &general.report,
    ));
    steps.push(ChainStep {
        statement: "6/lambda1^2 >= 44 (the integer step is tight)",
        check: format!("floor {}", general.floor),
        verdict: general.floor_attained,
    });
    steps.push(exact_step("44/6 = 22/3", &general.volume_bound, &Rational::new(22, 3)));
    steps.push(exact_step(
        "8/20 = 2/5 (tetrahedron: vol(P-P) = 20 vol(P))",
        &Rational::new(8, 20),
        &Rational::new(2, 5),
    ));
    steps.push(interval_step(
        "6 vol(P) <= 6 (2/5)/lambda1^2 < 18, so vol(P) <= 17/6",
        &tetra.report,
    ));
    steps.push(ChainStep {
        statement: "6 (2/5)/lambda1^2 >= 17 (the integer step is tight)",
        check: format!("floor {}", tetra.floor),
        verdict: tetra.floor_attained,
    });
    Ok(steps)
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalReport {
    pub precision: Rational,
    pub flatness: FlatnessBounds,
    pub lambda1: Lambda1Bound,
    pub volume: VolumeBounds,
    pub inscribed_general: InscribedBound,
    pub inscribed_tetrahedron: InscribedBound,
    pub chain: Vec<ChainStep>,
    pub passed: bool,
}

impl GlobalReport {
    /// The printed table: width lower/upper, lambda1, volume lower/upper and
    /// both inscribed bounds.
    pub fn rows(&self) -> Vec<&BoundReport> {
        vec![
            &self.flatness.lower,
            &self.flatness.upper,
            &self.lambda1.report,
            &self.volume.lower,
            &self.volume.upper,
            &self.inscribed_general.report,
            &self.inscribed_tetrahedron.report,
        ]
    }
}

pub fn global_bounds(precision: &Rational) -> Result<GlobalReport, BoundError> {
    if precision.signum() <= 0 {
        return Err(BoundError::Arith("precision", ArithError::NonPositivePrecision));
    }
    let flatness = flatness_upper_bound(precision)?;
    let lambda1 = lambda1_lower_bound(precision)?;
    let volume = maximizer_volume_bounds(precision)?;
    let (inscribed_general, inscribed_tetrahedron) = inscribed_volume_bounds(precision)?;
    let chain = chain_replay(precision)?;
    let mut report = GlobalReport {
        precision: precision.clone(),
        flatness,
        lambda1,
        volume,
        inscribed_general,
        inscribed_tetrahedron,
        chain,
        passed: false,
    };
    report.passed = report.rows().iter().all(|r| r.verdict)
        && report.flatness.window_nonempty
        && report.lambda1.positive
        && report.volume.lower_exact_matches
        && report.chain.iter().all(|s| s.verdict);
    Ok(report)
}
