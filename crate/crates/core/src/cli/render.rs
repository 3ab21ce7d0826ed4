use std::fmt::Write;

use super::{VerifyDeltaReport, WidthReport};
use crate::deltacert::{round5, CertificateReport, ConditionBounds, HessianMode, LocalCertificate};
use crate::exactnum::QSqrt2;
use crate::globalbounds::GlobalReport;
use crate::widthlab::fmt_vec3;

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn coords(c: &[i64; 3]) -> String {
    format!("({}, {}, {})", c[0], c[1], c[2])
}

pub fn verify_delta(r: &VerifyDeltaReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "width: {}  in {}", r.width, r.width_enclosure);
    let _ = writeln!(s, "minimizing functionals: {}", r.minimizers.len());
    for m in &r.minimizers {
        let _ = writeln!(
            s,
            "  dual {:<12} cartesian {}",
            coords(&m.coords),
            fmt_vec3(&m.functional.0)
        );
    }
    let _ = writeln!(s, "hollow: {}", r.hollow);
    let _ = writeln!(s, "lattice points on facets:");
    let _ = writeln!(s, "  {:<4} {:<16} {:<8} barycentric", "p", "point", "facet");
    for (i, f) in r.facet_points.iter().enumerate() {
        let _ = writeln!(
            s,
            "  p{:<3} {:<16} not a{}  ({})",
            i + 1,
            fmt_vec3(&f.point),
            f.opposite_vertex,
            f.barycentric.join(", ")
        );
    }
    let _ = writeln!(s, "difference body vertices: {}", r.difference_body_vertices);
    let _ = writeln!(s, "verdict: {}", if r.passed { "pass" } else { "FAIL" });
    s
}

fn matrix(rows: &[Vec<QSqrt2>]) -> String {
    rows.iter()
        .map(|r| {
            format!(
                "  [{}]\n",
                r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )
        })
        .collect()
}

pub fn local(c: &LocalCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "c = {}", c.c);
    let _ = writeln!(s, "gradients at 0 match the closed form: {}", mark(c.gradients_match));
    let _ = writeln!(
        s,
        "sum lambda_i grad h_i(0) = 0: {}",
        mark(c.dependence.combination_is_zero)
    );
    let _ = writeln!(s, "gradient rank: {} (expected 5)", c.dependence.rank);
    let _ = writeln!(
        s,
        "kernel dimension: {}, closed-form basis spans it: {}",
        c.kernel_dimension,
        mark(c.kernel_basis_spans)
    );
    let _ = writeln!(s, "restricted Hessian of sum q_i:");
    s.push_str(&matrix(&c.restricted_hessian));
    let _ = writeln!(
        s,
        "  equal to the closed form: {}; scale factor: {}",
        c.restricted_matches,
        c.restricted_scale
            .as_ref()
            .map_or_else(|| "none".to_string(), ToString::to_string)
    );
    let _ = writeln!(s, "restricted Hessian of sum lambda_i f_i:");
    s.push_str(&matrix(&c.restricted_f_hessian));
    let _ = writeln!(s, "  equal to the closed form: {}", mark(c.restricted_f_matches));
    let minors = |m: &[QSqrt2]| m.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let _ = writeln!(s, "  leading minors: {}", minors(&c.restricted_minors));
    let _ = writeln!(s, "  negative definite: {}", mark(c.restricted_negative_definite));
    let _ = writeln!(s, "Hessian of h at 0, leading minors: {}", minors(&c.hessian_minors));
    let _ = writeln!(s, "  negative definite: {}", mark(c.hessian_negative_definite));
    let _ = writeln!(s, "verdict: {}", if c.verdict { "pass" } else { "FAIL" });
    s
}

fn hess_cell(b: &ConditionBounds, mode: HessianMode) -> String {
    match (&b.r_hess, mode) {
        (Some(r), _) => round5(r),
        (None, HessianMode::Skip) => "skipped (long-running)".into(),
        (None, _) => "not certified".into(),
    }
}

fn header() -> String {
    format!(
        "{:<8} {:<9} {:<9} {:<9} {:<9} {}\n",
        "c", "(i)", "(ii)", "(iii)", "overall", "(iv)"
    )
}

fn row(b: &ConditionBounds, mode: HessianMode) -> String {
    let r = b.row();
    format!(
        "{:<8} {:<9} {:<9} {:<9} {:<9} {}\n",
        b.c.to_decimal_round(2).trim_end_matches('0').trim_end_matches('.'),
        r[0],
        r[1],
        r[2],
        round5(&b.overall),
        hess_cell(b, mode)
    )
}

pub fn neighborhood(r: &CertificateReport, mode: HessianMode) -> String {
    let mut s = header();
    s.push_str(&row(&r.bounds, mode));
    let _ = writeln!(s);
    let _ = writeln!(s, "local certificate: {}", mark(r.local.verdict));
    let _ = writeln!(
        s,
        "symmetry: {} (s-shift {:?})",
        mark(r.symmetry.verdict),
        r.symmetry.s_shift
    );
    let _ = writeln!(
        s,
        "(i)   exact radius {}; enlarged radius fails: {}",
        r.cond_i.exact, r.cond_i.enlarged_fails
    );
    let _ = writeln!(
        s,
        "(ii)  coefficient sums {}",
        r.cond_ii
            .sums
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        s,
        "(iii) {} polynomials, constant terms positive: {}, worst (functional {}, vertex {})",
        r.cond_iii.count, r.cond_iii.constants_positive, r.cond_iii.worst.0, r.cond_iii.worst.1
    );
    if let Some(iv) = &r.cond_iv {
        let _ = writeln!(
            s,
            "(iv)  determinant: {} terms, degree {}, {} primes, check prime agrees: {}, evaluation checks: {}",
            iv.terms,
            iv.degree,
            iv.modular.primes.len(),
            iv.modular.check_prime_agrees,
            iv.evaluation_checks
        );
    }
    if let Some(sec) = &r.section {
        let _ = writeln!(
            s,
            "(iv)  smoke run on {} variables (not a certificate): {} terms, routes agree: {}, radius {}",
            sec.variables,
            sec.terms,
            sec.routes_agree,
            round5(&sec.radius)
        );
    }
    let _ = writeln!(
        s,
        "overall radius {} ({}); barycentric radius {}",
        round5(&r.bounds.overall),
        if r.bounds.complete {
            "certified"
        } else {
            "condition (iv) not included"
        },
        round5(&r.bounds.barycentric)
    );
    let _ = writeln!(s, "verdict: {}", if r.passed { "pass" } else { "FAIL" });
    s
}

pub fn sweep(rows: &[ConditionBounds], mode: HessianMode) -> String {
    let mut s = header();
    for b in rows {
        s.push_str(&row(b, mode));
    }
    s
}

pub fn width(r: &WidthReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "width: {}", r.width);
    let _ = writeln!(s, "enclosure: {}", r.width_enclosure);
    let _ = writeln!(s, "minimizers: {}", r.minimizers.len());
    for m in &r.minimizers {
        let _ = writeln!(
            s,
            "  dual {:<12} cartesian {}",
            coords(&m.coords),
            fmt_vec3(&m.functional.0)
        );
    }
    if let Some(h) = r.hollow {
        let _ = writeln!(s, "hollow: {h}");
    }
    s
}

pub fn global(r: &GlobalReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<30} | {:<33} | {:<9} | verdict", "bound", "enclosure", "claimed");
    for b in r.rows() {
        let _ = writeln!(
            s,
            "{:<30} | {:<33} | {} {:<7} | {}",
            b.name,
            b.enclosure.to_string(),
            b.relation.symbol(),
            b.claimed
                .to_decimal_round(4)
                .trim_end_matches('0')
                .trim_end_matches('.'),
            mark(b.verdict)
        );
    }
    let _ = writeln!(
        s,
        "inscribed volume bounds: {} (general), {} (tetrahedron)",
        r.inscribed_general.volume_bound, r.inscribed_tetrahedron.volume_bound
    );
    let _ = writeln!(s, "\nchain:");
    for step in &r.chain {
        let _ = writeln!(
            s,
            "  [{}] {}\n        {}",
            mark(step.verdict),
            step.statement,
            step.check
        );
    }
    let _ = writeln!(s, "verdict: {}", if r.passed { "pass" } else { "FAIL" });
    s
}
