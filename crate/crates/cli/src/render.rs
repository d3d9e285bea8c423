//! Canonical JSON rendering of domain values.
//!
//! Every encoder here is deterministic: rationals render as `"p"` or
//! `"p/q"`, polynomials as ascending coefficient lists, matrices row-major,
//! and report objects use `serde_json`'s sorted-key maps, so identical
//! inputs produce byte-identical documents.

use serde_json::{json, Value};
use skewdyn::closure::{ClosureDescription, VanishingBasis};
use skewdyn::intmat::IntMatrix;
use skewdyn::invariant::{PencilReport, SemiInvariant, SkewLine};
use skewdyn::multipoly::MultiPoly;
use skewdyn::poly::Poly;
use skewdyn::polymat::PolyMatrix;
use skewdyn::rat::{format_rat, Rat};
use skewdyn::straighten::{Provenance, StraightForm};
use skewdyn::system::PointState;

pub fn rat_json(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

pub fn matrix_json(m: &PolyMatrix) -> Value {
    Value::Array(
        (0..m.dim())
            .map(|i| {
                Value::Array((0..m.dim()).map(|j| poly_json(m.entry(i, j))).collect())
            })
            .collect(),
    )
}

pub fn point_json(p: &PointState) -> Value {
    json!({
        "x": rat_json(&p.x),
        "y": Value::Array(p.y.iter().map(rat_json).collect()),
    })
}

pub fn line_json(line: &SkewLine) -> Value {
    json!({
        "c": rat_json(&line.c),
        "v": Value::Array(line.v.iter().map(poly_json).collect()),
    })
}

/// A multivariate polynomial as a list of `[coeff, x_exp, [y_exps]]`
/// triples in ascending monomial order — the same grammar `--poly` reads.
pub fn multipoly_json(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                json!([
                    format_rat(c),
                    m.x,
                    Value::Array(m.y.iter().map(|&e| json!(e)).collect()),
                ])
            })
            .collect(),
    )
}

pub fn semi_invariant_json(s: &SemiInvariant) -> Value {
    json!({
        "q": rat_json(&s.q),
        "basis": Value::Array(s.basis.iter().map(multipoly_json).collect()),
    })
}

pub fn int_matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|v| Value::String(v.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Search diagnostics shared by the line and semi-invariant commands.
pub fn pencil_diagnostics_json<T>(r: &PencilReport<T>) -> Value {
    json!({
        "candidate_poly": poly_json(&r.candidate_poly),
        "candidates": Value::Array(r.candidates.iter().map(rat_json).collect()),
        "function_field_rank": r.function_field_rank,
        "parametric": r.parametric,
        "search_dimension": r.dimension,
    })
}

pub fn straight_form_json(form: &StraightForm) -> Value {
    let provenance = match &form.provenance {
        Provenance::AlreadyDiagonal => json!({ "kind": "already_diagonal" }),
        Provenance::FixedLine { line, off_diagonal } => json!({
            "kind": "fixed_line",
            "line": line_json(line),
            "off_diagonal": poly_json(off_diagonal),
        }),
        Provenance::TwoCycle { line } => json!({
            "kind": "two_cycle",
            "line": line_json(line),
        }),
    };
    json!({
        "B": [rat_json(&form.b.0), rat_json(&form.b.1)],
        "gauge": matrix_json(form.gauge.matrix()),
        "provenance": provenance,
        "verified": true,
    })
}

pub fn vanishing_basis_json(v: &VanishingBasis) -> Value {
    json!({
        "basis": Value::Array(v.basis.iter().map(multipoly_json).collect()),
        "deg_x": v.e,
        "deg_y": v.d,
        "points_used": v.points_used,
    })
}

pub fn closure_json(c: &ClosureDescription) -> Value {
    json!({
        "binomials": Value::Array(c.binomials.iter().map(multipoly_json).collect()),
        "components": c.components.to_string(),
        "dimension": c.dimension,
        "lattice": int_matrix_json(&c.lattice.basis),
        "support": c.support,
    })
}
