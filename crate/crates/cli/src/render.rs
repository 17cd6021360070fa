//! Human-readable rendering of result documents.

use std::fmt::Write;

use knotfloer::knots::LaurentPoly;

use crate::docs::{ModuleReport, ResultDocument};

fn module_line(m: &ModuleReport) -> String {
    let mut parts: Vec<String> = m.free.iter().map(|d| format!("F[W]({d})")).collect();
    parts.extend(
        m.torsion
            .iter()
            .map(|t| format!("F[W]/W^{}({})", t.length, t.grading)),
    );
    let body = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    };
    format!("{body}  [{} gradings]", m.grading_mode)
}

fn laurent_text(pairs: &[(i64, i64)]) -> String {
    match LaurentPoly::from_pairs(pairs) {
        Ok(p) => p.to_string(),
        Err(_) => format!("{pairs:?}"),
    }
}

pub fn render(doc: &ResultDocument) -> String {
    let mut out = String::new();

    if let Some(d) = &doc.diagram {
        writeln!(out, "diagram").unwrap();
        writeln!(
            out,
            "  generators            {} ({})",
            d.generators,
            d.generator_labels.join(", ")
        )
        .unwrap();
        writeln!(out, "  intersection number   {}", d.intersection_number).unwrap();
        if d.bigons.is_empty() {
            writeln!(out, "  bigons                none").unwrap();
        } else {
            writeln!(out, "  bigons                from  to  n_w  n_z").unwrap();
            for b in &d.bigons {
                writeln!(
                    out,
                    "                        {:<6}{:<4}{:<5}{}",
                    b.from, b.to, b.w, b.z
                )
                .unwrap();
            }
        }
        writeln!(out).unwrap();
    }

    if let Some(inv) = &doc.invariants {
        writeln!(out, "knot invariants").unwrap();
        writeln!(out, "  genus      {}", inv.genus).unwrap();
        writeln!(out, "  fibered    {}", if inv.fibered { "yes" } else { "no" }).unwrap();
        writeln!(out, "  Alexander  {}", laurent_text(&inv.alexander)).unwrap();
        writeln!(out, "  HFK-minus  {}", module_line(&inv.hfk_minus)).unwrap();
        writeln!(out, "  HFK-hat    maslov  alexander  dim").unwrap();
        for e in &inv.hfk_hat {
            writeln!(
                out,
                "             {:<8}{:<11}{}",
                e.maslov, e.alexander, e.dim
            )
            .unwrap();
        }
        writeln!(out).unwrap();
    }

    if let Some(s) = &doc.surgery {
        writeln!(out, "surgery n = {}", s.n).unwrap();
        writeln!(
            out,
            "  method     {}{}",
            s.method,
            if s.verified { " (cross-validated)" } else { "" }
        )
        .unwrap();
        writeln!(out, "  L-space    {}", if s.l_space { "yes" } else { "no" }).unwrap();
        writeln!(out, "  class  d   module").unwrap();
        for c in &s.classes {
            writeln!(out, "  {:<7}{:<4}{}", c.class, c.d, module_line(&c.module)).unwrap();
        }
        writeln!(
            out,
            "  H1 = {} (order {}), total hat dimension {}: bound {}",
            s.h1.group,
            s.h1.order,
            s.h1.total_hat_dimension,
            if s.h1.bound_holds { "holds" } else { "VIOLATED" }
        )
        .unwrap();
        writeln!(out).unwrap();
    }

    if let Some(h) = &doc.h1 {
        writeln!(out, "first homology").unwrap();
        writeln!(out, "  group              {}", h.group).unwrap();
        writeln!(out, "  invariant factors  {:?}", h.invariant_factors).unwrap();
        writeln!(out, "  free rank          {}", h.free_rank).unwrap();
        if let Some(order) = h.order {
            writeln!(out, "  order              {order}").unwrap();
        }
        writeln!(out).unwrap();
    }

    out
}
