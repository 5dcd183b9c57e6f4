//! CPLEX-style LP text output. Write-only: the round-trippable format
//! is MPS, this one is for human inspection and external solvers.

use super::{format_rat, LinearModel, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt::Write;

fn push_terms(out: &mut String, m: &LinearModel, terms: &[(usize, Rat)]) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (pos, (i, c)) in terms.iter().enumerate() {
        if pos == 0 {
            if c.is_negative() {
                out.push_str("- ");
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        if !mag.is_one() {
            let _ = write!(out, "{} ", format_rat(&mag));
        }
        out.push_str(&m.vars[*i].name);
    }
}

pub(super) fn emit(m: &LinearModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ {}", m.name);
    out.push_str("Minimize\n obj: ");
    push_terms(&mut out, m, &m.objective);
    out.push_str("\nSubject To\n");
    for c in &m.constraints {
        let _ = write!(out, " {}: ", c.name);
        push_terms(&mut out, m, &c.terms);
        let _ = writeln!(out, " {} {}", c.sense.symbol(), format_rat(&c.rhs));
    }
    out.push_str("Bounds\n");
    for v in &m.vars {
        if v.kind == super::VarKind::Binary {
            continue;
        }
        match &v.upper {
            Some(u) if *u == v.lower => {
                let _ = writeln!(out, " {} = {}", v.name, format_rat(u));
            }
            Some(u) => {
                let _ = writeln!(
                    out,
                    " {} <= {} <= {}",
                    format_rat(&v.lower),
                    v.name,
                    format_rat(u)
                );
            }
            None => {
                if !v.lower.is_zero() {
                    let _ = writeln!(out, " {} >= {}", v.name, format_rat(&v.lower));
                }
            }
        }
    }
    out.push_str("Binaries\n");
    let mut line = String::new();
    for v in &m.vars {
        if v.kind != super::VarKind::Binary {
            continue;
        }
        if line.len() + v.name.len() + 1 > 72 {
            let _ = writeln!(out, " {}", line.trim_end());
            line.clear();
        }
        line.push_str(&v.name);
        line.push(' ');
    }
    if !line.is_empty() {
        let _ = writeln!(out, " {}", line.trim_end());
    }
    out.push_str("End\n");
    out
}
