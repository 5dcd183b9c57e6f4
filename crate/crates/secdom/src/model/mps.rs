//! Free-format MPS writer and strict reader.
//!
//! The writer produces a canonical layout (one coefficient per COLUMNS
//! line, zero right-hand sides omitted, bounds only where they differ
//! from the continuous default), so writing a parsed model reproduces
//! the original bytes. The reader accepts exactly what the writer
//! emits plus harmless whitespace and `*` comments; anything outside
//! that dialect is an error rather than a guess.

use super::{format_rat, LinearModel, Rat, Sense, VarKind, Variable};
use num_traits::Zero;
use std::collections::{HashMap, HashSet};
use std::fmt::Write;
use thiserror::Error;

pub(super) fn emit(m: &LinearModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME {}", m.name);
    out.push_str("ROWS\n N obj\n");
    for c in &m.constraints {
        let tag = match c.sense {
            Sense::Le => 'L',
            Sense::Ge => 'G',
            Sense::Eq => 'E',
        };
        let _ = writeln!(out, " {} {}", tag, c.name);
    }
    out.push_str("COLUMNS\n");
    let mut obj_of: HashMap<usize, &Rat> = HashMap::new();
    for (i, c) in &m.objective {
        obj_of.insert(*i, c);
    }
    let mut rows_of: Vec<Vec<(usize, &Rat)>> = vec![Vec::new(); m.vars.len()];
    for (r, c) in m.constraints.iter().enumerate() {
        for (i, coef) in &c.terms {
            rows_of[*i].push((r, coef));
        }
    }
    for (i, v) in m.vars.iter().enumerate() {
        let mut any = false;
        if let Some(c) = obj_of.get(&i) {
            let _ = writeln!(out, "    {} obj {}", v.name, format_rat(c));
            any = true;
        }
        for (r, coef) in &rows_of[i] {
            let _ = writeln!(
                out,
                "    {} {} {}",
                v.name,
                m.constraints[*r].name,
                format_rat(coef)
            );
            any = true;
        }
        if !any {
            // Unreferenced variables still need a COLUMNS entry to exist.
            let _ = writeln!(out, "    {} obj 0", v.name);
        }
    }
    let mut rhs = String::new();
    for c in &m.constraints {
        if !c.rhs.is_zero() {
            let _ = writeln!(rhs, "    rhs {} {}", c.name, format_rat(&c.rhs));
        }
    }
    if !rhs.is_empty() {
        out.push_str("RHS\n");
        out.push_str(&rhs);
    }
    let mut bounds = String::new();
    for v in &m.vars {
        match v.kind {
            VarKind::Binary => {
                let _ = writeln!(bounds, " BV bnd {}", v.name);
            }
            VarKind::Continuous => match &v.upper {
                Some(u) if *u == v.lower => {
                    let _ = writeln!(bounds, " FX bnd {} {}", v.name, format_rat(u));
                }
                upper => {
                    if !v.lower.is_zero() {
                        let _ = writeln!(bounds, " LO bnd {} {}", v.name, format_rat(&v.lower));
                    }
                    if let Some(u) = upper {
                        let _ = writeln!(bounds, " UP bnd {} {}", v.name, format_rat(u));
                    }
                }
            },
        }
    }
    if !bounds.is_empty() {
        out.push_str("BOUNDS\n");
        out.push_str(&bounds);
    }
    out.push_str("ENDATA\n");
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MpsParseError {
    #[error("line {line}: expected a section header, got {content:?}")]
    ExpectedSection { line: usize, content: String },
    #[error("line {line}: section {name:?} is not supported")]
    UnsupportedSection { line: usize, name: String },
    #[error("line {line}: sections out of order or repeated at {name:?}")]
    SectionOrder { line: usize, name: String },
    #[error("line {line}: malformed record {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: bad numeric literal {token:?}")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: duplicate row name {name:?}")]
    DuplicateRow { line: usize, name: String },
    #[error("line {line}: unknown row name {name:?}")]
    UnknownRow { line: usize, name: String },
    #[error("line {line}: unknown column name {name:?}")]
    UnknownColumn { line: usize, name: String },
    #[error("line {line}: coefficient for column {col:?} in row {row:?} appears twice")]
    DuplicateEntry {
        line: usize,
        col: String,
        row: String,
    },
    #[error("line {line}: a right-hand side on the objective row is not supported")]
    ObjectiveRhs { line: usize },
    #[error("more than one objective row declared")]
    MultipleObjectives,
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("content after ENDATA")]
    TrailingContent,
}

/// Exact decimal literal: optional sign, digits, optional fraction.
/// No exponents, no overflow, reduced on construction.
fn parse_number(tok: &str, line: usize) -> Result<Rat, MpsParseError> {
    let err = || MpsParseError::BadNumber {
        line,
        token: tok.to_string(),
    };
    let (sign, body) = match tok.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(err());
    }
    if int_part.len() + frac_part.len() > 15 {
        return Err(err());
    }
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer * 10 + i64::from(b - b'0');
    }
    let denom = 10i64.pow(frac_part.len() as u32);
    Ok(Rat::new(sign * numer, denom))
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Copy)]
enum Section {
    Start,
    Rows,
    Columns,
    Rhs,
    Bounds,
    End,
}

pub fn parse_mps(text: &str) -> Result<LinearModel, MpsParseError> {
    let mut section = Section::Start;
    let mut name = String::new();
    let mut obj_seen = false;
    let mut row_names: HashMap<String, usize> = HashMap::new();
    let mut rows: Vec<(String, Sense)> = Vec::new();
    let mut row_terms: Vec<Vec<(usize, Rat)>> = Vec::new();
    let mut row_rhs: Vec<Option<Rat>> = Vec::new();
    let mut col_names: HashMap<String, usize> = HashMap::new();
    let mut cols: Vec<Variable> = Vec::new();
    let mut objective: Vec<(usize, Rat)> = Vec::new();
    let mut obj_cols: HashSet<usize> = HashSet::new();
    let mut seen_entries: HashSet<(usize, usize)> = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() || raw.starts_with('*') {
            continue;
        }
        if section == Section::End {
            return Err(MpsParseError::TrailingContent);
        }
        let is_header = !raw.starts_with(' ') && !raw.starts_with('\t');
        if is_header {
            let mut toks = raw.split_whitespace();
            let head = toks.next().unwrap_or_default().to_string();
            let next = match head.as_str() {
                "NAME" => {
                    name = toks.next().unwrap_or_default().to_string();
                    Section::Start
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::End,
                "RANGES" | "OBJSENSE" | "OBJSENSE:" | "SOS" => {
                    return Err(MpsParseError::UnsupportedSection { line, name: head })
                }
                _ => {
                    return Err(MpsParseError::ExpectedSection {
                        line,
                        content: raw.to_string(),
                    })
                }
            };
            if next != Section::Start && next <= section {
                return Err(MpsParseError::SectionOrder { line, name: head });
            }
            section = next;
            continue;
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let malformed = || MpsParseError::Malformed {
            line,
            content: raw.trim().to_string(),
        };
        match section {
            Section::Start | Section::End => return Err(malformed()),
            Section::Rows => {
                let (tag, row_name) = match toks[..] {
                    [a, b] => (a, b),
                    _ => return Err(malformed()),
                };
                let sense = match tag {
                    "N" => {
                        if obj_seen {
                            return Err(MpsParseError::MultipleObjectives);
                        }
                        obj_seen = true;
                        if row_names
                            .insert(row_name.to_string(), usize::MAX)
                            .is_some()
                        {
                            return Err(MpsParseError::DuplicateRow {
                                line,
                                name: row_name.to_string(),
                            });
                        }
                        continue;
                    }
                    "L" => Sense::Le,
                    "G" => Sense::Ge,
                    "E" => Sense::Eq,
                    _ => return Err(malformed()),
                };
                if row_names
                    .insert(row_name.to_string(), rows.len())
                    .is_some()
                {
                    return Err(MpsParseError::DuplicateRow {
                        line,
                        name: row_name.to_string(),
                    });
                }
                rows.push((row_name.to_string(), sense));
                row_terms.push(Vec::new());
                row_rhs.push(None);
            }
            Section::Columns => {
                if toks.len() < 3 || toks.len() % 2 == 0 {
                    return Err(malformed());
                }
                let col = *col_names.entry(toks[0].to_string()).or_insert_with(|| {
                    cols.push(Variable {
                        name: toks[0].to_string(),
                        kind: VarKind::Continuous,
                        lower: Rat::zero(),
                        upper: None,
                    });
                    cols.len() - 1
                });
                for pair in toks[1..].chunks(2) {
                    let value = parse_number(pair[1], line)?;
                    let Some(&row) = row_names.get(pair[0]) else {
                        return Err(MpsParseError::UnknownRow {
                            line,
                            name: pair[0].to_string(),
                        });
                    };
                    if row == usize::MAX {
                        if !obj_cols.insert(col) {
                            return Err(MpsParseError::DuplicateEntry {
                                line,
                                col: toks[0].to_string(),
                                row: pair[0].to_string(),
                            });
                        }
                        objective.push((col, value));
                    } else {
                        if !seen_entries.insert((col, row)) {
                            return Err(MpsParseError::DuplicateEntry {
                                line,
                                col: toks[0].to_string(),
                                row: pair[0].to_string(),
                            });
                        }
                        row_terms[row].push((col, value));
                    }
                }
            }
            Section::Rhs => {
                if toks.len() < 3 || toks.len() % 2 == 0 {
                    return Err(malformed());
                }
                for pair in toks[1..].chunks(2) {
                    let value = parse_number(pair[1], line)?;
                    let Some(&row) = row_names.get(pair[0]) else {
                        return Err(MpsParseError::UnknownRow {
                            line,
                            name: pair[0].to_string(),
                        });
                    };
                    if row == usize::MAX {
                        return Err(MpsParseError::ObjectiveRhs { line });
                    }
                    if row_rhs[row].replace(value).is_some() {
                        return Err(MpsParseError::DuplicateEntry {
                            line,
                            col: "rhs".to_string(),
                            row: pair[0].to_string(),
                        });
                    }
                }
            }
            Section::Bounds => {
                let (tag, var_name, value) = match toks[..] {
                    [tag, _set, var] => (tag, var, None),
                    [tag, _set, var, value] => (tag, var, Some(value)),
                    _ => return Err(malformed()),
                };
                let Some(&col) = col_names.get(var_name) else {
                    return Err(MpsParseError::UnknownColumn {
                        line,
                        name: var_name.to_string(),
                    });
                };
                let v = &mut cols[col];
                match (tag, value) {
                    ("BV", None) => {
                        v.kind = VarKind::Binary;
                        v.lower = Rat::zero();
                        v.upper = Some(Rat::new(1, 1));
                    }
                    ("UP", Some(val)) => v.upper = Some(parse_number(val, line)?),
                    ("LO", Some(val)) => v.lower = parse_number(val, line)?,
                    ("FX", Some(val)) => {
                        let val = parse_number(val, line)?;
                        v.lower = val;
                        v.upper = Some(val);
                    }
                    _ => return Err(malformed()),
                }
            }
        }
    }
    if section != Section::End {
        return Err(MpsParseError::MissingSection("ENDATA"));
    }
    if !obj_seen {
        return Err(MpsParseError::MissingSection("ROWS (objective)"));
    }

    let mut m = LinearModel::new(name);
    for v in cols {
        match v.kind {
            VarKind::Binary => m.add_binary(v.name),
            VarKind::Continuous => m.add_continuous(v.name, v.lower, v.upper),
        }
        .expect("column names are unique by construction");
    }
    m.set_objective(objective)
        .expect("indices in range by construction");
    for (i, (row_name, sense)) in rows.into_iter().enumerate() {
        m.add_constraint(
            row_name,
            std::mem::take(&mut row_terms[i]),
            sense,
            row_rhs[i].take().unwrap_or_else(Rat::zero),
        )
        .expect("row names are unique by construction");
    }
    Ok(m)
}
