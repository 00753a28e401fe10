use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Instance;
use crate::cnf::{Clause, Cnf, Lit, Var, VarTable};
use crate::error::{Error, Result};

/// Reads an instance file; `.json` files use the JSON mirror, everything
/// else the line format.
pub fn parse_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_instance_json(&text)
    } else {
        parse_instance_text(&text)
    }
}

/// Parses the line format:
///
/// ```text
/// var <name> ...      # exactly one line
/// hyp <name> ...
/// man <name> ...
/// clause <lit> ...    # lit = name | -name, empty = empty clause
/// ```
pub fn parse_instance_text(text: &str) -> Result<Instance> {
    let mut names: Option<VarTable> = None;
    let mut pending: Vec<(usize, &str, Vec<&str>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "var" => {
                if names.is_some() {
                    return Err(Error::Syntax { line, msg: "duplicate `var` line".into() });
                }
                let mut table = VarTable::new();
                for name in rest {
                    check_name(name, line)?;
                    if table.insert(name).is_none() {
                        return Err(Error::Syntax {
                            line,
                            msg: format!("variable `{name}` declared twice"),
                        });
                    }
                }
                names = Some(table);
            }
            "hyp" | "man" | "clause" => pending.push((line, keyword, rest)),
            other => {
                return Err(Error::Syntax { line, msg: format!("unknown keyword `{other}`") });
            }
        }
    }

    let names = names.ok_or(Error::Syntax { line: 0, msg: "missing `var` line".into() })?;
    let lookup = |name: &str, line: usize| {
        names.get(name).ok_or_else(|| {
            Error::Semantic(format!("line {line}: undeclared variable `{name}`"))
        })
    };

    let mut hyps = Vec::new();
    let mut mans = Vec::new();
    let mut theory = Cnf::new(names.len() as u32);
    for (line, keyword, rest) in pending {
        match keyword {
            "hyp" | "man" => {
                for name in rest {
                    check_name(name, line)?;
                    let v = lookup(name, line)?;
                    if keyword == "hyp" { hyps.push(v) } else { mans.push(v) }
                }
            }
            _ => {
                let mut lits = Vec::with_capacity(rest.len());
                for tok in rest {
                    let (positive, name) = match tok.strip_prefix('-') {
                        Some(n) => (false, n),
                        None => (true, tok),
                    };
                    check_name(name, line)?;
                    lits.push(Lit::new(lookup(name, line)?, positive));
                }
                theory.push(Clause::new(lits));
            }
        }
    }
    Instance::new(names, hyps, mans, theory)
}

fn check_name(name: &str, line: usize) -> Result<()> {
    if name.is_empty() || name.starts_with('-') {
        return Err(Error::Syntax { line, msg: format!("invalid variable name `{name}`") });
    }
    Ok(())
}

/// JSON mirror of the line format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub vars: Vec<String>,
    pub hyps: Vec<String>,
    pub mans: Vec<String>,
    pub clauses: Vec<Vec<String>>,
}

pub fn parse_instance_json(text: &str) -> Result<Instance> {
    let raw: InstanceJson = serde_json::from_str(text)?;
    raw.try_into()
}

impl TryFrom<InstanceJson> for Instance {
    type Error = Error;

    fn try_from(raw: InstanceJson) -> Result<Instance> {
        let mut names = VarTable::new();
        for n in &raw.vars {
            if names.insert(n).is_none() {
                return Err(Error::Semantic(format!("variable `{n}` declared twice")));
            }
        }
        let get = |n: &str| {
            names
                .get(n)
                .ok_or_else(|| Error::Semantic(format!("undeclared variable `{n}`")))
        };
        let hyps = raw.hyps.iter().map(|n| get(n)).collect::<Result<Vec<Var>>>()?;
        let mans = raw.mans.iter().map(|n| get(n)).collect::<Result<Vec<Var>>>()?;
        let mut theory = Cnf::new(names.len() as u32);
        for c in &raw.clauses {
            let lits = c
                .iter()
                .map(|tok| match tok.strip_prefix('-') {
                    Some(n) => get(n).map(Var::neg),
                    None => get(tok).map(Var::pos),
                })
                .collect::<Result<Vec<Lit>>>()?;
            theory.push(Clause::new(lits));
        }
        Instance::new(names, hyps, mans, theory)
    }
}

impl From<&Instance> for InstanceJson {
    fn from(p: &Instance) -> Self {
        let names = p.names();
        InstanceJson {
            vars: names.iter().map(|(_, n)| n.to_owned()).collect(),
            hyps: p.hyps().iter().map(|&v| names.name(v).to_owned()).collect(),
            mans: p.mans().iter().map(|&v| names.name(v).to_owned()).collect(),
            clauses: p
                .theory()
                .clauses()
                .iter()
                .map(|c| c.lits().iter().map(|&l| names.lit_name(l)).collect())
                .collect(),
        }
    }
}
