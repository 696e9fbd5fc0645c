//! Text formats for groups, subgroups, representations, weights and matrices.

use std::io::Read;

use num_bigint::BigInt;
use recovery_core::finchar::{
    permutation_sign, Cyclotomic, FiniteGroup, Group, Heisenberg, MatrixRep, Subgroup,
};
use recovery_core::lattice::IntMatrix;
use recovery_core::weights::WeightMultiset;

use crate::report::CliError;

/// A group together with the Heisenberg structure when it was built as one.
pub struct GroupInput {
    pub group: Group,
    pub heisenberg: Option<Heisenberg>,
}

/// A preset such as `sym:4` or `heisenberg:3`, or `@path` for a JSON table.
pub fn group(spec: &str) -> Result<GroupInput, CliError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = read_path(path)?;
        return Ok(GroupInput { group: FiniteGroup::from_json(&text).map_err(CliError::from)?, heisenberg: None });
    }
    let lower = spec.to_ascii_lowercase();
    if let Some(p) = lower.strip_prefix("heisenberg:").or_else(|| lower.strip_prefix("h:")) {
        let p: u64 = p.trim().parse().map_err(|_| CliError::BadInput(format!("bad prime in `{spec}`")))?;
        let h = Heisenberg::new(p)?;
        return Ok(GroupInput { group: h.group().clone(), heisenberg: Some(h) });
    }
    Ok(GroupInput { group: FiniteGroup::preset(spec).map_err(CliError::from)?, heisenberg: None })
}

/// `trivial`, `whole`, `center`, `derived`, `alt` (even permutations), `t`
/// (the subgroup `<A, C>` of a Heisenberg group), `gens:l1,l2,…` by element
/// label or `elements:i,j,…` by element index.
pub fn subgroup(input: &GroupInput, sel: &str) -> Result<Subgroup, CliError> {
    let g = &input.group;
    let sel = sel.trim();
    Ok(match sel {
        "trivial" => Subgroup::trivial(g),
        "whole" => Subgroup::whole(g),
        "center" | "centre" => Subgroup::center(g),
        "derived" => Subgroup::derived(g),
        "alt" => {
            let even: Vec<usize> = (0..g.order())
                .filter(|&x| g.permutation(x).is_some_and(|p| permutation_sign(p) == 1))
                .collect();
            if even.len() != g.order() / 2 || g.permutation(0).is_none() {
                return Err(CliError::BadInput(format!("`alt` needs a permutation group with odd elements, got {}", g.name())));
            }
            Subgroup::from_elements(g, &even)?
        }
        "t" => match &input.heisenberg {
            Some(h) => h.t_subgroup(),
            None => return Err(CliError::BadInput("`t` is only defined for Heisenberg groups".into())),
        },
        _ => {
            if let Some(rest) = sel.strip_prefix("gens:") {
                let gens = list(rest)
                    .into_iter()
                    .map(|l| g.element_by_label(l).or_else(|| g.element_by_label(&format!("{l}^1"))).ok_or_else(|| CliError::BadInput(format!("no element labelled `{l}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Subgroup::generated(g, &gens)?
            } else if let Some(rest) = sel.strip_prefix("elements:") {
                let elems = list(rest)
                    .into_iter()
                    .map(|t| {
                        t.parse::<usize>()
                            .ok()
                            .filter(|&i| i < g.order())
                            .ok_or_else(|| CliError::BadInput(format!("bad element index `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Subgroup::from_elements(g, &elems)?
            } else {
                return Err(CliError::BadInput(format!("unknown subgroup selector `{sel}`")));
            }
        }
    })
}

fn list(rest: &str) -> Vec<&str> {
    rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// Representation expressions: terms joined by `+` (direct sum), each an atom
/// followed by modifiers.
///
/// Atoms: `triv`, `sign`, `std`, `perm`, `reg`, `rho:a` (Heisenberg),
/// `irr:i` and `lin:i` (positions in the character tables).
/// Modifiers: `*lin:i` twists by a linear character; `~diag:m:e1,e2,…`
/// conjugates by the diagonal matrix of `ζ_m^{e_i}`.
pub fn rep(g: &Group, heisenberg: Option<&Heisenberg>, expr: &str) -> Result<MatrixRep, CliError> {
    let mut total: Option<MatrixRep> = None;
    for term in expr.split('+') {
        let r = rep_term(g, heisenberg, term.trim())?;
        total = Some(match total {
            None => r,
            Some(acc) => acc.direct_sum(&r)?,
        });
    }
    total.ok_or_else(|| CliError::BadInput("empty representation expression".into()))
}

fn rep_term(g: &Group, heisenberg: Option<&Heisenberg>, term: &str) -> Result<MatrixRep, CliError> {
    let cut = term.find(['*', '~']).unwrap_or(term.len());
    let (atom, mut rest) = term.split_at(cut);
    let mut r = rep_atom(g, heisenberg, atom.trim())?;
    while !rest.is_empty() {
        let op = &rest[..1];
        let body = &rest[1..];
        let end = body.find(['*', '~']).unwrap_or(body.len());
        let arg = body[..end].trim();
        rest = &body[end..];
        r = match op {
            "*" => {
                let i = index_arg(arg, "lin:")?;
                let lin = g.linear_characters();
                let eta = lin.get(i).ok_or_else(|| CliError::BadInput(format!("no linear character {i}")))?;
                r.twist(eta)?
            }
            _ => {
                let spec = arg
                    .strip_prefix("diag:")
                    .ok_or_else(|| CliError::BadInput(format!("expected `~diag:m:e1,…`, got `~{arg}`")))?;
                let (m, exps) =
                    spec.split_once(':').ok_or_else(|| CliError::BadInput(format!("bad diagonal `{spec}`")))?;
                let m: u32 = m.trim().parse().ok().filter(|&m| m > 0).ok_or_else(|| CliError::BadInput(format!("bad conductor `{m}`")))?;
                let diag = exps
                    .split(',')
                    .map(|e| e.trim().parse::<i64>().map(|e| Cyclotomic::root_of_unity(m, e)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::BadInput(format!("bad exponents `{exps}`")))?;
                r.conjugate_by_diagonal(&diag)?
            }
        };
    }
    Ok(r)
}

fn index_arg(arg: &str, prefix: &str) -> Result<usize, CliError> {
    arg.strip_prefix(prefix)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| CliError::BadInput(format!("expected `{prefix}<index>`, got `{arg}`")))
}

fn rep_atom(g: &Group, heisenberg: Option<&Heisenberg>, atom: &str) -> Result<MatrixRep, CliError> {
    Ok(match atom {
        "triv" => MatrixRep::trivial(g),
        "sign" => MatrixRep::sign(g)?,
        "std" => MatrixRep::standard(g)?,
        "perm" => MatrixRep::permutation(g)?,
        "reg" => MatrixRep::regular(g),
        _ if atom.starts_with("rho:") => {
            let h = heisenberg.ok_or_else(|| CliError::BadInput("`rho:a` needs a Heisenberg group".into()))?;
            let a: i64 = atom[4..].trim().parse().map_err(|_| CliError::BadInput(format!("bad parameter in `{atom}`")))?;
            h.rep(a)?
        }
        _ if atom.starts_with("irr:") => MatrixRep::irreducible(g, index_arg(atom, "irr:")?)?,
        _ if atom.starts_with("lin:") => {
            let i = index_arg(atom, "lin:")?;
            let lin = g.linear_characters();
            MatrixRep::linear(lin.get(i).ok_or_else(|| CliError::BadInput(format!("no linear character {i}")))?)
        }
        _ => return Err(CliError::BadInput(format!("unknown representation `{atom}`"))),
    })
}

fn read_path(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::BadInput(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::BadInput(format!("reading {path}: {e}")))
}

/// Text from an inline value or a file (`-` for standard input).
pub fn text_source(inline: Option<&str>, path: Option<&str>, what: &str) -> Result<String, CliError> {
    match (inline, path) {
        (Some(t), None) => Ok(t.to_string()),
        (None, Some(p)) => read_path(p),
        (Some(_), Some(_)) => Err(CliError::BadInput(format!("give the {what} inline or as a file, not both"))),
        (None, None) => Err(CliError::BadInput(format!("missing {what}"))),
    }
}

/// Weight multisets as JSON or as lines `mult c1 … cr`.
pub fn weights(text: &str) -> Result<WeightMultiset, CliError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| CliError::BadInput(format!("weights: {e}")));
    }
    WeightMultiset::parse_text(text).map_err(CliError::from)
}

/// Integer matrices as rows separated by `;` or newlines, or as JSON rows.
pub fn int_matrix(text: &str, cols_if_empty: Option<usize>) -> Result<IntMatrix, CliError> {
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str(text).map_err(|e| CliError::BadInput(format!("matrix: {e}")));
    }
    let normalized = text.replace("\\n", "\n").replace(';', "\n");
    let rows = normalized
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|_| CliError::BadInput(format!("bad integer `{t}`"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, cols_if_empty.unwrap_or(0)));
    }
    IntMatrix::from_rows(rows[0].len(), rows).ok_or_else(|| CliError::BadInput("matrix rows have different lengths".into()))
}
