//! One function per subcommand. Each returns its result payload and the
//! checks it ran on its own output.

use clap::Args;
use recovery_core::acceptance::{parse_filter, run_all, AcceptanceOptions};
use recovery_core::density::{density_report, ComponentModel};
use recovery_core::finchar::{
    align_components, clifford_decompose, conjugation_automorphisms, fixed_sets_agree, induce,
    induced_twist_analysis, kth_power_equal, pre_asai, random_lift_system, twist_cocycle, Cyclotomic,
    FincharError, Heisenberg, LinearCharacter, MatrixRep,
};
use recovery_core::lattice::{
    is_direct_summand, lift_torus_map, lift_torus_map_with_corner, relative_index, saturate, saturation_index,
    CornerConstraint, Lattice, LatticeMap,
};
use recovery_core::liealg::{
    adjoint_fibre as fibre_of_adjoint, check_unique_factorization, dual_highest_weight,
    product_group_adjoint_counterexample, weyl_dim, AlgebraData, AlgebraName, HighestWeight,
    DEFAULT_DIMENSION_CAP,
};
use recovery_core::weights::{
    ext_power, ext_power_fibre, infer_sym_n, infer_tensor_n, recover_from_sym, recover_from_tensor, sym_power,
    tensor_power, WeightError,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::parse;
use crate::report::{Check, CliError, Outcome};

type Res = Result<Outcome, CliError>;

#[derive(Args, Debug, Serialize)]
pub struct RecoverArgs {
    /// The power k.
    #[arg(long)]
    pub k: usize,
    /// Size of the multiset to recover; inferred from the input size when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Weights of the power, as lines `mult c1 ... cr` (`;` or `\n` separate lines).
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Read the weights from a file (`-` for standard input); text or JSON.
    #[arg(long)]
    pub input: Option<String>,
}

pub enum Power {
    Sym,
    Tensor,
}

pub fn recover(a: &RecoverArgs, power: Power) -> Res {
    let input = parse::weights(&parse::text_source(a.weights.as_deref(), a.input.as_deref(), "weights")?)?;
    if a.k == 0 {
        return Err(WeightError::InvalidK.into());
    }
    let size = input.size();
    let n = match (a.n, &power) {
        (Some(n), _) => n,
        (None, Power::Sym) => infer_sym_n(size, a.k)
            .ok_or_else(|| WeightError::NotASymPower(format!("size {size} is not a symmetric-power size for k = {}", a.k)))?,
        (None, Power::Tensor) => infer_tensor_n(size, a.k).ok_or_else(|| {
            WeightError::NotATensorPower(format!("size {size} is not a tensor-power size for k = {}", a.k))
        })?,
    };
    let (recovered, forward) = match power {
        Power::Sym => {
            let w = recover_from_sym(&input, a.k, n)?;
            let f = sym_power(&w, a.k);
            (w, f)
        }
        Power::Tensor => {
            let w = recover_from_tensor(&input, a.k, n)?;
            let f = tensor_power(&w, a.k);
            (w, f)
        }
    };
    let checks = vec![
        Check::new("forward_power_matches", forward == input, "the power of the recovered multiset equals the input"),
        Check::new("size", recovered.size() == n as u64, format!("recovered {} of {n} weights", recovered.size())),
    ];
    Ok(Outcome::new(
        json!({ "n": n, "k": a.k, "recovered": recovered, "recovered_text": recovered.to_text() }),
        checks,
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct ExtSearchArgs {
    #[arg(long)]
    pub k: usize,
    /// Coordinates of candidate weights range over [-bound, bound].
    #[arg(long, default_value_t = 2)]
    pub bound: i64,
    /// Refuse searches with more candidates than this.
    #[arg(long, default_value_t = 2_000_000)]
    pub cap: u128,
    /// Weights of the module V, as lines `mult c1 ... cr`.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[arg(long)]
    pub input: Option<String>,
}

pub fn ext_search(a: &ExtSearchArgs) -> Res {
    let v = parse::weights(&parse::text_source(a.weights.as_deref(), a.input.as_deref(), "weights")?)?;
    let target = ext_power(&v, a.k)?;
    let fibre = ext_power_fibre(&v, a.k, a.bound, a.cap)?;
    let mut verified = true;
    for w in &fibre {
        verified &= ext_power(w, a.k)? == target;
    }
    let in_range = v.iter().all(|(w, _)| w.iter().all(|c| c.abs() <= a.bound));
    let dual = recovery_core::weights::dual(&v);
    let checks = vec![
        Check::new("fibre_verified", verified, "every member has the same exterior power"),
        Check::new(
            "input_found",
            !in_range || fibre.contains(&v),
            if in_range { "the input lies in the search range" } else { "input outside the search range" },
        ),
    ];
    Ok(Outcome::new(
        json!({
            "k": a.k,
            "bound": a.bound,
            "fibre_size": fibre.len(),
            "dual_in_fibre": fibre.contains(&dual),
            "self_dual": dual == v,
            "fibre": fibre.iter().map(|w| w.to_text()).collect::<Vec<_>>(),
        }),
        checks,
    ))
}

fn algebra(name: &str, cap: Option<u64>) -> Result<AlgebraData, CliError> {
    let name: AlgebraName = name.parse()?;
    Ok(AlgebraData::new(name).with_dimension_cap(cap.unwrap_or(DEFAULT_DIMENSION_CAP)))
}

fn highest_weight(alg: &AlgebraData, text: &str) -> Result<HighestWeight, CliError> {
    let hw: HighestWeight = text.parse().map_err(|_| CliError::BadInput(format!("bad highest weight `{text}`")))?;
    if hw.coeffs().len() != alg.rank {
        return Err(CliError::BadInput(format!("{} needs {} coordinates, got `{text}`", alg.name, alg.rank)));
    }
    Ok(hw)
}

#[derive(Args, Debug, Serialize)]
pub struct FactorizeArgs {
    /// A1, A2 or C2.
    #[arg(long)]
    pub algebra: String,
    /// Largest highest-weight coordinate of each factor.
    #[arg(long)]
    pub bound: u32,
    #[arg(long, default_value_t = 2)]
    pub max_factors: usize,
    /// Refuse irreducibles of larger dimension.
    #[arg(long)]
    pub dimension_cap: Option<u64>,
}

pub fn factorize(a: &FactorizeArgs) -> Res {
    let alg = algebra(&a.algebra, a.dimension_cap)?;
    if a.max_factors == 0 {
        return Err(CliError::BadInput("max-factors must be positive".into()));
    }
    let report = check_unique_factorization(&alg, a.bound, a.max_factors)?;
    let checks = vec![Check::new(
        "unique_factorization",
        report.counterexamples.is_empty(),
        format!("{} tuples, {} counterexamples", report.tuples_checked, report.counterexamples.len()),
    )];
    Ok(Outcome::new(report, checks))
}

#[derive(Args, Debug, Serialize)]
pub struct AdjointArgs {
    #[arg(long)]
    pub algebra: String,
    /// Highest weight such as `1,0` or `(1,0)`.
    #[arg(long)]
    pub hw: String,
    #[arg(long, default_value_t = 3)]
    pub bound: u32,
    /// Also report the product-group example with equal adjoints.
    #[arg(long)]
    pub product: bool,
}

pub fn adjoint_fibre(a: &AdjointArgs) -> Res {
    let alg = algebra(&a.algebra, None)?;
    let hw = highest_weight(&alg, &a.hw)?;
    let fibre = fibre_of_adjoint(&alg, &hw, a.bound)?;
    let dual = dual_highest_weight(&alg, &hw);
    let in_bound = |h: &HighestWeight| h.coeffs().iter().all(|&c| c <= a.bound as i64);
    let mut checks = vec![
        Check::new("contains_input", !in_bound(&hw) || fibre.contains(&hw), "the module itself is in its fibre"),
        Check::new("contains_dual", !in_bound(&dual) || fibre.contains(&dual), "the dual module is in the fibre"),
        Check::new(
            "only_module_or_dual",
            fibre.iter().all(|h| *h == hw || *h == dual),
            "every member is the module or its dual",
        ),
    ];
    let mut result = json!({
        "algebra": alg.name,
        "hw": hw,
        "dimension": weyl_dim(&alg, &hw),
        "dual": dual,
        "fibre": fibre,
    });
    if a.product {
        let p = product_group_adjoint_counterexample();
        checks.push(Check::new(
            "product_counterexample",
            p.adjoint_equal && !p.v_iso_w && !p.v_iso_w_dual,
            "equal adjoints, neither isomorphic nor dual",
        ));
        result["product_group"] = serde_json::to_value(p).expect("serializable");
    }
    Ok(Outcome::new(result, checks))
}

#[derive(Args, Debug, Serialize)]
pub struct TwistArgs {
    /// Group preset (`sym:4`, `dihedral:5`, `heisenberg:3`, ...) or `@file.json`.
    #[arg(long)]
    pub group: String,
    /// Representation expression, e.g. `std`, `irr:2*lin:1`, `triv+sign`.
    #[arg(long)]
    pub rep1: String,
    #[arg(long)]
    pub rep2: String,
    /// Also compare k-th powers of the characters.
    #[arg(long)]
    pub k: Option<u64>,
}

fn linear_json(eta: &LinearCharacter) -> serde_json::Value {
    let g = eta.group();
    json!({
        "modulus": eta.modulus(),
        "generator_exponents": g.generators().iter().map(|&x| (g.label(x).to_string(), eta.exponent(x).1)).collect::<Vec<_>>(),
    })
}

pub fn twist_search(a: &TwistArgs) -> Res {
    let g = parse::group(&a.group)?;
    let r1 = parse::rep(&g.group, g.heisenberg.as_ref(), &a.rep1)?;
    let r2 = parse::rep(&g.group, g.heisenberg.as_ref(), &a.rep2)?;
    let found = recovery_core::finchar::twist_search(&r1, &r2)?;
    let linear = g.group.linear_characters().len();
    let (chi1, chi2) = (r1.character(), r2.character());
    let verified = match &found {
        Some(eta) => chi1.twist(eta)? == chi2,
        None => g.group.linear_characters().iter().all(|eta| chi1.twist(eta).map(|c| c != chi2).unwrap_or(false)),
    };
    let kth = a.k.map(|k| kth_power_equal(&chi1, &chi2, k)).transpose()?;
    let checks = vec![Check::new(
        "twist_verified",
        verified,
        format!("checked against all {linear} linear characters"),
    )];
    Ok(Outcome::new(
        json!({
            "group": g.group.name(),
            "dim": r1.dim(),
            "irreducible1": r1.is_irreducible()?,
            "irreducible2": r2.is_irreducible()?,
            "linear_characters": linear,
            "twist": found.as_ref().map(linear_json),
            "kth_power_equal": kth,
        }),
        checks,
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct HeisenbergArgs {
    /// Odd prime.
    #[arg(long, default_value_t = 3)]
    pub n: u64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub b: i64,
    /// Power compared; defaults to n.
    #[arg(long)]
    pub k: Option<u64>,
}

pub fn heisenberg(a: &HeisenbergArgs) -> Res {
    let h = Heisenberg::new(a.n)?;
    let k = a.k.unwrap_or(a.n);
    let r1 = h.rep(a.a)?;
    let r2 = h.rep(a.b)?;
    let (chi1, chi2) = (r1.character(), r2.character());
    let t = h.t_subgroup();
    let d1 = clifford_decompose(&r1, &t)?;
    let d2 = clifford_decompose(&r2, &t)?;
    let alignment = align_components(&d1, &d2)?;
    let agree = alignment.as_ref().map(|al| fixed_sets_agree(&d1, &d2, al)).transpose()?;
    let twist = recovery_core::finchar::twist_search(&r1, &r2)?;
    let induced_ok = [(a.a, &r1), (a.b, &r2)]
        .iter()
        .map(|(x, r)| Ok(induce(&t, &MatrixRep::linear(&h.psi(&t, *x)?))?.character() == r.character()))
        .collect::<Result<Vec<bool>, FincharError>>()?;
    let irreducible = [chi1.is_irreducible()?, chi2.is_irreducible()?];
    let checks = vec![
        Check::new("relations", h.relations_hold(), "A^n = B^n = C^n = 1, C central, AB = CBA"),
        Check::new("irreducible", irreducible.iter().all(|&x| x), "both characters have norm 1"),
        Check::new("induced_from_t", induced_ok.iter().all(|&x| x), "each representation is induced from T"),
        Check::new(
            "clifford_dimension",
            d1.total_dimension() == r1.dim() as u64 && d2.total_dimension() == r2.dim() as u64,
            "restrictions to T account for the whole dimension",
        ),
    ];
    Ok(Outcome::new(
        json!({
            "n": a.n,
            "a": a.a,
            "b": a.b,
            "k": k,
            "group_order": h.group().order(),
            "conjugacy_classes": h.group().num_classes(),
            "irreducible": irreducible,
            "kth_power_equal": kth_power_equal(&chi1, &chi2, k)?,
            "characters_equal": chi1 == chi2,
            "linear_characters": h.group().linear_characters().len(),
            "twist_search": twist.as_ref().map(linear_json),
            "clifford_multiplicity_one": d1.multiplicity_free() && d2.multiplicity_free(),
            "components": d1.components.len(),
            "fixed_sets_agree": agree.map(|v| v.iter().all(|&x| x)),
            "restriction_to_t": d1,
        }),
        checks,
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct CliffordArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub rep: String,
    /// Normal subgroup selector: trivial, whole, center, derived, alt, t,
    /// gens:l1,l2 or elements:i,j.
    #[arg(long)]
    pub normal: String,
    /// A second representation to align with the first.
    #[arg(long)]
    pub rep2: Option<String>,
}

pub fn clifford(a: &CliffordArgs) -> Res {
    let g = parse::group(&a.group)?;
    let n = parse::subgroup(&g, &a.normal)?;
    let r = parse::rep(&g.group, g.heisenberg.as_ref(), &a.rep)?;
    let d = clifford_decompose(&r, &n)?;
    let irreducible = r.is_irreducible()?;
    let mut checks = vec![
        Check::new("dimension", d.total_dimension() == r.dim() as u64, "components account for the dimension"),
        Check::new("action_homomorphism", d.action.is_homomorphism(), "the quotient acts by permutations"),
    ];
    if irreducible {
        let equal_mult = d.components.windows(2).all(|w| w[0].multiplicity == w[1].multiplicity);
        checks.push(Check::new(
            "clifford_theorem",
            d.is_transitive() && equal_mult,
            "an irreducible restricts to one orbit with equal multiplicities",
        ));
    }
    let mut result = json!({
        "group": g.group.name(),
        "normal_order": n.order(),
        "dim": r.dim(),
        "irreducible": irreducible,
        "multiplicity_free": d.multiplicity_free(),
        "transitive": d.is_transitive(),
        "decomposition": d,
    });
    if let Some(expr) = &a.rep2 {
        let r2 = parse::rep(&g.group, g.heisenberg.as_ref(), expr)?;
        let d2 = clifford_decompose(&r2, &n)?;
        let alignment = align_components(&d, &d2)?;
        let agree = alignment.as_ref().map(|al| fixed_sets_agree(&d, &d2, al)).transpose()?;
        result["second"] = serde_json::to_value(&d2).expect("serializable");
        result["alignment"] = serde_json::to_value(&alignment).expect("serializable");
        result["fixed_sets_agree"] = json!(agree);
        result["induced_twist_analysis"] = match induced_twist_analysis(&r, &r2, &n) {
            Ok(x) => serde_json::to_value(x).expect("serializable"),
            Err(e) => json!({ "refused": e.name(), "message": e.to_string() }),
        };
        checks.push(Check::new(
            "second_dimension",
            d2.total_dimension() == r2.dim() as u64,
            "components of the second representation account for its dimension",
        ));
    }
    Ok(Outcome::new(result, checks))
}

#[derive(Args, Debug, Serialize)]
pub struct AsaiArgs {
    #[arg(long)]
    pub group: String,
    /// The normal subgroup N; the representation lives on N.
    #[arg(long)]
    pub normal: String,
    /// Representation of N; atoms refer to N's own tables.
    #[arg(long)]
    pub rep: String,
    /// Representation of the whole group, restricted to N (instead of --rep).
    #[arg(long, conflicts_with = "rep")]
    pub restrict: Option<String>,
}

pub fn asai(a: &AsaiArgs, seed: u64) -> Res {
    let g = parse::group(&a.group)?;
    let n = parse::subgroup(&g, &a.normal)?;
    let rho = match &a.restrict {
        Some(expr) => parse::rep(&g.group, g.heisenberg.as_ref(), expr)?.restrict(&n)?,
        None => parse::rep(n.group(), None, &a.rep)?,
    };
    let canonical = n.quotient()?.reps;
    let other = random_lift_system(&n, seed)?;
    let first = pre_asai(&rho, &conjugation_automorphisms(&n, &canonical)?)?;
    let second = pre_asai(&rho, &conjugation_automorphisms(&n, &other)?)?;
    let expected_dim = (rho.dim() as u64).checked_pow(n.index() as u32);
    let label = |x: &usize| g.group.label(*x).to_string();
    let checks = vec![
        Check::new("dimension", expected_dim == Some(first.dim() as u64), "dim = (dim ρ)^[G:N]"),
        Check::new("lift_independence", first.character() == second.character(), "characters agree for both lift systems"),
        Check::new("character_formula", true, "trace equals the product of conjugate character values"),
    ];
    Ok(Outcome::new(
        json!({
            "group": g.group.name(),
            "normal_order": n.order(),
            "index": n.index(),
            "rep_dim": rho.dim(),
            "dim": first.dim(),
            "canonical_lifts": canonical.iter().map(label).collect::<Vec<_>>(),
            "random_lifts": other.iter().map(label).collect::<Vec<_>>(),
            "lift_systems_differ": canonical != other,
            "character": first.character(),
        }),
        checks,
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct CocycleArgs {
    #[arg(long, required_unless_present = "demo")]
    pub group: Option<String>,
    /// Subgroup on which the two representations agree.
    #[arg(long, required_unless_present = "demo")]
    pub normal: Option<String>,
    #[arg(long, required_unless_present = "demo")]
    pub rep1: Option<String>,
    #[arg(long, required_unless_present = "demo")]
    pub rep2: Option<String>,
    /// Heisenberg example on T: ρ_1 against a diagonal conjugate of ρ_1 ⊗ η.
    #[arg(long, conflicts_with_all = ["group", "normal", "rep1", "rep2"])]
    pub demo: bool,
    /// Prime for the demo.
    #[arg(long, default_value_t = 3)]
    pub n: u64,
}

pub fn cocycle(a: &CocycleArgs) -> Res {
    let (name, r1, r2, sub) = if a.demo {
        let h = Heisenberg::new(a.n)?;
        let g = h.group().clone();
        let t = h.t_subgroup();
        let (_, b, _) = h.generators();
        let m = a.n as u32;
        // η(B^j t) = ξ^j, trivial on T.
        let exps = (0..g.order())
            .map(|x| {
                (0..m).find(|&j| t.contains(g.mul(g.pow(b, -(j as i64)), x))).expect("cosets of T are B^j T")
            })
            .collect();
        let eta = LinearCharacter::new(&g, m, exps)?;
        let diag: Vec<Cyclotomic> = (0..a.n as i64).map(|i| Cyclotomic::root_of_unity(m, i * i)).collect();
        let r1 = h.rep(1)?;
        let r2 = r1.twist(&eta)?.conjugate_by_diagonal(&diag)?;
        (g.name().to_string(), r1, r2, t)
    } else {
        let g = parse::group(a.group.as_deref().unwrap_or_default())?;
        let sub = parse::subgroup(&g, a.normal.as_deref().unwrap_or_default())?;
        let r1 = parse::rep(&g.group, g.heisenberg.as_ref(), a.rep1.as_deref().unwrap_or_default())?;
        let r2 = parse::rep(&g.group, g.heisenberg.as_ref(), a.rep2.as_deref().unwrap_or_default())?;
        (g.group.name().to_string(), r1, r2, sub)
    };
    let c = twist_cocycle(&r1, &r2, &sub)?;
    let checks = vec![
        Check::new("cocycle_identity", c.pairs_checked > 0, format!("{} pairs checked", c.pairs_checked)),
        Check::new("commutant", c.in_commutant, "every value commutes with the image of the subgroup"),
    ];
    Ok(Outcome::new(json!({ "group": name, "subgroup_order": sub.order(), "cocycle": c }), checks))
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[arg(long)]
    pub group: String,
    /// The identity-component subgroup (normal).
    #[arg(long)]
    pub g0: String,
    #[arg(long)]
    pub rep1: String,
    #[arg(long)]
    pub rep2: String,
    /// Number of uniform samples; 0 skips sampling.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Component counts for the second threshold; default [G : G0].
    #[arg(long)]
    pub c1: Option<u64>,
    #[arg(long)]
    pub c2: Option<u64>,
}

pub fn density(a: &DensityArgs, seed: u64) -> Res {
    let g = parse::group(&a.group)?;
    let g0 = parse::subgroup(&g, &a.g0)?;
    let chi1 = parse::rep(&g.group, g.heisenberg.as_ref(), &a.rep1)?.character();
    let chi2 = parse::rep(&g.group, g.heisenberg.as_ref(), &a.rep2)?.character();
    let model = ComponentModel::new(g0, chi1, chi2)?;
    let c = model.components() as u64;
    let sample = (a.samples > 0).then_some((a.samples, seed));
    let r = density_report(&model, a.c1.unwrap_or(c), a.c2.unwrap_or(c), sample)?;
    let mut checks = vec![
        Check::new("lambda_below_agreement", r.lambda <= r.agreement_density, format!("{} <= {}", r.lambda, r.agreement_density)),
        Check::new("upper_bound", r.upper_bound_holds, format!("{} <= {}", r.mean_sq_char_diff, r.upper_bound)),
    ];
    if let Some(holds) = r.lower_bound_holds {
        checks.push(Check::new("lower_bound", holds, format!("2 <= {}", r.mean_sq_char_diff)));
    }
    if let Some(e) = &r.empirical {
        checks.push(Check::new(
            "interval_covers_exact",
            e.contains(&r.agreement_density),
            format!("[{:.6}, {:.6}]", e.interval.0, e.interval.1),
        ));
    }
    Ok(Outcome::new(json!({ "group": g.group.name(), "report": r }), checks))
}

#[derive(Args, Debug, Serialize)]
pub struct SaturateArgs {
    /// Generators as rows, e.g. `2 4; 0 6`, or JSON rows.
    #[arg(long, allow_hyphen_values = true)]
    pub basis: Option<String>,
    /// Read the generators from a file (`-` for standard input).
    #[arg(long)]
    pub input: Option<String>,
    /// Ambient rank; inferred from the rows when omitted.
    #[arg(long)]
    pub ambient_rank: Option<usize>,
}

pub fn lattice_saturate(a: &SaturateArgs) -> Res {
    let text = parse::text_source(a.basis.as_deref(), a.input.as_deref(), "basis")?;
    let m = parse::int_matrix(&text, a.ambient_rank)?;
    let n = a.ambient_rank.unwrap_or(m.ncols());
    if m.ncols() != n {
        return Err(CliError::BadInput(format!("rows have length {}, ambient rank is {n}", m.ncols())));
    }
    let l = Lattice::span(n, m.to_rows())?;
    let s = saturate(&l);
    let index = saturation_index(&l);
    let checks = vec![
        Check::new("idempotent", saturate(&s) == s, "saturating twice changes nothing"),
        Check::new("contains_input", s.contains_lattice(&l), "the saturation contains the lattice"),
        Check::new("rank", s.rank() == l.rank(), format!("rank {}", l.rank())),
        Check::new(
            "index",
            relative_index(&s, &l) == Some(index.clone()),
            "index equals the product of the invariant factors",
        ),
    ];
    Ok(Outcome::new(
        json!({
            "lattice": l,
            "saturation": s,
            "index": index.to_string(),
            "invariant_factors": l.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "direct_summand": is_direct_summand(&l),
        }),
        checks,
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct LiftArgs {
    /// Restriction map X*(T) -> X*(C) as rows (target rank rows).
    #[arg(long, allow_hyphen_values = true)]
    pub restriction: Option<String>,
    /// Extension map X*(T) -> X*(T') as rows; injective with free cokernel.
    #[arg(long, allow_hyphen_values = true)]
    pub extension: Option<String>,
    /// JSON file with `restriction`, `extension` and an optional `corner`.
    #[arg(long, conflicts_with_all = ["restriction", "extension"])]
    pub input: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftFile {
    restriction: LatticeMap,
    extension: LatticeMap,
    corner: Option<CornerConstraint>,
}

pub fn lattice_lift(a: &LiftArgs) -> Res {
    let (restriction, extension, corner) = match (&a.input, &a.restriction, &a.extension) {
        (Some(path), _, _) => {
            let text = parse::text_source(None, Some(path), "input")?;
            let f: LiftFile = serde_json::from_str(&text).map_err(|e| CliError::BadInput(format!("lift input: {e}")))?;
            (f.restriction, f.extension, f.corner)
        }
        (None, Some(r), Some(e)) => {
            let e = LatticeMap::from_matrix(parse::int_matrix(e, None)?);
            let r = LatticeMap::from_matrix(parse::int_matrix(r, Some(e.source_rank()))?);
            (r, e, None)
        }
        _ => return Err(CliError::BadInput("give --restriction and --extension, or --input".into())),
    };
    let lift = match &corner {
        Some(c) => lift_torus_map_with_corner(&restriction, &extension, c)?,
        None => lift_torus_map(&restriction, &extension)?,
    };
    let mut checks = vec![Check::new(
        "commutes",
        lift.compose(&extension)? == restriction,
        "lift ∘ extension = restriction",
    )];
    if let Some(c) = &corner {
        let lhs = c.from_center.compose(&lift)?;
        let diff = lhs.matrix().add(&c.from_cover.matrix().neg()).reduce_rows_mod(&c.moduli);
        checks.push(Check::new("corner", diff.is_zero(), "corner square commutes modulo the moduli"));
    }
    Ok(Outcome::new(json!({ "lift": lift }), checks))
}

#[derive(Args, Debug, Serialize)]
pub struct SelftestArgs {
    /// Criteria numbers or module names, comma separated.
    #[arg(long)]
    pub filter: Option<String>,
    /// Run every criterion against corrupted input; each should fail.
    #[arg(long)]
    pub corrupt: bool,
}

pub fn selftest(a: &SelftestArgs, seed: u64) -> Res {
    let filter = a.filter.as_deref().map(parse_filter).transpose().map_err(CliError::BadInput)?;
    let opts = AcceptanceOptions { seed, corrupt: a.corrupt };
    let results = run_all(filter.as_deref(), &opts);
    let checks = results
        .iter()
        .map(|r| Check::new(&format!("criterion_{}", r.id), r.passed, format!("{}: {}", r.name, r.detail)))
        .collect();
    let passed = results.iter().filter(|r| r.passed).count();
    Ok(Outcome::new(
        json!({ "passed": passed, "total": results.len(), "corrupt": a.corrupt, "criteria": results }),
        checks,
    ))
}
