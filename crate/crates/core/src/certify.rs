//! Machine-checkable OD-characterization certificates for U_3(q) and
//! U_4(q), q < 100.
//!
//! A certificate is an ordered list of steps mirroring the recognition
//! argument: compute order and degree pattern, certify t(G) ≥ 3 and
//! t(2, G) ≥ 2 (or handle the disconnected case split), invoke Vasil'ev's
//! theorem to obtain a simple section P, pin P down by a candidate scan, and
//! exclude the impostors through outer-automorphism prime sets. Purely
//! group-theoretic facts (Vasil'ev, the Frattini/Hall kernel argument,
//! recognition by order components, outer-automorphism bounds) enter as
//! named axiom steps whose numeric preconditions are checked and recorded;
//! everything else is recomputed arithmetic. Each step carries its inputs,
//! so an independent checker can replay the certificate without re-running
//! the pipeline.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{self, FactoredInteger};
use crate::catalog::{self, Family, GroupSpec};
use crate::error::{Error, Result};
use crate::graph::{self, Criterion};
use crate::tables;
use crate::unitary::{self, UnitaryParams};

/// The U_3 targets handled by the full derivation chain.
pub const U3_MAIN_TARGETS: [u64; 11] = [31, 37, 43, 47, 49, 59, 61, 64, 73, 89, 97];

/// U_4 hard cases where the candidate comes from the Lie-type scan plus
/// outer-automorphism exclusion.
pub const U4_LIE_SCAN_TARGETS: [u64; 8] = [49, 59, 61, 67, 71, 79, 81, 83];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    OrderPattern,
    Connectivity,
    TGe3,
    T2Ge2,
    VasilievHypothesis,
    PiPrimeKernel,
    CandidateScan,
    LieScan,
    OuterExclusion,
    OrderComponents,
    Literature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Certified,
    Inconclusive,
    Refuted,
}

/// One verification step: rule, human-readable theorem anchor, all numeric
/// inputs, and the outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub rule: StepRule,
    pub anchor: String,
    pub inputs: BTreeMap<String, Value>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    OdCharacterizable { h: u32 },
    KFold { h: u32 },
    Inconclusive,
}

/// An OD-characterization certificate for one target group.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub target: String,
    pub order: String,
    pub mu: Vec<String>,
    pub degree_pattern: Vec<u32>,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl Certificate {
    /// Stable JSON rendering (struct field order, sorted input keys).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable certificate")
    }

    pub fn is_od_characterizable(&self) -> bool {
        matches!(self.verdict, Verdict::OdCharacterizable { h: 1 })
    }

    /// True when no step is inconclusive or refuted.
    pub fn fully_certified(&self) -> bool {
        self.steps.iter().all(|s| s.outcome == Outcome::Certified)
    }
}

fn step(rule: StepRule, anchor: &str, inputs: BTreeMap<String, Value>, outcome: Outcome) -> Step {
    Step {
        rule,
        anchor: anchor.to_string(),
        inputs,
        outcome,
    }
}

fn inputs(pairs: Vec<(&str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn criterion_outcome(c: Criterion) -> Outcome {
    match c {
        Criterion::Certified => Outcome::Certified,
        Criterion::Inconclusive => Outcome::Inconclusive,
    }
}

/// Kernel π-set for the U_4 argument: the primes living only in the two
/// semisimple-torus maximal orders (q−1)(q²+1)/d and (q³+1)/d. Derived two
/// ways — via e(r, q) classes (R_4 ∪ R_6) and via μ-element prime sets — and
/// both must agree.
pub fn derive_u4_kernel_primes(params: &UnitaryParams) -> Result<BTreeSet<u64>> {
    let order = unitary::order_u(params)?;
    let mu = unitary::mu_u4(params)?;
    let q = params.q();

    // route 1: e(r, q) ∈ {4, 6}
    let mut by_class: BTreeSet<u64> = BTreeSet::new();
    for r in order.prime_set_u64()? {
        if r == params.p() {
            continue;
        }
        let e = arith::e_of(r, q as i64)?;
        if e == 4 || e == 6 {
            by_class.insert(r);
        }
    }

    // route 2: primes of the two torus elements minus all other μ primes
    let one = <num_bigint::BigUint as num_traits::One>::one();
    let q_big = num_bigint::BigUint::from(q);
    let d = num_bigint::BigUint::from(params.d());
    let a_val = (&q_big - &one) * (&q_big * &q_big + &one) / &d;
    let b_val = (q_big.pow(3) + &one) / &d;
    let mut torus: BTreeSet<u64> = BTreeSet::new();
    let mut rest: BTreeSet<u64> = BTreeSet::new();
    rest.insert(params.p());
    for m in mu.mu() {
        let primes = m.prime_set_u64()?;
        if *m.value() == a_val || *m.value() == b_val {
            torus.extend(primes);
        } else {
            rest.extend(primes);
        }
    }
    let by_mu: BTreeSet<u64> = torus.difference(&rest).copied().collect();

    if by_class != by_mu {
        return Err(Error::Inconsistent(format!(
            "kernel π derivations disagree for {}: classes {:?} vs mu {:?}",
            params.label(),
            by_class,
            by_mu
        )));
    }
    Ok(by_class)
}

/// Kernel π-set for the U_3 argument: the second prime-graph component,
/// which equals π((q²−q+1)/d) = R_6(q). Both routes must agree.
pub fn derive_u3_kernel_primes(params: &UnitaryParams) -> Result<BTreeSet<u64>> {
    let order = unitary::order_u(params)?;
    let mu = unitary::mu_u3(params)?;
    let gk = graph::build_gk(&mu, &order)?;
    let comps = gk.components();
    if comps.len() != 2 {
        return Err(Error::Inconsistent(format!(
            "GK({}) has {} components, expected 2",
            params.label(),
            comps.len()
        )));
    }
    let by_components: BTreeSet<u64> = comps[1].iter().copied().collect();
    let mut by_class: BTreeSet<u64> = BTreeSet::new();
    for r in order.prime_set_u64()? {
        if r != params.p() && arith::e_of(r, params.q() as i64)? == 6 {
            by_class.insert(r);
        }
    }
    if by_components != by_class {
        return Err(Error::Inconsistent(format!(
            "π_2 derivations disagree for {}: components {:?} vs classes {:?}",
            params.label(),
            by_components,
            by_class
        )));
    }
    Ok(by_components)
}

/// The kernel π-set of the U_4 argument for the eight Lie-scan targets,
/// checked against the embedded printed constants; the two sources must
/// agree exactly.
pub fn table7_pi_set(p: u64, k: u32) -> Result<BTreeSet<u64>> {
    let row = tables::TABLE7
        .iter()
        .find(|r| r.p == p && r.k == k)
        .ok_or_else(|| Error::OutOfTable(format!("{}^{}", p, k)))?;
    let params = UnitaryParams::u4(p, k)?;
    let derived = derive_u4_kernel_primes(&params)?;
    let printed: BTreeSet<u64> = row.pi.iter().copied().collect();
    if printed != derived {
        return Err(Error::Inconsistent(format!(
            "kernel π for {} differs from the printed table: {:?} vs {:?}",
            params.label(),
            derived,
            printed
        )));
    }
    Ok(derived)
}

fn spec_labels(specs: &[GroupSpec]) -> Vec<String> {
    specs.iter().map(|s| s.label()).collect()
}

/// Is every prime ≤ bound contained in the allowed set? If not, alternating
/// groups of degree ≥ bound cannot have π inside the allowed set.
fn all_primes_up_to_in(bound: u64, allowed: &BTreeSet<u64>) -> bool {
    (2..=bound).filter(|&x| arith::is_prime_u64(x)).all(|x| allowed.contains(&x))
}

fn sporadic_with_prime(r: u64, allowed: &BTreeSet<u64>) -> Vec<String> {
    let mut out = Vec::new();
    for name in [
        "M_11", "M_12", "M_22", "M_23", "M_24", "J_1", "J_2", "J_3", "J_4", "Co_1", "Co_2",
        "Co_3", "Fi_22", "Fi_23", "Fi_24'", "HS", "McL", "He", "Ru", "Suz", "O'N", "HN", "Ly",
        "Th", "B", "M", "2F_4(2)'",
    ] {
        let spec = GroupSpec::sporadic(name).expect("table name");
        let order = catalog::simple_order(&spec).expect("sporadic order");
        let primes: BTreeSet<u64> = order.prime_set_u64().expect("small primes").into_iter().collect();
        if primes.contains(&r) && primes.is_subset(allowed) {
            out.push(name.to_string());
        }
    }
    out
}

struct Prepared {
    params: UnitaryParams,
    order: FactoredInteger,
    mu: unitary::Spectrum,
    gk: graph::PrimeGraph,
    pattern: Vec<u32>,
}

fn prepare(n: u32, p: u64, k: u32) -> Result<Prepared> {
    let params = UnitaryParams::new(n, p, k)?;
    let order = unitary::order_u(&params)?;
    let mu = match n {
        3 => unitary::mu_u3(&params)?,
        _ => unitary::mu_u4(&params)?,
    };
    let gk = graph::build_gk(&mu, &order)?;
    let pattern = gk.degree_pattern().0;
    Ok(Prepared {
        params,
        order,
        mu,
        gk,
        pattern,
    })
}

fn order_pattern_step(prep: &Prepared) -> Step {
    step(
        StepRule::OrderPattern,
        "order formula and maximal element orders determine the degree pattern",
        inputs(vec![
            ("order", json!(prep.order.to_string())),
            (
                "mu",
                json!(prep.mu.mu().iter().map(|m| m.to_string()).collect::<Vec<_>>()),
            ),
            ("degree_pattern", json!(prep.pattern)),
            (
                "primes",
                json!(prep.gk.vertices()),
            ),
        ]),
        Outcome::Certified,
    )
}

fn t2_step(prep: &Prepared) -> Result<Step> {
    let deg2 = prep.gk.degree(2)?;
    let n = prep.gk.len() as u32;
    let ok = deg2 < n - 1;
    Ok(step(
        StepRule::T2Ge2,
        "2 is nonadjacent to some vertex since deg(2) < |pi(G)| - 1",
        inputs(vec![
            ("deg_2", json!(deg2)),
            ("num_primes", json!(n)),
        ]),
        if ok { Outcome::Certified } else { Outcome::Inconclusive },
    ))
}

fn vasiliev_step(t_ok: bool, t2_ok: bool) -> Step {
    step(
        StepRule::VasilievHypothesis,
        "Vasil'ev: t(G) >= 3 and t(2, G) >= 2 give a simple P with P <= G/K <= Aut(P), K the maximal normal solvable subgroup",
        inputs(vec![
            ("t_ge_3_certified", json!(t_ok)),
            ("t2_ge_2_certified", json!(t2_ok)),
        ]),
        if t_ok && t2_ok { Outcome::Certified } else { Outcome::Inconclusive },
    )
}

fn literature_certificate(prep: Prepared, h: u32, note: &str) -> Certificate {
    let op = order_pattern_step(&prep);
    let lit = step(
        StepRule::Literature,
        "recorded from prior OD-characterization results",
        inputs(vec![
            ("h", json!(h)),
            ("note", json!(note)),
        ]),
        Outcome::Certified,
    );
    let verdict = if h == 1 {
        Verdict::OdCharacterizable { h: 1 }
    } else {
        Verdict::KFold { h }
    };
    Certificate {
        target: prep.params.label(),
        order: prep.order.to_string(),
        mu: prep.mu.mu().iter().map(|m| m.to_string()).collect(),
        degree_pattern: prep.pattern,
        steps: vec![op, lit],
        verdict,
    }
}

/// OD-characterization certificate for U_3(q), any prime power 3 ≤ q ≤ 97.
/// The eleven main targets (and q = 27, covered by no earlier result) run
/// the full derivation; the rest cite prior work.
pub fn verify_u3(p: u64, k: u32) -> Result<Certificate> {
    let prep = prepare(3, p, k)?;
    let q = prep.params.q();
    if !(3..=97).contains(&q) {
        return Err(Error::OutOfTable(format!("U_3({})", q)));
    }
    if U3_MAIN_TARGETS.contains(&q) || q == 27 {
        return verify_u3_main(prep);
    }
    if matches!(q, 3 | 4 | 5 | 17) {
        return Ok(literature_certificate(
            prep,
            1,
            "solved directly in earlier work for q = 3, 4, 5, 17",
        ));
    }
    // remaining prime powers satisfy |π((q²−q+1)/d)| = 1
    let kernel = derive_u3_kernel_primes(&prep.params)?;
    if kernel.len() == 1 && q > 5 {
        return Ok(literature_certificate(
            prep,
            1,
            "second order component has a single prime divisor; covered by the degree-pattern criterion of prior work",
        ));
    }
    Err(Error::Inconsistent(format!(
        "U_3({}) matches no verification route",
        q
    )))
}

fn verify_u3_main(prep: Prepared) -> Result<Certificate> {
    let params = prep.params.clone();
    let mut steps = vec![order_pattern_step(&prep)];

    // t(G) >= 3 from the ascending degree sequence
    let ascending = {
        let mut a = prep.pattern.clone();
        a.sort_unstable();
        a
    };
    let n = ascending.len() as u32;
    let d1 = ascending[0];
    let d_d1p2 = ascending[d1 as usize + 1];
    let t_res = graph::t_ge3_by_sequence(&ascending)?;
    steps.push(step(
        StepRule::TGe3,
        "ascending degree sequence: d_1 + d_{d_1+2} <= |pi(G)| - 3 forces t(G) >= 3",
        inputs(vec![
            ("method", json!("ascending_sequence")),
            ("ascending", json!(ascending)),
            ("d_1", json!(d1)),
            ("d_d1_plus_2", json!(d_d1p2)),
            ("pi_minus_3", json!(n - 3)),
        ]),
        criterion_outcome(t_res),
    ));
    let t_ok = t_res.is_certified();

    let t2 = t2_step(&prep)?;
    let t2_ok = t2.outcome == Outcome::Certified;
    steps.push(t2);
    steps.push(vasiliev_step(t_ok, t2_ok));

    // disconnected case split on the second-component pair
    let kernel = derive_u3_kernel_primes(&params)?;
    let kernel_vec: Vec<u64> = kernel.iter().copied().collect();
    let oc = unitary::order_components(&prep.order, &prep.mu)?;
    steps.push(step(
        StepRule::OrderComponents,
        "adjacent case: GK(G) = GK(U_3(q)), so the order components coincide and recognition by order components applies",
        inputs(vec![
            ("assumed_adjacency", json!(format!("{:?} pairwise adjacent", kernel_vec))),
            (
                "order_components",
                json!(oc.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
            ),
        ]),
        Outcome::Certified,
    ));
    steps.push(step(
        StepRule::PiPrimeKernel,
        "nonadjacent case: Hall-subgroup and Frattini arguments make K a pi'-group, so the pi-part of |G| divides |P|·|Out(P)|",
        inputs(vec![
            ("assumed_nonadjacency", json!(format!("{:?} not all adjacent", kernel_vec))),
            ("pi", json!(kernel_vec)),
        ]),
        Outcome::Certified,
    ));

    // candidate scan: P has order dividing |G| and is divisible by the pair
    let found = catalog::candidates(&prep.order, &kernel_vec)?;
    let target_spec = GroupSpec::lie(Family::TwoA, 2, params.p(), params.k())?.canonicalize();
    let exact = found == vec![target_spec];
    steps.push(step(
        StepRule::CandidateScan,
        "simple groups with order dividing |G| and order divisible by the kernel primes",
        inputs(vec![
            ("required_primes", json!(kernel_vec)),
            ("candidates", json!(spec_labels(&found))),
            (
                "conclusion",
                json!(
                    "P = U_3(q); the nonadjacent case then contradicts the disconnected prime graph of U_3(q)"
                ),
            ),
        ]),
        if exact { Outcome::Certified } else { Outcome::Inconclusive },
    ));

    let all_ok = steps.iter().all(|s| s.outcome == Outcome::Certified);
    Ok(Certificate {
        target: params.label(),
        order: prep.order.to_string(),
        mu: prep.mu.mu().iter().map(|m| m.to_string()).collect(),
        degree_pattern: prep.pattern,
        steps,
        verdict: if all_ok {
            Verdict::OdCharacterizable { h: 1 }
        } else {
            Verdict::Inconclusive
        },
    })
}

/// OD-characterization certificate for U_4(q), any prime power 2 ≤ q ≤ 97.
/// q = 2 records the known two-fold value; 3 ≤ q ≤ 8 cite prior work;
/// 9 ≤ q ≤ 97 run the full derivation.
pub fn verify_u4(p: u64, k: u32) -> Result<Certificate> {
    let prep = prepare(4, p, k)?;
    let q = prep.params.q();
    if !(2..=97).contains(&q) {
        return Err(Error::OutOfTable(format!("U_4({})", q)));
    }
    if q == 2 {
        return Ok(literature_certificate(
            prep,
            2,
            "U_4(2) is 2-fold OD-characterizable; not derivable by this pipeline",
        ));
    }
    if q < 9 {
        return Ok(literature_certificate(
            prep,
            1,
            "solved in earlier work for q = 3, 4, 5, 7, 8",
        ));
    }
    verify_u4_main(prep)
}

fn verify_u4_main(prep: Prepared) -> Result<Certificate> {
    let params = prep.params.clone();
    let q = params.q();
    let mut steps = vec![order_pattern_step(&prep)];

    // connectivity from Δ + δ
    let conn = graph::connected_by_degrees(&prep.pattern);
    let max_deg = *prep.pattern.iter().max().expect("nonempty");
    let min_deg = *prep.pattern.iter().min().expect("nonempty");
    let components = prep.gk.components().len();
    steps.push(step(
        StepRule::Connectivity,
        "max degree + min degree >= |pi(G)| - 1 forces a connected graph",
        inputs(vec![
            ("delta_max", json!(max_deg)),
            ("delta_min", json!(min_deg)),
            ("num_primes", json!(prep.pattern.len())),
            ("components", json!(components)),
        ]),
        criterion_outcome(conn),
    ));
    let conn_ok = conn.is_certified();

    let t2 = t2_step(&prep)?;
    let t2_ok = t2.outcome == Outcome::Certified;
    steps.push(t2);

    // t(G) >= 3 via the three-way case split
    let (t_step, t_ok) = u4_t_ge3_step(&prep)?;
    steps.push(t_step);
    steps.push(vasiliev_step(t_ok && conn_ok, t2_ok));

    // kernel pi'-argument
    let kernel = derive_u4_kernel_primes(&params)?;
    let kernel_vec: Vec<u64> = kernel.iter().copied().collect();
    let matches_table = tables::TABLE7
        .iter()
        .find(|r| r.p == params.p() && r.k == params.k())
        .map(|r| {
            let printed: BTreeSet<u64> = r.pi.iter().copied().collect();
            printed == kernel
        });
    steps.push(step(
        StepRule::PiPrimeKernel,
        "Hall-subgroup and Frattini arguments against the degree pattern make K a pi'-group, so the pi primes divide |P|",
        inputs(vec![
            ("pi", json!(kernel_vec)),
            ("degree_pattern", json!(prep.pattern)),
            ("matches_printed_table", json!(matches_table)),
        ]),
        Outcome::Certified,
    ));

    let target_spec = GroupSpec::lie(Family::TwoA, 3, params.p(), params.k())?.canonicalize();

    if U4_LIE_SCAN_TARGETS.contains(&q) {
        // the largest prime lies in pi(P); scan Lie-type groups containing it
        let allowed: BTreeSet<u64> = prep.order.prime_set_u64()?.into_iter().collect();
        let r_max = *allowed.iter().max().expect("nonempty");
        let scan = catalog::lie_with_prime(r_max, &allowed)?;
        let no_alternating = !all_primes_up_to_in(r_max, &allowed);
        let sporadics = sporadic_with_prime(r_max, &allowed);
        let ord_p = arith::mult_order(params.p() as i64, r_max)?;
        let neg_p = arith::neg_order(params.p() as i64, r_max)?;
        steps.push(step(
            StepRule::LieScan,
            "the maximal prime r lies in pi(P); Lie-type groups with r in pi(P) inside pi(G) are enumerated by multiplicative orders of the characteristic",
            inputs(vec![
                ("r", json!(r_max)),
                ("allowed", json!(allowed.iter().copied().collect::<Vec<u64>>())),
                ("candidates", json!(spec_labels(&scan))),
                ("mult_order_p_mod_r", json!(ord_p)),
                ("neg_order_p_mod_r", json!(neg_p)),
                ("alternating_excluded", json!(no_alternating)),
                ("sporadic_candidates", json!(sporadics)),
            ]),
            if scan.contains(&target_spec) && no_alternating && sporadics.is_empty() {
                Outcome::Certified
            } else {
                Outcome::Inconclusive
            },
        ));

        // outer-automorphism exclusion of everything except the target
        let mut exclusions: Vec<Value> = Vec::new();
        let mut survivors: Vec<GroupSpec> = Vec::new();
        for cand in &scan {
            if *cand == target_spec {
                survivors.push(*cand);
                continue;
            }
            let order = catalog::simple_order(cand)?;
            let cand_primes: BTreeSet<u64> = order.prime_set_u64()?.into_iter().collect();
            let missing: Vec<u64> = kernel.difference(&cand_primes).copied().collect();
            let outer = cand.outer_prime_set();
            let excluded = !missing.is_empty()
                && missing.iter().all(|m| !outer.contains(m));
            exclusions.push(json!({
                "candidate": cand.label(),
                "missing_kernel_primes": missing,
                "outer_prime_set": outer.iter().copied().collect::<Vec<u64>>(),
                "excluded": excluded,
            }));
            if !excluded {
                survivors.push(*cand);
            }
        }
        let unique = survivors == vec![target_spec];
        steps.push(step(
            StepRule::OuterExclusion,
            "a kernel prime absent from pi(P) would have to divide |Out(P)|; the outer prime sets forbid it",
            inputs(vec![
                ("exclusions", Value::Array(exclusions)),
                ("survivors", json!(spec_labels(&survivors))),
            ]),
            if unique { Outcome::Certified } else { Outcome::Inconclusive },
        ));
    } else {
        // direct candidate scan over all simple groups
        let found = catalog::candidates(&prep.order, &kernel_vec)?;
        let exact = found == vec![target_spec];
        let mut scan_inputs = vec![
            ("required_primes", json!(kernel_vec)),
            ("candidates", json!(spec_labels(&found))),
        ];
        if q == 17 {
            scan_inputs.push((
                "note",
                json!("h(U_4(17)) was already known; the chain re-derives it"),
            ));
        }
        steps.push(step(
            StepRule::CandidateScan,
            "simple groups with order dividing |G| and order divisible by the kernel primes",
            inputs(scan_inputs),
            if exact { Outcome::Certified } else { Outcome::Inconclusive },
        ));
    }

    let all_ok = steps.iter().all(|s| s.outcome == Outcome::Certified);
    Ok(Certificate {
        target: params.label(),
        order: prep.order.to_string(),
        mu: prep.mu.mu().iter().map(|m| m.to_string()).collect(),
        degree_pattern: prep.pattern,
        steps,
        verdict: if all_ok {
            Verdict::OdCharacterizable { h: 1 }
        } else {
            Verdict::Inconclusive
        },
    })
}

/// The t(G) ≥ 3 three-way case split for U_4(q): (a) the ascending-sequence
/// bound; (b) the minimum-degree class pigeonhole (2δ ≤ |π|−3 with
/// |D_δ| > δ in a connected graph); (c) the |D_1 ∪ D_2| = 2 pair certified
/// nonadjacent by the reduced-sequence test.
fn u4_t_ge3_step(prep: &Prepared) -> Result<(Step, bool)> {
    let pattern = &prep.pattern;
    let n = pattern.len() as u32;
    let mut ascending = pattern.clone();
    ascending.sort_unstable();
    let d1 = ascending[0];

    // (a)
    if d1 as usize + 2 <= ascending.len() {
        let res = graph::t_ge3_by_sequence(&ascending)?;
        if res.is_certified() {
            let d_d1p2 = ascending[d1 as usize + 1];
            return Ok((
                step(
                    StepRule::TGe3,
                    "ascending degree sequence: d_1 + d_{d_1+2} <= |pi(G)| - 3 forces t(G) >= 3",
                    inputs(vec![
                        ("method", json!("ascending_sequence")),
                        ("ascending", json!(ascending)),
                        ("d_1", json!(d1)),
                        ("d_d1_plus_2", json!(d_d1p2)),
                        ("pi_minus_3", json!(n - 3)),
                    ]),
                    Outcome::Certified,
                ),
                true,
            ));
        }
    }

    // (b): 2δ <= |π| − 3 and |D_δ| > δ; D_δ cannot induce a complete graph
    // in a connected GK(G), so it holds a nonadjacent pair of degree sum 2δ
    let delta = d1;
    let d_delta = prep.gk.d_m_set(delta)?;
    if 2 * delta as u64 <= n as u64 - 3 && d_delta.len() as u32 > delta {
        return Ok((
            step(
                StepRule::TGe3,
                "minimum-degree class pigeonhole: |D_delta| > delta stops D_delta from being complete, giving a nonadjacent pair with degree sum 2*delta <= |pi(G)| - 3",
                inputs(vec![
                    ("method", json!("min_degree_class")),
                    ("delta", json!(delta)),
                    ("d_delta", json!(d_delta)),
                    ("two_delta", json!(2 * delta)),
                    ("pi_minus_3", json!(n - 3)),
                ]),
                Outcome::Certified,
            ),
            true,
        ));
    }

    // (c): |D_1 ∪ D_2| = 2 with a reduced-sequence nonadjacency certificate
    let mut low: Vec<u64> = prep.gk.d_m_set(1)?;
    low.extend(prep.gk.d_m_set(2)?);
    if low.len() == 2 {
        let verts = prep.gk.vertices();
        let i = verts.iter().position(|v| *v == low[0]).expect("vertex");
        let j = verts.iter().position(|v| *v == low[1]).expect("vertex");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let nonadj = graph::forced_nonadjacent(pattern, i, j)?;
        let degsum = pattern[i] as u64 + pattern[j] as u64;
        if nonadj && degsum <= n as u64 - 3 {
            return Ok((
                step(
                    StepRule::TGe3,
                    "the pair D_1 union D_2 is nonadjacent by the reduced-sequence test and has degree sum <= |pi(G)| - 3",
                    inputs(vec![
                        ("method", json!("low_degree_pair")),
                        ("pair", json!(low)),
                        ("reduced_sequence_nonadjacent", json!(nonadj)),
                        ("degree_sum", json!(degsum)),
                        ("pi_minus_3", json!(n - 3)),
                    ]),
                    Outcome::Certified,
                ),
                true,
            ));
        }
    }

    // (d): exhaustive fallback — every realization of the degree pattern has
    // independence number >= 3 iff no triangle-free graph realizes the
    // complement degrees. Needed for U_4(61), whose true degree pattern
    // (deg(1861) = 3) escapes the three sequence criteria above.
    let every = graph::alpha_ge3_in_every_realization(pattern)?;
    let complement: Vec<u32> = pattern.iter().map(|&d| n - 1 - d).collect();
    Ok((
        step(
            StepRule::TGe3,
            "exhaustive realization search: no triangle-free graph realizes the complement degrees, so every realization has an independent triple",
            inputs(vec![
                ("method", json!("realization_search")),
                ("degree_pattern", json!(pattern)),
                ("complement_degrees", json!(complement)),
                ("alpha_ge3_in_every_realization", json!(every)),
            ]),
            if every { Outcome::Certified } else { Outcome::Inconclusive },
        ),
        every,
    ))
}

// ---- certificate replay ----

fn parse_target(target: &str) -> Result<(u32, u64, u32)> {
    let rest = target
        .strip_prefix("U_")
        .ok_or_else(|| Error::InvalidParams(format!("unparseable target {}", target)))?;
    let open = rest
        .find('(')
        .ok_or_else(|| Error::InvalidParams("missing (".into()))?;
    let n: u32 = rest[..open]
        .parse()
        .map_err(|_| Error::InvalidParams("bad dimension".into()))?;
    let q: u64 = rest[open + 1..rest.len() - 1]
        .parse()
        .map_err(|_| Error::InvalidParams("bad q".into()))?;
    let f = FactoredInteger::factorize_u64(q)?;
    if f.factors().len() != 1 {
        return Err(Error::InvalidParams(format!("{} is not a prime power", q)));
    }
    let (p, k) = (
        f.factors()[0].0.to_u64().expect("fits"),
        f.factors()[0].1,
    );
    Ok((n, p, k))
}

fn input<'a>(s: &'a Step, key: &str) -> Result<&'a Value> {
    s.inputs
        .get(key)
        .ok_or_else(|| Error::Inconsistent(format!("step missing input {}", key)))
}

fn as_u64_vec(v: &Value) -> Vec<u64> {
    v.as_array()
        .map(|a| a.iter().filter_map(|x| x.as_u64()).collect())
        .unwrap_or_default()
}

fn as_u32_vec(v: &Value) -> Vec<u32> {
    as_u64_vec(v).into_iter().map(|x| x as u32).collect()
}

/// Independent checker: re-evaluates every step's rule on its recorded
/// inputs (re-running scans from the recorded parameters) and confirms each
/// recorded outcome. Never trusts the pipeline's intermediate state.
pub fn replay(cert: &Certificate) -> Result<()> {
    let (n, p, k) = parse_target(&cert.target)?;
    let prep = prepare(n, p, k)?;
    if prep.order.to_string() != cert.order {
        return Err(Error::Inconsistent("replayed order differs".into()));
    }
    if prep.pattern != cert.degree_pattern {
        return Err(Error::Inconsistent("replayed degree pattern differs".into()));
    }
    let mu_strings: Vec<String> = prep.mu.mu().iter().map(|m| m.to_string()).collect();
    if mu_strings != cert.mu {
        return Err(Error::Inconsistent("replayed mu differs".into()));
    }
    let fail = |rule: StepRule, why: &str| {
        Err(Error::Inconsistent(format!("replay of {:?}: {}", rule, why)))
    };
    for s in &cert.steps {
        let expect_certified = s.outcome == Outcome::Certified;
        match s.rule {
            StepRule::OrderPattern => {
                if input(s, "order")?.as_str() != Some(&cert.order) {
                    return fail(s.rule, "order input mismatch");
                }
            }
            StepRule::Connectivity => {
                let dmax = input(s, "delta_max")?.as_u64().unwrap_or(0);
                let dmin = input(s, "delta_min")?.as_u64().unwrap_or(0);
                let np = input(s, "num_primes")?.as_u64().unwrap_or(0);
                let holds = dmax + dmin >= np.saturating_sub(1);
                if holds != expect_certified {
                    return fail(s.rule, "degree bound disagrees with outcome");
                }
            }
            StepRule::T2Ge2 => {
                let deg2 = input(s, "deg_2")?.as_u64().unwrap_or(u64::MAX);
                let np = input(s, "num_primes")?.as_u64().unwrap_or(0);
                if (deg2 < np - 1) != expect_certified {
                    return fail(s.rule, "deg(2) bound disagrees with outcome");
                }
            }
            StepRule::TGe3 => {
                let method = input(s, "method")?.as_str().unwrap_or("");
                let holds = match method {
                    "ascending_sequence" => {
                        let asc = as_u32_vec(input(s, "ascending")?);
                        graph::t_ge3_by_sequence(&asc)?.is_certified()
                    }
                    "min_degree_class" => {
                        let delta = input(s, "delta")?.as_u64().unwrap_or(0);
                        let class = as_u64_vec(input(s, "d_delta")?);
                        let np = cert.degree_pattern.len() as u64;
                        2 * delta <= np - 3 && class.len() as u64 > delta
                    }
                    "low_degree_pair" => {
                        let pair = as_u64_vec(input(s, "pair")?);
                        let verts = prep.gk.vertices();
                        let i = verts.iter().position(|v| *v == pair[0]);
                        let j = verts.iter().position(|v| *v == pair[1]);
                        match (i, j) {
                            (Some(i), Some(j)) => {
                                let (i, j) = if i < j { (i, j) } else { (j, i) };
                                let nonadj =
                                    graph::forced_nonadjacent(&cert.degree_pattern, i, j)?;
                                let degsum = cert.degree_pattern[i] as u64
                                    + cert.degree_pattern[j] as u64;
                                nonadj && degsum <= cert.degree_pattern.len() as u64 - 3
                            }
                            _ => false,
                        }
                    }
                    "realization_search" => {
                        let pattern = as_u32_vec(input(s, "degree_pattern")?);
                        pattern == cert.degree_pattern
                            && graph::alpha_ge3_in_every_realization(&pattern)?
                    }
                    _ => false,
                };
                if holds != expect_certified {
                    return fail(s.rule, "independence criterion disagrees with outcome");
                }
            }
            StepRule::VasilievHypothesis => {
                let t = input(s, "t_ge_3_certified")?.as_bool().unwrap_or(false);
                let t2 = input(s, "t2_ge_2_certified")?.as_bool().unwrap_or(false);
                if (t && t2) != expect_certified {
                    return fail(s.rule, "premises disagree with outcome");
                }
            }
            StepRule::PiPrimeKernel => {
                let pi = as_u64_vec(input(s, "pi")?);
                if pi.is_empty() {
                    return fail(s.rule, "empty kernel prime set");
                }
                let derived = if n == 3 {
                    derive_u3_kernel_primes(&prep.params)?
                } else {
                    derive_u4_kernel_primes(&prep.params)?
                };
                if derived != pi.iter().copied().collect::<BTreeSet<u64>>() {
                    return fail(s.rule, "kernel primes differ from derivation");
                }
            }
            StepRule::CandidateScan => {
                let required = as_u64_vec(input(s, "required_primes")?);
                let found = catalog::candidates(&prep.order, &required)?;
                let labels: Vec<String> = found.iter().map(|c| c.label()).collect();
                let recorded: Vec<String> = input(s, "candidates")?
                    .as_array()
                    .map(|a| {
                        a.iter()
                            .filter_map(|x| x.as_str().map(|s| s.to_string()))
                            .collect()
                    })
                    .unwrap_or_default();
                if labels != recorded {
                    return fail(s.rule, "candidate list differs on re-scan");
                }
                let expected = vec![prep.params.label().replace(
                    &format!("({})", prep.params.q()),
                    &format!("({})", prep.params.q_label()),
                )];
                if (labels == expected) != expect_certified {
                    return fail(s.rule, "uniqueness disagrees with outcome");
                }
            }
            StepRule::LieScan => {
                let r = input(s, "r")?.as_u64().unwrap_or(0);
                let allowed: BTreeSet<u64> =
                    as_u64_vec(input(s, "allowed")?).into_iter().collect();
                let scan = catalog::lie_with_prime(r, &allowed)?;
                let labels: Vec<String> = scan.iter().map(|c| c.label()).collect();
                let recorded: Vec<String> = input(s, "candidates")?
                    .as_array()
                    .map(|a| {
                        a.iter()
                            .filter_map(|x| x.as_str().map(|s| s.to_string()))
                            .collect()
                    })
                    .unwrap_or_default();
                if labels != recorded {
                    return fail(s.rule, "Lie scan differs on re-scan");
                }
            }
            StepRule::OuterExclusion => {
                let exclusions = input(s, "exclusions")?
                    .as_array()
                    .cloned()
                    .unwrap_or_default();
                for e in &exclusions {
                    let missing = as_u64_vec(&e["missing_kernel_primes"]);
                    let outer = as_u64_vec(&e["outer_prime_set"]);
                    let excluded = e["excluded"].as_bool().unwrap_or(false);
                    let recheck =
                        !missing.is_empty() && missing.iter().all(|m| !outer.contains(m));
                    if recheck != excluded {
                        return fail(s.rule, "exclusion record fails recheck");
                    }
                }
                let survivors = input(s, "survivors")?
                    .as_array()
                    .map(|a| a.len())
                    .unwrap_or(0);
                if (survivors == 1) != expect_certified {
                    return fail(s.rule, "survivor count disagrees with outcome");
                }
            }
            StepRule::OrderComponents => {
                let recorded: Vec<String> = input(s, "order_components")?
                    .as_array()
                    .map(|a| {
                        a.iter()
                            .filter_map(|x| x.as_str().map(|s| s.to_string()))
                            .collect()
                    })
                    .unwrap_or_default();
                let oc = unitary::order_components(&prep.order, &prep.mu)?;
                let strings: Vec<String> = oc.iter().map(|m| m.to_string()).collect();
                if strings != recorded {
                    return fail(s.rule, "order components differ");
                }
            }
            StepRule::Literature => {
                if input(s, "h")?.as_u64().is_none() {
                    return fail(s.rule, "missing h");
                }
            }
        }
    }
    // verdict consistency
    let all_ok = cert.fully_certified();
    match &cert.verdict {
        Verdict::OdCharacterizable { h } => {
            if !all_ok || *h != 1 {
                return Err(Error::Inconsistent("verdict does not match steps".into()));
            }
        }
        Verdict::KFold { .. } => {}
        Verdict::Inconclusive => {
            if all_ok {
                return Err(Error::Inconsistent(
                    "all steps certified but verdict inconclusive".into(),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_u3_31_is_od_characterizable() {
        let cert = verify_u3(31, 1).unwrap();
        assert!(cert.is_od_characterizable());
        assert!(cert.fully_certified());
        let scan = cert
            .steps
            .iter()
            .find(|s| s.rule == StepRule::CandidateScan)
            .expect("scan step");
        assert_eq!(
            scan.inputs["candidates"],
            serde_json::json!(["U_3(31)"])
        );
    }

    #[test]
    fn verify_u3_61_case_split_uses_7_523() {
        let cert = verify_u3(61, 1).unwrap();
        assert!(cert.is_od_characterizable());
        let kernel_step = cert
            .steps
            .iter()
            .find(|s| s.rule == StepRule::PiPrimeKernel)
            .expect("kernel step");
        assert_eq!(kernel_step.inputs["pi"], serde_json::json!([7, 523]));
        assert!(cert
            .steps
            .iter()
            .any(|s| s.rule == StepRule::OrderComponents));
    }

    #[test]
    fn verify_u3_47_sequence_row() {
        let cert = verify_u3(47, 1).unwrap();
        let t = cert
            .steps
            .iter()
            .find(|s| s.rule == StepRule::TGe3)
            .expect("t step");
        assert_eq!(t.inputs["d_1"], serde_json::json!(1));
        assert_eq!(t.inputs["d_d1_plus_2"], serde_json::json!(1));
        assert_eq!(t.inputs["pi_minus_3"], serde_json::json!(3));
        assert_eq!(t.outcome, Outcome::Certified);
    }

    #[test]
    fn verify_u3_literature_routes() {
        let cert = verify_u3(7, 1).unwrap();
        assert!(cert.is_od_characterizable());
        assert!(cert.steps.iter().any(|s| s.rule == StepRule::Literature));
        let cert17 = verify_u3(17, 1).unwrap();
        assert!(cert17.is_od_characterizable());
    }

    #[test]
    fn verify_u3_27_is_honestly_inconclusive() {
        // q = 27 is covered by no prior-work criterion (π((q²−q+1)/d) =
        // {19, 37} has two elements) and the candidate scan finds genuine
        // impostors: |L_2(37)| and |2G_2(27)| both divide |U_3(27)| and are
        // divisible by 19·37. The chain must not pretend otherwise.
        let cert = verify_u3(3, 3).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        let scan = cert
            .steps
            .iter()
            .find(|s| s.rule == StepRule::CandidateScan)
            .expect("scan step");
        assert_eq!(
            scan.inputs["candidates"],
            serde_json::json!(["L_2(37)", "2G_2(3^3)", "U_3(3^3)"])
        );
    }

    #[test]
    fn verify_u4_2_records_two_fold() {
        let cert = verify_u4(2, 1).unwrap();
        assert_eq!(cert.verdict, Verdict::KFold { h: 2 });
    }

    #[test]
    fn verify_u4_9_via_candidate_scan() {
        let cert = verify_u4(3, 2).unwrap();
        assert!(cert.is_od_characterizable(), "{}", cert.to_json());
        let scan = cert
            .steps
            .iter()
            .find(|s| s.rule == StepRule::CandidateScan)
            .expect("scan");
        assert_eq!(scan.inputs["required_primes"], serde_json::json!([41, 73]));
        assert_eq!(scan.inputs["candidates"], serde_json::json!(["U_4(3^2)"]));
    }

    #[test]
    fn verify_u4_49_via_lie_scan() {
        let cert = verify_u4(7, 2).unwrap();
        assert!(cert.is_od_characterizable(), "{}", cert.to_json());
        let lie = cert
            .steps
            .iter()
            .find(|s| s.rule == StepRule::LieScan)
            .expect("lie scan");
        assert_eq!(lie.inputs["r"], serde_json::json!(1201));
        assert_eq!(
            lie.inputs["candidates"],
            serde_json::json!(["L_2(7^4)", "B_2(7^2)", "U_4(7^2)"])
        );
        assert_eq!(lie.inputs["mult_order_p_mod_r"], serde_json::json!(8));
        assert_eq!(lie.inputs["neg_order_p_mod_r"], serde_json::json!(4));
        let excl = cert
            .steps
            .iter()
            .find(|s| s.rule == StepRule::OuterExclusion)
            .expect("exclusion");
        assert_eq!(
            excl.inputs["survivors"],
            serde_json::json!(["U_4(7^2)"])
        );
    }

    #[test]
    fn table7_pi_sets_match() {
        assert_eq!(
            table7_pi_set(7, 2).unwrap(),
            [13u64, 181, 1201].into_iter().collect::<BTreeSet<_>>()
        );
        assert_eq!(
            table7_pi_set(83, 1).unwrap(),
            [5u64, 13, 53, 2269].into_iter().collect::<BTreeSet<_>>()
        );
        assert_eq!(
            table7_pi_set(71, 1).unwrap(),
            [1657u64, 2521].into_iter().collect::<BTreeSet<_>>()
        );
        assert!(table7_pi_set(31, 1).is_err());
    }

    #[test]
    fn replay_accepts_shipped_certificates() {
        for cert in [
            verify_u3(31, 1).unwrap(),
            verify_u3(61, 1).unwrap(),
            verify_u4(3, 2).unwrap(),
            verify_u4(7, 2).unwrap(),
            verify_u4(2, 1).unwrap(),
        ] {
            replay(&cert).unwrap_or_else(|e| panic!("replay of {}: {}", cert.target, e));
        }
    }

    #[test]
    fn certificate_json_is_stable() {
        let a = verify_u3(31, 1).unwrap().to_json();
        let b = verify_u3(31, 1).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"verdict\""));
        assert!(a.contains("od_characterizable"));
    }

    #[test]
    fn parse_target_roundtrip() {
        assert_eq!(parse_target("U_3(31)").unwrap(), (3, 31, 1));
        assert_eq!(parse_target("U_4(49)").unwrap(), (4, 7, 2));
        assert!(parse_target("L_2(7)").is_err());
        assert!(parse_target("U_3(12)").is_err());
    }
}
