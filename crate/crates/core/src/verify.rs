//! Runnable checks of the structural results about Chermak-Delgado
//! lattices. Every check returns a [`CheckReport`]; a failing report always
//! carries the first violating instance in canonical order.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::SubgroupAlgebra;
use crate::cd::{BruteEngine, CdResult};
use crate::class2::{CentralSubgroup, Class2Engine, Class2Presentation};
use crate::constructions::GroupRecipe;
use crate::error::Result;
use crate::fp_linalg::{
    enumerate_subspaces, is_prime, scalar_pair_solutions, subspace_count, Subspace,
};
use crate::group::{prime_power, CayleyGroup, SubgroupSet};
use crate::lattice::{FiniteLattice, LatticeIso};

/// Seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0x00c0_ffee;
/// Pairs examined by the Isaacs check before it switches to sampling.
pub const DEFAULT_TRIALS: usize = 20_000;
/// Class-2 groups whose subgroups over `Z0` number at most this many are
/// scanned exhaustively by the maximal-member check.
const CLASS2_FAMILY_LIMIT: u128 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not_applicable",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub subject: String,
    pub status: Status,
    pub witnesses: Value,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1e6).round() / 1e3)
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<15} {:<27} {}",
            self.status, self.check_name, self.subject
        )?;
        if self.status != Status::Pass {
            write!(f, "  {}", self.witnesses)?;
        }
        Ok(())
    }
}

/// Builds a report, timing `body`. `body` returns `Ok(evidence)` for a pass,
/// `Err((status, evidence))` otherwise.
fn timed(
    check_name: &str,
    subject: &str,
    body: impl FnOnce() -> std::result::Result<Value, (Status, Value)>,
) -> CheckReport {
    let start = Instant::now();
    let (status, witnesses) = match body() {
        Ok(v) => (Status::Pass, v),
        Err((s, v)) => (s, v),
    };
    CheckReport {
        check_name: check_name.into(),
        subject: subject.into(),
        status,
        witnesses,
        elapsed: start.elapsed(),
    }
}

fn fail(v: Value) -> (Status, Value) {
    (Status::Fail, v)
}

fn not_applicable(reason: impl Into<String>) -> (Status, Value) {
    (
        Status::NotApplicable,
        json!({ "hypothesis_failed": reason.into() }),
    )
}

fn engine_error(e: crate::error::Error) -> (Status, Value) {
    fail(json!({ "error": e.to_string() }))
}

/// Modularity, closure, double centralizers, the maximal member's own CD
/// lattice, and the minimal member's structure.
pub fn check_basic_properties<A: SubgroupAlgebra>(
    alg: &A,
    cd: &CdResult<A::Sub>,
    subject: &str,
) -> CheckReport {
    timed("basic-properties", subject, || {
        let d = |h: &A::Sub| alg.describe(h);
        let lattice = cd.to_lattice();
        if let Some((a, b, c)) = lattice.modularity_witness() {
            return Err(fail(json!({
                "property": "modular",
                "triple": [d(&cd.members[a].subgroup), d(&cd.members[b].subgroup), d(&cd.members[c].subgroup)],
            })));
        }
        for (i, a) in cd.members.iter().enumerate() {
            for b in &cd.members[i..] {
                let (h, k) = (&a.subgroup, &b.subgroup);
                let join_ok = cd.contains(&alg.join(h, k)) && alg.product_is_join(h, k);
                let meet_ok = cd.contains(&alg.meet(h, k)) && alg.centralizer_of_meet_splits(h, k);
                if !join_ok || !meet_ok {
                    return Err(fail(json!({
                        "property": if join_ok { "meet" } else { "join" },
                        "pair": [d(h), d(k)],
                    })));
                }
            }
        }
        for m in &cd.members {
            let c = alg.centralizer(&m.subgroup);
            if !cd.contains(&c) || alg.centralizer(&c) != m.subgroup {
                return Err(fail(
                    json!({ "property": "double centralizer", "member": d(&m.subgroup) }),
                ));
            }
        }
        if let Err(w) = duality_evidence(alg, cd) {
            return Err(fail(w));
        }
        let top = &cd.maximal().subgroup;
        let within = alg.cd_within(top).map_err(engine_error)?;
        let same =
            within.len() == cd.len() && within.subgroups().zip(cd.subgroups()).all(|(a, b)| a == b);
        if !same || within.max_measure != cd.max_measure {
            return Err(fail(json!({
                "property": "maximal member",
                "maximal": d(top),
                "cd_of_maximal": within.subgroups().map(d).collect::<Vec<_>>(),
            })));
        }
        let bottom = &cd.minimal().subgroup;
        if !alg.is_abelian(bottom) || !alg.is_subset(&alg.center(), bottom) {
            return Err(fail(
                json!({ "property": "minimal member", "minimal": d(bottom) }),
            ));
        }
        Ok(json!({ "members": cd.len(), "max_measure": cd.max_measure.to_string() }))
    })
}

/// The centralizer map on members is an order-reversing involution that
/// preserves the measure; also confirmed as an anti-automorphism of the
/// abstract lattice.
pub fn check_duality<A: SubgroupAlgebra>(
    alg: &A,
    cd: &CdResult<A::Sub>,
    subject: &str,
) -> CheckReport {
    timed("duality", subject, || {
        duality_evidence(alg, cd).map_err(fail)
    })
}

fn duality_evidence<A: SubgroupAlgebra>(
    alg: &A,
    cd: &CdResult<A::Sub>,
) -> std::result::Result<Value, Value> {
    let d = |i: usize| alg.describe(&cd.members[i].subgroup);
    for (i, m) in cd.members.iter().enumerate() {
        let j = cd.duality[i];
        if alg.centralizer(&m.subgroup) != cd.members[j].subgroup || cd.duality[j] != i {
            return Err(json!({ "property": "involution", "member": d(i) }));
        }
        if alg.measure_value(&cd.members[j].subgroup) != cd.max_measure.value().unwrap_or(u128::MAX)
        {
            return Err(json!({ "property": "measure", "member": d(j) }));
        }
    }
    let lattice = cd.to_lattice();
    let iso = LatticeIso {
        mapping: cd.duality.clone(),
        reverses_order: true,
    };
    if !lattice.verify_map(&lattice, &iso) {
        let (i, j) = (0..cd.len())
            .flat_map(|i| (0..cd.len()).map(move |j| (i, j)))
            .find(|&(i, j)| lattice.leq(i, j) != lattice.leq(cd.duality[j], cd.duality[i]))
            .unwrap_or((0, 0));
        return Err(json!({ "property": "order reversal", "pair": [d(i), d(j)] }));
    }
    Ok(json!({ "members": cd.len(), "duality": cd.duality }))
}

/// `m(H) m(K) <= m(<H,K>) m(H ∩ K)`, with equality exactly when
/// `HK = <H,K>` and `C(H ∩ K) = C(H) C(K)`. All pairs when there are at most
/// `trials` of them, otherwise `trials` pairs drawn with `seed`.
pub fn check_isaacs_inequality<A: SubgroupAlgebra>(
    alg: &A,
    subgroups: &[A::Sub],
    trials: usize,
    seed: u64,
    subject: &str,
) -> CheckReport {
    timed("isaacs-inequality", subject, || {
        let n = subgroups.len();
        let exhaustive = n.saturating_mul(n) <= trials;
        let pairs: Vec<(usize, usize)> = if exhaustive {
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<(usize, usize)> = (0..trials)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            v.sort_unstable();
            v
        };
        let mut equalities = 0usize;
        for &(i, j) in &pairs {
            let (h, k) = (&subgroups[i], &subgroups[j]);
            let lhs = alg.measure_value(h) * alg.measure_value(k);
            let rhs = alg.measure_value(&alg.join(h, k)) * alg.measure_value(&alg.meet(h, k));
            let criterion = alg.product_is_join(h, k) && alg.centralizer_of_meet_splits(h, k);
            if lhs > rhs || (lhs == rhs) != criterion {
                return Err(fail(json!({
                    "pair": [alg.describe(h), alg.describe(k)],
                    "lhs": lhs.to_string(),
                    "rhs": rhs.to_string(),
                    "criterion": criterion,
                })));
            }
            equalities += (lhs == rhs) as usize;
        }
        let mut evidence =
            json!({ "pairs": pairs.len(), "equalities": equalities, "exhaustive": exhaustive });
        if !exhaustive {
            evidence["seed"] = json!(seed);
        }
        Ok(evidence)
    })
}

/// For every chain `K <= H`: `m_H(K) m_G(H) <= m_H(H) m_G(K)`, with equality
/// exactly when `C_G(K) <= H C_G(H)`.
pub fn check_ratio_lemma<A: SubgroupAlgebra>(
    alg: &A,
    subgroups: &[A::Sub],
    subject: &str,
) -> CheckReport {
    timed("ratio-lemma", subject, || {
        let mut chains = 0usize;
        for h in subgroups {
            let ch = alg.centralizer(h);
            let m_gh = alg.order(h) * alg.order(&ch);
            let m_hh = alg.order(h) * alg.order(&alg.meet(&ch, h));
            let h_ch = alg.join(h, &ch);
            for k in subgroups.iter().filter(|k| alg.is_subset(k, h)) {
                let ck = alg.centralizer(k);
                let m_gk = alg.order(k) * alg.order(&ck);
                let m_hk = alg.order(k) * alg.order(&alg.meet(&ck, h));
                let (lhs, rhs) = (m_hk * m_gh, m_hh * m_gk);
                let criterion = alg.is_subset(&ck, &h_ch);
                if lhs > rhs || (lhs == rhs) != criterion {
                    return Err(fail(json!({
                        "chain": [alg.describe(k), alg.describe(h)],
                        "lhs": lhs.to_string(),
                        "rhs": rhs.to_string(),
                        "criterion": criterion,
                    })));
                }
                chains += 1;
            }
        }
        Ok(json!({ "chains": chains }))
    })
}

/// Every `H` with `G = H C_G(H)` and `H ∈ CD(H)` lies in the maximal member
/// of `CD(G)`.
pub fn check_maximal_member_lemma<A: SubgroupAlgebra>(
    alg: &A,
    cd: &CdResult<A::Sub>,
    candidates: &[A::Sub],
    subject: &str,
) -> CheckReport {
    timed("maximal-member", subject, || {
        let top = &cd.maximal().subgroup;
        let whole = alg.order(&alg.whole());
        let mut qualifying = 0usize;
        for h in candidates {
            if alg.product_order(h, &alg.centralizer(h)) != whole {
                continue;
            }
            let own = alg.cd_within(h).map_err(engine_error)?;
            if !own.contains(h) {
                continue;
            }
            qualifying += 1;
            if !alg.is_subset(h, top) {
                return Err(fail(
                    json!({ "subgroup": alg.describe(h), "maximal": alg.describe(top) }),
                ));
            }
        }
        Ok(json!({ "candidates": candidates.len(), "satisfying_hypotheses": qualifying }))
    })
}

/// For each member `H`, `CD(H)` computed on its own equals the interval
/// `[Z(H), H]` of `CD(G)`.
pub fn check_interval_theorem<A: SubgroupAlgebra>(
    alg: &A,
    cd: &CdResult<A::Sub>,
    subject: &str,
) -> CheckReport {
    timed("interval-theorem", subject, || {
        for m in &cd.members {
            let h = &m.subgroup;
            let zh = alg.meet(h, &alg.centralizer(h));
            let interval: Vec<&A::Sub> = match cd.interval(&zh, h) {
                Ok(v) => v.into_iter().map(|m| &m.subgroup).collect(),
                Err(_) => {
                    return Err(fail(
                        json!({ "member": alg.describe(h), "center_not_member": alg.describe(&zh) }),
                    ))
                }
            };
            let own = alg.cd_within(h).map_err(engine_error)?;
            if !own.subgroups().eq(interval.iter().copied()) {
                return Err(fail(json!({
                    "member": alg.describe(h),
                    "cd_of_member": own.subgroups().map(|s| alg.describe(s)).collect::<Vec<_>>(),
                    "interval": interval.iter().map(|s| alg.describe(s)).collect::<Vec<_>>(),
                })));
            }
        }
        Ok(json!({ "members": cd.len() }))
    })
}

/// Every interval of `CD(G)` of length 2 and width `w >= 3` has an
/// elementary abelian quotient of order `p^(2a)` split evenly by its atoms,
/// with `w = p^b + 1`; longer intervals built from such pieces have
/// elementary abelian quotients of order `p^(a * length)`.
pub fn check_quasi_antichain_intervals<A: SubgroupAlgebra>(
    alg: &A,
    cd: &CdResult<A::Sub>,
    subject: &str,
) -> CheckReport {
    timed("quasi-antichain-intervals", subject, || {
        let lattice = cd.to_lattice();
        let sub = |i: usize| &cd.members[i].subgroup;
        let d = |i: usize| alg.describe(sub(i));
        let mut examined = 0usize;
        let mut widths = std::collections::BTreeSet::new();
        for lo in 0..lattice.len() {
            for hi in 0..lattice.len() {
                if lo == hi || !lattice.leq(lo, hi) || lattice.rank(hi) < lattice.rank(lo) + 2 {
                    continue;
                }
                let (interval, elems) = lattice.interval(lo, hi).map_err(engine_error)?;
                let length = interval.height();
                if length < 2 {
                    continue;
                }
                // every length-2 subinterval must be a wide quasi-antichain
                let all_wide = (0..interval.len()).all(|x| {
                    (0..interval.len()).all(|y| {
                        !(interval.leq(x, y) && interval.rank(y) == interval.rank(x) + 2)
                            || interval
                                .interval(x, y)
                                .ok()
                                .and_then(|(s, _)| s.quasi_antichain_width())
                                .is_some_and(|w| w >= 3)
                    })
                });
                if !all_wide {
                    continue;
                }
                examined += 1;
                let index = alg.order(sub(hi)) / alg.order(sub(lo));
                let Some((p, e)) = prime_power(index) else {
                    return Err(fail(
                        json!({ "interval": [d(lo), d(hi)], "index": index.to_string() }),
                    ));
                };
                let p = p as u32;
                if !(e as usize).is_multiple_of(length) {
                    return Err(fail(
                        json!({ "interval": [d(lo), d(hi)], "index_exponent": e, "length": length }),
                    ));
                }
                let a = e / length as u32;
                if !alg
                    .quotient_is_elementary_abelian(sub(hi), sub(lo), p)
                    .unwrap_or(false)
                {
                    return Err(fail(
                        json!({ "interval": [d(lo), d(hi)], "property": "elementary abelian quotient" }),
                    ));
                }
                let step = checked(p, a);
                for &(x, y) in interval.covers() {
                    let (x, y) = (elems[x], elems[y]);
                    if alg.order(sub(y)) / alg.order(sub(x)) != step {
                        return Err(fail(
                            json!({ "interval": [d(lo), d(hi)], "uneven_cover": [d(x), d(y)] }),
                        ));
                    }
                }
                if length == 2 {
                    let w = interval.len() - 2;
                    widths.insert(w);
                    if !(1..64).any(|b| checked(p, b) + 1 == w as u128) {
                        return Err(fail(json!({ "interval": [d(lo), d(hi)], "width": w })));
                    }
                    for k in interval.atoms() {
                        let k = elems[k];
                        if !alg.is_normal_in(sub(k), sub(hi)) || !alg.is_normal_in(sub(lo), sub(hi))
                        {
                            return Err(fail(
                                json!({ "interval": [d(lo), d(hi)], "not_normal": d(k) }),
                            ));
                        }
                    }
                }
            }
        }
        Ok(json!({ "intervals": examined, "widths": widths }))
    })
}

fn checked(p: u32, e: u32) -> u128 {
    crate::fp_linalg::checked_pow(p as u64, e).unwrap_or(u128::MAX)
}

/// `(p, n)` with `L` isomorphic to the subspace lattice of `F_p^n`, `n >= 2`.
fn subspace_lattice_type(lattice: &FiniteLattice) -> Result<Option<(u32, usize)>> {
    let n = lattice.height();
    let atoms = lattice.atoms().len() as u128;
    if n < 2 {
        return Ok(None);
    }
    for p in 2..=atoms.min(u32::MAX as u128) as u32 {
        if !is_prime(p as u64) {
            continue;
        }
        let lines = (checked(p, n as u32) - 1) / (p as u128 - 1);
        if lines > atoms {
            break;
        }
        if lines == atoms && subspace_count(n, p as u64)? == lattice.len() as u128 {
            let (reference, _) = FiniteLattice::subspace_lattice(p, n)?;
            if lattice.find_isomorphism(&reference)?.is_some() {
                return Ok(Some((p, n)));
            }
        }
    }
    Ok(None)
}

/// When `G ∈ CD(G)` and `CD(G) ≅ L(E_{p^n})` with `n >= 2`: `G` has class at
/// most 2, its Sylow `p`-subgroup `P` has `P/Z(P)` elementary abelian, the
/// `p'`-part is abelian and central, and `CD(G) ≅ CD(P)`.
pub fn check_theorem_a(
    engine: &BruteEngine<'_>,
    cd: &CdResult<SubgroupSet>,
    subject: &str,
) -> CheckReport {
    timed("theorem-a", subject, || {
        let g = engine.group();
        if !cd.contains(&g.whole()) {
            return Err(not_applicable("G is not a member of CD(G)"));
        }
        let lattice = cd.to_lattice();
        let Some((p, n)) = subspace_lattice_type(&lattice).map_err(engine_error)? else {
            return Err(not_applicable(
                "CD(G) is not a subspace lattice of dimension at least 2",
            ));
        };
        match g.nilpotency_class() {
            Some(c) if c <= 2 => {}
            c => return Err(fail(json!({ "property": "class at most 2", "class": c }))),
        }
        let p_part: Vec<usize> = (0..g.order())
            .filter(|&x| {
                prime_power(g.element_order(x) as u128)
                    .map_or(g.element_order(x) == 1, |(q, _)| q == p as u64)
            })
            .collect();
        let q_part: Vec<usize> = (0..g.order())
            .filter(|&x| !g.element_order(x).is_multiple_of(p as usize))
            .collect();
        let sylow = g.subgroup(&p_part).map_err(engine_error)?;
        let hall = g.subgroup(&q_part).map_err(engine_error)?;
        if sylow.order() * hall.order() != g.order() {
            return Err(fail(
                json!({ "property": "direct decomposition", "sylow": sylow.order(), "hall": hall.order() }),
            ));
        }
        let z_sylow = g.intersect(&sylow, &g.centralizer(&sylow));
        if !g
            .quotient_is_elementary_abelian(&sylow, &z_sylow, p)
            .map_err(engine_error)?
        {
            return Err(fail(
                json!({ "property": "P/Z(P) elementary abelian", "sylow": engine.describe(&sylow) }),
            ));
        }
        if !g.is_abelian_subgroup(&hall) || !hall.is_subset(&g.center()) {
            return Err(fail(
                json!({ "property": "p'-part abelian and central", "hall": engine.describe(&hall) }),
            ));
        }
        let cd_p = engine.cd_within(&sylow).map_err(engine_error)?;
        if cd_p
            .to_lattice()
            .find_isomorphism(&lattice)
            .map_err(engine_error)?
            .is_none()
        {
            return Err(fail(
                json!({ "property": "CD(G) isomorphic to CD(P)", "cd_p_members": cd_p.len() }),
            ));
        }
        Ok(json!({ "p": p, "n": n, "sylow_order": sylow.order(), "hall_order": hall.order() }))
    })
}

/// The class-2 form of [`check_theorem_a`]: a presentation's group is a
/// `p`-group of class at most 2, so the conclusions reduce to `G/Z(G)`
/// being elementary abelian, which holds when the radical of the
/// commutator form is trivial; the check also confirms the group is special.
pub fn check_theorem_a_class2(
    engine: &Class2Engine<'_>,
    cd: &CdResult<CentralSubgroup>,
    subject: &str,
) -> CheckReport {
    timed("theorem-a", subject, || {
        let pres = engine.presentation();
        if !cd.contains(&engine.whole()) {
            return Err(not_applicable("G is not a member of CD(G)"));
        }
        let Some((p, n)) = subspace_lattice_type(&cd.to_lattice()).map_err(engine_error)? else {
            return Err(not_applicable(
                "CD(G) is not a subspace lattice of dimension at least 2",
            ));
        };
        let special = special_evidence(pres);
        if special["center_is_z0"] != json!(true) || special["derived_is_z0"] != json!(true) {
            return Err(fail(
                json!({ "property": "special p-group", "evidence": special }),
            ));
        }
        Ok(json!({ "p": p, "n": n, "special": special }))
    })
}

fn special_evidence(pres: &Class2Presentation) -> Value {
    let radical = pres.radical();
    let values: Vec<Vec<i64>> = (0..pres.r())
        .flat_map(|i| (0..pres.r()).map(move |j| (i, j)))
        .map(|(i, j)| {
            pres.commutator_value(i, j)
                .iter()
                .map(|&x| x as i64)
                .collect()
        })
        .collect();
    let derived = Subspace::span(pres.p(), pres.s(), &values)
        .map(|s| s.dim())
        .unwrap_or(0);
    json!({
        "center_is_z0": radical.dim() == 0,
        "derived_is_z0": derived == pres.s(),
        "central_rank": pres.s(),
    })
}

/// `G_n` realises the subspace lattice: `m* = p^(3n+6)`, members are exactly
/// the `U^φ` with `|U^φ| = p^(3 dim U + 3)`, centralizers are `(U^⊥)^φ`, and
/// `U -> U^φ` is a lattice isomorphism.
pub fn check_theorem_b(p: u32, n: usize, budget: u128) -> Result<CheckReport> {
    let recipe =
        GroupRecipe::build_with("paper_Gn", &[("p", &p.to_string()), ("n", &n.to_string())])?;
    let pres = recipe.presentation().expect("class2 recipe");
    let start = Instant::now();
    let cd = pres.cd_lattice(budget)?;
    let mut report = timed("theorem-b", &recipe.display_name(), || {
        let exponent = cd.max_measure.exponent();
        if exponent != Some(3 * n as u32 + 6) {
            return Err(fail(
                json!({ "property": "max measure", "exponent": exponent, "expected": 3 * n + 6 }),
            ));
        }
        let subspaces: Vec<Subspace> = enumerate_subspaces(p, n, None)
            .map_err(engine_error)?
            .collect();
        let mut phi: HashMap<CentralSubgroup, usize> = HashMap::new();
        for (i, u) in subspaces.iter().enumerate() {
            let image = recipe.u_phi(u).map_err(engine_error)?;
            if image.order_exponent() != 3 * u.dim() as u32 + 3 {
                return Err(fail(
                    json!({ "property": "order of U^phi", "u": u.basis().row_vecs() }),
                ));
            }
            phi.insert(image, i);
        }
        let mut mapping = vec![usize::MAX; subspaces.len()];
        for (k, m) in cd.members.iter().enumerate() {
            let Some(&i) = phi.get(&m.subgroup) else {
                return Err(fail(
                    json!({ "property": "member is some U^phi", "member": format!("{:?}", m.subgroup) }),
                ));
            };
            if m.subgroup.order_exponent() % 3 != 0 {
                return Err(fail(
                    json!({ "property": "member order p^(3m+3)", "member": format!("{:?}", m.subgroup) }),
                ));
            }
            mapping[i] = k;
            let perp = recipe
                .u_phi(&subspaces[i].dot_perp())
                .map_err(engine_error)?;
            if cd.members[cd.duality[k]].subgroup != perp {
                return Err(fail(
                    json!({ "property": "centralizer is (U^perp)^phi", "u": subspaces[i].basis().row_vecs() }),
                ));
            }
        }
        if mapping.contains(&usize::MAX) || cd.len() != subspaces.len() {
            return Err(fail(
                json!({ "property": "member count", "members": cd.len(), "subspaces": subspaces.len() }),
            ));
        }
        let (reference, _) = FiniteLattice::subspace_lattice(p, n).map_err(engine_error)?;
        let lattice = cd.to_lattice();
        let explicit = LatticeIso {
            mapping,
            reverses_order: false,
        };
        if !reference.verify_map(&lattice, &explicit) {
            return Err(fail(
                json!({ "property": "U -> U^phi is a lattice isomorphism" }),
            ));
        }
        let found = reference.find_isomorphism(&lattice).map_err(engine_error)?;
        if found.is_none() {
            return Err(fail(json!({ "property": "isomorphism search" })));
        }
        Ok(
            json!({ "members": cd.len(), "max_measure": cd.max_measure.to_string(), "phi": explicit.mapping }),
        )
    });
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `[v^φ, ṽ^φ] = 1` exactly when `v · ṽ = 0`, over all pairs of vectors,
/// using element commutators of the generating lifts.
pub fn check_commuting_criterion(p: u32, n: usize) -> Result<CheckReport> {
    let recipe =
        GroupRecipe::build_with("paper_Gn", &[("p", &p.to_string()), ("n", &n.to_string())])?;
    let pres = recipe.presentation().expect("class2 recipe").clone();
    let vectors = Subspace::full(p, n)?.elements();
    Ok(timed("commuting-criterion", &recipe.display_name(), || {
        let lifts = |v: &[u32]| -> Vec<_> {
            (0..3)
                .map(|slot| {
                    let mut a = vec![0u32; 3 * n];
                    for (i, &s) in v.iter().enumerate() {
                        a[3 * i + slot] = s;
                    }
                    pres.lift(&a)
                })
                .collect()
        };
        let identity = pres.identity();
        for v in &vectors {
            let lv = lifts(v);
            for u in &vectors {
                let lu = lifts(u);
                let commute = lv
                    .iter()
                    .all(|g| lu.iter().all(|h| pres.commutator(g, h) == identity));
                let dot = v
                    .iter()
                    .zip(u)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % p as u64;
                if commute != (dot == 0) {
                    return Err(fail(
                        json!({ "v": v, "u": u, "commute": commute, "dot": dot }),
                    ));
                }
            }
        }
        Ok(json!({ "pairs": vectors.len() * vectors.len() }))
    }))
}

/// The pairs `(A, B)` of `n x n` matrices with `AZ = ZB` for every
/// antisymmetric `Z` are exactly the scalar pairs `(λI, λI)` when `n >= 3`.
pub fn check_scalar_matrix_lemma(n: usize, p: u32) -> Result<CheckReport> {
    let solutions = scalar_pair_solutions(n, p)?;
    Ok(timed(
        "scalar-matrix-lemma",
        &format!("n={n} p={p}"),
        || {
            let dim = solutions.dim();
            if n < 3 {
                return Err((
                    Status::NotApplicable,
                    json!({ "hypothesis_failed": "n >= 3", "solution_dimension": dim }),
                ));
            }
            let mut identity_pair = vec![0i64; 2 * n * n];
            for r in 0..n {
                identity_pair[r * n + r] = 1;
                identity_pair[n * n + r * n + r] = 1;
            }
            let scalar = Subspace::span(p, 2 * n * n, &[identity_pair]).map_err(engine_error)?;
            if dim != 1 || solutions != scalar {
                return Err(fail(
                    json!({ "solution_dimension": dim, "basis": solutions.basis().row_vecs() }),
                ));
            }
            Ok(json!({ "solution_dimension": 1 }))
        },
    ))
}

/// Brute force on the Cayley table of a presentation agrees with the class-2
/// engine on `m*` and on the member set.
pub fn check_engine_agreement(pres: &Class2Presentation, cap: usize, subject: &str) -> CheckReport {
    timed("engine-agreement", subject, || {
        let table = pres.to_cayley(cap).map_err(engine_error)?;
        let brute = BruteEngine::with_cap(&table, cap)
            .cd_lattice()
            .map_err(engine_error)?;
        let class2 = Class2Engine::new(pres).cd_lattice().map_err(engine_error)?;
        if brute.max_measure != class2.max_measure {
            return Err(fail(json!({
                "brute_max": brute.max_measure.to_string(),
                "class2_max": class2.max_measure.to_string(),
            })));
        }
        let mut lifted = Vec::with_capacity(class2.len());
        for m in &class2.members {
            let indices = pres
                .preimage_indices(m.subgroup.subspace())
                .map_err(engine_error)?;
            lifted.push(table.subgroup(&indices).map_err(engine_error)?);
        }
        lifted.sort();
        if !lifted.iter().eq(brute.subgroups()) {
            let first = lifted
                .iter()
                .zip(brute.subgroups())
                .position(|(a, b)| a != b)
                .unwrap_or(lifted.len().min(brute.len()));
            return Err(fail(json!({
                "brute_members": brute.len(),
                "class2_members": class2.len(),
                "first_difference": first,
            })));
        }
        Ok(json!({ "members": brute.len(), "max_measure": brute.max_measure.to_string() }))
    })
}

/// Names accepted by [`run_suite`], in canonical order.
pub const CHECK_NAMES: [&str; 12] = [
    "basic-properties",
    "commuting-criterion",
    "duality",
    "engine-agreement",
    "interval-theorem",
    "isaacs-inequality",
    "maximal-member",
    "quasi-antichain-intervals",
    "ratio-lemma",
    "scalar-matrix-lemma",
    "theorem-a",
    "theorem-b",
];

/// Checks that take a group; the others take parameters.
const GROUP_CHECKS: [&str; 9] = [
    "basic-properties",
    "duality",
    "engine-agreement",
    "interval-theorem",
    "isaacs-inequality",
    "maximal-member",
    "quasi-antichain-intervals",
    "ratio-lemma",
    "theorem-a",
];

/// The builtin corpus as `(name, params)` pairs.
pub fn default_corpus() -> Vec<(&'static str, Vec<(&'static str, &'static str)>)> {
    vec![
        ("cyclic", vec![("n", "12")]),
        ("symmetric3", vec![]),
        ("dihedral", vec![("n", "8")]),
        ("quaternion", vec![("n", "8")]),
        (
            "extraspecial",
            vec![("p", "2"), ("n", "2"), ("type", "plus"), ("repr", "cayley")],
        ),
        (
            "extraspecial",
            vec![
                ("p", "2"),
                ("n", "2"),
                ("type", "minus"),
                ("repr", "cayley"),
            ],
        ),
        ("paper_P", vec![("p", "2")]),
        ("paper_P", vec![("p", "3")]),
        ("paper_Gn", vec![("p", "2"), ("n", "2")]),
        ("paper_Gn", vec![("p", "3"), ("n", "2")]),
    ]
}

/// Parameters for the parameterised checks run by the full suite.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub cap: usize,
    pub budget: u128,
    pub seed: u64,
    pub trials: usize,
    /// `(p, n)` pairs for `theorem-b` and `commuting-criterion`.
    pub gn_params: Vec<(u32, usize)>,
    /// `(n, p)` pairs for `scalar-matrix-lemma`.
    pub scalar_params: Vec<(usize, u32)>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            cap: crate::group::DEFAULT_ORDER_CAP,
            budget: crate::class2::DEFAULT_SUBSPACE_BUDGET,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            gn_params: vec![(2, 1), (3, 1), (2, 2), (3, 2)],
            scalar_params: vec![(2, 2), (3, 2), (3, 3), (4, 5)],
        }
    }
}

/// Runs the named checks (all when `names` is empty) over `corpus`; reports
/// come back sorted by check name, then in corpus order.
pub fn run_suite(
    names: &[&str],
    corpus: &[GroupRecipe],
    options: &SuiteOptions,
) -> Result<Vec<CheckReport>> {
    let selected: Vec<&str> = if names.is_empty() {
        CHECK_NAMES.to_vec()
    } else {
        let mut v = Vec::new();
        for &name in names {
            let Some(&known) = CHECK_NAMES.iter().find(|&&c| c == name) else {
                return Err(crate::error::Error::Input(format!(
                    "unknown check `{name}`"
                )));
            };
            if !v.contains(&known) {
                v.push(known);
            }
        }
        v.sort_unstable();
        v
    };
    let group_checks: Vec<&str> = selected
        .iter()
        .copied()
        .filter(|c| GROUP_CHECKS.contains(c))
        .collect();
    let per_group: Vec<Vec<CheckReport>> = {
        use rayon::prelude::*;
        corpus
            .par_iter()
            .map(|recipe| group_reports(recipe, &group_checks, options))
            .collect::<Result<_>>()?
    };
    let mut reports: Vec<CheckReport> = per_group.into_iter().flatten().collect();
    for &name in &selected {
        match name {
            "theorem-b" => {
                for &(p, n) in &options.gn_params {
                    reports.push(check_theorem_b(p, n, options.budget)?);
                }
            }
            "commuting-criterion" => {
                for &(p, n) in &options.gn_params {
                    reports.push(check_commuting_criterion(p, n)?);
                }
            }
            "scalar-matrix-lemma" => {
                for &(n, p) in &options.scalar_params {
                    reports.push(check_scalar_matrix_lemma(n, p)?);
                }
            }
            _ => {}
        }
    }
    // stable: corpus order is kept within each check
    reports.sort_by_key(|r| CHECK_NAMES.iter().position(|&c| c == r.check_name));
    Ok(reports)
}

fn group_reports(
    recipe: &GroupRecipe,
    checks: &[&str],
    options: &SuiteOptions,
) -> Result<Vec<CheckReport>> {
    let subject = recipe.display_name();
    let mut out = Vec::new();
    match &recipe.product {
        crate::constructions::GroupProduct::Cayley(g) => {
            let engine = BruteEngine::with_cap(g, options.cap);
            let cd = engine.cd_lattice()?;
            let subgroups = engine.subgroups()?.to_vec();
            for &check in checks {
                out.push(match check {
                    "basic-properties" => check_basic_properties(&engine, &cd, &subject),
                    "duality" => check_duality(&engine, &cd, &subject),
                    "interval-theorem" => check_interval_theorem(&engine, &cd, &subject),
                    "isaacs-inequality" => check_isaacs_inequality(
                        &engine,
                        &subgroups,
                        options.trials,
                        options.seed,
                        &subject,
                    ),
                    "maximal-member" => {
                        check_maximal_member_lemma(&engine, &cd, &subgroups, &subject)
                    }
                    "quasi-antichain-intervals" => {
                        check_quasi_antichain_intervals(&engine, &cd, &subject)
                    }
                    "ratio-lemma" => check_ratio_lemma(&engine, &subgroups, &subject),
                    "theorem-a" => check_theorem_a(&engine, &cd, &subject),
                    _ => continue,
                });
            }
        }
        crate::constructions::GroupProduct::Class2(pres) => {
            let engine = Class2Engine::with_budget(pres, options.budget);
            let cd = engine.cd_lattice()?;
            let family = class2_family(recipe, pres)?;
            for &check in checks {
                out.push(match check {
                    "basic-properties" => check_basic_properties(&engine, &cd, &subject),
                    "duality" => check_duality(&engine, &cd, &subject),
                    "interval-theorem" => check_interval_theorem(&engine, &cd, &subject),
                    "maximal-member" => check_maximal_member_lemma(&engine, &cd, &family, &subject),
                    "quasi-antichain-intervals" => {
                        check_quasi_antichain_intervals(&engine, &cd, &subject)
                    }
                    "theorem-a" => check_theorem_a_class2(&engine, &cd, &subject),
                    "engine-agreement"
                        if checked(pres.p(), pres.order_exponent()) <= options.cap as u128 =>
                    {
                        check_engine_agreement(pres, options.cap, &subject)
                    }
                    _ => continue,
                });
            }
        }
    }
    Ok(out)
}

/// Subgroups over `Z0` examined by the maximal-member check: all of them
/// when few, otherwise the factors `P_i` of a `G_n` (plus `Z0` and `G`).
fn class2_family(recipe: &GroupRecipe, pres: &Class2Presentation) -> Result<Vec<CentralSubgroup>> {
    if subspace_count(pres.r(), pres.p() as u64)? <= CLASS2_FAMILY_LIMIT {
        return enumerate_subspaces(pres.p(), pres.r(), None)?
            .map(|w| pres.central_subgroup(w))
            .collect();
    }
    let mut family = vec![pres.central_subgroup(Subspace::zero(pres.p(), pres.r())?)?];
    if let Some((_, n)) = recipe.gn_params() {
        for i in 0..n {
            family.push(recipe.factor(i)?);
        }
    }
    family.push(pres.central_subgroup(Subspace::full(pres.p(), pres.r())?)?);
    Ok(family)
}

/// Cayley table of a corpus entry for the brute-force checks.
pub fn cayley_of(recipe: &GroupRecipe, cap: usize) -> Result<CayleyGroup> {
    match &recipe.product {
        crate::constructions::GroupProduct::Cayley(g) => Ok(g.clone()),
        crate::constructions::GroupProduct::Class2(p) => p.to_cayley(cap),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dihedral, paper_gn, quaternion8, symmetric3};

    #[test]
    fn brute_checks_pass_on_small_groups() {
        for g in [
            dihedral(8).unwrap(),
            quaternion8().unwrap(),
            symmetric3().unwrap(),
        ] {
            let engine = BruteEngine::new(&g);
            let cd = engine.cd_lattice().unwrap();
            let subs = engine.subgroups().unwrap().to_vec();
            assert!(check_basic_properties(&engine, &cd, "g").passed());
            assert!(check_duality(&engine, &cd, "g").passed());
            assert!(
                check_isaacs_inequality(&engine, &subs, DEFAULT_TRIALS, DEFAULT_SEED, "g").passed()
            );
            assert!(check_ratio_lemma(&engine, &subs, "g").passed());
            assert!(check_maximal_member_lemma(&engine, &cd, &subs, "g").passed());
            assert!(check_interval_theorem(&engine, &cd, "g").passed());
            assert!(check_quasi_antichain_intervals(&engine, &cd, "g").passed());
        }
    }

    #[test]
    fn theorem_a_applicability() {
        let s3 = symmetric3().unwrap();
        let e = BruteEngine::new(&s3);
        assert_eq!(
            check_theorem_a(&e, &e.cd_lattice().unwrap(), "S3").status,
            Status::NotApplicable
        );
        let d8 = dihedral(8).unwrap();
        let e = BruteEngine::new(&d8);
        let r = check_theorem_a(&e, &e.cd_lattice().unwrap(), "D8");
        assert!(r.passed(), "{r}");
        assert_eq!(r.witnesses["p"], 2);
    }

    #[test]
    fn theorem_b_small_cases() {
        let r = check_theorem_b(2, 2, crate::class2::DEFAULT_SUBSPACE_BUDGET).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.witnesses["members"], 5);
        let r = check_theorem_b(5, 1, crate::class2::DEFAULT_SUBSPACE_BUDGET).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.witnesses["members"], 2);
    }

    #[test]
    fn scalar_lemma_reports() {
        assert!(check_scalar_matrix_lemma(3, 2).unwrap().passed());
        let r = check_scalar_matrix_lemma(2, 2).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert_eq!(r.witnesses["solution_dimension"], 4);
    }

    #[test]
    fn class2_checks_on_g2() {
        let pres = paper_gn(3, 2).unwrap();
        let engine = Class2Engine::new(&pres);
        let cd = engine.cd_lattice().unwrap();
        assert!(check_basic_properties(&engine, &cd, "G2").passed());
        let r = check_quasi_antichain_intervals(&engine, &cd, "G2");
        assert!(r.passed(), "{r}");
        assert_eq!(r.witnesses["widths"], json!([4]));
        assert!(check_interval_theorem(&engine, &cd, "G2").passed());
        assert!(check_theorem_a_class2(&engine, &cd, "G2").passed());
    }

    #[test]
    fn engine_agreement_on_p2() {
        let pres = paper_gn(2, 1).unwrap();
        let r = check_engine_agreement(&pres, 64, "P(2)");
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn failing_isaacs_has_witness() {
        // a deliberately wrong algebra: reports every subgroup as self-centralizing
        struct Liar<'a>(BruteEngine<'a>);
        impl SubgroupAlgebra for Liar<'_> {
            type Sub = SubgroupSet;
            fn group_order(&self) -> u128 {
                self.0.group_order()
            }
            fn order(&self, h: &SubgroupSet) -> u128 {
                self.0.order(h)
            }
            fn whole(&self) -> SubgroupSet {
                self.0.whole()
            }
            fn trivial(&self) -> SubgroupSet {
                self.0.trivial()
            }
            fn center(&self) -> SubgroupSet {
                self.0.center()
            }
            fn centralizer(&self, h: &SubgroupSet) -> SubgroupSet {
                h.clone()
            }
            fn meet(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
                self.0.meet(a, b)
            }
            fn join(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
                self.0.join(a, b)
            }
            fn is_subset(&self, a: &SubgroupSet, b: &SubgroupSet) -> bool {
                self.0.is_subset(a, b)
            }
            fn is_abelian(&self, h: &SubgroupSet) -> bool {
                self.0.is_abelian(h)
            }
            fn is_normal_in(&self, k: &SubgroupSet, h: &SubgroupSet) -> bool {
                self.0.is_normal_in(k, h)
            }
            fn quotient_is_elementary_abelian(
                &self,
                h: &SubgroupSet,
                l: &SubgroupSet,
                p: u32,
            ) -> Result<bool> {
                self.0.quotient_is_elementary_abelian(h, l, p)
            }
            fn cd_lattice(&self) -> Result<CdResult<SubgroupSet>> {
                self.0.cd_lattice()
            }
            fn cd_within(&self, h: &SubgroupSet) -> Result<CdResult<SubgroupSet>> {
                self.0.cd_within(h)
            }
            fn describe(&self, h: &SubgroupSet) -> String {
                self.0.describe(h)
            }
        }
        let s3 = symmetric3().unwrap();
        let liar = Liar(BruteEngine::new(&s3));
        let subs = liar.0.subgroups().unwrap().to_vec();
        let r = check_isaacs_inequality(&liar, &subs, DEFAULT_TRIALS, DEFAULT_SEED, "S3");
        assert!(r.failed());
        assert!(r.witnesses["pair"].is_array());
    }
}
