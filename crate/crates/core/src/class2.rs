//! Class-2 p-groups given by an alternating commutator tensor.
//!
//! An element is a pair `(a, z)` with `a` in `F_p^r` (exponents of the
//! generators `e_1..e_r` in collected order) and `z` in `F_p^s` (the central
//! part). The subgroup `Z0 = {(0, z)}` is central and `G/Z0` is elementary
//! abelian, so every subgroup containing `Z0` is the preimage of a subspace
//! `w` of `F_p^r`, and its centralizer is the preimage of
//! `perp(w) = {v : [v, u] = 0 for all u in w}`. The Chermak-Delgado search
//! therefore becomes a scan over subspaces of `F_p^r`.
//!
//! Conventions: `[g, h] = g^-1 h^-1 g h`, and `B[i][j]` is the value of
//! `[e_i, e_j]` written in the central basis. `B` is stored alternating.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::SubgroupAlgebra;
use crate::cd::{CdMember, CdResult, Containment, Measure};
use crate::error::{Error, Result};
use crate::fp_linalg::{
    add_mod, all_pivot_patterns, check_prime, checked_pow, mul_mod, neg_mod, rank_gf2, reduce,
    rref_rows, subspace_count, FpMatrix, Subspace,
};
use crate::group::CayleyGroup;

/// Default ceiling on the number of subspaces a CD scan may visit.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 20_000_000;

const ASSOCIATIVITY_SPOT_CHECKS: usize = 64;
const GF2_TABLE_MAX_RANK: usize = 16;

/// One commutator relation `[e_i, e_j] = z^coeffs` (0-based generator indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<i64>,
}

impl CommutatorEntry {
    pub fn new(i: usize, j: usize, coeffs: Vec<i64>) -> Self {
        Self { i, j, coeffs }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Class2Presentation {
    p: u32,
    r: usize,
    s: usize,
    /// `comm[(i * r + j) * s + t]`
    comm: Vec<u32>,
    /// `pow[i * s + t]`: value of `e_i^p`
    pow: Vec<u32>,
    gen_names: Vec<String>,
    central_names: Vec<String>,
}

impl fmt::Debug for Class2Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Class2Presentation")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("s", &self.s)
            .field("commutators", &self.commutator_entries())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PElement {
    pub a: Vec<u32>,
    pub z: Vec<u32>,
}

impl Class2Presentation {
    pub fn new(
        p: u32,
        r: usize,
        s: usize,
        commutators: &[CommutatorEntry],
        powers: Option<&[Vec<i64>]>,
    ) -> Result<Self> {
        check_prime(p)?;
        let bad = |m: String| Error::InvalidPresentation(m);
        let mut comm = vec![0u32; r * r * s];
        let mut set = vec![false; r * r];
        for e in commutators {
            if e.i >= r || e.j >= r {
                return Err(bad(format!(
                    "commutator ({}, {}) out of range for r={r}",
                    e.i, e.j
                )));
            }
            if e.i == e.j {
                return Err(bad(format!("commutator of generator {} with itself", e.i)));
            }
            if e.coeffs.len() != s {
                return Err(bad(format!(
                    "commutator ({}, {}) has {} coefficients, expected {s}",
                    e.i,
                    e.j,
                    e.coeffs.len()
                )));
            }
            let v: Vec<u32> = e.coeffs.iter().map(|&c| reduce(c, p)).collect();
            let neg: Vec<u32> = v.iter().map(|&c| neg_mod(c, p)).collect();
            let (ij, ji) = (e.i * r + e.j, e.j * r + e.i);
            if set[ij] && comm[ij * s..(ij + 1) * s] != v[..] {
                return Err(bad(format!("conflicting values for [e{}, e{}]", e.i, e.j)));
            }
            set[ij] = true;
            set[ji] = true;
            comm[ij * s..(ij + 1) * s].copy_from_slice(&v);
            comm[ji * s..(ji + 1) * s].copy_from_slice(&neg);
        }
        let mut pow = vec![0u32; r * s];
        if let Some(powers) = powers {
            if powers.len() != r {
                return Err(bad(format!("{} power vectors for r={r}", powers.len())));
            }
            for (i, v) in powers.iter().enumerate() {
                if v.len() != s {
                    return Err(bad(format!(
                        "power vector {i} has {} entries, expected {s}",
                        v.len()
                    )));
                }
                for (t, &c) in v.iter().enumerate() {
                    pow[i * s + t] = reduce(c, p);
                }
            }
        }
        let pres = Self {
            p,
            r,
            s,
            comm,
            pow,
            gen_names: (1..=r).map(|i| format!("e{i}")).collect(),
            central_names: (1..=s).map(|t| format!("z{t}")).collect(),
        };
        pres.spot_check_associativity()?;
        Ok(pres)
    }

    pub fn with_names(mut self, gens: Vec<String>, central: Vec<String>) -> Result<Self> {
        if gens.len() != self.r || central.len() != self.s {
            return Err(Error::InvalidPresentation(
                "name lists do not match r and s".into(),
            ));
        }
        self.gen_names = gens;
        self.central_names = central;
        Ok(self)
    }

    fn spot_check_associativity(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa55_0c1a);
        for _ in 0..ASSOCIATIVITY_SPOT_CHECKS {
            let mut random = || PElement {
                a: (0..self.r).map(|_| rng.gen_range(0..self.p)).collect(),
                z: (0..self.s).map(|_| rng.gen_range(0..self.p)).collect(),
            };
            let (x, y, w) = (random(), random(), random());
            let left = self.multiply(&self.multiply(&x, &y), &w);
            let right = self.multiply(&x, &self.multiply(&y, &w));
            if left != right {
                return Err(Error::InvalidPresentation(format!(
                    "collection is not associative at {x:?}, {y:?}, {w:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn central_names(&self) -> &[String] {
        &self.central_names
    }

    /// `|G| = p^(r+s)`.
    pub fn order_exponent(&self) -> u32 {
        (self.r + self.s) as u32
    }

    /// Value of `[e_i, e_j]`.
    pub fn commutator_value(&self, i: usize, j: usize) -> &[u32] {
        let ij = i * self.r + j;
        &self.comm[ij * self.s..(ij + 1) * self.s]
    }

    /// Value of `e_i^p`.
    pub fn power_value(&self, i: usize) -> &[u32] {
        &self.pow[i * self.s..(i + 1) * self.s]
    }

    /// Nonzero entries `[e_i, e_j]` with `i < j`.
    pub fn commutator_entries(&self) -> Vec<CommutatorEntry> {
        let mut out = Vec::new();
        for i in 0..self.r {
            for j in i + 1..self.r {
                let v = self.commutator_value(i, j);
                if v.iter().any(|&c| c != 0) {
                    out.push(CommutatorEntry::new(
                        i,
                        j,
                        v.iter().map(|&c| c as i64).collect(),
                    ));
                }
            }
        }
        out
    }

    pub fn power_vectors(&self) -> Vec<Vec<i64>> {
        (0..self.r)
            .map(|i| self.power_value(i).iter().map(|&c| c as i64).collect())
            .collect()
    }

    pub fn is_abelian_presentation(&self) -> bool {
        self.comm.iter().all(|&c| c == 0)
    }

    // ---- elements ----

    pub fn identity(&self) -> PElement {
        PElement {
            a: vec![0; self.r],
            z: vec![0; self.s],
        }
    }

    pub fn element(&self, a: &[i64], z: &[i64]) -> Result<PElement> {
        if a.len() != self.r || z.len() != self.s {
            return Err(Error::Dimension(format!(
                "element with {} + {} coordinates, expected {} + {}",
                a.len(),
                z.len(),
                self.r,
                self.s
            )));
        }
        Ok(PElement {
            a: a.iter().map(|&x| reduce(x, self.p)).collect(),
            z: z.iter().map(|&x| reduce(x, self.p)).collect(),
        })
    }

    pub fn generator(&self, i: usize) -> PElement {
        let mut g = self.identity();
        g.a[i] = 1;
        g
    }

    pub fn central(&self, t: usize) -> PElement {
        let mut g = self.identity();
        g.z[t] = 1;
        g
    }

    /// The element `(v, 0)`: product of generators with exponents `v` in
    /// collected order.
    pub fn lift(&self, v: &[u32]) -> PElement {
        PElement {
            a: v.to_vec(),
            z: vec![0; self.s],
        }
    }

    /// Collected product. Moving `e_j^b` left past `e_i^a` (`i > j`)
    /// contributes `[e_i, e_j]^(ab)`; exponent overflow past `p` contributes
    /// `e_i^p`.
    pub fn multiply(&self, g1: &PElement, g2: &PElement) -> PElement {
        let p = self.p;
        let s = self.s;
        let mut z: Vec<u32> =
            g1.z.iter()
                .zip(&g2.z)
                .map(|(&x, &y)| add_mod(x, y, p))
                .collect();
        for i in 0..self.r {
            let ai = g1.a[i];
            if ai == 0 {
                continue;
            }
            for j in 0..i {
                let bj = g2.a[j];
                if bj == 0 {
                    continue;
                }
                let k = mul_mod(ai, bj, p);
                let ij = i * self.r + j;
                for t in 0..s {
                    let c = self.comm[ij * s + t];
                    if c != 0 {
                        z[t] = add_mod(z[t], mul_mod(k, c, p), p);
                    }
                }
            }
        }
        let mut a = Vec::with_capacity(self.r);
        for i in 0..self.r {
            let sum = g1.a[i] + g2.a[i];
            if sum >= p {
                a.push(sum - p);
                for t in 0..s {
                    z[t] = add_mod(z[t], self.pow[i * s + t], p);
                }
            } else {
                a.push(sum);
            }
        }
        PElement { a, z }
    }

    pub fn inverse(&self, g: &PElement) -> PElement {
        let p = self.p;
        let neg_a: Vec<u32> = g.a.iter().map(|&x| neg_mod(x, p)).collect();
        let probe = self.multiply(
            g,
            &PElement {
                a: neg_a.clone(),
                z: vec![0; self.s],
            },
        );
        PElement {
            a: neg_a,
            z: probe.z.iter().map(|&x| neg_mod(x, p)).collect(),
        }
    }

    pub fn pow(&self, g: &PElement, k: u64) -> PElement {
        (0..k).fold(self.identity(), |acc, _| self.multiply(&acc, g))
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, g: &PElement, h: &PElement) -> PElement {
        let left = self.multiply(&self.inverse(g), &self.inverse(h));
        self.multiply(&left, &self.multiply(g, h))
    }

    /// Alternating bilinear form `b(v, u) = sum_ij v_i u_j [e_i, e_j]`.
    pub fn commutator_form(&self, v: &[u32], u: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.s];
        for i in 0..self.r {
            if v[i] == 0 {
                continue;
            }
            for j in 0..self.r {
                if u[j] == 0 || i == j {
                    continue;
                }
                let k = mul_mod(v[i], u[j], p);
                for (t, o) in out.iter_mut().enumerate() {
                    *o = add_mod(
                        *o,
                        mul_mod(k, self.comm[(i * self.r + j) * self.s + t], p),
                        p,
                    );
                }
            }
        }
        out
    }

    /// Constraint rows whose common kernel is `{v : b(v, u) = 0}`: row `t`
    /// has entry `i` equal to `sum_j [e_i, e_j]_t u_j`.
    fn constraint_rows(&self, u: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
        let u = u.to_vec();
        (0..self.s).map(move |t| {
            (0..self.r)
                .map(|i| {
                    (0..self.r).fold(0u32, |acc, j| {
                        add_mod(
                            acc,
                            mul_mod(self.comm[(i * self.r + j) * self.s + t], u[j], self.p),
                            self.p,
                        )
                    })
                })
                .collect()
        })
    }

    fn check_ambient(&self, w: &Subspace) -> Result<()> {
        if w.p() != self.p || w.ambient_dim() != self.r {
            return Err(Error::Dimension(format!(
                "subspace of F_{}^{} for a presentation over F_{}^{}",
                w.p(),
                w.ambient_dim(),
                self.p,
                self.r
            )));
        }
        Ok(())
    }

    /// `{v : b(v, u) = 0 for all u in w}`, one nullspace of an
    /// `(s * dim w) x r` system.
    pub fn perp(&self, w: &Subspace) -> Result<Subspace> {
        self.check_ambient(w)?;
        let rows: Vec<Vec<u32>> = w
            .basis_vectors()
            .flat_map(|u| self.constraint_rows(u))
            .collect();
        let m = FpMatrix::from_reduced_rows(self.p, self.r, rows);
        Ok(m.nullspace())
    }

    /// Radical of the commutator form; its preimage is the center.
    pub fn radical(&self) -> Subspace {
        self.perp(&Subspace::full(self.p, self.r).expect("prime checked"))
            .expect("same ambient")
    }

    pub fn center(&self) -> CentralSubgroup {
        CentralSubgroup::new(self.radical(), self.s)
    }

    /// Exponent `e` with `m_G(preimage of w) = p^e`:
    /// `2s + dim w + dim perp(w)`.
    pub fn measure_of(&self, w: &Subspace) -> Result<u32> {
        let perp = self.perp(w)?;
        Ok((2 * self.s + w.dim() + perp.dim()) as u32)
    }

    pub fn central_subgroup(&self, w: Subspace) -> Result<CentralSubgroup> {
        self.check_ambient(&w)?;
        Ok(CentralSubgroup::new(w, self.s))
    }

    // ---- Cayley bridge ----

    /// Index `sum a_i p^i + p^r sum z_t p^t`.
    pub fn element_index(&self, g: &PElement) -> usize {
        let p = self.p as usize;
        g.z.iter()
            .rev()
            .chain(g.a.iter().rev())
            .fold(0usize, |acc, &x| acc * p + x as usize)
    }

    pub fn element_at(&self, mut index: usize) -> PElement {
        let p = self.p as usize;
        let mut g = self.identity();
        for x in g.a.iter_mut().chain(g.z.iter_mut()) {
            *x = (index % p) as u32;
            index /= p;
        }
        g
    }

    pub fn element_label(&self, g: &PElement) -> String {
        let mut parts = Vec::new();
        for (x, name) in
            g.a.iter()
                .zip(&self.gen_names)
                .chain(g.z.iter().zip(&self.central_names))
        {
            match x {
                0 => {}
                1 => parts.push(name.clone()),
                k => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Explicit multiplication table via collection, refused above `cap`.
    pub fn to_cayley(&self, cap: usize) -> Result<CayleyGroup> {
        let order = checked_pow(self.p as u64, self.order_exponent())
            .filter(|&n| n <= cap as u128)
            .ok_or(Error::CapExceeded {
                order: checked_pow(self.p as u64, self.order_exponent())
                    .map_or(usize::MAX, |n| n.min(usize::MAX as u128) as usize),
                cap,
            })? as usize;
        let elems: Vec<PElement> = (0..order).map(|i| self.element_at(i)).collect();
        let labels = elems.iter().map(|g| self.element_label(g)).collect();
        CayleyGroup::from_fn(order, Some(labels), |x, y| {
            self.element_index(&self.multiply(&elems[x], &elems[y]))
        })
    }

    /// Cayley indices of the preimage of `w`.
    pub fn preimage_indices(&self, w: &Subspace) -> Result<Vec<usize>> {
        self.check_ambient(w)?;
        let zs = Subspace::full(self.p, self.s)?.elements();
        let mut out = Vec::new();
        for a in w.elements() {
            for z in &zs {
                out.push(self.element_index(&PElement {
                    a: a.clone(),
                    z: z.clone(),
                }));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The preimage of `w` as a class-2 group in its own right, generated by
    /// lifts of the RREF basis of `w`, on the same central coordinates.
    pub fn restrict(&self, w: &Subspace) -> Result<Class2Presentation> {
        self.check_ambient(w)?;
        let basis: Vec<Vec<u32>> = w.basis_vectors().map(|u| u.to_vec()).collect();
        let k = basis.len();
        let mut entries = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let v = self.commutator_form(&basis[a], &basis[b]);
                if v.iter().any(|&c| c != 0) {
                    entries.push(CommutatorEntry::new(
                        a,
                        b,
                        v.iter().map(|&c| c as i64).collect(),
                    ));
                }
            }
        }
        let powers: Vec<Vec<i64>> = basis
            .iter()
            .map(|u| {
                let g = self.pow(&self.lift(u), self.p as u64);
                debug_assert!(g.a.iter().all(|&x| x == 0));
                g.z.iter().map(|&c| c as i64).collect()
            })
            .collect();
        let names = basis
            .iter()
            .map(|u| self.element_label(&self.lift(u)))
            .collect();
        Class2Presentation::new(self.p, k, self.s, &entries, Some(&powers))?
            .with_names(names, self.central_names.clone())
    }

    // ---- CD scan ----

    /// Scores `dim w + dim perp(w)` over every subspace of `F_p^r` and returns
    /// the best score with the RREF bases attaining it.
    fn scan_maximizers(&self) -> (usize, Vec<Subspace>) {
        let patterns = all_pivot_patterns(self.r, None);
        let per_pattern: Vec<(usize, Vec<Subspace>)> = if self.p == 2 && self.r <= 64 {
            let scorer = Gf2Scorer::new(self);
            patterns
                .par_iter()
                .map(|pattern| {
                    let mut best = 0usize;
                    let mut hits: Vec<Vec<u64>> = Vec::new();
                    let mut scratch = Vec::with_capacity(self.s * self.r);
                    pattern.for_each_basis_gf2(|rows| {
                        let score = rows.len() + self.r - scorer.rank(rows, &mut scratch);
                        if score > best {
                            best = score;
                            hits.clear();
                        }
                        if score == best {
                            hits.push(rows.to_vec());
                        }
                    });
                    let subspaces = hits
                        .iter()
                        .map(|rows| Subspace::from_gf2_rref(self.r, rows))
                        .collect();
                    (best, subspaces)
                })
                .collect()
        } else {
            patterns
                .par_iter()
                .map(|pattern| {
                    let mut best = 0usize;
                    let mut hits: Vec<Vec<Vec<u32>>> = Vec::new();
                    pattern.for_each_basis(self.p, |rows| {
                        let constraints: Vec<Vec<u32>> =
                            rows.iter().flat_map(|u| self.constraint_rows(u)).collect();
                        let rank = rref_rows(self.p, self.r, constraints).0.len();
                        let score = rows.len() + self.r - rank;
                        if score > best {
                            best = score;
                            hits.clear();
                        }
                        if score == best {
                            hits.push(rows.to_vec());
                        }
                    });
                    let subspaces = hits
                        .into_iter()
                        .map(|rows| Subspace::from_vectors_unchecked(self.p, self.r, rows))
                        .collect();
                    (best, subspaces)
                })
                .collect()
        };
        let best = per_pattern.iter().map(|(b, _)| *b).max().unwrap_or(0);
        let mut winners: Vec<Subspace> = per_pattern
            .into_iter()
            .filter(|(b, _)| *b == best)
            .flat_map(|(_, s)| s)
            .collect();
        winners.sort();
        (best, winners)
    }

    /// CD lattice over subgroups containing `Z0`, refused when `F_p^r` has
    /// more than `budget` subspaces.
    pub fn cd_lattice(&self, budget: u128) -> Result<CdResult<CentralSubgroup>> {
        let count = subspace_count(self.r, self.p as u64)?;
        if count > budget {
            return Err(Error::BudgetExceeded {
                what: "subspaces to scan",
                count,
                budget,
            });
        }
        let (best, winners) = self.scan_maximizers();
        let exponent = (2 * self.s + best) as u32;
        let measure = Measure::PrimePower {
            p: self.p as u64,
            exponent,
        };
        let mut members = Vec::with_capacity(winners.len());
        for w in winners {
            let perp = self.perp(&w)?;
            members.push(CdMember {
                subgroup: CentralSubgroup::new(w, self.s),
                centralizer: CentralSubgroup::new(perp, self.s),
                measure,
            });
        }
        CdResult::assemble(
            measure,
            members,
            |a, b| CentralSubgroup::new(a.w.intersect(&b.w).expect("same ambient"), self.s),
            |a, b| CentralSubgroup::new(a.w.sum(&b.w).expect("same ambient"), self.s),
        )
    }
}

/// Packed GF(2) constraint rows: `row_t(u)` has bit `i` equal to the parity
/// of `mask[t][i] & u`.
struct Gf2Scorer {
    r: usize,
    s: usize,
    masks: Vec<u64>,
    table: Option<Vec<u64>>,
}

impl Gf2Scorer {
    fn new(pres: &Class2Presentation) -> Self {
        let (r, s) = (pres.r, pres.s);
        let mut masks = vec![0u64; s * r];
        for t in 0..s {
            for i in 0..r {
                for j in 0..r {
                    if pres.comm[(i * r + j) * s + t] & 1 == 1 {
                        masks[t * r + i] |= 1 << j;
                    }
                }
            }
        }
        let mut scorer = Self {
            r,
            s,
            masks,
            table: None,
        };
        if r <= GF2_TABLE_MAX_RANK {
            let mut table = vec![0u64; (1usize << r) * s];
            for u in 0..(1u64 << r) {
                for t in 0..s {
                    table[u as usize * s + t] = scorer.row(u, t);
                }
            }
            scorer.table = Some(table);
        }
        scorer
    }

    fn row(&self, u: u64, t: usize) -> u64 {
        (0..self.r).fold(0u64, |acc, i| {
            acc | ((((self.masks[t * self.r + i] & u).count_ones() & 1) as u64) << i)
        })
    }

    /// Rank of the constraint system of the span of `basis`.
    fn rank(&self, basis: &[u64], scratch: &mut Vec<u64>) -> usize {
        scratch.clear();
        for &u in basis {
            match &self.table {
                Some(table) => scratch
                    .extend_from_slice(&table[u as usize * self.s..(u as usize + 1) * self.s]),
                None => scratch.extend((0..self.s).map(|t| self.row(u, t))),
            }
        }
        rank_gf2(scratch)
    }
}

/// The preimage in `G` of a subspace `w` of `G/Z0 = F_p^r`; its order is
/// `p^(s + dim w)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralSubgroup {
    w: Subspace,
    s: usize,
}

impl fmt::Debug for CentralSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preimage({:?})", self.w.basis().row_vecs())
    }
}

impl CentralSubgroup {
    fn new(w: Subspace, s: usize) -> Self {
        Self { w, s }
    }

    pub fn subspace(&self) -> &Subspace {
        &self.w
    }

    pub fn order_exponent(&self) -> u32 {
        (self.s + self.w.dim()) as u32
    }
}

impl Containment for CentralSubgroup {
    fn is_contained_in(&self, other: &Self) -> bool {
        self.w.is_subspace_of(&other.w)
    }
}

/// The class-2 engine over a presentation, with a scan budget.
pub struct Class2Engine<'a> {
    pres: &'a Class2Presentation,
    budget: u128,
}

impl<'a> Class2Engine<'a> {
    pub fn new(pres: &'a Class2Presentation) -> Self {
        Self {
            pres,
            budget: DEFAULT_SUBSPACE_BUDGET,
        }
    }

    pub fn with_budget(pres: &'a Class2Presentation, budget: u128) -> Self {
        Self { pres, budget }
    }

    pub fn presentation(&self) -> &'a Class2Presentation {
        self.pres
    }

    fn sub(&self, w: Subspace) -> CentralSubgroup {
        CentralSubgroup::new(w, self.pres.s)
    }

    fn pow(&self, e: u32) -> u128 {
        checked_pow(self.pres.p as u64, e).expect("group order fits in u128")
    }
}

/// `cd_lattice_class2` under the default budget.
pub fn cd_lattice_class2(pres: &Class2Presentation) -> Result<CdResult<CentralSubgroup>> {
    pres.cd_lattice(DEFAULT_SUBSPACE_BUDGET)
}

impl SubgroupAlgebra for Class2Engine<'_> {
    type Sub = CentralSubgroup;

    fn group_order(&self) -> u128 {
        self.pow(self.pres.order_exponent())
    }

    fn order(&self, h: &CentralSubgroup) -> u128 {
        self.pow(h.order_exponent())
    }

    fn whole(&self) -> CentralSubgroup {
        self.sub(Subspace::full(self.pres.p, self.pres.r).expect("prime checked"))
    }

    fn trivial(&self) -> CentralSubgroup {
        self.sub(Subspace::zero(self.pres.p, self.pres.r).expect("prime checked"))
    }

    fn center(&self) -> CentralSubgroup {
        self.pres.center()
    }

    fn centralizer(&self, h: &CentralSubgroup) -> CentralSubgroup {
        self.sub(self.pres.perp(&h.w).expect("same ambient"))
    }

    fn meet(&self, a: &CentralSubgroup, b: &CentralSubgroup) -> CentralSubgroup {
        self.sub(a.w.intersect(&b.w).expect("same ambient"))
    }

    fn join(&self, a: &CentralSubgroup, b: &CentralSubgroup) -> CentralSubgroup {
        self.sub(a.w.sum(&b.w).expect("same ambient"))
    }

    fn is_subset(&self, a: &CentralSubgroup, b: &CentralSubgroup) -> bool {
        a.is_contained_in(b)
    }

    fn is_abelian(&self, h: &CentralSubgroup) -> bool {
        let basis: Vec<&[u32]> = h.w.basis_vectors().collect();
        basis.iter().enumerate().all(|(i, u)| {
            basis[i + 1..]
                .iter()
                .all(|v| self.pres.commutator_form(u, v).iter().all(|&c| c == 0))
        })
    }

    /// Commutators land in `Z0`, which every representable subgroup contains.
    fn is_normal_in(&self, k: &CentralSubgroup, h: &CentralSubgroup) -> bool {
        k.is_contained_in(h)
    }

    fn quotient_is_elementary_abelian(
        &self,
        h: &CentralSubgroup,
        l: &CentralSubgroup,
        p: u32,
    ) -> Result<bool> {
        if !l.is_contained_in(h) {
            return Err(Error::InvalidSubgroup(
                "quotient by a subgroup that is not normal".into(),
            ));
        }
        Ok(l.w.dim() == h.w.dim() || p == self.pres.p)
    }

    fn cd_lattice(&self) -> Result<CdResult<CentralSubgroup>> {
        self.pres.cd_lattice(self.budget)
    }

    fn cd_within(&self, h: &CentralSubgroup) -> Result<CdResult<CentralSubgroup>> {
        let sub = self.pres.restrict(&h.w)?;
        let inner = sub.cd_lattice(self.budget)?;
        let basis: Vec<&[u32]> = h.w.basis_vectors().collect();
        let p = self.pres.p;
        let lift = |x: &CentralSubgroup| {
            let vectors: Vec<Vec<u32>> =
                x.w.basis_vectors()
                    .map(|c| {
                        let mut v = vec![0u32; self.pres.r];
                        for (coef, u) in c.iter().zip(&basis) {
                            for (o, &e) in v.iter_mut().zip(u.iter()) {
                                *o = add_mod(*o, mul_mod(*coef, e, p), p);
                            }
                        }
                        v
                    })
                    .collect();
            self.sub(Subspace::from_vectors_unchecked(p, self.pres.r, vectors))
        };
        let members = inner
            .members
            .iter()
            .map(|m| CdMember {
                subgroup: lift(&m.subgroup),
                centralizer: lift(&m.centralizer),
                measure: m.measure,
            })
            .collect();
        CdResult::assemble(
            inner.max_measure,
            members,
            |a, b| self.meet(a, b),
            |a, b| self.join(a, b),
        )
    }

    fn describe(&self, h: &CentralSubgroup) -> String {
        let gens: Vec<String> =
            h.w.basis_vectors()
                .map(|u| self.pres.element_label(&self.pres.lift(u)))
                .collect();
        if gens.is_empty() {
            "Z0".into()
        } else {
            format!("<{}>Z0", gens.join(", "))
        }
    }
}
