//! Finite groups as explicit multiplication tables, and the subgroup
//! machinery the brute-force engine is built on.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Subgroup enumeration refuses groups above this order unless overridden.
pub const DEFAULT_ORDER_CAP: usize = 128;
/// Hard ceiling for the override.
pub const MAX_ORDER_CAP: usize = 1024;

const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 200_000;

#[derive(Clone, Debug)]
pub struct CayleyGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl CayleyGroup {
    /// Validates and wraps a multiplication table; `table[a][b]` is `a*b`.
    pub fn from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!(
                        "row {i} contains out-of-range entry {x}"
                    )));
                }
                flat.push(x as u32);
            }
        }
        Self::from_flat(n, flat, labels)
    }

    /// Builds the table by evaluating `mul` on every pair, then validates it.
    pub fn from_fn(
        n: usize,
        labels: Option<Vec<String>>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::InvalidTable(format!(
                        "{a}*{b} = {c} is out of range"
                    )));
                }
                flat.push(c as u32);
            }
        }
        Self::from_flat(n, flat, labels)
    }

    fn from_flat(n: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::InvalidTable(format!(
                    "{} labels for {n} elements",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let at = |a: usize, b: usize| table[a * n + b] as usize;

        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = at(a, b);
                if seen[c] == a {
                    return Err(Error::InvalidTable(format!("row {a} is not a permutation")));
                }
                seen[c] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let c = at(a, b);
                if seen[c] == b {
                    return Err(Error::InvalidTable(format!(
                        "column {b} is not a permutation"
                    )));
                }
                seen[c] = b;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            // latin rows guarantee a unique right inverse
            let b = (0..n)
                .find(|&b| at(a, b) == identity)
                .expect("latin square");
            if at(b, a) != identity {
                return Err(Error::InvalidTable(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
            inverse[a] = b;
        }
        let g = Self {
            order: n,
            table,
            identity,
            inverse,
            labels,
        };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let fail = |a, b, c| {
            Err(Error::InvalidTable(format!(
                "not associative at ({a}, {b}, {c})"
            )))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    // ---- subgroups ----

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        SubgroupSet::from_set(ElementSet::from_indices(self.order, [self.identity]))
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet::from_set(ElementSet::full(self.order))
    }

    /// Smallest subgroup containing `seeds`.
    pub fn generate(&self, seeds: &[usize]) -> SubgroupSet {
        let mut set = ElementSet::new(self.order);
        set.insert(self.identity);
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &s in seeds {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        SubgroupSet {
            order: queue.len(),
            members: set,
        }
    }

    /// Wraps a set of indices after checking it is a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<SubgroupSet> {
        if let Some(&bad) = elements.iter().find(|&&x| x >= self.order) {
            return Err(Error::InvalidSubgroup(format!("index {bad} out of range")));
        }
        let s = ElementSet::from_indices(self.order, elements.iter().copied());
        self.check_subgroup(&s)?;
        Ok(SubgroupSet::from_set(s))
    }

    pub fn check_subgroup(&self, s: &ElementSet) -> Result<()> {
        if s.universe() != self.order {
            return Err(Error::InvalidSubgroup(
                "set belongs to a group of another order".into(),
            ));
        }
        if !s.contains(self.identity) {
            return Err(Error::InvalidSubgroup("missing identity".into()));
        }
        for a in s.iter() {
            if !s.contains(self.inv(a)) {
                return Err(Error::InvalidSubgroup(format!(
                    "not closed under inverse at {a}"
                )));
            }
            for b in s.iter() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::InvalidSubgroup(format!("not closed: {a}*{b}")));
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set: scan members in index order, keep those not
    /// already generated.
    pub fn generators(&self, h: &SubgroupSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for x in h.members.iter() {
            if !current.contains(x) {
                gens.push(x);
                current = self.generate(&gens);
                if current.order == h.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn centralizer(&self, h: &SubgroupSet) -> SubgroupSet {
        let gens = self.generators(h);
        self.centralizer_of_elements(&gens)
    }

    pub fn centralizer_of_elements(&self, elems: &[usize]) -> SubgroupSet {
        let set = ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&g| elems.iter().all(|&h| self.commutes(g, h))),
        );
        SubgroupSet::from_set(set)
    }

    pub fn center(&self) -> SubgroupSet {
        self.centralizer(&self.whole())
    }

    pub fn intersect(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_set(a.members.intersection(&b.members))
    }

    pub fn join(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        let mut gens = self.generators(a);
        gens.extend(self.generators(b));
        self.generate(&gens)
    }

    /// The set `AB = {ab}`; a subgroup only when `AB = BA`.
    pub fn product_set(&self, a: &SubgroupSet, b: &SubgroupSet) -> ElementSet {
        let mut out = ElementSet::new(self.order);
        for x in a.members.iter() {
            for y in b.members.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    pub fn is_abelian_subgroup(&self, h: &SubgroupSet) -> bool {
        let gens = self.generators(h);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.commutes(a, b)))
    }

    /// `k` normal in `h`; `k` must be a subgroup of `h`.
    pub fn is_normal_in(&self, k: &SubgroupSet, h: &SubgroupSet) -> bool {
        if !k.is_subset(h) {
            return false;
        }
        let hg = self.generators(h);
        let kg = self.generators(k);
        hg.iter().all(|&g| {
            let gi = self.inv(g);
            kg.iter().all(|&x| k.contains(self.mul(self.mul(gi, x), g)))
        })
    }

    pub fn is_normal(&self, h: &SubgroupSet) -> bool {
        self.is_normal_in(h, &self.whole())
    }

    /// `[H, K]`, generated by all commutators `[h, k]`.
    pub fn commutator_of(&self, h: &SubgroupSet, k: &SubgroupSet) -> SubgroupSet {
        let mut comms = ElementSet::new(self.order);
        for a in h.members.iter() {
            for b in k.members.iter() {
                comms.insert(self.commutator(a, b));
            }
        }
        self.generate(&comms.to_vec())
    }

    pub fn commutator_subgroup(&self, h: &SubgroupSet) -> SubgroupSet {
        self.commutator_of(h, h)
    }

    /// Length of the lower central series of the whole group, or `None` if it
    /// stalls above the trivial subgroup.
    pub fn nilpotency_class(&self) -> Option<usize> {
        self.nilpotency_class_of(&self.whole())
    }

    pub fn nilpotency_class_of(&self, h: &SubgroupSet) -> Option<usize> {
        let mut current = h.clone();
        let mut class = 0;
        while current.order > 1 {
            let next = self.commutator_of(h, &current);
            if next == current {
                return None;
            }
            current = next;
            class += 1;
        }
        Some(class)
    }

    /// If `h` is elementary abelian, its prime (`None` for the trivial group
    /// or when it is not).
    pub fn elementary_abelian_prime(&self, h: &SubgroupSet) -> Option<u32> {
        if h.order == 1 || !self.is_abelian_subgroup(h) {
            return None;
        }
        let p = smallest_prime_factor(h.order);
        let ok = h
            .members
            .iter()
            .all(|x| x == self.identity || self.element_order(x) == p);
        ok.then_some(p as u32)
    }

    pub fn is_elementary_abelian(&self, h: &SubgroupSet) -> bool {
        h.order == 1 || self.elementary_abelian_prime(h).is_some()
    }

    /// `h/l` elementary abelian of exponent dividing `p`: `[h,h] <= l` and
    /// `x^p` lies in `l` for every `x` in `h`.
    pub fn quotient_is_elementary_abelian(
        &self,
        h: &SubgroupSet,
        l: &SubgroupSet,
        p: u32,
    ) -> Result<bool> {
        if !self.is_normal_in(l, h) {
            return Err(Error::InvalidSubgroup(
                "quotient by a subgroup that is not normal".into(),
            ));
        }
        let hg = self.generators(h);
        let comm_ok = hg
            .iter()
            .all(|&a| hg.iter().all(|&b| l.contains(self.commutator(a, b))));
        let pow_ok = h
            .members
            .iter()
            .all(|x| l.contains(self.pow(x, p as usize)));
        Ok(comm_ok && pow_ok)
    }

    /// Every subgroup exactly once, canonically sorted.
    ///
    /// Starts from the cyclic subgroups and joins each new subgroup with each
    /// cyclic subgroup until no new subgroup appears.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<SubgroupSet>> {
        if cap > MAX_ORDER_CAP {
            return Err(Error::InvalidParams {
                name: "cap".into(),
                reason: format!("{cap} exceeds the maximum of {MAX_ORDER_CAP}"),
            });
        }
        if self.order > cap {
            return Err(Error::CapExceeded {
                order: self.order,
                cap,
            });
        }
        let mut cyclic: Vec<(usize, SubgroupSet)> = Vec::new();
        let mut seen_cyclic = HashSet::new();
        for g in 0..self.order {
            let c = self.generate(&[g]);
            if seen_cyclic.insert(c.members.clone()) {
                cyclic.push((g, c));
            }
        }

        let mut known: HashSet<ElementSet> = HashSet::new();
        let mut all: Vec<SubgroupSet> = Vec::new();
        let mut frontier: Vec<(SubgroupSet, Vec<usize>)> = Vec::new();
        for (g, c) in &cyclic {
            known.insert(c.members.clone());
            all.push(c.clone());
            let gens = if *g == self.identity {
                vec![]
            } else {
                vec![*g]
            };
            frontier.push((c.clone(), gens));
        }

        while !frontier.is_empty() {
            let candidates: Vec<(SubgroupSet, Vec<usize>)> = frontier
                .par_iter()
                .flat_map_iter(|(h, gens)| {
                    cyclic
                        .iter()
                        .filter(|(g, _)| !h.contains(*g))
                        .map(|(g, _)| {
                            let mut seeds = gens.clone();
                            seeds.push(*g);
                            (self.generate(&seeds), seeds)
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            let mut next = Vec::new();
            for (s, gens) in candidates {
                if known.insert(s.members.clone()) {
                    all.push(s.clone());
                    next.push((s, gens));
                }
            }
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    // ---- products and quotients ----

    /// Element `(i, j)` has index `i * |b| + j`.
    pub fn direct_product(a: &CayleyGroup, b: &CayleyGroup) -> Result<CayleyGroup> {
        let nb = b.order;
        let labels = (0..a.order * nb)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        CayleyGroup::from_fn(a.order * nb, Some(labels), |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest
    /// element; returns the group and the coset index of each element.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<(CayleyGroup, Vec<usize>)> {
        if !self.is_normal(n) {
            return Err(Error::InvalidSubgroup(
                "quotient by a subgroup that is not normal".into(),
            ));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for y in n.members.iter() {
                coset_of[self.mul(x, y)] = id;
            }
        }
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let q = CayleyGroup::from_fn(reps.len(), Some(labels), |i, j| {
            coset_of[self.mul(reps[i], reps[j])]
        })?;
        Ok((q, coset_of))
    }

    /// Central product identifying designated central subgroups.
    ///
    /// `centers[k][t]` is the element of `factors[k]` that corresponds to the
    /// `t`-th element of the designated subgroup of `factors[0]`; the
    /// correspondence must be an isomorphism onto a central subgroup.
    pub fn central_product(factors: &[CayleyGroup], centers: &[Vec<usize>]) -> Result<CayleyGroup> {
        if factors.is_empty() || factors.len() != centers.len() {
            return Err(Error::InvalidParams {
                name: "central_product".into(),
                reason: format!(
                    "{} factors with {} center lists",
                    factors.len(),
                    centers.len()
                ),
            });
        }
        let c0 = &centers[0];
        let bad = |reason: String| Error::InvalidParams {
            name: "central_product".into(),
            reason,
        };
        for (k, (f, c)) in factors.iter().zip(centers).enumerate() {
            if c.len() != c0.len() {
                return Err(bad(format!(
                    "factor {k} designates {} elements, expected {}",
                    c.len(),
                    c0.len()
                )));
            }
            if let Some(&x) = c.iter().find(|&&x| x >= f.order) {
                return Err(bad(format!("factor {k}: index {x} out of range")));
            }
            let sub = f.subgroup(c).map_err(|e| bad(format!("factor {k}: {e}")))?;
            if sub.order != c.len() {
                return Err(bad(format!("factor {k}: designated elements repeat")));
            }
            if let Some(&x) = c.iter().find(|&&x| (0..f.order).any(|g| !f.commutes(x, g))) {
                return Err(bad(format!("factor {k}: element {x} is not central")));
            }
            let pos: HashMap<usize, usize> = c0.iter().enumerate().map(|(t, &x)| (x, t)).collect();
            for s in 0..c.len() {
                for t in 0..c.len() {
                    let u = pos[&factors[0].mul(c0[s], c0[t])];
                    if f.mul(c[s], c[t]) != c[u] {
                        return Err(bad(format!(
                            "factor {k}: correspondence is not a homomorphism at ({s}, {t})"
                        )));
                    }
                }
            }
        }

        let mut product = factors[0].clone();
        for f in &factors[1..] {
            product = CayleyGroup::direct_product(&product, f)?;
        }
        // mixed-radix index with factor 0 most significant
        let orders: Vec<usize> = factors.iter().map(|f| f.order).collect();
        let encode = |slots: &[usize]| {
            slots
                .iter()
                .zip(&orders)
                .fold(0, |acc, (&s, &o)| acc * o + s)
        };
        let mut seeds = Vec::new();
        for k in 1..factors.len() {
            for t in 0..c0.len() {
                let mut slots: Vec<usize> = factors.iter().map(|f| f.identity).collect();
                slots[0] = c0[t];
                slots[k] = factors[k].inv(centers[k][t]);
                seeds.push(encode(&slots));
            }
        }
        let identified = product.generate(&seeds);
        let (q, _) = product.quotient(&identified)?;
        let expected = orders.iter().product::<usize>() / c0.len().pow(factors.len() as u32 - 1);
        if q.order != expected {
            return Err(Error::Invariant(format!(
                "central product has order {}, expected {expected}",
                q.order
            )));
        }
        Ok(q)
    }
}

pub(crate) fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

/// If `n` is a prime power `p^e` with `e >= 1`, returns `(p, e)`.
pub fn prime_power(n: u128) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u128;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p as u64, e))
}

/// A subgroup of some [`CayleyGroup`], stored as a bitset over its element
/// indices. Operations take the parent group explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    order: usize,
    members: ElementSet,
}

impl SubgroupSet {
    pub(crate) fn from_set(members: ElementSet) -> Self {
        Self {
            order: members.count(),
            members,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// Canonical order: by subgroup order, then lexicographically by sorted
/// element indices.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.iter().cmp(other.members.iter()))
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, dihedral, quaternion8, symmetric3};

    #[test]
    fn rejects_non_latin_row() {
        let err = CayleyGroup::from_table(&[vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
    }

    #[test]
    fn rejects_non_associative_loop() {
        // a latin square with identity 0 that is not a group (order-5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = CayleyGroup::from_table(&t, None).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn generate_examples() {
        let d8 = dihedral(8).unwrap();
        assert_eq!(d8.generate(&[]).order(), 1);
        let r = (0..8).find(|&g| d8.element_order(g) == 4).unwrap();
        assert_eq!(d8.generate(&[r]).order(), 4);
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(d8.generate(&all), d8.whole());
    }

    #[test]
    fn generate_is_idempotent_and_monotone() {
        let g = symmetric3().unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let h = g.generate(&[a]);
                let hb = g.generate(&[a, b]);
                assert!(h.is_subset(&hb));
                assert_eq!(g.generate(&h.elements()), h);
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let d8 = dihedral(8).unwrap();
        assert_eq!(d8.center().order(), 2);
        assert_eq!(d8.centralizer(&d8.trivial_subgroup()), d8.whole());
        let c6 = cyclic(6).unwrap();
        for h in c6.all_subgroups(DEFAULT_ORDER_CAP).unwrap() {
            assert_eq!(c6.centralizer(&h), c6.whole());
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(
            dihedral(8)
                .unwrap()
                .all_subgroups(DEFAULT_ORDER_CAP)
                .unwrap()
                .len(),
            10
        );
        assert_eq!(
            cyclic(6)
                .unwrap()
                .all_subgroups(DEFAULT_ORDER_CAP)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            cyclic(1)
                .unwrap()
                .all_subgroups(DEFAULT_ORDER_CAP)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            quaternion8()
                .unwrap()
                .all_subgroups(DEFAULT_ORDER_CAP)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            symmetric3()
                .unwrap()
                .all_subgroups(DEFAULT_ORDER_CAP)
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn cap_is_enforced() {
        let c = cyclic(130).unwrap();
        let err = c.all_subgroups(DEFAULT_ORDER_CAP).unwrap_err();
        assert!(err.to_string().contains("128"), "{err}");
        assert_eq!(c.all_subgroups(256).unwrap().len(), 8);
        assert!(c.all_subgroups(4096).is_err());
    }

    #[test]
    fn centralizer_reverses_inclusion() {
        for g in [
            dihedral(8).unwrap(),
            quaternion8().unwrap(),
            symmetric3().unwrap(),
        ] {
            let subs = g.all_subgroups(DEFAULT_ORDER_CAP).unwrap();
            for h in &subs {
                assert_eq!(g.order() % h.order(), 0);
                g.check_subgroup(h.members()).unwrap();
                for k in &subs {
                    if h.is_subset(k) {
                        assert!(g.centralizer(k).is_subset(&g.centralizer(h)));
                    }
                }
            }
        }
    }

    #[test]
    fn structural_predicates() {
        let d8 = dihedral(8).unwrap();
        assert_eq!(d8.nilpotency_class(), Some(2));
        assert_eq!(symmetric3().unwrap().nilpotency_class(), None);
        let c12 = cyclic(12).unwrap();
        assert_eq!(c12.center(), c12.whole());
        assert_eq!(c12.nilpotency_class(), Some(1));
        assert!(d8.is_normal(&d8.center()));
        assert_eq!(d8.commutator_subgroup(&d8.whole()), d8.center());
        let s3 = symmetric3().unwrap();
        let reflection = (0..6).find(|&g| s3.element_order(g) == 2).unwrap();
        let h = s3.generate(&[reflection]);
        assert!(!s3.is_normal(&h));
        assert!(s3
            .quotient_is_elementary_abelian(&s3.whole(), &h, 2)
            .is_err());
    }

    #[test]
    fn direct_product_of_two_c2_is_klein() {
        let c2 = cyclic(2).unwrap();
        let v = CayleyGroup::direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
        assert_eq!(v.elementary_abelian_prime(&v.whole()), Some(2));
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
