//! Chermak-Delgado measures and lattices: result types shared by both
//! engines, and the brute-force engine over Cayley tables.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::algebra::SubgroupAlgebra;
use crate::error::{Error, Result};
use crate::group::{prime_power, CayleyGroup, SubgroupSet, DEFAULT_ORDER_CAP};
use crate::lattice::FiniteLattice;

/// An exact measure `|H| * |C_G(H)|`.
#[derive(Clone, Copy, Debug)]
pub enum Measure {
    Plain(u128),
    PrimePower { p: u64, exponent: u32 },
}

impl Measure {
    /// Factors `value` when it is a prime power.
    pub fn from_value(value: u128) -> Self {
        match prime_power(value) {
            Some((p, exponent)) => Measure::PrimePower { p, exponent },
            None => Measure::Plain(value),
        }
    }

    pub fn value(&self) -> Option<u128> {
        match *self {
            Measure::Plain(v) => Some(v),
            Measure::PrimePower { p, exponent } => (p as u128).checked_pow(exponent),
        }
    }

    pub fn exponent(&self) -> Option<u32> {
        match *self {
            Measure::Plain(1) => Some(0),
            Measure::Plain(_) => None,
            Measure::PrimePower { exponent, .. } => Some(exponent),
        }
    }
}

impl PartialEq for Measure {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Measure::PrimePower { p: a, exponent: x },
                Measure::PrimePower { p: b, exponent: y },
            ) => a == b && x == y,
            _ => self.value().is_some() && self.value() == other.value(),
        }
    }
}

impl Eq for Measure {}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Plain(v) => write!(f, "{v}"),
            Measure::PrimePower { p, exponent } => write!(f, "{p}^{exponent}"),
        }
    }
}

/// Subgroup containment, for member types that can answer it on their own.
pub trait Containment {
    fn is_contained_in(&self, other: &Self) -> bool;
}

impl Containment for SubgroupSet {
    fn is_contained_in(&self, other: &Self) -> bool {
        self.is_subset(other)
    }
}

/// A subgroup with its centralizer and measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdMember<S> {
    pub subgroup: S,
    pub centralizer: S,
    pub measure: Measure,
}

pub type MeasuredSubgroup = CdMember<SubgroupSet>;

/// The members of a Chermak-Delgado lattice, canonically sorted, with the
/// centralizer duality as an index map.
#[derive(Clone, Debug)]
pub struct CdResult<S> {
    pub max_measure: Measure,
    pub members: Vec<CdMember<S>>,
    pub duality: Vec<usize>,
}

impl<S: Clone + Ord + Hash + fmt::Debug + Containment> CdResult<S> {
    /// Sorts members, builds the duality map and checks the lattice
    /// postconditions: closure under `meet`/`join`, and centralizers of
    /// members forming an order-reversing involution on the members.
    pub fn assemble(
        max_measure: Measure,
        mut members: Vec<CdMember<S>>,
        meet: impl Fn(&S, &S) -> S,
        join: impl Fn(&S, &S) -> S,
    ) -> Result<Self> {
        members.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
        let index: HashMap<&S, usize> = members
            .iter()
            .enumerate()
            .map(|(i, m)| (&m.subgroup, i))
            .collect();
        let mut duality = Vec::with_capacity(members.len());
        for m in &members {
            let Some(&j) = index.get(&m.centralizer) else {
                return Err(Error::Invariant(format!(
                    "centralizer {:?} of member {:?} is not a member",
                    m.centralizer, m.subgroup
                )));
            };
            duality.push(j);
        }
        for (i, &j) in duality.iter().enumerate() {
            if duality[j] != i {
                return Err(Error::Invariant(format!(
                    "centralizer map is not an involution at {:?}",
                    members[i].subgroup
                )));
            }
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let m = meet(&a.subgroup, &b.subgroup);
                let j = join(&a.subgroup, &b.subgroup);
                if !index.contains_key(&m) || !index.contains_key(&j) {
                    return Err(Error::Invariant(format!(
                        "members {:?} and {:?} have a meet or join outside the lattice",
                        a.subgroup, b.subgroup
                    )));
                }
            }
        }
        let out = Self {
            max_measure,
            members,
            duality,
        };
        for i in 0..out.len() {
            for j in 0..out.len() {
                let fwd = out.members[i]
                    .subgroup
                    .is_contained_in(&out.members[j].subgroup);
                let back = out.members[out.duality[j]]
                    .subgroup
                    .is_contained_in(&out.members[out.duality[i]].subgroup);
                if fwd != back {
                    return Err(Error::Invariant(
                        "centralizer map does not reverse order".into(),
                    ));
                }
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn subgroups(&self) -> impl Iterator<Item = &S> {
        self.members.iter().map(|m| &m.subgroup)
    }

    pub fn index_of(&self, s: &S) -> Option<usize> {
        self.members.binary_search_by(|m| m.subgroup.cmp(s)).ok()
    }

    pub fn contains(&self, s: &S) -> bool {
        self.index_of(s).is_some()
    }

    /// The unique member contained in all others.
    pub fn minimal(&self) -> &CdMember<S> {
        self.members
            .iter()
            .find(|m| {
                self.members
                    .iter()
                    .all(|o| m.subgroup.is_contained_in(&o.subgroup))
            })
            .expect("a lattice has a bottom")
    }

    pub fn maximal(&self) -> &CdMember<S> {
        self.members
            .iter()
            .find(|m| {
                self.members
                    .iter()
                    .all(|o| o.subgroup.is_contained_in(&m.subgroup))
            })
            .expect("a lattice has a top")
    }

    /// Members `K` with `bottom <= K <= top`.
    pub fn interval(&self, bottom: &S, top: &S) -> Result<Vec<&CdMember<S>>> {
        if !self.contains(bottom) || !self.contains(top) {
            return Err(Error::InvalidSubgroup(
                "interval endpoints must be members".into(),
            ));
        }
        if !bottom.is_contained_in(top) {
            return Err(Error::InvalidSubgroup(
                "interval bottom is not below top".into(),
            ));
        }
        Ok(self
            .members
            .iter()
            .filter(|m| bottom.is_contained_in(&m.subgroup) && m.subgroup.is_contained_in(top))
            .collect())
    }

    /// Members `(i, j)` with `i` covered by `j` under containment.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.to_lattice().covers().to_vec()
    }

    /// The member set as an abstract lattice ordered by containment; element
    /// `i` is member `i`.
    pub fn to_lattice(&self) -> FiniteLattice {
        let n = self.len();
        FiniteLattice::from_order(n, |i, j| {
            self.members[i]
                .subgroup
                .is_contained_in(&self.members[j].subgroup)
        })
        .expect("CD members form a lattice")
    }
}

/// Brute-force engine over an explicit Cayley table. Subgroups are
/// enumerated once and cached.
pub struct BruteEngine<'g> {
    group: &'g CayleyGroup,
    cap: usize,
    subgroups: OnceLock<Vec<SubgroupSet>>,
}

impl<'g> BruteEngine<'g> {
    pub fn new(group: &'g CayleyGroup) -> Self {
        Self::with_cap(group, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(group: &'g CayleyGroup, cap: usize) -> Self {
        Self {
            group,
            cap,
            subgroups: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &'g CayleyGroup {
        self.group
    }

    pub fn subgroups(&self) -> Result<&[SubgroupSet]> {
        if let Some(s) = self.subgroups.get() {
            return Ok(s);
        }
        let all = self.group.all_subgroups(self.cap)?;
        Ok(self.subgroups.get_or_init(|| all))
    }

    pub fn measure(&self, h: &SubgroupSet) -> Result<MeasuredSubgroup> {
        self.group.check_subgroup(h.members())?;
        Ok(measure_unchecked(self.group, h))
    }

    pub fn cd_lattice(&self) -> Result<CdResult<SubgroupSet>> {
        let subs = self.subgroups()?;
        let measured: Vec<MeasuredSubgroup> = subs
            .par_iter()
            .map(|h| measure_unchecked(self.group, h))
            .collect();
        let best = measured
            .iter()
            .filter_map(|m| m.measure.value())
            .max()
            .expect("at least the trivial subgroup");
        let members = measured
            .into_iter()
            .filter(|m| m.measure.value() == Some(best))
            .collect();
        CdResult::assemble(
            Measure::from_value(best),
            members,
            |a, b| self.group.intersect(a, b),
            |a, b| self.group.join(a, b),
        )
    }

    /// CD lattice of `h` regarded as a group in its own right; members are
    /// reported as subgroups of the ambient group.
    pub fn cd_within(&self, h: &SubgroupSet) -> Result<CdResult<SubgroupSet>> {
        let g = self.group;
        let inside: Vec<&SubgroupSet> = self
            .subgroups()?
            .iter()
            .filter(|k| k.is_subset(h))
            .collect();
        let measured: Vec<MeasuredSubgroup> = inside
            .par_iter()
            .map(|k| {
                let c = g.intersect(&g.centralizer(k), h);
                let value = k.order() as u128 * c.order() as u128;
                CdMember {
                    subgroup: (*k).clone(),
                    centralizer: c,
                    measure: Measure::from_value(value),
                }
            })
            .collect();
        let best = measured
            .iter()
            .filter_map(|m| m.measure.value())
            .max()
            .expect("nonempty");
        let members = measured
            .into_iter()
            .filter(|m| m.measure.value() == Some(best))
            .collect();
        CdResult::assemble(
            Measure::from_value(best),
            members,
            |a, b| g.intersect(a, b),
            |a, b| g.join(a, b),
        )
    }
}

fn measure_unchecked(g: &CayleyGroup, h: &SubgroupSet) -> MeasuredSubgroup {
    let c = g.centralizer(h);
    let value = h.order() as u128 * c.order() as u128;
    CdMember {
        subgroup: h.clone(),
        centralizer: c,
        measure: Measure::from_value(value),
    }
}

/// `m_G(H) = |H| |C_G(H)|`, with the centralizer as witness.
pub fn measure(g: &CayleyGroup, h: &SubgroupSet) -> Result<MeasuredSubgroup> {
    BruteEngine::new(g).measure(h)
}

/// CD lattice by exhaustive subgroup enumeration under the default cap.
pub fn cd_lattice(g: &CayleyGroup) -> Result<CdResult<SubgroupSet>> {
    BruteEngine::new(g).cd_lattice()
}

pub fn cd_interval<'a, S>(
    result: &'a CdResult<S>,
    bottom: &S,
    top: &S,
) -> Result<Vec<&'a CdMember<S>>>
where
    S: Clone + Ord + Hash + fmt::Debug + Containment,
{
    result.interval(bottom, top)
}

impl SubgroupAlgebra for BruteEngine<'_> {
    type Sub = SubgroupSet;

    fn group_order(&self) -> u128 {
        self.group.order() as u128
    }

    fn order(&self, h: &SubgroupSet) -> u128 {
        h.order() as u128
    }

    fn whole(&self) -> SubgroupSet {
        self.group.whole()
    }

    fn trivial(&self) -> SubgroupSet {
        self.group.trivial_subgroup()
    }

    fn center(&self) -> SubgroupSet {
        self.group.center()
    }

    fn centralizer(&self, h: &SubgroupSet) -> SubgroupSet {
        self.group.centralizer(h)
    }

    fn meet(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        self.group.intersect(a, b)
    }

    fn join(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        self.group.join(a, b)
    }

    fn is_subset(&self, a: &SubgroupSet, b: &SubgroupSet) -> bool {
        a.is_subset(b)
    }

    fn is_abelian(&self, h: &SubgroupSet) -> bool {
        self.group.is_abelian_subgroup(h)
    }

    fn is_normal_in(&self, k: &SubgroupSet, h: &SubgroupSet) -> bool {
        self.group.is_normal_in(k, h)
    }

    fn quotient_is_elementary_abelian(
        &self,
        h: &SubgroupSet,
        l: &SubgroupSet,
        p: u32,
    ) -> Result<bool> {
        self.group.quotient_is_elementary_abelian(h, l, p)
    }

    fn cd_lattice(&self) -> Result<CdResult<SubgroupSet>> {
        BruteEngine::cd_lattice(self)
    }

    fn cd_within(&self, h: &SubgroupSet) -> Result<CdResult<SubgroupSet>> {
        BruteEngine::cd_within(self, h)
    }

    fn describe(&self, h: &SubgroupSet) -> String {
        let gens = self.group.generators(h);
        if gens.is_empty() {
            return "<1>".into();
        }
        let names: Vec<&str> = gens.iter().map(|&g| self.group.label(g)).collect();
        format!("<{}>", names.join(", "))
    }
}
