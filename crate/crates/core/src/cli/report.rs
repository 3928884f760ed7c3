//! The JSON lattice report and its DOT rendering.

use serde::{Deserialize, Serialize};

use crate::algebra::SubgroupAlgebra;
use crate::cd::{BruteEngine, CdResult};
use crate::class2::Class2Engine;
use crate::error::{Error, Result};
use crate::group::prime_power;
use crate::lattice::FiniteLattice;

/// An order or measure: `"p^e"` in a `p`-group, a plain integer otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Plain(u64),
    Factored(String),
}

impl Quantity {
    fn render(value: u128, prime: Option<u64>) -> Self {
        if let Some(p) = prime {
            let mut e = 0u32;
            let mut v = value;
            while v > 1 && v.is_multiple_of(p as u128) {
                v /= p as u128;
                e += 1;
            }
            if v == 1 {
                return Quantity::Factored(format!("{p}^{e}"));
            }
        }
        match u64::try_from(value) {
            Ok(v) => Quantity::Plain(v),
            Err(_) => Quantity::Factored(value.to_string()),
        }
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::Plain(v) => write!(f, "{v}"),
            Quantity::Factored(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberReport {
    pub id: usize,
    pub order: Quantity,
    pub generators: Vec<String>,
    /// Basis of the member's image in `G/Z0` (class-2 engine only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u32>>>,
    pub measure: Quantity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CdReport {
    pub group: String,
    pub engine: String,
    pub order: Quantity,
    pub max_measure: Quantity,
    pub max_measure_value: u128,
    pub members: Vec<MemberReport>,
    /// `[lo, hi]`: member `lo` is covered by member `hi`.
    pub covers: Vec<[usize; 2]>,
    /// `[a, b]`: member `b` is the centralizer of member `a`.
    pub duality: Vec<[usize; 2]>,
}

fn common<A: SubgroupAlgebra>(
    alg: &A,
    cd: &CdResult<A::Sub>,
) -> (Option<u64>, Vec<[usize; 2]>, Vec<[usize; 2]>) {
    let prime = prime_power(alg.group_order()).map(|(p, _)| p);
    let covers = cd.covers().into_iter().map(|(a, b)| [a, b]).collect();
    let duality = cd
        .duality
        .iter()
        .enumerate()
        .map(|(a, &b)| [a, b])
        .collect();
    (prime, covers, duality)
}

impl CdReport {
    pub fn from_brute(
        group: &str,
        engine: &BruteEngine<'_>,
        cd: &CdResult<crate::group::SubgroupSet>,
    ) -> Self {
        let (prime, covers, duality) = common(engine, cd);
        let g = engine.group();
        let members = cd
            .members
            .iter()
            .enumerate()
            .map(|(id, m)| MemberReport {
                id,
                order: Quantity::render(m.subgroup.order() as u128, prime),
                generators: g
                    .generators(&m.subgroup)
                    .iter()
                    .map(|&x| g.label(x).to_string())
                    .collect(),
                basis: None,
                measure: Quantity::render(engine.measure_value(&m.subgroup), prime),
            })
            .collect();
        let max = cd.max_measure.value().unwrap_or(0);
        Self {
            group: group.into(),
            engine: "brute".into(),
            order: Quantity::render(g.order() as u128, prime),
            max_measure: Quantity::render(max, prime),
            max_measure_value: max,
            members,
            covers,
            duality,
        }
    }

    pub fn from_class2(
        group: &str,
        engine: &Class2Engine<'_>,
        cd: &CdResult<crate::class2::CentralSubgroup>,
    ) -> Self {
        let (prime, covers, duality) = common(engine, cd);
        let pres = engine.presentation();
        let members = cd
            .members
            .iter()
            .enumerate()
            .map(|(id, m)| {
                let w = m.subgroup.subspace();
                let mut generators: Vec<String> = w
                    .basis_vectors()
                    .map(|u| pres.element_label(&pres.lift(u)))
                    .collect();
                generators.extend(pres.central_names().iter().cloned());
                MemberReport {
                    id,
                    order: Quantity::render(engine.order(&m.subgroup), prime),
                    generators,
                    basis: Some(w.basis().row_vecs()),
                    measure: Quantity::render(engine.measure_value(&m.subgroup), prime),
                }
            })
            .collect();
        let max = cd.max_measure.value().unwrap_or(0);
        Self {
            group: group.into(),
            engine: "class2".into(),
            order: Quantity::render(engine.group_order(), prime),
            max_measure: Quantity::render(max, prime),
            max_measure_value: max,
            members,
            covers,
            duality,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let report: Self =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("report: {e}")))?;
        report.validate()?;
        Ok(report)
    }

    fn validate(&self) -> Result<()> {
        let n = self.members.len();
        if let Some((i, m)) = self.members.iter().enumerate().find(|(i, m)| m.id != *i) {
            return Err(Error::Input(format!(
                "member at position {i} has id {}",
                m.id
            )));
        }
        if let Some(c) = self
            .covers
            .iter()
            .chain(&self.duality)
            .find(|c| c[0] >= n || c[1] >= n)
        {
            return Err(Error::Input(format!(
                "edge [{}, {}] refers to a missing member",
                c[0], c[1]
            )));
        }
        Ok(())
    }

    /// The member lattice rebuilt from the cover list.
    pub fn lattice(&self) -> Result<FiniteLattice> {
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        FiniteLattice::from_covers(self.members.len(), &covers)
            .map_err(|e| Error::Input(format!("report covers do not describe a lattice: {e}")))
    }

    /// Hasse diagram with nodes labelled `order=..., m=...`.
    pub fn to_dot(&self) -> Result<String> {
        let lattice = self.lattice()?;
        Ok(lattice.to_dot(&self.group, |i| {
            let m = &self.members[i];
            format!("order={}, m={}", m.order, m.measure)
        }))
    }
}
