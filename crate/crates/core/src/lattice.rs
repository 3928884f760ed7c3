//! Finite lattices given by their order relation, with modularity,
//! duality and isomorphism checks.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::fp_linalg::{enumerate_subspaces, subspace_count, Subspace};

/// Largest lattice the isomorphism search accepts.
pub const ISOMORPHISM_SIZE_BUDGET: usize = 10_000;
/// Search nodes visited before the isomorphism search gives up.
pub const ISOMORPHISM_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            words,
            data: vec![0; n * words],
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn count(&self, i: usize) -> u32 {
        self.row(i).iter().map(|w| w.count_ones()).sum()
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + b)
        })
    })
}

/// A finite lattice on elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    /// `down[i]` = `{k : k <= i}`
    down: BitRows,
    /// `up[i]` = `{k : i <= k}`
    up: BitRows,
    down_count: Vec<u32>,
    up_count: Vec<u32>,
    covers: Vec<(usize, usize)>,
    rank: Vec<usize>,
    bottom: usize,
    top: usize,
    labels: Vec<String>,
}

/// An order isomorphism (or anti-isomorphism) `mapping[i]` between two
/// lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    pub mapping: Vec<usize>,
    pub reverses_order: bool,
}

impl FiniteLattice {
    /// Builds the lattice with `i <= j` iff `leq(i, j)`. Fails unless the
    /// relation is a partial order in which every pair has a meet and a join.
    pub fn from_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotALattice("empty poset".into()));
        }
        let mut down = BitRows::new(n);
        let mut up = BitRows::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    down.set(j, i);
                    up.set(i, j);
                }
            }
        }
        for i in 0..n {
            if !down.get(i, i) {
                return Err(Error::NotALattice(format!(
                    "relation is not reflexive at {i}"
                )));
            }
            for j in 0..i {
                if down.get(i, j) && down.get(j, i) {
                    return Err(Error::NotALattice(format!(
                        "{i} and {j} are distinct but equivalent"
                    )));
                }
            }
        }
        for j in 0..n {
            // everything below something below j is below j
            for k in ones(down.row(j)).collect::<Vec<_>>() {
                if down
                    .row(k)
                    .iter()
                    .zip(down.row(j))
                    .any(|(a, b)| a & !b != 0)
                {
                    return Err(Error::NotALattice(format!(
                        "relation is not transitive through {k} <= {j}"
                    )));
                }
            }
        }
        Self::finish(n, down, up)
    }

    /// The lattice of a family of subgroups under inclusion. Fails with the
    /// offending pair when the family is not closed under `meet` and `join`.
    pub fn from_subgroup_family<S: Eq + Hash>(
        members: &[S],
        contains: impl Fn(&S, &S) -> bool,
        meet: impl Fn(&S, &S) -> S,
        join: impl Fn(&S, &S) -> S,
    ) -> Result<Self> {
        let index: HashMap<&S, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
        if index.len() != members.len() {
            return Err(Error::NotALattice(
                "family contains a repeated member".into(),
            ));
        }
        let lattice = Self::from_order(members.len(), |i, j| contains(&members[i], &members[j]))?;
        for i in 0..members.len() {
            for j in 0..i {
                let m = index.get(&meet(&members[i], &members[j]));
                let k = index.get(&join(&members[i], &members[j]));
                if m != Some(&lattice.meet(i, j)) || k != Some(&lattice.join(i, j)) {
                    return Err(Error::NotALattice(format!(
                        "members {j} and {i} have a meet or join outside the family"
                    )));
                }
            }
        }
        Ok(lattice)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::NotALattice(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Builds a lattice from its Hasse diagram: `(i, j)` means `i` is covered
    /// by `j`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::NotALattice(format!("cover ({a}, {b}) out of range")));
        }
        let mut above = vec![Vec::new(); n];
        for &(a, b) in covers {
            above[a].push(b);
        }
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![i];
            while let Some(x) = stack.pop() {
                if !row[x] {
                    row[x] = true;
                    stack.extend(&above[x]);
                }
            }
        }
        let lattice = Self::from_order(n, |i, j| reach[i][j])?;
        let mut given: Vec<(usize, usize)> = covers.to_vec();
        given.sort_unstable();
        given.dedup();
        if given != lattice.covers {
            return Err(Error::NotALattice(
                "cover list contains a non-cover relation".into(),
            ));
        }
        Ok(lattice)
    }

    fn finish(n: usize, down: BitRows, up: BitRows) -> Result<Self> {
        let down_count: Vec<u32> = (0..n).map(|i| down.count(i)).collect();
        let up_count: Vec<u32> = (0..n).map(|i| up.count(i)).collect();
        let bottom = (0..n).find(|&i| up_count[i] as usize == n);
        let top = (0..n).find(|&i| down_count[i] as usize == n);
        let (Some(bottom), Some(top)) = (bottom, top) else {
            return Err(Error::NotALattice("no least or greatest element".into()));
        };
        let mut lattice = Self {
            n,
            down,
            up,
            down_count,
            up_count,
            covers: Vec::new(),
            rank: vec![0; n],
            bottom,
            top,
            labels: (0..n).map(|i| i.to_string()).collect(),
        };
        for i in 0..n {
            for j in 0..i {
                if lattice.try_meet(i, j).is_none() {
                    return Err(Error::NotALattice(format!(
                        "{i} and {j} have no greatest lower bound"
                    )));
                }
                if lattice.try_join(i, j).is_none() {
                    return Err(Error::NotALattice(format!(
                        "{i} and {j} have no least upper bound"
                    )));
                }
            }
        }
        for j in 0..n {
            for i in ones(lattice.down.row(j)) {
                if i == j {
                    continue;
                }
                // no k with i < k < j
                let between = lattice
                    .up
                    .row(i)
                    .iter()
                    .zip(lattice.down.row(j))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>();
                if between == 2 {
                    lattice.covers.push((i, j));
                }
            }
        }
        lattice.covers.sort_unstable();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| lattice.down_count[i]);
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &lattice.covers {
            lower[b].push(a);
        }
        for &i in &order {
            lattice.rank[i] = lower[i]
                .iter()
                .map(|&k| lattice.rank[k] + 1)
                .max()
                .unwrap_or(0);
        }
        Ok(lattice)
    }

    fn try_meet(&self, i: usize, j: usize) -> Option<usize> {
        let inter: Vec<u64> = self
            .down
            .row(i)
            .iter()
            .zip(self.down.row(j))
            .map(|(a, b)| a & b)
            .collect();
        let size: u32 = inter.iter().map(|w| w.count_ones()).sum();
        let found = ones(&inter).find(|&m| self.down_count[m] == size);
        found
    }

    fn try_join(&self, i: usize, j: usize) -> Option<usize> {
        let inter: Vec<u64> = self
            .up
            .row(i)
            .iter()
            .zip(self.up.row(j))
            .map(|(a, b)| a & b)
            .collect();
        let size: u32 = inter.iter().map(|w| w.count_ones()).sum();
        let found = ones(&inter).find(|&m| self.up_count[m] == size);
        found
    }

    /// The lattice of all subspaces of `F_p^n`, with the subspaces in
    /// enumeration order.
    pub fn subspace_lattice(p: u32, n: usize) -> Result<(Self, Vec<Subspace>)> {
        let count = subspace_count(n, p as u64)?;
        if count > ISOMORPHISM_SIZE_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                what: "lattice elements",
                count,
                budget: ISOMORPHISM_SIZE_BUDGET as u128,
            });
        }
        let subspaces: Vec<Subspace> = enumerate_subspaces(p, n, None)?.collect();
        let labels = subspaces
            .iter()
            .map(|s| format!("{:?}", s.basis().row_vecs()))
            .collect();
        let lattice = Self::from_order(subspaces.len(), |i, j| {
            subspaces[i].is_subspace_of(&subspaces[j])
        })?
        .with_labels(labels)?;
        Ok((lattice, subspaces))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.try_meet(i, j).expect("validated lattice")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.try_join(i, j).expect("validated lattice")
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Hasse diagram edges `(i, j)`, `i` covered by `j`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Length of the longest chain below `i`.
    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|c| c.0 == self.bottom)
            .map(|c| c.1)
            .collect()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .covers
            .iter()
            .filter(|c| c.1 == self.top)
            .map(|c| c.0)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn dual(&self) -> Self {
        Self::from_order(self.n, |i, j| self.leq(j, i)).expect("dual of a lattice is a lattice")
    }

    /// The interval `[a, b]` as a lattice, with the original index of each
    /// of its elements.
    pub fn interval(&self, a: usize, b: usize) -> Result<(Self, Vec<usize>)> {
        if !self.leq(a, b) {
            return Err(Error::NotALattice(format!("{a} is not below {b}")));
        }
        let elems: Vec<usize> = (0..self.n)
            .filter(|&k| self.leq(a, k) && self.leq(k, b))
            .collect();
        let sub = Self::from_order(elems.len(), |i, j| self.leq(elems[i], elems[j]))?;
        Ok((sub, elems))
    }

    /// `Some(w)` when the elements other than bottom and top form an
    /// antichain of size `w >= 2`.
    pub fn quasi_antichain_width(&self) -> Option<usize> {
        (self.n >= 4 && self.height() == 2).then_some(self.n - 2)
    }

    /// A triple `(a, b, c)` with `a <= c` and `a ∨ (b ∧ c) != (a ∨ b) ∧ c`,
    /// or `None` when the lattice is modular.
    pub fn modularity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for c in ones(self.up.row(a)).collect::<Vec<_>>() {
                for b in 0..self.n {
                    if self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_witness().is_none()
    }

    fn signatures(&self) -> Vec<(usize, usize, u32, u32, usize, usize)> {
        let mut lower = vec![0usize; self.n];
        let mut upper = vec![0usize; self.n];
        for &(a, b) in &self.covers {
            upper[a] += 1;
            lower[b] += 1;
        }
        let mut above = vec![0usize; self.n];
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&k| self.up_count[k]);
        let mut upper_covers: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b) in &self.covers {
            upper_covers[a].push(b);
        }
        for &k in &order {
            above[k] = upper_covers[k]
                .iter()
                .map(|&c| above[c] + 1)
                .max()
                .unwrap_or(0);
        }
        (0..self.n)
            .map(|i| {
                (
                    self.rank[i],
                    above[i],
                    self.down_count[i],
                    self.up_count[i],
                    lower[i],
                    upper[i],
                )
            })
            .collect()
    }

    /// Searches for an order isomorphism `self -> other`.
    pub fn find_isomorphism(&self, other: &Self) -> Result<Option<LatticeIso>> {
        if self.n > ISOMORPHISM_SIZE_BUDGET || other.n > ISOMORPHISM_SIZE_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "lattice elements",
                count: self.n.max(other.n) as u128,
                budget: ISOMORPHISM_SIZE_BUDGET as u128,
            });
        }
        if self.n != other.n || self.covers.len() != other.covers.len() {
            return Ok(None);
        }
        let sig_a = self.signatures();
        let sig_b = other.signatures();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return Ok(None);
        }
        let mut class_size: HashMap<_, usize> = HashMap::new();
        for s in &sig_a {
            *class_size.entry(*s).or_default() += 1;
        }
        let order = self.search_order(|i| class_size[&sig_a[i]]);
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b) in &self.covers {
            lower[b].push(a);
            upper[a].push(b);
        }
        let mut lower_b: Vec<Vec<usize>> = vec![Vec::new(); other.n];
        let mut upper_b: Vec<Vec<usize>> = vec![Vec::new(); other.n];
        for &(a, b) in &other.covers {
            lower_b[b].push(a);
            upper_b[a].push(b);
        }
        let mut search = IsoSearch {
            a: self,
            b: other,
            sig_a: &sig_a,
            sig_b: &sig_b,
            order: &order,
            lower: &lower,
            upper: &upper,
            lower_b: &lower_b,
            upper_b: &upper_b,
            map: vec![usize::MAX; self.n],
            used: vec![false; other.n],
            nodes: 0,
        };
        match search.extend(0) {
            Some(true) => {
                let iso = LatticeIso {
                    mapping: search.map,
                    reverses_order: false,
                };
                if !self.verify_map(other, &iso) {
                    return Err(Error::Invariant(
                        "isomorphism search returned an invalid map".into(),
                    ));
                }
                Ok(Some(iso))
            }
            Some(false) => Ok(None),
            None => Err(Error::BudgetExceeded {
                what: "isomorphism search nodes",
                count: search.nodes as u128,
                budget: ISOMORPHISM_NODE_BUDGET as u128,
            }),
        }
    }

    /// Placement order for the isomorphism search: greedily the element
    /// comparable to the most already-placed ones, ties broken by the size
    /// of its invariant class, so each step is as constrained as possible.
    fn search_order(&self, class_size: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut placed = vec![false; self.n];
        let mut links = vec![0usize; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let next = (0..self.n)
                .filter(|&i| !placed[i])
                .min_by_key(|&i| (std::cmp::Reverse(links[i]), class_size(i), i))
                .expect("unplaced element");
            placed[next] = true;
            order.push(next);
            for k in 0..self.n {
                if self.leq(k, next) || self.leq(next, k) {
                    links[k] += 1;
                }
            }
        }
        order
    }

    /// An order-reversing bijection of the lattice onto itself, if any.
    pub fn self_duality(&self) -> Result<Option<LatticeIso>> {
        Ok(self.find_isomorphism(&self.dual())?.map(|iso| LatticeIso {
            reverses_order: true,
            ..iso
        }))
    }

    pub fn is_self_dual(&self) -> Result<bool> {
        Ok(self.self_duality()?.is_some())
    }

    /// Checks that `iso` is a bijection preserving (or reversing) order.
    pub fn verify_map(&self, other: &Self, iso: &LatticeIso) -> bool {
        if iso.mapping.len() != self.n || self.n != other.n {
            return false;
        }
        let mut seen = vec![false; other.n];
        for &x in &iso.mapping {
            if x >= other.n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let (fi, fj) = (iso.mapping[i], iso.mapping[j]);
                let image = if iso.reverses_order {
                    other.leq(fj, fi)
                } else {
                    other.leq(fi, fj)
                };
                self.leq(i, j) == image
            })
        })
    }

    /// Graphviz Hasse diagram, bottom to top; output depends only on the
    /// lattice and the labels.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for i in 0..self.n {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&label(i)));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct IsoSearch<'a> {
    a: &'a FiniteLattice,
    b: &'a FiniteLattice,
    sig_a: &'a [(usize, usize, u32, u32, usize, usize)],
    sig_b: &'a [(usize, usize, u32, u32, usize, usize)],
    order: &'a [usize],
    lower: &'a [Vec<usize>],
    upper: &'a [Vec<usize>],
    lower_b: &'a [Vec<usize>],
    upper_b: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
}

impl IsoSearch<'_> {
    /// `Some(found)`, or `None` when the node budget runs out.
    fn extend(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > ISOMORPHISM_NODE_BUDGET {
            return None;
        }
        let i = self.order[depth];
        // the image of i must be adjacent to the images of its placed covers
        let placed = |k: &&usize| self.map[**k] != usize::MAX;
        let candidates: Vec<usize> = if let Some(&k) = self.lower[i].iter().find(placed) {
            self.upper_b[self.map[k]].clone()
        } else if let Some(&k) = self.upper[i].iter().find(placed) {
            self.lower_b[self.map[k]].clone()
        } else {
            (0..self.b.n).collect()
        };
        for c in candidates {
            if self.used[c] || self.sig_a[i] != self.sig_b[c] || !self.consistent(depth, i, c) {
                continue;
            }
            self.map[i] = c;
            self.used[c] = true;
            match self.extend(depth + 1) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.used[c] = false;
            self.map[i] = usize::MAX;
        }
        Some(false)
    }

    fn consistent(&self, depth: usize, i: usize, c: usize) -> bool {
        self.order[..depth].iter().all(|&k| {
            let fk = self.map[k];
            self.a.leq(k, i) == self.b.leq(fk, c) && self.a.leq(i, k) == self.b.leq(c, fk)
        })
    }
}
