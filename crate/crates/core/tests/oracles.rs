//! Engine outputs compared against deliberately naive reimplementations.

use std::collections::BTreeSet;

use cdlattice::algebra::SubgroupAlgebra;
use cdlattice::constructions::{
    cyclic, dihedral, elementary_abelian, extraspecial, paper_gn, quaternion8, symmetric3,
    ExtraspecialType,
};
use cdlattice::fp_linalg::{
    enumerate_subspaces, gaussian_binomial, scalar_pair_solution_dim, subspace_count,
};
use cdlattice::{BruteEngine, CayleyGroup, Class2Engine};

/// Every subset of a group of order at most 12 that is closed under the
/// product (a finite nonempty closed subset is a subgroup).
fn naive_subgroups(g: &CayleyGroup) -> Vec<BTreeSet<usize>> {
    let n = g.order();
    assert!(n <= 12);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
        {
            out.push(set);
        }
    }
    out
}

fn naive_centralizer_order(g: &CayleyGroup, h: &BTreeSet<usize>) -> usize {
    (0..g.order())
        .filter(|&x| h.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .count()
}

/// Members of CD(G) found by measuring every subset-enumerated subgroup.
fn naive_cd(g: &CayleyGroup) -> (usize, Vec<BTreeSet<usize>>) {
    let subs = naive_subgroups(g);
    let measures: Vec<usize> = subs
        .iter()
        .map(|h| h.len() * naive_centralizer_order(g, h))
        .collect();
    let best = *measures.iter().max().unwrap();
    let mut members: Vec<BTreeSet<usize>> = subs
        .into_iter()
        .zip(&measures)
        .filter(|(_, &m)| m == best)
        .map(|(h, _)| h)
        .collect();
    members.sort();
    (best, members)
}

#[test]
fn brute_engine_matches_subset_enumeration() {
    let groups = [
        ("C6", cyclic(6).unwrap()),
        ("C8", cyclic(8).unwrap()),
        ("C12", cyclic(12).unwrap()),
        ("V4", elementary_abelian(2, 2).unwrap()),
        ("E8", elementary_abelian(2, 3).unwrap()),
        ("S3", symmetric3().unwrap()),
        ("D8", dihedral(8).unwrap()),
        ("D12", dihedral(12).unwrap()),
        ("Q8", quaternion8().unwrap()),
    ];
    for (name, g) in &groups {
        let engine = BruteEngine::new(g);
        let subs = engine.subgroups().unwrap();
        assert_eq!(
            subs.len(),
            naive_subgroups(g).len(),
            "{name}: subgroup count"
        );
        let (best, members) = naive_cd(g);
        let cd = engine.cd_lattice().unwrap();
        assert_eq!(cd.max_measure.value(), Some(best as u128), "{name}: m*");
        let mut found: Vec<BTreeSet<usize>> = cd
            .subgroups()
            .map(|s| s.elements().into_iter().collect())
            .collect();
        found.sort();
        assert_eq!(found, members, "{name}: members");
    }
}

#[test]
fn known_subgroup_counts() {
    // D8: 10, Q8: 6, D12: 16, E8: 16
    let counts = [
        (dihedral(8).unwrap(), 10),
        (quaternion8().unwrap(), 6),
        (dihedral(12).unwrap(), 16),
        (elementary_abelian(2, 3).unwrap(), 16),
    ];
    for (g, expected) in counts {
        assert_eq!(BruteEngine::new(&g).subgroups().unwrap().len(), expected);
    }
}

/// Distinct spans of all tuples of `k` vectors, as sorted element lists.
fn naive_subspaces(p: u32, n: usize) -> BTreeSet<Vec<Vec<u32>>> {
    let vectors: Vec<Vec<u32>> = (0..(p as usize).pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        })
        .collect();
    let mut spaces = BTreeSet::new();
    spaces.insert(vec![vec![0; n]]);
    let mut frontier: Vec<BTreeSet<Vec<u32>>> = vec![[vec![0u32; n]].into_iter().collect()];
    while let Some(space) = frontier.pop() {
        for v in &vectors {
            if space.contains(v) {
                continue;
            }
            let mut bigger = space.clone();
            for c in 1..p {
                for u in &space {
                    bigger.insert(u.iter().zip(v).map(|(a, b)| (a + c * b) % p).collect());
                }
            }
            let key: Vec<Vec<u32>> = bigger.iter().cloned().collect();
            if spaces.insert(key) {
                frontier.push(bigger);
            }
        }
    }
    spaces
}

#[test]
fn subspace_enumeration_matches_span_closure() {
    for (p, n) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let naive = naive_subspaces(p, n);
        let enumerated: BTreeSet<Vec<Vec<u32>>> = enumerate_subspaces(p, n, None)
            .unwrap()
            .map(|s| {
                let mut e = s.elements();
                e.sort();
                e
            })
            .collect();
        assert_eq!(enumerated, naive, "F_{p}^{n}");
        assert_eq!(subspace_count(n, p as u64).unwrap(), naive.len() as u128);
        for k in 0..=n {
            let dim_k = naive
                .iter()
                .filter(|s| s.len() == (p as usize).pow(k as u32))
                .count();
            assert_eq!(gaussian_binomial(n, k, p as u64).unwrap(), dim_k as u128);
        }
    }
}

/// Pairs `(A, B)` with `AZ = ZB` for all antisymmetric `Z`, by exhaustive
/// search over all matrix pairs.
fn naive_scalar_pairs(n: usize, p: u32) -> usize {
    let cells = n * n;
    let total = (p as usize).pow(2 * cells as u32);
    let mut zs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut z = vec![0u32; cells];
            z[i * n + j] = 1;
            z[j * n + i] = p - 1;
            zs.push(z);
        }
    }
    let mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        (0..cells)
            .map(|c| {
                let (r, k) = (c / n, c % n);
                (0..n).map(|t| x[r * n + t] * y[t * n + k]).sum::<u32>() % p
            })
            .collect()
    };
    let mut solutions = 0;
    let mut entries = vec![0u32; 2 * cells];
    for mut code in 0..total {
        for e in entries.iter_mut() {
            *e = (code % p as usize) as u32;
            code /= p as usize;
        }
        let (a, b) = entries.split_at(cells);
        if zs.iter().all(|z| mul(a, z) == mul(z, b)) {
            solutions += 1;
        }
    }
    solutions
}

#[test]
fn scalar_pair_dimension_matches_exhaustive_search() {
    // dimension d means p^d solutions
    assert_eq!(naive_scalar_pairs(3, 2), 2);
    assert_eq!(scalar_pair_solution_dim(3, 2).unwrap(), 1);
    assert_eq!(naive_scalar_pairs(2, 3), 81);
    assert_eq!(scalar_pair_solution_dim(2, 3).unwrap(), 4);
    assert_eq!(naive_scalar_pairs(2, 2), 16);
    assert_eq!(scalar_pair_solution_dim(2, 2).unwrap(), 4);
}

/// Class-2 CD lattices against brute force on the Cayley table, through the
/// preimage of each member.
#[test]
fn class2_engine_matches_brute_force_on_small_presentations() {
    let presentations = [
        paper_gn(2, 1).unwrap(),
        extraspecial(2, 1, ExtraspecialType::Plus).unwrap(),
        extraspecial(2, 1, ExtraspecialType::Minus).unwrap(),
        extraspecial(2, 2, ExtraspecialType::Plus).unwrap(),
        extraspecial(2, 2, ExtraspecialType::Minus).unwrap(),
        extraspecial(3, 1, ExtraspecialType::Plus).unwrap(),
        extraspecial(3, 1, ExtraspecialType::Minus).unwrap(),
    ];
    for pres in &presentations {
        let table = pres.to_cayley(64).unwrap();
        let brute = BruteEngine::new(&table).cd_lattice().unwrap();
        let class2 = Class2Engine::new(pres).cd_lattice().unwrap();
        assert_eq!(brute.max_measure, class2.max_measure, "{pres:?}");
        let mut lifted: Vec<_> = class2
            .subgroups()
            .map(|m| {
                table
                    .subgroup(&pres.preimage_indices(m.subspace()).unwrap())
                    .unwrap()
            })
            .collect();
        lifted.sort();
        assert!(lifted.iter().eq(brute.subgroups()), "{pres:?}");
    }
}

/// The collected product agrees with the Cayley table built from it, which
/// validates associativity exhaustively for orders up to 256.
#[test]
fn collection_yields_groups() {
    for pres in [
        paper_gn(2, 1).unwrap(),
        extraspecial(2, 3, ExtraspecialType::Minus).unwrap(),
        extraspecial(5, 1, ExtraspecialType::Minus).unwrap(),
    ] {
        let g = pres.to_cayley(256).unwrap();
        let engine = BruteEngine::with_cap(&g, 256);
        assert_eq!(engine.group_order(), g.order() as u128);
        assert_eq!(
            g.center().order() as u128,
            Class2Engine::new(&pres).order(&pres.center())
        );
    }
}
