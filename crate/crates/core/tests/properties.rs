use cdlattice::algebra::SubgroupAlgebra;
use cdlattice::class2::{CommutatorEntry, PElement};
use cdlattice::constructions::{dihedral, paper_gn, quaternion8, GroupRecipe};
use cdlattice::fp_linalg::{FpMatrix, Subspace};
use cdlattice::{BruteEngine, Class2Engine, Class2Presentation};
use proptest::prelude::*;

const PRIMES: [u32; 3] = [2, 3, 5];

fn matrix() -> impl Strategy<Value = FpMatrix> {
    (0..3usize, 1..5usize, 1..6usize).prop_flat_map(|(pi, rows, cols)| {
        let p = PRIMES[pi];
        proptest::collection::vec(0..p as i64, rows * cols)
            .prop_map(move |e| FpMatrix::new(p, rows, cols, &e).unwrap())
    })
}

fn subspace_pair() -> impl Strategy<Value = (Subspace, Subspace)> {
    (0..3usize, 1..6usize).prop_flat_map(|(pi, n)| {
        let p = PRIMES[pi];
        let vecs = proptest::collection::vec(proptest::collection::vec(0..p as i64, n), 0..4);
        (vecs.clone(), vecs).prop_map(move |(a, b)| {
            (
                Subspace::span(p, n, &a).unwrap(),
                Subspace::span(p, n, &b).unwrap(),
            )
        })
    })
}

/// A random class-2 presentation with `r <= 4`, `s <= 2` over a small prime.
fn presentation() -> impl Strategy<Value = Class2Presentation> {
    (0..2usize, 1..5usize, 1..3usize).prop_flat_map(|(pi, r, s)| {
        let p = PRIMES[pi];
        let pairs = r * (r - 1) / 2;
        (
            proptest::collection::vec(proptest::collection::vec(0..p as i64, s), pairs),
            proptest::collection::vec(proptest::collection::vec(0..p as i64, s), r),
        )
            .prop_map(move |(comms, pows)| {
                let mut entries = Vec::new();
                let mut k = 0;
                for i in 0..r {
                    for j in i + 1..r {
                        entries.push(CommutatorEntry::new(j, i, comms[k].clone()));
                        k += 1;
                    }
                }
                Class2Presentation::new(p, r, s, &entries, Some(&pows)).unwrap()
            })
    })
}

fn element(pres: &Class2Presentation, seed: &[u32]) -> PElement {
    let p = pres.p();
    let a: Vec<i64> = (0..pres.r())
        .map(|i| (seed[i % seed.len()] % p) as i64)
        .collect();
    let z: Vec<i64> = (0..pres.s())
        .map(|t| (seed[(t + 3) % seed.len()] / 7 % p) as i64)
        .collect();
    pres.element(&a, &z).unwrap()
}

proptest! {
    #[test]
    fn rref_is_idempotent_and_rank_nullity_holds(m in matrix()) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(m.rank() + m.nullspace().dim(), m.cols());
        for v in m.nullspace().basis_vectors() {
            prop_assert!(m.apply(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions((a, b) in subspace_pair()) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
        prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        prop_assert_eq!(a.dot_perp().dot_perp(), a.clone());
        prop_assert_eq!(a.dot_perp().dim() + a.dim(), a.ambient_dim());
    }

    #[test]
    fn collection_is_associative_with_inverses(
        pres in presentation(),
        x in proptest::collection::vec(0u32..1000, 6),
        y in proptest::collection::vec(0u32..1000, 6),
        z in proptest::collection::vec(0u32..1000, 6),
    ) {
        let (g, h, k) = (element(&pres, &x), element(&pres, &y), element(&pres, &z));
        let left = pres.multiply(&pres.multiply(&g, &h), &k);
        let right = pres.multiply(&g, &pres.multiply(&h, &k));
        prop_assert_eq!(left, right);
        prop_assert_eq!(pres.multiply(&g, &pres.inverse(&g)), pres.identity());
        prop_assert_eq!(pres.pow(&g, pres.p() as u64 * pres.p() as u64), pres.identity());
    }

    #[test]
    fn commutator_form_is_alternating_and_matches_elements(
        pres in presentation(),
        x in proptest::collection::vec(0u32..1000, 6),
        y in proptest::collection::vec(0u32..1000, 6),
    ) {
        let (g, h) = (element(&pres, &x), element(&pres, &y));
        let c = pres.commutator(&g, &h);
        prop_assert!(c.a.iter().all(|&v| v == 0));
        prop_assert_eq!(&c.z, &pres.commutator_form(&g.a, &h.a));
        prop_assert!(pres.commutator_form(&g.a, &g.a).iter().all(|&v| v == 0));
    }

    #[test]
    fn class2_measures_are_bounded_by_m_star(pres in presentation(), vecs in proptest::collection::vec(proptest::collection::vec(0i64..5, 4), 0..3)) {
        let engine = Class2Engine::new(&pres);
        let cd = engine.cd_lattice().unwrap();
        let vecs: Vec<Vec<i64>> = vecs.into_iter().map(|v| v[..pres.r()].to_vec()).collect();
        let w = Subspace::span(pres.p(), pres.r(), &vecs).unwrap();
        let h = pres.central_subgroup(w).unwrap();
        let m = engine.measure_value(&h);
        prop_assert!(m <= cd.max_measure.value().unwrap());
        prop_assert_eq!(m == cd.max_measure.value().unwrap(), cd.contains(&h));
        // centralizers reverse inclusion
        let c = engine.centralizer(&h);
        prop_assert!(engine.is_subset(&engine.centralizer(&c), &engine.whole()));
        prop_assert!(engine.is_subset(&h, &engine.centralizer(&c)));
    }

    #[test]
    fn phi_is_monotone_and_sized((a, b) in subspace_pair().prop_filter("n <= 3", |(a, _)| a.ambient_dim() <= 3 && a.p() <= 3)) {
        let (p, n) = (a.p(), a.ambient_dim());
        let g = GroupRecipe::build_with("paper_Gn", &[("p", &p.to_string()), ("n", &n.to_string())]).unwrap();
        let (fa, fb) = (g.u_phi(&a).unwrap(), g.u_phi(&b).unwrap());
        prop_assert_eq!(fa.order_exponent() as usize, 3 * a.dim() + 3);
        prop_assert_eq!(a.is_subspace_of(&b), fa.subspace().is_subspace_of(fb.subspace()));
        let sum = g.u_phi(&a.sum(&b).unwrap()).unwrap();
        prop_assert_eq!(sum.subspace(), &fa.subspace().sum(fb.subspace()).unwrap());
        let meet = g.u_phi(&a.intersect(&b).unwrap()).unwrap();
        prop_assert_eq!(meet.subspace(), &fa.subspace().intersect(fb.subspace()).unwrap());
        let pres = paper_gn(p, n).unwrap();
        let perp = g.u_phi(&a.dot_perp()).unwrap();
        prop_assert_eq!(pres.perp(fa.subspace()).unwrap(), perp.subspace().clone());
    }
}

#[test]
fn centralizers_reverse_inclusion_in_small_groups() {
    for g in [
        dihedral(8).unwrap(),
        quaternion8().unwrap(),
        dihedral(12).unwrap(),
    ] {
        let engine = BruteEngine::new(&g);
        let subs = engine.subgroups().unwrap();
        for h in subs {
            for k in subs.iter().filter(|k| k.is_subset(h)) {
                assert!(g.centralizer(h).is_subset(&g.centralizer(k)));
            }
            assert!(h.is_subset(&g.centralizer(&g.centralizer(h))));
        }
    }
}
