//! Builders for every group in the corpus, plus the `v -> v^φ` and
//! `U -> U^φ` subgroup builders for the groups `G_n`.
//!
//! `G_n` is the central product of `n` copies of
//! `P = <x, y, w; z1, z2, z3 | [x,y] = z1, [y,w] = z2, [w,x] = z3>`
//! (all generators of order `p`, the `z_t` central). It is built directly as
//! a block-diagonal commutator tensor on generators ordered
//! `x1, y1, w1, ..., xn, yn, wn`.

use std::collections::BTreeMap;

use crate::class2::{CentralSubgroup, Class2Presentation, CommutatorEntry};
use crate::error::{Error, Result};
use crate::fp_linalg::{check_prime, Subspace};
use crate::group::CayleyGroup;

pub fn cyclic(n: usize) -> Result<CayleyGroup> {
    if n == 0 {
        return Err(invalid("cyclic", "order must be positive"));
    }
    let labels = (0..n)
        .map(|k| if k == 0 { "1".into() } else { format!("a^{k}") })
        .collect();
    CayleyGroup::from_fn(n, Some(labels), |a, b| (a + b) % n)
}

/// `(Z/p)^k`, element index = base-`p` digits with coordinate 0 least
/// significant.
pub fn elementary_abelian(p: u32, k: usize) -> Result<CayleyGroup> {
    check_prime(p)?;
    let p = p as usize;
    let n = p
        .checked_pow(k as u32)
        .ok_or_else(|| invalid("elementary_abelian", "order overflows"))?;
    let digits = |mut x: usize| -> Vec<usize> {
        (0..k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let labels = (0..n).map(|x| format!("{:?}", digits(x))).collect();
    CayleyGroup::from_fn(n, Some(labels), |a, b| {
        let (da, db) = (digits(a), digits(b));
        da.iter()
            .zip(&db)
            .rev()
            .fold(0, |acc, (x, y)| acc * p + (x + y) % p)
    })
}

/// Dihedral group of order `n` (`n` even): `r^k s^e` has index `e*(n/2) + k`.
pub fn dihedral(n: usize) -> Result<CayleyGroup> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(invalid("dihedral", "order must be even and at least 2"));
    }
    let m = n / 2;
    let labels = (0..n)
        .map(|x| {
            let (e, k) = (x / m, x % m);
            match (k, e) {
                (0, 0) => "1".to_string(),
                (0, 1) => "s".to_string(),
                (1, 0) => "r".to_string(),
                (1, 1) => "rs".to_string(),
                (k, 0) => format!("r^{k}"),
                (k, _) => format!("r^{k}s"),
            }
        })
        .collect();
    CayleyGroup::from_fn(n, Some(labels), |x, y| {
        let (e, k) = (x / m, x % m);
        let (f, l) = (y / m, y % m);
        // s r^l = r^-l s
        let k2 = if e == 0 { (k + l) % m } else { (k + m - l) % m };
        ((e + f) % 2) * m + k2
    })
}

/// Dicyclic group of order `n` (`n` divisible by 4); `n = 8` is the
/// quaternion group. `a^k x^e` has index `e*(n/2) + k`, with `x^2 = a^(n/4)`.
pub fn quaternion(n: usize) -> Result<CayleyGroup> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(invalid("quaternion", "order must be a multiple of 4"));
    }
    let m2 = n / 2;
    let m = n / 4;
    let labels = (0..n)
        .map(|x| {
            let (e, k) = (x / m2, x % m2);
            match (k, e) {
                (0, 0) => "1".to_string(),
                (0, _) => "x".to_string(),
                (k, 0) => format!("a^{k}"),
                (k, _) => format!("a^{k}x"),
            }
        })
        .collect();
    CayleyGroup::from_fn(n, Some(labels), |x, y| {
        let (e, k) = (x / m2, x % m2);
        let (f, l) = (y / m2, y % m2);
        match (e, f) {
            (0, f) => f * m2 + (k + l) % m2,
            // x a^l = a^-l x
            (_, 0) => m2 + (k + m2 - l) % m2,
            // a^k x a^l x = a^(k-l) x^2 = a^(k-l+m)
            _ => (k + m2 - l + m) % m2,
        }
    })
}

pub fn quaternion8() -> Result<CayleyGroup> {
    quaternion(8)
}

/// Symmetric group on three points; elements in lexicographic order of
/// their images, composition `(στ)(i) = σ(τ(i))`.
pub fn symmetric3() -> Result<CayleyGroup> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let labels = ["()", "(12)", "(01)", "(012)", "(021)", "(02)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    CayleyGroup::from_fn(6, Some(labels), |a, b| {
        let (s, t) = (perms[a], perms[b]);
        let c = [s[t[0]], s[t[1]], s[t[2]]];
        perms.iter().position(|q| *q == c).expect("closed")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtraspecialType {
    /// Exponent `p` (odd `p`); central product of dihedral groups at `p = 2`.
    Plus,
    /// Exponent `p^2` (odd `p`); one quaternion factor at `p = 2`.
    Minus,
}

/// Extraspecial group of order `p^(2n+1)` as a class-2 presentation: `n`
/// symplectic pairs `[e_2i, e_2i+1] = z`.
pub fn extraspecial(p: u32, n: usize, kind: ExtraspecialType) -> Result<Class2Presentation> {
    if n == 0 {
        return Err(invalid("extraspecial", "n must be at least 1"));
    }
    check_prime(p)?;
    let r = 2 * n;
    let entries: Vec<CommutatorEntry> = (0..n)
        .map(|i| CommutatorEntry::new(2 * i, 2 * i + 1, vec![1]))
        .collect();
    let mut powers = vec![vec![0i64]; r];
    if kind == ExtraspecialType::Minus {
        powers[0] = vec![1];
        if p == 2 {
            powers[1] = vec![1];
        }
    }
    let names = (1..=n)
        .flat_map(|i| [format!("a{i}"), format!("b{i}")])
        .collect();
    Class2Presentation::new(p, r, 1, &entries, Some(&powers))?.with_names(names, vec!["z".into()])
}

/// Extraspecial 2-group of order `2^(2n+1)` built as a central product of
/// Cayley tables: `n` dihedral factors, the first replaced by a quaternion
/// factor for the minus type.
pub fn extraspecial_2_central_product(n: usize, kind: ExtraspecialType) -> Result<CayleyGroup> {
    if n == 0 {
        return Err(invalid("extraspecial", "n must be at least 1"));
    }
    let mut factors = Vec::with_capacity(n);
    for i in 0..n {
        factors.push(if i == 0 && kind == ExtraspecialType::Minus {
            quaternion8()?
        } else {
            dihedral(8)?
        });
    }
    let centers: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            let z = f.center();
            let mut c = z.elements();
            // identity first, then the central involution
            c.sort_by_key(|&x| x != f.identity());
            c
        })
        .collect();
    CayleyGroup::central_product(&factors, &centers)
}

/// The single-copy group `P` of order `p^6`.
pub fn paper_p(p: u32) -> Result<Class2Presentation> {
    paper_gn(p, 1)
}

/// `G_n`, the central product of `n` copies of `P`, of order `p^(3n+3)`.
pub fn paper_gn(p: u32, n: usize) -> Result<Class2Presentation> {
    if n == 0 {
        return Err(invalid("paper_Gn", "n must be at least 1"));
    }
    check_prime(p)?;
    let mut entries = Vec::with_capacity(3 * n);
    for i in 0..n {
        let (x, y, w) = (3 * i, 3 * i + 1, 3 * i + 2);
        entries.push(CommutatorEntry::new(x, y, vec![1, 0, 0]));
        entries.push(CommutatorEntry::new(y, w, vec![0, 1, 0]));
        entries.push(CommutatorEntry::new(w, x, vec![0, 0, 1]));
    }
    let names = (1..=n)
        .flat_map(|i| [format!("x{i}"), format!("y{i}"), format!("w{i}")])
        .collect();
    let central = (1..=3).map(|t| format!("z{t}")).collect();
    Class2Presentation::new(p, 3 * n, 3, &entries, None)?.with_names(names, central)
}

fn invalid(name: &str, reason: &str) -> Error {
    Error::InvalidParams {
        name: name.into(),
        reason: reason.into(),
    }
}

#[derive(Clone, Debug)]
pub enum GroupProduct {
    Cayley(CayleyGroup),
    Class2(Class2Presentation),
}

/// A named, parameterised construction and the group it produced.
#[derive(Clone, Debug)]
pub struct GroupRecipe {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub product: GroupProduct,
}

pub const BUILTIN_NAMES: [&str; 8] = [
    "cyclic",
    "elementary_abelian",
    "dihedral",
    "quaternion",
    "symmetric3",
    "extraspecial",
    "paper_P",
    "paper_Gn",
];

impl GroupRecipe {
    /// Builds a named group. Parameters by name:
    /// `cyclic(n)`, `elementary_abelian(p, n)`, `dihedral(n)`,
    /// `quaternion(n = 8)`, `symmetric3`, `extraspecial(p, n, type = plus|minus,
    /// repr = class2|cayley)`, `paper_P(p)`, `paper_Gn(p, n)`.
    pub fn build(name: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let int = |key: &str| -> Result<Option<u64>> {
            params
                .get(key)
                .map(|v| {
                    v.parse::<u64>().map_err(|_| Error::InvalidParams {
                        name: name.into(),
                        reason: format!("parameter {key}={v} is not a non-negative integer"),
                    })
                })
                .transpose()
        };
        let need = |key: &str| -> Result<u64> {
            int(key)?.ok_or_else(|| Error::InvalidParams {
                name: name.into(),
                reason: format!("missing parameter `{key}`"),
            })
        };
        let prime = |key: &str| -> Result<u32> {
            let v = need(key)?;
            u32::try_from(v).map_err(|_| Error::NotPrime(v))
        };
        let allowed: &[&str] = match name {
            "cyclic" | "dihedral" | "quaternion" => &["n"],
            "elementary_abelian" | "paper_Gn" => &["p", "n"],
            "symmetric3" => &[],
            "extraspecial" => &["p", "n", "type", "repr"],
            "paper_P" => &["p"],
            _ => return Err(Error::UnknownGroup(name.into())),
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidParams {
                name: name.into(),
                reason: format!("unknown parameter `{k}`"),
            });
        }
        let product = match name {
            "cyclic" => GroupProduct::Cayley(cyclic(need("n")? as usize)?),
            "elementary_abelian" => {
                GroupProduct::Cayley(elementary_abelian(prime("p")?, need("n")? as usize)?)
            }
            "dihedral" => GroupProduct::Cayley(dihedral(need("n")? as usize)?),
            "quaternion" => GroupProduct::Cayley(quaternion(int("n")?.unwrap_or(8) as usize)?),
            "symmetric3" => GroupProduct::Cayley(symmetric3()?),
            "extraspecial" => {
                let p = prime("p")?;
                let n = need("n")? as usize;
                let kind = match params.get("type").map(String::as_str) {
                    None | Some("plus") => ExtraspecialType::Plus,
                    Some("minus") => ExtraspecialType::Minus,
                    Some(other) => {
                        return Err(Error::InvalidParams {
                            name: name.into(),
                            reason: format!("type must be plus or minus, got {other}"),
                        })
                    }
                };
                match params.get("repr").map(String::as_str) {
                    None | Some("class2") => GroupProduct::Class2(extraspecial(p, n, kind)?),
                    Some("cayley") if p == 2 => {
                        GroupProduct::Cayley(extraspecial_2_central_product(n, kind)?)
                    }
                    Some("cayley") => GroupProduct::Cayley(
                        extraspecial(p, n, kind)?.to_cayley(crate::group::MAX_ORDER_CAP)?,
                    ),
                    Some(other) => {
                        return Err(Error::InvalidParams {
                            name: name.into(),
                            reason: format!("repr must be class2 or cayley, got {other}"),
                        })
                    }
                }
            }
            "paper_P" => GroupProduct::Class2(paper_p(prime("p")?)?),
            "paper_Gn" => GroupProduct::Class2(paper_gn(prime("p")?, need("n")? as usize)?),
            _ => unreachable!(),
        };
        Ok(Self {
            name: name.into(),
            params: params.clone(),
            product,
        })
    }

    pub fn build_with(name: &str, params: &[(&str, &str)]) -> Result<Self> {
        let map = params
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        Self::build(name, &map)
    }

    /// `name` or `name?k=v&...` with keys in sorted order.
    pub fn display_name(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let q: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}?{}", self.name, q.join("&"))
    }

    pub fn presentation(&self) -> Option<&Class2Presentation> {
        match &self.product {
            GroupProduct::Class2(p) => Some(p),
            GroupProduct::Cayley(_) => None,
        }
    }

    /// `(p, n)` when this recipe is a `G_n` (including `P = G_1`).
    pub fn gn_params(&self) -> Option<(u32, usize)> {
        let pres = self.presentation()?;
        match self.name.as_str() {
            "paper_Gn" | "paper_P" => Some((pres.p(), pres.r() / 3)),
            _ => None,
        }
    }

    fn require_gn(&self) -> Result<(&Class2Presentation, u32, usize)> {
        let (p, n) = self.gn_params().ok_or_else(|| Error::InvalidParams {
            name: self.display_name(),
            reason: "not a paper_Gn recipe".into(),
        })?;
        Ok((self.presentation().expect("class2"), p, n))
    }

    /// `v^φ = <α_v, β_v, γ_v, Z(G)>` for `v` in `F_p^n`.
    pub fn v_phi(&self, v: &[i64]) -> Result<CentralSubgroup> {
        let (pres, p, n) = self.require_gn()?;
        let u = Subspace::span(p, n, &[v.to_vec()])?;
        pres.central_subgroup(phi_lift(pres, &u))
    }

    /// `U^φ`, generated by `u^φ` for `u` in `U`; order `p^(3 dim U + 3)`.
    pub fn u_phi(&self, u: &Subspace) -> Result<CentralSubgroup> {
        let (pres, p, n) = self.require_gn()?;
        if u.p() != p || u.ambient_dim() != n {
            return Err(Error::Dimension(format!(
                "subspace of F_{}^{} for G_n over F_{p}^{n}",
                u.p(),
                u.ambient_dim()
            )));
        }
        pres.central_subgroup(phi_lift(pres, u))
    }

    /// The factor `P_i = <x_i, y_i, w_i>` (0-based `i`), as `e_i^φ`.
    pub fn factor(&self, i: usize) -> Result<CentralSubgroup> {
        let (_, _, n) = self.require_gn()?;
        if i >= n {
            return Err(Error::Dimension(format!("factor {i} of G_{n}")));
        }
        let mut e = vec![0i64; n];
        e[i] = 1;
        self.v_phi(&e)
    }
}

/// Span of `x_i^{s_i}`, `y_i^{s_i}`, `w_i^{s_i}` lifts of a basis of `u`.
fn phi_lift(pres: &Class2Presentation, u: &Subspace) -> Subspace {
    let n = u.ambient_dim();
    let mut vectors = Vec::with_capacity(3 * u.dim());
    for v in u.basis_vectors() {
        for slot in 0..3 {
            let mut lifted = vec![0u32; 3 * n];
            for (i, &s) in v.iter().enumerate() {
                lifted[3 * i + slot] = s;
            }
            vectors.push(lifted);
        }
    }
    Subspace::from_vectors_unchecked(pres.p(), pres.r(), vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SubgroupAlgebra;
    use crate::class2::Class2Engine;

    #[test]
    fn small_groups_have_expected_shape() {
        assert_eq!(cyclic(12).unwrap().order(), 12);
        let e8 = elementary_abelian(2, 3).unwrap();
        assert_eq!(e8.order(), 8);
        assert!(e8.is_abelian());
        let d8 = dihedral(8).unwrap();
        assert!(!d8.is_abelian());
        assert_eq!((0..8).filter(|&g| d8.element_order(g) == 2).count(), 5);
        let q8 = quaternion8().unwrap();
        assert_eq!((0..8).filter(|&g| q8.element_order(g) == 4).count(), 6);
        let s3 = symmetric3().unwrap();
        assert_eq!(s3.center().order(), 1);
        assert!(dihedral(7).is_err());
        assert!(quaternion(6).is_err());
    }

    #[test]
    fn recipe_examples() {
        let g = GroupRecipe::build_with("paper_Gn", &[("p", "2"), ("n", "2")]).unwrap();
        assert_eq!(g.presentation().unwrap().order_exponent(), 9);
        let g1 = paper_gn(5, 1).unwrap();
        assert_eq!(g1, paper_p(5).unwrap());
        let e = GroupRecipe::build_with("elementary_abelian", &[("p", "2"), ("n", "3")]).unwrap();
        match e.product {
            GroupProduct::Cayley(c) => assert_eq!((c.order(), c.is_abelian()), (8, true)),
            _ => panic!("expected a Cayley table"),
        }
        assert!(matches!(
            GroupRecipe::build_with("mystery", &[]),
            Err(Error::UnknownGroup(_))
        ));
        assert!(GroupRecipe::build_with("paper_Gn", &[("p", "4"), ("n", "2")]).is_err());
        assert!(GroupRecipe::build_with("paper_Gn", &[("p", "2")]).is_err());
        assert!(GroupRecipe::build_with("cyclic", &[("n", "3"), ("q", "1")]).is_err());
        assert_eq!(g.display_name(), "paper_Gn?n=2&p=2");
    }

    #[test]
    fn phi_examples() {
        let g = GroupRecipe::build_with("paper_Gn", &[("p", "3"), ("n", "2")]).unwrap();
        let pres = g.presentation().unwrap();
        let z = g.v_phi(&[0, 0]).unwrap();
        assert_eq!(z, pres.center());
        assert_eq!(g.v_phi(&[1, 0]).unwrap().order_exponent(), 6);
        let line = Subspace::span(3, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(g.u_phi(&line).unwrap().order_exponent(), 6);
        assert_eq!(
            g.u_phi(&Subspace::zero(3, 2).unwrap())
                .unwrap()
                .order_exponent(),
            3
        );
        let whole = g.u_phi(&Subspace::full(3, 2).unwrap()).unwrap();
        assert_eq!(whole, Class2Engine::new(pres).whole());
        let not_gn = GroupRecipe::build_with("extraspecial", &[("p", "3"), ("n", "1")]).unwrap();
        assert!(not_gn.v_phi(&[1]).is_err());
    }

    #[test]
    fn factor_centralizer_is_the_other_factors() {
        let g = GroupRecipe::build_with("paper_Gn", &[("p", "2"), ("n", "3")]).unwrap();
        let engine = Class2Engine::new(g.presentation().unwrap());
        for i in 0..3 {
            let pi = g.factor(i).unwrap();
            let others: Vec<Vec<i64>> = (0..3)
                .filter(|&j| j != i)
                .map(|j| (0..3).map(|k| (k == j) as i64).collect())
                .collect();
            let rest = g.u_phi(&Subspace::span(2, 3, &others).unwrap()).unwrap();
            assert_eq!(engine.centralizer(&pi), rest);
        }
    }

    #[test]
    fn central_product_path_matches_tensor_path_at_one_copy() {
        let pres = paper_p(2).unwrap();
        let p = pres.to_cayley(128).unwrap();
        let z: Vec<usize> = p.center().elements();
        let single = CayleyGroup::central_product(std::slice::from_ref(&p), &[z]).unwrap();
        assert_eq!(single.order(), 64);
        assert_eq!(single.table_rows(), p.table_rows());
    }

    #[test]
    fn d8_central_product_is_extraspecial_32() {
        for kind in [ExtraspecialType::Plus, ExtraspecialType::Minus] {
            let g = extraspecial_2_central_product(2, kind).unwrap();
            assert_eq!(g.order(), 32);
            let z = g.center();
            assert_eq!(z.order(), 2);
            assert_eq!(g.commutator_subgroup(&g.whole()), z);
            assert!(g.quotient_is_elementary_abelian(&g.whole(), &z, 2).unwrap());
            let (q, _) = g.quotient(&z).unwrap();
            assert_eq!(q.order(), 16);
            assert_eq!(q.elementary_abelian_prime(&q.whole()), Some(2));
        }
        let plus = extraspecial_2_central_product(2, ExtraspecialType::Plus).unwrap();
        let minus = extraspecial_2_central_product(2, ExtraspecialType::Minus).unwrap();
        let involutions = |g: &CayleyGroup| (0..32).filter(|&x| g.element_order(x) == 2).count();
        // D8*D8 has 19 involutions, Q8*D8 has 11
        assert_eq!(involutions(&plus), 19);
        assert_eq!(involutions(&minus), 11);
    }

    #[test]
    fn central_product_rejects_bad_correspondence() {
        let d8 = dihedral(8).unwrap();
        let r = (0..8).find(|&g| d8.element_order(g) == 4).unwrap();
        let err =
            CayleyGroup::central_product(&[d8.clone(), d8.clone()], &[vec![0, r], vec![0, r]]);
        assert!(err.is_err());
    }

    #[test]
    fn extraspecial_presentations_match_central_products() {
        for kind in [ExtraspecialType::Plus, ExtraspecialType::Minus] {
            let pres = extraspecial(2, 2, kind).unwrap().to_cayley(128).unwrap();
            let cp = extraspecial_2_central_product(2, kind).unwrap();
            let profile = |g: &CayleyGroup| {
                let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
                v.sort();
                v
            };
            assert_eq!(profile(&pres), profile(&cp));
        }
    }
}
