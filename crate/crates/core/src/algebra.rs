//! The subgroup operations the theorem checks need, abstracted over the two
//! engines.

use std::fmt::Debug;
use std::hash::Hash;

use crate::cd::{CdResult, Containment};
use crate::error::Result;

/// A group together with a representation of (some of) its subgroups.
///
/// The brute-force engine implements this over every subgroup of a Cayley
/// table; the class-2 engine over the subgroups that contain the central
/// subgroup of its presentation.
pub trait SubgroupAlgebra: Sync {
    type Sub: Clone + Eq + Ord + Hash + Debug + Send + Sync + Containment;

    fn group_order(&self) -> u128;
    fn order(&self, h: &Self::Sub) -> u128;
    fn whole(&self) -> Self::Sub;
    /// The smallest representable subgroup.
    fn trivial(&self) -> Self::Sub;
    fn center(&self) -> Self::Sub;
    fn centralizer(&self, h: &Self::Sub) -> Self::Sub;
    fn meet(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub;
    fn join(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub;
    fn is_subset(&self, a: &Self::Sub, b: &Self::Sub) -> bool;
    fn is_abelian(&self, h: &Self::Sub) -> bool;
    fn is_normal_in(&self, k: &Self::Sub, h: &Self::Sub) -> bool;
    fn quotient_is_elementary_abelian(&self, h: &Self::Sub, l: &Self::Sub, p: u32) -> Result<bool>;
    fn cd_lattice(&self) -> Result<CdResult<Self::Sub>>;
    /// The CD lattice of `h` as a group in its own right.
    fn cd_within(&self, h: &Self::Sub) -> Result<CdResult<Self::Sub>>;
    fn describe(&self, h: &Self::Sub) -> String;

    /// `|A B| = |A| |B| / |A ∩ B|`.
    fn product_order(&self, a: &Self::Sub, b: &Self::Sub) -> u128 {
        self.order(a) * self.order(b) / self.order(&self.meet(a, b))
    }

    /// `AB` is a subgroup, equivalently `AB = <A, B>`.
    fn product_is_join(&self, a: &Self::Sub, b: &Self::Sub) -> bool {
        self.product_order(a, b) == self.order(&self.join(a, b))
    }

    /// `C(A ∩ B) = C(A) C(B)`. The right side is always contained in the
    /// left, so comparing orders decides it.
    fn centralizer_of_meet_splits(&self, a: &Self::Sub, b: &Self::Sub) -> bool {
        let ca = self.centralizer(a);
        let cb = self.centralizer(b);
        self.order(&self.centralizer(&self.meet(a, b))) == self.product_order(&ca, &cb)
    }

    fn measure_value(&self, h: &Self::Sub) -> u128 {
        self.order(h) * self.order(&self.centralizer(h))
    }
}
