//! The group zoo: standard and projective families, derived actions,
//! wreath products and product-type subgroups.

mod coset;
mod field;
mod file;
mod product;
mod projective;
mod spec;
mod standard;

pub use coset::{coset_action, CosetAction};
pub use field::{prime_power, Field};
pub use file::{load_group_file, parse_group_file, save_group_file, to_group_file, GroupFile};
pub use product::{
    product_type_subgroup, wreath_order, wreath_product, ProductActionSpace, ProductTypeGroup,
    WreathElement, DEFAULT_POINT_BUDGET,
};
pub use projective::{m10, projective_family, Family, ProjectiveLine};
pub use spec::{
    action_of_degree, build, build_str, parse, select_subgroup, Budgets, Built, SpecNode,
    SubgroupSelector, WreathParts,
};
pub use standard::{
    affine_gamma_l1, affine_gl, affine_o4_minus_2, alternating, cyclic, dihedral, holomorph_c8,
    symmetric,
};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// A group together with its socle and elements generating it modulo the
/// socle, carried along through derived actions.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub group: PermutationGroup,
    pub socle: Option<PermutationGroup>,
    pub outer: Vec<Permutation>,
}

impl Fixture {
    pub fn plain(name: String, group: PermutationGroup) -> Self {
        Fixture {
            name,
            group,
            socle: None,
            outer: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Socle if known, else the whole group.
    pub fn socle_or_group(&self) -> &PermutationGroup {
        self.socle.as_ref().unwrap_or(&self.group)
    }

    /// Transports the fixture along a homomorphism onto a new action.
    pub fn map_through<F>(&self, name: String, degree: usize, f: F) -> Result<Fixture>
    where
        F: Fn(&Permutation) -> Result<Permutation>,
    {
        let order = self.group.order();
        let gens = self
            .group
            .generators()
            .iter()
            .map(&f)
            .collect::<Result<Vec<_>>>()?;
        let group = PermutationGroup::new(degree, gens)?.with_known_order(order);
        group
            .try_chain()
            .map_err(|_| Error::UnfaithfulAction)?;
        let socle = match &self.socle {
            Some(s) => {
                let gens = s.generators().iter().map(&f).collect::<Result<Vec<_>>>()?;
                Some(PermutationGroup::new(degree, gens)?.with_known_order(s.order()))
            }
            None => None,
        };
        let outer = self.outer.iter().map(&f).collect::<Result<Vec<_>>>()?;
        Ok(Fixture {
            name,
            group,
            socle,
            outer,
        })
    }
}

/// Unordered pairs `{i < j}` in lexicographic order.
pub fn pair_index_table(n: usize) -> Vec<Vec<u32>> {
    let mut table = vec![vec![u32::MAX; n]; n];
    let mut next = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            table[i][j] = next;
            table[j][i] = next;
            next += 1;
        }
    }
    table
}

/// Induced action on unordered pairs of distinct points.
pub fn pairs_action(fixture: &Fixture) -> Result<Fixture> {
    let n = fixture.degree();
    if n < 3 {
        return Err(Error::InvalidParameters("pairs action needs degree >= 3".into()));
    }
    let table = pair_index_table(n);
    let m = n * (n - 1) / 2;
    let f = |g: &Permutation| {
        let mut images = Vec::with_capacity(m);
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                images.push(table[g.image(i) as usize][g.image(j) as usize]);
            }
        }
        Permutation::from_images(images)
    };
    fixture.map_through(format!("{}/pairs", fixture.name), m, f)
}

/// Action on the cosets of `subgroup`, transporting socle and outer data.
pub fn coset_fixture(
    fixture: &Fixture,
    subgroup: &PermutationGroup,
    label: &str,
    budgets: &Budgets,
) -> Result<Fixture> {
    let action = coset_action(&fixture.group, subgroup, budgets.max_order, budgets.max_points)?;
    let n = action.degree();
    fixture.map_through(format!("{}/cosets:{label}", fixture.name), n, |g| action.map(g))
}
