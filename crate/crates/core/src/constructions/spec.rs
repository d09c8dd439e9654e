use std::fmt;
use std::path::PathBuf;

use num_traits::ToPrimitive;

use super::product::{wreath_product, ProductActionSpace};
use super::projective::{m10, projective_family, Family};
use super::standard::*;
use super::{coset_fixture, file::load_group_file, pairs_action, Fixture};
use crate::error::{Error, Result};
use crate::perm::{
    conjugacy_classes, enumerate_elements, filter_subgroup, Permutation, PermutationGroup,
    DEFAULT_ENUMERATION_BOUND,
};

/// Search limits shared by constructions and analyses.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    /// Largest group enumerated element by element.
    pub max_order: u64,
    /// Largest permutation domain built.
    pub max_points: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_order: DEFAULT_ENUMERATION_BOUND,
            max_points: super::DEFAULT_POINT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSelector {
    /// Normalizer of the cyclic subgroup generated by the first class
    /// representative of order `n`.
    NormalizerCyclic(u64),
    /// Normalizer of a Klein four-subgroup of the socle.
    NormalizerV4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecNode {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    Agl(u32, u32),
    Agaml1(u32),
    HolC8,
    O4Minus2,
    Projective(Family, u32),
    M10,
    File(PathBuf),
    Pairs(Box<SpecNode>),
    Cosets(Box<SpecNode>, SubgroupSelector),
    /// Transitive action of the given degree.
    At(Box<SpecNode>, usize),
    Wreath(Box<SpecNode>, Box<SpecNode>),
}

impl fmt::Display for SubgroupSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSelector::NormalizerCyclic(n) => write!(f, "N(C{n})"),
            SubgroupSelector::NormalizerV4 => write!(f, "N(V4)"),
        }
    }
}

impl fmt::Display for SpecNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpecNode::*;
        match self {
            Symmetric(n) => write!(f, "s:{n}"),
            Alternating(n) => write!(f, "a:{n}"),
            Cyclic(n) => write!(f, "c:{n}"),
            Dihedral(n) => write!(f, "d:{n}"),
            Agl(d, p) => write!(f, "agl:{d}:{p}"),
            Agaml1(q) => write!(f, "agaml1:{q}"),
            HolC8 => write!(f, "hol:c8"),
            O4Minus2 => write!(f, "o4minus2"),
            Projective(fam, q) => {
                let tag = match fam {
                    Family::Psl2 => "psl2",
                    Family::Pgl2 => "pgl2",
                    Family::Psigmal2 => "psigmal2",
                    Family::Pgammal2 => "pgaml2",
                };
                write!(f, "{tag}:{q}")
            }
            M10 => write!(f, "m10"),
            File(p) => write!(f, "file:{}", p.display()),
            Pairs(b) => write!(f, "{b}/pairs"),
            Cosets(b, s) => write!(f, "{b}/cosets:{s}"),
            At(b, d) => write!(f, "{b}@{d}"),
            Wreath(l, p) => write!(f, "wr:{l}|{p}"),
        }
    }
}

fn bad(s: &str) -> Error {
    Error::MalformedSpec(s.to_owned())
}

fn num<T: std::str::FromStr>(s: &str, whole: &str) -> Result<T> {
    s.parse().map_err(|_| bad(whole))
}

fn parse_base(s: &str, whole: &str) -> Result<SpecNode> {
    use SpecNode::*;
    if let Some(path) = s.strip_prefix("file:") {
        if path.is_empty() {
            return Err(bad(whole));
        }
        return Ok(File(PathBuf::from(path)));
    }
    let parts: Vec<&str> = s.split(':').collect();
    let node = match parts.as_slice() {
        ["s", n] => Symmetric(num(n, whole)?),
        ["a", n] => Alternating(num(n, whole)?),
        ["c", n] => Cyclic(num(n, whole)?),
        ["d", n] => Dihedral(num(n, whole)?),
        ["agl", d, p] => Agl(num(d, whole)?, num(p, whole)?),
        ["agaml1", q] => Agaml1(num(q, whole)?),
        ["hol", "c8"] => HolC8,
        ["o4minus2"] => O4Minus2,
        ["psl2", q] => Projective(Family::Psl2, num(q, whole)?),
        ["pgl2", q] => Projective(Family::Pgl2, num(q, whole)?),
        ["psigmal2", q] => Projective(Family::Psigmal2, num(q, whole)?),
        ["pgaml2", q] => Projective(Family::Pgammal2, num(q, whole)?),
        ["m10"] => M10,
        _ => return Err(bad(whole)),
    };
    Ok(node)
}

fn parse_selector(s: &str, whole: &str) -> Result<SubgroupSelector> {
    let inner = s
        .strip_prefix("N(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad(whole))?;
    if inner == "V4" {
        return Ok(SubgroupSelector::NormalizerV4);
    }
    let n = inner.strip_prefix('C').ok_or_else(|| bad(whole))?;
    let n: u64 = num(n, whole)?;
    if n < 2 {
        return Err(bad(whole));
    }
    Ok(SubgroupSelector::NormalizerCyclic(n))
}

/// Start of the first action suffix in `s`.
fn suffix_start(s: &str) -> usize {
    let mut best = s.len();
    for (i, _) in s.match_indices("/pairs") {
        if s[i + 6..].is_empty() || s[i + 6..].starts_with(['/', '@']) {
            best = best.min(i);
            break;
        }
    }
    if let Some(i) = s.find("/cosets:") {
        best = best.min(i);
    }
    for (i, _) in s.match_indices('@') {
        if s[i + 1..].starts_with(|c: char| c.is_ascii_digit()) {
            best = best.min(i);
            break;
        }
    }
    best
}

/// Parses a group spec string such as `pgl2:7/pairs` or `wr:a:5@6|s:2`.
pub fn parse(s: &str) -> Result<SpecNode> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("wr:") {
        let bar = rest.rfind('|').ok_or_else(|| bad(s))?;
        let l = parse(&rest[..bar])?;
        let p = parse(&rest[bar + 1..])?;
        return Ok(SpecNode::Wreath(Box::new(l), Box::new(p)));
    }
    let start = suffix_start(s);
    if start == 0 {
        return Err(bad(s));
    }
    let mut node = parse_base(&s[..start], s)?;
    let mut rest = &s[start..];
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("/pairs") {
            node = SpecNode::Pairs(Box::new(node));
            rest = r;
        } else if let Some(r) = rest.strip_prefix("/cosets:") {
            let end = r.find(['/', '@']).unwrap_or(r.len());
            node = SpecNode::Cosets(Box::new(node), parse_selector(&r[..end], s)?);
            rest = &r[end..];
        } else if let Some(r) = rest.strip_prefix('@') {
            let end = r.find(['/', '@']).unwrap_or(r.len());
            node = SpecNode::At(Box::new(node), num(&r[..end], s)?);
            rest = &r[end..];
        } else {
            return Err(bad(s));
        }
    }
    Ok(node)
}

/// The coordinates of a wreath product built from a spec.
#[derive(Clone, Debug)]
pub struct WreathParts {
    pub space: ProductActionSpace,
    pub l: Fixture,
    pub p: Fixture,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub fixture: Fixture,
    pub wreath: Option<WreathParts>,
}

/// Builds the group described by `node`.
pub fn build(node: &SpecNode, budgets: &Budgets) -> Result<Built> {
    use SpecNode::*;
    let plain = |fixture: Fixture| Ok(Built {
        fixture,
        wreath: None,
    });
    let name = node.to_string();
    match node {
        Symmetric(n) => plain(symmetric(*n)?),
        Alternating(n) => plain(alternating(*n)?),
        Cyclic(n) => plain(cyclic(*n)?),
        Dihedral(n) => plain(dihedral(*n)?),
        Agl(d, p) => plain(affine_gl(*d, *p)?),
        Agaml1(q) => plain(affine_gamma_l1(*q)?),
        HolC8 => plain(holomorph_c8()?),
        O4Minus2 => plain(affine_o4_minus_2()?),
        Projective(fam, q) => plain(projective_family(*fam, *q)?),
        M10 => plain(m10()?),
        File(path) => {
            let (_, group) = load_group_file(path)?;
            plain(Fixture::plain(name, group))
        }
        Pairs(inner) => {
            let b = build(inner, budgets)?;
            plain(pairs_action(&b.fixture)?)
        }
        Cosets(inner, sel) => {
            let b = build(inner, budgets)?;
            let h = select_subgroup(&b.fixture, sel, budgets)?;
            plain(coset_fixture(&b.fixture, &h, &sel.to_string(), budgets)?)
        }
        At(inner, d) => {
            let b = build(inner, budgets)?;
            let mut f = action_of_degree(&b.fixture, *d, budgets)?;
            f.name = name;
            plain(f)
        }
        Wreath(l, p) => {
            let l = build(l, budgets)?.fixture;
            let p = build(p, budgets)?.fixture;
            let (space, group) = wreath_product(&l.group, &p.group, budgets.max_points)?;
            let socle = match &l.socle {
                Some(t) => {
                    let mut gens = Vec::new();
                    for i in 0..space.k() {
                        for x in t.generators() {
                            gens.push(space.in_coordinate(x, i));
                        }
                    }
                    let order = t.order().pow(space.k() as u32);
                    Some(PermutationGroup::new(space.total(), gens)?.with_known_order(order))
                }
                None => None,
            };
            Ok(Built {
                fixture: Fixture {
                    name,
                    group,
                    socle,
                    outer: Vec::new(),
                },
                wreath: Some(WreathParts { space, l, p }),
            })
        }
    }
}

/// Parses and builds in one step.
pub fn build_str(spec: &str, budgets: &Budgets) -> Result<Built> {
    build(&parse(spec)?, budgets)
}

fn normalizer_of(
    group: &PermutationGroup,
    set: &[Permutation],
    bound: u64,
) -> Result<PermutationGroup> {
    filter_subgroup(group, bound, |g| {
        set.iter().all(|x| set.contains(&x.conjugate_by(g)))
    })
}

fn powers(x: &Permutation) -> Vec<Permutation> {
    (0..x.order() as i64).map(|e| x.pow(e)).collect()
}

/// Subgroup named by a selector.
pub fn select_subgroup(
    fixture: &Fixture,
    sel: &SubgroupSelector,
    budgets: &Budgets,
) -> Result<PermutationGroup> {
    let g = &fixture.group;
    match sel {
        SubgroupSelector::NormalizerCyclic(n) => {
            let classes = conjugacy_classes(g, budgets.max_order)?;
            let x = classes
                .classes
                .iter()
                .find(|c| c.element_order == *n)
                .map(|c| c.rep.clone())
                .ok_or_else(|| {
                    Error::InvalidParameters(format!("{} has no element of order {n}", fixture.name))
                })?;
            normalizer_of(g, &powers(&x), budgets.max_order)
        }
        SubgroupSelector::NormalizerV4 => {
            let socle = fixture.socle_or_group();
            let elems = enumerate_elements(socle, budgets.max_order)?;
            let invols: Vec<&Permutation> = elems.iter().filter(|e| e.order() == 2).collect();
            let x = *invols.first().ok_or_else(|| {
                Error::InvalidParameters(format!("{} has no involution", fixture.name))
            })?;
            let y = invols
                .iter()
                .find(|y| **y != x && x.then(y) == y.then(x))
                .ok_or_else(|| {
                    Error::InvalidParameters(format!("{} has no Klein four-subgroup", fixture.name))
                })?;
            let v = vec![g.identity(), x.clone(), (*y).clone(), x.then(y)];
            normalizer_of(g, &v, budgets.max_order)
        }
    }
}

/// The natural action if it has degree `d`, else the action on cosets of
/// the first cyclic-subgroup normalizer of index `d`, scanning classes by
/// element order.
pub fn action_of_degree(fixture: &Fixture, d: usize, budgets: &Budgets) -> Result<Fixture> {
    if fixture.degree() == d {
        return Ok(fixture.clone());
    }
    let g = &fixture.group;
    let order = g.order();
    let classes = conjugacy_classes(g, budgets.max_order)?;
    let mut reps: Vec<(u64, usize, &Permutation)> = classes
        .classes
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.rep.is_identity())
        .map(|(i, c)| (c.element_order, i, &c.rep))
        .collect();
    reps.sort_by_key(|&(o, i, _)| (o, i));
    for (o, _, x) in reps {
        let n = normalizer_of(g, &powers(x), budgets.max_order)?;
        if (&order / n.order()).to_usize() == Some(d) {
            return coset_fixture(
                fixture,
                &n,
                &SubgroupSelector::NormalizerCyclic(o).to_string(),
                budgets,
            );
        }
    }
    Err(Error::InvalidParameters(format!(
        "{} has no cyclic-normalizer action of degree {d}",
        fixture.name
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn parse_round_trip() {
        for s in [
            "s:5",
            "pgl2:7/pairs",
            "psl2:11/cosets:N(C6)",
            "pgl2:11/cosets:N(V4)",
            "a:5@6",
            "wr:pgl2:7/pairs|c:2",
            "wr:wr:s:2|c:2|s:3",
            "agl:3:2",
            "file:/tmp/x/pairs.json/pairs",
        ] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
        for s in ["", "q:5", "s:x", "pgl2:7/triples", "wr:s:3", "psl2:7/cosets:N(C1)"] {
            assert!(matches!(parse(s), Err(Error::MalformedSpec(_))), "{s}");
        }
        assert_eq!(
            parse("file:/tmp/x/pairs.json/pairs").unwrap(),
            SpecNode::Pairs(Box::new(SpecNode::File("/tmp/x/pairs.json".into())))
        );
    }

    #[test]
    fn small_fixtures() {
        let b = Budgets::default();
        let f = build_str("a:5@6", &b).unwrap().fixture;
        assert_eq!(f.degree(), 6);
        let f = build_str("s:5/cosets:N(C3)", &b).unwrap().fixture;
        assert_eq!(f.degree(), 10);
        let f = build_str("m10/cosets:N(C5)", &b).unwrap().fixture;
        assert_eq!(f.degree(), 36);
        let f = build_str("m10/cosets:N(C8)", &b).unwrap().fixture;
        assert_eq!(f.degree(), 45);
        let f = build_str("pgl2:11/cosets:N(V4)", &b).unwrap().fixture;
        assert_eq!(f.degree(), 55);
        assert!(f.socle.as_ref().unwrap().is_transitive());
        let f = build_str("psl2:13/cosets:N(C7)", &b).unwrap().fixture;
        assert_eq!(f.degree(), 78);
        let w = build_str("wr:s:3|s:2", &b).unwrap();
        assert_eq!(w.fixture.group.order(), BigUint::from(72u32));
    }
}
