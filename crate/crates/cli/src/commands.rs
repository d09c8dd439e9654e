use std::collections::BTreeMap;
use std::path::Path;

use num_traits::ToPrimitive;

use permbase::base::{
    base_size_exact, reg_l_m, regular_double_cosets, regular_suborbits, BaseMethod,
};
use permbase::constructions::{
    build_str, product_type_subgroup, save_group_file, Budgets, Fixture,
    ProductActionSpace, ProductTypeGroup, WreathElement,
};
use permbase::distinguishing::{
    bounds_check, count_tm, distinguishing_number, profile, stirling2, MAX_PARTITION_K,
};
use permbase::perm::{is_primitive, Permutation};
use permbase::product::{
    analyze_wreath, bc_predict, direct_base_two_witness, r_wreath_brute, r_wreath_formula,
    structural_checks, sufficient_base2_general, unique_regular_suborbit_test,
};
use permbase::report::AnalysisReport;
use permbase::saxl::{saxl_report, SaxlGraph};
use permbase::{Error, Result};

/// A finished command: its report and whether a check inside it failed.
pub struct Output {
    pub report: AnalysisReport,
    pub text: Option<String>,
    pub failed: bool,
}

impl From<AnalysisReport> for Output {
    fn from(report: AnalysisReport) -> Self {
        Output {
            report,
            text: None,
            failed: false,
        }
    }
}

pub fn fixture(spec: &str, budgets: &Budgets) -> Result<Fixture> {
    Ok(build_str(spec, budgets)?.fixture)
}

pub fn construct(spec: &str, out: Option<&Path>, budgets: &Budgets) -> Result<Output> {
    let f = fixture(spec, budgets)?;
    let mut r = AnalysisReport::new(spec);
    r.record("degree", f.degree(), "construction");
    r.record("order", f.group.order().to_string(), "schreier-sims");
    r.record("generators", f.group.generators().len(), "construction");
    if let Some(path) = out {
        save_group_file(Some(&f.name), &f.group, path)?;
        r.record("written", path.display().to_string(), "group-file");
    }
    Ok(r.into())
}

pub fn info(spec: &str, budgets: &Budgets) -> Result<Output> {
    let f = fixture(spec, budgets)?;
    let g = &f.group;
    let mut r = AnalysisReport::new(spec);
    r.record("degree", g.degree(), "construction");
    r.record("order", g.order().to_string(), "schreier-sims");
    r.record("orbits", g.orbit_partition().num_orbits(), "orbit-partition");
    let transitive = g.is_transitive();
    r.record("transitive", transitive, "orbit-partition");
    if transitive {
        r.record("primitive", is_primitive(g)?, "minimal-blocks");
        r.record(
            "point_stabilizer_order",
            g.point_stabilizer(0)?.order().to_string(),
            "schreier-sims",
        );
    }
    r.record("chain_base", g.try_chain()?.base(), "schreier-sims");
    if let Some(s) = &f.socle {
        r.record("socle_order", s.order().to_string(), "schreier-sims");
    }
    Ok(r.into())
}

pub fn base_size(spec: &str, node_budget: u64, budgets: &Budgets) -> Result<Output> {
    let g = fixture(spec, budgets)?.group;
    let res = base_size_exact(&g, node_budget)?;
    let method = match res.method {
        BaseMethod::Exact => "iterative-deepening",
        BaseMethod::GreedyUpperBound => "greedy-upper-bound",
    };
    let mut r = AnalysisReport::new(spec);
    r.record("b", res.b, method);
    r.record("witness", &res.witness, method);
    r.record("exact", res.method == BaseMethod::Exact, method);
    Ok(r.into())
}

pub fn regular(spec: &str, budgets: &Budgets) -> Result<Output> {
    let f = fixture(spec, budgets)?;
    let res = regular_suborbits(&f.group)?;
    let mut r = AnalysisReport::new(spec);
    r.record("r", res.count, "orbit-count");
    r.record("stabilizer_order", res.stabilizer_order, "schreier-sims");
    r.record("suborbit_reps", &res.orbit_reps, "orbit-count");
    if f.group.order_u64().is_some_and(|o| o <= 100_000) {
        r.record(
            "r_double_cosets",
            regular_double_cosets(&f.group, budgets.max_order)?,
            "double-coset-count",
        );
    }
    if let Some(t) = &f.socle {
        r.record("r_socle", regular_suborbits(t)?.count, "orbit-count");
    }
    Ok(r.into())
}

pub fn reg(spec: &str, m: usize, budgets: &Budgets) -> Result<Output> {
    let g = fixture(spec, budgets)?.group;
    let mut r = AnalysisReport::new(spec);
    r.record("m", m, "input");
    r.record("reg", reg_l_m(&g, m)?, "stabilizer-recursion");
    Ok(r.into())
}

pub fn dist(spec: &str, budgets: &Budgets) -> Result<Output> {
    let p = fixture(spec, budgets)?.group;
    let k = p.degree();
    let ms: Vec<usize> = if k <= MAX_PARTITION_K { (1..=k).collect() } else { Vec::new() };
    let prof = profile(&p, &ms)?;
    let mut r = AnalysisReport::new(spec);
    r.record("D", prof.d, "partition-search");
    if let Some(w) = &prof.witness {
        r.record("witness", w.to_string(), "partition-search");
    }
    if !ms.is_empty() {
        r.record("t", &prof.t, "partition-enumeration");
        r.record("bounds_ok", prof.bounds_ok, "stirling-bounds");
    }
    Ok(r.into())
}

pub fn tm(spec: &str, m: usize, budgets: &Budgets) -> Result<Output> {
    let p = fixture(spec, budgets)?.group;
    let k = p.degree();
    let t = count_tm(&p, m)?;
    let mut r = AnalysisReport::new(spec);
    r.record("m", m, "input");
    r.record("t", t, "partition-enumeration");
    r.record("stirling", stirling2(k, m).to_string(), "recurrence");
    r.record("bounds_ok", bounds_check(&p.order(), k, m, t), "stirling-bounds");
    Ok(r.into())
}

pub fn wreath_predict(l: &str, p: &str, m_max: usize, budgets: &Budgets) -> Result<Output> {
    let lg = fixture(l, budgets)?.group;
    let pg = fixture(p, budgets)?.group;
    let a = analyze_wreath(&lg, &pg, m_max)?;
    let pred = bc_predict(&lg, &pg, m_max)?;
    let uniq = unique_regular_suborbit_test(&lg, &pg)?;
    let mut r = AnalysisReport::new(format!("wr:{l}|{p}"));
    r.record("r_L", a.r_l, "orbit-count");
    r.record("b_L", a.b_l, "stabilizer-recursion");
    r.record("reg_L", &a.reg_l, "stabilizer-recursion");
    r.record("D", a.d, "partition-search");
    r.record("t", &a.tm, "partition-enumeration");
    r.record("verdicts", &pred.verdicts, "reg-versus-D");
    r.record("predicted_b", a.predicted_b, "reg-versus-D");
    r.record("r", a.r_wreath, "suborbit-formula");
    r.record("unique_regular_suborbit", uniq.unique, "suborbit-formula");
    r.record("uniqueness_reason", &uniq.reason, "suborbit-formula");
    Ok(r.into())
}

/// `r(L wr P)` by the formula and by counting orbits.
pub fn wreath_counts(l: &str, p: &str, budgets: &Budgets) -> Result<(u64, u64)> {
    let lg = fixture(l, budgets)?.group;
    let pg = fixture(p, budgets)?.group;
    let k = pg.degree();
    let r_l = regular_suborbits(&lg)?.count as u64;
    let d = distinguishing_number(&pg)?;
    let mut t = BTreeMap::new();
    for m in d..=k.min(r_l as usize) {
        t.insert(m, count_tm(&pg, m)?);
    }
    let formula = r_wreath_formula(r_l, &pg.order(), d, k, &t)?
        .to_u64()
        .ok_or_else(|| Error::Internal("regular suborbit count overflows".into()))?;
    let space = ProductActionSpace::new(lg.degree(), k, budgets.max_points)?;
    let brute = r_wreath_brute(&space, &lg, &pg)?;
    Ok((formula, brute))
}

pub fn wreath_verify(l: &str, p: &str, budgets: &Budgets) -> Result<Output> {
    let (formula, brute) = wreath_counts(l, p, budgets)?;
    let mut r = AnalysisReport::new(format!("wr:{l}|{p}"));
    r.record("r_formula", formula, "suborbit-formula");
    r.record("r_brute", brute, "orbit-count");
    let verdict = if formula == brute { "MATCH" } else { "MISMATCH" };
    r.record("verdict", verdict, "comparison");
    Ok(Output {
        report: r,
        text: None,
        failed: formula != brute,
    })
}

/// Which coordinates of each extra generator carry the outer element.
fn pattern_bits(pattern: &str, k: usize) -> Result<Vec<bool>> {
    match pattern {
        "diag" => Ok(vec![true; k]),
        "full" => Ok((0..k).map(|i| i == 0).collect()),
        other => {
            let bits = other
                .strip_prefix("pattern:")
                .ok_or_else(|| Error::InvalidParameters(format!("unknown pattern '{other}'")))?;
            if bits.len() != k || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::InvalidParameters(format!(
                    "pattern '{bits}' must be {k} binary digits"
                )));
            }
            Ok(bits.chars().map(|c| c == '1').collect())
        }
    }
}

/// `<T^k, P, (x..)>` with one extra generator per outer element `x` of `L`.
pub fn product_type(l: &str, p: &str, pattern: &str, budgets: &Budgets) -> Result<ProductTypeGroup> {
    let f = fixture(l, budgets)?;
    let pg = fixture(p, budgets)?.group;
    let k = pg.degree();
    let bits = pattern_bits(pattern, k)?;
    let t = f
        .socle
        .clone()
        .ok_or_else(|| Error::InvalidParameters(format!("{l} has no known socle")))?;
    let id = Permutation::identity(f.degree());
    let extra: Vec<WreathElement> = f
        .outer
        .iter()
        .map(|x| WreathElement {
            z: bits.iter().map(|&on| if on { x.clone() } else { id.clone() }).collect(),
            sigma: Permutation::identity(k),
        })
        .collect();
    product_type_subgroup(&f.group, &t, &pg, &extra, budgets.max_points)
}

pub fn prodtype(l: &str, p: &str, pattern: &str, node_budget: u64, budgets: &Budgets) -> Result<Output> {
    let g = product_type(l, p, pattern, budgets)?;
    let mut r = AnalysisReport::new(format!("prodtype:{l}|{p}|{pattern}"));
    r.record("degree", g.group.degree(), "construction");
    r.record("order", g.group.order().to_string(), "schreier-sims");
    let image: Vec<String> = g
        .quotient_image
        .iter()
        .map(|v| v.iter().map(|s| s.to_string()).collect())
        .collect();
    r.record("quotient_image", image, "coset-symbols");
    r.record("tau", g.tau, "coset-symbols");
    let s = structural_checks(&g, node_budget)?;
    r.record("b", s.b_g, "iterative-deepening");
    r.record("b_L", s.b_l, "iterative-deepening");
    r.record("r_L", s.r_l, "orbit-count");
    r.record("r_T", s.r_t, "orbit-count");
    r.record("D", s.d, "partition-search");
    r.record("structural_checks", &s.checks, "structural");
    r.record("consistent", s.consistent(), "structural");
    let cert = sufficient_base2_general(&g)?;
    r.record("base_two_criterion", &cert, "general-criterion");
    r.record("base_two_witness", direct_base_two_witness(&g.group)?, "regular-orbit-search");
    Ok(Output {
        failed: !s.consistent(),
        report: r,
        text: None,
    })
}

pub fn saxl(spec: &str, dot: Option<&Path>, sweep_budget: u64, budgets: &Budgets) -> Result<Output> {
    let f = fixture(spec, budgets)?;
    let rep = saxl_report(&f.group, sweep_budget)?;
    let mut r = AnalysisReport::new(spec);
    r.record("degree", rep.degree, "construction");
    r.record("valency", rep.valency, "regular-suborbits");
    r.record("r", rep.r, "orbit-count");
    r.record("eulerian", rep.eulerian, "valency-parity");
    r.record("diameter", rep.diameter, "bfs");
    r.record("eccentricity_consistent", rep.eccentricity_consistent, "bfs");
    r.record("star", rep.star, "neighbourhood-sweep");
    r.record("star_star", rep.star_star, "neighbourhood-sweep");
    r.record("star_star_double_coset", rep.star_star_double_coset, "double-coset");
    if let Some(path) = dot {
        let text = SaxlGraph::new(&f.group)?.to_dot(&f.name)?;
        std::fs::write(path, text).map_err(Error::from)?;
        r.record("dot", path.display().to_string(), "graphviz");
    }
    let failed = matches!(
        (rep.star_star, rep.star_star_double_coset),
        (Some(a), Some(b)) if a != b
    );
    Ok(Output {
        report: r,
        text: None,
        failed,
    })
}
