use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permbase::base::{
    base_probability, base_size_exact, reg_l_m,
    regular_suborbits, BaseMethod, DEFAULT_NODE_BUDGET,
};
use permbase::constructions::{
    build_str, product_type_subgroup, wreath_product, Budgets, Fixture, ProductActionSpace,
    ProductTypeGroup, WreathElement,
};
use permbase::distinguishing::{
    count_tm, distinguishing_number, power_set_regular_orbits, profile, stirling2,
    x_regular_orbits,
};
use permbase::perm::{enumerate_elements, Permutation, PermutationGroup};
use permbase::product::{
    direct_base_two_witness, product_base_pair_test, r_wreath_brute, r_wreath_formula,
    PairOrbitTable,
};
use permbase::saxl::{saxl_report, saxl_summary, DEFAULT_SWEEP_BUDGET};
use permbase::Result;

/// Outcome of one row inside a criterion.
struct Rows {
    total: usize,
    failures: Vec<String>,
}

impl Rows {
    fn new() -> Self {
        Rows {
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.total += 1;
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        let ok = got == want;
        self.check(format!("{label}: got {got:?}, want {want:?}"), ok);
    }

    fn result<T>(&mut self, label: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(format!("{label}: error {e}"), false);
                None
            }
        }
    }
}

fn fixture(spec: &str) -> Result<Fixture> {
    Ok(build_str(spec, &Budgets::default())?.fixture)
}

fn group(spec: &str) -> Result<PermutationGroup> {
    Ok(fixture(spec)?.group)
}

fn regular_suborbit_table(rows: &mut Rows) {
    let cases: [(&str, u64, Option<u64>); 9] = [
        ("pgl2:7/pairs", 1, Some(3)),
        ("pgl2:9/pairs", 1, Some(4)),
        ("pgl2:11/pairs", 1, Some(4)),
        ("pgl2:11/cosets:N(V4)", 1, Some(3)),
        ("psl2:11/cosets:N(C6)", 2, None),
        ("psl2:13/cosets:N(C7)", 3, None),
        ("m10/cosets:N(C5)", 1, Some(2)),
        ("m10/cosets:N(C8)", 2, None),
        ("a:5/cosets:N(C3)", 1, None),
    ];
    for (spec, r_l, r_t) in cases {
        let t0 = Instant::now();
        let Some(f) = rows.result(spec, fixture(spec)) else { continue };
        if let Some(r) = rows.result(spec, regular_suborbits(&f.group)) {
            rows.eq(&format!("r({spec})"), r.count as u64, r_l);
        }
        if let Some(want) = r_t {
            let t = f.socle.as_ref().expect("socle is tracked");
            if let Some(r) = rows.result(spec, regular_suborbits(t)) {
                rows.eq(&format!("r(T) for {spec}"), r.count as u64, want);
            }
        }
        rows.check(format!("{spec} within 10 s"), t0.elapsed() < Duration::from_secs(10));
    }
}

fn reg_table(rows: &mut Rows) {
    let cases: [(&str, usize, u64); 10] = [
        ("a:5", 3, 1),
        ("a:5@6", 3, 2),
        ("s:5/cosets:N(C3)", 3, 4),
        ("s:5/cosets:N(C5)", 3, 1),
        ("psl2:7", 3, 2),
        ("pgl2:7", 3, 1),
        ("s:5", 4, 1),
        ("pgaml2:8", 4, 2),
        ("pgaml2:16", 4, 3),
        ("pgaml2:9", 4, 3),
    ];
    for (spec, m, want) in cases {
        let t0 = Instant::now();
        let Some(l) = rows.result(spec, group(spec)) else { continue };
        if let Some(v) = rows.result(spec, reg_l_m(&l, m)) {
            rows.eq(&format!("reg({spec}, {m})"), v, want);
        }
        rows.check(format!("{spec} within 30 s"), t0.elapsed() < Duration::from_secs(30));
    }
    if let Some(l) = rows.result("a:5@6", group("a:5@6")) {
        if let Some(p) = rows.result("P(a:5@6, 3)", base_probability(&l, 3, 100_000)) {
            let want = BigRational::new(5.into(), 9.into());
            rows.eq("P(a:5@6, 3)", p.p_exact, want);
        }
    }
}

fn distinguishing_data(rows: &mut Rows) {
    let t0 = Instant::now();
    for n in 2..=8 {
        let spec = format!("s:{n}");
        if let Some(g) = rows.result(&spec, group(&spec)) {
            if let Some(d) = rows.result(&spec, distinguishing_number(&g)) {
                rows.eq(&format!("D(S_{n})"), d, n);
            }
        }
    }
    for n in 3..=8 {
        let spec = format!("a:{n}");
        if let Some(g) = rows.result(&spec, group(&spec)) {
            if let Some(d) = rows.result(&spec, distinguishing_number(&g)) {
                rows.eq(&format!("D(A_{n})"), d, n - 1);
            }
        }
    }
    let cases: [(&str, usize, usize, u64); 4] = [
        ("a:5@6", 3, 3, 10),
        ("pgaml2:8", 3, 3, 252),
        ("agl:3:2", 4, 4, 56),
        ("hol:c8", 2, 2, 16),
    ];
    for (spec, d, m, t) in cases {
        let Some(g) = rows.result(spec, group(spec)) else { continue };
        if let Some(p) = rows.result(spec, profile(&g, &[m])) {
            rows.eq(&format!("D({spec})"), p.d, d);
            rows.eq(&format!("t_{m}({spec})"), p.t[&m], t);
            rows.check(format!("bounds for {spec}"), p.bounds_ok);
        }
    }
    if let Some(g) = rows.result("wr:s:2|c:2", group("wr:s:2|c:2")) {
        if let Some(d) = rows.result("wr:s:2|c:2", distinguishing_number(&g)) {
            rows.eq("D(S2 wr C2 on 4 points)", d, 3);
        }
    }
    if let Some(c5) = rows.result("c:5", group("c:5")) {
        for m in 2..=5 {
            if let Some(t) = rows.result("c:5", count_tm(&c5, m)) {
                rows.eq(&format!("t_{m}(C5)"), BigUint::from(t), stirling2(5, m));
            }
        }
    }
    rows.check("distinguishing data within 60 s", t0.elapsed() < Duration::from_secs(60));
}

/// Formula and orbit count for `r(L wr P)`.
fn wreath_r(l: &PermutationGroup, p: &PermutationGroup) -> Result<(u64, u64)> {
    let r_l = regular_suborbits(l)?.count as u64;
    let k = p.degree();
    let prof = profile(p, &(1..=k).collect::<Vec<_>>())?;
    let formula = r_wreath_formula(r_l, &p.order(), prof.d, k, &prof.t)?;
    let space = ProductActionSpace::new(l.degree(), k, Budgets::default().max_points)?;
    let brute = r_wreath_brute(&space, l, p)?;
    Ok((formula.to_u64().unwrap_or(u64::MAX), brute))
}

fn wreath_equivalence(rows: &mut Rows) {
    let t0 = Instant::now();
    let cases = [
        ("psl2:11/cosets:N(C6)", "c:2", 1u64),
        ("psl2:11/cosets:N(C6)", "s:2", 1),
        ("psl2:13/cosets:N(C7)", "c:3", 8),
    ];
    for (l, p, want) in cases {
        let label = format!("({l}, {p})");
        let (Some(lg), Some(pg)) = (rows.result(l, group(l)), rows.result(p, group(p))) else {
            continue;
        };
        if let Some((formula, brute)) = rows.result(&label, wreath_r(&lg, &pg)) {
            rows.eq(&format!("formula r{label}"), formula, want);
            rows.eq(&format!("orbit count r{label}"), brute, want);
        }
    }
    rows.check("wreath equivalence within 3 min", t0.elapsed() < Duration::from_secs(180));
}

fn diagonal(x: &Permutation, pattern: &[bool], k: usize) -> WreathElement {
    let id = Permutation::identity(x.degree());
    WreathElement {
        z: pattern
            .iter()
            .map(|&on| if on { x.clone() } else { id.clone() })
            .collect(),
        sigma: Permutation::identity(k),
    }
}

fn product_type(l_spec: &str, p_spec: &str, patterns: &[&[bool]]) -> Result<(Fixture, ProductTypeGroup)> {
    let f = fixture(l_spec)?;
    let p = group(p_spec)?;
    let k = p.degree();
    let t = f.socle.clone().expect("socle is tracked");
    let mut extra = Vec::new();
    for x in &f.outer {
        for pat in patterns {
            extra.push(diagonal(x, pat, k));
        }
    }
    let g = product_type_subgroup(&f.group, &t, &p, &extra, Budgets::default().max_points)?;
    Ok((f, g))
}

fn exact_base(rows: &mut Rows, label: &str, g: &PermutationGroup, want: usize) {
    if let Some(b) = rows.result(label, base_size_exact(g, DEFAULT_NODE_BUDGET)) {
        rows.eq(&format!("b({label})"), (b.b, b.method), (want, BaseMethod::Exact));
    }
}

fn base_sizes(rows: &mut Rows) {
    let spec = "wr:pgl2:7/pairs|c:2";
    if let Some(g) = rows.result(spec, group(spec)) {
        exact_base(rows, spec, &g, 3);
    }
    if let Some((_, g)) = rows.result("m10 diag", product_type("m10/cosets:N(C5)", "s:2", &[&[true, true]])) {
        exact_base(rows, "M10 on 36 squared, diagonal", &g.group, 3);
    }
    if let Some((f, g)) = rows.result("pgaml2:9 pairs", product_type("pgaml2:9/pairs", "s:2", &[&[true, true]])) {
        rows.eq("outer generators of pgaml2:9/pairs", f.outer.len(), 2);
        rows.eq("tau for pgaml2:9 pairs", g.tau, Some(0));
        if let Some(w) = rows.result("pgaml2:9 pairs witness", direct_base_two_witness(&g.group)) {
            rows.check("pgaml2:9 pairs has a base of size two", w.is_some());
            if let Some((a, b)) = w {
                if let Some(st) = rows.result("witness stabilizer", g.group.pointwise_stabilizer(&[a, b])) {
                    rows.check("witness pair has trivial stabilizer", st.is_trivial());
                }
            }
        }
    }
    let t0 = Instant::now();
    let l = "pgl2:11/cosets:N(V4)";
    let cases: [(&str, &[bool], Vec<&str>, Option<usize>, u32); 2] = [
        ("(a,a,a)", &[true, true, true], vec!["000", "111"], Some(0), 20736),
        ("(a,a,1)", &[true, true, false], vec!["000", "011", "101", "110"], Some(1), 41472),
    ];
    for (name, pat, image, tau, h_order) in cases {
        let Some((_, g)) = rows.result(name, product_type(l, "s:3", &[pat])) else { continue };
        let got: BTreeSet<String> = g
            .quotient_image
            .iter()
            .map(|v| v.iter().map(|s| s.to_string()).collect())
            .collect();
        let want: BTreeSet<String> = image.iter().map(|s| s.to_string()).collect();
        rows.eq(&format!("image of {name} in (L/T)^3"), got, want);
        rows.eq(&format!("tau for {name}"), g.tau, tau);
        if let Some(h) = rows.result(name, g.group.point_stabilizer(0)) {
            rows.eq(&format!("|H| for {name}"), h.order(), BigUint::from(h_order));
        }
        exact_base(rows, &format!("<T^3, {name}, S3>"), &g.group, 3);
    }
    rows.check("degree 166375 cases within 5 min", t0.elapsed() < Duration::from_secs(300));
}

fn power_set(rows: &mut Rows) {
    let t0 = Instant::now();
    if let Some(s2) = rows.result("s:2", group("s:2")) {
        if let Some(o) = rows.result("s:2", power_set_regular_orbits(&s2)) {
            rows.eq("regular orbits of S2 on the power set", o.count, 1);
        }
    }
    if let Some(g) = rows.result("o4minus2", group("o4minus2")) {
        rows.eq("degree of o4minus2", g.degree(), 16);
        if let Some(o) = rows.result("X", x_regular_orbits(&g)) {
            rows.eq("regular orbits on X", o.count, 0);
        }
        if let Some(o) = rows.result("power set", power_set_regular_orbits(&g)) {
            rows.eq("regular orbits on the power set", o.count, 2);
        }
        if let Some(d) = rows.result("D(o4minus2)", distinguishing_number(&g)) {
            rows.eq("D(o4minus2)", d, 2);
        }
    }
    rows.check("power-set sweeps within 2 min", t0.elapsed() < Duration::from_secs(120));
}

fn saxl(rows: &mut Rows) {
    let t0 = Instant::now();
    if let Some(g) = rows.result("m10/cosets:N(C8)", group("m10/cosets:N(C8)")) {
        if let Some(s) = rows.result("saxl M10/45", saxl_summary(&g)) {
            rows.eq("valency of M10/45", s.valency, 32);
            rows.check("valency of M10/45 is a power of two", s.valency.is_power_of_two());
        }
    }
    for spec in [
        "wr:psl2:11/cosets:N(C6)|c:2",
        "wr:psl2:11/cosets:N(C6)|s:2",
        "wr:psl2:13/cosets:N(C7)|c:3",
    ] {
        let Some(g) = rows.result(spec, group(spec)) else { continue };
        if let Some(s) = rows.result(spec, saxl_summary(&g)) {
            rows.check(format!("{spec} has a base of size two"), s.r > 0);
            rows.check(format!("{spec} Saxl graph is Eulerian"), s.eulerian);
        }
    }
    for spec in ["psl2:11/cosets:N(C6)", "psl2:13/pairs"] {
        let Some(g) = rows.result(spec, group(spec)) else { continue };
        if let Some(s) = rows.result(spec, saxl_report(&g, DEFAULT_SWEEP_BUDGET)) {
            rows.eq(&format!("star-star by sweep for {spec}"), s.star_star, Some(true));
            rows.eq(
                &format!("star-star by double cosets for {spec}"),
                s.star_star_double_coset,
                Some(true),
            );
            if spec.starts_with("psl2:11") {
                rows.eq("diameter of psl2:11 on 55", s.diameter, Some(2));
            }
        }
    }
    rows.check("Saxl suite within 3 min", t0.elapsed() < Duration::from_secs(180));
}

fn property_suites(rows: &mut Rows) {
    let small = [
        "s:4", "a:5", "a:5@6", "psl2:7", "pgl2:7", "d:5", "c:6", "agl:2:3", "hol:c8",
        "pgl2:7/pairs", "s:5/cosets:N(C3)", "m10",
    ];
    for spec in small {
        let Some(g) = rows.result(spec, group(spec)) else { continue };
        if let Some(o) = rows.result(spec, g.orbit(0)) {
            if let Some(h) = rows.result(spec, g.point_stabilizer(0)) {
                rows.eq(
                    &format!("orbit-stabilizer for {spec}"),
                    BigUint::from(o.len()) * h.order(),
                    g.order(),
                );
            }
        }
        if let Some(elems) = rows.result(spec, enumerate_elements(&g, 100_000)) {
            rows.eq(&format!("enumerated order of {spec}"), BigUint::from(elems.len()), g.order());
        }
        if let Some(l) = rows.result(spec, base_probability(&g, 2, 100_000)) {
            if let Some(holds) = l.bound_holds() {
                rows.check(format!("1 - P <= Q for {spec}"), holds);
            }
        }
    }

    for (l, p) in [("s:3", "s:2"), ("d:5", "c:2")] {
        let (Some(lg), Some(pg)) = (rows.result(l, group(l)), rows.result(p, group(p))) else {
            continue;
        };
        let Some((space, g)) = rows.result(l, wreath_product(&lg, &pg, 1_000_000)) else { continue };
        let Some(table) = rows.result(l, PairOrbitTable::new(&lg)) else { continue };
        let mut agree = true;
        for beta in 0..space.total() as u32 {
            let direct = g.pointwise_stabilizer(&[0, beta]).map(|s| s.is_trivial());
            let fast = product_base_pair_test(&space, &table, &pg, 0, beta);
            agree &= matches!((direct, fast), (Ok(a), Ok(b)) if a == b);
        }
        rows.check(format!("pair test agrees with stabilizers on {l} wr {p}"), agree);
    }

    let tops = ["s:2", "c:3", "s:3", "c:4", "d:4", "c:5", "d:5", "a:4", "s:4", "a:5", "c:6"];
    let mut profiles = BTreeMap::new();
    for spec in tops {
        let Some(p) = rows.result(spec, group(spec)) else { continue };
        let k = p.degree();
        if let Some(prof) = rows.result(spec, profile(&p, &(1..=k).collect::<Vec<_>>())) {
            rows.check(format!("bounds on every t_m of {spec}"), prof.bounds_ok);
            profiles.insert(spec, (p, prof));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..50 {
        let r: u64 = rng.gen_range(1..=8);
        let spec = tops[rng.gen_range(0..tops.len())];
        let Some((p, prof)) = profiles.get(spec) else { continue };
        let ok = r_wreath_formula(r, &p.order(), prof.d, p.degree(), &prof.t).is_ok();
        rows.check(format!("|P| divides the suborbit sum for r = {r}, P = {spec}"), ok);
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Rows)); 8] = [
        ("regular suborbit table", regular_suborbit_table),
        ("reg(L, m) table", reg_table),
        ("distinguishing data", distinguishing_data),
        ("wreath formula equals orbit count", wreath_equivalence),
        ("base sizes of product-type groups", base_sizes),
        ("power-set sweeps", power_set),
        ("Saxl graph suite", saxl),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let mut rows = Rows::new();
        f(&mut rows);
        let secs = t0.elapsed().as_secs_f64();
        let status = if rows.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} {}. {name} ({} checks, {} failed, {secs:.1} s)",
            i + 1,
            rows.total,
            rows.failures.len()
        );
        for msg in &rows.failures {
            println!("    {msg}");
        }
        if !rows.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
