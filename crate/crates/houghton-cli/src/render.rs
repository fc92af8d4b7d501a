//! Plain-text renderings of reports and the element file layout.

use std::fmt::Write;

use houghton::elements::{GenMap, RawGenMap};
use houghton::lattice::RegionDecomposition;
use houghton::poset::{ChainCertificate, OrbitInvariant};
use houghton::topology::HomologyProfile;
use serde::Serialize;

use crate::suites::SuiteReport;

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

fn tuple(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// `t_1^a t_2^b …`, or `1` for the identity.
pub fn translation(exponents: &[i64]) -> String {
    let parts: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// The smallest named class containing `g`, e.g. `G̃₂ bijective, φ=(1,-1)`.
pub fn class_summary(g: &GenMap) -> String {
    let c = g.classify();
    let n = subscript(g.n());
    let name = if c.in_t {
        format!("T{n} translation")
    } else if c.in_gn {
        format!("G{n} bijective")
    } else if c.in_gtilde {
        format!("G̃{n} bijective")
    } else if c.in_m {
        format!("M{n} injective, not surjective")
    } else {
        format!("injective, not surjective, off-diagonal (outside M{n})")
    };
    format!("{name}, φ={}", tuple(&g.phi()))
}

pub fn validate_table(g: &GenMap) -> String {
    let c = g.classify();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = class_summary(g) + "\n";
    let _ = writeln!(s, "  bijective  {}", yes(c.is_bijective));
    let _ = writeln!(s, "  in G̃_n     {}", yes(c.in_gtilde));
    let _ = writeln!(s, "  in G_n     {}", yes(c.in_gn));
    let _ = writeln!(s, "  in M       {}", yes(c.in_m));
    let _ = writeln!(s, "  in T       {}", yes(c.in_t));
    let _ = writeln!(s, "  threshold  ({},{})", g.x0(), g.y0());
    let shifts: Vec<String> = g.m().iter().map(|(a, b)| format!("({a},{b})")).collect();
    let _ = writeln!(s, "  shifts     {}", shifts.join(" "));
    s
}

fn compact<T: Serialize>(v: &T) -> String {
    // Entries hold numbers only, so spacing the separators is safe.
    serde_json::to_string(v).expect("plain data serializes").replace(',', ", ").replace(':', ": ")
}

fn entry_list<T: Serialize>(out: &mut String, name: &str, entries: &[T], last: bool) {
    let end = if last { "" } else { "," };
    if entries.is_empty() {
        let _ = writeln!(out, "  \"{name}\": []{end}");
        return;
    }
    let _ = writeln!(out, "  \"{name}\": [");
    for (j, e) in entries.iter().enumerate() {
        let sep = if j + 1 == entries.len() { "" } else { "," };
        let _ = writeln!(out, "    {}{sep}", compact(e));
    }
    let _ = writeln!(out, "  ]{end}");
}

/// An element file, one table entry per line.
pub fn element(raw: &RawGenMap) -> String {
    let mut s = String::from("{\n");
    let _ = writeln!(s, "  \"n\": {},", raw.n);
    let _ = writeln!(s, "  \"x0\": {},", raw.x0);
    let _ = writeln!(s, "  \"y0\": {},", raw.y0);
    let _ = writeln!(s, "  \"m\": {},", compact(&raw.m));
    entry_list(&mut s, "colmap", &raw.colmap, false);
    entry_list(&mut s, "rowmap", &raw.rowmap, false);
    entry_list(&mut s, "rect", &raw.rect, true);
    s.push_str("}\n");
    s
}

pub fn region_table(r: &RegionDecomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertical rays ({})", r.vrays.len());
    for v in &r.vrays {
        let _ = writeln!(s, "  x = {} in quadrant {}, from y = {}", v.carrier_x, v.quadrant, v.start_y);
    }
    let _ = writeln!(s, "horizontal rays ({})", r.hrays.len());
    for h in &r.hrays {
        let _ = writeln!(s, "  y = {} in quadrant {}, from x = {}", h.carrier_y, h.quadrant, h.start_x);
    }
    let points: Vec<String> = r.finite_part.iter().map(|p| p.to_string()).collect();
    let _ =
        writeln!(s, "finite points ({}){}{}", points.len(), if points.is_empty() { "" } else { " " }, points.join(" "));
    s
}

pub fn grade_table(grade: i64, r: &RegionDecomposition, chain: &ChainCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "grade {grade}");
    let _ = writeln!(s, "  vertical rays    {}", r.vrays.len());
    let _ = writeln!(s, "  horizontal rays  {}", r.hrays.len());
    let _ = writeln!(s, "  finite points    {}", r.finite_part.len());
    let steps: Vec<String> = chain.steps.iter().map(|i| format!("t{i}")).collect();
    let _ = writeln!(
        s,
        "  maximal chain    {} step(s){}{}",
        chain.len(),
        if steps.is_empty() { "" } else { ": " },
        steps.join(" ")
    );
    s
}

pub fn orbit_table(inv: &OrbitInvariant) -> String {
    let words: Vec<String> = inv.translation_word.iter().map(|t| translation(&t.exponents)).collect();
    format!("grade of bottom {}\nsteps [{}]\n", inv.grade0, words.join(", "))
}

pub fn homology_table(h: &HomologyProfile) -> String {
    let mut s = h.to_string();
    let _ = writeln!(s, "euler characteristic {} (1 + Σ(-1)^d b̃_d = {})", h.euler_characteristic(), h.betti_euler());
    s
}

pub fn suite_table(r: &SuiteReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "suite {} (seed {}, {} trials)", r.suite, r.seed, r.trials);
    let _ = writeln!(s, "property: {}", r.property);
    for note in &r.notes {
        let _ = writeln!(s, "  {note}");
    }
    if r.failures.is_empty() {
        s.push_str("PASS\n");
    } else {
        let _ = writeln!(s, "FAIL: {} counterexample(s)", r.failures.len());
        for f in &r.failures {
            let _ = writeln!(s, "  {f}");
        }
    }
    s
}
