//! Named verification suites. Each trial draws from its own stream of the
//! master seed, so reports are reproducible trial by trial.

use std::collections::HashSet;

use houghton::elements::{generators, sample_element, Bounds, ClassSpec, GenMap};
use houghton::lattice::Line;
use houghton::poset::{
    decompose, enumerate_t_leq, extend_maximal_family, glb, glb_criterion, grade, kernel_element, leq, max_chain,
    orbit_invariant, orbit_witness, predecessor, random_chain, random_maximal_family, random_monoid,
    random_region_element, stabilizer_conjugate, PosetError, RayEnumeration,
};
use houghton::topology::{
    check_gamma_conditions, clique_complex, nerve, order_complex, random_colored_graph, random_poset, reduced_homology,
    sigma_nk, GammaWitness,
};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub property: String,
    pub seed: u64,
    pub trials: usize,
    pub notes: Vec<String>,
    pub failures: Vec<Value>,
}

/// A passing trial may leave a note; a failing one returns its counterexample.
type Trial = Result<Option<String>, Value>;

struct Suite {
    name: &'static str,
    aliases: &'static [&'static str],
    property: &'static str,
    trial: fn(usize, &mut ChaCha8Rng) -> Trial,
}

const SUITES: &[Suite] = &[
    Suite {
        name: "grade-step", aliases: &[], property: "grade(t_i·β) = grade(β) + 1 for β in M", trial: grade_step
    },
    Suite {
        name: "predecessor",
        aliases: &[],
        property: "a predecessor β satisfies t_i·β = α and grade(β) = grade(α) − 1; grade 0 has none",
        trial: predecessor_round_trip,
    },
    Suite {
        name: "grade-agreement",
        aliases: &["grade"],
        property: "Σ m_i, the vertical and horizontal ray counts and the maximal chain length agree",
        trial: grade_agreement,
    },
    Suite {
        name: "orbit",
        aliases: &[],
        property: "right-translated chains share invariants and a witness g ∈ G_n; perturbed chains do not",
        trial: orbits,
    },
    Suite {
        name: "glb",
        aliases: &["lower-bounds"],
        property: "δ = glb(β_1..β_p) lies below each β_j with grade(α) − p, and sampled lower bounds lie below δ",
        trial: lower_bounds,
    },
    Suite {
        name: "wedge",
        aliases: &["clique-wedge"],
        property: "graphs meeting the wedge conditions have torsion-free homology concentrated in degree n − 1",
        trial: wedge,
    },
    Suite {
        name: "exact-sequence",
        aliases: &["phi"],
        property: "φ is a homomorphism onto the sum-zero lattice with kernel G_n",
        trial: exact_sequence,
    },
    Suite {
        name: "nerve-fidelity",
        aliases: &["nerve"],
        property: "down-set covers with meets have a nerve with the homology of the union",
        trial: nerve_fidelity,
    },
    Suite {
        name: "t-count",
        aliases: &["translation-count"],
        property: "T_{≤k} has binomial(n+k, k) members, equal to the products of at most k generators",
        trial: t_count,
    },
    Suite {
        name: "stabilizer",
        aliases: &["stabilizer-conjugation"],
        property: "region-supported kernel elements conjugate to Houghton permutations, homomorphically",
        trial: stabilizer,
    },
    Suite {
        name: "chessboard",
        aliases: &["sigma-nk"],
        property: "Σ_{n,k} with k ≥ 2n is a wedge of (n−1)-spheres counted by its Euler characteristic",
        trial: chessboard,
    },
];

pub fn names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

pub fn run(name: &str, trials: usize, seed: u64) -> Option<SuiteReport> {
    let suite = SUITES.iter().find(|s| s.name == name || s.aliases.contains(&name))?;
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        match (suite.trial)(t, &mut rng) {
            Ok(Some(note)) => notes.push(format!("trial {t}: {note}")),
            Ok(None) => {}
            Err(mut payload) => {
                payload["trial"] = json!(t);
                failures.push(payload);
            }
        }
    }
    Some(SuiteReport { suite: suite.name.into(), property: suite.property.into(), seed, trials, notes, failures })
}

fn ensure(cond: bool, payload: impl FnOnce() -> Value) -> Result<(), Value> {
    if cond {
        Ok(())
    } else {
        Err(payload())
    }
}

fn error(context: &str, e: impl std::fmt::Display) -> Value {
    json!({ "error": format!("{context}: {e}") })
}

fn grade_step(_: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=3);
    let b = random_monoid(rng, n, 0..=4);
    let i = rng.gen_range(1..=n);
    let tb = GenMap::t(n, i).compose(&b).map_err(|e| error("compose", e))?;
    let (g, h) = (grade(&b).map_err(|e| error("grade", e))?, grade(&tb).map_err(|e| error("grade", e))?);
    ensure(h == g + 1, || json!({ "element": b.to_raw(), "quadrant": i, "grade": g, "grade_after": h }))?;
    Ok(None)
}

fn predecessor_round_trip(t: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=3);
    let class = if t.is_multiple_of(6) { ClassSpec::Gn } else { ClassSpec::Monoid };
    let a = sample_element(rng, n, class, &Bounds::default()).map_err(|e| error("sample", e))?;
    let i = rng.gen_range(1..=n);
    let g = grade(&a).map_err(|e| error("grade", e))?;
    let ti = GenMap::t(n, i);
    for seed in [None, Some(rng.gen())] {
        match predecessor(&a, i, seed) {
            Err(PosetError::GradeZero) if g == 0 => {}
            Ok(b) if g > 0 => {
                let ok = ti.compose(&b).ok().as_ref() == Some(&a) && grade(&b).ok() == Some(g - 1);
                ensure(ok, || json!({ "element": a.to_raw(), "quadrant": i, "predecessor": b.to_raw() }))?;
            }
            other => {
                return Err(json!({ "element": a.to_raw(), "quadrant": i, "grade": g, "result": format!("{other:?}") }))
            }
        }
    }
    Ok(None)
}

fn grade_agreement(_: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=3);
    let a = sample_element(rng, n, ClassSpec::Monoid, &Bounds::default()).map_err(|e| error("sample", e))?;
    let sum: i64 = a.m().iter().map(|&(x, _)| x).sum();
    let r = decompose(&a).map_err(|e| error("decompose", e))?;
    let chain = max_chain(&a, 0).map_err(|e| error("max_chain", e))?;
    let counts = [sum, r.vrays.len() as i64, r.hrays.len() as i64, chain.len() as i64];
    ensure(counts.iter().all_equal() && chain.verify(), || json!({ "element": a.to_raw(), "grades": counts }))?;
    Ok(None)
}

fn orbits(_: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=3);
    let len = rng.gen_range(1..=3);
    let a = random_chain(rng, n, len);
    let raw = |c: &[GenMap]| c.iter().map(|x| x.to_raw()).collect::<Vec<_>>();
    let g = sample_element(rng, n, ClassSpec::Gn, &Bounds::default()).map_err(|e| error("sample", e))?;
    let b: Vec<GenMap> = a.iter().map(|x| x.compose(&g)).collect::<Result<_, _>>().map_err(|e| error("compose", e))?;
    let w = orbit_witness(&a, &b)
        .map_err(|e| json!({ "chain": raw(&a), "translate": g.to_raw(), "error": e.to_string() }))?;
    let ok = w.classify().in_gn && a.iter().zip(&b).all(|(x, y)| x.compose(&w).ok().as_ref() == Some(y));
    ensure(ok, || json!({ "chain": raw(&a), "translate": g.to_raw(), "witness": w.to_raw() }))?;

    let t = GenMap::t(n, rng.gen_range(1..=n));
    let mut c = a.clone();
    if rng.gen_bool(0.5) || len == 1 {
        c = c.iter().map(|x| t.compose(x).expect("same quadrant count")).collect();
    } else {
        let last = c.pop().expect("nonempty");
        c.push(t.compose(&last).expect("same quadrant count"));
    }
    let separated = orbit_witness(&a, &c) == Err(PosetError::InvariantMismatch);
    ensure(separated, || json!({ "chain": raw(&a), "perturbed": raw(&c) }))?;
    let inv = orbit_invariant(&a).map_err(|e| error("invariant", e))?;
    Ok(Some(format!("bottom grade {}, {} step(s), separated from its perturbation", inv.grade0, len - 1)))
}

fn lower_bounds(t: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = 1 + t % 2;
    let alpha = random_monoid(rng, n, 2 * n as i64..=2 * n as i64 + 2);
    let p = rng.gen_range(1..=n);
    let family = random_maximal_family(rng, &alpha, p).ok_or_else(|| json!({ "error": "no maximal family" }))?;
    let payload = |msg: &str| json!({ "alpha": alpha.to_raw(), "family": family.iter().map(|b| b.to_raw()).collect::<Vec<_>>(), "error": msg });
    ensure(glb_criterion(&alpha, &family) == Ok(true), || payload("criterion rejects a generated family"))?;
    let d = glb(&alpha, &family).map_err(|e| payload(&e.to_string()))?;
    let ga = grade(&alpha).map_err(|e| error("grade", e))?;
    ensure(family.iter().all(|b| leq(&d, b).is_some()), || payload("δ is not below every member"))?;
    ensure(grade(&d) == Ok(ga - p as i64), || payload("δ has the wrong grade"))?;

    let mut checked = 0;
    if let Some(extra) = extend_maximal_family(rng, &alpha, &family) {
        let mut bigger = family.clone();
        bigger.push(extra);
        let lower = glb(&alpha, &bigger).map_err(|e| payload(&e.to_string()))?;
        ensure(leq(&lower, &d).is_some(), || payload("glb of a larger family is not below δ"))?;
        checked += 1;
    }
    for _ in 0..200 {
        if checked >= 20 {
            break;
        }
        let mut g = if rng.gen_bool(0.5) { d.clone() } else { family[0].clone() };
        for _ in 0..rng.gen_range(0..=2) {
            if let Ok(next) = predecessor(&g, rng.gen_range(1..=n), Some(rng.gen())) {
                g = next;
            }
        }
        if family.iter().all(|b| leq(&g, b).is_some()) {
            ensure(leq(&g, &d).is_some(), || payload("a common lower bound is not below δ"))?;
            checked += 1;
        }
    }
    Ok(Some(format!("n={n} p={p} grade {ga} → δ of grade {}, {checked} lower bounds below δ", ga - p as i64)))
}

fn wedge(t: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = 2 + t % 2;
    let size = rng.gen_range(2..=6);
    let drop = [0.0, 0.05, 0.15, 0.4][rng.gen_range(0..4)];
    let g = random_colored_graph(rng, n, size, drop);
    let report = check_gamma_conditions(&g);
    let shape = format!("n={n} |V_i|={size} drop={drop}");
    if report.holds {
        let h = reduced_homology(&clique_complex(&g)).map_err(|e| error("homology", e))?;
        let ok = h.concentrated_in(n - 1) && h.betti(n - 1) >= 1;
        ensure(ok, || json!({ "graph": g, "homology": h }))?;
        return Ok(Some(format!("{shape}: conditions hold, b̃ = {:?}", h.betti)));
    }
    match report.witness {
        Some(GammaWitness::Uncovered { color, ref outside, ref common }) => {
            let real: Vec<usize> =
                g.color_class(color).into_iter().filter(|&u| outside.iter().all(|&v| g.adjacent(u, v))).collect();
            ensure(&real == common && common.len() < 2, || json!({ "graph": g, "witness": report.witness }))?;
            Ok(Some(format!("{shape}: fails, vertices {outside:?} have common neighbours {common:?} in V_{color}")))
        }
        Some(GammaWitness::SmallClass { color, size }) => Ok(Some(format!("{shape}: fails, |V_{color}| = {size}"))),
        None => Err(json!({ "graph": g, "error": "failing report without a witness" })),
    }
}

fn exact_sequence(t: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = 1 + t % 4;
    let sample = |rng: &mut ChaCha8Rng, class| sample_element(rng, n, class, &Bounds::default());
    let g = sample(rng, ClassSpec::GTilde).map_err(|e| error("sample", e))?;
    let h = sample(rng, ClassSpec::GTilde).map_err(|e| error("sample", e))?;
    let sum: Vec<i64> = g.phi().iter().zip(h.phi()).map(|(x, y)| x + y).collect();
    let gh = g.compose(&h).map_err(|e| error("compose", e))?;
    ensure(gh.phi() == sum, || json!({ "g": g.to_raw(), "h": h.to_raw(), "error": "φ(gh) ≠ φ(g) + φ(h)" }))?;
    ensure(g.phi().iter().sum::<i64>() == 0, || json!({ "g": g.to_raw(), "error": "φ(g) has nonzero sum" }))?;
    let k = sample(rng, if t.is_multiple_of(3) { ClassSpec::Gn } else { ClassSpec::GTilde })
        .map_err(|e| error("sample", e))?;
    ensure(
        k.phi().iter().all(|&v| v == 0) == k.classify().in_gn,
        || json!({ "g": k.to_raw(), "error": "φ(g) = 0 disagrees with membership in G_n" }),
    )?;
    if n >= 2 {
        // φ of a product of the generators is the chosen sum-zero vector.
        let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-3..=3)).collect();
        v.push(-v.iter().sum::<i64>());
        let mut g = GenMap::identity(n);
        for (i, &c) in v[..n - 1].iter().enumerate() {
            let gen = generators::horizontal_shift(n, i + 1, n);
            let step = if c >= 0 { gen } else { gen.invert().map_err(|e| error("invert", e))? };
            for _ in 0..c.abs() {
                g = g.compose(&step).map_err(|e| error("compose", e))?;
            }
        }
        ensure(g.phi() == v, || json!({ "target": v, "reached": g.phi() }))?;
    }
    Ok(None)
}

fn nerve_fidelity(_: usize, rng: &mut ChaCha8Rng) -> Trial {
    for _ in 0..1000 {
        let p = random_poset(rng, 9);
        let Some(cover) = p.maximal_down_set_cover() else { continue };
        let union = order_complex(&p).map_err(|e| error("order complex", e))?;
        let nv = nerve(&union, &cover).map_err(|e| error("nerve", e))?;
        let (hn, hu) = (reduced_homology(&nv), reduced_homology(&union));
        let (hn, hu) = (hn.map_err(|e| error("homology", e))?, hu.map_err(|e| error("homology", e))?);
        ensure(hn == hu, || json!({ "poset": p, "nerve": hn, "union": hu }))?;
        return Ok(Some(format!("{} elements, {} members, b̃ = {:?}", p.len(), cover.len(), hu.betti)));
    }
    Err(json!({ "error": "no poset with meets found" }))
}

fn t_count(t: usize, _: &mut ChaCha8Rng) -> Trial {
    let k = t % 7;
    for n in 1..=4usize {
        let listed = enumerate_t_leq(n, k as i64);
        let expected = (1..=n as u64).fold(1u64, |acc, j| acc * (k as u64 + j) / j);
        let mut words: HashSet<GenMap> = HashSet::from([GenMap::identity(n)]);
        for len in 1..=k {
            for word in (0..len).map(|_| 1..=n).multi_cartesian_product() {
                let g = word.iter().try_fold(GenMap::identity(n), |g, &i| g.compose(&GenMap::t(n, i)));
                words.insert(g.map_err(|e| error("compose", e))?);
            }
        }
        let from_list: HashSet<GenMap> = listed.iter().map(|t| t.to_genmap()).collect();
        ensure(
            listed.len() as u64 == expected && from_list == words,
            || json!({ "n": n, "k": k, "listed": listed.len(), "expected": expected, "words": words.len() }),
        )?;
    }
    Ok(Some(format!("k={k}: counts match for n = 1..4")))
}

fn stabilizer(_: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=2);
    let alpha = random_monoid(rng, n, 1..=3);
    let region = decompose(&alpha).map_err(|e| error("decompose", e))?;
    let en = RayEnumeration::new(&region);
    let g1 = random_region_element(rng, n, &region).ok_or_else(|| json!({ "error": "no rays" }))?;
    let g2 = random_region_element(rng, n, &region).ok_or_else(|| json!({ "error": "no rays" }))?;
    let payload = |msg: &str| json!({ "alpha": alpha.to_raw(), "g1": g1.to_raw(), "g2": g2.to_raw(), "error": msg });
    let h1 = stabilizer_conjugate(&g1, &region).map_err(|e| payload(&e.to_string()))?;
    let h2 = stabilizer_conjugate(&g2, &region).map_err(|e| payload(&e.to_string()))?;
    ensure(h1.is_bijective() && h1.m().iter().sum::<i64>() == 0, || payload("not a Houghton permutation"))?;
    let pointwise = (1..=en.ray_count())
        .all(|q| (1..25).all(|x| en.point(h1.apply(Line::new(x, q))) == g1.apply(en.point(Line::new(x, q)))));
    ensure(pointwise, || payload("conjugate disagrees with g on the rays"))?;
    let g12 = g1.compose(&g2).map_err(|e| error("compose", e))?;
    let h12 = stabilizer_conjugate(&g12, &region).map_err(|e| payload(&e.to_string()))?;
    ensure(h1.compose(&h2).ok() == Some(h12), || payload("conjugation is not multiplicative"))?;
    ensure(kernel_element(n, &region, &h1).ok() == Some(g1.clone()), || payload("kernel element round trip"))?;
    Ok(Some(format!("{} rays, m = {:?}", en.ray_count(), h1.m())))
}

fn chessboard(t: usize, _: &mut ChaCha8Rng) -> Trial {
    const CASES: [(usize, usize); 8] = [(1, 2), (1, 3), (2, 4), (2, 5), (2, 6), (3, 6), (3, 7), (1, 5)];
    let (n, k) = CASES[t % CASES.len()];
    let h = reduced_homology(&sigma_nk(n, k)).map_err(|e| error("homology", e))?;
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let expected = sign * (h.euler_characteristic() - 1);
    ensure(h.concentrated_in(n - 1) && h.betti(n - 1) as i64 == expected, || json!({ "n": n, "k": k, "homology": h }))?;
    Ok(Some(format!("Σ_{{{n},{k}}}: b̃_{} = {}", n - 1, h.betti(n - 1))))
}
