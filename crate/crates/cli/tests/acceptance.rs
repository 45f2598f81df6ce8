//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Each criterion returns `Err(reason)` rather than
//! panicking so the remaining ones still run.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use walkup::constructions::{
    build_b5_30, build_m4_15, build_n5_15, build_s4_30, m4_15_fixture_text, random_admissible_bijection,
    random_elongated_stacked_sphere, random_stacked_sphere, B5_30_FACETS,
};
use walkup::homology::{betti_numbers, homology_profile};
use walkup::prng::GeneratorSeed;
use walkup::stacked::{is_stacked_sphere, is_stacked_sphere_by_reduction, minimal_degree_vertices};
use walkup::surgery::{handle_addition, handle_deletion, kalai_decompose};
use walkup::symmetry::{automorphism_group, generators, is_isomorphic};
use walkup::walkup::{check_bounds_4manifold, dehn_sommerville_4, in_walkup_class, stacked_sphere_fvector, walkup_fvector_even};
use walkup::{Orientability, SimplicialComplex};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn walkup_cli(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_walkup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().expect("stdin").write_all(stdin.as_bytes()).expect("write stdin");
    let out = child.wait_with_output().expect("binary finishes");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn fixture_facets() -> BTreeSet<Vec<String>> {
    m4_15_fixture_text()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            let mut f: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            f.sort();
            f
        })
        .collect()
}

fn c1_reproduction() -> Outcome {
    let (code, text) = walkup_cli(&["generate", "m4-15"], "");
    ensure!(code == 0, "generate exited with {code}");
    let generated: BTreeSet<Vec<String>> = text
        .lines()
        .map(|l| {
            let mut f: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            f.sort();
            f
        })
        .collect();
    let fixture = fixture_facets();
    ensure!(fixture.len() == 96, "fixture has {} facets", fixture.len());
    ensure!(generated == fixture, "generated facet set differs from the transcribed list");
    Ok("96 facets equal".into())
}

fn c2_face_vector() -> Outcome {
    let x = build_m4_15();
    let f = x.f_vector();
    ensure!(f.0 == [15, 105, 230, 240, 96], "f = {f}");
    ensure!(walkup_fvector_even(4, 15, -4).map_err(|e| e.to_string())? == f, "walkup_fvector_even disagrees");
    ensure!(dehn_sommerville_4(15, 105, -4).map_err(|e| e.to_string())? == f, "dehn_sommerville_4 disagrees");
    Ok(format!("f = ({f})"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn c3_lower_bound_equality() -> Outcome {
    let x = build_m4_15();
    let b = betti_numbers(&x);
    let chi: i64 = b.iter().enumerate().map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
    ensure!(chi == -4, "chi from homology = {chi}");
    let n = x.num_vertices() as i64;
    ensure!(n * (n - 11) == -n * chi, "n(n-11) = {} but -n*chi = {}", n * (n - 11), -n * chi);
    let r = check_bounds_4manifold(&x).map_err(|e| e.to_string())?;
    ensure!(r.part_a_tight && r.part_b_tight, "part a tight: {}, part b tight: {}", r.part_a_tight, r.part_b_tight);
    Ok(format!("{n}·{} = {} = −{n}·χ, both bounds tight", n - 11, n * (n - 11)))
}

fn c4_walkup_membership() -> Outcome {
    let x = build_m4_15();
    for v in x.labels() {
        let lk = x.link(&[v.as_str()]).map_err(|e| e.to_string())?;
        let (a, b) = (is_stacked_sphere(&lk), is_stacked_sphere_by_reduction(&lk));
        ensure!(a && b, "link of {v}: clique route {a}, reduction route {b}");
    }
    ensure!(in_walkup_class(&x), "in_walkup_class false");
    Ok("15/15 links stacked 3-spheres by both recognizers".into())
}

fn c5_homology() -> Outcome {
    let p = homology_profile(&build_m4_15());
    ensure!(p.betti == [1, 3, 0, 3, 1], "betti = {:?}", p.betti);
    ensure!(p.orientable == Orientability::NonOrientable, "orientability {:?}", p.orientable);
    ensure!(p.connected, "not connected");
    let s = homology_profile(&build_s4_30());
    ensure!(s.orientable == Orientability::Orientable, "S4_30 orientability {:?}", s.orientable);
    Ok("betti (1,3,0,3,1), non-orientable, connected; S4_30 orientable".into())
}

fn c6_automorphisms() -> Outcome {
    let x = build_m4_15();
    let g = automorphism_group(&x);
    ensure!(g.len() == 3, "order {}", g.len());
    let gens: Vec<String> = generators(&g).iter().map(ToString::to_string).collect();
    let want = "(a1 b1 c1)(a2 b2 c2)(a3 b3 c3)(a4 b4 c4)(a5 b5 c5)";
    ensure!(gens == [want], "generators {gens:?}");
    Ok(format!("order 3, generator {want}"))
}

const WITHIN_A: [[usize; 5]; 5] =
    [[0, 10, 6, 7, 5], [10, 0, 8, 9, 7], [6, 8, 0, 11, 11], [7, 9, 11, 0, 11], [5, 7, 11, 11, 0]];
const BETWEEN_A_B: [[usize; 5]; 5] =
    [[7, 9, 7, 8, 6], [7, 8, 4, 5, 4], [4, 5, 6, 7, 8], [4, 4, 4, 5, 6], [5, 4, 5, 6, 7]];

fn c7_edge_degrees() -> Outcome {
    let x = build_m4_15();
    let deg = |u: String, v: String| x.link(&[u, v]).map(|l| l.num_vertices()).map_err(|e| e.to_string());
    let mut checked = 0;
    for (p, q) in [("a", "b"), ("b", "c"), ("c", "a")] {
        for i in 1..=5 {
            for j in 1..=5 {
                if i < j {
                    let got = deg(format!("{p}{i}"), format!("{p}{j}"))?;
                    ensure!(got == WITHIN_A[i - 1][j - 1], "{p}{i}{p}{j}: {got}");
                    checked += 1;
                }
                let got = deg(format!("{q}{i}"), format!("{p}{j}"))?;
                ensure!(got == BETWEEN_A_B[i - 1][j - 1], "{q}{i}{p}{j}: {got}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} edge degrees match across the three rotated blocks"))
}

fn pair(a: &str, b: &str) -> (String, String) {
    if a < b { (a.into(), b.into()) } else { (b.into(), a.into()) }
}

fn named_dual_edges(x: &SimplicialComplex, strip_primes: bool) -> BTreeSet<(String, String)> {
    let key = |f: &[&str]| {
        let mut g: Vec<String> =
            f.iter().map(|s| if strip_primes { s.trim_end_matches('p') } else { s }.to_string()).collect();
        g.sort();
        g
    };
    let name_of = |facet: &[usize]| {
        let labels: Vec<String> = facet.iter().map(|&v| x.label(v).to_string()).collect();
        B5_30_FACETS.iter().find(|(_, f)| key(f) == labels).map(|(n, _)| n.to_string()).expect("named facet")
    };
    x.dual_graph()
        .edges
        .iter()
        .map(|&(i, j)| pair(&name_of(&x.facets()[i]), &name_of(&x.facets()[j])))
        .collect()
}

fn c8_dual_graphs() -> Outcome {
    let b = build_b5_30();
    let dual = b.dual_graph();
    ensure!(dual.nodes == 25 && dual.is_tree(), "nodes {}, tree {}", dual.nodes, dual.is_tree());
    let mut tree = BTreeSet::new();
    for p in ["alpha", "lambda", "gamma"] {
        tree.insert(pair("delta", &format!("{p}1")));
        for i in 1..8 {
            tree.insert(pair(&format!("{p}{i}"), &format!("{p}{}", i + 1)));
        }
    }
    ensure!(named_dual_edges(&b, false) == tree, "tree edges differ from the figure");
    let n_edges = named_dual_edges(&build_n5_15(), true);
    let extra: BTreeSet<_> = n_edges.difference(&tree).cloned().collect();
    let want: BTreeSet<_> = [pair("alpha8", "lambda3"), pair("lambda8", "gamma3"), pair("gamma8", "alpha3")].into();
    ensure!(tree.is_subset(&n_edges) && extra == want, "N5_15 extra edges {extra:?}");
    Ok("24-edge tree; N5_15 adds alpha8-lambda3, lambda8-gamma3, gamma8-alpha3".into())
}

fn c9_decomposition() -> Outcome {
    let x = build_m4_15();
    let ledger = kalai_decompose(&x).map_err(|e| e.to_string())?;
    ensure!(ledger.handles.len() == 3, "{} handles", ledger.handles.len());
    ensure!(ledger.base.num_vertices() == 30 && ledger.base.dim() == 4, "base has {} vertices", ledger.base.num_vertices());
    ensure!(is_stacked_sphere(&ledger.base), "base is not a stacked sphere");
    ensure!(ledger.reconstruct().map_err(|e| e.to_string())? == x, "replay differs from M4_15");
    Ok(format!("3 handles on a 30-vertex stacked 4-sphere, {} relabelings", ledger.relabeling.len()))
}

fn c10_tightness() -> Outcome {
    let fixture = m4_15_fixture_text();
    let (code, text) = walkup_cli(&["--porcelain", "check", "tight", "--exhaustive", "--jobs", "1"], fixture);
    ensure!(code == 0, "exit {code}: {text}");
    let report: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let r = &report["result"];
    ensure!(r["checked"] == 32766, "checked {}", r["checked"]);
    ensure!(r["violations"].as_array().is_some_and(Vec::is_empty), "violations {}", r["violations"]);
    ensure!(r["verdict"] == "tight", "verdict {}", r["verdict"]);
    Ok("32766 subsets, zero violations, single worker".into())
}

fn c11_properties() -> Outcome {
    // (a) 200 random stacked spheres, d in {2,3,4}, n <= 40
    let mut spheres = Vec::new();
    for k in 0..200u64 {
        let d = 2 + (k % 3) as usize;
        let n = d + 2 + (k as usize * 7 % (39 - d));
        let x = random_stacked_sphere(d, n, GeneratorSeed(k)).map_err(|e| e.to_string())?;
        let want = stacked_sphere_fvector(d, n as u64).map_err(|e| e.to_string())?;
        ensure!(x.f_vector() == want, "(a) seed {k}: f = {}, formula {want}", x.f_vector());
        ensure!(is_stacked_sphere(&x) && is_stacked_sphere_by_reduction(&x), "(a) seed {k}: recognizer says no");
        ensure!(n == d + 2 || minimal_degree_vertices(&x).len() >= 2, "(a) seed {k}: fewer than two minimal vertices");
        spheres.push(x);
    }
    // (b) 50 handle additions on random stacked 4-spheres
    let mut handles = 0;
    let mut seed = 0u64;
    while handles < 50 {
        seed += 1;
        ensure!(seed < 1000, "(b) only {handles} admissible handles in {seed} tries");
        let n = 30 + (seed as usize % 11);
        let x = random_elongated_stacked_sphere(4, n, GeneratorSeed(seed)).map_err(|e| e.to_string())?;
        let Some(psi) = random_admissible_bijection(&x, GeneratorSeed(seed), 5000) else { continue };
        let y = handle_addition(&x, &psi).map_err(|e| e.to_string())?;
        ensure!(y.euler_characteristic() == x.euler_characteristic() - 2, "(b) seed {seed}: chi did not drop by 2");
        ensure!(in_walkup_class(&y), "(b) seed {seed}: class membership lost");
        let sigma2: Vec<String> = psi.sigma2().iter().map(ToString::to_string).collect();
        let (z, _) = handle_deletion(&y, &sigma2).map_err(|e| format!("(b) seed {seed}: {e}"))?;
        ensure!(is_isomorphic(&z, &x).is_some(), "(b) seed {seed}: deletion not isomorphic to the sphere");
        ensure!(in_walkup_class(&z), "(b) seed {seed}: deleted complex left the class");
        spheres.push(x);
        handles += 1;
    }
    // (c) boundary of the clique complex is the sphere itself
    for (k, x) in spheres.iter().enumerate() {
        let ball = x.clique_complex().into_complex().map_err(|e| e.to_string())?;
        ensure!(ball.boundary_complex().map_err(|e| e.to_string())? == *x, "(c) sphere {k}");
    }
    Ok(format!("(a) 200 spheres, (b) 50 handles in {seed} draws, (c) {} spheres", spheres.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 M4_15 reproduction", Duration::from_secs(1), c1_reproduction),
        ("2 face vector", Duration::from_secs(1), c2_face_vector),
        ("3 lower-bound equality", Duration::from_secs(1), c3_lower_bound_equality),
        ("4 Walkup membership", Duration::from_secs(5), c4_walkup_membership),
        ("5 homology", Duration::from_secs(5), c5_homology),
        ("6 automorphisms", Duration::from_secs(30), c6_automorphisms),
        ("7 edge-degree tables", Duration::from_secs(1), c7_edge_degrees),
        ("8 dual-graph tree", Duration::from_secs(1), c8_dual_graphs),
        ("9 decomposition", Duration::from_secs(60), c9_decomposition),
        ("10 tightness", Duration::from_secs(600), c10_tightness),
        ("11 property suites", Duration::from_secs(300), c11_properties),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if elapsed <= limit => "PASS",
            _ => "FAIL",
        };
        let detail = match outcome {
            Ok(d) if elapsed <= limit => d,
            Ok(d) => format!("{d}; over the {limit:?} limit"),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} criterion {name} [{:.3}s]: {detail}", elapsed.as_secs_f64());
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
