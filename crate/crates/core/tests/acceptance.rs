//! Acceptance report: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use wedgework::bounds::{
    audit_dirac, audit_pair_identity, audit_theorem3, dichotomy_report, dyadic_profile,
    DyadicProfileParams, DEFAULT_SUBSET_BUDGET,
};
use wedgework::finite_plane::{pg2, SplitMix64};
use wedgework::incidence::choose2;
use wedgework::kaleidoscope::{
    expand, family_wedge, gen_near_pencil, gen_pencil, gen_simple_cyclic, parse_wedge,
    serialize_wedge, LineClass, Side,
};
use wedgework::render::{render_arrangement, render_wedge, RenderOptions};
use wedgework::{parse_structure, serialize_structure, IncidenceStructure};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const RUNTIME_BUDGET: Duration = Duration::from_secs(10);

fn family_exact() -> Outcome {
    let start = Instant::now();
    for j in 1..=12u32 {
        let arr = expand(&family_wedge(j).map_err(|e| e.to_string())?)
            .map_err(|e| format!("j={j}: {e}"))?;
        let s = &arr.structure;
        ensure(s.alpha() == 1 && s.validate().valid(), || {
            format!("j={j}: invalid")
        })?;
        let st = s.stats().map_err(|e| e.to_string())?;
        let (n, r) = (st.n(), st.r);
        ensure(n == 18 * j as usize + 7, || format!("j={j}: n={n}"))?;
        ensure(r == 8 * j as usize + 2, || format!("j={j}: r={r}"))?;
        ensure(9 * r == 4 * n - 10, || {
            format!("j={j}: 9r={} but 4n-10={}", 9 * r, 4 * n - 10)
        })?;
        ensure(st.curve_degrees.contains(&r), || {
            format!("j={j}: r not attained")
        })?;
        ensure(3 * arr.apex_degree() == n - 1, || {
            format!("j={j}: apex {}", arr.apex_degree())
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < RUNTIME_BUDGET, || {
        format!("took {elapsed:.2?}, budget {RUNTIME_BUDGET:?}")
    })?;
    Ok(format!(
        "j=1..12 n=18j+7 r=8j+2=(4n-10)/9 apex=(n-1)/3 in {:.2?}",
        elapsed
    ))
}

fn base_case() -> Outcome {
    let st = expand(&family_wedge(1).unwrap())
        .map_err(|e| e.to_string())?
        .structure
        .stats()
        .unwrap();
    ensure(st.n() == 25 && st.r == 10, || {
        format!("n={} r={}", st.n(), st.r)
    })?;
    Ok("25 pseudolines, max 10 vertices per curve".into())
}

/// Every fixture the audits run on, with a name for messages.
fn fixtures() -> Vec<(String, IncidenceStructure)> {
    let mut out = Vec::new();
    for j in 1..=12 {
        out.push((
            format!("family j={j}"),
            expand(&family_wedge(j).unwrap()).unwrap().structure,
        ));
    }
    for n in 3..=200 {
        out.push((format!("pencil n={n}"), gen_pencil(n).unwrap()));
        out.push((format!("near-pencil n={n}"), gen_near_pencil(n).unwrap()));
        out.push((format!("simple n={n}"), gen_simple_cyclic(n).unwrap()));
    }
    for p in [5u32, 7, 11, 13] {
        let plane = pg2(p).unwrap();
        let lines = plane.line_count() as u64;
        for seed in 0..100u64 {
            let n = 2 + (SplitMix64::new(seed ^ p as u64).below(lines - 1)) as usize;
            let ids = plane.sample_lines(n, seed).unwrap();
            let s = plane.structure_from_lines(&ids, false).unwrap();
            out.push((format!("pg2 p={p} n={n} seed={seed}"), s));
        }
    }
    out
}

fn tk_bounds(fx: &[(String, IncidenceStructure)]) -> Outcome {
    for (name, s) in fx {
        let report = audit_theorem3(&s.stats().map_err(|e| format!("{name}: {e}"))?);
        ensure(
            report.rows.len() == s.curve_count().saturating_sub(1),
            || format!("{name}: k range"),
        )?;
        ensure(report.part1_holds(), || format!("{name}: part 1 violated"))?;
        ensure(report.part2_holds(), || format!("{name}: part 2 violated"))?;
    }
    Ok(format!("{} structures, zero violations", fx.len()))
}

fn dirac(fx: &[(String, IncidenceStructure)]) -> Outcome {
    let (mut checked, mut pencils) = (0, 0);
    for (name, s) in fx {
        let report = audit_dirac(s, DEFAULT_SUBSET_BUDGET).map_err(|e| format!("{name}: {e}"))?;
        if name.starts_with("pencil") {
            ensure(!report.hypothesis_holds, || {
                format!("{name}: hypothesis should be violated")
            })?;
            pencils += 1;
        }
        if report.hypothesis_holds {
            ensure(report.g_ge_h, || {
                format!("{name}: g={} < h={}", report.g, report.h)
            })?;
            ensure(report.binom_ineq_holds, || {
                format!("{name}: C(g,a)h={} < n-1", report.binom_lhs)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} structures satisfy g>=h and C(g,a)h>=n-1; {pencils} pencils report hypothesis_violated"))
}

/// Randomized structures from every generator, including unions with α > 1.
fn random_structures(count: usize) -> Vec<IncidenceStructure> {
    let mut rng = SplitMix64::new(0x5eed);
    let planes: Vec<_> = [2u32, 3, 5, 7, 11, 13]
        .iter()
        .map(|&p| pg2(p).unwrap())
        .collect();
    let mut out = Vec::new();
    while out.len() < count {
        let s = match rng.below(6) {
            0 => gen_pencil(3 + rng.below(60) as usize).unwrap(),
            1 => gen_near_pencil(3 + rng.below(60) as usize).unwrap(),
            2 => gen_simple_cyclic(3 + rng.below(40) as usize).unwrap(),
            3 => {
                expand(&family_wedge(1 + rng.below(4) as u32).unwrap())
                    .unwrap()
                    .structure
            }
            4 => {
                let plane = &planes[rng.below(planes.len() as u64) as usize];
                let n = 2 + rng.below(plane.line_count() as u64 - 1) as usize;
                let ids = plane.sample_lines(n, rng.next_u64()).unwrap();
                plane.structure_from_lines(&ids, false).unwrap()
            }
            _ => {
                // pencil plus simple: α = 2 on n curves
                let n = 3 + rng.below(20) as usize;
                let mut v = gen_simple_cyclic(n).unwrap().vertices().to_vec();
                v.extend(gen_pencil(n).unwrap().vertices().iter().cloned());
                IncidenceStructure::new(2, n, v).unwrap()
            }
        };
        out.push(s);
    }
    out
}

fn pair_identity() -> Outcome {
    let cases = random_structures(600);
    let mut alphas = BTreeMap::new();
    for (i, s) in cases.iter().enumerate() {
        ensure(s.validate().valid(), || format!("case {i} invalid"))?;
        let check = audit_pair_identity(&s.stats().unwrap());
        ensure(check.holds, || format!("case {i}: {check}"))?;
        *alphas.entry(s.alpha()).or_insert(0) += 1;
    }
    Ok(format!(
        "{} randomized cases, sum l_d = C(n,2) in all (by alpha: {alphas:?})",
        cases.len()
    ))
}

fn closed_forms() -> Outcome {
    for n in 3..=60usize {
        let st = gen_simple_cyclic(n).unwrap().stats().unwrap();
        ensure(st.t(2) as u64 == choose2(n) && st.r == n - 1, || {
            format!("simple n={n}")
        })?;
        let st = gen_near_pencil(n).unwrap().stats().unwrap();
        ensure(st.r == n - 1, || format!("near-pencil n={n}: r={}", st.r))?;
    }
    for p in [2u32, 3, 5, 7, 11] {
        let plane = pg2(p).unwrap();
        let all: Vec<usize> = (0..plane.line_count()).collect();
        let st = plane
            .structure_from_lines(&all, false)
            .unwrap()
            .stats()
            .unwrap();
        let q = (p * p + p + 1) as usize;
        let k = p as usize + 1;
        ensure(st.t(k) == q && st.tk.len() == 1 && st.r == k, || {
            format!("PG(2,{p}): {:?} r={}", st.tk, st.r)
        })?;
    }
    Ok("simple/near-pencil n=3..60, PG(2,p) p in {2,3,5,7,11}".into())
}

fn induction_ledger() -> Outcome {
    let class_max = |j: u32| {
        expand(&family_wedge(j).unwrap())
            .unwrap()
            .class_max_degrees()
    };
    let mut prev = class_max(1);
    for j in 2..=8u32 {
        let cur = class_max(j);
        let delta = |c: &LineClass| cur[c] as i64 - prev[c] as i64;
        for beam in ["red", "blue"] {
            let d = delta(&LineClass::Beam(beam.into()));
            ensure(d == 8, || format!("j={j}: {beam} grew by {d}"))?;
        }
        let worst = *cur.values().max().unwrap() as i64 - *prev.values().max().unwrap() as i64;
        ensure(worst == 8, || format!("j={j}: worst class grew by {worst}"))?;
        let inf = delta(&LineClass::Infinity);
        ensure(inf == 6, || format!("j={j}: infinity grew by {inf}"))?;
        let mut m = [
            delta(&LineClass::Mirror(Side::Top)),
            delta(&LineClass::Mirror(Side::Bottom)),
        ];
        m.sort_unstable();
        ensure(m == [2, 8], || {
            format!("j={j}: mirror classes grew by {m:?}")
        })?;
        prev = cur;
    }
    Ok("j=1..8: beams +8, worst +8, one mirror class +8 and the other +2, infinity +6".into())
}

fn determinism() -> Outcome {
    let twice = |f: &dyn Fn() -> String, what: &str| {
        ensure(f() == f(), || format!("{what} differs between runs"))
    };
    let opts = RenderOptions::default();
    for j in 1..=3 {
        twice(
            &|| serialize_wedge(&family_wedge(j).unwrap()),
            "family wedge",
        )?;
        twice(
            &|| serialize_structure(&expand(&family_wedge(j).unwrap()).unwrap().structure),
            "family acc",
        )?;
        twice(
            &|| render_wedge(&family_wedge(j).unwrap(), &opts).unwrap(),
            "wedge svg",
        )?;
        twice(
            &|| render_arrangement(&family_wedge(j).unwrap(), &opts).unwrap(),
            "arrangement svg",
        )?;
    }
    twice(&|| serialize_structure(&gen_pencil(9).unwrap()), "pencil")?;
    twice(
        &|| serialize_structure(&gen_near_pencil(9).unwrap()),
        "near-pencil",
    )?;
    twice(
        &|| serialize_structure(&gen_simple_cyclic(9).unwrap()),
        "simple",
    )?;
    twice(
        &|| {
            let plane = pg2(11).unwrap();
            serialize_structure(
                &plane
                    .structure_from_lines(&plane.sample_lines(20, 7).unwrap(), false)
                    .unwrap(),
            )
        },
        "pg2 sample",
    )?;

    let cases = random_structures(200);
    for (i, s) in cases.iter().enumerate() {
        twice(
            &|| {
                let st = s.stats().unwrap();
                let params = DyadicProfileParams {
                    gamma: Ratio::new(1, 3),
                    v: 1,
                };
                format!(
                    "{:?}{:?}{:?}{:?}{:?}",
                    audit_theorem3(&st).checks(),
                    audit_dirac(s, DEFAULT_SUBSET_BUDGET).unwrap(),
                    audit_pair_identity(&st),
                    dyadic_profile(&st, params).unwrap(),
                    dichotomy_report(s, Ratio::new(1, 2), DEFAULT_SUBSET_BUDGET).unwrap(),
                )
            },
            "audit",
        )?;
        let text = serialize_structure(s);
        let back = parse_structure(&text).map_err(|e| format!("case {i}: {e}"))?;
        ensure(
            back == s.canonical() && serialize_structure(&back) == text,
            || format!("case {i}: acc round trip"),
        )?;
    }
    for j in 1..=12 {
        let w = family_wedge(j).unwrap();
        ensure(parse_wedge(&serialize_wedge(&w)).as_ref() == Ok(&w), || {
            format!("j={j}: wedge round trip")
        })?;
    }
    Ok(
        "generators, audits and renderers byte-identical across runs; .acc and .wedge round-trip"
            .into(),
    )
}

fn renderer() -> Outcome {
    let mut counts = Vec::new();
    for (j, n) in [(1, 25), (2, 43)] {
        let doc = render_arrangement(&family_wedge(j).unwrap(), &RenderOptions::default())
            .map_err(|e| e.to_string())?;
        let xml = roxmltree::Document::parse(&doc).map_err(|e| format!("j={j}: {e}"))?;
        let lines = xml
            .descendants()
            .filter(|n| n.has_tag_name("polyline"))
            .count();
        ensure(lines == n, || format!("j={j}: {lines} polylines"))?;
        counts.push(lines);
    }
    Ok(format!(
        "well-formed SVG with {} and {} polylines",
        counts[0], counts[1]
    ))
}

fn main() -> ExitCode {
    let fx = fixtures();
    let criteria: Vec<Criterion> = vec![
        ("counterexample family", Box::new(family_exact)),
        ("base case", Box::new(base_case)),
        ("t_k bounds", Box::new(|| tk_bounds(&fx))),
        ("dirac proof steps", Box::new(|| dirac(&fx))),
        ("pair identity", Box::new(pair_identity)),
        ("closed-form fixtures", Box::new(closed_forms)),
        ("induction ledger", Box::new(induction_ledger)),
        ("determinism", Box::new(determinism)),
        ("renderer", Box::new(renderer)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
