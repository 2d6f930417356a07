//! End-to-end criteria, one `criterion k: pass|fail` line each. Exits 1 if any fails.
//!
//! Level-5 data is cached under `target/a5-checkpoint` (override with
//! `CUBIC_HECKE_CHECKPOINT`). `CUBIC_HECKE_DELTA_CUBED=1` enables criterion 9.

use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use cubic_hecke::level5::Level5;
use cubic_hecke::tower::{basis_words, gens_a, gens_b, gens_t5};
use cubic_hecke::verify::{self, VerificationReport};

const SEED: u64 = 2024;

fn checkpoint() -> PathBuf {
    std::env::var_os("CUBIC_HECKE_CHECKPOINT")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../target/a5-checkpoint")
        })
}

fn level5(k: usize) -> Level5 {
    let s = verify::a5_points(SEED).expect("points")[k];
    let t = Instant::now();
    let dir = checkpoint();
    std::fs::create_dir_all(&dir).expect("checkpoint directory");
    verify::level5_at(s, SEED, Some(&dir), |i, n| {
        eprintln!("  point {k}: induced module {i}/{n} {:?}", t.elapsed())
    })
    .expect("level 5")
}

/// A generic point, shared by criteria 3, 6, 7 and 9.
fn generic_point() -> &'static Level5 {
    static L5: OnceLock<Level5> = OnceLock::new();
    L5.get_or_init(|| level5(1))
}

fn failures(rep: &VerificationReport) -> String {
    let ids: Vec<&str> = rep.failures().map(|r| r.id.as_str()).collect();
    if ids.is_empty() {
        format!("{} claims", rep.results.len())
    } else {
        format!(
            "{} of {} claims failed: {}",
            ids.len(),
            rep.results.len(),
            ids.join(", ")
        )
    }
}

type Outcome = (bool, String);
type Criterion = (u32, &'static str, Box<dyn Fn() -> Option<Outcome>>);

fn of(rep: VerificationReport) -> Outcome {
    (rep.ok(), failures(&rep))
}

fn counts() -> Outcome {
    let t = Instant::now();
    let sizes: Vec<usize> = (2..=5).map(|n| basis_words(n).unwrap().len()).collect();
    let a = gens_a().unwrap().len();
    let b = gens_b().unwrap().len();
    let t5 = gens_t5().unwrap();
    let took = t.elapsed();
    let ok = sizes == [3, 24, 648, 155520]
        && a == 27
        && b == 72
        && t5.len() == 240
        && t5.stratum_counts() == [1, 54, 72, 54, 56, 3]
        && took < Duration::from_secs(1);
    (
        ok,
        format!(
            "sizes {sizes:?}, |A| {a}, |B| {b}, T5 strata {:?}, {took:.1?}",
            t5.stratum_counts()
        ),
    )
}

fn identities() -> Outcome {
    let rep = verify::check_identity_lemmas(SEED);
    let controls = rep
        .results
        .iter()
        .filter(|r| r.expect == verify::Status::Fail)
        .count();
    let (ok, detail) = of(rep);
    (
        ok && controls >= 2,
        format!("{detail}, {controls} controls"),
    )
}

fn orbits() -> Outcome {
    let sizes: Vec<usize> = (2..=4)
        .map(|n| verify::group_orbit(n, 7).unwrap())
        .collect();
    let (ok, detail) = of(verify::check_group_specialization(7, SEED));
    (
        ok && sizes == verify::GROUP_ORDERS,
        format!("orbits {sizes:?}, {detail}"),
    )
}

fn level5_relations() -> Outcome {
    let points = verify::a5_points(SEED).unwrap();
    let special = points.iter().any(|s| s.a == 0 && s.b == 0 && s.c == 1);
    let mut rep = verify::check_relations_a5(generic_point(), 1, SEED);
    for k in (0..points.len()).filter(|&k| k != 1) {
        rep.extend(verify::check_relations_a5(&level5(k), 1, SEED));
    }
    let (ok, detail) = of(rep);
    (
        ok && special && points.len() >= 3,
        format!("{} points, {detail}", points.len()),
    )
}

fn automorphisms() -> Outcome {
    let mut rep = verify::check_center_and_automorphisms(200, SEED);
    rep.extend(verify::check_center_a5(generic_point(), SEED));
    of(rep)
}

fn homomorphism() -> Outcome {
    let mut rep = verify::check_homomorphism(1000, SEED);
    rep.extend(verify::check_homomorphism_a5(generic_point(), 100, SEED));
    of(rep)
}

fn delta_cubed() -> Option<Outcome> {
    (std::env::var("CUBIC_HECKE_DELTA_CUBED").as_deref() == Ok("1"))
        .then(|| of(verify::check_delta_cubed(generic_point(), SEED)))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "basis counts and strata", Box::new(|| Some(counts()))),
        (
            2,
            "exact relations n <= 4",
            Box::new(|| Some(of(verify::check_relations_exact(&[2, 3, 4], SEED)))),
        ),
        (
            4,
            "identities in tables and oracle",
            Box::new(|| Some(identities())),
        ),
        (5, "group orbits over F_7", Box::new(|| Some(orbits()))),
        (
            8,
            "inclusion",
            Box::new(|| Some(of(verify::check_tower(SEED)))),
        ),
        (
            6,
            "automorphisms and centrality",
            Box::new(|| Some(automorphisms())),
        ),
        (7, "homomorphism", Box::new(|| Some(homomorphism()))),
        (
            3,
            "level-5 relations",
            Box::new(|| Some(level5_relations())),
        ),
        (9, "delta cubed", Box::new(delta_cubed)),
    ];
    let mut failed = Vec::new();
    for (k, what, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run));
        let took = t.elapsed();
        match outcome {
            Ok(Some((ok, detail))) => {
                println!(
                    "criterion {k}: {} ({what}) {detail} [{took:.1?}]",
                    if ok { "pass" } else { "fail" }
                );
                if !ok {
                    failed.push(k);
                }
            }
            Ok(None) => println!("criterion {k}: skipped ({what}; set CUBIC_HECKE_DELTA_CUBED=1)"),
            Err(_) => {
                println!("criterion {k}: fail ({what}) panicked [{took:.1?}]");
                failed.push(k);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
