//! Verification suites and their reports.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{special, BraidWord, Letter};
use crate::enumerate::{regular, Module, SVec};
use crate::error::{Error, Result};
use crate::exact::{exact_algebra, named_relators, relator_failure};
use crate::field::{cube_root_of_unity, Fp};
use crate::level5::{Level5, PointElement};
use crate::rewrite::{
    alternating_identity, alternating_pair, conjugation_identity, four_letter_identity,
    six_letter_identity, Relation,
};
use crate::ring::LaurentCoeff;
use crate::scalar::{Exact, Fractions, ModP, RatFunc, Scalars};
use crate::tower::{
    add, basis_words, gens_a, gens_b, gens_t5, include, scale, Algebra, AlgebraElement, Element,
    GenSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// `Fail` for negative controls.
    pub expect: Status,
    pub witness: Option<Value>,
    pub elapsed: Duration,
}

impl ClaimResult {
    pub fn ok(&self) -> bool {
        self.status == self.expect
    }

    fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({"id": self.id, "anchor": self.anchor, "status": self.status});
        if self.expect == Status::Fail {
            v["expect"] = json!(self.expect);
        }
        if let Some(w) = &self.witness {
            v["witness"] = w.clone();
        }
        if timings {
            v["ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub results: Vec<ClaimResult>,
    pub seed: u64,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            results: Vec::new(),
            seed,
        }
    }

    /// Every claim has its expected status.
    pub fn ok(&self) -> bool {
        self.results.iter().all(ClaimResult::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.results.iter().filter(|r| !r.ok())
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.results.extend(other.results);
    }

    pub fn get(&self, id: &str) -> Option<&ClaimResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let results: Vec<Value> = self.results.iter().map(|r| r.to_json(timings)).collect();
        json!({"suite": self.suite, "results": results, "seed": self.seed})
    }

    fn push(&mut self, r: ClaimResult) {
        self.results.push(r);
    }
}

/// Run a check: `Ok(None)` passes, `Ok(Some(w))` fails with witness `w`.
fn claim(
    id: impl Into<String>,
    anchor: &str,
    f: impl FnOnce() -> Result<Option<Value>>,
) -> ClaimResult {
    let t = Instant::now();
    let (status, witness) = match f() {
        Ok(None) => (Status::Pass, None),
        Ok(Some(w)) => (Status::Fail, Some(w)),
        Err(e) => (Status::Fail, Some(json!({"error": e.to_string()}))),
    };
    ClaimResult {
        id: id.into(),
        anchor: anchor.to_string(),
        status,
        expect: Status::Pass,
        witness,
        elapsed: t.elapsed(),
    }
}

fn control(mut r: ClaimResult) -> ClaimResult {
    r.expect = Status::Fail;
    r
}

fn exact_json(n: usize, terms: &SVec<LaurentCoeff>) -> Value {
    Element {
        n,
        terms: terms.clone(),
    }
    .to_json()
    .unwrap_or(Value::Null)
}

fn modp_json(terms: &SVec<u64>) -> Value {
    json!(terms.iter().map(|(i, x)| json!([i, x])).collect::<Vec<_>>())
}

fn point_label(s: &ModP) -> String {
    format!("p{}:{},{},{}", s.f.p(), s.a, s.b, s.c)
}

fn unequal<T: PartialEq>(x: &T, y: &T, show: impl Fn(&T) -> Value) -> Option<Value> {
    (x != y).then(|| json!({"lhs": show(x), "rhs": show(y)}))
}

/// Random words over `s_1^±1 .. s_{n-1}^±1`.
pub fn random_word(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize) -> BraidWord {
    let len = rng.gen_range(lo..=hi);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as Letter);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("letters in range")
}

/// Random sparse element with small monomial coefficients.
pub fn random_element(rng: &mut ChaCha8Rng, n: usize) -> Result<AlgebraElement> {
    let dim = basis_words(n)?.len();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=2i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let c = LaurentCoeff::monomial(
            rng.gen_range(0..=1),
            rng.gen_range(0..=1),
            rng.gen_range(-1..=1),
            k,
        )?;
        terms.push((rng.gen_range(0..dim) as u32, c));
    }
    terms.sort_by_key(|t| t.0);
    let s = Exact;
    let mut out: SVec<LaurentCoeff> = Vec::new();
    for (i, c) in terms {
        out = add(&s, &out, &vec![(i, c)]);
    }
    Ok(Element { n, terms: out })
}

// ---------------------------------------------------------------- identities

/// The regular module of `A_3` over the fraction field by vector enumeration
/// with the defining relations only.
pub fn oracle_a3() -> Result<Module<RatFunc>> {
    let m = regular(&Fractions, 3, 4000)?;
    if m.dim != 24 {
        return Err(Error::ClosureFailure(format!(
            "oracle has dimension {}",
            m.dim
        )));
    }
    Ok(m)
}

fn oracle_value(oracle: &Module<RatFunc>, rel: &Relation) -> SVec<RatFunc> {
    let s = Fractions;
    let mut raw = Vec::new();
    for (k, w) in rel {
        let img = oracle.apply_word(&s, &oracle.seeds[0], w);
        let k = RatFunc::from_ring(k.clone());
        raw.extend(img.into_iter().map(|(j, x)| (j, s.mul(&x, &k))));
    }
    crate::enumerate::combine(&s, raw)
}

fn table_value(alg: &Algebra<Exact>, rel: &Relation) -> Result<SVec<LaurentCoeff>> {
    let mut total = Vec::new();
    for (k, w) in rel {
        let x = alg.word_element(&BraidWord::new(3, w.clone())?)?;
        total = add(&Exact, &total, &scale(&Exact, &x.terms, k));
    }
    Ok(total)
}

fn identity_claim(id: &str, anchor: &str, rel: &Relation, oracle: &Module<RatFunc>) -> ClaimResult {
    claim(id, anchor, || {
        let alg = exact_algebra(3)?;
        let table = table_value(alg, rel)?;
        let orc = oracle_value(oracle, rel);
        if table.is_empty() && orc.is_empty() {
            return Ok(None);
        }
        let orc_json: Vec<Value> = orc
            .iter()
            .map(|(j, x)| json!({"vector": j, "num": x.num.to_json(), "den": x.den.to_json()}))
            .collect();
        Ok(Some(
            json!({"table": exact_json(3, &table), "oracle": orc_json}),
        ))
    })
}

fn perturb_last(mut rel: Relation) -> Relation {
    if let Some(last) = rel.last_mut() {
        last.0 = last.0.scale_int(2);
    }
    rel
}

/// Identities in the table model and the oracle, with negative controls.
pub fn check_identity_lemmas(seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("identities", seed);
    let oracle = match oracle_a3() {
        Ok(o) => o,
        Err(e) => {
            rep.push(claim("ORC.dim", "regular representation", || Err(e)));
            return rep;
        }
    };
    rep.push(claim("ORC.dim", "regular representation", || Ok(None)));
    rep.push(claim("ORC.tables", "regular representation", || {
        oracle_agrees(&oracle)
    }));
    rep.push(claim(
        "ORC.order3",
        "group specialization",
        oracle_order_three,
    ));
    let mut ids: Vec<(String, &str, Relation)> = Vec::new();
    for k in 0..4 {
        ids.push((
            format!("L2.1.{}", k + 1),
            "Lemma 2.1",
            conjugation_identity(k),
        ));
    }
    ids.push(("L2.4.1".into(), "Lemma 2.4", four_letter_identity()));
    ids.push(("L3.5.1".into(), "Lemma 3.5", six_letter_identity()));
    for k in 0..3 {
        ids.push((
            format!("L3.6.{}", k + 1),
            "Lemma 3.6",
            alternating_identity(k, 1),
        ));
    }
    for k in 0..2 {
        ids.push((format!("L3.7.{}", k + 1), "Lemma 3.7", alternating_pair(k)));
    }
    for (id, anchor, rel) in &ids {
        rep.push(identity_claim(id, anchor, rel, &oracle));
    }
    rep.push(control(identity_claim(
        "L3.6.1-perturbed",
        "Lemma 3.6",
        &alternating_identity(0, 2),
        &oracle,
    )));
    rep.push(control(identity_claim(
        "L2.4.1-perturbed",
        "Lemma 2.4",
        &perturb_last(four_letter_identity()),
        &oracle,
    )));
    rep.push(control(identity_claim(
        "L3.5.1-perturbed",
        "Lemma 3.5",
        &perturb_last(six_letter_identity()),
        &oracle,
    )));
    rep
}

/// `v·(b_j g) = Σ_k T_g[k, j] v·b_k` for every basis word and signed generator.
fn oracle_agrees(oracle: &Module<RatFunc>) -> Result<Option<Value>> {
    let alg = exact_algebra(3)?;
    let s = Fractions;
    let images: Vec<SVec<RatFunc>> = alg
        .catalog
        .words
        .iter()
        .map(|w| oracle.apply_word(&s, &oracle.seeds[0], &w.letters))
        .collect();
    for g in [1, -1, 2, -2] {
        for (j, w) in alg.catalog.words.iter().enumerate() {
            let mut word = w.letters.clone();
            word.push(g);
            let lhs = oracle.apply_word(&s, &oracle.seeds[0], &word);
            let mut raw = Vec::new();
            for (k, c) in &alg.table(g).cols[j] {
                let c = RatFunc::from_ring(c.clone());
                raw.extend(images[*k as usize].iter().map(|(i, x)| (*i, s.mul(x, &c))));
            }
            let rhs = crate::enumerate::combine(&s, raw);
            if lhs != rhs {
                return Ok(Some(json!({"column": j, "generator": g})));
            }
        }
    }
    Ok(None)
}

fn oracle_order_three() -> Result<Option<Value>> {
    let s = ModP::new(65521, 0, 0, 1)?;
    let m = regular(&s, 3, 4000)?;
    for l in 0..2 {
        for v in 0..m.dim {
            let e = vec![(v as u32, 1u64)];
            let cube = (0..3).fold(e.clone(), |acc, _| m.apply(&s, &acc, l));
            if cube != e {
                return Ok(Some(json!({"generator": l + 1, "vector": v})));
            }
        }
    }
    Ok(None)
}

// ----------------------------------------------------------------- relations

fn relation_claims<S: Scalars>(
    rep: &mut VerificationReport,
    alg: &Algebra<S>,
    suffix: &str,
    show: impl Fn(&SVec<S::Elem>) -> Value,
) {
    for (name, rel) in named_relators(&alg.s, alg.n) {
        rep.push(claim(
            format!("REL.n{}.{name}{suffix}", alg.n),
            "defining relations",
            || {
                Ok(relator_failure(alg, &rel)
                    .map(|(k, r)| json!({"column": k, "residue": show(&r)})))
            },
        ));
    }
}

/// Relations on the exact tables of `A_2 .. A_4`.
pub fn check_relations_exact(levels: &[usize], seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("relations", seed);
    for &n in levels {
        match exact_algebra(n) {
            Ok(alg) => relation_claims(&mut rep, alg, "", |r| exact_json(n, r)),
            Err(e) => rep.push(claim(
                format!("REL.n{n}.build"),
                "defining relations",
                || Err(e),
            )),
        }
    }
    rep
}

/// Relations on the tables specialized at points.
pub fn check_relations_spec(levels: &[usize], points: &[ModP], seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("relations", seed);
    for s in points {
        for &n in levels {
            match exact_algebra(n) {
                Ok(alg) => {
                    let alg = alg.specialize(*s);
                    relation_claims(&mut rep, &alg, &format!("@{}", point_label(s)), modp_json)
                }
                Err(e) => rep.push(claim(
                    format!("REL.n{n}.build"),
                    "defining relations",
                    || Err(e),
                )),
            }
        }
    }
    rep
}

/// Relations on every induced module of `A_5` at the point.
pub fn check_relations_a5(l5: &Level5, threads: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("relations", seed);
    let label = point_label(&l5.s);
    let rels = named_relators(&l5.s, 5);
    let one = |(name, rel): &(String, crate::enumerate::Relator<u64>)| {
        claim(
            format!("REL.n5.{name}@{label}"),
            "defining relations",
            || {
                for (b, ind) in l5.induced.iter().enumerate() {
                    if let Some(v) = ind.relator_failure(&l5.s, rel) {
                        return Ok(Some(json!({"module": b, "vector": v})));
                    }
                }
                Ok(None)
            },
        )
    };
    let chunk = rels.len().div_ceil(threads.max(1));
    let results: Vec<ClaimResult> = std::thread::scope(|sc| {
        let handles: Vec<_> = rels
            .chunks(chunk)
            .map(|c| sc.spawn(move || c.iter().map(one).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("relation worker"))
            .collect()
    });
    rep.results = results;
    rep
}

// ------------------------------------------------------- group specialization

pub const GROUP_ORDERS: [usize; 3] = [3, 24, 648];

/// Orbit of the identity under the generators at `a = b = 0, c = 1`.
pub fn group_orbit(n: usize, p: u64) -> Result<usize> {
    let alg = exact_algebra(n)?.specialize(ModP::new(p, 0, 0, 1)?);
    let start = alg.one().terms;
    let mut seen = std::collections::HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(x) = frontier.pop() {
        for g in 1..n as Letter {
            for sg in [g, -g] {
                let y = alg.mul_letter(&x, sg);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    Ok(seen.len())
}

pub fn check_group_specialization(p: u64, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("group", seed);
    for n in 2..=4 {
        rep.push(claim(
            format!("GRP.n{n}.order"),
            "group specialization",
            || {
                let alg = exact_algebra(n)?.specialize(ModP::new(p, 0, 0, 1)?);
                for g in 1..n as Letter {
                    for k in 0..alg.dim() {
                        let e = vec![(k as u32, 1u64)];
                        if alg.apply_word(&e, &[g, g, g]) != e {
                            return Ok(Some(json!({"generator": g, "column": k})));
                        }
                    }
                }
                Ok(None)
            },
        ));
        rep.push(claim(
            format!("GRP.n{n}.orbit"),
            "group specialization",
            || {
                let size = group_orbit(n, p)?;
                let want = GROUP_ORDERS[n - 2];
                Ok((size != want).then(|| json!({"orbit": size, "expected": want})))
            },
        ));
    }
    rep
}

// ------------------------------------------------ automorphisms and centrality

type PairCheck<'a> =
    dyn Fn(&Algebra<Exact>, &AlgebraElement, &AlgebraElement) -> Result<Option<Value>> + 'a;

fn elem_eq(n: usize, x: &AlgebraElement, y: &AlgebraElement) -> Option<Value> {
    unequal(&x.terms, &y.terms, |t| exact_json(n, t))
}

fn commute_exact(alg: &Algebra<Exact>, x: &BraidWord, y: &BraidWord) -> Result<Option<Value>> {
    let xy = alg.word_element(&x.concat(y)?)?;
    let yx = alg.word_element(&y.concat(x)?)?;
    Ok(elem_eq(alg.n, &xy, &yx))
}

/// `Φ`, `Ψ` on random elements of `A_2 .. A_4`, and the centrality facts at level 4.
pub fn check_center_and_automorphisms(samples: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("automorphisms", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=4 {
        let pairs: Vec<(AlgebraElement, AlgebraElement)> = (0..samples)
            .map(|_| Ok((random_element(&mut rng, n)?, random_element(&mut rng, n)?)))
            .collect::<Result<_>>()
            .unwrap_or_default();
        let each = |f: &PairCheck<'_>| {
            let alg = exact_algebra(n)?;
            for (x, y) in &pairs {
                if let Some(w) = f(alg, x, y)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        };
        rep.push(claim(
            format!("AUT.n{n}.phi-involutive"),
            "automorphism Phi",
            || each(&|alg, x, _| Ok(elem_eq(n, &alg.phi(&alg.phi(x)?)?, x))),
        ));
        rep.push(claim(
            format!("AUT.n{n}.phi-multiplicative"),
            "automorphism Phi",
            || {
                each(&|alg, x, y| {
                    let lhs = alg.phi(&alg.multiply(x, y)?)?;
                    let rhs = alg.multiply(&alg.phi(x)?, &alg.phi(y)?)?;
                    Ok(elem_eq(n, &lhs, &rhs))
                })
            },
        ));
        rep.push(claim(
            format!("AUT.n{n}.psi-involutive"),
            "anti-automorphism Psi",
            || each(&|alg, x, _| Ok(elem_eq(n, &alg.psi(&alg.psi(x)?)?, x))),
        ));
        rep.push(claim(
            format!("AUT.n{n}.psi-anti-multiplicative"),
            "anti-automorphism Psi",
            || {
                each(&|alg, x, y| {
                    let lhs = alg.psi(&alg.multiply(x, y)?)?;
                    let rhs = alg.multiply(&alg.psi(y)?, &alg.psi(x)?)?;
                    Ok(elem_eq(n, &lhs, &rhs))
                })
            },
        ));
    }
    rep.push(claim("AUT.n4.phi-delta", "Garside element", || {
        let alg = exact_algebra(4)?;
        let delta = special("delta_garside", 4)?;
        let lhs = alg.phi(&alg.word_element(&delta)?)?;
        let rhs = alg.word_element(&delta.inverse())?;
        Ok(elem_eq(4, &lhs, &rhs))
    }));
    for i in 1..=2 {
        rep.push(claim(format!("CEN.n4.w0-s{i}"), "w0 centralizer", || {
            commute_exact(
                exact_algebra(4)?,
                &special("w0", 4)?,
                &BraidWord::new(4, vec![i])?,
            )
        }));
    }
    rep
}

/// `δ` commutes with `s_1 .. s_3` and `c_5` is central, at one point.
pub fn check_center_a5(l5: &Level5, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("automorphisms", seed);
    let label = point_label(&l5.s);
    let commute = |x: &BraidWord, g: Letter| -> Result<Option<Value>> {
        let sg = BraidWord::new(5, vec![g])?;
        let lhs = l5.word(&x.concat(&sg)?)?;
        let rhs = l5.word(&sg.concat(x)?)?;
        Ok((lhs != rhs).then(|| json!({"generator": g})))
    };
    for i in 1..=3 {
        rep.push(claim(
            format!("CEN.n5.delta-s{i}@{label}"),
            "delta commutes with B_4",
            || commute(&special("delta5", 5)?, i),
        ));
    }
    rep.push(claim(
        format!("CEN.n5.delta-factor@{label}"),
        "delta = c_5 c_4^-1",
        || {
            let lhs = l5.word(&special("delta5", 5)?)?;
            let rhs =
                l5.word(&special("c_n", 5)?.concat(&special("c_n", 4)?.widen(5)?.inverse())?)?;
            Ok((lhs != rhs).then(|| json!({"equal": false})))
        },
    ));
    for i in 1..=4 {
        rep.push(claim(
            format!("CEN.n5.c5-s{i}@{label}"),
            "center of the braid group",
            || commute(&special("c_n", 5)?, i),
        ));
    }
    rep
}

// ---------------------------------------------------------------- homomorphism

/// `reduce(uv) = reduce(u)·reduce(v)` on random pairs at levels `2..=4`.
pub fn check_homomorphism(pairs: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("homomorphism", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x686f6d);
    for n in 2..=4 {
        let words: Vec<(BraidWord, BraidWord)> = (0..pairs)
            .map(|_| {
                (
                    random_word(&mut rng, n, 0, 6),
                    random_word(&mut rng, n, 0, 6),
                )
            })
            .collect();
        rep.push(claim(format!("HOM.n{n}"), "normal form", || {
            let alg = exact_algebra(n)?;
            for (u, v) in &words {
                let lhs = alg.word_element(&u.concat(v)?)?;
                let rhs = alg.multiply(&alg.word_element(u)?, &alg.word_element(v)?)?;
                if lhs != rhs {
                    return Ok(Some(json!({"u": u.to_text(), "v": v.to_text()})));
                }
            }
            Ok(None)
        }));
    }
    rep
}

/// The same at level 5 over the point, comparing in block form.
pub fn check_homomorphism_a5(l5: &Level5, pairs: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("homomorphism", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x686f6d35);
    let words: Vec<(BraidWord, BraidWord)> = (0..pairs)
        .map(|_| {
            (
                random_word(&mut rng, 5, 0, 8),
                random_word(&mut rng, 5, 0, 3),
            )
        })
        .collect();
    rep.push(claim(
        format!("HOM.n5@{}", point_label(&l5.s)),
        "normal form",
        || {
            for (u, v) in &words {
                let lhs = l5.word(&u.concat(v)?)?;
                let y = l5.to_basis(&l5.word(v)?);
                let rhs = l5.multiply(&l5.word(u)?, &y)?;
                if lhs != rhs {
                    return Ok(Some(json!({"u": u.to_text(), "v": v.to_text()})));
                }
            }
            Ok(None)
        },
    ));
    rep
}

// ----------------------------------------------------------------------- tower

/// Basis sizes, generator strata, and the inclusions `A_n → A_{n+1}`.
pub fn check_tower(seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("tower", seed);
    for (n, want) in [(2, 3), (3, 24), (4, 648), (5, 155520)] {
        rep.push(claim(format!("BAS.n{n}.size"), "basis cardinality", || {
            let len = basis_words(n)?.len();
            Ok((len != want).then(|| json!({"size": len, "expected": want})))
        }));
    }
    type Sizes = (&'static str, fn() -> Result<GenSet>, &'static [usize]);
    let sets: [Sizes; 3] = [
        ("A", gens_a, &[27]),
        ("B", gens_b, &[72]),
        ("T5", gens_t5, &[1, 54, 72, 54, 56, 3]),
    ];
    for (name, build, want) in sets {
        rep.push(claim(format!("BAS.gens.{name}"), "generating sets", || {
            let g = build()?;
            let counts = if want.len() == 1 {
                vec![g.len()]
            } else {
                g.stratum_counts()
            };
            Ok((counts != want).then(|| json!({"counts": counts, "expected": want})))
        }));
    }
    for n in 2..=4 {
        rep.push(claim(
            format!("TOW.n{n}.injective"),
            "tower inclusion",
            || {
                let cat = basis_words(n)?;
                let mut seen = std::collections::HashSet::new();
                for k in 0..cat.len() {
                    let x = include(&Element {
                        n,
                        terms: vec![(k as u32, 1i64)],
                    })?;
                    let [(j, 1)] = x.terms[..] else {
                        return Ok(Some(json!({"basis": k})));
                    };
                    if !seen.insert(j) {
                        return Ok(Some(json!({"basis": k, "image": j})));
                    }
                }
                Ok(None)
            },
        ));
    }
    for n in 2..=3 {
        rep.push(claim(format!("TOW.n{n}.reduce"), "tower inclusion", || {
            let (low, high) = (exact_algebra(n)?, exact_algebra(n + 1)?);
            for (k, w) in low.catalog.words.iter().enumerate() {
                let lhs = high.word_element(&w.widen(n + 1)?)?;
                let rhs = include(&low.basis_element(k))?;
                if let Some(wit) = elem_eq(n + 1, &lhs, &rhs) {
                    return Ok(Some(json!({"basis": k, "values": wit})));
                }
            }
            Ok(None)
        }));
    }
    rep
}

// ------------------------------------------------------------------ delta cubed

/// `reduce(δ)³` by multiplication against `reduce(δ³)` at the point.
pub fn check_delta_cubed(l5: &Level5, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("delta-cubed", seed);
    let label = point_label(&l5.s);
    let delta = special("delta5", 5);
    let mut cube: Option<PointElement> = None;
    rep.push(claim(format!("D3.support@{label}"), "delta", || {
        let d = l5.to_basis(&l5.word(delta.as_ref().map_err(clone_err)?)?);
        Ok(d.terms.is_empty().then(|| json!({"support": 0})))
    }));
    rep.push(claim(format!("D3.product@{label}"), "delta cubed", || {
        let d = delta.as_ref().map_err(clone_err)?;
        let x = l5.word(d)?;
        let y = l5.to_basis(&x);
        let lhs = l5.multiply(&l5.multiply(&x, &y)?, &y)?;
        let rhs = l5.word(&d.concat(d)?.concat(d)?)?;
        let bad = lhs != rhs;
        cube = Some(rhs);
        Ok(bad.then(|| json!({"equal": false})))
    }));
    for g in 1..=4 {
        rep.push(claim(
            format!("D3.central-s{g}@{label}"),
            "delta cubed",
            || {
                let d = delta.as_ref().map_err(clone_err)?;
                let d3 = d.concat(d)?.concat(d)?;
                let x = match &cube {
                    Some(x) => x.clone(),
                    None => l5.word(&d3)?,
                };
                let lhs = l5.mul_letter(&x, g);
                let rhs = l5.word(&BraidWord::new(5, vec![g])?.concat(&d3)?)?;
                Ok((lhs != rhs).then(|| json!({"generator": g})))
            },
        ));
    }
    rep
}

fn clone_err(e: &Error) -> Error {
    Error::Integrity(e.to_string())
}

// --------------------------------------------------------------------- points

/// A split semisimple point: roots `ζ^r w_r^6` over `F_p`, `p ≡ 1 mod 3`.
pub fn split_point(p: u64, w: [u64; 3]) -> Result<ModP> {
    let f = Fp::new(p);
    let z = cube_root_of_unity(&f)
        .ok_or_else(|| Error::BadPoint(format!("no cube root of unity mod {p}")))?;
    let u: Vec<u64> = (0..3)
        .map(|r| f.mul(f.pow(z, r as u64), f.pow(w[r], 6)))
        .collect();
    ModP::from_roots(p, [u[0], u[1], u[2]])
}

/// The level-5 points: `a = b = 0, c = 1` and two random split points.
pub fn a5_points(seed: u64) -> Result<Vec<ModP>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7035);
    let mut pts = vec![ModP::new(65521, 0, 0, 1)?];
    for p in [65521u64, 2_147_483_647] {
        let w = [
            rng.gen_range(2..p),
            rng.gen_range(2..p),
            rng.gen_range(2..p),
        ];
        pts.push(split_point(p, w)?);
    }
    Ok(pts)
}

/// `A_5` at a point, reusing the checkpoint directory.
pub fn level5_at(
    s: ModP,
    seed: u64,
    checkpoint: Option<&std::path::Path>,
    progress: impl FnMut(usize, usize),
) -> Result<Level5> {
    let a4 = exact_algebra(4)?.specialize(s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Level5::build(a4, &mut rng, checkpoint, progress)
}

/// Options for the level-5 suite.
#[derive(Clone, Debug)]
pub struct A5Options {
    pub seed: u64,
    pub checkpoint: Option<PathBuf>,
    pub delta_cubed: bool,
    pub hom_pairs: usize,
    pub points: Vec<ModP>,
    pub threads: usize,
}

/// Relations at every point; centrality, homomorphism and optionally `δ³` at the
/// second point, the first generic one, when there are several.
pub fn check_a5(opts: &A5Options, mut log: impl FnMut(&str)) -> VerificationReport {
    let mut rep = VerificationReport::new("a5", opts.seed);
    let main = usize::from(opts.points.len() > 1);
    for (k, s) in opts.points.iter().enumerate() {
        let label = point_label(s);
        log(&format!("building A_5 at {label}"));
        let l5 = match level5_at(*s, opts.seed, opts.checkpoint.as_deref(), |i, n| {
            log(&format!("  induced module {i}/{n}"))
        }) {
            Ok(l5) => l5,
            Err(e) => {
                rep.push(claim(
                    format!("REL.n5.build@{label}"),
                    "defining relations",
                    || Err(e),
                ));
                continue;
            }
        };
        log("  relations");
        rep.extend(check_relations_a5(&l5, opts.threads, opts.seed));
        if k == main {
            log("  centrality");
            rep.extend(check_center_a5(&l5, opts.seed));
            log("  homomorphism");
            rep.extend(check_homomorphism_a5(&l5, opts.hom_pairs, opts.seed));
            if opts.delta_cubed {
                log("  delta cubed");
                rep.extend(check_delta_cubed(&l5, opts.seed));
            }
        }
    }
    rep
}

/// Everything at levels `n ≤ 4`.
pub fn check_all(seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("all", seed);
    rep.extend(check_tower(seed));
    rep.extend(check_identity_lemmas(seed));
    rep.extend(check_relations_exact(&[2, 3, 4], seed));
    rep.extend(check_group_specialization(7, seed));
    rep.extend(check_center_and_automorphisms(200, seed));
    rep.extend(check_homomorphism(1000, seed));
    rep
}
