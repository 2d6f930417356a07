//! Rewriting braid words into normal form with the identities of the
//! algebra, plus memoized reduction at every level.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use serde::Serialize;

use crate::braid::{free_reduce_letters, BraidWord, Letter};
use crate::enumerate::SVec;
use crate::error::{Error, Result};
use crate::ring::LaurentCoeff;
use crate::scalar::Exact;
use crate::tower::{basis_words, ActionTable, Algebra, AlgebraElement, BasisCatalog, Element};

/// `Σ k_j w_j = 0`, written for the generator pair `(s_1, s_2)`.
pub type Relation = Vec<(LaurentCoeff, Vec<Letter>)>;

#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub id: &'static str,
    pub anchor: &'static str,
    pub relation: Relation,
    /// Commutation rules act on distant pairs instead of adjacent ones.
    pub distant: bool,
}

fn lc(terms: &[(i64, u32, u32, i32)]) -> LaurentCoeff {
    terms
        .iter()
        .fold(LaurentCoeff::zero(), |acc, &(k, ea, eb, ec)| {
            &acc + &LaurentCoeff::monomial(ea as i32, eb as i32, ec, k)
                .expect("nonnegative exponents")
        })
}

fn one() -> LaurentCoeff {
    LaurentCoeff::one()
}

fn neg_one() -> LaurentCoeff {
    LaurentCoeff::from_int(-1)
}

/// `lhs - Σ rhs = 0`
fn equation(lhs: &[Letter], rhs: Vec<(LaurentCoeff, &[Letter])>) -> Relation {
    let mut rel = vec![(one(), lhs.to_vec())];
    rel.extend(rhs.into_iter().map(|(k, w)| (-k, w.to_vec())));
    rel
}

fn rule(id: &'static str, anchor: &'static str, relation: Relation) -> RewriteRule {
    RewriteRule {
        id,
        anchor,
        relation,
        distant: false,
    }
}

/// Lower-order part shared by the first alternating identities.
fn alternating_tail() -> Vec<(LaurentCoeff, &'static [Letter])> {
    vec![
        (lc(&[(1, 1, 0, -1)]), &[1, 2]),
        (lc(&[(-1, 1, 0, -1)]), &[2, 1]),
        (lc(&[(-1, 1, 1, -1)]), &[1, -2]),
        (lc(&[(1, 1, 1, -1)]), &[-2, 1]),
        (lc(&[(1, 0, 1, 0)]), &[-2, -1]),
        (lc(&[(-1, 0, 1, 0)]), &[-1, -2]),
    ]
}

/// Alternating four-letter words as `s_2^-1 s_1 s_2^-1 s_1` plus lower terms.
/// `perturb` multiplies the `a/c s_1 s_2` coefficient of line 0.
pub fn alternating_identity(line: usize, perturb: i64) -> Relation {
    let a = || lc(&[(1, 1, 0, 0)]);
    let ab_c = |k| lc(&[(k, 1, 1, -1)]);
    let b_c = |k| lc(&[(k, 0, 1, -1)]);
    match line {
        0 => {
            let mut rhs: Vec<(LaurentCoeff, &[Letter])> = vec![(one(), &[-2, 1, -2, 1])];
            let mut tail = alternating_tail();
            tail[0].0 = lc(&[(perturb, 1, 0, -1)]);
            rhs.extend(tail);
            equation(&[1, -2, 1, -2], rhs)
        }
        1 => equation(
            &[2, -1, 2, -1],
            vec![
                (one(), &[-2, 1, -2, 1]),
                (a(), &[-1, 2, -1]),
                (-a(), &[-2, 1, -2]),
                (ab_c(-1), &[1, -2]),
                (ab_c(1), &[-1, 2]),
                (b_c(1), &[1, -2, 1]),
                (b_c(-1), &[2, -1, 2]),
            ],
        ),
        _ => equation(
            &[-1, 2, -1, 2],
            vec![
                (one(), &[-2, 1, -2, 1]),
                (lc(&[(1, 1, 0, -1)]), &[1, 2]),
                (-a(), &[-2, 1, -2]),
                (lc(&[(-1, 1, 0, -1)]), &[2, 1]),
                (a(), &[-1, 2, -1]),
                (ab_c(-1), &[1, -2]),
                (b_c(1), &[1, -2, 1]),
                (ab_c(1), &[2, -1]),
                (b_c(-1), &[2, -1, 2]),
                (lc(&[(1, 0, 1, 0)]), &[-2, -1]),
                (lc(&[(-1, 0, 1, 0)]), &[-1, -2]),
            ],
        ),
    }
}

/// `(s_2^-1 s_1)^3` in shorter words.
pub fn six_letter_identity() -> Relation {
    equation(
        &[-2, 1, -2, 1, -2, 1],
        vec![
            (lc(&[(-1, 1, 0, -1), (-1, 2, 1, -2)]), &[1]),
            (lc(&[(1, 1, 0, -1)]), &[1, 2]),
            (lc(&[(1, 1, 0, -1)]), &[-1, 2, 1]),
            (lc(&[(-1, 1, 1, -1)]), &[-2, 1, -2]),
            (lc(&[(-1, 1, 1, -1)]), &[-1]),
            (lc(&[(1, 1, 1, -2)]), &[2, 1]),
            (one(), &[-1, 2, -1]),
            (lc(&[(-1, 0, 1, -1)]), &[-2, 1, -2, 1]),
            (lc(&[(-1, 1, 2, -2)]), &[-2, 1]),
            (lc(&[(1, 0, 1, -1)]), &[-1, 2]),
            (lc(&[(-1, 1, 0, -1)]), &[1, -2, 1]),
            (lc(&[(1, 0, 1, -1)]), &[2, -1]),
            (lc(&[(-1, 0, 2, -1)]), &[-2, -1]),
            (lc(&[(-1, 0, 1, 0)]), &[-1, -2, -1]),
        ],
    )
}

/// Differences of the two alternating four-letter words of each shape.
pub fn alternating_pair(line: usize) -> Relation {
    if line == 0 {
        let mut rel = equation(&[1, -2, 1, -2], alternating_tail());
        rel.push((neg_one(), vec![-2, 1, -2, 1]));
        return rel;
    }
    let mut rel = equation(
        &[2, -1, 2, -1],
        vec![
            (lc(&[(1, 1, 1, -1)]), &[-1, 2]),
            (lc(&[(-1, 1, 0, -1)]), &[1, 2]),
            (lc(&[(1, 1, 0, -1)]), &[2, 1]),
            (lc(&[(-1, 1, 1, -1)]), &[2, -1]),
            (lc(&[(-1, 0, 1, 0)]), &[-2, -1]),
            (lc(&[(1, 0, 1, 0)]), &[-1, -2]),
        ],
    );
    rel.push((neg_one(), vec![-1, 2, -1, 2]));
    rel
}

/// Conjugating `s_1^±1` by `s_2^±1`.
pub fn conjugation_identity(line: usize) -> Relation {
    let (lhs, rhs): (&[Letter], &[Letter]) = match line {
        0 => (&[2, 1, -2], &[-1, 2, 1]),
        1 => (&[2, -1, -2], &[-1, -2, 1]),
        2 => (&[-2, 1, 2], &[1, 2, -1]),
        _ => (&[-2, -1, 2], &[1, -2, -1]),
    };
    equation(lhs, vec![(one(), rhs)])
}

/// `s_2 s_1^-1 s_2 s_1` in shorter words.
pub fn four_letter_identity() -> Relation {
    equation(
        &[2, -1, 2, 1],
        vec![
            (LaurentCoeff::a(), &[2, 1, -2]),
            (LaurentCoeff::b(), &[1, -2]),
            (LaurentCoeff::c(), &[-2, 1, -2]),
        ],
    )
}

/// The full rule catalog, in priority order.
pub fn rule_set() -> Vec<RewriteRule> {
    let (a, b, c) = (LaurentCoeff::a(), LaurentCoeff::b(), LaurentCoeff::c());
    let ci = LaurentCoeff::c_inv();
    let mut rules = vec![
        rule(
            "R-power3",
            "cubic relation",
            equation(
                &[1, 1, 1],
                vec![(a.clone(), &[1, 1]), (b.clone(), &[1]), (c.clone(), &[])],
            ),
        ),
        rule(
            "R-power2",
            "cubic relation",
            equation(
                &[1, 1],
                vec![(a.clone(), &[1]), (b.clone(), &[]), (c.clone(), &[-1])],
            ),
        ),
        rule(
            "R-power-2",
            "Lemma 2.3",
            equation(
                &[-1, -1],
                vec![(ci.clone(), &[1]), (-(&a * &ci), &[]), (-(&b * &ci), &[-1])],
            ),
        ),
    ];
    for (id, l, r) in [
        ("R-comm++", [1, 3], [3, 1]),
        ("R-comm+-", [1, -3], [-3, 1]),
        ("R-comm-+", [-1, 3], [3, -1]),
        ("R-comm--", [-1, -3], [-3, -1]),
    ] {
        rules.push(RewriteRule {
            id,
            anchor: "braid relations",
            relation: equation(&l, vec![(one(), &r)]),
            distant: true,
        });
    }
    for (k, id) in ["R-conj1", "R-conj2", "R-conj3", "R-conj4"]
        .into_iter()
        .enumerate()
    {
        rules.push(rule(id, "Lemma 2.1", conjugation_identity(k)));
    }
    rules.push(rule(
        "R-braid",
        "braid relations",
        equation(&[1, 2, 1], vec![(one(), &[2, 1, 2])]),
    ));
    rules.push(rule(
        "R-braid-inv",
        "braid relations",
        equation(&[-1, -2, -1], vec![(one(), &[-2, -1, -2])]),
    ));
    rules.push(rule(
        "R-L24",
        "Lemma 2.4",
        equation(
            &[-2, 1, -2],
            vec![
                (ci.clone(), &[2, -1, 2, 1]),
                (-(&a * &ci), &[-1, 2, 1]),
                (-(&b * &ci), &[1, -2]),
            ],
        ),
    ));
    for (k, id) in ["R-L36a", "R-L36b", "R-L36c"].into_iter().enumerate() {
        rules.push(rule(id, "Lemma 3.6", alternating_identity(k, 1)));
    }
    rules.push(rule("R-L37a", "Lemma 3.7", alternating_pair(0)));
    rules.push(rule("R-L37b", "Lemma 3.7", alternating_pair(1)));
    rules
}

/// Order used by the strategy: length, then letters by `(index, sign)` with
/// positive before negative.
pub fn term_order(x: &[Letter], y: &[Letter]) -> Ordering {
    let key = |l: &Letter| (l.unsigned_abs(), l < &0);
    x.len()
        .cmp(&y.len())
        .then_with(|| x.iter().map(key).cmp(y.iter().map(key)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub position: usize,
    pub terms: usize,
}

/// Rule applications in the order performed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

/// One way to rewrite a pattern: `pattern → Σ k · word`.
#[derive(Clone, Debug)]
struct Move {
    rule: usize,
    pattern: Vec<Letter>,
    replacement: Vec<(LaurentCoeff, Vec<Letter>)>,
    /// Priority pass only uses moves that shorten or keep length.
    shrinking: bool,
}

fn shift_letters(w: &[Letter], by: Letter) -> Vec<Letter> {
    w.iter()
        .map(|&l| if l > 0 { l + by } else { l - by })
        .collect()
}

fn moves_for(rules: &[RewriteRule], n: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for (ri, r) in rules.iter().enumerate() {
        let mut instances = Vec::new();
        if r.distant {
            for i in 1..n as Letter {
                for j in i + 2..n as Letter {
                    let map = |w: &[Letter]| -> Vec<Letter> {
                        w.iter()
                            .map(|&l| l.signum() * if l.abs() == 1 { i } else { j })
                            .collect()
                    };
                    instances.push(
                        r.relation
                            .iter()
                            .map(|(k, w)| (k.clone(), map(w)))
                            .collect::<Relation>(),
                    );
                }
            }
        } else {
            let top = r
                .relation
                .iter()
                .flat_map(|(_, w)| w.iter())
                .map(|l| l.abs())
                .max()
                .unwrap_or(1);
            for i in 0..=(n as Letter - 1 - top) {
                instances.push(
                    r.relation
                        .iter()
                        .map(|(k, w)| (k.clone(), shift_letters(w, i)))
                        .collect(),
                );
            }
        }
        for rel in instances {
            for (h, (kh, wh)) in rel.iter().enumerate() {
                if wh.is_empty() {
                    continue;
                }
                let Some(inv) = kh.unit_inverse() else {
                    continue;
                };
                let f = -&inv;
                let replacement: Vec<(LaurentCoeff, Vec<Letter>)> = rel
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != h)
                    .map(|(_, (k, w))| (&f * k, w.clone()))
                    .collect();
                let shrinking = replacement
                    .iter()
                    .all(|(_, w)| term_order(w, wh) == Ordering::Less);
                out.push(Move {
                    rule: ri,
                    pattern: wh.clone(),
                    replacement,
                    shrinking,
                });
            }
        }
    }
    out
}

type Combo = BTreeMap<Vec<Letter>, LaurentCoeff>;

fn add_term(c: &mut Combo, w: Vec<Letter>, k: LaurentCoeff) {
    let w = free_reduce_letters(&w);
    let e = c.entry(w).or_insert_with(LaurentCoeff::zero);
    *e += &k;
    if e.is_zero() {
        let key: Vec<Letter> = c
            .iter()
            .find(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .unwrap();
        c.remove(&key);
    }
}

fn apply_move(word: &[Letter], pos: usize, m: &Move, k: &LaurentCoeff, into: &mut Combo) {
    let (pre, post) = (&word[..pos], &word[pos + m.pattern.len()..]);
    for (kr, wr) in &m.replacement {
        let mut w = pre.to_vec();
        w.extend_from_slice(wr);
        w.extend_from_slice(post);
        add_term(into, w, k * kr);
    }
}

fn occurrences<'a>(word: &'a [Letter], pat: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
    (0..(word.len() + 1).saturating_sub(pat.len())).filter(move |&i| &word[i..i + pat.len()] == pat)
}

/// The reduction engine for one level.
pub struct Rewriter {
    n: usize,
    rules: Vec<RewriteRule>,
    moves: Vec<Move>,
    pub depth_limit: usize,
    /// Most states a single search may visit.
    pub state_limit: usize,
}

type Cache = RwLock<HashMap<(usize, Vec<Letter>), Arc<(AlgebraElement, ReductionTrace)>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Number of memoized reductions.
pub fn cache_len() -> usize {
    cache().read().len()
}

pub fn cache_lookup(n: usize, w: &[Letter]) -> Option<AlgebraElement> {
    cache().read().get(&(n, w.to_vec())).map(|e| e.0.clone())
}

pub fn cache_insert(n: usize, w: &[Letter], x: AlgebraElement) {
    cache()
        .write()
        .insert((n, w.to_vec()), Arc::new((x, ReductionTrace::default())));
}

/// Every cached entry, sorted for stable output.
pub fn cache_snapshot() -> Vec<(usize, Vec<Letter>, AlgebraElement)> {
    let mut v: Vec<_> = cache()
        .read()
        .iter()
        .map(|((n, w), e)| (*n, w.clone(), e.0.clone()))
        .collect();
    v.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    v
}

impl Rewriter {
    pub fn new(n: usize) -> Self {
        let rules = rule_set();
        let moves = moves_for(&rules, n);
        Rewriter {
            n,
            rules,
            moves,
            depth_limit: 32,
            state_limit: 200_000,
        }
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    fn is_basis(&self, w: &[Letter]) -> bool {
        basis_words(self.n)
            .map(|c| c.index_of(w).is_some())
            .unwrap_or(false)
    }

    /// Normal form of a word by rules alone.
    pub fn reduce(&self, w: &BraidWord) -> Result<(AlgebraElement, ReductionTrace)> {
        if w.n != self.n {
            return Err(Error::StrandMismatch(w.n, self.n));
        }
        let letters = free_reduce_letters(&w.letters);
        let mut trace = ReductionTrace::default();
        let mut stack = Vec::new();
        let x = self.reduce_letters(&letters, &mut trace, &mut stack)?;
        Ok((x, trace))
    }

    fn reduce_letters(
        &self,
        w: &[Letter],
        trace: &mut ReductionTrace,
        stack: &mut Vec<Vec<Letter>>,
    ) -> Result<AlgebraElement> {
        let cat = basis_words(self.n)?;
        if let Some(i) = cat.index_of(w) {
            return Ok(Element {
                n: self.n,
                terms: vec![(i as u32, LaurentCoeff::one())],
            });
        }
        if let Some(hit) = cache().read().get(&(self.n, w.to_vec())) {
            trace.steps.extend(hit.1.steps.iter().cloned());
            return Ok(hit.0.clone());
        }
        let irreducible = |steps: usize| Error::IrreducibleWord {
            word: BraidWord {
                n: self.n,
                letters: w.to_vec(),
            },
            steps,
        };
        if stack.iter().any(|s| s == w) || stack.len() > 4 * self.depth_limit {
            return Err(irreducible(trace.steps.len()));
        }
        let mut local = ReductionTrace::default();
        let combo = match self.priority_step(w, &mut local) {
            Some(c) => c,
            None => self
                .search(w, &mut local)
                .ok_or_else(|| irreducible(trace.steps.len() + local.steps.len()))?,
        };
        stack.push(w.to_vec());
        let mut total: Vec<(u32, LaurentCoeff)> = Vec::new();
        for (word, k) in &combo {
            let part = self.reduce_letters(word, &mut local, stack)?;
            for (i, x) in part.terms {
                total.push((i, &x * k));
            }
        }
        stack.pop();
        let x = Element {
            n: self.n,
            terms: crate::enumerate::combine(&Exact, total),
        };
        trace.steps.extend(local.steps.iter().cloned());
        cache()
            .write()
            .insert((self.n, w.to_vec()), Arc::new((x.clone(), local)));
        Ok(x)
    }

    /// First shrinking move in priority order.
    fn priority_step(&self, w: &[Letter], trace: &mut ReductionTrace) -> Option<Combo> {
        for m in self.moves.iter().filter(|m| m.shrinking) {
            if let Some(pos) = occurrences(w, &m.pattern).next() {
                let mut c = Combo::new();
                apply_move(w, pos, m, &LaurentCoeff::one(), &mut c);
                trace.steps.push(TraceStep {
                    rule: self.rules[m.rule].id.into(),
                    position: pos,
                    terms: c.len(),
                });
                return Some(c);
            }
        }
        None
    }

    fn done(&self, target: &[Letter], c: &Combo) -> bool {
        c.keys()
            .all(|w| self.is_basis(w) || term_order(w, target) == Ordering::Less)
    }

    fn badness(&self, target: &[Letter], c: &Combo) -> (usize, usize) {
        let bad: Vec<&Vec<Letter>> = c
            .keys()
            .filter(|w| !(self.is_basis(w) || term_order(w, target) == Ordering::Less))
            .collect();
        (bad.iter().map(|w| w.len()).sum(), c.len())
    }

    /// Best-first search for a combination whose words are basis words or
    /// strictly smaller than `target`.
    fn search(&self, target: &[Letter], trace: &mut ReductionTrace) -> Option<Combo> {
        #[derive(PartialEq, Eq)]
        struct Node {
            score: (usize, usize),
            depth: usize,
            id: usize,
        }
        impl Ord for Node {
            fn cmp(&self, o: &Self) -> Ordering {
                o.score
                    .cmp(&self.score)
                    .then(o.depth.cmp(&self.depth))
                    .then(o.id.cmp(&self.id))
            }
        }
        impl PartialOrd for Node {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        let mut start = Combo::new();
        start.insert(target.to_vec(), LaurentCoeff::one());
        let mut states: Vec<(Combo, Option<(usize, TraceStep)>)> = vec![(start, None)];
        let mut seen: HashSet<Vec<(Vec<Letter>, LaurentCoeff)>> = HashSet::new();
        let mut heap = BinaryHeap::new();
        heap.push(Node {
            score: (target.len(), 1),
            depth: 0,
            id: 0,
        });
        while let Some(node) = heap.pop() {
            if states.len() > self.state_limit {
                break;
            }
            let state = states[node.id].0.clone();
            if node.depth >= self.depth_limit {
                continue;
            }
            let bad: Vec<(Vec<Letter>, LaurentCoeff)> = state
                .iter()
                .filter(|(w, _)| !(self.is_basis(w) || term_order(w, target) == Ordering::Less))
                .map(|(w, k)| (w.clone(), k.clone()))
                .collect();
            for (w, k) in &bad {
                for m in &self.moves {
                    for pos in occurrences(w, &m.pattern) {
                        let mut next = state.clone();
                        next.remove(w);
                        apply_move(w, pos, m, k, &mut next);
                        let key: Vec<(Vec<Letter>, LaurentCoeff)> =
                            next.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
                        if !seen.insert(key) {
                            continue;
                        }
                        let step = TraceStep {
                            rule: self.rules[m.rule].id.into(),
                            position: pos,
                            terms: next.len(),
                        };
                        let id = states.len();
                        let finished = self.done(target, &next);
                        let score = self.badness(target, &next);
                        states.push((next, Some((node.id, step))));
                        if finished {
                            let mut path = Vec::new();
                            let mut cur = id;
                            while let Some((parent, step)) = &states[cur].1 {
                                path.push(step.clone());
                                cur = *parent;
                            }
                            path.reverse();
                            trace.steps.extend(path);
                            return Some(states[id].0.clone());
                        }
                        heap.push(Node {
                            score,
                            depth: node.depth + 1,
                            id,
                        });
                    }
                }
            }
        }
        None
    }
}

impl Rewriter {
    /// Normal form of any word, folding one letter at a time.
    pub fn normal_form(&self, w: &BraidWord) -> Result<(AlgebraElement, ReductionTrace)> {
        if w.n != self.n {
            return Err(Error::StrandMismatch(w.n, self.n));
        }
        let cat = basis_words(self.n)?;
        let mut trace = ReductionTrace::default();
        let mut x: Vec<(u32, LaurentCoeff)> = vec![(0, LaurentCoeff::one())];
        for &g in &free_reduce_letters(&w.letters) {
            let mut raw = Vec::new();
            for (i, c) in &x {
                let mut letters = cat.word(*i as usize).letters.clone();
                letters.push(g);
                let (y, tr) = self.reduce(&BraidWord { n: self.n, letters })?;
                trace.steps.extend(tr.steps);
                raw.extend(y.terms.into_iter().map(|(j, d)| (j, &d * c)));
            }
            x = crate::enumerate::combine(&Exact, raw);
        }
        Ok((
            Element {
                n: self.n,
                terms: x,
            },
            trace,
        ))
    }

    /// `A_n` with the tables of `s_1 .. s_{n-1}` computed by the rules.
    pub fn algebra(&self) -> Result<Algebra<Exact>> {
        let cat = basis_words(self.n)?;
        let mut positive = Vec::new();
        for g in 1..self.n as Letter {
            let cols = self.letter_columns(&cat, g)?;
            positive.push(ActionTable {
                n: self.n,
                gen: g,
                cols,
            });
        }
        Algebra::from_tables(Exact, self.n, positive)
    }

    /// `basis_j · g` for every `j`, by the rules.
    pub fn letter_columns(&self, cat: &BasisCatalog, g: Letter) -> Result<Vec<SVec<LaurentCoeff>>> {
        cat.words
            .iter()
            .map(|w| {
                let mut letters = w.letters.clone();
                letters.push(g);
                Ok(self.reduce(&BraidWord { n: self.n, letters })?.0.terms)
            })
            .collect()
    }
}

/// The shared engine for level `n`.
pub fn rewriter(n: usize) -> Result<&'static Rewriter> {
    static ENGINES: [OnceLock<Rewriter>; 4] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    if !(2..=5).contains(&n) {
        return Err(Error::LevelOutOfRange(n));
    }
    Ok(ENGINES[n - 2].get_or_init(|| Rewriter::new(n)))
}
