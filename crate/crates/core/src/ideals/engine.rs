//! Buchberger's algorithm on primitive integer polynomials.
//!
//! Input generators enter the pair queue as pseudo-pairs keyed by their
//! leading monomial, so the normal strategy interleaves them with S-pairs by
//! degree. Pairs are pruned with the Gebauer-Moeller update, which subsumes
//! Buchberger's coprime and chain criteria.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::poly::{Monomial, MonomialOrder, MAX_VARS};

/// Integer polynomial, terms strictly descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

fn mask(m: &Monomial) -> u16 {
    let mut k = 0u16;
    for v in m.support() {
        k |= 1 << v;
    }
    k
}

impl IPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
}

/// `a * f - b * (q * g)`, dropping zero terms.
fn combine(ord: MonomialOrder, a: &BigInt, f: &[(Monomial, BigInt)], b: &BigInt, q: &Monomial, g: &[(Monomial, BigInt)]) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    let scale_f = |c: &BigInt| if a_one { c.clone() } else { a * c };
    while i < f.len() && j < g.len() {
        let gm = g[j].0.mul(q);
        match ord.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push((f[i].0, scale_f(&f[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = scale_f(&f[i].1) - b * &g[j].1;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(f[i..].iter().map(|(m, c)| (*m, scale_f(c))));
    out.extend(g[j..].iter().map(|(m, c)| (m.mul(q), -(b * c))));
    out
}

/// Basis snapshot used for reduction.
pub(crate) struct Reducers<'a> {
    pub polys: Vec<&'a IPoly>,
    masks: Vec<u16>,
}

impl<'a> Reducers<'a> {
    pub fn new(polys: Vec<&'a IPoly>) -> Self {
        let masks = polys.iter().map(|p| mask(p.lm())).collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &Monomial) -> Option<&'a IPoly> {
        let mm = mask(m);
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, k)| *k & !mm == 0 && p.lm().divides(m))
            .map(|(p, _)| *p)
    }
}

const BIG_BITS: u64 = 512;

/// Full reduction (leading and tail terms); result is primitive.
pub(crate) fn reduce(ord: MonomialOrder, f: &IPoly, by: &Reducers) -> IPoly {
    let mut out = reduce_core(ord, f, by).0;
    out.make_primitive();
    out
}

/// Full reduction returning `(r, k)` with `k * f - r` in the ideal of `by`,
/// so `r / k` is the remainder of `f` under rational division.
pub(crate) fn reduce_core(ord: MonomialOrder, f: &IPoly, by: &Reducers) -> (IPoly, BigRational) {
    let mut cur: Vec<(Monomial, BigInt)> = f.terms.clone();
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut scale = BigRational::one();
    let mut start = 0;
    while start < cur.len() {
        let (m, c) = &cur[start];
        match by.find(m) {
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
            Some(g) => {
                let q = g.lm().quotient_of(m);
                let gg = c.gcd(g.lc());
                let a = g.lc() / &gg;
                let b = c / &gg;
                let next = combine(ord, &a, &cur[start + 1..], &b, &q, &g.terms[1..]);
                if !a.is_one() {
                    for (_, r) in rem.iter_mut() {
                        *r = &*r * &a;
                    }
                    scale *= BigRational::from_integer(a);
                }
                cur = next;
                start = 0;
                if cur.first().is_some_and(|(_, c)| c.bits() > BIG_BITS) {
                    let g = shrink(&mut rem, &mut cur);
                    scale /= BigRational::from_integer(g);
                }
            }
        }
    }
    (IPoly { terms: rem }, scale)
}

/// Divides both parts by their common content.
fn shrink(rem: &mut [(Monomial, BigInt)], cur: &mut [(Monomial, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in rem.iter().chain(cur.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return g;
        }
    }
    if g > BigInt::one() {
        for (_, c) in rem.iter_mut().chain(cur.iter_mut()) {
            *c = &*c / &g;
        }
    }
    g
}

pub(crate) fn spoly(ord: MonomialOrder, f: &IPoly, g: &IPoly) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let qf = f.lm().quotient_of(&l);
    let qg = g.lm().quotient_of(&l);
    let gg = f.lc().gcd(g.lc());
    let a = g.lc() / &gg;
    let b = f.lc() / &gg;
    // a*qf*f - b*qg*g; leading terms cancel.
    let fq: Vec<(Monomial, BigInt)> = f.terms[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
    let mut p = IPoly { terms: combine(ord, &a, &fq, &b, &qg, &g.terms[1..]) };
    p.make_primitive();
    p
}

/// Queue entry ordering: lcm degree, lcm under the order, then sequence.
#[derive(Clone, Copy, Debug)]
struct Key {
    lcm: Monomial,
    seq: u64,
    ord: MonomialOrder,
}

impl PartialEq for Key {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.ord.cmp(&self.lcm, &o.lcm).then(self.seq.cmp(&o.seq))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Input(usize),
    Pair(usize, usize),
}

/// How equal-priority queue entries are ordered; the reduced basis does not
/// depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairTieBreak {
    #[default]
    Oldest,
    Newest,
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub tie_break: PairTieBreak,
    pub deadline: Option<Instant>,
    /// Return `{1}` as soon as a nonzero constant enters the basis.
    pub stop_on_unit: bool,
}

/// Counters from one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub generators: usize,
    pub pairs_created: usize,
    pub pairs_pruned: usize,
    pub coprime_skipped: usize,
    pub reductions: usize,
    pub zero_reductions: usize,
    pub basis_peak: usize,
}

pub(crate) struct Outcome {
    pub basis: Vec<IPoly>,
    pub stats: GbStats,
}

pub(crate) struct TimedOut;

pub(crate) fn groebner(ord: MonomialOrder, inputs: Vec<IPoly>, opts: &GbOptions) -> Result<Outcome, TimedOut> {
    let mut stats = GbStats { generators: inputs.len(), ..Default::default() };
    let mut polys: Vec<IPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut queue: BTreeMap<Key, Item> = BTreeMap::new();
    let mut seq: u64 = 0;
    let mut next_seq = |tie: PairTieBreak| {
        seq += 1;
        match tie {
            PairTieBreak::Oldest => seq,
            PairTieBreak::Newest => u64::MAX - seq,
        }
    };
    for (k, p) in inputs.iter().enumerate() {
        if !p.is_zero() {
            queue.insert(Key { lcm: *p.lm(), seq: next_seq(opts.tie_break), ord }, Item::Input(k));
        }
    }
    while let Some((first, _)) = queue.first_key_value() {
        if opts.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(TimedOut);
        }
        let deg = first.lcm.degree();
        let mut batch = Vec::new();
        while let Some(e) = queue.first_entry() {
            if e.key().lcm.degree() != deg {
                break;
            }
            batch.push(e.remove());
        }
        let reduced: Vec<IPoly> = {
            let snapshot = Reducers::new(
                polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect(),
            );
            batch
                .par_iter()
                .map(|item| {
                    let raw = match *item {
                        Item::Input(k) => inputs[k].clone(),
                        Item::Pair(i, j) => spoly(ord, &polys[i], &polys[j]),
                    };
                    if raw.is_zero() {
                        raw
                    } else {
                        reduce(ord, &raw, &snapshot)
                    }
                })
                .collect()
        };
        stats.reductions += reduced.len();
        for h in reduced {
            if h.is_zero() {
                stats.zero_reductions += 1;
                continue;
            }
            // Elements added earlier in this batch may reduce it further.
            let h = {
                let rs = Reducers::new(polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect());
                reduce(ord, &h, &rs)
            };
            if h.is_zero() {
                stats.zero_reductions += 1;
                continue;
            }
            if h.lm().is_one() && opts.stop_on_unit {
                return Ok(Outcome { basis: vec![h], stats });
            }
            let hi = polys.len();
            let hm = *h.lm();
            polys.push(h);
            active.push(true);
            update(ord, &polys, &mut active, hi, &hm, &mut queue, &mut stats, || next_seq(opts.tie_break));
            stats.basis_peak = stats.basis_peak.max(active.iter().filter(|a| **a).count());
        }
    }
    let basis = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    Ok(Outcome { basis: interreduce(ord, basis), stats })
}

/// Gebauer-Moeller update for a new element `h`.
#[allow(clippy::too_many_arguments)]
fn update(
    ord: MonomialOrder,
    polys: &[IPoly],
    active: &mut [bool],
    hi: usize,
    hm: &Monomial,
    queue: &mut BTreeMap<Key, Item>,
    stats: &mut GbStats,
    mut seq: impl FnMut() -> u64,
) {
    let olds: Vec<usize> = (0..hi).filter(|&g| active[g]).collect();
    let lcms: Vec<Monomial> = olds.iter().map(|&g| hm.lcm(polys[g].lm())).collect();
    let coprime: Vec<bool> = olds.iter().map(|&g| hm.is_coprime(polys[g].lm())).collect();
    stats.pairs_created += olds.len();
    // Drop (h,g) when another new pair's lcm properly divides its lcm; among
    // equal lcms keep the first.
    let n = olds.len();
    let mut keep = vec![true; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && lcms[b].divides(&lcms[a]) && (lcms[b] != lcms[a] || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    // Among equal lcms the coprime criterion applies to the whole class.
    let mut class_coprime: BTreeMap<Vec<u16>, bool> = BTreeMap::new();
    for a in 0..n {
        let k = lcms[a].exponents(MAX_VARS).to_vec();
        let e = class_coprime.entry(k).or_insert(false);
        *e |= coprime[a];
    }
    let mut new_pairs = Vec::new();
    for a in 0..n {
        if !keep[a] {
            stats.pairs_pruned += 1;
            continue;
        }
        if class_coprime[&lcms[a].exponents(MAX_VARS).to_vec()] {
            stats.coprime_skipped += 1;
            continue;
        }
        new_pairs.push((olds[a], lcms[a]));
    }
    // Old pairs (i,j) whose lcm is divisible by lm(h) properly on both sides.
    let doomed: Vec<Key> = queue
        .iter()
        .filter_map(|(k, item)| match *item {
            Item::Pair(i, j) => {
                let l = k.lcm;
                (hm.divides(&l) && hm.lcm(polys[i].lm()) != l && hm.lcm(polys[j].lm()) != l).then_some(*k)
            }
            Item::Input(_) => None,
        })
        .collect();
    stats.pairs_pruned += doomed.len();
    for k in doomed {
        queue.remove(&k);
    }
    for (g, l) in new_pairs {
        queue.insert(Key { lcm: l, seq: seq(), ord }, Item::Pair(g, hi));
    }
    for g in 0..hi {
        if active[g] && hm.divides(polys[g].lm()) {
            active[g] = false;
        }
    }
}

/// Minimal basis to reduced basis: drop redundant leaders, tail-reduce, and
/// sort ascending by leading monomial.
pub(crate) fn interreduce(ord: MonomialOrder, mut basis: Vec<IPoly>) -> Vec<IPoly> {
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<IPoly> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.retain(|q| !p.lm().divides(q.lm()));
            minimal.push(p);
        }
    }
    let out: Vec<IPoly> = (0..minimal.len())
        .into_par_iter()
        .map(|i| {
            let others = Reducers::new(minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect());
            let head = IPoly { terms: vec![minimal[i].terms[0].clone()] };
            let tail = IPoly { terms: minimal[i].terms[1..].to_vec() };
            let lc = minimal[i].lc().clone();
            // Reduce only the tail, then restore the leading term with matching scale.
            let (t, k) = reduce_core(ord, &tail, &others);
            // lc * k * lm + r is a multiple of the reduced element; clear k's denominator.
            let k_num = k.numer().clone();
            let k_den = k.denom().clone();
            let mut terms = vec![(head.terms[0].0, &lc * &k_num)];
            terms.extend(t.terms.into_iter().map(|(m, c)| (m, c * &k_den)));
            let mut p = IPoly { terms };
            p.make_primitive();
            p
        })
        .collect();
    out
}
