//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;

use crate::arith::Field;
use crate::poly::{MPoly, Monomial, MonomialOrder};

type Terms<F> = Vec<(Monomial, F)>;

/// Ideal given by generators in a fixed number of variables.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    generators: Vec<MPoly<F>>,
    order: MonomialOrder,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; all generators are brought to `order`.
    pub fn new(generators: impl IntoIterator<Item = MPoly<F>>, order: MonomialOrder) -> Self {
        let generators: Vec<MPoly<F>> =
            generators.into_iter().filter(|g| !g.is_zero()).map(|g| g.with_order(order)).collect();
        if let Some(g) = generators.first() {
            assert!(generators.iter().all(|h| h.nvars() == g.nvars()), "variable count mismatch");
        }
        Ideal { generators, order }
    }

    /// The Jacobian ideal `(∂f/∂x_i)` of `f`.
    pub fn jacobian(f: &MPoly<F>, order: MonomialOrder) -> Self {
        Ideal::new((0..f.nvars()).map(|i| f.partial(i)), order)
    }

    pub fn generators(&self) -> &[MPoly<F>] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Ideal with one more generator.
    pub fn with_generator(&self, g: MPoly<F>) -> Self {
        Ideal::new(self.generators.iter().cloned().chain(std::iter::once(g)), self.order)
    }
}

/// Order in which critical pairs are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Smallest lcm degree first, then smallest lcm in the monomial order.
    #[default]
    Normal,
    /// Pairs in creation order.
    Fifo,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GroebnerOptions {
    pub strategy: PairStrategy,
    /// Skip pairs whose lcm has degree above this bound. For homogeneous
    /// ideals the result is then a Gröbner basis in degrees up to the bound.
    pub degree_bound: Option<u32>,
}

/// Reduced Gröbner basis: monic, interreduced, sorted by increasing leading
/// monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    elements: Vec<MPoly<F>>,
    order: MonomialOrder,
    nvars: usize,
    degree_bound: Option<u32>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn elements(&self) -> &[MPoly<F>] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Degree bound the basis was truncated at, if any.
    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    pub fn contains(&self, p: &MPoly<F>) -> bool {
        normal_form(p, self).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial()).collect()
    }
}

/// `a * p - b * shift * g`, dropping the leading terms, which cancel.
fn cancel_leading<F: Field>(
    order: MonomialOrder,
    p: &[(Monomial, F)],
    a: &F,
    g: &[(Monomial, F)],
    b: &F,
    shift: &Monomial,
) -> Terms<F> {
    let scale_p = !a.is_one();
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 1;
    let mut j = 1;
    while i < p.len() || j < g.len() {
        let take = if i == p.len() {
            Ordering::Less
        } else if j == g.len() {
            Ordering::Greater
        } else {
            order.cmp(&p[i].0, &g[j].0.mul(shift))
        };
        match take {
            Ordering::Greater => {
                let (m, c) = &p[i];
                out.push((*m, if scale_p { c.mul_ref(a) } else { c.clone() }));
                i += 1;
            }
            Ordering::Less => {
                let (m, c) = &g[j];
                out.push((m.mul(shift), -c.mul_ref(b)));
                j += 1;
            }
            Ordering::Equal => {
                let (m, c) = &p[i];
                let lhs = if scale_p { c.mul_ref(a) } else { c.clone() };
                let s = lhs.sub_ref(&g[j].1.mul_ref(b));
                if !s.is_zero() {
                    out.push((*m, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn normalize_terms<F: Field>(reduced: &mut Terms<F>, rest: &mut Terms<F>) {
    let s = F::normalizer(reduced.iter().chain(rest.iter()).map(|(_, c)| c));
    if let Some(s) = s.filter(|s| !s.is_one()) {
        for (_, c) in reduced.iter_mut().chain(rest.iter_mut()) {
            *c = c.mul_ref(&s);
        }
    }
}

/// Full reduction of `p` by `reducers`. With `scaled` the result is only
/// defined up to a nonzero constant and is kept in normal form by
/// [`Field::normalizer`]; otherwise it is the true remainder.
fn reduce<F: Field>(p: &MPoly<F>, reducers: &[&MPoly<F>], scaled: bool) -> MPoly<F> {
    let order = p.order();
    let mut rest: Terms<F> = p.terms().to_vec();
    let mut reduced: Terms<F> = Vec::new();
    let mut dirty = 0usize;
    while let Some((m, c)) = rest.first().cloned() {
        let hit = reducers
            .iter()
            .find_map(|g| g.leading_monomial().and_then(|lm| lm.div(&m)).map(|s| (*g, s)));
        match hit {
            Some((g, shift)) => {
                let lead = g.leading_coeff().expect("reducers are nonzero");
                let (a, b) = if scaled { F::cofactors(lead, &c) } else { (lead.one_like(), c.div_ref(lead)) };
                if !a.is_one() {
                    for (_, r) in reduced.iter_mut() {
                        *r = r.mul_ref(&a);
                    }
                    dirty += 1;
                }
                rest = cancel_leading(order, &rest, &a, g.terms(), &b, &shift);
                if dirty >= 8 {
                    normalize_terms(&mut reduced, &mut rest);
                    dirty = 0;
                }
            }
            None => {
                // rest is consumed from the front; keep it cheap by draining
                // all irreducible leading terms at once
                let mut k = 0;
                while k < rest.len() {
                    let mk = rest[k].0;
                    if reducers.iter().any(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&mk))) {
                        break;
                    }
                    k += 1;
                }
                reduced.extend(rest.drain(..k));
            }
        }
    }
    let out = MPoly::from_sorted(p.nvars(), order, reduced);
    if scaled {
        out.normalized()
    } else {
        out
    }
}

/// Remainder of `p` on division by `g`. Zero exactly when `p` lies in the
/// ideal (up to the degree bound for truncated bases).
pub fn normal_form<F: Field>(p: &MPoly<F>, g: &GroebnerBasis<F>) -> MPoly<F> {
    let p = p.with_order(g.order);
    let reducers: Vec<&MPoly<F>> = g.elements.iter().collect();
    reduce(&p, &reducers, false)
}

/// S-polynomial of `f` and `g`, unscaled.
pub fn s_polynomial<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> MPoly<F> {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let sf = mf.div(&l).unwrap();
    let sg = mg.div(&l).unwrap();
    f.mul_term(&sf, &cf.inv()).sub(&g.mul_term(&sg, &cg.inv()))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: usize,
}

struct Builder<F: Field> {
    order: MonomialOrder,
    strategy: PairStrategy,
    polys: Vec<MPoly<F>>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    seq: usize,
}

impl<F: Field> Builder<F> {
    fn reducers(&self) -> Vec<&MPoly<F>> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }

    /// Gebauer–Möller update for a new basis element.
    fn insert(&mut self, h: MPoly<F>) {
        let lh = h.leading_monomial().expect("nonzero");
        let k = self.polys.len();

        let mut cands: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| Pair { i, j: k, lcm: lh.lcm(&self.lms[i]), seq: 0 })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while !cands.is_empty() {
            let p = cands.remove(0);
            let coprime = lh.coprime(&self.lms[p.i]);
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        let fresh: Vec<Pair> = kept.into_iter().filter(|p| !lh.coprime(&self.lms[p.i])).collect();

        let lms = &self.lms;
        self.pairs.retain(|p| {
            !lh.divides(&p.lcm) || lms[p.i].lcm(&lh) == p.lcm || lms[p.j].lcm(&lh) == p.lcm
        });
        for mut p in fresh {
            p.seq = self.seq;
            self.seq += 1;
            self.pairs.push(p);
        }

        for i in 0..k {
            if self.active[i] && lh.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(lh);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let best = match self.strategy {
            PairStrategy::Fifo => (0..self.pairs.len()).min_by_key(|&t| self.pairs[t].seq).unwrap(),
            PairStrategy::Normal => (0..self.pairs.len())
                .min_by(|&s, &t| {
                    let (a, b) = (&self.pairs[s], &self.pairs[t]);
                    a.lcm
                        .degree()
                        .cmp(&b.lcm.degree())
                        .then_with(|| order.cmp(&a.lcm, &b.lcm))
                        .then_with(|| a.seq.cmp(&b.seq))
                })
                .unwrap(),
        };
        Some(self.pairs.swap_remove(best))
    }
}

pub fn buchberger<F: Field>(ideal: &Ideal<F>) -> GroebnerBasis<F> {
    buchberger_with(ideal, GroebnerOptions::default())
}

pub fn buchberger_with<F: Field>(ideal: &Ideal<F>, opts: GroebnerOptions) -> GroebnerBasis<F> {
    let order = ideal.order;
    let nvars = ideal.generators.first().map_or(3, |g| g.nvars());
    let mut b = Builder {
        order,
        strategy: opts.strategy,
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        seq: 0,
    };
    let within = |m: &Monomial| opts.degree_bound.is_none_or(|bound| m.degree() <= bound);

    let mut gens: Vec<&MPoly<F>> = ideal.generators.iter().collect();
    gens.sort_by(|p, q| {
        let (lp, lq) = (p.leading_monomial().unwrap(), q.leading_monomial().unwrap());
        p.degree().cmp(&q.degree()).then_with(|| order.cmp(&lp, &lq))
    });
    for g in gens {
        if !within(&g.leading_monomial().unwrap()) {
            continue;
        }
        let h = reduce(g, &b.reducers(), true);
        if !h.is_zero() {
            b.insert(h);
        }
    }

    while let Some(p) = b.next_pair() {
        if !within(&p.lcm) {
            continue;
        }
        let s = scaled_s_poly(&b.polys[p.i], &b.polys[p.j]);
        if s.is_zero() {
            continue;
        }
        let h = reduce(&s, &b.reducers(), true);
        if !h.is_zero() {
            b.insert(h);
        }
    }

    let basis: Vec<MPoly<F>> =
        b.polys.iter().zip(&b.active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
    let mut elements = interreduce(basis);
    elements.sort_by(|p, q| order.cmp(&p.leading_monomial().unwrap(), &q.leading_monomial().unwrap()));
    GroebnerBasis { elements, order, nvars, degree_bound: opts.degree_bound }
}

/// S-polynomial up to a nonzero constant, using [`Field::cofactors`].
fn scaled_s_poly<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> MPoly<F> {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let sf = mf.div(&l).unwrap();
    let sg = mg.div(&l).unwrap();
    // a * cf == b * cg, so the lcm cancels in a * sf * f - b * sg * g
    let (a, b) = F::cofactors(cg, cf);
    let shifted: Terms<F> = f.terms().iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
    let rest = cancel_leading(f.order(), &shifted, &a, g.terms(), &b, &sg);
    MPoly::from_sorted(f.nvars(), f.order(), rest)
}

/// Interreduce a minimal basis and make every element monic.
fn interreduce<F: Field>(basis: Vec<MPoly<F>>) -> Vec<MPoly<F>> {
    let mut out: Vec<MPoly<F>> = basis.iter().map(|g| g.monic()).collect();
    for i in 0..out.len() {
        let others: Vec<&MPoly<F>> = out.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g).collect();
        let (lm, lc) = out[i].leading_term().cloned().unwrap();
        let tail = MPoly::from_sorted(out[i].nvars(), out[i].order(), out[i].terms()[1..].to_vec());
        let tail = reduce(&tail, &others, false);
        let head = MPoly::monomial(lm, lc, out[i].nvars()).with_order(out[i].order());
        out[i] = head.add(&tail);
    }
    out
}

/// Minimal monomial generators of the leading-term ideal, sorted by
/// increasing monomial order.
pub fn leading_ideal<F: Field>(g: &GroebnerBasis<F>) -> Vec<Monomial> {
    minimal_monomials(g.leading_monomials(), g.order)
}

pub fn minimal_monomials(mut ms: Vec<Monomial>, order: MonomialOrder) -> Vec<Monomial> {
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| order.cmp(a, b)));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| order.cmp(a, b));
    out
}
