//! Algebra contexts, canonical basis keys, and reduced Lie polynomials.
//!
//! A [`LiePoly`] is always a combination of *canonical* basis monomials for
//! its context; the engines are the only producers. Terms are kept in a
//! `BTreeMap` under the global basis order (degree, then multidegree, then
//! word), which makes printing and iteration deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::graph::{Gen, Graph, VertexSet};
use crate::lyndon::{self, Word};
use crate::scalar::{FieldTag, Scalar};
use crate::term::{LeftNormedWord, LieExpr, LieTerm, MultiDegree};

/// The quotient variety an engine works in. Truncated free algebras are the
/// nilpotent case over a graph with no edges, so they need no tag of their
/// own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    Metabelian,
    Nilpotent(u32),
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::Metabelian => write!(f, "metabelian"),
            Variety::Nilpotent(m) => write!(f, "nilpotent:{m}"),
        }
    }
}

/// What a polynomial is a polynomial *in*: the defining graph, the variety,
/// and the coefficient field. Polynomials from different contexts never mix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    graph: Arc<Graph>,
    variety: Variety,
    field: FieldTag,
}

impl Context {
    pub fn new(graph: Arc<Graph>, variety: Variety, field: FieldTag) -> Self {
        Context {
            graph,
            variety,
            field,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn n(&self) -> Gen {
        self.graph.vertex_count()
    }
}

/// Canonical basis monomial. Metabelian bases use left-normed words; the
/// nilpotent engine uses standard bracketings of Lyndon words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisKey {
    Word(LeftNormedWord),
    Lyndon(Word),
}

impl BasisKey {
    pub fn letters(&self) -> &[Gen] {
        match self {
            BasisKey::Word(w) => w.letters(),
            BasisKey::Lyndon(w) => w.letters(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.letters().len() as u32
    }

    pub fn mdeg(&self, n: Gen) -> MultiDegree {
        MultiDegree::of_letters(n, self.letters()).expect("letters validated upstream")
    }

    pub fn supp(&self) -> VertexSet {
        self.letters().iter().copied().collect()
    }

    pub fn to_term(&self) -> LieTerm {
        match self {
            BasisKey::Word(w) => w.to_term(),
            BasisKey::Lyndon(w) => lyndon::standard_term(w),
        }
    }
}

/// Multidegree presentation order (larger count first at the first
/// differing slot) computed from words of equal total degree, without
/// knowing `n`: walk the generators present on either side ascending; the
/// side with the higher count at the first difference comes first.
fn cmp_mdeg_by_letters(a: &[Gen], b: &[Gen]) -> Ordering {
    let count = |letters: &[Gen]| {
        let mut m: BTreeMap<Gen, u32> = BTreeMap::new();
        for &l in letters {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    };
    let ca = count(a);
    let cb = count(b);
    let mut ka = ca.iter().peekable();
    let mut kb = cb.iter().peekable();
    loop {
        match (ka.peek(), kb.peek()) {
            (None, None) => return Ordering::Equal,
            // A generator missing on one side counts zero there, and a
            // positive count at the earliest generator wins.
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some(&(&ga, &na)), Some(&(&gb, &nb))) => {
                match ga.cmp(&gb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => {}
                }
                match nb.cmp(&na) {
                    Ordering::Equal => {
                        ka.next();
                        kb.next();
                    }
                    ord => return ord,
                }
            }
        }
    }
}

impl Ord for BasisKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| cmp_mdeg_by_letters(self.letters(), other.letters()))
            .then_with(|| match (self, other) {
                (BasisKey::Word(a), BasisKey::Word(b)) => a.letters().cmp(b.letters()),
                (BasisKey::Lyndon(a), BasisKey::Lyndon(b)) => a.cmp(b),
                (BasisKey::Word(_), BasisKey::Lyndon(_)) => Ordering::Less,
                (BasisKey::Lyndon(_), BasisKey::Word(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// Normal-form element: a scalar combination of canonical basis monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePoly {
    ctx: Context,
    terms: BTreeMap<BasisKey, Scalar>,
}

impl LiePoly {
    pub fn zero(ctx: Context) -> Self {
        LiePoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn accumulate(&mut self, key: BasisKey, add: Scalar) {
        if add.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                *cur = &*cur + &add;
                if cur.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, add);
            }
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> Scalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| self.ctx.field().zero())
    }

    pub fn checked_add(&self, other: &LiePoly) -> Result<LiePoly, AlgebraError> {
        if self.ctx != other.ctx {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LiePoly) -> Result<LiePoly, AlgebraError> {
        self.checked_add(&other.negated())
    }

    pub fn negated(&self) -> LiePoly {
        LiePoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c))
                .collect(),
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Result<LiePoly, AlgebraError> {
        if s.tag() != self.ctx.field() {
            return Err(AlgebraError::ContextMismatch);
        }
        if s.is_zero() {
            return Ok(LiePoly::zero(self.ctx.clone()));
        }
        Ok(LiePoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), s * c))
                .collect(),
        })
    }

    /// Union of the supports of all monomials; empty for zero.
    pub fn supp(&self) -> VertexSet {
        let mut set = VertexSet::new();
        for k in self.terms.keys() {
            set = set.union(&k.supp());
        }
        set
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(BasisKey::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(BasisKey::degree).min()
    }

    /// The degree-`d` homogeneous component.
    pub fn graded_part(&self, d: u32) -> LiePoly {
        self.filtered(|k| k.degree() == d)
    }

    /// Terms of degree at most `k`.
    pub fn up_to_degree(&self, k: u32) -> LiePoly {
        self.filtered(|key| key.degree() <= k)
    }

    /// Terms of degree strictly above `k`.
    pub fn above_degree(&self, k: u32) -> LiePoly {
        self.filtered(|key| key.degree() > k)
    }

    fn filtered(&self, keep: impl Fn(&BasisKey) -> bool) -> LiePoly {
        LiePoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Split into multi-homogeneous components, ascending in multidegree.
    /// The components sum back to the original element.
    pub fn multihomogeneous_split(&self) -> Vec<(MultiDegree, LiePoly)> {
        let n = self.ctx.n();
        let mut parts: BTreeMap<MultiDegree, LiePoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            parts
                .entry(k.mdeg(n))
                .or_insert_with(|| LiePoly::zero(self.ctx.clone()))
                .accumulate(k.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// Re-read the normal form as a syntactic expression (each basis
    /// monomial as its bracket tree).
    pub fn to_expr(&self) -> LieExpr {
        LieExpr {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (c.clone(), k.to_term()))
                .collect(),
        }
    }
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{k}")?;
        }
        Ok(())
    }
}
