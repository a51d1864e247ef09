//! The partially commutative metabelian Lie algebra of a graph.
//!
//! In the metabelian variety the derived subalgebra is abelian, so every
//! element is a combination of left-normed words, and each multidegree
//! component is finite-dimensional. The canonical basis monomial of
//! multidegree d with support component structure H_0, H_1, ..., H_s (the
//! connected components of the defining graph induced on the support, H_0
//! the one containing the smallest support vertex) consists of the words
//! `(t; sorted rest)` whose first letter t is the largest vertex of one of
//! H_1..H_s. This module enumerates those bases, reduces arbitrary bracket
//! trees to them, and computes brackets.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::AlgebraError;
use crate::graph::{Gen, Graph, VertexSet};
use crate::linalg::{rref, rref_in_column_order};
use crate::poly::{BasisKey, Context, LiePoly, Variety};
use crate::scalar::{FieldTag, Scalar};
use crate::term::{LeftNormedWord, LieExpr, LieTerm, MultiDegree};

/// A canonical metabelian basis monomial together with its multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetabelianBasisMonomial {
    pub word: LeftNormedWord,
    pub mdeg: MultiDegree,
}

/// Reduction data for one multidegree component, cached on the engine.
struct ComponentData {
    /// Canonical free-metabelian words, ascending by first letter.
    free_words: Vec<LeftNormedWord>,
    /// Positions in `free_words` that are canonical basis monomials.
    basis: Vec<usize>,
    is_basis: Vec<bool>,
    /// For each non-basis position, its expansion over basis positions.
    subst: HashMap<usize, Vec<(usize, Scalar)>>,
    relation_rank: usize,
}

/// Engine for one graph and field. Immutable apart from an internal memo of
/// per-multidegree reduction data.
pub struct MetabelianEngine {
    ctx: Context,
    cache: Mutex<HashMap<MultiDegree, Arc<ComponentData>>>,
}

/// Raw relation rows of one multidegree: coordinates over the canonical
/// free-metabelian words, row-reduced. The quotient by this subspace is the
/// metabelian algebra's component, which is how the enumerated basis is
/// cross-checked.
#[derive(Debug, PartialEq, Eq)]
pub struct RelationComponent {
    pub free_words: Vec<LeftNormedWord>,
    pub rows: Vec<Vec<Scalar>>,
    pub rank: usize,
}

impl MetabelianEngine {
    pub fn new(graph: Arc<Graph>, field: FieldTag) -> Self {
        let ctx = Context::new(graph, Variety::Metabelian, field);
        MetabelianEngine {
            ctx,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    fn check_mdeg(&self, d: &MultiDegree) -> Result<(), AlgebraError> {
        let n = self.ctx.n() as usize;
        if d.len() != n {
            return Err(AlgebraError::MultiDegreeLength {
                expected: n,
                got: d.len(),
            });
        }
        if d.is_zero() {
            return Err(AlgebraError::ZeroMultiDegree);
        }
        Ok(())
    }

    /// The canonical basis of the multidegree-`d` component, sorted by
    /// first letter. Single generators for total degree 1; empty when the
    /// graph induced on the support is connected (total degree ≥ 2).
    pub fn basis_for_multidegree(
        &self,
        d: &MultiDegree,
    ) -> Result<Vec<MetabelianBasisMonomial>, AlgebraError> {
        self.check_mdeg(d)?;
        let words = self.canonical_words(d)?;
        let data = self.component(d)?;
        Ok(data
            .basis
            .iter()
            .map(|&i| MetabelianBasisMonomial {
                word: words[i].clone(),
                mdeg: d.clone(),
            })
            .collect())
    }

    /// All canonical free-metabelian words of multidegree `d`: one word per
    /// support vertex other than the smallest, that vertex in front and the
    /// rest sorted ascending. For total degree 1, the single generator.
    fn canonical_words(&self, d: &MultiDegree) -> Result<Vec<LeftNormedWord>, AlgebraError> {
        let supp = d.supp();
        if d.total() == 1 {
            let v = supp.smallest().expect("nonzero multidegree");
            return Ok(vec![LeftNormedWord::new(vec![v])?]);
        }
        let smallest = supp.smallest().expect("nonzero multidegree");
        let mut words = Vec::new();
        for first in supp.iter() {
            if first == smallest {
                continue;
            }
            let tail_mdeg = d
                .minus_gen(first)
                .expect("first letter comes from the support");
            let mut letters = vec![first];
            letters.extend(tail_mdeg.sorted_letters());
            words.push(LeftNormedWord::new(letters)?);
        }
        Ok(words)
    }

    /// First letters admitted by the component structure of the graph
    /// induced on the support: the largest vertex of each connected
    /// component other than the one holding the smallest support vertex.
    fn admissible_first_letters(&self, supp: &VertexSet) -> Result<Vec<Gen>, AlgebraError> {
        let (induced, map) = self.ctx.graph().induced_subgraph(supp)?;
        let smallest_local = 1 as Gen;
        let mut firsts = Vec::new();
        for comp in induced.connected_components() {
            if comp.contains(smallest_local) {
                continue;
            }
            let largest_local = comp.largest().expect("components are non-empty");
            firsts.push(map[(largest_local - 1) as usize]);
        }
        firsts.sort_unstable();
        Ok(firsts)
    }

    fn component(&self, d: &MultiDegree) -> Result<Arc<ComponentData>, AlgebraError> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(d) {
            return Ok(Arc::clone(hit));
        }
        let data = Arc::new(self.build_component(d)?);
        let mut cache = self.cache.lock().expect("cache lock");
        let entry = cache.entry(d.clone()).or_insert_with(|| Arc::clone(&data));
        Ok(Arc::clone(entry))
    }

    fn build_component(&self, d: &MultiDegree) -> Result<ComponentData, AlgebraError> {
        let free_words = self.canonical_words(d)?;
        let index_of: HashMap<&[Gen], usize> = free_words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters(), i))
            .collect();

        let basis: Vec<usize> = if d.total() == 1 {
            vec![0]
        } else {
            let firsts = self.admissible_first_letters(&d.supp())?;
            firsts
                .iter()
                .map(|f| {
                    free_words
                        .iter()
                        .position(|w| w.first() == *f)
                        .expect("admissible first letters index canonical words")
                })
                .collect()
        };
        let mut is_basis = vec![false; free_words.len()];
        for &b in &basis {
            is_basis[b] = true;
        }

        let raw = self.relation_rows(d, &free_words, &index_of);
        // Pivot on non-basis columns first; the quotient statement says the
        // relations eliminate exactly the non-basis words.
        let mut order: Vec<usize> = (0..free_words.len()).filter(|&c| !is_basis[c]).collect();
        let non_basis_count = order.len();
        order.extend((0..free_words.len()).filter(|&c| is_basis[c]));
        let mut rows = raw;
        let pivots = rref_in_column_order(&mut rows, &order);
        let relation_rank = pivots.len();
        if relation_rank != non_basis_count || pivots.iter().any(|&(c, _)| is_basis[c]) {
            return Err(AlgebraError::InvariantViolation(format!(
                "relation pivots do not match the complement of the canonical basis \
                 at multidegree {d}: rank {relation_rank}, non-basis count {non_basis_count}"
            )));
        }
        let mut subst: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for (col, row) in pivots {
            let expansion: Vec<(usize, Scalar)> = basis
                .iter()
                .filter(|&&bc| !rows[row][bc].is_zero())
                .map(|&bc| (bc, -&rows[row][bc]))
                .collect();
            subst.insert(col, expansion);
        }
        Ok(ComponentData {
            free_words,
            basis,
            is_basis,
            subst,
            relation_rank,
        })
    }

    /// Spanning rows of the relation ideal's multidegree-`d` component: one
    /// row per edge inside the support with enough multiplicity, obtained by
    /// left-normed extension of the edge bracket by the remaining letters.
    fn relation_rows(
        &self,
        d: &MultiDegree,
        free_words: &[LeftNormedWord],
        index_of: &HashMap<&[Gen], usize>,
    ) -> Vec<Vec<Scalar>> {
        let field = self.ctx.field();
        let mut rows = Vec::new();
        for (i, j) in self.ctx.graph().edges() {
            let Some(after_i) = d.minus_gen(i) else { continue };
            let Some(rest) = after_i.minus_gen(j) else { continue };
            let mut raw = vec![j.max(i), j.min(i)];
            raw.extend(rest.sorted_letters());
            let mut row = vec![field.zero(); free_words.len()];
            for (sign, word) in free_canonicalize(&raw) {
                let idx = *index_of
                    .get(word.as_slice())
                    .expect("canonicalized word stays in the multidegree");
                let add = field.from_i64(sign as i64);
                row[idx] = &row[idx] + &add;
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
        rows
    }

    /// Row-reduced spanning set of the relation ideal's multidegree-`d`
    /// component over the canonical free-metabelian words.
    pub fn relation_subspace(&self, d: &MultiDegree) -> Result<RelationComponent, AlgebraError> {
        self.check_mdeg(d)?;
        if d.total() < 2 {
            return Err(AlgebraError::TotalDegreeTooSmall { min: 2 });
        }
        let free_words = self.canonical_words(d)?;
        let index_of: HashMap<&[Gen], usize> = free_words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters(), i))
            .collect();
        let mut rows = self.relation_rows(d, &free_words, &index_of);
        rref(&mut rows);
        let rank = rows.len();
        Ok(RelationComponent {
            free_words,
            rows,
            rank,
        })
    }

    /// Normal form of a bracket tree.
    pub fn nf_term(&self, t: &LieTerm) -> Result<LiePoly, AlgebraError> {
        t.validate(self.ctx.n())?;
        let one = self.ctx.field().one();
        self.reduce_raw(flatten_tree(t).into_iter().map(|(sign, word)| {
            let c = if sign > 0 { one.clone() } else { -&one };
            (c, word)
        }))
    }

    /// Normal form of a parsed expression.
    pub fn nf_expr(&self, e: &LieExpr) -> Result<LiePoly, AlgebraError> {
        e.validate(self.ctx.n())?;
        let mut raw: Vec<(Scalar, Vec<Gen>)> = Vec::new();
        for (c, t) in &e.terms {
            if c.tag() != self.ctx.field() {
                return Err(AlgebraError::ContextMismatch);
            }
            for (sign, word) in flatten_tree(t) {
                let coef = if sign > 0 { c.clone() } else { -c };
                raw.push((coef, word));
            }
        }
        self.reduce_raw(raw.into_iter())
    }

    /// Bracket of two normal forms, again in normal form.
    pub fn bracket(&self, p: &LiePoly, q: &LiePoly) -> Result<LiePoly, AlgebraError> {
        if p.context() != &self.ctx || q.context() != &self.ctx {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut raw: Vec<(Scalar, Vec<Gen>)> = Vec::new();
        for (kp, cp) in p.iter() {
            for (kq, cq) in q.iter() {
                let coef = cp * cq;
                let (u, v) = (kp.letters(), kq.letters());
                // Both factors in the derived subalgebra bracket to zero.
                if u.len() >= 2 && v.len() >= 2 {
                    continue;
                }
                if v.len() == 1 {
                    let mut word = u.to_vec();
                    word.push(v[0]);
                    raw.push((coef, word));
                } else {
                    let mut word = v.to_vec();
                    word.push(u[0]);
                    raw.push((-&coef, word));
                }
            }
        }
        self.reduce_raw(raw.into_iter())
    }

    /// Canonicalize raw left-normed words and rewrite non-basis words by the
    /// cached relation data.
    fn reduce_raw(
        &self,
        raw: impl Iterator<Item = (Scalar, Vec<Gen>)>,
    ) -> Result<LiePoly, AlgebraError> {
        let n = self.ctx.n();
        // Free coordinates first: coefficient per canonical word, grouped by
        // multidegree.
        let mut by_mdeg: HashMap<MultiDegree, HashMap<Vec<Gen>, Scalar>> = HashMap::new();
        for (coef, word) in raw {
            if coef.is_zero() {
                continue;
            }
            for (sign, canonical) in free_canonicalize(&word) {
                let add = if sign > 0 { coef.clone() } else { -&coef };
                let mdeg = MultiDegree::of_letters(n, &canonical)?;
                let slot = by_mdeg
                    .entry(mdeg)
                    .or_default()
                    .entry(canonical)
                    .or_insert_with(|| self.ctx.field().zero());
                *slot = &*slot + &add;
            }
        }
        let mut out = LiePoly::zero(self.ctx.clone());
        for (mdeg, coords) in by_mdeg {
            let data = self.component(&mdeg)?;
            for (letters, coef) in coords {
                if coef.is_zero() {
                    continue;
                }
                let idx = data
                    .free_words
                    .iter()
                    .position(|w| w.letters() == letters.as_slice())
                    .ok_or_else(|| {
                        AlgebraError::InvariantViolation(format!(
                            "canonicalized word {letters:?} missing from the \
                             free component of multidegree {mdeg}"
                        ))
                    })?;
                if data.is_basis[idx] {
                    out.accumulate(
                        BasisKey::Word(data.free_words[idx].clone()),
                        coef,
                    );
                } else {
                    for (bidx, bc) in data.subst.get(&idx).into_iter().flatten() {
                        out.accumulate(
                            BasisKey::Word(data.free_words[*bidx].clone()),
                            &coef * bc,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Dimension of the multidegree component (the canonical basis size).
    pub fn component_dim(&self, d: &MultiDegree) -> Result<usize, AlgebraError> {
        Ok(self.component(d)?.basis.len())
    }

    /// Rank of the relation component, from the cached reduction data.
    pub fn relation_rank(&self, d: &MultiDegree) -> Result<usize, AlgebraError> {
        self.check_mdeg(d)?;
        Ok(self.component(d)?.relation_rank)
    }
}

/// The finite slice of a metabelian algebra spanned by its canonical basis
/// monomials of total degree at most `max_degree`, in global basis order.
/// Brackets of window monomials are computed exactly in the full algebra;
/// only the *listing* is truncated.
pub struct MetabelianWindow<'a> {
    engine: &'a MetabelianEngine,
    max_degree: u32,
    keys: Vec<BasisKey>,
}

impl<'a> MetabelianWindow<'a> {
    pub fn new(engine: &'a MetabelianEngine, max_degree: u32) -> Result<Self, AlgebraError> {
        if max_degree < 1 {
            return Err(AlgebraError::TotalDegreeTooSmall { min: 1 });
        }
        let n = engine.context().n();
        let mut keys = Vec::new();
        for total in 1..=max_degree {
            for mdeg in MultiDegree::all_of_total(n, total) {
                for monomial in engine.basis_for_multidegree(&mdeg)? {
                    keys.push(BasisKey::Word(monomial.word));
                }
            }
        }
        Ok(MetabelianWindow {
            engine,
            max_degree,
            keys,
        })
    }

    pub fn engine(&self) -> &MetabelianEngine {
        self.engine
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[BasisKey] {
        &self.keys
    }

    pub fn key(&self, i: usize) -> &BasisKey {
        &self.keys[i]
    }

    /// Exact bracket of the `i`-th and `j`-th window monomials.
    pub fn bracket_keys(&self, i: usize, j: usize) -> Result<LiePoly, AlgebraError> {
        let ctx = self.engine.context().clone();
        let singleton = |k: &BasisKey| {
            let mut p = LiePoly::zero(ctx.clone());
            p.accumulate(k.clone(), ctx.field().one());
            p
        };
        self.engine
            .bracket(&singleton(&self.keys[i]), &singleton(&self.keys[j]))
    }
}

/// Rewrite an arbitrary bracket tree as a signed sum of raw left-normed
/// words, valid in any metabelian quotient: a bracket of two factors of
/// degree ≥ 2 vanishes, a degree-1 right factor extends each word, and a
/// degree-1 left factor anticommutes into the previous case.
fn flatten_tree(t: &LieTerm) -> Vec<(i8, Vec<Gen>)> {
    match t {
        LieTerm::Gen(v) => vec![(1, vec![*v])],
        LieTerm::Bracket(l, r) => {
            let (dl, dr) = (l.degree(), r.degree());
            if dl >= 2 && dr >= 2 {
                return Vec::new();
            }
            if dr == 1 {
                let LieTerm::Gen(j) = **r else { unreachable!("degree 1 is a leaf") };
                let mut words = flatten_tree(l);
                for (_, w) in &mut words {
                    w.push(j);
                }
                words
            } else {
                let LieTerm::Gen(i) = **l else { unreachable!("degree 1 is a leaf") };
                let mut words = flatten_tree(r);
                for (sign, w) in &mut words {
                    *sign = -*sign;
                    w.push(i);
                }
                words
            }
        }
    }
}

/// Express a raw left-normed word in canonical words (first letter in
/// front, tail sorted ascending, first letter strictly above the tail
/// minimum). At most two canonical words result:
///
/// - one letter: already canonical;
/// - repeated head pair: zero;
/// - head pair ascending: anticommute and retry;
/// - otherwise, if the second letter is the tail minimum the word is
///   canonical after sorting the freely-permutable positions 3..r; if not,
///   one Jacobi step on the head `[x1,x2,t,...] = [x1,t,x2,...] - [x2,t,x1,...]`
///   (with t the tail minimum) lands both summands in canonical form.
fn free_canonicalize(word: &[Gen]) -> Vec<(i8, Vec<Gen>)> {
    if word.len() == 1 {
        return vec![(1, word.to_vec())];
    }
    let (x1, x2) = (word[0], word[1]);
    if x1 == x2 {
        return Vec::new();
    }
    if x1 < x2 {
        let mut swapped = word.to_vec();
        swapped.swap(0, 1);
        return free_canonicalize(&swapped)
            .into_iter()
            .map(|(sign, w)| (-sign, w))
            .collect();
    }
    let mut tail = word[2..].to_vec();
    tail.sort_unstable();
    match tail.first().copied() {
        None => vec![(1, vec![x1, x2])],
        Some(t) if x2 <= t => {
            let mut w = vec![x1, x2];
            w.extend(tail);
            vec![(1, w)]
        }
        Some(t) => {
            let rest = &tail[1..];
            let build = |head: Gen, second: Gen, merged: Gen| {
                let mut body: Vec<Gen> = rest.to_vec();
                let pos = body.partition_point(|&x| x < merged);
                body.insert(pos, merged);
                let mut w = vec![head, second];
                w.extend(body);
                w
            };
            vec![(1, build(x1, t, x2)), (-1, build(x2, t, x1))]
        }
    }
}
