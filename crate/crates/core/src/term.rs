//! Lie terms as bracket trees, multidegrees, and left-normed words.
//!
//! A [`LieTerm`] is an unreduced syntactic expression: a generator `a_i` or a
//! bracket of two subterms. Engines turn terms into normal forms; this module
//! only provides the shapes and the degree/support bookkeeping shared by all
//! of them.

use std::fmt;

use thiserror::Error;

use crate::graph::{Gen, VertexSet};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("generator a{v} is out of range for {n} generators")]
    LeafOutOfRange { v: Gen, n: Gen },
    #[error("a left-normed word needs at least one letter")]
    EmptyWord,
}

/// Syntactic Lie expression tree over generators `a1..an`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LieTerm {
    Gen(Gen),
    Bracket(Box<LieTerm>, Box<LieTerm>),
}

impl LieTerm {
    pub fn gen(i: Gen) -> Self {
        LieTerm::Gen(i)
    }

    pub fn bracket(left: LieTerm, right: LieTerm) -> Self {
        LieTerm::Bracket(Box::new(left), Box::new(right))
    }

    /// `[a_{i1}, a_{i2}, ..., a_{ir}]` bracketed left to right.
    pub fn left_normed(letters: &[Gen]) -> Result<Self, TermError> {
        let (&first, rest) = letters.split_first().ok_or(TermError::EmptyWord)?;
        let mut term = LieTerm::Gen(first);
        for &l in rest {
            term = LieTerm::bracket(term, LieTerm::Gen(l));
        }
        Ok(term)
    }

    /// Number of generator leaves.
    pub fn degree(&self) -> u32 {
        match self {
            LieTerm::Gen(_) => 1,
            LieTerm::Bracket(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn supp(&self) -> VertexSet {
        let mut set = VertexSet::new();
        self.collect_leaves(&mut |v| {
            set.insert(v);
        });
        set
    }

    /// Per-generator leaf counts; errors if a leaf exceeds `n`.
    pub fn mdeg(&self, n: Gen) -> Result<MultiDegree, TermError> {
        let mut counts = vec![0u32; n as usize];
        let mut bad = None;
        self.collect_leaves(&mut |v| {
            if v >= 1 && v <= n {
                counts[(v - 1) as usize] += 1;
            } else if bad.is_none() {
                bad = Some(v);
            }
        });
        match bad {
            Some(v) => Err(TermError::LeafOutOfRange { v, n }),
            None => Ok(MultiDegree(counts)),
        }
    }

    pub fn validate(&self, n: Gen) -> Result<(), TermError> {
        self.mdeg(n).map(|_| ())
    }

    fn collect_leaves(&self, f: &mut impl FnMut(Gen)) {
        match self {
            LieTerm::Gen(v) => f(*v),
            LieTerm::Bracket(l, r) => {
                l.collect_leaves(f);
                r.collect_leaves(f);
            }
        }
    }

    /// Left spine flattened into comma-list children, so `[[x,y],z]` renders
    /// as `[x,y,z]` while a nested right factor stays bracketed.
    fn spine(&self) -> Vec<&LieTerm> {
        let mut items = Vec::new();
        let mut cur = self;
        while let LieTerm::Bracket(l, r) = cur {
            items.push(&**r);
            cur = l;
        }
        items.push(cur);
        items.reverse();
        items
    }
}

impl fmt::Display for LieTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTerm::Gen(v) => write!(f, "a{v}"),
            LieTerm::Bracket(..) => {
                write!(f, "[")?;
                for (k, item) in self.spine().iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Per-generator degree vector `(d_1, ..., d_n)`.
///
/// Ordered for presentation: ascending total degree, then lexicographically
/// with the *larger* count first at the first differing slot. That places
/// `a1` before `a2` and `(2,1)` before `(1,2)`, so sorted listings read in
/// generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiDegree(Vec<u32>);

impl Ord for MultiDegree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total().cmp(&other.total()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                match b.cmp(a) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for MultiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl MultiDegree {
    pub fn zero(n: Gen) -> Self {
        MultiDegree(vec![0; n as usize])
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        MultiDegree(counts)
    }

    /// Multidegree of the single generator `a_i`.
    pub fn unit(n: Gen, i: Gen) -> Self {
        let mut d = Self::zero(n);
        d.0[(i - 1) as usize] = 1;
        d
    }

    pub fn of_letters(n: Gen, letters: &[Gen]) -> Result<Self, TermError> {
        let mut d = Self::zero(n);
        for &l in letters {
            if l < 1 || l > n {
                return Err(TermError::LeafOutOfRange { v: l, n });
            }
            d.0[(l - 1) as usize] += 1;
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entry(&self, i: Gen) -> u32 {
        self.0[(i - 1) as usize]
    }

    /// Sum of all entries: the total degree.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn supp(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, _)| (k + 1) as Gen)
            .collect()
    }

    pub fn checked_add(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if self.0.len() != other.0.len() {
            return None;
        }
        Some(MultiDegree(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn plus_gen(&self, i: Gen) -> MultiDegree {
        let mut d = self.clone();
        d.0[(i - 1) as usize] += 1;
        d
    }

    /// `self - e_i`, or `None` when `a_i` does not occur.
    pub fn minus_gen(&self, i: Gen) -> Option<MultiDegree> {
        let k = (i - 1) as usize;
        if self.0.get(k).copied().unwrap_or(0) == 0 {
            return None;
        }
        let mut d = self.clone();
        d.0[k] -= 1;
        Some(d)
    }

    /// Letters of the multidegree in ascending order, with multiplicity.
    pub fn sorted_letters(&self) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (k, &c) in self.0.iter().enumerate() {
            for _ in 0..c {
                out.push((k + 1) as Gen);
            }
        }
        out
    }

    /// Bare comma-separated counts, e.g. `2,0,1`.
    pub fn plain(&self) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Every multidegree over `n` generators with the given total, sorted.
    pub fn all_of_total(n: Gen, total: u32) -> Vec<MultiDegree> {
        fn rec(slots: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
            if slots == 1 {
                cur.push(remaining);
                out.push(MultiDegree(cur.clone()));
                cur.pop();
                return;
            }
            for c in 0..=remaining {
                cur.push(c);
                rec(slots - 1, remaining - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        rec(n as usize, total, &mut Vec::with_capacity(n as usize), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.plain())
    }
}

/// `[a_{i1}, a_{i2}, ..., a_{ir}]`, all brackets to the left. A single letter
/// is the bare generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeftNormedWord(Vec<Gen>);

impl LeftNormedWord {
    pub fn new(letters: Vec<Gen>) -> Result<Self, TermError> {
        if letters.is_empty() {
            return Err(TermError::EmptyWord);
        }
        Ok(LeftNormedWord(letters))
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Gen {
        self.0[0]
    }

    pub fn supp(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn mdeg(&self, n: Gen) -> Result<MultiDegree, TermError> {
        MultiDegree::of_letters(n, &self.0)
    }

    pub fn to_term(&self) -> LieTerm {
        LieTerm::left_normed(&self.0).expect("non-empty by construction")
    }
}

impl fmt::Display for LeftNormedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// Flat scalar combination of bracket trees, as produced by the parser.
/// No reduction or grouping is implied.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieExpr {
    pub terms: Vec<(Scalar, LieTerm)>,
}

impl LieExpr {
    pub fn zero() -> Self {
        LieExpr { terms: Vec::new() }
    }

    pub fn single(coef: Scalar, term: LieTerm) -> Self {
        LieExpr {
            terms: vec![(coef, term)],
        }
    }

    pub fn validate(&self, n: Gen) -> Result<(), TermError> {
        for (_, t) in &self.terms {
            t.validate(n)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_counts_leaves() {
        let t = LieTerm::bracket(
            LieTerm::bracket(LieTerm::gen(2), LieTerm::gen(1)),
            LieTerm::bracket(LieTerm::gen(3), LieTerm::gen(1)),
        );
        assert_eq!(t.degree(), 4);
        assert_eq!(t.supp().to_string(), "{a1,a2,a3}");
    }

    #[test]
    fn mdeg_additivity_over_bracketing() {
        let l = LieTerm::bracket(LieTerm::gen(2), LieTerm::gen(1));
        let r = LieTerm::gen(2);
        let both = LieTerm::bracket(l.clone(), r.clone());
        let sum = l
            .mdeg(3)
            .unwrap()
            .checked_add(&r.mdeg(3).unwrap())
            .unwrap();
        assert_eq!(both.mdeg(3).unwrap(), sum);
        assert_eq!(sum.plain(), "1,2,0");
    }

    #[test]
    fn mdeg_rejects_out_of_range_leaf() {
        let t = LieTerm::bracket(LieTerm::gen(1), LieTerm::gen(4));
        assert_eq!(t.mdeg(3), Err(TermError::LeafOutOfRange { v: 4, n: 3 }));
    }

    #[test]
    fn display_flattens_left_spine_only() {
        let left_normed = LieTerm::left_normed(&[2, 1, 3]).unwrap();
        assert_eq!(left_normed.to_string(), "[a2,a1,a3]");

        let nested_right = LieTerm::bracket(
            LieTerm::gen(2),
            LieTerm::bracket(LieTerm::gen(2), LieTerm::gen(1)),
        );
        assert_eq!(nested_right.to_string(), "[a2,[a2,a1]]");

        let mixed = LieTerm::bracket(
            LieTerm::left_normed(&[3, 1]).unwrap(),
            LieTerm::bracket(LieTerm::gen(2), LieTerm::gen(1)),
        );
        assert_eq!(mixed.to_string(), "[a3,a1,[a2,a1]]");
    }

    #[test]
    fn multidegree_order_reads_in_generator_order() {
        assert!(MultiDegree::unit(3, 1) < MultiDegree::unit(3, 2));
        assert!(MultiDegree::unit(3, 2) < MultiDegree::unit(3, 3));
        // Same total: larger first entry comes first.
        assert!(MultiDegree::from_counts(vec![2, 0, 1]) < MultiDegree::from_counts(vec![1, 1, 1]));
        // Smaller total always first.
        assert!(MultiDegree::from_counts(vec![1, 1, 0]) < MultiDegree::from_counts(vec![1, 1, 1]));

        let a = MultiDegree::from_counts(vec![1, 0, 2]);
        assert_eq!(a.total(), 3);
        assert_eq!(a.supp().to_string(), "{a1,a3}");
        assert_eq!(a.sorted_letters(), vec![1, 3, 3]);
    }

    #[test]
    fn all_of_total_enumerates_in_order() {
        let degs: Vec<String> = MultiDegree::all_of_total(2, 2)
            .iter()
            .map(MultiDegree::plain)
            .collect();
        assert_eq!(degs, vec!["2,0", "1,1", "0,2"]);
        assert_eq!(MultiDegree::all_of_total(3, 2).len(), 6);
        assert_eq!(MultiDegree::all_of_total(1, 4), vec![MultiDegree::from_counts(vec![4])]);
    }

    #[test]
    fn unit_and_minus_gen_round_trip() {
        let d = MultiDegree::from_counts(vec![2, 1]);
        let e = d.minus_gen(2).unwrap();
        assert_eq!(e, MultiDegree::from_counts(vec![2, 0]));
        assert_eq!(e.minus_gen(2), None);
        assert_eq!(e.checked_add(&MultiDegree::unit(2, 2)).unwrap(), d);
    }

    #[test]
    fn left_normed_word_renders_like_its_term() {
        let w = LeftNormedWord::new(vec![3, 1, 2]).unwrap();
        assert_eq!(w.to_string(), "[a3,a1,a2]");
        assert_eq!(w.to_term().degree(), 3);
        let single = LeftNormedWord::new(vec![2]).unwrap();
        assert_eq!(single.to_string(), "a2");
        assert_eq!(LeftNormedWord::new(vec![]), Err(TermError::EmptyWord));
    }
}
