//! Lyndon words and standard bracketings over the generator alphabet.
//!
//! Canonical monomials put larger generators first (`[a2,a1]`, not
//! `[a1,a2]`), so all word machinery here orders letters with the generator
//! index *reversed*: `a_n` is the smallest letter and `a_1` the largest.
//! [`Word`] carries that order; Lyndon-ness, Duval enumeration, standard
//! factorizations, and the triangular change of basis between bracketings
//! and associative words all use it consistently.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::error::AlgebraError;
use crate::graph::{Gen, VertexSet};
use crate::scalar::{FieldTag, Scalar};
use crate::term::{LieTerm, MultiDegree};

/// Word over generator indices, compared letter-by-letter with the index
/// order flipped (`a_n < ... < a_1`), shorter prefixes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Gen>);

pub fn cmp_letter_slices(a: &[Gen], b: &[Gen]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.cmp(x) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_letter_slices(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        assert!(!letters.is_empty(), "empty word");
        Word(letters)
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

    pub fn mdeg(&self, n: Gen) -> MultiDegree {
        MultiDegree::of_letters(n, &self.0).expect("letters validated upstream")
    }

    pub fn supp(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// All Lyndon words of the given length over `a1..an`, in ascending word
/// order (Duval's generation order).
pub fn lyndon_words(n: Gen, len: usize) -> Vec<Word> {
    assert!(n >= 1 && len >= 1);
    // Work on letter ranks 0..n-1 (rank r is generator n - r), where the
    // usual integer order matches the word order above.
    let k = n as usize;
    let max_rank = (k - 1) as u16;
    let mut out = Vec::new();
    let mut w: Vec<u16> = vec![0];
    loop {
        if w.len() == len {
            out.push(Word(w.iter().map(|&r| n - r).collect()));
        }
        let mut t: Vec<u16> = (0..len).map(|i| w[i % w.len()]).collect();
        while t.last() == Some(&max_rank) {
            t.pop();
        }
        match t.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
        w = t;
    }
    out
}

pub fn is_lyndon(w: &Word) -> bool {
    let letters = &w.0;
    (1..letters.len()).all(|i| cmp_letter_slices(letters, &letters[i..]) == Ordering::Less)
}

/// Index of the standard right factor: the longest proper suffix that is
/// itself Lyndon. `None` for single letters.
pub fn standard_split(w: &Word) -> Option<usize> {
    let letters = &w.0;
    if letters.len() < 2 {
        return None;
    }
    (1..letters.len())
        .find(|&i| is_lyndon(&Word(letters[i..].to_vec())))
}

/// The standard bracketing of a Lyndon word: single letters are generators,
/// otherwise bracket the standard bracketings of the two standard factors.
pub fn standard_term(w: &Word) -> LieTerm {
    match standard_split(w) {
        None => LieTerm::gen(w.0[0]),
        Some(i) => {
            let left = Word(w.0[..i].to_vec());
            let right = Word(w.0[i..].to_vec());
            LieTerm::bracket(standard_term(&left), standard_term(&right))
        }
    }
}

/// Element of the free associative algebra: a finite combination of words.
/// Zero coefficients are never stored.
pub type AssocPoly = BTreeMap<Word, Scalar>;

pub fn assoc_add_scaled(into: &mut AssocPoly, poly: &AssocPoly, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (w, coef) in poly {
        let add = c * coef;
        match into.get_mut(w) {
            Some(cur) => {
                *cur = &*cur + &add;
                if cur.is_zero() {
                    into.remove(w);
                }
            }
            None => {
                into.insert(w.clone(), add);
            }
        }
    }
}

pub fn assoc_mul(a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
    let mut out = AssocPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let w = wa.concat(wb);
            let add = ca * cb;
            match out.get_mut(&w) {
                Some(cur) => {
                    *cur = &*cur + &add;
                    if cur.is_zero() {
                        out.remove(&w);
                    }
                }
                None => {
                    out.insert(w, add);
                }
            }
        }
    }
    out
}

pub fn assoc_bracket(a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
    let mut out = assoc_mul(a, b);
    let ba = assoc_mul(b, a);
    let minus_one = match out.values().next().or_else(|| ba.values().next()) {
        Some(s) => s.tag().from_i64(-1),
        None => return out,
    };
    assoc_add_scaled(&mut out, &ba, &minus_one);
    out
}

/// Expansion of a bracket tree in the free associative algebra,
/// `[u,v] -> uv - vu`.
pub fn assoc_of_term(t: &LieTerm, field: FieldTag) -> AssocPoly {
    match t {
        LieTerm::Gen(v) => {
            let mut p = AssocPoly::new();
            p.insert(Word(vec![*v]), field.one());
            p
        }
        LieTerm::Bracket(l, r) => {
            assoc_bracket(&assoc_of_term(l, field), &assoc_of_term(r, field))
        }
    }
}

/// Memo for the associative expansions of standard bracketings; scoped to
/// one field.
pub struct BracketingCache {
    field: FieldTag,
    memo: HashMap<Word, Rc<AssocPoly>>,
}

impl BracketingCache {
    pub fn new(field: FieldTag) -> Self {
        BracketingCache {
            field,
            memo: HashMap::new(),
        }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Associative expansion of the standard bracketing of the Lyndon word
    /// `w`. The leading (smallest) word of the result is `w` itself with
    /// coefficient 1.
    pub fn expansion(&mut self, w: &Word) -> Rc<AssocPoly> {
        if let Some(hit) = self.memo.get(w) {
            return Rc::clone(hit);
        }
        let poly = match standard_split(w) {
            None => {
                let mut p = AssocPoly::new();
                p.insert(w.clone(), self.field.one());
                p
            }
            Some(i) => {
                let left = self.expansion(&Word(w.0[..i].to_vec()));
                let right = self.expansion(&Word(w.0[i..].to_vec()));
                assoc_bracket(&left, &right)
            }
        };
        debug_assert!(
            poly.first_key_value()
                .is_some_and(|(lead, c)| lead == w && c.is_one()),
            "standard bracketing must lead with its own word"
        );
        let rc = Rc::new(poly);
        self.memo.insert(w.clone(), Rc::clone(&rc));
        rc
    }
}

/// Coordinates of a Lie element (given by its associative expansion) in the
/// standard-bracketing basis: repeatedly strip the leading word, which must
/// be Lyndon. Words of different lengths may be mixed. Returns
/// `(word, coefficient)` pairs in ascending word order.
pub fn lyndon_coordinates(
    mut poly: AssocPoly,
    cache: &mut BracketingCache,
) -> Result<Vec<(Word, Scalar)>, AlgebraError> {
    let mut coords = Vec::new();
    while let Some((w, c)) = poly.pop_first() {
        if c.is_zero() {
            continue;
        }
        if !is_lyndon(&w) {
            return Err(AlgebraError::InvariantViolation(format!(
                "leading associative word {:?} of a Lie element is not Lyndon",
                w.letters()
            )));
        }
        let expansion = cache.expansion(&w);
        let minus_c = -&c;
        for (v, coef) in expansion.iter() {
            if v == &w {
                continue;
            }
            let add = &minus_c * coef;
            match poly.get_mut(v) {
                Some(cur) => {
                    *cur = &*cur + &add;
                    if cur.is_zero() {
                        poly.remove(v);
                    }
                }
                None => {
                    poly.insert(v.clone(), add);
                }
            }
        }
        coords.push((w, c));
    }
    Ok(coords)
}
