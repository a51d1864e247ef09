//! Centralizers, decomposability, and verified direct-sum splittings.
//!
//! The defining graph decides everything here: an element's centralizer is
//! described by the connected components of the complement graph on its
//! support plus the adjacency hull, and the algebra splits into a direct
//! sum of two nonzero mutually-annihilating subalgebras exactly when the
//! complement graph is disconnected. Each procedure returns checkable
//! certificates rather than bare booleans, and an independent brute-force
//! search over GF(p) can confirm indecomposability at small dimensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::graph::{Graph, VertexSet};
use crate::linalg::{kernel, Subspace};
use crate::metabelian::{MetabelianEngine, MetabelianWindow};
use crate::nilpotent::StructureTable;
use crate::poly::LiePoly;
use crate::scalar::{FieldTag, Scalar};
use crate::term::MultiDegree;

/// Full enumeration of subspace pairs is kept to quotients of at most this
/// dimension unless the caller raises the cap.
pub const DEFAULT_SEARCH_DIM_CAP: usize = 8;

/// Split of an element into the parts carried by the connected components
/// of the complement graph on its support: each part collects the
/// monomials supported inside one component, parts sum to the input, and
/// components are ordered by smallest vertex.
pub fn complement_component_split(
    x: &LiePoly,
) -> Result<Vec<(VertexSet, LiePoly)>, AlgebraError> {
    if x.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let graph = x.context().graph();
    let supp = x.supp();
    let (induced, map) = graph.induced_subgraph(&supp)?;
    let components: Vec<VertexSet> = induced
        .complement()
        .connected_components()
        .into_iter()
        .map(|c| c.iter().map(|v| map[(v - 1) as usize]).collect())
        .collect();
    let mut parts: Vec<(VertexSet, LiePoly)> = components
        .iter()
        .map(|c| (c.clone(), LiePoly::zero(x.context().clone())))
        .collect();
    for (key, coef) in x.iter() {
        let key_supp = key.supp();
        let home = key_supp
            .smallest()
            .expect("basis monomials have nonempty support");
        let slot = components
            .iter()
            .position(|c| c.contains(home))
            .expect("components partition the support");
        if !key_supp.is_subset(&parts[slot].0) {
            return Err(AlgebraError::InvariantViolation(format!(
                "monomial {key} straddles complement components of the support"
            )));
        }
        parts[slot].1.accumulate(key.clone(), coef.clone());
    }
    Ok(parts)
}

/// Exact kernel of `y -> [y, x]` on the whole table, as a row-reduced
/// subspace.
pub fn centralizer_computed(
    tbl: &StructureTable,
    x: &LiePoly,
) -> Result<Subspace, AlgebraError> {
    if x.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let xv = tbl.poly_to_vec(x)?;
    let d = tbl.dim();
    let field = tbl.context().field();
    let mut matrix = vec![vec![field.zero(); d]; d];
    #[allow(clippy::needless_range_loop)]
    for j in 0..d {
        for (i, xi) in xv.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (w, c) in tbl.bracket_basis(j, i) {
                matrix[w][j] = &matrix[w][j] + &(xi * &c);
            }
        }
    }
    let ker = kernel(field, d, &matrix);
    Ok(Subspace::from_rows(field, d, ker))
}

/// The support-component description of a centralizer: the element's
/// complement-component parts, the adjacency hull of its support, and the
/// spanned subspace (scalar lines through the parts plus every basis
/// monomial supported inside the hull).
#[derive(Debug, Clone)]
pub struct CentralizerDescription {
    pub parts: Vec<(VertexSet, LiePoly)>,
    pub hull: VertexSet,
    pub subspace: Subspace,
}

pub fn centralizer_predicted(
    tbl: &StructureTable,
    x: &LiePoly,
) -> Result<CentralizerDescription, AlgebraError> {
    if x.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    if x.context() != tbl.context() {
        return Err(AlgebraError::ContextMismatch);
    }
    let parts = complement_component_split(x)?;
    let hull = tbl.context().graph().adjacency_hull(&x.supp());
    let field = tbl.context().field();
    let d = tbl.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (_, part) in &parts {
        rows.push(tbl.poly_to_vec(part)?);
    }
    for i in 0..d {
        if tbl.basis_supp(i).is_subset(&hull) {
            let mut row = vec![field.zero(); d];
            row[i] = field.one();
            rows.push(row);
        }
    }
    Ok(CentralizerDescription {
        parts,
        hull,
        subspace: Subspace::from_rows(field, d, rows),
    })
}

/// Computed and predicted centralizers side by side. Equality is decided on
/// the faithful window: degrees up to `m - maxdeg(x)`, beyond which the
/// class-`m` truncation forces brackets to vanish for reasons that have
/// nothing to do with the graph.
#[derive(Debug, Clone)]
pub struct CentralizerComparison {
    pub computed: Subspace,
    pub predicted: Subspace,
    pub window: u32,
    pub computed_windowed: Subspace,
    pub predicted_windowed: Subspace,
    pub matches: bool,
}

pub fn compare_centralizers(
    tbl: &StructureTable,
    x: &LiePoly,
) -> Result<CentralizerComparison, AlgebraError> {
    let computed = centralizer_computed(tbl, x)?;
    let predicted = centralizer_predicted(tbl, x)?;
    let window = tbl.class() - x.max_degree().expect("x is nonzero");
    let keep: Vec<bool> = (0..tbl.dim())
        .map(|i| tbl.basis_degree(i) <= window)
        .collect();
    let computed_windowed = computed.restrict_to_coords(&keep);
    let predicted_windowed = predicted.subspace.restrict_to_coords(&keep);
    let matches = computed_windowed == predicted_windowed;
    Ok(CentralizerComparison {
        computed,
        predicted: predicted.subspace,
        window,
        computed_windowed,
        predicted_windowed,
        matches,
    })
}

/// Decomposability certificate: the complement graph's components, and
/// whether there are at least two of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposabilityCertificate {
    pub decomposable: bool,
    pub complement_components: Vec<VertexSet>,
}

pub fn is_decomposable(g: &Graph) -> Result<DecomposabilityCertificate, AlgebraError> {
    if g.vertex_count() < 2 {
        return Err(AlgebraError::TooFewVertices);
    }
    let components = g.complement().connected_components();
    Ok(DecomposabilityCertificate {
        decomposable: components.len() > 1,
        complement_components: components,
    })
}

/// How a split is certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitKind {
    /// Partition of the vertices; each side spans the basis monomials
    /// supported inside it.
    Vertex { a1: VertexSet, a2: VertexSet },
    /// Explicit subspace pair in a structure table's coordinates.
    Subspace(SubspaceSplit),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceSplit {
    pub l1: Subspace,
    pub l2: Subspace,
    /// The subspace rows as normal forms, for rendering.
    pub l1_basis: Vec<LiePoly>,
    pub l2_basis: Vec<LiePoly>,
}

/// Direct-sum checks, all of which must pass for a certified split:
/// mutual annihilation, spanning, trivial intersection, closure of both
/// sides, and both sides nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyReport {
    pub cross_bracket: bool,
    pub spanning: bool,
    pub trivial_intersection: bool,
    pub closed: (bool, bool),
    pub nonzero: bool,
    /// (dim L1, dim L2, ambient dim) in the verifying window.
    pub dims: (usize, usize, usize),
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.cross_bracket
            && self.spanning
            && self.trivial_intersection
            && self.closed.0
            && self.closed.1
            && self.nonzero
    }
}

/// A split candidate together with its verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: SplitKind,
    pub report: VerifyReport,
}

impl Decomposition {
    /// Stable text serialization: kind, parts or bases, checks, dimensions.
    pub fn report_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        match &self.kind {
            SplitKind::Vertex { a1, a2 } => {
                lines.push("kind vertex-split".into());
                lines.push(format!("part1 {}", a1.plain()));
                lines.push(format!("part2 {}", a2.plain()));
            }
            SplitKind::Subspace(s) => {
                lines.push("kind subspace-split".into());
                for p in &s.l1_basis {
                    lines.push(format!("basis1 {p}"));
                }
                for p in &s.l2_basis {
                    lines.push(format!("basis2 {p}"));
                }
            }
        }
        let r = &self.report;
        let pf = |b: bool| if b { "pass" } else { "fail" };
        lines.push(format!("check cross-bracket {}", pf(r.cross_bracket)));
        lines.push(format!("check spanning {}", pf(r.spanning)));
        lines.push(format!(
            "check trivial-intersection {}",
            pf(r.trivial_intersection)
        ));
        lines.push(format!("check closed-part1 {}", pf(r.closed.0)));
        lines.push(format!("check closed-part2 {}", pf(r.closed.1)));
        lines.push(format!("check nonzero {}", pf(r.nonzero)));
        lines.push(format!("dim1 {}", r.dims.0));
        lines.push(format!("dim2 {}", r.dims.1));
        lines.push(format!("dimtotal {}", r.dims.2));
        lines
    }
}

/// Which quotient a vertex split is verified in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitSetting {
    Nilpotent {
        m: u32,
        field: FieldTag,
        dim_cap: usize,
    },
    /// The metabelian algebra is infinite-dimensional; brackets are checked
    /// on the finite window of basis monomials with degree at most
    /// `max_degree`. The bracket computations themselves are exact.
    Metabelian { max_degree: u32, field: FieldTag },
}

/// The canonical two-part split of a decomposable algebra: the complement
/// component containing the smallest vertex against everything else,
/// verified in the requested quotient.
pub fn split(graph: &Arc<Graph>, setting: SplitSetting) -> Result<Decomposition, AlgebraError> {
    let cert = is_decomposable(graph)?;
    if !cert.decomposable {
        return Err(AlgebraError::NotDecomposable);
    }
    let a1 = cert.complement_components[0].clone();
    let mut a2 = VertexSet::new();
    for c in &cert.complement_components[1..] {
        a2 = a2.union(c);
    }
    let report = match setting {
        SplitSetting::Nilpotent { m, field, dim_cap } => {
            let tbl = StructureTable::build(Arc::clone(graph), m, field, dim_cap)?;
            vertex_split_report(&TableWindow(&tbl), &a1, &a2)?
        }
        SplitSetting::Metabelian { max_degree, field } => {
            let engine = MetabelianEngine::new(Arc::clone(graph), field);
            let window = MetabelianWindow::new(&engine, max_degree)?;
            vertex_split_report(&window, &a1, &a2)?
        }
    };
    Ok(Decomposition {
        kind: SplitKind::Vertex { a1, a2 },
        report,
    })
}

/// Re-verify an existing split against a structure table.
pub fn verify_split(tbl: &StructureTable, kind: &SplitKind) -> VerifyReport {
    match kind {
        SplitKind::Vertex { a1, a2 } => vertex_split_report(&TableWindow(tbl), a1, a2)
            .expect("table brackets are total"),
        SplitKind::Subspace(s) => verify_subspace_split(tbl, &s.l1, &s.l2),
    }
}

/// Verify a vertex split in the metabelian quotient on the degree window.
pub fn verify_split_metabelian(
    engine: &MetabelianEngine,
    max_degree: u32,
    a1: &VertexSet,
    a2: &VertexSet,
) -> Result<VerifyReport, AlgebraError> {
    let window = MetabelianWindow::new(engine, max_degree)?;
    vertex_split_report(&window, a1, a2)
}

/// A finite list of canonical monomials with exact pairwise brackets: what
/// vertex-split verification needs from either engine.
trait MonomialWindow {
    fn len(&self) -> usize;
    fn monomial_supp(&self, i: usize) -> VertexSet;
    fn bracket_is_zero(&self, i: usize, j: usize) -> Result<bool, AlgebraError>;
    fn bracket_supp_within(
        &self,
        i: usize,
        j: usize,
        set: &VertexSet,
    ) -> Result<bool, AlgebraError>;
}

struct TableWindow<'a>(&'a StructureTable);

impl MonomialWindow for TableWindow<'_> {
    fn len(&self) -> usize {
        self.0.dim()
    }

    fn monomial_supp(&self, i: usize) -> VertexSet {
        self.0.basis_supp(i).clone()
    }

    fn bracket_is_zero(&self, i: usize, j: usize) -> Result<bool, AlgebraError> {
        Ok(self.0.bracket_basis(i, j).is_empty())
    }

    fn bracket_supp_within(
        &self,
        i: usize,
        j: usize,
        set: &VertexSet,
    ) -> Result<bool, AlgebraError> {
        Ok(self
            .0
            .bracket_basis(i, j)
            .iter()
            .all(|(w, _)| self.0.basis_supp(*w).is_subset(set)))
    }
}

impl MonomialWindow for MetabelianWindow<'_> {
    fn len(&self) -> usize {
        self.dim()
    }

    fn monomial_supp(&self, i: usize) -> VertexSet {
        self.key(i).supp()
    }

    fn bracket_is_zero(&self, i: usize, j: usize) -> Result<bool, AlgebraError> {
        Ok(self.bracket_keys(i, j)?.is_zero())
    }

    fn bracket_supp_within(
        &self,
        i: usize,
        j: usize,
        set: &VertexSet,
    ) -> Result<bool, AlgebraError> {
        Ok(self.bracket_keys(i, j)?.supp().is_subset(set))
    }
}

fn vertex_split_report<W: MonomialWindow>(
    window: &W,
    a1: &VertexSet,
    a2: &VertexSet,
) -> Result<VerifyReport, AlgebraError> {
    let mut idx1 = Vec::new();
    let mut idx2 = Vec::new();
    let mut spanning = true;
    let mut overlap = false;
    for i in 0..window.len() {
        let supp = window.monomial_supp(i);
        let in1 = supp.is_subset(a1);
        let in2 = supp.is_subset(a2);
        if in1 && in2 {
            overlap = true;
        }
        if in1 {
            idx1.push(i);
        } else if in2 {
            idx2.push(i);
        } else {
            spanning = false;
        }
    }
    let mut cross = true;
    'cross: for &i in &idx1 {
        for &j in &idx2 {
            if !window.bracket_is_zero(i, j)? {
                cross = false;
                break 'cross;
            }
        }
    }
    let closed_within = |idx: &[usize], set: &VertexSet| -> Result<bool, AlgebraError> {
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if !window.bracket_supp_within(i, j, set)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    Ok(VerifyReport {
        cross_bracket: cross,
        spanning,
        trivial_intersection: !overlap,
        closed: (closed_within(&idx1, a1)?, closed_within(&idx2, a2)?),
        nonzero: !idx1.is_empty() && !idx2.is_empty(),
        dims: (idx1.len(), idx2.len(), window.len()),
    })
}

fn bracket_vectors(tbl: &StructureTable, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let field = tbl.context().field();
    let mut out = vec![field.zero(); tbl.dim()];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let scale = ca * cb;
            for (w, c) in tbl.bracket_basis(i, j) {
                out[w] = &out[w] + &(&scale * &c);
            }
        }
    }
    out
}

/// Direct-sum checks for an explicit subspace pair in table coordinates.
pub fn verify_subspace_split(tbl: &StructureTable, l1: &Subspace, l2: &Subspace) -> VerifyReport {
    let d = tbl.dim();
    let cross = l1.rows().iter().all(|u| {
        l2.rows()
            .iter()
            .all(|v| bracket_vectors(tbl, u, v).iter().all(Scalar::is_zero))
    });
    let closed_in = |l: &Subspace| -> bool {
        let rows = l.rows();
        for (a, u) in rows.iter().enumerate() {
            for v in &rows[a + 1..] {
                if !l.contains(&bracket_vectors(tbl, u, v)) {
                    return false;
                }
            }
        }
        true
    };
    VerifyReport {
        cross_bracket: cross,
        spanning: l1.sum(l2).dim() == d,
        trivial_intersection: l1.intersection(l2).dim() == 0,
        closed: (closed_in(l1), closed_in(l2)),
        nonzero: l1.dim() >= 1 && l2.dim() >= 1,
        dims: (l1.dim(), l2.dim(), d),
    }
}

/// Outcome of the exhaustive GF(p) search: either the first verified split
/// in enumeration order, or a certificate that every candidate pair fails.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Decomposition),
    Exhausted(ExhaustionCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustionCertificate {
    pub dim: usize,
    pub prime: u16,
    pub class: u32,
    /// Number of bracket-closed subspaces found, per dimension `1..dim`.
    pub closed_counts: Vec<(usize, u64)>,
    pub pairs_tested: u64,
}

impl ExhaustionCertificate {
    pub fn report_lines(&self) -> Vec<String> {
        let mut lines = vec![
            "outcome exhausted".to_string(),
            format!("dim {}", self.dim),
            format!("prime {}", self.prime),
            format!("class {}", self.class),
        ];
        for (k, c) in &self.closed_counts {
            lines.push(format!("closed-count {k} {c}"));
        }
        lines.push(format!("pairs-tested {}", self.pairs_tested));
        lines
    }
}

/// Build the GF(p) structure table and search it for a direct-sum split.
pub fn search_decomposition(
    graph: Arc<Graph>,
    m: u32,
    p: u16,
    dim_cap: usize,
) -> Result<SearchOutcome, AlgebraError> {
    let field = FieldTag::fp(u64::from(p))?;
    let tbl = StructureTable::build(graph, m, field, crate::nilpotent::DEFAULT_DIM_CAP)?;
    search_table(&tbl, dim_cap)
}

/// Search an existing GF(p) table: stage one collects every bracket-closed
/// subspace per dimension, stage two scans complementary-dimension pairs
/// (smaller dimension ascending, then both enumeration indices ascending)
/// for mutual annihilation and spanning. Deterministic throughout.
pub fn search_table(
    tbl: &StructureTable,
    dim_cap: usize,
) -> Result<SearchOutcome, AlgebraError> {
    let FieldTag::Fp(p) = tbl.context().field() else {
        return Err(AlgebraError::NeedsFiniteField);
    };
    let d = tbl.dim();
    if d > dim_cap {
        return Err(AlgebraError::DimensionCap {
            dim: d,
            cap: dim_cap,
        });
    }
    let field = tbl.context().field();

    let mut closed: Vec<Vec<Subspace>> = vec![Vec::new(); d.max(1)];
    let mut closed_counts = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for k in 1..d {
        let mut list = Vec::new();
        for rows in enumerate_rref_matrices(d, k, p, field) {
            if is_bracket_closed(tbl, &rows) {
                list.push(Subspace::from_rows(field, d, rows));
            }
        }
        closed_counts.push((k, list.len() as u64));
        closed[k] = list;
    }

    let mut pairs_tested = 0u64;
    for k in 1..=d / 2 {
        let other = d - k;
        if other == 0 || other >= d {
            continue;
        }
        for (ui, u) in closed[k].iter().enumerate() {
            let w_list = &closed[other];
            for (wi, w) in w_list.iter().enumerate() {
                if k == other && wi <= ui {
                    continue;
                }
                pairs_tested += 1;
                if u.sum(w).dim() != d {
                    continue;
                }
                let annihilate = u.rows().iter().all(|a| {
                    w.rows()
                        .iter()
                        .all(|b| bracket_vectors(tbl, a, b).iter().all(Scalar::is_zero))
                });
                if !annihilate {
                    continue;
                }
                let report = verify_subspace_split(tbl, u, w);
                if report.all_pass() {
                    let render = |s: &Subspace| -> Vec<LiePoly> {
                        s.rows().iter().map(|r| tbl.vec_to_poly(r)).collect()
                    };
                    return Ok(SearchOutcome::Found(Decomposition {
                        kind: SplitKind::Subspace(SubspaceSplit {
                            l1: u.clone(),
                            l2: w.clone(),
                            l1_basis: render(u),
                            l2_basis: render(w),
                        }),
                        report,
                    }));
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted(ExhaustionCertificate {
        dim: d,
        prime: p,
        class: tbl.class(),
        closed_counts,
        pairs_tested,
    }))
}

/// All k-dimensional subspaces of `F_p^d` as reduced-row-echelon row sets,
/// sorted by the flattened row-major entry list (residues ascending).
fn enumerate_rref_matrices(
    d: usize,
    k: usize,
    p: u16,
    field: FieldTag,
) -> Vec<Vec<Vec<Scalar>>> {
    let mut keyed: Vec<(Vec<u16>, Vec<Vec<Scalar>>)> = Vec::new();
    let scalars: Vec<Scalar> = (0..p).map(|v| field.from_i64(i64::from(v))).collect();
    for pivots in combinations(d, k) {
        let mut free_positions: Vec<(usize, usize)> = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in (pc + 1)..d {
                if !pivots.contains(&c) {
                    free_positions.push((r, c));
                }
            }
        }
        let mut digits = vec![0u16; free_positions.len()];
        loop {
            let mut values = vec![vec![0u16; d]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                values[r][pc] = 1;
            }
            for (&(r, c), &v) in free_positions.iter().zip(&digits) {
                values[r][c] = v;
            }
            let key: Vec<u16> = values.iter().flatten().copied().collect();
            let rows: Vec<Vec<Scalar>> = values
                .iter()
                .map(|row| row.iter().map(|&v| scalars[v as usize].clone()).collect())
                .collect();
            keyed.push((key, rows));

            let mut pos = free_positions.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, rows)| rows).collect()
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            rec(c + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(0, d, k, &mut cur, &mut out);
    out
}

fn is_bracket_closed(tbl: &StructureTable, rows: &[Vec<Scalar>]) -> bool {
    let probe = Subspace::from_rows(tbl.context().field(), tbl.dim(), rows.to_vec());
    for (a, u) in rows.iter().enumerate() {
        for v in &rows[a + 1..] {
            if !probe.contains(&bracket_vectors(tbl, u, v)) {
                return false;
            }
        }
    }
    true
}

/// The fixed element suite for centralizer cross-checks: every generator,
/// every two-generator sum, every degree-2 basis monomial, and one seeded
/// pseudo-random element per multidegree of total degree at most 2.
pub fn structured_centralizer_suite(tbl: &StructureTable, seed: u64) -> Vec<LiePoly> {
    let field = tbl.context().field();
    let n = tbl.context().n();
    let d = tbl.dim();
    let unit = |i: usize| -> LiePoly {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        tbl.vec_to_poly(&v)
    };
    let mut out = Vec::new();
    for i in 0..n as usize {
        out.push(unit(i));
    }
    for i in 0..n as usize {
        for j in (i + 1)..n as usize {
            let mut v = vec![field.zero(); d];
            v[i] = field.one();
            v[j] = field.one();
            out.push(tbl.vec_to_poly(&v));
        }
    }
    for i in 0..d {
        if tbl.basis_degree(i) == 2 {
            out.push(unit(i));
        }
    }
    let mut rng = SplitMix64(seed);
    let mut by_mdeg: BTreeMap<MultiDegree, Vec<usize>> = BTreeMap::new();
    for i in 0..d {
        if tbl.basis_degree(i) <= 2 {
            by_mdeg.entry(tbl.basis_mdeg(i).clone()).or_default().push(i);
        }
    }
    for (_, indices) in by_mdeg {
        let mut v = vec![field.zero(); d];
        let mut all_zero = true;
        for &i in &indices {
            let c = field.from_i64((rng.next() % 5) as i64 - 2);
            if !c.is_zero() {
                all_zero = false;
            }
            v[i] = c;
        }
        if all_zero {
            v[indices[0]] = field.one();
        }
        out.push(tbl.vec_to_poly(&v));
    }
    out
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::build_structure;
    use crate::parse::parse_expr;

    fn graph(n: u16, edges: &[(u16, u16)]) -> Arc<Graph> {
        Arc::new(Graph::with_edges(n, edges).unwrap())
    }

    fn table(g: &Arc<Graph>, m: u32) -> StructureTable {
        build_structure(Arc::clone(g), m, FieldTag::Rational).unwrap()
    }

    fn nf(tbl: &StructureTable, text: &str) -> LiePoly {
        let e = parse_expr(text, tbl.context().n(), tbl.context().field()).unwrap();
        tbl.nf_expr(&e).unwrap()
    }

    #[test]
    fn component_split_groups_by_complement() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        let tbl = table(&g, 2);
        let x = nf(&tbl, "a1 + a2 + a3");
        let parts = complement_component_split(&x).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0.to_string(), "{a1,a3}");
        assert_eq!(parts[0].1.to_string(), "1*a1 + 1*a3");
        assert_eq!(parts[1].0.to_string(), "{a2}");
        assert_eq!(parts[1].1.to_string(), "1*a2");
        let back = parts[0].1.checked_add(&parts[1].1).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn component_split_single_part() {
        let g = graph(2, &[]);
        let tbl = table(&g, 2);
        let x = nf(&tbl, "[a2,a1]");
        let parts = complement_component_split(&x).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0.to_string(), "{a1,a2}");
        assert_eq!(parts[0].1, x);

        let zero = LiePoly::zero(tbl.context().clone());
        assert!(matches!(
            complement_component_split(&zero),
            Err(AlgebraError::ZeroElement)
        ));
    }

    #[test]
    fn centralizer_in_abelian_algebra_is_everything() {
        let g = graph(3, &[(1, 2), (1, 3), (2, 3)]);
        let tbl = table(&g, 3);
        let x = nf(&tbl, "a1 + 2*a3");
        let c = centralizer_computed(&tbl, &x).unwrap();
        assert_eq!(c.dim(), tbl.dim());
        let cmp = compare_centralizers(&tbl, &x).unwrap();
        assert!(cmp.matches);
    }

    #[test]
    fn centralizer_of_generator_with_one_edge() {
        let g = graph(3, &[(1, 2)]);
        let tbl = table(&g, 3);
        let x = nf(&tbl, "a1");
        let cmp = compare_centralizers(&tbl, &x).unwrap();
        assert_eq!(cmp.window, 2);
        assert!(cmp.matches);
        // In degrees <= 2 the centralizer is exactly span{a1, a2}.
        assert_eq!(cmp.computed_windowed.dim(), 2);
        let a1v = tbl.poly_to_vec(&nf(&tbl, "a1")).unwrap();
        let a2v = tbl.poly_to_vec(&nf(&tbl, "a2")).unwrap();
        assert!(cmp.computed_windowed.contains(&a1v));
        assert!(cmp.computed_windowed.contains(&a2v));
    }

    #[test]
    fn centralizer_of_generator_sum_in_free_class_two() {
        let g = graph(2, &[]);
        let tbl = table(&g, 2);
        let x = nf(&tbl, "a1 + a2");
        let c = centralizer_computed(&tbl, &x).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&tbl.poly_to_vec(&x).unwrap()));
        assert!(c.contains(&tbl.poly_to_vec(&nf(&tbl, "[a2,a1]")).unwrap()));
        // The degree-2 member is a truncation artifact; on the faithful
        // window both sides agree on the line through x.
        let cmp = compare_centralizers(&tbl, &x).unwrap();
        assert_eq!(cmp.window, 1);
        assert!(cmp.matches);
        assert_eq!(cmp.computed_windowed.dim(), 1);
    }

    #[test]
    fn centralizer_hull_monomials_enter_the_prediction() {
        let g = graph(3, &[(1, 2)]);
        let tbl = table(&g, 3);
        let x = nf(&tbl, "a1");
        let desc = centralizer_predicted(&tbl, &x).unwrap();
        assert_eq!(desc.hull.to_string(), "{a2}");
        assert_eq!(desc.parts.len(), 1);
        assert_eq!(desc.subspace.dim(), 2);
    }

    #[test]
    fn decomposability_matches_complement_connectivity() {
        let k2 = is_decomposable(&graph(2, &[(1, 2)])).unwrap();
        assert!(k2.decomposable);
        assert_eq!(k2.complement_components.len(), 2);

        let free2 = is_decomposable(&graph(2, &[])).unwrap();
        assert!(!free2.decomposable);

        let p3 = is_decomposable(&graph(3, &[(1, 2), (2, 3)])).unwrap();
        assert!(p3.decomposable);
        let parts: Vec<String> = p3
            .complement_components
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(parts, vec!["{a1,a3}", "{a2}"]);

        assert_eq!(
            is_decomposable(&Graph::new(1)),
            Err(AlgebraError::TooFewVertices)
        );
    }

    #[test]
    fn split_path_graph_nilpotent() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        let d = split(
            &g,
            SplitSetting::Nilpotent {
                m: 3,
                field: FieldTag::Rational,
                dim_cap: crate::nilpotent::DEFAULT_DIM_CAP,
            },
        )
        .unwrap();
        let SplitKind::Vertex { a1, a2 } = &d.kind else {
            panic!("expected a vertex split");
        };
        assert_eq!(a1.to_string(), "{a1,a3}");
        assert_eq!(a2.to_string(), "{a2}");
        assert!(d.report.all_pass());
    }

    #[test]
    fn split_k2_metabelian() {
        let g = graph(2, &[(1, 2)]);
        let d = split(
            &g,
            SplitSetting::Metabelian {
                max_degree: 4,
                field: FieldTag::Rational,
            },
        )
        .unwrap();
        assert!(d.report.all_pass());
        assert_eq!(d.report.dims, (1, 1, 2));
    }

    #[test]
    fn split_groups_smallest_component_against_the_rest() {
        let g = graph(3, &[(1, 2), (1, 3), (2, 3)]);
        let d = split(
            &g,
            SplitSetting::Nilpotent {
                m: 2,
                field: FieldTag::Rational,
                dim_cap: crate::nilpotent::DEFAULT_DIM_CAP,
            },
        )
        .unwrap();
        let SplitKind::Vertex { a1, a2 } = &d.kind else {
            panic!("expected a vertex split");
        };
        assert_eq!(a1.to_string(), "{a1}");
        assert_eq!(a2.to_string(), "{a2,a3}");
        assert!(d.report.all_pass());
    }

    #[test]
    fn split_refuses_connected_complement() {
        let g = graph(2, &[]);
        let err = split(
            &g,
            SplitSetting::Nilpotent {
                m: 2,
                field: FieldTag::Rational,
                dim_cap: crate::nilpotent::DEFAULT_DIM_CAP,
            },
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::NotDecomposable);
    }

    #[test]
    fn verify_rejects_bad_subspace_pairs() {
        let g = graph(2, &[]);
        let tbl = table(&g, 2);
        let full = Subspace::full(FieldTag::Rational, 3);
        let r = verify_subspace_split(&tbl, &full, &full);
        assert!(!r.trivial_intersection);
        assert!(!r.all_pass());

        let line = |i: usize| {
            let mut v = vec![FieldTag::Rational.zero(); 3];
            v[i] = FieldTag::Rational.one();
            Subspace::from_rows(FieldTag::Rational, 3, vec![v])
        };
        let r = verify_subspace_split(&tbl, &line(0), &line(1));
        assert!(!r.spanning, "the bracket monomial is not spanned");
        assert!(!r.all_pass());
    }

    #[test]
    fn search_finds_split_for_k2() {
        let g = graph(2, &[(1, 2)]);
        let out = search_decomposition(g, 2, 3, DEFAULT_SEARCH_DIM_CAP).unwrap();
        let SearchOutcome::Found(d) = out else {
            panic!("split must exist");
        };
        assert!(d.report.all_pass());
        let SplitKind::Subspace(s) = &d.kind else {
            panic!("search yields subspace splits");
        };
        assert_eq!(s.l1.dim(), 1);
        assert_eq!(s.l2.dim(), 1);
        assert_eq!(s.l1_basis[0].to_string(), "1*a2");
        assert_eq!(s.l2_basis[0].to_string(), "1*a1");
    }

    #[test]
    fn search_exhausts_free_two_generator_case() {
        let g = graph(2, &[]);
        let out = search_decomposition(g, 2, 2, DEFAULT_SEARCH_DIM_CAP).unwrap();
        let SearchOutcome::Exhausted(cert) = out else {
            panic!("no split exists");
        };
        assert_eq!(cert.dim, 3);
        assert_eq!(cert.prime, 2);
        assert!(cert.pairs_tested > 0);
        assert_eq!(cert.closed_counts.len(), 2);
    }

    #[test]
    fn search_rediscovers_path_graph_split() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        let out = search_decomposition(g, 2, 2, DEFAULT_SEARCH_DIM_CAP).unwrap();
        let SearchOutcome::Found(d) = out else {
            panic!("split must exist");
        };
        let SplitKind::Subspace(s) = &d.kind else {
            panic!("search yields subspace splits");
        };
        assert_eq!(s.l1.dim(), 1);
        assert_eq!(s.l1_basis[0].to_string(), "1*a2");
        assert_eq!(s.l2.dim(), 3);
        let rendered: Vec<String> = s.l2_basis.iter().map(|p| p.to_string()).collect();
        assert_eq!(rendered, vec!["1*a1", "1*a3", "1*[a3,a1]"]);
    }

    #[test]
    fn search_respects_the_dimension_cap() {
        let g = graph(3, &[]);
        let err = search_decomposition(g, 3, 2, 8).unwrap_err();
        assert!(matches!(err, AlgebraError::DimensionCap { dim: 14, cap: 8 }));
    }

    #[test]
    fn search_requires_a_finite_field() {
        let g = graph(2, &[(1, 2)]);
        let tbl = table(&g, 2);
        assert!(matches!(
            search_table(&tbl, 8),
            Err(AlgebraError::NeedsFiniteField)
        ));
    }

    #[test]
    fn suite_is_deterministic_and_nonzero() {
        let g = graph(3, &[(1, 2)]);
        let tbl = table(&g, 3);
        let a = structured_centralizer_suite(&tbl, 42);
        let b = structured_centralizer_suite(&tbl, 42);
        assert_eq!(a, b);
        assert!(a.iter().all(|p| !p.is_zero()));
        let c = structured_centralizer_suite(&tbl, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn report_lines_are_stable() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        let d = split(
            &g,
            SplitSetting::Nilpotent {
                m: 2,
                field: FieldTag::Rational,
                dim_cap: crate::nilpotent::DEFAULT_DIM_CAP,
            },
        )
        .unwrap();
        assert_eq!(
            d.report_lines(),
            vec![
                "kind vertex-split",
                "part1 1,3",
                "part2 2",
                "check cross-bracket pass",
                "check spanning pass",
                "check trivial-intersection pass",
                "check closed-part1 pass",
                "check closed-part2 pass",
                "check nonzero pass",
                "dim1 3",
                "dim2 1",
                "dimtotal 4",
            ]
        );
    }

    #[test]
    fn vertex_split_dims_add_per_degree() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        let whole = table(&g, 3);
        let (g1, _) = g
            .induced_subgraph(&[1u16, 3].into_iter().collect())
            .unwrap();
        let (g2, _) = g.induced_subgraph(&[2u16].into_iter().collect()).unwrap();
        let t1 = table(&Arc::new(g1), 3);
        let t2 = table(&Arc::new(g2), 3);
        let whole_dims: Vec<usize> = whole
            .dim_report()
            .per_degree
            .iter()
            .map(|&(_, c)| c)
            .collect();
        let sum_dims: Vec<usize> = t1
            .dim_report()
            .per_degree
            .iter()
            .zip(t2.dim_report().per_degree.iter())
            .map(|(&(_, c1), &(_, c2))| c1 + c2)
            .collect();
        assert_eq!(whole_dims, sum_dims);
    }
}
