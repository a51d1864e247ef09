use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use pclie_core::{
    compare_centralizers, parse_expr, search_table, FieldTag, Graph, MetabelianEngine,
    StructureTable, DEFAULT_DIM_CAP, DEFAULT_SEARCH_DIM_CAP,
};

fn path_graph(n: u16) -> Arc<Graph> {
    let edges: Vec<(u16, u16)> = (1..n).map(|i| (i, i + 1)).collect();
    Arc::new(Graph::with_edges(n, edges).unwrap())
}

fn bench_build_structure(c: &mut Criterion) {
    let free3 = Arc::new(Graph::new(3));
    c.bench_function("build_structure free n=3 m=4", |b| {
        b.iter(|| {
            StructureTable::build(
                Arc::clone(&free3),
                black_box(4),
                FieldTag::Rational,
                DEFAULT_DIM_CAP,
            )
            .unwrap()
        })
    });
    let p4 = path_graph(4);
    c.bench_function("build_structure path n=4 m=4", |b| {
        b.iter(|| {
            StructureTable::build(
                Arc::clone(&p4),
                black_box(4),
                FieldTag::Rational,
                DEFAULT_DIM_CAP,
            )
            .unwrap()
        })
    });
}

fn bench_metabelian_nf(c: &mut Criterion) {
    let engine = MetabelianEngine::new(path_graph(4), FieldTag::Rational);
    let expr = parse_expr(
        "[[a4,a3],[a2,a1]] + 2*[a4,[a3,[a2,a1]]] - 1/3*[a1,a2,a3,a4,a1,a2]",
        4,
        FieldTag::Rational,
    )
    .unwrap();
    c.bench_function("metabelian nf, degree-6 expression", |b| {
        b.iter(|| engine.nf_expr(black_box(&expr)).unwrap())
    });
}

fn bench_search(c: &mut Criterion) {
    let p3 = path_graph(3);
    let found = StructureTable::build(p3, 2, FieldTag::fp(2).unwrap(), DEFAULT_DIM_CAP).unwrap();
    c.bench_function("search_table path n=3 (split exists)", |b| {
        b.iter(|| search_table(black_box(&found), DEFAULT_SEARCH_DIM_CAP).unwrap())
    });
    let free2 = Arc::new(Graph::new(2));
    let empty = StructureTable::build(free2, 2, FieldTag::fp(2).unwrap(), DEFAULT_DIM_CAP).unwrap();
    c.bench_function("search_table free n=2 (exhausts)", |b| {
        b.iter(|| search_table(black_box(&empty), DEFAULT_SEARCH_DIM_CAP).unwrap())
    });
}

fn bench_centralizer(c: &mut Criterion) {
    let tbl = StructureTable::build(
        Arc::new(Graph::new(3)),
        4,
        FieldTag::Rational,
        DEFAULT_DIM_CAP,
    )
    .unwrap();
    let x = tbl
        .nf_expr(&parse_expr("a1 + [a2,a3]", 3, FieldTag::Rational).unwrap())
        .unwrap();
    c.bench_function("compare_centralizers free n=3 m=4", |b| {
        b.iter(|| compare_centralizers(black_box(&tbl), black_box(&x)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_build_structure,
    bench_metabelian_nf,
    bench_search,
    bench_centralizer
);
criterion_main!(benches);
