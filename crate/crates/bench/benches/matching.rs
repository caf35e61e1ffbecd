use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pivot_align::alignment::{compose_alignments, parse_alignment_tsv, serialize_alignment_tsv};
use pivot_align::lexicon::translate_ontology;
use pivot_align::matchers::{
    extract_alignment, lexical_matcher, semantic_matcher, structural_matcher, MatchConfig, PivotView,
};
use pivot_align::onto::{parse_turtle, serialize_turtle};
use pivot_align::pipeline::pivot_match;
use pivot_align_bench::{bundle, mirror, rng, sized_ontology};

const SIZES: [usize; 3] = [50, 150, 400];

fn turtle(c: &mut Criterion) {
    let mut g = c.benchmark_group("turtle");
    for n in SIZES {
        let text = serialize_turtle(&sized_ontology(n, 1, "a"));
        g.bench_with_input(BenchmarkId::new("parse", n), &text, |b, t| b.iter(|| parse_turtle(t).unwrap()));
    }
    g.finish();
}

fn translation(c: &mut Criterion) {
    let bundle = bundle();
    let mut g = c.benchmark_group("translate");
    for n in SIZES {
        let o = sized_ontology(n, 2, "a");
        g.bench_with_input(BenchmarkId::from_parameter(n), &o, |b, o| {
            b.iter(|| translate_ontology(o, &bundle).unwrap())
        });
    }
    g.finish();
}

fn matchers(c: &mut Criterion) {
    let bundle = bundle();
    let cfg = MatchConfig::default();
    let mut g = c.benchmark_group("matchers");
    g.sample_size(20);
    for n in SIZES {
        let o1 = sized_ontology(n, 3, "a");
        let (o2, _) = mirror(&mut rng(4), &o1, "b");
        let (t1, _) = translate_ontology(&o1, &bundle).unwrap();
        let (t2, _) = translate_ontology(&o2, &bundle).unwrap();
        let v1 = PivotView::new(&t1, "en", None).unwrap();
        let v2 = PivotView::new(&t2, "en", None).unwrap();
        g.bench_function(BenchmarkId::new("lexical", n), |b| b.iter(|| lexical_matcher(&v1, &v2)));
        g.bench_function(BenchmarkId::new("semantic", n), |b| {
            b.iter(|| semantic_matcher(&v1, &v2, &bundle.synonyms))
        });
        let seed = lexical_matcher(&v1, &v2);
        g.bench_function(BenchmarkId::new("structural", n), |b| {
            b.iter(|| structural_matcher(&seed, &t1, &t2, &cfg))
        });
        g.bench_function(BenchmarkId::new("extract", n), |b| {
            b.iter(|| extract_alignment(&seed, &o1, &o2, &cfg))
        });
    }
    g.finish();
}

fn end_to_end(c: &mut Criterion) {
    let bundle = bundle();
    let cfg = MatchConfig::default();
    let mut g = c.benchmark_group("pivot_match");
    g.sample_size(10);
    for n in SIZES {
        let o1 = sized_ontology(n, 5, "a");
        let (o2, _) = mirror(&mut rng(6), &o1, "b");
        g.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| pivot_match(&o1, &o2, &bundle, &cfg, None).unwrap())
        });
    }
    g.finish();
}

fn alignment_io(c: &mut Criterion) {
    let o = sized_ontology(400, 7, "a");
    let (_, planted) = mirror(&mut rng(8), &o, "b");
    let text = serialize_alignment_tsv(&planted);
    c.bench_function("tsv_parse_400", |b| b.iter(|| parse_alignment_tsv(&text).unwrap()));
    // both operands share the mirror as pivot
    c.bench_function("compose_400", |b| b.iter(|| compose_alignments(&planted, &planted).unwrap()));
}

criterion_group!(benches, turtle, translation, matchers, end_to_end, alignment_io);
criterion_main!(benches);
