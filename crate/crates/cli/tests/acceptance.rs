//! Acceptance checks. Prints one `PASS` or `FAIL` line per criterion and
//! exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use http_body_util::BodyExt;
use rand::Rng;
use tower::ServiceExt;

use pivot_align::alignment::{compose_alignments, parse_alignment_tsv, serialize_alignment_tsv, Alignment, Relation};
use pivot_align::lexicon::{outcome_counts, translate_ontology};
use pivot_align::matchers::{extract_alignment, CandidatePair, MatchConfig, MatcherId, SimilarityMatrix};
use pivot_align::onto::{classify_size, parse_turtle, serialize_turtle, EntityKind, Iri, Ontology, SizeClass};
use pivot_align::pipeline::load_bundle;
use pivot_align::{evaluate, pivot_match, Metric, PipelineConfig};
use pivot_align_bench::{mirror, random_alignment, random_ontology, rng, sized_ontology};
use pivot_align_cli::service::{router, ServiceState};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($fmt)+)),
        }
    };
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn read(name: &str) -> String {
    fs::read_to_string(fixture(name)).unwrap()
}

fn onto(name: &str) -> Ontology {
    parse_turtle(&read(name)).unwrap()
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:?}, limit {limit:?}"));
    }
    Ok(took)
}

fn ex(ns: &str, i: usize) -> Iri {
    Iri::new(format!("http://acc.example.org/{ns}#e{i:02}")).unwrap()
}

/// `results` correspondences, the first `tp` of which are in a reference
/// that also holds `reference - tp` pairs of its own.
fn synthetic(results: usize, reference: usize, tp: usize) -> (Alignment, Alignment) {
    let mut a = Alignment::new(None, None);
    let mut r = Alignment::new(None, None);
    for i in 0..results {
        let right = if i < tp { ex("r", i) } else { ex("wrong", i) };
        a.push(ex("l", i), right, Relation::Equivalence, 0.9).unwrap();
    }
    for i in 0..reference {
        r.push(ex("l", i), ex("r", i), Relation::Equivalence, 1.0).unwrap();
    }
    (a, r)
}

fn c1_precision_arithmetic() -> Check {
    let start = Instant::now();
    let mut seen = Vec::new();
    for (results, tp, expected, shown) in [
        (9, 7, 7.0 / 9.0, "0.7778"),
        (12, 8, 8.0 / 12.0, "0.6667"),
        (72, 6, 6.0 / 72.0, "0.0833"),
    ] {
        let (a, r) = synthetic(results, tp + 3, tp);
        let rep = evaluate(&a, &r).map_err(|e| e.to_string())?;
        let p = rep.precision.value().ok_or("precision undefined")?;
        ensure!((p - expected).abs() <= 1e-9, "|A|={results} tp={tp}: precision {p}");
        ensure!(rep.precision.to_string() == shown, "shown as {}", rep.precision);
        seen.push(shown);
    }
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("precision {} in {took:?}", seen.join(", ")))
}

fn c2_nan_semantics() -> Check {
    let start = Instant::now();
    let (a, r) = synthetic(191, 0, 0);
    let rep = evaluate(&a, &r).map_err(|e| e.to_string())?;
    ensure!(rep.precision == Metric::Score(0.0), "precision {}", rep.precision);
    ensure!(rep.recall.is_undefined() && rep.recall.to_string() == "NaN", "recall {}", rep.recall);
    ensure!(rep.to_text().contains("recall\tNaN\n"), "report text {:?}", rep.to_text());
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("precision 0.0000, recall NaN in {took:?}"))
}

fn c3_label_pair_recovery() -> Check {
    let start = Instant::now();
    let cfg = PipelineConfig::from_file(&fixture("labels.toml")).map_err(|e| e.to_string())?;
    ensure!(cfg.matching.threshold == 0.8, "threshold {}", cfg.matching.threshold);
    let stack: Vec<MatcherId> = MatcherId::WEIGHTED.into_iter().filter(|m| cfg.matching.enabled(*m)).collect();
    ensure!(stack == [MatcherId::Lexical, MatcherId::Semantic], "matcher stack {stack:?}");
    let bundle = load_bundle(&cfg).map_err(|e| e.to_string())?;
    let (a, _) = pivot_match(&onto("labels_o1.ttl"), &onto("labels_o2.ttl"), &bundle, &cfg.matching, None)
        .map_err(|e| e.to_string())?;
    let reference = parse_alignment_tsv(&read("reference_labels.tsv")).map_err(|e| e.to_string())?;
    ensure!(reference.len() == 8, "reference has {} pairs", reference.len());
    let rep = evaluate(&a, &reference).map_err(|e| e.to_string())?;
    ensure!(rep.recall == Metric::Score(1.0), "recall {}", rep.recall);
    let p = rep.precision.value().ok_or("precision undefined")?;
    ensure!(p >= 0.8, "precision {p}");
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("recall {} precision {} in {took:?}", rep.recall, rep.precision))
}

fn c4_size_classes() -> Check {
    let cases = [
        (192, SizeClass::Medium),
        (523, SizeClass::Large),
        (100, SizeClass::Small),
        (1001, SizeClass::ExtraLarge),
    ];
    for (n, want) in cases {
        ensure!(classify_size(n) == want, "{n} -> {:?}", classify_size(n));
    }
    Ok("192 medium, 523 large, 100 small, 1001 extra-large".into())
}

fn c5_structure_preservation() -> Check {
    let bundle = pivot_align_bench::bundle();
    let mut r = rng(5);
    let mut entities = 0;
    for case in 0..100 {
        let o = random_ontology(&mut r, 200, "a");
        let (t, outcomes) = translate_ontology(&o, &bundle).map_err(|e| e.to_string())?;
        let shape = |o: &Ontology| o.entities().map(|e| (e.iri.clone(), e.kind)).collect::<Vec<_>>();
        ensure!(shape(&t) == shape(&o), "case {case}: iris or kinds changed");
        ensure!(t.axioms().eq(o.axioms()), "case {case}: axioms changed");
        ensure!(
            outcome_counts(&outcomes).total() == o.entity_count(),
            "case {case}: counts {:?} for {} entities",
            outcome_counts(&outcomes),
            o.entity_count()
        );
        entities += o.entity_count();
    }
    Ok(format!("100 ontologies, {entities} entities"))
}

fn c6_cross_type_ablation() -> Check {
    let cfg = PipelineConfig::from_file(&fixture("roles.toml")).map_err(|e| e.to_string())?;
    let bundle = load_bundle(&cfg).map_err(|e| e.to_string())?;
    let (o1, o2) = (onto("dean_class.ttl"), onto("dean_individual.ttl"));
    let run = |crosstype: bool| {
        let m = MatchConfig { crosstype, ..cfg.matching.clone() };
        pivot_match(&o1, &o2, &bundle, &m, None).map(|r| r.0).map_err(|e| e.to_string())
    };
    let (with, without) = (run(true)?, run(false)?);
    let dean = (
        Iri::new("http://example.org/roles/a#Dean").unwrap(),
        Iri::new("http://example.org/roles/b#dean").unwrap(),
    );
    let hit = with
        .correspondences()
        .iter()
        .find(|c| (&c.entity1, &c.entity2) == (&dean.0, &dean.1))
        .ok_or("Dean pair missing with cross-type on")?;
    ensure!(hit.relation == Relation::CrossType && hit.relation.symbol() == "~", "relation {}", hit.relation);
    ensure!(hit.similarity == 1.0, "similarity {}", hit.similarity);
    ensure!(
        without.correspondences().iter().all(|c| (&c.entity1, &c.entity2) != (&dean.0, &dean.1)),
        "Dean pair present with cross-type off"
    );
    let rest: Vec<_> = with.correspondences().iter().filter(|c| c.relation != Relation::CrossType).collect();
    let off: Vec<_> = without.correspondences().iter().collect();
    ensure!(rest == off, "other correspondences differ");
    Ok(format!("Dean ~ dean at 1.0; {} other correspondences unchanged", off.len()))
}

const GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Trace oracle: scan the whole matrix for the best free cell, take it,
/// repeat. Ties go to the smaller (row, column).
fn oracle(cells: &[Vec<f64>], threshold: f64) -> Vec<(usize, usize, f64)> {
    let mut row_used = vec![false; cells.len()];
    let mut col_used = vec![false; cells.first().map_or(0, Vec::len)];
    let mut out = Vec::new();
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, row) in cells.iter().enumerate() {
            for (j, &s) in row.iter().enumerate() {
                if row_used[i] || col_used[j] || s <= 0.0 || s < threshold {
                    continue;
                }
                if best.is_none_or(|(_, _, b)| s > b) {
                    best = Some((i, j, s));
                }
            }
        }
        let Some((i, j, s)) = best else { return out };
        row_used[i] = true;
        col_used[j] = true;
        out.push((i, j, s));
    }
}

fn greedy(cells: &[Vec<f64>], threshold: f64) -> Vec<(usize, usize, f64)> {
    let mut m = SimilarityMatrix::new(MatcherId::Aggregate);
    for (i, row) in cells.iter().enumerate() {
        for (j, &s) in row.iter().enumerate() {
            m.insert(CandidatePair::new(ex("l", i), ex("r", j), (EntityKind::Class, EntityKind::Class)), s);
        }
    }
    let cfg = MatchConfig { threshold, ..MatchConfig::default() };
    let o = Ontology::new();
    let index = |iri: &Iri| iri.fragment()[1..].parse::<usize>().unwrap();
    extract_alignment(&m, &o, &o, &cfg)
        .correspondences()
        .iter()
        .map(|c| (index(&c.entity1), index(&c.entity2), c.similarity))
        .collect()
}

fn compare(cells: &[Vec<f64>], threshold: f64) -> Result<(), String> {
    let (g, o) = (greedy(cells, threshold), oracle(cells, threshold));
    ensure!(g == o, "matrix {cells:?} threshold {threshold}: greedy {g:?} oracle {o:?}");
    Ok(())
}

fn c7_extraction_oracle() -> Check {
    // shapes small enough to enumerate every grid matrix
    let mut exhaustive = 0usize;
    for rows in 1..=4 {
        for cols in 1..=4 {
            let n = rows * cols;
            if n > 8 {
                continue;
            }
            for code in 0..5usize.pow(n as u32) {
                let mut c = code;
                let cells: Vec<Vec<f64>> = (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| {
                                let v = GRID[c % 5];
                                c /= 5;
                                v
                            })
                            .collect()
                    })
                    .collect();
                let threshold = GRID[1 + code % 4];
                compare(&cells, threshold)?;
                exhaustive += 1;
            }
        }
    }
    // the rest are sampled
    let mut r = rng(7);
    let mut sampled = 0usize;
    for (rows, cols) in [(3, 3), (3, 4), (4, 3), (4, 4)] {
        for _ in 0..20_000 {
            let cells: Vec<Vec<f64>> =
                (0..rows).map(|_| (0..cols).map(|_| GRID[r.gen_range(0..5)]).collect()).collect();
            compare(&cells, GRID[r.gen_range(1..5)])?;
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive matrices (<= 8 cells), {sampled} sampled (9-16 cells)"))
}

/// Identity alignment over the right-hand entities of `a`.
fn identity_pivot(a: &Alignment) -> Alignment {
    let mut id = Alignment::new(a.onto2.clone(), a.onto2.clone());
    let rights: BTreeSet<&Iri> = a.correspondences().iter().map(|c| &c.entity2).collect();
    for e in rights {
        id.push(e.clone(), e.clone(), Relation::Equivalence, 1.0).unwrap();
    }
    id
}

fn fixture_alignments() -> Result<Vec<(String, Alignment)>, String> {
    let mut out = Vec::new();
    for name in ["reference_fub_fayoum.tsv", "reference_labels.tsv"] {
        out.push((name.to_string(), parse_alignment_tsv(&read(name)).map_err(|e| e.to_string())?));
    }
    let cfg = PipelineConfig::from_file(&fixture("roles.toml")).map_err(|e| e.to_string())?;
    let bundle = load_bundle(&cfg).map_err(|e| e.to_string())?;
    let (dean, _) = pivot_match(&onto("dean_class.ttl"), &onto("dean_individual.ttl"), &bundle, &cfg.matching, None)
        .map_err(|e| e.to_string())?;
    out.push(("dean run".into(), dean));
    Ok(out)
}

fn c8_composition() -> Check {
    let fixtures = fixture_alignments()?;
    for (name, a) in &fixtures {
        let composed = compose_alignments(a, &identity_pivot(a)).map_err(|e| e.to_string())?;
        // the producing config is not part of an alignment's content
        let same = composed.onto1 == a.onto1 && composed.onto2 == a.onto2 && composed.correspondences() == a.correspondences();
        ensure!(same, "{name}: identity composition changed the alignment");
    }
    let mut r = rng(8);
    for case in 0..1000 {
        let n = r.gen_range(1..8);
        let a13 = random_alignment(&mut r, n, "o1", "o3");
        let a23 = random_alignment(&mut r, n, "o2", "o3");
        let out = compose_alignments(&a13, &a23).map_err(|e| e.to_string())?;
        let best = |a: &Alignment, e: &Iri| {
            a.correspondences().iter().filter(|c| &c.entity1 == e).map(|c| c.similarity).fold(0.0, f64::max)
        };
        for c in out.correspondences() {
            ensure!(
                c.similarity <= best(&a13, &c.entity1) && c.similarity <= best(&a23, &c.entity2),
                "case {case}: {} {} {} exceeds an operand",
                c.entity1,
                c.entity2,
                c.similarity
            );
        }
    }
    Ok(format!("{} fixture alignments unchanged, 1000 fuzz cases bounded", fixtures.len()))
}

fn c9_round_trips() -> Check {
    let ttl = ["fub_de.ttl", "fayoum_ar.ttl", "labels_o1.ttl", "labels_o2.ttl", "dean_class.ttl", "dean_individual.ttl"];
    for name in ttl {
        let o = onto(name);
        let text = serialize_turtle(&o);
        let back = parse_turtle(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure!(back == o && serialize_turtle(&back) == text, "{name}: Turtle round trip");
    }
    for name in ["reference_fub_fayoum.tsv", "reference_labels.tsv"] {
        let a = parse_alignment_tsv(&read(name)).map_err(|e| e.to_string())?;
        ensure!(serialize_alignment_tsv(&a) == read(name), "{name}: TSV round trip");
    }
    let mut r = rng(9);
    for case in 0..100 {
        let o = random_ontology(&mut r, 200, "a");
        let text = serialize_turtle(&o);
        let back = parse_turtle(&text).map_err(|e| format!("case {case}: {e}\n{text}"))?;
        ensure!(back == o && serialize_turtle(&back) == text, "case {case}: Turtle round trip");

        let a = random_alignment(&mut r, 12, "l", "r");
        let tsv = serialize_alignment_tsv(&a);
        let back = parse_alignment_tsv(&tsv).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(serialize_alignment_tsv(&back) == tsv, "case {case}: TSV round trip");
    }
    Ok(format!("{} fixtures, 100 random ontologies, 100 random alignments", ttl.len() + 2))
}

fn c10_end_to_end() -> Check {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("alignment.tsv");
    let status = Command::new(env!("CARGO_BIN_EXE_pivot-align"))
        .arg("match")
        .arg(fixture("fub_de.ttl"))
        .arg(fixture("fayoum_ar.ttl"))
        .arg("--config")
        .arg(fixture("pivot.toml"))
        .arg("--out")
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(status.status.success(), "cli failed: {}", String::from_utf8_lossy(&status.stderr));
    let cli_tsv = fs::read_to_string(&out).map_err(|e| e.to_string())?;

    let a = parse_alignment_tsv(&cli_tsv).map_err(|e| e.to_string())?;
    let reference = parse_alignment_tsv(&read("reference_fub_fayoum.tsv")).map_err(|e| e.to_string())?;
    let rep = evaluate(&a, &reference).map_err(|e| e.to_string())?;
    ensure!(
        rep.precision == Metric::Score(1.0) && rep.recall == Metric::Score(1.0),
        "precision {} recall {}",
        rep.precision,
        rep.recall
    );
    ensure!(cli_tsv == read("reference_fub_fayoum.tsv"), "cli output differs from the planted reference");

    let config = PipelineConfig::from_file(&fixture("pivot.toml")).map_err(|e| e.to_string())?;
    let bundle = load_bundle(&config).map_err(|e| e.to_string())?;
    let app = router(Arc::new(ServiceState { config, bundle }));
    let body = serde_json::json!({ "ontology1": read("fub_de.ttl"), "ontology2": read("fayoum_ar.ttl") }).to_string();
    let rt = tokio::runtime::Builder::new_current_thread().enable_all().build().map_err(|e| e.to_string())?;
    let (status, bytes) = rt.block_on(async {
        let req = Request::post("/match")
            .header(header::CONTENT_TYPE, "application/json")
            .body(Body::from(body))
            .unwrap();
        let resp = app.oneshot(req).await.unwrap();
        (resp.status(), resp.into_body().collect().await.unwrap().to_bytes())
    });
    ensure!(status == StatusCode::OK, "service status {status}");
    let json: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    let service_tsv = json["alignment"].as_str().ok_or("no alignment field")?;
    ensure!(service_tsv == cli_tsv, "service and cli alignments differ");
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("{} correspondences, P = R = 1.0, cli == service, {took:?}", a.len()))
}

fn c11_determinism() -> Check {
    let cfg = PipelineConfig::from_file(&fixture("pivot.toml")).map_err(|e| e.to_string())?;
    let bundle = load_bundle(&cfg).map_err(|e| e.to_string())?;
    let (de, ar) = (onto("fub_de.ttl"), onto("fayoum_ar.ttl"));
    let synth_bundle = pivot_align_bench::bundle();
    let s1 = sized_ontology(150, 11, "a");
    let (s2, _) = mirror(&mut rng(12), &s1, "b");
    let mut outputs: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    let mut sizes = (0, 0);
    for run in 0..10 {
        let threads = THREADS[run % THREADS.len()];
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        let (a, b) = pool.install(|| {
            let a = pivot_match(&de, &ar, &bundle, &cfg.matching, None);
            let b = pivot_match(&s1, &s2, &synth_bundle, &MatchConfig::default(), None);
            (a, b)
        });
        let (a, b) = (a.map_err(|e| e.to_string())?.0, b.map_err(|e| e.to_string())?.0);
        outputs.entry("fixtures").or_default().insert(serialize_alignment_tsv(&a));
        sizes = (a.len(), b.len());
        outputs.entry("synthetic").or_default().insert(serialize_alignment_tsv(&b));
    }
    ensure!(sizes.0 > 0 && sizes.1 > 0, "empty alignments {sizes:?}");
    for (name, distinct) in &outputs {
        ensure!(distinct.len() == 1, "{name}: {} distinct outputs over 10 runs", distinct.len());
    }
    Ok(format!(
        "10 runs each on fixtures ({} rows) and a 150-entity synthetic pair ({} rows), pools of {THREADS:?} threads",
        sizes.0, sizes.1
    ))
}

const THREADS: [usize; 5] = [1, 2, 3, 4, 8];

fn main() {
    let criteria: [Criterion; 11] = [
        ("precision arithmetic", c1_precision_arithmetic),
        ("undefined recall", c2_nan_semantics),
        ("label pair recovery", c3_label_pair_recovery),
        ("size classification", c4_size_classes),
        ("structure preservation", c5_structure_preservation),
        ("cross-type ablation", c6_cross_type_ablation),
        ("extraction oracle", c7_extraction_oracle),
        ("composition", c8_composition),
        ("round trips", c9_round_trips),
        ("end-to-end pivot run", c10_end_to_end),
        ("determinism", c11_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
