use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dagshape_bench::{alternative, base_graph};
use dagshape_core::{
    concave_hull, layout_graph, score_aesthetics, Approach, ChangeType, EnhanceConfig, HullConfig, LayoutConfig,
    Pipeline,
};

fn layout(c: &mut Criterion) {
    let g = base_graph();
    let cfg = LayoutConfig::default();
    c.bench_function("layout/21x61", |b| b.iter(|| layout_graph(black_box(&g), &cfg).unwrap()));
}

fn hull(c: &mut Criterion) {
    let l = layout_graph(&base_graph(), &LayoutConfig::default()).unwrap();
    let cfg = HullConfig::default();
    c.bench_function("hull/21x61", |b| b.iter(|| concave_hull(black_box(&l), &cfg).unwrap()));
}

fn aesthetics(c: &mut Criterion) {
    let cfg = LayoutConfig::default();
    let l = layout_graph(&base_graph(), &cfg).unwrap();
    c.bench_function("aesthetics/21x61", |b| {
        b.iter(|| score_aesthetics(black_box(&l), &cfg.weights, cfg.horizontal_spacing))
    });
}

fn pipeline(c: &mut Criterion) {
    let base = base_graph();
    let (lc, hc, ec) = (LayoutConfig::default(), HullConfig::default(), EnhanceConfig::default());
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for (name, t) in [("add_node", ChangeType::AddNode), ("remove_edge", ChangeType::RemoveEdge)] {
        let alt = alternative(&base, t, 3);
        group.bench_function(name, |b| {
            b.iter(|| Pipeline::new(&base, &alt, &lc, &hc, &ec).unwrap().run(Approach::Ws3).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, layout, hull, aesthetics, pipeline);
criterion_main!(benches);
