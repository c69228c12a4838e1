use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gencluster::cases::case_seed;
use gencluster::pattern::TreeWord;
use gencluster::verify::{random_instances, run_all, run_tasks_sequential, Check, Instance, Task};

fn case_tasks(check: Check, depth: usize) -> Vec<Task> {
    let mut tasks = Vec::new();
    for case in [1, 2] {
        let instance = Instance::new(format!("case{case}"), case_seed(case).unwrap());
        for word in TreeWord::all_up_to(2, depth) {
            tasks.push(Task { check, instance: instance.clone(), word });
        }
    }
    tasks
}

fn random_tasks(trials: usize) -> Vec<Task> {
    random_instances(7, trials, 6)
        .unwrap()
        .into_iter()
        .map(|(instance, word)| Task { check: Check::Enlargement, instance, word })
        .collect()
}

fn sweeps(c: &mut Criterion) {
    let workloads = [
        ("y-realization", case_tasks(Check::YRealization, 3)),
        ("x-realization", case_tasks(Check::XRealization, 3)),
        ("enlargement", random_tasks(32)),
    ];
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, tasks) in &workloads {
        group.bench_with_input(BenchmarkId::new("rayon", name), tasks, |b, t| b.iter(|| run_all(black_box(t))));
        group.bench_with_input(BenchmarkId::new("sequential", name), tasks, |b, t| {
            b.iter(|| run_tasks_sequential(black_box(t)))
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
