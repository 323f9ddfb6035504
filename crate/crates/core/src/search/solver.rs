//! Depth-first branch and bound for maximum independent sets in a mixed
//! 2/3-uniform hypergraph.
//!
//! Vertices are relabelled by descending constraint degree (ties by index)
//! and the search always branches on the first remaining candidate,
//! including it before excluding it. Including a vertex removes its pair
//! partners and, for every triple whose other two members are one chosen
//! and one candidate, the candidate.
//!
//! The tree is run Russian-doll style: for `i = N-1` down to `0` the solver
//! computes `best[i]`, the maximum over the suffix `{i, .., N-1}`, by
//! searching only for sets that contain `i` and beat `best[i+1]`. A node
//! whose candidates all lie in the suffix starting at `j` is pruned when
//! `|chosen| + min(|candidates|, best[j])` cannot beat the incumbent.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Outcome of a solver run over vertex indices.
#[derive(Clone, Debug)]
pub(crate) struct SolveOutcome {
    /// Best independent set found, as sorted input vertex indices.
    pub best: Vec<usize>,
    pub nodes: u64,
    pub timed_out: bool,
}

#[derive(Clone)]
struct Graph {
    words: usize,
    /// Pair partners per position.
    pair_nbrs: Vec<Vec<u32>>,
    /// For each position, the other two positions of every triple through it.
    triple_nbrs: Vec<Vec<(u32, u32)>>,
}

struct Shared {
    best_size: AtomicUsize,
    best: Mutex<Vec<u32>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    /// Set once the current level has found its improving set.
    level_found: AtomicBool,
    deadline: Option<Instant>,
}

struct Worker<'a> {
    graph: &'a Graph,
    shared: &'a Shared,
    /// `doll[j]`: exact maximum within the suffix starting at position `j`.
    doll: &'a [usize],
    chosen: Vec<u32>,
    chosen_bits: Vec<u64>,
    /// One candidate buffer per depth, reused across siblings.
    buffers: Vec<Vec<u64>>,
    nodes: u64,
}

#[inline]
fn test(bits: &[u64], i: u32) -> bool {
    bits[(i / 64) as usize] >> (i % 64) & 1 == 1
}

#[inline]
fn set(bits: &mut [u64], i: u32) {
    bits[(i / 64) as usize] |= 1 << (i % 64);
}

#[inline]
fn clear(bits: &mut [u64], i: u32) {
    bits[(i / 64) as usize] &= !(1 << (i % 64));
}

#[inline]
fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn first(bits: &[u64]) -> Option<u32> {
    bits.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
}

impl<'a> Worker<'a> {
    fn new(graph: &'a Graph, shared: &'a Shared, doll: &'a [usize]) -> Self {
        Self {
            graph,
            shared,
            doll,
            chosen: Vec::new(),
            chosen_bits: vec![0; graph.words],
            buffers: Vec::new(),
            nodes: 0,
        }
    }

    fn buffer(&mut self, depth: usize) -> Vec<u64> {
        if depth >= self.buffers.len() {
            self.buffers.resize_with(depth + 1, || vec![0; self.graph.words]);
        }
        std::mem::take(&mut self.buffers[depth])
    }

    fn record(&self) {
        let mut best = self.shared.best.lock().unwrap();
        if self.chosen.len() > self.shared.best_size.load(Ordering::Acquire) {
            best.clone_from(&self.chosen);
            self.shared.best_size.store(best.len(), Ordering::Release);
            self.shared.level_found.store(true, Ordering::Release);
        }
    }

    fn should_stop(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 4095 == 1 {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.shared.stop.load(Ordering::Relaxed) || self.shared.level_found.load(Ordering::Relaxed)
    }

    /// Candidates after including `v` into the current choice.
    fn include_into(&self, cand: &[u64], v: u32, out: &mut [u64]) {
        out.copy_from_slice(cand);
        clear(out, v);
        for &p in &self.graph.pair_nbrs[v as usize] {
            clear(out, p);
        }
        for &(a, b) in &self.graph.triple_nbrs[v as usize] {
            if test(&self.chosen_bits, a) {
                clear(out, b);
            } else if test(&self.chosen_bits, b) {
                clear(out, a);
            }
        }
    }

    fn expand(&mut self, cand: &[u64], depth: usize) {
        if self.should_stop() {
            return;
        }
        let incumbent = self.shared.best_size.load(Ordering::Acquire);
        if self.chosen.len() > incumbent {
            self.record();
            return;
        }
        let Some(v) = first(cand) else {
            return;
        };
        let remaining = count(cand).min(self.doll[v as usize]);
        if self.chosen.len() + remaining <= incumbent {
            return;
        }

        let mut next = self.buffer(depth);
        self.include_into(cand, v, &mut next);
        self.chosen.push(v);
        set(&mut self.chosen_bits, v);
        self.expand(&next, depth + 1);
        self.chosen.pop();
        clear(&mut self.chosen_bits, v);

        next.copy_from_slice(cand);
        clear(&mut next, v);
        self.expand(&next, depth + 1);
        self.buffers[depth] = next;
    }
}

/// A node of the top of the search tree, handed to a worker.
struct Task {
    chosen: Vec<u32>,
    cand: Vec<u64>,
}

/// Splits the root into at least `target` independent subtrees by
/// breadth-first include/exclude branching, in canonical order.
fn split(graph: &Graph, shared: &Shared, root: Task, target: usize) -> Vec<Task> {
    let mut frontier = vec![root];
    let mut worker = Worker::new(graph, shared, &[]);
    while frontier.len() < target {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        let mut grew = false;
        for task in frontier {
            let Some(v) = first(&task.cand) else {
                next.push(task);
                continue;
            };
            grew = true;
            worker.chosen.clone_from(&task.chosen);
            worker.chosen_bits.fill(0);
            for &c in &task.chosen {
                set(&mut worker.chosen_bits, c);
            }
            let mut inc = vec![0; graph.words];
            worker.include_into(&task.cand, v, &mut inc);
            let mut chosen = task.chosen.clone();
            chosen.push(v);
            next.push(Task { chosen, cand: inc });
            let mut exc = task.cand;
            clear(&mut exc, v);
            next.push(Task { chosen: task.chosen, cand: exc });
        }
        frontier = next;
        if !grew {
            break;
        }
    }
    frontier
}

pub(crate) struct SolverConfig {
    pub workers: usize,
    pub timeout: Option<Duration>,
}

/// Maximum independent set of the hypergraph on `size` vertices.
pub(crate) fn solve(size: usize, pairs: &[[u32; 2]], triples: &[[u32; 3]], config: &SolverConfig) -> SolveOutcome {
    let mut degree = vec![0usize; size];
    for p in pairs {
        for &v in p {
            degree[v as usize] += 1;
        }
    }
    for t in triples {
        for &v in t {
            degree[v as usize] += 1;
        }
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    let mut pos = vec![0u32; size];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p as u32;
    }

    let words = size.div_ceil(64).max(1);
    let mut graph = Graph { words, pair_nbrs: vec![Vec::new(); size], triple_nbrs: vec![Vec::new(); size] };
    for &[a, b] in pairs {
        let (a, b) = (pos[a as usize], pos[b as usize]);
        graph.pair_nbrs[a as usize].push(b);
        graph.pair_nbrs[b as usize].push(a);
    }
    for &[a, b, c] in triples {
        let (a, b, c) = (pos[a as usize], pos[b as usize], pos[c as usize]);
        graph.triple_nbrs[a as usize].push((b, c));
        graph.triple_nbrs[b as usize].push((a, c));
        graph.triple_nbrs[c as usize].push((a, b));
    }

    let shared = Shared {
        best_size: AtomicUsize::new(0),
        best: Mutex::new(Vec::new()),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        level_found: AtomicBool::new(false),
        deadline: config.timeout.map(|t| Instant::now() + t),
    };
    let workers = config.workers.max(1);

    let mut doll = vec![0usize; size + 1];
    let mut suffix = vec![0u64; words];
    for i in (0..size as u32).rev() {
        if shared.stop.load(Ordering::Relaxed) {
            break;
        }
        shared.level_found.store(false, Ordering::Relaxed);
        let mut root = Task { chosen: vec![i], cand: vec![0; words] };
        Worker::new(&graph, &shared, &[]).include_into(&suffix, i, &mut root.cand);
        run_level(&graph, &shared, &doll, root, workers);
        doll[i as usize] = shared.best_size.load(Ordering::Acquire);
        set(&mut suffix, i);
    }

    let mut best: Vec<usize> = shared.best.into_inner().unwrap().into_iter().map(|p| order[p as usize]).collect();
    best.sort_unstable();
    SolveOutcome { best, nodes: shared.nodes.load(Ordering::Relaxed), timed_out: shared.stop.load(Ordering::Relaxed) }
}

/// Looks for an independent set extending `root` that beats the incumbent.
fn run_level(graph: &Graph, shared: &Shared, doll: &[usize], root: Task, workers: usize) {
    let load = |w: &mut Worker, task: &Task| {
        w.chosen.clone_from(&task.chosen);
        w.chosen_bits.fill(0);
        for &c in &task.chosen {
            set(&mut w.chosen_bits, c);
        }
    };
    if workers == 1 {
        let mut w = Worker::new(graph, shared, doll);
        load(&mut w, &root);
        w.expand(&root.cand, 0);
        shared.nodes.fetch_add(w.nodes, Ordering::Relaxed);
        return;
    }
    let tasks = split(graph, shared, root, workers * 16);
    let next_task = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut w = Worker::new(graph, shared, doll);
                loop {
                    let i = next_task.fetch_add(1, Ordering::Relaxed);
                    let Some(task) = tasks.get(i) else { break };
                    load(&mut w, task);
                    w.expand(&task.cand, 0);
                }
                shared.nodes.fetch_add(w.nodes, Ordering::Relaxed);
            });
        }
    });
}
