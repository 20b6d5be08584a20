//! Parameter sweeps comparing exact optimal redundancy with the bounds.
//!
//! Each cell `(q, k, t, function)` runs the exact search and the bound
//! calculators. Cells run on a small worker pool; rows are always emitted in
//! grid-lex order (q, then k, then t, then function).

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::Rng;

use crate::bounds::{lower_bound, mds_equality, sphere_packing_min_r, upper_bound_binary};
use crate::channel::seeded_rng;
use crate::error::{Error, Result};
use crate::fcc::{builtin_function, FunctionTable};
use crate::message::message_count;
use crate::search::exact_redundancy;

pub const GRID_HEADER: [&str; 11] = [
    "q",
    "k",
    "t",
    "function_name",
    "exact_r",
    "lower_2t",
    "eq2_upper",
    "sphere_packing_r",
    "mds_equality",
    "nodes",
    "seconds",
];

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub qs: Vec<u32>,
    pub ks: Vec<usize>,
    pub ts: Vec<usize>,
    /// Built-in names, optionally with aux values (`threshold:2`,
    /// `linear:1,2,1`), or `random` for a seeded random 0/1 labelling.
    pub functions: Vec<String>,
    pub node_budget: u64,
    /// Cells with more than this many messages are not searched.
    pub max_messages: u64,
    pub seed: u64,
    /// Record wall-clock seconds; off keeps the output byte-reproducible.
    pub timing: bool,
    pub workers: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            qs: vec![2],
            ks: vec![2, 3],
            ts: vec![1],
            functions: vec!["or".into()],
            node_budget: crate::search::DEFAULT_NODE_BUDGET,
            max_messages: 64,
            seed: 0,
            timing: false,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub q: u32,
    pub k: usize,
    pub t: usize,
    pub function_name: String,
    /// `None` when the search budget ran out or the cell was too large.
    pub exact_r: Option<usize>,
    pub image_size: usize,
    pub lower_2t: usize,
    pub eq2_upper: Option<f64>,
    pub sphere_packing_r: usize,
    pub mds_equality: bool,
    pub nodes: u64,
    pub seconds: Option<f64>,
}

impl GridRow {
    pub fn record(&self) -> [String; 11] {
        [
            self.q.to_string(),
            self.k.to_string(),
            self.t.to_string(),
            self.function_name.clone(),
            self.exact_r
                .map_or_else(|| "budget".to_string(), |r| r.to_string()),
            self.lower_2t.to_string(),
            self.eq2_upper
                .map_or_else(|| "undef".to_string(), |u| format!("{u:.6}")),
            self.sphere_packing_r.to_string(),
            self.mds_equality.to_string(),
            self.nodes.to_string(),
            self.seconds
                .map_or_else(|| "off".to_string(), |s| format!("{s:.3}")),
        ]
    }
}

/// Resolves a grid function name to a table for one cell.
pub fn grid_function(name: &str, q: u32, k: usize, seed: u64) -> Result<FunctionTable> {
    let (base, aux) = match name.split_once(':') {
        Some((b, a)) => {
            let aux = a
                .split(',')
                .map(|v| {
                    v.trim().parse::<u64>().map_err(|_| {
                        Error::InvalidParameter(format!("bad aux value `{v}` in `{name}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (b, aux)
        }
        None => (name, Vec::new()),
    };
    match (base, aux.is_empty()) {
        ("random", _) => {
            let mut rng = seeded_rng(cell_seed(seed, q, k));
            FunctionTable::from_fn(q, k, |_| u64::from(rng.random_bool(0.5)))
        }
        ("linear", true) => builtin_function(base, q, k, &vec![1; k]),
        ("threshold", true) => builtin_function(base, q, k, &[k.div_ceil(2) as u64]),
        _ => builtin_function(base, q, k, &aux),
    }
}

fn cell_seed(seed: u64, q: u32, k: usize) -> u64 {
    seed ^ (u64::from(q) << 40) ^ ((k as u64) << 20) ^ 0x9e37_79b9_7f4a_7c15
}

struct Cell<'a> {
    q: u32,
    k: usize,
    t: usize,
    function: &'a str,
}

fn run_cell(spec: &GridSpec, cell: &Cell<'_>) -> Result<GridRow> {
    let start = Instant::now();
    let (q, k, t) = (cell.q, cell.k, cell.t);
    let mds = mds_equality(u64::from(q), k, t)?;
    let small = message_count(q, k).is_some_and(|n| n <= spec.max_messages);
    let (exact_r, image_size, nodes) = if small {
        let f = grid_function(cell.function, q, k, spec.seed)?;
        let image = f.image_size();
        match exact_redundancy(&f, t, spec.node_budget) {
            Ok(res) => (Some(res.r), image, res.nodes),
            Err(Error::SearchBudgetExceeded { nodes, .. }) => (None, image, nodes),
            Err(e) => return Err(e),
        }
    } else {
        // labels are not materialized; non-constant is assumed for the lower bound
        let image = if cell.function == "constant" { 1 } else { 2 };
        (None, image, 0)
    };
    Ok(GridRow {
        q,
        k,
        t,
        function_name: cell.function.to_string(),
        exact_r,
        image_size,
        lower_2t: lower_bound(image_size, t),
        eq2_upper: upper_bound_binary(k, t).ok(),
        sphere_packing_r: sphere_packing_min_r(q, k, t),
        mds_equality: mds,
        nodes,
        seconds: spec.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Runs every cell and writes the CSV (header plus one row per cell, LF
/// line endings) to `out`.
pub fn run_experiment_grid<W: Write>(spec: &GridSpec, out: W) -> Result<Vec<GridRow>> {
    for &q in &spec.qs {
        crate::gf::prime_power(u64::from(q)).ok_or(Error::InvalidOrder(u64::from(q)))?;
    }
    let mut cells = Vec::new();
    for &q in &spec.qs {
        for &k in &spec.ks {
            for &t in &spec.ts {
                for f in &spec.functions {
                    cells.push(Cell {
                        q,
                        k,
                        t,
                        function: f,
                    });
                }
            }
        }
    }

    let results: Vec<Mutex<Option<Result<GridRow>>>> =
        cells.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = spec.workers.clamp(1, cells.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(i) else { break };
                let row = run_cell(spec, cell);
                *results[i].lock().expect("result slot poisoned") = Some(row);
            });
        }
    });

    let rows = results
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("result slot poisoned")
                .expect("every cell was run")
        })
        .collect::<Result<Vec<GridRow>>>()?;

    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer.write_record(GRID_HEADER).map_err(io)?;
    for row in &rows {
        writer.write_record(row.record()).map_err(io)?;
    }
    writer.flush()?;
    Ok(rows)
}
