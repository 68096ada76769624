//! Backtracking search for homomorphisms.
//!
//! Each vertex of the source digraph is a variable whose domain is a bitset
//! over the target's vertices. Every source arc `(u, v)` is a binary
//! constraint `(f(u), f(v)) ∈ A(H)`. The search maintains arc consistency
//! (revising a neighbour against the union of the out- or in-rows of a
//! domain), picks the unassigned variable with the fewest candidates (ties by
//! index), and tries values in increasing order. Domain changes are recorded
//! on a trail so backtracking restores only what changed.

use std::time::Instant;

use crate::bits;
use crate::error::HomError;
use crate::graph::{BitRows, Digraph};

/// Revisions whose support computation would touch more words than this are
/// deferred until the domain shrinks; singleton domains are always revised,
/// so complete assignments are always consistent.
const REVISE_BUDGET: usize = 1 << 14;

#[derive(Clone, Debug)]
pub(crate) enum Mode {
    /// Stop at the first solution.
    Exists,
    /// Every solution.
    Enumerate,
    /// Distinct restrictions to `vars` of solutions.
    Project(Vec<usize>),
}

pub(crate) struct Limits {
    pub deadline: Option<Instant>,
    pub max_solutions: usize,
}

struct Csp<'a> {
    rows: &'a BitRows,
    w: usize,
    nv: usize,
    // (neighbour, true if the arc is var -> neighbour)
    cons: Vec<Vec<(u32, bool)>>,
    /// `Some(k)` when the target is `K_k`; enables colour-symmetry breaking.
    complete_k: Option<usize>,
    in_proj: Vec<bool>,
}

struct TrailEntry {
    var: u32,
    size: u32,
    prev_stamp: u64,
}

struct State {
    dom: Vec<u64>,
    size: Vec<u32>,
    stamp: Vec<u64>,
    cur: u64,
    trail: Vec<TrailEntry>,
    saved: Vec<u64>,
    queue: Vec<u32>,
    queued: Vec<bool>,
    sup_out: Vec<u64>,
    sup_in: Vec<u64>,
}

enum Narrow {
    Same,
    Changed,
    Wiped,
}

impl State {
    #[inline]
    fn dom(&self, v: usize, w: usize) -> &[u64] {
        &self.dom[v * w..(v + 1) * w]
    }

    fn save(&mut self, v: usize, w: usize) {
        if self.stamp[v] != self.cur {
            self.trail.push(TrailEntry { var: v as u32, size: self.size[v], prev_stamp: self.stamp[v] });
            self.saved.extend_from_slice(&self.dom[v * w..(v + 1) * w]);
            self.stamp[v] = self.cur;
        }
    }

    fn restore(&mut self, mark: usize, w: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("non-empty");
            let v = e.var as usize;
            let start = self.saved.len() - w;
            self.dom[v * w..(v + 1) * w].copy_from_slice(&self.saved[start..]);
            self.saved.truncate(start);
            self.size[v] = e.size;
            self.stamp[v] = e.prev_stamp;
        }
    }

    fn narrow(&mut self, v: usize, mask: &[u64], w: usize) -> Narrow {
        let d = &self.dom[v * w..(v + 1) * w];
        if d.iter().zip(mask).all(|(a, m)| a & m == *a) {
            return Narrow::Same;
        }
        self.save(v, w);
        let d = &mut self.dom[v * w..(v + 1) * w];
        let mut c = 0u32;
        for (a, m) in d.iter_mut().zip(mask) {
            *a &= m;
            c += a.count_ones();
        }
        self.size[v] = c;
        if c == 0 {
            Narrow::Wiped
        } else {
            Narrow::Changed
        }
    }

    fn enqueue(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push(v as u32);
        }
    }

    fn clear_queue(&mut self) {
        for &v in &self.queue {
            self.queued[v as usize] = false;
        }
        self.queue.clear();
    }

    fn propagate(&mut self, csp: &Csp) -> bool {
        let w = csp.w;
        while let Some(x) = self.queue.pop() {
            let x = x as usize;
            self.queued[x] = false;
            let sx = self.size[x] as usize;
            if sx != 1 && sx * w > REVISE_BUDGET {
                continue;
            }
            let (need_out, need_in) =
                csp.cons[x].iter().fold((false, false), |(o, i), &(_, out)| (o || out, i || !out));
            if need_out {
                self.sup_out.iter_mut().for_each(|s| *s = 0);
            }
            if need_in {
                self.sup_in.iter_mut().for_each(|s| *s = 0);
            }
            for a in bits::iter_ones(&self.dom[x * w..(x + 1) * w]) {
                if need_out {
                    for (s, r) in self.sup_out.iter_mut().zip(csp.rows.out_row(a)) {
                        *s |= r;
                    }
                }
                if need_in {
                    for (s, r) in self.sup_in.iter_mut().zip(csp.rows.in_row(a)) {
                        *s |= r;
                    }
                }
            }
            for &(y, out) in &csp.cons[x] {
                let y = y as usize;
                let sup = if out { std::mem::take(&mut self.sup_out) } else { std::mem::take(&mut self.sup_in) };
                let r = self.narrow(y, &sup, w);
                if out {
                    self.sup_out = sup;
                } else {
                    self.sup_in = sup;
                }
                match r {
                    Narrow::Same => {}
                    Narrow::Changed => self.enqueue(y),
                    Narrow::Wiped => {
                        self.clear_queue();
                        return false;
                    }
                }
            }
        }
        true
    }
}

struct Frame {
    var: usize,
    cands: Vec<u32>,
    next: usize,
    mark: usize,
    /// Colours used by decisions below this frame (complete targets only).
    used: Vec<u64>,
}

/// Runs the search; solutions are returned as full maps (or projections) in
/// the order found.
pub(crate) fn search(g: &Digraph, h: &Digraph, mode: Mode, limits: &Limits) -> Result<Vec<Vec<u32>>, HomError> {
    let nv = g.vertex_count();
    let nh = h.vertex_count();
    if nv == 0 {
        return Ok(match mode {
            Mode::Project(_) | Mode::Exists | Mode::Enumerate => vec![Vec::new()],
        });
    }
    if nh == 0 {
        return Ok(Vec::new());
    }
    let rows = h.try_bit_rows()?;
    let w = rows.words;

    let mut cons = vec![Vec::new(); nv];
    let mut has_out = vec![false; nv];
    let mut has_in = vec![false; nv];
    let mut looped = vec![false; nv];
    for (a, b) in g.arcs() {
        if a == b {
            looped[a] = true;
        } else {
            cons[a].push((b as u32, true));
            cons[b].push((a as u32, false));
            has_out[a] = true;
            has_in[b] = true;
        }
    }

    let complete_k = match mode {
        Mode::Exists if !h.has_loop() && h.arc_count() == nh * (nh - 1) => Some(nh),
        _ => None,
    };
    let mut in_proj = vec![false; nv];
    if let Mode::Project(vars) = &mode {
        for &v in vars {
            in_proj[v] = true;
        }
    }
    let csp = Csp { rows, w, nv, cons, complete_k, in_proj };

    // Initial domains.
    let full = bits::full(nh);
    let mut out_any = vec![0u64; w];
    let mut in_any = vec![0u64; w];
    let mut loop_mask = vec![0u64; w];
    for (a, b) in h.arcs() {
        bits::set(&mut out_any, a);
        bits::set(&mut in_any, b);
        if a == b {
            bits::set(&mut loop_mask, a);
        }
    }
    let mut st = State {
        dom: Vec::with_capacity(nv * w),
        size: vec![0; nv],
        stamp: vec![0; nv],
        cur: 1,
        trail: Vec::new(),
        saved: Vec::new(),
        queue: Vec::new(),
        queued: vec![false; nv],
        sup_out: vec![0; w],
        sup_in: vec![0; w],
    };
    for v in 0..nv {
        let mut d = full.clone();
        for (flag, mask) in [(looped[v], &loop_mask), (has_out[v], &out_any), (has_in[v], &in_any)] {
            if flag {
                d.iter_mut().zip(mask).for_each(|(a, m)| *a &= m);
            }
        }
        let c = bits::count(&d) as u32;
        if c == 0 {
            return Ok(Vec::new());
        }
        st.size[v] = c;
        st.dom.extend_from_slice(&d);
        st.enqueue(v);
    }
    if !st.propagate(&csp) {
        return Ok(Vec::new());
    }

    let mut solutions: Vec<Vec<u32>> = Vec::new();
    let mut frames: Vec<Frame> = Vec::new();
    let mut nodes: u64 = 0;
    let no_used = vec![0u64; w];

    loop {
        // Descend: pick the next variable or record a solution.
        match select_var(&csp, &st) {
            Some(v) => {
                let used = frames.last().map(|f| {
                    let mut u = f.used.clone();
                    bits::set(&mut u, f.cands[f.next - 1] as usize);
                    u
                });
                let used = used.unwrap_or_else(|| no_used.clone());
                let cands = candidates(&csp, &st, v, &used);
                frames.push(Frame { var: v, cands, next: 0, mark: st.trail.len(), used });
            }
            None => {
                let sol: Vec<u32> = match &mode {
                    Mode::Project(vars) => vars.iter().map(|&v| first_value(&st, v, w)).collect(),
                    _ => (0..nv).map(|v| first_value(&st, v, w)).collect(),
                };
                solutions.push(sol);
                match mode {
                    Mode::Exists => return Ok(solutions),
                    Mode::Project(_) => {
                        while frames.last().is_some_and(|f| !csp.in_proj[f.var]) {
                            let f = frames.pop().expect("non-empty");
                            st.restore(f.mark, w);
                        }
                    }
                    Mode::Enumerate => {}
                }
                if solutions.len() > limits.max_solutions {
                    return Err(HomError::TooManyWitnesses { limit: limits.max_solutions });
                }
            }
        }

        // Advance to the next consistent candidate, backtracking as needed.
        loop {
            let Some(top) = frames.last_mut() else {
                return Ok(solutions);
            };
            st.restore(top.mark, w);
            if top.next >= top.cands.len() {
                frames.pop();
                continue;
            }
            let c = top.cands[top.next] as usize;
            top.next += 1;
            let var = top.var;

            nodes += 1;
            if nodes & 255 == 0 {
                if let Some(d) = limits.deadline {
                    if Instant::now() >= d {
                        return Err(HomError::Timeout);
                    }
                }
            }

            st.cur += 1;
            let mut single = vec![0u64; w];
            bits::set(&mut single, c);
            match st.narrow(var, &single, w) {
                Narrow::Wiped => continue,
                Narrow::Same | Narrow::Changed => {}
            }
            st.enqueue(var);
            if st.propagate(&csp) {
                break;
            }
        }
    }
}

fn first_value(st: &State, v: usize, w: usize) -> u32 {
    bits::first(st.dom(v, w)).expect("non-empty domain") as u32
}

fn select_var(csp: &Csp, st: &State) -> Option<usize> {
    let mut best: Option<(bool, u32, usize)> = None;
    for v in 0..csp.nv {
        let s = st.size[v];
        if s <= 1 {
            continue;
        }
        // Projected variables are decided before the rest.
        let key = (!csp.in_proj[v], s, v);
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    best.map(|(_, _, v)| v)
}

fn candidates(csp: &Csp, st: &State, v: usize, used: &[u64]) -> Vec<u32> {
    let d = st.dom(v, csp.w);
    match csp.complete_k {
        // Colours not yet used by any decision are interchangeable, so only
        // the least of them needs to be tried.
        Some(_) => {
            let mut out = Vec::new();
            let mut fresh_taken = false;
            for c in bits::iter_ones(d) {
                if bits::test(used, c) {
                    out.push(c as u32);
                } else if !fresh_taken {
                    fresh_taken = true;
                    out.push(c as u32);
                }
            }
            out
        }
        None => bits::iter_ones(d).map(|c| c as u32).collect(),
    }
}
