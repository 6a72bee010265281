//! Backtracking over edge states with degree propagation.
//!
//! Every query is reduced to a Hamiltonian cycle problem: a path query adds an
//! auxiliary vertex joined to the admissible endpoints, with the joins to a
//! pinned start or end marked required. Each edge is undecided, required or
//! removed. Propagation keeps every vertex at exactly two required edges,
//! forces both remaining edges at a vertex with only two left, and removes
//! any edge that would close a required fragment into a short cycle. After
//! propagation the remaining graph must be 2-connected. Branching extends a
//! fragment end with the fewest open edges.

use super::{HamQuery, HamResult, QueryKind};
use crate::graph::Graph;

const OPEN: u8 = 0;
const REQUIRED: u8 = 1;
const REMOVED: u8 = 2;
const NO_EDGE: u32 = u32::MAX;

pub(super) fn run(g: &Graph, q: &HamQuery) -> HamResult {
    let n = g.order();
    let budget = q.effective_budget(n);
    match q.kind {
        QueryKind::Cycle if n < 3 => return HamResult::none(0),
        QueryKind::Path if n == 1 => return HamResult::found(vec![0], 0),
        _ => {}
    }
    let inst = Instance::new(g, q);
    let mut search = Search { inst: &inst, nodes: 0, budget, acts: Vec::new() };
    match search.start() {
        Outcome::Found(state) => HamResult::found(inst.witness(&state, q), search.nodes),
        Outcome::Exhausted => HamResult::none(search.nodes),
        Outcome::OutOfBudget => HamResult::exhausted(search.nodes),
    }
}

struct Instance {
    /// Vertices including the auxiliary path vertex, if any.
    n: usize,
    aux: Option<usize>,
    ends: Vec<(u16, u16)>,
    inc: Vec<Vec<(u16, u32)>>,
    edge_at: Vec<u32>,
    forced: Vec<u32>,
}

impl Instance {
    fn new(g: &Graph, q: &HamQuery) -> Self {
        let n0 = g.order();
        let aux = (q.kind == QueryKind::Path).then_some(n0);
        let n = n0 + aux.is_some() as usize;
        let mut inst = Instance {
            n,
            aux,
            ends: Vec::new(),
            inc: vec![Vec::new(); n],
            edge_at: vec![NO_EDGE; n * n],
            forced: Vec::new(),
        };
        for (u, v) in g.edges() {
            inst.push_edge(u, v);
        }
        if let Some(w) = aux {
            let pinned: Vec<usize> = q.start.iter().chain(q.end.iter()).copied().collect();
            if pinned.len() == 2 {
                for &p in &pinned {
                    inst.push_edge(p, w);
                }
            } else {
                for v in 0..n0 {
                    inst.push_edge(v, w);
                }
            }
            for &p in &pinned {
                let e = inst.edge(p, w);
                inst.forced.push(e);
            }
        }
        for &(u, v) in &q.required_edges {
            let e = inst.edge(u, v);
            inst.forced.push(e);
        }
        // fewest-option neighbours first
        for v in 0..n {
            let mut list = std::mem::take(&mut inst.inc[v]);
            list.sort_by_key(|&(w, _)| (inst.inc[w as usize].len(), w));
            inst.inc[v] = list;
        }
        inst
    }

    fn push_edge(&mut self, u: usize, v: usize) {
        let e = self.ends.len() as u32;
        self.ends.push((u as u16, v as u16));
        self.inc[u].push((v as u16, e));
        self.inc[v].push((u as u16, e));
        self.edge_at[u * self.n + v] = e;
        self.edge_at[v * self.n + u] = e;
    }

    #[inline]
    fn edge(&self, u: usize, v: usize) -> u32 {
        self.edge_at[u * self.n + v]
    }

    fn witness(&self, st: &State, q: &HamQuery) -> Vec<usize> {
        let mut nbrs = vec![[usize::MAX; 2]; self.n];
        for (e, &(u, v)) in self.ends.iter().enumerate() {
            if st.edge[e] == REQUIRED {
                let (u, v) = (u as usize, v as usize);
                let slot = if nbrs[u][0] == usize::MAX { 0 } else { 1 };
                nbrs[u][slot] = v;
                let slot = if nbrs[v][0] == usize::MAX { 0 } else { 1 };
                nbrs[v][slot] = u;
            }
        }
        let first = match (self.aux, q.start) {
            (Some(w), _) => w,
            (None, Some(s)) => s,
            (None, None) => 0,
        };
        let mut cycle = Vec::with_capacity(self.n);
        let (mut prev, mut cur) = (usize::MAX, first);
        for _ in 0..self.n {
            cycle.push(cur);
            let next = if nbrs[cur][0] != prev { nbrs[cur][0] } else { nbrs[cur][1] };
            prev = cur;
            cur = next;
        }
        if self.aux.is_none() {
            return cycle;
        }
        let mut path = cycle.split_off(1);
        let flip = match (q.start, q.end) {
            (Some(s), _) => path[0] != s,
            (None, Some(t)) => path[path.len() - 1] != t,
            (None, None) => false,
        };
        if flip {
            path.reverse();
        }
        path
    }
}

#[derive(Clone)]
struct State {
    edge: Vec<u8>,
    avail: Vec<u16>,
    req: Vec<u8>,
    /// For a fragment end, the other end of its fragment (itself if isolated).
    end: Vec<u16>,
    /// For a fragment end, the number of vertices in its fragment.
    size: Vec<u16>,
    n_req: usize,
}

#[derive(Clone, Copy)]
enum Act {
    Require(u32),
    Remove(u32),
    Check(u16),
}

enum Outcome {
    Found(State),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    inst: &'a Instance,
    nodes: u64,
    budget: u64,
    acts: Vec<Act>,
}

impl Search<'_> {
    fn start(&mut self) -> Outcome {
        let inst = self.inst;
        let n = inst.n;
        let mut st = State {
            edge: vec![OPEN; inst.ends.len()],
            avail: inst.inc.iter().map(|l| l.len() as u16).collect(),
            req: vec![0; n],
            end: (0..n as u16).collect(),
            size: vec![1; n],
            n_req: 0,
        };
        self.acts.clear();
        self.acts.extend(inst.forced.iter().map(|&e| Act::Require(e)));
        self.acts.extend((0..n as u16).map(Act::Check));
        if !self.propagate(&mut st) {
            self.nodes = 1;
            return Outcome::Exhausted;
        }
        self.search(st)
    }

    fn search(&mut self, st: State) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        let inst = self.inst;
        if st.n_req == inst.n {
            return Outcome::Found(st);
        }
        if !self.two_connected(&st) {
            return Outcome::Exhausted;
        }

        // Branch vertex: a fragment end with the fewest open edges, else any
        // vertex with the fewest open edges.
        let mut best = (u32::MAX, usize::MAX);
        for v in 0..inst.n {
            let r = st.req[v];
            if r == 2 {
                continue;
            }
            let open = (st.avail[v] - r as u16) as u32;
            let key = if r == 1 { open } else { open + 0x10000 };
            if key < best.0 {
                best = (key, v);
            }
        }
        let v = best.1;
        let candidates: Vec<u32> =
            inst.inc[v].iter().filter(|&&(_, e)| st.edge[e as usize] == OPEN).map(|&(_, e)| e).collect();

        if st.req[v] == 1 {
            for (i, &e) in candidates.iter().enumerate() {
                let mut child = st.clone();
                self.acts.clear();
                self.acts.extend(candidates[..i].iter().map(|&f| Act::Remove(f)));
                self.acts.push(Act::Require(e));
                if self.propagate(&mut child) {
                    match self.search(child) {
                        Outcome::Exhausted => {}
                        other => return other,
                    }
                }
            }
            Outcome::Exhausted
        } else {
            let e = candidates[0];
            for act in [Act::Require(e), Act::Remove(e)] {
                let mut child = st.clone();
                self.acts.clear();
                self.acts.push(act);
                if self.propagate(&mut child) {
                    match self.search(child) {
                        Outcome::Exhausted => {}
                        other => return other,
                    }
                }
            }
            Outcome::Exhausted
        }
    }

    fn propagate(&mut self, st: &mut State) -> bool {
        let inst = self.inst;
        while let Some(act) = self.acts.pop() {
            match act {
                Act::Require(e) => {
                    if !self.require(st, e) {
                        return false;
                    }
                }
                Act::Remove(e) => {
                    let ei = e as usize;
                    match st.edge[ei] {
                        REQUIRED => return false,
                        REMOVED => continue,
                        _ => {}
                    }
                    st.edge[ei] = REMOVED;
                    let (u, v) = inst.ends[ei];
                    st.avail[u as usize] -= 1;
                    st.avail[v as usize] -= 1;
                    self.acts.push(Act::Check(u));
                    self.acts.push(Act::Check(v));
                }
                Act::Check(v) => {
                    let vi = v as usize;
                    let (a, r) = (st.avail[vi], st.req[vi]);
                    if a < 2 {
                        return false;
                    }
                    if r == 2 && a > 2 {
                        for &(_, e) in &inst.inc[vi] {
                            if st.edge[e as usize] == OPEN {
                                self.acts.push(Act::Remove(e));
                            }
                        }
                    } else if r < 2 && a == 2 {
                        for &(_, e) in &inst.inc[vi] {
                            if st.edge[e as usize] == OPEN {
                                self.acts.push(Act::Require(e));
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn require(&mut self, st: &mut State, e: u32) -> bool {
        let inst = self.inst;
        let ei = e as usize;
        match st.edge[ei] {
            REQUIRED => return true,
            REMOVED => return false,
            _ => {}
        }
        let (u, v) = inst.ends[ei];
        let (ui, vi) = (u as usize, v as usize);
        if st.req[ui] >= 2 || st.req[vi] >= 2 {
            return false;
        }
        let (eu, ev) = (st.end[ui], st.end[vi]);
        st.edge[ei] = REQUIRED;
        st.req[ui] += 1;
        st.req[vi] += 1;
        st.n_req += 1;
        self.acts.push(Act::Check(u));
        self.acts.push(Act::Check(v));
        if eu == v {
            // closes the fragment into a cycle
            return st.size[ui] as usize == inst.n;
        }
        let size = st.size[ui] + st.size[vi];
        st.end[eu as usize] = ev;
        st.end[ev as usize] = eu;
        st.size[eu as usize] = size;
        st.size[ev as usize] = size;
        let closing = inst.edge(eu as usize, ev as usize);
        if size as usize == inst.n {
            if closing == NO_EDGE {
                return false;
            }
            self.acts.push(Act::Require(closing));
        } else if closing != NO_EDGE && closing != e {
            self.acts.push(Act::Remove(closing));
        }
        true
    }

    /// Connected with no cut vertex, over the edges not yet removed.
    fn two_connected(&self, st: &State) -> bool {
        let inst = self.inst;
        let n = inst.n;
        let mut disc = vec![u16::MAX; n];
        let mut low = vec![0u16; n];
        // (vertex, incoming edge, next incidence index)
        let mut stack: Vec<(u16, u32, u16)> = Vec::with_capacity(n);
        disc[0] = 0;
        low[0] = 0;
        let mut time = 1u16;
        let mut root_children = 0;
        stack.push((0, NO_EDGE, 0));
        while let Some(top) = stack.last_mut() {
            let v = top.0 as usize;
            let list = &inst.inc[v];
            let mut i = top.2 as usize;
            while i < list.len() && (st.edge[list[i].1 as usize] == REMOVED || list[i].1 == top.1) {
                i += 1;
            }
            if i == list.len() {
                stack.pop();
                if let Some(parent) = stack.last() {
                    let p = parent.0 as usize;
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        return false;
                    }
                }
                continue;
            }
            top.2 = i as u16 + 1;
            let (w, e) = list[i];
            let wi = w as usize;
            if disc[wi] == u16::MAX {
                disc[wi] = time;
                low[wi] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, e, 0));
            } else {
                low[v] = low[v].min(disc[wi]);
            }
        }
        time as usize == n && root_children <= 1
    }
}
