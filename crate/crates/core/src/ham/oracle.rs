//! Subset dynamic programming over `(visited set, last vertex)`.
//!
//! Shares nothing with the backtracking search beyond query validation, so
//! agreement between the two is meaningful. Exponential memory: limited to
//! 24 vertices.
//!
//! Required edges are handled at each step: when the walk arrives at `v`
//! from `prev`, every required partner of `v` already visited must be `prev`;
//! when it leaves `v`, every required partner of `v` not yet visited must be
//! the next vertex.

use super::{check_query, HamQuery, HamResult, QueryError, QueryKind};
use crate::graph::Graph;

pub const ORACLE_MAX_ORDER: usize = 24;

pub fn oracle_solve(g: &Graph, q: &HamQuery) -> Result<HamResult, QueryError> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(QueryError::TooLarge { n, max: ORACLE_MAX_ORDER });
    }
    check_query(g, q)?;
    Ok(Dp::new(g, q).run())
}

struct Dp {
    n: usize,
    adj: Vec<u32>,
    partners: Vec<u32>,
    kind: QueryKind,
    start: Option<usize>,
    end: Option<usize>,
    /// Cycle mode: the anchor, its forced first step and its forced last vertex.
    anchor: usize,
    first_step: Option<usize>,
    last_vertex: Option<usize>,
}

impl Dp {
    fn new(g: &Graph, q: &HamQuery) -> Self {
        let n = g.order();
        let adj = (0..n).map(|v| g.row(v) as u32).collect();
        let mut partners = vec![0u32; n];
        for &(u, v) in &q.required_edges {
            partners[u] |= 1 << v;
            partners[v] |= 1 << u;
        }
        let anchor = q.start.unwrap_or(0);
        let mut dp = Dp {
            n,
            adj,
            partners,
            kind: q.kind,
            start: q.start,
            end: q.end,
            anchor,
            first_step: None,
            last_vertex: None,
        };
        if q.kind == QueryKind::Cycle && n > 0 {
            // orient the cycle so it leaves the anchor along its lowest required partner
            let p = dp.partners[anchor];
            if p != 0 {
                let first = p.trailing_zeros() as usize;
                dp.first_step = Some(first);
                let rest = p & !(1 << first);
                if rest != 0 {
                    dp.last_vertex = Some(rest.trailing_zeros() as usize);
                }
            }
        }
        dp
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// May the walk covering `before` (ending at `prev`) step to `v`?
    fn step_ok(&self, before: u32, prev: usize, v: usize) -> bool {
        if before & (1 << v) != 0 || self.adj[prev] & (1 << v) == 0 {
            return false;
        }
        let after = before | (1 << v);
        // leaving prev: its unvisited partners must all be v
        let mut owed = self.partners[prev] & !before;
        if self.kind == QueryKind::Cycle && prev == self.anchor {
            // the anchor's second partner closes the cycle
            if let Some(l) = self.last_vertex {
                owed &= !(1 << l);
            }
        }
        if owed & !(1 << v) != 0 {
            return false;
        }
        if self.kind == QueryKind::Cycle && before == 1 << self.anchor {
            if let Some(f) = self.first_step {
                if v != f {
                    return false;
                }
            }
        }
        // arriving at v: visited partners other than prev break adjacency
        let mut early = self.partners[v] & before & !(1 << prev);
        if self.kind == QueryKind::Cycle && self.last_vertex == Some(v) {
            early &= !(1 << self.anchor);
            if after != self.full() {
                return false;
            }
        }
        if early != 0 {
            return false;
        }
        // at most one partner can still follow v
        (self.partners[v] & !after).count_ones() <= 1
    }

    fn run(&self) -> HamResult {
        let n = self.n;
        if self.partners.iter().any(|p| p.count_ones() > 2) {
            return HamResult::none(0);
        }
        match self.kind {
            QueryKind::Cycle if n < 3 => return HamResult::none(0),
            QueryKind::Path if n == 1 => return HamResult::found(vec![0], 0),
            _ => {}
        }
        let full = self.full();
        let mut reach = vec![0u32; 1usize << n];
        match self.kind {
            QueryKind::Cycle => reach[1 << self.anchor] = 1 << self.anchor,
            QueryKind::Path => {
                for s in 0..n {
                    if self.start.is_some_and(|t| t != s) || self.partners[s].count_ones() > 1 {
                        continue;
                    }
                    reach[1 << s] |= 1 << s;
                }
            }
        }
        let mut states = 0u64;
        for mask in 1..=full {
            let ends = reach[mask as usize];
            if ends == 0 || mask == full {
                continue;
            }
            let mut e = ends;
            while e != 0 {
                let last = e.trailing_zeros() as usize;
                e &= e - 1;
                states += 1;
                let mut cand = self.adj[last] & !mask;
                while cand != 0 {
                    let v = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    if self.step_ok(mask, last, v) {
                        reach[(mask | 1 << v) as usize] |= 1 << v;
                    }
                }
            }
        }

        let accept = |last: usize| match self.kind {
            QueryKind::Path => self.end.is_none_or(|t| t == last),
            QueryKind::Cycle => {
                self.adj[last] & (1 << self.anchor) != 0
                    && self.last_vertex.is_none_or(|q| q == last)
                    && (self.partners[last] & (1 << self.anchor) == 0
                        || self.last_vertex == Some(last)
                        || self.first_step == Some(last))
            }
        };
        let finals = reach[full as usize];
        let Some(last) = (0..n).find(|&v| finals & (1 << v) != 0 && accept(v)) else {
            return HamResult::none(states);
        };

        // walk back through the table
        let mut walk = vec![last];
        let mut mask = full;
        let mut cur = last;
        while mask.count_ones() > 1 {
            let before = mask & !(1 << cur);
            let prev = (0..n)
                .find(|&p| reach[before as usize] & (1 << p) != 0 && self.step_ok(before, p, cur))
                .expect("dp table is consistent");
            walk.push(prev);
            mask = before;
            cur = prev;
        }
        walk.reverse();
        HamResult::found(walk, states)
    }
}
