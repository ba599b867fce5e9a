//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

pub const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            head: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    pub fn nodes(&self) -> usize {
        self.head.len()
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) {
        self.head[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.head[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.head[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[u] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.head[u].len() {
            let a = self.head[u][self.iter[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Pushes a maximum flow from `s` to `t` and returns its value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network (smallest min-cut source side).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.head[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }

    /// Nodes that cannot reach `t` in the residual network (largest min-cut source side).
    pub fn not_reaching_sink(&self, t: usize) -> Vec<bool> {
        let mut reach = vec![false; self.nodes()];
        reach[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            // u reaches v through arc u->v with residual capacity; the reverse of arc a is a^1
            for &a in &self.head[v] {
                let u = self.arcs[a].to;
                if self.arcs[a ^ 1].cap > 0 && !reach[u] {
                    reach[u] = true;
                    stack.push(u);
                }
            }
        }
        reach.into_iter().map(|r| !r).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut g = FlowNetwork::new(6);
        for (a, b, c) in [(0, 1, 16), (0, 2, 13), (1, 2, 10), (2, 1, 4), (1, 3, 12), (3, 2, 9), (2, 4, 14), (4, 3, 7), (3, 5, 20), (4, 5, 4)] {
            g.add_edge(a, b, c);
        }
        assert_eq!(g.max_flow(0, 5), 23);
        let side = g.source_side(0);
        assert!(side[0] && !side[5]);
    }
}
