//! Small deterministic max-flow (Dinic). Arc order is insertion order and
//! the search order is fixed, so identical networks yield identical flows —
//! the orientation solver relies on that for reproducible tie-breaking.

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    rev: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(n_nodes: usize) -> Self {
        FlowNetwork { adj: vec![Vec::new(); n_nodes] }
    }

    /// Adds a directed arc and returns its index at `from` (for later flow
    /// inspection).
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let fwd = self.adj[from].len();
        let bwd = self.adj[to].len();
        self.adj[from].push(Arc { to, cap, rev: bwd });
        self.adj[to].push(Arc { to: from, cap: 0, rev: fwd });
        fwd
    }

    /// Flow pushed through arc `idx` out of `from` (equals the residual
    /// capacity of the reverse arc).
    pub fn flow_on(&self, from: usize, idx: usize) -> i64 {
        let arc = &self.adj[from][idx];
        self.adj[arc.to][arc.rev].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0i64;
        loop {
            // BFS level graph.
            let mut level = vec![usize::MAX; n];
            level[source] = 0;
            let mut queue = std::collections::VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for arc in &self.adj[u] {
                    if arc.cap > 0 && level[arc.to] == usize::MAX {
                        level[arc.to] = level[u] + 1;
                        queue.push_back(arc.to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                return total;
            }
            // Blocking flow via DFS with per-node arc cursors.
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs(source, sink, i64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn dfs(&mut self, u: usize, sink: usize, limit: i64, level: &[usize], iter: &mut [usize]) -> i64 {
        if u == sink {
            return limit;
        }
        while iter[u] < self.adj[u].len() {
            let (to, cap, rev) = {
                let a = &self.adj[u][iter[u]];
                (a.to, a.cap, a.rev)
            };
            if cap > 0 && level[to] == level[u] + 1 {
                let pushed = self.dfs(to, sink, limit.min(cap), level, iter);
                if pushed > 0 {
                    self.adj[u][iter[u]].cap -= pushed;
                    self.adj[to][rev].cap += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }
}
