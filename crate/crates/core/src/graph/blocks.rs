use serde::Serialize;

use super::Graph;

/// A block: maximal connected subgraph without a cutvertex of its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    /// `K1` or `K2`.
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() <= 2
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn degree_in_block(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Sorted lexicographically by vertex list (hence by least vertex first).
    pub blocks: Vec<Block>,
    pub cutvertices: Vec<usize>,
    /// Block-cut tree edges `(block index, cutvertex)`, sorted.
    pub block_cut_tree: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn is_cutvertex(&self, v: usize) -> bool {
        self.cutvertices.binary_search(&v).is_ok()
    }

    /// Cutvertices of the host graph lying in block `b`.
    pub fn cutvertices_in(&self, b: usize) -> Vec<usize> {
        self.blocks[b]
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.is_cutvertex(v))
            .collect()
    }

    pub fn blocks_containing(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].contains(v)).collect()
    }

    /// A block with at most one cutvertex of the host.
    pub fn is_endblock(&self, b: usize) -> bool {
        self.cutvertices_in(b).len() <= 1
    }
}

/// Hopcroft-Tarjan biconnected components. Isolated vertices become `K1`
/// blocks; each component is handled independently.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut raw_blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut singles = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = timer;
            timer += 1;
            singles.push(root);
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, next neighbour index)
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < g.degree(v) {
                let w = g.neighbors(v)[top.1];
                top.1 += 1;
                if disc[w] == usize::MAX {
                    parent[w] = v;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    stack.push((w, 0));
                } else if w != parent[v] && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (p, v) {
                                break;
                            }
                        }
                        raw_blocks.push(block);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            Block { vertices, edges }
        })
        .chain(singles.into_iter().map(|v| Block {
            vertices: vec![v],
            edges: Vec::new(),
        }))
        .collect();
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cutvertices: Vec<usize> = (0..n).filter(|&v| count[v] >= 2).collect();
    let mut block_cut_tree = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if count[v] >= 2 {
                block_cut_tree.push((i, v));
            }
        }
    }
    block_cut_tree.sort_unstable();
    BlockDecomposition {
        blocks,
        cutvertices,
        block_cut_tree,
    }
}
