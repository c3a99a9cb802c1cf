use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Finite multigraph; loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    #[serde(rename = "vertices")]
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<[usize; 2]>) -> Result<Self> {
        let g = Multigraph {
            vertex_count,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, e) in self.edges.iter().enumerate() {
            if e[0] >= self.vertex_count || e[1] >= self.vertex_count {
                return Err(Error::field(
                    format!("edges[{k}]"),
                    format!(
                        "endpoint {:?} out of range for {} vertices",
                        e, self.vertex_count
                    ),
                ));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn connected_components(&self) -> usize {
        let mut dsu = DisjointSets::new(self.vertex_count);
        for &[a, b] in &self.edges {
            dsu.union(a, b);
        }
        dsu.count()
    }

    /// Disjoint union, with the second graph's vertices shifted past ours.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&[a, b]| [a + shift, b + shift]));
        Multigraph {
            vertex_count: self.vertex_count + other.vertex_count,
            edges,
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.edges.push([a, b]);
        self.validate().inspect_err(|_| {
            self.edges.pop();
        })
    }
}

/// Rank of `H_1` of the graph as a 1-complex: `E - V + C`.
pub fn graph_first_betti(g: &Multigraph) -> usize {
    g.edges.len() + g.connected_components() - g.vertex_count
}

struct DisjointSets {
    parent: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.sets -= 1;
        }
    }

    fn count(&self) -> usize {
        self.sets
    }
}
