//! Graphs on a finite group: element graphs (commuting, nilpotent, solvable, generating,
//! invariably generating), class graphs (abelian, nilpotent, solvable) and their expanded
//! versions on elements.
//!
//! Adjacency is stored as bit-set rows. Element-graph rows are computed for class
//! representatives only and transported to the rest of each class along the conjugation
//! tree of the [`GroupTable`], since every relation is invariant under simultaneous
//! conjugation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::GroupError;
use crate::structure::{generated, is_nilpotent, is_solvable};
use crate::table::GroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graphs have different vertex sets")]
    VertexUniverseMismatch,
    #[error("relation {relation} is not available for {kind} graphs")]
    UnsupportedRelation { relation: Relation, kind: GraphKind },
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("unknown graph kind {0:?}")]
    UnknownKind(String),
    #[error("malformed graph JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Element,
    Class,
    Expanded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Commuting,
    Abelian,
    Nilpotent,
    Solvable,
    Generating,
    InvariablyGenerating,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Commuting => "commuting",
            Relation::Abelian => "abelian",
            Relation::Nilpotent => "nilpotent",
            Relation::Solvable => "solvable",
            Relation::Generating => "generating",
            Relation::InvariablyGenerating => "invariably-generating",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "commuting" => Relation::Commuting,
            "abelian" => Relation::Abelian,
            "nilpotent" => Relation::Nilpotent,
            "solvable" => Relation::Solvable,
            "generating" => Relation::Generating,
            "invariably-generating" => Relation::InvariablyGenerating,
            other => return Err(GraphError::UnknownRelation(other.to_string())),
        })
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Element => "element",
            GraphKind::Class => "class",
            GraphKind::Expanded => "expanded",
        })
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "element" => GraphKind::Element,
            "class" => GraphKind::Class,
            "expanded" => GraphKind::Expanded,
            other => return Err(GraphError::UnknownKind(other.to_string())),
        })
    }
}

/// A simple undirected graph with labeled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupGraph {
    pub kind: GraphKind,
    pub relation: Relation,
    labels: Vec<String>,
    words: usize,
    rows: Vec<u64>,
}

impl GroupGraph {
    pub fn empty(kind: GraphKind, relation: Relation, labels: Vec<String>) -> Self {
        let words = labels.len().div_ceil(64);
        let rows = vec![0; words * labels.len()];
        Self {
            kind,
            relation,
            labels,
            words,
            rows,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    /// Adds the edge `{i, j}`; loops are ignored.
    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.rows[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|i| self.degree_of(i))
            .sum::<usize>()
            / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex set required).
    pub fn is_subgraph_of(&self, other: &GroupGraph) -> Result<bool, GraphError> {
        if self.labels != other.labels {
            return Err(GraphError::VertexUniverseMismatch);
        }
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0))
    }

    /// Vertices adjacent to every other vertex.
    pub fn dominant_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        (0..n).filter(|&i| self.degree_of(i) == n - 1).collect()
    }

    pub fn export_dot(&self) -> String {
        let mut out = format!("graph \"{}-{}\" {{\n", self.kind, self.relation);
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  {i} [label=\"{l}\"];\n"));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn export_json(&self) -> String {
        let doc = GraphJson {
            kind: self.kind,
            relation: self.relation,
            vertices: self.labels.clone(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::BadJson(e.to_string()))?;
        let n = doc.vertices.len();
        let mut g = GroupGraph::empty(doc.kind, doc.relation, doc.vertices);
        for [i, j] in doc.edges {
            if i >= n || j >= n || i == j {
                return Err(GraphError::BadJson(format!("bad edge [{i}, {j}]")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    kind: GraphKind,
    relation: Relation,
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

/// Label-aligned equality of adjacency.
pub fn graph_equal(a: &GroupGraph, b: &GroupGraph) -> Result<bool, GraphError> {
    if a.labels != b.labels {
        return Err(GraphError::VertexUniverseMismatch);
    }
    Ok(a.rows == b.rows)
}

/// Whether `⟨a, b⟩` (table indices) satisfies the relation.
fn pair_predicate(table: &GroupTable, relation: Relation, a: usize, b: usize) -> bool {
    match relation {
        Relation::Commuting | Relation::Abelian => table.commute(a, b),
        Relation::Nilpotent => table.commute(a, b) || is_nilpotent(&pair_group(table, a, b)),
        Relation::Solvable => is_solvable(&pair_group(table, a, b)),
        Relation::Generating => pair_group(table, a, b).order() == table.order(),
        Relation::InvariablyGenerating => unreachable!("handled by rows"),
    }
}

fn pair_group(table: &GroupTable, a: usize, b: usize) -> crate::group::PermGroup {
    generated(table.degree(), &[table.element(a), table.element(b)])
}

/// Row of a class representative over all element indices.
fn rep_row(table: &GroupTable, relation: Relation, rep: usize) -> Vec<bool> {
    let n = table.len();
    match relation {
        Relation::InvariablyGenerating => {
            let gen = rep_row(table, Relation::Generating, rep);
            let class_ok: Vec<bool> = (0..table.classes().len())
                .map(|c| table.class_members(c).iter().all(|&y| gen[y as usize]))
                .collect();
            (0..n).map(|j| class_ok[table.class_of(j)]).collect()
        }
        _ => (0..n)
            .map(|j| j != 0 && pair_predicate(table, relation, rep, j))
            .collect(),
    }
}

fn element_labels(table: &GroupTable) -> Vec<String> {
    (1..table.len())
        .map(|i| table.element(i).to_string())
        .collect()
}

/// Element graph on the nontrivial elements.
pub fn element_graph(table: &GroupTable, relation: Relation) -> Result<GroupGraph, GraphError> {
    if relation == Relation::Abelian {
        return Err(GraphError::UnsupportedRelation {
            relation,
            kind: GraphKind::Element,
        });
    }
    let n = table.len();
    // action of each generator on element indices by conjugation
    let gens = table.group().nontrivial_generators();
    let gen_action: Vec<Vec<u32>> = gens
        .par_iter()
        .map(|g| (0..n).map(|j| table.conjugate_index(j, g) as u32).collect())
        .collect();
    let reps: Vec<usize> = table.classes().iter().map(|c| c.rep_index).collect();
    let rep_rows: Vec<Vec<bool>> = reps
        .par_iter()
        .map(|&r| rep_row(table, relation, r))
        .collect();
    // rows for every element, transported from the representative:
    // if x = r^g then adj(x, j^g) = adj(r, j)
    let rows: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let c = table.class_of(x);
            let path = table.conjugation_path(x);
            let mut row = rep_rows[c].clone();
            for gi in path {
                let mut next = vec![false; n];
                for (j, &b) in row.iter().enumerate() {
                    if b {
                        next[gen_action[gi][j] as usize] = true;
                    }
                }
                row = next;
            }
            row
        })
        .collect();
    let mut graph = GroupGraph::empty(GraphKind::Element, relation, element_labels(table));
    for x in 1..n {
        for j in x + 1..n {
            if rows[x][j] {
                graph.add_edge(x - 1, j - 1);
            }
        }
    }
    Ok(graph)
}

fn class_labels(table: &GroupTable) -> Vec<String> {
    table
        .classes()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| {
            format!(
                "{}:{}:{}#{}",
                c.element_order, c.size, c.centralizer_order, i
            )
        })
        .collect()
}

fn check_class_relation(relation: Relation, kind: GraphKind) -> Result<(), GraphError> {
    match relation {
        Relation::Abelian | Relation::Nilpotent | Relation::Solvable => Ok(()),
        _ => Err(GraphError::UnsupportedRelation { relation, kind }),
    }
}

/// Class adjacency matrix over all classes (including the identity class).
fn class_adjacency(table: &GroupTable, relation: Relation) -> Vec<Vec<bool>> {
    let k = table.classes().len();
    let rows: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|c| {
            let rep = table.classes()[c].rep_index;
            (0..k)
                .map(|d| {
                    table
                        .class_members(d)
                        .iter()
                        .any(|&y| pair_predicate(table, relation, rep, y as usize))
                })
                .collect()
        })
        .collect();
    rows
}

/// Class graph on the nontrivial classes: `C ~ D` iff `⟨c, d⟩` has the property for
/// some `c ∈ C`, `d ∈ D`. The representative of `C` is fixed and `d` ranges over `D`.
pub fn class_graph(table: &GroupTable, relation: Relation) -> Result<GroupGraph, GraphError> {
    check_class_relation(relation, GraphKind::Class)?;
    let adj = class_adjacency(table, relation);
    let mut graph = GroupGraph::empty(GraphKind::Class, relation, class_labels(table));
    let k = table.classes().len();
    for c in 1..k {
        for d in c + 1..k {
            if adj[c][d] || adj[d][c] {
                graph.add_edge(c - 1, d - 1);
            }
        }
    }
    Ok(graph)
}

/// Expanded class graph on nontrivial elements: `x ~ y` iff they are conjugate or their
/// classes are adjacent in the class graph.
pub fn expanded_graph(table: &GroupTable, relation: Relation) -> Result<GroupGraph, GraphError> {
    check_class_relation(relation, GraphKind::Expanded)?;
    let adj = class_adjacency(table, relation);
    let n = table.len();
    let mut graph = GroupGraph::empty(GraphKind::Expanded, relation, element_labels(table));
    for x in 1..n {
        let cx = table.class_of(x);
        for y in x + 1..n {
            let cy = table.class_of(y);
            if cx == cy || adj[cx][cy] || adj[cy][cx] {
                graph.add_edge(x - 1, y - 1);
            }
        }
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;

    fn table(n: usize, gens: &[&str]) -> GroupTable {
        GroupTable::new(&PermGroup::from_cycle_strings(n, gens).unwrap(), 10_000).unwrap()
    }

    #[test]
    fn commuting_graph_of_c4() {
        let t = table(4, &["(1,2,3,4)"]);
        let g = element_graph(&t, Relation::Commuting).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.is_complete());
    }

    #[test]
    fn s3_class_graphs() {
        let t = table(3, &["(1,2)", "(1,2,3)"]);
        let ccc = class_graph(&t, Relation::Abelian).unwrap();
        assert_eq!((ccc.vertex_count(), ccc.edge_count()), (2, 0));
        let scc = class_graph(&t, Relation::Solvable).unwrap();
        assert_eq!((scc.vertex_count(), scc.edge_count()), (2, 1));
        let exp = expanded_graph(&t, Relation::Abelian).unwrap();
        let i = exp.labels().iter().position(|l| l == "(1,2)").unwrap();
        let j = exp.labels().iter().position(|l| l == "(1,3)").unwrap();
        assert!(exp.has_edge(i, j));
        assert!(matches!(
            class_graph(&t, Relation::Generating),
            Err(GraphError::UnsupportedRelation { .. })
        ));
    }

    #[test]
    fn a5_solvable_graph_is_not_expanded_scc() {
        let t = table(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        let sol = element_graph(&t, Relation::Solvable).unwrap();
        let exp = expanded_graph(&t, Relation::Solvable).unwrap();
        assert!(!graph_equal(&sol, &exp).unwrap());
        assert!(sol.is_subgraph_of(&exp).unwrap());
        let com = element_graph(&t, Relation::Commuting).unwrap();
        let nil = element_graph(&t, Relation::Nilpotent).unwrap();
        assert!(com.is_subgraph_of(&nil).unwrap() && nil.is_subgraph_of(&sol).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let t = table(3, &["(1,2)", "(1,2,3)"]);
        let g = element_graph(&t, Relation::Generating).unwrap();
        let back = GroupGraph::from_json(&g.export_json()).unwrap();
        assert_eq!(back, g);
        let dot =
            GroupGraph::empty(GraphKind::Class, Relation::Abelian, vec!["a".into()]).export_dot();
        assert!(!dot.contains("--"));
    }
}
