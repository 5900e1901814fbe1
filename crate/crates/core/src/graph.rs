//! Undirected weighted graphs, node weights and their text formats.
//!
//! The adjacency is stored once in CSR form with both directions present, so
//! row `i` lists every neighbour of `i`. Node labels are kept in first-seen
//! order and map to the internal indices `0..n`.

use std::collections::{BTreeMap, VecDeque};
use std::io::{BufRead, Write};

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric, non-negative adjacency without self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<T> {
    labels: IndexSet<String>,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
    /// Row sums of the adjacency.
    strength: Vec<T>,
}

impl<T: Scalar> Graph<T> {
    /// Builds a graph from labelled nodes and an edge list over their indices.
    ///
    /// Each `(u, v, a)` contributes `a` to both `A[u][v]` and `A[v][u]`;
    /// repeated pairs accumulate.
    pub fn from_edges(labels: IndexSet<String>, edges: &[(usize, usize, T)]) -> Result<Self> {
        let n = labels.len();
        let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); n];
        for &(u, v, a) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: 0,
                    node: labels[u].clone(),
                });
            }
            if !(a > T::zero()) || !a.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) has weight {a}, expected a positive finite value"
                )));
            }
            *rows[u].entry(v).or_insert_with(T::zero) += a;
            *rows[v].entry(u).or_insert_with(T::zero) += a;
        }
        Ok(Self::from_rows(labels, rows))
    }

    /// Graph on nodes labelled `"0"`, `"1"`, ... `n - 1`.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize, T)]) -> Result<Self> {
        Self::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    fn from_rows(labels: IndexSet<String>, rows: Vec<BTreeMap<usize, T>>) -> Self {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let nnz = rows.iter().map(BTreeMap::len).sum();
        let mut col_idx = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        let mut strength = Vec::with_capacity(rows.len());
        row_ptr.push(0);
        for row in rows {
            let mut s = T::zero();
            for (j, a) in row {
                col_idx.push(j);
                values.push(a);
                s += a;
            }
            strength.push(s);
            row_ptr.push(col_idx.len());
        }
        Self {
            labels,
            row_ptr,
            col_idx,
            values,
            strength,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.col_idx.len() / 2
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &IndexSet<String> {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.get_index_of(label)
    }

    /// Index of `label`, or [`Error::UnknownNode`].
    pub fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    /// Neighbours of `i` with edge weights, in increasing index order.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn degree_count(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    /// `A[i][j]`, zero when there is no edge.
    pub fn weight(&self, i: usize, j: usize) -> T {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[range.clone()].binary_search(&j) {
            Ok(pos) => self.values[range.start + pos],
            Err(_) => T::zero(),
        }
    }

    /// Row sums `d = A e` (internal node weights, possibly zero).
    pub fn strengths(&self) -> &[T] {
        &self.strength
    }

    /// Undirected edges `(i, j, A_ij)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&(j, _)| j > i)
                .map(move |(j, a)| (i, j, a))
        })
    }

    /// Component id for every node, ids ordered by the smallest node index
    /// they contain. Returns `(ids, component_count)`.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for (v, _) in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Errors with [`Error::Disconnected`] unless the graph has one component.
    pub fn ensure_connected(&self) -> Result<()> {
        let (_, components) = self.components();
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(())
    }

    /// Subgraph induced by `keep` (old indices, in the order they should
    /// appear in the new graph).
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Self, Vec<Option<usize>>) {
        let mut map = vec![None; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        let labels: IndexSet<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let rows = keep
            .iter()
            .map(|&old| {
                self.neighbors(old)
                    .filter_map(|(j, a)| map[j].map(|nj| (nj, a)))
                    .collect::<BTreeMap<_, _>>()
            })
            .collect();
        (Self::from_rows(labels, rows), map)
    }
}

/// Positive node weights together with their total and the stationary
/// distribution `pi = w / |w|`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeWeights<T> {
    values: Vec<T>,
    total: T,
    pi: Vec<T>,
}

impl<T: Scalar> NodeWeights<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty weight vector".into()));
        }
        if let Some((i, w)) = values
            .iter()
            .enumerate()
            .find(|(_, &w)| !(w > T::zero()) || !w.is_finite())
        {
            return Err(Error::InvalidParameter(format!(
                "weight of node {i} is {w}, expected a positive finite value"
            )));
        }
        let total: T = values.iter().copied().sum();
        let pi = values.iter().map(|&w| w / total).collect();
        Ok(Self { values, total, pi })
    }

    /// All-ones weights.
    pub fn unit(n: usize) -> Self {
        Self::new(vec![T::one(); n.max(1)]).expect("unit weights are positive")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize) -> T {
        self.values[i]
    }

    /// `|w|`
    pub fn total(&self) -> T {
        self.total
    }

    /// Stationary distribution of the weighted walk.
    pub fn pi(&self) -> &[T] {
        &self.pi
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {n} nodes",
                self.values.len()
            )));
        }
        Ok(())
    }
}

/// Options for [`load_edge_list`].
#[derive(Debug, Clone)]
pub struct EdgeListOptions {
    /// Read the optional third column as an edge weight. When unset every
    /// edge has weight 1 and a third column is ignored.
    pub weighted: bool,
    pub comment_prefix: char,
}

impl Default for EdgeListOptions {
    fn default() -> Self {
        Self {
            weighted: true,
            comment_prefix: '#',
        }
    }
}

fn content_lines<R: BufRead>(
    reader: R,
    comment: char,
) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .filter_map(move |(idx, line)| match line {
            Err(e) => Some(Err(Error::Io(e))),
            Ok(line) => {
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with(comment) {
                    None
                } else {
                    Some(Ok((idx + 1, trimmed.to_string())))
                }
            }
        })
}

fn parse_positive<T: Scalar>(token: &str, line: usize) -> Result<T> {
    let value: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse weight '{token}'"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("weight '{token}' is not finite"),
        });
    }
    if value <= 0.0 {
        return Err(Error::NonPositiveWeight { line, value });
    }
    Ok(T::of(value))
}

/// Reads a whitespace-separated edge list (`src dst [weight]`).
///
/// Labels are assigned indices in order of first appearance, the adjacency is
/// symmetrised and duplicate edges have their weights summed.
pub fn load_edge_list<T: Scalar, R: BufRead>(reader: R, options: &EdgeListOptions) -> Result<Graph<T>> {
    let mut labels = IndexSet::new();
    let mut edges = Vec::new();
    for item in content_lines(reader, options.comment_prefix) {
        let (line, text) = item?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(Error::Parse {
                line,
                message: format!("expected 'src dst [weight]', found {} fields", tokens.len()),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(Error::SelfLoop {
                line,
                node: tokens[0].to_string(),
            });
        }
        let weight = match tokens.get(2) {
            Some(tok) if options.weighted => parse_positive::<T>(tok, line)?,
            _ => T::one(),
        };
        let (u, _) = labels.insert_full(tokens[0].to_string());
        let (v, _) = labels.insert_full(tokens[1].to_string());
        edges.push((u, v, weight));
    }
    Graph::from_edges(labels, &edges)
}

/// Writes each undirected edge once as `src\tdst\tweight`.
pub fn write_edge_list<T: Scalar, W: Write>(graph: &Graph<T>, mut out: W) -> Result<()> {
    for (i, j, a) in graph.edges() {
        writeln!(out, "{}\t{}\t{}", graph.label(i), graph.label(j), a)?;
    }
    Ok(())
}

/// Internal node weights `d = A e`.
pub fn internal_weights<T: Scalar>(graph: &Graph<T>) -> Result<NodeWeights<T>> {
    if let Some(i) = graph.strengths().iter().position(|&d| !(d > T::zero())) {
        return Err(Error::IsolatedNode(graph.label(i).to_string()));
    }
    NodeWeights::new(graph.strengths().to_vec())
}

/// Options for [`load_node_weights`].
#[derive(Debug, Clone)]
pub struct NodeWeightOptions {
    /// Reject files that leave some node without a weight. When unset,
    /// missing nodes get weight 1.
    pub require_full: bool,
    pub comment_prefix: char,
}

impl Default for NodeWeightOptions {
    fn default() -> Self {
        Self {
            require_full: false,
            comment_prefix: '#',
        }
    }
}

/// Reads `node_id weight` lines aligned with the graph's indexing.
pub fn load_node_weights<T: Scalar, R: BufRead>(
    reader: R,
    graph: &Graph<T>,
    options: &NodeWeightOptions,
) -> Result<NodeWeights<T>> {
    let n = graph.node_count();
    let mut values: Vec<Option<T>> = vec![None; n];
    for item in content_lines(reader, options.comment_prefix) {
        let (line, text) = item?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 'node weight', found {} fields", tokens.len()),
            });
        }
        let i = graph.require_index(tokens[0])?;
        let w = parse_positive::<T>(tokens[1], line)?;
        if values[i].replace(w).is_some() {
            return Err(Error::DuplicateWeight {
                line,
                node: tokens[0].to_string(),
            });
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, w)| match (w, options.require_full) {
            (Some(w), _) => Ok(w),
            (None, false) => Ok(T::one()),
            (None, true) => Err(Error::MissingWeight(graph.label(i).to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    NodeWeights::new(values)
}

/// Induced subgraph on the largest connected component plus the old→new
/// index map. Ties go to the component holding the smallest node index.
pub fn largest_connected_component<T: Scalar>(graph: &Graph<T>) -> (Graph<T>, Vec<Option<usize>>) {
    let (comp, count) = graph.components();
    if count <= 1 {
        return (graph.clone(), (0..graph.node_count()).map(Some).collect());
    }
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    // components are numbered by their smallest member, so the first maximum wins ties
    let best = (0..count)
        .fold(0, |best, c| if sizes[c] > sizes[best] { c } else { best });
    let keep: Vec<usize> = (0..graph.node_count()).filter(|&i| comp[i] == best).collect();
    graph.induced_subgraph(&keep)
}

/// Multiplies the weight of every node in `subset` by `factor`.
pub fn boost_weights<T: Scalar>(
    weights: &NodeWeights<T>,
    subset: &[usize],
    factor: T,
) -> Result<NodeWeights<T>> {
    if !(factor > T::zero()) || !factor.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "boost factor {factor} must be positive"
        )));
    }
    let mut in_subset = vec![false; weights.len()];
    for &i in subset {
        *in_subset
            .get_mut(i)
            .ok_or_else(|| Error::UnknownNode(i.to_string()))? = true;
    }
    let values = weights
        .values()
        .iter()
        .zip(&in_subset)
        .map(|(&w, &boost)| if boost { w * factor } else { w })
        .collect();
    NodeWeights::new(values)
}

/// Small named graphs for tests and demonstrations, all with unit edges.
pub mod fixtures {
    use super::Graph;
    use crate::scalar::Scalar;

    pub fn path<T: Scalar>(n: usize) -> Graph<T> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, T::one())).collect();
        Graph::from_index_edges(n, &edges).expect("valid path")
    }

    pub fn cycle<T: Scalar>(n: usize) -> Graph<T> {
        assert!(n >= 3, "cycle needs at least 3 nodes");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, T::one())).collect();
        Graph::from_index_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete<T: Scalar>(n: usize) -> Graph<T> {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j, T::one())))
            .collect();
        Graph::from_index_edges(n, &edges).expect("valid complete graph")
    }

    /// Triangles {0,1,2} and {3,4,5} joined by the bridge 2–3.
    pub fn two_triangles<T: Scalar>() -> Graph<T> {
        let edges: Vec<_> = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]
            .into_iter()
            .map(|(i, j)| (i, j, T::one()))
            .collect();
        Graph::from_index_edges(6, &edges).expect("valid two-triangle graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str) -> Result<Graph<f64>> {
        load_edge_list(text.as_bytes(), &EdgeListOptions::default())
    }

    #[test]
    fn path_from_edge_list() {
        let g = parse("0 1\n1 2\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(1, 2), 1.0);
        assert_eq!(g.weight(2, 1), 1.0);
        assert_eq!(g.weight(0, 2), 0.0);
    }

    #[test]
    fn duplicate_edges_are_summed() {
        let g = parse("a b 2\nb a 3\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.weight(0, 1), 5.0);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.label(0), "a");
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse("# header\n\n  x y\n# z w\n").unwrap();
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn self_loop_is_rejected_with_line() {
        match parse("0 0\n") {
            Err(Error::SelfLoop { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("0 1\n# c\n2 2\n") {
            Err(Error::SelfLoop { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_lines_are_rejected() {
        assert!(matches!(parse("0 1 -2\n"), Err(Error::NonPositiveWeight { line: 1, .. })));
        assert!(matches!(parse("0 1\n0 1 0\n"), Err(Error::NonPositiveWeight { line: 2, .. })));
        assert!(matches!(parse("0 1 abc\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("0 1 2 3\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn unweighted_option_ignores_third_column() {
        let opts = EdgeListOptions {
            weighted: false,
            ..Default::default()
        };
        let g: Graph<f64> = load_edge_list("a b 7\n".as_bytes(), &opts).unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
    }

    #[test]
    fn internal_weights_examples() {
        let d = internal_weights(&fixtures::complete::<f64>(3)).unwrap();
        assert_eq!(d.values(), &[2.0, 2.0, 2.0]);
        let d = internal_weights(&fixtures::path::<f64>(3)).unwrap();
        assert_eq!(d.values(), &[1.0, 2.0, 1.0]);
        let g = Graph::<f64>::from_index_edges(2, &[(0, 1, 5.0)]).unwrap();
        assert_eq!(internal_weights(&g).unwrap().values(), &[5.0, 5.0]);
    }

    #[test]
    fn isolated_node_names_the_node() {
        let labels: IndexSet<String> = ["a", "b", "lonely"].iter().map(|s| s.to_string()).collect();
        let g = Graph::<f64>::from_edges(labels, &[(0, 1, 1.0)]).unwrap();
        match internal_weights(&g) {
            Err(Error::IsolatedNode(name)) => assert_eq!(name, "lonely"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn node_weight_file() {
        let g = Graph::<f64>::from_index_edges(2, &[(0, 1, 1.0)]).unwrap();
        let opts = NodeWeightOptions::default();
        let w = load_node_weights("0 2\n1 3\n".as_bytes(), &g, &opts).unwrap();
        assert_eq!(w.values(), &[2.0, 3.0]);
        assert_eq!(w.total(), 5.0);
        assert!((w.pi()[0] - 0.4).abs() < 1e-15);
        assert!((w.pi()[1] - 0.6).abs() < 1e-15);

        let w = load_node_weights("".as_bytes(), &g, &opts).unwrap();
        assert_eq!(w.values(), &[1.0, 1.0]);

        assert!(matches!(
            load_node_weights("0 -1\n".as_bytes(), &g, &opts),
            Err(Error::NonPositiveWeight { line: 1, .. })
        ));
        assert!(matches!(
            load_node_weights("9 1\n".as_bytes(), &g, &opts),
            Err(Error::UnknownNode(_))
        ));
        assert!(matches!(
            load_node_weights("0 1\n0 2\n".as_bytes(), &g, &opts),
            Err(Error::DuplicateWeight { line: 2, .. })
        ));
        let strict = NodeWeightOptions {
            require_full: true,
            ..Default::default()
        };
        assert!(matches!(
            load_node_weights("0 1\n".as_bytes(), &g, &strict),
            Err(Error::MissingWeight(_))
        ));
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let g = fixtures::complete::<f64>(3);
        let (h, map) = largest_connected_component(&g);
        assert_eq!(h, g);
        assert_eq!(map, vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn lcc_picks_triangle() {
        let g = Graph::<f64>::from_index_edges(
            5,
            &[(3, 4, 1.0), (0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)],
        )
        .unwrap();
        let (h, map) = largest_connected_component(&g);
        assert_eq!(h.node_count(), 3);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(map.iter().filter(|m| m.is_some()).count(), 3);
    }

    #[test]
    fn lcc_tie_goes_to_smallest_index() {
        // labels appear as 0,1,2,3 in that order; components {0,1} and {2,3}
        let g = parse("2 3\n0 1\n").unwrap();
        // index 0 is label "2" (first seen)
        let (h, map) = largest_connected_component(&g);
        assert_eq!(h.node_count(), 2);
        assert_eq!(map, vec![Some(0), Some(1), None, None]);
        assert_eq!(h.label(0), "2");
        assert_eq!(h.label(1), "3");
    }

    #[test]
    fn boost_examples() {
        let w = NodeWeights::<f64>::unit(3);
        let b = boost_weights(&w, &[0], 10.0).unwrap();
        assert_eq!(b.values(), &[10.0, 1.0, 1.0]);
        assert_eq!(boost_weights(&w, &[1, 2], 1.0).unwrap(), w);

        let w = NodeWeights::new(vec![2.0, 3.0]).unwrap();
        let b = boost_weights(&w, &[0, 1], 2.0).unwrap();
        assert_eq!(b.values(), &[4.0, 6.0]);
        assert_eq!(b.pi(), w.pi());

        assert!(matches!(boost_weights(&w, &[5], 2.0), Err(Error::UnknownNode(_))));
        assert!(boost_weights(&w, &[0], 0.0).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize, f64)>)> {
        (2usize..50).prop_flat_map(|n| {
            let edge = (0..n, 0..n, 0.01f64..5.0)
                .prop_filter("no self-loops", |(u, v, _)| u != v);
            (Just(n), proptest::collection::vec(edge, 1..200))
        })
    }

    proptest! {
        #[test]
        fn internal_weights_match_dense_row_sums((n, edges) in arb_graph()) {
            let g = Graph::from_index_edges(n, &edges).unwrap();
            let mut dense = vec![vec![0.0; n]; n];
            for &(u, v, a) in &edges {
                dense[u][v] += a;
                dense[v][u] += a;
            }
            for (i, row) in dense.iter().enumerate() {
                let sum: f64 = row.iter().sum();
                prop_assert!((g.strengths()[i] - sum).abs() <= 1e-12 * sum.max(1.0));
                for (j, &a) in row.iter().enumerate() {
                    prop_assert!((g.weight(i, j) - a).abs() <= 1e-12 * a.max(1.0));
                }
            }
        }

        #[test]
        fn edge_list_round_trip((n, edges) in arb_graph()) {
            let g = Graph::from_index_edges(n, &edges).unwrap();
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).unwrap();
            let h: Graph<f64> = load_edge_list(buf.as_slice(), &EdgeListOptions::default()).unwrap();
            for (i, j, a) in g.edges() {
                let hi = h.index_of(g.label(i)).unwrap();
                let hj = h.index_of(g.label(j)).unwrap();
                prop_assert_eq!(h.weight(hi, hj), a);
            }
            prop_assert_eq!(h.edge_count(), g.edge_count());
        }

        #[test]
        fn full_boost_scales_total_keeps_pi(
            values in proptest::collection::vec(0.01f64..100.0, 1..40),
            factor in 0.01f64..100.0,
        ) {
            let w = NodeWeights::new(values).unwrap();
            let all: Vec<usize> = (0..w.len()).collect();
            let b = boost_weights(&w, &all, factor).unwrap();
            prop_assert!((b.total() - factor * w.total()).abs() <= 1e-12 * b.total());
            for (p, q) in b.pi().iter().zip(w.pi()) {
                prop_assert!((p - q).abs() <= 1e-12);
            }
        }
    }
}
