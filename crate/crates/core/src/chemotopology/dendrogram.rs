//! Binary merge trees: height cuts, the population-product cut criterion,
//! cophenetic distances, and Newick/DOT emission.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::posets::dot_id;

/// One agglomeration step. Node ids `0..n` are leaves; merge `i` creates
/// node `n + i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    leaves: Vec<String>,
    merges: Vec<Merge>,
}

/// A partition of the leaves into clusters.
pub type Partition = Vec<Vec<String>>;

impl Dendrogram {
    /// Checks that the merges form one binary tree over the leaves, each node
    /// used once, with heights never below a child's height.
    pub fn new(leaves: Vec<String>, merges: Vec<Merge>) -> Result<Self> {
        let n = leaves.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if merges.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "{} merges for {n} leaves",
                merges.len()
            )));
        }
        let unique: BTreeSet<&str> = leaves.iter().map(String::as_str).collect();
        if unique.len() != n {
            return Err(Error::InvalidArgument("duplicate leaf identifiers".into()));
        }
        let mut used = vec![false; 2 * n - 1];
        let mut heights = vec![0.0; 2 * n - 1];
        for (i, m) in merges.iter().enumerate() {
            let node = n + i;
            if !m.height.is_finite() || m.height < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "bad merge height {}",
                    m.height
                )));
            }
            for child in [m.left, m.right] {
                if child >= node || used[child] {
                    return Err(Error::InvalidArgument(format!(
                        "node {child} cannot be merged at step {i}"
                    )));
                }
                if heights[child] > m.height {
                    return Err(Error::InvalidArgument(format!(
                        "merge {i} is lower than its child"
                    )));
                }
                used[child] = true;
            }
            if m.left == m.right {
                return Err(Error::InvalidArgument("node merged with itself".into()));
            }
            heights[node] = m.height;
        }
        Ok(Self { leaves, merges })
    }

    pub fn leaves(&self) -> &[String] {
        &self.leaves
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn root(&self) -> usize {
        2 * self.leaves.len() - 2
    }

    pub fn height(&self, node: usize) -> f64 {
        if node < self.leaves.len() {
            0.0
        } else {
            self.merges[node - self.leaves.len()].height
        }
    }

    pub fn leaf_index(&self, name: &str) -> Option<usize> {
        self.leaves.iter().position(|l| l == name)
    }

    /// Leaf indices under `node`, in tree order (left to right).
    pub fn leaf_indices(&self, node: usize) -> Vec<usize> {
        let n = self.leaves.len();
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            if x < n {
                out.push(x);
            } else {
                let m = self.merges[x - n];
                stack.push(m.right);
                stack.push(m.left);
            }
        }
        out
    }

    pub fn leaf_names(&self, node: usize) -> Vec<&str> {
        self.leaf_indices(node)
            .into_iter()
            .map(|i| self.leaves[i].as_str())
            .collect()
    }

    /// Leaf sets of all internal nodes, in merge order.
    pub fn internal_leaf_sets(&self) -> Vec<Vec<usize>> {
        let n = self.leaves.len();
        (0..self.merges.len())
            .map(|i| self.leaf_indices(n + i))
            .collect()
    }

    /// Clusters left after undoing every merge above `height`.
    pub fn cut_at_height(&self, height: f64) -> Result<Partition> {
        if height.is_nan() || height < 0.0 {
            return Err(Error::InvalidArgument(
                "cut height must be non-negative".into(),
            ));
        }
        Ok(self.partition_keeping(|m| m.height <= height))
    }

    /// The height cut yielding exactly `k` clusters.
    pub fn cut_to_clusters(&self, k: usize) -> Result<Partition> {
        let attainable = self.attainable_cluster_counts();
        if !attainable.contains(&k) {
            return Err(Error::UnattainableCut(k, attainable));
        }
        let kept = self.len() - k;
        if kept == 0 {
            return Ok(self.partition_keeping(|_| false));
        }
        let mut heights: Vec<f64> = self.merges.iter().map(|m| m.height).collect();
        heights.sort_by(f64::total_cmp);
        let threshold = heights[kept - 1];
        Ok(self.partition_keeping(|m| m.height <= threshold))
    }

    /// Cluster counts reachable by some height cut, ascending.
    pub fn attainable_cluster_counts(&self) -> Vec<usize> {
        let n = self.len();
        let mut heights: Vec<f64> = self.merges.iter().map(|m| m.height).collect();
        heights.sort_by(f64::total_cmp);
        let mut counts = BTreeSet::from([n]);
        for (i, h) in heights.iter().enumerate() {
            if heights.get(i + 1) != Some(h) {
                counts.insert(n - (i + 1));
            }
        }
        counts.into_iter().collect()
    }

    fn partition_keeping(&self, mut keep: impl FnMut(&Merge) -> bool) -> Partition {
        let n = self.len();
        // union-find over leaves, merged per kept step
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut y = x;
            while parent[y] != root {
                let next = parent[y];
                parent[y] = root;
                y = next;
            }
            root
        }
        let mut first_leaf = vec![0; 2 * n - 1];
        for (i, slot) in first_leaf.iter_mut().enumerate().take(n) {
            *slot = i;
        }
        for (i, m) in self.merges.iter().enumerate() {
            first_leaf[n + i] = first_leaf[m.left];
            if keep(m) {
                let a = find(&mut parent, first_leaf[m.left]);
                let b = find(&mut parent, first_leaf[m.right]);
                parent[b] = a;
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot_of_root = vec![usize::MAX; n];
        for leaf in 0..n {
            let root = find(&mut parent, leaf);
            if slot_of_root[root] == usize::MAX {
                slot_of_root[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot_of_root[root]].push(leaf);
        }
        groups
            .into_iter()
            .map(|g| g.into_iter().map(|i| self.leaves[i].clone()).collect())
            .collect()
    }

    /// Height of the lowest common ancestor for every leaf pair, row-major.
    pub fn cophenetic_matrix(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n * n];
        for m in &self.merges {
            let left = self.leaf_indices(m.left);
            let right = self.leaf_indices(m.right);
            for &a in &left {
                for &b in &right {
                    out[a * n + b] = m.height;
                    out[b * n + a] = m.height;
                }
            }
        }
        out
    }

    pub fn cophenetic(&self, a: &str, b: &str) -> Result<f64> {
        let ia = self
            .leaf_index(a)
            .ok_or_else(|| Error::UnknownElement(a.to_string()))?;
        let ib = self
            .leaf_index(b)
            .ok_or_else(|| Error::UnknownElement(b.to_string()))?;
        if ia == ib {
            return Ok(0.0);
        }
        let n = self.len();
        // walk merges until the first one containing both
        let mut owner: Vec<usize> = (0..2 * n - 1).collect();
        let cluster_of = |x: usize, owner: &[usize]| {
            let mut c = x;
            while owner[c] != c {
                c = owner[c];
            }
            c
        };
        for (i, m) in self.merges.iter().enumerate() {
            owner[m.left] = n + i;
            owner[m.right] = n + i;
            if cluster_of(ia, &owner) == cluster_of(ib, &owner) {
                return Ok(m.height);
            }
        }
        Err(Error::Invariant("leaves never joined".into()))
    }

    /// Newick with branch lengths; internal nodes are labelled with their
    /// height so the tree can be read back without accumulating rounding.
    pub fn to_newick(&self) -> String {
        let mut out = String::new();
        self.write_newick(self.root(), None, &mut out);
        out.push(';');
        out
    }

    fn write_newick(&self, node: usize, parent_height: Option<f64>, out: &mut String) {
        let n = self.len();
        let height = self.height(node);
        if node < n {
            out.push_str(&newick_label(&self.leaves[node]));
        } else {
            let m = self.merges[node - n];
            out.push('(');
            self.write_newick(m.left, Some(height), out);
            out.push(',');
            self.write_newick(m.right, Some(height), out);
            let _ = write!(out, "){height}");
        }
        if let Some(p) = parent_height {
            let _ = write!(out, ":{}", p - height);
        }
    }

    /// DOT digraph from the root down to the leaves.
    pub fn to_dot(&self) -> String {
        let n = self.len();
        let mut out = String::from("digraph dendrogram {\n");
        for leaf in &self.leaves {
            let _ = writeln!(out, "  {} [shape=plaintext];", dot_id(leaf));
        }
        let name = |node: usize| {
            if node < n {
                dot_id(&self.leaves[node])
            } else {
                format!("\"node{}\"", node - n)
            }
        };
        for (i, m) in self.merges.iter().enumerate() {
            let _ = writeln!(out, "  \"node{i}\" [label=\"{}\"];", m.height);
            let _ = writeln!(out, "  \"node{i}\" -> {};", name(m.left));
            let _ = writeln!(out, "  \"node{i}\" -> {};", name(m.right));
        }
        out.push_str("}\n");
        out
    }

    /// Reads the Newick form produced by [`Dendrogram::to_newick`]. Internal
    /// labels that parse as numbers are taken as heights; otherwise heights
    /// come from branch lengths above the leaves.
    pub fn from_newick(text: &str) -> Result<Self> {
        let mut parser = NewickParser {
            bytes: text.trim().as_bytes(),
            pos: 0,
        };
        let tree = parser.node()?;
        parser.expect(b';')?;
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("trailing characters after `;`"));
        }
        let mut leaves = Vec::new();
        let mut pending = Vec::new();
        flatten(&tree, &mut leaves, &mut pending)?;
        let n = leaves.len();
        // post-order, then stable by height: children always precede parents
        let mut order: Vec<usize> = (0..pending.len()).collect();
        order.sort_by(|&a, &b| pending[a].2.total_cmp(&pending[b].2));
        let mut renumber = vec![0; pending.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = n + new;
        }
        let map = |id: NodeRef| match id {
            NodeRef::Leaf(i) => i,
            NodeRef::Internal(i) => renumber[i],
        };
        let merges = order
            .iter()
            .map(|&old| {
                let (l, r, h) = pending[old];
                Merge {
                    left: map(l),
                    right: map(r),
                    height: h,
                }
            })
            .collect();
        Self::new(leaves, merges)
    }
}

fn newick_label(name: &str) -> String {
    if name.is_empty() || name.contains(|c: char| "()[]':;,".contains(c) || c.is_whitespace()) {
        format!("'{}'", name.replace('\'', "''"))
    } else {
        name.to_string()
    }
}

impl Serialize for Dendrogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Dendrogram", 2)?;
        s.serialize_field("leaves", &self.leaves)?;
        s.serialize_field("merges", &self.merges)?;
        s.end()
    }
}

#[derive(Debug)]
struct NewickNode {
    label: Option<String>,
    length: Option<f64>,
    children: Vec<NewickNode>,
}

#[derive(Debug, Clone, Copy)]
enum NodeRef {
    Leaf(usize),
    Internal(usize),
}

/// Returns the node's reference and height.
fn flatten(
    node: &NewickNode,
    leaves: &mut Vec<String>,
    pending: &mut Vec<(NodeRef, NodeRef, f64)>,
) -> Result<(NodeRef, f64)> {
    if node.children.is_empty() {
        let label = node
            .label
            .clone()
            .ok_or_else(|| Error::InvalidArgument("unnamed Newick leaf".into()))?;
        leaves.push(label);
        return Ok((NodeRef::Leaf(leaves.len() - 1), 0.0));
    }
    if node.children.len() != 2 {
        return Err(Error::InvalidArgument(
            "dendrogram nodes must have exactly two children".into(),
        ));
    }
    let (left, lh) = flatten(&node.children[0], leaves, pending)?;
    let (right, rh) = flatten(&node.children[1], leaves, pending)?;
    let labelled = node.label.as_deref().and_then(|l| l.parse::<f64>().ok());
    let height = match labelled {
        Some(h) => h,
        None => {
            let from = |child: &NewickNode, h: f64| {
                child.length.map(|len| h + len).ok_or_else(|| {
                    Error::InvalidArgument(
                        "Newick node has neither height nor branch lengths".into(),
                    )
                })
            };
            from(&node.children[0], lh)?.max(from(&node.children[1], rh)?)
        }
    };
    pending.push((left, right, height));
    Ok((NodeRef::Internal(pending.len() - 1), height))
}

struct NewickParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl NewickParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            message: format!("Newick offset {}: {message}", self.pos),
        }
    }

    fn skip_space(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_space();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn node(&mut self) -> Result<NewickNode> {
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                children.push(self.node()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
        }
        let label = self.label()?;
        let length = if self.peek() == Some(b':') {
            self.pos += 1;
            let raw = self.unquoted();
            Some(
                raw.parse::<f64>()
                    .map_err(|_| self.error(&format!("bad branch length `{raw}`")))?,
            )
        } else {
            None
        };
        Ok(NewickNode {
            label,
            length,
            children,
        })
    }

    fn label(&mut self) -> Result<Option<String>> {
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            let mut out = Vec::new();
            loop {
                match self.bytes.get(self.pos) {
                    None => return Err(self.error("unterminated quoted label")),
                    Some(b'\'') if self.bytes.get(self.pos + 1) == Some(&b'\'') => {
                        out.push(b'\'');
                        self.pos += 2;
                    }
                    Some(b'\'') => {
                        self.pos += 1;
                        break;
                    }
                    Some(&c) => {
                        out.push(c);
                        self.pos += 1;
                    }
                }
            }
            return String::from_utf8(out)
                .map(Some)
                .map_err(|_| self.error("label is not UTF-8"));
        }
        let raw = self.unquoted();
        Ok((!raw.is_empty()).then_some(raw))
    }

    fn unquoted(&mut self) -> String {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.bytes.len() && !b"(),:;'".contains(&self.bytes[self.pos]) {
            if self.bytes[self.pos].is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }
}

/// The cut chosen by the population-product criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSelection {
    pub clusters: usize,
    pub populations: Vec<usize>,
    pub score: BigUint,
    pub partition: Partition,
}

impl Serialize for CutSelection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("CutSelection", 4)?;
        s.serialize_field("clusters", &self.clusters)?;
        s.serialize_field("populations", &self.populations)?;
        s.serialize_field("score", &self.score.to_string())?;
        s.serialize_field("partition", &self.partition)?;
        s.end()
    }
}

/// Among height cuts with `1 < k < N` clusters, the one with the largest
/// product of cluster populations; ties go to the smaller `k`.
pub fn select_cut(dendrogram: &Dendrogram) -> Result<CutSelection> {
    let n = dendrogram.len();
    if n < 3 {
        return Err(Error::TooFewItems { needed: 3, got: n });
    }
    let mut best: Option<CutSelection> = None;
    for k in dendrogram.attainable_cluster_counts() {
        if k <= 1 || k >= n {
            continue;
        }
        let partition = dendrogram.cut_to_clusters(k)?;
        let populations: Vec<usize> = partition.iter().map(Vec::len).collect();
        let score = populations
            .iter()
            .fold(BigUint::from(1u32), |acc, &p| acc * BigUint::from(p));
        if best.as_ref().is_none_or(|b| score > b.score) {
            best = Some(CutSelection {
                clusters: k,
                populations,
                score,
                partition,
            });
        }
    }
    best.ok_or_else(|| {
        Error::InvalidArgument("no height cut gives between 2 and N-1 clusters".into())
    })
}
