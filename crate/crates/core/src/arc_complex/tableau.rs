//! Tableaux for the multiply punctured monogon and the cell complex they
//! index, plus the hand-computed Example 5 complex for three punctures.
//!
//! A tableau on `S = {1, …, s}` is a planted plane tree whose non-root
//! vertices carry proper nonempty subsets of `S`; labels strictly shrink
//! away from the root and labels at equal depth are disjoint. Edges are the
//! arcs of the family, so a tableau with `k` edges indexes a `(k−1)`-cell.
//! Deleting an arc deletes its vertex and hands the vertex's children to
//! its parent, in place.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{ArcComplexError, ChainComplex};

/// Labels are bitmasks: bit `i − 1` stands for `i ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableauNode {
    pub label: u32,
    pub children: Vec<TableauNode>,
}

impl TableauNode {
    pub fn leaf(label: u32) -> Self {
        Self { label, children: Vec::new() }
    }

    pub fn new(label: u32, children: Vec<TableauNode>) -> Self {
        Self { label, children }
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(Self::count).sum::<usize>()
    }
}

/// The root is implicit; `children` are its children in the tableau's linear order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    s: u32,
    children: Vec<TableauNode>,
}

pub fn mask_of(elems: &[u32]) -> u32 {
    elems.iter().fold(0, |m, e| m | 1 << (e - 1))
}

fn elems_of(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

impl Tableau {
    pub fn new(s: u32, children: Vec<TableauNode>) -> Result<Self, ArcComplexError> {
        if s == 0 || s > 31 {
            return Err(ArcComplexError::InvalidTableau(format!("|S| = {s} out of range")));
        }
        let t = Self { s, children };
        t.validate()?;
        Ok(t)
    }

    fn full(&self) -> u32 {
        (1u32 << self.s) - 1
    }

    fn validate(&self) -> Result<(), ArcComplexError> {
        fn walk(n: &TableauNode, parent: u32, depth: usize, levels: &mut Vec<u32>) -> Result<(), ArcComplexError> {
            if n.label == 0 || n.label & !parent != 0 || n.label == parent {
                return Err(ArcComplexError::InvalidTableau(format!(
                    "label {:?} is not a proper nonempty subset of {:?}",
                    elems_of(n.label),
                    elems_of(parent)
                )));
            }
            if levels.len() <= depth {
                levels.push(0);
            }
            if levels[depth] & n.label != 0 {
                return Err(ArcComplexError::InvalidTableau(format!("labels at depth {} overlap", depth + 1)));
            }
            levels[depth] |= n.label;
            n.children.iter().try_for_each(|c| walk(c, n.label, depth + 1, levels))
        }
        let mut levels = Vec::new();
        self.children.iter().try_for_each(|c| walk(c, self.full(), 0, &mut levels))
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn children(&self) -> &[TableauNode] {
        &self.children
    }

    pub fn num_edges(&self) -> usize {
        self.children.iter().map(TableauNode::count).sum()
    }

    /// Cell dimension, `#edges − 1`.
    pub fn dimension(&self) -> i64 {
        self.num_edges() as i64 - 1
    }

    fn node(&self, path: &[usize]) -> &TableauNode {
        let mut n = &self.children[path[0]];
        for &i in &path[1..] {
            n = &n.children[i];
        }
        n
    }

    /// Label of the vertex at `path` (child indices from the root).
    pub fn label_at(&self, path: &[usize]) -> Vec<u32> {
        elems_of(self.node(path).label)
    }

    /// Deletes the vertex at `path`, splicing its children into its parent.
    pub fn delete_vertex(&self, path: &[usize]) -> Tableau {
        fn splice(list: &mut Vec<TableauNode>, path: &[usize]) {
            if path.len() == 1 {
                let removed = list.remove(path[0]);
                for (k, c) in removed.children.into_iter().enumerate() {
                    list.insert(path[0] + k, c);
                }
            } else {
                splice(&mut list[path[0]].children, &path[1..]);
            }
        }
        let mut out = self.clone();
        splice(&mut out.children, path);
        out
    }

    /// Codimension-one faces with incidence signs: the vertex in pre-order
    /// position `p` (root excluded, counted from 0) is deleted with sign `(−1)^p`.
    pub fn faces(&self) -> Vec<(i64, Tableau)> {
        pre_order(self)
            .into_iter()
            .skip(1)
            .enumerate()
            .map(|(p, path)| (if p % 2 == 0 { 1 } else { -1 }, self.delete_vertex(&path)))
            .collect()
    }

    /// Compact text form, e.g. `[12[2],3]` for a root with children `{1,2}`
    /// (itself with child `{2}`) and `{3}`.
    pub fn encode(&self) -> String {
        fn enc(list: &[TableauNode], out: &mut String) {
            out.push('[');
            for (k, n) in list.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let elems = elems_of(n.label);
                let sep = if elems.iter().any(|e| *e > 9) { "." } else { "" };
                out.push_str(&elems.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(sep));
                if !n.children.is_empty() {
                    enc(&n.children, out);
                }
            }
            out.push(']');
        }
        let mut out = String::new();
        enc(&self.children, &mut out);
        out
    }
}

/// Vertices in pre-order as paths from the root (the root is the empty
/// path): the root, then the pre-order of each child subtree in the
/// tableau's linear order.
pub fn pre_order(t: &Tableau) -> Vec<Vec<usize>> {
    fn walk(list: &[TableauNode], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (i, n) in list.iter().enumerate() {
            prefix.push(i);
            out.push(prefix.clone());
            walk(&n.children, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![Vec::new()];
    walk(&t.children, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauEnumeration {
    pub s: u32,
    /// Sorted by number of edges, then lexicographically.
    pub tableaux: Vec<Tableau>,
    /// Number of tableaux with `k` edges, keyed by `k`.
    pub counts: BTreeMap<usize, usize>,
    pub warning: Option<String>,
}

impl TableauEnumeration {
    /// Counts for `1..=max` edges, zero-filled.
    pub fn count_vector(&self, max: usize) -> Vec<usize> {
        (1..=max).map(|k| self.counts.get(&k).copied().unwrap_or(0)).collect()
    }
}

/// Ordered sequences of sibling subtrees with pairwise disjoint labels drawn
/// from `avail`, each label a proper subset of `parent`, using at most
/// `budget` edges. Returned with their edge counts.
fn forests(avail: u32, parent: u32, budget: usize) -> Vec<(Vec<TableauNode>, usize)> {
    let mut out = vec![(Vec::new(), 0)];
    if budget == 0 {
        return out;
    }
    // nonempty submasks of avail
    let mut l = avail;
    while l != 0 {
        if l != parent {
            for (sub, e1) in forests(l, l, budget - 1) {
                for (rest, e2) in forests(avail & !l, parent, budget - 1 - e1) {
                    let mut list = vec![TableauNode::new(l, sub.clone())];
                    list.extend(rest);
                    out.push((list, 1 + e1 + e2));
                }
            }
        }
        l = (l - 1) & avail;
    }
    out
}

/// All tableaux on `S = {1, …, s}` with between 1 and `max_edges` edges.
pub fn enumerate_tableaux(s: u32, max_edges: usize) -> Result<TableauEnumeration, ArcComplexError> {
    if s == 0 || s > 16 {
        return Err(ArcComplexError::InvalidInput(format!("|S| must be in 1..=16, got {s}")));
    }
    let full = (1u32 << s) - 1;
    let mut tableaux: Vec<Tableau> = forests(full, full, max_edges)
        .into_iter()
        .filter(|(_, e)| *e > 0)
        .map(|(children, _)| Tableau { s, children })
        .collect();
    tableaux.sort_by(|a, b| a.num_edges().cmp(&b.num_edges()).then_with(|| a.cmp(b)));
    let mut counts = BTreeMap::new();
    for t in &tableaux {
        *counts.entry(t.num_edges()).or_insert(0) += 1;
    }
    let warning = (s == 1).then(|| "the once-punctured monogon is excluded: no proper nonempty labels exist".to_string());
    Ok(TableauEnumeration { s, tableaux, counts, warning })
}

/// A chain complex whose cells carry names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedChainComplex {
    pub complex: ChainComplex,
    /// `names[d][i]` names cell `i` in dimension `d` (starting at `min_degree`).
    pub names: Vec<Vec<String>>,
}

impl NamedChainComplex {
    pub fn index_of(&self, name: &str) -> Option<(usize, usize)> {
        self.names.iter().enumerate().find_map(|(d, lvl)| lvl.iter().position(|n| n == name).map(|i| (d, i)))
    }

    /// `∂(name)` as `(coefficient, face name)` pairs.
    pub fn boundary_of(&self, name: &str) -> Vec<(i64, String)> {
        let Some((d, i)) = self.index_of(name) else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        self.complex.boundaries[d].column(i).iter().map(|&(r, c)| (c, self.names[d - 1][r].clone())).collect()
    }
}

/// The cellular chain complex of tableaux on `{1, …, s}`, cells named by
/// [`Tableau::encode`]. Dimension `d` holds the tableaux with `d + 1` edges.
pub fn tableau_complex(s: u32) -> Result<(NamedChainComplex, Vec<Vec<Tableau>>), ArcComplexError> {
    let en = enumerate_tableaux(s, 2 * s as usize + 2)?;
    let top = en.counts.keys().last().copied().unwrap_or(0);
    let mut cells: Vec<Vec<Tableau>> = vec![Vec::new(); top];
    for t in en.tableaux {
        let k = t.num_edges();
        cells[k - 1].push(t);
    }
    let index: Vec<BTreeMap<&Tableau, usize>> =
        cells.iter().map(|lvl| lvl.iter().enumerate().map(|(i, t)| (t, i)).collect()).collect();
    let mut cc = ChainComplex::new(0, cells.iter().map(Vec::len).collect());
    for d in 1..cells.len() {
        for (j, t) in cells[d].iter().enumerate() {
            for (sign, f) in t.faces() {
                cc.boundaries[d].add(index[d - 1][&f], j, sign);
            }
        }
    }
    let names = cells.iter().map(|lvl| lvl.iter().map(Tableau::encode).collect()).collect();
    Ok((NamedChainComplex { complex: cc, names }, cells))
}

const PAIRS: [(u32, u32); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

fn third(i: u32, j: u32) -> u32 {
    6 - i - j
}

/// The cell complex of Example 5 with cells `A_i, B_k` (dimension 0),
/// `C_ij, D_ij, E_k, F_k` (1), `G_ij, H_ij, I_ij, J_ij` (2), `K_ij, L_ij` (3)
/// and its boundary relations, where `k` is the index other than `i, j`.
pub fn example5_complex() -> NamedChainComplex {
    let ks = [1u32, 2, 3];
    let mut names: Vec<Vec<String>> = vec![Vec::new(); 4];
    names[0].extend(ks.iter().map(|k| format!("A{k}")));
    names[0].extend(ks.iter().map(|k| format!("B{k}")));
    for x in ["C", "D"] {
        names[1].extend(PAIRS.iter().map(|(i, j)| format!("{x}{i}{j}")));
    }
    for x in ["E", "F"] {
        names[1].extend(ks.iter().map(|k| format!("{x}{k}")));
    }
    for x in ["G", "H", "I", "J"] {
        names[2].extend(PAIRS.iter().map(|(i, j)| format!("{x}{i}{j}")));
    }
    for x in ["K", "L"] {
        names[3].extend(PAIRS.iter().map(|(i, j)| format!("{x}{i}{j}")));
    }
    let pos = |d: usize, n: &str| names[d].iter().position(|m| m == n).expect("known cell");
    let mut rel: Vec<(usize, String, Vec<(i64, String)>)> = Vec::new();
    for k in ks {
        rel.push((1, format!("E{k}"), vec![(1, format!("A{k}")), (-1, format!("B{k}"))]));
        rel.push((1, format!("F{k}"), vec![(1, format!("B{k}")), (-1, format!("A{k}"))]));
    }
    for (i, j) in PAIRS {
        let k = third(i, j);
        let c = |a: u32, b: u32| format!("C{a}{b}");
        let d = |a: u32, b: u32| format!("D{a}{b}");
        rel.push((1, c(i, j), vec![(1, format!("A{i}")), (-1, format!("A{j}"))]));
        rel.push((1, d(i, j), vec![(1, format!("A{j}")), (-1, format!("B{k}"))]));
        rel.push((2, format!("G{i}{j}"), vec![(1, c(i, j)), (-1, d(j, i)), (1, d(i, j))]));
        rel.push((2, format!("H{i}{j}"), vec![(1, d(i, j)), (-1, c(j, k)), (1, format!("F{k}"))]));
        rel.push((2, format!("I{i}{j}"), vec![(1, d(i, j)), (-1, format!("E{k}")), (1, c(k, j))]));
        rel.push((2, format!("J{i}{j}"), vec![(1, c(i, j)), (-1, c(i, k)), (1, c(j, k))]));
        rel.push((
            3,
            format!("K{i}{j}"),
            vec![(1, format!("G{i}{j}")), (-1, format!("H{i}{j}")), (1, format!("H{j}{i}")), (-1, format!("J{i}{j}"))],
        ));
        rel.push((
            3,
            format!("L{i}{j}"),
            vec![(1, format!("I{i}{j}")), (-1, format!("G{i}{j}")), (1, format!("J{k}{i}")), (-1, format!("I{j}{i}"))],
        ));
    }
    let mut cc = ChainComplex::new(0, names.iter().map(Vec::len).collect());
    for (d, cell, terms) in rel {
        let j = pos(d, &cell);
        for (c, face) in terms {
            cc.boundaries[d].add(pos(d - 1, &face), j, c);
        }
    }
    NamedChainComplex { complex: cc, names }
}

/// The Example 5 letter of a tableau on `{1, 2, 3}`, or `None` for other tableaux.
pub fn example5_name(t: &Tableau) -> Option<String> {
    if t.s != 3 {
        return None;
    }
    let single = |n: &TableauNode| (n.label.count_ones() == 1 && n.children.is_empty()).then(|| elems_of(n.label)[0]);
    let pair = |n: &TableauNode| (n.label.count_ones() == 2).then(|| third(elems_of(n.label)[0], elems_of(n.label)[1]));
    let ch = &t.children;
    let name = match (ch.len(), t.num_edges()) {
        (1, 1) => match single(&ch[0]) {
            Some(i) => format!("A{i}"),
            None => format!("B{}", pair(&ch[0])?),
        },
        (2, 2) => match (single(&ch[0]), single(&ch[1])) {
            (Some(i), Some(j)) => format!("C{i}{j}"),
            (Some(k), None) => format!("E{k}"),
            (None, Some(k)) => format!("F{k}"),
            _ => return None,
        },
        (1, 2) => {
            let k = pair(&ch[0])?;
            let j = single(&ch[0].children[0])?;
            format!("D{}{j}", third(j, k))
        }
        (1, 3) => {
            let g = &ch[0].children;
            format!("G{}{}", single(&g[0])?, single(&g[1])?)
        }
        (2, 3) => match (single(&ch[0]), single(&ch[1])) {
            (None, Some(k)) => {
                let j = single(ch[0].children.first()?)?;
                format!("H{}{j}", third(j, k))
            }
            (Some(k), None) => {
                let j = single(ch[1].children.first()?)?;
                format!("I{}{j}", third(j, k))
            }
            _ => return None,
        },
        (3, 3) => format!("J{}{}", single(&ch[0])?, single(&ch[1])?),
        (2, 4) => {
            let (big, small) = if single(&ch[0]).is_none() { (&ch[0], &ch[1]) } else { (&ch[1], &ch[0]) };
            single(small)?;
            let (i, j) = (single(&big.children[0])?, single(&big.children[1])?);
            if core::ptr::eq(big, &ch[0]) {
                format!("K{i}{j}")
            } else {
                format!("L{i}{j}")
            }
        }
        _ => return None,
    };
    Some(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pre_order_examples() {
        let single = Tableau::new(2, vec![TableauNode::leaf(mask_of(&[1]))]).unwrap();
        assert_eq!(pre_order(&single), vec![vec![], vec![0]]);
        let t = Tableau::new(
            3,
            vec![TableauNode::new(mask_of(&[1, 2]), vec![TableauNode::leaf(mask_of(&[2]))]), TableauNode::leaf(mask_of(&[3]))],
        )
        .unwrap();
        assert_eq!(pre_order(&t), vec![vec![], vec![0], vec![0, 0], vec![1]]);
        assert_eq!(t.encode(), "[12[2],3]");
    }

    #[test]
    fn validation() {
        let full = Tableau::new(2, vec![TableauNode::leaf(mask_of(&[1, 2]))]);
        assert!(full.is_err());
        let overlap = Tableau::new(3, vec![TableauNode::leaf(mask_of(&[1, 2])), TableauNode::leaf(mask_of(&[2]))]);
        assert!(overlap.is_err());
        let not_nested = Tableau::new(3, vec![TableauNode::new(mask_of(&[1]), vec![TableauNode::leaf(mask_of(&[2]))])]);
        assert!(not_nested.is_err());
    }

    #[test]
    fn counts_for_three_punctures() {
        let en = enumerate_tableaux(3, 10).unwrap();
        assert_eq!(en.count_vector(5), vec![6, 18, 24, 12, 0]);
        for t in &en.tableaux {
            assert!(t.validate().is_ok());
        }
    }

    #[test]
    fn two_and_one_punctures() {
        let en = enumerate_tableaux(2, 10).unwrap();
        let counts = en.count_vector(3);
        assert_eq!(counts, vec![2, 2, 0]);
        assert_eq!(counts[0] as i64 - counts[1] as i64, 0);
        let one = enumerate_tableaux(1, 10).unwrap();
        assert!(one.tableaux.is_empty());
        assert!(one.warning.is_some());
    }

    #[test]
    fn delete_vertex_splices_children() {
        let t = Tableau::new(
            3,
            vec![TableauNode::new(mask_of(&[1, 2]), vec![TableauNode::leaf(1), TableauNode::leaf(2)]), TableauNode::leaf(4)],
        )
        .unwrap();
        let d = t.delete_vertex(&[0]);
        assert_eq!(d.encode(), "[1,2,3]");
        assert_eq!(example5_name(&t).as_deref(), Some("K12"));
        assert_eq!(example5_name(&d).as_deref(), Some("J12"));
    }
}
