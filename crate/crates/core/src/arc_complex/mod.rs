//! Arc complexes of polygons and of the multiply punctured monogon, with the
//! simplicial and cellular tools needed to certify sphericity: links,
//! suspension, pseudomanifold checks and integral homology.

mod homology;
mod tableau;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub use homology::{invariant_factors, ChainComplex, Homology, HomologyGroup, IntMatrix};
pub use tableau::{
    enumerate_tableaux, example5_complex, example5_name, mask_of, pre_order, tableau_complex, NamedChainComplex, Tableau,
    TableauEnumeration, TableauNode,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcComplexError {
    #[error("the complex has no faces")]
    EmptyComplex,
    #[error("face {0:?} is not in the complex")]
    FaceAbsent(Vec<u32>),
    #[error("invalid chord family: {0}")]
    InvalidChords(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Whether `{i, j}` is a diagonal of the `n`-gon (not a side, not a point).
pub fn is_chord(n: usize, (i, j): (usize, usize)) -> bool {
    i < n && j < n && {
        let d = (i + n - j) % n;
        d != 0 && d != 1 && d != n - 1
    }
}

/// Two chords cross when their endpoints strictly interleave.
pub fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let (c, d) = (c.min(d), c.max(d));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// A set of pairwise non-crossing diagonals of a labeled `n`-gon.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordFamily {
    n: usize,
    chords: BTreeSet<(usize, usize)>,
}

impl ChordFamily {
    pub fn new(n: usize, chords: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ArcComplexError> {
        let mut set = BTreeSet::new();
        for (i, j) in chords {
            if !is_chord(n, (i, j)) {
                return Err(ArcComplexError::InvalidChords(format!("({i},{j}) is not a diagonal of the {n}-gon")));
            }
            if !set.insert((i.min(j), i.max(j))) {
                return Err(ArcComplexError::InvalidChords(format!("({i},{j}) repeated")));
            }
        }
        let list: Vec<_> = set.iter().copied().collect();
        for (k, a) in list.iter().enumerate() {
            if let Some(b) = list[k + 1..].iter().find(|b| chords_cross(*a, **b)) {
                return Err(ArcComplexError::InvalidChords(format!("{a:?} crosses {b:?}")));
            }
        }
        Ok(Self { n, chords: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &BTreeSet<(usize, usize)> {
        &self.chords
    }

    pub fn is_triangulation(&self) -> bool {
        self.chords.len() + 3 == self.n
    }
}

/// The diagonals of the `n`-gon in lexicographic order; the vertex id of a
/// chord in [`polygon_arc_complex`] is its index here.
pub fn polygon_chords(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if is_chord(n, (i, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// A finite abstract simplicial complex, stored as all of its (nonempty)
/// faces grouped by dimension. Faces are sorted vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    faces: Vec<BTreeSet<Vec<u32>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of the given faces.
    pub fn from_facets(facets: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut k = Self::empty();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            k.insert_closed(&f);
        }
        k
    }

    fn insert_closed(&mut self, f: &[u32]) {
        if f.is_empty() || self.contains(f) {
            return;
        }
        let d = f.len() - 1;
        while self.faces.len() <= d {
            self.faces.push(BTreeSet::new());
        }
        self.faces[d].insert(f.to_vec());
        if f.len() > 1 {
            for i in 0..f.len() {
                let mut g = f.to_vec();
                g.remove(i);
                self.insert_closed(&g);
            }
        }
    }

    pub fn contains(&self, f: &[u32]) -> bool {
        f.is_empty() || self.faces.get(f.len() - 1).is_some_and(|s| s.contains(f))
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Dimension; the empty complex has dimension −1.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn faces(&self, dim: usize) -> impl Iterator<Item = &Vec<u32>> {
        self.faces.get(dim).into_iter().flatten()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.faces.iter().flatten()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.faces(0).map(|f| f[0]).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(BTreeSet::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, c)| if d % 2 == 0 { *c as i64 } else { -(*c as i64) }).sum()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for (d, level) in self.faces.iter().enumerate() {
            let above: BTreeSet<Vec<u32>> = match self.faces.get(d + 1) {
                Some(up) => up
                    .iter()
                    .flat_map(|f| (0..f.len()).map(move |i| {
                        let mut g = f.clone();
                        g.remove(i);
                        g
                    }))
                    .collect(),
                None => BTreeSet::new(),
            };
            out.extend(level.iter().filter(|f| !above.contains(*f)).cloned());
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets().iter().all(|f| f.len() as i64 - 1 == d)
    }

    /// Pure, and every codimension-one face lies in exactly two facets. In
    /// dimension 0 the codimension-one face is the empty face, so this means
    /// exactly two points.
    pub fn is_pseudomanifold(&self) -> bool {
        if self.is_empty() || !self.is_pure() {
            return false;
        }
        let d = self.faces.len() - 1;
        if d == 0 {
            return self.faces[0].len() == 2;
        }
        let mut count: BTreeMap<Vec<u32>, usize> = self.faces[d - 1].iter().map(|f| (f.clone(), 0)).collect();
        for f in &self.faces[d] {
            for i in 0..f.len() {
                let mut g = f.clone();
                g.remove(i);
                *count.get_mut(&g).expect("closed under faces") += 1;
            }
        }
        count.values().all(|c| *c == 2)
    }

    /// Connectedness of the 1-skeleton. The empty complex is not connected.
    pub fn is_connected(&self) -> bool {
        let vs = self.vertices();
        let Some(&first) = vs.first() else { return false };
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for e in self.faces(1) {
            adj.entry(e[0]).or_default().push(e[1]);
            adj.entry(e[1]).or_default().push(e[0]);
        }
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for w in adj.get(&v).into_iter().flatten() {
                if seen.insert(*w) {
                    stack.push(*w);
                }
            }
        }
        seen.len() == vs.len()
    }

    /// `{g : g ∩ face = ∅, g ∪ face ∈ K}`; the empty face gives `K` itself.
    pub fn link(&self, face: &[u32]) -> Result<Self, ArcComplexError> {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        if !self.contains(&f) {
            return Err(ArcComplexError::FaceAbsent(f));
        }
        let mut link = Self::empty();
        for g in self.all_faces() {
            if g.len() > f.len() && f.iter().all(|v| g.binary_search(v).is_ok()) {
                let rest: Vec<u32> = g.iter().copied().filter(|v| f.binary_search(v).is_err()).collect();
                let d = rest.len() - 1;
                while link.faces.len() <= d {
                    link.faces.push(BTreeSet::new());
                }
                link.faces[d].insert(rest);
            }
        }
        Ok(link)
    }

    /// Join with two new points that span no common face. The new points get
    /// the two smallest ids above the existing vertices.
    pub fn suspension(&self) -> Result<Self, ArcComplexError> {
        if self.is_empty() {
            return Err(ArcComplexError::EmptyComplex);
        }
        let top = self.vertices().last().copied().unwrap_or(0);
        let (a, b) = (top + 1, top + 2);
        let mut out = self.clone();
        out.faces.push(BTreeSet::new());
        for apex in [a, b] {
            out.faces[0].insert(vec![apex]);
            for f in self.all_faces() {
                let mut g = f.clone();
                g.push(apex);
                out.faces[g.len() - 1].insert(g);
            }
        }
        Ok(out)
    }

    /// Simplicial chain complex. With `reduced`, degree −1 carries the empty
    /// face and `∂_0` is the augmentation.
    pub fn chain_complex(&self, reduced: bool) -> ChainComplex {
        let index: Vec<BTreeMap<&Vec<u32>, usize>> =
            self.faces.iter().map(|lvl| lvl.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
        let mut ranks: Vec<usize> = self.f_vector();
        if reduced {
            ranks.insert(0, 1);
        }
        let mut cc = ChainComplex::new(if reduced { -1 } else { 0 }, ranks);
        let shift = usize::from(reduced);
        for (d, lvl) in self.faces.iter().enumerate() {
            for (j, f) in lvl.iter().enumerate() {
                if d == 0 {
                    if reduced {
                        cc.boundaries[shift].add(0, j, 1);
                    }
                    continue;
                }
                for i in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(i);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    cc.boundaries[d + shift].add(index[d - 1][&g], j, sign);
                }
            }
        }
        cc
    }

    /// Reduced integral homology; the empty complex has `Z` in degree −1.
    pub fn reduced_homology(&self) -> Homology {
        self.chain_complex(true).homology()
    }

    /// Reduced homology is that of `S^d`.
    pub fn has_sphere_homology(&self, d: i64) -> bool {
        self.reduced_homology().is_reduced_sphere(d)
    }
}

/// All non-crossing sets of diagonals of the `n`-gon. Vertex `k` is the
/// `k`-th chord of [`polygon_chords`].
pub fn polygon_arc_complex(n: usize) -> Result<SimplicialComplex, ArcComplexError> {
    if n < 4 {
        return Err(ArcComplexError::InvalidInput(format!("polygon arc complex needs n >= 4, got {n}")));
    }
    let chords = polygon_chords(n);
    let m = chords.len();
    let compatible: Vec<Vec<bool>> =
        (0..m).map(|a| (0..m).map(|b| a != b && !chords_cross(chords[a], chords[b])).collect()).collect();
    let mut k = SimplicialComplex::empty();
    let mut stack: Vec<u32> = Vec::new();
    fn grow(start: usize, m: usize, compat: &[Vec<bool>], stack: &mut Vec<u32>, k: &mut SimplicialComplex) {
        for c in start..m {
            if stack.iter().all(|&s| compat[s as usize][c]) {
                stack.push(c as u32);
                let d = stack.len() - 1;
                while k.faces.len() <= d {
                    k.faces.push(BTreeSet::new());
                }
                k.faces[d].insert(stack.clone());
                grow(c + 1, m, compat, stack, k);
                stack.pop();
            }
        }
    }
    grow(0, m, &compatible, &mut stack, &mut k);
    Ok(k)
}

/// `N = 6g − 7 + 3r + 2s + Δ`, the dimension of the arc complex of a
/// genus-`g` surface with `s` punctures and `r` boundary components carrying
/// `deltas[i] ≥ 1` distinguished points each.
pub fn dimension_formula(g: usize, r: usize, s: usize, deltas: &[usize]) -> Result<i64, ArcComplexError> {
    if r == 0 || deltas.len() != r || deltas.contains(&0) {
        return Err(ArcComplexError::InvalidInput("need r >= 1 boundary components, each with a distinguished point".into()));
    }
    let delta: usize = deltas.iter().sum();
    Ok(6 * g as i64 - 7 + 3 * r as i64 + 2 * s as i64 + delta as i64)
}

#[cfg(test)]
mod tests;
