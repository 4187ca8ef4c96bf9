//! Weighted arc families on bordered surfaces and their composition by
//! band refinement.
//!
//! A diagram lists, for every labeled boundary `0..=n`, the arcs meeting it
//! in the order met when walking the boundary from its marked point. Each
//! arc occupies exactly two slots. Read as a fatgraph (boundaries are
//! vertices, arcs are edges, slot order is the rotation) the complementary
//! regions are the faces; the marked point of a boundary lives in the
//! corner between its last and first slot.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::Rational;

/// Cap on the number of seam breakpoints generated while sorting out
/// discarded annuli.
pub const MAX_SEAM_BREAKPOINTS: usize = 100_000;

/// Cap on the number of seam crossings of a single sub-band.
pub const MAX_SEAM_CROSSINGS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperadError {
    #[error("boundary {0} has no slots")]
    NotExhaustive(usize),
    #[error("arc {0} has non-positive weight")]
    NonPositiveWeight(usize),
    #[error("malformed slot pairing: {0}")]
    BadPairing(String),
    #[error("arc {0} is inessential")]
    Inessential(usize),
    #[error("boundary index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("not a permutation: {0}")]
    BadPermutation(String),
    #[error("arc family does not connect all boundaries")]
    Disconnected,
    #[error("a sub-band crossed the seam more than {0} times")]
    CrossingLimit(usize),
    #[error("seam refinement exceeded {0} breakpoints")]
    BreakpointLimit(usize),
}

/// Exhaustive weighted arc family with labeled boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonArcDiagram {
    boundaries: Vec<Vec<usize>>,
    weights: Vec<Rational>,
}

struct HalfEdges {
    offsets: Vec<usize>,
    pos: Vec<(usize, usize)>,
    partner: Vec<usize>,
    arc: Vec<usize>,
}

impl HalfEdges {
    fn sigma(&self, h: usize, d: &RibbonArcDiagram) -> usize {
        let (b, k) = self.pos[h];
        self.offsets[b] + (k + 1) % d.boundaries[b].len()
    }

    /// The corner following half-edge `h` holds a marked point.
    fn marked_after(&self, h: usize, d: &RibbonArcDiagram) -> bool {
        let (b, k) = self.pos[h];
        k + 1 == d.boundaries[b].len()
    }
}

impl RibbonArcDiagram {
    /// Builds a diagram, checking exhaustiveness, positivity and that every
    /// arc occupies exactly two slots. Essentiality is not checked here.
    pub fn new(boundaries: Vec<Vec<usize>>, weights: Vec<Rational>) -> Result<Self, OperadError> {
        for (b, slots) in boundaries.iter().enumerate() {
            if slots.is_empty() {
                return Err(OperadError::NotExhaustive(b));
            }
        }
        let mut seen = vec![0usize; weights.len()];
        for slots in &boundaries {
            for &a in slots {
                if a >= weights.len() {
                    return Err(OperadError::BadPairing(format!("arc {a} has no weight")));
                }
                seen[a] += 1;
            }
        }
        if let Some(a) = seen.iter().position(|&c| c != 2) {
            return Err(OperadError::BadPairing(format!("arc {a} occupies {} slots", seen[a])));
        }
        if let Some(a) = weights.iter().position(|w| !w.is_positive()) {
            return Err(OperadError::NonPositiveWeight(a));
        }
        Ok(RibbonArcDiagram { boundaries, weights })
    }

    /// Full check (including essentiality) followed by canonicalization.
    pub fn validate(boundaries: Vec<Vec<usize>>, weights: Vec<Rational>) -> Result<Self, OperadError> {
        let d = Self::new(boundaries, weights)?;
        if let Some(a) = d.inessential_arcs().into_iter().next() {
            return Err(OperadError::Inessential(a));
        }
        if d.components() != 1 {
            return Err(OperadError::Disconnected);
        }
        Ok(d.canonical())
    }

    /// Builds from slot ids: `boundaries` lists slot ids per boundary and
    /// each arc pairs two slot ids with a weight.
    pub fn from_slots(boundaries: &[Vec<u64>], arcs: &[(u64, u64, Rational)]) -> Result<Self, OperadError> {
        let mut where_: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
        for (b, slots) in boundaries.iter().enumerate() {
            for (k, &s) in slots.iter().enumerate() {
                if where_.insert(s, (b, k)).is_some() {
                    return Err(OperadError::BadPairing(format!("slot {s} listed twice")));
                }
            }
        }
        let mut out: Vec<Vec<usize>> = boundaries.iter().map(|s| vec![usize::MAX; s.len()]).collect();
        let mut weights = Vec::with_capacity(arcs.len());
        for (a, (s, t, w)) in arcs.iter().enumerate() {
            if s == t {
                return Err(OperadError::BadPairing(format!("arc {a} pairs slot {s} with itself")));
            }
            for x in [s, t] {
                let &(b, k) = where_
                    .get(x)
                    .ok_or_else(|| OperadError::BadPairing(format!("unknown slot {x}")))?;
                if out[b][k] != usize::MAX {
                    return Err(OperadError::BadPairing(format!("slot {x} used by two arcs")));
                }
                out[b][k] = a;
            }
            weights.push(w.clone());
        }
        if out.iter().flatten().any(|&a| a == usize::MAX) {
            return Err(OperadError::BadPairing("slot without an arc".into()));
        }
        Self::new(out, weights)
    }

    /// Slot-id form: slots numbered consecutively boundary by boundary.
    pub fn to_slots(&self) -> (Vec<Vec<u64>>, Vec<(u64, u64, Rational)>) {
        let mut ends: Vec<Vec<u64>> = vec![Vec::new(); self.weights.len()];
        let mut next = 0u64;
        let mut bounds = Vec::new();
        for slots in &self.boundaries {
            let mut ids = Vec::new();
            for &a in slots {
                ids.push(next);
                ends[a].push(next);
                next += 1;
            }
            bounds.push(ids);
        }
        let arcs = ends
            .iter()
            .zip(&self.weights)
            .map(|(e, w)| (e[0], e[1], w.clone()))
            .collect();
        (bounds, arcs)
    }

    pub fn identity() -> Self {
        Self::new(vec![vec![0], vec![0]], vec![Rational::one()]).expect("identity annulus")
    }

    /// Two arcs across an annulus, separated by the marked points.
    pub fn bv_half() -> Self {
        let h = crate::scalar::ratio(1, 2);
        Self::new(vec![vec![0, 1], vec![0, 1]], vec![h.clone(), h]).expect("bv diagram")
    }

    pub fn dot_product_half() -> Self {
        let h = crate::scalar::ratio(1, 2);
        Self::new(vec![vec![0, 1], vec![0], vec![1]], vec![h.clone(), h]).expect("dot diagram")
    }

    pub fn star_product_half() -> Self {
        let t = crate::scalar::ratio(1, 3);
        Self::new(vec![vec![0, 1], vec![0, 2], vec![2, 1]], vec![t.clone(), t.clone(), t])
            .expect("star diagram")
    }

    pub fn arity(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn boundaries(&self) -> &[Vec<usize>] {
        &self.boundaries
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn num_arcs(&self) -> usize {
        self.weights.len()
    }

    /// Total weight of the arcs ending on boundary `b`, counted per slot.
    pub fn boundary_weight(&self, b: usize) -> Rational {
        self.boundaries[b].iter().map(|&a| self.weights[a].clone()).sum()
    }

    fn half_edges(&self) -> HalfEdges {
        let mut offsets = Vec::with_capacity(self.boundaries.len());
        let mut pos = Vec::new();
        let mut arc = Vec::new();
        for (b, slots) in self.boundaries.iter().enumerate() {
            offsets.push(pos.len());
            for (k, &a) in slots.iter().enumerate() {
                pos.push((b, k));
                arc.push(a);
            }
        }
        let mut first: Vec<Option<usize>> = vec![None; self.weights.len()];
        let mut partner = vec![0; pos.len()];
        for (h, &a) in arc.iter().enumerate() {
            match first[a] {
                None => first[a] = Some(h),
                Some(g) => {
                    partner[g] = h;
                    partner[h] = g;
                }
            }
        }
        HalfEdges { offsets, pos, partner, arc }
    }

    /// Complementary regions as cycles of half-edges under `h -> sigma(iota(h))`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let he = self.half_edges();
        let mut seen = vec![false; he.pos.len()];
        let mut out = Vec::new();
        for s in 0..he.pos.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = s;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = he.sigma(he.partner[h], self);
            }
            out.push(cyc);
        }
        out
    }

    /// Arcs cutting off a one-sided region without a marked point.
    pub fn inessential_arcs(&self) -> Vec<usize> {
        let he = self.half_edges();
        let mut out = BTreeSet::new();
        for f in self.faces() {
            if f.len() == 1 && !he.marked_after(he.partner[f[0]], self) {
                out.insert(he.arc[f[0]]);
            }
        }
        out.into_iter().collect()
    }

    /// A pair of distinct arcs bounding a rectangle with no marked point.
    pub fn parallel_pair(&self) -> Option<(usize, usize)> {
        let he = self.half_edges();
        for f in self.faces() {
            if f.len() != 2 {
                continue;
            }
            let (a, b) = (he.arc[f[0]], he.arc[f[1]]);
            if a != b && f.iter().all(|&h| !he.marked_after(he.partner[h], self)) {
                return Some((a.min(b), a.max(b)));
            }
        }
        None
    }

    fn remove_arc(&self, e: usize) -> Self {
        let boundaries = self
            .boundaries
            .iter()
            .map(|s| s.iter().filter(|&&a| a != e).map(|&a| if a > e { a - 1 } else { a }).collect())
            .collect();
        let mut weights = self.weights.clone();
        weights.remove(e);
        RibbonArcDiagram { boundaries, weights }
    }

    /// Parallel arcs merged, weights summed to 1, arcs numbered by first
    /// appearance.
    pub fn canonical(&self) -> Self {
        let mut d = self.clone();
        while let Some((a, b)) = d.parallel_pair() {
            let w = d.weights[b].clone();
            d.weights[a] += w;
            d = d.remove_arc(b);
        }
        let total: Rational = d.weights.iter().cloned().sum();
        let mut rename = vec![usize::MAX; d.weights.len()];
        let mut next = 0;
        for slots in &d.boundaries {
            for &a in slots {
                if rename[a] == usize::MAX {
                    rename[a] = next;
                    next += 1;
                }
            }
        }
        let boundaries = d.boundaries.iter().map(|s| s.iter().map(|&a| rename[a]).collect()).collect();
        let mut weights = vec![Rational::zero(); d.weights.len()];
        for (a, w) in d.weights.iter().enumerate() {
            weights[rename[a]] = w / &total;
        }
        RibbonArcDiagram { boundaries, weights }
    }

    /// Equality of projective classes after canonicalization.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Number of connected pieces of the boundaries-and-arcs graph.
    pub fn components(&self) -> usize {
        let v = self.boundaries.len();
        let mut parent: Vec<usize> = (0..v).collect();
        let he = self.half_edges();
        for h in 0..he.pos.len() {
            let (a, b) = (find_root(&mut parent, he.pos[h].0), find_root(&mut parent, he.pos[he.partner[h]].0));
            parent[a] = b;
        }
        (0..v).filter(|&x| find_root(&mut parent, x) == x).count()
    }

    /// `(genus, boundary count)` of the surface obtained by capping every
    /// complementary region with a disk. Disconnected diagrams report the
    /// summed genus of their components.
    pub fn topological_type(&self) -> (usize, usize) {
        let v = self.boundaries.len();
        let e = self.weights.len();
        let f = self.faces().len();
        let c = self.components();
        let twice_g = 2 * c as i64 - v as i64 + e as i64 - f as i64;
        ((twice_g / 2) as usize, v)
    }

    /// Relabels boundary `b` as `perm[b]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, OperadError> {
        check_permutation(perm, self.boundaries.len())?;
        let mut boundaries = vec![Vec::new(); perm.len()];
        for (b, slots) in self.boundaries.iter().enumerate() {
            boundaries[perm[b]] = slots.clone();
        }
        Ok(RibbonArcDiagram { boundaries, weights: self.weights.clone() })
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<(), OperadError> {
    if perm.len() != n {
        return Err(OperadError::BadPermutation(format!("length {} for {n} labels", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(OperadError::BadPermutation(format!("{perm:?}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Outcome of a composition.
#[derive(Debug, Clone, PartialEq)]
pub struct GlueResult {
    /// Canonical composite.
    pub diagram: RibbonArcDiagram,
    /// Total weight along the seam, in the units of the outer diagram.
    pub seam_weight: Rational,
    /// `(weight, seam crossings)` of every surviving sub-band.
    pub sub_bands: Vec<(Rational, usize)>,
    /// `(width, seam crossings)` of every discarded closed annulus.
    pub annuli: Vec<(Rational, usize)>,
    /// Weights of surviving sub-bands that cut off an unmarked one-sided
    /// region of the composite slot diagram. They are kept: such a region
    /// may carry topology that the slot encoding does not see.
    pub inessential: Vec<Rational>,
}

impl GlueResult {
    pub fn discarded_annuli(&self) -> usize {
        self.annuli.len()
    }

    pub fn discarded_weight(&self) -> Rational {
        self.annuli.iter().map(|(w, _)| w.clone()).sum()
    }

    /// Seam weight equals everything routed across it, counted per crossing.
    pub fn seam_balanced(&self) -> bool {
        let used: Rational = self
            .sub_bands
            .iter()
            .chain(&self.annuli)
            .map(|(w, c)| w * Rational::from_integer((*c as i64).into()))
            .sum();
        used == self.seam_weight
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Side {
    Outer,
    Inner,
}

type EndKey = (Side, usize, usize, Rational);

#[derive(Clone, Debug)]
struct End {
    side: Side,
    boundary: usize,
    slot: usize,
    lo: Rational,
    hi: Rational,
}

impl End {
    fn key(&self) -> EndKey {
        (self.side, self.boundary, self.slot, self.lo.clone())
    }
}

struct Layout<'a> {
    d: &'a RibbonArcDiagram,
    scale: Rational,
    seam: usize,
    partner: Vec<Vec<(usize, usize)>>,
    prefix: Vec<Rational>,
}

impl<'a> Layout<'a> {
    fn new(d: &'a RibbonArcDiagram, scale: Rational, seam: usize) -> Self {
        let mut first: Vec<Option<(usize, usize)>> = vec![None; d.weights.len()];
        let mut partner: Vec<Vec<(usize, usize)>> = d.boundaries.iter().map(|s| vec![(0, 0); s.len()]).collect();
        for (b, slots) in d.boundaries.iter().enumerate() {
            for (k, &a) in slots.iter().enumerate() {
                match first[a] {
                    None => first[a] = Some((b, k)),
                    Some((b0, k0)) => {
                        partner[b0][k0] = (b, k);
                        partner[b][k] = (b0, k0);
                    }
                }
            }
        }
        let mut prefix = vec![Rational::zero()];
        let mut acc = Rational::zero();
        for &a in &d.boundaries[seam] {
            acc += &d.weights[a] * &scale;
            prefix.push(acc.clone());
        }
        Layout { d, scale, seam, partner, prefix }
    }

    fn width(&self, b: usize, k: usize) -> Rational {
        &self.d.weights[self.d.boundaries[b][k]] * &self.scale
    }

    fn total(&self) -> Rational {
        self.prefix.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Seam slots overlapped by `[lo, hi]`, with local sub-intervals.
    fn split(&self, lo: &Rational, hi: &Rational) -> Vec<(usize, Rational, Rational)> {
        let mut out = Vec::new();
        for k in 0..self.prefix.len() - 1 {
            let (a, b) = (&self.prefix[k], &self.prefix[k + 1]);
            let l = if lo > a { lo.clone() } else { a.clone() };
            let h = if hi < b { hi.clone() } else { b.clone() };
            if l < h {
                out.push((k, l - a, h - a));
            }
        }
        out
    }

    /// Image of seam point `p` under the seam-to-seam bands, approaching
    /// from the left or the right; positions are on this side's seam.
    fn seam_return(&self, p: &Rational, left: bool) -> Option<Rational> {
        let t = self.total();
        let p = if left && p.is_zero() {
            t.clone()
        } else if !left && *p == t {
            Rational::zero()
        } else {
            p.clone()
        };
        let n = self.prefix.len() - 1;
        let k = (0..n).find(|&k| {
            let (a, b) = (&self.prefix[k], &self.prefix[k + 1]);
            if left {
                a < &p && &p <= b
            } else {
                a <= &p && &p < b
            }
        })?;
        let (b2, k2) = self.partner[self.seam][k];
        if b2 != self.seam {
            return None;
        }
        let img = &self.prefix[k2] + self.width(self.seam, k) - (p - &self.prefix[k]);
        Some(if img == t { Rational::zero() } else { img })
    }
}

struct Tracer<'a> {
    outer: Layout<'a>,
    inner: Layout<'a>,
    t: Rational,
    bands: BTreeMap<(EndKey, EndKey), (End, End, usize)>,
    covered: Vec<(Rational, Rational)>,
}

impl<'a> Tracer<'a> {
    fn layout(&self, s: Side) -> &Layout<'a> {
        match s {
            Side::Outer => &self.outer,
            Side::Inner => &self.inner,
        }
    }

    /// Follows every sub-band leaving the free slot `origin`, splitting at
    /// the seam. Pieces carry their matching interval at the origin slot
    /// and whether the two run in opposite directions.
    fn trace(&mut self, origin: (Side, usize, usize)) -> Result<(), OperadError> {
        let w0 = self.layout(origin.0).width(origin.1, origin.2);
        let mut stack = vec![((Rational::zero(), w0.clone()), false, origin.0, origin.1, origin.2, Rational::zero(), w0, 0usize)];
        while let Some((src, flip, side, b, k, lo, hi, crossings)) = stack.pop() {
            if crossings > MAX_SEAM_CROSSINGS {
                return Err(OperadError::CrossingLimit(MAX_SEAM_CROSSINGS));
            }
            let lay = self.layout(side);
            let w = lay.width(b, k);
            let (b2, k2) = lay.partner[b][k];
            let (nlo, nhi) = (&w - &hi, &w - &lo);
            let flip = !flip;
            if b2 != lay.seam {
                let start = End { side: origin.0, boundary: origin.1, slot: origin.2, lo: src.0, hi: src.1 };
                let end = End { side, boundary: b2, slot: k2, lo: nlo, hi: nhi };
                let (ka, kb) = (start.key(), end.key());
                let entry = if ka <= kb { ((ka, kb), (start, end, crossings)) } else { ((kb, ka), (end, start, crossings)) };
                self.bands.entry(entry.0).or_insert(entry.1);
                continue;
            }
            let base = lay.prefix[k2].clone();
            let (slo, shi) = (&base + &nlo, &base + &nhi);
            // outer seam coordinate theta pairs with inner coordinate t - theta
            let (theta, next) = match side {
                Side::Outer => ((slo.clone(), shi.clone()), Side::Inner),
                Side::Inner => ((&self.t - &shi, &self.t - &slo), Side::Outer),
            };
            self.covered.push(theta);
            let (plo, phi) = (&self.t - &shi, &self.t - &slo);
            let flip = !flip;
            let next_lay = self.layout(next);
            let seam = next_lay.seam;
            for (l, a, c) in next_lay.split(&plo, &phi) {
                let (ga, gc) = (&next_lay.prefix[l] + &a, &next_lay.prefix[l] + &c);
                let sub = if flip {
                    (&src.1 - (&gc - &plo), &src.1 - (&ga - &plo))
                } else {
                    (&src.0 + (&ga - &plo), &src.0 + (&gc - &plo))
                };
                stack.push((sub, flip, next, seam, l, a, c, crossings + 1));
            }
        }
        Ok(())
    }
}

fn find_root(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let n = p[y];
        p[y] = r;
        y = n;
    }
    r
}

/// The composition `x ∘_i y`: boundary `i` of `x` is glued to boundary 0
/// of `y`; the labels `1..=m` of `y` take positions `i..i+m`.
pub fn glue(x: &RibbonArcDiagram, i: usize, y: &RibbonArcDiagram) -> Result<GlueResult, OperadError> {
    if i == 0 || i > x.arity() {
        return Err(OperadError::IndexOutOfRange { index: i, arity: x.arity() });
    }
    let t = x.boundary_weight(i);
    let scale = &t / y.boundary_weight(0);
    let mut tr = Tracer {
        outer: Layout::new(x, Rational::one(), i),
        inner: Layout::new(y, scale, 0),
        t: t.clone(),
        bands: BTreeMap::new(),
        covered: Vec::new(),
    };
    let mut starts = Vec::new();
    for (b, slots) in x.boundaries.iter().enumerate() {
        if b != i {
            for k in 0..slots.len() {
                starts.push((Side::Outer, b, k));
            }
        }
    }
    for (b, slots) in y.boundaries.iter().enumerate().skip(1) {
        for k in 0..slots.len() {
            starts.push((Side::Inner, b, k));
        }
    }
    for (side, b, k) in starts {
        tr.trace((side, b, k))?;
    }
    let m = y.arity();
    let label = |s: Side, b: usize| match s {
        Side::Outer if b < i => b,
        Side::Outer => b + m - 1,
        Side::Inner => i + b - 1,
    };
    let mut slots: Vec<Vec<(usize, Rational, usize)>> = vec![Vec::new(); x.arity() + m];
    let mut weights = Vec::new();
    let mut sub_bands = Vec::new();
    for (a, (s, e, c)) in tr.bands.values().enumerate() {
        let w = &e.hi - &e.lo;
        for end in [s, e] {
            slots[label(end.side, end.boundary)].push((end.slot, end.lo.clone(), a));
        }
        weights.push(w.clone());
        sub_bands.push((w, *c));
    }
    let boundaries: Vec<Vec<usize>> = slots
        .into_iter()
        .map(|mut v| {
            v.sort();
            v.into_iter().map(|(_, _, a)| a).collect()
        })
        .collect();
    let annuli = discarded_annuli(&tr)?;
    for (b, s) in boundaries.iter().enumerate() {
        if s.is_empty() {
            return Err(OperadError::NotExhaustive(b));
        }
    }
    let raw = RibbonArcDiagram::new(boundaries, weights)?;
    let inessential = raw.inessential_arcs().iter().map(|&e| raw.weights[e].clone()).collect();
    Ok(GlueResult { diagram: raw.canonical(), seam_weight: t, sub_bands, annuli, inessential })
}

/// Closed annuli on the seam: the part not crossed by any surviving
/// sub-band, split into atoms that the seam-to-seam bands permute.
fn discarded_annuli(tr: &Tracer<'_>) -> Result<Vec<(Rational, usize)>, OperadError> {
    let t = &tr.t;
    let mut cov = tr.covered.clone();
    cov.sort();
    let in_covered = |p: &Rational| cov.iter().any(|(a, b)| a <= p && p <= b);
    let mut measure = Rational::zero();
    {
        let mut cur: Option<(Rational, Rational)> = None;
        for (a, b) in &cov {
            match &mut cur {
                Some((_, hi)) if a <= hi => {
                    if b > hi {
                        *hi = b.clone();
                    }
                }
                _ => {
                    if let Some((lo, hi)) = cur.take() {
                        measure += hi - lo;
                    }
                    cur = Some((a.clone(), b.clone()));
                }
            }
        }
        if let Some((lo, hi)) = cur {
            measure += hi - lo;
        }
    }
    if &measure == t {
        return Ok(Vec::new());
    }
    // outer maps act on theta directly; inner maps act on t - theta
    let inner_map = |p: &Rational, left: bool| -> Option<Rational> {
        let q = t - p;
        let img = tr.inner.seam_return(&q, !left)?;
        let r = t - img;
        Some(if &r == t { Rational::zero() } else { r })
    };
    let outer_map = |p: &Rational, left: bool| tr.outer.seam_return(p, left);
    let norm = |p: Rational| if &p == t { Rational::zero() } else { p };
    let mut points: BTreeSet<Rational> = BTreeSet::new();
    let mut work: Vec<Rational> = Vec::new();
    for p in tr.outer.prefix.iter().cloned() {
        work.push(norm(p));
    }
    for p in tr.inner.prefix.iter() {
        work.push(norm(t - p));
    }
    for (a, b) in &cov {
        work.push(norm(a.clone()));
        work.push(norm(b.clone()));
    }
    while let Some(p) = work.pop() {
        if !points.insert(p.clone()) {
            continue;
        }
        if points.len() > MAX_SEAM_BREAKPOINTS {
            return Err(OperadError::BreakpointLimit(MAX_SEAM_BREAKPOINTS));
        }
        for left in [true, false] {
            if let Some(q) = outer_map(&p, left) {
                work.push(q);
            }
            if let Some(q) = inner_map(&p, left) {
                work.push(q);
            }
        }
    }
    let pts: Vec<Rational> = points.into_iter().collect();
    let n = pts.len();
    let atom_bounds = |j: usize| -> (Rational, Rational) {
        let hi = if j + 1 < n { pts[j + 1].clone() } else { t.clone() };
        (pts[j].clone(), hi)
    };
    let two = Rational::from_integer(2.into());
    let mids: Vec<Rational> = (0..n).map(|j| {
        let (a, b) = atom_bounds(j);
        (a + b) / &two
    }).collect();
    let free: Vec<bool> = mids.iter().map(|m| !in_covered(m)).collect();
    let atom_of = |p: &Rational| -> usize {
        match pts.binary_search(p) {
            Ok(j) => j,
            Err(j) => j - 1,
        }
    };
    let mut succ: Vec<[usize; 2]> = vec![[0, 0]; n];
    for j in (0..n).filter(|&j| free[j]) {
        let xo = outer_map(&mids[j], true).expect("uncovered atom leaves the seam");
        let yi = inner_map(&mids[j], true).expect("uncovered atom leaves the seam");
        succ[j] = [atom_of(&xo), atom_of(&yi)];
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for j in (0..n).filter(|&j| free[j]) {
        for s in succ[j] {
            let (a, b) = (find_root(&mut parent, j), find_root(&mut parent, s));
            parent[a] = b;
        }
    }
    // adjacent atoms share an annulus when the leaf between them is regular
    let regular = |p: &Rational| -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = vec![p.clone()];
        while let Some(q) = stack.pop() {
            if !seen.insert(q.clone()) {
                continue;
            }
            for f in [&outer_map as &dyn Fn(&Rational, bool) -> Option<Rational>, &inner_map] {
                match (f(&q, true), f(&q, false)) {
                    (Some(a), Some(b)) if a == b => stack.push(a),
                    _ => return false,
                }
            }
        }
        true
    };
    for j in 0..n {
        let k = (j + 1) % n;
        if free[j] && free[k] && j != k && regular(&pts[k]) {
            let (a, b) = (find_root(&mut parent, j), find_root(&mut parent, k));
            parent[a] = b;
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in (0..n).filter(|&j| free[j]) {
        let r = find_root(&mut parent, j);
        comps.entry(r).or_default().push(j);
    }
    let mut out = Vec::new();
    for atoms in comps.values() {
        let mut orbit = BTreeSet::new();
        let mut stack = vec![atoms[0]];
        while let Some(j) = stack.pop() {
            if orbit.insert(j) {
                stack.extend(succ[j]);
            }
        }
        let len: Rational = atoms.iter().map(|&j| {
            let (a, b) = atom_bounds(j);
            b - a
        }).sum();
        let c = orbit.len();
        out.push((len / Rational::from_integer((c as i64).into()), c));
    }
    Ok(out)
}

/// Sequential associativity: `(a ∘_i b) ∘_{i+j-1} c == a ∘_i (b ∘_j c)`.
pub fn associativity_check(
    a: &RibbonArcDiagram,
    b: &RibbonArcDiagram,
    c: &RibbonArcDiagram,
    i: usize,
    j: usize,
) -> Result<bool, OperadError> {
    let left = glue(&glue(a, i, b)?.diagram, i + j - 1, c)?.diagram;
    let right = glue(a, i, &glue(b, j, c)?.diagram)?.diagram;
    Ok(left == right)
}

/// Parallel associativity for `i < k`:
/// `(a ∘_k c) ∘_i b == (a ∘_i b) ∘_{k+m_b-1} c`.
pub fn parallel_associativity_check(
    a: &RibbonArcDiagram,
    b: &RibbonArcDiagram,
    c: &RibbonArcDiagram,
    i: usize,
    k: usize,
) -> Result<bool, OperadError> {
    if i >= k {
        return Err(OperadError::IndexOutOfRange { index: i, arity: k });
    }
    let left = glue(&glue(a, k, c)?.diagram, i, b)?.diagram;
    let right = glue(&glue(a, i, b)?.diagram, k + b.arity() - 1, c)?.diagram;
    Ok(left == right)
}

/// Relabeling commutes with composition. `sigma` permutes the labels of
/// `x` and `tau` those of `y`; both must fix 0.
pub fn equivariance_check(
    x: &RibbonArcDiagram,
    i: usize,
    y: &RibbonArcDiagram,
    sigma: &[usize],
    tau: &[usize],
) -> Result<bool, OperadError> {
    check_permutation(sigma, x.arity() + 1)?;
    check_permutation(tau, y.arity() + 1)?;
    if sigma[0] != 0 || tau[0] != 0 {
        return Err(OperadError::BadPermutation("must fix 0".into()));
    }
    let m = y.arity();
    let si = sigma[i];
    let mut block = Vec::with_capacity(x.arity() + m);
    for l in 0..x.arity() + m {
        let img = if l < i {
            let s = sigma[l];
            if s < si { s } else { s + m - 1 }
        } else if l < i + m {
            si + tau[l - i + 1] - 1
        } else {
            let s = sigma[l - m + 1];
            if s < si { s } else { s + m - 1 }
        };
        block.push(img);
    }
    let lhs = glue(&x.relabel(sigma)?, si, &y.relabel(tau)?)?.diagram;
    let rhs = glue(x, i, y)?.diagram.relabel(&block)?.canonical();
    Ok(lhs == rhs)
}

/// Both unit laws against the identity annulus at every input.
pub fn unit_check(x: &RibbonArcDiagram) -> Result<bool, OperadError> {
    let id = RibbonArcDiagram::identity();
    let cx = x.canonical();
    if glue(&id, 1, x)?.diagram != cx {
        return Ok(false);
    }
    for i in 1..=x.arity() {
        if glue(x, i, &id)?.diagram != cx {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn d(b: Vec<Vec<usize>>, w: &[i64]) -> RibbonArcDiagram {
        RibbonArcDiagram::new(b, w.iter().map(|&v| ratio(v, 1)).collect()).unwrap()
    }

    #[test]
    fn identity_is_annulus() {
        let id = RibbonArcDiagram::identity();
        assert_eq!(id.topological_type(), (0, 2));
        assert!(id.inessential_arcs().is_empty());
    }

    #[test]
    fn empty_boundary_rejected() {
        let e = RibbonArcDiagram::new(vec![vec![0, 0], vec![]], vec![ratio(1, 1)]);
        assert_eq!(e, Err(OperadError::NotExhaustive(1)));
        let e = RibbonArcDiagram::new(vec![vec![0], vec![0]], vec![ratio(0, 1)]);
        assert_eq!(e, Err(OperadError::NonPositiveWeight(0)));
    }

    #[test]
    fn parallel_arcs_merge() {
        // slot orders reverse across the annulus for parallel arcs
        let x = d(vec![vec![0, 1], vec![1, 0]], &[1, 2]);
        let c = x.canonical();
        assert_eq!(c.num_arcs(), 1);
        assert_eq!(c.weights()[0], ratio(1, 1));
        assert_eq!(c, RibbonArcDiagram::identity());
    }

    #[test]
    fn bv_arcs_are_not_parallel() {
        assert_eq!(RibbonArcDiagram::bv_half().canonical().num_arcs(), 2);
        for named in [
            RibbonArcDiagram::bv_half(),
            RibbonArcDiagram::dot_product_half(),
            RibbonArcDiagram::star_product_half(),
        ] {
            assert!(named.inessential_arcs().is_empty());
            assert!(named.parallel_pair().is_none());
        }
    }

    #[test]
    fn crossing_arcs_on_one_boundary() {
        let x = d(vec![vec![0, 1, 0, 1]], &[1, 1]);
        assert_eq!(x.topological_type(), (1, 1));
    }

    #[test]
    fn nested_arcs_on_one_boundary() {
        let x = d(vec![vec![0, 1, 1, 0]], &[1, 1]);
        assert_eq!(x.faces().len(), 3);
        assert_eq!(x.topological_type(), (0, 1));
        assert_eq!(x.inessential_arcs(), vec![1]);
    }

    #[test]
    fn annuli_compose_to_annulus() {
        let x = d(vec![vec![0], vec![0]], &[2]);
        let y = d(vec![vec![0], vec![0]], &[3]);
        let r = glue(&x, 1, &y).unwrap();
        assert_eq!(r.diagram, RibbonArcDiagram::identity());
        assert!(r.seam_balanced());
        assert_eq!(r.discarded_annuli(), 0);
    }

    #[test]
    fn two_bands_route_through_annulus() {
        // arcs a (weight 2) and b (weight 1) run from boundary 0 to boundary 1
        let x = d(vec![vec![0, 1], vec![0, 1]], &[2, 1]);
        assert!(x.parallel_pair().is_none());
        let y = d(vec![vec![0], vec![0]], &[3]);
        let r = glue(&x, 1, &y).unwrap();
        assert_eq!(r.diagram, x.canonical());
        assert_eq!(r.sub_bands.len(), 2);
        assert!(r.seam_balanced());
    }

    #[test]
    fn unit_laws_on_named_examples() {
        for x in [
            RibbonArcDiagram::identity(),
            RibbonArcDiagram::bv_half(),
            RibbonArcDiagram::dot_product_half(),
            RibbonArcDiagram::star_product_half(),
        ] {
            assert!(unit_check(&x).unwrap());
        }
    }

    #[test]
    fn slot_round_trip() {
        let x = RibbonArcDiagram::star_product_half();
        let (b, a) = x.to_slots();
        assert_eq!(RibbonArcDiagram::from_slots(&b, &a).unwrap(), x);
    }

    #[test]
    fn annulus_swap_reverses_composition() {
        let x = RibbonArcDiagram::bv_half();
        let y = d(vec![vec![0, 1], vec![0, 1]], &[1, 3]);
        let swap = [1, 0];
        let lhs = glue(&x, 1, &y).unwrap().diagram.relabel(&swap).unwrap();
        let rhs = glue(&y.relabel(&swap).unwrap(), 1, &x.relabel(&swap).unwrap()).unwrap().diagram;
        assert_eq!(lhs.canonical(), rhs);
        assert_eq!(RibbonArcDiagram::identity().relabel(&swap).unwrap(), RibbonArcDiagram::identity());
    }
}
