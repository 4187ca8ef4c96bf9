//! Bondings on a backbone, secondary and binary structures, helices, and
//! the band surfaces of a fold.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Largest backbone accepted by the exhaustive planarity sweep.
pub const MAX_SWEEP_M: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RnaError {
    #[error("invalid bond {0:?}: {1}")]
    InvalidBond((usize, usize), String),
    #[error("bonding is not a secondary structure")]
    NotSecondary,
    #[error("bonding is not binary")]
    NotBinary,
    #[error("missing side tag for site {0}")]
    MissingSide(usize),
    #[error("backbone too long for exhaustive sweep: {0}")]
    TooLarge(usize),
}

/// Bonds `{i, j}` (stored with `i < j`) on the backbone `[0, m]`. Adjacent
/// sites may bond here; [`Bonding::new_rigid`] rules that out.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bonding {
    m: usize,
    bonds: BTreeSet<(usize, usize)>,
}

impl Bonding {
    pub fn new(m: usize, pairs: &[(usize, usize)]) -> Result<Self, RnaError> {
        Self::build(m, pairs, 1)
    }

    /// Rejects bonds between neighbouring sites.
    pub fn new_rigid(m: usize, pairs: &[(usize, usize)]) -> Result<Self, RnaError> {
        Self::build(m, pairs, 2)
    }

    pub fn is_rigid(&self) -> bool {
        self.bonds.iter().all(|&(i, j)| j - i >= 2)
    }

    fn build(m: usize, pairs: &[(usize, usize)], min_gap: usize) -> Result<Self, RnaError> {
        let mut bonds = BTreeSet::new();
        for &(a, b) in pairs {
            let (i, j) = (a.min(b), a.max(b));
            if j > m {
                return Err(RnaError::InvalidBond((a, b), format!("site beyond m = {m}")));
            }
            if j - i < min_gap {
                let why = if i == j { "a site cannot bond to itself".into() } else { "neighbouring sites".into() };
                return Err(RnaError::InvalidBond((a, b), why));
            }
            if !bonds.insert((i, j)) {
                return Err(RnaError::InvalidBond((a, b), "duplicate".into()));
            }
        }
        Ok(Bonding { m, bonds })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bonds(&self) -> &BTreeSet<(usize, usize)> {
        &self.bonds
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    /// Pairs of bonds `i < k < j < l`.
    pub fn crossing_pairs(&self) -> Vec<((usize, usize), (usize, usize))> {
        let v: Vec<_> = self.bonds.iter().copied().collect();
        let mut out = Vec::new();
        for (x, &a) in v.iter().enumerate() {
            for &b in &v[x + 1..] {
                if crosses(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_secondary_structure(&self) -> bool {
        self.crossing_pairs().is_empty()
    }

    /// Secondary with every site in at most one bond.
    pub fn is_binary(&self) -> Result<bool, RnaError> {
        if !self.is_secondary_structure() {
            return Err(RnaError::NotSecondary);
        }
        Ok(self.max_degree() <= 1)
    }

    fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.m + 1];
        for &(i, j) in &self.bonds {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Maximal runs `(i, j), (i+1, j-1), ...`, outermost bond first.
    pub fn helices(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for &(i, j) in &self.bonds {
            if i > 0 && self.bonds.contains(&(i - 1, j + 1)) {
                continue;
            }
            let mut run = vec![(i, j)];
            let (mut a, mut b) = (i, j);
            while b >= 2 && self.bonds.contains(&(a + 1, b - 1)) {
                a += 1;
                b -= 1;
                run.push((a, b));
            }
            out.push(run);
        }
        out
    }

    /// Inserts an unbonded site at position `p`; later sites shift by one.
    pub fn insert_site(&self, p: usize) -> Self {
        let sh = |s: usize| if s >= p { s + 1 } else { s };
        Bonding { m: self.m + 1, bonds: self.bonds.iter().map(|&(i, j)| (sh(i), sh(j))).collect() }
    }

    /// Adds a bond just outside `(i, j)` on two new sites.
    pub fn elongate(&self, bond: (usize, usize)) -> Result<Self, RnaError> {
        let (i, j) = bond;
        if !self.bonds.contains(&bond) {
            return Err(RnaError::InvalidBond(bond, "not a bond".into()));
        }
        let sh = |s: usize| if s > j { s + 2 } else if s >= i { s + 1 } else { s };
        let mut bonds: BTreeSet<_> = self.bonds.iter().map(|&(a, b)| (sh(a), sh(b))).collect();
        bonds.insert((i, j + 2));
        Ok(Bonding { m: self.m + 2, bonds })
    }
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let ((i, j), (k, l)) = if a <= b { (a, b) } else { (b, a) };
    i < k && k < j && j < l
}

/// Binary structure obtained by splitting each site into one copy per
/// incident bond, with the site map from old sites to their copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryReduction {
    pub bonding: Bonding,
    pub site_map: Vec<Vec<usize>>,
}

/// At a split site the copies take bonds from the left first, then bonds
/// to the right; within each group the order keeps bonds nested.
pub fn binary_reduction(b: &Bonding) -> Result<BinaryReduction, RnaError> {
    if !b.is_secondary_structure() {
        return Err(RnaError::NotSecondary);
    }
    let mut left: Vec<Vec<usize>> = vec![Vec::new(); b.m + 1];
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); b.m + 1];
    for &(i, j) in &b.bonds {
        right[i].push(j);
        left[j].push(i);
    }
    let mut site_map = Vec::with_capacity(b.m + 1);
    let mut next = 0usize;
    // copy index for (site, partner)
    let mut copy: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for s in 0..=b.m {
        let mut l = left[s].clone();
        l.sort_unstable_by(|x, y| y.cmp(x));
        let mut r = right[s].clone();
        r.sort_unstable_by(|x, y| y.cmp(x));
        let mut copies = Vec::new();
        for p in l.into_iter().chain(r) {
            copy.insert((s, p), next);
            copies.push(next);
            next += 1;
        }
        if copies.is_empty() {
            copies.push(next);
            next += 1;
        }
        site_map.push(copies);
    }
    let pairs: Vec<_> = b.bonds.iter().map(|&(i, j)| (copy[&(i, j)], copy[&(j, i)])).collect();
    let bonding = Bonding::new(next - 1, &pairs)?;
    Ok(BinaryReduction { bonding, site_map })
}

/// Side of the backbone a band attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Above,
    Below,
}

/// One boundary component of the band surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCycle {
    /// Bonds traversed, in traversal order (a bond may appear twice).
    pub bonds: Vec<(usize, usize)>,
    /// Backbone segments `(s, s + 1)` traversed, by left site.
    pub segments: Vec<usize>,
    /// Passes around either end of the backbone.
    pub touches_end: bool,
    pub capped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldSurfaceReport {
    /// Boundary cycles of the uncapped band surface.
    pub boundary_count: usize,
    pub euler_characteristic: i64,
    pub genus: usize,
    pub cycles: Vec<BoundaryCycle>,
    /// Cycles left uncapped: the boundary components of the capped surface.
    pub pseudoknot_cycles: Vec<usize>,
    pub capped_count: usize,
}

impl FoldSurfaceReport {
    /// `(genus, boundary count)` of the capped surface.
    pub fn capped_type(&self) -> (usize, usize) {
        (self.genus, self.boundary_count - self.capped_count)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Half {
    Right,
    Left,
    Bond(usize, Side),
}

/// Band surface with every band attached above the backbone.
pub fn chiral_surface(b: &Bonding) -> Result<FoldSurfaceReport, RnaError> {
    let sides = vec![Side::Above; b.m + 1];
    achiral_surface(b, &sides)
}

/// Band surface with the band end at site `s` attached on `sides[s]`.
/// Each bond is a single untwisted band, so it leaves and lands on its own
/// side tags; bonded sites without a matching tag length are rejected.
pub fn achiral_surface(b: &Bonding, sides: &[Side]) -> Result<FoldSurfaceReport, RnaError> {
    if b.max_degree() > 1 {
        return Err(RnaError::NotBinary);
    }
    if sides.len() != b.m + 1 {
        return Err(RnaError::MissingSide(sides.len().min(b.m + 1)));
    }
    let n = b.m + 1;
    let bonds: Vec<(usize, usize)> = b.bonds.iter().copied().collect();
    let mut partner_bond: Vec<Option<usize>> = vec![None; n];
    for (x, &(i, j)) in bonds.iter().enumerate() {
        partner_bond[i] = Some(x);
        partner_bond[j] = Some(x);
    }
    // rotation at each site, counterclockwise from the right
    let mut halves: Vec<(usize, Half)> = Vec::new();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        let mut here = Vec::new();
        if s < b.m {
            here.push(Half::Right);
        }
        let bond_here = partner_bond[s].map(|x| Half::Bond(x, sides[s]));
        if let Some(h @ Half::Bond(_, Side::Above)) = bond_here {
            here.push(h);
        }
        if s > 0 {
            here.push(Half::Left);
        }
        if let Some(h @ Half::Bond(_, Side::Below)) = bond_here {
            here.push(h);
        }
        for h in here {
            rot[s].push(halves.len());
            halves.push((s, h));
        }
    }
    let find = |site: usize, pred: &dyn Fn(Half) -> bool| -> usize {
        rot[site].iter().copied().find(|&h| pred(halves[h].1)).expect("half-edge present")
    };
    let mut iota = vec![0usize; halves.len()];
    let mut sigma = vec![0usize; halves.len()];
    for s in 0..n {
        let r = &rot[s];
        for (k, &h) in r.iter().enumerate() {
            sigma[h] = r[(k + 1) % r.len()];
        }
    }
    for (h, &(s, kind)) in halves.iter().enumerate() {
        iota[h] = match kind {
            Half::Right => find(s + 1, &|k| k == Half::Left),
            Half::Left => find(s - 1, &|k| k == Half::Right),
            Half::Bond(x, _) => {
                let (i, j) = bonds[x];
                let other = if s == i { j } else { i };
                find(other, &|k| matches!(k, Half::Bond(y, _) if y == x))
            }
        };
    }
    // angular position of each half-edge, used to spot the backbone ends
    let angle = |k: Half| match k {
        Half::Right => 0,
        Half::Bond(_, Side::Above) => 1,
        Half::Left => 2,
        Half::Bond(_, Side::Below) => 3,
    };
    let mut seen = vec![false; halves.len()];
    let mut cycles = Vec::new();
    for start in 0..halves.len() {
        if seen[start] {
            continue;
        }
        let mut cyc_bonds = Vec::new();
        let mut segments = Vec::new();
        let mut touches_end = false;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            let (s, kind) = halves[h];
            match kind {
                Half::Right => segments.push(s),
                Half::Left => segments.push(s - 1),
                Half::Bond(x, _) => cyc_bonds.push(bonds[x]),
            }
            let g = iota[h];
            let next = sigma[g];
            let (site, a) = (halves[g].0, angle(halves[g].1));
            let c = angle(halves[next].1);
            // counterclockwise corner from a to c at `site`
            let contains = |t: i32| {
                let (a, c) = (a, c as i32);
                let span = (c - a).rem_euclid(4);
                let span = if span == 0 { 4 } else { span };
                let off = (t - a).rem_euclid(4);
                off > 0 && off < span
            };
            if (site == 0 && contains(2)) || (site == b.m && (contains(0) || contains(4))) {
                touches_end = true;
            }
            h = next;
        }
        let uniq: BTreeSet<_> = cyc_bonds.iter().copied().collect();
        let mutually_crossing = uniq.iter().any(|&p| uniq.iter().any(|&q| crosses(p, q)));
        let capped = !touches_end && !mutually_crossing;
        cycles.push(BoundaryCycle { bonds: cyc_bonds, segments, touches_end, capped });
    }
    if halves.is_empty() {
        // a single site: the surface is a disk
        cycles.push(BoundaryCycle { bonds: Vec::new(), segments: Vec::new(), touches_end: true, capped: false });
    }
    let chi = 1 - bonds.len() as i64;
    let bcount = cycles.len() as i64;
    let twice_g = 2 - chi - bcount;
    debug_assert!(twice_g >= 0 && twice_g % 2 == 0);
    let pseudoknot_cycles = cycles.iter().enumerate().filter(|(_, c)| !c.capped).map(|(i, _)| i).collect();
    let capped_count = cycles.iter().filter(|c| c.capped).count();
    Ok(FoldSurfaceReport {
        boundary_count: cycles.len(),
        euler_characteristic: chi,
        genus: (twice_g / 2) as usize,
        cycles,
        pseudoknot_cycles,
        capped_count,
    })
}

/// All binary bondings (secondary or not) on `[0, m]`; `min_gap` is the
/// least allowed `j - i`.
pub fn binary_bondings(m: usize, min_gap: usize) -> Vec<Bonding> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; m + 1];
    fn rec(s: usize, m: usize, gap: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Bonding>) {
        if s > m {
            out.push(Bonding { m, bonds: cur.iter().copied().collect() });
            return;
        }
        if used[s] {
            rec(s + 1, m, gap, used, cur, out);
            return;
        }
        rec(s + 1, m, gap, used, cur, out);
        for t in s + gap..=m {
            if !used[t] {
                used[t] = true;
                cur.push((s, t));
                rec(s + 1, m, gap, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    rec(0, m, min_gap.max(1), &mut used, &mut cur, &mut out);
    out
}

/// Genus zero exactly for secondary structures, over every binary bonding
/// with `m <= max_m` (adjacent-site bonds included).
pub fn planarity_theorem_check(max_m: usize) -> Result<bool, RnaError> {
    if max_m > MAX_SWEEP_M {
        return Err(RnaError::TooLarge(max_m));
    }
    for m in 0..=max_m {
        for b in binary_bondings(m, 1) {
            let g = chiral_surface(&b)?.genus;
            if (g == 0) != b.is_secondary_structure() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
