//! The catalog of known line classes: the trivial ones by construction, and
//! the sporadic ones obtained by the searches in [`crate::reconstruct`]
//! (the q=3 class, the x=12 class R and its x=13 extension R+) or by the
//! quadric/switching constructions (the two x=13 classes of the second
//! weight-set group).

use super::{cap_analysis, complement, plane_weights, switch, verify_cl, LineClass};
use crate::bitset::Bitset;
use crate::projgeom::{Geometry, LineId, PlaneId, PointId};

/// Nontrivial classes shipped as fixture files, named by the construction
/// that produces them. The files are regenerated by the `gen_fixtures`
/// example and re-verified by the test suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownClass {
    /// PG(3,3), x=5: base-line reconstruction.
    Q3X5,
    /// PG(3,5), x=12: the reconstruction driver's unique completion.
    Q5X12,
    /// PG(3,5), x=13: the x=12 class plus its empty plane's ruling.
    Q5X13Extension,
    /// PG(3,5), x=13: elliptic-quadric secants plus half tangents (dual
    /// orientation: point weights in {3,...,27}).
    Q5X13Quadric,
    /// PG(3,5), x=13: switching partner of the dual of the quadric class.
    Q5X13Switched,
}

impl KnownClass {
    pub fn all() -> [KnownClass; 5] {
        [
            KnownClass::Q3X5,
            KnownClass::Q5X12,
            KnownClass::Q5X13Extension,
            KnownClass::Q5X13Quadric,
            KnownClass::Q5X13Switched,
        ]
    }

    pub fn q(self) -> u16 {
        match self {
            KnownClass::Q3X5 => 3,
            _ => 5,
        }
    }

    pub fn x(self) -> u32 {
        match self {
            KnownClass::Q3X5 => 5,
            KnownClass::Q5X12 => 12,
            _ => 13,
        }
    }

    fn data(self) -> &'static str {
        match self {
            KnownClass::Q3X5 => include_str!("../../fixtures/q3_x5.pgcl"),
            KnownClass::Q5X12 => include_str!("../../fixtures/q5_x12.pgcl"),
            KnownClass::Q5X13Extension => {
                include_str!("../../fixtures/q5_x13_extension.pgcl")
            }
            KnownClass::Q5X13Quadric => include_str!("../../fixtures/q5_x13_quadric.pgcl"),
            KnownClass::Q5X13Switched => include_str!("../../fixtures/q5_x13_switched.pgcl"),
        }
    }
}

/// Load a shipped class into a matching geometry.
pub fn load_known(g: &Geometry, k: KnownClass) -> LineClass {
    assert_eq!(g.q(), k.q(), "geometry order mismatch for {k:?}");
    let (cl, x) = super::io::read_pgcl(std::io::Cursor::new(k.data()), g)
        .expect("fixture files are well-formed");
    debug_assert_eq!(x, k.x());
    cl
}

/// All lines through a point; parameter 1.
pub fn star(g: &Geometry, p: PointId) -> LineClass {
    LineClass { lines: g.stars[p as usize].clone() }
}

/// All lines in a plane; parameter 1.
pub fn line_plane(g: &Geometry, pl: PlaneId) -> LineClass {
    LineClass { lines: g.planes[pl as usize].lines.clone() }
}

/// Star(P) union Line(pi) for P off pi; parameter 2. None when P lies on pi
/// (the union is then not a class).
pub fn star_union_plane(g: &Geometry, p: PointId, pl: PlaneId) -> Option<LineClass> {
    if g.planes[pl as usize].points.get(p as usize) {
        return None;
    }
    let mut lines = g.stars[p as usize].clone();
    lines.union_with(&g.planes[pl as usize].lines);
    Some(LineClass { lines })
}

/// The x+1 extension of an x class disjoint from some plane: adjoin the
/// ruling of its unique weight-0 plane. None when there is no unique
/// weight-0 plane.
pub fn extend_by_empty_plane(g: &Geometry, cl: &LineClass) -> Option<LineClass> {
    let weights = plane_weights(g, cl);
    let empties: Vec<PlaneId> = (0..g.planes.len() as PlaneId)
        .filter(|&pl| weights[pl as usize] == 0)
        .collect();
    let [pi0] = empties.as_slice() else {
        return None;
    };
    let mut lines = cl.lines.clone();
    lines.union_with(&g.planes[*pi0 as usize].lines);
    Some(LineClass { lines })
}

/// The elliptic quadric x1 x2 + x3^2 + beta x3 x4 + gamma x4^2 = 0 with the
/// quadratic factor irreducible over GF(q): q^2+1 points, no three
/// collinear.
pub fn elliptic_quadric(g: &Geometry) -> Vec<PointId> {
    assert_eq!(g.n, 3);
    let f = &g.field;
    let q = f.q as u8;
    let (beta, gamma) = 'search: {
        for beta in 0..q {
            for gamma in 1..q {
                let has_root =
                    (0..q).any(|t| f.add(f.add(f.mul(t, t), f.mul(beta, t)), gamma) == 0);
                if !has_root {
                    break 'search (beta, gamma);
                }
            }
        }
        unreachable!("irreducible quadratics exist over every finite field");
    };
    let quad = |c: &[u8]| -> u8 {
        let f34 = f.add(
            f.add(f.mul(c[2], c[2]), f.mul(beta, f.mul(c[2], c[3]))),
            f.mul(gamma, f.mul(c[3], c[3])),
        );
        f.add(f.mul(c[0], c[1]), f34)
    };
    let pts: Vec<PointId> = (0..g.num_points() as PointId)
        .filter(|&p| quad(&g.points[p as usize]) == 0)
        .collect();
    let qs = g.q() as usize;
    assert_eq!(pts.len(), qs * qs + 1, "elliptic quadric size");
    pts
}

struct TangentSearch<'a> {
    g: &'a Geometry,
    /// Tangent lines grouped by quadric point; each group has q+1 lines.
    groups: Vec<Vec<LineId>>,
    half: usize,
    target_in: u64,
    target_out: u64,
    /// Group index of each tangent line, usize::MAX otherwise.
    group_of: Vec<usize>,
    /// Class membership decided so far (secants + chosen tangents).
    lines: Bitset,
    /// Class lines currently meeting each line.
    met: Vec<u64>,
    /// Undecided tangents meeting each line.
    potential: Vec<u64>,
    found: Option<LineClass>,
}

impl<'a> TangentSearch<'a> {
    /// Exact target for a line whose membership is already determined at
    /// `level`; None while the line is an undecided tangent.
    fn target(&self, l: usize, level: usize) -> Option<u64> {
        let grp = self.group_of[l];
        if grp != usize::MAX && grp >= level {
            return None;
        }
        Some(if self.lines.get(l) { self.target_in } else { self.target_out })
    }

    fn consistent(&self, l: usize, level: usize) -> bool {
        match self.target(l, level) {
            Some(t) => self.met[l] <= t && self.met[l] + self.potential[l] >= t,
            None => {
                self.met[l] <= self.target_in
                    && self.met[l] + self.potential[l] >= self.target_out
            }
        }
    }

    fn search(&mut self, level: usize) {
        if self.found.is_some() {
            return;
        }
        if level == self.groups.len() {
            let cl = LineClass { lines: self.lines.clone() };
            if verify_cl(self.g, &cl).is_ok() {
                self.found = Some(cl);
            }
            return;
        }
        let group = self.groups[level].clone();
        let k = group.len();
        let mut combo: Vec<usize> = (0..self.half).collect();
        loop {
            // decide the whole group: chosen tangents join the class, the
            // rest are out; all of them stop being "potential"
            let mut touched: Vec<usize> = Vec::new();
            for &t in &group {
                for m in self.g.meets[t as usize].iter_ones() {
                    self.potential[m] -= 1;
                    touched.push(m);
                }
            }
            for &i in &combo {
                let t = group[i] as usize;
                self.lines.insert(t);
                for m in self.g.meets[t].iter_ones() {
                    self.met[m] += 1;
                }
            }
            let ok = touched.iter().all(|&m| self.consistent(m, level + 1))
                && group.iter().all(|&t| self.consistent(t as usize, level + 1));
            if ok {
                self.search(level + 1);
            }
            for &i in &combo {
                let t = group[i] as usize;
                self.lines.set(t, false);
                for m in self.g.meets[t].iter_ones() {
                    self.met[m] -= 1;
                }
            }
            for &t in &group {
                for m in self.g.meets[t as usize].iter_ones() {
                    self.potential[m] += 1;
                }
            }
            if self.found.is_some() {
                return;
            }
            // next `half`-combination of {0..k}
            let mut i = self.half;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if combo[i] != i + k - self.half {
                    combo[i] += 1;
                    for j in (i + 1)..self.half {
                        combo[j] = combo[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return;
            }
        }
    }
}

/// Search for an x = (q^2+1)/2 class of secant-plus-half-tangent type over
/// the standard elliptic quadric: all secants, plus half the tangents at
/// every quadric point, chosen so that every line meets the right number of
/// class lines. Exhaustive backtracking over the per-point tangent choices
/// with incidence-count propagation; returns the first class found.
pub fn quadric_half_tangent_class(g: &Geometry) -> Option<LineClass> {
    assert_eq!(g.n, 3);
    let q = g.q() as u64;
    assert!(q % 2 == 1);
    let x = (q * q + 1) / 2;
    let quadric = elliptic_quadric(g);
    let cap = cap_analysis(g, &quadric).expect("quadric is a cap");

    let mut group_of = vec![usize::MAX; g.num_lines()];
    let mut groups: Vec<Vec<LineId>> = vec![Vec::new(); quadric.len()];
    for &t in &cap.tangent {
        let p = g.lines[t as usize]
            .points
            .iter()
            .copied()
            .find(|p| quadric.contains(p))
            .expect("tangent touches the quadric");
        let gi = quadric.iter().position(|&v| v == p).unwrap();
        group_of[t as usize] = gi;
        groups[gi].push(t);
    }
    debug_assert!(groups.iter().all(|grp| grp.len() == q as usize + 1));

    let mut lines = Bitset::new(g.num_lines());
    for &s in &cap.secant {
        lines.insert(s as usize);
    }
    let met: Vec<u64> = (0..g.num_lines())
        .map(|l| g.meets[l].intersection_count(&lines) as u64)
        .collect();
    let mut tangent_set = Bitset::new(g.num_lines());
    for &t in &cap.tangent {
        tangent_set.insert(t as usize);
    }
    let potential: Vec<u64> = (0..g.num_lines())
        .map(|l| g.meets[l].intersection_count(&tangent_set) as u64)
        .collect();

    let mut search = TangentSearch {
        g,
        groups,
        half: (q as usize + 1) / 2,
        target_in: x * (q + 1) + q * q - 1,
        target_out: x * (q + 1),
        group_of,
        lines,
        met,
        potential,
        found: None,
    };
    search.search(0);
    search.found
}

/// From a secant-plus-half-tangent class, locate an incident (P, pi) pair
/// admitting the reverse switching move and perform it, producing a class
/// of the other solution type with the same parameter. The reverse move is
/// the forward switch applied to the complement, conjugated back.
pub fn switch_partner(g: &Geometry, cl: &LineClass) -> Option<LineClass> {
    let co = complement(g, cl);
    for pl in 0..g.planes.len() as PlaneId {
        for p in g.planes[pl as usize].points.iter_ones() {
            if let Ok(sw) = switch(g, &co, p as PointId, pl) {
                let out = complement(g, &sw);
                if verify_cl(g, &out).is_ok() && out != *cl {
                    return Some(out);
                }
            }
        }
    }
    None
}
