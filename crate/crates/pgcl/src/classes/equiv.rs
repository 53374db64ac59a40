//! Projective equivalence of line classes by frame backtracking.
//!
//! A collineation of PG(3,q) is a semilinear map: a matrix of PGL(4,q)
//! composed with a power of the Frobenius automorphism. The matrix part is
//! determined by the images of the five points of a frame (four in general
//! position plus a unit point), so the search walks over weight-compatible
//! image tuples, pruning with line and plane invariants, and checks the
//! induced line permutation against the target class. Exhausting the tree
//! certifies non-equivalence.

use super::{pattern_of_line, plane_weights, point_weights, LineClass};
use crate::feasibility::{Budget, BudgetReport};
use crate::projgeom::{express_in_basis, Geometry, LineId, PointId};
use std::collections::BTreeMap;
use std::time::Instant;

/// A collineation, stored as its action plus its defining data.
#[derive(Clone, Debug)]
pub struct Collineation {
    /// Column matrix over GF(q), applied after the field automorphism.
    pub matrix: [[u8; 4]; 4],
    /// Power of the Frobenius x -> x^p applied first.
    pub frobenius: u32,
    pub point_map: Vec<PointId>,
    pub line_map: Vec<LineId>,
}

#[derive(Clone, Debug)]
pub enum EquivOutcome {
    Equivalent(Box<Collineation>),
    NotEquivalent,
    Inconclusive(BudgetReport),
}

impl EquivOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivOutcome::Equivalent(_))
    }
}

/// The point permutation induced by applying Frobenius^k coordinate-wise.
fn frobenius_point_map(g: &Geometry, k: u32) -> Vec<PointId> {
    (0..g.num_points() as PointId)
        .map(|p| {
            let mut coords = g.points[p as usize].clone();
            for c in coords.iter_mut() {
                for _ in 0..k {
                    *c = g.field.frobenius(*c);
                }
            }
            g.point_id(&coords).expect("automorphism permutes points")
        })
        .collect()
}

fn map_class_by_points(g: &Geometry, cl: &LineClass, pmap: &[PointId]) -> LineClass {
    let mut ids = Vec::with_capacity(cl.size());
    for l in cl.line_ids() {
        let line = &g.lines[l as usize];
        ids.push(g.line_through(pmap[line.points[0] as usize], pmap[line.points[1] as usize]));
    }
    LineClass::from_line_ids(g, &ids)
}

/// Cheap invariant fingerprint: parameter, weight histograms, pattern
/// census. Equivalent classes agree on all of them.
fn fingerprint(g: &Geometry, cl: &LineClass) -> (usize, BTreeMap<u32, u32>, BTreeMap<u32, u32>) {
    let mut pts = BTreeMap::new();
    for w in point_weights(g, cl) {
        *pts.entry(w).or_insert(0u32) += 1;
    }
    let mut pls = BTreeMap::new();
    for w in plane_weights(g, cl) {
        *pls.entry(w).or_insert(0u32) += 1;
    }
    (cl.size(), pts, pls)
}

struct Search<'a> {
    g: &'a Geometry,
    source: &'a LineClass,
    target: &'a LineClass,
    wt_src: Vec<u32>,
    wt_tgt: Vec<u32>,
    plane_wt_src: Vec<u32>,
    plane_wt_tgt: Vec<u32>,
    line_key_src: Vec<u64>,
    line_key_tgt: Vec<u64>,
    nodes: u64,
    budget: Budget,
    start: Instant,
    exhausted: bool,
}

impl<'a> Search<'a> {
    /// Per-line invariant: membership plus the canonical pattern, hashed to
    /// a small key for O(1) comparison.
    fn line_keys(g: &Geometry, cl: &LineClass, x: u32) -> Vec<u64> {
        (0..g.num_lines() as LineId)
            .map(|l| {
                let (membership, pat) = pattern_of_line(g, cl, x, l);
                let mut h = 0xcbf29ce484222325u64;
                let mut feed = |v: u64| {
                    h ^= v;
                    h = h.wrapping_mul(0x100000001b3);
                };
                feed(membership as u64);
                for &s in &pat.row_sums {
                    feed(s as u64 + 1);
                }
                for &s in &pat.col_sums {
                    feed((s as u64 + 1) << 32);
                }
                h
            })
            .collect()
    }

    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        if self.nodes >= self.budget.max_nodes {
            self.exhausted = true;
            return true;
        }
        if let Some(secs) = self.budget.max_secs {
            if self.nodes % 256 == 0 && self.start.elapsed().as_secs() >= secs {
                self.exhausted = true;
                return true;
            }
        }
        false
    }

    /// Deterministic base frame: five points of the source geometry in
    /// general position, ordered so the rarest weight classes come first.
    fn base_frame(&self) -> [PointId; 5] {
        let g = self.g;
        let mut class_size: BTreeMap<u32, u32> = BTreeMap::new();
        for &w in &self.wt_src {
            *class_size.entry(w).or_insert(0) += 1;
        }
        let mut order: Vec<PointId> = (0..g.num_points() as PointId).collect();
        order.sort_by_key(|&p| (class_size[&self.wt_src[p as usize]], p));
        let p1 = order[0];
        let p2 = *order.iter().find(|&&p| p != p1).unwrap();
        let l12 = g.line_through(p1, p2);
        let p3 = *order
            .iter()
            .find(|&&p| !g.lines[l12 as usize].points.contains(&p))
            .unwrap();
        let pl123 = plane_of(g, p1, p2, p3);
        let p4 = *order
            .iter()
            .find(|&&p| !g.planes[pl123 as usize].points.get(p as usize))
            .unwrap();
        // unit point: in general position with respect to p1..p4
        let p5 = *order
            .iter()
            .find(|&&p| {
                [(p1, p2, p3), (p1, p2, p4), (p1, p3, p4), (p2, p3, p4)]
                    .iter()
                    .all(|&(a, b, c)| !g.planes[plane_of(g, a, b, c) as usize].points.get(p as usize))
            })
            .unwrap();
        [p1, p2, p3, p4, p5]
    }

    fn level_ok(&self, base: &[PointId], image: &[PointId]) -> bool {
        let k = image.len();
        let (b, q) = (base[k - 1], image[k - 1]);
        if self.wt_src[b as usize] != self.wt_tgt[q as usize] {
            return false;
        }
        for i in 0..k - 1 {
            if image[i] == q {
                return false;
            }
            let lb = self.g.line_through(base[i], b);
            let lq = self.g.line_through(image[i], q);
            if self.line_key_src[lb as usize] != self.line_key_tgt[lq as usize] {
                return false;
            }
        }
        // plane invariants for triples ending here
        for i in 0..k.saturating_sub(1) {
            for j in (i + 1)..k - 1 {
                // degenerate (collinear) triples must stay degenerate
                let collinear_src = self.g.lines
                    [self.g.line_through(base[i], base[j]) as usize]
                    .points
                    .contains(&b);
                let collinear_tgt = self.g.lines
                    [self.g.line_through(image[i], image[j]) as usize]
                    .points
                    .contains(&q);
                if collinear_src != collinear_tgt {
                    return false;
                }
                if !collinear_src {
                    let ps = plane_of(self.g, base[i], base[j], b);
                    let pt = plane_of(self.g, image[i], image[j], q);
                    if self.plane_wt_src[ps as usize] != self.plane_wt_tgt[pt as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, frobenius: u32) -> Option<Collineation> {
        let base = self.base_frame();
        let mut image: Vec<PointId> = Vec::with_capacity(5);
        self.descend(&base, &mut image, frobenius)
    }

    fn descend(
        &mut self,
        base: &[PointId; 5],
        image: &mut Vec<PointId>,
        frobenius: u32,
    ) -> Option<Collineation> {
        if image.len() == 5 {
            return self.check_full(base, image, frobenius);
        }
        for cand in 0..self.g.num_points() as PointId {
            if self.out_of_budget() {
                return None;
            }
            self.nodes += 1;
            image.push(cand);
            if self.level_ok(base, image) {
                if let Some(found) = self.descend(base, image, frobenius) {
                    return Some(found);
                }
            }
            image.pop();
            if self.exhausted {
                return None;
            }
        }
        None
    }

    fn check_full(
        &mut self,
        base: &[PointId; 5],
        image: &[PointId],
        frobenius: u32,
    ) -> Option<Collineation> {
        let g = self.g;
        let matrix = frame_matrix(g, base, image)?;
        // induced maps
        let mut point_map = vec![0 as PointId; g.num_points()];
        for p in 0..g.num_points() {
            let c = &g.points[p];
            let mut img = [0u8; 4];
            for (r, row) in matrix.iter().enumerate() {
                let mut acc = 0u8;
                for (k, &m) in row.iter().enumerate() {
                    acc = g.field.add(acc, g.field.mul(m, c[k]));
                }
                img[r] = acc;
            }
            point_map[p] = g.point_id(&img)?;
        }
        let mut line_map = vec![0 as LineId; g.num_lines()];
        for (l, line) in g.lines.iter().enumerate() {
            line_map[l] = g.line_through(
                point_map[line.points[0] as usize],
                point_map[line.points[1] as usize],
            );
        }
        // the image of the (already Frobenius-twisted) source must be the
        // target, as line sets
        let ok = self
            .source
            .line_ids()
            .iter()
            .all(|&l| self.target.contains(line_map[l as usize]))
            && self.source.size() == self.target.size();
        if ok {
            Some(Collineation { matrix, frobenius, point_map, line_map })
        } else {
            None
        }
    }
}

/// The plane through three non-collinear points.
fn plane_of(g: &Geometry, a: PointId, b: PointId, c: PointId) -> u32 {
    let la = g.line_through(a, b);
    (0..g.planes.len() as u32)
        .find(|&pl| {
            g.planes[pl as usize].lines.get(la as usize)
                && g.planes[pl as usize].points.get(c as usize)
        })
        .expect("non-collinear points span a plane")
}

/// The matrix sending the base frame to the image frame (both five points,
/// no four coplanar), or None when the image tuple is degenerate.
fn frame_matrix(g: &Geometry, base: &[PointId; 5], image: &[PointId]) -> Option<[[u8; 4]; 4]> {
    let f = &g.field;
    // matrix B sending e1..e4, unit to the base frame; likewise M for the
    // image; the frame map is M B^{-1}
    let build = |pts: &[PointId]| -> Option<[[u8; 4]; 4]> {
        let cols: Vec<&[u8]> = (0..4).map(|i| g.points[pts[i] as usize].as_slice()).collect();
        let unit = &g.points[pts[4] as usize];
        let lambda = express_in_basis(f, &cols, unit)?;
        if lambda.iter().any(|&l| l == 0) {
            return None;
        }
        let mut m = [[0u8; 4]; 4];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..4 {
                m[i][j] = f.mul(lambda[j], col[i]);
            }
        }
        Some(m)
    };
    let mb = build(base)?;
    let mi = build(image)?;
    // invert mb over GF(q) and compose
    let inv = invert4(f, &mb)?;
    let mut out = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0u8;
            for (k, invrow) in inv.iter().enumerate() {
                acc = f.add(acc, f.mul(mi[i][k], invrow[j]));
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

fn invert4(f: &crate::galois::Field, m: &[[u8; 4]; 4]) -> Option<[[u8; 4]; 4]> {
    let mut a = *m;
    let mut inv = [[0u8; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1;
    }
    for col in 0..4 {
        let pivot = (col..4).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = f.inv(a[col][col]).ok()?;
        for j in 0..4 {
            a[col][j] = f.mul(a[col][j], pinv);
            inv[col][j] = f.mul(inv[col][j], pinv);
        }
        for r in 0..4 {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for j in 0..4 {
                    a[r][j] = f.sub(a[r][j], f.mul(factor, a[col][j]));
                    inv[r][j] = f.sub(inv[r][j], f.mul(factor, inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

/// Find a collineation of PG(3,q) mapping `left` to `right`, or certify
/// none exists. Field automorphisms are included for non-prime q.
pub fn equivalent(
    g: &Geometry,
    left: &LineClass,
    right: &LineClass,
    budget: &Budget,
) -> EquivOutcome {
    if fingerprint(g, left) != fingerprint(g, right) {
        return EquivOutcome::NotEquivalent;
    }
    let x = (left.size() / (g.q() as usize * g.q() as usize + g.q() as usize + 1)) as u32;
    let start = Instant::now();
    let mut nodes_total = 0;
    for k in 0..g.field.e {
        let (twisted, source_owned);
        if k == 0 {
            twisted = left;
        } else {
            let pmap = frobenius_point_map(g, k);
            source_owned = map_class_by_points(g, left, &pmap);
            twisted = &source_owned;
        }
        let mut search = Search {
            g,
            source: twisted,
            target: right,
            wt_src: point_weights(g, twisted),
            wt_tgt: point_weights(g, right),
            plane_wt_src: plane_weights(g, twisted),
            plane_wt_tgt: plane_weights(g, right),
            line_key_src: Search::line_keys(g, twisted, x),
            line_key_tgt: Search::line_keys(g, right, x),
            nodes: 0,
            budget: *budget,
            start,
            exhausted: false,
        };
        let found = search.run(k);
        nodes_total += search.nodes;
        if let Some(c) = found {
            return EquivOutcome::Equivalent(Box::new(c));
        }
        if search.exhausted {
            return EquivOutcome::Inconclusive(BudgetReport {
                nodes_used: nodes_total,
                max_nodes: budget.max_nodes,
                elapsed_secs: start.elapsed().as_secs_f64(),
                max_secs: budget.max_secs,
            });
        }
    }
    EquivOutcome::NotEquivalent
}

/// The "uniqueness convention" four-way check: is `right` equivalent to
/// `left`, its complement, its dual, or the complement of its dual?
pub fn equivalent_up_to_duality(
    g: &Geometry,
    rho: &crate::projgeom::Polarity,
    left: &LineClass,
    right: &LineClass,
    budget: &Budget,
) -> (bool, Option<&'static str>) {
    let variants: [(&'static str, LineClass); 4] = [
        ("identity", left.clone()),
        ("complement", super::complement(g, left)),
        ("dual", super::dualize(g, rho, left)),
        ("complement-of-dual", super::complement(g, &super::dualize(g, rho, left))),
    ];
    for (name, v) in variants {
        if equivalent(g, &v, right, budget).is_equivalent() {
            return (true, Some(name));
        }
    }
    (false, None)
}
