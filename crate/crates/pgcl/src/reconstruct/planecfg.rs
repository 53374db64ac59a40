//! Line and point configurations in PG(2,q): the full collineation group as
//! explicit permutations, an exhaustive configuration search engine with
//! interval pruning, and isomorph rejection by orbit enumeration.
//!
//! Configurations are bitmasks over the q^2+q+1 lines (or points) of the
//! plane, which fits in a u32 for q <= 5.

use crate::bitset::Bitset;
use crate::projgeom::{Geometry, LineId, PointId};
use rayon::prelude::*;
use std::collections::HashSet;

/// The collineation group PGL(3,q) of PG(2,q), as point and line
/// permutations. For the orders used here there are no field automorphisms
/// to add (q prime); for q = 4, 8, 9 the Frobenius layer would double or
/// triple the group, which none of the searches need.
pub struct PlaneGroup {
    pub point_perms: Vec<Vec<u8>>,
    pub line_perms: Vec<Vec<u8>>,
}

impl PlaneGroup {
    pub fn order(&self) -> usize {
        self.point_perms.len()
    }
}

/// Enumerate PGL(3,q) by running over projective frames: ordered 4-tuples
/// of points, no three collinear. Each frame is the image of
/// (e1, e2, e3, e1+e2+e3) under exactly one group element.
pub fn plane_group(g2: &Geometry) -> PlaneGroup {
    assert_eq!(g2.n, 2);
    let f = &g2.field;
    let q = f.q as usize;
    let n_pts = g2.num_points();
    // direct coordinate-code -> point id table to avoid hashing in the
    // innermost loop
    let code_of = |c: &[u8]| -> usize {
        (c[0] as usize * q + c[1] as usize) * q + c[2] as usize
    };
    let mut code_table = vec![u32::MAX; q * q * q];
    for (p, coords) in g2.points.iter().enumerate() {
        for s in 1..q as u8 {
            let scaled: Vec<u8> = coords.iter().map(|&c| f.mul(s, c)).collect();
            code_table[code_of(&scaled)] = p as u32;
        }
    }
    // dense pair -> line table
    let mut line_tab = vec![u8::MAX; n_pts * n_pts];
    for (l, line) in g2.lines.iter().enumerate() {
        for &a in &line.points {
            for &b in &line.points {
                if a != b {
                    line_tab[a as usize * n_pts + b as usize] = l as u8;
                }
            }
        }
    }
    let mut point_perms = Vec::new();
    let mut line_perms = Vec::new();
    let collinear = |a: PointId, b: PointId, c: PointId| -> bool {
        g2.lines[g2.line_through(a, b) as usize].points.contains(&c)
    };
    for p1 in 0..n_pts as PointId {
        for p2 in 0..n_pts as PointId {
            if p2 == p1 {
                continue;
            }
            for p3 in 0..n_pts as PointId {
                if p3 == p1 || p3 == p2 || collinear(p1, p2, p3) {
                    continue;
                }
                for p4 in 0..n_pts as PointId {
                    if p4 == p1
                        || p4 == p2
                        || p4 == p3
                        || collinear(p1, p2, p4)
                        || collinear(p1, p3, p4)
                        || collinear(p2, p3, p4)
                    {
                        continue;
                    }
                    // columns lambda_i * p_i with sum = p4
                    let cols: Vec<&[u8]> = vec![
                        &g2.points[p1 as usize],
                        &g2.points[p2 as usize],
                        &g2.points[p3 as usize],
                    ];
                    let lambda =
                        crate::projgeom::express_in_basis(f, &cols, &g2.points[p4 as usize])
                            .expect("frame target in span");
                    debug_assert!(lambda.iter().all(|&l| l != 0));
                    let mut matrix = [[0u8; 3]; 3];
                    for (j, col) in cols.iter().enumerate() {
                        for i in 0..3 {
                            matrix[i][j] = f.mul(lambda[j], col[i]);
                        }
                    }
                    let mut pperm = vec![0u8; n_pts];
                    for (p, coords) in g2.points.iter().enumerate() {
                        let mut img = [0u8; 3];
                        for (i, row) in matrix.iter().enumerate() {
                            let mut acc = 0u8;
                            for (k, &m) in row.iter().enumerate() {
                                acc = f.add(acc, f.mul(m, coords[k]));
                            }
                            img[i] = acc;
                        }
                        let code =
                            (img[0] as usize * q + img[1] as usize) * q + img[2] as usize;
                        pperm[p] = code_table[code] as u8;
                    }
                    let mut lperm = vec![0u8; g2.num_lines()];
                    for (l, line) in g2.lines.iter().enumerate() {
                        let a = pperm[line.points[0] as usize] as usize;
                        let b = pperm[line.points[1] as usize] as usize;
                        lperm[l] = line_tab[a * n_pts + b];
                    }
                    point_perms.push(pperm);
                    line_perms.push(lperm);
                }
            }
        }
    }
    PlaneGroup { point_perms, line_perms }
}

/// Dual coordinates of each line (the point with the same coordinate
/// tuple under the standard correlation), as a point id.
pub fn line_duals(g2: &Geometry) -> Vec<PointId> {
    assert_eq!(g2.n, 2);
    let f = &g2.field;
    g2.lines
        .iter()
        .map(|line| {
            let a = &g2.points[line.points[0] as usize];
            let b = &g2.points[line.points[1] as usize];
            // cross product gives the line's coefficient vector
            let c = [
                f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
                f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
                f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
            ];
            g2.point_id(&c).expect("nonzero coefficient vector")
        })
        .collect()
}

pub fn apply_perm(mask: u32, perm: &[u8]) -> u32 {
    let mut out = 0u32;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << perm[i];
    }
    out
}

/// The full orbit of a configuration mask, sorted.
pub fn orbit_of(mask: u32, perms: &[Vec<u8>]) -> Vec<u32> {
    let mut orbit: Vec<u32> = perms.iter().map(|p| apply_perm(mask, p)).collect();
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

/// Group configurations into equivalence classes under the given
/// permutations. Returns (canonical representative = minimum of the orbit
/// intersected with the input list, orbit members present in the input),
/// ordered by representative.
pub fn classify(configs: &[u32], perms: &[Vec<u8>]) -> Vec<(u32, Vec<u32>)> {
    let mut sorted: Vec<u32> = configs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let present: HashSet<u32> = sorted.iter().copied().collect();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut classes = Vec::new();
    for &c in &sorted {
        if seen.contains(&c) {
            continue;
        }
        let orbit = orbit_of(c, perms);
        let members: Vec<u32> = orbit.iter().copied().filter(|m| present.contains(m)).collect();
        for &m in &members {
            seen.insert(m);
        }
        classes.push((members[0], members));
    }
    classes
}

/// An incidence structure for the configuration search: `items` are
/// selectable, `blocks` count selected incident items. For planar sections
/// the items are lines and the blocks points; vice versa for point-set
/// searches.
pub struct SearchSpace {
    pub n_items: usize,
    pub n_blocks: usize,
    /// blocks incident with each item (q+1 of them).
    pub item_blocks: Vec<Vec<usize>>,
    /// items incident with each block (q+1 of them).
    pub block_items: Vec<Vec<usize>>,
}

impl SearchSpace {
    /// Items = lines, blocks = points.
    pub fn lines_of(g2: &Geometry) -> SearchSpace {
        SearchSpace {
            n_items: g2.num_lines(),
            n_blocks: g2.num_points(),
            item_blocks: g2
                .lines
                .iter()
                .map(|l| l.points.iter().map(|&p| p as usize).collect())
                .collect(),
            block_items: (0..g2.num_points())
                .map(|p| g2.stars[p].iter_ones().collect())
                .collect(),
        }
    }

    /// Items = points, blocks = lines.
    pub fn points_of(g2: &Geometry) -> SearchSpace {
        let lines = SearchSpace::lines_of(g2);
        SearchSpace {
            n_items: lines.n_blocks,
            n_blocks: lines.n_items,
            item_blocks: lines.block_items,
            block_items: lines.item_blocks,
        }
    }
}

/// Allowed sorted count-multisets around selected and unselected items.
/// For an item e with incident block counters (c_b), the constraint is
/// sorted(c_b - selected(e)) in the allowed family for its side.
#[derive(Clone, Debug)]
pub struct RowConstraints {
    pub selected: Vec<Vec<u8>>,
    pub unselected: Vec<Vec<u8>>,
}

impl RowConstraints {
    fn shifted(family: &[Vec<u8>], shift: u8) -> Vec<Vec<u8>> {
        let mut v: Vec<Vec<u8>> = family
            .iter()
            .map(|m| {
                let mut s: Vec<u8> = m.iter().map(|&e| e + shift).collect();
                s.sort_unstable();
                s
            })
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Clone)]
struct SearchState {
    counters: Vec<u8>,
    undecided: Vec<u8>,
    selected: Vec<bool>,
    decided: Vec<bool>,
    chosen: usize,
}

struct ConfigSearch<'a> {
    space: &'a SearchSpace,
    target: usize,
    /// Items in decision order: pencil-major, so block counters complete
    /// early and the interval checks bite.
    order: Vec<usize>,
    /// Allowed counter multisets (already shifted to raw counter values).
    sel_rows: Vec<Vec<u8>>,
    unsel_rows: Vec<Vec<u8>>,
    counter_cap: u8,
    counter_floor: u8,
}

/// Can the multiset of intervals [lo_i, hi_i] be matched to some allowed
/// multiset? Greedy interval matching per candidate row.
fn intervals_match(intervals: &mut [(u8, u8)], rows: &[Vec<u8>]) -> bool {
    intervals.sort_unstable();
    'rows: for row in rows {
        // row is sorted ascending; intervals sorted by (lo, hi); match
        // greedily: assign row entries in ascending order to the interval
        // with the smallest hi that accepts them
        let mut used = [false; 16];
        for &e in row {
            let mut best: Option<usize> = None;
            for (i, &(lo, hi)) in intervals.iter().enumerate() {
                if used[i] || e < lo || e > hi {
                    continue;
                }
                if best.map(|b| intervals[b].1 > hi).unwrap_or(true) {
                    best = Some(i);
                }
            }
            match best {
                Some(i) => used[i] = true,
                None => continue 'rows,
            }
        }
        return true;
    }
    false
}

impl<'a> ConfigSearch<'a> {
    fn item_feasible(&self, st: &SearchState, e: usize) -> bool {
        // interval of each incident counter under future decisions
        let mut intervals: Vec<(u8, u8)> = self.space.item_blocks[e]
            .iter()
            .map(|&b| (st.counters[b], st.counters[b] + st.undecided[b]))
            .collect();
        if st.selected[e] {
            // the item's own membership contributes 1 to each counter; the
            // allowed family describes counters minus that contribution
            for iv in intervals.iter_mut() {
                *iv = (iv.0.saturating_sub(1), iv.1 - 1);
            }
            intervals_match(&mut intervals, &self.sel_rows)
        } else {
            intervals_match(&mut intervals, &self.unsel_rows)
        }
    }

    /// Prune after deciding `item`: only blocks incident with it changed,
    /// so only decided items on those blocks need rechecking.
    fn prune_after(&self, st: &SearchState, item: usize) -> bool {
        for &b in &self.space.item_blocks[item] {
            if st.counters[b] > self.counter_cap
                || st.counters[b] + st.undecided[b] < self.counter_floor
            {
                return true;
            }
        }
        for &b in &self.space.item_blocks[item] {
            for &e in &self.space.block_items[b] {
                if st.decided[e] && !self.item_feasible(st, e) {
                    return true;
                }
            }
        }
        false
    }

    fn emit(&self, st: &SearchState, out: &mut Vec<u32>) {
        // full verification
        for e in 0..self.space.n_items {
            let mut row: Vec<u8> = self.space.item_blocks[e]
                .iter()
                .map(|&b| st.counters[b] - st.selected[e] as u8)
                .collect();
            row.sort_unstable();
            let family = if st.selected[e] { &self.sel_rows } else { &self.unsel_rows };
            if !family.contains(&row) {
                return;
            }
        }
        let mut mask = 0u32;
        for (e, &s) in st.selected.iter().enumerate() {
            if s {
                mask |= 1 << e;
            }
        }
        out.push(mask);
    }

    /// Decide item at `level` as `pick`; returns false when pruned. The
    /// state is mutated either way and must be undone by `undo`.
    fn apply(&self, st: &mut SearchState, level: usize, pick: bool) -> bool {
        let item = self.order[level];
        st.decided[item] = true;
        for &b in &self.space.item_blocks[item] {
            st.undecided[b] -= 1;
        }
        if pick {
            st.selected[item] = true;
            st.chosen += 1;
            for &b in &self.space.item_blocks[item] {
                st.counters[b] += 1;
            }
        }
        !self.prune_after(st, item)
    }

    fn undo(&self, st: &mut SearchState, level: usize) {
        let item = self.order[level];
        st.decided[item] = false;
        if st.selected[item] {
            st.selected[item] = false;
            st.chosen -= 1;
            for &b in &self.space.item_blocks[item] {
                st.counters[b] -= 1;
            }
        }
        for &b in &self.space.item_blocks[item] {
            st.undecided[b] += 1;
        }
    }

    fn bounded(&self, st: &SearchState, level: usize) -> bool {
        let remaining = self.space.n_items - level;
        st.chosen <= self.target && st.chosen + remaining >= self.target
    }

    fn search(&self, st: &mut SearchState, level: usize, out: &mut Vec<u32>) {
        if !self.bounded(st, level) {
            return;
        }
        if level == self.space.n_items {
            self.emit(st, out);
            return;
        }
        for pick in [true, false] {
            if self.apply(st, level, pick) {
                self.search(st, level + 1, out);
            }
            self.undo(st, level);
        }
    }

    /// Valid prefix states at depth `split`.
    fn collect_prefixes(
        &self,
        st: &mut SearchState,
        level: usize,
        split: usize,
        acc: &mut Vec<SearchState>,
    ) {
        if !self.bounded(st, level) {
            return;
        }
        if level == split {
            acc.push(st.clone());
            return;
        }
        for pick in [true, false] {
            if self.apply(st, level, pick) {
                self.collect_prefixes(st, level + 1, split, acc);
            }
            self.undo(st, level);
        }
    }
}

/// Exhaustively enumerate all size-`target` selections whose per-item
/// counter multisets are admissible. `selected_rows` / `unselected_rows`
/// are the allowed multisets of counts EXCLUDING the item itself (the
/// engine shifts selected rows internally). Returns sorted masks.
/// Exhaustively enumerate all valid configurations containing item 0, then
/// close under the group. Since the group is transitive on items, every
/// nonempty orbit has a member through item 0, so the union of the orbits
/// of the found configurations is the complete list. Returns the full
/// sorted list and the classes (canonical representative, full orbit).
pub fn enumerate_all_configs(
    space: &SearchSpace,
    target: usize,
    selected_rows: &[Vec<u8>],
    unselected_rows: &[Vec<u8>],
    perms: &[Vec<u8>],
) -> (Vec<u32>, Vec<(u32, Vec<u32>)>) {
    if target == 0 {
        let empty_ok =
            enumerate_configs(space, 0, selected_rows, unselected_rows).contains(&0);
        return if empty_ok {
            (vec![0], vec![(0, vec![0])])
        } else {
            (vec![], vec![])
        };
    }
    let seeds = enumerate_configs_impl(space, target, selected_rows, unselected_rows, true);
    let mut classes: Vec<(u32, Vec<u32>)> = Vec::new();
    let mut seen: HashSet<u32> = HashSet::new();
    for &s in &seeds {
        if seen.contains(&s) {
            continue;
        }
        let orbit = orbit_of(s, perms);
        for &m in &orbit {
            seen.insert(m);
        }
        classes.push((orbit[0], orbit));
    }
    classes.sort_by_key(|(rep, _)| *rep);
    let mut configs: Vec<u32> = classes.iter().flat_map(|(_, o)| o.iter().copied()).collect();
    configs.sort_unstable();
    configs.dedup();
    (configs, classes)
}

pub fn enumerate_configs(
    space: &SearchSpace,
    target: usize,
    selected_rows: &[Vec<u8>],
    unselected_rows: &[Vec<u8>],
) -> Vec<u32> {
    enumerate_configs_impl(space, target, selected_rows, unselected_rows, false)
}

fn enumerate_configs_impl(
    space: &SearchSpace,
    target: usize,
    selected_rows: &[Vec<u8>],
    unselected_rows: &[Vec<u8>],
    force_first: bool,
) -> Vec<u32> {
    assert!(space.n_items <= 32, "masks are u32");
    let sel_rows = RowConstraints::shifted(selected_rows, 0);
    let unsel_rows = RowConstraints::shifted(unselected_rows, 0);
    let cap = sel_rows
        .iter()
        .flat_map(|r| r.iter().map(|&e| e + 1))
        .chain(unsel_rows.iter().flat_map(|r| r.iter().copied()))
        .max()
        .unwrap_or(0);
    let floor = sel_rows
        .iter()
        .flat_map(|r| r.iter().map(|&e| e + 1))
        .chain(unsel_rows.iter().flat_map(|r| r.iter().copied()))
        .min()
        .unwrap_or(0);
    // pencil-major item order, breadth-first from item 0's blocks: the
    // counters around early blocks complete quickly, which is where the
    // interval pruning bites
    let mut order: Vec<usize> = Vec::with_capacity(space.n_items);
    let mut placed = vec![false; space.n_items];
    let mut block_seen = vec![false; space.n_blocks];
    let mut queue: Vec<usize> = Vec::with_capacity(space.n_blocks);
    order.push(0);
    placed[0] = true;
    for &b in &space.item_blocks[0] {
        block_seen[b] = true;
        queue.push(b);
    }
    let mut qi = 0;
    while qi < queue.len() {
        let b = queue[qi];
        qi += 1;
        for &e in &space.block_items[b] {
            if !placed[e] {
                placed[e] = true;
                order.push(e);
                for &nb in &space.item_blocks[e] {
                    if !block_seen[nb] {
                        block_seen[nb] = true;
                        queue.push(nb);
                    }
                }
            }
        }
    }
    for e in 0..space.n_items {
        if !placed[e] {
            order.push(e);
        }
    }
    let search = ConfigSearch { space, target, order, sel_rows, unsel_rows, counter_cap: cap, counter_floor: floor };
    let mut st = SearchState {
        counters: vec![0; space.n_blocks],
        undecided: space.block_items.iter().map(|v| v.len() as u8).collect(),
        selected: vec![false; space.n_items],
        decided: vec![false; space.n_items],
        chosen: 0,
    };
    let mut out = Vec::new();
    let start_level = if force_first {
        // item 0 leads the order; commit it as selected
        debug_assert_eq!(search.order[0], 0);
        if !search.apply(&mut st, 0, true) {
            return out;
        }
        1
    } else {
        0
    };
    let split = if space.n_items >= 24 { 14 } else { 0 };
    if split == 0 || split <= start_level {
        search.search(&mut st, start_level, &mut out);
    } else {
        let mut prefixes = Vec::new();
        search.collect_prefixes(&mut st, start_level, split, &mut prefixes);
        let results: Vec<Vec<u32>> = prefixes
            .into_par_iter()
            .map(|mut s| {
                let mut local = Vec::new();
                search.search(&mut s, split, &mut local);
                local
            })
            .collect();
        for r in results {
            out.extend(r);
        }
    }
    out.sort_unstable();
    out
}

/// Convert a mask over plane lines into a Bitset and back.
pub fn mask_to_lines(mask: u32) -> Vec<LineId> {
    (0..32).filter(|&i| mask >> i & 1 == 1).map(|i| i as LineId).collect()
}

pub fn mask_of_bits(bits: &Bitset) -> u32 {
    let mut m = 0u32;
    for i in bits.iter_ones() {
        m |= 1 << i;
    }
    m
}
