//! Enumeration of all maximal independent sets of a type graph, with loops
//! disregarded.

use crate::nd::TypeGraph;

/// Complete family of maximal independent sets over the ground set `0..k`.
/// Sets are sorted vertex lists; the family is duplicate-free and in
/// lexicographic order, which fixes the ILP column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisFamily {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

impl MisFamily {
    pub(crate) fn from_sorted_sets(ground_size: usize, sets: Vec<Vec<usize>>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]), "family not sorted/deduped");
        MisFamily { ground_size, sets }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }
}

/// Enumerates every maximal independent set of the loop-stripped type graph
/// via Bron–Kerbosch with pivoting, i.e. maximal cliques of the complement.
/// Output is sorted, so the result is deterministic regardless of the
/// recursion schedule.
pub fn enumerate_mis(t: &TypeGraph) -> MisFamily {
    let k = t.vertex_count();
    assert!(k <= 64, "maximal-independent-set enumeration is limited to 64 type vertices");
    if k == 0 {
        return MisFamily { ground_size: 0, sets: Vec::new() };
    }
    let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // Complement adjacency: non-neighbors in the loop-stripped type graph.
    let comp: Vec<u64> = (0..k)
        .map(|v| {
            let mut mask = 0u64;
            for &u in t.neighbors(v) {
                mask |= 1 << u;
            }
            !mask & full & !(1 << v)
        })
        .collect();
    let mut found: Vec<u64> = Vec::new();
    expand(&comp, 0, full, 0, &mut found);
    let mut sets: Vec<Vec<usize>> = found
        .into_iter()
        .map(|mask| {
            let mut set = Vec::with_capacity(mask.count_ones() as usize);
            let mut bits = mask;
            while bits != 0 {
                set.push(bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
            set
        })
        .collect();
    sets.sort();
    MisFamily { ground_size: k, sets }
}

/// Bron–Kerbosch over bitmasks. `r` is the growing clique of the complement
/// graph, `p` the candidates, `x` the excluded vertices. The pivot is the
/// candidate with the most complement-neighbors among the candidates.
fn expand(comp: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    // Pivot: the candidate covering the most other candidates, which
    // minimizes the branching set.
    let mut pivot = 0usize;
    let mut best = 0u32;
    let mut first = true;
    let mut bits = p;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let degree = (comp[v] & p).count_ones();
        if first || degree > best {
            best = degree;
            pivot = v;
            first = false;
        }
    }
    let mut todo = p & !comp[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        let bit = 1u64 << v;
        expand(comp, r | bit, p & comp[v], x & comp[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// The set of class indices a vertex set touches, as a sorted deduplicated
/// list. Exists as a named operation so the pipeline can phrase its
/// "color class induces this independent set" checks.
pub fn induces(touched_classes: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut list: Vec<usize> = touched_classes.into_iter().collect();
    list.sort_unstable();
    list.dedup();
    list
}

/// True iff `inner` is a subset of `outer`; both must be sorted.
pub fn dominates(outer: &[usize], inner: &[usize]) -> bool {
    let mut it = outer.iter();
    inner.iter().all(|x| it.any(|y| y == x))
}
