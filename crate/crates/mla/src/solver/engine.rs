//! The memoized recursion behind the solver: subproblems are connected
//! vertex subsets of the original tree (free, or anchored at one vertex),
//! represented as bitsets. A first pass computes optimal costs and records
//! the winning form per subproblem; a second pass replays the recorded
//! choices to assemble the witness arrangement and the form trace.

use std::collections::HashMap;

use crate::partition::SubtreePartition;
use crate::tree::{Tree, VertexId};

use super::formulas;
use super::{BlockRecord, SolveError, SolverConfig, TraceChoice, TraceRecord, VstarPolicy};

/// A set of vertex ids as a fixed-width bitset (bit `v - 1` for vertex v).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits {
    words: Box<[u64]>,
}

impl Bits {
    fn empty(words: usize) -> Self {
        Bits {
            words: vec![0u64; words].into_boxed_slice(),
        }
    }

    pub(crate) fn full(n: usize) -> Self {
        let words = n.div_ceil(64);
        let mut b = Bits::empty(words);
        for v in 1..=n {
            b.insert(v as VertexId);
        }
        b
    }

    pub(crate) fn from_vertices(words: usize, vs: &[VertexId]) -> Self {
        let mut b = Bits::empty(words);
        for &v in vs {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: VertexId) {
        self.words[((v - 1) / 64) as usize] |= 1u64 << ((v - 1) % 64);
    }

    fn remove(&mut self, v: VertexId) {
        self.words[((v - 1) / 64) as usize] &= !(1u64 << ((v - 1) % 64));
    }

    fn contains(&self, v: VertexId) -> bool {
        self.words[((v - 1) / 64) as usize] & (1u64 << ((v - 1) % 64)) != 0
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subtract(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    fn min_vertex(&self) -> Option<VertexId> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i * 64) as VertexId + w.trailing_zeros() as VertexId + 1);
            }
        }
        None
    }

    /// Members in ascending order.
    fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| WordIter {
            word: w,
            base: (i * 64) as VertexId,
        })
    }

    /// Members of the intersection with `mask`, ascending.
    fn iter_masked<'a>(&'a self, mask: &'a Bits) -> impl Iterator<Item = VertexId> + 'a {
        self.words
            .iter()
            .zip(mask.words.iter())
            .enumerate()
            .flat_map(|(i, (&a, &b))| WordIter {
                word: a & b,
                base: (i * 64) as VertexId,
            })
    }
}

struct WordIter {
    word: u64,
    base: VertexId,
}

impl Iterator for WordIter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.word == 0 {
            return None;
        }
        let bit = self.word.trailing_zeros();
        self.word &= self.word - 1;
        Some(self.base + bit as VertexId + 1)
    }
}

/// One component of a subproblem split at its center.
struct BitPart {
    root: VertexId,
    set: Bits,
    size: usize,
}

#[derive(Clone, Copy, Debug)]
enum Form {
    TypeA { vstar: VertexId },
    TypeB { vstar: VertexId, p: usize },
}

struct Entry {
    cost: u64,
    form: Form,
}

/// A solver instance: configuration plus the memo tables for one tree.
/// Single-writer; distinct instances are independent.
pub struct Solver<'t> {
    tree: &'t Tree,
    config: SolverConfig,
    words: usize,
    adj_bits: Vec<Bits>,
    free_memo: HashMap<Bits, Entry>,
    anch_memo: HashMap<(Bits, VertexId), Entry>,
}

impl<'t> Solver<'t> {
    pub fn new(tree: &'t Tree, config: SolverConfig) -> Result<Self, SolveError> {
        if config.vstar_policy == VstarPolicy::Exhaustive && tree.n() > config.exhaustive_limit {
            return Err(SolveError::ExhaustiveLimit {
                n: tree.n(),
                limit: config.exhaustive_limit,
            });
        }
        let words = tree.n().div_ceil(64);
        let adj_bits = (1..=tree.n() as VertexId)
            .map(|v| Bits::from_vertices(words, tree.neighbors(v)))
            .collect();
        Ok(Solver {
            tree,
            config,
            words,
            adj_bits,
            free_memo: HashMap::new(),
            anch_memo: HashMap::new(),
        })
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Number of memoized subproblems so far.
    pub fn memo_len(&self) -> usize {
        self.free_memo.len() + self.anch_memo.len()
    }

    pub(crate) fn full_set(&self) -> Bits {
        Bits::full(self.tree.n())
    }

    // ---- cost pass ----------------------------------------------------

    pub(crate) fn free_cost(&mut self, set: &Bits) -> Result<u64, SolveError> {
        if set.count() == 1 {
            return Ok(0);
        }
        if let Some(e) = self.free_memo.get(set) {
            return Ok(e.cost);
        }
        let candidates: Vec<VertexId> = match self.config.vstar_policy {
            VstarPolicy::Centroid => vec![self.centroid_of(set)],
            VstarPolicy::Exhaustive => set.iter().collect(),
        };
        let mut best: Option<(u64, Form)> = None;
        for vstar in candidates {
            let (cost, form) = self.best_form_at(set, vstar, false)?;
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, form));
            }
        }
        let (cost, form) = best.expect("a subproblem with >= 2 vertices has candidates");
        self.store_free(set.clone(), Entry { cost, form })?;
        Ok(cost)
    }

    pub(crate) fn anchored_cost(&mut self, set: &Bits, v: VertexId) -> Result<u64, SolveError> {
        if set.count() == 1 {
            return Ok(0);
        }
        let key = (set.clone(), v);
        if let Some(e) = self.anch_memo.get(&key) {
            return Ok(e.cost);
        }
        // The anchored vertex is the forced center.
        let (cost, form) = self.best_form_at(set, v, true)?;
        self.store_anch(key, Entry { cost, form })?;
        Ok(cost)
    }

    /// Best of the end-block form and every candidate surrounded form with
    /// center `vstar`. Deterministic tie-breaking: the surrounded form wins
    /// ties against the end-block form (smallest pair count first), so the
    /// richer layout is the one that gets exercised and traced.
    fn best_form_at(
        &mut self,
        set: &Bits,
        vstar: VertexId,
        anchored: bool,
    ) -> Result<(u64, Form), SolveError> {
        let parts = self.split_at(set, vstar);
        let sizes: Vec<usize> = parts.iter().map(|p| p.size).collect();
        let n = set.count();

        let a_cost = self.eval_type_a(set, &parts, vstar, anchored)?;
        let candidates =
            formulas::candidate_ps(n, &sizes, anchored, self.config.mode, self.config.p_policy);
        let mut best_b: Option<(u64, usize)> = None;
        for p in candidates {
            let cost = self.eval_type_b(set, &parts, &sizes, anchored, p)?;
            if best_b.is_none_or(|(b, _)| cost < b) {
                best_b = Some((cost, p));
            }
        }
        Ok(match best_b {
            Some((b_cost, p)) if b_cost <= a_cost => (b_cost, Form::TypeB { vstar, p }),
            _ => (a_cost, Form::TypeA { vstar }),
        })
    }

    /// End-block cost: the largest subtree at one end, the rest after it.
    /// Free trees join the halves across one edge (+1); anchored trees
    /// leave the remainder free and pay `n - n_0` for the uncovered edge
    /// portion plus the tree's own anchor.
    fn eval_type_a(
        &mut self,
        set: &Bits,
        parts: &[BitPart],
        vstar: VertexId,
        anchored: bool,
    ) -> Result<u64, SolveError> {
        let n = set.count();
        let t0 = &parts[0];
        let mut rest = set.clone();
        rest.subtract(&t0.set);
        let first = self.anchored_cost(&t0.set, t0.root)?;
        let second = if anchored {
            self.free_cost(&rest)?
        } else {
            self.anchored_cost(&rest, vstar)?
        };
        let constant = if anchored { (n - t0.size) as u64 } else { 1 };
        Ok(first + second + constant)
    }

    /// Surrounded cost for pair count p: anchored optima of the peeled
    /// subtrees, the free optimum of the center tree, plus the joining
    /// constant.
    fn eval_type_b(
        &mut self,
        set: &Bits,
        parts: &[BitPart],
        sizes: &[usize],
        anchored: bool,
        p: usize,
    ) -> Result<u64, SolveError> {
        let n = set.count();
        let peeled = formulas::peeled_count(p, anchored);
        let mut center = set.clone();
        let mut total = 0u64;
        for part in &parts[1..=peeled] {
            total += self.anchored_cost(&part.set, part.root)?;
            center.subtract(&part.set);
        }
        total += self.free_cost(&center)?;
        total += formulas::s_alpha_value(n, sizes, p, anchored, self.config.mode);
        Ok(total)
    }

    fn store_free(&mut self, key: Bits, e: Entry) -> Result<(), SolveError> {
        self.check_memo_budget()?;
        self.free_memo.insert(key, e);
        Ok(())
    }

    fn store_anch(&mut self, key: (Bits, VertexId), e: Entry) -> Result<(), SolveError> {
        self.check_memo_budget()?;
        self.anch_memo.insert(key, e);
        Ok(())
    }

    fn check_memo_budget(&self) -> Result<(), SolveError> {
        if self.memo_len() >= self.config.memo_limit {
            return Err(SolveError::MemoLimit {
                limit: self.config.memo_limit,
            });
        }
        Ok(())
    }

    // ---- structure ----------------------------------------------------

    /// Components of `set - vstar`, sorted by decreasing size, ties by
    /// smallest root. Each root is the unique member adjacent to `vstar`.
    fn split_at(&self, set: &Bits, vstar: VertexId) -> Vec<BitPart> {
        let mut region = set.clone();
        region.remove(vstar);
        let mut parts = Vec::new();
        let roots: Vec<VertexId> = self.adj_bits[(vstar - 1) as usize]
            .iter_masked(set)
            .collect();
        for root in roots {
            let comp = self.component_from(&region, root);
            let size = comp.count();
            parts.push(BitPart {
                root,
                set: comp,
                size,
            });
        }
        parts.sort_by(|a, b| b.size.cmp(&a.size).then(a.root.cmp(&b.root)));
        parts
    }

    fn component_from(&self, region: &Bits, root: VertexId) -> Bits {
        let mut comp = Bits::empty(self.words);
        comp.insert(root);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in self.adj_bits[(u - 1) as usize].iter_masked(region) {
                if !comp.contains(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        comp
    }

    /// Centroid of the induced subtree: minimizes the largest component
    /// left by removing the vertex, ties to the smallest id.
    fn centroid_of(&self, set: &Bits) -> VertexId {
        let m = set.count();
        let root = set.min_vertex().expect("non-empty subproblem");
        if m == 1 {
            return root;
        }
        let cap = self.tree.n() + 1;
        let mut parent = vec![0 as VertexId; cap];
        let mut order = Vec::with_capacity(m);
        let mut seen = Bits::empty(self.words);
        seen.insert(root);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            order.push(u);
            for w in self.adj_bits[(u - 1) as usize].iter_masked(set) {
                if !seen.contains(w) {
                    seen.insert(w);
                    parent[w as usize] = u;
                    stack.push(w);
                }
            }
        }
        let mut size = vec![1usize; cap];
        for &u in order.iter().rev() {
            let p = parent[u as usize];
            if p != 0 {
                size[p as usize] += size[u as usize];
            }
        }
        let mut best = (usize::MAX, 0 as VertexId);
        for v in set.iter() {
            let mut largest = m - size[v as usize];
            for w in self.adj_bits[(v - 1) as usize].iter_masked(set) {
                if parent[w as usize] == v {
                    largest = largest.max(size[w as usize]);
                }
            }
            if largest < best.0 {
                best = (largest, v);
            }
        }
        best.1
    }

    // ---- witness reconstruction ----------------------------------------

    /// Replay the memoized choice for a subproblem, producing its vertices
    /// in position order (for anchored subproblems: the right-anchored
    /// orientation) and appending its form trace in preorder.
    pub(crate) fn build(
        &self,
        set: &Bits,
        anchor: Option<VertexId>,
        trace: &mut Vec<TraceRecord>,
    ) -> Vec<VertexId> {
        if set.count() == 1 {
            return vec![set.min_vertex().unwrap()];
        }
        let form = match anchor {
            Some(v) => {
                self.anch_memo
                    .get(&(set.clone(), v))
                    .expect("anchored subproblem was solved")
                    .form
            }
            None => {
                self.free_memo
                    .get(set)
                    .expect("free subproblem was solved")
                    .form
            }
        };
        self.build_form(set, anchor, form, trace)
    }

    fn build_form(
        &self,
        set: &Bits,
        anchor: Option<VertexId>,
        form: Form,
        trace: &mut Vec<TraceRecord>,
    ) -> Vec<VertexId> {
        let anchored = anchor.is_some();
        let n = set.count();
        let mut children = Vec::new();
        let (order, choice) = match form {
            Form::TypeA { vstar } => {
                let parts = self.split_at(set, vstar);
                let t0 = &parts[0];
                let mut rest = set.clone();
                rest.subtract(&t0.set);
                let mut order = self.build(&t0.set, Some(t0.root), &mut children);
                let tail = if anchored {
                    self.build(&rest, None, &mut children)
                } else {
                    // Left-anchored block realized by reversing the
                    // right-anchored witness.
                    let mut w = self.build(&rest, Some(vstar), &mut children);
                    w.reverse();
                    w
                };
                order.extend(tail);
                (order, TraceChoice::TypeA)
            }
            Form::TypeB { vstar, p } => {
                let parts = self.split_at(set, vstar);
                let sizes: Vec<usize> = parts.iter().map(|q| q.size).collect();
                let peeled = formulas::peeled_count(p, anchored);
                let mut buf = vec![0 as VertexId; n];
                let mut center = set.clone();
                for (i, part) in parts.iter().enumerate().take(peeled + 1).skip(1) {
                    let mut w = self.build(&part.set, Some(part.root), &mut children);
                    if i % 2 == 0 {
                        w.reverse();
                    }
                    let offset = formulas::left_offset_value(n, &sizes, i);
                    buf[offset..offset + part.size].copy_from_slice(&w);
                    center.subtract(&part.set);
                }
                let center_offset = formulas::center_tree_offset(&sizes, p, anchored);
                let center_size = center.count();
                let w = self.build(&center, None, &mut children);
                buf[center_offset..center_offset + center_size].copy_from_slice(&w);

                // Measure each block's real start in the assembled order;
                // the layout identity says this matches the offsets above.
                let mut pos = vec![usize::MAX; self.tree.n() + 1];
                for (idx, &v) in buf.iter().enumerate() {
                    pos[v as usize] = idx;
                }
                let measure = |b: &Bits| b.iter().map(|v| pos[v as usize]).min().unwrap() as u64;
                let blocks = parts
                    .iter()
                    .enumerate()
                    .take(peeled + 1)
                    .skip(1)
                    .map(|(i, part)| BlockRecord {
                        index: i,
                        size: part.size,
                        offset: formulas::left_offset_value(n, &sizes, i) as u64,
                        assembled_offset: measure(&part.set),
                    })
                    .collect();
                let center_tree = BlockRecord {
                    index: 0,
                    size: center_size,
                    offset: center_offset as u64,
                    assembled_offset: measure(&center),
                };
                (
                    buf,
                    TraceChoice::TypeB {
                        p,
                        blocks,
                        center_tree,
                    },
                )
            }
        };
        let vstar = match form {
            Form::TypeA { vstar } | Form::TypeB { vstar, .. } => vstar,
        };
        trace.push(TraceRecord {
            size: n,
            anchored,
            vstar,
            choice,
        });
        trace.append(&mut children);
        order
    }

    // ---- forced root forms (public type A / type B evaluation) ---------

    pub(crate) fn forced_form(
        &mut self,
        partition: &SubtreePartition,
        anchored: bool,
        p: Option<usize>,
    ) -> Result<(u64, Vec<VertexId>, Vec<TraceRecord>), SolveError> {
        let set = self.full_set();
        let vstar = partition.center;
        let parts = self.split_at(&set, vstar);
        let sizes: Vec<usize> = parts.iter().map(|q| q.size).collect();
        let (cost, form) = match p {
            None => (
                self.eval_type_a(&set, &parts, vstar, anchored)?,
                Form::TypeA { vstar },
            ),
            Some(p) => {
                let k = sizes.len() - 1;
                if p < 1 || formulas::peeled_count(p, anchored) > k {
                    return Err(SolveError::POutOfRange { p });
                }
                (
                    self.eval_type_b(&set, &parts, &sizes, anchored, p)?,
                    Form::TypeB { vstar, p },
                )
            }
        };
        let mut trace = Vec::new();
        let anchor = anchored.then_some(vstar);
        let order = self.build_form(&set, anchor, form, &mut trace);
        Ok((cost, order, trace))
    }
}
