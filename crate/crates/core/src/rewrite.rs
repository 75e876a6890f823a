//! Equivalence classes of positive words under the congruence generated by
//! the relations.
//!
//! Homogeneity confines each class to words of a single length, so classes
//! are finite and computed by closure inside the set of words of that
//! length. Two independent routes are provided and cross-checked in tests:
//! a breadth-first closure from a single word, and a per-degree pass that
//! unions all `n^d` words of a degree through a disjoint-set structure over
//! interned word ids.

use rayon::prelude::*;

use crate::error::{EngineError, PresentationError};
use crate::presentation::{Presentation, Word};

/// Resource bounds. Operations refuse work past these limits with an error
/// rather than truncating silently.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Longest word any operation will touch.
    pub degree_cap: usize,
    /// Most interned words allowed in a single degree (`rank^degree`).
    pub word_budget: u64,
    /// Most stage subsets the tower enumeration may expand.
    pub tower_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree_cap: 16,
            word_budget: 1 << 24,
            tower_budget: 1_000_000,
        }
    }
}

/// An element of the monoid: an equivalence class of positive words, held by
/// its lexicographically minimal representative. Two elements are equal iff
/// their canonical words are letterwise equal; ordering is by degree, then
/// lexicographic on the canonical word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    canonical: Word,
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.canonical.letters()).cmp(&(other.degree(), other.canonical.letters()))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Element {
    pub(crate) fn from_canonical(canonical: Word) -> Self {
        Element { canonical }
    }

    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    pub fn degree(&self) -> usize {
        self.canonical.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_empty()
    }
}

fn check_word(p: &Presentation, w: &Word, limits: &Limits) -> Result<(), EngineError> {
    if w.degree() > limits.degree_cap {
        return Err(EngineError::DegreeCapExceeded {
            requested: w.degree(),
            cap: limits.degree_cap,
        });
    }
    for &id in w.letters() {
        if id as usize >= p.rank() {
            return Err(PresentationError::LetterOutOfRange {
                id: id as usize,
                rank: p.rank(),
            }
            .into());
        }
    }
    Ok(())
}

/// Words reachable from `w` by one substitution of a relation side, in
/// either direction, at any position.
fn neighbors(p: &Presentation, w: &[u8], out: &mut Vec<Vec<u8>>) {
    out.clear();
    for rel in p.relations() {
        for (from, to) in [
            (rel.lhs.letters(), rel.rhs.letters()),
            (rel.rhs.letters(), rel.lhs.letters()),
        ] {
            let len = from.len();
            if len > w.len() {
                continue;
            }
            for pos in 0..=(w.len() - len) {
                if &w[pos..pos + len] == from {
                    let mut next = w.to_vec();
                    next[pos..pos + len].copy_from_slice(to);
                    out.push(next);
                }
            }
        }
    }
}

/// The full equivalence class of `w`, as a sorted list of words. All members
/// have the same degree as `w`; `w` itself is a member.
pub fn equivalence_class(
    p: &Presentation,
    w: &Word,
    limits: &Limits,
) -> Result<Vec<Word>, EngineError> {
    check_word(p, w, limits)?;
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(w.letters().to_vec());
    queue.push_back(w.letters().to_vec());
    let mut scratch = Vec::new();
    while let Some(current) = queue.pop_front() {
        neighbors(p, &current, &mut scratch);
        for next in scratch.drain(..) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut members: Vec<Word> = seen.into_iter().map(Word::new).collect();
    members.sort();
    Ok(members)
}

/// The canonical representative (lexicographic minimum) of `w`'s class.
pub fn canonical(p: &Presentation, w: &Word, limits: &Limits) -> Result<Element, EngineError> {
    let members = equivalence_class(p, w, limits)?;
    Ok(Element::from_canonical(members[0].clone()))
}

/// Whether `u` and `v` represent the same element. Words of different
/// degrees are never equivalent.
pub fn are_equivalent(
    p: &Presentation,
    u: &Word,
    v: &Word,
    limits: &Limits,
) -> Result<bool, EngineError> {
    check_word(p, u, limits)?;
    check_word(p, v, limits)?;
    if u.degree() != v.degree() {
        return Ok(false);
    }
    if u == v {
        return Ok(true);
    }
    let target = v.letters().to_vec();
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(u.letters().to_vec());
    queue.push_back(u.letters().to_vec());
    let mut scratch = Vec::new();
    while let Some(current) = queue.pop_front() {
        neighbors(p, &current, &mut scratch);
        for next in scratch.drain(..) {
            if next == target {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Per-degree class data over interned words. Word ids are the base-`rank`
/// encodings of the letter sequences, so numeric order on ids is exactly
/// lexicographic order on words of that degree.
pub(crate) struct DegreeTable {
    /// word id -> index of its class in this stratum.
    pub class_of: Vec<u32>,
    /// class index -> minimal word id of the class; strictly increasing.
    pub canonical_ids: Vec<u64>,
    /// word ids grouped by class, ascending inside each group.
    pub members: Vec<u64>,
    /// class index -> start of its group in `members` (length = classes + 1).
    pub member_offsets: Vec<u32>,
}

impl DegreeTable {
    pub fn classes(&self) -> usize {
        self.canonical_ids.len()
    }

    pub fn members_of(&self, class: u32) -> &[u64] {
        let lo = self.member_offsets[class as usize] as usize;
        let hi = self.member_offsets[class as usize + 1] as usize;
        &self.members[lo..hi]
    }
}

/// Complete class tables for every degree `0..=d_max` of one presentation.
/// Immutable once built; building distinct degrees runs in parallel.
pub struct ClassTables {
    presentation: Presentation,
    limits: Limits,
    degrees: Vec<DegreeTable>,
}

impl ClassTables {
    pub fn build(p: &Presentation, d_max: usize, limits: &Limits) -> Result<Self, EngineError> {
        if d_max > limits.degree_cap {
            return Err(EngineError::DegreeCapExceeded {
                requested: d_max,
                cap: limits.degree_cap,
            });
        }
        // Fail fast on the widest degree before allocating anything.
        words_in_degree(p.rank(), d_max, limits)?;
        let degrees: Vec<DegreeTable> = (0..=d_max)
            .into_par_iter()
            .map(|d| build_degree(p, d, limits))
            .collect::<Result<_, _>>()?;
        Ok(ClassTables {
            presentation: p.clone(),
            limits: limits.clone(),
            degrees,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn d_max(&self) -> usize {
        self.degrees.len() - 1
    }

    pub(crate) fn table(&self, d: usize) -> &DegreeTable {
        &self.degrees[d]
    }

    /// Number of distinct elements of degree `d`.
    pub fn stratum_len(&self, d: usize) -> usize {
        self.degrees[d].classes()
    }

    /// The `idx`-th element of degree `d` in canonical (lexicographic) order.
    pub fn element(&self, d: usize, idx: u32) -> Element {
        let id = self.degrees[d].canonical_ids[idx as usize];
        Element::from_canonical(self.decode(id, d))
    }

    /// Locates the class of a word: `(degree, class index)`.
    pub fn class_of_word(&self, w: &Word) -> Result<(usize, u32), EngineError> {
        let d = w.degree();
        if d > self.d_max() {
            return Err(EngineError::DegreeNotBuilt {
                built: self.d_max(),
                requested: d,
            });
        }
        for &id in w.letters() {
            if id as usize >= self.presentation.rank() {
                return Err(PresentationError::LetterOutOfRange {
                    id: id as usize,
                    rank: self.presentation.rank(),
                }
                .into());
            }
        }
        let id = self.encode(w);
        Ok((d, self.degrees[d].class_of[id as usize]))
    }

    /// Canonical form of `w` via the bulk tables.
    pub fn canonical_of_word(&self, w: &Word) -> Result<Element, EngineError> {
        let (d, class) = self.class_of_word(w)?;
        Ok(self.element(d, class))
    }

    /// Resolves an `Element` against these tables, verifying that its word
    /// really is the canonical representative here.
    pub fn resolve(&self, e: &Element) -> Result<(usize, u32), EngineError> {
        let (d, class) = self.class_of_word(e.canonical())?;
        if self.degrees[d].canonical_ids[class as usize] != self.encode(e.canonical()) {
            return Err(EngineError::ForeignElement(
                self.presentation.format_word(e.canonical()),
            ));
        }
        Ok((d, class))
    }

    pub(crate) fn encode(&self, w: &Word) -> u64 {
        let n = self.presentation.rank() as u64;
        let mut id = 0u64;
        for &letter in w.letters() {
            id = id * n + letter as u64;
        }
        id
    }

    pub(crate) fn decode(&self, mut id: u64, degree: usize) -> Word {
        let n = self.presentation.rank() as u64;
        let mut letters = vec![0u8; degree];
        for slot in letters.iter_mut().rev() {
            *slot = (id % n) as u8;
            id /= n;
        }
        Word::new(letters)
    }

    /// `rank^d`, i.e. how many words the degree-`d` table holds.
    pub fn words_in_degree(&self, d: usize) -> u64 {
        self.degrees[d].class_of.len() as u64
    }
}

fn words_in_degree(rank: usize, d: usize, limits: &Limits) -> Result<u64, EngineError> {
    let hard_cap = (u32::MAX - 1) as u64;
    let budget = limits.word_budget.min(hard_cap);
    let words = (rank as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if words > budget {
        return Err(EngineError::WordBudgetExceeded {
            degree: d,
            words,
            budget,
        });
    }
    Ok(words)
}

fn build_degree(p: &Presentation, d: usize, limits: &Limits) -> Result<DegreeTable, EngineError> {
    let n = p.rank() as u64;
    let words = words_in_degree(p.rank(), d, limits)? as usize;

    // Base-n place values and per-relation id deltas for in-place
    // substitution arithmetic.
    let mut pow = vec![1i64; d + 1];
    for k in 1..=d {
        pow[k] = pow[k - 1] * n as i64;
    }
    struct Rule<'a> {
        from: &'a [u8],
        delta: i64,
    }
    let mut rules = Vec::new();
    for rel in p.relations() {
        for (from, to) in [
            (rel.lhs.letters(), rel.rhs.letters()),
            (rel.rhs.letters(), rel.lhs.letters()),
        ] {
            let len = from.len();
            if len > d {
                continue;
            }
            let mut delta = 0i64;
            for i in 0..len {
                delta += (to[i] as i64 - from[i] as i64) * pow[len - 1 - i];
            }
            rules.push(Rule { from, delta });
        }
    }

    let mut uf = UnionFind::new(words);
    let mut buf = vec![0u8; d];
    for id in 0..words as u64 {
        for rule in &rules {
            let len = rule.from.len();
            for pos in 0..=(d - len) {
                if &buf[pos..pos + len] == rule.from {
                    let other = id as i64 + rule.delta * pow[d - len - pos];
                    uf.union(id as u32, other as u32);
                }
            }
        }
        // Next word in lexicographic order.
        for slot in buf.iter_mut().rev() {
            if (*slot as u64) + 1 < n {
                *slot += 1;
                break;
            }
            *slot = 0;
        }
    }

    // First member met in ascending id order is the class minimum, so class
    // indices come out sorted by canonical word.
    let mut class_of = vec![0u32; words];
    let mut root_to_class = vec![u32::MAX; words];
    let mut canonical_ids = Vec::new();
    for id in 0..words as u32 {
        let root = uf.find(id);
        let slot = &mut root_to_class[root as usize];
        if *slot == u32::MAX {
            *slot = canonical_ids.len() as u32;
            canonical_ids.push(id as u64);
        }
        class_of[id as usize] = *slot;
    }
    drop(root_to_class);
    drop(uf);

    let classes = canonical_ids.len();
    let mut counts = vec![0u32; classes + 1];
    for &c in &class_of {
        counts[c as usize + 1] += 1;
    }
    for i in 0..classes {
        counts[i + 1] += counts[i];
    }
    let member_offsets = counts.clone();
    let mut cursor = counts;
    let mut members = vec![0u64; words];
    for id in 0..words as u64 {
        let c = class_of[id as usize] as usize;
        members[cursor[c] as usize] = id;
        cursor[c] += 1;
    }

    Ok(DegreeTable {
        class_of,
        canonical_ids,
        members,
        member_offsets,
    })
}
