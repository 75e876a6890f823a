//! Left divisibility and the common-multiple operators.
//!
//! `u` left-divides `v` when `v = u*x` for some element `x`; concretely, when
//! some word in `v`'s class carries a prefix from `u`'s class. Everything
//! here is exact under degree truncation: any divisor of an element of
//! degree `<= d` itself has degree `<= d`, so a truncated table never
//! misclassifies minimality of the elements it does return.

use std::collections::HashMap;

use crate::error::EngineError;
use crate::presentation::Presentation;
use crate::rewrite::{ClassTables, Element, Limits};

/// Interned element handle: `(degree, index in that stratum)`. Ordering
/// agrees with `Element` ordering.
pub(crate) type EKey = (usize, u32);

struct BitMatrix {
    cols: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            cols: words_per_row,
            bits: vec![0u64; rows * words_per_row],
        }
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.cols + col / 64] |= 1u64 << (col % 64);
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.cols + col / 64] >> (col % 64) & 1 == 1
    }
}

/// Lazy per-degree-pair divisibility tables over one `ClassTables`.
///
/// The matrix for `(d, d')` answers "does the degree-`d'` element divide the
/// degree-`d` element" and is built by a single pass over all words of
/// degree `d`, marking the class of each prefix of length `d'`.
pub(crate) struct DivisibilityCache<'t> {
    tables: &'t ClassTables,
    mats: HashMap<(usize, usize), BitMatrix>,
}

impl<'t> DivisibilityCache<'t> {
    pub fn new(tables: &'t ClassTables) -> Self {
        DivisibilityCache {
            tables,
            mats: HashMap::new(),
        }
    }

    fn matrix(&mut self, dividend: usize, divisor: usize) -> &BitMatrix {
        debug_assert!(0 < divisor && divisor < dividend);
        self.mats.entry((dividend, divisor)).or_insert_with(|| {
            let t = self.tables.table(dividend);
            let shift = (self.tables.presentation().rank() as u64).pow((dividend - divisor) as u32);
            let prefix_classes = &self.tables.table(divisor).class_of;
            let mut m = BitMatrix::new(
                self.tables.stratum_len(dividend),
                self.tables.stratum_len(divisor),
            );
            for (id, &class) in t.class_of.iter().enumerate() {
                let prefix = (id as u64 / shift) as usize;
                m.set(class as usize, prefix_classes[prefix] as usize);
            }
            m
        })
    }

    /// Whether the element `u` left-divides the element `v`.
    pub fn divides(&mut self, u: EKey, v: EKey) -> bool {
        let ((du, iu), (dv, iv)) = (u, v);
        if du > dv {
            false
        } else if du == dv {
            iu == iv
        } else if du == 0 {
            true
        } else {
            self.matrix(dv, du).get(iv as usize, iu as usize)
        }
    }

    /// All elements of degree `<= d_max` divisible by every member of `set`,
    /// ascending.
    pub fn common_multiples(&mut self, set: &[EKey], d_max: usize) -> Vec<EKey> {
        let mut out = Vec::new();
        for d in 0..=d_max {
            for idx in 0..self.tables.stratum_len(d) as u32 {
                if set.iter().all(|&j| self.divides(j, (d, idx))) {
                    out.push((d, idx));
                }
            }
        }
        out
    }

    /// Minimal common multiples of `set` within the bound: common multiples
    /// not properly divisible by another common multiple. Exact for every
    /// returned element.
    pub fn mcm(&mut self, set: &[EKey], d_max: usize) -> Vec<EKey> {
        let candidates = self.common_multiples(set, d_max);
        let mut minimals: Vec<EKey> = Vec::new();
        for cand in candidates {
            // Divisors come before the candidate in the ascending scan, and
            // any proper common-multiple divisor is itself divisible by some
            // already-accepted minimal, so checking minimals suffices.
            if !minimals.iter().any(|&m| self.divides(m, cand)) {
                minimals.push(cand);
            }
        }
        minimals
    }
}

fn resolve_set(tables: &ClassTables, set: &[Element]) -> Result<Vec<EKey>, EngineError> {
    set.iter().map(|e| tables.resolve(e)).collect()
}

fn materialize(tables: &ClassTables, keys: &[EKey]) -> Vec<Element> {
    keys.iter().map(|&(d, i)| tables.element(d, i)).collect()
}

/// Whether `u` left-divides `v`, i.e. `v = u*x` for some element `x`.
pub fn left_divides_in(
    tables: &ClassTables,
    u: &Element,
    v: &Element,
) -> Result<bool, EngineError> {
    let (du, iu) = tables.resolve(u)?;
    let (dv, iv) = tables.resolve(v)?;
    if du > dv {
        return Ok(false);
    }
    if du == dv {
        return Ok(iu == iv);
    }
    if du == 0 {
        return Ok(true);
    }
    // Scan the dividend's class for a prefix lying in u's class.
    let shift = (tables.presentation().rank() as u64).pow((dv - du) as u32);
    let prefix_classes = &tables.table(du).class_of;
    Ok(tables
        .table(dv)
        .members_of(iv)
        .iter()
        .any(|&id| prefix_classes[(id / shift) as usize] == iu))
}

/// Convenience wrapper building tables up to `deg(v)`.
pub fn left_divides(
    p: &Presentation,
    u: &Element,
    v: &Element,
    limits: &Limits,
) -> Result<bool, EngineError> {
    let tables = ClassTables::build(p, v.degree().max(u.degree()), limits)?;
    left_divides_in(&tables, u, v)
}

/// All elements of degree `<= d_max` left-divisible by every element of the
/// nonempty `set`, ascending by (degree, canonical word).
pub fn common_multiples(
    tables: &ClassTables,
    set: &[Element],
    d_max: usize,
) -> Result<Vec<Element>, EngineError> {
    ensure_bound(tables, d_max)?;
    let keys = resolve_set(tables, set)?;
    let mut cache = DivisibilityCache::new(tables);
    Ok(materialize(tables, &cache.common_multiples(&keys, d_max)))
}

/// Minimal common multiples of `set` within `d_max`, ascending. The returned
/// elements are exactly the members of the untruncated mcm set with degree
/// `<= d_max`.
pub fn mcm(
    tables: &ClassTables,
    set: &[Element],
    d_max: usize,
) -> Result<Vec<Element>, EngineError> {
    ensure_bound(tables, d_max)?;
    let keys = resolve_set(tables, set)?;
    let mut cache = DivisibilityCache::new(tables);
    Ok(materialize(tables, &cache.mcm(&keys, d_max)))
}

/// All pairs `(x, y)` with `u*x = v*y` and `deg(u*x) <= d_max`, as canonical
/// elements sorted by `(x, y)`.
pub fn right_complements(
    tables: &ClassTables,
    u: &Element,
    v: &Element,
    d_max: usize,
) -> Result<Vec<(Element, Element)>, EngineError> {
    ensure_bound(tables, d_max)?;
    tables.resolve(u)?;
    tables.resolve(v)?;
    let (du, dv) = (u.degree(), v.degree());
    let mut out = Vec::new();
    for total in du.max(dv)..=d_max {
        // Group left products by class, then match right products.
        let mut by_product: HashMap<u32, Vec<u32>> = HashMap::new();
        for xi in 0..tables.stratum_len(total - du) as u32 {
            let x = tables.element(total - du, xi);
            let product = u.canonical().concat(x.canonical());
            let (_, class) = tables.class_of_word(&product)?;
            by_product.entry(class).or_default().push(xi);
        }
        for yi in 0..tables.stratum_len(total - dv) as u32 {
            let y = tables.element(total - dv, yi);
            let product = v.canonical().concat(y.canonical());
            let (_, class) = tables.class_of_word(&product)?;
            if let Some(xs) = by_product.get(&class) {
                for &xi in xs {
                    out.push((
                        tables.element(total - du, xi),
                        tables.element(total - dv, yi),
                    ));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionLVerdict {
    /// Every checked subset had at most one minimal common multiple within
    /// the bound. Not a proof: larger degrees could still reveal a second
    /// minimal.
    NoViolationFound,
    /// Some subset of the degree-1 elements has two or more minimal common
    /// multiples; those witnesses are definitive.
    Violated,
}

/// A subset of the generators together with its several minimal common
/// multiples.
#[derive(Debug, Clone)]
pub struct ConditionLWitness {
    pub subset: Vec<Element>,
    pub minimals: Vec<Element>,
}

/// Classification of every subset of the degree-1 elements by its minimal
/// common multiples within the bound.
#[derive(Debug, Clone)]
pub struct ConditionLReport {
    pub d_max: usize,
    pub verdict: ConditionLVerdict,
    pub witnesses: Vec<ConditionLWitness>,
    /// Subsets with no common multiple found within the bound; nonexistence
    /// beyond the bound is not claimed.
    pub undetermined: Vec<Vec<Element>>,
}

/// Checks every subset (size >= 2) of the degree-1 elements for multiple
/// minimal common multiples within `d_max`.
pub fn condition_l_report(
    tables: &ClassTables,
    d_max: usize,
) -> Result<ConditionLReport, EngineError> {
    ensure_bound(tables, d_max)?;
    let ground: Vec<EKey> = (0..tables.stratum_len(1) as u32).map(|i| (1, i)).collect();
    let mut cache = DivisibilityCache::new(tables);
    let mut witnesses = Vec::new();
    let mut undetermined = Vec::new();
    for subset in subsets_size_then_lex(&ground, 2) {
        let multiples = cache.common_multiples(&subset, d_max);
        if multiples.is_empty() {
            undetermined.push(materialize(tables, &subset));
            continue;
        }
        let minimals = cache.mcm(&subset, d_max);
        if minimals.len() >= 2 {
            witnesses.push(ConditionLWitness {
                subset: materialize(tables, &subset),
                minimals: materialize(tables, &minimals),
            });
        }
    }
    Ok(ConditionLReport {
        d_max,
        verdict: if witnesses.is_empty() {
            ConditionLVerdict::NoViolationFound
        } else {
            ConditionLVerdict::Violated
        },
        witnesses,
        undetermined,
    })
}

/// All subsets of `pool` with at least `min_size` elements, ordered by size
/// and then lexicographically by member positions.
pub(crate) fn subsets_size_then_lex<T: Copy>(pool: &[T], min_size: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for size in min_size.max(1)..=pool.len() {
        push_combinations(pool, size, &mut out);
    }
    out
}

fn push_combinations<T: Copy>(pool: &[T], size: usize, out: &mut Vec<Vec<T>>) {
    let n = pool.len();
    if size > n || size == 0 {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        let mut i = size as isize - 1;
        while i >= 0 && idx[i as usize] == i as usize + n - size {
            i -= 1;
        }
        if i < 0 {
            return;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn ensure_bound(tables: &ClassTables, d_max: usize) -> Result<(), EngineError> {
    if d_max > tables.d_max() {
        return Err(EngineError::DegreeNotBuilt {
            built: tables.d_max(),
            requested: d_max,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(spec: &str, d_max: usize) -> (Presentation, ClassTables) {
        let p = Presentation::preset_spec(spec).unwrap();
        let tables = ClassTables::build(&p, d_max, &Limits::default()).unwrap();
        (p, tables)
    }

    fn elem(tables: &ClassTables, text: &str) -> Element {
        let w = tables.presentation().parse_word(text).unwrap();
        tables.canonical_of_word(&w).unwrap()
    }

    fn fmt(p: &Presentation, e: &Element) -> String {
        p.format_word(e.canonical())
    }

    #[test]
    fn b_divides_class_of_cbb() {
        let (_, t) = setup("bii", 3);
        let b = elem(&t, "b");
        let cbb = elem(&t, "cbb");
        assert!(left_divides_in(&t, &b, &cbb).unwrap());
    }

    #[test]
    fn identity_divides_everything() {
        let (_, t) = setup("bii", 4);
        let one = elem(&t, "1");
        for d in 0..=4usize {
            for i in 0..t.stratum_len(d) as u32 {
                assert!(left_divides_in(&t, &one, &t.element(d, i)).unwrap());
            }
        }
    }

    #[test]
    fn distinct_generators_do_not_divide() {
        let (_, t) = setup("bii", 2);
        let a = elem(&t, "a");
        let b = elem(&t, "b");
        assert!(!left_divides_in(&t, &a, &b).unwrap());
    }

    #[test]
    fn divisibility_is_a_partial_order_up_to_degree_5() {
        for spec in ["bii", "abel:2", "appendix2"] {
            let (_, t) = setup(spec, 5);
            let mut cache = DivisibilityCache::new(&t);
            let keys: Vec<EKey> = (0..=5usize)
                .flat_map(|d| (0..t.stratum_len(d) as u32).map(move |i| (d, i)))
                .collect();
            for &u in &keys {
                assert!(cache.divides(u, u), "{spec}: reflexivity");
            }
            for &u in &keys {
                for &v in &keys {
                    if cache.divides(u, v) && cache.divides(v, u) {
                        assert_eq!(u, v, "{spec}: antisymmetry");
                    }
                    for &w in &keys {
                        if cache.divides(u, v) && cache.divides(v, w) {
                            assert!(cache.divides(u, w), "{spec}: transitivity");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn divisibility_is_compatible_with_right_multiplication() {
        let (_, t) = setup("bii", 5);
        let mut cache = DivisibilityCache::new(&t);
        for du in 0..=3usize {
            for iu in 0..t.stratum_len(du) as u32 {
                let u = t.element(du, iu);
                for dv in du..=3usize {
                    for iv in 0..t.stratum_len(dv) as u32 {
                        let v = t.element(dv, iv);
                        if !cache.divides((du, iu), (dv, iv)) {
                            continue;
                        }
                        for dw in 0..=(5 - dv) {
                            for iw in 0..t.stratum_len(dw) as u32 {
                                let w = t.element(dw, iw);
                                let vw = t
                                    .class_of_word(&v.canonical().concat(w.canonical()))
                                    .unwrap();
                                assert!(
                                    cache.divides((du, iu), vw),
                                    "u={:?} v={:?} w={:?}",
                                    u,
                                    v,
                                    w
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn common_multiples_of_a_and_c_in_bii() {
        let (p, t) = setup("bii", 2);
        let set = vec![elem(&t, "a"), elem(&t, "c")];
        let cm = common_multiples(&t, &set, 2).unwrap();
        assert_eq!(
            cm.iter().map(|e| fmt(&p, e)).collect::<Vec<_>>(),
            vec!["ac"]
        );
    }

    #[test]
    fn common_multiples_of_identity_is_everything() {
        let (_, t) = setup("bii", 3);
        let set = vec![elem(&t, "1")];
        let cm = common_multiples(&t, &set, 3).unwrap();
        let total: usize = (0..=3).map(|d| t.stratum_len(d)).sum();
        assert_eq!(cm.len(), total);
    }

    #[test]
    fn free_monoid_generators_share_no_multiple() {
        let (_, t) = setup("free:2", 5);
        let set = vec![elem(&t, "a"), elem(&t, "b")];
        assert!(common_multiples(&t, &set, 5).unwrap().is_empty());
    }

    #[test]
    fn mcm_of_b_c_in_bii_is_the_cb_ck_b_family() {
        let (p, t) = setup("bii", 6);
        let set = vec![elem(&t, "b"), elem(&t, "c")];
        let minimals = mcm(&t, &set, 6).unwrap();
        let expected: Vec<Element> = (0..=3)
            .map(|k| elem(&t, &format!("cb{}b", "c".repeat(k))))
            .collect();
        assert_eq!(minimals, expected);
        assert_eq!(
            minimals.iter().map(Element::degree).collect::<Vec<_>>(),
            vec![3, 4, 5, 6]
        );
        let _ = p;
    }

    #[test]
    fn mcm_of_b_c_in_gn3() {
        // mcm({b, c}) = { cb * c^k * b^(n-1) } for gn, here n = 3.
        let (_, t) = setup("gn:3", 7);
        let set = vec![elem(&t, "b"), elem(&t, "c")];
        let minimals = mcm(&t, &set, 7).unwrap();
        let expected: Vec<Element> = (0..=3)
            .map(|k| elem(&t, &format!("cb{}bb", "c".repeat(k))))
            .collect();
        assert_eq!(minimals, expected);
    }

    #[test]
    fn mcm_of_b_c_in_hn1() {
        // mcm({b, c}) = { b * c^k * (ab)^n * ba } for hn, here n = 1.
        let (_, t) = setup("hn:1", 7);
        let set = vec![elem(&t, "b"), elem(&t, "c")];
        let minimals = mcm(&t, &set, 7).unwrap();
        let expected: Vec<Element> = (0..=2)
            .map(|k| elem(&t, &format!("b{}abba", "c".repeat(k))))
            .collect();
        assert_eq!(minimals, expected);
        assert_eq!(
            minimals.iter().map(Element::degree).collect::<Vec<_>>(),
            vec![5, 6, 7]
        );
    }

    #[test]
    fn mcm_of_singleton_is_the_element() {
        let (_, t) = setup("bii", 4);
        let u = elem(&t, "ab");
        assert_eq!(mcm(&t, std::slice::from_ref(&u), 4).unwrap(), vec![u]);
    }

    #[test]
    fn mcm_members_are_mutually_incomparable_common_multiples() {
        let (_, t) = setup("bii", 7);
        let set = vec![elem(&t, "b"), elem(&t, "c")];
        let minimals = mcm(&t, &set, 7).unwrap();
        for m in &minimals {
            for j in &set {
                assert!(left_divides_in(&t, j, m).unwrap());
            }
        }
        for x in &minimals {
            for y in &minimals {
                if x != y {
                    assert!(!left_divides_in(&t, x, y).unwrap());
                }
            }
        }
    }

    /// mcm({c^k1 b, ..., c^km b}) = { c^km b * c^k b | k >= 0 } in bii.
    #[test]
    fn bii_tail_family_mcm_structure() {
        let (_, t) = setup("bii", 7);
        for kappas in [vec![0usize, 1], vec![0, 2], vec![1, 3], vec![0, 1, 2]] {
            let set: Vec<Element> = kappas
                .iter()
                .map(|&k| elem(&t, &format!("{}b", "c".repeat(k))))
                .collect();
            let top = *kappas.last().unwrap();
            let minimals = mcm(&t, &set, 7).unwrap();
            let expected: Vec<Element> = (0..)
                .map(|k| format!("{}b{}b", "c".repeat(top), "c".repeat(k)))
                .take_while(|w| w.len() <= 7)
                .map(|w| elem(&t, &w))
                .collect();
            assert_eq!(minimals, expected, "kappas {kappas:?}");
        }
    }

    /// mcm({c^k1 b^(n-1), ..., c^km b^(n-1)}) = { c^km b^n } in gn.
    #[test]
    fn gn_tail_family_mcm_is_singleton() {
        let (_, t) = setup("gn:3", 7);
        for kappas in [vec![0usize, 1], vec![0, 2], vec![1, 2]] {
            let set: Vec<Element> = kappas
                .iter()
                .map(|&k| elem(&t, &format!("{}bb", "c".repeat(k))))
                .collect();
            let top = *kappas.last().unwrap();
            let minimals = mcm(&t, &set, 7).unwrap();
            let expected = vec![elem(&t, &format!("{}bbb", "c".repeat(top)))];
            assert_eq!(minimals, expected, "kappas {kappas:?}");
        }
    }

    /// mcm({c^k1 b(ab)^(n-1)ba, ...}) = { c^km b(ab)^(n-1)bacb } in hn.
    #[test]
    fn hn_tail_family_mcm_is_singleton() {
        let (_, t) = setup("hn:1", 8);
        for kappas in [vec![0usize, 1], vec![0, 2]] {
            let set: Vec<Element> = kappas
                .iter()
                .map(|&k| elem(&t, &format!("{}bba", "c".repeat(k))))
                .collect();
            let top = *kappas.last().unwrap();
            let minimals = mcm(&t, &set, 8).unwrap();
            let expected = vec![elem(&t, &format!("{}bbacb", "c".repeat(top)))];
            assert_eq!(minimals, expected, "kappas {kappas:?}");
        }
    }

    #[test]
    fn right_complements_of_a_b_in_bii() {
        let (_, t) = setup("bii", 3);
        let a = elem(&t, "a");
        let b = elem(&t, "b");
        let pairs = right_complements(&t, &a, &b, 3).unwrap();
        // Degree-2 products give (b, c); degree-3 products give (b z, c z).
        let mut expected = vec![(elem(&t, "b"), elem(&t, "c"))];
        for z in ["a", "b", "c"] {
            expected.push((elem(&t, &format!("b{z}")), elem(&t, &format!("c{z}"))));
        }
        expected.sort();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn right_complements_in_free_monoid_is_empty() {
        let (_, t) = setup("free:2", 4);
        let a = elem(&t, "a");
        let b = elem(&t, "b");
        assert!(right_complements(&t, &a, &b, 4).unwrap().is_empty());
    }

    #[test]
    fn right_complements_transpose() {
        let (_, t) = setup("bii", 5);
        let b = elem(&t, "b");
        let c = elem(&t, "c");
        let forward = right_complements(&t, &b, &c, 5).unwrap();
        let mut backward: Vec<(Element, Element)> = right_complements(&t, &c, &b, 5)
            .unwrap()
            .into_iter()
            .map(|(x, y)| (y, x))
            .collect();
        backward.sort();
        assert_eq!(forward, backward);
    }

    #[test]
    fn condition_l_violated_for_bii() {
        let (p, t) = setup("bii", 4);
        let report = condition_l_report(&t, 4).unwrap();
        assert_eq!(report.verdict, ConditionLVerdict::Violated);
        let bc = report
            .witnesses
            .iter()
            .find(|w| {
                w.subset.len() == 2 && fmt(&p, &w.subset[0]) == "b" && fmt(&p, &w.subset[1]) == "c"
            })
            .expect("subset {b, c} should witness the violation");
        assert_eq!(
            bc.minimals.iter().map(Element::degree).collect::<Vec<_>>(),
            vec![3, 4]
        );
    }

    #[test]
    fn condition_l_not_violated_for_free_3() {
        let (_, t) = setup("free:3", 5);
        let report = condition_l_report(&t, 5).unwrap();
        assert_eq!(report.verdict, ConditionLVerdict::NoViolationFound);
        assert!(report.witnesses.is_empty());
        // Every subset of two or more generators has no common multiple.
        assert_eq!(report.undetermined.len(), 4);
    }

    #[test]
    fn condition_l_violated_for_abel_3() {
        let (p, t) = setup("abel:3", 3);
        let report = condition_l_report(&t, 3).unwrap();
        assert_eq!(report.verdict, ConditionLVerdict::Violated);
        let w = &report.witnesses[0];
        assert_eq!(
            w.minimals.iter().map(|e| fmt(&p, e)).collect::<Vec<_>>(),
            vec!["ab", "aaa"]
        );
    }

    #[test]
    fn subsets_enumerate_in_size_then_lex_order() {
        let subsets = subsets_size_then_lex(&[1, 2, 3], 2);
        assert_eq!(
            subsets,
            vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]]
        );
    }

    #[test]
    fn foreign_elements_are_rejected() {
        // An element whose word is not canonical here must be refused: it
        // came from a different presentation's tables.
        let (_, t) = setup("bii", 3);
        let b = elem(&t, "b");
        let cbb_alias = Element::from_canonical(t.presentation().parse_word("cbb").unwrap());
        assert!(matches!(
            left_divides_in(&t, &b, &cbb_alias),
            Err(EngineError::ForeignElement(_))
        ));
    }
}
