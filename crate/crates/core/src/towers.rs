//! Towers of minimal common multiples and the truncated skew growth series.
//!
//! A tower stacks stages `J_1, J_2, ..., J_n`: the ground is the set of
//! degree-1 elements, each stage is a finite subset (size >= 2) of the
//! minimal common multiples of the previous stage, and the tower's top set
//! is `mcm(J_n)`. The skew growth series is the signed count of top-set
//! elements over all towers.
//!
//! Truncation is exact: every element of `mcm(J)` strictly exceeds every
//! element of `J` in degree (a minimal multiple equal to one member of the
//! antichain `J` would be divisible by the other members, contradicting
//! minimality), so a tower contributing at degree `e` uses only stage
//! elements of degree `< e`. Enumerating stages below `d_max` therefore
//! misses no coefficient up to `d_max`.

use std::collections::HashMap;
use std::rc::Rc;

use crate::divisibility::{subsets_size_then_lex, DivisibilityCache, EKey};
use crate::error::EngineError;
use crate::presentation::Presentation;
use crate::rewrite::{ClassTables, Element, Limits};
use crate::series::TruncatedSeries;

/// A materialized tower: ground, stages, and the minimal-common-multiple set
/// of every stage truncated to `bound`.
#[derive(Debug, Clone)]
pub struct Tower {
    /// The degree-1 elements.
    pub ground: Vec<Element>,
    /// Stages `J_1 .. J_n`; each a subset (size >= 2) of the previous
    /// stage's mcm set.
    pub stages: Vec<Vec<Element>>,
    /// `mcm(J_k)` for each stage, exact up to degree `bound`.
    pub stage_mcms: Vec<Vec<Element>>,
    /// Degree bound the mcm sets are exact under; elements above it are not
    /// listed and their existence is not decided.
    pub bound: usize,
}

impl Tower {
    pub fn height(&self) -> usize {
        self.stages.len()
    }

    /// The top set `|T|`: the mcm set of the last stage, or the ground for
    /// the height-0 tower.
    pub fn top(&self) -> &[Element] {
        self.stage_mcms
            .last()
            .map(Vec::as_slice)
            .unwrap_or(&self.ground)
    }
}

/// Shared state for one tower workload: divisibility tables, mcm and
/// subtree memos, and the expansion budget.
struct TowerEngine<'t> {
    cache: DivisibilityCache<'t>,
    d_max: usize,
    budget: u64,
    expanded: u64,
    mcm_memo: HashMap<Vec<EKey>, Rc<Vec<EKey>>>,
    sum_memo: HashMap<Vec<EKey>, Rc<Vec<i64>>>,
    height_memo: HashMap<Vec<EKey>, usize>,
}

impl<'t> TowerEngine<'t> {
    fn new(tables: &'t ClassTables, d_max: usize) -> Self {
        TowerEngine {
            cache: DivisibilityCache::new(tables),
            d_max,
            budget: tables.limits().tower_budget,
            expanded: 0,
            mcm_memo: HashMap::new(),
            sum_memo: HashMap::new(),
            height_memo: HashMap::new(),
        }
    }

    fn charge(&mut self) -> Result<(), EngineError> {
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(EngineError::TowerBudgetExceeded {
                expanded: self.expanded,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Truncated mcm of a stage subset, memoized. Asserts the strict degree
    /// growth that the truncation-exactness argument rests on.
    fn mcm(&mut self, stage: &[EKey]) -> Result<Rc<Vec<EKey>>, EngineError> {
        self.charge()?;
        if let Some(hit) = self.mcm_memo.get(stage) {
            return Ok(hit.clone());
        }
        let result = Rc::new(self.cache.mcm(stage, self.d_max));
        let max_stage_degree = stage.iter().map(|&(d, _)| d).max().unwrap_or(0);
        assert!(
            result.iter().all(|&(d, _)| d > max_stage_degree),
            "mcm element does not strictly exceed its stage in degree"
        );
        self.mcm_memo.insert(stage.to_vec(), result.clone());
        Ok(result)
    }

    /// Stage elements that can still produce mcm elements within the bound.
    fn usable(&self, pool: &[EKey]) -> Vec<EKey> {
        pool.iter()
            .copied()
            .filter(|&(d, _)| d < self.d_max)
            .collect()
    }

    /// Signed, degree-indexed sum over all stage chains rooted at `pool`:
    /// for each subset `J` (size >= 2) it adds `(-1)^(#J - 1)` times the
    /// degree histogram of `mcm(J)` plus the same sum one level deeper.
    fn chain_sum(&mut self, pool: &[EKey]) -> Result<Rc<Vec<i64>>, EngineError> {
        if let Some(hit) = self.sum_memo.get(pool) {
            return Ok(hit.clone());
        }
        let mut out = vec![0i64; self.d_max + 1];
        let usable = self.usable(pool);
        for stage in subsets_size_then_lex(&usable, 2) {
            let sign: i64 = if stage.len().is_multiple_of(2) { -1 } else { 1 };
            let tops = self.mcm(&stage)?;
            for &(d, _) in tops.iter() {
                out[d] = out[d].checked_add(sign).ok_or(EngineError::Overflow)?;
            }
            let deeper = self.chain_sum(&tops)?;
            for (slot, &value) in out.iter_mut().zip(deeper.iter()) {
                let signed = value.checked_mul(sign).ok_or(EngineError::Overflow)?;
                *slot = slot.checked_add(signed).ok_or(EngineError::Overflow)?;
            }
        }
        let out = Rc::new(out);
        self.sum_memo.insert(pool.to_vec(), out.clone());
        Ok(out)
    }

    /// Longest realizable chain of stages starting from `pool`; a stage
    /// counts only when its mcm set is nonempty within the bound.
    fn chain_height(&mut self, pool: &[EKey]) -> Result<usize, EngineError> {
        if let Some(&hit) = self.height_memo.get(pool) {
            return Ok(hit);
        }
        let mut best = 0;
        let usable = self.usable(pool);
        for stage in subsets_size_then_lex(&usable, 2) {
            let tops = self.mcm(&stage)?;
            if !tops.is_empty() {
                best = best.max(1 + self.chain_height(&tops)?);
            }
        }
        self.height_memo.insert(pool.to_vec(), best);
        Ok(best)
    }
}

fn ground_keys(tables: &ClassTables) -> Vec<EKey> {
    (0..tables.stratum_len(1) as u32).map(|i| (1, i)).collect()
}

/// Stage subsets and their mcm sets for one chain, interned.
type StageChain = (Vec<Vec<EKey>>, Vec<Vec<EKey>>);

fn ensure_bound(tables: &ClassTables, d_max: usize) -> Result<(), EngineError> {
    if d_max > tables.d_max() {
        return Err(EngineError::DegreeNotBuilt {
            built: tables.d_max(),
            requested: d_max,
        });
    }
    Ok(())
}

/// The truncated skew growth series via tower enumeration: coefficient 1 at
/// degree 0, minus one per degree-1 element, plus the signed top-set counts
/// of every tower of height >= 1. Exact through `d_max`.
pub fn skew_growth_from_tables(
    tables: &ClassTables,
    d_max: usize,
) -> Result<TruncatedSeries, EngineError> {
    ensure_bound(tables, d_max)?;
    let mut coefficients = vec![0i64; d_max + 1];
    coefficients[0] = 1;
    if d_max == 0 {
        return Ok(TruncatedSeries::new(coefficients));
    }
    // The height-0 tower: its top set is the ground itself.
    let ground = ground_keys(tables);
    coefficients[1] = -(ground.len() as i64);
    let mut engine = TowerEngine::new(tables, d_max);
    let chains = engine.chain_sum(&ground)?;
    for (slot, &value) in coefficients.iter_mut().zip(chains.iter()) {
        *slot = slot.checked_sub(value).ok_or(EngineError::Overflow)?;
    }
    Ok(TruncatedSeries::new(coefficients))
}

/// Convenience wrapper building the class tables first.
pub fn skew_growth(
    p: &Presentation,
    d_max: usize,
    limits: &Limits,
) -> Result<TruncatedSeries, EngineError> {
    let tables = ClassTables::build(p, d_max, limits)?;
    skew_growth_from_tables(&tables, d_max)
}

/// Signed, degree-indexed contribution to the skew growth series of exactly
/// the towers whose first stage is `root`. Summing this over all admissible
/// roots and adding `1 - #I_0 t` recovers the full series.
pub fn rooted_contribution(
    tables: &ClassTables,
    root: &[Element],
    d_max: usize,
) -> Result<Vec<i64>, EngineError> {
    ensure_bound(tables, d_max)?;
    assert!(root.len() >= 2, "a tower stage needs at least two elements");
    let keys = root
        .iter()
        .map(|e| tables.resolve(e))
        .collect::<Result<Vec<_>, _>>()?;
    let mut engine = TowerEngine::new(tables, d_max);
    let tops = engine.mcm(&keys)?;
    let mut out = vec![0i64; d_max + 1];
    for &(d, _) in tops.iter() {
        out[d] += 1;
    }
    let deeper = engine.chain_sum(&tops)?;
    for (slot, &value) in out.iter_mut().zip(deeper.iter()) {
        *slot = slot.checked_add(value).ok_or(EngineError::Overflow)?;
    }
    // (-1)^(#J_1 - 1) from the first stage and the global -1 from the sign
    // convention combine to (-1)^(#J_1).
    let sign: i64 = if root.len().is_multiple_of(2) { 1 } else { -1 };
    for slot in out.iter_mut() {
        *slot = slot.checked_mul(sign).ok_or(EngineError::Overflow)?;
    }
    Ok(out)
}

/// Every tower whose top set contains an element of degree `<= d_max`,
/// including the unique height-0 tower, sorted by height and then by stage
/// contents. Stage elements always have degree `< d_max`: anything larger
/// could not realize a top element within the bound.
pub fn enumerate_towers(tables: &ClassTables, d_max: usize) -> Result<Vec<Tower>, EngineError> {
    ensure_bound(tables, d_max)?;
    if d_max == 0 {
        // No element of positive degree fits, so not even the ground
        // qualifies as a top set.
        return Ok(Vec::new());
    }
    let ground = ground_keys(tables);
    let materialize = |keys: &[EKey]| -> Vec<Element> {
        keys.iter().map(|&(d, i)| tables.element(d, i)).collect()
    };
    let ground_elements = materialize(&ground);
    let mut engine = TowerEngine::new(tables, d_max);
    let mut found: Vec<StageChain> = Vec::new();
    let mut stack_stages: Vec<Vec<EKey>> = Vec::new();
    let mut stack_mcms: Vec<Vec<EKey>> = Vec::new();
    dfs(
        &mut engine,
        &ground,
        &mut stack_stages,
        &mut stack_mcms,
        &mut found,
    )?;
    found.sort();
    let mut towers = vec![Tower {
        ground: ground_elements.clone(),
        stages: Vec::new(),
        stage_mcms: Vec::new(),
        bound: d_max,
    }];
    towers.extend(found.into_iter().map(|(stages, mcms)| Tower {
        ground: ground_elements.clone(),
        stages: stages.iter().map(|s| materialize(s)).collect(),
        stage_mcms: mcms.iter().map(|s| materialize(s)).collect(),
        bound: d_max,
    }));
    towers.sort_by(|a, b| (a.height(), &a.stages).cmp(&(b.height(), &b.stages)));
    Ok(towers)
}

fn dfs(
    engine: &mut TowerEngine<'_>,
    pool: &[EKey],
    stages: &mut Vec<Vec<EKey>>,
    mcms: &mut Vec<Vec<EKey>>,
    found: &mut Vec<StageChain>,
) -> Result<(), EngineError> {
    let usable = engine.usable(pool);
    for stage in subsets_size_then_lex(&usable, 2) {
        let tops = engine.mcm(&stage)?;
        if tops.is_empty() {
            // Nothing realized within the bound: whether this is a tower at
            // all is undecidable here, and it contributes nothing.
            continue;
        }
        stages.push(stage);
        mcms.push(tops.to_vec());
        found.push((stages.clone(), mcms.clone()));
        dfs(engine, &tops, stages, mcms, found)?;
        stages.pop();
        mcms.pop();
    }
    Ok(())
}

/// The maximum tower height realized within the bound: every stage uses
/// in-bound elements and every stage's mcm set is nonempty within the bound.
/// A lower bound for the monoid's true maximal height, never a proof of it.
pub fn observed_height(tables: &ClassTables, d_max: usize) -> Result<usize, EngineError> {
    ensure_bound(tables, d_max)?;
    if d_max == 0 {
        return Ok(0);
    }
    let ground = ground_keys(tables);
    let mut engine = TowerEngine::new(tables, d_max);
    engine.chain_height(&ground)
}
