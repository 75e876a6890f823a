//! Bounded falsification of left/right cancellativity.
//!
//! Left cancellativity by a single generator (`v x = v y` implies `x = y`)
//! propagates to arbitrary left factors, so the check verifies that left
//! multiplication by each generator is injective on each stratum. The right
//! side is the same check on the opposite presentation (all relation words
//! reversed), with witnesses mapped back to the original orientation.
//!
//! A clean run means "no counterexample up to the bound" and nothing more:
//! the tool falsifies, it does not prove cancellativity.

use crate::error::EngineError;
use crate::presentation::{Presentation, Word};
use crate::rewrite::{ClassTables, Element, Limits};

/// Which sides a check covered, or on which side a witness lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Both => "both",
        }
    }
}

/// A concrete cancellation failure: `generator * x = generator * y` (left)
/// or `x * generator = y * generator` (right) with `x != y`. All words are
/// canonical in the original presentation.
#[derive(Debug, Clone)]
pub struct CancellationWitness {
    pub side: Side,
    pub generator: Word,
    pub x: Element,
    pub y: Element,
    pub product: Element,
}

/// Result of a bounded cancellativity scan.
#[derive(Debug, Clone)]
pub struct CancellationReport {
    pub side: Side,
    pub d_max: usize,
    pub witness: Option<CancellationWitness>,
}

impl CancellationReport {
    /// True when no counterexample was found up to the bound. Says nothing
    /// about degrees beyond it.
    pub fn no_counterexample(&self) -> bool {
        self.witness.is_none()
    }
}

/// Finds the lowest-degree failure of injectivity of `x -> v*x` over all
/// generators `v` and strata `deg(x) <= d_max - 1`, if any.
fn left_witness(tables: &ClassTables, d_max: usize) -> Option<(u8, Element, Element, Element)> {
    let rank = tables.presentation().rank() as u64;
    for d in 0..d_max {
        let products = tables.table(d + 1);
        let sources = tables.table(d);
        let shift = rank.pow(d as u32);
        for v in 0..rank {
            let mut seen: Vec<u32> = vec![u32::MAX; products.classes()];
            for x_idx in 0..sources.classes() as u32 {
                let x_id = sources.canonical_ids[x_idx as usize];
                let product_id = v * shift + x_id;
                let product_class = products.class_of[product_id as usize];
                let slot = &mut seen[product_class as usize];
                if *slot == u32::MAX {
                    *slot = x_idx;
                } else {
                    return Some((
                        v as u8,
                        tables.element(d, *slot),
                        tables.element(d, x_idx),
                        tables.element(d + 1, product_class),
                    ));
                }
            }
        }
    }
    None
}

/// Checks left cancellativity up to the bound: for every generator `v` and
/// every element `x` of degree `< d_max`, the class of `v*x` determines `x`.
pub fn left_cancellative_up_to(
    p: &Presentation,
    d_max: usize,
    limits: &Limits,
) -> Result<CancellationReport, EngineError> {
    let tables = ClassTables::build(p, d_max, limits)?;
    let witness = left_witness(&tables, d_max).map(|(v, x, y, product)| CancellationWitness {
        side: Side::Left,
        generator: Word::new(vec![v]),
        x,
        y,
        product,
    });
    Ok(CancellationReport {
        side: Side::Left,
        d_max,
        witness,
    })
}

/// Checks right cancellativity up to the bound via the opposite
/// presentation; the witness, if any, is reported in the original
/// orientation (`x * v = y * v`).
pub fn right_cancellative_up_to(
    p: &Presentation,
    d_max: usize,
    limits: &Limits,
) -> Result<CancellationReport, EngineError> {
    let reversed = p.reversed();
    let rev_tables = ClassTables::build(&reversed, d_max, limits)?;
    let witness = match left_witness(&rev_tables, d_max) {
        None => None,
        Some((v, x, y, _)) => {
            // Map back: reverse each word and re-canonicalize in the
            // original presentation.
            let tables = ClassTables::build(p, d_max, limits)?;
            let x_orig = tables.canonical_of_word(&x.canonical().reversed())?;
            let y_orig = tables.canonical_of_word(&y.canonical().reversed())?;
            let generator = Word::new(vec![v]);
            let product = tables.canonical_of_word(&x_orig.canonical().concat(&generator))?;
            Some(CancellationWitness {
                side: Side::Right,
                generator,
                x: x_orig,
                y: y_orig,
                product,
            })
        }
    };
    Ok(CancellationReport {
        side: Side::Right,
        d_max,
        witness,
    })
}

/// Both sides; stops at the first failing side (left first).
pub fn cancellative_up_to(
    p: &Presentation,
    d_max: usize,
    limits: &Limits,
) -> Result<CancellationReport, EngineError> {
    let left = left_cancellative_up_to(p, d_max, limits)?;
    if left.witness.is_some() {
        return Ok(CancellationReport {
            side: Side::Both,
            ..left
        });
    }
    let right = right_cancellative_up_to(p, d_max, limits)?;
    Ok(CancellationReport {
        side: Side::Both,
        ..right
    })
}
