//! Graded element tables and the truncated growth series.

use crate::error::EngineError;
use crate::presentation::Presentation;
use crate::rewrite::{ClassTables, Element, Limits};
use crate::series::TruncatedSeries;

/// The complete list of elements of each degree `0..=d_max`, each stratum
/// sorted by canonical word.
pub struct GradedTable {
    pub presentation: Presentation,
    pub d_max: usize,
    pub strata: Vec<Vec<Element>>,
}

impl GradedTable {
    pub fn stratum(&self, d: usize) -> &[Element] {
        &self.strata[d]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.strata.iter().map(Vec::len).collect()
    }
}

/// Enumerates every element of degree `0..=d_max`, exactly. Strata are built
/// degree by degree from all words of that degree, not by extending
/// canonical forms, so no normal-form assumption is involved.
pub fn graded_elements(
    p: &Presentation,
    d_max: usize,
    limits: &Limits,
) -> Result<GradedTable, EngineError> {
    let tables = ClassTables::build(p, d_max, limits)?;
    graded_elements_from_tables(&tables, d_max)
}

pub fn graded_elements_from_tables(
    tables: &ClassTables,
    d_max: usize,
) -> Result<GradedTable, EngineError> {
    ensure_built(tables, d_max)?;
    let strata = (0..=d_max)
        .map(|d| {
            (0..tables.stratum_len(d) as u32)
                .map(|idx| tables.element(d, idx))
                .collect()
        })
        .collect();
    Ok(GradedTable {
        presentation: tables.presentation().clone(),
        d_max,
        strata,
    })
}

/// The truncated growth series: coefficient `c_d` counts the elements of
/// degree `d`; `c_0 = 1` for the identity.
pub fn growth_series(
    p: &Presentation,
    d_max: usize,
    limits: &Limits,
) -> Result<TruncatedSeries, EngineError> {
    let tables = ClassTables::build(p, d_max, limits)?;
    growth_series_from_tables(&tables, d_max)
}

pub fn growth_series_from_tables(
    tables: &ClassTables,
    d_max: usize,
) -> Result<TruncatedSeries, EngineError> {
    ensure_built(tables, d_max)?;
    let coefficients = (0..=d_max)
        .map(|d| i64::try_from(tables.stratum_len(d)).map_err(|_| EngineError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedSeries::new(coefficients))
}

fn ensure_built(tables: &ClassTables, d: usize) -> Result<(), EngineError> {
    if d > tables.d_max() {
        return Err(EngineError::DegreeNotBuilt {
            built: tables.d_max(),
            requested: d,
        });
    }
    Ok(())
}
