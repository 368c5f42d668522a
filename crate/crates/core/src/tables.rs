//! Embedded printed reference tables and the diff machinery that compares
//! them, cell by cell, against values recomputed from first principles.
//!
//! The printed constants are golden data kept deliberately separate from the
//! formula code: a diff between the two surfaces transcription errors on
//! either side. Where they disagree, the formulas win and the printed cell
//! is flagged (never silently adopted).

use crate::arith::FactoredInteger;
use crate::error::Result;
use crate::graph;
use crate::unitary::{self, Spectrum, UnitaryParams};

/// A printed row for U_3(q): order factorization, μ-set, degree pattern.
pub struct PrintedU3Row {
    pub p: u64,
    pub k: u32,
    pub order: &'static [(u64, u32)],
    pub mu: &'static [&'static [(u64, u32)]],
    pub degrees: &'static [u32],
}

/// Printed ascending degree-sequence data: d_1, d_{d_1+2}, |π(S)| − 3.
pub struct PrintedSeqRow {
    pub p: u64,
    pub k: u32,
    pub ascending: &'static [u32],
    pub d1: u32,
    pub d_d1p2: u32,
    pub pi_minus_3: u32,
}

/// A printed row for U_4(q): order factorization and degree pattern.
pub struct PrintedU4Row {
    pub p: u64,
    pub k: u32,
    pub order: &'static [(u64, u32)],
    pub degrees: &'static [u32],
}

/// A printed kernel π-set row.
pub struct PrintedPiRow {
    pub p: u64,
    pub k: u32,
    pub pi: &'static [u64],
}

pub static TABLE4: [PrintedU3Row; 11] = [
    PrintedU3Row {
        p: 31, k: 1,
        order: &[(2, 11), (3, 1), (5, 1), (7, 2), (19, 1), (31, 3)],
        mu: &[&[(7, 2), (19, 1)], &[(2, 6), (3, 1), (5, 1)], &[(2, 5), (31, 1)]],
        degrees: &[3, 2, 2, 1, 1, 1],
    },
    PrintedU3Row {
        p: 37, k: 1,
        order: &[(2, 4), (3, 2), (19, 2), (31, 1), (37, 3), (43, 1)],
        mu: &[&[(31, 1), (43, 1)], &[(2, 3), (3, 2), (19, 1)], &[(2, 1), (19, 1), (37, 1)]],
        degrees: &[3, 2, 3, 1, 2, 1],
    },
    PrintedU3Row {
        p: 43, k: 1,
        order: &[(2, 5), (3, 1), (7, 1), (11, 2), (13, 1), (43, 3), (139, 1)],
        mu: &[&[(13, 1), (139, 1)], &[(2, 3), (3, 1), (7, 1), (11, 1)], &[(2, 2), (11, 1), (43, 1)]],
        degrees: &[4, 3, 3, 4, 1, 2, 1],
    },
    PrintedU3Row {
        p: 47, k: 1,
        order: &[(2, 9), (3, 2), (7, 1), (23, 1), (47, 3), (103, 1)],
        mu: &[&[(7, 1), (103, 1)], &[(2, 5), (23, 1)], &[(2, 4), (47, 1)], &[(2, 4), (3, 1)]],
        degrees: &[3, 1, 1, 1, 1, 1],
    },
    PrintedU3Row {
        p: 7, k: 2,
        order: &[(2, 6), (3, 1), (5, 4), (7, 6), (13, 1), (181, 1)],
        mu: &[&[(13, 1), (181, 1)], &[(2, 5), (3, 1), (5, 2)], &[(2, 1), (5, 2), (7, 1)]],
        degrees: &[3, 2, 3, 2, 1, 1],
    },
    PrintedU3Row {
        p: 59, k: 1,
        order: &[(2, 5), (3, 2), (5, 2), (7, 1), (29, 1), (59, 3), (163, 1)],
        mu: &[&[(7, 1), (163, 1)], &[(2, 3), (5, 1), (29, 1)], &[(2, 2), (5, 1), (59, 1)], &[(2, 2), (3, 1), (5, 1)]],
        degrees: &[4, 2, 4, 1, 2, 2, 1],
    },
    PrintedU3Row {
        p: 61, k: 1,
        order: &[(2, 4), (3, 1), (5, 1), (7, 1), (31, 2), (61, 3), (523, 1)],
        mu: &[&[(7, 1), (523, 1)], &[(2, 3), (3, 1), (5, 1), (31, 1)], &[(2, 1), (31, 1), (61, 1)]],
        degrees: &[4, 3, 3, 1, 4, 2, 1],
    },
    PrintedU3Row {
        p: 2, k: 6,
        order: &[(2, 18), (3, 2), (5, 2), (7, 1), (13, 2), (37, 1), (109, 1)],
        mu: &[&[(37, 1), (109, 1)], &[(3, 2), (5, 1), (7, 1), (13, 1)], &[(2, 1), (5, 1), (13, 1)]],
        degrees: &[2, 3, 4, 3, 4, 1, 1],
    },
    PrintedU3Row {
        p: 73, k: 1,
        order: &[(2, 5), (3, 2), (7, 1), (37, 2), (73, 3), (751, 1)],
        mu: &[&[(7, 1), (751, 1)], &[(2, 4), (3, 2), (37, 1)], &[(2, 1), (37, 1), (73, 1)]],
        degrees: &[3, 2, 1, 3, 2, 1],
    },
    PrintedU3Row {
        p: 89, k: 1,
        order: &[(2, 5), (3, 4), (5, 2), (7, 1), (11, 1), (89, 3), (373, 1)],
        mu: &[&[(7, 1), (373, 1)], &[(2, 4), (3, 1), (5, 1), (11, 1)], &[(2, 1), (3, 1), (5, 1), (89, 1)], &[(2, 1), (3, 2), (5, 1)]],
        degrees: &[4, 4, 4, 1, 3, 3, 1],
    },
    PrintedU3Row {
        p: 97, k: 1,
        order: &[(2, 7), (3, 1), (7, 4), (67, 1), (97, 3), (139, 1)],
        mu: &[&[(67, 1), (139, 1)], &[(2, 6), (3, 1), (7, 2)], &[(2, 1), (7, 2), (97, 1)]],
        degrees: &[3, 2, 3, 1, 2, 1],
    },
];

pub static TABLE5: [PrintedSeqRow; 11] = [
    PrintedSeqRow { p: 31, k: 1, ascending: &[1, 1, 1, 2, 2, 3], d1: 1, d_d1p2: 1, pi_minus_3: 3 },
    PrintedSeqRow { p: 37, k: 1, ascending: &[1, 1, 2, 2, 3, 3], d1: 1, d_d1p2: 2, pi_minus_3: 3 },
    PrintedSeqRow { p: 43, k: 1, ascending: &[1, 1, 2, 3, 3, 4, 4], d1: 1, d_d1p2: 2, pi_minus_3: 4 },
    PrintedSeqRow { p: 47, k: 1, ascending: &[1, 1, 1, 1, 1, 3], d1: 1, d_d1p2: 1, pi_minus_3: 3 },
    PrintedSeqRow { p: 7, k: 2, ascending: &[1, 1, 2, 2, 3, 3], d1: 1, d_d1p2: 2, pi_minus_3: 3 },
    PrintedSeqRow { p: 59, k: 1, ascending: &[1, 1, 2, 2, 2, 4], d1: 1, d_d1p2: 2, pi_minus_3: 3 },
    PrintedSeqRow { p: 61, k: 1, ascending: &[1, 1, 2, 3, 3, 4, 4], d1: 1, d_d1p2: 2, pi_minus_3: 4 },
    PrintedSeqRow { p: 2, k: 6, ascending: &[1, 1, 2, 3, 3, 4, 4], d1: 1, d_d1p2: 2, pi_minus_3: 4 },
    PrintedSeqRow { p: 73, k: 1, ascending: &[1, 1, 2, 2, 3, 3], d1: 1, d_d1p2: 2, pi_minus_3: 3 },
    PrintedSeqRow { p: 89, k: 1, ascending: &[1, 1, 3, 3, 4, 4, 4], d1: 1, d_d1p2: 3, pi_minus_3: 4 },
    PrintedSeqRow { p: 97, k: 1, ascending: &[1, 1, 2, 2, 3, 3], d1: 1, d_d1p2: 2, pi_minus_3: 3 },
];

pub static TABLE6: [PrintedU4Row; 29] = [
    PrintedU4Row { p: 3, k: 2, order: &[(2, 9), (3, 12), (5, 3), (41, 1), (73, 1)], degrees: &[3, 2, 3, 1, 1] },
    PrintedU4Row { p: 11, k: 1, order: &[(2, 7), (3, 4), (5, 2), (11, 6), (37, 1), (61, 1)], degrees: &[3, 4, 4, 3, 1, 1] },
    PrintedU4Row { p: 13, k: 1, order: &[(2, 7), (3, 2), (5, 1), (7, 3), (13, 6), (17, 1), (157, 1)], degrees: &[5, 5, 3, 4, 2, 3, 1] },
    PrintedU4Row { p: 2, k: 4, order: &[(2, 24), (3, 2), (5, 2), (17, 3), (241, 1), (257, 1)], degrees: &[3, 4, 4, 4, 1, 2] },
    PrintedU4Row { p: 17, k: 1, order: &[(2, 11), (3, 7), (5, 1), (7, 1), (13, 1), (17, 6), (29, 1)], degrees: &[4, 4, 2, 2, 2, 2, 2] },
    PrintedU4Row { p: 19, k: 1, order: &[(2, 7), (3, 4), (5, 3), (7, 3), (19, 6), (181, 1)], degrees: &[3, 4, 4, 1, 3, 1] },
    PrintedU4Row { p: 23, k: 1, order: &[(2, 10), (3, 4), (5, 1), (11, 2), (13, 2), (23, 6), (53, 1)], degrees: &[4, 4, 2, 5, 2, 3, 2] },
    PrintedU4Row { p: 5, k: 2, order: &[(2, 9), (3, 2), (5, 12), (13, 3), (313, 1), (601, 1)], degrees: &[4, 4, 3, 4, 2, 1] },
    PrintedU4Row { p: 3, k: 3, order: &[(2, 7), (3, 18), (5, 1), (7, 3), (13, 2), (19, 1), (37, 1), (73, 1)], degrees: &[3, 3, 2, 5, 5, 2, 2, 2] },
    PrintedU4Row { p: 29, k: 1, order: &[(2, 7), (3, 4), (5, 3), (7, 2), (29, 6), (271, 1), (421, 1)], degrees: &[5, 5, 5, 5, 4, 2, 2] },
    PrintedU4Row { p: 31, k: 1, order: &[(2, 16), (3, 2), (5, 2), (7, 2), (13, 1), (19, 1), (31, 6), (37, 1)], degrees: &[5, 5, 5, 2, 3, 2, 3, 3] },
    PrintedU4Row { p: 2, k: 5, order: &[(2, 30), (3, 4), (5, 2), (11, 3), (31, 2), (41, 1), (331, 1)], degrees: &[3, 4, 2, 4, 5, 2, 2] },
    PrintedU4Row { p: 37, k: 1, order: &[(2, 7), (3, 4), (5, 1), (19, 3), (31, 1), (37, 6), (43, 1), (137, 1)], degrees: &[5, 5, 3, 5, 2, 3, 2, 3] },
    PrintedU4Row { p: 41, k: 1, order: &[(2, 9), (3, 4), (5, 2), (7, 3), (29, 2), (41, 6), (547, 1)], degrees: &[5, 5, 5, 5, 2, 4, 2] },
    PrintedU4Row { p: 43, k: 1, order: &[(2, 7), (3, 2), (5, 2), (7, 2), (11, 3), (13, 1), (37, 1), (43, 6), (139, 1)], degrees: &[4, 6, 3, 6, 6, 2, 3, 4, 2] },
    PrintedU4Row { p: 47, k: 1, order: &[(2, 13), (3, 4), (5, 1), (7, 1), (13, 1), (17, 1), (23, 2), (47, 6), (103, 1)], degrees: &[5, 5, 3, 3, 3, 3, 6, 3, 3] },
    PrintedU4Row { p: 7, k: 2, order: &[(2, 11), (3, 2), (5, 6), (7, 12), (13, 1), (181, 1), (1201, 1)], degrees: &[4, 4, 5, 3, 2, 2, 2] },
    PrintedU4Row { p: 53, k: 1, order: &[(2, 7), (3, 10), (5, 1), (13, 2), (53, 6), (281, 1), (919, 1)], degrees: &[5, 4, 3, 5, 3, 3, 1] },
    PrintedU4Row { p: 59, k: 1, order: &[(2, 7), (3, 4), (5, 3), (7, 1), (29, 2), (59, 6), (163, 1), (1741, 1)], degrees: &[4, 6, 6, 3, 5, 4, 3, 1] },
    PrintedU4Row { p: 61, k: 1, order: &[(2, 7), (3, 2), (5, 2), (7, 1), (31, 3), (61, 6), (523, 1), (1861, 1)], degrees: &[5, 5, 5, 2, 6, 4, 2, 1] },
    PrintedU4Row { p: 2, k: 6, order: &[(2, 36), (3, 4), (5, 3), (7, 2), (13, 3), (17, 1), (37, 1), (109, 1), (241, 1)], degrees: &[4, 6, 6, 6, 6, 3, 3, 3, 3] },
    PrintedU4Row { p: 67, k: 1, order: &[(2, 7), (3, 2), (5, 1), (11, 2), (17, 3), (67, 6), (449, 1), (4423, 1)], degrees: &[4, 6, 3, 6, 5, 4, 3, 1] },
    PrintedU4Row { p: 71, k: 1, order: &[(2, 10), (3, 7), (5, 2), (7, 2), (71, 6), (1657, 1), (2521, 1)], degrees: &[5, 5, 5, 5, 4, 2, 2] },
    PrintedU4Row { p: 73, k: 1, order: &[(2, 9), (3, 4), (5, 1), (7, 1), (13, 1), (37, 3), (41, 1), (73, 6), (751, 1)], degrees: &[6, 6, 4, 2, 4, 5, 4, 3, 2] },
    PrintedU4Row { p: 79, k: 1, order: &[(2, 13), (3, 2), (5, 3), (13, 2), (79, 6), (3121, 1), (6163, 1)], degrees: &[5, 5, 5, 5, 4, 2, 2] },
    PrintedU4Row { p: 3, k: 4, order: &[(2, 11), (3, 24), (5, 2), (17, 1), (41, 3), (193, 1), (6481, 1)], degrees: &[5, 3, 5, 3, 4, 3, 1] },
    PrintedU4Row { p: 83, k: 1, order: &[(2, 7), (3, 4), (5, 1), (7, 3), (13, 1), (41, 2), (53, 1), (83, 6), (2269, 1)], degrees: &[4, 5, 3, 5, 3, 7, 3, 4, 2] },
    PrintedU4Row { p: 89, k: 1, order: &[(2, 9), (3, 7), (5, 3), (7, 1), (11, 2), (17, 1), (89, 6), (233, 1), (373, 1)], degrees: &[6, 6, 6, 3, 6, 3, 4, 3, 3] },
    PrintedU4Row { p: 97, k: 1, order: &[(2, 13), (3, 2), (5, 1), (7, 6), (67, 1), (97, 6), (139, 1), (941, 1)], degrees: &[5, 5, 3, 5, 2, 3, 2, 3] },
];

pub static TABLE7: [PrintedPiRow; 8] = [
    PrintedPiRow { p: 7, k: 2, pi: &[13, 181, 1201] },
    PrintedPiRow { p: 59, k: 1, pi: &[7, 163, 1741] },
    PrintedPiRow { p: 61, k: 1, pi: &[7, 523, 1861] },
    PrintedPiRow { p: 67, k: 1, pi: &[5, 449, 4423] },
    PrintedPiRow { p: 71, k: 1, pi: &[1657, 2521] },
    PrintedPiRow { p: 79, k: 1, pi: &[3121, 6163] },
    PrintedPiRow { p: 3, k: 4, pi: &[17, 193, 6481] },
    PrintedPiRow { p: 83, k: 1, pi: &[5, 13, 53, 2269] },
];

/// One differing cell between a printed row and the recomputed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub group: String,
    pub cell: &'static str,
    pub printed: String,
    pub computed: String,
}

/// A recomputed U_3/U_4 row.
pub struct ComputedRow {
    pub params: UnitaryParams,
    pub order: FactoredInteger,
    pub mu: Spectrum,
    pub pattern: Vec<u32>,
}

/// Compute order, μ and degree pattern for U_n(q) from the formulas.
pub fn compute_row(n: u32, p: u64, k: u32) -> Result<ComputedRow> {
    let params = UnitaryParams::new(n, p, k)?;
    let order = unitary::order_u(&params)?;
    let mu = match n {
        3 => unitary::mu_u3(&params)?,
        4 => unitary::mu_u4(&params)?,
        _ => unitary::spectrum_u(&params)?,
    };
    let gk = graph::build_gk(&mu, &order)?;
    let pattern = gk.degree_pattern().0;
    Ok(ComputedRow {
        params,
        order,
        mu,
        pattern,
    })
}

fn factors_to_string(factors: &[(u64, u32)]) -> String {
    FactoredInteger::from_u64_factors(factors)
        .map(|f| f.to_string())
        .unwrap_or_else(|_| "<bad factors>".into())
}

fn mu_set_string(mu: &Spectrum) -> String {
    let parts: Vec<String> = mu.mu().iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn printed_mu_string(mu: &[&[(u64, u32)]]) -> String {
    let mut values: Vec<FactoredInteger> = mu
        .iter()
        .map(|f| FactoredInteger::from_u64_factors(f).expect("printed factors"))
        .collect();
    values.sort();
    let parts: Vec<String> = values.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn degrees_string(d: &[u32]) -> String {
    format!(
        "({})",
        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    )
}

/// Diff the printed order/μ/degree-pattern rows against recomputation.
pub fn diff_table4() -> Result<Vec<CellDiff>> {
    let mut diffs = Vec::new();
    for row in &TABLE4 {
        let computed = compute_row(3, row.p, row.k)?;
        let label = computed.params.label();
        let printed_order = factors_to_string(row.order);
        let computed_order = computed.order.to_string();
        if printed_order != computed_order {
            diffs.push(CellDiff {
                group: label.clone(),
                cell: "order",
                printed: printed_order,
                computed: computed_order,
            });
        }
        let printed_mu = printed_mu_string(row.mu);
        let computed_mu = mu_set_string(&computed.mu);
        if printed_mu != computed_mu {
            diffs.push(CellDiff {
                group: label.clone(),
                cell: "mu",
                printed: printed_mu,
                computed: computed_mu,
            });
        }
        if row.degrees != computed.pattern.as_slice() {
            diffs.push(CellDiff {
                group: label,
                cell: "degrees",
                printed: degrees_string(row.degrees),
                computed: degrees_string(&computed.pattern),
            });
        }
    }
    Ok(diffs)
}

/// Diff the printed ascending-sequence rows (with the d_1, d_{d_1+2} and
/// |π| − 3 columns) against recomputation.
pub fn diff_table5() -> Result<Vec<CellDiff>> {
    let mut diffs = Vec::new();
    for row in &TABLE5 {
        let computed = compute_row(3, row.p, row.k)?;
        let label = computed.params.label();
        let mut ascending = computed.pattern.clone();
        ascending.sort_unstable();
        if row.ascending != ascending.as_slice() {
            diffs.push(CellDiff {
                group: label.clone(),
                cell: "ascending",
                printed: degrees_string(row.ascending),
                computed: degrees_string(&ascending),
            });
        }
        let d1 = ascending[0];
        if row.d1 != d1 {
            diffs.push(CellDiff {
                group: label.clone(),
                cell: "d1",
                printed: row.d1.to_string(),
                computed: d1.to_string(),
            });
        }
        let d_d1p2 = ascending[d1 as usize + 1];
        if row.d_d1p2 != d_d1p2 {
            diffs.push(CellDiff {
                group: label.clone(),
                cell: "d_{d1+2}",
                printed: row.d_d1p2.to_string(),
                computed: d_d1p2.to_string(),
            });
        }
        let pim3 = ascending.len() as u32 - 3;
        if row.pi_minus_3 != pim3 {
            diffs.push(CellDiff {
                group: label,
                cell: "|pi|-3",
                printed: row.pi_minus_3.to_string(),
                computed: pim3.to_string(),
            });
        }
    }
    Ok(diffs)
}

/// Diff the printed U_4 order/degree-pattern rows against recomputation.
pub fn diff_table6() -> Result<Vec<CellDiff>> {
    let mut diffs = Vec::new();
    for row in &TABLE6 {
        let computed = compute_row(4, row.p, row.k)?;
        let label = computed.params.label();
        let printed_order = factors_to_string(row.order);
        let computed_order = computed.order.to_string();
        if printed_order != computed_order {
            diffs.push(CellDiff {
                group: label.clone(),
                cell: "order",
                printed: printed_order,
                computed: computed_order,
            });
        }
        if row.degrees != computed.pattern.as_slice() {
            diffs.push(CellDiff {
                group: label,
                cell: "degrees",
                printed: degrees_string(row.degrees),
                computed: degrees_string(&computed.pattern),
            });
        }
    }
    Ok(diffs)
}

/// Diff the printed kernel π-sets against both derivation paths.
pub fn diff_table7() -> Result<Vec<CellDiff>> {
    let mut diffs = Vec::new();
    for row in &TABLE7 {
        let params = UnitaryParams::u4(row.p, row.k)?;
        let derived = crate::certify::derive_u4_kernel_primes(&params)?;
        let printed: std::collections::BTreeSet<u64> = row.pi.iter().copied().collect();
        if printed != derived {
            diffs.push(CellDiff {
                group: params.label(),
                cell: "pi",
                printed: format!("{:?}", printed),
                computed: format!("{:?}", derived),
            });
        }
    }
    Ok(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_table_constants_are_well_formed() {
        for row in &TABLE4 {
            FactoredInteger::from_u64_factors(row.order).unwrap();
            for m in row.mu {
                FactoredInteger::from_u64_factors(m).unwrap();
            }
            assert_eq!(row.degrees.len(), row.order.len());
        }
        for row in &TABLE6 {
            FactoredInteger::from_u64_factors(row.order).unwrap();
            assert_eq!(row.degrees.len(), row.order.len());
        }
    }

    #[test]
    fn table4_flags_exactly_the_u3_64_mu_cell() {
        let diffs = diff_table4().unwrap();
        assert_eq!(diffs.len(), 1, "{:?}", diffs);
        assert_eq!(diffs[0].group, "U_3(64)");
        assert_eq!(diffs[0].cell, "mu");
        // the computed set carries the extra maximal element 4
        assert!(diffs[0].computed.contains("2^2"));
    }

    #[test]
    fn table5_flags_exactly_the_u3_59_row() {
        let diffs = diff_table5().unwrap();
        let groups: std::collections::BTreeSet<&str> =
            diffs.iter().map(|d| d.group.as_str()).collect();
        assert_eq!(groups.len(), 1, "{:?}", diffs);
        assert!(groups.contains("U_3(59)"));
        // the printed row dropped one entry and understated |π| − 3
        assert!(diffs.iter().any(|d| d.cell == "ascending"));
        assert!(diffs.iter().any(|d| d.cell == "|pi|-3"));
    }

    #[test]
    fn table6_flags_exactly_u4_13_and_u4_61_degrees() {
        let diffs = diff_table6().unwrap();
        assert_eq!(diffs.len(), 2, "{:?}", diffs);
        assert!(diffs
            .iter()
            .all(|d| d.cell == "degrees" && (d.group == "U_4(13)" || d.group == "U_4(61)")));
    }

    #[test]
    fn table7_matches_on_all_rows() {
        assert!(diff_table7().unwrap().is_empty());
    }
}
