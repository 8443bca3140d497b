//! Reproduction of the tabulated data: odd-centralizer real elements of alternating
//! groups from cycle-type combinatorics, enumerative confirmations for small simple
//! groups, and the M11 generation row.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::atlas::{self, GroupSpec};
use crate::numtheory::prime_of_prime_power;
use crate::symcomb::{search_odd_centralizer_real, RealElementFinding, SymcombError};
use crate::table::GroupTable;

use super::{table_d_scan, HarnessError, RunConfig};

/// Findings for one degree; an empty list is printed as `EMPTY`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableBRow {
    pub n: usize,
    pub findings: Vec<RealElementFinding>,
}

impl TableBRow {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    /// Whether some finding has exactly this (element order, centralizer order).
    pub fn contains(&self, order: u64, centralizer: u128) -> bool {
        self.findings
            .iter()
            .any(|f| f.order == order && f.centralizer_order_alt == centralizer)
    }
}

pub fn table_b(range: RangeInclusive<usize>) -> Result<Vec<TableBRow>, SymcombError> {
    range
        .map(|n| {
            Ok(TableBRow {
                n,
                findings: search_odd_centralizer_real(n)?,
            })
        })
        .collect()
}

/// A real class of odd prime-power element order with odd centralizer order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub group: String,
    /// Element order plus a letter, letters assigned by decreasing centralizer order.
    pub label: String,
    pub element_order: u64,
    pub centralizer_order: u128,
    pub class_size: usize,
    pub representative: String,
}

/// Groups whose rows make up the Mathieu subset.
pub const TABLE_A_GROUPS: [&str; 3] = ["M:11", "M:12", "M:22"];
/// Groups whose rows make up the linear-group subset.
pub const TABLE_C_GROUPS: [&str; 3] = ["PSL2:7", "PSL2:11", "PSL3:3"];

/// Real classes with odd centralizer and odd prime-power element order.
pub fn odd_centralizer_real_classes(name: &str, t: &GroupTable) -> Vec<ClassRow> {
    let labels = class_labels(t);
    t.classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.centralizer_order % 2 == 1
                && prime_of_prime_power(c.element_order).is_some_and(|p| p > 2)
                && t.is_real(c.rep_index)
        })
        .map(|(i, c)| ClassRow {
            group: name.to_string(),
            label: labels[i].clone(),
            element_order: c.element_order,
            centralizer_order: c.centralizer_order,
            class_size: c.size,
            representative: c.representative.to_string(),
        })
        .collect()
}

fn class_labels(t: &GroupTable) -> Vec<String> {
    let classes = t.classes();
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| {
        let (ca, cb) = (&classes[a], &classes[b]);
        (ca.element_order, std::cmp::Reverse(ca.centralizer_order), a).cmp(&(
            cb.element_order,
            std::cmp::Reverse(cb.centralizer_order),
            b,
        ))
    });
    let mut labels = vec![String::new(); classes.len()];
    let mut prev = 0;
    let mut letter = 0u8;
    for i in order {
        let o = classes[i].element_order;
        if o != prev {
            prev = o;
            letter = 0;
        }
        labels[i] = format!("{o}{}", (b'A' + letter) as char);
        letter += 1;
    }
    labels
}

/// Builds and enumerates each named group and lists its rows. A group with no rows still
/// appears in the result with an empty list.
pub fn class_table(
    groups: &[&str],
    config: &RunConfig,
) -> Result<Vec<(String, Vec<ClassRow>)>, HarnessError> {
    groups
        .iter()
        .map(|name| {
            let spec = GroupSpec::parse(name)?;
            let g = atlas::build_with(&spec, config.extended)?;
            let t = GroupTable::new(&g, config.cap)?;
            Ok((name.to_string(), odd_centralizer_real_classes(name, &t)))
        })
        .collect()
}

/// The M11 row: `x` of order 2 against every `y` of order 11.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDRow {
    pub group: String,
    pub x_order: u64,
    pub y_order: u64,
    pub pairs: u64,
    pub solvable_pairs: u64,
    pub subgroup_orders: BTreeSet<u128>,
}

pub fn table_d_m11(config: &RunConfig) -> Result<TableDRow, HarnessError> {
    let g = atlas::build_with(&GroupSpec::Mathieu(11), config.extended)?;
    let t = GroupTable::new(&g, config.cap)?;
    let scan = table_d_scan(&t, 2, 11);
    Ok(TableDRow {
        group: "M:11".into(),
        x_order: 2,
        y_order: 11,
        pairs: scan.pairs,
        solvable_pairs: scan.solvable_pairs,
        subgroup_orders: scan.subgroup_orders,
    })
}
