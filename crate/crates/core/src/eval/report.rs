use std::fs;
use std::path::Path;

use serde::Serialize;

use super::{ChangeType, Family, Row};
use crate::enhance::Approach;
use crate::error::{Error, Result};

/// Differences below this count as equal.
pub const EQUAL_TOLERANCE: f64 = 1e-9;

/// Means over one group of rows, or an average over groups.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupStats {
    pub label: String,
    pub n: usize,
    pub proportion: f64,
    pub metric_base: f64,
    pub metric_enh: f64,
    pub difference: f64,
    pub ratio: Option<f64>,
    pub base_better: f64,
    pub equal: f64,
    pub enh_better: f64,
    pub aesthetics_base: f64,
    pub aesthetics_enh: f64,
    pub crossings_base: f64,
    pub crossings_enh: f64,
}

impl GroupStats {
    fn of(label: String, rows: &[&Row], total: usize) -> Self {
        let n = rows.len() as f64;
        let mean = |f: &dyn Fn(&Row) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / n;
        let metric_base = mean(&|r| r.metric_base());
        let metric_enh = mean(&|r| r.metric_enh());
        let share = |keep: &dyn Fn(f64) -> bool| {
            rows.iter().filter(|r| keep(r.metric_enh() - r.metric_base())).count() as f64 / n
        };
        GroupStats {
            label,
            n: rows.len(),
            proportion: rows.len() as f64 / total as f64,
            metric_base,
            metric_enh,
            difference: metric_enh - metric_base,
            ratio: (metric_base > 0.0).then(|| metric_enh / metric_base),
            base_better: share(&|d| d <= -EQUAL_TOLERANCE),
            equal: share(&|d| d.abs() < EQUAL_TOLERANCE),
            enh_better: share(&|d| d >= EQUAL_TOLERANCE),
            aesthetics_base: mean(&|r| r.aesthetics_base),
            aesthetics_enh: mean(&|r| r.aesthetics_enh),
            crossings_base: mean(&|r| r.crossings_base as f64),
            crossings_enh: mean(&|r| r.crossings_enh as f64),
        }
    }

    /// Column-wise weighted mean of groups; missing ratios are left out and
    /// the remaining weights renormalised.
    fn average(label: &str, groups: &[GroupStats], weight: impl Fn(&GroupStats) -> f64) -> Self {
        let wsum: f64 = groups.iter().map(&weight).sum();
        let avg = |f: &dyn Fn(&GroupStats) -> f64| groups.iter().map(|g| weight(g) * f(g)).sum::<f64>() / wsum;
        let with_ratio: Vec<&GroupStats> = groups.iter().filter(|g| g.ratio.is_some()).collect();
        let rsum: f64 = with_ratio.iter().map(|g| weight(g)).sum();
        let ratio = (rsum > 0.0).then(|| with_ratio.iter().map(|g| weight(g) * g.ratio.unwrap()).sum::<f64>() / rsum);
        GroupStats {
            label: label.to_owned(),
            n: groups.iter().map(|g| g.n).sum(),
            proportion: avg(&|g| g.proportion),
            metric_base: avg(&|g| g.metric_base),
            metric_enh: avg(&|g| g.metric_enh),
            difference: avg(&|g| g.difference),
            ratio,
            base_better: avg(&|g| g.base_better),
            equal: avg(&|g| g.equal),
            enh_better: avg(&|g| g.enh_better),
            aesthetics_base: avg(&|g| g.aesthetics_base),
            aesthetics_enh: avg(&|g| g.aesthetics_enh),
            crossings_base: avg(&|g| g.crossings_base),
            crossings_enh: avg(&|g| g.crossings_enh),
        }
    }
}

/// One table: a family under one approach, a row per change type plus the
/// equally weighted and proportion weighted averages.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub family: Family,
    pub approach: Option<Approach>,
    pub groups: Vec<GroupStats>,
    pub equal_weighted: GroupStats,
    pub proportion_weighted: GroupStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    #[serde(skip)]
    pub rows: Vec<Row>,
    pub sections: Vec<Section>,
    pub failures: Vec<String>,
}

pub fn aggregate(rows: Vec<Row>, failures: Vec<String>) -> MetricReport {
    let mut keys: Vec<(Family, Option<Approach>)> = rows.iter().map(|r| (r.family, r.approach)).collect();
    keys.sort();
    keys.dedup();
    let sections = keys
        .into_iter()
        .map(|(family, approach)| {
            let in_section: Vec<&Row> = rows.iter().filter(|r| r.family == family && r.approach == approach).collect();
            let groups: Vec<GroupStats> = ChangeType::ALL
                .iter()
                .filter_map(|t| {
                    let g: Vec<&Row> = in_section.iter().copied().filter(|r| r.change_type == *t).collect();
                    (!g.is_empty()).then(|| GroupStats::of(t.to_string(), &g, in_section.len()))
                })
                .collect();
            Section {
                family,
                approach,
                equal_weighted: GroupStats::average("equally_weighted", &groups, |_| 1.0),
                proportion_weighted: GroupStats::average("proportion_weighted", &groups, |g| g.proportion),
                groups,
            }
        })
        .collect();
    MetricReport { rows, sections, failures }
}

impl MetricReport {
    pub fn section(&self, family: Family, approach: Option<Approach>) -> Option<&Section> {
        self.sections.iter().find(|s| s.family == family && s.approach == approach)
    }

    /// Writes `rows.csv`, one table per family and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        let io = |e: &dyn std::fmt::Display| Error::Output(format!("writing {}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(|e| io(&e))?;
        let mut w = csv::Writer::from_path(dir.join("rows.csv")).map_err(|e| io(&e))?;
        for r in &self.rows {
            w.serialize(r).map_err(|e| io(&e))?;
        }
        w.flush().map_err(|e| io(&e))?;
        for family in [Family::Outer, Family::Inner, Family::Multiple] {
            let name = match family {
                Family::Outer => "outer.csv",
                Family::Inner => "inner.csv",
                Family::Multiple => "multiple.csv",
            };
            let mut w = csv::Writer::from_path(dir.join(name)).map_err(|e| io(&e))?;
            for s in self.sections.iter().filter(|s| s.family == family) {
                for g in s.groups.iter().chain([&s.equal_weighted, &s.proportion_weighted]) {
                    w.serialize(TableRow::new(s.approach, g)).map_err(|e| io(&e))?;
                }
            }
            w.flush().map_err(|e| io(&e))?;
        }
        let json = serde_json::to_string_pretty(self).map_err(|e| io(&e))?;
        fs::write(dir.join("summary.json"), json + "\n").map_err(|e| io(&e))?;
        Ok(())
    }
}

#[derive(Serialize)]
struct TableRow<'a> {
    approach: Option<Approach>,
    label: &'a str,
    n: usize,
    proportion: f64,
    metric_base: f64,
    metric_enh: f64,
    difference: f64,
    ratio: Option<f64>,
    base_better: f64,
    equal: f64,
    enh_better: f64,
    aesthetics_base: f64,
    aesthetics_enh: f64,
    crossings_base: f64,
    crossings_enh: f64,
}

impl<'a> TableRow<'a> {
    fn new(approach: Option<Approach>, g: &'a GroupStats) -> Self {
        Self {
            approach,
            label: &g.label,
            n: g.n,
            proportion: g.proportion,
            metric_base: g.metric_base,
            metric_enh: g.metric_enh,
            difference: g.difference,
            ratio: g.ratio,
            base_better: g.base_better,
            equal: g.equal,
            enh_better: g.enh_better,
            aesthetics_base: g.aesthetics_base,
            aesthetics_enh: g.aesthetics_enh,
            crossings_base: g.crossings_base,
            crossings_enh: g.crossings_enh,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(t: ChangeType, base: f64, enh: f64) -> Row {
        Row {
            base: 0,
            alternative: 0,
            change_type: t,
            family: Family::Outer,
            approach: None,
            normalized_hausdorff_base: base,
            normalized_hausdorff_enh: enh,
            iou_base: 1.0,
            iou_enh: 1.0,
            rel_whitespace_base: None,
            rel_whitespace_enh: None,
            aesthetics_base: 0.7,
            aesthetics_enh: 0.7,
            aesthetics_retained: 1.0,
            crossings_base: 3,
            crossings_enh: 3,
        }
    }

    #[test]
    fn unchanged_rows_are_all_equal() {
        let rows = vec![row(ChangeType::AddEdge, 0.2, 0.2), row(ChangeType::AddNode, 0.5, 0.5)];
        let r = aggregate(rows, vec![]);
        let s = r.section(Family::Outer, None).unwrap();
        for g in s.groups.iter().chain([&s.equal_weighted, &s.proportion_weighted]) {
            assert_eq!(g.equal, 1.0);
            assert_eq!(g.difference, 0.0);
        }
    }

    #[test]
    fn proportion_weighting_is_a_weighted_mean() {
        let rows = vec![
            row(ChangeType::AddEdge, 0.2, 0.4),
            row(ChangeType::AddEdge, 0.2, 0.2),
            row(ChangeType::AddEdge, 0.2, 0.1),
            row(ChangeType::AddNode, 0.5, 1.5),
        ];
        let r = aggregate(rows, vec![]);
        let s = r.section(Family::Outer, None).unwrap();
        let (e, n) = (&s.groups[1], &s.groups[0]);
        assert_eq!(e.label, "add_edge");
        assert_eq!((e.base_better, e.equal, e.enh_better), (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0));
        let want = e.ratio.unwrap() * 0.75 + n.ratio.unwrap() * 0.25;
        assert!((s.proportion_weighted.ratio.unwrap() - want).abs() < 1e-12);
        assert!((s.equal_weighted.ratio.unwrap() - (e.ratio.unwrap() + n.ratio.unwrap()) / 2.0).abs() < 1e-12);
    }
}
