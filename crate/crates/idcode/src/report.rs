//! Machine-readable records shared by the CLI commands.
//!
//! The JSON field names are a stable contract; `build --json` output feeds
//! back into `verify --json-in` unchanged.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundResult;
use crate::construct::{CodeKind, Construction, Instance};

/// One instance's results: bound, construction, optional oracle cross-check.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportRecord {
    pub topology: String,
    pub n: usize,
    pub r: usize,
    pub kind: String,
    pub code: Vec<usize>,
    pub size: usize,
    pub case: String,
    pub bound: usize,
    pub oracle_min: Option<usize>,
    pub agrees: bool,
    pub deviations: Vec<String>,
}

impl ReportRecord {
    /// Assemble a record; the agreement flag is derived, never asserted.
    pub fn new(
        inst: &Instance,
        bound: &BoundResult,
        construction: Option<&Construction>,
        oracle_min: Option<usize>,
    ) -> Self {
        let (code, size, deviations) = match construction {
            Some(c) => (c.code.labels(), c.code.len(), c.deviations.clone()),
            None => (Vec::new(), 0, Vec::new()),
        };
        let agrees = construction.map_or(true, |c| c.code.len() == bound.value)
            && oracle_min.map_or(true, |m| m == bound.value);
        ReportRecord {
            topology: inst.topology.kind().as_str().to_string(),
            n: inst.topology.n(),
            r: inst.r.get(),
            kind: inst.kind.as_str().to_string(),
            code,
            size,
            case: bound.case.to_string(),
            bound: bound.value,
            oracle_min,
            agrees,
            deviations,
        }
    }

    pub fn code_kind(&self) -> Option<CodeKind> {
        match self.kind.as_str() {
            "ic" => Some(CodeKind::Identifying),
            "ld" => Some(CodeKind::LocatingDominating),
            _ => None,
        }
    }
}

/// Header row matching [`csv_row`].
pub fn csv_header() -> String {
    "topology,n,r,kind,bound,case,size,oracle_min,agrees,code".to_string()
}

/// One CSV data row; the code column joins labels with spaces so the file
/// stays one-cell-per-column.
pub fn csv_row(rec: &ReportRecord) -> String {
    let code = rec
        .code
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        rec.topology,
        rec.n,
        rec.r,
        rec.kind,
        rec.bound,
        rec.case,
        rec.size,
        rec.oracle_min.map_or(String::from(""), |m| m.to_string()),
        rec.agrees,
        code
    )
}

/// Aligned plain-text table over a batch of records.
pub fn render_table(records: &[ReportRecord]) -> String {
    let headers = [
        "topology", "n", "r", "kind", "bound", "case", "size", "oracle", "agrees",
    ];
    let rows: Vec<[String; 9]> = records
        .iter()
        .map(|rec| {
            [
                rec.topology.clone(),
                rec.n.to_string(),
                rec.r.to_string(),
                rec.kind.clone(),
                rec.bound.to_string(),
                rec.case.clone(),
                rec.size.to_string(),
                rec.oracle_min.map_or(String::from("-"), |m| m.to_string()),
                rec.agrees.to_string(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let fmt_row = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    let mut out = vec![fmt_row(&header_cells)];
    for row in &rows {
        out.push(fmt_row(row));
    }
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use crate::construct;
    use crate::topology::{Radius, Topology};

    fn sample_record() -> ReportRecord {
        let r = Radius::new(3).unwrap();
        let inst = Instance {
            topology: Topology::cycle(9).unwrap(),
            r,
            kind: CodeKind::Identifying,
        };
        let bound = bounds::min_ic_odd_cycle(9, r).unwrap();
        let c = construct::build_ic_odd_cycle(9, r).unwrap();
        ReportRecord::new(&inst, &bound, Some(&c), Some(6))
    }

    #[test]
    fn json_schema_fields() {
        let rec = sample_record();
        let json = serde_json::to_value(&rec).unwrap();
        let obj = json.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            vec![
                "agrees",
                "bound",
                "case",
                "code",
                "deviations",
                "kind",
                "n",
                "oracle_min",
                "r",
                "size",
                "topology"
            ]
        );
        assert_eq!(obj["code"], serde_json::json!([1, 2, 4, 5, 7, 8]));
        assert_eq!(obj["case"], "Thm21");
        assert_eq!(obj["oracle_min"], 6);
        assert_eq!(obj["agrees"], true);
    }

    #[test]
    fn json_round_trips() {
        let rec = sample_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: ReportRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn disagreement_is_derived() {
        let r = Radius::new(3).unwrap();
        let inst = Instance {
            topology: Topology::cycle(9).unwrap(),
            r,
            kind: CodeKind::Identifying,
        };
        let bound = bounds::min_ic_odd_cycle(9, r).unwrap();
        let rec = ReportRecord::new(&inst, &bound, None, Some(7));
        assert!(!rec.agrees);
    }

    #[test]
    fn csv_and_table_render() {
        let rec = sample_record();
        assert_eq!(
            csv_row(&rec),
            "cycle,9,3,ic,6,Thm21,6,6,true,1 2 4 5 7 8"
        );
        let table = render_table(std::slice::from_ref(&rec));
        assert!(table.lines().count() == 2);
        assert!(table.contains("Thm21"));
    }
}
