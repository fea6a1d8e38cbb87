//! Rendering a [`ResultBundle`] as text, JSON or plot CSV.
//!
//! The structured format is the pretty-printed JSON serialization of the
//! bundle; [`read_structured`] reads it back. Plot data is lossy: it keeps
//! only region membership flags on the box.

use std::fmt::Write as _;
use std::str::FromStr;

use mgfilt_core::index::cube;
use mgfilt_core::report::TheoremReport;

use crate::error::{Error, Result};
use crate::pipeline::ResultBundle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Structured,
    Plotdata,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "structured" => Ok(Format::Structured),
            "plotdata" => Ok(Format::Plotdata),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit(bundle: &ResultBundle, format: Format) -> Vec<u8> {
    match format {
        Format::Table => table(bundle).into_bytes(),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(bundle).expect("bundle serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Plotdata => plotdata(bundle).into_bytes(),
    }
}

pub fn read_structured(bytes: &[u8]) -> Result<ResultBundle> {
    Ok(serde_json::from_slice(bytes)?)
}

/// Left-aligned columns separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                let pad = widths[c] - cell.chars().count();
                line.push_str(cell);
                line.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Reports with more checks than this list only the failing ones in tables.
const MAX_LISTED_CHECKS: usize = 8;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_block(out: &mut String, r: &TheoremReport) {
    let _ = writeln!(out, "[{}] {}", r.verdict, r.theorem);
    let mut rows = Vec::new();
    for h in &r.hypotheses {
        rows.push(vec![
            "  hypothesis".into(),
            if h.holds { "holds" } else { "fails" }.into(),
            h.name.clone(),
            format!("({})", h.scope),
        ]);
    }
    let long = r.conclusions.len() > MAX_LISTED_CHECKS;
    if long {
        let passed = r.conclusions.iter().filter(|c| c.holds).count();
        rows.push(vec![
            "  checks".into(),
            format!("{passed}/{} ok", r.conclusions.len()),
            format!(
                "{} .. {}",
                r.conclusions[0].name,
                r.conclusions[r.conclusions.len() - 1].name
            ),
        ]);
    }
    for c in r.conclusions.iter().filter(|c| !long || !c.holds) {
        rows.push(vec![
            "  check".into(),
            if c.holds { "ok" } else { "FAIL" }.into(),
            c.name.clone(),
            format!("({})", c.detail),
        ]);
    }
    out.push_str(&columns(&rows));
    for n in &r.notes {
        let _ = writeln!(out, "  note  {n}");
    }
}

fn table(b: &ResultBundle) -> String {
    let mut out = String::new();
    let st = &b.settings;
    let header = vec![
        vec!["ring".into(), b.ring.clone()],
        vec![
            "".into(),
            format!(
                "dimension {}, {}Cohen-Macaulay",
                b.dimension,
                if b.cohen_macaulay { "" } else { "not " }
            ),
        ],
        vec!["filtration".into(), b.filtration.clone()],
        vec![
            "window".into(),
            format!(
                "box {}, margin {}, base offset {}, search degree {}",
                st.box_size, st.margin, st.base_offset, st.search_degree
            ),
        ],
        vec![
            "commands".into(),
            b.commands.iter().map(|c| c.name()).collect::<Vec<_>>().join(", "),
        ],
    ];
    out.push_str(&columns(&header));

    if let Some(p) = &b.polynomial {
        let _ = writeln!(out, "\n== Hilbert polynomial (degree {}) ==", p.degree);
        let _ = writeln!(out, "{}", p.display);
        let _ = writeln!(
            out,
            "fitted from base offset {} after {} attempt{}",
            p.base_offset,
            p.attempts,
            if p.attempts == 1 { "" } else { "s" }
        );
    }
    if !b.hilbert_table.is_empty() {
        let _ = writeln!(out, "\n== H and P on the box ==");
        let mut rows = vec![vec!["n".into(), "H(n)".into(), "P(n)".into(), "P-H".into()]];
        rows.extend(
            b.hilbert_table
                .iter()
                .map(|r| vec![r.n.to_string(), r.h.clone(), r.p.clone(), r.defect.clone()]),
        );
        out.push_str(&columns(&rows));
    }
    if !b.regions.is_empty() {
        let _ = writeln!(out, "\n== Regions ==");
        let rows: Vec<Vec<String>> = b
            .regions
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    r.region.corner_string(),
                    format!("box [0,{}]^{}, margin {}", r.region.box_size, r.region.s, r.region.margin),
                ]
            })
            .collect();
        out.push_str(&columns(&rows));
    }
    if !b.reductions.is_empty() {
        let _ = writeln!(out, "\n== Complete reductions ==");
        let mut rows = vec![vec![
            "name".into(),
            "source".into(),
            "reduction".into(),
            "r_A".into(),
            "good".into(),
            "R_A corners".into(),
        ]];
        rows.extend(b.reductions.iter().map(|r| {
            vec![
                r.name.clone(),
                r.source.clone(),
                r.display.clone(),
                r.reduction_number.map_or_else(|| "-".into(), |v| v.to_string()),
                yes_no(r.good).into(),
                r.certificate.corner_string(),
            ]
        }));
        out.push_str(&columns(&rows));
    }
    if !b.h1_nonzero.is_empty() {
        let _ = writeln!(out, "\n== Nonzero H^1 of the Rees algebra ==");
        let rows: Vec<Vec<String>> = b
            .h1_nonzero
            .iter()
            .map(|v| vec![v.n.to_string(), v.value.clone()])
            .collect();
        out.push_str(&columns(&rows));
    }
    if let Some(c) = &b.conditions {
        let _ = writeln!(out, "\n== Dimension two conditions ==");
        let opt = |v: Option<bool>| v.map_or_else(|| "undetermined".to_string(), |v| yes_no(v).to_string());
        let rows = vec![
            vec!["(2) P(F) = N^s".into(), yes_no(c.postulation_everything).into()],
            vec!["H^1 vanishes".into(), yes_no(c.h1_vanishes).into()],
            vec!["(3) every good A has r_A <= 1, H^1 = 0".into(), opt(c.condition_three())],
            vec!["(3') some good A has r_A <= 1, H^1 = 0".into(), opt(c.condition_three_prime())],
            vec!["(4) slice numbers <= 1 and joint number 0".into(), opt(c.condition_four)],
        ];
        out.push_str(&columns(&rows));
    }
    if !b.reports.is_empty() {
        let _ = writeln!(out, "\n== Reports ==");
        for r in &b.reports {
            report_block(&mut out, r);
        }
    }
    if !b.notes.is_empty() {
        let _ = writeln!(out, "\n== Notes ==");
        for n in &b.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    if b.is_empty() {
        let _ = writeln!(out, "\n(no analyses requested)");
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn plotdata(b: &ResultBundle) -> String {
    let mut out = String::from(
        "# lossy plot data: region membership flags on the box only; exact values are in the structured output\n",
    );
    let s = b.regions.first().map_or(2, |r| r.region.s);
    let coords: Vec<String> = (1..=s).map(|i| format!("n{i}")).collect();
    let _ = writeln!(out, "region,{},in_region,corner", coords.join(","));
    for r in &b.regions {
        for n in cube(r.region.s, 0, r.region.box_size) {
            let c: Vec<String> = n.coords().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                out,
                "{},{},{},{}",
                quote(&r.name),
                c.join(","),
                u8::from(r.region.contains(&n)),
                u8::from(r.region.corners.contains(&n))
            );
        }
    }
    out
}
