use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use permcheck::graphs::{class_graph, element_graph, expanded_graph, Relation};
use permcheck::harness::tables::{self, ClassRow, TableBRow, TableDRow};
use permcheck::harness::{run_corpus_text, VerdictReport, DEFAULT_MANIFEST};
use permcheck::numtheory::{p_part, prime_divisors};
use permcheck::structure::{is_nilpotent, is_solvable, solvable_radical_of, sylow_subgroup};
use permcheck::{atlas, GroupSpec, GroupTable, PermGroup};

use crate::output::{choose, emit, Format};
use crate::{Cli, Command, GlobalOpts, KindArg, TableId};

/// Runs the parsed command and returns the exit status.
pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::GroupInfo { spec } => group_info(g, spec),
        Command::Graph {
            spec,
            kind,
            relation,
        } => graph(g, spec, *kind, relation),
        Command::Verify {
            specs,
            checks,
            timings,
        } => verify(g, specs, checks, *timings),
        Command::Table { id, range } => table(g, *id, range),
    }
}

fn build(g: &GlobalOpts, spec: &str) -> Result<(GroupSpec, PermGroup)> {
    let parsed = GroupSpec::parse(spec)?;
    let group = atlas::build_with(&parsed, g.extended)?;
    Ok((parsed, group))
}

#[derive(Serialize)]
struct GroupInfo {
    spec: String,
    degree: usize,
    order: u128,
    solvable: bool,
    nilpotent: bool,
    radical_order: Option<u128>,
    class_count: Option<usize>,
    /// Prime to Sylow subgroup order.
    sylow_orders: BTreeMap<u64, Option<u128>>,
    /// Fields that could not be computed, with the reason.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    unavailable: BTreeMap<String, String>,
}

fn group_info(g: &GlobalOpts, spec: &str) -> Result<u8> {
    let format = choose(
        g.format,
        Format::Text,
        &[Format::Text, Format::Json],
        "group-info",
    )?;
    let (parsed, group) = build(g, spec)?;
    let order = group.order();
    let mut info = GroupInfo {
        spec: parsed.to_string(),
        degree: group.degree(),
        order,
        solvable: is_solvable(&group),
        nilpotent: is_nilpotent(&group),
        radical_order: None,
        class_count: None,
        sylow_orders: BTreeMap::new(),
        unavailable: BTreeMap::new(),
    };
    match GroupTable::new(&group, g.cap) {
        Ok(t) => {
            info.class_count = Some(t.classes().len());
            match solvable_radical_of(&t) {
                Ok(r) => info.radical_order = Some(r.order()),
                Err(e) => {
                    info.unavailable
                        .insert("radical_order".into(), e.to_string());
                }
            }
        }
        Err(e) => {
            info.unavailable.insert("class_count".into(), e.to_string());
            info.unavailable
                .insert("radical_order".into(), e.to_string());
        }
    }
    for p in prime_divisors(order) {
        match sylow_subgroup(&group, p, g.cap) {
            Ok(s) => {
                debug_assert_eq!(s.order(), p_part(order, p));
                info.sylow_orders.insert(p, Some(s.order()));
            }
            Err(e) => {
                info.sylow_orders.insert(p, None);
                info.unavailable.insert(format!("sylow_{p}"), e.to_string());
            }
        }
    }
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&info)? + "\n",
        _ => group_info_text(&info),
    };
    emit(g.out.as_deref(), &text)?;
    Ok(0)
}

fn group_info_text(info: &GroupInfo) -> String {
    let opt = |v: Option<String>, field: &str| {
        v.unwrap_or_else(|| format!("unavailable ({})", info.unavailable[field]))
    };
    let mut s = String::new();
    let _ = writeln!(s, "group: {}", info.spec);
    let _ = writeln!(s, "degree: {}", info.degree);
    let _ = writeln!(s, "order: {}", info.order);
    let _ = writeln!(s, "solvable: {}", info.solvable);
    let _ = writeln!(s, "nilpotent: {}", info.nilpotent);
    let _ = writeln!(
        s,
        "radical order: {}",
        opt(info.radical_order.map(|v| v.to_string()), "radical_order")
    );
    let _ = writeln!(
        s,
        "classes: {}",
        opt(info.class_count.map(|v| v.to_string()), "class_count")
    );
    for (p, o) in &info.sylow_orders {
        let _ = writeln!(
            s,
            "sylow {p}: {}",
            opt(o.map(|v| v.to_string()), &format!("sylow_{p}"))
        );
    }
    s
}

fn graph(g: &GlobalOpts, spec: &str, kind: KindArg, relation: &str) -> Result<u8> {
    let format = choose(g.format, Format::Dot, &[Format::Dot, Format::Json], "graph")?;
    let relation: Relation = relation.parse()?;
    let (_, group) = build(g, spec)?;
    let t = GroupTable::new(&group, g.cap)?;
    let graph = match kind {
        KindArg::Element => element_graph(&t, relation),
        KindArg::Class => class_graph(&t, relation),
        KindArg::Expanded => expanded_graph(&t, relation),
    }?;
    let text = match format {
        Format::Json => graph.export_json() + "\n",
        _ => graph.export_dot(),
    };
    emit(g.out.as_deref(), &text)?;
    Ok(0)
}

fn verify(g: &GlobalOpts, specs: &[String], checks: &str, timings: bool) -> Result<u8> {
    let format = choose(
        g.format,
        Format::Json,
        &[Format::Json, Format::Text],
        "verify",
    )?;
    let manifest = match (&g.manifest, specs.is_empty()) {
        (Some(path), true) => fs::read_to_string(path)
            .with_context(|| format!("reading manifest {}", path.display()))?,
        (Some(_), false) => bail!("give either --manifest or group specs, not both"),
        (None, false) => specs.join("\n"),
        (None, true) => DEFAULT_MANIFEST.to_string(),
    };
    let mut reports = run_corpus_text(&manifest, checks, &g.run_config())?;
    if !timings {
        for r in &mut reports {
            r.stats.millis = 0;
        }
    }
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
        _ => verify_text(&reports),
    };
    emit(g.out.as_deref(), &text)?;
    let bad = reports
        .iter()
        .filter(|r| r.outcome.is_inconsistent())
        .count();
    if bad > 0 {
        eprintln!("{bad} inconsistent outcome(s)");
        return Ok(2);
    }
    Ok(0)
}

fn verify_text(reports: &[VerdictReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let outcome = serde_json::to_value(&r.outcome).unwrap_or_default();
        let status = outcome["status"].as_str().unwrap_or("?");
        let _ = write!(s, "{:<24} {:<20} {status}", r.spec, r.check.to_string());
        if let Some(reason) = outcome.get("reason").and_then(|v| v.as_str()) {
            let _ = write!(s, " ({reason})");
        }
        if !r.witness_items().is_empty() {
            let _ = write!(s, " [{} witness item(s)]", r.witness_items().len());
        }
        s.push('\n');
    }
    s
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (a, b) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .or_else(|| text.split_once('-'))
        .with_context(|| format!("range `{text}` should look like 5..41"))?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty range {text}");
    }
    Ok(a..=b)
}

fn table(g: &GlobalOpts, id: TableId, range: &str) -> Result<u8> {
    let format = choose(
        g.format,
        Format::Text,
        &[Format::Text, Format::Json, Format::Csv],
        "table",
    )?;
    let config = g.run_config();
    let text = match id {
        TableId::B => render_b(&tables::table_b(parse_range(range)?)?, format)?,
        TableId::ASubset | TableId::CSubset => {
            let groups = if id == TableId::ASubset {
                tables::TABLE_A_GROUPS
            } else {
                tables::TABLE_C_GROUPS
            };
            render_classes(&tables::class_table(&groups, &config)?, format)?
        }
        TableId::DM11 => render_d(&tables::table_d_m11(&config)?, format)?,
    };
    emit(g.out.as_deref(), &text)?;
    Ok(0)
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn render_b(rows: &[TableBRow], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(rows)? + "\n",
        Format::Csv => {
            let mut out = Vec::new();
            for r in rows {
                if r.is_empty() {
                    out.push(vec![
                        r.n.to_string(),
                        "EMPTY".into(),
                        String::new(),
                        String::new(),
                    ]);
                }
                for f in &r.findings {
                    out.push(vec![
                        r.n.to_string(),
                        f.order.to_string(),
                        f.centralizer_order_alt.to_string(),
                        f.cycle_type.to_string(),
                    ]);
                }
            }
            csv_string(&["n", "order", "centralizer", "cycle_type"], out)?
        }
        _ => {
            let mut s = String::new();
            for r in rows {
                if r.is_empty() {
                    let _ = writeln!(s, "A{}: EMPTY", r.n);
                    continue;
                }
                let found: Vec<String> = r
                    .findings
                    .iter()
                    .map(|f| {
                        format!(
                            "({}, {}) {}",
                            f.order, f.centralizer_order_alt, f.cycle_type
                        )
                    })
                    .collect();
                let _ = writeln!(s, "A{}: {}", r.n, found.join("; "));
            }
            s
        }
    })
}

fn render_classes(groups: &[(String, Vec<ClassRow>)], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let map: BTreeMap<&str, &Vec<ClassRow>> =
                groups.iter().map(|(g, r)| (g.as_str(), r)).collect();
            serde_json::to_string_pretty(&map)? + "\n"
        }
        Format::Csv => {
            let mut out = Vec::new();
            for (g, rows) in groups {
                if rows.is_empty() {
                    out.push(vec![
                        g.clone(),
                        "EMPTY".into(),
                        String::new(),
                        String::new(),
                    ]);
                }
                for r in rows {
                    out.push(vec![
                        g.clone(),
                        r.label.clone(),
                        r.element_order.to_string(),
                        r.centralizer_order.to_string(),
                    ]);
                }
            }
            csv_string(&["group", "class", "order", "centralizer"], out)?
        }
        _ => {
            let mut s = String::new();
            for (g, rows) in groups {
                if rows.is_empty() {
                    let _ = writeln!(s, "{g}: EMPTY");
                }
                for r in rows {
                    let _ = writeln!(
                        s,
                        "{g} {} {} (order {}, class size {}, rep {})",
                        r.label,
                        r.centralizer_order,
                        r.element_order,
                        r.class_size,
                        r.representative
                    );
                }
            }
            s
        }
    })
}

fn render_d(row: &TableDRow, format: Format) -> Result<String> {
    let orders: Vec<String> = row.subgroup_orders.iter().map(|o| o.to_string()).collect();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(row)? + "\n",
        Format::Csv => csv_string(
            &[
                "group",
                "x_order",
                "y_order",
                "pairs",
                "solvable_pairs",
                "subgroup_orders",
            ],
            vec![vec![
                row.group.clone(),
                row.x_order.to_string(),
                row.y_order.to_string(),
                row.pairs.to_string(),
                row.solvable_pairs.to_string(),
                orders.join(" "),
            ]],
        )?,
        _ => format!(
            "{}: |x| = {}, |y| = {}: {} pairs, {} solvable, <x,y> orders {{{}}}\n",
            row.group,
            row.x_order,
            row.y_order,
            row.pairs,
            row.solvable_pairs,
            orders.join(", ")
        ),
    })
}
