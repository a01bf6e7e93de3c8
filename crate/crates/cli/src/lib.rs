//! The `primcover` command line.

pub mod config;
mod render;

use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};
use primcover_core::actions::{coset_action_with_cap, ratio_string, DEFAULT_INDEX_CAP};
use primcover_core::covers::{
    sample_tuple_seeded, verify_bg, verify_index_fpr, verify_lemma_fpr, verify_lemma_ind,
    verify_primmax,
};
use primcover_core::group::DEFAULT_ORDER_CAP;
use primcover_core::io::{
    from_json, ActionReportJson, GenusReportJson, GroupJson, SubgroupJson, TupleJson,
};
use primcover_core::lattice::DEFAULT_LATTICE_CAP;
use primcover_core::{genus_from_action, natural_action, omega_ell_action, table1};
pub use primcover_core::{Error, GroupAction, Lattice, PermGroup, Permutation, VerifyReport};
use serde_json::{json, Value};

pub use config::{Caps, Cli, Command, OutputFormat, Parent, RunConfig, Which};
pub use primcover_core::{
    BlockSystem, CycleType, GenusReport, MonodromyTuple, Rational, SubgroupClass, Table1Row,
};

/// A bad invocation that clap could not catch; exits with code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Rendered output and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

/// 2 for usage errors (including unsupported degrees), 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::UnsupportedDegree(..) | Error::BadDegree(_) | Error::BadEll { .. }) => 2,
        _ => 1,
    }
}

/// Message naming the violated condition, e.g. `... (ProductNotIdentity)`.
pub fn error_message(err: &anyhow::Error) -> String {
    match err.downcast_ref::<Error>() {
        Some(e) => {
            let debug = format!("{e:?}");
            let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
            format!("{err:#} ({name})")
        }
        None => format!("{err:#}"),
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Table1 { n } => cmd_table1(cfg, n),
        Command::Verify { n, which } => cmd_verify(cfg, n, *which),
        Command::Genus {
            input,
            subgroup,
            random,
        } => cmd_genus(cfg, input, subgroup, *random),
        Command::Subgroups {
            n,
            parent,
            transitive,
            maximal,
        } => cmd_subgroups(cfg, *n, *parent, *transitive, *maximal),
        Command::Action {
            input,
            n,
            parent,
            subgroup,
            ell,
            element,
        } => {
            let group = match (input, n) {
                (Some(path), _) => read_group(path)?,
                (None, Some(n)) => parent_group(*n, *parent)?,
                (None, None) => return Err(Usage("action needs --input or --n".into()).into()),
            };
            cmd_action(cfg, &group, subgroup.as_deref(), *ell, element.as_deref())
        }
        Command::Primitive {
            input,
            degree,
            gens,
        } => {
            let group = match (input, degree, gens) {
                (Some(path), _, _) => read_group(path)?,
                (None, Some(d), Some(g)) => parse_gens(*d, g)?,
                _ => {
                    return Err(
                        Usage("primitive needs --input or --degree with --gens".into()).into(),
                    )
                }
            };
            cmd_primitive(cfg, &group)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())).into())
}

fn read_group(path: &Path) -> Result<PermGroup> {
    let file: GroupJson = from_json(&read_text(path)?)?;
    Ok(file.to_group()?)
}

fn parse_gens(degree: usize, text: &str) -> Result<PermGroup> {
    let gens = text
        .split(';')
        .map(|s| Permutation::parse_cycles(s, degree))
        .collect::<primcover_core::Result<Vec<_>>>()?;
    Ok(PermGroup::from_generators(gens)?)
}

fn parent_group(n: usize, parent: Parent) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::ZeroDegree.into());
    }
    Ok(match parent {
        Parent::Sn => PermGroup::symmetric(n),
        Parent::An => PermGroup::alternating(n),
    })
}

fn check_order(cfg: &RunConfig, g: &PermGroup) -> Result<()> {
    let cap = cfg.caps.order.unwrap_or(DEFAULT_ORDER_CAP);
    if g.order() > cap {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap,
        }
        .into());
    }
    Ok(())
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn cmd_table1(cfg: &RunConfig, ns: &[usize]) -> Result<Outcome> {
    for &n in ns {
        if !(5..=7).contains(&n) {
            return Err(Error::UnsupportedDegree(n, "5 <= n <= 7").into());
        }
        check_order(cfg, &PermGroup::symmetric(n))?;
    }
    let rows = table1(ns)?;
    let all_positive = rows.iter().all(|r| r.margin > 0.into());
    let output = match cfg.output_format {
        OutputFormat::Json => to_json(&Value::Array(rows.iter().map(|r| r.to_json()).collect())),
        OutputFormat::Table => render::table(
            &["n", "H", "|H|", "[S_n:H]", "ind", "rho", "rho - 2/(2n+1)"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.name.clone(),
                        r.order.to_string(),
                        r.index.to_string(),
                        r.min_index.to_string(),
                        ratio_string(&r.rho),
                        ratio_string(&r.margin),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome {
        output,
        code: if all_positive { 0 } else { 1 },
    })
}

fn cmd_verify(cfg: &RunConfig, ns: &[usize], which: Which) -> Result<Outcome> {
    let mut reports: Vec<VerifyReport> = Vec::new();
    for &n in ns {
        let report = match which {
            Which::LemmaFpr => verify_lemma_fpr(n),
            Which::LemmaInd => verify_lemma_ind(n),
            Which::LemmaIndfpr => verify_index_fpr(n),
            Which::Bg => verify_bg(n),
            Which::Primmax => verify_primmax(n),
        }?;
        reports.push(report);
    }
    let pass = reports.iter().all(|r| r.pass);
    let output = match cfg.output_format {
        OutputFormat::Json => to_json(&serde_json::to_value(&reports)?),
        OutputFormat::Table => {
            let mut out = String::new();
            for r in &reports {
                let rows: Vec<Vec<String>> = r
                    .checks
                    .iter()
                    .map(|c| {
                        vec![
                            if c.pass { "PASS" } else { "FAIL" }.to_string(),
                            c.case.clone(),
                            c.subject.clone(),
                            c.value.clone(),
                            c.bound.clone(),
                            c.note.clone().unwrap_or_default(),
                        ]
                    })
                    .collect();
                out.push_str(&format!("{} n = {}\n", r.which, r.n));
                out.push_str(&render::table(
                    &["result", "case", "subject", "value", "bound", "note"],
                    &rows,
                ));
                out.push_str(&format!(
                    "{}: {} checks, {}\n\n",
                    r.which,
                    r.checks.len(),
                    if r.pass { "all pass" } else { "FAILURES" }
                ));
            }
            out.push_str(if pass {
                "overall: pass\n"
            } else {
                "overall: FAIL\n"
            });
            out
        }
    };
    Ok(Outcome {
        output,
        code: if pass { 0 } else { 1 },
    })
}

fn cmd_genus(
    cfg: &RunConfig,
    input: &Path,
    subgroup: &str,
    random: Option<usize>,
) -> Result<Outcome> {
    let text = read_text(input)?;
    let tuple = match random {
        Some(r) => {
            let group = from_json::<GroupJson>(&text)?.to_group()?;
            check_order(cfg, &group)?;
            sample_tuple_seeded(&group, r, cfg.seed.unwrap_or(0))?
        }
        None => from_json::<TupleJson>(&text)?.to_tuple()?,
    };
    let g = tuple.group();
    check_order(cfg, g)?;
    let h = match subgroup.trim() {
        "trivial" => PermGroup::trivial(g.degree()),
        "stab" => g.point_stabilizer(0),
        "whole" => g.clone(),
        gens => parse_gens(g.degree(), gens).context("parsing --subgroup")?,
    };
    let cap = cfg.caps.index.unwrap_or(DEFAULT_INDEX_CAP);
    let action = coset_action_with_cap(g, &h, cap)?;
    let report = genus_from_action(&tuple, &action)?;
    let json = GenusReportJson::from(&report);
    let output = match cfg.output_format {
        OutputFormat::Json => {
            let mut v = serde_json::to_value(&json)?;
            if random.is_some() {
                v["tuple"] = serde_json::to_value(TupleJson::from_tuple(&tuple))?;
            }
            to_json(&v)
        }
        OutputFormat::Table => {
            let mut pairs = Vec::new();
            if random.is_some() {
                let b: Vec<String> = tuple.branches().iter().map(|p| p.to_string()).collect();
                pairs.push(("branches", b.join(" ")));
            }
            pairs.extend([
                ("index", json.index.to_string()),
                (
                    "branch_indices",
                    json.branch_indices
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ),
                ("genus", json.genus.to_string()),
                ("rho", json.rho.clone()),
            ]);
            render::key_values(&pairs)
        }
    };
    Ok(Outcome::ok(output))
}

fn cmd_subgroups(
    cfg: &RunConfig,
    n: usize,
    parent: Parent,
    transitive: bool,
    maximal: bool,
) -> Result<Outcome> {
    let group = parent_group(n, parent)?;
    let lattice = Lattice::build_with_caps(
        &group,
        cfg.caps.lattice.unwrap_or(DEFAULT_LATTICE_CAP),
        cfg.caps.index.unwrap_or(DEFAULT_INDEX_CAP),
    )?;
    let parent_name = match parent {
        Parent::Sn => format!("S_{n}"),
        Parent::An => format!("A_{n}"),
    };
    let listing: Vec<SubgroupJson> = lattice
        .classes()
        .iter()
        .filter(|c| !transitive || c.is_transitive)
        .filter(|c| !maximal || c.maximal_in.parent)
        .map(|c| SubgroupJson::from_class(c, &parent_name))
        .collect();
    let output = match cfg.output_format {
        OutputFormat::Json => to_json(&serde_json::to_value(&listing)?),
        OutputFormat::Table => render::table(
            &[
                "order",
                "index",
                "transitive",
                "maximal_in",
                "class_size",
                "name",
                "generators",
            ],
            &listing
                .iter()
                .map(|s| {
                    vec![
                        s.order.to_string(),
                        s.index.to_string(),
                        s.transitive.to_string(),
                        if s.maximal_in.is_empty() {
                            "-".into()
                        } else {
                            s.maximal_in.join(",")
                        },
                        s.class_size.to_string(),
                        s.name.clone(),
                        s.generators.join(" "),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::ok(output))
}

fn cmd_action(
    cfg: &RunConfig,
    group: &PermGroup,
    subgroup: Option<&str>,
    ell: Option<usize>,
    element: Option<&str>,
) -> Result<Outcome> {
    check_order(cfg, group)?;
    let action: GroupAction = match (subgroup, ell) {
        (Some(gens), _) => {
            let h = parse_gens(group.degree(), gens).context("parsing --subgroup")?;
            coset_action_with_cap(group, &h, cfg.caps.index.unwrap_or(DEFAULT_INDEX_CAP))?
        }
        (None, Some(ell)) => omega_ell_action(group.degree(), ell, group)?,
        (None, None) => natural_action(group),
    };
    let reports = match element {
        Some(text) => {
            vec![action.element_report(&Permutation::parse_cycles(text, group.degree())?)?]
        }
        None => action.class_reports()?,
    };
    let reports: Vec<ActionReportJson> = reports.iter().map(ActionReportJson::from).collect();
    let (min_index, max_fpr) = if group.is_trivial() {
        (None, None)
    } else {
        (
            Some(action.min_index()?.value),
            Some(ratio_string(&action.max_fpr()?.value)),
        )
    };
    let transitive = action.is_transitive();
    let primitive = action.is_primitive()?;
    let faithful = action.is_faithful()?;
    let output = match cfg.output_format {
        OutputFormat::Json => to_json(&json!({
            "size": action.size(),
            "transitive": transitive,
            "primitive": primitive,
            "faithful": faithful,
            "min_index": min_index,
            "max_fpr": max_fpr,
            "reports": reports,
        })),
        OutputFormat::Table => {
            let mut out = render::key_values(&[
                ("size", action.size().to_string()),
                ("transitive", transitive.to_string()),
                ("primitive", primitive.to_string()),
                ("faithful", faithful.to_string()),
                ("min_index", min_index.map_or("-".into(), |v| v.to_string())),
                ("max_fpr", max_fpr.unwrap_or_else(|| "-".into())),
            ]);
            out.push('\n');
            out.push_str(&render::table(
                &["element", "fix", "fpr", "orbits", "ind"],
                &reports
                    .iter()
                    .map(|r| {
                        vec![
                            r.element.clone(),
                            r.fix.to_string(),
                            r.fpr.clone(),
                            r.orbits.to_string(),
                            r.ind.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ));
            out
        }
    };
    Ok(Outcome::ok(output))
}

fn cmd_primitive(cfg: &RunConfig, group: &PermGroup) -> Result<Outcome> {
    let transitive = group.is_transitive();
    let blocks: Option<Vec<Vec<usize>>> = group.block_witness().map(|bs| {
        bs.blocks
            .iter()
            .map(|b| b.iter().map(|&x| x + 1).collect())
            .collect()
    });
    let primitive = group.is_primitive();
    let output = match cfg.output_format {
        OutputFormat::Json => to_json(&json!({
            "degree": group.degree(),
            "order": group.order(),
            "transitive": transitive,
            "primitive": primitive,
            "blocks": blocks,
        })),
        OutputFormat::Table => render::key_values(&[
            ("degree", group.degree().to_string()),
            ("order", group.order().to_string()),
            ("transitive", transitive.to_string()),
            ("primitive", primitive.to_string()),
            (
                "blocks",
                blocks.map_or("-".into(), |bs| {
                    bs.iter()
                        .map(|b| {
                            let pts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                            format!("{{{}}}", pts.join(","))
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                }),
            ),
        ]),
    };
    Ok(Outcome::ok(output))
}
