//! Report serialization. JSON keys appear in struct field order and every
//! number is an integer or a `p/q` string, so a parsed report re-serializes
//! to the same bytes.

use std::fmt::Write as _;

use mfhh_core::{AbelianGroupStructure, EngineKind, Error, GroupElement, HHContribution, HHEngine, HHReport, Phase, Summand};
use serde::{Deserialize, Serialize};

use crate::Format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub exponents: Vec<u32>,
    pub stabilized: bool,
    pub kerchi_order: u64,
    pub milnor: u64,
    pub hh: Vec<JsonDegree>,
    pub engine: EngineKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDegree {
    pub k: i64,
    pub dim: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<JsonWitness>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonWitness {
    pub gamma: usize,
    pub phases: Vec<String>,
    pub fixed: Vec<usize>,
    pub summand: Summand,
    /// Indexed by variable; slot 0 is the z0 exponent.
    pub exponents: Vec<u32>,
    pub u: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub exponents: Vec<u32>,
    pub stabilized: bool,
    pub character_group: AbelianGroupJson,
    pub quotient_by_chi: AbelianGroupJson,
    pub kerchi_order: u64,
    pub elements: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupJson {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl From<AbelianGroupStructure> for AbelianGroupJson {
    fn from(s: AbelianGroupStructure) -> Self {
        AbelianGroupJson {
            free_rank: s.free_rank,
            torsion: s.torsion,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub index: usize,
    pub phases: Vec<String>,
    pub fixed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorJson {
    pub exponents: Vec<u32>,
    pub stabilized: bool,
    pub milnor: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub exponents: Vec<u32>,
    pub stabilized: bool,
    pub status: String,
    pub checks: Vec<CheckJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub k: i64,
    pub computed: u64,
    pub expected: u64,
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types always serialize");
    s.push('\n');
    s
}

fn phase_str(q: &Phase) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn phase_strings(g: &GroupElement) -> Vec<String> {
    g.phases().iter().map(phase_str).collect()
}

fn var_list(vars: &[usize]) -> String {
    let names: Vec<String> = vars.iter().map(|j| format!("z{j}")).collect();
    format!("{{{}}}", names.join(","))
}

fn monomial(exponents: &[u32]) -> String {
    let factors: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(j, &a)| if a == 1 { format!("z{j}") } else { format!("z{j}^{a}") })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

pub fn json_report(engine: &HHEngine, rep: &HHReport) -> JsonReport {
    let group = engine.group();
    let witness = |c: &HHContribution| JsonWitness {
        gamma: c.gamma,
        phases: phase_strings(&group[c.gamma]),
        fixed: group[c.gamma].fixed_set().to_vec(),
        summand: c.summand,
        exponents: c.exponents.clone(),
        u: c.u,
    };
    JsonReport {
        exponents: rep.exponents.clone(),
        stabilized: rep.stabilized,
        kerchi_order: rep.kerchi_order,
        milnor: rep.milnor,
        hh: rep
            .degrees
            .iter()
            .map(|d| JsonDegree {
                k: d.k,
                dim: d.dim,
                witnesses: d.witnesses.as_ref().map(|w| w.iter().map(witness).collect()),
            })
            .collect(),
        engine: rep.engine,
    }
}

pub fn write_hh(engine: &HHEngine, rep: &HHReport, format: Format, out: &mut String) {
    match format {
        Format::Json => out.push_str(&to_json(&json_report(engine, rep))),
        Format::Csv => {
            writeln!(out, "k,dim").unwrap();
            for d in &rep.degrees {
                writeln!(out, "{},{}", d.k, d.dim).unwrap();
            }
        }
        Format::Table => {
            let group = engine.group();
            writeln!(out, "polynomial: {}", engine.polynomial()).unwrap();
            writeln!(out, "|ker chi| = {}, mu = {}", rep.kerchi_order, rep.milnor).unwrap();
            writeln!(out, "{:>6} {:>8}", "k", "dim").unwrap();
            for d in &rep.degrees {
                writeln!(out, "{:>6} {:>8}", d.k, d.dim).unwrap();
                for c in d.witnesses.iter().flatten() {
                    let g = &group[c.gamma];
                    writeln!(
                        out,
                        "{:>16} gamma #{} phases ({}) V={} {} u={} {}",
                        "",
                        c.gamma,
                        phase_strings(g).join(","),
                        var_list(g.fixed_set()),
                        crate::summand_label(c.summand),
                        c.u,
                        monomial(&c.exponents),
                    )
                    .unwrap();
                }
            }
        }
    }
}

pub fn write_group(engine: &HHEngine, format: Format, out: &mut String) -> Result<(), Error> {
    let lat = engine.lattice();
    let p = engine.polynomial();
    let structure = lat.structure();
    let quotient = lat.quotient_by_chi()?;
    let group = engine.group();
    match format {
        Format::Json => {
            let v = GroupJson {
                exponents: p.exponents().to_vec(),
                stabilized: p.is_stabilized(),
                character_group: structure.into(),
                quotient_by_chi: quotient.into(),
                kerchi_order: group.len() as u64,
                elements: group
                    .iter()
                    .enumerate()
                    .map(|(i, g)| ElementJson {
                        index: i,
                        phases: phase_strings(g),
                        fixed: g.fixed_set().to_vec(),
                    })
                    .collect(),
            };
            out.push_str(&to_json(&v));
        }
        Format::Csv => {
            let vars: Vec<String> = lat.variables().map(|j| format!("q{j}")).collect();
            writeln!(out, "index,{},fixed", vars.join(",")).unwrap();
            for (i, g) in group.iter().enumerate() {
                let fixed: Vec<String> = g.fixed_set().iter().map(|j| j.to_string()).collect();
                writeln!(out, "{},{},{}", i, phase_strings(g).join(","), fixed.join(" ")).unwrap();
            }
        }
        Format::Table => {
            writeln!(out, "polynomial: {p}").unwrap();
            writeln!(out, "generators: {}", lat.generator_labels().join(", ")).unwrap();
            writeln!(out, "character group: {structure}").unwrap();
            writeln!(out, "quotient by chi: {quotient}").unwrap();
            writeln!(out, "|ker chi| = {}", group.len()).unwrap();
            let vars: Vec<String> = lat.variables().map(|j| format!("z{j}")).collect();
            writeln!(out, "{:>6}  phases ({})  fixed", "#", vars.join(",")).unwrap();
            for (i, g) in group.iter().enumerate() {
                writeln!(out, "{:>6}  ({})  {}", i, phase_strings(g).join(","), var_list(g.fixed_set())).unwrap();
            }
        }
    }
    Ok(())
}
