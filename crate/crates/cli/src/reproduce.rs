//! Named reproduction runs. Each run builds its inputs from the built-in
//! catalog, checks the expected numbers and records a manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use sdkit_core::construction::{a3, even_neighbors, straight_twisted};
use sdkit_core::frames::{classify_lattice, classify_length, ClassifyOptions};
use sdkit_core::gf3::{are_equivalent, e4_power, eq2_code, g12, TernaryCode};
use sdkit_core::lattice::{is_isomorphic, root_system, LatticeGram};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{builtin, length12_lattices, Catalog, CatalogEntry, Payload, Provenance};

pub const SCRIPTS: &[&str] = &["mass4", "length12", "niemeier-a24", "d24", "row154"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

/// Deterministic result of a run; its hash is the manifest output hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub script: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    /// sha256 of each input entry file, by entry name.
    pub input_hashes: BTreeMap<String, String>,
    pub timestamp: u64,
    pub output_hash: String,
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn hashes(inputs: &Catalog) -> BTreeMap<String, String> {
    inputs
        .entries()
        .iter()
        .map(|e| (e.name.clone(), sha256_hex(e.to_text().as_bytes())))
        .collect()
}

fn lattice_input(name: &str, l: LatticeGram) -> Result<Catalog> {
    let mut c = Catalog::new();
    c.push(CatalogEntry::lattice(name, l, Provenance::BuiltIn))?;
    Ok(c)
}

fn code_input(name: &str, code: TernaryCode) -> Result<Catalog> {
    let mut c = Catalog::new();
    c.push(CatalogEntry::code(name, code, Provenance::BuiltIn))?;
    Ok(c)
}

fn builtin_lattice(name: &str) -> Result<LatticeGram> {
    let cat = builtin()?;
    cat.lattices()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, l)| l)
        .context("missing built-in lattice")
}

/// Runs `script` and returns its inputs and outcome.
pub fn run(script: &str) -> Result<(Catalog, Outcome)> {
    let mut checks = Vec::new();
    let inputs = match script {
        "mass4" => {
            let inputs = lattice_input("Z^4", builtin_lattice("Z^4")?)?;
            let r = classify_length(4, &inputs.lattices(), ClassifyOptions::default())?;
            let codes = r.lattices.first().map_or(&[][..], |l| &l.codes[..]);
            checks.push(Check::new("codes", 1, codes.len()));
            checks.push(Check::new(
                "#Aut",
                "48",
                codes.first().map_or("", |c| c.aut_order.as_str()),
            ));
            checks.push(Check::new("mass", &r.mass.expected, &r.mass.total));
            checks.push(Check::new("N(4)", "8", &r.mass.expected));
            inputs
        }
        "length12" => {
            let inputs = length12_lattices()?;
            let r = classify_length(12, &inputs.lattices(), ClassifyOptions::default())?;
            checks.push(Check::new("mass", "44817920", &r.mass.total));
            checks.push(Check::new("N(12)", "44817920", &r.mass.expected));
            let d12 = match inputs.get("D12+").map(|e| &e.payload) {
                Some(Payload::Lattice(l)) => l.clone(),
                _ => bail!("D12+ missing from the length-12 catalog"),
            };
            let d = classify_lattice("D12+", &d12)?;
            checks.push(Check::new("codes with A3 = D12+", 1, d.codes.len()));
            let golay = d
                .codes
                .first()
                .map(|c| are_equivalent(&c.code, &g12()))
                .transpose()?
                .flatten()
                .is_some();
            checks.push(Check::new("code for D12+ is G12", true, golay));
            inputs
        }
        "niemeier-a24" => {
            let inputs = code_input("A24-code", eq2_code())?;
            let lt = straight_twisted(&eq2_code())?.second.lattice;
            checks.push(Check::new("L_T even", true, lt.is_even()));
            checks.push(Check::new("L_T unimodular", true, lt.is_unimodular()));
            let roots = root_system(&lt)?;
            checks.push(Check::new("roots", 600, roots.root_count()));
            checks.push(Check::new("root system", "A24", roots));
            inputs
        }
        "d24" => {
            let inputs = code_input("E4^6", e4_power(6))?;
            let p = even_neighbors(&a3(&e4_power(6))?)?;
            for (tag, nb) in [("first", &p.first), ("second", &p.second)] {
                let r = root_system(&nb.lattice)?;
                checks.push(Check::new(
                    &format!("{tag} neighbor root system"),
                    "D24",
                    &r,
                ));
                checks.push(Check::new(
                    &format!("{tag} neighbor roots"),
                    1104,
                    r.root_count(),
                ));
            }
            let iso = is_isomorphic(&p.first.lattice, &p.second.lattice)?.is_some();
            checks.push(Check::new("neighbors isomorphic", true, iso));
            inputs
        }
        "row154" => {
            let inputs = lattice_input("L_{24,154}", builtin_lattice("L_{24,154}")?)?;
            let c = classify_lattice("L_{24,154}", &inputs.lattices()[0].1)?;
            checks.push(Check::new("N", 1, c.codes.len()));
            let aut = c
                .codes
                .first()
                .map(|c| c.aut_order.to_string())
                .unwrap_or_default();
            checks.push(Check::new("#Aut", "72260812800", aut));
            let g = g12().direct_sum(&g12());
            let eq = c
                .codes
                .first()
                .map(|c| are_equivalent(&c.code, &g))
                .transpose()?
                .flatten()
                .is_some();
            checks.push(Check::new("code is G12+G12", true, eq));
            inputs
        }
        other => bail!(
            "unknown script {other:?}; available: {}",
            SCRIPTS.join(", ")
        ),
    };
    let pass = checks.iter().all(|c| c.pass);
    Ok((
        inputs,
        Outcome {
            script: script.into(),
            checks,
            pass,
        },
    ))
}

/// Runs `script`, writes `<script>.json` and `<script>.manifest.json` into
/// `out_dir`, and returns the manifest and outcome.
pub fn reproduce(script: &str, out_dir: &Path) -> Result<(RunManifest, Outcome, PathBuf)> {
    let (inputs, outcome) = run(script)?;
    let output = serde_json::to_string_pretty(&outcome)? + "\n";
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    fs::write(out_dir.join(format!("{script}.json")), &output)?;
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: format!("sdkit reproduce {script}"),
        input_hashes: hashes(&inputs),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        output_hash: sha256_hex(output.as_bytes()),
    };
    let path = out_dir.join(format!("{script}.manifest.json"));
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok((manifest, outcome, path))
}
