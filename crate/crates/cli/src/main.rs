use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdkit::catalog::{builtin, ingest, Catalog, CatalogEntry, Payload, Provenance};
use sdkit::report::{render_json, render_length, render_table};
use sdkit::reproduce::reproduce;
use sdkit_core::construction::{a3, admissible, even_neighbors, lemma1_check, straight_twisted};
use sdkit_core::frames::{
    build_gamma_with, classify_lattice_with, classify_length, enumerate_frames_with,
    ClassificationReport, ClassifyOptions, SearchOptions,
};
use sdkit_core::gf3::{
    are_equivalent, automorphism_group as code_aut, decompose, mass_check, minimum_weight,
    weight_distribution, MassEntry, MonomialTransform, TernaryCode,
};
use sdkit_core::lattice::{
    automorphism_group, is_isomorphic, p_neighbor, root_system, shadow, short_vectors, LatticeGram,
};

/// Ternary self-dual codes, odd unimodular lattices and their 3-frames.
#[derive(Parser)]
#[command(name = "sdkit", version)]
struct Cli {
    /// Print JSON instead of text where a command has structured output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Code utilities.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Lattice utilities.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Construction A of a self-dual code.
    ConsA {
        file: PathBuf,
        /// Check α₁ = β₃ and α₂ = β₆ + 3β₃ instead of printing the Gram matrix.
        #[arg(long)]
        lemma1: bool,
    },
    /// Neighbors of a code (straight/twisted) or of a lattice (even).
    Neighbor(NeighborArgs),
    /// Frame graph and frame orbits of a lattice.
    #[command(subcommand)]
    Frames(FramesCmd),
    /// Classify the codes of a lattice, or of every lattice in a catalog.
    Classify(ClassifyArgs),
    /// Validate catalog files and optionally rewrite them.
    Ingest {
        path: PathBuf,
        /// Write the validated catalog to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add the built-in entries.
        #[arg(long)]
        builtin: bool,
    },
    /// Render persisted classification reports as a table.
    Report { files: Vec<PathBuf> },
    /// Run a named reproduction script and write its manifest.
    Reproduce {
        script: String,
        #[arg(long, default_value = "runs")]
        out: PathBuf,
    },
    /// Write randomly transformed copies of the built-in catalog.
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Copies per entry.
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Weight distribution.
    Wenum { file: PathBuf },
    /// Order and generators of the monomial automorphism group.
    Aut { file: PathBuf },
    /// Monomial equivalence.
    Equiv { file1: PathBuf, file2: PathBuf },
    /// Indecomposable components.
    Decompose { file: PathBuf },
    /// Mass formula check over a list of codes of length `n`.
    Mass {
        #[arg(short)]
        n: usize,
        files: Vec<PathBuf>,
    },
    /// Admissibility of a code containing the all-ones word.
    Admissible { file: PathBuf },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Vectors up to a norm, one of each ± pair.
    Shortvec {
        file: PathBuf,
        #[arg(long)]
        max_norm: i64,
    },
    /// Shadow decomposition.
    Shadow { file: PathBuf },
    /// Isometry test.
    Iso { file1: PathBuf, file2: PathBuf },
    /// Automorphism group order.
    Aut { file: PathBuf },
    /// Root system of the norm-1 and norm-2 vectors.
    Rootsys { file: PathBuf },
    /// p-neighbor along a vector.
    Neighbor {
        file: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        vector: Vec<i64>,
        #[arg(short, default_value_t = 2)]
        p: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NeighborArgs {
    #[arg(long, value_name = "CODEFILE")]
    straight: Option<PathBuf>,
    #[arg(long, value_name = "CODEFILE")]
    twisted: Option<PathBuf>,
    #[arg(long, value_name = "LATTICEFILE")]
    even: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FramesCmd {
    /// Size of the frame graph.
    Graph {
        file: PathBuf,
        #[arg(long)]
        no_shadow_filter: bool,
    },
    /// Frame orbits under the automorphism group.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        no_shadow_filter: bool,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, conflicts_with_all = ["length", "catalog"])]
    lattice: Option<PathBuf>,
    #[arg(long, requires = "catalog")]
    length: Option<usize>,
    #[arg(long, requires = "length")]
    catalog: Option<PathBuf>,
    #[arg(long)]
    no_shadow_filter: bool,
    /// Search the whole lattice even when it splits.
    #[arg(long)]
    no_blockwise: bool,
}

fn read_code(path: &Path) -> Result<TernaryCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(TernaryCode::parse(&text)
        .with_context(|| path.display().to_string())?
        .0)
}

fn read_lattice(path: &Path) -> Result<(LatticeGram, String)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (l, name) = LatticeGram::parse(&text).with_context(|| path.display().to_string())?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("L")
        .to_string();
    Ok((l, name.unwrap_or(stem)))
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn classify_options(no_shadow_filter: bool, no_blockwise: bool) -> ClassifyOptions {
    ClassifyOptions {
        shadow_filter: !no_shadow_filter,
        blockwise: !no_blockwise,
        ..Default::default()
    }
}

fn run_code(cmd: CodeCmd, json: bool) -> Result<bool> {
    match cmd {
        CodeCmd::Wenum { file } => {
            let w = weight_distribution(&read_code(&file)?)?;
            if json {
                print_json(&w)?;
            } else {
                for (i, &a) in w.0.iter().enumerate().filter(|(_, &a)| a > 0) {
                    println!("{i} {a}");
                }
            }
        }
        CodeCmd::Aut { file } => {
            let a = code_aut(&read_code(&file)?)?;
            if json {
                print_json(&a)?;
            } else {
                println!("{}", a.order);
            }
        }
        CodeCmd::Equiv { file1, file2 } => {
            let t = are_equivalent(&read_code(&file1)?, &read_code(&file2)?)?;
            if json {
                print_json(&t)?;
            } else {
                println!(
                    "{}",
                    if t.is_some() {
                        "equivalent"
                    } else {
                        "inequivalent"
                    }
                );
            }
            return Ok(t.is_some());
        }
        CodeCmd::Decompose { file } => {
            for c in decompose(&read_code(&file)?) {
                let d = minimum_weight(&c.code)?.map_or("-".to_string(), |d| d.to_string());
                println!(
                    "{:?} [{}, {}, {d}]",
                    c.support,
                    c.code.length(),
                    c.code.dimension()
                );
            }
        }
        CodeCmd::Mass { n, files } => {
            let mut entries = Vec::new();
            for f in &files {
                let code = read_code(f)?;
                let aut_order = code_aut(&code)?.order;
                entries.push(MassEntry { code, aut_order });
            }
            let r = mass_check(&entries, n)?;
            if json {
                print_json(&r)?;
            } else {
                println!(
                    "total {} expected {} {}",
                    r.total,
                    r.expected,
                    if r.pass { "PASS" } else { "FAIL" }
                );
            }
            return Ok(r.pass);
        }
        CodeCmd::Admissible { file } => {
            let r = admissible(&read_code(&file)?)?;
            if json {
                print_json(&r)?;
            } else {
                println!(
                    "{}",
                    if r.admissible {
                        "admissible"
                    } else {
                        "not admissible"
                    }
                );
                if let Some(v) = &r.first_negative {
                    let s: String = v.iter().map(|&x| char::from(b'0' + x)).collect();
                    println!("full-weight word with product -1: {s}");
                }
            }
        }
    }
    Ok(true)
}

fn run_lattice(cmd: LatticeCmd, json: bool) -> Result<bool> {
    match cmd {
        LatticeCmd::Shortvec { file, max_norm } => {
            let vs = short_vectors(&read_lattice(&file)?.0, max_norm)?;
            if json {
                print_json(&vs)?;
            } else {
                for v in vs {
                    let c: Vec<String> = v.coords.iter().map(|x| x.to_string()).collect();
                    println!("{} {}", v.norm, c.join(" "));
                }
            }
        }
        LatticeCmd::Shadow { file } => print_json(&shadow(&read_lattice(&file)?.0)?)?,
        LatticeCmd::Iso { file1, file2 } => {
            let w = is_isomorphic(&read_lattice(&file1)?.0, &read_lattice(&file2)?.0)?;
            if json {
                print_json(&w)?;
            } else {
                println!(
                    "{}",
                    if w.is_some() {
                        "isometric"
                    } else {
                        "not isometric"
                    }
                );
            }
            return Ok(w.is_some());
        }
        LatticeCmd::Aut { file } => {
            let a = automorphism_group(&read_lattice(&file)?.0)?;
            if json {
                print_json(&a)?;
            } else {
                println!("{}", a.order);
            }
        }
        LatticeCmd::Rootsys { file } => {
            let r = root_system(&read_lattice(&file)?.0)?;
            if json {
                print_json(&r)?;
            } else {
                println!("{r} ({} roots)", r.root_count());
            }
        }
        LatticeCmd::Neighbor { file, vector, p } => {
            let (l, name) = read_lattice(&file)?;
            let nb = p_neighbor(&l, &vector, p)?;
            print!("# name: {name}-nb\n{}", nb.to_text());
        }
    }
    Ok(true)
}

fn run_frames(cmd: FramesCmd, json: bool) -> Result<bool> {
    match cmd {
        FramesCmd::Graph {
            file,
            no_shadow_filter,
        } => {
            let g = build_gamma_with(&read_lattice(&file)?.0, !no_shadow_filter)?;
            println!("vertices {}", g.len());
            println!("edges {}", g.edge_count());
            println!("filtered {}", g.filtered_count());
        }
        FramesCmd::Enumerate {
            file,
            no_shadow_filter,
        } => {
            let l = read_lattice(&file)?.0;
            let g = build_gamma_with(&l, !no_shadow_filter)?;
            let aut = automorphism_group(&l)?;
            let e = enumerate_frames_with(&g, &aut, SearchOptions::default())?;
            if json {
                let rows: Vec<_> = e
                    .orbits
                    .iter()
                    .map(|o| (&o.frame, o.orbit_size.to_string()))
                    .collect();
                print_json(&rows)?;
            } else {
                println!("#Aut(L) {}", aut.order);
                println!("frame orbits {}", e.orbits.len());
                for o in &e.orbits {
                    println!("orbit size {}", o.orbit_size);
                }
            }
        }
    }
    Ok(true)
}

fn run_classify(a: ClassifyArgs, json: bool) -> Result<bool> {
    let opts = classify_options(a.no_shadow_filter, a.no_blockwise);
    if let Some(file) = a.lattice {
        let (l, name) = read_lattice(&file)?;
        let r = classify_lattice_with(&name, &l, opts)?.report();
        if json {
            print!("{}", render_json(&[r])?);
        } else {
            print!("{}", render_table(&[r]));
        }
        return Ok(true);
    }
    let (Some(n), Some(dir)) = (a.length, a.catalog) else {
        bail!("give --lattice FILE or --length N --catalog DIR");
    };
    let cat = ingest(&dir)?;
    let r = classify_length(n, &cat.lattices(), opts)?;
    if json {
        print_json(&r)?;
    } else {
        print!("{}", render_length(&r));
    }
    Ok(r.mass.pass)
}

fn run_report(files: &[PathBuf], json: bool) -> Result<bool> {
    let mut all: Vec<ClassificationReport> = Vec::new();
    for f in files {
        let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        let v: serde_json::Value =
            serde_json::from_str(&text).with_context(|| f.display().to_string())?;
        // a single report, a list of reports, or a length report
        if let Some(ls) = v.get("lattices") {
            all.extend(serde_json::from_value::<Vec<ClassificationReport>>(
                ls.clone(),
            )?);
        } else if v.is_array() {
            all.extend(serde_json::from_value::<Vec<ClassificationReport>>(v)?);
        } else {
            all.push(serde_json::from_value(v)?);
        }
    }
    if json {
        print!("{}", render_json(&all)?);
    } else {
        print!("{}", render_table(&all));
    }
    Ok(true)
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let c = rng.gen_range(-1i64..=1);
            for k in 0..n {
                u[i][k] += c * u[j][k];
            }
        }
    }
    u.shuffle(rng);
    u
}

fn corpus(seed: u64, out: &Path, copies: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cat = Catalog::new();
    for e in builtin()?.entries() {
        for k in 0..copies {
            let name = format!("{}~{k}", e.name);
            let entry = match &e.payload {
                Payload::Code(c) => {
                    let n = c.length();
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    let signs = (0..n).map(|_| rng.gen_range(1u8..=2)).collect();
                    let t = MonomialTransform::new(perm, signs).context("monomial map")?;
                    CatalogEntry::code(&name, c.transform(&t), Provenance::File)
                }
                Payload::Lattice(l) => {
                    let u = random_unimodular(l.rank(), &mut rng);
                    CatalogEntry::lattice(&name, l.transform(&u)?, Provenance::File)
                }
            };
            cat.push(entry)?;
        }
    }
    cat.write(out)
}

fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Code(c) => run_code(c, json),
        Cmd::Lattice(c) => run_lattice(c, json),
        Cmd::ConsA { file, lemma1 } => {
            let code = read_code(&file)?;
            if lemma1 {
                let r = lemma1_check(&code)?;
                if json {
                    print_json(&r)?;
                } else {
                    println!(
                        "alpha1 {} beta3 {} alpha2 {} beta6 {} {}",
                        r.alpha1,
                        r.beta3,
                        r.alpha2,
                        r.beta6,
                        if r.holds { "PASS" } else { "FAIL" }
                    );
                }
                return Ok(r.holds);
            }
            print!("{}", a3(&code)?.to_text());
            Ok(true)
        }
        Cmd::Neighbor(a) => {
            let pair = if let Some(f) = a.even {
                even_neighbors(&read_lattice(&f)?.0)?
            } else {
                let f = a
                    .straight
                    .as_ref()
                    .or(a.twisted.as_ref())
                    .context("no input file")?;
                straight_twisted(&read_code(f)?)?
            };
            let chosen = if a.straight.is_some() {
                vec![pair.first]
            } else if a.twisted.is_some() {
                vec![pair.second]
            } else {
                vec![pair.first, pair.second]
            };
            for nb in chosen {
                print!("# name: {:?}\n{}", nb.label, nb.lattice.to_text());
            }
            Ok(true)
        }
        Cmd::Frames(c) => run_frames(c, json),
        Cmd::Classify(a) => run_classify(a, json),
        Cmd::Ingest {
            path,
            out,
            builtin: with_builtin,
        } => {
            let mut cat = if with_builtin {
                builtin()?
            } else {
                Catalog::new()
            };
            for e in ingest(&path)?.entries() {
                cat.push(e.clone())?;
            }
            for e in cat.entries() {
                let kind = match &e.payload {
                    Payload::Lattice(l) => format!("lattice rank {}", l.rank()),
                    Payload::Code(c) => format!("code [{}, {}]", c.length(), c.dimension()),
                };
                println!("{}\t{kind}", e.name);
            }
            if let Some(out) = out {
                cat.write(&out)?;
            }
            Ok(true)
        }
        Cmd::Report { files } => run_report(&files, json),
        Cmd::Reproduce { script, out } => {
            let (manifest, outcome, path) = reproduce(&script, &out)?;
            for c in &outcome.checks {
                let tag = if c.pass { "pass" } else { "FAIL" };
                println!("{tag} {}: expected {} got {}", c.name, c.expected, c.actual);
            }
            println!("output sha256 {}", manifest.output_hash);
            println!("manifest {}", path.display());
            Ok(outcome.pass)
        }
        Cmd::Corpus { seed, out, copies } => {
            corpus(seed, &out, copies)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
