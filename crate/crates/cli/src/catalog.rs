//! Catalogs of named lattices and codes, stored one entry per file.
//!
//! Lattice files end in `.lat`, code files in `.code`. Each file starts
//! with `# name:` and `# provenance:` comment lines.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sdkit_core::gf3::{e4, e4_power, eq2_code, g12, p24, qr24, TernaryCode};
use sdkit_core::lattice::{d8_pair_plus, d_n_plus, e8, p_neighbor, z_n, LatticeGram};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BuiltIn,
    File,
    NeighborDerived,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::BuiltIn => "built-in",
            Provenance::File => "file",
            Provenance::NeighborDerived => "neighbor-derived",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "built-in" => Some(Provenance::BuiltIn),
            "file" => Some(Provenance::File),
            "neighbor-derived" => Some(Provenance::NeighborDerived),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Lattice(LatticeGram),
    Code(TernaryCode),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub payload: Payload,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn lattice(name: &str, l: LatticeGram, provenance: Provenance) -> Self {
        Self {
            name: name.to_string(),
            payload: Payload::Lattice(l),
            provenance,
        }
    }

    pub fn code(name: &str, c: TernaryCode, provenance: Provenance) -> Self {
        Self {
            name: name.to_string(),
            payload: Payload::Code(c),
            provenance,
        }
    }

    fn extension(&self) -> &'static str {
        match self.payload {
            Payload::Lattice(_) => "lat",
            Payload::Code(_) => "code",
        }
    }

    /// File contents for this entry.
    pub fn to_text(&self) -> String {
        let body = match &self.payload {
            Payload::Lattice(l) => l.to_text(),
            Payload::Code(c) => c.to_text(),
        };
        format!(
            "# name: {}\n# provenance: {}\n{body}",
            self.name,
            self.provenance.as_str()
        )
    }

    /// Parses one entry file; `lattice` selects the format. Files without a
    /// name header are named `fallback`.
    pub fn parse(text: &str, lattice: bool, fallback: &str) -> sdkit_core::Result<Self> {
        let provenance = text
            .lines()
            .filter_map(|l| {
                l.trim()
                    .strip_prefix('#')?
                    .trim()
                    .strip_prefix("provenance:")
            })
            .find_map(|v| Provenance::parse(v.trim()))
            .unwrap_or(Provenance::File);
        let (payload, name) = if lattice {
            let (l, name) = LatticeGram::parse(text)?;
            (Payload::Lattice(l), name)
        } else {
            let (c, name) = TernaryCode::parse(text)?;
            (Payload::Code(c), name)
        };
        Ok(Self {
            name: name.unwrap_or_else(|| fallback.to_string()),
            payload,
            provenance,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Adds an entry; names must be unique.
    pub fn push(&mut self, e: CatalogEntry) -> Result<()> {
        if self.get(&e.name).is_some() {
            bail!("duplicate catalog name {:?}", e.name);
        }
        self.entries.push(e);
        Ok(())
    }

    /// Lattice entries as `(name, gram)` pairs.
    pub fn lattices(&self) -> Vec<(String, LatticeGram)> {
        self.entries
            .iter()
            .filter_map(|e| match &e.payload {
                Payload::Lattice(l) => Some((e.name.clone(), l.clone())),
                Payload::Code(_) => None,
            })
            .collect()
    }

    pub fn codes(&self) -> Vec<(String, TernaryCode)> {
        self.entries
            .iter()
            .filter_map(|e| match &e.payload {
                Payload::Code(c) => Some((e.name.clone(), c.clone())),
                Payload::Lattice(_) => None,
            })
            .collect()
    }

    /// Writes one file per entry into `dir`. File names carry the entry
    /// position so that `ingest` restores the order.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, e) in self.entries.iter().enumerate() {
            let file = dir.join(format!("{i:04}-{}.{}", file_stem(&e.name), e.extension()));
            fs::write(&file, e.to_text()).with_context(|| format!("writing {}", file.display()))?;
        }
        Ok(())
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Reads a single entry file or every `.lat`/`.code` file of a directory,
/// in file name order.
pub fn ingest(path: &Path) -> Result<Catalog> {
    let mut files = Vec::new();
    if path.is_dir() {
        for e in fs::read_dir(path).with_context(|| format!("reading {}", path.display()))? {
            files.push(e?.path());
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }
    let mut cat = Catalog::new();
    let mut seen = BTreeSet::new();
    for f in files {
        let lattice = match f.extension().and_then(|x| x.to_str()) {
            Some("lat") => true,
            Some("code") => false,
            _ if path.is_dir() => continue,
            _ => bail!("{}: expected a .lat or .code file", f.display()),
        };
        let text = fs::read_to_string(&f).with_context(|| format!("reading {}", f.display()))?;
        let stem = f.file_stem().and_then(|s| s.to_str()).unwrap_or("entry");
        let e =
            CatalogEntry::parse(&text, lattice, stem).with_context(|| f.display().to_string())?;
        if !seen.insert(e.name.clone()) {
            bail!("{}: duplicate catalog name {:?}", f.display(), e.name);
        }
        cat.push(e)?;
    }
    Ok(cat)
}

/// The 12-dimensional odd unimodular lattices with a 3-frame: Z¹², E₈⊕Z⁴
/// and D₁₂⁺, the last two as 2-neighbors of Z¹².
pub fn length12_lattices() -> Result<Catalog> {
    let z = z_n(12);
    let mut v = vec![0i64; 12];
    v[..8].fill(1);
    let mut cat = Catalog::new();
    cat.push(CatalogEntry::lattice(
        "Z^12",
        z.clone(),
        Provenance::BuiltIn,
    ))?;
    cat.push(CatalogEntry::lattice(
        "E8+Z^4",
        p_neighbor(&z, &v, 2)?,
        Provenance::NeighborDerived,
    ))?;
    cat.push(CatalogEntry::lattice(
        "D12+",
        p_neighbor(&z, &[1; 12], 2)?,
        Provenance::NeighborDerived,
    ))?;
    Ok(cat)
}

/// Lattices and codes that ship with the tool.
pub fn builtin() -> Result<Catalog> {
    let mut cat = Catalog::new();
    cat.push(CatalogEntry::lattice("Z^4", z_n(4), Provenance::BuiltIn))?;
    cat.push(CatalogEntry::lattice("E8", e8(), Provenance::BuiltIn))?;
    for e in length12_lattices()?.entries {
        cat.push(e)?;
    }
    let d = d_n_plus(12)?;
    cat.push(CatalogEntry::lattice(
        "L_{24,154}",
        d.direct_sum(&d),
        Provenance::BuiltIn,
    ))?;
    cat.push(CatalogEntry::lattice(
        "L_{24,153}",
        e8().direct_sum(&d8_pair_plus()),
        Provenance::BuiltIn,
    ))?;
    cat.push(CatalogEntry::code("E4", e4(), Provenance::BuiltIn))?;
    cat.push(CatalogEntry::code("G12", g12(), Provenance::BuiltIn))?;
    cat.push(CatalogEntry::code("E4^6", e4_power(6), Provenance::BuiltIn))?;
    cat.push(CatalogEntry::code(
        "G12+G12",
        g12().direct_sum(&g12()),
        Provenance::BuiltIn,
    ))?;
    cat.push(CatalogEntry::code(
        "A24-code",
        eq2_code(),
        Provenance::BuiltIn,
    ))?;
    cat.push(CatalogEntry::code("QR24", qr24(), Provenance::BuiltIn))?;
    cat.push(CatalogEntry::code("P24", p24(), Provenance::BuiltIn))?;
    Ok(cat)
}
