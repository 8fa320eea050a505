//! On-disk formats.
//!
//! Every payload is a flat little-endian array with a human-readable
//! `key=value` sidecar:
//!
//! | payload          | element | sidecar           | sidecar keys                                 |
//! |------------------|---------|-------------------|----------------------------------------------|
//! | `<name>.bin`     | `f32`   | `<name>.meta`     | `n`, `m`, `znormalized`, optional `seed`     |
//! | `<name>.bin` DEA | `f32`   | `<name>.meta`     | `n`, `m` (= l), `source_m`, `scaled`         |
//! | `<name>.sax`     | `u8`    | `<name>.sax.meta` | `n`, `l`, `bits`, `kind`, `source_m`         |
//! | `<name>.idx`     | `u64`   | `<name>.idx.meta` | `n_prime`, `strategy`, optional `seed`, `n`  |
//!
//! Writers go through a temporary file and a rename so readers never see a
//! partially written payload.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sampling::{SampleSet, SampleStrategy};
use crate::series::Dataset;
use crate::summarization::{SaxWord, SummaryKind};

/// Parsed `key=value` sidecar.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Meta {
    path: PathBuf,
    entries: BTreeMap<String, String>,
}

impl Meta {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::MalformedMeta {
                path: path.to_path_buf(),
                reason: format!("line {} is not key=value: {line:?}", lineno + 1),
            })?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, path)
    }

    pub fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.entries.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.entries
            .get(key)
            .map(|raw| {
                raw.parse().map_err(|_| Error::MalformedMeta {
                    path: self.path.clone(),
                    reason: format!("cannot parse {key}={raw:?}"),
                })
            })
            .transpose()
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?.ok_or_else(|| Error::MalformedMeta {
            path: self.path.clone(),
            reason: format!("missing key {key:?}"),
        })
    }

    /// `0`/`1` flag, absent means false.
    pub fn flag(&self, key: &str) -> Result<bool> {
        match self.get_str(key) {
            None | Some("0") => Ok(false),
            Some("1") => Ok(true),
            Some(other) => Err(Error::MalformedMeta {
                path: self.path.clone(),
                reason: format!("{key} must be 0 or 1, got {other:?}"),
            }),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.render().as_bytes())
    }
}

/// Writes `bytes` to `path` through a sibling temporary file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Appends `ext` to a base path without replacing an existing extension.
pub fn with_suffix(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

/// `<base>.bin` and `<base>.meta`.
pub fn dataset_paths(base: &Path) -> (PathBuf, PathBuf) {
    (with_suffix(base, ".bin"), with_suffix(base, ".meta"))
}

fn check_size(what: &Path, expected: u64, actual: u64) -> Result<()> {
    if expected != actual {
        return Err(Error::SizeMismatch {
            what: what.display().to_string(),
            expected,
            actual,
        });
    }
    Ok(())
}

fn read_f32_payload(path: &Path, n: usize, m: usize) -> Result<Vec<f32>> {
    let bytes = fs::read(path)?;
    check_size(path, (n * m * 4) as u64, bytes.len() as u64)?;
    Ok(bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}

fn f32_bytes(values: &[f32]) -> Vec<u8> {
    values.iter().flat_map(|v| v.to_le_bytes()).collect()
}

pub fn save_dataset(dataset: &Dataset, payload: &Path, meta_path: &Path) -> Result<()> {
    let mut meta = Meta::new();
    meta.set("n", dataset.len())
        .set("m", dataset.series_len())
        .set("znormalized", u8::from(dataset.is_znormalized()));
    if let Some(seed) = dataset.seed() {
        meta.set("seed", seed);
    }
    write_atomic(payload, &f32_bytes(dataset.as_slice()))?;
    meta.write(meta_path)
}

pub fn load_dataset(payload: &Path, meta_path: &Path) -> Result<Dataset> {
    let meta = Meta::read(meta_path)?;
    load_with_meta(payload, &meta)
}

fn load_with_meta(payload: &Path, meta: &Meta) -> Result<Dataset> {
    let n: usize = meta.require("n")?;
    let m: usize = meta.require("m")?;
    let data = read_f32_payload(payload, n, m)?;
    Ok(Dataset::new(data, n, m, meta.flag("znormalized")?)?.with_seed(meta.get("seed")?))
}

pub fn save_dataset_base(dataset: &Dataset, base: &Path) -> Result<()> {
    let (payload, meta) = dataset_paths(base);
    save_dataset(dataset, &payload, &meta)
}

pub fn load_dataset_base(base: &Path) -> Result<Dataset> {
    let (payload, meta) = dataset_paths(base);
    load_dataset(&payload, &meta)
}

/// A file of DEA vectors: `n` rows of length `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeaFile {
    pub vectors: Dataset,
    pub source_m: usize,
    pub scaled: bool,
}

pub fn save_dea(dea: &DeaFile, base: &Path) -> Result<()> {
    let (payload, meta_path) = dataset_paths(base);
    let mut meta = Meta::new();
    meta.set("n", dea.vectors.len())
        .set("m", dea.vectors.series_len())
        .set("source_m", dea.source_m)
        .set("scaled", u8::from(dea.scaled));
    write_atomic(&payload, &f32_bytes(dea.vectors.as_slice()))?;
    meta.write(&meta_path)
}

pub fn load_dea(base: &Path) -> Result<DeaFile> {
    let (payload, meta_path) = dataset_paths(base);
    let meta = Meta::read(&meta_path)?;
    let source_m = meta.require("source_m")?;
    let scaled = meta.flag("scaled")?;
    Ok(DeaFile {
        vectors: load_with_meta(&payload, &meta)?,
        source_m,
        scaled,
    })
}

/// SAX words of a dataset, all at the same cardinality.
#[derive(Debug, Clone, PartialEq)]
pub struct SaxFile {
    pub words: Vec<SaxWord>,
    pub l: usize,
    pub bits: u8,
    pub kind: SummaryKind,
    pub source_m: usize,
}

pub fn sax_paths(base: &Path) -> (PathBuf, PathBuf) {
    (with_suffix(base, ".sax"), with_suffix(base, ".sax.meta"))
}

pub fn save_sax(sax: &SaxFile, base: &Path) -> Result<()> {
    let (payload, meta_path) = sax_paths(base);
    let mut bytes = Vec::with_capacity(sax.words.len() * sax.l);
    for w in &sax.words {
        bytes.extend_from_slice(w.symbols());
    }
    let mut meta = Meta::new();
    meta.set("n", sax.words.len())
        .set("l", sax.l)
        .set("bits", sax.bits)
        .set("kind", sax.kind)
        .set("source_m", sax.source_m);
    write_atomic(&payload, &bytes)?;
    meta.write(&meta_path)
}

pub fn load_sax(base: &Path) -> Result<SaxFile> {
    let (payload, meta_path) = sax_paths(base);
    let meta = Meta::read(&meta_path)?;
    let n: usize = meta.require("n")?;
    let l: usize = meta.require("l")?;
    let bits: u8 = meta.require("bits")?;
    let kind = meta.get("kind")?.unwrap_or(SummaryKind::Paa);
    let source_m = meta.require("source_m")?;
    if l == 0 {
        return Err(Error::MalformedMeta {
            path: meta_path,
            reason: "l must be >= 1".into(),
        });
    }
    let bytes = fs::read(&payload)?;
    check_size(&payload, (n * l) as u64, bytes.len() as u64)?;
    let words = bytes
        .chunks_exact(l)
        .map(|c| SaxWord::new(c.to_vec(), bits))
        .collect::<Result<Vec<_>>>()?;
    Ok(SaxFile {
        words,
        l,
        bits,
        kind,
        source_m,
    })
}

pub fn sample_paths(base: &Path) -> (PathBuf, PathBuf) {
    (with_suffix(base, ".idx"), with_suffix(base, ".idx.meta"))
}

/// Writes a sample; `n` is the size of the sampled dataset.
pub fn save_sample(sample: &SampleSet, n: usize, base: &Path) -> Result<()> {
    let (payload, meta_path) = sample_paths(base);
    let bytes: Vec<u8> = sample
        .indices()
        .iter()
        .flat_map(|&i| (i as u64).to_le_bytes())
        .collect();
    let mut meta = Meta::new();
    meta.set("n_prime", sample.len())
        .set("strategy", sample.strategy())
        .set("n", n);
    if let Some(seed) = sample.seed() {
        meta.set("seed", seed);
    }
    write_atomic(&payload, &bytes)?;
    meta.write(&meta_path)
}

pub fn load_sample(base: &Path) -> Result<SampleSet> {
    let (payload, meta_path) = sample_paths(base);
    let meta = Meta::read(&meta_path)?;
    let n_prime: usize = meta.require("n_prime")?;
    let strategy: SampleStrategy = meta.require("strategy")?;
    let seed = meta.get("seed")?;
    let bytes = fs::read(&payload)?;
    check_size(&payload, (n_prime * 8) as u64, bytes.len() as u64)?;
    let indices = bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().expect("8-byte chunk")) as usize)
        .collect();
    SampleSet::new(indices, strategy, seed)
}
