//! On-disk cache of bases, differentials and ranks.
//!
//! Layout under the cache root, versioned so format changes never mix:
//!
//! ```text
//! v1/bases/<parity>-<variant>-g<G>-v<V>.gls
//! v1/matrices/<parity>-<variant>-g<G>-v<V>-v<V-1>.sms
//! v1/ranks/<parity>-<variant>-g<G>-v<V>-v<V-1>-p<P>-<method>[-c<Q>][-s<S>].json
//! ```

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use gc_core::cohomology::{CohomologyOptions, DifferentialRank};
use gc_core::complex::{BasisSlice, ComplexSpec, IntSparseMatrix};
use gc_core::linalg::RankMethod;

const VERSION: &str = "v1";

#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

fn slice_key(spec: ComplexSpec, vertices: usize) -> String {
    format!(
        "{}-{}-g{}-v{}",
        spec.parity, spec.variant, spec.loops, vertices
    )
}

fn matrix_key(spec: ComplexSpec, vertices: usize) -> String {
    format!("{}-v{}", slice_key(spec, vertices), vertices - 1)
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn basis_path(&self, spec: ComplexSpec, vertices: usize) -> PathBuf {
        self.root
            .join(VERSION)
            .join("bases")
            .join(format!("{}.gls", slice_key(spec, vertices)))
    }

    /// Path of the contraction matrix from `vertices` to `vertices - 1`.
    pub fn matrix_path(&self, spec: ComplexSpec, vertices: usize) -> PathBuf {
        self.root
            .join(VERSION)
            .join("matrices")
            .join(format!("{}.sms", matrix_key(spec, vertices)))
    }

    pub fn rank_path(
        &self,
        spec: ComplexSpec,
        vertices: usize,
        options: &CohomologyOptions,
    ) -> PathBuf {
        let mut name = format!(
            "{}-p{}-{}",
            matrix_key(spec, vertices),
            options.prime.p(),
            options.method
        );
        match options.method {
            RankMethod::Gauss => {
                if let Some(q) = options.check_prime {
                    name += &format!("-c{}", q.p());
                }
            }
            RankMethod::Wiedemann => name += &format!("-s{}", options.seed),
        }
        self.root.join(VERSION).join("ranks").join(name + ".json")
    }

    pub fn load_basis(&self, spec: ComplexSpec, vertices: usize) -> Result<Option<BasisSlice>> {
        let path = self.basis_path(spec, vertices);
        if !path.exists() {
            return Ok(None);
        }
        let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
        let slice = BasisSlice::read_gls(BufReader::new(file))
            .with_context(|| format!("reading {}", path.display()))?;
        Ok(Some(slice))
    }

    pub fn store_basis(&self, slice: &BasisSlice) -> Result<()> {
        let path = self.basis_path(slice.spec(), slice.num_vertices());
        write_atomic(&path, |w| slice.write_gls(w))
    }

    pub fn load_matrix(
        &self,
        spec: ComplexSpec,
        vertices: usize,
    ) -> Result<Option<IntSparseMatrix>> {
        let path = self.matrix_path(spec, vertices);
        if !path.exists() {
            return Ok(None);
        }
        let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
        let m = IntSparseMatrix::read_sms(BufReader::new(file))
            .with_context(|| format!("reading {}", path.display()))?;
        Ok(Some(m))
    }

    pub fn store_matrix(
        &self,
        spec: ComplexSpec,
        vertices: usize,
        m: &IntSparseMatrix,
    ) -> Result<()> {
        write_atomic(&self.matrix_path(spec, vertices), |w| m.write_sms(w))
    }

    pub fn load_rank(
        &self,
        spec: ComplexSpec,
        vertices: usize,
        options: &CohomologyOptions,
    ) -> Result<Option<DifferentialRank>> {
        let path = self.rank_path(spec, vertices, options);
        if !path.exists() {
            return Ok(None);
        }
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let rank =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(Some(rank))
    }

    pub fn store_rank(
        &self,
        spec: ComplexSpec,
        vertices: usize,
        options: &CohomologyOptions,
        rank: DifferentialRank,
    ) -> Result<()> {
        write_atomic(&self.rank_path(spec, vertices, options), |w| {
            serde_json::to_writer(&mut *w, &rank)?;
            writeln!(w)
        })
    }
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial entry.
fn write_atomic<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let file = File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        let mut w = BufWriter::new(file);
        write(&mut w).with_context(|| format!("writing {}", tmp.display()))?;
        w.flush()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("moving {} into place", tmp.display()))?;
    Ok(())
}
