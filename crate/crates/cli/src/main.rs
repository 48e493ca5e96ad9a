//! `gc`: build graph complexes, their differentials and cohomology tables.

mod cache;
mod check;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use gc_core::cohomology::{
    differential_rank, table_from_ranks, CohomologyOptions, DifferentialRank,
};
use gc_core::complex::{
    differential_matrix, enumerate_all, enumerate_basis_with_cap, BasisSlice, ComplexSpec,
    IntSparseMatrix, Variant, DEFAULT_GENERATOR_CAP,
};
use gc_core::graphs::Parity;
use gc_core::kneissler;
use gc_core::linalg::{rank, reduce_mod_p, PivotStrategy, PrimeField, RankMethod, DEFAULT_PRIME};

use cache::Cache;
use check::Suite;

#[derive(Parser)]
#[command(
    name = "gc",
    version,
    about = "Kontsevich graph complexes and their cohomology"
)]
struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Cache directory for bases, matrices and ranks.
    #[arg(long, global = true, env = "GC_CACHE_DIR")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the generators of one slice.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        vertices: usize,
        /// Write the basis here in .gls format.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GENERATOR_CAP)]
        max_generators: usize,
    },
    /// Contraction matrix from V to V - 1 vertices, in SMS format.
    Diff {
        #[command(flatten)]
        spec: OptionalSpecArgs,
        #[arg(long)]
        vertices: Option<usize>,
        /// Source basis file, instead of the spec flags.
        #[arg(long, requires = "target", conflicts_with_all = ["parity", "variant", "loops", "vertices"])]
        source: Option<PathBuf>,
        /// Target basis file, one vertex fewer than the source.
        #[arg(long, requires = "source")]
        target: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of an SMS matrix over F_p.
    Rank {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value = "gauss")]
        method: RankMethod,
        /// Block size for Wiedemann.
        #[arg(long, default_value_t = 1)]
        block: usize,
        /// Seed for Wiedemann; drawn at random and reported when absent.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cohomology table of a complex.
    Cohomology {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value = "gauss")]
        method: RankMethod,
        #[arg(long)]
        seed: Option<u64>,
        /// Second prime for cross-checking Gauss ranks; 0 disables it.
        #[arg(long)]
        check_prime: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_GENERATOR_CAP)]
        max_generators: usize,
        /// Print JSON instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// Upper bound on the top-degree cohomology from barrel graphs.
    Kneissler {
        #[arg(long)]
        parity: Parity,
        #[arg(long)]
        loops: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value = "gauss")]
        method: RankMethod,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a self-check suite; exits 0 iff every check passes.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    parity: Parity,
    #[arg(long, default_value = "full")]
    variant: Variant,
    #[arg(long)]
    loops: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<ComplexSpec> {
        Ok(ComplexSpec::new(self.parity, self.variant, self.loops)?)
    }
}

#[derive(Args)]
struct OptionalSpecArgs {
    #[arg(long)]
    parity: Option<Parity>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    loops: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let cache = cli.cache.as_deref().map(Cache::new);
    match run(cli.command, cache.as_ref()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, cache: Option<&Cache>) -> Result<bool> {
    match command {
        Command::Gen {
            spec,
            vertices,
            out,
            max_generators,
        } => {
            let spec = spec.spec()?;
            let slice = basis(spec, vertices, max_generators, cache)?;
            if let Some(path) = out {
                write_file(&path, |w| slice.write_gls(w))?;
            }
            println!("count={}", slice.len());
        }
        Command::Diff {
            spec,
            vertices,
            source,
            target,
            out,
        } => {
            let (src, dst) = match (source, target) {
                (Some(s), Some(t)) => (read_basis(&s)?, read_basis(&t)?),
                _ => {
                    let (Some(parity), Some(loops), Some(v)) = (spec.parity, spec.loops, vertices)
                    else {
                        bail!(
                            "diff needs --parity, --loops and --vertices, or --source and --target"
                        );
                    };
                    let spec =
                        ComplexSpec::new(parity, spec.variant.unwrap_or(Variant::Full), loops)?;
                    if v < 1 {
                        bail!("--vertices must be at least 1");
                    }
                    let src = basis(spec, v, DEFAULT_GENERATOR_CAP, cache)?;
                    let dst = basis(spec, v - 1, DEFAULT_GENERATOR_CAP, cache)?;
                    (src, dst)
                }
            };
            let m = differential(&src, &dst, cache)?;
            match out {
                Some(path) => write_file(&path, |w| m.write_sms(w))?,
                None => m.write_sms(io::stdout().lock())?,
            }
            eprintln!("rows={} cols={} nnz={}", m.nrows(), m.ncols(), m.nnz());
        }
        Command::Rank {
            matrix,
            prime,
            method,
            block,
            seed,
        } => {
            let file =
                File::open(&matrix).with_context(|| format!("opening {}", matrix.display()))?;
            let m = IntSparseMatrix::read_sms(BufReader::new(file))
                .with_context(|| format!("reading {}", matrix.display()))?;
            let field = PrimeField::new(prime)?;
            let seed = seed.unwrap_or_else(rand::random);
            let r = rank(
                &reduce_mod_p(&m, field),
                method,
                &PivotStrategy::Markowitz,
                block,
                seed,
            )?;
            println!("{r}");
        }
        Command::Cohomology {
            spec,
            prime,
            method,
            seed,
            check_prime,
            max_generators,
            json,
        } => {
            let spec = spec.spec()?;
            let mut options = CohomologyOptions::new(PrimeField::new(prime)?, method);
            options.generator_cap = max_generators;
            if method == RankMethod::Wiedemann {
                options.seed = seed.unwrap_or_else(rand::random);
            }
            match check_prime {
                Some(0) => options.check_prime = None,
                Some(q) => options.check_prime = Some(PrimeField::new(q)?),
                None => {}
            }
            let table = cohomology(spec, &options, cache)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&table)?);
            } else {
                print!("{table}");
            }
        }
        Command::Kneissler {
            parity,
            loops,
            prime,
            method,
            seed,
        } => {
            let seed = match method {
                RankMethod::Gauss => seed.unwrap_or(0),
                RankMethod::Wiedemann => seed.unwrap_or_else(rand::random),
            };
            let report =
                kneissler::upper_bound(loops, parity, PrimeField::new(prime)?, method, seed)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Check { suite, seed } => {
            let pass = check::run(suite, seed, &mut |o| println!("{o}"))?;
            println!("{} suite {:?}", if pass { "PASS" } else { "FAIL" }, suite);
            return Ok(pass);
        }
    }
    Ok(true)
}

fn write_file<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    write(&mut w).with_context(|| format!("writing {}", path.display()))?;
    w.flush()?;
    Ok(())
}

fn read_basis(path: &Path) -> Result<BasisSlice> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    BasisSlice::read_gls(BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))
}

fn basis(
    spec: ComplexSpec,
    vertices: usize,
    cap: usize,
    cache: Option<&Cache>,
) -> Result<BasisSlice> {
    if !spec.vertex_range().contains(&vertices) {
        return Ok(BasisSlice::empty(spec, vertices));
    }
    if let Some(slice) = cache
        .map(|c| c.load_basis(spec, vertices))
        .transpose()?
        .flatten()
    {
        return Ok(slice);
    }
    let slice = enumerate_basis_with_cap(spec, vertices, cap)?;
    if let Some(c) = cache {
        c.store_basis(&slice)?;
    }
    Ok(slice)
}

fn differential(
    src: &BasisSlice,
    dst: &BasisSlice,
    cache: Option<&Cache>,
) -> Result<IntSparseMatrix> {
    let (spec, v) = (src.spec(), src.num_vertices());
    if let Some(m) = cache.map(|c| c.load_matrix(spec, v)).transpose()?.flatten() {
        return Ok(m);
    }
    let m = differential_matrix(src, dst)?;
    if let Some(c) = cache {
        c.store_matrix(spec, v, &m)?;
    }
    Ok(m)
}

fn all_slices(spec: ComplexSpec, cap: usize, cache: Option<&Cache>) -> Result<Vec<BasisSlice>> {
    if let Some(c) = cache {
        let cached: Option<Vec<BasisSlice>> = spec
            .vertex_range()
            .map(|v| c.load_basis(spec, v))
            .collect::<Result<_>>()?;
        if let Some(slices) = cached {
            return Ok(slices);
        }
    }
    let slices = enumerate_all(spec, cap)?;
    if let Some(c) = cache {
        for s in &slices {
            c.store_basis(s)?;
        }
    }
    Ok(slices)
}

fn cohomology(
    spec: ComplexSpec,
    options: &CohomologyOptions,
    cache: Option<&Cache>,
) -> Result<gc_core::cohomology::CohomologyTable> {
    let slices = all_slices(spec, options.generator_cap, cache)?;
    let ranks: Vec<DifferentialRank> = slices
        .windows(2)
        .map(|w| -> Result<DifferentialRank> {
            let v = w[1].num_vertices();
            if let Some(r) = cache
                .map(|c| c.load_rank(spec, v, options))
                .transpose()?
                .flatten()
            {
                return Ok(r);
            }
            let m = differential(&w[1], &w[0], cache)?;
            let r = differential_rank(&m, options)?;
            if let Some(c) = cache {
                c.store_rank(spec, v, options, r)?;
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    Ok(table_from_ranks(spec, &slices, &ranks, options)?)
}
