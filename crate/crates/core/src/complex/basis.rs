use std::io::{BufRead, Write};

use rayon::prelude::*;

use super::generate::{generate_levels, has_loop, EdgeList, DEFAULT_GENERATOR_CAP};
use super::{ComplexError, ComplexSpec, Variant};
use crate::graphs::{canonicalize, is_triconnected, Multigraph, Parity};

/// The canonical generators of one slice, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSlice {
    spec: ComplexSpec,
    num_vertices: usize,
    generators: Vec<Multigraph>,
}

impl BasisSlice {
    /// A slice with no generators, for vertex counts outside the range.
    pub fn empty(spec: ComplexSpec, num_vertices: usize) -> Self {
        BasisSlice {
            spec,
            num_vertices,
            generators: Vec::new(),
        }
    }

    pub fn spec(&self) -> ComplexSpec {
        self.spec
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.spec.num_edges(self.num_vertices)
    }

    pub fn degree(&self) -> i64 {
        self.spec.degree(self.num_vertices)
    }

    pub fn generators(&self) -> &[Multigraph] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Position of a canonical graph in the basis.
    pub fn index_of(&self, g: &Multigraph) -> Option<usize> {
        self.generators.binary_search(g).ok()
    }

    /// Writes the slice in `.gls` format.
    pub fn write_gls<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "#gls parity={} variant={} loops={} vertices={} count={}",
            self.spec.parity,
            self.spec.variant,
            self.spec.loops,
            self.num_vertices,
            self.generators.len()
        )?;
        for g in &self.generators {
            writeln!(w, "{g}")?;
        }
        w.flush()
    }

    /// Reads a `.gls` file. Generators must be canonical and strictly sorted.
    pub fn read_gls<R: BufRead>(r: R) -> Result<Self, ComplexError> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| ComplexError::Parse("empty basis file".into()))??;
        let rest = header
            .strip_prefix("#gls")
            .ok_or_else(|| ComplexError::Parse(format!("bad basis header {header:?}")))?;
        let (mut parity, mut variant, mut loops, mut vertices, mut count) =
            (None, None, None, None, None);
        for field in rest.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| ComplexError::Parse(format!("bad header field {field:?}")))?;
            let num = || {
                value
                    .parse::<usize>()
                    .map_err(|_| ComplexError::Parse(format!("bad header value {field:?}")))
            };
            match key {
                "parity" => parity = Some(value.parse::<Parity>()?),
                "variant" => variant = Some(value.parse::<Variant>()?),
                "loops" => loops = Some(num()?),
                "vertices" => vertices = Some(num()?),
                "count" => count = Some(num()?),
                _ => return Err(ComplexError::Parse(format!("unknown header field {key:?}"))),
            }
        }
        let missing = || ComplexError::Parse(format!("incomplete basis header {header:?}"));
        let spec = ComplexSpec::new(
            parity.ok_or_else(missing)?,
            variant.ok_or_else(missing)?,
            loops.ok_or_else(missing)?,
        )?;
        let num_vertices = vertices.ok_or_else(missing)?;
        let count = count.ok_or_else(missing)?;
        let mut generators = Vec::with_capacity(count);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let g: Multigraph = line.parse()?;
            if g.num_vertices() != num_vertices || g.num_edges() != spec.num_edges(num_vertices) {
                return Err(ComplexError::Parse(format!(
                    "graph {line:?} has the wrong size"
                )));
            }
            generators.push(g);
        }
        if generators.len() != count {
            return Err(ComplexError::Parse(format!(
                "header announces {count} graphs, found {}",
                generators.len()
            )));
        }
        if generators.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexError::Parse(
                "generators are not strictly sorted".into(),
            ));
        }
        Ok(BasisSlice {
            spec,
            num_vertices,
            generators,
        })
    }
}

fn slice_from_level(spec: ComplexSpec, num_vertices: usize, level: &[EdgeList]) -> BasisSlice {
    let mut generators: Vec<Multigraph> = level
        .par_iter()
        .filter(|edges| !has_loop(edges))
        .filter_map(|edges| {
            let g = Multigraph::new(
                num_vertices,
                edges.iter().map(|&(u, v)| (u as usize, v as usize)),
            )
            .expect("generated graphs are loop-free here");
            if spec.variant == Variant::Triconnected && !is_triconnected(&g) {
                return None;
            }
            canonicalize(&g, spec.parity).graph().cloned()
        })
        .collect();
    generators.par_sort_unstable();
    BasisSlice {
        spec,
        num_vertices,
        generators,
    }
}

/// Generators of the slice with `num_vertices` vertices.
pub fn enumerate_basis(spec: ComplexSpec, num_vertices: usize) -> Result<BasisSlice, ComplexError> {
    enumerate_basis_with_cap(spec, num_vertices, DEFAULT_GENERATOR_CAP)
}

pub fn enumerate_basis_with_cap(
    spec: ComplexSpec,
    num_vertices: usize,
    cap: usize,
) -> Result<BasisSlice, ComplexError> {
    if !spec.vertex_range().contains(&num_vertices) {
        return Err(ComplexError::InvalidVertexCount {
            loops: spec.loops,
            vertices: num_vertices,
        });
    }
    let levels = generate_levels(spec.loops, num_vertices, cap)?;
    Ok(slice_from_level(spec, num_vertices, &levels[num_vertices]))
}

/// All slices of the spec, by ascending vertex count.
pub fn enumerate_all(spec: ComplexSpec, cap: usize) -> Result<Vec<BasisSlice>, ComplexError> {
    let range = spec.vertex_range();
    let levels = generate_levels(spec.loops, *range.end(), cap)?;
    Ok(range
        .map(|v| slice_from_level(spec, v, &levels[v]))
        .collect())
}
