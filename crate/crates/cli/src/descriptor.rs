//! JSON body descriptors: `{"kind": "...", ...}` with vertices and matrices
//! as nested arrays.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use lpgeom::body::{SampledSupport, SupportGenerator};
use lpgeom::operators::KernelGenerator;
use lpgeom::{ConvexBody, Matrix, SphereGrid, StarBody};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

fn three() -> usize {
    3
}

fn one() -> f64 {
    1.0
}

/// A body as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Descriptor {
    Ball {
        #[serde(default = "three")]
        dim: usize,
        #[serde(default = "one")]
        radius: f64,
    },
    /// `A B` for a symmetric positive definite `A`.
    Ellipsoid { matrix: Vec<Vec<f64>> },
    /// Convex hull of the vertices.
    Polytope { vertices: Vec<Vec<f64>> },
    Translate { body: Box<Descriptor>, shift: Vec<f64> },
    /// Support values on the nodes of the product grid of the given
    /// resolution, with an optional off-grid generator.
    SampledSupport {
        dim: usize,
        resolution: usize,
        values: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<Box<GeneratorDescriptor>>,
    },
    /// Radial values of a star body on the nodes of the product grid.
    SampledRadial { dim: usize, resolution: usize, values: Vec<f64> },
}

/// Off-grid evaluator of a sampled support function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorDescriptor {
    Kernel {
        dim: usize,
        p: f64,
        plus: f64,
        minus: f64,
        directions: Vec<Vec<f64>>,
        masses: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        norm_weights: Option<Vec<f64>>,
    },
    LpCombination { alpha: f64, k: Box<Descriptor>, beta: f64, l: Box<Descriptor>, p: f64 },
    Linear { body: Box<Descriptor>, map_transpose: Vec<Vec<f64>> },
}

fn matrix(rows: &[Vec<f64>]) -> CliResult<Matrix> {
    Matrix::from_rows(rows).ok_or_else(|| CliError::config("matrix must be square and nonempty"))
}

impl Descriptor {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }

    pub fn is_star_only(&self) -> bool {
        matches!(self, Descriptor::SampledRadial { .. })
    }

    pub fn to_convex(&self) -> CliResult<ConvexBody> {
        Ok(match self {
            Descriptor::Ball { dim, radius } => ConvexBody::ball(*dim, *radius)?,
            Descriptor::Ellipsoid { matrix: m } => ConvexBody::ellipsoid(matrix(m)?)?,
            Descriptor::Polytope { vertices } => ConvexBody::polytope(vertices)?,
            Descriptor::Translate { body, shift } => body.to_convex()?.translate(shift)?,
            Descriptor::SampledSupport { dim, resolution, values, generator } => {
                let grid = SphereGrid::new(*dim, *resolution)?;
                let generator = generator.as_ref().map(|g| g.to_generator()).transpose()?;
                ConvexBody::sampled_with_generator(grid, values.clone(), generator)?
            }
            Descriptor::SampledRadial { .. } => {
                return Err(CliError::config("a sampled radial function describes a star body, not a convex body"))
            }
        })
    }

    pub fn to_star(&self) -> CliResult<StarBody> {
        match self {
            Descriptor::SampledRadial { dim, resolution, values } => {
                Ok(StarBody::sampled(SphereGrid::new(*dim, *resolution)?, values.clone())?)
            }
            _ => Ok(StarBody::FromConvex(self.to_convex()?)),
        }
    }

    pub fn from_convex(k: &ConvexBody) -> Self {
        match k {
            ConvexBody::Ball { dim, radius } => Descriptor::Ball { dim: *dim, radius: *radius },
            ConvexBody::Ellipsoid(e) => Descriptor::Ellipsoid { matrix: e.matrix().rows() },
            ConvexBody::Polytope(p) => Descriptor::Polytope { vertices: p.vertices().to_vec() },
            ConvexBody::Translate { inner, shift } => {
                Descriptor::Translate { body: Box::new(Self::from_convex(inner)), shift: shift.clone() }
            }
            ConvexBody::SampledSupport(s) => Self::from_sampled(s),
        }
    }

    fn from_sampled(s: &Arc<SampledSupport>) -> Self {
        Descriptor::SampledSupport {
            dim: s.grid().dim(),
            resolution: s.grid().resolution(),
            values: s.values().to_vec(),
            generator: s.generator().map(|g| Box::new(GeneratorDescriptor::from_generator(g))),
        }
    }

    pub fn from_star(l: &StarBody) -> Self {
        match l {
            StarBody::FromConvex(k) => Self::from_convex(k),
            StarBody::SampledRadial { grid, values } => {
                Descriptor::SampledRadial { dim: grid.dim(), resolution: grid.resolution(), values: values.to_vec() }
            }
        }
    }
}

impl GeneratorDescriptor {
    pub fn to_generator(&self) -> CliResult<SupportGenerator> {
        Ok(match self {
            GeneratorDescriptor::Kernel { dim, p, plus, minus, directions, masses, norm_weights } => {
                if directions.iter().any(|d| d.len() != *dim) {
                    return Err(CliError::config("kernel direction has the wrong dimension"));
                }
                let flat = directions.iter().flatten().copied().collect();
                SupportGenerator::Kernel(KernelGenerator::from_parts(
                    *dim,
                    *p,
                    *plus,
                    *minus,
                    flat,
                    masses.clone(),
                    norm_weights.clone(),
                )?)
            }
            GeneratorDescriptor::LpCombination { alpha, k, beta, l, p } => SupportGenerator::LpCombination {
                alpha: *alpha,
                k: k.to_convex()?,
                beta: *beta,
                l: l.to_convex()?,
                p: *p,
            },
            GeneratorDescriptor::Linear { body, map_transpose } => {
                SupportGenerator::Linear { inner: body.to_convex()?, map_t: matrix(map_transpose)? }
            }
        })
    }

    pub fn from_generator(g: &SupportGenerator) -> Self {
        match g {
            SupportGenerator::Kernel(k) => {
                let (plus, minus) = k.weights();
                GeneratorDescriptor::Kernel {
                    dim: k.dim(),
                    p: k.p(),
                    plus,
                    minus,
                    directions: k.directions().chunks(k.dim()).map(|c| c.to_vec()).collect(),
                    masses: k.masses().to_vec(),
                    norm_weights: k.norm_weights().map(|w| w.to_vec()),
                }
            }
            SupportGenerator::LpCombination { alpha, k, beta, l, p } => GeneratorDescriptor::LpCombination {
                alpha: *alpha,
                k: Box::new(Descriptor::from_convex(k)),
                beta: *beta,
                l: Box::new(Descriptor::from_convex(l)),
                p: *p,
            },
            SupportGenerator::Linear { inner, map_t } => GeneratorDescriptor::Linear {
                body: Box::new(Descriptor::from_convex(inner)),
                map_transpose: map_t.rows(),
            },
        }
    }
}
