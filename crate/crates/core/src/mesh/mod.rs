//! Simplicial meshes with global sub-simplex tables.

mod generate;
mod io;
pub mod quadrature;

use std::collections::HashMap;

pub use generate::{l_shape_mesh, unit_cube_mesh, unit_interval_mesh, unit_square_mesh, uniform_refine};
pub use io::{read_mesh, write_mesh};
pub use quadrature::{simplex_quadrature, QuadratureRule};

use crate::element::dofs::{simplex_measure, vertex_subsets};
use crate::error::{Error, Result};

/// All sub-simplices of one codimension, keyed by sorted global vertices.
#[derive(Clone, Debug, Default)]
pub struct FaceTable {
    pub faces: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
    /// Cells containing each face, ascending.
    pub cells: Vec<Vec<usize>>,
    pub boundary: Vec<bool>,
}

impl FaceTable {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn lookup(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialMesh {
    n: usize,
    vertices: Vec<Vec<f64>>,
    cells: Vec<Vec<usize>>,
    /// Entry `k - 1` holds codimension `k`.
    tables: Vec<FaceTable>,
    volumes: Vec<f64>,
    diameters: Vec<f64>,
}

fn diameter(points: &[Vec<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt());
        }
    }
    d
}

impl SimplicialMesh {
    /// Builds all tables; cells keep the vertex order given.
    pub fn new(vertices: Vec<Vec<f64>>, cells: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.first().map(|v| v.len()).ok_or_else(|| Error::InvalidArgument("mesh has no vertices".into()))?;
        if n == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidArgument("vertices of mixed dimension".into()));
        }
        let mut volumes = Vec::with_capacity(cells.len());
        let mut diameters = Vec::with_capacity(cells.len());
        for c in &cells {
            if c.len() != n + 1 || c.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidArgument(format!("bad cell {c:?}")));
            }
            let pts: Vec<Vec<f64>> = c.iter().map(|&v| vertices[v].clone()).collect();
            let vol = simplex_measure(&pts);
            let diam = diameter(&pts);
            if !(vol > 1e-12 * diam.powi(n as i32)) {
                return Err(Error::DegenerateSimplex);
            }
            volumes.push(vol);
            diameters.push(diam);
        }
        let mut tables = vec![FaceTable::default(); n];
        for (ci, c) in cells.iter().enumerate() {
            let mut sorted = c.clone();
            sorted.sort_unstable();
            for k in 1..=n {
                let t = &mut tables[k - 1];
                for sub in vertex_subsets(n, n + 1 - k) {
                    let key: Vec<usize> = sub.iter().map(|&i| sorted[i]).collect();
                    let id = match t.index.get(&key) {
                        Some(&id) => id,
                        None => {
                            t.faces.push(key.clone());
                            t.cells.push(Vec::new());
                            t.index.insert(key, t.faces.len() - 1);
                            t.faces.len() - 1
                        }
                    };
                    t.cells[id].push(ci);
                }
            }
        }
        let facet_boundary: Vec<bool> = tables[0].cells.iter().map(|c| c.len() == 1).collect();
        if tables[0].cells.iter().any(|c| c.len() > 2) {
            return Err(Error::InvalidArgument("a facet is shared by more than two cells".into()));
        }
        // a lower-dimensional face is on the boundary iff it lies in a boundary facet
        let mut on_boundary: Vec<Vec<bool>> = tables.iter().map(|t| vec![false; t.len()]).collect();
        for (f, verts) in tables[0].faces.iter().enumerate() {
            if !facet_boundary[f] {
                continue;
            }
            on_boundary[0][f] = true;
            for k in 2..=n {
                for sub in vertex_subsets(n - 1, n + 1 - k) {
                    let key: Vec<usize> = sub.iter().map(|&i| verts[i]).collect();
                    let id = tables[k - 1].index[&key];
                    on_boundary[k - 1][id] = true;
                }
            }
        }
        for (t, b) in tables.iter_mut().zip(on_boundary) {
            t.boundary = b;
        }
        Ok(Self { n, vertices, cells, tables, volumes, diameters })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Sub-simplices of codimension `k`, `1 <= k <= n`.
    pub fn faces(&self, k: usize) -> &FaceTable {
        &self.tables[k - 1]
    }

    pub fn volume(&self, cell: usize) -> f64 {
        self.volumes[cell]
    }

    pub fn cell_diameter(&self, cell: usize) -> f64 {
        self.diameters[cell]
    }

    pub fn cell_points(&self, cell: usize) -> Vec<Vec<f64>> {
        self.cells[cell].iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Largest cell diameter.
    pub fn h(&self) -> f64 {
        self.diameters.iter().copied().fold(0.0, f64::max)
    }

    /// `max h / min h_T`.
    pub fn quasi_uniformity(&self) -> f64 {
        self.h() / self.diameters.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn total_volume(&self) -> f64 {
        self.volumes.iter().sum()
    }

    pub fn num_boundary_facets(&self) -> usize {
        self.tables[0].boundary.iter().filter(|&&b| b).count()
    }
}
