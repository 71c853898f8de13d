//! Global nonconforming spaces `V_h` and `V_h0`.

pub mod field;
mod interpolate;
pub mod tables;

use rayon::prelude::*;

pub use field::{Field, PolyField, ZeroField};
pub use interpolate::{interpolate, interpolate_dofs};
pub use tables::ReferenceTables;

use crate::element::dofs::face_dof_classes;
use crate::element::{normal_frame, DofFunctional, ElementDefinition, SimplexGeometry};
use crate::error::{Error, Result};
use crate::mesh::SimplicialMesh;
use crate::polycore::{BaryPoly, DenseMatrix, MultiIndex};

/// One global degree of freedom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalDof {
    pub codim: usize,
    /// Index into `mesh.faces(codim)`.
    pub face: usize,
    pub layer: usize,
    pub alpha: MultiIndex,
}

/// Per-cell data.
#[derive(Clone, Debug)]
pub struct CellData {
    /// Global vertex ids in local order. Local vertex 1 is the smallest
    /// global id, local vertices `2..n` follow in increasing order and local
    /// vertex 0 is the largest.
    pub local_vertices: Vec<usize>,
    pub geometry: SimplexGeometry<f64>,
    /// Local DOF `i` is global DOF `l2g[i]`.
    pub l2g: Vec<usize>,
    /// Column `i` holds the shape-basis coefficients of the local function
    /// dual to local DOF `i`.
    pub coeffs: DenseMatrix<f64>,
}

#[derive(Clone, Debug)]
pub struct GlobalSpace {
    pub element: ElementDefinition,
    pub tables: ReferenceTables,
    pub mesh: SimplicialMesh,
    /// `(layer, alpha)` classes per codimension `k` (entry `k - 1`).
    classes: Vec<Vec<(usize, MultiIndex)>>,
    offsets: Vec<usize>,
    dofs: Vec<GlobalDof>,
    boundary: Vec<bool>,
    /// Normal frames of all faces, per codimension.
    frames: Vec<Vec<Vec<Vec<f64>>>>,
    cells: Vec<CellData>,
}

/// Local order of a cell's vertices.
pub fn local_vertex_order(cell: &[usize]) -> Vec<usize> {
    let mut s = cell.to_vec();
    s.sort_unstable();
    let last = s.pop().expect("cell has vertices");
    let mut out = vec![last];
    out.extend(s);
    out
}

impl GlobalSpace {
    pub fn new(element: ElementDefinition, mesh: SimplicialMesh) -> Result<Self> {
        let tables = ReferenceTables::new(&element);
        Self::with_tables(element, tables, mesh)
    }

    pub fn with_tables(element: ElementDefinition, tables: ReferenceTables, mesh: SimplicialMesh) -> Result<Self> {
        let (m, n) = (element.m, element.n);
        if mesh.dim() != n {
            return Err(Error::InvalidArgument(format!(
                "element dimension {n} does not match mesh dimension {}",
                mesh.dim()
            )));
        }
        let classes: Vec<Vec<(usize, MultiIndex)>> = (1..=n).map(|k| face_dof_classes(m, n, k)).collect();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut dofs = Vec::new();
        let mut boundary = Vec::new();
        for k in 1..=n {
            offsets.push(dofs.len());
            let t = mesh.faces(k);
            for f in 0..t.len() {
                for (layer, alpha) in &classes[k - 1] {
                    dofs.push(GlobalDof { codim: k, face: f, layer: *layer, alpha: alpha.clone() });
                    boundary.push(t.boundary[f]);
                }
            }
        }
        offsets.push(dofs.len());
        let frames: Vec<Vec<Vec<Vec<f64>>>> = (1..=n)
            .map(|k| {
                mesh.faces(k)
                    .faces
                    .par_iter()
                    .map(|verts| {
                        let pts: Vec<Vec<f64>> = verts.iter().map(|&v| mesh.vertices()[v].clone()).collect();
                        normal_frame(&pts)
                    })
                    .collect()
            })
            .collect();
        let mut space = Self { element, tables, mesh, classes, offsets, dofs, boundary, frames, cells: Vec::new() };
        let cells: Result<Vec<CellData>> =
            (0..space.mesh.num_cells()).into_par_iter().map(|c| space.build_cell(c)).collect();
        space.cells = cells?;
        Ok(space)
    }

    fn build_cell(&self, cell: usize) -> Result<CellData> {
        let local_vertices = local_vertex_order(&self.mesh.cells()[cell]);
        let pts: Vec<Vec<f64>> = local_vertices.iter().map(|&v| self.mesh.vertices()[v].clone()).collect();
        let geometry = SimplexGeometry::new(pts)?;
        let mut l2g = Vec::with_capacity(self.element.dofs.len());
        let mut functionals = Vec::with_capacity(self.element.dofs.len());
        let mut scales = Vec::with_capacity(self.element.dofs.len());
        let h = self.mesh.cell_diameter(cell);
        for d in &self.element.dofs {
            let (face, class) = self.locate(&local_vertices, &d.face.vertices, d.layer, &d.alpha)?;
            let k = d.face.codim;
            l2g.push(self.offsets[k - 1] + face * self.classes[k - 1].len() + class);
            let frame = &self.frames[k - 1][face];
            functionals.push(DofFunctional::with_frame(&d.face.vertices, &d.alpha, frame, &geometry));
            scales.push(h.powi(d.order() as i32));
        }
        let mut v = crate::element::functional_matrix(&functionals, &self.tables.basis);
        // equilibrate rows: a derivative of order r scales like h^-r
        for (i, s) in scales.iter().enumerate() {
            for j in 0..v.cols() {
                v[(i, j)] *= s;
            }
        }
        let mut coeffs = v.inverse().map_err(|_| Error::FrameMismatch { face: local_vertices.clone() })?;
        for i in 0..coeffs.rows() {
            for (j, s) in scales.iter().enumerate() {
                coeffs[(i, j)] *= s;
            }
        }
        Ok(CellData { local_vertices, geometry, l2g, coeffs })
    }

    /// Global face id and class index of a local DOF.
    fn locate(&self, local_vertices: &[usize], face: &[usize], layer: usize, alpha: &MultiIndex) -> Result<(usize, usize)> {
        let n = self.element.n;
        let k = n + 1 - face.len();
        let mut key: Vec<usize> = face.iter().map(|&i| local_vertices[i]).collect();
        key.sort_unstable();
        let id = self
            .mesh
            .faces(k)
            .lookup(&key)
            .ok_or_else(|| Error::FrameMismatch { face: key.clone() })?;
        let class = self.classes[k - 1]
            .iter()
            .position(|(l, a)| *l == layer && a == alpha)
            .ok_or(Error::FrameMismatch { face: key })?;
        Ok((id, class))
    }

    pub fn ndofs(&self) -> usize {
        self.dofs.len()
    }

    pub fn dofs(&self) -> &[GlobalDof] {
        &self.dofs
    }

    pub fn is_boundary(&self, dof: usize) -> bool {
        self.boundary[dof]
    }

    pub fn boundary_dofs(&self) -> Vec<usize> {
        (0..self.ndofs()).filter(|&i| self.boundary[i]).collect()
    }

    pub fn num_boundary_dofs(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }

    pub fn cells(&self) -> &[CellData] {
        &self.cells
    }

    pub fn frame(&self, codim: usize, face: usize) -> &[Vec<f64>] {
        &self.frames[codim - 1][face]
    }

    /// Number of DOFs attached to one face of codimension `k`.
    pub fn dofs_per_face(&self, k: usize) -> usize {
        self.classes[k - 1].len()
    }

    /// Shape-basis coefficients of `u` restricted to `cell`.
    pub fn local_coefficients(&self, cell: usize, u: &[f64]) -> Vec<f64> {
        let c = &self.cells[cell];
        let loc: Vec<f64> = c.l2g.iter().map(|&g| u[g]).collect();
        c.coeffs.matvec(&loc)
    }

    /// `u` on `cell` as a polynomial in the local barycentric variables.
    pub fn local_polynomial(&self, cell: usize, u: &[f64]) -> BaryPoly<f64> {
        let a = self.local_coefficients(cell, u);
        let mut p = BaryPoly::zero(self.element.n);
        for (ai, phi) in a.iter().zip(&self.tables.basis) {
            p = &p + &phi.scale(ai);
        }
        p
    }

    /// Evaluates global DOF `dof` on the restriction of `u` to `cell`.
    pub fn dof_on_cell(&self, cell: usize, dof: usize, u: &[f64]) -> Result<f64> {
        let c = &self.cells[cell];
        let i = c
            .l2g
            .iter()
            .position(|&g| g == dof)
            .ok_or_else(|| Error::InvalidArgument(format!("DOF {dof} does not touch cell {cell}")))?;
        let d = &self.element.dofs[i];
        let g = &self.dofs[dof];
        let f = DofFunctional::with_frame(&d.face.vertices, &d.alpha, self.frame(g.codim, g.face), &c.geometry);
        Ok(f.apply(&self.local_polynomial(cell, u)))
    }

    /// Cells whose closure contains the face of a global DOF.
    pub fn cells_of_dof(&self, dof: usize) -> &[usize] {
        let g = &self.dofs[dof];
        &self.mesh.faces(g.codim).cells[g.face]
    }
}
