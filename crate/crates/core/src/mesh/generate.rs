use std::collections::HashMap;

use super::SimplicialMesh;
use crate::error::{Error, Result};

pub fn unit_interval_mesh(divisions: usize) -> Result<SimplicialMesh> {
    if divisions == 0 {
        return Err(Error::InvalidDivisions(divisions));
    }
    let d = divisions as f64;
    let vertices = (0..=divisions).map(|i| vec![i as f64 / d]).collect();
    let cells = (0..divisions).map(|i| vec![i, i + 1]).collect();
    SimplicialMesh::new(vertices, cells)
}

/// Splits the unit squares with lower-left corners `origins` (in grid units
/// of size `1/divisions`) along the lower-left to upper-right diagonal.
fn squares_mesh(divisions: usize, origins: &[(i64, i64)]) -> Result<SimplicialMesh> {
    let d = divisions as f64;
    let mut ids: HashMap<(i64, i64), usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut vid = |p: (i64, i64), vertices: &mut Vec<Vec<f64>>| {
        *ids.entry(p).or_insert_with(|| {
            vertices.push(vec![p.0 as f64 / d, p.1 as f64 / d]);
            vertices.len() - 1
        })
    };
    let mut cells = Vec::with_capacity(2 * origins.len());
    for &(i, j) in origins {
        let v00 = vid((i, j), &mut vertices);
        let v10 = vid((i + 1, j), &mut vertices);
        let v01 = vid((i, j + 1), &mut vertices);
        let v11 = vid((i + 1, j + 1), &mut vertices);
        cells.push(vec![v00, v10, v11]);
        cells.push(vec![v00, v11, v01]);
    }
    SimplicialMesh::new(vertices, cells)
}

/// `divisions^2` squares of the unit square, two triangles each.
pub fn unit_square_mesh(divisions: usize) -> Result<SimplicialMesh> {
    if divisions == 0 {
        return Err(Error::InvalidDivisions(divisions));
    }
    let d = divisions as i64;
    let origins: Vec<(i64, i64)> = (0..d).flat_map(|j| (0..d).map(move |i| (i, j))).collect();
    squares_mesh(divisions, &origins)
}

/// `(-1,1)^2` minus `[0,1) x (-1,0]`, with `divisions` squares per unit
/// length in each direction.
pub fn l_shape_mesh(divisions: usize) -> Result<SimplicialMesh> {
    if divisions < 2 || !divisions.is_multiple_of(2) {
        return Err(Error::InvalidDivisions(divisions));
    }
    let d = divisions as i64;
    let origins: Vec<(i64, i64)> = (-d..d)
        .flat_map(|j| (-d..d).map(move |i| (i, j)))
        .filter(|&(i, j)| !(i >= 0 && j < 0))
        .collect();
    squares_mesh(divisions, &origins)
}

/// Unit cube, each small cube cut into six tetrahedra around its main
/// diagonal.
pub fn unit_cube_mesh(divisions: usize) -> Result<SimplicialMesh> {
    if divisions == 0 {
        return Err(Error::InvalidDivisions(divisions));
    }
    let d = divisions;
    let id = |i: usize, j: usize, k: usize| i + (d + 1) * (j + (d + 1) * k);
    let mut vertices = Vec::new();
    for k in 0..=d {
        for j in 0..=d {
            for i in 0..=d {
                vertices.push(vec![i as f64 / d as f64, j as f64 / d as f64, k as f64 / d as f64]);
            }
        }
    }
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut cells = Vec::new();
    for k in 0..d {
        for j in 0..d {
            for i in 0..d {
                for p in &perms {
                    let mut c = [i, j, k];
                    let mut cell = vec![id(c[0], c[1], c[2])];
                    for &axis in p {
                        c[axis] += 1;
                        cell.push(id(c[0], c[1], c[2]));
                    }
                    cells.push(cell);
                }
            }
        }
    }
    SimplicialMesh::new(vertices, cells)
}

/// Bisection in 1D, red refinement into four similar triangles in 2D.
pub fn uniform_refine(mesh: &SimplicialMesh) -> Result<SimplicialMesh> {
    let n = mesh.dim();
    if n > 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut vertices = mesh.vertices().to_vec();
    let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Vec<f64>>| {
        let key = (a.min(b), a.max(b));
        *mid.entry(key).or_insert_with(|| {
            let p = vertices[a].iter().zip(&vertices[b]).map(|(x, y)| 0.5 * (x + y)).collect();
            vertices.push(p);
            vertices.len() - 1
        })
    };
    let mut cells = Vec::with_capacity(mesh.num_cells() * (1 << n));
    for c in mesh.cells() {
        if n == 1 {
            let m = midpoint(c[0], c[1], &mut vertices);
            cells.push(vec![c[0], m]);
            cells.push(vec![m, c[1]]);
        } else {
            let (a, b, cc) = (c[0], c[1], c[2]);
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, cc, &mut vertices);
            let ca = midpoint(cc, a, &mut vertices);
            cells.push(vec![a, ab, ca]);
            cells.push(vec![ab, b, bc]);
            cells.push(vec![ca, bc, cc]);
            cells.push(vec![ab, bc, ca]);
        }
    }
    SimplicialMesh::new(vertices, cells)
}
