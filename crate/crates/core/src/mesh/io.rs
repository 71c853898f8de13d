//! Plain-text mesh format: a header `n V C`, then `V` lines of `n`
//! coordinates and `C` lines of `n + 1` vertex ids.

use std::io::{BufRead, Write};

use super::SimplicialMesh;
use crate::error::{Error, Result};

pub fn write_mesh<W: Write>(mesh: &SimplicialMesh, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {}", mesh.dim(), mesh.num_vertices(), mesh.num_cells())?;
    for v in mesh.vertices() {
        let line: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    for c in mesh.cells() {
        let line: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

fn parse_line<T: std::str::FromStr>(line: &str, lineno: usize, expect: usize) -> Result<Vec<T>> {
    let vals: Vec<T> = line
        .split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| Error::MeshFormat { line: lineno, msg: format!("cannot parse `{t}`") }))
        .collect::<Result<_>>()?;
    if vals.len() != expect {
        return Err(Error::MeshFormat { line: lineno, msg: format!("expected {expect} values, found {}", vals.len()) });
    }
    Ok(vals)
}

pub fn read_mesh<R: BufRead>(input: R) -> Result<SimplicialMesh> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
    let mut next = |what: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((i, l)) => Ok((i, l?)),
            None => Err(Error::MeshFormat { line: 0, msg: format!("unexpected end of file, expected {what}") }),
        }
    };
    let (i, header) = next("header")?;
    let h: Vec<usize> = parse_line(&header, i, 3)?;
    let (n, nv, nc) = (h[0], h[1], h[2]);
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (i, l) = next("vertex")?;
        vertices.push(parse_line::<f64>(&l, i, n)?);
    }
    let mut cells = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (i, l) = next("cell")?;
        let c: Vec<usize> = parse_line(&l, i, n + 1)?;
        if let Some(&bad) = c.iter().find(|&&v| v >= nv) {
            return Err(Error::MeshFormat { line: i, msg: format!("vertex id {bad} out of range") });
        }
        cells.push(c);
    }
    SimplicialMesh::new(vertices, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::l_shape_mesh;

    #[test]
    fn round_trip() {
        let m = l_shape_mesh(2).unwrap();
        let mut buf = Vec::new();
        write_mesh(&m, &mut buf).unwrap();
        let back = read_mesh(&buf[..]).unwrap();
        assert_eq!(back.vertices(), m.vertices());
        assert_eq!(back.cells(), m.cells());
    }

    #[test]
    fn reports_line_numbers() {
        let text = "2 3 1\n0 0\n1 0\n0 1\n0 1 7\n";
        match read_mesh(text.as_bytes()) {
            Err(Error::MeshFormat { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read_mesh("2 3 1\n0 0\n".as_bytes()).is_err());
    }
}
