//! MatrixMarket coordinate files and plain-text vectors.
//!
//! Matrices are written as `%%MatrixMarket matrix coordinate real general`
//! with 1-based indices. The reader also accepts `integer` fields and
//! `symmetric` storage. Vectors are one value per line; blank lines and lines
//! starting with `%` or `#` are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::matrix::SparseMatrix;
use crate::solvers::LcpProblem;
use crate::{LcpError, Result, Scalar};

fn parse_err(line: usize, message: impl Into<String>) -> LcpError {
    LcpError::Parse { line, message: message.into() }
}

fn parse_value<T: Scalar>(tok: &str, line: usize) -> Result<T> {
    tok.parse::<T>().map_err(|_| parse_err(line, format!("invalid number '{tok}'")))
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing field"))?;
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("invalid index '{tok}'")))
}

pub fn read_matrix_market<T: Scalar>(reader: impl Read) -> Result<SparseMatrix<T>> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (_, banner) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let banner = banner?;
    let fields: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(parse_err(1, "missing %%MatrixMarket matrix banner"));
    }
    if fields[2] != "coordinate" {
        return Err(parse_err(1, format!("unsupported format '{}'", fields[2])));
    }
    if fields[3] != "real" && fields[3] != "integer" {
        return Err(parse_err(1, format!("unsupported field '{}'", fields[3])));
    }
    let symmetric = match fields[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(parse_err(1, format!("unsupported symmetry '{other}'"))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut triplets = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match size {
            None => {
                let rows = parse_index(toks.next(), lineno)?;
                let cols = parse_index(toks.next(), lineno)?;
                let nnz = parse_index(toks.next(), lineno)?;
                if rows != cols {
                    return Err(LcpError::NotSquare { rows, cols });
                }
                size = Some((rows, cols, nnz));
                triplets.reserve(nnz);
            }
            Some((n, _, _)) => {
                let i = parse_index(toks.next(), lineno)?;
                let j = parse_index(toks.next(), lineno)?;
                let v: T = parse_value(toks.next().ok_or_else(|| parse_err(lineno, "missing value"))?, lineno)?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(parse_err(lineno, format!("index ({i}, {j}) outside 1..={n}")));
                }
                triplets.push((i - 1, j - 1, v));
                if symmetric && i != j {
                    triplets.push((j - 1, i - 1, v));
                }
            }
        }
    }
    let (n, _, nnz) = size.ok_or_else(|| parse_err(2, "missing size line"))?;
    let stored = if symmetric { triplets.iter().filter(|t| t.0 >= t.1).count() } else { triplets.len() };
    if stored != nnz {
        return Err(parse_err(0, format!("expected {nnz} entries, found {stored}")));
    }
    SparseMatrix::from_triplets(n, triplets)
}

pub fn write_matrix_market<T: Scalar>(mut w: impl Write, a: &SparseMatrix<T>) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.dim(), a.dim(), a.nnz())?;
    for (i, j, v) in a.iter() {
        writeln!(w, "{} {} {}", i + 1, j + 1, v)?;
    }
    Ok(())
}

pub fn read_vector<T: Scalar>(reader: impl Read) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') || t.starts_with('#') {
            continue;
        }
        out.push(parse_value(t, idx + 1)?);
    }
    Ok(out)
}

pub fn write_vector<T: Scalar>(mut w: impl Write, v: &[T]) -> Result<()> {
    for x in v {
        writeln!(w, "{x}")?;
    }
    Ok(())
}

pub fn read_matrix_market_file<T: Scalar>(path: impl AsRef<Path>) -> Result<SparseMatrix<T>> {
    read_matrix_market(open(path.as_ref())?)
}

pub fn read_vector_file<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<T>> {
    read_vector(open(path.as_ref())?)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| LcpError::Io(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| LcpError::Io(format!("{}: {e}", path.display())))
}

/// Loads `A` from a MatrixMarket file and `sigma` from a vector file.
pub fn read_problem<T: Scalar>(matrix: impl AsRef<Path>, sigma: impl AsRef<Path>) -> Result<LcpProblem<T>> {
    LcpProblem::new(read_matrix_market_file(matrix)?, read_vector_file(sigma)?)
}

pub fn write_problem<T: Scalar>(p: &LcpProblem<T>, matrix: impl AsRef<Path>, sigma: impl AsRef<Path>) -> Result<()> {
    let mut w = create(matrix.as_ref())?;
    write_matrix_market(&mut w, &p.a)?;
    w.flush()?;
    let mut w = create(sigma.as_ref())?;
    write_vector(&mut w, &p.sigma)?;
    w.flush()?;
    Ok(())
}
