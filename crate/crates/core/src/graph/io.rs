//! Edge-list files.
//!
//! Text: one `u v w` per line, `#` starts a comment, and an optional
//! `p <vertex_count> <edge_count>` header. Binary: the magic `EICG`, a version
//! byte, little-endian `u64` vertex and edge counts, then `(u64, u64, f64)`
//! records. Both list each undirected edge once.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Edge, Graph, VertexId};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"EICG";
const VERSION: u8 = 1;
const HEADER_LEN: usize = 4 + 1 + 8 + 8;
const RECORD_LEN: usize = 8 + 8 + 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Binary,
}

impl Format {
    /// `.txt`, `.el` and `.edges` are text; anything else is binary.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("txt" | "el" | "edges") => Format::Text,
            _ => Format::Binary,
        }
    }
}

/// Parses a text edge list.
///
/// The vertex count comes from the `p` header if present, else from
/// `vertex_count`, else from the largest id seen plus one.
pub fn read_text<R: BufRead>(reader: R, vertex_count: Option<usize>) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<u64> = None;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let at = || format!("line {lineno}");
        if fields[0] == "p" {
            if header.is_some() || !edges.is_empty() {
                return Err(Error::parse(at(), "header must appear once, before any edge"));
            }
            if fields.len() != 3 {
                return Err(Error::parse(at(), "expected `p <vertex_count> <edge_count>`"));
            }
            let n = fields[1]
                .parse::<usize>()
                .map_err(|e| Error::parse(at(), format!("vertex count: {e}")))?;
            let m = fields[2]
                .parse::<usize>()
                .map_err(|e| Error::parse(at(), format!("edge count: {e}")))?;
            header = Some((n, m));
            continue;
        }
        if fields.len() != 3 {
            return Err(Error::parse(
                at(),
                format!("expected `u v w`, found {} fields", fields.len()),
            ));
        }
        let u = fields[0]
            .parse::<u64>()
            .map_err(|e| Error::parse(at(), format!("source id: {e}")))?;
        let v = fields[1]
            .parse::<u64>()
            .map_err(|e| Error::parse(at(), format!("target id: {e}")))?;
        let w = fields[2]
            .parse::<f64>()
            .map_err(|e| Error::parse(at(), format!("weight: {e}")))?;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Validation(format!(
                "{}: weight {} must be positive and finite",
                at(),
                fields[2]
            )));
        }
        if u > VertexId::MAX as u64 || v > VertexId::MAX as u64 {
            return Err(Error::Validation(format!("{}: vertex id out of range", at())));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push(Edge::new(u as VertexId, v as VertexId, w));
    }

    let n = match (header, vertex_count) {
        (Some((n, m)), _) => {
            if m != edges.len() {
                return Err(Error::Validation(format!(
                    "header declares {m} edges but {} were listed",
                    edges.len()
                )));
            }
            n
        }
        (None, Some(n)) => n,
        (None, None) => max_id.map_or(0, |m| m as usize + 1),
    };
    Graph::from_edges(n, edges)
}

/// Writes a text edge list with a `p` header.
pub fn write_text<W: Write>(graph: &Graph, mut writer: W) -> Result<()> {
    writeln!(writer, "p {} {}", graph.vertex_count(), graph.edge_count())?;
    for e in graph.edges() {
        // `{}` on f64 prints the shortest string that parses back to the same value.
        writeln!(writer, "{} {} {}", e.u, e.v, e.weight)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut reader: R) -> Result<Graph> {
    let mut header = [0u8; HEADER_LEN];
    read_exact_at(&mut reader, &mut header, 0)?;
    if &header[..4] != MAGIC {
        return Err(Error::parse("offset 0", "missing EICG magic"));
    }
    if header[4] != VERSION {
        return Err(Error::parse(
            "offset 4",
            format!("unsupported version {}", header[4]),
        ));
    }
    let n = u64::from_le_bytes(header[5..13].try_into().unwrap());
    let m = u64::from_le_bytes(header[13..21].try_into().unwrap());
    if n > VertexId::MAX as u64 {
        return Err(Error::Validation(format!("vertex count {n} out of range")));
    }

    let mut edges = Vec::with_capacity(m.min(1 << 24) as usize);
    let mut record = [0u8; RECORD_LEN];
    for i in 0..m {
        let offset = HEADER_LEN as u64 + i * RECORD_LEN as u64;
        read_exact_at(&mut reader, &mut record, offset)?;
        let u = u64::from_le_bytes(record[0..8].try_into().unwrap());
        let v = u64::from_le_bytes(record[8..16].try_into().unwrap());
        let w = f64::from_le_bytes(record[16..24].try_into().unwrap());
        if u >= n || v >= n {
            return Err(Error::Validation(format!(
                "record {i} at offset {offset}: vertex id out of range"
            )));
        }
        edges.push(Edge::new(u as VertexId, v as VertexId, w));
    }
    Graph::from_edges(n as usize, edges)
}

fn read_exact_at<R: Read>(reader: &mut R, buf: &mut [u8], offset: u64) -> Result<()> {
    reader.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => {
            Error::parse(format!("offset {offset}"), "truncated binary record")
        }
        _ => Error::Io(e),
    })
}

pub fn write_binary<W: Write>(graph: &Graph, mut writer: W) -> Result<()> {
    writer.write_all(MAGIC)?;
    writer.write_all(&[VERSION])?;
    writer.write_all(&(graph.vertex_count() as u64).to_le_bytes())?;
    writer.write_all(&(graph.edge_count() as u64).to_le_bytes())?;
    for e in graph.edges() {
        writer.write_all(&(e.u as u64).to_le_bytes())?;
        writer.write_all(&(e.v as u64).to_le_bytes())?;
        writer.write_all(&e.weight.to_le_bytes())?;
    }
    writer.flush()?;
    Ok(())
}

/// Loads a graph file. Without an explicit format the file is sniffed for the
/// binary magic.
pub fn load_graph(path: impl AsRef<Path>, format: Option<Format>) -> Result<Graph> {
    let mut reader = BufReader::new(File::open(path.as_ref())?);
    let format = match format {
        Some(f) => f,
        None => {
            let head = reader.fill_buf()?;
            if head.starts_with(MAGIC) {
                Format::Binary
            } else {
                Format::Text
            }
        }
    };
    match format {
        Format::Text => read_text(reader, None),
        Format::Binary => read_binary(reader),
    }
}

/// Stores a graph; without an explicit format the extension decides.
pub fn store_graph(graph: &Graph, path: impl AsRef<Path>, format: Option<Format>) -> Result<()> {
    let path = path.as_ref();
    let writer = BufWriter::new(File::create(path)?);
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Text => write_text(graph, writer),
        Format::Binary => write_binary(graph, writer),
    }
}
