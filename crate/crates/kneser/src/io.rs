//! Edge-list and DOT formats.
//!
//! An edge list is one header line followed by one `u v` line per edge:
//!
//! ```text
//! # family=kneser n=5 k=2 r=1 vertices=10
//! 0 9
//! ```
//!
//! Vertices are colex ranks, `u < v`, and lines are sorted.

use std::fmt;
use std::io::{self, BufRead, Write};

use kneser_core::{FamilySpec, Graph};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("missing `# ... vertices=<count>` header")]
    MissingHeader,
    #[error("bad header field `{0}`")]
    BadHeader(String),
    #[error("line {line}: expected `u v`, found `{text}`")]
    BadEdge { line: usize, text: String },
    #[error(transparent)]
    Graph(#[from] kneser_core::Error),
}

/// `key=value` fields of the header line; `vertices` is always last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    fields: Vec<(String, String)>,
    vertices: u64,
}

impl Header {
    pub fn new(vertices: u64) -> Self {
        Header {
            fields: Vec::new(),
            vertices,
        }
    }

    pub fn for_family(spec: &FamilySpec) -> Self {
        let mut header = Header::new(spec.vertex_count());
        // FamilySpec's Display already renders `family=.. n=.. k=.. ..`.
        for token in spec.to_string().split_whitespace() {
            if let Some((key, value)) = token.split_once('=') {
                header.push(key, value);
            }
        }
        header
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn vertices(&self) -> u64 {
        self.vertices
    }

    pub fn parse(line: &str) -> Result<Self, FormatError> {
        let body = line.strip_prefix('#').ok_or(FormatError::MissingHeader)?;
        let mut fields = Vec::new();
        let mut vertices = None;
        for token in body.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| FormatError::BadHeader(token.to_string()))?;
            if key == "vertices" {
                let count = value
                    .parse()
                    .map_err(|_| FormatError::BadHeader(token.to_string()))?;
                vertices = Some(count);
            } else {
                fields.push((key.to_string(), value.to_string()));
            }
        }
        Ok(Header {
            fields,
            vertices: vertices.ok_or(FormatError::MissingHeader)?,
        })
    }
}

impl fmt::Display for Header {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("#")?;
        for (key, value) in &self.fields {
            write!(f, " {key}={value}")?;
        }
        write!(f, " vertices={}", self.vertices)
    }
}

pub fn write_edgelist<W: Write>(mut out: W, header: &Header, graph: &Graph) -> io::Result<()> {
    writeln!(out, "{header}")?;
    let mut result = Ok(());
    graph.for_each_edge(|u, v| {
        if result.is_ok() {
            result = writeln!(out, "{u} {v}");
        }
    });
    result?;
    out.flush()
}

/// Parses an edge list into an explicit graph.
pub fn read_edgelist<R: BufRead>(input: R) -> Result<(Header, Graph), FormatError> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => Header::parse(line?.trim())?,
        None => return Err(FormatError::MissingHeader),
    };
    let count = u32::try_from(header.vertices())
        .map_err(|_| FormatError::BadHeader(format!("vertices={}", header.vertices())))?;
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let bad = || FormatError::BadEdge {
            line: idx + 1,
            text: text.to_string(),
        };
        let mut parts = text.split_whitespace();
        let (Some(u), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
    }
    Ok((header, Graph::from_edges(count, edges)?))
}

/// Undirected DOT. Subset graphs label nodes with their subset, e.g. `{1,2,5}`.
pub fn write_dot<W: Write>(mut out: W, name: &str, graph: &Graph) -> io::Result<()> {
    writeln!(out, "graph \"{}\" {{", name.replace('"', "'"))?;
    for v in 0..graph.vertex_count() {
        match graph.vertex(v) {
            Some(subset) => writeln!(out, "  {v} [label=\"{subset}\"];")?,
            None => writeln!(out, "  {v};")?,
        }
    }
    let mut result = Ok(());
    graph.for_each_edge(|u, v| {
        if result.is_ok() {
            result = writeln!(out, "  {u} -- {v};");
        }
    });
    result?;
    writeln!(out, "}}")?;
    out.flush()
}
