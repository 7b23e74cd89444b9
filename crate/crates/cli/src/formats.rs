//! Graph and line-set files.
//!
//! Text graphs start with `drgraph 1 <vertices> <edges>`, optionally followed
//! by `labels subspace <n> <D> <q>` and one basis per vertex, then one line
//! of sorted neighbour ids per vertex. A basis is written row by row, rows
//! joined by `.`; a binary row is the hex value of its `n`-bit word, other
//! rows use two hex digits per entry. The zero subspace is written `-`.
//!
//! Binary graphs (`.drgb`) start with the line `drgraphbin 1`, then
//! little-endian `u32` values: vertex count, edge count, a label flag, and
//! when the flag is one `n`, `D`, `q` followed by the `D * n` basis entries
//! of every vertex as bytes; then the `vertices + 1` offsets and the
//! neighbour array.
//!
//! Line sets are `lines 1 <count>` followed by one sorted id list per line.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use drglines::graphcore::{Graph, SubspaceLabels};
use drglines::qlinalg::{rref, FieldSpec, Subspace};

use crate::CliError;

fn bad(path: &Path, msg: impl std::fmt::Display) -> CliError {
    CliError::input(format!("{}: {msg}", path.display()))
}

fn io(path: &Path, e: std::io::Error) -> CliError {
    CliError::input(format!("{}: {e}", path.display()))
}

fn is_binary(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "drgb")
}

pub fn encode_basis(s: &Subspace) -> String {
    if s.dim() == 0 {
        return "-".into();
    }
    let n = s.ambient_dim();
    let rows: Vec<String> = match s.binary_rows() {
        Some(words) => words
            .iter()
            .map(|w| format!("{:0width$x}", w, width = n.div_ceil(4)))
            .collect(),
        None => s
            .matrix()
            .iter()
            .map(|r| {
                r.iter().fold(String::new(), |mut acc, e| {
                    let _ = write!(acc, "{e:02x}");
                    acc
                })
            })
            .collect(),
    };
    rows.join(".")
}

pub fn decode_basis(text: &str, n: usize, field: &FieldSpec) -> Result<Subspace, String> {
    if text == "-" {
        return Ok(Subspace::zero(field, n));
    }
    let mut matrix = Vec::new();
    for row in text.split('.') {
        let entries: Vec<u8> = if field.is_binary() && n <= 64 {
            let w = u64::from_str_radix(row, 16).map_err(|e| format!("bad row {row:?}: {e}"))?;
            if n < 64 && w >> n != 0 {
                return Err(format!("row {row:?} exceeds {n} bits"));
            }
            (0..n).map(|j| (w >> (n - 1 - j) & 1) as u8).collect()
        } else {
            if row.len() != 2 * n || !row.is_ascii() {
                return Err(format!("row {row:?} should have {} hex digits", 2 * n));
            }
            (0..n)
                .map(|j| {
                    u8::from_str_radix(&row[2 * j..2 * j + 2], 16)
                        .map_err(|e| format!("bad row {row:?}: {e}"))
                })
                .collect::<Result<_, _>>()?
        };
        matrix.push(entries);
    }
    let s = rref(field, n, &matrix).map_err(|e| e.to_string())?;
    if s.dim() != matrix.len() || encode_basis(&s) != text {
        return Err(format!("basis {text:?} is not in canonical form"));
    }
    Ok(s)
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(|e| io(path, e))?;
    let mut out = BufWriter::new(file);
    let res = if is_binary(path) {
        write_binary(&mut out, g)
    } else {
        write_text(&mut out, g)
    };
    res.and_then(|_| out.flush()).map_err(|e| io(path, e))
}

fn write_text(out: &mut impl Write, g: &Graph) -> std::io::Result<()> {
    writeln!(out, "drgraph 1 {} {}", g.vertex_count(), g.edge_count())?;
    if let Some(l) = g.labels() {
        writeln!(out, "labels subspace {} {} {}", l.n, l.d, l.q)?;
        for s in &l.subspaces {
            writeln!(out, "{}", encode_basis(s))?;
        }
    }
    let mut line = String::new();
    for v in 0..g.vertex_count() as u32 {
        line.clear();
        for (i, u) in g.neighbors(v).iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            let _ = write!(line, "{u}");
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn put(out: &mut impl Write, x: u32) -> std::io::Result<()> {
    out.write_all(&x.to_le_bytes())
}

fn write_binary(out: &mut impl Write, g: &Graph) -> std::io::Result<()> {
    let too_big = || {
        std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "graph exceeds 32-bit offsets",
        )
    };
    let arcs = u32::try_from(g.targets().len()).map_err(|_| too_big())?;
    out.write_all(b"drgraphbin 1\n")?;
    put(out, g.vertex_count() as u32)?;
    put(out, arcs / 2)?;
    match g.labels() {
        None => put(out, 0)?,
        Some(l) => {
            put(out, 1)?;
            put(out, l.n as u32)?;
            put(out, l.d as u32)?;
            put(out, l.q as u32)?;
            for s in &l.subspaces {
                out.write_all(&s.matrix().concat())?;
            }
        }
    }
    for &o in g.offsets() {
        put(out, o as u32)?;
    }
    for &t in g.targets() {
        put(out, t)?;
    }
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    if is_binary(path) {
        let mut bytes = Vec::new();
        fs::File::open(path)
            .and_then(|mut f| f.read_to_end(&mut bytes))
            .map_err(|e| io(path, e))?;
        read_binary(&bytes).map_err(|m| bad(path, m))
    } else {
        let text = fs::read_to_string(path).map_err(|e| io(path, e))?;
        read_text(&text).map_err(|m| bad(path, m))
    }
}

fn parse_fields<const N: usize>(line: Option<&str>, prefix: &[&str]) -> Result<[usize; N], String> {
    let line = line.ok_or("unexpected end of file")?;
    let words: Vec<&str> = line.split_ascii_whitespace().collect();
    if words.len() != prefix.len() + N || words[..prefix.len()] != *prefix {
        return Err(format!(
            "expected `{} <{N} numbers>`, found {line:?}",
            prefix.join(" ")
        ));
    }
    let mut out = [0usize; N];
    for (o, w) in out.iter_mut().zip(&words[prefix.len()..]) {
        *o = w.parse().map_err(|e| format!("bad number {w:?}: {e}"))?;
    }
    Ok(out)
}

fn labels_for(
    n: usize,
    d: usize,
    q: usize,
    subspaces: Vec<Subspace>,
) -> Result<SubspaceLabels, String> {
    if subspaces.iter().any(|s| s.dim() != d) {
        return Err(format!("a label is not a {d}-dimensional subspace"));
    }
    Ok(SubspaceLabels {
        n,
        d,
        q: q as u8,
        subspaces,
    })
}

fn read_text(text: &str) -> Result<Graph, String> {
    let mut lines = text.lines().peekable();
    let [v, e] = parse_fields::<2>(lines.next(), &["drgraph", "1"])?;
    let mut labels = None;
    if lines.peek().is_some_and(|l| l.starts_with("labels")) {
        let [n, d, q] = parse_fields::<3>(lines.next(), &["labels", "subspace"])?;
        let field = FieldSpec::new(q as u64).map_err(|e| e.to_string())?;
        let subspaces = (0..v)
            .map(|i| {
                decode_basis(lines.next().ok_or("missing label")?, n, &field)
                    .map_err(|m| format!("label {i}: {m}"))
            })
            .collect::<Result<Vec<_>, String>>()?;
        labels = Some(labels_for(n, d, q, subspaces)?);
    }
    let mut adjacency = Vec::with_capacity(v);
    for i in 0..v {
        let line = lines
            .next()
            .ok_or_else(|| format!("missing adjacency of vertex {i}"))?;
        let list = line
            .split_ascii_whitespace()
            .map(|w| {
                w.parse::<u32>()
                    .map_err(|e| format!("vertex {i}: bad id {w:?}: {e}"))
            })
            .collect::<Result<Vec<u32>, String>>()?;
        adjacency.push(list);
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err("trailing content after the adjacency lists".into());
    }
    let g = Graph::from_adjacency(adjacency).map_err(|e| e.to_string())?;
    if g.edge_count() != e {
        return Err(format!(
            "header says {e} edges, adjacency has {}",
            g.edge_count()
        ));
    }
    match labels {
        Some(l) => g.with_labels(l).map_err(|e| e.to_string()),
        None => Ok(g),
    }
}

fn read_binary(bytes: &[u8]) -> Result<Graph, String> {
    let rest = bytes
        .strip_prefix(b"drgraphbin 1\n")
        .ok_or("missing `drgraphbin 1` header")?;
    let mut pos = 0;
    let mut take = |len: usize| -> Result<&[u8], String> {
        let s = rest.get(pos..pos + len).ok_or("truncated file")?;
        pos += len;
        Ok(s)
    };
    let mut word = || -> Result<u32, String> {
        Ok(u32::from_le_bytes(take(4)?.try_into().expect("four bytes")))
    };
    let (v, e, flag) = (word()? as usize, word()? as usize, word()?);
    let mut labels = None;
    if flag == 1 {
        let (n, d, q) = (word()? as usize, word()? as usize, word()? as usize);
        let field = FieldSpec::new(q as u64).map_err(|e| e.to_string())?;
        let mut subspaces = Vec::with_capacity(v);
        for _ in 0..v {
            let entries = take(d * n)?;
            let matrix: Vec<Vec<u8>> = entries.chunks(n.max(1)).map(<[u8]>::to_vec).collect();
            let s = rref(&field, n, &matrix[..d.min(matrix.len())]).map_err(|e| e.to_string())?;
            if s.matrix().concat() != entries {
                return Err("label is not in canonical form".into());
            }
            subspaces.push(s);
        }
        labels = Some(labels_for(n, d, q, subspaces)?);
    } else if flag != 0 {
        return Err(format!("bad label flag {flag}"));
    }
    let mut word = || -> Result<u32, String> {
        Ok(u32::from_le_bytes(take(4)?.try_into().expect("four bytes")))
    };
    let offsets = (0..=v)
        .map(|_| word().map(u64::from))
        .collect::<Result<Vec<u64>, String>>()?;
    let targets = (0..2 * e)
        .map(|_| word())
        .collect::<Result<Vec<u32>, String>>()?;
    if pos != rest.len() {
        return Err("trailing bytes".into());
    }
    let g = Graph::from_csr(offsets, targets).map_err(|e| e.to_string())?;
    match labels {
        Some(l) => g.with_labels(l).map_err(|e| e.to_string()),
        None => Ok(g),
    }
}

pub fn write_lines(path: &Path, lines: &[Vec<u32>]) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(|e| io(path, e))?;
    let mut out = BufWriter::new(file);
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "lines 1 {}", lines.len())?;
        let mut buf = String::new();
        for line in lines {
            buf.clear();
            for (i, p) in line.iter().enumerate() {
                if i > 0 {
                    buf.push(' ');
                }
                let _ = write!(buf, "{p}");
            }
            writeln!(out, "{buf}")?;
        }
        out.flush()
    };
    write().map_err(|e| io(path, e))
}

pub fn read_lines(path: &Path) -> Result<Vec<Vec<u32>>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io(path, e))?;
    let mut it = text.lines();
    let [count] = parse_fields::<1>(it.next(), &["lines", "1"]).map_err(|m| bad(path, m))?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let line = it
            .next()
            .ok_or_else(|| bad(path, format!("missing line {i}")))?;
        let pts = line
            .split_ascii_whitespace()
            .map(|w| w.parse::<u32>())
            .collect::<Result<Vec<u32>, _>>()
            .map_err(|e| bad(path, format!("line {i}: {e}")))?;
        if pts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(path, format!("line {i} is not strictly increasing")));
        }
        out.push(pts);
    }
    if it.any(|l| !l.trim().is_empty()) {
        return Err(bad(path, "trailing content"));
    }
    Ok(out)
}
