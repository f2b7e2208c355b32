//! Word vector files in the word2vec text and binary layouts.
//!
//! Both start with an ASCII `count dim` header line. Text records are
//! `term v1 ... vdim`; binary records are the term, one space, then `dim`
//! little-endian `f32`s, optionally followed by a newline.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use expandir_core::{EmbeddingBuilder, EmbeddingSpace, Provenance};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VectorFormat {
    /// Binary when the file name ends in `.bin`, text otherwise.
    #[default]
    Auto,
    Text,
    Binary,
}

impl VectorFormat {
    pub fn resolve(self, path: &Path) -> VectorFormat {
        match self {
            VectorFormat::Auto if path.extension().is_some_and(|e| e == "bin") => VectorFormat::Binary,
            VectorFormat::Auto => VectorFormat::Text,
            f => f,
        }
    }
}

pub fn load_vectors(path: impl AsRef<Path>, format: VectorFormat, provenance: Provenance) -> Result<EmbeddingSpace> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::with_capacity(1 << 20, file);
    match format.resolve(path) {
        VectorFormat::Binary => read_binary(reader, path, provenance),
        _ => read_text(reader, path, provenance),
    }
}

fn parse_header(line: &str, origin: &Path) -> Result<(usize, usize)> {
    let bad = || {
        Error::parse(
            origin,
            1,
            format!("bad header {:?}, expected \"count dim\"", line.trim()),
        )
    };
    let mut parts = line.split_whitespace();
    let count = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let dim: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() || dim == 0 {
        return Err(bad());
    }
    Ok((count, dim))
}

fn push(builder: &mut EmbeddingBuilder, term: &str, v: &[f32], origin: &Path) -> Result<()> {
    if !builder.push(term, v)? {
        log::warn!(
            "{}: duplicate term {term:?}, keeping the first vector",
            origin.display()
        );
    }
    Ok(())
}

fn count_mismatch(origin: &Path, declared: usize, found: &str) -> Error {
    Error::format(
        origin,
        format!("header declares {declared} words but the file has {found}"),
    )
}

pub fn read_text<R: BufRead>(reader: R, origin: &Path, provenance: Provenance) -> Result<EmbeddingSpace> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(l) => l.map_err(|e| Error::io(origin, e))?,
        None => return Err(Error::parse(origin, 1, "empty file")),
    };
    let (count, dim) = parse_header(&header, origin)?;
    let mut builder = EmbeddingBuilder::with_capacity(dim, count)?;
    let mut records = 0usize;
    let mut values = Vec::with_capacity(dim);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.map_err(|e| Error::io(origin, e))?;
        let mut fields = line.split_whitespace();
        let Some(term) = fields.next() else {
            continue;
        };
        records += 1;
        if records > count {
            return Err(count_mismatch(origin, count, "more"));
        }
        values.clear();
        for f in fields {
            let x: f32 = f
                .parse()
                .map_err(|_| Error::parse(origin, lineno, format!("term {term:?}: bad component {f:?}")))?;
            values.push(x);
        }
        if values.len() != dim {
            return Err(Error::parse(
                origin,
                lineno,
                format!("term {term:?}: {} components, expected {dim}", values.len()),
            ));
        }
        push(&mut builder, term, &values, origin)?;
    }
    if records != count {
        return Err(count_mismatch(origin, count, &records.to_string()));
    }
    Ok(builder.build(provenance)?)
}

pub fn read_binary<R: BufRead>(mut reader: R, origin: &Path, provenance: Provenance) -> Result<EmbeddingSpace> {
    let io = |e| Error::io(origin, e);
    let mut header = Vec::new();
    reader.read_until(b'\n', &mut header).map_err(io)?;
    let header = String::from_utf8(header).map_err(|_| Error::parse(origin, 1, "header is not text"))?;
    let (count, dim) = parse_header(&header, origin)?;
    let mut offset = header.len();
    let mut builder = EmbeddingBuilder::with_capacity(dim, count)?;
    let mut term = Vec::new();
    let mut raw = vec![0u8; dim * 4];
    let mut values = vec![0f32; dim];
    for record in 1..=count {
        skip_newlines(&mut reader, &mut offset).map_err(io)?;
        term.clear();
        let n = reader.read_until(b' ', &mut term).map_err(io)?;
        let start = offset;
        let located = |msg: String| Error::format(origin, format!("record {record} at byte {start}: {msg}"));
        if n == 0 {
            return Err(count_mismatch(origin, count, &(record - 1).to_string()));
        }
        if term.pop() != Some(b' ') {
            return Err(located("truncated term".into()));
        }
        let word = std::str::from_utf8(&term).map_err(|_| located("term is not UTF-8".into()))?;
        if word.is_empty() {
            return Err(located("empty term".into()));
        }
        offset += n;
        read_exact_or(&mut reader, &mut raw)
            .map_err(|e| e.map_or_else(|| located(format!("term {word:?}: truncated vector")), io))?;
        offset += raw.len();
        for (v, b) in values.iter_mut().zip(raw.chunks_exact(4)) {
            *v = f32::from_le_bytes([b[0], b[1], b[2], b[3]]);
        }
        push(&mut builder, word, &values, origin)?;
    }
    skip_newlines(&mut reader, &mut offset).map_err(io)?;
    if !reader.fill_buf().map_err(io)?.is_empty() {
        return Err(count_mismatch(origin, count, "more"));
    }
    Ok(builder.build(provenance)?)
}

fn skip_newlines<R: BufRead>(reader: &mut R, offset: &mut usize) -> std::io::Result<()> {
    loop {
        let buf = reader.fill_buf()?;
        let n = buf.iter().take_while(|&&b| b == b'\n' || b == b'\r').count();
        if n == 0 {
            return Ok(());
        }
        reader.consume(n);
        *offset += n;
    }
}

/// `Err(None)` when the input ends early.
fn read_exact_or<R: Read>(reader: &mut R, buf: &mut [u8]) -> Result<(), Option<std::io::Error>> {
    match reader.read_exact(buf) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => Err(None),
        Err(e) => Err(Some(e)),
    }
}

pub fn write_text<W: Write>(space: &EmbeddingSpace, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", space.len(), space.dim())?;
    for (term, v) in space.iter() {
        write!(out, "{term}")?;
        for x in v {
            write!(out, " {x}")?;
        }
        writeln!(out)?;
    }
    out.flush()
}

pub fn write_binary<W: Write>(space: &EmbeddingSpace, mut out: W, newline: bool) -> std::io::Result<()> {
    writeln!(out, "{} {}", space.len(), space.dim())?;
    for (term, v) in space.iter() {
        out.write_all(term.as_bytes())?;
        out.write_all(b" ")?;
        for x in v {
            out.write_all(&x.to_le_bytes())?;
        }
        if newline {
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

pub fn save_vectors(space: &EmbeddingSpace, path: impl AsRef<Path>, format: VectorFormat) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let out = BufWriter::new(file);
    match format.resolve(path) {
        VectorFormat::Binary => write_binary(space, out, true),
        _ => write_text(space, out),
    }
    .map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn text(s: &str) -> Result<EmbeddingSpace> {
        read_text(Cursor::new(s), Path::new("v.txt"), Provenance::default())
    }

    fn binary(b: &[u8]) -> Result<EmbeddingSpace> {
        read_binary(Cursor::new(b), Path::new("v.bin"), Provenance::default())
    }

    #[test]
    fn parses_text() {
        let s = text("2 3\na 1 0 0\nb 0 1 0\n").unwrap();
        assert_eq!((s.dim(), s.len()), (3, 2));
        assert_eq!(s.vector("b").unwrap(), [0.0, 1.0, 0.0]);
    }

    #[test]
    fn text_count_mismatch() {
        let err = text("3 3\na 1 0 0\nb 0 1 0\n").unwrap_err();
        assert!(err.to_string().contains("declares 3 words but the file has 2"), "{err}");
        assert!(text("1 3\na 1 0 0\nb 0 1 0\n").is_err());
    }

    #[test]
    fn text_wrong_length_names_term() {
        let err = text("2 3\na 1 0 0\nbad 0 1\n").unwrap_err();
        assert_eq!(err.to_string(), "v.txt:3: term \"bad\": 2 components, expected 3");
    }

    #[test]
    fn bad_headers() {
        for h in ["", "x y\n", "2\n", "2 0\n", "2 3 4\n"] {
            assert!(text(h).is_err(), "{h:?}");
            assert!(binary(h.as_bytes()).is_err(), "{h:?}");
        }
    }

    #[test]
    fn duplicate_terms_keep_first() {
        let s = text("2 2\na 1 0\na 0 1\n").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.vector("a").unwrap(), [1.0, 0.0]);
    }

    fn encode(words: &[(&str, [f32; 2])], newline: bool) -> Vec<u8> {
        let mut b = format!("{} 2\n", words.len()).into_bytes();
        for (w, v) in words {
            b.extend_from_slice(w.as_bytes());
            b.push(b' ');
            for x in v {
                b.extend_from_slice(&x.to_le_bytes());
            }
            if newline {
                b.push(b'\n');
            }
        }
        b
    }

    #[test]
    fn binary_with_and_without_newlines() {
        let words = [("été", [1.0, -2.5]), ("b", [0.25, 10.0])];
        for nl in [true, false] {
            let s = binary(&encode(&words, nl)).unwrap();
            assert_eq!(s.vector("été").unwrap(), [1.0, -2.5]);
            assert_eq!(s.vector("b").unwrap(), [0.25, 10.0]);
        }
    }

    #[test]
    fn binary_truncation_is_located() {
        let full = encode(&[("a", [1.0, 0.0]), ("b", [0.0, 1.0])], true);
        let err = binary(&full[..full.len() - 3]).unwrap_err();
        assert!(err.to_string().contains("record 2"), "{err}");
        assert!(err.to_string().contains("truncated vector"), "{err}");
        let err = binary(&full[..full.len() - 10]).unwrap_err();
        assert!(err.to_string().contains("record 2"), "{err}");
    }

    #[test]
    fn binary_count_mismatch() {
        let mut b = encode(&[("a", [1.0, 0.0])], true);
        b[0] = b'2';
        assert!(binary(&b)
            .unwrap_err()
            .to_string()
            .contains("declares 2 words but the file has 1"));
        let mut b = encode(&[("a", [1.0, 0.0]), ("b", [0.0, 1.0])], true);
        b[0] = b'1';
        assert!(binary(&b).is_err());
    }

    #[test]
    fn writers_round_trip() {
        let s = text("2 3\nx 0.5 -1 2\ny 3 0.125 0\n").unwrap();
        let mut t = Vec::new();
        write_text(&s, &mut t).unwrap();
        assert_eq!(
            text(std::str::from_utf8(&t).unwrap())
                .unwrap()
                .iter()
                .collect::<Vec<_>>(),
            s.iter().collect::<Vec<_>>()
        );
        for nl in [true, false] {
            let mut b = Vec::new();
            write_binary(&s, &mut b, nl).unwrap();
            assert_eq!(
                binary(&b).unwrap().iter().collect::<Vec<_>>(),
                s.iter().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn auto_format_by_extension() {
        assert_eq!(VectorFormat::Auto.resolve(Path::new("w.bin")), VectorFormat::Binary);
        assert_eq!(VectorFormat::Auto.resolve(Path::new("w.vec")), VectorFormat::Text);
        assert_eq!(VectorFormat::Text.resolve(Path::new("w.bin")), VectorFormat::Text);
    }
}
