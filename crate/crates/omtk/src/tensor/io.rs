//! Tensor file formats.
//!
//! Binary layout, all little-endian:
//! magic `OMTK` | version u16 | symmetry u8 (0 antisymmetric, 1 symmetric) |
//! n u16 | dim u32 | order u16 | count u64 | count * f64 values in canonical
//! rank order.
//!
//! The JSON form lists nonzero canonical entries above 1e-14 as flat
//! `[i_1, ..., i_q, value]` rows with one-based indices; stored values
//! round-trip bit-exactly (shortest-representation float printing).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde_json::{json, Value};

use super::rank;
use super::{AntisymTensor, SymTensor, Tensor};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"OMTK";
const VERSION: u16 = 1;
const JSON_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Binary,
    Json,
}

/// Write `tensor` for the algebra su(`n`) to `path`.
pub fn write_tensor(path: &Path, tensor: &Tensor, n: usize, format: Format) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    match format {
        Format::Binary => write_binary(&mut w, tensor, n),
        Format::Json => write_json(&mut w, tensor, n),
    }
}

/// Read a tensor written by [`write_tensor`], sniffing the format from the
/// leading bytes. Returns the tensor and the algebra rank it was built for.
pub fn read_tensor(path: &Path) -> Result<(Tensor, usize)> {
    let mut r = BufReader::new(File::open(path)?);
    let mut head = [0u8; 4];
    r.read_exact(&mut head)
        .map_err(|_| Error::Format("file shorter than the magic header".into()))?;
    if &head == MAGIC {
        read_binary(&mut r)
    } else {
        let mut rest = Vec::new();
        r.read_to_end(&mut rest)?;
        let mut text = head.to_vec();
        text.extend(rest);
        read_json(&text)
    }
}

fn write_binary(w: &mut impl Write, tensor: &Tensor, n: usize) -> Result<()> {
    let symmetry: u8 = match tensor {
        Tensor::Antisym(_) => 0,
        Tensor::Sym(_) => 1,
    };
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&[symmetry])?;
    w.write_all(&(n as u16).to_le_bytes())?;
    w.write_all(&(tensor.dim() as u32).to_le_bytes())?;
    w.write_all(&(tensor.order() as u16).to_le_bytes())?;
    w.write_all(&(tensor.len() as u64).to_le_bytes())?;
    for v in tensor.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_binary(r: &mut impl Read) -> Result<(Tensor, usize)> {
    let mut buf = [0u8; 8];
    let take = |r: &mut dyn Read, len: usize| -> Result<[u8; 8]> {
        let mut b = [0u8; 8];
        r.read_exact(&mut b[..len])
            .map_err(|_| Error::Format("truncated header".into()))?;
        Ok(b)
    };
    buf[..2].copy_from_slice(&take(r, 2)?[..2]);
    let version = u16::from_le_bytes([buf[0], buf[1]]);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let symmetry = take(r, 1)?[0];
    let b = take(r, 2)?;
    let n = u16::from_le_bytes([b[0], b[1]]) as usize;
    let b = take(r, 4)?;
    let dim = u32::from_le_bytes([b[0], b[1], b[2], b[3]]) as usize;
    let b = take(r, 2)?;
    let order = u16::from_le_bytes([b[0], b[1]]) as usize;
    let b = take(r, 8)?;
    let count = u64::from_le_bytes(b) as usize;
    let expected = match symmetry {
        0 => rank::antisym_len(dim, order),
        1 => rank::sym_len(dim, order),
        other => return Err(Error::Format(format!("unknown symmetry tag {other}"))),
    };
    if count != expected {
        return Err(Error::Format(format!(
            "component count {count} does not match canonical count {expected}"
        )));
    }
    let mut values = vec![0.0f64; count];
    let mut vb = [0u8; 8];
    for v in values.iter_mut() {
        r.read_exact(&mut vb)
            .map_err(|_| Error::Format("truncated payload".into()))?;
        *v = f64::from_le_bytes(vb);
    }
    let tensor = match symmetry {
        0 => Tensor::Antisym(AntisymTensor::from_values(dim, order, values)),
        _ => Tensor::Sym(SymTensor::from_values(dim, order, values)),
    };
    Ok((tensor, n))
}

fn write_json(w: &mut impl Write, tensor: &Tensor, n: usize) -> Result<()> {
    let mut entries: Vec<Value> = Vec::new();
    let mut push = |tuple: &[usize], v: f64| {
        if v.abs() > JSON_CUTOFF {
            let mut row: Vec<Value> = tuple.iter().map(|&i| json!(i + 1)).collect();
            row.push(json!(v));
            entries.push(Value::Array(row));
        }
    };
    let symmetry = match tensor {
        Tensor::Antisym(t) => {
            t.for_each(&mut push);
            "antisym"
        }
        Tensor::Sym(t) => {
            t.for_each(&mut push);
            "sym"
        }
    };
    let doc = json!({
        "n": n,
        "order": tensor.order(),
        "symmetry": symmetry,
        "entries": entries,
    });
    serde_json::to_writer_pretty(&mut *w, &doc).map_err(|e| Error::Format(e.to_string()))?;
    w.write_all(b"\n")?;
    Ok(())
}

fn read_json(text: &[u8]) -> Result<(Tensor, usize)> {
    let doc: Value =
        serde_json::from_slice(text).map_err(|e| Error::Format(format!("invalid JSON: {e}")))?;
    let n = doc["n"]
        .as_u64()
        .ok_or_else(|| Error::Format("missing field `n`".into()))? as usize;
    let order = doc["order"]
        .as_u64()
        .ok_or_else(|| Error::Format("missing field `order`".into()))? as usize;
    let symmetry = doc["symmetry"]
        .as_str()
        .ok_or_else(|| Error::Format("missing field `symmetry`".into()))?;
    let dim = n * n - 1;
    let entries = doc["entries"]
        .as_array()
        .ok_or_else(|| Error::Format("missing field `entries`".into()))?;
    let mut tensor = match symmetry {
        "antisym" => Tensor::Antisym(AntisymTensor::zero(dim, order)),
        "sym" => Tensor::Sym(SymTensor::zero(dim, order)),
        other => return Err(Error::Format(format!("unknown symmetry `{other}`"))),
    };
    for row in entries {
        let row = row
            .as_array()
            .filter(|r| r.len() == order + 1)
            .ok_or_else(|| Error::Format("entry rows must hold q indices and a value".into()))?;
        let mut idx = Vec::with_capacity(order);
        for v in &row[..order] {
            let i = v
                .as_u64()
                .filter(|&i| i >= 1)
                .ok_or_else(|| Error::Format("indices are one-based integers".into()))?;
            idx.push(i as usize - 1);
        }
        let value = row[order]
            .as_f64()
            .ok_or_else(|| Error::Format("entry value must be numeric".into()))?;
        match &mut tensor {
            Tensor::Antisym(t) => {
                if idx.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Format("antisymmetric entries must ascend".into()));
                }
                if *idx.last().unwrap() >= dim {
                    return Err(Error::Format("index out of range".into()));
                }
                let r = rank::rank_ascending(&idx);
                t.values_mut()[r] = value;
            }
            Tensor::Sym(t) => {
                if idx.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::Format("symmetric entries must be sorted".into()));
                }
                if *idx.last().unwrap() >= dim {
                    return Err(Error::Format("index out of range".into()));
                }
                let r = rank::rank_multiset(&idx);
                t.values_mut()[r] = value;
            }
        }
    }
    Ok((tensor, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn sample() -> Tensor {
        let mut t = AntisymTensor::zero(5, 3);
        for (r, v) in t.values_mut().iter_mut().enumerate() {
            *v = (r as f64 + 1.0) * 0.125 - 0.6;
        }
        Tensor::Antisym(t)
    }

    #[test]
    fn binary_roundtrip_bit_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("t.omtk");
        let t = sample();
        write_tensor(&path, &t, 3, Format::Binary).unwrap();
        let (back, n) = read_tensor(&path).unwrap();
        assert_eq!(n, 3);
        assert_eq!(back, t);
    }

    #[test]
    fn json_roundtrip_bit_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("t.json");
        let t = sample();
        write_tensor(&path, &t, 3, Format::Json).unwrap();
        let (back, n) = read_tensor(&path).unwrap();
        assert_eq!(n, 3);
        assert_eq!(back, t);
    }

    #[test]
    fn zero_object_roundtrip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("z.omtk");
        let t = Tensor::Antisym(AntisymTensor::zero(3, 5));
        write_tensor(&path, &t, 2, Format::Binary).unwrap();
        let (back, _) = read_tensor(&path).unwrap();
        assert_eq!(back.len(), 0);
        assert_eq!(back.order(), 5);
    }

    #[test]
    fn sym_json_roundtrip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("s.json");
        let mut s = SymTensor::zero(8, 3);
        s.values_mut()[0] = 0.577_350_269_189_625_8;
        s.values_mut()[7] = -1.25;
        let t = Tensor::Sym(s);
        write_tensor(&path, &t, 3, Format::Json).unwrap();
        let (back, _) = read_tensor(&path).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_corrupt_counts() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.omtk");
        let t = sample();
        write_tensor(&path, &t, 3, Format::Binary).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[13] ^= 1; // count field
        std::fs::write(&path, &bytes).unwrap();
        assert!(read_tensor(&path).is_err());
    }
}
