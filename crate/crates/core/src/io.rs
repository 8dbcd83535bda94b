//! File formats: JSON signal and torus documents, binary sample payloads
//! with a JSON header, CSV tables, and the provenance envelope.
//!
//! Binary layout: the magic `BRKT`, a little-endian `u32` header length, the
//! UTF-8 JSON header, then interleaved little-endian `(re, im)` samples in the
//! header's `dtype` (`complex64` = two `f32`, `complex128` = two `f64`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bracket::FilterSeq;
use crate::error::{Error, Result};
use crate::filters::Cascade;
use crate::modnorm::NormReport;
use crate::signal::{AnalyticSignal, Domain, GridSignal, Piece, Signal, TorusFunction};
use crate::verify::VerifyReport;

const MAGIC: &[u8; 4] = b"BRKT";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dtype {
    #[default]
    Complex64,
    Complex128,
}

impl Dtype {
    fn width(self) -> usize {
        match self {
            Dtype::Complex64 => 8,
            Dtype::Complex128 => 16,
        }
    }
}

/// `[re, im]` pairs, the inline JSON sample encoding.
fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|c| [c.re, c.im]).collect()
}

fn unpairs(values: &[[f64; 2]]) -> Vec<Complex64> {
    values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SignalDoc {
    Analytic {
        domain: Domain,
        dim: usize,
        pieces: Vec<Piece>,
    },
    Grid {
        domain: Domain,
        half_width: Vec<f64>,
        n: Vec<usize>,
        /// Inline samples; absent when `payload` names a binary file.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<[f64; 2]>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        payload: Option<String>,
    },
}

impl SignalDoc {
    pub fn from_signal(s: &Signal) -> Self {
        match s {
            Signal::Analytic(a) => {
                SignalDoc::Analytic { domain: a.domain(), dim: a.dim(), pieces: a.pieces().to_vec() }
            }
            Signal::Grid(g) => SignalDoc::Grid {
                domain: g.domain(),
                half_width: g.half_width().to_vec(),
                n: g.n_samples().to_vec(),
                values: Some(pairs(g.values())),
                payload: None,
            },
        }
    }

    /// Builds the signal, reading a binary payload relative to `base` when
    /// the document points at one.
    pub fn into_signal(self, base: Option<&std::path::Path>) -> Result<Signal> {
        match self {
            SignalDoc::Analytic { domain, dim, pieces } => Ok(Signal::Analytic(AnalyticSignal::new(dim, domain, pieces)?)),
            SignalDoc::Grid { domain, half_width, n, values, payload } => match (values, payload) {
                (Some(v), None) => Ok(Signal::Grid(GridSignal::new(domain, half_width, n, unpairs(&v))?)),
                (None, Some(p)) => {
                    let path = base.map(|b| b.join(&p)).unwrap_or_else(|| p.into());
                    let g = read_grid_binary(&mut std::fs::File::open(path)?)?;
                    if g.domain() != domain || g.half_width() != half_width.as_slice() || g.n_samples() != n.as_slice() {
                        return Err(Error::InvalidInput("binary payload header disagrees with the document".into()));
                    }
                    Ok(Signal::Grid(g))
                }
                _ => Err(Error::InvalidInput("a grid signal needs exactly one of `values` and `payload`".into())),
            },
        }
    }
}

pub fn signal_to_json(s: &Signal) -> Result<String> {
    Ok(serde_json::to_string_pretty(&SignalDoc::from_signal(s))?)
}

pub fn signal_from_json(text: &str) -> Result<Signal> {
    serde_json::from_str::<SignalDoc>(text)?.into_signal(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusDoc {
    pub kind: String,
    pub m: Vec<usize>,
    pub values: Vec<[f64; 2]>,
}

pub fn torus_to_json(t: &TorusFunction) -> Result<String> {
    let doc = TorusDoc { kind: "torus".into(), m: t.grid().to_vec(), values: pairs(t.values()) };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn torus_from_json(text: &str) -> Result<TorusFunction> {
    let doc: TorusDoc = serde_json::from_str(text)?;
    if doc.kind != "torus" {
        return Err(Error::InvalidInput(format!("expected kind \"torus\", found {:?}", doc.kind)));
    }
    TorusFunction::new(doc.m, unpairs(&doc.values))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct BinaryHeader {
    kind: String,
    dtype: Dtype,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<Domain>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    half_width: Option<Vec<f64>>,
    n: Vec<usize>,
}

fn write_payload(out: &mut impl Write, header: &BinaryHeader, values: &[Complex64]) -> Result<()> {
    let head = serde_json::to_vec(header)?;
    out.write_all(MAGIC)?;
    out.write_all(&(head.len() as u32).to_le_bytes())?;
    out.write_all(&head)?;
    let mut buf = Vec::with_capacity(values.len() * header.dtype.width());
    for c in values {
        match header.dtype {
            Dtype::Complex64 => {
                buf.extend_from_slice(&(c.re as f32).to_le_bytes());
                buf.extend_from_slice(&(c.im as f32).to_le_bytes());
            }
            Dtype::Complex128 => {
                buf.extend_from_slice(&c.re.to_le_bytes());
                buf.extend_from_slice(&c.im.to_le_bytes());
            }
        }
    }
    out.write_all(&buf)?;
    Ok(())
}

fn read_payload(input: &mut impl Read) -> Result<(BinaryHeader, Vec<Complex64>)> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::InvalidInput("not a binary sample payload".into()));
    }
    let mut len = [0u8; 4];
    input.read_exact(&mut len)?;
    let mut head = vec![0u8; u32::from_le_bytes(len) as usize];
    input.read_exact(&mut head)?;
    let header: BinaryHeader = serde_json::from_slice(&head)?;
    let count: usize = header.n.iter().product();
    let mut body = vec![0u8; count * header.dtype.width()];
    input.read_exact(&mut body)?;
    let values = match header.dtype {
        Dtype::Complex64 => body
            .chunks_exact(8)
            .map(|b| {
                let re = f32::from_le_bytes(b[..4].try_into().expect("4 bytes"));
                let im = f32::from_le_bytes(b[4..].try_into().expect("4 bytes"));
                Complex64::new(re as f64, im as f64)
            })
            .collect(),
        Dtype::Complex128 => body
            .chunks_exact(16)
            .map(|b| {
                let re = f64::from_le_bytes(b[..8].try_into().expect("8 bytes"));
                let im = f64::from_le_bytes(b[8..].try_into().expect("8 bytes"));
                Complex64::new(re, im)
            })
            .collect(),
    };
    Ok((header, values))
}

pub fn write_grid_binary(out: &mut impl Write, g: &GridSignal, dtype: Dtype) -> Result<()> {
    let header = BinaryHeader {
        kind: "grid".into(),
        dtype,
        domain: Some(g.domain()),
        half_width: Some(g.half_width().to_vec()),
        n: g.n_samples().to_vec(),
    };
    write_payload(out, &header, g.values())
}

pub fn read_grid_binary(input: &mut impl Read) -> Result<GridSignal> {
    let (h, values) = read_payload(input)?;
    match (h.kind.as_str(), h.domain, h.half_width) {
        ("grid", Some(domain), Some(half)) => GridSignal::new(domain, half, h.n, values),
        _ => Err(Error::InvalidInput("payload header does not describe a grid signal".into())),
    }
}

pub fn write_torus_binary(out: &mut impl Write, t: &TorusFunction, dtype: Dtype) -> Result<()> {
    let header = BinaryHeader { kind: "torus".into(), dtype, domain: None, half_width: None, n: t.grid().to_vec() };
    write_payload(out, &header, t.values())
}

pub fn read_torus_binary(input: &mut impl Read) -> Result<TorusFunction> {
    let (h, values) = read_payload(input)?;
    if h.kind != "torus" {
        return Err(Error::InvalidInput("payload header does not describe a torus function".into()));
    }
    TorusFunction::new(h.n, values)
}

/// Parameters that produced an artifact.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(rename = "grid_M", skip_serializing_if = "Option::is_none")]
    pub grid_m: Option<usize>,
    #[serde(rename = "grid_N", skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
    #[serde(rename = "box_L", skip_serializing_if = "Option::is_none")]
    pub box_l: Option<f64>,
    #[serde(rename = "trunc_R", skip_serializing_if = "Option::is_none")]
    pub trunc_r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_range: Option<(i32, i32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
}

impl Provenance {
    pub fn new(command: &str) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.into(), value);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact<T> {
    pub provenance: Provenance,
    pub result: T,
}

/// Pretty JSON with a trailing newline; field order is fixed by the types.
pub fn artifact_json<T: Serialize>(provenance: &Provenance, result: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Artifact { provenance: provenance.clone(), result })?;
    s.push('\n');
    Ok(s)
}

fn axis_header(prefix: &str, d: usize) -> String {
    if d == 1 {
        prefix.into()
    } else {
        (0..d).map(|k| format!("{prefix}_{k}")).collect::<Vec<_>>().join(",")
    }
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `zeta..., re, im, abs` per grid point.
pub fn torus_csv(t: &TorusFunction) -> String {
    let mut out = format!("{},re,im,abs\n", axis_header("zeta", t.dim()));
    for (j, v) in t.values().iter().enumerate() {
        let _ = writeln!(out, "{},{},{},{}", join(&t.point(j)), v.re, v.im, v.norm());
    }
    out
}

/// `index..., re, im` per tap.
pub fn filter_csv(a: &FilterSeq) -> String {
    let mut out = format!("{},re,im\n", axis_header("index", a.dim()));
    for (k, c) in a.taps() {
        let _ = writeln!(out, "{},{},{}", join(k), c.re, c.im);
    }
    out
}

/// `level, x_norm, y_norm, l2, tail` per report.
pub fn norms_csv(rows: &[(NormReport, f64)]) -> String {
    let mut out = String::from("level,x_norm,y_norm,l2,tail\n");
    for (r, y) in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.level, r.x_norm, y, r.l2_norm, r.tail_estimate);
    }
    out
}

pub fn cascade_csv(c: &Cascade) -> String {
    let mut out = String::from("iteration,step_norm,x0_norm,gram_defect\n");
    for k in 0..c.step_norms.len() {
        let _ = writeln!(out, "{},{},{},{}", k + 1, c.step_norms[k], c.x0_norms[k], c.gram_defects[k]);
    }
    out
}

/// `i, j, n, m, residual, zeta` per tested pair.
pub fn residual_csv(r: &VerifyReport) -> String {
    let mut out = String::from("i,j,n,m,residual,zeta\n");
    for p in &r.pairs {
        let _ = writeln!(out, "{},{},{},{},{},{}", p.i, p.j, p.n, p.m, p.residual, p.at);
    }
    out
}

/// Grid samples `x..., re, im`.
pub fn grid_csv(g: &GridSignal) -> String {
    let label = if g.domain() == Domain::Time { "x" } else { "xi" };
    let mut out = format!("{},re,im\n", axis_header(label, g.dim()));
    for (j, v) in g.values().iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", join(&g.point(j)), v.re, v.im);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsig;

    #[test]
    fn analytic_json_round_trip() {
        let s: Signal = testsig::haar_test_signal().into();
        let text = signal_to_json(&s).unwrap();
        assert!(text.contains("\"kind\": \"analytic\""));
        assert_eq!(signal_from_json(&text).unwrap(), s);
    }

    #[test]
    fn grid_json_and_binary_round_trip() {
        let g = testsig::gaussian_grid(1, 4.0, 64).unwrap();
        let s = Signal::Grid(g.clone());
        assert_eq!(signal_from_json(&signal_to_json(&s).unwrap()).unwrap(), s);
        let mut buf = Vec::new();
        write_grid_binary(&mut buf, &g, Dtype::Complex128).unwrap();
        assert_eq!(&buf[..4], b"BRKT");
        assert_eq!(read_grid_binary(&mut buf.as_slice()).unwrap(), g);
        let mut short = Vec::new();
        write_grid_binary(&mut short, &g, Dtype::Complex64).unwrap();
        let back = read_grid_binary(&mut short.as_slice()).unwrap();
        assert!(back.sub(&g).unwrap().max_abs() < 1e-7);
    }

    #[test]
    fn torus_round_trip() {
        let t = TorusFunction::from_fn(vec![8, 4], |z| Complex64::new(z[0], z[1])).unwrap();
        assert_eq!(torus_from_json(&torus_to_json(&t).unwrap()).unwrap(), t);
        let mut buf = Vec::new();
        write_torus_binary(&mut buf, &t, Dtype::Complex128).unwrap();
        assert_eq!(read_torus_binary(&mut buf.as_slice()).unwrap(), t);
        assert!(torus_csv(&t).starts_with("zeta_0,zeta_1,re,im,abs\n"));
    }

    #[test]
    fn grid_doc_needs_one_source() {
        let text = r#"{"kind":"grid","domain":"time","half_width":[1.0],"n":[2]}"#;
        assert!(matches!(signal_from_json(text), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn artifacts_are_deterministic() {
        let p = Provenance::new("test").tolerance("tol_ortho", 1e-5);
        let a = artifact_json(&p, &vec![1.0, 2.0]).unwrap();
        assert_eq!(a, artifact_json(&p, &vec![1.0, 2.0]).unwrap());
        assert!(a.contains("\"tol_ortho\": 0.00001"), "{a}");
    }
}
