use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One factor `U_{row,col}^mult` (or its conjugate). Labels are opaque.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    #[serde(deserialize_with = "label")]
    pub row: String,
    #[serde(deserialize_with = "label")]
    pub col: String,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

fn label<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Label {
        Text(String),
        Number(u64),
    }
    Ok(match Label::deserialize(d)? {
        Label::Text(s) => s,
        Label::Number(n) => n.to_string(),
    })
}

impl Factor {
    pub fn new(row: impl ToString, col: impl ToString, mult: u32) -> Self {
        Factor {
            row: row.to_string(),
            col: col.to_string(),
            mult,
        }
    }
}

/// A raw monomial integral `∫ dU ∏ U*_{ij}^{m} ∏ U_{kl}^{m'}`.
///
/// Text form: `conj: i,j[,mult]; ...; plain: k,l[,mult]; ...`.
/// JSON form: `{"conj": [{"row": .., "col": .., "mult": ..}], "plain": [..]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralSpec {
    #[serde(default)]
    pub conj: Vec<Factor>,
    #[serde(default)]
    pub plain: Vec<Factor>,
}

impl IntegralSpec {
    pub fn new(conj: Vec<Factor>, plain: Vec<Factor>) -> Self {
        IntegralSpec { conj, plain }
    }

    /// `⟨IJ|KL⟩` from index sequences, one factor per position.
    pub fn from_sequences<T: std::fmt::Display>(i: &[T], j: &[T], k: &[T], l: &[T]) -> Self {
        assert_eq!(i.len(), j.len());
        assert_eq!(k.len(), l.len());
        let conj = i.iter().zip(j).map(|(r, c)| Factor::new(r, c, 1)).collect();
        let plain = k.iter().zip(l).map(|(r, c)| Factor::new(r, c, 1)).collect();
        IntegralSpec { conj, plain }
    }

    /// `∏ |U_{row,col}|^{2 mult}` over the given factors.
    pub fn direct(factors: Vec<Factor>) -> Self {
        IntegralSpec {
            conj: factors.clone(),
            plain: factors,
        }
    }

    /// Number of conjugated factors, counted with multiplicity.
    pub fn conj_degree(&self) -> usize {
        self.conj.iter().map(|f| f.mult as usize).sum()
    }

    pub fn plain_degree(&self) -> usize {
        self.plain.iter().map(|f| f.mult as usize).sum()
    }

    /// Conjugated and plain factors swapped: the complex conjugate integral.
    pub fn conjugated(&self) -> Self {
        IntegralSpec {
            conj: self.plain.clone(),
            plain: self.conj.clone(),
        }
    }

    /// Rows and columns swapped: the integral over `U^T`.
    pub fn transposed(&self) -> Self {
        let t = |fs: &[Factor]| {
            fs.iter()
                .map(|f| Factor::new(&f.col, &f.row, f.mult))
                .collect()
        };
        IntegralSpec {
            conj: t(&self.conj),
            plain: t(&self.plain),
        }
    }

    /// Parses the JSON form when the text starts with `{`, the text grammar otherwise.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
        } else {
            text.parse()
        }
    }
}

impl FromStr for IntegralSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Conj,
            Plain,
        }
        let mut spec = IntegralSpec::default();
        let mut section = Section::None;
        let mut offset = 0usize;
        for segment in s.split(';') {
            let seg_start = offset;
            offset += segment.len() + 1;
            let lead = segment.len() - segment.trim_start().len();
            let mut body = segment.trim();
            let mut col = seg_start + lead + 1;
            for (kw, sec) in [("conj:", Section::Conj), ("plain:", Section::Plain)] {
                if let Some(rest) = body.strip_prefix(kw) {
                    section = sec;
                    let skipped = kw.len() + (rest.len() - rest.trim_start().len());
                    col += skipped;
                    body = rest.trim();
                    break;
                }
            }
            if body.is_empty() {
                continue;
            }
            let target = match section {
                Section::Conj => &mut spec.conj,
                Section::Plain => &mut spec.plain,
                Section::None => {
                    return Err(Error::parse(
                        col,
                        "expected 'conj:' or 'plain:' before factors",
                    ));
                }
            };
            target.push(parse_factor(body, col)?);
        }
        Ok(spec)
    }
}

fn parse_factor(body: &str, col: usize) -> Result<Factor> {
    let fields: Vec<&str> = body.split(',').map(str::trim).collect();
    if fields.len() != 2 && fields.len() != 3 {
        return Err(Error::parse(
            col,
            format!("expected 'row,col[,mult]', found {body:?}"),
        ));
    }
    let mut field_col = col;
    for f in &fields[..2] {
        if f.is_empty() || !f.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::parse(field_col, format!("bad index label {f:?}")));
        }
        field_col += f.len() + 1;
    }
    let mult = match fields.get(2) {
        None => 1,
        Some(m) => match m.parse::<u32>() {
            Ok(v) if v >= 1 => v,
            _ => return Err(Error::parse(field_col, format!("bad multiplicity {m:?}"))),
        },
    };
    Ok(Factor::new(fields[0], fields[1], mult))
}

impl fmt::Display for IntegralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Factor]| -> String {
            fs.iter()
                .map(|x| {
                    if x.mult == 1 {
                        format!("{},{}", x.row, x.col)
                    } else {
                        format!("{},{},{}", x.row, x.col, x.mult)
                    }
                })
                .collect::<Vec<_>>()
                .join("; ")
        };
        write!(
            f,
            "conj: {}; plain: {}",
            side(&self.conj),
            side(&self.plain)
        )
    }
}
