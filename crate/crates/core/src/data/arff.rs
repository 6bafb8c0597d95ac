//! Dense ARFF reader with MULAN-style label identification.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use regex::Regex;

use super::{FeatureKind, RawDataset};
use crate::error::{Error, Result};

/// How label attributes are picked out of the ARFF header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelSpec {
    /// The last `m` attributes are labels.
    Trailing(usize),
    /// The first `m` attributes are labels.
    Leading(usize),
    /// Labels named explicitly, as in a MULAN XML file.
    Names(Vec<String>),
}

#[derive(Debug, Clone)]
enum AttrType {
    Numeric,
    Nominal(Vec<String>),
}

#[derive(Debug, Clone)]
struct Attribute {
    name: String,
    kind: AttrType,
    line: usize,
}

/// Loads a dense ARFF file, splitting attributes into features and labels.
pub fn load_arff(path: impl AsRef<Path>, labels: &LabelSpec) -> Result<RawDataset> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);

    let mut relation = None;
    let mut attributes: Vec<Attribute> = Vec::new();
    let mut in_data = false;
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if in_data {
            if trimmed.starts_with('{') {
                return Err(Error::parse(
                    path,
                    line_no,
                    "sparse ARFF rows are not supported",
                ));
            }
            let values = split_values(trimmed).map_err(|m| Error::parse(path, line_no, m))?;
            if values.len() != attributes.len() {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!(
                        "expected {} values, found {}",
                        attributes.len(),
                        values.len()
                    ),
                ));
            }
            rows.push((line_no, values));
            continue;
        }
        let lower = trimmed.to_ascii_lowercase();
        if lower.starts_with("@relation") {
            let rest = trimmed["@relation".len()..].trim();
            relation = Some(unquote(rest).to_string());
        } else if lower.starts_with("@attribute") {
            let attr = parse_attribute(&trimmed["@attribute".len()..], line_no)
                .map_err(|m| Error::parse(path, line_no, m))?;
            attributes.push(attr);
        } else if lower.starts_with("@data") {
            if attributes.is_empty() {
                return Err(Error::parse(path, line_no, "@data before any @attribute"));
            }
            in_data = true;
        } else {
            return Err(Error::parse(
                path,
                line_no,
                format!("unexpected header line {trimmed:?}"),
            ));
        }
    }
    if !in_data {
        return Err(Error::parse(path, 0, "missing @data section"));
    }

    let is_label = label_mask(&attributes, labels).map_err(|m| Error::parse(path, 0, m))?;

    let mut feature_names = Vec::new();
    let mut feature_kinds = Vec::new();
    let mut label_names = Vec::new();
    for (attr, &lab) in attributes.iter().zip(&is_label) {
        if lab {
            if let AttrType::Nominal(values) = &attr.kind {
                if values.len() != 2 {
                    return Err(Error::parse(
                        path,
                        attr.line,
                        format!("label attribute {:?} is not binary", attr.name),
                    ));
                }
            }
            label_names.push(attr.name.clone());
        } else {
            feature_names.push(attr.name.clone());
            feature_kinds.push(match &attr.kind {
                AttrType::Numeric => FeatureKind::Numeric,
                AttrType::Nominal(values) => FeatureKind::Categorical(values.clone()),
            });
        }
    }

    let mut features = Vec::with_capacity(rows.len());
    let mut label_rows = Vec::with_capacity(rows.len());
    for (line_no, values) in rows {
        let mut f = Vec::with_capacity(feature_kinds.len());
        let mut l = Vec::with_capacity(label_names.len());
        for ((attr, &lab), raw) in attributes.iter().zip(&is_label).zip(&values) {
            if raw == "?" {
                return Err(Error::parse(
                    path,
                    line_no,
                    "missing values are not supported",
                ));
            }
            if lab {
                let v = label_value(&attr.kind, raw).ok_or_else(|| {
                    Error::parse(
                        path,
                        line_no,
                        format!("non-binary value {raw:?} for label {:?}", attr.name),
                    )
                })?;
                l.push(v);
            } else {
                let v = match &attr.kind {
                    AttrType::Numeric => raw.parse::<f64>().ok().filter(|v| v.is_finite()),
                    AttrType::Nominal(values) => {
                        values.iter().position(|c| c == raw).map(|i| i as f64)
                    }
                }
                .ok_or_else(|| {
                    Error::parse(
                        path,
                        line_no,
                        format!("invalid value {raw:?} for attribute {:?}", attr.name),
                    )
                })?;
                f.push(v);
            }
        }
        features.push(f);
        label_rows.push(l);
    }

    let name = relation.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    Ok(RawDataset {
        name,
        feature_names,
        feature_kinds,
        label_names,
        features,
        labels: label_rows,
    })
}

/// Loads an ARFF file whose labels are listed in a MULAN XML file.
pub fn load_arff_with_xml(arff: impl AsRef<Path>, xml: impl AsRef<Path>) -> Result<RawDataset> {
    let names = parse_label_xml(xml)?;
    load_arff(arff, &LabelSpec::Names(names))
}

/// Label names from a MULAN `<labels>` document, in document order.
pub fn parse_label_xml(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let re = Regex::new(r#"<label\s+name\s*=\s*(?:"([^"]*)"|'([^']*)')"#).expect("static regex");
    let names: Vec<String> = re
        .captures_iter(&text)
        .map(|c| {
            c.get(1)
                .or_else(|| c.get(2))
                .map_or("", |m| m.as_str())
                .to_string()
        })
        .collect();
    if names.is_empty() {
        return Err(Error::parse(path, 0, "no <label name=...> entries found"));
    }
    Ok(names)
}

fn label_mask(
    attributes: &[Attribute],
    spec: &LabelSpec,
) -> std::result::Result<Vec<bool>, String> {
    let n = attributes.len();
    match spec {
        LabelSpec::Trailing(m) | LabelSpec::Leading(m) if *m == 0 || *m >= n => Err(format!(
            "label count {m} must be between 1 and {} for {n} attributes",
            n.saturating_sub(1)
        )),
        LabelSpec::Trailing(m) => Ok((0..n).map(|i| i >= n - m).collect()),
        LabelSpec::Leading(m) => Ok((0..n).map(|i| i < *m).collect()),
        LabelSpec::Names(names) => {
            let mut mask = vec![false; n];
            for name in names {
                let i = attributes
                    .iter()
                    .position(|a| &a.name == name)
                    .ok_or_else(|| format!("label {name:?} not declared in the header"))?;
                mask[i] = true;
            }
            if mask.iter().all(|&l| l) {
                return Err("every attribute is a label; no features remain".into());
            }
            Ok(mask)
        }
    }
}

fn label_value(kind: &AttrType, raw: &str) -> Option<bool> {
    match raw {
        "0" => return Some(false),
        "1" => return Some(true),
        _ => {}
    }
    match kind {
        AttrType::Numeric => match raw.parse::<f64>().ok()? {
            0.0 => Some(false),
            1.0 => Some(true),
            _ => None,
        },
        // first declared value is the negative class
        AttrType::Nominal(values) => values.iter().position(|v| v == raw).map(|i| i == 1),
    }
}

fn parse_attribute(rest: &str, line: usize) -> std::result::Result<Attribute, String> {
    let rest = rest.trim();
    let (name, tail) = if let Some(q) = rest.chars().next().filter(|c| *c == '\'' || *c == '"') {
        let end = rest[1..]
            .find(q)
            .ok_or_else(|| "unterminated quoted attribute name".to_string())?;
        (rest[1..1 + end].to_string(), rest[end + 2..].trim())
    } else {
        let end = rest
            .find(|c: char| c.is_whitespace() || c == '{')
            .ok_or_else(|| "attribute without a type".to_string())?;
        (rest[..end].to_string(), rest[end..].trim())
    };
    let kind = if tail.starts_with('{') {
        let close = tail
            .rfind('}')
            .ok_or_else(|| "unterminated nominal value list".to_string())?;
        let values = split_values(&tail[1..close])?;
        if values.is_empty() {
            return Err("empty nominal value list".into());
        }
        AttrType::Nominal(values)
    } else {
        match tail.to_ascii_lowercase().as_str() {
            "numeric" | "real" | "integer" => AttrType::Numeric,
            other => return Err(format!("unsupported attribute type {other:?}")),
        }
    };
    Ok(Attribute { name, kind, line })
}

/// Splits a comma-separated list, honoring single and double quotes.
fn split_values(s: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut quote: Option<char> = None;
    let mut was_quoted = false;
    for c in s.chars() {
        match quote {
            Some(q) if c == q => quote = None,
            Some(_) => current.push(c),
            None if c == '\'' || c == '"' => {
                quote = Some(c);
                was_quoted = true;
            }
            None if c == ',' => {
                out.push(finish(&current, was_quoted));
                current.clear();
                was_quoted = false;
            }
            None => current.push(c),
        }
    }
    if quote.is_some() {
        return Err("unterminated quote".into());
    }
    if !current.trim().is_empty() || was_quoted || !out.is_empty() {
        out.push(finish(&current, was_quoted));
    }
    Ok(out)
}

fn finish(token: &str, quoted: bool) -> String {
    if quoted {
        token.to_string()
    } else {
        token.trim().to_string()
    }
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    for q in ['\'', '"'] {
        if s.len() >= 2 && s.starts_with(q) && s.ends_with(q) {
            return &s[1..s.len() - 1];
        }
    }
    s
}
