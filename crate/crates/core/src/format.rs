//! Text formats for signatures and grids.
//!
//! Signature file:
//!
//! ```text
//! sig eq2 arity 2
//! 00 : 1
//! 11 : 1
//! ```
//!
//! Grid file (ports are 0-based; `dangle` lines give the output order):
//!
//! ```text
//! use eq2 eq2.sig
//! vertex a = eq2
//! vertex b = eq2
//! edge a.0 b.0
//! edge a.1 b.1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. A `use` target of the form
//! `gen:NAME` takes the signature from the built-in generators.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use crate::bits::{parse_bitstring, to_bitstring};
use crate::expr::{parse_value, ExprError};
use crate::{Error, Port, Result, Signature, SignatureGrid};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty signature file"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (name, arity) = match words[..] {
        ["sig", name, "arity", n] => {
            (name, n.parse::<usize>().map_err(|_| parse_err(hline, format!("bad arity {n:?}")))?)
        }
        _ => return Err(parse_err(hline, "expected header \"sig NAME arity N\"")),
    };
    if arity > crate::signature::MAX_ARITY {
        return Err(Error::ArityTooLarge(arity));
    }
    let mut entries: BTreeMap<u64, crate::Cyc8> = BTreeMap::new();
    for (line, l) in lines {
        let (bits, value) = l.split_once(':').ok_or_else(|| parse_err(line, "expected \"BITSTRING : VALUE\""))?;
        let bits = bits.trim();
        let x = if bits.is_empty() && arity == 0 {
            0
        } else {
            match parse_bitstring(bits) {
                Some((x, len)) if len == arity => x,
                _ => return Err(parse_err(line, format!("bad bitstring {bits:?} for arity {arity}"))),
            }
        };
        let v = parse_value(value.trim()).map_err(|e| match e {
            ExprError::OutsideRing(_) => Error::ValueOutsideRing { line, text: value.trim().to_string() },
            other => parse_err(line, other.to_string()),
        })?;
        if entries.insert(x, v).is_some() {
            return Err(Error::DuplicateEntry { line, bits: bits.to_string() });
        }
    }
    Ok(Signature::from_entries(arity, entries)?.with_name(name))
}

/// Entries sorted by bitstring, zero values omitted.
pub fn write_signature(f: &Signature) -> String {
    let name = f.name().unwrap_or("f");
    let mut out = format!("sig {name} arity {}\n", f.arity());
    let mut rows: Vec<(String, String)> =
        f.entries().map(|(x, v)| (to_bitstring(x, f.arity()), v.to_string())).collect();
    rows.sort();
    for (b, v) in rows {
        out.push_str(&format!("{b} : {v}\n"));
    }
    out
}

pub fn read_signature_file(path: &Path) -> Result<Signature> {
    parse_signature(&std::fs::read_to_string(path)?)
}

fn parse_port(tok: &str, line: usize, names: &HashMap<String, usize>) -> Result<Port> {
    let (v, p) = tok.rsplit_once('.').ok_or_else(|| parse_err(line, format!("expected VERTEX.PORT, got {tok:?}")))?;
    let vertex = *names.get(v).ok_or_else(|| parse_err(line, format!("unknown vertex {v:?}")))?;
    let port = p.parse().map_err(|_| parse_err(line, format!("bad port index {p:?}")))?;
    Ok(Port { vertex, port })
}

/// Parses a grid; `resolve(target)` loads the signature named in a `use` line.
pub fn parse_grid(text: &str, resolve: &mut dyn FnMut(&str) -> Result<Signature>) -> Result<SignatureGrid> {
    let mut sigs: HashMap<String, Arc<Signature>> = HashMap::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut g = SignatureGrid::new();
    for (line, l) in content_lines(text) {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[..] {
            ["use", name, target] => {
                let sig = resolve(target)?;
                sigs.insert(name.to_string(), Arc::new(sig.with_name(name)));
            }
            ["vertex", v, "=", name] => {
                let sig = sigs.get(name).ok_or_else(|| Error::UnknownSignature(name.to_string()))?;
                if names.contains_key(v) {
                    return Err(parse_err(line, format!("vertex {v:?} declared twice")));
                }
                names.insert(v.to_string(), g.add_vertex(v, sig.clone()));
            }
            ["edge", a, b] => {
                let (a, b) = (parse_port(a, line, &names)?, parse_port(b, line, &names)?);
                g.add_edge(a, b);
            }
            ["dangle", p] => {
                let p = parse_port(p, line, &names)?;
                g.dangle(p);
            }
            _ => return Err(parse_err(line, format!("unrecognized line {l:?}"))),
        }
    }
    g.validate()?;
    Ok(g)
}

/// Reads a grid file, resolving `use` paths relative to its directory.
pub fn read_grid_file(path: &Path) -> Result<SignatureGrid> {
    let text = std::fs::read_to_string(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_grid(&text, &mut |target| resolve_target(&dir, target))
}

fn resolve_target(dir: &Path, target: &str) -> Result<Signature> {
    match target.strip_prefix("gen:") {
        Some(name) => crate::corpus::generate(name),
        None => {
            let p = dir.join(target);
            if !p.exists() {
                return Err(Error::UnknownSignature(target.to_string()));
            }
            read_signature_file(&p)
        }
    }
}

/// Serializes a grid; signatures are referenced as `<name>.sig` and returned
/// alongside so the caller can write them.
pub fn write_grid(g: &SignatureGrid) -> (String, Vec<Signature>) {
    let mut out = String::new();
    let mut sig_names: Vec<(String, Arc<Signature>)> = Vec::new();
    let mut vertex_sig: Vec<String> = Vec::new();
    for v in &g.vertices {
        let existing = sig_names.iter().find(|(_, s)| Arc::ptr_eq(s, &v.sig) || **s == *v.sig);
        let name = match existing {
            Some((n, _)) => n.clone(),
            None => {
                let base = v.sig.name().map(str::to_string).unwrap_or_else(|| format!("s{}", sig_names.len()));
                let mut name = base.clone();
                let mut k = 1;
                while sig_names.iter().any(|(n, _)| *n == name) {
                    name = format!("{base}_{k}");
                    k += 1;
                }
                sig_names.push((name.clone(), v.sig.clone()));
                name
            }
        };
        vertex_sig.push(name);
    }
    for (name, _) in &sig_names {
        out.push_str(&format!("use {name} {name}.sig\n"));
    }
    for (v, name) in g.vertices.iter().zip(&vertex_sig) {
        out.push_str(&format!("vertex {} = {name}\n", v.label));
    }
    let port = |p: &Port| format!("{}.{}", g.vertices[p.vertex].label, p.port);
    for (a, b) in &g.edges {
        out.push_str(&format!("edge {} {}\n", port(a), port(b)));
    }
    for p in &g.dangling {
        out.push_str(&format!("dangle {}\n", port(p)));
    }
    let sigs = sig_names.into_iter().map(|(n, s)| (*s).clone().with_name(n)).collect();
    (out, sigs)
}
