//! The plain-text key file: one field per line, strict grammar.
//!
//! ```text
//! version 1
//! block 2 2
//! boundary null
//! rule 69
//! enc 1 0
//! ```

use caec::codec::Key;
use caec::error::Error;
use caec::maca::find_maca;
use caec::rules::Boundary;

use crate::CliError;

fn key_err(msg: impl Into<String>) -> CliError {
    CliError::Data(format!("key: {}", msg.into()))
}

/// Parses and validates a key file. The rule must be a usable MACA at the
/// block dimensions; the returned warnings flag accepted-but-odd keys
/// (currently: ratio 1, i.e. no compression).
pub fn key_parse(text: &str) -> Result<(Key, Vec<String>), CliError> {
    let mut version: Option<u32> = None;
    let mut block: Option<(usize, usize)> = None;
    let mut boundary: Option<Boundary> = None;
    let mut rule: Option<u16> = None;
    let mut enc: Option<(usize, usize)> = None;

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let field = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        let wrong_arity = |n: usize| {
            key_err(format!(
                "line {}: field {field:?} takes {n} value(s)",
                lineno + 1
            ))
        };
        let parse = |tok: &str| -> Result<usize, CliError> {
            tok.parse()
                .map_err(|_| key_err(format!("line {}: bad number {tok:?}", lineno + 1)))
        };
        let duplicate = || key_err(format!("line {}: duplicate field {field:?}", lineno + 1));
        match field {
            "version" => {
                if rest.len() != 1 {
                    return Err(wrong_arity(1));
                }
                if version.replace(parse(rest[0])? as u32).is_some() {
                    return Err(duplicate());
                }
            }
            "block" => {
                if rest.len() != 2 {
                    return Err(wrong_arity(2));
                }
                if block.replace((parse(rest[0])?, parse(rest[1])?)).is_some() {
                    return Err(duplicate());
                }
            }
            "boundary" => {
                if rest.len() != 1 {
                    return Err(wrong_arity(1));
                }
                let b = rest[0]
                    .parse::<Boundary>()
                    .map_err(|_| key_err(format!("line {}: unknown boundary {:?}", lineno + 1, rest[0])))?;
                if boundary.replace(b).is_some() {
                    return Err(duplicate());
                }
            }
            "rule" => {
                if rest.len() != 1 {
                    return Err(wrong_arity(1));
                }
                let r = parse(rest[0])?;
                if r > 511 {
                    return Err(key_err(format!("line {}: rule {r} out of range 0..=511", lineno + 1)));
                }
                if rule.replace(r as u16).is_some() {
                    return Err(duplicate());
                }
            }
            "enc" => {
                if rest.len() != 2 {
                    return Err(wrong_arity(2));
                }
                if enc.replace((parse(rest[0])?, parse(rest[1])?)).is_some() {
                    return Err(duplicate());
                }
            }
            other => {
                return Err(key_err(format!("line {}: unknown field {other:?}", lineno + 1)));
            }
        }
    }

    let version = version.ok_or_else(|| key_err("missing field \"version\""))?;
    if version != 1 {
        return Err(key_err(format!("unsupported version {version}")));
    }
    let (block_m, block_n) = block.ok_or_else(|| key_err("missing field \"block\""))?;
    if block_m == 0 || block_n == 0 || block_m > 255 || block_n > 255 {
        return Err(key_err(format!("block {block_m} {block_n} out of range 1..=255")));
    }
    let boundary = boundary.ok_or_else(|| key_err("missing field \"boundary\""))?;
    let rule = rule.ok_or_else(|| key_err("missing field \"rule\""))?;
    let (enc_a, enc_b) = enc.ok_or_else(|| key_err("missing field \"enc\""))?;

    let key = Key {
        block_m,
        block_n,
        boundary,
        rule,
        enc_a,
        enc_b,
    };
    let profile = key.validate().map_err(|e| match e {
        Error::NotMaca { .. } | Error::DegenerateKey { .. } => {
            key_err(format!("{e}; {}", suggest_rules(boundary, block_m, block_n)))
        }
        other => key_err(other.to_string()),
    })?;

    let mut warnings = Vec::new();
    if profile.attractor_dim == block_m * block_n {
        warnings.push(format!(
            "warning: rule {rule} keeps all 2^{} states as attractors (ratio 1, no compression)",
            profile.attractor_dim
        ));
    }
    Ok((key, warnings))
}

fn suggest_rules(boundary: Boundary, m: usize, n: usize) -> String {
    match find_maca(boundary, m, n, 2) {
        Ok(hits) if !hits.is_empty() => {
            let rules: Vec<String> = hits.iter().take(8).map(|(r, _)| r.to_string()).collect();
            format!("usable rules at {boundary} {m}x{n} include: {}", rules.join(", "))
        }
        _ => format!("no usable rules found at {boundary} {m}x{n}"),
    }
}

/// Canonical key emission; `key_parse` of the output returns the same key.
pub fn key_write(key: &Key) -> String {
    format!(
        "version 1\nblock {} {}\nboundary {}\nrule {}\nenc {} {}\n",
        key.block_m, key.block_n, key.boundary, key.rule, key.enc_a, key.enc_b
    )
}
