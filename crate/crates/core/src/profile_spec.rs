//! Profile mini-language.
//!
//! ```text
//! spec       := assignment ("," assignment)*
//! assignment := slot "=" kind "(" args? ")"
//! slot       := "x" index | "xn" | "xn-" offset       (1-based, xn is the last slot)
//! args       := arg ("," arg)*
//! arg        := number | name "=" number
//! ```
//!
//! Kinds and parameters (positional order, then accepted names):
//!
//! | kind                 | value                     | parameters                     |
//! |----------------------|---------------------------|--------------------------------|
//! | `const`, `constant`  | `a`                       | `a`                            |
//! | `linear`             | `a u + b`                 | `a`, `b=0`                     |
//! | `sin`, `sine`        | `k sin(w u + p) + b`      | `k`, `w=1`, `p=0`, `b=0`       |
//! | `cos`, `cosine`      | `k cos(w u + p) + b`      | same                           |
//! | `sinh`, `cosh`       | `k sinh(w u + p) + b` ... | same                           |
//! | `poly`, `polynomial` | `c0 + c1 u + ...`         | positional coefficients only   |
//!
//! Active slots that are not assigned default to `const(0)`. Assigning the slot
//! the family leaves out is an error.

use crate::error::{LoxError, Result};
use crate::profile::{Component, Family, FunctionSpec};

fn bad(msg: impl Into<String>) -> LoxError {
    LoxError::ProfileSpec(msg.into())
}

/// Parses `spec` into components in active-slot order for `family` in dimension `dim`.
pub fn parse_profile(spec: &str, family: Family, dim: usize) -> Result<Vec<Component>> {
    if dim < family.min_dim() {
        return Err(LoxError::InvalidDimension(dim));
    }
    let mut slots: Vec<Option<FunctionSpec>> = vec![None; dim];
    for item in split_top_level(spec)? {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (slot, rhs) = item.split_once('=').ok_or_else(|| bad(format!("missing '=' in '{item}'")))?;
        let slot = parse_slot(slot.trim(), dim)?;
        if slot == family.inactive_slot(dim) {
            return Err(LoxError::InactiveSlot { family, slot, dim });
        }
        if slots[slot - 1].is_some() {
            return Err(bad(format!("slot x{slot} assigned twice")));
        }
        slots[slot - 1] = Some(parse_function(rhs.trim())?);
    }
    Ok(family
        .active_slots(dim)
        .into_iter()
        .map(|i| slots[i - 1].take().unwrap_or(FunctionSpec::Constant(0.0)).into())
        .collect())
}

fn split_top_level(spec: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in spec.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad("unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad("unbalanced '('"));
    }
    parts.push(&spec[start..]);
    Ok(parts)
}

fn parse_slot(slot: &str, dim: usize) -> Result<usize> {
    let lower = slot.to_ascii_lowercase();
    let index = if lower == "xn" {
        Some(dim)
    } else if let Some(rest) = lower.strip_prefix("xn-") {
        rest.parse::<usize>().ok().filter(|&k| k < dim).map(|k| dim - k)
    } else if let Some(rest) = lower.strip_prefix('x') {
        rest.parse::<usize>().ok()
    } else {
        None
    };
    match index {
        Some(i) if (1..=dim).contains(&i) => Ok(i),
        _ => Err(bad(format!("unknown slot '{slot}' for dimension {dim}"))),
    }
}

fn parse_function(text: &str) -> Result<FunctionSpec> {
    let open = text.find('(').ok_or_else(|| bad(format!("missing '(' in '{text}'")))?;
    if !text.ends_with(')') {
        return Err(bad(format!("missing ')' in '{text}'")));
    }
    let kind = text[..open].trim().to_ascii_lowercase();
    let body = text[open + 1..text.len() - 1].trim();
    let mut positional = Vec::new();
    let mut named = Vec::new();
    if !body.is_empty() {
        for arg in body.split(',') {
            let arg = arg.trim();
            match arg.split_once('=') {
                Some((name, value)) => named.push((name.trim().to_ascii_lowercase(), number(value)?)),
                None => {
                    if !named.is_empty() {
                        return Err(bad(format!("positional argument after named one in '{text}'")));
                    }
                    positional.push(number(arg)?);
                }
            }
        }
    }

    let params = |names: &[&[&str]], defaults: &[Option<f64>]| -> Result<Vec<f64>> {
        if positional.len() > names.len() {
            return Err(bad(format!("too many arguments in '{text}'")));
        }
        let mut out: Vec<Option<f64>> = defaults.to_vec();
        for (i, &v) in positional.iter().enumerate() {
            out[i] = Some(v);
        }
        for (name, value) in &named {
            let i = names
                .iter()
                .position(|aliases| aliases.contains(&name.as_str()))
                .ok_or_else(|| bad(format!("unknown parameter '{name}' in '{text}'")))?;
            if i < positional.len() {
                return Err(bad(format!("parameter '{name}' given twice in '{text}'")));
            }
            out[i] = Some(*value);
        }
        out.into_iter()
            .zip(names)
            .map(|(v, aliases)| v.ok_or_else(|| bad(format!("missing parameter '{}' in '{text}'", aliases[0]))))
            .collect()
    };
    const WAVE: [&[&str]; 4] = [&["k", "amplitude"], &["w", "frequency"], &["p", "phase"], &["b", "offset"]];
    const WAVE_DEFAULTS: [Option<f64>; 4] = [None, Some(1.0), Some(0.0), Some(0.0)];

    Ok(match kind.as_str() {
        "const" | "constant" => FunctionSpec::Constant(params(&[&["a", "value"]], &[None])?[0]),
        "linear" => {
            let p = params(&[&["a", "slope"], &["b", "offset"]], &[None, Some(0.0)])?;
            FunctionSpec::Linear { slope: p[0], offset: p[1] }
        }
        "sin" | "sine" | "cos" | "cosine" | "sinh" | "cosh" => {
            let p = params(&WAVE, &WAVE_DEFAULTS)?;
            let (amplitude, frequency, phase, offset) = (p[0], p[1], p[2], p[3]);
            match kind.as_str() {
                "sin" | "sine" => FunctionSpec::Sine { amplitude, frequency, phase, offset },
                "cos" | "cosine" => FunctionSpec::Cosine { amplitude, frequency, phase, offset },
                "sinh" => FunctionSpec::Sinh { amplitude, frequency, phase, offset },
                _ => FunctionSpec::Cosh { amplitude, frequency, phase, offset },
            }
        }
        "poly" | "polynomial" => {
            if !named.is_empty() || positional.is_empty() {
                return Err(bad(format!("polynomial takes one or more positional coefficients: '{text}'")));
            }
            FunctionSpec::Polynomial(positional)
        }
        other => return Err(bad(format!("unknown function kind '{other}'"))),
    })
}

fn number(text: &str) -> Result<f64> {
    let v: f64 = text.trim().parse().map_err(|_| bad(format!("not a number: '{}'", text.trim())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(format!("non-finite number '{}'", text.trim())))
    }
}
