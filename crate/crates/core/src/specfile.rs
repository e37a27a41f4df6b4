//! User-defined L-additive functions.
//!
//! ```text
//! # comments start with '#'
//! name=square
//! f(p)=p^2
//! h(p)=p
//! ```
//!
//! One stanza per function. A stanza starts at `name=` and ends at a blank
//! line or the next `name=`. `h(p)` defaults to `1` (completely additive).

use crate::error::{Error, Result};
use crate::expr::PrimeExpr;
use crate::functions::{LAdditiveFunction, PrimeRule};

#[derive(Default)]
struct Stanza {
    line: usize,
    name: Option<String>,
    f: Option<PrimeExpr>,
    h: Option<PrimeExpr>,
}

fn line_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("spec file line {line}: {msg}"))
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
}

impl Stanza {
    fn finish(self, out: &mut Vec<LAdditiveFunction>) -> Result<()> {
        let Some(name) = self.name else {
            return Ok(());
        };
        let f = self
            .f
            .ok_or_else(|| line_err(self.line, format!("function {name} has no f(p)")))?;
        let h = match self.h {
            Some(h) => PrimeRule::Expr(h),
            None => PrimeRule::Constant(1),
        };
        if out.iter().any(|s| s.name() == name) {
            return Err(line_err(self.line, format!("duplicate function name {name}")));
        }
        out.push(LAdditiveFunction::new(name, PrimeRule::Expr(f), h));
        Ok(())
    }
}

pub fn parse_spec_file(text: &str) -> Result<Vec<LAdditiveFunction>> {
    let mut out = Vec::new();
    let mut cur = Stanza::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if raw.trim().is_empty() {
                std::mem::take(&mut cur).finish(&mut out)?;
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| line_err(line_no, "expected `key=value`"))?;
        let (key, value) = (key.trim(), value.trim());
        let parse = |v: &str| {
            PrimeExpr::parse(v).map_err(|e| line_err(line_no, e))
        };
        match key {
            "name" => {
                std::mem::take(&mut cur).finish(&mut out)?;
                if !valid_name(value) {
                    return Err(line_err(line_no, format!("invalid function name `{value}`")));
                }
                cur.line = line_no;
                cur.name = Some(value.to_string());
            }
            "f(p)" | "h(p)" if cur.name.is_none() => {
                return Err(line_err(line_no, format!("{key} before name=")));
            }
            "f(p)" if cur.f.is_some() => return Err(line_err(line_no, "f(p) given twice")),
            "h(p)" if cur.h.is_some() => return Err(line_err(line_no, "h(p) given twice")),
            "f(p)" => cur.f = Some(parse(value)?),
            "h(p)" => cur.h = Some(parse(value)?),
            other => return Err(line_err(line_no, format!("unknown key `{other}`"))),
        }
    }
    cur.finish(&mut out)?;
    Ok(out)
}
