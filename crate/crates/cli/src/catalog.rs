//! Name resolution: built-ins, `mangoldt:<f>`, and functions from a spec file.

use anyhow::{bail, Context, Result};
use mangoldt_core::functions::{BUILTIN_CATALOG, L_ADDITIVE_CATALOG};
use mangoldt_core::mangoldt::lambda_handle;
use mangoldt_core::specfile::parse_spec_file;
use mangoldt_core::{builtin, Error, FunctionHandle, LAdditiveFunction};
use std::path::Path;

#[derive(Debug, Default)]
pub struct Catalog {
    user: Vec<LAdditiveFunction>,
}

impl Catalog {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Catalog::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading spec file {}", path.display()))?;
        let user = parse_spec_file(&text)?;
        for spec in &user {
            if BUILTIN_CATALOG.contains(&spec.name()) || builtin(spec.name(), None).is_ok() {
                bail!("spec file redefines built-in function {}", spec.name());
            }
        }
        Ok(Catalog { user })
    }

    fn user(&self, name: &str) -> Option<&LAdditiveFunction> {
        self.user.iter().find(|s| s.name() == name)
    }

    /// An L-additive function: a built-in one or a user definition.
    pub fn spec(&self, name: &str) -> Result<LAdditiveFunction> {
        if let Some(s) = self.user(name) {
            return Ok(s.clone());
        }
        LAdditiveFunction::builtin(name).map_err(|_| {
            let mut names: Vec<&str> = L_ADDITIVE_CATALOG.to_vec();
            names.extend(self.user.iter().map(|s| s.name()));
            Error::UnknownFunction {
                name: name.to_string(),
                catalog: names.join(", "),
            }
            .into()
        })
    }

    /// Any evaluable function name.
    pub fn handle(&self, name: &str) -> Result<FunctionHandle> {
        if let Some(src) = name.strip_prefix("mangoldt:") {
            return Ok(lambda_handle(&self.spec(src)?).renamed(name));
        }
        if let Some(s) = self.user(name) {
            return Ok(s.handle());
        }
        builtin(name, None).map_err(|e| match e {
            Error::UnknownFunction { name, catalog } => {
                let mut catalog = format!("{catalog}, mangoldt:<L-additive>");
                for s in &self.user {
                    catalog.push_str(", ");
                    catalog.push_str(s.name());
                }
                Error::UnknownFunction { name, catalog }.into()
            }
            other => other.into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_prefixed_and_builtin() {
        let c = Catalog::default();
        assert_eq!(c.handle("mangoldt:Ld").unwrap().name(), "mangoldt:Ld");
        assert!(c.handle("beta_2").is_ok());
        assert!(c.handle("mangoldt:tau").is_err());
        assert!(c.handle("nope").is_err());
        assert!(c.spec("Omega").unwrap().is_completely_additive());
    }
}
