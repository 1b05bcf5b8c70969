use std::sync::Arc;

use super::builtin::{builtin_model, BUILTIN_NAMES};
use super::parse::parse_model_file;
use super::RingModel;
use crate::error::{Error, Result};

/// Built-in models plus models loaded from a file. A loaded model shadows
/// the built-in of the same name.
#[derive(Debug, Clone, Default)]
pub struct ModelRegistry {
    user: Vec<Arc<RingModel>>,
}

impl ModelRegistry {
    pub fn builtin() -> Self {
        Self::default()
    }

    pub fn from_model_file(text: &str) -> Result<Self> {
        let mut reg = Self::default();
        for m in parse_model_file(text)? {
            if reg.user.iter().any(|u| u.name() == m.name()) {
                return Err(Error::InvalidModel(format!(
                    "model `{}` defined twice",
                    m.name()
                )));
            }
            reg.user.push(Arc::new(m));
        }
        Ok(reg)
    }

    pub fn user_models(&self) -> &[Arc<RingModel>] {
        &self.user
    }

    pub fn is_overridden(&self, name: &str) -> bool {
        self.user.iter().any(|m| m.name() == name)
    }

    pub fn get(&self, name: &str) -> Result<Arc<RingModel>> {
        match self.user.iter().find(|m| m.name() == name) {
            Some(m) => Ok(m.clone()),
            None => builtin_model(name),
        }
    }

    /// Built-in names in fixed order, then user-only names in file order.
    pub fn names(&self) -> Vec<String> {
        let mut out: Vec<String> = BUILTIN_NAMES.iter().map(|s| s.to_string()).collect();
        for m in &self.user {
            if !out.iter().any(|n| n == m.name()) {
                out.push(m.name().to_string());
            }
        }
        out
    }
}
