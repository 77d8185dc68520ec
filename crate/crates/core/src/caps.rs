//! Resource caps for the exhaustive parts of the engine.
//!
//! Defaults can be overridden through `SYLSPLIT_CAPS`, a comma-separated
//! list of integers assigned in field order; a shorter list overrides a
//! prefix and leaves the rest at their defaults.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "SYLSPLIT_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Groups up to this order are searched by filtering their elements.
    pub brute_force_order: u64,
    /// Largest index `|G:N|` for which a quotient is represented.
    pub quotient_index: u64,
    /// Largest group whose subgroups (or abelian subgroups) are enumerated.
    pub subgroup_order: u64,
    /// Largest abelian group scanned by the complement search.
    pub complement_order: u64,
    /// Largest Sylow subgroup handled by the fusion-system checks.
    pub fusion_sylow_order: u64,
    /// Largest group whose elements are enumerated outright: conjugacy
    /// classes, weak-closure orbits and the fusion-system checks.
    pub fusion_group_order: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            brute_force_order: 10_000,
            quotient_index: 20_000,
            subgroup_order: 4096,
            complement_order: 4096,
            fusion_sylow_order: 512,
            fusion_group_order: 100_000,
        }
    }
}

impl Caps {
    pub fn parse(text: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        let slots: [&mut u64; 6] = [
            &mut caps.brute_force_order,
            &mut caps.quotient_index,
            &mut caps.subgroup_order,
            &mut caps.complement_order,
            &mut caps.fusion_sylow_order,
            &mut caps.fusion_group_order,
        ];
        let values: Vec<&str> = text.split(',').map(str::trim).collect();
        if values.len() > slots.len() {
            return Err(Error::InvalidArgument(format!(
                "{CAPS_ENV}: expected at most {} values, got {}",
                slots.len(),
                values.len()
            )));
        }
        for (slot, v) in slots.into_iter().zip(values) {
            *slot = v
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{CAPS_ENV}: `{v}` is not an integer")))?;
        }
        Ok(caps)
    }

    /// Caps from the environment, or defaults when the variable is unset.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(s) if !s.trim().is_empty() => Caps::parse(&s),
            _ => Ok(Caps::default()),
        }
    }

    /// Process-wide caps, read once. An invalid variable falls back to the
    /// defaults; the CLI validates it up front with [`Caps::from_env`].
    pub fn global() -> &'static Caps {
        static GLOBAL: OnceLock<Caps> = OnceLock::new();
        GLOBAL.get_or_init(|| Caps::from_env().unwrap_or_default())
    }

    pub fn with_brute_force(order: u64) -> Caps {
        Caps {
            brute_force_order: order,
            ..Caps::default()
        }
    }

    pub(crate) fn check(cap_name: &'static str, cap: u64, what: impl Into<String>, needed: u64) -> Result<()> {
        if needed > cap {
            return Err(Error::Resource {
                cap_name,
                cap,
                what: what.into(),
                needed,
            });
        }
        Ok(())
    }
}
