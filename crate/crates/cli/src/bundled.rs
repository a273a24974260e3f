//! Specs shipped with the binary.

use crate::spec::ExperimentSpec;

pub const BUNDLED: &[(&str, &str)] = &[
    ("fig1a", include_str!("../specs/fig1a.toml")),
    ("fig1b", include_str!("../specs/fig1b.toml")),
    ("fig3a", include_str!("../specs/fig3a.toml")),
    ("fig3a-free", include_str!("../specs/fig3a-free.toml")),
    ("fig3b", include_str!("../specs/fig3b.toml")),
    ("fig4a", include_str!("../specs/fig4a.toml")),
    ("fig4b", include_str!("../specs/fig4b.toml")),
    ("fig5a", include_str!("../specs/fig5a.toml")),
    ("fig5b", include_str!("../specs/fig5b.toml")),
    ("figA1a", include_str!("../specs/figA1a.toml")),
    ("figA1b", include_str!("../specs/figA1b.toml")),
    ("figA2", include_str!("../specs/figA2.toml")),
    ("figA3", include_str!("../specs/figA3.toml")),
];

pub fn find(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Every bundled spec, parsed, sorted by name.
pub fn list() -> Vec<ExperimentSpec> {
    let mut specs: Vec<ExperimentSpec> = BUNDLED
        .iter()
        .map(|(name, text)| ExperimentSpec::parse(text, name, None).unwrap_or_else(|e| panic!("bundled spec {name}: {e}")))
        .collect();
    specs.sort_by(|a, b| a.name.cmp(&b.name));
    specs
}

/// `name  engine  figure` rows, one per bundled spec.
pub fn table() -> String {
    let specs = list();
    let w = specs.iter().map(|s| s.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:<w$}  {:<17}  {}\n", "name", "engine", "figure");
    for s in specs {
        out.push_str(&format!("{:<w$}  {:<17}  {}\n", s.name, s.engine.name(), s.figure.as_deref().unwrap_or("-")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_files() {
        for s in list() {
            assert!(find(&s.name).is_some(), "{}", s.name);
        }
    }
}
