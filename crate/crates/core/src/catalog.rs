//! Group files: JSON objects `{name, degree, generators, tags?}` with
//! generators in cycle notation.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<Vec<String>>,
}

impl GroupFile {
    pub fn generators(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.degree))
            .collect()
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, self.generators()?)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().flatten().any(|t| t == tag)
    }
}

/// Loads one group file, or every `*.json` file of a directory, sorted by name.
pub fn load_catalog(path: &Path) -> Result<Vec<GroupFile>> {
    let meta = fs::metadata(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let files: Vec<PathBuf> = if meta.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json") && p.is_file())
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    let mut entries = Vec::with_capacity(files.len());
    let mut seen: HashMap<String, String> = HashMap::new();
    for file in &files {
        let entry = load_group_file(file)?;
        let shown = file.display().to_string();
        if let Some(first) = seen.insert(entry.name.clone(), shown.clone()) {
            return Err(Error::Catalog {
                file: shown.clone(),
                line: line_of(&fs::read_to_string(file).unwrap_or_default(), &format!("\"{}\"", entry.name)),
                token: entry.name.clone(),
                message: format!("duplicate group name, already defined in {first}"),
            });
        }
        entries.push(entry);
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(entries)
}

/// Parses and validates a single group file.
pub fn load_group_file(path: &Path) -> Result<GroupFile> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_group_file(&text, &path.display().to_string())
}

/// Parses group-file text; `file` only labels errors.
pub fn parse_group_file(text: &str, file: &str) -> Result<GroupFile> {
    let catalog_err = |line: usize, token: &str, message: String| Error::Catalog {
        file: file.to_string(),
        line,
        token: token.to_string(),
        message,
    };
    let entry: GroupFile = serde_json::from_str(text).map_err(|e| {
        let line = e.line().max(1);
        let token = token_near(text.lines().nth(line - 1).unwrap_or_default(), e.column());
        catalog_err(line, &token, e.to_string())
    })?;
    if entry.name.trim().is_empty() {
        return Err(catalog_err(line_of(text, "\"name\""), "name", "empty group name".into()));
    }
    if entry.degree == 0 {
        return Err(catalog_err(line_of(text, "\"degree\""), "0", "degree must be positive".into()));
    }
    for g in &entry.generators {
        if let Err(e) = Permutation::parse_cycles(g, entry.degree) {
            let token = match &e {
                Error::Parse { token, .. } => token.clone(),
                _ => g.clone(),
            };
            return Err(catalog_err(line_of(text, &format!("\"{g}\"")), &token, e.to_string()));
        }
    }
    Ok(entry)
}

/// 1-based line of the first occurrence of `needle`, or 1.
fn line_of(text: &str, needle: &str) -> usize {
    text.lines().position(|l| l.contains(needle)).map_or(1, |i| i + 1)
}

/// The whitespace-delimited word around a 1-based column.
fn token_near(line: &str, column: usize) -> String {
    let chars: Vec<char> = line.chars().collect();
    if chars.is_empty() {
        return String::new();
    }
    let at = column.saturating_sub(1).min(chars.len() - 1);
    let mut start = at;
    while start > 0 && !chars[start - 1].is_whitespace() {
        start -= 1;
    }
    let mut end = at;
    while end < chars.len() && !chars[end].is_whitespace() {
        end += 1;
    }
    chars[start..end.max(start + 1).min(chars.len())].iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let text = r#"{"name": "s4", "degree": 4, "generators": ["(1,2,3,4)", "(1,2)"]}"#;
        let entry = parse_group_file(text, "s4.json").unwrap();
        assert_eq!(entry.to_group().unwrap().order(), 24);
        assert!(entry.tags.is_none());
        assert!(!entry.has_tag("counterexample"));
    }

    #[test]
    fn point_out_of_range_names_the_token() {
        let text = "{\n  \"name\": \"bad\",\n  \"degree\": 6,\n  \"generators\": [\n    \"(1,7)\"\n  ]\n}\n";
        match parse_group_file(text, "bad.json") {
            Err(Error::Catalog { file, line, token, .. }) => {
                assert_eq!(file, "bad.json");
                assert_eq!(line, 5);
                assert_eq!(token, "7");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_field_and_syntax_errors() {
        let text = "{\"name\": \"x\", \"degree\": 3, \"generators\": [], \"order\": 6}";
        assert!(matches!(parse_group_file(text, "x.json"), Err(Error::Catalog { line: 1, .. })));
        let text = "{\n\"name\": \"x\",\n\"degree\": three\n}";
        match parse_group_file(text, "x.json") {
            Err(Error::Catalog { line, token, .. }) => {
                assert_eq!(line, 3);
                assert!(token.contains("three"), "{token}");
            }
            other => panic!("{other:?}"),
        }
    }
}
