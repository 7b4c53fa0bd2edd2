use std::fs;
use std::path::Path;

use crate::semantics::Ineq;
use crate::syntax::{parse_inequality, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: String,
    /// 1-based line number in the corpus file.
    pub line: usize,
    pub text: String,
    pub ineq: Ineq,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: empty label before `:`")]
    EmptyLabel { line: usize },
}

impl CorpusError {
    pub fn line(&self) -> Option<usize> {
        match self {
            CorpusError::Io { .. } => None,
            CorpusError::Parse { line, .. } | CorpusError::EmptyLabel { line } => Some(*line),
        }
    }
}

/// One entry per non-blank line: `# ...` comments are dropped, and an
/// optional `label:` prefix names the entry (otherwise the formula text
/// does).
pub fn parse_corpus(content: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut out = Vec::new();
    for (k, raw) in content.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (label, text) = match body.split_once(':') {
            Some((l, t)) => {
                let l = l.trim();
                if l.is_empty() {
                    return Err(CorpusError::EmptyLabel { line });
                }
                (l.to_string(), t.trim())
            }
            None => (body.to_string(), body),
        };
        let (lhs, rhs) = parse_inequality(text).map_err(|source| CorpusError::Parse { line, source })?;
        out.push(CorpusEntry { label, line, text: text.to_string(), ineq: Ineq::plain(lhs, rhs) });
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let content = fs::read_to_string(path)
        .map_err(|source| CorpusError::Io { path: path.display().to_string(), source })?;
    parse_corpus(&content)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_labels_and_errors() {
        let entries = parse_corpus("# header\n[]p -> p\n\nT-axiom: []p -> p  # trailing\n").unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].label, "[]p -> p");
        assert_eq!(entries[1].label, "T-axiom");
        assert_eq!(entries[1].line, 4);

        let bad = "p\np\np\np\np\np\np -> (\n";
        let err = parse_corpus(bad).unwrap_err();
        assert_eq!(err.line(), Some(7));
        assert!(err.to_string().starts_with("line 7:"));
    }
}
