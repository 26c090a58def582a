//! Graph specs (`pyramid:2`, `tree:3`, `path:4`, `file:<path>`, ranges
//! like `pyramid:1..4`) and file helpers.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use peblab::dag::{build_binary_tree, build_path, build_pyramid, parse_dag, Dag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Pyramid,
    Tree,
}

impl Family {
    fn parse(s: &str) -> Option<Family> {
        match s {
            "path" => Some(Family::Path),
            "pyramid" => Some(Family::Pyramid),
            "tree" => Some(Family::Tree),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Pyramid => "pyramid",
            Family::Tree => "tree",
        }
    }

    pub fn build(self, n: usize) -> Result<Dag> {
        Ok(match self {
            Family::Path if n == 0 => bail!("a path needs at least one vertex"),
            Family::Path => build_path(n),
            Family::Pyramid => build_pyramid(n),
            Family::Tree => build_binary_tree(n),
        })
    }
}

/// A named graph: `id` is the spec it came from, e.g. `pyramid:2`.
pub struct NamedGraph {
    pub id: String,
    pub dag: Dag,
}

/// Expands a spec into graphs; ranges may be empty.
pub fn graphs(spec: &str) -> Result<Vec<NamedGraph>> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let dag = parse_dag(&text).with_context(|| format!("parsing {path}"))?;
        return Ok(vec![NamedGraph {
            id: spec.to_string(),
            dag,
        }]);
    }
    let (kind, size) = spec
        .split_once(':')
        .with_context(|| format!("graph spec `{spec}` should look like pyramid:2"))?;
    let family = Family::parse(kind).with_context(|| format!("unknown graph family `{kind}`"))?;
    let num = |t: &str| {
        t.parse::<usize>()
            .with_context(|| format!("bad size `{t}` in `{spec}`"))
    };
    let range = match size.split_once("..") {
        Some((a, b)) => num(a)?..=num(b)?,
        None => {
            let n = num(size)?;
            n..=n
        }
    };
    range
        .map(|n| {
            Ok(NamedGraph {
                id: format!("{}:{n}", family.name()),
                dag: family.build(n)?,
            })
        })
        .collect()
}

/// Exactly one graph.
pub fn graph(spec: &str) -> Result<NamedGraph> {
    let mut all = graphs(spec)?;
    if all.len() != 1 {
        bail!("`{spec}` names {} graphs, expected one", all.len());
    }
    Ok(all.remove(0))
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = path.file_name().context("output path has no file name")?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

/// Writes to `path`, or to standard output when it is absent.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

/// File-name friendly form of a spec: `pyramid:2` becomes `pyramid-2`.
pub fn slug(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '-' })
        .collect()
}
