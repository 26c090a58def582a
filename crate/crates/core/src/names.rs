//! Variable names.
//!
//! Every variable in a formula is an opaque string. Names are ordered
//! "naturally": runs of ASCII digits compare by numeric value, so `v2 < v10`
//! and `x#2 < x#10`. This order is the canonical variable order used by the
//! DIMACS writer, the SAT oracle and every exhaustive search.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Separator between a base variable and its substitution index (`x#1`).
pub const BLOCK_SEPARATOR: char = '#';

/// A propositional variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        Var(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The `index`-th (1-based) substituted copy of this variable.
    pub fn block_member(&self, index: usize) -> Var {
        Var::new(format!("{}{}{}", self.0, BLOCK_SEPARATOR, index))
    }

    /// Splits `x#i` into `(x, i)`. Returns `None` for unsubstituted names.
    pub fn split_block(&self) -> Option<(Var, usize)> {
        let (base, idx) = self.0.rsplit_once(BLOCK_SEPARATOR)?;
        if base.is_empty() {
            return None;
        }
        let idx: usize = idx.parse().ok()?;
        if idx == 0 {
            return None;
        }
        Some((Var::new(base), idx))
    }

    pub fn is_substituted(&self) -> bool {
        self.0.contains(BLOCK_SEPARATOR)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl From<String> for Var {
    fn from(s: String) -> Self {
        Var::new(s)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

/// Natural string comparison. Total: ties between different spellings of the
/// same number (`a01` vs `a1`) fall back to byte order.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (ab, bb) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < ab.len() && j < bb.len() {
        if ab[i].is_ascii_digit() && bb[j].is_ascii_digit() {
            let si = i;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let da = trim_zeros(&ab[si..i]);
            let db = trim_zeros(&bb[sj..j]);
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = ab[i].cmp(&bb[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (ab.len() - i)
        .cmp(&(bb.len() - j))
        .then_with(|| ab.cmp(bb))
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let start = digits.iter().position(|&d| d != b'0').unwrap_or(digits.len());
    &digits[start..]
}
