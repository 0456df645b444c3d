use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A total assignment of colour indices to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    colors: Vec<usize>,
    palette_size: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        let palette_size = colors.iter().max().map_or(0, |&m| m + 1);
        Coloring { colors, palette_size }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// One more than the largest colour index.
    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    /// Number of distinct colours actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut seen = vec![false; self.palette_size];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.into_iter().filter(|&b| b).count()
    }

    /// Renumbers colours to `0..k` in order of first appearance.
    pub fn compacted(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.palette_size];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring::new(colors)
    }
}

/// True iff `c` is proper on the square of `g`.
///
/// Checks edges and two-edge paths directly on `g` rather than building the
/// square, so it shares no code with the colouring routines.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), got: c.len() });
    }
    for m in 0..g.n() {
        let nb = g.neighbors(m);
        for (i, &a) in nb.iter().enumerate() {
            if c.color(a) == c.color(m) {
                return Ok(false);
            }
            for &b in &nb[i + 1..] {
                if c.color(a) == c.color(b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// True iff `c` is a proper colouring of `g` itself.
pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    c.len() == g.n() && g.edges().into_iter().all(|(u, v)| c.color(u) != c.color(v))
}
