//! Dyadic orthogonalization of a B-spline family.
//!
//! The B-splines are arranged in a binary tree. A node at level `ℓ` owns a
//! contiguous run of at most `(k+1)·2^ℓ − k` B-splines: its left child, `k`
//! separator B-splines, then its right child. Leaves hold one B-spline. The
//! separator B-splines of a node are orthogonalized against every element of
//! the node's subtree and then symmetrically among themselves, so each element
//! is supported on the span of its node's B-splines.

use super::bspline::BsplineFamily;
use crate::error::Result;
use crate::linalg::inverse_sqrt_spd;
use ndarray::{Array1, Array2};

/// Placement of one splinet element in the pyramid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplinetElement {
    pub level: usize,
    /// Half-open range of B-spline indices spanned by the owning node.
    pub first: usize,
    pub end: usize,
}

impl SplinetElement {
    /// Number of knot intervals the element can be nonzero on.
    pub fn support_intervals(&self, degree: usize) -> usize {
        self.end - self.first + degree
    }
}

pub(crate) fn capacity(level: usize, degree: usize) -> usize {
    (degree + 1) * (1usize << level) - degree
}

struct Node {
    level: usize,
    first: usize,
    end: usize,
    separator: std::ops::Range<usize>,
    children: Vec<Node>,
}

fn build_tree(first: usize, end: usize, level: usize, k: usize) -> Node {
    let r = end - first;
    if level == 0 {
        return Node {
            level,
            first,
            end,
            separator: first..end,
            children: Vec::new(),
        };
    }
    let left = r.min(capacity(level - 1, k));
    let sep = k.min(r - left);
    let mut children = vec![build_tree(first, first + left, level - 1, k)];
    let right_first = first + left + sep;
    if right_first < end {
        children.push(build_tree(right_first, end, level - 1, k));
    }
    Node {
        level,
        first,
        end,
        separator: first + left..right_first,
        children,
    }
}

/// Returns the coefficient matrix (column `j` holds element `j` in the
/// B-spline basis) and per-element placement. Element `j` is the one generated
/// from B-spline `j`.
pub(crate) fn orthogonalize(family: &BsplineFamily) -> Result<(Array2<f64>, Vec<SplinetElement>)> {
    let n = family.len();
    let k = family.degree();
    let gram = family.gram();
    let mut level = 0;
    while capacity(level, k) < n {
        level += 1;
    }
    let root = build_tree(0, n, level, k);
    let mut coefs = Array2::<f64>::zeros((n, n));
    let mut info = vec![
        SplinetElement {
            level: 0,
            first: 0,
            end: 0
        };
        n
    ];
    process(&root, &gram, k, &mut coefs, &mut info)?;
    Ok((coefs, info))
}

fn process(
    node: &Node,
    gram: &Array2<f64>,
    k: usize,
    coefs: &mut Array2<f64>,
    info: &mut [SplinetElement],
) -> Result<()> {
    for child in &node.children {
        process(child, gram, k, coefs, info)?;
    }
    let sep: Vec<usize> = node.separator.clone().collect();
    if sep.is_empty() {
        return Ok(());
    }
    let descendants: Vec<usize> = (node.first..node.end)
        .filter(|j| !node.separator.contains(j))
        .collect();
    // Banded window of the Gram matrix touched by this node.
    let lo = node.first;
    let hi = node.end;
    let inner = |u: &Array1<f64>, v: &Array1<f64>| -> f64 {
        let mut s = 0.0;
        for i in lo..hi {
            if u[i] == 0.0 {
                continue;
            }
            let a = i.saturating_sub(k).max(lo);
            let b = (i + k + 1).min(hi);
            let mut row = 0.0;
            for j in a..b {
                row += gram[[i, j]] * v[j];
            }
            s += u[i] * row;
        }
        s
    };
    let n = coefs.nrows();
    let mut residuals: Vec<Array1<f64>> = Vec::with_capacity(sep.len());
    for &b in &sep {
        let mut r = Array1::<f64>::zeros(n);
        r[b] = 1.0;
        for _ in 0..2 {
            for &d in &descendants {
                let phi = coefs.column(d).to_owned();
                let c = inner(&r, &phi);
                r.scaled_add(-c, &phi);
            }
        }
        let norm = inner(&r, &r).sqrt();
        r /= norm;
        residuals.push(r);
    }
    let s = sep.len();
    let mut overlap = Array2::<f64>::zeros((s, s));
    for a in 0..s {
        for b in a..s {
            let v = inner(&residuals[a], &residuals[b]);
            overlap[[a, b]] = v;
            overlap[[b, a]] = v;
        }
    }
    let w = inverse_sqrt_spd(&overlap)?;
    for (a, &target) in sep.iter().enumerate() {
        let mut col = Array1::<f64>::zeros(n);
        for (b, r) in residuals.iter().enumerate() {
            col.scaled_add(w[[b, a]], r);
        }
        coefs.column_mut(target).assign(&col);
        info[target] = SplinetElement {
            level: node.level,
            first: node.first,
            end: node.end,
        };
    }
    Ok(())
}
