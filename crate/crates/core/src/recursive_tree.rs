//! Random d-ary recursive trees: each step picks a uniform leaf and gives it
//! `d` children.

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RecursiveTree {
    d: usize,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl RecursiveTree {
    pub fn branching(&self) -> usize {
        self.d
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn depth(&self, node: usize) -> usize {
        self.depth[node]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

pub fn generate_recursive_tree<R: Rng + ?Sized>(d: usize, steps: usize, rng: &mut R) -> Result<RecursiveTree> {
    if d == 0 {
        return Err(Error::InvalidParameter("branching factor must be at least 1".into()));
    }
    let total = steps
        .checked_mul(d)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::TooLarge { limit: usize::MAX })?;
    let mut parent = Vec::with_capacity(total);
    let mut depth = Vec::with_capacity(total);
    parent.push(None);
    depth.push(0);
    let mut leaves = vec![0usize];
    for _ in 0..steps {
        let slot = rng.random_range(0..leaves.len());
        let leaf = leaves.swap_remove(slot);
        for _ in 0..d {
            leaves.push(parent.len());
            parent.push(Some(leaf));
            depth.push(depth[leaf] + 1);
        }
    }
    Ok(RecursiveTree { d, parent, depth })
}

/// Larger root of `a·(d-1)·ln(d·e / (a·(d-1))) = 1`, the growth constant of
/// the height: `H_n ≈ a·ln n`. The left side peaks at `a = d/(d-1)` with value
/// `d`, so the root lies in `(d/(d-1), ∞)`. Defined for `d >= 2`.
pub fn height_constant(d: usize) -> Option<f64> {
    if d < 2 {
        return None;
    }
    let d = d as f64;
    let f = |a: f64| a * (d - 1.0) * (d * std::f64::consts::E / (a * (d - 1.0))).ln() - 1.0;
    let (mut lo, mut hi) = (d / (d - 1.0), 2.0 * d);
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn tiny_trees() {
        let t = generate_recursive_tree(2, 0, &mut seeded(1)).unwrap();
        assert_eq!((t.node_count(), t.height()), (1, 0));
        let t = generate_recursive_tree(3, 1, &mut seeded(1)).unwrap();
        assert_eq!((t.node_count(), t.height()), (4, 1));
        assert!(generate_recursive_tree(0, 3, &mut seeded(1)).is_err());
    }

    #[test]
    fn node_count_and_depths() {
        let t = generate_recursive_tree(3, 500, &mut seeded(2)).unwrap();
        assert_eq!(t.node_count(), 1501);
        for v in 1..t.node_count() {
            let p = t.parent(v).unwrap();
            assert_eq!(t.depth(v), t.depth(p) + 1);
        }
    }

    #[test]
    fn unary_tree_is_a_path() {
        let t = generate_recursive_tree(1, 40, &mut seeded(3)).unwrap();
        assert_eq!(t.height(), 40);
    }

    #[test]
    fn height_constant_solves_its_equation() {
        for d in 2..6 {
            let a = height_constant(d).unwrap();
            let d = d as f64;
            assert!(a > d / (d - 1.0));
            let lhs = a * (d - 1.0) * (d * std::f64::consts::E / (a * (d - 1.0))).ln();
            assert!((lhs - 1.0).abs() < 1e-9);
        }
        // Binary search trees: the classical 4.311...
        assert!((height_constant(2).unwrap() - 4.31107).abs() < 1e-4);
        assert!(height_constant(1).is_none());
    }
}
