use std::collections::BTreeSet;

use crate::algebra::{Assignment, Polynomial, Variable};
use crate::error::{Error, Result};

/// Largest number of variables [`common_roots`] will enumerate.
pub const MAX_ROOT_VARIABLES: usize = 24;

/// All Boolean assignments to `universe ∪ vars(generators)` on which every
/// generator vanishes, in increasing binary order of the assignment (the
/// smallest variable is the least significant bit).
///
/// The search assigns variables in increasing order and evaluates each
/// generator as soon as its last variable is set, pruning dead branches.
pub fn common_roots(generators: &[Polynomial], universe: &[Variable]) -> Result<Vec<Assignment>> {
    let mut vars: BTreeSet<Variable> = universe.iter().copied().collect();
    for g in generators {
        vars.extend(g.variables());
    }
    let vars: Vec<Variable> = vars.into_iter().collect();
    if vars.len() > MAX_ROOT_VARIABLES {
        return Err(Error::resource("variables for root enumeration", MAX_ROOT_VARIABLES as u64));
    }
    let pos = |x: &Variable| vars.binary_search(x).expect("collected above");

    // Each generator as (mask, coefficient) terms, bucketed by the depth at
    // which all of its variables are known.
    struct Check<'a> {
        terms: Vec<(u32, &'a crate::algebra::Scalar)>,
        poly: &'a Polynomial,
    }
    let mut by_depth: Vec<Vec<Check>> = (0..=vars.len()).map(|_| Vec::new()).collect();
    for g in generators {
        let terms: Vec<(u32, _)> = g
            .terms()
            .map(|(m, c)| (m.vars().iter().fold(0u32, |acc, x| acc | 1 << pos(x)), c))
            .collect();
        let depth = g.variables().iter().map(|x| pos(x) + 1).max().unwrap_or(0);
        by_depth[depth].push(Check { terms, poly: g });
    }

    let vanishes = |checks: &[Check], point: u32| {
        checks.iter().all(|ch| {
            let f = ch.poly.field();
            let mut acc = f.zero();
            for (mask, c) in &ch.terms {
                if point & mask == *mask {
                    acc = f.add(&acc, c);
                }
            }
            f.is_zero(&acc)
        })
    };

    let mut roots = Vec::new();
    if !vanishes(&by_depth[0], 0) {
        return Ok(roots);
    }
    // Iterative depth-first search over partial points.
    let mut stack: Vec<(usize, u32)> = vec![(0, 0)];
    let mut found: Vec<u32> = Vec::new();
    while let Some((depth, point)) = stack.pop() {
        if depth == vars.len() {
            found.push(point);
            continue;
        }
        for bit in [1u32, 0] {
            let next = point | bit << depth;
            if vanishes(&by_depth[depth + 1], next) {
                stack.push((depth + 1, next));
            }
        }
    }
    found.sort_unstable();
    for point in found {
        roots.push(vars.iter().enumerate().map(|(i, x)| (*x, point >> i & 1 == 1)).collect());
    }
    Ok(roots)
}
