use std::collections::BTreeSet;

use super::structure::FinStructure;

/// `Aut(M)` as permutation image tables, listed in lexicographic order
/// (so the identity comes first), with a generating subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutGroup {
    elements: Vec<Vec<usize>>,
    generators: Vec<Vec<usize>>,
}

impl AutGroup {
    /// Builds the group from a complete, lexicographically sorted element
    /// list. Generators are picked greedily.
    pub fn from_elements(elements: Vec<Vec<usize>>) -> Self {
        let mut generators: Vec<Vec<usize>> = Vec::new();
        let mut span: BTreeSet<Vec<usize>> = BTreeSet::new();
        if let Some(id) = elements.first() {
            span.insert(id.clone());
        }
        for g in &elements {
            if !span.contains(g) {
                generators.push(g.clone());
                span = closure(&generators, g.len());
            }
        }
        Self { elements, generators }
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(p)).is_ok()
    }
}

fn closure(generators: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let id: Vec<usize> = (0..n).collect();
    out.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&a| g[a]).collect();
            if out.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    out
}

/// Exact `Aut(M)` by backtracking over images of `0, 1, ...`, pruning a
/// partial assignment as soon as some relation tuple, function entry or
/// constant with all entries assigned is not preserved.
pub fn automorphism_group(m: &FinStructure) -> AutGroup {
    let n = m.size();
    let mut found = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(m, 0, &mut image, &mut used, &mut found);
    AutGroup::from_elements(found)
}

fn extend(m: &FinStructure, k: usize, image: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    let n = m.size();
    if k == n {
        out.push(image.clone());
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        image[k] = v;
        used[v] = true;
        if consistent(m, k, image) {
            extend(m, k + 1, image, used, out);
        }
        used[v] = false;
    }
    image[k] = usize::MAX;
}

/// Checks the constraints whose entries lie in `0..=k` and involve `k`.
fn consistent(m: &FinStructure, k: usize, image: &[usize]) -> bool {
    let ready = |t: &[usize]| t.iter().all(|&a| a <= k) && t.contains(&k);
    for c in m.constants() {
        if c.value == k && image[k] != k {
            return false;
        }
    }
    for r in m.relations() {
        for t in &r.tuples {
            if ready(t) {
                let mapped: Vec<usize> = t.iter().map(|&a| image[a]).collect();
                if !r.tuples.contains(&mapped) {
                    return false;
                }
            }
        }
    }
    for f in m.functions() {
        for (idx, args) in super::structure::all_tuples(m.size(), f.arity).enumerate() {
            let value = f.table[idx];
            let mut involved = args.clone();
            involved.push(value);
            if ready(&involved) {
                let mapped: Vec<usize> = args.iter().map(|&a| image[a]).collect();
                if f.table[m.function_index(&mapped)] != image[value] {
                    return false;
                }
            }
        }
    }
    true
}
