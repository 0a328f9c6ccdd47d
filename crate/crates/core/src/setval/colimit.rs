use super::Transitions;

/// Union-find over `0..n` with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Partition of a disjoint union `⨆_i S_i` into colimit classes.
///
/// Classes are numbered in order of their least member under
/// `(index, element)` order, and that member is the class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitResult {
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    representatives: Vec<(usize, usize)>,
}

impl ColimitResult {
    pub fn class(&self, index: usize, element: usize) -> usize {
        self.class_of[self.offsets[index] + element]
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative(&self, class: usize) -> (usize, usize) {
        self.representatives[class]
    }

    pub fn index_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn size(&self, index: usize) -> usize {
        self.offsets[index + 1] - self.offsets[index]
    }

    /// Every `(index, element)` pair, grouped by class.
    pub fn partition(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for i in 0..self.index_count() {
            for x in 0..self.size(i) {
                out[self.class(i, x)].push((i, x));
            }
        }
        out
    }

    pub fn members(&self, class: usize) -> Vec<(usize, usize)> {
        self.partition().swap_remove(class)
    }
}

/// Quotient of the disjoint union by the equivalence generated by
/// `x ~ table(x)` over every arrow.
pub fn colimit_of(t: &Transitions) -> ColimitResult {
    let mut offsets = Vec::with_capacity(t.sizes.len() + 1);
    let mut total = 0;
    for &s in &t.sizes {
        offsets.push(total);
        total += s;
    }
    offsets.push(total);
    let mut dsu = DisjointSets::new(total);
    for a in &t.arrows {
        for (x, &y) in a.table.iter().enumerate() {
            dsu.union(offsets[a.from] + x, offsets[a.to] + y);
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut class_of = vec![0; total];
    let mut representatives = Vec::new();
    for i in 0..t.sizes.len() {
        for x in 0..t.sizes[i] {
            let flat = offsets[i] + x;
            let root = dsu.find(flat);
            if label[root] == usize::MAX {
                label[root] = representatives.len();
                representatives.push((i, x));
            }
            class_of[flat] = label[root];
        }
    }
    ColimitResult {
        offsets,
        class_of,
        representatives,
    }
}

#[cfg(test)]
mod tests {
    use super::super::Arrow;
    use super::*;

    #[test]
    fn union_find_merges_transitively() {
        let mut d = DisjointSets::new(4);
        assert!(d.union(0, 1));
        assert!(d.union(2, 3));
        assert!(!d.union(1, 0));
        d.union(1, 3);
        assert_eq!(d.find(0), d.find(2));
    }

    #[test]
    fn representatives_are_least_members() {
        let t = Transitions {
            sizes: vec![2, 1],
            arrows: vec![Arrow {
                from: 0,
                to: 1,
                table: vec![0, 0],
            }],
        };
        let c = colimit_of(&t);
        assert_eq!(c.class_count(), 1);
        assert_eq!(c.representative(0), (0, 0));
        assert_eq!(c.members(0), vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn empty_diagram_has_empty_colimit() {
        let c = colimit_of(&Transitions::default());
        assert_eq!(c.class_count(), 0);
    }
}
