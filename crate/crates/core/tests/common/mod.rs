//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the colimit, limit or Hom code under test.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use indpro::defsets::FinStructure;
use indpro::fincat::{FinCategory, Variance};
use indpro::indpro::IndObject;
use indpro::setval::SetDiagram;
use rand::seq::SliceRandom;
use rand::Rng;

/// Equivalence classes of the relation generated by `x ~ map(x)` over a
/// disjoint union, computed as a fixpoint of label propagation.
pub fn zigzag_classes(sizes: &[usize], arrows: &[(usize, usize, Vec<usize>)]) -> Vec<Vec<usize>> {
    let mut label: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for &s in sizes {
        label.push((next..next + s).collect());
        next += s;
    }
    loop {
        let mut changed = false;
        for (from, to, table) in arrows {
            for (x, &y) in table.iter().enumerate() {
                let (a, b) = (label[*from][x], label[*to][y]);
                if a != b {
                    let m = a.min(b);
                    for l in label.iter_mut().flatten() {
                        if *l == a.max(b) {
                            *l = m;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Whether two labellings of the same disjoint union induce the same
/// partition.
pub fn same_partition(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let flat_a: Vec<usize> = a.iter().flatten().copied().collect();
    let flat_b: Vec<usize> = b.iter().flatten().copied().collect();
    if flat_a.len() != flat_b.len() {
        return false;
    }
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    flat_a
        .iter()
        .zip(&flat_b)
        .all(|(x, y)| *fwd.entry(*x).or_insert(*y) == *y && *back.entry(*y).or_insert(*x) == *x)
}

/// A random filtering index: a chain, a cospan, a diamond, or a monoid
/// whose non-units form a left-zero semigroup.
pub fn random_filtering_index<R: Rng>(rng: &mut R) -> FinCategory {
    match rng.gen_range(0..5) {
        0 => FinCategory::chain(rng.gen_range(1..=4)).unwrap(),
        1 => FinCategory::preorder(3, &[(0, 2), (1, 2)]).unwrap(),
        2 => FinCategory::preorder(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
        3 => FinCategory::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap(),
        _ => FinCategory::monoid(
            &["1", "e", "f"],
            &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
        )
        .unwrap(),
    }
}

fn random_idempotent<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut fixed: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if fixed.is_empty() {
        fixed.push(rng.gen_range(0..n));
    }
    (0..n)
        .map(|x| if fixed.contains(&x) { x } else { *fixed.choose(rng).unwrap() })
        .collect()
}

/// A covariant functor from the index into sets of size at most
/// `max_size`, with generating maps drawn at random. Sets are nonempty
/// whenever something maps out of them.
pub fn random_functor<R: Rng>(rng: &mut R, index: &FinCategory, max_size: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = index.object_count();
    let mut maps: Vec<Option<Vec<usize>>> = vec![None; index.morphism_count()];
    if n == 1 && index.morphism_count() > 1 {
        // monoid: unit, then one idempotent or a pair of constants
        let s = rng.gen_range(1..=max_size);
        maps[0] = Some((0..s).collect());
        if index.morphism_count() == 2 {
            maps[1] = Some(random_idempotent(rng, s));
        } else if rng.gen_bool(0.5) {
            let r = random_idempotent(rng, s);
            maps[1] = Some(r.clone());
            maps[2] = Some(r);
        } else {
            maps[1] = Some(vec![rng.gen_range(0..s); s]);
            maps[2] = Some(vec![rng.gen_range(0..s); s]);
        }
        return (vec![s], maps.into_iter().map(Option::unwrap).collect());
    }
    // thin index: objects above x get their maps first; each element of
    // X_x then picks a compatible family of images over its up-set
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_size)).collect();
    let above = |x: usize| -> Vec<usize> { (0..n).filter(|&y| y != x && !index.hom(x, y).is_empty()).collect() };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| above(x).len());
    for x in 0..n {
        maps[index.identity(x)] = Some((0..sizes[x]).collect());
    }
    for &x in &order {
        let up = above(x);
        let families = compatible_families(index, &sizes, &maps, &up);
        if families.is_empty() {
            return random_functor(rng, index, max_size);
        }
        let picks: Vec<&Vec<usize>> = (0..sizes[x]).map(|_| families.choose(rng).unwrap()).collect();
        for (k, &y) in up.iter().enumerate() {
            maps[index.hom(x, y)[0]] = Some(picks.iter().map(|f| f[k]).collect());
        }
    }
    (sizes, maps.into_iter().map(Option::unwrap).collect())
}

/// Tuples `(a_y)` over `up` with `X(y -> z) a_y = a_z` for all `y, z`.
fn compatible_families(index: &FinCategory, sizes: &[usize], maps: &[Option<Vec<usize>>], up: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for (k, &y) in up.iter().enumerate() {
        let mut next = Vec::new();
        for f in &out {
            for a in 0..sizes[y] {
                let ok = up[..k].iter().enumerate().all(|(l, &z)| {
                    let into_y = index.hom(z, y).first().map(|&t| maps[t].as_ref().unwrap()[f[l]] == a);
                    let into_z = index.hom(y, z).first().map(|&t| maps[t].as_ref().unwrap()[a] == f[l]);
                    into_y.unwrap_or(true) && into_z.unwrap_or(true)
                });
                if ok {
                    let mut g = f.clone();
                    g.push(a);
                    next.push(g);
                }
            }
        }
        out = next;
    }
    out
}

/// A random covariant diagram over a random filtering index, retried
/// until functorial.
pub fn random_filtered_diagram<R: Rng>(rng: &mut R, max_size: usize) -> SetDiagram {
    loop {
        let index = Arc::new(random_filtering_index(rng));
        let (sizes, maps) = random_functor(rng, &index, max_size);
        if let Ok(d) = SetDiagram::new(index, sizes, maps, Variance::Covariant) {
            return d;
        }
    }
}

/// Elements `x` of `X_i` and `y` of `X_j` are equal in a filtered colimit
/// iff some `u: i -> k`, `v: j -> k` give `X(u) x = X(v) y`.
pub fn filtered_relation(d: &SetDiagram, i: usize, x: usize, j: usize, y: usize) -> bool {
    let c = d.index();
    (0..c.object_count()).any(|k| {
        c.hom(i, k)
            .iter()
            .any(|&u| c.hom(j, k).iter().any(|&v| d.map(u)[x] == d.map(v)[y]))
    })
}

/// Function tables of the morphisms of `FinCategory::finite_sets`, read
/// back from the morphism names.
pub fn finite_set_tables(c: &FinCategory) -> Vec<Vec<usize>> {
    (0..c.morphism_count())
        .map(|f| {
            let m = c.morphism(f);
            if m.name.starts_with("id_") {
                let size: usize = c.object_name(m.dom).rsplit(':').next().unwrap().parse().unwrap();
                (0..size).collect()
            } else {
                let list = &m.name[m.name.find('[').unwrap() + 1..m.name.len() - 1];
                list.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse().unwrap()).collect()
            }
        })
        .collect()
}

/// Base object of the given size in `finite_sets(&[0, 1, 2, 3])`.
pub fn finite_set_object(size: usize) -> usize {
    size
}

/// Looks up the base morphism with a given table.
pub fn finite_set_morphism(c: &FinCategory, tables: &[Vec<usize>], dom: usize, cod: usize, table: &[usize]) -> usize {
    *c.hom(dom, cod)
        .iter()
        .find(|&&f| tables[f] == table)
        .expect("every function is a morphism")
}

/// A random ind-object of `finite_sets(&[0, 1, 2, 3])` on at most three
/// index objects.
pub fn random_base_system<R: Rng>(
    rng: &mut R,
    base: &FinCategory,
    tables: &[Vec<usize>],
) -> IndObject<usize, usize> {
    loop {
        let index = match rng.gen_range(0..5) {
            0 => FinCategory::terminal(),
            1 => FinCategory::chain(2).unwrap(),
            2 => FinCategory::chain(3).unwrap(),
            3 => FinCategory::preorder(3, &[(0, 2), (1, 2)]).unwrap(),
            _ => FinCategory::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap(),
        };
        let (sizes, maps) = random_functor(rng, &index, 3);
        let objects: Vec<usize> = sizes.iter().map(|&s| finite_set_object(s)).collect();
        let mors: Vec<usize> = (0..index.morphism_count())
            .map(|t| {
                let (a, b) = (index.dom(t), index.cod(t));
                finite_set_morphism(base, tables, objects[a], objects[b], &maps[t])
            })
            .collect();
        if let Ok(x) = IndObject::new(base, Arc::new(index), objects, mors) {
            return x;
        }
    }
}

/// The presheaf `Z -> Colim_i Hom(Z, A_i)` on a finite base, with classes
/// found by zig-zag closure. `values[z]` lists the classes of `Z` as
/// representatives `(i, m)`; `class[z][(i, m)]` gives the class index.
pub struct ColimPresheaf {
    pub values: Vec<Vec<(usize, usize)>>,
    pub class: Vec<HashMap<(usize, usize), usize>>,
}

impl ColimPresheaf {
    pub fn new(base: &FinCategory, x: &IndObject<usize, usize>) -> Self {
        let idx = x.index();
        let mut values = Vec::new();
        let mut class = Vec::new();
        for z in 0..base.object_count() {
            let mut sizes = Vec::new();
            let mut elems: Vec<Vec<usize>> = Vec::new();
            for i in 0..x.len() {
                let h = base.hom(z, *x.object(i)).to_vec();
                sizes.push(h.len());
                elems.push(h);
            }
            let arrows: Vec<(usize, usize, Vec<usize>)> = (0..idx.morphism_count())
                .map(|t| {
                    let (i, j) = (idx.dom(t), idx.cod(t));
                    let table = elems[i]
                        .iter()
                        .map(|&m| {
                            let moved = base.compose(*x.map(t), m);
                            elems[j].iter().position(|&n| n == moved).unwrap()
                        })
                        .collect();
                    (i, j, table)
                })
                .collect();
            let labels = zigzag_classes(&sizes, &arrows);
            let mut reps: Vec<(usize, usize)> = Vec::new();
            let mut by_label: HashMap<usize, usize> = HashMap::new();
            let mut lookup = HashMap::new();
            for i in 0..x.len() {
                for (k, &m) in elems[i].iter().enumerate() {
                    let c = *by_label.entry(labels[i][k]).or_insert_with(|| {
                        reps.push((i, m));
                        reps.len() - 1
                    });
                    lookup.insert((i, m), c);
                }
            }
            values.push(reps);
            class.push(lookup);
        }
        Self { values, class }
    }

    /// Restriction along `h: Z' -> Z`.
    pub fn restrict(&self, base: &FinCategory, h: usize, c: usize) -> usize {
        let z2 = base.dom(h);
        let (i, m) = self.values[base.cod(h)][c];
        self.class[z2][&(i, base.compose(m, h))]
    }
}

/// Natural transformations `P -> Q` between two presheaves on a finite
/// base, counted by backtracking over value assignments with naturality
/// propagated along every base morphism.
pub fn count_natural_transformations(base: &FinCategory, p: &ColimPresheaf, q: &ColimPresheaf) -> usize {
    let vars: Vec<(usize, usize)> = {
        let mut v: Vec<(usize, usize)> = (0..base.object_count())
            .flat_map(|z| (0..p.values[z].len()).map(move |c| (z, c)))
            .collect();
        // larger objects first: their values force most of the rest
        v.sort_by_key(|&(z, _)| std::cmp::Reverse(base.hom(z, z).len()));
        v
    };
    let mut eta: Vec<Vec<Option<usize>>> = p.values.iter().map(|v| vec![None; v.len()]).collect();
    fn assign(
        base: &FinCategory,
        p: &ColimPresheaf,
        q: &ColimPresheaf,
        eta: &mut Vec<Vec<Option<usize>>>,
        trail: &mut Vec<(usize, usize)>,
        z: usize,
        c: usize,
        v: usize,
    ) -> bool {
        let mut stack = vec![(z, c, v)];
        while let Some((z, c, v)) = stack.pop() {
            match eta[z][c] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {
                    eta[z][c] = Some(v);
                    trail.push((z, c));
                }
            }
            for z2 in 0..base.object_count() {
                for &h in base.hom(z2, z) {
                    stack.push((z2, p.restrict(base, h, c), q.restrict(base, h, v)));
                }
            }
        }
        true
    }
    fn search(
        base: &FinCategory,
        p: &ColimPresheaf,
        q: &ColimPresheaf,
        vars: &[(usize, usize)],
        eta: &mut Vec<Vec<Option<usize>>>,
        k: usize,
    ) -> usize {
        let Some(&(z, c)) = vars.get(k) else { return 1 };
        if eta[z][c].is_some() {
            return search(base, p, q, vars, eta, k + 1);
        }
        let mut total = 0;
        for v in 0..q.values[z].len() {
            let mut trail = Vec::new();
            if assign(base, p, q, eta, &mut trail, z, c, v) {
                total += search(base, p, q, vars, eta, k + 1);
            }
            for (z, c) in trail {
                eta[z][c] = None;
            }
        }
        total
    }
    search(base, p, q, &vars, &mut eta, 0)
}

/// Automorphisms of a finite structure by trying every permutation.
pub fn brute_force_automorphisms(m: &FinStructure) -> usize {
    let n = m.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    permutations(&mut perm, 0, &mut |p| {
        if preserves(m, p) {
            count += 1;
        }
    });
    count
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

fn preserves(m: &FinStructure, p: &[usize]) -> bool {
    let n = m.size();
    let rel_ok = m.relations().iter().all(|r| {
        r.tuples
            .iter()
            .all(|t| r.tuples.contains(&t.iter().map(|&a| p[a]).collect::<Vec<_>>()))
    });
    let fun_ok = m.functions().iter().all(|f| {
        let args = n.pow(f.arity as u32);
        (0..args).all(|code| {
            let mut t = vec![0; f.arity];
            let mut c = code;
            for k in (0..f.arity).rev() {
                t[k] = c % n;
                c /= n;
            }
            let moved = t.iter().fold(0, |acc, &a| acc * n + p[a]);
            f.table[moved] == p[f.table[code]]
        })
    });
    let const_ok = m.constants().iter().all(|c| p[c.value] == c.value);
    rel_ok && fun_ok && const_ok
}
