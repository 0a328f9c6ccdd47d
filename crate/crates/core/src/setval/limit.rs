use super::Transitions;
use crate::error::{Error, Result};

/// Default bound on the number of enumerated compatible families.
pub const DEFAULT_FAMILY_CAP: usize = 1_000_000;

/// All compatible families, in lexicographic order of their components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    families: Vec<Vec<usize>>,
}

impl LimitResult {
    pub fn families(&self) -> &[Vec<usize>] {
        &self.families
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn position(&self, family: &[usize]) -> Option<usize> {
        self.families.binary_search_by(|f| f.as_slice().cmp(family)).ok()
    }
}

/// Enumerates families `(x_i)` with `table(x_from) = x_to` for every
/// arrow, by backtracking over indices in order. An arrow whose source is
/// already assigned forces the value at its target.
pub fn limit_of(t: &Transitions, cap: usize) -> Result<LimitResult> {
    let n = t.sizes.len();
    // arrows checked when the later of their two endpoints is assigned
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in t.arrows.iter().enumerate() {
        at[a.from.max(a.to)].push(k);
    }
    let mut families = Vec::new();
    let mut current = vec![0; n];
    search(t, &at, 0, &mut current, &mut families, cap)?;
    Ok(LimitResult { families })
}

fn search(
    t: &Transitions,
    at: &[Vec<usize>],
    i: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if i == t.sizes.len() {
        if out.len() == cap {
            return Err(Error::TooManyFamilies(cap));
        }
        out.push(current.clone());
        return Ok(());
    }
    let forced = at[i].iter().find_map(|&k| {
        let a = &t.arrows[k];
        (a.to == i && a.from < i).then(|| a.table[current[a.from]])
    });
    let candidates = match forced {
        Some(v) => v..v + 1,
        None => 0..t.sizes[i],
    };
    'next: for v in candidates {
        current[i] = v;
        for &k in &at[i] {
            let a = &t.arrows[k];
            if a.table[current[a.from]] != current[a.to] {
                continue 'next;
            }
        }
        search(t, at, i + 1, current, out, cap)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::Arrow;
    use super::*;

    #[test]
    fn empty_index_has_one_empty_family() {
        let l = limit_of(&Transitions::default(), 10).unwrap();
        assert_eq!(l.families(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn cap_is_enforced() {
        let t = Transitions {
            sizes: vec![3, 3],
            arrows: vec![],
        };
        assert_eq!(limit_of(&t, 5).unwrap_err(), Error::TooManyFamilies(5));
        assert_eq!(limit_of(&t, 9).unwrap().len(), 9);
    }

    #[test]
    fn forced_values_follow_arrows() {
        let t = Transitions {
            sizes: vec![2, 2],
            arrows: vec![Arrow {
                from: 0,
                to: 1,
                table: vec![1, 0],
            }],
        };
        let l = limit_of(&t, 10).unwrap();
        assert_eq!(l.families(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(l.position(&[1, 0]), Some(1));
    }
}
