use crate::error::{Error, Result};

use super::group::{symmetric_permutations, FiniteGroup};

/// A finite set `0..size` with a left action: `perms[g][x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: FiniteGroup,
    perms: Vec<Vec<usize>>,
}

impl GSet {
    /// Checks that each `perms[g]` is a bijection, the identity acts
    /// trivially and `(gh)·x = g·(h·x)`.
    pub fn new(group: FiniteGroup, size: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::BadAction(format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        for (g, p) in perms.iter().enumerate() {
            let mut hit = vec![false; size];
            if p.len() != size {
                return Err(Error::BadAction(format!("permutation of element {g} has wrong length")));
            }
            for &x in p {
                if x >= size || hit[x] {
                    return Err(Error::BadAction(format!("element {g} does not act bijectively")));
                }
                hit[x] = true;
            }
        }
        if perms[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::BadAction("identity acts nontrivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if let Some(x) = (0..size).find(|&x| perms[gh][x] != perms[g][perms[h][x]]) {
                    return Err(Error::BadAction(format!("({g}*{h})·{x} != {g}·({h}·{x})")));
                }
            }
        }
        Ok(Self { group, perms })
    }

    /// `n` points with every element acting trivially.
    pub fn trivial(group: FiniteGroup, n: usize) -> Self {
        let perms = vec![(0..n).collect(); group.order()];
        Self { group, perms }
    }

    /// The group acting on itself by left translation.
    pub fn left_regular(group: FiniteGroup) -> Self {
        let perms = group.elements().map(|g| group.elements().map(|x| group.mul(g, x)).collect()).collect();
        Self { group, perms }
    }

    /// `S_n` acting on `0..n`.
    pub fn natural(n: usize) -> Self {
        let group = FiniteGroup::symmetric(n);
        Self { group, perms: symmetric_permutations(n) }
    }

    /// `Z/n` rotating `0..n`.
    pub fn rotation(n: usize) -> Self {
        let group = FiniteGroup::cyclic(n);
        let perms = (0..n).map(|g| (0..n).map(|x| (x + g) % n).collect()).collect();
        Self { group, perms }
    }

    /// The permutation group on `0..degree` generated by `generators`, acting
    /// on its points. Elements are numbered in breadth-first order from the
    /// identity.
    pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for p in generators {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::BadAction("generator is not a permutation".into()));
            }
        }
        let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
        let mut index = std::collections::HashMap::from([(elements[0].clone(), 0)]);
        let mut next = 0;
        while next < elements.len() {
            for s in generators {
                let composite: Vec<usize> = elements[next].iter().map(|&x| s[x]).collect();
                if !index.contains_key(&composite) {
                    index.insert(composite.clone(), elements.len());
                    elements.push(composite);
                }
            }
            next += 1;
        }
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()]).collect())
            .collect();
        Ok(Self { group: FiniteGroup::from_table(table)?, perms: elements })
    }

    /// Left cosets `G/H` of a subgroup, ordered by smallest representative.
    pub fn cosets(group: FiniteGroup, subgroup: &[usize]) -> Result<Self> {
        let closed = subgroup.contains(&group.identity())
            && subgroup.iter().all(|&a| subgroup.iter().all(|&b| subgroup.contains(&group.mul(a, b))));
        if !closed {
            return Err(Error::BadGroup("not a subgroup".into()));
        }
        let mut label = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for g in group.elements() {
            if label[g] == usize::MAX {
                for &h in subgroup {
                    label[group.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let perms = group
            .elements()
            .map(|g| reps.iter().map(|&r| label[group.mul(g, r)]).collect())
            .collect();
        Ok(Self { group, perms })
    }

    /// Disjoint union, points of `self` first.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::BadAction("union of sets for different groups".into()));
        }
        let n = self.size();
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&x| x + n)).collect())
            .collect();
        Ok(Self { group: self.group.clone(), perms })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.perms.first().map_or(0, |p| p.len())
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn fixed_points(&self, g: usize) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.act(g, x) == x).collect()
    }

    /// Orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 0..self.size() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }
}
