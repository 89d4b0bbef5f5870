use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table on elements `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |msg: &str| Err(Error::InvalidPresentation(format!("holonomy table: {msg}")));
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad("table must be square and match the element list");
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("entry out of range");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity element");
        };
        let mut inverses = vec![0; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity) {
                Some(y) if table[y][x] == identity => inverses[x] = y,
                _ => return bad(&format!("element {} has no inverse", names[x])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::new(vec!["1".into()], vec![vec![0]]).expect("trivial group")
    }

    /// The cyclic group of order `n` with elements named `1, r, r^2, ...` after `generator`.
    pub fn cyclic(n: usize, generator: &str) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => generator.to_string(),
                _ => format!("{generator}^{k}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Elements of the subgroup generated by `gens`, in breadth-first order from the identity.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = vec![self.identity];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(f) = queue.pop_front() {
            for &g in gens {
                let h = self.mul(f, g);
                if !seen[h] {
                    seen[h] = true;
                    order.push(h);
                    queue.push_back(h);
                }
            }
        }
        order
    }

    /// The subgroup on `elements` (closed under multiplication) as a group in its own right;
    /// returns it with the embedding into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let pos = |x: usize| elements.iter().position(|&e| e == x);
        let mut table = Vec::with_capacity(elements.len());
        for &a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in elements {
                row.push(pos(self.mul(a, b)).ok_or_else(|| {
                    Error::InvalidPresentation("subset is not closed under multiplication".into())
                })?);
            }
            table.push(row);
        }
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        Ok((FiniteGroup::new(names, table)?, elements.to_vec()))
    }

    /// The quotient by a normal subgroup, with the projection `self -> quotient`.
    /// Cosets are named after their first element.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut proj = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if proj[g] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(g);
            for &k in normal {
                proj[self.mul(g, k)] = class;
            }
        }
        for &k in normal {
            for g in 0..self.order() {
                let conj = self.mul(self.mul(g, k), self.inv(g));
                if !normal.contains(&conj) {
                    return Err(Error::InvalidPresentation("quotient by a non-normal subgroup".into()));
                }
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| proj[self.mul(a, b)]).collect())
            .collect();
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        Ok((FiniteGroup::new(names, table)?, proj))
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
