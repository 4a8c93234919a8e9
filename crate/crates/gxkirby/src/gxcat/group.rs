use serde::{Deserialize, Serialize};

/// A finite group given by its multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub order: usize,
    pub mul_table: Vec<Vec<usize>>,
    pub inv_table: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group table has wrong shape")]
    Shape,
    #[error("entry out of range")]
    Range,
    #[error("element 0 is not an identity")]
    Identity,
    #[error("inverse table wrong at {0}")]
    Inverse(usize),
    #[error("not associative at ({0},{1},{2})")]
    Associativity(usize, usize, usize),
}

impl GroupData {
    pub fn trivial() -> GroupData {
        GroupData::cyclic(1)
    }

    pub fn cyclic(n: usize) -> GroupData {
        assert!(n >= 1);
        GroupData {
            order: n,
            mul_table: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            inv_table: (0..n).map(|a| (n - a) % n).collect(),
            names: Vec::new(),
        }
    }

    /// S₃ as permutations of {0,1,2}, listed as e, (01), (02), (12), (012), (021).
    pub fn s3() -> GroupData {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        // (ab)(i) = a(b(i))
        let mul_table = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| find([0, 1, 2].map(|i| perms[a][perms[b][i]])))
                    .collect()
            })
            .collect();
        let inv_table = (0..6)
            .map(|a| {
                let mut inv = [0; 3];
                for i in 0..3 {
                    inv[perms[a][i]] = i;
                }
                find(inv)
            })
            .collect();
        GroupData {
            order: 6,
            mul_table,
            inv_table,
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv_table[a]
    }

    /// g h g⁻¹
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// [g, h] = g h g⁻¹ h⁻¹
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.conj(g, h), self.inv(h))
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, g: usize) -> String {
        self.names.get(g).cloned().unwrap_or_else(|| g.to_string())
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        if n == 0 || self.mul_table.len() != n || self.inv_table.len() != n {
            return Err(GroupError::Shape);
        }
        if self.mul_table.iter().any(|r| r.len() != n) {
            return Err(GroupError::Shape);
        }
        if self
            .mul_table
            .iter()
            .flatten()
            .chain(&self.inv_table)
            .any(|&x| x >= n)
        {
            return Err(GroupError::Range);
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::Identity);
            }
            let i = self.inv(a);
            if self.mul(a, i) != 0 || self.mul(i, a) != 0 {
                return Err(GroupError::Inverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::Associativity(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `f: self → other` given as an image table is a homomorphism.
    pub fn is_hom_to(&self, other: &GroupData, f: &[usize]) -> bool {
        f.len() == self.order
            && f.iter().all(|&x| x < other.order)
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_validate() {
        for g in [GroupData::trivial(), GroupData::cyclic(2), GroupData::cyclic(4), GroupData::s3()] {
            g.validate().unwrap();
        }
        assert!(!GroupData::s3().is_abelian());
        assert!(GroupData::cyclic(3).is_abelian());
    }

    #[test]
    fn broken_table_rejected() {
        let mut g = GroupData::cyclic(3);
        g.mul_table[1][1] = 1;
        assert!(g.validate().is_err());
    }

    #[test]
    fn s3_commutators() {
        let g = GroupData::s3();
        // transpositions fail to commute, 3-cycles commute with each other
        assert_ne!(g.commutator(1, 2), 0);
        assert_eq!(g.commutator(4, 5), 0);
        let commuting = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| g.commutator(a, b) == 0)
            .count();
        assert_eq!(commuting, 18);
    }
}
