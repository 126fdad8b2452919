//! Finite posets and brute-force oracles for way-below and Scott opens.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::DomainError;

/// Largest carrier accepted by [`way_below_oracle`].
pub const ORACLE_CAP: usize = 12;
/// Largest carrier accepted by [`scott_opens`].
pub const SCOTT_CAP: usize = 5;

/// A finite partial order stored as its full order matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    name: String,
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Reflexive-transitive closure of the cover pairs `(i, j)`, `i ⪯ j`.
    pub fn from_covers(name: &str, size: usize, covers: &[(usize, usize)]) -> Result<Self, DomainError> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(i, j) in covers {
            for index in [i, j] {
                if index >= size {
                    return Err(DomainError::IndexOutOfRange { index, size });
                }
            }
            leq[i * size + j] = true;
        }
        // Warshall.
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..size {
            for b in a + 1..size {
                if leq[a * size + b] && leq[b * size + a] {
                    return Err(DomainError::Cycle { a, b });
                }
            }
        }
        Ok(Self { name: String::from(name), size, leq })
    }

    pub fn chain(size: usize) -> Self {
        let covers: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        Self::from_covers("chain", size, &covers).expect("a chain is acyclic")
    }

    pub fn antichain(size: usize) -> Self {
        Self::from_covers("antichain", size, &[]).expect("no covers")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    fn check(&self, a: usize) -> Result<(), DomainError> {
        if a >= self.size {
            return Err(DomainError::IndexOutOfRange { index: a, size: self.size });
        }
        Ok(())
    }

    /// Least upper bound of the subset `mask`, if it exists.
    fn sup(&self, mask: u32) -> Option<usize> {
        let ub: Vec<usize> = (0..self.size)
            .filter(|&u| members(mask).all(|s| self.leq(s, u)))
            .collect();
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.leq(u, v)))
    }

    fn is_directed(&self, mask: u32) -> bool {
        mask != 0
            && members(mask).all(|a| {
                members(mask).all(|b| members(mask).any(|c| self.leq(a, c) && self.leq(b, c)))
            })
    }

    /// Every directed subset paired with its supremum.
    fn directed_sups(&self) -> Vec<(u32, usize)> {
        (1u32..(1 << self.size))
            .filter(|&m| self.is_directed(m))
            .filter_map(|m| self.sup(m).map(|s| (m, s)))
            .collect()
    }

    fn is_upper(&self, mask: u32) -> bool {
        members(mask).all(|a| (0..self.size).all(|b| !self.leq(a, b) || mask & (1 << b) != 0))
    }
}

fn members(mask: u32) -> impl Iterator<Item = usize> + Clone {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

fn cap(p: &FinitePoset, limit: usize) -> Result<(), DomainError> {
    if p.size > limit {
        return Err(DomainError::CarrierTooLarge { size: p.size, cap: limit });
    }
    Ok(())
}

/// `a ≪ b` by exhaustion: every directed subset whose supremum lies above
/// `b` contains an element above `a`.
pub fn way_below_oracle(p: &FinitePoset, a: usize, b: usize) -> Result<bool, DomainError> {
    cap(p, ORACLE_CAP)?;
    p.check(a)?;
    p.check(b)?;
    Ok(p.directed_sups()
        .into_iter()
        .filter(|&(_, s)| p.leq(b, s))
        .all(|(m, _)| members(m).any(|d| p.leq(a, d))))
}

/// The full way-below matrix, sharing one pass over the directed subsets.
pub fn way_below_matrix(p: &FinitePoset) -> Result<Vec<Vec<bool>>, DomainError> {
    cap(p, ORACLE_CAP)?;
    let sups = p.directed_sups();
    let n = p.size;
    Ok((0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    sups.iter()
                        .filter(|&&(_, s)| p.leq(b, s))
                        .all(|&(m, _)| members(m).any(|d| p.leq(a, d)))
                })
                .collect()
        })
        .collect())
}

/// `a ≪ a`.
pub fn is_compact(p: &FinitePoset, a: usize) -> Result<bool, DomainError> {
    way_below_oracle(p, a, a)
}

/// Scott-open subsets, as sorted element lists: upper sets that meet every
/// directed subset whose supremum they contain.
pub fn scott_opens(p: &FinitePoset) -> Result<Vec<Vec<usize>>, DomainError> {
    cap(p, SCOTT_CAP)?;
    let sups = p.directed_sups();
    Ok((0u32..(1 << p.size))
        .filter(|&u| p.is_upper(u))
        .filter(|&u| sups.iter().all(|&(m, s)| u & (1 << s) == 0 || m & u != 0))
        .map(|u| members(u).collect())
        .collect())
}

/// All upper sets, independently of directed suprema.
pub fn upper_sets(p: &FinitePoset) -> Result<Vec<Vec<usize>>, DomainError> {
    cap(p, SCOTT_CAP)?;
    Ok((0u32..(1 << p.size))
        .filter(|&u| p.is_upper(u))
        .map(|u| members(u).collect())
        .collect())
}

/// `None` if any two elements below a common element are comparable,
/// otherwise a triple `(x, y, z)` with `x, y ⪯ z` and `x, y` incomparable.
pub fn conditionally_connected(p: &FinitePoset) -> Option<(usize, usize, usize)> {
    let n = p.size;
    for z in 0..n {
        for x in 0..n {
            for y in x + 1..n {
                if p.leq(x, z) && p.leq(y, z) && !p.leq(x, y) && !p.leq(y, x) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = FinitePoset::from_covers("c", 3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert_eq!(
            FinitePoset::from_covers("bad", 2, &[(0, 1), (1, 0)]),
            Err(DomainError::Cycle { a: 0, b: 1 })
        );
        assert!(FinitePoset::from_covers("oob", 2, &[(0, 2)]).is_err());
    }

    #[test]
    fn small_way_below() {
        let c = FinitePoset::chain(2);
        assert!(way_below_oracle(&c, 0, 1).unwrap());
        assert!(!way_below_oracle(&c, 1, 0).unwrap());
        let a = FinitePoset::antichain(2);
        assert!(!way_below_oracle(&a, 0, 1).unwrap());
        assert!(is_compact(&c, 0).unwrap());
    }

    #[test]
    fn opens_of_small_posets() {
        let c = FinitePoset::chain(2);
        assert_eq!(scott_opens(&c).unwrap(), vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(scott_opens(&FinitePoset::antichain(2)).unwrap().len(), 4);
        assert!(scott_opens(&FinitePoset::chain(6)).is_err());
    }

    #[test]
    fn t0_separation() {
        let p = FinitePoset::from_covers("v", 4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        let opens = scott_opens(&p).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert!(opens.iter().any(|o| o.contains(&a) != o.contains(&b)));
                }
            }
        }
    }

    #[test]
    fn connectedness() {
        let v = FinitePoset::from_covers("v", 3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(conditionally_connected(&v), Some((0, 1, 2)));
        assert_eq!(conditionally_connected(&FinitePoset::chain(4)), None);
    }

    #[test]
    fn oracle_cap() {
        assert!(matches!(
            way_below_oracle(&FinitePoset::antichain(13), 0, 1),
            Err(DomainError::CarrierTooLarge { size: 13, cap: 12 })
        ));
    }
}
