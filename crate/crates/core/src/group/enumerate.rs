//! Breadth-first enumeration of a group generated by concrete objects.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Elements reached from the identity by right multiplication with generators.
///
/// Index 0 is the identity and every other element is its BFS parent times one
/// generator, so a Cayley table can be filled in without further hashing.
pub(crate) struct Enumeration<T> {
    pub elems: Vec<T>,
    pub index: HashMap<T, u32>,
    pub ngens: usize,
    /// `right[x * ngens + s]` is the index of `elems[x] * gens[s]`.
    pub right: Vec<u32>,
    pub parent: Vec<(u32, u32)>,
    /// Index of each generator.
    pub gen_index: Vec<usize>,
}

pub(crate) fn enumerate<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<Enumeration<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let ngens = gens.len();
    let mut elems = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0u32);
    let mut right = Vec::new();
    let mut parent = vec![(0u32, 0u32)];
    let mut i = 0;
    while i < elems.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = mul(&elems[i], g);
            let idx = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elems.len() >= cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    let j = elems.len() as u32;
                    index.insert(y.clone(), j);
                    elems.push(y);
                    parent.push((i as u32, s as u32));
                    j
                }
            };
            right.push(idx);
        }
        i += 1;
    }
    let gen_index = (0..ngens).map(|s| right[s] as usize).collect();
    Ok(Enumeration {
        elems,
        index,
        ngens,
        right,
        parent,
        gen_index,
    })
}

impl<T> Enumeration<T> {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Row-major Cayley table with two-byte entries.
    pub fn table(&self) -> Vec<u16> {
        let n = self.len();
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            let row = x * n;
            table[row] = x as u16;
            for y in 1..n {
                let (p, s) = self.parent[y];
                let xp = table[row + p as usize] as usize;
                table[row + y] = self.right[xp * self.ngens + s as usize] as u16;
            }
        }
        table
    }
}
