//! Dense element enumeration for groups small enough to hold in memory.
//!
//! Elements are stored as packed image rows of `degree` bytes (degrees here
//! never exceed 240, so points fit in a u8), with an open-addressed index
//! from row bytes to element id. Enumeration is a breadth-first closure
//! under right multiplication by the generators, so the identity is always
//! element 0 and ids are stable for a fixed generator list.

use super::{hash128_points, Permutation};
use crate::{Error, Result};

pub struct ElementStore {
    degree: usize,
    rows: Vec<u8>,
    count: usize,
    /// open addressing, power-of-two size; 0 = empty, else element id + 1
    table: Vec<u32>,
    mask: usize,
}

/// out = a then b, i.e. out[p] = b[a[p]].
pub fn mul_rows(a: &[u8], b: &[u8], out: &mut [u8]) {
    for p in 0..a.len() {
        out[p] = b[a[p] as usize];
    }
}

/// out = a^-1.
pub fn inv_row(a: &[u8], out: &mut [u8]) {
    for p in 0..a.len() {
        out[a[p] as usize] = p as u8;
    }
}

/// out = g^-1 * x * g.
pub fn conj_row(x: &[u8], g: &[u8], out: &mut [u8]) {
    for p in 0..x.len() {
        out[g[p] as usize] = g[x[p] as usize];
    }
}

fn row_hash(row: &[u8]) -> u128 {
    hash128_points(row.iter().map(|&b| b as u64))
}

impl ElementStore {
    /// Enumerate the closure of the generators. `limit` is the expected
    /// group order when known; finding more elements is an error, so a
    /// completed enumeration of exactly `limit` elements doubles as an
    /// order certificate.
    pub fn enumerate(degree: usize, generators: &[Permutation], limit: usize) -> Result<ElementStore> {
        assert!(degree <= 256, "packed rows hold one byte per point");
        for g in generators {
            assert_eq!(g.degree(), degree);
        }
        let capacity = (2 * limit + 2).next_power_of_two();
        let mut store = ElementStore {
            degree,
            rows: Vec::with_capacity(degree * limit.min(1 << 20)),
            count: 0,
            table: vec![0u32; capacity],
            mask: capacity - 1,
        };
        let identity: Vec<u8> = (0..degree).map(|p| p as u8).collect();
        store.insert(&identity, limit)?;
        let gen_rows: Vec<Vec<u8>> = generators
            .iter()
            .map(|g| g.images().iter().map(|&x| x as u8).collect())
            .collect();
        let mut current = vec![0u8; degree];
        let mut product = vec![0u8; degree];
        let mut i = 0;
        while i < store.count {
            current.copy_from_slice(store.row(i as u32));
            for g in &gen_rows {
                mul_rows(&current, g, &mut product);
                store.insert(&product, limit)?;
            }
            i += 1;
        }
        Ok(store)
    }

    /// Insert if absent; errors when the element count would pass `limit`.
    fn insert(&mut self, row: &[u8], limit: usize) -> Result<u32> {
        let mut slot = (row_hash(row) as usize) & self.mask;
        loop {
            let entry = self.table[slot];
            if entry == 0 {
                if self.count >= limit {
                    return Err(Error::budget(format!(
                        "element enumeration passed the expected count {limit}"
                    )));
                }
                let id = self.count as u32;
                self.rows.extend_from_slice(row);
                self.count += 1;
                self.table[slot] = id + 1;
                return Ok(id);
            }
            let id = entry - 1;
            if self.row(id) == row {
                return Ok(id);
            }
            slot = (slot + 1) & self.mask;
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn row(&self, id: u32) -> &[u8] {
        let start = id as usize * self.degree;
        &self.rows[start..start + self.degree]
    }

    pub fn perm(&self, id: u32) -> Permutation {
        Permutation::from_images(self.row(id).iter().map(|&b| b as u16).collect())
    }

    pub fn index_of_row(&self, row: &[u8]) -> Option<u32> {
        let mut slot = (row_hash(row) as usize) & self.mask;
        loop {
            let entry = self.table[slot];
            if entry == 0 {
                return None;
            }
            let id = entry - 1;
            if self.row(id) == row {
                return Some(id);
            }
            slot = (slot + 1) & self.mask;
        }
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        if p.degree() != self.degree {
            return None;
        }
        let row: Vec<u8> = p.images().iter().map(|&x| x as u8).collect();
        self.index_of_row(&row)
    }
}
