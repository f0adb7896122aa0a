//! Root systems of the five exceptional types, in simple-root coordinates.
//!
//! Roots are integer coordinate vectors over the simple roots (Bourbaki
//! numbering). The Weyl group acts through the simple-reflection formula
//! s_i(b) = b - <b, alpha_i^vee> alpha_i, which in coordinates touches only
//! the i-th entry, so reflections and closures are exact integer work.

use crate::perm::Permutation;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// The five exceptional Cartan-Killing types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExcType {
    G2,
    F4,
    E6,
    E7,
    E8,
}

pub const ALL_TYPES: [ExcType; 5] = [ExcType::G2, ExcType::F4, ExcType::E6, ExcType::E7, ExcType::E8];

impl ExcType {
    pub fn rank(self) -> usize {
        match self {
            ExcType::G2 => 2,
            ExcType::F4 => 4,
            ExcType::E6 => 6,
            ExcType::E7 => 7,
            ExcType::E8 => 8,
        }
    }

    pub fn num_roots(self) -> usize {
        match self {
            ExcType::G2 => 12,
            ExcType::F4 => 48,
            ExcType::E6 => 72,
            ExcType::E7 => 126,
            ExcType::E8 => 240,
        }
    }

    /// Order of the Weyl group.
    pub fn group_order(self) -> u64 {
        match self {
            ExcType::G2 => 12,
            ExcType::F4 => 1152,
            ExcType::E6 => 51840,
            ExcType::E7 => 2903040,
            ExcType::E8 => 696729600,
        }
    }

    pub fn coxeter_number(self) -> u64 {
        match self {
            ExcType::G2 => 6,
            ExcType::F4 => 12,
            ExcType::E6 => 12,
            ExcType::E7 => 18,
            ExcType::E8 => 30,
        }
    }

    /// Number of conjugacy classes of the Weyl group.
    pub fn class_count(self) -> usize {
        match self {
            ExcType::G2 => 6,
            ExcType::F4 => 25,
            ExcType::E6 => 25,
            ExcType::E7 => 60,
            ExcType::E8 => 112,
        }
    }

    /// Cartan data, Bourbaki numbering. Entry [i][j] is <alpha_j, alpha_i^vee>,
    /// so the reflection of alpha_j in the wall of alpha_i subtracts
    /// cartan[i][j] * alpha_i.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        // Simply-laced diagrams are encoded by their edge lists; G2 and F4
        // carry the asymmetric entries explicitly.
        fn simply_laced(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
            let mut a = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                a[i][i] = 2;
            }
            for &(i, j) in edges {
                a[i - 1][j - 1] = -1;
                a[j - 1][i - 1] = -1;
            }
            a
        }
        match self {
            // alpha_1 short, alpha_2 long
            ExcType::G2 => vec![vec![2, -3], vec![-1, 2]],
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short; double edge 2-3
            ExcType::F4 => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ],
            ExcType::E6 => simply_laced(6, &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
            ExcType::E7 => simply_laced(7, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]),
            ExcType::E8 => simply_laced(8, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]),
        }
    }

    /// Integer weights d_i with d_i * cartan[i][j] symmetric; diag(d) * cartan
    /// is (a positive multiple of) the Gram matrix of the simple roots.
    pub fn symmetrizer(self) -> Vec<i64> {
        match self {
            ExcType::G2 => vec![1, 3],
            ExcType::F4 => vec![2, 2, 1, 1],
            ExcType::E6 | ExcType::E7 | ExcType::E8 => vec![1; self.rank()],
        }
    }
}

impl fmt::Display for ExcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExcType::G2 => "G2",
            ExcType::F4 => "F4",
            ExcType::E6 => "E6",
            ExcType::E7 => "E7",
            ExcType::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for ExcType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G2" => Ok(ExcType::G2),
            "F4" => Ok(ExcType::F4),
            "E6" => Ok(ExcType::E6),
            "E7" => Ok(ExcType::E7),
            "E8" => Ok(ExcType::E8),
            other => Err(Error::input(format!(
                "unknown group {other:?} (expected one of G2, F4, E6, E7, E8)"
            ))),
        }
    }
}

/// A full root system: every root as an integer coordinate vector over the
/// simple roots, with a reverse index. Root i for i < rank is alpha_{i+1}
/// (Bourbaki label i+1); the remaining roots are sorted by (height, coords),
/// so the ordering is reproducible across runs and platforms.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub etype: ExcType,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub root_index: HashMap<Vec<i64>, usize>,
}

/// Square integer matrix acting on simple-root coordinates (column vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflMatrix(pub Vec<Vec<i64>>);

impl ReflMatrix {
    pub fn identity(rank: usize) -> Self {
        let mut m = vec![vec![0i64; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        ReflMatrix(m)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn mul(&self, rhs: &ReflMatrix) -> ReflMatrix {
        let n = self.rank();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.0[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a * rhs.0[k][j];
                }
            }
        }
        ReflMatrix(out)
    }

    pub fn trace(&self) -> i64 {
        (0..self.rank()).map(|i| self.0[i][i]).sum()
    }

    /// Characteristic polynomial coefficients (ascending, degree rank),
    /// computed by the Faddeev-LeVerrier recurrence in exact i128.
    pub fn char_poly(&self) -> Vec<i128> {
        let n = self.rank();
        // c[n] = 1; M_1 = A; c_{n-k} = -tr(A M_k)/k; M_{k+1} = A(M_k + c_{n-k} I)
        let mut coeffs = vec![0i128; n + 1];
        coeffs[n] = 1;
        let a: Vec<Vec<i128>> = self.0.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut m: Vec<Vec<i128>> = {
            let mut id = vec![vec![0i128; n]; n];
            for (i, row) in id.iter_mut().enumerate() {
                row[i] = 1;
            }
            id
        };
        for k in 1..=n {
            // m = a * m
            let mut next = vec![vec![0i128; n]; n];
            for i in 0..n {
                for l in 0..n {
                    let v = a[i][l];
                    if v == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] += v * m[l][j];
                    }
                }
            }
            m = next;
            let tr: i128 = (0..n).map(|i| m[i][i]).sum();
            assert!(tr % k as i128 == 0, "LeVerrier trace divisibility");
            let c = -tr / k as i128;
            coeffs[n - k] = c;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += c;
            }
        }
        coeffs
    }
}

/// Build the root system by reflection closure of the simple roots.
pub fn build_root_system(etype: ExcType) -> Result<RootSystem> {
    let rank = etype.rank();
    let cartan = etype.cartan();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        seen.insert(v.clone(), ());
        queue.push(v);
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head].clone();
        head += 1;
        for i in 0..rank {
            let w = reflect_simple(&cartan, i, &v);
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), ());
                queue.push(w);
            }
        }
        if queue.len() > 4 * etype.num_roots() {
            return Err(Error::mismatch(format!(
                "reflection closure of {etype} overflowed: {} vectors",
                queue.len()
            )));
        }
    }
    if queue.len() != etype.num_roots() {
        return Err(Error::mismatch(format!(
            "reflection closure of {etype} found {} roots, expected {}",
            queue.len(),
            etype.num_roots()
        )));
    }
    // Deterministic order: simple roots first, the rest by (height, coords).
    let mut rest: Vec<Vec<i64>> = queue
        .iter()
        .filter(|v| !is_simple(v))
        .cloned()
        .collect();
    rest.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let mut roots: Vec<Vec<i64>> = Vec::with_capacity(etype.num_roots());
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        roots.push(v);
    }
    roots.extend(rest);
    let root_index: HashMap<Vec<i64>, usize> =
        roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    Ok(RootSystem { etype, cartan, roots, root_index })
}

fn is_simple(v: &[i64]) -> bool {
    v.iter().filter(|&&c| c != 0).count() == 1 && v.iter().sum::<i64>() == 1
}

/// s_i applied to a coordinate vector: only the i-th coordinate moves.
fn reflect_simple(cartan: &[Vec<i64>], i: usize, v: &[i64]) -> Vec<i64> {
    let pairing: i64 = cartan[i].iter().zip(v).map(|(a, b)| a * b).sum();
    let mut w = v.to_vec();
    w[i] -= pairing;
    w
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.etype.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Gram matrix of the simple roots, up to one global positive scale
    /// (integer entries; invariant under the Weyl action).
    pub fn bilinear_form(&self) -> Vec<Vec<i64>> {
        let d = self.etype.symmetrizer();
        let rank = self.rank();
        let mut b = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                b[i][j] = d[i] * self.cartan[i][j];
            }
        }
        b
    }

    /// Pairing 2(x, y)/(y, y) for coordinate vectors x and root y; exact.
    pub fn coroot_pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let b = self.bilinear_form();
        let form = |u: &[i64], v: &[i64]| -> i64 {
            let mut s = 0i64;
            for (i, bi) in b.iter().enumerate() {
                if u[i] == 0 {
                    continue;
                }
                for (j, bij) in bi.iter().enumerate() {
                    s += u[i] * bij * v[j];
                }
            }
            s
        };
        let num = 2 * form(x, y);
        let den = form(y, y);
        debug_assert!(den > 0 && num % den == 0, "coroot pairing must be integral");
        num / den
    }

    /// The simple reflection s_{i+1} (0-based i) as a permutation of root indices.
    pub fn simple_reflection(&self, i: usize) -> Permutation {
        assert!(i < self.rank());
        let images: Vec<u16> = self
            .roots
            .iter()
            .map(|v| {
                let w = reflect_simple(&self.cartan, i, v);
                self.root_index[&w] as u16
            })
            .collect();
        Permutation::from_images(images)
    }

    /// Reflection in an arbitrary root, as a permutation of root indices.
    pub fn root_reflection(&self, root_idx: usize) -> Permutation {
        let beta = self.roots[root_idx].clone();
        let images: Vec<u16> = self
            .roots
            .iter()
            .map(|v| {
                let p = self.coroot_pairing(v, &beta);
                let w: Vec<i64> = v.iter().zip(&beta).map(|(a, b)| a - p * b).collect();
                self.root_index[&w] as u16
            })
            .collect();
        Permutation::from_images(images)
    }

    /// All simple reflections, in Bourbaki order: the standard generators.
    pub fn simple_reflections(&self) -> Vec<Permutation> {
        (0..self.rank()).map(|i| self.simple_reflection(i)).collect()
    }

    /// The root negation map beta -> -beta as a permutation of indices.
    /// It lies in the Weyl group exactly when -1 does (all types here
    /// except E6).
    pub fn negation_perm(&self) -> Permutation {
        let images: Vec<u16> = self
            .roots
            .iter()
            .map(|v| {
                let w: Vec<i64> = v.iter().map(|c| -c).collect();
                self.root_index[&w] as u16
            })
            .collect();
        Permutation::from_images(images)
    }

    /// The matrix (on simple-root coordinates) of the group element given as
    /// a permutation of root indices: column j is the image of alpha_{j+1}.
    pub fn matrix_of(&self, p: &Permutation) -> ReflMatrix {
        let rank = self.rank();
        let mut m = vec![vec![0i64; rank]; rank];
        for j in 0..rank {
            let img = &self.roots[p.apply(j)];
            for i in 0..rank {
                m[i][j] = img[i];
            }
        }
        ReflMatrix(m)
    }

    /// Count of roots fixed by a permutation (used by sanity suites:
    /// a simple reflection of E6 fixes exactly 40 of the 72 roots).
    pub fn fixed_roots(&self, p: &Permutation) -> usize {
        (0..self.num_roots()).filter(|&i| p.apply(i) == i).count()
    }

    /// Squared length of a root under the (integrally scaled) invariant
    /// form. Two values occur for F4 and G2, one for the E types; the Weyl
    /// orbits of roots are exactly the norm classes.
    pub fn root_norm(&self, idx: usize) -> i64 {
        let b = self.bilinear_form();
        let v = &self.roots[idx];
        let mut s = 0i64;
        for (i, bi) in b.iter().enumerate() {
            if v[i] == 0 {
                continue;
            }
            for (j, bij) in bi.iter().enumerate() {
                s += v[i] * bij * v[j];
            }
        }
        s
    }

    /// The distinct root norms, ascending.
    pub fn distinct_norms(&self) -> Vec<i64> {
        let mut norms: Vec<i64> = (0..self.num_roots()).map(|i| self.root_norm(i)).collect();
        norms.sort_unstable();
        norms.dedup();
        norms
    }

    /// Roots have uniformly-signed coordinates over the simple roots, so the
    /// coordinate sum decides the sign.
    pub fn is_positive(&self, idx: usize) -> bool {
        self.roots[idx].iter().sum::<i64>() > 0
    }
}
