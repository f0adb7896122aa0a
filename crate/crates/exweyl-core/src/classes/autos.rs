//! Outer automorphisms: diagram symmetries realized as root permutations,
//! and central twists built from linear characters.
//!
//! For the types whose Coxeter graph has a nontrivial symmetry tau (E6 flip,
//! F4 long/short duality, G2 swap), there is a linear map L on simple-root
//! coordinates with S_{tau(i)} L = L S_i; by Schur's lemma (the reflection
//! representation is irreducible) L is unique up to scale. L maps every root
//! ray to a root ray -- for F4 and G2 it rescales between the two root
//! lengths, so rays are matched rather than vectors -- and the induced
//! permutation of root indices conjugates s_i to s_{tau(i)}, giving the
//! (possibly outer) automorphism of the Weyl group combinatorially.
//!
//! Diagram symmetries are not the whole outer story. When the center holds
//! an involution z and chi is a linear character with chi(z) = 1, the map
//! w -> w z^chi(w) is an automorphism (multiplicative because z is central,
//! injective because chi(z) = 1). These central twists move classes no
//! inner or diagram map moves: in W(F4) they fuse each reflection class
//! with its negative. ColorSign provides the linear characters through the
//! root action, so the twists need no character table.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;
use crate::perm::Permutation;
use crate::rootsys::{ExcType, RootSystem};
use crate::{Error, Result};

/// A graph symmetry together with the root permutation realizing it.
#[derive(Clone, Debug)]
pub struct DiagramAut {
    /// The node relabeling (0-based simple-root indices).
    pub tau: Vec<usize>,
    /// The induced permutation of all roots.
    pub root_map: Permutation,
}

/// The nontrivial graph symmetry per type, if any.
pub fn graph_symmetry(etype: ExcType) -> Option<Vec<usize>> {
    match etype {
        ExcType::G2 => Some(vec![1, 0]),
        ExcType::F4 => Some(vec![3, 2, 1, 0]),
        ExcType::E6 => Some(vec![5, 1, 4, 3, 2, 0]),
        ExcType::E7 | ExcType::E8 => None,
    }
}

/// Solve for the intertwiner and realize it on roots. Returns None for
/// types without a graph symmetry.
pub fn diagram_automorphism(rs: &RootSystem) -> Result<Option<DiagramAut>> {
    let Some(tau) = graph_symmetry(rs.etype) else {
        return Ok(None);
    };
    let rank = rs.rank();
    let mats: Vec<Vec<Vec<Rational>>> = (0..rank)
        .map(|i| {
            let m = rs.matrix_of(&rs.simple_reflection(i));
            m.0.iter()
                .map(|row| row.iter().map(|&x| Rational::from(BigInt::from(x))).collect())
                .collect()
        })
        .collect();

    // Unknowns: L[r][c] flattened row-major. Equations: for each generator i
    // and each matrix position (a, b),
    //   sum_k S_tau(i)[a][k] L[k][b] - sum_k L[a][k] S_i[k][b] = 0.
    let n_unk = rank * rank;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(rank * n_unk);
    for i in 0..rank {
        let left = &mats[tau[i]];
        let right = &mats[i];
        for a in 0..rank {
            for b in 0..rank {
                let mut row = vec![Rational::zero(); n_unk];
                for k in 0..rank {
                    row[k * rank + b] += &left[a][k];
                    row[a * rank + k] -= &right[k][b];
                }
                rows.push(row);
            }
        }
    }

    let kernel = nullspace(&mut rows, n_unk);
    if kernel.len() != 1 {
        return Err(Error::mismatch(format!(
            "intertwiner space for the {:?} graph symmetry has dimension {}, expected 1",
            rs.etype,
            kernel.len()
        )));
    }
    let l = &kernel[0];

    // Map each root ray through L and match it to a root.
    let mut images = Vec::with_capacity(rs.num_roots());
    for root in &rs.roots {
        let mut img = vec![Rational::zero(); rank];
        for (r, entry) in img.iter_mut().enumerate() {
            for c in 0..rank {
                *entry += &l[r * rank + c] * Rational::from(BigInt::from(root[c]));
            }
        }
        let prim = primitive_direction(&img).ok_or_else(|| {
            Error::mismatch("graph symmetry intertwiner sent a root to zero")
        })?;
        // The intertwiner's global sign ambiguity is harmless: roots come in
        // +- pairs, so the positively-normalized direction is a root exactly
        // when the ray hits the root system at all.
        let idx = rs.index_of(&prim).ok_or_else(|| {
            Error::mismatch("graph symmetry intertwiner does not map root rays to root rays")
        })?;
        images.push(idx as u16);
    }
    let root_map = Permutation::try_from_images(images)
        .map_err(|_| Error::mismatch("root image map is not a bijection"))?;

    // Certify: transporting s_i along the root map must give s_tau(i).
    for i in 0..rank {
        let got = rs.simple_reflection(i).conjugate_by(&root_map);
        if got != rs.simple_reflection(tau[i]) {
            return Err(Error::mismatch(format!(
                "root map conjugates s_{} to the wrong reflection",
                i + 1
            )));
        }
    }
    Ok(Some(DiagramAut { tau, root_map }))
}

/// A linear character evaluated through the root action: the value on w is
/// (-1)^#{selected positive roots sent negative by w}, with the selected
/// set a union of norm classes (hence stable under the group). The
/// inversion-count cocycle n(vw) = n(v) + n(w) mod 2 makes this
/// multiplicative. Selecting one norm gives the character that is -1
/// exactly on the reflections of that length; selecting every root gives
/// the determinant of the reflection representation.
#[derive(Clone, Debug)]
pub struct ColorSign {
    label: String,
    selected_positives: Vec<usize>,
    root_is_positive: Vec<bool>,
}

impl ColorSign {
    /// The character selecting the roots whose norm lies in `norms`.
    pub fn by_norms(rs: &RootSystem, norms: &[i64], label: &str) -> Result<ColorSign> {
        let root_is_positive: Vec<bool> =
            (0..rs.num_roots()).map(|i| rs.is_positive(i)).collect();
        let selected_positives: Vec<usize> = (0..rs.num_roots())
            .filter(|&i| root_is_positive[i] && norms.contains(&rs.root_norm(i)))
            .collect();
        if selected_positives.is_empty() {
            return Err(Error::input(format!(
                "no roots of {:?} have norm in {norms:?}",
                rs.etype
            )));
        }
        let sign = ColorSign {
            label: label.to_string(),
            selected_positives,
            root_is_positive,
        };
        // Wiring check against the standard fact: s_i inverts alpha_i and
        // permutes the remaining positive roots, so the value on s_i is -1
        // exactly when alpha_i is selected.
        for i in 0..rs.rank() {
            let expect = norms.contains(&rs.root_norm(i));
            if sign.is_minus_on(&rs.simple_reflection(i)) != expect {
                return Err(Error::mismatch(format!(
                    "color character misbehaves on s_{}",
                    i + 1
                )));
            }
        }
        Ok(sign)
    }

    /// Every nontrivial linear character of the Weyl group: one per root
    /// norm, plus the determinant when there are two norms. (Linear
    /// characters assign a sign per simple reflection, constant across any
    /// odd bond; for these types that means constant per root length.)
    pub fn all_characters(rs: &RootSystem) -> Result<Vec<ColorSign>> {
        let norms = rs.distinct_norms();
        let mut out = Vec::new();
        match norms.as_slice() {
            [n] => out.push(ColorSign::by_norms(rs, &[*n], "det")?),
            [a, b] => {
                out.push(ColorSign::by_norms(rs, &[*a], "short")?);
                out.push(ColorSign::by_norms(rs, &[*b], "long")?);
                out.push(ColorSign::by_norms(rs, &[*a, *b], "det")?);
            }
            _ => {
                return Err(Error::mismatch(format!(
                    "unexpected norm spectrum {norms:?} for {:?}",
                    rs.etype
                )))
            }
        }
        Ok(out)
    }

    /// True when the character takes the value -1 on p.
    pub fn is_minus_on(&self, p: &Permutation) -> bool {
        let inverted = self
            .selected_positives
            .iter()
            .filter(|&&i| !self.root_is_positive[p.apply(i)])
            .count();
        inverted % 2 == 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Scale a nonzero rational vector to the primitive integer vector on the
/// same ray (positive scaling only, so the direction is preserved).
fn primitive_direction(v: &[Rational]) -> Option<Vec<i64>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut denom_lcm = BigInt::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from(denom_lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(&x.abs());
    }
    let out: Vec<i64> = ints
        .iter()
        .map(|x| {
            let q = x / &g;
            i64::try_from(q).expect("primitive root coordinate fits i64")
        })
        .collect();
    Some(out)
}

/// Kernel basis of the linear system given by `rows` (each row = one
/// homogeneous equation over `n_unk` unknowns), via fraction-exact Gaussian
/// elimination.
fn nullspace(rows: &mut [Vec<Rational>], n_unk: usize) -> Vec<Vec<Rational>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n_unk];
    let mut pivot_rows: Vec<(usize, Vec<Rational>)> = Vec::new();
    for r in 0..rows.len() {
        let mut row = std::mem::take(&mut rows[r]);
        for (col, prow) in &pivot_rows {
            if !row[*col].is_zero() {
                let f = row[*col].clone();
                for (x, p) in row.iter_mut().zip(prow.iter()) {
                    *x -= &f * p;
                }
            }
        }
        if let Some(col) = row.iter().position(|x| !x.is_zero()) {
            let lead = row[col].clone();
            for x in row.iter_mut() {
                *x /= lead.clone();
            }
            // Back-eliminate this column from earlier pivot rows.
            for (_, prow) in pivot_rows.iter_mut() {
                if !prow[col].is_zero() {
                    let f = prow[col].clone();
                    for (x, p) in prow.iter_mut().zip(row.iter()) {
                        *x -= &f * p;
                    }
                }
            }
            pivot_of_col[col] = Some(pivot_rows.len());
            pivot_rows.push((col, row));
        }
    }
    let mut basis = Vec::new();
    for free in 0..n_unk {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rational::zero(); n_unk];
        v[free] = Rational::one();
        for (col, prow) in &pivot_rows {
            v[*col] = -prow[free].clone();
        }
        basis.push(v);
    }
    basis
}
