//! Ordinary character tables by the modular eigenvector method.
//!
//! The centre of the group algebra acts on each irreducible character
//! through its central character, so the class-sum multiplication matrices
//! have the vectors omega_chi(k) = |C_k| chi(g_k) / chi(1) as simultaneous
//! eigenvectors. We compute those eigenvectors over a prime field F_p with
//! p = 1 mod exponent(G) and p > 2 sqrt(|G|), read off the degrees, and
//! lift each value back to the cyclotomic integers Z[zeta_e] through the
//! discrete Fourier inversion of the eigenvalue multiplicities of rho(g).
//! The lift is unique because every multiplicity lies in [0, deg] and
//! 2 deg < p.
//!
//! Everything downstream of the class partition is exact: the returned
//! table satisfies row and column orthogonality over Z[zeta_e], the degree
//! squares sum to |G|, and reducing the lifted values back mod p reproduces
//! the eigenvector data bit for bit. All three checks run before the table
//! is handed out.
//!
//! Class columns are ordered by (element order, class size, lexicographic
//! minimum of the class as an image row), which depends only on the group
//! itself, not on the generating set or the enumeration order. Rows are
//! ordered by (degree, canonical coordinates of the value vector).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::classes::enumerate::partition_classes;
use crate::exact::arith::lcm64;
use crate::exact::{IntCyc, PrimeField};
use crate::perm::{inv_row, mul_rows, seeded_rng, PermGroup, Permutation};
use crate::{Error, Result};

/// Exact character table of a finite permutation group.
pub struct CharacterTable {
    order: u128,
    conductor: u32,
    prime: u64,
    class_orders: Vec<u64>,
    class_sizes: Vec<u64>,
    reps: Vec<Permutation>,
    inverse_cols: Vec<usize>,
    identity_col: usize,
    /// values[row][col], rows sorted by (degree, coordinate key).
    values: Vec<Vec<IntCyc>>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn num_chars(&self) -> usize {
        self.values.len()
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Conductor e of the value field Q(zeta_e): the group exponent.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The prime the modular eigenvector phase ran over.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn class_order(&self, col: usize) -> u64 {
        self.class_orders[col]
    }

    pub fn class_size(&self, col: usize) -> u64 {
        self.class_sizes[col]
    }

    /// Canonical representative: the lexicographically least class member.
    pub fn representative(&self, col: usize) -> &Permutation {
        &self.reps[col]
    }

    /// Column holding the inverses of column `col`.
    pub fn inverse_column(&self, col: usize) -> usize {
        self.inverse_cols[col]
    }

    pub fn identity_column(&self) -> usize {
        self.identity_col
    }

    pub fn value(&self, row: usize, col: usize) -> &IntCyc {
        &self.values[row][col]
    }

    pub fn row(&self, row: usize) -> &[IntCyc] {
        &self.values[row]
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.values[row][self.identity_col]
            .as_integer()
            .expect("degree column is a rational integer") as u64
    }

    /// Re-checks the orthogonality relations and the degree sum. Build
    /// already ran this; the public entry point exists so downstream
    /// consumers can re-certify a table they were handed.
    pub fn verify(&self) -> Result<()> {
        let n = self.num_classes();
        if self.num_chars() != n {
            return Err(Error::mismatch(format!(
                "{} characters against {} classes",
                self.num_chars(),
                n
            )));
        }
        let order = i128::try_from(self.order)
            .map_err(|_| Error::budget("group order exceeds i128 verification range"))?;

        let sq: u128 = (0..n).map(|r| (self.degree(r) as u128).pow(2)).sum();
        if sq != self.order {
            return Err(Error::mismatch(format!(
                "degree squares sum to {sq}, group order is {}",
                self.order
            )));
        }

        // Row orthogonality: sum_k |C_k| chi_r(k) conj(chi_s(k)) = delta |G|.
        for r in 0..n {
            for s in r..n {
                let mut acc = IntCyc::zero(self.conductor);
                for k in 0..n {
                    let term = self.values[r][k].mul(&self.values[s][k].conjugate());
                    acc.add_scaled(&term, self.class_sizes[k] as i128);
                }
                let want = if r == s { order } else { 0 };
                if !acc.equals_integer(want) {
                    return Err(Error::mismatch(format!(
                        "row orthogonality failed for rows {r}, {s}"
                    )));
                }
            }
        }

        // Column orthogonality: sum_r chi_r(j) conj(chi_r(k)) = delta |C(g_j)|.
        for j in 0..n {
            for k in j..n {
                let mut acc = IntCyc::zero(self.conductor);
                for r in 0..n {
                    let term = self.values[r][j].mul(&self.values[r][k].conjugate());
                    acc.add_scaled(&term, 1);
                }
                let want = if j == k {
                    order / self.class_sizes[j] as i128
                } else {
                    0
                };
                if !acc.equals_integer(want) {
                    return Err(Error::mismatch(format!(
                        "column orthogonality failed for columns {j}, {k}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The modular prime a table for a group of this order and exponent runs
/// over: the smallest p = 1 mod exponent with p > 2 sqrt(order) and p not
/// dividing the order. Deterministic, so it can be recorded in output
/// artifacts without building the table.
pub fn table_prime(order: u128, exponent: u64) -> Result<u64> {
    let mut lower = 2 * isqrt_u128(order) as u64 + 1;
    loop {
        let f = PrimeField::find_prime(exponent, 1, lower.max(3))?;
        if order % (f.p as u128) != 0 {
            return Ok(f.p);
        }
        lower = f.p + 1;
    }
}

pub fn character_table(g: &PermGroup, seed: u64) -> Result<CharacterTable> {
    Ok(character_table_with_marks(g, &[], seed)?.0)
}

/// Builds the table and resolves the class column of each marked element,
/// so callers can evaluate characters at specific group elements without
/// keeping the full element enumeration alive.
pub fn character_table_with_marks(
    g: &PermGroup,
    marks: &[Permutation],
    seed: u64,
) -> Result<(CharacterTable, Vec<usize>)> {
    let part = partition_classes(g)?;
    let (table, mark_cols, _) = table_from_partition(&part, g.order(), marks, seed)?;
    Ok((table, mark_cols))
}

/// A character table bundled with the element enumeration it was built
/// from, so characters can be evaluated at arbitrary group elements, not
/// only at the canonical class representatives.
///
/// Cloning is cheap; the payload is shared.
#[derive(Clone)]
pub struct EvalTable {
    inner: std::sync::Arc<EvalInner>,
}

struct EvalInner {
    part: crate::classes::enumerate::Partition,
    /// Table column of each store id.
    col_of_id: Vec<u16>,
    table: CharacterTable,
}

impl EvalTable {
    /// Builds the table of `g` and keeps the full element enumeration
    /// alive for later lookups. Memory scales with |g|, so callers should
    /// check the group order against their budget first.
    pub fn build(g: &PermGroup, seed: u64) -> Result<EvalTable> {
        let part = partition_classes(g)?;
        let (table, _, col_of_id) = table_from_partition(&part, g.order(), &[], seed)?;
        Ok(EvalTable {
            inner: std::sync::Arc::new(EvalInner { part, col_of_id, table }),
        })
    }

    pub fn table(&self) -> &CharacterTable {
        &self.inner.table
    }

    /// Class column of an arbitrary element of the tabulated group.
    pub fn column_of(&self, p: &Permutation) -> Result<usize> {
        let id = self
            .inner
            .part
            .store
            .index_of(p)
            .ok_or_else(|| Error::input("element is not in the tabulated group"))?;
        Ok(self.inner.col_of_id[id as usize] as usize)
    }

    /// Character `row` evaluated at an arbitrary group element.
    pub fn value_at(&self, row: usize, p: &Permutation) -> Result<IntCyc> {
        Ok(self.inner.table.value(row, self.column_of(p)?).clone())
    }
}

/// Same construction starting from an existing class partition, for callers
/// that also need the partition for other counting.
pub(crate) fn table_from_partition(
    part: &crate::classes::enumerate::Partition,
    order: u128,
    marks: &[Permutation],
    seed: u64,
) -> Result<(CharacterTable, Vec<usize>, Vec<u16>)> {
    let store = &part.store;
    let n = store.len();
    let degree = store.degree();
    let nc = part.sizes.len();
    if order != n as u128 {
        return Err(Error::mismatch(format!(
            "partition holds {n} elements but the claimed group order is {order}"
        )));
    }

    // Lexicographically least member of each class: a representative that
    // depends only on the group, not on how it was generated.
    let mut rep_id: Vec<u32> = part.rep_ids.clone();
    for id in 0..n as u32 {
        let c = part.class_of_id[id as usize] as usize;
        if store.row(id) < store.row(rep_id[c]) {
            rep_id[c] = id;
        }
    }

    // Canonical column order.
    let rep_order: Vec<u64> = rep_id.iter().map(|&id| store.perm(id).order()).collect();
    let mut cols: Vec<usize> = (0..nc).collect();
    cols.sort_by(|&a, &b| {
        (rep_order[a], part.sizes[a], store.row(rep_id[a]))
            .cmp(&(rep_order[b], part.sizes[b], store.row(rep_id[b])))
    });
    let mut new_col = vec![0usize; nc];
    for (new, &old) in cols.iter().enumerate() {
        new_col[old] = new;
    }

    let class_sizes: Vec<u64> = cols.iter().map(|&old| part.sizes[old]).collect();
    let class_orders: Vec<u64> = cols.iter().map(|&old| rep_order[old]).collect();
    let rep_ids: Vec<u32> = cols.iter().map(|&old| rep_id[old]).collect();
    let reps: Vec<Permutation> = rep_ids.iter().map(|&id| store.perm(id)).collect();

    let mut col_of_id: Vec<u16> = vec![0; n];
    let mut ids_by_col: Vec<Vec<u32>> = vec![Vec::new(); nc];
    for id in 0..n as u32 {
        let col = new_col[part.class_of_id[id as usize] as usize];
        col_of_id[id as usize] = col as u16;
        ids_by_col[col].push(id);
    }

    let col_of_row = |row: &[u8]| -> Result<usize> {
        let id = store
            .index_of_row(row)
            .ok_or_else(|| Error::mismatch("product left the element store"))?;
        Ok(col_of_id[id as usize] as usize)
    };

    let identity_row: Vec<u8> = (0..degree as u8).collect();
    let identity_col = col_of_row(&identity_row)?;
    if class_orders[identity_col] != 1 {
        return Err(Error::mismatch("identity class has order != 1"));
    }

    let mut inverse_cols = vec![0usize; nc];
    let mut scratch = vec![0u8; degree];
    for c in 0..nc {
        inv_row(store.row(rep_ids[c]), &mut scratch);
        inverse_cols[c] = col_of_row(&scratch)?;
    }

    let mark_cols: Vec<usize> = marks
        .iter()
        .map(|p| {
            store
                .index_of(p)
                .map(|id| col_of_id[id as usize] as usize)
                .ok_or_else(|| Error::input("marked element is not in the group"))
        })
        .collect::<Result<_>>()?;

    let conductor_u64 = class_orders.iter().fold(1u64, |acc, &m| lcm64(acc, m));
    let conductor = u32::try_from(conductor_u64)
        .map_err(|_| Error::budget("group exponent exceeds u32"))?;
    let f = PrimeField::new(table_prime(order, conductor_u64)?);
    let order_mod_p = f.from_i128((order % f.p as u128) as i128);

    // Simultaneous eigenvectors of the class-sum matrices.
    let mut rng = seeded_rng(seed ^ 0xd17c_0a5e);
    let mut spaces = vec![Subspace::full(nc)];
    let mut size_order: Vec<usize> = (0..nc).filter(|&c| c != identity_col).collect();
    size_order.sort_by_key(|&c| (class_sizes[c], c));
    let mut inv_scratch = vec![0u8; degree];
    let mut prod_scratch = vec![0u8; degree];
    for _pass in 0..3 {
        if spaces.iter().all(|v| v.dim() == 1) {
            break;
        }
        for &i in &size_order {
            if spaces.iter().all(|v| v.dim() == 1) {
                break;
            }
            // Class-sum action: M[j][k] = #{x in C_i : x^-1 z_k in C_j},
            // column k filled by one sweep over class i.
            let mut m = vec![vec![0u64; nc]; nc];
            for &x_id in &ids_by_col[i] {
                inv_row(store.row(x_id), &mut inv_scratch);
                for (k, &z_id) in rep_ids.iter().enumerate() {
                    mul_rows(&inv_scratch, store.row(z_id), &mut prod_scratch);
                    let j = col_of_row(&prod_scratch)?;
                    m[j][k] += 1;
                }
            }
            for row in &mut m {
                for v in row.iter_mut() {
                    *v %= f.p;
                }
            }

            let mut next = Vec::with_capacity(spaces.len());
            for v in spaces.drain(..) {
                if v.dim() == 1 {
                    next.push(v);
                } else {
                    next.extend(split_subspace(&f, v, &m, &mut rng)?);
                }
            }
            spaces = next;
        }
    }
    if spaces.len() != nc || spaces.iter().any(|v| v.dim() != 1) {
        return Err(Error::mismatch(
            "class-sum matrices failed to separate the central characters",
        ));
    }

    // Normalize so the identity coordinate is 1: the vectors are then
    // omega(k) = |C_k| chi(g_k) / chi(1) mod p.
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(nc);
    for v in &spaces {
        let w = &v.basis[0];
        if w[identity_col] == 0 {
            return Err(Error::mismatch("central character vanishes at the identity"));
        }
        let scale = f.inv(w[identity_col]);
        omegas.push(w.iter().map(|&x| f.mul(x, scale)).collect());
    }

    // Degrees from sum_k omega(k) omega(k-bar) / |C_k| = |G| / d^2.
    let inv_sizes: Vec<u64> = class_sizes
        .iter()
        .map(|&s| f.inv(f.from_i128(s as i128)))
        .collect();
    let mut degrees = Vec::with_capacity(nc);
    for w in &omegas {
        let mut s = 0u64;
        for k in 0..nc {
            s = f.add(s, f.mul(f.mul(w[k], w[inverse_cols[k]]), inv_sizes[k]));
        }
        if s == 0 {
            return Err(Error::mismatch("degenerate norm sum for a character"));
        }
        let d_sq = f.mul(order_mod_p, f.inv(s));
        let root = f
            .sqrt(d_sq)
            .ok_or_else(|| Error::mismatch("degree square is not a square mod p"))?;
        let d = root.min(f.p - root);
        if d == 0 {
            return Err(Error::mismatch("zero character degree"));
        }
        degrees.push(d);
    }
    let sq_sum: u128 = degrees.iter().map(|&d| (d as u128).pow(2)).sum();
    if sq_sum != order {
        return Err(Error::mismatch(format!(
            "degree squares sum to {sq_sum}, group order is {order}"
        )));
    }

    // chi(g_k) mod p, then the exact lift through eigenvalue multiplicities.
    let chi_p: Vec<Vec<u64>> = omegas
        .iter()
        .zip(&degrees)
        .map(|(w, &d)| {
            (0..nc)
                .map(|k| f.mul(f.mul(d, w[k]), inv_sizes[k]))
                .collect()
        })
        .collect();

    let z = f.root_of_unity(conductor_u64)?;
    // Power-map columns: power_cols[k][u] = column of rep_k^u.
    let mut power_cols: Vec<Vec<usize>> = Vec::with_capacity(nc);
    for k in 0..nc {
        let m = class_orders[k] as usize;
        let mut cols_k = Vec::with_capacity(m);
        let mut pw = identity_row.clone();
        for _ in 0..m {
            cols_k.push(col_of_row(&pw)?);
            mul_rows(&pw.clone(), store.row(rep_ids[k]), &mut pw);
        }
        power_cols.push(cols_k);
    }

    let mut values: Vec<Vec<IntCyc>> = Vec::with_capacity(nc);
    for (r, row_p) in chi_p.iter().enumerate() {
        let d = degrees[r];
        let mut row = Vec::with_capacity(nc);
        for k in 0..nc {
            let m = class_orders[k];
            if conductor_u64 % m != 0 {
                return Err(Error::mismatch("class order does not divide the exponent"));
            }
            let zk = f.pow(z, conductor_u64 / m);
            let mut zk_pow = vec![1u64; m as usize];
            for j in 1..m as usize {
                zk_pow[j] = f.mul(zk_pow[j - 1], zk);
            }
            let inv_m = f.inv(f.from_i64(m as i64));
            let mut value = IntCyc::zero(conductor);
            let mut total = 0u64;
            for t in 0..m {
                let mut s = 0u64;
                for u in 0..m {
                    let idx = ((t * u) % m) as usize;
                    let zneg = zk_pow[(m as usize - idx) % m as usize];
                    s = f.add(s, f.mul(row_p[power_cols[k][u as usize]], zneg));
                }
                let mult = f.mul(inv_m, s);
                if mult > d {
                    return Err(Error::mismatch(
                        "eigenvalue multiplicity exceeds the degree",
                    ));
                }
                total += mult;
                value.add_term((t * (conductor_u64 / m)) as u32 % conductor, mult as i128);
            }
            if total != d {
                return Err(Error::mismatch(
                    "eigenvalue multiplicities do not sum to the degree",
                ));
            }
            row.push(value);
        }
        values.push(row);
    }

    // Lift check: reducing back mod p must reproduce the eigenvector data.
    let phi = values
        .iter()
        .flat_map(|row| row.iter())
        .map(|v| v.coordinates().len())
        .max()
        .unwrap_or(1);
    let mut z_pow = vec![1u64; phi];
    for j in 1..phi {
        z_pow[j] = f.mul(z_pow[j - 1], z);
    }
    for (r, row) in values.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let mut acc = 0u64;
            for (j, &c) in v.coordinates().iter().enumerate() {
                acc = f.add(acc, f.mul(f.from_i128(c), z_pow[j]));
            }
            if acc != chi_p[r][k] {
                return Err(Error::mismatch(format!(
                    "lifted value reduces wrongly at row {r}, column {k}"
                )));
            }
        }
    }

    // Canonical row order: degree, then coordinate vectors.
    let mut keyed: Vec<(u64, Vec<Vec<i128>>, Vec<IntCyc>)> = values
        .into_iter()
        .zip(&degrees)
        .map(|(row, &d)| {
            let key = row.iter().map(|v| v.coordinates()).collect();
            (d, key, row)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let table = CharacterTable {
        order,
        conductor,
        prime: f.p,
        class_orders,
        class_sizes,
        reps,
        inverse_cols,
        identity_col,
        values: keyed.into_iter().map(|(_, _, row)| row).collect(),
    };
    table.verify()?;
    Ok((table, mark_cols, col_of_id))
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// Subspace of F_p^n held as a reduced row echelon basis.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn full(n: usize) -> Self {
        let mut basis = vec![vec![0u64; n]; n];
        for (i, row) in basis.iter_mut().enumerate() {
            row[i] = 1;
        }
        Subspace {
            basis,
            pivots: (0..n).collect(),
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn from_vectors(f: &PrimeField, mut vecs: Vec<Vec<u64>>) -> Self {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut w in vecs.drain(..) {
            for (row, &p) in basis.iter().zip(&pivots) {
                let c = w[p];
                if c != 0 {
                    for (wi, ri) in w.iter_mut().zip(row) {
                        *wi = f.sub(*wi, f.mul(c, *ri));
                    }
                }
            }
            if let Some(p) = w.iter().position(|&x| x != 0) {
                let inv = f.inv(w[p]);
                for wi in w.iter_mut() {
                    *wi = f.mul(*wi, inv);
                }
                // Back-eliminate to keep the basis fully reduced.
                for (row, &q) in basis.iter_mut().zip(&pivots) {
                    let c = row[p];
                    if c != 0 {
                        for (ri, wi) in row.iter_mut().zip(&w) {
                            *ri = f.sub(*ri, f.mul(c, *wi));
                        }
                    }
                    debug_assert_eq!(row[q], 1);
                }
                basis.push(w);
                pivots.push(p);
            }
        }
        // Keep pivot order sorted for deterministic coordinates.
        let mut idx: Vec<usize> = (0..basis.len()).collect();
        idx.sort_by_key(|&i| pivots[i]);
        let basis = idx.iter().map(|&i| basis[i].clone()).collect();
        let pivots = idx.iter().map(|&i| pivots[i]).collect();
        Subspace { basis, pivots }
    }

    /// Matrix of the ambient linear map on this subspace; errors if the
    /// subspace is not invariant.
    fn restrict(&self, f: &PrimeField, m: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let dim = self.dim();
        let mut b = vec![vec![0u64; dim]; dim];
        for c in 0..dim {
            let mut w = mat_vec(f, m, &self.basis[c]);
            for r in 0..dim {
                let coef = w[self.pivots[r]];
                if coef != 0 {
                    for (wi, bi) in w.iter_mut().zip(&self.basis[r]) {
                        *wi = f.sub(*wi, f.mul(coef, *bi));
                    }
                }
                b[r][c] = coef;
            }
            if w.iter().any(|&x| x != 0) {
                return Err(Error::mismatch("class-sum matrix left the subspace"));
            }
        }
        Ok(b)
    }
}

fn mat_vec(f: &PrimeField, m: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            let mut acc = 0u64;
            for (&a, &b) in row.iter().zip(x) {
                acc = f.add(acc, f.mul(a, b));
            }
            acc
        })
        .collect()
}

/// Splits an invariant subspace into the eigenspaces of the matrix. The
/// minimal polynomial of a random vector finds the eigenvalues; if the
/// kernels do not exhaust the space the vector missed a component, so we
/// redraw. A space the matrix cannot split is returned unchanged.
fn split_subspace(
    f: &PrimeField,
    v: Subspace,
    m: &[Vec<u64>],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Subspace>> {
    let b = v.restrict(f, m)?;
    let dim = v.dim();
    for _attempt in 0..8 {
        let mut v0: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..f.p)).collect();
        if v0.iter().all(|&x| x == 0) {
            v0[0] = 1;
        }
        let minpoly = krylov_min_poly(f, &b, &v0)?;
        if poly_deg(&minpoly) == 1 {
            // Single eigenvalue seen. If the whole space is that
            // eigenspace the matrix cannot split it at all.
            let lambda = f.neg(minpoly[0]);
            let kernel = kernel_basis(f, &shifted(f, &b, lambda));
            if kernel.len() == dim {
                return Ok(vec![v]);
            }
            continue;
        }
        let roots = roots_of_split_squarefree(f, &minpoly, rng)?;
        let mut pieces: Vec<Subspace> = Vec::with_capacity(roots.len());
        let mut covered = 0usize;
        for &lambda in &roots {
            let kernel = kernel_basis(f, &shifted(f, &b, lambda));
            covered += kernel.len();
            let ambient: Vec<Vec<u64>> = kernel
                .iter()
                .map(|coords| {
                    let mut w = vec![0u64; v.basis[0].len()];
                    for (c, row) in coords.iter().zip(&v.basis) {
                        if *c != 0 {
                            for (wi, ri) in w.iter_mut().zip(row) {
                                *wi = f.add(*wi, f.mul(*c, *ri));
                            }
                        }
                    }
                    w
                })
                .collect();
            let piece = Subspace::from_vectors(f, ambient);
            if piece.dim() != kernel.len() {
                return Err(Error::mismatch("eigenspace lost rank in the ambient space"));
            }
            pieces.push(piece);
        }
        if covered == dim {
            return Ok(pieces);
        }
        // A component was missed; redraw the probe vector.
    }
    // Leave the space for another class-sum matrix or another pass.
    Ok(vec![v])
}

fn shifted(f: &PrimeField, b: &[Vec<u64>], lambda: u64) -> Vec<Vec<u64>> {
    let mut out = b.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = f.sub(row[i], lambda);
    }
    out
}

/// Null space basis of a square matrix over F_p.
fn kernel_basis(f: &PrimeField, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for c in 0..n {
        let Some(r) = (rank..n).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, r);
        let inv = f.inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let prow = a[rank].clone();
        for (r2, row) in a.iter_mut().enumerate() {
            if r2 != rank && row[c] != 0 {
                let s = row[c];
                for (x, &p) in row.iter_mut().zip(&prow) {
                    *x = f.sub(*x, f.mul(s, p));
                }
            }
        }
        pivot_col_of_row.push(c);
        rank += 1;
    }
    let _ = rank;
    let mut is_pivot = vec![false; n];
    for &c in &pivot_col_of_row {
        is_pivot[c] = true;
    }
    let mut basis = Vec::with_capacity(n - pivot_col_of_row.len());
    for c in 0..n {
        if is_pivot[c] {
            continue;
        }
        let mut v = vec![0u64; n];
        v[c] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = f.neg(a[r][c]);
        }
        basis.push(v);
    }
    basis
}

fn poly_deg(p: &[u64]) -> usize {
    p.len().saturating_sub(1)
}

/// Minimal polynomial of the vector under the matrix, by tracking the
/// first linear dependence in the Krylov sequence.
fn krylov_min_poly(f: &PrimeField, b: &[Vec<u64>], v0: &[u64]) -> Result<Vec<u64>> {
    let dim = v0.len();
    // (reduced vector, combination polynomial, pivot)
    let mut rows: Vec<(Vec<u64>, Vec<u64>, usize)> = Vec::new();
    let mut krylov = v0.to_vec();
    for t in 0..=dim {
        let mut w = krylov.clone();
        let mut combo = vec![0u64; t + 1];
        combo[t] = 1;
        for (vec, poly, pivot) in &rows {
            let c = w[*pivot];
            if c != 0 {
                for (wi, ri) in w.iter_mut().zip(vec) {
                    *wi = f.sub(*wi, f.mul(c, *ri));
                }
                for (j, &pj) in poly.iter().enumerate() {
                    combo[j] = f.sub(combo[j], f.mul(c, pj));
                }
            }
        }
        if let Some(p) = w.iter().position(|&x| x != 0) {
            let inv = f.inv(w[p]);
            for wi in w.iter_mut() {
                *wi = f.mul(*wi, inv);
            }
            for ci in combo.iter_mut() {
                *ci = f.mul(*ci, inv);
            }
            rows.push((w, combo, p));
            krylov = mat_vec(f, b, &krylov);
        } else {
            // combo is monic of degree t by construction.
            return Ok(combo);
        }
    }
    Err(Error::mismatch("Krylov sequence failed to close"))
}

/// All roots of a squarefree polynomial that splits into linear factors
/// over F_p. Verifies the splitting via gcd with x^p - x, then separates
/// the roots by random gcd splitting.
fn roots_of_split_squarefree(
    f: &PrimeField,
    g: &[u64],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u64>> {
    let g = poly_monic(f, g.to_vec())?;
    // x^p mod g, minus x: shares exactly the linear factors of g.
    let xp = poly_powmod(f, &[0, 1], f.p, &g);
    let mut xp_minus_x = xp;
    if xp_minus_x.len() < 2 {
        xp_minus_x.resize(2, 0);
    }
    xp_minus_x[1] = f.sub(xp_minus_x[1], 1);
    let common = poly_gcd(f, xp_minus_x, g.clone())?;
    if common != g {
        return Err(Error::mismatch(
            "class-sum eigenvalue polynomial does not split over F_p",
        ));
    }

    let mut roots = Vec::with_capacity(poly_deg(&g));
    let mut stack = vec![g];
    let mut guard = 0usize;
    while let Some(h) = stack.pop() {
        match poly_deg(&h) {
            0 => return Err(Error::mismatch("unit factor while splitting roots")),
            1 => roots.push(f.neg(h[0])),
            _ => loop {
                guard += 1;
                if guard > 10_000 {
                    return Err(Error::budget("root splitting failed to converge"));
                }
                let delta = rng.gen_range(0..f.p);
                let mut t = poly_powmod(f, &[delta, 1], (f.p - 1) / 2, &h);
                if t.is_empty() {
                    t = vec![0];
                }
                t[0] = f.sub(t[0], 1);
                let d = poly_gcd(f, t, h.clone())?;
                let dd = poly_deg(&d);
                if dd > 0 && dd < poly_deg(&h) {
                    let (q, r) = poly_divrem(f, &h, &d)?;
                    if !r.is_empty() {
                        return Err(Error::mismatch("gcd does not divide its argument"));
                    }
                    stack.push(d);
                    stack.push(q);
                    break;
                }
            },
        }
    }
    roots.sort_unstable();
    Ok(roots)
}

// Dense little-endian polynomials over F_p; no trailing zeros, empty = 0.

fn poly_trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_monic(f: &PrimeField, p: Vec<u64>) -> Result<Vec<u64>> {
    let p = poly_trim(p);
    let Some(&lead) = p.last() else {
        return Err(Error::input("monic normalization of the zero polynomial"));
    };
    if lead == 1 {
        return Ok(p);
    }
    let inv = f.inv(lead);
    Ok(p.into_iter().map(|c| f.mul(c, inv)).collect())
}

fn poly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    poly_trim(out)
}

fn poly_divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    let b = poly_trim(b.to_vec());
    let Some(&lead) = b.last() else {
        return Err(Error::input("polynomial division by zero"));
    };
    let binv = f.inv(lead);
    let mut r = poly_trim(a.to_vec());
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = f.mul(*r.last().unwrap(), binv);
        let d = r.len() - b.len();
        q[d] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[d + i] = f.sub(r[d + i], f.mul(c, bi));
        }
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    Ok((poly_trim(q), r))
}

fn poly_gcd(f: &PrimeField, a: Vec<u64>, b: Vec<u64>) -> Result<Vec<u64>> {
    let mut a = poly_trim(a);
    let mut b = poly_trim(b);
    while !b.is_empty() {
        let (_, r) = poly_divrem(f, &a, &b)?;
        a = b;
        b = r;
    }
    poly_monic(f, a)
}

fn poly_powmod(f: &PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let reduce = |p: &[u64]| -> Vec<u64> {
        poly_divrem(f, p, m).expect("modulus is nonzero").1
    };
    let mut acc = reduce(&[1]);
    let mut base = reduce(base);
    while e > 0 {
        if e & 1 == 1 {
            acc = reduce(&poly_mul(f, &acc, &base));
        }
        base = reduce(&poly_mul(f, &base, &base));
        e >>= 1;
    }
    acc
}
