//! Conjugation modules over a group class, their braidings, and graded
//! dimensions of the algebras they generate.
//!
//! A class with representative s and a character of its centralizer give a
//! module with basis indexed by coset representatives g_i (t_i = g_i s
//! g_i^-1 runs over the class) times a character space. The braiding sends
//! e_a (x) e_b to chi(gamma) e_b' (x) e_a, where the support t_a of the
//! first factor acts on the second: t_a g_b = g_b' gamma with gamma in the
//! centralizer. Every braiding built here is therefore monomial: one root
//! of unity per basis pair. That shape is what makes the graded-dimension
//! computation exact and cheap: symmetrizers are sums of monomial
//! operators, assembled by composing permutations and adding phase
//! exponents, and only the final rank needs field arithmetic.
//!
//! Two scopes are supported, and the pairing of the two covers every
//! quantitative claim the verdict engine needs at desk scale:
//!   - any central class with any irreducible character: the action is a
//!     scalar by Schur's lemma, so no representation matrices are needed;
//!   - any class with a degree-one character, where chi itself is the
//!     action.
//! A degree >= 2 character on a non-central class would require explicit
//! representation matrices, which the table builder deliberately does not
//! produce; such input is rejected as out of scope rather than
//! approximated.

use std::collections::{BTreeMap, HashMap};

use crate::chartab::EvalTable;
use crate::classes::ClassData;
use crate::exact::arith::lcm64;
use crate::exact::{Cyclotomic, IntCyc};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Cost caps for module construction and symmetrizer ranks.
pub struct BraidBudget {
    /// Largest centralizer a module may be built over.
    pub max_centralizer_order: u128,
    /// Largest symmetrizer matrix dimension d^k the rank pass will touch.
    pub max_matrix_dim: usize,
}

impl Default for BraidBudget {
    fn default() -> Self {
        BraidBudget { max_centralizer_order: 100_000, max_matrix_dim: 1024 }
    }
}

enum ModuleKind {
    /// Central class, character of any degree: the representative acts by
    /// the scalar zeta^q_exp, and that is all the braiding ever evaluates.
    CentralScalar { q_exp: u32 },
    /// Degree-one character, evaluated at arbitrary centralizer elements
    /// through the bundled table.
    Linear { table: EvalTable, row: usize },
}

/// A braided module attached to (class, character).
pub struct YdModule {
    pub class_index: usize,
    /// Class representative s.
    pub rep: Permutation,
    /// Coset representatives g_i, g_0 = identity.
    pub cosets: Vec<Permutation>,
    /// Supports t_i = g_i s g_i^-1, pairwise distinct, exhausting the class.
    pub supports: Vec<Permutation>,
    pub char_degree: u64,
    /// Phases live in Z[zeta_conductor].
    pub conductor: u32,
    kind: ModuleKind,
    support_index: HashMap<Vec<u16>, usize>,
}

impl YdModule {
    /// Module dimension: number of cosets times the character degree.
    pub fn dim(&self) -> usize {
        self.cosets.len() * self.char_degree as usize
    }

    /// Support of basis vector `a`: the class element its coset carries.
    fn support_of(&self, a: usize) -> &Permutation {
        match self.kind {
            ModuleKind::CentralScalar { .. } => &self.rep,
            ModuleKind::Linear { .. } => &self.supports[a],
        }
    }

    /// Action of a support element h on basis vector `b`: the target
    /// index and the phase exponent (of zeta_conductor).
    fn act_on(&self, h: &Permutation, b: usize) -> Result<(usize, u32)> {
        match &self.kind {
            ModuleKind::CentralScalar { q_exp } => {
                if h.is_identity() {
                    Ok((b, 0))
                } else if h == &self.rep {
                    Ok((b, *q_exp))
                } else {
                    Err(Error::scope(
                        "a non-central element acts on a higher-degree central module: \
                         that action is not a scalar and needs representation matrices",
                    ))
                }
            }
            ModuleKind::Linear { table, row } => {
                let t2 = conj(h, &self.supports[b]);
                let b2 = *self
                    .support_index
                    .get(t2.images())
                    .ok_or_else(|| Error::mismatch("conjugation left the class orbit"))?;
                let gamma = self.cosets[b2].inverse().mul(h).mul(&self.cosets[b]);
                let value = table.value_at(*row, &gamma)?;
                let exp = root_exponent(&value, self.conductor).ok_or_else(|| {
                    Error::mismatch("degree-one character value is not a root of unity")
                })?;
                Ok((b2, exp))
            }
        }
    }
}

/// The word h x h^-1.
fn conj(h: &Permutation, x: &Permutation) -> Permutation {
    h.mul(x).mul(&h.inverse())
}

/// Exponent k with v = zeta_e^k, if v is such a root.
fn root_exponent(v: &IntCyc, e: u32) -> Option<u32> {
    scaled_root_exponent(v, 1, e)
}

/// Exponent k with v = scale * zeta_e^k, if any.
fn scaled_root_exponent(v: &IntCyc, scale: u64, e: u32) -> Option<u32> {
    (0..e).find(|&k| {
        let mut diff = v.clone();
        diff.add_scaled(&IntCyc::root(e, k as i64), -(scale as i128));
        diff.is_zero()
    })
}

/// Builds the module for one class and one character row of `ct`.
///
/// `ct` must tabulate the centralizer of the class representative: the
/// whole group for a central class, the output of
/// [`ClassData::centralizer`] otherwise. Row indices refer to that table's
/// canonical row order.
pub fn build_yd_module(
    cd: &ClassData,
    ct: &EvalTable,
    class_index: usize,
    char_row: usize,
) -> Result<YdModule> {
    if class_index >= cd.num_classes() {
        return Err(Error::input("class index out of range"));
    }
    let cls = cd.class(class_index);
    let s = cls.representative.clone();
    if char_row >= ct.table().num_chars() {
        return Err(Error::input("character row out of range"));
    }
    let deg = ct.table().degree(char_row);
    let e = ct.table().conductor();

    if cls.size == 1 {
        if ct.table().order() != cd.group.order() {
            return Err(Error::mismatch(format!(
                "a central class needs the full group table: got order {}, group has {}",
                ct.table().order(),
                cd.group.order()
            )));
        }
        let chi_s = ct.value_at(char_row, &s)?;
        let q_exp = scaled_root_exponent(&chi_s, deg, e).ok_or_else(|| {
            Error::mismatch("central value is not the degree times a root of unity")
        })?;
        let kind = if deg == 1 {
            ModuleKind::Linear { table: ct.clone(), row: char_row }
        } else {
            ModuleKind::CentralScalar { q_exp }
        };
        let mut support_index = HashMap::new();
        support_index.insert(s.images().to_vec(), 0);
        return Ok(YdModule {
            class_index,
            rep: s.clone(),
            cosets: vec![Permutation::identity(s.degree())],
            supports: vec![s],
            char_degree: deg,
            conductor: e,
            kind,
            support_index,
        });
    }

    if deg != 1 {
        return Err(Error::scope(format!(
            "degree-{deg} character on a class of size {}: only degree-one characters \
             are supported off-centre",
            cls.size
        )));
    }
    if ct.table().order() != cls.centralizer_order {
        return Err(Error::mismatch(format!(
            "table order {} does not match the centralizer order {}",
            ct.table().order(),
            cls.centralizer_order
        )));
    }
    // The table must contain s itself; this also catches tables of the
    // right order built over the wrong subgroup.
    ct.column_of(&s)?;

    // Deterministic breadth-first orbit traversal, carrying the
    // conjugator: t_i = g_i s g_i^-1 throughout.
    let mut cosets = vec![Permutation::identity(s.degree())];
    let mut supports = vec![s.clone()];
    let mut support_index = HashMap::new();
    support_index.insert(s.images().to_vec(), 0usize);
    let mut head = 0;
    while head < supports.len() {
        let t = supports[head].clone();
        let g = cosets[head].clone();
        for h in &cd.group.generators {
            let t2 = conj(h, &t);
            if !support_index.contains_key(t2.images()) {
                let g2 = h.mul(&g);
                debug_assert_eq!(conj(&g2, &s), t2);
                support_index.insert(t2.images().to_vec(), supports.len());
                supports.push(t2);
                cosets.push(g2);
            }
        }
        head += 1;
    }
    if supports.len() as u64 != cls.size {
        return Err(Error::mismatch(format!(
            "orbit closure found {} conjugates, class size is {}",
            supports.len(),
            cls.size
        )));
    }

    Ok(YdModule {
        class_index,
        rep: s,
        cosets,
        supports,
        char_degree: 1,
        conductor: e,
        kind: ModuleKind::Linear { table: ct.clone(), row: char_row },
        support_index,
    })
}

/// A monomial braiding: c(e_a (x) e_b) = zeta^phase[a][b] e_{tgt[a][b]} (x) e_a.
///
/// The second output slot always carries e_a, so the full d^2 x d^2 matrix
/// is determined by the target table and the phase exponents.
pub struct BraidingMatrix {
    conductor: u32,
    dim: usize,
    tgt: Vec<Vec<usize>>,
    phase: Vec<Vec<u32>>,
}

impl BraidingMatrix {
    /// Validates shape, invertibility, and the braid relation before
    /// handing the braiding out. Public so synthetic braidings (scalar
    /// examples, relabelled bases) go through the same certification.
    pub fn from_parts(
        conductor: u32,
        dim: usize,
        tgt: Vec<Vec<usize>>,
        phase: Vec<Vec<u32>>,
    ) -> Result<BraidingMatrix> {
        if conductor == 0 || dim == 0 {
            return Err(Error::input("braiding needs a positive conductor and dimension"));
        }
        if tgt.len() != dim
            || phase.len() != dim
            || tgt.iter().any(|r| r.len() != dim)
            || phase.iter().any(|r| r.len() != dim)
        {
            return Err(Error::input("braiding tables must be dim x dim"));
        }
        if tgt.iter().flatten().any(|&t| t >= dim) {
            return Err(Error::input("braiding target out of range"));
        }
        let phase =
            phase.into_iter().map(|r| r.into_iter().map(|p| p % conductor).collect()).collect();
        let b = BraidingMatrix { conductor, dim, tgt, phase };
        // Monomial with unit phases, so invertibility is exactly the pair
        // map (a, b) -> (tgt, a) being a bijection.
        let mut seen = vec![false; dim * dim];
        for a in 0..dim {
            for t in 0..dim {
                let idx = b.tgt[a][t] * dim + a;
                if seen[idx] {
                    return Err(Error::mismatch("braiding is not invertible"));
                }
                seen[idx] = true;
            }
        }
        if !b.braid_relation_holds() {
            return Err(Error::mismatch("braid relation fails on the triple tensor"));
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Target index and phase exponent at one basis pair.
    pub fn component(&self, a: usize, b: usize) -> (usize, u32) {
        (self.tgt[a][b], self.phase[a][b])
    }

    /// The full d^2 x d^2 matrix, basis pairs ordered as a*d + b.
    pub fn entries(&self) -> Vec<Vec<IntCyc>> {
        let d = self.dim;
        let n = d * d;
        let mut out = vec![vec![IntCyc::zero(self.conductor); n]; n];
        for a in 0..d {
            for b in 0..d {
                let row = self.tgt[a][b] * d + a;
                out[row][a * d + b] = IntCyc::root(self.conductor, self.phase[a][b] as i64);
            }
        }
        out
    }

    /// Exact check of (c x 1)(1 x c)(c x 1) = (1 x c)(c x 1)(1 x c) on
    /// all d^3 basis triples: compose the monomial maps and compare
    /// targets and phase exponents.
    pub fn braid_relation_holds(&self) -> bool {
        let d = self.dim;
        let e = self.conductor;
        let c12 = |(a, b, c): (usize, usize, usize)| ((self.tgt[a][b], a, c), self.phase[a][b]);
        let c23 = |(a, b, c): (usize, usize, usize)| ((a, self.tgt[b][c], b), self.phase[b][c]);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let x = (a, b, c);
                    let (x1, p1) = c12(x);
                    let (x2, p2) = c23(x1);
                    let (x3, p3) = c12(x2);
                    let lhs = (x3, (p1 + p2 + p3) % e);
                    let (y1, q1) = c23(x);
                    let (y2, q2) = c12(y1);
                    let (y3, q3) = c23(y2);
                    let rhs = (y3, (q1 + q2 + q3) % e);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Some(q) when the braiding is exactly q times the flip.
    pub fn scalar_flip(&self) -> Option<IntCyc> {
        let p0 = self.phase[0][0];
        for a in 0..self.dim {
            for b in 0..self.dim {
                if self.tgt[a][b] != b || self.phase[a][b] != p0 {
                    return None;
                }
            }
        }
        Some(IntCyc::root(self.conductor, p0 as i64))
    }
}

/// The braiding of a module on its own tensor square.
pub fn braiding_matrix(m: &YdModule) -> Result<BraidingMatrix> {
    let d = m.dim();
    let mut tgt = vec![vec![0usize; d]; d];
    let mut phase = vec![vec![0u32; d]; d];
    for a in 0..d {
        let h = m.support_of(a).clone();
        for b in 0..d {
            let (b2, exp) = m.act_on(&h, b)?;
            tgt[a][b] = b2;
            phase[a][b] = exp;
        }
    }
    BraidingMatrix::from_parts(m.conductor, d, tgt, phase)
}

/// The scalar braiding q * flip with q = zeta_conductor^q_exp, in the
/// given dimension. Covers every central-class braiding without needing a
/// group behind it.
pub fn scalar_braiding(conductor: u32, q_exp: i64, dim: usize) -> Result<BraidingMatrix> {
    if conductor == 0 || dim == 0 {
        return Err(Error::input("scalar braiding needs a positive conductor and dimension"));
    }
    let exp = q_exp.rem_euclid(conductor as i64) as u32;
    let tgt = (0..dim).map(|_| (0..dim).collect()).collect();
    let phase = vec![vec![exp; dim]; dim];
    BraidingMatrix::from_parts(conductor, dim, tgt, phase)
}

/// Graded dimensions [1, d, rank S_2, ...]; the series is complete when it
/// ends in 0, truncated when the matrix budget stopped it first.
pub struct GradedDims {
    pub dims: Vec<u64>,
    pub truncated: bool,
}

impl GradedDims {
    /// Total dimension, available once the series has provably reached 0.
    pub fn total(&self) -> Option<u128> {
        if self.dims.last() == Some(&0) {
            Some(self.dims.iter().map(|&d| d as u128).sum())
        } else {
            None
        }
    }
}

/// Graded dimensions of the algebra generated in degree one: dim of the
/// degree-k part is the rank over Q(zeta_e) of the symmetrizer
/// S_k = sum over all k! permutations of the monomial operators T_w,
/// where T_w composes braiding legs along any reduced word of w (the braid
/// relation, checked at construction, makes the choice irrelevant). Once a
/// rank hits zero every later one is zero too, so the scan stops.
pub fn nichols_graded_dims(
    b: &BraidingMatrix,
    max_degree: usize,
    budget: &BraidBudget,
) -> Result<GradedDims> {
    let d = b.dim;
    let mut dims: Vec<u64> = vec![1];
    let mut truncated = false;
    if max_degree >= 1 {
        dims.push(d as u64);
    }
    for k in 2..=max_degree {
        let n = match d.checked_pow(k as u32) {
            Some(n) if n <= budget.max_matrix_dim => n,
            _ => {
                truncated = true;
                break;
            }
        };
        let rank = symmetrizer_rank(b, k, n);
        dims.push(rank);
        if rank == 0 {
            break;
        }
    }
    Ok(GradedDims { dims, truncated })
}

/// A monomial operator on the k-fold tensor power: index permutation plus
/// a phase exponent per index.
struct MonomialOp {
    to: Vec<u32>,
    ph: Vec<u32>,
}

fn symmetrizer_rank(b: &BraidingMatrix, k: usize, n: usize) -> u64 {
    let d = b.dim;
    let e = b.conductor;

    // Leg operators c_i acting on tensor positions (i, i+1), indices
    // big-endian in base d.
    let mut legs = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let w1 = d.pow((k - 2 - i) as u32); // weight of position i+1
        let w0 = w1 * d; // weight of position i
        let mut to = vec![0u32; n];
        let mut ph = vec![0u32; n];
        for x in 0..n {
            let a = (x / w0) % d;
            let bb = (x / w1) % d;
            let (t, p) = (b.tgt[a][bb], b.phase[a][bb]);
            to[x] = (x - a * w0 - bb * w1 + t * w0 + a * w1) as u32;
            ph[x] = p;
        }
        legs.push(MonomialOp { to, ph });
    }

    // Sum T_w over the symmetric group, walking the weak order level by
    // level: an ascent w[i] < w[i+1] means the word grows reduced, so
    // T_{w s_i} = T_w composed after c_i.
    let mut rows: Vec<HashMap<u32, IntCyc>> = vec![HashMap::new(); n];
    let mut accumulate = |op: &MonomialOp| {
        for x in 0..n {
            rows[op.to[x] as usize]
                .entry(x as u32)
                .or_insert_with(|| IntCyc::zero(e))
                .add_term(op.ph[x], 1);
        }
    };

    let identity = MonomialOp { to: (0..n as u32).collect(), ph: vec![0; n] };
    accumulate(&identity);
    let mut level: HashMap<Vec<u8>, MonomialOp> = HashMap::new();
    level.insert((0..k as u8).collect(), identity);
    while !level.is_empty() {
        let mut next: HashMap<Vec<u8>, MonomialOp> = HashMap::new();
        for (w, op) in &level {
            for i in 0..k - 1 {
                if w[i] < w[i + 1] {
                    let mut w2 = w.clone();
                    w2.swap(i, i + 1);
                    if next.contains_key(&w2) {
                        continue;
                    }
                    let leg = &legs[i];
                    let mut to = vec![0u32; n];
                    let mut ph = vec![0u32; n];
                    for x in 0..n {
                        let mid = leg.to[x] as usize;
                        to[x] = op.to[mid];
                        ph[x] = (leg.ph[x] + op.ph[mid]) % e;
                    }
                    let op2 = MonomialOp { to, ph };
                    accumulate(&op2);
                    next.insert(w2, op2);
                }
            }
        }
        level = next;
    }

    // Entries can cancel to zero over Z[zeta_e]; drop them before ranking.
    let sparse: Vec<Vec<(u32, Cyclotomic)>> = rows
        .into_iter()
        .map(|row| {
            let mut entries: Vec<(u32, Cyclotomic)> = row
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.to_cyclotomic()))
                .collect();
            entries.sort_by_key(|&(c, _)| c);
            entries
        })
        .collect();
    sparse_rank(sparse)
}

/// Rank of a sparse matrix over the cyclotomic field by left-looking
/// elimination: reduce each row against the pivots found so far, then
/// either it empties out or it contributes a new pivot.
fn sparse_rank(rows: Vec<Vec<(u32, Cyclotomic)>>) -> u64 {
    let mut pivots: BTreeMap<u32, Vec<(u32, Cyclotomic)>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                break;
            };
            if let Some(p) = pivots.get(&lead) {
                row = sub_scaled(&row, p, &coeff);
            } else {
                let inv = coeff.inverse().expect("leading entry is nonzero");
                for (_, v) in &mut row {
                    *v = &*v * &inv;
                }
                pivots.insert(lead, row);
                break;
            }
        }
    }
    pivots.len() as u64
}

/// a - c * p for sorted sparse rows; the shared leading entry cancels.
fn sub_scaled(
    a: &[(u32, Cyclotomic)],
    p: &[(u32, Cyclotomic)],
    c: &Cyclotomic,
) -> Vec<(u32, Cyclotomic)> {
    let mut out = Vec::with_capacity(a.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < p.len() {
        let ka = a.get(i).map(|&(k, _)| k);
        let kp = p.get(j).map(|&(k, _)| k);
        match (ka, kp) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - &(c * &p[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                let v = -&(c * &p[j].1);
                out.push((p[j].0, v));
                j += 1;
            }
            (Some(x), None) => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// One factor of a product of central-class modules: the scalar the
/// representative acts by, the character degree, the class size (1), and
/// how many times the factor occurs.
pub struct QlsFactor {
    pub q: IntCyc,
    pub char_degree: u64,
    pub class_size: u64,
    pub multiplicity: u64,
}

/// Dimension as a power of two; `value` is present while it fits u128.
pub struct QlsDimension {
    pub log2: u128,
    pub value: Option<u128>,
}

/// Closed-form total dimension 2^(sum deg * |C| * mult) for a collection
/// of central factors whose scalars are all -1. Any other scalar makes
/// the algebra infinite-dimensional or out of this closed form's reach,
/// so it is rejected rather than guessed at.
pub fn central_qls_dimension(factors: &[QlsFactor]) -> Result<QlsDimension> {
    let mut log2: u128 = 0;
    for f in factors {
        if f.class_size != 1 {
            return Err(Error::input("closed form needs central (size-one) classes"));
        }
        if f.char_degree == 0 || f.multiplicity == 0 {
            return Err(Error::input("degenerate factor: zero degree or multiplicity"));
        }
        if !f.q.equals_integer(-1) {
            return Err(Error::scope(
                "factor scalar is not -1: the power-of-two dimension formula only \
                 covers minus-one type factors",
            ));
        }
        let add = (f.char_degree as u128)
            .checked_mul(f.class_size as u128)
            .and_then(|x| x.checked_mul(f.multiplicity as u128))
            .ok_or_else(|| Error::budget("dimension exponent overflows"))?;
        log2 = log2.checked_add(add).ok_or_else(|| Error::budget("dimension exponent overflows"))?;
    }
    let value = if log2 <= 127 { Some(1u128 << log2) } else { None };
    Ok(QlsDimension { log2, value })
}

/// Pairwise symmetry and self-scalar admissibility for a family of
/// modules.
pub struct SymmetryReport {
    /// Multiplicative order of the scalar each representative acts by on
    /// its own module.
    pub self_orders: Vec<u64>,
    /// 1 < order < infinity per module.
    pub self_admissible: Vec<bool>,
    /// pair_symmetric[i][j]: the double braiding M_i (x) M_j -> M_i (x)
    /// M_j is the identity.
    pub pair_symmetric: Vec<Vec<bool>>,
    pub all_hold: bool,
}

/// Checks the scalar conditions a product of these modules needs to stay
/// a product of truncated polynomial factors: each self-scalar has finite
/// order > 1, and the double braiding of every pair is the identity. For
/// central scalar factors the latter is q_i q_j = 1; for degree-one
/// factors it is evaluated honestly on every basis pair.
pub fn quantum_symmetry_predicates(mods: &[YdModule]) -> Result<SymmetryReport> {
    let m = mods.len();
    let mut self_orders = Vec::with_capacity(m);
    let mut self_admissible = Vec::with_capacity(m);
    for md in mods {
        let (_, exp) = md.act_on(&md.support_of(0).clone(), 0)?;
        let e = md.conductor as u64;
        let ord = if exp == 0 { 1 } else { e / crate::exact::arith::gcd64(e, exp as u64) };
        self_orders.push(ord);
        self_admissible.push(ord > 1);
    }

    let mut pair_symmetric = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            pair_symmetric[i][j] = double_braiding_is_identity(&mods[i], &mods[j])?;
        }
    }
    let all_hold = self_admissible.iter().all(|&x| x)
        && pair_symmetric.iter().flatten().all(|&x| x);
    Ok(SymmetryReport { self_orders, self_admissible, pair_symmetric, all_hold })
}

/// sigma^2 = id on M_a (x) M_b, checked monomially on every basis pair.
fn double_braiding_is_identity(a: &YdModule, b: &YdModule) -> Result<bool> {
    let l = lcm64(a.conductor as u64, b.conductor as u64);
    let (sa, sb) = (l / a.conductor as u64, l / b.conductor as u64);
    for x in 0..a.dim() {
        let hx = a.support_of(x).clone();
        for y in 0..b.dim() {
            let (y1, p1) = b.act_on(&hx, y)?;
            let (x2, p2) = a.act_on(&b.support_of(y1).clone(), x)?;
            if x2 != x || y1 != y {
                return Ok(false);
            }
            if (p1 as u64 * sb + p2 as u64 * sa) % l != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
