//! Finitely generated abelian groups presented by invariant factors, with
//! an action of a finite group, plus the presented-module machinery
//! (exact solving and subquotient presentation) that the cohomology and
//! obstruction computations run on.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{smith, IntMatrix, SmithForm};

/// The shape of a finitely generated abelian group: free rank plus a
/// divisibility chain of torsion orders. Coordinates are laid out free
/// part first, then torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleShape {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl ModuleShape {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for d in &torsion {
            if *d < BigInt::from(2) {
                return Err(Error::BadModule(format!("torsion order {d} < 2")));
            }
        }
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::BadModule(format!(
                    "torsion {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(ModuleShape { free_rank, torsion })
    }

    pub fn from_i64(free_rank: usize, torsion: &[i64]) -> Result<Self> {
        ModuleShape::new(free_rank, torsion.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn width(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Per-generator order, 0 meaning infinite (free).
    pub fn orders(&self) -> Vec<BigInt> {
        let mut o = vec![BigInt::zero(); self.free_rank];
        o.extend(self.torsion.iter().cloned());
        o
    }

    pub fn is_trivial(&self) -> bool {
        self.width() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order; None when infinite.
    pub fn group_order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn reduce(&self, coords: &mut [BigInt]) {
        assert_eq!(coords.len(), self.width(), "coordinate length mismatch");
        for (i, d) in self.torsion.iter().enumerate() {
            let j = self.free_rank + i;
            coords[j] = coords[j].mod_floor(d);
        }
    }

    pub fn reduced(&self, mut coords: Vec<BigInt>) -> Vec<BigInt> {
        self.reduce(&mut coords);
        coords
    }

    /// Every element of a finite shape, odometer order.
    pub fn enumerate(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![vec![BigInt::zero(); self.width()]];
        for (i, d) in self.torsion.iter().enumerate() {
            let j = self.free_rank + i;
            let mut next = Vec::new();
            let mut k = BigInt::zero();
            while &k < d {
                for base in &out {
                    let mut v = base.clone();
                    v[j] = k.clone();
                    next.push(v);
                }
                k += 1;
            }
            out = next;
        }
        out
    }
}

/// An element in canonical coordinates relative to some `ModuleShape`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianElement {
    pub coords: Vec<BigInt>,
}

impl AbelianElement {
    pub fn zero(width: usize) -> Self {
        AbelianElement {
            coords: vec![BigInt::zero(); width],
        }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        AbelianElement {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A finitely generated abelian group with an action of `acting_group` by
/// module automorphisms, each given as an integer matrix in canonical
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianModule {
    shape: ModuleShape,
    acting_group: Arc<FiniteGroup>,
    action: Vec<IntMatrix>,
}

impl FgAbelianModule {
    pub fn new(
        shape: ModuleShape,
        acting_group: Arc<FiniteGroup>,
        action: Vec<IntMatrix>,
    ) -> Result<Self> {
        if action.len() != acting_group.order() {
            return Err(Error::BadModule(
                "need one action matrix per group element".into(),
            ));
        }
        let w = shape.width();
        for m in &action {
            if m.rows() != w || m.cols() != w {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix must be {w}x{w}"
                )));
            }
            check_respects_relations(m, &shape, &shape)?;
        }
        let module = FgAbelianModule {
            shape,
            acting_group,
            action,
        };
        let e = module.acting_group.identity();
        if !module.maps_equal(&module.action[e], &IntMatrix::identity(w)) {
            return Err(Error::BadModule("action of identity is not identity".into()));
        }
        for p in module.acting_group.elements() {
            let inv = module.acting_group.inv(p);
            let prod = module.action[p].mul(&module.action[inv]);
            if !module.maps_equal(&prod, &IntMatrix::identity(w)) {
                return Err(Error::BadModule(format!(
                    "action of {p} is not invertible as a module map"
                )));
            }
            for q in module.acting_group.elements() {
                let pq = module.acting_group.mul(p, q);
                let prod = module.action[p].mul(&module.action[q]);
                if !module.maps_equal(&prod, &module.action[pq]) {
                    return Err(Error::BadModule(format!(
                        "action is not a homomorphism at ({p},{q})"
                    )));
                }
            }
        }
        Ok(module)
    }

    /// Trivial action of `p_group` on the given shape.
    pub fn with_trivial_action(shape: ModuleShape, p_group: Arc<FiniteGroup>) -> Self {
        let w = shape.width();
        let action = (0..p_group.order()).map(|_| IntMatrix::identity(w)).collect();
        FgAbelianModule::new(shape, p_group, action).unwrap()
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    pub fn width(&self) -> usize {
        self.shape.width()
    }

    pub fn acting_group(&self) -> &Arc<FiniteGroup> {
        &self.acting_group
    }

    pub fn action_matrix(&self, p: usize) -> &IntMatrix {
        &self.action[p]
    }

    pub fn zero(&self) -> AbelianElement {
        AbelianElement::zero(self.width())
    }

    pub fn reduce(&self, e: &mut AbelianElement) {
        self.shape.reduce(&mut e.coords);
    }

    pub fn canonical(&self, coords: Vec<BigInt>) -> AbelianElement {
        AbelianElement {
            coords: self.shape.reduced(coords),
        }
    }

    pub fn add(&self, a: &AbelianElement, b: &AbelianElement) -> AbelianElement {
        self.canonical(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    pub fn sub(&self, a: &AbelianElement, b: &AbelianElement) -> AbelianElement {
        self.canonical(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x - y)
                .collect(),
        )
    }

    pub fn neg(&self, a: &AbelianElement) -> AbelianElement {
        self.canonical(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scalar_mul(&self, k: &BigInt, a: &AbelianElement) -> AbelianElement {
        self.canonical(a.coords.iter().map(|x| k * x).collect())
    }

    pub fn act(&self, p: usize, a: &AbelianElement) -> AbelianElement {
        self.canonical(self.action[p].mul_vec(&a.coords))
    }

    /// Equality of module maps: columns agree after canonical reduction.
    pub fn maps_equal(&self, m: &IntMatrix, n: &IntMatrix) -> bool {
        maps_equal_mod(m, n, &self.shape)
    }
}

fn maps_equal_mod(m: &IntMatrix, n: &IntMatrix, target: &ModuleShape) -> bool {
    if m.rows() != n.rows() || m.cols() != n.cols() {
        return false;
    }
    (0..m.cols()).all(|j| target.reduced(m.col(j)) == target.reduced(n.col(j)))
}

/// A matrix defines a map of presented modules iff it sends each source
/// relation into the target relation lattice. Orders are per-generator,
/// 0 meaning free; the generator layout is arbitrary.
pub fn check_map_orders(m: &IntMatrix, source: &[BigInt], target: &[BigInt]) -> Result<()> {
    if m.cols() != source.len() || m.rows() != target.len() {
        return Err(Error::DimensionMismatch(format!(
            "map must be {}x{}, got {}x{}",
            target.len(),
            source.len(),
            m.rows(),
            m.cols()
        )));
    }
    for (j, d) in source.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        for r in 0..m.rows() {
            let v = d * m.at(r, j);
            let ok = if target[r].is_zero() {
                v.is_zero()
            } else {
                (&v % &target[r]).is_zero()
            };
            if !ok {
                return Err(Error::BadModule(format!(
                    "column {j} of order {d} is not annihilated in the target (row {r})"
                )));
            }
        }
    }
    Ok(())
}

/// A matrix defines a map of presented modules iff it sends each source
/// relation into the target relation lattice.
pub fn check_respects_relations(
    m: &IntMatrix,
    source: &ModuleShape,
    target: &ModuleShape,
) -> Result<()> {
    check_map_orders(m, &source.orders(), &target.orders())
}

/// Columns spanning the relation lattice of a presented group with the
/// given generator orders: `d_i * e_i` for each torsion generator.
pub fn relation_columns_for_orders(orders: &[BigInt]) -> IntMatrix {
    let torsion: Vec<(usize, &BigInt)> = orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .collect();
    let mut m = IntMatrix::zero(orders.len(), torsion.len());
    for (col, (row, d)) in torsion.into_iter().enumerate() {
        m.set(row, col, d.clone());
    }
    m
}

/// Columns spanning the relation lattice of a shape: `d_i * e_i` for each
/// torsion generator.
pub fn relation_columns(shape: &ModuleShape) -> IntMatrix {
    relation_columns_for_orders(&shape.orders())
}

/// Solve `f(x) = y` in the target presented module, i.e. modulo the target
/// relations. Returns a canonical witness in the source, or None.
pub fn solve_presented(
    f: &IntMatrix,
    source: &ModuleShape,
    target: &ModuleShape,
    y: &AbelianElement,
) -> Result<Option<AbelianElement>> {
    let got = solve_flat(f, &source.orders(), &target.orders(), &y.coords)?;
    Ok(got.map(|coords| AbelianElement { coords }))
}

/// `solve_presented` on raw per-generator order vectors (0 = free), with
/// the witness reduced coordinate-wise by the source orders.
pub fn solve_flat(
    f: &IntMatrix,
    source: &[BigInt],
    target: &[BigInt],
    y: &[BigInt],
) -> Result<Option<Vec<BigInt>>> {
    check_map_orders(f, source, target)?;
    if y.len() != target.len() {
        return Err(Error::DimensionMismatch("rhs length mismatch".into()));
    }
    let aug = f.hstack(&relation_columns_for_orders(target));
    let s = smith(&aug);
    Ok(s.solve(y).map(|w| {
        w[..source.len()]
            .iter()
            .zip(source)
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect()
    }))
}

/// The subquotient `ker(f) / im(g)` of a presented module, with a
/// coordinate map for classes and preferred generators. `f` maps the
/// middle module into `out`, `g_cols` are ambient-coordinate columns
/// spanning the image (the middle relation lattice is added implicitly).
#[derive(Clone, Debug)]
pub struct Subquotient {
    mid_width: usize,
    kernel_gens: IntMatrix,
    kernel_snf: SmithForm,
    u_h: IntMatrix,
    u_h_inv: IntMatrix,
    /// positions in `u_h * a` carrying a nontrivial invariant factor
    torsion_pos: Vec<(usize, BigInt)>,
    /// positions with no relation (free part of the subquotient)
    free_pos: Vec<usize>,
}

impl Subquotient {
    pub fn compute(
        f: &IntMatrix,
        out: &ModuleShape,
        mid: &ModuleShape,
        g_cols: &IntMatrix,
    ) -> Result<Subquotient> {
        Subquotient::compute_from_orders(f, &out.orders(), &mid.orders(), g_cols)
    }

    /// Same as `compute`, but on raw per-generator order vectors (layout
    /// free/torsion interleaved as the caller likes).
    pub fn compute_from_orders(
        f: &IntMatrix,
        out: &[BigInt],
        mid: &[BigInt],
        g_cols: &IntMatrix,
    ) -> Result<Subquotient> {
        check_map_orders(f, mid, out)?;
        let n = mid.len();
        if g_cols.rows() != n {
            return Err(Error::DimensionMismatch(
                "boundary columns must live in the middle module".into(),
            ));
        }

        // kernel lattice K = { x : f x lies in the target relation lattice }
        let aug = f.hstack(&relation_columns_for_orders(out));
        let s1 = smith(&aug);
        let kernel_cols: Vec<Vec<BigInt>> = s1
            .kernel_basis()
            .into_iter()
            .map(|w| w[..n].to_vec())
            .collect();
        let kernel_gens = IntMatrix::from_columns(n, &kernel_cols);
        let kernel_snf = smith(&kernel_gens);

        // relations of the subquotient: boundaries plus the middle relations,
        // written in kernel-generator coordinates
        let all_rels = g_cols.hstack(&relation_columns_for_orders(mid));
        let mut rel_in_k: Vec<Vec<BigInt>> = Vec::with_capacity(all_rels.cols());
        for j in 0..all_rels.cols() {
            let b = all_rels.col(j);
            let a = kernel_snf.solve(&b).ok_or_else(|| {
                Error::InternalInconsistency(
                    "image generator lies outside the kernel lattice".into(),
                )
            })?;
            rel_in_k.push(a);
        }
        let s_gens = kernel_gens.cols();
        let rel = IntMatrix::from_columns(s_gens, &rel_in_k);
        let s2 = smith(&rel);

        let diag = s2.diagonal();
        let mut torsion_pos = Vec::new();
        let mut free_pos = Vec::new();
        for i in 0..s_gens {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                free_pos.push(i);
            } else if !d.is_one() {
                torsion_pos.push((i, d));
            }
        }

        Ok(Subquotient {
            mid_width: n,
            kernel_gens,
            kernel_snf,
            u_h: s2.u,
            u_h_inv: s2.u_inv,
            torsion_pos,
            free_pos,
        })
    }

    /// Invariant factors and free rank of the subquotient.
    pub fn shape(&self) -> ModuleShape {
        ModuleShape {
            free_rank: self.free_pos.len(),
            torsion: self.torsion_pos.iter().map(|(_, d)| d.clone()).collect(),
        }
    }

    /// Class coordinates of an ambient element; None if it is not in the
    /// kernel lattice. Layout: free part first, then torsion, matching
    /// `self.shape()`.
    pub fn class_coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.mid_width);
        let a = self.kernel_snf.solve(x)?;
        let h = self.u_h.mul_vec(&a);
        let mut out: Vec<BigInt> = self.free_pos.iter().map(|&i| h[i].clone()).collect();
        for (i, d) in &self.torsion_pos {
            out.push(h[*i].mod_floor(d));
        }
        Some(out)
    }

    /// Ambient-coordinate columns spanning the kernel lattice.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        (0..self.kernel_gens.cols())
            .map(|j| self.kernel_gens.col(j))
            .collect()
    }

    /// Ambient coordinates of the generator carrying unit class coordinate
    /// `j` (in the order of `shape()`).
    pub fn generator(&self, j: usize) -> Vec<BigInt> {
        let pos = if j < self.free_pos.len() {
            self.free_pos[j]
        } else {
            self.torsion_pos[j - self.free_pos.len()].0
        };
        let a = self.u_h_inv.col(pos);
        self.kernel_gens.mul_vec(&a)
    }
}

/// Closure of a generating set inside the finite group of coordinates of
/// `shape`. Elements are canonical coordinate vectors.
pub fn subgroup_closure(shape: &ModuleShape, gens: &[Vec<BigInt>]) -> BTreeSet<Vec<BigInt>> {
    assert!(shape.is_finite(), "closure needs a finite group");
    let zero = vec![BigInt::zero(); shape.width()];
    let mut set: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    set.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = shape.reduced(x.iter().zip(g).map(|(a, b)| a + b).collect());
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Canonical coset representatives of a subgroup (given as a closed set)
/// in the finite coordinate group of `shape`: the least vector in each
/// coset, sorted.
pub fn coset_representatives(
    shape: &ModuleShape,
    subgroup: &BTreeSet<Vec<BigInt>>,
) -> Vec<Vec<BigInt>> {
    let mut reps = Vec::new();
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for x in shape.enumerate() {
        if seen.contains(&x) {
            continue;
        }
        let coset: Vec<Vec<BigInt>> = subgroup
            .iter()
            .map(|s| shape.reduced(x.iter().zip(s).map(|(a, b)| a + b).collect()))
            .collect();
        reps.push(coset.iter().min().unwrap().clone());
        seen.extend(coset);
    }
    reps.sort();
    reps
}
