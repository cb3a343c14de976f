//! Group extensions built from 2-cochain data: the cover construction for
//! a split crossed module, cocycle extraction, congruence testing, the
//! torsor of covers under `H^2(P, A)` modulo the kernel of inflation, and
//! the classification of all covers.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cohomology::{
    cohomology_group, inflate, pullback_module, Cochain, CohomologyGroup, DEFAULT_COST_LIMIT,
};
use crate::crossedmod::{abelian_subgroup_presentation, CrossedModule, HomotopyData};
use crate::error::{Error, GroupDefect, Result};
use crate::group::{generating_sequence, FiniteGroup, GroupHom};
use crate::module::{
    coset_representatives, subgroup_closure, AbelianElement, FgAbelianModule, Subquotient,
};
use crate::obstruction::ObstructionReport;

/// An extension `1 -> T -> E -> P -> 1` on the fixed pair enumeration
/// `index(t, p) = t * |P| + p`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub total: Arc<FiniteGroup>,
    pub kernel_embed: GroupHom,
    pub projection: GroupHom,
}

impl ExtensionData {
    pub fn kernel_group(&self) -> &Arc<FiniteGroup> {
        self.kernel_embed.source()
    }

    pub fn quotient_group(&self) -> &Arc<FiniteGroup> {
        self.projection.target()
    }

    /// Least element of each projection fiber, identity fiber fixed to
    /// the identity.
    pub fn canonical_section(&self) -> Vec<usize> {
        let p_ord = self.quotient_group().order();
        let mut section = vec![usize::MAX; p_ord];
        for e in self.total.elements() {
            let p = self.projection.apply(e);
            if section[p] == usize::MAX {
                section[p] = e;
            }
        }
        section[self.projection.apply(self.total.identity())] = self.total.identity();
        section
    }

    /// T-index of a total-group element lying in the kernel.
    fn kernel_preimage(&self, e: usize) -> Option<usize> {
        self.kernel_embed.map().iter().position(|&k| k == e)
    }
}

/// Build the extension with multiplication
/// `(t, p) * (t', p') = (t * alpha_p(t') * mu(p, p'), p p')`.
///
/// `alpha` is one permutation of T per element of P with `alpha[1] = id`,
/// `mu` a normalized T-valued table. Associativity is not assumed: the
/// whole table is validated and a witness triple is reported on failure.
pub fn build_extension(
    p: &Arc<FiniteGroup>,
    t: &Arc<FiniteGroup>,
    alpha: &[Vec<usize>],
    mu: &[Vec<usize>],
) -> Result<ExtensionData> {
    let p_ord = p.order();
    let t_ord = t.order();
    if alpha.len() != p_ord || alpha.iter().any(|a| a.len() != t_ord) {
        return Err(Error::DimensionMismatch(
            "alpha must give one T-map per element of P".into(),
        ));
    }
    if mu.len() != p_ord || mu.iter().any(|m| m.len() != p_ord) {
        return Err(Error::DimensionMismatch("mu must be a PxP table".into()));
    }
    for a in alpha {
        let mut seen = vec![false; t_ord];
        for &x in a {
            if x >= t_ord || std::mem::replace(&mut seen[x], true) {
                return Err(Error::BadModule("alpha entry is not a bijection of T".into()));
            }
        }
    }
    let e_p = p.identity();
    let e_t = t.identity();
    if alpha[e_p].iter().enumerate().any(|(i, &x)| i != x) {
        return Err(Error::BadModule("alpha at the identity must be trivial".into()));
    }
    for q in p.elements() {
        if mu[e_p][q] != e_t || mu[q][e_p] != e_t {
            return Err(Error::BadModule("mu must be normalized".into()));
        }
    }

    let n = t_ord * p_ord;
    let idx = |ti: usize, pi: usize| ti * p_ord + pi;
    let mut table = vec![vec![0usize; n]; n];
    for ti in 0..t_ord {
        for pi in 0..p_ord {
            for tj in 0..t_ord {
                for pj in 0..p_ord {
                    let tt = t.mul(t.mul(ti, alpha[pi][tj]), mu[pi][pj]);
                    table[idx(ti, pi)][idx(tj, pj)] = idx(tt, p.mul(pi, pj));
                }
            }
        }
    }
    let total = match FiniteGroup::from_table(table) {
        Ok(g) => Arc::new(g),
        Err(Error::NotAGroup {
            reason: GroupDefect::NonAssociative { x, y, z },
        }) => return Err(Error::NotAssociative { x, y, z }),
        Err(e) => return Err(e),
    };

    let kernel_embed = GroupHom::new(
        Arc::clone(t),
        Arc::clone(&total),
        (0..t_ord).map(|ti| idx(ti, e_p)).collect(),
    )?;
    let projection = GroupHom::new(
        Arc::clone(&total),
        Arc::clone(p),
        (0..n).map(|e| e % p_ord).collect(),
    )?;
    Ok(ExtensionData {
        total,
        kernel_embed,
        projection,
    })
}

/// Extract the factor set of an extension relative to a section of the
/// projection: `mu(p, q) = s(p) s(q) s(pq)^{-1}` pulled back into T.
pub fn extract_cocycle(ext: &ExtensionData, section: &[usize]) -> Result<Vec<Vec<usize>>> {
    let p = ext.quotient_group();
    let e = &ext.total;
    if section.len() != p.order() {
        return Err(Error::DimensionMismatch("section arity mismatch".into()));
    }
    let mut mu = vec![vec![0usize; p.order()]; p.order()];
    for pi in p.elements() {
        for pj in p.elements() {
            let v = e.mul(e.mul(section[pi], section[pj]), e.inv(section[p.mul(pi, pj)]));
            mu[pi][pj] = ext.kernel_preimage(v).ok_or_else(|| {
                Error::InternalInconsistency("factor set escapes the kernel".into())
            })?;
        }
    }
    Ok(mu)
}

/// Conjugation of the kernel by the section representatives, as one
/// permutation of T per element of P.
pub fn extract_conjugation(ext: &ExtensionData, section: &[usize]) -> Result<Vec<Vec<usize>>> {
    let p = ext.quotient_group();
    let t = ext.kernel_group();
    let e = &ext.total;
    let mut alpha = vec![vec![0usize; t.order()]; p.order()];
    for pi in p.elements() {
        for ti in t.elements() {
            let conj = e.conjugate(section[pi], ext.kernel_embed.apply(ti));
            alpha[pi][ti] = ext.kernel_preimage(conj).ok_or_else(|| {
                Error::InternalInconsistency("kernel is not normal in the extension".into())
            })?;
        }
    }
    Ok(alpha)
}

/// Presentation of an abelian extension kernel as a P-module where P acts
/// by conjugation through any section (well defined for abelian kernels).
pub struct KernelModule {
    pub module: Arc<FgAbelianModule>,
    /// sorted total-group indices of the kernel
    pub elements: Vec<usize>,
    coords: Vec<Vec<BigInt>>,
    generator_elements: Vec<usize>,
}

impl KernelModule {
    pub fn coords_of(&self, total_index: usize) -> Option<AbelianElement> {
        let pos = self.elements.binary_search(&total_index).ok()?;
        Some(AbelianElement {
            coords: self.coords[pos].clone(),
        })
    }

    pub fn embed(&self, a: &AbelianElement, total: &FiniteGroup) -> usize {
        let coords = self.module.shape().reduced(a.coords.clone());
        let mut acc = total.identity();
        for (j, k) in coords.iter().enumerate() {
            let gen = self.generator_elements[j];
            let o = total.element_order(gen);
            let exp = (k.clone() % BigInt::from(o) + BigInt::from(o)) % BigInt::from(o);
            let exp: usize = exp.to_string().parse().expect("small exponent");
            acc = total.mul(acc, total.pow(gen, exp));
        }
        acc
    }
}

/// Derive the kernel of an extension as a P-module; fails if the kernel
/// is nonabelian.
pub fn kernel_module(ext: &ExtensionData) -> Result<KernelModule> {
    let t = ext.kernel_group();
    if !t.is_abelian() {
        return Err(Error::BadModule("extension kernel is not abelian".into()));
    }
    let p = ext.quotient_group();
    let e = &ext.total;
    let elements: Vec<usize> = {
        let mut v = ext.kernel_embed.map().to_vec();
        v.sort_unstable();
        v
    };
    let (shape, coords, gens) = abelian_subgroup_presentation(e, &elements)?;
    let section = ext.canonical_section();
    let coord_of = |idx: usize| -> Vec<BigInt> {
        let pos = elements.binary_search(&idx).expect("kernel normal");
        coords[pos].clone()
    };
    let w = shape.width();
    let mut matrices = Vec::with_capacity(p.order());
    for pi in p.elements() {
        let mut m = crate::matrix::IntMatrix::zero(w, w);
        for (j, &gen) in gens.iter().enumerate() {
            let img = e.conjugate(section[pi], gen);
            for (i, c) in coord_of(img).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        matrices.push(m);
    }
    let module = Arc::new(FgAbelianModule::new(shape, Arc::clone(p), matrices)?);
    Ok(KernelModule {
        module,
        elements,
        coords,
        generator_elements: gens,
    })
}

/// The class of an abelian extension in `H^2(P, kernel)`.
pub fn extension_class(
    ext: &ExtensionData,
    h2: &CohomologyGroup,
    km: &KernelModule,
) -> Result<Vec<BigInt>> {
    let p = ext.quotient_group();
    let section = ext.canonical_section();
    let mu = extract_cocycle(ext, &section)?;
    let mut c = Cochain::zero(p, &km.module, 2);
    for pi in p.elements() {
        for pj in p.elements() {
            if pi == p.identity() || pj == p.identity() {
                continue;
            }
            let e_idx = ext.kernel_embed.apply(mu[pi][pj]);
            let coords = km.coords_of(e_idx).ok_or_else(|| {
                Error::InternalInconsistency("factor set value outside kernel".into())
            })?;
            c.set_value(&[pi, pj], coords);
        }
    }
    h2.class_of(&c)
}

/// Congruence of two extensions with the same kernel and quotient data:
/// an isomorphism of total groups commuting with the kernel embeddings
/// and the projections.
///
/// Abelian kernels are compared through their `H^2` classes; nonabelian
/// kernels by a pruned exhaustive search over images of section
/// representatives of a generating set of P.
pub fn congruent(e1: &ExtensionData, e2: &ExtensionData) -> Result<bool> {
    if e1.kernel_group() != e2.kernel_group() || e1.quotient_group() != e2.quotient_group() {
        return Err(Error::DimensionMismatch(
            "congruence needs identical kernel and quotient data".into(),
        ));
    }
    if e1.total.order() != e2.total.order() {
        return Ok(false);
    }
    if e1.total.order_census() != e2.total.order_census() {
        return Ok(false);
    }

    if e1.kernel_group().is_abelian() {
        let km1 = kernel_module(e1)?;
        let km2 = kernel_module(e2)?;
        if km1.module != km2.module {
            // conjugation actions differ, no congruence can exist
            return Ok(false);
        }
        let h2 = cohomology_group(
            e1.quotient_group(),
            &km1.module,
            2,
            DEFAULT_COST_LIMIT,
        )?;
        let c1 = extension_class(e1, &h2, &km1)?;
        let c2 = extension_class(e2, &h2, &km2)?;
        return Ok(c1 == c2);
    }

    congruent_nonabelian(e1, e2)
}

fn congruent_nonabelian(e1: &ExtensionData, e2: &ExtensionData) -> Result<bool> {
    let total_order = e1.total.order();
    if total_order > 64 {
        return Err(Error::ResourceLimit {
            needed: total_order,
            bound: 64,
        });
    }
    let p = e1.quotient_group();
    let t = e1.kernel_group();
    let s1 = e1.canonical_section();
    let gens = generating_sequence(p);

    // phi is forced on the kernel; search images of s1(gen) fiberwise
    let fibers: Vec<Vec<usize>> = gens
        .iter()
        .map(|&pg| {
            e2.total
                .elements()
                .filter(|&x| e2.projection.apply(x) == pg)
                .filter(|&x| e2.total.element_order(x) == e1.total.element_order(s1[pg]))
                .collect()
        })
        .collect();

    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let mut phi: Vec<Option<usize>> = vec![None; total_order];
        for ti in t.elements() {
            phi[e1.kernel_embed.apply(ti)] = Some(e2.kernel_embed.apply(ti));
        }
        let mut ok = true;
        for (slot, &pg) in gens.iter().enumerate() {
            if fibers[slot].is_empty() {
                ok = false;
                break;
            }
            let img = fibers[slot][choice[slot]];
            match &mut phi[s1[pg]] {
                Some(prev) if *prev != img => {
                    ok = false;
                    break;
                }
                entry => *entry = Some(img),
            }
        }
        if ok {
            if let Some(full) = close_hom(e1, e2, phi)? {
                debug_assert!(full.iter().all(|x| x.is_some()));
                return Ok(true);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == gens.len() {
                break 'outer;
            }
            if fibers[k].is_empty() {
                break 'outer;
            }
            choice[k] += 1;
            if choice[k] < fibers[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if gens.is_empty() {
            break;
        }
    }
    Ok(false)
}

/// Extend a partial map multiplicatively; None on conflict, or the total
/// map when it closes to an isomorphism commuting with the projections.
fn close_hom(
    e1: &ExtensionData,
    e2: &ExtensionData,
    mut phi: Vec<Option<usize>>,
) -> Result<Option<Vec<Option<usize>>>> {
    let n = e1.total.order();
    loop {
        let mut progress = false;
        for x in 0..n {
            let Some(fx) = phi[x] else { continue };
            for y in 0..n {
                let Some(fy) = phi[y] else { continue };
                let xy = e1.total.mul(x, y);
                let fxy = e2.total.mul(fx, fy);
                match phi[xy] {
                    Some(prev) if prev != fxy => return Ok(None),
                    Some(_) => {}
                    None => {
                        phi[xy] = Some(fxy);
                        progress = true;
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    if phi.iter().any(Option::is_none) {
        // partial data did not generate; treat as failure
        return Ok(None);
    }
    let map: Vec<usize> = phi.iter().map(|x| x.unwrap()).collect();
    let mut seen = vec![false; n];
    for &x in &map {
        if std::mem::replace(&mut seen[x], true) {
            return Ok(None);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if map[e1.total.mul(x, y)] != e2.total.mul(map[x], map[y]) {
                return Ok(None);
            }
        }
        if e2.projection.apply(map[x]) != e1.projection.apply(x) {
            return Ok(None);
        }
    }
    Ok(Some(phi))
}

/// Build the cover of a split crossed module from its obstruction report:
/// the corrected factor set `mu(f,g) = embed(-witness(f,g)) * eta_dot(f,g)`
/// fed to `build_extension` with conjugation by the section
/// representatives, then every exactness assertion of the cover diagram
/// verified.
pub fn build_cover(xm: &CrossedModule, report: &ObstructionReport) -> Result<ExtensionData> {
    if !report.split {
        return Err(Error::NotSplit);
    }
    let hd = &report.homotopy;
    let p = hd.p();
    let t = xm.t();
    let witness = report
        .witness
        .as_ref()
        .ok_or_else(|| Error::InternalInconsistency("split report without witness".into()))?;

    let alpha: Vec<Vec<usize>> = hd
        .section()
        .iter()
        .map(|&rep| xm.action()[rep].clone())
        .collect();
    let mut mu = vec![vec![t.identity(); p.order()]; p.order()];
    for f in p.elements() {
        for g in p.elements() {
            let corr = hd.embed(&hd.module().neg(&witness.value(&[f, g])), t);
            mu[f][g] = t.mul(corr, report.eta.eta_dot[f][g]);
        }
    }

    let ext = build_extension(p, t, &alpha, &mu)?;
    verify_cover_diagram(xm, hd, &ext)?;
    Ok(ext)
}

/// The homomorphism `E -> G`, `(t, p) -> boundary(t) * s(p)`, whose
/// kernel is the embedded fundamental module.
pub fn cover_to_base_hom(
    xm: &CrossedModule,
    hd: &HomotopyData,
    ext: &ExtensionData,
) -> Result<GroupHom> {
    let p_ord = hd.p().order();
    let map: Vec<usize> = ext
        .total
        .elements()
        .map(|e| {
            let (ti, pi) = (e / p_ord, e % p_ord);
            xm.g()
                .mul(xm.boundary().apply(ti), hd.section()[pi])
        })
        .collect();
    GroupHom::new(Arc::clone(&ext.total), Arc::clone(xm.g()), map)
}

/// All exactness assertions of the cover diagram: kernel embedding
/// injective, projection surjective with kernel T, the fundamental module
/// central, the map to G a surjection with kernel the embedded module,
/// its restriction to T the boundary, and the two routes to P equal.
pub fn verify_cover_diagram(
    xm: &CrossedModule,
    hd: &HomotopyData,
    ext: &ExtensionData,
) -> Result<()> {
    let fail = |msg: &str| Err(Error::InternalInconsistency(format!("cover diagram: {msg}")));

    if !ext.kernel_embed.is_injective() {
        return fail("kernel embedding not injective");
    }
    if !ext.projection.is_surjective() {
        return fail("projection not surjective");
    }
    let ker_proj: Vec<usize> = ext.projection.kernel_elements();
    if ker_proj != {
        let mut v = ext.kernel_embed.map().to_vec();
        v.sort_unstable();
        v
    } {
        return fail("kernel of projection differs from the embedded T");
    }

    // A central in the embedded T (the middle column is an abelian
    // extension of G, not necessarily a central one)
    for &a in hd.kernel_elements() {
        let ea = ext.kernel_embed.apply(a);
        for &et in ext.kernel_embed.map() {
            if ext.total.mul(ea, et) != ext.total.mul(et, ea) {
                return fail("fundamental module not central in the embedded kernel");
            }
        }
    }

    let j = cover_to_base_hom(xm, hd, ext)?;
    if !j.is_surjective() {
        return fail("map to the base group not surjective");
    }
    let ker_j = j.kernel_elements();
    let embedded_a: Vec<usize> = {
        let mut v: Vec<usize> = hd
            .kernel_elements()
            .iter()
            .map(|&a| ext.kernel_embed.apply(a))
            .collect();
        v.sort_unstable();
        v
    };
    if ker_j != embedded_a {
        return fail("kernel of the base map differs from the embedded module");
    }

    // left column composite = middle column restricted to T
    for t in xm.t().elements() {
        if j.apply(ext.kernel_embed.apply(t)) != xm.boundary().apply(t) {
            return fail("base map does not restrict to the boundary");
        }
    }

    // right square: E -> P equals E -> G -> P
    let via_g = j.compose(hd.projection())?;
    if via_g.map() != ext.projection.map() {
        return fail("projection does not factor through the base group");
    }
    Ok(())
}

/// Class of a cover inside `H^2(G, A)` through the extension
/// `1 -> A -> E -> G -> 1`; the discriminating invariant for cover
/// congruence.
pub fn cover_class_in_base(
    xm: &CrossedModule,
    hd: &HomotopyData,
    ext: &ExtensionData,
    h2g: &CohomologyGroup,
) -> Result<Vec<BigInt>> {
    let j = cover_to_base_hom(xm, hd, ext)?;
    let g = xm.g();
    let e = &ext.total;
    // canonical section of j
    let mut section = vec![usize::MAX; g.order()];
    for x in e.elements() {
        let gx = j.apply(x);
        if section[gx] == usize::MAX {
            section[gx] = x;
        }
    }
    section[j.apply(e.identity())] = e.identity();

    let p_ord = hd.p().order();
    let coeffs = pullback_module(hd.module(), hd.projection())?;
    let mut c = Cochain::zero(g, &coeffs, 2);
    for x in g.elements() {
        for y in g.elements() {
            if x == g.identity() || y == g.identity() {
                continue;
            }
            let v = e.mul(e.mul(section[x], section[y]), e.inv(section[g.mul(x, y)]));
            let (ti, pi) = (v / p_ord, v % p_ord);
            if pi != hd.p().identity() {
                return Err(Error::InternalInconsistency(
                    "base factor set escapes the fiber over the identity".into(),
                ));
            }
            let coords = hd.coords_of(ti).ok_or_else(|| {
                Error::InternalInconsistency("base factor set outside the module".into())
            })?;
            c.set_value(&[x, y], coords);
        }
    }
    h2g.class_of(&c)
}

/// Act on a cover by a class of `H^2(P, A)`: add a representative cocycle
/// of the class into the extracted factor set and rebuild.
pub fn torsor_act(
    xm: &CrossedModule,
    hd: &HomotopyData,
    h2p: &CohomologyGroup,
    tau: &[BigInt],
    cover: &ExtensionData,
) -> Result<ExtensionData> {
    let tau_rep = h2p.combination(tau);
    let p = hd.p();
    let t = xm.t();
    let section = cover.canonical_section();
    let alpha = extract_conjugation(cover, &section)?;
    let mu = extract_cocycle(cover, &section)?;
    let mut mu2 = vec![vec![t.identity(); p.order()]; p.order()];
    for f in p.elements() {
        for g in p.elements() {
            let shift = hd.embed(&tau_rep.value(&[f, g]), t);
            mu2[f][g] = t.mul(shift, mu[f][g]);
        }
    }
    build_extension(p, t, &alpha, &mu2)
}

/// Generators (in `H^2(P, A)` coordinates) of the kernel of inflation
/// `H^2(P, A) -> H^2(G, A)`: the stabilizer of the torsor action.
pub struct DeltaImage {
    pub h2p: CohomologyGroup,
    pub h2g: CohomologyGroup,
    pub generators: Vec<Vec<BigInt>>,
}

pub fn delta_image(xm: &CrossedModule, hd: &HomotopyData, cost_limit: usize) -> Result<DeltaImage> {
    let h2p = cohomology_group(hd.p(), hd.module(), 2, cost_limit)?;
    let coeffs_g = pullback_module(hd.module(), hd.projection())?;
    let h2g = cohomology_group(xm.g(), &coeffs_g, 2, cost_limit)?;

    let dom = h2p.shape().orders();
    let cod = h2g.shape().orders();
    let mut x_cols: Vec<Vec<BigInt>> = Vec::with_capacity(dom.len());
    for gen in h2p.generators() {
        let inflated = inflate(gen, hd.projection())?;
        x_cols.push(h2g.class_of(&inflated)?);
    }
    let x = crate::matrix::IntMatrix::from_columns(cod.len(), &x_cols);
    let boundaries = crate::matrix::IntMatrix::zero(dom.len(), 0);
    let sq = Subquotient::compute_from_orders(&x, &cod, &dom, &boundaries)?;

    let mut generators: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for col in sq.kernel_generators() {
        let reduced = h2p.shape().reduced(col);
        if reduced.iter().any(|c| !c.is_zero()) {
            generators.insert(reduced);
        }
    }
    Ok(DeltaImage {
        h2p,
        h2g,
        generators: generators.into_iter().collect(),
    })
}

/// The full classification of covers: one representative per coset of the
/// inflation kernel inside `H^2(P, A)`, verified pairwise non-congruent,
/// plus the two counts (the congruence-class count and the count of
/// covers with a distinguished kernel-embedding).
pub struct CoverClassification {
    pub h2: CohomologyGroup,
    pub delta_generators: Vec<Vec<BigInt>>,
    pub representatives: Vec<ExtensionData>,
    /// `|H^2| / |ker(inflation)|`, the number of congruence classes
    pub class_count: BigInt,
    /// `|H^2|`, the count when the kernel embedding is part of the data
    pub embedded_count: BigInt,
}

pub fn cover_classes(xm: &CrossedModule, report: &ObstructionReport) -> Result<CoverClassification> {
    cover_classes_with_limit(xm, report, DEFAULT_COST_LIMIT)
}

pub fn cover_classes_with_limit(
    xm: &CrossedModule,
    report: &ObstructionReport,
    cost_limit: usize,
) -> Result<CoverClassification> {
    let hd = &report.homotopy;
    let delta = delta_image(xm, hd, cost_limit)?;
    let h2_order = delta.h2p.shape().group_order().ok_or_else(|| {
        Error::InternalInconsistency("H^2 of a finite module must be finite".into())
    })?;

    if !report.split {
        return Ok(CoverClassification {
            h2: delta.h2p,
            delta_generators: delta.generators,
            representatives: Vec::new(),
            class_count: BigInt::zero(),
            embedded_count: h2_order,
        });
    }

    let shape = delta.h2p.shape().clone();
    let stabilizer = subgroup_closure(&shape, &delta.generators);
    let reps = coset_representatives(&shape, &stabilizer);
    let class_count = BigInt::from(reps.len());
    {
        let total: BigInt = BigInt::from(stabilizer.len()) * &class_count;
        if total != h2_order {
            return Err(Error::InternalInconsistency(
                "coset count does not match the subgroup index".into(),
            ));
        }
    }

    let base = build_cover(xm, report)?;
    let h2g = &delta.h2g;
    let mut representatives = Vec::with_capacity(reps.len());
    let mut seen_classes: Vec<Vec<BigInt>> = Vec::new();
    for tau in &reps {
        let cover = torsor_act(xm, hd, &delta.h2p, tau, &base)?;
        verify_cover_diagram(xm, hd, &cover)?;
        let class = cover_class_in_base(xm, hd, &cover, h2g)?;
        if seen_classes.contains(&class) {
            return Err(Error::InternalInconsistency(
                "two representatives share a base-extension class".into(),
            ));
        }
        seen_classes.push(class);
        representatives.push(cover);
    }

    Ok(CoverClassification {
        h2: delta.h2p,
        delta_generators: delta.generators,
        representatives,
        class_count,
        embedded_count: h2_order,
    })
}
