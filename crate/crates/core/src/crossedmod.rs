//! Finite crossed modules `boundary: T -> G` with a G-action on T:
//! validation of the axioms, extraction of the homotopy invariants
//! `P = coker(boundary)` and `A = ker(boundary)` with the induced
//! P-action, and the lifted factor set (eta, eta_dot) attached to a
//! set-theoretic section of `G -> P`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{AxiomKind, Error, Result};
use crate::group::{quotient, FiniteGroup, GroupHom};
use crate::matrix::{smith, IntMatrix};
use crate::module::{AbelianElement, FgAbelianModule, ModuleShape};

#[derive(Clone, PartialEq, Eq)]
pub struct CrossedModule {
    t: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    boundary: GroupHom,
    action: Vec<Vec<usize>>,
}

impl CrossedModule {
    /// Validate the crossed-module axioms on raw data.
    ///
    /// The checks are exhaustive: each `action[g]` must be an automorphism
    /// of T, the action must be a homomorphism, the boundary must be
    /// equivariant, and the Peiffer identity must hold. Normality of the
    /// boundary image and centrality of its kernel follow from these and
    /// are re-verified as internal consistency.
    pub fn new(
        t: Arc<FiniteGroup>,
        g: Arc<FiniteGroup>,
        boundary_map: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let boundary = GroupHom::new(Arc::clone(&t), Arc::clone(&g), boundary_map)?;
        if action.len() != g.order() {
            return Err(Error::DimensionMismatch(
                "need one action permutation per element of G".into(),
            ));
        }

        for (gi, perm) in action.iter().enumerate() {
            if perm.len() != t.order() || perm.iter().any(|&x| x >= t.order()) {
                return Err(Error::DimensionMismatch(format!(
                    "action[{gi}] is not a map on T's indices"
                )));
            }
            let mut seen = vec![false; t.order()];
            for &x in perm {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::AxiomViolation {
                        kind: AxiomKind::NotAutomorphism,
                        witness: (gi, x),
                    });
                }
            }
            for x in t.elements() {
                for y in t.elements() {
                    if perm[t.mul(x, y)] != t.mul(perm[x], perm[y]) {
                        return Err(Error::AxiomViolation {
                            kind: AxiomKind::NotAutomorphism,
                            witness: (gi, x),
                        });
                    }
                }
            }
        }

        let e = g.identity();
        if action[e].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::AxiomViolation {
                kind: AxiomKind::NotAction,
                witness: (e, e),
            });
        }
        for gi in g.elements() {
            for gj in g.elements() {
                let gij = g.mul(gi, gj);
                for x in t.elements() {
                    if action[gij][x] != action[gi][action[gj][x]] {
                        return Err(Error::AxiomViolation {
                            kind: AxiomKind::NotAction,
                            witness: (gi, gj),
                        });
                    }
                }
            }
        }

        for gi in g.elements() {
            for x in t.elements() {
                if boundary.apply(action[gi][x]) != g.conjugate(gi, boundary.apply(x)) {
                    return Err(Error::AxiomViolation {
                        kind: AxiomKind::Equivariance,
                        witness: (gi, x),
                    });
                }
            }
        }

        for x in t.elements() {
            let bx = boundary.apply(x);
            for y in t.elements() {
                if action[bx][y] != t.mul(t.mul(x, y), t.inv(x)) {
                    return Err(Error::AxiomViolation {
                        kind: AxiomKind::Peiffer,
                        witness: (x, y),
                    });
                }
            }
        }

        let xm = CrossedModule {
            t,
            g,
            boundary,
            action,
        };
        xm.check_derived_properties()?;
        Ok(xm)
    }

    /// Image normal in G and kernel central in T are consequences of the
    /// axioms; failure here means corrupted state, not bad input.
    fn check_derived_properties(&self) -> Result<()> {
        let image = self.boundary.image();
        for &x in &image {
            for gi in self.g.elements() {
                if image.binary_search(&self.g.conjugate(gi, x)).is_err() {
                    return Err(Error::InternalInconsistency(
                        "boundary image is not normal".into(),
                    ));
                }
            }
        }
        for a in self.kernel_elements() {
            for y in self.t.elements() {
                if self.t.mul(a, y) != self.t.mul(y, a) {
                    return Err(Error::InternalInconsistency(
                        "boundary kernel is not central".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn t(&self) -> &Arc<FiniteGroup> {
        &self.t
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// `g . t` through the structure action.
    pub fn act(&self, g: usize, t: usize) -> usize {
        self.action[g][t]
    }

    pub fn kernel_elements(&self) -> Vec<usize> {
        self.boundary.kernel_elements()
    }
}

impl std::fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CrossedModule(T order {}, G order {})",
            self.t.order(),
            self.g.order()
        )
    }
}

/// The homotopy invariants of a crossed module: the component group
/// `P = G / im(boundary)` with a section, and the fundamental module
/// `A = ker(boundary)` in invariant-factor coordinates with its induced
/// P-action.
#[derive(Clone, Debug)]
pub struct HomotopyData {
    p: Arc<FiniteGroup>,
    projection: GroupHom,
    section: Vec<usize>,
    module: Arc<FgAbelianModule>,
    /// sorted T-indices of the kernel
    kernel: Vec<usize>,
    /// canonical A-coordinates per kernel element (parallel to `kernel`)
    kernel_coords: Vec<Vec<BigInt>>,
    /// T-index realizing each module generator
    generator_elements: Vec<usize>,
}

impl HomotopyData {
    pub fn p(&self) -> &Arc<FiniteGroup> {
        &self.p
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn module(&self) -> &Arc<FgAbelianModule> {
        &self.module
    }

    pub fn kernel_elements(&self) -> &[usize] {
        &self.kernel
    }

    pub fn generator_elements(&self) -> &[usize] {
        &self.generator_elements
    }

    /// A-coordinates of a kernel element of T; None off the kernel.
    pub fn coords_of(&self, t_index: usize) -> Option<AbelianElement> {
        let pos = self.kernel.binary_search(&t_index).ok()?;
        Some(AbelianElement {
            coords: self.kernel_coords[pos].clone(),
        })
    }

    /// The kernel element realizing given A-coordinates.
    pub fn embed(&self, e: &AbelianElement, t: &FiniteGroup) -> usize {
        let coords = self.module.shape().reduced(e.coords.clone());
        let mut acc = t.identity();
        for (j, k) in coords.iter().enumerate() {
            let gen = self.generator_elements[j];
            let o = BigInt::from(t.element_order(gen));
            let exp = k.mod_floor(&o).to_usize().expect("exponent fits usize");
            acc = t.mul(acc, t.pow(gen, exp));
        }
        acc
    }
}

/// Invariant-factor presentation of a finite abelian subgroup given by
/// sorted element indices of `parent`: the shape, canonical coordinates
/// per element, and a realizing element per generator.
pub(crate) fn abelian_subgroup_presentation(
    parent: &FiniteGroup,
    elements: &[usize],
) -> Result<(ModuleShape, Vec<Vec<BigInt>>, Vec<usize>)> {
    let k = elements.len();
    let pos = |x: usize| {
        elements
            .binary_search(&x)
            .expect("subset closed under multiplication")
    };
    // present on all k elements with relations e_i + e_j - e_{i*j}
    let mut rel_cols: Vec<Vec<BigInt>> = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut col = vec![BigInt::zero(); k];
            col[i] += 1;
            col[j] += 1;
            col[pos(parent.mul(elements[i], elements[j]))] -= 1;
            rel_cols.push(col);
        }
    }
    let rel = IntMatrix::from_columns(k, &rel_cols);
    let s = smith(&rel);
    let diag = s.diagonal();

    let mut torsion_pos: Vec<(usize, BigInt)> = Vec::new();
    for i in 0..k {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            return Err(Error::InternalInconsistency(
                "finite subgroup presented with a free part".into(),
            ));
        }
        if !d.is_one() {
            torsion_pos.push((i, d));
        }
    }
    let shape = ModuleShape::new(0, torsion_pos.iter().map(|(_, d)| d.clone()).collect())?;

    // coordinates of element i: kept rows of U e_i, reduced
    let mut coords = Vec::with_capacity(k);
    for i in 0..k {
        let col = s.u.col(i);
        let c: Vec<BigInt> = torsion_pos
            .iter()
            .map(|(row, d)| col[*row].mod_floor(d))
            .collect();
        coords.push(c);
    }

    // element realizing generator j: product over elements[i]^(u_inv column)
    let mut gens = Vec::with_capacity(torsion_pos.len());
    for (row, _) in &torsion_pos {
        let a = s.u_inv.col(*row);
        let mut acc = parent.identity();
        for (i, coeff) in a.iter().enumerate() {
            let o = BigInt::from(parent.element_order(elements[i]));
            let exp = coeff.mod_floor(&o).to_usize().expect("small exponent");
            acc = parent.mul(acc, parent.pow(elements[i], exp));
        }
        gens.push(acc);
    }

    let total: BigInt = shape.torsion.iter().product();
    if total != BigInt::from(k) {
        return Err(Error::InternalInconsistency(format!(
            "presentation order {total} does not match subgroup order {k}"
        )));
    }
    Ok((shape, coords, gens))
}

/// Homotopy data with the canonical least-index section.
pub fn homotopy_data(xm: &CrossedModule) -> Result<HomotopyData> {
    let (_, _, section) = quotient(xm.g(), &xm.boundary().image())?;
    homotopy_data_with_section(xm, section)
}

/// Homotopy data with a caller-supplied section of `G -> P` (used for
/// choice-independence runs). The section must pick one representative
/// per coset and send identity to identity.
pub fn homotopy_data_with_section(xm: &CrossedModule, section: Vec<usize>) -> Result<HomotopyData> {
    let (p, projection, _) = quotient(xm.g(), &xm.boundary().image())?;
    let p = Arc::new(p);
    if section.len() != p.order() {
        return Err(Error::DimensionMismatch("section arity mismatch".into()));
    }
    for (f, &rep) in section.iter().enumerate() {
        if projection.apply(rep) != f {
            return Err(Error::BadModule(format!(
                "section({f}) = {rep} lies in the wrong coset"
            )));
        }
    }
    if section[projection.apply(xm.g().identity())] != xm.g().identity() {
        return Err(Error::BadModule("section must fix the identity".into()));
    }

    let kernel = xm.kernel_elements();
    let (shape, kernel_coords, generator_elements) =
        abelian_subgroup_presentation(xm.t(), &kernel)?;

    // induced P-action: act by the section representative through the
    // structure action of G on T
    let w = shape.width();
    let coord_of = |t_index: usize| -> Vec<BigInt> {
        let pos = kernel
            .binary_search(&t_index)
            .expect("kernel is closed under the action");
        kernel_coords[pos].clone()
    };
    let mut matrices = Vec::with_capacity(p.order());
    for f in p.elements() {
        let rep = section[f];
        let mut m = IntMatrix::zero(w, w);
        for (j, &gen) in generator_elements.iter().enumerate() {
            let img = xm.act(rep, gen);
            for (i, c) in coord_of(img).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        matrices.push(m);
    }
    let module = Arc::new(FgAbelianModule::new(shape, Arc::clone(&p), matrices)?);

    Ok(HomotopyData {
        p,
        projection,
        section,
        module,
        kernel,
        kernel_coords,
        generator_elements,
    })
}

/// A uniformly random section (identity fixed), for seeded re-choice runs.
pub fn random_section(xm: &CrossedModule, rng: &mut impl Rng) -> Result<Vec<usize>> {
    let (p, projection, _) = quotient(xm.g(), &xm.boundary().image())?;
    let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in xm.g().elements() {
        fibers.entry(projection.apply(x)).or_default().push(x);
    }
    let mut section = vec![0usize; p.order()];
    for (f, fiber) in fibers {
        section[f] = fiber[rng.gen_range(0..fiber.len())];
    }
    section[projection.apply(xm.g().identity())] = xm.g().identity();
    Ok(section)
}

/// The factor set of a section together with a normalized lift through
/// the boundary: `eta(f,g) = s(f) s(g) s(fg)^{-1}` in G, and a T-valued
/// `eta_dot` with `boundary(eta_dot(f,g)) = eta(f,g)` and
/// `eta_dot(f,1) = eta_dot(1,g) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaData {
    pub eta: Vec<Vec<usize>>,
    pub eta_dot: Vec<Vec<usize>>,
}

fn eta_table(xm: &CrossedModule, hd: &HomotopyData) -> Vec<Vec<usize>> {
    let p = hd.p();
    let g = xm.g();
    let s = hd.section();
    let mut eta = vec![vec![0usize; p.order()]; p.order()];
    for f in p.elements() {
        for h in p.elements() {
            let fh = p.mul(f, h);
            eta[f][h] = g.mul(g.mul(s[f], s[h]), g.inv(s[fh]));
        }
    }
    eta
}

/// Canonical lift: least T-index preimage, normalized pairs sent to 1.
pub fn lift_eta(xm: &CrossedModule, hd: &HomotopyData) -> Result<EtaData> {
    lift_eta_with(xm, hd, |preimages, _, _| preimages[0])
}

/// Uniformly random normalized lift.
pub fn random_lift(xm: &CrossedModule, hd: &HomotopyData, rng: &mut impl Rng) -> Result<EtaData> {
    let p_ord = hd.p().order();
    let picks: Vec<usize> = (0..p_ord * p_ord).map(|_| rng.gen()).collect();
    lift_eta_with(xm, hd, move |preimages, f, g| {
        preimages[picks[f * p_ord + g] % preimages.len()]
    })
}

/// Lift with a caller-controlled choice among the boundary preimages.
pub fn lift_eta_with(
    xm: &CrossedModule,
    hd: &HomotopyData,
    choose: impl Fn(&[usize], usize, usize) -> usize,
) -> Result<EtaData> {
    let eta = eta_table(xm, hd);
    let p = hd.p();
    let e_p = p.identity();

    let mut preimages: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in xm.t().elements() {
        preimages.entry(xm.boundary().apply(t)).or_default().push(t);
    }

    let mut eta_dot = vec![vec![0usize; p.order()]; p.order()];
    for f in p.elements() {
        for g in p.elements() {
            if f == e_p || g == e_p {
                eta_dot[f][g] = xm.t().identity();
                continue;
            }
            let fiber = preimages
                .get(&eta[f][g])
                .ok_or(Error::LiftImpossible { f, g })?;
            eta_dot[f][g] = choose(fiber, f, g);
        }
    }
    Ok(EtaData { eta, eta_dot })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::SeedableRng;

    fn z4_times2() -> CrossedModule {
        catalog::build("z4_times2").unwrap()
    }

    fn z4_zero_negation() -> CrossedModule {
        catalog::build("z4_zero_negation").unwrap()
    }

    #[test]
    fn validates_basic_instances() {
        let t1 = Arc::new(FiniteGroup::trivial());
        let g = Arc::new(FiniteGroup::symmetric3());
        let triv = CrossedModule::new(t1, Arc::clone(&g), vec![g.identity()], vec![vec![0]; 6]);
        assert!(triv.is_ok());
        z4_times2();
        z4_zero_negation();
    }

    #[test]
    fn rejects_axiom_violations() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        // identity boundary with an inversion action: Peiffer fails
        // (image must act by conjugation, which is trivial on abelian T)
        let bad = CrossedModule::new(
            Arc::clone(&z3),
            Arc::clone(&z3),
            vec![0, 1, 2],
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]],
        );
        assert!(matches!(
            bad,
            Err(Error::AxiomViolation { .. }) | Err(Error::BadModule(_))
        ));

        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        // shift is not an automorphism of Z/4
        let bad = CrossedModule::new(
            Arc::clone(&z4),
            Arc::clone(&z2),
            vec![0, 0, 0, 0],
            vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0]],
        );
        assert!(matches!(
            bad,
            Err(Error::AxiomViolation {
                kind: AxiomKind::NotAutomorphism,
                ..
            })
        ));

        // negation twice is the identity, but order-4 "action" of Z/2 fails
        // the homomorphism law: use the 4-cycle automorphism of Z/2 x Z/2
        let v4 = Arc::new(FiniteGroup::klein());
        let cycle3 = vec![0, 2, 3, 1]; // an order-3 automorphism of V4
        let bad = CrossedModule::new(
            Arc::clone(&v4),
            Arc::clone(&z2),
            vec![0, 0, 0, 0],
            vec![vec![0, 1, 2, 3], cycle3],
        );
        assert!(matches!(
            bad,
            Err(Error::AxiomViolation {
                kind: AxiomKind::NotAction,
                ..
            })
        ));
    }

    #[test]
    fn homotopy_of_z4_times2() {
        let xm = z4_times2();
        let hd = homotopy_data(&xm).unwrap();
        assert_eq!(hd.p().order(), 2);
        assert_eq!(
            hd.module().shape(),
            &ModuleShape::from_i64(0, &[2]).unwrap()
        );
        assert_eq!(hd.kernel_elements(), &[0, 2]);
        assert!(hd.module().action_matrix(1).is_identity());
    }

    #[test]
    fn homotopy_of_zero_map_negation() {
        let xm = z4_zero_negation();
        let hd = homotopy_data(&xm).unwrap();
        assert_eq!(hd.p().order(), 2);
        assert_eq!(
            hd.module().shape(),
            &ModuleShape::from_i64(0, &[4]).unwrap()
        );
        // sign action on Z/4
        let a = AbelianElement::from_i64(&[1]);
        assert_eq!(hd.module().act(1, &a), AbelianElement::from_i64(&[3]));
    }

    #[test]
    fn trivial_t_gives_p_equals_g() {
        let t1 = Arc::new(FiniteGroup::trivial());
        let g = Arc::new(FiniteGroup::symmetric3());
        let xm =
            CrossedModule::new(t1, Arc::clone(&g), vec![g.identity()], vec![vec![0]; 6]).unwrap();
        let hd = homotopy_data(&xm).unwrap();
        assert_eq!(hd.p().order(), 6);
        assert!(hd.module().shape().is_trivial());
    }

    #[test]
    fn eta_of_z4_times2() {
        let xm = z4_times2();
        let hd = homotopy_data(&xm).unwrap();
        let ed = lift_eta(&xm, &hd).unwrap();
        // section is 0 -> 0, sigma -> 1; eta(sigma,sigma) = 1+1-0 = 2
        assert_eq!(ed.eta[1][1], 2);
        // canonical lift: least preimage of 2 under doubling is 1
        assert_eq!(ed.eta_dot[1][1], 1);
        for f in 0..2 {
            assert_eq!(ed.eta_dot[f][0], 0);
            assert_eq!(ed.eta_dot[0][f], 0);
            assert_eq!(ed.eta[f][0], 0);
            assert_eq!(ed.eta[0][f], 0);
        }
    }

    #[test]
    fn eta_nonabelian_cocycle_identity() {
        for xm in [z4_times2(), z4_zero_negation()] {
            let hd = homotopy_data(&xm).unwrap();
            let ed = lift_eta(&xm, &hd).unwrap();
            let p = hd.p();
            let g = xm.g();
            for f in p.elements() {
                for h in p.elements() {
                    for k in p.elements() {
                        let lhs = g.mul(
                            g.conjugate(hd.section()[f], ed.eta[h][k]),
                            ed.eta[f][p.mul(h, k)],
                        );
                        let rhs = g.mul(ed.eta[f][h], ed.eta[p.mul(f, h)][k]);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn action_independent_of_section() {
        let xm = z4_zero_negation();
        let hd = homotopy_data(&xm).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let s = random_section(&xm, &mut rng).unwrap();
            let hd2 = homotopy_data_with_section(&xm, s).unwrap();
            for p in hd.p().elements() {
                assert_eq!(
                    hd.module().action_matrix(p),
                    hd2.module().action_matrix(p),
                    "induced action must not depend on the section"
                );
            }
        }
    }

    #[test]
    fn boundary_of_lift_is_eta_for_random_lifts() {
        let xm = z4_times2();
        let hd = homotopy_data(&xm).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let ed = random_lift(&xm, &hd, &mut rng).unwrap();
            for f in hd.p().elements() {
                for g in hd.p().elements() {
                    assert_eq!(xm.boundary().apply(ed.eta_dot[f][g]), ed.eta[f][g]);
                }
            }
        }
    }

    #[test]
    fn kernel_presentation_bijective() {
        let xm = z4_zero_negation();
        let hd = homotopy_data(&xm).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for &t in hd.kernel_elements() {
            let c = hd.coords_of(t).unwrap();
            assert_eq!(hd.embed(&c, xm.t()), t, "embed inverts coords");
            seen.insert(c);
        }
        assert_eq!(seen.len(), hd.kernel_elements().len());
    }
}
