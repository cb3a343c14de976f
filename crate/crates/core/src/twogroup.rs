//! The strict 2-group attached to a crossed module: one object, the
//! elements of G as 1-morphisms, pairs `(t, x): x -> boundary(t) x` as
//! 2-morphisms, horizontal and vertical composition, skeletality tests,
//! and the associator 3-cocycle of the skeletalization.

use crate::cohomology::Cochain;
use crate::crossedmod::{CrossedModule, EtaData, HomotopyData};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A 2-morphism `t: x -> boundary(t) * x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoMorphism {
    pub t: usize,
    pub x: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionMode {
    Horizontal,
    Vertical,
}

/// Thin view of a crossed module as its strict 2-group.
pub struct TwoGroup<'a> {
    xm: &'a CrossedModule,
}

impl<'a> TwoGroup<'a> {
    pub fn new(xm: &'a CrossedModule) -> Self {
        TwoGroup { xm }
    }

    pub fn crossed_module(&self) -> &CrossedModule {
        self.xm
    }

    pub fn source(&self, m: TwoMorphism) -> usize {
        m.x
    }

    pub fn target(&self, m: TwoMorphism) -> usize {
        self.xm.g().mul(self.xm.boundary().apply(m.t), m.x)
    }

    pub fn identity_two_morphism(&self, x: usize) -> TwoMorphism {
        TwoMorphism {
            t: self.xm.t().identity(),
            x,
        }
    }

    /// Non-emptiness of the morphism set between two 1-morphisms:
    /// `y x^{-1}` must lie in the boundary image.
    pub fn hom_nonempty(&self, x: usize, y: usize) -> bool {
        let g = self.xm.g();
        let d = g.mul(y, g.inv(x));
        self.xm.boundary().image().binary_search(&d).is_ok()
    }

    /// Path-order vertical composition: `a` then `b`, requiring
    /// `target(a) = source(b)`; `(t,x) . (t', dx) = (t' t, x)`.
    pub fn vertical(&self, a: TwoMorphism, b: TwoMorphism) -> Result<TwoMorphism> {
        if self.target(a) != self.source(b) {
            return Err(Error::NotComposable {
                mode: "vertical",
                lhs_target: self.target(a),
                rhs_source: self.source(b),
            });
        }
        Ok(TwoMorphism {
            t: self.xm.t().mul(b.t, a.t),
            x: a.x,
        })
    }

    /// Horizontal composition `(t,x) (s,x') = (t * (x . s), x x')`.
    pub fn horizontal(&self, a: TwoMorphism, b: TwoMorphism) -> TwoMorphism {
        TwoMorphism {
            t: self.xm.t().mul(a.t, self.xm.act(a.x, b.t)),
            x: self.xm.g().mul(a.x, b.x),
        }
    }

    pub fn compose(
        &self,
        a: TwoMorphism,
        b: TwoMorphism,
        mode: CompositionMode,
    ) -> Result<TwoMorphism> {
        match mode {
            CompositionMode::Vertical => self.vertical(a, b),
            CompositionMode::Horizontal => Ok(self.horizontal(a, b)),
        }
    }

    pub fn vertical_inverse(&self, a: TwoMorphism) -> TwoMorphism {
        TwoMorphism {
            t: self.xm.t().inv(a.t),
            x: self.target(a),
        }
    }

    pub fn horizontal_inverse(&self, a: TwoMorphism) -> TwoMorphism {
        let g = self.xm.g();
        let xinv = g.inv(a.x);
        TwoMorphism {
            t: self.xm.act(xinv, self.xm.t().inv(a.t)),
            x: xinv,
        }
    }

    /// Strictness, asserted by exhaustively checking associativity,
    /// identity, and inverses of the horizontal structure on 1-morphisms.
    pub fn is_strict(&self) -> bool {
        let g = self.xm.g();
        let e = g.identity();
        for x in g.elements() {
            if g.mul(x, e) != x || g.mul(e, x) != x {
                return false;
            }
            if g.mul(x, g.inv(x)) != e || g.mul(g.inv(x), x) != e {
                return false;
            }
            for y in g.elements() {
                for z in g.elements() {
                    if g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Skeletal iff every 2-morphism is an endomorphism, i.e. the
    /// boundary is trivial.
    pub fn is_skeletal(&self) -> bool {
        self.skeletal_witness().is_none()
    }

    /// A 2-morphism with distinct source and target, if one exists.
    pub fn skeletal_witness(&self) -> Option<TwoMorphism> {
        let e = self.xm.g().identity();
        for t in self.xm.t().elements() {
            if self.xm.boundary().apply(t) != e {
                return Some(TwoMorphism { t, x: e });
            }
        }
        None
    }
}

/// The skeletalization data: the associator 3-cocycle over P with values
/// in A, carrying the component group and fundamental module through the
/// cochain's base and coefficients.
#[derive(Clone, Debug)]
pub struct SkeletalData {
    pub theta: Cochain,
}

impl SkeletalData {
    pub fn new(theta: Cochain) -> Self {
        SkeletalData { theta }
    }
}

/// Build the associator cocycle of the skeletalization attached to a
/// section and lift: for each triple, the vertical composite
/// `phi(f,gh) . (1_f <> phi(g,h)) . (phi(f,g) <> 1_h)^-1 . phi(fg,h)^-1`
/// with `phi(f,g) = (eta_dot(f,g), s(fg))`, an endomorphism of `s(fgh)`
/// whose T-part lies in the kernel and is read off in A-coordinates.
pub fn skeletalize(xm: &CrossedModule, hd: &HomotopyData, ed: &EtaData) -> Result<SkeletalData> {
    let tg = TwoGroup::new(xm);
    let p = hd.p();
    let s = hd.section();
    let e_p = p.identity();

    let phi = |f: usize, h: usize| TwoMorphism {
        t: ed.eta_dot[f][h],
        x: s[p.mul(f, h)],
    };

    let mut theta = Cochain::zero(p, hd.module(), 3);
    for f in p.elements() {
        for h in p.elements() {
            for k in p.elements() {
                if f == e_p || h == e_p || k == e_p {
                    continue;
                }
                let a1 = phi(f, p.mul(h, k));
                let a2 = tg.horizontal(tg.identity_two_morphism(s[f]), phi(h, k));
                let a3 = tg.vertical_inverse(tg.horizontal(phi(f, h), tg.identity_two_morphism(s[k])));
                let a4 = tg.vertical_inverse(phi(p.mul(f, h), k));
                let composite = tg.vertical(tg.vertical(tg.vertical(a1, a2)?, a3)?, a4)?;

                let fhk = p.mul(p.mul(f, h), k);
                if composite.x != s[fhk] {
                    return Err(Error::InternalInconsistency(
                        "associator does not start at the canonical 1-morphism".into(),
                    ));
                }
                if tg.target(composite) != composite.x {
                    return Err(Error::InternalInconsistency(
                        "associator is not an endomorphism".into(),
                    ));
                }
                let coords = hd.coords_of(composite.t).ok_or_else(|| {
                    Error::InternalInconsistency(
                        "associator value escapes the boundary kernel".into(),
                    )
                })?;
                theta.set_value(&[f, h, k], coords);
            }
        }
    }

    let sd = SkeletalData { theta };
    if !pentagon_check(&sd) {
        return Err(Error::InternalInconsistency(
            "associator fails the pentagon/cocycle condition".into(),
        ));
    }
    Ok(sd)
}

/// Pentagon condition for the associator, in the equivalent form
/// `d(theta) = 0`.
pub fn pentagon_check(sd: &SkeletalData) -> bool {
    pentagon_violation(sd).is_none()
}

/// First quadruple violating the pentagon condition, if any.
pub fn pentagon_violation(sd: &SkeletalData) -> Option<Vec<usize>> {
    sd.theta.cocycle_violation()
}

/// The action of P on A computed 2-group-theoretically, by whiskering an
/// endomorphism of the identity 1-morphism with a representative
/// 1-morphism and its inverse. Returns one matrix per element of P, in
/// the same coordinates as `hd.module()`.
pub fn pi0_pi1_action(xm: &CrossedModule, hd: &HomotopyData) -> Result<Vec<IntMatrix>> {
    let tg = TwoGroup::new(xm);
    let g = xm.g();
    let w = hd.module().width();
    let mut out = Vec::with_capacity(hd.p().order());
    for p in hd.p().elements() {
        let rep = hd.section()[p];
        let mut m = IntMatrix::zero(w, w);
        for (j, &gen) in hd.generator_elements().iter().enumerate() {
            let loop_2m = TwoMorphism {
                t: gen,
                x: g.identity(),
            };
            let left = tg.horizontal(tg.identity_two_morphism(rep), loop_2m);
            let conj = tg.horizontal(left, tg.identity_two_morphism(g.inv(rep)));
            if tg.source(conj) != g.identity() || tg.target(conj) != g.identity() {
                return Err(Error::InternalInconsistency(
                    "conjugated loop is not an endomorphism of the identity".into(),
                ));
            }
            let coords = hd.coords_of(conj.t).ok_or_else(|| {
                Error::InternalInconsistency("conjugated loop escapes the kernel".into())
            })?;
            for (i, c) in coords.coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::crossedmod::{homotopy_data, lift_eta, lift_eta_with};
    use crate::module::AbelianElement;

    #[test]
    fn composition_conventions() {
        let xm = catalog::build("z4_times2").unwrap();
        let tg = TwoGroup::new(&xm);

        // identity 2-morphisms are neutral both ways
        let m = TwoMorphism { t: 1, x: 3 };
        let id_src = tg.identity_two_morphism(tg.source(m));
        let id_tgt = tg.identity_two_morphism(tg.target(m));
        assert_eq!(tg.vertical(id_src, m).unwrap(), m);
        assert_eq!(tg.vertical(m, id_tgt).unwrap(), m);
        let e = tg.identity_two_morphism(xm.g().identity());
        assert_eq!(tg.horizontal(e, m), m);
        assert_eq!(tg.horizontal(m, e), m);

        // (1,0) . (1,2): target(1,0) = boundary(1)+0 = 2 = source(1,2),
        // vertical composite multiplies in T with the later factor left
        let a = TwoMorphism { t: 1, x: 0 };
        let b = TwoMorphism { t: 1, x: 2 };
        let c = tg.vertical(a, b).unwrap();
        assert_eq!(c, TwoMorphism { t: 2, x: 0 });
        assert_eq!(tg.target(c), 0, "composite is an endomorphism of 0");

        // horizontal with trivial action adds both coordinates
        let h = tg.horizontal(TwoMorphism { t: 1, x: 1 }, TwoMorphism { t: 2, x: 3 });
        assert_eq!(h, TwoMorphism { t: 3, x: 0 });

        // vertical inverse
        let vi = tg.vertical_inverse(a);
        assert_eq!(tg.vertical(a, vi).unwrap(), tg.identity_two_morphism(0));
        // horizontal inverse
        let hi = tg.horizontal_inverse(m);
        let e2 = tg.horizontal(m, hi);
        assert_eq!(e2, tg.identity_two_morphism(xm.g().identity()));

        // non-composable pair is rejected: target(a) = 2 but source = 1
        assert!(matches!(
            tg.vertical(a, TwoMorphism { t: 0, x: 1 }),
            Err(Error::NotComposable { .. })
        ));
    }

    #[test]
    fn interchange_law_exhaustive() {
        for name in ["z4_times2", "z4_zero_negation", "semidirect_z3_z2"] {
            let xm = catalog::build(name).unwrap();
            let tg = TwoGroup::new(&xm);
            let t_ord = xm.t().order();
            let g_ord = xm.g().order();
            for ta in 0..t_ord {
                for xa in 0..g_ord {
                    let a = TwoMorphism { t: ta, x: xa };
                    for tb in 0..t_ord {
                        let b = TwoMorphism {
                            t: tb,
                            x: tg.target(a),
                        };
                        for tc in 0..t_ord {
                            for xc in 0..g_ord {
                                let c = TwoMorphism { t: tc, x: xc };
                                for td in 0..t_ord {
                                    let d = TwoMorphism {
                                        t: td,
                                        x: tg.target(c),
                                    };
                                    let lhs = tg.horizontal(
                                        tg.vertical(a, b).unwrap(),
                                        tg.vertical(c, d).unwrap(),
                                    );
                                    let rhs = tg
                                        .vertical(tg.horizontal(a, c), tg.horizontal(b, d))
                                        .unwrap();
                                    assert_eq!(lhs, rhs, "interchange fails in {name}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn strict_and_skeletal_predicates() {
        let xm = catalog::build("z4_zero_negation").unwrap();
        let tg = TwoGroup::new(&xm);
        assert!(tg.is_strict());
        assert!(tg.is_skeletal(), "zero boundary is skeletal");

        let xm = catalog::build("z4_times2").unwrap();
        let tg = TwoGroup::new(&xm);
        assert!(tg.is_strict());
        assert!(!tg.is_skeletal());
        let w = tg.skeletal_witness().unwrap();
        assert_ne!(tg.source(w), tg.target(w));

        assert!(tg.hom_nonempty(0, 2));
        assert!(!tg.hom_nonempty(0, 1));
    }

    #[test]
    fn skeletalize_z4_times2_is_zero_for_both_lifts() {
        let xm = catalog::build("z4_times2").unwrap();
        let hd = homotopy_data(&xm).unwrap();
        for pick in [0usize, 1] {
            let ed = lift_eta_with(&xm, &hd, |pre, _, _| pre[pick.min(pre.len() - 1)]).unwrap();
            let sd = skeletalize(&xm, &hd, &ed).unwrap();
            assert!(sd.theta.is_zero(), "lift choice {pick}");
        }
    }

    #[test]
    fn skeletalize_split_section_is_zero() {
        let xm = catalog::build("semidirect_z3_z2").unwrap();
        let hd = homotopy_data(&xm).unwrap();
        let ed = lift_eta(&xm, &hd).unwrap();
        // the canonical section is a homomorphism here, so all phi are identities
        assert!(ed.eta.iter().flatten().all(|&x| x == xm.g().identity()));
        let sd = skeletalize(&xm, &hd, &ed).unwrap();
        assert!(sd.theta.is_zero());
    }

    #[test]
    fn pentagon_detects_corruption() {
        let xm = catalog::build("z2_zero_trivial").unwrap();
        let hd = homotopy_data(&xm).unwrap();
        let ed = lift_eta(&xm, &hd).unwrap();
        let sd = skeletalize(&xm, &hd, &ed).unwrap();
        assert!(pentagon_check(&sd));

        // the nontrivial 3-cocycle still passes (it is a cocycle)
        let mut theta = Cochain::zero(hd.p(), hd.module(), 3);
        theta.set_value(&[1, 1, 1], AbelianElement::from_i64(&[1]));
        assert!(pentagon_check(&SkeletalData::new(theta)));

        // a hand-corrupted non-cocycle: over P = Z/3 with A = Z/3 the
        // single value c(1,1,1) = 1 has (dc)(1,1,1,1) = 2 != 0
        let p3 = std::sync::Arc::new(crate::group::FiniteGroup::cyclic(3));
        let a3 = std::sync::Arc::new(crate::module::FgAbelianModule::with_trivial_action(
            crate::module::ModuleShape::from_i64(0, &[3]).unwrap(),
            std::sync::Arc::clone(&p3),
        ));
        let mut bad = Cochain::zero(&p3, &a3, 3);
        bad.set_value(&[1, 1, 1], AbelianElement::from_i64(&[1]));
        let corrupted = SkeletalData::new(bad);
        assert!(!pentagon_check(&corrupted));
        assert_eq!(pentagon_violation(&corrupted), Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn two_group_action_matches_module_action() {
        for name in ["z4_times2", "z4_zero_negation", "semidirect_z3_z2", "trivial"] {
            let xm = catalog::build(name).unwrap();
            let hd = homotopy_data(&xm).unwrap();
            let mats = pi0_pi1_action(&xm, &hd).unwrap();
            for p in hd.p().elements() {
                assert!(
                    hd.module().maps_equal(&mats[p], hd.module().action_matrix(p)),
                    "{name}: action mismatch at {p}"
                );
            }
        }
    }
}
