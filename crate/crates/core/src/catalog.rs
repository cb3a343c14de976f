//! Built-in crossed-module instances used across the test suites and the
//! CLI, an inventory of all groups of order <= 8, and the exhaustive
//! search for instances with nonvanishing obstruction class.

use std::sync::Arc;

use crate::crossedmod::CrossedModule;
use crate::error::{Error, Result};
use crate::group::{automorphisms, enumerate_homs, FiniteGroup};

/// Names of the built-in instances, in catalog order.
pub const NAMES: &[&str] = &[
    "trivial",
    "direct_z3_z2",
    "semidirect_z3_z2",
    "z4_times2",
    "z4_zero_negation",
    "z2_zero_trivial",
    "z2_into_z4",
    "s3_trivial_kernel",
];

pub fn descriptions() -> Vec<(&'static str, &'static str)> {
    vec![
        ("trivial", "T = 1, G = 1: the empty case"),
        (
            "direct_z3_z2",
            "T = Z/3 -> G = Z/2 zero boundary, trivial action: covers are direct products",
        ),
        (
            "semidirect_z3_z2",
            "T = Z/3 -> G = Z/2 zero boundary, inversion action: covers are semidirect products",
        ),
        (
            "z4_times2",
            "T = Z/4 -> G = Z/4 doubling: P = Z/2, A = Z/2, cover is Z/8",
        ),
        (
            "z4_zero_negation",
            "T = Z/4 -> G = Z/2 zero boundary, negation action: A = Z/4 with sign action",
        ),
        (
            "z2_zero_trivial",
            "T = Z/2 -> G = Z/2 zero boundary, trivial action: the Z/4-versus-Klein cover pair",
        ),
        (
            "z2_into_z4",
            "T = Z/2 embedded in G = Z/4: trivial fundamental module",
        ),
        (
            "s3_trivial_kernel",
            "T = 1, G = S3: nonabelian component group",
        ),
    ]
}

/// Build a named instance.
pub fn build(name: &str) -> Result<CrossedModule> {
    let trivial_action = |g: &FiniteGroup, t: &FiniteGroup| -> Vec<Vec<usize>> {
        vec![t.elements().collect(); g.order()]
    };
    match name {
        "trivial" => {
            let one = Arc::new(FiniteGroup::trivial());
            CrossedModule::new(Arc::clone(&one), Arc::clone(&one), vec![0], vec![vec![0]])
        }
        "direct_z3_z2" => {
            let z3 = Arc::new(FiniteGroup::cyclic(3));
            let z2 = Arc::new(FiniteGroup::cyclic(2));
            let act = trivial_action(&z2, &z3);
            CrossedModule::new(z3, z2, vec![0, 0, 0], act)
        }
        "semidirect_z3_z2" => {
            let z3 = Arc::new(FiniteGroup::cyclic(3));
            let z2 = Arc::new(FiniteGroup::cyclic(2));
            CrossedModule::new(
                z3,
                z2,
                vec![0, 0, 0],
                vec![vec![0, 1, 2], vec![0, 2, 1]],
            )
        }
        "z4_times2" => {
            let z4 = Arc::new(FiniteGroup::cyclic(4));
            let act = trivial_action(&z4, &z4);
            CrossedModule::new(Arc::clone(&z4), z4, vec![0, 2, 0, 2], act)
        }
        "z4_zero_negation" => {
            let z4 = Arc::new(FiniteGroup::cyclic(4));
            let z2 = Arc::new(FiniteGroup::cyclic(2));
            CrossedModule::new(
                z4,
                z2,
                vec![0, 0, 0, 0],
                vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
            )
        }
        "z2_zero_trivial" => {
            let z2 = Arc::new(FiniteGroup::cyclic(2));
            let act = trivial_action(&z2, &z2);
            CrossedModule::new(Arc::clone(&z2), z2, vec![0, 0], act)
        }
        "z2_into_z4" => {
            let z2 = Arc::new(FiniteGroup::cyclic(2));
            let z4 = Arc::new(FiniteGroup::cyclic(4));
            let act = trivial_action(&z4, &z2);
            CrossedModule::new(z2, z4, vec![0, 2], act)
        }
        "s3_trivial_kernel" => {
            let one = Arc::new(FiniteGroup::trivial());
            let s3 = Arc::new(FiniteGroup::symmetric3());
            let act = trivial_action(&s3, &one);
            CrossedModule::new(one, Arc::clone(&s3), vec![s3.identity()], act)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Every built-in instance with its name.
pub fn all() -> Vec<(&'static str, CrossedModule)> {
    NAMES
        .iter()
        .map(|&n| (n, build(n).expect("catalog instances are valid")))
        .collect()
}

/// All isomorphism types of groups of order <= `max_order` (max 8),
/// as named Cayley tables.
pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    assert!(max_order <= 8, "small-group inventory stops at order 8");
    let c = FiniteGroup::cyclic;
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    let mut push = |name: &str, g: FiniteGroup| out.push((name.to_string(), g));
    push("1", FiniteGroup::trivial());
    if max_order >= 2 {
        push("Z2", c(2));
    }
    if max_order >= 3 {
        push("Z3", c(3));
    }
    if max_order >= 4 {
        push("Z4", c(4));
        push("V4", FiniteGroup::klein());
    }
    if max_order >= 5 {
        push("Z5", c(5));
    }
    if max_order >= 6 {
        push("Z6", c(6));
        push("S3", FiniteGroup::symmetric3());
    }
    if max_order >= 7 {
        push("Z7", c(7));
    }
    if max_order >= 8 {
        push("Z8", c(8));
        push("Z4xZ2", FiniteGroup::direct_product(&c(4), &c(2)));
        push(
            "Z2xZ2xZ2",
            FiniteGroup::direct_product(&FiniteGroup::klein(), &c(2)),
        );
        push("D4", FiniteGroup::dihedral(4));
        push("Q8", FiniteGroup::quaternion8());
    }
    out.retain(|(_, g)| g.order() <= max_order);
    out
}

/// Outcome of the exhaustive small-bound search for instances whose
/// obstruction class does not vanish.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub max_t: usize,
    pub max_g: usize,
    /// number of (T, G, boundary, action) tuples that satisfied the axioms
    pub valid_instances: usize,
    /// raw data of every nonsplit instance found: (T name, G name, boundary, action)
    pub nonsplit: Vec<NonsplitWitness>,
}

#[derive(Debug, Clone)]
pub struct NonsplitWitness {
    pub t_name: String,
    pub g_name: String,
    pub boundary: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

impl NonsplitWitness {
    pub fn build(&self) -> Result<CrossedModule> {
        let groups: std::collections::BTreeMap<String, FiniteGroup> =
            small_groups(8).into_iter().collect();
        let t = Arc::new(groups[&self.t_name].clone());
        let g = Arc::new(groups[&self.g_name].clone());
        CrossedModule::new(t, g, self.boundary.clone(), self.action.clone())
    }
}

/// Exhaustively enumerate crossed modules with `|T| <= max_t`,
/// `|G| <= max_g` (both at most 8), one representative per isomorphism
/// type of T and of G, and report every instance whose obstruction class
/// is nonzero. Boundaries and actions are enumerated in full, so the
/// reduction is exactly "up to isomorphism of T and of G separately".
pub fn search_nonsplit(max_t: usize, max_g: usize) -> Result<SearchOutcome> {
    let ts = small_groups(max_t);
    let gs = small_groups(max_g);
    let mut valid = 0usize;
    let mut nonsplit = Vec::new();

    for (t_name, t) in &ts {
        let t = Arc::new(t.clone());
        let auts = automorphisms(&t);
        // Aut(T) as an abstract group on the automorphism list
        let aut_index = |perm: &[usize]| -> usize {
            auts.iter().position(|a| a == perm).expect("closed under composition")
        };
        let aut_table: Vec<Vec<usize>> = auts
            .iter()
            .map(|a| {
                auts.iter()
                    .map(|b| {
                        // (a ∘ b)(x) = a[b[x]]
                        let composed: Vec<usize> = (0..t.order()).map(|x| a[b[x]]).collect();
                        aut_index(&composed)
                    })
                    .collect()
            })
            .collect();
        let aut_group = FiniteGroup::from_table(aut_table).expect("Aut(T) is a group");

        for (g_name, g) in &gs {
            let g = Arc::new(g.clone());
            let boundaries = enumerate_homs(&t, &g);
            let action_homs = enumerate_homs(&g, &aut_group);
            for boundary in &boundaries {
                for ah in &action_homs {
                    let action: Vec<Vec<usize>> =
                        ah.iter().map(|&ai| auts[ai].clone()).collect();
                    let Ok(xm) =
                        CrossedModule::new(Arc::clone(&t), Arc::clone(&g), boundary.clone(), action.clone())
                    else {
                        continue;
                    };
                    valid += 1;
                    if !crate::obstruction::is_split(&xm)? {
                        nonsplit.push(NonsplitWitness {
                            t_name: t_name.clone(),
                            g_name: g_name.clone(),
                            boundary: boundary.clone(),
                            action,
                        });
                    }
                }
            }
        }
    }

    Ok(SearchOutcome {
        max_t,
        max_g,
        valid_instances: valid,
        nonsplit,
    })
}
