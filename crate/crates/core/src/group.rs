//! Finite groups presented by Cayley tables, homomorphisms between them,
//! subgroups, quotients with canonical sections, and small-group builders.

use std::sync::Arc;

use crate::error::{Error, GroupDefect, Result};

/// A finite group on the index set `0..order` with a fully validated
/// multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validate a raw square table and derive identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(Error::NotAGroup {
                reason: GroupDefect::Malformed,
            });
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::NotAGroup {
                reason: GroupDefect::Malformed,
            });
        }
        let cayley: Vec<usize> = table.iter().flatten().copied().collect();
        let mul = |x: usize, y: usize| cayley[x * n + y];

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or(Error::NotAGroup {
                reason: GroupDefect::NoIdentity,
            })?;

        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = mul(i, j);
                let c = mul(j, i);
                if seen_row[r] || seen_col[c] {
                    return Err(Error::NotAGroup {
                        reason: GroupDefect::NotLatinSquare { index: i },
                    });
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }

        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                        return Err(Error::NotAGroup {
                            reason: GroupDefect::NonAssociative { x, y, z },
                        });
                    }
                }
            }
        }

        let mut inv = vec![0usize; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or(Error::NotAGroup {
                    reason: GroupDefect::NoInverse { element: x },
                })?;
            inv[x] = y;
        }

        Ok(FiniteGroup {
            order: n,
            cayley,
            identity,
            inv,
            labels: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x * self.order + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.cayley[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    /// Multiset of element orders, sorted. Cheap isomorphism discriminator.
    pub fn order_census(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    // ---- builders ----

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(table).unwrap()
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![vec![0usize; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        FiniteGroup::from_table(table).unwrap()
    }

    pub fn klein() -> Self {
        let c2 = FiniteGroup::cyclic(2);
        FiniteGroup::direct_product(&c2, &c2)
    }

    /// Dihedral group of order 2n: elements `r^i` (0..n) then `s r^i` (n..2n).
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let m = 2 * n;
        let mut table = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                let (fi, ri) = (i / n, i % n);
                let (fj, rj) = (j / n, j % n);
                // (s^fi r^ri)(s^fj r^rj) = s^(fi+fj) r^(±ri+rj)
                let r = if fj == 0 { (ri + rj) % n } else { (n - ri + rj) % n };
                table[i][j] = ((fi + fj) % 2) * n + r;
            }
        }
        FiniteGroup::from_table(table).unwrap()
    }

    pub fn symmetric3() -> Self {
        FiniteGroup::dihedral(3)
    }

    /// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion8() -> Self {
        // encode ±{1,i,j,k} as (sign, axis), index = axis*2 + sign
        let mul = |a: usize, b: usize| -> usize {
            let (ax, sa) = (a / 2, a % 2);
            let (bx, sb) = (b / 2, b % 2);
            // axis multiplication table with result sign: 0=1,1=i,2=j,3=k
            let (cx, extra): (usize, usize) = match (ax, bx) {
                (0, x) => (x, 0),
                (x, 0) => (x, 0),
                (1, 1) => (0, 1),
                (2, 2) => (0, 1),
                (3, 3) => (0, 1),
                (1, 2) => (3, 0),
                (2, 1) => (3, 1),
                (2, 3) => (1, 0),
                (3, 2) => (1, 1),
                (3, 1) => (2, 0),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            };
            cx * 2 + (sa + sb + extra) % 2
        };
        let table = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(table).unwrap()
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

/// A validated homomorphism between finite groups.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(Error::DimensionMismatch(
                "hom map must be total on source indices".into(),
            ));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotAHom { x, y });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupHom {
            source: Arc::clone(g),
            target: Arc::clone(g),
            map: g.elements().collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn compose(&self, then: &GroupHom) -> Result<GroupHom> {
        if self.target != then.source {
            return Err(Error::DimensionMismatch("hom composition mismatch".into()));
        }
        Ok(GroupHom {
            source: Arc::clone(&self.source),
            target: Arc::clone(&then.target),
            map: self.map.iter().map(|&x| then.apply(x)).collect(),
        })
    }

    /// Sorted element indices of the image.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Sorted element indices of the kernel.
    pub fn kernel_elements(&self) -> Vec<usize> {
        let e = self.target.identity();
        self.source.elements().filter(|&x| self.map[x] == e).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_elements().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, {:?})",
            self.source.order(),
            self.target.order(),
            self.map
        )
    }
}

/// The kernel of a homomorphism as a group in its own right, together with
/// its embedding into the source.
pub fn kernel(h: &GroupHom) -> (FiniteGroup, GroupHom) {
    let elems = h.kernel_elements();
    subgroup(h.source(), &elems).expect("kernel is always a subgroup")
}

/// Build the subgroup on the given (sorted or unsorted) element subset,
/// with the inclusion homomorphism. Fails if the subset is not closed.
pub fn subgroup(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
    let mut elems: Vec<usize> = elements.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if !elems.contains(&parent.identity()) {
        return Err(Error::NotASubgroup {
            x: parent.identity(),
            y: parent.identity(),
        });
    }
    let pos = |x: usize| elems.binary_search(&x).ok();
    let k = elems.len();
    let mut table = vec![vec![0usize; k]; k];
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            match pos(parent.mul(x, y)) {
                Some(p) => table[i][j] = p,
                None => return Err(Error::NotASubgroup { x, y }),
            }
        }
    }
    let sub = FiniteGroup::from_table(table)?;
    let embed = GroupHom::new(Arc::new(sub.clone()), Arc::clone(parent), elems)?;
    Ok((sub, embed))
}

/// Quotient of `g` by a normal subgroup given by its element subset.
///
/// Returns the quotient group, the projection, and the canonical section
/// picking the least element index in each coset (identity coset maps to
/// the identity element).
pub fn quotient(
    g: &Arc<FiniteGroup>,
    normal_elements: &[usize],
) -> Result<(FiniteGroup, GroupHom, Vec<usize>)> {
    let (_, embed) = subgroup(g, normal_elements)?;
    let nset: Vec<usize> = embed.map().to_vec();
    let contains = |x: usize| nset.binary_search(&x).is_ok();
    for &x in &nset {
        for y in g.elements() {
            if !contains(g.conjugate(y, x)) {
                return Err(Error::NotNormal { element: x, by: y });
            }
        }
    }

    // coset key: least element index in the left coset x*N
    let mut coset_key = vec![usize::MAX; g.order()];
    for x in g.elements() {
        let key = nset.iter().map(|&n| g.mul(x, n)).min().unwrap();
        coset_key[x] = key;
    }
    let mut keys: Vec<usize> = coset_key.clone();
    keys.sort_unstable();
    keys.dedup();
    let coset_index = |x: usize| keys.binary_search(&coset_key[x]).unwrap();

    let q = keys.len();
    let mut table = vec![vec![0usize; q]; q];
    for (i, &ki) in keys.iter().enumerate() {
        for (j, &kj) in keys.iter().enumerate() {
            table[i][j] = coset_index(g.mul(ki, kj));
        }
    }
    let quot = FiniteGroup::from_table(table)?;
    let proj = GroupHom::new(
        Arc::clone(g),
        Arc::new(quot.clone()),
        g.elements().map(coset_index).collect(),
    )?;
    let mut section: Vec<usize> = keys;
    section[proj.apply(g.identity())] = g.identity();
    Ok((quot, proj, section))
}

/// A greedy generating sequence: each new generator lies outside the
/// closure of the previous ones.
pub fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = vec![false; g.order()];
    closure[g.identity()] = true;
    let mut closed: Vec<usize> = vec![g.identity()];
    for x in g.elements() {
        if closure[x] {
            continue;
        }
        gens.push(x);
        // close under multiplication
        let mut frontier = vec![x];
        closure[x] = true;
        closed.push(x);
        while let Some(y) = frontier.pop() {
            let snapshot = closed.clone();
            for &z in &snapshot {
                for w in [g.mul(y, z), g.mul(z, y)] {
                    if !closure[w] {
                        closure[w] = true;
                        closed.push(w);
                        frontier.push(w);
                    }
                }
            }
        }
    }
    gens
}

/// All homomorphisms `src -> dst`, as full index maps. Enumerates candidate
/// images of a generating sequence (pruned by element-order divisibility)
/// and keeps the assignments that extend to a homomorphism.
pub fn enumerate_homs(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = generating_sequence(src);
    // express every element as a word: element = parent * generator
    let mut word: Vec<Option<(usize, usize)>> = vec![None; src.order()]; // (parent, gen slot)
    let mut reached = vec![src.identity()];
    word[src.identity()] = Some((src.identity(), usize::MAX));
    let mut i = 0;
    while i < reached.len() {
        let x = reached[i];
        i += 1;
        for (slot, &gen) in gens.iter().enumerate() {
            let y = src.mul(x, gen);
            if word[y].is_none() {
                word[y] = Some((x, slot));
                reached.push(y);
            }
        }
    }
    debug_assert_eq!(reached.len(), src.order());

    let mut out = Vec::new();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for &gen in &gens {
        let o = src.element_order(gen);
        candidates.push(
            dst.elements()
                .filter(|&y| o % dst.element_order(y) == 0)
                .collect(),
        );
    }
    let mut choice = vec![0usize; gens.len()];
    'next: loop {
        // build the full map from the generator images
        let mut map = vec![usize::MAX; src.order()];
        map[src.identity()] = dst.identity();
        for &x in &reached {
            if x == src.identity() {
                continue;
            }
            let (parent, slot) = word[x].unwrap();
            map[x] = dst.mul(map[parent], candidates[slot][choice[slot]]);
        }
        if (0..src.order()).all(|x| {
            (0..src.order()).all(|y| map[src.mul(x, y)] == dst.mul(map[x], map[y]))
        }) {
            out.push(map);
        }
        // odometer over generator choices
        let mut k = 0;
        loop {
            if k == gens.len() {
                break 'next;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if gens.is_empty() {
            break;
        }
    }
    out
}

/// All automorphisms of `g`, as permutations of its index set.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    enumerate_homs(g, g)
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; g.order()];
            m.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn z4_from_table() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.inv(1), 3);
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
        }
    }

    #[test]
    fn rejects_non_latin() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                reason: GroupDefect::NotLatinSquare { .. }
            }
        ));
    }

    #[test]
    fn rejects_non_associative() {
        // latin square with two-sided identity that is not a group (order 5 loop)
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(table).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                reason: GroupDefect::NonAssociative { .. }
            }
        ));
    }

    #[test]
    fn hom_validation() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        assert!(GroupHom::new(Arc::clone(&z4), Arc::clone(&z4), vec![0, 1, 2, 3]).is_ok());
        let doubling = GroupHom::new(Arc::clone(&z4), Arc::clone(&z4), vec![0, 2, 0, 2]).unwrap();
        assert_eq!(doubling.image(), vec![0, 2]);
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        // x mod 3 clipped to {0,1} is not a homomorphism
        let bad = GroupHom::new(Arc::clone(&z4), z2, vec![0, 1, 1, 0]);
        assert!(matches!(bad, Err(Error::NotAHom { .. })));
    }

    #[test]
    fn kernel_of_doubling() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let doubling = GroupHom::new(Arc::clone(&z4), Arc::clone(&z4), vec![0, 2, 0, 2]).unwrap();
        let (k, embed) = kernel(&doubling);
        assert_eq!(k.order(), 2);
        assert_eq!(embed.map(), &[0, 2]);

        let id = GroupHom::identity(&z4);
        assert_eq!(kernel(&id).0.order(), 1);

        let z6 = Arc::new(FiniteGroup::cyclic(6));
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let red = GroupHom::new(z6, z3, vec![0, 1, 2, 0, 1, 2]).unwrap();
        assert_eq!(kernel(&red).1.map(), &[0, 3]);
    }

    #[test]
    fn quotient_z4_by_z2() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let (q, proj, section) = quotient(&z4, &[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(section, vec![0, 1]);
        for p in q.elements() {
            assert_eq!(proj.apply(section[p]), p);
        }
    }

    #[test]
    fn quotient_by_trivial_is_identity() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let (q, proj, section) = quotient(&g, &[g.identity()]).unwrap();
        assert_eq!(q.table(), g.table());
        assert_eq!(proj.map(), &g.elements().collect::<Vec<_>>()[..]);
        assert_eq!(section, g.elements().collect::<Vec<_>>());
    }

    #[test]
    fn non_normal_subgroup_rejected() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        // <s> = {identity, reflection} is not normal in S3
        let refl = (0..6).find(|&x| x >= 3).unwrap();
        let err = quotient(&s3, &[s3.identity(), refl]).unwrap_err();
        assert!(matches!(err, Error::NotNormal { .. }));
    }

    #[test]
    fn section_fixes_identity() {
        let z6 = Arc::new(FiniteGroup::cyclic(6));
        let (q, proj, section) = quotient(&z6, &[0, 3]).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(section[proj.apply(0)], 0);
    }

    #[test]
    fn builders_are_groups() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(8),
            FiniteGroup::klein(),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion8(),
            FiniteGroup::symmetric3(),
        ] {
            // from_table already validated; spot-check inverses and identity
            for x in g.elements() {
                assert_eq!(g.mul(x, g.inv(x)), g.identity());
            }
        }
        assert_eq!(FiniteGroup::quaternion8().order_census(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert!(!FiniteGroup::quaternion8().is_abelian());
    }

    #[test]
    fn hom_enumeration_counts() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(enumerate_homs(&z4, &z2).len(), 2);
        assert_eq!(enumerate_homs(&z2, &z4).len(), 2);
        assert_eq!(automorphisms(&z4).len(), 2);
        assert_eq!(automorphisms(&FiniteGroup::klein()).len(), 6);
        assert_eq!(automorphisms(&FiniteGroup::symmetric3()).len(), 6);
        assert_eq!(automorphisms(&FiniteGroup::quaternion8()).len(), 24);
    }
}
