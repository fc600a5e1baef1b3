//! Finite groups stored as full multiplication tables.
//!
//! Elements are indices into a label list. Groups given by permutation
//! generators are enumerated by breadth-first closure, so labels appear in
//! discovery order and the identity is always element 0 for those groups.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 5000;

/// Element cap, overridable through `GOGKIT_ELEMENT_CAP`.
pub fn element_cap() -> usize {
    std::env::var("GOGKIT_ELEMENT_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Parses cycle notation on points `1..=n`: `"(1,2,3)(4,5)"`, `"(1 2)"`, `"()"`.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Perm> {
        let bad = |why: &str| Error::Parse(format!("bad permutation `{s}`: {why}"));
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(bad("expected `(`"));
            };
            let Some(close) = body.find(')') else {
                return Err(bad("unclosed cycle"));
            };
            let pts: Vec<usize> = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("non-numeric point")))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p == 0 || p > n {
                    return Err(bad("point out of range"));
                }
            }
            let mut seen = pts.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != pts.len() {
                return Err(bad("repeated point in cycle"));
            }
            // Cycles compose right to left, matching `compose`.
            let mut cyc: Vec<u32> = (0..n as u32).collect();
            for k in 0..pts.len() {
                cyc[pts[k] - 1] = (pts[(k + 1) % pts.len()] - 1) as u32;
            }
            images = Perm(images).compose(&Perm(cyc)).0;
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    /// Cycle notation on `1..=n`, `()` for the identity.
    pub fn to_cycles(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i] as usize;
            }
            out.push('(');
            out.push_str(&cyc.join(","));
            out.push(')');
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

/// A finite group with a total multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mul: Vec<u32>,
    inv: Vec<usize>,
    identity: usize,
    gens: Vec<usize>,
    perms: Option<Vec<Perm>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, labels {:?})", self.order(), self.labels)
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::closure(1, &[], 1).expect("trivial group")
    }

    /// Cyclic group of order `n`, realized on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let mut images: Vec<u32> = (1..n as u32).collect();
        images.push(0);
        Self::closure(n, &[Perm(images)], n.max(1)).expect("cyclic group")
    }

    /// Symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::parse_cycles("(1,2)", n).unwrap());
            let cyc: String = (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            gens.push(Perm::parse_cycles(&format!("({cyc})"), n).unwrap());
        }
        Self::closure(n.max(1), &gens, element_cap()).expect("symmetric group")
    }

    /// Enumerates the group generated by `gens` by breadth-first closure,
    /// multiplying discovered elements on the right by each generator in order.
    pub fn closure(points: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != points {
                return Err(Error::Parse(format!(
                    "generator {g:?} acts on {} points, expected {points}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(points);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = elems[i].compose(g);
                if !index.contains_key(&p) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&elems[a].compose(&elems[b])] as u32;
            }
        }
        let inv = elems.iter().map(|p| index[&p.inverse()]).collect();
        let mut gen_idx: Vec<usize> = Vec::new();
        for g in gens {
            let i = index[g];
            if i != 0 && !gen_idx.contains(&i) {
                gen_idx.push(i);
            }
        }
        let labels = elems.iter().map(Perm::to_cycles).collect();
        Ok(FiniteGroup { labels, mul, inv, identity: 0, gens: gen_idx, perms: Some(elems) })
    }

    /// Builds a group from a multiplication table `mul[a][b] = a·b`, checking
    /// closure, associativity, identity and inverses.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let bad = |why: String| Error::Parse(format!("invalid group table: {why}"));
        if n == 0 {
            return Err(bad("empty group".into()));
        }
        if n > element_cap() {
            return Err(Error::CapExceeded(element_cap()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(bad("duplicate labels".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(bad("table is not square of the element count".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(bad("entry out of range".into()));
        }
        let at = |a: usize, b: usize| table[a][b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| bad("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(bad(format!(
                            "not associative on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| at(a, b) == identity)
                .ok_or_else(|| bad(format!("{} has no inverse", labels[a])))?;
        }
        let mul = table.iter().flatten().map(|&x| x as u32).collect();
        let mut g = FiniteGroup { labels, mul, inv, identity, gens: Vec::new(), perms: None };
        g.gens = g.greedy_generators();
        Ok(g)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![self.identity];
        for x in 0..self.order() {
            if !sub.contains(&x) {
                gens.push(x);
                sub = self.generated(&gens);
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Some(i);
        }
        // Permutation groups also accept any cycle spelling of an element.
        let perms = self.perms.as_ref()?;
        let p = Perm::parse_cycles(label, perms[0].degree()).ok()?;
        perms.iter().position(|q| *q == p)
    }

    /// A generating set: the declared generators for permutation groups,
    /// a greedy one (in element order) for table groups.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn perm(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut mem = vec![false; self.order()];
        for &x in elems {
            if x >= self.order() {
                return false;
            }
            mem[x] = true;
        }
        mem[self.identity] && elems.iter().all(|&a| elems.iter().all(|&b| mem[self.mul(a, b)]))
    }

    /// Power `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// Checks the group axioms on all pairs and triples.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order();
        let id = self.identity;
        (0..n).all(|a| self.mul(a, id) == a && self.mul(id, a) == a && self.mul(a, self.inv(a)) == id)
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
            })
    }
}

/// Extends a map given on some elements to the whole group by
/// right-multiplying known images, starting from `identity`. Returns `None`
/// when the given elements do not generate. Consistency is not checked.
pub fn extend_by_products<T: Clone>(
    grp: &FiniteGroup,
    known: &BTreeMap<usize, T>,
    identity: T,
    mul: impl Fn(&T, &T) -> T,
) -> Option<Vec<T>> {
    let mut out: Vec<Option<T>> = vec![None; grp.order()];
    out[grp.identity()] = Some(identity);
    for (&x, m) in known {
        out[x] = Some(m.clone());
    }
    let mut changed = true;
    while changed {
        changed = false;
        for a in grp.elements() {
            let Some(ma) = out[a].clone() else { continue };
            for (&s, ms) in known {
                let p = grp.mul(a, s);
                if out[p].is_none() {
                    out[p] = Some(mul(&ma, ms));
                    changed = true;
                }
            }
        }
    }
    out.into_iter().collect()
}

/// A verified homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub map: Vec<usize>,
    pub injective: bool,
}

/// First pair `(x, y)` (in index order) with `map(xy) != map(x)map(y)`, or a
/// structural defect of the candidate map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    WrongLength { expected: usize, found: usize },
    OutOfRange { element: usize },
    NotMultiplicative { x: usize, y: usize },
}

/// Verifies a candidate map on all `|source|^2` pairs.
pub fn check_hom(
    map: &[usize],
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
) -> std::result::Result<GroupHom, HomViolation> {
    if map.len() != source.order() {
        return Err(HomViolation::WrongLength { expected: source.order(), found: map.len() });
    }
    if let Some(element) = map.iter().position(|&y| y >= target.order()) {
        return Err(HomViolation::OutOfRange { element });
    }
    for x in source.elements() {
        for y in source.elements() {
            if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                return Err(HomViolation::NotMultiplicative { x, y });
            }
        }
    }
    let mut image = map.to_vec();
    image.sort_unstable();
    image.dedup();
    Ok(GroupHom {
        source: source.clone(),
        target: target.clone(),
        map: map.to_vec(),
        injective: image.len() == map.len(),
    })
}

impl GroupHom {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    /// Preimage lookup: `target element -> source element` for injective maps.
    pub fn inverse_table(&self) -> Vec<Option<usize>> {
        let mut t = vec![None; self.target.order()];
        for (x, &y) in self.map.iter().enumerate() {
            t[y].get_or_insert(x);
        }
        t
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn index(&self) -> usize {
        self.target.order() / self.image().len()
    }
}

/// Left coset representatives of a subgroup (cosets `gH`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// Sorted subgroup elements.
    pub subgroup: Vec<usize>,
    /// One representative per coset, the identity first.
    pub reps: Vec<usize>,
    rep_of: Vec<usize>,
    in_subgroup: Vec<bool>,
}

impl Transversal {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// The representative of the coset `x H`.
    pub fn canonical_rep(&self, x: usize) -> usize {
        self.rep_of[x]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.in_subgroup[x]
    }

    /// Splits `x = rep · h` with `h` in the subgroup.
    pub fn decompose(&self, g: &FiniteGroup, x: usize) -> (usize, usize) {
        let rep = self.rep_of[x];
        (rep, g.mul(g.inv(rep), x))
    }
}

/// Left transversal: the identity represents the subgroup itself, every other
/// coset is represented by its smallest element index.
pub fn left_transversal(g: &FiniteGroup, subgroup: &[usize]) -> Result<Transversal> {
    if !g.is_subgroup(subgroup) {
        return Err(Error::NotASubgroup(format!("{subgroup:?} is not closed in a group of order {}", g.order())));
    }
    let mut sub = subgroup.to_vec();
    sub.sort_unstable();
    sub.dedup();
    let mut in_subgroup = vec![false; g.order()];
    for &h in &sub {
        in_subgroup[h] = true;
    }
    let mut rep_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in std::iter::once(g.identity()).chain(g.elements()) {
        if rep_of[x] != usize::MAX {
            continue;
        }
        reps.push(x);
        for &h in &sub {
            rep_of[g.mul(x, h)] = x;
        }
    }
    Ok(Transversal { subgroup: sub, reps, rep_of, in_subgroup })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn closure_orders() {
        let z2 = FiniteGroup::closure(2, &[perm("(1 2)", 2)], 10).unwrap();
        assert_eq!(z2.order(), 2);
        let s3 = FiniteGroup::closure(3, &[perm("(1 2)", 3), perm("(1 2 3)", 3)], 10).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.verify_axioms());
        let err = FiniteGroup::closure(5, &[perm("(1 2 3 4 5)", 5)], 3).unwrap_err();
        assert_eq!(err, Error::CapExceeded(3));
    }

    #[test]
    fn closure_is_deterministic() {
        let gens = [perm("(1,2)", 4), perm("(1,2,3,4)", 4)];
        let a = FiniteGroup::closure(4, &gens, 100).unwrap();
        let b = FiniteGroup::closure(4, &gens, 100).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), 24);
        assert_eq!(a.label(0), "()");
    }

    #[test]
    fn cycle_parsing_round_trip() {
        let p = perm("(1,3)(2,4,5)", 5);
        assert_eq!(perm(&p.to_cycles(), 5), p);
        assert!(Perm::parse_cycles("(1,6)", 5).is_err());
        assert!(Perm::parse_cycles("(1,1)", 5).is_err());
        assert!(perm("()", 3).is_identity());
    }

    #[test]
    fn table_groups() {
        let g = FiniteGroup::from_table(
            vec!["e".into(), "x".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.generators(), &[1]);
        let bad = FiniteGroup::from_table(vec!["e".into(), "x".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(bad.is_err());
    }

    #[test]
    fn hom_checks() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let one = Arc::new(FiniteGroup::trivial());
        let id = check_hom(&[0, 1], &z2, &z2).unwrap();
        assert!(id.injective);
        let triv = check_hom(&[0, 0], &z2, &one).unwrap();
        assert!(!triv.injective);
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        // generator 1 -> identity, square 2 -> 2: not a homomorphism.
        let v = check_hom(&[0, 0, 2], &z3, &z3).unwrap_err();
        assert!(matches!(v, HomViolation::NotMultiplicative { .. }));
    }

    #[test]
    fn transversals() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.element("(1,2)").unwrap();
        let h = s3.generated(&[t]);
        let tr = left_transversal(&s3, &h).unwrap();
        assert_eq!(tr.index(), 3);
        for x in s3.elements() {
            let (r, k) = tr.decompose(&s3, x);
            assert_eq!(s3.mul(r, k), x);
            assert!(tr.contains(k));
            assert_eq!(tr.canonical_rep(r), r);
        }
        let whole: Vec<usize> = s3.elements().collect();
        assert_eq!(left_transversal(&s3, &whole).unwrap().reps, vec![0]);
        assert_eq!(left_transversal(&s3, &[0]).unwrap().index(), 6);
        assert!(left_transversal(&s3, &[0, t, s3.element("(1,2,3)").unwrap()]).is_err());
    }
}
