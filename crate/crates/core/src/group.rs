//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are addressed by a flat mixed-radix index: the first factor is the
//! most significant digit, so ascending index order is lexicographic order on
//! coordinate tuples. Groups keep the moduli exactly as given; `[2, 2]` and
//! `[4]` are different values even though `[2, 2]` and `[2, 2]` compare equal.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::subset::GroupSubset;

/// Default cap on the order of a group accepted by [`make_group`].
pub const DEFAULT_ORDER_CAP: usize = 1 << 20;

/// Default cap on the order of a group whose subgroup lattice is enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// Groups up to this order get a precomputed addition table.
const ADD_TABLE_LIMIT: usize = 1024;

/// A group element, addressed by its flat index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

pub struct Group {
    moduli: Vec<usize>,
    order: usize,
    strides: Vec<usize>,
    neg: Vec<u32>,
    add_table: OnceLock<Option<Vec<u16>>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.moduli == other.moduli
    }
}

impl Eq for Group {}

/// Builds a group from its cyclic factors using the default order cap.
pub fn make_group(moduli: &[usize]) -> Result<Arc<Group>> {
    Group::with_cap(moduli, DEFAULT_ORDER_CAP)
}

impl Group {
    pub fn with_cap(moduli: &[usize], cap: usize) -> Result<Arc<Group>> {
        let mut order: usize = 1;
        for &n in moduli {
            if n < 2 {
                return Err(Error::InvalidModulus(n));
            }
            order = order
                .checked_mul(n)
                .filter(|&o| o <= cap)
                .ok_or(Error::OrderCapExceeded {
                    order: moduli.iter().fold(1usize, |a, &b| a.saturating_mul(b)),
                    cap,
                })?;
        }
        let mut strides = vec![1; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        let mut g = Group {
            moduli: moduli.to_vec(),
            order,
            strides,
            neg: Vec::new(),
            add_table: OnceLock::new(),
        };
        g.neg = (0..order).map(|a| g.neg_slow(a) as u32).collect();
        Ok(Arc::new(g))
    }

    /// The trivial group, used as the target of `G/G`.
    pub fn trivial() -> Arc<Group> {
        Group::with_cap(&[], 1).expect("trivial group")
    }

    /// Parses a spec string such as `Z7xZ11`, `Z12` or `7x11`.
    pub fn parse(spec: &str) -> Result<Arc<Group>> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(Error::Parse("empty group spec".into()));
        }
        let mut moduli = Vec::new();
        for part in spec.split(['x', 'X', '*']) {
            let p = part.trim();
            let p = p
                .strip_prefix("Z/")
                .or_else(|| p.strip_prefix('Z'))
                .or_else(|| p.strip_prefix('z'))
                .unwrap_or(p);
            let n: usize = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic factor `{part}` in `{spec}`")))?;
            moduli.push(n);
        }
        if moduli == [1] {
            return Ok(Group::trivial());
        }
        make_group(&moduli)
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.moduli.len() <= 1
    }

    /// True if the group is cyclic as an abstract group (some element has order |G|).
    pub fn is_cyclic(&self) -> bool {
        let mut l = 1;
        for &n in &self.moduli {
            l = lcm(l, n);
        }
        l == self.order
    }

    /// Smallest prime divisor of the order; `None` for the trivial group.
    pub fn smallest_prime_divisor(&self) -> Option<usize> {
        smallest_prime_factor(self.order)
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order {
            Ok(Element(index))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn coords(&self, a: Element) -> Vec<usize> {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (a.0 / s) % n)
            .collect()
    }

    pub fn from_coords(&self, coords: &[usize]) -> Result<Element> {
        if coords.len() != self.moduli.len() {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                self.moduli.len(),
                coords.len()
            )));
        }
        let idx = coords
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&c, &n), &s)| (c % n) * s)
            .sum();
        Ok(Element(idx))
    }

    /// Renders an element: a bare integer in a cyclic presentation, a tuple otherwise.
    pub fn render(&self, a: Element) -> String {
        if self.moduli.len() <= 1 {
            return a.0.to_string();
        }
        let c: Vec<String> = self.coords(a).iter().map(|x| x.to_string()).collect();
        format!("({})", c.join(","))
    }

    fn table(&self) -> Option<&Vec<u16>> {
        self.add_table
            .get_or_init(|| {
                if self.order > ADD_TABLE_LIMIT {
                    return None;
                }
                let n = self.order;
                let mut t = vec![0u16; n * n];
                for a in 0..n {
                    for b in 0..n {
                        t[a * n + b] = self.add_slow(a, b) as u16;
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let mut r = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let da = (a / s) % n;
            let db = (b / s) % n;
            r += ((da + db) % n) * s;
        }
        r
    }

    fn neg_slow(&self, a: usize) -> usize {
        let mut r = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let da = (a / s) % n;
            r += ((n - da) % n) * s;
        }
        r
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        Element(self.add_idx(a.0, b.0))
    }

    pub fn neg(&self, a: Element) -> Element {
        Element(self.neg_idx(a.0))
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        Element(self.sub_idx(a.0, b.0))
    }

    /// `k·a`.
    pub fn mul(&self, a: Element, k: usize) -> Element {
        let mut r = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let da = (a.0 / s) % n;
            r += ((da * (k % n)) % n) * s;
        }
        Element(r)
    }

    /// Least `k ≥ 1` with `k·a = 0`.
    pub fn element_order(&self, a: Element) -> usize {
        self.coords(a)
            .iter()
            .zip(&self.moduli)
            .fold(1, |acc, (&c, &n)| lcm(acc, n / gcd(c, n)))
    }

    /// Smallest subgroup containing `gens`, computed by closure.
    pub fn subgroup_generated(self: &Arc<Self>, gens: &[Element]) -> Subgroup {
        let mut carrier = GroupSubset::singleton(self, Element(0));
        let mut used = Vec::new();
        for &g in gens {
            if carrier.contains(g) {
                continue;
            }
            used.push(g);
            let cyc = self.cyclic_subset(g);
            carrier = carrier.sumset_unchecked(&cyc);
        }
        Subgroup {
            carrier,
            generators: gens.to_vec(),
        }
    }

    fn cyclic_subset(self: &Arc<Self>, g: Element) -> GroupSubset {
        let mut s = GroupSubset::empty(self);
        let mut x = 0usize;
        loop {
            s.insert_idx(x);
            x = self.add_idx(x, g.0);
            if x == 0 {
                break;
            }
        }
        s
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            carrier: GroupSubset::singleton(self, Element(0)),
            generators: Vec::new(),
        }
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            carrier: GroupSubset::full(self),
            generators: self.standard_generators(),
        }
    }

    pub fn standard_generators(&self) -> Vec<Element> {
        self.strides.iter().map(|&s| Element(s)).collect()
    }

    /// All subgroups, sorted by order then by carrier, using the default lattice cap.
    pub fn all_subgroups(self: &Arc<Self>) -> Result<Vec<Subgroup>> {
        self.all_subgroups_capped(DEFAULT_LATTICE_CAP)
    }

    pub fn all_subgroups_capped(self: &Arc<Self>, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order > cap {
            return Err(Error::OrderCapExceeded {
                order: self.order,
                cap,
            });
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut list: Vec<Subgroup> = Vec::new();
        for x in self.elements() {
            let h = self.subgroup_generated(&[x]);
            if seen.insert(h.carrier.words().to_vec()) {
                list.push(h);
            }
        }
        // Join pairwise until no new subgroup appears; H + K is the join.
        let mut start = 0;
        loop {
            let n = list.len();
            let mut fresh = Vec::new();
            for i in 0..n {
                for j in (i + 1).max(start)..n {
                    let sum = list[i].carrier.sumset_unchecked(&list[j].carrier);
                    if seen.insert(sum.words().to_vec()) {
                        let mut gens = list[i].generators.clone();
                        gens.extend_from_slice(&list[j].generators);
                        fresh.push(Subgroup {
                            carrier: sum,
                            generators: gens,
                        });
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            start = n;
            list.extend(fresh);
        }
        list.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.carrier.cmp(&b.carrier))
        });
        Ok(list)
    }

    /// Canonical projection onto `G/Q`, with the target presented by invariant factors.
    pub fn quotient(self: &Arc<Self>, q: &Subgroup) -> Result<QuotientMap> {
        if q.carrier.group().as_ref() != self.as_ref() {
            return Err(Error::GroupMismatch {
                left: self.to_string(),
                right: q.carrier.group().to_string(),
            });
        }
        q.validate()?;
        let n = self.order;
        // coset representative = minimal element of the coset
        let mut rep = vec![usize::MAX; n];
        let qs: Vec<usize> = q.carrier.indices().collect();
        for x in 0..n {
            if rep[x] != usize::MAX {
                continue;
            }
            for &h in &qs {
                rep[self.add_idx(x, h)] = x;
            }
        }
        let index = n / q.order();

        // Build a basis of G/Q greedily: pick an element whose order modulo the
        // current span K is maximal and whose order modulo Q equals it.
        let mut span = q.carrier.clone();
        let mut basis: Vec<(usize, usize)> = Vec::new();
        while span.len() < n {
            let mut best: Option<(usize, usize)> = None;
            let mut max_mod = 0;
            for x in 0..n {
                if rep[x] != x {
                    continue;
                }
                let m = order_modulo(self, x, &span);
                if m > max_mod {
                    max_mod = m;
                }
            }
            for x in 0..n {
                if rep[x] != x {
                    continue;
                }
                if order_modulo(self, x, &span) == max_mod
                    && order_modulo(self, x, &q.carrier) == max_mod
                {
                    best = Some((x, max_mod));
                    break;
                }
            }
            let (b, m) = best.ok_or_else(|| {
                Error::InvalidArgument("failed to split quotient into cyclic factors".into())
            })?;
            let cyc = self.cyclic_subset(Element(b));
            span = span.sumset_unchecked(&cyc);
            basis.push((b, m));
        }
        // Invariant-factor order: ascending moduli, as produced by abelian_groups().
        basis.reverse();
        let moduli: Vec<usize> = basis.iter().map(|&(_, m)| m).collect();
        let target = if moduli.is_empty() {
            Group::trivial()
        } else {
            Group::with_cap(&moduli, DEFAULT_ORDER_CAP)?
        };
        let mut image = vec![usize::MAX; n];
        for t in 0..target.order() {
            let c = target.coords(Element(t));
            let mut x = 0;
            for (&(b, _), &ci) in basis.iter().zip(&c) {
                x = self.add_idx(x, self.mul(Element(b), ci).0);
            }
            for &h in &qs {
                image[self.add_idx(x, h)] = t;
            }
        }
        debug_assert_eq!(target.order(), index);
        Ok(QuotientMap {
            source: Arc::clone(self),
            kernel: q.clone(),
            target,
            image,
        })
    }

    /// Automorphisms as element permutations, at most `limit` of them, identity first.
    ///
    /// A truncated list is still usable for canonical-form scans: the minimum
    /// of an orbit is always kept because the identity is included.
    pub fn automorphisms(self: &Arc<Self>, limit: usize) -> Vec<Vec<u32>> {
        let gens = self.standard_generators();
        let t = gens.len();
        let mut out: Vec<Vec<u32>> = Vec::new();
        let identity: Vec<u32> = (0..self.order as u32).collect();
        out.push(identity.clone());
        if t == 0 {
            return out;
        }
        let mut images = Vec::with_capacity(t);
        self.aut_search(&mut images, limit, &mut out, &identity);
        out
    }

    fn aut_search(
        self: &Arc<Self>,
        images: &mut Vec<Element>,
        limit: usize,
        out: &mut Vec<Vec<u32>>,
        identity: &[u32],
    ) {
        if out.len() >= limit {
            return;
        }
        let i = images.len();
        if i == self.moduli.len() {
            let perm: Vec<u32> = (0..self.order)
                .map(|x| {
                    let c = self.coords(Element(x));
                    let mut y = 0;
                    for (img, &ci) in images.iter().zip(&c) {
                        y = self.add_idx(y, self.mul(*img, ci).0);
                    }
                    y as u32
                })
                .collect();
            if perm != identity {
                out.push(perm);
            }
            return;
        }
        let n_i = self.moduli[i];
        let need: usize = self.moduli[..=i].iter().product();
        for x in self.elements() {
            if self.mul(x, n_i) != Element(0) {
                continue;
            }
            images.push(x);
            if self.subgroup_generated(images).order() == need {
                self.aut_search(images, limit, out, identity);
            }
            images.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn order_modulo(g: &Group, x: usize, span: &GroupSubset) -> usize {
    let mut y = x;
    let mut m = 1;
    while !span.contains_idx(y) {
        y = g.add_idx(y, x);
        m += 1;
    }
    m
}

/// A subset certified closed under addition and negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    carrier: GroupSubset,
    generators: Vec<Element>,
}

impl Subgroup {
    /// Certifies `carrier` as a subgroup.
    pub fn from_subset(carrier: GroupSubset) -> Result<Subgroup> {
        let sg = Subgroup {
            carrier,
            generators: Vec::new(),
        };
        sg.validate()?;
        Ok(sg)
    }

    pub(crate) fn from_carrier_unchecked(carrier: GroupSubset, generators: Vec<Element>) -> Self {
        Subgroup {
            carrier,
            generators,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.carrier.group();
        if !self.carrier.contains(Element(0)) {
            return Err(Error::NotSubgroup);
        }
        for a in self.carrier.indices() {
            if !self.carrier.contains_idx(g.neg_idx(a)) {
                return Err(Error::NotSubgroup);
            }
            for b in self.carrier.indices() {
                if !self.carrier.contains_idx(g.add_idx(a, b)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        if g.order() % self.carrier.len() != 0 {
            return Err(Error::NotSubgroup);
        }
        Ok(())
    }

    pub fn carrier(&self) -> &GroupSubset {
        &self.carrier
    }

    pub fn into_carrier(self) -> GroupSubset {
        self.carrier
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.carrier.len() == 1
    }

    pub fn contains(&self, a: Element) -> bool {
        self.carrier.contains(a)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.carrier.is_subset(&other.carrier)
    }
}

/// The canonical projection `σ: G → G/Q`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: Arc<Group>,
    kernel: Subgroup,
    target: Arc<Group>,
    image: Vec<usize>,
}

impl QuotientMap {
    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn apply(&self, a: Element) -> Element {
        Element(self.image[a.0])
    }

    pub fn apply_set(&self, s: &GroupSubset) -> GroupSubset {
        let mut out = GroupSubset::empty(&self.target);
        for x in s.indices() {
            out.insert_idx(self.image[x]);
        }
        out
    }

    /// Full preimage of a target element, as a subset of the source group.
    pub fn preimage(&self, t: Element) -> GroupSubset {
        let mut out = GroupSubset::empty(&self.source);
        for (x, &img) in self.image.iter().enumerate() {
            if img == t.0 {
                out.insert_idx(x);
            }
        }
        out
    }
}

/// Splits `s` into its nonempty intersections with the cosets of `h`,
/// ordered by ascending minimal element.
pub fn coset_decomposition(s: &GroupSubset, h: &Subgroup) -> Result<Vec<GroupSubset>> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    s.check_same_group(h.carrier())?;
    let g = s.group();
    let mut remaining = s.clone();
    let mut parts = Vec::new();
    while let Some(x) = remaining.first() {
        let coset = h.carrier().translate(Element(x));
        let part = remaining.intersection_unchecked(&coset);
        remaining = remaining.difference_unchecked(&part);
        parts.push(part);
    }
    debug_assert!(parts.iter().map(|p| p.len()).sum::<usize>() == s.len());
    let _ = g;
    Ok(parts)
}

/// Every abelian group of order `n` up to isomorphism, as invariant-factor lists
/// (each factor divides the next).
pub fn abelian_groups(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut results: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for part in partitions(e) {
            for base in &results {
                // part is descending; invariant factor j (from the top) gets p^part[j]
                let len = base.len().max(part.len());
                let mut top: Vec<usize> = vec![1; len];
                for (j, v) in base.iter().rev().enumerate() {
                    top[j] *= v;
                }
                for (j, &a) in part.iter().enumerate() {
                    top[j] *= p.pow(a as u32);
                }
                top.reverse();
                next.push(top);
            }
        }
        results = next;
    }
    let mut out: Vec<Vec<usize>> = results
        .into_iter()
        .map(|v| v.into_iter().filter(|&x| x > 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn smallest_prime_factor(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return Some(p);
        }
        p += 1;
    }
    Some(n)
}

pub fn is_prime(n: usize) -> bool {
    smallest_prime_factor(n) == Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[usize]) -> Arc<Group> {
        make_group(m).unwrap()
    }

    #[test]
    fn make_group_examples() {
        assert_eq!(g(&[4]).order(), 4);
        assert_eq!(g(&[7, 11]).order(), 77);
        let klein = g(&[2, 2]);
        assert_eq!(klein.order(), 4);
        assert_ne!(*klein, *g(&[4]));
    }

    #[test]
    fn make_group_errors() {
        assert_eq!(make_group(&[1]).unwrap_err(), Error::InvalidModulus(1));
        assert!(matches!(
            make_group(&[1024, 1024, 2]),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn parse_and_display() {
        let grp = Group::parse("Z7xZ11").unwrap();
        assert_eq!(grp.moduli(), &[7, 11]);
        assert_eq!(grp.to_string(), "Z7xZ11");
        assert_eq!(Group::parse("12").unwrap().moduli(), &[12]);
        assert!(Group::parse("Zq").is_err());
    }

    #[test]
    fn coords_round_trip() {
        let grp = g(&[3, 4, 5]);
        for a in grp.elements() {
            assert_eq!(grp.from_coords(&grp.coords(a)).unwrap(), a);
        }
        assert_eq!(grp.coords(Element(1)), vec![0, 0, 1]);
        assert_eq!(grp.render(Element(21)), "(1,0,1)");
    }

    #[test]
    fn arithmetic_matches_coordinates() {
        let grp = g(&[4, 6]);
        for a in grp.elements() {
            for b in grp.elements() {
                let ca = grp.coords(a);
                let cb = grp.coords(b);
                let sum: Vec<usize> = ca
                    .iter()
                    .zip(&cb)
                    .zip(grp.moduli())
                    .map(|((x, y), n)| (x + y) % n)
                    .collect();
                assert_eq!(grp.coords(grp.add(a, b)), sum);
            }
            assert_eq!(grp.add(a, grp.neg(a)), Element(0));
        }
    }

    #[test]
    fn element_orders() {
        let z12 = g(&[12]);
        assert_eq!(z12.element_order(Element(0)), 1);
        assert_eq!(z12.element_order(Element(3)), 4);
        let z77 = g(&[7, 11]);
        let a = z77.from_coords(&[1, 0]).unwrap();
        assert_eq!(z77.element_order(a), 7);
        // repeated addition agrees and orders divide |G|
        for grp in [g(&[12]), g(&[2, 6]), g(&[3, 3, 2])] {
            for a in grp.elements() {
                let mut k = 1;
                let mut x = a;
                while x != Element(0) {
                    x = grp.add(x, a);
                    k += 1;
                }
                assert_eq!(grp.element_order(a), k);
                assert_eq!(grp.order() % k, 0);
            }
        }
    }

    #[test]
    fn subgroup_generated_examples() {
        let z12 = g(&[12]);
        let h = z12.subgroup_generated(&[Element(3)]);
        assert_eq!(h.carrier().indices().collect::<Vec<_>>(), vec![0, 3, 6, 9]);
        assert_eq!(z12.subgroup_generated(&[]).order(), 1);
        let z77 = g(&[7, 11]);
        let h1 = z77.subgroup_generated(&[z77.from_coords(&[1, 0]).unwrap()]);
        assert_eq!(h1.order(), 7);
        h1.validate().unwrap();
    }

    #[test]
    fn subgroup_lattices() {
        assert_eq!(g(&[7, 11]).all_subgroups().unwrap().len(), 4);
        assert_eq!(g(&[13]).all_subgroups().unwrap().len(), 2);
        assert_eq!(g(&[2, 2]).all_subgroups().unwrap().len(), 5);
        assert_eq!(g(&[9]).all_subgroups().unwrap().len(), 3);
        assert_eq!(g(&[2, 4]).all_subgroups().unwrap().len(), 8);
        for sg in g(&[2, 2, 2]).all_subgroups().unwrap() {
            sg.validate().unwrap();
        }
        assert_eq!(g(&[2, 2, 2]).all_subgroups().unwrap().len(), 16);
        assert!(g(&[4096, 2]).all_subgroups().is_err());
    }

    #[test]
    fn lattice_sorted_by_order() {
        let subs = g(&[2, 6]).all_subgroups().unwrap();
        assert!(subs.windows(2).all(|w| w[0].order() <= w[1].order()));
        assert_eq!(subs.first().unwrap().order(), 1);
        assert_eq!(subs.last().unwrap().order(), 12);
    }

    #[test]
    fn quotient_examples() {
        let z12 = g(&[12]);
        let q = z12.subgroup_generated(&[Element(6)]);
        let sigma = z12.quotient(&q).unwrap();
        assert_eq!(sigma.target().order(), 6);
        assert_eq!(sigma.apply(Element(0)), Element(0));

        let triv = z12.trivial_subgroup();
        let id = z12.quotient(&triv).unwrap();
        let imgs: HashSet<_> = z12.elements().map(|a| id.apply(a)).collect();
        assert_eq!(imgs.len(), 12);

        let z77 = g(&[7, 11]);
        let h2 = z77.subgroup_generated(&[z77.from_coords(&[0, 1]).unwrap()]);
        let sigma = z77.quotient(&h2).unwrap();
        assert_eq!(sigma.target().order(), 7);
        for a in 0..7 {
            for b in 0..11 {
                let x = z77.from_coords(&[a, b]).unwrap();
                assert_eq!(sigma.apply(x), Element(a));
            }
        }
    }

    #[test]
    fn quotient_is_homomorphism_with_kernel_q() {
        let grp = g(&[2, 4, 4]);
        for q in grp.all_subgroups().unwrap() {
            let sigma = grp.quotient(&q).unwrap();
            let t = sigma.target();
            assert_eq!(t.order() * q.order(), grp.order());
            for a in grp.elements() {
                assert_eq!(sigma.apply(a) == Element(0), q.contains(a));
                for b in grp.elements().step_by(3) {
                    assert_eq!(
                        sigma.apply(grp.add(a, b)),
                        t.add(sigma.apply(a), sigma.apply(b))
                    );
                }
            }
        }
    }

    #[test]
    fn coset_decomposition_examples() {
        let z12 = g(&[12]);
        let h = z12.subgroup_generated(&[Element(3)]);
        let s = GroupSubset::from_indices(&z12, &[0, 1, 3, 4]).unwrap();
        let parts = coset_decomposition(&s, &h).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].indices().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(parts[1].indices().collect::<Vec<_>>(), vec![1, 4]);
        let inside = GroupSubset::from_indices(&z12, &[3, 9]).unwrap();
        assert_eq!(coset_decomposition(&inside, &h).unwrap(), vec![inside]);
        assert_eq!(
            coset_decomposition(&GroupSubset::empty(&z12), &h).unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn abelian_group_lists() {
        assert_eq!(abelian_groups(12), vec![vec![12], vec![2, 6]]);
        assert_eq!(abelian_groups(16).len(), 5);
        assert_eq!(abelian_groups(25), vec![vec![25], vec![5, 5]]);
        assert_eq!(abelian_groups(8), vec![vec![8], vec![2, 4], vec![2, 2, 2]]);
        for n in 2..=30 {
            for m in abelian_groups(n) {
                assert_eq!(m.iter().product::<usize>(), n);
                assert!(m.windows(2).all(|w| w[1] % w[0] == 0));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(g(&[12]).automorphisms(1000).len(), 4);
        assert_eq!(g(&[2, 2]).automorphisms(1000).len(), 6);
        assert_eq!(g(&[5, 5]).automorphisms(1000).len(), 480);
        assert_eq!(g(&[2, 4]).automorphisms(1000).len(), 8);
        assert_eq!(g(&[5, 5]).automorphisms(10).len(), 10);
        // every permutation is a homomorphism
        let grp = g(&[2, 4]);
        for p in grp.automorphisms(100) {
            for a in 0..8 {
                for b in 0..8 {
                    assert_eq!(p[grp.add_idx(a, b)] as usize, grp.add_idx(p[a] as usize, p[b] as usize));
                }
            }
        }
    }
}
