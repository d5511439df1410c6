//! Finite groups of small order as explicit multiplication tables.
//!
//! Elements are indices `0..n` and element `0` is always the identity.
//! Every group of order at most 24 is available through [`catalog`].

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use thiserror::Error;

use crate::square::LatinSquare;

/// Largest order accepted by [`catalog`].
pub const CATALOG_MAX_ORDER: usize = 24;

/// Orders up to this bound are checked for associativity exhaustively.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("table is not {0}x{0}")]
    NotSquare(usize),
    #[error("element 0 is not the identity")]
    IdentityNotZero,
    #[error("entry {0} out of range")]
    EntryOutOfRange(usize),
    #[error("row or column {0} is not a permutation")]
    NotLatin(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("dihedral groups need an even order, got {0}")]
    OddDihedral(usize),
    #[error("dicyclic groups need an order divisible by 4, got {0}")]
    BadDicyclicOrder(usize),
    #[error("action of element {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism")]
    NotHomomorphism,
    #[error("catalog covers orders 1..={max}, got {0}", max = CATALOG_MAX_ORDER)]
    OrderOutOfRange(usize),
    #[error("no catalog group named {0:?}")]
    UnknownName(String),
    #[error("malformed group file: {0}")]
    Parse(String),
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    abelian: bool,
    subgroups: OnceLock<Vec<Subgroup>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    /// Builds a group from a row-major table, checking the group axioms.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotSquare(n));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        Self::from_flat(name.into(), n, table)
    }

    fn from_flat(name: String, n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(GroupError::EntryOutOfRange(bad));
        }
        for i in 0..n {
            if table[i] != i || table[i * n] != i {
                return Err(GroupError::IdentityNotZero);
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                let c = table[j * n + i];
                if row_seen[r] || col_seen[c] {
                    return Err(GroupError::NotLatin(i));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul(a, b);
                    for c in 0..n {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            // deterministic stride sample
            let mut state = 0x9e37_79b9_7f4a_7c15_u64;
            for _ in 0..200_000 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let a = (state % n as u64) as usize;
                let b = ((state >> 20) % n as u64) as usize;
                let c = ((state >> 40) % n as u64) as usize;
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul(a, b) == 0)
                .expect("latin row contains identity");
        }
        let abelian = (0..n).all(|a| (0..a).all(|b| mul(a, b) == mul(b, a)));
        Ok(Group {
            name,
            order: n,
            table,
            inverse,
            abelian,
            subgroups: OnceLock::new(),
        })
    }

    /// Builds a group from an explicit element list (identity first) and a
    /// multiplication on those elements.
    pub fn from_elements<T, F>(
        name: impl Into<String>,
        elements: Vec<T>,
        mul: F,
    ) -> Result<Self, GroupError>
    where
        T: Eq + Hash + Clone,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        if n == 0 {
            return Err(GroupError::EmptyGroup);
        }
        let index: HashMap<T, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let p = mul(a, b);
                let idx = *index.get(&p).ok_or(GroupError::EntryOutOfRange(n))?;
                table.push(idx);
            }
        }
        Self::from_flat(name.into(), n, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).to_vec()).collect()
    }

    /// `a^k` for non-negative `k`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest subset closed under the product that contains `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elems = vec![0];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let p = self.mul(e, g);
                if !member[p] {
                    member[p] = true;
                    elems.push(p);
                    queue.push_back(p);
                }
            }
        }
        Subgroup::from_elements(elems)
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order;
        Subgroup::from_elements(
            (0..n)
                .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
                .collect(),
        )
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let n = self.order;
        let mut comms = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.insert(c);
            }
        }
        self.closure(&comms.into_iter().collect::<Vec<_>>())
    }

    /// Every subgroup, found by closing cyclic subgroups under pairwise joins.
    pub fn all_subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| {
            let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut frontier: Vec<Vec<usize>> = Vec::new();
            for a in 0..self.order {
                let s = self.closure(&[a]).elements;
                if found.insert(s.clone()) {
                    frontier.push(s);
                }
            }
            let cyclic: Vec<Vec<usize>> = found.iter().cloned().collect();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for s in &frontier {
                    for c in &cyclic {
                        if c.iter().all(|e| s.binary_search(e).is_ok()) {
                            continue;
                        }
                        let mut gens = s.clone();
                        gens.extend_from_slice(c);
                        let joined = self.closure(&gens).elements;
                        if found.insert(joined.clone()) {
                            next.push(joined);
                        }
                    }
                }
                frontier = next;
            }
            found.into_iter().map(Subgroup::from_elements).collect()
        })
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order).all(|g| {
            let gi = self.inv(g);
            h.elements
                .iter()
                .all(|&x| h.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    /// Orders of the elements, indexed by element.
    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn invariants(&self) -> InvariantVector {
        let mut order_counts: Vec<(usize, usize)> = Vec::new();
        let orders = self.element_orders();
        for k in 1..=self.order {
            let c = orders.iter().filter(|&&o| o == k).count();
            if c > 0 {
                order_counts.push((k, c));
            }
        }
        let center = self.center();
        let mut center_orders: Vec<usize> = center.elements.iter().map(|&a| orders[a]).collect();
        center_orders.sort_unstable();
        let squares: BTreeSet<usize> = (0..self.order).map(|a| self.mul(a, a)).collect();
        InvariantVector {
            order: self.order,
            abelian: self.abelian,
            order_counts,
            center_size: center.len(),
            center_orders,
            derived_size: self.derived_subgroup().len(),
            squares: squares.len(),
        }
    }

    pub fn cayley_table(&self) -> LatinSquare {
        LatinSquare::from_rows(self.rows()).expect("group tables are latin")
    }

    /// Writes the plain-text group file format: `n` then `n` rows.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = self.row(a).iter().map(|e| e.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_file(name: &str, text: &str) -> Result<Self, GroupError> {
        let rows = crate::square::parse_grid(text).map_err(|e| GroupError::Parse(e.to_string()))?;
        Self::from_table(name, rows)
    }
}

/// Isomorphism invariants used to tell catalog entries apart.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct InvariantVector {
    pub order: usize,
    pub abelian: bool,
    /// `(element order, count)` pairs.
    pub order_counts: Vec<(usize, usize)>,
    pub center_size: usize,
    pub center_orders: Vec<usize>,
    pub derived_size: usize,
    /// Number of distinct squares `a^2`.
    pub squares: usize,
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self
            .order_counts
            .iter()
            .map(|(o, c)| format!("{o}^{c}"))
            .collect();
        write!(
            f,
            "orders=[{}] center={} derived={} abelian={} squares={}",
            orders.join(" "),
            self.center_size,
            self.derived_size,
            self.abelian,
            self.squares
        )
    }
}

/// A subgroup, stored as the sorted list of its elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    fn from_elements(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    /// Checks closure and returns the subgroup, or `None` if `elements` is
    /// not a subgroup of `g`.
    pub fn new(g: &Group, elements: Vec<usize>) -> Option<Self> {
        let s = Self::from_elements(elements);
        if s.elements.first() != Some(&0) || s.elements.iter().any(|&e| e >= g.order()) {
            return None;
        }
        let closed = s
            .elements
            .iter()
            .all(|&a| s.contains(g.inv(a)) && s.elements.iter().all(|&b| s.contains(g.mul(a, b))));
        closed.then_some(s)
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// The subgroup as a group in its own right, relabelled by position.
    pub fn to_group(&self, g: &Group, name: impl Into<String>) -> Group {
        let pos: HashMap<usize, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let rows = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos[&g.mul(a, b)]).collect())
            .collect();
        Group::from_table(name, rows).expect("subgroup of a valid group")
    }

    /// Left coset `gH`, sorted.
    pub fn left_coset(&self, g: &Group, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.elements.iter().map(|&h| g.mul(x, h)).collect();
        c.sort_unstable();
        c
    }

    /// Right coset `Hg`, sorted.
    pub fn right_coset(&self, g: &Group, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.elements.iter().map(|&h| g.mul(h, x)).collect();
        c.sort_unstable();
        c
    }
}

pub fn trivial() -> Group {
    cyclic(1)
}

pub fn cyclic(n: usize) -> Group {
    assert!(n >= 1, "cyclic group of order 0");
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i + j) % n))
        .collect();
    Group::from_flat(format!("Z{n}"), n, table).expect("cyclic table is a group")
}

/// Dihedral group with `order` elements (rotations first, then reflections).
pub fn dihedral(order: usize) -> Result<Group, GroupError> {
    if order == 0 || !order.is_multiple_of(2) {
        return Err(GroupError::OddDihedral(order));
    }
    let k = order / 2;
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|b| (0..k).map(move |i| (i, b))).collect();
    Group::from_elements(format!("D{order}"), elems, |&(i1, b1), &(i2, b2)| {
        let i = if b1 == 0 {
            (i1 + i2) % k
        } else {
            (i1 + k - i2) % k
        };
        (i, b1 ^ b2)
    })
}

/// Dicyclic group of the given order (`Q8` at order 8).
pub fn dicyclic(order: usize) -> Result<Group, GroupError> {
    if order == 0 || !order.is_multiple_of(4) {
        return Err(GroupError::BadDicyclicOrder(order));
    }
    let t = order / 4;
    let m = 2 * t;
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|b| (0..m).map(move |i| (i, b))).collect();
    let name = if order == 8 {
        "Q8".to_string()
    } else if order == 16 {
        "Q16".to_string()
    } else {
        format!("Dic{order}")
    };
    Group::from_elements(name, elems, |&(i1, b1), &(i2, b2)| match (b1, b2) {
        (0, b) => ((i1 + i2) % m, b),
        (_, 0) => ((i1 + m - i2) % m, 1),
        _ => ((i1 + m - i2 + t) % m, 0),
    })
}

/// Direct product; the pair `(a, b)` gets index `a * |h| + b`.
pub fn direct_product(g: &Group, h: &Group) -> Group {
    let (n, m) = (g.order(), h.order());
    let mut table = Vec::with_capacity(n * m * n * m);
    for a1 in 0..n {
        for b1 in 0..m {
            for a2 in 0..n {
                for b2 in 0..m {
                    table.push(g.mul(a1, a2) * m + h.mul(b1, b2));
                }
            }
        }
    }
    Group::from_flat(format!("{}x{}", g.name(), h.name()), n * m, table)
        .expect("direct product is a group")
}

/// Semidirect product `g ⋊ h`. `action[b]` is the permutation of `g`'s
/// elements by which `b` acts; the product is `(a,b)(c,d) = (a·action[b](c), bd)`.
pub fn semidirect_product(
    g: &Group,
    h: &Group,
    action: &[Vec<usize>],
) -> Result<Group, GroupError> {
    let (n, m) = (g.order(), h.order());
    if action.len() != m {
        return Err(GroupError::NotHomomorphism);
    }
    for (b, phi) in action.iter().enumerate() {
        let is_perm = phi.len() == n && {
            let mut seen = vec![false; n];
            phi.iter()
                .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !is_perm || (0..n).any(|x| (0..n).any(|y| phi[g.mul(x, y)] != g.mul(phi[x], phi[y]))) {
            return Err(GroupError::NotAutomorphism(b));
        }
    }
    for b in 0..m {
        for d in 0..m {
            let bd = h.mul(b, d);
            if (0..n).any(|c| action[bd][c] != action[b][action[d][c]]) {
                return Err(GroupError::NotHomomorphism);
            }
        }
    }
    let mut table = Vec::with_capacity(n * m * n * m);
    for a in 0..n {
        for b in 0..m {
            for c in 0..n {
                for d in 0..m {
                    table.push(g.mul(a, action[b][c]) * m + h.mul(b, d));
                }
            }
        }
    }
    Group::from_flat(format!("{}:{}", g.name(), h.name()), n * m, table)
}

/// Extends an action given on generators of `h` to all of `h`.
pub fn action_from_generators(
    g: &Group,
    h: &Group,
    gens: &[(usize, Vec<usize>)],
) -> Result<Vec<Vec<usize>>, GroupError> {
    let n = g.order();
    let mut action: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    action[0] = Some((0..n).collect());
    let mut queue = VecDeque::from([0]);
    while let Some(e) = queue.pop_front() {
        let phi_e = action[e].clone().expect("queued elements have actions");
        for (x, phi_x) in gens {
            let composed: Vec<usize> = (0..n).map(|c| phi_e[phi_x[c]]).collect();
            let ex = h.mul(e, *x);
            match &action[ex] {
                Some(existing) if *existing != composed => return Err(GroupError::NotHomomorphism),
                Some(_) => {}
                None => {
                    action[ex] = Some(composed);
                    queue.push_back(ex);
                }
            }
        }
    }
    action
        .into_iter()
        .map(|a| a.ok_or(GroupError::NotHomomorphism))
        .collect()
}

/// The automorphism `x ↦ kx` of `Z_n`.
pub fn cyclic_multiplier(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|x| (x * k) % n).collect()
}

/// Semidirect product `Z_n ⋊ Z_m` where the generator of `Z_m` acts by `x ↦ kx`.
pub fn metacyclic(n: usize, m: usize, k: usize) -> Result<Group, GroupError> {
    let g = cyclic(n);
    let h = cyclic(m);
    let action = action_from_generators(&g, &h, &[(1 % m, cyclic_multiplier(n, k))])?;
    semidirect_product(&g, &h, &action)
}

/// Largest power of two dividing `n`.
pub fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

/// True when the Sylow 2-subgroups are non-trivial and cyclic.
pub fn sylow2_cyclic(g: &Group) -> bool {
    let p = two_part(g.order());
    p > 1 && (0..g.order()).any(|a| g.element_order(a) == p)
}

/// All subgroups of the given order.
pub fn subgroups(g: &Group, order: usize) -> Vec<Subgroup> {
    if order == 0 || !g.order().is_multiple_of(order) {
        return Vec::new();
    }
    g.all_subgroups()
        .iter()
        .filter(|s| s.len() == order)
        .cloned()
        .collect()
}

/// An index-2 subgroup whose Sylow 2-subgroups are trivial or non-cyclic.
pub fn index2_subgroup_with_transversal(g: &Group) -> Option<Subgroup> {
    if !g.order().is_multiple_of(2) {
        return None;
    }
    subgroups(g, g.order() / 2)
        .into_iter()
        .find(|h| !sylow2_cyclic(&h.to_group(g, "H")))
}

pub fn cayley_table(g: &Group) -> LatinSquare {
    g.cayley_table()
}

fn perm_group(name: &str, perms: Vec<Vec<usize>>) -> Group {
    Group::from_elements(name, perms, |p: &Vec<usize>, q: &Vec<usize>| {
        q.iter().map(|&i| p[i]).collect()
    })
    .expect("permutation groups are groups")
}

fn all_perms(k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..k).permutations(k).collect()
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

pub fn symmetric4() -> Group {
    perm_group("S4", all_perms(4))
}

pub fn alternating4() -> Group {
    perm_group(
        "A4",
        all_perms(4).into_iter().filter(|p| is_even(p)).collect(),
    )
}

/// SL(2,3) as 2x2 matrices of determinant 1 over GF(3).
pub fn sl23() -> Group {
    let mut mats: Vec<[usize; 4]> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (a * d + 3 * 3 - b * c) % 3 == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let id = [1, 0, 0, 1];
    mats.retain(|m| *m != id);
    mats.insert(0, id);
    Group::from_elements("SL(2,3)", mats, |x, y| {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    })
    .expect("SL(2,3) is a group")
}

fn named(g: Group, name: &str) -> Group {
    g.with_name(name)
}

fn dp(parts: &[Group], name: &str) -> Group {
    let mut it = parts.iter();
    let first = it.next().expect("non-empty").clone();
    named(it.fold(first, |acc, g| direct_product(&acc, g)), name)
}

fn z(n: usize) -> Group {
    cyclic(n)
}

fn d(n: usize) -> Group {
    dihedral(n).expect("even order")
}

fn order16() -> Vec<Group> {
    let z4z2 = direct_product(&z(4), &z(2));
    // (x, y) -> (x, y + x mod 2) on Z4 x Z2
    let shear: Vec<usize> = (0..8)
        .map(|e| {
            let (x, y) = (e / 2, e % 2);
            x * 2 + (y + x) % 2
        })
        .collect();
    // (x, y) -> (x + 2y, y) on Z4 x Z2
    let central: Vec<usize> = (0..8)
        .map(|e| {
            let (x, y) = (e / 2, e % 2);
            ((x + 2 * y) % 4) * 2 + y
        })
        .collect();
    let act = |auto: Vec<usize>| {
        action_from_generators(&z4z2, &z(2), &[(1, auto)]).expect("involutive automorphism")
    };
    vec![
        z(16),
        dp(&[z(4), z(4)], "Z4xZ4"),
        named(
            semidirect_product(&z4z2, &z(2), &act(shear)).expect("valid action"),
            "(Z4xZ2):Z2",
        ),
        named(metacyclic(4, 4, 3).expect("valid action"), "Z4:Z4"),
        dp(&[z(8), z(2)], "Z8xZ2"),
        named(metacyclic(8, 2, 5).expect("valid action"), "M16"),
        d(16),
        named(metacyclic(8, 2, 3).expect("valid action"), "SD16"),
        dicyclic(16).expect("order 16"),
        dp(&[z(4), z(2), z(2)], "Z4xZ2^2"),
        dp(&[d(8), z(2)], "D8xZ2"),
        dp(&[dicyclic(8).expect("order 8"), z(2)], "Q8xZ2"),
        named(
            semidirect_product(&z4z2, &z(2), &act(central)).expect("valid action"),
            "Z4oD8",
        ),
        dp(&[z(2), z(2), z(2), z(2)], "Z2^4"),
    ]
}

fn order24() -> Vec<Group> {
    let q8 = dicyclic(8).expect("order 8");
    let d8 = d(8);
    // D8 acting on Z3: rotation inverts, reflection fixes.
    let z3 = z(3);
    let inv3 = cyclic_multiplier(3, 2);
    let id3: Vec<usize> = (0..3).collect();
    let d8_action =
        action_from_generators(&z3, &d8, &[(1, inv3), (4, id3)]).expect("valid D8 action");
    vec![
        named(metacyclic(3, 8, 2).expect("valid action"), "Z3:Z8"),
        z(24),
        sl23(),
        dicyclic(24).expect("order 24"),
        dp(&[z(4), d(6)], "Z4xD6"),
        d(24),
        dp(&[z(2), dicyclic(12).expect("order 12")], "Z2xDic12"),
        named(
            semidirect_product(&z3, &d8, &d8_action).expect("valid action"),
            "Z3:D8",
        ),
        dp(&[z(12), z(2)], "Z12xZ2"),
        dp(&[z(3), d8], "Z3xD8"),
        dp(&[z(3), q8], "Z3xQ8"),
        symmetric4(),
        dp(&[z(2), alternating4()], "Z2xA4"),
        dp(&[z(2), z(2), d(6)], "Z2^2xD6"),
        dp(&[z(6), z(2), z(2)], "Z6xZ2^2"),
    ]
}

/// One representative of every isomorphism class of groups of order `n`.
pub fn catalog(n: usize) -> Result<Vec<Group>, GroupError> {
    let groups = match n {
        1 => vec![named(z(1), "Z1")],
        2 | 3 | 5 | 7 | 11 | 13 | 17 | 19 | 23 => vec![z(n)],
        4 => vec![z(4), dp(&[z(2), z(2)], "Z2^2")],
        6 | 10 | 14 | 22 => vec![z(n), d(n)],
        8 => vec![
            z(8),
            dp(&[z(4), z(2)], "Z4xZ2"),
            dp(&[z(2), z(2), z(2)], "Z2^3"),
            d(8),
            dicyclic(8).expect("order 8"),
        ],
        9 => vec![z(9), dp(&[z(3), z(3)], "Z3^2")],
        12 => vec![
            z(12),
            dp(&[z(6), z(2)], "Z6xZ2"),
            d(12),
            alternating4(),
            dicyclic(12).expect("order 12"),
        ],
        15 => vec![z(15)],
        16 => order16(),
        18 => {
            let z3sq = direct_product(&z(3), &z(3));
            let inversion: Vec<usize> = (0..9).map(|e| z3sq.inv(e)).collect();
            let action = action_from_generators(&z3sq, &z(2), &[(1, inversion)])
                .expect("inversion is an automorphism");
            vec![
                z(18),
                dp(&[z(6), z(3)], "Z6xZ3"),
                d(18),
                dp(&[z(3), d(6)], "Z3xD6"),
                named(
                    semidirect_product(&z3sq, &z(2), &action).expect("valid action"),
                    "Z3^2:Z2",
                ),
            ]
        }
        20 => vec![
            z(20),
            dp(&[z(10), z(2)], "Z10xZ2"),
            d(20),
            dicyclic(20).expect("order 20"),
            named(metacyclic(5, 4, 2).expect("valid action"), "Z5:Z4"),
        ],
        21 => vec![
            z(21),
            named(metacyclic(7, 3, 2).expect("valid action"), "Z7:Z3"),
        ],
        24 => order24(),
        _ => return Err(GroupError::OrderOutOfRange(n)),
    };
    Ok(groups)
}

/// Looks up a catalog group by name, searching orders 1..=24.
pub fn by_name(name: &str) -> Result<Group, GroupError> {
    for n in 1..=CATALOG_MAX_ORDER {
        if let Some(g) = catalog(n)?.into_iter().find(|g| g.name() == name) {
            return Ok(g);
        }
    }
    Err(GroupError::UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CENSUS: [usize; 24] = [
        1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15,
    ];

    #[test]
    fn cyclic_examples() {
        let z5 = cyclic(5);
        assert_eq!(z5.mul(2, 4), 1);
        assert_eq!(cyclic(1).rows(), vec![vec![0]]);
        assert!(cyclic(6).is_abelian());
        assert_eq!(cyclic(6).element_orders(), vec![1, 6, 3, 2, 3, 6]);
        assert_eq!(trivial().element_orders(), vec![1]);
    }

    #[test]
    fn dihedral_examples() {
        assert!(!dihedral(6).unwrap().is_abelian());
        let d4 = dihedral(4).unwrap();
        assert!(d4.is_abelian());
        assert!(d4.element_orders().iter().skip(1).all(|&o| o == 2));
        let orders = dihedral(8).unwrap().element_orders();
        assert_eq!(orders.iter().max(), Some(&4));
        assert!(orders.contains(&4));
        assert_eq!(dihedral(7), Err(GroupError::OddDihedral(7)));
    }

    #[test]
    fn dicyclic_examples() {
        let q8 = dicyclic(8).unwrap();
        assert_eq!(q8.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        assert!(!q8.is_abelian());
        let q16 = dicyclic(16).unwrap();
        assert!(!subgroups(&q16, 8).is_empty());
        assert!((0..16).any(|a| q16.element_order(a) == 8));
        assert_eq!(dicyclic(6), Err(GroupError::BadDicyclicOrder(6)));
    }

    #[test]
    fn products() {
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert!(klein.element_orders().iter().skip(1).all(|&o| o == 2));
        assert_eq!(direct_product(&cyclic(2), &cyclic(10)).order(), 20);
        let z4 = cyclic(4);
        let trivial_action = vec![(0..4).collect::<Vec<_>>(); 3];
        let sd = semidirect_product(&z4, &cyclic(3), &trivial_action).unwrap();
        assert_eq!(sd.rows(), direct_product(&z4, &cyclic(3)).rows());
    }

    #[test]
    fn holomorph_has_trivial_center() {
        let hol = metacyclic(5, 4, 2).unwrap();
        assert_eq!(hol.order(), 20);
        // brute-force center
        let center: Vec<usize> = (0..20)
            .filter(|&a| (0..20).all(|b| hol.mul(a, b) == hol.mul(b, a)))
            .collect();
        assert_eq!(center, vec![0]);
    }

    #[test]
    fn z3_z8_has_cyclic_sylow() {
        let g = metacyclic(3, 8, 2).unwrap();
        assert!(g.element_orders().contains(&8));
        assert!(sylow2_cyclic(&g));
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        let z5 = cyclic(5);
        // x -> x + 1 is not an automorphism
        let shift: Vec<usize> = (0..5).map(|x| (x + 1) % 5).collect();
        let action = vec![(0..5).collect(), shift];
        assert_eq!(
            semidirect_product(&z5, &cyclic(2), &action),
            Err(GroupError::NotAutomorphism(1))
        );
        // x -> 2x has order 4, so it cannot be the image of an involution
        let action = vec![(0..5).collect(), cyclic_multiplier(5, 2)];
        assert_eq!(
            semidirect_product(&z5, &cyclic(2), &action),
            Err(GroupError::NotHomomorphism)
        );
    }

    #[test]
    fn sylow_examples() {
        assert!(sylow2_cyclic(&cyclic(6)));
        assert!(!sylow2_cyclic(&direct_product(&cyclic(2), &cyclic(2))));
        assert!(!sylow2_cyclic(&cyclic(5)));
    }

    #[test]
    fn subgroup_examples() {
        assert_eq!(
            subgroups(&cyclic(6), 3),
            vec![Subgroup {
                elements: vec![0, 2, 4]
            }]
        );
        assert!(subgroups(&cyclic(5), 2).is_empty());
        assert_eq!(
            subgroups(&direct_product(&cyclic(2), &cyclic(2)), 2).len(),
            3
        );
    }

    #[test]
    fn index2_examples() {
        let z2 = cyclic(2);
        let z2cubed = direct_product(&z2, &direct_product(&z2, &z2));
        let h = index2_subgroup_with_transversal(&z2cubed).expect("Klein subgroup");
        assert_eq!(h.len(), 4);
        let hg = h.to_group(&z2cubed, "H");
        assert!(hg.element_orders().iter().skip(1).all(|&o| o == 2));
        assert!(index2_subgroup_with_transversal(&cyclic(12)).is_none());
        assert!(index2_subgroup_with_transversal(&cyclic(5)).is_none());
    }

    #[test]
    fn census_counts_and_separation() {
        for n in 1..=CATALOG_MAX_ORDER {
            let groups = catalog(n).unwrap();
            assert_eq!(groups.len(), CENSUS[n - 1], "order {n}");
            let mut invs: Vec<InvariantVector> = groups.iter().map(|g| g.invariants()).collect();
            invs.sort();
            invs.dedup();
            assert_eq!(invs.len(), groups.len(), "invariants collide at order {n}");
            for g in &groups {
                assert_eq!(g.order(), n);
                assert!(g.cayley_table().order() == n);
            }
            let mut names: Vec<&str> = groups.iter().map(|g| g.name()).collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), groups.len());
        }
        assert_eq!(catalog(25), Err(GroupError::OrderOutOfRange(25)));
        assert_eq!(catalog(0), Err(GroupError::OrderOutOfRange(0)));
    }

    #[test]
    fn sylow_matches_closure_for_catalog() {
        for n in 1..=CATALOG_MAX_ORDER {
            for g in catalog(n).unwrap() {
                let p = two_part(n);
                // a Sylow 2-subgroup: any subgroup of order p
                let sylow = subgroups(&g, p)
                    .into_iter()
                    .next()
                    .expect("Sylow subgroups exist");
                let cyclic_direct =
                    p > 1 && sylow.elements().iter().any(|&a| g.closure(&[a]).len() == p);
                assert_eq!(sylow2_cyclic(&g), cyclic_direct, "{}", g.name());
            }
        }
    }

    #[test]
    fn subgroups_are_closed() {
        for n in [8, 12, 16, 24] {
            for g in catalog(n).unwrap() {
                for d in 1..=n {
                    for s in subgroups(&g, d) {
                        assert_eq!(s.len(), d);
                        assert!(Subgroup::new(&g, s.elements().to_vec()).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let g = dihedral(6).unwrap();
        let text = g.to_file_string();
        let back = Group::parse_file("D6", &text).unwrap();
        assert_eq!(back, g);
        assert!(Group::parse_file("bad", "2\n1 0\n0 1\n").is_err());
    }

    #[test]
    fn by_name_lookup() {
        assert_eq!(by_name("Q8").unwrap().order(), 8);
        assert_eq!(by_name("Z5:Z4").unwrap().order(), 20);
        assert!(matches!(by_name("nope"), Err(GroupError::UnknownName(_))));
    }
}
