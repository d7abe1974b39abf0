//! Finite groups given by explicit multiplication tables.
//!
//! Elements are indices `0..order` and the identity is always index 0. Groups
//! are immutable once built, so a `FiniteGroup` can be shared freely between
//! search threads.

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest group order any constructor or loader will produce.
pub const MAX_ORDER: usize = 4096;

/// Orders up to this bound are checked for associativity exhaustively.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;
const SAMPLED_ASSOC_TRIPLES: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("group order {order} exceeds cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("entry table[{row}][{col}] = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("index 0 is not an identity: table[{row}][{col}] = {value}")]
    IdentityNotZero { row: usize, col: usize, value: usize },
    #[error("idempotent non-identity element {element} breaks inverse law")]
    IdempotentNonIdentity { element: usize },
    #[error("row {row} is not a bijection (value {value} repeated)")]
    RowNotBijective { row: usize, value: usize },
    #[error("column {col} is not a bijection (value {value} repeated)")]
    ColumnNotBijective { col: usize, value: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("invalid action: t={t} does not define an automorphism of C{m} of order dividing {n}")]
    InvalidAction { m: usize, n: usize, t: usize },
}

/// A finite group as a multiplication table with identity at index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    elem_order: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `rows` as a group table and derives inverses and element orders.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge { order: n, cap: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::RaggedRow { row, len: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::OutOfRange { row, col, value });
                }
                table.push(value as u32);
            }
        }
        Self::from_flat(name.into(), n, table, true)
    }

    fn from_flat(name: String, n: usize, table: Vec<u32>, validate: bool) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        if validate {
            for a in 0..n {
                if at(0, a) != a {
                    return Err(GroupError::IdentityNotZero { row: 0, col: a, value: at(0, a) });
                }
                if at(a, 0) != a {
                    return Err(GroupError::IdentityNotZero { row: a, col: 0, value: at(a, 0) });
                }
            }
            for a in 1..n {
                if at(a, a) == a {
                    return Err(GroupError::IdempotentNonIdentity { element: a });
                }
            }
            let mut seen = vec![usize::MAX; n];
            for a in 0..n {
                for b in 0..n {
                    let v = at(a, b);
                    if seen[v] == a {
                        return Err(GroupError::RowNotBijective { row: a, value: v });
                    }
                    seen[v] = a;
                }
            }
            seen.fill(usize::MAX);
            for b in 0..n {
                for a in 0..n {
                    let v = at(a, b);
                    if seen[v] == b {
                        return Err(GroupError::ColumnNotBijective { col: b, value: v });
                    }
                    seen[v] = b;
                }
            }
            check_associative(n, &table)?;
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            // Latin rows guarantee exactly one b with a*b = 0.
            let b = (0..n).find(|&b| at(a, b) == 0).expect("latin square row");
            inverse[a] = b as u32;
        }
        let mut elem_order = vec![0u32; n];
        for (a, slot) in elem_order.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = at(x, a);
                k += 1;
            }
            *slot = k;
        }
        Ok(FiniteGroup { name, order: n, table, inverse, elem_order })
    }

    /// Parses the group-table text format: a header `group <name> <n>`
    /// followed by `n` rows of `n` element indices.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GroupError::Parse { line: 1, msg: "empty input".into() })?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("group") {
            return Err(GroupError::Parse { line: hline, msg: "expected `group <name> <n>`".into() });
        }
        let name = parts
            .next()
            .ok_or(GroupError::Parse { line: hline, msg: "missing group name".into() })?
            .to_string();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(GroupError::Parse { line: hline, msg: "missing or invalid order".into() })?;
        if parts.next().is_some() {
            return Err(GroupError::Parse { line: hline, msg: "trailing tokens in header".into() });
        }
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge { order: n, cap: MAX_ORDER });
        }
        let mut rows = Vec::with_capacity(n);
        for (line, l) in lines {
            if rows.len() == n {
                return Err(GroupError::Parse { line, msg: "more rows than the declared order".into() });
            }
            let row: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| GroupError::Parse { line, msg: "non-integer entry".into() })?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(GroupError::Parse {
                line: text.lines().count(),
                msg: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        Self::from_table(name, &rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("group {} {}\n", self.name, self.order);
        for a in 0..self.order {
            let row: Vec<String> = self.row(a).iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
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
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// Least `l >= 1` with `a^l = 0`.
    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    pub fn elem_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.elem_order.iter().map(|&o| o as usize)
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut x = 0;
        for _ in 0..k % self.elem_order(a) {
            x = self.mul(x, a);
        }
        x
    }

    /// Elements of order exactly 2, ascending.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.elem_order[a] == 2).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Generating set chosen greedily in index order: an element is added
    /// whenever it is not yet in the subgroup generated so far.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for a in 1..self.order {
            if inside[a] {
                continue;
            }
            gens.push(a);
            // Regrow the subgroup from scratch with the new generator set.
            inside.fill(false);
            inside[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }

    /// Enumerates automorphisms by backtracking over generator images in index
    /// order. The identity map is always the first entry.
    pub fn automorphisms(&self, limit: usize) -> AutomorphismSet {
        let limit = limit.max(1);
        let gens = self.greedy_generators();
        let identity: Vec<u32> = (0..self.order as u32).collect();
        let mut out = AutomorphismSet { autos: vec![GroupAutomorphism { perm: identity.clone() }], complete: true };
        if gens.is_empty() {
            return out;
        }
        let mut images = Vec::with_capacity(gens.len());
        let mut state = AutoSearch { group: self, gens: &gens, limit, identity, out: &mut out };
        state.extend(&mut images);
        out
    }

    /// Checks closure, associativity, identity and inverses over all triples.
    /// Used by tests and by callers that want to re-validate a table.
    pub fn check_laws(&self) -> Result<(), GroupError> {
        Self::from_flat(self.name.clone(), self.order, self.table.clone(), true).map(|_| ())
    }
}

fn check_associative(n: usize, table: &[u32]) -> Result<(), GroupError> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    let check = |a: usize, b: usize, c: usize| {
        if at(at(a, b), c) != at(a, at(b, c)) {
            Err(GroupError::NotAssociative { a, b, c })
        } else {
            Ok(())
        }
    };
    if n <= EXHAUSTIVE_ASSOC_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SAMPLED_ASSOC_TRIPLES {
            check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
        }
    }
    Ok(())
}

struct AutoSearch<'a> {
    group: &'a FiniteGroup,
    gens: &'a [usize],
    limit: usize,
    identity: Vec<u32>,
    out: &'a mut AutomorphismSet,
}

impl AutoSearch<'_> {
    /// Returns false once the search should stop.
    fn extend(&mut self, images: &mut Vec<usize>) -> bool {
        let g = self.group;
        let depth = images.len();
        if depth == self.gens.len() {
            let perm = self.partial_map(images).expect("checked at previous level");
            if perm == self.identity {
                return true;
            }
            if self.out.autos.len() == self.limit {
                self.out.complete = false;
                return false;
            }
            self.out.autos.push(GroupAutomorphism { perm });
            return true;
        }
        let target_order = g.elem_order(self.gens[depth]);
        for cand in 1..g.order {
            if g.elem_order(cand) != target_order {
                continue;
            }
            images.push(cand);
            if self.partial_map(images).is_some() && !self.extend(images) {
                images.pop();
                return false;
            }
            images.pop();
        }
        true
    }

    /// Builds the map on the subgroup generated by the first `images.len()`
    /// generators; `None` if it is not a well-defined injective homomorphism.
    fn partial_map(&self, images: &[usize]) -> Option<Vec<u32>> {
        let g = self.group;
        let gens = &self.gens[..images.len()];
        let mut map = vec![u32::MAX; g.order];
        let mut used = vec![false; g.order];
        map[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x] as usize;
            for (&gen, &img) in gens.iter().zip(images) {
                let y = g.mul(x, gen);
                let fy = g.mul(fx, img);
                if map[y] == u32::MAX {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = fy as u32;
                    queue.push_back(y);
                } else if map[y] as usize != fy {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// A bijection on group elements preserving multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism {
    pub perm: Vec<u32>,
}

impl GroupAutomorphism {
    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.perm[a] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }
}

#[derive(Debug, Clone)]
pub struct AutomorphismSet {
    pub autos: Vec<GroupAutomorphism>,
    /// False when enumeration stopped at the limit.
    pub complete: bool,
}

/// `C_n` with `a*b = (a+b) mod n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroOrder);
    }
    if n > MAX_ORDER {
        return Err(GroupError::OrderTooLarge { order: n, cap: MAX_ORDER });
    }
    let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
    FiniteGroup::from_flat(format!("C{n}"), n, table, false)
}

/// Dihedral group with `2n` elements: rotations `r_0..r_{n-1}` at indices
/// `0..n`, reflections `s_0..s_{n-1}` at `n..2n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroOrder);
    }
    if 2 * n > MAX_ORDER {
        return Err(GroupError::OrderTooLarge { order: 2 * n, cap: MAX_ORDER });
    }
    let m = 2 * n;
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            let (i, j) = (a % n, b % n);
            let v = match (a < n, b < n) {
                (true, true) => (i + j) % n,
                (true, false) => n + (i + j) % n,
                (false, true) => n + (i + n - j) % n,
                (false, false) => (i + n - j) % n,
            };
            table[a * m + b] = v as u32;
        }
    }
    FiniteGroup::from_flat(format!("D{n}"), m, table, false)
}

/// Componentwise product; element `(a, b)` has index `a*|B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    direct_product_capped(a, b, MAX_ORDER)
}

pub fn direct_product_capped(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<FiniteGroup, GroupError> {
    let (na, nb) = (a.order, b.order);
    let n = na * nb;
    if n > cap.min(MAX_ORDER) {
        return Err(GroupError::OrderTooLarge { order: n, cap: cap.min(MAX_ORDER) });
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = (a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)) as u32;
        }
    }
    FiniteGroup::from_flat(format!("{}x{}", a.name, b.name), n, table, false)
}

/// `C_m ⋊ C_n` with `(a,x)(b,y) = (a + t^x b mod m, x + y mod n)`; element
/// `(a, x)` has index `a*n + x`.
pub fn semidirect_product_cyclic(m: usize, n: usize, t: usize) -> Result<FiniteGroup, GroupError> {
    if m == 0 || n == 0 {
        return Err(GroupError::ZeroOrder);
    }
    if m * n > MAX_ORDER {
        return Err(GroupError::OrderTooLarge { order: m * n, cap: MAX_ORDER });
    }
    let t = t % m.max(1);
    let powmod = |base: usize, exp: usize| {
        let mut r = 1 % m;
        for _ in 0..exp {
            r = r * base % m;
        }
        r
    };
    if gcd(t, m) != 1 || powmod(t, n) != 1 % m {
        return Err(GroupError::InvalidAction { m, n, t });
    }
    let tp: Vec<usize> = (0..n).map(|x| powmod(t, x)).collect();
    let size = m * n;
    let mut table = vec![0u32; size * size];
    for p in 0..size {
        let (a, x) = (p / n, p % n);
        for q in 0..size {
            let (b, y) = (q / n, q % n);
            let c = (a + tp[x] * b) % m;
            let z = (x + y) % n;
            table[p * size + q] = (c * n + z) as u32;
        }
    }
    FiniteGroup::from_flat(format!("C{m}:C{n}"), size, table, false)
}

/// Groups reachable from the constructors up to `max_order`: abelian groups
/// in invariant-factor form `C_{d1} x C_{d2} x ...` with `d1 | d2 | ...`,
/// then `D_n` for `n >= 3`, then `C_m x D_n`. Sorted by order; isomorphic
/// duplicates are possible only above order 10 (`C2xD3` and `D6`).
pub fn constructor_groups(max_order: usize) -> Vec<FiniteGroup> {
    fn chains(max: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let prod: usize = acc.iter().product();
        for d in (last.max(2)..).take_while(|&d| prod * d <= max) {
            if d % last == 0 {
                acc.push(d);
                out.push(acc.clone());
                chains(max, d, acc, out);
                acc.pop();
            }
        }
    }
    let max_order = max_order.min(MAX_ORDER);
    if max_order == 0 {
        return Vec::new();
    }
    let mut specs = vec!["C1".to_string()];
    let mut factor_lists = Vec::new();
    chains(max_order, 1, &mut Vec::new(), &mut factor_lists);
    specs.extend(factor_lists.iter().map(|f| f.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")));
    specs.extend((3..).take_while(|n| 2 * n <= max_order).map(|n| format!("D{n}")));
    for n in (3..).take_while(|n| 4 * n <= max_order) {
        specs.extend((2..).take_while(|m| 2 * n * m <= max_order).map(|m| format!("C{m}xD{n}")));
    }
    let mut groups: Vec<FiniteGroup> = specs.iter().map(|s| parse_group_spec(s).expect("constructible spec")).collect();
    groups.sort_by_key(|g| g.order());
    groups
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parses a compact group description: `C<n>`, `D<n>`, `C<m>:C<n>@<t>`, and
/// `x`-separated direct products of those, e.g. `C3xC3xD5`.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
    let err = |msg: &str| GroupError::Parse { line: 1, msg: format!("{msg} in group spec `{spec}`") };
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(err("empty"));
    }
    let mut factors = Vec::new();
    for part in spec.split('x') {
        let part = part.trim();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err("bad number"));
        let g = if let Some((left, right)) = part.split_once(':') {
            let (right, t) = right.split_once('@').ok_or_else(|| err("semidirect factor needs `@t`"))?;
            let m = num(left.strip_prefix('C').ok_or_else(|| err("expected C<m>"))?)?;
            let n = num(right.strip_prefix('C').ok_or_else(|| err("expected C<n>"))?)?;
            semidirect_product_cyclic(m, n, num(t)?)?
        } else if let Some(n) = part.strip_prefix('C') {
            cyclic(num(n)?)?
        } else if let Some(n) = part.strip_prefix('D') {
            dihedral(num(n)?)?
        } else {
            return Err(err("unknown factor"));
        };
        factors.push(g);
    }
    // Fold from the right so that `AxBxC` indexes as a*|B||C| + b*|C| + c.
    let mut acc = factors.pop().expect("non-empty");
    while let Some(f) = factors.pop() {
        acc = direct_product(&f, &acc)?;
    }
    Ok(acc.with_name(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_groups_up_to_ten() {
        let gs = constructor_groups(10);
        let mut per_order = [0usize; 11];
        for g in &gs {
            g.check_laws().unwrap();
            per_order[g.order()] += 1;
        }
        // Every group of order at most 10 except the quaternion group.
        assert_eq!(per_order, [0, 1, 1, 1, 2, 1, 2, 1, 4, 2, 2]);
        let mut sigs: Vec<(usize, bool, Vec<usize>)> = gs
            .iter()
            .map(|g| {
                let mut o: Vec<usize> = g.elem_orders().collect();
                o.sort();
                (g.order(), g.is_abelian(), o)
            })
            .collect();
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), gs.len());
        assert!(constructor_groups(0).is_empty());
    }

    fn brute_force_is_group(rows: &[Vec<usize>]) -> bool {
        let n = rows.len();
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| rows[rows[a][b]][c] == rows[a][rows[b][c]])));
        let ident = (0..n).all(|a| rows[0][a] == a && rows[a][0] == a);
        let inv = (0..n).all(|a| (0..n).any(|b| rows[a][b] == 0 && rows[b][a] == 0));
        assoc && ident && inv
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::parse("group T 1\n0\n").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elem_orders().collect::<Vec<_>>(), vec![1]);
        assert_eq!(cyclic(1).unwrap().order(), 1);
    }

    #[test]
    fn c5_orders() {
        let text = "group C5 5\n".to_string()
            + &(0..5).map(|a| (0..5).map(|b| ((a + b) % 5).to_string()).collect::<Vec<_>>().join(" ") + "\n").collect::<String>();
        let g = FiniteGroup::parse(&text).unwrap();
        assert_eq!(g.elem_orders().collect::<Vec<_>>(), vec![1, 5, 5, 5, 5]);
        assert_eq!(g, cyclic(5).unwrap().with_name("C5"));
    }

    #[test]
    fn idempotent_rejected() {
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(!brute_force_is_group(&rows));
        let err = FiniteGroup::from_table("bad", &rows).unwrap_err();
        assert_eq!(err, GroupError::IdempotentNonIdentity { element: 1 });
        assert_eq!(err.to_string(), "idempotent non-identity element 1 breaks inverse law");
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(FiniteGroup::parse(""), Err(GroupError::Parse { .. })));
        assert!(matches!(FiniteGroup::parse("group X 2\n0 1\n"), Err(GroupError::Parse { .. })));
        assert!(matches!(FiniteGroup::parse("group X 2\n0 1\n1 5\n"), Err(GroupError::OutOfRange { row: 1, col: 1, value: 5 })));
        assert!(matches!(FiniteGroup::parse("group X 2\n1 0\n0 1\n"), Err(GroupError::IdentityNotZero { .. })));
        // Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(!brute_force_is_group(&rows));
        assert!(matches!(FiniteGroup::from_table("L", &rows), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn dihedral_involutions() {
        let d4 = dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        let brute: Vec<usize> = (1..8).filter(|&a| d4.mul(a, a) == 0).collect();
        assert_eq!(d4.involutions(), brute);
        assert_eq!(brute.len(), 5);
        let d1 = dihedral(1).unwrap();
        assert_eq!(d1.order(), 2);
        assert_eq!(d1.involutions(), vec![1]);
        assert!(d1.check_laws().is_ok());
        assert!(dihedral(5).unwrap().check_laws().is_ok());
    }

    #[test]
    fn involutions_small() {
        assert!(cyclic(5).unwrap().involutions().is_empty());
        assert_eq!(cyclic(2).unwrap().involutions(), vec![1]);
    }

    #[test]
    fn products() {
        let g = direct_product(&cyclic(5).unwrap(), &dihedral(4).unwrap()).unwrap();
        assert_eq!(g.order(), 40);
        g.check_laws().unwrap();
        let t = direct_product(&cyclic(1).unwrap(), &dihedral(3).unwrap()).unwrap();
        assert_eq!(t.row(3), dihedral(3).unwrap().row(3));
        let big = direct_product(&cyclic(3).unwrap(), &direct_product(&cyclic(3).unwrap(), &dihedral(5).unwrap()).unwrap()).unwrap();
        assert_eq!(big.order(), 90);
        assert!(matches!(
            direct_product(&cyclic(100).unwrap(), &cyclic(100).unwrap()),
            Err(GroupError::OrderTooLarge { order: 10000, .. })
        ));
    }

    #[test]
    fn semidirect_actions() {
        // 3^9 = 19683 = 1 mod 13
        assert_eq!(19683 % 13, 1);
        let g = semidirect_product_cyclic(13, 9, 3).unwrap();
        assert_eq!(g.order(), 117);
        g.check_laws().unwrap();
        assert!(!g.is_abelian());
        let t1 = semidirect_product_cyclic(4, 3, 1).unwrap();
        assert!(t1.is_abelian());
        // 2^9 = 16 mod 31 so t=2 is not an action of C9 on C31.
        assert!(matches!(semidirect_product_cyclic(31, 9, 2), Err(GroupError::InvalidAction { .. })));
        let h = semidirect_product_cyclic(31, 9, 25).unwrap();
        assert_eq!(h.order(), 279);
        assert!(semidirect_product_cyclic(6, 2, 2).is_err());
    }

    fn brute_force_automorphisms(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, perm: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let n = g.order();
            if perm.len() == n {
                if (0..n).all(|a| (0..n).all(|b| perm[g.mul(a, b)] == g.mul(perm[a], perm[b]))) {
                    *count += 1;
                }
                return;
            }
            for c in 0..n {
                if !used[c] {
                    used[c] = true;
                    perm.push(c);
                    rec(g, perm, used, count);
                    perm.pop();
                    used[c] = false;
                }
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut count);
        count
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let c5 = cyclic(5).unwrap();
        assert_eq!(brute_force_automorphisms(&c5), 4);
        let set = c5.automorphisms(2000);
        assert!(set.complete);
        assert_eq!(set.autos.len(), 4);
        assert!(set.autos[0].is_identity());
        for g in [cyclic(1).unwrap(), cyclic(2).unwrap()] {
            let set = g.automorphisms(10);
            assert_eq!(set.autos.len(), 1);
            assert!(set.complete);
        }
        for g in [dihedral(3).unwrap(), dihedral(4).unwrap(), cyclic(8).unwrap(), parse_group_spec("C2xC2xC2").unwrap()] {
            let set = g.automorphisms(2000);
            assert!(set.complete);
            assert_eq!(set.autos.len(), brute_force_automorphisms(&g), "{}", g.name());
        }
    }

    #[test]
    fn automorphism_limit_and_closure() {
        let g = parse_group_spec("C2xC2xC2").unwrap();
        let limited = g.automorphisms(5);
        assert_eq!(limited.autos.len(), 5);
        assert!(!limited.complete);

        for g in [dihedral(4).unwrap(), parse_group_spec("C2xC6").unwrap(), dihedral(6).unwrap()] {
            let set = g.automorphisms(2000);
            assert!(set.complete);
            let all: std::collections::HashSet<_> = set.autos.iter().map(|a| a.perm.clone()).collect();
            for x in &set.autos {
                for y in &set.autos {
                    let comp: Vec<u32> = (0..g.order()).map(|a| x.perm[y.apply(a)]).collect();
                    assert!(all.contains(&comp));
                }
            }
        }
    }

    #[test]
    fn group_spec_parsing() {
        let g = parse_group_spec("C3xC3xD5").unwrap();
        assert_eq!(g.order(), 90);
        assert_eq!(g.name(), "C3xC3xD5");
        let s = parse_group_spec("C13:C9@3").unwrap();
        assert_eq!(s, semidirect_product_cyclic(13, 9, 3).unwrap().with_name("C13:C9@3"));
        assert!(parse_group_spec("Q8").is_err());
        assert!(parse_group_spec("C").is_err());
        assert!(parse_group_spec("C31:C9@2").is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = dihedral(3).unwrap();
        assert_eq!(FiniteGroup::parse(&g.to_text()).unwrap(), g);
    }
}
