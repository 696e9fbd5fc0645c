//! Finite groups as multiplication tables, with subgroups and quotients.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::character::IrreducibleRecord;
use super::{FincharError, Result};

/// Largest group order accepted by any constructor.
pub const GROUP_ORDER_CAP: usize = 2187;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub type Group = Arc<FiniteGroup>;

#[derive(Default)]
pub(super) struct GroupCache {
    pub(super) linear: OnceLock<(u32, Vec<Vec<u32>>)>,
    pub(super) irreducible: OnceLock<Result<Vec<IrreducibleRecord>>>,
}

/// A finite group with identity at index 0.
pub struct FiniteGroup {
    id: u64,
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<usize>,
    permutations: Option<Vec<Vec<usize>>>,
    pub(super) cache: GroupCache,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRepr {
    #[serde(default)]
    name: Option<String>,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Closes `gens` under `mul` and tabulates the result. Returns the group
    /// and its elements in index order (identity first).
    pub fn from_generators<T, M, L>(name: &str, identity: T, gens: &[T], mul: M, label: L) -> Result<(Group, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let y = mul(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() == GROUP_ORDER_CAP {
                        return Err(FincharError::GroupTooLarge { order: elements.len() + 1, cap: GROUP_ORDER_CAP });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&mul(&elements[i], &elements[j])] as u32;
            }
        }
        let mut generators: Vec<usize> = gens.iter().map(|g| index[g]).filter(|&g| g != 0).collect();
        generators.dedup();
        let labels = elements.iter().map(label).collect();
        let group = Self::assemble(name.to_string(), n, table, labels, Some(generators), None)?;
        Ok((group, elements))
    }

    /// Validates an explicit table: identity at index 0, Latin square rows and
    /// columns, and associativity (exhaustive up to order 64, sampled above).
    pub fn from_table(name: &str, rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(FincharError::InvalidGroup("empty table".into()));
        }
        if n > GROUP_ORDER_CAP {
            return Err(FincharError::GroupTooLarge { order: n, cap: GROUP_ORDER_CAP });
        }
        let mut table = vec![0u32; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(FincharError::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(FincharError::InvalidGroup(format!("entry {v} out of range")));
                }
                table[i * n + j] = v as u32;
            }
        }
        let at = |i: usize, j: usize| table[i * n + j] as usize;
        for i in 0..n {
            if at(0, i) != i || at(i, 0) != i {
                return Err(FincharError::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                row_seen[at(i, j)] = true;
                col_seen[at(j, i)] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(FincharError::InvalidGroup(format!("row or column {i} is not a permutation")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(FincharError::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(FincharError::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => return Err(FincharError::InvalidGroup(format!("{} labels for {n} elements", l.len()))),
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        Self::assemble(name.to_string(), n, table, labels, None, None)
    }

    pub fn from_json(text: &str) -> Result<Group> {
        let r: TableRepr = serde_json::from_str(text).map_err(|e| FincharError::Parse(e.to_string()))?;
        Self::from_table(r.name.as_deref().unwrap_or("table"), r.table, r.labels)
    }

    pub fn to_json(&self) -> String {
        let rows = (0..self.order).map(|i| (0..self.order).map(|j| self.mul(i, j)).collect()).collect();
        serde_json::to_string(&TableRepr { name: Some(self.name.clone()), table: rows, labels: Some(self.labels.clone()) })
            .expect("table serializes")
    }

    pub(super) fn assemble(
        name: String,
        n: usize,
        table: Vec<u32>,
        labels: Vec<String>,
        generators: Option<Vec<usize>>,
        permutations: Option<Vec<Vec<usize>>>,
    ) -> Result<Group> {
        let at = |i: usize, j: usize| table[i * n + j] as usize;
        let mut inverses = vec![0; n];
        for (i, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&j| at(i, j) == 0)
                .ok_or_else(|| FincharError::InvalidGroup(format!("element {i} has no inverse")))?;
        }
        let mut element_orders = vec![0; n];
        for (i, ord) in element_orders.iter_mut().enumerate() {
            let (mut x, mut k) = (i, 1);
            while x != 0 {
                x = at(x, i);
                k += 1;
            }
            *ord = k;
        }
        let generators = match generators {
            Some(g) => g,
            None => greedy_generators(n, &at),
        };
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![x];
            class_of[x] = id;
            let mut k = 0;
            while k < members.len() {
                let y = members[k];
                for &g in &generators {
                    let z = at(at(g, y), inverses[g]);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        members.push(z);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(Arc::new(FiniteGroup {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name,
            order: n,
            table,
            inverses,
            element_orders,
            classes,
            class_of,
            labels,
            generators,
            permutations,
            cache: GroupCache::default(),
        }))
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(FincharError::BadParameters("cyclic group of order 0".into()));
        }
        let (g, _) = Self::from_generators(&format!("cyclic:{n}"), 0usize, &[1 % n], |a, b| (a + b) % n, |a| {
            match a {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            }
        })?;
        Ok(g)
    }

    /// The dihedral group of order `2n`: symmetries of a regular `n`-gon.
    pub fn dihedral(n: usize) -> Result<Group> {
        if n < 2 {
            return Err(FincharError::BadParameters("dihedral:n needs n >= 2".into()));
        }
        let mul = |x: &(usize, usize), y: &(usize, usize)| {
            let r = if x.1 == 0 { x.0 + y.0 } else { x.0 + n - y.0 };
            (r % n, (x.1 + y.1) % 2)
        };
        let label = |x: &(usize, usize)| match *x {
            (0, 0) => "e".to_string(),
            (0, 1) => "s".to_string(),
            (r, 0) => format!("r^{r}"),
            (r, _) => format!("r^{r}s"),
        };
        let (g, _) = Self::from_generators(&format!("dihedral:{n}"), (0, 0), &[(1 % n, 0), (0, 1)], mul, label)?;
        Ok(g)
    }

    fn permutation_group(name: String, degree: usize, gens: Vec<Vec<usize>>) -> Result<Group> {
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |p: &Vec<usize>, q: &Vec<usize>| q.iter().map(|&x| p[x]).collect::<Vec<usize>>();
        let (g, elements) = Self::from_generators(&name, identity, &gens, compose, |p| cycle_notation(p))?;
        let g = Arc::try_unwrap(g).expect("fresh group");
        Ok(Arc::new(FiniteGroup { permutations: Some(elements), ..g }))
    }

    /// Symmetric group on `n` points; the product `p·q` applies `q` first.
    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(FincharError::BadParameters("sym:n needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(cycle);
        }
        Self::permutation_group(format!("sym:{n}"), n, gens)
    }

    pub fn alternating(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(FincharError::BadParameters("alt:n needs n >= 1".into()));
        }
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Self::permutation_group(format!("alt:{n}"), n, gens)
    }

    /// The quaternion group of order 8, as 2×2 matrices over `Z[i]`.
    pub fn quaternion() -> Result<Group> {
        type Gauss = (i64, i64);
        type M = [Gauss; 4];
        fn gm(a: Gauss, b: Gauss) -> Gauss {
            (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
        }
        fn ga(a: Gauss, b: Gauss) -> Gauss {
            (a.0 + b.0, a.1 + b.1)
        }
        let mul = |x: &M, y: &M| -> M {
            [
                ga(gm(x[0], y[0]), gm(x[1], y[2])),
                ga(gm(x[0], y[1]), gm(x[1], y[3])),
                ga(gm(x[2], y[0]), gm(x[3], y[2])),
                ga(gm(x[2], y[1]), gm(x[3], y[3])),
            ]
        };
        let one: M = [(1, 0), (0, 0), (0, 0), (1, 0)];
        let i: M = [(0, 1), (0, 0), (0, 0), (0, -1)];
        let j: M = [(0, 0), (1, 0), (-1, 0), (0, 0)];
        let k = mul(&i, &j);
        let neg = |m: &M| -> M { m.map(|(a, b)| (-a, -b)) };
        let named = [(one, "1"), (neg(&one), "-1"), (i, "i"), (neg(&i), "-i"), (j, "j"), (neg(&j), "-j"), (k, "k"), (neg(&k), "-k")];
        let label = move |m: &M| named.iter().find(|(x, _)| x == m).map(|(_, s)| s.to_string()).unwrap_or_default();
        let (g, _) = Self::from_generators("quaternion", one, &[i, j], mul, label)?;
        Ok(g)
    }

    pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
        let n = a.order() * b.order();
        if n > GROUP_ORDER_CAP {
            return Err(FincharError::GroupTooLarge { order: n, cap: GROUP_ORDER_CAP });
        }
        let mut gens = Vec::new();
        for &g in a.generators() {
            gens.push((g, 0));
        }
        for &h in b.generators() {
            gens.push((0, h));
        }
        let (g, _) = Self::from_generators(
            &format!("{}x{}", a.name(), b.name()),
            (0usize, 0usize),
            &gens,
            |x, y| (a.mul(x.0, y.0), b.mul(x.1, y.1)),
            |x| format!("({},{})", a.label(x.0), b.label(x.1)),
        )?;
        Ok(g)
    }

    /// Presets `cyclic:n`, `dihedral:n` (order 2n), `sym:n`, `alt:n`,
    /// `quaternion`, `heisenberg:p`.
    pub fn preset(spec: &str) -> Result<Group> {
        let spec = spec.trim();
        let (kind, arg) = match spec.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (spec, None),
        };
        let num = || -> Result<usize> {
            arg.ok_or_else(|| FincharError::Parse(format!("preset `{spec}` needs a size")))?
                .trim()
                .parse::<usize>()
                .map_err(|_| FincharError::Parse(format!("bad size in `{spec}`")))
        };
        match kind.to_ascii_lowercase().as_str() {
            "cyclic" | "c" | "z" => Self::cyclic(num()?),
            "dihedral" | "d" => Self::dihedral(num()?),
            "sym" | "s" => Self::symmetric(num()?),
            "alt" | "a" => Self::alternating(num()?),
            "quaternion" | "q8" => Self::quaternion(),
            "heisenberg" | "h" => Ok(super::Heisenberg::new(num()? as u64)?.group().clone()),
            _ => Err(FincharError::Parse(format!("unknown group preset `{spec}`"))),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let e = k.unsigned_abs() % self.element_orders[a] as u64;
        (0..e).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `g x g^{-1}`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn exponent(&self) -> usize {
        self.element_orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn permutation(&self, x: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[x].as_slice())
    }

    pub fn permutation_degree(&self) -> Option<usize> {
        self.permutations.as_ref().map(|p| p[0].len())
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        self.id == other.id
    }

    /// Sorted closure of `elements` under multiplication.
    pub fn closure(&self, elements: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in elements {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| self.class_of(z) != usize::MAX && self.classes[self.class_of(z)].len() == 1).collect()
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for &b in &self.generators {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        // The normal closure of commutators [a, g] with g a generator is [G, G].
        let mut normal = comms.clone();
        for &c in &comms {
            for x in 0..self.order {
                normal.push(self.conj(x, c));
            }
        }
        normal.sort_unstable();
        normal.dedup();
        self.closure(&normal)
    }

    pub fn is_normal_set(&self, elements: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &e in elements {
            inside[e] = true;
        }
        elements
            .iter()
            .all(|&n| self.generators.iter().all(|&g| inside[self.conj(g, n)] && inside[self.conj(self.inv(g), n)]))
    }
}

fn greedy_generators(n: usize, at: &dyn Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for x in 1..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        // Re-close from scratch with the enlarged generating set.
        let mut k = 0;
        while k < members.len() {
            let y = members[k];
            for &g in &gens {
                let z = at(y, g);
                if !inside[z] {
                    inside[z] = true;
                    members.push(z);
                }
            }
            k += 1;
        }
    }
    gens
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// A subgroup together with its own multiplication table.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Group,
    group: Group,
    embed: Vec<usize>,
    locate: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn generated(parent: &Group, gens: &[usize]) -> Result<Self> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= parent.order()) {
            return Err(FincharError::BadParameters(format!("element {bad} out of range")));
        }
        let names: Vec<&str> = gens.iter().map(|&g| parent.label(g)).collect();
        let name = format!("<{}> in {}", names.join(","), parent.name());
        let (group, embed) =
            FiniteGroup::from_generators(&name, 0usize, gens, |a, b| parent.mul(*a, *b), |a| parent.label(*a).to_string())?;
        let mut locate = vec![None; parent.order()];
        for (i, &e) in embed.iter().enumerate() {
            locate[e] = Some(i);
        }
        Ok(Subgroup { parent: parent.clone(), group, embed, locate })
    }

    pub fn from_elements(parent: &Group, elements: &[usize]) -> Result<Self> {
        let mut set: Vec<usize> = elements.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.iter().any(|&e| e >= parent.order()) || parent.closure(&set) != set {
            return Err(FincharError::NotASubgroup);
        }
        Self::generated(parent, &set)
    }

    pub fn whole(parent: &Group) -> Self {
        Self::generated(parent, parent.generators()).expect("generators of a group")
    }

    pub fn trivial(parent: &Group) -> Self {
        Self::generated(parent, &[]).expect("trivial subgroup")
    }

    pub fn center(parent: &Group) -> Self {
        Self::from_elements(parent, &parent.center()).expect("center is a subgroup")
    }

    pub fn derived(parent: &Group) -> Self {
        Self::from_elements(parent, &parent.derived_subgroup()).expect("derived subgroup")
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.embed.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Parent index of the subgroup element `i`.
    pub fn embed(&self, i: usize) -> usize {
        self.embed[i]
    }

    /// Subgroup index of the parent element `x`, if it lies in the subgroup.
    pub fn locate(&self, x: usize) -> Option<usize> {
        self.locate[x]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.locate[x].is_some()
    }

    /// Parent indices of all elements, sorted.
    pub fn elements(&self) -> Vec<usize> {
        let mut e = self.embed.clone();
        e.sort_unstable();
        e
    }

    pub fn is_normal(&self) -> bool {
        self.parent.is_normal_set(&self.embed)
    }

    /// Left cosets `gH`, each sorted, ordered by smallest element (so the
    /// subgroup itself comes first).
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let p = &self.parent;
        let mut assigned = vec![false; p.order()];
        let mut cosets = Vec::new();
        for g in 0..p.order() {
            if assigned[g] {
                continue;
            }
            let mut c: Vec<usize> = self.embed.iter().map(|&h| p.mul(g, h)).collect();
            c.sort_unstable();
            for &x in &c {
                assigned[x] = true;
            }
            cosets.push(c);
        }
        cosets
    }

    /// Smallest element of each left coset.
    pub fn coset_reps(&self) -> Vec<usize> {
        self.left_cosets().into_iter().map(|c| c[0]).collect()
    }

    pub fn quotient(&self) -> Result<Quotient> {
        if !self.is_normal() {
            return Err(FincharError::NotNormal);
        }
        let p = &self.parent;
        let cosets = self.left_cosets();
        let mut proj = vec![0usize; p.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                proj[x] = i;
            }
        }
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for i in 0..q {
            for j in 0..q {
                table[i * q + j] = proj[p.mul(reps[i], reps[j])] as u32;
            }
        }
        let labels = reps.iter().map(|&r| format!("{}N", p.label(r))).collect();
        let group = FiniteGroup::assemble(format!("{}/N", p.name()), q, table, labels, None, None)?;
        Ok(Quotient { group, proj, reps })
    }
}

/// `G/N` with the projection and a fixed representative of each coset.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub proj: Vec<usize>,
    pub reps: Vec<usize>,
}

impl Quotient {
    pub fn is_cyclic(&self) -> bool {
        let g = &self.group;
        (0..g.order()).any(|x| g.element_order(x) == g.order())
    }
}
