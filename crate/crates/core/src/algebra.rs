//! Finite Ω-algebras given by total operation tables.
//!
//! Elements of a carrier of size `n` are the indices `0..n`. An operation of
//! arity `k` is stored as a flat row-major table of length `n^k`, so the
//! value of `ω(a_0, ..., a_{k-1})` lives at `Σ a_i · n^(k-1-i)`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{checked_pow, guard, Error, Result};
use crate::tuples::{decode, encode, for_each_tuple_containing};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 3] = ["BOOL_LAT", "MEET_SL", "CHAIN3"];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operation {
    pub symbol: String,
    pub arity: usize,
}

/// An ordered list of operation symbols with finite arities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<Operation>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (symbol, arity) in ops {
            let symbol = symbol.into();
            if !seen.insert(symbol.clone()) {
                return Err(Error::DuplicateSymbol(symbol));
            }
            out.push(Operation { symbol, arity });
        }
        Ok(Signature { ops: out })
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|op| op.arity == 0)
    }
}

/// Unvalidated algebra description, as it appears in JSON documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub name: String,
    pub carrier_size: usize,
    pub ops: Vec<RawOperation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOperation {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

/// A finite Ω-algebra with validated operation tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(name: impl Into<String>, signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if tables.len() != signature.len() {
            return Err(Error::ShapeMismatch {
                expected: signature.len(),
                found: tables.len(),
            });
        }
        for (op, table) in signature.ops().iter().zip(&tables) {
            let expected = checked_pow(size, op.arity);
            if expected != table.len() as u128 {
                return Err(Error::ArityMismatch {
                    symbol: op.symbol.clone(),
                    arity: op.arity,
                    expected: expected.min(usize::MAX as u128) as usize,
                    found: table.len(),
                });
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange {
                    value: bad,
                    size,
                    context: format!("table of `{}`", op.symbol),
                });
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            signature,
            size,
            tables,
        })
    }

    /// Validates a raw description: distinct symbols, table lengths matching
    /// arities, every entry inside the carrier.
    pub fn validate(raw: &RawAlgebra) -> Result<Self> {
        let signature = Signature::new(raw.ops.iter().map(|op| (op.symbol.clone(), op.arity)))?;
        let tables = raw.ops.iter().map(|op| op.table.clone()).collect();
        FiniteAlgebra::new(raw.name.clone(), signature, raw.carrier_size, tables)
    }

    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra {
            name: self.name.clone(),
            carrier_size: self.size,
            ops: self
                .signature
                .ops()
                .iter()
                .zip(&self.tables)
                .map(|(op, table)| RawOperation {
                    symbol: op.symbol.clone(),
                    arity: op.arity,
                    table: table.clone(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][encode(args, self.size)]
    }

    /// Values of the nullary operations, in signature order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.signature
            .ops()
            .iter()
            .enumerate()
            .filter(|(_, op)| op.arity == 0)
            .map(|(i, _)| (i, self.tables[i][0]))
    }

    /// True iff `members` is closed under every operation (constants included).
    pub fn is_subalgebra(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        let pool: Vec<usize> = set.iter().copied().collect();
        self.signature.ops().iter().enumerate().all(|(i, op)| {
            crate::tuples::for_each_index(&vec![pool.len(); op.arity], |t| {
                let args: Vec<usize> = t.iter().map(|&j| pool[j]).collect();
                set.contains(&self.apply(i, &args))
            })
        })
    }
}

/// A set of carrier indices, kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subset {
    parent_size: usize,
    members: Vec<usize>,
}

impl Subset {
    pub fn new(parent_size: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= parent_size) {
            return Err(Error::OutOfRange {
                value: bad,
                size: parent_size,
                context: "subset member".into(),
            });
        }
        Ok(Subset { parent_size, members })
    }

    pub fn full(parent_size: usize) -> Self {
        Subset {
            parent_size,
            members: (0..parent_size).collect(),
        }
    }

    pub fn empty(parent_size: usize) -> Self {
        Subset {
            parent_size,
            members: Vec::new(),
        }
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// Least set containing `seed` and closed under every operation of `sig`,
/// where `apply(op, args)` evaluates operation `op`.
///
/// Worklist fixpoint: each newly found element is combined only with tuples
/// that mention it, so every tuple over the final set is evaluated once.
pub(crate) fn close_under<T: Clone + Ord>(
    sig: &Signature,
    seed: impl IntoIterator<Item = T>,
    mut apply: impl FnMut(usize, &[&T]) -> T,
    cap: Option<(&'static str, u64)>,
) -> Result<Vec<T>> {
    let mut known: BTreeSet<T> = BTreeSet::new();
    let mut pending: VecDeque<T> = VecDeque::new();
    for (i, op) in sig.ops().iter().enumerate() {
        if op.arity == 0 {
            let c = apply(i, &[]);
            if known.insert(c.clone()) {
                pending.push_back(c);
            }
        }
    }
    for s in seed {
        if known.insert(s.clone()) {
            pending.push_back(s);
        }
    }
    let check = |n: usize| match cap {
        Some((what, cap)) => guard(what, n as u128, cap as u128),
        None => Ok(()),
    };
    check(known.len())?;

    let mut pool: Vec<T> = Vec::new();
    while let Some(e) = pending.pop_front() {
        pool.push(e);
        let new = pool.len() - 1;
        for (i, op) in sig.ops().iter().enumerate() {
            if op.arity == 0 {
                continue;
            }
            let mut overflow = false;
            for_each_tuple_containing(new, op.arity, |t| {
                let args: Vec<&T> = t.iter().map(|&j| &pool[j]).collect();
                let r = apply(i, &args);
                if known.insert(r.clone()) {
                    pending.push_back(r);
                    if check(known.len()).is_err() {
                        overflow = true;
                        return false;
                    }
                }
                true
            });
            if overflow {
                check(known.len())?;
            }
        }
    }
    Ok(known.into_iter().collect())
}

/// The subalgebra ⟨seed⟩ of `parent`: the least subset containing `seed`,
/// every constant, and closed under every operation.
pub fn generate_subalgebra(parent: &FiniteAlgebra, seed: &Subset) -> Result<Subset> {
    if seed.parent_size() != parent.size() {
        return Err(Error::ShapeMismatch {
            expected: parent.size(),
            found: seed.parent_size(),
        });
    }
    let members = close_under(
        parent.signature(),
        seed.members().iter().copied(),
        |op, args| {
            let args: Vec<usize> = args.iter().map(|&&a| a).collect();
            parent.apply(op, &args)
        },
        None,
    )?;
    Subset::new(parent.size(), members)
}

/// The power algebra `base^exponent_size` with pointwise operations. Element
/// `i` is the function whose value tuple is `decode(i, |base|, exponent_size)`,
/// so the carrier is listed in lexicographic order of value tuples.
pub fn power_algebra(base: &FiniteAlgebra, exponent_size: usize, caps: &Caps) -> Result<FiniteAlgebra> {
    let n = base.size();
    let carrier = checked_pow(n, exponent_size);
    guard("power carrier", carrier, caps.max_power_carrier as u128)?;
    let carrier = carrier as usize;
    let mut tables = Vec::with_capacity(base.signature().len());
    for (i, op) in base.signature().ops().iter().enumerate() {
        let entries = checked_pow(carrier, op.arity);
        guard("power table entries", entries, caps.max_hom_search as u128)?;
        let mut table = Vec::with_capacity(entries as usize);
        for idx in 0..entries as usize {
            let args: Vec<Vec<usize>> = decode(idx, carrier, op.arity)
                .into_iter()
                .map(|a| decode(a, n, exponent_size))
                .collect();
            let value: Vec<usize> = (0..exponent_size)
                .map(|c| {
                    let coords: Vec<usize> = args.iter().map(|a| a[c]).collect();
                    base.apply(i, &coords)
                })
                .collect();
            table.push(encode(&value, n));
        }
        tables.push(table);
    }
    FiniteAlgebra::new(
        format!("{}^{}", base.name(), exponent_size),
        base.signature().clone(),
        carrier,
        tables,
    )
}

/// An arity-preserving map between two algebras of the same signature,
/// verified on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraHom {
    values: Vec<usize>,
}

impl AlgebraHom {
    pub fn new(values: Vec<usize>, dom: &FiniteAlgebra, cod: &FiniteAlgebra) -> Result<Self> {
        if is_hom(&values, dom, cod)? {
            Ok(AlgebraHom { values })
        } else {
            Err(Error::Document("map is not a homomorphism".into()))
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }
}

/// True iff `h` commutes with every operation on every argument tuple.
pub fn is_hom(h: &[usize], dom: &FiniteAlgebra, cod: &FiniteAlgebra) -> Result<bool> {
    if dom.signature() != cod.signature() {
        return Err(Error::SignatureMismatch);
    }
    if h.len() != dom.size() {
        return Err(Error::ShapeMismatch {
            expected: dom.size(),
            found: h.len(),
        });
    }
    if let Some(&bad) = h.iter().find(|&&v| v >= cod.size()) {
        return Err(Error::OutOfRange {
            value: bad,
            size: cod.size(),
            context: "homomorphism value".into(),
        });
    }
    let ok = dom.signature().ops().iter().enumerate().all(|(i, op)| {
        crate::tuples::for_each_index(&vec![dom.size(); op.arity], |t| {
            let mapped: Vec<usize> = t.iter().map(|&a| h[a]).collect();
            h[dom.apply(i, t)] == cod.apply(i, &mapped)
        })
    });
    Ok(ok)
}

struct HomSearch<'a> {
    dom: &'a FiniteAlgebra,
    cod: &'a FiniteAlgebra,
    assign: Vec<Option<usize>>,
    order: Vec<usize>,
    nodes: u64,
    cap: u64,
    found: Vec<Vec<usize>>,
}

impl HomSearch<'_> {
    /// Assigns `elem ↦ value` and every value it forces. Returns `false` on the
    /// first table entry that cannot commute.
    fn assign(&mut self, elem: usize, value: usize) -> bool {
        let mut queue = vec![(elem, value)];
        while let Some((e, v)) = queue.pop() {
            match self.assign[e] {
                Some(w) if w != v => return false,
                Some(_) => continue,
                None => {}
            }
            self.assign[e] = Some(v);
            self.order.push(e);
            let new = self.order.len() - 1;
            let (dom, cod, order, assign) = (self.dom, self.cod, &self.order, &self.assign);
            for (i, op) in dom.signature().ops().iter().enumerate() {
                if op.arity == 0 {
                    continue;
                }
                let mut args = vec![0; op.arity];
                let mut mapped = vec![0; op.arity];
                let consistent = for_each_tuple_containing(new, op.arity, |t| {
                    for (k, &pos) in t.iter().enumerate() {
                        args[k] = order[pos];
                        mapped[k] = assign[args[k]].expect("ordered elements are assigned");
                    }
                    let out = dom.apply(i, &args);
                    let image = cod.apply(i, &mapped);
                    match assign[out] {
                        Some(w) => w == image,
                        None => {
                            queue.push((out, image));
                            true
                        }
                    }
                });
                if !consistent {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.order.len() > mark {
            let e = self.order.pop().expect("non-empty trail");
            self.assign[e] = None;
        }
    }

    fn search(&mut self) -> Result<()> {
        self.nodes += 1;
        guard("hom search nodes", self.nodes as u128, self.cap as u128)?;
        let Some(next) = self.assign.iter().position(Option::is_none) else {
            self.found
                .push(self.assign.iter().map(|v| v.expect("complete")).collect());
            return Ok(());
        };
        for value in 0..self.cod.size() {
            let mark = self.order.len();
            if self.assign(next, value) {
                self.search()?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// Every homomorphism `dom → cod`, sorted by value tuple.
///
/// Backtracking over domain elements in carrier order with values tried in
/// ascending order; each assignment propagates through every table entry
/// whose arguments are already assigned, forcing outputs and rejecting on the
/// first violated entry.
pub fn enumerate_homs(dom: &FiniteAlgebra, cod: &FiniteAlgebra, caps: &Caps) -> Result<Vec<AlgebraHom>> {
    if dom.signature() != cod.signature() {
        return Err(Error::SignatureMismatch);
    }
    let mut search = HomSearch {
        dom,
        cod,
        assign: vec![None; dom.size()],
        order: Vec::new(),
        nodes: 0,
        cap: caps.max_hom_search,
        found: Vec::new(),
    };
    if cod.size() == 0 && dom.size() > 0 {
        return Ok(Vec::new());
    }
    let constants: Vec<(usize, usize)> = dom.constants().collect();
    for (op, dom_value) in constants {
        let cod_value = cod.table(op)[0];
        if !search.assign(dom_value, cod_value) {
            return Ok(Vec::new());
        }
    }
    search.search()?;
    let mut found = search.found;
    found.sort();
    Ok(found.into_iter().map(|values| AlgebraHom { values }).collect())
}

fn lattice_tables(n: usize, ops: &[&str]) -> Vec<Vec<usize>> {
    ops.iter()
        .map(|&op| match op {
            "meet" => (0..n * n).map(|i| (i / n).min(i % n)).collect(),
            "join" => (0..n * n).map(|i| (i / n).max(i % n)).collect(),
            "bot" => vec![0],
            "top" => vec![n - 1],
            _ => unreachable!("unknown lattice op"),
        })
        .collect()
}

/// One of the named algebras: `BOOL_LAT` (two-element bounded lattice),
/// `MEET_SL` (two-element bounded meet-semilattice) or `CHAIN3` (three-element
/// bounded chain).
pub fn builtin(name: &str) -> Result<FiniteAlgebra> {
    let (n, ops): (usize, &[&str]) = match name {
        "BOOL_LAT" => (2, &["meet", "join", "bot", "top"]),
        "MEET_SL" => (2, &["meet", "bot", "top"]),
        "CHAIN3" => (3, &["meet", "join", "bot", "top"]),
        _ => return Err(Error::UnknownAlgebra(name.to_string())),
    };
    let signature = Signature::new(ops.iter().map(|&s| {
        let arity = if s == "bot" || s == "top" { 0 } else { 2 };
        (s, arity)
    }))?;
    FiniteAlgebra::new(name, signature, n, lattice_tables(n, ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::for_each_index;

    fn bool_lat() -> FiniteAlgebra {
        builtin("BOOL_LAT").unwrap()
    }

    fn raw_bool_lat() -> RawAlgebra {
        bool_lat().to_raw()
    }

    #[test]
    fn bool_lat_validates() {
        let a = FiniteAlgebra::validate(&raw_bool_lat()).unwrap();
        assert_eq!(a, bool_lat());
        assert_eq!(a.apply(0, &[0, 1]), 0);
        assert_eq!(a.apply(1, &[0, 1]), 1);
        assert_eq!(a.constants().collect::<Vec<_>>(), vec![(2, 0), (3, 1)]);
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let mut raw = raw_bool_lat();
        raw.ops[0].table[3] = 2;
        assert!(matches!(
            FiniteAlgebra::validate(&raw),
            Err(Error::OutOfRange { value: 2, size: 2, .. })
        ));
    }

    #[test]
    fn short_table_rejected() {
        let mut raw = raw_bool_lat();
        raw.ops[0].table.pop();
        assert!(matches!(
            FiniteAlgebra::validate(&raw),
            Err(Error::ArityMismatch {
                expected: 4,
                found: 3,
                ..
            })
        ));
    }

    #[test]
    fn duplicate_symbol_rejected() {
        let mut raw = raw_bool_lat();
        raw.ops[1].symbol = "meet".into();
        assert_eq!(
            FiniteAlgebra::validate(&raw),
            Err(Error::DuplicateSymbol("meet".into()))
        );
    }

    #[test]
    fn nullary_needs_exactly_one_entry() {
        let mut raw = raw_bool_lat();
        raw.ops[2].table.push(0);
        assert!(FiniteAlgebra::validate(&raw).is_err());
    }

    /// Brute force: least subset containing the seed among all subsets that
    /// are closed under the operations.
    fn brute_force_closure(a: &FiniteAlgebra, seed: &[usize]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << a.size()) {
            let members: Vec<usize> = (0..a.size()).filter(|i| mask >> i & 1 == 1).collect();
            if seed.iter().all(|s| members.contains(s))
                && a.is_subalgebra(&members)
                && best.as_ref().is_none_or(|b| members.len() < b.len())
            {
                best = Some(members);
            }
        }
        best.unwrap()
    }

    #[test]
    fn generated_subalgebra_of_power_matches_brute_force() {
        let caps = Caps::default();
        let p = power_algebra(&bool_lat(), 2, &caps).unwrap();
        // identity function (0,1) has index 1
        let id = encode(&[0, 1], 2);
        let sub = generate_subalgebra(&p, &Subset::new(4, [id]).unwrap()).unwrap();
        assert_eq!(sub.members(), brute_force_closure(&p, &[id]).as_slice());
        let tuples: Vec<Vec<usize>> = sub.members().iter().map(|&i| decode(i, 2, 2)).collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn empty_seed_gives_constants() {
        let p = power_algebra(&bool_lat(), 2, &Caps::default()).unwrap();
        let sub = generate_subalgebra(&p, &Subset::empty(4)).unwrap();
        assert_eq!(sub.members(), &[0, 3]);
    }

    #[test]
    fn full_seed_is_fixed() {
        let p = power_algebra(&bool_lat(), 2, &Caps::default()).unwrap();
        assert_eq!(generate_subalgebra(&p, &Subset::full(4)).unwrap(), Subset::full(4));
    }

    #[test]
    fn empty_subalgebra_without_constants() {
        let sig = Signature::new([("meet", 2)]).unwrap();
        let a = FiniteAlgebra::new("M", sig, 2, vec![vec![0, 0, 0, 1]]).unwrap();
        assert!(generate_subalgebra(&a, &Subset::empty(2)).unwrap().is_empty());
    }

    #[test]
    fn power_algebra_pointwise() {
        let caps = Caps::default();
        let b = bool_lat();
        let p2 = power_algebra(&b, 2, &caps).unwrap();
        assert_eq!(p2.size(), 4);
        let meet = p2.apply(0, &[encode(&[0, 1], 2), encode(&[1, 0], 2)]);
        assert_eq!(decode(meet, 2, 2), vec![0, 0]);

        let p0 = power_algebra(&b, 0, &caps).unwrap();
        assert_eq!(p0.size(), 1);

        let p3 = power_algebra(&b, 3, &caps).unwrap();
        assert_eq!(p3.size(), 8);
        let join = p3.apply(1, &[encode(&[0, 0, 1], 2), encode(&[0, 1, 0], 2)]);
        assert_eq!(decode(join, 2, 3), vec![0, 1, 1]);
    }

    #[test]
    fn power_one_is_base() {
        for name in BUILTIN_NAMES {
            let b = builtin(name).unwrap();
            let p = power_algebra(&b, 1, &Caps::default()).unwrap();
            assert_eq!(p.size(), b.size());
            for i in 0..b.signature().len() {
                assert_eq!(p.table(i), b.table(i));
            }
        }
    }

    #[test]
    fn power_guard() {
        let caps = Caps {
            max_power_carrier: 7,
            ..Caps::default()
        };
        assert!(matches!(
            power_algebra(&bool_lat(), 3, &caps),
            Err(Error::SizeGuard { size: 8, cap: 7, .. })
        ));
    }

    #[test]
    fn is_hom_examples() {
        let b = bool_lat();
        assert!(is_hom(&[0, 1], &b, &b).unwrap());
        assert!(!is_hom(&[1, 0], &b, &b).unwrap());
        assert!(!is_hom(&[0, 0], &b, &b).unwrap());
        let m = builtin("MEET_SL").unwrap();
        assert_eq!(is_hom(&[0, 1], &b, &m), Err(Error::SignatureMismatch));
    }

    fn brute_force_homs(dom: &FiniteAlgebra, cod: &FiniteAlgebra) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_index(&vec![cod.size(); dom.size()], |h| {
            if is_hom(h, dom, cod).unwrap() {
                out.push(h.to_vec());
            }
            true
        });
        out
    }

    fn values(homs: Vec<AlgebraHom>) -> Vec<Vec<usize>> {
        homs.into_iter().map(AlgebraHom::into_values).collect()
    }

    #[test]
    fn homs_bool_lat_to_itself() {
        let b = bool_lat();
        let homs = values(enumerate_homs(&b, &b, &Caps::default()).unwrap());
        assert_eq!(homs, vec![vec![0, 1]]);
        assert_eq!(homs, brute_force_homs(&b, &b));
    }

    #[test]
    fn homs_from_three_chain() {
        // the 3-chain {c0 < id < c1} over the BOOL_LAT signature
        let sig = bool_lat().signature().clone();
        let chain = FiniteAlgebra::new("3", sig, 3, lattice_tables(3, &["meet", "join", "bot", "top"])).unwrap();
        let b = bool_lat();
        let homs = values(enumerate_homs(&chain, &b, &Caps::default()).unwrap());
        assert_eq!(homs, vec![vec![0, 0, 1], vec![0, 1, 1]]);
        assert_eq!(homs, brute_force_homs(&chain, &b));
    }

    #[test]
    fn homs_four_element_meet_semilattice() {
        let m = builtin("MEET_SL").unwrap();
        let four = power_algebra(&m, 2, &Caps::default()).unwrap();
        let homs = values(enumerate_homs(&four, &m, &Caps::default()).unwrap());
        assert_eq!(homs.len(), 3);
        assert_eq!(homs, brute_force_homs(&four, &m));
    }

    #[test]
    fn hom_search_guard() {
        let m = builtin("CHAIN3").unwrap();
        let p = power_algebra(&m, 2, &Caps::default()).unwrap();
        let caps = Caps {
            max_hom_search: 2,
            ..Caps::default()
        };
        assert!(matches!(enumerate_homs(&p, &m, &caps), Err(Error::SizeGuard { .. })));
    }
}
