//! Words, presentations and the metacyclic groups
//! `G(n, ℓ) = ⟨u, v | u v u⁻¹ = v⁻¹, u^{2n} v^ℓ = 1⟩`.
//!
//! `G(n, ℓ)` is the fundamental group of the Dehn filling of a Klein-bottle
//! neighbourhood along `(n, ℓ)`. Every element has a unique normal form
//! `u^j v^k` with `0 ≤ j < 2n`, `0 ≤ k < 2|ℓ|`, which lets us write down the
//! whole multiplication table instead of running coset enumeration.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::abelian::{cokernel, AbelianGroup, IntMatrix};
use crate::error::{Error, Result};

pub const U: usize = 0;
pub const V: usize = 1;

/// Default cap on `4n|ℓ|` for explicit tables.
pub const DEFAULT_ORDER_CAP: u64 = 20_000;

/// A freely reduced word: adjacent syllables use distinct generators and no
/// exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(syllables: I) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, exp)) if *last == g => {
                    *exp += e;
                    if *exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        Word::from_syllables([(g, e)])
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.iter().all(|&(_, e)| e != 0) && self.0.windows(2).all(|w| w[0].0 != w[1].0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_syllables(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Exponent sum of each generator, the image in the abelianization.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0; generator_count];
        for &(g, e) in &self.0 {
            sums[g] += e;
        }
        sums
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(g, e)| match e {
                1 => names[g].to_string(),
                e => format!("{}^{}", names[g], e),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&["u", "v"]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::Domain(
                "a presentation needs at least one generator".into(),
            ));
        }
        if let Some(w) = relators
            .iter()
            .find(|w| w.0.iter().any(|&(g, _)| g >= generator_count) || !w.is_freely_reduced())
        {
            return Err(Error::Domain(format!("bad relator {w:?}")));
        }
        Ok(Presentation {
            generator_count,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = if self.generator_count <= 2 {
            ["u", "v"][..self.generator_count]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            (0..self.generator_count).map(|i| format!("g{i}")).collect()
        };
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let rels: Vec<String> = self.relators.iter().map(|w| w.render(&refs)).collect();
        write!(f, "<{} | {}>", names.join(", "), rels.join(", "))
    }
}

/// `π₁(K) = ⟨u, v | u v u⁻¹ v⟩`.
pub fn klein_bottle_group() -> Presentation {
    let rel = Word::from_syllables([(U, 1), (V, 1), (U, -1), (V, 1)]);
    Presentation::new(2, vec![rel]).expect("static presentation")
}

/// Image of the torus class `(nn, ℓ)` under `π₁(∂νK) → π₁(νK)`:
/// `a^nn b^ℓ ↦ u^{2nn} v^ℓ`.
pub fn peripheral_image(nn: i64, l: i64) -> Word {
    Word::from_syllables([(U, 2 * nn), (V, l)])
}

pub fn dehn_filling_presentation(n: i64, l: i64) -> Presentation {
    let mut rels = klein_bottle_group().relators;
    rels.push(peripheral_image(n, l));
    Presentation::new(2, rels).expect("relators over two generators")
}

/// Abelianization via the Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianGroup {
    let g = p.generator_count;
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|w| w.exponent_sums(g)).collect();
    let m = if rows.is_empty() {
        IntMatrix::empty(g)
    } else {
        IntMatrix::from_rows(&rows)
    };
    cokernel(&m, &AbelianGroup::free(g)).expect("columns match generator count")
}

/// Dense multiplication table of `G(n, ℓ)` on normal forms `u^j v^k`.
///
/// Negative `ℓ` is stored as `|ℓ|` with `inverted_v` set: the table for
/// `(n, −ℓ)` is that of `(n, ℓ)` after `v ↦ v⁻¹`, so index `(j, k)` then
/// names `u^j v^{-k}` of the original presentation.
#[derive(Debug, Clone)]
pub struct MetacyclicTable {
    n: u64,
    l: u64,
    inverted_v: bool,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl MetacyclicTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `|ℓ|`.
    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn inverted_v(&self) -> bool {
        self.inverted_v
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn v_period(&self) -> usize {
        2 * self.l as usize
    }

    pub fn index(&self, j: u64, k: u64) -> usize {
        assert!(
            j < 2 * self.n && k < 2 * self.l,
            "({j},{k}) is not a normal form"
        );
        j as usize * self.v_period() + k as usize
    }

    pub fn normal_form(&self, idx: usize) -> (u64, u64) {
        (
            (idx / self.v_period()) as u64,
            (idx % self.v_period()) as u64,
        )
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn u(&self) -> usize {
        self.index(1 % (2 * self.n), 0)
    }

    pub fn v(&self) -> usize {
        self.index(0, 1)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }
}

/// Product of normal forms by rewriting with the two relators:
/// `v^k u^{j'} = u^{j'} v^{(-1)^{j'} k}` from `u v u⁻¹ = v⁻¹`, then
/// `u^{2n} ↦ v^{-ℓ}` for the wrap of the `u` exponent, which sits directly
/// left of the `v` block so no commutation is assumed.
fn normal_form_product(n: u64, l: i64, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    let two_n = 2 * n;
    let period = 2 * l.unsigned_abs() as i64;
    let (j, k) = (a.0, a.1 as i64);
    let (j2, k2) = (b.0, b.1 as i64);
    let twisted = if j2 % 2 == 0 { k } else { -k };
    let mut uexp = j + j2;
    let mut vexp = twisted + k2;
    while uexp >= two_n {
        uexp -= two_n;
        vexp -= l;
    }
    (uexp, vexp.rem_euclid(period) as u64)
}

pub fn build_metacyclic_table(n: i64, l: i64, cap: u64) -> Result<MetacyclicTable> {
    if n < 1 {
        return Err(Error::Domain(format!("n = {n} must be at least 1")));
    }
    if l == 0 {
        return Err(Error::Domain("l = 0 gives an infinite group".into()));
    }
    let order = 4u64
        .checked_mul(n as u64)
        .and_then(|x| x.checked_mul(l.unsigned_abs()))
        .filter(|&o| o <= cap)
        .ok_or(Error::Resource {
            order: 4u64
                .saturating_mul(n as u64)
                .saturating_mul(l.unsigned_abs()),
            cap,
        })?;
    let (nu, lu) = (n as u64, l.unsigned_abs());
    let order = order as usize;
    let period = 2 * lu;
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        let fa = ((a as u64) / period, (a as u64) % period);
        for b in 0..order {
            let fb = ((b as u64) / period, (b as u64) % period);
            let (j, k) = normal_form_product(nu, lu as i64, fa, fb);
            table[a * order + b] = (j * period + k) as u32;
        }
    }
    let inverses = (0..order)
        .map(|a| {
            let row = &table[a * order..(a + 1) * order];
            row.iter().position(|&x| x == 0).unwrap_or(0) as u32
        })
        .collect();
    Ok(MetacyclicTable {
        n: nu,
        l: lu,
        inverted_v: l < 0,
        order,
        table,
        inverses,
    })
}

pub fn group_order(t: &MetacyclicTable) -> usize {
    t.order
}

pub fn is_abelian(t: &MetacyclicTable) -> bool {
    (0..t.order).all(|a| (a + 1..t.order).all(|b| t.mul(a, b) == t.mul(b, a)))
}

/// Order of `u^j v^k` by repeated multiplication.
pub fn element_order(t: &MetacyclicTable, j: u64, k: u64) -> usize {
    let g = t.index(j, k);
    let mut x = g;
    let mut ord = 1;
    while x != t.identity() {
        x = t.mul(x, g);
        ord += 1;
    }
    ord
}

pub fn is_cyclic(t: &MetacyclicTable) -> bool {
    (0..t.order).any(|g| {
        let (j, k) = t.normal_form(g);
        element_order(t, j, k) == t.order
    })
}

/// Closure of `gens` under multiplication (finite group, so a subgroup).
pub fn generated_subgroup(t: &MetacyclicTable, gens: &[usize]) -> BTreeSet<usize> {
    membership(t, gens)
        .iter()
        .enumerate()
        .filter_map(|(x, &m)| m.then_some(x))
        .collect()
}

/// Indicator vector of the subgroup generated by `gens`.
fn membership(t: &MetacyclicTable, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; t.order];
    seen[t.identity()] = true;
    let mut frontier = vec![t.identity()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = t.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                frontier.push(y);
            }
        }
    }
    seen
}

/// Outcome of checking the group axioms on a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub identity: bool,
    pub latin_square: bool,
    pub associative: bool,
    /// `true` when every triple was checked, `false` when associativity
    /// came from Light's test on the generators `u, v`.
    pub all_triples: bool,
}

impl AxiomCheck {
    pub fn holds(&self) -> bool {
        self.identity && self.latin_square && self.associative
    }
}

/// Orders up to this bound get every triple checked.
pub const ALL_TRIPLES_BOUND: usize = 200;

/// Identity, permutation rows/columns, and associativity.
///
/// Above [`ALL_TRIPLES_BOUND`] associativity uses Light's test: elements
/// `g` with `(xg)y = x(gy)` for all `x, y` are closed under products, and
/// `u, v` generate every normal form, so checking `g ∈ {u, v}` suffices.
pub fn check_group_axioms(t: &MetacyclicTable) -> AxiomCheck {
    let ord = t.order;
    let e = t.identity();
    let identity = (0..ord).all(|a| t.mul(e, a) == a && t.mul(a, e) == a);

    let mut latin_square = true;
    let mut seen = vec![false; ord];
    for a in 0..ord {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..ord {
            let x = t.mul(a, b);
            latin_square &= !std::mem::replace(&mut seen[x], true);
        }
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..ord {
            let x = t.mul(b, a);
            latin_square &= !std::mem::replace(&mut seen[x], true);
        }
    }

    let assoc = |a: usize, b: usize, c: usize| t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c));
    let all_triples = ord <= ALL_TRIPLES_BOUND;
    let associative = if all_triples {
        (0..ord).all(|a| (0..ord).all(|b| (0..ord).all(|c| assoc(a, b, c))))
    } else {
        [t.u(), t.v()]
            .iter()
            .all(|&g| (0..ord).all(|x| (0..ord).all(|y| assoc(x, g, y))))
    };
    AxiomCheck {
        identity,
        latin_square,
        associative,
        all_triples,
    }
}

/// Structural facts about `⟨v⟩ ⊲ G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubgroupCheck {
    pub conjugation_inverts_v: bool,
    pub v_subgroup_order: usize,
    pub normal: bool,
    pub coset_count: usize,
    /// Order of the coset `u⟨v⟩` in `G/⟨v⟩`.
    pub quotient_u_order: usize,
}

pub fn check_v_normal(t: &MetacyclicTable) -> NormalSubgroupCheck {
    let (u, v) = (t.u(), t.v());
    let uinv = t.inverse(u);
    let conjugation_inverts_v = t.mul(t.mul(u, v), uinv) == t.inverse(v);
    let h = generated_subgroup(t, &[v]);
    let normal = (0..t.order).all(|g| {
        let ginv = t.inverse(g);
        h.iter().all(|&x| h.contains(&t.mul(t.mul(g, x), ginv)))
    });
    let coset_of = |g: usize| {
        h.iter()
            .map(|&x| t.mul(g, x))
            .min()
            .expect("nonempty coset")
    };
    let cosets: BTreeSet<usize> = (0..t.order).map(coset_of).collect();
    let base = coset_of(t.identity());
    let mut x = u;
    let mut quotient_u_order = 1;
    while coset_of(x) != base {
        x = t.mul(x, u);
        quotient_u_order += 1;
    }
    NormalSubgroupCheck {
        conjugation_inverts_v,
        v_subgroup_order: h.len(),
        normal,
        coset_count: cosets.len(),
        quotient_u_order,
    }
}

/// `G / [G, G]` read off the table: the relation lattice
/// `{(a, b) : u^a v^b ∈ [G, G]}` fed to the Smith normal form.
pub fn table_abelianization(t: &MetacyclicTable) -> AbelianGroup {
    let ord = t.order;
    let (u, v) = (t.u(), t.v());
    // G = ⟨u, v⟩, so [G, G] is the normal closure of [u, v]
    let c = t.mul(t.mul(u, v), t.mul(t.inverse(u), t.inverse(v)));
    let mut is_conjugate = vec![false; ord];
    for g in 0..ord {
        is_conjugate[t.mul(t.mul(g, c), t.inverse(g))] = true;
    }
    let commutators: Vec<usize> = (0..ord).filter(|&x| is_conjugate[x]).collect();
    let derived = membership(t, &commutators);

    let ord_u = {
        let (j, k) = t.normal_form(u);
        element_order(t, j, k)
    } as i64;
    let ord_v = element_order(t, 0, 1) as i64;
    // Hermite basis [[h0, h1], [0, h2]] of {(a, b) : u^a v^b ∈ [G, G]}
    let (mut h0, mut h1, mut h2) = (ord_u, 0i64, ord_v);
    let mut ua = t.identity();
    for a in 0..ord_u {
        let mut x = ua;
        for b in 0..ord_v {
            if derived[x] {
                let e = h0.extended_gcd(&a);
                let (q0, qa) = (a / e.gcd, h0 / e.gcd);
                h2 = h2.gcd(&(q0 * h1 - qa * b));
                h0 = e.gcd;
                h1 = (e.x * h1 + e.y * b).rem_euclid(h2);
            }
            x = t.mul(x, v);
        }
        ua = t.mul(ua, u);
    }
    let rows = IntMatrix::from_rows(&[vec![h0, h1], vec![0, h2]]);
    cokernel(&rows, &AbelianGroup::free(2)).expect("two generators")
}

/// What adding `u^{2n} v^ℓ = 1` to `π₁(K)` does to torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub n: i64,
    pub l: i64,
    /// `"u"` when `ℓ = 0`, otherwise `"v"`.
    pub element: &'static str,
    /// `2|n|` for `u`, `2|ℓ|` for `v`: the relators force the element's
    /// order to divide this.
    pub order_bound: u64,
    /// Exact order, when a finite witness pins it down.
    pub exact_order: Option<u64>,
    pub witness: String,
    pub table_verified: bool,
}

pub fn torsion_diagnostic(n: i64, l: i64, cap: u64) -> Result<TorsionReport> {
    if n == 0 && l == 0 {
        return Err(Error::Domain("(n, l) = (0, 0) adds no relation".into()));
    }
    if l == 0 {
        // u^{2n} = 1, and u ↦ 1 ∈ Z_{2n}, v ↦ 0 respects both relators
        let bound = 2 * n.unsigned_abs();
        return Ok(TorsionReport {
            n,
            l,
            element: "u",
            order_bound: bound,
            exact_order: Some(bound),
            witness: format!("quotient onto Z_{bound} with u -> 1, v -> 0"),
            table_verified: false,
        });
    }
    let bound = 2 * l.unsigned_abs();
    if n == 0 {
        // v^ℓ = 1 directly; the dihedral quotient u -> reflection,
        // v -> rotation of order |ℓ| is faithful on ⟨v⟩
        let exact = l.unsigned_abs();
        return Ok(TorsionReport {
            n,
            l,
            element: "v",
            order_bound: bound,
            exact_order: Some(exact),
            witness: format!(
                "relator v^{l} gives order dividing {exact}; dihedral quotient of order {} realises it",
                2 * exact
            ),
            table_verified: false,
        });
    }
    match build_metacyclic_table(n.abs(), l, cap) {
        Ok(t) => {
            let ord = element_order(&t, 0, 1) as u64;
            Ok(TorsionReport {
                n,
                l,
                element: "v",
                order_bound: bound,
                exact_order: Some(ord),
                witness: format!("metacyclic table of order {}", t.order()),
                table_verified: ord == bound,
            })
        }
        Err(Error::Resource { .. }) => Ok(TorsionReport {
            n,
            l,
            element: "v",
            order_bound: bound,
            exact_order: None,
            witness: format!("table above order cap {cap}; bound only"),
            table_verified: false,
        }),
        Err(e) => Err(e),
    }
}
