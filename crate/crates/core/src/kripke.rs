//! Finite Kripke frames: relation arithmetic (composition, pseudo-composition,
//! converse, the complemented-preimage operators), modal chain semantics,
//! `KRel` term evaluation and a brute-force MRP validity oracle.
//!
//! Subsets of the carrier are bit masks (`u64`), so carriers are capped at 64
//! worlds; the oracle's own guard is far below that.

use std::collections::BTreeMap;

use crate::error::EvalError;
use crate::mrp::{ModKind, ModToken, ModalChain, Mrp};
use crate::term::{KRelTerm, RelSymbol, TermInequality};

/// Upper bound on valuation-space size for the brute-force oracle.
const ORACLE_MAX_VALUATIONS: u32 = 20;

/// A binary relation on a carrier of `n` worlds, stored as a dense boolean
/// matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinRel {
    n: usize,
    bits: Vec<bool>,
}

impl BinRel {
    pub fn empty(n: usize) -> Self {
        BinRel { n, bits: vec![false; n * n] }
    }

    pub fn full(n: usize) -> Self {
        BinRel { n, bits: vec![true; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = BinRel::empty(n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut r = BinRel::empty(n);
        for &(u, v) in pairs {
            r.set(u, v, true);
        }
        r
    }

    /// Decode a relation from the bits of `code`, pair `(u, v)` at bit `u*n+v`.
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut r = BinRel::empty(n);
        for u in 0..n {
            for v in 0..n {
                r.set(u, v, code >> (u * n + v) & 1 == 1);
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }

    pub fn set(&mut self, u: usize, v: usize, val: bool) {
        self.bits[u * self.n + v] = val;
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.get(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn converse(&self) -> BinRel {
        let mut r = BinRel::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                r.set(v, u, self.get(u, v));
            }
        }
        r
    }

    pub fn complement(&self) -> BinRel {
        BinRel { n: self.n, bits: self.bits.iter().map(|b| !b).collect() }
    }

    pub fn subset_of(&self, other: &BinRel) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }
}

fn check_same_carrier(r: &BinRel, s: &BinRel) -> Result<(), EvalError> {
    if r.n == s.n {
        Ok(())
    } else {
        Err(EvalError::DimensionMismatch(format!("{} vs {} worlds", r.n, s.n)))
    }
}

/// Standard relational composition `r ∘ s`.
pub fn compose(r: &BinRel, s: &BinRel) -> Result<BinRel, EvalError> {
    check_same_carrier(r, s)?;
    let n = r.n;
    let mut out = BinRel::empty(n);
    for u in 0..n {
        for w in 0..n {
            let hit = (0..n).any(|v| r.get(u, v) && s.get(v, w));
            out.set(u, w, hit);
        }
    }
    Ok(out)
}

/// `T^[0][V] = {u | ∀v (v ∈ V ⇒ ¬ u T v)}`, the complemented universal
/// preimage used by the pseudo-composition.
pub fn sq0(t: &BinRel, v_mask: u64) -> u64 {
    let n = t.n;
    let mut out = 0u64;
    'outer: for u in 0..n {
        for v in 0..n {
            if v_mask >> v & 1 == 1 && t.get(u, v) {
                continue 'outer;
            }
        }
        out |= 1 << u;
    }
    out
}

/// `T^[1][U] = {v | ∀u (u ∈ U ⇒ ¬ u T v)}`.
pub fn sq1(t: &BinRel, u_mask: u64) -> u64 {
    sq0(&t.converse(), u_mask)
}

/// `[R]V = {u | ∀v (u R v ⇒ v ∈ V)}`; equals `R^[0][V^c]`.
pub fn box_preimage(r: &BinRel, v_mask: u64) -> u64 {
    let n = r.n;
    let mut out = 0u64;
    'outer: for u in 0..n {
        for v in 0..n {
            if r.get(u, v) && v_mask >> v & 1 == 0 {
                continue 'outer;
            }
        }
        out |= 1 << u;
    }
    out
}

/// `⟨R⟩V = R⁻¹[V] = {u | ∃v (u R v ∧ v ∈ V)}`.
pub fn dia_preimage(r: &BinRel, v_mask: u64) -> u64 {
    let n = r.n;
    let mut out = 0u64;
    for u in 0..n {
        if (0..n).any(|v| r.get(u, v) && v_mask >> v & 1 == 1) {
            out |= 1 << u;
        }
    }
    out
}

/// Pseudo-composition: `y (R ⋆ S) x  iff  y ∈ (R^[0][S^[0][{x}]])^c`.
pub fn star(r: &BinRel, s: &BinRel) -> Result<BinRel, EvalError> {
    check_same_carrier(r, s)?;
    let n = r.n;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = BinRel::empty(n);
    for x in 0..n {
        let col = !sq0(r, sq0(s, 1 << x)) & all;
        for y in 0..n {
            out.set(y, x, col >> y & 1 == 1);
        }
    }
    Ok(out)
}

/// A finite Kripke frame: a carrier and one relation per primitive modality.
/// Adjoint symbols resolve to converses on demand and are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    pub worlds: Vec<String>,
    relations: BTreeMap<(bool, u32), BinRel>, // key: (is_box, index)
}

impl KripkeFrame {
    pub fn new(worlds: Vec<String>) -> Self {
        KripkeFrame { worlds, relations: BTreeMap::new() }
    }

    /// Frame with worlds named `w0..w{n-1}`.
    pub fn with_size(n: usize) -> Self {
        KripkeFrame::new((0..n).map(|i| format!("w{i}")).collect())
    }

    pub fn size(&self) -> usize {
        self.worlds.len()
    }

    pub fn set_box_relation(&mut self, index: u32, rel: BinRel) {
        assert_eq!(rel.size(), self.size());
        self.relations.insert((true, index), rel);
    }

    pub fn set_dia_relation(&mut self, index: u32, rel: BinRel) {
        assert_eq!(rel.size(), self.size());
        self.relations.insert((false, index), rel);
    }

    pub fn box_relation(&self, index: u32) -> Option<&BinRel> {
        self.relations.get(&(true, index))
    }

    pub fn dia_relation(&self, index: u32) -> Option<&BinRel> {
        self.relations.get(&(false, index))
    }

    pub fn relation_keys(&self) -> impl Iterator<Item = (bool, u32)> + '_ {
        self.relations.keys().copied()
    }

    /// Resolve a relation symbol; ⧫i is the converse of R_□i and ■i the
    /// converse of R_◇i.
    pub fn resolve(&self, sym: RelSymbol) -> Result<BinRel, EvalError> {
        let missing = || EvalError::UnknownSymbol(crate::term::print_symbol(sym));
        match sym.kind {
            ModKind::Box => self.box_relation(sym.index).cloned().ok_or_else(missing),
            ModKind::Dia => self.dia_relation(sym.index).cloned().ok_or_else(missing),
            ModKind::BlackDia => Ok(self.box_relation(sym.index).ok_or_else(missing)?.converse()),
            ModKind::BlackBox => Ok(self.dia_relation(sym.index).ok_or_else(missing)?.converse()),
        }
    }

    pub fn universe_mask(&self) -> u64 {
        let n = self.size();
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    /// Evaluate a modal chain against a valuation mask for the variable,
    /// applying tokens innermost-first.
    pub fn eval_chain(&self, chain: &ModalChain, valuation: u64) -> Result<u64, EvalError> {
        let mut cur = valuation;
        for tok in chain.tokens().iter().rev() {
            let rel = self.resolve(*tok)?;
            cur = match tok.kind {
                ModKind::Box | ModKind::BlackBox => box_preimage(&rel, cur),
                ModKind::Dia | ModKind::BlackDia => dia_preimage(&rel, cur),
            };
        }
        Ok(cur)
    }

    /// Evaluate a `KRel` term to a concrete relation.
    pub fn eval_krel(&self, t: &KRelTerm) -> Result<BinRel, EvalError> {
        match t {
            KRelTerm::Delta => Ok(BinRel::identity(self.size())),
            KRelTerm::Sym(s) => self.resolve(*s),
            KRelTerm::Comp(l, r) => compose(&self.eval_krel(l)?, &self.eval_krel(r)?),
            KRelTerm::Star(l, r) => star(&self.eval_krel(l)?, &self.eval_krel(r)?),
        }
    }

    /// Does the frame satisfy a `KRel` term inequality?
    pub fn holds_krel(&self, ineq: &TermInequality) -> Result<bool, EvalError> {
        match ineq {
            TermInequality::KRel { lhs, rhs } => {
                Ok(self.eval_krel(lhs)?.subset_of(&self.eval_krel(rhs)?))
            }
            TermInequality::PRel { .. } => Err(EvalError::SortMismatch(
                "PRel inequality evaluated on a Kripke frame".into(),
            )),
        }
    }

    /// Brute-force MRP validity: check `⟦lhs⟧ ⊆ ⟦rhs⟧` under every valuation
    /// of the single variable. Valuations are visited in Gray-code order; the
    /// result is order-independent.
    pub fn mrp_valid_oracle(&self, m: &Mrp) -> Result<bool, EvalError> {
        let n = self.size();
        if n as u32 > ORACLE_MAX_VALUATIONS {
            return Err(EvalError::TooLarge(format!(
                "2^{n} valuations exceeds the 2^{ORACLE_MAX_VALUATIONS} oracle guard"
            )));
        }
        for i in 0u64..(1u64 << n) {
            let v = i ^ (i >> 1);
            let lhs = self.eval_chain(&m.lhs, v)?;
            let rhs = self.eval_chain(&m.rhs, v)?;
            if lhs & !rhs != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
