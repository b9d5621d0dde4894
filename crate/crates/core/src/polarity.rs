//! Finite crisp polarity-based frames: the Galois connection of a formal
//! context, concept lattices, `I`-compatibility, the eight compositions of
//! polarity relations, formula semantics, `PRel` evaluation, a brute-force MRP
//! validity oracle, and the lifting of Kripke frames with its preservation
//! checks.
//!
//! Subsets of the two carriers are bit masks (`u64`).

use std::collections::BTreeMap;

use crate::error::EvalError;
use crate::kripke::{BinRel, KripkeFrame};
use crate::mrp::{ModKind, ModalChain, Mrp};
use crate::term::{PRelTerm, RelSymbol, Sort, TermInequality};

/// Guard for concept enumeration (2^|A| extent candidates).
const CONCEPT_MAX_BITS: usize = 20;

/// A formal context `(A, X, I)` with `I ⊆ A×X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarity {
    pub a_names: Vec<String>,
    pub x_names: Vec<String>,
    incidence: Vec<bool>, // |A| × |X| row-major
}

/// A relation on a polarity, typed by sort. `AX` relations are `|A|×|X|`
/// matrices, `XA` relations `|X|×|A|`, and the `AA`/`XX` sorts arise only as
/// intermediate composition values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedRel {
    pub sort: Sort,
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl TypedRel {
    pub fn empty(sort: Sort, rows: usize, cols: usize) -> Self {
        TypedRel { sort, rows, cols, bits: vec![false; rows * cols] }
    }

    pub fn full(sort: Sort, rows: usize, cols: usize) -> Self {
        TypedRel { sort, rows, cols, bits: vec![true; rows * cols] }
    }

    pub fn from_pairs(sort: Sort, rows: usize, cols: usize, pairs: &[(usize, usize)]) -> Self {
        let mut r = TypedRel::empty(sort, rows, cols);
        for &(i, j) in pairs {
            r.set(i, j, true);
        }
        r
    }

    /// Decode from the bits of `code`, pair `(i, j)` at bit `i*cols+j`.
    pub fn from_code(sort: Sort, rows: usize, cols: usize, code: u64) -> Self {
        let mut r = TypedRel::empty(sort, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                r.set(i, j, code >> (i * cols + j) & 1 == 1);
            }
        }
        r
    }

    /// Retype a square Kripke relation matrix into a polarity sort: `I_R`
    /// (AX), `J_R` (XA), `H_R` (AA) or `K_R` (XX), all with the same entries.
    pub fn retype(rel: &BinRel, sort: Sort) -> Self {
        let n = rel.size();
        let mut r = TypedRel::empty(sort, n, n);
        for i in 0..n {
            for j in 0..n {
                r.set(i, j, rel.get(i, j));
            }
        }
        r
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Transpose, with the sort flipped accordingly.
    pub fn converse(&self) -> TypedRel {
        let sort = match self.sort {
            Sort::AX => Sort::XA,
            Sort::XA => Sort::AX,
            Sort::AA => Sort::AA,
            Sort::XX => Sort::XX,
        };
        let mut r = TypedRel::empty(sort, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(j, i, self.get(i, j));
            }
        }
        r
    }

    pub fn complement(&self) -> TypedRel {
        TypedRel {
            sort: self.sort,
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// `R^(0)[V] = {r | ∀c (c ∈ V ⇒ r R c)}` for `V` a mask over columns.
    pub fn r0(&self, v: u64) -> u64 {
        let mut out = 0u64;
        'rows: for i in 0..self.rows {
            for j in 0..self.cols {
                if v >> j & 1 == 1 && !self.get(i, j) {
                    continue 'rows;
                }
            }
            out |= 1 << i;
        }
        out
    }

    /// `R^(1)[B] = {c | ∀r (r ∈ B ⇒ r R c)}` for `B` a mask over rows.
    pub fn r1(&self, b: u64) -> u64 {
        let mut out = 0u64;
        'cols: for j in 0..self.cols {
            for i in 0..self.rows {
                if b >> i & 1 == 1 && !self.get(i, j) {
                    continue 'cols;
                }
            }
            out |= 1 << j;
        }
        out
    }

    pub fn subset_of(&self, other: &TypedRel) -> bool {
        self.sort == other.sort
            && self.rows == other.rows
            && self.cols == other.cols
            && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }
}

impl Polarity {
    pub fn new(a_names: Vec<String>, x_names: Vec<String>, incidence_pairs: &[(usize, usize)]) -> Self {
        let (na, nx) = (a_names.len(), x_names.len());
        let mut incidence = vec![false; na * nx];
        for &(a, x) in incidence_pairs {
            incidence[a * nx + x] = true;
        }
        Polarity { a_names, x_names, incidence }
    }

    pub fn with_sizes(na: usize, nx: usize, incidence_pairs: &[(usize, usize)]) -> Self {
        Polarity::new(
            (0..na).map(|i| format!("a{i}")).collect(),
            (0..nx).map(|i| format!("x{i}")).collect(),
            incidence_pairs,
        )
    }

    /// Incidence from a bit code, pair `(a, x)` at bit `a*|X|+x`.
    pub fn with_code(na: usize, nx: usize, code: u64) -> Self {
        let pairs: Vec<(usize, usize)> = (0..na)
            .flat_map(|a| (0..nx).map(move |x| (a, x)))
            .filter(|&(a, x)| code >> (a * nx + x) & 1 == 1)
            .collect();
        Polarity::with_sizes(na, nx, &pairs)
    }

    pub fn na(&self) -> usize {
        self.a_names.len()
    }

    pub fn nx(&self) -> usize {
        self.x_names.len()
    }

    pub fn incidence(&self, a: usize, x: usize) -> bool {
        self.incidence[a * self.nx() + x]
    }

    /// The incidence as an AX-sorted relation.
    pub fn incidence_rel(&self) -> TypedRel {
        TypedRel {
            sort: Sort::AX,
            rows: self.na(),
            cols: self.nx(),
            bits: self.incidence.clone(),
        }
    }

    pub fn a_universe(&self) -> u64 {
        mask_all(self.na())
    }

    pub fn x_universe(&self) -> u64 {
        mask_all(self.nx())
    }

    /// `B^↑ = {x | ∀a ∈ B. a I x}`.
    pub fn up(&self, b: u64) -> u64 {
        self.incidence_rel().r1(b)
    }

    /// `Y^↓ = {a | ∀x ∈ Y. a I x}`.
    pub fn down(&self, y: u64) -> u64 {
        self.incidence_rel().r0(y)
    }

    pub fn stable_extent(&self, b: u64) -> bool {
        self.down(self.up(b)) == b
    }

    pub fn stable_intent(&self, y: u64) -> bool {
        self.up(self.down(y)) == y
    }

    /// All formal concepts ordered by extent inclusion (so bottom first when
    /// sorted by extent mask is not guaranteed; the list is sorted by extent
    /// bit pattern and deduplicated). Enumeration closes every subset of `A`,
    /// which by join-generation reaches every concept.
    pub fn concept_lattice(&self) -> Result<Vec<Concept>, EvalError> {
        if self.na() > CONCEPT_MAX_BITS {
            return Err(EvalError::TooLarge(format!(
                "2^{} extent candidates exceeds the 2^{CONCEPT_MAX_BITS} guard",
                self.na()
            )));
        }
        let mut extents: Vec<u64> = Vec::new();
        for s in 0..(1u64 << self.na()) {
            let ext = self.down(self.up(s));
            if !extents.contains(&ext) {
                extents.push(ext);
            }
        }
        extents.sort_unstable();
        Ok(extents
            .into_iter()
            .map(|e| Concept { extent: e, intent: self.up(e) })
            .collect())
    }
}

fn mask_all(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A formal concept: a Galois-stable pair (extent ⊆ A, intent ⊆ X).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Concept {
    pub extent: u64,
    pub intent: u64,
}

/// Check that a stored relation is `I`-compatible: every singleton section is
/// Galois-stable.
pub fn check_i_compatible(p: &Polarity, rel: &TypedRel) -> Result<bool, EvalError> {
    match rel.sort {
        Sort::AX => {
            if rel.rows() != p.na() || rel.cols() != p.nx() {
                return Err(EvalError::DimensionMismatch("AX relation vs polarity".into()));
            }
            // R^(0)[x] ⊆ A must be extent-stable; R^(1)[a] ⊆ X intent-stable.
            let cols_ok = (0..p.nx()).all(|x| p.stable_extent(rel.r0(1 << x)));
            let rows_ok = (0..p.na()).all(|a| p.stable_intent(rel.r1(1 << a)));
            Ok(cols_ok && rows_ok)
        }
        Sort::XA => {
            if rel.rows() != p.nx() || rel.cols() != p.na() {
                return Err(EvalError::DimensionMismatch("XA relation vs polarity".into()));
            }
            let cols_ok = (0..p.na()).all(|a| p.stable_intent(rel.r0(1 << a)));
            let rows_ok = (0..p.nx()).all(|x| p.stable_extent(rel.r1(1 << x)));
            Ok(cols_ok && rows_ok)
        }
        _ => Err(EvalError::SortMismatch(
            "I-compatibility is defined for AX and XA relations".into(),
        )),
    }
}

/// `I`-mediated composition of two box-type or two diamond-type relations.
///
/// `XA ;_I XA`: column `a` is `R^(0)[I^(0)[T^(0)[{a}]]]`;
/// `AX ;_I AX`: column `x` is `R^(0)[I^(1)[T^(0)[{x}]]]`.
pub fn i_comp(p: &Polarity, r: &TypedRel, t: &TypedRel) -> Result<TypedRel, EvalError> {
    if r.sort != t.sort {
        return Err(EvalError::SortMismatch(format!("{} ;I {}", r.sort, t.sort)));
    }
    match r.sort {
        Sort::XA => {
            let mut out = TypedRel::empty(Sort::XA, p.nx(), p.na());
            for a in 0..p.na() {
                let col = r.r0(p.down(t.r0(1 << a)));
                for x in 0..p.nx() {
                    out.set(x, a, col >> x & 1 == 1);
                }
            }
            Ok(out)
        }
        Sort::AX => {
            let mut out = TypedRel::empty(Sort::AX, p.na(), p.nx());
            for x in 0..p.nx() {
                let col = r.r0(p.up(t.r0(1 << x)));
                for a in 0..p.na() {
                    out.set(a, x, col >> a & 1 == 1);
                }
            }
            Ok(out)
        }
        s => Err(EvalError::SortMismatch(format!("{s} ;I {s}"))),
    }
}

/// Non-`I`-mediated composition; the six legal sort pairs all share the
/// clause `(R;T)^(0)[w] = R^(0)[T^(0)[{w}]]`, computed column by column.
pub fn het_comp(r: &TypedRel, t: &TypedRel) -> Result<TypedRel, EvalError> {
    let sort = r
        .sort
        .compose(t.sort)
        .ok_or_else(|| EvalError::SortMismatch(format!("{} ; {}", r.sort, t.sort)))?;
    if r.cols() != t.rows() {
        return Err(EvalError::DimensionMismatch("composition carrier mismatch".into()));
    }
    let mut out = TypedRel::empty(sort, r.rows(), t.cols());
    for w in 0..t.cols() {
        let col = r.r0(t.r0(1 << w));
        for i in 0..r.rows() {
            out.set(i, w, col >> i & 1 == 1);
        }
    }
    Ok(out)
}

/// A polarity-based frame: a formal context plus `I`-compatible box (`A×X`)
/// and diamond (`X×A`) relations per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarityFrame {
    pub polarity: Polarity,
    boxes: BTreeMap<u32, TypedRel>,
    dias: BTreeMap<u32, TypedRel>,
}

impl PolarityFrame {
    pub fn new(polarity: Polarity) -> Self {
        PolarityFrame { polarity, boxes: BTreeMap::new(), dias: BTreeMap::new() }
    }

    /// Install a box relation, rejecting non-`I`-compatible input.
    pub fn set_box_relation(&mut self, index: u32, rel: TypedRel) -> Result<(), EvalError> {
        if !check_i_compatible(&self.polarity, &rel)? {
            return Err(EvalError::NotCompatible(format!("box.{index}")));
        }
        self.boxes.insert(index, rel);
        Ok(())
    }

    pub fn set_dia_relation(&mut self, index: u32, rel: TypedRel) -> Result<(), EvalError> {
        if !check_i_compatible(&self.polarity, &rel)? {
            return Err(EvalError::NotCompatible(format!("dia.{index}")));
        }
        self.dias.insert(index, rel);
        Ok(())
    }

    /// Install a relation without the compatibility gate. Only for
    /// law-violation experiments; the oracle semantics presumes compatibility.
    pub fn set_box_relation_unchecked(&mut self, index: u32, rel: TypedRel) {
        self.boxes.insert(index, rel);
    }

    pub fn set_dia_relation_unchecked(&mut self, index: u32, rel: TypedRel) {
        self.dias.insert(index, rel);
    }

    pub fn box_relation(&self, index: u32) -> Option<&TypedRel> {
        self.boxes.get(&index)
    }

    pub fn dia_relation(&self, index: u32) -> Option<&TypedRel> {
        self.dias.get(&index)
    }

    pub fn box_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.boxes.keys().copied()
    }

    pub fn dia_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.dias.keys().copied()
    }

    /// Resolve a relation symbol, with adjoints as converses.
    pub fn resolve(&self, sym: RelSymbol) -> Result<TypedRel, EvalError> {
        let missing = || EvalError::UnknownSymbol(crate::term::print_symbol(sym));
        match sym.kind {
            ModKind::Box => self.boxes.get(&sym.index).cloned().ok_or_else(missing),
            ModKind::Dia => self.dias.get(&sym.index).cloned().ok_or_else(missing),
            ModKind::BlackDia => Ok(self.boxes.get(&sym.index).ok_or_else(missing)?.converse()),
            ModKind::BlackBox => Ok(self.dias.get(&sym.index).ok_or_else(missing)?.converse()),
        }
    }

    /// Evaluate a `PRel` term to a typed relation.
    pub fn eval_prel(&self, t: &PRelTerm) -> Result<TypedRel, EvalError> {
        match t {
            PRelTerm::I => Ok(self.polarity.incidence_rel()),
            PRelTerm::J => Ok(self.polarity.incidence_rel().converse()),
            PRelTerm::Sym(s) => self.resolve(*s),
            PRelTerm::IComp(l, r) => i_comp(&self.polarity, &self.eval_prel(l)?, &self.eval_prel(r)?),
            PRelTerm::Comp(l, r) => het_comp(&self.eval_prel(l)?, &self.eval_prel(r)?),
        }
    }

    pub fn holds_prel(&self, ineq: &TermInequality) -> Result<bool, EvalError> {
        match ineq {
            TermInequality::PRel { lhs, rhs } => {
                let l = self.eval_prel(lhs)?;
                let r = self.eval_prel(rhs)?;
                if l.sort != r.sort {
                    return Err(EvalError::SortMismatch(format!(
                        "inequality sides have sorts {} and {}",
                        l.sort, r.sort
                    )));
                }
                Ok(l.subset_of(&r))
            }
            TermInequality::KRel { .. } => Err(EvalError::SortMismatch(
                "KRel inequality evaluated on a polarity frame".into(),
            )),
        }
    }

    /// Interpret a modal chain applied to a concept-valued variable.
    pub fn eval_chain(&self, chain: &ModalChain, value: Concept) -> Result<Concept, EvalError> {
        let mut cur = value;
        for tok in chain.tokens().iter().rev() {
            let rel = self.resolve(*tok)?;
            cur = match tok.kind {
                // Box-type: extent first, from the intent of the argument.
                ModKind::Box | ModKind::BlackBox => {
                    let extent = rel.r0(cur.intent);
                    Concept { extent, intent: self.polarity.up(extent) }
                }
                // Diamond-type: intent first, from the extent of the argument.
                ModKind::Dia | ModKind::BlackDia => {
                    let intent = rel.r0(cur.extent);
                    Concept { extent: self.polarity.down(intent), intent }
                }
            };
        }
        Ok(cur)
    }

    /// Brute-force MRP validity over all concept valuations.
    pub fn mrp_valid_oracle(&self, m: &Mrp) -> Result<bool, EvalError> {
        let concepts = self.polarity.concept_lattice()?;
        for c in &concepts {
            let lhs = self.eval_chain(&m.lhs, *c)?;
            let rhs = self.eval_chain(&m.rhs, *c)?;
            if lhs.extent & !rhs.extent != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// ---------------------------------------------------------------------------
// Lifting of Kripke frames
// ---------------------------------------------------------------------------

/// Lift a Kripke frame to a polarity-based frame: `A = X = W`, `I = Δ^c`,
/// each box relation becomes the complement matrix retyped `A×X`, each diamond
/// relation the complement retyped `X×A`. The lifted relations are always
/// `I_{Δ^c}`-compatible.
pub fn lift_frame(k: &KripkeFrame) -> PolarityFrame {
    let n = k.size();
    let delta_c: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |x| (a, x)))
        .filter(|&(a, x)| a != x)
        .collect();
    let p = Polarity::new(k.worlds.clone(), k.worlds.clone(), &delta_c);
    let mut f = PolarityFrame::new(p);
    for (is_box, index) in k.relation_keys() {
        if is_box {
            let r = k.box_relation(index).expect("key enumerated from the map");
            let lifted = TypedRel::retype(&r.complement(), Sort::AX);
            f.set_box_relation(index, lifted)
                .expect("lifted box relations are I-compatible");
        } else {
            let r = k.dia_relation(index).expect("key enumerated from the map");
            let lifted = TypedRel::retype(&r.complement(), Sort::XA);
            f.set_dia_relation(index, lifted)
                .expect("lifted dia relations are I-compatible");
        }
    }
    f
}

/// Verify that the complex algebra of the lifted frame is isomorphic, as a
/// lattice with operators, to the powerset algebra of the Kripke frame: every
/// subset `B ⊆ W` appears as the extent of exactly one concept (with intent
/// `B^c`), the order is inclusion, and each modal operator commutes with the
/// extent map.
pub fn check_complex_algebra_iso(k: &KripkeFrame) -> Result<bool, EvalError> {
    let n = k.size();
    if n > CONCEPT_MAX_BITS {
        return Err(EvalError::TooLarge(format!("|W| = {n}")));
    }
    let f = lift_frame(k);
    let concepts = f.polarity.concept_lattice()?;
    if concepts.len() != 1usize << n {
        return Ok(false);
    }
    for c in &concepts {
        if c.intent != !c.extent & mask_all(n) {
            return Ok(false);
        }
    }
    // Operators commute with the extent map on every element.
    for b in 0..(1u64 << n) {
        let concept = Concept { extent: b, intent: !b & mask_all(n) };
        for (is_box, index) in k.relation_keys() {
            let (kind, rel) = if is_box {
                (ModKind::Box, k.box_relation(index).unwrap())
            } else {
                (ModKind::Dia, k.dia_relation(index).unwrap())
            };
            let chain = ModalChain(vec![crate::mrp::ModToken::new(kind, index)]);
            let lifted = f.eval_chain(&chain, concept)?;
            let classical = match kind {
                ModKind::Box => crate::kripke::box_preimage(rel, b),
                ModKind::Dia => crate::kripke::dia_preimage(rel, b),
                _ => unreachable!(),
            };
            if lifted.extent != classical {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mrp::{classify, parse, ModToken};
    use crate::mrp::Shape;
    use crate::term::{correspondent_shaped, Semantics};

    #[test]
    fn galois_basics() {
        // ∅^↑ = X; A^↑ = {x | ∀a. aIx}.
        let p = Polarity::with_sizes(2, 2, &[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(p.up(0), 0b11);
        assert_eq!(p.up(0b11), 0b01);
        // On the lifted polarity of S = {0,1} (I = Δ^c): {0}^↑ = {1} and
        // {0}^↑↓ = {0}.
        let l = Polarity::with_sizes(2, 2, &[(0, 1), (1, 0)]);
        assert_eq!(l.up(0b01), 0b10);
        assert_eq!(l.down(l.up(0b01)), 0b01);
    }

    #[test]
    fn galois_laws_exhaustive() {
        // B ⊆ B^↑↓, Y ⊆ Y^↓↑, ↑↓↑ = ↑, antitone — all incidences on 2×2.
        for code in 0..16u64 {
            let p = Polarity::with_code(2, 2, code);
            for b in 0..4u64 {
                assert_eq!(b & !p.down(p.up(b)), 0);
                assert_eq!(p.up(p.down(p.up(b))), p.up(b));
                for b2 in 0..4u64 {
                    if b & !b2 == 0 {
                        assert_eq!(p.up(b2) & !p.up(b), 0);
                    }
                }
            }
            for y in 0..4u64 {
                assert_eq!(y & !p.up(p.down(y)), 0);
            }
        }
    }

    #[test]
    fn concepts_of_extremes() {
        // Full incidence: a single concept (A, X).
        let p = Polarity::with_sizes(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let cs = p.concept_lattice().unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0], Concept { extent: 0b11, intent: 0b11 });
        // A = {a}, X = {x}, I = ∅: exactly ({a}, ∅) and (∅, {x}).
        let p = Polarity::with_sizes(1, 1, &[]);
        let cs = p.concept_lattice().unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.contains(&Concept { extent: 0b1, intent: 0 }));
        assert!(cs.contains(&Concept { extent: 0, intent: 0b1 }));
        // Lifted polarity of a 2-element set: 4 concepts, extents = P(S).
        let l = Polarity::with_sizes(2, 2, &[(0, 1), (1, 0)]);
        let cs = l.concept_lattice().unwrap();
        assert_eq!(cs.len(), 4);
        for b in 0..4u64 {
            assert!(cs.iter().any(|c| c.extent == b));
        }
    }

    #[test]
    fn i_compatibility_examples() {
        // I itself and the full relation are always I-compatible.
        for code in 0..16u64 {
            let p = Polarity::with_code(2, 2, code);
            assert!(check_i_compatible(&p, &p.incidence_rel()).unwrap());
            assert!(check_i_compatible(&p, &TypedRel::full(Sort::AX, 2, 2)).unwrap());
            assert!(check_i_compatible(&p, &TypedRel::full(Sort::XA, 2, 2)).unwrap());
        }
        // The 3×3 example: I = {(a,x),(b,y),(c,z)}, R = {(b,y)} (AX) and
        // T = {(z,c)} (XA) are both I-compatible.
        let p = Polarity::with_sizes(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        let r = TypedRel::from_pairs(Sort::AX, 3, 3, &[(1, 1)]);
        let t = TypedRel::from_pairs(Sort::XA, 3, 3, &[(2, 2)]);
        assert!(check_i_compatible(&p, &r).unwrap());
        assert!(check_i_compatible(&p, &t).unwrap());
        // ... but their composition has a non-stable section:
        // (R;T)^(1)[a] = {d | a (R;T) d} = {a, b}.
        let rt = het_comp(&r, &t).unwrap();
        assert_eq!(rt.sort, Sort::AA);
        let row_a: u64 = (0..3).filter(|&d| rt.get(0, d)).map(|d| 1u64 << d).sum();
        assert_eq!(row_a, 0b011);
        assert!(!p.stable_extent(row_a));
    }

    #[test]
    fn i_comp_unit_and_assoc() {
        // R ;I I = R = I ;I R for I-compatible AX relations; likewise with J
        // for XA; and ;I is associative. Exhaustive on 2×2 polarities.
        for code in 0..16u64 {
            let p = Polarity::with_code(2, 2, code);
            let i_rel = p.incidence_rel();
            let j_rel = i_rel.converse();
            let ax: Vec<TypedRel> = (0..16u64)
                .map(|c| TypedRel::from_code(Sort::AX, 2, 2, c))
                .filter(|r| check_i_compatible(&p, r).unwrap())
                .collect();
            let xa: Vec<TypedRel> = (0..16u64)
                .map(|c| TypedRel::from_code(Sort::XA, 2, 2, c))
                .filter(|r| check_i_compatible(&p, r).unwrap())
                .collect();
            for r in &ax {
                assert_eq!(&i_comp(&p, r, &i_rel).unwrap(), r);
                assert_eq!(&i_comp(&p, &i_rel, r).unwrap(), r);
            }
            for r in &xa {
                assert_eq!(&i_comp(&p, r, &j_rel).unwrap(), r);
                assert_eq!(&i_comp(&p, &j_rel, r).unwrap(), r);
            }
            for r in &ax {
                for t in &ax {
                    // Closure under ;I.
                    let rt = i_comp(&p, r, t).unwrap();
                    assert!(check_i_compatible(&p, &rt).unwrap());
                    for u in &ax {
                        let left = i_comp(&p, &rt, u).unwrap();
                        let right = i_comp(&p, r, &i_comp(&p, t, u).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn het_comp_witness() {
        // The pinned associativity failure: A = {a1,a2}, X = {x1,x2},
        // I = {(a1,x2),(a2,x1)}, R = ∅ (AX), U = A×X, T = {(x1,a2),(x2,a1)}.
        let p = Polarity::with_sizes(2, 2, &[(0, 1), (1, 0)]);
        let r = TypedRel::empty(Sort::AX, 2, 2);
        let u = TypedRel::full(Sort::AX, 2, 2);
        let t = TypedRel::from_pairs(Sort::XA, 2, 2, &[(0, 1), (1, 0)]);
        for rel in [&r, &u] {
            assert!(check_i_compatible(&p, rel).unwrap());
        }
        assert!(check_i_compatible(&p, &t).unwrap());
        let right = het_comp(&r, &het_comp(&t, &u).unwrap()).unwrap();
        let left = het_comp(&het_comp(&r, &t).unwrap(), &u).unwrap();
        assert_eq!(right, TypedRel::full(Sort::AX, 2, 2));
        assert_eq!(left, TypedRel::empty(Sort::AX, 2, 2));
    }

    #[test]
    fn het_comp_vacuous() {
        // T = ∅ has T^(0)[b] = ∅ for every b, so R;T = R^(0)[∅] everywhere,
        // which is the full A×A relation.
        let r = TypedRel::from_pairs(Sort::AX, 2, 2, &[(0, 0)]);
        let t = TypedRel::empty(Sort::XA, 2, 2);
        assert_eq!(het_comp(&r, &t).unwrap(), TypedRel::full(Sort::AA, 2, 2));
        // full ; full is all-or-nothing: T full has T^(0)[b] = X, so the
        // result column is R^(0)[X].
        let rf = TypedRel::full(Sort::AX, 2, 2);
        let tf = TypedRel::full(Sort::XA, 2, 2);
        assert_eq!(het_comp(&rf, &tf).unwrap(), TypedRel::full(Sort::AA, 2, 2));
        assert_eq!(het_comp(&r, &tf).unwrap(), TypedRel::empty(Sort::AA, 2, 2));
    }

    #[test]
    fn alternative_i_comp_formula() {
        // a (R ;I T) x iff x ∈ T^(1)[I^(0)[R^(1)[{a}]]] for I-compatible AX
        // pairs; and the direct first-order clause agrees. Exhaustive on 2×2.
        for code in 0..16u64 {
            let p = Polarity::with_code(2, 2, code);
            let ax: Vec<TypedRel> = (0..16u64)
                .map(|c| TypedRel::from_code(Sort::AX, 2, 2, c))
                .filter(|r| check_i_compatible(&p, r).unwrap())
                .collect();
            for r in &ax {
                for t in &ax {
                    let rt = i_comp(&p, r, t).unwrap();
                    for a in 0..2 {
                        let via_r1 = t.r1(p.down(r.r1(1 << a)));
                        for x in 0..2 {
                            assert_eq!(rt.get(a, x), via_r1 >> x & 1 == 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn converse_distribution() {
        // a (R_□1 ;I R_□2) x iff x (R_⧫2 ;I R_⧫1) a on I-compatible pairs.
        for code in 0..16u64 {
            let p = Polarity::with_code(2, 2, code);
            let ax: Vec<TypedRel> = (0..16u64)
                .map(|c| TypedRel::from_code(Sort::AX, 2, 2, c))
                .filter(|r| check_i_compatible(&p, r).unwrap())
                .collect();
            for r in &ax {
                for t in &ax {
                    let lhs = i_comp(&p, r, t).unwrap();
                    let rhs = i_comp(&p, &t.converse(), &r.converse()).unwrap();
                    assert_eq!(lhs, rhs.converse());
                }
            }
        }
    }

    #[test]
    fn eval_prel_basics() {
        let p = Polarity::with_sizes(1, 1, &[(0, 0)]);
        let mut f = PolarityFrame::new(p);
        f.set_box_relation(1, TypedRel::full(Sort::AX, 1, 1)).unwrap();
        f.set_dia_relation(1, TypedRel::full(Sort::XA, 1, 1)).unwrap();
        assert_eq!(f.eval_prel(&PRelTerm::I).unwrap(), f.polarity.incidence_rel());
        // R_□ ⊆ I holds when R_□ = I.
        let ineq = TermInequality::PRel {
            lhs: PRelTerm::Sym(ModToken::new(ModKind::Box, 1)),
            rhs: PRelTerm::I,
        };
        assert!(f.holds_prel(&ineq).unwrap());
    }

    #[test]
    fn eval_prel_on_lifted_singleton() {
        // Lift W = {0} with R_□ = R_◇ = {(0,0)}: J = Δ^c = ∅ on the singleton
        // and the shape-(a) correspondent of p ≤ ◇□p holds.
        let mut k = KripkeFrame::with_size(1);
        k.set_box_relation(1, BinRel::full(1));
        k.set_dia_relation(1, BinRel::full(1));
        let f = lift_frame(&k);
        let d = classify(&parse("p <= dia box p").unwrap());
        let ineq = correspondent_shaped(&d, Semantics::PRel, Shape::A, false).unwrap();
        assert!(f.holds_prel(&ineq).unwrap());
        let j = f.eval_prel(&PRelTerm::J).unwrap();
        assert_eq!(j, TypedRel::empty(Sort::XA, 1, 1));
    }

    #[test]
    fn oracle_reflexivity_iff_term() {
        // □p ⊢ p is valid iff R_□ ⊆ I, across every 2×2 polarity frame.
        let m = parse("box p <= p").unwrap();
        let d = classify(&m);
        let ineq = correspondent_shaped(&d, Semantics::PRel, Shape::B, false).unwrap();
        for code in 0..16u64 {
            let p = Polarity::with_code(2, 2, code);
            let ax: Vec<TypedRel> = (0..16u64)
                .map(|c| TypedRel::from_code(Sort::AX, 2, 2, c))
                .filter(|r| check_i_compatible(&p, r).unwrap())
                .collect();
            let xa: Vec<TypedRel> = (0..16u64)
                .map(|c| TypedRel::from_code(Sort::XA, 2, 2, c))
                .filter(|r| check_i_compatible(&p, r).unwrap())
                .collect();
            for rb in &ax {
                for rd in &xa {
                    let mut f = PolarityFrame::new(p.clone());
                    f.set_box_relation(1, rb.clone()).unwrap();
                    f.set_dia_relation(1, rd.clone()).unwrap();
                    let oracle = f.mrp_valid_oracle(&m).unwrap();
                    let term = f.holds_prel(&ineq).unwrap();
                    assert_eq!(oracle, term);
                    assert_eq!(term, rb.subset_of(&p.incidence_rel()));
                }
            }
        }
    }

    #[test]
    fn one_concept_frame_validates_everything() {
        // Full incidence: the lattice is a single point, so any MRP is valid.
        let p = Polarity::with_sizes(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let mut f = PolarityFrame::new(p);
        f.set_box_relation(1, TypedRel::full(Sort::AX, 2, 2)).unwrap();
        f.set_dia_relation(1, TypedRel::full(Sort::XA, 2, 2)).unwrap();
        for s in ["box p <= p", "p <= box p", "dia p <= box p", "p <= dia box p"] {
            assert!(f.mrp_valid_oracle(&parse(s).unwrap()).unwrap(), "{s}");
        }
    }

    #[test]
    fn incompatible_rejected() {
        let p = Polarity::with_sizes(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        let r = TypedRel::from_pairs(Sort::AX, 3, 3, &[(1, 1)]);
        let t = TypedRel::from_pairs(Sort::XA, 3, 3, &[(2, 2)]);
        // AA-typed result of R;T is not even accepted as a frame relation.
        let rt = het_comp(&r, &t).unwrap();
        assert!(check_i_compatible(&p, &rt).is_err());
        // A non-compatible AX relation is rejected by the frame setter.
        let p2 = Polarity::with_sizes(2, 2, &[(0, 0)]);
        let bad = TypedRel::from_pairs(Sort::AX, 2, 2, &[(1, 1)]);
        if !check_i_compatible(&p2, &bad).unwrap() {
            let mut f = PolarityFrame::new(p2);
            assert!(matches!(
                f.set_box_relation(1, bad),
                Err(EvalError::NotCompatible(_))
            ));
        }
    }

    #[test]
    fn lifting_preserves_composition() {
        // I_{(R∘T)^c} = I_{R^c} ;I I_{T^c} and the J version, over all pairs
        // of 2-world relations.
        for rc in 0..16u64 {
            for tc in 0..16u64 {
                let r = BinRel::from_code(2, rc);
                let t = BinRel::from_code(2, tc);
                let comp = crate::kripke::compose(&r, &t).unwrap();
                let p = Polarity::with_sizes(2, 2, &[(0, 1), (1, 0)]);
                let lhs_i = TypedRel::retype(&comp.complement(), Sort::AX);
                let rhs_i = i_comp(
                    &p,
                    &TypedRel::retype(&r.complement(), Sort::AX),
                    &TypedRel::retype(&t.complement(), Sort::AX),
                )
                .unwrap();
                assert_eq!(lhs_i, rhs_i);
                let lhs_j = TypedRel::retype(&comp.complement(), Sort::XA);
                let rhs_j = i_comp(
                    &p,
                    &TypedRel::retype(&r.complement(), Sort::XA),
                    &TypedRel::retype(&t.complement(), Sort::XA),
                )
                .unwrap();
                assert_eq!(lhs_j, rhs_j);
            }
        }
    }

    #[test]
    fn lifting_star_commutes() {
        // I_{R^c} ; J_{S^c} = H_{(R⋆S)^c} and the other five clauses, over all
        // pairs of 2-world relations.
        for rc in 0..16u64 {
            for sc in 0..16u64 {
                let r = BinRel::from_code(2, rc);
                let s = BinRel::from_code(2, sc);
                let rs = crate::kripke::star(&r, &s).unwrap();
                let i_r = TypedRel::retype(&r.complement(), Sort::AX);
                let j_r = TypedRel::retype(&r.complement(), Sort::XA);
                let h_r = TypedRel::retype(&r.complement(), Sort::AA);
                let k_r = TypedRel::retype(&r.complement(), Sort::XX);
                let i_s = TypedRel::retype(&s.complement(), Sort::AX);
                let j_s = TypedRel::retype(&s.complement(), Sort::XA);
                let h_s = TypedRel::retype(&s.complement(), Sort::AA);
                let k_s = TypedRel::retype(&s.complement(), Sort::XX);
                assert_eq!(het_comp(&i_r, &j_s).unwrap(), TypedRel::retype(&rs.complement(), Sort::AA));
                assert_eq!(het_comp(&j_r, &i_s).unwrap(), TypedRel::retype(&rs.complement(), Sort::XX));
                assert_eq!(het_comp(&k_r, &j_s).unwrap(), TypedRel::retype(&rs.complement(), Sort::XA));
                assert_eq!(het_comp(&h_r, &i_s).unwrap(), TypedRel::retype(&rs.complement(), Sort::AX));
                assert_eq!(het_comp(&j_r, &h_s).unwrap(), TypedRel::retype(&rs.complement(), Sort::XA));
                assert_eq!(het_comp(&i_r, &k_s).unwrap(), TypedRel::retype(&rs.complement(), Sort::AX));
            }
        }
    }

    #[test]
    fn delta_lifting_corollary() {
        // J_{Δ^c}^(0)[B] = B^c (as a subset of the X copy), for |S| = 3.
        let n = 3;
        let delta_c = BinRel::identity(n).complement();
        let j = TypedRel::retype(&delta_c, Sort::XA);
        for b in 0..(1u64 << n) {
            assert_eq!(j.r0(b), !b & mask_all(n));
        }
    }

    #[test]
    fn complex_algebra_iso_small() {
        // |W| = 1 and all 2-world frames, plus a 3-world spot check.
        for bc in 0..2u64 {
            for dc in 0..2u64 {
                let mut k = KripkeFrame::with_size(1);
                k.set_box_relation(1, BinRel::from_code(1, bc));
                k.set_dia_relation(1, BinRel::from_code(1, dc));
                assert!(check_complex_algebra_iso(&k).unwrap());
            }
        }
        for bc in 0..16u64 {
            for dc in 0..16u64 {
                let mut k = KripkeFrame::with_size(2);
                k.set_box_relation(1, BinRel::from_code(2, bc));
                k.set_dia_relation(1, BinRel::from_code(2, dc));
                assert!(check_complex_algebra_iso(&k).unwrap());
            }
        }
        let mut k = KripkeFrame::with_size(3);
        k.set_box_relation(1, BinRel::from_pairs(3, &[(0, 1), (1, 2), (2, 0)]));
        k.set_dia_relation(1, BinRel::from_pairs(3, &[(0, 0), (2, 1)]));
        assert!(check_complex_algebra_iso(&k).unwrap());
    }

    #[test]
    fn lifted_reflexive_box_is_sub_incidence() {
        // W = {0,1}, R_□ = Δ: the lifted box relation is Δ^c = I, so R_□ ⊆ I
        // holds on the lifted frame.
        let mut k = KripkeFrame::with_size(2);
        k.set_box_relation(1, BinRel::identity(2));
        k.set_dia_relation(1, BinRel::identity(2));
        let f = lift_frame(&k);
        let d = classify(&parse("box p <= p").unwrap());
        let ineq = correspondent_shaped(&d, Semantics::PRel, Shape::B, false).unwrap();
        assert!(f.holds_prel(&ineq).unwrap());
    }
}
