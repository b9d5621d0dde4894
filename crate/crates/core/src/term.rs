//! Relation-algebra terms and the correspondent construction.
//!
//! `KRel` terms live on Kripke frames: `ξ ::= Δ | R | ξ∘ξ | ξ⋆ξ`. `PRel`
//! terms live on polarity-based frames and are sorted by one of `A×X`, `X×A`,
//! `A×A`, `X×X`; `I`-mediated composition `;_I` keeps the sort, the
//! non-mediated composition `;` combines sorts per the composition table.
//!
//! ASCII surface syntax: `D` (Δ), `I`, `J`, `R<i>` (◇i), `R[i]` (□i), `R>i`
//! (⧫i), `R#i` (■i), `o` (∘), `;I`, `*` (⋆), `;`, and `<=` between the sides
//! of an inequality. Non-`I`-mediated compositions are not associative, so
//! composite arguments of `o`, `*` and `;` always print parenthesized.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{LiftError, ShapeError, TermError};
use crate::mrp::{left_adjoint, right_adjoint, ModKind, ModToken, ModalChain, Shape, ShapeDecomposition, ShapeTag};

/// A relation symbol: a modality kind plus index. Adjoint symbols (⧫i, ■i)
/// are first-class, but frames interpret them as converses of their primitive
/// (⧫i of □i, ■i of ◇i); that resolution happens at evaluation time.
pub type RelSymbol = ModToken;

/// Print a relation symbol in the ASCII surface syntax.
pub fn print_symbol(s: RelSymbol) -> String {
    match s.kind {
        ModKind::Dia => format!("R<{}>", s.index),
        ModKind::Box => format!("R[{}]", s.index),
        ModKind::BlackDia => format!("R>{}", s.index),
        ModKind::BlackBox => format!("R#{}", s.index),
    }
}

fn symbol_json(s: RelSymbol) -> Value {
    json!({"op": "Sym", "kind": s.kind.keyword(), "index": s.index})
}

/// Sorts of `PRel` terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    AX,
    XA,
    AA,
    XX,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sort::AX => "AX",
            Sort::XA => "XA",
            Sort::AA => "AA",
            Sort::XX => "XX",
        };
        write!(f, "{s}")
    }
}

impl Sort {
    /// Output sort of the non-mediated composition, per the composition table:
    /// AX;XA→AA, XA;AX→XX, AA;AX→AX, XA;AA→XA, XX;XA→XA, AX;XX→AX.
    pub fn compose(self, rhs: Sort) -> Option<Sort> {
        use Sort::*;
        match (self, rhs) {
            (AX, XA) => Some(AA),
            (XA, AX) => Some(XX),
            (AA, AX) => Some(AX),
            (XA, AA) => Some(XA),
            (XX, XA) => Some(XA),
            (AX, XX) => Some(AX),
            _ => None,
        }
    }
}

/// Untyped relation-algebra term over Kripke frames.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KRelTerm {
    Delta,
    Sym(RelSymbol),
    Comp(Box<KRelTerm>, Box<KRelTerm>),
    Star(Box<KRelTerm>, Box<KRelTerm>),
}

impl KRelTerm {
    pub fn comp(l: KRelTerm, r: KRelTerm) -> KRelTerm {
        KRelTerm::Comp(Box::new(l), Box::new(r))
    }

    pub fn star(l: KRelTerm, r: KRelTerm) -> KRelTerm {
        KRelTerm::Star(Box::new(l), Box::new(r))
    }

    /// Composition with the unit law `Δ∘t = t = t∘Δ` applied.
    fn comp_unit(l: KRelTerm, r: KRelTerm) -> KRelTerm {
        match (l, r) {
            (KRelTerm::Delta, r) => r,
            (l, KRelTerm::Delta) => l,
            (l, r) => KRelTerm::comp(l, r),
        }
    }

    pub fn print(&self) -> String {
        fn arg(t: &KRelTerm) -> String {
            match t {
                KRelTerm::Delta | KRelTerm::Sym(_) => t.print(),
                _ => format!("({})", t.print()),
            }
        }
        match self {
            KRelTerm::Delta => "D".into(),
            KRelTerm::Sym(s) => print_symbol(*s),
            KRelTerm::Comp(l, r) => format!("{} o {}", arg(l), arg(r)),
            KRelTerm::Star(l, r) => format!("{} * {}", arg(l), arg(r)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            KRelTerm::Delta => json!({"op": "Delta"}),
            KRelTerm::Sym(s) => symbol_json(*s),
            KRelTerm::Comp(l, r) => json!({"op": "Comp", "lhs": l.to_json(), "rhs": r.to_json()}),
            KRelTerm::Star(l, r) => json!({"op": "Star", "lhs": l.to_json(), "rhs": r.to_json()}),
        }
    }

    fn first_symbol(&self) -> Option<RelSymbol> {
        match self {
            KRelTerm::Delta => None,
            KRelTerm::Sym(s) => Some(*s),
            KRelTerm::Comp(l, r) | KRelTerm::Star(l, r) => l.first_symbol().or_else(|| r.first_symbol()),
        }
    }
}

/// Sorted relation-algebra term over polarity-based frames. Sort discipline is
/// enforced by the constructors; `sort()` is total on constructed terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PRelTerm {
    I,
    J,
    Sym(RelSymbol),
    IComp(Box<PRelTerm>, Box<PRelTerm>),
    Comp(Box<PRelTerm>, Box<PRelTerm>),
}

impl PRelTerm {
    pub fn sym(s: RelSymbol) -> PRelTerm {
        PRelTerm::Sym(s)
    }

    pub fn sort(&self) -> Result<Sort, TermError> {
        match self {
            PRelTerm::I => Ok(Sort::AX),
            PRelTerm::J => Ok(Sort::XA),
            PRelTerm::Sym(s) => Ok(if s.kind.is_box_type() { Sort::AX } else { Sort::XA }),
            PRelTerm::IComp(l, r) => {
                let (ls, rs) = (l.sort()?, r.sort()?);
                if ls == rs && matches!(ls, Sort::AX | Sort::XA) {
                    Ok(ls)
                } else {
                    Err(TermError::ICompSort(ls.to_string(), rs.to_string()))
                }
            }
            PRelTerm::Comp(l, r) => {
                let (ls, rs) = (l.sort()?, r.sort()?);
                ls.compose(rs)
                    .ok_or_else(|| TermError::SortMismatch(ls.to_string(), rs.to_string()))
            }
        }
    }

    pub fn icomp(l: PRelTerm, r: PRelTerm) -> Result<PRelTerm, TermError> {
        let t = PRelTerm::IComp(Box::new(l), Box::new(r));
        t.sort()?;
        Ok(t)
    }

    pub fn comp(l: PRelTerm, r: PRelTerm) -> Result<PRelTerm, TermError> {
        let t = PRelTerm::Comp(Box::new(l), Box::new(r));
        t.sort()?;
        Ok(t)
    }

    /// `I`-composition with the unit law applied: a bare `I`/`J` operand of
    /// matching sort is absorbed.
    fn icomp_unit(l: PRelTerm, r: PRelTerm) -> Result<PRelTerm, TermError> {
        match (l, r) {
            (PRelTerm::I, r) if r.sort()? == Sort::AX => Ok(r),
            (PRelTerm::J, r) if r.sort()? == Sort::XA => Ok(r),
            (l, PRelTerm::I) if l.sort()? == Sort::AX => Ok(l),
            (l, PRelTerm::J) if l.sort()? == Sort::XA => Ok(l),
            (l, r) => PRelTerm::icomp(l, r),
        }
    }

    pub fn print(&self) -> String {
        fn comp_arg(t: &PRelTerm) -> String {
            match t {
                PRelTerm::I | PRelTerm::J | PRelTerm::Sym(_) => t.print(),
                _ => format!("({})", t.print()),
            }
        }
        fn icomp_arg(t: &PRelTerm) -> String {
            match t {
                // ;I chains print flat; non-mediated compositions under ;I
                // keep their parentheses.
                PRelTerm::Comp(_, _) => format!("({})", t.print()),
                _ => t.print(),
            }
        }
        match self {
            PRelTerm::I => "I".into(),
            PRelTerm::J => "J".into(),
            PRelTerm::Sym(s) => print_symbol(*s),
            PRelTerm::IComp(l, r) => format!("{} ;I {}", icomp_arg(l), icomp_arg(r)),
            PRelTerm::Comp(l, r) => format!("{} ; {}", comp_arg(l), comp_arg(r)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PRelTerm::I => json!({"op": "I"}),
            PRelTerm::J => json!({"op": "J"}),
            PRelTerm::Sym(s) => symbol_json(*s),
            PRelTerm::IComp(l, r) => json!({"op": "IComp", "lhs": l.to_json(), "rhs": r.to_json()}),
            PRelTerm::Comp(l, r) => json!({"op": "Comp", "lhs": l.to_json(), "rhs": r.to_json()}),
        }
    }
}

/// Which semantics a term inequality targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    KRel,
    PRel,
}

/// A term inequality `lhs ⊆ rhs` in one of the two term languages. `PRel`
/// inequalities are homogeneous: both sides share a sort (XA for shape-(a)
/// correspondents, AX for shape-(b)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermInequality {
    KRel { lhs: KRelTerm, rhs: KRelTerm },
    PRel { lhs: PRelTerm, rhs: PRelTerm },
}

impl TermInequality {
    pub fn semantics(&self) -> Semantics {
        match self {
            TermInequality::KRel { .. } => Semantics::KRel,
            TermInequality::PRel { .. } => Semantics::PRel,
        }
    }

    pub fn print(&self) -> String {
        match self {
            TermInequality::KRel { lhs, rhs } => format!("{} <= {}", lhs.print(), rhs.print()),
            TermInequality::PRel { lhs, rhs } => format!("{} <= {}", lhs.print(), rhs.print()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TermInequality::KRel { lhs, rhs } => json!({
                "semantics": "krel",
                "lhs": lhs.to_json(),
                "rhs": rhs.to_json(),
            }),
            TermInequality::PRel { lhs, rhs } => json!({
                "semantics": "prel",
                "sort": lhs.sort().map(|s| s.to_string()).unwrap_or_else(|_| "?".into()),
                "lhs": lhs.to_json(),
                "rhs": rhs.to_json(),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Chain-to-term construction
// ---------------------------------------------------------------------------

/// Syntactic flavor a chain must match when converted to a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainFlavor {
    /// All diamond-type tokens; empty chain becomes `Δ`/`J`.
    Diamond,
    /// All box-type tokens; empty chain becomes `Δ`/`I`.
    Box,
    /// Alternating blocks starting with a diamond block; a trailing box block
    /// gets a closing `Δ`/`J`.
    Chi,
    /// Alternating blocks starting with a box block; a trailing diamond block
    /// gets a closing `Δ`/`I`.
    Zeta,
}

/// Maximal same-type blocks of a chain, in order. Each block is nonempty and
/// flagged with whether it is diamond-type.
fn blocks(c: &ModalChain) -> Vec<(bool, Vec<ModToken>)> {
    let mut out: Vec<(bool, Vec<ModToken>)> = Vec::new();
    for t in c.tokens() {
        let dia = t.kind.is_dia_type();
        match out.last_mut() {
            Some((d, toks)) if *d == dia => toks.push(*t),
            _ => out.push((dia, vec![*t])),
        }
    }
    out
}

fn check_flavor(c: &ModalChain, flavor: ChainFlavor) -> Result<(), ShapeError> {
    let bs = blocks(c);
    let ok = match flavor {
        ChainFlavor::Diamond => bs.iter().all(|(d, _)| *d),
        ChainFlavor::Box => bs.iter().all(|(d, _)| !*d),
        ChainFlavor::Chi => bs.first().map(|(d, _)| *d).unwrap_or(true),
        ChainFlavor::Zeta => bs.first().map(|(d, _)| !*d).unwrap_or(true),
    };
    if ok {
        Ok(())
    } else {
        Err(ShapeError::ShapeMismatch(format!("{flavor:?}")))
    }
}

/// Fold a nonempty same-type block right to left with `∘`.
fn krel_block(toks: &[ModToken]) -> KRelTerm {
    let mut it = toks.iter().rev();
    let mut acc = KRelTerm::Sym(*it.next().expect("block is nonempty"));
    for t in it {
        acc = KRelTerm::comp(KRelTerm::Sym(*t), acc);
    }
    acc
}

fn prel_block(toks: &[ModToken]) -> PRelTerm {
    let mut it = toks.iter().rev();
    let mut acc = PRelTerm::Sym(*it.next().expect("block is nonempty"));
    for t in it {
        // Same-type symbols always I-compose, so this cannot fail.
        acc = PRelTerm::icomp(PRelTerm::Sym(*t), acc).expect("same-type block");
    }
    acc
}

/// `KRel` term of a chain: diamond/box chains fold with `∘` (empty chain ↦ Δ);
/// chi/zeta chains become `⋆`-chains of their blocks, with a trailing `Δ` when
/// the final block has the opposite type of the leading one.
pub fn krel_of_chain(c: &ModalChain, flavor: ChainFlavor) -> Result<KRelTerm, ShapeError> {
    check_flavor(c, flavor)?;
    match flavor {
        ChainFlavor::Diamond | ChainFlavor::Box => {
            if c.is_empty() {
                Ok(KRelTerm::Delta)
            } else {
                Ok(krel_block(c.tokens()))
            }
        }
        ChainFlavor::Chi | ChainFlavor::Zeta => {
            let bs = blocks(c);
            if bs.is_empty() {
                return Ok(KRelTerm::Delta);
            }
            let leading_dia = flavor == ChainFlavor::Chi;
            let trailing = bs.last().map(|(d, _)| *d != leading_dia).unwrap_or(false);
            let mut acc = if trailing { Some(KRelTerm::Delta) } else { None };
            for (_, toks) in bs.iter().rev() {
                let block = krel_block(toks);
                acc = Some(match acc {
                    None => block,
                    Some(rest) => KRelTerm::star(block, rest),
                });
            }
            Ok(acc.expect("at least one block"))
        }
    }
}

/// `PRel` term of a chain. Diamond chains have sort XA (empty ↦ `J`), box
/// chains AX (empty ↦ `I`); chi chains have sort XA, zeta chains AX.
pub fn prel_of_chain(c: &ModalChain, flavor: ChainFlavor) -> Result<PRelTerm, ShapeError> {
    check_flavor(c, flavor)?;
    match flavor {
        ChainFlavor::Diamond => Ok(if c.is_empty() { PRelTerm::J } else { prel_block(c.tokens()) }),
        ChainFlavor::Box => Ok(if c.is_empty() { PRelTerm::I } else { prel_block(c.tokens()) }),
        ChainFlavor::Chi | ChainFlavor::Zeta => {
            let bs = blocks(c);
            if bs.is_empty() {
                return Ok(if flavor == ChainFlavor::Chi { PRelTerm::J } else { PRelTerm::I });
            }
            let leading_dia = flavor == ChainFlavor::Chi;
            let trailing = bs.last().map(|(d, _)| *d != leading_dia).unwrap_or(false);
            let unit = if leading_dia { PRelTerm::J } else { PRelTerm::I };
            let mut acc = if trailing { Some(unit) } else { None };
            for (_, toks) in bs.iter().rev() {
                let block = prel_block(toks);
                acc = Some(match acc {
                    None => block,
                    Some(rest) => PRelTerm::comp(block, rest).map_err(|e| {
                        ShapeError::ShapeMismatch(format!("unsortable block chain: {e}"))
                    })?,
                });
            }
            Ok(acc.expect("at least one block"))
        }
    }
}

// ---------------------------------------------------------------------------
// Correspondents
// ---------------------------------------------------------------------------

/// Build the relational correspondent of an inductive MRP for the chosen
/// semantics and shape.
///
/// Shape (a): `KRel`: `R_LA(psi) ∘ R_phi ⊆ R_chi[LA(alpha)/p]`;
///            `PRel`: `R_chi[LA(alpha)/p] ⊆ R_LA(psi) ;_I R_phi` (sort XA).
/// Shape (b): `KRel`: `R_RA(phi) ∘ R_psi ⊆ R_zeta[RA(delta)/p]`;
///            `PRel`: `R_zeta[RA(delta)/p] ⊆ R_RA(phi) ;_I R_psi` (sort AX).
///
/// With `simplify_analytic` set and an analytic decomposition, the substituted
/// side is emitted in the two-factor form `R_chi ;_I R_LA(alpha)` (resp.
/// `R_zeta ;_I R_RA(delta)`, and `∘` on the Kripke side).
pub fn correspondent_shaped(
    d: &ShapeDecomposition,
    target: Semantics,
    shape: Shape,
    simplify_analytic: bool,
) -> Result<TermInequality, ShapeError> {
    if d.tag == ShapeTag::NotInductive {
        return Err(ShapeError::NotInductiveInput);
    }
    let term_err = |e: TermError| ShapeError::ShapeMismatch(e.to_string());
    match shape {
        Shape::A => {
            let a = d.a.as_ref().ok_or(ShapeError::ShapeUnavailable('a'))?;
            let la_psi = left_adjoint(&a.psi)?;
            let la_alpha = left_adjoint(&a.alpha)?;
            let chi_sub = a.chi.then(&la_alpha);
            let simplify = simplify_analytic && d.tag == ShapeTag::Analytic;
            match target {
                Semantics::KRel => {
                    let lhs = KRelTerm::comp_unit(
                        krel_of_chain(&la_psi, ChainFlavor::Diamond)?,
                        krel_of_chain(&a.phi, ChainFlavor::Diamond)?,
                    );
                    let rhs = if simplify {
                        KRelTerm::comp_unit(
                            krel_of_chain(&a.chi, ChainFlavor::Diamond)?,
                            krel_of_chain(&la_alpha, ChainFlavor::Diamond)?,
                        )
                    } else {
                        krel_of_chain(&chi_sub, ChainFlavor::Chi)?
                    };
                    Ok(TermInequality::KRel { lhs, rhs })
                }
                Semantics::PRel => {
                    let rhs = PRelTerm::icomp_unit(
                        prel_of_chain(&la_psi, ChainFlavor::Diamond)?,
                        prel_of_chain(&a.phi, ChainFlavor::Diamond)?,
                    )
                    .map_err(term_err)?;
                    let lhs = if simplify {
                        PRelTerm::icomp_unit(
                            prel_of_chain(&a.chi, ChainFlavor::Diamond)?,
                            prel_of_chain(&la_alpha, ChainFlavor::Diamond)?,
                        )
                        .map_err(term_err)?
                    } else {
                        prel_of_chain(&chi_sub, ChainFlavor::Chi)?
                    };
                    Ok(TermInequality::PRel { lhs, rhs })
                }
            }
        }
        Shape::B => {
            let b = d.b.as_ref().ok_or(ShapeError::ShapeUnavailable('b'))?;
            let ra_phi = right_adjoint(&b.phi)?;
            let ra_delta = right_adjoint(&b.delta)?;
            let zeta_sub = b.zeta.then(&ra_delta);
            let simplify = simplify_analytic && d.tag == ShapeTag::Analytic;
            match target {
                Semantics::KRel => {
                    let lhs = KRelTerm::comp_unit(
                        krel_of_chain(&ra_phi, ChainFlavor::Box)?,
                        krel_of_chain(&b.psi, ChainFlavor::Box)?,
                    );
                    let rhs = if simplify {
                        KRelTerm::comp_unit(
                            krel_of_chain(&b.zeta, ChainFlavor::Box)?,
                            krel_of_chain(&ra_delta, ChainFlavor::Box)?,
                        )
                    } else {
                        krel_of_chain(&zeta_sub, ChainFlavor::Zeta)?
                    };
                    Ok(TermInequality::KRel { lhs, rhs })
                }
                Semantics::PRel => {
                    let rhs = PRelTerm::icomp_unit(
                        prel_of_chain(&ra_phi, ChainFlavor::Box)?,
                        prel_of_chain(&b.psi, ChainFlavor::Box)?,
                    )
                    .map_err(term_err)?;
                    let lhs = if simplify {
                        PRelTerm::icomp_unit(
                            prel_of_chain(&b.zeta, ChainFlavor::Box)?,
                            prel_of_chain(&ra_delta, ChainFlavor::Box)?,
                        )
                        .map_err(term_err)?
                    } else {
                        prel_of_chain(&zeta_sub, ChainFlavor::Zeta)?
                    };
                    Ok(TermInequality::PRel { lhs, rhs })
                }
            }
        }
    }
}

/// Correspondent using the default shape choice ((b) when available).
pub fn correspondent(d: &ShapeDecomposition, target: Semantics) -> Result<TermInequality, ShapeError> {
    let shape = d.default_shape().ok_or(ShapeError::NotInductiveInput)?;
    correspondent_shaped(d, target, shape, false)
}

// ---------------------------------------------------------------------------
// Lifting
// ---------------------------------------------------------------------------

/// Map a `KRel` term in the image of the correspondent construction to its
/// `PRel` counterpart: symbols stay, `∘ ↦ ;_I`, `⋆ ↦ ;`, and `Δ` becomes the
/// unit of the target sort (`J` for a J-lifting, `I` for an I-lifting).
fn lift_term(t: &KRelTerm, unit: &PRelTerm) -> PRelTerm {
    match t {
        KRelTerm::Delta => unit.clone(),
        KRelTerm::Sym(s) => PRelTerm::Sym(*s),
        KRelTerm::Comp(l, r) => {
            PRelTerm::IComp(Box::new(lift_term(l, unit)), Box::new(lift_term(r, unit)))
        }
        KRelTerm::Star(l, r) => {
            PRelTerm::Comp(Box::new(lift_term(l, unit)), Box::new(lift_term(r, unit)))
        }
    }
}

/// The I-/J-lifting of a `KRel` inequality produced by [`correspondent_shaped`].
///
/// On every lifted frame the resulting `PRel` inequality interprets each side
/// as the `I`/`J`-retyping of the complement of the opposite `KRel` side, so
/// the sides swap. Terms outside the correspondent image fail with
/// [`LiftError::NotLiftable`].
pub fn lift(k: &TermInequality) -> Result<TermInequality, LiftError> {
    let (lhs, rhs) = match k {
        TermInequality::KRel { lhs, rhs } => (lhs, rhs),
        TermInequality::PRel { .. } => {
            return Err(LiftError::NotLiftable("input is already a PRel inequality".into()))
        }
    };
    // A J-lifting targets sort XA (diamond-type symbols), an I-lifting AX.
    // Correspondent images are homogeneous, so the first symbol decides.
    let first = lhs.first_symbol().or_else(|| rhs.first_symbol());
    let (unit, want) = match first {
        Some(s) if s.kind.is_dia_type() => (PRelTerm::J, Sort::XA),
        Some(_) => (PRelTerm::I, Sort::AX),
        None => (PRelTerm::J, Sort::XA),
    };
    let new_lhs = lift_term(rhs, &unit);
    let new_rhs = lift_term(lhs, &unit);
    for side in [&new_lhs, &new_rhs] {
        match side.sort() {
            Ok(s) if s == want => {}
            Ok(s) => {
                return Err(LiftError::NotLiftable(format!(
                    "lifted term has sort {s}, expected {want}"
                )))
            }
            Err(e) => return Err(LiftError::NotLiftable(e.to_string())),
        }
    }
    Ok(TermInequality::PRel { lhs: new_lhs, rhs: new_rhs })
}
