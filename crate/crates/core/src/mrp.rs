//! Modal reduction principles: surface syntax, shape classification, adjoint
//! chains and ALBA outputs.
//!
//! The surface grammar is
//!
//! ```text
//! ineq  := chain "<=" chain
//! chain := { modal } var
//! modal := ("box" | "dia") [ digits ]
//! var   := "p"
//! ```
//!
//! Omitted digits default to index 1. The printer additionally emits `bbox`
//! (■, right adjoint of `dia`) and `bdia` (⧫, left adjoint of `box`) in
//! generated formulas. Inputs using `and`, `or`, `top`, `bot`, a second
//! variable or an adjoint token still parse lexically but are rejected by the
//! MRP gate with [`ParseError::NotAnMrp`].

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{ParseError, ShapeError};

/// Kind of a unary modality token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModKind {
    /// `box` (□), interpreted by a relation of box type.
    Box,
    /// `dia` (◇), interpreted by a relation of diamond type.
    Dia,
    /// `bbox` (■), the right adjoint of ◇; box type, interpreted as the
    /// converse of the diamond relation with the same index.
    BlackBox,
    /// `bdia` (⧫), the left adjoint of □; diamond type, interpreted as the
    /// converse of the box relation with the same index.
    BlackDia,
}

impl ModKind {
    /// Box-type connectives (members of the `G*` family).
    pub fn is_box_type(self) -> bool {
        matches!(self, ModKind::Box | ModKind::BlackBox)
    }

    /// Diamond-type connectives (members of the `F*` family).
    pub fn is_dia_type(self) -> bool {
        matches!(self, ModKind::Dia | ModKind::BlackDia)
    }

    /// True for `box`/`dia`, false for the adjoint kinds.
    pub fn is_primitive(self) -> bool {
        matches!(self, ModKind::Box | ModKind::Dia)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ModKind::Box => "box",
            ModKind::Dia => "dia",
            ModKind::BlackBox => "bbox",
            ModKind::BlackDia => "bdia",
        }
    }
}

/// One modality token, e.g. `box2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModToken {
    pub kind: ModKind,
    pub index: u32,
}

impl ModToken {
    pub fn new(kind: ModKind, index: u32) -> Self {
        ModToken { kind, index }
    }
}

impl fmt::Display for ModToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 1 {
            write!(f, "{}", self.kind.keyword())
        } else {
            write!(f, "{}{}", self.kind.keyword(), self.index)
        }
    }
}

/// A chain of modality tokens applied left-to-right from the root down to the
/// variable: `[◇,□]` denotes ◇□p. The empty chain is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalChain(pub Vec<ModToken>);

impl ModalChain {
    pub fn empty() -> Self {
        ModalChain(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn tokens(&self) -> &[ModToken] {
        &self.0
    }

    /// Concatenation `self` then `tail`: `self[tail(p)/p]`.
    pub fn then(&self, tail: &ModalChain) -> ModalChain {
        let mut v = self.0.clone();
        v.extend_from_slice(&tail.0);
        ModalChain(v)
    }

    pub fn contains_adjoints(&self) -> bool {
        self.0.iter().any(|t| !t.kind.is_primitive())
    }

    /// Tokens rendered as a space-separated string without the variable,
    /// e.g. `"dia box"`. Empty chain renders as `""`.
    pub fn tokens_string(&self) -> String {
        self.0
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Formula rendering over a variable, e.g. `"dia box p"`.
    pub fn applied_to(&self, var: char) -> String {
        if self.0.is_empty() {
            var.to_string()
        } else {
            format!("{} {}", self.tokens_string(), var)
        }
    }
}

/// The modal signature: which diamond and box indices exist. Every primitive
/// index also names a derived adjoint symbol (⧫i for □i, ■i for ◇i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub diamonds: BTreeSet<u32>,
    pub boxes: BTreeSet<u32>,
}

impl Signature {
    pub fn new(diamonds: impl IntoIterator<Item = u32>, boxes: impl IntoIterator<Item = u32>) -> Self {
        Signature {
            diamonds: diamonds.into_iter().collect(),
            boxes: boxes.into_iter().collect(),
        }
    }

    /// The single-index signature `{◇1, □1}` used throughout the worked examples.
    pub fn mono() -> Self {
        Signature::new([1], [1])
    }

    /// Does the signature provide an interpretation for this token? Adjoint
    /// tokens are resolved through their primitive of the same index.
    pub fn contains(&self, tok: ModToken) -> bool {
        match tok.kind {
            ModKind::Dia => self.diamonds.contains(&tok.index),
            ModKind::Box => self.boxes.contains(&tok.index),
            // ■i is the adjoint of ◇i, ⧫i the adjoint of □i.
            ModKind::BlackBox => self.diamonds.contains(&tok.index),
            ModKind::BlackDia => self.boxes.contains(&tok.index),
        }
    }
}

/// A parsed modal reduction principle `lhs(p) <= rhs(p)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mrp {
    pub lhs: ModalChain,
    pub rhs: ModalChain,
    pub var: char,
}

impl Mrp {
    pub fn new(lhs: ModalChain, rhs: ModalChain) -> Self {
        Mrp { lhs, rhs, var: 'p' }
    }

    /// Normalized surface rendering: one space between tokens, lowercase
    /// keywords, index suffix omitted when it is 1.
    pub fn print(&self) -> String {
        format!("{} <= {}", self.lhs.applied_to(self.var), self.rhs.applied_to(self.var))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lhs": self.lhs.applied_to(self.var),
            "rhs": self.rhs.applied_to(self.var),
        })
    }

    /// Indices of modalities occurring in the inequality, split by kind.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new([], []);
        for tok in self.lhs.tokens().iter().chain(self.rhs.tokens()) {
            match tok.kind {
                ModKind::Dia | ModKind::BlackBox => sig.diamonds.insert(tok.index),
                ModKind::Box | ModKind::BlackDia => sig.boxes.insert(tok.index),
            };
        }
        sig
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Modal(ModToken),
    Var(char),
    Top,
    Bot,
    And,
    Or,
    Leq,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push((start, Tok::Leq));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: "expected '<='".into(),
                    });
                }
            }
            'a'..='z' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_lowercase() {
                    j += 1;
                }
                let word = &text[i..j];
                let mut k = j;
                while k < bytes.len() && (bytes[k] as char).is_ascii_digit() {
                    k += 1;
                }
                let digits = &text[j..k];
                let index = if digits.is_empty() {
                    1
                } else {
                    digits.parse::<u32>().map_err(|_| ParseError::Syntax {
                        pos: j,
                        msg: format!("bad modality index {digits:?}"),
                    })?
                };
                let kind = match word {
                    "box" => Some(ModKind::Box),
                    "dia" => Some(ModKind::Dia),
                    "bbox" => Some(ModKind::BlackBox),
                    "bdia" => Some(ModKind::BlackDia),
                    _ => None,
                };
                if let Some(kind) = kind {
                    out.push((start, Tok::Modal(ModToken::new(kind, index))));
                    i = k;
                } else if !digits.is_empty() {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: format!("unexpected token {:?}", &text[i..k]),
                    });
                } else {
                    match word {
                        "and" => out.push((start, Tok::And)),
                        "or" => out.push((start, Tok::Or)),
                        "top" => out.push((start, Tok::Top)),
                        "bot" => out.push((start, Tok::Bot)),
                        w if w.len() == 1 => out.push((start, Tok::Var(w.chars().next().unwrap()))),
                        w => {
                            return Err(ParseError::Syntax {
                                pos: start,
                                msg: format!("unexpected token {w:?}"),
                            })
                        }
                    }
                    i = j;
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

/// LE-term AST used only by the MRP gate: it lets us tell a syntax error apart
/// from a well-formed non-MRP inequality.
#[derive(Debug, Clone)]
enum LeTerm {
    Var(char),
    Top,
    Bot,
    Modal(ModToken, Box<LeTerm>),
    And(Box<LeTerm>, Box<LeTerm>),
    Or(Box<LeTerm>, Box<LeTerm>),
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn term(&mut self) -> Result<LeTerm, ParseError> {
        match self.peek() {
            Some(Tok::Modal(tok)) => {
                let tok = *tok;
                self.bump();
                Ok(LeTerm::Modal(tok, Box::new(self.term()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<LeTerm, ParseError> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Var(v)) => Ok(LeTerm::Var(v)),
            Some(Tok::Top) => Ok(LeTerm::Top),
            Some(Tok::Bot) => Ok(LeTerm::Bot),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: self.offset(),
                        msg: "expected ')'".into(),
                    }),
                }
            }
            _ => Err(ParseError::Syntax {
                pos: off,
                msg: "expected a variable, 'top', 'bot', a modality or '('".into(),
            }),
        }
    }

    fn expr(&mut self) -> Result<LeTerm, ParseError> {
        let mut left = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::And) => {
                    self.bump();
                    let right = self.term()?;
                    left = LeTerm::And(Box::new(left), Box::new(right));
                }
                Some(Tok::Or) => {
                    self.bump();
                    let right = self.term()?;
                    left = LeTerm::Or(Box::new(left), Box::new(right));
                }
                _ => return Ok(left),
            }
        }
    }
}

/// Validate that a parsed LE-term is a plain modal chain over one variable and
/// flatten it. Rejections carry the reason used by [`ParseError::NotAnMrp`].
fn chain_of_term(t: &LeTerm, var: &mut Option<char>) -> Result<ModalChain, String> {
    let mut toks = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            LeTerm::Modal(tok, inner) => {
                toks.push(*tok);
                cur = inner;
            }
            LeTerm::Var(v) => {
                match var {
                    Some(w) if w != v => {
                        return Err(format!("uses a second variable {v:?} besides {w:?}"))
                    }
                    Some(_) => {}
                    None => *var = Some(*v),
                }
                return Ok(ModalChain(toks));
            }
            LeTerm::Top => return Err("uses the constant top".into()),
            LeTerm::Bot => return Err("uses the constant bot".into()),
            LeTerm::And(_, _) => return Err("uses the connective and".into()),
            LeTerm::Or(_, _) => return Err("uses the connective or".into()),
        }
    }
}

fn parse_gated(text: &str, sig: Option<&Signature>) -> Result<Mrp, ParseError> {
    let toks = lex(text)?;
    let split = toks
        .iter()
        .position(|(_, t)| *t == Tok::Leq)
        .ok_or_else(|| ParseError::Syntax {
            pos: text.len(),
            msg: "expected '<='".into(),
        })?;
    let end = text.len();
    let mut left = Parser { toks: &toks[..split], pos: 0, end };
    let lt = left.expr()?;
    if left.pos != split {
        return Err(ParseError::Syntax {
            pos: left.offset(),
            msg: "trailing tokens before '<='".into(),
        });
    }
    let mut right = Parser { toks: &toks[split + 1..], pos: 0, end };
    let rt = right.expr()?;
    if right.pos != toks.len() - split - 1 {
        return Err(ParseError::Syntax {
            pos: right.offset(),
            msg: "trailing tokens after the inequality".into(),
        });
    }

    let mut var = None;
    let lhs = chain_of_term(&lt, &mut var).map_err(|reason| ParseError::NotAnMrp { reason })?;
    let rhs = chain_of_term(&rt, &mut var).map_err(|reason| ParseError::NotAnMrp { reason })?;
    if lhs.contains_adjoints() || rhs.contains_adjoints() {
        return Err(ParseError::NotAnMrp {
            reason: "adjoint modalities (bbox/bdia) are not primitive".into(),
        });
    }
    if let Some(sig) = sig {
        for tok in lhs.tokens().iter().chain(rhs.tokens()) {
            if !sig.contains(*tok) {
                return Err(ParseError::Syntax {
                    pos: 0,
                    msg: format!("modality {tok} is not in the signature"),
                });
            }
        }
    }
    Ok(Mrp {
        lhs,
        rhs,
        var: var.unwrap_or('p'),
    })
}

/// Parse an inequality against a signature. The error distinguishes malformed
/// input (`Syntax`) from well-formed non-MRP inequalities (`NotAnMrp`).
pub fn parse_inequality(text: &str, sig: &Signature) -> Result<Mrp, ParseError> {
    parse_gated(text, Some(sig))
}

/// Parse with the signature inferred from the formula itself.
pub fn parse(text: &str) -> Result<Mrp, ParseError> {
    parse_gated(text, None)
}

// ---------------------------------------------------------------------------
// Shape classification
// ---------------------------------------------------------------------------

/// Which of the two inductive shapes a decomposition follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeTag {
    ShapeA,
    ShapeB,
    Analytic,
    NotInductive,
}

impl ShapeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ShapeTag::ShapeA => "shape-a",
            ShapeTag::ShapeB => "shape-b",
            ShapeTag::Analytic => "analytic",
            ShapeTag::NotInductive => "not-inductive",
        }
    }
}

/// Shape-(a) decomposition `phi[alpha(p)] <= psi[chi(p)]`: `phi` all diamonds,
/// `alpha` all boxes, `psi` all boxes, `chi` either `p` or diamond-initial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompA {
    pub phi: ModalChain,
    pub alpha: ModalChain,
    pub psi: ModalChain,
    pub chi: ModalChain,
}

/// Shape-(b) decomposition `phi[zeta(p)] <= psi[delta(p)]`: `phi` all diamonds,
/// `zeta` either `p` or box-initial, `psi` all boxes, `delta` all diamonds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompB {
    pub phi: ModalChain,
    pub zeta: ModalChain,
    pub psi: ModalChain,
    pub delta: ModalChain,
}

/// Result of classifying an MRP. For `Analytic` both decompositions are
/// populated; for `NotInductive` neither is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeDecomposition {
    pub tag: ShapeTag,
    pub a: Option<DecompA>,
    pub b: Option<DecompB>,
    pub mrp: Mrp,
}

/// Longest prefix of diamond tokens; returns (prefix, rest).
fn split_dia_prefix(c: &ModalChain) -> (ModalChain, ModalChain) {
    let n = c.0.iter().take_while(|t| t.kind.is_dia_type()).count();
    (ModalChain(c.0[..n].to_vec()), ModalChain(c.0[n..].to_vec()))
}

fn split_box_prefix(c: &ModalChain) -> (ModalChain, ModalChain) {
    let n = c.0.iter().take_while(|t| t.kind.is_box_type()).count();
    (ModalChain(c.0[..n].to_vec()), ModalChain(c.0[n..].to_vec()))
}

fn all_box(c: &ModalChain) -> bool {
    c.0.iter().all(|t| t.kind.is_box_type())
}

fn all_dia(c: &ModalChain) -> bool {
    c.0.iter().all(|t| t.kind.is_dia_type())
}

/// Classify an MRP into its inductive shape(s). Total: non-inductive inputs
/// get the `NotInductive` tag rather than an error.
///
/// The decomposition is deterministic: `phi` is the maximal diamond prefix of
/// the left side and `psi` the maximal box prefix of the right side, which is
/// the unique split satisfying the shape conditions.
pub fn classify(m: &Mrp) -> ShapeDecomposition {
    // Shape (a): lhs in ◇*□*p; chi (the rest of rhs after its box prefix) is
    // then automatically either p or diamond-initial.
    let (phi_l, rest_l) = split_dia_prefix(&m.lhs);
    let (psi_r, rest_r) = split_box_prefix(&m.rhs);
    let a = all_box(&rest_l).then(|| DecompA {
        phi: phi_l.clone(),
        alpha: rest_l.clone(),
        psi: psi_r.clone(),
        chi: rest_r.clone(),
    });
    // Shape (b): rhs in □*◇*p; zeta is then either p or box-initial.
    let b = all_dia(&rest_r).then(|| DecompB {
        phi: phi_l,
        zeta: rest_l,
        psi: psi_r,
        delta: rest_r,
    });
    let tag = match (&a, &b) {
        (Some(_), Some(_)) => ShapeTag::Analytic,
        (Some(_), None) => ShapeTag::ShapeA,
        (None, Some(_)) => ShapeTag::ShapeB,
        (None, None) => ShapeTag::NotInductive,
    };
    ShapeDecomposition { tag, a, b, mrp: m.clone() }
}

impl ShapeDecomposition {
    /// Shapes available for this decomposition, in the order (a) then (b).
    pub fn shapes(&self) -> Vec<Shape> {
        let mut v = Vec::new();
        if self.a.is_some() {
            v.push(Shape::A);
        }
        if self.b.is_some() {
            v.push(Shape::B);
        }
        v
    }

    /// The shape used when the caller does not pick one: (b) when available,
    /// else (a).
    pub fn default_shape(&self) -> Option<Shape> {
        if self.b.is_some() {
            Some(Shape::B)
        } else if self.a.is_some() {
            Some(Shape::A)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        let chain = |c: &Option<ModalChain>| -> Value {
            match c {
                Some(c) => Value::String(c.tokens_string()),
                None => Value::Null,
            }
        };
        json!({
            "lhs": self.mrp.lhs.applied_to(self.mrp.var),
            "rhs": self.mrp.rhs.applied_to(self.mrp.var),
            "shape": self.tag.as_str(),
            "phi": chain(&self.a.as_ref().map(|d| d.phi.clone()).or_else(|| self.b.as_ref().map(|d| d.phi.clone()))),
            "alpha": chain(&self.a.as_ref().map(|d| d.alpha.clone())),
            "psi": chain(&self.a.as_ref().map(|d| d.psi.clone()).or_else(|| self.b.as_ref().map(|d| d.psi.clone()))),
            "chi": chain(&self.a.as_ref().map(|d| d.chi.clone())),
            "zeta": chain(&self.b.as_ref().map(|d| d.zeta.clone())),
            "delta": chain(&self.b.as_ref().map(|d| d.delta.clone())),
        })
    }
}

// ---------------------------------------------------------------------------
// Adjoints and ALBA outputs
// ---------------------------------------------------------------------------

/// Left adjoint of a pure box chain: reverse the chain and replace each □i
/// with ⧫i. `LA(□_{i_1}···□_{i_n}) = ⧫_{i_n}···⧫_{i_1}`.
pub fn left_adjoint(psi: &ModalChain) -> Result<ModalChain, ShapeError> {
    let mut out = Vec::with_capacity(psi.len());
    for t in psi.tokens().iter().rev() {
        if t.kind != ModKind::Box {
            return Err(ShapeError::InvalidChain(format!(
                "left adjoint is defined on box chains, found {t}"
            )));
        }
        out.push(ModToken::new(ModKind::BlackDia, t.index));
    }
    Ok(ModalChain(out))
}

/// Right adjoint of a pure diamond chain: reverse and replace each ◇i with ■i.
pub fn right_adjoint(phi: &ModalChain) -> Result<ModalChain, ShapeError> {
    let mut out = Vec::with_capacity(phi.len());
    for t in phi.tokens().iter().rev() {
        if t.kind != ModKind::Dia {
            return Err(ShapeError::InvalidChain(format!(
                "right adjoint is defined on diamond chains, found {t}"
            )));
        }
        out.push(ModToken::new(ModKind::BlackBox, t.index));
    }
    Ok(ModalChain(out))
}

/// Which generators a pure-inequality variable ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    /// `∀j` over join-generators (nominals).
    Nominal,
    /// `∀m` over meet-generators (conominals).
    Conominal,
}

/// The final pure inequality of a successful ALBA run: two chains in the
/// expanded language over a single nominal or conominal placeholder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureInequality {
    pub quantifier: Quantifier,
    pub lhs: ModalChain,
    pub rhs: ModalChain,
}

impl PureInequality {
    pub fn print(&self) -> String {
        let (q, v) = match self.quantifier {
            Quantifier::Nominal => ("forall j", 'j'),
            Quantifier::Conominal => ("forall m", 'm'),
        };
        format!("{} ( {} <= {} )", q, self.lhs.applied_to(v), self.rhs.applied_to(v))
    }
}

/// ALBA output for a chosen shape.
///
/// Shape (a): `∀j ( LA(psi)[phi[j]] <= chi[LA(alpha)[j]/p] )`.
/// Shape (b): `∀m ( zeta[RA(delta)[m]/p] <= RA(phi)[psi[m]] )`.
pub fn alba_output_shaped(d: &ShapeDecomposition, shape: Shape) -> Result<PureInequality, ShapeError> {
    if d.tag == ShapeTag::NotInductive {
        return Err(ShapeError::NotInductiveInput);
    }
    match shape {
        Shape::A => {
            let a = d.a.as_ref().ok_or(ShapeError::ShapeUnavailable('a'))?;
            let la_psi = left_adjoint(&a.psi)?;
            let la_alpha = left_adjoint(&a.alpha)?;
            Ok(PureInequality {
                quantifier: Quantifier::Nominal,
                lhs: la_psi.then(&a.phi),
                rhs: a.chi.then(&la_alpha),
            })
        }
        Shape::B => {
            let b = d.b.as_ref().ok_or(ShapeError::ShapeUnavailable('b'))?;
            let ra_phi = right_adjoint(&b.phi)?;
            let ra_delta = right_adjoint(&b.delta)?;
            Ok(PureInequality {
                quantifier: Quantifier::Conominal,
                lhs: b.zeta.then(&ra_delta),
                rhs: ra_phi.then(&b.psi),
            })
        }
    }
}

/// ALBA output using the default shape choice ((b) when available).
pub fn alba_output(d: &ShapeDecomposition) -> Result<PureInequality, ShapeError> {
    let shape = d.default_shape().ok_or(ShapeError::NotInductiveInput)?;
    alba_output_shaped(d, shape)
}
