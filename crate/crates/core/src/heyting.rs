//! Finite complete Heyting algebras used as truth-value parameters for the
//! many-valued semantics.
//!
//! An algebra is built from a named poset given by cover pairs; construction
//! validates that the order is a distributive lattice (finite distributive
//! lattices are automatically Heyting and frame-distributive) and precomputes
//! meet, join and residual tables.

use crate::error::AlgebraError;

/// Index of an algebra element. Algebras stay tiny, so tables are dense.
pub type Elem = u8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytingAlgebra {
    pub name: String,
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<Elem>>,
    join: Vec<Vec<Elem>>,
    imp: Vec<Vec<Elem>>,
    bot: Elem,
    top: Elem,
}

impl HeytingAlgebra {
    /// Build from element names and a cover relation (`a < b` immediate).
    pub fn from_poset(
        name: &str,
        elements: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<HeytingAlgebra, AlgebraError> {
        let n = elements.len();
        if n == 0 || n > Elem::MAX as usize {
            return Err(AlgebraError::BadDescription(format!(
                "algebra must have between 1 and {} elements",
                Elem::MAX
            )));
        }
        let idx = |s: &str| -> Result<usize, AlgebraError> {
            elements
                .iter()
                .position(|e| *e == s)
                .ok_or_else(|| AlgebraError::BadDescription(format!("unknown element {s:?}")))
        };
        // Reflexive-transitive closure of the cover relation.
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let (a, b) = (idx(a)?, idx(b)?);
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(AlgebraError::BadDescription(format!(
                        "cycle between {:?} and {:?}",
                        elements[i], elements[j]
                    )));
                }
            }
        }

        // Meets and joins must exist and be unique.
        let glb = |a: usize, b: usize| -> Option<usize> {
            let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
            lower
                .iter()
                .copied()
                .find(|&c| lower.iter().all(|&d| leq[d][c]))
        };
        let lub = |a: usize, b: usize| -> Option<usize> {
            let upper: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
            upper
                .iter()
                .copied()
                .find(|&c| upper.iter().all(|&d| leq[c][d]))
        };
        let mut meet = vec![vec![0 as Elem; n]; n];
        let mut join = vec![vec![0 as Elem; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = glb(a, b).ok_or_else(|| {
                    AlgebraError::NotALattice(format!(
                        "no meet of {:?} and {:?}",
                        elements[a], elements[b]
                    ))
                })? as Elem;
                join[a][b] = lub(a, b).ok_or_else(|| {
                    AlgebraError::NotALattice(format!(
                        "no join of {:?} and {:?}",
                        elements[a], elements[b]
                    ))
                })? as Elem;
            }
        }
        let bot = (0..n)
            .find(|&c| (0..n).all(|d| leq[c][d]))
            .ok_or_else(|| AlgebraError::NotALattice("no bottom element".into()))? as Elem;
        let top = (0..n)
            .find(|&c| (0..n).all(|d| leq[d][c]))
            .ok_or_else(|| AlgebraError::NotALattice("no top element".into()))? as Elem;

        // Exhaustive distributivity check.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = meet[a][join[b][c] as usize];
                    let r = join[meet[a][b] as usize][meet[a][c] as usize];
                    if l != r {
                        return Err(AlgebraError::NotDistributive(
                            elements[a].into(),
                            elements[b].into(),
                            elements[c].into(),
                        ));
                    }
                }
            }
        }

        // Residual a→b = max{c | a∧c ≤ b}; in a finite distributive lattice
        // the join of that set is itself a member.
        let mut imp = vec![vec![0 as Elem; n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut best = bot as usize;
                for c in 0..n {
                    if leq[meet[a][c] as usize][b] {
                        best = join[best][c] as usize;
                    }
                }
                if !leq[meet[a][best] as usize][b] {
                    return Err(AlgebraError::NotALattice(format!(
                        "residual {:?} -> {:?} does not exist",
                        elements[a], elements[b]
                    )));
                }
                imp[a][b] = best as Elem;
            }
        }

        Ok(HeytingAlgebra {
            name: name.to_string(),
            names: elements.iter().map(|s| s.to_string()).collect(),
            leq,
            meet,
            join,
            imp,
            bot,
            top,
        })
    }

    /// Canned algebras: `bool2`, `chain3`, `chain4`, `square4` (the 2×2
    /// Boolean algebra).
    pub fn builtin(name: &str) -> Result<HeytingAlgebra, AlgebraError> {
        match name {
            "bool2" => HeytingAlgebra::from_poset("bool2", &["0", "1"], &[("0", "1")]),
            "chain3" => HeytingAlgebra::from_poset("chain3", &["0", "a", "1"], &[("0", "a"), ("a", "1")]),
            "chain4" => HeytingAlgebra::from_poset(
                "chain4",
                &["0", "a", "b", "1"],
                &[("0", "a"), ("a", "b"), ("b", "1")],
            ),
            "square4" => HeytingAlgebra::from_poset(
                "square4",
                &["0", "a", "b", "1"],
                &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            ),
            other => Err(AlgebraError::UnknownName(other.into())),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(|i| i as Elem)
    }

    pub fn name_of(&self, e: Elem) -> &str {
        &self.names[e as usize]
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a as usize][b as usize]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a as usize][b as usize]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a as usize][b as usize]
    }

    /// The residual `a → b`.
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a as usize][b as usize]
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.names.len() as u8).map(|i| i as Elem)
    }
}
