//! Voltage assignments on pregraph darts and their text format.

use std::fmt::Write as _;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::pregraph::{Pregraph, SpanningTree};

const UNSET: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VoltageError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dart {dart} out of range ({darts} darts)")]
    DartOutOfRange { dart: usize, darts: usize },
    #[error("element {element} out of range for group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("semi-edge dart {dart} needs a self-inverse voltage, got {element}")]
    NotSelfInverse { dart: usize, element: usize },
    #[error("dart {dart} assigned twice with inconsistent voltages")]
    Conflict { dart: usize },
}

/// Partial map from darts to group elements, kept consistent with the dart
/// involution: setting `d` also sets `d^{-1}` to the inverse element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VoltageAssignment {
    volt: Vec<u32>,
}

impl VoltageAssignment {
    pub fn unassigned(g: &Pregraph) -> Self {
        VoltageAssignment { volt: vec![UNSET; g.darts().len()] }
    }

    /// Every dart carries the identity.
    pub fn zero(g: &Pregraph) -> Self {
        VoltageAssignment { volt: vec![0; g.darts().len()] }
    }

    #[inline]
    pub fn get(&self, d: usize) -> Option<usize> {
        let v = self.volt[d];
        (v != UNSET).then_some(v as usize)
    }

    #[inline]
    pub fn set(&mut self, g: &Pregraph, group: &FiniteGroup, d: usize, a: usize) {
        self.volt[d] = a as u32;
        self.volt[g.dart(d).inverse] = group.inv(a) as u32;
    }

    pub fn clear(&mut self, g: &Pregraph, d: usize) {
        self.volt[d] = UNSET;
        self.volt[g.dart(d).inverse] = UNSET;
    }

    pub fn is_total(&self) -> bool {
        !self.volt.contains(&UNSET)
    }

    pub fn len(&self) -> usize {
        self.volt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.volt.is_empty()
    }

    /// Voltages on the listed darts.
    pub fn on(&self, darts: &[usize]) -> Vec<Option<usize>> {
        darts.iter().map(|&d| self.get(d)).collect()
    }

    /// Appends room for darts added to the pregraph after this assignment
    /// was made; new darts start unassigned.
    pub fn grow_to(&mut self, g: &Pregraph) {
        self.volt.resize(g.darts().len(), UNSET);
    }

    /// Parses `volt <pregraph-id> <group-name>` followed by `dart <i> <a>`
    /// lines. Darts not mentioned (directly or through their inverse) carry
    /// the identity. Returns the assignment and the header's pregraph id.
    pub fn parse(text: &str, g: &Pregraph, group: &FiniteGroup) -> Result<(Self, String), VoltageError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(VoltageError::Parse { line: 1, msg: "empty input".into() })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let id = match parts.as_slice() {
            ["volt", id, _group] => id.to_string(),
            _ => return Err(VoltageError::Parse { line: hline, msg: "expected `volt <pregraph-id> <group-name>`".into() }),
        };
        let darts = g.darts().len();
        let mut volt = vec![UNSET; darts];
        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let (d, a) = match parts.as_slice() {
                ["dart", d, a] => match (d.parse::<usize>(), a.parse::<usize>()) {
                    (Ok(d), Ok(a)) => (d, a),
                    _ => return Err(VoltageError::Parse { line, msg: "non-integer dart or element".into() }),
                },
                _ => return Err(VoltageError::Parse { line, msg: "expected `dart <index> <element>`".into() }),
            };
            if d >= darts {
                return Err(VoltageError::DartOutOfRange { dart: d, darts });
            }
            if a >= group.order() {
                return Err(VoltageError::ElementOutOfRange { element: a, order: group.order() });
            }
            let inv = g.dart(d).inverse;
            let ai = group.inv(a) as u32;
            if (volt[d] != UNSET && volt[d] != a as u32) || (volt[inv] != UNSET && volt[inv] != ai) {
                return Err(VoltageError::Conflict { dart: d });
            }
            if inv == d && ai != a as u32 {
                return Err(VoltageError::NotSelfInverse { dart: d, element: a });
            }
            volt[d] = a as u32;
            volt[inv] = ai;
        }
        for v in &mut volt {
            if *v == UNSET {
                *v = 0;
            }
        }
        Ok((VoltageAssignment { volt }, id))
    }

    /// Lists the forward dart of every edge whose voltage is not the identity.
    pub fn to_text(&self, g: &Pregraph, id: &str, group: &FiniteGroup) -> String {
        let mut s = format!("volt {id} {}\n", group.name());
        for e in 0..g.edges().len() {
            let d = g.edge_dart(e);
            if let Some(a) = self.get(d).filter(|&a| a != 0) {
                writeln!(s, "dart {d} {a}").expect("string write");
            }
        }
        s
    }

    /// Conjugates by net voltages along the tree so that every tree dart
    /// carries the identity; the lift is unchanged up to isomorphism.
    pub fn normalized_to_tree(&self, g: &Pregraph, group: &FiniteGroup, tree: &SpanningTree) -> Self {
        // t[v] solves t[v] = a^{-1} t[u] along each tree dart u -> v.
        let mut t = vec![0usize; g.n()];
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| tree.depth[v]);
        for &v in &order {
            if let Some(d) = tree.parent_dart[v] {
                let u = g.dart(d).tail;
                let a = self.get(d).expect("total assignment");
                t[v] = group.mul(group.inv(a), t[u]);
            }
        }
        let mut out = self.clone();
        for (d, dart) in g.darts().iter().enumerate() {
            let a = self.get(d).expect("total assignment");
            let b = group.mul(group.mul(group.inv(t[dart.tail]), a), t[dart.head]);
            out.volt[d] = b as u32;
        }
        out
    }

    /// Applies a group automorphism to every voltage.
    pub fn mapped(&self, perm: &[u32]) -> Self {
        VoltageAssignment { volt: self.volt.iter().map(|&v| if v == UNSET { UNSET } else { perm[v as usize] }).collect() }
    }

    /// The assignment `d -> self(psi(d))` for a dart permutation `psi`.
    pub fn pulled_back(&self, dart_perm: &[usize]) -> Self {
        VoltageAssignment { volt: dart_perm.iter().map(|&e| self.volt[e]).collect() }
    }
}
