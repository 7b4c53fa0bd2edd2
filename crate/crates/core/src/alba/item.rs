use std::fmt;

use crate::semantics::{Ineq, Mega, Statement, UqIneq};
use crate::syntax::{EdgeLabelSet, Formula};

/// Which side of an item's head still carries connectives to decompose.
/// The working side is read with sign `+` on the right and `−` on the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    /// Pure and free of contextual connectives; no further reduction.
    Parked,
}

/// `∀from ∀to (from ≤^label_label ◇^label to ⇒ …)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Guard {
    pub from: String,
    pub to: String,
    pub label: EdgeLabelSet,
}

impl Guard {
    /// `A(from → ◇^label to)`.
    pub fn as_global(&self) -> Formula {
        Formula::gbox(Formula::imp(
            Formula::Nom(self.from.clone()),
            Formula::ldia(self.label.clone(), Formula::Nom(self.to.clone())),
        ))
    }
}

/// A member of an ALBA system: an inequality head under zero or more edge
/// guards, optionally universally quantified once packed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Item {
    pub binders: Vec<String>,
    pub guards: Vec<Guard>,
    pub head: Ineq,
    pub side: Side,
}

pub(crate) fn is_plain_pure(f: &Formula) -> bool {
    f.is_pure() && f.is_context_free()
}

impl Item {
    /// An unguarded item; parked automatically when nothing is left to
    /// decompose.
    pub fn new(head: Ineq, side: Side) -> Item {
        Item::guarded(Vec::new(), head, side)
    }

    pub fn guarded(guards: Vec<Guard>, head: Ineq, side: Side) -> Item {
        let side = if is_plain_pure(&head.lhs) && is_plain_pure(&head.rhs) { Side::Parked } else { side };
        Item { binders: Vec::new(), guards, head, side }
    }

    pub fn quantified(binders: Vec<String>, head: Ineq) -> Item {
        Item { binders, guards: Vec::new(), head, side: Side::Parked }
    }

    pub fn working(&self) -> Option<&Formula> {
        match self.side {
            Side::Left => Some(&self.head.lhs),
            Side::Right => Some(&self.head.rhs),
            Side::Parked => None,
        }
    }

    /// The side opposite the working side (the left one for parked items).
    pub fn other(&self) -> &Formula {
        match self.side {
            Side::Left => &self.head.rhs,
            Side::Right | Side::Parked => &self.head.lhs,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.head.is_pure()
    }

    pub fn statement(&self) -> Statement {
        if !self.guards.is_empty() {
            let body = self.guards.iter().rev().fold(Mega::Leaf(self.head.clone()), |acc, g| {
                Mega::guarded(&g.from, &g.to, g.label.clone(), acc)
            });
            Statement::Mega(body)
        } else if !self.binders.is_empty() {
            Statement::UqIneq(UqIneq::new(self.binders.clone(), self.head.clone()))
        } else {
            Statement::Ineq(self.head.clone())
        }
    }

    pub fn as_uq(&self) -> UqIneq {
        UqIneq::new(self.binders.clone(), self.head.clone())
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.statement().fmt(f)
    }
}
