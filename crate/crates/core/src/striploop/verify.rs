//! Independent checks of triangle orders.
//!
//! Only the triangle list is consulted: two triangles are adjacent when
//! they share exactly two vertex ids. Nothing from the pipeline (dual graph,
//! matching, edge map) is trusted.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderViolation {
    Empty,
    WrongLength { expected: usize, found: usize },
    OutOfRange { position: usize, triangle: usize },
    Duplicate { triangle: usize, first: usize, second: usize },
    Missing { triangle: usize },
    NotAdjacent { position: usize, a: usize, b: usize },
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderViolation::Empty => write!(f, "order is empty"),
            OrderViolation::WrongLength { expected, found } => {
                write!(f, "order lists {found} triangles, mesh has {expected}")
            }
            OrderViolation::OutOfRange { position, triangle } => {
                write!(f, "position {position}: triangle {triangle} does not exist")
            }
            OrderViolation::Duplicate { triangle, first, second } => {
                write!(f, "triangle {triangle} appears at positions {first} and {second}")
            }
            OrderViolation::Missing { triangle } => write!(f, "triangle {triangle} is never visited"),
            OrderViolation::NotAdjacent { position, a, b } => {
                write!(f, "position {position}: triangles {a} and {b} do not share an edge")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    pub violation: Option<OrderViolation>,
}

impl Verification {
    fn from(result: Result<(), OrderViolation>) -> Self {
        match result {
            Ok(()) => Verification {
                valid: true,
                violation: None,
            },
            Err(v) => Verification {
                valid: false,
                violation: Some(v),
            },
        }
    }
}

fn shares_edge(a: [usize; 3], b: [usize; 3]) -> bool {
    a.iter().filter(|v| b.contains(v)).count() == 2
}

fn check(triangles: &[[usize; 3]], order: &[usize], cyclic: bool) -> Result<(), OrderViolation> {
    let n = triangles.len();
    if order.is_empty() || n == 0 {
        return Err(OrderViolation::Empty);
    }
    let mut seen = vec![usize::MAX; n];
    for (position, &t) in order.iter().enumerate() {
        if t >= n {
            return Err(OrderViolation::OutOfRange { position, triangle: t });
        }
        if seen[t] != usize::MAX {
            return Err(OrderViolation::Duplicate {
                triangle: t,
                first: seen[t],
                second: position,
            });
        }
        seen[t] = position;
    }
    if let Some(t) = seen.iter().position(|&p| p == usize::MAX) {
        return Err(OrderViolation::Missing { triangle: t });
    }
    if order.len() != n {
        return Err(OrderViolation::WrongLength {
            expected: n,
            found: order.len(),
        });
    }
    let steps = if cyclic && n > 1 { n } else { n - 1 };
    for position in 0..steps {
        let (a, b) = (order[position], order[(position + 1) % n]);
        if !shares_edge(triangles[a], triangles[b]) {
            return Err(OrderViolation::NotAdjacent { position, a, b });
        }
    }
    Ok(())
}

/// Exact-once coverage and cyclic edge adjacency, wrap-around included.
pub fn verify_cycle(triangles: &[[usize; 3]], order: &[usize]) -> Verification {
    Verification::from(check(triangles, order, true))
}

/// Exact-once coverage and edge adjacency between consecutive entries.
pub fn verify_strip(triangles: &[[usize; 3]], order: &[usize]) -> Verification {
    Verification::from(check(triangles, order, false))
}
