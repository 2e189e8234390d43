//! Trees of simplices, gluing moves and local constructions.

pub mod gluing;
pub mod merge;
pub mod quasi;
pub mod replay;
pub mod tree;
pub mod unfold;

pub use gluing::{admissible_moves, apply_gluing, bijections, check_admissible, threshold, GluingMove};
pub use merge::{merge_schedules, MergeError, RidgeSchedule};
pub use quasi::{check_quasimanifold_conditions, forced_gluings, QuasiViolation, Violation};
pub use replay::{replay, round_partition, LocalConstruction, Replay, Round, RoundError, RoundPartition};
pub use tree::{face_counts, generate_trees, Attachment, FaceCountReport, TreeOfSimplices};
pub use unfold::Unfolding;

use crate::budget::Budget;
use crate::cw::CwComplex;

/// Outcome of trying to order a fixed set of moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    Ordered(Vec<usize>),
    Impossible,
    OutOfBudget,
}

/// Finds an order in which every move is t-admissible at its turn.
///
/// Identifications only coarsen the cell partition, so intersections only
/// grow. When the final state is regular, a move's vertex map agrees with
/// every intersection it will ever have, and applying any move that is
/// admissible now can never block another. Greedy application is therefore
/// exact.
pub fn realize_greedy(start: &CwComplex, moves: &[GluingMove], t: usize, budget: &Budget) -> Realization {
    let need = threshold(start.dim(), t);
    let mut state = start.clone();
    let mut left: Vec<usize> = (0..moves.len()).collect();
    let mut order = Vec::with_capacity(moves.len());
    while !left.is_empty() {
        if budget.exhausted() {
            return Realization::OutOfBudget;
        }
        let mut pick = None;
        let mut best = need - 1;
        for (k, &i) in left.iter().enumerate() {
            let dim = state.intersection_dim(moves[i].a, moves[i].b);
            if dim > best {
                best = dim;
                pick = Some(k);
            }
        }
        let Some(k) = pick else { return Realization::Impossible };
        let i = left.remove(k);
        if check_admissible(&state, &moves[i], t).is_err() {
            return Realization::Impossible;
        }
        match apply_gluing(&state, &moves[i]) {
            Ok(s) => state = s,
            Err(_) => return Realization::Impossible,
        }
        order.push(i);
    }
    Realization::Ordered(order)
}
