use std::collections::{HashMap, VecDeque};

use super::{step, SpiState};
use crate::alphabet::Seed;
use crate::dfa::{Dfa, StateId};

/// Breadth-first construction from `<∅,0>` applying the transition function
/// directly, with states deduplicated through a hash map on `(X, t)`.
pub fn build_naive(seed: &Seed) -> Dfa {
    let k = seed.n_letters();
    let mut ids: HashMap<SpiState, StateId> = HashMap::new();
    let mut states: Vec<SpiState> = Vec::new();
    let mut table: Vec<StateId> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |q: SpiState, states: &mut Vec<SpiState>, queue: &mut VecDeque<StateId>| {
        *ids.entry(q).or_insert_with(|| {
            states.push(q);
            let id = (states.len() - 1) as StateId;
            queue.push_back(id);
            id
        })
    };

    intern(SpiState::INITIAL, &mut states, &mut queue);
    while let Some(id) = queue.pop_front() {
        let q = states[id as usize];
        table.resize((id as usize + 1) * k, 0);
        for a in 0..k {
            let next = match q {
                SpiState::Final => SpiState::Final,
                SpiState::Live { x_set, t } => step(seed, x_set, t, a),
            };
            table[id as usize * k + a] = intern(next, &mut states, &mut queue);
        }
    }

    let finals = states.iter().map(|q| q.is_final()).collect();
    let labels = states.iter().map(|q| q.label(seed)).collect();
    Dfa::new(k, 0, finals, table, Some(labels))
        .expect("naive construction yields a complete automaton")
        .canonical()
}
