use std::collections::{HashMap, VecDeque};

use super::{format_label, step, SpiState};
use crate::alphabet::Seed;
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};

/// Automaton for a family of seeds. A live state is `<X_1,…,X_k,t>` with one
/// prefix set per seed and a shared run counter; it turns final as soon as
/// any seed completes.
pub fn build_multi(seeds: &[Seed]) -> Result<Dfa> {
    let first = seeds.first().ok_or(Error::NoSeeds)?;
    if seeds.iter().any(|s| !s.same_alphabet(first)) {
        return Err(Error::MixedAlphabets);
    }
    let k = first.n_letters();
    let refs: Vec<&Seed> = seeds.iter().collect();

    // `None` is the merged final state
    type Key = Option<(Vec<u64>, usize)>;
    let mut ids: HashMap<Key, StateId> = HashMap::new();
    let mut states: Vec<Key> = Vec::new();
    let mut table: Vec<StateId> = Vec::new();
    let mut queue: VecDeque<StateId> = VecDeque::new();

    let mut intern = |key: Key, states: &mut Vec<Key>, queue: &mut VecDeque<StateId>| {
        if let Some(&id) = ids.get(&key) {
            return id;
        }
        let id = states.len() as StateId;
        ids.insert(key.clone(), id);
        states.push(key);
        queue.push_back(id);
        id
    };

    intern(Some((vec![0; seeds.len()], 0)), &mut states, &mut queue);
    while let Some(id) = queue.pop_front() {
        table.resize((id as usize + 1) * k, 0);
        let current = states[id as usize].clone();
        for a in 0..k {
            let next = match &current {
                None => None,
                Some((sets, t)) => advance(&refs, sets, *t, a),
            };
            table[id as usize * k + a] = intern(next, &mut states, &mut queue);
        }
    }

    let finals = states.iter().map(Option::is_none).collect();
    let labels = states
        .iter()
        .map(|key| match key {
            None => "<>".to_string(),
            Some((sets, t)) => format_label(&refs, sets, *t),
        })
        .collect();
    Ok(Dfa::new(k, 0, finals, table, Some(labels))?.canonical())
}

fn advance(seeds: &[&Seed], sets: &[u64], t: usize, a: usize) -> Option<(Vec<u64>, usize)> {
    let mut next = Vec::with_capacity(sets.len());
    let mut next_t = 0;
    for (seed, &x) in seeds.iter().zip(sets) {
        match step(seed, x, t, a) {
            SpiState::Final => return None,
            SpiState::Live { x_set, t } => {
                next.push(x_set);
                next_t = t;
            }
        }
    }
    Some((next, next_t))
}
