//! Breadth-first construction where every transition is derived in constant
//! time from the transition of the failure state.
//!
//! For a live state `q = <X,t>` let `Fail(q) = <X minus its largest prefix, t>`
//! (or `<∅, max(t-1,0)>` when `X` is empty). Fail states are created, and
//! therefore processed, before `q`. For a non-run letter `a`, with
//! `ψ(Fail(q), a) = <Y',0>`, the target is `<Y' ∪ V(k(X),t,a), 0>`, where `V`
//! adds at most one prefix. A target that differs from `<Y',0>` has
//! `Fail = <Y',0>` and, if it already exists, it is the last state created
//! with that failure state (`RevMaxFail`). No hash lookup is needed.

use super::{format_label, max_pos};
use crate::alphabet::Seed;
use crate::dfa::{Dfa, StateId};

const NONE: StateId = StateId::MAX;
const FINAL: StateId = 0;
const INITIAL: StateId = 1;

/// Lookup tables for the non-run letters of one seed.
#[derive(Debug, Clone)]
pub struct PrecomputedTables {
    n_letters: usize,
    span: usize,
    /// `u[t][a]`: prefixes `z_i <= t+1` whose letter matches `a`.
    u: Vec<u64>,
    /// `v[k][t][a]`: the single prefix `z_k + t + 1` if it is non-hash and
    /// matches `a`, as a one-bit mask, else 0.
    v: Vec<u64>,
    /// `z[k]`, with `z[0] = 0`.
    z: Vec<usize>,
}

impl PrecomputedTables {
    pub fn new(seed: &Seed) -> Self {
        let s = seed.span();
        let r = seed.r();
        let n_letters = seed.n_letters();
        let mut index_of = vec![None; s + 1];
        for (i, &z) in seed.r_positions().iter().enumerate() {
            index_of[z] = Some(i);
        }
        let mut z = Vec::with_capacity(r + 1);
        z.push(0);
        z.extend_from_slice(seed.r_positions());

        let prefix_bit = |pos: usize, a: usize| -> u64 {
            match index_of.get(pos).copied().flatten() {
                Some(i) if seed.set_at(pos).contains(a) => 1 << i,
                _ => 0,
            }
        };

        let mut u = vec![0u64; s * n_letters];
        for t in 0..s {
            for a in (0..n_letters).filter(|&a| !seed.is_run_letter(a)) {
                let below = if t == 0 {
                    0
                } else {
                    u[(t - 1) * n_letters + a]
                };
                u[t * n_letters + a] = below | prefix_bit(t + 1, a);
            }
        }

        let mut v = vec![0u64; (r + 1) * s * n_letters];
        for (k, &zk) in z.iter().enumerate() {
            for t in 0..s {
                for a in (0..n_letters).filter(|&a| !seed.is_run_letter(a)) {
                    v[(k * s + t) * n_letters + a] = prefix_bit(zk + t + 1, a);
                }
            }
        }
        PrecomputedTables {
            n_letters,
            span: s,
            u,
            v,
            z,
        }
    }

    /// `U(t,a)` as a bit set over prefix indices.
    pub fn u(&self, t: usize, a: usize) -> u64 {
        self.u[t * self.n_letters + a]
    }

    /// `V(k,t,a)` as a 1-based prefix index.
    pub fn v(&self, k: usize, t: usize, a: usize) -> Option<usize> {
        let bits = self.v_bits(k, t, a);
        (bits != 0).then(|| bits.trailing_zeros() as usize + 1)
    }

    #[inline]
    fn v_bits(&self, k: usize, t: usize, a: usize) -> u64 {
        self.v[(k * self.span + t) * self.n_letters + a]
    }

    /// `z_{k(X)}`: largest prefix position in `x_set`, 0 when empty.
    #[inline]
    fn top(&self, x_set: u64) -> usize {
        self.z[k_of(x_set)]
    }
}

/// `k(X)`: 1-based index of the largest prefix in `X`, 0 for `∅`.
#[inline]
fn k_of(x_set: u64) -> usize {
    64 - x_set.leading_zeros() as usize
}

/// Work counters of one incremental build.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Transitions computed, `|Q_live| · |A|`.
    pub transitions: u64,
    /// Elementary steps spent in the breadth-first phase.
    pub ops: u64,
    /// Most steps spent on any single transition.
    pub max_transition_ops: u64,
    /// States created, final state included.
    pub states: u64,
}

impl BuildStats {
    pub fn ops_per_transition(&self) -> f64 {
        self.ops as f64 / self.transitions.max(1) as f64
    }
}

struct Builder<'a> {
    seed: &'a Seed,
    tables: PrecomputedTables,
    k: usize,
    x_set: Vec<u64>,
    t: Vec<u32>,
    fail: Vec<StateId>,
    rev_max_fail: Vec<StateId>,
    table: Vec<StateId>,
    queue: std::collections::VecDeque<StateId>,
    stats: BuildStats,
}

impl Builder<'_> {
    fn create(&mut self, x_set: u64, t: usize, fail: StateId) -> StateId {
        let id = self.x_set.len() as StateId;
        self.x_set.push(x_set);
        self.t.push(t as u32);
        self.fail.push(fail);
        self.rev_max_fail.push(NONE);
        self.table.extend(std::iter::repeat_n(NONE, self.k));
        if fail != NONE {
            self.rev_max_fail[fail as usize] = id;
        }
        self.stats.states += 1;
        id
    }

    fn is_final_label(&self, x_set: u64, t: usize) -> bool {
        self.tables.top(x_set) + t >= self.seed.span()
    }

    fn first_level(&mut self) {
        let seed = self.seed;
        // the two possible children of q0, so letters sharing one are not duplicated
        let mut run_child = NONE;
        let mut letter_child = NONE;
        for a in 0..self.k {
            let target = if !seed.set_at(1).contains(a) {
                INITIAL
            } else {
                let is_run = seed.is_run_letter(a);
                let (y, ty) = if is_run { (0, 1) } else { (1, 0) };
                let slot = if is_run {
                    &mut run_child
                } else {
                    &mut letter_child
                };
                if *slot != NONE {
                    *slot
                } else if self.is_final_label(y, ty) {
                    FINAL
                } else {
                    let id = self.create(y, ty, INITIAL);
                    self.queue.push_back(id);
                    if is_run {
                        run_child = id;
                    } else {
                        letter_child = id;
                    }
                    id
                }
            };
            self.table[INITIAL as usize * self.k + a] = target;
        }
    }

    fn breadth_first(&mut self) {
        let k = self.k;
        while let Some(q) = self.queue.pop_front() {
            let qi = q as usize;
            let (x, tx) = (self.x_set[qi], self.t[qi] as usize);
            let q_fail = self.fail[qi];
            let kx = k_of(x);
            self.stats.ops += 3;
            for a in 0..k {
                let before = self.stats.ops;
                self.stats.transitions += 1;
                let qy_fail = self.table[q_fail as usize * k + a];
                self.stats.ops += 1;
                let target = if qy_fail == FINAL {
                    // Y ⊇ Y' as prefix sets, so a final ψ(Fail(q), a) forces ψ(q, a) final
                    self.stats.ops += 1;
                    FINAL
                } else {
                    self.resolve(qy_fail, x, tx, kx, a)
                };
                self.table[qi * k + a] = target;
                self.stats.ops += 1;
                self.stats.max_transition_ops =
                    self.stats.max_transition_ops.max(self.stats.ops - before);
            }
        }
    }

    #[inline]
    fn resolve(&mut self, qy_fail: StateId, x: u64, tx: usize, kx: usize, a: usize) -> StateId {
        let (y_fail, ty_fail) = (
            self.x_set[qy_fail as usize],
            self.t[qy_fail as usize] as usize,
        );
        self.stats.ops += 2;
        let (y, ty) = if self.seed.is_run_letter(a) {
            (x, tx + 1)
        } else if x == 0 {
            (self.tables.u(tx, a), 0)
        } else {
            (y_fail | self.tables.v_bits(kx, tx, a), 0)
        };
        self.stats.ops += 2;

        let rev = self.rev_max_fail[qy_fail as usize];
        self.stats.ops += 1;
        if rev != NONE && self.t[rev as usize] as usize == ty && self.x_set[rev as usize] == y {
            self.stats.ops += 2;
            return rev;
        }
        self.stats.ops += 2;
        if ty == ty_fail && y == y_fail {
            return qy_fail;
        }
        self.stats.ops += 1;
        if self.is_final_label(y, ty) {
            return FINAL;
        }
        let id = self.create(y, ty, qy_fail);
        self.queue.push_back(id);
        self.stats.ops += 4;
        id
    }

    fn finish(self) -> (Dfa, BuildStats) {
        let n = self.x_set.len();
        let mut finals = vec![false; n];
        finals[FINAL as usize] = true;
        let mut table = self.table;
        table[..self.k].fill(FINAL);
        let labels = (0..n)
            .map(|q| {
                if q == FINAL as usize {
                    "<>".to_string()
                } else {
                    format_label(&[self.seed], &[self.x_set[q]], self.t[q] as usize)
                }
            })
            .collect();
        let dfa = Dfa::new(self.k, INITIAL, finals, table, Some(labels))
            .expect("every created state has a full transition row")
            .canonical();
        (dfa, self.stats)
    }
}

/// Incremental construction with constant work per transition after table
/// precomputation.
pub fn build_incremental(seed: &Seed) -> Dfa {
    build_incremental_with_stats(seed).0
}

pub fn build_incremental_with_stats(seed: &Seed) -> (Dfa, BuildStats) {
    let k = seed.n_letters();
    let mut b = Builder {
        seed,
        tables: PrecomputedTables::new(seed),
        k,
        x_set: Vec::new(),
        t: Vec::new(),
        fail: Vec::new(),
        rev_max_fail: Vec::new(),
        table: Vec::new(),
        queue: Default::default(),
        stats: BuildStats::default(),
    };
    let final_id = b.create(0, 0, NONE);
    let initial = b.create(0, 0, NONE);
    debug_assert_eq!((final_id, initial), (FINAL, INITIAL));
    // Fail(<∅,0>) is <∅,0> itself
    b.fail[INITIAL as usize] = INITIAL;
    b.first_level();
    b.breadth_first();
    debug_assert!(b
        .x_set
        .iter()
        .enumerate()
        .skip(2)
        .all(|(q, &x)| { max_pos(seed, x) + (b.t[q] as usize) < seed.span() }));
    b.finish()
}
