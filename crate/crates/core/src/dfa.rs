//! Complete deterministic automata over small alphabets.
//!
//! Transitions are a dense state-major table. All builders in this crate
//! return automata in canonical breadth-first numbering (see
//! [`Dfa::canonical`]), so two label-isomorphic automata compare equal.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type StateId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    n_letters: usize,
    initial: StateId,
    finals: Vec<bool>,
    table: Vec<StateId>,
    labels: Option<Vec<String>>,
}

impl Dfa {
    pub fn new(
        n_letters: usize,
        initial: StateId,
        finals: Vec<bool>,
        table: Vec<StateId>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = finals.len();
        if n == 0 {
            return Err(Error::MalformedDfa("no states".into()));
        }
        if n_letters == 0 {
            return Err(Error::MalformedDfa("empty alphabet".into()));
        }
        if initial as usize >= n {
            return Err(Error::MalformedDfa(format!(
                "initial state {initial} out of range"
            )));
        }
        if table.len() != n * n_letters {
            return Err(Error::MalformedDfa(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n_letters
            )));
        }
        if let Some(bad) = table.iter().find(|&&q| q as usize >= n) {
            return Err(Error::MalformedDfa(format!("dangling state id {bad}")));
        }
        if labels.as_ref().is_some_and(|l| l.len() != n) {
            return Err(Error::MalformedDfa(
                "label count differs from state count".into(),
            ));
        }
        Ok(Dfa {
            n_letters,
            initial,
            finals,
            table,
            labels,
        })
    }

    pub fn n_states(&self) -> usize {
        self.finals.len()
    }

    pub fn n_letters(&self) -> usize {
        self.n_letters
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q as usize]
    }

    pub fn final_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i as StateId)
    }

    #[inline]
    pub fn next(&self, q: StateId, letter: usize) -> StateId {
        self.table[q as usize * self.n_letters + letter]
    }

    pub fn row(&self, q: StateId) -> &[StateId] {
        let start = q as usize * self.n_letters;
        &self.table[start..start + self.n_letters]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, q: StateId) -> Option<&str> {
        self.labels.as_ref().map(|l| l[q as usize].as_str())
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// State reached from the initial state after reading `word`.
    pub fn run(&self, word: &[u8]) -> StateId {
        word.iter()
            .fold(self.initial, |q, &a| self.next(q, a as usize))
    }

    pub fn accepts(&self, word: &[u8]) -> bool {
        self.is_final(self.run(word))
    }

    fn reachable_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.n_states()];
        let mut order = vec![self.initial];
        seen[self.initial as usize] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &p in self.row(q) {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    order.push(p);
                }
            }
        }
        order
    }

    /// Number of states reachable from the initial state.
    pub fn reachable_count(&self) -> usize {
        self.reachable_order().len()
    }

    /// Drops unreachable states and renumbers the rest in breadth-first
    /// discovery order (letters scanned in index order). Labels follow
    /// their states.
    pub fn canonical(&self) -> Dfa {
        let order = self.reachable_order();
        let mut new_id = vec![StateId::MAX; self.n_states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q as usize] = i as StateId;
        }
        let mut table = Vec::with_capacity(order.len() * self.n_letters);
        for &q in &order {
            table.extend(self.row(q).iter().map(|&p| new_id[p as usize]));
        }
        Dfa {
            n_letters: self.n_letters,
            initial: 0,
            finals: order.iter().map(|&q| self.is_final(q)).collect(),
            table,
            labels: self
                .labels
                .as_ref()
                .map(|l| order.iter().map(|&q| l[q as usize].clone()).collect()),
        }
    }

    /// Minimal complete automaton for the same language, canonically numbered
    /// and without labels.
    pub fn minimize(&self) -> Dfa {
        let dfa = self.canonical();
        let blocks = hopcroft(&dfa);
        let n_blocks = blocks.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut finals = vec![false; n_blocks];
        let mut table = vec![0; n_blocks * dfa.n_letters];
        for q in 0..dfa.n_states() {
            let b = blocks[q] as usize;
            finals[b] = dfa.finals[q];
            for a in 0..dfa.n_letters {
                table[b * dfa.n_letters + a] = blocks[dfa.next(q as StateId, a) as usize];
            }
        }
        Dfa {
            n_letters: dfa.n_letters,
            initial: blocks[0],
            finals,
            table,
            labels: None,
        }
        .canonical()
    }

    /// Whether both automata recognize the same language.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        if self.n_letters != other.n_letters {
            return Err(Error::AlphabetMismatch(self.n_letters, other.n_letters));
        }
        // Hopcroft–Karp: union states of both automata, merge pairs reached
        // by the same word, fail on any final/non-final merge.
        let offset = self.n_states();
        let mut uf = UnionFind::new(offset + other.n_states());
        let finality = |x: usize| {
            if x < offset {
                self.finals[x]
            } else {
                other.finals[x - offset]
            }
        };
        let step = |x: usize, a: usize| {
            if x < offset {
                self.next(x as StateId, a) as usize
            } else {
                offset + other.next((x - offset) as StateId, a) as usize
            }
        };
        let mut stack = vec![(self.initial as usize, offset + other.initial as usize)];
        uf.union(stack[0].0, stack[0].1);
        while let Some((x, y)) = stack.pop() {
            if finality(x) != finality(y) {
                return Ok(false);
            }
            for a in 0..self.n_letters {
                let (nx, ny) = (step(x, a), step(y, a));
                if uf.union(nx, ny) {
                    stack.push((nx, ny));
                }
            }
        }
        Ok(true)
    }

    /// Whether `other` is the same automaton up to renaming states, matching
    /// states by label. Both automata must be labelled.
    pub fn label_isomorphic(&self, other: &Dfa) -> bool {
        let (Some(la), Some(lb)) = (self.labels.as_ref(), other.labels.as_ref()) else {
            return false;
        };
        if self.n_letters != other.n_letters || self.n_states() != other.n_states() {
            return false;
        }
        let index: std::collections::HashMap<&str, StateId> = lb
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as StateId))
            .collect();
        if index.len() != lb.len() {
            return false;
        }
        let mut map = Vec::with_capacity(la.len());
        for l in la {
            match index.get(l.as_str()) {
                Some(&q) => map.push(q),
                None => return false,
            }
        }
        if map[self.initial as usize] != other.initial {
            return false;
        }
        (0..self.n_states()).all(|q| {
            let q2 = map[q];
            self.finals[q] == other.finals[q2 as usize]
                && (0..self.n_letters)
                    .all(|a| map[self.next(q as StateId, a) as usize] == other.next(q2, a))
        })
    }

    /// Graphviz rendering. `letters` names the alphabet; indices are used
    /// when absent. Parallel arcs are merged into one edge.
    pub fn to_dot(&self, letters: Option<&[char]>) -> String {
        let letter_name = |a: usize| match letters {
            Some(l) => l[a].to_string(),
            None => a.to_string(),
        };
        let mut out = String::new();
        out.push_str("digraph automaton {\n");
        out.push_str("  rankdir=LR;\n");
        out.push_str("  node [shape=circle];\n");
        out.push_str("  start [shape=point];\n");
        for q in 0..self.n_states() {
            let shape = if self.finals[q] {
                "doublecircle"
            } else {
                "circle"
            };
            let label = match &self.labels {
                Some(l) => l[q].clone(),
                None => q.to_string(),
            };
            let _ = writeln!(
                out,
                "  s{q} [shape={shape}, label=\"{}\"];",
                dot_escape(&label)
            );
        }
        let _ = writeln!(out, "  start -> s{};", self.initial);
        for q in 0..self.n_states() {
            let row = self.row(q as StateId);
            let mut targets: Vec<StateId> = row.to_vec();
            targets.sort_unstable();
            targets.dedup();
            for p in targets {
                let names: Vec<String> = (0..self.n_letters)
                    .filter(|&a| row[a] == p)
                    .map(letter_name)
                    .collect();
                let _ = writeln!(
                    out,
                    "  s{q} -> s{p} [label=\"{}\"];",
                    dot_escape(&names.join(","))
                );
            }
        }
        out.push_str("}\n");
        out
    }

    /// Line-oriented text form:
    ///
    /// ```text
    /// dfa <n_states> <n_letters> <initial>
    /// finals: <ids…>
    /// <n_letters targets>      (one line per state)
    /// label <id> <text>        (optional)
    /// ```
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "dfa {} {} {}",
            self.n_states(),
            self.n_letters,
            self.initial
        );
        out.push_str("finals:");
        for q in self.final_states() {
            let _ = write!(out, " {q}");
        }
        out.push('\n');
        for q in 0..self.n_states() {
            let row: Vec<String> = self
                .row(q as StateId)
                .iter()
                .map(|p| p.to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        if let Some(labels) = &self.labels {
            for (q, l) in labels.iter().enumerate() {
                let _ = writeln!(out, "label {q} {l}");
            }
        }
        out
    }

    pub fn deserialize(text: &str) -> Result<Dfa> {
        let bad = |msg: String| Error::MalformedDfa(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty document".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "dfa" {
            return Err(bad(format!("bad header `{header}`")));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| bad(format!("bad number `{s}`")))
        };
        let (n, k, initial) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);

        let finals_line = lines
            .next()
            .ok_or_else(|| bad("missing finals line".into()))?;
        let ids = finals_line
            .strip_prefix("finals:")
            .ok_or_else(|| bad(format!("bad finals line `{finals_line}`")))?;
        let mut finals = vec![false; n];
        for tok in ids.split_whitespace() {
            let q = num(tok)?;
            if q >= n {
                return Err(bad(format!("dangling state id {q}")));
            }
            finals[q] = true;
        }

        let mut table = Vec::with_capacity(n * k);
        for q in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| bad(format!("missing row for state {q}")))?;
            let row = line
                .split_whitespace()
                .map(num)
                .collect::<Result<Vec<_>>>()?;
            if row.len() != k {
                return Err(bad(format!(
                    "row {q} has {} entries, expected {k}",
                    row.len()
                )));
            }
            table.extend(row.into_iter().map(|p| p as StateId));
        }

        let mut labels: Option<Vec<String>> = None;
        for line in lines {
            let rest = line
                .strip_prefix("label ")
                .ok_or_else(|| bad(format!("unexpected line `{line}`")))?;
            let (id, text) = rest.split_once(' ').unwrap_or((rest, ""));
            let q = num(id)?;
            if q >= n {
                return Err(bad(format!("label for dangling state id {q}")));
            }
            labels.get_or_insert_with(|| vec![String::new(); n])[q] = text.to_string();
        }
        Dfa::new(k, initial as StateId, finals, table, labels)
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Hopcroft partition refinement over a fully reachable automaton. Returns
/// the block index of every state.
fn hopcroft(dfa: &Dfa) -> Vec<u32> {
    let n = dfa.n_states();
    let k = dfa.n_letters;

    // inverse transitions, CSR per (letter, target)
    let mut inv_start = vec![0u32; k * n + 1];
    for q in 0..n {
        for a in 0..k {
            inv_start[a * n + dfa.next(q as StateId, a) as usize + 1] += 1;
        }
    }
    for i in 0..k * n {
        inv_start[i + 1] += inv_start[i];
    }
    let mut fill = inv_start.clone();
    let mut inv = vec![0u32; k * n];
    for q in 0..n {
        for a in 0..k {
            let slot = a * n + dfa.next(q as StateId, a) as usize;
            inv[fill[slot] as usize] = q as u32;
            fill[slot] += 1;
        }
    }

    let mut elems: Vec<u32> = Vec::with_capacity(n);
    elems.extend((0..n as u32).filter(|&q| dfa.finals[q as usize]));
    let n_final = elems.len();
    elems.extend((0..n as u32).filter(|&q| !dfa.finals[q as usize]));
    let mut loc = vec![0u32; n];
    for (i, &q) in elems.iter().enumerate() {
        loc[q as usize] = i as u32;
    }

    let mut first: Vec<u32> = Vec::new();
    let mut end: Vec<u32> = Vec::new();
    let mut block = vec![0u32; n];
    for (lo, hi) in [(0, n_final), (n_final, n)] {
        if lo < hi {
            let b = first.len() as u32;
            first.push(lo as u32);
            end.push(hi as u32);
            for &q in &elems[lo..hi] {
                block[q as usize] = b;
            }
        }
    }
    let mut mid = first.clone();

    let mut in_work: Vec<bool> = vec![false; first.len() * k];
    let mut work: Vec<(u32, usize)> = Vec::new();
    // seeding with every initial block is always sound
    for b in 0..first.len() as u32 {
        for a in 0..k {
            in_work[b as usize * k + a] = true;
            work.push((b, a));
        }
    }

    let mut touched: Vec<u32> = Vec::new();
    let mut splitter: Vec<u32> = Vec::new();
    while let Some((b, a)) = work.pop() {
        in_work[b as usize * k + a] = false;
        splitter.clear();
        splitter.extend_from_slice(&elems[first[b as usize] as usize..end[b as usize] as usize]);
        for &target in &splitter {
            let slot = a * n + target as usize;
            for &p in &inv[inv_start[slot] as usize..inv_start[slot + 1] as usize] {
                let pb = block[p as usize] as usize;
                let i = loc[p as usize];
                if i < mid[pb] {
                    continue;
                }
                let j = mid[pb];
                let other = elems[j as usize];
                elems.swap(i as usize, j as usize);
                loc[p as usize] = j;
                loc[other as usize] = i;
                mid[pb] += 1;
                if mid[pb] == first[pb] + 1 {
                    touched.push(pb as u32);
                }
            }
        }
        for pb in touched.drain(..) {
            let pb = pb as usize;
            if mid[pb] == end[pb] {
                mid[pb] = first[pb];
                continue;
            }
            // marked part [first, mid) becomes a new block
            let nb = first.len();
            first.push(first[pb]);
            end.push(mid[pb]);
            mid.push(first[pb]);
            let split = mid[pb];
            first[pb] = split;
            mid[pb] = split;
            for &q in &elems[first[nb] as usize..end[nb] as usize] {
                block[q as usize] = nb as u32;
            }
            in_work.extend(std::iter::repeat_n(false, k));
            let size_old = end[pb] - first[pb];
            let size_new = end[nb] - first[nb];
            for c in 0..k {
                let pick = if in_work[pb * k + c] || size_new <= size_old {
                    nb
                } else {
                    pb
                };
                if !in_work[pick * k + c] {
                    in_work[pick * k + c] = true;
                    work.push((pick as u32, c));
                }
            }
        }
    }
    block
}
