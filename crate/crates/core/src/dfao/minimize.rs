use std::collections::{HashMap, VecDeque};

use super::{Dfao, OutputKind};

impl Dfao {
    /// Moore minimization over both output tables.
    ///
    /// Unreachable states are dropped and the survivors are renumbered in
    /// breadth-first order from the initial state, so the result is canonical
    /// and a second pass returns it unchanged.
    pub fn minimize(&self) -> Dfao {
        let colors: Vec<(u32, u32)> = (0..self.num_states())
            .map(|q| (self.tau_ac[q], self.tau_b[q]))
            .collect();
        let mut out = self.quotient(&colors);
        out.meta.minimized = true;
        out
    }

    /// Minimizes with respect to a single output; the other output becomes
    /// unavailable. When balance is kept, `tau_ac` degrades to a 1/0 marker of
    /// whether a state carries a value.
    pub fn minimize_for(&self, which: OutputKind) -> Dfao {
        let colors: Vec<(u32, u32)> = (0..self.num_states())
            .map(|q| match which {
                OutputKind::Ac => (self.tau_ac[q], 0),
                OutputKind::Balance => (u32::from(self.is_defined(q)), self.tau_b[q]),
            })
            .collect();
        let mut out = self.quotient(&colors);
        match which {
            OutputKind::Ac => out.tau_b.iter_mut().for_each(|b| *b = 0),
            OutputKind::Balance => out.tau_ac.iter_mut().for_each(|a| *a = u32::from(*a != 0)),
        }
        out.meta.minimized = true;
        out.meta.outputs.retain(|&k| k == which);
        out
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    fn quotient(&self, colors: &[(u32, u32)]) -> Dfao {
        let live = self.reachable();
        let states: Vec<usize> = (0..self.num_states()).filter(|&q| live[q]).collect();

        // block[q] for live states; refined until the number of blocks is stable.
        let mut block = vec![usize::MAX; self.num_states()];
        let mut ids: HashMap<(u32, u32), usize> = HashMap::new();
        for &q in &states {
            let next = ids.len();
            block[q] = *ids.entry(colors[q]).or_insert(next);
        }
        let mut count = ids.len();
        loop {
            let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut refined = vec![usize::MAX; self.num_states()];
            for &q in &states {
                let sig = (block[q], self.delta[q].iter().map(|&t| block[t]).collect());
                let next = sigs.len();
                refined[q] = *sigs.entry(sig).or_insert(next);
            }
            let new_count = sigs.len();
            block = refined;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Breadth-first renumbering of blocks from the initial state.
        let mut order = vec![usize::MAX; count];
        let mut rep = Vec::with_capacity(count);
        let mut queue = VecDeque::from([0usize]);
        order[block[0]] = 0;
        rep.push(0);
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if order[block[t]] == usize::MAX {
                    order[block[t]] = rep.len();
                    rep.push(t);
                    queue.push_back(t);
                }
            }
        }

        let delta = rep
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| order[block[t]]).collect())
            .collect();
        let tau_ac = rep.iter().map(|&q| self.tau_ac[q]).collect();
        let tau_b = rep.iter().map(|&q| self.tau_b[q]).collect();
        let mut meta = self.meta.clone();
        meta.sink = meta.sink.filter(|&s| live[s]).map(|s| order[block[s]]);
        meta.states = rep.len() - 1 - usize::from(meta.sink.is_some());
        Dfao {
            substitution: self.substitution.clone(),
            alphabet_max_digit: self.alphabet_max_digit,
            delta,
            tau_ac,
            tau_b,
            meta,
        }
    }
}
