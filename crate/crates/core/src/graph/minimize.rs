use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use super::{TermGraph, VertexLabel};
use crate::term::Ranked;

impl<L: Clone + Eq + Hash + Ranked + fmt::Display> TermGraph<L> {
    /// Coarsest bisimulation: `classes[v] == classes[w]` iff `v` and `w`
    /// have the same unfolding.
    pub fn bisim_classes(&self) -> Vec<usize> {
        let mut ids: HashMap<&VertexLabel<L>, usize> = HashMap::new();
        let mut class: Vec<usize> = self
            .labels()
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        let mut count = ids.len();
        loop {
            let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = (0..self.len())
                .map(|v| {
                    let sig = (class[v], self.successors(v).iter().map(|&w| class[w]).collect());
                    let next = sigs.len();
                    *sigs.entry(sig).or_insert(next)
                })
                .collect();
            let refined_count = sigs.len();
            class = refined;
            if refined_count == count {
                return class;
            }
            count = refined_count;
        }
    }

    /// The bisimulation quotient, numbered breadth-first from the root.
    ///
    /// Two graphs have the same unfolding iff their minimized forms are equal.
    pub fn minimize_bisim(&self) -> TermGraph<L> {
        let class = self.bisim_classes();
        let blocks = class.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; blocks];
        for (v, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = v;
            }
        }
        let mut new_id = vec![usize::MAX; blocks];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([class[0]]);
        new_id[class[0]] = 0;
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for &w in self.successors(rep[c]) {
                let d = class[w];
                if new_id[d] == usize::MAX {
                    new_id[d] = order.len() + queue.len();
                    queue.push_back(d);
                }
            }
        }
        let labels = order.iter().map(|&c| self.label(rep[c]).clone()).collect();
        let succ = order
            .iter()
            .map(|&c| self.successors(rep[c]).iter().map(|&w| new_id[class[w]]).collect())
            .collect();
        TermGraph::new(labels, succ).expect("quotient of a valid graph is valid")
    }
}
