//! Exact cover by dancing links.
//!
//! Items are `0..n`; each option is a set of items. A solution is a set of
//! options covering every item exactly once. The search always branches on
//! the active item with the fewest remaining options, breaking ties by the
//! lowest item index, so enumeration order is deterministic.

use std::ops::ControlFlow;

use rayon::prelude::*;

/// Dancing-links state. Nodes `1..=n` are item headers and node `0` is the
/// root of the header list; option nodes follow.
#[derive(Debug, Clone)]
pub struct ExactCover {
    items: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    top: Vec<usize>,
    len: Vec<usize>,
    option_of: Vec<usize>,
    option_nodes: Vec<(usize, usize)>,
}

impl ExactCover {
    pub fn new(items: usize) -> Self {
        let headers = items + 1;
        let mut left: Vec<usize> = (0..headers)
            .map(|i| if i == 0 { items } else { i - 1 })
            .collect();
        let mut right: Vec<usize> = (0..headers)
            .map(|i| if i == items { 0 } else { i + 1 })
            .collect();
        if items == 0 {
            left[0] = 0;
            right[0] = 0;
        }
        Self {
            items,
            left,
            right,
            up: (0..headers).collect(),
            down: (0..headers).collect(),
            top: (0..headers).collect(),
            len: vec![0; headers],
            option_of: vec![usize::MAX; headers],
            option_nodes: Vec::new(),
        }
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn options(&self) -> usize {
        self.option_nodes.len()
    }

    /// Adds an option covering the given (distinct) items; returns its index.
    pub fn add_option(&mut self, items: &[usize]) -> usize {
        let index = self.option_nodes.len();
        let start = self.top.len();
        for &item in items {
            assert!(item < self.items, "item {item} out of range");
            let header = item + 1;
            let node = self.top.len();
            let last = self.up[header];
            self.top.push(header);
            self.up.push(last);
            self.down.push(header);
            self.down[last] = node;
            self.up[header] = node;
            self.len[header] += 1;
            self.option_of.push(index);
        }
        self.option_nodes.push((start, self.top.len()));
        index
    }

    fn hide(&mut self, p: usize) {
        let (start, end) = self.option_nodes[self.option_of[p]];
        for q in (start..end).filter(|&q| q != p) {
            let (u, d) = (self.up[q], self.down[q]);
            self.down[u] = d;
            self.up[d] = u;
            self.len[self.top[q]] -= 1;
        }
    }

    fn unhide(&mut self, p: usize) {
        let (start, end) = self.option_nodes[self.option_of[p]];
        for q in (start..end).rev().filter(|&q| q != p) {
            let (u, d) = (self.up[q], self.down[q]);
            self.down[u] = q;
            self.up[d] = q;
            self.len[self.top[q]] += 1;
        }
    }

    fn cover(&mut self, header: usize) {
        let mut p = self.down[header];
        while p != header {
            self.hide(p);
            p = self.down[p];
        }
        let (l, r) = (self.left[header], self.right[header]);
        self.right[l] = r;
        self.left[r] = l;
    }

    fn uncover(&mut self, header: usize) {
        let (l, r) = (self.left[header], self.right[header]);
        self.right[l] = header;
        self.left[r] = header;
        let mut p = self.up[header];
        while p != header {
            self.unhide(p);
            p = self.up[p];
        }
    }

    /// Covers every item of the option holding node `r` other than `r`'s own.
    fn commit(&mut self, r: usize) {
        let (start, end) = self.option_nodes[self.option_of[r]];
        for q in (start..end).filter(|&q| q != r) {
            self.cover(self.top[q]);
        }
    }

    fn uncommit(&mut self, r: usize) {
        let (start, end) = self.option_nodes[self.option_of[r]];
        for q in (start..end).rev().filter(|&q| q != r) {
            self.uncover(self.top[q]);
        }
    }

    /// Active item with the fewest options; `None` when all are covered.
    fn choose(&self) -> Option<usize> {
        let mut best = None;
        let mut best_len = usize::MAX;
        let mut i = self.right[0];
        while i != 0 {
            if self.len[i] < best_len {
                best_len = self.len[i];
                best = Some(i);
                if best_len == 0 {
                    break;
                }
            }
            i = self.right[i];
        }
        best
    }

    fn search<F>(
        &mut self,
        partial: &mut Vec<usize>,
        visit: &mut F,
        budget: &mut u64,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if *budget == 0 {
            return ControlFlow::Break(());
        }
        *budget -= 1;
        let Some(header) = self.choose() else {
            return visit(partial);
        };
        if self.len[header] == 0 {
            return ControlFlow::Continue(());
        }
        self.cover(header);
        let mut r = self.down[header];
        let mut flow = ControlFlow::Continue(());
        while r != header {
            partial.push(self.option_of[r]);
            self.commit(r);
            flow = self.search(partial, visit, budget);
            self.uncommit(r);
            partial.pop();
            if flow.is_break() {
                break;
            }
            r = self.down[r];
        }
        self.uncover(header);
        flow
    }

    /// Calls `visit` with the option indices of each solution, in search order.
    pub fn for_each_solution<F>(&mut self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut partial = Vec::new();
        let mut unlimited = u64::MAX;
        let _ = self.search(&mut partial, &mut visit, &mut unlimited);
    }

    /// Counts solutions while visiting at most `max_nodes` search nodes.
    /// Returns the count so far and whether the search finished.
    pub fn count_solutions_bounded(&mut self, max_nodes: u64) -> (u64, bool) {
        let mut count = 0u64;
        let mut budget = max_nodes;
        let mut partial = Vec::new();
        let flow = self.search(
            &mut partial,
            &mut |_: &[usize]| {
                count += 1;
                ControlFlow::Continue(())
            },
            &mut budget,
        );
        (count, flow.is_continue())
    }

    /// The first solution found, with option indices sorted ascending.
    pub fn first_solution(&mut self) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_solution(|sol| {
            let mut sol = sol.to_vec();
            sol.sort_unstable();
            found = Some(sol);
            ControlFlow::Break(())
        });
        found
    }

    pub fn count_solutions(&mut self) -> u64 {
        let mut count = 0u64;
        self.for_each_solution(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }

    /// Counts solutions, searching the branches of the first chosen item in
    /// parallel on the current rayon pool. Equal to [`count_solutions`](Self::count_solutions).
    pub fn count_solutions_parallel(&self) -> u64 {
        let Some(header) = self.choose() else {
            return 1;
        };
        let mut branches = Vec::new();
        let mut r = self.down[header];
        while r != header {
            branches.push(r);
            r = self.down[r];
        }
        branches
            .par_iter()
            .map(|&r| {
                let mut state = self.clone();
                state.cover(header);
                state.commit(r);
                state.count_solutions()
            })
            .sum()
    }
}
