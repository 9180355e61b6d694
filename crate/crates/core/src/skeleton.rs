//! A finite parameter set mapped onto representatives of every cover part,
//! with small connected sets bridging each gap.

use serde::{Deserialize, Serialize};

use crate::cellset::Region;
use crate::continuum::Continuum;
use crate::covers::Cover;
use crate::error::{Error, Result};
use crate::io::FORMAT_VERSION;

/// A cover part at some level; level 0 is the whole space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub level: u32,
    pub part: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonPoint {
    pub t: f64,
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapRecord {
    pub u: f64,
    pub v: f64,
    pub level: u32,
    /// The weight of the left endpoint, which is the gap length.
    pub length: f64,
    pub connector_set: Region,
    pub endpoints: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub s: f64,
    pub points: Vec<SkeletonPoint>,
    /// Tokens in parameter order; `points[i]` is the image of `order[i]`.
    pub order: Vec<Token>,
    /// `reps[n][i]`: representative cell of part `i` at level `n`.
    pub reps: Vec<Vec<usize>>,
    /// `parent[n][i]`: lowest-index part of level `n - 1` meeting part `i` of level `n`.
    pub parent: Vec<Vec<usize>>,
    /// Tokens whose representative repeats a cell already used.
    pub reused: Vec<Token>,
    epsilons: Vec<f64>,
}

impl Skeleton {
    /// Parent walk of `token` up to `level`, finest first.
    pub fn walk(&self, token: Token, level: u32) -> Vec<Token> {
        let mut out = vec![token];
        let mut cur = token;
        while cur.level > level {
            cur = Token { level: cur.level - 1, part: self.parent[cur.level as usize][cur.part] };
            out.push(cur);
        }
        out
    }

    /// Ancestor of `token` at `level`, or the token itself when already that coarse.
    pub fn retract(&self, token: Token, level: u32) -> Token {
        *self.walk(token, level).last().expect("walk is nonempty")
    }

    pub fn rep(&self, token: Token) -> usize {
        self.reps[token.level as usize][token.part]
    }

    pub fn epsilon(&self, level: u32) -> f64 {
        self.epsilons[level as usize]
    }

    pub fn to_json(&self, gaps: &[GapRecord]) -> serde_json::Value {
        serde_json::json!({
            "format_version": FORMAT_VERSION,
            "s": self.s,
            "points": self.points,
            "gaps": gaps.iter().map(|g| serde_json::json!({
                "u": g.u,
                "v": g.v,
                "level": g.level,
                "connector_cells": g.connector_set.cells().to_vec(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Orders one token per part of every cover so that each part's children come
/// right before it, then places tokens at the running sums of their weights.
///
/// `covers[n]` is the cover at level `n` with `covers[0] = {X}`; `epsilons[n]`
/// is the weight of level `n` and must be positive for `n >= 1`.
pub fn build_skeleton(x: &Continuum, covers: &[Cover], epsilons: &[f64]) -> Result<Skeleton> {
    if x.is_singleton() {
        return Err(Error::DegenerateSpace);
    }
    if covers.first().is_none_or(|c| c.len() != 1) {
        return Err(Error::InvalidParameter("level 0 must be the single whole-space part".into()));
    }
    if epsilons.len() < covers.len() || epsilons[1..covers.len()].iter().any(|&e| e <= 0.0) {
        return Err(Error::InvalidParameter("one positive weight per level is required".into()));
    }
    let depth = covers.len();

    let mut parent = vec![Vec::new(); depth];
    let mut children = vec![vec![Vec::new(); 1]; depth];
    for n in 1..depth {
        children[n] = vec![Vec::new(); covers[n].len()];
        parent[n] = covers[n]
            .parts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let p = covers[n - 1]
                    .parts
                    .iter()
                    .position(|q| q.meets(c))
                    .expect("consecutive covers of one space intersect");
                children[n - 1][p].push(i);
                p
            })
            .collect();
    }

    let (reps, reused) = pick_representatives(x, covers);

    let mut order = vec![Token { level: 0, part: 0 }];
    for n in 1..depth as u32 {
        let mut next = Vec::with_capacity(order.len() + covers[n as usize].len());
        for &tok in &order {
            if tok.level == n - 1 {
                next.extend(children[tok.level as usize][tok.part].iter().map(|&i| Token { level: n, part: i }));
            }
            next.push(tok);
        }
        order = next;
    }

    let mut points = Vec::with_capacity(order.len());
    let mut g = 0.0;
    for tok in &order {
        points.push(SkeletonPoint { t: g, cell: reps[tok.level as usize][tok.part] });
        if tok.level > 0 {
            g += epsilons[tok.level as usize];
        }
    }
    Ok(Skeleton { s: g, points, order, reps, parent, reused, epsilons: epsilons[..depth].to_vec() })
}

/// One cell per token, distinct wherever a maximum matching allows; leftover
/// tokens take the lowest cell of their part.
fn pick_representatives(x: &Continuum, covers: &[Cover]) -> (Vec<Vec<usize>>, Vec<Token>) {
    let tokens: Vec<Token> = covers
        .iter()
        .enumerate()
        .flat_map(|(n, c)| (0..c.len()).map(move |i| Token { level: n as u32, part: i }))
        .collect();
    let cells_of = |t: &Token| covers[t.level as usize].parts[t.part].cells().to_vec();
    let options: Vec<Vec<usize>> = tokens.iter().map(cells_of).collect();
    let mut owner = vec![usize::MAX; x.len()];
    let mut matched = vec![usize::MAX; tokens.len()];
    for t in 0..tokens.len() {
        let mut seen = vec![false; x.len()];
        augment(t, &options, &mut owner, &mut matched, &mut seen);
    }
    let mut reps: Vec<Vec<usize>> = covers.iter().map(|c| vec![0; c.len()]).collect();
    let mut reused = Vec::new();
    for (t, tok) in tokens.iter().enumerate() {
        let cell = if matched[t] != usize::MAX {
            matched[t]
        } else {
            reused.push(*tok);
            options[t][0]
        };
        reps[tok.level as usize][tok.part] = cell;
    }
    (reps, reused)
}

fn augment(t: usize, options: &[Vec<usize>], owner: &mut [usize], matched: &mut [usize], seen: &mut [bool]) -> bool {
    // Iterative depth-first search for an augmenting path from token `t`.
    let mut stack: Vec<(usize, usize)> = vec![(t, 0)];
    let mut path: Vec<(usize, usize)> = Vec::new();
    while let Some(&(tok, next)) = stack.last() {
        if next >= options[tok].len() {
            stack.pop();
            path.pop();
            continue;
        }
        let top = stack.len() - 1;
        stack[top].1 += 1;
        let cell = options[tok][next];
        if seen[cell] {
            continue;
        }
        seen[cell] = true;
        path.push((tok, cell));
        if owner[cell] == usize::MAX {
            for &(tk, c) in &path {
                owner[c] = tk;
                matched[tk] = c;
            }
            return true;
        }
        stack.push((owner[cell], 0));
    }
    false
}

/// One record per consecutive pair of skeleton points.
///
/// The bridging set is the union of the parent walks of both tokens up to one
/// level above the gap level; the walks meet at their common ancestor there.
pub fn gap_records(x: &Continuum, covers: &[Cover], sk: &Skeleton) -> Vec<GapRecord> {
    (0..sk.order.len().saturating_sub(1))
        .map(|i| {
            let (left, right) = (sk.order[i], sk.order[i + 1]);
            let level = left.level;
            let mut set = Region::empty(x);
            for tok in sk.walk(left, level - 1).into_iter().chain(sk.walk(right, level - 1)) {
                set.union_with(&covers[tok.level as usize].parts[tok.part]);
            }
            GapRecord {
                u: sk.points[i].t,
                v: sk.points[i + 1].t,
                level,
                length: sk.epsilon(level),
                connector_set: set,
                endpoints: (sk.points[i].cell, sk.points[i + 1].cell),
            }
        })
        .collect()
}
