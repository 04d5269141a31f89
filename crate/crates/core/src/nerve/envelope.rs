use std::collections::{HashMap, HashSet};

use super::{nerve_simplices, restrict, NerveSimplex};
use crate::delta::{rooted_components, LeveledShape};
use crate::error::Result;
use crate::operad::{Envelope, FiniteOperad, OperadMorphism};

/// Both sides of `L(Nˡ P)_n ≅ N(L P)_n` at level bound `maxlen`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeReport {
    pub degree: usize,
    pub maxlen: usize,
    /// Lists of rooted nerve simplices whose level-wise sizes sum to at most `maxlen`.
    pub nerve_lists: u128,
    /// Chains `x_0 → … → x_n` of color sequences of length at most `maxlen`.
    pub envelope_chains: u128,
    /// Rooted decomposition sends chains injectively to such lists.
    pub bijective: bool,
}

impl EnvelopeReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.nerve_lists == self.envelope_chains
    }
}

pub fn check_envelope_iso(p: &FiniteOperad, n: usize, maxlen: usize) -> Result<EnvelopeReport> {
    let simplices = nerve_simplices(p, n, maxlen);
    let nerve_lists = count_lists(&simplices, n, maxlen);
    let env = Envelope::new(p, maxlen);
    let envelope_chains = env.count_chains(n);

    let index: HashMap<&NerveSimplex, usize> = simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut bijective = true;
    for (start, chain) in env.chains(n) {
        let mut sizes = vec![start.len()];
        let mut colors = start.clone();
        let mut maps = Vec::with_capacity(n);
        let mut gens = Vec::new();
        for m in &chain {
            let t = env.target(m);
            sizes.push(t.len());
            maps.push(env.position_map(m));
            colors.extend(t);
            gens.extend(m.ops.iter().copied());
        }
        let shape = LeveledShape::new(sizes, maps)?;
        let morphism = OperadMorphism { colors, gens };
        let mut parts = Vec::new();
        for comp in rooted_components(&shape) {
            let s = NerveSimplex { morphism: restrict(&shape, &morphism, &comp), shape: comp.shape.into_shape() };
            match index.get(&s) {
                Some(&i) => parts.push(i),
                None => bijective = false,
            }
        }
        if !seen.insert(parts) {
            bijective = false;
        }
    }
    if seen.len() as u128 != nerve_lists {
        bijective = false;
    }
    Ok(EnvelopeReport { degree: n, maxlen, nerve_lists, envelope_chains, bijective })
}

/// Number of lists of simplices whose size vectors sum to at most `maxlen`
/// in every level.
fn count_lists(simplices: &[NerveSimplex], n: usize, maxlen: usize) -> u128 {
    let base = maxlen + 1;
    let states = base.pow(n as u32 + 1);
    let encode = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &x| acc * base + x);
    let mut weights: HashMap<Vec<usize>, u128> = HashMap::new();
    for s in simplices {
        *weights.entry(s.shape.level_sizes().to_vec()).or_default() += 1;
    }
    // ways[v]: lists whose sizes sum to exactly v; states in increasing order
    let mut ways = vec![0u128; states];
    ways[0] = 1;
    let mut total = 0u128;
    for code in 0..states {
        let v: Vec<usize> = (0..=n).map(|i| code / base.pow(i as u32) % base).collect();
        if code > 0 {
            let mut w = 0u128;
            for (size, &count) in &weights {
                if size.iter().zip(&v).all(|(a, b)| a <= b) {
                    let rest: Vec<usize> = v.iter().zip(size).map(|(b, a)| b - a).collect();
                    w += count * ways[encode(&rest)];
                }
            }
            ways[code] = w;
        }
        total += ways[code];
    }
    total
}
