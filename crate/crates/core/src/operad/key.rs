//! The key free operads `T_α`, the maps `λ_θ`, and morphisms out of `T_α`.

use super::finite::FiniteOperad;
use super::multigraph::{Edge, Multigraph};
use super::term::PlanarTerm;
use crate::delta::{act, LeveledShape, MonotoneMap};
use crate::error::{Error, Result};
use crate::list::FiniteSet;

/// `M_α`: colors `∐ A_i` (level-major) and one generator `p_i^{(a)}` for
/// each `a ∈ A_i`, `i ≥ 1`, with inputs the fiber `α_i^{-1}(a)`.
pub fn key_multigraph(alpha: &LeveledShape) -> Multigraph {
    let n = alpha.degree();
    let mut labels = Vec::with_capacity(alpha.total_size());
    for i in 0..=n {
        for a in 0..alpha.size(i) {
            labels.push(format!("{i}:{a}"));
        }
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for a in 0..alpha.size(i) {
            let inputs = alpha.map(i).fiber(a).map(|x| alpha.offset(i - 1) + x).collect();
            edges.push(Edge { name: format!("p{i}:{a}"), inputs, output: alpha.offset(i) + a });
        }
    }
    Multigraph::new(FiniteSet::from_vec_unchecked(labels), edges).expect("well formed")
}

/// Index of the generator `p_i^{(a)}` among the edges of `M_α`.
pub fn generator_index(alpha: &LeveledShape, i: usize, a: usize) -> usize {
    alpha.offset(i) - alpha.size(0) + a
}

/// `p_{i,j}^{(a)}`: the leaf at `a` when `i = j`, otherwise
/// `p_j^{(a)} ∘ (p_{i,j-1}^{(b)})_{b ∈ α_j^{-1}(a)}`.
pub fn chain_term(alpha: &LeveledShape, i: usize, j: usize, a: usize) -> PlanarTerm {
    if i == j {
        return PlanarTerm::Leaf(alpha.offset(j) + a);
    }
    let ch = alpha.map(j).fiber(a).map(|b| chain_term(alpha, i, j - 1, b)).collect();
    PlanarTerm::Node(generator_index(alpha, j, a), ch)
}

/// `T_α` with its shape and multigraph.
#[derive(Clone, Debug)]
pub struct KeyOperad {
    alpha: LeveledShape,
    operad: FiniteOperad,
}

pub fn build_t_alpha(alpha: &LeveledShape) -> KeyOperad {
    let graph = key_multigraph(alpha);
    let operad = FiniteOperad::free(&graph).expect("M_α is acyclic");
    KeyOperad { alpha: alpha.clone(), operad }
}

impl KeyOperad {
    pub fn alpha(&self) -> &LeveledShape {
        &self.alpha
    }

    pub fn operad(&self) -> &FiniteOperad {
        &self.operad
    }

    pub fn graph(&self) -> &Multigraph {
        self.operad.graph().expect("free")
    }

    /// The operation `p_{i,j}^{(a)}`.
    pub fn chain_op(&self, i: usize, j: usize, a: usize) -> usize {
        self.operad.term_position(&chain_term(&self.alpha, i, j, a)).expect("chain terms exist")
    }

    /// The identity morphism `T_α → T_α`.
    pub fn identity_morphism(&self) -> OperadMorphism {
        let colors = (0..self.alpha.total_size()).collect();
        let mut gens = Vec::new();
        for i in 1..=self.alpha.degree() {
            for a in 0..self.alpha.size(i) {
                gens.push(self.chain_op(i - 1, i, a));
            }
        }
        OperadMorphism { colors, gens }
    }
}

/// A morphism `T_α → P`, stored as a color per element of `∐ A_i` and an
/// operation per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperadMorphism {
    pub colors: Vec<usize>,
    pub gens: Vec<usize>,
}

impl OperadMorphism {
    pub fn color(&self, alpha: &LeveledShape, i: usize, a: usize) -> usize {
        self.colors[alpha.offset(i) + a]
    }

    pub fn generator(&self, alpha: &LeveledShape, i: usize, a: usize) -> usize {
        self.gens[generator_index(alpha, i, a)]
    }

    /// Each generator lands on an operation of the right profile.
    pub fn is_valid(&self, alpha: &LeveledShape, p: &FiniteOperad) -> bool {
        if self.colors.len() != alpha.total_size() || self.gens.len() != alpha.total_size() - alpha.size(0) {
            return false;
        }
        if self.colors.iter().any(|&c| c >= p.colors().len()) || self.gens.iter().any(|&g| g >= p.len()) {
            return false;
        }
        (1..=alpha.degree()).all(|i| {
            (0..alpha.size(i)).all(|a| {
                let op = p.op(self.generator(alpha, i, a));
                let want: Vec<usize> = alpha.map(i).fiber(a).map(|b| self.color(alpha, i - 1, b)).collect();
                op.output == self.color(alpha, i, a) && op.inputs == want
            })
        })
    }

    /// Image of a term of `T_α` in `P`; `None` beyond an arity bound.
    pub fn apply(&self, p: &FiniteOperad, t: &PlanarTerm) -> Result<Option<usize>> {
        match t {
            PlanarTerm::Leaf(c) => Ok(Some(p.identity(self.colors[*c]))),
            PlanarTerm::Node(e, ch) => {
                let mut args = Vec::with_capacity(ch.len());
                for c in ch {
                    match self.apply(p, c)? {
                        Some(x) => args.push(x),
                        None => return Ok(None),
                    }
                }
                p.compose(self.gens[*e], &args)
            }
        }
    }

    /// Image of `p_{i,j}^{(a)}` without materializing the term.
    pub fn eval_chain(&self, alpha: &LeveledShape, p: &FiniteOperad, i: usize, j: usize, a: usize) -> Result<Option<usize>> {
        if i == j {
            return Ok(Some(p.identity(self.color(alpha, j, a))));
        }
        let mut args = Vec::new();
        for b in alpha.map(j).fiber(a) {
            match self.eval_chain(alpha, p, i, j - 1, b)? {
                Some(x) => args.push(x),
                None => return Ok(None),
            }
        }
        p.compose(self.generator(alpha, j, a), &args)
    }

    /// `x ∘ λ_θ : T_{θ*α} → P`; `None` if a composite leaves the arity bound.
    pub fn pull_back(&self, theta: &MonotoneMap, alpha: &LeveledShape, p: &FiniteOperad) -> Result<Option<OperadMorphism>> {
        let beta = act(theta, alpha)?;
        let v = theta.values();
        let mut colors = Vec::with_capacity(beta.total_size());
        for (i, &ti) in v.iter().enumerate() {
            for b in 0..beta.size(i) {
                colors.push(self.color(alpha, ti, b));
            }
        }
        let mut gens = Vec::new();
        for i in 1..v.len() {
            for b in 0..beta.size(i) {
                match self.eval_chain(alpha, p, v[i - 1], v[i], b)? {
                    Some(f) => gens.push(f),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(OperadMorphism { colors, gens }))
    }
}

/// `λ_θ : T_{θ*α} → T_α`, sending `p_i^{(b)}` to `p_{θ(i-1),θ(i)}^{(b)}`.
pub fn lambda_theta(theta: &MonotoneMap, target: &KeyOperad) -> Result<OperadMorphism> {
    let id = target.identity_morphism();
    id.pull_back(theta, &target.alpha, &target.operad)?
        .ok_or_else(|| Error::Invalid("free operads are unbounded".into()))
}

/// All morphisms `T_α → P`, in lexicographic order of (colors of `A_n`,
/// generators from the top level down).
pub fn hom_operads(alpha: &LeveledShape, p: &FiniteOperad) -> Vec<OperadMorphism> {
    let n = alpha.degree();
    let total = alpha.total_size();
    let ngens = total - alpha.size(0);
    let mut out = Vec::new();
    let mut colors = vec![0usize; total];
    let mut gens = vec![0usize; ngens];
    let top = alpha.size(n);
    let k = p.colors().len();
    // odometer over colors of A_n
    let mut top_colors = vec![0usize; top];
    if k == 0 && top > 0 {
        return out;
    }
    loop {
        for (a, &c) in top_colors.iter().enumerate() {
            colors[alpha.offset(n) + a] = c;
        }
        // generators of level i are fixed for i > level; fill level `i` element `a`
        fill(alpha, p, n, 0, &mut colors, &mut gens, &mut out);
        let mut t = 0;
        while t < top {
            top_colors[t] += 1;
            if top_colors[t] < k {
                break;
            }
            top_colors[t] = 0;
            t += 1;
        }
        if t == top {
            break;
        }
    }
    out.sort();
    out
}

fn fill(
    alpha: &LeveledShape,
    p: &FiniteOperad,
    i: usize,
    a: usize,
    colors: &mut Vec<usize>,
    gens: &mut Vec<usize>,
    out: &mut Vec<OperadMorphism>,
) {
    if i == 0 {
        out.push(OperadMorphism { colors: colors.clone(), gens: gens.clone() });
        return;
    }
    if a == alpha.size(i) {
        fill(alpha, p, i - 1, 0, colors, gens, out);
        return;
    }
    let fiber = alpha.map(i).fiber(a);
    let base = alpha.offset(i - 1);
    let out_color = colors[alpha.offset(i) + a];
    for &f in p.ops_with(out_color, fiber.len()) {
        gens[generator_index(alpha, i, a)] = f;
        for (x, &c) in fiber.clone().zip(&p.op(f).inputs) {
            colors[base + x] = c;
        }
        fill(alpha, p, i, a + 1, colors, gens, out);
    }
}

/// The multigraph underlying a finite operad: non-identity operations as edges.
pub fn underlying_multigraph(p: &FiniteOperad) -> (Multigraph, Vec<usize>) {
    let mut edges = Vec::new();
    let mut ops = Vec::new();
    for (i, op) in p.ops().iter().enumerate() {
        if !p.is_identity(i) {
            edges.push(Edge { name: op.name.clone(), inputs: op.inputs.clone(), output: op.output });
            ops.push(i);
        }
    }
    (Multigraph::new(p.colors().clone(), edges).expect("well formed"), ops)
}

/// The counit `F U P → P` on one term; `edge_ops` maps edges to operations.
pub fn counit(p: &FiniteOperad, edge_ops: &[usize], t: &PlanarTerm) -> Result<Option<usize>> {
    match t {
        PlanarTerm::Leaf(c) => Ok(Some(p.identity(*c))),
        PlanarTerm::Node(e, ch) => {
            let mut args = Vec::with_capacity(ch.len());
            for c in ch {
                match counit(p, edge_ops, c)? {
                    Some(x) => args.push(x),
                    None => return Ok(None),
                }
            }
            p.compose(edge_ops[*e], &args)
        }
    }
}
