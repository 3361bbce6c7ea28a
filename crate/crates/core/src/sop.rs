// SPDX-License-Identifier: Apache-2.0
//! Irredundant sum-of-products covers and algebraic factoring.

use std::cmp::Ordering;
use std::fmt;

use crate::recipe::{Net, NetLit, NET_FALSE, NET_TRUE};
use crate::truth::TruthTable;

/// A product term: `pos` holds variables appearing uncomplemented, `neg`
/// the complemented ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cube {
    pub pos: u32,
    pub neg: u32,
}

impl Cube {
    pub const UNIVERSE: Cube = Cube { pos: 0, neg: 0 };

    pub fn literal(var: usize, compl: bool) -> Cube {
        if compl {
            Cube {
                pos: 0,
                neg: 1 << var,
            }
        } else {
            Cube {
                pos: 1 << var,
                neg: 0,
            }
        }
    }

    pub fn num_literals(&self) -> usize {
        (self.pos.count_ones() + self.neg.count_ones()) as usize
    }

    pub fn contains(&self, other: &Cube) -> bool {
        self.pos & other.pos == other.pos && self.neg & other.neg == other.neg
    }

    pub fn without(&self, other: &Cube) -> Cube {
        Cube {
            pos: self.pos & !other.pos,
            neg: self.neg & !other.neg,
        }
    }

    pub fn union(&self, other: &Cube) -> Cube {
        Cube {
            pos: self.pos | other.pos,
            neg: self.neg | other.neg,
        }
    }

    pub fn intersect(&self, other: &Cube) -> Cube {
        Cube {
            pos: self.pos & other.pos,
            neg: self.neg & other.neg,
        }
    }

    pub fn eval(&self, assignment: usize) -> bool {
        let a = assignment as u32;
        a & self.pos == self.pos && !a & self.neg == self.neg
    }

    /// Literals as `2 * var + complemented`, ascending.
    pub fn literals(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.num_literals());
        for v in 0..32 {
            if self.pos >> v & 1 == 1 {
                out.push(2 * v);
            }
            if self.neg >> v & 1 == 1 {
                out.push(2 * v + 1);
            }
        }
        out
    }
}

fn lit_cube(lit: u32) -> Cube {
    Cube::literal((lit >> 1) as usize, lit & 1 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sop {
    pub arity: usize,
    pub cubes: Vec<Cube>,
}

impl Sop {
    pub fn num_literals(&self) -> usize {
        self.cubes.iter().map(Cube::num_literals).sum()
    }

    pub fn eval(&self, assignment: usize) -> bool {
        self.cubes.iter().any(|c| c.eval(assignment))
    }

    pub fn truth(&self) -> TruthTable {
        TruthTable::from_fn(self.arity, |i| self.eval(i))
    }
}

/// Minato-Morreale irredundant cover of `tt`.
pub fn isop(tt: &TruthTable) -> Sop {
    let mut cubes = Vec::new();
    isop_rec(tt, tt, tt.arity(), &mut cubes);
    Sop {
        arity: tt.arity(),
        cubes,
    }
}

/// Covers some function between `lower` and `upper`, using only variables
/// below `top`. Returns the function covered.
fn isop_rec(lower: &TruthTable, upper: &TruthTable, top: usize, out: &mut Vec<Cube>) -> TruthTable {
    if lower.is_zero() {
        return TruthTable::zero(lower.arity());
    }
    if upper.is_ones() {
        out.push(Cube::UNIVERSE);
        return TruthTable::ones(lower.arity());
    }
    let mut v = top;
    loop {
        assert!(v > 0, "non-constant bounds must depend on a variable");
        v -= 1;
        if lower.depends_on(v) || upper.depends_on(v) {
            break;
        }
    }
    let l0 = lower.cofactor(v, false);
    let l1 = lower.cofactor(v, true);
    let u0 = upper.cofactor(v, false);
    let u1 = upper.cofactor(v, true);

    let start0 = out.len();
    let f0 = isop_rec(&l0.and_not(&u1), &u0, v, out);
    for c in &mut out[start0..] {
        c.neg |= 1 << v;
    }
    let start1 = out.len();
    let f1 = isop_rec(&l1.and_not(&u0), &u1, v, out);
    for c in &mut out[start1..] {
        c.pos |= 1 << v;
    }
    let rest_lower = l0.and_not(&f0).or(&l1.and_not(&f1));
    let rest_upper = u0.and(&u1);
    let fs = isop_rec(&rest_lower, &rest_upper, v, out);

    let x = TruthTable::var(lower.arity(), v);
    f0.and_not(&x).or(&f1.and(&x)).or(&fs)
}

/// Expression tree of a factored form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factored {
    Const(bool),
    Lit { var: usize, compl: bool },
    And(Vec<Factored>),
    Or(Vec<Factored>),
}

impl Factored {
    pub fn num_literals(&self) -> usize {
        match self {
            Factored::Const(_) => 0,
            Factored::Lit { .. } => 1,
            Factored::And(xs) | Factored::Or(xs) => xs.iter().map(Factored::num_literals).sum(),
        }
    }

    pub fn eval(&self, assignment: usize) -> bool {
        match self {
            Factored::Const(b) => *b,
            Factored::Lit { var, compl } => ((assignment >> var) & 1 == 1) != *compl,
            Factored::And(xs) => xs.iter().all(|x| x.eval(assignment)),
            Factored::Or(xs) => xs.iter().any(|x| x.eval(assignment)),
        }
    }

    /// Appends the expression to `net`, mapping variable `i` to `inputs[i]`.
    pub fn compile(&self, net: &mut Net, inputs: &[NetLit]) -> NetLit {
        match self {
            Factored::Const(false) => NET_FALSE,
            Factored::Const(true) => NET_TRUE,
            Factored::Lit { var, compl } => inputs[*var] ^ (*compl as u32),
            Factored::And(xs) => {
                let ops: Vec<NetLit> = xs.iter().map(|x| x.compile(net, inputs)).collect();
                net.and_all(&ops)
            }
            Factored::Or(xs) => {
                let ops: Vec<NetLit> = xs.iter().map(|x| x.compile(net, inputs)).collect();
                net.or_all(&ops)
            }
        }
    }

    fn and2(a: Factored, b: Factored) -> Factored {
        let mut items = Vec::new();
        for x in [a, b] {
            match x {
                Factored::Const(true) => {}
                Factored::And(xs) => items.extend(xs),
                other => items.push(other),
            }
        }
        match items.len() {
            0 => Factored::Const(true),
            1 => items.pop().unwrap(),
            _ => Factored::And(items),
        }
    }

    fn or2(a: Factored, b: Factored) -> Factored {
        let mut items = Vec::new();
        for x in [a, b] {
            match x {
                Factored::Const(false) => {}
                Factored::Or(xs) => items.extend(xs),
                other => items.push(other),
            }
        }
        match items.len() {
            0 => Factored::Const(false),
            1 => items.pop().unwrap(),
            _ => Factored::Or(items),
        }
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factored::Const(b) => write!(f, "{}", *b as u8),
            Factored::Lit { var, compl } => {
                if *compl {
                    write!(f, "!")?;
                }
                write!(f, "x{var}")
            }
            Factored::And(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    match x {
                        Factored::Or(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Factored::Or(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// A factored form of a function over `arity` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    pub arity: usize,
    pub expr: Factored,
}

impl FactoredForm {
    pub fn num_literals(&self) -> usize {
        self.expr.num_literals()
    }

    pub fn eval(&self, assignment: usize) -> bool {
        self.expr.eval(assignment)
    }

    pub fn truth(&self) -> TruthTable {
        TruthTable::from_fn(self.arity, |i| self.eval(i))
    }
}

/// Algebraically factors a cover.
pub fn factor(sop: &Sop) -> FactoredForm {
    let expr = gfactor(&sop.cubes);
    let expr = if expr.num_literals() > sop.num_literals() {
        sop_expr(&sop.cubes)
    } else {
        expr
    };
    FactoredForm {
        arity: sop.arity,
        expr,
    }
}

fn cube_expr(c: &Cube) -> Factored {
    let lits: Vec<Factored> = c
        .literals()
        .into_iter()
        .map(|l| Factored::Lit {
            var: (l >> 1) as usize,
            compl: l & 1 == 1,
        })
        .collect();
    match lits.len() {
        0 => Factored::Const(true),
        1 => lits.into_iter().next().unwrap(),
        _ => Factored::And(lits),
    }
}

fn sop_expr(cubes: &[Cube]) -> Factored {
    if cubes.contains(&Cube::UNIVERSE) {
        return Factored::Const(true);
    }
    let terms: Vec<Factored> = cubes.iter().map(cube_expr).collect();
    match terms.len() {
        0 => Factored::Const(false),
        1 => terms.into_iter().next().unwrap(),
        _ => Factored::Or(terms),
    }
}

/// Literal occurrence counts, indexed by `2 * var + complemented`.
fn literal_counts(cubes: &[Cube]) -> Vec<usize> {
    let mut counts = vec![0; 64];
    for c in cubes {
        for l in c.literals() {
            counts[l as usize] += 1;
        }
    }
    counts
}

/// Most frequent literal, lowest literal on ties; `None` if no literal
/// occurs at least twice.
fn best_literal(cubes: &[Cube], among: Option<&Cube>) -> Option<u32> {
    let counts = literal_counts(cubes);
    let mut best: Option<(usize, u32)> = None;
    for (l, &n) in counts.iter().enumerate() {
        if n < 2 {
            continue;
        }
        if let Some(c) = among {
            if !c.contains(&lit_cube(l as u32)) {
                continue;
            }
        }
        if best.is_none_or(|(bn, _)| n > bn) {
            best = Some((n, l as u32));
        }
    }
    best.map(|(_, l)| l)
}

fn common_cube(cubes: &[Cube]) -> Cube {
    cubes
        .iter()
        .skip(1)
        .fold(cubes.first().copied().unwrap_or_default(), |acc, c| {
            acc.intersect(c)
        })
}

fn make_cube_free(cubes: &[Cube]) -> Vec<Cube> {
    let cc = common_cube(cubes);
    cubes.iter().map(|c| c.without(&cc)).collect()
}

fn is_cube_free(cubes: &[Cube]) -> bool {
    cubes.len() > 1 && common_cube(cubes) == Cube::UNIVERSE
}

/// Weak algebraic division: `f = q * d + r`.
fn divide(f: &[Cube], d: &[Cube]) -> (Vec<Cube>, Vec<Cube>) {
    let mut quotient: Option<Vec<Cube>> = None;
    for dc in d {
        let q: Vec<Cube> = f
            .iter()
            .filter(|fc| fc.contains(dc))
            .map(|fc| fc.without(dc))
            .collect();
        quotient = Some(match quotient {
            None => q,
            Some(prev) => prev.into_iter().filter(|c| q.contains(c)).collect(),
        });
        if quotient.as_ref().is_some_and(|q| q.is_empty()) {
            break;
        }
    }
    let mut q = quotient.unwrap_or_default();
    q.sort();
    q.dedup();
    let mut product = Vec::new();
    for qc in &q {
        for dc in d {
            product.push(qc.union(dc));
        }
    }
    let r = f.iter().filter(|c| !product.contains(c)).copied().collect();
    (q, r)
}

/// Level-0 kernel reached by repeated division by the most frequent literal.
fn quick_divisor(cubes: &[Cube]) -> Option<Vec<Cube>> {
    let mut k = cubes.to_vec();
    let mut divided = false;
    while let Some(l) = best_literal(&k, None) {
        let lc = lit_cube(l);
        let (q, _) = divide(&k, &[lc]);
        k = make_cube_free(&q);
        divided = true;
    }
    divided.then_some(k)
}

fn gfactor(cubes: &[Cube]) -> Factored {
    if cubes.is_empty() {
        return Factored::Const(false);
    }
    if cubes.contains(&Cube::UNIVERSE) {
        return Factored::Const(true);
    }
    if cubes.len() == 1 {
        return cube_expr(&cubes[0]);
    }
    let Some(d) = quick_divisor(cubes) else {
        return sop_expr(cubes);
    };
    let (q, _) = divide(cubes, &d);
    if q.len() == 1 {
        return literal_factor(cubes, &q[0]);
    }
    let q = make_cube_free(&q);
    let (d2, r) = divide(cubes, &q);
    if is_cube_free(&d2) {
        let prod = Factored::and2(gfactor(&q), gfactor(&d2));
        Factored::or2(prod, gfactor(&r))
    } else {
        literal_factor(cubes, &common_cube(&d2).union(&q[0]))
    }
}

fn literal_factor(cubes: &[Cube], within: &Cube) -> Factored {
    let l = best_literal(cubes, Some(within))
        .or_else(|| best_literal(cubes, None))
        .expect("some literal occurs twice");
    let (q, r) = divide(cubes, &[lit_cube(l)]);
    let cc = common_cube(&q);
    let rest = make_cube_free(&q);
    let head = cube_expr(&lit_cube(l).union(&cc));
    let prod = Factored::and2(head, gfactor(&rest));
    Factored::or2(prod, gfactor(&r))
}

/// Factored form and output polarity for `tt`, choosing between the cover
/// of the function and of its complement by literal count (ties keep the
/// function itself).
pub fn factor_best(tt: &TruthTable) -> (FactoredForm, bool) {
    let pos = factor(&isop(tt));
    let neg = factor(&isop(&tt.not()));
    match neg.num_literals().cmp(&pos.num_literals()) {
        Ordering::Less => (neg, true),
        _ => (pos, false),
    }
}

/// Compiles a factored form (complemented when `compl`) into a fresh net
/// over `arity` inputs and returns the net with its output literal.
pub fn compile_form(form: &FactoredForm, compl: bool) -> (Net, NetLit) {
    let mut net = Net::new(form.arity);
    let inputs: Vec<NetLit> = (0..form.arity).map(|i| net.input(i)).collect();
    let out = form.expr.compile(&mut net, &inputs) ^ compl as u32;
    (net, out)
}
