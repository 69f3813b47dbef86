//! Pretzel links `L(p₁, …, pₙ)`: closed-form band indices for pretzel knots
//! with one even parameter, theta graphs for all-even pretzels, and strand
//! tracing for the component count.

use std::fmt;

use crate::error::{Error, Result};
use crate::seifert_graph::{Sign, SignedMultigraph};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PretzelSpec {
    params: Vec<i64>,
}

impl PretzelSpec {
    pub fn new(params: Vec<i64>) -> Result<Self> {
        if params.len() < 2 {
            return Err(Error::InvalidInput("a pretzel needs at least two parameters".into()));
        }
        if params.contains(&0) {
            return Err(Error::ZeroParam);
        }
        Ok(PretzelSpec { params })
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn is_all_even(&self) -> bool {
        self.params.iter().all(|p| p % 2 == 0)
    }

    pub fn rotated(&self, k: usize) -> PretzelSpec {
        let mut params = self.params.clone();
        let len = params.len();
        params.rotate_left(k % len);
        PretzelSpec { params }
    }
}

impl fmt::Display for PretzelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "L({})", parts.join(","))
    }
}

/// Comma/whitespace separated nonzero integers, at least two.
pub fn parse_pretzel(text: &str) -> Result<PretzelSpec> {
    let params = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Syntax(format!("not an integer: {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    PretzelSpec::new(params)
}

/// A pretzel knot `K(p₁, o₂, …, oₙ)` with its single even parameter first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorollaryInput {
    p1: i64,
    odds: Vec<i64>,
}

/// Which of the four closed-form cases applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorollaryCase {
    /// `n` odd, `α ≠ 0`: `δ + 2`
    OddNonzeroAlpha,
    /// `n` even, `α = 0`: `δ`
    EvenZeroAlpha,
    /// `n` even, `α + b ≠ 0`: `|p₁| + δ`
    EvenUnbalanced,
    /// `n` even, `α + b = 0`: `|p₁| + δ − 2`
    EvenBalanced,
}

impl CorollaryCase {
    pub fn label(self) -> &'static str {
        match self {
            CorollaryCase::OddNonzeroAlpha => "delta + 2 (n odd, alpha != 0)",
            CorollaryCase::EvenZeroAlpha => "delta (n even, alpha = 0)",
            CorollaryCase::EvenUnbalanced => "|p1| + delta (n even, alpha + sign(p1) != 0)",
            CorollaryCase::EvenBalanced => "|p1| + delta - 2 (n even, alpha + sign(p1) = 0)",
        }
    }
}

impl CorollaryInput {
    pub fn new(p1: i64, odds: Vec<i64>) -> Result<Self> {
        if p1 % 2 != 0 || p1.abs() < 2 {
            return Err(Error::InvalidInput(format!("p1 = {p1} must be even with |p1| >= 2")));
        }
        if odds.is_empty() {
            return Err(Error::InvalidInput("need at least one odd parameter".into()));
        }
        if let Some(&o) = odds.iter().find(|&&o| o % 2 == 0 || o.abs() < 3) {
            return Err(Error::InvalidInput(format!("o = {o} must be odd with |o| >= 3")));
        }
        Ok(CorollaryInput { p1, odds })
    }

    /// Rotate a spec so that its single even entry comes first. Fails unless
    /// there is exactly one even parameter.
    pub fn from_spec(spec: &PretzelSpec) -> Result<Self> {
        let evens: Vec<usize> = (0..spec.params().len()).filter(|&i| spec.params()[i] % 2 == 0).collect();
        if evens.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "closed form needs exactly one even parameter, {spec} has {}",
                evens.len()
            )));
        }
        let rotated = spec.rotated(evens[0]);
        CorollaryInput::new(rotated.params()[0], rotated.params()[1..].to_vec())
    }

    pub fn n(&self) -> usize {
        self.odds.len() + 1
    }

    pub fn p1(&self) -> i64 {
        self.p1
    }

    pub fn odds(&self) -> &[i64] {
        &self.odds
    }

    /// `α = Σ sign(oᵢ)`
    pub fn alpha(&self) -> i64 {
        self.odds.iter().map(|o| o.signum()).sum()
    }

    /// `b = sign(p₁)`
    pub fn b(&self) -> i64 {
        self.p1.signum()
    }

    /// `δ = Σ (|oᵢ| − 1)`
    pub fn delta(&self) -> i64 {
        self.odds.iter().map(|o| o.abs() - 1).sum()
    }
}

/// Band index of the pretzel knot, by the closed form for pretzels whose
/// genus equals their canonical genus. Cases are tried in the order listed
/// on [`CorollaryCase`].
pub fn corollary_band_index(c: &CorollaryInput) -> Result<(i64, CorollaryCase)> {
    let (alpha, b, delta) = (c.alpha(), c.b(), c.delta());
    if c.n() % 2 == 1 {
        if alpha != 0 {
            Ok((delta + 2, CorollaryCase::OddNonzeroAlpha))
        } else {
            Err(Error::UncoveredCase(format!(
                "n = {} odd with alpha = 0 has no closed form",
                c.n()
            )))
        }
    } else if alpha == 0 {
        Ok((delta, CorollaryCase::EvenZeroAlpha))
    } else if alpha + b != 0 {
        Ok((c.p1.abs() + delta, CorollaryCase::EvenUnbalanced))
    } else {
        Ok((c.p1.abs() + delta - 2, CorollaryCase::EvenBalanced))
    }
}

/// Seifert graph of the canonical surface of an all-even pretzel: two hubs
/// (vertices 0 and 1) joined by one path per parameter, path `i` having
/// `|pᵢ|` edges listed from hub 0 to hub 1.
///
/// Edges of path `i` carry `−sign(pᵢ)`, or `sign(pᵢ)` with `invert_signs`.
pub fn theta_graph(spec: &PretzelSpec, invert_signs: bool) -> Result<SignedMultigraph> {
    if let Some(&p) = spec.params().iter().find(|&&p| p % 2 != 0) {
        return Err(Error::OddParam(p));
    }
    let internal: usize = spec.params().iter().map(|p| p.unsigned_abs() as usize - 1).sum();
    let mut g = SignedMultigraph::new(2 + internal)?;
    let mut next = 2;
    for &p in spec.params() {
        let sign = if invert_signs { Sign::of(p) } else { Sign::of(-p) };
        let mut prev = 0;
        for _ in 0..p.unsigned_abs() - 1 {
            g.add_edge(prev, next, sign)?;
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1, sign)?;
    }
    Ok(g)
}

/// Component count of the standard pretzel diagram.
///
/// Tangle `i` has endpoints NW, NE, SW, SE; an even twist joins NW–SW and
/// NE–SE, an odd twist NW–SE and NE–SW. Closing arcs join NE of tangle `i` to
/// NW of tangle `i+1` and SE of `i` to SW of `i+1`, cyclically.
pub fn trace_components(spec: &PretzelSpec) -> usize {
    const NW: usize = 0;
    const NE: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;
    let n = spec.params().len();
    let node = |tangle: usize, corner: usize| 4 * (tangle % n) + corner;
    let mut parent: Vec<usize> = (0..4 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut join = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    };
    for (i, &p) in spec.params().iter().enumerate() {
        if p % 2 == 0 {
            join(node(i, NW), node(i, SW));
            join(node(i, NE), node(i, SE));
        } else {
            join(node(i, NW), node(i, SE));
            join(node(i, NE), node(i, SW));
        }
        join(node(i, NE), node(i + 1, NW));
        join(node(i, SE), node(i + 1, SW));
    }
    let mut roots: Vec<usize> = (0..4 * n).map(|x| find(&mut parent, x)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}
