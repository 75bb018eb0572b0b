//! The reduction homomorphisms from constant located words to positive
//! integers, the derived progression parameters they induce, and pullback
//! colorings along them.
//!
//! Three kinds are supported:
//!   - additive       f(w) = 1 + sum over entries of the symbol value
//!   - multiplicative f(w) = product of t^w(t) over the domain
//!   - affine(A, D)   f(w) = product of (A + tD)^w(t) over the domain
//!
//! Pushing a monochromatic line through such a map transports it onto a
//! monochromatic arithmetic (resp. geo-arithmetic) integer configuration;
//! `derived_params` computes the exact parameters of that image and
//! `identity_check` re-verifies the underlying algebraic identity.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::search::Coloring;
use crate::universe::Universe;
use crate::words::{LocatedWord, Symbol, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("reduction applies to constant words only; {0} contains the variable")]
    VariableInConstantReduction(LocatedWord),
    #[error("derived parameters are not defined for the additive reduction")]
    UnsupportedKind,
    #[error("base coloring has no color for {0}")]
    MissingBaseColor(BigUint),
    #[error("invalid base coloring: {0}")]
    InvalidBase(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Which homomorphism to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReductionKind {
    Additive,
    Multiplicative,
    /// f(w) = prod (base + t*step)^w(t); both parameters must be >= 1.
    Affine { base: u64, step: u64 },
}

impl ReductionKind {
    pub fn affine(base: u64, step: u64) -> Self {
        assert!(base >= 1 && step >= 1, "affine parameters must be positive");
        ReductionKind::Affine { base, step }
    }
}

/// The image parameters (b, a, d) of a pushed-through extended line: the
/// monochromatic integer set is {b (a + i d)^j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedTriple {
    pub b_bar: BigUint,
    pub a_bar: BigUint,
    pub d_bar: BigUint,
}

fn symbol_value(w: &LocatedWord, sym: Symbol) -> Result<u32, ReduceError> {
    match sym {
        Symbol::Const(c) => Ok(c),
        Symbol::Var => Err(ReduceError::VariableInConstantReduction(w.clone())),
    }
}

/// Applies the reduction map to a constant word. Empty sums give 1 (the
/// additive map adds one), empty products give 1.
pub fn reduce(kind: ReductionKind, w: &LocatedWord) -> Result<BigUint, ReduceError> {
    match kind {
        ReductionKind::Additive => {
            let mut acc: u64 = 1;
            for (_, sym) in w.entries() {
                acc += u64::from(symbol_value(w, sym)?);
            }
            Ok(BigUint::from(acc))
        }
        ReductionKind::Multiplicative => {
            let mut acc: BigUint = One::one();
            for (pos, sym) in w.entries() {
                acc *= BigUint::from(pos).pow(symbol_value(w, sym)?);
            }
            Ok(acc)
        }
        ReductionKind::Affine { base, step } => {
            let mut acc: BigUint = One::one();
            for (pos, sym) in w.entries() {
                let factor = BigUint::from(base + u64::from(pos) * step);
                acc *= factor.pow(symbol_value(w, sym)?);
            }
            Ok(acc)
        }
    }
}

/// The additive image of a plain line: the pair (f(alpha), |gamma|), i.e.
/// the start and difference of the image progression.
pub fn additive_derived(
    alpha: &LocatedWord,
    gamma: &BTreeSet<u32>,
) -> Result<(BigUint, u64), ReduceError> {
    Ok((reduce(ReductionKind::Additive, alpha)?, gamma.len() as u64))
}

/// The derived (b, a, d) for the multiplicative and affine reductions:
///
///   multiplicative: b = f(alpha),        a = a * prod(gamma),
///                   d = d * prod(gamma)
///   affine(A, D):   b = f(alpha),        a = (A + aD) * prod(A + tD),
///                   d = d * D * prod(A + tD)
///
/// where the products run over t in gamma and (a, d) describe the
/// progression F = {a, a+d, ..., a+kd} of the extended line.
pub fn derived_params(
    kind: ReductionKind,
    alpha: &LocatedWord,
    gamma: &BTreeSet<u32>,
    a: u64,
    d: u64,
) -> Result<DerivedTriple, ReduceError> {
    if let Some(&p) = gamma.iter().find(|p| alpha.get(**p).is_some()) {
        return Err(WordError::UndefinedProduct(p).into());
    }
    match kind {
        ReductionKind::Additive => Err(ReduceError::UnsupportedKind),
        ReductionKind::Multiplicative => {
            let b_bar = reduce(kind, alpha)?;
            let gamma_prod: BigUint = gamma
                .iter()
                .fold(One::one(), |acc: BigUint, &t| acc * BigUint::from(t));
            Ok(DerivedTriple {
                b_bar,
                a_bar: BigUint::from(a) * &gamma_prod,
                d_bar: BigUint::from(d) * &gamma_prod,
            })
        }
        ReductionKind::Affine { base, step } => {
            let b_bar = reduce(kind, alpha)?;
            let gamma_prod: BigUint = gamma.iter().fold(One::one(), |acc: BigUint, &t| {
                acc * BigUint::from(base + u64::from(t) * step)
            });
            Ok(DerivedTriple {
                b_bar,
                a_bar: BigUint::from(base + a * step) * &gamma_prod,
                d_bar: BigUint::from(d) * BigUint::from(step) * &gamma_prod,
            })
        }
    }
}

/// Re-verifies the defining identity of the reduction, exactly:
///
///   additive:        f(alpha U gamma x {i}) = f(alpha) + i * |gamma|
///   multiplicative / affine:
///                    f(alpha U (gamma U {a+id}) x {j}) = b (a_ + i d_)^j
///
/// with (b, a_, d_) from `derived_params`. Returns the comparison result;
/// errors mirror those of `combine` when the parts are not disjoint.
pub fn identity_check(
    kind: ReductionKind,
    alpha: &LocatedWord,
    gamma: &BTreeSet<u32>,
    a: u64,
    d: u64,
    i: u32,
    j: u32,
) -> Result<bool, ReduceError> {
    match kind {
        ReductionKind::Additive => {
            let assembled = alpha.extend_on(gamma, Symbol::Const(i))?;
            let lhs = reduce(kind, &assembled)?;
            let (start, diff) = additive_derived(alpha, gamma)?;
            Ok(lhs == start + BigUint::from(u64::from(i) * diff))
        }
        ReductionKind::Multiplicative | ReductionKind::Affine { .. } => {
            let t = a + u64::from(i) * d;
            let t: u32 = t
                .try_into()
                .map_err(|_| WordError::OutOfRange(format!("position a+id = {t} too large")))?;
            let mut moving = gamma.clone();
            if !moving.insert(t) {
                return Err(WordError::UndefinedProduct(t).into());
            }
            let assembled = alpha.extend_on(&moving, Symbol::Const(j))?;
            let lhs = reduce(kind, &assembled)?;
            let params = derived_params(kind, alpha, gamma, a, d)?;
            let rhs =
                params.b_bar * (params.a_bar + BigUint::from(i) * params.d_bar).pow(j);
            Ok(lhs == rhs)
        }
    }
}

/// A coloring of the positive integers, given either as residue classes
/// modulo q or as an explicit finite map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseColoring {
    /// n gets color `colors[n mod q]`; `colors` has length q.
    Mod {
        #[serde(rename = "mod")]
        q: u64,
        colors: Vec<u32>,
    },
    /// Explicit finite map, keyed by decimal strings.
    Map { map: BTreeMap<String, u32> },
}

impl BaseColoring {
    pub fn modular(q: u64, colors: Vec<u32>) -> Self {
        assert!(q >= 1 && colors.len() == q as usize, "need one color per residue");
        BaseColoring::Mod { q, colors }
    }

    pub fn color_of(&self, n: &BigUint) -> Option<u32> {
        match self {
            BaseColoring::Mod { q, colors } => {
                let idx = (n % BigUint::from(*q)).to_u64_digits();
                let idx = idx.first().copied().unwrap_or(0) as usize;
                colors.get(idx).copied()
            }
            BaseColoring::Map { map } => map.get(&n.to_string()).copied(),
        }
    }

    /// Largest color mentioned; 1 when none are.
    pub fn num_colors(&self) -> u32 {
        match self {
            BaseColoring::Mod { colors, .. } => colors.iter().copied().max().unwrap_or(1),
            BaseColoring::Map { map } => map.values().copied().max().unwrap_or(1),
        }
    }
}

/// Colors every word of the universe with the base color of its reduction
/// image. Errors when the base coloring misses some image value.
pub fn pullback_coloring(
    kind: ReductionKind,
    base: &BaseColoring,
    universe: &Universe,
) -> Result<Coloring, ReduceError> {
    let mut colors = Vec::with_capacity(universe.size() as usize);
    for word in universe.iter() {
        let value = reduce(kind, &word)?;
        let color = base
            .color_of(&value)
            .ok_or(ReduceError::MissingBaseColor(value))?;
        colors.push(color);
    }
    Coloring::new(base.num_colors(), colors).map_err(|e| ReduceError::InvalidBase(e.to_string()))
}
