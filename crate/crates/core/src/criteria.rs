//! Decision criteria over credal sets, evaluated in exact arithmetic.
//!
//! Each criterion yields an intensional [`ChoiceFn`] over acts on the state
//! space of its belief. Ties are kept: choice sets are full argmax/argmin sets.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::act::{Act, OutcomeSet};
use crate::choice::{ChoiceFn, Menu};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rat};
use crate::space::{FinSpace, Product};

/// A credal set given by its extreme points over the points of `space`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CredalSet {
    space: Arc<FinSpace>,
    vertices: Vec<Vec<Rat>>,
}

impl CredalSet {
    pub fn new(space: Arc<FinSpace>, vertices: Vec<Vec<Rat>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidBelief("no extreme points".into()));
        }
        let mut unique: Vec<Vec<Rat>> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if v.len() != space.len() {
                return Err(Error::InvalidBelief(format!(
                    "vertex has {} entries, the state space has {}",
                    v.len(),
                    space.len()
                )));
            }
            if v.iter().any(|p| *p < Rat::zero()) {
                return Err(Error::InvalidBelief(format!(
                    "negative probability in {}",
                    render_vertex(&v)
                )));
            }
            let total: Rat = v.iter().sum();
            if total != Rat::one() {
                return Err(Error::InvalidBelief(format!(
                    "{} sums to {}",
                    render_vertex(&v),
                    format_rational(&total)
                )));
            }
            if !unique.contains(&v) {
                unique.push(v);
            }
        }
        Ok(CredalSet {
            space,
            vertices: unique,
        })
    }

    pub fn point(space: Arc<FinSpace>, probabilities: Vec<Rat>) -> Result<Self> {
        Self::new(space, vec![probabilities])
    }

    /// Every distribution on the state space.
    pub fn simplex(space: Arc<FinSpace>) -> Self {
        let n = space.len();
        let vertices = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| if s == t { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        CredalSet { space, vertices }
    }

    /// Two-state beliefs with the probability of the second state in
    /// `[lower, upper]`.
    pub fn interval(space: Arc<FinSpace>, lower: Rat, upper: Rat) -> Result<Self> {
        if space.len() != 2 {
            return Err(Error::InvalidBelief(
                "interval beliefs need exactly two states".into(),
            ));
        }
        if lower > upper || lower < Rat::zero() || upper > Rat::one() {
            return Err(Error::InvalidBelief(format!(
                "[{}, {}] is not a probability interval",
                format_rational(&lower),
                format_rational(&upper)
            )));
        }
        Self::new(
            space,
            vec![vec![Rat::one() - lower, lower], vec![Rat::one() - upper, upper]],
        )
    }

    /// Extends a belief about the first factor of `states` with no
    /// information about the second factor: the extreme points are every
    /// vertex pushed onto `(a, τ(a))` for every assignment `τ`.
    pub fn vacuous_extension(&self, states: &Product) -> Result<Self> {
        if **states.first.codomain() != *self.space {
            return Err(Error::SpaceMismatch(
                "vacuous extension: first factor differs from the belief's space".into(),
            ));
        }
        let na = self.space.len();
        let nt = states.second.codomain().len();
        let mut vertices = Vec::new();
        for v in &self.vertices {
            let support: Vec<usize> = (0..na).filter(|&a| !v[a].is_zero()).collect();
            let mut tau = vec![0usize; support.len()];
            loop {
                let mut w = vec![Rat::zero(); na * nt];
                for (k, &a) in support.iter().enumerate() {
                    w[states.pair_index(a, tau[k])] = v[a];
                }
                vertices.push(w);
                let mut k = tau.len();
                let mut done = true;
                while k > 0 {
                    k -= 1;
                    tau[k] += 1;
                    if tau[k] < nt {
                        done = false;
                        break;
                    }
                    tau[k] = 0;
                }
                if done {
                    break;
                }
            }
        }
        Self::new(states.space.clone(), vertices)
    }

    pub fn space(&self) -> &Arc<FinSpace> {
        &self.space
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn render(&self) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| render_vertex(v)).collect();
        format!("hull{{{}}}", vs.join(", "))
    }

    fn check_act(&self, act: &Act) -> Result<()> {
        if Arc::ptr_eq(act.space(), &self.space) || **act.space() == *self.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(
                "act is not defined on the belief's state space".into(),
            ))
        }
    }
}

fn render_vertex(v: &[Rat]) -> String {
    let entries: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", entries.join(","))
}

/// One player's utilities over the outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityView {
    player: usize,
    values: Vec<Rat>,
}

impl UtilityView {
    pub fn new(player: usize, values: Vec<Rat>) -> Self {
        UtilityView { player, values }
    }

    pub fn from_outcomes(outcomes: &OutcomeSet, player: usize) -> Result<Self> {
        if !outcomes.has_utilities() || player >= outcomes.players() {
            return Err(Error::InvalidArgument(format!(
                "outcomes carry no utility for player {player}"
            )));
        }
        let values = (0..outcomes.len())
            .map(|z| outcomes.utility(z, player).expect("checked above"))
            .collect();
        Ok(UtilityView { player, values })
    }

    pub fn player(&self) -> usize {
        self.player
    }

    pub fn of(&self, outcome: usize) -> Rat {
        self.values[outcome]
    }

    fn check_act(&self, act: &Act) -> Result<()> {
        match act.table().iter().find(|&&z| z >= self.values.len()) {
            Some(&z) => Err(Error::IndexOutOfRange {
                index: z,
                len: self.values.len(),
            }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    ExpectedUtility,
    Maxmin,
    Regret,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::ExpectedUtility => "eu",
            Criterion::Maxmin => "maxmin",
            Criterion::Regret => "regret",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "eu" | "expected-utility" => Ok(Criterion::ExpectedUtility),
            "maxmin" | "mm" => Ok(Criterion::Maxmin),
            "regret" | "minimax-regret" => Ok(Criterion::Regret),
            other => Err(Error::InvalidArgument(format!("unknown criterion `{other}`"))),
        }
    }
}

pub fn expected_utility(act: &Act, probabilities: &[Rat], u: &UtilityView) -> Rat {
    act.table()
        .iter()
        .zip(probabilities)
        .map(|(&z, p)| *p * u.of(z))
        .sum()
}

/// Worst-case expected utility of each act in the menu.
pub fn maxmin_values(belief: &CredalSet, u: &UtilityView, menu: &Menu<Act>) -> Result<Vec<Rat>> {
    menu.iter()
        .map(|f| {
            belief.check_act(f)?;
            u.check_act(f)?;
            Ok(belief
                .vertices
                .iter()
                .map(|v| expected_utility(f, v, u))
                .min()
                .expect("credal sets are nonempty"))
        })
        .collect()
}

/// Worst-case expected regret of each act, where the regret at a state is
/// the gap to the best outcome any act of the menu achieves there.
pub fn regret_values(belief: &CredalSet, u: &UtilityView, menu: &Menu<Act>) -> Result<Vec<Rat>> {
    for f in menu {
        belief.check_act(f)?;
        u.check_act(f)?;
    }
    let states = belief.space.len();
    let best: Vec<Rat> = (0..states)
        .map(|s| menu.iter().map(|g| u.of(g.at(s))).max().unwrap_or_else(Rat::zero))
        .collect();
    Ok(menu
        .iter()
        .map(|f| {
            belief
                .vertices
                .iter()
                .map(|v| (0..states).map(|s| v[s] * (best[s] - u.of(f.at(s)))).sum::<Rat>())
                .max()
                .expect("credal sets are nonempty")
        })
        .collect())
}

fn select(menu: &Menu<Act>, values: &[Rat], best: Option<Rat>) -> Menu<Act> {
    match best {
        None => Menu::empty(),
        Some(b) => menu
            .iter()
            .zip(values)
            .filter(|(_, v)| **v == b)
            .map(|(f, _)| f.clone())
            .collect(),
    }
}

fn signature(kind: Criterion, belief: &CredalSet, u: &UtilityView) -> String {
    let utils: Vec<String> = u.values.iter().map(format_rational).collect();
    format!(
        "{kind}|{}|{}|p{}:{}",
        belief.space,
        belief.render(),
        u.player,
        utils.join(",")
    )
}

/// Expected-utility maximization under a single prior.
pub fn eu_choice(belief: &CredalSet, u: &UtilityView) -> Result<ChoiceFn<Act>> {
    if !belief.is_point() {
        return Err(Error::InvalidBelief(format!(
            "expected utility needs a single prior, got {} extreme points",
            belief.vertices.len()
        )));
    }
    let sig = signature(Criterion::ExpectedUtility, belief, u);
    let (belief, u) = (belief.clone(), u.clone());
    Ok(ChoiceFn::intensional(Some(sig), move |k: &Menu<Act>| {
        let values = maxmin_values(&belief, &u, k)?;
        Ok(select(k, &values, values.iter().max().copied()))
    }))
}

/// Maximization of the worst expected utility over the credal set. Expected
/// utility is linear in the prior, so the minimum sits at an extreme point.
pub fn maxmin_choice(belief: &CredalSet, u: &UtilityView) -> ChoiceFn<Act> {
    let sig = signature(Criterion::Maxmin, belief, u);
    let (belief, u) = (belief.clone(), u.clone());
    ChoiceFn::intensional(Some(sig), move |k: &Menu<Act>| {
        let values = maxmin_values(&belief, &u, k)?;
        Ok(select(k, &values, values.iter().max().copied()))
    })
}

/// Minimization of the worst expected menu-relative regret.
pub fn regret_choice(belief: &CredalSet, u: &UtilityView) -> ChoiceFn<Act> {
    let sig = signature(Criterion::Regret, belief, u);
    let (belief, u) = (belief.clone(), u.clone());
    ChoiceFn::intensional(Some(sig), move |k: &Menu<Act>| {
        let values = regret_values(&belief, &u, k)?;
        Ok(select(k, &values, values.iter().min().copied()))
    })
}

pub fn criterion_choice(kind: Criterion, belief: &CredalSet, u: &UtilityView) -> Result<ChoiceFn<Act>> {
    match kind {
        Criterion::ExpectedUtility => eu_choice(belief, u),
        Criterion::Maxmin => Ok(maxmin_choice(belief, u)),
        Criterion::Regret => Ok(regret_choice(belief, u)),
    }
}
