//! Two-player normal-form games and rationalizability under EU, maxmin and
//! minimax regret.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::act::Act;
use crate::choice::Menu;
use crate::criteria::{criterion_choice, CredalSet, Criterion};
use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use crate::space::{FinSpace, MeasurableMap};
use crate::structure::{example_frame, GameFrame, Player};

/// A searchable family of beliefs over a finite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeliefFamily {
    /// Priors with probabilities in multiples of `1/N`.
    GridPoints(usize),
    /// The set of all priors.
    FullSimplex,
    /// Intervals `P(second) ∈ [a/N, b/N]`, `a < b`; empty unless there are
    /// exactly two states.
    GridIntervals(usize),
    /// Hulls of 2 to `k` grid priors.
    GridHulls(usize, usize),
}

impl BeliefFamily {
    pub fn generate(&self, space: &Arc<FinSpace>) -> Result<Vec<CredalSet>> {
        match *self {
            BeliefFamily::GridPoints(n) => grid(space.len(), n)?
                .into_iter()
                .map(|v| CredalSet::point(space.clone(), v))
                .collect(),
            BeliefFamily::FullSimplex => Ok(vec![CredalSet::simplex(space.clone())]),
            BeliefFamily::GridIntervals(n) => {
                if space.len() != 2 {
                    return Ok(Vec::new());
                }
                let n = positive(n)?;
                let mut out = Vec::new();
                for a in 0..=n {
                    for b in a + 1..=n {
                        let (lo, hi) = (rat(a as i64, n as i64), rat(b as i64, n as i64));
                        out.push(CredalSet::interval(space.clone(), lo, hi)?);
                    }
                }
                Ok(out)
            }
            BeliefFamily::GridHulls(n, k) => {
                let points = grid(space.len(), n)?;
                let mut out = Vec::new();
                let mut pick = Vec::new();
                hulls(space, &points, 0, k, &mut pick, &mut out)?;
                Ok(out)
            }
        }
    }
}

fn positive(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::InvalidArgument("grid resolution must be positive".into()))
    } else {
        Ok(n)
    }
}

/// All priors with coordinates in multiples of `1/n`.
fn grid(states: usize, n: usize) -> Result<Vec<Vec<Rat>>> {
    let n = positive(n)?;
    let mut out = Vec::new();
    let mut counts = vec![0usize; states];
    fn fill(k: usize, left: usize, counts: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<Rat>>) {
        if k + 1 == counts.len() {
            counts[k] = left;
            out.push(counts.iter().map(|&c| rat(c as i64, n as i64)).collect());
            return;
        }
        for c in (0..=left).rev() {
            counts[k] = c;
            fill(k + 1, left - c, counts, n, out);
        }
    }
    fill(0, n, &mut counts, n, &mut out);
    Ok(out)
}

fn hulls(
    space: &Arc<FinSpace>,
    points: &[Vec<Rat>],
    from: usize,
    k: usize,
    pick: &mut Vec<usize>,
    out: &mut Vec<CredalSet>,
) -> Result<()> {
    if pick.len() >= 2 {
        let vertices = pick.iter().map(|&i| points[i].clone()).collect();
        out.push(CredalSet::new(space.clone(), vertices)?);
    }
    if pick.len() == k {
        return Ok(());
    }
    for i in from..points.len() {
        pick.push(i);
        hulls(space, points, i + 1, k, pick, out)?;
        pick.pop();
    }
    Ok(())
}

impl fmt::Display for BeliefFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeliefFamily::GridPoints(n) => write!(f, "grid-points({n})"),
            BeliefFamily::FullSimplex => write!(f, "full-simplex"),
            BeliefFamily::GridIntervals(n) => write!(f, "grid-intervals({n})"),
            BeliefFamily::GridHulls(n, k) => write!(f, "grid-hulls({n},{k})"),
        }
    }
}

impl FromStr for BeliefFamily {
    type Err = Error;

    /// `grid-points(8)`, `full-simplex`, `grid-intervals(8)` or
    /// `grid-hulls(4,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown belief family `{s}`"));
        let s = s.trim();
        if s == "full-simplex" {
            return Ok(BeliefFamily::FullSimplex);
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args: Vec<usize> = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (name, args.as_slice()) {
            ("grid-points", [n]) => Ok(BeliefFamily::GridPoints(*n)),
            ("grid-intervals", [n]) => Ok(BeliefFamily::GridIntervals(*n)),
            ("grid-hulls", [n, k]) => Ok(BeliefFamily::GridHulls(*n, *k)),
            _ => Err(bad()),
        }
    }
}

/// Beliefs searched by default for each criterion.
pub fn default_families(criterion: Criterion, grid: usize) -> Vec<BeliefFamily> {
    match criterion {
        Criterion::ExpectedUtility => vec![BeliefFamily::GridPoints(grid)],
        Criterion::Maxmin => vec![BeliefFamily::GridPoints(grid), BeliefFamily::FullSimplex],
        Criterion::Regret => vec![
            BeliefFamily::GridPoints(grid),
            BeliefFamily::FullSimplex,
            BeliefFamily::GridIntervals(grid),
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerCriterion {
    pub criterion: Criterion,
    pub families: Vec<BeliefFamily>,
}

impl PlayerCriterion {
    pub fn with_defaults(criterion: Criterion, grid: usize) -> Self {
        PlayerCriterion {
            criterion,
            families: default_families(criterion, grid),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    names: [String; 2],
    frame: GameFrame,
    criteria: [PlayerCriterion; 2],
}

impl GameSpec {
    pub fn new(names: [String; 2], frame: GameFrame, criteria: [PlayerCriterion; 2]) -> Result<Self> {
        if names[0] == names[1] {
            return Err(Error::DuplicateIdentifier(names[0].clone()));
        }
        Ok(GameSpec {
            names,
            frame,
            criteria,
        })
    }

    pub fn frame(&self) -> &GameFrame {
        &self.frame
    }

    pub fn name(&self, p: Player) -> &str {
        &self.names[p.index()]
    }

    pub fn criterion(&self, p: Player) -> &PlayerCriterion {
        &self.criteria[p.index()]
    }

    pub fn with_criteria(&self, criteria: [PlayerCriterion; 2]) -> Self {
        GameSpec {
            criteria,
            ..self.clone()
        }
    }
}

/// The game of the coordination example with both players using `criterion`
/// and its default families at resolution 8.
pub fn example_game(criterion: Criterion) -> GameSpec {
    let c = PlayerCriterion::with_defaults(criterion, 8);
    GameSpec::new(["i".into(), "j".into()], example_frame(), [c.clone(), c]).expect("distinct names")
}

/// One act per own action over the opponent's actions.
pub fn action_acts(g: &GameSpec, p: Player) -> Vec<Act> {
    let opp = g.frame.actions(p.opponent());
    let id = MeasurableMap::identity(opp.clone());
    (0..g.frame.actions(p).len())
        .map(|a| {
            g.frame
                .action_act_on(p, a, &id)
                .expect("identity lands in the opponent's actions")
        })
        .collect()
}

/// Acts of every own action restricted to the surviving opponent actions.
fn restricted_menu(g: &GameSpec, p: Player, survivors: &[usize]) -> Result<(Arc<FinSpace>, Vec<Act>)> {
    let opp = g.frame.actions(p.opponent());
    if survivors.is_empty() {
        return Err(Error::InvalidArgument("no surviving opponent actions".into()));
    }
    if let Some(&s) = survivors.iter().find(|&&s| s >= opp.len()) {
        return Err(Error::IndexOutOfRange {
            index: s,
            len: opp.len(),
        });
    }
    let sub = Arc::new(FinSpace::discrete(
        survivors.iter().map(|&s| opp.point(s).to_string()),
    )?);
    let acts = (0..g.frame.actions(p).len())
        .map(|a| {
            let table = survivors.iter().map(|&s| g.frame.outcome_for(p, a, s)).collect();
            Act::new(sub.clone(), table)
        })
        .collect::<Result<_>>()?;
    Ok((sub, acts))
}

/// The first belief in `families` under which `action` is chosen from the
/// menu of all own actions, against the surviving opponent actions.
pub fn justifiable(
    g: &GameSpec,
    p: Player,
    action: usize,
    survivors: &[usize],
    families: &[BeliefFamily],
) -> Result<Option<CredalSet>> {
    if action >= g.frame.actions(p).len() {
        return Err(Error::IndexOutOfRange {
            index: action,
            len: g.frame.actions(p).len(),
        });
    }
    let (sub, acts) = restricted_menu(g, p, survivors)?;
    let menu: Menu<Act> = acts.iter().cloned().collect();
    let u = g.frame.utility(p)?;
    let criterion = g.criterion(p).criterion;
    for family in families {
        for belief in family.generate(&sub)? {
            if criterion == Criterion::ExpectedUtility && !belief.is_point() {
                continue;
            }
            let chosen = criterion_choice(criterion, &belief, &u)?.evaluate(&menu)?;
            if chosen.contains(&acts[action]) {
                return Ok(Some(belief));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct RoundTrace {
    pub round: usize,
    pub eliminated: [Vec<usize>; 2],
    /// Justifying beliefs of the actions kept this round.
    pub witnesses: [Vec<(usize, CredalSet)>; 2],
}

#[derive(Debug, Clone)]
pub struct Rationalization {
    pub survivors: [Vec<usize>; 2],
    pub trace: Vec<RoundTrace>,
}

impl Rationalization {
    pub fn survivors(&self, p: Player) -> &[usize] {
        &self.survivors[p.index()]
    }
}

/// Removes, simultaneously for both players, every action with no
/// justifying belief against the opponent's survivors, until nothing changes.
pub fn rationalize(g: &GameSpec) -> Result<Rationalization> {
    let mut survivors = [
        (0..g.frame.actions(Player::I).len()).collect::<Vec<_>>(),
        (0..g.frame.actions(Player::J).len()).collect::<Vec<_>>(),
    ];
    let mut trace = Vec::new();
    for round in 1.. {
        let mut next: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        let mut eliminated: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        let mut witnesses: [Vec<(usize, CredalSet)>; 2] = [Vec::new(), Vec::new()];
        for p in Player::BOTH {
            let opp = &survivors[p.opponent().index()];
            for &a in &survivors[p.index()] {
                match justifiable(g, p, a, opp, &g.criterion(p).families)? {
                    Some(w) => {
                        next[p.index()].push(a);
                        witnesses[p.index()].push((a, w));
                    }
                    None => eliminated[p.index()].push(a),
                }
            }
        }
        let done = eliminated.iter().all(Vec::is_empty);
        trace.push(RoundTrace {
            round,
            eliminated,
            witnesses,
        });
        survivors = next;
        if done || survivors.iter().any(Vec::is_empty) {
            break;
        }
    }
    Ok(Rationalization { survivors, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{regret_values, UtilityView};

    fn names(g: &GameSpec, p: Player, idx: &[usize]) -> Vec<String> {
        idx.iter()
            .map(|&a| g.frame().actions(p).point(a).to_string())
            .collect()
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(grid(2, 8).unwrap().len(), 9);
        assert_eq!(grid(4, 8).unwrap().len(), 165);
        let s = Arc::new(FinSpace::discrete(["l", "r"]).unwrap());
        assert_eq!(BeliefFamily::GridIntervals(4).generate(&s).unwrap().len(), 10);
        assert_eq!(BeliefFamily::GridHulls(2, 2).generate(&s).unwrap().len(), 3);
        let s4 = Arc::new(FinSpace::discrete(["a", "b", "c", "d"]).unwrap());
        assert!(BeliefFamily::GridIntervals(4).generate(&s4).unwrap().is_empty());
    }

    #[test]
    fn families_parse_and_print() {
        for f in [
            BeliefFamily::GridPoints(8),
            BeliefFamily::FullSimplex,
            BeliefFamily::GridIntervals(3),
            BeliefFamily::GridHulls(4, 3),
        ] {
            assert_eq!(f.to_string().parse::<BeliefFamily>().unwrap(), f);
        }
        assert!("grid-points(x)".parse::<BeliefFamily>().is_err());
    }

    #[test]
    fn action_acts_follow_the_table() {
        let g = example_game(Criterion::ExpectedUtility);
        let o = g.frame().outcomes();
        let ida = action_acts(&g, Player::I);
        let rendered: Vec<(&str, &str)> = ida.iter().map(|f| (o.name(f.at(0)), o.name(f.at(1)))).collect();
        assert_eq!(
            rendered,
            [
                ("(5,1)", "(0,0)"),
                ("(3,2)", "(0,1)"),
                ("(1,1)", "(3,0)"),
                ("(1,2)", "(2,3)")
            ]
        );
        let joe = action_acts(&g, Player::J);
        assert_eq!(o.name(joe[0].at(0)), "(5,1)");
        assert_eq!(o.name(joe[1].at(3)), "(2,3)");
    }

    #[test]
    fn one_by_one_game_has_a_constant_act() {
        let frame = GameFrame::from_payoffs(
            vec!["a".into()],
            vec!["b".into()],
            &[vec![[rat(1, 1), rat(2, 1)]]],
        )
        .unwrap();
        let c = PlayerCriterion::with_defaults(Criterion::ExpectedUtility, 4);
        let g = GameSpec::new(["x".into(), "y".into()], frame, [c.clone(), c]).unwrap();
        let acts = action_acts(&g, Player::I);
        assert_eq!(acts.len(), 1);
        assert_eq!(acts[0].range().len(), 1);
    }

    #[test]
    fn maxmin_justifies_d_by_the_simplex() {
        let g = example_game(Criterion::Maxmin);
        let w = justifiable(&g, Player::I, 3, &[0, 1], &[BeliefFamily::FullSimplex]).unwrap();
        assert_eq!(w.unwrap().vertices().len(), 2);
        let w = justifiable(&g, Player::I, 3, &[0, 1], &[BeliefFamily::GridPoints(8)]).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn regret_over_the_simplex() {
        let g = example_game(Criterion::Regret);
        let (sub, acts) = restricted_menu(&g, Player::I, &[0, 1]).unwrap();
        let u = UtilityView::from_outcomes(g.frame().outcomes(), 0).unwrap();
        let menu: Menu<Act> = acts.iter().cloned().collect();
        let v = regret_values(&CredalSet::simplex(sub), &u, &menu).unwrap();
        // Menu order follows act order: f_u (5,0), f_m (3,0), f_c (1,3), f_d (1,2).
        let by_act: Vec<Rat> = acts
            .iter()
            .map(|a| v[menu.items().iter().position(|b| b == a).unwrap()])
            .collect();
        assert_eq!(by_act, [rat(3, 1), rat(3, 1), rat(4, 1), rat(4, 1)]);
        assert!(
            justifiable(&g, Player::I, 1, &[0, 1], &[BeliefFamily::FullSimplex])
                .unwrap()
                .is_some()
        );
        let all = [
            BeliefFamily::GridPoints(16),
            BeliefFamily::FullSimplex,
            BeliefFamily::GridIntervals(16),
            BeliefFamily::GridHulls(4, 3),
        ];
        assert!(justifiable(&g, Player::I, 3, &[0, 1], &all).unwrap().is_none());
    }

    #[test]
    fn rationalizable_profiles() {
        for (c, i, j) in [
            (Criterion::ExpectedUtility, vec!["u"], vec!["l"]),
            (Criterion::Maxmin, vec!["u", "c", "d"], vec!["l", "r"]),
            (Criterion::Regret, vec!["u"], vec!["l"]),
        ] {
            let g = example_game(c);
            let r = rationalize(&g).unwrap();
            assert_eq!(names(&g, Player::I, r.survivors(Player::I)), i, "{c}");
            assert_eq!(names(&g, Player::J, r.survivors(Player::J)), j, "{c}");
        }
    }

    #[test]
    fn eu_survivors_do_not_depend_on_the_grid() {
        for n in [4, 8, 16] {
            let g = example_game(Criterion::ExpectedUtility).with_criteria([
                PlayerCriterion::with_defaults(Criterion::ExpectedUtility, n),
                PlayerCriterion::with_defaults(Criterion::ExpectedUtility, n),
            ]);
            let r = rationalize(&g).unwrap();
            assert_eq!(r.survivors, [vec![0], vec![0]]);
        }
    }
}
