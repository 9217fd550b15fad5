//! Two-player choice structures, preference structures and their morphisms.

use std::fmt;
use std::sync::Arc;

use crate::act::{pullback, Act, OutcomeSet};
use crate::choice::{gamma_map, nonempty_menus, ChoiceFn, Menu};
use crate::criteria::{eu_choice, maxmin_choice, regret_choice, CredalSet, UtilityView};
use crate::error::{Error, Result};
use crate::pref::{maximize_as_choicefn, Poset};
use crate::rational::{format_rational, rat, Rat};
use crate::search::{menu_universe, SearchBounds};
use crate::space::{product, product_map, FinSpace, MeasurableMap, Product};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    I,
    J,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::I, Player::J];

    pub fn index(self) -> usize {
        match self {
            Player::I => 0,
            Player::J => 1,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::J,
            Player::J => Player::I,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Player::I => "i",
            Player::J => "j",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcomes, the two action spaces and the outcome of every action profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameFrame {
    outcomes: Arc<OutcomeSet>,
    actions: [Arc<FinSpace>; 2],
    /// `profile[a_i][a_j]`.
    profile: Vec<Vec<usize>>,
}

impl GameFrame {
    pub fn new(
        outcomes: OutcomeSet,
        actions_i: FinSpace,
        actions_j: FinSpace,
        profile: Vec<Vec<usize>>,
    ) -> Result<Self> {
        for a in [&actions_i, &actions_j] {
            if !a.is_discrete() {
                return Err(Error::InvalidStructure(format!(
                    "action space {a} must be discrete"
                )));
            }
        }
        if profile.len() != actions_i.len() {
            return Err(Error::NotTotal {
                expected: actions_i.len(),
                found: profile.len(),
            });
        }
        for row in &profile {
            if row.len() != actions_j.len() {
                return Err(Error::NotTotal {
                    expected: actions_j.len(),
                    found: row.len(),
                });
            }
            if let Some(&z) = row.iter().find(|&&z| z >= outcomes.len()) {
                return Err(Error::IndexOutOfRange {
                    index: z,
                    len: outcomes.len(),
                });
            }
        }
        Ok(GameFrame {
            outcomes: Arc::new(outcomes),
            actions: [Arc::new(actions_i), Arc::new(actions_j)],
            profile,
        })
    }

    /// The outcome set is the set of distinct payoff pairs, listed column by
    /// column.
    pub fn from_payoffs(
        actions_i: Vec<String>,
        actions_j: Vec<String>,
        payoffs: &[Vec<[Rat; 2]>],
    ) -> Result<Self> {
        let (ni, nj) = (actions_i.len(), actions_j.len());
        if payoffs.len() != ni {
            return Err(Error::NotTotal {
                expected: ni,
                found: payoffs.len(),
            });
        }
        if let Some(row) = payoffs.iter().find(|r| r.len() != nj) {
            return Err(Error::NotTotal {
                expected: nj,
                found: row.len(),
            });
        }
        let mut pairs: Vec<[Rat; 2]> = Vec::new();
        let mut profile = vec![vec![0; nj]; ni];
        for b in 0..nj {
            for a in 0..ni {
                let pair = payoffs[a][b];
                let z = match pairs.iter().position(|p| *p == pair) {
                    Some(z) => z,
                    None => {
                        pairs.push(pair);
                        pairs.len() - 1
                    }
                };
                profile[a][b] = z;
            }
        }
        let names = pairs
            .iter()
            .map(|[x, y]| format!("({},{})", format_rational(x), format_rational(y)))
            .collect();
        let utilities = pairs.iter().map(|p| p.to_vec()).collect();
        let outcomes = OutcomeSet::with_utilities(names, utilities)?;
        Self::new(
            outcomes,
            FinSpace::discrete(actions_i)?,
            FinSpace::discrete(actions_j)?,
            profile,
        )
    }

    pub fn outcomes(&self) -> &Arc<OutcomeSet> {
        &self.outcomes
    }

    pub fn actions(&self, p: Player) -> &Arc<FinSpace> {
        &self.actions[p.index()]
    }

    pub fn outcome(&self, a_i: usize, a_j: usize) -> usize {
        self.profile[a_i][a_j]
    }

    /// Outcome when `p` plays `own` against `opp`.
    pub fn outcome_for(&self, p: Player, own: usize, opp: usize) -> usize {
        match p {
            Player::I => self.profile[own][opp],
            Player::J => self.profile[opp][own],
        }
    }

    /// The act of playing `own` over a space that records the opponent's
    /// action through `to_action`.
    pub fn action_act_on(&self, p: Player, own: usize, to_action: &MeasurableMap) -> Result<Act> {
        if **to_action.codomain() != **self.actions(p.opponent()) {
            return Err(Error::SpaceMismatch(format!(
                "action act for {p}: map does not land in the opponent's actions"
            )));
        }
        let table = to_action
            .table()
            .iter()
            .map(|&a| self.outcome_for(p, own, a))
            .collect();
        Act::new(to_action.domain().clone(), table)
    }

    pub fn utility(&self, p: Player) -> Result<UtilityView> {
        UtilityView::from_outcomes(&self.outcomes, p.index())
    }

    /// Outcome classes that `p` tells apart.
    pub fn relevant_outcomes(&self, p: Player) -> Vec<usize> {
        self.outcomes.relevant_outcomes(p.index())
    }
}

/// Labels acts by the own action they encode, falling back to the outcome
/// table.
fn label_act(frame: &GameFrame, p: Player, basis: &[Act], act: &Act) -> String {
    match basis.iter().position(|b| b == act) {
        Some(a) => format!("f_{}", frame.actions(p).point(a)),
        None => act.render(frame.outcomes()),
    }
}

pub(crate) fn label_menu(frame: &GameFrame, p: Player, basis: &[Act], menu: &Menu<Act>) -> String {
    let mut labels: Vec<(usize, String)> = menu
        .iter()
        .map(|a| {
            let rank = basis.iter().position(|b| b == a).unwrap_or(usize::MAX);
            (rank, label_act(frame, p, basis, a))
        })
        .collect();
    labels.sort();
    let inner: Vec<String> = labels.into_iter().map(|(_, l)| l).collect();
    format!("{{{}}}", inner.join(","))
}

fn opponent_states(frame: &GameFrame, types: &[Arc<FinSpace>; 2], p: Player) -> Product {
    product(frame.actions(p.opponent()), &types[p.opponent().index()])
}

fn basis_on(frame: &GameFrame, p: Player, states: &Product) -> Vec<Act> {
    (0..frame.actions(p).len())
        .map(|a| {
            frame
                .action_act_on(p, a, &states.first)
                .expect("first projection lands in the opponent's actions")
        })
        .collect()
}

/// A choice structure: for each player a type space and a map sending each
/// type to a choice function over acts on the opponent's states
/// `A_opp × T_opp`.
#[derive(Debug, Clone)]
pub struct ChoiceStructure {
    frame: GameFrame,
    types: [Arc<FinSpace>; 2],
    states: [Product; 2],
    theta: [Vec<ChoiceFn<Act>>; 2],
}

impl ChoiceStructure {
    /// Checks that every θ is evaluable on the basis menus and constant on
    /// type atoms there.
    pub fn new(
        frame: GameFrame,
        types_i: FinSpace,
        types_j: FinSpace,
        theta_i: Vec<ChoiceFn<Act>>,
        theta_j: Vec<ChoiceFn<Act>>,
    ) -> Result<Self> {
        let types = [Arc::new(types_i), Arc::new(types_j)];
        let states = [
            opponent_states(&frame, &types, Player::I),
            opponent_states(&frame, &types, Player::J),
        ];
        let x = ChoiceStructure {
            frame,
            types,
            states,
            theta: [theta_i, theta_j],
        };
        for p in Player::BOTH {
            x.validate(p)?;
        }
        Ok(x)
    }

    fn validate(&self, p: Player) -> Result<()> {
        let types = self.types(p);
        let theta = self.theta(p);
        if theta.len() != types.len() {
            return Err(Error::NotTotal {
                expected: types.len(),
                found: theta.len(),
            });
        }
        let basis = self.basis(p);
        for k in nonempty_menus(&basis) {
            let mut answers = Vec::with_capacity(theta.len());
            for (t, c) in theta.iter().enumerate() {
                let chosen = c.evaluate(&k).map_err(|e| {
                    Error::InvalidStructure(format!(
                        "theta_{p}({}) on {}: {e}",
                        types.point(t),
                        self.render_menu(p, &k)
                    ))
                })?;
                answers.push(chosen);
            }
            for atom in types.atoms() {
                if let Some(&t) = atom.iter().find(|&&t| answers[t] != answers[atom[0]]) {
                    return Err(Error::NotMeasurable(format!(
                        "theta_{p}: types {} and {} share an atom but choose differently on {}",
                        types.point(atom[0]),
                        types.point(t),
                        self.render_menu(p, &k)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> &GameFrame {
        &self.frame
    }

    pub fn outcomes(&self) -> &Arc<OutcomeSet> {
        self.frame.outcomes()
    }

    pub fn actions(&self, p: Player) -> &Arc<FinSpace> {
        self.frame.actions(p)
    }

    pub fn types(&self, p: Player) -> &Arc<FinSpace> {
        &self.types[p.index()]
    }

    /// `A_opp × T_opp`.
    pub fn states(&self, p: Player) -> &Product {
        &self.states[p.index()]
    }

    pub fn theta(&self, p: Player) -> &[ChoiceFn<Act>] {
        &self.theta[p.index()]
    }

    /// Acts `f_a(a_opp, t) = outcome(a, a_opp)`, one per own action.
    pub fn basis(&self, p: Player) -> Vec<Act> {
        basis_on(&self.frame, p, self.states(p))
    }

    pub fn basis_menus(&self, p: Player) -> Vec<Menu<Act>> {
        nonempty_menus(&self.basis(p))
    }

    /// Whether every θ of `p` is evaluable on all menus.
    pub fn is_total(&self, p: Player) -> bool {
        self.theta(p).iter().all(ChoiceFn::is_total)
    }

    pub fn render_act(&self, p: Player, act: &Act) -> String {
        label_act(&self.frame, p, &self.basis(p), act)
    }

    pub fn render_menu(&self, p: Player, menu: &Menu<Act>) -> String {
        label_menu(&self.frame, p, &self.basis(p), menu)
    }

    /// The same structure with one θ replaced.
    pub fn with_theta(&self, p: Player, t: usize, c: ChoiceFn<Act>) -> Result<Self> {
        let mut x = self.clone();
        if t >= x.theta[p.index()].len() {
            return Err(Error::IndexOutOfRange {
                index: t,
                len: x.theta[p.index()].len(),
            });
        }
        x.theta[p.index()][t] = c;
        x.validate(p)?;
        Ok(x)
    }
}

/// A preference structure: each type holds a poset over acts on the
/// opponent's states.
#[derive(Debug, Clone)]
pub struct PreferenceStructure {
    frame: GameFrame,
    types: [Arc<FinSpace>; 2],
    states: [Product; 2],
    theta: [Vec<Poset<Act>>; 2],
}

impl PreferenceStructure {
    pub fn new(
        frame: GameFrame,
        types_i: FinSpace,
        types_j: FinSpace,
        theta_i: Vec<Poset<Act>>,
        theta_j: Vec<Poset<Act>>,
    ) -> Result<Self> {
        let types = [Arc::new(types_i), Arc::new(types_j)];
        let states = [
            opponent_states(&frame, &types, Player::I),
            opponent_states(&frame, &types, Player::J),
        ];
        let x = PreferenceStructure {
            frame,
            types,
            states,
            theta: [theta_i, theta_j],
        };
        for p in Player::BOTH {
            let (types, theta) = (x.types(p), x.theta(p));
            if theta.len() != types.len() {
                return Err(Error::NotTotal {
                    expected: types.len(),
                    found: theta.len(),
                });
            }
            let space = &x.states(p).space;
            let basis = x.basis(p);
            for (t, poset) in theta.iter().enumerate() {
                if poset.carrier().iter().any(|a| **a.space() != **space) {
                    return Err(Error::SpaceMismatch(format!(
                        "preference of {} ranks acts outside {space}",
                        types.point(t)
                    )));
                }
                if let Some(b) = basis.iter().find(|b| poset.as_preorder().position(b).is_none()) {
                    return Err(Error::InvalidStructure(format!(
                        "preference of {} does not rank the action act {}",
                        types.point(t),
                        x.render_act(p, b)
                    )));
                }
            }
            for atom in types.atoms() {
                if let Some(&t) = atom.iter().find(|&&t| theta[t] != theta[atom[0]]) {
                    return Err(Error::NotMeasurable(format!(
                        "theta_{p}: types {} and {} share an atom but rank differently",
                        types.point(atom[0]),
                        types.point(t)
                    )));
                }
            }
        }
        Ok(x)
    }

    pub fn frame(&self) -> &GameFrame {
        &self.frame
    }

    pub fn types(&self, p: Player) -> &Arc<FinSpace> {
        &self.types[p.index()]
    }

    pub fn states(&self, p: Player) -> &Product {
        &self.states[p.index()]
    }

    pub fn theta(&self, p: Player) -> &[Poset<Act>] {
        &self.theta[p.index()]
    }

    pub fn basis(&self, p: Player) -> Vec<Act> {
        basis_on(&self.frame, p, self.states(p))
    }

    pub fn render_act(&self, p: Player, act: &Act) -> String {
        label_act(&self.frame, p, &self.basis(p), act)
    }
}

/// Replaces every poset by its maximization choice function.
pub fn embed_preference_structure(p: &PreferenceStructure) -> Result<ChoiceStructure> {
    let theta = |q: Player| p.theta(q).iter().map(maximize_as_choicefn).collect::<Vec<_>>();
    let x = ChoiceStructure {
        frame: p.frame.clone(),
        types: p.types.clone(),
        states: p.states.clone(),
        theta: [theta(Player::I), theta(Player::J)],
    };
    for q in Player::BOTH {
        x.validate(q)?;
    }
    Ok(x)
}

/// Type maps commuting with θ.
#[derive(Debug, Clone)]
pub struct StructureMorphism {
    pub alpha: [MeasurableMap; 2],
}

impl StructureMorphism {
    pub fn new(alpha_i: MeasurableMap, alpha_j: MeasurableMap) -> Self {
        StructureMorphism {
            alpha: [alpha_i, alpha_j],
        }
    }

    pub fn identity(x: &ChoiceStructure) -> Self {
        Self::new(
            MeasurableMap::identity(x.types(Player::I).clone()),
            MeasurableMap::identity(x.types(Player::J).clone()),
        )
    }

    pub fn alpha(&self, p: Player) -> &MeasurableMap {
        &self.alpha[p.index()]
    }

    fn check_spaces(&self, src: [&Arc<FinSpace>; 2], dst: [&Arc<FinSpace>; 2]) -> Result<()> {
        for p in Player::BOTH {
            let a = self.alpha(p);
            if **a.domain() != **src[p.index()] || **a.codomain() != **dst[p.index()] {
                return Err(Error::SpaceMismatch(format!(
                    "alpha_{p} does not map the source types to the target types"
                )));
            }
        }
        Ok(())
    }
}

/// A failing square: `dst.θ(α(t))(K) ≠ Γ(id × α)(src.θ(t))(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismFailure {
    pub player: Player,
    pub ty: usize,
    pub menu: Menu<Act>,
    pub target: Menu<Act>,
    pub pushed: Menu<Act>,
}

/// Evaluates both sides of each square on the basis menus and, when every θ
/// involved is total, on the menus of [`menu_universe`].
pub fn check_morphism(
    src: &ChoiceStructure,
    dst: &ChoiceStructure,
    m: &StructureMorphism,
    bounds: &SearchBounds,
) -> Result<Option<MorphismFailure>> {
    if src.frame != dst.frame {
        return Err(Error::SpaceMismatch(
            "morphism between structures over different games".into(),
        ));
    }
    m.check_spaces(
        [src.types(Player::I), src.types(Player::J)],
        [dst.types(Player::I), dst.types(Player::J)],
    )?;
    for p in Player::BOTH {
        let opp = p.opponent();
        let phi = product_map(
            src.states(p),
            dst.states(p),
            &MeasurableMap::identity(src.actions(opp).clone()),
            m.alpha(opp),
        )?;
        let with_pool = src.is_total(p) && dst.is_total(p);
        let universe = menu_universe(
            &dst.states(p).space,
            &dst.basis(p),
            &src.frame.relevant_outcomes(p),
            bounds,
            with_pool,
            p.index() as u64,
        );
        for (t, c) in src.theta(p).iter().enumerate() {
            let target = &dst.theta(p)[m.alpha(p).apply(t)];
            let pushed = gamma_map(c, &phi);
            for k in &universe.menus {
                let (a, b) = (target.evaluate(k)?, pushed.evaluate(k)?);
                if a != b {
                    return Ok(Some(MorphismFailure {
                        player: p,
                        ty: t,
                        menu: k.clone(),
                        target: a,
                        pushed: b,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// A failing square for preferences: acts `f, g` over the target states
/// ranked differently by `dst.θ(α(t))` and by `src.θ(t)` after pulling back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceFailure {
    pub player: Player,
    pub ty: usize,
    pub pair: (Act, Act),
}

pub fn check_preference_morphism(
    src: &PreferenceStructure,
    dst: &PreferenceStructure,
    m: &StructureMorphism,
) -> Result<Option<PreferenceFailure>> {
    if src.frame != dst.frame {
        return Err(Error::SpaceMismatch(
            "morphism between structures over different games".into(),
        ));
    }
    m.check_spaces(
        [src.types(Player::I), src.types(Player::J)],
        [dst.types(Player::I), dst.types(Player::J)],
    )?;
    for p in Player::BOTH {
        let opp = p.opponent();
        let phi = product_map(
            src.states(p),
            dst.states(p),
            &MeasurableMap::identity(src.frame.actions(opp).clone()),
            m.alpha(opp),
        )?;
        for (t, poset) in src.theta(p).iter().enumerate() {
            let target = &dst.theta(p)[m.alpha(p).apply(t)];
            for f in target.carrier() {
                for g in target.carrier() {
                    let (pf, pg) = (pullback(f, &phi)?, pullback(g, &phi)?);
                    let pulled = poset.leq(&pf, &pg).ok_or_else(|| {
                        Error::InvalidStructure(format!(
                            "pulled-back act {pf} is not ranked by the source preference"
                        ))
                    })?;
                    if target.leq(f, g) != Some(pulled) {
                        return Ok(Some(PreferenceFailure {
                            player: p,
                            ty: t,
                            pair: (f.clone(), g.clone()),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The coordination-with-ambiguity game played by Ida (rows) and Joe
/// (columns).
pub fn example_frame() -> GameFrame {
    let r = |a: i64, b: i64| [rat(a, 1), rat(b, 1)];
    GameFrame::from_payoffs(
        ["u", "m", "c", "d"].map(String::from).to_vec(),
        ["l", "r"].map(String::from).to_vec(),
        &[
            vec![r(5, 1), r(0, 0)],
            vec![r(3, 2), r(0, 1)],
            vec![r(1, 1), r(3, 0)],
            vec![r(1, 2), r(2, 3)],
        ],
    )
    .expect("well-formed game")
}

fn example_with_joe_types(joe: &[&str]) -> ChoiceStructure {
    let frame = example_frame();
    let types_i = FinSpace::discrete(["t_i"]).expect("nonempty");
    let types_j = FinSpace::discrete(joe.iter().copied()).expect("distinct");
    let types = [Arc::new(types_i.clone()), Arc::new(types_j.clone())];
    let states_i = opponent_states(&frame, &types, Player::I);
    let states_j = opponent_states(&frame, &types, Player::J);
    let u_i = frame.utility(Player::I).expect("utilities");
    let u_j = frame.utility(Player::J).expect("utilities");

    let ida_belief = CredalSet::interval(frame.actions(Player::J).clone(), rat(1, 4), rat(1, 1))
        .and_then(|b| b.vacuous_extension(&states_i))
        .expect("valid interval");
    let theta_i = vec![regret_choice(&ida_belief, &u_i)];

    let half = rat(1, 2);
    let zero = Rat::from_integer(0);
    let eu_belief = CredalSet::point(frame.actions(Player::I).clone(), vec![half, zero, zero, half])
        .and_then(|b| b.vacuous_extension(&states_j))
        .expect("valid prior");
    let simplex = CredalSet::simplex(states_j.space.clone());
    let theta_j = joe
        .iter()
        .map(|name| {
            if name.starts_with("t_EU") {
                eu_choice(&eu_belief, &u_j).expect("point belief")
            } else {
                maxmin_choice(&simplex, &u_j)
            }
        })
        .collect();
    ChoiceStructure::new(frame, types_i, types_j, theta_i, theta_j).expect("valid structure")
}

/// Ida has one type minimizing worst-case regret with `P(r) ∈ [1/4, 1]`;
/// Joe's type `t_Mm` maximizes worst-case utility over all beliefs and
/// `t_EU` maximizes expected utility with probability 1/2 on each of `u`
/// and `d`.
pub fn example_structure() -> ChoiceStructure {
    example_with_joe_types(&["t_Mm", "t_EU"])
}

/// [`example_structure`] with a second copy `t_Mm2` of Joe's maxmin type.
pub fn example_structure_with_duplicate() -> ChoiceStructure {
    example_with_joe_types(&["t_Mm", "t_Mm2", "t_EU"])
}
