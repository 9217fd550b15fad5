//! Finite levels of the universal hierarchy and behavioral partition
//! refinement.
//!
//! Level `n` of player `p` lives on `A_opp × Q`, where `Q` is the quotient of
//! the opponent's types by the behavior observed after `n - 1` refinement
//! rounds (level 1 uses `A_opp` alone). The map `υ_{p,n}(t)` pushes `θ_p(t)`
//! forward along `A_opp × T_opp → A_opp × Q`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::act::Act;
use crate::choice::{gamma_map, ChoiceFn, Menu};
use crate::error::{Error, Result};
use crate::search::{menu_universe, MenuUniverse, SearchBounds};
use crate::space::{product, FinSpace, MeasurableMap};
use crate::structure::{label_menu, ChoiceStructure, Player};

/// A partition of `{0, …, n-1}` into blocks ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for b in &mut blocks {
            b.sort_unstable();
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
        }
        blocks.sort();
        for (i, b) in blocks.iter().enumerate() {
            for &t in b {
                if t >= n || block_of[t] != usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "element {t} is out of range or repeated"
                    )));
                }
                block_of[t] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("blocks do not cover every element".into()));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_blocks(n, vec![(0..n).collect()]).expect("one block")
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_blocks(n, (0..n).map(|t| vec![t]).collect()).expect("singletons")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, t: usize) -> usize {
        self.block_of[t]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&t| coarser.block_of(t) == coarser.block_of(b[0])))
    }

    pub fn render(&self, names: &FinSpace) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let inner: Vec<&str> = b.iter().map(|&t| names.point(t)).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        blocks.join(" ")
    }
}

/// The base space of one level of one player's hierarchy.
#[derive(Debug, Clone)]
pub struct LevelDescriptor {
    pub player: Player,
    pub n: usize,
    pub base_space: Arc<FinSpace>,
    /// `A_opp × T_opp → base_space`.
    pub from_states: MeasurableMap,
    /// `base_space → A_opp`.
    pub to_action: MeasurableMap,
    /// Opponent types identified by this level; `None` at level 1.
    pub opponent_blocks: Option<Partition>,
}

impl LevelDescriptor {
    fn new(x: &ChoiceStructure, p: Player, n: usize, opponent: Option<&Partition>) -> Result<Self> {
        let states = x.states(p);
        let Some(blocks) = opponent else {
            return Ok(LevelDescriptor {
                player: p,
                n,
                base_space: states.first.codomain().clone(),
                from_states: states.first.clone(),
                to_action: MeasurableMap::identity(states.first.codomain().clone()),
                opponent_blocks: None,
            });
        };
        let types = x.types(p.opponent());
        let names: Vec<String> = blocks
            .blocks()
            .iter()
            .map(|b| {
                let inner: Vec<&str> = b.iter().map(|&t| types.point(t)).collect();
                format!("[{}]", inner.join(","))
            })
            .collect();
        let q = Arc::new(FinSpace::discrete(names)?);
        let quotient = MeasurableMap::new(
            types.clone(),
            q.clone(),
            (0..types.len()).map(|t| blocks.block_of(t)).collect(),
        )?;
        let base = product(states.first.codomain(), &q);
        let from_states = MeasurableMap::new(
            states.space.clone(),
            base.space.clone(),
            (0..states.space.len())
                .map(|s| base.pair_index(states.first.apply(s), quotient.apply(states.second.apply(s))))
                .collect(),
        )?;
        Ok(LevelDescriptor {
            player: p,
            n,
            base_space: base.space.clone(),
            from_states,
            to_action: base.first,
            opponent_blocks: Some(blocks.clone()),
        })
    }

    /// Action acts over the base.
    pub fn basis(&self, x: &ChoiceStructure) -> Vec<Act> {
        (0..x.actions(self.player).len())
            .map(|a| {
                x.frame()
                    .action_act_on(self.player, a, &self.to_action)
                    .expect("base projects onto the opponent's actions")
            })
            .collect()
    }

    pub fn render_menu(&self, x: &ChoiceStructure, menu: &Menu<Act>) -> String {
        label_menu(x.frame(), self.player, &self.basis(x), menu)
    }

    /// Every nonempty basis menu and, for total θ, menus of [`menu_universe`].
    fn universe(&self, x: &ChoiceStructure, bounds: &SearchBounds, stream: u64) -> MenuUniverse {
        menu_universe(
            &self.base_space,
            &self.basis(x),
            &x.frame().relevant_outcomes(self.player),
            bounds,
            x.is_total(self.player),
            stream,
        )
    }
}

fn stream(p: Player, n: usize) -> u64 {
    ((n as u64) << 1) | p.index() as u64
}

/// `υ_{p,1}(t)`: menus of acts over `A_opp` pulled back along the first
/// projection.
pub fn level_one_map(x: &ChoiceStructure, p: Player) -> Vec<ChoiceFn<Act>> {
    x.theta(p)
        .iter()
        .map(|c| gamma_map(c, &x.states(p).first))
        .collect()
}

#[derive(Debug, Clone)]
pub struct HierarchyImage {
    structure: ChoiceStructure,
    levels: [Vec<LevelDescriptor>; 2],
    down: [Vec<MeasurableMap>; 2],
    maps: [Vec<Vec<ChoiceFn<Act>>>; 2],
    bounds: SearchBounds,
}

impl HierarchyImage {
    pub fn structure(&self) -> &ChoiceStructure {
        &self.structure
    }

    pub fn levels(&self) -> usize {
        self.levels[0].len()
    }

    pub fn level(&self, p: Player, n: usize) -> &LevelDescriptor {
        &self.levels[p.index()][n - 1]
    }

    /// `ξ_{p,n}`'s underlying map from the base of level `n + 1` to level `n`.
    pub fn down(&self, p: Player, n: usize) -> &MeasurableMap {
        &self.down[p.index()][n - 1]
    }

    pub fn upsilon(&self, p: Player, n: usize, t: usize) -> &ChoiceFn<Act> {
        &self.maps[p.index()][n - 1][t]
    }

    pub fn bounds(&self) -> &SearchBounds {
        &self.bounds
    }

    /// Menus on which level `n` of `p` is checked.
    pub fn universe(&self, p: Player, n: usize) -> MenuUniverse {
        self.level(p, n)
            .universe(&self.structure, &self.bounds, stream(p, n))
    }

    /// The same image with one `υ_{p,n}(t)` replaced.
    pub fn replace_map(&self, p: Player, n: usize, t: usize, c: ChoiceFn<Act>) -> Self {
        let mut h = self.clone();
        h.maps[p.index()][n - 1][t] = c;
        h
    }
}

/// Levels `1..=levels` of the hierarchy maps of both players.
pub fn hierarchy_map(x: &ChoiceStructure, levels: usize, bounds: &SearchBounds) -> Result<HierarchyImage> {
    if levels == 0 {
        return Err(Error::InvalidArgument("at least one level is needed".into()));
    }
    let run = refine(x, bounds, levels.saturating_sub(1), false)?;
    let mut out_levels: [Vec<LevelDescriptor>; 2] = [Vec::new(), Vec::new()];
    let mut down: [Vec<MeasurableMap>; 2] = [Vec::new(), Vec::new()];
    let mut maps: [Vec<Vec<ChoiceFn<Act>>>; 2] = [Vec::new(), Vec::new()];
    for p in Player::BOTH {
        let opp = p.opponent().index();
        for n in 1..=levels {
            let blocks = (n > 1).then(|| &run.history[n - 1][opp]);
            let level = LevelDescriptor::new(x, p, n, blocks)?;
            maps[p.index()].push(
                x.theta(p)
                    .iter()
                    .map(|c| gamma_map(c, &level.from_states))
                    .collect(),
            );
            out_levels[p.index()].push(level);
        }
        for n in 1..levels {
            let (lo, hi) = (&out_levels[p.index()][n - 1], &out_levels[p.index()][n]);
            let map = match &lo.opponent_blocks {
                None => hi.to_action.clone(),
                Some(coarse) => {
                    let fine = hi.opponent_blocks.as_ref().expect("levels above 1 are quotients");
                    let nq = coarse.blocks().len();
                    let nq_fine = fine.blocks().len();
                    let table = (0..hi.base_space.len())
                        .map(|k| {
                            let (a, b) = (k / nq_fine, k % nq_fine);
                            a * nq + coarse.block_of(fine.blocks()[b][0])
                        })
                        .collect();
                    MeasurableMap::new(hi.base_space.clone(), lo.base_space.clone(), table)?
                }
            };
            down[p.index()].push(map);
        }
    }
    Ok(HierarchyImage {
        structure: x.clone(),
        levels: out_levels,
        down,
        maps,
        bounds: *bounds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceFailure {
    pub player: Player,
    pub level: usize,
    pub ty: usize,
    pub menu: Menu<Act>,
    /// `υ_n(t)(K)`.
    pub expected: Menu<Act>,
    /// `Γ(down_n)(υ_{n+1}(t))(K)`.
    pub found: Menu<Act>,
}

/// Re-evaluates `υ_n = ξ_n ∘ υ_{n+1}` on the menu universe of every level.
pub fn coherence_check(h: &HierarchyImage) -> Result<Option<CoherenceFailure>> {
    let x = h.structure();
    for p in Player::BOTH {
        for n in 1..h.levels() {
            let universe = h.universe(p, n);
            for t in 0..x.types(p).len() {
                let projected = gamma_map(h.upsilon(p, n + 1, t), h.down(p, n));
                let lower = h.upsilon(p, n, t);
                for k in &universe.menus {
                    let (expected, found) = (lower.evaluate(k)?, projected.evaluate(k)?);
                    if expected != found {
                        return Ok(Some(CoherenceFailure {
                            player: p,
                            level: n,
                            ty: t,
                            menu: k.clone(),
                            expected,
                            found,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A menu on which two types choose differently: the observable event
/// `{C | C(K) ⊆ L}` contains `θ(inside)` but not `θ(outside)`.
#[derive(Debug, Clone)]
pub struct Separator {
    pub player: Player,
    pub round: usize,
    pub inside: usize,
    pub outside: usize,
    /// `K` over the level base.
    pub menu: Menu<Act>,
    /// `L = υ(inside)(K)`.
    pub choice: Menu<Act>,
    /// `K` pulled back to `A_opp × T_opp`.
    pub pulled_menu: Menu<Act>,
    pub menu_label: String,
    pub choice_label: String,
    pub other_label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certificate {
    /// Both types are given by one definition.
    IdenticalDefinition,
    /// The final round tried every menu of every act for both players.
    ExhaustiveSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsplitPair {
    pub player: Player,
    pub first: usize,
    pub second: usize,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone)]
pub struct BehavioralPartition {
    pub blocks: [Partition; 2],
    /// Partitions after each round; entry 0 is the starting point.
    pub history: Vec<[Partition; 2]>,
    pub separators: Vec<Separator>,
    /// Whether the last round's search covered every menu of every act.
    pub exhaustive: [bool; 2],
    pub unsplit: Vec<UnsplitPair>,
    pub bounds: SearchBounds,
}

impl BehavioralPartition {
    pub fn blocks(&self, p: Player) -> &Partition {
        &self.blocks[p.index()]
    }

    pub fn rounds(&self) -> usize {
        self.history.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NonRedundant,
    /// Certified pairs of behaviorally identical types.
    Redundant(Vec<UnsplitPair>),
    Inconclusive(SearchBounds),
}

struct Run {
    history: Vec<[Partition; 2]>,
    separators: Vec<Separator>,
    exhaustive: [bool; 2],
}

/// Runs refinement rounds; with `to_fixpoint` stops at the first round that
/// changes nothing, otherwise runs exactly `rounds` rounds.
fn refine(x: &ChoiceStructure, bounds: &SearchBounds, rounds: usize, to_fixpoint: bool) -> Result<Run> {
    let start = [
        Partition::trivial(x.types(Player::I).len()),
        Partition::trivial(x.types(Player::J).len()),
    ];
    let mut run = Run {
        history: vec![start],
        separators: Vec::new(),
        exhaustive: [false; 2],
    };
    let limit = if to_fixpoint {
        x.types(Player::I).len() + x.types(Player::J).len() + 1
    } else {
        rounds
    };
    for round in 1..=limit {
        let prev = run.history.last().expect("nonempty").clone();
        let mut next = prev.clone();
        for p in Player::BOTH {
            let current = &prev[p.index()];
            if current.is_discrete() {
                run.exhaustive[p.index()] = true;
                continue;
            }
            let opp = &prev[p.opponent().index()];
            let level = LevelDescriptor::new(x, p, round, (round > 1).then_some(opp))?;
            let universe = level.universe(x, bounds, stream(p, round));
            run.exhaustive[p.index()] = universe.exhaustive;
            let upsilon: Vec<ChoiceFn<Act>> = x
                .theta(p)
                .iter()
                .map(|c| gamma_map(c, &level.from_states))
                .collect();
            let mut groups: Vec<Vec<usize>> = current.blocks().to_vec();
            for k in &universe.menus {
                if groups.iter().all(|g| g.len() == 1) {
                    break;
                }
                let mut split = Vec::with_capacity(groups.len());
                for g in groups {
                    if g.len() == 1 {
                        split.push(g);
                        continue;
                    }
                    let mut classes: BTreeMap<Menu<Act>, Vec<usize>> = BTreeMap::new();
                    let mut order = Vec::new();
                    for &t in &g {
                        let c = upsilon[t].evaluate(k)?;
                        if !classes.contains_key(&c) {
                            order.push(c.clone());
                        }
                        classes.entry(c).or_default().push(t);
                    }
                    if order.len() > 1 {
                        let first = classes[&order[0]][0];
                        for c in &order[1..] {
                            let other = classes[c][0];
                            let (inside, outside) = if c.is_subset(&order[0]) {
                                (other, first)
                            } else {
                                (first, other)
                            };
                            let choice = upsilon[inside].evaluate(k)?;
                            let rejected = upsilon[outside].evaluate(k)?;
                            run.separators.push(Separator {
                                player: p,
                                round,
                                inside,
                                outside,
                                menu: k.clone(),
                                choice: choice.clone(),
                                pulled_menu: k
                                    .iter()
                                    .map(|a| crate::act::pullback(a, &level.from_states))
                                    .collect::<Result<Menu<Act>>>()?,
                                menu_label: level.render_menu(x, k),
                                choice_label: level.render_menu(x, &choice),
                                other_label: level.render_menu(x, &rejected),
                            });
                        }
                    }
                    split.extend(order.into_iter().map(|c| classes.remove(&c).expect("present")));
                }
                groups = split;
            }
            next[p.index()] = Partition::from_blocks(current.block_of.len(), groups)?;
        }
        let changed = next != prev;
        run.history.push(next);
        if to_fixpoint && !changed {
            break;
        }
    }
    Ok(run)
}

/// Splits types by menus of acts measurable with respect to the opponent's
/// current partition until nothing changes.
pub fn refine_partition(x: &ChoiceStructure, bounds: &SearchBounds) -> Result<BehavioralPartition> {
    let run = refine(x, bounds, 0, true)?;
    let blocks = run.history.last().expect("nonempty").clone();
    let exact = [
        run.exhaustive[0] || blocks[0].is_discrete(),
        run.exhaustive[1] || blocks[1].is_discrete(),
    ];
    let mut unsplit = Vec::new();
    for p in Player::BOTH {
        let theta = x.theta(p);
        for b in blocks[p.index()].blocks() {
            for (i, &s) in b.iter().enumerate() {
                for &t in &b[i + 1..] {
                    let certificate = if theta[s].same_definition(&theta[t]) {
                        Some(Certificate::IdenticalDefinition)
                    } else if exact[0] && exact[1] && run.exhaustive[p.index()] {
                        Some(Certificate::ExhaustiveSearch)
                    } else {
                        None
                    };
                    unsplit.push(UnsplitPair {
                        player: p,
                        first: s,
                        second: t,
                        certificate,
                    });
                }
            }
        }
    }
    Ok(BehavioralPartition {
        blocks,
        history: run.history,
        separators: run.separators,
        exhaustive: run.exhaustive,
        unsplit,
        bounds: *bounds,
    })
}

/// Non-redundant when both partitions are discrete, redundant when some
/// unsplit pair is certified, inconclusive otherwise.
pub fn non_redundancy_verdict(p: &BehavioralPartition) -> Verdict {
    if p.blocks.iter().all(Partition::is_discrete) {
        return Verdict::NonRedundant;
    }
    let certified: Vec<UnsplitPair> = p
        .unsplit
        .iter()
        .filter(|u| u.certificate.is_some())
        .cloned()
        .collect();
    if certified.is_empty() {
        Verdict::Inconclusive(p.bounds)
    } else {
        Verdict::Redundant(certified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act::pullback;
    use crate::choice::menus_up_to;
    use crate::criteria::{eu_choice, regret_choice, CredalSet};
    use crate::rational::rat;
    use crate::structure::{example_structure, example_structure_with_duplicate};

    fn names(x: &ChoiceStructure, p: Player, labels: &[&str]) -> Menu<Act> {
        let basis = x.basis(p);
        labels
            .iter()
            .map(|l| basis[x.actions(p).index_of(l).unwrap()].clone())
            .collect()
    }

    #[test]
    fn partitions() {
        let p = Partition::from_blocks(4, vec![vec![3, 1], vec![0], vec![2]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0], vec![1, 3], vec![2]]);
        assert!(Partition::discrete(4).refines(&p));
        assert!(p.refines(&Partition::trivial(4)));
        assert!(!Partition::trivial(4).refines(&p));
        assert!(Partition::from_blocks(3, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn level_one_reads_the_tables() {
        let x = example_structure();
        let ui = level_one_map(&x, Player::I);
        let h = hierarchy_map(&x, 1, &SearchBounds::default()).unwrap();
        let g = h.level(Player::I, 1).basis(&x);
        let all: Menu<Act> = g.iter().cloned().collect();
        let chosen = ui[0].evaluate(&all).unwrap();
        assert_eq!(chosen, g[..3].iter().cloned().collect());
        let uj = level_one_map(&x, Player::J);
        let g = h.level(Player::J, 1).basis(&x);
        let lr: Menu<Act> = g.iter().cloned().collect();
        assert_eq!(uj[0].evaluate(&lr).unwrap(), Menu::singleton(g[0].clone()));
        for n in [Player::I, Player::J] {
            for k in menus_up_to(&h.level(n, 1).basis(&x), 4) {
                for t in 0..x.types(n).len() {
                    assert_eq!(
                        h.upsilon(n, 1, t).evaluate(&k).unwrap(),
                        level_one_map(&x, n)[t].evaluate(&k).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn example_refines_at_the_first_round() {
        let x = example_structure();
        let b = refine_partition(&x, &SearchBounds::default()).unwrap();
        assert!(b.blocks(Player::J).is_discrete());
        assert_eq!(non_redundancy_verdict(&b), Verdict::NonRedundant);
        let s = &b.separators[0];
        assert_eq!((s.player, s.round), (Player::J, 1));
        assert_eq!(s.menu_label, "{f_l,f_r}");
        assert_eq!(s.pulled_menu, names(&x, Player::J, &["l", "r"]));
        let inside = x.theta(Player::J)[s.inside].evaluate(&s.pulled_menu).unwrap();
        let outside = x.theta(Player::J)[s.outside].evaluate(&s.pulled_menu).unwrap();
        let l = pullback_all(&s.choice, &x, s);
        assert!(inside.is_subset(&l));
        assert!(!outside.is_subset(&l));
    }

    fn pullback_all(m: &Menu<Act>, x: &ChoiceStructure, s: &Separator) -> Menu<Act> {
        let level = LevelDescriptor::new(x, s.player, 1, None).unwrap();
        m.iter()
            .map(|a| pullback(a, &level.from_states).unwrap())
            .collect()
    }

    #[test]
    fn duplicate_types_are_redundant() {
        let x = example_structure_with_duplicate();
        let b = refine_partition(&x, &SearchBounds::default()).unwrap();
        assert_eq!(b.blocks(Player::J).blocks(), &[vec![0, 1], vec![2]]);
        match non_redundancy_verdict(&b) {
            Verdict::Redundant(pairs) => {
                assert_eq!(pairs.len(), 1);
                assert_eq!(
                    (pairs[0].player, pairs[0].first, pairs[0].second),
                    (Player::J, 0, 1)
                );
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    fn with_joe(
        joe_types: &[&str],
        joe: impl Fn(&ChoiceStructure, usize) -> ChoiceFn<Act>,
    ) -> ChoiceStructure {
        let x = example_structure();
        let frame = x.frame().clone();
        let types_j = FinSpace::discrete(joe_types.iter().copied()).unwrap();
        let states_i = product(frame.actions(Player::J), &Arc::new(types_j.clone()));
        let ida = CredalSet::interval(frame.actions(Player::J).clone(), rat(1, 4), rat(1, 1))
            .unwrap()
            .vacuous_extension(&states_i)
            .unwrap();
        let theta_i = vec![regret_choice(&ida, &frame.utility(Player::I).unwrap())];
        let theta_j = (0..joe_types.len()).map(|t| joe(&x, t)).collect();
        ChoiceStructure::new(frame, (**x.types(Player::I)).clone(), types_j, theta_i, theta_j).unwrap()
    }

    /// Joe's types put 1/2 on `d` and 1/2 on `m` (first) or `u` (second).
    fn two_eu_types(first_on_m: bool) -> ChoiceStructure {
        with_joe(&["t_a", "t_b"], |x, t| {
            let mut v = vec![rat(0, 1); 4];
            v[if t == 0 && first_on_m { 1 } else { 0 }] = rat(1, 2);
            v[3] = rat(1, 2);
            let prior = CredalSet::point(x.states(Player::J).space.clone(), v).unwrap();
            eu_choice(&prior, &x.frame().utility(Player::J).unwrap()).unwrap()
        })
    }

    #[test]
    fn tight_bounds_are_inconclusive() {
        let x = two_eu_types(true);
        let bounds = SearchBounds {
            act_cap: 1,
            samples: 0,
            ..SearchBounds::default()
        };
        let b = refine_partition(&x, &bounds).unwrap();
        assert_eq!(non_redundancy_verdict(&b), Verdict::Inconclusive(bounds));
        let b = refine_partition(&x, &SearchBounds::default()).unwrap();
        assert_eq!(non_redundancy_verdict(&b), Verdict::NonRedundant);
    }

    #[test]
    fn single_types_are_non_redundant() {
        let x = with_joe(&["t"], |x, _| x.theta(Player::J)[0].clone());
        let b = refine_partition(&x, &SearchBounds::default()).unwrap();
        assert_eq!(non_redundancy_verdict(&b), Verdict::NonRedundant);
        assert!(b.separators.is_empty());
    }

    #[test]
    fn coherence_and_mutation() {
        let x = example_structure();
        let h = hierarchy_map(&x, 3, &SearchBounds::default()).unwrap();
        assert_eq!(coherence_check(&h).unwrap(), None);
        let k = names(&x, Player::J, &["l", "r"]);
        let level = h.level(Player::J, 1);
        let k1: Menu<Act> = level.basis(&x).into_iter().collect();
        assert_eq!(k.len(), k1.len());
        let original = h.upsilon(Player::J, 1, 0).evaluate(&k1).unwrap();
        let flipped: Menu<Act> = k1.filter(|a| !original.contains(a));
        let bad = h.replace_map(
            Player::J,
            1,
            0,
            h.upsilon(Player::J, 1, 0).with_override(k1.clone(), flipped),
        );
        let failure = coherence_check(&bad).unwrap().expect("detected");
        assert_eq!((failure.player, failure.level, failure.ty), (Player::J, 1, 0));
        assert_eq!(failure.menu, k1);
        let single = hierarchy_map(&x, 1, &SearchBounds::default()).unwrap();
        assert_eq!(coherence_check(&single).unwrap(), None);
    }

    #[test]
    fn level_two_sees_opponent_behavior() {
        let x = example_structure();
        let h = hierarchy_map(&x, 2, &SearchBounds::default()).unwrap();
        let level = h.level(Player::I, 2);
        assert_eq!(level.base_space.len(), 4);
        let pool =
            crate::act::enumerate_acts(&level.base_space, &x.frame().relevant_outcomes(Player::I), 4096)
                .unwrap();
        // Slices of a type-dependent act at one opponent block, read as
        // acts that ignore the opponent's type.
        let slice = |a: &Act, block: usize| {
            let table = (0..4).map(|k| a.at((k / 2) * 2 + block)).collect();
            Act::new(level.base_space.clone(), table).unwrap()
        };
        let c = h.upsilon(Player::I, 2, 0);
        let found = pool.iter().any(|f| {
            pool.iter().any(|g| {
                let k = Menu::new(vec![f.clone(), g.clone()]);
                if k.len() < 2 || (f.at(0) == f.at(1) && f.at(2) == f.at(3)) {
                    return false;
                }
                let sliced = Menu::new(vec![slice(f, 0), slice(g, 0)]);
                sliced.len() == 2
                    && c.evaluate(&k).unwrap().contains(f)
                        != c.evaluate(&sliced).unwrap().contains(&slice(f, 0))
            })
        });
        assert!(found);
    }

    #[test]
    fn duplicates_share_every_level() {
        let x = example_structure_with_duplicate();
        let h = hierarchy_map(&x, 3, &SearchBounds::default()).unwrap();
        for n in 1..=3 {
            let u = h.universe(Player::J, n);
            for k in &u.menus {
                assert_eq!(
                    h.upsilon(Player::J, n, 0).evaluate(k).unwrap(),
                    h.upsilon(Player::J, n, 1).evaluate(k).unwrap()
                );
            }
        }
        assert_eq!(coherence_check(&h).unwrap(), None);
    }
}
