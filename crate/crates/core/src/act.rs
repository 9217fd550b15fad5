//! Savage acts: measurable finite step functions into a finite outcome set.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rat};
use crate::space::{CochainLimit, FinCochain, FinSpace, MeasurableMap};

pub const DEFAULT_ACT_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSet {
    names: Vec<String>,
    utilities: Option<Vec<Vec<Rat>>>,
}

impl OutcomeSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateIdentifier(n.clone()));
            }
        }
        Ok(OutcomeSet {
            names,
            utilities: None,
        })
    }

    /// Outcomes carrying one utility per player.
    pub fn with_utilities(names: Vec<String>, utilities: Vec<Vec<Rat>>) -> Result<Self> {
        let mut set = Self::new(names)?;
        if utilities.len() != set.names.len() {
            return Err(Error::NotTotal {
                expected: set.names.len(),
                found: utilities.len(),
            });
        }
        let players = utilities[0].len();
        if players == 0 || utilities.iter().any(|u| u.len() != players) {
            return Err(Error::InvalidArgument(
                "every outcome needs a utility for every player".into(),
            ));
        }
        set.utilities = Some(utilities);
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, z: usize) -> &str {
        &self.names[z]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn utility(&self, z: usize, player: usize) -> Option<Rat> {
        self.utilities.as_ref().map(|u| u[z][player])
    }

    pub fn has_utilities(&self) -> bool {
        self.utilities.is_some()
    }

    pub fn players(&self) -> usize {
        self.utilities.as_ref().map_or(0, |u| u[0].len())
    }

    /// One representative per class of outcomes that `player` values equally,
    /// in canonical order. Without utilities every outcome is its own class.
    pub fn relevant_outcomes(&self, player: usize) -> Vec<usize> {
        match &self.utilities {
            None => (0..self.len()).collect(),
            Some(u) => {
                let mut seen = BTreeSet::new();
                (0..self.len()).filter(|&z| seen.insert(u[z][player])).collect()
            }
        }
    }

    pub fn describe(&self, z: usize) -> String {
        match &self.utilities {
            Some(u) if self.names[z].is_empty() => {
                u[z].iter().map(format_rational).collect::<Vec<_>>().join(";")
            }
            _ => self.names[z].clone(),
        }
    }
}

/// A Savage act over a finite space. Equality is pointwise on the table.
#[derive(Debug, Clone)]
pub struct Act {
    space: Arc<FinSpace>,
    table: Vec<usize>,
}

impl Act {
    pub fn new(space: Arc<FinSpace>, table: Vec<usize>) -> Result<Self> {
        if table.len() != space.len() {
            return Err(Error::NotTotal {
                expected: space.len(),
                found: table.len(),
            });
        }
        for atom in space.atoms() {
            let z = table[atom[0]];
            if atom.iter().any(|&p| table[p] != z) {
                return Err(Error::NotMeasurable(format!(
                    "act is not constant on atom containing `{}`",
                    space.point(atom[0])
                )));
            }
        }
        Ok(Act { space, table })
    }

    pub fn constant(space: Arc<FinSpace>, outcome: usize) -> Self {
        let table = vec![outcome; space.len()];
        Act { space, table }
    }

    pub fn space(&self) -> &Arc<FinSpace> {
        &self.space
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn at(&self, point: usize) -> usize {
        self.table[point]
    }

    /// Outcomes in the range, ascending.
    pub fn range(&self) -> BTreeSet<usize> {
        self.table.iter().copied().collect()
    }

    pub fn preimage(&self, outcome: usize) -> BTreeSet<usize> {
        (0..self.table.len())
            .filter(|&p| self.table[p] == outcome)
            .collect()
    }

    pub fn render(&self, outcomes: &OutcomeSet) -> String {
        let cells: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(p, &z)| format!("{}:{}", self.space.point(p), outcomes.describe(z)))
            .collect();
        format!("[{}]", cells.join(" "))
    }

    fn same_space(&self, other: &Act) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }
}

impl PartialEq for Act {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.same_space(other)
    }
}

impl Eq for Act {}

impl Hash for Act {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.table.hash(state);
    }
}

impl PartialOrd for Act {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Act {
    fn cmp(&self, other: &Self) -> Ordering {
        self.table.cmp(&other.table).then_with(|| {
            if self.same_space(other) {
                Ordering::Equal
            } else {
                self.space
                    .points()
                    .cmp(other.space.points())
                    .then_with(|| self.space.atoms().cmp(other.space.atoms()))
            }
        })
    }
}

impl fmt::Display for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(p, z)| format!("{}:{z}", self.space.point(p)))
            .collect();
        write!(f, "[{}]", cells.join(" "))
    }
}

/// `f ∘ φ`.
pub fn pullback(f: &Act, phi: &MeasurableMap) -> Result<Act> {
    if !(Arc::ptr_eq(f.space(), phi.codomain()) || **f.space() == **phi.codomain()) {
        return Err(Error::SpaceMismatch(
            "pullback: act space differs from the map's codomain".into(),
        ));
    }
    Ok(Act {
        space: phi.domain().clone(),
        table: phi.table().iter().map(|&y| f.table[y]).collect(),
    })
}

/// Every act over `space` with values in `outcomes`, i.e. every assignment of
/// an outcome to each atom.
pub fn enumerate_acts(space: &Arc<FinSpace>, outcomes: &[usize], cap: usize) -> Result<Vec<Act>> {
    let atoms = space.atoms().len() as u32;
    let needed = (outcomes.len() as u128).checked_pow(atoms).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::ActCapExceeded { needed, cap });
    }
    if outcomes.is_empty() {
        return Ok(Vec::new());
    }
    let mut acts = Vec::with_capacity(needed as usize);
    let mut digits = vec![0usize; atoms as usize];
    loop {
        let mut table = vec![0; space.len()];
        for (a, atom) in space.atoms().iter().enumerate() {
            for &p in atom {
                table[p] = outcomes[digits[a]];
            }
        }
        acts.push(Act {
            space: space.clone(),
            table,
        });
        // odometer, last atom fastest
        let mut k = digits.len();
        loop {
            if k == 0 {
                return Ok(acts);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < outcomes.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

pub fn enumerate_all_acts(space: &Arc<FinSpace>, z: &OutcomeSet, cap: usize) -> Result<Vec<Act>> {
    let all: Vec<usize> = (0..z.len()).collect();
    enumerate_acts(space, &all, cap)
}

/// Factors `f` through `φ` given, for each outcome `z` in the range of `f`, a
/// measurable event `E_z ⊆ Y` with `f^{-1}[{z}] = φ^{-1}[E_z]`.
///
/// Points of `Y` outside every `H_n` receive `default_outcome`.
pub fn factor_through(
    f: &Act,
    phi: &MeasurableMap,
    witnesses: &BTreeMap<usize, BTreeSet<usize>>,
    default_outcome: usize,
) -> Result<Act> {
    if **f.space() != **phi.domain() {
        return Err(Error::SpaceMismatch(
            "factor_through: act space differs from the map's domain".into(),
        ));
    }
    let y = phi.codomain();
    let range = f.range();
    for &z in &range {
        let event = witnesses.get(&z).ok_or_else(|| Error::WitnessMismatch {
            outcome: z,
            reason: "no witness event".into(),
        })?;
        if !y.is_event(event) {
            return Err(Error::WitnessMismatch {
                outcome: z,
                reason: "witness is not measurable in the codomain".into(),
            });
        }
        if phi.preimage(event) != f.preimage(z) {
            return Err(Error::WitnessMismatch {
                outcome: z,
                reason: "preimage of the witness differs from the level set".into(),
            });
        }
    }
    // H_1 = E_1, H_{n+1} = E_{n+1} \ (H_1 ∪ … ∪ H_n), H_0 = the rest.
    let mut table = vec![default_outcome; y.len()];
    let mut covered = BTreeSet::new();
    for &z in &range {
        for &p in &witnesses[&z] {
            if covered.insert(p) {
                table[p] = z;
            }
        }
    }
    let lifted = Act::new(y.clone(), table)?;
    debug_assert_eq!(pullback(&lifted, phi).ok().as_ref(), Some(f));
    Ok(lifted)
}

/// Pushes an act on the limit of a cochain down to the least level `m` with
/// an act `f'` on `X_m` such that `f = f' ∘ ζ_m`.
pub fn descend_level(f: &Act, cochain: &FinCochain, limit: &CochainLimit) -> Result<(usize, Act)> {
    if **f.space() != *limit.space {
        return Err(Error::SpaceMismatch(
            "descend_level: act is not over the limit space".into(),
        ));
    }
    for (m, zeta) in limit.projections.iter().enumerate() {
        let level = &cochain.levels()[m];
        let mut witnesses = BTreeMap::new();
        let mut usable = true;
        for z in f.range() {
            let fiber = f.preimage(z);
            let image = zeta.image(&fiber);
            if !level.is_event(&image) || zeta.preimage(&image) != fiber {
                usable = false;
                break;
            }
            witnesses.insert(z, image);
        }
        if usable {
            let lowered = factor_through(f, zeta, &witnesses, 0)?;
            return Ok((m, lowered));
        }
    }
    // The top projection is a bijection onto X_N carrying the same algebra,
    // so the loop always returns.
    unreachable!("every act on the limit factors through the top level")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::product;

    fn xyz() -> Arc<FinSpace> {
        Arc::new(
            FinSpace::new(
                vec!["x".into(), "y".into(), "z".into()],
                &[vec!["x", "y"], vec!["z"]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn enumeration_counts() {
        let one = Arc::new(FinSpace::trivial(["a", "b", "c"]).unwrap());
        let z8: Vec<usize> = (0..8).collect();
        assert_eq!(enumerate_acts(&one, &z8, 4096).unwrap().len(), 8);
        let two = Arc::new(FinSpace::discrete(["a", "b"]).unwrap());
        assert_eq!(enumerate_acts(&two, &[0, 1], 4096).unwrap().len(), 4);
        assert_eq!(enumerate_acts(&xyz(), &[0, 1, 2], 4096).unwrap().len(), 9);
    }

    #[test]
    fn enumeration_respects_cap() {
        let s = Arc::new(FinSpace::discrete(["a", "b", "c"]).unwrap());
        let z: Vec<usize> = (0..20).collect();
        assert!(matches!(
            enumerate_acts(&s, &z, 4096),
            Err(Error::ActCapExceeded { needed: 8000, .. })
        ));
    }

    #[test]
    fn enumerated_acts_are_distinct_and_measurable() {
        let acts = enumerate_acts(&xyz(), &[0, 1, 2], 4096).unwrap();
        let set: BTreeSet<&Act> = acts.iter().collect();
        assert_eq!(set.len(), acts.len());
        for a in &acts {
            assert_eq!(a.at(0), a.at(1));
        }
    }

    #[test]
    fn act_must_be_constant_on_atoms() {
        assert!(Act::new(xyz(), vec![0, 1, 1]).is_err());
        assert!(Act::new(xyz(), vec![1, 1, 0]).is_ok());
    }

    #[test]
    fn pullback_along_identity_and_constant() {
        let s = xyz();
        let f = Act::new(s.clone(), vec![2, 2, 5]).unwrap();
        assert_eq!(pullback(&f, &MeasurableMap::identity(s.clone())).unwrap(), f);
        let d = Arc::new(FinSpace::discrete(["p", "q"]).unwrap());
        let phi = MeasurableMap::new(d.clone(), s.clone(), vec![2, 0]).unwrap();
        let c = Act::constant(s, 3);
        assert_eq!(pullback(&c, &phi).unwrap(), Act::constant(d, 3));
    }

    #[test]
    fn pullback_rejects_mismatched_space() {
        let f = Act::constant(xyz(), 0);
        let d = Arc::new(FinSpace::discrete(["p"]).unwrap());
        assert!(pullback(&f, &MeasurableMap::identity(d)).is_err());
    }

    #[test]
    fn factor_through_surjection() {
        let x = Arc::new(FinSpace::discrete(["a1", "a2", "b"]).unwrap());
        let y = Arc::new(FinSpace::discrete(["a", "b"]).unwrap());
        let phi = MeasurableMap::new(x.clone(), y.clone(), vec![0, 0, 1]).unwrap();
        let g = Act::new(y.clone(), vec![4, 7]).unwrap();
        let f = pullback(&g, &phi).unwrap();
        let witnesses = BTreeMap::from([(4, BTreeSet::from([0])), (7, BTreeSet::from([1]))]);
        assert_eq!(factor_through(&f, &phi, &witnesses, 0).unwrap(), g);
    }

    #[test]
    fn factor_through_first_projection() {
        let y = Arc::new(FinSpace::discrete(["l", "r"]).unwrap());
        let w = Arc::new(FinSpace::discrete(["s", "t", "v"]).unwrap());
        let p = product(&y, &w);
        let f = Act::new(p.space.clone(), vec![1, 1, 1, 0, 0, 0]).unwrap();
        let witnesses = BTreeMap::from([(1, BTreeSet::from([0])), (0, BTreeSet::from([1]))]);
        let lowered = factor_through(&f, &p.first, &witnesses, 0).unwrap();
        for k in 0..p.space.len() {
            assert_eq!(lowered.at(p.first.apply(k)), f.at(k));
        }
    }

    #[test]
    fn factor_through_rejects_inconsistent_witness() {
        let y = Arc::new(FinSpace::discrete(["l", "r"]).unwrap());
        let f = Act::new(y.clone(), vec![1, 0]).unwrap();
        let witnesses = BTreeMap::from([(1, BTreeSet::from([1])), (0, BTreeSet::from([0]))]);
        let id = MeasurableMap::identity(y);
        assert!(matches!(
            factor_through(&f, &id, &witnesses, 0),
            Err(Error::WitnessMismatch { .. })
        ));
    }

    #[test]
    fn unreached_points_get_default_outcome() {
        let x = Arc::new(FinSpace::discrete(["a"]).unwrap());
        let y = Arc::new(FinSpace::discrete(["p", "q"]).unwrap());
        let phi = MeasurableMap::new(x.clone(), y.clone(), vec![1]).unwrap();
        let f = Act::constant(x, 3);
        let witnesses = BTreeMap::from([(3, BTreeSet::from([1]))]);
        let lifted = factor_through(&f, &phi, &witnesses, 0).unwrap();
        assert_eq!(lifted.table(), &[0, 3]);
    }

    fn three_level_cochain() -> FinCochain {
        let x0 = Arc::new(FinSpace::discrete(["*"]).unwrap());
        let x1 = Arc::new(FinSpace::discrete(["a", "b"]).unwrap());
        let x2 = Arc::new(FinSpace::discrete(["a1", "a2", "b1"]).unwrap());
        let l0 = MeasurableMap::new(x1.clone(), x0.clone(), vec![0, 0]).unwrap();
        let l1 = MeasurableMap::new(x2.clone(), x1.clone(), vec![0, 0, 1]).unwrap();
        FinCochain::new(vec![x0, x1, x2], vec![l0, l1]).unwrap()
    }

    #[test]
    fn descend_constant_act_to_level_zero() {
        let c = three_level_cochain();
        let lim = crate::space::cochain_limit(&c);
        let f = Act::constant(lim.space.clone(), 2);
        let (m, g) = descend_level(&f, &c, &lim).unwrap();
        assert_eq!(m, 0);
        assert_eq!(pullback(&g, &lim.projections[0]).unwrap(), f);
    }

    #[test]
    fn descend_level_one_act() {
        let c = three_level_cochain();
        let lim = crate::space::cochain_limit(&c);
        let g1 = Act::new(c.levels()[1].clone(), vec![1, 0]).unwrap();
        let f = pullback(&g1, &lim.projections[1]).unwrap();
        let (m, g) = descend_level(&f, &c, &lim).unwrap();
        assert!(m <= 1);
        assert_eq!(pullback(&g, &lim.projections[m]).unwrap(), f);
    }

    #[test]
    fn descend_top_separating_act_needs_top_level() {
        // a1 and a2 merge below level 2, so an act separating them lives at 2
        let c = three_level_cochain();
        let lim = crate::space::cochain_limit(&c);
        let f = Act::new(lim.space.clone(), vec![0, 1, 0]).unwrap();
        let (m, g) = descend_level(&f, &c, &lim).unwrap();
        assert_eq!(m, 2);
        assert_eq!(pullback(&g, &lim.projections[2]).unwrap(), f);
    }

    #[test]
    fn relevant_outcomes_merge_equal_utilities() {
        let r = |n| Rat::from_integer(n);
        let z = OutcomeSet::with_utilities(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![r(1), r(0)], vec![r(1), r(2)], vec![r(3), r(2)]],
        )
        .unwrap();
        assert_eq!(z.relevant_outcomes(0), vec![0, 2]);
        assert_eq!(z.relevant_outcomes(1), vec![0, 1]);
    }
}
