//! Randomized and exhaustive checks of the algebraic laws the constructions
//! satisfy. Each check returns a [`LawReport`] listing counterexamples.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::act::{enumerate_acts, factor_through, pullback, Act};
use crate::choice::{
    colimit_choice, gamma_map, lift_along_injection, nonempty_menus, relabel, ChoiceFn, Menu,
};
use crate::criteria::{eu_choice, expected_utility, maxmin_values, regret_choice, CredalSet, UtilityView};
use crate::error::Result;
use crate::hierarchy::{coherence_check, hierarchy_map};
use crate::pref::{enumerate_posets, maximize_as_choicefn, normalize_preorder, prel_map, Poset, Preorder};
use crate::rational::{rat, Rat};
use crate::search::SearchBounds;
use crate::space::{FinSpace, MeasurableMap, SetChain};
use crate::structure::{example_structure, example_structure_with_duplicate, Player};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl LawReport {
    fn new(name: &'static str) -> Self {
        LawReport {
            name,
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 16 {
            self.failures.push(describe());
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0xA076_1D64_78BD_642F))
}

/// A space on 1..=max_points points with at most `max_atoms` atoms.
fn random_space(rng: &mut ChaCha8Rng, max_points: usize, max_atoms: usize, tag: &str) -> Arc<FinSpace> {
    let n = rng.gen_range(1..=max_points);
    let k = rng.gen_range(1..=max_atoms.min(n));
    let mut label: Vec<usize> = (0..n)
        .map(|i| if i < k { i } else { rng.gen_range(0..k) })
        .collect();
    label.shuffle(rng);
    let atoms: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..n).filter(|&i| label[i] == a).collect())
        .collect();
    let points = (0..n).map(|i| format!("{tag}{i}")).collect();
    Arc::new(FinSpace::from_atom_indices(points, atoms).expect("partition"))
}

/// Sends each domain atom into one codomain atom.
fn random_measurable(rng: &mut ChaCha8Rng, dom: &Arc<FinSpace>, cod: &Arc<FinSpace>) -> MeasurableMap {
    let mut table = vec![0; dom.len()];
    for atom in dom.atoms() {
        let target = &cod.atoms()[rng.gen_range(0..cod.atoms().len())];
        for &x in atom {
            table[x] = target[rng.gen_range(0..target.len())];
        }
    }
    MeasurableMap::new(dom.clone(), cod.clone(), table).expect("atoms land in atoms")
}

fn random_act(rng: &mut ChaCha8Rng, space: &Arc<FinSpace>, outcomes: usize) -> Act {
    let mut table = vec![0; space.len()];
    for atom in space.atoms() {
        let z = rng.gen_range(0..outcomes);
        for &x in atom {
            table[x] = z;
        }
    }
    Act::new(space.clone(), table).expect("constant on atoms")
}

/// An explicit choice function on every menu of `0..n`.
fn random_table(rng: &mut ChaCha8Rng, n: usize) -> ChoiceFn<usize> {
    let items: Vec<usize> = (0..n).collect();
    let table = nonempty_menus(&items)
        .into_iter()
        .map(|k| {
            let chosen = if k.len() == 1 {
                k.clone()
            } else {
                loop {
                    let c = k.filter(|_| rng.gen_bool(0.5));
                    if !c.is_empty() {
                        break c;
                    }
                }
            };
            (k, chosen)
        })
        .collect();
    ChoiceFn::extensional(table).expect("contraction holds")
}

/// A menu-dependent choice function defined on all menus of acts.
fn random_total(seed: u64) -> ChoiceFn<Act> {
    ChoiceFn::intensional(None, move |k: &Menu<Act>| {
        let score = |f: &Act| {
            let mut h = DefaultHasher::new();
            seed.hash(&mut h);
            f.table().hash(&mut h);
            for g in k {
                g.table().hash(&mut h);
            }
            h.finish()
        };
        let chosen = k.filter(|f| score(f) % 2 == 0);
        if !chosen.is_empty() {
            return Ok(chosen);
        }
        let best = k.iter().map(score).max().expect("nonempty");
        Ok(k.filter(|f| score(f) == best))
    })
}

/// A poset on `carrier` from random edges along a random linear order.
fn random_poset<T: Ord + Clone + std::fmt::Debug>(
    rng: &mut ChaCha8Rng,
    carrier: Vec<T>,
    density: f64,
) -> Poset<T> {
    let mut order = carrier.clone();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if rng.gen_bool(density) {
                pairs.push((order[a].clone(), order[b].clone()));
            }
        }
    }
    Poset::closure(carrier, &pairs).expect("edges follow a linear order")
}

fn agree<T>(a: &ChoiceFn<T>, b: &ChoiceFn<T>, menus: &[Menu<T>]) -> Result<Option<Menu<T>>>
where
    T: Ord + Clone + std::fmt::Debug + Send + Sync + 'static,
{
    crate::choice::first_disagreement(a, b, menus)
}

/// Identity and composition laws for relabelling, pullback, the
/// choice-over-acts map and preference transport.
pub fn functor_laws(instances: usize, seed: u64) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();

    let mut r = rng(seed, 1);
    let mut rep = LawReport::new("relabel identity and composition");
    for _ in 0..instances {
        let (nx, ny, nz) = (r.gen_range(1..=5), r.gen_range(1..=5), r.gen_range(1..=5));
        let f: Vec<usize> = (0..nx).map(|_| r.gen_range(0..ny)).collect();
        let g: Vec<usize> = (0..ny).map(|_| r.gen_range(0..nz)).collect();
        let c = random_table(&mut r, nz);
        let z_menus = nonempty_menus(&(0..nz).collect::<Vec<_>>());
        let same = relabel(&c, |z: &usize| *z);
        rep.check(agree(&c, &same, &z_menus)?.is_none(), || {
            format!("identity on {nz} points")
        });
        let (f2, g2) = (f.clone(), g.clone());
        let stepwise = relabel(&relabel(&c, move |y: &usize| g2[*y]), move |x: &usize| f2[*x]);
        let composed = relabel(&c, move |x: &usize| g[f[*x]]);
        let x_menus = nonempty_menus(&(0..nx).collect::<Vec<_>>());
        if let Some(k) = agree(&stepwise, &composed, &x_menus)? {
            rep.check(false, || format!("composition differs on {k:?}"));
        }
        rep.instances += 1;
    }
    out.push(rep);

    let mut r = rng(seed, 2);
    let mut rep = LawReport::new("pullback identity and composition");
    for _ in 0..instances {
        let x = random_space(&mut r, 5, 5, "x");
        let y = random_space(&mut r, 5, 5, "y");
        let w = random_space(&mut r, 5, 5, "w");
        let phi = random_measurable(&mut r, &x, &y);
        let psi = random_measurable(&mut r, &y, &w);
        let f = random_act(&mut r, &w, 3);
        let id = pullback(&f, &MeasurableMap::identity(w.clone()))?;
        rep.check(id == f, || format!("identity moves {f}"));
        let stepwise = pullback(&pullback(&f, &psi)?, &phi)?;
        let composed = pullback(&f, &phi.then(&psi)?)?;
        rep.check(stepwise == composed, || format!("{stepwise} vs {composed}"));
        rep.instances += 1;
    }
    out.push(rep);

    let mut r = rng(seed, 3);
    let mut rep = LawReport::new("gamma_map identity and composition");
    for i in 0..instances {
        let x = random_space(&mut r, 5, 3, "x");
        let y = random_space(&mut r, 5, 3, "y");
        let w = random_space(&mut r, 5, 3, "w");
        let phi = random_measurable(&mut r, &x, &y);
        let psi = random_measurable(&mut r, &y, &w);
        let c = random_total(seed ^ i as u64);
        let x_menus = nonempty_menus(&enumerate_acts(&x, &[0, 1], 64)?);
        let same = gamma_map(&c, &MeasurableMap::identity(x.clone()));
        if let Some(k) = agree(&c, &same, &x_menus)? {
            rep.check(false, || format!("identity differs on {k:?}"));
        }
        let stepwise = gamma_map(&gamma_map(&c, &phi), &psi);
        let composed = gamma_map(&c, &phi.then(&psi)?);
        let w_menus = nonempty_menus(&enumerate_acts(&w, &[0, 1], 64)?);
        if let Some(k) = agree(&stepwise, &composed, &w_menus)? {
            rep.check(false, || format!("composition differs on {k:?}"));
        }
        rep.instances += 1;
    }
    out.push(rep);

    let mut r = rng(seed, 4);
    let mut rep = LawReport::new("prel_map identity and composition");
    for _ in 0..instances {
        let (nx, ny, nz) = (r.gen_range(1..=5), r.gen_range(1..=5), r.gen_range(1..=5));
        let f: Vec<usize> = (0..nx).map(|_| r.gen_range(0..ny)).collect();
        let g: Vec<usize> = (0..ny).map(|_| r.gen_range(0..nz)).collect();
        let p = random_poset(&mut r, (0..nz).collect(), 0.4);
        let same = prel_map(&p, (0..nz).collect(), |z: &usize| *z)?;
        rep.check(same.as_ref() == Ok(&p), || format!("identity moves {p:?}"));
        let first: Preorder<usize> = match prel_map(&p, (0..ny).collect(), |y: &usize| g[*y])? {
            Ok(q) => q.as_preorder().clone(),
            Err(needs) => needs.0,
        };
        let stepwise = first.pull((0..nx).collect(), |x: &usize| f[*x])?;
        let composed = match prel_map(&p, (0..nx).collect(), |x: &usize| g[f[*x]])? {
            Ok(q) => q.as_preorder().clone(),
            Err(needs) => needs.0,
        };
        rep.check(stepwise == composed, || format!("composition differs for {p:?}"));
        rep.instances += 1;
    }
    out.push(rep);
    Ok(out)
}

/// Distinct posets on up to `max_carrier` points choose differently on some
/// menu.
pub fn poset_injectivity(max_carrier: usize) -> Result<LawReport> {
    let mut rep = LawReport::new("maximization is injective on posets");
    for n in 1..=max_carrier {
        let items: Vec<usize> = (0..n).collect();
        let menus = nonempty_menus(&items);
        let mut seen: BTreeMap<Vec<Menu<usize>>, usize> = BTreeMap::new();
        for (idx, m) in enumerate_posets(n).into_iter().enumerate() {
            let p = Poset::from_matrix(items.clone(), m)?;
            let c = maximize_as_choicefn(&p);
            let table = menus.iter().map(|k| c.evaluate(k)).collect::<Result<Vec<_>>>()?;
            if let Some(prev) = seen.insert(table, idx) {
                rep.check(false, || {
                    format!("posets {prev} and {idx} on {n} points choose alike")
                });
            }
            rep.instances += 1;
        }
    }
    Ok(rep)
}

/// Transporting a poset along `Fφ` and maximizing equals maximizing and
/// then transporting the choice function along `φ`.
pub fn naturality(instances: usize, seed: u64) -> Result<LawReport> {
    let mut r = rng(seed, 5);
    let mut rep = LawReport::new("maximization is natural");
    for _ in 0..instances {
        let z = r.gen_range(2..=3);
        let outcomes: Vec<usize> = (0..z).collect();
        let x = random_space(&mut r, 3, 3, "x");
        let y = random_space(&mut r, 3, 2, "y");
        let phi = random_measurable(&mut r, &x, &y);
        let acts_x = enumerate_acts(&x, &outcomes, 64)?;
        let acts_y = enumerate_acts(&y, &outcomes, 64)?;
        let p = random_poset(&mut r, acts_x, 0.15);
        let lhs = gamma_map(&maximize_as_choicefn(&p), &phi);
        let phi2 = phi.clone();
        let transported = match prel_map(&p, acts_y.clone(), move |g: &Act| {
            pullback(g, &phi2).expect("acts over the codomain")
        })? {
            Ok(q) => q,
            Err(needs) => normalize_preorder(&needs.0),
        };
        let rhs = maximize_as_choicefn(&transported);
        if let Some(k) = agree(&lhs, &rhs, &nonempty_menus(&acts_y))? {
            rep.check(false, || format!("differs on {k:?}"));
        }
        rep.instances += 1;
    }
    Ok(rep)
}

fn all_preorders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    (0u32..1 << off.len())
        .filter_map(|code| {
            let mut leq = vec![vec![false; n]; n];
            for (a, row) in leq.iter_mut().enumerate() {
                row[a] = true;
            }
            for (bit, &(a, b)) in off.iter().enumerate() {
                leq[a][b] = code >> bit & 1 == 1;
            }
            let transitive =
                (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
            transitive.then_some(leq)
        })
        .collect()
}

/// Maximal elements of a preorder and of its normalization coincide.
pub fn normalization_agreement(max_carrier: usize) -> Result<LawReport> {
    let mut rep = LawReport::new("normalization keeps maximal elements");
    for n in 1..=max_carrier {
        let items: Vec<usize> = (0..n).collect();
        let menus = nonempty_menus(&items);
        for m in all_preorders(n) {
            let q = Preorder::from_matrix(items.clone(), m)?;
            let p = normalize_preorder(&q);
            for k in &menus {
                let (a, b) = (q.maximize(k)?, p.maximize(k)?);
                rep.check(a == b, || format!("{q:?} on {k:?}: {a:?} vs {b:?}"));
            }
            rep.instances += 1;
        }
    }
    Ok(rep)
}

/// `max(K) ⊆ L` iff every `k ∈ K \ L` lies strictly below some `l ∈ L`.
pub fn measurability_identity(max_carrier: usize) -> Result<LawReport> {
    let mut rep = LawReport::new("preimage of a choice event under maximization");
    for n in 1..=max_carrier {
        let items: Vec<usize> = (0..n).collect();
        let menus = nonempty_menus(&items);
        for m in enumerate_posets(n) {
            let p = Poset::from_matrix(items.clone(), m.clone())?;
            let strict = |a: usize, b: usize| m[a][b] && !m[b][a];
            for k in &menus {
                let max = p.maximize(k)?;
                for l in std::iter::once(Menu::empty()).chain(nonempty_menus(k.items())) {
                    let formula = k
                        .iter()
                        .filter(|x| !l.contains(x))
                        .all(|&x| l.iter().any(|&y| strict(x, y)));
                    rep.check(max.is_subset(&l) == formula, || {
                        format!("poset {m:?}, K={k:?}, L={l:?}")
                    });
                }
            }
            rep.instances += 1;
        }
    }
    Ok(rep)
}

/// Lifting along an injection and relabelling back is the identity.
pub fn lift_round_trips(instances: usize, seed: u64) -> Result<LawReport> {
    let mut r = rng(seed, 6);
    let mut rep = LawReport::new("relabel after lift is the identity");
    for _ in 0..instances {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(n..=6);
        let mut targets: Vec<usize> = (0..m).collect();
        targets.shuffle(&mut r);
        targets.truncate(n);
        let c = random_table(&mut r, n);
        let domain: Vec<usize> = (0..n).collect();
        let t = targets.clone();
        let lifted = lift_along_injection(&c, &domain, move |x: &usize| t[*x])?;
        let back = relabel(&lifted, move |x: &usize| targets[*x]);
        if let Some(k) = agree(&c, &back, &nonempty_menus(&domain))? {
            rep.check(false, || format!("round trip differs on {k:?}"));
        }
        rep.instances += 1;
    }
    Ok(rep)
}

/// `factor_through` recovers an act `f'` with `f = f' ∘ φ`.
pub fn factorization(instances: usize, seed: u64) -> Result<LawReport> {
    let mut r = rng(seed, 7);
    let mut rep = LawReport::new("factor_through reconstructs the act");
    for _ in 0..instances {
        let x = random_space(&mut r, 5, 5, "x");
        let y = random_space(&mut r, 5, 5, "y");
        let phi = random_measurable(&mut r, &x, &y);
        let g = random_act(&mut r, &y, 4);
        let f = pullback(&g, &phi)?;
        let witnesses: BTreeMap<usize, BTreeSet<usize>> =
            f.range().into_iter().map(|z| (z, g.preimage(z))).collect();
        let h = factor_through(&f, &phi, &witnesses, 0)?;
        let back = pullback(&h, &phi)?;
        rep.check(back == f, || format!("{f} factored to {h}"));
        rep.instances += 1;
    }
    Ok(rep)
}

/// The colimit choice function restricts to every level of the family.
pub fn colimit_choices(instances: usize, seed: u64) -> Result<LawReport> {
    let mut r = rng(seed, 8);
    let mut rep = LawReport::new("colimit choice restricts to each level");
    for _ in 0..instances {
        let depth = r.gen_range(1..=3);
        let sizes: Vec<usize> = (0..=depth).map(|_| r.gen_range(1..=4)).collect();
        let maps: Vec<Vec<usize>> = (0..depth)
            .map(|n| (0..sizes[n]).map(|_| r.gen_range(0..sizes[n + 1])).collect())
            .collect();
        let levels = sizes
            .iter()
            .enumerate()
            .map(|(n, &s)| (0..s).map(|i| format!("x{n}_{i}")).collect())
            .collect();
        let chain = SetChain::new(levels, maps.clone())?;
        let mut family = vec![random_table(&mut r, sizes[depth])];
        for n in (0..depth).rev() {
            let map = maps[n].clone();
            let above = family[0].clone();
            family.insert(0, relabel(&above, move |x: &usize| map[*x]));
        }
        let (colimit, mu) = colimit_choice(&chain, &family)?;
        for (n, phi) in family.iter().enumerate() {
            let inj = colimit.injections[n].clone();
            let restricted = relabel(&mu, move |x: &usize| inj[*x]);
            let menus = nonempty_menus(&(0..sizes[n]).collect::<Vec<_>>());
            if let Some(k) = agree(phi, &restricted, &menus)? {
                rep.check(false, || format!("level {n} differs on {k:?}"));
            }
        }
        rep.instances += 1;
    }
    Ok(rep)
}

/// Expected utility and minimax regret agree under a single prior.
pub fn eu_equals_regret_on_points(instances: usize, seed: u64) -> Result<LawReport> {
    let mut r = rng(seed, 9);
    let mut rep = LawReport::new("regret under one prior is expected utility");
    for _ in 0..instances {
        let n = r.gen_range(1..=4);
        let space = Arc::new(FinSpace::discrete((0..n).map(|i| format!("s{i}")))?);
        let z = r.gen_range(1..=4);
        let u = UtilityView::new(
            0,
            (0..z)
                .map(|_| rat(r.gen_range(-10..=10), r.gen_range(1..=4)))
                .collect(),
        );
        let weights: Vec<i64> = (0..n).map(|_| r.gen_range(0..=4)).collect();
        let total: i64 = weights.iter().sum::<i64>().max(1);
        let mut probs: Vec<Rat> = weights.iter().map(|&w| rat(w, total)).collect();
        if weights.iter().all(|&w| w == 0) {
            probs[0] = rat(1, 1);
        }
        let belief = CredalSet::point(space.clone(), probs)?;
        let size = r.gen_range(1..=4);
        let menu: Menu<Act> = (0..size).map(|_| random_act(&mut r, &space, z)).collect();
        let a = eu_choice(&belief, &u)?.evaluate(&menu)?;
        let b = regret_choice(&belief, &u).evaluate(&menu)?;
        rep.check(a == b, || format!("menu {menu:?}: {a:?} vs {b:?}"));
        rep.instances += 1;
    }
    Ok(rep)
}

/// Worst expected utility over an interval of priors, computed at its end
/// points, matches a fine grid of the interval.
pub fn maxmin_grid(instances: usize, seed: u64) -> Result<LawReport> {
    let mut r = rng(seed, 10);
    let mut rep = LawReport::new("maxmin values sit at extreme points");
    let space = Arc::new(FinSpace::discrete(["a", "b"])?);
    for _ in 0..instances {
        let (x, y) = (r.gen_range(0..=12), r.gen_range(0..=12));
        let (lo, hi) = (rat(x.min(y), 12), rat(x.max(y), 12));
        if lo == hi {
            continue;
        }
        let belief = CredalSet::interval(space.clone(), lo, hi)?;
        let u = UtilityView::new(
            0,
            (0..3)
                .map(|_| rat(r.gen_range(-6..=6), r.gen_range(1..=3)))
                .collect(),
        );
        let f = random_act(&mut r, &space, 3);
        let extreme = maxmin_values(&belief, &u, &Menu::singleton(f.clone()))?[0];
        let steps = 48;
        let mut grid_min: Option<Rat> = None;
        for s in 0..=steps {
            let p = lo + (hi - lo) * rat(s, steps);
            let v = expected_utility(&f, &[rat(1, 1) - p, p], &u);
            rep.check(v >= extreme, || format!("grid value {v} below {extreme}"));
            grid_min = Some(grid_min.map_or(v, |m: Rat| m.min(v)));
        }
        rep.check(grid_min == Some(extreme), || {
            format!("grid minimum misses {extreme}")
        });
        rep.instances += 1;
    }
    Ok(rep)
}

/// Coherence of the hierarchy of the example up to `levels`, identical maps
/// for duplicated types, and detection of single flipped answers.
pub fn hierarchy_laws(levels: usize, bounds: &SearchBounds) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let x = example_structure();
    let h = hierarchy_map(&x, levels, bounds)?;
    let mut rep = LawReport::new("hierarchy maps are coherent");
    let failure = coherence_check(&h)?;
    rep.check(failure.is_none(), || format!("{failure:?}"));
    rep.instances = levels;
    out.push(rep);

    let d = example_structure_with_duplicate();
    let hd = hierarchy_map(&d, levels, bounds)?;
    let mut rep = LawReport::new("duplicated types share every level");
    for n in 1..=levels {
        let universe = hd.universe(Player::J, n);
        if let Some(k) = agree(
            hd.upsilon(Player::J, n, 0),
            hd.upsilon(Player::J, n, 1),
            &universe.menus,
        )? {
            rep.check(false, || {
                format!(
                    "level {n} differs on {}",
                    hd.level(Player::J, n).render_menu(&d, &k)
                )
            });
        }
        rep.instances += 1;
    }
    out.push(rep);

    let mut rep = LawReport::new("flipped answers break coherence");
    for p in Player::BOTH {
        for n in 1..levels {
            for t in 0..x.types(p).len() {
                for k in h.universe(p, n).menus.iter().filter(|k| k.len() > 1).take(3) {
                    let original = h.upsilon(p, n, t).evaluate(k)?;
                    let flipped = if original == *k {
                        Menu::singleton(k.items()[0].clone())
                    } else {
                        k.clone()
                    };
                    let bad = h.replace_map(p, n, t, h.upsilon(p, n, t).with_override(k.clone(), flipped));
                    let caught = coherence_check(&bad)?;
                    rep.check(caught.is_some(), || {
                        format!("undetected flip at {p}, level {n}, type {t}")
                    });
                    rep.instances += 1;
                }
            }
        }
    }
    out.push(rep);
    Ok(out)
}

/// Every law check at the sizes used for acceptance.
pub fn full_suite(seed: u64, bounds: &SearchBounds) -> Result<Vec<LawReport>> {
    let mut out = functor_laws(200, seed)?;
    out.push(poset_injectivity(4)?);
    out.push(naturality(100, seed)?);
    out.push(normalization_agreement(4)?);
    out.push(measurability_identity(4)?);
    out.push(lift_round_trips(100, seed)?);
    out.push(factorization(100, seed)?);
    out.push(colimit_choices(50, seed)?);
    out.push(eu_equals_regret_on_points(200, seed)?);
    out.push(maxmin_grid(100, seed)?);
    out.extend(hierarchy_laws(3, bounds)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| all_preorders(n).len()).collect();
        assert_eq!(counts, [1, 4, 29, 355]);
    }

    #[test]
    fn small_suites_pass() {
        for rep in functor_laws(10, 3).unwrap() {
            assert!(rep.passed(), "{rep:?}");
        }
        assert!(poset_injectivity(3).unwrap().passed());
        assert!(naturality(5, 3).unwrap().passed());
        assert!(factorization(10, 3).unwrap().passed());
        assert!(colimit_choices(10, 3).unwrap().passed());
        assert!(lift_round_trips(10, 3).unwrap().passed());
    }

    #[test]
    fn a_broken_law_is_reported() {
        let mut rep = LawReport::new("demo");
        rep.check(false, || "boom".into());
        assert!(!rep.passed());
    }
}
