//! Choice functions and the contravariant action on them.
//!
//! A [`ChoiceFn`] is either an explicit table over a declared menu universe or
//! a pure evaluator that answers any finite menu. Both obey contraction:
//! `C(K) ⊆ K`. The empty menu always chooses the empty set.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::act::{pullback, Act};
use crate::error::{Error, Result};
use crate::space::{chain_colimit, ChainColimit, MeasurableMap, SetChain};

/// A finite set of alternatives, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Menu<T>(Vec<T>);

impl<T: Ord> Menu<T> {
    pub fn new(mut items: Vec<T>) -> Self {
        items.sort();
        items.dedup();
        Menu(items)
    }

    pub fn empty() -> Self {
        Menu(Vec::new())
    }

    pub fn singleton(item: T) -> Self {
        Menu(vec![item])
    }

    pub fn items(&self) -> &[T] {
        &self.0
    }

    pub fn into_items(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: &T) -> bool {
        self.0.binary_search(item).is_ok()
    }

    pub fn is_subset(&self, other: &Menu<T>) -> bool {
        self.0.iter().all(|x| other.contains(x))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    /// Items of `self` that satisfy the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&T) -> bool) -> Menu<T>
    where
        T: Clone,
    {
        Menu(self.0.iter().filter(|x| keep(x)).cloned().collect())
    }
}

impl<T: Ord> FromIterator<T> for Menu<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Menu::new(iter.into_iter().collect())
    }
}

impl<'a, T> IntoIterator for &'a Menu<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<T: fmt::Debug> fmt::Debug for Menu<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// All nonempty submenus of `items`, ordered by size then lexicographically
/// by position.
pub fn nonempty_menus<T: Ord + Clone>(items: &[T]) -> Vec<Menu<T>> {
    menus_up_to(items, items.len())
}

/// All nonempty submenus with at most `max_size` items.
pub fn menus_up_to<T: Ord + Clone>(items: &[T], max_size: usize) -> Vec<Menu<T>> {
    let mut out = Vec::new();
    for size in 1..=max_size.min(items.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(Menu::new(idx.iter().map(|&i| items[i].clone()).collect()));
            let mut k = size;
            let mut advanced = false;
            while k > 0 {
                k -= 1;
                if idx[k] < items.len() - size + k {
                    idx[k] += 1;
                    for m in k + 1..size {
                        idx[m] = idx[m - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

pub(crate) fn show<T: fmt::Debug>(menu: &Menu<T>) -> String {
    format!("{menu:?}")
}

type Evaluator<T> = dyn Fn(&Menu<T>) -> Result<Menu<T>> + Send + Sync;

#[derive(Clone)]
enum Body<T> {
    Extensional(Arc<BTreeMap<Menu<T>, Menu<T>>>),
    Intensional(Arc<Evaluator<T>>),
}

#[derive(Clone)]
pub struct ChoiceFn<T> {
    body: Body<T>,
    /// Identifies evaluators built from identical definitions.
    signature: Option<String>,
    /// False when some menus are not evaluable (an explicit table is involved).
    total: bool,
}

impl<T: fmt::Debug> fmt::Debug for ChoiceFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Extensional(t) => f.debug_tuple("Extensional").field(&t.len()).finish(),
            Body::Intensional(_) => f.debug_tuple("Intensional").field(&self.signature).finish(),
        }
    }
}

impl<T: Ord + Clone + fmt::Debug + Send + Sync + 'static> ChoiceFn<T> {
    /// An explicit table. Every entry must satisfy contraction and singleton
    /// entries must choose themselves; singletons absent from the table are
    /// answered by themselves.
    pub fn extensional(table: BTreeMap<Menu<T>, Menu<T>>) -> Result<Self> {
        for (k, c) in &table {
            if !c.is_subset(k) {
                return Err(Error::ContractionViolated {
                    menu: show(k),
                    chosen: show(c),
                });
            }
            if k.len() == 1 && c != k {
                return Err(Error::SingletonViolated(show(k)));
            }
        }
        Ok(ChoiceFn {
            body: Body::Extensional(Arc::new(table)),
            signature: None,
            total: false,
        })
    }

    /// A pure evaluator defined on every finite menu.
    pub fn intensional(
        signature: Option<String>,
        eval: impl Fn(&Menu<T>) -> Result<Menu<T>> + Send + Sync + 'static,
    ) -> Self {
        ChoiceFn {
            body: Body::Intensional(Arc::new(eval)),
            signature,
            total: true,
        }
    }

    /// An evaluator defined only on some menus.
    pub fn partial(
        signature: Option<String>,
        eval: impl Fn(&Menu<T>) -> Result<Menu<T>> + Send + Sync + 'static,
    ) -> Self {
        ChoiceFn {
            body: Body::Intensional(Arc::new(eval)),
            signature,
            total: false,
        }
    }

    fn derived(total: bool, eval: impl Fn(&Menu<T>) -> Result<Menu<T>> + Send + Sync + 'static) -> Self {
        ChoiceFn {
            body: Body::Intensional(Arc::new(eval)),
            signature: None,
            total,
        }
    }

    pub fn evaluate(&self, k: &Menu<T>) -> Result<Menu<T>> {
        if k.is_empty() {
            return Ok(Menu::empty());
        }
        let chosen = match &self.body {
            Body::Extensional(table) => match table.get(k) {
                Some(c) => c.clone(),
                None if k.len() == 1 => k.clone(),
                None => return Err(Error::MenuOutsideUniverse(show(k))),
            },
            Body::Intensional(eval) => eval(k)?,
        };
        if !chosen.is_subset(k) {
            return Err(Error::ContractionViolated {
                menu: show(k),
                chosen: show(&chosen),
            });
        }
        Ok(chosen)
    }

    /// Membership in `B^K_L = {C | C(K) ⊆ L}`.
    pub fn in_event(&self, event: &ChoiceEvent<T>) -> Result<bool> {
        Ok(self.evaluate(&event.k)?.is_subset(&event.l))
    }

    pub fn is_extensional(&self) -> bool {
        matches!(self.body, Body::Extensional(_))
    }

    /// Whether every finite menu is evaluable.
    pub fn is_total(&self) -> bool {
        self.total
    }

    pub fn signature(&self) -> Option<&str> {
        self.signature.as_deref()
    }

    /// The declared menus of an explicit table.
    pub fn universe(&self) -> Option<Vec<Menu<T>>> {
        match &self.body {
            Body::Extensional(t) => Some(t.keys().cloned().collect()),
            Body::Intensional(_) => None,
        }
    }

    /// Sound certificate that two choice functions coincide everywhere:
    /// identical tables, or evaluators built from the same definition.
    pub fn same_definition(&self, other: &ChoiceFn<T>) -> bool {
        match (&self.body, &other.body) {
            (Body::Extensional(a), Body::Extensional(b)) => Arc::ptr_eq(a, b) || a == b,
            (Body::Intensional(a), Body::Intensional(b)) => {
                Arc::ptr_eq(a, b)
                    || matches!((&self.signature, &other.signature), (Some(x), Some(y)) if x == y)
            }
            _ => false,
        }
    }

    /// Same choices, except `menu` answers `answer`. Used for mutation tests.
    pub fn with_override(&self, menu: Menu<T>, answer: Menu<T>) -> ChoiceFn<T> {
        let base = self.clone();
        let total = self.total;
        ChoiceFn::derived(total, move |k| {
            if *k == menu {
                Ok(answer.clone())
            } else {
                base.evaluate(k)
            }
        })
    }
}

/// First menu on which the two choice functions answer differently.
pub fn first_disagreement<T>(a: &ChoiceFn<T>, b: &ChoiceFn<T>, menus: &[Menu<T>]) -> Result<Option<Menu<T>>>
where
    T: Ord + Clone + fmt::Debug + Send + Sync + 'static,
{
    for k in menus {
        if a.evaluate(k)? != b.evaluate(k)? {
            return Ok(Some(k.clone()));
        }
    }
    Ok(None)
}

/// The event `B^K_L` with `L ⊆ K`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChoiceEvent<T> {
    pub k: Menu<T>,
    pub l: Menu<T>,
}

impl<T: Ord + fmt::Debug> ChoiceEvent<T> {
    pub fn new(k: Menu<T>, l: Menu<T>) -> Result<Self> {
        if !l.is_subset(&k) {
            return Err(Error::InvalidArgument(format!(
                "event needs L ⊆ K, got L = {l:?}, K = {k:?}"
            )));
        }
        Ok(ChoiceEvent { k, l })
    }
}

/// `C^f(K) = f^{-1}[C(f[K])] ∩ K` for a choice function over `Y` and
/// `f : X → Y`.
pub fn relabel<X, Y, F>(c: &ChoiceFn<Y>, f: F) -> ChoiceFn<X>
where
    X: Ord + Clone + fmt::Debug + Send + Sync + 'static,
    Y: Ord + Clone + fmt::Debug + Send + Sync + 'static,
    F: Fn(&X) -> Y + Send + Sync + 'static,
{
    try_relabel(c, move |x| Ok(f(x)))
}

/// [`relabel`] with a fallible map.
pub fn try_relabel<X, Y, F>(c: &ChoiceFn<Y>, f: F) -> ChoiceFn<X>
where
    X: Ord + Clone + fmt::Debug + Send + Sync + 'static,
    Y: Ord + Clone + fmt::Debug + Send + Sync + 'static,
    F: Fn(&X) -> Result<Y> + Send + Sync + 'static,
{
    let c = c.clone();
    let total = c.total;
    ChoiceFn::derived(total, move |k: &Menu<X>| {
        let images: Vec<Y> = k.iter().map(&f).collect::<Result<_>>()?;
        let chosen = c.evaluate(&Menu::new(images.clone()))?;
        Ok(Menu(
            k.iter()
                .zip(&images)
                .filter(|(_, y)| chosen.contains(y))
                .map(|(x, _)| x.clone())
                .collect(),
        ))
    })
}

/// `Γφ`: transports a choice function over acts on `X` to acts on `Y` by
/// pulling menus back along `φ : X → Y`.
pub fn gamma_map(c: &ChoiceFn<Act>, phi: &MeasurableMap) -> ChoiceFn<Act> {
    let phi = phi.clone();
    try_relabel(c, move |g: &Act| pullback(g, &phi))
}

/// For injective `f : X → Y`, a choice function `C'` over `Y` with
/// `relabel(C', f) = C`, namely `C'(K) = f[C(f^{-1}[K])]`.
///
/// Menus disjoint from the image of `f` choose the empty set.
pub fn lift_along_injection<X, Y, F>(c: &ChoiceFn<X>, domain: &[X], f: F) -> Result<ChoiceFn<Y>>
where
    X: Ord + Clone + fmt::Debug + Send + Sync + 'static,
    Y: Ord + Clone + fmt::Debug + Send + Sync + 'static,
    F: Fn(&X) -> Y,
{
    let mut graph: BTreeMap<Y, X> = BTreeMap::new();
    for x in domain {
        if let Some(prev) = graph.insert(f(x), x.clone()) {
            if prev != *x {
                return Err(Error::NotInjective(format!("{prev:?} and {x:?} collide")));
            }
        }
    }
    let c = c.clone();
    let total = c.total;
    Ok(ChoiceFn::derived(total, move |k: &Menu<Y>| {
        let pre: Menu<X> = k.iter().filter_map(|y| graph.get(y).cloned()).collect();
        let chosen = c.evaluate(&pre)?;
        let inverse: BTreeMap<&X, &Y> = graph.iter().map(|(y, x)| (x, y)).collect();
        Ok(chosen.iter().map(|x| inverse[x].clone()).collect())
    }))
}

/// Choice function on the colimit of a chain of sets from a compatible family
/// `φ_n = relabel(φ_{n+1}, f_n)`; `family[n]` chooses among indices of `X_n`.
///
/// A menu `K` over the colimit is answered at the least level `m` holding a
/// `K'` with `ι_m[K'] = K`, taking for each element its first preimage.
pub fn colimit_choice(
    chain: &SetChain,
    family: &[ChoiceFn<usize>],
) -> Result<(ChainColimit, ChoiceFn<usize>)> {
    if family.len() != chain.levels().len() {
        return Err(Error::InvalidArgument(format!(
            "need one choice function per level ({}), got {}",
            chain.levels().len(),
            family.len()
        )));
    }
    for n in 0..chain.top() {
        let map = chain.map(n).to_vec();
        let pulled = relabel(&family[n + 1], move |x: &usize| map[*x]);
        let items: Vec<usize> = (0..chain.levels()[n].len()).collect();
        if let Some(menu) = first_disagreement(&family[n], &pulled, &nonempty_menus(&items))? {
            return Err(Error::IncompatibleFamily {
                level: n,
                menu: show(&menu),
            });
        }
    }
    let colimit = chain_colimit(chain);
    let injections = colimit.injections.clone();
    let family = family.to_vec();
    let total = family.iter().all(ChoiceFn::is_total);
    let mu = ChoiceFn::derived(total, move |k: &Menu<usize>| {
        for (m, inj) in injections.iter().enumerate() {
            let mut lifted = Vec::with_capacity(k.len());
            for class in k {
                match inj.iter().position(|c| c == class) {
                    Some(x) => lifted.push(x),
                    None => break,
                }
            }
            if lifted.len() == k.len() {
                let chosen = family[m].evaluate(&Menu::new(lifted))?;
                return Ok(chosen.iter().map(|&x| inj[x]).collect());
            }
        }
        Err(Error::MenuOutsideUniverse(show(k)))
    });
    Ok((colimit, mu))
}
