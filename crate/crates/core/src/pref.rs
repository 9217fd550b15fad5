//! Preference relations over finite carriers and maximization.

use std::collections::BTreeMap;
use std::fmt;

use crate::choice::{nonempty_menus, show, ChoiceFn, Menu};
use crate::error::{Error, Result};

/// A reflexive, transitive relation. `leq[a][b]` means `carrier[a] ≼ carrier[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder<T> {
    carrier: Vec<T>,
    index: BTreeMap<T, usize>,
    leq: Vec<Vec<bool>>,
}

impl<T: Ord + Clone + fmt::Debug> Preorder<T> {
    /// Validates reflexivity and transitivity of the given matrix.
    pub fn from_matrix(carrier: Vec<T>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = carrier.len();
        let mut index = BTreeMap::new();
        for (i, x) in carrier.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(Error::DuplicateIdentifier(format!("{x:?}")));
            }
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument("relation matrix has wrong shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidRelation {
                    property: "reflexive",
                    witness: format!("{:?}", carrier[a]),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidRelation {
                            property: "transitive",
                            witness: format!("{:?} ≼ {:?} ≼ {:?}", carrier[a], carrier[b], carrier[c]),
                        });
                    }
                }
            }
        }
        Ok(Preorder { carrier, index, leq })
    }

    /// Validates the relation given as `(x, y)` pairs meaning `x ≼ y`.
    pub fn new(carrier: Vec<T>, pairs: &[(T, T)]) -> Result<Self> {
        let leq = Self::matrix_from_pairs(&carrier, pairs)?;
        Self::from_matrix(carrier, leq)
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn closure(carrier: Vec<T>, pairs: &[(T, T)]) -> Result<Self> {
        let mut leq = Self::matrix_from_pairs(&carrier, pairs)?;
        let n = carrier.len();
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a][k] {
                    let via = leq[k].clone();
                    for (b, reach) in via.into_iter().enumerate() {
                        leq[a][b] |= reach;
                    }
                }
            }
        }
        Self::from_matrix(carrier, leq)
    }

    fn matrix_from_pairs(carrier: &[T], pairs: &[(T, T)]) -> Result<Vec<Vec<bool>>> {
        let n = carrier.len();
        let mut leq = vec![vec![false; n]; n];
        let pos = |x: &T| {
            carrier
                .iter()
                .position(|c| c == x)
                .ok_or_else(|| Error::UnknownIdentifier(format!("{x:?}")))
        };
        for (x, y) in pairs {
            leq[pos(x)?][pos(y)?] = true;
        }
        Ok(leq)
    }

    pub fn carrier(&self) -> &[T] {
        &self.carrier
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn leq(&self, x: &T, y: &T) -> Option<bool> {
        Some(self.leq[self.position(x)?][self.position(y)?])
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_witness().is_none()
    }

    fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        let n = self.carrier.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.leq[a][b] && self.leq[b][a])
    }

    /// The `≼`-maximal elements of `k`: those with no strictly better item.
    pub fn maximize(&self, k: &Menu<T>) -> Result<Menu<T>> {
        let idx: Vec<usize> = k
            .iter()
            .map(|x| {
                self.position(x)
                    .ok_or_else(|| Error::MenuOutsideUniverse(show(k)))
            })
            .collect::<Result<_>>()?;
        Ok(k.iter()
            .zip(&idx)
            .filter(|(_, &m)| !idx.iter().any(|&j| self.leq[m][j] && !self.leq[j][m]))
            .map(|(x, _)| x.clone())
            .collect())
    }

    /// `x₁ ≼^f x₂ ⟺ f(x₁) ≼ f(x₂)` over the listed domain.
    pub fn pull<X, F>(&self, domain: Vec<X>, f: F) -> Result<Preorder<X>>
    where
        X: Ord + Clone + fmt::Debug,
        F: Fn(&X) -> T,
    {
        let pos: Vec<usize> = domain
            .iter()
            .map(|x| {
                let y = f(x);
                self.position(&y)
                    .ok_or_else(|| Error::UnknownIdentifier(format!("{y:?}")))
            })
            .collect::<Result<_>>()?;
        let leq = pos
            .iter()
            .map(|&a| pos.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        Preorder::from_matrix(domain, leq)
    }
}

/// A reflexive, transitive and anti-symmetric relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset<T>(Preorder<T>);

/// Pulling a poset back along a non-injective map can identify points; the
/// result is then only a preorder and needs [`normalize_preorder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeedsNormalization<T>(pub Preorder<T>);

impl<T: Ord + Clone + fmt::Debug> Poset<T> {
    pub fn new(carrier: Vec<T>, pairs: &[(T, T)]) -> Result<Self> {
        Self::try_from_preorder(Preorder::new(carrier, pairs)?)
    }

    /// Reflexive-transitive closure, then the anti-symmetry check.
    pub fn closure(carrier: Vec<T>, pairs: &[(T, T)]) -> Result<Self> {
        Self::try_from_preorder(Preorder::closure(carrier, pairs)?)
    }

    pub fn from_matrix(carrier: Vec<T>, leq: Vec<Vec<bool>>) -> Result<Self> {
        Self::try_from_preorder(Preorder::from_matrix(carrier, leq)?)
    }

    pub fn try_from_preorder(q: Preorder<T>) -> Result<Self> {
        match q.antisymmetry_witness() {
            None => Ok(Poset(q)),
            Some((a, b)) => Err(Error::InvalidRelation {
                property: "anti-symmetric",
                witness: format!("{:?} ≼ {:?} ≼ {:?}", q.carrier[a], q.carrier[b], q.carrier[a]),
            }),
        }
    }

    /// The discrete order: only reflexive pairs.
    pub fn antichain(carrier: Vec<T>) -> Result<Self> {
        Self::closure(carrier, &[])
    }

    pub fn as_preorder(&self) -> &Preorder<T> {
        &self.0
    }

    pub fn carrier(&self) -> &[T] {
        self.0.carrier()
    }

    pub fn leq(&self, x: &T, y: &T) -> Option<bool> {
        self.0.leq(x, y)
    }

    pub fn maximize(&self, k: &Menu<T>) -> Result<Menu<T>> {
        self.0.maximize(k)
    }

    /// The strict pairs `x ≺ y`, in carrier order.
    pub fn strict_pairs(&self) -> Vec<(T, T)> {
        let n = self.carrier().len();
        let m = self.0.matrix();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && m[a][b])
            .map(|(a, b)| (self.carrier()[a].clone(), self.carrier()[b].clone()))
            .collect()
    }
}

/// `𝒫f`: the relation `x₁ ≼^f x₂ ⟺ f(x₁) ≼ f(x₂)` on the listed domain.
pub fn prel_map<X, Y, F>(
    p: &Poset<Y>,
    domain: Vec<X>,
    f: F,
) -> Result<std::result::Result<Poset<X>, NeedsNormalization<X>>>
where
    X: Ord + Clone + fmt::Debug,
    Y: Ord + Clone + fmt::Debug,
    F: Fn(&X) -> Y,
{
    let q = p.0.pull(domain, f)?;
    Ok(if q.is_antisymmetric() {
        Ok(Poset(q))
    } else {
        Err(NeedsNormalization(q))
    })
}

/// `x ≼' y` iff `x = y`, or `x ≼ y` and not `y ≼ x`.
pub fn normalize_preorder<T: Ord + Clone + fmt::Debug>(q: &Preorder<T>) -> Poset<T> {
    let n = q.carrier.len();
    let leq = (0..n)
        .map(|a| (0..n).map(|b| a == b || (q.leq[a][b] && !q.leq[b][a])).collect())
        .collect();
    Poset::from_matrix(q.carrier.clone(), leq).expect("strict part of a preorder is a poset")
}

/// Maximization as a choice function, defined on menus inside the carrier.
pub fn maximize_as_choicefn<T>(p: &Poset<T>) -> ChoiceFn<T>
where
    T: Ord + Clone + fmt::Debug + Send + Sync + 'static,
{
    let signature = format!("max|{:?}|{:?}", p.carrier(), p.strict_pairs());
    let p = p.clone();
    ChoiceFn::partial(Some(signature), move |k| p.maximize(k))
}

/// [`maximize_as_choicefn`] for a preorder.
pub fn maximize_preorder_as_choicefn<T>(q: &Preorder<T>) -> ChoiceFn<T>
where
    T: Ord + Clone + fmt::Debug + Send + Sync + 'static,
{
    let q = q.clone();
    ChoiceFn::partial(None, move |k| q.maximize(k))
}

/// Every labeled poset on `{0, …, n-1}` as a relation matrix.
pub fn enumerate_posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 3 {
                1 => leq[a][b] = true,
                2 => leq[b][a] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !leq[a][b] || (0..n).all(|c| !leq[b][c] || leq[a][c])));
        if transitive {
            out.push(leq);
        }
    }
    out
}

pub const DEFAULT_RATIONALIZABILITY_CAP: usize = 5;

/// Searches all labeled posets on the carrier for one whose maximization
/// reproduces `c` on every nonempty menu.
pub fn is_poset_rationalizable<T>(c: &ChoiceFn<T>, carrier: &[T], cap: usize) -> Result<Option<Poset<T>>>
where
    T: Ord + Clone + fmt::Debug + Send + Sync + 'static,
{
    if carrier.len() > cap {
        return Err(Error::CarrierCapExceeded {
            size: carrier.len(),
            cap,
        });
    }
    let menus = nonempty_menus(carrier);
    let observed: Vec<Menu<T>> = menus.iter().map(|k| c.evaluate(k)).collect::<Result<_>>()?;
    'candidates: for leq in enumerate_posets(carrier.len()) {
        let p = Poset::from_matrix(carrier.to_vec(), leq)?;
        for (k, chosen) in menus.iter().zip(&observed) {
            if p.maximize(k)? != *chosen {
                continue 'candidates;
            }
        }
        return Ok(Some(p));
    }
    Ok(None)
}
