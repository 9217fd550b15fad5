//! Finite uncertainty spaces.
//!
//! A finite algebra of events is the same thing as a partition of the carrier
//! into atoms, so a [`FinSpace`] stores the atom partition and an event is
//! measurable exactly when it is a union of atoms.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    points: Vec<String>,
    atoms: Vec<Vec<usize>>,
    atom_of: Vec<usize>,
}

impl FinSpace {
    /// Builds a space from point identifiers and atoms given by identifier.
    pub fn new<S: AsRef<str>>(points: Vec<String>, atoms: &[Vec<S>]) -> Result<Self> {
        let index: BTreeMap<&str, usize> = points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        let mut blocks = Vec::with_capacity(atoms.len());
        for atom in atoms {
            let mut block = Vec::with_capacity(atom.len());
            for id in atom {
                let id = id.as_ref();
                block.push(
                    *index
                        .get(id)
                        .ok_or_else(|| Error::UnknownIdentifier(id.to_string()))?,
                );
            }
            blocks.push(block);
        }
        Self::from_atom_indices(points, blocks)
    }

    pub fn from_atom_indices(points: Vec<String>, atoms: Vec<Vec<usize>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicateIdentifier(p.clone()));
            }
        }
        let n = points.len();
        let mut atom_of = vec![usize::MAX; n];
        let mut atoms: Vec<Vec<usize>> = atoms
            .into_iter()
            .map(|mut a| {
                a.sort_unstable();
                a
            })
            .collect();
        atoms.sort();
        for (k, atom) in atoms.iter().enumerate() {
            if atom.is_empty() {
                return Err(Error::InvalidAtoms("empty atom".into()));
            }
            for &p in atom {
                if p >= n {
                    return Err(Error::IndexOutOfRange { index: p, len: n });
                }
                if atom_of[p] != usize::MAX {
                    return Err(Error::InvalidAtoms(format!(
                        "point `{}` lies in two atoms",
                        points[p]
                    )));
                }
                atom_of[p] = k;
            }
        }
        if let Some(p) = atom_of.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidAtoms(format!(
                "point `{}` is in no atom",
                points[p]
            )));
        }
        Ok(FinSpace {
            points,
            atoms,
            atom_of,
        })
    }

    /// The space whose algebra contains every subset.
    pub fn discrete<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let atoms = (0..points.len()).map(|i| vec![i]).collect();
        Self::from_atom_indices(points, atoms)
    }

    /// The space whose algebra is `{∅, X}`.
    pub fn trivial<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let atoms = vec![(0..points.len()).collect()];
        Self::from_atom_indices(points, atoms)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p == id)
    }

    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.atoms
    }

    pub fn atom_of(&self, point: usize) -> usize {
        self.atom_of[point]
    }

    pub fn is_discrete(&self) -> bool {
        self.atoms.len() == self.points.len()
    }

    /// True iff the set of points is a union of atoms.
    pub fn is_event(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&p| p < self.len() && self.atoms[self.atom_of[p]].iter().all(|q| set.contains(q)))
    }

    /// Every measurable event, as sorted point sets. Exponential in the number
    /// of atoms; meant for small carriers.
    pub fn events(&self) -> Vec<BTreeSet<usize>> {
        let k = self.atoms.len();
        assert!(k < 24, "too many atoms to enumerate events");
        (0u32..(1 << k))
            .map(|mask| {
                (0..k)
                    .filter(|a| mask & (1 << a) != 0)
                    .flat_map(|a| self.atoms[a].iter().copied())
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<String> = self
            .atoms
            .iter()
            .map(|a| {
                let ids: Vec<&str> = a.iter().map(|&p| self.points[p].as_str()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        write!(f, "[{}]", atoms.join(" "))
    }
}

/// True iff preimages of measurable events are measurable. For atom
/// partitions this reduces to: every domain atom lands inside one codomain atom.
pub fn is_measurable(table: &[usize], domain: &FinSpace, codomain: &FinSpace) -> bool {
    if table.len() != domain.len() || table.iter().any(|&y| y >= codomain.len()) {
        return false;
    }
    domain.atoms().iter().all(|atom| {
        let target = codomain.atom_of(table[atom[0]]);
        atom.iter().all(|&x| codomain.atom_of(table[x]) == target)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurableMap {
    domain: Arc<FinSpace>,
    codomain: Arc<FinSpace>,
    table: Vec<usize>,
}

impl MeasurableMap {
    pub fn new(domain: Arc<FinSpace>, codomain: Arc<FinSpace>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::NotTotal {
                expected: domain.len(),
                found: table.len(),
            });
        }
        if let Some(&y) = table.iter().find(|&&y| y >= codomain.len()) {
            return Err(Error::IndexOutOfRange {
                index: y,
                len: codomain.len(),
            });
        }
        if !is_measurable(&table, &domain, &codomain) {
            return Err(Error::NotMeasurable(format!("{domain} -> {codomain}")));
        }
        Ok(MeasurableMap {
            domain,
            codomain,
            table,
        })
    }

    /// Builds a map from identifier pairs.
    pub fn from_pairs<S: AsRef<str>>(
        domain: Arc<FinSpace>,
        codomain: Arc<FinSpace>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; domain.len()];
        for (x, y) in pairs {
            let xi = domain
                .index_of(x.as_ref())
                .ok_or_else(|| Error::UnknownIdentifier(x.as_ref().to_string()))?;
            let yi = codomain
                .index_of(y.as_ref())
                .ok_or_else(|| Error::UnknownIdentifier(y.as_ref().to_string()))?;
            table[xi] = yi;
        }
        if let Some(x) = table.iter().position(|&y| y == usize::MAX) {
            return Err(Error::NotTotal {
                expected: domain.len(),
                found: x,
            });
        }
        Self::new(domain, codomain, table)
    }

    pub fn identity(space: Arc<FinSpace>) -> Self {
        let table = (0..space.len()).collect();
        MeasurableMap {
            domain: space.clone(),
            codomain: space,
            table,
        }
    }

    pub fn domain(&self) -> &Arc<FinSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinSpace> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MeasurableMap) -> Result<MeasurableMap> {
        if *self.codomain != *then.domain {
            return Err(Error::SpaceMismatch(
                "composition: codomain and domain differ".into(),
            ));
        }
        Ok(MeasurableMap {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            table: self.table.iter().map(|&y| then.table[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn preimage(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.table.len())
            .filter(|x| set.contains(&self.table[*x]))
            .collect()
    }

    pub fn image(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().map(|&x| self.table[x]).collect()
    }
}

/// A product space with its two projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub space: Arc<FinSpace>,
    pub first: MeasurableMap,
    pub second: MeasurableMap,
}

impl Product {
    /// Index of the pair `(x, y)` in the product carrier.
    pub fn pair_index(&self, x: usize, y: usize) -> usize {
        x * self.second.codomain().len() + y
    }
}

/// The product space. Points are ordered first-factor-major and named
/// `(x,y)`; atoms are the products of factor atoms, which generate the same
/// algebra as the measurable cylinders.
pub fn product(x: &Arc<FinSpace>, y: &Arc<FinSpace>) -> Product {
    let ny = y.len();
    let points: Vec<String> = x
        .points()
        .iter()
        .flat_map(|a| y.points().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let atoms: Vec<Vec<usize>> = x
        .atoms()
        .iter()
        .flat_map(|ax| {
            y.atoms().iter().map(move |ay| {
                ax.iter()
                    .flat_map(|&i| ay.iter().map(move |&j| i * ny + j))
                    .collect()
            })
        })
        .collect();
    // Pair names can collide only if identifiers contain the separators
    // themselves; fall back to positional names in that case.
    let space = match FinSpace::from_atom_indices(points, atoms.clone()) {
        Ok(s) => s,
        Err(_) => {
            let points = (0..x.len() * ny)
                .map(|k| format!("({}#{})", k / ny, k % ny))
                .collect();
            FinSpace::from_atom_indices(points, atoms).expect("positional names are distinct")
        }
    };
    let space = Arc::new(space);
    let first = MeasurableMap {
        domain: space.clone(),
        codomain: x.clone(),
        table: (0..space.len()).map(|k| k / ny).collect(),
    };
    let second = MeasurableMap {
        domain: space.clone(),
        codomain: y.clone(),
        table: (0..space.len()).map(|k| k % ny).collect(),
    };
    Product { space, first, second }
}

/// `f × g : X × Y → X' × Y'` between product spaces.
pub fn product_map(
    src: &Product,
    dst: &Product,
    f: &MeasurableMap,
    g: &MeasurableMap,
) -> Result<MeasurableMap> {
    if **f.domain() != **src.first.codomain() || **g.domain() != **src.second.codomain() {
        return Err(Error::SpaceMismatch("product map: source factors differ".into()));
    }
    if **f.codomain() != **dst.first.codomain() || **g.codomain() != **dst.second.codomain() {
        return Err(Error::SpaceMismatch("product map: target factors differ".into()));
    }
    let table = (0..src.space.len())
        .map(|k| dst.pair_index(f.apply(src.first.apply(k)), g.apply(src.second.apply(k))))
        .collect();
    MeasurableMap::new(src.space.clone(), dst.space.clone(), table)
}

/// A finite chain of sets `X_0 → X_1 → … → X_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetChain {
    levels: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl SetChain {
    pub fn new(levels: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} levels need {} maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        for (n, map) in maps.iter().enumerate() {
            if map.len() != levels[n].len() {
                return Err(Error::NotTotal {
                    expected: levels[n].len(),
                    found: map.len(),
                });
            }
            if let Some(&y) = map.iter().find(|&&y| y >= levels[n + 1].len()) {
                return Err(Error::IndexOutOfRange {
                    index: y,
                    len: levels[n + 1].len(),
                });
            }
        }
        Ok(SetChain { levels, maps })
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Vec<String>] {
        &self.levels
    }

    pub fn map(&self, n: usize) -> &[usize] {
        &self.maps[n]
    }

    /// `f^n_k(x)` for `n ≤ k`.
    pub fn push(&self, n: usize, k: usize, x: usize) -> usize {
        (n..k).fold(x, |x, m| self.maps[m][x])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainColimit {
    pub carrier: Vec<String>,
    /// `injections[n][x]` is the class of `x ∈ X_n`.
    pub injections: Vec<Vec<usize>>,
}

/// Quotient of the disjoint union of the levels, identifying elements whose
/// images agree at the top level of the truncated chain.
pub fn chain_colimit(chain: &SetChain) -> ChainColimit {
    let top = chain.top();
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    // Assign class ids in order of the top-level image, so the carrier is
    // canonically ordered.
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    for (n, level) in chain.levels().iter().enumerate() {
        for x in 0..level.len() {
            keys.push((chain.push(n, top, x), n, x));
        }
    }
    keys.sort_by_key(|&(key, n, x)| (key, std::cmp::Reverse(n), x));
    for &(key, n, x) in &keys {
        classes.entry(key).or_insert_with(|| {
            reps.push((n, x));
            reps.len() - 1
        });
    }
    let carrier = reps.iter().map(|&(n, x)| chain.levels()[n][x].clone()).collect();
    let injections = chain
        .levels()
        .iter()
        .enumerate()
        .map(|(n, level)| {
            (0..level.len())
                .map(|x| classes[&chain.push(n, top, x)])
                .collect()
        })
        .collect();
    ChainColimit { carrier, injections }
}

/// A finite cochain `X_0 ← X_1 ← … ← X_N` of measurable links.
#[derive(Debug, Clone)]
pub struct FinCochain {
    levels: Vec<Arc<FinSpace>>,
    links: Vec<MeasurableMap>,
}

impl FinCochain {
    /// `links[n] : X_{n+1} → X_n`.
    pub fn new(levels: Vec<Arc<FinSpace>>, links: Vec<MeasurableMap>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if links.len() + 1 != levels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} levels need {} links, got {}",
                levels.len(),
                levels.len() - 1,
                links.len()
            )));
        }
        for (n, link) in links.iter().enumerate() {
            if **link.domain() != *levels[n + 1] || **link.codomain() != *levels[n] {
                return Err(Error::SpaceMismatch(format!(
                    "link {n} does not connect levels {} and {n}",
                    n + 1
                )));
            }
        }
        Ok(FinCochain { levels, links })
    }

    pub fn levels(&self) -> &[Arc<FinSpace>] {
        &self.levels
    }

    pub fn links(&self) -> &[MeasurableMap] {
        &self.links
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// `ξ^k_n(x)` for `x ∈ X_k`, `n ≤ k`.
    pub fn project(&self, k: usize, n: usize, x: usize) -> usize {
        (n..k).rev().fold(x, |x, m| self.links[m].apply(x))
    }
}

#[derive(Debug, Clone)]
pub struct CochainLimit {
    pub space: Arc<FinSpace>,
    /// `projections[n] = ζ_n : limit → X_n`.
    pub projections: Vec<MeasurableMap>,
    /// The coherent sequence `(x_0, …, x_N)` behind each limit point.
    pub sequences: Vec<Vec<usize>>,
}

/// The space of coherent sequences. A coherent sequence is fixed by its top
/// element; the algebra is generated by the pulled-back level algebras.
pub fn cochain_limit(cochain: &FinCochain) -> CochainLimit {
    let top = cochain.top();
    let levels = cochain.levels();
    let sequences: Vec<Vec<usize>> = (0..levels[top].len())
        .map(|x| (0..=top).map(|n| cochain.project(top, n, x)).collect())
        .collect();
    let points: Vec<String> = sequences
        .iter()
        .map(|seq| {
            let ids: Vec<&str> = seq.iter().enumerate().map(|(n, &x)| levels[n].point(x)).collect();
            format!("<{}>", ids.join(";"))
        })
        .collect();
    // Meet of the partitions ζ_n^{-1}[atoms of X_n].
    let mut blocks: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (p, seq) in sequences.iter().enumerate() {
        let key: Vec<usize> = seq
            .iter()
            .enumerate()
            .map(|(n, &x)| levels[n].atom_of(x))
            .collect();
        blocks.entry(key).or_default().push(p);
    }
    let space = Arc::new(
        FinSpace::from_atom_indices(points, blocks.into_values().collect())
            .expect("coherent sequences are distinct"),
    );
    let projections = (0..=top)
        .map(|n| {
            MeasurableMap::new(
                space.clone(),
                levels[n].clone(),
                sequences.iter().map(|s| s[n]).collect(),
            )
            .expect("limit projections are measurable")
        })
        .collect();
    CochainLimit {
        space,
        projections,
        sequences,
    }
}
