//! Bounded menu universes for separation and coherence searches.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::act::{enumerate_acts, Act, DEFAULT_ACT_CAP};
use crate::choice::{menus_up_to, Menu};
use crate::error::Error;
use crate::space::FinSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest act pool that is enumerated exhaustively.
    pub act_cap: usize,
    /// Largest menu drawn from the act pool.
    pub menu_cap: usize,
    /// Random acts (when the pool is too large) and random menus (when the
    /// menu count exceeds `menu_budget`).
    pub samples: usize,
    pub seed: u64,
    /// Largest number of pool menus enumerated exhaustively.
    pub menu_budget: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            act_cap: DEFAULT_ACT_CAP,
            menu_cap: 4,
            samples: 256,
            seed: 0,
            menu_budget: 20_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MenuUniverse {
    pub menus: Vec<Menu<Act>>,
    /// True when every menu of every act over the base was included.
    pub exhaustive: bool,
    pub pool_size: usize,
}

fn count_menus(n: usize, max: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for k in 1..=max.min(n) {
        binom = binom * (n - k + 1) as u128 / k as u128;
        total = total.saturating_add(binom);
    }
    total
}

/// Menus over acts on `base`: first every nonempty menu of the basis acts,
/// then (with `with_pool`) menus drawn from all acts valued in `outcomes`,
/// enumerated when within the bounds and sampled otherwise.
pub fn menu_universe(
    base: &Arc<FinSpace>,
    basis: &[Act],
    outcomes: &[usize],
    bounds: &SearchBounds,
    with_pool: bool,
    stream: u64,
) -> MenuUniverse {
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let basis: Vec<Act> = {
        let mut seen = BTreeSet::new();
        basis
            .iter()
            .filter(|a| seen.insert((*a).clone()))
            .cloned()
            .collect()
    };
    let basis_cap = if basis.len() <= 12 {
        basis.len()
    } else {
        bounds.menu_cap
    };
    let mut menus = menus_up_to(&basis, basis_cap);
    let mut seen: BTreeSet<Menu<Act>> = menus.iter().cloned().collect();
    if !with_pool {
        return MenuUniverse {
            menus,
            exhaustive: false,
            pool_size: basis.len(),
        };
    }
    let (pool, pool_complete) = match enumerate_acts(base, outcomes, bounds.act_cap) {
        Ok(all) => (all, true),
        Err(Error::ActCapExceeded { .. }) => {
            let mut sampled: BTreeSet<Act> = basis.iter().cloned().collect();
            for _ in 0..bounds.samples {
                let mut table = vec![0; base.len()];
                for atom in base.atoms() {
                    let z = outcomes[rng.gen_range(0..outcomes.len())];
                    for &p in atom {
                        table[p] = z;
                    }
                }
                sampled.insert(Act::new(base.clone(), table).expect("constant on atoms"));
            }
            (sampled.into_iter().collect(), false)
        }
        Err(e) => unreachable!("act enumeration only fails on the cap: {e}"),
    };
    let pool_size = pool.len();
    let within_budget = count_menus(pool.len(), bounds.menu_cap) <= bounds.menu_budget as u128;
    if within_budget {
        for m in menus_up_to(&pool, bounds.menu_cap) {
            if seen.insert(m.clone()) {
                menus.push(m);
            }
        }
    } else if pool.len() >= 2 {
        let top = bounds.menu_cap.clamp(2, pool.len());
        for _ in 0..bounds.samples {
            let size = rng.gen_range(2..=top);
            let m: Menu<Act> = pool.choose_multiple(&mut rng, size).cloned().collect();
            if seen.insert(m.clone()) {
                menus.push(m);
            }
        }
    }
    MenuUniverse {
        menus,
        exhaustive: pool_complete && within_budget && bounds.menu_cap >= pool_size,
        pool_size,
    }
}
