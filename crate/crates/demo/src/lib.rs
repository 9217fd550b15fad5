//! Browser bindings over the coordination game. Every entry point returns a
//! JSON document; failures come back as `{"error": "..."}`.

use choice_structures::act::Act;
use choice_structures::choice::Menu;
use choice_structures::criteria::{criterion_choice, CredalSet, Criterion, UtilityView};
use choice_structures::game::{default_families, rationalize, GameSpec, PlayerCriterion};
use choice_structures::hierarchy::{non_redundancy_verdict, refine_partition, Certificate, Verdict};
use choice_structures::rational::{format_rational, parse_rational, Rat};
use choice_structures::search::SearchBounds;
use choice_structures::space::{FinSpace, MeasurableMap};
use choice_structures::structure::{
    example_frame, example_structure, example_structure_with_duplicate, Player,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn rational(text: &str) -> Result<Rat, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn criterion(text: &str) -> Result<Criterion, String> {
    text.parse().map_err(|e: choice_structures::Error| e.to_string())
}

fn number(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Expected utility (`eu`, `maxmin`) or expected regret (`regret`) of each
/// act when Joe plays `r` with probability `p`.
fn line_at(kind: Criterion, u: &UtilityView, menu: &[Act], p: Rat) -> Vec<Rat> {
    let probs = [Rat::from_integer(1) - p, p];
    let eu = |f: &Act| -> Rat { (0..2).map(|s| probs[s] * u.of(f.at(s))).sum() };
    match kind {
        Criterion::Regret => {
            let best: Vec<Rat> = (0..2)
                .map(|s| menu.iter().map(|g| u.of(g.at(s))).max().expect("nonempty"))
                .collect();
            menu.iter()
                .map(|f| (0..2).map(|s| probs[s] * (best[s] - u.of(f.at(s)))).sum())
                .collect()
        }
        _ => menu.iter().map(eu).collect(),
    }
}

/// Ida's choice from a menu of her actions when `P(r)` ranges over
/// `[lower, upper]`, with the straight lines the criterion takes its worst
/// case over.
pub fn explore_choice(criterion_name: &str, lower: &str, upper: &str, menu: &str) -> Result<Value, String> {
    let kind = criterion(criterion_name)?;
    let (lo, hi) = (rational(lower)?, rational(upper)?);
    if kind == Criterion::ExpectedUtility && lo != hi {
        return Err("expected utility needs a single prior: set lower = upper".into());
    }
    let frame = example_frame();
    let actions = frame.actions(Player::I).clone();
    let joe = frame.actions(Player::J).clone();
    let belief = CredalSet::interval(joe.clone(), lo, hi).map_err(|e| e.to_string())?;
    let u = frame.utility(Player::I).map_err(|e| e.to_string())?;
    let id = MeasurableMap::identity(joe);
    let mut picked = Vec::new();
    for name in menu.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let a = actions
            .index_of(name)
            .ok_or_else(|| format!("unknown action `{name}`"))?;
        if !picked.contains(&a) {
            picked.push(a);
        }
    }
    if picked.is_empty() {
        return Err("the menu is empty".into());
    }
    picked.sort();
    let acts: Vec<Act> = picked
        .iter()
        .map(|&a| frame.action_act_on(Player::I, a, &id).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let menu_acts: Menu<Act> = acts.iter().cloned().collect();
    let chosen = criterion_choice(kind, &belief, &u)
        .and_then(|c| c.evaluate(&menu_acts))
        .map_err(|e| e.to_string())?;
    let worst: Vec<Rat> = {
        let (a, b) = (line_at(kind, &u, &acts, lo), line_at(kind, &u, &acts, hi));
        match kind {
            Criterion::Regret => a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect(),
            _ => a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect(),
        }
    };
    let zero = Rat::from_integer(0);
    let one = Rat::from_integer(1);
    let (at0, at1) = (line_at(kind, &u, &acts, zero), line_at(kind, &u, &acts, one));
    let rows: Vec<Value> = picked
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            json!({
                "action": actions.point(a),
                "chosen": chosen.contains(&acts[k]),
                "value": format_rational(&worst[k]),
                "at0": number(&at0[k]),
                "at1": number(&at1[k]),
            })
        })
        .collect();
    Ok(json!({
        "criterion": kind.name(),
        "lower": number(&lo),
        "upper": number(&hi),
        "measure": if kind == Criterion::Regret { "worst expected regret" } else { "worst expected utility" },
        "actions": rows,
    }))
}

fn names(space: &FinSpace, set: &[usize]) -> Vec<String> {
    set.iter().map(|&a| space.point(a).to_string()).collect()
}

fn render_belief(b: &CredalSet) -> String {
    let vertices: Vec<String> = b
        .vertices()
        .iter()
        .map(|v| {
            let entries: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, p)| **p != Rat::from_integer(0))
                .map(|(s, p)| format!("{}:{}", b.space().point(s), format_rational(p)))
                .collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    vertices.join(" ")
}

/// Iterated elimination on the coordination game with one criterion per
/// player and the default belief families at resolution `grid`.
pub fn rationalize_game(criterion_i: &str, criterion_j: &str, grid: usize) -> Result<Value, String> {
    if grid == 0 || grid > 64 {
        return Err("grid must be between 1 and 64".into());
    }
    let crit = |s: &str| -> Result<PlayerCriterion, String> {
        let kind = criterion(s)?;
        Ok(PlayerCriterion {
            criterion: kind,
            families: default_families(kind, grid),
        })
    };
    let frame = example_frame();
    let g = GameSpec::new(
        ["i".into(), "j".into()],
        frame.clone(),
        [crit(criterion_i)?, crit(criterion_j)?],
    )
    .map_err(|e| e.to_string())?;
    let r = rationalize(&g).map_err(|e| e.to_string())?;
    let rounds: Vec<Value> = r
        .trace
        .iter()
        .map(|round| {
            let side = |p: Player| {
                let acts = frame.actions(p);
                json!({
                    "eliminated": names(acts, &round.eliminated[p.index()]),
                    "kept": round.witnesses[p.index()]
                        .iter()
                        .map(|(a, b)| json!({ "action": acts.point(*a), "belief": render_belief(b) }))
                        .collect::<Vec<_>>(),
                })
            };
            json!({ "round": round.round, "i": side(Player::I), "j": side(Player::J) })
        })
        .collect();
    Ok(json!({
        "survivors": {
            "i": names(frame.actions(Player::I), r.survivors(Player::I)),
            "j": names(frame.actions(Player::J), r.survivors(Player::J)),
        },
        "rounds": rounds,
    }))
}

/// Behavioral partition refinement on the example structure (`example`) or
/// its variant with a duplicated maxmin type (`duplicate`).
pub fn nonredundancy(variant: &str, act_cap: usize, samples: usize) -> Result<Value, String> {
    let x = match variant {
        "example" => example_structure(),
        "duplicate" => example_structure_with_duplicate(),
        other => return Err(format!("unknown structure `{other}`")),
    };
    if act_cap == 0 {
        return Err("the act cap must be positive".into());
    }
    let bounds = SearchBounds {
        act_cap,
        samples,
        ..SearchBounds::default()
    };
    let part = refine_partition(&x, &bounds).map_err(|e| e.to_string())?;
    let history: Vec<Value> = part
        .history
        .iter()
        .map(|b| json!({ "i": b[0].render(x.types(Player::I)), "j": b[1].render(x.types(Player::J)) }))
        .collect();
    let separators: Vec<Value> = part
        .separators
        .iter()
        .map(|s| {
            let types = x.types(s.player);
            json!({
                "player": s.player.name(),
                "round": s.round,
                "inside": types.point(s.inside),
                "outside": types.point(s.outside),
                "menu": s.menu_label,
                "choice": s.choice_label,
                "other": s.other_label,
            })
        })
        .collect();
    let verdict = match non_redundancy_verdict(&part) {
        Verdict::NonRedundant => json!({ "kind": "NonRedundant" }),
        Verdict::Redundant(pairs) => json!({
            "kind": "Redundant",
            "witnesses": pairs
                .iter()
                .map(|u| {
                    let types = x.types(u.player);
                    json!({
                        "player": u.player.name(),
                        "first": types.point(u.first),
                        "second": types.point(u.second),
                        "certificate": match u.certificate {
                            Some(Certificate::IdenticalDefinition) => "identical definition",
                            Some(Certificate::ExhaustiveSearch) => "exhaustive search",
                            None => "none",
                        },
                    })
                })
                .collect::<Vec<_>>(),
        }),
        Verdict::Inconclusive(b) => json!({
            "kind": "Inconclusive",
            "actCap": b.act_cap,
            "menuCap": b.menu_cap,
            "samples": b.samples,
        }),
    };
    Ok(json!({ "history": history, "separators": separators, "verdict": verdict }))
}

#[wasm_bindgen]
pub fn explore(criterion: &str, lower: &str, upper: &str, menu: &str) -> String {
    respond(explore_choice(criterion, lower, upper, menu))
}

#[wasm_bindgen]
pub fn rationalize_demo(criterion_i: &str, criterion_j: &str, grid: usize) -> String {
    respond(rationalize_game(criterion_i, criterion_j, grid))
}

#[wasm_bindgen]
pub fn nonred_demo(variant: &str, act_cap: usize, samples: usize) -> String {
    respond(nonredundancy(variant, act_cap, samples))
}
