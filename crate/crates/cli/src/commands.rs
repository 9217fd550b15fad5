use std::fs;
use std::path::Path;
use std::sync::Arc;

use choice_structures::act::{pullback, Act};
use choice_structures::choice::{nonempty_menus, ChoiceFn, Menu};
use choice_structures::criteria::{CredalSet, Criterion, UtilityView};
use choice_structures::game::{rationalize, GameSpec};
use choice_structures::hierarchy::{
    coherence_check, hierarchy_map, non_redundancy_verdict, refine_partition, Certificate, Verdict,
};
use choice_structures::laws::full_suite;
use choice_structures::rational::{format_rational, Rat};
use choice_structures::space::{FinSpace, MeasurableMap};
use choice_structures::structure::{check_morphism, ChoiceStructure, Player, StructureMorphism};

use crate::spec::{parse_game_spec, parse_structure_spec, ParsedStructure, StructureSpec, ThetaSource};
use crate::{CliError, Command, Out, RunConfig};

type CmdResult = Result<(), CliError>;

fn fail(message: impl Into<String>) -> CliError {
    CliError::Verification(message.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn single_input(config: &RunConfig) -> Result<&Path, CliError> {
    match config.inputs.as_slice() {
        [one] => Ok(one),
        [] => Err(CliError::Input(format!(
            "{} needs --input",
            config.command.name()
        ))),
        _ => Err(CliError::Input(format!(
            "{} takes a single --input",
            config.command.name()
        ))),
    }
}

fn load_structure(path: &Path) -> Result<ParsedStructure, CliError> {
    parse_structure_spec(&read(path)?).map_err(|e| located(path, e))
}

fn load_game(path: &Path, grid: usize) -> Result<GameSpec, CliError> {
    parse_game_spec(&read(path)?, grid).map_err(|e| located(path, e))
}

fn is_game_file(text: &str) -> bool {
    text.parse::<toml::Table>()
        .map(|t| t.contains_key("criteria"))
        .unwrap_or(false)
}

pub(crate) fn dispatch(config: &RunConfig, out: &mut Out) -> CmdResult {
    match config.command {
        Command::ChoiceEval => choice_eval(&load_structure(single_input(config)?)?, out),
        Command::Hierarchy => hierarchy(&load_structure(single_input(config)?)?, config, out),
        Command::Nonred => nonred(&load_structure(single_input(config)?)?, config, out),
        Command::Embed => embed(&load_structure(single_input(config)?)?, out),
        Command::Rationalize => rationalization(&load_game(single_input(config)?, config.grid)?, out),
        Command::Verify => verify(config, out),
    }
}

fn structure_of(parsed: &ParsedStructure) -> Result<ChoiceStructure, CliError> {
    Ok(parsed.choice_structure()?)
}

/// Basis menus with at least two acts, largest first.
fn listed_menus(basis: &[Act]) -> Vec<Menu<Act>> {
    let mut menus: Vec<Menu<Act>> = nonempty_menus(basis)
        .into_iter()
        .filter(|k| k.len() > 1)
        .collect();
    menus.sort_by_key(|k| std::cmp::Reverse(k.len()));
    menus
}

fn label(x: &ChoiceStructure, p: Player, act: &Act) -> String {
    x.render_act(p, act)
}

/// Worst-case expected utility (`eu`, `maxmin`) or worst-case expected
/// regret (`regret`) of each act, computed directly from the act tables.
fn criterion_values(kind: Criterion, belief: &CredalSet, u: &UtilityView, menu: &Menu<Act>) -> Vec<Rat> {
    let states = belief.space().len();
    let eu = |f: &Act, v: &[Rat]| -> Rat { (0..states).map(|s| v[s] * u.of(f.at(s))).sum() };
    match kind {
        Criterion::ExpectedUtility | Criterion::Maxmin => menu
            .iter()
            .map(|f| {
                belief
                    .vertices()
                    .iter()
                    .map(|v| eu(f, v))
                    .min()
                    .expect("nonempty")
            })
            .collect(),
        Criterion::Regret => {
            let best: Vec<Rat> = (0..states)
                .map(|s| menu.iter().map(|g| u.of(g.at(s))).max().expect("nonempty menu"))
                .collect();
            menu.iter()
                .map(|f| {
                    belief
                        .vertices()
                        .iter()
                        .map(|v| (0..states).map(|s| v[s] * (best[s] - u.of(f.at(s)))).sum::<Rat>())
                        .max()
                        .expect("nonempty")
                })
                .collect()
        }
    }
}

fn criterion_select(kind: Criterion, menu: &Menu<Act>, values: &[Rat]) -> Menu<Act> {
    let target = match kind {
        Criterion::Regret => values.iter().min(),
        _ => values.iter().max(),
    }
    .copied();
    menu.iter()
        .zip(values)
        .filter(|(_, v)| Some(**v) == target)
        .map(|(f, _)| f.clone())
        .collect()
}

/// Recomputes θ(t)(K) from how the type was specified.
fn recompute(source: &ThetaSource, k: &Menu<Act>) -> Option<Menu<Act>> {
    match source {
        ThetaSource::Criterion {
            kind,
            belief,
            utility,
            ..
        } => Some(criterion_select(
            *kind,
            k,
            &criterion_values(*kind, belief, utility, k),
        )),
        ThetaSource::Table(table) => table.get(k).cloned(),
        ThetaSource::Preference(q) => Some(
            k.iter()
                .filter(|f| !k.iter().any(|g| g != *f && q.leq(f, g) == Some(true)))
                .cloned()
                .collect(),
        ),
    }
}

fn describe_source(x: &ChoiceStructure, p: Player, source: &ThetaSource) -> String {
    match source {
        ThetaSource::Criterion {
            kind,
            belief,
            declared,
            ..
        } => {
            if declared.space() == belief.space() {
                format!("{kind}, belief {} over states", render_belief(declared))
            } else {
                format!(
                    "{kind}, belief {} over actions, vacuous in types",
                    render_belief(declared)
                )
            }
        }
        ThetaSource::Table(t) => format!("table of {} menus", t.len()),
        ThetaSource::Preference(q) => {
            let pairs: Vec<String> = q
                .strict_pairs()
                .iter()
                .map(|(lo, hi)| format!("{}>{}", label(x, p, hi), label(x, p, lo)))
                .collect();
            if pairs.is_empty() {
                "preference (no strict pairs)".into()
            } else {
                format!("preference {}", pairs.join(" "))
            }
        }
    }
}

fn render_vertex(space: &FinSpace, v: &[Rat]) -> String {
    let entries: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, p)| **p != Rat::from_integer(0))
        .map(|(s, p)| format!("{}:{}", space.point(s), format_rational(p)))
        .collect();
    format!("[{}]", entries.join(","))
}

fn render_belief(belief: &CredalSet) -> String {
    let vertices: Vec<String> = belief
        .vertices()
        .iter()
        .map(|v| render_vertex(belief.space(), v))
        .collect();
    if vertices.len() == 1 {
        vertices.join("")
    } else {
        format!("hull{{{}}}", vertices.join(" "))
    }
}

fn render_values(x: &ChoiceStructure, p: Player, k: &Menu<Act>, values: &[Rat]) -> String {
    let basis = x.basis(p);
    let mut pairs: Vec<(usize, String)> = k
        .iter()
        .zip(values)
        .map(|(f, v)| {
            let rank = basis.iter().position(|b| b == f).unwrap_or(usize::MAX);
            (rank, format!("{}={}", label(x, p, f), format_rational(v)))
        })
        .collect();
    pairs.sort();
    pairs.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(",")
}

fn choice_eval(parsed: &ParsedStructure, out: &mut Out) -> CmdResult {
    let x = structure_of(parsed)?;
    let mut notes = 0;
    for p in Player::BOTH {
        for (t, c) in x.theta(p).iter().enumerate() {
            let ty = x.types(p).point(t);
            let source = &parsed.sources[p.index()][t];
            out.heading(format!("theta_{p}({ty}): {}", describe_source(&x, p, source)));
            for k in listed_menus(&x.basis(p)) {
                let chosen = c.evaluate(&k)?;
                let (menu_s, chosen_s) = (x.render_menu(p, &k), x.render_menu(p, &chosen));
                let again = recompute(source, &k);
                if chosen.is_empty() || !chosen.is_subset(&k) || again.as_ref() != Some(&chosen) {
                    return Err(fail(format!(
                        "theta_{p}({ty}) chose {chosen_s} from {menu_s}; independent evaluation gives {}",
                        again
                            .map(|a| x.render_menu(p, &a))
                            .unwrap_or_else(|| "nothing".into())
                    )));
                }
                let mut fields = vec![
                    ("player", p.name().to_string()),
                    ("type", ty.to_string()),
                    ("menu", menu_s.clone()),
                    ("choice", chosen_s.clone()),
                ];
                let mut line = format!("  {menu_s} -> {chosen_s}");
                if let ThetaSource::Criterion {
                    kind,
                    belief,
                    utility,
                    ..
                } = source
                {
                    let values = render_values(&x, p, &k, &criterion_values(*kind, belief, utility, &k));
                    let what = if *kind == Criterion::Regret {
                        "regret"
                    } else {
                        "value"
                    };
                    line = format!("{line:<40} {what} {values}");
                    fields.push(("values", values));
                }
                out.emit(line, "choice", &fields);
                if let Some(l) = parsed
                    .listed
                    .iter()
                    .find(|l| l.player == p && l.ty == t && l.menu == k)
                {
                    if l.choice != chosen {
                        notes += 1;
                        let listed = x.render_menu(p, &l.choice);
                        out.emit(
                            format!("    note: listed {listed}, computed {chosen_s}"),
                            "note",
                            &[
                                ("player", p.name().to_string()),
                                ("type", ty.to_string()),
                                ("menu", menu_s),
                                ("listed", listed),
                                ("computed", chosen_s),
                            ],
                        );
                    }
                }
            }
        }
    }
    if notes > 0 {
        out.heading(format!(
            "{notes} listed answer(s) differ from the computed choice; with exact ties every tied act is chosen"
        ));
    }
    Ok(())
}

/// `υ(K)` recomputed by pulling `K` back to the states and mapping `θ`'s
/// answer forward.
fn pulled_choice(
    c: &ChoiceFn<Act>,
    from_states: &MeasurableMap,
    k: &Menu<Act>,
) -> Result<Menu<Act>, CliError> {
    let pulled: Vec<(Act, Act)> = k
        .iter()
        .map(|f| Ok((f.clone(), pullback(f, from_states)?)))
        .collect::<Result<_, choice_structures::Error>>()?;
    let chosen = c.evaluate(&pulled.iter().map(|(_, g)| g.clone()).collect())?;
    Ok(pulled
        .into_iter()
        .filter(|(_, g)| chosen.contains(g))
        .map(|(f, _)| f)
        .collect())
}

fn hierarchy(parsed: &ParsedStructure, config: &RunConfig, out: &mut Out) -> CmdResult {
    let x = structure_of(parsed)?;
    let h = hierarchy_map(&x, config.levels, &config.bounds())?;
    for p in Player::BOTH {
        let opp_types = x.types(p.opponent());
        for n in 1..=h.levels() {
            let level = h.level(p, n);
            let blocks = level
                .opponent_blocks
                .as_ref()
                .map(|b| b.render(opp_types))
                .unwrap_or_else(|| "-".into());
            let universe = h.universe(p, n);
            out.emit(
                format!(
                    "level {n}, player {p}: base {} points, opponent types {blocks}, {} menus checked",
                    level.base_space.len(),
                    universe.menus.len()
                ),
                "level",
                &[
                    ("player", p.name().to_string()),
                    ("n", n.to_string()),
                    ("base", level.base_space.len().to_string()),
                    ("opponent", blocks.clone()),
                    ("menus", universe.menus.len().to_string()),
                ],
            );
            let basis = level.basis(&x);
            for t in 0..x.types(p).len() {
                let ty = x.types(p).point(t);
                let upsilon = h.upsilon(p, n, t);
                let mut answers = Vec::new();
                for k in listed_menus(&basis) {
                    let chosen = upsilon.evaluate(&k)?;
                    let again = pulled_choice(&x.theta(p)[t], &level.from_states, &k)?;
                    let (menu_s, chosen_s) = (level.render_menu(&x, &k), level.render_menu(&x, &chosen));
                    if again != chosen {
                        return Err(fail(format!(
                            "level {n} map of {ty} chose {chosen_s} from {menu_s}; pulling back gives {}",
                            level.render_menu(&x, &again)
                        )));
                    }
                    out.record(
                        "upsilon",
                        &[
                            ("player", p.name().to_string()),
                            ("n", n.to_string()),
                            ("type", ty.to_string()),
                            ("menu", menu_s.clone()),
                            ("choice", chosen_s.clone()),
                        ],
                    );
                    answers.push(format!("{menu_s}->{chosen_s}"));
                }
                out.heading(format!("  {ty}: {}", answers.join(" ")));
            }
        }
    }
    match coherence_check(&h)? {
        None => {
            out.emit(
                format!("coherence: ok (levels 1..{})", h.levels()),
                "coherence",
                &[("status", "ok".into()), ("levels", h.levels().to_string())],
            );
            Ok(())
        }
        Some(f) => {
            let level = h.level(f.player, f.level);
            Err(fail(format!(
                "coherence fails for {} type {} at level {} on {}: level map gives {}, projection of level {} gives {}",
                f.player,
                x.types(f.player).point(f.ty),
                f.level,
                level.render_menu(&x, &f.menu),
                level.render_menu(&x, &f.expected),
                f.level + 1,
                level.render_menu(&x, &f.found)
            )))
        }
    }
}

fn nonred(parsed: &ParsedStructure, config: &RunConfig, out: &mut Out) -> CmdResult {
    let x = structure_of(parsed)?;
    let part = refine_partition(&x, &config.bounds())?;
    for (r, blocks) in part.history.iter().enumerate() {
        let i = blocks[0].render(x.types(Player::I));
        let j = blocks[1].render(x.types(Player::J));
        out.emit(
            format!("round {r}: i {i} | j {j}"),
            "round",
            &[("round", r.to_string()), ("i", i.clone()), ("j", j.clone())],
        );
    }
    for s in &part.separators {
        let types = x.types(s.player);
        let (inside, outside) = (types.point(s.inside), types.point(s.outside));
        let theta = x.theta(s.player);
        let pulled_in = theta[s.inside].evaluate(&s.pulled_menu)?;
        let pulled_out = theta[s.outside].evaluate(&s.pulled_menu)?;
        let pulled_l: Menu<Act> = s
            .pulled_menu
            .iter()
            .zip(s.menu.iter())
            .filter(|(_, f)| s.choice.contains(f))
            .map(|(g, _)| g.clone())
            .collect();
        if !pulled_in.is_subset(&pulled_l) || pulled_out.is_subset(&pulled_l) {
            return Err(fail(format!(
                "separator {} on {} does not separate {inside} from {outside}",
                s.player, s.menu_label
            )));
        }
        out.emit(
            format!(
                "separator {} round {}: K={} L={} contains the choice of {inside}; {outside} chooses {}",
                s.player, s.round, s.menu_label, s.choice_label, s.other_label
            ),
            "separator",
            &[
                ("player", s.player.name().to_string()),
                ("round", s.round.to_string()),
                ("inside", inside.to_string()),
                ("outside", outside.to_string()),
                ("K", s.menu_label.clone()),
                ("L", s.choice_label.clone()),
                ("other", s.other_label.clone()),
            ],
        );
    }
    for u in &part.unsplit {
        let types = x.types(u.player);
        let (a, b) = (types.point(u.first), types.point(u.second));
        let cert = match u.certificate {
            Some(Certificate::IdenticalDefinition) => "identical definition",
            Some(Certificate::ExhaustiveSearch) => "exhaustive search",
            None => "uncertified",
        };
        if u.certificate.is_some() {
            let theta = x.theta(u.player);
            for k in nonempty_menus(&x.basis(u.player)) {
                if theta[u.first].evaluate(&k)? != theta[u.second].evaluate(&k)? {
                    return Err(fail(format!(
                        "{a} and {b} are certified equivalent but differ on {}",
                        x.render_menu(u.player, &k)
                    )));
                }
            }
        }
        out.emit(
            format!("unsplit {}: {a} ~ {b} ({cert})", u.player),
            "unsplit",
            &[
                ("player", u.player.name().to_string()),
                ("first", a.to_string()),
                ("second", b.to_string()),
                ("certificate", cert.to_string()),
            ],
        );
    }
    let verdict = non_redundancy_verdict(&part);
    let (table, fields) = match &verdict {
        Verdict::NonRedundant => (
            "verdict: NonRedundant".to_string(),
            vec![("verdict", "NonRedundant".to_string())],
        ),
        Verdict::Redundant(pairs) => {
            let witnesses: Vec<String> = pairs
                .iter()
                .map(|u| {
                    let types = x.types(u.player);
                    format!("{}:{}~{}", u.player, types.point(u.first), types.point(u.second))
                })
                .collect();
            (
                format!("verdict: Redundant (witness {})", witnesses.join(", ")),
                vec![
                    ("verdict", "Redundant".to_string()),
                    ("witness", witnesses.join(",")),
                ],
            )
        }
        Verdict::Inconclusive(b) => {
            let bounds = format!(
                "act-cap {}, menu-cap {}, samples {}, seed {}",
                b.act_cap, b.menu_cap, b.samples, b.seed
            );
            (
                format!("verdict: Inconclusive (no separator or certificate within {bounds})"),
                vec![("verdict", "Inconclusive".to_string()), ("bounds", bounds)],
            )
        }
    };
    out.emit(table, "verdict", &fields);
    Ok(())
}

fn embed(parsed: &ParsedStructure, out: &mut Out) -> CmdResult {
    let StructureSpec::Preference(pref) = &parsed.structure else {
        return Err(CliError::Input(
            "embed needs a structure with kind = \"preference\"".into(),
        ));
    };
    let x = structure_of(parsed)?;
    for p in Player::BOTH {
        let types = pref.types(p);
        let basis = x.basis(p);
        for t in 0..types.len() {
            let ty = types.point(t);
            out.heading(format!(
                "theta_{p}({ty}): {}",
                describe_source(&x, p, &parsed.sources[p.index()][t])
            ));
            for k in listed_menus(&basis) {
                let chosen = x.theta(p)[t].evaluate(&k)?;
                let again = recompute(&parsed.sources[p.index()][t], &k);
                let (menu_s, chosen_s) = (x.render_menu(p, &k), x.render_menu(p, &chosen));
                if again.as_ref() != Some(&chosen) || chosen.is_empty() {
                    return Err(fail(format!(
                        "maximal elements of {menu_s} for {ty} are not {chosen_s}"
                    )));
                }
                out.emit(
                    format!("  {menu_s} -> {chosen_s}"),
                    "choice",
                    &[
                        ("player", p.name().to_string()),
                        ("type", ty.to_string()),
                        ("menu", menu_s),
                        ("choice", chosen_s),
                    ],
                );
            }
        }
        for s in 0..types.len() {
            for t in s + 1..types.len() {
                let (a, b) = (types.point(s), types.point(t));
                let same = pref.theta(p)[s] == pref.theta(p)[t];
                let mut separating = None;
                for k in nonempty_menus(&basis) {
                    let (cs, ct) = (x.theta(p)[s].evaluate(&k)?, x.theta(p)[t].evaluate(&k)?);
                    if cs != ct {
                        separating = Some((k, cs, ct));
                        break;
                    }
                }
                let (line, fields) = match (same, separating) {
                    (true, None) => (
                        format!("injectivity {p}: {a}, {b} have the same preference and the same choices"),
                        vec![("status", "same".to_string())],
                    ),
                    (false, Some((k, cs, ct))) => {
                        let menu = x.render_menu(p, &k);
                        (
                            format!(
                                "injectivity {p}: {a}, {b} differ on {menu} ({} vs {})",
                                x.render_menu(p, &cs),
                                x.render_menu(p, &ct)
                            ),
                            vec![("status", "separated".to_string()), ("menu", menu)],
                        )
                    }
                    (true, Some((k, ..))) => {
                        return Err(fail(format!(
                            "{a} and {b} share a preference but choose differently on {}",
                            x.render_menu(p, &k)
                        )))
                    }
                    (false, None) => {
                        return Err(fail(format!(
                            "{a} and {b} have different preferences but identical maximization choices"
                        )))
                    }
                };
                let mut all = vec![
                    ("player", p.name().to_string()),
                    ("first", a.to_string()),
                    ("second", b.to_string()),
                ];
                all.extend(fields);
                out.emit(line, "injectivity", &all);
            }
        }
    }
    Ok(())
}

fn rationalization(g: &GameSpec, out: &mut Out) -> CmdResult {
    let frame = g.frame();
    let r = rationalize(g)?;
    let mut alive = [
        (0..frame.actions(Player::I).len()).collect::<Vec<_>>(),
        (0..frame.actions(Player::J).len()).collect::<Vec<_>>(),
    ];
    let names = |p: Player, set: &[usize]| -> String {
        if set.is_empty() {
            "-".into()
        } else {
            set.iter()
                .map(|&a| frame.actions(p).point(a))
                .collect::<Vec<_>>()
                .join(",")
        }
    };
    for p in Player::BOTH {
        let c = g.criterion(p);
        let families: Vec<String> = c.families.iter().map(|f| f.to_string()).collect();
        out.emit(
            format!("{}: {} over {}", g.name(p), c.criterion, families.join(" + ")),
            "criterion",
            &[
                ("player", g.name(p).to_string()),
                ("criterion", c.criterion.to_string()),
                ("families", families.join("+")),
            ],
        );
    }
    for round in &r.trace {
        let start = alive.clone();
        for p in Player::BOTH {
            let opp = &start[p.opponent().index()];
            let sub = Arc::new(FinSpace::discrete(
                opp.iter()
                    .map(|&s| frame.actions(p.opponent()).point(s).to_string()),
            )?);
            let all_acts: Vec<Act> = (0..frame.actions(p).len())
                .map(|a| {
                    Act::new(
                        sub.clone(),
                        opp.iter().map(|&s| frame.outcome_for(p, a, s)).collect(),
                    )
                })
                .collect::<Result<_, _>>()?;
            let menu: Menu<Act> = all_acts.iter().cloned().collect();
            let u = frame.utility(p)?;
            let kind = g.criterion(p).criterion;
            for (a, belief) in &round.witnesses[p.index()] {
                let action = frame.actions(p).point(*a);
                let shown = render_belief(belief);
                let chosen = criterion_select(kind, &menu, &criterion_values(kind, belief, &u, &menu));
                let valid = **belief.space() == *sub
                    && (kind != Criterion::ExpectedUtility || belief.is_point())
                    && chosen.contains(&all_acts[*a]);
                if !valid {
                    return Err(fail(format!(
                        "round {}: belief {shown} does not justify {action} for {}",
                        round.round,
                        g.name(p)
                    )));
                }
                out.emit(
                    format!("round {}: {} keeps {action} by {shown}", round.round, g.name(p)),
                    "keep",
                    &[
                        ("round", round.round.to_string()),
                        ("player", g.name(p).to_string()),
                        ("action", action.to_string()),
                        ("belief", shown.clone()),
                    ],
                );
            }
            for &a in &round.eliminated[p.index()] {
                let action = frame.actions(p).point(a);
                out.emit(
                    format!(
                        "round {}: {} eliminates {action} (no belief in the searched families justifies it)",
                        round.round,
                        g.name(p)
                    ),
                    "eliminate",
                    &[
                        ("round", round.round.to_string()),
                        ("player", g.name(p).to_string()),
                        ("action", action.to_string()),
                    ],
                );
            }
            alive[p.index()].retain(|a| !round.eliminated[p.index()].contains(a));
        }
    }
    let record = format!(
        "{}: {} | {}: {}",
        g.name(Player::I),
        names(Player::I, r.survivors(Player::I)),
        g.name(Player::J),
        names(Player::J, r.survivors(Player::J))
    );
    out.raw(format!("survivors: {record}"), format!("survivors\t{record}"));
    Ok(())
}

fn verify(config: &RunConfig, out: &mut Out) -> CmdResult {
    let mut first_failure: Option<String> = None;
    let reports = full_suite(config.seed, &config.bounds())?;
    for rep in &reports {
        let status = if rep.passed() { "ok" } else { "FAIL" };
        out.emit(
            format!("law {}: {status} ({} instances)", rep.name, rep.instances),
            "law",
            &[
                ("name", rep.name.to_string()),
                ("status", status.to_string()),
                ("instances", rep.instances.to_string()),
            ],
        );
        if let (None, Some(f)) = (&first_failure, rep.failures.first()) {
            first_failure = Some(format!("{}: {f}", rep.name));
        }
    }
    for path in &config.inputs {
        let text = read(path)?;
        let mut scratch = Out::new(crate::Format::Machine);
        let result = if is_game_file(&text) {
            let g = parse_game_spec(&text, config.grid).map_err(|e| located(path, e))?;
            rationalization(&g, &mut scratch)
        } else {
            let parsed = parse_structure_spec(&text).map_err(|e| located(path, e))?;
            verify_structure(&parsed, config, &mut scratch)
        };
        let status = match result {
            Ok(()) => "ok".to_string(),
            Err(CliError::Verification(m)) => {
                first_failure.get_or_insert_with(|| format!("{}: {m}", path.display()));
                "FAIL".to_string()
            }
            Err(e) => return Err(e),
        };
        out.emit(
            format!("fixture {}: {status}", path.display()),
            "fixture",
            &[("path", path.display().to_string()), ("status", status)],
        );
    }
    match first_failure {
        None => Ok(()),
        Some(f) => Err(fail(f)),
    }
}

fn verify_structure(parsed: &ParsedStructure, config: &RunConfig, out: &mut Out) -> CmdResult {
    choice_eval(parsed, out)?;
    let x = structure_of(parsed)?;
    if let Some(f) = check_morphism(&x, &x, &StructureMorphism::identity(&x), &config.bounds())? {
        return Err(fail(format!(
            "identity is not a morphism: {} type {} on {}",
            f.player,
            x.types(f.player).point(f.ty),
            x.render_menu(f.player, &f.menu)
        )));
    }
    hierarchy(parsed, config, out)?;
    nonred(parsed, config, out)?;
    if matches!(parsed.structure, StructureSpec::Preference(_)) {
        embed(parsed, out)?;
    }
    Ok(())
}
