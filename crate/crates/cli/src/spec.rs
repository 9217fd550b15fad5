//! TOML game and structure specifications.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use choice_structures::act::{Act, OutcomeSet};
use choice_structures::choice::{nonempty_menus, ChoiceFn, Menu};
use choice_structures::criteria::{criterion_choice, CredalSet, Criterion, UtilityView};
use choice_structures::game::{default_families, BeliefFamily, GameSpec, PlayerCriterion};
use choice_structures::pref::{maximize_as_choicefn, Poset};
use choice_structures::rational::{parse_rational, Rat};
use choice_structures::space::{product, FinSpace, Product};
use choice_structures::structure::{ChoiceStructure, GameFrame, Player, PreferenceStructure};
use serde::Deserialize;
use toml::Spanned;

/// A rejected specification, located by line when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for SpecError {}

type SpecResult<T> = Result<T, SpecError>;

/// Rows of cells, each with its position in the source.
type Grid = Spanned<Vec<Spanned<Vec<Spanned<String>>>>>;

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.text[..span.start.min(self.text.len())].matches('\n').count() + 1
    }

    fn err(
        &self,
        span: Option<Range<usize>>,
        field: impl Into<String>,
        message: impl fmt::Display,
    ) -> SpecError {
        SpecError {
            line: span.map(|s| self.line(s)),
            field: field.into(),
            message: message.to_string(),
        }
    }

    fn parse<T: serde::de::DeserializeOwned>(&self, text: &str) -> SpecResult<T> {
        toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            SpecError {
                line: e.span().map(|s| self.line(s)),
                field: "syntax".into(),
                message,
            }
        })
    }

    fn rational(&self, value: &Spanned<String>, field: &str) -> SpecResult<Rat> {
        parse_rational(value.get_ref()).map_err(|e| self.err(Some(value.span()), field, e))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    players: Spanned<Vec<String>>,
    payoffs: Grid,
    actions: Spanned<BTreeMap<String, Vec<String>>>,
    criteria: BTreeMap<String, CriterionEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CriterionEntry {
    kind: Spanned<String>,
    families: Option<Vec<Spanned<String>>>,
}

/// Parses `a;b` payoff pairs.
fn payoff_pair(src: &Source, cell: &Spanned<String>, field: &str) -> SpecResult<[Rat; 2]> {
    let Some((a, b)) = cell.get_ref().split_once(';') else {
        return Err(src.err(
            Some(cell.span()),
            field,
            format!("`{}` is not a payoff pair `a;b`", cell.get_ref()),
        ));
    };
    let parse = |s: &str| parse_rational(s).map_err(|e| src.err(Some(cell.span()), field, e));
    Ok([parse(a)?, parse(b)?])
}

fn payoff_table(src: &Source, payoffs: &Grid, actions: &[Vec<String>; 2]) -> SpecResult<Vec<Vec<[Rat; 2]>>> {
    let rows = payoffs.get_ref();
    if rows.len() != actions[0].len() {
        return Err(src.err(
            Some(payoffs.span()),
            "payoffs",
            format!(
                "expected {} rows (one per row action), found {}",
                actions[0].len(),
                rows.len()
            ),
        ));
    }
    let mut table = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let field = format!("payoffs row {} ({})", r + 1, actions[0][r]);
        if row.get_ref().len() != actions[1].len() {
            return Err(src.err(
                Some(row.span()),
                field,
                format!(
                    "expected {} entries (one per column action), found {}",
                    actions[1].len(),
                    row.get_ref().len()
                ),
            ));
        }
        let cells = row
            .get_ref()
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                payoff_pair(
                    src,
                    cell,
                    &format!("{field}, column {} ({})", c + 1, actions[1][c]),
                )
            })
            .collect::<SpecResult<Vec<_>>>()?;
        table.push(cells);
    }
    Ok(table)
}

fn action_lists(
    src: &Source,
    actions: &Spanned<BTreeMap<String, Vec<String>>>,
    names: &[String; 2],
) -> SpecResult<[Vec<String>; 2]> {
    if let Some(extra) = actions.get_ref().keys().find(|k| !names.contains(k)) {
        return Err(src.err(
            Some(actions.span()),
            "actions",
            format!("`{extra}` is not a player"),
        ));
    }
    let list = |name: &String| -> SpecResult<Vec<String>> {
        let acts = actions.get_ref().get(name).ok_or_else(|| {
            src.err(
                Some(actions.span()),
                "actions",
                format!("no actions for player `{name}`"),
            )
        })?;
        if acts.is_empty() {
            return Err(src.err(
                Some(actions.span()),
                format!("actions.{name}"),
                "empty action list",
            ));
        }
        let mut seen = BTreeSet::new();
        if let Some(d) = acts.iter().find(|a| !seen.insert(*a)) {
            return Err(src.err(
                Some(actions.span()),
                format!("actions.{name}"),
                format!("duplicate action `{d}`"),
            ));
        }
        Ok(acts.clone())
    };
    Ok([list(&names[0])?, list(&names[1])?])
}

/// Reads a game: two named players, their actions, the payoff matrix as rows
/// of `a;b` pairs and one criterion per player. Players without explicit
/// belief families get the defaults of their criterion at resolution `grid`.
pub fn parse_game_spec(text: &str, grid: usize) -> SpecResult<GameSpec> {
    let src = Source { text };
    let file: GameFile = src.parse(text)?;
    let names: [String; 2] = match file.players.get_ref().as_slice() {
        [a, b] if a != b => [a.clone(), b.clone()],
        [a, _] => {
            return Err(src.err(
                Some(file.players.span()),
                "players",
                format!("duplicate player `{a}`"),
            ))
        }
        other => {
            return Err(src.err(
                Some(file.players.span()),
                "players",
                format!("expected two players, found {}", other.len()),
            ))
        }
    };
    let actions = action_lists(&src, &file.actions, &names)?;
    let table = payoff_table(&src, &file.payoffs, &actions)?;
    let frame = GameFrame::from_payoffs(actions[0].clone(), actions[1].clone(), &table)
        .map_err(|e| src.err(Some(file.payoffs.span()), "payoffs", e))?;

    let criteria = &file.criteria;
    if let Some(extra) = criteria.keys().find(|k| !names.contains(k)) {
        return Err(src.err(None, "criteria", format!("`{extra}` is not a player")));
    }
    let mut parsed = Vec::with_capacity(2);
    for name in &names {
        let entry = criteria
            .get(name)
            .ok_or_else(|| src.err(None, "criteria", format!("no entry for player `{name}`")))?;
        let kind = entry
            .kind
            .get_ref()
            .parse::<Criterion>()
            .map_err(|e| src.err(Some(entry.kind.span()), format!("criteria.{name}.kind"), e))?;
        let families = match &entry.families {
            None => default_families(kind, grid),
            Some(list) => list
                .iter()
                .map(|f| {
                    f.get_ref()
                        .parse::<BeliefFamily>()
                        .map_err(|e| src.err(Some(f.span()), format!("criteria.{name}.families"), e))
                })
                .collect::<SpecResult<_>>()?,
        };
        parsed.push(PlayerCriterion {
            criterion: kind,
            families,
        });
    }
    let criteria: [PlayerCriterion; 2] = parsed.try_into().expect("two players");
    GameSpec::new(names, frame, criteria).map_err(|e| src.err(None, "players", e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    kind: Option<Spanned<String>>,
    payoffs: Option<Grid>,
    outcomes: Option<Spanned<Vec<Spanned<OutcomeEntry>>>>,
    profile: Option<Grid>,
    actions: Spanned<BTreeMap<String, Vec<String>>>,
    types: Spanned<BTreeMap<String, Vec<String>>>,
    theta: BTreeMap<String, Vec<ThetaEntry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OutcomeEntry {
    name: String,
    utility: Option<Vec<Spanned<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaEntry {
    #[serde(rename = "type")]
    ty: Spanned<String>,
    criterion: Option<Spanned<String>>,
    over: Option<Spanned<String>>,
    belief: Option<Spanned<Vec<Vec<Spanned<String>>>>>,
    simplex: Option<bool>,
    choices: Option<Vec<Spanned<TableRow>>>,
    prefers: Option<Vec<Spanned<Vec<String>>>>,
    listed: Option<Vec<Spanned<TableRow>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRow {
    menu: Vec<String>,
    choice: Vec<String>,
}

/// How a type's choice function was specified.
#[derive(Debug, Clone)]
pub enum ThetaSource {
    Criterion {
        kind: Criterion,
        /// Over the opponent's states.
        belief: CredalSet,
        /// As written: over the opponent's actions or states.
        declared: CredalSet,
        utility: UtilityView,
    },
    Table(BTreeMap<Menu<Act>, Menu<Act>>),
    Preference(Poset<Act>),
}

/// A reference answer shipped with the specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListedChoice {
    pub player: Player,
    pub ty: usize,
    pub menu: Menu<Act>,
    pub choice: Menu<Act>,
}

#[derive(Debug, Clone)]
pub enum StructureSpec {
    Choice(ChoiceStructure),
    Preference(PreferenceStructure),
}

#[derive(Debug, Clone)]
pub struct ParsedStructure {
    pub structure: StructureSpec,
    /// `sources[p][t]`.
    pub sources: [Vec<ThetaSource>; 2],
    pub listed: Vec<ListedChoice>,
}

impl ParsedStructure {
    /// The choice structure itself, or the embedding of the preference one.
    pub fn choice_structure(&self) -> choice_structures::Result<ChoiceStructure> {
        match &self.structure {
            StructureSpec::Choice(x) => Ok(x.clone()),
            StructureSpec::Preference(p) => choice_structures::structure::embed_preference_structure(p),
        }
    }
}

fn frame_from_outcomes(
    src: &Source,
    file: &StructureFile,
    actions: &[Vec<String>; 2],
) -> SpecResult<GameFrame> {
    let (Some(outcomes), Some(profile)) = (&file.outcomes, &file.profile) else {
        return Err(src.err(
            None,
            "outcomes",
            "give either `payoffs` or both `outcomes` and `profile`",
        ));
    };
    let mut names = Vec::new();
    let mut utilities = Vec::new();
    for (z, entry) in outcomes.get_ref().iter().enumerate() {
        let e = entry.get_ref();
        names.push(e.name.clone());
        if let Some(u) = &e.utility {
            let field = format!("outcomes[{z}] ({})", e.name);
            let row = u
                .iter()
                .map(|v| src.rational(v, &field))
                .collect::<SpecResult<Vec<_>>>()?;
            if row.len() != 2 {
                return Err(src.err(Some(entry.span()), field, "utility needs one value per player"));
            }
            utilities.push(row);
        }
    }
    let set = if utilities.is_empty() {
        OutcomeSet::new(names.clone())
    } else if utilities.len() == names.len() {
        OutcomeSet::with_utilities(names.clone(), utilities)
    } else {
        return Err(src.err(
            Some(outcomes.span()),
            "outcomes",
            "either every outcome has a utility or none does",
        ));
    }
    .map_err(|e| src.err(Some(outcomes.span()), "outcomes", e))?;

    let rows = profile.get_ref();
    if rows.len() != actions[0].len() {
        return Err(src.err(
            Some(profile.span()),
            "profile",
            format!("expected {} rows, found {}", actions[0].len(), rows.len()),
        ));
    }
    let mut table = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let field = format!("profile row {} ({})", r + 1, actions[0][r]);
        if row.get_ref().len() != actions[1].len() {
            return Err(src.err(
                Some(row.span()),
                field,
                format!(
                    "expected {} entries, found {}",
                    actions[1].len(),
                    row.get_ref().len()
                ),
            ));
        }
        let cells = row
            .get_ref()
            .iter()
            .map(|cell| {
                names.iter().position(|n| n == cell.get_ref()).ok_or_else(|| {
                    src.err(
                        Some(cell.span()),
                        &field,
                        format!("unknown outcome `{}`", cell.get_ref()),
                    )
                })
            })
            .collect::<SpecResult<Vec<_>>>()?;
        table.push(cells);
    }
    let discrete = |a: &Vec<String>| FinSpace::discrete(a.clone()).map_err(|e| src.err(None, "actions", e));
    GameFrame::new(set, discrete(&actions[0])?, discrete(&actions[1])?, table)
        .map_err(|e| src.err(Some(profile.span()), "profile", e))
}

struct PlayerContext<'a> {
    p: Player,
    frame: &'a GameFrame,
    states: Product,
    basis: Vec<Act>,
}

impl PlayerContext<'_> {
    fn menu(
        &self,
        src: &Source,
        span: Range<usize>,
        field: &str,
        labels: &[String],
    ) -> SpecResult<Menu<Act>> {
        let actions = self.frame.actions(self.p);
        labels
            .iter()
            .map(|l| {
                let name = if actions.index_of(l).is_none() {
                    l.strip_prefix("f_").unwrap_or(l)
                } else {
                    l.as_str()
                };
                actions
                    .index_of(name)
                    .map(|a| self.basis[a].clone())
                    .ok_or_else(|| src.err(Some(span.clone()), field, format!("unknown action `{l}`")))
            })
            .collect()
    }

    fn table(
        &self,
        src: &Source,
        rows: &[Spanned<TableRow>],
        field: &str,
    ) -> SpecResult<BTreeMap<Menu<Act>, Menu<Act>>> {
        let mut table = BTreeMap::new();
        for row in rows {
            let menu = self.menu(src, row.span(), field, &row.get_ref().menu)?;
            let choice = self.menu(src, row.span(), field, &row.get_ref().choice)?;
            if menu.is_empty() {
                return Err(src.err(Some(row.span()), field, "empty menu"));
            }
            if table.insert(menu, choice).is_some() {
                return Err(src.err(Some(row.span()), field, "menu listed twice"));
            }
        }
        Ok(table)
    }

    fn render(&self, menu: &Menu<Act>) -> String {
        let mut labels: Vec<usize> = menu
            .iter()
            .filter_map(|a| self.basis.iter().position(|b| b == a))
            .collect();
        labels.sort();
        let names: Vec<String> = labels
            .iter()
            .map(|&a| format!("f_{}", self.frame.actions(self.p).point(a)))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// The belief over the states and the belief as written.
    fn belief(&self, src: &Source, e: &ThetaEntry, field: &str) -> SpecResult<(CredalSet, CredalSet)> {
        let over_states = match e.over.as_ref().map(|o| o.get_ref().as_str()) {
            None | Some("actions") => false,
            Some("states") => true,
            Some(other) => {
                return Err(src.err(
                    e.over.as_ref().map(|o| o.span()),
                    format!("{field}.over"),
                    format!("`{other}` is neither `actions` nor `states`"),
                ))
            }
        };
        let space = if over_states {
            self.states.space.clone()
        } else {
            self.frame.actions(self.p.opponent()).clone()
        };
        let set = match (&e.belief, e.simplex) {
            (Some(_), Some(true)) => {
                return Err(src.err(
                    Some(e.ty.span()),
                    field,
                    "give either `belief` or `simplex = true`, not both",
                ))
            }
            (Some(b), _) => {
                let vertices = b
                    .get_ref()
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|x| src.rational(x, &format!("{field}.belief")))
                            .collect()
                    })
                    .collect::<SpecResult<Vec<Vec<Rat>>>>()?;
                CredalSet::new(space, vertices)
                    .map_err(|e| src.err(Some(b.span()), format!("{field}.belief"), e))?
            }
            (None, Some(true)) => CredalSet::simplex(space),
            (None, _) => {
                return Err(src.err(
                    Some(e.ty.span()),
                    field,
                    "a criterion needs `belief` or `simplex = true`",
                ))
            }
        };
        if over_states {
            Ok((set.clone(), set))
        } else {
            let extended = set
                .vacuous_extension(&self.states)
                .map_err(|err| src.err(Some(e.ty.span()), field, err))?;
            Ok((extended, set))
        }
    }

    fn poset(&self, src: &Source, pairs: &[Spanned<Vec<String>>], field: &str) -> SpecResult<Poset<Act>> {
        let actions = self.frame.actions(self.p);
        let names: Vec<String> = actions.points().to_vec();
        let mut order = Vec::new();
        for pair in pairs {
            let [better, worse] = pair.get_ref().as_slice() else {
                return Err(src.err(Some(pair.span()), field, "each entry is [better, worse]"));
            };
            for n in [better, worse] {
                if actions.index_of(n).is_none() {
                    return Err(src.err(Some(pair.span()), field, format!("unknown action `{n}`")));
                }
            }
            order.push((worse.clone(), better.clone()));
        }
        let span = pairs.first().map(|p| p.span());
        let named = Poset::closure(names.clone(), &order).map_err(|e| src.err(span.clone(), field, e))?;
        let distinct: BTreeSet<&Act> = self.basis.iter().collect();
        if distinct.len() != self.basis.len() {
            return Err(src.err(
                span,
                field,
                "two actions induce the same act; rank acts, not actions",
            ));
        }
        let leq = names
            .iter()
            .map(|x| names.iter().map(|y| named.leq(x, y).expect("carrier")).collect())
            .collect();
        Poset::from_matrix(self.basis.clone(), leq).map_err(|e| src.err(None, field, e))
    }
}

fn name_lists(
    src: &Source,
    map: &Spanned<BTreeMap<String, Vec<String>>>,
    field: &str,
) -> SpecResult<[Vec<String>; 2]> {
    if let Some(extra) = map.get_ref().keys().find(|k| *k != "i" && *k != "j") {
        return Err(src.err(
            Some(map.span()),
            field,
            format!("players are `i` and `j`, found `{extra}`"),
        ));
    }
    let get = |p: &str| -> SpecResult<Vec<String>> {
        let list = map
            .get_ref()
            .get(p)
            .ok_or_else(|| src.err(Some(map.span()), field, format!("missing `{p}`")))?;
        if list.is_empty() {
            return Err(src.err(Some(map.span()), format!("{field}.{p}"), "empty list"));
        }
        let mut seen = BTreeSet::new();
        if let Some(d) = list.iter().find(|a| !seen.insert(*a)) {
            return Err(src.err(
                Some(map.span()),
                format!("{field}.{p}"),
                format!("duplicate `{d}`"),
            ));
        }
        Ok(list.clone())
    };
    Ok([get("i")?, get("j")?])
}

/// Reads a two-player structure. Players are `i` (rows) and `j` (columns).
/// Each type's θ is a criterion with a belief, an explicit menu→choice
/// table, or a strict preference given as `[better, worse]` pairs; with
/// `kind = "preference"` every type must use preference pairs.
pub fn parse_structure_spec(text: &str) -> SpecResult<ParsedStructure> {
    let src = Source { text };
    let file: StructureFile = src.parse(text)?;
    let preference = match file.kind.as_ref().map(|k| k.get_ref().as_str()) {
        None | Some("choice") => false,
        Some("preference") => true,
        Some(other) => {
            return Err(src.err(
                file.kind.as_ref().map(|k| k.span()),
                "kind",
                format!("`{other}` is neither `choice` nor `preference`"),
            ))
        }
    };
    let names = ["i".to_string(), "j".to_string()];
    let actions = action_lists(&src, &file.actions, &names)?;
    let frame = match &file.payoffs {
        Some(p) => {
            if file.outcomes.is_some() || file.profile.is_some() {
                return Err(src.err(
                    Some(p.span()),
                    "payoffs",
                    "give either `payoffs` or `outcomes` with `profile`",
                ));
            }
            let table = payoff_table(&src, p, &actions)?;
            GameFrame::from_payoffs(actions[0].clone(), actions[1].clone(), &table)
                .map_err(|e| src.err(Some(p.span()), "payoffs", e))?
        }
        None => frame_from_outcomes(&src, &file, &actions)?,
    };
    let types = name_lists(&src, &file.types, "types")?;
    let type_spaces: Vec<Arc<FinSpace>> = types
        .iter()
        .map(|t| {
            FinSpace::discrete(t.clone())
                .map(Arc::new)
                .map_err(|e| src.err(None, "types", e))
        })
        .collect::<SpecResult<_>>()?;

    if let Some(extra) = file.theta.keys().find(|k| *k != "i" && *k != "j") {
        return Err(src.err(None, "theta", format!("players are `i` and `j`, found `{extra}`")));
    }
    let mut sources: [Vec<ThetaSource>; 2] = [Vec::new(), Vec::new()];
    let mut listed = Vec::new();
    for p in Player::BOTH {
        let states = product(frame.actions(p.opponent()), &type_spaces[p.opponent().index()]);
        let basis = (0..frame.actions(p).len())
            .map(|a| {
                frame
                    .action_act_on(p, a, &states.first)
                    .expect("projection to actions")
            })
            .collect();
        let ctx = PlayerContext {
            p,
            frame: &frame,
            states,
            basis,
        };
        let entries = file.theta.get(p.name()).map(Vec::as_slice).unwrap_or(&[]);
        let mut by_type: Vec<Option<ThetaSource>> = vec![None; types[p.index()].len()];
        for (k, e) in entries.iter().enumerate() {
            let entry = &e.ty;
            let field = format!("theta.{p}[{k}]");
            let t = types[p.index()]
                .iter()
                .position(|n| n == e.ty.get_ref())
                .ok_or_else(|| {
                    src.err(
                        Some(e.ty.span()),
                        &field,
                        format!("unknown type `{}`", e.ty.get_ref()),
                    )
                })?;
            if by_type[t].is_some() {
                return Err(src.err(
                    Some(entry.span()),
                    &field,
                    format!("type `{}` defined twice", e.ty.get_ref()),
                ));
            }
            let field = format!("theta.{p}[{k}] ({})", e.ty.get_ref());
            let given = [e.criterion.is_some(), e.choices.is_some(), e.prefers.is_some()];
            if given.iter().filter(|g| **g).count() != 1 {
                return Err(src.err(
                    Some(entry.span()),
                    &field,
                    "give exactly one of `criterion`, `choices` or `prefers`",
                ));
            }
            if preference && e.prefers.is_none() {
                return Err(src.err(
                    Some(entry.span()),
                    &field,
                    "a preference structure needs `prefers` pairs",
                ));
            }
            let source = if let Some(c) = &e.criterion {
                let kind = c
                    .get_ref()
                    .parse::<Criterion>()
                    .map_err(|err| src.err(Some(c.span()), format!("{field}.criterion"), err))?;
                let (belief, declared) = ctx.belief(&src, e, &field)?;
                let utility = frame
                    .utility(p)
                    .map_err(|err| src.err(Some(entry.span()), &field, err))?;
                criterion_choice(kind, &belief, &utility)
                    .map_err(|err| src.err(Some(entry.span()), &field, err))?;
                ThetaSource::Criterion {
                    kind,
                    belief,
                    declared,
                    utility,
                }
            } else if let Some(rows) = &e.choices {
                let table = ctx.table(&src, rows, &format!("{field}.choices"))?;
                for k in nonempty_menus(&ctx.basis).into_iter().filter(|k| k.len() > 1) {
                    if !table.contains_key(&k) {
                        return Err(src.err(
                            Some(entry.span()),
                            format!("{field}.choices"),
                            format!("no row for menu {}", ctx.render(&k)),
                        ));
                    }
                }
                for (k, c) in &table {
                    if !c.is_subset(k) || c.is_empty() {
                        let row = rows.iter().find(|r| {
                            ctx.menu(&src, r.span(), "", &r.get_ref().menu).ok().as_ref() == Some(k)
                        });
                        return Err(src.err(
                            row.map(|r| r.span()),
                            format!("{field}.choices"),
                            format!(
                                "contraction violated: chose {} from {}",
                                ctx.render(c),
                                ctx.render(k)
                            ),
                        ));
                    }
                }
                ChoiceFn::extensional(table.clone())
                    .map_err(|err| src.err(Some(entry.span()), &field, err))?;
                ThetaSource::Table(table)
            } else {
                let pairs = e.prefers.as_deref().unwrap_or(&[]);
                ThetaSource::Preference(ctx.poset(&src, pairs, &format!("{field}.prefers"))?)
            };
            if let Some(rows) = &e.listed {
                for (menu, choice) in ctx.table(&src, rows, &format!("{field}.listed"))? {
                    listed.push(ListedChoice {
                        player: p,
                        ty: t,
                        menu,
                        choice,
                    });
                }
            }
            by_type[t] = Some(source);
        }
        for (t, s) in by_type.into_iter().enumerate() {
            match s {
                Some(s) => sources[p.index()].push(s),
                None => {
                    return Err(src.err(
                        None,
                        format!("theta.{p}"),
                        format!("no entry for type `{}`", types[p.index()][t]),
                    ))
                }
            }
        }
    }

    let invalid = |e: choice_structures::Error| src.err(None, "structure", e);
    let space = |p: Player| (*type_spaces[p.index()]).clone();
    let structure = if preference {
        let posets = |p: Player| {
            sources[p.index()]
                .iter()
                .map(|s| match s {
                    ThetaSource::Preference(q) => q.clone(),
                    _ => unreachable!("checked while reading"),
                })
                .collect::<Vec<_>>()
        };
        StructureSpec::Preference(
            PreferenceStructure::new(
                frame,
                space(Player::I),
                space(Player::J),
                posets(Player::I),
                posets(Player::J),
            )
            .map_err(invalid)?,
        )
    } else {
        let choices = |p: Player| -> SpecResult<Vec<ChoiceFn<Act>>> {
            sources[p.index()]
                .iter()
                .map(|s| theta_of(s).map_err(invalid))
                .collect()
        };
        StructureSpec::Choice(
            ChoiceStructure::new(
                frame,
                space(Player::I),
                space(Player::J),
                choices(Player::I)?,
                choices(Player::J)?,
            )
            .map_err(invalid)?,
        )
    };
    Ok(ParsedStructure {
        structure,
        sources,
        listed,
    })
}

/// The choice function a source describes.
pub fn theta_of(source: &ThetaSource) -> choice_structures::Result<ChoiceFn<Act>> {
    match source {
        ThetaSource::Criterion {
            kind,
            belief,
            utility,
            ..
        } => criterion_choice(*kind, belief, utility),
        ThetaSource::Table(t) => ChoiceFn::extensional(t.clone()),
        ThetaSource::Preference(q) => Ok(maximize_as_choicefn(q)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAME: &str = r#"
players = ["i", "j"]
payoffs = [
  ["5;1", "0;0"],
  ["3;2", "0;1"],
]
[actions]
i = ["u", "m"]
j = ["l", "r"]
[criteria.i]
kind = "regret"
[criteria.j]
kind = "eu"
families = ["grid-points(4)"]
"#;

    #[test]
    fn reads_a_small_game() {
        let g = parse_game_spec(GAME, 8).unwrap();
        assert_eq!(g.name(Player::J), "j");
        assert_eq!(g.criterion(Player::I).criterion, Criterion::Regret);
        assert_eq!(g.criterion(Player::I).families.len(), 3);
        assert_eq!(g.criterion(Player::J).families, vec![BeliefFamily::GridPoints(4)]);
        assert_eq!(g.frame().outcomes().len(), 4);
    }

    #[test]
    fn decimals_are_rejected_with_their_line() {
        let err = parse_game_spec(&GAME.replace("\"3;2\"", "\"0.25;2\""), 8).unwrap_err();
        assert_eq!(err.line, Some(5));
        assert!(err.field.contains("row 2 (m)"), "{err}");
        assert!(err.message.contains("exact rational"), "{err}");
        assert!(parse_game_spec(&GAME.replace("\"3;2\"", "\"1/4;2\""), 8).is_ok());
    }

    #[test]
    fn short_rows_are_named() {
        let err = parse_game_spec(&GAME.replace("[\"3;2\", \"0;1\"]", "[\"3;2\"]"), 8).unwrap_err();
        assert!(err.field.contains("payoffs row 2 (m)"), "{err}");
        assert!(err.message.contains("expected 2 entries"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_line() {
        let err = parse_game_spec("players = [\"i\", \"j\"]\npayoffs = [[\n", 8).unwrap_err();
        assert_eq!(err.field, "syntax");
        assert!(err.line.is_some());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_game_spec(&format!("bogus = 1\n{GAME}"), 8).unwrap_err();
        assert!(err.message.contains("bogus"), "{err}");
    }

    const TABLES: &str = r#"
payoffs = [["1;0", "0;1"], ["0;1", "1;0"]]
[actions]
i = ["a", "b"]
j = ["x", "y"]
[types]
i = ["s"]
j = ["t"]
[[theta.i]]
type = "s"
choices = [{ menu = ["a", "b"], choice = ["a"] }]
[[theta.j]]
type = "t"
prefers = [["x", "y"]]
"#;

    #[test]
    fn tables_and_preferences_build_a_structure() {
        let parsed = parse_structure_spec(TABLES).unwrap();
        let x = parsed.choice_structure().unwrap();
        let k = Menu::new(x.basis(Player::I));
        assert_eq!(
            x.render_menu(Player::I, &x.theta(Player::I)[0].evaluate(&k).unwrap()),
            "{f_a}"
        );
        let k = Menu::new(x.basis(Player::J));
        assert_eq!(
            x.render_menu(Player::J, &x.theta(Player::J)[0].evaluate(&k).unwrap()),
            "{f_x}"
        );
    }

    #[test]
    fn choices_outside_the_menu_violate_contraction() {
        let text = TABLES
            .replace("i = [\"a\", \"b\"]", "i = [\"a\", \"b\", \"c\"]")
            .replace("[[\"1;0\", \"0;1\"], [\"0;1\", \"1;0\"]]", "[[\"1;0\", \"0;1\"], [\"0;1\", \"1;0\"], [\"2;2\", \"3;3\"]]")
            .replace(
                "choices = [{ menu = [\"a\", \"b\"], choice = [\"a\"] }]",
                "choices = [\n  { menu = [\"a\", \"b\"], choice = [\"c\"] },\n  { menu = [\"a\", \"c\"], choice = [\"a\"] },\n  { menu = [\"b\", \"c\"], choice = [\"b\"] },\n  { menu = [\"a\", \"b\", \"c\"], choice = [\"a\"] },\n]",
            );
        let err = parse_structure_spec(&text).unwrap_err();
        assert!(
            err.message
                .contains("contraction violated: chose {f_c} from {f_a,f_b}"),
            "{err}"
        );
        assert_eq!(err.line, Some(12));
    }

    #[test]
    fn two_cycles_are_not_antisymmetric() {
        let text = TABLES.replace(
            "prefers = [[\"x\", \"y\"]]",
            "prefers = [[\"x\", \"y\"], [\"y\", \"x\"]]",
        );
        let err = parse_structure_spec(&text).unwrap_err();
        assert!(err.message.contains("anti-symmetric"), "{err}");
    }

    #[test]
    fn missing_table_rows_and_types_are_reported() {
        let err = parse_structure_spec(&TABLES.replace(
            "choices = [{ menu = [\"a\", \"b\"], choice = [\"a\"] }]",
            "choices = []",
        ))
        .unwrap_err();
        assert!(err.message.contains("no row for menu {f_a,f_b}"), "{err}");
        let err = parse_structure_spec(&TABLES.replace("type = \"t\"", "type = \"ghost\"")).unwrap_err();
        assert!(err.message.contains("unknown type `ghost`"), "{err}");
    }

    #[test]
    fn preference_kind_requires_pairs() {
        let err = parse_structure_spec(&format!("kind = \"preference\"\n{TABLES}")).unwrap_err();
        assert!(err.message.contains("needs `prefers`"), "{err}");
    }
}
