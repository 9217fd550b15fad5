//! Acceptance criteria, one line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use choice_structures::act::Act;
use choice_structures::choice::Menu;
use choice_structures::criteria::{regret_values, CredalSet, Criterion, UtilityView};
use choice_structures::game::{example_game, rationalize};
use choice_structures::hierarchy::{non_redundancy_verdict, refine_partition, Verdict};
use choice_structures::laws::{self, LawReport};
use choice_structures::rational::{format_rational, rat};
use choice_structures::search::SearchBounds;
use choice_structures::structure::{
    example_structure, example_structure_with_duplicate, ChoiceStructure, Player,
};

type Outcome = Result<Vec<String>, String>;
type Check = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome>);

fn menu(x: &ChoiceStructure, p: Player, labels: &str) -> Menu<Act> {
    let basis = x.basis(p);
    labels
        .chars()
        .map(|c| basis[x.actions(p).index_of(&c.to_string()).expect("action")].clone())
        .collect()
}

fn show(x: &ChoiceStructure, p: Player, k: &Menu<Act>) -> String {
    x.render_menu(p, k)
}

fn ida_tables() -> Outcome {
    let x = example_structure();
    let ida = &x.theta(Player::I)[0];
    let listed = [
        ("umcd", "umc"),
        ("umd", "um"),
        ("mcd", "c"),
        ("md", "d"),
        ("cd", "c"),
        ("um", "u"),
        ("ud", "u"),
        ("uc", "uc"),
        ("mc", "c"),
    ];
    for (k, c) in listed {
        let (k, c) = (menu(&x, Player::I, k), menu(&x, Player::I, c));
        let got = ida.evaluate(&k).map_err(|e| e.to_string())?;
        if got != c {
            return Err(format!(
                "{} chose {}, expected {}",
                show(&x, Player::I, &k),
                show(&x, Player::I, &got),
                show(&x, Player::I, &c)
            ));
        }
    }
    let belief = CredalSet::interval(x.actions(Player::J).clone(), rat(1, 4), rat(1, 1))
        .and_then(|b| b.vacuous_extension(x.states(Player::I)))
        .map_err(|e| e.to_string())?;
    let u = UtilityView::from_outcomes(x.outcomes(), 0).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (k, c) in [("umc", "um"), ("ucd", "u")] {
        let (k, c) = (menu(&x, Player::I, k), menu(&x, Player::I, c));
        let got = ida.evaluate(&k).map_err(|e| e.to_string())?;
        let values = regret_values(&belief, &u, &k).map_err(|e| e.to_string())?;
        let regrets: Vec<String> = k
            .iter()
            .zip(&values)
            .map(|(a, v)| format!("{}={}", x.render_act(Player::I, a), format_rational(v)))
            .collect();
        notes.push(format!(
            "tie note: {} listed {}, exact worst-case regrets {} give {}",
            show(&x, Player::I, &k),
            show(&x, Player::I, &c),
            regrets.join(" "),
            show(&x, Player::I, &got)
        ));
    }
    Ok(notes)
}

fn joe_tables() -> Outcome {
    let x = example_structure();
    let k = menu(&x, Player::J, "lr");
    let mm = x.theta(Player::J)[0].evaluate(&k).map_err(|e| e.to_string())?;
    let eu = x.theta(Player::J)[1].evaluate(&k).map_err(|e| e.to_string())?;
    if mm != menu(&x, Player::J, "l") {
        return Err(format!("maxmin chose {}", show(&x, Player::J, &mm)));
    }
    if eu != k {
        return Err(format!("expected utility chose {}", show(&x, Player::J, &eu)));
    }
    Ok(vec![])
}

fn rationalizability() -> Outcome {
    let mut lines = Vec::new();
    for (c, i, j) in [
        (Criterion::ExpectedUtility, "u", "l"),
        (Criterion::Maxmin, "u,c,d", "l,r"),
        (Criterion::Regret, "u", "l"),
    ] {
        let g = example_game(c);
        let r = rationalize(&g).map_err(|e| e.to_string())?;
        let names = |p: Player| {
            r.survivors(p)
                .iter()
                .map(|&a| g.frame().actions(p).point(a))
                .collect::<Vec<_>>()
                .join(",")
        };
        let (gi, gj) = (names(Player::I), names(Player::J));
        if gi != i || gj != j {
            return Err(format!(
                "{c}: survivors {{{gi}}}x{{{gj}}}, expected {{{i}}}x{{{j}}}"
            ));
        }
        lines.push(format!("{c}: {{{gi}}}x{{{gj}}}"));
    }
    Ok(lines)
}

fn non_redundancy() -> Outcome {
    let bounds = SearchBounds::default();
    let x = example_structure();
    let b = refine_partition(&x, &bounds).map_err(|e| e.to_string())?;
    if non_redundancy_verdict(&b) != Verdict::NonRedundant {
        return Err(format!("example verdict {:?}", non_redundancy_verdict(&b)));
    }
    let sep = b.separators.first().ok_or("no separator recorded")?;
    if sep.menu_label != "{f_l,f_r}" {
        return Err(format!("separator {}", sep.menu_label));
    }
    let d = example_structure_with_duplicate();
    let b = refine_partition(&d, &bounds).map_err(|e| e.to_string())?;
    match non_redundancy_verdict(&b) {
        Verdict::Redundant(pairs)
            if pairs
                .iter()
                .any(|p| p.player == Player::J && (p.first, p.second) == (0, 1)) =>
        {
            Ok(vec![format!(
                "separator {} ; duplicate pair ({},{})",
                sep.menu_label,
                d.types(Player::J).point(0),
                d.types(Player::J).point(1)
            )])
        }
        v => Err(format!("duplicate verdict {v:?}")),
    }
}

fn reports(r: choice_structures::Result<Vec<LawReport>>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for rep in &r {
        if !rep.passed() {
            return Err(format!("{}: {}", rep.name, rep.failures.join("; ")));
        }
        lines.push(format!("{}: {} instances", rep.name, rep.instances));
    }
    Ok(lines)
}

fn main() -> ExitCode {
    let seed = 0;
    let bounds = SearchBounds::default();
    let criteria: Vec<Check> = vec![
        (
            1,
            "Ida's regret choice table",
            Duration::from_secs(1),
            Box::new(ida_tables),
        ),
        (
            2,
            "Joe's maxmin and EU choices",
            Duration::from_secs(1),
            Box::new(joe_tables),
        ),
        (
            3,
            "rationalizable profiles",
            Duration::from_secs(10),
            Box::new(rationalizability),
        ),
        (
            4,
            "non-redundancy verdicts",
            Duration::from_secs(5),
            Box::new(non_redundancy),
        ),
        (
            5,
            "functor laws",
            Duration::from_secs(30),
            Box::new(move || reports(laws::functor_laws(200, seed))),
        ),
        (
            6,
            "maximization suite",
            Duration::from_secs(60),
            Box::new(move || {
                reports((|| {
                    Ok(vec![
                        laws::poset_injectivity(4)?,
                        laws::naturality(100, seed)?,
                        laws::normalization_agreement(4)?,
                    ])
                })())
            }),
        ),
        (
            7,
            "lifting, factorization and colimits",
            Duration::from_secs(30),
            Box::new(move || {
                reports((|| {
                    Ok(vec![
                        laws::lift_round_trips(100, seed)?,
                        laws::factorization(100, seed)?,
                        laws::colimit_choices(50, seed)?,
                    ])
                })())
            }),
        ),
        (
            8,
            "hierarchy suite",
            Duration::from_secs(60),
            Box::new(move || reports(laws::hierarchy_laws(3, &bounds))),
        ),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if took <= limit => "PASS".to_string(),
            Ok(_) => format!("FAIL (over the {}s limit)", limit.as_secs()),
            Err(e) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {n}: {verdict} {name} [{} ms]", took.as_millis());
        if let Ok(lines) = outcome {
            for l in lines {
                println!("    {l}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
