use choice_demo::{explore, explore_choice, nonredundancy, rationalize_game};
use serde_json::Value;

fn chosen(v: &Value) -> Vec<String> {
    v["actions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["chosen"].as_bool().unwrap())
        .map(|a| a["action"].as_str().unwrap().to_string())
        .collect()
}

fn names(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect()
}

#[test]
fn regret_over_the_wide_interval() {
    // Regrets (l, r): u (0, 3), m (2, 3), c (4, 0), d (4, 1).
    let v = explore_choice("regret", "1/4", "1", "u,m,c,d").unwrap();
    assert_eq!(chosen(&v), ["u", "m", "c"]);
    let values: Vec<&str> = v["actions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["3", "3", "3", "13/4"]);
}

#[test]
fn maxmin_and_eu_pick_by_hand_computed_values() {
    // P(r) in [0, 1]: worst utilities are u 0, m 0, c 1, d 1.
    let v = explore_choice("maxmin", "0", "1", "u,m,c,d").unwrap();
    assert_eq!(chosen(&v), ["c", "d"]);
    // P(r) = 1/2: u 5/2, m 3/2, c 2, d 3/2.
    let v = explore_choice("eu", "1/2", "1/2", "u,m,c,d").unwrap();
    assert_eq!(chosen(&v), ["u"]);
    assert_eq!(v["actions"][0]["value"], "5/2");
}

#[test]
fn line_endpoints_match_the_payoffs() {
    let v = explore_choice("maxmin", "0", "1", "u,d").unwrap();
    let u = &v["actions"][0];
    assert_eq!((u["at0"].as_f64(), u["at1"].as_f64()), (Some(5.0), Some(0.0)));
    let d = &v["actions"][1];
    assert_eq!((d["at0"].as_f64(), d["at1"].as_f64()), (Some(1.0), Some(2.0)));
}

#[test]
fn rationalize_survivors() {
    let v = rationalize_game("eu", "eu", 8).unwrap();
    assert_eq!(names(&v["survivors"]["i"]), ["u"]);
    assert_eq!(names(&v["survivors"]["j"]), ["l"]);
    let v = rationalize_game("regret", "regret", 8).unwrap();
    assert_eq!(names(&v["survivors"]["i"]), ["u"]);
    assert_eq!(names(&v["survivors"]["j"]), ["l"]);
    let v = rationalize_game("maxmin", "maxmin", 8).unwrap();
    assert_eq!(names(&v["survivors"]["i"]), ["u", "c", "d"]);
    assert_eq!(names(&v["survivors"]["j"]), ["l", "r"]);
}

#[test]
fn nonredundancy_verdicts() {
    let v = nonredundancy("example", 4096, 256).unwrap();
    assert_eq!(v["verdict"]["kind"], "NonRedundant");
    assert!(!v["separators"].as_array().unwrap().is_empty());
    let v = nonredundancy("duplicate", 4096, 256).unwrap();
    assert_eq!(v["verdict"]["kind"], "Redundant");
    let w = &v["verdict"]["witnesses"][0];
    assert_eq!(w["player"], "j");
}

#[test]
fn bad_input_is_reported_as_json() {
    assert!(explore_choice("eu", "0", "1", "u").is_err());
    assert!(explore_choice("regret", "0", "1", "").is_err());
    assert!(explore_choice("regret", "0", "1", "x").is_err());
    assert!(explore_choice("nope", "0", "1", "u").is_err());
    assert!(rationalize_game("eu", "eu", 0).is_err());
    assert!(nonredundancy("other", 10, 0).is_err());
    let v: Value = serde_json::from_str(&explore("regret", "2", "1", "u")).unwrap();
    assert!(v["error"].is_string());
}
