use super::*;
use crate::cards::parse_cards;
use crate::game::{apply_compact, Seat};

fn trace_state(history: &str) -> GameState {
    let c = parse_cards("AhKd5c4c").unwrap();
    let runout = parse_cards("7s6hJc6c9h").unwrap();
    let s = GameState::new_hand(Seat::Zero, [[c[0], c[1]], [c[2], c[3]]], runout).unwrap();
    apply_compact(s, history).unwrap()
}

fn prompt_for(history: &str, lib: &SkillLibrary) -> PromptBundle {
    let st = trace_state(history);
    let node = analyze(&st, lib, &ViableConfig::default()).unwrap();
    build_prompt(&st, &node, lib)
}

const TRACE: [&str; 4] = ["r2.75", "r2.75 r9 c", "r2.75 r9 c / b5 c", "r2.75 r9 c / b5 c / x x"];

#[test]
fn prompt_is_deterministic() {
    let lib = SkillLibrary::bundled();
    for h in TRACE {
        assert_eq!(prompt_for(h, &lib), prompt_for(h, &lib));
    }
}

#[test]
fn sections_by_street() {
    let lib = SkillLibrary::bundled();
    let pre = prompt_for(TRACE[0], &lib);
    let names: Vec<&str> = pre.sections.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, prompt::SECTION_NAMES);
    assert!(pre.rendered_text.contains("[RANGE TABLE] scenario=bb_vs_open hand=54s"));
    assert!(pre.rendered_text.contains("[PREFLOP PLAN]"));
    assert!(!pre.rendered_text.contains("[GENERAL POSTFLOP PRINCIPLES]"));
    assert!(!pre.rendered_text.contains("[YOUR HAND STRENGTH]"));
    assert!(pre.system.contains("raise to"), "system: {}", pre.system);
    assert!(!pre.rendered_text.contains(pre.system.lines().next().unwrap()));

    let flop = prompt_for(TRACE[1], &lib).rendered_text;
    for needle in [
        "SPR: 10.6",
        "Scenario: F-A2",
        "5 (base 0.5, draw floor 5)",
        "MAX ALL-IN (capped): 54.00 BB (300% pot)",
        "[GENERAL POSTFLOP PRINCIPLES]",
        "Geometric bet would be 91% pot per street over 3 streets",
    ] {
        assert!(flop.contains(needle), "flop missing {needle:?}");
    }
    assert!(!flop.contains("[RIVER: BLUFFING"));

    let turn = prompt_for(TRACE[2], &lib).rendered_text;
    assert!(turn.contains("SPR: 6.6") && turn.contains("Scenario: T-A2") && turn.contains("84.00 BB (300% pot)"));
    assert!(turn.contains("-> Viable options: CHECK\n"));
    assert!(turn.contains("[TURN CARD]"));

    let river = prompt_for(TRACE[3], &lib).rendered_text;
    assert!(river.contains("Scenario: R-BC2"));
    assert!(river.contains("[RIVER: BLUFFING AND BLUFF-CATCHING]"));
    assert!(river.contains("POLARIZED BET (bluff)") && river.contains("BLOCK BET"));
    assert!(river.contains("over 1 street ("));
    assert!(river.ends_with("Return JSON only.\n"));
}

fn scripted_agent(replies: &[&str]) -> Agent {
    let lib = Arc::new(SkillLibrary::bundled());
    Agent::new(lib, Arc::new(ScriptedPolicy::new(replies.iter().copied())))
}

#[test]
fn plays_the_trace() {
    let agent = scripted_agent(&[
        r#"{"action": "b", "amount": 9.0, "reasoning": "3-bet"}"#,
        r#"{"action": "b", "amount": 5.0, "reasoning": "c-bet"}"#,
        r#"{"action": "k", "amount": 0, "reasoning": "paired turn"}"#,
        r#"{"action": "b", "amount": 21.0, "reasoning": "bluff"}"#,
    ]);
    let mut convo = Conversation::default();
    let got: Vec<String> = TRACE
        .iter()
        .map(|h| {
            let d = agent.act(&trace_state(h), &mut convo).unwrap();
            assert_eq!(d.grounded.source, ActionSource::Policy, "{h}: {:?}", d.grounded.fallback_reason);
            d.grounded.action.to_string()
        })
        .collect();
    assert_eq!(got, ["b 9.00", "b 5.00", "k", "b 21.00"]);
    assert_eq!(convo.exchanges.len(), 4);
    assert_eq!(agent.counter.fallbacks(), 0);
}

#[test]
fn invalid_replies_fall_back() {
    let agent = scripted_agent(&["no idea", r#"{"action":"b","amount":30}"#, r#"{"action":"f"}"#]);
    let mut convo = Conversation::default();
    let flop = trace_state(TRACE[1]);
    for _ in 0..3 {
        let d = agent.act(&flop, &mut convo).unwrap();
        assert_eq!(d.grounded.source, ActionSource::Fallback);
        // Conservative option at the flop is CHECK.
        assert_eq!(d.grounded.action, crate::game::Action::Check);
    }
    // Script exhausted: still grounded.
    let d = agent.act(&flop, &mut convo).unwrap();
    assert_eq!(d.grounded.source, ActionSource::Fallback);
    assert_eq!(agent.counter.fallbacks(), 4);
    assert_eq!(convo.exchanges.len(), 3);
}

#[test]
fn rule_policy_is_grounded() {
    let agent = Agent::new(Arc::new(SkillLibrary::bundled()), Arc::new(RulePolicy));
    let mut convo = Conversation::default();
    for h in TRACE {
        let st = trace_state(h);
        let d = agent.act(&st, &mut convo).unwrap();
        assert!(st.legal_actions().unwrap().contains(&d.grounded.action));
        assert_eq!(d.grounded.source, ActionSource::Policy);
    }
    assert!(convo.exchanges.is_empty());
}
