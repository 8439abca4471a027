use col_core::games::won_by;
use col_core::sim::{
    check_trace, run_interaction, verify_theorem_6_1, Direction, DEFAULT_MAX_STEPS,
};
use col_core::strategy::{exhaustive_adversaries, RandomAdversary, ScriptedAdversary};
use col_core::suite;
use col_core::{EnumBounds, GameRef, LabMove, Move, Player, Run};

fn bases() -> Vec<GameRef> {
    suite::static_suite()
        .into_iter()
        .map(suite::as_ref)
        .collect()
}

/// Counts adversary behaviors by walking positions directly: at each
/// position the adversary passes, or plays any legal move and sees the
/// machine's answer.
fn recount(
    direction: Direction,
    compound: &GameRef,
    script: Vec<Move>,
    budget: usize,
    bounds: &EnumBounds,
) -> usize {
    let mut machine = direction.machine(compound.clone());
    let mut pos = Run::new();
    for mv in &script {
        let lm = LabMove::bot(mv.clone());
        pos.push(lm.clone());
        for answer in machine.react(&pos, Some(&lm)).moves {
            pos.push(LabMove::top(answer));
        }
    }
    if script.len() == budget {
        return 1;
    }
    1 + compound
        .legal_moves(&pos, Player::Bot, bounds)
        .into_iter()
        .map(|m| {
            let mut longer = script.clone();
            longer.push(m);
            recount(direction, compound, longer, budget, bounds)
        })
        .sum::<usize>()
}

#[test]
fn exhaustive_enumeration_count_matches_recount() {
    let bounds = EnumBounds::new(2, 5);
    for base in bases() {
        for d in Direction::BOTH {
            let compound = d.compound(base.clone());
            let factory = || d.machine(compound.clone());
            let scripts: Vec<Vec<Move>> =
                exhaustive_adversaries(compound.clone(), bounds, 2, &factory)
                    .map(|a| a.script().to_vec())
                    .collect();
            assert_eq!(
                scripts.len(),
                recount(d, &compound, Vec::new(), 2, &bounds),
                "{}",
                compound.name()
            );
            let mut unique = scripts.clone();
            unique.sort();
            unique.dedup();
            assert_eq!(unique.len(), scripts.len());
        }
    }
}

#[test]
fn budget_two_suite_has_no_failures() {
    for base in bases() {
        for d in Direction::BOTH {
            let r = verify_theorem_6_1(&base, d, EnumBounds::new(2, 5), 2).unwrap();
            assert!(r.passed(), "{} {d}: {:?}", base.name(), r.failures.first());
        }
    }
}

fn random_play(direction: Direction, base: &GameRef, seed: u64) -> col_core::sim::Trace {
    let compound = direction.compound(base.clone());
    let mut machine = direction.machine(compound.clone());
    let mut adv = RandomAdversary::new(compound.clone(), seed, EnumBounds::new(2, 5), 4);
    run_interaction(machine.as_mut(), &mut adv, &compound, DEFAULT_MAX_STEPS).unwrap()
}

#[test]
fn seeded_adversaries_all_lose() {
    for d in Direction::BOTH {
        let base = suite::as_ref(suite::commute());
        let compound = d.compound(base.clone());
        for seed in 0..1000 {
            let t = random_play(d, &base, seed);
            assert_eq!(t.outcome, Player::Top, "{d} seed {seed}: {}", t.run);
            assert!(won_by(&*compound, &t.run, Player::Top));
            assert!(check_trace(d, &compound, &t).is_empty(), "{d} seed {seed}");
        }
    }
}

#[test]
fn same_seed_same_trace() {
    let base = suite::as_ref(suite::reply());
    for d in Direction::BOTH {
        for seed in [0, 42, 9001] {
            assert_eq!(random_play(d, &base, seed), random_play(d, &base, seed));
        }
    }
}

#[test]
fn scripted_replay_reproduces_a_trace() {
    let base = suite::as_ref(suite::commute());
    for d in Direction::BOTH {
        let original = random_play(d, &base, 5);
        let script: Vec<Move> = original
            .run
            .iter()
            .filter(|lm| lm.label == Player::Bot)
            .map(|lm| lm.mv.clone())
            .collect();
        let compound = d.compound(base.clone());
        let mut machine = d.machine(compound.clone());
        let replay = run_interaction(
            machine.as_mut(),
            &mut ScriptedAdversary::new(script),
            &compound,
            DEFAULT_MAX_STEPS,
        )
        .unwrap();
        assert_eq!(replay, original);
    }
}

#[test]
fn illegal_script_makes_the_adversary_offend() {
    let base = suite::as_ref(suite::choice());
    for d in Direction::BOTH {
        let compound = d.compound(base.clone());
        let mut machine = d.machine(compound.clone());
        let mut adv = ScriptedAdversary::new(vec![Move::new("2.:"), Move::new("1.zzz")]);
        let t = run_interaction(machine.as_mut(), &mut adv, &compound, DEFAULT_MAX_STEPS).unwrap();
        let o = t.offender.expect("illegal move recorded");
        assert_eq!(o.culprit, Player::Bot);
        assert_eq!(t.outcome, Player::Top);
        assert!(check_trace(d, &compound, &t).is_empty());
    }
}

#[test]
fn every_step_has_an_annotation() {
    let base = suite::as_ref(suite::commute());
    let t = random_play(Direction::LooseToTight, &base, 3);
    let bot_moves = t.run.iter().filter(|lm| lm.label == Player::Bot).count();
    assert_eq!(t.steps.len(), bot_moves);
    assert!(t.steps.iter().all(|s| s.fmap.is_some() && s.case.is_some()));
    let mut machine = Direction::TightToLoose.machine(Direction::TightToLoose.compound(base));
    assert_eq!(machine.player(), Player::Top);
    assert!(machine.react(&Run::new(), None).moves.is_empty());
}
