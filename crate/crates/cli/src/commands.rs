use std::fs;
use std::path::Path;

use sumset_core::algebra::{doubling_constant, exceptions, ls_at_with, sumset, LsRegistry};
use sumset_core::analysis::{
    bound_report, classify_critical, corollary5_audit, exception_structure, kneser_check, kneser_stabilizer,
    lemma3_audit, theorem_f_check, Regime,
};
use sumset_core::constructions::{
    builtin_example, lemma15_classify, pair_coset_reps, Expected, Lemma15Class, QuotientParams, Recipe,
};
use sumset_core::group::{cyclic_subgroup, doubling_subgroups, is_subgroup, parse_group, quotient};
use sumset_core::literal::{parse_binding, parse_elem, parse_subset, SubgroupEnv};
use sumset_core::search::{run_survey, SearchConfig};
use sumset_core::{Error, GSubset, Group, Result, Subgroup, Triple, TripleRecord};

use crate::report::*;
use crate::{Command, ConstantsArgs, ConstructArgs, PairArgs, SurveyArgs, TripleArgs, EXIT_OK, EXIT_VIOLATION};

pub(crate) fn dispatch(cmd: &Command) -> Result<(Report, i32)> {
    match cmd {
        Command::Reproduce { name } => reproduce(name),
        Command::Construct(args) => construct(args),
        Command::Classify(args) => classify(args),
        Command::Bounds(args) => bounds(args),
        Command::Survey(args) => survey(args),
        Command::Kneser(args) => kneser(args),
        Command::Constants(args) => constants(args),
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn env_for(g: &Group, binds: &[String]) -> Result<SubgroupEnv> {
    let mut env = SubgroupEnv::new();
    for b in binds {
        let (name, h) = parse_binding(g, b, &env)?;
        env.insert(name, h);
    }
    Ok(env)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("missing --{flag} (or use --input)")))
}

fn load_triple(args: &TripleArgs) -> Result<Triple> {
    if let Some(path) = &args.input {
        return read_json::<TripleRecord>(path)?.resolve();
    }
    let g = parse_group(required(&args.group, "group")?)?;
    let env = env_for(&g, &args.bind)?;
    let set = |v: &Option<String>, flag| parse_subset(&g, required(v, flag)?, &env);
    Triple::new(set(&args.a, "a")?, set(&args.b, "b")?, set(&args.s, "s")?)
}

/// Split at commas outside parentheses and angle brackets.
fn split_items(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' | '<' => depth += 1,
            ')' | '>' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn pair_record(pair: Option<(sumset_core::Elem, sumset_core::Elem)>) -> Option<[usize; 2]> {
    pair.map(|(x, y)| [x.index(), y.index()])
}

fn reproduce(name: &str) -> Result<(Report, i32)> {
    let ex = builtin_example(name)?;
    let mut r = ReproduceReport {
        name: ex.name.to_string(),
        group: ex.group.label().to_string(),
        s: ex.s.to_indices(),
        a: None,
        b: None,
        exceptions: None,
        expected_exceptions: None,
        bound: None,
        exception_pair: None,
        witness: None,
        symmetric: None,
        matches: false,
    };
    match (&ex.pair, &ex.expected) {
        (Some((a, b)), Expected::Exceptions(expected)) => {
            let t = Triple::new(a.clone(), b.clone(), ex.s.clone())?;
            let exc = exceptions(a, b, &ex.s)?;
            let bound = bound_report(&t)?;
            let witness = classify_critical(&t)?;
            r.matches = exc == *expected && bound.tight && !bound.violation;
            r.a = Some(a.to_indices());
            r.b = Some(b.to_indices());
            r.exceptions = Some(exc.to_indices());
            r.expected_exceptions = Some(expected.to_indices());
            r.bound = Some(bound);
            r.exception_pair = pair_record(exception_structure(&t)?);
            r.witness = Some(witness.record());
        }
        (None, Expected::SymmetricNonCoset) => {
            let class = lemma15_classify(&ex.s)?;
            let subgroup = is_subgroup(&ex.s);
            let (subgroup_set, reps) = match &class {
                Lemma15Class::Coset { subgroup, .. } => (Some(subgroup.carrier().to_indices()), None),
                Lemma15Class::InsideK => (None, None),
                Lemma15Class::CosetUnion { subgroup, reps } => (
                    Some(subgroup.carrier().to_indices()),
                    Some(reps.iter().map(|x| x.index()).collect()),
                ),
            };
            r.matches = matches!(class, Lemma15Class::CosetUnion { .. }) && !subgroup;
            r.symmetric = Some(SymmetricSetReport {
                class: class.tag().to_string(),
                is_subgroup: subgroup,
                subgroup: subgroup_set,
                reps,
            });
        }
        _ => return Err(Error::InvariantViolation(format!("example {name} is malformed"))),
    }
    let code = status(r.matches);
    Ok((Report::Reproduce(r), code))
}

fn construct(args: &ConstructArgs) -> Result<(Report, i32)> {
    let (g, recipe) = match &args.input {
        Some(path) => {
            let recipe: Recipe = read_json(path)?;
            (parse_group(&recipe.group)?, recipe)
        }
        None => {
            let g = parse_group(required(&args.group, "group")?)?;
            let env = SubgroupEnv::new();
            let sigma_set = match &args.sigma {
                Some(text) => parse_subset(&g, text, &env)?,
                None => GSubset::singleton(&g, g.zero()),
            };
            let sigma = Subgroup::from_carrier(sigma_set)?;
            let map = quotient(&g, &sigma)?;
            let a = parse_elem(&g, &args.a)?;
            let b = parse_elem(&g, required(&args.b, "b")?)?;
            let reps = match &args.reps {
                Some(text) => split_items(text)
                    .into_iter()
                    .map(|t| parse_elem(&g, t).map(|x| x.index()))
                    .collect::<Result<Vec<_>>>()?,
                None => {
                    let q = map.target();
                    let delta = q.sub(map.project(b), map.project(a));
                    let h = cyclic_subgroup(q, q.double(delta));
                    pair_coset_reps(q, &h)?
                        .into_iter()
                        .map(|x| map.section(x).index())
                        .collect()
                }
            };
            let recipe = Recipe {
                group: g.label().to_string(),
                sigma: sigma.carrier().to_indices(),
                s: parse_elem(&g, &args.shift)?.index(),
                b_s: parse_elem(&g, &args.b_s)?.index(),
                quotient: QuotientParams {
                    a: a.index(),
                    b: b.index(),
                    k: args.k,
                    l: args.l.unwrap_or(args.k),
                    reps,
                },
                extra_classes: Vec::new(),
            };
            (g, recipe)
        }
    };
    let t = recipe.build_in(&g)?;
    let bound = bound_report(&t)?;
    let exc = exceptions(&t.a, &t.b, &t.s)?;
    let code = status(!bound.violation);
    Ok((
        Report::Construct(ConstructReport {
            recipe,
            triple: t.record(),
            exceptions: exc.to_indices(),
            bound,
        }),
        code,
    ))
}

fn classify(args: &TripleArgs) -> Result<(Report, i32)> {
    let t = load_triple(args)?;
    let (outcome, message, witness) = match classify_critical(&t) {
        Ok(w) => (ClassifyOutcome::Critical, None, Some(w.record())),
        Err(Error::NotCritical(m)) => (ClassifyOutcome::NotCritical, Some(m), None),
        Err(Error::InvariantViolation(m)) => (ClassifyOutcome::InvariantViolation, Some(m), None),
        Err(e) => return Err(e),
    };
    let code = status(outcome != ClassifyOutcome::InvariantViolation);
    Ok((
        Report::Classify(ClassifyReport {
            triple: t.record(),
            outcome,
            message,
            witness,
        }),
        code,
    ))
}

fn bounds(args: &TripleArgs) -> Result<(Report, i32)> {
    let t = load_triple(args)?;
    let report = bound_report(&t)?;
    let exceptions_saturated = match report.regime {
        Regime::AtThreshold => Some(lemma3_audit(&t)?),
        _ => None,
    };
    let exceptions_in_double = corollary5_audit(&t)?;
    let prime_order_bound = match theorem_f_check(&t) {
        Ok(ok) => Some(ok),
        Err(Error::InvalidArgument(_)) => None,
        Err(e) => return Err(e),
    };
    let ok = !report.violation
        && exceptions_saturated != Some(false)
        && exceptions_in_double != Some(false)
        && prime_order_bound != Some(false);
    Ok((
        Report::Bounds(BoundsReport {
            triple: t.record(),
            exceptions: exceptions(&t.a, &t.b, &t.s)?.to_indices(),
            exception_pair: pair_record(exception_structure(&t)?),
            report,
            exceptions_saturated,
            exceptions_in_double,
            prime_order_bound,
        }),
        status(ok),
    ))
}

fn survey(args: &SurveyArgs) -> Result<(Report, i32)> {
    let fixed_s = match &args.s {
        Some(text) => {
            let [group] = args.groups.as_slice() else {
                return Err(Error::InvalidArgument("--s needs exactly one --group".into()));
            };
            let g = parse_group(group)?;
            Some(parse_subset(&g, text, &SubgroupEnv::new())?.to_indices())
        }
        None => None,
    };
    let config = SearchConfig {
        groups: args.groups.clone(),
        max_order: args.max_order,
        s_size: args.s_size,
        fixed_s,
        mode: args.mode.clone(),
        samples: args.samples,
        seed: args.seed,
        constraint: if args.at_threshold {
            sumset_core::search::Constraint::AtThreshold
        } else {
            args.constraint.into()
        },
        time_budget_ms: args.time_budget_ms,
        max_fingerprints: args.max_fingerprints,
        triple_cap: args.triple_cap,
    };
    let report = match args.jobs {
        Some(0) => return Err(Error::InvalidArgument("--jobs must be at least 1".into())),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ResourceLimit(format!("cannot start {jobs} workers: {e}")))?
            .install(|| run_survey(&config))?,
        None => run_survey(&config)?,
    };
    let code = status(report.is_clean());
    Ok((Report::Survey(report), code))
}

fn kneser(args: &PairArgs) -> Result<(Report, i32)> {
    let g = parse_group(&args.group)?;
    let env = env_for(&g, &args.bind)?;
    let a = parse_subset(&g, &args.a, &env)?;
    let b = parse_subset(&g, &args.b, &env)?;
    let holds = kneser_check(&a, &b)?;
    let ab = sumset(&a, &b)?;
    let stabilizer = kneser_stabilizer(&ab)?;
    Ok((
        Report::Kneser(KneserReport {
            group: g.label().to_string(),
            a: a.to_indices(),
            b: b.to_indices(),
            sumset: ab.to_indices(),
            stabilizer: stabilizer.carrier().to_indices(),
            holds,
        }),
        status(holds),
    ))
}

fn constants(args: &ConstantsArgs) -> Result<(Report, i32)> {
    let g = parse_group(&args.group)?;
    let registry = LsRegistry::default();
    let method = registry.get(&args.method).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown method `{}`; expected one of {}",
            args.method,
            registry.names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let (doubles, kernel) = doubling_subgroups(&g);
    let mut r = ConstantsReport {
        group: g.label().to_string(),
        order: g.order(),
        l_g: doubling_constant(&g),
        doubles: doubles.carrier().to_indices(),
        kernel: kernel.carrier().to_indices(),
        method: method.name().to_string(),
        s: None,
        l_s: None,
        ls_table: None,
    };
    if let Some(text) = &args.s {
        let s = parse_subset(&g, text, &env_for(&g, &args.bind)?)?;
        if s.is_empty() {
            return Err(Error::InvalidArgument("S must be non-empty".into()));
        }
        let table: Vec<usize> = g.elements().map(|z| ls_at_with(method.as_ref(), &s, z)).collect();
        r.l_s = table.iter().copied().max();
        r.s = Some(s.to_indices());
        r.ls_table = Some(table);
    }
    Ok((Report::Constants(r), EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn items_split_outside_brackets() {
        assert_eq!(split_items("(1,0), (2,1);3"), vec!["(1,0)", "(2,1)", "3"]);
        assert_eq!(split_items(" 7 "), vec!["7"]);
        assert!(split_items("").is_empty());
    }
}
