//! One handler per subcommand. Each returns a JSON value and, where a table
//! makes sense, its CSV form.

use parhiggs_core::higgs::{self, Orientation};
use parhiggs_core::reps::{self, ComponentCount};
use parhiggs_core::triples::{self, LargeSigmaVerdict, SigmaMax, SigmaWindow, SubtripleInvariants, TripleData};
use parhiggs_core::{flagalg, homcalc, rational, Error, Rational};
use serde_json::{json, Value};

use crate::instance::{Instance, Kind};
use crate::report::{self, exact_list, Report};
use crate::Failure;

pub struct Output {
    pub value: Value,
    pub csv: Option<String>,
}

impl From<Report> for Output {
    fn from(r: Report) -> Self {
        Output { value: r.into_value(), csv: None }
    }
}

type Outcome = Result<Output, Failure>;

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::FromV => "FromV",
        Orientation::FromW => "FromW",
        Orientation::Degenerate => "Degenerate",
    }
}

fn window(r: &mut Report, w: &SigmaWindow) {
    r.rational("sigma_m", &w.sigma_m);
    r.opt_rational("sigma_M", w.sigma_max.finite());
}

fn triple_summary(r: &Report, t: &TripleData) -> Value {
    let mut out = r.child();
    out.set("r1", t.r1()).set("r2", t.r2()).set("d1", t.e1.degree).set("d2", t.e2.degree);
    out.rational("pdeg1", &t.e1.pdeg()).rational("pdeg2", &t.e2.pdeg());
    out.into_value()
}

pub fn higgs_classify(inst: &Instance, mut r: Report) -> Outcome {
    let h = inst.higgs()?;
    let c = higgs::classify(&h)?;
    r.set("verdict", c.verdict.as_str())
        .set("p", h.p())
        .set("q", h.q())
        .rational("tau", &c.tau)
        .rational("tau_M", &c.bounds.tau_max)
        .rational("tau_L", &c.bounds.tau_l)
        .opt_rational("epsilon", c.bounds.epsilon.as_ref())
        .set("orientation", orientation_name(c.translated.orientation))
        .rational("sigma", &rational::int(h.surface.canonical_degree()))
        .set("in_window", c.in_window);
    window(&mut r, &c.window);
    r.set("triple", triple_summary(&r, &c.translated.triple));
    Ok(r.into())
}

pub fn higgs_invariants(inst: &Instance, mut r: Report) -> Outcome {
    let h = inst.higgs()?;
    let b = higgs::bounds(&h);
    let translated = higgs::minima_to_triple(&h);
    r.set("p", h.p())
        .set("q", h.q())
        .set("a", h.v.degree)
        .set("b", h.w.degree)
        .rational("pdeg_V", &h.v.pdeg())
        .rational("pdeg_W", &h.w.pdeg())
        .rational("tau", &higgs::toledo(&h))
        .rational("tau_M", &b.tau_max)
        .rational("tau_L", &b.tau_l)
        .opt_rational("epsilon", b.epsilon.as_ref())
        .opt_rational("epsilon_recipe", b.epsilon_recipe.as_ref())
        .set("orientation", orientation_name(translated.orientation));
    r.set("triple", triple_summary(&r, &translated.triple));
    Ok(r.into())
}

pub fn higgs_dimension(inst: &Instance, mut r: Report) -> Outcome {
    let h = inst.higgs()?;
    let n = h.p() + h.q();
    r.set("n", n)
        .rational("moduli_dimension", &higgs::moduli_dimension(&h))
        .rational("gl_dimension", &higgs::gl_dimension(n, h.surface.genus(), h.surface.s()));
    Ok(r.into())
}

/// A triple instance, or the minima triple of a Higgs instance.
fn any_triple(inst: &Instance) -> Result<TripleData, Failure> {
    match inst.kind {
        Kind::Higgs => Ok(higgs::minima_to_triple(&inst.higgs()?).triple),
        _ => inst.triple(),
    }
}

pub fn triple_window(inst: &Instance, mut r: Report) -> Outcome {
    let t = any_triple(inst)?;
    let w = triples::sigma_window(&t)?;
    r.set("triple", triple_summary(&r, &t));
    window(&mut r, &w);
    r.rational("moduli_dimension", &homcalc::triple_moduli_dimension(&t));
    if t.r1() == t.r2() {
        r.rational("sigma_one", &triples::sigma_one(&t));
    }
    Ok(r.into())
}

fn witness(w: &SubtripleInvariants) -> Value {
    json!({ "r1": w.r1p, "r2": w.r2p, "d1": w.d1p, "d2": w.d2p, "w1": w.w1, "w2": w.w2 })
}

pub fn triple_walls(inst: &Instance, mut r: Report, lo: Option<Rational>, hi: Option<Rational>, dependent: bool) -> Outcome {
    let t = any_triple(inst)?;
    let w = triples::sigma_window(&t)?;
    let lo = lo.unwrap_or(w.sigma_m);
    let hi = match hi {
        Some(x) => SigmaMax::Finite(x),
        None => w.sigma_max,
    };
    let found = triples::enumerate_walls(&t, &lo, &hi, dependent)?;
    let rows = found.walls.iter().map(|w| vec![w.sigma.to_string(), w.witnesses.len().to_string()]).collect::<Vec<_>>();
    let walls: Vec<Value> = found
        .walls
        .iter()
        .map(|w| {
            let mut entry = r.child();
            entry.rational("sigma", &w.sigma).set("witnesses", w.witnesses.iter().map(witness).collect::<Vec<_>>());
            entry.into_value()
        })
        .collect();
    r.rational("lo", &lo).opt_rational("hi", hi.finite()).set("count", walls.len()).set("walls", walls);
    if dependent {
        r.set("coincidences", found.coincidences.iter().map(witness).collect::<Vec<_>>());
    }
    Ok(Output { value: r.into_value(), csv: Some(report::csv(&["sigma", "num_witnesses"], rows)) })
}

pub fn triple_sigma_l(inst: &Instance, mut r: Report) -> Outcome {
    let t = any_triple(inst)?;
    let w = triples::sigma_window(&t)?;
    r.rational("epsilon", &triples::epsilon(&t)?)
        .rational("epsilon_recipe", &triples::epsilon_recipe(&t)?)
        .rational("sigma_L", &triples::sigma_l(&t)?);
    window(&mut r, &w);
    Ok(r.into())
}

pub fn triple_nonempty(inst: &Instance, mut r: Report) -> Outcome {
    let t = any_triple(inst)?;
    let verdict = match triples::large_sigma_nonempty(&t)? {
        LargeSigmaVerdict::NonEmptyIrreducible => "NonEmptyIrreducible",
        LargeSigmaVerdict::Empty => "Empty",
    };
    r.set("verdict", verdict)
        .set("total_r_p", triples::total_r_p(&t)?)
        .set("degree_gap", t.e1.degree + (t.r1() * t.s()) as i64 - t.e2.degree)
        .rational("sigma_one", &triples::sigma_one(&t))
        .rational("sigma_two_bound", &triples::sigma_two_bound(&t)?);
    Ok(r.into())
}

fn method(result: Result<usize, Error>) -> Result<Option<usize>, Failure> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(Error::TooLarge { .. } | Error::DimensionMismatch { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn flag_rp(inst: &Instance, mut r: Report, point: Option<&str>) -> Outcome {
    let (label, source, target) = inst.flags(point)?;
    let greedy = flagalg::r_p(&source, &target)?;
    let matching = method(flagalg::r_p_bruteforce(&source, &target))?;
    let step = method(flagalg::r_p_stepfunction(&source, &target))?;
    let agree = [matching, step].iter().flatten().all(|&v| v == greedy);
    let m = flagalg::i_sequence(&source, &target, false);
    r.set("point", label)
        .set("r_p", greedy)
        .set("methods", json!({ "greedy": greedy, "matching": matching, "step_function": step }))
        .set("agree", agree)
        .set("i_seq", m.i_seq)
        .set("generic_rank", m.rank)
        .set("min_coker", flagalg::min_coker(&source, &target));
    if !agree {
        return Err(Failure::internal(format!("r_p methods disagree: {}", r.into_value())));
    }
    Ok(r.into())
}

pub fn flag_generic_map(inst: &Instance, mut r: Report, point: Option<&str>) -> Outcome {
    let (label, source, target) = inst.flags(point)?;
    let p = flagalg::generic_map_pattern(&source, &target);
    let grid: Vec<String> = (1..=p.rows)
        .map(|row| {
            (1..=p.cols)
                .map(|col| match (p.marks.contains(&(row, col)), p.allowed.contains(&(row, col))) {
                    (true, _) => 'X',
                    (false, true) => '*',
                    (false, false) => '.',
                })
                .collect()
        })
        .collect();
    r.set("point", label)
        .set("rows", p.rows)
        .set("cols", p.cols)
        .set("allowed", p.allowed.len())
        .set("marks", p.marks.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>())
        .set("image", p.image_indices())
        .set("grid", grid);
    Ok(r.into())
}

pub fn flag_subset(inst: &Instance, mut r: Report, point: Option<&str>) -> Outcome {
    let (label, source, target) = inst.flags(point)?;
    let s = flagalg::destabilizing_weight_subset(&source, &target)?;
    let pick = |idx: &[usize]| exact_list(idx.iter().map(|&i| &target[i - 1]));
    let rest = s.complement(target.len());
    r.set("point", label)
        .set("r_p", s.extra.len())
        .set("image", s.image.clone())
        .set("extra", s.extra.clone())
        .set("complement", rest.clone())
        .set("image_weights", pick(&s.image))
        .set("extra_weights", pick(&s.extra))
        .set("complement_weights", pick(&rest))
        .rational("epsilon_type", &flagalg::epsilon_type_point(&source, &target)?)
        .rational("epsilon_recipe", &flagalg::epsilon_recipe_point(&source, &target));
    Ok(r.into())
}

fn components(mut r: Report, count: &ComponentCount, p: usize, q: usize) -> Output {
    r.set("p", p)
        .set("q", q)
        .set("total_degree", count.total_degree)
        .set("admissible", count.admissible.clone())
        .set("boundary", count.boundary.clone())
        .set("count", count.count());
    r.into()
}

pub fn reps_components(inst: &Instance, r: Report) -> Outcome {
    let (v, w) = inst.weight_systems()?;
    let count = reps::component_count(v.rank, w.rank, &v.weights, &w.weights, &inst.surface)?;
    Ok(components(r, &count, v.rank, w.rank))
}

pub fn orbifold_components(inst: &Instance, mut r: Report) -> Outcome {
    let data = inst.orbifold()?;
    let count = reps::orbifold_component_count(&data, "V", "W")?;
    let systems = reps::orbifold_to_weights(&data);
    let weights: serde_json::Map<String, Value> = systems
        .iter()
        .map(|(name, system)| {
            let per_point = system.iter().map(|(p, w)| (p.clone(), exact_list(w.as_slice()))).collect();
            (name.clone(), Value::Object(per_point))
        })
        .collect();
    r.set("weights", Value::Object(weights));
    let rank = |name: &str| systems.get(name).and_then(|s| s.values().next()).map_or(0, |w| w.len());
    Ok(components(r, &count, rank("V"), rank("W")))
}

pub fn check_generic(inst: &Instance, mut r: Report, sigma: Rational) -> Outcome {
    let t = any_triple(inst)?;
    let generic = triples::is_generic_at(&t, &sigma);
    let around = triples::enumerate_walls(
        &t,
        &(&sigma - rational::int(1)),
        &SigmaMax::Finite(&sigma + rational::int(1)),
        true,
    )?;
    let here: Vec<Value> =
        around.walls.iter().filter(|w| w.sigma == sigma).flat_map(|w| w.witnesses.iter().map(witness)).collect();
    r.rational("sigma", &sigma)
        .set("generic", generic)
        .set("wall_witnesses", here)
        .set("coincidences", around.coincidences.iter().map(witness).collect::<Vec<_>>());
    Ok(r.into())
}
