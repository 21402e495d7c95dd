//! One handler per subcommand: decode the input document, call into the
//! library, encode the result.

use serde_json::{json, Map, Value};
use shimura_core::json as cj;
use shimura_core::scalar::rat_to_string;
use shimura_core::{abvar, finsymp, galcoh, hodge, pel, siegel, trace, zeta};
use shimura_core::{Error, Int, Result};

fn component_str(c: siegel::HalfSpace) -> &'static str {
    match c {
        siegel::HalfSpace::Upper => "upper",
        siegel::HalfSpace::Lower => "lower",
    }
}

fn parse_point(v: &Value, path: &str) -> Result<siegel::SiegelPoint> {
    siegel::SiegelPoint::new(cj::gmat_from_json(v, path)?)
}

fn parse_similitude(v: &Value, path: &str) -> Result<siegel::SymplecticSimilitude> {
    siegel::SymplecticSimilitude::new(cj::qmat_from_json(v, path)?)
}

pub fn siegel_act(input: &Value) -> Result<Value> {
    let g = parse_similitude(cj::field(input, "g", "input")?, "input.g")?;
    let y = parse_point(cj::field(input, "y", "input")?, "input.y")?;
    let moved = siegel::mobius_act(&g, &y)?;
    Ok(json!({
        "y": cj::gmat_to_json(moved.matrix()),
        "component": component_str(moved.component()),
        "multiplier": rat_to_string(g.multiplier()),
    }))
}

pub fn siegel_cayley(input: &Value) -> Result<Value> {
    if let Some(yv) = input.get("y") {
        let y = siegel::SiegelPoint::upper(cj::gmat_from_json(yv, "input.y")?)?;
        let a = siegel::cayley(&y)?;
        Ok(json!({ "a": cj::gmat_to_json(a.matrix()) }))
    } else if let Some(av) = input.get("a") {
        let a = siegel::BoundedPoint::new(cj::gmat_from_json(av, "input.a")?)?;
        let y = siegel::cayley_inv(&a)?;
        Ok(json!({ "y": cj::gmat_to_json(y.matrix()) }))
    } else {
        Err(Error::parse("input: need field \"y\" (forward) or \"a\" (inverse)"))
    }
}

pub fn siegel_metric(input: &Value, variant: &str) -> Result<Value> {
    let variant = match variant {
        "paper" => siegel::MetricVariant::Paper,
        "classical" => siegel::MetricVariant::Classical,
        other => return Err(Error::parse(format!("unknown metric variant {other:?}"))),
    };
    let y = siegel::SiegelPoint::upper(cj::gmat_from_json(
        cj::field(input, "y", "input")?,
        "input.y",
    )?)?;
    let dy = cj::gmat_from_json(cj::field(input, "dy", "input")?, "input.dy")?;
    let exact = siegel::metric_form_exact(&y, &dy, variant)?;
    let float = siegel::metric_form(&y, &dy, variant)?;
    Ok(json!({
        "value": float,
        "value_exact": exact.to_canonical_string(),
    }))
}

pub fn hodge_jmatrix(input: &Value) -> Result<Value> {
    let y = siegel::SiegelPoint::upper(cj::gmat_from_json(
        cj::field(input, "y", "input")?,
        "input.y",
    )?)?;
    let j = hodge::jmatrix_from_point(&y)?;
    Ok(json!({
        "j": cj::qmat_to_json(j.matrix()),
        "positivity_gram": cj::qmat_to_json(&j.positivity_gram()),
    }))
}

pub fn hodge_lagrangian(input: &Value) -> Result<Value> {
    if let Some(yv) = input.get("y") {
        let y = siegel::SiegelPoint::upper(cj::gmat_from_json(yv, "input.y")?)?;
        let f = hodge::lagrangian_from_point(&y)?;
        Ok(json!({
            "frame": cj::gmat_to_json(f.matrix()),
            "positivity": cj::gmat_to_json(&f.positivity_matrix()),
        }))
    } else if let Some(fv) = input.get("frame") {
        let f = hodge::LagrangianFrame::new(cj::gmat_from_json(fv, "input.frame")?)?;
        let y = hodge::point_from_lagrangian(&f)?;
        Ok(json!({ "y": cj::gmat_to_json(y.matrix()) }))
    } else {
        Err(Error::parse(
            "input: need field \"y\" (forward) or \"frame\" (inverse)",
        ))
    }
}

pub fn hodge_check_datum(group: &str, d: usize, p: usize, q: usize) -> Result<Value> {
    let spec = match group {
        "gsp" => hodge::ShimuraDatumSpec::gsp(d)?,
        "gu" => hodge::ShimuraDatumSpec::gu(p, q)?,
        other => return Err(Error::parse(format!("unknown group tag {other:?}"))),
    };
    let report = hodge::check_shimura_conditions(&spec)?;
    Ok(json!({
        "weight_central": report.weight_central,
        "hodge_types": report.hodge_types,
        "hodge_multiplicities": [
            report.hodge_multiplicities.0,
            report.hodge_multiplicities.1,
            report.hodge_multiplicities.2,
        ],
        "cartan": report.cartan,
        "all_pass": report.all_pass(),
    }))
}

fn torus_to_json(t: &abvar::PolarizedTorusData) -> Value {
    json!({
        "basis": cj::qmat_to_json(t.basis()),
        "j": cj::qmat_to_json(t.structure().matrix()),
        "scale": rat_to_string(t.scale()),
        "pairing": cj::zmat_to_json(t.pairing()),
        "principal": t.is_principal(),
    })
}

fn torus_from_json(v: &Value, path: &str) -> Result<abvar::PolarizedTorusData> {
    let basis = cj::qmat_from_json(cj::field(v, "basis", path)?, &format!("{path}.basis"))?;
    let j = hodge::ComplexStructure::new(cj::qmat_from_json(
        cj::field(v, "j", path)?,
        &format!("{path}.j"),
    )?)?;
    let scale = cj::rat_from_json(cj::field(v, "scale", path)?, &format!("{path}.scale"))?;
    let torus = abvar::PolarizedTorusData::new(basis, j, scale)?;
    if let Some(expected) = v.get("pairing") {
        let given = cj::zmat_from_json(expected, &format!("{path}.pairing"))?;
        if &given != torus.pairing() {
            return Err(Error::domain(
                "provided pairing does not match the basis and scale",
            ));
        }
    }
    Ok(torus)
}

fn level_to_json(s: &abvar::LevelStructure) -> Value {
    json!({
        "n": s.n(),
        "eta": cj::imat_to_json(s.eta()),
        "zeta_exp": s.zeta_exp(),
    })
}

fn level_from_json(v: &Value, path: &str) -> Result<abvar::LevelStructure> {
    let n = cj::i64_from_json(cj::field(v, "n", path)?, &format!("{path}.n"))?;
    let eta = cj::imat_from_json(cj::field(v, "eta", path)?, &format!("{path}.eta"))?;
    let u = cj::i64_from_json(cj::field(v, "zeta_exp", path)?, &format!("{path}.zeta_exp"))?;
    abvar::LevelStructure::new(n, eta, u)
}

pub fn abvar_from_point(input: &Value) -> Result<Value> {
    let y = siegel::SiegelPoint::upper(cj::gmat_from_json(
        cj::field(input, "y", "input")?,
        "input.y",
    )?)?;
    let n = cj::i64_from_json(cj::field(input, "n", "input")?, "input.n")?;
    let (t, s) = abvar::torus_from_point(&y, n)?;
    Ok(json!({
        "torus": torus_to_json(&t),
        "level": level_to_json(&s),
    }))
}

pub fn abvar_weil(input: &Value) -> Result<Value> {
    let t = torus_from_json(cj::field(input, "torus", "input")?, "input.torus")?;
    let n = cj::i64_from_json(cj::field(input, "n", "input")?, "input.n")?;
    let a = int_vec(cj::field(input, "a", "input")?, "input.a")?;
    let b = int_vec(cj::field(input, "b", "input")?, "input.b")?;
    let k = abvar::weil_pairing_exp(&t, n, &a, &b)?;
    Ok(json!({ "exponent": k }))
}

fn int_vec(v: &Value, path: &str) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| Error::parse(format!("{path}: expected an array")))?
        .iter()
        .enumerate()
        .map(|(i, x)| cj::i64_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn abvar_check_level(input: &Value) -> Result<Value> {
    let t = torus_from_json(cj::field(input, "torus", "input")?, "input.torus")?;
    let s = level_from_json(cj::field(input, "level", "input")?, "input.level")?;
    Ok(json!({ "valid": abvar::is_level_structure(&t, &s)? }))
}

pub fn abvar_hecke(input: &Value) -> Result<Value> {
    let t = torus_from_json(cj::field(input, "torus", "input")?, "input.torus")?;
    let s = level_from_json(cj::field(input, "level", "input")?, "input.level")?;
    let g = abvar::IntegralHeckeElement::new(
        s.n(),
        cj::zmat_from_json(cj::field(input, "g", "input")?, "input.g")?,
    )?;
    let (t2, s2) = abvar::hecke_tg(&t, &s, &g)?;
    let index = abvar::lattice_index(&t, &t2)?;
    Ok(json!({
        "torus": torus_to_json(&t2),
        "level": level_to_json(&s2),
        "index": rat_to_string(&index),
    }))
}

pub fn abvar_reduce(input: &Value) -> Result<Value> {
    let tau = if let Some(tv) = input.get("tau") {
        let z = cj::gauss_from_json(tv, "input.tau")?;
        siegel::SiegelPoint::upper(shimura_core::GMat::from_fn(1, 1, |_, _| z.clone()))?
    } else {
        siegel::SiegelPoint::upper(cj::gmat_from_json(
            cj::field(input, "y", "input")?,
            "input.y",
        )?)?
    };
    let (reduced, gamma) = abvar::reduce_sl2z(&tau)?;
    Ok(json!({
        "tau": reduced.matrix().at(0, 0).to_canonical_string(),
        "gamma": cj::qmat_to_json(gamma.matrix()),
    }))
}

pub fn finsymp_order(d: usize, n: i64) -> Result<Value> {
    Ok(json!({
        "sp_order": finsymp::sp_order(d, n)?.to_string(),
        "gsp_order": finsymp::gsp_order(d, n)?.to_string(),
    }))
}

pub fn finsymp_lift(input: &Value, budget: u64) -> Result<Value> {
    let n = cj::i64_from_json(cj::field(input, "n", "input")?, "input.n")?;
    let mat = cj::imat_from_json(cj::field(input, "matrix", "input")?, "input.matrix")?;
    let g = finsymp::validate(&mat, n)?;
    let lift = finsymp::lift_to_integral(&g, budget)?;
    Ok(json!({ "lift": cj::zmat_to_json(&lift) }))
}

pub fn finsymp_pi0(d: usize, n: i64, budget: u64) -> Result<Value> {
    let all = finsymp::enumerate_gsp(d, n, budget)?;
    let mut fibers: std::collections::BTreeMap<i64, u64> = std::collections::BTreeMap::new();
    for g in &all {
        *fibers.entry(finsymp::component_class(g)).or_default() += 1;
    }
    let classes: Vec<Value> = fibers
        .iter()
        .map(|(c, count)| json!({ "multiplier": c, "fiber_size": count }))
        .collect();
    Ok(json!({
        "component_count": fibers.len(),
        "classes": classes,
        "total": all.len(),
    }))
}

fn coset_list_to_json(list: &finsymp::CosetList) -> Value {
    json!({
        "divisors": list.label().divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "multiplier": list.label().multiplier.to_string(),
        "degree": list.degree(),
        "reps": list.reps().iter().map(cj::zmat_to_json).collect::<Vec<_>>(),
    })
}

pub fn finsymp_cosets(d: usize, p: i64, exponents: &str) -> Result<Value> {
    let exps = parse_exponents(exponents)?;
    let list = finsymp::double_coset_decompose(d, p, &exps)?;
    Ok(coset_list_to_json(&list))
}

fn parse_exponents(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(format!("bad exponent {t:?}")))
        })
        .collect()
}

pub fn finsymp_convolve(input: &Value) -> Result<Value> {
    let d = cj::usize_from_json(cj::field(input, "d", "input")?, "input.d")?;
    let p = cj::i64_from_json(cj::field(input, "p", "input")?, "input.p")?;
    let parse_sum = |v: &Value, path: &str| -> Result<finsymp::HeckeSum> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::parse(format!("{path}: expected an array")))?;
        let mut sum = Vec::new();
        for (i, term) in arr.iter().enumerate() {
            let tpath = format!("{path}[{i}]");
            let exps_v = cj::field(term, "exponents", &tpath)?;
            let exps: Vec<u32> = exps_v
                .as_array()
                .ok_or_else(|| Error::parse(format!("{tpath}.exponents: expected array")))?
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    cj::i64_from_json(x, &format!("{tpath}.exponents[{k}]")).and_then(|v| {
                        u32::try_from(v)
                            .map_err(|_| Error::parse("exponents must be nonnegative"))
                    })
                })
                .collect::<Result<_>>()?;
            let coeff = match term.get("coeff") {
                Some(c) => cj::int_from_json(c, &format!("{tpath}.coeff"))?,
                None => Int::from(1),
            };
            sum.push((finsymp::double_coset_decompose(d, p, &exps)?, coeff));
        }
        Ok(sum)
    };
    let f1 = parse_sum(cj::field(input, "f1", "input")?, "input.f1")?;
    let f2 = parse_sum(cj::field(input, "f2", "input")?, "input.f2")?;
    let product = finsymp::hecke_convolve(&f1, &f2)?;
    let terms: Vec<Value> = product
        .iter()
        .map(|(list, coeff)| {
            let mut obj = coset_list_to_json(list);
            obj.as_object_mut()
                .expect("object")
                .insert("coeff".into(), Value::String(coeff.to_string()));
            obj
        })
        .collect();
    Ok(json!({ "terms": terms }))
}

pub fn galcoh_orbits(p: usize, q: usize, budget: u64) -> Result<Value> {
    let orbits = galcoh::orbit_decomposition(p, q, budget.min(u32::MAX as u64) as u32)?;
    let arr: Vec<Value> = orbits
        .iter()
        .map(|orbit| {
            Value::Array(
                orbit
                    .iter()
                    .map(|v| json!(v.xi().iter().copied().collect::<Vec<_>>()))
                    .collect(),
            )
        })
        .collect();
    Ok(json!({
        "orbit_count": orbits.len(),
        "orbits": arr,
    }))
}

pub fn galcoh_kernel(p: usize, q: usize, budget: u64) -> Result<Value> {
    let kernel = galcoh::kernel_to_g(p, q, budget.min(u32::MAX as u64) as u32)?;
    let balanced = kernel.iter().all(|v| v.p_count() == v.q_count());
    Ok(json!({
        "kernel": kernel
            .iter()
            .map(|v| json!(v.xi().iter().copied().collect::<Vec<_>>()))
            .collect::<Vec<Value>>(),
        "size": kernel.len(),
        "balanced_rule": balanced,
    }))
}

fn local_datum_from_json(v: &Value, path: &str) -> Result<galcoh::LocalInnerFormDatum> {
    let kind = cj::field(v, "kind", path)?
        .as_str()
        .ok_or_else(|| Error::parse(format!("{path}.kind: expected a string")))?;
    match kind {
        "real" => Ok(galcoh::LocalInnerFormDatum::Real {
            p: cj::usize_from_json(cj::field(v, "p", path)?, &format!("{path}.p"))?,
            q: cj::usize_from_json(cj::field(v, "q", path)?, &format!("{path}.q"))?,
        }),
        "split" => Ok(galcoh::LocalInnerFormDatum::FiniteSplit {
            m: cj::usize_from_json(cj::field(v, "m", path)?, &format!("{path}.m"))?,
        }),
        "nonsplit" => Ok(galcoh::LocalInnerFormDatum::FiniteNonsplit {
            quasi_split: cj::field(v, "quasi_split", path)?
                .as_bool()
                .ok_or_else(|| Error::parse(format!("{path}.quasi_split: expected bool")))?,
        }),
        other => Err(Error::parse(format!("{path}.kind: unknown kind {other:?}"))),
    }
}

pub fn innerforms_glue(input: &Value) -> Result<Value> {
    let n = cj::usize_from_json(cj::field(input, "n", "input")?, "input.n")?;
    let places_v = cj::field(input, "places", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.places: expected an array"))?;
    let mut places = Vec::new();
    for (i, pv) in places_v.iter().enumerate() {
        places.push(local_datum_from_json(pv, &format!("input.places[{i}]"))?);
    }
    let exists = galcoh::global_exists(&places, n)?;
    let epsilons: Option<Vec<i32>> = if n % 2 == 0 {
        Some(
            places
                .iter()
                .map(|d| galcoh::epsilon(d, n))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };
    Ok(json!({
        "exists": exists,
        "epsilons": epsilons,
    }))
}

pub fn innerforms_division_check(input: &Value) -> Result<Value> {
    let n = cj::usize_from_json(cj::field(input, "n", "input")?, "input.n")?;
    let ms_v = cj::field(input, "ms", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.ms: expected an array"))?;
    let ms: Vec<usize> = ms_v
        .iter()
        .enumerate()
        .map(|(i, x)| cj::usize_from_json(x, &format!("input.ms[{i}]")))
        .collect::<Result<_>>()?;
    Ok(json!({
        "sufficient": galcoh::division_algebra_sufficient(&ms, n)?,
    }))
}

fn pel_datum_from_json(input: &Value) -> Result<pel::PelDatum> {
    if let Some(ex) = input.get("example") {
        let name = ex
            .as_str()
            .ok_or_else(|| Error::parse("input.example: expected a string"))?;
        return match name {
            "siegel" => {
                let d = cj::usize_from_json(cj::field(input, "d", "input")?, "input.d")?;
                pel::examples::siegel(d)
            }
            "gaussian-unitary" => {
                let p = cj::usize_from_json(cj::field(input, "p", "input")?, "input.p")?;
                let q = cj::usize_from_json(cj::field(input, "q", "input")?, "input.q")?;
                pel::examples::gaussian_unitary(p, q)
            }
            "quaternion" => pel::examples::quaternion_type_d(),
            other => Err(Error::parse(format!("unknown packaged example {other:?}"))),
        };
    }
    let alg_v = cj::field(input, "algebra", "input")?;
    let rank = cj::usize_from_json(cj::field(alg_v, "rank", "input.algebra")?, "input.algebra.rank")?;
    let structure_v = cj::field(alg_v, "structure", "input.algebra")?
        .as_array()
        .ok_or_else(|| Error::parse("input.algebra.structure: expected an array"))?;
    if structure_v.len() != rank {
        return Err(Error::parse("input.algebra.structure: wrong outer length"));
    }
    let mut structure = Vec::new();
    for (i, row_v) in structure_v.iter().enumerate() {
        let row_v = row_v
            .as_array()
            .ok_or_else(|| Error::parse(format!("input.algebra.structure[{i}]: expected array")))?;
        let mut row = Vec::new();
        for (j, cell_v) in row_v.iter().enumerate() {
            let path = format!("input.algebra.structure[{i}][{j}]");
            let cell_v = cell_v
                .as_array()
                .ok_or_else(|| Error::parse(format!("{path}: expected array")))?;
            let mut cell = Vec::new();
            for (k, x) in cell_v.iter().enumerate() {
                cell.push(cj::int_from_json(x, &format!("{path}[{k}]"))?);
            }
            row.push(cell);
        }
        structure.push(row);
    }
    let involution = cj::zmat_from_json(
        cj::field(alg_v, "involution", "input.algebra")?,
        "input.algebra.involution",
    )?;
    let algebra = pel::FiniteAlgebra::new(structure, involution)?;
    let action_v = cj::field(input, "action", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.action: expected an array"))?;
    let action: Vec<shimura_core::ZMat> = action_v
        .iter()
        .enumerate()
        .map(|(i, m)| cj::zmat_from_json(m, &format!("input.action[{i}]")))
        .collect::<Result<_>>()?;
    let pairing = cj::zmat_from_json(cj::field(input, "pairing", "input")?, "input.pairing")?;
    let h_i = cj::qmat_from_json(cj::field(input, "h_i", "input")?, "input.h_i")?;
    let type_d = input.get("type_d").and_then(Value::as_bool).unwrap_or(false);
    pel::PelDatum::new(algebra, action, pairing, h_i, type_d)
}

pub fn pel_validate(input: &Value) -> Result<Value> {
    let d = pel_datum_from_json(input)?;
    let r = pel::validate_pel(&d)?;
    Ok(json!({
        "action_is_representation": r.action_is_representation,
        "involution_positive": r.involution_positive,
        "pairing_compatible": r.pairing_compatible,
        "pairing_alternating": r.pairing_alternating,
        "h_is_complex_structure": r.h_is_complex_structure,
        "h_adjoint_condition": r.h_adjoint_condition,
        "h_positivity": r.h_positivity,
        "all_pass": r.all_pass(),
    }))
}

pub fn pel_good_prime(input: &Value, p: i64) -> Result<Value> {
    let d = pel_datum_from_json(input)?;
    let r = pel::good_prime(&d, p)?;
    Ok(json!({
        "good": r.good,
        "divides_discriminant": r.divides_discriminant,
        "divides_pairing_index": r.divides_pairing_index,
        "two_with_type_d": r.two_with_type_d,
    }))
}

pub fn pel_reflex(input: &Value) -> Result<Value> {
    let d = pel_datum_from_json(input)?;
    let (traces, verdict) = pel::reflex_traces(&d)?;
    let verdict_v = match verdict {
        pel::ReflexVerdict::Rational => json!("rational"),
        pel::ReflexVerdict::ImaginaryQuadratic { discriminant } => {
            json!({ "imaginary_quadratic": discriminant })
        }
    };
    Ok(json!({
        "traces": traces
            .iter()
            .map(|t| t.to_canonical_string())
            .collect::<Vec<_>>(),
        "verdict": verdict_v,
    }))
}

pub fn pel_detpoly(input: &Value) -> Result<Value> {
    let d = pel_datum_from_json(input)?;
    let poly = pel::determinant_polynomial(&d)?;
    let integral = pel::coefficients_integral_away_from_bad(&d, &poly)?;
    let terms: Vec<Value> = poly
        .iter()
        .map(|(exps, coeff)| {
            json!({
                "exponents": exps,
                "coeff": coeff.to_canonical_string(),
            })
        })
        .collect();
    Ok(json!({
        "terms": terms,
        "coefficients_integral_away_from_bad": integral,
    }))
}

fn variety_from_json(input: &Value) -> Result<zeta::VarietySpec> {
    let p = cj::i64_from_json(cj::field(input, "p", "input")?, "input.p")? as u64;
    let k = input
        .get("k")
        .map(|v| cj::usize_from_json(v, "input.k"))
        .transpose()?
        .unwrap_or(1);
    let base = zeta::FiniteField::new(p, k)?;
    let ambient_v = cj::field(input, "ambient", "input")?;
    let ambient = if let Some(m) = ambient_v.get("affine") {
        zeta::Ambient::Affine(cj::usize_from_json(m, "input.ambient.affine")?)
    } else if let Some(m) = ambient_v.get("projective") {
        zeta::Ambient::Projective(cj::usize_from_json(m, "input.ambient.projective")?)
    } else {
        return Err(Error::parse(
            "input.ambient: expected {\"affine\": m} or {\"projective\": m}",
        ));
    };
    let polys_v = cj::field(input, "polys", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.polys: expected an array"))?;
    let mut polys = Vec::new();
    for (i, poly_v) in polys_v.iter().enumerate() {
        let path = format!("input.polys[{i}]");
        let terms_v = cj::field(poly_v, "terms", &path)?
            .as_array()
            .ok_or_else(|| Error::parse(format!("{path}.terms: expected an array")))?;
        let mut terms = Vec::new();
        for (j, term_v) in terms_v.iter().enumerate() {
            let tpath = format!("{path}.terms[{j}]");
            let exps: Vec<u32> = cj::field(term_v, "exps", &tpath)?
                .as_array()
                .ok_or_else(|| Error::parse(format!("{tpath}.exps: expected array")))?
                .iter()
                .enumerate()
                .map(|(s, x)| {
                    cj::i64_from_json(x, &format!("{tpath}.exps[{s}]")).and_then(|v| {
                        u32::try_from(v)
                            .map_err(|_| Error::parse("exponents must be nonnegative"))
                    })
                })
                .collect::<Result<_>>()?;
            let coeff_v = cj::field(term_v, "coeff", &tpath)?;
            let coeff: zeta::FFElem = match coeff_v {
                Value::Number(_) => {
                    let c = cj::i64_from_json(coeff_v, &format!("{tpath}.coeff"))?;
                    let mut e = base.zero();
                    e[0] = c.rem_euclid(p as i64) as u64;
                    e
                }
                Value::Array(arr) => {
                    let mut e = base.zero();
                    if arr.len() > k {
                        return Err(Error::parse(format!(
                            "{tpath}.coeff: too many field coordinates"
                        )));
                    }
                    for (s, x) in arr.iter().enumerate() {
                        let c = cj::i64_from_json(x, &format!("{tpath}.coeff[{s}]"))?;
                        e[s] = c.rem_euclid(p as i64) as u64;
                    }
                    e
                }
                _ => return Err(Error::parse(format!("{tpath}.coeff: expected int or array"))),
            };
            terms.push((exps, coeff));
        }
        polys.push(zeta::FFPoly { terms });
    }
    zeta::VarietySpec::new(base, ambient, polys)
}

pub fn zeta_count(input: &Value, budget: u64) -> Result<Value> {
    let v = variety_from_json(input)?;
    let r = cj::usize_from_json(cj::field(input, "r", "input")?, "input.r")?;
    Ok(json!({ "count": zeta::count_points(&v, r, budget)? }))
}

fn counts_from_input(input: &Value) -> Result<Vec<u64>> {
    cj::field(input, "counts", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.counts: expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            cj::i64_from_json(x, &format!("input.counts[{i}]")).and_then(|v| {
                u64::try_from(v).map_err(|_| Error::parse("counts must be nonnegative"))
            })
        })
        .collect()
}

pub fn zeta_series(input: &Value) -> Result<Value> {
    let counts = counts_from_input(input)?;
    let precision = match input.get("precision") {
        Some(v) => cj::usize_from_json(v, "input.precision")?,
        None => counts.len(),
    };
    let series = zeta::zeta_series(&counts, precision)?;
    Ok(json!({
        "coefficients": series.iter().map(rat_to_string).collect::<Vec<_>>(),
    }))
}

pub fn zeta_rational(input: &Value) -> Result<Value> {
    let counts = counts_from_input(input)?;
    let dp = cj::usize_from_json(cj::field(input, "deg_p", "input")?, "input.deg_p")?;
    let dq = cj::usize_from_json(cj::field(input, "deg_q", "input")?, "input.deg_q")?;
    let series = zeta::zeta_series(&counts, counts.len())?;
    let (p, q) = zeta::rational_recovery(&series, dp, dq)?;
    Ok(json!({
        "p": p.iter().map(rat_to_string).collect::<Vec<_>>(),
        "q": q.iter().map(rat_to_string).collect::<Vec<_>>(),
    }))
}

fn zpoly_from_json(v: &Value, path: &str) -> Result<zeta::ZPoly> {
    v.as_array()
        .ok_or_else(|| Error::parse(format!("{path}: expected an array")))?
        .iter()
        .enumerate()
        .map(|(i, x)| cj::int_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn zeta_check(input: &Value) -> Result<Value> {
    let p = zpoly_from_json(cj::field(input, "p_poly", "input")?, "input.p_poly")?;
    let q = zpoly_from_json(cj::field(input, "q_poly", "input")?, "input.q_poly")?;
    let counts = counts_from_input(input)?;
    Ok(json!({
        "consistent": zeta::lefschetz_consistency(&p, &q, &counts)?,
    }))
}

pub fn trace_check(input: &Value) -> Result<Value> {
    let order = cj::usize_from_json(cj::field(input, "order", "input")?, "input.order")?;
    let table_v = cj::field(input, "table", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.table: expected an array"))?;
    let mut table = Vec::with_capacity(order * order);
    for (r, row_v) in table_v.iter().enumerate() {
        let row_v = row_v
            .as_array()
            .ok_or_else(|| Error::parse(format!("input.table[{r}]: expected an array")))?;
        for (c, x) in row_v.iter().enumerate() {
            table.push(cj::usize_from_json(x, &format!("input.table[{r}][{c}]"))?);
        }
    }
    let gamma = cj::field(input, "gamma", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.gamma: expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| cj::usize_from_json(x, &format!("input.gamma[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let group = trace::FiniteGroupTable::new(order, table, gamma)?;
    let f_v = cj::field(input, "f", "input")?
        .as_array()
        .ok_or_else(|| Error::parse("input.f: expected an array"))?;
    let f: Vec<shimura_core::Rat> = f_v
        .iter()
        .enumerate()
        .map(|(i, x)| cj::rat_from_json(x, &format!("input.f[{i}]")))
        .collect::<Result<_>>()?;
    let direct = trace::direct_trace(&group, &f)?;
    let geometric = trace::geometric_side(&group, &f)?;
    let spectral = if group.is_abelian() {
        Some(trace::spectral_side_abelian(&group, &f)?)
    } else {
        None
    };
    let mut verdict = direct == geometric;
    if let Some(s) = &spectral {
        verdict = verdict && s == &direct;
    }
    let mut out = Map::new();
    out.insert("direct".into(), Value::String(rat_to_string(&direct)));
    out.insert("geometric".into(), Value::String(rat_to_string(&geometric)));
    out.insert(
        "spectral".into(),
        match &spectral {
            Some(s) => Value::String(rat_to_string(s)),
            None => Value::Null,
        },
    );
    out.insert("verdict".into(), Value::Bool(verdict));
    Ok(Value::Object(out))
}
