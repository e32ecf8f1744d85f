use std::collections::BTreeMap;

use asymhecke::cells::Side;
use asymhecke::coxeter::{ElemId, Gen, Word};
use asymhecke::hecke::{Basis, HeckeElt};
use asymhecke::liftrace::{self, BranchMode, LifMethod};
use asymhecke::polyring::RootPolynomial;
use asymhecke::ptrace::{self, Engine, LinearTraceSetup};
use asymhecke::{Error, Scalar, Session};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{CliError, CliResult, Command};

pub struct Output {
    pub json: Value,
    pub text: Option<String>,
    pub dot: Option<String>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, text: None, dot: None }
    }
}

fn word(s: &str) -> CliResult<Word> {
    Ok(Word::parse(s)?)
}

fn elem(session: &Session, s: &str) -> CliResult<ElemId> {
    let w = word(s)?;
    Ok(session.group().id_from_word(w.letters())?)
}

fn name(session: &Session, w: ElemId) -> String {
    let word = session.group().word(w);
    if word.is_empty() {
        "e".into()
    } else {
        word.to_string()
    }
}

fn names(session: &Session, ws: &[ElemId]) -> Vec<String> {
    ws.iter().map(|&w| name(session, w)).collect()
}

fn hecke_json(session: &Session, h: &HeckeElt) -> Value {
    let terms: Vec<Value> = h
        .sorted_terms(session.group())
        .into_iter()
        .map(|(w, c)| json!({"w": name(session, w), "coeff": c, "display": c.to_string()}))
        .collect();
    json!({"basis": h.basis, "terms": terms})
}

fn hecke_text(session: &Session, h: &HeckeElt) -> String {
    let letter = match h.basis {
        Basis::Kl => "b",
        Basis::Standard => "h",
    };
    let terms: Vec<String> = h.sorted_terms(session.group()).into_iter().map(|(w, c)| format!("({c}) {letter}_{}", name(session, w))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A polynomial argument: "rho", "rho^a", or an expression in a1..an.
fn poly_arg(session: &Session, s: &str) -> CliResult<RootPolynomial> {
    let ring = session.ring();
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("rho") {
        let a: u32 = match rest.strip_prefix('^') {
            Some(k) => k.trim().parse().map_err(|_| CliError::Usage(format!("bad exponent in {t:?}")))?,
            None if rest.is_empty() => 1,
            None => return Err(CliError::Usage(format!("bad polynomial {t:?}"))),
        };
        return Ok(ring.rho_standard()?.pow(a));
    }
    Ok(RootPolynomial::parse(t, ring.rank())?)
}

fn engine_arg(s: &str) -> CliResult<Engine> {
    s.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

fn gens(s: &str) -> CliResult<Vec<Gen>> {
    Ok(word(s)?.letters().to_vec())
}

pub fn dispatch(session: &Session, cmd: &Command) -> CliResult<Output> {
    let g = session.group();
    let kl = session.kl();
    match cmd {
        Command::Info => {
            let real = session.realization();
            let cm = g.system().matrix();
            let matrix: Vec<Vec<String>> = cm
                .generators()
                .map(|s| cm.generators().map(|t| if cm.m(s, t) == asymhecke::coxeter::INFINITY { "inf".into() } else { cm.m(s, t).to_string() }).collect())
                .collect();
            let cartan: Vec<Vec<String>> = real.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            Ok(Output::json(json!({
                "type": cm.to_string(),
                "rank": g.rank(),
                "order": g.order(),
                "matrix": matrix,
                "realization": real.kind(),
                "field": real.field().to_string(),
                "cartan": cartan,
                "w0": name(session, g.w0()),
                "length_w0": g.len_of(g.w0()),
                "fingerprint": session.fingerprint(),
            })))
        }
        Command::Kl { w, y } => {
            let w = elem(session, w)?;
            let entry = |y: ElemId| {
                let p = kl.p(w, y);
                json!({"y": name(session, y), "p": p, "display": p.to_string(), "mu": kl.mu(w, y)})
            };
            let json = match y {
                Some(y) => {
                    let y = elem(session, y)?;
                    json!({"w": name(session, w), "entries": [entry(y)]})
                }
                None => {
                    let mut ys: Vec<ElemId> = kl.row(w).polys.keys().copied().collect();
                    ys.sort_by_key(|&y| (g.len_of(y), y));
                    json!({"w": name(session, w), "entries": ys.into_iter().map(entry).collect::<Vec<_>>()})
                }
            };
            Ok(Output::json(json))
        }
        Command::Mult { x, y } => {
            let h = kl.kl_product(elem(session, x)?, elem(session, y)?);
            Ok(Output { json: hecke_json(session, &h), text: Some(hecke_text(session, &h)), dot: None })
        }
        Command::Bsdecomp { word: w } => {
            let h = kl.bott_samelson_decompose(&gens(w)?)?;
            Ok(Output { json: hecke_json(session, &h), text: Some(hecke_text(session, &h)), dot: None })
        }
        Command::Pairing { x, y } => {
            let (x, y) = (elem(session, x)?, elem(session, y)?);
            let p = kl.standard_pairing(&kl.kl_basis_element(x), &kl.kl_basis_element(y), None)?;
            Ok(Output {
                json: json!({"x": name(session, x), "y": name(session, y), "pairing": p, "display": p.to_string()}),
                text: Some(p.to_string()),
                dot: None,
            })
        }
        Command::Clasp { word: bs, w, summands } => {
            let report = match (bs, w) {
                (Some(bs), _) => kl.bott_samelson_clasp(&gens(bs)?)?,
                (None, Some(w)) => {
                    let w = elem(session, w)?;
                    let mut lower = Vec::new();
                    for s in summands {
                        let (y, shift) = s.rsplit_once(':').ok_or_else(|| CliError::Usage(format!("summand {s:?} is not <y>:<shift>")))?;
                        let shift: i32 = shift.trim().parse().map_err(|_| CliError::Usage(format!("bad shift in {s:?}")))?;
                        lower.push((elem(session, y)?, shift));
                    }
                    kl.clasp_exists(w, &lower)?
                }
                (None, None) => return Err(CliError::Usage("clasp needs --word or --w".into())),
            };
            Ok(Output::json(serde_json::to_value(&report).expect("report serializes")))
        }
        Command::Cells => {
            let cells = session.cells()?;
            let two = cells.cells(Side::Two);
            let list: Vec<Value> = (0..two.len())
                .map(|c| {
                    let members = &two[c];
                    let mut lefts: Vec<usize> = members.iter().map(|&x| cells.cell_of(Side::Left, x)).collect();
                    lefts.sort();
                    lefts.dedup();
                    let duflo = cells.duflo_involutions(c);
                    json!({
                        "index": c,
                        "size": members.len(),
                        "a": cells.a_value(c),
                        "members": names(session, members),
                        "duflo": names(session, &duflo),
                        "left_cells": lefts.iter().map(|&l| names(session, &cells.cells(Side::Left)[l])).collect::<Vec<_>>(),
                        "diagonal_cells": duflo.iter().map(|&d| names(session, &cells.diagonal_cell(d))).collect::<Vec<_>>(),
                        "w0_dual": cells.w0_dual(Side::Two, c),
                    })
                })
                .collect();
            let order: Vec<[usize; 2]> = (0..two.len())
                .flat_map(|i| (0..two.len()).map(move |j| [i, j]))
                .filter(|&[i, j]| i != j && cells.two_sided_leq(i, j))
                .collect();
            Ok(Output::json(json!({"cells": list, "two_sided_leq": order})))
        }
        Command::GammaTable { d } => {
            let cells = session.cells()?;
            let d = elem(session, d)?;
            let cell = cells.cell_of(Side::Two, d);
            let alg = cells.asymptotic_algebra(cell);
            if !alg.duflo.contains(&d) {
                return Err(Error::Precondition(format!("{} is not a Duflo involution", name(session, d))).into());
            }
            let h = cells.diagonal_cell(d);
            let mut table = Vec::new();
            for &x in &h {
                for &y in &h {
                    let prod: BTreeMap<String, i64> = alg.multiply(x, y)?.into_iter().map(|(w, k)| (name(session, w), k)).collect();
                    table.push(json!({"x": name(session, x), "y": name(session, y), "product": prod}));
                }
            }
            Ok(Output::json(json!({"d": name(session, d), "a": alg.a, "elements": names(session, &h), "table": table})))
        }
        Command::Lif { x, i, y, method } => {
            let (x, y) = (elem(session, x)?, elem(session, y)?);
            g.system().matrix().check_gen(*i as usize)?;
            let real = session.realization();
            let value = match method.as_str() {
                "both" => {
                    let c = liftrace::lif(kl, real, x, *i, y, LifMethod::Closed)?;
                    let r = liftrace::lif(kl, real, x, *i, y, LifMethod::Recursive)?;
                    if c != r {
                        return Err(Error::Precondition(format!("closed {c} and recursive {r} disagree")).into());
                    }
                    c
                }
                m => liftrace::lif(kl, real, x, *i, y, m.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?)?,
            };
            Ok(Output { json: json!(value.to_string()), text: Some(value.to_string()), dot: None })
        }
        Command::Branching { word: w, mode, start } => {
            let mode: BranchMode = mode.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
            let graph = liftrace::branching_graph(kl, &gens(w)?, mode, *start)?;
            Ok(Output { json: graph.to_json(g), text: None, dot: Some(graph.to_dot(g)) })
        }
        Command::Classify { word: w, start } => {
            let c = liftrace::classify_expression(kl, session.realization(), &gens(w)?, *start)?;
            Ok(Output { json: c.to_json(g), text: None, dot: Some(c.graph.to_dot(g)) })
        }
        Command::Rho { values } => {
            let ring = session.ring();
            let rho = match values {
                None => ring.rho_standard()?,
                Some(v) => {
                    let vals = v.split(',').map(|x| Scalar::parse(x.trim())).collect::<Result<Vec<_>, _>>()?;
                    ring.rho_with_values(&vals)?
                }
            };
            let dominant = ring.is_dominant_regular(&rho)?;
            Ok(Output { json: json!({"rho": rho.to_string(), "dominant_regular": dominant}), text: Some(rho.to_string()), dot: None })
        }
        Command::Demazure { word: w, f } => {
            let f = poly_arg(session, f)?;
            let out = session.ring().demazure_word(&gens(w)?, &f)?;
            Ok(Output { json: json!({"result": out.to_string()}), text: Some(out.to_string()), dot: None })
        }
        Command::Ptrace { d, t, f, engine, grid } => {
            let ring = session.ring();
            let setup = LinearTraceSetup::new(kl, ring, &gens(d)?, &gens(t)?)?;
            let f = poly_arg(session, f)?;
            let engine = engine_arg(engine)?;
            let result = ptrace::linear_partial_trace(&setup, ring, &f, engine)?;
            let mut json = json!({
                "d": setup.d.to_string(),
                "t": setup.t.to_string(),
                "engine": engine,
                "result": result.to_string(),
                "lif": setup.lif.iter().map(|l| l.as_ref().map(|s| s.to_string())).collect::<Vec<_>>(),
            });
            if *grid {
                json["grid"] = ptrace::grid_to_json(&ptrace::better_grid(&setup, ring, &f)?);
            }
            Ok(Output { json, text: (!grid).then(|| result.to_string()), dot: None })
        }
        Command::Dim { gens: i, t, engine, check_rho, seed } => {
            let ring = session.ring();
            let engine = engine_arg(engine)?;
            let d = ptrace::parabolic_word(kl, &gens(i)?)?;
            let setup = LinearTraceSetup::new(kl, ring, d.letters(), &gens(t)?)?;
            let report = ptrace::dimension_for_setup(&setup, ring, None, engine)?;
            let mut json = json!({
                "dimension": report.dimension.to_string(),
                "numerator": report.numerator.to_string(),
                "denominator": report.denominator.to_string(),
            });
            if let Some(n) = check_rho {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let (agree, dims) = ptrace::rho_independence_check(&setup, ring, *n, engine, &mut rng)?;
                let agree = agree && dims.iter().all(|x| *x == report.dimension);
                json["rho_check"] = json!({"trials": n, "agree": agree, "dimensions": dims.iter().map(|x| x.to_string()).collect::<Vec<_>>()});
            }
            Ok(Output::json(json))
        }
    }
}
