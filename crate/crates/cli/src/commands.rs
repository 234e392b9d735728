//! Subcommands and their reports.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hypdiagram::bounds::{bound, recorded_constants, BoundParams, BoundResult, BoundTheorem, BoundValue};
use hypdiagram::face_lattice::{check_face_average_bounds, cube, is_simple_in_dimension, simplex};
use hypdiagram::faces::{enumerate_finite_faces, find_elliptic_face, FaceComplex, FindFaceMode};
use hypdiagram::gram::{build_gram_graph, classify_subset, dynkin_type, enumerate_lanner};
use hypdiagram::klein::{self, PlanePairRelation, ProjPointType};
use hypdiagram::lattice::reflection;
use hypdiagram::subsets::Mask;
use hypdiagram::surface::{
    classify_exc_partition, discrepancies, enumerate_classes, mori_generators, mori_polyhedron_type,
    numerical_kodaira, surface_bound_report, zariski_decompose, MoriPolyhedronType,
};
use hypdiagram::weights::{
    empirical_constants, lanner_diameter_d, three_angle_weights, two_angle_weights, AngleRecord, FaceSum, Metric,
};
use hypdiagram::{Distance, Error, LabelSet, LatticeVector, Rational, SubsetClass, VectorFamily};
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::json::*;

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hypdiagram", version, about = "Exact diagram-method computations")]
pub struct Cli {
    /// Input document (default: stdin).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Rho,
    RhoQ,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| match e {
        CliError::Input(m) => m,
        other => other.to_string(),
    })
}

fn theorem_arg(s: &str) -> std::result::Result<BoundTheorem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn labels_arg(s: &str) -> LabelSet {
    s.split(',').map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect()
}

fn keyed_arg(s: &str) -> std::result::Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("`{s}` is not of the form label=value"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signature and definiteness of a lattice.
    LatticeSig,
    /// Classify a subset of a family (default: the whole family).
    Classify {
        #[arg(long, value_parser = |s: &str| Ok::<_, String>(labels_arg(s)))]
        subset: Option<LabelSet>,
    },
    /// Gram graph, Lanner subsets and their diameters.
    Lanner {
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Face complex of an acute-angled family.
    Faces {
        /// Check each elliptic subset for a witness ray.
        #[arg(long)]
        witness: bool,
    },
    /// Face averages against their upper bounds.
    Faceavg {
        /// Use the n-cube instead of reading a face lattice.
        #[arg(long, conflicts_with = "simplex")]
        cube: Option<usize>,
        /// Use the n-simplex instead of reading a face lattice.
        #[arg(long)]
        simplex: Option<usize>,
    },
    /// 2-angle weights and their two conditions.
    Weights2 {
        /// Distance threshold (default: largest Lanner diameter).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_parser = rational_arg, default_value = "0")]
        c: Rational,
        /// Additive constant of the vertex condition.
        #[arg(long, value_parser = rational_arg, default_value = "0")]
        d_const: Rational,
    },
    /// 3-angle weights and their two conditions.
    Weights3 {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_parser = rational_arg, default_value = "0")]
        c: Rational,
    },
    /// Recorded constants, or the constants C1, C2 of a family with --size.
    Constants {
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, value_parser = |s: &str| Ok::<_, String>(labels_arg(s)), default_value = "")]
        q: LabelSet,
        #[arg(long, value_enum, default_value_t = MetricArg::Rho)]
        metric: MetricArg,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Evaluate a dimension bound.
    Bound {
        #[arg(long, value_parser = theorem_arg)]
        theorem: BoundTheorem,
        #[arg(long, value_parser = rational_arg)]
        c1: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        c2: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        c: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        d: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        dim_t: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        n: Option<Rational>,
    },
    /// Find an elliptic face of a parabolic or hyperbolic polyhedron.
    Findface {
        /// Isotropic center, as a JSON array.
        #[arg(long, conflicts_with = "normals", required_unless_present = "normals")]
        center: Option<String>,
        /// Normals of the subspace, as a JSON array of arrays.
        #[arg(long)]
        normals: Option<String>,
    },
    /// Klein-model relations between two vectors.
    Geom,
    /// Zariski decomposition of a divisor.
    Zariski {
        #[arg(long)]
        divisor: String,
    },
    /// Numerical Kodaira dimension (default divisor: -K).
    Kodaira {
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Surface reports.
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
    /// Discrepancies of a curve configuration.
    Discrepancy {
        /// Restrict to these curves.
        #[arg(long, value_parser = |s: &str| Ok::<_, String>(labels_arg(s)))]
        curves: Option<LabelSet>,
    },
    /// Mori polyhedron type and cone generators.
    Mori {
        /// Extra isotropic class, as label=[coords]; repeatable.
        #[arg(long, value_parser = keyed_arg)]
        isotropic: Vec<(String, String)>,
    },
    /// Integral classes with given square and product with K.
    #[command(allow_negative_numbers = true)]
    Enumerate {
        #[arg(long)]
        square: i64,
        #[arg(long)]
        kprod: i64,
        #[arg(long)]
        height: u32,
        /// Constraint 0 <= class·curve <= N, as curve=N; repeatable.
        #[arg(long = "bound", value_parser = keyed_arg)]
        bounds: Vec<(String, String)>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurfaceAction {
    /// Evaluate a bound variant on the model.
    Report {
        #[arg(long, value_parser = theorem_arg)]
        variant: BoundTheorem,
        /// Override the Lanner diameter.
        #[arg(long)]
        d: Option<usize>,
    },
}

/// Runs a command; `input` is called only by commands that read a document.
pub fn run(command: &Command, input: &mut dyn FnMut() -> Result<Value>) -> Result<Value> {
    match command {
        Command::LatticeSig => {
            let doc = input()?;
            let l = lattice_from(doc.get("lattice").unwrap_or(&doc))?;
            let s = l.signature();
            Ok(json!({
                "rank": l.rank(),
                "signature": {"positive": s.positive, "negative": s.negative, "zero": s.zero},
                "definiteness": s.definiteness().name(),
                "hyperbolic": l.is_hyperbolic(),
            }))
        }
        Command::Classify { subset } => {
            let f = family_from(&input()?)?;
            let s = subset.clone().unwrap_or_else(|| f.labels().iter().cloned().collect());
            let class = classify_subset(&f, &s)?;
            let mut out = json!({
                "subset": s,
                "class": class.name(),
                "lanner": matches!(class, SubsetClass::Hyperbolic { is_lanner: true }),
            });
            if matches!(class, SubsetClass::Elliptic | SubsetClass::ConnectedParabolic) {
                out["dynkin"] = json!(dynkin_type(&f, &s)?.to_string());
            }
            Ok(out)
        }
        Command::Lanner { max_size } => {
            let f = family_from(&input()?)?;
            let g = build_gram_graph(&f);
            let max = max_size.unwrap_or(f.len()).min(f.len());
            let lanner = enumerate_lanner(&f, max)?;
            let with_diam: Vec<Value> = lanner
                .iter()
                .map(|s| {
                    let m = f.mask_of(s)?;
                    Ok(json!({"subset": s, "diameter": distance(f.mask_graph().diameter(m))}))
                })
                .collect::<Result<_>>()?;
            Ok(json!({
                "graph": {
                    "vertices": g.vertices.iter().map(|(l, w)| json!({"label": l, "weight": rational_to(w)})).collect::<Vec<_>>(),
                    "edges": g.edges.iter().map(|(u, v, w)| json!({"u": u, "v": v, "weight": rational_to(w)})).collect::<Vec<_>>(),
                    "diameter": if f.is_empty() { Value::Null } else { distance(g.diameter()?) },
                },
                "lanner": with_diam,
                "d": distance(lanner_diameter_d(&f, max.max(1))?),
            }))
        }
        Command::Faces { witness } => {
            let fc = enumerate_finite_faces(&family_from(&input()?)?, *witness)?;
            Ok(faces_report(&fc))
        }
        Command::Faceavg { cube: c, simplex: s } => {
            let fl = match (c, s) {
                (Some(n), _) => cube(*n)?,
                (_, Some(n)) => simplex(*n)?,
                _ => face_lattice_from(&input()?)?,
            };
            let r = check_face_average_bounds(&fl)?;
            let simple: Map<String, Value> = (0..fl.dim.max(1))
                .map(|k| Ok((k.to_string(), json!(is_simple_in_dimension(&fl, k)?))))
                .collect::<Result<_>>()?;
            Ok(json!({
                "dim": r.dim,
                "simple": simple,
                "checks": r.checks.iter().map(|c| json!({
                    "i": c.i, "k": c.k, "average": rational_to(&c.average), "bound": rational_to(&c.bound), "holds": c.holds,
                })).collect::<Vec<_>>(),
                "identity": r.identity.as_ref().map(|id| json!({
                    "alpha0": id.alpha0, "alpha2": id.alpha2, "average02": rational_to(&id.average02), "holds": id.holds,
                })),
                "all_hold": r.all_hold(),
            }))
        }
        Command::Weights2 { d, c, d_const } => {
            let f = family_from(&input()?)?;
            let d = resolve_d(&f, *d)?;
            let fc = enumerate_finite_faces(&f, false)?;
            let r = two_angle_weights(&fc, d, c, d_const)?;
            Ok(json!({
                "d": r.d,
                "c": rational_to(c),
                "d_const": rational_to(d_const),
                "angles": angles(&fc, &r.angles),
                "vertex_sums": mask_sums(&fc, "vertex", &r.vertex_sums),
                "vertex_bound": rational_to(&r.vertex_bound),
                "condition1": r.condition1,
                "face_sums": r.face_sums.iter().map(|s| face_sum(&fc, s)).collect::<Vec<_>>(),
                "skipped": r.skipped.iter().map(|&m| json!(fc.labels_of(m))).collect::<Vec<_>>(),
                "condition2": r.condition2,
            }))
        }
        Command::Weights3 { d, c } => {
            let f = family_from(&input()?)?;
            let d = resolve_d(&f, *d)?;
            let fc = enumerate_finite_faces(&f, false)?;
            let r = three_angle_weights(&fc, d, c)?;
            let three_faces = r
                .three_faces
                .iter()
                .map(|t| {
                    let tf = fc.three_face(t.sum.face)?;
                    let mut v = face_sum(&fc, &t.sum);
                    v["closed"] = json!(t.closed);
                    v["bad"] = json!(t.bad);
                    v["checked"] = json!(t.checked());
                    v["good_subsets"] = t
                        .good_subsets
                        .iter()
                        .map(|g| {
                            json!({
                                "type": g.subset.kind,
                                "faces": g.subset.faces.iter().map(|&i| &tf.faces[i]).collect::<Vec<_>>(),
                                "sigma_lower_bound": rational_to(&g.subset.sigma_lower_bound),
                                "sigma": rational_to(&g.sigma),
                                "holds": g.holds,
                            })
                        })
                        .collect();
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "d": r.d,
                "c": rational_to(c),
                "angles": angles(&fc, &r.angles),
                "edge_sums": mask_sums(&fc, "edge", &r.edge_sums),
                "edge_bound": rational_to(&r.edge_bound),
                "condition1": r.condition1,
                "three_faces": three_faces,
                "condition2": r.condition2,
            }))
        }
        Command::Constants { size: None, .. } => Ok(json!({
            "recorded": recorded_constants().iter().map(|r| json!({
                "source": r.source,
                "case": r.case.name(),
                "published": rational_to(&r.published),
                "plus_dim_t": r.plus_dim_t,
                "formula": r.formula.id(),
                "formula_value": rational_to(&r.formula_value),
                "discrepancy": r.discrepancy,
            })).collect::<Vec<_>>(),
        })),
        Command::Constants { size: Some(size), q, metric, d } => {
            let f = family_from(&input()?)?;
            let d = resolve_d(&f, *d)?;
            let m = match metric {
                MetricArg::Rho => Metric::Rho,
                MetricArg::RhoQ => Metric::RhoQ,
            };
            let (c1, c2) = empirical_constants(&f, q, *size, m, d)?;
            Ok(json!({
                "q": q,
                "size": size,
                "metric": if m == Metric::Rho { "rho" } else { "rho-q" },
                "d": d,
                "C1": rational_to(&c1),
                "C2": rational_to(&c2),
            }))
        }
        Command::Bound { theorem, c1, c2, c, d, dim_t, n } => {
            let params = BoundParams { c1: c1.clone(), c2: c2.clone(), c: c.clone(), d: d.clone(), dim_t: dim_t.clone(), n: n.clone() };
            Ok(bound_json(&bound(*theorem, &params)?))
        }
        Command::Findface { center, normals } => {
            let f = family_from(&input()?)?;
            let l = f.lattice().clone();
            let (name, mode) = match (center, normals) {
                (Some(c), _) => ("parabolic", FindFaceMode::Parabolic { c: vector_from(&l, &inline_json(c, "--center")?, "center")? }),
                (_, Some(ns)) => {
                    let arr = inline_json(ns, "--normals")?;
                    let list = arr.as_array().ok_or_else(|| CliError::Input("--normals: expected an array".into()))?;
                    let normals =
                        list.iter().enumerate().map(|(i, v)| vector_from(&l, v, &format!("normals[{i}]"))).collect::<Result<_>>()?;
                    ("hyperbolic", FindFaceMode::Hyperbolic { normals })
                }
                _ => return Err(CliError::Usage("findface needs --center or --normals".into())),
            };
            let face = find_elliptic_face(&f, &mode)?;
            Ok(json!({"mode": name, "face": face}))
        }
        Command::Geom => geom(&input()?),
        Command::Zariski { divisor } => {
            let m = model_from(&input()?)?;
            let d = vector_from(m.ns(), &inline_json(divisor, "--divisor")?, "divisor")?;
            let z = zariski_decompose(&m, &d)?;
            let n: Map<String, Value> = z.n.iter().map(|(l, a)| (l.clone(), rational_to(a))).collect();
            Ok(json!({"P": vector_to(&z.p), "N": n}))
        }
        Command::Kodaira { divisor } => {
            let m = model_from(&input()?)?;
            let d = match divisor {
                Some(s) => vector_from(m.ns(), &inline_json(s, "--divisor")?, "divisor")?,
                None => m.canonical().neg(),
            };
            let k = numerical_kodaira(&m, &d)?;
            Ok(json!({"divisor": vector_to(&d), "kodaira": k.name()}))
        }
        Command::Surface { action: SurfaceAction::Report { variant, d } } => {
            let m = model_from(&input()?)?;
            let r = surface_bound_report(&m, *variant, *d)?;
            let mut b = bound_json(&r.bound);
            let b = b.as_object_mut().expect("bound report is an object");
            Ok(json!({
                "variant": r.variant.id(),
                "kodaira": r.kodaira.name(),
                "d": r.d,
                "d_overridden": r.d_overridden,
                "subset_size": r.subset_size,
                "q_sets": r.q_sets,
                "C1": rational_to(&r.c1),
                "C2": rational_to(&r.c2),
                "bound": b.remove("bound").unwrap_or(Value::Null),
                "bounds": b.remove("bounds").unwrap_or(Value::Null),
                "value": r.value,
                "holds": r.holds,
            }))
        }
        Command::Discrepancy { curves } => {
            let (l, k, all) = configuration_from(&input()?)?;
            let chosen: Vec<(String, LatticeVector)> = match curves {
                Some(set) => {
                    if let Some(missing) = set.iter().find(|s| !all.iter().any(|(l, _)| l == *s)) {
                        return Err(Error::UnknownLabel(missing.clone()).into());
                    }
                    all.into_iter().filter(|(l, _)| set.contains(l)).collect()
                }
                None => all,
            };
            let vs: Vec<LatticeVector> = chosen.iter().map(|(_, v)| v.clone()).collect();
            let r = discrepancies(&l, &k, &vs)?;
            let alphas: Map<String, Value> = chosen.iter().zip(&r.alphas).map(|((l, _), a)| (l.clone(), rational_to(a))).collect();
            Ok(json!({
                "alphas": alphas,
                "pullback": vector_to(&r.pullback),
                "orthogonal": r.orthogonal,
                "almost_minimal": r.almost_minimal,
                "components": r.components.iter().map(|c| json!({
                    "curves": c.members.iter().map(|&i| &chosen[i].0).collect::<Vec<_>>(),
                    "all_zero": c.all_zero,
                    "dynkin": c.dynkin.map(|t| t.to_string()),
                    "du_val": c.du_val,
                })).collect::<Vec<_>>(),
                "denominator_lcm": r.denominator_lcm.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| json!(r.denominator_lcm.to_string())),
            }))
        }
        Command::Mori { isotropic } => {
            let m = model_from(&input()?)?;
            let extra: Vec<(String, LatticeVector)> = isotropic
                .iter()
                .map(|(label, v)| Ok((label.clone(), vector_from(m.ns(), &inline_json(v, "--isotropic")?, label)?)))
                .collect::<Result<_>>()?;
            let kind = mori_polyhedron_type(&m)?;
            let partition = match classify_exc_partition(&m) {
                Ok(p) => json!({"exc1": p.exc1, "exc2": p.exc2, "exc3": p.exc3}),
                Err(e @ Error::UnclassifiableCurve(_)) => json!({"error": e.to_string()}),
                Err(e) => return Err(e.into()),
            };
            let r = mori_generators(&m, &extra)?;
            let kind_json = match &kind {
                MoriPolyhedronType::Elliptic => json!({"name": kind.name()}),
                MoriPolyhedronType::ParabolicAt { ray } => json!({"name": kind.name(), "ray": vector_to(ray)}),
                MoriPolyhedronType::HyperbolicRel { normals, codim } => {
                    json!({"name": kind.name(), "normals": normals, "codim": codim})
                }
            };
            Ok(json!({
                "kodaira": r.kodaira.name(),
                "type": kind_json,
                "partition": partition,
                "nef_part": vector_to(&r.nef_part),
                "generators": r.candidates.iter().map(|g| json!({
                    "label": g.label, "class": vector_to(&g.class), "kind": g.kind.name(), "extremal": g.extremal,
                })).collect::<Vec<_>>(),
                "ungenerated_isotropic": r.ungenerated_isotropic.iter().map(|n| json!({
                    "label": n.label, "class": vector_to(&n.class), "extremal": n.extremal,
                })).collect::<Vec<_>>(),
                "discrepancy": r.discrepancy,
            }))
        }
        Command::Enumerate { square, kprod, height, bounds } => {
            let m = model_from(&input()?)?;
            let constraints = bounds
                .iter()
                .map(|(label, n)| {
                    let c = m.curve(label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
                    Ok((c.clone(), parse_rational(n)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let classes = enumerate_classes(m.ns(), m.canonical(), *square, *kprod, *height, &constraints)?;
            Ok(json!({
                "square": square,
                "kprod": kprod,
                "height": height,
                "count": classes.len(),
                "classes": classes.iter().map(vector_to).collect::<Vec<_>>(),
            }))
        }
    }
}

fn inline_json(s: &str, flag: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| CliError::Input(format!("{flag}: {e}")))
}

fn distance(d: Distance) -> Value {
    match d {
        Distance::Finite(n) => json!(n),
        Distance::Infinite => json!("inf"),
    }
}

fn resolve_d(f: &VectorFamily, d: Option<usize>) -> Result<usize> {
    if let Some(d) = d {
        return Ok(d);
    }
    match lanner_diameter_d(f, f.len().max(1))? {
        Distance::Finite(d) if d > 0 => Ok(d),
        _ => Err(CliError::Input("the family has no Lanner subset of finite positive diameter; pass --d".into())),
    }
}

fn faces_report(fc: &FaceComplex) -> Value {
    let faces: Vec<Value> = fc
        .faces()
        .iter()
        .map(|&m| {
            let codim = m.count_ones() as usize;
            json!({"normals": fc.labels_of(m), "codim": codim, "compact": fc.is_compact_face(m)})
        })
        .collect();
    let infinite: Vec<Value> = fc
        .infinite_vertices()
        .iter()
        .map(|iv| {
            json!({
                "ray": rationals_to(&iv.ray),
                "parabolic": iv.parabolic.iter().map(|&m| fc.labels_of(m)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = json!({
        "dim": fc.dim(),
        "codim_counts": fc.codim_counts(),
        "faces": faces,
        "infinite_vertices": infinite,
    });
    if let Some(u) = fc.unwitnessed() {
        out["unwitnessed"] = json!(u.iter().map(|&m| fc.labels_of(m)).collect::<Vec<_>>());
    }
    out["face_lattice"] = face_lattice_to(&fc.to_face_lattice());
    out
}

fn angles(fc: &FaceComplex, records: &[AngleRecord]) -> Vec<Value> {
    let labels = fc.family().labels();
    records
        .iter()
        .map(|a| {
            json!({
                "subset": fc.labels_of(a.subset),
                "pair": [&labels[a.pair.0], &labels[a.pair.1]],
                "distance": distance(a.distance),
                "weight": rational_to(&a.weight),
            })
        })
        .collect()
}

fn mask_sums(fc: &FaceComplex, key: &str, sums: &[(Mask, Rational)]) -> Vec<Value> {
    sums.iter()
        .map(|(m, s)| {
            let mut o = Map::new();
            o.insert(key.into(), json!(fc.labels_of(*m)));
            o.insert("sum".into(), rational_to(s));
            Value::Object(o)
        })
        .collect()
}

fn face_sum(fc: &FaceComplex, s: &FaceSum) -> Value {
    json!({
        "face": fc.labels_of(s.face),
        "k": s.k,
        "sum": rational_to(&s.sum),
        "required": rational_to(&s.required),
        "holds": s.holds,
    })
}

fn bound_json(r: &BoundResult) -> Value {
    let inputs: Map<String, Value> = r.inputs.iter().map(|(k, v)| ((*k).to_string(), rational_to(v))).collect();
    let mut out = json!({"theorem": r.theorem.id()});
    match &r.value {
        BoundValue::Strict(v) => out["bound"] = rational_to(v),
        BoundValue::Predicate { n, rhs, holds } => {
            out["predicate"] = json!({"n": rational_to(n), "rhs": rational_to(rhs), "holds": holds});
        }
    }
    out["bounds"] = json!(r.quantity.tag());
    out["inputs"] = Value::Object(inputs);
    out
}

fn point_name(t: ProjPointType) -> &'static str {
    match t {
        ProjPointType::Finite => "finite",
        ProjPointType::Infinite => "infinite",
        ProjPointType::Outside => "outside",
    }
}

/// `{"lattice", "x", "y", "radius"?}`: point types of both vectors and
/// every relation defined for their kinds.
fn geom(doc: &Value) -> Result<Value> {
    let l = lattice_from(doc.get("lattice").ok_or_else(|| CliError::Input("missing field `lattice`".into()))?)?;
    let get = |k: &str| doc.get(k).ok_or_else(|| CliError::Input(format!("missing field `{k}`")));
    let x = vector_from(&l, get("x")?, "x")?;
    let y = vector_from(&l, get("y")?, "y")?;
    let mut out = Map::new();
    out.insert("x".into(), json!({"square": rational_to(&x.square()), "type": kind(&x)?}));
    out.insert("y".into(), json!({"square": rational_to(&y.square()), "type": kind(&y)?}));
    let (sx, sy) = (x.square(), y.square());
    if sx.is_negative() && sy.is_negative() {
        let rel = match klein::plane_pair_relation(&x, &y)? {
            PlanePairRelation::Angle { cos_sq, sign } => json!({"kind": "angle", "cos_sq": rational_to(&cos_sq), "sign": sign}),
            PlanePairRelation::Parallel { sign } => json!({"kind": "parallel", "sign": sign}),
            PlanePairRelation::Hyperparallel { cosh_sq, sign } => {
                json!({"kind": "hyperparallel", "cosh_sq": rational_to(&cosh_sq), "sign": sign})
            }
        };
        out.insert("relation".into(), rel);
    }
    if sx.is_positive() && sy.is_positive() {
        out.insert(
            "cosh_sq_distance".into(),
            match klein::cosh_sq_distance(&x, &y) {
                Ok(v) => rational_to(&v),
                Err(e @ Error::OppositeCones) => json!({"error": e.to_string()}),
                Err(e) => return Err(e.into()),
            },
        );
    }
    if sx.is_negative() && !sy.is_negative() && !y.is_zero() {
        out.insert("half_space_contains".into(), json!(klein::half_space_contains(&x, &y)?));
    }
    if sy.is_positive() && sx.is_negative() {
        out.insert("cosh_sq_distance_to_mirror".into(), rational_to(&klein::cosh_sq_distance_to_subspace(&y, std::slice::from_ref(&x))?));
    }
    if let Some(r) = doc.get("radius") {
        let r = rational_from(r, "radius")?;
        out.insert("horosphere_member".into(), json!(klein::horosphere_member(&x, &r, &y)?));
    }
    if !sx.is_zero() {
        out.insert("reflection".into(), vector_to(&reflection(&x, &y)?));
    }
    Ok(Value::Object(out))
}

fn kind(v: &LatticeVector) -> Result<&'static str> {
    if v.is_zero() {
        return Err(Error::ZeroVector.into());
    }
    Ok(if v.square().is_negative() { "mirror" } else { point_name(klein::point_type(v)?) })
}

/// Indented `key: value` rendering of a report.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.is_array() && scalar(x).is_some()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(_) | Value::Array(_) => None,
        other => Some(other.to_string()),
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
