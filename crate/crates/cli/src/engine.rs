//! Session execution: name environment, command dispatch, JSON reports.
//!
//! Reports are byte-stable across runs on identical input: object keys are
//! sorted, all numbers are exact fraction strings, and timings are emitted
//! only when explicitly requested.

use crate::session::{Arg, CommandStmt, Expr, OrderSpec, Session, Stmt};
use khovanskii::groebner::{buchberger, kernel_of_map, GroebnerBasis, Ideal};
use khovanskii::khovanskii::{
    build_mu_context, build_mu_context_from_lattice, default_leaves_bound, khovanskii_certificate,
    lattice_k, mu, phi_transformation, KhovanskiiCertificate, MuContextOptions, Verdict,
};
use khovanskii::linalg::{Lattice, RatMatrix};
use khovanskii::okounkov::{
    affine_equivalence, algorithm1_from_context, algorithm1_volume, extend_graded,
    nobody_direct_report, Algorithm1Options, NoBodyReport, Polytope,
};
use khovanskii::order::{MonomialOrder, ValuationTable, ValueOrder};
use khovanskii::poly::{Exponent, Polynomial};
use khovanskii::sagbi::{
    minimality_reduce, standard_variable_set, subduction, subduction_quotient, QuotientElement,
    SubductionResult,
};
use khovanskii::Rat;
use num_traits::{One, Signed};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub degree_bound: Option<u32>,
    pub seed: Option<u64>,
    pub timings: bool,
    pub svg_dir: Option<std::path::PathBuf>,
}

#[derive(Clone, Debug)]
struct RingDecl {
    vars: Vec<String>,
}

#[derive(Default)]
struct Env {
    rings: BTreeMap<String, RingDecl>,
    ring_order: Vec<String>,
    orders: BTreeMap<String, MonomialOrder>,
    polys: BTreeMap<String, (String, Polynomial)>,
    ideals: BTreeMap<String, (String, Ideal)>,
    valuations: BTreeMap<String, ValuationTable>,
    gradings: BTreeMap<String, Vec<u32>>,
    bases: BTreeMap<String, (String, Arc<GroebnerBasis>)>,
}

type CmdResult = Result<Value, String>;

impl Env {
    fn ring(&self, name: &str) -> Result<&RingDecl, String> {
        self.rings.get(name).ok_or_else(|| format!("undeclared ring `{name}`"))
    }

    fn poly(&self, name: &str) -> Result<&(String, Polynomial), String> {
        self.polys.get(name).ok_or_else(|| format!("undeclared polynomial `{name}`"))
    }

    fn ideal(&self, name: &str) -> Result<&(String, Ideal), String> {
        self.ideals.get(name).ok_or_else(|| format!("undeclared ideal `{name}`"))
    }

    fn valuation(&self, name: &str) -> Result<&ValuationTable, String> {
        self.valuations.get(name).ok_or_else(|| format!("undeclared valuation `{name}`"))
    }

    fn basis(&self, name: &str) -> Result<&(String, Arc<GroebnerBasis>), String> {
        self.bases.get(name).ok_or_else(|| format!("no basis bound to `{name}`"))
    }

    fn order(&self, name: &str) -> Result<MonomialOrder, String> {
        match name {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::GrLex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            _ => self
                .orders
                .get(name)
                .cloned()
                .ok_or_else(|| format!("undeclared order `{name}`")),
        }
    }

    /// Resolve the ring of a polynomial expression: every name must be a
    /// variable of the ring or a previously declared polynomial over it.
    fn resolve_ring(&self, expr: &Expr) -> Result<String, String> {
        let mut names = Vec::new();
        collect_vars(expr, &mut names);
        if names.is_empty() {
            return self
                .ring_order
                .last()
                .cloned()
                .ok_or_else(|| "constant polynomial needs a declared ring".to_string());
        }
        let mut matches: Vec<&String> = self
            .ring_order
            .iter()
            .filter(|rn| {
                let decl = &self.rings[*rn];
                names.iter().all(|n| {
                    decl.vars.contains(n)
                        || self.polys.get(n).is_some_and(|(r, _)| r == *rn)
                })
            })
            .collect();
        match matches.len() {
            0 => Err(format!("no declared ring accounts for all of the names {names:?}")),
            1 => Ok(matches.remove(0).clone()),
            _ => Err(format!("names {names:?} are ambiguous between rings {matches:?}")),
        }
    }
}

fn collect_vars(expr: &Expr, out: &mut Vec<String>) {
    match expr {
        Expr::Number(_) => {}
        Expr::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Expr::Neg(e) | Expr::Pow(e, _) => collect_vars(e, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

fn eval_expr(
    expr: &Expr,
    vars: &[String],
    polys: &BTreeMap<String, (String, Polynomial)>,
    ring: &str,
) -> Result<Polynomial, String> {
    let nvars = vars.len();
    let eval = |e: &Expr| eval_expr(e, vars, polys, ring);
    Ok(match expr {
        Expr::Number(c) => Polynomial::constant(nvars, c.clone()),
        Expr::Var(v) => {
            if let Some(idx) = vars.iter().position(|name| name == v) {
                Polynomial::variable(idx, nvars)
            } else if let Some((r, p)) = polys.get(v) {
                if r != ring {
                    return Err(format!("`{v}` lives in ring `{r}`, expression is over `{ring}`"));
                }
                p.clone()
            } else {
                return Err(format!("`{v}` is neither a variable nor a declared polynomial"));
            }
        }
        Expr::Neg(e) => eval(e)?.neg(),
        Expr::Add(a, b) => eval(a)?.add(&eval(b)?),
        Expr::Sub(a, b) => eval(a)?.sub(&eval(b)?),
        Expr::Mul(a, b) => eval(a)?.mul(&eval(b)?),
        Expr::Div(a, b) => {
            let denom = eval(b)?;
            if !denom.is_constant() || denom.is_zero() {
                return Err("division is only allowed by nonzero constants".into());
            }
            let c = denom.coefficient(&Exponent::zero(nvars));
            eval(a)?.scale(&c.recip())
        }
        Expr::Pow(e, k) => eval(e)?.pow(*k),
    })
}

/// Evaluate an expression against a bare variable list; test hook for the
/// render/parse round trip.
pub fn eval_expr_for_tests(expr: &Expr, vars: &[String]) -> Result<Polynomial, String> {
    eval_expr(expr, vars, &BTreeMap::new(), "")
}

/// Render a polynomial with the declared variable names; the output parses
/// back to an equal polynomial.
pub fn poly_text(p: &Polynomial, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Exponent, &Rat)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = if negative { -(*c).clone() } else { (*c).clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || e.is_zero() {
            factors.push(mag.to_string());
        }
        for (idx, &k) in e.entries().iter().enumerate() {
            if k == 0 {
                continue;
            }
            if k == 1 {
                factors.push(vars[idx].clone());
            } else {
                factors.push(format!("{}^{}", vars[idx], k));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn poly_json(p: &Polynomial, vars: &[String], ring: &str) -> Value {
    let mut terms: Vec<(&Exponent, &Rat)> = p.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    let term_values: Vec<Value> = terms
        .iter()
        .map(|(e, c)| {
            json!({
                "monomial": e.entries(),
                "coefficient": c.to_string(),
            })
        })
        .collect();
    json!({
        "ring": ring,
        "text": poly_text(p, vars),
        "terms": term_values,
    })
}

fn rat_matrix_json(m: &RatMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    json!(rows)
}

fn lattice_json(l: &Lattice) -> Value {
    let basis: Vec<Vec<String>> = l
        .basis_vectors()
        .iter()
        .map(|col| col.iter().map(|x| x.to_string()).collect())
        .collect();
    json!({
        "ambient_dim": l.ambient_dim(),
        "rank": l.rank(),
        "basis_columns": basis,
    })
}

fn polytope_json(p: &Polytope) -> Value {
    let vertices: Vec<Vec<String>> = p
        .vertices()
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect())
        .collect();
    json!({
        "ambient_dim": p.ambient_dim(),
        "affine_dim": p.affine_dim(),
        "vertices": vertices,
    })
}

fn certificate_json(cert: &KhovanskiiCertificate) -> Value {
    let verdict = match &cert.verdict {
        Verdict::CertifiedUpToBound(b) => format!("certified-up-to-bound({b})"),
        Verdict::Refuted(witness) => format!("refuted: {witness}"),
        Verdict::Inconclusive => "inconclusive".to_string(),
    };
    json!({
        "attained_twice": cert.attained_twice_ok,
        "standard_vars_complete": cert.standard_vars_complete,
        "leaves_bound": cert.leaves_bound,
        "verdict": verdict,
    })
}

fn subduction_json(res: &SubductionResult, vars: &[String], ring: &str) -> Value {
    let expansion: Vec<Value> = res
        .expansion
        .iter()
        .map(|(alpha, c)| {
            json!({
                "powers": alpha.entries(),
                "coefficient": c.to_string(),
            })
        })
        .collect();
    json!({
        "expansion": expansion,
        "remainder": poly_json(&res.remainder, vars, ring),
        "ideal_part": poly_json(&res.ideal_part, vars, ring),
    })
}

fn nobody_json(report: &NoBodyReport) -> Value {
    json!({
        "body": polytope_json(&report.body),
        "ell": report.ell,
        "m": report.m,
        "euclidean_volume": report.euclidean_volume.to_string(),
        "lattice_det": report.lattice_det.to_string(),
        "degree_gcd": report.degree_gcd,
        "degree_norm_sq": report.degree_norm_sq,
        "normalized_volume": report.normalized_volume.to_string(),
        "W": rat_matrix_json(&report.w),
        "V": rat_matrix_json(&report.v),
        "Lprime": lattice_json(&report.lprime),
        "degenerate_point": report.degenerate_point,
        "certificate": report.certificate.as_ref().map(certificate_json).unwrap_or(Value::Null),
    })
}

fn echo_command(cmd: &CommandStmt) -> String {
    let mut parts = vec![cmd.verb.clone()];
    for arg in &cmd.args {
        parts.push(echo_arg(arg));
    }
    if let Some(b) = &cmd.bind {
        parts.push(format!("as {b}"));
    }
    parts.join(" ")
}

fn echo_arg(arg: &Arg) -> String {
    match arg {
        Arg::Name(n) => n.clone(),
        Arg::NameList(ns) => format!("[{}]", ns.join(", ")),
        Arg::Matrix(rows) => {
            let rendered: Vec<String> = rows
                .iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rendered.join(","))
        }
        Arg::Keyword(k, inner) => format!("{k} {}", echo_arg(inner)),
        Arg::Nat(n) => n.to_string(),
    }
}

/// Execute a parsed session.  Returns the JSON report and the overall
/// success flag; execution stops at the first failing statement.
pub fn run_session(session: &Session, opts: &RunOptions) -> (Value, bool) {
    let mut env = Env::default();
    let mut entries: Vec<Value> = Vec::new();
    let mut ok = true;
    let mut svg_index = 0usize;

    for stmt in &session.statements {
        let started = std::time::Instant::now();
        let (echo, outcome) = execute_stmt(stmt, &mut env, opts, &mut svg_index);
        let timing = if opts.timings {
            json!(started.elapsed().as_millis() as u64)
        } else {
            Value::Null
        };
        match outcome {
            Ok(Value::Null) => {
                // Declarations produce no report entry.
            }
            Ok(result) => {
                entries.push(json!({
                    "command": echo,
                    "status": "ok",
                    "result": result,
                    "timing_ms": timing,
                }));
            }
            Err(message) => {
                entries.push(json!({
                    "command": echo,
                    "status": "error",
                    "message": message,
                    "timing_ms": timing,
                }));
                ok = false;
                break;
            }
        }
    }

    let report = json!({
        "defaults": {
            "degree_bound": opts.degree_bound.map(|b| json!(b)).unwrap_or(json!("auto")),
            "tiebreak": "grevlex",
            "seed": opts.seed.map(|s| json!(s)).unwrap_or(Value::Null),
        },
        "commands": entries,
        "ok": ok,
    });
    (report, ok)
}

fn execute_stmt(
    stmt: &Stmt,
    env: &mut Env,
    opts: &RunOptions,
    svg_index: &mut usize,
) -> (String, CmdResult) {
    match stmt {
        Stmt::Ring { name, vars, pos } => {
            let echo = format!("ring {name} vars {}", vars.join(" "));
            if env.rings.contains_key(name) {
                return (echo, Err(format!("ring `{name}` redeclared at {pos}")));
            }
            let mut seen = vars.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != vars.len() {
                return (echo, Err(format!("duplicate variable names at {pos}")));
            }
            env.rings.insert(name.clone(), RingDecl { vars: vars.clone() });
            env.ring_order.push(name.clone());
            (echo, Ok(Value::Null))
        }
        Stmt::Order { name, spec, .. } => {
            let echo = format!("order {name} ...");
            let order = match spec {
                OrderSpec::Builtin(kind) => env.order(kind),
                OrderSpec::Weight { rows, tiebreak } => env.order(tiebreak).map(|tb| {
                    MonomialOrder::weight_matrix(&RatMatrix::from_rows(rows.clone()), tb)
                }),
                OrderSpec::Valuation { table, tiebreak } => {
                    match (env.valuation(table), env.order(tiebreak)) {
                        (Ok(t), Ok(tb)) => Ok(MonomialOrder::valuation_induced(t.clone(), tb)),
                        (Err(e), _) | (_, Err(e)) => Err(e),
                    }
                }
            };
            match order {
                Ok(o) => {
                    env.orders.insert(name.clone(), o);
                    (echo, Ok(Value::Null))
                }
                Err(e) => (echo, Err(e)),
            }
        }
        Stmt::Poly { name, expr, .. } => {
            let echo = format!("poly {name} = ...");
            let ring_name = match env.resolve_ring(expr) {
                Ok(r) => r,
                Err(e) => return (echo, Err(e)),
            };
            let vars = env.rings[&ring_name].vars.clone();
            match eval_expr(expr, &vars, &env.polys, &ring_name) {
                Ok(p) => {
                    env.polys.insert(name.clone(), (ring_name, p));
                    (echo, Ok(Value::Null))
                }
                Err(e) => (echo, Err(e)),
            }
        }
        Stmt::Ideal { name, polys, .. } => {
            let echo = format!("ideal {name} = [{}]", polys.join(", "));
            let mut ring_name: Option<String> = None;
            let mut gens = Vec::new();
            for pname in polys {
                match env.poly(pname) {
                    Ok((r, p)) => {
                        if let Some(prev) = &ring_name {
                            if prev != r {
                                return (
                                    echo,
                                    Err(format!(
                                        "ideal generators live in different rings `{prev}` and `{r}`"
                                    )),
                                );
                            }
                        } else {
                            ring_name = Some(r.clone());
                        }
                        gens.push(p.clone());
                    }
                    Err(e) => return (echo, Err(e)),
                }
            }
            let Some(ring_name) = ring_name else {
                return (echo, Err("ideal needs at least one generator".into()));
            };
            let nvars = env.rings[&ring_name].vars.len();
            match Ideal::new(nvars, gens) {
                Ok(ideal) => {
                    env.ideals.insert(name.clone(), (ring_name, ideal));
                    (echo, Ok(Value::Null))
                }
                Err(e) => (echo, Err(e.to_string())),
            }
        }
        Stmt::Valuation { name, matrix, value_order, degrees, .. } => {
            let echo = format!("valuation {name} ...");
            let table = ValueOrder::new(RatMatrix::from_rows(value_order.clone()))
                .and_then(|vo| {
                    ValuationTable::new(
                        RatMatrix::from_rows(matrix.clone()),
                        vo,
                        degrees.clone(),
                    )
                });
            match table {
                Ok(t) => {
                    env.valuations.insert(name.clone(), t);
                    (echo, Ok(Value::Null))
                }
                Err(e) => (echo, Err(e.to_string())),
            }
        }
        Stmt::Grading { name, degrees, .. } => {
            let echo = format!("grading {name} ...");
            env.gradings.insert(name.clone(), degrees.clone());
            (echo, Ok(Value::Null))
        }
        Stmt::Command(cmd) => {
            let echo = echo_command(cmd);
            let result = execute_command(cmd, env, opts, svg_index);
            (echo, result)
        }
    }
}

fn arg_name<'a>(args: &'a [Arg], idx: usize, what: &str) -> Result<&'a str, String> {
    match args.get(idx) {
        Some(Arg::Name(n)) => Ok(n),
        _ => Err(format!("expected {what} as argument {}", idx + 1)),
    }
}

fn keyword_nat(args: &[Arg], key: &str) -> Option<u64> {
    args.iter().find_map(|a| match a {
        Arg::Keyword(k, inner) if k == key => match inner.as_ref() {
            Arg::Nat(n) => Some(*n),
            _ => None,
        },
        _ => None,
    })
}

fn keyword_matrix<'a>(args: &'a [Arg], key: &str) -> Option<&'a Vec<Vec<Rat>>> {
    args.iter().find_map(|a| match a {
        Arg::Keyword(k, inner) if k == key => match inner.as_ref() {
            Arg::Matrix(m) => Some(m),
            _ => None,
        },
        _ => None,
    })
}

fn execute_command(
    cmd: &CommandStmt,
    env: &mut Env,
    opts: &RunOptions,
    svg_index: &mut usize,
) -> CmdResult {
    *svg_index += 1;
    let idx = *svg_index;
    match cmd.verb.as_str() {
        "groebner" => {
            let ideal_name = arg_name(&cmd.args, 0, "an ideal name")?;
            let order_name = arg_name(&cmd.args, 1, "an order name")?;
            let (ring_name, ideal) = env.ideal(ideal_name)?.clone();
            let order = env.order(order_name)?;
            let gb = Arc::new(buchberger(&ideal, &order).map_err(|e| e.to_string())?);
            let vars = env.rings[&ring_name].vars.clone();
            let basis_json: Vec<Value> =
                gb.elements().iter().map(|g| poly_json(g, &vars, &ring_name)).collect();
            let result = json!({
                "ring": ring_name,
                "order": order_name,
                "basis": basis_json,
            });
            if let Some(bind) = &cmd.bind {
                env.bases.insert(bind.clone(), (ring_name, gb));
            }
            Ok(result)
        }
        "kernel" => {
            let ring_name = arg_name(&cmd.args, 0, "the presentation ring")?;
            let Some(Arg::NameList(targets)) = cmd.args.get(1) else {
                return Err("expected a bracketed list of polynomial names".into());
            };
            let ring = env.ring(ring_name)?.clone();
            if ring.vars.len() != targets.len() {
                return Err(format!(
                    "ring `{ring_name}` has {} variables but {} targets were given",
                    ring.vars.len(),
                    targets.len()
                ));
            }
            let mut target_polys = Vec::new();
            for t in targets {
                target_polys.push(env.poly(t)?.1.clone());
            }
            let kernel = kernel_of_map(&target_polys).map_err(|e| e.to_string())?;
            let gens: Vec<Value> = kernel
                .generators()
                .iter()
                .map(|g| poly_json(g, &ring.vars, ring_name))
                .collect();
            let result = json!({
                "ring": ring_name,
                "generators": gens,
            });
            if let Some(bind) = &cmd.bind {
                env.ideals.insert(bind.clone(), (ring_name.to_string(), kernel));
            }
            Ok(result)
        }
        "normalform" => {
            let poly_name = arg_name(&cmd.args, 0, "a polynomial name")?;
            let gb_name = arg_name(&cmd.args, 1, "a basis binding")?;
            let (pring, p) = env.poly(poly_name)?.clone();
            let (gring, gb) = env.basis(gb_name)?.clone();
            if pring != gring {
                return Err(format!("`{poly_name}` lives in `{pring}` but the basis is over `{gring}`"));
            }
            let vars = env.rings[&gring].vars.clone();
            let nf = gb.normal_form(&p);
            Ok(json!({ "normal_form": poly_json(&nf, &vars, &gring) }))
        }
        "subduct" => {
            let poly_name = arg_name(&cmd.args, 0, "a polynomial name")?;
            let Some(Arg::NameList(basis_names)) = cmd.args.get(1) else {
                return Err("expected a bracketed list of basis polynomial names".into());
            };
            let mode_name = arg_name(&cmd.args, 2, "an order name or basis binding")?;
            let (pring, p) = env.poly(poly_name)?.clone();
            let vars = env.rings[&pring].vars.clone();
            if let Ok((gring, gb)) = env.basis(mode_name).cloned() {
                if pring != gring {
                    return Err(format!(
                        "`{poly_name}` lives in `{pring}` but the basis is over `{gring}`"
                    ));
                }
                let class = QuotientElement::new(gb.clone(), &p);
                let mut basis = Vec::new();
                for b in basis_names {
                    let (bring, bp) = env.poly(b)?.clone();
                    if bring != gring {
                        return Err(format!("basis element `{b}` is in ring `{bring}`"));
                    }
                    basis.push(QuotientElement::new(gb.clone(), &bp));
                }
                let res = subduction_quotient(&class, &basis).map_err(|e| e.to_string())?;
                Ok(json!({
                    "mode": "quotient",
                    "result": subduction_json(&res, &vars, &pring),
                }))
            } else {
                let order = env.order(mode_name)?;
                let mut basis = Vec::new();
                for b in basis_names {
                    let (bring, bp) = env.poly(b)?.clone();
                    if bring != pring {
                        return Err(format!("basis element `{b}` is in ring `{bring}`"));
                    }
                    basis.push(bp);
                }
                let res = subduction(&p, &basis, &order).map_err(|e| e.to_string())?;
                Ok(json!({
                    "mode": "ambient",
                    "result": subduction_json(&res, &vars, &pring),
                }))
            }
        }
        "sagbi-vars" => {
            let gb_name = arg_name(&cmd.args, 0, "a basis binding")?;
            let (ring_name, gb) = env.basis(gb_name)?.clone();
            let vars = env.rings[&ring_name].vars.clone();
            let standard = standard_variable_set(&gb);
            let names: Vec<String> = standard.iter().map(|&i| vars[i].clone()).collect();
            let mut result = Map::new();
            result.insert("standard_variables".into(), json!(names));
            if let Some(Arg::Name(val_name)) = cmd.args.get(1) {
                let table = env.valuation(val_name)?.clone();
                let classes: Vec<QuotientElement> = standard
                    .iter()
                    .map(|&i| QuotientElement::variable(gb.clone(), i))
                    .collect();
                let minimal = minimality_reduce(&classes, &table).map_err(|e| e.to_string())?;
                let dropped: Vec<String> =
                    minimal.dropped.iter().map(|&i| vars[i].clone()).collect();
                let kept: Vec<String> = minimal
                    .kept
                    .iter()
                    .map(|c| poly_text(c.representative(), &vars))
                    .collect();
                result.insert("minimal_basis".into(), json!(kept));
                result.insert("dropped".into(), json!(dropped));
            }
            Ok(Value::Object(result))
        }
        "toric-lattice" => {
            let gb_name = arg_name(&cmd.args, 0, "a basis binding")?;
            let (_, gb) = env.basis(gb_name)?.clone();
            let k = lattice_k(&gb).map_err(|e| e.to_string())?;
            Ok(json!({ "lattice": lattice_json(&k) }))
        }
        "mu" => {
            let poly_name = arg_name(&cmd.args, 0, "a polynomial name")?;
            let gb_name = arg_name(&cmd.args, 1, "a basis binding")?;
            let val_name = arg_name(&cmd.args, 2, "a valuation name")?;
            let (pring, p) = env.poly(poly_name)?.clone();
            let (gring, gb) = env.basis(gb_name)?.clone();
            if pring != gring {
                return Err(format!("`{poly_name}` lives in `{pring}` but the basis is over `{gring}`"));
            }
            let table = env.valuation(val_name)?.clone();
            let ctx = build_mu_context(&gb, table.degrees(), &MuContextOptions::default())
                .map_err(|e| e.to_string())?;
            let class = QuotientElement::new(gb, &p);
            let value = mu(&class, &ctx).map_err(|e| e.to_string())?;
            let coords: Vec<String> = value.coords.iter().map(|c| c.to_string()).collect();
            Ok(json!({ "coords": coords }))
        }
        "certificate" => {
            let gb_name = arg_name(&cmd.args, 0, "a basis binding")?;
            let val_name = arg_name(&cmd.args, 1, "a valuation name")?;
            let (_, gb) = env.basis(gb_name)?.clone();
            let table = env.valuation(val_name)?.clone();
            let bound = keyword_nat(&cmd.args, "bound")
                .map(|b| b as u32)
                .or(opts.degree_bound)
                .unwrap_or_else(|| default_leaves_bound(&gb));
            let ctx = build_mu_context(&gb, table.degrees(), &MuContextOptions::default())
                .map_err(|e| e.to_string())?;
            let cert =
                khovanskii_certificate(&gb, &table, &ctx, bound).map_err(|e| e.to_string())?;
            Ok(json!({ "certificate": certificate_json(&cert) }))
        }
        "nobody-direct" => {
            let val_name = arg_name(&cmd.args, 0, "a valuation name")?;
            let table = env.valuation(val_name)?.clone();
            let report = nobody_direct_report(&table).map_err(|e| e.to_string())?;
            maybe_svg(opts, idx, "nobody-direct", &report.body)?;
            Ok(json!({
                "body": polytope_json(&report.body),
                "euclidean_volume": report.euclidean_volume.to_string(),
                "degree_gcd": report.degree_gcd,
                "value_lattice_det": report.value_lattice_det.to_string(),
                "normalized_volume": report.normalized_volume.to_string(),
            }))
        }
        "nobody-alg1" => {
            let report = pipeline_report(cmd, env, opts)?;
            maybe_svg(opts, idx, "nobody-alg1", &report.body)?;
            Ok(nobody_json(&report))
        }
        "affine-check" => {
            let (report, table) = match pipeline_with_table(cmd, env, opts) {
                Ok(x) => x,
                Err(e) => return Err(e),
            };
            let direct = nobody_direct_report(&table).map_err(|e| e.to_string())?;
            let degrees = table.degrees().ok_or("valuation carries no degrees")?.to_vec();
            // The map needs the valuation context; rebuild it the same way
            // the pipeline did.
            let ctx = pipeline_context(cmd, env)?;
            let (phi, phi_report) =
                phi_transformation(&table, &ctx).map_err(|e| e.to_string())?;
            if !phi_report.consistent {
                return Err(format!(
                    "valuation equivalence inconsistent on generators {:?}",
                    phi_report.mismatched_generators
                ));
            }
            let check = affine_equivalence(&report.body, &direct.body, &phi, &degrees);
            maybe_svg(opts, idx, "affine-check-pipeline", &report.body)?;
            maybe_svg(opts, idx, "affine-check-direct", &direct.body)?;
            match check {
                khovanskii::okounkov::AffineEquivalence::Pass { matrix, offset } => Ok(json!({
                    "status": "pass",
                    "matrix": rat_matrix_json(&matrix),
                    "offset": offset.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "normalized_volume_pipeline": report.normalized_volume.to_string(),
                    "normalized_volume_direct": direct.normalized_volume.to_string(),
                    "volumes_equal": report.normalized_volume == direct.normalized_volume,
                })),
                khovanskii::okounkov::AffineEquivalence::Fail(reason) => Ok(json!({
                    "status": "fail",
                    "reason": reason,
                })),
            }
        }
        other => Err(format!("unknown command `{other}`")),
    }
}

/// Shared pipeline construction for `nobody-alg1` and `affine-check`.
///
/// Two argument shapes: `<ideal> <valuation>` runs the full pipeline with
/// the order induced by the graded extension; `klattice <matrix> <valuation>`
/// starts from the lattice generated by the matrix columns, with an optional
/// `w <matrix>` basis override.
fn pipeline_report(
    cmd: &CommandStmt,
    env: &mut Env,
    opts: &RunOptions,
) -> Result<NoBodyReport, String> {
    pipeline_with_table(cmd, env, opts).map(|(r, _)| r)
}

fn pipeline_with_table(
    cmd: &CommandStmt,
    env: &mut Env,
    opts: &RunOptions,
) -> Result<(NoBodyReport, ValuationTable), String> {
    let first = arg_name(&cmd.args, 0, "an ideal name or `klattice`")?;
    if first == "klattice" {
        let Some(Arg::Matrix(rows)) = cmd.args.get(1) else {
            return Err("expected a matrix of lattice generators after `klattice`".into());
        };
        let val_name = arg_name(&cmd.args, 2, "a valuation name")?;
        let table = env.valuation(val_name)?.clone();
        let degrees =
            table.degrees().ok_or("valuation carries no degrees")?.to_vec();
        let mat = RatMatrix::from_rows(rows.clone());
        let gens: Vec<Vec<Rat>> = (0..mat.cols()).map(|j| mat.col(j)).collect();
        let k = Lattice::from_generators(mat.rows(), &gens).map_err(|e| e.to_string())?;
        let mut a1_opts = Algorithm1Options::default();
        if let Some(w) = keyword_matrix(&cmd.args, "w") {
            a1_opts.mu.w_override = Some(RatMatrix::from_rows(w.clone()));
        }
        let ctx = build_mu_context_from_lattice(k, Some(&degrees), &a1_opts.mu)
            .map_err(|e| e.to_string())?;
        let report = algorithm1_from_context(&ctx, None).map_err(|e| e.to_string())?;
        Ok((report, table))
    } else {
        let (_, ideal) = env.ideal(first)?.clone();
        let val_name = arg_name(&cmd.args, 1, "a valuation name")?;
        let table = env.valuation(val_name)?.clone();
        let degrees = table.degrees().ok_or("valuation carries no degrees")?.to_vec();
        let graded = extend_graded(&table, &degrees).map_err(|e| e.to_string())?;
        let order = MonomialOrder::valuation_induced(graded.clone(), MonomialOrder::GrevLex);
        let gb = Arc::new(buchberger(&ideal, &order).map_err(|e| e.to_string())?);
        let mut a1_opts = Algorithm1Options::default();
        a1_opts.certificate_bound =
            keyword_nat(&cmd.args, "bound").map(|b| b as u32).or(opts.degree_bound);
        let report =
            algorithm1_volume(&gb, &graded, &degrees, &a1_opts).map_err(|e| e.to_string())?;
        Ok((report, table))
    }
}

/// Rebuild the valuation context exactly as the pipeline did, for the
/// equivalence map.
fn pipeline_context(
    cmd: &CommandStmt,
    env: &mut Env,
) -> Result<khovanskii::khovanskii::MuContext, String> {
    let first = arg_name(&cmd.args, 0, "an ideal name or `klattice`")?;
    if first == "klattice" {
        let Some(Arg::Matrix(rows)) = cmd.args.get(1) else {
            return Err("expected a matrix of lattice generators after `klattice`".into());
        };
        let val_name = arg_name(&cmd.args, 2, "a valuation name")?;
        let table = env.valuation(val_name)?.clone();
        let degrees = table.degrees().ok_or("valuation carries no degrees")?.to_vec();
        let mat = RatMatrix::from_rows(rows.clone());
        let gens: Vec<Vec<Rat>> = (0..mat.cols()).map(|j| mat.col(j)).collect();
        let k = Lattice::from_generators(mat.rows(), &gens).map_err(|e| e.to_string())?;
        let mut mu_opts = MuContextOptions::default();
        if let Some(w) = keyword_matrix(&cmd.args, "w") {
            mu_opts.w_override = Some(RatMatrix::from_rows(w.clone()));
        }
        build_mu_context_from_lattice(k, Some(&degrees), &mu_opts).map_err(|e| e.to_string())
    } else {
        let (_, ideal) = env.ideal(first)?.clone();
        let val_name = arg_name(&cmd.args, 1, "a valuation name")?;
        let table = env.valuation(val_name)?.clone();
        let degrees = table.degrees().ok_or("valuation carries no degrees")?.to_vec();
        let graded = extend_graded(&table, &degrees).map_err(|e| e.to_string())?;
        let order = MonomialOrder::valuation_induced(graded, MonomialOrder::GrevLex);
        let gb = Arc::new(buchberger(&ideal, &order).map_err(|e| e.to_string())?);
        build_mu_context(&gb, Some(&degrees), &MuContextOptions::default())
            .map_err(|e| e.to_string())
    }
}

fn maybe_svg(
    opts: &RunOptions,
    index: usize,
    label: &str,
    body: &Polytope,
) -> Result<(), String> {
    let Some(dir) = &opts.svg_dir else { return Ok(()) };
    if body.ambient_dim() != 2 {
        return Ok(());
    }
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create svg dir: {e}"))?;
    let path = dir.join(format!("{index:02}-{label}.svg"));
    let svg = crate::svg::render_polytope(body).map_err(|e| e.to_string())?;
    std::fs::write(&path, svg).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

