//! `quatslice`: command-line front end.
//!
//! Exit codes: 0 computed (positive verdict), 1 negative verdict,
//! 2 usage or parse error, 3 unsupported instance class.

mod input;

use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quatslice::error::{Error, Result};
use quatslice::ideal::{
    member, member_linear_oracle, quasi_prime_search_bounded, quasi_prime_violation_check, radical_member_bounded,
    random_quaternions, symmetrized_ideal, Membership, QuasiPrimeViolation, RightIdealBasis, SearchLimits,
};
use quatslice::numeric::Quat64;
use quatslice::syntax::{format_poly, max_var_index, parse_poly};
use quatslice::univar::{right_divide, roots, Num, RootValue, UnivarZeroSet};
use quatslice::variety::{
    closure_check, reducibility_witness, symmetrize_set, vc_compute, OrbitSet, VcOptions, VcOrbit, VcPoint, VcResult,
};
use quatslice::{suite, MonomialOrder, SlicePoly};

/// Environment variable: decimal digits shown for numeric values.
const DIGITS_VAR: &str = "QUATSLICE_DIGITS";
const DEFAULT_DIGITS: usize = 30;

#[derive(Parser)]
#[command(
    name = "quatslice",
    version,
    about = "Exact algebra of quaternionic slice regular polynomials"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Number of variables (default: largest index mentioned, at least 1).
    #[arg(long, global = true)]
    nvars: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Order::Degrevlex)]
    order: Order,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Degree bound for searches, symmetrized ideals and oracles.
    #[arg(long, global = true)]
    degree_bound: Option<u32>,
    /// Largest power tried by radical-check.
    #[arg(long, global = true, default_value_t = 3)]
    n_max: u32,
    /// Number of random sample quaternions for radical-check.
    #[arg(long, global = true, default_value_t = 20)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Slices for vc with non-real coefficients: `builtin` or `J,J';...`.
    #[arg(long, global = true)]
    slice_catalog: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Degrevlex,
    Lex,
}

#[derive(Args)]
struct IdealArg {
    /// Generators of the right ideal.
    #[arg(long, num_args = 1.., required = true)]
    ideal: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate P at a point, variables in index order then coefficient.
    Eval {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(long, num_args = 1.., required = true)]
        at: Vec<String>,
    },
    /// Star product P*Q.
    Mul {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Regular conjugate P^c.
    Conj {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Symmetrization P^s = P*P^c.
    Symm {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// P = D*Q + R in one variable.
    Divide {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Isolated zeros and zero spheres in one variable.
    Roots {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Reduced right Groebner basis.
    Gb {
        #[arg(required = true, allow_hyphen_values = true)]
        gens: Vec<String>,
    },
    /// Membership with a certificate or a normal form.
    Member {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Radical criterion on seeded random samples (evidence, not proof).
    RadicalCheck {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Verify P*Q in I, P not in I, Q^s not in I.
    QpVerify {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Bounded search for a quasi-prime violation.
    QpSearch {
        #[command(flatten)]
        ideal: IdealArg,
        /// Candidate pair P Q tried first; repeatable.
        #[arg(long, num_args = 2, value_names = ["P", "Q"], action = ArgAction::Append)]
        pair: Vec<String>,
    },
    /// Right ideal generated by symmetrizations, bounded when not principal.
    SymmIdeal {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Common zeros with commuting components.
    Vc {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Orbit closure of points `(a1,...,an)` and orbits `S[(x,y),...]`.
    Symmetrize {
        #[arg(required = true, allow_hyphen_values = true)]
        entries: Vec<String>,
    },
    /// Compare the orbit closure of V_c(I) with V_c of the symmetrized ideal.
    Thm36Check {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Search for a verified reducibility witness.
    Reducibility {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Run the bundled example suite.
    PaperExamples,
}

struct Ctx {
    nvars: usize,
    order: MonomialOrder,
    opts: Opts,
    digits: usize,
}

struct Out {
    text: String,
    json: Value,
    code: u8,
}

impl Out {
    fn ok(text: String, json: Value) -> Self {
        Out { text, json, code: 0 }
    }

    fn verdict(positive: bool, text: String, json: Value) -> Self {
        Out {
            text,
            json,
            code: if positive { 0 } else { 1 },
        }
    }
}

impl Ctx {
    fn poly(&self, s: &str) -> Result<SlicePoly> {
        parse_poly(s, self.nvars)
    }

    fn polys(&self, ss: &[String]) -> Result<Vec<SlicePoly>> {
        ss.iter().map(|s| self.poly(s)).collect()
    }

    fn ideal(&self, a: &IdealArg) -> Result<RightIdealBasis> {
        RightIdealBasis::new(self.polys(&a.ideal)?, self.order.clone())
    }

    fn fmt(&self, p: &SlicePoly) -> String {
        format_poly(p, &self.order)
    }

    fn pj(&self, p: &SlicePoly) -> Value {
        serde_json::to_value(p.to_json(&self.order)).expect("serializable")
    }

    fn num(&self, x: f64) -> String {
        // f64 carries about 17 significant digits
        format!("{:.*e}", self.digits.clamp(1, 17) - 1, x)
    }

    fn quat64(&self, q: &Quat64) -> String {
        format!(
            "{} + {}i + {}j + {}k",
            self.num(q[0]),
            self.num(q[1]),
            self.num(q[2]),
            self.num(q[3])
        )
    }

    fn numv(&self, n: &Num) -> String {
        match n {
            Num::Exact(r) => r.to_string(),
            Num::Approx(x) => self.num(*x),
        }
    }
}

fn ideal_inputs(cmd: &Cmd) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    match cmd {
        Cmd::Eval { p, .. } | Cmd::Conj { p } | Cmd::Symm { p } | Cmd::Roots { p } => out.push(p),
        Cmd::Mul { p, q } => out.extend([p.as_str(), q.as_str()]),
        Cmd::Divide { p, d } => out.extend([p.as_str(), d.as_str()]),
        Cmd::Gb { gens } => out.extend(gens.iter().map(String::as_str)),
        Cmd::Member { p, ideal } | Cmd::RadicalCheck { p, ideal } => {
            out.push(p);
            out.extend(ideal.ideal.iter().map(String::as_str));
        }
        Cmd::QpVerify { p, q, ideal } => {
            out.extend([p.as_str(), q.as_str()]);
            out.extend(ideal.ideal.iter().map(String::as_str));
        }
        Cmd::QpSearch { ideal, pair } => {
            out.extend(pair.iter().map(String::as_str));
            out.extend(ideal.ideal.iter().map(String::as_str));
        }
        Cmd::SymmIdeal { ideal } | Cmd::Vc { ideal } | Cmd::Thm36Check { ideal } | Cmd::Reducibility { ideal } => {
            out.extend(ideal.ideal.iter().map(String::as_str))
        }
        Cmd::Symmetrize { .. } | Cmd::PaperExamples => {}
    }
    out
}

fn infer_nvars(cli: &Cli) -> Result<usize> {
    if let Some(n) = cli.opts.nvars {
        if n == 0 {
            return Err(Error::Domain("--nvars must be at least 1".into()));
        }
        return Ok(n);
    }
    let mut n = 1;
    for s in ideal_inputs(&cli.cmd) {
        n = n.max(max_var_index(s)?);
    }
    match &cli.cmd {
        Cmd::Eval { at, .. } => Ok(n.max(at.len())),
        Cmd::Symmetrize { entries } => Ok(entries.first().map(|e| e.split(',').count()).unwrap_or(1)),
        _ => Ok(n),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) => 3,
        Error::Verification(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = std::env::var(DIGITS_VAR)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DIGITS);
    let result = infer_nvars(&cli).and_then(|nvars| {
        let order = match cli.opts.order {
            Order::Degrevlex => MonomialOrder::degrevlex(),
            Order::Lex => MonomialOrder::lex(),
        };
        let Cli { opts, cmd } = cli;
        let json = opts.json;
        run(
            &Ctx {
                nvars,
                order,
                opts,
                digits,
            },
            cmd,
        )
        .map(|o| (o, json))
    });
    match result {
        Ok((out, json)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cx: &Ctx, cmd: Cmd) -> Result<Out> {
    match cmd {
        Cmd::Eval { p, at } => {
            let p = cx.poly(&p)?;
            let pt = at
                .iter()
                .map(|s| quatslice::Quaternion::parse(s))
                .collect::<Result<Vec<_>>>()?;
            let v = p.eval(&pt)?;
            Ok(Out::ok(v.to_string(), json!({ "value": v })))
        }
        Cmd::Mul { p, q } => {
            let r = &cx.poly(&p)? * &cx.poly(&q)?;
            Ok(Out::ok(cx.fmt(&r), json!({ "result": cx.pj(&r) })))
        }
        Cmd::Conj { p } => {
            let r = cx.poly(&p)?.regular_conj();
            Ok(Out::ok(cx.fmt(&r), json!({ "result": cx.pj(&r) })))
        }
        Cmd::Symm { p } => {
            let r = cx.poly(&p)?.symmetrization();
            Ok(Out::ok(cx.fmt(&r), json!({ "result": cx.pj(&r) })))
        }
        Cmd::Divide { p, d } => {
            let (q, r) = right_divide(&cx.poly(&p)?, &cx.poly(&d)?)?;
            Ok(Out::ok(
                format!("Q = {}\nR = {}", cx.fmt(&q), cx.fmt(&r)),
                json!({ "quotient": cx.pj(&q), "remainder": cx.pj(&r) }),
            ))
        }
        Cmd::Roots { p } => {
            let z = roots(&cx.poly(&p)?)?;
            Ok(Out::ok(roots_text(cx, &z), z.to_json()))
        }
        Cmd::Gb { gens } => {
            let i = RightIdealBasis::new(cx.polys(&gens)?, cx.order.clone())?;
            let basis = i.reduced_basis();
            let text = basis.iter().map(|g| cx.fmt(g)).collect::<Vec<_>>().join("\n");
            Ok(Out::ok(
                text,
                json!({ "basis": basis.iter().map(|g| cx.pj(g)).collect::<Vec<_>>(), "unit": i.is_unit() }),
            ))
        }
        Cmd::Member { p, ideal } => {
            let i = cx.ideal(&ideal)?;
            let p = cx.poly(&p)?;
            let oracle = cx.opts.degree_bound.map(|d| member_linear_oracle(&p, &i, d));
            let oracle_text = oracle
                .map(|b| format!("\nlinear oracle at degree {}: {b}", cx.opts.degree_bound.unwrap()))
                .unwrap_or_default();
            match member(&p, &i)? {
                Membership::Member(cert) => {
                    let lines: Vec<String> = i
                        .generators()
                        .iter()
                        .zip(&cert.cofactors)
                        .map(|(g, h)| format!("  ({}) * ({})", cx.fmt(g), cx.fmt(h)))
                        .collect();
                    Ok(Out::ok(
                        format!("member\n{} =\n{}{oracle_text}", cx.fmt(&p), lines.join(" +\n")),
                        json!({
                            "member": true,
                            "certificate": {
                                "target": cx.pj(&cert.target),
                                "cofactors": cert.cofactors.iter().map(|h| cx.pj(h)).collect::<Vec<_>>(),
                            },
                            "oracle": oracle,
                        }),
                    ))
                }
                Membership::NonMember(r) => Ok(Out::verdict(
                    false,
                    format!("not a member\nnormal form: {}{oracle_text}", cx.fmt(&r)),
                    json!({ "member": false, "remainder": cx.pj(&r), "oracle": oracle }),
                )),
            }
        }
        Cmd::RadicalCheck { p, ideal } => {
            let i = cx.ideal(&ideal)?;
            let samples = random_quaternions(cx.opts.samples, cx.opts.seed);
            let r = radical_member_bounded(&cx.poly(&p)?, &i, cx.opts.n_max, &samples)?;
            let mut text: Vec<String> = r
                .samples
                .iter()
                .map(|s| match s.least_n {
                    Some(n) => format!("a = {}: N = {n}", s.a),
                    None => format!("a = {}: no witness up to N = {}", s.a, r.n_max),
                })
                .collect();
            text.push(format!("all succeeded: {}", r.all_succeeded));
            text.push(format!("note: {}", r.note));
            Ok(Out::verdict(
                r.all_succeeded,
                text.join("\n"),
                serde_json::to_value(&r).expect("serializable"),
            ))
        }
        Cmd::QpVerify { p, q, ideal } => {
            let i = cx.ideal(&ideal)?;
            let v = QuasiPrimeViolation::build(&cx.poly(&p)?, &cx.poly(&q)?, &i)?;
            let c = quasi_prime_violation_check(&v, &i)?;
            let text = match c.failing_clause() {
                None => "violation verified: P*Q in I, P not in I, Q^s not in I".to_string(),
                Some(f) => format!("not a violation: {f}"),
            };
            Ok(Out::verdict(
                c.holds(),
                text,
                json!({
                    "holds": c.holds(),
                    "product_in_ideal": c.product_in_ideal,
                    "p_not_in_ideal": c.p_not_in_ideal,
                    "qs_not_in_ideal": c.qs_not_in_ideal,
                    "failing_clause": c.failing_clause(),
                }),
            ))
        }
        Cmd::QpSearch { ideal, pair } => {
            let i = cx.ideal(&ideal)?;
            let pairs = pair
                .chunks(2)
                .map(|c| Ok((cx.poly(&c[0])?, cx.poly(&c[1])?)))
                .collect::<Result<Vec<_>>>()?;
            let limits = SearchLimits {
                max_degree: cx.opts.degree_bound.unwrap_or(3),
                seed: cx.opts.seed,
                ..SearchLimits::default()
            };
            let r = quasi_prime_search_bounded(&i, &pairs, &limits)?;
            let text = match &r.found {
                Some(v) => format!("violation: P = {}, Q = {}", cx.fmt(&v.p), cx.fmt(&v.q)),
                None => format!(
                    "no violation found among {} candidates; {}",
                    r.candidates_examined, r.note
                ),
            };
            let found = r.found.as_ref().map(|v| json!({ "p": cx.pj(&v.p), "q": cx.pj(&v.q) }));
            Ok(Out::verdict(
                r.found.is_some(),
                text,
                json!({
                    "found": found,
                    "candidates_examined": r.candidates_examined,
                    "exhaustive_over_q": r.exhaustive_over_q,
                    "note": r.note,
                }),
            ))
        }
        Cmd::SymmIdeal { ideal } => {
            let i = cx.ideal(&ideal)?;
            let s = symmetrized_ideal(&i, cx.opts.degree_bound.unwrap_or(2))?;
            let gens = s.ideal.generators();
            let mut text: Vec<String> = gens.iter().map(|g| cx.fmt(g)).collect();
            text.push(format!("exact: {}", s.exact));
            Ok(Out::ok(
                text.join("\n"),
                json!({ "generators": gens.iter().map(|g| cx.pj(g)).collect::<Vec<_>>(), "exact": s.exact }),
            ))
        }
        Cmd::Vc { ideal } => {
            let i = cx.ideal(&ideal)?;
            let v = vc_compute(&i, &vc_options(cx)?)?;
            Ok(Out::ok(vc_text(cx, &v), v.to_json()))
        }
        Cmd::Symmetrize { entries } => {
            let es = entries
                .iter()
                .map(|e| input::set_entry(e))
                .collect::<Result<Vec<_>>>()?;
            let s = symmetrize_set(&es)?;
            Ok(Out::ok(set_text(cx, &s), s.to_json()))
        }
        Cmd::Thm36Check { ideal } => {
            let i = cx.ideal(&ideal)?;
            let r = closure_check(&i, cx.opts.degree_bound.unwrap_or(2), &vc_options(cx)?)?;
            let text = format!(
                "orbit closure of V_c(I):\n{}\nV_c of the symmetrized ideal:\n{}\nequal: {}\nnote: {}",
                set_text(cx, &r.symmetrized_zeros),
                set_text(cx, &r.zeros_of_symmetrized),
                r.equal,
                r.note
            );
            Ok(Out::verdict(r.equal, text, r.to_json()))
        }
        Cmd::Reducibility { ideal } => {
            let i = cx.ideal(&ideal)?;
            let opts = vc_options(cx)?;
            let v = vc_compute(&i, &opts)?;
            let bound = cx.opts.degree_bound.unwrap_or(4);
            match reducibility_witness(&v, &i, bound, &opts)? {
                Some((a, b)) => {
                    let show =
                        |j: &RightIdealBasis| j.generators().iter().map(|g| cx.fmt(g)).collect::<Vec<_>>().join(", ");
                    let js = |j: &RightIdealBasis| j.generators().iter().map(|g| cx.pj(g)).collect::<Vec<_>>();
                    Ok(Out::ok(
                        format!("reducible: V_c(I) = V_c(<{}>) ∪ V_c(<{}>)", show(&a), show(&b)),
                        json!({ "found": true, "ideals": [js(&a), js(&b)] }),
                    ))
                }
                None => Ok(Out::verdict(
                    false,
                    format!("no witness found at bound {bound} (irreducibility is not claimed)"),
                    json!({ "found": false, "bound": bound }),
                )),
            }
        }
        Cmd::PaperExamples => {
            let outcomes = suite::run_all();
            let all = outcomes.iter().all(suite::CheckOutcome::ok);
            let text = outcomes
                .iter()
                .map(suite::CheckOutcome::line)
                .collect::<Vec<_>>()
                .join("\n");
            let checks: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "title": o.title,
                        "passed": o.ok(),
                        "elapsed_s": o.elapsed.as_secs_f64(),
                        "limit_s": o.limit.as_secs(),
                        "detail": o.detail,
                    })
                })
                .collect();
            Ok(Out::verdict(all, text, json!({ "checks": checks, "all_passed": all })))
        }
    }
}

fn vc_options(cx: &Ctx) -> Result<VcOptions> {
    Ok(VcOptions {
        slice_catalog: cx.opts.slice_catalog.as_deref().map(input::catalog).transpose()?,
    })
}

fn roots_text(cx: &Ctx, z: &UnivarZeroSet) -> String {
    let mut lines = Vec::new();
    for r in &z.isolated {
        let v = match &r.value {
            RootValue::Exact(q) => q.to_string(),
            RootValue::Approx(q) => format!("~ {} (residual {})", cx.quat64(q), cx.num(r.residual)),
        };
        lines.push(format!("isolated: {v} (multiplicity {})", r.multiplicity));
    }
    for s in &z.spheres {
        lines.push(format!(
            "sphere: x = {}, y^2 = {} (multiplicity {})",
            cx.numv(&s.x),
            cx.numv(&s.y2),
            s.multiplicity
        ));
    }
    if lines.is_empty() {
        lines.push("no zeros".into());
    }
    lines.join("\n")
}

fn point_text(cx: &Ctx, p: &VcPoint) -> String {
    match p {
        VcPoint::Exact(c) => c.to_string(),
        VcPoint::Approx(v) => format!("~ ({})", v.iter().map(|q| cx.quat64(q)).collect::<Vec<_>>().join(", ")),
    }
}

fn approx_orbit_text(cx: &Ctx, x: &[f64], y: &[f64]) -> String {
    let parts: Vec<String> = x
        .iter()
        .zip(y)
        .map(|(a, b)| format!("({},{})", cx.num(*a), cx.num(*b)))
        .collect();
    format!("~ S[{}]", parts.join(","))
}

fn vc_text(cx: &Ctx, v: &VcResult) -> String {
    let mut lines = Vec::new();
    for p in &v.real_points {
        lines.push(format!("real point: {}", point_text(cx, p)));
    }
    for o in &v.orbits {
        lines.push(match o {
            VcOrbit::Exact(a) => format!("orbit: {a}"),
            VcOrbit::Approx(a) => format!("orbit: {}", approx_orbit_text(cx, &a.x, &a.y)),
        });
    }
    for p in &v.isolated_nonreal {
        lines.push(format!("isolated point: {}", point_text(cx, p)));
    }
    if lines.is_empty() {
        lines.push("empty".into());
    }
    if v.partial {
        lines.push("partial: only the slices of the catalog were examined".into());
    }
    lines.join("\n")
}

fn set_text(cx: &Ctx, s: &OrbitSet) -> String {
    let mut lines: Vec<String> = s
        .real_points
        .iter()
        .map(|x| {
            format!(
                "real point: ({})",
                x.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    lines.extend(s.orbits.iter().map(|o| format!("orbit: {o}")));
    lines.extend(
        s.approx
            .iter()
            .map(|a| format!("orbit: {}", approx_orbit_text(cx, &a.x, &a.y))),
    );
    if lines.is_empty() {
        lines.push("empty".into());
    }
    lines.join("\n")
}
