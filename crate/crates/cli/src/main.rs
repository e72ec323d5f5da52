//! `bq`: command-line access to arithmetic in `B_n/[P_n, P_n]`.
//!
//! Exit codes: 0 on success, 1 when the input violates a precondition of the
//! operation, 2 on malformed command lines.

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use braid_quotient::conjugacy::{are_conjugate, class_specs, conjugator_to_delta, standardize, Conjugacy};
use braid_quotient::frobenius::{
    build_frobenius, n0, solution_from_r, solve_family, standardize_frobenius, twisted_y,
};
use braid_quotient::orbits::{closed_form_orbits, enumerate_orbits, relabeled_basis};
use braid_quotient::subgroups::{b3_catalog, bieberbach_check, holonomy_matrix, HolonomySubgroup};
use braid_quotient::torsion::{
    abelian_realization, alpha_word, delta_composite_word, delta_word, torsion_witness, BlockSpec,
};
use braid_quotient::{BraidWord, Error, PairVector, Permutation, QuotientElement};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Seed used by sampling commands when `--seed` is not given.
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "bq", version, about = "Exact arithmetic in the quotients B_n/[P_n,P_n]")]
struct Cli {
    /// Number of strands.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// One element: a braid word such as "1 -2 3", or element JSON.
#[derive(Args)]
struct One {
    #[arg(allow_hyphen_values = true)]
    element: Option<String>,
    /// Element as JSON, instead of the positional word.
    #[arg(long)]
    element_json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word or element.
    Nf(One),
    /// Product of two elements.
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Inverse of an element.
    Inv(One),
    /// Integer power of an element.
    Pow {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(allow_hyphen_values = true)]
        exponent: i64,
    },
    /// Order of an element: a positive integer or "infinite".
    Order(One),
    /// The torsion element for a block spec, or for a single block with --r and --k.
    Delta {
        /// Comma-separated odd block sizes, non-decreasing.
        #[arg(long, conflicts_with_all = ["r", "k"])]
        blocks: Option<String>,
        #[arg(long, requires = "k")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        k: Option<usize>,
        /// Print the braid word instead of the normal form.
        #[arg(long)]
        emit_word: bool,
    },
    /// The element σ_{r+1}⋯σ_{r+k-1}.
    Alpha {
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        emit_word: bool,
    },
    /// Orbits of conjugation on the pairs {i,j}; with --blocks, the labelled closed form for δ.
    Orbits {
        #[command(flatten)]
        one: One,
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Whether two elements are conjugate, with a witness.
    ConjugateTest {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// A conjugator taking a finite-order element to its standard δ.
    Conjugator(One),
    /// A finite-order lift of a permutation, if one exists.
    TorsionWitness {
        /// Cycle notation, e.g. "(1,2,3)(4,5,6)".
        #[arg(long)]
        perm: String,
    },
    /// Number of conjugacy classes of elements of odd order k.
    CountClasses {
        #[arg(long)]
        k: u64,
    },
    /// Holonomy matrix of a permutation on the pair lattice.
    Holonomy {
        #[arg(long)]
        perm: String,
    },
    /// Whether the preimage of a permutation group is torsion-free.
    Bieberbach {
        /// Generators in cycle notation; repeat for several.
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// Preimages of the subgroups of S_3 with presentations and abelianizations.
    B3Catalog,
    /// The Frobenius group of order 21 in B_7/[P_7,P_7].
    #[command(subcommand)]
    Frobenius(Frobenius),
    /// Commuting generators realizing Z_{k_1} × ⋯ × Z_{k_s}.
    AbelianRealization {
        #[arg(long)]
        blocks: String,
    },
}

#[derive(Subcommand)]
enum Frobenius {
    /// Certificate for ⟨x, N·y⟩, with N from --r (default N₀).
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
    },
    /// The solution family, plus seeded samples checked one by one.
    Family {
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Conjugator onto ⟨x, v₀⟩, for N from --r or for explicit generators.
    Conjugator {
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["g3", "g7"])]
        r: Option<String>,
        /// Order-3 generator (word or JSON).
        #[arg(long, allow_hyphen_values = true, requires = "g7")]
        g3: Option<String>,
        /// Order-7 generator (word or JSON).
        #[arg(long, allow_hyphen_values = true, requires = "g3")]
        g7: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => f.write_str(m),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// What a command prints: text lines and the equivalent JSON.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json }
    }

    fn element(g: &QuotientElement) -> Self {
        Output::new(g.to_string(), g.to_json())
    }
}

struct Ctx {
    n: Option<usize>,
    seed: u64,
}

impl Ctx {
    fn n(&self) -> Res<usize> {
        self.n.ok_or_else(|| Failure::Usage("--n is required for this input".into()))
    }

    fn element(&self, s: &str) -> Res<QuotientElement> {
        if s.trim_start().starts_with('{') {
            let g = QuotientElement::from_json(s)?;
            if let Some(n) = self.n {
                if n != g.degree() {
                    return Err(Error::DegreeMismatch { left: g.degree(), right: n }.into());
                }
            }
            Ok(g)
        } else {
            Ok(QuotientElement::parse_word(self.n()?, s)?)
        }
    }

    fn one(&self, one: &One) -> Res<QuotientElement> {
        match (&one.element, &one.element_json) {
            (Some(_), Some(_)) => Err(Failure::Usage("give either an element or --element-json, not both".into())),
            (Some(s), None) | (None, Some(s)) => self.element(s),
            (None, None) => Err(Failure::Usage("missing element".into())),
        }
    }

    fn perm(&self, s: &str) -> Res<Permutation> {
        Ok(Permutation::parse(self.n()?, s)?)
    }

    fn spec(&self, s: &str) -> Res<BlockSpec> {
        Ok(BlockSpec::parse(self.n()?, s)?)
    }
}

fn word_output(w: &BraidWord) -> Output {
    Output::new(w.to_string(), json!({ "n": w.degree(), "word": w.to_string() }))
}

fn parse_r(s: Option<&str>) -> Res<Option<[i64; 6]>> {
    let Some(s) = s else { return Ok(None) };
    let values: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--r expects six comma-separated integers, got {s:?}")))?;
    let r: [i64; 6] = values
        .try_into()
        .map_err(|_| Failure::Usage(format!("--r expects six comma-separated integers, got {s:?}")))?;
    Ok(Some(r))
}

fn vector_json(v: &PairVector) -> Value {
    serde_json::to_value(v).expect("vectors serialize")
}

fn run(cli: &Cli) -> Res<Output> {
    let ctx = Ctx { n: cli.n, seed: cli.seed };
    match &cli.command {
        Command::Nf(one) => Ok(Output::element(&ctx.one(one)?)),
        Command::Mul { left, right } => Ok(Output::element(&ctx.element(left)?.mul(&ctx.element(right)?)?)),
        Command::Inv(one) => Ok(Output::element(&ctx.one(one)?.inv())),
        Command::Pow { element, exponent } => Ok(Output::element(&ctx.element(element)?.pow(*exponent))),
        Command::Order(one) => {
            let o = ctx.one(one)?.element_order();
            Ok(Output::new(o.to_string(), json!({ "order": o })))
        }
        Command::Delta { blocks, r, k, emit_word } => {
            let n = ctx.n()?;
            let word = match (blocks, r, k) {
                (Some(b), _, _) => delta_composite_word(&ctx.spec(b)?),
                (None, Some(r), Some(k)) => delta_word(*r, *k, n)?,
                _ => return Err(Failure::Usage("delta needs --blocks or both --r and --k".into())),
            };
            Ok(if *emit_word { word_output(&word) } else { Output::element(&QuotientElement::from_word(&word)) })
        }
        Command::Alpha { r, k, emit_word } => {
            let word = alpha_word(*r, *k, ctx.n()?)?;
            Ok(if *emit_word { word_output(&word) } else { Output::element(&QuotientElement::from_word(&word)) })
        }
        Command::Orbits { one, blocks } => match blocks {
            Some(b) => {
                if one.element.is_some() || one.element_json.is_some() {
                    return Err(Failure::Usage("--blocks takes no element".into()));
                }
                let spec = ctx.spec(b)?;
                let table = closed_form_orbits(&spec);
                let labels: Vec<Value> = relabeled_basis(&spec)
                    .into_iter()
                    .map(|(l, p)| json!({ "label": l.to_string(), "pair": p.key() }))
                    .collect();
                let mut text = table.to_string();
                for (l, p) in relabeled_basis(&spec) {
                    text.push_str(&format!("{l} = {p}\n"));
                }
                Ok(Output::new(text.trim_end(), json!({ "orbits": table.to_json(), "labels": labels })))
            }
            None => {
                let table = enumerate_orbits(&ctx.one(one)?);
                Ok(Output::new(table.to_string().trim_end(), json!({ "orbits": table.to_json() })))
            }
        },
        Command::ConjugateTest { left, right } => {
            let (g, h) = (ctx.element(left)?, ctx.element(right)?);
            Ok(match are_conjugate(&g, &h)? {
                Conjugacy::Conjugate(c) => Output::new(
                    format!("conjugate\nwitness: {c}\nword: {}", c.to_word().free_reduce()),
                    json!({ "result": "conjugate", "witness": c.to_json() }),
                ),
                Conjugacy::NotConjugate => {
                    Output::new("not conjugate", json!({ "result": "not conjugate", "witness": null }))
                }
                Conjugacy::Unknown => Output::new(
                    "unknown (both elements have infinite order)",
                    json!({ "result": "unknown", "witness": null }),
                ),
            })
        }
        Command::Conjugator(one) => {
            let g = ctx.one(one)?;
            let c = conjugator_to_delta(&g)?;
            let (_, spec) = standardize(&g)?;
            Ok(Output::new(
                format!("blocks: {spec}\nconjugator: {c}\nword: {}", c.to_word().free_reduce()),
                json!({ "blocks": spec.blocks(), "conjugator": c.to_json(), "word": c.to_word().free_reduce().to_string() }),
            ))
        }
        Command::TorsionWitness { perm } => match torsion_witness(&ctx.perm(perm)?)? {
            Some(g) => Ok(Output::new(
                format!("{g}\norder: {}", g.element_order()),
                json!({ "witness": g.to_json(), "order": g.element_order() }),
            )),
            None => Ok(Output::new("none (permutation has even order)", json!({ "witness": null }))),
        },
        Command::CountClasses { k } => {
            let specs = class_specs(ctx.n()?, *k)?;
            let listed: Vec<String> = specs.iter().map(|s| format!("({s})")).collect();
            let mut text = specs.len().to_string();
            if !listed.is_empty() {
                text.push_str(&format!("\ncycle types: {}", listed.join(" ")));
            }
            let types: Vec<&[usize]> = specs.iter().map(|s| s.blocks()).collect();
            Ok(Output::new(text, json!({ "count": specs.len(), "cycle_types": types })))
        }
        Command::Holonomy { perm } => {
            let m = holonomy_matrix(&ctx.perm(perm)?);
            let det = m.determinant()?;
            let rows = m.to_i64_rows().expect("0/1 entries");
            Ok(Output::new(
                format!("{}det: {det}", m),
                json!({ "matrix": rows, "det": det.to_string().parse::<i64>().expect("±1") }),
            ))
        }
        Command::Bieberbach { gens } => {
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            let h = HolonomySubgroup::parse(ctx.n()?, &refs)?;
            let free = bieberbach_check(&h)?;
            Ok(Output::new(
                format!("holonomy order: {}\nbieberbach: {free}", h.order()),
                json!({ "holonomy_order": h.order(), "bieberbach": free }),
            ))
        }
        Command::B3Catalog => {
            let cat = b3_catalog()?;
            let mut text = String::new();
            for e in &cat {
                text.push_str(&format!(
                    "{}: |H| = {}, bieberbach = {}, det = {:?}, relators hold = {}, H1 = {}\n",
                    e.name,
                    e.holonomy_order,
                    e.bieberbach,
                    e.det_spectrum,
                    e.relators_hold,
                    e.presentation.abelianization()
                ));
            }
            Ok(Output::new(text.trim_end(), serde_json::to_value(&cat).expect("catalog serializes")))
        }
        Command::Frobenius(f) => frobenius(&ctx, f),
        Command::AbelianRealization { blocks } => {
            let gens = abelian_realization(&ctx.spec(blocks)?);
            let text: Vec<String> =
                gens.iter().map(|g| format!("{g}  (order {}, word {})", g.element_order(), g.to_word().free_reduce())).collect();
            let js: Vec<Value> =
                gens.iter().map(|g| json!({ "element": g.to_json(), "order": g.element_order() })).collect();
            Ok(Output::new(text.join("\n"), json!({ "generators": js })))
        }
    }
}

fn frobenius(ctx: &Ctx, f: &Frobenius) -> Res<Output> {
    if let Some(n) = ctx.n {
        if n != 7 {
            return Err(Failure::Domain(format!("the Frobenius construction lives in n = 7, got --n {n}")));
        }
    }
    match f {
        Frobenius::Verify { r } => {
            let n = parse_r(r.as_deref())?.map_or_else(n0, solution_from_r);
            let w = build_frobenius(&n)?;
            let mut text = format!("N = {}\nx = {}\nv = {}\n", w.n, w.x, w.v);
            for c in &w.certificate {
                text.push_str(&format!("{}: {} [lhs {} ; rhs {}]\n", c.name, if c.holds() { "ok" } else { "FAILS" }, c.lhs, c.rhs));
            }
            Ok(Output::new(text.trim_end(), w.to_json()))
        }
        Frobenius::Family { samples } => {
            let fam = solve_family()?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let mut rows = Vec::new();
            let mut text = format!("rank: {}\nparticular: {}\n", fam.rank(), fam.particular);
            for k in &fam.kernel {
                text.push_str(&format!("kernel: {k}\n"));
            }
            for _ in 0..*samples {
                let r: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-3..=3));
                let n = solution_from_r(r);
                let w = build_frobenius(&n)?;
                text.push_str(&format!("sample r = {r:?}: N = {n} verified\n"));
                rows.push(json!({ "r": r, "N": vector_json(&w.n), "verified": true }));
            }
            Ok(Output::new(
                text.trim_end(),
                json!({
                    "rank": fam.rank(),
                    "particular": vector_json(&fam.particular),
                    "kernel": fam.kernel.iter().map(vector_json).collect::<Vec<_>>(),
                    "seed": ctx.seed,
                    "samples": rows,
                }),
            ))
        }
        Frobenius::Conjugator { r, g3, g7 } => {
            let (g3, g7) = match (g3, g7) {
                (Some(a), Some(b)) => {
                    let c = Ctx { n: Some(7), seed: ctx.seed };
                    (c.element(a)?, c.element(b)?)
                }
                _ => {
                    let n = parse_r(r.as_deref())?.map_or_else(n0, solution_from_r);
                    let w = build_frobenius(&n)?;
                    (w.x, twisted_y(&n))
                }
            };
            let out = standardize_frobenius(&g3, &g7)?;
            let text = format!(
                "parameters: {:?}\ntheta: {}\nconjugator: {}\nword: {}",
                out.parameters,
                out.theta,
                out.conjugator,
                out.conjugator.to_word().free_reduce()
            );
            Ok(Output::new(text, out.to_json()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).expect("json") } else { out.text };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
