//! Command line surface and dispatch. Every command delegates to the
//! library and renders its result canonically.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use cofree_hopf::braid::check_yang_baxter;
use cofree_hopf::cotensor::{CBasis, CotensorElement, CotensorSpace, MWord, SmashElement, SmashKey};
use cofree_hopf::grouphopf::{self, check_yd, check_yd_algebra, AbelianGroup, GroupElement};
use cofree_hopf::kernel::{Alphabet, Element, Render, Word};
use cofree_hopf::presets::{build_clifford, build_uqg};
use cofree_hopf::qalg::{self, check_braided_algebra, check_qsh_associativity, check_qsh_compatibility, deconcat, qsh};
use cofree_hopf::rotabaxter::{p_qsh, p_tilde_cotensor, p_tilde_smash, prop34_check, qsh_instance, rb_check, word_pairs};
use cofree_hopf::{Counterexample, Verdict};
use serde_json::{json, Value};

use crate::config::{self, ConfigError, Model};
use crate::expr::{parse_expr, Basis, Expr, GroupRef, ParseError};

#[derive(Parser, Debug)]
#[command(name = "cofree", version, about = "Exact computations in cofree Hopf algebras over abelian group algebras")]
pub struct Cli {
    /// Config file describing the Yetter-Drinfeld data; `-` reads stdin.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Degree cap for sample-based checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_degree: usize,
    /// Print the loaded config in canonical form.
    #[arg(long, global = true)]
    pub emit_config: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// Yang-Baxter equation for the braiding in force.
    Yb,
    /// Braided algebra axioms.
    Alg,
    /// Yetter-Drinfeld compatibility, and algebra compatibility if a product is given.
    Yd,
    /// Quasi-shuffle associativity and bialgebra compatibility up to the degree cap.
    Bialg,
    /// Weight-1 Rota-Baxter identities up to the degree cap.
    Rb,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a validator.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
    },
    /// Quantum quasi-shuffle product of two tensor-algebra elements.
    Qsh {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Product of the cofree Hopf algebra; plain words are read through ψ.
    Star {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Coproduct: deconcatenation for plain words, the cotensor coproduct otherwise.
    Comul {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Product of the smash (bosonization) algebra.
    SmashStar {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Apply the Rota-Baxter operator (a unit letter is adjoined if needed).
    RbApply {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Coinvariant element of the cotensor coalgebra to its tensor word.
    Phi {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Tensor word to its coinvariant lift.
    Psi {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Emit the config of a built-in family.
    #[command(subcommand)]
    Preset(Preset),
}

#[derive(Subcommand, Debug)]
pub enum Preset {
    /// Clifford-type data over ℤ/2 with n generators.
    Clifford {
        #[arg(long)]
        n: usize,
    },
    /// Quantum-group data from a Cartan matrix file (whitespace-separated rows).
    Uqg {
        #[arg(long)]
        cartan: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("argument '{arg}', {source}")]
    Expr { arg: String, source: ParseError },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] cofree_hopf::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// What the binary prints and the exit code it returns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

struct Outcome {
    text: String,
    json: Value,
    failed: bool,
}

impl Outcome {
    fn element<K: Ord + Clone + Render>(x: &Element<K>, al: &Alphabet) -> Self {
        let terms: Vec<Value> = x
            .rendered_terms(al)
            .into_iter()
            .map(|(neg, c, k)| {
                json!({
                    "negative": neg,
                    "coefficient": if c.is_empty() { "1".to_string() } else { c },
                    "basis": if k.is_empty() { "1".to_string() } else { k },
                })
            })
            .collect();
        let rendered = x.render(al);
        Outcome {
            json: json!({ "result": rendered, "terms": terms }),
            text: rendered,
            failed: false,
        }
    }

    fn verdict(name: &str, v: &Verdict) -> Self {
        let cx = v.counterexample().map(|c: &Counterexample| {
            json!({ "check": c.check, "witness": c.witness, "lhs": c.lhs, "rhs": c.rhs })
        });
        let text = match v {
            Verdict::Pass => format!("check {name}: pass"),
            Verdict::Fail(c) => format!("check {name}: FAIL\n{c}"),
        };
        Outcome {
            text,
            json: json!({ "check": name, "pass": v.is_pass(), "counterexample": cx }),
            failed: !v.is_pass(),
        }
    }

    fn config(text: String) -> Self {
        Outcome {
            json: json!({ "config": text }),
            text,
            failed: false,
        }
    }
}

fn read_path(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load_model(cli: &Cli) -> Result<Model, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Input("this command needs --config FILE".into()))?;
    Ok(config::load(&read_path(path)?)?)
}

fn expr(arg: &str) -> Result<Expr, CliError> {
    parse_expr(arg).map_err(|source| CliError::Expr {
        arg: arg.to_string(),
        source,
    })
}

fn group_element(g: &AbelianGroup, r: &GroupRef) -> Result<GroupElement, CliError> {
    match r {
        GroupRef::Exps(e) => Ok(g.element(e.clone())?),
        GroupRef::Name(n) => g
            .names()
            .iter()
            .position(|m| m == n)
            .map(|i| g.generator(i))
            .ok_or_else(|| CliError::Input(format!("unknown group element '{n}'"))),
    }
}

fn letter(al: &Alphabet, name: &str) -> Result<cofree_hopf::kernel::Letter, CliError> {
    al.letter(name)
        .ok_or_else(|| CliError::Input(format!("unknown letter '{name}'")))
}

/// A bare name that is not a letter but names a group generator.
fn lone_group_name(al: &Alphabet, g: &AbelianGroup, b: &Basis) -> Option<GroupRef> {
    match b {
        Basis::Word { items, smash: None } if items.len() == 1 && items[0].group.is_none() => {
            let n = &items[0].name;
            (al.letter(n).is_none() && g.names().contains(n)).then(|| GroupRef::Name(n.clone()))
        }
        _ => None,
    }
}

fn is_annotated(e: &Expr) -> bool {
    e.terms.iter().any(|(_, b)| match b {
        Basis::Group(_) => true,
        Basis::Word { items, .. } => items.iter().any(|i| i.group.is_some()),
        Basis::Unit => false,
    })
}

fn is_smash(e: &Expr) -> bool {
    e.terms
        .iter()
        .any(|(_, b)| matches!(b, Basis::Word { smash: Some(_), .. }))
}

/// An element of the tensor algebra: plain words and scalars only.
pub fn to_tensor(e: &Expr, al: &Alphabet) -> Result<Element<Word>, CliError> {
    let mut out = Element::zero(al.id());
    for (c, b) in &e.terms {
        let w = match b {
            Basis::Unit => Word::empty(),
            Basis::Word { items, smash: None } if items.iter().all(|i| i.group.is_none()) => Word(
                items
                    .iter()
                    .map(|i| letter(al, &i.name))
                    .collect::<Result<_, _>>()?,
            ),
            _ => return Err(CliError::Input("expected plain words of the tensor algebra".into())),
        };
        out.add_term(w, c);
    }
    Ok(out)
}

/// An element of the cotensor coalgebra. Group-annotated words are taken
/// literally and must satisfy the chain condition; plain words are lifted
/// through ψ; scalars and group literals land in the group algebra.
pub fn to_cotensor(e: &Expr, space: &CotensorSpace) -> Result<CotensorElement, CliError> {
    let (al, g) = (space.alphabet(), space.group());
    let mut out = space.zero();
    for (c, b) in &e.terms {
        let piece = if let Some(r) = lone_group_name(al, g, b) {
            space.group_element(group_element(g, &r)?)
        } else {
            match b {
                Basis::Unit => space.unit(),
                Basis::Group(r) => space.group_element(group_element(g, r)?),
                Basis::Word { items, smash: None } if items.iter().all(|i| i.group.is_none()) => {
                    let w = Word(items.iter().map(|i| letter(al, &i.name)).collect::<Result<_, _>>()?);
                    space.psi(&Element::word(space.id(), w))
                }
                Basis::Word { items, smash: None } if items.iter().all(|i| i.group.is_some()) => {
                    let m = items
                        .iter()
                        .map(|i| Ok((letter(al, &i.name)?, group_element(g, i.group.as_ref().expect("annotated"))?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    Element::basis(space.id(), CBasis::Word(MWord(m)))
                }
                _ => {
                    return Err(CliError::Input(
                        "a cotensor word annotates either every letter or none".into(),
                    ))
                }
            }
        };
        out.add_scaled(&piece, c);
    }
    if let Verdict::Fail(cx) = space.cotensor_check(&out) {
        return Err(CliError::Input(format!("not an element of the cotensor coalgebra: {}", cx.witness)));
    }
    Ok(out)
}

/// An element of the smash algebra `word#group`; a missing group leg is the
/// identity.
pub fn to_smash(e: &Expr, space: &CotensorSpace) -> Result<SmashElement, CliError> {
    let (al, g) = (space.alphabet(), space.group());
    let mut out = Element::zero(space.id());
    for (c, b) in &e.terms {
        let key = if let Some(r) = lone_group_name(al, g, b) {
            SmashKey(Word::empty(), group_element(g, &r)?)
        } else {
            match b {
                Basis::Unit => SmashKey(Word::empty(), g.identity()),
                Basis::Group(r) => SmashKey(Word::empty(), group_element(g, r)?),
                Basis::Word { items, smash } if items.iter().all(|i| i.group.is_none()) => {
                    let w = Word(items.iter().map(|i| letter(al, &i.name)).collect::<Result<_, _>>()?);
                    let h = match smash {
                        Some(r) => group_element(g, r)?,
                        None => g.identity(),
                    };
                    SmashKey(w, h)
                }
                _ => return Err(CliError::Input("smash words carry their group leg after '#'".into())),
            }
        };
        out.add_term(key, c);
    }
    Ok(out)
}

fn cotensor_space(model: &Model) -> Result<CotensorSpace, CliError> {
    if model.braiding_overridden {
        return Err(CliError::Input(
            "this command uses the Yetter-Drinfeld braiding; remove the [braiding] section".into(),
        ));
    }
    Ok(CotensorSpace::new(model.yd.clone())?)
}

fn unital_space(model: &Model) -> Result<CotensorSpace, CliError> {
    let space = cotensor_space(model)?;
    if space.algebra().unit().is_some() {
        Ok(space)
    } else {
        Ok(CotensorSpace::new(grouphopf::adjoin_unit(&model.yd)?)?)
    }
}

fn unital_algebra(model: &Model) -> Result<qalg::BraidedAlgebraSpec, CliError> {
    if model.algebra.unit().is_some() {
        Ok(model.algebra.clone())
    } else {
        Ok(qalg::adjoin_unit(&model.algebra)?)
    }
}

fn run_check(model: &Model, what: CheckKind, max_degree: usize) -> Result<Outcome, CliError> {
    let (name, verdict) = match what {
        CheckKind::Yb => ("yb", check_yang_baxter(&model.braiding)),
        CheckKind::Alg => ("alg", check_braided_algebra(&model.algebra)),
        CheckKind::Yd => {
            let v = check_yd(&model.yd);
            let v = if model.yd.mult().is_some() { v.and_then(|| check_yd_algebra(&model.yd)) } else { v };
            ("yd", v)
        }
        CheckKind::Bialg => (
            "bialg",
            check_qsh_associativity(&model.algebra, max_degree)
                .and_then(|| check_qsh_compatibility(&model.algebra, max_degree)),
        ),
        CheckKind::Rb => {
            let spec = unital_algebra(model)?;
            let pairs: Vec<_> = word_pairs(&spec, (0, max_degree), (0, max_degree))
                .into_iter()
                .filter(|(x, y)| x.max_degree() + y.max_degree() <= max_degree)
                .collect();
            let positive: Vec<_> = pairs
                .iter()
                .filter(|(x, y)| x.max_degree() > 0 && y.max_degree() > 0)
                .cloned()
                .collect();
            let inst = qsh_instance(&spec)?;
            ("rb", rb_check(&inst, &pairs).and_then(|| prop34_check(&spec, &positive)))
        }
    };
    Ok(Outcome::verdict(name, &verdict))
}

fn cartan_from_text(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|t| t.replace('−', "-").parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Input(format!("Cartan matrix line {}: expected integers", i + 1)))
        })
        .collect()
}

fn run_preset(p: &Preset) -> Result<Outcome, CliError> {
    let yd = match p {
        Preset::Clifford { n } => build_clifford(*n)?.yd,
        Preset::Uqg { cartan } => build_uqg(&cartan_from_text(&read_path(cartan)?)?)?.yd,
    };
    Ok(Outcome::config(config::emit(&config::document_from_yd(&yd))))
}

fn dispatch(cli: &Cli, notes: &mut Vec<String>) -> Result<Vec<Outcome>, CliError> {
    if let Some(Command::Preset(p)) = &cli.command {
        return Ok(vec![run_preset(p)?]);
    }
    let model = load_model(cli)?;
    notes.extend(model.notes.iter().cloned());
    let mut out = Vec::new();
    if cli.emit_config {
        out.push(Outcome::config(config::emit(&model.document)));
    }
    let Some(cmd) = &cli.command else {
        if out.is_empty() {
            return Err(CliError::Input("nothing to do: give a command or --emit-config".into()));
        }
        return Ok(out);
    };
    let al = model.yd.alphabet().clone();
    let result = match cmd {
        Command::Preset(_) => unreachable!("handled above"),
        Command::Check { what } => run_check(&model, *what, cli.max_degree)?,
        Command::Qsh { x, y } => {
            let (x, y) = (to_tensor(&expr(x)?, &al)?, to_tensor(&expr(y)?, &al)?);
            Outcome::element(&qsh(&model.algebra, &x, &y), &al)
        }
        Command::Star { x, y } => {
            let space = cotensor_space(&model)?;
            let (x, y) = (to_cotensor(&expr(x)?, &space)?, to_cotensor(&expr(y)?, &space)?);
            Outcome::element(&space.star(&x, &y), space.alphabet())
        }
        Command::SmashStar { x, y } => {
            let space = cotensor_space(&model)?;
            let (x, y) = (to_smash(&expr(x)?, &space)?, to_smash(&expr(y)?, &space)?);
            Outcome::element(&space.star_smash(&x, &y), space.alphabet())
        }
        Command::Comul { x } => {
            let e = expr(x)?;
            if is_annotated(&e) {
                let space = cotensor_space(&model)?;
                let x = to_cotensor(&e, &space)?;
                Outcome::element(&space.coproduct(&x), space.alphabet())
            } else {
                Outcome::element(&deconcat(&to_tensor(&e, &al)?), &al)
            }
        }
        Command::RbApply { x } => {
            let e = expr(x)?;
            if is_smash(&e) {
                let space = unital_space(&model)?;
                let x = to_smash(&e, &space)?;
                Outcome::element(&p_tilde_smash(&space, &x)?, space.alphabet())
            } else if is_annotated(&e) {
                let space = unital_space(&model)?;
                let x = to_cotensor(&e, &space)?;
                Outcome::element(&p_tilde_cotensor(&space, &x)?, space.alphabet())
            } else {
                let spec = unital_algebra(&model)?;
                let x = to_tensor(&e, spec.alphabet())?;
                Outcome::element(&p_qsh(&spec, &x)?, spec.alphabet())
            }
        }
        Command::Phi { x } => {
            let space = cotensor_space(&model)?;
            let x = to_cotensor(&expr(x)?, &space)?;
            Outcome::element(&space.phi(&x)?, space.alphabet())
        }
        Command::Psi { x } => {
            let space = cotensor_space(&model)?;
            let x = to_tensor(&expr(x)?, space.alphabet())?;
            Outcome::element(&space.psi(&x), space.alphabet())
        }
    };
    out.push(result);
    Ok(out)
}

/// Runs a parsed command line to completion without touching the process
/// streams.
pub fn run(cli: &Cli) -> Report {
    let mut notes = Vec::new();
    let result = dispatch(cli, &mut notes);
    let mut stderr: String = notes.iter().map(|n| format!("note: {n}\n")).collect();
    match result {
        Ok(outcomes) => {
            let failed = outcomes.iter().any(|o| o.failed);
            let stdout = match cli.format {
                Format::Text => outcomes.iter().map(|o| format!("{}\n", o.text.trim_end_matches('\n'))).collect(),
                Format::Json => {
                    let v: Vec<&Value> = outcomes.iter().map(|o| &o.json).collect();
                    let v = if v.len() == 1 { v[0].clone() } else { json!(v) };
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
            };
            Report {
                stdout,
                stderr,
                code: if failed { EXIT_FAIL } else { EXIT_PASS },
            }
        }
        Err(CliError::Core(cofree_hopf::Error::Precondition(cx))) => {
            stderr.push_str(&format!("error: precondition failed\n{cx}\n"));
            Report {
                stdout: String::new(),
                stderr,
                code: EXIT_FAIL,
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Report {
                stdout: String::new(),
                stderr,
                code: EXIT_ERROR,
            }
        }
    }
}
