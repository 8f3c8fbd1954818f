//! `monoid-geom`: load monoids, homs and actions from JSON files and run the
//! library's decision procedures and factorizations on them.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use monoid_geom::actions::{BiAction, RightAction};
use monoid_geom::classify::{classify_biact, classify_hom, ClassificationReport, SearchLimits};
use monoid_geom::closures::factorable_closure;
use monoid_geom::error::Error;
use monoid_geom::factorize::{
    collapse_slice, factor_pure_cs_biact, factor_pure_cs_hom, factor_tc_etale, factor_three,
};
use monoid_geom::galois::classify_lc_etale;
use monoid_geom::hom::SemigroupHom;
use monoid_geom::io::{self, Document, Workspace};
use monoid_geom::monoid::{FiniteMonoid, Side};
use monoid_geom::presentation::enumerate_presentation;
use monoid_geom::tensor::{compose_biacts, hom_to_biact, tensor, tensor_biact};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "monoid-geom", version, about = "Geometric morphisms between presheaf toposes on finite monoids")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    /// (surjection, inclusion)
    Si,
    /// (hyperconnected, localic)
    Hl,
    /// hyperconnected, equivalence, inclusion
    Three,
    /// (terminal-connected, étale)
    TcEtale,
    /// (pure, complete spread)
    PureCs,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file loads and satisfies its axioms.
    Validate { file: PathBuf },
    /// Decide the properties of the morphism induced by a semigroup hom.
    ClassifyHom { file: PathBuf },
    /// Decide the properties of the morphism induced by a biaction (or hom).
    ClassifyBiact {
        file: PathBuf,
        /// Largest |N| for which right congruences are enumerated.
        #[arg(long, default_value_t = 5)]
        congruence_cap: usize,
        /// Give up on the exponential searches after this many milliseconds.
        #[arg(long)]
        timeout_ms: Option<u64>,
    },
    /// Factor the morphism induced by a hom (or biaction, for pure-cs).
    Factorize {
        #[arg(long, value_enum)]
        system: System,
        file: PathBuf,
    },
    /// Right- or left-factorable closure of a set of elements.
    Closure {
        #[arg(long, value_enum)]
        side: SideArg,
        /// Comma-separated element labels.
        #[arg(long, value_delimiter = ',', required = true)]
        seed: Vec<String>,
        file: PathBuf,
    },
    /// X ⊗_N A for a right N-set X and a left N-set or (N, M)-biaction A.
    Tensor { right: PathBuf, left: PathBuf },
    /// A ⊗_L B for an (N, L)-biaction A and an (L, M)-biaction B.
    Compose { first: PathBuf, second: PathBuf },
    /// Locally constant étale morphisms into PSh(N), one per admissible subgroup.
    Galois { file: PathBuf },
    /// Present the slice over a right N-set as a monoid when it collapses.
    Slice {
        #[arg(long)]
        action: PathBuf,
    },
    /// Enumerate the monoid of a presentation.
    Present {
        #[arg(long)]
        file: PathBuf,
    },
}

/// What a command produced: text for people, JSON for scripts, and the
/// properties left undecided.
struct Output {
    text: String,
    json: Value,
    undecided: Vec<String>,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            undecided: Vec::new(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            if out.undecided.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("undecided: {}", out.undecided.join(", "));
                ExitCode::from(3)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": {"code": e.code(), "message": e.to_string()}}));
            }
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(if e.is_cap() { 3 } else { 2 })
        }
    }
}

fn load(path: &Path) -> Result<Document, Error> {
    Workspace::new().load_file(path)
}

fn load_monoid(path: &Path) -> Result<FiniteMonoid, Error> {
    Workspace::new().load_monoid(path)
}

fn wrong_kind(path: &Path, wanted: &str, found: &Document) -> Error {
    Error::MalformedTable(format!("{}: expected {wanted}, found a {}", path.display(), found.kind()))
}

fn load_hom(path: &Path) -> Result<SemigroupHom, Error> {
    match load(path)? {
        Document::Hom(h) => Ok(h),
        other => Err(wrong_kind(path, "a hom", &other)),
    }
}

fn load_biact(path: &Path) -> Result<BiAction, Error> {
    match load(path)? {
        Document::BiAction(a) => Ok(a),
        Document::Hom(h) => Ok(hom_to_biact(&h)),
        other => Err(wrong_kind(path, "a biaction or hom", &other)),
    }
}

fn load_right(path: &Path) -> Result<RightAction, Error> {
    match load(path)? {
        Document::RightAction(x) => Ok(x),
        other => Err(wrong_kind(path, "a right action", &other)),
    }
}

fn set(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn hom_line(h: &SemigroupHom) -> String {
    let pairs: Vec<String> = h.label_pairs().into_iter().map(|(x, y)| format!("{x}↦{y}")).collect();
    format!("{} → {}: {}", h.domain().name(), h.codomain().name(), pairs.join(", "))
}

fn report_output(report: ClassificationReport) -> Output {
    let undecided = report.undecided().iter().map(|p| p.name().to_string()).collect();
    Output {
        text: report.to_string(),
        json: serde_json::to_value(&report).expect("serializable"),
        undecided,
    }
}

fn run(command: &Command) -> Result<Output, Error> {
    match command {
        Command::Validate { file } => {
            let doc = load(file)?;
            let detail = match &doc {
                Document::Monoid(m) => format!("{} of order {}", m.name(), m.order()),
                Document::Hom(h) => hom_line(h),
                Document::RightAction(x) => format!("{} points over {}", x.size(), x.monoid().name()),
                Document::LeftAction(y) => format!("{} points over {}", y.size(), y.monoid().name()),
                Document::BiAction(a) => format!(
                    "({}, {})-biaction on {} points",
                    a.left_monoid().name(),
                    a.right_monoid().name(),
                    a.size()
                ),
                Document::Presentation(p) => {
                    format!("{} generators, {} relations", p.generators.len(), p.relations.len())
                }
            };
            Ok(Output::new(
                format!("ok: {} {detail}", doc.kind()),
                json!({"valid": true, "kind": doc.kind(), "document": doc.to_json()}),
            ))
        }
        Command::ClassifyHom { file } => Ok(report_output(classify_hom(&load_hom(file)?))),
        Command::ClassifyBiact {
            file,
            congruence_cap,
            timeout_ms,
        } => {
            let a = load_biact(file)?;
            let limits = SearchLimits {
                congruence_order_cap: *congruence_cap,
                deadline: timeout_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
                ..SearchLimits::default()
            };
            Ok(report_output(classify_biact(&a, &limits)?))
        }
        Command::Factorize { system, file } => factorize(*system, file),
        Command::Closure { side, seed, file } => {
            let m = load_monoid(file)?;
            let seed = seed.iter().map(|l| m.index_of(l)).collect::<Result<Vec<_>, _>>()?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let r = factorable_closure(&m, &seed, side);
            let labels = m.labels_of(&r.closure);
            Ok(Output::new(
                set(&labels),
                json!({"monoid": m.name(), "seed": m.labels_of(&r.seed), "closure": labels, "is_everything": r.is_everything()}),
            ))
        }
        Command::Tensor { right, left } => {
            let x = load_right(right)?;
            let t = match load(left)? {
                Document::LeftAction(a) => tensor(&x, &a)?,
                Document::BiAction(a) => tensor_biact(&x, &a)?,
                Document::Hom(h) => tensor_biact(&x, &hom_to_biact(&h))?,
                other => return Err(wrong_kind(left, "a left action or biaction", &other)),
            };
            let mut text = format!("{} classes: {}", t.num_classes(), set(&t.labels));
            let mut j = json!({"classes": t.labels});
            if let Some(act) = &t.induced_action {
                text.push_str(&format!("\nright {}-set", act.monoid().name()));
                j["action"] = io::right_action_to_json(act);
            }
            Ok(Output::new(text, j))
        }
        Command::Compose { first, second } => {
            let c = compose_biacts(&load_biact(first)?, &load_biact(second)?)?;
            Ok(Output::new(
                format!(
                    "({}, {})-biaction on {}",
                    c.left_monoid().name(),
                    c.right_monoid().name(),
                    set(c.underlying_set())
                ),
                io::biaction_to_json(&c),
            ))
        }
        Command::Galois { file } => {
            let n = load_monoid(file)?;
            let cl = classify_lc_etale(&n)?;
            let g = &cl.groupification.group;
            let mut text = format!("{} has order {}\n", g.name(), g.order());
            for e in &cl.entries {
                text.push_str(&format!(
                    "H = {}: {} = {} ⊆ {}{}\n",
                    set(&g.labels_of(&e.subgroup)),
                    e.monoid.name(),
                    set(e.monoid.labels()),
                    n.name(),
                    if e.lc_etale_verified { "" } else { " (not verified)" }
                ));
            }
            Ok(Output::new(text, cl.to_json()))
        }
        Command::Slice { action } => {
            let x = load_right(action)?;
            let n = x.monoid();
            let (cat, _) = x.category_of_elements();
            let base = format!(
                "elements category: {} objects, {} arrows\n",
                cat.num_objects(),
                cat.num_arrows()
            );
            match collapse_slice(n, &x) {
                Some((m, incl)) => Ok(Output::new(
                    format!("{base}slice ≃ PSh({}) via {}", m.name(), hom_line(&incl)),
                    json!({"objects": cat.num_objects(), "arrows": cat.num_arrows(), "monoid": io::monoid_to_json(&m), "inclusion": io::hom_to_json(&incl)}),
                )),
                None => Ok(Output::new(
                    format!("{base}no strong generator: the slice is not a monoid presheaf topos"),
                    json!({"objects": cat.num_objects(), "arrows": cat.num_arrows(), "monoid": null}),
                )),
            }
        }
        Command::Present { file } => {
            let p = match load(file)? {
                Document::Presentation(p) => p,
                other => return Err(wrong_kind(file, "a presentation", &other)),
            };
            let m = enumerate_presentation(&p)?;
            Ok(Output::new(
                format!("{} with {} elements: {}", m.name(), m.order(), set(m.labels())),
                io::monoid_to_json(&m),
            ))
        }
    }
}

fn factorize(system: System, file: &Path) -> Result<Output, Error> {
    if let System::PureCs = system {
        let f = match load(file)? {
            Document::Hom(h) => factor_pure_cs_hom(&h),
            Document::BiAction(a) => factor_pure_cs_biact(&a)?,
            other => return Err(wrong_kind(file, "a hom or biaction", &other)),
        };
        let mut text = format!(
            "components: {} over {}\n",
            set(f.components_object.underlying_set()),
            f.components_object.monoid().name()
        );
        match &f.intermediate_as_monoid {
            Some(im) => text.push_str(&format!("intermediate: PSh({}) via {}", im.monoid.name(), hom_line(&im.inclusion))),
            None => text.push_str("intermediate: not a monoid presheaf topos"),
        }
        return Ok(Output::new(text, f.to_json()));
    }
    let phi = load_hom(file)?;
    let pair = |name: [&str; 2], (a, b): (SemigroupHom, SemigroupHom)| {
        Output::new(
            format!("{}: {}\n{}: {}", name[0], hom_line(&a), name[1], hom_line(&b)),
            json!({name[0]: io::hom_to_json(&a), name[1]: io::hom_to_json(&b)}),
        )
    };
    Ok(match system {
        System::Si => pair(["surjection", "inclusion"], factor_three(&phi).surjection_inclusion()),
        System::Hl => pair(["hyperconnected", "localic"], factor_three(&phi).hyperconnected_localic()),
        System::Three => {
            let f = factor_three(&phi);
            Output::new(
                format!(
                    "pi: {}\npsi: {}\niota: {}",
                    hom_line(&f.pi),
                    hom_line(&f.psi),
                    hom_line(&f.iota)
                ),
                f.to_json(),
            )
        }
        System::TcEtale => {
            let f = factor_tc_etale(&phi);
            Output::new(
                format!(
                    "k: {}\nj1: {}\ntau: {}\nslice: {}",
                    hom_line(&f.k),
                    hom_line(&f.j1),
                    hom_line(&f.tau),
                    match &f.slice_as_monoid {
                        Some((m, _)) => format!("PSh({})", m.name()),
                        None => "not a monoid presheaf topos".into(),
                    }
                ),
                f.to_json(),
            )
        }
        System::PureCs => unreachable!(),
    })
}
