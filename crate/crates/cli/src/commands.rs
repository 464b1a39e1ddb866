use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

use sparse_monoid::automata::{build_geodesic_fsa, build_pda, stack_oracle, Dfa, Language, Pda, StackAction};
use sparse_monoid::complex::{BuildOptions, Complex, FoldOrder};
use sparse_monoid::face_types::{enumerate_classes_with, ClassOrder, ClassTable};
use sparse_monoid::word::{is_sparse, Alphabet, Word};
use sparse_monoid::word_problem::{Outcome, RadiusPolicy, Solver, Trace};
use sparse_monoid::Error;

use crate::{Config, Format};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("audit failed: {0} violation(s)")]
    Audit(usize),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::NotSparse(_)) => 1,
            Failure::Usage(_) | Failure::Core(Error::Parse(_) | Error::Import(_)) => 2,
            Failure::Core(Error::ResourceLimit { .. }) => 3,
            Failure::Audit(_) => 4,
            Failure::Io(_) | Failure::Core(_) => 5,
        }
    }
}

type Exit = Result<u8, Failure>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Pda,
    Rpda,
    Fsa,
    Dfa,
    Classes,
    Complex(u32),
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "pda" => Target::Pda,
            "rpda" => Target::Rpda,
            "fsa" => Target::Fsa,
            "dfa" => Target::Dfa,
            "classes" => Target::Classes,
            _ => match s.strip_prefix("complex@") {
                Some(r) => Target::Complex(r.parse().map_err(|_| format!("bad radius in {s:?}"))?),
                None => return Err(format!("unknown target {s:?}; expected pda, rpda, fsa, dfa, classes or complex@R")),
            },
        })
    }
}

fn options(cfg: &Config) -> BuildOptions {
    BuildOptions {
        face_cap: cfg.face_cap,
        ..BuildOptions::default()
    }
}

fn write_out(cfg: &Config, mut body: String) -> Result<(), Failure> {
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cfg.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn json_string(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize")
}

fn require_sparse(w: &Word) -> Result<(), Failure> {
    match is_sparse(w).failure {
        Some(f) => Err(Error::NotSparse(f).into()),
        None => Ok(()),
    }
}

fn table(cfg: &Config, w: &Word) -> Result<ClassTable, Failure> {
    Ok(enumerate_classes_with(w, options(cfg), ClassOrder::default())?)
}

pub fn check(cfg: &Config, w: &Word) -> Exit {
    let report = is_sparse(w);
    let body = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => {
            let witness = report.witness().map(|(q, clause)| {
                json!({
                    "clause": clause.to_string(),
                    "q1": q.q1.to_string(),
                    "q1_prime": q.q1_prime.to_string(),
                    "q2": q.q2.to_string(),
                    "q2_prime": q.q2_prime.to_string(),
                })
            });
            json_string(json!({
                "word": w.to_string(),
                "sparse": report.verdict,
                "reason": report.failure.as_ref().map(ToString::to_string),
                "witness": witness,
            }))
        }
        _ => match &report.failure {
            None => "SPARSE".to_string(),
            Some(f) => format!("NOT SPARSE\n{f}"),
        },
    };
    write_out(cfg, body)?;
    Ok(if report.verdict { 0 } else { 1 })
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Identity => "IDENTITY",
        Outcome::NotIdentity => "NOT_IDENTITY",
        Outcome::NotInRClass => "NOT_IN_RCLASS",
    }
}

fn solver(cfg: &Config, w: &Word) -> Result<Solver, Failure> {
    require_sparse(w)?;
    Ok(Solver::with_options(w, options(cfg), RadiusPolicy::default())?)
}

pub fn solve(cfg: &Config, w: &Word, u: &Word) -> Exit {
    let v = solver(cfg, w)?.is_identity(u)?;
    let failed_at = match v.trace {
        Trace::Failed { position } => Some(position),
        Trace::Reached(_) => None,
    };
    let body = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => json_string(json!({
            "outcome": outcome_name(v.outcome),
            "distance": v.distance,
            "failed_at": failed_at,
        })),
        _ => match (v.distance, failed_at) {
            (Some(d), _) => format!("{}\ndistance {d}", outcome_name(v.outcome)),
            (None, Some(p)) => format!("{}\ntrace stops at position {p}", outcome_name(v.outcome)),
            (None, None) => outcome_name(v.outcome).to_string(),
        },
    };
    write_out(cfg, body)?;
    Ok(0)
}

pub fn rclass(cfg: &Config, w: &Word, u: &Word) -> Exit {
    let inside = solver(cfg, w)?.in_r_class(u)?;
    let body = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => json_string(json!({ "in_rclass": inside })),
        _ => if inside { "IN_RCLASS" } else { "NOT_IN_RCLASS" }.to_string(),
    };
    write_out(cfg, body)?;
    Ok(0)
}

pub fn geodesic(cfg: &Config, w: &Word, u: &Word) -> Exit {
    require_sparse(w)?;
    let fsa = build_geodesic_fsa(&table(cfg, w)?)?;
    let yes = fsa.accepts(u);
    let body = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => json_string(json!({ "geodesic": yes })),
        _ => if yes { "GEODESIC" } else { "NOT_GEODESIC" }.to_string(),
    };
    write_out(cfg, body)?;
    Ok(0)
}

fn pda_text(p: &Pda) -> String {
    let mut out = String::new();
    for (i, c) in p.classes().iter().enumerate() {
        let acc = if p.is_accepting(i) { " accepting" } else { "" };
        writeln!(out, "q{i} = {c}{acc}").unwrap();
    }
    writeln!(out, "state letter top -> state action").unwrap();
    for r in p.rules() {
        let top = r.top.map_or("*".to_string(), |t| format!("q{t}"));
        let action = match r.action {
            StackAction::Keep => "keep".to_string(),
            StackAction::Push(s) => format!("push q{s}"),
            StackAction::Pop => "pop".to_string(),
        };
        writeln!(out, "q{} {} {top} -> q{} {action}", r.from, r.letter, r.to).unwrap();
    }
    out
}

fn dfa_text(d: &Dfa) -> String {
    let mut out = format!("start s{}\n", d.start);
    for s in 0..d.state_count() {
        let acc = if d.accepting[s] { " accepting" } else { "" };
        let moves: Vec<String> = d
            .letters
            .iter()
            .zip(&d.delta[s])
            .filter_map(|(l, t)| t.map(|t| format!("{l}->s{t}")))
            .collect();
        writeln!(out, "s{s} [{}]{acc}: {}", d.labels[s], moves.join(" ")).unwrap();
    }
    out
}

fn complex_text(c: &Complex) -> String {
    let mut out = format!(
        "{} faces, {} vertices, {} edges\n",
        c.face_count(),
        c.vertex_count(),
        c.edge_count()
    );
    for f in c.face_ids() {
        let face = c.face(f).expect("listed faces exist");
        let boundary: Vec<String> = face.boundary().iter().map(|v| v.0.to_string()).collect();
        writeln!(
            out,
            "{f} parent {} rho_hat {} phi_hat {} boundary {}",
            face.parent(),
            face.rho_hat(),
            face.phi_hat(),
            boundary.join(" ")
        )
        .unwrap();
    }
    out
}

fn no_rendering(what: &str, format: Format) -> Failure {
    Failure::Usage(format!("{what} has no {format:?} rendering").to_lowercase())
}

pub fn emit(cfg: &Config, w: &Word, which: Target) -> Exit {
    require_sparse(w)?;
    let format = cfg.format.unwrap_or(Format::Dot);
    let body = match which {
        Target::Complex(r) => {
            let mut c = Complex::init_with(w, options(cfg))?;
            c.build_to_radius(r)?;
            match format {
                Format::Json => c.to_json(),
                Format::Dot => c.to_dot(),
                Format::Text => complex_text(&c),
            }
        }
        Target::Pda | Target::Rpda => {
            let lang = if which == Target::Pda { Language::Identity } else { Language::RClass };
            let p = build_pda(&table(cfg, w)?, lang)?;
            match format {
                Format::Json => p.to_json(),
                Format::Dot => p.to_dot(),
                Format::Text => pda_text(&p),
            }
        }
        Target::Fsa | Target::Dfa => {
            let fsa = build_geodesic_fsa(&table(cfg, w)?)?;
            let d = if which == Target::Fsa { fsa.as_dfa().clone() } else { fsa.minimize().dfa };
            match format {
                Format::Json => d.to_json(),
                Format::Dot => d.to_dot(if which == Target::Fsa { "geodesics" } else { "cone_types" }),
                Format::Text => dfa_text(&d),
            }
        }
        Target::Classes => {
            let t = table(cfg, w)?;
            match format {
                Format::Json => t.to_json(),
                Format::Text => {
                    let mut out = String::new();
                    for (i, c) in t.classes().iter().enumerate() {
                        writeln!(out, "{i} {c}").unwrap();
                    }
                    out
                }
                Format::Dot => return Err(no_rendering("classes", format)),
            }
        }
    };
    write_out(cfg, body)?;
    Ok(0)
}

/// Named audit results, violations rendered as text.
struct Checks(Vec<(String, Vec<String>)>);

impl Checks {
    fn add_report(&mut self, c: &Complex, radius: u32) {
        for (name, v) in c.full_audit(radius).checks {
            self.0.push((name.to_string(), v.iter().map(ToString::to_string).collect()));
        }
    }

    fn violations(&self) -> usize {
        self.0.iter().map(|(_, v)| v.len()).sum()
    }

    fn render(&self, cfg: &Config, header: serde_json::Value) -> Result<(), Failure> {
        let body = match cfg.format.unwrap_or(Format::Text) {
            Format::Json => json_string(json!({
                "complex": header,
                "passed": self.violations() == 0,
                "checks": self.0.iter().map(|(name, v)| json!({ "name": name, "violations": v })).collect::<Vec<_>>(),
            })),
            Format::Text => {
                let mut out = String::new();
                for (name, v) in &self.0 {
                    match v.first() {
                        None => writeln!(out, "PASS {name}").unwrap(),
                        Some(first) => writeln!(out, "FAIL {name} ({} violations): {first}", v.len()).unwrap(),
                    }
                }
                out
            }
            Format::Dot => return Err(no_rendering("audit", Format::Dot)),
        };
        write_out(cfg, body)
    }

    fn finish(self, cfg: &Config, header: serde_json::Value) -> Exit {
        self.render(cfg, header)?;
        match self.violations() {
            0 => Ok(0),
            n => Err(Failure::Audit(n)),
        }
    }
}

fn header(c: &Complex, radius: u32) -> serde_json::Value {
    json!({
        "word": c.word().to_string(),
        "radius": radius,
        "faces": c.face_count(),
        "vertices": c.vertex_count(),
    })
}

pub fn audit_relator(cfg: &Config, w: &Word, radius: u32, words: bool) -> Exit {
    require_sparse(w)?;
    let mut c = Complex::init_with(w, options(cfg))?;
    c.build_to_radius(radius)?;
    let mut checks = Checks(Vec::new());
    checks.add_report(&c, radius);

    let mut shuffled = Complex::init_with(
        w,
        BuildOptions {
            fold_order: FoldOrder::Shuffled(cfg.seed),
            ..options(cfg)
        },
    )?;
    shuffled.build_to_radius(radius)?;
    let same = shuffled.canonical_form() == c.canonical_form();
    checks.0.push((
        format!("fold order independence (seed {})", cfg.seed),
        if same { vec![] } else { vec!["canonical forms differ".to_string()] },
    ));

    if words {
        let found = cross_check(cfg, w)?;
        checks.0.push((format!("automata on words up to length {}", cfg.max_word_len), found));
    }
    checks.finish(cfg, header(&c, radius))
}

/// Runs both PDAs and the geodesic FSA against traces in the complex.
fn cross_check(cfg: &Config, w: &Word) -> Result<Vec<String>, Failure> {
    let t = table(cfg, w)?;
    let id = build_pda(&t, Language::Identity)?;
    let rc = build_pda(&t, Language::RClass)?;
    let fsa = build_geodesic_fsa(&t)?;
    let mut s = Solver::with_options(w, options(cfg), RadiusPolicy::default())?;
    s.prepare(cfg.max_word_len)?;
    let c = s.complex();
    let mut bad = Vec::new();
    for u in Word::all_up_to(Alphabet::covering(w), cfg.max_word_len) {
        let run = rc.run(&u);
        let problem = match sparse_monoid::word_problem::trace(c, &u) {
            Trace::Reached(v) => {
                if !run.accepted {
                    Some("rclass automaton rejects a traced word")
                } else if id.accepts(&u) != (v == c.base()) {
                    Some("identity automaton disagrees with the trace")
                } else if Some(run.state) != t.class_of(c, v).ok() || Some(&run.stack) != stack_oracle(&t, c, v).ok().as_ref() {
                    Some("final state or stack differs from the traced vertex")
                } else if fsa.accepts(&u) != (c.distance(v) as usize == u.len()) {
                    Some("geodesic automaton disagrees with the distance")
                } else {
                    None
                }
            }
            Trace::Failed { .. } if run.accepted || id.accepts(&u) => Some("automaton accepts an untraceable word"),
            Trace::Failed { .. } if fsa.accepts(&u) => Some("geodesic automaton accepts an untraceable word"),
            Trace::Failed { .. } => None,
        };
        if let Some(p) = problem {
            bad.push(format!("{u}: {p}"));
        }
    }
    Ok(bad)
}

pub fn audit_import(cfg: &Config, path: &Path, radius: Option<u32>) -> Exit {
    let text = std::fs::read_to_string(path)?;
    let mut c = Complex::from_json(&text, options(cfg))?;
    require_sparse(c.word())?;
    let radius = match radius {
        Some(r) => r,
        None => c.saturated_radius().map_or(0, |r| r.min(c.vertex_ids().map(|v| c.distance(v)).max().unwrap_or(0))),
    };
    let mut checks = Checks(Vec::new());
    checks.add_report(&c, radius);
    checks.finish(cfg, header(&c, radius))
}

pub fn cone_types(cfg: &Config, w: &Word) -> Exit {
    require_sparse(w)?;
    let fsa = build_geodesic_fsa(&table(cfg, w)?)?;
    let counts = fsa.minimize().cone_types();
    let body = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => json_string(json!({
            "word": w.to_string(),
            "fsa_states": fsa.as_dfa().state_count(),
            "live_states": counts.live_states,
            "with_dead_state": counts.with_dead_state,
        })),
        Format::Text => format!(
            "cone types: {}\n  live states of the minimal automaton, initial state included: {}\n  counting the dead state as well: {}",
            counts.live_states, counts.live_states, counts.with_dead_state
        ),
        Format::Dot => return Err(no_rendering("cone-types", Format::Dot)),
    };
    write_out(cfg, body)?;
    Ok(0)
}
