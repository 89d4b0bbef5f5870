//! Command dispatch over a loaded workspace.

use nilaff::affine::AffTrans;
use nilaff::closure::{
    check_hull_axioms, crystallographic_verdict, hirsch_data, translation_verdict, unit_sum_string, ClosureData,
    GroupPresentation, LeviKind, TranslationSpace,
};
use nilaff::morphism::{
    classify_affine_maps, extend_to_hulls, fixed_points_reductive, image_coset_cocompact, induce_affine_map,
    restrict_action, verify_intertwining, FixedCoset, ReductiveKind,
};
use nilaff::polymap::{conjugate_action, induce_polynomial_map, make_translation_like, poly_intertwines};
use nilaff::Error;

use crate::report::Report;
use crate::syntax::fmt_vector;
use crate::workspace::{MorphismDecl, Workspace};

/// A command applied to one item of a workspace.
#[derive(Debug, Clone, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Load and validate the input files.
    Check,
    /// Whether the unipotent radical of the hull acts by left translations.
    TranslationLike {
        #[arg(long)]
        group: String,
    },
    /// Zariski closure data and the three hull axioms.
    Hull {
        #[arg(long)]
        group: String,
    },
    /// Hirsch length from the declared series or the kernel lattice.
    Hirsch {
        #[arg(long)]
        group: String,
    },
    /// Whether the action is crystallographic.
    Crystallographic {
        #[arg(long)]
        group: String,
    },
    /// Whether the image of a word is unipotent.
    Unipotent {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
    },
    /// Fixed points of the Levi part of the hull.
    FixedPoints {
        #[arg(long)]
        group: String,
    },
    /// Restrict the action to the orbit coset of the hull through a Levi fixed point.
    Restrict {
        #[arg(long)]
        group: String,
    },
    /// Construct an affine map intertwining the two actions along a morphism.
    Induce {
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// All affine maps intertwining along a morphism.
    Classify {
        #[arg(long)]
        morphism: String,
    },
    /// Extend a surjective morphism to the algebraic hulls.
    Extend {
        #[arg(long)]
        morphism: String,
    },
    /// Check that a morphism respects every source relator.
    VerifyMorphism {
        #[arg(long)]
        morphism: String,
    },
    /// Polynomial chart conjugating the action to a translation-like one.
    MakeTranslationLike {
        #[arg(long)]
        group: String,
    },
    /// Polynomial intertwining map along a morphism.
    InducePoly {
        #[arg(long)]
        morphism: String,
    },
    /// Run the expectations of every fixture in the corpus directory.
    Corpus {
        #[arg(long)]
        dir: Option<std::path::PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::TranslationLike { .. } => "translation-like",
            Command::Hull { .. } => "hull",
            Command::Hirsch { .. } => "hirsch",
            Command::Crystallographic { .. } => "crystallographic",
            Command::Unipotent { .. } => "unipotent",
            Command::FixedPoints { .. } => "fixed-points",
            Command::Restrict { .. } => "restrict",
            Command::Induce { .. } => "induce",
            Command::Classify { .. } => "classify",
            Command::Extend { .. } => "extend",
            Command::VerifyMorphism { .. } => "verify-morphism",
            Command::MakeTranslationLike { .. } => "make-translation-like",
            Command::InducePoly { .. } => "induce-poly",
            Command::Corpus { .. } => "corpus",
        }
    }

    /// Builds the command for an `[expect]` line naming a group or morphism.
    pub fn for_item(command: &str, item: &str) -> Option<Command> {
        let group = item.to_string();
        let morphism = item.to_string();
        Some(match command {
            "check" => Command::Check,
            "translation-like" => Command::TranslationLike { group },
            "hull" => Command::Hull { group },
            "hirsch" => Command::Hirsch { group },
            "crystallographic" => Command::Crystallographic { group },
            "fixed-points" => Command::FixedPoints { group },
            "restrict" => Command::Restrict { group },
            "make-translation-like" => Command::MakeTranslationLike { group },
            "induce" => Command::Induce {
                morphism,
                source: None,
                target: None,
            },
            "classify" => Command::Classify { morphism },
            "extend" => Command::Extend { morphism },
            "verify-morphism" => Command::VerifyMorphism { morphism },
            "induce-poly" => Command::InducePoly { morphism },
            _ => return None,
        })
    }
}

/// The result of a command: its report and a boolean verdict.
///
/// Predicates answer a question and succeed either way; constructions fail when the verdict is false.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub verdict: bool,
    pub predicate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandError {
    /// Unresolved reference or malformed argument.
    Usage(String),
    /// Outside the quasi-unipotent class without a declared hull.
    Scope(String),
    /// Any other mathematical failure.
    Math(String),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Usage(m) => write!(f, "usage error: {m}"),
            CommandError::Scope(m) => write!(f, "scope violation: {m}"),
            CommandError::Math(m) => write!(f, "error: {m}"),
        }
    }
}

fn lift(e: Error) -> CommandError {
    match e {
        Error::ScopeViolation(m) => CommandError::Scope(m),
        other => CommandError::Math(other.to_string()),
    }
}

/// Separates scope violations (fatal) from refusals that become a negative verdict.
fn attempt<T>(r: nilaff::Result<T>) -> Result<Result<T, String>, CommandError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::ScopeViolation(m)) => Err(CommandError::Scope(m)),
        Err(e) => Ok(Err(e.to_string())),
    }
}

fn group<'a>(ws: &'a Workspace, name: &str) -> Result<&'a GroupPresentation, CommandError> {
    ws.group(name).ok_or_else(|| CommandError::Usage(format!("unknown group `{name}`")))
}

fn morphism<'a>(ws: &'a Workspace, name: &str) -> Result<&'a MorphismDecl, CommandError> {
    ws.morphism(name).ok_or_else(|| CommandError::Usage(format!("unknown morphism `{name}`")))
}

fn closure(pres: &GroupPresentation) -> Result<ClosureData, CommandError> {
    ClosureData::compute(pres).map_err(lift)
}

fn predicate(report: Report, verdict: bool) -> Outcome {
    Outcome {
        report,
        verdict,
        predicate: true,
    }
}

fn construction(report: Report, verdict: bool) -> Outcome {
    Outcome {
        report,
        verdict,
        predicate: false,
    }
}

fn refused(mut report: Report, reason: String) -> Outcome {
    report.push("result", "refused");
    report.push("reason", reason);
    construction(report, false)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

fn push_coset(report: &mut Report, prefix: &str, coset: &FixedCoset) {
    if coset.is_empty() {
        report.push(format!("{prefix} empty"), true);
        return;
    }
    report.push(format!("{prefix} basepoint"), coset.basepoint());
    report.push(format!("{prefix} dim"), coset.dim());
    report.push(format!("{prefix} basis"), join(coset.subalgebra_basis().iter().map(|v| fmt_vector(v))));
}

fn levi_fixed_coset(pres: &GroupPresentation, c: &ClosureData) -> Result<FixedCoset, CommandError> {
    let gens: Vec<AffTrans> = c.levi.generators().into_iter().cloned().collect();
    let kind = match c.levi.kind {
        LeviKind::Finite => ReductiveKind::Finite,
        LeviKind::DeclaredTorus { .. } => ReductiveKind::Torus,
    };
    fixed_points_reductive(pres.algebra(), &gens, kind).map_err(lift)
}

/// Runs one command; `Corpus` is handled by the caller.
pub fn execute(ws: &Workspace, command: &Command) -> Result<Outcome, CommandError> {
    let name = command.name();
    match command {
        Command::Check => {
            let mut r = Report::new(name, "");
            r.push("algebras", join(ws.algebras.iter().map(|(n, _)| n)));
            r.push("groups", join(ws.groups.iter().map(|(n, _)| n)));
            r.push("morphisms", join(ws.morphisms.iter().map(|(n, _)| n)));
            r.push("result", "loaded");
            Ok(predicate(r, true))
        }
        Command::TranslationLike { group: g } => {
            let c = closure(group(ws, g)?)?;
            let v = translation_verdict(&c);
            let mut r = Report::new(name, g);
            r.push("translation-like", v.translation_like);
            match &v.witness {
                Some(w) => {
                    let w = unit_sum_string(w);
                    r.push("witness", &w);
                    r.push("summary", format!("false; witness log vector {w}"));
                }
                None => r.push("summary", "true"),
            }
            Ok(predicate(r, v.translation_like))
        }
        Command::Hull { group: g } => {
            let pres = group(ws, g)?;
            let c = closure(pres)?;
            let h = check_hull_axioms(pres, &c);
            let mut r = Report::new(name, g);
            r.push("unipotent dim", c.unipotent_dim());
            r.push("unipotent basis", join(c.unipotent_log_basis.iter().map(unit_sum_string)));
            r.push(
                "levi kind",
                match c.levi.kind {
                    LeviKind::Finite => "finite",
                    LeviKind::DeclaredTorus { .. } => "declared torus",
                },
            );
            r.push("levi generators", join(c.levi.generators()));
            for (i, a) in h.axioms.iter().enumerate() {
                r.push(format!("axiom {}", i + 1), format!("{}; {}", a.status, a.detail));
            }
            if let Some(w) = &h.witness {
                r.push("witness", w);
            }
            r.push("result", if h.all_pass() { "pass" } else { "fail" });
            Ok(construction(r, h.all_pass()))
        }
        Command::Hirsch { group: g } => {
            let pres = group(ws, g)?;
            let c = closure(pres)?;
            let h = hirsch_data(pres, &c).map_err(lift)?;
            let mut r = Report::new(name, g);
            r.push("hirsch length", h.value);
            if let Some(s) = h.from_series {
                r.push("from series", s);
            }
            if let Some(l) = h.from_lattice {
                r.push("from lattice", l);
            }
            Ok(predicate(r, true))
        }
        Command::Crystallographic { group: g } => {
            let pres = group(ws, g)?;
            let c = closure(pres)?;
            let v = crystallographic_verdict(pres, &c).map_err(lift)?;
            let mut r = Report::new(name, g);
            r.push("crystallographic", v.crystallographic);
            r.push("dim u", v.dim_u);
            r.push("hirsch length", v.hirsch);
            r.push("dim N", v.dim_n);
            r.push("translation-like", v.translation_like);
            r.push("discreteness asserted", v.discreteness_asserted);
            if !v.translation_like && v.crystallographic {
                r.push("note", "proper discontinuity is asserted by the input, not decided");
            }
            Ok(predicate(r, v.crystallographic))
        }
        Command::Unipotent { group: g, word } => {
            let pres = group(ws, g)?;
            let w = pres
                .parse_word(word)
                .map_err(|e| CommandError::Usage(e.to_string()))?;
            let el = pres.eval_word(&w);
            let mut r = Report::new(name, g);
            r.push("word", w.fmt_with(pres.names()));
            r.push("element", &el);
            r.push("unipotent", el.is_unipotent());
            Ok(predicate(r, el.is_unipotent()))
        }
        Command::FixedPoints { group: g } => {
            let pres = group(ws, g)?;
            let c = closure(pres)?;
            let fixed = levi_fixed_coset(pres, &c)?;
            let mut r = Report::new(name, g);
            r.push("levi generators", join(c.levi.generators()));
            push_coset(&mut r, "fixed", &fixed);
            Ok(predicate(r, !fixed.is_empty()))
        }
        Command::Restrict { group: g } => {
            let pres = group(ws, g)?;
            let c = closure(pres)?;
            let r = Report::new(name, g);
            let v = translation_verdict(&c);
            if let Some(w) = v.witness {
                return Ok(refused(r, format!("action not translation-like: witness log {}", unit_sum_string(&w))));
            }
            let fixed = levi_fixed_coset(pres, &c)?;
            let ts = TranslationSpace::of(&c.linearization);
            let directions: Vec<_> = c.unipotent_log_basis.iter().filter_map(|m| ts.to_algebra(m)).collect();
            let coset = match attempt(FixedCoset::new(pres.algebra(), directions, fixed.basepoint().clone()))? {
                Ok(c) => c,
                Err(e) => return Ok(refused(r, e)),
            };
            let mut r = r;
            push_coset(&mut r, "coset", &coset);
            match attempt(restrict_action(pres, &coset))? {
                Ok((restricted, _)) => {
                    for (n, gen) in restricted.names().iter().zip(restricted.generators()) {
                        r.push(format!("generator {n}"), gen);
                    }
                    r.push("result", "restricted");
                    Ok(construction(r, true))
                }
                Err(e) => Ok(refused(r, e)),
            }
        }
        Command::Induce {
            morphism: m,
            source,
            target,
        } => {
            let decl = morphism(ws, m)?;
            for (given, declared, role) in [(source, &decl.source, "source"), (target, &decl.target, "target")] {
                if let Some(given) = given {
                    if given != declared {
                        return Err(CommandError::Usage(format!(
                            "morphism `{m}` has {role} `{declared}`, not `{given}`"
                        )));
                    }
                }
            }
            let phi = &decl.morphism;
            phi.verify().map_err(lift)?;
            let r = Report::new(name, m);
            match attempt(induce_affine_map(phi))? {
                Ok(induced) => {
                    let mut r = r;
                    r.push("map", &induced.map);
                    r.push("translation", induced.map.translation());
                    r.push("delta", induced.map.morphism().matrix());
                    match verify_intertwining(phi, &induced.map) {
                        None => r.push("intertwining", "verified on all generators"),
                        Some(g) => return Err(CommandError::Math(format!("intertwining fails on `{g}`"))),
                    }
                    push_coset(&mut r, "image coset", &induced.image_coset);
                    let cocompact = image_coset_cocompact(phi, &induced.map).map_err(lift)?;
                    r.push("image acts cocompactly", cocompact);
                    r.push("result", "induced");
                    Ok(construction(r, true))
                }
                Err(e) => Ok(refused(r, e)),
            }
        }
        Command::Classify { morphism: m } => {
            let phi = &morphism(ws, m)?.morphism;
            phi.verify().map_err(lift)?;
            let r = Report::new(name, m);
            match attempt(classify_affine_maps(phi))? {
                Ok(c) => {
                    let mut r = r;
                    r.push("delta", c.delta.matrix());
                    push_coset(&mut r, "translations", &c.translations);
                    r.push("induced", &c.induced);
                    r.push("result", "classified");
                    Ok(construction(r, true))
                }
                Err(e) => Ok(refused(r, e)),
            }
        }
        Command::Extend { morphism: m } => {
            let decl = morphism(ws, m)?;
            decl.morphism.verify().map_err(lift)?;
            let mut r = Report::new(name, m);
            match attempt(extend_to_hulls(&decl.morphism, decl.certificate.as_ref()))? {
                Ok(h) => {
                    r.push("unipotent part", h.unipotent_part.matrix());
                    for l in &h.levi_part {
                        r.push("levi image", format!("{} -> {}", l.source, l.image));
                    }
                    r.push("result", "extended");
                    Ok(construction(r, true))
                }
                Err(e) => {
                    r.push("result", "rejected");
                    r.push("reason", format!("there does not exist a morphism of hulls extending `{m}`: {e}"));
                    Ok(construction(r, false))
                }
            }
        }
        Command::VerifyMorphism { morphism: m } => {
            let decl = morphism(ws, m)?;
            let phi = &decl.morphism;
            let mut r = Report::new(name, m);
            let bad = phi.violated_relator().map(|w| w.fmt_with(phi.source().names()));
            r.push("morphism", bad.is_none());
            if let Some(w) = &bad {
                r.push("violated relator", w);
            }
            Ok(predicate(r, bad.is_none()))
        }
        Command::MakeTranslationLike { group: g } => {
            let pres = group(ws, g)?;
            let r = Report::new(name, g);
            match attempt(make_translation_like(pres, None))? {
                Ok(t) => {
                    let mut r = r;
                    r.push("chart", &t.chart);
                    r.push("basepoint", &t.basepoint);
                    r.push("full", t.full);
                    let conj = if t.full {
                        conjugate_action(pres, &t.chart.inverse().map_err(lift)?).map_err(lift)?
                    } else {
                        Vec::new()
                    };
                    for (i, (n, gen)) in t.presentation.names().iter().zip(t.presentation.generators()).enumerate() {
                        r.push(format!("generator {n}"), gen);
                        if let Some(c) = conj.get(i) {
                            r.push(format!("conjugated {n}"), c);
                        }
                    }
                    let translations = t.presentation.generators().iter().all(AffTrans::is_left_translation);
                    r.push("pure translations", translations);
                    r.push("result", if t.full { "chart" } else { "partial chart" });
                    Ok(construction(r, t.full))
                }
                Err(e) => Ok(refused(r, e)),
            }
        }
        Command::InducePoly { morphism: m } => {
            let phi = &morphism(ws, m)?.morphism;
            phi.verify().map_err(lift)?;
            let r = Report::new(name, m);
            match attempt(induce_polynomial_map(phi))? {
                Ok(p) => {
                    let mut r = r;
                    r.push("map", &p);
                    r.push("degree", p.degree());
                    let ok = poly_intertwines(phi, &p);
                    r.push("intertwining", if ok { "verified on all generators" } else { "fails" });
                    r.push("result", if ok { "induced" } else { "failed" });
                    Ok(construction(r, ok))
                }
                Err(e) => Ok(refused(r, e)),
            }
        }
        Command::Corpus { .. } => Err(CommandError::Usage("corpus is not run against a single workspace".into())),
    }
}
