use std::path::Path;

use nilaff::closure::GroupPresentation;
use nilaff_cli::workspace::Workspace;
use proptest::prelude::*;

const PLANE: &str = "[algebra plane]\ndim = 2\n\n";

fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).unwrap()
}

fn same_group(a: &GroupPresentation, b: &GroupPresentation) -> bool {
    a.names() == b.names()
        && a.generators() == b.generators()
        && a.relators() == b.relators()
        && a.holonomy() == b.holonomy()
        && a.tags() == b.tags()
        && a.series() == b.series()
        && a.declared_hull() == b.declared_hull()
        && a.is_discrete() == b.is_discrete()
}

fn assert_same(a: &Workspace, b: &Workspace) {
    assert_eq!(a.algebras.len(), b.algebras.len());
    for ((n1, x), (n2, y)) in a.algebras.iter().zip(&b.algebras) {
        assert_eq!(n1, n2);
        assert_eq!(**x, **y);
    }
    assert_eq!(a.groups.len(), b.groups.len());
    for ((n1, x), (n2, y)) in a.groups.iter().zip(&b.groups) {
        assert_eq!(n1, n2);
        assert_eq!(x.algebra, y.algebra);
        assert!(same_group(&x.presentation, &y.presentation), "group {n1}");
    }
    assert_eq!(a.morphisms.len(), b.morphisms.len());
    for ((n1, x), (n2, y)) in a.morphisms.iter().zip(&b.morphisms) {
        assert_eq!(n1, n2);
        assert_eq!((&x.source, &x.target), (&y.source, &y.target));
        assert_eq!(x.morphism.images(), y.morphism.images());
        assert_eq!(x.certificate.as_ref().map(|c| &c.words), y.certificate.as_ref().map(|c| &c.words));
    }
    assert_eq!(a.expectations, b.expectations);
}

#[test]
fn minimal_translation_group() {
    let text = format!(
        "{PLANE}[group z2]\nalgebra = plane\ngenerator a = (translation = (1, 0); auto = [[1, 0], [0, 1]])\n\
         generator b = (translation = (0, 1); auto = [[1, 0], [0, 1]])\nrelator = a b a^-1 b^-1\n"
    );
    let ws = Workspace::parse(&text).unwrap();
    assert_eq!(ws.algebras.len(), 1);
    assert_eq!(ws.groups.len(), 1);
    assert_eq!(ws.group("z2").unwrap().len(), 2);
}

#[test]
fn klein_fixture_loads_with_its_relator() {
    let ws = Workspace::parse(&fixture_text("klein.naf")).unwrap();
    let k = ws.group("klein").unwrap();
    assert_eq!(k.relators().len(), 1);
    assert_eq!(k.relators()[0].fmt_with(k.names()), "b a b^-1 a");
    assert!(k.eval_word(&k.relators()[0]).is_identity());
    assert_eq!(k.holonomy().order(), 2);
    assert_eq!(ws.morphisms.len(), 2);
}

#[test]
fn jacobi_failure_names_the_algebra() {
    let text = "[algebra broken]\ndim = 5\nweights = 1 1 2 3 4\nbracket 1 2 = (0, 0, 1, 0, 0)\n\
                bracket 1 3 = (0, 0, 0, 1, 0)\nbracket 2 4 = (0, 0, 0, 0, 1)\n";
    let err = Workspace::parse(text).unwrap_err();
    assert_eq!(err.line, 1);
    assert!(err.message.contains("algebra `broken`"), "{err}");
    assert!(err.message.to_lowercase().contains("jacobi"), "{err}");
}

#[test]
fn violated_relator_names_the_group() {
    let text = format!(
        "{PLANE}[group bad]\nalgebra = plane\ngenerator a = (translation = (1, 0); auto = [[1, 0], [0, 1]])\nrelator = a\n"
    );
    let err = Workspace::parse(&text).unwrap_err();
    assert_eq!(err.line, 4);
    assert!(err.message.contains("group `bad`") && err.message.contains("relator"), "{err}");
}

#[test]
fn tags_must_define_a_homomorphism() {
    let text = format!(
        "{PLANE}[group bad]\nalgebra = plane\ngenerator a = (translation = (1, 0); auto = [[1, 0], [0, 1]])\n\
         relator = a^2 a^-2\nholonomy = cyclic 3 r\ntag a = r\nrelator = a a^-1\n"
    );
    // a a^-1 is trivial in the tags too; this presentation is fine
    Workspace::parse(&text).unwrap();
    let text = format!(
        "{PLANE}[group bad]\nalgebra = plane\ngenerator a = (translation = (0, 0); auto = [[-1, 0], [0, 1]])\n\
         relator = a^2\nholonomy = cyclic 3 r\ntag a = r\n"
    );
    let err = Workspace::parse(&text).unwrap_err();
    assert!(err.message.contains("group `bad`") && err.message.contains("homomorphism"), "{err}");
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let text = format!("{PLANE}[group g]\nalgebra = plane\ngenerator a = (translation = (1, x); auto = [[1, 0], [0, 1]])\n");
    let err = Workspace::parse(&text).unwrap_err();
    assert_eq!((err.line, err.column), (6, 34));
    assert!(err.to_string().starts_with("<input>:6:34:"));

    let err = Workspace::parse("dim = 2\n").unwrap_err();
    assert_eq!((err.line, err.column), (1, 1));
    let err = Workspace::parse("[widget w]\n").unwrap_err();
    assert!(err.message.contains("widget"));
    let err = Workspace::parse(&format!("{PLANE}[group g]\nalgebra = space\n")).unwrap_err();
    assert!(err.message.contains("unknown algebra `space`"));
    let err = Workspace::parse(&format!("{PLANE}[hull ghost]\ndensity = asserted\n")).unwrap_err();
    assert!(err.message.contains("hull `ghost`"));
}

#[test]
fn morphism_references_resolve() {
    let text = format!("{}\n[morphism m]\nsource = klein\ntarget = nowhere\nimage a = a\n", fixture_text("klein.naf"));
    let err = Workspace::parse(&text).unwrap_err();
    assert!(err.message.contains("morphism `m`") && err.message.contains("nowhere"), "{err}");
    let text = format!("{}\n[morphism m]\nsource = klein\ntarget = klein\nimage a = a\n", fixture_text("klein.naf"));
    let err = Workspace::parse(&text).unwrap_err();
    assert!(err.message.contains("no image for generator `b`"), "{err}");
}

#[test]
fn scope_violations_are_flagged() {
    let text = "[algebra line]\ndim = 1\n\n[group g]\nalgebra = line\ngenerator g = (translation = (0); auto = [[2]])\n";
    let err = Workspace::parse(text).unwrap_err();
    assert!(err.scope_violation, "{err}");
    assert!(!Workspace::parse("[algebra x]\ndim = q\n").unwrap_err().scope_violation);
}

#[test]
fn fixtures_round_trip() {
    for name in ["z2-standard.naf", "polyZ2.naf", "klein.naf", "heisenberg.naf", "semisimple-z.naf"] {
        let ws = Workspace::parse(&fixture_text(name)).unwrap();
        let text = ws.serialize();
        let again = Workspace::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_same(&ws, &again);
        assert_eq!(again.serialize(), text, "{name}");
    }
}

#[test]
fn files_share_one_namespace() {
    let a = ("a.naf".to_string(), PLANE.to_string());
    let b = (
        "b.naf".to_string(),
        "[group z1]\nalgebra = plane\ngenerator t = (translation = (1, 0); auto = [[1, 0], [0, 1]])\n".to_string(),
    );
    let ws = Workspace::parse_sources(&[a.clone(), b]).unwrap();
    assert!(ws.group("z1").is_some());
    let err = Workspace::parse_sources(&[a.clone(), a]).unwrap_err();
    assert!(err.message.contains("declared twice"));
}

fn rational() -> impl Strategy<Value = String> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| if q == 1 { p.to_string() } else { format!("{p}/{q}") })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_translation_workspaces_round_trip(
        translations in proptest::collection::vec(proptest::collection::vec(rational(), 3), 1..4),
        discrete in any::<bool>(),
    ) {
        let mut text = String::from("[algebra space]\ndim = 3\n\n[group g]\nalgebra = space\n");
        for (i, t) in translations.iter().enumerate() {
            text.push_str(&format!(
                "generator g{i} = (translation = ({}); auto = [[1, 0, 0], [0, 1, 0], [0, 0, 1]])\n",
                t.join(", ")
            ));
        }
        for i in 0..translations.len() {
            for j in i + 1..translations.len() {
                text.push_str(&format!("relator = g{i} g{j} g{i}^-1 g{j}^-1\n"));
            }
        }
        text.push_str(&format!("discrete = {discrete}\n\n[morphism self]\nsource = g\ntarget = g\n"));
        for i in 0..translations.len() {
            text.push_str(&format!("image g{i} = g{i}\n"));
        }
        let ws = Workspace::parse(&text).unwrap();
        let out = ws.serialize();
        let again = Workspace::parse(&out).unwrap();
        assert_same(&ws, &again);
        prop_assert_eq!(again.serialize(), out);
    }
}
