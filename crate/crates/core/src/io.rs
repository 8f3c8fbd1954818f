//! JSON formats for monoids, homs, actions, biactions and presentations,
//! and a workspace resolving references between files.

use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::actions::{BiAction, LeftAction, RightAction};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hom::SemigroupHom;
use crate::monoid::FiniteMonoid;
use crate::presentation::{enumerate_presentation, Presentation};

pub const FORMAT: &str = "monoid-geom/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
struct MonoidFile {
    name: String,
    elements: Vec<String>,
    identity: String,
    table: Vec<Vec<String>>,
}

/// A monoid given by name or inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum MonoidRef {
    Name(String),
    Inline(MonoidFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct HomFile {
    domain: MonoidRef,
    codomain: MonoidRef,
    map: IndexMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ActionFile {
    monoid: MonoidRef,
    side: String,
    carrier: Vec<String>,
    action: IndexMap<String, IndexMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BiActionFile {
    left_monoid: MonoidRef,
    right_monoid: MonoidRef,
    carrier: Vec<String>,
    left_action: IndexMap<String, IndexMap<String, String>>,
    right_action: IndexMap<String, IndexMap<String, String>>,
}

/// Anything a file can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Monoid(FiniteMonoid),
    Hom(SemigroupHom),
    RightAction(RightAction),
    LeftAction(LeftAction),
    BiAction(BiAction),
    Presentation(Presentation),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::Hom(_) => "hom",
            Document::RightAction(_) => "right action",
            Document::LeftAction(_) => "left action",
            Document::BiAction(_) => "biaction",
            Document::Presentation(_) => "presentation",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Monoid(m) => monoid_to_json(m),
            Document::Hom(h) => hom_to_json(h),
            Document::RightAction(x) => right_action_to_json(x),
            Document::LeftAction(y) => left_action_to_json(y),
            Document::BiAction(a) => biaction_to_json(a),
            Document::Presentation(p) => presentation_to_json(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub file: Option<PathBuf>,
    pub format: String,
}

/// Named monoids loaded so far, used to resolve references by name.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    monoids: IndexMap<String, (FiniteMonoid, Provenance)>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monoid(&self, name: &str) -> Option<&FiniteMonoid> {
        self.monoids.get(name).map(|(m, _)| m)
    }

    pub fn provenance(&self, name: &str) -> Option<&Provenance> {
        self.monoids.get(name).map(|(_, p)| p)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.monoids.keys().map(String::as_str)
    }

    /// Registers a monoid; a different monoid under the same name is an error.
    pub fn add_monoid(&mut self, m: FiniteMonoid, file: Option<&Path>) -> Result<()> {
        if let Some((old, _)) = self.monoids.get(m.name()) {
            if old != &m {
                return Err(Error::DuplicateLabel(m.name().to_string()));
            }
            return Ok(());
        }
        let prov = Provenance {
            file: file.map(Path::to_path_buf),
            format: FORMAT.to_string(),
        };
        self.monoids.insert(m.name().to_string(), (m, prov));
        Ok(())
    }

    /// Loads a file and registers every monoid it mentions.
    pub fn load_file(&mut self, path: impl AsRef<Path>) -> Result<Document> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)?;
        self.load_value(&value, Some(path))
    }

    pub fn load_str(&mut self, text: &str) -> Result<Document> {
        let value: Value = serde_json::from_str(text)?;
        self.load_value(&value, None)
    }

    pub fn load_value(&mut self, value: &Value, file: Option<&Path>) -> Result<Document> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::MalformedTable("document must be a JSON object".into()))?;
        match obj.get("format").and_then(Value::as_str) {
            Some(FORMAT) => {}
            Some(other) => return Err(Error::UnsupportedFormat(other.to_string())),
            None => return Err(Error::UnsupportedFormat("missing \"format\"".into())),
        }
        let doc = if obj.contains_key("table") {
            let f: MonoidFile = serde_json::from_value(value.clone())?;
            Document::Monoid(monoid_from_file(&f)?)
        } else if obj.contains_key("map") {
            let f: HomFile = serde_json::from_value(value.clone())?;
            let dom = self.resolve(&f.domain, file)?;
            let cod = self.resolve(&f.codomain, file)?;
            Document::Hom(SemigroupHom::from_labels(
                dom,
                cod,
                f.map.iter().map(|(x, y)| (x.as_str(), y.as_str())),
            )?)
        } else if obj.contains_key("left_action") {
            let f: BiActionFile = serde_json::from_value(value.clone())?;
            let n = self.resolve(&f.left_monoid, file)?;
            let m = self.resolve(&f.right_monoid, file)?;
            let left = LeftAction::new(n.clone(), f.carrier.clone(), action_table(&n, &f.carrier, &f.left_action)?)?;
            let right = RightAction::new(m.clone(), f.carrier.clone(), action_table(&m, &f.carrier, &f.right_action)?)?;
            Document::BiAction(BiAction::from_actions(left, right)?)
        } else if obj.contains_key("action") {
            let f: ActionFile = serde_json::from_value(value.clone())?;
            let m = self.resolve(&f.monoid, file)?;
            let table = action_table(&m, &f.carrier, &f.action)?;
            match f.side.as_str() {
                "right" => Document::RightAction(RightAction::new(m, f.carrier, table)?),
                "left" => Document::LeftAction(LeftAction::new(m, f.carrier, table)?),
                other => {
                    return Err(Error::Parse {
                        position: 0,
                        expected: format!("side \"right\" or \"left\", got {other:?}"),
                    })
                }
            }
        } else if obj.contains_key("generators") {
            let p: Presentation = serde_json::from_value(value.clone())?;
            Document::Presentation(p)
        } else {
            return Err(Error::MalformedTable(
                "cannot tell the document kind (expected table, map, action, left_action or generators)".into(),
            ));
        };
        if let Document::Monoid(m) = &doc {
            self.add_monoid(m.clone(), file)?;
        }
        Ok(doc)
    }

    /// Loads a monoid from a monoid or presentation file.
    pub fn load_monoid(&mut self, path: impl AsRef<Path>) -> Result<FiniteMonoid> {
        match self.load_file(path)? {
            Document::Monoid(m) => Ok(m),
            Document::Presentation(p) => {
                let m = enumerate_presentation(&p)?;
                self.add_monoid(m.clone(), None)?;
                Ok(m)
            }
            other => Err(Error::MalformedTable(format!("expected a monoid, found a {}", other.kind()))),
        }
    }

    /// Resolves a reference: a workspace name, then a path relative to the
    /// referring file, then a built-in fixture.
    pub fn resolve_name(&mut self, name: &str, file: Option<&Path>) -> Result<FiniteMonoid> {
        if let Some(m) = self.monoid(name) {
            return Ok(m.clone());
        }
        let base = file.and_then(Path::parent).unwrap_or(Path::new("."));
        for candidate in [base.join(name), base.join(format!("{name}.json"))] {
            if candidate.is_file() {
                return self.load_monoid(&candidate);
            }
        }
        if let Some(m) = fixtures::monoid_by_name(name) {
            self.add_monoid(m.clone(), None)?;
            return Ok(m);
        }
        Err(Error::UnresolvedReference(name.to_string()))
    }

    fn resolve(&mut self, r: &MonoidRef, file: Option<&Path>) -> Result<FiniteMonoid> {
        match r {
            MonoidRef::Name(name) => self.resolve_name(name, file),
            MonoidRef::Inline(f) => {
                let m = monoid_from_file(f)?;
                self.add_monoid(m.clone(), file)?;
                Ok(m)
            }
        }
    }
}

fn monoid_from_file(f: &MonoidFile) -> Result<FiniteMonoid> {
    FiniteMonoid::validate(f.name.clone(), f.elements.clone(), &f.identity, &f.table)
}

fn action_table(
    m: &FiniteMonoid,
    carrier: &[String],
    action: &IndexMap<String, IndexMap<String, String>>,
) -> Result<Vec<Vec<usize>>> {
    let pos = |l: &str| {
        carrier
            .iter()
            .position(|c| c == l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    };
    for key in action.keys() {
        pos(key)?;
    }
    carrier
        .iter()
        .map(|x| {
            let row = action
                .get(x)
                .ok_or_else(|| Error::ActionAxiom(format!("no action given for `{x}`")))?;
            for k in row.keys() {
                m.index_of(k)?;
            }
            m.elements()
                .map(|k| {
                    let y = row
                        .get(m.label(k))
                        .ok_or_else(|| Error::ActionAxiom(format!("no image of `{x}` under `{}`", m.label(k))))?;
                    pos(y)
                })
                .collect()
        })
        .collect()
}

fn inline(m: &FiniteMonoid) -> Value {
    crate::factorize::monoid_json(m)
}

pub fn monoid_to_json(m: &FiniteMonoid) -> Value {
    let mut v = json!({"format": FORMAT});
    v.as_object_mut().unwrap().extend(inline(m).as_object().unwrap().clone());
    v
}

pub fn hom_to_json(h: &SemigroupHom) -> Value {
    let map: serde_json::Map<String, Value> =
        h.label_pairs().into_iter().map(|(x, y)| (x, Value::String(y))).collect();
    json!({
        "format": FORMAT,
        "domain": inline(h.domain()),
        "codomain": inline(h.codomain()),
        "map": map,
    })
}

fn action_rows(labels: &[String], m: &FiniteMonoid, act: impl Fn(usize, usize) -> usize) -> Value {
    let rows: serde_json::Map<String, Value> = (0..labels.len())
        .map(|x| {
            let row: serde_json::Map<String, Value> = m
                .elements()
                .map(|k| (m.label(k).to_string(), Value::String(labels[act(x, k)].clone())))
                .collect();
            (labels[x].clone(), Value::Object(row))
        })
        .collect();
    Value::Object(rows)
}

pub fn right_action_to_json(x: &RightAction) -> Value {
    json!({
        "format": FORMAT,
        "monoid": inline(x.monoid()),
        "side": "right",
        "carrier": x.underlying_set(),
        "action": action_rows(x.underlying_set(), x.monoid(), |p, k| x.act(p, k)),
    })
}

pub fn left_action_to_json(y: &LeftAction) -> Value {
    json!({
        "format": FORMAT,
        "monoid": inline(y.monoid()),
        "side": "left",
        "carrier": y.underlying_set(),
        "action": action_rows(y.underlying_set(), y.monoid(), |p, k| y.act(k, p)),
    })
}

pub fn biaction_to_json(a: &BiAction) -> Value {
    json!({
        "format": FORMAT,
        "left_monoid": inline(a.left_monoid()),
        "right_monoid": inline(a.right_monoid()),
        "carrier": a.underlying_set(),
        "left_action": action_rows(a.underlying_set(), a.left_monoid(), |p, k| a.act_left(k, p)),
        "right_action": action_rows(a.underlying_set(), a.right_monoid(), |p, k| a.act_right(p, k)),
    })
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let mut v = json!({"format": FORMAT});
    v.as_object_mut()
        .unwrap()
        .extend(serde_json::to_value(p).expect("serializable").as_object().unwrap().clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::hom_to_biact;

    fn round_trip(doc: Document) {
        let text = serde_json::to_string_pretty(&doc.to_json()).unwrap();
        let back = Workspace::new().load_str(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn documents_round_trip() {
        for m in fixtures::all_monoids() {
            round_trip(Document::Monoid(m.clone()));
            round_trip(Document::RightAction(RightAction::regular(&m)));
            round_trip(Document::LeftAction(LeftAction::regular(&m)));
        }
        for (_, h) in fixtures::named_homs() {
            round_trip(Document::BiAction(hom_to_biact(&h)));
            round_trip(Document::Hom(h));
        }
        round_trip(Document::Presentation(Presentation::new(&["a"], &[("a a", "1")], 10)));
    }

    #[test]
    fn names_resolve_to_fixtures() {
        let text = r#"{"format": "monoid-geom/1", "domain": "T1", "codomain": "C2", "map": {"1": "1"}}"#;
        let doc = Workspace::new().load_str(text).unwrap();
        assert_eq!(doc, Document::Hom(fixtures::incl_c2()));
        let bad = r#"{"format": "monoid-geom/1", "domain": "Nope", "codomain": "C2", "map": {"1": "1"}}"#;
        assert!(matches!(Workspace::new().load_str(bad), Err(Error::UnresolvedReference(_))));
    }

    #[test]
    fn wrong_format_is_rejected() {
        let text = r#"{"format": "monoid-geom/2", "name": "T", "elements": ["1"], "identity": "1", "table": [["1"]]}"#;
        assert!(matches!(Workspace::new().load_str(text), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn invalid_action_cites_the_axiom() {
        // g·g must be the identity on C2-sets
        let text = r#"{"format": "monoid-geom/1", "monoid": "C2", "side": "right", "carrier": ["x", "y"],
            "action": {"x": {"1": "x", "g": "y"}, "y": {"1": "y", "g": "y"}}}"#;
        let err = Workspace::new().load_str(text).unwrap_err();
        assert!(matches!(err, Error::ActionAxiom(_)), "{err}");
    }
}
