//! Finite monoids from presentations by generators and relations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dsu::saturate;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<String>,
    /// Pairs of words; a word is generator labels separated by spaces, with
    /// `1` or the empty string for the empty word.
    pub relations: Vec<[String; 2]>,
    pub max_elements: usize,
}

impl Presentation {
    pub fn new(generators: &[&str], relations: &[(&str, &str)], max_elements: usize) -> Self {
        Presentation {
            name: None,
            generators: generators.iter().map(|g| g.to_string()).collect(),
            relations: relations.iter().map(|(l, r)| [l.to_string(), r.to_string()]).collect(),
            max_elements,
        }
    }

    /// Parses a word into generator indices.
    pub fn parse_word(&self, word: &str) -> Result<Vec<usize>> {
        let trimmed = word.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for token in word.split(' ') {
            if !token.is_empty() {
                match self.generators.iter().position(|g| g == token) {
                    Some(i) => out.push(i),
                    None => {
                        return Err(Error::Parse {
                            position: offset,
                            expected: format!("one of the generators {:?}", self.generators),
                        })
                    }
                }
            }
            offset += token.len() + 1;
        }
        Ok(out)
    }

    fn check(&self) -> Result<()> {
        if self.max_elements == 0 {
            return Err(Error::Parse {
                position: 0,
                expected: "max_elements ≥ 1".into(),
            });
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() || g == "1" || g.contains(' ') {
                return Err(Error::Parse {
                    position: i,
                    expected: "generator labels that are nonempty, not `1`, without spaces".into(),
                });
            }
            if self.generators[..i].contains(g) {
                return Err(Error::DuplicateLabel(g.clone()));
            }
        }
        Ok(())
    }

    fn label(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let sep = if self.generators.iter().all(|g| g.chars().count() == 1) {
            ""
        } else {
            "·"
        };
        word.iter().map(|&g| self.generators[g].as_str()).collect::<Vec<_>>().join(sep)
    }
}

/// Rewrites with the relations oriented from the larger side to the
/// smaller (length, then lexicographic) until no rule applies.
fn normal_form(rules: &[(Vec<usize>, Vec<usize>)], word: &[usize]) -> Vec<usize> {
    let mut w = word.to_vec();
    'again: loop {
        for (l, r) in rules {
            if l.is_empty() || l.len() > w.len() {
                continue;
            }
            if let Some(i) = (0..=w.len() - l.len()).find(|&i| w[i..i + l.len()] == l[..]) {
                w.splice(i..i + l.len(), r.iter().copied());
                continue 'again;
            }
        }
        return w;
    }
}

fn shortlex(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Enumerates the monoid presented by `p`. Elements are listed in
/// breadth-first order and labelled by their least word.
pub fn enumerate_presentation(p: &Presentation) -> Result<FiniteMonoid> {
    p.check()?;
    let mut rules = Vec::new();
    for [l, r] in &p.relations {
        let (l, r) = (p.parse_word(l)?, p.parse_word(r)?);
        match shortlex(&l, &r) {
            std::cmp::Ordering::Greater => rules.push((l, r)),
            std::cmp::Ordering::Less => rules.push((r, l)),
            std::cmp::Ordering::Equal => {}
        }
    }
    let k = p.generators.len();

    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < words.len() {
        let mut row = Vec::with_capacity(k);
        for g in 0..k {
            let mut w = words[i].clone();
            w.push(g);
            let w = normal_form(&rules, &w);
            let j = match index.get(&w) {
                Some(&j) => j,
                None => {
                    if words.len() >= p.max_elements {
                        return Err(Error::CapExceeded(p.max_elements));
                    }
                    words.push(w.clone());
                    index.insert(w, words.len() - 1);
                    words.len() - 1
                }
            };
            row.push(j);
        }
        delta.push(row);
        i += 1;
    }

    let eval = |start: usize, word: &[usize]| word.iter().fold(start, |s, &g| delta[s][g]);
    let mut pairs = Vec::new();
    for (w, word) in words.iter().enumerate() {
        pairs.push((w, eval(0, word)));
        for (l, r) in &rules {
            pairs.push((eval(w, l), eval(w, r)));
        }
    }
    let ops: Vec<Vec<usize>> = (0..k).map(|g| delta.iter().map(|row| row[g]).collect()).collect();
    let classes = saturate(words.len(), &pairs, &ops);
    let reps = classes.representatives();
    let labels = reps.iter().map(|&w| p.label(&words[w])).collect();
    let name = p.name.clone().unwrap_or_else(|| {
        let rels: Vec<String> = p
            .relations
            .iter()
            .map(|[l, r]| format!("{}={}", p.label(&p.parse_word(l).unwrap_or_default()), p.label(&p.parse_word(r).unwrap_or_default())))
            .collect();
        format!("<{} | {}>", p.generators.join(","), rels.join(", "))
    });
    FiniteMonoid::from_fn(name, labels, classes.class_of(0), |a, b| {
        classes.class_of(eval(reps[a], &words[reps[b]]))
    })
}
