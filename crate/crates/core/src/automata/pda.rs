use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{dot_escape, require_complete};
use crate::complex::{Complex, Node, StepKind, VertexId};
use crate::face_types::{ClassId, ClassTable, VertexClass};
use crate::word::{Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Language {
    /// Accept only in the base class: words equal to 1.
    Identity,
    /// Accept in every state: words R-related to 1.
    RClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "op", content = "symbol")]
pub enum StackAction {
    Keep,
    Push(ClassId),
    Pop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PdaRule {
    pub from: ClassId,
    pub letter: Letter,
    /// Required stack top; `None` means any.
    pub top: Option<ClassId>,
    pub to: ClassId,
    pub action: StackAction,
}

/// A deterministic pushdown automaton over vertex classes. The stack
/// alphabet is the class set; the initial stack holds the base class.
#[derive(Clone, Debug)]
pub struct Pda {
    word: Word,
    classes: Vec<VertexClass>,
    language: Language,
    rules: BTreeMap<(ClassId, usize), Vec<PdaRule>>,
}

/// The configuration after reading a word, or the position where no rule applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaRun {
    pub accepted: bool,
    pub failed_at: Option<usize>,
    pub state: ClassId,
    /// Bottom first.
    pub stack: Vec<ClassId>,
}

pub fn build_pda(table: &ClassTable, language: Language) -> Result<Pda> {
    require_complete(table)?;
    let mut rules: BTreeMap<(ClassId, usize), Vec<PdaRule>> = BTreeMap::new();
    for ((from, letter, guard), m) in table.moves() {
        let action = match m.kind {
            StepKind::SameFace => StackAction::Keep,
            StepKind::Push => StackAction::Push(m.push.ok_or(Error::IncompleteTable)?),
            StepKind::Pop => StackAction::Pop,
        };
        rules.entry((from, letter.index())).or_default().push(PdaRule {
            from,
            letter,
            top: guard,
            to: m.to,
            action,
        });
    }
    for list in rules.values() {
        let open = list.iter().filter(|r| r.top.is_none()).count();
        if open > 1 || (open == 1 && list.len() > 1) {
            let r = list[0];
            return Err(Error::StructureViolation(format!(
                "nondeterministic rules for class {} on {}",
                table.class(r.from),
                r.letter
            )));
        }
    }
    Ok(Pda {
        word: table.word().clone(),
        classes: table.classes().to_vec(),
        language,
        rules,
    })
}

impl Pda {
    pub fn language(&self) -> Language {
        self.language
    }

    pub fn state_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn rules(&self) -> impl Iterator<Item = &PdaRule> {
        self.rules.values().flatten()
    }

    pub fn is_accepting(&self, state: ClassId) -> bool {
        match self.language {
            Language::Identity => state == 0,
            Language::RClass => true,
        }
    }

    /// The rule that fires in `state` on `letter` with `top` on the stack.
    pub fn rule(&self, state: ClassId, letter: Letter, top: ClassId) -> Option<&PdaRule> {
        self.rules
            .get(&(state, letter.index()))?
            .iter()
            .find(|r| r.top.is_none_or(|t| t == top))
    }

    pub fn run(&self, u: &Word) -> PdaRun {
        let mut state = 0;
        let mut stack = vec![0];
        for (i, &letter) in u.iter().enumerate() {
            let top = *stack.last().expect("the stack never empties below the base");
            let Some(rule) = self.rule(state, letter, top) else {
                return PdaRun {
                    accepted: false,
                    failed_at: Some(i),
                    state,
                    stack,
                };
            };
            match rule.action {
                StackAction::Keep => {}
                StackAction::Push(s) => stack.push(s),
                StackAction::Pop => {
                    stack.pop();
                }
            }
            state = rule.to;
            if stack.is_empty() {
                return PdaRun {
                    accepted: false,
                    failed_at: Some(i + 1),
                    state,
                    stack,
                };
            }
        }
        PdaRun {
            accepted: self.is_accepting(state),
            failed_at: None,
            state,
            stack,
        }
    }

    pub fn accepts(&self, u: &Word) -> bool {
        self.run(u).accepted
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            word: &'a Word,
            language: Language,
            states: Vec<String>,
            initial_state: ClassId,
            initial_stack: ClassId,
            accept: Vec<ClassId>,
            transitions: Vec<&'a PdaRule>,
        }
        let accept = (0..self.classes.len()).filter(|&s| self.is_accepting(s)).collect();
        serde_json::to_string_pretty(&Doc {
            word: &self.word,
            language: self.language,
            states: self.classes.iter().map(ToString::to_string).collect(),
            initial_state: 0,
            initial_stack: 0,
            accept,
            transitions: self.rules().collect(),
        })
        .expect("automata serialize")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph pda {\n  rankdir=LR;\n  __start [shape=point];\n  __start -> q0;\n");
        for (i, c) in self.classes.iter().enumerate() {
            let shape = if self.is_accepting(i) { "doublecircle" } else { "circle" };
            writeln!(out, "  q{i} [shape={shape}, label=\"{}\"];", dot_escape(&c.to_string())).unwrap();
        }
        for r in self.rules() {
            let top = r.top.map_or("*".to_string(), |t| format!("q{t}"));
            let action = match r.action {
                StackAction::Keep => "keep".to_string(),
                StackAction::Push(s) => format!("push q{s}"),
                StackAction::Pop => "pop".to_string(),
            };
            writeln!(out, "  q{} -> q{} [label=\"{}, {top} / {action}\"];", r.from, r.to, r.letter).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// `β(v)` bottom first: the base class, then the class of `σ̄` of every
/// face on the dual-tree path from the root down to `Ω(v)`.
pub fn stack_oracle(table: &ClassTable, c: &Complex, v: VertexId) -> Result<Vec<ClassId>> {
    let mut path = Vec::new();
    let mut node = c.omega(v);
    while let Node::Face(f) = node {
        let face = c.face(f)?;
        path.push(table.class_of(c, face.sigma())?);
        node = face.parent();
    }
    path.push(table.base());
    path.reverse();
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FaceId;
    use crate::face_types::enumerate_classes;
    use crate::word_problem::trace;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn table() -> ClassTable {
        enumerate_classes(&w("abABcdCD")).unwrap()
    }

    #[test]
    fn first_move_pushes_the_base() {
        let t = table();
        let p = build_pda(&t, Language::Identity).unwrap();
        let r = p.rule(0, w("a").at(0), 0).unwrap();
        assert_eq!(r.action, StackAction::Push(0));
        assert_eq!(t.class(r.to).to_string(), "(8,0,8)#1");
    }

    #[test]
    fn small_runs() {
        let t = table();
        let id = build_pda(&t, Language::Identity).unwrap();
        let rc = build_pda(&t, Language::RClass).unwrap();
        assert!(id.accepts(&w("")));
        assert!(id.accepts(&w("abABcdCD")));
        let back = id.run(&w("aA"));
        assert!(back.accepted);
        assert_eq!((back.state, back.stack), (0, vec![0]));
        assert!(!id.accepts(&w("a")));
        assert!(rc.accepts(&w("a")));
        assert_eq!(rc.run(&w("aB")).failed_at, Some(1));
    }

    #[test]
    fn stack_oracle_examples() {
        let t = table();
        let mut c = Complex::init(&w("abABcdCD")).unwrap();
        c.build_to_radius(4).unwrap();
        assert_eq!(stack_oracle(&t, &c, c.base()).unwrap(), vec![0]);
        let v1 = c.face(FaceId(0)).unwrap().boundary()[1];
        assert_eq!(stack_oracle(&t, &c, v1).unwrap(), vec![0, 0]);
        let deep = trace(&c, &w("aa")).vertex().unwrap();
        assert_eq!(stack_oracle(&t, &c, deep).unwrap().len(), 3);
    }

    #[test]
    fn json_lists_every_rule_once() {
        let t = table();
        let p = build_pda(&t, Language::RClass).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        let rules = doc["transitions"].as_array().unwrap();
        assert_eq!(rules.len(), t.moves().count());
        let mut keys: Vec<_> = rules
            .iter()
            .map(|r| (r["from"].clone().to_string(), r["letter"].to_string(), r["top"].to_string()))
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), rules.len());
    }
}
