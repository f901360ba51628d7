//! Default theories `⟨Σ, Δ⟩`: a fact set plus an ordered list of named
//! defaults `pre : jus₁, …, jusₖ / con`, with the theory-file parser and the
//! canonical printer.

use std::collections::BTreeSet;
use std::fmt;

use crate::logic::parser::{ParseError, TokenKind, TokenStream};
use crate::logic::{Formula, Proposition, TheorySet};

/// One default rule. Every default carries at least one justification;
/// justification-free rules are rejected at parse time rather than silently
/// reinterpreted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Default {
    name: String,
    prerequisite: Formula,
    justifications: Vec<Formula>,
    consequence: Formula,
}

impl Default {
    pub fn new(
        name: impl Into<String>,
        prerequisite: Formula,
        justifications: Vec<Formula>,
        consequence: Formula,
    ) -> Self {
        assert!(
            !justifications.is_empty(),
            "a default needs at least one justification"
        );
        let d = Default {
            name: name.into(),
            prerequisite,
            justifications,
            consequence,
        };
        debug_assert!(
            d.vocabulary().iter().all(|p| !p.is_assumption()),
            "default formulas must stay in the user namespace"
        );
        d
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prerequisite(&self) -> &Formula {
        &self.prerequisite
    }

    pub fn justifications(&self) -> &[Formula] {
        &self.justifications
    }

    pub fn consequence(&self) -> &Formula {
        &self.consequence
    }

    pub fn vocabulary(&self) -> BTreeSet<Proposition> {
        let mut out = self.prerequisite.vocabulary();
        for j in &self.justifications {
            j.collect_vocabulary(&mut out);
        }
        self.consequence.collect_vocabulary(&mut out);
        out
    }
}

impl fmt::Display for Default {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "default {} = {} : ", self.name, self.prerequisite)?;
        for (i, j) in self.justifications.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, " / {}.", self.consequence)
    }
}

/// Which component of a default a selector picks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Prerequisite,
    Justification,
    Consequence,
}

/// The union of the chosen selector over a set of defaults, duplicate-free.
pub fn select<'a>(defaults: impl IntoIterator<Item = &'a Default>, which: Selector) -> TheorySet {
    let mut out = TheorySet::new();
    for d in defaults {
        match which {
            Selector::Prerequisite => {
                out.insert(d.prerequisite.clone());
            }
            Selector::Justification => {
                for j in &d.justifications {
                    out.insert(j.clone());
                }
            }
            Selector::Consequence => {
                out.insert(d.consequence.clone());
            }
        }
    }
    out
}

/// A finite default theory: facts in file order, defaults in file order with
/// pairwise-distinct names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefaultTheory {
    facts: TheorySet,
    defaults: Vec<Default>,
}

impl DefaultTheory {
    pub fn new(facts: TheorySet, defaults: Vec<Default>) -> Self {
        let mut seen = BTreeSet::new();
        for d in &defaults {
            assert!(seen.insert(d.name.clone()), "duplicate default {}", d.name);
        }
        DefaultTheory { facts, defaults }
    }

    /// Parses the theory-file grammar:
    ///
    /// ```text
    /// file  := (stmt)*
    /// stmt  := "fact" formula "."
    ///        | "default" NAME "=" formula ":" formula ("," formula)* "/" formula "."
    ///        | "#" comment to end of line
    /// ```
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut ts = TokenStream::new(text)?;
        let mut facts = TheorySet::new();
        let mut defaults: Vec<Default> = Vec::new();
        let mut names: BTreeSet<String> = BTreeSet::new();
        while !ts.at_end() {
            let (line, col) = ts.here();
            match ts.next() {
                Some(tok) => match &tok.kind {
                    TokenKind::Ident(kw) if kw == "fact" => {
                        let f = ts.formula()?;
                        ts.expect(&TokenKind::Dot, "'.'")?;
                        facts.insert(f);
                    }
                    TokenKind::Ident(kw) if kw == "default" => {
                        let (nline, ncol) = ts.here();
                        let name = match ts.next() {
                            Some(t) => match t.kind {
                                TokenKind::Ident(n) => n,
                                other => {
                                    return Err(ParseError::syntax(
                                        t.line,
                                        t.col,
                                        format!("expected a default name, found {other}"),
                                    ))
                                }
                            },
                            None => {
                                return Err(ParseError::syntax(
                                    nline,
                                    ncol,
                                    "expected a default name, found end of input",
                                ))
                            }
                        };
                        if !names.insert(name.clone()) {
                            return Err(ParseError::DuplicateDefaultName {
                                line: nline,
                                col: ncol,
                                name,
                            });
                        }
                        ts.expect(&TokenKind::Equals, "'='")?;
                        let prerequisite = ts.formula()?;
                        ts.expect(&TokenKind::Colon, "':'")?;
                        if matches!(ts.peek().map(|t| &t.kind), Some(TokenKind::Slash)) {
                            let (jline, jcol) = ts.here();
                            return Err(ParseError::EmptyJustifications {
                                line: jline,
                                col: jcol,
                                name,
                            });
                        }
                        let mut justifications = vec![ts.formula()?];
                        while matches!(ts.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
                            ts.next();
                            justifications.push(ts.formula()?);
                        }
                        ts.expect(&TokenKind::Slash, "'/'")?;
                        let consequence = ts.formula()?;
                        ts.expect(&TokenKind::Dot, "'.'")?;
                        defaults.push(Default::new(
                            name,
                            prerequisite,
                            justifications,
                            consequence,
                        ));
                    }
                    other => {
                        return Err(ParseError::syntax(
                            tok.line,
                            tok.col,
                            format!("expected 'fact' or 'default', found {other}"),
                        ))
                    }
                },
                None => {
                    return Err(ParseError::syntax(
                        line,
                        col,
                        "expected a statement, found end of input",
                    ))
                }
            }
        }
        Ok(DefaultTheory { facts, defaults })
    }

    pub fn facts(&self) -> &TheorySet {
        &self.facts
    }

    pub fn defaults(&self) -> &[Default] {
        &self.defaults
    }

    pub fn default_named(&self, name: &str) -> Option<&Default> {
        self.defaults.iter().find(|d| d.name == name)
    }

    /// All propositions occurring anywhere in the facts or the defaults.
    pub fn vars(&self) -> BTreeSet<Proposition> {
        let mut out = self.facts.vocabulary();
        for d in &self.defaults {
            out.extend(d.vocabulary());
        }
        out
    }
}

impl fmt::Display for DefaultTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fact in &self.facts {
            writeln!(f, "fact {fact}.")?;
        }
        for d in &self.defaults {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}
