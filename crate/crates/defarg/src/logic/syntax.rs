//! The propositional language: named propositions, formulas, and theories.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Namespace of a proposition. User names come from input text; assumption
/// names are generated internally and carry the reserved `@` prefix, which
/// keeps the two vocabularies disjoint by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Namespace {
    User,
    Assumption,
}

/// A propositional variable. Ordering is plain name order; since `@` sorts
/// before every identifier character, assumptions come first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Proposition(Arc<str>);

pub(crate) fn is_valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Proposition {
    /// A user-namespace proposition.
    ///
    /// Panics if `name` is not an identifier of the form
    /// `[A-Za-z_][A-Za-z0-9_]*`; the parser is the only boundary where
    /// arbitrary input arrives and it validates before calling this.
    pub fn user(name: &str) -> Self {
        assert!(
            is_valid_identifier(name),
            "invalid proposition name {name:?}"
        );
        Proposition(Arc::from(name))
    }

    /// An assumption-namespace proposition, rendered as `@suffix`.
    pub fn assumption(suffix: &str) -> Self {
        assert!(
            !suffix.is_empty()
                && suffix
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.'),
            "invalid assumption suffix {suffix:?}"
        );
        Proposition(Arc::from(format!("@{suffix}").as_str()))
    }

    /// The rendered name, including the `@` prefix for assumptions.
    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn namespace(&self) -> Namespace {
        if self.0.starts_with('@') {
            Namespace::Assumption
        } else {
            Namespace::User
        }
    }

    pub fn is_assumption(&self) -> bool {
        self.namespace() == Namespace::Assumption
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Proposition({})", self.0)
    }
}

/// A propositional formula over `∧ ∨ ¬ → ⊤ ⊥`, rendered in ASCII as
/// `& | ! -> true false`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Verum,
    Falsum,
    Atom(Proposition),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(p: Proposition) -> Self {
        Formula::Atom(p)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// The set of propositions occurring in the formula.
    pub fn vocabulary(&self) -> BTreeSet<Proposition> {
        let mut out = BTreeSet::new();
        self.collect_vocabulary(&mut out);
        out
    }

    pub(crate) fn collect_vocabulary(&self, out: &mut BTreeSet<Proposition>) {
        match self {
            Formula::Verum | Formula::Falsum => {}
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Not(f) => f.collect_vocabulary(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_vocabulary(out);
                b.collect_vocabulary(out);
            }
        }
    }

    /// Truth value under a total assignment.
    pub fn eval<F: Fn(&Proposition) -> bool>(&self, assignment: &F) -> bool {
        match self {
            Formula::Verum => true,
            Formula::Falsum => false,
            Formula::Atom(p) => assignment(p),
            Formula::Not(f) => !f.eval(assignment),
            Formula::And(a, b) => a.eval(assignment) && b.eval(assignment),
            Formula::Or(a, b) => a.eval(assignment) || b.eval(assignment),
            Formula::Implies(a, b) => !a.eval(assignment) || b.eval(assignment),
        }
    }

    /// Number of atom and constant occurrences, counting repeats. Used to
    /// decide between the distributive and the definitional clause form.
    pub fn literal_occurrences(&self) -> usize {
        match self {
            Formula::Verum | Formula::Falsum | Formula::Atom(_) => 1,
            Formula::Not(f) => f.literal_occurrences(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.literal_occurrences() + b.literal_occurrences()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::Verum | Formula::Falsum | Formula::Atom(_) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Verum => f.write_str("true")?,
            Formula::Falsum => f.write_str("false")?,
            Formula::Atom(p) => write!(f, "{p}")?,
            Formula::Not(g) => {
                f.write_str("!")?;
                g.fmt_prec(f, 4)?;
            }
            Formula::And(a, b) => {
                a.fmt_prec(f, 3)?;
                f.write_str(" & ")?;
                b.fmt_prec(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" | ")?;
                b.fmt_prec(f, 3)?;
            }
            Formula::Implies(a, b) => {
                // right-associative: nested implications on the left need parens
                a.fmt_prec(f, 2)?;
                f.write_str(" -> ")?;
                b.fmt_prec(f, 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A finite set of formulas, duplicate-free under syntactic equality.
/// Insertion order is preserved so that printed theories stay stable.
#[derive(Clone, Debug, Default)]
pub struct TheorySet {
    members: Vec<Formula>,
    seen: std::collections::HashSet<Formula>,
}

impl PartialEq for TheorySet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for TheorySet {}

impl TheorySet {
    pub fn new() -> Self {
        TheorySet::default()
    }

    /// Adds a formula unless it is already present; returns whether it was new.
    pub fn insert(&mut self, f: Formula) -> bool {
        if self.seen.contains(&f) {
            false
        } else {
            self.seen.insert(f.clone());
            self.members.push(f);
            true
        }
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.seen.contains(f)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.members.iter()
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn vocabulary(&self) -> BTreeSet<Proposition> {
        let mut out = BTreeSet::new();
        for f in &self.members {
            f.collect_vocabulary(&mut out);
        }
        out
    }
}

impl FromIterator<Formula> for TheorySet {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        let mut t = TheorySet::new();
        for f in iter {
            t.insert(f);
        }
        t
    }
}

impl Extend<Formula> for TheorySet {
    fn extend<I: IntoIterator<Item = Formula>>(&mut self, iter: I) {
        for f in iter {
            self.insert(f);
        }
    }
}

impl<'a> IntoIterator for &'a TheorySet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
