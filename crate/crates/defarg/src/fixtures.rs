//! Small worked example theories, embedded so the self-test runs with zero
//! setup. Each fixture is a complete theory file.

/// A named theory source.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "two_extensions",
        source: "fact b -> !a & !c.\n\
                 default d1 = true : a / a.\n\
                 default d2 = true : b / b.\n\
                 default d3 = true : c / c.\n",
    },
    Fixture {
        name: "self_defeating",
        source: "default d1 = true : p / !p.\n",
    },
    Fixture {
        name: "contrary_justification",
        source: "default d1 = true : !p / p.\n",
    },
    Fixture {
        name: "blocked_justification",
        source: "fact p.\nfact q.\ndefault d1 = p : !q / !q.\n",
    },
    Fixture {
        name: "defeated_by_consequence",
        source: "fact p.\ndefault d1 = p : q / !q.\n",
    },
    Fixture {
        name: "disjunctive_pair",
        source: "fact e | o.\ndefault d1 = e : r / r.\ndefault d2 = o : r / r.\n",
    },
    Fixture {
        name: "disjunctive_single",
        source: "fact e | o.\ndefault d1 = e : r / r.\n",
    },
    Fixture {
        name: "chain",
        source: "default d1 = true : c / !d.\n\
                 default d2 = true : d / !e.\n\
                 default d3 = true : e / !f.\n",
    },
    Fixture {
        name: "mutual_exclusion",
        source: "fact b -> d.\nfact c -> d.\n\
                 default d1 = true : !c / b.\n\
                 default d2 = true : !b / c.\n",
    },
    Fixture {
        name: "inconsistent_facts",
        source: "fact p.\nfact !p.\ndefault d1 = p : q / q.\n",
    },
];

pub fn by_name(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
