use std::fmt;

/// One tensor factor of the four-part system.
///
/// Upper-case letters are atoms, lower-case letters are photon modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    AtomA,
    AtomB,
    ModeA,
    ModeB,
}

impl Subsystem {
    pub const ALL: [Subsystem; 4] = [
        Subsystem::AtomA,
        Subsystem::AtomB,
        Subsystem::ModeA,
        Subsystem::ModeB,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Subsystem::AtomA => "A",
            Subsystem::AtomB => "B",
            Subsystem::ModeA => "a",
            Subsystem::ModeB => "b",
        }
    }

    pub fn is_atom(self) -> bool {
        matches!(self, Subsystem::AtomA | Subsystem::AtomB)
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The six unordered pairs, in the order atoms, modes, Aa, Ab, Bb, Ba.
pub const SIX_PAIRS: [(Subsystem, Subsystem); 6] = [
    (Subsystem::AtomA, Subsystem::AtomB),
    (Subsystem::ModeA, Subsystem::ModeB),
    (Subsystem::AtomA, Subsystem::ModeA),
    (Subsystem::AtomA, Subsystem::ModeB),
    (Subsystem::AtomB, Subsystem::ModeB),
    (Subsystem::AtomB, Subsystem::ModeA),
];
