use crate::subsystem::Subsystem;

pub const DIM: usize = 16;

/// Bit position of a factor in the basis index: atom A slowest, mode b fastest.
pub(crate) fn shift(s: Subsystem) -> usize {
    match s {
        Subsystem::AtomA => 3,
        Subsystem::AtomB => 2,
        Subsystem::ModeA => 1,
        Subsystem::ModeB => 0,
    }
}

/// Index of `|σ_A σ_B n_a n_b⟩`, with `↓ = 0`, `↑ = 1` and photon numbers 0 or 1.
pub fn basis_index(atom_a: usize, atom_b: usize, mode_a: usize, mode_b: usize) -> usize {
    debug_assert!(atom_a < 2 && atom_b < 2 && mode_a < 2 && mode_b < 2);
    (atom_a << 3) | (atom_b << 2) | (mode_a << 1) | mode_b
}

/// Level (0 or 1) of one factor in a basis index.
pub fn occupation(index: usize, s: Subsystem) -> usize {
    (index >> shift(s)) & 1
}

/// `|↑↓00⟩, |↓↑00⟩, |↓↓10⟩, |↓↓01⟩`.
pub const SINGLE_EXCITATION: [usize; 4] = [0b1000, 0b0100, 0b0010, 0b0001];
