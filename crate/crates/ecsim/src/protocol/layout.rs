//! Qubit role assignments.

use crate::error::{Error, Result};

/// Role of a physical qubit in a protocol circuit.
///
/// `level` counts protocol applications (1 for the non-iterated protocol);
/// `index` numbers signal/noise qubits within a level, starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// The ancilla holding the reference half of the input Bell pair.
    Ancilla,
    /// The input qubit A.
    Original,
    Signal {
        level: u32,
        index: u32,
    },
    Noise {
        level: u32,
        index: u32,
    },
}

impl Role {
    pub fn label(&self) -> String {
        match self {
            Role::Ancilla => "A~".to_string(),
            Role::Original => "A".to_string(),
            Role::Signal { level: 1, index } => format!("S{index}"),
            Role::Noise { level: 1, index } => format!("N{index}"),
            Role::Signal { level, index } => format!("S{index}.L{level}"),
            Role::Noise { level, index } => format!("N{index}.L{level}"),
        }
    }
}

/// Role map over a register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitLayout {
    roles: Vec<Role>,
    clones: usize,
}

impl QubitLayout {
    /// Standard single-application layout over 2n + 2 qubits:
    /// ancilla 0, original 1, signals 2..n+2, noises n+2..2n+2.
    pub fn single(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("need n >= 1 clones".into()));
        }
        let mut roles = vec![Role::Ancilla, Role::Original];
        for i in 1..=n {
            roles.push(Role::Signal {
                level: 1,
                index: i as u32,
            });
        }
        for i in 1..=n {
            roles.push(Role::Noise {
                level: 1,
                index: i as u32,
            });
        }
        Ok(QubitLayout { roles, clones: n })
    }

    pub(crate) fn from_roles(roles: Vec<Role>, clones: usize) -> Self {
        QubitLayout { roles, clones }
    }

    pub fn num_qubits(&self) -> usize {
        self.roles.len()
    }

    /// The clones-per-application parameter n.
    pub fn clones(&self) -> usize {
        self.clones
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, q: usize) -> Result<Role> {
        self.roles.get(q).copied().ok_or(Error::IndexOutOfRange {
            index: q,
            num_qubits: self.roles.len(),
        })
    }

    pub fn ancilla(&self) -> usize {
        self.find(Role::Ancilla).expect("layout has an ancilla")
    }

    pub fn original(&self) -> usize {
        self.find(Role::Original).expect("layout has an original")
    }

    /// Level-1 signal qubit S_i (1-based).
    pub fn signal(&self, i: usize) -> Result<usize> {
        self.find(Role::Signal {
            level: 1,
            index: i as u32,
        })
        .ok_or_else(|| Error::InvalidParameter(format!("layout has no signal S{i}")))
    }

    /// Level-1 noise qubit N_i (1-based).
    pub fn noise(&self, i: usize) -> Result<usize> {
        self.find(Role::Noise {
            level: 1,
            index: i as u32,
        })
        .ok_or_else(|| Error::InvalidParameter(format!("layout has no noise qubit N{i}")))
    }

    fn find(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|r| *r == role)
    }

    /// Serialization header: one `# q<i> = <label>` line per qubit.
    pub fn header(&self) -> String {
        let mut out = String::new();
        for (q, role) in self.roles.iter().enumerate() {
            out.push_str(&format!("# q{q} = {}\n", role.label()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_layout_roles() {
        let layout = QubitLayout::single(3).unwrap();
        assert_eq!(layout.num_qubits(), 8);
        assert_eq!(layout.ancilla(), 0);
        assert_eq!(layout.original(), 1);
        assert_eq!(layout.signal(1).unwrap(), 2);
        assert_eq!(layout.signal(3).unwrap(), 4);
        assert_eq!(layout.noise(1).unwrap(), 5);
        assert_eq!(layout.noise(3).unwrap(), 7);
        assert!(layout.signal(4).is_err());
    }

    #[test]
    fn roles_are_disjoint_and_exhaustive() {
        let layout = QubitLayout::single(4).unwrap();
        let labels: std::collections::HashSet<String> =
            layout.roles().iter().map(|r| r.label()).collect();
        assert_eq!(labels.len(), layout.num_qubits());
    }
}
