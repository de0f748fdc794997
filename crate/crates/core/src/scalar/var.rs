use std::fmt;
use std::str::FromStr;

/// Number of indeterminates in the alphabet.
pub const NVARS: usize = 8;

/// The fixed indeterminate alphabet.
///
/// Declaration order is also the lexicographic priority used by the monomial
/// order (`mu` is the most significant variable).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Mu,
    Lam,
    Chat,
    Tau,
    Taup,
    P,
    Q,
    H,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Mu,
        Var::Lam,
        Var::Chat,
        Var::Tau,
        Var::Taup,
        Var::P,
        Var::Q,
        Var::H,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Mu => "mu",
            Var::Lam => "lam",
            Var::Chat => "chat",
            Var::Tau => "tau",
            Var::Taup => "taup",
            Var::P => "p",
            Var::Q => "q",
            Var::H => "h",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::from_name(s).ok_or_else(|| format!("unknown indeterminate `{s}`"))
    }
}
