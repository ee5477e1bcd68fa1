use std::fmt;

/// Number of coefficient parameters known to the engine.
pub const NPARAMS: usize = 5;

/// A coefficient parameter. The declaration order (alpha, a, q, t, p) is the
/// fixed variable order used by every term ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Alpha = 0,
    A = 1,
    Q = 2,
    T = 3,
    P = 4,
}

impl Param {
    pub const ALL: [Param; NPARAMS] = [Param::Alpha, Param::A, Param::Q, Param::T, Param::P];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::A => "a",
            Param::Q => "q",
            Param::T => "t",
            Param::P => "p",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered subset of the parameters; the indeterminate list of a field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamSet(u8);

impl ParamSet {
    pub const EMPTY: ParamSet = ParamSet(0);

    pub fn of(params: &[Param]) -> ParamSet {
        params.iter().fold(ParamSet::EMPTY, |s, &p| s.with(p))
    }

    pub fn single(p: Param) -> ParamSet {
        ParamSet(1 << p.index())
    }

    pub fn with(self, p: Param) -> ParamSet {
        ParamSet(self.0 | (1 << p.index()))
    }

    pub fn without(self, p: Param) -> ParamSet {
        ParamSet(self.0 & !(1 << p.index()))
    }

    pub fn contains(self, p: Param) -> bool {
        self.0 & (1 << p.index()) != 0
    }

    pub fn union(self, other: ParamSet) -> ParamSet {
        ParamSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ParamSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Param> {
        Param::ALL.into_iter().filter(move |p| self.contains(*p))
    }

    /// Parses a comma separated list such as `alpha,q`; `-` or the empty
    /// string is the empty set.
    pub fn parse(s: &str) -> Option<ParamSet> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Some(ParamSet::EMPTY);
        }
        s.split(',')
            .map(|n| Param::from_name(n.trim()))
            .try_fold(ParamSet::EMPTY, |acc, p| p.map(|p| acc.with(p)))
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let names: Vec<&str> = self.iter().map(Param::name).collect();
        f.write_str(&names.join(","))
    }
}
