use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

/// A parsed experiment: declarations in order, then exactly one verb.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub decls: Vec<Decl>,
    pub verb: Verb,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Group {
        name: String,
        expr: GroupExpr,
    },
    Subgroup {
        name: String,
        expr: SubExpr,
        group: String,
    },
    System {
        name: String,
        expr: SysExpr,
    },
    Tuple {
        name: String,
        regions: Vec<RegionExpr>,
    },
    Cover {
        name: String,
        regions: Vec<RegionExpr>,
    },
    Pool {
        name: String,
        expr: PoolExpr,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Group { name, .. }
            | Decl::Subgroup { name, .. }
            | Decl::System { name, .. }
            | Decl::Tuple { name, .. }
            | Decl::Cover { name, .. }
            | Decl::Pool { name, .. } => name,
        }
    }

    pub fn kind(&self) -> NameKind {
        match self {
            Decl::Group { .. } => NameKind::Group,
            Decl::Subgroup { .. } => NameKind::Subgroup,
            Decl::System { .. } => NameKind::System,
            Decl::Tuple { .. } => NameKind::Tuple,
            Decl::Cover { .. } => NameKind::Cover,
            Decl::Pool { .. } => NameKind::Pool,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NameKind {
    Group,
    Subgroup,
    System,
    Tuple,
    Cover,
    Pool,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Group => "group",
            NameKind::Subgroup => "subgroup",
            NameKind::System => "system",
            NameKind::Tuple => "tuple",
            NameKind::Cover => "cover",
            NameKind::Pool => "pool",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Integers,
    Cyclic(u64),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Semidirect,
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubExpr {
    Whole,
    Trivial,
    Multiples(u64),
    Product(Box<SubExpr>, Box<SubExpr>),
    ZFactor,
    /// Normal core of a declared subgroup.
    Core(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SysExpr {
    FullShift {
        alphabet: u32,
        group: GroupExpr,
    },
    Trivial {
        points: u32,
        group: GroupExpr,
    },
    GoldenMean,
    /// Adjacency rows as 0/1 strings, over `Z`.
    Sft {
        rows: Vec<String>,
    },
    X1 {
        k_max: u32,
    },
    Coinduce {
        base: String,
        subgroup: String,
        shift: Option<ElemExpr>,
    },
    DihedralPair {
        base: String,
    },
    Product {
        base: String,
        factors: u32,
    },
}

/// An element before it is typed by a group: integers, `x` (the
/// reflection) and parenthesized pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemExpr {
    Int(BigInt),
    Refl,
    Pair(Box<ElemExpr>, Box<ElemExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterExpr {
    Finite(BigInt),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionExpr {
    Whole,
    Cyl(Vec<(ElemExpr, u32)>),
    Pts(Vec<u32>),
    NotPts(Vec<u32>),
    Nb(u32, CenterExpr),
    APt(CenterExpr),
    /// Coset given by a representative, with a region of the base system.
    Coords(Vec<(ElemExpr, RegionExpr)>),
    Tuple(Vec<RegionExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoolExpr {
    Ball(u32),
    List(Vec<ElemExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Name(String),
    List(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verb {
    pub kind: VerbKind,
    pub args: BTreeMap<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerbKind {
    Indep,
    MaxIndep,
    Refute,
    Entropy,
    WeakMix,
    X1Verify,
    CoinduceCheck,
}

/// What a verb argument must be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Int,
    Ref(NameKind),
    Refs(NameKind),
}

impl VerbKind {
    pub const ALL: [VerbKind; 7] = [
        VerbKind::Indep,
        VerbKind::MaxIndep,
        VerbKind::Refute,
        VerbKind::Entropy,
        VerbKind::WeakMix,
        VerbKind::X1Verify,
        VerbKind::CoinduceCheck,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            VerbKind::Indep => "indep",
            VerbKind::MaxIndep => "maxindep",
            VerbKind::Refute => "refute",
            VerbKind::Entropy => "entropy",
            VerbKind::WeakMix => "weakmix",
            VerbKind::X1Verify => "x1verify",
            VerbKind::CoinduceCheck => "coinduce-check",
        }
    }

    pub fn from_keyword(s: &str) -> Option<VerbKind> {
        VerbKind::ALL.into_iter().find(|v| v.keyword() == s)
    }

    /// `(key, kind, required)` for every accepted argument.
    pub fn params(self) -> &'static [(&'static str, ArgKind, bool)] {
        use ArgKind::*;
        use NameKind::*;
        match self {
            VerbKind::Indep => &[
                ("system", Ref(System), true),
                ("tuple", Ref(Tuple), true),
                ("set", Ref(Pool), true),
            ],
            VerbKind::MaxIndep => &[
                ("system", Ref(System), true),
                ("tuple", Ref(Tuple), true),
                ("pool", Ref(Pool), true),
            ],
            VerbKind::Refute => &[
                ("system", Ref(System), true),
                ("tuple", Ref(Tuple), true),
                ("pool", Ref(Pool), true),
                ("size", Int, true),
            ],
            VerbKind::Entropy => &[
                ("system", Ref(System), true),
                ("cover", Ref(Cover), true),
                ("pool", Ref(Pool), true),
                ("n", Int, true),
                ("tuples", Refs(Tuple), false),
                ("target", Int, false),
                ("refute", Int, false),
                ("seq", Ref(Pool), false),
            ],
            VerbKind::WeakMix => &[
                ("system", Ref(System), true),
                ("tuple", Ref(Tuple), true),
                ("pool", Ref(Pool), true),
            ],
            VerbKind::X1Verify => &[("levels", Int, true), ("scan", Int, false)],
            VerbKind::CoinduceCheck => &[
                ("system", Ref(System), true),
                ("pool", Ref(Pool), true),
                ("tuple", Ref(Tuple), false),
            ],
        }
    }
}

// Canonical printing. `parse(print(spec)) == spec` for every spec.

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Integers => write!(f, "Z"),
            GroupExpr::Cyclic(n) => write!(f, "Z/{n}"),
            GroupExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            GroupExpr::Semidirect => write!(f, "semidirect_Z_Z2"),
            GroupExpr::Named(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for SubExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubExpr::Whole => write!(f, "whole"),
            SubExpr::Trivial => write!(f, "trivial"),
            SubExpr::Multiples(k) => write!(f, "multiples({k})"),
            SubExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            SubExpr::ZFactor => write!(f, "Z_factor"),
            SubExpr::Core(h) => write!(f, "core({h})"),
        }
    }
}

impl fmt::Display for SysExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SysExpr::FullShift { alphabet, group } => {
                write!(f, "full_shift({alphabet}) over {group}")
            }
            SysExpr::Trivial { points, group } => write!(f, "trivial({points}) over {group}"),
            SysExpr::GoldenMean => write!(f, "golden_mean"),
            SysExpr::Sft { rows } => write!(f, "sft({})", rows.join(", ")),
            SysExpr::X1 { k_max } => write!(f, "x1({k_max})"),
            SysExpr::Coinduce {
                base,
                subgroup,
                shift,
            } => match shift {
                Some(s) => write!(f, "coinduce({base}, {subgroup}, shift={s})"),
                None => write!(f, "coinduce({base}, {subgroup})"),
            },
            SysExpr::DihedralPair { base } => write!(f, "dihedral_pair({base})"),
            SysExpr::Product { base, factors } => write!(f, "product({base}, {factors})"),
        }
    }
}

impl fmt::Display for ElemExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemExpr::Int(n) => write!(f, "{n}"),
            ElemExpr::Refl => write!(f, "x"),
            ElemExpr::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

impl fmt::Display for CenterExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterExpr::Finite(n) => write!(f, "{n}"),
            CenterExpr::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Display for RegionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionExpr::Whole => write!(f, "whole"),
            RegionExpr::Cyl(pairs) => {
                let parts: Vec<String> = pairs.iter().map(|(g, v)| format!("{g}: {v}")).collect();
                write!(f, "cyl({})", parts.join(", "))
            }
            RegionExpr::Pts(p) => write!(f, "pts({})", join(p)),
            RegionExpr::NotPts(p) => write!(f, "!pts({})", join(p)),
            RegionExpr::Nb(k, c) => write!(f, "nb({k}, {c})"),
            RegionExpr::APt(c) => write!(f, "apt({c})"),
            RegionExpr::Coords(entries) => {
                let parts: Vec<String> = entries.iter().map(|(g, r)| format!("{g}: {r}")).collect();
                write!(f, "coords({})", parts.join(", "))
            }
            RegionExpr::Tuple(rs) => write!(f, "tuple({})", join(rs)),
        }
    }
}

impl fmt::Display for PoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoolExpr::Ball(r) => write!(f, "ball({r})"),
            PoolExpr::List(xs) => write!(f, "[{}]", join(xs)),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Name(n) => write!(f, "{n}"),
            Value::List(ns) => write!(f, "[{}]", ns.join(", ")),
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Group { name, expr } => write!(f, "group {name} = {expr}"),
            Decl::Subgroup { name, expr, group } => {
                write!(f, "subgroup {name} = {expr} of {group}")
            }
            Decl::System { name, expr } => write!(f, "system {name} = {expr}"),
            Decl::Tuple { name, regions } => write!(f, "tuple {name} = [{}]", join(regions)),
            Decl::Cover { name, regions } => write!(f, "cover {name} = [{}]", join(regions)),
            Decl::Pool { name, expr } => write!(f, "pool {name} = {expr}"),
        }
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.keyword())?;
        for (k, v) in &self.args {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ExperimentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        writeln!(f, "{}", self.verb)
    }
}
