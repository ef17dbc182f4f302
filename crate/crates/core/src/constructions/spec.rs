//! The group-spec language.
//!
//! ```text
//! spec  := name '(' [ arg { ',' arg } ] ')'
//!        | 'perm' '(' int [ ';' elem { ',' elem } ] ')'
//! arg   := spec | int
//! elem  := '(' ')' | cycle { cycle }
//! cycle := '(' int { ',' int } ')'
//! ```
//!
//! Whitespace is free between tokens. Names, arities and parameter ranges
//! are checked while parsing so every error carries a line and column.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::gf::is_prime;
use crate::limits::Limits;
use crate::modrep::{deleted_perm_module, HModule};
use crate::perm::{PermGroup, Permutation};
use crate::semidirect::SdGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecArg {
    Int(u64),
    Spec(GroupSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Call { name: String, args: Vec<SpecArg> },
    Perm { degree: usize, gens: Vec<Permutation> },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Group,
    Module,
}

#[derive(Clone, Copy)]
enum Param {
    /// Integer with a lower bound.
    Int(u64),
    Prime,
    Group,
    Module,
}

struct Signature {
    name: &'static str,
    params: &'static [Param],
    /// The last parameter may repeat.
    variadic: bool,
    kind: Kind,
}

const SIGNATURES: &[Signature] = &[
    Signature { name: "sym", params: &[Param::Int(1)], variadic: false, kind: Kind::Group },
    Signature { name: "alt", params: &[Param::Int(1)], variadic: false, kind: Kind::Group },
    Signature { name: "cyclic", params: &[Param::Int(1)], variadic: false, kind: Kind::Group },
    Signature { name: "dihedral", params: &[Param::Int(1)], variadic: false, kind: Kind::Group },
    Signature { name: "power", params: &[Param::Group, Param::Int(1)], variadic: false, kind: Kind::Group },
    Signature { name: "product", params: &[Param::Group], variadic: true, kind: Kind::Group },
    Signature { name: "semidirect", params: &[Param::Module, Param::Int(1)], variadic: false, kind: Kind::Group },
    Signature { name: "deleted", params: &[Param::Int(2), Param::Prime], variadic: false, kind: Kind::Module },
    Signature { name: "wreath_p", params: &[Param::Prime, Param::Int(1)], variadic: false, kind: Kind::Group },
    Signature { name: "cor12", params: &[Param::Prime], variadic: false, kind: Kind::Group },
    Signature { name: "intro", params: &[], variadic: false, kind: Kind::Group },
    Signature { name: "klein_d12", params: &[], variadic: false, kind: Kind::Group },
    Signature { name: "gl22", params: &[Param::Int(1)], variadic: false, kind: Kind::Group },
];

/// Parameters larger than this are rejected at parse time.
const MAX_INT: u64 = 1 << 20;

fn signature(name: &str) -> Option<&'static Signature> {
    SIGNATURES.iter().find(|s| s.name == name)
}

impl GroupSpec {
    fn kind(&self) -> Kind {
        match self {
            GroupSpec::Perm { .. } => Kind::Group,
            GroupSpec::Call { name, .. } => signature(name).map_or(Kind::Group, |s| s.kind),
        }
    }

    pub fn is_module(&self) -> bool {
        self.kind() == Kind::Module
    }
}

impl fmt::Display for SpecArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecArg::Int(n) => write!(f, "{n}"),
            SpecArg::Spec(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Call { name, args } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            GroupSpec::Perm { degree, gens } => {
                write!(f, "perm({degree}")?;
                for (i, g) in gens.iter().enumerate() {
                    write!(f, "{}{g}", if i == 0 { "; " } else { ", " })?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.text, self.pos, msg)
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.text, pos, msg)
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{c}', found '{x}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_lowercase() || c == '_' || (self.pos > start && c.is_ascii_digit()) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a name, found '{c}'")),
                None => self.error("expected a name, found end of input"),
            });
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected an integer, found '{c}'")),
                None => self.error("expected an integer, found end of input"),
            });
        }
        self.text[start..self.pos]
            .parse::<u64>()
            .ok()
            .filter(|&n| n <= MAX_INT)
            .ok_or_else(|| self.error_at(start, format!("integer exceeds {MAX_INT}")))
    }

    fn spec(&mut self) -> Result<GroupSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        if name == "perm" {
            return self.perm();
        }
        let sig = signature(&name).ok_or_else(|| self.error_at(start, format!("unknown name `{name}`")))?;
        self.expect('(')?;
        let mut args = Vec::new();
        if !self.eat(')') {
            loop {
                self.skip_ws();
                let arg_pos = self.pos;
                let idx = args.len();
                let param = match sig.params.get(idx) {
                    Some(&p) => p,
                    None if sig.variadic => *sig.params.last().unwrap(),
                    None => {
                        return Err(self.error_at(
                            arg_pos,
                            format!("`{name}` takes {} argument(s)", sig.params.len()),
                        ))
                    }
                };
                args.push(self.arg(param, arg_pos)?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        if args.len() < sig.params.len() {
            return Err(self.error_at(
                self.pos - 1,
                format!("`{name}` takes {} argument(s), got {}", sig.params.len(), args.len()),
            ));
        }
        Ok(GroupSpec::Call { name, args })
    }

    fn arg(&mut self, param: Param, pos: usize) -> Result<SpecArg, ParseError> {
        match param {
            Param::Int(min) => {
                let n = self.int()?;
                if n < min {
                    return Err(self.error_at(pos, format!("expected an integer >= {min}")));
                }
                Ok(SpecArg::Int(n))
            }
            Param::Prime => {
                let n = self.int()?;
                if !is_prime(n) {
                    return Err(self.error_at(pos, format!("{n} is not prime")));
                }
                Ok(SpecArg::Int(n))
            }
            Param::Group | Param::Module => {
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("expected a group spec, found an integer"));
                }
                let s = self.spec()?;
                let want = if matches!(param, Param::Group) { Kind::Group } else { Kind::Module };
                if s.kind() != want {
                    let what = if want == Kind::Group { "a group" } else { "a module" };
                    return Err(self.error_at(pos, format!("expected {what}")));
                }
                Ok(SpecArg::Spec(s))
            }
        }
    }

    fn perm(&mut self) -> Result<GroupSpec, ParseError> {
        self.expect('(')?;
        self.skip_ws();
        let deg_pos = self.pos;
        let degree = self.int()?;
        if degree == 0 {
            return Err(self.error_at(deg_pos, "degree must be positive"));
        }
        let degree = degree as usize;
        let mut gens = Vec::new();
        if self.eat(';') {
            loop {
                gens.push(self.element(degree)?);
                if self.eat(')') {
                    return Ok(GroupSpec::Perm { degree, gens });
                }
                self.expect(',')?;
            }
        }
        self.expect(')')?;
        Ok(GroupSpec::Perm { degree, gens })
    }

    /// One generator: a run of parenthesized cycles.
    fn element(&mut self, degree: usize) -> Result<Permutation, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut any = false;
        while {
            self.skip_ws();
            self.peek() == Some('(')
        } {
            any = true;
            self.pos += 1;
            if self.eat(')') {
                continue;
            }
            let mut cycle = Vec::new();
            loop {
                self.skip_ws();
                let p = self.pos;
                let x = self.int()? as usize;
                if x == 0 || x > degree {
                    return Err(self.error_at(p, format!("point {x} outside 1..={degree}")));
                }
                cycle.push(x);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
            cycles.push(cycle);
        }
        if !any {
            return Err(self.error("expected a cycle"));
        }
        Permutation::from_cycles(degree, &cycles).map_err(|e| self.error_at(start, e.to_string()))
    }
}

/// A built object: a permutation group, a semidirect product or a module.
#[derive(Clone, Debug)]
pub enum Built {
    Group(PermGroup),
    Semidirect(SdGroup),
    Module(HModule),
}

impl Built {
    /// The permutation group, through the affine embedding for semidirect products.
    pub fn perm_group(&self, limits: &Limits) -> Result<PermGroup> {
        match self {
            Built::Group(g) => Ok(g.clone()),
            Built::Semidirect(s) => s.to_affine_perm(limits),
            Built::Module(_) => Err(Error::InvalidArgument("a module is not a group".into())),
        }
    }
}

fn int_arg(args: &[SpecArg], i: usize) -> u64 {
    match &args[i] {
        SpecArg::Int(n) => *n,
        SpecArg::Spec(_) => unreachable!("checked by the parser"),
    }
}

fn spec_arg(args: &[SpecArg], i: usize) -> &GroupSpec {
    match &args[i] {
        SpecArg::Spec(s) => s,
        SpecArg::Int(_) => unreachable!("checked by the parser"),
    }
}

fn degree_ok(n: u64, limits: &Limits) -> Result<usize> {
    if n > limits.degree_cap {
        return Err(Error::cap("degree", n, limits.degree_cap));
    }
    Ok(n as usize)
}

pub fn build(spec: &GroupSpec, limits: &Limits) -> Result<Built> {
    let (name, args) = match spec {
        GroupSpec::Perm { degree, gens } => {
            return Ok(Built::Group(PermGroup::new(*degree, gens.clone())?));
        }
        GroupSpec::Call { name, args } => (name.as_str(), args.as_slice()),
    };
    let group = |g: PermGroup| Ok(Built::Group(g));
    match name {
        "sym" => group(PermGroup::symmetric(degree_ok(int_arg(args, 0), limits)?)),
        "alt" => group(PermGroup::alternating(degree_ok(int_arg(args, 0), limits)?)),
        "cyclic" => group(PermGroup::cyclic(degree_ok(int_arg(args, 0), limits)?)),
        "dihedral" => group(PermGroup::dihedral(degree_ok(int_arg(args, 0), limits)?)),
        "power" => {
            let g = build(spec_arg(args, 0), limits)?.perm_group(limits)?;
            let t = int_arg(args, 1);
            degree_ok(g.degree() as u64 * t, limits)?;
            group(super::power(&g, t as usize)?)
        }
        "product" => {
            let parts = (0..args.len())
                .map(|i| build(spec_arg(args, i), limits)?.perm_group(limits))
                .collect::<Result<Vec<_>>>()?;
            degree_ok(parts.iter().map(|g| g.degree() as u64).sum(), limits)?;
            group(PermGroup::direct_product(&parts))
        }
        "semidirect" => {
            let m = match build(spec_arg(args, 0), limits)? {
                Built::Module(m) => m,
                _ => unreachable!("checked by the parser"),
            };
            Ok(Built::Semidirect(SdGroup::new(m, int_arg(args, 1) as usize)?))
        }
        "deleted" => {
            let n = degree_ok(int_arg(args, 0), limits)?;
            Ok(Built::Module(deleted_perm_module(n, int_arg(args, 1) as u32)?))
        }
        "wreath_p" => {
            let (p, m) = (int_arg(args, 0), int_arg(args, 1));
            group(super::iterated_wreath(p as u32, m as u32, limits)?.group)
        }
        "cor12" => group(super::cor12_group(int_arg(args, 0) as u32, limits)?),
        "intro" => group(super::intro_group()),
        "klein_d12" => group(super::klein_d12()),
        "gl22" => Ok(Built::Semidirect(super::gl22(int_arg(args, 0) as usize)?)),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) -> String {
        parse_spec(s).unwrap().to_string()
    }

    #[test]
    fn parses_and_prints() {
        assert_eq!(roundtrip("alt(5)"), "alt(5)");
        assert_eq!(roundtrip("semidirect(deleted(3,2), 2)"), "semidirect(deleted(3, 2), 2)");
        assert_eq!(roundtrip(" power( alt(5) ,2 ) "), "power(alt(5), 2)");
        assert_eq!(
            roundtrip("perm(5; (1,2,3,4,5), (1,2,3))"),
            "perm(5; (1,2,3,4,5), (1,2,3))"
        );
        assert_eq!(roundtrip("perm(4; (3,4)(1,2), ())"), "perm(4; (1,2)(3,4), ())");
        assert_eq!(roundtrip("perm(3)"), "perm(3)");
        assert_eq!(roundtrip("intro()"), "intro()");
        assert_eq!(roundtrip("product(cyclic(2), cyclic(4), sym(3))"), "product(cyclic(2), cyclic(4), sym(3))");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_spec("alt(5").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        let e = parse_spec("alt(5))").unwrap_err();
        assert_eq!(e.col, 7);
        let e = parse_spec("foo(1)").unwrap_err();
        assert_eq!(e.col, 1);
        let e = parse_spec("deleted(3, 4)").unwrap_err();
        assert_eq!(e.col, 12);
        let e = parse_spec("semidirect(alt(5), 2)").unwrap_err();
        assert_eq!(e.col, 12);
        let e = parse_spec("power(alt(5))").unwrap_err();
        assert!(e.message.contains("argument"));
        let e = parse_spec("perm(3; (1,4))").unwrap_err();
        assert_eq!(e.col, 12);
        let e = parse_spec("sym(\n  x)").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse_spec("sym(0)").is_err());
        assert!(parse_spec("perm(3; (1,2)(2,3))").is_err());
    }

    #[test]
    fn builds() {
        let lim = Limits::default();
        let order = |s: &str| build(&parse_spec(s).unwrap(), &lim).unwrap().perm_group(&lim).unwrap().order_u64();
        assert_eq!(order("alt(5)"), Some(60));
        assert_eq!(order("wreath_p(3,2)"), Some(81));
        assert_eq!(order("semidirect(deleted(3,2), 2)"), Some(96));
        assert_eq!(order("gl22(1)"), Some(24));
        assert_eq!(order("power(alt(5), 2)"), Some(3600));
        assert_eq!(order("dihedral(6)"), Some(12));
        assert_eq!(order("perm(5; (1,2,3,4,5), (1,2,3))"), Some(60));
        match build(&parse_spec("deleted(7,7)").unwrap(), &lim).unwrap() {
            Built::Module(m) => assert_eq!((m.dim(), m.prime()), (5, 7)),
            other => panic!("expected a module, got {other:?}"),
        }
        assert!(build(&parse_spec("cor12(5)").unwrap(), &lim).is_err());
    }
}
