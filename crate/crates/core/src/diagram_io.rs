//! Planar diagram (PD) codes.
//!
//! A diagram with `n` crossings is a list of `n` quadruples `X[a,b,c,d]` of arc
//! labels. Each quadruple lists the four arc ends at a crossing in
//! counterclockwise order, starting at the incoming under-strand; so slots 0
//! and 2 carry the under-strand and slots 1 and 3 the over-strand.
//!
//! Labels are arbitrary positive integers, each used exactly twice. Links are
//! accepted as long as their projection is connected (checked later, when the
//! universe is built).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
}

impl PdCode {
    /// Builds a code from raw quadruples, enforcing the label rules.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &label in crossings.iter().flatten() {
            *counts.entry(label).or_default() += 1;
        }
        let bad: Vec<u32> = counts
            .iter()
            .filter(|&(_, &c)| c != 2)
            .map(|(&l, _)| l)
            .collect();
        if !bad.is_empty() {
            return Err(Error::LabelMultiplicity { labels: bad });
        }
        if counts.contains_key(&0) {
            return Err(Error::Input("arc label 0 is not positive".into()));
        }
        Ok(PdCode { crossings })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Distinct arc labels in increasing order.
    pub fn labels(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.crossings.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PD[")?;
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "X[{a},{b},{c},{d}]")?;
        }
        f.write_str("]")
    }
}

impl FromStr for PdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

/// Canonical text: crossings in stored order, no whitespace.
pub fn serialize_pd(code: &PdCode) -> String {
    code.to_string()
}

/// Parses `PD[X[a,b,c,d], ...]`. Whitespace between tokens is ignored.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.keyword("PD")?;
    p.punct(b'[')?;
    let mut crossings = Vec::new();
    p.skip_ws();
    if p.peek() == Some(b']') {
        p.pos += 1;
        p.end()?;
        return Err(Error::EmptyDiagram);
    }
    loop {
        crossings.push(p.crossing()?);
        p.skip_ws();
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b']') => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.error("expected `,` or `]`")),
        }
    }
    p.end()?;
    PdCode::new(crossings)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{kw}`")))
        }
    }

    fn punct(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<u32>() {
            Ok(0) => Err(Error::Syntax { position: start, message: "arc labels must be positive".into() }),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Syntax { position: start, message: "integer out of range".into() }),
        }
    }

    fn crossing(&mut self) -> Result<[u32; 4]> {
        self.keyword("X")?;
        self.punct(b'[')?;
        let mut q = [0u32; 4];
        for (i, slot) in q.iter_mut().enumerate() {
            if i > 0 {
                self.punct(b',')?;
            }
            *slot = self.int()?;
        }
        self.punct(b']')?;
        Ok(q)
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }
}

/// Names accepted by [`builtin_diagram`].
pub const BUILTIN_NAMES: [&str; 9] = ["kink", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1"];

const BUILTIN_TABLE: [(&str, &str); 9] = [
    ("kink", "PD[X[1,1,2,2]]"),
    ("3_1", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"),
    ("4_1", "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"),
    ("5_1", "PD[X[1,6,2,7],X[3,8,4,9],X[5,10,6,1],X[7,2,8,3],X[9,4,10,5]]"),
    ("5_2", "PD[X[1,4,2,5],X[3,8,4,9],X[5,10,6,1],X[9,6,10,7],X[7,2,8,3]]"),
    ("6_1", "PD[X[1,4,2,5],X[7,10,8,11],X[3,9,4,8],X[9,3,10,2],X[5,12,6,1],X[11,6,12,7]]"),
    ("6_2", "PD[X[1,4,2,5],X[5,10,6,11],X[3,9,4,8],X[9,3,10,2],X[7,12,8,1],X[11,6,12,7]]"),
    ("6_3", "PD[X[4,2,5,1],X[8,4,9,3],X[12,9,1,10],X[10,5,11,6],X[6,11,7,12],X[2,8,3,7]]"),
    ("7_1", "PD[X[1,8,2,9],X[3,10,4,11],X[5,12,6,13],X[7,14,8,1],X[9,2,10,3],X[11,4,12,5],X[13,6,14,7]]"),
];

/// Small alternating diagrams from the standard knot table, plus the
/// one-crossing kink.
pub fn builtin_diagram(name: &str) -> Result<PdCode> {
    BUILTIN_TABLE
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_pd(text).expect("builtin table entries parse"))
        .ok_or_else(|| Error::UnknownDiagram(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_kink() {
        let c = parse_pd("PD[X[1,1,2,2]]").unwrap();
        assert_eq!(c.crossing_count(), 1);
        assert_eq!(c.labels(), vec![1, 2]);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let c = parse_pd("  PD [ X[1, 4,2,5] ,X [3,6,4,1],\n X[5,2,6,3] ] \n").unwrap();
        assert_eq!(serialize_pd(&c), "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    }

    #[test]
    fn multiplicity_error_lists_labels() {
        let err = parse_pd("PD[X[1,4,2,5],X[3,6,4,1]]").unwrap_err();
        assert_eq!(err, Error::LabelMultiplicity { labels: vec![2, 3, 5, 6] });
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_pd("PD[X[1,1,2]]") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_pd("PD[X[1,1,2,2]] junk"), Err(Error::Syntax { position: 15, .. })));
        assert!(matches!(parse_pd("X[1,1,2,2]"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_pd("PD[X[1,0,2,2]]"), Err(Error::Syntax { position: 7, .. })));
    }

    #[test]
    fn empty_diagram() {
        assert_eq!(parse_pd("PD[]"), Err(Error::EmptyDiagram));
        assert_eq!(PdCode::new(vec![]), Err(Error::EmptyDiagram));
    }

    #[test]
    fn non_consecutive_labels_are_fine() {
        let c = parse_pd("PD[X[10,10,7,7]]").unwrap();
        assert_eq!(c.labels(), vec![7, 10]);
    }

    #[test]
    fn builtin_names_resolve() {
        for name in BUILTIN_NAMES {
            let code = builtin_diagram(name).unwrap();
            let n = code.crossing_count();
            assert_eq!(code.labels().len(), 2 * n, "{name}");
            assert_eq!(parse_pd(&serialize_pd(&code)).unwrap(), code);
        }
        assert_eq!(serialize_pd(&builtin_diagram("kink").unwrap()), "PD[X[1,1,2,2]]");
        assert!(matches!(builtin_diagram("8_19"), Err(Error::UnknownDiagram(_))));
    }
}
