//! The commutative non-unital ring `I = <a, b | 2a = 2b = 0, a^2 = b, ab = 0>`.
//!
//! Every element is carried as a bit pair `(s, t)` standing for `a*s + b*t`,
//! so `0 = (0,0)`, `a = (1,0)`, `b = (0,1)` and `c = a + b = (1,1)`.
//! Addition is XOR on both bits and the product collapses to `b * (s * s')`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingParseError {
    #[error("'{0}' is not an element of I (expected one of 0, a, b, c)")]
    UnknownSymbol(char),
    #[error("expected exactly one symbol, got {0:?}")]
    BadLength(String),
    #[error("malformed table dump: {0}")]
    MalformedTable(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RingElement {
    s: bool,
    t: bool,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { s: false, t: false };
    pub const A: RingElement = RingElement { s: true, t: false };
    pub const B: RingElement = RingElement { s: false, t: true };
    pub const C: RingElement = RingElement { s: true, t: true };

    /// Elements in the order used by the ring tables: `0, a, b, c`.
    pub const ALL: [RingElement; 4] = [Self::ZERO, Self::A, Self::B, Self::C];

    pub const fn new(s: bool, t: bool) -> Self {
        RingElement { s, t }
    }

    /// `a`-coefficient.
    pub const fn s(self) -> bool {
        self.s
    }

    /// `b`-coefficient.
    pub const fn t(self) -> bool {
        self.t
    }

    /// Compact code `s | t << 1`, i.e. 0, a, b, c map to 0, 1, 2, 3.
    pub const fn code(self) -> u8 {
        self.s as u8 | (self.t as u8) << 1
    }

    pub fn from_code(code: u8) -> Option<Self> {
        (code < 4).then(|| RingElement::new(code & 1 == 1, code & 2 == 2))
    }

    pub const fn add(self, other: Self) -> Self {
        RingElement::new(self.s ^ other.s, self.t ^ other.t)
    }

    pub const fn mul(self, other: Self) -> Self {
        RingElement::new(false, self.s & other.s)
    }

    /// Scalar action of F2: `x*0 = 0`, `x*1 = x`.
    pub const fn scale(self, bit: bool) -> Self {
        RingElement::new(self.s & bit, self.t & bit)
    }

    /// Gray image `(t, s + t)`.
    pub const fn gray(self) -> (bool, bool) {
        (self.t, self.s ^ self.t)
    }

    pub const fn lee_weight(self) -> u32 {
        let (x, y) = self.gray();
        x as u32 + y as u32
    }

    pub fn lee_distance(self, other: Self) -> u32 {
        (self - other).lee_weight()
    }

    pub const fn symbol(self) -> char {
        match (self.s, self.t) {
            (false, false) => '0',
            (true, false) => 'a',
            (false, true) => 'b',
            (true, true) => 'c',
        }
    }

    pub fn from_symbol(ch: char) -> Result<Self, RingParseError> {
        match ch {
            '0' => Ok(Self::ZERO),
            'a' => Ok(Self::A),
            'b' => Ok(Self::B),
            'c' => Ok(Self::C),
            other => Err(RingParseError::UnknownSymbol(other)),
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for RingElement {
    type Err = RingParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(ch), None) => Self::from_symbol(ch),
            _ => Err(RingParseError::BadLength(s.to_string())),
        }
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: Self) -> Self {
        RingElement::add(self, rhs)
    }
}

// Characteristic 2: subtraction is addition.
impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: Self) -> Self {
        RingElement::add(self, rhs)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: Self) -> Self {
        RingElement::mul(self, rhs)
    }
}

pub fn add(x: RingElement, y: RingElement) -> RingElement {
    x + y
}

pub fn mul(x: RingElement, y: RingElement) -> RingElement {
    x * y
}

pub fn gray_element(x: RingElement) -> (bool, bool) {
    x.gray()
}

pub fn lee_weight_element(x: RingElement) -> u32 {
    x.lee_weight()
}

pub type OperationTable = [[RingElement; 4]; 4];

fn table_of(op: impl Fn(RingElement, RingElement) -> RingElement) -> OperationTable {
    let mut table = [[RingElement::ZERO; 4]; 4];
    for (i, &x) in RingElement::ALL.iter().enumerate() {
        for (j, &y) in RingElement::ALL.iter().enumerate() {
            table[i][j] = op(x, y);
        }
    }
    table
}

pub fn addition_table() -> OperationTable {
    table_of(add)
}

pub fn multiplication_table() -> OperationTable {
    table_of(mul)
}

/// Renders an operation table as
///
/// ```text
/// + | 0 a b c
/// --+--------
/// 0 | 0 a b c
/// ```
pub fn render_table(op_symbol: char, table: &OperationTable) -> String {
    let mut out = format!("{op_symbol} | 0 a b c\n--+--------\n");
    for (row_elem, row) in RingElement::ALL.iter().zip(table) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{} | {}\n", row_elem, cells.join(" ")));
    }
    out
}

/// Parses the output of [`render_table`] back into an operator symbol and table.
pub fn parse_table(text: &str) -> Result<(char, OperationTable), RingParseError> {
    let bad = |msg: &str| RingParseError::MalformedTable(msg.to_string());
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("missing header"))?;
    let (op, cols) = header.split_once('|').ok_or_else(|| bad("header lacks '|'"))?;
    let op_symbol = op.trim().chars().next().ok_or_else(|| bad("missing operator"))?;
    let columns = cols.split_whitespace().map(str::parse::<RingElement>).collect::<Result<Vec<_>, _>>()?;
    if columns != RingElement::ALL {
        return Err(bad("columns must be 0 a b c"));
    }
    let rule = lines.next().ok_or_else(|| bad("missing rule line"))?;
    if !rule.starts_with("--") {
        return Err(bad("missing rule line"));
    }

    let mut table = [[RingElement::ZERO; 4]; 4];
    for (i, expected_row) in RingElement::ALL.iter().enumerate() {
        let line = lines.next().ok_or_else(|| bad("missing row"))?;
        let (label, cells) = line.split_once('|').ok_or_else(|| bad("row lacks '|'"))?;
        if label.trim().parse::<RingElement>()? != *expected_row {
            return Err(bad("rows out of order"));
        }
        let cells = cells.split_whitespace().map(str::parse::<RingElement>).collect::<Result<Vec<_>, _>>()?;
        if cells.len() != 4 {
            return Err(bad("row must have four entries"));
        }
        table[i].copy_from_slice(&cells);
    }
    if lines.next().is_some() {
        return Err(bad("trailing content"));
    }
    Ok((op_symbol, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ch: char) -> RingElement {
        RingElement::from_symbol(ch).unwrap()
    }

    // Rows of the published addition and multiplication tables, indexed 0 a b c.
    const ADD_ROWS: [&str; 4] = ["0abc", "a0cb", "bc0a", "cba0"];
    const MUL_ROWS: [&str; 4] = ["0000", "0b0b", "0000", "0b0b"];

    #[test]
    fn tables_match_published_entries() {
        let add_t = addition_table();
        let mul_t = multiplication_table();
        for i in 0..4 {
            for (j, (a_ch, m_ch)) in ADD_ROWS[i].chars().zip(MUL_ROWS[i].chars()).enumerate() {
                assert_eq!(add_t[i][j], el(a_ch), "add row {i} col {j}");
                assert_eq!(mul_t[i][j], el(m_ch), "mul row {i} col {j}");
            }
        }
    }

    #[test]
    fn named_examples() {
        assert_eq!(add(el('a'), el('b')), el('c'));
        assert_eq!(add(el('c'), el('c')), el('0'));
        assert_eq!(mul(el('a'), el('c')), el('b'));
        assert_eq!(mul(el('b'), el('a')), el('0'));
        for x in RingElement::ALL {
            assert_eq!(add(x, RingElement::ZERO), x);
            assert_eq!(mul(RingElement::ZERO, x), RingElement::ZERO);
            assert_eq!(mul(RingElement::B, x), RingElement::ZERO);
        }
    }

    #[test]
    fn gray_and_lee() {
        assert_eq!(gray_element(el('0')), (false, false));
        assert_eq!(gray_element(el('a')), (false, true));
        assert_eq!(gray_element(el('b')), (true, true));
        assert_eq!(gray_element(el('c')), (true, false));
        let weights: Vec<u32> = RingElement::ALL.iter().map(|&x| lee_weight_element(x)).collect();
        assert_eq!(weights, vec![0, 1, 2, 1]);
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for x in RingElement::ALL {
            assert_eq!(x + x, RingElement::ZERO);
            for y in RingElement::ALL {
                assert_eq!(x + y, y + x);
                assert_eq!(x * y, y * x);
                for z in RingElement::ALL {
                    assert_eq!((x + y) + z, x + (y + z));
                    assert_eq!((x * y) * z, x * (y * z));
                    assert_eq!(x * (y + z), x * y + x * z);
                }
            }
        }
    }

    #[test]
    fn no_multiplicative_identity() {
        let unit = RingElement::ALL.iter().find(|&&e| RingElement::ALL.iter().all(|&x| e * x == x));
        assert!(unit.is_none());
    }

    #[test]
    fn image_of_mul_is_zero_or_b() {
        for x in RingElement::ALL {
            for y in RingElement::ALL {
                assert!(matches!(x * y, RingElement::ZERO | RingElement::B));
            }
        }
    }

    #[test]
    fn lee_distance_matches_gray_hamming_distance() {
        for x in RingElement::ALL {
            for y in RingElement::ALL {
                let (x0, x1) = x.gray();
                let (y0, y1) = y.gray();
                let hamming = (x0 != y0) as u32 + (x1 != y1) as u32;
                assert_eq!(x.lee_distance(y), hamming);
            }
        }
    }

    #[test]
    fn table_dump_round_trips() {
        let text = render_table('+', &addition_table());
        assert!(text.contains("a | a 0 c b"));
        assert_eq!(parse_table(&text).unwrap(), ('+', addition_table()));
        let text = render_table('*', &multiplication_table());
        assert!(text.contains("b | 0 0 0 0"));
        assert_eq!(parse_table(&text).unwrap(), ('*', multiplication_table()));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!("d".parse::<RingElement>(), Err(RingParseError::UnknownSymbol('d'))));
        assert!("ab".parse::<RingElement>().is_err());
        assert!(parse_table("+ | 0 a b c\n").is_err());
    }

    #[test]
    fn codes_round_trip() {
        for x in RingElement::ALL {
            assert_eq!(RingElement::from_code(x.code()), Some(x));
        }
        assert_eq!(RingElement::from_code(4), None);
    }
}
