//! Text form of distant patterns.
//!
//! Tokens are separated by whitespace. A letter is a positive decimal integer,
//! `#r` asks for at least `r ≥ 1` interleaved letters (`#` alone means `#1`),
//! and `=r` asks for exactly `r ≥ 0` (so `=0` is the vincular underline).
//! Only `#r` may appear before the first or after the last letter. A text made
//! of digits alone, like `132`, is read one letter per digit.

use std::fmt;

use thiserror::Error;

use super::pattern::{DistantPattern, GapConstraint};
use super::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pattern parse error at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    BadToken(String),
    ZeroMinGap,
    AdjacentGaps,
    TightBoundary,
    NotBijective(Vec<usize>),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => f.write_str("pattern has no letters"),
            ParseErrorKind::BadToken(t) => write!(f, "malformed token {t:?}"),
            ParseErrorKind::ZeroMinGap => f.write_str("`#r` needs r >= 1 (omit the token for no gap)"),
            ParseErrorKind::AdjacentGaps => f.write_str("two gap tokens in a row"),
            ParseErrorKind::TightBoundary => f.write_str("tight gaps are not allowed at the pattern boundary"),
            ParseErrorKind::NotBijective(v) => write!(f, "letters {v:?} are not a permutation of 1..k"),
        }
    }
}

enum Token {
    Letter(usize),
    Gap(GapConstraint),
}

fn err(position: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { position, kind }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let trimmed = text.trim();
    let base = text.len() - text.trim_start().len();
    if trimmed.len() > 1 && trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(trimmed
            .bytes()
            .enumerate()
            .map(|(i, b)| (base + i, Token::Letter((b - b'0') as usize)))
            .collect());
    }

    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split_whitespace() {
        let pos = offset + text[offset..].find(piece).expect("piece comes from text");
        offset = pos + piece.len();
        let bad = || err(pos, ParseErrorKind::BadToken(piece.to_string()));
        let number = |s: &str| -> Result<usize, ParseError> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse().map_err(|_| bad())
        };
        let token = if let Some(rest) = piece.strip_prefix('#') {
            let r = if rest.is_empty() { 1 } else { number(rest)? };
            if r == 0 {
                return Err(err(pos, ParseErrorKind::ZeroMinGap));
            }
            Token::Gap(GapConstraint::at_least(r))
        } else if let Some(rest) = piece.strip_prefix('=') {
            Token::Gap(GapConstraint::exactly(number(rest)?))
        } else {
            let v = number(piece)?;
            if v == 0 {
                return Err(bad());
            }
            Token::Letter(v)
        };
        out.push((pos, token));
    }
    Ok(out)
}

/// Parses the text form described in the module docs.
pub fn parse_pattern(text: &str) -> Result<DistantPattern, ParseError> {
    let tokens = tokenize(text)?;
    let mut letters = Vec::new();
    // gaps[j] is the gap before letter j; the final push is the trailing gap.
    let mut gaps = Vec::new();
    let mut pending: Option<(usize, GapConstraint)> = None;

    for (pos, token) in tokens {
        match token {
            Token::Gap(g) => {
                if pending.is_some() {
                    return Err(err(pos, ParseErrorKind::AdjacentGaps));
                }
                if g.tight && letters.is_empty() {
                    return Err(err(pos, ParseErrorKind::TightBoundary));
                }
                pending = Some((pos, g));
            }
            Token::Letter(v) => {
                gaps.push(pending.take().map_or(GapConstraint::FREE, |(_, g)| g));
                letters.push(v);
            }
        }
    }
    if letters.is_empty() {
        return Err(err(text.len(), ParseErrorKind::Empty));
    }
    match pending {
        Some((pos, g)) if g.tight => return Err(err(pos, ParseErrorKind::TightBoundary)),
        Some((_, g)) => gaps.push(g),
        None => gaps.push(GapConstraint::FREE),
    }

    let letters = Permutation::new(letters.clone())
        .map_err(|_| err(0, ParseErrorKind::NotBijective(letters)))?;
    Ok(DistantPattern::new(letters, gaps).expect("parser upholds pattern invariants"))
}

fn gap_token(g: GapConstraint) -> Option<String> {
    match (g.tight, g.min_gap) {
        (true, r) => Some(format!("={r}")),
        (false, 0) => None,
        (false, r) => Some(format!("#{r}")),
    }
}

/// Canonical text: letters separated by single spaces, free gaps omitted.
pub fn render_pattern(p: &DistantPattern) -> String {
    let mut parts = Vec::with_capacity(2 * p.size() + 1);
    for (j, &letter) in p.letters().values().iter().enumerate() {
        parts.extend(gap_token(p.gaps()[j]));
        parts.push(letter.to_string());
    }
    parts.extend(gap_token(p.gaps()[p.size()]));
    parts.join(" ")
}

/// Parses a `;`-separated set of patterns.
pub fn parse_pattern_set(text: &str) -> Result<Vec<DistantPattern>, ParseError> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(parse_pattern).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gaps(spec: &[(usize, bool)]) -> Vec<GapConstraint> {
        spec.iter().map(|&(min_gap, tight)| GapConstraint { min_gap, tight }).collect()
    }

    #[test]
    fn parses_examples() {
        let p = parse_pattern("2 #1 1").unwrap();
        assert_eq!(p.letters().to_string(), "21");
        assert_eq!(p.gaps(), gaps(&[(0, false), (1, false), (0, false)]).as_slice());

        let p = parse_pattern("1 #1 3 #1 2").unwrap();
        assert_eq!(p, DistantPattern::uniform("132".parse().unwrap(), 1).unwrap());

        let p = parse_pattern("1 =1 2").unwrap();
        assert_eq!(p.gaps()[1], GapConstraint::exactly(1));
    }

    #[test]
    fn compact_and_bare_hash() {
        assert_eq!(parse_pattern("132").unwrap(), parse_pattern("1 3 2").unwrap());
        assert_eq!(parse_pattern("2 # 1").unwrap(), parse_pattern("2 #1 1").unwrap());
        assert_eq!(parse_pattern(" #2 1 2 #  ").unwrap().to_string(), "#2 1 2 #1");
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render_pattern(&parse_pattern("1 2 3").unwrap()), "1 2 3");
        assert_eq!(render_pattern(&parse_pattern("1 # 3 =0 2").unwrap()), "1 #1 3 =0 2");
        assert_eq!(render_pattern(&parse_pattern("10 1 2 3 4 5 6 7 8 9").unwrap()), "10 1 2 3 4 5 6 7 8 9");
    }

    #[test]
    fn rejects_malformed_input() {
        let kind = |s: &str| parse_pattern(s).unwrap_err().kind;
        assert_eq!(kind(""), ParseErrorKind::Empty);
        assert_eq!(kind("#2"), ParseErrorKind::Empty);
        assert_eq!(kind("=0 1 2"), ParseErrorKind::TightBoundary);
        assert_eq!(kind("1 2 =1"), ParseErrorKind::TightBoundary);
        assert_eq!(kind("1 #1 =1 2"), ParseErrorKind::AdjacentGaps);
        assert_eq!(kind("1 #0 2"), ParseErrorKind::ZeroMinGap);
        assert_eq!(kind("1 3"), ParseErrorKind::NotBijective(vec![1, 3]));
        assert_eq!(kind("1 1"), ParseErrorKind::NotBijective(vec![1, 1]));
        assert!(matches!(kind("1 x 2"), ParseErrorKind::BadToken(_)));
        assert!(matches!(kind("1 #-1 2"), ParseErrorKind::BadToken(_)));
        assert!(matches!(kind("0"), ParseErrorKind::BadToken(_)));
        assert_eq!(parse_pattern("1  2 =x").unwrap_err().position, 5);
    }

    #[test]
    fn pattern_sets() {
        let set = parse_pattern_set("#1 1 3 2; 1 3 2 #1 ;1342").unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set[2].to_string(), "1 3 4 2");
    }

    fn arb_pattern() -> impl Strategy<Value = DistantPattern> {
        (1usize..=6)
            .prop_flat_map(|k| {
                (
                    Just((1..=k).collect::<Vec<_>>()).prop_shuffle(),
                    proptest::collection::vec((0usize..4, any::<bool>()), k + 1),
                )
            })
            .prop_map(|(letters, raw)| {
                let k = letters.len();
                let gaps = raw
                    .into_iter()
                    .enumerate()
                    .map(|(j, (m, t))| GapConstraint { min_gap: m, tight: t && j != 0 && j != k })
                    .collect();
                DistantPattern::new(Permutation::new(letters).unwrap(), gaps).unwrap()
            })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in arb_pattern()) {
            let text = render_pattern(&p);
            prop_assert_eq!(parse_pattern(&text).unwrap(), p);
        }
    }
}
