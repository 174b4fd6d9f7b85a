use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Continued fraction `[0; a_1, a_2, …]` of a slope in `(0, 1)`.
///
/// The expansion is a finite preperiod optionally followed by a period that
/// repeats forever. Without a period the expansion is a truncation: only the
/// listed partial quotients are known and every query beyond them fails with
/// [`Error::DepthExceeded`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if preperiod.is_empty() && period.is_empty() {
            return Err(Error::EmptyExpansion);
        }
        if let Some(bad) = preperiod.iter().chain(&period).find(|&&a| a == 0) {
            return Err(Error::NonPositiveQuotient(bad.to_string()));
        }
        Ok(Self { preperiod, period })
    }

    /// Purely periodic tail after a preperiod, e.g. `periodic(&[2], &[1])`
    /// for `[0; 2, 1, 1, …]`.
    pub fn periodic(preperiod: &[u64], period: &[u64]) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyExpansion);
        }
        Self::new(preperiod.to_vec(), period.to_vec())
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// Number of known partial quotients, `None` when the expansion repeats
    /// forever.
    pub fn depth(&self) -> Option<usize> {
        if self.is_periodic() {
            None
        } else {
            Some(self.preperiod.len())
        }
    }

    /// Partial quotient `a_k`; `a_0` is always 0.
    pub fn quotient(&self, k: usize) -> Result<u64> {
        if k == 0 {
            return Ok(0);
        }
        let m = self.preperiod.len();
        if k <= m {
            return Ok(self.preperiod[k - 1]);
        }
        if self.period.is_empty() {
            return Err(Error::DepthExceeded {
                requested: k,
                available: m,
            });
        }
        Ok(self.period[(k - m - 1) % self.period.len()])
    }

    pub fn is_normalized(&self) -> bool {
        self.quotient(1).is_ok_and(|a| a >= 2)
    }

    /// Rewrites `[0; 1, a_2, a_3, …]` as `[0; a_2 + 1, a_3, …]`, the slope
    /// `1 − α`. The returned flag is `true` when the rewrite happened, in
    /// which case words of the new slope describe the original one after
    /// exchanging the letters 0 and 1.
    pub fn normalize(&self) -> Result<(ContinuedFraction, bool)> {
        if self.quotient(1)? >= 2 {
            return Ok((self.clone(), false));
        }
        let a2 = self.quotient(2)?;
        let m = self.preperiod.len();
        // Quotients a_3..a_last of the preperiod carry over unchanged, the
        // period then resumes at index max(m, 2) + 1.
        let resume = m.max(2);
        let mut preperiod = vec![a2 + 1];
        for k in 3..=resume {
            preperiod.push(self.quotient(k)?);
        }
        let period = if self.period.is_empty() {
            Vec::new()
        } else {
            let len = self.period.len();
            let offset = (resume - m) % len;
            self.period[offset..]
                .iter()
                .chain(&self.period[..offset])
                .copied()
                .collect()
        };
        Ok((ContinuedFraction { preperiod, period }, true))
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0;")?;
        let mut first = true;
        for a in &self.preperiod {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        if !self.period.is_empty() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (i, a) in self.period.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_slope(s)
    }
}

/// Parses the slope grammar `[0; a_1, …, a_m, (b_1, …, b_r)]`; the
/// parenthesised period is optional and must come last. Whitespace is
/// ignored. The result is not normalized.
pub fn parse_slope(text: &str) -> Result<ContinuedFraction> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser { chars, at: 0 };
    parser.expect('[')?;
    parser.expect('0')?;
    parser.expect(';')?;

    let mut preperiod = Vec::new();
    let mut period = Vec::new();
    if parser.peek() == Some(']') {
        return Err(Error::EmptyExpansion);
    }
    loop {
        if parser.peek() == Some('(') {
            parser.bump();
            loop {
                period.push(parser.quotient()?);
                match parser.bump() {
                    Some(',') => continue,
                    Some(')') => break,
                    other => return Err(parser.unexpected(other, "`,` or `)`")),
                }
            }
            parser.expect(']')?;
            break;
        }
        preperiod.push(parser.quotient()?);
        match parser.bump() {
            Some(',') => continue,
            Some(']') => break,
            other => return Err(parser.unexpected(other, "`,` or `]`")),
        }
    }
    if let Some(c) = parser.peek() {
        return Err(parser.unexpected(Some(c), "end of input"));
    }
    ContinuedFraction::new(preperiod, period)
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map_or_else(|| self.chars.last().map_or(0, |&(p, _)| p + 1), |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn unexpected(&self, found: Option<char>, wanted: &str) -> Error {
        // `bump` already advanced past the offending character.
        let pos = self.chars.get(self.at.saturating_sub(1)).map_or(0, |&(p, _)| p);
        let msg = match found {
            Some(c) => format!("expected {wanted}, found `{c}`"),
            None => format!("expected {wanted}, found end of input"),
        };
        Error::Syntax { pos, msg }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(Error::Syntax {
                pos,
                msg: format!("expected `{want}`, found `{c}`"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: format!("expected `{want}`, found end of input"),
            }),
        }
    }

    fn quotient(&mut self) -> Result<u64> {
        let pos = self.pos();
        let mut token = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '-' || c == '+' {
                token.push(c);
                self.at += 1;
            } else {
                break;
            }
        }
        if token.is_empty() {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("`{c}`"));
            return Err(Error::Syntax {
                pos,
                msg: format!("expected a partial quotient, found {found}"),
            });
        }
        if token.starts_with('-') {
            return Err(Error::NonPositiveQuotient(token));
        }
        match token.parse::<u64>() {
            Ok(0) => Err(Error::NonPositiveQuotient(token)),
            Ok(a) => Ok(a),
            Err(_) => Err(Error::Syntax {
                pos,
                msg: format!("`{token}` is not a partial quotient"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_periodic_slope() {
        let cf: ContinuedFraction = "[0;2,(1,2)]".parse().unwrap();
        assert_eq!(cf.preperiod(), &[2]);
        assert_eq!(cf.period(), &[1, 2]);
        assert_eq!(cf.depth(), None);
    }

    #[test]
    fn parses_pure_period_and_whitespace() {
        let cf: ContinuedFraction = " [ 0 ; ( 1 ) ] ".parse().unwrap();
        assert!(cf.preperiod().is_empty());
        assert_eq!(cf.period(), &[1]);
        assert!(!cf.is_normalized());
    }

    #[test]
    fn finite_truncation_has_depth() {
        let cf: ContinuedFraction = "[0;2,1,1]".parse().unwrap();
        assert_eq!(cf.depth(), Some(3));
        assert_eq!(cf.quotient(3).unwrap(), 1);
        assert_eq!(
            cf.quotient(4),
            Err(Error::DepthExceeded {
                requested: 4,
                available: 3
            })
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!("[0;2,0]".parse::<ContinuedFraction>(), Err(Error::NonPositiveQuotient(_))));
        assert!(matches!("[0;-3]".parse::<ContinuedFraction>(), Err(Error::NonPositiveQuotient(_))));
        assert_eq!("[0;]".parse::<ContinuedFraction>(), Err(Error::EmptyExpansion));
        assert!(matches!("[1;2]".parse::<ContinuedFraction>(), Err(Error::Syntax { .. })));
        assert!(matches!("[0;(1),2]".parse::<ContinuedFraction>(), Err(Error::Syntax { .. })));
        assert!(matches!("[0;2,(1)".parse::<ContinuedFraction>(), Err(Error::Syntax { .. })));
        assert!(matches!("0;2".parse::<ContinuedFraction>(), Err(Error::Syntax { .. })));
        assert!(matches!("[0;2,()]".parse::<ContinuedFraction>(), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["[0;2,(1,2)]", "[0;(1)]", "[0;2,1,1]", "[0;5,1,(1)]"] {
            let cf: ContinuedFraction = s.parse().unwrap();
            assert_eq!(cf.to_string(), s);
        }
    }

    #[test]
    fn normalize_golden_ratio() {
        let cf: ContinuedFraction = "[0;(1)]".parse().unwrap();
        let (norm, swap) = cf.normalize().unwrap();
        assert!(swap);
        assert_eq!(norm.to_string(), "[0;2,(1)]");
    }

    #[test]
    fn normalize_keeps_normalized_slope() {
        let cf: ContinuedFraction = "[0;2,(1,2)]".parse().unwrap();
        assert_eq!(cf.normalize().unwrap(), (cf.clone(), false));
    }

    #[test]
    fn normalize_shifts_period() {
        let cf: ContinuedFraction = "[0;1,(3)]".parse().unwrap();
        let (norm, swap) = cf.normalize().unwrap();
        assert!(swap);
        assert_eq!(norm.to_string(), "[0;4,(3)]");

        let cf: ContinuedFraction = "[0;(1,2,3)]".parse().unwrap();
        let (norm, _) = cf.normalize().unwrap();
        // a = 1,2,3,1,2,3,… becomes 3,3,1,2,3,…
        let want: Vec<u64> = vec![3, 3, 1, 2, 3, 1, 2];
        let got: Vec<u64> = (1..=7).map(|k| norm.quotient(k).unwrap()).collect();
        assert_eq!(got, want);

        let cf: ContinuedFraction = "[0;1,4,5,(6,7)]".parse().unwrap();
        let (norm, _) = cf.normalize().unwrap();
        assert_eq!(norm.to_string(), "[0;5,5,(6,7)]");
    }
}
