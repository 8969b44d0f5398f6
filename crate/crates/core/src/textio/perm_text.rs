use std::fmt;

use super::{strip_comment, ParseError, ParseErrorKind};
use crate::perm::Permutation;

/// Largest degree accepted by the `.perm` parser.
pub const MAX_DEGREE: usize = 100_000;

/// A permutation representation as read from a `.perm` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationInput {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl PermutationInput {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        debug_assert!(generators.iter().all(|g| g.degree() == degree));
        PermutationInput { degree, generators }
    }

    /// The same generators listed in reverse order.
    pub fn reversed(&self) -> Self {
        PermutationInput {
            degree: self.degree,
            generators: self.generators.iter().rev().cloned().collect(),
        }
    }
}

impl fmt::Display for PermutationInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree: {}", self.degree)?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses a `.perm` file: `degree: n` followed by one generator per line in
/// 1-based cycle notation. Points may be separated by commas or spaces.
pub fn parse_permutations(text: &str) -> Result<PermutationInput, ParseError> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        match degree {
            None => degree = Some(parse_degree(body, line)?),
            Some(n) => generators.push(parse_cycles(body, line, n)?),
        }
    }
    let degree = degree.ok_or(ParseError::new(
        1,
        1,
        ParseErrorKind::MissingHeader("degree"),
    ))?;
    if generators.is_empty() {
        return Err(ParseError::new(last_line, 1, ParseErrorKind::NoGenerators));
    }
    Ok(PermutationInput { degree, generators })
}

fn parse_degree(body: &str, line: usize) -> Result<usize, ParseError> {
    let trimmed = body.trim_start();
    let lead = body.len() - trimmed.len();
    let rest = trimmed
        .strip_prefix("degree")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or(ParseError::new(
            line,
            lead + 1,
            ParseErrorKind::MissingHeader("degree"),
        ))?;
    let digits = rest.trim();
    let n: usize = digits
        .parse()
        .map_err(|_| ParseError::new(line, lead + 1, ParseErrorKind::BadDegree))?;
    if n == 0 || n > MAX_DEGREE {
        return Err(ParseError::new(line, lead + 1, ParseErrorKind::BadDegree));
    }
    Ok(n)
}

fn parse_cycles(body: &str, line: usize, degree: usize) -> Result<Permutation, ParseError> {
    let chars: Vec<char> = body.chars().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut i = 0;
    let err = |col: usize, kind| ParseError::new(line, col + 1, kind);
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            '(' => {
                i += 1;
                let mut cycle: Vec<u32> = Vec::new();
                loop {
                    while i < chars.len() && (chars[i].is_whitespace() || chars[i] == ',') {
                        i += 1;
                    }
                    match chars.get(i) {
                        None => return Err(err(i, ParseErrorKind::UnexpectedEnd)),
                        Some(')') => {
                            i += 1;
                            break;
                        }
                        Some(c) if c.is_ascii_digit() => {
                            let start = i;
                            while i < chars.len() && chars[i].is_ascii_digit() {
                                i += 1;
                            }
                            let s: String = chars[start..i].iter().collect();
                            let point: u64 = s
                                .parse()
                                .map_err(|_| err(start, ParseErrorKind::NumberRange))?;
                            if point == 0 || point > degree as u64 {
                                return Err(err(
                                    start,
                                    ParseErrorKind::PointOutOfRange { point, degree },
                                ));
                            }
                            let p = (point - 1) as u32;
                            if std::mem::replace(&mut used[p as usize], true) {
                                return Err(err(start, ParseErrorKind::RepeatedPoint(point)));
                            }
                            cycle.push(p);
                        }
                        Some(&c) => return Err(err(i, ParseErrorKind::UnexpectedChar(c))),
                    }
                }
                for (k, &p) in cycle.iter().enumerate() {
                    images[p as usize] = cycle[(k + 1) % cycle.len()];
                }
            }
            c => return Err(err(i, ParseErrorKind::UnexpectedChar(c))),
        }
    }
    Ok(Permutation::from_images(images).expect("disjoint cycles form a bijection"))
}
