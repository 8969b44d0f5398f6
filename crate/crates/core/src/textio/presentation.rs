use std::fmt;

use super::{strip_comment, Letter, ParseError, ParseErrorKind, Word};

/// Upper bound on the length of any expanded word, so that nested powers
/// cannot blow up memory.
pub const MAX_WORD_LENGTH: usize = 1 << 16;

/// A two-generator finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generator_names: [char; 2],
    pub relators: Vec<Word>,
}

/// Generators of a subgroup, as words over the parent presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub generators: Vec<Word>,
}

/// Contents of a `.grp` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub presentation: Presentation,
    pub subgroup: Option<SubgroupSpec>,
}

impl Presentation {
    pub fn new(relators: Vec<Word>) -> Self {
        Presentation {
            generator_names: ['a', 'b'],
            relators,
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format_with(self.generator_names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y] = self.generator_names;
        writeln!(f, "gens: {x} {y}")?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        if rels.is_empty() {
            writeln!(f, "rels:")
        } else {
            writeln!(f, "rels: {}", rels.join(" "))
        }
    }
}

impl SubgroupSpec {
    pub fn format(&self, p: &Presentation) -> String {
        let gens: Vec<String> = self.generators.iter().map(|w| p.format_word(w)).collect();
        if gens.is_empty() {
            "sub:\n".to_string()
        } else {
            format!("sub: {}\n", gens.join(" "))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Rels,
    Sub,
}

struct Segment<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

/// Parses a full `.grp` file.
pub fn parse_group_file(text: &str) -> Result<GroupFile, ParseError> {
    let mut names: Option<[char; 2]> = None;
    let mut rels: Option<Vec<Segment>> = None;
    let mut sub: Option<Vec<Segment>> = None;
    let mut current: Option<Block> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = body.len() - trimmed.len();
        match split_header(trimmed) {
            Some((header, rest, offset)) => {
                let column = char_column(body, lead + offset);
                match header {
                    "gens" => {
                        if names.is_some() {
                            return Err(ParseError::new(
                                line,
                                lead + 1,
                                ParseErrorKind::DuplicateHeader("gens"),
                            ));
                        }
                        names = Some(parse_generator_names(rest, line, column)?);
                        current = None;
                    }
                    "rels" | "sub" => {
                        let (slot, block, name) = if header == "rels" {
                            (&mut rels, Block::Rels, "rels")
                        } else {
                            (&mut sub, Block::Sub, "sub")
                        };
                        if slot.is_some() {
                            return Err(ParseError::new(
                                line,
                                lead + 1,
                                ParseErrorKind::DuplicateHeader(name),
                            ));
                        }
                        *slot = Some(vec![Segment {
                            line,
                            column,
                            text: rest,
                        }]);
                        current = Some(block);
                    }
                    other => {
                        return Err(ParseError::new(
                            line,
                            lead + 1,
                            ParseErrorKind::UnknownHeader(other.to_string()),
                        ))
                    }
                }
            }
            None => {
                let seg = Segment {
                    line,
                    column: char_column(body, lead),
                    text: trimmed,
                };
                match current {
                    Some(Block::Rels) => rels.as_mut().unwrap().push(seg),
                    Some(Block::Sub) => sub.as_mut().unwrap().push(seg),
                    None => {
                        return Err(ParseError::new(line, lead + 1, ParseErrorKind::OrphanText))
                    }
                }
            }
        }
    }

    let names = names.ok_or(ParseError::new(1, 1, ParseErrorKind::MissingHeader("gens")))?;
    let rels = rels.ok_or(ParseError::new(1, 1, ParseErrorKind::MissingHeader("rels")))?;
    let relators = parse_segments(&rels, names)?;
    let subgroup = match sub {
        Some(segs) => Some(SubgroupSpec {
            generators: parse_segments(&segs, names)?,
        }),
        None => None,
    };
    Ok(GroupFile {
        presentation: Presentation {
            generator_names: names,
            relators,
        },
        subgroup,
    })
}

/// Parses a `.grp` presentation; a `sub:` block, if present, is validated and dropped.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_group_file(text).map(|f| f.presentation)
}

/// Parses a subgroup file: `sub:` blocks (and optionally a full `.grp`
/// whose `sub:` block is used) over the generators of `p`.
pub fn parse_subgroup(text: &str, p: &Presentation) -> Result<SubgroupSpec, ParseError> {
    let mut segs: Vec<Segment> = Vec::new();
    let mut in_sub = false;
    let mut seen_sub = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = body.len() - trimmed.len();
        match split_header(trimmed) {
            Some(("sub", rest, offset)) => {
                if seen_sub {
                    return Err(ParseError::new(
                        line,
                        lead + 1,
                        ParseErrorKind::DuplicateHeader("sub"),
                    ));
                }
                seen_sub = true;
                in_sub = true;
                segs.push(Segment {
                    line,
                    column: char_column(body, lead + offset),
                    text: rest,
                });
            }
            Some(("gens" | "rels", _, _)) => in_sub = false,
            Some((other, _, _)) => {
                return Err(ParseError::new(
                    line,
                    lead + 1,
                    ParseErrorKind::UnknownHeader(other.to_string()),
                ))
            }
            None if in_sub => segs.push(Segment {
                line,
                column: char_column(body, lead),
                text: trimmed,
            }),
            None => {}
        }
    }
    if !seen_sub {
        return Err(ParseError::new(1, 1, ParseErrorKind::MissingHeader("sub")));
    }
    Ok(SubgroupSpec {
        generators: parse_segments(&segs, p.generator_names)?,
    })
}

/// Parses a single word; whitespace inside is concatenation.
pub fn parse_word(text: &str, p: &Presentation) -> Result<Word, ParseError> {
    let mut parser = WordParser::new(text, 1, 0, p.generator_names);
    let w = parser.sequence(&[], true)?;
    parser.skip_ws();
    if let Some((col, c)) = parser.peek() {
        return Err(ParseError::new(1, col, ParseErrorKind::UnexpectedChar(c)));
    }
    Ok(w)
}

fn split_header(line: &str) -> Option<(&str, &str, usize)> {
    let colon = line.find(':')?;
    let name = line[..colon].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    Some((name, &line[colon + 1..], colon + 1))
}

/// 0-based column (in chars) of a byte offset.
fn char_column(s: &str, byte: usize) -> usize {
    s[..byte.min(s.len())].chars().count()
}

fn parse_generator_names(rest: &str, line: usize, column: usize) -> Result<[char; 2], ParseError> {
    let tokens: Vec<&str> = rest
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    for t in &tokens {
        let mut cs = t.chars();
        let ok = matches!((cs.next(), cs.next()), (Some(c), None) if c.is_ascii_lowercase());
        if !ok {
            return Err(ParseError::new(
                line,
                column + 1,
                ParseErrorKind::BadGeneratorName(t.to_string()),
            ));
        }
    }
    if tokens.len() != 2 {
        return Err(ParseError::new(
            line,
            column + 1,
            ParseErrorKind::Arity(tokens.len()),
        ));
    }
    let names = [
        tokens[0].chars().next().unwrap(),
        tokens[1].chars().next().unwrap(),
    ];
    if names[0] == names[1] {
        return Err(ParseError::new(
            line,
            column + 1,
            ParseErrorKind::BadGeneratorName(tokens[1].to_string()),
        ));
    }
    Ok(names)
}

fn parse_segments(segs: &[Segment], names: [char; 2]) -> Result<Vec<Word>, ParseError> {
    let mut out = Vec::new();
    for seg in segs {
        let mut parser = WordParser::new(seg.text, seg.line, seg.column, names);
        loop {
            parser.skip_separators();
            if parser.peek().is_none() {
                break;
            }
            out.push(parser.sequence(&[','], false)?);
        }
    }
    Ok(out)
}

struct WordParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column_offset: usize,
    names: [char; 2],
}

impl WordParser {
    fn new(text: &str, line: usize, column_offset: usize, names: [char; 2]) -> Self {
        WordParser {
            chars: text.chars().collect(),
            pos: 0,
            line,
            column_offset,
            names,
        }
    }

    fn column(&self) -> usize {
        self.column_offset + self.pos + 1
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.column(), kind)
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).map(|&c| (self.column(), c))
    }

    fn peek_char(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn next_non_ws(&self) -> Option<char> {
        self.chars[self.pos..]
            .iter()
            .copied()
            .find(|c| !c.is_whitespace())
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek_char(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek_char(), Some(c) if c.is_whitespace() || c == ',') {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek_char() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.err(ParseErrorKind::Expected(what))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }

    /// Parses factors until a stop character, a closing bracket, or the end.
    /// When `nested` is false, top-level whitespace ends the sequence unless
    /// the next token is `*` or `^`.
    fn sequence(&mut self, stops: &[char], nested: bool) -> Result<Word, ParseError> {
        let mut word = Word::identity();
        let mut first = true;
        loop {
            match self.peek_char() {
                None => break,
                Some(c) if c.is_whitespace() => {
                    match self.next_non_ws() {
                        Some('*') | Some('^') => self.skip_ws(),
                        Some(_) if nested => self.skip_ws(),
                        _ => break,
                    }
                    continue;
                }
                Some(c) if stops.contains(&c) || c == ')' || c == ']' => break,
                Some(',') if nested => break,
                Some('*') => {
                    if first {
                        return Err(self.err(ParseErrorKind::UnexpectedChar('*')));
                    }
                    self.pos += 1;
                    self.skip_ws();
                    if matches!(self.peek_char(), None | Some(')') | Some(']') | Some(',')) {
                        return Err(self.err(ParseErrorKind::Expected("a factor after '*'")));
                    }
                    continue;
                }
                Some(_) => {}
            }
            let f = self.factor()?;
            word.append(&f);
            if word.len() > MAX_WORD_LENGTH {
                return Err(self.err(ParseErrorKind::WordTooLong));
            }
            first = false;
        }
        if first {
            return Err(match self.peek() {
                Some((_, c)) => self.err(ParseErrorKind::UnexpectedChar(c)),
                None => self.err(ParseErrorKind::UnexpectedEnd),
            });
        }
        Ok(word)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let mut base = self.atom()?;
        loop {
            if self.next_non_ws() != Some('^') {
                break;
            }
            self.skip_ws();
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let len = (base.len() as u128) * (e.unsigned_abs() as u128);
            if len > MAX_WORD_LENGTH as u128 {
                return Err(self.err(ParseErrorKind::WordTooLong));
            }
            base = base.pow(e);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let mut neg = false;
        if let Some(c @ ('-' | '+')) = self.peek_char() {
            neg = c == '-';
            self.pos += 1;
        }
        let start = self.pos;
        while matches!(self.peek_char(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(ParseErrorKind::Expected("an integer exponent")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = digits
            .parse()
            .map_err(|_| self.err(ParseErrorKind::NumberRange))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let (col, c) = self
            .peek()
            .ok_or_else(|| self.err(ParseErrorKind::UnexpectedEnd))?;
        match c {
            '(' => {
                self.pos += 1;
                self.skip_ws();
                let w = self.sequence(&[], true)?;
                self.expect(')', "')'")?;
                Ok(w)
            }
            '[' => {
                self.pos += 1;
                self.skip_ws();
                let x = self.sequence(&[], true)?;
                self.skip_ws();
                if self.peek_char() == Some(',') {
                    self.pos += 1;
                    self.skip_ws();
                    let y = self.sequence(&[], true)?;
                    self.expect(']', "']'")?;
                    let c = Word::commutator(&x, &y);
                    if c.len() > MAX_WORD_LENGTH {
                        return Err(self.err(ParseErrorKind::WordTooLong));
                    }
                    Ok(c)
                } else {
                    // `[w]` without a comma is plain grouping.
                    self.expect(']', "']' or ','")?;
                    Ok(x)
                }
            }
            '1' => {
                self.pos += 1;
                Ok(Word::identity())
            }
            c if c.is_alphabetic() => {
                self.pos += 1;
                let lower = c.to_ascii_lowercase();
                let generator = self
                    .names
                    .iter()
                    .position(|&n| n == lower)
                    .filter(|_| c.is_ascii())
                    .ok_or(ParseError::new(
                        self.line,
                        col,
                        ParseErrorKind::UndeclaredGenerator(c),
                    ))?;
                Ok(Word::letter(Letter::new(
                    generator as u8,
                    c.is_ascii_uppercase(),
                )))
            }
            other => Err(ParseError::new(
                self.line,
                col,
                ParseErrorKind::UnexpectedChar(other),
            )),
        }
    }
}
