//! Monoid presentations: alphabet, homogeneous relations, text format,
//! built-in presets, and the opposite (reversed) presentation.

use std::fmt;

use crate::error::PresentationError;

/// Hard ceiling on alphabet size; letter ids are stored as `u8`.
pub const MAX_ALPHABET: usize = 255;

/// A generator: its index in the alphabet plus its display token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub id: usize,
    pub symbol: String,
}

/// A positive word: a finite sequence of letter ids. The empty word is the
/// monoid identity and has degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Word length; equals the degree of the element the word represents.
    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }
}

/// An unoriented relation between two positive words of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

/// A positive homogeneous monoid presentation. Immutable once constructed;
/// the declaration order of the alphabet fixes the lexicographic order used
/// for canonical forms everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Vec<Letter>,
    relations: Vec<Relation>,
    name: Option<String>,
}

impl Presentation {
    /// Validates and builds a presentation from symbols and relation word
    /// pairs. Relations must be homogeneous and nontrivial; symbols must be
    /// distinct, nonempty and free of whitespace.
    pub fn new(
        symbols: Vec<String>,
        relations: Vec<(Word, Word)>,
        name: Option<String>,
    ) -> Result<Self, PresentationError> {
        if symbols.len() > MAX_ALPHABET {
            return Err(PresentationError::AlphabetTooLarge {
                count: symbols.len(),
                max: MAX_ALPHABET,
            });
        }
        let mut alphabet = Vec::with_capacity(symbols.len());
        for (id, symbol) in symbols.into_iter().enumerate() {
            if symbol.is_empty() || symbol.chars().any(char::is_whitespace) {
                return Err(PresentationError::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("invalid symbol `{symbol}`"),
                });
            }
            if alphabet.iter().any(|l: &Letter| l.symbol == symbol) {
                return Err(PresentationError::DuplicateSymbol {
                    line: 0,
                    column: 0,
                    symbol,
                });
            }
            alphabet.push(Letter { id, symbol });
        }
        let rank = alphabet.len();
        for (lhs, rhs) in &relations {
            for &id in lhs.letters().iter().chain(rhs.letters()) {
                if id as usize >= rank {
                    return Err(PresentationError::LetterOutOfRange {
                        id: id as usize,
                        rank,
                    });
                }
            }
            if lhs.degree() != rhs.degree() {
                return Err(PresentationError::Inhomogeneous {
                    line: 0,
                    lhs: lhs.degree(),
                    rhs: rhs.degree(),
                });
            }
            if lhs.degree() == 0 {
                return Err(PresentationError::EmptyRelationSide { line: 0 });
            }
            if lhs == rhs {
                return Err(PresentationError::TrivialRelation { line: 0 });
            }
        }
        Ok(Presentation {
            alphabet,
            relations: relations
                .into_iter()
                .map(|(lhs, rhs)| Relation { lhs, rhs })
                .collect(),
            name,
        })
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Parses the line-oriented presentation text format:
    ///
    /// ```text
    /// alphabet a b c        # exactly one, first non-comment line
    /// rel c b b = b b a     # zero or more
    /// ```
    ///
    /// `#` starts a comment to end of line; tokens are whitespace-separated,
    /// so multi-character symbols are fine.
    pub fn parse(source: &str) -> Result<Self, PresentationError> {
        let mut symbols: Option<Vec<String>> = None;
        let mut relations: Vec<(Word, Word, usize)> = Vec::new();

        for (line_idx, raw_line) in source.lines().enumerate() {
            let line_no = line_idx + 1;
            let tokens = tokenize(raw_line, line_no)?;
            if tokens.is_empty() {
                continue;
            }
            let (keyword, kw_col) = &tokens[0];
            match keyword.as_str() {
                "alphabet" => {
                    if symbols.is_some() {
                        return Err(PresentationError::Syntax {
                            line: line_no,
                            column: *kw_col,
                            message: "duplicate `alphabet` line".into(),
                        });
                    }
                    if !relations.is_empty() {
                        return Err(PresentationError::Syntax {
                            line: line_no,
                            column: *kw_col,
                            message: "`alphabet` must precede all `rel` lines".into(),
                        });
                    }
                    let mut syms = Vec::new();
                    for (tok, col) in &tokens[1..] {
                        if tok == "=" {
                            return Err(PresentationError::Syntax {
                                line: line_no,
                                column: *col,
                                message: "`=` is not a valid symbol".into(),
                            });
                        }
                        if syms.contains(tok) {
                            return Err(PresentationError::DuplicateSymbol {
                                line: line_no,
                                column: *col,
                                symbol: tok.clone(),
                            });
                        }
                        syms.push(tok.clone());
                    }
                    if syms.is_empty() {
                        return Err(PresentationError::Syntax {
                            line: line_no,
                            column: *kw_col,
                            message: "alphabet must list at least one symbol".into(),
                        });
                    }
                    symbols = Some(syms);
                }
                "rel" => {
                    let syms = symbols.as_ref().ok_or(PresentationError::Syntax {
                        line: line_no,
                        column: *kw_col,
                        message: "`rel` before `alphabet` line".into(),
                    })?;
                    let eq_pos = tokens[1..]
                        .iter()
                        .position(|(t, _)| t == "=")
                        .map(|i| i + 1)
                        .ok_or(PresentationError::Syntax {
                            line: line_no,
                            column: *kw_col,
                            message: "relation needs `=` between two words".into(),
                        })?;
                    let lhs = side_to_word(&tokens[1..eq_pos], syms, line_no)?;
                    let rhs = side_to_word(&tokens[eq_pos + 1..], syms, line_no)?;
                    if lhs.is_empty() || rhs.is_empty() {
                        return Err(PresentationError::EmptyRelationSide { line: line_no });
                    }
                    if lhs.degree() != rhs.degree() {
                        return Err(PresentationError::Inhomogeneous {
                            line: line_no,
                            lhs: lhs.degree(),
                            rhs: rhs.degree(),
                        });
                    }
                    if lhs == rhs {
                        return Err(PresentationError::TrivialRelation { line: line_no });
                    }
                    relations.push((lhs, rhs, line_no));
                }
                _ => {
                    return Err(PresentationError::Syntax {
                        line: line_no,
                        column: *kw_col,
                        message: format!("expected `alphabet` or `rel`, found `{keyword}`"),
                    });
                }
            }
        }

        let symbols = symbols.ok_or(PresentationError::Syntax {
            line: 1,
            column: 1,
            message: "missing `alphabet` line".into(),
        })?;
        Presentation::new(
            symbols,
            relations.into_iter().map(|(l, r, _)| (l, r)).collect(),
            None,
        )
    }

    /// Renders the presentation back into the text format; `parse` of the
    /// output reproduces the presentation.
    pub fn serialize(&self) -> String {
        let mut out = String::from("alphabet");
        for l in &self.alphabet {
            out.push(' ');
            out.push_str(&l.symbol);
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str("rel ");
            out.push_str(&self.format_word_spaced(&r.lhs));
            out.push_str(" = ");
            out.push_str(&self.format_word_spaced(&r.rhs));
            out.push('\n');
        }
        out
    }

    /// The opposite presentation: every relation word reversed letterwise.
    /// Left cancellativity of the opposite monoid is right cancellativity of
    /// the original.
    pub fn reversed(&self) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    lhs: r.lhs.reversed(),
                    rhs: r.rhs.reversed(),
                })
                .collect(),
            name: self.name.as_ref().map(|n| format!("{n}-rev")),
        }
    }

    /// True when every symbol is a single character, in which case words
    /// print and parse without separators.
    pub fn compact_symbols(&self) -> bool {
        self.alphabet.iter().all(|l| l.symbol.chars().count() == 1)
    }

    /// Formats a word with the presentation's symbols; empty word prints as
    /// `1` (the identity).
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        if self.compact_symbols() {
            w.letters()
                .iter()
                .map(|&id| self.alphabet[id as usize].symbol.as_str())
                .collect()
        } else {
            self.format_word_spaced(w)
        }
    }

    fn format_word_spaced(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|&id| self.alphabet[id as usize].symbol.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a word: whitespace-separated symbols, or, when every symbol is
    /// a single character, a compact run like `cbb`. `1` and the empty
    /// string denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for token in trimmed.split_whitespace() {
            if let Some(letter) = self.alphabet.iter().find(|l| l.symbol == token) {
                letters.push(letter.id as u8);
            } else if self.compact_symbols() {
                for ch in token.chars() {
                    let s = ch.to_string();
                    let letter = self
                        .alphabet
                        .iter()
                        .find(|l| l.symbol == s)
                        .ok_or_else(|| PresentationError::UnknownSymbol {
                            line: 0,
                            column: 0,
                            symbol: s.clone(),
                        })?;
                    letters.push(letter.id as u8);
                }
            } else {
                return Err(PresentationError::UnknownSymbol {
                    line: 0,
                    column: 0,
                    symbol: token.to_string(),
                });
            }
        }
        Ok(Word::new(letters))
    }

    /// Built-in presentations. Parameters: `gn` needs `n >= 3`, `hn` needs
    /// `n >= 1`, `abel` needs `m >= 2`, `free` needs `1 <= rank <= 26`.
    pub fn preset(id: &str, params: &[u64]) -> Result<Self, PresentationError> {
        const MAX_PARAM: u64 = 10_000;
        let need_one = |what: &str| -> Result<u64, PresentationError> {
            match params {
                [p] if *p <= MAX_PARAM => Ok(*p),
                [_] => Err(PresentationError::ParamOutOfRange {
                    preset: id.to_string(),
                    message: format!("parameter must be at most {MAX_PARAM}"),
                }),
                _ => Err(PresentationError::ParamOutOfRange {
                    preset: id.to_string(),
                    message: format!("expected exactly one parameter ({what})"),
                }),
            }
        };
        let need_none = || -> Result<(), PresentationError> {
            if params.is_empty() {
                Ok(())
            } else {
                Err(PresentationError::ParamOutOfRange {
                    preset: id.to_string(),
                    message: "preset takes no parameters".into(),
                })
            }
        };

        let abc = || vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let w = |ids: &[u8]| Word::new(ids.to_vec());
        let reps = |id: u8, n: usize| vec![id; n];

        match id {
            "bii" => {
                need_none()?;
                Presentation::new(
                    abc(),
                    vec![
                        (w(&[2, 1, 1]), w(&[1, 1, 0])), // cbb = bba
                        (w(&[0, 1]), w(&[1, 2])),       // ab = bc
                        (w(&[0, 2]), w(&[2, 0])),       // ac = ca
                    ],
                    Some("bii".into()),
                )
            }
            "gn" => {
                let n = need_one("n >= 3")?;
                if n < 3 {
                    return Err(PresentationError::ParamOutOfRange {
                        preset: id.to_string(),
                        message: "n must be at least 3".into(),
                    });
                }
                let n = n as usize;
                let mut cbn = vec![2u8];
                cbn.extend(reps(1, n)); // c b^n
                let mut bna = reps(1, n);
                bna.push(0); // b^n a
                Presentation::new(
                    abc(),
                    vec![
                        (Word::new(cbn), Word::new(bna)),
                        (w(&[0, 1]), w(&[1, 2])),
                        (w(&[0, 2]), w(&[2, 0])),
                    ],
                    Some(format!("gn:{n}")),
                )
            }
            "hn" => {
                let n = need_one("n >= 1")?;
                if n < 1 {
                    return Err(PresentationError::ParamOutOfRange {
                        preset: id.to_string(),
                        message: "n must be at least 1".into(),
                    });
                }
                let n = n as usize;
                // b (ab)^n b a  =  c b (ab)^n b
                let mut lhs = vec![1u8];
                for _ in 0..n {
                    lhs.extend([0, 1]);
                }
                lhs.extend([1, 0]);
                let mut rhs = vec![2u8, 1];
                for _ in 0..n {
                    rhs.extend([0, 1]);
                }
                rhs.push(1);
                Presentation::new(
                    abc(),
                    vec![
                        (Word::new(lhs), Word::new(rhs)),
                        (w(&[0, 1]), w(&[1, 2])),
                        (w(&[0, 2]), w(&[2, 0])),
                    ],
                    Some(format!("hn:{n}")),
                )
            }
            "abel" => {
                let m = need_one("m >= 2")?;
                if m < 2 {
                    return Err(PresentationError::ParamOutOfRange {
                        preset: id.to_string(),
                        message: "m must be at least 2".into(),
                    });
                }
                let m = m as usize;
                Presentation::new(
                    vec!["a".to_string(), "b".to_string()],
                    vec![
                        (Word::new(reps(0, m)), Word::new(reps(1, m))), // a^m = b^m
                        (w(&[0, 1]), w(&[1, 0])),                       // ab = ba
                    ],
                    Some(format!("abel:{m}")),
                )
            }
            "free" => {
                let rank = need_one("1 <= rank <= 26")?;
                if !(1..=26).contains(&rank) {
                    return Err(PresentationError::ParamOutOfRange {
                        preset: id.to_string(),
                        message: "rank must be between 1 and 26".into(),
                    });
                }
                let symbols = (0..rank)
                    .map(|i| ((b'a' + i as u8) as char).to_string())
                    .collect();
                Presentation::new(symbols, Vec::new(), Some(format!("free:{rank}")))
            }
            "appendix2" => {
                need_none()?;
                Presentation::new(
                    abc(),
                    vec![
                        (w(&[2, 1]), w(&[1, 0])), // cb = ba
                        (w(&[0, 1]), w(&[1, 2])), // ab = bc
                        (w(&[0, 2]), w(&[2, 0])), // ac = ca
                    ],
                    Some("appendix2".into()),
                )
            }
            "appendix3" => {
                need_none()?;
                Presentation::new(
                    vec![
                        "a".to_string(),
                        "b".to_string(),
                        "c".to_string(),
                        "d".to_string(),
                    ],
                    vec![
                        (w(&[0, 1]), w(&[1, 2])), // ab = bc
                        (w(&[0, 2]), w(&[2, 0])), // ac = ca
                        (w(&[2, 1]), w(&[1, 0])), // cb = ba
                        (w(&[1, 3]), w(&[3, 1])), // bd = db
                        (w(&[0, 3]), w(&[3, 2])), // ad = dc
                        (w(&[2, 3]), w(&[3, 0])), // cd = da
                    ],
                    Some("appendix3".into()),
                )
            }
            other => Err(PresentationError::UnknownPreset(other.to_string())),
        }
    }

    /// Parses a preset spec of the form `name` or `name:param`, e.g. `gn:3`.
    pub fn preset_spec(spec: &str) -> Result<Self, PresentationError> {
        match spec.split_once(':') {
            Some((name, param)) => {
                let value: u64 = param
                    .parse()
                    .map_err(|_| PresentationError::ParamOutOfRange {
                        preset: name.to_string(),
                        message: format!("`{param}` is not a nonnegative integer"),
                    })?;
                Presentation::preset(name, &[value])
            }
            None => Presentation::preset(spec, &[]),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<(String, usize)>, PresentationError> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start_col = 0;
    for (i, ch) in line.chars().enumerate() {
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            if !current.is_empty() {
                tokens.push((std::mem::take(&mut current), start_col + 1));
            }
        } else {
            if current.is_empty() {
                start_col = i;
            }
            current.push(ch);
        }
    }
    if !current.is_empty() {
        tokens.push((current, start_col + 1));
    }
    let _ = line_no;
    Ok(tokens)
}

fn side_to_word(
    tokens: &[(String, usize)],
    symbols: &[String],
    line_no: usize,
) -> Result<Word, PresentationError> {
    let mut letters = Vec::new();
    for (tok, col) in tokens {
        if tok == "=" {
            return Err(PresentationError::Syntax {
                line: line_no,
                column: *col,
                message: "relation has more than one `=`".into(),
            });
        }
        let id = symbols.iter().position(|s| s == tok).ok_or_else(|| {
            PresentationError::UnknownSymbol {
                line: line_no,
                column: *col,
                symbol: tok.clone(),
            }
        })?;
        letters.push(id as u8);
    }
    Ok(Word::new(letters))
}
