//! The letter-to-phoneme rule table and the internal alphabet.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::PhonemeClass;
use crate::orthography::LetterToken;

const DEFAULT_INVENTORY: &str = include_str!("../../data/inventory.txt");

#[derive(Debug, Error)]
pub enum InventoryError {
    #[error("cannot read inventory {path}: {source}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("inventory line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum LetterSet {
    Vowel,
    Consonant,
    Letters(Vec<String>),
}

impl LetterSet {
    fn contains(&self, token: &LetterToken) -> bool {
        match self {
            LetterSet::Vowel => token.is_vowel(),
            LetterSet::Consonant => !token.is_vowel() && !token.is_hyphen(),
            LetterSet::Letters(set) => set.contains(&token.surface),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Condition {
    Initial,
    Final,
    Before(LetterSet),
    After(LetterSet),
}

#[derive(Debug, Clone)]
struct LetterRule {
    conditions: Vec<Condition>,
    output: Vec<char>,
}

impl LetterRule {
    fn matches(&self, letters: &[LetterToken], index: usize) -> bool {
        let prev = index.checked_sub(1).and_then(|i| letters.get(i));
        let next = letters.get(index + 1);
        self.conditions.iter().all(|cond| match cond {
            Condition::Initial => index == 0,
            Condition::Final => next.is_none(),
            Condition::Before(set) => next.is_some_and(|t| set.contains(t)),
            Condition::After(set) => prev.is_some_and(|t| set.contains(t)),
        })
    }
}

/// Internal alphabet plus the ordered, context-sensitive letter rules.
#[derive(Debug, Clone)]
pub struct PhonemeInventory {
    symbols: BTreeMap<char, PhonemeClass>,
    rules: HashMap<String, Vec<LetterRule>>,
}

impl Default for PhonemeInventory {
    fn default() -> Self {
        Self::parse(DEFAULT_INVENTORY).expect("bundled inventory is valid")
    }
}

impl PhonemeInventory {
    pub fn load(path: &Path) -> Result<Self, InventoryError> {
        let text = fs::read_to_string(path).map_err(|source| InventoryError::Unreadable {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, InventoryError> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Symbols,
            Rules,
        }
        let mut section = Section::None;
        let mut symbols = BTreeMap::new();
        let mut pending: Vec<(usize, String, LetterRule)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| InventoryError::Syntax {
                line: line_no,
                message,
            };
            match line {
                "[symbols]" => section = Section::Symbols,
                "[rules]" => section = Section::Rules,
                _ => {
                    let cols: Vec<&str> = line.split_whitespace().collect();
                    match section {
                        Section::None => {
                            return Err(syntax("entry outside of a section".into()));
                        }
                        Section::Symbols => {
                            let [sym, class] = cols[..] else {
                                return Err(syntax("expected `symbol class`".into()));
                            };
                            let symbol = single_char(sym).ok_or_else(|| {
                                syntax(format!("symbol {sym:?} is not one character"))
                            })?;
                            let class = match class {
                                "consonant" => PhonemeClass::Consonant,
                                "vowel" => PhonemeClass::Vowel,
                                "semivowel" => PhonemeClass::Semivowel,
                                other => return Err(syntax(format!("unknown class {other:?}"))),
                            };
                            if symbols.insert(symbol, class).is_some() {
                                return Err(syntax(format!("duplicate symbol {symbol:?}")));
                            }
                        }
                        Section::Rules => {
                            let [token, context, output] = cols[..] else {
                                return Err(syntax("expected `token context output`".into()));
                            };
                            let conditions = parse_context(context).map_err(syntax)?;
                            let output = if output == "-" {
                                Vec::new()
                            } else {
                                output.chars().collect()
                            };
                            pending.push((
                                line_no,
                                token.to_string(),
                                LetterRule { conditions, output },
                            ));
                        }
                    }
                }
            }
        }

        for (&symbol, &class) in &symbols {
            if class == PhonemeClass::Vowel {
                let upper = stressed_form(symbol);
                if upper == symbol || symbols.contains_key(&upper) {
                    return Err(InventoryError::Syntax {
                        line: 0,
                        message: format!(
                            "vowel {symbol:?} needs a distinct upper-case stressed form"
                        ),
                    });
                }
            }
        }

        let mut rules: HashMap<String, Vec<LetterRule>> = HashMap::new();
        for (line, token, rule) in pending {
            if let Some(bad) = rule.output.iter().find(|c| !symbols.contains_key(c)) {
                return Err(InventoryError::Syntax {
                    line,
                    message: format!("output symbol {bad:?} is not declared"),
                });
            }
            rules.entry(token).or_default().push(rule);
        }
        Ok(Self { symbols, rules })
    }

    pub fn class_of(&self, symbol: char) -> Option<PhonemeClass> {
        self.symbols.get(&symbol).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (char, PhonemeClass)> + '_ {
        self.symbols.iter().map(|(&s, &c)| (s, c))
    }

    /// Resolves an upper-case stressed vowel back to its base vowel.
    pub fn unstressed_vowel(&self, rendered: char) -> Option<char> {
        self.symbols
            .iter()
            .find(|&(&s, &c)| c == PhonemeClass::Vowel && stressed_form(s) == rendered)
            .map(|(&s, _)| s)
    }

    /// Output symbols for the token at `index`, or `None` when no rule applies.
    pub fn lookup(&self, letters: &[LetterToken], index: usize) -> Option<&[char]> {
        self.rules
            .get(&letters[index].surface)?
            .iter()
            .find(|rule| rule.matches(letters, index))
            .map(|rule| rule.output.as_slice())
    }
}

pub(crate) fn stressed_form(symbol: char) -> char {
    let mut upper = symbol.to_uppercase();
    match (upper.next(), upper.next()) {
        (Some(u), None) => u,
        _ => symbol,
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

fn parse_context(context: &str) -> Result<Vec<Condition>, String> {
    if context == "*" {
        return Ok(Vec::new());
    }
    context
        .split('&')
        .map(|part| match part {
            "initial" => Ok(Condition::Initial),
            "final" => Ok(Condition::Final),
            _ => {
                let (kind, set) = part
                    .split_once(':')
                    .ok_or_else(|| format!("unknown context {part:?}"))?;
                let set = match set {
                    "vowel" => LetterSet::Vowel,
                    "consonant" => LetterSet::Consonant,
                    list => LetterSet::Letters(list.split(',').map(str::to_string).collect()),
                };
                match kind {
                    "before" => Ok(Condition::Before(set)),
                    "after" => Ok(Condition::After(set)),
                    other => Err(format!("unknown context kind {other:?}")),
                }
            }
        })
        .collect()
}
