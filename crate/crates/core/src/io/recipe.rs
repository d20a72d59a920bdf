//! Recipe expressions such as `(C2 sq@1 C2) up@2 A*`.
//!
//! ```text
//! expr    := operand (OPER operand)?
//! operand := NAME | '(' expr ')'
//! OPER    := ('sq' | 'up' | 'dn') '@' INT
//! NAME    := [A-Za-z_][A-Za-z0-9_]* '*'?
//! ```
//!
//! Whitespace is insignificant. A chain of operators needs parentheses.
//! A trailing `*` denotes the dual of the named matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use crate::compose::{compose, CompositionKind, CompositionResult};
use crate::enumerate::{ANTICHAIN2_NAME, CHAIN2_NAME, POINT_NAME};
use crate::error::{Error, Result, Span};
use crate::io::format::parse_matrix;
use crate::poset::{dual, PosetMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecipeExpr {
    Name {
        name: String,
        dual: bool,
        span: Span,
    },
    Compose {
        left: Box<RecipeExpr>,
        kind: CompositionKind,
        position: usize,
        right: Box<RecipeExpr>,
        op_span: Span,
        span: Span,
    },
}

impl RecipeExpr {
    pub fn span(&self) -> Span {
        match self {
            RecipeExpr::Name { span, .. } | RecipeExpr::Compose { span, .. } => *span,
        }
    }
}

impl fmt::Display for RecipeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecipeExpr::Name { name, dual, .. } => {
                write!(f, "{name}{}", if *dual { "*" } else { "" })
            }
            RecipeExpr::Compose {
                left,
                kind,
                position,
                right,
                ..
            } => {
                let side = |e: &RecipeExpr, f: &mut fmt::Formatter<'_>| match e {
                    RecipeExpr::Name { .. } => write!(f, "{e}"),
                    RecipeExpr::Compose { .. } => write!(f, "({e})"),
                };
                side(left, f)?;
                write!(f, " {}@{} ", kind.keyword(), position)?;
                side(right, f)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Name {
        name: String,
        dual: bool,
    },
    Oper {
        kind: CompositionKind,
        position: usize,
    },
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<(Token, Span)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    let skip_ws = |mut k: usize| {
        while k < bytes.len() && bytes[k].is_ascii_whitespace() {
            k += 1;
        }
        k
    };
    while k < bytes.len() {
        let c = bytes[k];
        if c.is_ascii_whitespace() {
            k += 1;
            continue;
        }
        let start = k;
        match c {
            b'(' => {
                out.push((Token::Open, Span::new(k, k + 1)));
                k += 1;
            }
            b')' => {
                out.push((Token::Close, Span::new(k, k + 1)));
                k += 1;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                    k += 1;
                }
                let word = &text[start..k];
                let after = skip_ws(k);
                if after < bytes.len() && bytes[after] == b'@' {
                    let kind: CompositionKind = word.parse().map_err(|_| {
                        Error::recipe(
                            Span::new(start, k),
                            format!("unknown operator {word:?} (expected sq, up or dn)"),
                        )
                    })?;
                    let digits_start = skip_ws(after + 1);
                    let mut end = digits_start;
                    while end < bytes.len() && bytes[end].is_ascii_digit() {
                        end += 1;
                    }
                    let position: usize = text[digits_start..end].parse().map_err(|_| {
                        Error::recipe(
                            Span::new(start, end.max(after + 1)),
                            "expected a position after '@'",
                        )
                    })?;
                    if position == 0 {
                        return Err(Error::recipe(Span::new(start, end), "positions start at 1"));
                    }
                    out.push((Token::Oper { kind, position }, Span::new(start, end)));
                    k = end;
                } else {
                    let dual = k < bytes.len() && bytes[k] == b'*';
                    if dual {
                        k += 1;
                    }
                    out.push((
                        Token::Name {
                            name: word.to_string(),
                            dual,
                        },
                        Span::new(start, k),
                    ));
                }
            }
            _ => {
                let ch = text[k..].chars().next().expect("in bounds");
                return Err(Error::recipe(
                    Span::new(k, k + ch.len_utf8()),
                    format!("unexpected character {ch:?}"),
                ));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Span)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Token, Span)> {
        self.tokens.get(self.pos)
    }

    fn eof_span(&self) -> Span {
        Span::new(self.end, self.end)
    }

    fn expr(&mut self) -> Result<RecipeExpr> {
        let left = self.operand()?;
        let Some((Token::Oper { kind, position }, op_span)) = self.peek().cloned() else {
            return Ok(left);
        };
        self.pos += 1;
        let right = self.operand()?;
        if let Some((Token::Oper { .. }, span)) = self.peek() {
            return Err(Error::recipe(
                *span,
                "chained operators need parentheses, e.g. (X sq@1 Y) sq@1 Z",
            ));
        }
        let span = left.span().join(right.span());
        Ok(RecipeExpr::Compose {
            left: Box::new(left),
            kind,
            position,
            right: Box::new(right),
            op_span,
            span,
        })
    }

    fn operand(&mut self) -> Result<RecipeExpr> {
        let Some((token, span)) = self.peek().cloned() else {
            return Err(Error::recipe(self.eof_span(), "expected a name or '('"));
        };
        self.pos += 1;
        match token {
            Token::Name { name, dual } => Ok(RecipeExpr::Name { name, dual, span }),
            Token::Open => {
                let mut inner = self.expr()?;
                match self.peek().cloned() {
                    Some((Token::Close, close)) => {
                        self.pos += 1;
                        let full = span.join(close);
                        match &mut inner {
                            RecipeExpr::Name { .. } => {}
                            RecipeExpr::Compose { span, .. } => *span = full,
                        }
                        Ok(inner)
                    }
                    Some((_, other)) => Err(Error::recipe(other, "expected ')'")),
                    None => Err(Error::recipe(self.eof_span(), "missing ')'")),
                }
            }
            Token::Oper { .. } => Err(Error::recipe(
                span,
                "expected a name or '(' before the operator",
            )),
            Token::Close => Err(Error::recipe(span, "unexpected ')'")),
        }
    }
}

/// Parses a recipe. Names are resolved later by [`eval_recipe`].
pub fn parse_recipe(text: &str) -> Result<RecipeExpr> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if let Some((_, span)) = parser.peek() {
        return Err(Error::recipe(
            *span,
            "unexpected input after the expression",
        ));
    }
    Ok(expr)
}

/// Named matrices available to recipes.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    symbols: BTreeMap<String, PosetMatrix>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && CompositionKind::ALL.iter().all(|k| k.keyword() != name)
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable::default()
    }

    /// The point `P1`, the chain `C2` and the antichain `I2`.
    pub fn with_builtins() -> Self {
        let mut table = SymbolTable::new();
        let builtins = [
            (POINT_NAME, PosetMatrix::point()),
            (CHAIN2_NAME, PosetMatrix::chain(2).expect("order 2")),
            (ANTICHAIN2_NAME, PosetMatrix::antichain(2).expect("order 2")),
        ];
        for (name, m) in builtins {
            table.symbols.insert(name.to_string(), m);
        }
        table
    }

    pub fn insert(&mut self, name: &str, matrix: PosetMatrix) -> Result<()> {
        if !valid_name(name) {
            return Err(Error::Malformed(format!(
                "{name:?} is not a valid recipe name"
            )));
        }
        self.symbols.insert(name.to_string(), matrix);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&PosetMatrix> {
        self.symbols.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.symbols.keys().map(String::as_str)
    }

    /// Loads every `NAME.txt` matrix file in `dir`.
    pub fn load_dir(&mut self, dir: &Path) -> Result<()> {
        let mut paths: Vec<_> = fs::read_dir(dir)?
            .map(|entry| entry.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        paths.sort();
        for path in paths {
            if path.extension().and_then(|e| e.to_str()) != Some("txt") {
                continue;
            }
            let Some(name) = path.file_stem().and_then(|s| s.to_str()) else {
                continue;
            };
            if !valid_name(name) {
                continue;
            }
            let text = fs::read_to_string(&path)?;
            let matrix = parse_matrix(&text)
                .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
            self.symbols.insert(name.to_string(), matrix);
        }
        Ok(())
    }
}

fn eval_operand(expr: &RecipeExpr, symbols: &SymbolTable) -> Result<PosetMatrix> {
    let result = eval_recipe(expr, symbols)?;
    if !result.is_valid() {
        return Err(Error::recipe(
            expr.span(),
            format!(
                "intermediate result is not a poset matrix: {}",
                result.report
            ),
        ));
    }
    result.into_poset()
}

/// Evaluates a parsed recipe. The outermost composition may be invalid, in
/// which case the result carries the violations; invalid intermediate
/// results are errors.
pub fn eval_recipe(expr: &RecipeExpr, symbols: &SymbolTable) -> Result<CompositionResult> {
    match expr {
        RecipeExpr::Name {
            name,
            dual: star,
            span,
        } => {
            let m = symbols
                .get(name)
                .ok_or_else(|| Error::recipe(*span, format!("unknown name {name:?}")))?;
            let m = if *star { dual(m) } else { m.clone() };
            Ok(CompositionResult::from_poset(m))
        }
        RecipeExpr::Compose {
            left,
            kind,
            position,
            right,
            op_span,
            ..
        } => {
            let a = eval_operand(left, symbols)?;
            let b = eval_operand(right, symbols)?;
            if *position > a.order() {
                return Err(Error::recipe(
                    *op_span,
                    format!(
                        "position {position} is out of range for a left operand of order {}",
                        a.order()
                    ),
                ));
            }
            compose(*kind, &a, *position, &b)
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_recipe_str(text: &str, symbols: &SymbolTable) -> Result<CompositionResult> {
    eval_recipe(&parse_recipe(text)?, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::compose_square;

    fn symbols() -> SymbolTable {
        let mut table = SymbolTable::with_builtins();
        table
            .insert(
                "A",
                PosetMatrix::from_row_str("1000;1100;1110;1101").unwrap(),
            )
            .unwrap();
        table
    }

    #[test]
    fn parses_a_simple_expression() {
        let expr = parse_recipe("A sq@2 C2").unwrap();
        match &expr {
            RecipeExpr::Compose { kind, position, .. } => {
                assert_eq!((*kind, *position), (CompositionKind::Square, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(expr.to_string(), "A sq@2 C2");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_recipe("(C2 sq@1 C2)sq@1 C2").unwrap();
        let b = parse_recipe("  ( C2  sq @ 1 C2 ) sq@ 1   C2 ").unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn duals_are_marked() {
        let expr = parse_recipe("A* dn@4 I2").unwrap();
        assert_eq!(expr.to_string(), "A* dn@4 I2");
    }

    #[test]
    fn evaluates_the_for_instance_block() {
        let r = eval_recipe_str("A sq@2 C2", &symbols()).unwrap();
        assert_eq!(r.matrix.row_string(), "10000;11000;11100;11110;11101");
    }

    #[test]
    fn nested_chains_make_a_chain() {
        let r = eval_recipe_str("(C2 sq@1 C2) sq@1 C2", &symbols()).unwrap();
        assert_eq!(
            r.matrix.row_masks(),
            PosetMatrix::chain(4).unwrap().row_masks()
        );
    }

    #[test]
    fn matches_direct_composition() {
        let syms = symbols();
        let a = syms.get("A").unwrap();
        let c2 = syms.get("C2").unwrap();
        for i in 1..=4 {
            let via_recipe = eval_recipe_str(&format!("A sq@{i} C2"), &syms).unwrap();
            assert_eq!(via_recipe, compose_square(a, i, c2).unwrap());
        }
    }

    #[test]
    fn errors_carry_spans() {
        let syms = symbols();
        match eval_recipe_str("A sq@2 Zed", &syms) {
            Err(Error::Recipe { span, .. }) => assert_eq!(span, Span::new(7, 10)),
            other => panic!("unexpected {other:?}"),
        }
        match eval_recipe_str("C2 sq@3 A", &syms) {
            Err(Error::Recipe { span, message }) => {
                assert_eq!(span, Span::new(3, 7));
                assert!(message.contains("out of range"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_recipe("A xx@1 C2") {
            Err(Error::Recipe { span, .. }) => assert_eq!(span, Span::new(2, 4)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_recipe("A sq@1 C2 sq@1 C2") {
            Err(Error::Recipe { message, .. }) => assert!(message.contains("parentheses")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_recipe("(A sq@1 C2"),
            Err(Error::Recipe { .. })
        ));
        assert!(matches!(
            parse_recipe("A sq@ C2"),
            Err(Error::Recipe { .. })
        ));
        assert!(matches!(
            parse_recipe("A sq@0 C2"),
            Err(Error::Recipe { .. })
        ));
        assert!(matches!(parse_recipe("A + C2"), Err(Error::Recipe { .. })));
        assert!(matches!(parse_recipe(""), Err(Error::Recipe { .. })));
    }

    #[test]
    fn invalid_intermediates_are_errors() {
        let mut syms = symbols();
        syms.insert("CH4", PosetMatrix::chain(4).unwrap()).unwrap();
        let top = eval_recipe_str("CH4 up@3 C2", &syms).unwrap();
        assert!(!top.is_valid());
        assert!(matches!(
            eval_recipe_str("(CH4 up@3 C2) sq@1 C2", &syms),
            Err(Error::Recipe { .. })
        ));
    }

    #[test]
    fn operator_keywords_are_not_names() {
        let mut syms = SymbolTable::new();
        assert!(syms.insert("sq", PosetMatrix::point()).is_err());
        assert!(syms.insert("X*", PosetMatrix::point()).is_err());
        assert!(syms.insert("X_1", PosetMatrix::point()).is_ok());
    }
}
