//! Session scripts: syntax tree and parser.
//!
//! One statement per line, or several separated by `;`. A line ending in an
//! operator, or followed by a line starting with `+`/`-`, continues on the
//! next line. As in an interactive session, the value of an assignment or a
//! bare expression is printed unless the statement ends in `;`.
//! Supported statements:
//!
//! ```text
//! needsPackage "OIGroebnerBases"
//! P = makePolynomialOIAlgebra(2, x, QQ)
//! F = makeFreeOIModule(e, {1,1,2}, P)          -- optional 4th argument: {twists}
//! installGeneratorsInWidth(F, 2)               -- accepted, nothing to do
//! use F_2; b = x(1,2)*x(1,1)*e(2,{2},2) + ...  -- `use` pins module and width
//! G = oiGB({b1, b2}, Verbose => true);
//! D = oiSyz(G, d);
//! R = oiRes({f}, 5, Minimize => true);
//! W = restrict(R, 3);
//! print ranks R
//! describe R
//! ```
//!
//! Names must be defined before use, and element expressions are checked
//! against their module while parsing. Prompts such as `i5 :` are skipped.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use oigb_core::module::{FreeModule, ModuleElement};
use oigb_core::poly::Algebra;
use oigb_core::text::{lex, parse_element_at, Cursor, Tok, Token};

/// A located diagnostic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ScriptError {}

impl ScriptError {
    pub fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ScriptError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Converts a kernel error, keeping its own location when it has one.
    pub fn from_kernel(e: oigb_core::Error, line: usize, column: usize) -> Self {
        match e {
            oigb_core::Error::Parse { line, column, message } => ScriptError { line, column, message },
            other => ScriptError::at(line, column, other.to_string()),
        }
    }
}

type PResult<T> = std::result::Result<T, ScriptError>;

/// Per-call options written as `Name => value`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CallOptions {
    pub verbose: Option<bool>,
    pub minimize: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    Gb { inputs: Vec<String>, opts: CallOptions },
    Syz { gb: String, symbol: String, opts: CallOptions },
    Res { inputs: Vec<String>, degree: usize, opts: CallOptions },
    Restrict { res: Box<Expr>, width: usize },
    Ranks(Box<Expr>),
    Describe(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    DefineAlgebra { name: String, algebra: Algebra },
    DefineModule { name: String, module: Arc<FreeModule> },
    /// `echo` is set when the statement did not end in `;`.
    DefineElement { name: String, element: ModuleElement, echo: bool },
    Assign { name: String, expr: Expr, echo: bool },
    /// An expression evaluated for its output, if `echo` is set.
    Eval { expr: Expr, echo: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Located {
    pub line: usize,
    pub column: usize,
    pub stmt: Stmt,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Script {
    pub statements: Vec<Located>,
}

/// What a name stands for, as far as the parser can tell.
#[derive(Clone, Debug)]
enum Kind {
    Algebra(Algebra),
    Module(Arc<FreeModule>),
    Element,
    /// A Groebner or syzygy basis, usable wherever a list of elements is.
    Basis,
    Complex,
    Restricted,
    Report,
}

impl Kind {
    fn label(&self) -> &'static str {
        match self {
            Kind::Algebra(_) => "an algebra",
            Kind::Module(_) => "a module",
            Kind::Element => "an element",
            Kind::Basis => "a basis",
            Kind::Complex => "a resolution",
            Kind::Restricted => "a restricted complex",
            Kind::Report => "a report",
        }
    }
}

struct Parser {
    names: HashMap<String, Kind>,
    /// Modules by basis symbol, most recent definition last.
    symbols: Vec<(String, Arc<FreeModule>)>,
    /// Set by `use F_n` for the rest of the line.
    current: Option<(Arc<FreeModule>, usize)>,
}

fn ident_is(tok: Option<&Token>, s: &str) -> bool {
    matches!(tok, Some(Token { tok: Tok::Ident(x), .. }) if x == s)
}

fn is_prompt(s: &str) -> bool {
    s.len() > 1 && s.starts_with('i') && s[1..].chars().all(|c| c.is_ascii_digit())
}

/// Splits a token stream into statements, flagging those ended by `;`.
fn statements(toks: &[Token]) -> Vec<(&[Token], bool)> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth: i64 = 0;
    for k in 0..toks.len() {
        match &toks[k].tok {
            Tok::Punct("(" | "{" | "[") => depth += 1,
            Tok::Punct(")" | "}" | "]") => depth -= 1,
            Tok::Punct(";") if depth <= 0 => {
                if start < k {
                    out.push((&toks[start..k], true));
                }
                start = k + 1;
                depth = 0;
                continue;
            }
            _ => {}
        }
        let Some(next) = toks.get(k + 1) else { break };
        if next.line == toks[k].line || depth > 0 {
            continue;
        }
        let dangling = matches!(toks[k].tok, Tok::Punct("+" | "-" | "*" | "/" | "^" | "," | "=" | "=>"));
        let continued = matches!(next.tok, Tok::Punct("+" | "-"));
        if !dangling && !continued {
            out.push((&toks[start..=k], false));
            start = k + 1;
            depth = 0;
        }
    }
    if start < toks.len() {
        out.push((&toks[start..], false));
    }
    out
}

impl Parser {
    fn kind(&self, tok: &Token, name: &str) -> PResult<&Kind> {
        self.names
            .get(name)
            .ok_or_else(|| ScriptError::at(tok.line, tok.column, format!("'{name}' is not defined")))
    }

    fn name_of(&self, cur: &mut Cursor<'_>, want: &[fn(&Kind) -> bool], what: &str) -> PResult<String> {
        let tok = cur.peek().cloned();
        let name = cur.expect_ident().map_err(conv)?.to_string();
        let tok = tok.expect("identifier was present");
        let kind = self.kind(&tok, &name)?;
        if !want.iter().any(|w| w(kind)) {
            return Err(ScriptError::at(
                tok.line,
                tok.column,
                format!("'{name}' is {}, expected {what}", kind.label()),
            ));
        }
        Ok(name)
    }

    fn element_list(&self, cur: &mut Cursor<'_>) -> PResult<Vec<String>> {
        let is_elements: [fn(&Kind) -> bool; 2] = [|k| matches!(k, Kind::Element), |k| matches!(k, Kind::Basis)];
        if !cur.is_punct("{") {
            return Ok(vec![self.name_of(cur, &is_elements, "elements")?]);
        }
        cur.expect_punct("{").map_err(conv)?;
        let mut out = Vec::new();
        if cur.eat_punct("}") {
            return Err(cur_error(cur, "the list of elements is empty"));
        }
        loop {
            out.push(self.name_of(cur, &is_elements, "elements")?);
            if cur.eat_punct("}") {
                return Ok(out);
            }
            cur.expect_punct(",").map_err(conv)?;
        }
    }

    fn options(&self, cur: &mut Cursor<'_>, allowed: &[&str]) -> PResult<CallOptions> {
        let mut opts = CallOptions::default();
        while cur.eat_punct(",") {
            let tok = cur.peek().cloned();
            let key = cur.expect_ident().map_err(conv)?.to_string();
            let tok = tok.expect("identifier was present");
            if !allowed.contains(&key.as_str()) {
                return Err(ScriptError::at(tok.line, tok.column, format!("unknown option '{key}'")));
            }
            cur.expect_punct("=>").map_err(conv)?;
            let vtok = cur.peek().cloned();
            let value = match cur.expect_ident().map_err(conv)? {
                "true" => true,
                "false" => false,
                _ => {
                    let t = vtok.expect("identifier was present");
                    return Err(ScriptError::at(t.line, t.column, "expected true or false"));
                }
            };
            match key.as_str() {
                "Verbose" => opts.verbose = Some(value),
                _ => opts.minimize = Some(value),
            }
        }
        Ok(opts)
    }

    /// Parses an expression and reports the kind of its value.
    fn expr(&self, cur: &mut Cursor<'_>) -> PResult<(Expr, Kind)> {
        let tok = cur.peek().cloned().ok_or_else(|| cur_error(cur, "expected an expression"))?;
        let Tok::Ident(word) = &tok.tok else {
            return Err(ScriptError::at(tok.line, tok.column, "expected an expression"));
        };
        match word.as_str() {
            "oiGB" => {
                cur.next();
                let paren = cur.eat_punct("(");
                let inputs = self.element_list(cur)?;
                let opts = if paren {
                    let o = self.options(cur, &["Verbose"])?;
                    cur.expect_punct(")").map_err(conv)?;
                    o
                } else {
                    CallOptions::default()
                };
                Ok((Expr::Gb { inputs, opts }, Kind::Basis))
            }
            "oiSyz" => {
                cur.next();
                cur.expect_punct("(").map_err(conv)?;
                let gb = self.name_of(cur, &[|k| matches!(k, Kind::Basis)], "a Groebner basis")?;
                cur.expect_punct(",").map_err(conv)?;
                let symbol = cur.expect_ident().map_err(conv)?.to_string();
                let opts = self.options(cur, &["Verbose"])?;
                cur.expect_punct(")").map_err(conv)?;
                Ok((Expr::Syz { gb, symbol, opts }, Kind::Basis))
            }
            "oiRes" => {
                cur.next();
                cur.expect_punct("(").map_err(conv)?;
                let inputs = self.element_list(cur)?;
                cur.expect_punct(",").map_err(conv)?;
                if cur.is_punct("-") {
                    return Err(cur_error(cur, "the homological degree must be nonnegative"));
                }
                let degree = cur.expect_usize().map_err(conv)?;
                let opts = self.options(cur, &["Verbose", "Minimize"])?;
                cur.expect_punct(")").map_err(conv)?;
                Ok((Expr::Res { inputs, degree, opts }, Kind::Complex))
            }
            "restrict" => {
                cur.next();
                cur.expect_punct("(").map_err(conv)?;
                let (res, kind) = self.expr(cur)?;
                if !matches!(kind, Kind::Complex) {
                    return Err(ScriptError::at(tok.line, tok.column, "restrict needs a resolution"));
                }
                cur.expect_punct(",").map_err(conv)?;
                let width = cur.expect_usize().map_err(conv)?;
                cur.expect_punct(")").map_err(conv)?;
                Ok((
                    Expr::Restrict {
                        res: Box::new(res),
                        width,
                    },
                    Kind::Restricted,
                ))
            }
            "ranks" | "describe" => {
                cur.next();
                let (inner, kind) = self.expr(cur)?;
                if !matches!(kind, Kind::Complex) {
                    return Err(ScriptError::at(tok.line, tok.column, format!("{word} needs a resolution")));
                }
                let e = if word == "ranks" {
                    Expr::Ranks(Box::new(inner))
                } else {
                    Expr::Describe(Box::new(inner))
                };
                Ok((e, Kind::Report))
            }
            name => {
                let kind = self.kind(&tok, name)?.clone();
                if matches!(kind, Kind::Algebra(_) | Kind::Module(_)) {
                    return Err(ScriptError::at(
                        tok.line,
                        tok.column,
                        format!("'{name}' is {} and has no value to use here", kind.label()),
                    ));
                }
                cur.next();
                Ok((Expr::Name(name.to_string()), kind))
            }
        }
    }

    fn module_for(&self, toks: &[Token]) -> Option<Arc<FreeModule>> {
        toks.iter().find_map(|t| match &t.tok {
            Tok::Ident(s) => self.symbols.iter().rev().find(|(sym, _)| sym == s).map(|(_, m)| m.clone()),
            _ => None,
        })
    }

    fn algebra_def(&self, cur: &mut Cursor<'_>) -> PResult<Algebra> {
        cur.expect_punct("(").map_err(conv)?;
        let rows_tok = cur.peek().cloned();
        let rows = cur.expect_usize().map_err(conv)?;
        cur.expect_punct(",").map_err(conv)?;
        let symbol = cur.expect_ident().map_err(conv)?.to_string();
        if cur.eat_punct(",") {
            let ftok = cur.peek().cloned();
            let field = cur.expect_ident().map_err(conv)?;
            if field != "QQ" {
                let t = ftok.expect("identifier was present");
                return Err(ScriptError::at(t.line, t.column, format!("unsupported field '{field}'; only QQ is available")));
            }
        }
        cur.expect_punct(")").map_err(conv)?;
        Algebra::new(rows, symbol).map_err(|e| {
            let t = rows_tok.expect("integer was present");
            ScriptError::at(t.line, t.column, e.to_string())
        })
    }

    fn module_def(&self, cur: &mut Cursor<'_>, at: &Token) -> PResult<FreeModule> {
        cur.expect_punct("(").map_err(conv)?;
        let symbol = cur.expect_ident().map_err(conv)?.to_string();
        cur.expect_punct(",").map_err(conv)?;
        let widths = cur.int_list().map_err(conv)?;
        cur.expect_punct(",").map_err(conv)?;
        let alg_tok = cur.peek().cloned();
        let alg_name = cur.expect_ident().map_err(conv)?;
        let alg_tok = alg_tok.expect("identifier was present");
        let algebra = match self.kind(&alg_tok, alg_name)? {
            Kind::Algebra(a) => a.clone(),
            other => {
                return Err(ScriptError::at(
                    alg_tok.line,
                    alg_tok.column,
                    format!("'{alg_name}' is {}, expected an algebra", other.label()),
                ))
            }
        };
        let twists = if cur.eat_punct(",") {
            cur.signed_int_list().map_err(conv)?
        } else {
            vec![0; widths.len()]
        };
        cur.expect_punct(")").map_err(conv)?;
        if symbol == algebra.symbol {
            return Err(ScriptError::at(at.line, at.column, "basis and variable symbols must differ"));
        }
        FreeModule::with_twists(algebra, symbol, widths, twists).map_err(|e| ScriptError::at(at.line, at.column, e.to_string()))
    }

    fn module_width(&self, cur: &mut Cursor<'_>) -> PResult<(Arc<FreeModule>, usize, Token)> {
        cur.expect_punct("(").map_err(conv)?;
        let tok = cur.peek().cloned();
        let name = cur.expect_ident().map_err(conv)?.to_string();
        let tok = tok.expect("identifier was present");
        let module = match self.kind(&tok, &name)? {
            Kind::Module(m) => m.clone(),
            other => {
                return Err(ScriptError::at(tok.line, tok.column, format!("'{name}' is {}, expected a module", other.label())))
            }
        };
        cur.expect_punct(",").map_err(conv)?;
        let width = cur.expect_usize().map_err(conv)?;
        cur.expect_punct(")").map_err(conv)?;
        Ok((module, width, tok))
    }

    fn statement(&mut self, toks: &[Token], silent: bool, out: &mut Vec<Located>) -> PResult<()> {
        let echo = !silent;
        let mut toks = toks;
        // `i5 : ...` prompts
        while toks.len() >= 2 && matches!(&toks[0].tok, Tok::Ident(s) if is_prompt(s)) && matches!(toks[1].tok, Tok::Punct(":")) {
            toks = &toks[2..];
        }
        if toks.is_empty() {
            return Ok(());
        }
        let first = toks[0].clone();
        let mut cur = Cursor::new(toks);
        let (line, column) = (first.line, first.column);
        let Tok::Ident(word) = &first.tok else {
            return Err(ScriptError::at(line, column, "expected a statement"));
        };
        match word.as_str() {
            "needsPackage" => {
                cur.next();
                match cur.next() {
                    Some(Token { tok: Tok::Str(_), .. }) => {}
                    _ => return Err(cur_error(&cur, "expected a package name in quotes")),
                }
            }
            "use" => {
                cur.next();
                let tok = cur.peek().cloned();
                let target = cur.expect_ident().map_err(conv)?;
                let tok = tok.expect("identifier was present");
                let (name, width) = target
                    .rsplit_once('_')
                    .and_then(|(n, w)| Some((n, w.parse::<usize>().ok()?)))
                    .ok_or_else(|| ScriptError::at(tok.line, tok.column, "expected `use MODULE_WIDTH`"))?;
                match self.kind(&tok, name)? {
                    Kind::Module(m) => self.current = Some((m.clone(), width)),
                    other => {
                        return Err(ScriptError::at(tok.line, tok.column, format!("'{name}' is {}, expected a module", other.label())))
                    }
                }
            }
            "installGeneratorsInWidth" | "installBasisElements" => {
                cur.next();
                self.module_width(&mut cur)?;
            }
            "print" => {
                cur.next();
                let (expr, _) = self.expr(&mut cur)?;
                out.push(Located {
                    line,
                    column,
                    stmt: Stmt::Eval { expr, echo: true },
                });
            }
            _ if matches!(toks.get(1), Some(Token { tok: Tok::Punct("="), .. })) => {
                let name = word.clone();
                cur.next();
                cur.next();
                let rhs = cur.peek().cloned().ok_or_else(|| cur_error(&cur, "expected a value"))?;
                let stmt = if ident_is(Some(&rhs), "makePolynomialOIAlgebra") {
                    cur.next();
                    let algebra = self.algebra_def(&mut cur)?;
                    self.names.insert(name.clone(), Kind::Algebra(algebra.clone()));
                    Stmt::DefineAlgebra { name, algebra }
                } else if ident_is(Some(&rhs), "makeFreeOIModule") {
                    cur.next();
                    let module = Arc::new(self.module_def(&mut cur, &rhs)?);
                    self.names.insert(name.clone(), Kind::Module(module.clone()));
                    self.symbols.push((module.symbol().to_string(), module.clone()));
                    Stmt::DefineModule { name, module }
                } else if self.is_expression(&cur) {
                    let (expr, kind) = self.expr(&mut cur)?;
                    self.names.insert(name.clone(), kind);
                    Stmt::Assign { name, expr, echo }
                } else {
                    let (module, width) = match &self.current {
                        Some((m, w)) => (m.clone(), Some(*w)),
                        None => {
                            let m = self.module_for(&toks[2..]).ok_or_else(|| {
                                ScriptError::at(rhs.line, rhs.column, "no module has a basis symbol used here; define one or add `use MODULE_WIDTH;`")
                            })?;
                            (m, None)
                        }
                    };
                    let element = parse_element_at(&mut cur, &module, width)
                        .map_err(|e| ScriptError::from_kernel(e, rhs.line, rhs.column))?;
                    self.names.insert(name.clone(), Kind::Element);
                    Stmt::DefineElement { name, element, echo }
                };
                out.push(Located { line, column, stmt });
            }
            _ => {
                let (expr, _) = self.expr(&mut cur)?;
                out.push(Located {
                    line,
                    column,
                    stmt: Stmt::Eval { expr, echo },
                });
            }
        }
        if !cur.at_end() {
            return Err(cur_error(&cur, "unexpected input at end of statement"));
        }
        Ok(())
    }

    /// Whether the right-hand side is a call or a bare name rather than an element.
    fn is_expression(&self, cur: &Cursor<'_>) -> bool {
        match cur.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) => {
                matches!(s.as_str(), "oiGB" | "oiSyz" | "oiRes" | "restrict" | "ranks" | "describe")
                    || (self.names.contains_key(s) && cur.peek_at(1).is_none())
            }
            _ => false,
        }
    }
}

fn conv(e: oigb_core::Error) -> ScriptError {
    ScriptError::from_kernel(e, 1, 1)
}

fn cur_error(cur: &Cursor<'_>, message: &str) -> ScriptError {
    conv(cur.error(message))
}

/// Parses a script, checking names and element expressions.
pub fn parse(source: &str) -> PResult<Script> {
    let toks = lex(source).map_err(conv)?;
    let mut parser = Parser {
        names: HashMap::new(),
        symbols: Vec::new(),
        current: None,
    };
    let mut statements = Vec::new();
    let mut last_line = 0;
    for (stmt, silent) in self::statements(&toks) {
        if stmt[0].line != last_line {
            // `use` lasts until the end of the line it appears on
            parser.current = None;
            last_line = stmt[0].line;
        }
        parser.statement(stmt, silent, &mut statements)?;
    }
    Ok(Script { statements })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "P = makePolynomialOIAlgebra(2, x, QQ)\nF = makeFreeOIModule(e, {1,1,2}, P)\n";

    #[test]
    fn session_element_syntax() {
        let src = format!("{HEADER}use F_1; b1 = x_(1,1)*e_(1,{{1}},1)+x_(2,1)*e_(1,{{1}},2)\n");
        let s = parse(&src).unwrap();
        let Stmt::DefineElement { element, .. } = &s.statements[2].stmt else {
            panic!("expected an element")
        };
        assert_eq!(element.to_string(), "x(1,1)*e(1,{1},1) + x(2,1)*e(1,{1},2)");
    }

    #[test]
    fn located_diagnostics() {
        let err = parse(&format!("{HEADER}b = e(2,{{2,1}},3)\n")).unwrap_err();
        assert_eq!((err.line, err.column), (3, 5));
        assert!(err.message.contains("strictly increasing"), "{err}");

        let err = parse(&format!("{HEADER}G = oiGB {{b}}\n")).unwrap_err();
        assert_eq!((err.line, err.column), (3, 11));
        assert!(err.message.contains("not defined"));

        let err = parse(&format!("{HEADER}use F_3; b = x(1,1)*e(2,{{1}},1)\n")).unwrap_err();
        assert!(err.message.contains("width 2 in an element of width 3"), "{err}");

        let err = parse(&format!("{HEADER}b = y(1,1)*e(1,{{1}},1)\n")).unwrap_err();
        assert!(err.message.contains("unknown symbol 'y'"), "{err}");

        let err = parse("P = makePolynomialOIAlgebra(2, x, ZZ)\n").unwrap_err();
        assert!(err.message.contains("only QQ"));
    }

    #[test]
    fn statements_split_on_lines_and_semicolons() {
        let src = format!("{HEADER}b = x(1,1)*e(1,{{1}},1)\n  + x(2,1)*e(1,{{1}},2); c = e(1,{{1}},2)\nG = oiGB({{b, c}}, Verbose => true)\n");
        let s = parse(&src).unwrap();
        assert_eq!(s.statements.len(), 5);
        let Stmt::Assign { expr: Expr::Gb { inputs, opts }, echo, .. } = &s.statements[4].stmt else {
            panic!("expected oiGB")
        };
        assert!(echo);
        assert_eq!(inputs, &["b", "c"]);
        assert_eq!(opts.verbose, Some(true));
    }

    #[test]
    fn prompts_and_install_calls_are_accepted() {
        let src = "i1 : needsPackage \"OIGroebnerBases\";\ni2 : P = makePolynomialOIAlgebra(2, x, QQ);\ni3 : F = makeFreeOIModule(e, {1, 1}, P);\ni4 : installBasisElements(F, 3);\ni5 : use F_3; f = x_(1,2)*x_(1,1)*e_(3,{2},1)+x_(2,2)*x_(2,1)*e_(3,{1},2);\ni7 : ranks oiRes({f}, 5)\n";
        let s = parse(src).unwrap();
        assert!(matches!(
            s.statements.last().unwrap().stmt,
            Stmt::Eval { expr: Expr::Ranks(_), echo: true }
        ));
        assert!(s.statements.iter().all(|l| match &l.stmt {
            Stmt::DefineElement { echo, .. } => !echo,
            _ => true,
        }));
    }

    #[test]
    fn empty_script() {
        assert!(parse("").unwrap().statements.is_empty());
        assert!(parse("-- only a comment\n\n").unwrap().statements.is_empty());
    }
}
