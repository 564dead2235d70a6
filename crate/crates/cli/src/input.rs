//! The line-based input document and the variety expression grammar.
//!
//! Documents are sections of key = value lines:
//!
//! ```text
//! [field]
//! p = 5
//! k = 1
//!
//! [variety]
//! expr = curve(x1^2*x2 - x0^3 - x0*x2^2)
//!
//! [run]
//! r = 1
//! terms = 4
//! bounds = 100000000
//! ```
//!
//! plus optional [frobenius] (p0 = 1,-1 style coefficient lists) and
//! [claims] (cycle_rank, minimal_poly) sections. Unknown sections and keys
//! are rejected. Blank lines and lines starting with '#' are ignored.

use num_bigint::{BigInt, BigUint};
use zetaval_core::poly::IntPoly;
use zetaval_core::variety::{MultiPoly, VarietyError, VarietyExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, col: usize, message: impl Into<String>, expected: &[&str]) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InputDocument {
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub expr: Option<String>,
    pub r: Option<u32>,
    pub terms: Option<u32>,
    pub bounds: Option<u64>,
    /// Coefficient lists for P_0..P_{2d}, low degree first.
    pub frobenius: Option<Vec<Vec<BigInt>>>,
    pub cycle_rank: Option<i64>,
    pub minimal_poly: Option<Vec<BigInt>>,
}

/// Parses the sectioned key = value document.
pub fn parse_document(text: &str) -> Result<InputDocument, ParseError> {
    let mut doc = InputDocument::default();
    let mut section: Option<String> = None;
    let mut frob: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return Err(err(line_no, raw.len(), "unterminated section header", &["]"]));
            };
            let name = name.trim();
            match name {
                "field" | "variety" | "run" | "frobenius" | "claims" => {
                    section = Some(name.to_string());
                }
                other => {
                    return Err(err(
                        line_no,
                        1,
                        format!("unknown section [{}]", other),
                        &["[field]", "[variety]", "[run]", "[frobenius]", "[claims]"],
                    ));
                }
            }
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(err(line_no, 1, format!("expected key = value, got {:?}", line), &["="]));
        };
        let key = raw[..eq].trim();
        let value = raw[eq + 1..].trim();
        let value_col = raw[eq + 1..]
            .find(|c: char| !c.is_whitespace())
            .map(|o| eq + 2 + o)
            .unwrap_or(eq + 2);
        let Some(section_name) = section.as_deref() else {
            return Err(err(line_no, 1, "key outside any section", &["[field]"]));
        };
        match (section_name, key) {
            ("field", "p") => doc.p = Some(parse_u64(value, line_no, value_col)?),
            ("field", "k") => doc.k = Some(parse_u64(value, line_no, value_col)? as u32),
            ("variety", "expr") => doc.expr = Some(value.to_string()),
            ("run", "r") => doc.r = Some(parse_u64(value, line_no, value_col)? as u32),
            ("run", "terms") => doc.terms = Some(parse_u64(value, line_no, value_col)? as u32),
            ("run", "bounds") => doc.bounds = Some(parse_u64(value, line_no, value_col)?),
            ("claims", "cycle_rank") => {
                doc.cycle_rank = Some(value.parse::<i64>().map_err(|_| {
                    err(line_no, value_col, format!("invalid integer {:?}", value), &["integer"])
                })?)
            }
            ("claims", "minimal_poly") => {
                doc.minimal_poly = Some(parse_int_list(value, line_no, value_col)?)
            }
            ("frobenius", k2) => {
                let Some(deg) = k2.strip_prefix('p').and_then(|d| d.parse::<usize>().ok()) else {
                    return Err(err(
                        line_no,
                        1,
                        format!("unknown key {:?} in [frobenius]", k2),
                        &["p0", "p1", "..."],
                    ));
                };
                frob.push((deg, parse_int_list(value, line_no, value_col)?));
            }
            (section_name, key) => {
                return Err(err(
                    line_no,
                    1,
                    format!("unknown key {:?} in [{}]", key, section_name),
                    &[],
                ));
            }
        }
    }
    if !frob.is_empty() {
        let top = frob.iter().map(|(d, _)| *d).max().unwrap();
        let mut polys = vec![None; top + 1];
        for (d, coeffs) in frob {
            polys[d] = Some(coeffs);
        }
        let mut out = Vec::with_capacity(polys.len());
        for (d, p) in polys.into_iter().enumerate() {
            let Some(p) = p else {
                return Err(err(0, 0, format!("[frobenius] is missing p{}", d), &[]));
            };
            out.push(p);
        }
        doc.frobenius = Some(out);
    }
    Ok(doc)
}

fn parse_u64(v: &str, line: usize, col: usize) -> Result<u64, ParseError> {
    v.parse::<u64>()
        .map_err(|_| err(line, col, format!("invalid number {:?}", v), &["natural number"]))
}

fn parse_int_list(v: &str, line: usize, col: usize) -> Result<Vec<BigInt>, ParseError> {
    v.split(',')
        .map(|tok| {
            tok.trim().parse::<BigInt>().map_err(|_| {
                err(line, col, format!("invalid integer {:?}", tok.trim()), &["integer"])
            })
        })
        .collect()
}

/// Converts a coefficient list (low degree first) into a polynomial.
pub fn poly_from_coeffs(coeffs: &[BigInt]) -> IntPoly {
    IntPoly::new(coeffs.to_vec())
}

// ---------------------------------------------------------------------------
// Variety expression grammar.
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col_base: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize, col_base: usize) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line,
            col_base,
        }
    }

    fn col(&self) -> usize {
        self.col_base + self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            got => Err(err(
                self.line,
                self.col(),
                format!("found {:?}", got.map(String::from).unwrap_or_else(|| "end of input".into())),
                &[&c.to_string()],
            )),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(err(self.line, self.col(), "unexpected token", &[kw]))
        }
    }

    fn nat(&mut self) -> Result<BigUint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(self.line, self.col(), "expected a number", &["digit"]));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn nat_u32(&mut self, what: &str) -> Result<u32, ParseError> {
        let col = self.col();
        let n = self.nat()?;
        u32::try_from(&n).map_err(|_| err(self.line, col, format!("{} too large", what), &[]))
    }
}

/// Parses a variety expression; `line` and `col_base` locate the value in
/// the enclosing document for error reporting.
pub fn parse_expr(src: &str, line: usize, col_base: usize) -> Result<VarietyExpr, ParseError> {
    let mut lex = Lexer::new(src, line, col_base);
    let v = expr(&mut lex)?;
    lex.skip_ws();
    if lex.pos != lex.src.len() {
        return Err(err(
            lex.line,
            lex.col(),
            "trailing input after expression",
            &["end of input"],
        ));
    }
    Ok(v)
}

fn expr(lex: &mut Lexer) -> Result<VarietyExpr, ParseError> {
    match lex.peek() {
        Some('P') => {
            lex.expect_keyword("P")?;
            lex.expect('(')?;
            let n = lex.nat_u32("projective dimension")?;
            lex.expect(')')?;
            Ok(VarietyExpr::projective_space(n))
        }
        Some('h') => {
            lex.expect_keyword("hyp")?;
            lex.expect('(')?;
            let n = lex.nat_u32("ambient dimension")?;
            lex.expect(';')?;
            let (f, col) = poly(lex, n as usize + 1)?;
            lex.expect(')')?;
            VarietyExpr::hypersurface(n, f).map_err(|e| variety_err(e, lex.line, col))
        }
        Some('c') => {
            lex.expect_keyword("curve")?;
            lex.expect('(')?;
            let (f, col) = poly(lex, 3)?;
            lex.expect(')')?;
            VarietyExpr::plane_curve(f).map_err(|e| variety_err(e, lex.line, col))
        }
        Some('p') => {
            lex.expect_keyword("prod")?;
            lex.expect('(')?;
            let l = expr(lex)?;
            lex.expect(',')?;
            let r = expr(lex)?;
            lex.expect(')')?;
            Ok(VarietyExpr::product(l, r))
        }
        got => Err(err(
            lex.line,
            lex.col(),
            format!(
                "found {:?}",
                got.map(String::from).unwrap_or_else(|| "end of input".into())
            ),
            &["P(", "hyp(", "curve(", "prod("],
        )),
    }
}

fn variety_err(e: VarietyError, line: usize, col: usize) -> ParseError {
    err(line, col, format!("{}", e), &[])
}

/// poly := term (('+'|'-') term)*
fn poly(lex: &mut Lexer, nvars_hint: usize) -> Result<(MultiPoly, usize), ParseError> {
    let start_col = lex.col();
    let mut terms: Vec<(BigInt, Vec<u32>)> = Vec::new();
    let (c, e) = term(lex)?;
    terms.push((c, e));
    loop {
        match lex.peek() {
            Some('+') => {
                lex.bump();
                let (c, e) = term(lex)?;
                terms.push((c, e));
            }
            Some('-') => {
                lex.bump();
                let (c, e) = term(lex)?;
                terms.push((-c, e));
            }
            _ => break,
        }
    }
    let nvars = terms
        .iter()
        .map(|(_, e)| e.len())
        .max()
        .unwrap_or(0)
        .max(nvars_hint);
    Ok((MultiPoly::new(terms, nvars), start_col))
}

/// term := [nat '*'?]? monom | nat
fn term(lex: &mut Lexer) -> Result<(BigInt, Vec<u32>), ParseError> {
    let mut coeff = BigInt::from(1);
    let mut have_coeff = false;
    if matches!(lex.peek(), Some(c) if c.is_ascii_digit()) {
        coeff = BigInt::from(lex.nat()?);
        have_coeff = true;
        if lex.peek() == Some('*') {
            lex.bump();
        }
    }
    if lex.peek() == Some('x') {
        let exps = monom(lex)?;
        Ok((coeff, exps))
    } else if have_coeff {
        // Bare number: the constant monomial.
        Ok((coeff, vec![]))
    } else {
        Err(err(
            lex.line,
            lex.col(),
            "expected a term",
            &["number", "x<i>"],
        ))
    }
}

/// monom := var('^'nat)? ('*'? var('^'nat)?)*
fn monom(lex: &mut Lexer) -> Result<Vec<u32>, ParseError> {
    let mut exps: Vec<u32> = Vec::new();
    loop {
        lex.expect('x')?;
        let idx_col = lex.col();
        let idx = lex.nat_u32("variable index")? as usize;
        if idx > 64 {
            return Err(err(lex.line, idx_col, "variable index out of range", &[]));
        }
        let mut exp = 1u32;
        if lex.peek() == Some('^') {
            lex.bump();
            exp = lex.nat_u32("exponent")?;
        }
        if exps.len() <= idx {
            exps.resize(idx + 1, 0);
        }
        exps[idx] += exp;
        // Continue on juxtaposed variables or an explicit '*'.
        match lex.peek() {
            Some('x') => continue,
            Some('*') => {
                lex.bump();
                continue;
            }
            _ => break,
        }
    }
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fermat_hypersurface() {
        let v = parse_expr("hyp(2; x0^3+x1^3+x2^3)", 1, 1).unwrap();
        match v {
            VarietyExpr::Hypersurface { ambient, f } => {
                assert_eq!(ambient, 2);
                assert_eq!(f.total_degree(), 3);
                assert_eq!(f.terms().len(), 3);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn parses_product_of_lines() {
        let v = parse_expr("prod(P(1),P(1))", 1, 1).unwrap();
        assert_eq!(v.dimension(), 2);
        assert_eq!(format!("{}", v), "prod(P(1), P(1))");
    }

    #[test]
    fn parses_elliptic_curve_with_spaces_and_stars() {
        let a = parse_expr("curve(x1^2*x2 - x0^3 - x0*x2^2)", 1, 1).unwrap();
        let b = parse_expr("curve( x1 ^ 2 x2 - x0^3 - x0 x2 ^2 )", 1, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coefficients_with_and_without_star() {
        let a = parse_expr("curve(2x0^3 + 3*x1^3 - 5x2^3)", 1, 1).unwrap();
        let b = parse_expr("curve(2*x0^3 + 3x1^3 - 5*x2^3)", 1, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inhomogeneous_is_a_validation_error() {
        let e = parse_expr("hyp(2; x0^2+x1)", 1, 1).unwrap_err();
        assert!(e.message.contains("homogeneous"), "{}", e);
    }

    #[test]
    fn leading_minus_is_rejected() {
        let e = parse_expr("curve(-x0^3 + x1^3)", 1, 1).unwrap_err();
        assert!(e.expected.iter().any(|t| t.contains('x')), "{:?}", e);
    }

    #[test]
    fn error_carries_position() {
        let e = parse_expr("hyp(2: x0^2)", 1, 1).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.col >= 5, "{:?}", e);
        assert_eq!(e.expected, vec![";".to_string()]);
    }

    #[test]
    fn document_round_trip() {
        let text = "\
# comment
[field]
p = 5
k = 1

[variety]
expr = curve(x1^2*x2 - x0^3 - x0*x2^2)

[run]
r = 1
terms = 4
bounds = 1000000

[claims]
cycle_rank = 1
";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.p, Some(5));
        assert_eq!(doc.k, Some(1));
        assert_eq!(doc.r, Some(1));
        assert_eq!(doc.terms, Some(4));
        assert_eq!(doc.bounds, Some(1_000_000));
        assert_eq!(doc.cycle_rank, Some(1));
        assert!(doc.expr.is_some());
    }

    #[test]
    fn frobenius_section() {
        let text = "\
[field]
p = 5
k = 1

[frobenius]
p0 = 1,-1
p1 = 1,-2,5
p2 = 1,-5
";
        let doc = parse_document(text).unwrap();
        let polys = doc.frobenius.unwrap();
        assert_eq!(polys.len(), 3);
        assert_eq!(polys[1], vec![BigInt::from(1), BigInt::from(-2), BigInt::from(5)]);
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = parse_document("[field]\np = 5\nbogus = 1\n").unwrap_err();
        assert!(e.message.contains("bogus"));
        assert_eq!(e.line, 3);

        let e = parse_document("[nope]\n").unwrap_err();
        assert!(e.message.contains("nope"));
    }

    #[test]
    fn missing_frobenius_degree_rejected() {
        let e = parse_document("[frobenius]\np0 = 1,-1\np2 = 1,-5\n").unwrap_err();
        assert!(e.message.contains("p1"));
    }
}
