//! Polynomial files: one polynomial per file, `#` comments, and an optional
//! `nvars: <k>` header before the polynomial.

use vhess_core::parse::{parse_poly, Parsed};
use vhess_core::{print_poly, Error, MultiPoly, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyFile {
    pub parsed: Parsed,
    pub declared_nvars: Option<usize>,
}

impl PolyFile {
    pub fn poly(&self) -> &MultiPoly {
        &self.parsed.poly
    }
}

/// Comments and the header are blanked rather than removed so that syntax
/// errors keep the line and column of the original text.
pub fn parse_file(text: &str) -> Result<PolyFile> {
    let mut declared = None;
    let mut seen_body = false;
    let mut body = String::with_capacity(text.len());
    for (lineno, line) in text.split('\n').enumerate() {
        let code = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let trimmed = code.trim();
        if !seen_body && declared.is_none() {
            if let Some(rest) = trimmed.strip_prefix("nvars:") {
                let k = rest.trim().parse::<usize>().map_err(|_| Error::Syntax {
                    line: lineno + 1,
                    column: line.find("nvars:").unwrap_or(0) + 7,
                    message: format!("bad variable count '{}'", rest.trim()),
                })?;
                declared = Some(k);
                body.push_str(&" ".repeat(line.len()));
                body.push('\n');
                continue;
            }
        }
        if !trimmed.is_empty() {
            seen_body = true;
        }
        body.push_str(code);
        body.push_str(&" ".repeat(line.len() - code.len()));
        body.push('\n');
    }
    body.pop();
    if !seen_body {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "no polynomial in file".into(),
        });
    }
    let parsed = parse_poly(&body, declared)?;
    Ok(PolyFile {
        parsed,
        declared_nvars: declared,
    })
}

/// File text for `f`, with optional leading comment lines.
pub fn write_file(f: &MultiPoly, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("nvars: {}\n", f.nvars()));
    out.push_str(&print_poly(f));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_header() {
        let text = "# a cubic\nnvars: 6\n x0*x3^2 # first block\n + x1*x3*x4 + x2*x4^2\n";
        let f = parse_file(text).unwrap();
        assert_eq!(f.declared_nvars, Some(6));
        assert_eq!(f.poly().nvars(), 6);
        assert_eq!(f.parsed.degree, Some(3));
        let back = parse_file(&write_file(f.poly(), &["again".into()])).unwrap();
        assert_eq!(back.poly(), f.poly());
    }

    #[test]
    fn errors_keep_positions() {
        match parse_file("# header\nnvars: 3\nx0 + x1x2\n") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_file("# only a comment\n").is_err());
        assert!(matches!(parse_file("nvars: 2\nx5^2"), Err(Error::Usage(_))));
    }
}
