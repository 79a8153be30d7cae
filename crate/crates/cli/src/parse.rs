use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use higherar::exactla::Field;
use higherar::quivalg::named::from_names;
use higherar::quivalg::{tensor_algebra, Alg};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A signed path word: `+1` or `-1` times the arrows read left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i64,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Explicit { vertices: Vec<String>, arrows: Vec<ArrowDecl>, relations: Vec<Vec<Term>> },
    Tensor(PathBuf, PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: Option<FieldSpec>,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Tokens of a line with their 1-based columns. `#` starts a comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

pub fn parse_algebra_text(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut field = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<ArrowDecl> = Vec::new();
    let mut relations = Vec::new();
    let mut tensor: Option<(usize, PathBuf, PathBuf)> = None;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(raw);
        let Some(&(col, kw)) = toks.first() else { continue };
        let args = &toks[1..];
        let end_col = raw.chars().count() + 1;
        match kw {
            "field" => {
                if field.is_some() {
                    return err(ln, col, "duplicate field line");
                }
                let [(c, spec)] = args else { return err(ln, col, "expected `field q` or `field p=<prime>`") };
                field = Some(match *spec {
                    "q" | "Q" => FieldSpec::Rationals,
                    s => match s.strip_prefix("p=").map(str::parse::<u32>) {
                        Some(Ok(p)) if is_prime(p) => FieldSpec::Prime(p),
                        Some(Ok(p)) => return err(ln, *c + 2, format!("{p} is not a prime below 2^31")),
                        _ => return err(ln, *c, format!("bad field `{s}`")),
                    },
                });
            }
            "vertex" => {
                let [(c, name)] = args else { return err(ln, end_col, "expected one vertex name") };
                if !is_name(name) {
                    return err(ln, *c, format!("bad vertex name `{name}`"));
                }
                if vertices.iter().any(|v| v == name) {
                    return err(ln, *c, format!("duplicate vertex `{name}`"));
                }
                vertices.push(name.to_string());
            }
            "arrow" => {
                let [(c, name), (sc, s), (_, "->"), (tc, t)] = args else {
                    return err(ln, end_col, "expected `arrow <name>: <v> -> <w>`");
                };
                let Some(name) = name.strip_suffix(':').filter(|n| is_name(n)) else {
                    return err(ln, *c, format!("bad arrow name `{name}`"));
                };
                if arrows.iter().any(|a| a.name == name) {
                    return err(ln, *c, format!("duplicate arrow `{name}`"));
                }
                for (vc, v) in [(*sc, s), (*tc, t)] {
                    if !vertices.iter().any(|x| x == v) {
                        return err(ln, vc, format!("unknown vertex `{v}`"));
                    }
                }
                arrows.push(ArrowDecl { name: name.into(), source: s.to_string(), target: t.to_string() });
            }
            "relation" => {
                if args.is_empty() {
                    return err(ln, end_col, "empty relation");
                }
                let mut terms = Vec::new();
                for &(c, tok) in args {
                    let (sign, rest) = match tok.split_at(tok.char_indices().nth(1).map_or(tok.len(), |(i, _)| i)) {
                        ("+", r) => (1, r),
                        ("-", r) => (-1, r),
                        _ => return err(ln, c, format!("term `{tok}` must start with + or -")),
                    };
                    let word: Vec<String> = rest.split('.').map(String::from).collect();
                    let mut wc = c + 1;
                    for a in &word {
                        if !arrows.iter().any(|x| &x.name == a) {
                            return err(ln, wc, format!("unknown arrow `{a}`"));
                        }
                        wc += a.chars().count() + 1;
                    }
                    terms.push(Term { sign, word });
                }
                relations.push(terms);
            }
            "tensor" => {
                let [(_, a), (_, b)] = args else { return err(ln, end_col, "expected `tensor <fileA> <fileB>`") };
                if tensor.is_some() {
                    return err(ln, col, "duplicate tensor line");
                }
                tensor = Some((ln, PathBuf::from(a), PathBuf::from(b)));
            }
            other => return err(ln, col, format!("unknown keyword `{other}`")),
        }
    }
    let body = match tensor {
        Some((ln, a, b)) => {
            if !vertices.is_empty() {
                return err(ln, 1, "a tensor file cannot also declare vertices");
            }
            Body::Tensor(a, b)
        }
        None => Body::Explicit { vertices, arrows, relations },
    };
    Ok(AlgebraFile { field, body })
}

pub fn print_algebra_file(f: &AlgebraFile) -> String {
    let mut s = String::new();
    match f.field {
        Some(FieldSpec::Rationals) => s.push_str("field q\n"),
        Some(FieldSpec::Prime(p)) => writeln!(s, "field p={p}").unwrap(),
        None => {}
    }
    match &f.body {
        Body::Tensor(a, b) => writeln!(s, "tensor {} {}", a.display(), b.display()).unwrap(),
        Body::Explicit { vertices, arrows, relations } => {
            for v in vertices {
                writeln!(s, "vertex {v}").unwrap();
            }
            for a in arrows {
                writeln!(s, "arrow {}: {} -> {}", a.name, a.source, a.target).unwrap();
            }
            for r in relations {
                let terms: Vec<String> =
                    r.iter().map(|t| format!("{}{}", if t.sign < 0 { '-' } else { '+' }, t.word.join("."))).collect();
                writeln!(s, "relation {}", terms.join(" ")).unwrap();
            }
        }
    }
    s
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && p < (1 << 31) && (2..).take_while(|d: &u64| d * d <= p as u64).all(|d| p as u64 % d != 0)
}

/// Reads a file, and the files of its `tensor` clause relative to it.
#[derive(Clone, Debug)]
pub struct LoadedFile {
    pub name: String,
    pub file: AlgebraFile,
    pub factors: Option<Box<(LoadedFile, LoadedFile)>>,
}

pub fn load(path: &Path) -> Result<LoadedFile, CliError> {
    load_depth(path, 0)
}

fn load_depth(path: &Path, depth: usize) -> Result<LoadedFile, CliError> {
    if depth > 16 {
        return Err(CliError::Input(format!("{}: tensor clauses nest too deeply", path.display())));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file = parse_algebra_text(&text).map_err(|e| CliError::Parse(path.display().to_string(), e))?;
    let name = path.file_stem().map_or_else(|| "algebra".to_string(), |s| s.to_string_lossy().into_owned());
    let factors = match &file.body {
        Body::Tensor(a, b) => {
            let dir = path.parent().unwrap_or(Path::new("."));
            Some(Box::new((load_depth(&dir.join(a), depth + 1)?, load_depth(&dir.join(b), depth + 1)?)))
        }
        Body::Explicit { .. } => None,
    };
    Ok(LoadedFile { name, file, factors })
}

impl LoadedFile {
    /// The field stated by the file, or by its factors when they agree.
    pub fn field(&self) -> Result<Option<FieldSpec>, CliError> {
        if self.file.field.is_some() {
            return Ok(self.file.field);
        }
        match &self.factors {
            None => Ok(None),
            Some(fs) => match (fs.0.field()?, fs.1.field()?) {
                (Some(a), Some(b)) if a != b => Err(CliError::Input(format!("{}: factors over different fields", self.name))),
                (a, b) => Ok(a.or(b)),
            },
        }
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<Alg<F>, CliError> {
        match (&self.file.body, &self.factors) {
            (Body::Tensor(..), Some(fs)) => Ok(tensor_algebra(&fs.0.build(field)?, &fs.1.build(field)?)?),
            (Body::Explicit { vertices, arrows, relations }, _) => {
                let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
                let ars: Vec<(&str, &str, &str)> =
                    arrows.iter().map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str())).collect();
                let words: Vec<Vec<(i64, String)>> =
                    relations.iter().map(|r| r.iter().map(|t| (t.sign, t.word.join("."))).collect()).collect();
                let refs: Vec<Vec<(i64, &str)>> =
                    words.iter().map(|r| r.iter().map(|(c, w)| (*c, w.as_str())).collect()).collect();
                let rels: Vec<&[(i64, &str)]> = refs.iter().map(Vec::as_slice).collect();
                Ok(from_names(field, &self.name, &vs, &ars, &rels)?)
            }
            (Body::Tensor(..), None) => unreachable!("tensor factors are loaded with the file"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "field p=101\nvertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation +a.b\n";
        let f = parse_algebra_text(text).unwrap();
        assert_eq!(print_algebra_file(&f), text);
        let t = parse_algebra_text("# two copies\ntensor x.alg  y.alg\n").unwrap();
        assert_eq!(parse_algebra_text(&print_algebra_file(&t)).unwrap(), t);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_algebra_text("vertex 1\nvertex 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        let e = parse_algebra_text("vertex 1\narrow a: 1 -> 7\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        let e = parse_algebra_text("vertex 1\nvertex 2\narrow a: 1 -> 2\nrelation +a.c\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 13));
        let e = parse_algebra_text("field p=12\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_algebra_text("vertex 1\n  frobnicate\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_algebra_text("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n").is_err());
    }
}
