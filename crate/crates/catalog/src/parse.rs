use serde::Serialize;

/// One parsed catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CatalogTuple {
    pub n: i64,
    pub x: i64,
    pub y: i64,
    pub a1: i64,
    pub a2: i64,
    /// `line:entry`, both 1-based.
    pub source_line: String,
}

impl CatalogTuple {
    pub fn new(n: i64, x: i64, y: i64, a1: i64, a2: i64) -> Self {
        Self {
            n,
            x,
            y,
            a1,
            a2,
            source_line: String::new(),
        }
    }

    pub fn fields(&self) -> [i64; 5] {
        [self.n, self.x, self.y, self.a1, self.a2]
    }
}

/// A catalog entry that could not be read as a tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogDiagnostic {
    pub source_line: String,
    pub text: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParsedCatalog {
    pub tuples: Vec<CatalogTuple>,
    pub diagnostics: Vec<CatalogDiagnostic>,
}

/// Reads every parenthesized group of a text as a tuple. Lines without
/// parentheses are read as comma-separated rows, so CSV input works too;
/// blank lines, `#` comments and a CSV header starting with `n` are skipped.
///
/// Groups that are not five integers with `n > 0`, or that are not closed on
/// their line, become diagnostics.
pub fn parse_catalog(text: &str) -> ParsedCatalog {
    let mut out = ParsedCatalog::default();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut entry = 0;
        let mut emit = |body: &str, closed: bool, out: &mut ParsedCatalog| {
            entry += 1;
            let source_line = format!("{}:{}", ln + 1, entry);
            match read_fields(body, closed) {
                Ok([n, x, y, a1, a2]) => out.tuples.push(CatalogTuple {
                    n,
                    x,
                    y,
                    a1,
                    a2,
                    source_line,
                }),
                Err(reason) => out.diagnostics.push(CatalogDiagnostic {
                    source_line,
                    text: body.trim().to_string(),
                    reason,
                }),
            }
        };
        if !line.contains('(') {
            let first = line.split(',').next().unwrap_or("").trim();
            if first.eq_ignore_ascii_case("n") {
                continue;
            }
            emit(line, true, &mut out);
            continue;
        }
        let mut rest = line;
        while let Some(start) = rest.find('(') {
            let after = &rest[start + 1..];
            let end = match (after.find(')'), after.find('(')) {
                (Some(c), Some(o)) if o < c => None,
                (c, _) => c,
            };
            match end {
                Some(c) => {
                    emit(&after[..c], true, &mut out);
                    rest = &after[c + 1..];
                }
                None => {
                    let cut = after.find('(').unwrap_or(after.len());
                    emit(&after[..cut], false, &mut out);
                    rest = &after[cut..];
                }
            }
        }
    }
    out
}

fn read_fields(body: &str, closed: bool) -> Result<[i64; 5], String> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if !closed {
        return Err(format!("unterminated tuple with {} fields", parts.len()));
    }
    if parts.len() != 5 {
        return Err(format!("{} fields instead of 5", parts.len()));
    }
    let mut v = [0i64; 5];
    for (slot, p) in v.iter_mut().zip(&parts) {
        let norm = p.replace(['−', '–'], "-");
        *slot = norm.parse().map_err(|_| format!("field {p:?} is not an integer"))?;
    }
    if v[0] <= 0 {
        return Err(format!("denominator {} is not positive", v[0]));
    }
    Ok(v)
}
