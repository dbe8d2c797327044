use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Name(String),
    Punct(char),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Name(n) => n.clone(),
            Tok::Punct(c) => format!("'{c}'"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const PUNCT: &[char] = &['{', '}', '(', ')', ',', ':', '=', '<', '.', '@'];

fn name_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn name_char(c: char) -> bool {
    name_start(c) || c == '\''
}

/// Splits the source into tokens. The trailing `Eof` token sits on the
/// last real token, or at 1:1 for an empty file, so every position points
/// into the text.
pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
                column += 1;
            }
        } else if name_start(c) {
            let mut name = String::new();
            while let Some(&c) = chars.peek().filter(|&&c| name_char(c)) {
                name.push(c);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Name(name), line: tl, column: tc });
        } else if PUNCT.contains(&c) {
            chars.next();
            column += 1;
            out.push(Token { tok: Tok::Punct(c), line: tl, column: tc });
        } else {
            return Err(ParseError { line, column, expected: "a name or punctuation".into(), found: format!("'{c}'") });
        }
    }
    let (line, column) = out.last().map_or((1, 1), |t| (t.line, t.column));
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}
