//! Tokenizer shared by the expression parser and bracketed formula blocks.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub pos: usize,
    pub found: String,
}

pub const OPERATORS: &[char] = &['+', '-', '*', '/', '^', '(', ')'];

/// Splits into identifiers, unsigned integers and single-character operators.
pub fn tokenize(text: &str) -> Result<Vec<Token>, LexError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
        } else if b.is_ascii_alphabetic() || b == b'_' {
            let len = bytes[pos..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == b'_')
                .count();
            out.push(Token { text: text[pos..pos + len].to_owned(), pos });
            pos += len;
        } else if b.is_ascii_digit() {
            let len = bytes[pos..].iter().take_while(|c| c.is_ascii_digit()).count();
            out.push(Token { text: text[pos..pos + len].to_owned(), pos });
            pos += len;
        } else if OPERATORS.contains(&(b as char)) {
            out.push(Token { text: (b as char).to_string(), pos });
            pos += 1;
        } else {
            let found = text[pos..].chars().next().map(String::from).unwrap_or_default();
            return Err(LexError { pos, found });
        }
    }
    Ok(out)
}
