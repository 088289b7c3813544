//! Line-oriented text form:
//!
//! ```text
//! degree: 4
//! root_image: ""
//! internal "": (1 2 3)
//! tail "1": id
//! ```
//!
//! `#` starts a comment outside quotes. Output lists internal vertices, then
//! tails, each in vertex order, so equal portraits print identically.

use std::collections::BTreeMap;
use std::fmt;

use super::{Portrait, PortraitError};
use crate::perm::Perm;
use crate::tree::Vertex;

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree: {}", self.degree)?;
        writeln!(f, "root_image: {}", self.root_image.literal())?;
        for (v, p) in &self.internal {
            writeln!(f, "internal {}: {}", v.literal(), p)?;
        }
        for (v, p) in &self.tails {
            writeln!(f, "tail {}: {}", v.literal(), p)?;
        }
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Splits `"w": rest` into the vertex literal and `rest`.
fn quoted_key(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start().strip_prefix('"')?;
    let end = s.find('"')?;
    let rest = s[end + 1..].trim_start().strip_prefix(':')?;
    Some((&s[..end], rest.trim()))
}

fn unquote(s: &str) -> Option<&str> {
    s.trim().strip_prefix('"')?.strip_suffix('"')
}

impl Portrait {
    pub fn parse(text: &str) -> Result<Portrait, PortraitError> {
        let mut degree: Option<usize> = None;
        let mut root: Option<Vertex> = None;
        let mut internal = BTreeMap::new();
        let mut tails = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| PortraitError::Parse { line: i + 1, msg };
            if let Some(rest) = line.strip_prefix("degree:") {
                let d = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree {rest:?}")))?;
                degree = Some(d);
                continue;
            }
            let d = degree.ok_or_else(|| err("degree must come first".into()))?;
            if let Some(rest) = line.strip_prefix("root_image:") {
                let lit =
                    unquote(rest).ok_or_else(|| err("root_image needs a quoted vertex".into()))?;
                root = Some(Vertex::parse(lit, d).map_err(|e| err(e.to_string()))?);
                continue;
            }
            let (map, rest) = if let Some(rest) = line.strip_prefix("internal") {
                (&mut internal, rest)
            } else if let Some(rest) = line.strip_prefix("tail") {
                (&mut tails, rest)
            } else {
                return Err(err(format!("unrecognised line {line:?}")));
            };
            let (lit, perm) =
                quoted_key(rest).ok_or_else(|| err("expected \"vertex\": permutation".into()))?;
            let v = Vertex::parse(lit, d).map_err(|e| err(e.to_string()))?;
            let p = Perm::parse(perm, d).map_err(|e| err(e.to_string()))?;
            if map.insert(v, p).is_some() {
                return Err(err(format!("duplicate vertex \"{lit}\"")));
            }
        }
        let degree = degree.ok_or(PortraitError::Parse {
            line: 0,
            msg: "missing degree".into(),
        })?;
        let root = root.ok_or(PortraitError::Parse {
            line: 0,
            msg: "missing root_image".into(),
        })?;
        Portrait::from_parts(degree, root, internal, tails)
    }
}

impl std::str::FromStr for Portrait {
    type Err = PortraitError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Portrait::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "degree: 4\n# a comment\nroot_image: \"2 3\"\ninternal \"\": (1 2 3)\n\
                    tail \"1\": (1 2 3 4)\ntail \"2\": (2 3) # trailing\n\
                    tail \"3\": (1 3)(2 4)\ntail \"4\": id\n";
        let g = Portrait::parse(text).unwrap();
        assert_eq!(g.internal_count(), 1);
        let printed = g.to_string();
        assert_eq!(Portrait::parse(&printed).unwrap(), g);
        assert_eq!(Portrait::parse(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "degree: 3\nroot_image: \"\"\ntail \"\": (1 4)\n";
        assert!(matches!(
            Portrait::parse(text),
            Err(PortraitError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            Portrait::parse("root_image: \"\""),
            Err(PortraitError::Parse { line: 1, .. })
        ));
        let dup = "degree: 3\nroot_image: \"\"\ntail \"\": id\ntail \"\": id\n";
        assert!(matches!(
            Portrait::parse(dup),
            Err(PortraitError::Parse { line: 4, .. })
        ));
    }
}
