//! Ordered key/value trees rendered as indented text or JSON.
//!
//! Scalars are kept as strings so exact rationals survive the round trip.

use std::fmt::{self, Write};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(String),
    Map(Vec<Node>),
    List(Vec<Node>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub key: String,
    pub value: Value,
}

impl Node {
    pub fn scalar(key: impl Into<String>, value: impl fmt::Display) -> Self {
        Node {
            key: key.into(),
            value: Value::Scalar(value.to_string()),
        }
    }

    pub fn map(key: impl Into<String>, children: Vec<Node>) -> Self {
        Node {
            key: key.into(),
            value: Value::Map(children),
        }
    }

    pub fn list(key: impl Into<String>, items: Vec<Node>) -> Self {
        Node {
            key: key.into(),
            value: Value::List(items),
        }
    }

    /// A list entry with no key of its own.
    pub fn item(value: impl fmt::Display) -> Self {
        Node::scalar("", value)
    }

    pub fn get(&self, key: &str) -> Option<&Node> {
        match &self.value {
            Value::Map(c) => c.iter().find(|n| n.key == key),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&str> {
        match &self.value {
            Value::Scalar(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn render(node: &Node, format: Format) -> String {
    match format {
        Format::Text => render_text(node),
        Format::Json => render_json(node),
    }
}

pub fn render_text(node: &Node) -> String {
    let mut out = String::new();
    text(node, 0, false, &mut out);
    out
}

fn text(node: &Node, depth: usize, in_list: bool, out: &mut String) {
    let pad = "  ".repeat(depth);
    let lead = if in_list { "- " } else { "" };
    let head = if node.key.is_empty() {
        format!("{pad}{lead}")
    } else {
        format!("{pad}{lead}{}:", node.key)
    };
    match &node.value {
        Value::Scalar(s) if node.key.is_empty() => {
            let _ = writeln!(out, "{head}{s}");
        }
        Value::Scalar(s) => {
            let _ = writeln!(out, "{head} {s}");
        }
        Value::Map(children) => {
            let _ = writeln!(out, "{}", head.trim_end());
            for c in children {
                text(c, depth + 1, false, out);
            }
        }
        Value::List(items) if items.is_empty() => {
            let _ = writeln!(out, "{head} []");
        }
        Value::List(items) => {
            let _ = writeln!(out, "{}", head.trim_end());
            for c in items {
                text(c, depth + 1, true, out);
            }
        }
    }
}

pub fn render_json(node: &Node) -> String {
    let mut out = String::from("{");
    json_entry(node, 1, &mut out);
    out.push_str("\n}\n");
    out
}

fn json_entry(node: &Node, depth: usize, out: &mut String) {
    let _ = write!(out, "\n{}{}: ", "  ".repeat(depth), quote(&node.key));
    json_value(&node.value, depth, out);
}

fn json_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Scalar(s) => out.push_str(&quote(s)),
        Value::Map(children) if children.is_empty() => out.push_str("{}"),
        Value::Map(children) => {
            out.push('{');
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                json_entry(c, depth + 1, out);
            }
            let _ = write!(out, "\n{pad}}}");
        }
        Value::List(items) if items.is_empty() => out.push_str("[]"),
        Value::List(items) => {
            out.push('[');
            for (i, c) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "\n{}  ", pad);
                if c.key.is_empty() {
                    json_value(&c.value, depth + 1, out);
                } else {
                    out.push('{');
                    json_entry(c, depth + 2, out);
                    let _ = write!(out, "\n{pad}  }}");
                }
            }
            let _ = write!(out, "\n{pad}]");
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Node {
        Node::map(
            "root",
            vec![
                Node::scalar("x", "1/3"),
                Node::list("xs", vec![Node::item("a"), Node::item("b\"c")]),
                Node::list("none", vec![]),
                Node::map("m", vec![Node::scalar("k", 2)]),
            ],
        )
    }

    #[test]
    fn text_layout() {
        assert_eq!(
            render_text(&sample()),
            "root:\n  x: 1/3\n  xs:\n    - a\n    - b\"c\n  none: []\n  m:\n    k: 2\n"
        );
    }

    #[test]
    fn json_layout() {
        let j = render_json(&sample());
        assert!(j.starts_with("{\n  \"root\": {"));
        assert!(j.contains("\"x\": \"1/3\""));
        assert!(j.contains("\"b\\\"c\""));
        assert!(j.contains("\"none\": []"));
        let opens = j.matches(['{', '[']).count();
        let closes = j.matches(['}', ']']).count();
        assert_eq!(opens, closes);
    }

    #[test]
    fn lookup() {
        let s = sample();
        assert_eq!(s.get("x").and_then(Node::as_scalar), Some("1/3"));
        assert!(s.get("y").is_none());
    }
}
