use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::reductions::{BipartiteGraph, GADGET_INFIX};
use crate::relation::{is_valid_name, ConstraintLanguage, Relation, MAX_ARITY};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject variable names containing the `__g` infix used by gadget
    /// attachment.
    pub reserve_gadget_infix: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclarationKind {
    Relation,
    Variable,
    Constraint,
    Left,
    Right,
    Edge,
}

/// Where something was declared, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub kind: DeclarationKind,
    pub name: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct ParsedDocument {
    pub language: ConstraintLanguage,
    /// Present when the document has `var` or `constraint` lines.
    pub instance: Option<Instance>,
    /// Present when the document has `left`, `right` or `edge` lines.
    pub graph: Option<BipartiteGraph>,
    pub declarations: Vec<Declaration>,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }
}

struct Statement<'a> {
    keyword: Token<'a>,
    args: Vec<Token<'a>>,
}

fn tokenize(text: &str) -> Vec<Statement<'_>> {
    let mut statements = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain([(content.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        line: index + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((&keyword, args)) = tokens.split_first() {
            statements.push(Statement {
                keyword,
                args: args.to_vec(),
            });
        }
    }
    statements
}

fn name<'a>(token: &Token<'a>) -> Result<&'a str> {
    if is_valid_name(token.text) {
        Ok(token.text)
    } else {
        Err(token.error(format!("invalid name `{}`", token.text)))
    }
}

fn end_of(statement: &Statement) -> (usize, usize) {
    let last = statement.args.last().unwrap_or(&statement.keyword);
    (last.line, last.column + last.text.chars().count())
}

fn parse_relation(statement: &Statement) -> Result<(String, Relation)> {
    let mut args = statement.args.iter();
    let (line, column) = end_of(statement);
    let name_token = args
        .next()
        .ok_or_else(|| Error::parse(line, column, "expected relation name"))?;
    let rel_name = name(name_token)?;
    let arity_token = args
        .next()
        .ok_or_else(|| Error::parse(line, column, "expected relation arity"))?;
    let arity: usize = arity_token
        .text
        .parse()
        .map_err(|_| arity_token.error(format!("invalid arity `{}`", arity_token.text)))?;
    if arity == 0 || arity > MAX_ARITY {
        return Err(arity_token.error(format!("arity must be between 1 and {MAX_ARITY}")));
    }
    let mut codes: Vec<u64> = Vec::new();
    for t in args {
        if t.text.len() != arity || !t.text.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(t.error(format!(
                "tuple `{}` is not a 0/1 string of length {arity}",
                t.text
            )));
        }
        let code = u64::from_str_radix(t.text, 2).expect("binary digits");
        if codes.contains(&code) {
            return Err(t.error(format!("duplicate tuple `{}`", t.text)));
        }
        codes.push(code);
    }
    if codes.is_empty() {
        return Err(Error::parse(
            line,
            column,
            format!("relation `{rel_name}` has no tuples"),
        ));
    }
    let relation = Relation::new(arity, codes).map_err(|e| name_token.error(e.to_string()))?;
    Ok((rel_name.to_string(), relation))
}

/// Parses a document with default options.
pub fn parse(text: &str) -> Result<ParsedDocument> {
    parse_with(text, ParseOptions::default())
}

pub fn parse_with(text: &str, options: ParseOptions) -> Result<ParsedDocument> {
    let statements = tokenize(text);
    let mut declarations = Vec::new();
    let mut language = ConstraintLanguage::new();

    for st in &statements {
        match st.keyword.text {
            "relation" | "var" | "constraint" | "left" | "right" | "edge" => {}
            other => return Err(st.keyword.error(format!("unknown directive `{other}`"))),
        }
    }

    for st in statements.iter().filter(|s| s.keyword.text == "relation") {
        let (rel_name, relation) = parse_relation(st)?;
        let at = st.args[0];
        if language.get(&rel_name).is_some() {
            return Err(at.error(format!("duplicate relation `{rel_name}`")));
        }
        language
            .insert(rel_name.clone(), relation)
            .map_err(|e| at.error(e.to_string()))?;
        declarations.push(Declaration {
            kind: DeclarationKind::Relation,
            name: rel_name,
            line: at.line,
            column: at.column,
        });
    }

    let has_instance = statements
        .iter()
        .any(|s| matches!(s.keyword.text, "var" | "constraint"));
    let instance = if has_instance {
        let mut instance = Instance::new(language.clone());
        for st in statements.iter().filter(|s| s.keyword.text == "var") {
            if st.args.is_empty() {
                return Err(st.keyword.error("expected at least one variable name"));
            }
            for t in &st.args {
                let var = name(t)?;
                if options.reserve_gadget_infix && var.contains(GADGET_INFIX) {
                    return Err(t.error(format!(
                        "variable `{var}` uses the reserved `{GADGET_INFIX}` infix"
                    )));
                }
                if instance.variable_id(var).is_some() {
                    return Err(t.error(format!("duplicate variable `{var}`")));
                }
                instance
                    .add_variable(var)
                    .map_err(|e| t.error(e.to_string()))?;
                declarations.push(Declaration {
                    kind: DeclarationKind::Variable,
                    name: var.to_string(),
                    line: t.line,
                    column: t.column,
                });
            }
        }
        for st in statements.iter().filter(|s| s.keyword.text == "constraint") {
            let Some((rel_token, scope_tokens)) = st.args.split_first() else {
                return Err(st.keyword.error("expected relation name"));
            };
            let relation = language
                .get(rel_token.text)
                .ok_or_else(|| rel_token.error(format!("unknown relation `{}`", rel_token.text)))?;
            if scope_tokens.len() != relation.arity() {
                return Err(rel_token.error(format!(
                    "relation `{}` has arity {} but {} variables are given",
                    rel_token.text,
                    relation.arity(),
                    scope_tokens.len()
                )));
            }
            let scope = scope_tokens
                .iter()
                .map(|t| {
                    instance
                        .variable_id(t.text)
                        .ok_or_else(|| t.error(format!("unknown variable `{}`", t.text)))
                })
                .collect::<Result<Vec<_>>>()?;
            instance
                .add_constraint(rel_token.text, &scope)
                .map_err(|e| rel_token.error(e.to_string()))?;
            declarations.push(Declaration {
                kind: DeclarationKind::Constraint,
                name: rel_token.text.to_string(),
                line: st.keyword.line,
                column: st.keyword.column,
            });
        }
        Some(instance)
    } else {
        None
    };

    let has_graph = statements
        .iter()
        .any(|s| matches!(s.keyword.text, "left" | "right" | "edge"));
    let graph = if has_graph {
        Some(parse_graph(&statements, &mut declarations)?)
    } else {
        None
    };

    Ok(ParsedDocument {
        language,
        instance,
        graph,
        declarations,
    })
}

fn parse_graph(
    statements: &[Statement],
    declarations: &mut Vec<Declaration>,
) -> Result<BipartiteGraph> {
    let mut side: HashMap<&str, (bool, usize)> = HashMap::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for st in statements {
        let is_left = match st.keyword.text {
            "left" => true,
            "right" => false,
            _ => continue,
        };
        if st.args.is_empty() {
            return Err(st.keyword.error("expected at least one vertex name"));
        }
        for t in &st.args {
            let vertex = name(t)?;
            let list = if is_left { &mut left } else { &mut right };
            if side.insert(vertex, (is_left, list.len())).is_some() {
                return Err(t.error(format!("duplicate vertex `{vertex}`")));
            }
            list.push(vertex.to_string());
            declarations.push(Declaration {
                kind: if is_left {
                    DeclarationKind::Left
                } else {
                    DeclarationKind::Right
                },
                name: vertex.to_string(),
                line: t.line,
                column: t.column,
            });
        }
    }
    let mut graph = BipartiteGraph::new(left, right).expect("names validated");
    for st in statements.iter().filter(|s| s.keyword.text == "edge") {
        if st.args.len() != 2 {
            return Err(st.keyword.error("`edge` takes a left and a right vertex"));
        }
        let (u, v) = (&st.args[0], &st.args[1]);
        let ui = match side.get(u.text) {
            Some(&(true, i)) => i,
            Some(_) => return Err(u.error(format!("`{}` is not a left vertex", u.text))),
            None => return Err(u.error(format!("unknown vertex `{}`", u.text))),
        };
        let vi = match side.get(v.text) {
            Some(&(false, i)) => i,
            Some(_) => return Err(v.error(format!("`{}` is not a right vertex", v.text))),
            None => return Err(v.error(format!("unknown vertex `{}`", v.text))),
        };
        graph.add_edge(ui, vi).expect("indices in range");
        declarations.push(Declaration {
            kind: DeclarationKind::Edge,
            name: format!("{} {}", u.text, v.text),
            line: st.keyword.line,
            column: st.keyword.column,
        });
    }
    Ok(graph)
}
