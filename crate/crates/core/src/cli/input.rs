//! Group references: JSON group-spec files and builtin names.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::class2::{Class2Presentation, CommutatorEntry};
use crate::constructions::{GroupProduct, GroupRecipe};
use crate::error::{Error, Result};
use crate::group::CayleyGroup;

/// On-disk group description, discriminated by `kind`.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpecFile {
    Cayley {
        #[serde(default)]
        name: Option<String>,
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    Class2 {
        #[serde(default)]
        name: Option<String>,
        p: u32,
        r: usize,
        s: usize,
        /// `[i, j, [c_1, ..., c_s]]` for `[e_i, e_j] = z_1^c_1 ... z_s^c_s`.
        commutators: Vec<(usize, usize, Vec<i64>)>,
        #[serde(default)]
        powers: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        generator_names: Option<Vec<String>>,
        #[serde(default)]
        central_names: Option<Vec<String>>,
    },
    Builtin {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, Value>,
    },
}

/// A resolved group with the name reports use for it.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub name: String,
    pub product: GroupProduct,
    pub recipe: Option<GroupRecipe>,
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("group spec: {e}")))
    }

    pub fn resolve(self, fallback_name: &str) -> Result<LoadedGroup> {
        match self {
            GroupSpecFile::Cayley {
                name,
                order,
                table,
                labels,
            } => {
                if table.len() != order {
                    return Err(Error::InvalidTable(format!(
                        "order {order} but {} table rows",
                        table.len()
                    )));
                }
                let g = CayleyGroup::from_table(&table, labels)?;
                Ok(LoadedGroup {
                    name: name.unwrap_or_else(|| fallback_name.into()),
                    product: GroupProduct::Cayley(g),
                    recipe: None,
                })
            }
            GroupSpecFile::Class2 {
                name,
                p,
                r,
                s,
                commutators,
                powers,
                generator_names,
                central_names,
            } => {
                let entries: Vec<CommutatorEntry> = commutators
                    .into_iter()
                    .map(|(i, j, c)| CommutatorEntry::new(i, j, c))
                    .collect();
                let mut pres = Class2Presentation::new(p, r, s, &entries, powers.as_deref())?;
                if generator_names.is_some() || central_names.is_some() {
                    let gens = generator_names.unwrap_or_else(|| pres.gen_names().to_vec());
                    let central = central_names.unwrap_or_else(|| pres.central_names().to_vec());
                    pres = pres.with_names(gens, central)?;
                }
                Ok(LoadedGroup {
                    name: name.unwrap_or_else(|| fallback_name.into()),
                    product: GroupProduct::Class2(pres),
                    recipe: None,
                })
            }
            GroupSpecFile::Builtin { name, params } => {
                let mut map = BTreeMap::new();
                for (k, v) in params {
                    let text = match v {
                        Value::String(s) => s,
                        Value::Number(n) => n.to_string(),
                        other => {
                            return Err(Error::Input(format!(
                                "parameter {k}: unsupported value {other}"
                            )))
                        }
                    };
                    map.insert(k, text);
                }
                Ok(from_recipe(GroupRecipe::build(&name, &map)?))
            }
        }
    }
}

fn from_recipe(recipe: GroupRecipe) -> LoadedGroup {
    LoadedGroup {
        name: recipe.display_name(),
        product: recipe.product.clone(),
        recipe: Some(recipe),
    }
}

/// Parameter filled by the `name:INT` shorthand.
fn shorthand_param(name: &str) -> Option<&'static str> {
    match name {
        "cyclic" | "dihedral" | "quaternion" => Some("n"),
        "paper_P" => Some("p"),
        _ => None,
    }
}

/// Parses `[builtin:]NAME[:INT][?k=v&...]`.
pub fn parse_builtin_ref(text: &str) -> Result<GroupRecipe> {
    let body = text.strip_prefix("builtin:").unwrap_or(text);
    let (head, query) = match body.split_once('?') {
        Some((h, q)) => (h, Some(q)),
        None => (body, None),
    };
    let mut params = BTreeMap::new();
    let name = match head.split_once(':') {
        Some((name, value)) => {
            let key = shorthand_param(name).ok_or_else(|| {
                Error::Input(format!(
                    "`{name}` has no `:INT` shorthand; use `{name}?k=v`"
                ))
            })?;
            params.insert(key.to_string(), value.to_string());
            name
        }
        None => head,
    };
    if let Some(q) = query {
        for pair in q.split('&').filter(|s| !s.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("malformed parameter `{pair}` in `{text}`")))?;
            if params.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Input(format!(
                    "parameter `{k}` given twice in `{text}`"
                )));
            }
        }
    }
    GroupRecipe::build(name, &params)
}

/// Resolves a reference: a readable file is parsed as a group spec,
/// anything else as a builtin reference.
pub fn load_group(reference: &str) -> Result<LoadedGroup> {
    let path = Path::new(reference);
    if !reference.starts_with("builtin:") && path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(reference);
        return GroupSpecFile::parse(&text)?.resolve(stem);
    }
    parse_builtin_ref(reference).map(from_recipe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_refs() {
        assert_eq!(
            parse_builtin_ref("dihedral:8").unwrap().display_name(),
            "dihedral?n=8"
        );
        assert_eq!(
            parse_builtin_ref("builtin:paper_Gn?p=2&n=2")
                .unwrap()
                .display_name(),
            "paper_Gn?n=2&p=2"
        );
        assert_eq!(
            parse_builtin_ref("symmetric3").unwrap().display_name(),
            "symmetric3"
        );
        assert!(parse_builtin_ref("paper_Gn:2").is_err());
        assert!(parse_builtin_ref("cyclic?n").is_err());
        assert!(parse_builtin_ref("cyclic:4?n=5").is_err());
        assert!(matches!(
            parse_builtin_ref("nope"),
            Err(Error::UnknownGroup(_))
        ));
    }

    #[test]
    fn spec_files() {
        let c2 = r#"{"kind": "cayley", "order": 2, "table": [[0, 1], [1, 0]]}"#;
        let g = GroupSpecFile::parse(c2).unwrap().resolve("c2").unwrap();
        assert_eq!(g.name, "c2");
        let bad = r#"{"kind": "cayley", "order": 2, "table": [[0, 1], [1, 1]]}"#;
        let err = GroupSpecFile::parse(bad).unwrap().resolve("x").unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
        let heis = r#"{"kind": "class2", "p": 3, "r": 2, "s": 1, "commutators": [[0, 1, [1]]]}"#;
        match GroupSpecFile::parse(heis)
            .unwrap()
            .resolve("h")
            .unwrap()
            .product
        {
            GroupProduct::Class2(p) => assert_eq!(p.order_exponent(), 3),
            _ => panic!("expected a presentation"),
        }
        let builtin = r#"{"kind": "builtin", "name": "extraspecial", "params": {"p": 2, "n": 2, "type": "minus"}}"#;
        let g = GroupSpecFile::parse(builtin).unwrap().resolve("e").unwrap();
        assert_eq!(g.name, "extraspecial?n=2&p=2&type=minus");
        assert!(GroupSpecFile::parse(
            r#"{"kind": "cayley", "order": 1, "table": [[0]], "extra": 1}"#
        )
        .is_err());
        assert!(GroupSpecFile::parse(
            r#"{"kind": "class2", "p": 4, "r": 1, "s": 1, "commutators": []}"#
        )
        .unwrap()
        .resolve("x")
        .is_err());
    }
}
