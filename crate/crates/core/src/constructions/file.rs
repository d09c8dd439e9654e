use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

/// On-disk generator list with 0-based image arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

pub fn parse_group_file(text: &str) -> Result<(Option<String>, PermutationGroup)> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| Error::MalformedFile(e.to_string()))?;
    let mut gens = Vec::with_capacity(file.generators.len());
    for images in file.generators {
        if images.len() != file.degree {
            return Err(Error::DegreeMismatch(file.degree, images.len()));
        }
        gens.push(Permutation::from_images(images)?);
    }
    Ok((file.name, PermutationGroup::new(file.degree, gens)?))
}

pub fn load_group_file(path: &Path) -> Result<(Option<String>, PermutationGroup)> {
    let text = std::fs::read_to_string(path)?;
    parse_group_file(&text)
}

/// Canonical form: generators sorted, duplicates removed.
pub fn to_group_file(name: Option<&str>, group: &PermutationGroup) -> GroupFile {
    let mut generators: Vec<Vec<u32>> = group
        .generators()
        .iter()
        .map(|g| g.images().to_vec())
        .collect();
    generators.sort();
    generators.dedup();
    GroupFile {
        name: name.map(str::to_owned),
        degree: group.degree(),
        generators,
    }
}

pub fn save_group_file(name: Option<&str>, group: &PermutationGroup, path: &Path) -> Result<()> {
    let file = to_group_file(name, group);
    let mut text = serde_json::to_string(&file).map_err(|e| Error::Internal(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn cyclic_from_text() {
        let (_, g) = parse_group_file(r#"{"degree": 3, "generators": [[1,2,0]]}"#).unwrap();
        assert_eq!(g.order(), BigUint::from(3u32));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_group_file(r#"{"degree": 3, "generators": [[0,0,1]]}"#),
            Err(Error::MalformedGenerator(_))
        ));
        assert!(matches!(
            parse_group_file(r#"{"degree": 3, "generators": [[0,1]]}"#),
            Err(Error::DegreeMismatch(3, 2))
        ));
        assert!(matches!(parse_group_file("{"), Err(Error::MalformedFile(_))));
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let dir = tempfile::tempdir().unwrap();
        let g = crate::constructions::symmetric(5).unwrap().group;
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        save_group_file(Some("s5"), &g, &a).unwrap();
        let (name, h) = load_group_file(&a).unwrap();
        save_group_file(name.as_deref(), &h, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(h.order(), BigUint::from(120u32));
    }
}
