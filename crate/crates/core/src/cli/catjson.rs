//! JSON input format for finite categories and functors: objects, morphisms
//! with dom/cod, identities, composition triples [g, f, g∘f], and per-object
//! groups given either as multiplication tables (with per-morphism element
//! maps) or as presented abelian groups (with per-morphism matrices).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::catcoh::{AbelianFunctor, FiniteCategory, GroupFunctor, SubFunctor};
use crate::error::{Error, Result};
use crate::fingroup::FiniteGroup;
use crate::intlin::{IntMatrix, PresentedAbelian};

#[derive(Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<[String; 3]>,
    pub groups: BTreeMap<String, GroupSpec>,
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub subfunctor: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default)]
    pub family: Option<BTreeMap<String, usize>>,
}

#[derive(Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { table: Vec<Vec<usize>> },
    Presented {
        rank: usize,
        #[serde(default)]
        relations: Vec<Vec<i64>>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Elements { elements: Vec<usize> },
    Matrix { matrix: Vec<Vec<i64>> },
}

/// The functor flavor a file describes.
pub enum LoadedFunctor {
    Tables(GroupFunctor),
    Presented(AbelianFunctor),
}

pub struct LoadedCategory {
    pub category: FiniteCategory,
    pub functor: LoadedFunctor,
    pub subfunctor: Option<SubFunctor>,
    pub family: Option<Vec<usize>>,
}

pub fn load_category_file(text: &str) -> Result<LoadedCategory> {
    let file: CategoryFile =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad category JSON: {e}")))?;
    let object_index: BTreeMap<&str, usize> =
        file.objects.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if object_index.len() != file.objects.len() {
        return Err(Error::Invalid("duplicate object names".into()));
    }
    let morphism_index: BTreeMap<&str, usize> =
        file.morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
    if morphism_index.len() != file.morphisms.len() {
        return Err(Error::Invalid("duplicate morphism names".into()));
    }
    let object_of = |name: &str| -> Result<usize> {
        object_index.get(name).copied().ok_or_else(|| Error::Invalid(format!("unknown object `{name}`")))
    };
    let morphism_of = |name: &str| -> Result<usize> {
        morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("unknown morphism `{name}`")))
    };
    let dom: Vec<usize> =
        file.morphisms.iter().map(|m| object_of(&m.dom)).collect::<Result<_>>()?;
    let cod: Vec<usize> =
        file.morphisms.iter().map(|m| object_of(&m.cod)).collect::<Result<_>>()?;
    let mut identity = vec![usize::MAX; file.objects.len()];
    for (obj, mor) in &file.identities {
        identity[object_of(obj)?] = morphism_of(mor)?;
    }
    if identity.contains(&usize::MAX) {
        return Err(Error::Invalid("every object needs an identity morphism".into()));
    }
    let n_mor = file.morphisms.len();
    let mut compose = vec![vec![None; n_mor]; n_mor];
    for [g, f, gf] in &file.composition {
        compose[morphism_of(g)?][morphism_of(f)?] = Some(morphism_of(gf)?);
    }
    let category = FiniteCategory::new(
        file.objects.clone(),
        file.morphisms.iter().map(|m| m.name.clone()).collect(),
        dom,
        cod,
        identity,
        compose,
    )?;

    let mut tables: Vec<Option<FiniteGroup>> = vec![None; category.objects()];
    let mut presented: Vec<Option<PresentedAbelian>> = vec![None; category.objects()];
    for (obj, spec) in &file.groups {
        let c = object_of(obj)?;
        match spec {
            GroupSpec::Table { table } => tables[c] = Some(FiniteGroup::from_table(table.clone())?),
            GroupSpec::Presented { rank, relations } => {
                let rows: Vec<Vec<BigInt>> = relations
                    .iter()
                    .map(|r| {
                        if r.len() != *rank {
                            return Err(Error::Invalid("relation row length mismatch".into()));
                        }
                        Ok(r.iter().map(|&x| BigInt::from(x)).collect())
                    })
                    .collect::<Result<_>>()?;
                presented[c] = Some(PresentedAbelian::from_relation_rows(*rank, rows));
            }
        }
    }
    let all_tables = tables.iter().all(Option::is_some);
    let all_presented = presented.iter().all(Option::is_some);
    if !all_tables && !all_presented {
        return Err(Error::Invalid(
            "give every object a group: either all tables or all presented".into(),
        ));
    }

    let functor = if all_tables {
        let values: Vec<FiniteGroup> = tables.into_iter().map(|t| t.expect("checked")).collect();
        let mut maps = vec![Vec::new(); category.morphisms()];
        for (mor, spec) in &file.maps {
            let m = morphism_of(mor)?;
            match spec {
                MapSpec::Elements { elements } => maps[m] = elements.clone(),
                MapSpec::Matrix { .. } => {
                    return Err(Error::Invalid("table groups need element maps".into()))
                }
            }
        }
        // Unspecified identity maps default to the identity.
        for c in 0..category.objects() {
            let id = category.identity_of(c);
            if maps[id].is_empty() {
                maps[id] = (0..values[c].order()).collect();
            }
        }
        if maps.iter().enumerate().any(|(m, v)| v.is_empty() && values[category.dom(m)].order() > 0) {
            return Err(Error::Invalid("every morphism needs an element map".into()));
        }
        LoadedFunctor::Tables(GroupFunctor::new(&category, values, maps)?)
    } else {
        let values: Vec<PresentedAbelian> =
            presented.into_iter().map(|t| t.expect("checked")).collect();
        let mut maps: Vec<Option<IntMatrix>> = vec![None; category.morphisms()];
        for (mor, spec) in &file.maps {
            let m = morphism_of(mor)?;
            match spec {
                MapSpec::Matrix { matrix } => {
                    let rows: Vec<Vec<BigInt>> = matrix
                        .iter()
                        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                        .collect();
                    maps[m] = Some(IntMatrix::from_rows(values[category.cod(m)].rank(), rows));
                }
                MapSpec::Elements { .. } => {
                    return Err(Error::Invalid("presented groups need matrix maps".into()))
                }
            }
        }
        for c in 0..category.objects() {
            let id = category.identity_of(c);
            if maps[id].is_none() {
                maps[id] = Some(IntMatrix::identity(values[c].rank()));
            }
        }
        let maps: Vec<IntMatrix> = maps
            .into_iter()
            .enumerate()
            .map(|(m, v)| v.ok_or(Error::Invalid(format!("morphism {m} has no matrix"))))
            .collect::<Result<_>>()?;
        LoadedFunctor::Presented(AbelianFunctor::new(&category, values, maps)?)
    };

    let subfunctor = match (&file.subfunctor, &functor) {
        (Some(spec), LoadedFunctor::Tables(f)) => {
            let mut elements = vec![Vec::new(); category.objects()];
            for (obj, elts) in spec {
                let mut sorted = elts.clone();
                sorted.sort_unstable();
                sorted.dedup();
                elements[object_of(obj)?] = sorted;
            }
            Some(SubFunctor::new(&category, f, elements)?)
        }
        (Some(_), LoadedFunctor::Presented(_)) => {
            return Err(Error::Invalid("subfunctors require table groups".into()))
        }
        (None, _) => None,
    };
    let family = match &file.family {
        Some(spec) => {
            let mut fam = vec![0usize; category.objects()];
            for (obj, &x) in spec {
                fam[object_of(obj)?] = x;
            }
            Some(fam)
        }
        None => None,
    };
    Ok(LoadedCategory { category, functor, subfunctor, family })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn bc2_json() -> String {
        r#"{
            "objects": ["*"],
            "morphisms": [
                {"name": "id", "dom": "*", "cod": "*"},
                {"name": "s", "dom": "*", "cod": "*"}
            ],
            "identities": {"*": "id"},
            "composition": [["id","id","id"],["id","s","s"],["s","id","s"],["s","s","id"]],
            "groups": {"*": {"rank": 1, "relations": []}},
            "maps": {"s": {"matrix": [[1]]}}
        }"#
        .to_string()
    }

    #[test]
    fn load_presented_bc2() {
        let loaded = load_category_file(&bc2_json()).unwrap();
        assert_eq!(loaded.category.objects(), 1);
        assert_eq!(loaded.category.morphisms(), 2);
        assert!(matches!(loaded.functor, LoadedFunctor::Presented(_)));
    }

    #[test]
    fn load_table_flavor_with_subfunctor() {
        let text = r#"{
            "objects": ["*"],
            "morphisms": [
                {"name": "id", "dom": "*", "cod": "*"},
                {"name": "s", "dom": "*", "cod": "*"}
            ],
            "identities": {"*": "id"},
            "composition": [["id","id","id"],["id","s","s"],["s","id","s"],["s","s","id"]],
            "groups": {"*": {"table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]}},
            "maps": {"s": {"elements": [0,3,2,1]}},
            "subfunctor": {"*": [0, 2]},
            "family": {"*": 1}
        }"#;
        let loaded = load_category_file(text).unwrap();
        assert!(loaded.subfunctor.is_some());
        assert_eq!(loaded.family, Some(vec![1]));
    }

    #[test]
    fn broken_composition_is_rejected() {
        let text = bc2_json().replace(r#"["id","s","s"]"#, r#"["id","s","id"]"#);
        let err = match load_category_file(&text) {
            Err(e) => e,
            Ok(_) => panic!("broken composition accepted"),
        };
        assert!(matches!(err, Error::CategoryLaw(_)), "{err}");
    }
}
