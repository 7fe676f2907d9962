use std::collections::BTreeMap;

use crate::catalog::{Catalog, CourseCode, CourseRecord, RequirementClause};

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index wins so roots are stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Catalogue with cross-listed records merged, plus the map from every code
/// in a group (records and dangling cross-listings alike) to its sorted group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedCatalog {
    pub catalog: Catalog,
    pub groups: BTreeMap<CourseCode, Vec<CourseCode>>,
}

impl MergedCatalog {
    /// Sorted group containing `code`, or `None` when the code is unknown.
    pub fn group_of(&self, code: &CourseCode) -> Option<&[CourseCode]> {
        self.groups.get(code).map(Vec::as_slice)
    }
}

fn push_unique<T: PartialEq + Clone>(into: &mut Vec<T>, items: &[T]) {
    for item in items {
        if !into.contains(item) {
            into.push(item.clone());
        }
    }
}

/// Closes the cross-listing relation transitively and merges every group into
/// a single record.
///
/// The merged record takes the smallest member code, lists the other members
/// as its cross-listings and carries the union of the members' prerequisite
/// conjuncts, corequisites and soft rules. Records without cross-listings pass
/// through untouched. Merged records keep the position of their first member.
pub fn resolve_cross_listings(catalog: &Catalog) -> MergedCatalog {
    let mut index: BTreeMap<CourseCode, usize> = BTreeMap::new();
    let mut codes: Vec<CourseCode> = Vec::new();
    let mut intern = |code: &CourseCode, index: &mut BTreeMap<CourseCode, usize>| -> usize {
        *index.entry(code.clone()).or_insert_with(|| {
            codes.push(code.clone());
            codes.len() - 1
        })
    };
    let mut pairs = Vec::new();
    for record in &catalog.records {
        let a = intern(&record.code, &mut index);
        for other in &record.cross_listings {
            let b = intern(other, &mut index);
            pairs.push((a, b));
        }
    }
    let mut sets = DisjointSet::new(codes.len());
    for (a, b) in pairs {
        sets.union(a, b);
    }

    let mut members: BTreeMap<usize, Vec<CourseCode>> = BTreeMap::new();
    for (i, code) in codes.iter().enumerate() {
        members.entry(sets.find(i)).or_default().push(code.clone());
    }
    for group in members.values_mut() {
        group.sort();
    }

    let mut groups = BTreeMap::new();
    for group in members.values() {
        for code in group {
            groups.insert(code.clone(), group.clone());
        }
    }

    let mut order: Vec<usize> = Vec::new();
    let mut by_root: BTreeMap<usize, Vec<&CourseRecord>> = BTreeMap::new();
    for record in &catalog.records {
        let root = sets.find(index[&record.code]);
        let entry = by_root.entry(root).or_default();
        if entry.is_empty() {
            order.push(root);
        }
        entry.push(record);
    }

    let records = order
        .into_iter()
        .map(|root| {
            let group = &members[&root];
            let parts = &by_root[&root];
            if group.len() == 1 && parts.len() == 1 {
                return parts[0].clone();
            }
            let mut titles: Vec<String> = Vec::new();
            let mut merged = CourseRecord::new(group[0].clone(), "");
            let mut conjuncts = Vec::new();
            for part in parts {
                push_unique(&mut titles, std::slice::from_ref(&part.title));
                push_unique(&mut conjuncts, &part.prerequisites.conjuncts);
                for decl in &part.corequisites {
                    if !merged.corequisites.iter().any(|d| d.target == decl.target) {
                        merged.corequisites.push(decl.clone());
                    }
                }
                push_unique(&mut merged.soft_rules, &part.soft_rules);
            }
            titles.retain(|t| !t.is_empty());
            merged.title = titles.join(" / ");
            merged.prerequisites = RequirementClause::new(conjuncts);
            merged.cross_listings = group[1..].to_vec();
            merged
        })
        .collect();

    MergedCatalog {
        catalog: Catalog::new(records, catalog.source_label.clone()),
        groups,
    }
}
