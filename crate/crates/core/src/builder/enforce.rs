use super::cycles::{enumerate_cycles, DEFAULT_CYCLE_CAP};
use super::{BuildDiagnostics, BuildPolicy, Cpn, Provenance};

/// Breaks lecture/lab corequisite 2-cycles by deleting the lab → lecture arc.
///
/// An arc `u → v` is removed when `v → u` also exists, exactly one of the two
/// nodes is a lab by title, `u` is that lab, and the arc itself came from a
/// corequisite. Prerequisite arcs are never removed. Whatever cycles remain
/// are reported in `unresolved_cycles`.
pub fn enforce_dag(cpn: &Cpn, policy: &BuildPolicy) -> (Cpn, BuildDiagnostics) {
    let is_lab = |id| policy.is_lab(&cpn.node(id).title);
    let removable = |arc: &super::CpnArc| {
        arc.provenance == Provenance::Corequisite
            && cpn.arc(arc.target, arc.source).is_some()
            && is_lab(arc.source)
            && !is_lab(arc.target)
    };

    let removed_arcs: Vec<_> = cpn
        .arcs()
        .iter()
        .filter(|a| removable(a))
        .copied()
        .collect();
    let repaired = if removed_arcs.is_empty() {
        cpn.clone()
    } else {
        cpn.retain_arcs(|a| !removable(a))
    };

    let (unresolved_cycles, complete) = enumerate_cycles(&repaired, DEFAULT_CYCLE_CAP);
    let diagnostics = BuildDiagnostics {
        removed_arcs,
        unresolved_cycles,
        cycle_limit_hit: !complete,
        ..BuildDiagnostics::default()
    };
    (repaired, diagnostics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_cpn, detect_cycles, is_dag, NodeId};
    use crate::parser::parse_catalog_text;

    const LECTURE_LAB: &str = "\
CHEM 113 General Chemistry
 Corequisites: coregistration in CHEM 114
CHEM 114 General Chemistry Lab
 Corequisites: coregistration in CHEM 113
";

    #[test]
    fn removes_lab_to_lecture() {
        let catalog = parse_catalog_text(LECTURE_LAB).unwrap().catalog;
        let policy = BuildPolicy::bidirectional();
        let (cpn, _) = build_cpn(&catalog, &policy).unwrap();
        assert_eq!(detect_cycles(&cpn).unwrap().len(), 1);

        let (dag, diag) = enforce_dag(&cpn, &policy);
        assert!(is_dag(&dag));
        assert_eq!(diag.removed_arcs.len(), 1);
        let removed = diag.removed_arcs[0];
        assert_eq!((removed.source, removed.target), (NodeId(1), NodeId(0)));
        assert!(dag.arc(NodeId(0), NodeId(1)).is_some());
        assert!(diag.unresolved_cycles.is_empty());

        let (again, diag2) = enforce_dag(&dag, &policy);
        assert_eq!(again, dag);
        assert!(diag2.removed_arcs.is_empty());
    }

    #[test]
    fn dag_is_a_fixed_point() {
        let cpn = Cpn::synthetic(3, &[(0, 1), (1, 2)]).unwrap();
        let (out, diag) = enforce_dag(&cpn, &BuildPolicy::default());
        assert_eq!(out, cpn);
        assert!(diag.removed_arcs.is_empty());
        assert!(diag.unresolved_cycles.is_empty());
    }

    #[test]
    fn prerequisite_cycles_stay_unresolved() {
        let cpn = Cpn::synthetic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let before = detect_cycles(&cpn).unwrap();
        let (out, diag) = enforce_dag(&cpn, &BuildPolicy::default());
        assert_eq!(out, cpn);
        assert_eq!(diag.unresolved_cycles, before);
        assert_eq!(detect_cycles(&out).unwrap(), before);
    }
}
