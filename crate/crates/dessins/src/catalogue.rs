//! Catalogue entries: the bundle of combinatorial fingerprints of a dessin
//! that is stable under relabelling, plus the delta-matroid data for small
//! maps.

use crate::delta_matroid::{delta_matroid_of_map, delta_self_dual, DeltaMatroid, MAX_ISO_GROUND};
use crate::dessin::Dessin;
use crate::perm::{GroupOrder, PermError, DEFAULT_ORDER_CAP};
use crate::text::format_dessin;

#[derive(Clone, Debug)]
pub struct DeltaSummary {
    pub matroid: DeltaMatroid,
    pub is_matroid: bool,
    pub self_dual: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    /// The dessin in canonical `.dsn` form.
    pub triple: String,
    pub passport: String,
    pub genus: usize,
    pub monodromy_order: GroupOrder,
    pub abelian: bool,
    pub automorphisms: usize,
    pub regular: bool,
    pub self_dual: bool,
    /// Present for clean dessins with at most [`MAX_ISO_GROUND`] edges.
    pub delta: Option<DeltaSummary>,
}

/// Assembles the fingerprint bundle. The order fingerprint needs degree at
/// most 16; that bound propagates as an error.
pub fn catalogue_report(d: &Dessin) -> Result<CatalogueEntry, PermError> {
    let monodromy_order = d.monodromy_order(DEFAULT_ORDER_CAP)?;
    let delta = match d.as_clean() {
        Ok(clean) if clean.edge_count() <= MAX_ISO_GROUND => {
            let matroid =
                delta_matroid_of_map(&clean).expect("edge count within the scan bound");
            let is_matroid = matroid.is_matroid();
            let self_dual =
                delta_self_dual(&matroid).expect("ground size within the isomorphism bound");
            Some(DeltaSummary {
                matroid,
                is_matroid,
                self_dual,
            })
        }
        _ => None,
    };
    Ok(CatalogueEntry {
        triple: format_dessin(d),
        passport: d.passport().to_string(),
        genus: d.genus(),
        monodromy_order,
        abelian: d.monodromy_is_abelian(),
        automorphisms: d.automorphism_count(),
        regular: d.is_regular(),
        self_dual: d.is_self_dual(),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn p(n: usize, s: &str) -> Perm {
        crate::text::parse_permutation(s, n).unwrap()
    }

    #[test]
    fn figure_four_entry() {
        let d = Dessin::new(5, p(5, "(2 3 4)"), p(5, "(1 2)(3 5 4)"), None).unwrap();
        let entry = catalogue_report(&d).unwrap();
        assert_eq!(entry.passport, "[3 1^2, 3 2, 4 1]");
        assert_eq!(entry.genus, 0);
        assert_eq!(entry.monodromy_order, GroupOrder::Exact(120));
        assert!(!entry.abelian);
        assert_eq!(entry.automorphisms, 1);
        assert!(!entry.regular);
        assert!(entry.delta.is_none());
    }

    #[test]
    fn remark_six_three_entry() {
        let d = Dessin::new(6, p(6, "(1 2)(3 4)(5 6)"), p(6, "(1 3 5)(2 4 6)"), None).unwrap();
        let entry = catalogue_report(&d).unwrap();
        assert_eq!(entry.monodromy_order, GroupOrder::Exact(6));
        assert!(entry.abelian);
        assert!(entry.regular);
        assert_eq!(entry.automorphisms, 6);
    }

    #[test]
    fn digon_entry_carries_delta_data() {
        let d = Dessin::new(4, p(4, "(1 4)(2 3)"), p(4, "(1 2)(3 4)"), None).unwrap();
        let entry = catalogue_report(&d).unwrap();
        let delta = entry.delta.unwrap();
        assert_eq!(delta.matroid.to_string(), "{{1}, {2}}");
        assert!(delta.is_matroid);
        assert!(delta.self_dual);
        assert!(entry.self_dual);
    }
}
