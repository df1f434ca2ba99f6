//! Ledger of formula corrections adopted or observed by this crate.
//!
//! The published closed forms this library implements contain four
//! defects that the cross-validation machinery pinned down. Each entry
//! names the tests that exercise the adopted behaviour. The entries are
//! data so the CLI can export them in machine-readable form.

/// One documented correction or discrepancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Erratum {
    /// Stable identifier.
    pub id: &'static str,
    /// What the printed form says and what is wrong with it.
    pub statement: &'static str,
    /// What this crate does about it.
    pub resolution: &'static str,
    /// Test identifiers that verify the adopted behaviour.
    pub verifying_tests: &'static [&'static str],
}

/// The four ledger entries, in citation order of the source formulas.
pub const ENTRIES: [Erratum; 4] = [
    Erratum {
        id: "dobinski-series-inverse-factorial",
        statement: "The general r > s Dobinski-type series, as printed, lacks a \
                    1/k! factor in its terms and diverges as written.",
        resolution: "Adopted the corrected series with the 1/k! factor restored; it \
                     reproduces the exact normal-ordering integers across the whole \
                     test grid, including the (9,6) family values 1, 207775, \
                     566828686621, 9011375448568566265.",
        verifying_tests: &[
            "dobinski::tests::general_series_matches_exact_for_nine_six",
            "dobinski::tests::integer_recovery_grid",
            "acceptance::criterion_01_golden_nine_six",
        ],
    },
    Erratum {
        id: "composite-prefactor",
        statement: "The composite-family hypergeometric representation (families \
                    (pm+p, pm) with p >= 2) carries a prefactor that does not \
                    reproduce the sequence: at (9,6), n = 1 it evaluates to 1/2160 \
                    instead of 1.",
        resolution: "Evaluated exactly as printed and reported with an agreement \
                     flag (never silently repaired); the exact normal-ordering \
                     path and the corrected series are the ground truth.",
        verifying_tests: &[
            "dobinski::tests::composite_prefactor_discrepancy_reported",
            "acceptance::criterion_01_golden_nine_six",
        ],
    },
    Erratum {
        id: "ordered-exponential-sign",
        statement: "The normally ordered form of exp(lambda (adag)^r a) is printed \
                    with inner exponent +1/(r-1); that sign contradicts both EGF \
                    specializations exp(t/(1-t)) and exp((1-2t)^(-1/2)-1).",
        resolution: "Adopted the -1/(r-1) exponent; the closed form then matches \
                     the truncated-Fock brute force to better than 1e-30 on the \
                     whole (lambda, z, r) grid and the EGF identity holds exactly.",
        verifying_tests: &[
            "generating_functions::tests::ordered_exponential_sign",
            "generating_functions::tests::matrix_element_grid_agreement",
            "generating_functions::tests::egf_identity_exact_r2_r3",
            "acceptance::criterion_07_matrix_element",
        ],
    },
    Erratum {
        id: "asymptotic-subleading-b31",
        statement: "The subleading coefficient 2^(-3/7) in the (3,1) saddle-point \
                    expansion is typographically suspect; with it the two-term \
                    expansion deviates ~15% at n = 100 while the leading term \
                    alone is within ~1.2%.",
        resolution: "Implemented exactly as printed (no coefficient substituted); \
                     reports record the empirical fit quality, which improves \
                     monotonically in n as the leading order takes over.",
        verifying_tests: &[
            "moment_analysis::tests::b31_subleading_as_printed",
            "acceptance::criterion_08_asymptotics",
        ],
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_four_entries_with_unique_ids() {
        assert_eq!(ENTRIES.len(), 4);
        let mut ids: Vec<_> = ENTRIES.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 4);
        assert!(ENTRIES.iter().all(|e| !e.verifying_tests.is_empty()));
    }
}
