//! Built-in example semigroups: the instances the verification pipeline and
//! the test suites run against.

use crate::exact_linalg::QMatrix;
use crate::semigroup::DEFAULT_CAP;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub dimension: usize,
    pub generators: Vec<QMatrix>,
    /// Expected |S| after adjoining zero, when finite and known.
    pub expected_size: Option<usize>,
    pub expected_irreducible: bool,
    pub notes: &'static str,
    /// Closure cap for this entry; entries with infinite closure carry a
    /// small cap so that `corpus run` fails fast with CapExceeded.
    pub cap: usize,
}

fn qm(rows: &[&str]) -> QMatrix {
    QMatrix::parse_rows(rows).expect("corpus matrices are well-formed")
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "sign",
            dimension: 1,
            generators: vec![qm(&["-1"])],
            expected_size: Some(3),
            expected_irreducible: true,
            notes: "{1, -1, 0}: |G| = 2 forces p = 3, and |S| = 3 = 3^(n²) is tight at n = 1",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "brandt_b2",
            dimension: 2,
            generators: vec![qm(&["0 1", "0 0"]), qm(&["0 0", "1 0"])],
            expected_size: Some(5),
            expected_irreducible: true,
            notes: "the five-element Brandt semigroup of 2x2 matrix units; aperiodic, so p = 2",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "sym3_standard",
            dimension: 2,
            generators: vec![qm(&["0 -1", "1 -1"]), qm(&["0 -1", "-1 0"])],
            expected_size: Some(7),
            expected_irreducible: true,
            notes: "standard 2-dimensional representation of the symmetric group on 3 letters; |G| = 6 even, p = 3",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "sym4_standard",
            dimension: 3,
            generators: vec![
                qm(&["-1 1 0", "0 1 0", "0 0 1"]),
                qm(&["0 0 -1", "1 0 -1", "0 1 -1"]),
            ],
            expected_size: Some(25),
            expected_irreducible: true,
            notes: "standard 3-dimensional representation of the symmetric group on 4 letters, generated by a transposition and a 4-cycle",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "signed_perm2",
            dimension: 2,
            generators: vec![qm(&["-1 0", "0 1"]), qm(&["0 1", "1 0"])],
            expected_size: Some(9),
            expected_irreducible: true,
            notes: "signed permutations of 2 coordinates (order-8 group); |G| even, p = 3",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "rook2",
            dimension: 2,
            generators: vec![qm(&["0 1", "1 0"]), qm(&["1 0", "0 0"])],
            expected_size: Some(7),
            expected_irreducible: true,
            notes: "partial permutation matrices on 2 points; the minimal ideal's subgroup is trivial, so p = 2 despite the order-2 unit group",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "dihedral16",
            dimension: 4,
            generators: vec![
                qm(&["0 0 0 -1", "1 0 0 0", "0 1 0 0", "0 0 1 0"]),
                qm(&["1 0 0 0", "0 0 0 -1", "0 0 -1 0", "0 -1 0 0"]),
            ],
            expected_size: Some(17),
            expected_irreducible: true,
            notes: "dihedral group of order 16 on Q^4; its span has dimension 8 < 16, so irreducibility needs the spinning certificate rather than the full-span count",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "reducible_demo",
            dimension: 2,
            generators: vec![qm(&["1 0", "0 1"]), qm(&["1 0", "0 0"])],
            expected_size: Some(3),
            expected_irreducible: false,
            notes: "{I, E11, 0} fixes the line through e1; exercises the rejection path",
            cap: DEFAULT_CAP,
        },
        CorpusEntry {
            name: "doubling",
            dimension: 1,
            generators: vec![qm(&["2"])],
            expected_size: None,
            expected_irreducible: true,
            notes: "powers of 2 never close up; exercises CapExceeded (small cap so the failure is fast)",
            cap: 64,
        },
    ]
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{adjoin_zero, closure};

    #[test]
    fn shipped_entries_present() {
        let names: Vec<&str> = corpus().iter().map(|e| e.name).collect();
        for required in [
            "sign",
            "brandt_b2",
            "sym3_standard",
            "sym4_standard",
            "signed_perm2",
            "rook2",
            "reducible_demo",
            "doubling",
        ] {
            assert!(names.contains(&required), "missing corpus entry {required}");
        }
    }

    #[test]
    fn expected_sizes_match_closure() {
        for entry in corpus() {
            let Some(expected) = entry.expected_size else {
                continue;
            };
            let s = adjoin_zero(&closure(&entry.generators, entry.cap).unwrap());
            assert_eq!(s.size(), expected, "size mismatch for {}", entry.name);
            assert_eq!(s.n(), entry.dimension);
        }
    }

    #[test]
    fn doubling_exceeds_its_cap() {
        let entry = corpus_entry("doubling").unwrap();
        assert!(closure(&entry.generators, entry.cap).is_err());
    }
}
