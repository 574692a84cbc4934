//! Closure enumeration and the combinatorial skeleton of a finite matrix
//! semigroup: complete product table, Green's relations, idempotents,
//! maximal subgroups, aperiodicity, stability.

mod green;

pub use green::{green_relations, principal_ideal, GreenStructure};

use std::collections::HashMap;

use thiserror::Error;

use crate::exact_linalg::QMatrix;

pub const DEFAULT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("closure exceeded the element cap {cap}; the generated semigroup is infinite or too large")]
    CapExceeded { cap: usize },
    #[error("generator dimensions disagree: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("no generators given")]
    EmptyGenerators,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
}

/// How an element was first produced during closure, as a word in earlier
/// elements. Lets the product table be completed without further matrix
/// arithmetic.
#[derive(Debug, Clone, Copy)]
enum Factorization {
    Generator,
    /// element = parent * generator
    RightMul { parent: usize, gen: usize },
    /// element = generator * parent
    LeftMul { gen: usize, parent: usize },
}

/// A finite matrix semigroup, materialized: ordered element list plus the
/// complete product index table. All downstream structure theory works on
/// the table alone.
#[derive(Debug, Clone)]
pub struct SemigroupTable {
    n: usize,
    elements: Vec<QMatrix>,
    product: Vec<usize>, // row-major size x size
    zero_index: Option<usize>,
    generator_indices: Vec<usize>,
}

impl SemigroupTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &QMatrix {
        &self.elements[i]
    }

    /// Index of elements[i] * elements[j].
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.product[i * self.size() + j]
    }

    pub fn zero_index(&self) -> Option<usize> {
        self.zero_index
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn index_of(&self, m: &QMatrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Indices i with i*i = i.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.product(i, i) == i).collect()
    }
}

/// Multiplicative closure of the generators, with complete product table.
///
/// Worklist BFS: each popped element is multiplied by every generator on both
/// sides, deduplicating through a hash map of canonical matrices, so element
/// indexing is deterministic (generators first, then discovery order). The
/// rest of the table is then filled from the BFS factorizations — index
/// lookups only, no matrix products.
pub fn closure(generators: &[QMatrix], cap: usize) -> Result<SemigroupTable, SemigroupError> {
    if generators.is_empty() {
        return Err(SemigroupError::EmptyGenerators);
    }
    let n = generators[0].n();
    for g in generators {
        if g.n() != n {
            return Err(SemigroupError::DimensionMismatch(n, g.n()));
        }
    }
    assert!(cap >= 1, "cap must be at least 1");

    let mut elements: Vec<QMatrix> = Vec::new();
    let mut index: HashMap<QMatrix, usize> = HashMap::new();
    let mut facts: Vec<Factorization> = Vec::new();
    let mut gen_indices: Vec<usize> = Vec::new();

    for g in generators {
        if !index.contains_key(g) {
            let id = elements.len();
            index.insert(g.clone(), id);
            elements.push(g.clone());
            facts.push(Factorization::Generator);
            gen_indices.push(id);
        }
    }
    if elements.len() > cap {
        return Err(SemigroupError::CapExceeded { cap });
    }

    // partial products discovered during BFS: (i, j) -> i*j
    let mut known: HashMap<(usize, usize), usize> = HashMap::new();

    let mut head = 0;
    while head < elements.len() {
        let s = head;
        head += 1;
        for &g in &gen_indices {
            // s * g, then g * s
            if !known.contains_key(&(s, g)) {
                let m = elements[s].mul(&elements[g]);
                let id = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= cap {
                            return Err(SemigroupError::CapExceeded { cap });
                        }
                        index.insert(m.clone(), id);
                        elements.push(m);
                        facts.push(Factorization::RightMul { parent: s, gen: g });
                        id
                    }
                };
                known.insert((s, g), id);
            }
            if !known.contains_key(&(g, s)) {
                let m = elements[g].mul(&elements[s]);
                let id = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= cap {
                            return Err(SemigroupError::CapExceeded { cap });
                        }
                        index.insert(m.clone(), id);
                        elements.push(m);
                        facts.push(Factorization::LeftMul { gen: g, parent: s });
                        id
                    }
                };
                known.insert((g, s), id);
            }
        }
    }

    let size = elements.len();
    let mut product = vec![usize::MAX; size * size];
    for ((a, b), id) in &known {
        product[a * size + b] = *id;
    }

    // Complete the table column by column. For j = parent*gen the identity
    // i*j = (i*parent)*gen resolves from the already-filled column `parent`
    // plus the generator products; dually for left factorizations.
    for j in 0..size {
        match facts[j] {
            Factorization::Generator => {
                // generator columns were fully populated by the BFS
                for i in 0..size {
                    debug_assert_ne!(product[i * size + j], usize::MAX);
                }
            }
            Factorization::RightMul { parent, gen } => {
                for i in 0..size {
                    if product[i * size + j] == usize::MAX {
                        let ip = product[i * size + parent];
                        debug_assert_ne!(ip, usize::MAX);
                        let val = product[ip * size + gen];
                        debug_assert_ne!(val, usize::MAX);
                        product[i * size + j] = val;
                    }
                }
            }
            Factorization::LeftMul { gen, parent } => {
                for i in 0..size {
                    if product[i * size + j] == usize::MAX {
                        let ig = product[i * size + gen];
                        debug_assert_ne!(ig, usize::MAX);
                        let val = product[ig * size + parent];
                        debug_assert_ne!(val, usize::MAX);
                        product[i * size + j] = val;
                    }
                }
            }
        }
    }

    let zero_index = elements.iter().position(QMatrix::is_zero);

    Ok(SemigroupTable {
        n,
        elements,
        product,
        zero_index,
        generator_indices: gen_indices,
    })
}

/// Append the zero matrix if absent, extending the product table; a no-op
/// when the zero matrix is already an element.
pub fn adjoin_zero(table: &SemigroupTable) -> SemigroupTable {
    if table.zero_index.is_some() {
        return table.clone();
    }
    let old = table.size();
    let size = old + 1;
    let z = old;
    let mut product = vec![z; size * size];
    for i in 0..old {
        for j in 0..old {
            product[i * size + j] = table.product(i, j);
        }
    }
    let mut elements = table.elements.clone();
    elements.push(QMatrix::zeros(table.n));
    SemigroupTable {
        n: table.n,
        elements,
        product,
        zero_index: Some(z),
        generator_indices: table.generator_indices.clone(),
    }
}

/// Maximal subgroup of S at an idempotent e: the H-class of e, checked to be
/// a group under the product table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalSubgroup {
    pub element_indices: Vec<usize>,
    pub identity_index: usize,
    pub order: usize,
}

pub fn maximal_subgroup_at(
    table: &SemigroupTable,
    green: &GreenStructure,
    e: usize,
) -> Result<MaximalSubgroup, SemigroupError> {
    if table.product(e, e) != e {
        return Err(SemigroupError::NotIdempotent(e));
    }
    let h = green.h_class_members(green.h_class_of(e)).to_vec();
    // the H-class of an idempotent is a group: closed, e two-sided identity,
    // inverses present — verified, not assumed
    for &a in &h {
        assert_eq!(table.product(e, a), a, "e must be a left identity on its H-class");
        assert_eq!(table.product(a, e), a, "e must be a right identity on its H-class");
        assert!(
            h.iter().any(|&b| table.product(a, b) == e && table.product(b, a) == e),
            "every element of the H-class of an idempotent must be invertible"
        );
        for &b in &h {
            assert!(
                h.contains(&table.product(a, b)),
                "H-class of an idempotent must be closed"
            );
        }
    }
    Ok(MaximalSubgroup {
        order: h.len(),
        element_indices: h,
        identity_index: e,
    })
}

/// True iff every maximal subgroup is trivial.
pub fn is_aperiodic(table: &SemigroupTable) -> bool {
    let green = green_relations(table);
    table
        .idempotents()
        .into_iter()
        .all(|e| green.h_class_members(green.h_class_of(e)).len() == 1)
}

/// Outcome of the stability check `sx J s <=> sx R s` and `xs J s <=> xs L s`.
/// Finite semigroups are always stable; a violation signals a bug in the
/// table or the Green computation, so the failing pair is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    /// (s, x, side) for the first violated equivalence; side is "left" for
    /// the xs case and "right" for the sx case.
    pub violation: Option<(usize, usize, &'static str)>,
}

pub fn check_stability(table: &SemigroupTable) -> StabilityReport {
    let green = green_relations(table);
    let m = table.size();
    for s in 0..m {
        for x in 0..m {
            let sx = table.product(s, x);
            let right_j = green.j_class_of(sx) == green.j_class_of(s);
            let right_r = green.r_class_of(sx) == green.r_class_of(s);
            if right_j != right_r {
                return StabilityReport {
                    stable: false,
                    violation: Some((s, x, "right")),
                };
            }
            let xs = table.product(x, s);
            let left_j = green.j_class_of(xs) == green.j_class_of(s);
            let left_l = green.l_class_of(xs) == green.l_class_of(s);
            if left_j != left_l {
                return StabilityReport {
                    stable: false,
                    violation: Some((s, x, "left")),
                };
            }
        }
    }
    StabilityReport {
        stable: true,
        violation: None,
    }
}

/// Brute-force isomorphism between two subgroups given by index sets, by
/// backtracking over identity-and-product-respecting bijections. `None` when
/// either order exceeds 16 (deliberately out of scope beyond that).
pub fn subgroups_isomorphic(
    table: &SemigroupTable,
    g1: &MaximalSubgroup,
    g2: &MaximalSubgroup,
) -> Option<bool> {
    if g1.order > 16 || g2.order > 16 {
        return None;
    }
    if g1.order != g2.order {
        return Some(false);
    }
    let a = &g1.element_indices;
    let b = &g2.element_indices;
    let k = a.len();
    let pos_a: HashMap<usize, usize> = a.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let pos_b: HashMap<usize, usize> = b.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    // local multiplication tables
    let mul_a: Vec<Vec<usize>> = a
        .iter()
        .map(|&x| a.iter().map(|&y| pos_a[&table.product(x, y)]).collect())
        .collect();
    let mul_b: Vec<Vec<usize>> = b
        .iter()
        .map(|&x| b.iter().map(|&y| pos_b[&table.product(x, y)]).collect())
        .collect();

    fn extend(
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        mul_a: &[Vec<usize>],
        mul_b: &[Vec<usize>],
    ) -> bool {
        let Some(i) = map.iter().position(Option::is_none) else {
            return true;
        };
        for img in 0..mul_b.len() {
            if used[img] {
                continue;
            }
            map[i] = Some(img);
            used[img] = true;
            let consistent = (0..mul_a.len()).all(|x| {
                (0..mul_a.len()).all(|y| match (map[x], map[y], map[mul_a[x][y]]) {
                    (Some(fx), Some(fy), Some(fxy)) => mul_b[fx][fy] == fxy,
                    _ => true,
                })
            });
            if consistent && extend(map, used, mul_a, mul_b) {
                return true;
            }
            map[i] = None;
            used[img] = false;
        }
        false
    }

    let mut map: Vec<Option<usize>> = vec![None; k];
    let mut used = vec![false; k];
    // identities must correspond
    let ea = pos_a[&g1.identity_index];
    let eb = pos_b[&g2.identity_index];
    map[ea] = Some(eb);
    used[eb] = true;
    Some(extend(&mut map, &mut used, &mul_a, &mul_b))
}
