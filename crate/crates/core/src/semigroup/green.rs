//! Green's relations computed straight from their definitions: two elements
//! are R- (L-, J-) equivalent iff they generate the same principal right
//! (left, two-sided) ideal, and H = R intersect L.

use std::collections::HashMap;

use super::SemigroupTable;

/// Dense bit set over element indices; the ideal sets get compared and
/// intersected often enough that Vec<bool> would hurt.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

/// The four Green partitions of a finite semigroup plus the J-order.
#[derive(Debug, Clone)]
pub struct GreenStructure {
    r_classes: Vec<Vec<usize>>,
    l_classes: Vec<Vec<usize>>,
    j_classes: Vec<Vec<usize>>,
    h_classes: Vec<Vec<usize>>,
    r_of: Vec<usize>,
    l_of: Vec<usize>,
    j_of: Vec<usize>,
    h_of: Vec<usize>,
    /// j_leq[a][b]: the principal ideal of class a is contained in that of b.
    j_leq: Vec<Vec<bool>>,
}

impl GreenStructure {
    pub fn r_classes(&self) -> &[Vec<usize>] {
        &self.r_classes
    }
    pub fn l_classes(&self) -> &[Vec<usize>] {
        &self.l_classes
    }
    pub fn j_classes(&self) -> &[Vec<usize>] {
        &self.j_classes
    }
    pub fn h_classes(&self) -> &[Vec<usize>] {
        &self.h_classes
    }
    pub fn r_class_of(&self, i: usize) -> usize {
        self.r_of[i]
    }
    pub fn l_class_of(&self, i: usize) -> usize {
        self.l_of[i]
    }
    pub fn j_class_of(&self, i: usize) -> usize {
        self.j_of[i]
    }
    pub fn h_class_of(&self, i: usize) -> usize {
        self.h_of[i]
    }
    pub fn h_class_members(&self, class: usize) -> &[usize] {
        &self.h_classes[class]
    }
    pub fn j_class_members(&self, class: usize) -> &[usize] {
        &self.j_classes[class]
    }

    /// Containment order on J-classes: `j_leq(a, b)` iff the two-sided
    /// principal ideal of a is contained in that of b.
    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        self.j_leq[a][b]
    }

    pub fn j_class_count(&self) -> usize {
        self.j_classes.len()
    }
}

/// Principal two-sided ideal of s: {s} ∪ sS ∪ Ss ∪ SsS, as sorted indices.
pub fn principal_ideal(table: &SemigroupTable, s: usize) -> Vec<usize> {
    principal_ideal_bits(table, s).iter_ones().collect()
}

fn principal_right_bits(table: &SemigroupTable, s: usize) -> BitSet {
    let m = table.size();
    let mut set = BitSet::new(m);
    set.insert(s);
    for x in 0..m {
        set.insert(table.product(s, x));
    }
    set
}

fn principal_left_bits(table: &SemigroupTable, s: usize) -> BitSet {
    let m = table.size();
    let mut set = BitSet::new(m);
    set.insert(s);
    for x in 0..m {
        set.insert(table.product(x, s));
    }
    set
}

fn principal_ideal_bits(table: &SemigroupTable, s: usize) -> BitSet {
    let m = table.size();
    let mut set = BitSet::new(m);
    set.insert(s);
    for x in 0..m {
        set.insert(table.product(s, x));
        set.insert(table.product(x, s));
        let xs = table.product(x, s);
        for y in 0..m {
            set.insert(table.product(xs, y));
        }
    }
    set
}

/// Group elements into classes of equal key sets; class ids are assigned in
/// order of each class's least element, members sorted ascending.
fn partition_by(sets: &[BitSet]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut ids: HashMap<&BitSet, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut of = vec![0usize; sets.len()];
    for (i, key) in sets.iter().enumerate() {
        let id = *ids.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(i);
        of[i] = id;
    }
    (classes, of)
}

pub fn green_relations(table: &SemigroupTable) -> GreenStructure {
    let m = table.size();
    let right: Vec<BitSet> = (0..m).map(|s| principal_right_bits(table, s)).collect();
    let left: Vec<BitSet> = (0..m).map(|s| principal_left_bits(table, s)).collect();
    let two: Vec<BitSet> = (0..m).map(|s| principal_ideal_bits(table, s)).collect();

    let (r_classes, r_of) = partition_by(&right);
    let (l_classes, l_of) = partition_by(&left);
    let (j_classes, j_of) = partition_by(&two);

    // H = R ∧ L: elements sharing both classes
    let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut h_classes: Vec<Vec<usize>> = Vec::new();
    let mut h_of = vec![0usize; m];
    for i in 0..m {
        let key = (r_of[i], l_of[i]);
        let id = *h_ids.entry(key).or_insert_with(|| {
            h_classes.push(Vec::new());
            h_classes.len() - 1
        });
        h_classes[id].push(i);
        h_of[i] = id;
    }

    let jc = j_classes.len();
    let mut j_leq = vec![vec![false; jc]; jc];
    for (a, row) in j_leq.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = two[j_classes[a][0]].is_subset(&two[j_classes[b][0]]);
        }
    }

    GreenStructure {
        r_classes,
        l_classes,
        j_classes,
        h_classes,
        r_of,
        l_of,
        j_of,
        h_of,
        j_leq,
    }
}
