use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::cosets::CosetTable;
use crate::error::{Error, Result};

/// Largest group order the naive engine accepts.
pub const MAX_ORDER: usize = 10_000;

#[derive(Clone, Debug)]
enum Lookup {
    /// The first base point determines the element.
    Point(Vec<u32>),
    Tuple(HashMap<Vec<u32>, u32>),
}

/// An explicit finite group: a faithful permutation action with every element
/// listed. Element 0 is the identity and the product `a * b` means "apply
/// `a`, then `b`".
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Vec<u32>>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    base: Vec<usize>,
    lookup: Lookup,
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| b[x as usize]).collect()
}

impl FiniteGroup {
    /// Closes the given permutations (image vectors on `0..degree`) under
    /// composition.
    pub fn from_permutations(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        let gens: Vec<Vec<u32>> = generators
            .iter()
            .map(|g| {
                let mut seen = vec![false; degree];
                if g.len() != degree
                    || g.iter()
                        .any(|&x| x >= degree || std::mem::replace(&mut seen[x], true))
                {
                    return Err(Error::InvalidArgument("generator is not a permutation".into()));
                }
                Ok(g.iter().map(|&x| x as u32).collect())
            })
            .collect::<Result<_>>()?;
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity.clone(), 0)]);
        let mut elements = vec![identity];
        let mut i = 0;
        while i < elements.len() {
            for g in &gens {
                let prod = compose(&elements[i], g);
                if !index.contains_key(&prod) {
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::exhausted("group order", MAX_ORDER as u64));
                    }
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                }
            }
            i += 1;
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Self::finish(degree, elements, generators))
    }

    /// The quotient by a normal subgroup, from its coset table: element `c`
    /// is the coset numbered `c`, acting on the cosets by right
    /// multiplication.
    pub(crate) fn from_regular_table(table: &CosetTable) -> Result<Self> {
        let n = table.index();
        if n > MAX_ORDER {
            return Err(Error::exhausted("group order", MAX_ORDER as u64));
        }
        let cols = table.columns();
        let gen_perm: Vec<Vec<u32>> = (0..cols)
            .map(|x| (0..n).map(|c| table.image_col(c, x) as u32).collect())
            .collect();
        let mut elements: Vec<Option<Vec<u32>>> = vec![None; n];
        elements[0] = Some((0..n as u32).collect());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for (x, g) in gen_perm.iter().enumerate() {
                let d = table.image_col(c, x);
                if elements[d].is_none() {
                    let e = compose(elements[c].as_ref().expect("visited"), g);
                    debug_assert_eq!(e[0] as usize, d);
                    elements[d] = Some(e);
                    queue.push_back(d);
                }
            }
        }
        let elements: Vec<Vec<u32>> = elements.into_iter().map(|e| e.expect("transitive")).collect();
        let generators = (0..cols / 2).map(|g| table.image_col(0, 2 * g)).collect();
        Ok(Self::finish(n, elements, generators))
    }

    fn finish(degree: usize, elements: Vec<Vec<u32>>, generators: Vec<usize>) -> Self {
        let n = elements.len();
        let base = choose_base(degree, &elements);
        let lookup = if base.len() == 1 || degree == 0 {
            let mut by_point = vec![u32::MAX; degree.max(1)];
            for (i, e) in elements.iter().enumerate() {
                let key = if degree == 0 { 0 } else { e[base[0]] as usize };
                by_point[key] = i as u32;
            }
            Lookup::Point(by_point)
        } else {
            Lookup::Tuple(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (base.iter().map(|&b| e[b]).collect(), i as u32))
                    .collect(),
            )
        };
        let mut g = FiniteGroup {
            degree,
            elements,
            generators,
            inverses: Vec::new(),
            base,
            lookup,
        };
        g.inverses = (0..n)
            .map(|i| {
                let mut inv = vec![0u32; degree];
                for (x, &y) in g.elements[i].iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                g.find(&inv).expect("closed under inverses")
            })
            .collect();
        g
    }

    fn find(&self, perm: &[u32]) -> Option<usize> {
        match &self.lookup {
            Lookup::Point(v) => {
                if self.degree == 0 {
                    return Some(0);
                }
                let i = v[perm[self.base[0]] as usize];
                (i != u32::MAX).then_some(i as usize)
            }
            Lookup::Tuple(m) => {
                let key: Vec<u32> = self.base.iter().map(|&b| perm[b]).collect();
                m.get(&key).map(|&i| i as usize)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Indices of the distinguished generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn permutation(&self, element: usize) -> &[u32] {
        &self.elements[element]
    }

    /// Looks up an element by its permutation.
    pub fn element_of(&self, perm: &[usize]) -> Option<usize> {
        if perm.len() != self.degree {
            return None;
        }
        let p: Vec<u32> = perm.iter().map(|&x| x as u32).collect();
        self.find(&p).filter(|&i| self.elements[i] == p)
    }

    /// `a * b`: apply `a`, then `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (&self.elements[a], &self.elements[b]);
        match &self.lookup {
            Lookup::Point(v) => {
                if self.degree == 0 {
                    return 0;
                }
                v[pb[pa[self.base[0]] as usize] as usize] as usize
            }
            Lookup::Tuple(m) => {
                let key: Vec<u32> = self.base.iter().map(|&x| pb[pa[x] as usize]).collect();
                m[&key] as usize
            }
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g⁻¹ x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverse(ba), ab)
    }

    pub fn power(&self, a: usize, n: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1u64, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Greedy base: points added in order until the images distinguish all
/// elements.
fn choose_base(degree: usize, elements: &[Vec<u32>]) -> Vec<usize> {
    if degree == 0 || elements.len() <= 1 {
        return vec![0];
    }
    let mut base = Vec::new();
    let mut classes: Vec<u64> = vec![0; elements.len()];
    let mut distinct = 1usize;
    for point in 0..degree {
        let mut ids: HashMap<(u64, u32), u64> = HashMap::new();
        let refined: Vec<u64> = elements
            .iter()
            .zip(&classes)
            .map(|(e, &c)| {
                let next = ids.len() as u64;
                *ids.entry((c, e[point])).or_insert(next)
            })
            .collect();
        if ids.len() > distinct {
            distinct = ids.len();
            classes = refined;
            base.push(point);
            if distinct == elements.len() {
                break;
            }
        }
    }
    base
}
