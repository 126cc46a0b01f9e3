use std::collections::HashSet;

use super::{Letter, Presentation, Word};

/// Cheap Tietze simplification.
///
/// Repeats until stable: cyclically reduce relators, drop trivial and
/// duplicate relators, and eliminate every generator that occurs as a
/// length-one relator. The presented group is unchanged and the total relator
/// length never grows.
pub fn simplify(presentation: &Presentation) -> Presentation {
    let mut names = presentation.generator_names().to_vec();
    let mut relators: Vec<Word> = presentation.relators().to_vec();
    loop {
        let mut seen = HashSet::new();
        relators = relators
            .into_iter()
            .map(|r| r.cyclically_reduced())
            .filter(|r| !r.is_empty() && seen.insert(r.clone()))
            .collect();

        let mut killed = vec![false; names.len()];
        let mut any = false;
        for r in &relators {
            if r.len() == 1 {
                killed[r.letters()[0].generator()] = true;
                any = true;
            }
        }
        if !any {
            break;
        }
        let mut renumber = vec![usize::MAX; names.len()];
        let mut kept = Vec::new();
        for (g, name) in names.iter().enumerate() {
            if !killed[g] {
                renumber[g] = kept.len();
                kept.push(name.clone());
            }
        }
        relators = relators
            .iter()
            .map(|r| {
                r.map_letters(|l| {
                    let g = renumber[l.generator()];
                    (g != usize::MAX).then(|| Letter::new(g, l.is_inverse()))
                })
            })
            .collect();
        names = kept;
    }
    Presentation::from_parts_unchecked(names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::free_group;

    #[test]
    fn eliminates_generator_and_reduces() {
        let p = Presentation::parse("gens: a b\nrel: a\nrel: abAB\n").unwrap();
        let s = simplify(&p);
        assert_eq!(s.generator_names(), ["b"]);
        assert!(s.relators().is_empty());
    }

    #[test]
    fn removes_duplicates() {
        let p = Presentation::parse("gens: a\nrel: aa\nrel: aa\n").unwrap();
        assert_eq!(simplify(&p).to_text(), "gens: a\nrel: aa\n");
    }

    #[test]
    fn free_group_unchanged() {
        assert_eq!(simplify(&free_group(3)), free_group(3));
    }

    #[test]
    fn cascade_of_eliminations() {
        // a = 1 makes ab a length-one relator for b.
        let p = Presentation::parse("gens: a b c\nrel: a\nrel: ab\nrel: cc\n").unwrap();
        let s = simplify(&p);
        assert_eq!(s.to_text(), "gens: c\nrel: cc\n");
    }
}
