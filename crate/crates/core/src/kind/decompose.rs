use super::product::product;
use super::{Kind, KindElement, KindError};
use crate::term::{Node, Ranked, Term};

/// The elements of rank at most 2, in search order: tags by rank, then the
/// four kind-4 terms.
pub fn generators() -> Vec<KindElement> {
    KindElement::enumerate(2)
}

#[derive(Clone, Copy)]
enum Symbol {
    Port(usize),
    Gen(usize),
}

struct Search<'a> {
    gens: &'a [KindElement],
    rank: usize,
    size: usize,
    target: &'a KindElement,
    seq: Vec<Symbol>,
}

impl Search<'_> {
    /// Depth-first over preorder sequences with `open` unfilled slots.
    fn go(&mut self, open: usize, used: usize, seen: u64) -> Option<Term<KindElement>> {
        if open == 0 {
            if used != self.size || seen.count_ones() as usize != self.rank {
                return None;
            }
            let term = Term::new(self.build(&mut 0)).ok()?;
            return (product(&term).ok()? == *self.target).then_some(term);
        }
        for p in 1..=self.rank {
            let seen2 = seen | 1 << p;
            if !self.coverable(seen2, open - 1, used) {
                continue;
            }
            self.seq.push(Symbol::Port(p));
            if let Some(t) = self.go(open - 1, used, seen2) {
                return Some(t);
            }
            self.seq.pop();
        }
        if used < self.size {
            for (i, g) in self.gens.iter().enumerate() {
                if !self.coverable(seen, open - 1 + g.rank(), used + 1) {
                    continue;
                }
                self.seq.push(Symbol::Gen(i));
                if let Some(t) = self.go(open - 1 + g.rank(), used + 1, seen) {
                    return Some(t);
                }
                self.seq.pop();
            }
        }
        None
    }

    /// Whether the missing ports still fit: each further generator adds at
    /// most one open slot net.
    fn coverable(&self, seen: u64, open: usize, used: usize) -> bool {
        self.rank - seen.count_ones() as usize <= open + (self.size - used)
    }

    fn build(&self, at: &mut usize) -> Node<KindElement> {
        let sym = self.seq[*at];
        *at += 1;
        match sym {
            Symbol::Port(p) => Node::Port(p),
            Symbol::Gen(i) => {
                let g = &self.gens[i];
                Node::Inner(g.clone(), (0..g.rank()).map(|_| self.build(at)).collect())
            }
        }
    }
}

fn kind4_witness(t: &Term<crate::term::Letter>) -> Term<KindElement> {
    use crate::term::Letter;
    fn go(node: &Node<Letter>) -> Node<KindElement> {
        match node {
            Node::Port(i) => Node::Port(*i),
            Node::Inner(l, cs) => {
                let unit = Term::unit(l.clone());
                Node::Inner(KindElement::Kind4(unit), cs.iter().map(go).collect())
            }
        }
    }
    Term::new(go(t.root())).expect("same shape and ports as a valid term")
}

/// A term over generators (elements of rank at most 2) whose product is `a`.
///
/// A kind-4 element decomposes node by node into the units of `a` and `b`.
/// A tag `T<k>/<n>` is found by exhaustive search over terms of increasing
/// size (non-port nodes, at most `rank_bound`) whose labels are generators
/// of kind `k` or 4, in lexicographic order with ports before generators.
/// Every witness is checked with [`product`] before it is returned.
pub fn generator_decompose(a: &KindElement, rank_bound: usize) -> Result<Term<KindElement>, KindError> {
    a.validate()?;
    let rank = a.rank();
    if rank > rank_bound {
        return Err(KindError::RankAboveBound { rank, bound: rank_bound });
    }
    if let KindElement::Kind4(t) = a {
        let w = kind4_witness(t);
        return if product(&w)? == *a {
            Ok(w)
        } else {
            Err(KindError::SearchExhausted {
                target: a.to_string(),
                bound: rank_bound,
            })
        };
    }
    let kind = a.kind();
    let gens: Vec<KindElement> = generators()
        .into_iter()
        .filter(|g| g.kind() == kind || g.kind() == Kind::Four)
        .collect();
    let bound = rank_bound.max(1);
    for size in 1..=bound {
        let mut search = Search {
            gens: &gens,
            rank,
            size,
            target: a,
            seq: Vec::new(),
        };
        if let Some(t) = search.go(1, 0, 0) {
            // the root slot must be a generator: a lone port is not a term
            return Ok(t);
        }
    }
    Err(KindError::SearchExhausted {
        target: a.to_string(),
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kind::parse_kind_element;

    fn el(s: &str) -> KindElement {
        parse_kind_element(s).unwrap()
    }

    #[test]
    fn generator_is_its_own_witness() {
        let w = generator_decompose(&el("T3/1"), 4).unwrap();
        assert_eq!(w.to_string(), "(T3/1 1)");
    }

    #[test]
    fn kind4_decomposes_into_units() {
        let w = generator_decompose(&el("K4 (a 1 (b 2 3))"), 4).unwrap();
        assert_eq!(w.to_string(), "([K4 (a 1 2)] 1 ([K4 (b 1 2)] 2 3))");
        assert_eq!(product(&w).unwrap(), el("K4 (a 1 (b 2 3))"));
    }

    #[test]
    fn tag_of_rank_three() {
        let w = generator_decompose(&el("T1/3"), 4).unwrap();
        assert_eq!(product(&w).unwrap(), el("T1/3"));
        assert!(w.labels().iter().all(|l| l.rank() <= 2));
    }

    #[test]
    fn errors() {
        assert_eq!(
            generator_decompose(&el("T2/3"), 2),
            Err(KindError::RankAboveBound { rank: 3, bound: 2 })
        );
        assert_eq!(
            generator_decompose(&KindElement::Tag { kind: Kind::Three, rank: 0 }, 4),
            Err(KindError::Kind3RankZero)
        );
    }

    #[test]
    fn all_small_elements() {
        for e in KindElement::enumerate(3) {
            let w = generator_decompose(&e, 3).unwrap();
            assert_eq!(product(&w).unwrap(), e);
        }
    }
}
