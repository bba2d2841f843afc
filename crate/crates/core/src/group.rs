//! Finite abelian label groups written as products of cyclic groups.
//!
//! Labels on arcs are nonzero elements of such a group. For the two-alphabet
//! families the label group is a direct sum `A ⊕ B`, and cover arcs draw their
//! labels from the `B` summand while all other arcs use `A`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A product `Z/m_1 × … × Z/m_k`. The empty product is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    moduli: Vec<u32>,
}

/// An element of a [`GroupSpec`], one residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn new(residues: Vec<u32>) -> Self {
        GroupElement { residues }
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residues.as_slice() {
            [single] => write!(f, "{single}"),
            many => {
                let parts: Vec<String> = many.iter().map(|r| r.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if let Some(bad) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::Structural(format!("modulus {bad} is below 2")));
        }
        Ok(GroupSpec { moduli })
    }

    /// `Z/m`.
    pub fn cyclic(m: u32) -> Self {
        GroupSpec::new(vec![m]).expect("cyclic modulus must be at least 2")
    }

    pub fn trivial() -> Self {
        GroupSpec { moduli: Vec::new() }
    }

    /// `Z/2`, the label group of unlabeled partitions.
    pub fn unlabeled() -> Self {
        GroupSpec::cyclic(2)
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }

    pub fn is_unlabeled(&self) -> bool {
        self.moduli == [2]
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.moduli.len()])
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.moduli.len() {
            return Err(self.shape_error(residues.len()));
        }
        Ok(GroupElement::new(residues.iter().zip(&self.moduli).map(|(&r, &m)| r.rem_euclid(m as i64) as u32).collect()))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.residues.len() == self.moduli.len() && a.residues.iter().zip(&self.moduli).all(|(r, m)| r < m)
    }

    fn shape_error(&self, len: usize) -> Error {
        Error::Structural(format!("element has {len} coordinates but the group {self} has {}", self.moduli.len()))
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else if a.residues.len() != self.moduli.len() {
            Err(self.shape_error(a.residues.len()))
        } else {
            Err(Error::Structural(format!("{a} is not reduced modulo {self}")))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(a.residues.iter().zip(&b.residues).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement::new(a.residues.iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect())
    }

    /// All elements in lexicographic order of residue vectors, zero first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (pos, &m) in self.moduli.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in &out {
                for r in 0..m {
                    let mut v = e.residues.clone();
                    v[pos] = r;
                    next.push(GroupElement::new(v));
                }
            }
            out = next;
        }
        out
    }

    /// The `order − 1` nonzero elements, lexicographically.
    pub fn nonzero_elements(&self) -> Vec<GroupElement> {
        self.elements().into_iter().filter(|e| !e.is_zero()).collect()
    }

    /// Position of `a` in [`GroupSpec::nonzero_elements`].
    pub fn nonzero_index(&self, a: &GroupElement) -> Option<usize> {
        if !self.contains(a) || a.is_zero() {
            return None;
        }
        let mut idx = 0usize;
        for (r, m) in a.residues.iter().zip(&self.moduli) {
            idx = idx * *m as usize + *r as usize;
        }
        Some(idx - 1)
    }

    /// Parses `Z2`, `Z2xZ3`, `Z2+Z3` or `trivial`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.eq_ignore_ascii_case("trivial") || trimmed == "1" {
            return Ok(GroupSpec::trivial());
        }
        let bytes = text.as_bytes();
        let mut moduli = Vec::new();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() || !(bytes[pos] == b'Z' || bytes[pos] == b'z') {
                return Err(Error::Parse { position: pos, message: "expected a cyclic factor such as Z3".into() });
            }
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits = &text[start..pos];
            let m: u32 = digits
                .parse()
                .map_err(|_| Error::Parse { position: start, message: "expected a modulus after Z".into() })?;
            if m < 2 {
                return Err(Error::Parse { position: start, message: format!("modulus {m} is below 2") });
            }
            moduli.push(m);
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            match bytes[pos] {
                b'x' | b'X' | b'+' | b'*' => pos += 1,
                _ => return Err(Error::Parse { position: pos, message: "expected 'x' or '+' between factors".into() }),
            }
        }
        Ok(GroupSpec { moduli })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// `A ⊕ B` together with the two coordinate embeddings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectSum {
    pub a: GroupSpec,
    pub b: GroupSpec,
    pub sum: GroupSpec,
}

impl DirectSum {
    pub fn new(a: &GroupSpec, b: &GroupSpec) -> Self {
        let mut moduli = a.moduli.clone();
        moduli.extend_from_slice(&b.moduli);
        DirectSum { a: a.clone(), b: b.clone(), sum: GroupSpec { moduli } }
    }

    pub fn embed_a(&self, x: &GroupElement) -> Result<GroupElement> {
        self.a.check(x)?;
        let mut v = x.residues.clone();
        v.extend(std::iter::repeat_n(0, self.b.moduli.len()));
        Ok(GroupElement::new(v))
    }

    pub fn embed_b(&self, x: &GroupElement) -> Result<GroupElement> {
        self.b.check(x)?;
        let mut v = vec![0; self.a.moduli.len()];
        v.extend_from_slice(&x.residues);
        Ok(GroupElement::new(v))
    }

    fn split<'x>(&self, x: &'x GroupElement) -> (&'x [u32], &'x [u32]) {
        x.residues.split_at(self.a.moduli.len())
    }

    /// True iff `x` is the image of a nonzero element of `A`.
    pub fn in_a_nonzero(&self, x: &GroupElement) -> bool {
        let (a, b) = self.split(x);
        self.sum.contains(x) && b.iter().all(|&r| r == 0) && a.iter().any(|&r| r != 0)
    }

    /// True iff `x` is the image of a nonzero element of `B`.
    pub fn in_b_nonzero(&self, x: &GroupElement) -> bool {
        let (a, b) = self.split(x);
        self.sum.contains(x) && a.iter().all(|&r| r == 0) && b.iter().any(|&r| r != 0)
    }

    pub fn a_labels(&self) -> Vec<GroupElement> {
        self.a.nonzero_elements().iter().map(|e| self.embed_a(e).expect("element of A")).collect()
    }

    pub fn b_labels(&self) -> Vec<GroupElement> {
        self.b.nonzero_elements().iter().map(|e| self.embed_b(e).expect("element of B")).collect()
    }
}

/// `A ⊕ B`; see [`DirectSum`] for the embeddings.
pub fn direct_sum(a: &GroupSpec, b: &GroupSpec) -> DirectSum {
    DirectSum::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &GroupSpec, r: &[i64]) -> GroupElement {
        g.element(r).unwrap()
    }

    #[test]
    fn small_sums() {
        let z3 = GroupSpec::cyclic(3);
        assert_eq!(z3.add(&el(&z3, &[1]), &el(&z3, &[2])).unwrap(), z3.zero());
        let v4 = GroupSpec::parse("Z2xZ2").unwrap();
        assert_eq!(v4.add(&el(&v4, &[1, 0]), &el(&v4, &[0, 1])).unwrap(), el(&v4, &[1, 1]));
        let z5 = GroupSpec::cyclic(5);
        assert_eq!(z5.add(&el(&z5, &[2]), &el(&z5, &[2])).unwrap(), el(&z5, &[4]));
    }

    #[test]
    fn negation() {
        let z3 = GroupSpec::cyclic(3);
        assert_eq!(z3.neg(&el(&z3, &[1])).unwrap(), el(&z3, &[2]));
        let z2 = GroupSpec::cyclic(2);
        assert_eq!(z2.neg(&el(&z2, &[1])).unwrap(), el(&z2, &[1]));
        let t = GroupSpec::trivial();
        assert_eq!(t.neg(&t.zero()).unwrap(), t.zero());
    }

    #[test]
    fn shape_mismatch_is_structural() {
        let z3 = GroupSpec::cyclic(3);
        let bad = GroupElement::new(vec![1, 1]);
        assert!(matches!(z3.add(&bad, &z3.zero()), Err(Error::Structural(_))));
        assert!(matches!(z3.neg(&bad), Err(Error::Structural(_))));
    }

    #[test]
    fn nonzero_elements_are_lexicographic() {
        let show = |g: &GroupSpec| g.nonzero_elements().iter().map(|e| e.to_string()).collect::<Vec<_>>();
        assert_eq!(show(&GroupSpec::cyclic(2)), ["1"]);
        assert_eq!(show(&GroupSpec::cyclic(3)), ["1", "2"]);
        assert_eq!(show(&GroupSpec::parse("Z2xZ2").unwrap()), ["(0,1)", "(1,0)", "(1,1)"]);
        assert!(GroupSpec::trivial().nonzero_elements().is_empty());
    }

    #[test]
    fn nonzero_index_matches_listing() {
        for spec in ["Z2", "Z5", "Z2xZ3", "Z3+Z2+Z2"] {
            let g = GroupSpec::parse(spec).unwrap();
            for (i, e) in g.nonzero_elements().iter().enumerate() {
                assert_eq!(g.nonzero_index(e), Some(i));
            }
            assert_eq!(g.nonzero_index(&g.zero()), None);
        }
    }

    #[test]
    fn direct_sum_embeddings() {
        let ds = direct_sum(&GroupSpec::cyclic(2), &GroupSpec::cyclic(3));
        assert_eq!(ds.sum.moduli(), &[2, 3]);
        assert_eq!(ds.embed_a(&GroupElement::new(vec![1])).unwrap(), GroupElement::new(vec![1, 0]));
        let t = direct_sum(&GroupSpec::trivial(), &GroupSpec::cyclic(3));
        assert_eq!(t.sum, GroupSpec::cyclic(3));
        let z33 = direct_sum(&GroupSpec::cyclic(3), &GroupSpec::cyclic(3));
        assert_eq!(z33.embed_b(&GroupElement::new(vec![2])).unwrap(), GroupElement::new(vec![0, 2]));
        assert!(z33.in_b_nonzero(&GroupElement::new(vec![0, 2])));
        assert!(!z33.in_a_nonzero(&GroupElement::new(vec![0, 2])));
        assert!(!z33.in_a_nonzero(&GroupElement::new(vec![1, 2])));
    }

    #[test]
    fn embeddings_are_injective_homomorphisms_meeting_at_zero() {
        let ds = direct_sum(&GroupSpec::parse("Z2xZ2").unwrap(), &GroupSpec::cyclic(3));
        let a_all = ds.a.elements();
        let b_all = ds.b.elements();
        for x in &a_all {
            for y in &a_all {
                let lhs = ds.embed_a(&ds.a.add(x, y).unwrap()).unwrap();
                let rhs = ds.sum.add(&ds.embed_a(x).unwrap(), &ds.embed_a(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
            for y in &b_all {
                let ex = ds.embed_a(x).unwrap();
                let ey = ds.embed_b(y).unwrap();
                assert_eq!(ex == ey, x.is_zero() && y.is_zero());
            }
        }
        let images: std::collections::HashSet<_> = b_all.iter().map(|y| ds.embed_b(y).unwrap()).collect();
        assert_eq!(images.len(), b_all.len());
    }

    #[test]
    fn group_laws_exhaustive() {
        for spec in ["Z2", "Z3", "Z2xZ2", "Z4", "Z2xZ3", "Z2xZ2xZ2", "Z4xZ4", "Z3xZ5"] {
            let g = GroupSpec::parse(spec).unwrap();
            assert!(g.order() <= 16);
            let all = g.elements();
            assert_eq!(all.len() as u64, g.order());
            for a in &all {
                assert!(g.add(a, &g.neg(a).unwrap()).unwrap().is_zero());
                for b in &all {
                    let ab = g.add(a, b).unwrap();
                    assert_eq!(ab, g.add(b, a).unwrap());
                    for c in &all {
                        assert_eq!(g.add(&ab, c).unwrap(), g.add(a, &g.add(b, c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn parse_reports_positions() {
        assert_eq!(GroupSpec::parse("Z2+Z3").unwrap().moduli(), &[2, 3]);
        assert_eq!(GroupSpec::parse("trivial").unwrap().order(), 1);
        match GroupSpec::parse("Z2xQ3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        match GroupSpec::parse("Z1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(GroupSpec::parse("Z2 Z3").is_err());
        assert_eq!(GroupSpec::parse("Z2xZ2").unwrap().to_string(), "Z2xZ2");
    }
}
