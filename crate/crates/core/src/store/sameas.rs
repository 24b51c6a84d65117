//! Union-find over `owl:sameAs` links, tracking the preferred member of
//! each class.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::TermId;

#[derive(Debug, Clone, Default)]
pub(super) struct SameAs {
    parent: HashMap<TermId, TermId>,
    // root -> (best member, all members)
    classes: HashMap<TermId, (TermId, Vec<TermId>)>,
}

impl SameAs {
    fn root(&self, mut id: TermId) -> TermId {
        while let Some(&p) = self.parent.get(&id) {
            if p == id {
                break;
            }
            id = p;
        }
        id
    }

    fn ensure(&mut self, id: TermId) {
        self.parent.entry(id).or_insert(id);
        self.classes.entry(id).or_insert_with(|| (id, vec![id]));
    }

    /// `prefer(a, b) == Less` means `a` is the better representative.
    pub fn union(&mut self, a: TermId, b: TermId, prefer: impl Fn(TermId, TermId) -> Ordering) {
        self.ensure(a);
        self.ensure(b);
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.classes[&ra].1.len() >= self.classes[&rb].1.len() {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let (small_best, small_members) = self.classes.remove(&small).expect("root has a class");
        self.parent.insert(small, big);
        let entry = self.classes.get_mut(&big).expect("root has a class");
        if prefer(small_best, entry.0) == Ordering::Less {
            entry.0 = small_best;
        }
        entry.1.extend(small_members);
    }

    pub fn representative(&self, id: TermId) -> TermId {
        if !self.parent.contains_key(&id) {
            return id;
        }
        self.classes[&self.root(id)].0
    }

    pub fn members(&self, id: TermId) -> Vec<TermId> {
        if !self.parent.contains_key(&id) {
            return vec![id];
        }
        self.classes[&self.root(id)].1.clone()
    }
}
