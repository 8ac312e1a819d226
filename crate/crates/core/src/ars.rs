//! Finite abstract reduction systems and the set-level primitives over them.
//!
//! Objects are interned to dense [`ObjectId`]s. Every set of objects is a
//! [`StateSet`], kept sorted and duplicate-free so that extensional equality
//! is representation equality.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::ArsError;

/// Dense index of an object in its owning [`Ars`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub u32);

impl ObjectId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A canonical (sorted, duplicate-free) set of objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet {
    members: Vec<ObjectId>,
}

impl StateSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(id: ObjectId) -> Self {
        Self { members: vec![id] }
    }

    /// Builds the set from an already sorted, duplicate-free vector.
    fn from_sorted(members: Vec<ObjectId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: ObjectId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ObjectId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[ObjectId] {
        &self.members
    }

    pub fn first(&self) -> Option<ObjectId> {
        self.members.first().copied()
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        StateSet::from_sorted(out)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        StateSet::from_sorted(self.iter().filter(|&x| other.contains(x)).collect())
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        StateSet::from_sorted(self.iter().filter(|&x| !other.contains(x)).collect())
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.iter().all(|x| !other.contains(x))
    }

    pub fn max(&self) -> Option<ObjectId> {
        self.members.last().copied()
    }
}

impl FromIterator<ObjectId> for StateSet {
    fn from_iter<I: IntoIterator<Item = ObjectId>>(iter: I) -> Self {
        let mut members: Vec<ObjectId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        StateSet { members }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = ObjectId;
    type IntoIter = core::iter::Copied<core::slice::Iter<'a, ObjectId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

/// A finite prefix of a reduction sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExecutionPath {
    pub steps: Vec<ObjectId>,
    pub is_maximal: bool,
}

impl ExecutionPath {
    /// Checks that consecutive steps are edges and, when flagged maximal,
    /// that the path ends in a normal form.
    pub fn is_well_formed(&self, ars: &Ars) -> bool {
        let Some(&last) = self.steps.last() else {
            return false;
        };
        if self.steps.iter().any(|s| s.index() >= ars.len()) {
            return false;
        }
        let linked = self.steps.windows(2).all(|w| ars.has_edge(w[0], w[1]));
        linked && (!self.is_maximal || ars.is_normal_form(last))
    }
}

/// An abstract reduction system over a finite object set.
///
/// Immutable once built. Successor lists are sorted by id and carry no
/// duplicates; the normal-form set is cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ars {
    labels: Vec<String>,
    index: BTreeMap<String, ObjectId>,
    successors: Vec<Vec<ObjectId>>,
    predecessors: Vec<Vec<ObjectId>>,
    normal_forms: StateSet,
}

impl Ars {
    /// Builds an ARS from object labels and an edge list over their ids.
    ///
    /// Duplicate edges are dropped; self-loops are kept.
    pub fn new<I>(labels: Vec<String>, edges: I) -> Result<Self, ArsError>
    where
        I: IntoIterator<Item = (ObjectId, ObjectId)>,
    {
        let n = labels.len();
        if n > u32::MAX as usize {
            return Err(ArsError::TooManyObjects(n));
        }
        let mut index = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), ObjectId(i as u32)).is_some() {
                return Err(ArsError::DuplicateLabel(label.clone()));
            }
        }
        let mut successors = vec![Vec::new(); n];
        for (src, dst) in edges {
            for id in [src, dst] {
                if id.index() >= n {
                    return Err(ArsError::UnknownObject(id));
                }
            }
            successors[src.index()].push(dst);
        }
        let mut predecessors = vec![Vec::new(); n];
        for (i, succ) in successors.iter_mut().enumerate() {
            succ.sort_unstable();
            succ.dedup();
            for &t in succ.iter() {
                predecessors[t.index()].push(ObjectId(i as u32));
            }
        }
        let normal_forms = StateSet::from_sorted(
            (0..n)
                .filter(|&i| successors[i].is_empty())
                .map(|i| ObjectId(i as u32))
                .collect(),
        );
        Ok(Ars {
            labels,
            index,
            successors,
            predecessors,
            normal_forms,
        })
    }

    /// Builds an ARS from label pairs; every label used by an edge must be declared.
    pub fn from_labeled_edges<S: AsRef<str>>(
        labels: &[S],
        edges: &[(S, S)],
    ) -> Result<Self, ArsError> {
        let owned: Vec<String> = labels.iter().map(|l| String::from(l.as_ref())).collect();
        let lookup = |l: &str| -> Result<ObjectId, ArsError> {
            owned
                .iter()
                .position(|x| x == l)
                .map(|i| ObjectId(i as u32))
                .ok_or_else(|| ArsError::UnknownLabel(String::from(l)))
        };
        let mut ids = Vec::with_capacity(edges.len());
        for (s, t) in edges {
            ids.push((lookup(s.as_ref())?, lookup(t.as_ref())?));
        }
        Ars::new(owned, ids)
    }

    /// Returns a copy extended by one fresh object and extra edges.
    ///
    /// Existing ids, labels and edges are preserved; the fresh object gets
    /// the next id.
    pub fn extend_with(
        &self,
        label: String,
        extra_edges: impl IntoIterator<Item = (ObjectId, ObjectId)>,
    ) -> Result<(Ars, ObjectId), ArsError> {
        let fresh = ObjectId(self.len() as u32);
        let mut labels = self.labels.clone();
        labels.push(label);
        let edges = self.edges().chain(extra_edges).collect::<Vec<_>>();
        Ok((Ars::new(labels, edges)?, fresh))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.len() as u32).map(ObjectId)
    }

    pub fn all(&self) -> StateSet {
        StateSet::from_sorted(self.objects().collect())
    }

    pub fn label(&self, id: ObjectId) -> &str {
        &self.labels[id.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Option<ObjectId> {
        self.index.get(label).copied()
    }

    pub fn successors(&self, id: ObjectId) -> &[ObjectId] {
        &self.successors[id.index()]
    }

    pub fn predecessors(&self, id: ObjectId) -> &[ObjectId] {
        &self.predecessors[id.index()]
    }

    pub fn has_edge(&self, src: ObjectId, dst: ObjectId) -> bool {
        self.successors[src.index()].binary_search(&dst).is_ok()
    }

    /// All edges, ordered by source then destination.
    pub fn edges(&self) -> impl Iterator<Item = (ObjectId, ObjectId)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(i, succ)| succ.iter().map(move |&t| (ObjectId(i as u32), t)))
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn normal_forms(&self) -> &StateSet {
        &self.normal_forms
    }

    pub fn is_normal_form(&self, id: ObjectId) -> bool {
        self.successors[id.index()].is_empty()
    }

    /// Builds a set from labels, failing on the first unknown one.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<StateSet, ArsError> {
        labels
            .iter()
            .map(|l| {
                self.id_of(l.as_ref())
                    .ok_or_else(|| ArsError::UnknownLabel(String::from(l.as_ref())))
            })
            .collect()
    }

    pub fn check_set(&self, set: &StateSet) -> Result<(), ArsError> {
        match set.max() {
            Some(id) if id.index() >= self.len() => Err(ArsError::UnknownObject(id)),
            _ => Ok(()),
        }
    }

    /// One-step successors of `p`.
    pub fn derivative(&self, p: &StateSet) -> Result<StateSet, ArsError> {
        self.check_set(p)?;
        Ok(p.iter()
            .flat_map(|s| self.successors(s).iter().copied())
            .collect())
    }

    /// Nonempty and free of normal forms.
    pub fn is_runnable(&self, p: &StateSet) -> Result<bool, ArsError> {
        self.check_set(p)?;
        Ok(!p.is_empty() && p.is_disjoint(&self.normal_forms))
    }

    /// Reflexive-transitive closure of `p` under the reduction relation.
    pub fn reachable(&self, p: &StateSet) -> Result<StateSet, ArsError> {
        self.check_set(p)?;
        Ok(self.closure(p.iter(), |_| true))
    }

    /// States reachable from `p \ q` without ever entering `q`.
    pub fn avoiding_region(&self, p: &StateSet, q: &StateSet) -> Result<StateSet, ArsError> {
        self.check_set(p)?;
        self.check_set(q)?;
        Ok(self.closure(p.iter().filter(|&s| !q.contains(s)), |t| !q.contains(t)))
    }

    fn closure(
        &self,
        start: impl Iterator<Item = ObjectId>,
        admit: impl Fn(ObjectId) -> bool,
    ) -> StateSet {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for s in start {
            if !seen[s.index()] {
                seen[s.index()] = true;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &t in self.successors(s) {
                if !seen[t.index()] && admit(t) {
                    seen[t.index()] = true;
                    queue.push_back(t);
                }
            }
        }
        StateSet::from_sorted(
            seen.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| ObjectId(i as u32))
                .collect(),
        )
    }

    /// Renders a set as comma-joined labels in id order.
    pub fn render_set(&self, set: &StateSet) -> String {
        let mut out = String::new();
        for (i, id) in set.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(self.label(id));
        }
        out
    }
}
