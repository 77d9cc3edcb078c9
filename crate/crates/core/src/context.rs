//! Formal contexts: named objects, named attributes, and a dense boolean
//! incidence relation.
//!
//! The relation is stored twice — once as object-major bit rows and once as
//! attribute-major bit columns — so that the intent of an object set is a
//! running AND over rows and the extent of an attribute set a running AND
//! over columns. Contexts are value-immutable after construction and safe to
//! share across threads.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use sha2::{Digest as _, Sha256};

use crate::bitset::BitSet;
use crate::error::{Error, NameKind};

/// A set of object indices drawn from one context's object range.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectSet {
    bits: BitSet,
}

/// A set of attribute indices drawn from one context's attribute range.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttributeSet {
    bits: BitSet,
}

macro_rules! index_set_impl {
    ($ty:ident) => {
        impl $ty {
            pub(crate) fn from_bits(bits: BitSet) -> Self {
                Self { bits }
            }

            pub fn bits(&self) -> &BitSet {
                &self.bits
            }

            pub fn universe(&self) -> usize {
                self.bits.universe()
            }

            pub fn len(&self) -> usize {
                self.bits.len()
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_empty()
            }

            pub fn contains(&self, i: usize) -> bool {
                self.bits.contains(i)
            }

            pub fn iter(&self) -> crate::bitset::Indices<'_> {
                self.bits.iter()
            }

            pub fn indices(&self) -> Vec<usize> {
                self.bits.indices()
            }

            pub fn union(&self, other: &Self) -> Self {
                Self::from_bits(self.bits.union(&other.bits))
            }

            pub fn intersection(&self, other: &Self) -> Self {
                Self::from_bits(self.bits.intersection(&other.bits))
            }

            pub fn difference(&self, other: &Self) -> Self {
                Self::from_bits(self.bits.difference(&other.bits))
            }

            pub fn complement(&self) -> Self {
                Self::from_bits(self.bits.complement())
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.bits.is_subset(&other.bits)
            }

            pub fn is_disjoint(&self, other: &Self) -> bool {
                self.bits.is_disjoint(&other.bits)
            }
        }
    };
}

index_set_impl!(ObjectSet);
index_set_impl!(AttributeSet);

/// A formal context: objects, attributes, and which object has which
/// attribute.
#[derive(Clone)]
pub struct FormalContext {
    object_names: Vec<String>,
    attribute_names: Vec<String>,
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
    object_lookup: BTreeMap<String, usize>,
    attribute_lookup: BTreeMap<String, usize>,
}

impl PartialEq for FormalContext {
    fn eq(&self, other: &Self) -> bool {
        self.object_names == other.object_names
            && self.attribute_names == other.attribute_names
            && self.rows == other.rows
    }
}

impl Eq for FormalContext {}

impl core::fmt::Debug for FormalContext {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FormalContext")
            .field("objects", &self.object_names)
            .field("attributes", &self.attribute_names)
            .field("rows", &self.rows)
            .finish()
    }
}

fn validate_names(names: &[String], kind: NameKind) -> Result<BTreeMap<String, usize>, Error> {
    let mut lookup = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::EmptyName { kind });
        }
        if name.contains('\n') || name.contains('\r') {
            return Err(Error::InvalidName {
                kind,
                name: name.clone(),
            });
        }
        if lookup.insert(name.clone(), i).is_some() {
            return Err(Error::NameCollision {
                kind,
                name: name.clone(),
            });
        }
    }
    Ok(lookup)
}

impl FormalContext {
    /// Builds a context from declared names and a list of (object, attribute)
    /// crosses.
    pub fn new<O, A, C, S>(object_names: O, attribute_names: A, crosses: C) -> Result<Self, Error>
    where
        O: IntoIterator,
        O::Item: Into<String>,
        A: IntoIterator,
        A::Item: Into<String>,
        C: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let object_names: Vec<String> = object_names.into_iter().map(Into::into).collect();
        let attribute_names: Vec<String> = attribute_names.into_iter().map(Into::into).collect();
        let object_lookup = validate_names(&object_names, NameKind::Object)?;
        let attribute_lookup = validate_names(&attribute_names, NameKind::Attribute)?;

        let mut rows: Vec<BitSet> = (0..object_names.len())
            .map(|_| BitSet::empty(attribute_names.len()))
            .collect();
        for (g, m) in crosses {
            let g = *object_lookup.get(g.as_ref()).ok_or_else(|| Error::UnknownName {
                kind: NameKind::Object,
                name: g.as_ref().to_owned(),
            })?;
            let m = *attribute_lookup
                .get(m.as_ref())
                .ok_or_else(|| Error::UnknownName {
                    kind: NameKind::Attribute,
                    name: m.as_ref().to_owned(),
                })?;
            rows[g].insert(m);
        }

        Ok(Self::assemble(
            object_names,
            attribute_names,
            rows,
            object_lookup,
            attribute_lookup,
        ))
    }

    /// Builds a context from pre-assembled bit rows (one per object, each
    /// over the attribute range).
    pub fn from_rows(
        object_names: Vec<String>,
        attribute_names: Vec<String>,
        rows: Vec<BitSet>,
    ) -> Result<Self, Error> {
        let object_lookup = validate_names(&object_names, NameKind::Object)?;
        let attribute_lookup = validate_names(&attribute_names, NameKind::Attribute)?;
        if rows.len() != object_names.len()
            || rows.iter().any(|r| r.universe() != attribute_names.len())
        {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self::assemble(
            object_names,
            attribute_names,
            rows,
            object_lookup,
            attribute_lookup,
        ))
    }

    fn assemble(
        object_names: Vec<String>,
        attribute_names: Vec<String>,
        rows: Vec<BitSet>,
        object_lookup: BTreeMap<String, usize>,
        attribute_lookup: BTreeMap<String, usize>,
    ) -> Self {
        let mut cols: Vec<BitSet> = (0..attribute_names.len())
            .map(|_| BitSet::empty(object_names.len()))
            .collect();
        for (g, row) in rows.iter().enumerate() {
            for m in row.iter() {
                cols[m].insert(g);
            }
        }
        FormalContext {
            object_names,
            attribute_names,
            rows,
            cols,
            object_lookup,
            attribute_lookup,
        }
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn object_name(&self, g: usize) -> &str {
        &self.object_names[g]
    }

    pub fn attribute_name(&self, m: usize) -> &str {
        &self.attribute_names[m]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_lookup.get(name).copied()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_lookup.get(name).copied()
    }

    /// True iff object `g` has attribute `m`.
    pub fn has(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// Number of pairs in the incidence relation.
    pub fn relation_size(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }

    pub(crate) fn row(&self, g: usize) -> &BitSet {
        &self.rows[g]
    }

    pub(crate) fn col(&self, m: usize) -> &BitSet {
        &self.cols[m]
    }

    // ---- set constructors -------------------------------------------------

    pub fn empty_objects(&self) -> ObjectSet {
        ObjectSet::from_bits(BitSet::empty(self.object_count()))
    }

    pub fn full_objects(&self) -> ObjectSet {
        ObjectSet::from_bits(BitSet::full(self.object_count()))
    }

    pub fn empty_attributes(&self) -> AttributeSet {
        AttributeSet::from_bits(BitSet::empty(self.attribute_count()))
    }

    pub fn full_attributes(&self) -> AttributeSet {
        AttributeSet::from_bits(BitSet::full(self.attribute_count()))
    }

    pub fn object_set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<ObjectSet, Error> {
        BitSet::from_indices(self.object_count(), indices)
            .map(ObjectSet::from_bits)
            .ok_or(Error::InvalidSet {
                kind: NameKind::Object,
                expected: self.object_count(),
                found: usize::MAX,
            })
    }

    pub fn attribute_set<I: IntoIterator<Item = usize>>(
        &self,
        indices: I,
    ) -> Result<AttributeSet, Error> {
        BitSet::from_indices(self.attribute_count(), indices)
            .map(AttributeSet::from_bits)
            .ok_or(Error::InvalidSet {
                kind: NameKind::Attribute,
                expected: self.attribute_count(),
                found: usize::MAX,
            })
    }

    pub fn objects_by_name<S: AsRef<str>, I: IntoIterator<Item = S>>(
        &self,
        names: I,
    ) -> Result<ObjectSet, Error> {
        let mut bits = BitSet::empty(self.object_count());
        for name in names {
            let i = self
                .object_index(name.as_ref())
                .ok_or_else(|| Error::UnknownName {
                    kind: NameKind::Object,
                    name: name.as_ref().to_owned(),
                })?;
            bits.insert(i);
        }
        Ok(ObjectSet::from_bits(bits))
    }

    pub fn attributes_by_name<S: AsRef<str>, I: IntoIterator<Item = S>>(
        &self,
        names: I,
    ) -> Result<AttributeSet, Error> {
        let mut bits = BitSet::empty(self.attribute_count());
        for name in names {
            let i = self
                .attribute_index(name.as_ref())
                .ok_or_else(|| Error::UnknownName {
                    kind: NameKind::Attribute,
                    name: name.as_ref().to_owned(),
                })?;
            bits.insert(i);
        }
        Ok(AttributeSet::from_bits(bits))
    }

    pub(crate) fn check_objects(&self, s: &ObjectSet) -> Result<(), Error> {
        if s.universe() != self.object_count() {
            return Err(Error::InvalidSet {
                kind: NameKind::Object,
                expected: self.object_count(),
                found: s.universe(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_attributes(&self, t: &AttributeSet) -> Result<(), Error> {
        if t.universe() != self.attribute_count() {
            return Err(Error::InvalidSet {
                kind: NameKind::Attribute,
                expected: self.attribute_count(),
                found: t.universe(),
            });
        }
        Ok(())
    }

    // ---- Birkhoff operators ------------------------------------------------

    /// Attributes shared by every object in `s`. `intent(∅) = M`.
    pub fn intent(&self, s: &ObjectSet) -> Result<AttributeSet, Error> {
        self.check_objects(s)?;
        let mut acc = BitSet::full(self.attribute_count());
        for g in s.iter() {
            acc.intersect_with(&self.rows[g]);
        }
        Ok(AttributeSet::from_bits(acc))
    }

    /// Objects having every attribute in `t`. `extent(∅) = G`.
    pub fn extent(&self, t: &AttributeSet) -> Result<ObjectSet, Error> {
        self.check_attributes(t)?;
        let mut acc = BitSet::full(self.object_count());
        for m in t.iter() {
            acc.intersect_with(&self.cols[m]);
        }
        Ok(ObjectSet::from_bits(acc))
    }

    /// The context with the complemented relation over the same names.
    pub fn negate(&self) -> FormalContext {
        let rows = self.rows.iter().map(BitSet::complement).collect();
        Self::assemble(
            self.object_names.clone(),
            self.attribute_names.clone(),
            rows,
            self.object_lookup.clone(),
            self.attribute_lookup.clone(),
        )
    }

    /// SHA-256 of a canonical byte encoding, as a hex string. Two contexts
    /// share a digest iff they are equal.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(b"uum-context-v1");
        for name in self.object_names.iter().chain(&self.attribute_names) {
            hasher.update(name.len().to_le_bytes());
            hasher.update(name.as_bytes());
        }
        hasher.update(self.object_names.len().to_le_bytes());
        hasher.update(self.attribute_names.len().to_le_bytes());
        for row in &self.rows {
            for m in 0..self.attribute_count() {
                hasher.update(if row.contains(m) { b"1" } else { b"0" });
            }
        }
        let mut out = String::with_capacity(64);
        for byte in hasher.finalize() {
            let _ = write!(out, "{:02x}", byte);
        }
        out
    }

    // ---- rendering ---------------------------------------------------------

    /// Renders an object set as `{A, C}` using declared names in index order.
    pub fn format_objects(&self, s: &ObjectSet) -> String {
        format_names(s.iter().map(|g| self.object_name(g)))
    }

    /// Renders an attribute set as `{α, β}` using declared names in index order.
    pub fn format_attributes(&self, t: &AttributeSet) -> String {
        format_names(t.iter().map(|m| self.attribute_name(m)))
    }
}

fn format_names<'a, I: Iterator<Item = &'a str>>(names: I) -> String {
    let mut out = String::from("{");
    for (i, name) in names.enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(name);
    }
    out.push('}');
    out
}
