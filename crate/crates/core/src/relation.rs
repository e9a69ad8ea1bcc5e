//! Boolean relations and the structural properties the classifier is built on.
//!
//! A tuple of arity `k` is packed into a `u64` with position 0 in the most
//! significant of the low `k` bits, so numeric order on codes is the
//! lexicographic order on tuples (position 0 most significant). Every
//! "least" or "first" choice in the crate refers to this order.
//!
//! Positions are 0-based in the library API. Text formats and reports
//! print them 1-based.

use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest relation arity accepted by [`Relation::new`].
pub const MAX_ARITY: usize = 16;
/// Largest number of relations in a [`ConstraintLanguage`].
pub const MAX_RELATIONS: usize = 64;
/// Largest arity a free-standing [`BitTuple`] can carry.
pub const MAX_TUPLE_ARITY: usize = 63;

/// A fixed-width vector of bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitTuple {
    arity: u8,
    code: u64,
}

impl BitTuple {
    pub fn new(arity: usize, code: u64) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        if arity > MAX_TUPLE_ARITY {
            return Err(Error::ArityTooLarge {
                arity,
                max: MAX_TUPLE_ARITY,
            });
        }
        if code >> arity != 0 {
            return Err(Error::TupleOutOfRange { tuple: code, arity });
        }
        Ok(BitTuple {
            arity: arity as u8,
            code,
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let code = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        BitTuple::new(bits.len(), code)
    }

    pub fn zeros(arity: usize) -> Self {
        BitTuple::new(arity, 0).expect("arity in range")
    }

    pub fn ones(arity: usize) -> Self {
        BitTuple::new(arity, mask(arity)).expect("arity in range")
    }

    /// The unit tuple with a single one at `position`.
    pub fn unit(position: usize, arity: usize) -> Self {
        assert!(position < arity, "position {position} out of range");
        BitTuple::new(arity, 1 << (arity - 1 - position)).expect("arity in range")
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn get(&self, position: usize) -> bool {
        assert!(position < self.arity(), "position {position} out of range");
        self.code >> (self.arity() - 1 - position) & 1 == 1
    }

    pub fn with(&self, position: usize, value: bool) -> Self {
        let bit = 1 << (self.arity() - 1 - position);
        let code = if value {
            self.code | bit
        } else {
            self.code & !bit
        };
        BitTuple { code, ..*self }
    }

    pub fn count_ones(&self) -> u32 {
        self.code.count_ones()
    }

    pub fn or(&self, other: &BitTuple) -> Self {
        assert_eq!(self.arity, other.arity);
        BitTuple {
            code: self.code | other.code,
            ..*self
        }
    }

    pub fn and(&self, other: &BitTuple) -> Self {
        assert_eq!(self.arity, other.arity);
        BitTuple {
            code: self.code & other.code,
            ..*self
        }
    }

    pub fn xor(&self, other: &BitTuple) -> Self {
        assert_eq!(self.arity, other.arity);
        BitTuple {
            code: self.code ^ other.code,
            ..*self
        }
    }

    pub fn not(&self) -> Self {
        BitTuple {
            code: !self.code & mask(self.arity()),
            ..*self
        }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BitTuple) -> Result<Self> {
        BitTuple::new(
            self.arity() + other.arity(),
            (self.code << other.arity()) | other.code,
        )
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.arity()).map(move |i| self.get(i))
    }
}

impl fmt::Display for BitTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn mask(arity: usize) -> u64 {
    if arity >= 64 {
        u64::MAX
    } else {
        (1u64 << arity) - 1
    }
}

/// A nonempty set of tuples of a common arity.
///
/// Tuples are kept sorted, with a bitmap over all `2^arity` codes for
/// constant-time membership.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    tuples: Vec<u64>,
    members: Vec<u64>,
}

impl Relation {
    pub fn new(arity: usize, codes: impl IntoIterator<Item = u64>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge {
                arity,
                max: MAX_ARITY,
            });
        }
        let mut tuples = Vec::new();
        for code in codes {
            if code >> arity != 0 {
                return Err(Error::TupleOutOfRange { tuple: code, arity });
            }
            tuples.push(code);
        }
        if tuples.is_empty() {
            return Err(Error::EmptyRelation);
        }
        tuples.sort_unstable();
        tuples.dedup();
        let mut members = vec![0u64; (1usize << arity).div_ceil(64)];
        for &t in &tuples {
            members[(t >> 6) as usize] |= 1 << (t & 63);
        }
        Ok(Relation {
            arity,
            tuples,
            members,
        })
    }

    pub fn from_tuples(arity: usize, tuples: &[BitTuple]) -> Result<Self> {
        for t in tuples {
            if t.arity() != arity {
                return Err(Error::TupleOutOfRange {
                    tuple: t.code(),
                    arity,
                });
            }
        }
        Relation::new(arity, tuples.iter().map(BitTuple::code))
    }

    /// Builds a relation from 0/1 strings such as `"011"`.
    ///
    /// Panics on malformed input; meant for literals in code and tests.
    pub fn from_strs(tuples: &[&str]) -> Self {
        let arity = tuples.first().map(|t| t.len()).unwrap_or(0);
        let codes = tuples.iter().map(|t| {
            assert_eq!(t.len(), arity, "tuple `{t}` has the wrong width");
            u64::from_str_radix(t, 2).expect("0/1 string")
        });
        Relation::new(arity, codes.collect::<Vec<_>>()).expect("valid relation literal")
    }

    pub fn complete(arity: usize) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge {
                arity,
                max: MAX_ARITY,
            });
        }
        Relation::new(arity, 0..1u64 << arity)
    }

    /// `Implies = {(0,0), (0,1), (1,1)}`.
    pub fn implies() -> Self {
        Relation::from_strs(&["00", "01", "11"])
    }

    /// `U0 = {(0)}`, pinning to 0.
    pub fn pin_zero() -> Self {
        Relation::from_strs(&["0"])
    }

    /// `U1 = {(1)}`, pinning to 1.
    pub fn pin_one() -> Self {
        Relation::from_strs(&["1"])
    }

    pub fn nand() -> Self {
        Relation::from_strs(&["00", "01", "10"])
    }

    pub fn or() -> Self {
        Relation::from_strs(&["01", "10", "11"])
    }

    pub fn equality() -> Self {
        Relation::from_strs(&["00", "11"])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Tuple codes in canonical order.
    pub fn codes(&self) -> &[u64] {
        &self.tuples
    }

    pub fn iter(&self) -> impl Iterator<Item = BitTuple> + '_ {
        self.tuples.iter().map(move |&code| BitTuple {
            arity: self.arity as u8,
            code,
        })
    }

    #[inline]
    pub fn contains_code(&self, code: u64) -> bool {
        code >> self.arity == 0 && self.members[(code >> 6) as usize] >> (code & 63) & 1 == 1
    }

    pub fn contains(&self, tuple: &BitTuple) -> bool {
        tuple.arity() == self.arity && self.contains_code(tuple.code())
    }

    pub fn is_zero_valid(&self) -> bool {
        self.contains_code(0)
    }

    pub fn is_one_valid(&self) -> bool {
        self.contains_code(mask(self.arity))
    }

    /// Positions where every tuple has a 0.
    pub fn zero_positions(&self) -> Vec<usize> {
        let union = self.tuples.iter().fold(0, |acc, &t| acc | t);
        (0..self.arity)
            .filter(|&i| union >> (self.arity - 1 - i) & 1 == 0)
            .collect()
    }

    /// Positions where every tuple has a 1.
    pub fn one_positions(&self) -> Vec<usize> {
        let meet = self.tuples.iter().fold(mask(self.arity), |acc, &t| acc & t);
        (0..self.arity)
            .filter(|&i| meet >> (self.arity - 1 - i) & 1 == 1)
            .collect()
    }

    /// The relation induced on the non-zero positions, together with the
    /// original position of each of its positions.
    pub fn project_nonzero(&self) -> Result<(Relation, Vec<usize>)> {
        let zeros = self.zero_positions();
        if zeros.len() == self.arity {
            return Err(Error::AllPositionsZero);
        }
        if zeros.is_empty() {
            return Ok((self.clone(), (0..self.arity).collect()));
        }
        let kept: Vec<usize> = (0..self.arity).filter(|i| !zeros.contains(i)).collect();
        let projected = self.tuples.iter().map(|&t| {
            kept.iter()
                .fold(0u64, |acc, &i| (acc << 1) | (t >> (self.arity - 1 - i) & 1))
        });
        let projected: Vec<u64> = projected.collect();
        Ok((Relation::new(kept.len(), projected)?, kept))
    }

    pub fn is_monotone(&self) -> bool {
        self.tuples
            .iter()
            .all(|&t| (0..self.arity).all(|i| self.contains_code(t | 1 << (self.arity - 1 - i))))
    }

    /// `R*` is monotone. The relation holding only the all-zero tuple counts
    /// as essentially monotone: its projection has no positions at all.
    pub fn is_essentially_monotone(&self) -> bool {
        match self.project_nonzero() {
            Ok((projected, _)) => projected.is_monotone(),
            Err(_) => true,
        }
    }

    pub fn is_affine(&self) -> bool {
        crate::affine::affine_decompose(self).is_some()
    }

    pub fn is_im2(&self) -> bool {
        crate::im2::im2_decompose(self).is_some()
    }

    pub fn has_property(&self, property: Property) -> bool {
        match property {
            Property::EssentiallyMonotone => self.is_essentially_monotone(),
            Property::Affine => self.is_affine(),
            Property::Im2 => self.is_im2(),
        }
    }

    /// Cartesian product: every concatenation `s · t`.
    pub fn product(&self, other: &Relation) -> Result<Relation> {
        let arity = self.arity + other.arity;
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge {
                arity,
                max: MAX_ARITY,
            });
        }
        let codes = self
            .tuples
            .iter()
            .flat_map(|&s| other.tuples.iter().map(move |&t| (s << other.arity) | t));
        Relation::new(arity, codes.collect::<Vec<_>>())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({}; {})", self.arity, self)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The three closure properties the classifier tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    EssentiallyMonotone,
    Affine,
    Im2,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::EssentiallyMonotone => "essentially monotone",
            Property::Affine => "affine",
            Property::Im2 => "in IM2",
        })
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '\''))
}

/// An ordered, named set of relations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintLanguage {
    relations: IndexMap<String, Relation>,
}

impl ConstraintLanguage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_relations<S: Into<String>>(
        relations: impl IntoIterator<Item = (S, Relation)>,
    ) -> Result<Self> {
        let mut language = ConstraintLanguage::new();
        for (name, relation) in relations {
            language.insert(name, relation)?;
        }
        Ok(language)
    }

    /// Adds a relation and returns its index.
    pub fn insert(&mut self, name: impl Into<String>, relation: Relation) -> Result<usize> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        if self.relations.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        if self.relations.len() == MAX_RELATIONS {
            return Err(Error::LanguageTooLarge {
                len: MAX_RELATIONS + 1,
                max: MAX_RELATIONS,
            });
        }
        let (index, _) = self.relations.insert_full(name, relation);
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.get_index_of(name)
    }

    pub fn by_index(&self, index: usize) -> (&str, &Relation) {
        let (name, relation) = self.relations.get_index(index).expect("relation index");
        (name.as_str(), relation)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }
}
