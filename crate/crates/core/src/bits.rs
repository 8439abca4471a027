//! Finite bitstrings and eventually-zero rays.
//!
//! Infinite bitstrings only ever show up as selectors for projection, and on
//! finite runs every such selector is interchangeable with one of the form
//! `stem·000…`. A [`Ray`] stores that stem.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseBitsError;

/// A finite string over `{0,1}`. The empty bitstring is the root address.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bitstring(String);

impl Bitstring {
    pub fn empty() -> Self {
        Bitstring(String::new())
    }

    /// Builds a bitstring from text, rejecting anything outside `{0,1}`.
    pub fn new(text: impl Into<String>) -> Result<Self, ParseBitsError> {
        let text = text.into();
        if let Some((pos, ch)) = text.char_indices().find(|&(_, c)| c != '0' && c != '1') {
            return Err(ParseBitsError { pos, ch });
        }
        Ok(Bitstring(text))
    }

    pub(crate) fn from_valid(text: &str) -> Self {
        debug_assert!(text.bytes().all(|b| b == b'0' || b == b'1'));
        Bitstring(text.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> Option<u8> {
        self.0.as_bytes().get(i).map(|b| b - b'0')
    }

    /// `self` followed by one more bit.
    pub fn child(&self, bit: u8) -> Self {
        let mut s = self.0.clone();
        s.push(if bit == 0 { '0' } else { '1' });
        Bitstring(s)
    }

    pub fn concat(&self, other: &Bitstring) -> Self {
        Bitstring(format!("{}{}", self.0, other.0))
    }

    pub fn with_zeros(&self, n: usize) -> Self {
        let mut s = self.0.clone();
        s.extend(std::iter::repeat_n('0', n));
        Bitstring(s)
    }

    pub fn is_prefix_of(&self, other: &Bitstring) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Bitstring) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    /// The part of `self` after `prefix`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Bitstring) -> Option<Bitstring> {
        self.0
            .strip_prefix(&prefix.0)
            .map(|s| Bitstring(s.to_owned()))
    }

    pub fn contains_one(&self) -> bool {
        self.0.contains('1')
    }

    /// Every bitstring of exactly `len` bits, in lexicographic order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = Bitstring> {
        assert!(len < usize::BITS as usize);
        (0..1usize << len).map(move |n| {
            let s: String = (0..len)
                .rev()
                .map(|i| if n >> i & 1 == 1 { '1' } else { '0' })
                .collect();
            Bitstring(s)
        })
    }

    /// Every bitstring of at most `max_len` bits, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Bitstring> {
        (0..=max_len).flat_map(Bitstring::all_of_len)
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.0)
        }
    }
}

impl fmt::Debug for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitstring({:?})", self.0)
    }
}

impl FromStr for Bitstring {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Bitstring::new(s)
    }
}

/// The infinite bitstring `stem·000…`.
///
/// Stems that differ only in trailing zeros denote the same ray, so the
/// stored stem is normalized with trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ray {
    stem: Bitstring,
}

impl Ray {
    /// The all-zero ray.
    pub fn zeros() -> Self {
        Ray::default()
    }

    pub fn new(stem: Bitstring) -> Self {
        let trimmed = stem.0.trim_end_matches('0');
        Ray {
            stem: Bitstring(trimmed.to_owned()),
        }
    }

    /// Normalized stem (no trailing zeros).
    pub fn stem(&self) -> &Bitstring {
        &self.stem
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.stem.bit(i).unwrap_or(0)
    }

    /// Whether the finite bitstring `u` is an initial segment of this ray.
    pub fn has_prefix(&self, u: &Bitstring) -> bool {
        self.covers(u.as_str())
    }
}

impl From<Bitstring> for Ray {
    fn from(stem: Bitstring) -> Self {
        Ray::new(stem)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}0…", self.stem.as_str())
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray({:?})", self.stem.as_str())
    }
}
