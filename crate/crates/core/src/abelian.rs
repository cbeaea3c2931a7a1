//! Finitely generated Abelian groups `Z^r x Z/m_1 x ... x Z/m_k`.
//!
//! Elements are integer vectors: the first `free_rank` coordinates are
//! unbounded, torsion coordinate `i` lives in `[0, m_i)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bound `B` for free coordinates drawn by [`GroupSpec::sample_element`]:
/// each is uniform over `[-B, B]`.
pub const FREE_SAMPLE_BOUND: i64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    free_rank: usize,
    torsion: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u128),
    Infinite,
}

/// The subgroup `A_2 = {a : a + a = 0}`, always of shape `(Z/2)^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSubgroup {
    spec: GroupSpec,
    embedding: Vec<GroupElement>,
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(Error::TorsionTooSmall(m));
        }
        Ok(Self { free_rank, torsion })
    }

    /// `Z/m`.
    pub fn cyclic(m: i64) -> Result<Self> {
        Self::new(0, vec![m])
    }

    /// `Z^r`.
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `term ("x" term)*` with terms `Z`, `Z^k`, `Z/m`; `0` is the trivial group.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim() == "0" {
            return Self::new(0, Vec::new());
        }
        Parser::new(text).spec()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of coordinates of an element.
    pub fn width(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `None` for infinite groups or when the product does not fit in `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.width()])
    }

    /// Builds an element from raw integers, reducing torsion slots.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_width(coords.len())?;
        let mut coords = coords.to_vec();
        for (i, &m) in self.torsion.iter().enumerate() {
            let c = &mut coords[self.free_rank + i];
            *c = c.rem_euclid(m);
        }
        Ok(GroupElement(coords))
    }

    /// Parses the `2,0,1` text form; torsion coordinates are reduced.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let coords = if text.is_empty() || (self.width() == 0 && text == "0") {
            Vec::new()
        } else {
            text.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::ElementSyntax(text.to_owned()))
                })
                .collect::<Result<Vec<_>>>()?
        };
        self.element(&coords)
    }

    /// Verifies width and torsion reduction.
    pub fn validate(&self, a: &GroupElement) -> Result<()> {
        self.check_width(a.0.len())?;
        for (i, &m) in self.torsion.iter().enumerate() {
            let index = self.free_rank + i;
            let value = a.0[index];
            if !(0..m).contains(&value) {
                return Err(Error::NotCanonical {
                    index,
                    value,
                    modulus: m,
                });
            }
        }
        Ok(())
    }

    fn check_width(&self, found: usize) -> Result<()> {
        if found != self.width() {
            return Err(Error::ShapeMismatch {
                expected: self.width(),
                found,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_width(a.0.len())?;
        self.check_width(b.0.len())?;
        Ok(self.plus(a, b))
    }

    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_width(a.0.len())?;
        Ok(self.neg(a))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_width(a.0.len())?;
        self.check_width(b.0.len())?;
        Ok(self.minus(a, b))
    }

    /// `k * a`.
    pub fn times(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check_width(a.0.len())?;
        Ok(self.scale(k, a))
    }

    // Unchecked variants for callers that validated shapes up front.

    pub(crate) fn plus(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        debug_assert_eq!(a.0.len(), self.width());
        debug_assert_eq!(b.0.len(), self.width());
        let mut out = Vec::with_capacity(self.width());
        for i in 0..self.free_rank {
            out.push(a.0[i] + b.0[i]);
        }
        for (i, &m) in self.torsion.iter().enumerate() {
            let j = self.free_rank + i;
            // Both summands are in [0, m); widen to avoid overflow near i64::MAX.
            out.push(((a.0[j] as i128 + b.0[j] as i128) % m as i128) as i64);
        }
        GroupElement(out)
    }

    pub(crate) fn neg(&self, a: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(self.width());
        for i in 0..self.free_rank {
            out.push(-a.0[i]);
        }
        for (i, &m) in self.torsion.iter().enumerate() {
            let c = a.0[self.free_rank + i];
            out.push(if c == 0 { 0 } else { m - c });
        }
        GroupElement(out)
    }

    pub(crate) fn minus(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.plus(a, &self.neg(b))
    }

    pub(crate) fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(self.width());
        for i in 0..self.free_rank {
            out.push(k * a.0[i]);
        }
        for (i, &m) in self.torsion.iter().enumerate() {
            let c = a.0[self.free_rank + i] as i128 * k as i128;
            out.push(c.rem_euclid(m as i128) as i64);
        }
        GroupElement(out)
    }

    pub(crate) fn accumulate(&self, acc: &mut GroupElement, a: &GroupElement, sign: i64) {
        for i in 0..self.free_rank {
            acc.0[i] += sign * a.0[i];
        }
        for (i, &m) in self.torsion.iter().enumerate() {
            let j = self.free_rank + i;
            let c = acc.0[j] as i128 + sign as i128 * a.0[j] as i128;
            acc.0[j] = c.rem_euclid(m as i128) as i64;
        }
    }

    /// Infinite iff a free coordinate is nonzero, otherwise the lcm over
    /// torsion slots of `m_i / gcd(m_i, c_i)`.
    pub fn order(&self, a: &GroupElement) -> Result<Order> {
        self.validate(a)?;
        if a.0[..self.free_rank].iter().any(|&c| c != 0) {
            return Ok(Order::Infinite);
        }
        let mut order = 1u128;
        for (i, &m) in self.torsion.iter().enumerate() {
            let c = a.0[self.free_rank + i];
            let slot = (m / gcd(m, c)) as u128;
            order = lcm(order, slot).ok_or(Error::Overflow)?;
        }
        Ok(Order::Finite(order))
    }

    pub fn is_involution_or_zero(&self, a: &GroupElement) -> bool {
        self.plus(a, a).is_zero()
    }

    pub fn involution_subgroup(&self) -> InvolutionSubgroup {
        let embedding: Vec<GroupElement> = self
            .torsion
            .iter()
            .enumerate()
            .filter(|(_, &m)| m % 2 == 0)
            .map(|(i, &m)| {
                let mut e = self.zero();
                e.0[self.free_rank + i] = m / 2;
                e
            })
            .collect();
        InvolutionSubgroup {
            spec: GroupSpec {
                free_rank: 0,
                torsion: vec![2; embedding.len()],
            },
            embedding,
        }
    }

    /// All elements in lexicographic coordinate order.
    pub fn enumerate_elements(&self) -> Result<ElementIter> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup(self.free_rank));
        }
        Ok(ElementIter {
            moduli: self.torsion.clone(),
            next: Some(vec![0; self.torsion.len()]),
        })
    }

    /// Deterministic in `seed`; uniform on torsion slots, uniform over
    /// `[-FREE_SAMPLE_BOUND, FREE_SAMPLE_BOUND]` on free slots.
    pub fn sample_element(&self, seed: u64) -> GroupElement {
        self.sample_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let mut out = Vec::with_capacity(self.width());
        for _ in 0..self.free_rank {
            out.push(rng.gen_range(-FREE_SAMPLE_BOUND..=FREE_SAMPLE_BOUND));
        }
        for &m in &self.torsion {
            out.push(rng.gen_range(0..m));
        }
        GroupElement(out)
    }

    /// Samples from `A_2`.
    pub fn sample_involution<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let sub = self.involution_subgroup();
        let mut out = self.zero();
        for g in &sub.embedding {
            if rng.gen_bool(0.5) {
                out = self.plus(&out, g);
            }
        }
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_owned()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" x "))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinity"),
        }
    }
}

impl InvolutionSubgroup {
    /// Always `(Z/2)^q`.
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Image of each `Z/2` generator in the ambient group.
    pub fn embedding(&self) -> &[GroupElement] {
        &self.embedding
    }

    pub fn rank(&self) -> usize {
        self.embedding.len()
    }

    pub fn cardinality(&self) -> u128 {
        1u128 << self.rank()
    }

    /// Every element of the subgroup, as elements of the ambient group.
    pub fn elements(&self, ambient: &GroupSpec) -> Vec<GroupElement> {
        let mut out = vec![ambient.zero()];
        for g in &self.embedding {
            let shifted: Vec<_> = out.iter().map(|x| ambient.plus(x, g)).collect();
            out.extend(shifted);
        }
        out.sort();
        out
    }
}

pub struct ElementIter {
    moduli: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl Iterator for ElementIter {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.moduli[i] {
                carried = false;
                break;
            }
            succ[i] = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(GroupElement(current))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn lcm(a: u128, b: u128) -> Option<u128> {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    (a / x).checked_mul(b)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::GroupSyntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        let bytes = self.text.as_bytes();
        if end < bytes.len() && bytes[end] == b'-' {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        match self.text[start..end].parse() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.error("expected an integer"),
        }
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut free_rank = 0usize;
        let mut torsion = Vec::new();
        loop {
            if !self.eat('Z') {
                return self.error("expected `Z`");
            }
            if self.eat('^') {
                let k = self.integer()?;
                if k < 1 {
                    return Err(Error::FreeExponentTooSmall(k));
                }
                free_rank += k as usize;
            } else if self.eat('/') {
                let m = self.integer()?;
                if m < 2 {
                    return Err(Error::TorsionTooSmall(m));
                }
                torsion.push(m);
            } else {
                free_rank += 1;
            }
            self.skip_ws();
            if self.pos == self.text.len() {
                break;
            }
            if !self.eat('x') {
                return self.error("expected `x` or end of input");
            }
        }
        Ok(GroupSpec { free_rank, torsion })
    }
}
