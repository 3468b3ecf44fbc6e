//! Combinatorics of the Terada-n polytope.
//!
//! Hyperfaces are the intervals `[lo..hi]` inside `{0..n+1}` other than the
//! full one; faces of codimension k are laminar families of k intervals.
//! Faces coded through the extra letter `n+2` are identified with their
//! complements and never appear.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratfun::{LaurentPolynomial, Monomial, RationalFunction, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntervalKind {
    Boundary0,
    Interior,
    BoundaryTop,
}

/// Hyperface `(lo lo+1 ... hi)` of the Terada-n polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: u32,
    hi: u32,
    n: u32,
}

impl Interval {
    pub fn new(lo: u32, hi: u32, n: u32) -> Result<Self> {
        if lo >= hi || hi > n + 1 {
            return Err(Error::Domain(format!(
                "interval ({lo},{hi}) not inside 0..={} with lo < hi",
                n + 1
            )));
        }
        if lo == 0 && hi == n + 1 {
            return Err(Error::Domain(format!(
                "full interval (0,{}) is not a face",
                n + 1
            )));
        }
        Ok(Interval { lo, hi, n })
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of letters, at least 2.
    pub fn size(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn kind(&self) -> IntervalKind {
        if self.lo == 0 {
            IntervalKind::Boundary0
        } else if self.hi == self.n + 1 {
            IntervalKind::BoundaryTop
        } else {
            IntervalKind::Interior
        }
    }

    pub fn is_interior(&self) -> bool {
        self.kind() == IntervalKind::Interior
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Disjoint, or one contains the other.
    pub fn is_compatible(&self, other: &Interval) -> bool {
        self.is_disjoint(other) || self.contains(other) || other.contains(self)
    }

    pub fn letters(&self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

/// Canonical order: by size, then by lower end.
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.size(), self.lo, self.n).cmp(&(other.size(), other.lo, other.n))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_letter(f: &mut fmt::Formatter<'_>, l: u32) -> fmt::Result {
    if l >= 10 {
        write!(f, "({l})")
    } else {
        write!(f, "{l}")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write_letter(f, l)?;
        }
        Ok(())
    }
}

/// All hyperfaces for ambient rank `n`, canonically ordered.
pub fn all_intervals(n: u32) -> Vec<Interval> {
    let mut out = Vec::new();
    for size in 2..=n + 2 {
        for lo in 0..=(n + 2 - size) {
            if let Ok(i) = Interval::new(lo, lo + size - 1, n) {
                out.push(i);
            }
        }
    }
    out
}

/// A face: pairwise compatible hyperfaces, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaminarFamily {
    n: u32,
    members: Vec<Interval>,
}

impl LaminarFamily {
    pub fn empty(n: u32) -> Self {
        LaminarFamily {
            n,
            members: Vec::new(),
        }
    }

    pub fn new<I: IntoIterator<Item = Interval>>(n: u32, members: I) -> Result<Self> {
        let mut members: Vec<Interval> = members.into_iter().collect();
        members.sort();
        for (k, i) in members.iter().enumerate() {
            if i.n != n {
                return Err(Error::Domain(format!(
                    "interval {i} has ambient rank {}",
                    i.n
                )));
            }
            if k > 0 && members[k - 1] == *i {
                return Err(Error::Domain(format!("repeated member {i}")));
            }
            if let Some(j) = members[..k].iter().find(|j| !j.is_compatible(i)) {
                return Err(Error::Domain(format!("{j} and {i} overlap")));
            }
        }
        Ok(LaminarFamily { n, members })
    }

    /// Shorthand for tests and the CLI: `(lo, hi)` pairs.
    pub fn from_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        let members = pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[Interval] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: &Interval) -> bool {
        self.members.binary_search(i).is_ok()
    }

    pub fn is_interior(&self) -> bool {
        self.members.iter().all(Interval::is_interior)
    }

    pub fn max_size(&self) -> u32 {
        self.members.iter().map(Interval::size).max().unwrap_or(0)
    }

    /// True if every member of `self` is compatible with every member of
    /// `other`.
    pub fn is_compatible_with(&self, other: &LaminarFamily) -> bool {
        self.members
            .iter()
            .all(|i| other.members.iter().all(|j| i.is_compatible(j)))
    }
}

impl fmt::Display for LaminarFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Which hyperfaces a family may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyFilter {
    All,
    Interior,
}

impl FamilyFilter {
    pub fn accepts(&self, i: &Interval) -> bool {
        match self {
            FamilyFilter::All => true,
            FamilyFilter::Interior => i.is_interior(),
        }
    }
}

type FamilyCache = Mutex<HashMap<(u32, FamilyFilter), Arc<Vec<LaminarFamily>>>>;

fn cache() -> &'static FamilyCache {
    static CACHE: OnceLock<FamilyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every laminar family of accepted hyperfaces, empty family first, in
/// backtracking order over `all_intervals`. Cached per `(n, filter)`.
pub fn laminar_families(n: u32, filter: FamilyFilter) -> Arc<Vec<LaminarFamily>> {
    if let Some(hit) = cache().lock().unwrap().get(&(n, filter)) {
        return hit.clone();
    }
    let out = Arc::new(laminar_families_by(n, |i| filter.accepts(i)));
    cache().lock().unwrap().insert((n, filter), out.clone());
    out
}

/// Uncached enumeration with an arbitrary hyperface predicate.
pub fn laminar_families_by<P: Fn(&Interval) -> bool>(n: u32, accept: P) -> Vec<LaminarFamily> {
    let pool: Vec<Interval> = all_intervals(n).into_iter().filter(|i| accept(i)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    backtrack(n, &pool, 0, &mut chosen, &mut out);
    out
}

fn backtrack(
    n: u32,
    pool: &[Interval],
    start: usize,
    chosen: &mut Vec<Interval>,
    out: &mut Vec<LaminarFamily>,
) {
    // `chosen` grows in pool order, which is the canonical order
    out.push(LaminarFamily {
        n,
        members: chosen.clone(),
    });
    for k in start..pool.len() {
        let cand = pool[k];
        if chosen.iter().all(|c| c.is_compatible(&cand)) {
            chosen.push(cand);
            backtrack(n, pool, k + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// Face counts by codimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub n: u32,
    #[serde(rename = "fvector")]
    pub counts: Vec<u64>,
}

pub fn fvector(n: u32) -> FVector {
    let mut counts = vec![0u64; n as usize + 1];
    for fam in laminar_families(n, FamilyFilter::All).iter() {
        counts[fam.len()] += 1;
    }
    FVector { n, counts }
}

/// Variables carrying the exponents along the hyperfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentAssignment {
    /// `a` on the faces through 0, `b` on those through n+1, one `g` on
    /// every diagonal.
    Uniform { a: Var, b: Var, g: Var },
    /// Three diagonal exponents `f`, `g`, `h`; only for n = 3.
    General3d {
        a: Var,
        b: Var,
        f: Var,
        g: Var,
        h: Var,
    },
}

impl ExponentAssignment {
    pub fn uniform() -> Self {
        ExponentAssignment::Uniform {
            a: Var::named("a"),
            b: Var::named("b"),
            g: Var::named("g"),
        }
    }

    pub fn general_3d() -> Self {
        ExponentAssignment::General3d {
            a: Var::named("a"),
            b: Var::named("b"),
            f: Var::named("f"),
            g: Var::named("g"),
            h: Var::named("h"),
        }
    }

    pub fn g(&self) -> Var {
        match *self {
            ExponentAssignment::Uniform { g, .. } | ExponentAssignment::General3d { g, .. } => g,
        }
    }
}

impl Default for ExponentAssignment {
    fn default() -> Self {
        Self::uniform()
    }
}

/// Monomial attached to a hyperface. With `k = size - 1`, uniformly:
/// `a^k g^(k(k-1))` through 0, `g^(k(k+1))` inside, `b^k g^(k(k-1))`
/// through n+1.
pub fn exponent_of(i: &Interval, assign: &ExponentAssignment) -> Result<Monomial> {
    let k = (i.size() - 1) as i32;
    match *assign {
        ExponentAssignment::Uniform { a, b, g } => Ok(match i.kind() {
            IntervalKind::Boundary0 => Monomial::from_pairs([(a, k), (g, k * (k - 1))]),
            IntervalKind::Interior => Monomial::pow_of(g, k * (k + 1)),
            IntervalKind::BoundaryTop => Monomial::from_pairs([(b, k), (g, k * (k - 1))]),
        }),
        ExponentAssignment::General3d { a, b, f, g, h } => {
            if i.n != 3 {
                return Err(Error::Domain("three-parameter exponents need n = 3".into()));
            }
            let pairs: &[(Var, i32)] = match (i.lo, i.hi) {
                (0, 1) => &[(a, 1)],
                (1, 2) => &[(f, 2)],
                (2, 3) => &[(g, 2)],
                (3, 4) => &[(b, 1)],
                (0, 2) => &[(a, 2), (f, 2)],
                (1, 3) => &[(f, 2), (g, 2), (h, 2)],
                (2, 4) => &[(g, 2), (b, 2)],
                (0, 3) => &[(a, 3), (f, 2), (g, 2), (h, 2)],
                (1, 4) => &[(f, 2), (g, 2), (h, 2), (b, 3)],
                _ => unreachable!("n = 3 has nine hyperfaces"),
            };
            Ok(Monomial::from_pairs(pairs.iter().copied()))
        }
    }
}

/// `[I] = 1 / (e - 1)` with `e` the exponent monomial.
pub fn bracket(i: &Interval, assign: &ExponentAssignment) -> Result<RationalFunction> {
    let e = exponent_of(i, assign)?;
    RationalFunction::recip_of(LaurentPolynomial::minus_one(e))
}

/// `<I> = [I] (1 + (-1)^q g^C(q+1,2)) = -1 / (1 - (-1)^q g^C(q+1,2))` for
/// an interior `I` with `q = size - 1`.
pub fn angle_bracket(i: &Interval, assign: &ExponentAssignment) -> Result<RationalFunction> {
    if !i.is_interior() {
        return Err(Error::Domain(format!(
            "angle bracket of non-interior face {i}"
        )));
    }
    let ExponentAssignment::Uniform { g, .. } = *assign else {
        return Err(Error::Domain(
            "angle bracket needs the uniform assignment".into(),
        ));
    };
    let q = (i.size() - 1) as i32;
    let sign: i64 = if q % 2 == 0 { 1 } else { -1 };
    let den = LaurentPolynomial::one()
        - LaurentPolynomial::monomial(Monomial::pow_of(g, q * (q + 1) / 2)).scale(&sign.into());
    Ok(RationalFunction::recip_of(den)?.scale(-1))
}

/// Permutation word of the Terada-n touching the identity chamber along
/// the face `family`: block reversals of the identity word `1..n`,
/// innermost first.
pub fn adjacent_sigma(family: &LaminarFamily) -> Result<Vec<u32>> {
    if !family.is_interior() {
        return Err(Error::Domain(format!("{family} has a boundary member")));
    }
    let word: Vec<u32> = (1..=family.n).collect();
    Ok(reverse_blocks(word, family.members.iter()))
}

/// Reverses, for each interval in turn, the contiguous block of `word`
/// holding exactly its letters.
pub fn reverse_blocks<'a, I: IntoIterator<Item = &'a Interval>>(
    mut word: Vec<u32>,
    intervals: I,
) -> Vec<u32> {
    for i in intervals {
        let pos: Vec<usize> = word
            .iter()
            .enumerate()
            .filter(|(_, l)| i.letters().contains(l))
            .map(|(p, _)| p)
            .collect();
        let (first, last) = (pos[0], pos[pos.len() - 1]);
        assert_eq!(last - first + 1, pos.len(), "block of {i} not contiguous");
        word[first..=last].reverse();
    }
    word
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbor {
    pub sigma: Vec<u32>,
    pub family: LaminarFamily,
}

impl Neighbor {
    pub fn juzu(&self) -> Juzu {
        Juzu::from_sigma(&self.sigma)
    }
}

/// Chambers touching the identity one, one per nonempty interior face,
/// sorted by permutation word.
pub fn touching_neighbors(n: u32) -> Vec<Neighbor> {
    let mut by_sigma: BTreeMap<Vec<u32>, LaminarFamily> = BTreeMap::new();
    for fam in laminar_families(n, FamilyFilter::Interior).iter() {
        if fam.is_empty() {
            continue;
        }
        let sigma = adjacent_sigma(fam).expect("interior family");
        let prev = by_sigma.insert(sigma, fam.clone());
        assert!(prev.is_none(), "two faces give the same neighbor");
    }
    by_sigma
        .into_iter()
        .map(|(sigma, family)| Neighbor { sigma, family })
        .collect()
}

/// Non-identity chambers that share no face with the identity one.
pub fn non_touching_juzus(n: u32) -> Vec<Juzu> {
    let touching: std::collections::HashSet<Vec<u32>> = touching_neighbors(n)
        .into_iter()
        .map(|nb| nb.sigma)
        .collect();
    let identity: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    let mut perm = identity.clone();
    loop {
        if perm != identity && !touching.contains(&perm) {
            out.push(Juzu::from_sigma(&perm));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p
        .iter()
        .rposition(|&x| x > p[i])
        .expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// A necklace word on the letters `0..len`, up to rotation and reversal.
#[derive(Clone, Debug)]
pub struct Juzu {
    word: Vec<u32>,
    canonical: Vec<u32>,
}

impl Juzu {
    /// Juzu `0 sigma n+1 n+2` of the chamber with permutation `sigma`.
    pub fn from_sigma(sigma: &[u32]) -> Self {
        let n = sigma.len() as u32;
        let mut word = vec![0];
        word.extend_from_slice(sigma);
        word.extend([n + 1, n + 2]);
        juzu_canonical(&word).expect("sigma is a permutation of 1..n")
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn canonical(&self) -> &[u32] {
        &self.canonical
    }

    pub fn is_canonical(&self) -> bool {
        self.word == self.canonical
    }
}

impl PartialEq for Juzu {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for Juzu {}

impl std::hash::Hash for Juzu {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl fmt::Display for Juzu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.word {
            write_letter(f, l)?;
        }
        Ok(())
    }
}

impl Serialize for Juzu {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Least word among all rotations of `word` and of its reversal.
pub fn juzu_canonical(word: &[u32]) -> Result<Juzu> {
    let len = word.len();
    let mut seen = vec![false; len];
    for &l in word {
        if l as usize >= len || std::mem::replace(&mut seen[l as usize], true) {
            return Err(Error::Domain(format!(
                "juzu word must be a permutation of 0..{len}, got {word:?}"
            )));
        }
    }
    if len < 3 {
        return Err(Error::Domain("juzu needs at least three letters".into()));
    }
    let reversed: Vec<u32> = word.iter().rev().copied().collect();
    let canonical = [word, &reversed[..]]
        .into_iter()
        .flat_map(|w| {
            (0..len).map(move |r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
        })
        .min()
        .expect("len >= 3");
    Ok(Juzu {
        word: word.to_vec(),
        canonical,
    })
}

/// Parses a juzu word: single digits, letters >= 10 in parentheses.
pub fn parse_juzu(text: &str) -> Result<Juzu> {
    let mut word = Vec::new();
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c == '(' {
            let inner: String = chars.by_ref().take_while(|&c| c != ')').collect();
            word.push(
                inner
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter ({inner}) in {text}")))?,
            );
        } else {
            word.push(
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c} in {text}")))?,
            );
        }
    }
    juzu_canonical(&word)
}
