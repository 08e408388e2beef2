//! Exact planar geometry.
//!
//! Every predicate here is evaluated in exact rational (or exact integer)
//! arithmetic. Orientation signs, order types, convexity tests and the
//! point–line distance all run without any rounding step.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactPoint {
    pub x: Rational,
    pub y: Rational,
}

/// A point on the integer lattice, used for catalog witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntPoint {
    pub x: i64,
    pub y: i64,
}

impl IntPoint {
    pub const fn new(x: i64, y: i64) -> Self {
        IntPoint { x, y }
    }
}

impl ExactPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        ExactPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        ExactPoint {
            x: Rational::from_integer(x.into()),
            y: Rational::from_integer(y.into()),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        ExactPoint::new(&self.x * factor, &self.y * factor)
    }
}

impl From<IntPoint> for ExactPoint {
    fn from(p: IntPoint) -> Self {
        ExactPoint::from_ints(p.x, p.y)
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", format_rational(&self.x), format_rational(&self.y))
    }
}

impl FromStr for ExactPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::parse(1, format!("expected two coordinates, got {s:?}")));
        };
        Ok(ExactPoint::new(parse_rational(x)?, parse_rational(y)?))
    }
}

/// Formats as a plain integer when the denominator is one, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::parse(1, format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac}");
        let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    let p: BigInt = s.trim().parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Sign of `det [[1,1,1],[ax,bx,cx],[ay,by,cy]]`: +1 counterclockwise, −1 clockwise,
/// 0 collinear.
pub fn orient(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint) -> i8 {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    sign_of(&det)
}

/// Integer version of [`orient`]; exact for any `i64` input.
pub fn orient_int(a: IntPoint, b: IntPoint, c: IntPoint) -> i8 {
    let det = (b.x as i128 - a.x as i128) * (c.y as i128 - a.y as i128)
        - (b.y as i128 - a.y as i128) * (c.x as i128 - a.x as i128);
    det.signum() as i8
}

fn orient_big(a: &(BigInt, BigInt), b: &(BigInt, BigInt), c: &(BigInt, BigInt)) -> i8 {
    let det = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    if det.is_positive() {
        1
    } else if det.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Lexicographic ranking of index triples `i < j < k` drawn from `0..n`.
#[derive(Clone, Debug)]
pub struct TripleIndex {
    n: usize,
    first: Vec<usize>,
}

impl TripleIndex {
    pub fn new(n: usize) -> Self {
        let mut first = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for a in 0..=n {
            first.push(acc);
            if a < n {
                acc += choose2(n - 1 - a);
            }
        }
        TripleIndex { n, first }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        choose3(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of a sorted triple `i < j < k`.
    #[inline]
    pub fn rank(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < j && j < k && k < self.n);
        let gap = j - i - 1;
        self.first[i] + gap * (2 * (self.n - 1) - (i + j)) / 2 + (k - j - 1)
    }

    /// Looks up the orientation of an arbitrary ordered triple of distinct
    /// indices in a table of sorted-triple signs.
    #[inline]
    pub fn signed(&self, signs: &[i8], a: usize, b: usize, c: usize) -> i8 {
        let (mut x, mut y, mut z) = (a, b, c);
        let mut parity = 1i8;
        if x > y {
            std::mem::swap(&mut x, &mut y);
            parity = -parity;
        }
        if y > z {
            std::mem::swap(&mut y, &mut z);
            parity = -parity;
        }
        if x > y {
            std::mem::swap(&mut x, &mut y);
            parity = -parity;
        }
        parity * signs[self.rank(x, y, z)]
    }
}

pub(crate) fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn choose3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// An ordered sequence of exact points.
///
/// The general-position invariant is checked by [`Configuration::check_general_position`]
/// and by every operation whose contract requires it; construction itself
/// does not validate so that degenerate inputs can be reported precisely.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    points: Vec<ExactPoint>,
}

impl Configuration {
    pub fn new(points: Vec<ExactPoint>) -> Self {
        Configuration { points }
    }

    pub fn from_int_points(points: &[IntPoint]) -> Self {
        Configuration::new(points.iter().map(|&p| p.into()).collect())
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<ExactPoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Configuration::new(self.points.iter().map(|p| p.scaled(factor)).collect())
    }

    /// Coordinates multiplied by the least common denominator, which keeps
    /// every orientation unchanged and makes bulk predicates integer-only.
    pub fn integer_scaled(&self) -> Vec<(BigInt, BigInt)> {
        let mut lcm = BigInt::one();
        for p in &self.points {
            lcm = lcm.lcm(p.x.denom()).lcm(p.y.denom());
        }
        self.points
            .iter()
            .map(|p| (p.x.numer() * (&lcm / p.x.denom()), p.y.numer() * (&lcm / p.y.denom())))
            .collect()
    }

    /// Orientation of every sorted triple, zeros included, in lexicographic rank order.
    pub fn orientation_signs(&self) -> Vec<i8> {
        let pts = self.integer_scaled();
        let n = pts.len();
        let mut signs = Vec::with_capacity(choose3(n));
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    signs.push(orient_big(&pts[i], &pts[j], &pts[k]));
                }
            }
        }
        signs
    }

    /// Fails when two points coincide or three are collinear.
    pub fn check_general_position(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.points[i] == self.points[j] {
                    return Err(Error::degenerate(format!("points {i} and {j} coincide")));
                }
            }
        }
        let signs = self.orientation_signs();
        first_collinear(n, &signs).map_or(Ok(()), |(i, j, k)| {
            Err(Error::degenerate(format!("points {i}, {j}, {k} are collinear")))
        })
    }

    /// One point per line, each line `x y`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = line.parse::<ExactPoint>().map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(idx + 1, msg),
                other => other,
            })?;
            points.push(p);
        }
        Ok(Configuration::new(points))
    }
}

impl From<Vec<ExactPoint>> for Configuration {
    fn from(points: Vec<ExactPoint>) -> Self {
        Configuration::new(points)
    }
}

fn first_collinear(n: usize, signs: &[i8]) -> Option<(usize, usize, usize)> {
    let pos = signs.iter().position(|&s| s == 0)?;
    let mut r = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if r == pos {
                    return Some((i, j, k));
                }
                r += 1;
            }
        }
    }
    None
}

/// The ±1 orientation vector of a point sequence, indexed by lexicographic
/// triple rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderTypeSignature {
    pub n: usize,
    pub signs: Vec<i8>,
}

impl OrderTypeSignature {
    pub fn new(n: usize, signs: Vec<i8>) -> Result<Self> {
        let sig = OrderTypeSignature { n, signs };
        sig.validate()?;
        Ok(sig)
    }

    fn validate(&self) -> Result<()> {
        if self.signs.len() != choose3(self.n) {
            return Err(Error::Size(format!(
                "signature for {} points needs {} signs, got {}",
                self.n,
                choose3(self.n),
                self.signs.len()
            )));
        }
        if self.signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Size("signature entries must be +1 or -1".into()));
        }
        Ok(())
    }

    /// Orientation of an arbitrary ordered triple of distinct labels.
    pub fn chi(&self, a: usize, b: usize, c: usize) -> i8 {
        TripleIndex::new(self.n).signed(&self.signs, a, b, c)
    }

    /// Signs packed into bytes, bit set for +1, least significant bit first.
    pub fn to_packed(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.signs.len().div_ceil(8)];
        for (i, &s) in self.signs.iter().enumerate() {
            if s > 0 {
                out[i / 8] |= 1 << (i % 8);
            }
        }
        out
    }

    pub fn from_packed(n: usize, bytes: &[u8]) -> Result<Self> {
        let len = choose3(n);
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Format(format!(
                "packed signature for n={n} needs {} bytes",
                len.div_ceil(8)
            )));
        }
        let signs = (0..len)
            .map(|i| if bytes[i / 8] >> (i % 8) & 1 == 1 { 1 } else { -1 })
            .collect();
        Ok(OrderTypeSignature { n, signs })
    }
}

/// Order type of a configuration; collinear triples are an error.
pub fn order_type(config: &Configuration) -> Result<OrderTypeSignature> {
    let n = config.len();
    let signs = config.orientation_signs();
    if let Some((i, j, k)) = first_collinear(n, &signs) {
        return Err(Error::degenerate(format!("points {i}, {j}, {k} are collinear")));
    }
    Ok(OrderTypeSignature { n, signs })
}

/// Order type of integer points.
pub fn order_type_int(points: &[IntPoint]) -> Result<OrderTypeSignature> {
    let n = points.len();
    let mut signs = Vec::with_capacity(choose3(n));
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = orient_int(points[i], points[j], points[k]);
                if s == 0 {
                    return Err(Error::degenerate(format!("points {i}, {j}, {k} are collinear")));
                }
                signs.push(s);
            }
        }
    }
    Ok(OrderTypeSignature { n, signs })
}

/// Lexicographically smallest signature over all relabelings and the global
/// sign flip.
///
/// The search descends the permutation tree choosing the label-0 point first.
/// The leading block of the vector (all triples containing label 0) can be made
/// all −1 exactly when the remaining labels are totally ordered by the relation
/// "`(0,i,j)` is negative", and then that order is forced. So whenever some
/// (first point, flip) pair induces such an order, only those branches can
/// contain the minimum and each contributes one leaf. For signatures with no
/// such pair (never the case for realizable ones) the full tree is searched
/// with prefix pruning.
pub fn canonicalize(sig: &OrderTypeSignature) -> Result<OrderTypeSignature> {
    sig.validate()?;
    let n = sig.n;
    if n < 3 {
        return Ok(sig.clone());
    }
    let idx = TripleIndex::new(n);
    let mut best: Option<Vec<i8>> = None;
    let mut perm = vec![0usize; n];
    let mut scratch = Vec::with_capacity(sig.signs.len());
    for flip in [-1i8, 1] {
        for first in 0..n {
            let mut score = vec![0usize; n];
            for i in 0..n {
                if i == first {
                    continue;
                }
                for j in i + 1..n {
                    if j == first {
                        continue;
                    }
                    if flip * idx.signed(&sig.signs, first, i, j) < 0 {
                        score[i] += 1;
                    } else {
                        score[j] += 1;
                    }
                }
            }
            let mut seen = vec![false; n - 1];
            let mut transitive = true;
            for i in (0..n).filter(|&i| i != first) {
                if seen[score[i]] {
                    transitive = false;
                    break;
                }
                seen[score[i]] = true;
                perm[n - 1 - score[i]] = i;
            }
            if !transitive {
                continue;
            }
            perm[0] = first;
            relabel_into(&idx, &sig.signs, &perm, flip, best.as_deref(), &mut scratch);
            if best.as_ref().is_none_or(|b| scratch < *b) {
                best = Some(scratch.clone());
            }
        }
    }
    let signs = match best {
        Some(b) => b,
        None => exhaustive_canonical(&idx, &sig.signs),
    };
    Ok(OrderTypeSignature { n, signs })
}

/// Writes the relabeled (and possibly flipped) signature into `out`, stopping
/// early once it is known to exceed `bound`.
fn relabel_into(idx: &TripleIndex, signs: &[i8], perm: &[usize], flip: i8, bound: Option<&[i8]>, out: &mut Vec<i8>) {
    out.clear();
    let n = idx.n();
    let mut tied = bound.is_some();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = flip * idx.signed(signs, perm[i], perm[j], perm[k]);
                if tied {
                    let b = bound.unwrap()[out.len()];
                    if s > b {
                        out.push(s);
                        return;
                    }
                    if s < b {
                        tied = false;
                    }
                }
                out.push(s);
            }
        }
    }
}

fn exhaustive_canonical(idx: &TripleIndex, signs: &[i8]) -> Vec<i8> {
    struct Search<'a> {
        idx: &'a TripleIndex,
        signs: &'a [i8],
        flip: i8,
        perm: Vec<usize>,
        used: Vec<bool>,
        best: Option<Vec<i8>>,
        scratch: Vec<i8>,
    }

    impl Search<'_> {
        // Prefix of the relabeled vector fixed once labels 0..depth are placed:
        // the triples (0,1,k) for k < depth.
        fn prefix_cmp(&self, depth: usize) -> std::cmp::Ordering {
            let Some(best) = &self.best else {
                return std::cmp::Ordering::Less;
            };
            for k in 2..depth {
                let s = self.flip * self.idx.signed(self.signs, self.perm[0], self.perm[1], self.perm[k]);
                let b = best[k - 2];
                if s != b {
                    return s.cmp(&b);
                }
            }
            std::cmp::Ordering::Equal
        }

        fn go(&mut self, depth: usize) {
            let n = self.idx.n();
            if depth >= 3 && self.prefix_cmp(depth) == std::cmp::Ordering::Greater {
                return;
            }
            if depth == n {
                relabel_into(
                    self.idx,
                    self.signs,
                    &self.perm,
                    self.flip,
                    self.best.as_deref(),
                    &mut self.scratch,
                );
                if self.best.as_ref().is_none_or(|b| self.scratch < *b) {
                    self.best = Some(self.scratch.clone());
                }
                return;
            }
            for v in 0..n {
                if !self.used[v] {
                    self.used[v] = true;
                    self.perm[depth] = v;
                    self.go(depth + 1);
                    self.used[v] = false;
                }
            }
        }
    }

    let n = idx.n();
    let mut search = Search {
        idx,
        signs,
        flip: 1,
        perm: vec![0; n],
        used: vec![false; n],
        best: None,
        scratch: Vec::new(),
    };
    for flip in [-1, 1] {
        search.flip = flip;
        search.go(0);
    }
    search.best.expect("at least one permutation exists")
}

/// True iff every point is a vertex of the convex hull.
pub fn is_convex_position(config: &Configuration) -> Result<bool> {
    let sig = order_type(config)?;
    Ok(signs_convex_position(&TripleIndex::new(sig.n), &sig.signs))
}

/// Convex-position test on an orientation table: a point fails iff it lies
/// inside a triangle spanned by three others.
pub(crate) fn signs_convex_position(idx: &TripleIndex, signs: &[i8]) -> bool {
    let n = idx.n();
    for p in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if p == a || p == b || p == c {
                        continue;
                    }
                    let o = idx.signed(signs, a, b, c);
                    if idx.signed(signs, a, b, p) == o
                        && idx.signed(signs, b, c, p) == o
                        && idx.signed(signs, c, a, p) == o
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether the open segments `ab` and `cd` share a point. Assumes the four
/// endpoints are distinct and in general position.
pub fn segments_cross(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint, d: &ExactPoint) -> bool {
    orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0
}

/// True iff every transversal of the four parts (one point from each, in
/// part order) has the same order type.
pub fn same_type_transversals(parts: [&[ExactPoint]; 4]) -> Result<bool> {
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::param("transversal parts must be nonempty"));
    }
    let mut reference: Option<[i8; 4]> = None;
    for a in parts[0] {
        for b in parts[1] {
            for c in parts[2] {
                for d in parts[3] {
                    let t = [orient(a, b, c), orient(a, b, d), orient(a, c, d), orient(b, c, d)];
                    if t.contains(&0) {
                        return Err(Error::degenerate("collinear transversal"));
                    }
                    match reference {
                        None => reference = Some(t),
                        Some(r) if r != t => return Ok(false),
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Squared distance from `p` to the line through `a` and `b`.
pub fn squared_point_line_distance(p: &ExactPoint, a: &ExactPoint, b: &ExactPoint) -> Rational {
    let det = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let len2 = &dx * &dx + &dy * &dy;
    &det * &det / len2
}

/// Minimum squared distance between a point and a line spanned by two other
/// points of the configuration.
pub fn min_point_line_distance(config: &Configuration) -> Result<Rational> {
    let n = config.len();
    if n < 3 {
        return Err(Error::param("need at least three points"));
    }
    let pts = config.points();
    let mut best: Option<Rational> = None;
    for a in 0..n {
        for b in a + 1..n {
            if pts[a] == pts[b] {
                return Err(Error::degenerate(format!("points {a} and {b} coincide")));
            }
            for (p, point) in pts.iter().enumerate() {
                if p == a || p == b {
                    continue;
                }
                let d = squared_point_line_distance(point, &pts[a], &pts[b]);
                if d.is_zero() {
                    return Err(Error::degenerate(format!(
                        "point {p} lies on the line through {a} and {b}"
                    )));
                }
                if best.as_ref().is_none_or(|m| d < *m) {
                    best = Some(d);
                }
            }
        }
    }
    Ok(best.expect("n >= 3"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> ExactPoint {
        ExactPoint::from_ints(x, y)
    }

    fn cfg(pts: &[(i64, i64)]) -> Configuration {
        Configuration::new(pts.iter().map(|&(x, y)| p(x, y)).collect())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), 0);
        assert_eq!(orient(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
    }

    #[test]
    fn triple_rank_matches_enumeration() {
        for n in 3..9 {
            let idx = TripleIndex::new(n);
            let mut r = 0;
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        assert_eq!(idx.rank(i, j, k), r);
                        r += 1;
                    }
                }
            }
            assert_eq!(r, idx.len());
        }
    }

    #[test]
    fn order_type_examples() {
        let tri = order_type(&cfg(&[(0, 0), (2, 0), (1, 2)])).unwrap();
        assert_eq!(tri.signs, vec![1]);
        let square = order_type(&cfg(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(square.signs, vec![1, 1, 1, 1]);
        let err = order_type(&cfg(&[(0, 0), (1, 1), (2, 2)])).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn canonical_triangle_is_negative() {
        let sig = OrderTypeSignature::new(3, vec![1]).unwrap();
        assert_eq!(canonicalize(&sig).unwrap().signs, vec![-1]);
    }

    #[test]
    fn canonicalize_rejects_bad_length() {
        let sig = OrderTypeSignature {
            n: 4,
            signs: vec![1; 3],
        };
        assert!(matches!(canonicalize(&sig), Err(Error::Size(_))));
        assert!(OrderTypeSignature::new(4, vec![1; 5]).is_err());
    }

    #[test]
    fn convex_position_examples() {
        assert!(is_convex_position(&cfg(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap());
        assert!(!is_convex_position(&cfg(&[(0, 0), (3, 0), (0, 3), (1, 1)])).unwrap());
        assert!(is_convex_position(&cfg(&[(0, 0), (1, 1), (2, 2)])).is_err());
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(
            min_point_line_distance(&cfg(&[(0, 0), (4, 0), (0, 4)])).unwrap(),
            q(8, 1)
        );
        assert_eq!(
            min_point_line_distance(&cfg(&[(0, 0), (1, 0), (0, 1)])).unwrap(),
            q(1, 2)
        );
        let c = cfg(&[(0, 0), (1, 0), (0, 1), (3, 5)]);
        let t = q(7, 1);
        assert_eq!(
            min_point_line_distance(&c.scaled(&t)).unwrap(),
            min_point_line_distance(&c).unwrap() * &t * &t
        );
        assert!(matches!(
            min_point_line_distance(&cfg(&[(0, 0), (1, 0), (2, 0)])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn transversal_examples() {
        let singles: Vec<Vec<ExactPoint>> = vec![vec![p(0, 0)], vec![p(5, 0)], vec![p(5, 5)], vec![p(0, 5)]];
        assert!(same_type_transversals([&singles[0], &singles[1], &singles[2], &singles[3]]).unwrap());

        // Parts 0 and 1 straddle the line through the centers of parts 2 and 3.
        let a = vec![p(0, 1), p(0, -1)];
        let b = vec![p(10, 1), p(10, -1)];
        let c = vec![p(-5, 0)];
        let d = vec![p(20, 0)];
        assert!(!same_type_transversals([&a, &b, &c, &d]).unwrap());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let c = Configuration::parse_text("0 0\n1/3 -2\n0.5 7\n").unwrap();
        assert_eq!(Configuration::parse_text(&c.to_text()).unwrap(), c);
        let err = Configuration::parse_text("0 0\n1\n").unwrap_err();
        assert_eq!(err, Error::parse(2, "expected two coordinates, got \"1\""));
    }

    #[test]
    fn packed_signature_roundtrip() {
        let sig = order_type(&cfg(&[(0, 0), (5, 1), (2, 7), (3, 2), (9, 9)])).unwrap();
        let back = OrderTypeSignature::from_packed(5, &sig.to_packed()).unwrap();
        assert_eq!(back, sig);
    }
}
