//! Fixed-space bookkeeping for irreducible representations of closed
//! boundary-transitive groups of automorphisms of a (bi)regular tree.
//!
//! Such a group is the amalgam `G_a *_{G_e} G_b` over a fundamental edge
//! (after barycentric subdivision when it has one orbit on vertices), so
//! `H¹(G, π) = coker(ι: M^{G_a} ⊕ M^{G_b} -> M^{G_e})` as soon as the vertex
//! stabilizers are compact. A representation is described by its class and
//! the dimensions below encode what is known about each fixed space.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

use crate::cover::ball_cap;
use crate::error::{Error, Result};
use crate::rational::{parse_q, to_f64, Q};

/// Tolerance for floating-point parameters and determinants.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orbits {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialVariant {
    Unique,
    Plus,
    Minus,
}

/// The parameter `s` of a spherical representation.
#[derive(Clone, Debug, PartialEq)]
pub enum SParam {
    Exact(Q),
    Approx(Complex64),
}

impl SParam {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            SParam::Exact(x) => Complex64::new(to_f64(x), 0.0),
            SParam::Approx(z) => *z,
        }
    }

    /// Whether `s ∈ ]0,1[ ∪ (1/2 + iℝ)`.
    pub fn in_locus(&self) -> bool {
        match self {
            SParam::Exact(x) => x.is_positive() && *x < Q::one(),
            SParam::Approx(z) if z.im.abs() <= TOLERANCE => z.re > 0.0 && z.re < 1.0,
            SParam::Approx(z) => (z.re - 0.5).abs() <= TOLERANCE,
        }
    }
}

impl FromStr for SParam {
    type Err = Error;

    /// Accepts `p/q`, a decimal, or a complex number such as `0.5+2.86i`.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(x) = parse_q(s) {
            return Ok(SParam::Exact(x));
        }
        let z = Complex64::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a parameter: `{s}`")))?;
        Ok(SParam::Approx(z))
    }
}

impl fmt::Display for SParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SParam::Exact(x) => write!(f, "{x}"),
            SParam::Approx(z) => write!(f, "{z}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepClass {
    Trivial,
    Spherical(SParam),
    Special(SpecialVariant),
    Cuspidal,
}

impl RepClass {
    pub fn name(&self) -> &'static str {
        match self {
            RepClass::Trivial => "trivial",
            RepClass::Spherical(_) => "spherical",
            RepClass::Special(_) => "special",
            RepClass::Cuspidal => "cuspidal",
        }
    }
}

/// A representation of a group acting on the `(q+1, q'+1)`-biregular tree.
/// With one orbit the tree is `(q+1)`-regular and `q2` equals `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepDescriptor {
    pub orbits: Orbits,
    pub q: u64,
    pub q2: u64,
    pub class: RepClass,
}

impl RepDescriptor {
    pub fn new(orbits: Orbits, q: u64, q2: Option<u64>, class: RepClass) -> Result<Self> {
        let q2 = q2.unwrap_or(q);
        let d = RepDescriptor { orbits, q, q2, class };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidDescriptor(m.to_string()));
        if self.q < 2 || self.q2 < 2 {
            return bad("boundary transitivity needs q, q' >= 2");
        }
        if self.orbits == Orbits::One && self.q2 != self.q {
            return bad("a group with one orbit acts on a regular tree");
        }
        match (&self.class, self.orbits) {
            (RepClass::Special(SpecialVariant::Unique), Orbits::One) => bad("one-orbit special representations are plus or minus"),
            (RepClass::Special(SpecialVariant::Plus | SpecialVariant::Minus), Orbits::Two) => {
                bad("a two-orbit group has a unique special representation")
            }
            (RepClass::Spherical(s), _) if !s.in_locus() => bad("s must lie in ]0,1[ or on 1/2 + iR"),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedDims {
    pub a: usize,
    pub b: usize,
    pub e: usize,
}

/// `(dim M^{G_a}, dim M^{G_b}, dim M^{G_e})`.
pub fn fixed_dims(d: &RepDescriptor) -> Result<FixedDims> {
    d.validate()?;
    let (a, b, e) = match &d.class {
        RepClass::Trivial | RepClass::Spherical(_) => (1, 1, 2),
        RepClass::Special(SpecialVariant::Plus) => (0, 1, 1),
        RepClass::Special(_) => (0, 0, 1),
        RepClass::Cuspidal => (0, 0, 0),
    };
    Ok(FixedDims { a, b, e })
}

/// A scalar known exactly when possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Q),
    Approx(Complex64),
}

impl Scalar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(x) => Complex64::new(to_f64(x), 0.0),
            Scalar::Approx(z) => *z,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Approx(z) => z.norm() <= TOLERANCE,
        }
    }

    fn minus_one(&self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x - Q::one()),
            Scalar::Approx(z) => Scalar::Approx(z - 1.0),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => write!(f, "{x}"),
            Scalar::Approx(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Scalar::Approx(z) => write!(f, "{z}"),
        }
    }
}

/// Integer `r` with `r^d = n`, if any.
fn integer_root(n: u64, d: u32) -> Option<u64> {
    let guess = (n as f64).powf(1.0 / d as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|r| r.checked_pow(d) == Some(n))
}

/// `q^x`, exactly when `x` is rational and `q^x` is.
pub fn power(q: u64, x: &SParam) -> Scalar {
    if let SParam::Exact(x) = x {
        let (n, d) = (x.numer(), x.denom());
        if let (Some(n), Some(d)) = (n.to_i64(), d.to_u32()) {
            if let Some(r) = integer_root(q, d) {
                let base = Q::from_integer(BigInt::from(r));
                let p = num::pow::pow(base, n.unsigned_abs() as usize);
                return Scalar::Exact(if n < 0 { p.recip() } else { p });
            }
        }
    }
    let z = x.to_complex() * (q as f64).ln();
    Scalar::Approx(z.exp())
}

/// The matrix of `ι` in the basis `(1_{∂T_a}, 1_{∂T_b})`: its columns are
/// the generator `(1,1)` of `M^{G_a}` and `(1, λ)` of `M^{G_b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IotaReport {
    pub lambda: Scalar,
    pub matrix: [[Scalar; 2]; 2],
    pub determinant: Scalar,
    pub surjective: bool,
}

/// `λ = q^{2s}` with two orbits, `q^s` with one; `det = λ − 1`. The trivial
/// representation is the `s = 0` limit, where `det = 0`.
pub fn iota_surjectivity(d: &RepDescriptor) -> Result<IotaReport> {
    d.validate()?;
    let s = match &d.class {
        RepClass::Trivial => SParam::Exact(Q::zero()),
        RepClass::Spherical(s) => s.clone(),
        other => return Err(Error::WrongClass(format!("ι matrix is defined for spherical or trivial, got {}", other.name()))),
    };
    let exponent = match (d.orbits, &s) {
        (Orbits::One, _) => s,
        (Orbits::Two, SParam::Exact(x)) => SParam::Exact(x * Q::from_integer(2.into())),
        (Orbits::Two, SParam::Approx(z)) => SParam::Approx(z * 2.0),
    };
    let lambda = power(d.q, &exponent);
    let determinant = lambda.minus_one();
    let one = || Scalar::Exact(Q::one());
    Ok(IotaReport {
        matrix: [[one(), one()], [one(), lambda.clone()]],
        surjective: !determinant.is_zero(),
        lambda,
        determinant,
    })
}

/// `dim H¹(G, π)`.
pub fn h1_dim(d: &RepDescriptor) -> Result<usize> {
    let dims = fixed_dims(d)?;
    Ok(match &d.class {
        // Homomorphisms to ℂ vanish on a group generated by two compact subgroups.
        RepClass::Trivial => 0,
        RepClass::Spherical(_) => {
            if iota_surjectivity(d)?.surjective {
                0
            } else {
                (dims.e + 1).saturating_sub(dims.a + dims.b)
            }
        }
        RepClass::Special(_) | RepClass::Cuspidal => dims.e - (dims.a + dims.b).min(dims.e),
    })
}

/// Orbit data of the finite model: the sphere of radius `depth` about `a`
/// in the `(q+1, q'+1)`-biregular tree, with `e = [a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedReport {
    pub q: u64,
    pub q2: u64,
    pub depth: usize,
    pub ball_size: usize,
    pub sphere_size: usize,
    pub stab_a_orbits: usize,
    pub stab_e_orbits: usize,
    pub stab_b_orbits: usize,
    /// Visual measures of the shadows `(∂T_a, ∂T_b)` seen from `a` and `b`.
    pub nu_a: (Q, Q),
    pub nu_b: (Q, Q),
    /// `(dν_b/dν_a on ∂T_b) / (dν_b/dν_a on ∂T_a)`.
    pub density_ratio: Q,
    /// `q·q'`, the value the ratio must take.
    pub expected_ratio: Q,
}

impl TruncatedReport {
    pub fn ratio_matches(&self) -> bool {
        self.density_ratio == self.expected_ratio
    }

    /// `ξ|_{∂T_b} / ξ|_{∂T_a}` for the `G_b`-fixed vector `(dν_b/dν_a)^s`.
    pub fn relation_at(&self, s: f64) -> f64 {
        to_f64(&self.density_ratio).powf(s)
    }
}

struct BiregularBall {
    adj: Vec<Vec<usize>>,
}

impl BiregularBall {
    /// Ball of the given radius about vertex 0 (`a`, degree `q+1`); vertex 1
    /// is `b`.
    fn build(q: u64, q2: u64, radius: usize, cap: usize) -> Result<Self> {
        let mut adj: Vec<Vec<usize>> = vec![vec![]];
        let mut kind = vec![0u8];
        let mut depth = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            if depth[x] == radius {
                continue;
            }
            let degree = if kind[x] == 0 { q + 1 } else { q2 + 1 } as usize;
            while adj[x].len() < degree {
                let y = adj.len();
                if y >= cap {
                    return Err(Error::BallTooLarge(cap));
                }
                adj.push(vec![x]);
                adj[x].push(y);
                kind.push(1 - kind[x]);
                depth.push(depth[x] + 1);
                queue.push_back(y);
            }
        }
        Ok(BiregularBall { adj })
    }

    fn distances(&self, from: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.adj.len()];
        d[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if d[y] == usize::MAX {
                    d[y] = d[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        d
    }
}

fn orbit_count(points: &[usize], keys: &[&[usize]]) -> usize {
    points.iter().map(|&x| keys.iter().map(|k| k[x]).collect::<Vec<_>>()).collect::<BTreeSet<_>>().len()
}

fn masses(sphere: &[usize], in_b_side: impl Fn(usize) -> bool) -> (Q, Q) {
    let n = sphere.len() as i64;
    let nb = sphere.iter().filter(|&&x| in_b_side(x)).count() as i64;
    (Q::new((n - nb).into(), n.into()), Q::new(nb.into(), n.into()))
}

/// Orbits of the stabilizers of `a`, `e` and `b` in the full automorphism
/// group on the sphere `S(a, depth)`, computed as classes of equal distance
/// to the fixed vertices, and the visual measures of the two shadows of `e`.
pub fn truncated_check(q: u64, q2: u64, depth: usize) -> Result<TruncatedReport> {
    if q < 1 || q2 < 1 || q * q2 == 1 {
        return Err(Error::InvalidDescriptor("degenerate tree: need q, q' >= 1 and not both 1".into()));
    }
    if depth < 1 {
        return Err(Error::InvalidDescriptor("depth must be at least 1".into()));
    }
    let ball = BiregularBall::build(q, q2, depth + 1, ball_cap())?;
    let (a, b) = (0, 1);
    let da = ball.distances(a);
    let db = ball.distances(b);
    // b lies on the geodesic from a to x exactly when d(b, x) < d(a, x).
    let b_side = |x: usize| db[x] < da[x];
    let sphere_a: Vec<usize> = (0..ball.adj.len()).filter(|&x| da[x] == depth).collect();
    let sphere_b: Vec<usize> = (0..ball.adj.len()).filter(|&x| db[x] == depth).collect();
    let nu_a = masses(&sphere_a, b_side);
    let nu_b = masses(&sphere_b, b_side);
    let density_ratio = (&nu_b.1 / &nu_a.1) / (&nu_b.0 / &nu_a.0);
    Ok(TruncatedReport {
        q,
        q2,
        depth,
        ball_size: ball.adj.len(),
        sphere_size: sphere_a.len(),
        stab_a_orbits: orbit_count(&sphere_a, &[&da]),
        stab_e_orbits: orbit_count(&sphere_a, &[&da, &db]),
        stab_b_orbits: orbit_count(&sphere_a, &[&db]),
        nu_a,
        nu_b,
        density_ratio,
        expected_ratio: Q::from_integer(BigInt::from(q) * BigInt::from(q2)),
    })
}

/// The two-orbit and one-orbit tables as `(class label, dim H¹)`.
pub fn h1_table(q: u64) -> Result<BTreeMap<String, usize>> {
    let s = SParam::Exact(Q::new(1.into(), 2.into()));
    let rows = [
        ("two-orbit trivial", Orbits::Two, RepClass::Trivial),
        ("two-orbit spherical", Orbits::Two, RepClass::Spherical(s.clone())),
        ("two-orbit special", Orbits::Two, RepClass::Special(SpecialVariant::Unique)),
        ("two-orbit cuspidal", Orbits::Two, RepClass::Cuspidal),
        ("one-orbit trivial", Orbits::One, RepClass::Trivial),
        ("one-orbit spherical", Orbits::One, RepClass::Spherical(s)),
        ("one-orbit special plus", Orbits::One, RepClass::Special(SpecialVariant::Plus)),
        ("one-orbit special minus", Orbits::One, RepClass::Special(SpecialVariant::Minus)),
        ("one-orbit cuspidal", Orbits::One, RepClass::Cuspidal),
    ];
    rows.into_iter()
        .map(|(name, o, c)| Ok((name.to_string(), h1_dim(&RepDescriptor::new(o, q, None, c)?)?)))
        .collect()
}
