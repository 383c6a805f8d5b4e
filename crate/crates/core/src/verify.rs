//! Independent checks of a code: covering radius, minimum distance, covering
//! density and the MDS / quasi-perfect classification.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construct::Code;
use crate::coverage::{brute_force_covered, CoverageError, CoverageState, MAX_RADIUS};
use crate::gf::{with_arith, Arith};
use crate::pg::Column;

/// Subset counts up to `C(120, 4)` are enumerated exhaustively.
pub const EXHAUSTIVE_SUBSETS: u64 = 8_214_570;
/// Random subsets drawn per size when enumeration is too large.
pub const SAMPLED_SUBSETS: u64 = 10_000_000;

/// How the covering radius is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusMode {
    /// Recompute coverage from all combinations, independent of the engine.
    Exhaustive,
    /// Use the incremental engine at each radius.
    Incremental,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Radius {
    Exactly(usize),
    AboveThree,
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Exactly(r) => write!(f, "{r}"),
            Radius::AboveThree => f.write_str(">3"),
        }
    }
}

/// Covering radius together with a point that is not covered at the next
/// smaller radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusCertificate {
    pub radius: Radius,
    pub mode: RadiusMode,
    pub witness: Option<Column>,
}

/// Least radius at which the columns cover every point, or `AboveThree`.
pub fn covering_radius(code: &Code, mode: RadiusMode) -> Result<Radius, CoverageError> {
    certify_radius(code, mode).map(|c| c.radius)
}

pub fn certify_radius(code: &Code, mode: RadiusMode) -> Result<RadiusCertificate, CoverageError> {
    let mut witness = None;
    for radius in 1..=MAX_RADIUS {
        let missing = match mode {
            RadiusMode::Exhaustive => {
                let set = brute_force_covered(&code.columns, &code.field, code.r, radius)?;
                let first = set.complement().next();
                first
            }
            RadiusMode::Incremental => {
                let mut s = CoverageState::new(&code.field, code.r, radius)?;
                for c in &code.columns {
                    s.add_column(c.clone())?;
                }
                let first = s.covered().complement().next();
                first
            }
        };
        match missing {
            None => {
                return Ok(RadiusCertificate {
                    radius: Radius::Exactly(radius),
                    mode,
                    witness,
                })
            }
            Some(k) => {
                let space = crate::pg::ProjectiveSpace::new(&code.field, code.r)?;
                witness = Some(space.unrank(k));
            }
        }
    }
    Ok(RadiusCertificate {
        radius: Radius::AboveThree,
        mode,
        witness,
    })
}

/// Whether the minimum distance was enumerated or sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMethod {
    Exhaustive,
    Sampled(u64),
}

impl fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceMethod::Exhaustive => f.write_str("exhaustive"),
            DistanceMethod::Sampled(n) => write!(f, "sampled({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Exactly(u32),
    /// No dependent set up to this size was found.
    Above(u32),
}

impl Distance {
    pub fn exact(self) -> Option<u32> {
        match self {
            Distance::Exactly(d) => Some(d),
            Distance::Above(_) => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exactly(d) => write!(f, "{d}"),
            Distance::Above(c) => write!(f, ">{c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinDistance {
    pub distance: Distance,
    pub method: DistanceMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    pub exhaustive_limit: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            exhaustive_limit: EXHAUSTIVE_SUBSETS,
            samples: SAMPLED_SUBSETS,
            seed: 0,
        }
    }
}

/// Minimum distance if it is at most `cap`: the least `w` such that some
/// `w` columns are linearly dependent.
pub fn min_distance(code: &Code, cap: u32) -> MinDistance {
    min_distance_with(code, cap, DistanceOptions::default())
}

pub fn min_distance_with(code: &Code, cap: u32, opts: DistanceOptions) -> MinDistance {
    let n = code.n();
    let r = code.r;
    let flat: Vec<u32> = code.columns.iter().flat_map(|c| c.coords().to_vec()).collect();
    let mut method = DistanceMethod::Exhaustive;
    for w in 1..=cap as usize {
        if w > n {
            break;
        }
        if w > r {
            return MinDistance {
                distance: Distance::Exactly(w as u32),
                method,
            };
        }
        let dependent = if binomial(n as u64, w as u64) <= opts.exhaustive_limit {
            with_arith!(code.field, |a| any_dependent(a, &flat, r, w))
        } else {
            method = DistanceMethod::Sampled(opts.samples);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ w as u64);
            with_arith!(code.field, |a| {
                (0..opts.samples).any(|_| {
                    let pick = index::sample(&mut rng, n, w).into_vec();
                    rank(a, &flat, r, &pick) < w
                })
            })
        };
        if dependent {
            return MinDistance {
                distance: Distance::Exactly(w as u32),
                method,
            };
        }
    }
    MinDistance {
        distance: Distance::Above(cap.min(n as u32)),
        method,
    }
}

/// Depth-first search over `w`-subsets keeping a reduced basis per level.
fn any_dependent<A: Arith>(a: &A, flat: &[u32], r: usize, w: usize) -> bool {
    let n = flat.len() / r;
    // basis[t] holds t reduced vectors with their pivot positions
    fn go<A: Arith>(
        a: &A,
        flat: &[u32],
        r: usize,
        w: usize,
        start: usize,
        basis: &mut Vec<(Vec<u32>, usize)>,
    ) -> bool {
        let n = flat.len() / r;
        for i in start..n {
            if n - i < w - basis.len() {
                break;
            }
            let mut v = flat[i * r..(i + 1) * r].to_vec();
            reduce(a, &mut v, basis);
            let Some(pivot) = v.iter().position(|&x| x != 0) else {
                return true;
            };
            if basis.len() + 1 == w {
                continue;
            }
            let s = a.inv(v[pivot]);
            v.iter_mut().for_each(|x| *x = a.mul(*x, s));
            basis.push((v, pivot));
            let found = go(a, flat, r, w, i + 1, basis);
            basis.pop();
            if found {
                return true;
            }
        }
        false
    }
    n >= w && go(a, flat, r, w, 0, &mut Vec::with_capacity(w))
}

fn reduce<A: Arith>(a: &A, v: &mut [u32], basis: &[(Vec<u32>, usize)]) {
    for (b, p) in basis {
        let c = v[*p];
        if c != 0 {
            let m = a.neg(c);
            for (x, &y) in v.iter_mut().zip(b) {
                *x = a.add(*x, a.mul(m, y));
            }
        }
    }
}

/// Rank of the selected columns.
fn rank<A: Arith>(a: &A, flat: &[u32], r: usize, pick: &[usize]) -> usize {
    let mut basis: Vec<(Vec<u32>, usize)> = Vec::with_capacity(pick.len());
    for &i in pick {
        let mut v = flat[i * r..(i + 1) * r].to_vec();
        reduce(a, &mut v, &basis);
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let s = a.inv(v[p]);
            v.iter_mut().for_each(|x| *x = a.mul(*x, s));
            basis.push((v, p));
        }
    }
    basis.len()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `(1/q^r) Σ_{i≤R} (q-1)^i C(n, i)`: sphere volume over space volume.
pub fn covering_density(n: u64, r: u32, q: u64, radius: u32) -> BigRational {
    let mut sum = BigInt::zero();
    let mut binom = BigInt::one();
    let mut power = BigInt::one();
    for i in 0..=radius as u64 {
        if i > n {
            break;
        }
        if i > 0 {
            binom = binom * BigInt::from(n - i + 1) / BigInt::from(i);
            power *= BigInt::from(q - 1);
        }
        sum += &binom * &power;
    }
    BigRational::new(sum, BigInt::from(q).pow(r))
}

/// Singleton-defect class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Mds,
    AlmostMds,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Mds => "MDS",
            Classification::AlmostMds => "AlmostMDS",
            Classification::Other => "Other",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub q: u32,
    pub r: usize,
    pub n: usize,
    pub covering_radius: Radius,
    pub radius_mode: RadiusMode,
    /// A point not covered at radius one less than `covering_radius`.
    pub witness: Option<Column>,
    pub min_distance: Distance,
    pub distance_method: DistanceMethod,
    pub density: BigRational,
    pub classification: Classification,
    pub quasi_perfect: bool,
}

/// Combines radius and distance results into a report.
pub fn classify(code: &Code, radius: &RadiusCertificate, distance: &MinDistance) -> VerificationReport {
    let d = distance.distance.exact();
    let r = code.r as u32;
    let classification = match d {
        Some(d) if d == r + 1 => Classification::Mds,
        Some(d) if d == r => Classification::AlmostMds,
        _ => Classification::Other,
    };
    let rad = match radius.radius {
        Radius::Exactly(x) => x as u32,
        Radius::AboveThree => MAX_RADIUS as u32 + 1,
    };
    VerificationReport {
        q: code.q(),
        r: code.r,
        n: code.n(),
        covering_radius: radius.radius,
        radius_mode: radius.mode,
        witness: radius.witness.clone(),
        min_distance: distance.distance,
        distance_method: distance.method,
        density: covering_density(code.n() as u64, r, code.q() as u64, rad),
        classification,
        quasi_perfect: matches!(radius.radius, Radius::Exactly(x) if d.is_some_and(|d| x as u32 == (d - 1) / 2 + 1)),
    }
}

/// Covering radius, minimum distance (capped at 5) and classification.
pub fn verify(code: &Code, mode: RadiusMode) -> Result<VerificationReport, CoverageError> {
    let radius = certify_radius(code, mode)?;
    let distance = min_distance(code, 5);
    Ok(classify(code, &radius, &distance))
}

impl VerificationReport {
    pub fn density_value(&self) -> f64 {
        self.density.to_f64().unwrap_or(f64::NAN)
    }

    /// `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        put("q", self.q.to_string());
        put("r", self.r.to_string());
        put("n", self.n.to_string());
        put("covering_radius", self.covering_radius.to_string());
        put(
            "radius_method",
            match self.radius_mode {
                RadiusMode::Exhaustive => "exhaustive",
                RadiusMode::Incremental => "incremental",
            }
            .to_string(),
        );
        put(
            "witness",
            self.witness.as_ref().map_or_else(|| "-".into(), |c| c.to_string()),
        );
        put("min_distance", self.min_distance.to_string());
        put("distance_method", self.distance_method.to_string());
        put("density", self.density.to_string());
        put("density_approx", format!("{:.9}", self.density_value()));
        put("classification", self.classification.to_string());
        put("quasi_perfect", self.quasi_perfect.to_string());
        out
    }

    pub const CSV_HEADER: &'static str =
        "q,r,n,covering_radius,min_distance,distance_method,density,classification,quasi_perfect";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.q,
            self.r,
            self.n,
            self.covering_radius,
            self.min_distance,
            self.distance_method,
            self.density,
            self.classification,
            self.quasi_perfect
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{leximatrix, Algorithm};
    use crate::coverage::next_subset;
    use crate::gf::FieldSpec;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::from_order(q, None).unwrap()
    }

    fn code_of(f: &FieldSpec, r: usize, cols: &[&[u32]]) -> Code {
        Code {
            field: f.clone(),
            r,
            radius: 3,
            columns: cols.iter().map(|v| Column::new(v.to_vec(), f).unwrap()).collect(),
            algorithm: Algorithm::Imported,
            seed: None,
            d: None,
        }
    }

    #[test]
    fn density_examples() {
        let mu = covering_density(5, 4, 2, 3);
        assert_eq!(mu, BigRational::new(26.into(), 16.into()));
        // 1 + 8*10 + 28*100 + 56*1000 over 11^4
        let mu = covering_density(8, 4, 11, 3);
        assert_eq!(mu, BigRational::new(58881.into(), 14641.into()));
        assert!(mu > BigRational::one());
        assert!(covering_density(3, 4, 11, 3) < BigRational::one());
    }

    #[test]
    fn single_column_radius() {
        let f = gf(2);
        let code = code_of(&f, 4, &[&[0, 0, 0, 1]]);
        for mode in [RadiusMode::Exhaustive, RadiusMode::Incremental] {
            assert_eq!(covering_radius(&code, mode).unwrap(), Radius::AboveThree);
        }
    }

    #[test]
    fn leximatrix_codes_verify() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let f = gf(q);
            let code = leximatrix(&f, 4, 3).unwrap();
            let ex = certify_radius(&code, RadiusMode::Exhaustive).unwrap();
            let inc = certify_radius(&code, RadiusMode::Incremental).unwrap();
            // five binary columns already 2-cover all fifteen points
            let expect = if q == 2 { 2 } else { 3 };
            assert_eq!(ex.radius, Radius::Exactly(expect), "q={q}");
            assert_eq!(ex, RadiusCertificate { mode: RadiusMode::Exhaustive, ..inc });
            let d = min_distance(&code, 5);
            if q >= 3 {
                assert_eq!(d.distance, Distance::Exactly(5), "q={q}");
                let report = classify(&code, &ex, &d);
                assert_eq!(report.classification, Classification::Mds);
                assert!(report.quasi_perfect);
                assert!(report.density >= BigRational::one());
            }
        }
    }

    #[test]
    fn hamming_code_has_radius_one() {
        let f = gf(3);
        let code = leximatrix(&f, 3, 1).unwrap();
        assert_eq!(covering_radius(&code, RadiusMode::Exhaustive).unwrap(), Radius::Exactly(1));
        assert_eq!(min_distance(&code, 5).distance, Distance::Exactly(3));
    }

    #[test]
    fn dependent_triple_gives_distance_three() {
        let f = gf(5);
        let code = code_of(&f, 4, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 0]]);
        assert_eq!(min_distance(&code, 5).distance, Distance::Exactly(3));
        let independent = code_of(&f, 4, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0]]);
        assert_eq!(min_distance(&independent, 5).distance, Distance::Above(3));
    }

    #[test]
    fn distance_agrees_with_determinant_oracle() {
        // every 4-subset of the q = 13 leximatrix has nonzero determinant
        let f = FieldSpec::from_order(13, None).unwrap();
        let code = leximatrix(&f, 4, 3).unwrap();
        let det = |m: [[i64; 4]; 4]| -> i64 {
            let mut s = 0;
            let perms = permutations4();
            for (p, sign) in perms {
                s += sign * (0..4).map(|i| m[i][p[i]]).product::<i64>();
            }
            s.rem_euclid(13)
        };
        let cols: Vec<[i64; 4]> = code
            .columns
            .iter()
            .map(|c| {
                let v = c.coords();
                [v[0] as i64, v[1] as i64, v[2] as i64, v[3] as i64]
            })
            .collect();
        let mut s = vec![0, 1, 2, 3];
        loop {
            let m = [cols[s[0]], cols[s[1]], cols[s[2]], cols[s[3]]];
            assert_ne!(det(m), 0);
            if !next_subset(&mut s, cols.len()) {
                break;
            }
        }
        assert_eq!(min_distance(&code, 5).distance, Distance::Exactly(5));
    }

    fn permutations4() -> Vec<([usize; 4], i64)> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                            let inversions = (0..4)
                                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                                .filter(|&(i, j)| p[i] > p[j])
                                .count();
                            out.push((p, if inversions % 2 == 0 { 1 } else { -1 }));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sampled_mode_is_flagged() {
        let f = gf(11);
        let code = leximatrix(&f, 4, 3).unwrap();
        let opts = DistanceOptions {
            exhaustive_limit: 10,
            samples: 2000,
            seed: 1,
        };
        let d = min_distance_with(&code, 5, opts);
        assert_eq!(d.method, DistanceMethod::Sampled(2000));
        assert_eq!(d.distance, Distance::Exactly(5));
    }

    #[test]
    fn report_serialization() {
        let f = gf(11);
        let code = leximatrix(&f, 4, 3).unwrap();
        let report = verify(&code, RadiusMode::Exhaustive).unwrap();
        let kv = report.to_key_values();
        assert!(kv.contains("covering_radius=3\n"));
        assert!(kv.contains("min_distance=5\n"));
        assert!(kv.contains("classification=MDS\n"));
        assert!(kv.contains("density=58881/14641\n"));
        assert_eq!(
            report.to_csv_row(),
            "11,4,8,3,5,exhaustive,58881/14641,MDS,true"
        );
    }
}
