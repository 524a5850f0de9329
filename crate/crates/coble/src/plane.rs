//! Six-point configurations in the projective plane — the blow-up model of a
//! marked cubic surface.
//!
//! Points are stored in a canonical affine representative (first nonzero
//! coordinate scaled to one), so the minors and the conic determinant
//! evaluate to reproducible rationals. Only invariant-theoretic combinations
//! of those scalars (gamma vectors up to a common factor, their ratios, the
//! weighted Clebsch vector) are independent of that trivialization.

use num::{One, Zero};
use rand::Rng;
use serde_json::Value;
use thiserror::Error;

use crate::exact::{parse_rational, rational_to_string, QMatrix, Rational};

#[derive(Debug, Error)]
pub enum PlaneError {
    /// Three points collinear, six on a conic, or a repeated point.
    #[error("degenerate configuration: {0}")]
    DegenerateConfig(String),
    /// A coordinate map was evaluated outside its domain.
    #[error("map not defined here: {0}")]
    NotDefinedHere(String),
    #[error("invalid configuration data: {0}")]
    Parse(String),
}

/// A point of the projective plane in canonical form: the first nonzero
/// coordinate equals one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint2 {
    coords: [Rational; 3],
}

impl ProjPoint2 {
    pub fn new(coords: [Rational; 3]) -> Result<Self, PlaneError> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(PlaneError::Parse("zero vector is not a projective point".into()));
        };
        let inv = Rational::one() / first;
        Ok(ProjPoint2 {
            coords: [&coords[0] * &inv, &coords[1] * &inv, &coords[2] * &inv],
        })
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        ProjPoint2::new([
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
            Rational::from_integer(z.into()),
        ])
        .expect("nonzero coordinates")
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }
}

/// An ordered sequence of six plane points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixPointConfig {
    points: [ProjPoint2; 6],
}

/// The coordinates `(w, x, y, z)` of the naive chart: the configuration
/// `(1:0:0), (0:1:0), (0:0:1), (1:1:1), (w:x:1), (y:z:1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveCoords {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl NaiveCoords {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        NaiveCoords { w, x, y, z }
    }

    pub fn from_i64(w: i64, x: i64, y: i64, z: i64) -> Self {
        NaiveCoords::new(
            Rational::from_integer(w.into()),
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
            Rational::from_integer(z.into()),
        )
    }

    pub fn as_array(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    /// The configuration this chart point represents.
    pub fn to_config(&self) -> Result<SixPointConfig, PlaneError> {
        let one = Rational::one;
        let zero = Rational::zero;
        let mk = ProjPoint2::new;
        Ok(SixPointConfig::new([
            mk([one(), zero(), zero()])?,
            mk([zero(), one(), zero()])?,
            mk([zero(), zero(), one()])?,
            mk([one(), one(), one()])?,
            mk([self.w.clone(), self.x.clone(), one()])?,
            mk([self.y.clone(), self.z.clone(), one()])?,
        ]))
    }
}

impl SixPointConfig {
    pub fn new(points: [ProjPoint2; 6]) -> Self {
        SixPointConfig { points }
    }

    pub fn points(&self) -> &[ProjPoint2; 6] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &ProjPoint2 {
        assert!((1..=6).contains(&i), "point index is 1-based");
        &self.points[i - 1]
    }

    /// Relabels the points: point `j` of the result is point `sigma^{-1}(j)`
    /// of `self`, for `sigma` given as images `sigma[i-1] = sigma(i)`.
    pub fn permuted(&self, sigma: &[usize; 6]) -> SixPointConfig {
        let mut inv = [0usize; 6];
        for (i, &s) in sigma.iter().enumerate() {
            inv[s - 1] = i + 1;
        }
        SixPointConfig::new(std::array::from_fn(|j| self.points[inv[j] - 1].clone()))
    }

    /// JSON form: array of six arrays of three rational strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.points
                .iter()
                .map(|p| {
                    Value::Array(
                        p.coords()
                            .iter()
                            .map(|c| Value::String(rational_to_string(c)))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, PlaneError> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 6)
            .ok_or_else(|| PlaneError::Parse("expected an array of six points".into()))?;
        let mut points = Vec::with_capacity(6);
        for p in arr {
            let triple = p
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| PlaneError::Parse("each point needs three coordinates".into()))?;
            let mut coords = Vec::with_capacity(3);
            for c in triple {
                let s = c
                    .as_str()
                    .ok_or_else(|| PlaneError::Parse("coordinates are rational strings".into()))?;
                coords.push(parse_rational(s).map_err(|e| PlaneError::Parse(e.to_string()))?);
            }
            points.push(ProjPoint2::new([
                coords[0].clone(),
                coords[1].clone(),
                coords[2].clone(),
            ])?);
        }
        Ok(SixPointConfig::new(std::array::from_fn(|i| points[i].clone())))
    }
}

/// The 3×3 determinant of the rows indexed by `triple` (1-based, evaluated in
/// ascending index order, i.e. the minor attached to the index set).
pub fn minor(config: &SixPointConfig, triple: [usize; 3]) -> Rational {
    let mut idx = triple;
    idx.sort_unstable();
    assert!(idx[0] >= 1 && idx[2] <= 6 && idx[0] != idx[1] && idx[1] != idx[2]);
    let r = |i: usize| config.point(i).coords();
    det3(r(idx[0]), r(idx[1]), r(idx[2]))
}

fn det3(a: &[Rational; 3], b: &[Rational; 3], c: &[Rational; 3]) -> Rational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Determinant of the 6×6 matrix of squared and mixed coordinates; vanishes
/// exactly when the six points lie on a conic.
pub fn d2(config: &SixPointConfig) -> Rational {
    let rows: Vec<Vec<Rational>> = config
        .points
        .iter()
        .map(|p| {
            let [x0, x1, x2] = p.coords();
            vec![x0 * x0, x1 * x1, x2 * x2, x0 * x1, x0 * x2, x1 * x2]
        })
        .collect();
    QMatrix::from_rows(rows).det()
}

/// No three points collinear and not all six on a conic.
pub fn general_position(config: &SixPointConfig) -> bool {
    degeneracy_witness(config).is_none()
}

/// The failing witness for a degenerate configuration: a collinear triple,
/// or `None` inside the `Some` for the conic condition.
pub fn degeneracy_witness(config: &SixPointConfig) -> Option<Option<[usize; 3]>> {
    for i in 1..=4 {
        for j in i + 1..=5 {
            for k in j + 1..=6 {
                if minor(config, [i, j, k]).is_zero() {
                    return Some(Some([i, j, k]));
                }
            }
        }
    }
    if d2(config).is_zero() {
        return Some(None);
    }
    None
}

/// Normalizes a general-position configuration to the naive chart.
///
/// Returns the `(w, x, y, z)` coordinates together with the projective
/// transformation (primitive integer entries, unique up to scaling) carrying
/// the first four points to the standard basis.
pub fn normalize_to_standard(
    config: &SixPointConfig,
) -> Result<(NaiveCoords, QMatrix), PlaneError> {
    if let Some(w) = degeneracy_witness(config) {
        return Err(PlaneError::DegenerateConfig(describe_witness(w)));
    }
    // columns p1, p2, p3
    let mut m = QMatrix::zero(3, 3);
    for (c, i) in (1..=3).enumerate() {
        for r in 0..3 {
            *m.at_mut(r, c) = config.point(i).coords()[r].clone();
        }
    }
    let inv = invert3(&m).expect("points 1..3 are not collinear");
    let q = inv.mul_vec(config.point(4).coords().as_slice());
    // scale rows so p4 goes to (1:1:1)
    let mut a = QMatrix::zero(3, 3);
    for r in 0..3 {
        debug_assert!(!q[r].is_zero());
        let s = Rational::one() / &q[r];
        for c in 0..3 {
            *a.at_mut(r, c) = inv.at(r, c) * &s;
        }
    }
    let p5 = a.mul_vec(config.point(5).coords().as_slice());
    let p6 = a.mul_vec(config.point(6).coords().as_slice());
    if p5[2].is_zero() || p6[2].is_zero() {
        // unreachable once general position holds; kept as a guard
        return Err(PlaneError::DegenerateConfig(
            "image of p5 or p6 lies on the line at infinity".into(),
        ));
    }
    let n = NaiveCoords::new(
        &p5[0] / &p5[2],
        &p5[1] / &p5[2],
        &p6[0] / &p6[2],
        &p6[1] / &p6[2],
    );
    let mut flat = Vec::with_capacity(9);
    for r in 0..3 {
        for c in 0..3 {
            flat.push(a.at(r, c).clone());
        }
    }
    let prim = crate::exact::primitive_integer_vector(&flat).expect("nonzero transform");
    let a_prim = QMatrix::new(3, 3, prim.into_iter().map(Rational::from_integer).collect());
    Ok((n, a_prim))
}

fn describe_witness(w: Option<[usize; 3]>) -> String {
    match w {
        Some([i, j, k]) => format!("points {i}, {j}, {k} are collinear"),
        None => "all six points lie on a conic".into(),
    }
}

fn invert3(m: &QMatrix) -> Option<QMatrix> {
    let det = m.det();
    if det.is_zero() {
        return None;
    }
    let inv_det = Rational::one() / det;
    let mut out = QMatrix::zero(3, 3);
    for r in 0..3 {
        for c in 0..3 {
            let sub: Vec<Rational> = (0..3)
                .filter(|&i| i != c)
                .flat_map(|i| (0..3).filter(|&j| j != r).map(move |j| m.at(i, j).clone()))
                .collect();
            let cof = &sub[0] * &sub[3] - &sub[1] * &sub[2];
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            *out.at_mut(r, c) = cof * Rational::from_integer(sign.into()) * &inv_det;
        }
    }
    Some(out)
}

/// The second point of the fiber of the triple-invariant projection: the same
/// cubic surface carrying the flipped marking.
pub fn partner(n: &NaiveCoords) -> Result<NaiveCoords, PlaneError> {
    let (w, x, y, z) = (&n.w, &n.x, &n.y, &n.z);
    let common = w * z - x * y;
    let one = Rational::one();
    let denoms = [
        (x - z) * (y - z),
        (w - y) * (y - z),
        (w - x) * (x - z),
        (w - x) * (w - y),
    ];
    if denoms.iter().any(Zero::is_zero) {
        return Err(PlaneError::NotDefinedHere(
            "partner formulas have a vanishing denominator".into(),
        ));
    }
    let out = NaiveCoords::new(
        &common * (z - &one) / &denoms[0],
        &common * (y - &one) / &denoms[1],
        &common * (x - &one) / &denoms[2],
        &common * (w - &one) / &denoms[3],
    );
    if out.as_array().iter().any(|c| c.is_zero()) {
        return Err(PlaneError::NotDefinedHere(
            "partner lands outside the naive chart".into(),
        ));
    }
    Ok(out)
}

/// The quadratic transformation with centre in the first three points:
/// componentwise reciprocal on the naive chart.
pub fn cremona_i123(n: &NaiveCoords) -> Result<NaiveCoords, PlaneError> {
    if n.as_array().iter().any(|c| c.is_zero()) {
        return Err(PlaneError::NotDefinedHere(
            "reciprocal of a zero coordinate".into(),
        ));
    }
    let one = Rational::one();
    Ok(NaiveCoords::new(
        &one / &n.w,
        &one / &n.x,
        &one / &n.y,
        &one / &n.z,
    ))
}

/// Draws integer-coordinate configurations until one is in general position.
///
/// Coordinates are uniform in `[-20, 20]`; deterministic for a fixed RNG
/// state.
pub fn random_config<R: Rng>(rng: &mut R) -> SixPointConfig {
    loop {
        let mut pts = Vec::with_capacity(6);
        let mut ok = true;
        for _ in 0..6 {
            let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-20..=20));
            if c.iter().all(|&x| x == 0) {
                ok = false;
                break;
            }
            pts.push(ProjPoint2::new(c.map(|x| Rational::from_integer(x.into()))).unwrap());
        }
        if !ok {
            continue;
        }
        let config = SixPointConfig::new(std::array::from_fn(|i| pts[i].clone()));
        if general_position(&config) {
            return config;
        }
    }
}

/// Random naive-chart coordinates whose configuration is in general position.
pub fn random_naive<R: Rng>(rng: &mut R) -> NaiveCoords {
    loop {
        let vals: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-20..=20));
        let n = NaiveCoords::from_i64(vals[0], vals[1], vals[2], vals[3]);
        if let Ok(c) = n.to_config() {
            if general_position(&c) {
                return n;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn standard_config() -> SixPointConfig {
        NaiveCoords::from_i64(2, 3, 5, 7).to_config().unwrap()
    }

    #[test]
    fn canonical_point_form() {
        let p = ProjPoint2::new([rat(2), rat(3), rat(1)]).unwrap();
        assert_eq!(p.coords(), &[rat(1), frac(3, 2), frac(1, 2)]);
        let q = ProjPoint2::new([rat(0), rat(-4), rat(2)]).unwrap();
        assert_eq!(q.coords(), &[rat(0), rat(1), frac(-1, 2)]);
    }

    #[test]
    fn standard_config_is_general_position() {
        assert!(general_position(&standard_config()));
    }

    #[test]
    fn repeated_point_is_degenerate() {
        let mut pts = standard_config().points().clone();
        pts[1] = pts[0].clone();
        assert!(!general_position(&SixPointConfig::new(pts)));
    }

    #[test]
    fn conic_configuration_is_degenerate() {
        // six distinct points on the conic x0*x2 = x1^2: (t^2 : t : 1)
        let pts: Vec<ProjPoint2> = [1i64, 2, 3, 4, 5, 6]
            .iter()
            .map(|&t| ProjPoint2::from_i64(t * t, t, 1))
            .collect();
        let config = SixPointConfig::new(std::array::from_fn(|i| pts[i].clone()));
        assert!(d2(&config).is_zero());
        assert!(!general_position(&config));
        assert_eq!(degeneracy_witness(&config), Some(None));
    }

    #[test]
    fn minor_oracle_values() {
        // oracle: cofactor expansion on the canonical representatives
        // p4 = (1,1,1), p5 = (1, 3/2, 1/2), p6 = (1, 7/5, 1/5)
        let c = standard_config();
        assert_eq!(minor(&c, [1, 2, 3]), rat(1));
        assert_eq!(minor(&c, [4, 5, 6]), frac(-1, 5));
        assert_eq!(d2(&c), frac(11, 50));
    }

    #[test]
    fn collinear_triple_minor_vanishes() {
        let pts = [
            ProjPoint2::from_i64(1, 0, 0),
            ProjPoint2::from_i64(1, 1, 0),
            ProjPoint2::from_i64(1, 2, 0),
            ProjPoint2::from_i64(1, 1, 1),
            ProjPoint2::from_i64(2, 3, 1),
            ProjPoint2::from_i64(5, 7, 1),
        ];
        let c = SixPointConfig::new(pts);
        assert!(minor(&c, [1, 2, 3]).is_zero());
        assert_eq!(degeneracy_witness(&c), Some(Some([1, 2, 3])));
    }

    #[test]
    fn beautiful_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let c = random_config(&mut rng);
            let m = |t: [usize; 3]| minor(&c, t);
            let rhs = -(m([1, 3, 4]) * m([1, 5, 6]) * m([2, 3, 5]) * m([2, 4, 6])
                - m([1, 3, 5]) * m([1, 4, 6]) * m([2, 3, 4]) * m([2, 5, 6]));
            assert_eq!(d2(&c), rhs);
        }
    }

    #[test]
    fn all_minors_nonzero_in_general_position() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let c = random_config(&mut rng);
            for i in 1..=4 {
                for j in i + 1..=5 {
                    for k in j + 1..=6 {
                        assert!(!minor(&c, [i, j, k]).is_zero());
                    }
                }
            }
            assert!(!d2(&c).is_zero());
        }
    }

    #[test]
    fn normalize_standard_form_is_identity() {
        let c = standard_config();
        let (n, a) = normalize_to_standard(&c).unwrap();
        assert_eq!(n, NaiveCoords::from_i64(2, 3, 5, 7));
        assert_eq!(a, QMatrix::identity(3));
    }

    #[test]
    fn normalize_is_pgl3_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let c = standard_config();
        let (n0, _) = normalize_to_standard(&c).unwrap();
        for _ in 0..10 {
            let m = loop {
                let entries: Vec<i64> = (0..9).map(|_| rng.gen_range(-9..=9)).collect();
                let m = QMatrix::from_i64(3, 3, &entries);
                if !m.det().is_zero() {
                    break m;
                }
            };
            let pts = c.points().clone().map(|p| {
                ProjPoint2::new(std::array::from_fn(|r| {
                    m.row(r)
                        .iter()
                        .zip(p.coords())
                        .map(|(a, b)| a * b)
                        .sum::<Rational>()
                }))
                .unwrap()
            });
            let moved = SixPointConfig::new(pts);
            let (n1, _) = normalize_to_standard(&moved).unwrap();
            assert_eq!(n0, n1);
        }
    }

    #[test]
    fn degenerate_normalize_rejected() {
        let pts = [
            ProjPoint2::from_i64(1, 0, 0),
            ProjPoint2::from_i64(0, 1, 0),
            ProjPoint2::from_i64(0, 0, 1),
            ProjPoint2::from_i64(1, 1, 1),
            // p5 with third coordinate zero: collinear with p1, p2
            ProjPoint2::from_i64(2, 3, 0),
            ProjPoint2::from_i64(5, 7, 1),
        ];
        let c = SixPointConfig::new(pts);
        assert!(matches!(
            normalize_to_standard(&c),
            Err(PlaneError::DegenerateConfig(_))
        ));
    }

    #[test]
    fn partner_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20 {
            let n = random_naive(&mut rng);
            let p = partner(&n).expect("partner defined on general-position chart points");
            assert_eq!(partner(&p).unwrap(), n);
        }
    }

    #[test]
    fn partner_degenerate_inputs() {
        // wz = xy: shared numerator factor vanishes, image leaves the chart
        let n = NaiveCoords::from_i64(6, 2, 3, 1);
        assert!(matches!(partner(&n), Err(PlaneError::NotDefinedHere(_))));
        // x = z: vanishing denominator
        let n = NaiveCoords::from_i64(2, 3, 5, 3);
        assert!(matches!(partner(&n), Err(PlaneError::NotDefinedHere(_))));
    }

    #[test]
    fn cremona_examples() {
        let n = NaiveCoords::from_i64(2, 3, 5, 7);
        let r = cremona_i123(&n).unwrap();
        assert_eq!(
            r.as_array().map(Clone::clone),
            [frac(1, 2), frac(1, 3), frac(1, 5), frac(1, 7)]
        );
        assert_eq!(cremona_i123(&r).unwrap(), n);
        let bad = NaiveCoords::from_i64(0, 3, 5, 7);
        assert!(matches!(cremona_i123(&bad), Err(PlaneError::NotDefinedHere(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = standard_config();
        let j = c.to_json();
        let back = SixPointConfig::from_json(&j).unwrap();
        assert_eq!(c, back);
        assert!(SixPointConfig::from_json(&serde_json::json!([["1", "0"]])).is_err());
    }
}
