//! Named, seeded property suites that machine-check the operators'
//! valuation, equivariance, integrality, and expansion behavior, with
//! machine-readable counterexamples on failure.
//!
//! Every suite is deterministic given (seed, trials): trial t draws from a
//! ChaCha stream selected by the seed and the trial index. The suites check
//! the computable directions of the classification statements; uniqueness
//! ("only if") directions are not mechanically checkable and are flagged in
//! the report notes instead.

use std::time::Instant;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::decomp::{quadruples_library, ValuationQuadruple};
use crate::ehrhart::{
    self, bivariate_count_check, count, discrete_moment, discrete_steiner, is_centrally_symmetric,
    l1_additivity_check,
};
use crate::error::{Error, Result};
use crate::jsonio::{polytope_to_json, ratvec_to_json};
use crate::linalg::{random_unimodular, IntVec, RatVec, UnimodularMap};
use crate::operators::{
    contra_z_ab_2d, difference_body, projection_body, rotate90, z_ab, MinkowskiOperator,
    OperatorSpec, TransformKind,
};
use crate::polytope::Polytope;
use crate::rational::{factorial, lcm_up_to, rat, rat_int, Int, Rational};

/// One counterexample: the serialized input and the two mismatching values.
#[derive(Clone, Debug)]
pub struct SuiteFailure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one suite run; failures empty iff the suite passed.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub dimension: usize,
    pub trials: usize,
    pub failures: Vec<SuiteFailure>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "dim": self.dimension,
            "trials": self.trials,
            "passed": self.passed(),
            "failures": Value::Array(
                self.failures
                    .iter()
                    .map(|f| json!({
                        "input": f.input,
                        "expected": f.expected,
                        "actual": f.actual,
                    }))
                    .collect()
            ),
            "notes": self.notes,
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

struct SuiteRun {
    suite: String,
    dimension: usize,
    failures: Vec<SuiteFailure>,
    notes: Vec<String>,
    checks: usize,
    start: Instant,
}

impl SuiteRun {
    fn new(suite: impl Into<String>, dimension: usize) -> Self {
        SuiteRun {
            suite: suite.into(),
            dimension,
            failures: Vec::new(),
            notes: Vec::new(),
            checks: 0,
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, input: impl FnOnce() -> String, expected: impl FnOnce() -> String, actual: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(SuiteFailure {
                input: input(),
                expected: expected(),
                actual: actual(),
            });
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            dimension: self.dimension,
            trials: self.checks,
            failures: self.failures,
            notes: self.notes,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// Per-trial generator stream: one 64-bit master seed, streams split by
/// trial index.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial + 1);
    rng
}

/// Corpus size knobs per dimension, chosen so the zonotope constructions
/// stay fast in dimension 3 and 4.
pub fn corpus_params(n: usize) -> (i64, usize) {
    match n {
        2 => (4, 7),
        3 => (3, 6),
        _ => (2, 6),
    }
}

/// Default trial counts per dimension.
pub fn default_trials(n: usize) -> usize {
    match n {
        2 => 100,
        3 => 40,
        _ => 10,
    }
}

/// Hull of `points` integer points drawn uniformly from [0, box_size]^n;
/// deterministic per seed.
pub fn random_lattice_polytope(n: usize, box_size: i64, points: usize, seed: u64) -> Result<Polytope> {
    if box_size < 1 {
        return Err(Error::Input("box size must be at least 1".into()));
    }
    if points < n + 1 {
        return Err(Error::Input("need at least n + 1 points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_polytope(&mut rng, n, box_size, points)
}

/// As `random_lattice_polytope`, regenerating until the hull is
/// full-dimensional (up to 100 retries).
pub fn random_fulldim_lattice_polytope(
    n: usize,
    box_size: i64,
    points: usize,
    seed: u64,
) -> Result<Polytope> {
    if box_size < 1 {
        return Err(Error::Input("box size must be at least 1".into()));
    }
    if points < n + 1 {
        return Err(Error::Input("need at least n + 1 points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let p = draw_polytope(&mut rng, n, box_size, points)?;
        if p.dim() == n {
            return Ok(p);
        }
    }
    Err(Error::Validation("no full-dimensional hull after 100 retries".into()))
}

fn draw_polytope(rng: &mut ChaCha8Rng, n: usize, box_size: i64, points: usize) -> Result<Polytope> {
    let pts: Vec<Vec<i64>> = (0..points)
        .map(|_| (0..n).map(|_| rng.random_range(0..=box_size)).collect())
        .collect();
    Polytope::from_lattice_points(n, &pts)
}

fn random_fulldim_from(rng: &mut ChaCha8Rng, n: usize) -> Result<Polytope> {
    let (bx, pts) = corpus_params(n);
    random_fulldim_lattice_polytope(n, bx, pts, rng.random())
}

fn random_shift(rng: &mut ChaCha8Rng, n: usize) -> RatVec {
    RatVec::from_i64(&(0..n).map(|_| rng.random_range(-4i64..=4)).collect::<Vec<_>>())
}

fn random_map(rng: &mut ChaCha8Rng, n: usize) -> Result<UnimodularMap> {
    // twelve shear steps keep coordinates small through dimension 3; the
    // dimension-4 enumeration budget wants gentler images
    let steps = if n >= 4 { 5 } else { 12 };
    random_unimodular(n, steps, rng.random())
}

fn quad_json(q: &ValuationQuadruple) -> String {
    crate::jsonio::quadruple_to_json(q).to_string()
}

fn poly_str(p: &Polytope) -> String {
    polytope_to_json(p).to_string()
}

/// ω(U) + ω(I) = ω(P) + ω(Q) as Minkowski sums over the curated quadruple
/// library plus `trials` randomly transformed copies.
pub fn suite_valuation(
    op: &dyn MinkowskiOperator,
    n: usize,
    seed: u64,
    trials: usize,
) -> Result<SuiteReport> {
    let mut run = SuiteRun::new(format!("valuation[{}]", op.label()), n);
    let mut quads = quadruples_library(n)?;
    if n >= 4 {
        // brute-force subset search budgets roughly 12 vertices per part;
        // drop the cube-sized quadruples beyond dimension 3
        quads.retain(|q| q.union_hull.n_vertices() <= 12);
        run.note("dimension >= 4 uses the small-quadruple subset (parts within the 12-vertex enumeration budget)".to_string());
    }
    let check = |run: &mut SuiteRun, quad: &ValuationQuadruple| -> Result<()> {
        let lhs = op
            .apply(&quad.union_hull)?
            .minkowski_sum(&op.apply(&quad.intersection)?)?;
        let rhs = op.apply(&quad.p)?.minkowski_sum(&op.apply(&quad.q)?)?;
        run.check(
            lhs == rhs,
            || quad_json(quad),
            || poly_str(&rhs),
            || poly_str(&lhs),
        );
        Ok(())
    };
    for quad in &quads {
        check(&mut run, quad)?;
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let base = &quads[rng.random_range(0..quads.len())];
        let phi = random_map(&mut rng, n)?;
        let z = random_shift(&mut rng, n);
        let quad = base.transformed(&phi, &z)?;
        check(&mut run, &quad)?;
    }
    run.note("checks the valuation identity; the uniqueness direction of the classification is not machine-checkable".to_string());
    Ok(run.finish())
}

/// op(phi P + z) = phi · op(P) on random inputs.
pub fn suite_equivariance(
    op: &dyn MinkowskiOperator,
    n: usize,
    seed: u64,
    trials: usize,
) -> Result<SuiteReport> {
    let mut run = SuiteRun::new(format!("equivariance[{}]", op.label()), n);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let p = random_fulldim_from(&mut rng, n)?;
        let phi = random_map(&mut rng, n)?;
        let z = random_shift(&mut rng, n);
        let moved = p.apply_unimodular(&phi)?.translate(&z);
        let lhs = op.apply(&moved)?;
        let rhs = op.apply(&p)?.apply_unimodular(&phi)?;
        run.check(
            lhs == rhs,
            || json!({"p": polytope_to_json(&p), "trial": t}).to_string(),
            || poly_str(&rhs),
            || poly_str(&lhs),
        );
    }
    Ok(run.finish())
}

/// op(phi P + z) = phi^{-t} · op(P) on random inputs.
pub fn suite_contravariance(
    op: &dyn MinkowskiOperator,
    n: usize,
    seed: u64,
    trials: usize,
) -> Result<SuiteReport> {
    let mut run = SuiteRun::new(format!("contravariance[{}]", op.label()), n);
    if n >= 4 {
        run.note("dimension >= 4 draws basic-simplex images to keep the zonotope construction within budget".to_string());
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let p = if n <= 3 {
            random_fulldim_from(&mut rng, n)?
        } else {
            Polytope::standard_simplex(n)
                .apply_unimodular(&random_map(&mut rng, n)?)?
                .translate(&random_shift(&mut rng, n))
        };
        let phi = random_map(&mut rng, n)?;
        let z = random_shift(&mut rng, n);
        let moved = p.apply_unimodular(&phi)?.translate(&z);
        let lhs = op.apply(&moved)?;
        let rhs = op.apply(&p)?.apply_unimodular(&phi.inverse_transpose())?;
        run.check(
            lhs == rhs,
            || json!({"p": polytope_to_json(&p), "trial": t}).to_string(),
            || poly_str(&rhs),
            || poly_str(&lhs),
        );
    }
    Ok(run.finish())
}

/// The discrete Steiner point: translation and determinant-one
/// equivariance, Minkowski additivity, the valuation identity on the
/// quadruple library, and agreement with the centroid on basic simplices
/// and detected centrally symmetric polytopes.
pub fn suite_dst(n: usize, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("dst", n);

    // centroid agreement on the standard simplices of every dimension <= n
    for m in 1..=n {
        let mut pts = vec![RatVec::zero(n)];
        pts.extend((0..m).map(|i| RatVec::unit(n, i)));
        let t_m = Polytope::from_points(n, pts)?;
        let s = discrete_steiner(&t_m)?;
        run.check(
            s == t_m.centroid(),
            || poly_str(&t_m),
            || ratvec_to_json(&t_m.centroid()).to_string(),
            || ratvec_to_json(&s).to_string(),
        );
    }

    // valuation identity over the curated quadruples
    for quad in quadruples_library(n)? {
        let lhs = discrete_steiner(&quad.union_hull)?.add(&discrete_steiner(&quad.intersection)?);
        let rhs = discrete_steiner(&quad.p)?.add(&discrete_steiner(&quad.q)?);
        run.check(
            lhs == rhs,
            || quad_json(&quad),
            || ratvec_to_json(&rhs).to_string(),
            || ratvec_to_json(&lhs).to_string(),
        );
    }

    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let p = random_fulldim_from(&mut rng, n)?;
        let q = random_fulldim_from(&mut rng, n)?;
        let phi = random_map(&mut rng, n)?;
        let z = random_shift(&mut rng, n);

        // equivariance
        let lhs = discrete_steiner(&p.apply_unimodular(&phi)?.translate(&z))?;
        let rhs = phi.apply_rat(&discrete_steiner(&p)?).add(&z);
        run.check(
            lhs == rhs,
            || json!({"p": polytope_to_json(&p), "trial": t, "rule": "equivariance"}).to_string(),
            || ratvec_to_json(&rhs).to_string(),
            || ratvec_to_json(&lhs).to_string(),
        );

        // additivity
        let sum = p.minkowski_sum(&q)?;
        let lhs = discrete_steiner(&sum)?;
        let rhs = discrete_steiner(&p)?.add(&discrete_steiner(&q)?);
        run.check(
            lhs == rhs,
            || json!({"p": polytope_to_json(&p), "q": polytope_to_json(&q), "rule": "additivity"}).to_string(),
            || ratvec_to_json(&rhs).to_string(),
            || ratvec_to_json(&lhs).to_string(),
        );

        // basic simplex image: Steiner point is the centroid
        let mut pts = vec![RatVec::zero(n)];
        let m = 1 + (t % n);
        pts.extend((0..m).map(|i| RatVec::unit(n, i)));
        let simplex = Polytope::from_points(n, pts)?
            .apply_unimodular(&phi)?
            .translate(&z);
        run.check(
            simplex.is_basic_simplex(),
            || poly_str(&simplex),
            || "a basic simplex".to_string(),
            || "not basic".to_string(),
        );
        let s = discrete_steiner(&simplex)?;
        run.check(
            s == simplex.centroid(),
            || json!({"p": polytope_to_json(&simplex), "rule": "basic simplex centroid"}).to_string(),
            || ratvec_to_json(&simplex.centroid()).to_string(),
            || ratvec_to_json(&s).to_string(),
        );

        // centrally symmetric polytope: Steiner point is the center
        let sym = difference_body(&p).translate(&z);
        run.check(
            is_centrally_symmetric(&sym),
            || poly_str(&sym),
            || "centrally symmetric".to_string(),
            || "asymmetric".to_string(),
        );
        let s = discrete_steiner(&sym)?;
        run.check(
            s == sym.centroid(),
            || json!({"p": polytope_to_json(&sym), "rule": "symmetric centroid"}).to_string(),
            || ratvec_to_json(&sym.centroid()).to_string(),
            || ratvec_to_json(&s).to_string(),
        );
    }
    Ok(run.finish())
}

/// Denominator bound and lattice-image behavior: m_n · s(P) is integral,
/// z_ab with integer parameters and b - a divisible by m_n maps lattice
/// polytopes to lattice polytopes, a violating parameter pair exhibits a
/// standard-simplex witness, and the scaled projection body with
/// c = (n-1)! is lattice-preserving (the planar rotated family likewise).
pub fn suite_integrality(n: usize, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("integrality", n);
    let m_n = lcm_up_to(n as u32 + 1);
    let m_rat = Rational::from_integer(m_n.clone());
    let good_b = Rational::from_integer(Int::from(1) + &m_n);

    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let p = random_fulldim_from(&mut rng, n)?;

        // m_n times the Steiner point is a lattice vector
        let s = discrete_steiner(&p)?.scale(&m_rat);
        run.check(
            s.is_integral(),
            || json!({"p": polytope_to_json(&p), "rule": "m_n * dst integral"}).to_string(),
            || "integer vector".to_string(),
            || ratvec_to_json(&s).to_string(),
        );

        // congruent parameter pairs preserve the lattice
        for (a, b) in [(rat_int(1), good_b.clone()), (rat_int(2), rat_int(2))] {
            let img = z_ab(&p, &a, &b)?;
            run.check(
                img.is_lattice(),
                || json!({"p": polytope_to_json(&p), "rule": format!("z_ab({a},{b}) lattice image")}).to_string(),
                || "lattice polytope".to_string(),
                || poly_str(&img),
            );
        }

        // scaled projection body with c = (n-1)! preserves the lattice;
        // zonotope construction on random input stays within dimension 3
        if n <= 3 {
            let c = Rational::from_integer(factorial(n - 1));
            let img = projection_body(&p)?.scale(&c);
            run.check(
                img.is_lattice(),
                || json!({"p": polytope_to_json(&p), "rule": "(n-1)! * projection body lattice image"}).to_string(),
                || "lattice polytope".to_string(),
                || poly_str(&img),
            );
        }

        if n == 2 {
            let img = contra_z_ab_2d(&p, &rat_int(1), &rat_int(7))?;
            run.check(
                img.is_lattice(),
                || json!({"p": polytope_to_json(&p), "rule": "rotated z_ab(1,7) lattice image"}).to_string(),
                || "lattice polytope".to_string(),
                || poly_str(&img),
            );
        }
    }

    // violating pair (1, 2): some standard simplex is a witness
    let mut witness = false;
    for k in 1..=n {
        let mut pts = vec![RatVec::zero(n)];
        pts.extend((0..k).map(|i| RatVec::unit(n, i)));
        let t_k = Polytope::from_points(n, pts)?;
        if !z_ab(&t_k, &rat_int(1), &rat_int(2))?.is_lattice() {
            witness = true;
            break;
        }
    }
    run.check(
        witness,
        || "z_ab(1,2) over the standard simplices".to_string(),
        || "a simplex with a non-lattice image".to_string(),
        || "all images were lattice polytopes".to_string(),
    );
    if n == 2 {
        let t2 = Polytope::standard_simplex(2);
        let img = contra_z_ab_2d(&t2, &rat_int(1), &rat_int(2))?;
        run.check(
            !img.is_lattice(),
            || "rotated z_ab(1,2) on the corner simplex".to_string(),
            || "a non-lattice image".to_string(),
            || poly_str(&img),
        );
    }
    Ok(run.finish())
}

/// The two cube expansion identities, instantiated with the scaled
/// projection body (contravariant side) and with z_ab and c = (a+b)/2
/// (equivariant side), as exact Minkowski-sum equalities for k = 1..=kmax.
pub fn suite_expansion_identities(
    n: usize,
    kmax: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<SuiteReport> {
    if kmax < 3 {
        return Err(Error::Input("kmax must be at least 3".into()));
    }
    if a.is_negative() || b.is_negative() || c.is_negative() {
        return Err(Error::Input("parameters must be nonnegative".into()));
    }
    let mut run = SuiteRun::new(
        format!("expansion[a={a},b={b},c={c}]"),
        n,
    );
    let cube = Polytope::unit_cube(n);
    let pi_cube = projection_body(&cube)?;
    let z_cube = z_ab(&cube, a, b)?;
    let c_eq = (a + b) / rat_int(2);
    for k in 1..=kmax as i64 {
        let kn = Int::from(k).pow(n as u32);
        let kn1 = Int::from(k).pow(n as u32 - 1);
        let kcube = cube.scale_int(k);

        // contravariant: Z(k cube) + c (k^n - k^{n-1}) Pi(cube) = k^n Z(cube)
        let z_of_kcube = projection_body(&kcube)?.scale(c);
        let gap = Rational::from_integer(&kn - &kn1) * c;
        let lhs = z_of_kcube.minkowski_sum(&pi_cube.scale(&gap))?;
        let rhs = pi_cube.scale(c).scale(&Rational::from_integer(kn.clone()));
        run.check(
            lhs == rhs,
            || json!({"identity": "contravariant cube expansion", "k": k}).to_string(),
            || poly_str(&rhs),
            || poly_str(&lhs),
        );

        // equivariant: Z(k cube) + k^n [-c,c]^n = k^n Z(cube) + k [-c,c]^n
        let box_c = Polytope::sym_box(n, &c_eq);
        let lhs = z_ab(&kcube, a, b)?
            .minkowski_sum(&box_c.scale(&Rational::from_integer(kn.clone())))?;
        let rhs = z_cube
            .scale(&Rational::from_integer(kn))
            .minkowski_sum(&box_c.scale_int(k))?;
        run.check(
            lhs == rhs,
            || json!({"identity": "equivariant cube expansion", "k": k}).to_string(),
            || poly_str(&rhs),
            || poly_str(&lhs),
        );
    }
    Ok(run.finish())
}

/// Count-expansion behavior on random polytopes: degree equals the
/// dimension, L_0 = 1, the top coefficient is the volume, coefficients are
/// homogeneous under dilation, out-of-sample dilates match enumeration,
/// and the two-polytope polynomiality and L_1 additivity checks pass.
pub fn suite_ehrhart(n: usize, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("ehrhart", n);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let p = if t % 3 == 2 {
            // lower-dimensional input embedded by a random map
            let m = 1 + (t % n.max(2).min(n));
            let q = random_fulldim_lattice_polytope(m.min(n), 3, m.min(n) + 3, rng.random())?;
            let mut pts: Vec<RatVec> = Vec::new();
            for v in q.vertices() {
                let mut c = v.0.clone();
                c.resize(n, Rational::from_integer(Int::from(0)));
                pts.push(RatVec(c));
            }
            let phi = random_map(&mut rng, n)?;
            Polytope::from_points(n, pts)?
                .apply_unimodular(&phi)?
                .translate(&random_shift(&mut rng, n))
        } else {
            random_fulldim_from(&mut rng, n)?
        };
        let e = ehrhart::ehrhart(&p)?;
        let d = p.dim();
        run.check(
            e.degree() == d,
            || json!({"p": polytope_to_json(&p), "rule": "degree = dim"}).to_string(),
            || d.to_string(),
            || e.degree().to_string(),
        );
        run.check(
            e.coefficient(0) == rat_int(1),
            || json!({"p": polytope_to_json(&p), "rule": "L_0 = 1"}).to_string(),
            || "1".to_string(),
            || e.coefficient(0).to_string(),
        );
        if d == n {
            run.check(
                e.coefficient(n) == p.volume(),
                || json!({"p": polytope_to_json(&p), "rule": "top coefficient is the volume"}).to_string(),
                || p.volume().to_string(),
                || e.coefficient(n).to_string(),
            );
        }
        // degree-wise homogeneity under doubling
        let e2 = ehrhart::ehrhart(&p.scale_int(2))?;
        let ok = (0..=n).all(|i| {
            e2.coefficient(i) == e.coefficient(i) * Rational::from_integer(Int::from(2).pow(i as u32))
        });
        run.check(
            ok,
            || json!({"p": polytope_to_json(&p), "rule": "coefficient homogeneity"}).to_string(),
            || "L_i(2P) = 2^i L_i(P)".to_string(),
            || "mismatch".to_string(),
        );
        // out-of-sample dilate
        let k = n as i64 + 1;
        run.check(
            e.evaluate(k) == Rational::from_integer(count(&p.scale_int(k))),
            || json!({"p": polytope_to_json(&p), "rule": "out-of-sample count"}).to_string(),
            || count(&p.scale_int(k)).to_string(),
            || e.evaluate(k).to_string(),
        );
        // moment expansion out-of-sample
        let m = ehrhart::moment_expansion(&p)?;
        let k = n as i64 + 2;
        run.check(
            m.evaluate(k) == discrete_moment(&p.scale_int(k)).to_rat(),
            || json!({"p": polytope_to_json(&p), "rule": "out-of-sample moment"}).to_string(),
            || intvec_str(&discrete_moment(&p.scale_int(k))),
            || ratvec_to_json(&m.evaluate(k)).to_string(),
        );
        // two-polytope checks every few trials (they are the slow part)
        if t % 5 == 0 {
            let q = random_fulldim_from(&mut rng, n)?;
            run.check(
                bivariate_count_check(&p, &q, n)?,
                || json!({"p": polytope_to_json(&p), "q": polytope_to_json(&q), "rule": "bivariate polynomiality"}).to_string(),
                || "polynomial fit".to_string(),
                || "fit mismatch".to_string(),
            );
            run.check(
                l1_additivity_check(&p, &q)?,
                || json!({"p": polytope_to_json(&p), "q": polytope_to_json(&q), "rule": "L_1 additivity"}).to_string(),
                || "additive".to_string(),
                || "not additive".to_string(),
            );
        }
    }
    Ok(run.finish())
}

/// The facet area vectors of every corpus polytope sum to zero.
pub fn suite_minkowski_relation(n: usize, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("relation", n);
    let mut named = vec![
        Polytope::unit_cube(n),
        Polytope::standard_simplex(n),
        Polytope::standard_simplex(n).scale_int(2),
        difference_body(&Polytope::standard_simplex(n)),
    ];
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        named.push(random_fulldim_from(&mut rng, n)?);
    }
    for p in named {
        let mut total = RatVec::zero(n);
        for z in p.facet_area_vectors()? {
            total = total.add(&z);
        }
        run.check(
            total.is_zero(),
            || poly_str(&p),
            || "zero vector".to_string(),
            || ratvec_to_json(&total).to_string(),
        );
    }
    Ok(run.finish())
}

fn intvec_str(v: &IntVec) -> String {
    crate::jsonio::intvec_to_json(v).to_string()
}

/// z_ab with the centroid substituted for the discrete Steiner point; an
/// equivariant operator that is not a valuation, used as a negative
/// control.
pub struct CentroidShiftOperator {
    pub a: Rational,
    pub b: Rational,
}

impl MinkowskiOperator for CentroidShiftOperator {
    fn label(&self) -> String {
        format!("broken_z_ab_centroid(a={},b={})", self.a, self.b)
    }

    fn apply(&self, p: &Polytope) -> Result<Polytope> {
        let s = p.centroid();
        let left = p.translate(&s.neg()).scale(&self.a);
        let right = p.negate().translate(&s).scale(&self.b);
        left.minkowski_sum(&right)
    }

    fn transform_kind(&self) -> TransformKind {
        TransformKind::Equivariant
    }
}

/// Projection body with the lexicographically last facet area vector
/// sign-flipped; the output is a translate of the true projection body,
/// which breaks contravariance and the planar bridge. Negative control.
pub struct FlippedGeneratorProjection;

impl MinkowskiOperator for FlippedGeneratorProjection {
    fn label(&self) -> String {
        "broken_projection_flip".into()
    }

    fn apply(&self, p: &Polytope) -> Result<Polytope> {
        let n = p.ambient_dim();
        if p.dim() < n {
            return projection_body(p);
        }
        let mut gens = p.facet_area_vectors()?;
        gens.sort();
        if let Some(last) = gens.last_mut() {
            *last = last.neg();
        }
        let mut z = Polytope::origin(n);
        for g in gens {
            z = z.minkowski_sum(&Polytope::segment(RatVec::zero(n), g))?;
        }
        Ok(z)
    }

    fn transform_kind(&self) -> TransformKind {
        TransformKind::Contravariant
    }
}

/// Runs the deliberately broken operators through the regular suites and
/// passes iff each control fails somewhere (so the suites are not vacuous).
pub fn suite_negative_controls(n: usize, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("negative-controls", n);
    let t = trials.clamp(4, 16);

    let broken_z = CentroidShiftOperator {
        a: rat_int(1),
        b: rat_int(2),
    };
    let val = suite_valuation(&broken_z, n, seed, t)?;
    run.check(
        !val.passed(),
        || "centroid-shift operator through the valuation suite".to_string(),
        || "at least one valuation failure".to_string(),
        || "the broken operator passed".to_string(),
    );

    if n <= 3 {
        let broken_pi = FlippedGeneratorProjection;
        let contra = suite_contravariance(&broken_pi, n, seed, t)?;
        let val_pi = suite_valuation(&broken_pi, n, seed, t)?;
        let mut planar_caught = false;
        if n == 2 {
            for k in 0..t as u64 {
                let mut rng = trial_rng(seed, k);
                let p = random_fulldim_from(&mut rng, 2)?;
                if broken_pi.apply(&p)? != rotate90(&difference_body(&p))? {
                    planar_caught = true;
                    break;
                }
            }
        }
        run.check(
            !contra.passed() || !val_pi.passed() || planar_caught,
            || "flipped-generator projection through contravariance/valuation/planar checks".to_string(),
            || "at least one failure".to_string(),
            || "the broken operator passed everywhere".to_string(),
        );
    } else {
        run.note("the projection-body control runs in dimensions 2 and 3 only".to_string());
    }
    run.note("a passing run here means the broken controls failed their suites, as they must".to_string());
    Ok(run.finish())
}

/// The z_ab parameter battery (a, b in {0, 1, 2, 1/2}) and the scaled
/// projection bodies (c in {1, 2}) used by the valuation suite, plus the
/// planar rotated family in dimension 2.
pub fn operator_battery(n: usize) -> Vec<OperatorSpec> {
    let params = [rat_int(0), rat_int(1), rat_int(2), rat(1, 2)];
    let mut ops = Vec::new();
    for a in &params {
        for b in &params {
            ops.push(OperatorSpec::z_ab(a.clone(), b.clone()).expect("nonnegative"));
        }
    }
    if n <= 3 {
        // zonotope materialization on arbitrary inputs is budgeted for n <= 3
        ops.push(OperatorSpec::projection_scaled(rat_int(1)).expect("nonnegative"));
        ops.push(OperatorSpec::projection_scaled(rat_int(2)).expect("nonnegative"));
    }
    if n == 2 {
        ops.push(OperatorSpec::rot_z_ab_2d(rat_int(1), rat_int(2)).expect("nonnegative"));
        ops.push(OperatorSpec::rot_z_ab_2d(rat(1, 2), rat(1, 2)).expect("nonnegative"));
    }
    ops
}

pub const SUITE_NAMES: &[&str] = &[
    "valuation",
    "equivariance",
    "contravariance",
    "dst",
    "integrality",
    "expansion",
    "ehrhart",
    "relation",
    "negative-controls",
];

/// Runs one named suite (or the whole battery for "all").
pub fn run_named_suite(name: &str, n: usize, seed: u64, trials: usize) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    match name {
        "valuation" => {
            let ops = if n <= 3 {
                operator_battery(n)
            } else {
                // representative subset for the slower high-dimensional runs
                vec![
                    OperatorSpec::z_ab(rat_int(0), rat_int(1))?,
                    OperatorSpec::z_ab(rat_int(1), rat_int(1))?,
                    OperatorSpec::z_ab(rat_int(1), rat_int(2))?,
                    OperatorSpec::z_ab(rat(1, 2), rat(1, 2))?,
                ]
            };
            for op in ops {
                out.push(suite_valuation(&op, n, seed, trials.min(8))?);
            }
        }
        "equivariance" => {
            let ops = [
                OperatorSpec::z_ab(rat_int(1), rat_int(2))?,
                OperatorSpec::z_ab(rat(1, 2), rat_int(1))?,
                OperatorSpec::difference_scaled(rat_int(1))?,
            ];
            for op in ops {
                out.push(suite_equivariance(&op, n, seed, trials)?);
            }
        }
        "contravariance" => {
            out.push(suite_contravariance(
                &OperatorSpec::projection_scaled(rat_int(1))?,
                n,
                seed,
                trials,
            )?);
            if n == 2 {
                out.push(suite_contravariance(
                    &OperatorSpec::rot_z_ab_2d(rat_int(1), rat_int(2))?,
                    n,
                    seed,
                    trials,
                )?);
            }
        }
        "dst" => out.push(suite_dst(n, seed, trials)?),
        "integrality" => out.push(suite_integrality(n, seed, trials)?),
        "expansion" => {
            out.push(suite_expansion_identities(n, 5, &rat_int(1), &rat_int(1), &rat_int(1))?);
            out.push(suite_expansion_identities(n, 5, &rat_int(1), &rat_int(2), &rat_int(2))?);
        }
        "ehrhart" => out.push(suite_ehrhart(n, seed, trials)?),
        "relation" => out.push(suite_minkowski_relation(n, seed, trials)?),
        "negative-controls" => out.push(suite_negative_controls(n, seed, trials)?),
        // the perturbed operators themselves, runnable directly; these are
        // expected to FAIL, which `negative-controls` asserts
        "broken-z-ab" => {
            let broken = CentroidShiftOperator {
                a: rat_int(1),
                b: rat_int(2),
            };
            out.push(suite_valuation(&broken, n, seed, trials.min(8))?);
        }
        "broken-projection" => {
            if n > 3 {
                return Err(Error::Input(
                    "the broken projection control runs in dimensions 2 and 3".into(),
                ));
            }
            out.push(suite_contravariance(&FlippedGeneratorProjection, n, seed, trials.min(8))?);
            out.push(suite_valuation(&FlippedGeneratorProjection, n, seed, trials.min(8))?);
        }
        "all" => {
            for name in SUITE_NAMES {
                out.extend(run_named_suite(name, n, seed, trials)?);
            }
        }
        other => return Err(Error::Input(format!("unknown suite {other:?}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_polytope_contracts() {
        assert!(random_lattice_polytope(2, 0, 5, 1).is_err());
        assert!(random_lattice_polytope(2, 4, 2, 1).is_err());
        let a = random_lattice_polytope(2, 4, 7, 42).unwrap();
        let b = random_lattice_polytope(2, 4, 7, 42).unwrap();
        assert_eq!(a, b);
        for v in a.vertices() {
            for c in &v.0 {
                assert!(*c >= rat_int(0) && *c <= rat_int(4));
            }
        }
        let f = random_fulldim_lattice_polytope(3, 3, 6, 7).unwrap();
        assert_eq!(f.dim(), 3);
    }

    #[test]
    fn valuation_suite_passes_for_true_operators() {
        let op = OperatorSpec::z_ab(rat_int(2), rat_int(2)).unwrap();
        let r = suite_valuation(&op, 2, 5, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());

        let pi = OperatorSpec::projection_scaled(rat_int(1)).unwrap();
        let r = suite_valuation(&pi, 2, 5, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn equivariance_and_contravariance_suites() {
        let op = OperatorSpec::z_ab(rat_int(1), rat_int(2)).unwrap();
        assert!(suite_equivariance(&op, 2, 11, 10).unwrap().passed());

        let pi = OperatorSpec::projection_scaled(rat_int(1)).unwrap();
        assert!(suite_contravariance(&pi, 2, 11, 10).unwrap().passed());
    }

    #[test]
    fn dst_suite_small() {
        let r = suite_dst(2, 3, 8).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn integrality_suite_small() {
        let r = suite_integrality(2, 3, 10).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn expansion_suite_small() {
        let r = suite_expansion_identities(2, 3, &rat_int(1), &rat_int(1), &rat_int(1)).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(suite_expansion_identities(2, 2, &rat_int(1), &rat_int(1), &rat_int(1)).is_err());
    }

    #[test]
    fn ehrhart_suite_small() {
        let r = suite_ehrhart(2, 19, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn relation_suite_small() {
        let r = suite_minkowski_relation(2, 23, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn negative_controls_fail_their_suites() {
        let r = suite_negative_controls(2, 7, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn suites_are_deterministic() {
        let a = suite_dst(2, 123, 5).unwrap();
        let b = suite_dst(2, 123, 5).unwrap();
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.failures.len(), b.failures.len());
        let p1 = random_fulldim_lattice_polytope(2, 4, 7, 99).unwrap();
        let p2 = random_fulldim_lattice_polytope(2, 4, 7, 99).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_named_suite("bogus", 2, 1, 1).is_err());
    }

    // the cheap dimension-4 subset stays exact and fast
    #[test]
    fn dimension_four_cheap_subset() {
        let r = suite_dst(4, 31, 4).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());

        let op = OperatorSpec::z_ab(rat_int(1), rat_int(2)).unwrap();
        let r = suite_valuation(&op, 4, 31, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());

        let pi = OperatorSpec::projection_scaled(rat_int(1)).unwrap();
        let r = suite_contravariance(&pi, 4, 31, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());

        let r = suite_minkowski_relation(4, 31, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());

        let r = suite_expansion_identities(4, 3, &rat_int(1), &rat_int(1), &rat_int(1)).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }
}
