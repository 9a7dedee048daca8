//! Built-in consistency suites.

use rigidquad::bijection::{h_tree_to_quad, quad_to_h_tree};
use rigidquad::enumerate::{
    count_pre_q_trees, count_quads_recursive, enumerate_h_trees, enumerate_pre_q_trees, enumerate_q_trees,
    enumerate_well_based_q_trees,
};
use rigidquad::render::immerse;
use rigidquad::series::{
    b_series, binomial, c_series, delta_series, f_series, h_series, multiplicative_sum, q_series, r_series, TriSeries,
};
use rigidquad::tree::{compose_phi_inv, decompose_phi, psi, psi_hat, psi_hat_inv, psi_inv};
use rigidquad::{Rational, RigidQuadMap, Series, Series3};

use crate::Suite;

const BASES: [i64; 6] = [-3, -2, -1, 1, 2, 3];

struct Report {
    ok: bool,
}

impl Report {
    fn check(&mut self, name: &str, result: Result<(), String>) {
        match result {
            Ok(()) => println!("PASS {name}"),
            Err(e) => {
                self.ok = false;
                println!("FAIL {name}: {e}");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run(suite: Suite, max_n: usize) -> bool {
    let mut r = Report { ok: true };
    if matches!(suite, Suite::Series | Suite::All) {
        series_suite(&mut r);
    }
    if matches!(suite, Suite::Bijections | Suite::All) {
        bijection_suite(&mut r, max_n);
    }
    r.ok
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Parses terms `(t, x, y, numerator, denominator)` into a series.
fn tri(order: usize, terms: &[(usize, u32, u32, i64, i64)]) -> Series3 {
    let mut s = TriSeries::zero(order);
    for &(n, i, j, a, b) in terms {
        s.add_term(n, i, j, frac(a, b));
    }
    s
}

fn series_suite(r: &mut Report) {
    r.check("R leading coefficients", {
        let s: Series = r_series(10);
        let want = [0, 1, -2, -4, -20].map(int);
        ensure(s.coeffs()[..5] == want, || format!("got {:?}", &s.coeffs()[..5]))
    });
    r.check("R solves its defining equation", {
        let order = 10;
        let rr: Series = r_series(order);
        let mut total = Series::zero(order);
        let mut pw = rr.clone();
        for n in 0..order as i64 {
            let c = Rational::from_integer(binomial(2 * n, n) * binomial(2 * n, n)) / int(n + 1);
            total = &total + &pw.scale(&c);
            pw = &pw * &rr;
        }
        ensure(total == Series::t(order), || "nonzero remainder".into())
    });
    let golden_delta = tri(
        3,
        &[
            (1, 1, 1, 1, 1),
            (2, 1, 2, 1, 1),
            (2, 2, 1, 1, 1),
            (2, 2, 2, 1, 2),
            (3, 1, 2, 2, 1),
            (3, 1, 3, 2, 1),
            (3, 2, 1, 2, 1),
            (3, 2, 2, 1, 1),
            (3, 2, 3, 1, 1),
            (3, 3, 1, 2, 1),
            (3, 3, 2, 1, 1),
            (3, 3, 3, 1, 3),
        ],
    );
    let golden_b = tri(
        3,
        &[
            (1, 1, 1, 1, 1),
            (2, 1, 2, 1, 1),
            (2, 2, 1, 1, 1),
            (2, 2, 2, 1, 1),
            (3, 1, 2, 2, 1),
            (3, 1, 3, 2, 1),
            (3, 2, 1, 2, 1),
            (3, 2, 2, 1, 1),
            (3, 2, 3, 2, 1),
            (3, 3, 1, 2, 1),
            (3, 3, 2, 2, 1),
            (3, 3, 3, 1, 1),
        ],
    );
    let golden_c = tri(
        3,
        &[
            (1, 1, 1, 1, 1),
            (2, 1, 2, 1, 1),
            (2, 2, 1, 1, 1),
            (3, 1, 2, 2, 1),
            (3, 1, 3, 2, 1),
            (3, 2, 1, 2, 1),
            (3, 2, 2, 1, 1),
            (3, 3, 1, 2, 1),
        ],
    );
    for (name, got, want) in [
        ("Delta through t^3", delta_series(3), golden_delta),
        ("B through t^3", b_series(3), golden_b),
        ("C through t^3", c_series(3), golden_c),
    ] {
        r.check(name, ensure(got == want, || format!("got {got:?}")));
    }
    r.check("Q^(0) = t", {
        let q: Series = q_series(0, 20);
        ensure(q == Series::t(20), || "differs".into())
    });
    r.check("B = exp(Delta) - 1, C = 1 - exp(-Delta), B = C/(1-C)", (|| {
        let order = 8;
        let d: Series3 = delta_series(order);
        let b = b_series(order);
        let c = c_series(order);
        let mut e = d.exp().map_err(|e| e.to_string())?;
        e.add_term(0, 0, 0, int(-1));
        let mut em = d.scale(&int(-1)).exp().map_err(|e| e.to_string())?.scale(&int(-1));
        em.add_term(0, 0, 0, int(1));
        // C/(1-C) = C + C^2 + ... ; C has no constant term
        let mut geo = TriSeries::zero(order);
        let mut pw = c.clone();
        for _ in 0..order {
            geo = geo.add(&pw);
            pw = pw.mul(&c);
        }
        ensure(e == b && em == c && geo == b, || "identity fails".into())
    })());
    r.check("F^(-1) = sum of F^(p), p = 1..20", {
        let order = 20;
        let mut sum: Series = Series::zero(order);
        for p in 1..=20 {
            sum = &sum + &f_series(p, order);
        }
        ensure(sum == f_series(-1, order), || "differs".into())
    });
    r.check("multiplicative sum equals 1 for m <= 12", {
        (0..=12).try_for_each(|m| {
            let v = multiplicative_sum(m);
            ensure(v == int(1), || format!("m = {m} gives {v}"))
        })
    });
}

fn coeff(s: &Series, n: usize) -> usize {
    s.coeff(n).to_integer().try_into().unwrap_or(usize::MAX)
}

fn bijection_suite(r: &mut Report, max_n: usize) {
    r.check("enumeration counts against series", {
        let mut res = Ok(());
        'outer: for p in BASES {
            let q = q_series(p, max_n);
            let h = h_series(p, max_n);
            for n in 1..=max_n {
                let counts = [
                    (enumerate_pre_q_trees(n, p).len(), count_pre_q_trees(n, p).try_into().unwrap_or(usize::MAX)),
                    (enumerate_q_trees(n, p).len(), coeff(&q, n)),
                    (enumerate_well_based_q_trees(n, p).len(), coeff(&h, n)),
                    (count_quads_recursive(p, n).try_into().unwrap_or(usize::MAX), coeff(&h, n)),
                ];
                if let Some((a, b)) = counts.iter().find(|(a, b)| a != b) {
                    res = Err(format!("n = {n}, p = {p}: {a} != {b}"));
                    break 'outer;
                }
            }
        }
        res
    });
    r.check("psi and psi-hat round trips", {
        let mut res = Ok(());
        for p in BASES {
            for n in 1..=max_n {
                for h in enumerate_h_trees(n, p).unwrap_or_default() {
                    let back = psi(&h).and_then(|q| psi_inv(&q));
                    if back.as_ref() != Ok(&h) {
                        res = Err(format!("psi fails on {:?}", h.edge_labels()));
                    }
                }
                if p < 0 {
                    for q in enumerate_q_trees(n, p) {
                        let back = psi_hat_inv(&q).and_then(|h| psi_hat(&h, p));
                        if back.as_ref() != Ok(&q) {
                            res = Err(format!("psi-hat fails on {:?}", q.edge_labels()));
                        }
                    }
                }
            }
        }
        res
    });
    r.check("phi round trips", {
        let mut res = Ok(());
        for p in BASES {
            for n in 1..=max_n {
                for t in enumerate_pre_q_trees(n, p) {
                    let back = decompose_phi(&t).and_then(|d| compose_phi_inv(&d.core, &d.removed));
                    if back.as_ref() != Ok(&t) {
                        res = Err(format!("phi fails on {:?}", t.edge_labels()));
                    }
                }
            }
        }
        res
    });
    r.check("tree-map round trips and map invariants", {
        let mut res = Ok(());
        for p in BASES {
            for n in 1..=max_n {
                for h in enumerate_h_trees(n, p).unwrap_or_default() {
                    if let Err(e) = map_round_trip(&h, p, n) {
                        res = Err(format!("p = {p}, n = {n}, {:?}: {e}", h.edge_labels()));
                    }
                }
            }
        }
        res
    });
}

fn map_round_trip(h: &rigidquad::PartitionTree, p: i64, n: usize) -> Result<(), String> {
    let m = h_tree_to_quad(h).map_err(|e| e.to_string())?;
    m.validate().map_err(|e| e.to_string())?;
    let back = quad_to_h_tree(&m).map_err(|e| e.to_string())?;
    ensure(&back == h, || "tree differs after round trip".into())?;
    let again = h_tree_to_quad(&back).map_err(|e| e.to_string())?;
    ensure(again == m, || "map differs after round trip".into())?;
    ensure(m.base_length() == Ok(p) && m.degree() == n, || "wrong base or degree".into())?;
    map_invariants(&m)
}

/// Turning number, overlap mass and the ray partition of inner edges.
pub fn map_invariants(m: &RigidQuadMap) -> Result<(), String> {
    let g = immerse(m).map_err(|e| e.to_string())?;
    ensure(g.turning_number() == 4, || format!("turning number {}", g.turning_number()))?;
    ensure(g.overlaps.values().sum::<usize>() == m.num_faces(), || "overlap mass".into())?;
    let boundary: usize = m.sides().iter().map(|s| s.len()).sum();
    let ray_edges: usize = m.rays().map_err(|e| e.to_string())?.iter().map(|r| r.len()).sum();
    let inner = m.census().edges.saturating_sub(boundary);
    ensure(m.is_corner() || ray_edges == inner, || format!("{ray_edges} ray edges for {inner} inner edges"))
}
