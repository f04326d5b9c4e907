//! Cross-cutting invariants tying envelopes, contact sets, the curvature
//! function, and the inf-convolution together.

use heps_core::Ellipticity;
use heps_lab::contact::{contact_set, ContactSet};
use heps_lab::corpus::{corpus, CorpusSpec};
use heps_lab::grid::GridFunction;
use heps_lab::lemma::lemma_check;
use heps_lab::moreau::inf_convolution;
use heps_lab::theta::theta;

fn members() -> Vec<(CorpusSpec, GridFunction)> {
    [
        CorpusSpec::Quadratic(1.0),
        CorpusSpec::Affine,
        CorpusSpec::Cone,
        CorpusSpec::RadialPower(1.5),
        CorpusSpec::RadialPowerSub(0.5),
        CorpusSpec::DoubleWell,
        CorpusSpec::PerturbedConcave(7),
    ]
    .into_iter()
    .map(|s| (s, corpus(s, 33, -1.0, 1.0).unwrap()))
    .collect()
}

#[test]
fn contact_sets_nest_in_opening_across_corpus() {
    for (spec, u) in members() {
        let mut prev: Option<ContactSet> = None;
        for &a in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let cs = contact_set(&u, a);
            if let Some(p) = &prev {
                assert!(p.is_subset_of(&cs), "{spec}: mask({}) ⊄ mask({a})", p.opening);
            }
            prev = Some(cs);
        }
    }
}

/// Contact masks commute with the affine rescaling
/// `A_a(βv + (γ/2)|x|²) = A_{(a+γ)/β}(v)` up to a 2-cell boundary band.
#[test]
fn scaling_identity_masks_agree_up_to_boundary_band() {
    for spec in [CorpusSpec::Cone, CorpusSpec::DoubleWell] {
        let v = corpus(spec, 65, -1.0, 1.0).unwrap();
        for &beta in &[0.5, 2.0] {
            for &gamma in &[-0.5, 1.0] {
                for &opening in &[1.0, 3.0] {
                    let b = (opening + gamma) / beta;
                    assert!(b >= 0.0);
                    let mut w = v.clone();
                    for iy in 0..v.ny() {
                        let y = v.y(iy);
                        for ix in 0..v.nx() {
                            let x = v.x(ix);
                            let idx = v.idx(ix, iy);
                            w.values_mut()[idx] =
                                beta * v.values()[idx] + 0.5 * gamma * (x * x + y * y);
                        }
                    }
                    let lhs = contact_set(&w, opening);
                    let rhs = contact_set(&v, b);
                    assert_masks_agree_off_band(&lhs, &rhs, 2, &format!(
                        "{spec}: beta={beta} gamma={gamma} opening={opening}"
                    ));
                }
            }
        }
    }
}

fn assert_masks_agree_off_band(lhs: &ContactSet, rhs: &ContactSet, band: i64, label: &str) {
    let (nx, ny) = (rhs.nx(), rhs.ny());
    let boundary_of = |cs: &ContactSet, ix: usize, iy: usize| -> bool {
        let here = cs.at(ix, iy);
        let mut edge = false;
        if ix > 0 {
            edge |= cs.at(ix - 1, iy) != here;
        }
        if ix + 1 < nx {
            edge |= cs.at(ix + 1, iy) != here;
        }
        if iy > 0 {
            edge |= cs.at(ix, iy - 1) != here;
        }
        if iy + 1 < ny {
            edge |= cs.at(ix, iy + 1) != here;
        }
        edge
    };
    // nodes within `band` (Chebyshev) of the reference mask's value boundary
    let mut banded = vec![false; nx * ny];
    for iy in 0..ny {
        for ix in 0..nx {
            if boundary_of(rhs, ix, iy) {
                let (x0, y0) = (ix as i64, iy as i64);
                for dy in -band..=band {
                    for dx in -band..=band {
                        let (qx, qy) = (x0 + dx, y0 + dy);
                        if qx >= 0 && qy >= 0 && (qx as usize) < nx && (qy as usize) < ny {
                            banded[qy as usize * nx + qx as usize] = true;
                        }
                    }
                }
            }
        }
    }
    for iy in 0..ny {
        for ix in 0..nx {
            if !banded[iy * nx + ix] {
                assert_eq!(
                    lhs.at(ix, iy),
                    rhs.at(ix, iy),
                    "{label}: masks disagree off-band at ({ix},{iy})"
                );
            }
        }
    }
}

/// `node ∈ mask(a)` forces `Θ̲ ≤ a`, and `Θ̲ ≤ a` forces membership in the
/// slightly dilated mask.
#[test]
fn theta_and_contact_masks_are_consistent() {
    let u = corpus(CorpusSpec::Cone, 65, -1.0, 1.0).unwrap();
    let nodes = [(40usize, 32usize), (48, 32), (40, 40), (36, 30)];
    for &a in &[2.0, 3.0, 5.0] {
        let mask = contact_set(&u, a);
        for &(ix, iy) in &nodes {
            let th = theta(&u, (ix, iy)).unwrap();
            if mask.at(ix, iy) {
                assert!(th <= a * (1.0 + 1e-9) + 1e-9, "({ix},{iy}) a={a}: theta={th}");
            }
            if th <= a {
                let dilated = contact_set(&u, a * 1.001);
                assert!(dilated.at(ix, iy), "({ix},{iy}) a={a}: theta={th}");
            }
        }
    }
}

/// Regularizing first must not break the measure inequality: the
/// inf-convolution is itself a supersolution away from the approximation
/// layer, and its contact geometry matches the original's.
#[test]
fn lemma_holds_on_inf_convolved_cone() {
    let ell = Ellipticity::new(1.0, 3.0).unwrap();
    let u = corpus(CorpusSpec::Cone, 129, -1.0, 1.0).unwrap();
    let um = inf_convolution(&u, 50.0);
    let plain = lemma_check(&u, ell, 2.0, 1.0, None).unwrap();
    let smoothed = lemma_check(&um, ell, 2.0, 1.0, None).unwrap();
    assert!(plain.satisfied && plain.interior_ok);
    assert!(smoothed.satisfied, "smoothed report: {smoothed:?}");
    assert!(smoothed.interior_ok);
    assert!((smoothed.bound / smoothed.measure_f - plain.bound / plain.measure_f).abs() < 1e-12);
}

#[test]
fn decay_exponents_stable_under_refinement() {
    // cone and the radial power keep their fitted exponents within 0.1
    // between 512^2 and 1024^2; the steeper radial decay gets a denser
    // ladder so its smallest usable disk stays resolved at both sizes
    let intrinsic =
        heps_lab::decay::intrinsic_ratio(Ellipticity::new(1.0, 100.0).unwrap()).unwrap();
    for (spec, t0, ratio, count) in [
        (CorpusSpec::Cone, 2.0, intrinsic, 5),
        (CorpusSpec::RadialPower(1.5), 2.5, 1.7, 4),
    ] {
        let coarse = corpus(spec, 512, -1.0, 1.0).unwrap();
        let fine = corpus(spec, 1024, -1.0, 1.0).unwrap();
        let e_coarse = heps_lab::decay::decay_fit(&coarse, t0, ratio, count)
            .unwrap()
            .exponent();
        let e_fine = heps_lab::decay::decay_fit(&fine, t0, ratio, count)
            .unwrap()
            .exponent();
        assert!(
            (e_coarse - e_fine).abs() < 0.1,
            "{spec}: {e_coarse} vs {e_fine}"
        );
    }
}
