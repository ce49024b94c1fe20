use cqe_core::closedform::{cef_curve, erasure_cef_curve, shor_ce_curve};
use cqe_core::regions::{apply_unit, polytope_vertices, OneShotRegion, RateTriple, UnitProtocol};
use proptest::prelude::*;

fn region_strategy() -> impl Strategy<Value = OneShotRegion> {
    (0.01f64..3.0, 0.0f64..1.0, -1.0f64..1.0).prop_map(|(axb, xb_frac, coh_frac)| {
        let i_xb = axb * xb_frac;
        let room = axb - i_xb;
        let i_coh = if coh_frac >= 0.0 { room * coh_frac } else { coh_frac };
        OneShotRegion::new(axb, i_xb, i_coh).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn vertices_are_contained_and_tight(r in region_strategy(), e_max in 0.0f64..3.0) {
        let verts = r.corner_points(e_max).unwrap();
        // negative coherent information needs at least -I(A>BX) ebits to be feasible
        prop_assert_eq!(verts.is_empty(), e_max < -r.i_coh - 1e-9);
        let planes = r.bounding_planes(e_max);
        for v in &verts {
            prop_assert!(r.contains_within(v, 1e-9));
            prop_assert!(v.is_nonnegative(1e-9) && v.e <= e_max + 1e-9);
            let tight = planes.iter().filter(|h| h.is_tight(v, 1e-7)).count();
            prop_assert!(tight >= 3);
        }
    }

    #[test]
    fn entanglement_distribution_keeps_vertices_inside(r in region_strategy(), rate in 0.0f64..0.5) {
        for v in r.corner_points(3.0).unwrap() {
            if v.q >= rate && v.e >= rate {
                let ed = apply_unit(v, UnitProtocol::EntanglementDistribution, rate).unwrap();
                prop_assert!(r.contains_within(&ed, 1e-9));
            }
        }
    }

    #[test]
    fn cef_curve_inside_shor_plane(mu in 0.0f64..=0.5, p in 0.0f64..=1.0) {
        let cef = cef_curve(p, mu).unwrap();
        let ce = shor_ce_curve(p, mu).unwrap();
        prop_assert!((cef.c + 2.0 * cef.q - ce.c).abs() < 1e-12);
        prop_assert!((cef.q + cef.e - ce.e).abs() < 1e-12);
    }

    #[test]
    fn erasure_cef_on_eac_plane(mu in 0.0f64..=0.5, eps in 0.0f64..=1.0) {
        let t = erasure_cef_curve(eps, mu).unwrap();
        prop_assert!(t.c + 2.0 * t.q <= 2.0 * (1.0 - eps) + 1e-12);
    }
}

#[test]
fn cube_has_eight_vertices() {
    use cqe_core::regions::Halfspace;
    let mut planes = Vec::new();
    for axis in 0..3 {
        let mut n = [0.0; 3];
        n[axis] = 1.0;
        planes.push(Halfspace::new(n, 1.0));
        n[axis] = -1.0;
        planes.push(Halfspace::new(n, 0.0));
    }
    let v = polytope_vertices(&planes);
    assert_eq!(v.len(), 8);
    assert_eq!(v[0], RateTriple::ORIGIN);
    assert_eq!(v[7], RateTriple::new(1.0, 1.0, 1.0));
}
