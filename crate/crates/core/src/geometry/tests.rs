use super::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn ball2(r: f64) -> ConvexBody {
    ConvexBody::ball(&[0.0, 0.0], r).unwrap()
}

#[test]
fn ball_membership_examples() {
    let b = ball2(1.0);
    assert!(b.contains(&[0.0, 0.0], 1e-9).unwrap());
    assert!(!b.contains(&[1.0, 1.0], 1e-9).unwrap());
}

#[test]
fn dimension_mismatch_is_error() {
    let b = ball2(1.0);
    assert!(matches!(
        b.contains(&[0.0], 1e-9),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn minkowski_box_ball_membership() {
    // Box([-1,-1],[1,1]) + Ball(0, 0.5): (1.4, 0) inside via witness y=(1,0)
    let k = ConvexBody::axis_box(&[-1.0, -1.0], &[1.0, 1.0]).unwrap();
    let s = k.minkowski_sum(&ball2(0.5)).unwrap();
    assert!(s.contains(&[1.4, 0.0], 1e-9).unwrap());
    assert!(s.contains(&[1.3, 1.3], 1e-9).unwrap()); // corner arc, dist ~0.424
    assert!(!s.contains(&[1.36, 1.36], 1e-9).unwrap()); // dist ~0.509
}

#[test]
fn bounding_boxes() {
    let b = ConvexBody::ball(&[1.0, 1.0], 2.0).unwrap();
    let (lo, hi) = b.bounding_box();
    assert_eq!(lo.as_slice(), &[-1.0, -1.0]);
    assert_eq!(hi.as_slice(), &[3.0, 3.0]);

    let bx = ConvexBody::axis_box(&[0.0, 0.0], &[2.0, 2.0])
        .unwrap()
        .scale(0.5)
        .unwrap();
    let (lo, hi) = bx.bounding_box();
    assert_eq!(lo.as_slice(), &[0.0, 0.0]);
    assert_eq!(hi.as_slice(), &[1.0, 1.0]);

    let s = ConvexBody::axis_box(&[0.0, 0.0], &[1.0, 1.0])
        .unwrap()
        .minkowski_sum(&ball2(1.0))
        .unwrap();
    let (lo, hi) = s.bounding_box();
    assert_eq!(lo.as_slice(), &[-1.0, -1.0]);
    assert_eq!(hi.as_slice(), &[2.0, 2.0]);
}

#[test]
fn negate_and_difference_body() {
    let b = ConvexBody::axis_box(&[0.0, 0.0], &[1.0, 2.0]).unwrap();
    assert!(b.negate().contains(&[-0.5, -1.5], 1e-9).unwrap());

    // K - K for the unit square is [-1,1]^2
    let k = ConvexBody::axis_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
    let diff = k.minkowski_sum(&k.negate()).unwrap();
    assert!(diff.contains(&[0.9, 0.0], 1e-9).unwrap());
    assert!(!diff.contains(&[1.1, 0.0], 1e-9).unwrap());

    // scale example
    assert!(ball2(1.0)
        .scale(2.0)
        .unwrap()
        .contains(&[0.0, 1.5], 1e-9)
        .unwrap());
}

#[test]
fn double_negation_matches() {
    let bodies = [
        ConvexBody::simplex(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap(),
        ConvexBody::cross_polytope(&[0.5, -0.5], 2.0).unwrap(),
    ];
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for b in &bodies {
        let nn = b.negate().negate();
        for _ in 0..200 {
            let x = b.sample_uniform(&mut rng);
            // sampled strictly inside; the double negation must agree
            assert!(nn.contains_point(&x, 1e-9));
        }
    }
}

#[test]
fn constructive_sum_direction() {
    // x = a + b with a in A, b in B is always in A + B
    let a = ConvexBody::simplex(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let b = ball2(0.3);
    let sum = a.minkowski_sum(&b).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    for _ in 0..1000 {
        let pa = a.sample_uniform(&mut rng);
        let pb = b.sample_uniform(&mut rng);
        let x = pa.add(&pb);
        assert!(sum.contains_point(&x, 1e-9), "{:?}", x);
    }
}

#[test]
fn scale_membership_consistency() {
    let b = ConvexBody::cross_polytope(&[0.0, 0.0, 0.0], 1.0).unwrap();
    let s = b.scale(2.5).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    for _ in 0..300 {
        let x = b.sample_uniform(&mut rng);
        if b.distance(&x) == 0.0 {
            assert!(s.contains_point(&x.scale(2.5), 1e-9));
        }
    }
}

#[test]
fn bounding_box_soundness_sampled() {
    let bodies = [
        ConvexBody::simplex(&[
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.2, 0.0],
            vec![0.0, 1.0, 0.1],
            vec![0.1, 0.0, 1.0],
        ])
        .unwrap(),
        ConvexBody::axis_box(&[-1.0, 0.0], &[0.5, 2.0])
            .unwrap()
            .minkowski_sum(&ball2(0.25))
            .unwrap(),
    ];
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    for b in &bodies {
        let (lo, hi) = b.bounding_box();
        for _ in 0..500 {
            let x = b.sample_uniform(&mut rng);
            for i in 0..b.dim() {
                assert!(x.get(i) >= lo.get(i) - 1e-9 && x.get(i) <= hi.get(i) + 1e-9);
            }
        }
    }
}

#[test]
fn symmetric_scaling_additivity() {
    // for symmetric B: alpha*B + beta*B = (alpha+beta)*B on sampled points
    let b = ConvexBody::cross_polytope(&[0.0, 0.0], 1.0).unwrap();
    let lhs = b
        .scale(0.7)
        .unwrap()
        .minkowski_sum(&b.scale(0.3).unwrap())
        .unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    for _ in 0..500 {
        let x = b.sample_uniform(&mut rng);
        if b.distance(&x) == 0.0 && lhs.contains_point(&x, 1e-9) != b.contains_point(&x, 1e-9) {
            // only boundary-tolerance points may disagree
            let d = b.distance(&x);
            assert!(d <= 2e-9, "interior disagreement at {:?}", x);
        }
    }
}

#[test]
fn interior_witness_is_inside() {
    let hexagon = ConvexBody::polygon2(&[
        vec![0.5, 0.0],
        vec![0.0, 0.5],
        vec![-0.5, 0.5],
        vec![-0.5, 0.0],
        vec![0.0, -0.5],
        vec![0.5, -0.5],
    ])
    .unwrap();
    let p = hexagon.interior_point();
    assert!(hexagon.contains_point(&p, 0.0));
    assert!(hexagon.inner_radius() > 0.0);
    // inradius of this hexagon is 1/(2 sqrt 2)
    assert!((hexagon.inner_radius() - 0.5 / 2f64.sqrt()).abs() < 1e-6);

    let simplex =
        ConvexBody::simplex(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    // incircle radius of the right unit triangle: (a+b-c)/2 = (2 - sqrt 2)/2
    assert!((simplex.inner_radius() - (2.0 - 2f64.sqrt()) / 2.0).abs() < 1e-6);
    let q = simplex.interior_point();
    assert!(simplex.contains_point(&q, 0.0));
}

#[test]
fn hpolytope_validation() {
    // unbounded: half-plane only
    let unbounded = ConvexBody::hpolytope(vec![HalfSpace {
        normal: Point::from_slice(&[1.0, 0.0]),
        offset: 1.0,
    }]);
    assert!(unbounded.is_err());

    // unit square as an hpolytope
    let square = ConvexBody::hpolytope(vec![
        HalfSpace {
            normal: Point::from_slice(&[1.0, 0.0]),
            offset: 1.0,
        },
        HalfSpace {
            normal: Point::from_slice(&[-1.0, 0.0]),
            offset: 0.0,
        },
        HalfSpace {
            normal: Point::from_slice(&[0.0, 1.0]),
            offset: 1.0,
        },
        HalfSpace {
            normal: Point::from_slice(&[0.0, -1.0]),
            offset: 0.0,
        },
    ])
    .unwrap();
    assert!(square.contains(&[0.5, 0.5], 1e-9).unwrap());
    assert!(!square.contains(&[1.5, 0.5], 1e-9).unwrap());
    let (lo, hi) = square.bounding_box();
    assert!(lo.dist(&Point::from_slice(&[0.0, 0.0])) < 1e-6);
    assert!(hi.dist(&Point::from_slice(&[1.0, 1.0])) < 1e-6);
}

#[test]
fn erode_keeps_margin() {
    let t = ConvexBody::axis_box(&[-0.5], &[0.5]).unwrap();
    let e = t.erode(0.1).unwrap();
    // eroded interval is [-0.4, 0.4]
    assert!(e.contains(&[0.39], 1e-9).unwrap());
    assert!(!e.contains(&[0.41], 1e-9).unwrap());
    // eroded + margin ball stays inside t (sampled)
    let infl = e.inflate(0.1).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    for _ in 0..200 {
        let x = infl.sample_uniform(&mut rng);
        assert!(t.contains_point(&x, 1e-9));
    }
}

#[test]
fn simplex_3d_with_ball_inflation() {
    let s = ConvexBody::simplex(&[
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ])
    .unwrap();
    let infl = s.inflate(0.2).unwrap();
    assert!(infl.contains(&[-0.1, 0.0, 0.0], 1e-9).unwrap());
    assert!(!infl.contains(&[-0.3, 0.0, 0.0], 1e-9).unwrap());
    // distance through the far facet
    let d = 2.0 / 3f64.sqrt();
    assert!(infl.contains(&[1.0, 1.0, 1.0], 1e-9).unwrap() == (d <= 0.2));
}
