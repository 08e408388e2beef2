use proptest::prelude::*;
use rectcross::geom::*;

fn p(x: i64, y: i64) -> ExactPoint {
    ExactPoint::from_ints(x, y)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Brute-force canonical form: minimum over every relabeling and both flips.
fn brute_canonical(sig: &OrderTypeSignature) -> Vec<i8> {
    let n = sig.n;
    let mut best: Option<Vec<i8>> = None;
    for perm in permutations(n) {
        for flip in [-1i8, 1] {
            let mut v = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        v.push(flip * sig.chi(perm[i], perm[j], perm[k]));
                    }
                }
            }
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.unwrap()
}

fn general_position_ints(max: i64, n: usize) -> impl Strategy<Value = Vec<IntPoint>> {
    prop::collection::vec((-max..=max, -max..=max), n)
        .prop_map(|v| v.into_iter().map(|(x, y)| IntPoint::new(x, y)).collect::<Vec<_>>())
        .prop_filter("general position", |pts| order_type_int(pts).is_ok() && distinct(pts))
}

fn distinct(pts: &[IntPoint]) -> bool {
    (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| pts[i] != pts[j]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn orient_is_antisymmetric(a in (-50i64..50, -50i64..50), b in (-50i64..50, -50i64..50), c in (-50i64..50, -50i64..50)) {
        let (a, b, c) = (p(a.0, a.1), p(b.0, b.1), p(c.0, c.1));
        let o = orient(&a, &b, &c);
        prop_assert_eq!(orient(&b, &a, &c), -o);
        prop_assert_eq!(orient(&a, &c, &b), -o);
        prop_assert_eq!(orient(&c, &b, &a), -o);
        prop_assert_eq!(orient(&b, &c, &a), o);
    }

    #[test]
    fn four_point_convexity_matches_crossing_pairing(pts in general_position_ints(30, 4)) {
        let cfg = Configuration::from_int_points(&pts);
        let q: Vec<ExactPoint> = cfg.points().to_vec();
        let pairings = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
        let crossing = pairings
            .iter()
            .filter(|&&(a, b, c, d)| segments_cross(&q[a], &q[b], &q[c], &q[d]))
            .count();
        prop_assert!(crossing <= 1);
        prop_assert_eq!(is_convex_position(&cfg).unwrap(), crossing == 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_type_invariant_under_positive_affine_maps(
        pts in general_position_ints(20, 6),
        m in (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4),
        t in (-100i64..100, -100i64..100),
    ) {
        let (a, b, c, d) = m;
        prop_assume!(a * d - b * c > 0);
        let mapped: Vec<IntPoint> = pts
            .iter()
            .map(|q| IntPoint::new(a * q.x + b * q.y + t.0, c * q.x + d * q.y + t.1))
            .collect();
        let expect = order_type_int(&mapped).unwrap();
        let got = order_type(&Configuration::from_int_points(&pts)).unwrap();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn canonical_form_matches_brute_force(pts in general_position_ints(12, 5)) {
        let sig = order_type_int(&pts).unwrap();
        prop_assert_eq!(canonicalize(&sig).unwrap().signs, brute_canonical(&sig));
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(pts in general_position_ints(40, 7), seed in 0u64..1000) {
        let sig = canonicalize(&order_type_int(&pts).unwrap()).unwrap();
        let mut perm: Vec<usize> = (0..pts.len()).collect();
        // cheap deterministic shuffle
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled: Vec<IntPoint> = perm.iter().map(|&i| pts[i]).collect();
        let mirrored: Vec<IntPoint> = pts.iter().map(|q| IntPoint::new(-q.x, q.y)).collect();
        prop_assert_eq!(canonicalize(&order_type_int(&shuffled).unwrap()).unwrap(), sig.clone());
        prop_assert_eq!(canonicalize(&order_type_int(&mirrored).unwrap()).unwrap(), sig.clone());
        prop_assert_eq!(canonicalize(&sig).unwrap(), sig);
    }

    #[test]
    fn abstract_canonical_is_idempotent_and_minimal(n in 3usize..=6, bits in any::<u64>()) {
        let len = n * (n - 1) * (n - 2) / 6;
        let signs = (0..len).map(|i| if bits >> (i % 64) & 1 == 1 { 1 } else { -1 }).collect();
        let sig = OrderTypeSignature::new(n, signs).unwrap();
        let c = canonicalize(&sig).unwrap();
        prop_assert_eq!(&canonicalize(&c).unwrap(), &c);
        prop_assert_eq!(c.signs, brute_canonical(&sig));
    }

    #[test]
    fn min_distance_positive_and_quadratic(pts in general_position_ints(25, 5), t in 2i64..9) {
        let cfg = Configuration::from_int_points(&pts);
        let d = min_point_line_distance(&cfg).unwrap();
        prop_assert!(d > Rational::from_integer(0.into()));
        let tt = Rational::from_integer(t.into());
        prop_assert_eq!(min_point_line_distance(&cfg.scaled(&tt)).unwrap(), d * &tt * &tt);
    }
}

#[test]
fn convex_pentagon_has_one_canonical_form_over_all_labelings() {
    let pentagon = [
        IntPoint::new(0, 0),
        IntPoint::new(4, 0),
        IntPoint::new(6, 3),
        IntPoint::new(2, 6),
        IntPoint::new(-2, 3),
    ];
    let reference = canonicalize(&order_type_int(&pentagon).unwrap()).unwrap();
    let all = permutations(5);
    assert_eq!(all.len(), 120);
    for perm in all {
        let relabeled: Vec<IntPoint> = perm.iter().map(|&i| pentagon[i]).collect();
        let sig = order_type_int(&relabeled).unwrap();
        assert_eq!(canonicalize(&sig).unwrap(), reference);
    }
}

#[test]
fn tiny_disks_around_general_position_centers_have_same_type_transversals() {
    let centers = [(0i64, 0i64), (100, 10), (60, 90), (10, 70)];
    let c_cfg = Configuration::new(centers.iter().map(|&(x, y)| p(x, y)).collect());
    let delta2 = min_point_line_distance(&c_cfg).unwrap();
    // radius 1/2 satisfies radius^2 < delta^2 / 100 for these centers
    assert!(Rational::new(1.into(), 4.into()) < delta2 / Rational::from_integer(100.into()));
    let offsets = [(0, 0), (1, 0), (0, 1), (-1, -1)];
    let parts: Vec<Vec<ExactPoint>> = centers
        .iter()
        .enumerate()
        .map(|(i, &(cx, cy))| {
            offsets
                .iter()
                .take(2 + i % 2)
                .map(|&(dx, dy)| {
                    ExactPoint::new(
                        Rational::new((2 * cx + dx).into(), 2.into()),
                        Rational::new((2 * cy + dy).into(), 2.into()),
                    )
                })
                .collect()
        })
        .collect();
    assert!(same_type_transversals([&parts[0], &parts[1], &parts[2], &parts[3]]).unwrap());
}

#[test]
fn collinear_transversal_is_degenerate() {
    let a = vec![p(0, 0)];
    let b = vec![p(1, 1)];
    let c = vec![p(2, 2)];
    let d = vec![p(5, 0)];
    assert!(same_type_transversals([&a, &b, &c, &d]).is_err());
}
