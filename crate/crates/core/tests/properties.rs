use ceva_core::classic::{
    cevian_planes, check_ceva, concurrency_determinant, ratio_product, CevianTriple, Triangle2D,
};
use ceva_core::del_pezzo::{
    affine_blowup_member, lift_h_to_s, on_h, on_s, project_s_to_h, projective_blowup_member,
    HPoint, SPoint,
};
use ceva_core::format::{format_rational, parse_rational, InstanceFile};
use ceva_core::rank_search::{
    construct_rank_instance, low_rank_complete, verify_transversal, RankSearchConfig, SearchStatus,
};
use ceva_core::simplex::{
    check_triples_k1, complete_rank1, decide_concurrent, decide_matrix, geometric_oracle,
    random_instance, specified_minors, FaceInstance, InstanceKind, Witness,
};
use ceva_core::{
    coordinate_subspace, intersect, opposite_face, project, span, IndexSet, LinearSubspace, Point,
    Rational,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |v| !v.is_zero())
}

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(rational(), dim + 1)
        .prop_filter_map("not all zero", |c| Point::new(c).ok())
}

fn torus_point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(nonzero(), dim + 1).prop_map(|c| Point::new(c).unwrap())
}

fn arity() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=5).prop_flat_map(|n| (Just(n), 1..n))
}

fn kind() -> impl Strategy<Value = InstanceKind> {
    prop_oneof![Just(InstanceKind::Positive), Just(InstanceKind::Perturbed)]
}

fn instance() -> impl Strategy<Value = FaceInstance<Rational>> {
    (arity(), any::<u64>(), kind())
        .prop_map(|((n, k), seed, kind)| random_instance(n, k, seed, kind).unwrap())
}

fn subspace(n: usize) -> impl Strategy<Value = LinearSubspace<Rational>> {
    prop::collection::vec(prop::collection::vec(rational(), n + 1), 1..=n)
        .prop_filter_map("nonzero span", move |v| {
            LinearSubspace::from_vectors(n, v).ok()
        })
}

fn line_point() -> impl Strategy<Value = Point> {
    point(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalisation_ignores_scale(p in point(4), l in nonzero()) {
        let scaled = p.scaled(&l).unwrap();
        prop_assert_eq!(scaled.normalize().into_coords(), p.normalize().into_coords());
        prop_assert_eq!(scaled, p);
    }

    #[test]
    fn projection_is_compatible_with_sub_projection(
        p in point(5),
        outer in subsequence((0..=5).collect::<Vec<_>>(), 1..=6),
        pick in prop::collection::vec(any::<bool>(), 6),
    ) {
        let inner: Vec<usize> = outer.iter().zip(&pick).filter(|(_, &b)| b).map(|(&j, _)| j).collect();
        prop_assume!(!inner.is_empty());
        let i_set = IndexSet::new(outer.clone(), 5).unwrap();
        let j_set = IndexSet::new(inner.clone(), 5).unwrap();
        let positions: Vec<usize> = inner.iter().map(|j| i_set.position(*j).unwrap()).collect();
        let direct = project(&p, &j_set);
        let via = project(&p, &i_set)
            .and_then(|pi| project(&pi, &IndexSet::new(positions, outer.len() - 1).unwrap()));
        match direct {
            Ok(d) => prop_assert_eq!(via.unwrap(), d),
            Err(_) => prop_assert!(via.is_err()),
        }
    }

    #[test]
    fn cevian_span_meets_face_in_projection(
        p in torus_point(4),
        members in subsequence((0..=4).collect::<Vec<_>>(), 1..=4),
    ) {
        let face = IndexSet::new(members, 4).unwrap();
        let cevian = span(&[
            LinearSubspace::from_point(&p),
            coordinate_subspace(&opposite_face(&face, 4).unwrap(), 4).unwrap(),
        ]).unwrap();
        let meet = intersect(&[cevian, coordinate_subspace(&face, 4).unwrap()]).unwrap().unwrap();
        let expected = project(&p, &face).unwrap().embed(&face, 4).unwrap();
        prop_assert_eq!(meet.as_point().unwrap(), expected);
    }

    #[test]
    fn dimension_formula(a in subspace(4), b in subspace(4), shared in 0usize..3) {
        // borrow some of A's basis into B so intersections are common
        let mut vectors = b.basis().to_vec();
        vectors.extend(a.basis().iter().take(shared).cloned());
        let b = LinearSubspace::from_vectors(4, vectors).unwrap();
        let joined = span(&[a.clone(), b.clone()]).unwrap();
        match intersect(&[a.clone(), b.clone()]).unwrap() {
            Some(meet) => prop_assert_eq!(
                joined.proj_dim() + meet.proj_dim(),
                a.proj_dim() + b.proj_dim()
            ),
            None => prop_assert_eq!(joined.proj_dim() as isize, a.proj_dim() as isize + b.proj_dim() as isize + 1),
        }
    }

    #[test]
    fn span_and_intersect_ignore_order(a in subspace(3), b in subspace(3), c in subspace(3)) {
        prop_assert_eq!(
            intersect(&[a.clone(), b.clone(), c.clone()]).unwrap(),
            intersect(&[c.clone(), a.clone(), b.clone()]).unwrap()
        );
        prop_assert_eq!(span(&[a.clone(), b.clone()]).unwrap(), span(&[b, a]).unwrap());
    }

    #[test]
    fn determinant_matches_ratio_product_on_torus(
        d in torus_point(1), e in torus_point(1), f in torus_point(1), force in any::<bool>()
    ) {
        let f = if force {
            let (d, e) = (d.coords(), e.coords());
            Point::new(vec![d[1].clone() * &e[1], d[0].clone() * &e[0]]).unwrap()
        } else {
            f
        };
        let c = CevianTriple::new(d, e, f).unwrap();
        prop_assert_eq!(
            concurrency_determinant(&c).is_zero(),
            ratio_product(&c).unwrap().is_one()
        );
    }

    #[test]
    fn determinant_matches_plane_intersection(d in line_point(), e in line_point(), f in line_point()) {
        let c = CevianTriple::new(d, e, f).unwrap();
        let meet = intersect(&cevian_planes(&c).unwrap()).unwrap();
        prop_assert_eq!(concurrency_determinant(&c).is_zero(), meet.is_some());
    }

    #[test]
    fn affine_maps_preserve_planar_verdicts(
        verts in prop::collection::vec(rational(), 6),
        params in prop::collection::vec(nonzero(), 3),
        m in prop::collection::vec(rational(), 4),
        shift in prop::collection::vec(rational(), 2),
    ) {
        let pt = |i: usize| [verts[2 * i].clone(), verts[2 * i + 1].clone()];
        let (a, b, c) = (pt(0), pt(1), pt(2));
        let Ok(t) = Triangle2D::new(a.clone(), b.clone(), c.clone()) else { return Ok(()) };
        prop_assume!(!(m[0].clone() * &m[3] - m[1].clone() * &m[2]).is_zero());
        let along = |p: &[Rational; 2], r: &[Rational; 2], s: &Rational| {
            [p[0].clone() + s * (r[0].clone() - &p[0]), p[1].clone() + s * (r[1].clone() - &p[1])]
        };
        let feet = [along(&b, &c, &params[0]), along(&a, &c, &params[1]), along(&a, &b, &params[2])];
        let map = |p: &[Rational; 2]| [
            m[0].clone() * &p[0] + m[1].clone() * &p[1] + &shift[0],
            m[2].clone() * &p[0] + m[3].clone() * &p[1] + &shift[1],
        ];
        let before = check_ceva(&t, &feet[0], &feet[1], &feet[2]).unwrap();
        let t2 = Triangle2D::new(map(&a), map(&b), map(&c)).unwrap();
        let after = check_ceva(&t2, &map(&feet[0]), &map(&feet[1]), &map(&feet[2])).unwrap();
        prop_assert_eq!(before.ratio_product, after.ratio_product);
        prop_assert_eq!(before.determinant.is_zero(), after.determinant.is_zero());
    }

    #[test]
    fn interior_point_is_recovered(
        verts in prop::collection::vec(rational(), 6),
        weights in prop::collection::vec(1i64..=9, 3),
    ) {
        let pt = |i: usize| [verts[2 * i].clone(), verts[2 * i + 1].clone()];
        let (a, b, c) = (pt(0), pt(1), pt(2));
        let Ok(t) = Triangle2D::new(a.clone(), b.clone(), c.clone()) else { return Ok(()) };
        let (u, v, w) = (q(weights[0], 1), q(weights[1], 1), q(weights[2], 1));
        let mix = |x: &Rational, y: &Rational, s: &Rational, r: &Rational, total: &Rational| {
            (x.clone() * s + y.clone() * r) / total
        };
        let foot = |p: &[Rational; 2], r: &[Rational; 2], s: &Rational, t: &Rational| {
            let total = s.clone() + t;
            [mix(&p[0], &r[0], s, t, &total), mix(&p[1], &r[1], s, t, &total)]
        };
        let total = u.clone() + &v + &w;
        let p = [
            (a[0].clone() * &u + b[0].clone() * &v + c[0].clone() * &w) / &total,
            (a[1].clone() * &u + b[1].clone() * &v + c[1].clone() * &w) / &total,
        ];
        let rep = check_ceva(&t, &foot(&b, &c, &v, &w), &foot(&a, &c, &u, &w), &foot(&a, &b, &u, &v)).unwrap();
        prop_assert!(rep.concurrent);
        prop_assert_eq!(rep.euclidean_point(), Some(p));
    }

    #[test]
    fn surface_points_project_into_and_lift_back(x in point(2), spare in line_point()) {
        let c = x.coords();
        let line = |a: &Rational, b: &Rational| Point::new(vec![a.clone(), b.clone()]).unwrap_or_else(|_| spare.clone());
        let s = SPoint::new(x.clone(), line(&c[1], &c[2]), line(&c[2], &c[0]), line(&c[0], &c[1])).unwrap();
        prop_assert!(on_s(&s));
        let h = project_s_to_h(&s).unwrap();
        prop_assert!(on_h(&h));
        let back = lift_h_to_s(&h).unwrap();
        prop_assert_eq!(&back.x, &x);
        prop_assert_eq!(project_s_to_h(&back).unwrap(), h);
    }

    #[test]
    fn hypersurface_matches_planar_determinant(d in line_point(), e in line_point(), f in line_point()) {
        let c = CevianTriple::new(d.clone(), e.clone(), f.clone()).unwrap();
        let h = HPoint::new(d, e, f).unwrap();
        prop_assert_eq!(on_h(&h), concurrency_determinant(&c).is_zero());
        if on_h(&h) {
            prop_assert!(on_s(&lift_h_to_s(&h).unwrap()));
        }
    }

    #[test]
    fn blown_up_point_admits_every_direction(l in line_point()) {
        let origin = Point::new(vec![q(0, 1), q(0, 1), q(1, 1)]).unwrap();
        prop_assert!(projective_blowup_member(&origin, &l));
        prop_assert!(affine_blowup_member(&[q(0, 1), q(0, 1)], &l));
    }

    #[test]
    fn criterion_matches_oracle(inst in instance()) {
        let rep = decide_concurrent(&inst).unwrap();
        let outcome = geometric_oracle(&inst).unwrap();
        prop_assert_eq!(rep.verdict, outcome.is_point());
        prop_assert_eq!(rep.common_point, outcome.point());
    }

    #[test]
    fn minors_induce_consistent_line_points(
        (n, k) in (3usize..=5).prop_flat_map(|n| (Just(n), 2..n)),
        seed in any::<u64>(),
    ) {
        let inst = random_instance::<Rational>(n, k, seed, InstanceKind::Positive).unwrap();
        let mut lines = Vec::new();
        for pair in IndexSet::subsets(n, 2) {
            let mut seen: Option<Point> = None;
            for (face, p) in inst.points() {
                if pair.members().iter().all(|&j| face.contains(j)) {
                    let pos: Vec<usize> = pair.members().iter().map(|&j| face.position(j).unwrap()).collect();
                    let line = project(p, &IndexSet::new(pos, k).unwrap()).unwrap();
                    if let Some(prev) = &seen {
                        prop_assert_eq!(prev, &line);
                    }
                    seen = Some(line);
                }
            }
            lines.push((pair, seen.unwrap()));
        }
        let induced = FaceInstance::new(n, 1, lines).unwrap();
        prop_assert!(check_triples_k1(&induced).unwrap().iter().all(|t| t.product.is_one()));
    }

    #[test]
    fn rank_one_completion_reprojects(inst in instance()) {
        let m = inst.build_matrix();
        if decide_concurrent(&inst).unwrap().verdict {
            let x = complete_rank1(&m).unwrap();
            for (face, p) in inst.points() {
                prop_assert_eq!(&project(&x, face).unwrap(), p);
            }
        } else {
            prop_assert!(complete_rank1(&m).is_err());
        }
    }

    #[test]
    fn rescaling_a_face_point_changes_nothing(inst in instance(), l in nonzero(), which in any::<prop::sample::Index>()) {
        let faces: Vec<IndexSet> = inst.points().map(|(f, _)| f.clone()).collect();
        let face = which.get(&faces);
        let scaled = inst.with_point(face, inst.point(face).unwrap().scaled(&l).unwrap()).unwrap();
        let (a, b) = (decide_concurrent(&inst).unwrap(), decide_concurrent(&scaled).unwrap());
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(&a.common_point, &b.common_point);
        let positions = |r: &ceva_core::Report| -> Vec<String> {
            r.witnesses.iter().map(|w| match w {
                Witness::Triple(t) => format!("{:?}", (t.a, t.b, t.c)),
                Witness::Minor(m) => format!("{:?}", (&m.rows, m.cols)),
            }).collect()
        };
        prop_assert_eq!(positions(&a), positions(&b));
    }

    #[test]
    fn row_order_does_not_matter(inst in instance(), shuffle in any::<u64>()) {
        let m = inst.build_matrix();
        let mut order: Vec<usize> = (0..m.rows().len()).collect();
        let mut state = shuffle;
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        let (a, b) = (decide_matrix(&m).unwrap(), decide_matrix(&m.permute_rows(&order).unwrap()).unwrap());
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.common_point, b.common_point);
    }

    #[test]
    fn planar_case_agrees_everywhere(d in torus_point(1), e in torus_point(1), f in torus_point(1)) {
        let c = CevianTriple::new(d.clone(), e.clone(), f.clone()).unwrap();
        let verdict = decide_concurrent(&FaceInstance::from_cevian_triple(&c).unwrap()).unwrap().verdict;
        prop_assert_eq!(verdict, concurrency_determinant(&c).is_zero());
        prop_assert_eq!(verdict, on_h(&HPoint::new(d, e, f).unwrap()));
    }

    #[test]
    fn minor_count_matches_overlaps(inst in instance()) {
        let m = inst.build_matrix();
        let rows: Vec<&IndexSet> = m.rows().iter().map(|(f, _)| f).collect();
        let mut expected = 0;
        for (i, a) in rows.iter().enumerate() {
            for b in &rows[i + 1..] {
                let shared = a.intersection(b).len();
                expected += shared * shared.saturating_sub(1) / 2;
            }
        }
        prop_assert_eq!(specified_minors(&m).len(), expected);
    }

    #[test]
    fn rationals_round_trip_as_strings(v in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
    }

    #[test]
    fn instance_files_round_trip(inst in instance()) {
        let file = InstanceFile::face(inst);
        let text = file.to_json();
        prop_assert_eq!(InstanceFile::from_json(&text).unwrap(), file);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn found_completions_verify(
        (n, k, r) in prop_oneof![Just((3usize, 1usize, 1usize)), Just((4, 1, 1)), Just((4, 2, 1))],
        seed in any::<u64>(),
    ) {
        let m = construct_rank_instance::<Rational>(n, k, r, seed).unwrap();
        let res = low_rank_complete::<_, f64>(&m, &RankSearchConfig::with_rank(r)).unwrap();
        if res.status == SearchStatus::Found {
            prop_assert!(res.residual <= 1e-8);
            let inst = m.to_instance().unwrap();
            prop_assert!(verify_transversal(&inst, res.subspace.as_ref().unwrap(), 1e-8).unwrap());
        }
    }

    #[test]
    fn rank_zero_search_has_no_false_positives(inst in instance()) {
        let cfg = RankSearchConfig { tol: 1e-10, ..RankSearchConfig::default() };
        let res = low_rank_complete::<_, f64>(&inst.build_matrix(), &cfg).unwrap();
        if res.status == SearchStatus::Found {
            prop_assert!(decide_concurrent(&inst).unwrap().verdict);
        }
    }

    #[test]
    fn found_persists_at_higher_rank((n, k) in prop_oneof![Just((3usize, 1usize)), Just((4, 2))], seed in any::<u64>()) {
        let m = construct_rank_instance::<Rational>(n, k, 1, seed).unwrap();
        let low = low_rank_complete::<_, f64>(&m, &RankSearchConfig::with_rank(1)).unwrap();
        prop_assume!(low.status == SearchStatus::Found);
        let high = low_rank_complete::<_, f64>(&m, &RankSearchConfig::with_rank(2)).unwrap();
        prop_assert_eq!(high.status, SearchStatus::Found);
    }
}
