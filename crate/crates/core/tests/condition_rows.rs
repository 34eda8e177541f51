//! Properties of the condition matrices built from sampled geometry.

use postulation_core::config::{ComponentKind as K, Constraint, Hypersurface, Ruling};
use postulation_core::ledger::{component_conditions, expected_counts};
use postulation_core::linalg::random_invertible;
use postulation_core::scheme::{assemble_matrix, sample_config, Geometry, RowBuilder, SundialRows};
use postulation_core::{DenseMatrix, PrimeField, SchemeConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f() -> PrimeField {
    PrimeField::default()
}

fn all_kinds(n: u32) -> Vec<K> {
    let mut kinds = vec![
        K::Line,
        K::DOUBLE_LINE,
        K::FatLinearSpace { dim: 1, mult: 3 },
        K::FatLinearSpace { dim: 0, mult: 3 },
        K::FatPoint { mult: 1 },
        K::FatPoint { mult: 2 },
        K::FatPoint { mult: 4 },
        K::CollinearPoints { count: 1 },
        K::CollinearPoints { count: 5 },
        K::Sundial,
        K::DegenerateConic,
    ];
    if n >= 3 {
        kinds.push(K::FatLinearSpace { dim: 2, mult: 2 });
    }
    if n >= 4 {
        kinds.push(K::FatLinearSpace { dim: n - 1, mult: 1 });
    }
    kinds
}

#[test]
fn row_count_equals_condition_count_for_every_kind() {
    for n in 2..=5 {
        for d in 0..=5 {
            for kind in all_kinds(n) {
                let cfg = SchemeConfig::new(n, d).push(kind, 1);
                if cfg.validate().is_err() {
                    continue;
                }
                let m = assemble_matrix(&cfg, f(), u64::from(n * 31 + d)).unwrap();
                assert_eq!(m.rows() as u64, component_conditions(n, d, kind).unwrap(), "{kind} in P^{n}, d={d}");
                assert_eq!(m.cols() as u64, expected_counts(&cfg).unwrap().ambient);
            }
        }
    }
}

#[test]
fn row_count_ignores_constraints() {
    let hyper = SchemeConfig::new(4, 3)
        .with_context(Hypersurface::Hyperplane)
        .push(K::DOUBLE_LINE, 1)
        .push_constrained(K::Line, Constraint::InHyperplane, 2)
        .push_constrained(K::Sundial, Constraint::InHyperplane, 1)
        .push_constrained(K::FatPoint { mult: 3 }, Constraint::InHyperplane, 1)
        .push_constrained(K::DegenerateConic, Constraint::InHyperplane, 1);
    let quad = SchemeConfig::new(3, 4)
        .with_context(Hypersurface::Quadric)
        .push_constrained(K::Line, Constraint::OnQuadricRuling(Ruling::Second), 2)
        .push_constrained(K::CollinearPoints { count: 3 }, Constraint::OnQuadricRuling(Ruling::Second), 1)
        .push_constrained(K::Sundial, Constraint::SupportOnQuadric, 1)
        .push_constrained(K::FatPoint { mult: 2 }, Constraint::SupportOnQuadric, 1);
    for cfg in [hyper, quad] {
        let m = assemble_matrix(&cfg, f(), 5).unwrap();
        assert_eq!(m.rows() as u64, expected_counts(&cfg).unwrap().conditions);
    }
}

#[test]
fn ranks_are_invariant_under_a_change_of_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100u64 {
        let n = rng.random_range(2..=4u32);
        let d = rng.random_range(1..=4u32);
        let mut cfg = SchemeConfig::new(n, d);
        for _ in 0..rng.random_range(1..=4) {
            let kind = match rng.random_range(0..5) {
                0 => K::Line,
                1 => K::FatPoint { mult: rng.random_range(1..=d + 1) },
                2 => K::FatLinearSpace { dim: 1, mult: rng.random_range(1..=2) },
                3 => K::CollinearPoints { count: rng.random_range(1..=d + 2) },
                _ if n >= 3 => K::Sundial,
                _ => K::DegenerateConic,
            };
            cfg = cfg.push(kind, 1);
        }
        let builder = RowBuilder::new(f(), n, d).unwrap();
        let comps = sample_config(&cfg, f(), case).unwrap();
        let g = random_invertible(f(), n as usize + 1, case ^ 0xFFFF);
        let moved: Vec<_> = comps.iter().map(|c| c.transform(&g)).collect();
        let before = builder.assemble(&comps, &mut ChaCha8Rng::seed_from_u64(case)).unwrap().into_rank();
        let after = builder.assemble(&moved, &mut ChaCha8Rng::seed_from_u64(case + 1)).unwrap().into_rank();
        assert_eq!(before, after, "case {case}: {cfg}");
    }
}

#[test]
fn d_plus_one_collinear_points_span_the_line_rows() {
    for n in 2..=5 {
        for d in 1..=6 {
            let cfg = SchemeConfig::new(n, d).push(K::CollinearPoints { count: d + 1 }, 1);
            let comps = sample_config(&cfg, f(), u64::from(n + 10 * d)).unwrap();
            let Geometry::Collinear { a, b, points } = &comps[0].geometry else { panic!() };
            let builder = RowBuilder::new(f(), n, d).unwrap();
            let cols = builder.basis().len();
            let pts = DenseMatrix::from_rows(f(), cols, builder.collinear(points).unwrap());
            let line = DenseMatrix::from_rows(f(), cols, builder.line(a, b).unwrap());
            let mut both = pts.clone();
            both.stack(&line);
            assert_eq!(pts.rank(), d as usize + 1);
            assert_eq!(line.rank(), d as usize + 1);
            assert_eq!(both.rank(), d as usize + 1);
        }
    }
}

#[test]
fn one_sundial_has_the_rank_of_two_disjoint_lines() {
    for n in 3..=6 {
        for d in 2..=8 {
            let sundial = assemble_matrix(&SchemeConfig::new(n, d).push(K::Sundial, 1), f(), u64::from(d)).unwrap();
            let lines = assemble_matrix(&SchemeConfig::new(n, d).push(K::Line, 2), f(), u64::from(d)).unwrap();
            assert_eq!(sundial.rank(), 2 * (d as usize + 1), "P^{n}, d={d}");
            assert_eq!(lines.rank(), 2 * (d as usize + 1));
        }
    }
}

#[test]
fn full_sundial_emission_adds_no_rank() {
    for (n, d) in [(3, 2), (4, 3), (5, 5)] {
        let cfg = SchemeConfig::new(n, d).push(K::Sundial, 1);
        let comps = sample_config(&cfg, f(), 1).unwrap();
        let Geometry::Sundial { p, a, b, c } = &comps[0].geometry else { panic!() };
        let builder = RowBuilder::new(f(), n, d).unwrap();
        let cols = builder.basis().len();
        let full = builder.sundial(p, a, b, c, SundialRows::Full).unwrap();
        assert_eq!(full.len(), 2 * (d as usize + 1) + 4);
        let min = builder.sundial(p, a, b, c, SundialRows::Minimal).unwrap();
        let mut stacked = DenseMatrix::from_rows(f(), cols, min);
        let min_rank = stacked.rank();
        stacked.stack(&DenseMatrix::from_rows(f(), cols, full));
        assert_eq!(stacked.rank(), min_rank);
    }
}

#[test]
fn spanning_sets_have_full_rank() {
    let cfg = SchemeConfig::new(5, 3)
        .push(K::FatLinearSpace { dim: 3, mult: 2 }, 1)
        .push(K::FatLinearSpace { dim: 2, mult: 1 }, 2)
        .push(K::Line, 3);
    for seed in 0..20 {
        for c in sample_config(&cfg, f(), seed).unwrap() {
            let span = c.geometry.support_span();
            let m = DenseMatrix::from_rows(f(), 6, span.iter().map(|p| p.to_vec()));
            assert_eq!(m.rank(), span.len());
        }
    }
}

#[test]
fn assembly_is_deterministic_in_seed() {
    let cfg = SchemeConfig::double_line_and_lines(4, 4, 10).push(K::CollinearPoints { count: 3 }, 1);
    assert_eq!(assemble_matrix(&cfg, f(), 77).unwrap(), assemble_matrix(&cfg, f(), 77).unwrap());
    assert_ne!(assemble_matrix(&cfg, f(), 77).unwrap(), assemble_matrix(&cfg, f(), 78).unwrap());
}

#[test]
fn small_primes_still_produce_valid_matrices() {
    let field = PrimeField::new(10007).unwrap();
    let cfg = SchemeConfig::double_line_and_lines(3, 3, 2).push(K::CollinearPoints { count: 2 }, 1);
    let m = assemble_matrix(&cfg, field, 3).unwrap();
    assert_eq!(m.field(), field);
    assert_eq!(m.rank(), 20);
}
