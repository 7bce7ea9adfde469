//! Property tests for the algebraic invariants of the calculus.

use proptest::prelude::*;

use reeb_core::abelian::{canonicalize_torsion, FgAbelianGroup};
use reeb_core::bubbling::{
    apply_operation, apply_plan, base_bouquet, contribution, delta_of_plan, BaseModel, Plan,
};
use reeb_core::manifolds::GeneratingManifold;
use reeb_core::oracle::{search_realization, SearchBounds};
use reeb_core::planner::{
    check_necessary, check_prop3, check_remark1, check_thm1, effective_minimum, plan_peel,
    plan_prop3, sequence_from_function, verify_plan, FunctionSpec, TargetSequence,
};
use reeb_core::snf::{
    homology_of_complex, smith_normal_form, tensor_complex, ChainComplex, IntMatrix,
};

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

fn arb_group() -> impl Strategy<Value = FgAbelianGroup> {
    (0usize..=4, proptest::collection::vec(2u64..=48, 0..4))
        .prop_map(|(rank, torsion)| FgAbelianGroup::new(rank, torsion).unwrap())
}

fn arb_manifold() -> impl Strategy<Value = GeneratingManifold> {
    prop_oneof![
        Just(GeneratingManifold::point()),
        (1usize..=6).prop_map(|d| GeneratingManifold::sphere(d).unwrap()),
        (2usize..=6).prop_flat_map(|d| {
            proptest::collection::vec(1usize..=d / 2, 1..=4).prop_map(move |firsts| {
                let summands = firsts.into_iter().map(|a| (a, d - a)).collect();
                GeneratingManifold::connected_sum(d, summands).unwrap()
            })
        }),
    ]
}

/// Targets whose ranks strictly increase from a chosen effective minimum.
fn staircase_target() -> impl Strategy<Value = TargetSequence> {
    (1usize..=8).prop_flat_map(|n| {
        (1usize..=n, proptest::collection::vec(1usize..=4, n + 1)).prop_map(
            move |(j0, increments)| {
                let mut ranks = vec![0usize; n + 1];
                let mut acc = 0;
                for j in j0..=n {
                    acc += increments[j];
                    ranks[j] = acc;
                }
                TargetSequence::from_ranks(&ranks).unwrap()
            },
        )
    })
}

/// Free targets with mildly drifting ranks; hits all checker outcomes.
fn ragged_target() -> impl Strategy<Value = TargetSequence> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(-2isize..=4, n).prop_map(move |deltas| {
            let mut ranks = vec![0usize; n + 1];
            let mut acc: isize = 0;
            for j in 1..=n {
                acc = (acc + deltas[j - 1]).max(0);
                ranks[j] = acc as usize;
            }
            TargetSequence::from_ranks(&ranks).unwrap()
        })
    })
}

/// Operation lists paired with a target dimension exceeding every
/// operation's dimension.
fn ops_with_dimension() -> impl Strategy<Value = (usize, Vec<GeneratingManifold>)> {
    (proptest::collection::vec(arb_manifold(), 0..=5), 1usize..=3).prop_map(|(ops, extra)| {
        let max_dim = ops.iter().map(|m| m.dim()).max().unwrap_or(0);
        (max_dim + extra, ops)
    })
}

// ---------------------------------------------------------------------------
// Abelian groups
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn direct_sum_is_commutative_and_associative(
        a in arb_group(),
        b in arb_group(),
        c in arb_group(),
    ) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
    }

    #[test]
    fn direct_sum_with_zero_is_identity(g in arb_group()) {
        prop_assert_eq!(g.direct_sum(&FgAbelianGroup::zero()), g);
    }

    #[test]
    fn canonical_torsion_matches_snf_of_the_diagonal_matrix(
        coefficients in proptest::collection::vec(2u64..=60, 0..5),
    ) {
        // Two independent routes to the invariant factors: the gcd/lcm
        // sweep and Smith normal form of diag(coefficients).
        let as_big: Vec<_> = coefficients.iter().map(|&c| c.into()).collect();
        let chain = canonicalize_torsion(&as_big).unwrap();
        let k = coefficients.len();
        let mut diag = IntMatrix::zeros(k, k);
        for (i, &c) in coefficients.iter().enumerate() {
            diag.set(i, i, num_bigint::BigInt::from(c));
        }
        let snf = smith_normal_form(&diag);
        prop_assert_eq!(snf.rank, k);
        let nontrivial: Vec<num_bigint::BigUint> = snf
            .diagonal
            .into_iter()
            .filter(|d| *d > 1u32.into())
            .collect();
        prop_assert_eq!(chain, nontrivial);
    }

    #[test]
    fn canonicalize_is_idempotent_and_order_invariant(
        coefficients in proptest::collection::vec(2u64..=60, 0..5).prop_shuffle(),
    ) {
        let original: Vec<_> = coefficients.iter().map(|&c| c.into()).collect();
        let mut reversed = original.clone();
        reversed.reverse();
        let chain = canonicalize_torsion(&original).unwrap();
        prop_assert_eq!(canonicalize_torsion(&chain).unwrap(), chain.clone());
        prop_assert_eq!(canonicalize_torsion(&reversed).unwrap(), chain.clone());
        // The chain really divides.
        for pair in chain.windows(2) {
            prop_assert!((&pair[1] % &pair[0]) == 0u32.into());
        }
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum ElemOp {
    Swap(usize, usize),
    Negate(usize),
    AddMul(usize, usize, i64),
}

fn arb_elem_ops(size: usize) -> impl Strategy<Value = Vec<ElemOp>> {
    proptest::collection::vec((0usize..3, 0..size, 0..size, -3i64..=3), 0..12).prop_map(|raw| {
        raw.into_iter()
            .filter_map(|(kind, i, j, c)| match kind {
                0 if i != j => Some(ElemOp::Swap(i, j)),
                1 => Some(ElemOp::Negate(i)),
                2 if i != j && c != 0 => Some(ElemOp::AddMul(i, j, c)),
                _ => None,
            })
            .collect()
    })
}

/// Product of elementary matrices: always unimodular.
fn unimodular(size: usize, ops: &[ElemOp]) -> IntMatrix {
    let mut m = IntMatrix::identity(size);
    for op in ops {
        match *op {
            ElemOp::Swap(a, b) => {
                for j in 0..size {
                    let x = m.get(a, j).clone();
                    let y = m.get(b, j).clone();
                    m.set(a, j, y);
                    m.set(b, j, x);
                }
            }
            ElemOp::Negate(a) => {
                for j in 0..size {
                    let v = -m.get(a, j).clone();
                    m.set(a, j, v);
                }
            }
            ElemOp::AddMul(a, b, c) => {
                for j in 0..size {
                    let v = m.get(a, j) + m.get(b, j) * c;
                    m.set(a, j, v);
                }
            }
        }
    }
    m
}

proptest! {
    #[test]
    fn snf_is_a_unimodular_equivalence_invariant(
        (rows, cols) in (1usize..=5, 1usize..=5),
        seed in proptest::collection::vec(-9i64..=9, 25),
        p_ops in arb_elem_ops(5),
        q_ops in arb_elem_ops(5),
    ) {
        let entries: Vec<i64> = seed.iter().take(rows * cols).copied().collect();
        let a = IntMatrix::from_i64(rows, cols, &entries).unwrap();
        let p_ops: Vec<ElemOp> = p_ops
            .into_iter()
            .filter(|op| match *op {
                ElemOp::Swap(i, j) | ElemOp::AddMul(i, j, _) => i < rows && j < rows,
                ElemOp::Negate(i) => i < rows,
            })
            .collect();
        let q_ops: Vec<ElemOp> = q_ops
            .into_iter()
            .filter(|op| match *op {
                ElemOp::Swap(i, j) | ElemOp::AddMul(i, j, _) => i < cols && j < cols,
                ElemOp::Negate(i) => i < cols,
            })
            .collect();
        let p = unimodular(rows, &p_ops);
        let q = unimodular(cols, &q_ops);
        let transformed = p.mul(&a).unwrap().mul(&q).unwrap();
        prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&transformed));
    }

    #[test]
    fn snf_diagonal_is_a_divisibility_chain(
        (rows, cols) in (1usize..=5, 1usize..=5),
        seed in proptest::collection::vec(-9i64..=9, 25),
    ) {
        let entries: Vec<i64> = seed.iter().take(rows * cols).copied().collect();
        let snf = smith_normal_form(&IntMatrix::from_i64(rows, cols, &entries).unwrap());
        prop_assert_eq!(snf.rank, snf.diagonal.len());
        for pair in snf.diagonal.windows(2) {
            prop_assert!((&pair[1] % &pair[0]) == 0u32.into());
        }
    }
}

/// Torsion-free cell models with assorted nonzero boundaries.
fn torsion_free_models() -> Vec<ChainComplex> {
    let two_cell_circle = ChainComplex::new(
        vec![2, 2],
        vec![IntMatrix::from_i64(2, 2, &[-1, -1, 1, 1]).unwrap()],
    )
    .unwrap();
    let disc = ChainComplex::new(
        vec![2, 2, 1],
        vec![
            IntMatrix::from_i64(2, 2, &[-1, -1, 1, 1]).unwrap(),
            IntMatrix::from_i64(2, 1, &[1, -1]).unwrap(),
        ],
    )
    .unwrap();
    let two_cell_sphere = ChainComplex::new(
        vec![2, 2, 2],
        vec![
            IntMatrix::from_i64(2, 2, &[-1, -1, 1, 1]).unwrap(),
            IntMatrix::from_i64(2, 2, &[1, 1, -1, -1]).unwrap(),
        ],
    )
    .unwrap();
    vec![
        ChainComplex::point(),
        ChainComplex::sphere(1),
        ChainComplex::sphere(2),
        ChainComplex::sphere(3),
        two_cell_circle,
        disc,
        two_cell_sphere,
    ]
}

proptest! {
    #[test]
    fn tensor_ranks_follow_the_kunneth_convolution(left in 0usize..7, right in 0usize..7) {
        let models = torsion_free_models();
        let (c, d) = (&models[left], &models[right]);
        let hc: Vec<usize> = homology_of_complex(c).iter().map(|g| g.rank()).collect();
        let hd: Vec<usize> = homology_of_complex(d).iter().map(|g| g.rank()).collect();
        let ht: Vec<usize> = homology_of_complex(&tensor_complex(c, d))
            .iter()
            .map(|g| g.rank())
            .collect();
        for (k, &rank) in ht.iter().enumerate() {
            let convolution: usize = hc
                .iter()
                .enumerate()
                .filter(|(i, _)| k >= *i && k - *i < hd.len())
                .map(|(i, &ri)| ri * hd[k - i])
                .sum();
            prop_assert_eq!(rank, convolution);
        }
    }
}

// ---------------------------------------------------------------------------
// Manifold catalog
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn betti_numbers_are_palindromic_with_unit_ends(m in arb_manifold()) {
        let b = m.betti();
        let d = m.dim();
        prop_assert_eq!(b.len(), d + 1);
        prop_assert_eq!(b[0], 1);
        prop_assert_eq!(b[d], 1);
        for i in 0..=d {
            prop_assert_eq!(b[i], b[d - i]);
        }
        prop_assert!(m.homology().iter().all(|g| g.is_free()));
    }

    #[test]
    fn single_summand_ranks_match_the_tensor_oracle(a in 1usize..=3, b in 1usize..=3) {
        let product = GeneratingManifold::connected_sum(a + b, vec![(a, b)]).unwrap();
        let oracle = homology_of_complex(&tensor_complex(
            &ChainComplex::sphere(a),
            &ChainComplex::sphere(b),
        ));
        let oracle_ranks: Vec<usize> = oracle.iter().map(|g| g.rank()).collect();
        prop_assert_eq!(product.betti(), oracle_ranks);
    }
}

// ---------------------------------------------------------------------------
// Bubbling engine
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn delta_top_rank_counts_operations((n, ops) in ops_with_dimension()) {
        let count = ops.len();
        let plan = Plan::new(n, BaseModel::Ball, ops).unwrap();
        let delta = delta_of_plan(&plan).unwrap();
        prop_assert_eq!(delta.degree(n).rank(), count);
        prop_assert!(delta.groups().iter().all(|g| g.is_free()));
        prop_assert!(delta.degree(n.saturating_sub(1)).is_free());
    }

    #[test]
    fn low_degrees_are_untouched((n, ops) in ops_with_dimension(), s in arb_manifold()) {
        prop_assume!(s.dim() < n);
        let base = apply_plan(&Plan::new(n, BaseModel::Bouquet { l: 2 }, ops).unwrap()).unwrap();
        let bumped = apply_operation(&base, &s).unwrap();
        for i in 0..n - s.dim() {
            prop_assert_eq!(base.homology().degree(i), bumped.homology().degree(i));
        }
    }

    #[test]
    fn delta_is_permutation_invariant((n, ops) in ops_with_dimension()) {
        // Sorting is a permutation of the generated order.
        let mut sorted = ops.clone();
        sorted.sort_by_key(|m| format!("{m}"));
        let a = delta_of_plan(&Plan::new(n, BaseModel::Ball, ops).unwrap()).unwrap();
        let b = delta_of_plan(&Plan::new(n, BaseModel::Ball, sorted).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn apply_plan_is_base_plus_delta((n, ops) in ops_with_dimension(), l in 0usize..=3) {
        let plan = Plan::new(n, BaseModel::Bouquet { l }, ops).unwrap();
        let applied = apply_plan(&plan).unwrap();
        let expected = base_bouquet(n, l)
            .unwrap()
            .homology()
            .direct_sum(&delta_of_plan(&plan).unwrap())
            .unwrap();
        prop_assert_eq!(applied.homology(), &expected);
    }

    #[test]
    fn single_contribution_is_the_shifted_manifold_homology(s in arb_manifold(), extra in 1usize..=3) {
        let n = s.dim() + extra;
        let c = contribution(&s, n).unwrap();
        let shift = n - s.dim();
        let betti = s.betti();
        for i in 0..=n {
            let expected = if i >= shift && i - shift < betti.len() { betti[i - shift] } else { 0 };
            prop_assert_eq!(c.degree(i).rank(), expected);
        }
    }
}

// ---------------------------------------------------------------------------
// Planner
// ---------------------------------------------------------------------------

/// Count of non-sphere operations per dimension; the peel emits at most
/// one connected sum per round and rounds have strictly decreasing
/// dimension.
fn non_sphere_count_by_dim(plan: &Plan) -> std::collections::HashMap<usize, usize> {
    let mut counts = std::collections::HashMap::new();
    for op in plan.operations() {
        if matches!(op, GeneratingManifold::ConnectedSum { .. }) {
            *counts.entry(op.dim()).or_insert(0) += 1;
        }
    }
    counts
}

proptest! {
    #[test]
    fn staircase_targets_always_peel(t in staircase_target()) {
        let plan = plan_peel(&t).unwrap();
        prop_assert!(verify_plan(&plan, &t).unwrap());

        // Operation-count structure forced by the update rule.
        let ranks = t.ranks();
        let n = t.n();
        let j0 = effective_minimum(&t).unwrap();
        prop_assert_eq!(plan.operations().len(), ranks[n]);
        let max_dim = plan.operations().iter().map(|m| m.dim()).max().unwrap();
        prop_assert_eq!(max_dim, n - j0);
        let top_count = plan.operations().iter().filter(|m| m.dim() == max_dim).count();
        prop_assert_eq!(top_count, ranks[j0]);

        for (_, count) in non_sphere_count_by_dim(&plan) {
            prop_assert!(count <= 1);
        }
    }

    #[test]
    fn checker_implications_hold(t in ragged_target()) {
        let thm1 = check_thm1(&t).unwrap();
        let remark1 = check_remark1(&t).unwrap();
        let necessary = check_necessary(&t).is_empty();
        if thm1 {
            prop_assert!(remark1, "thm1 implies remark1 on {:?}", t.ranks());
        }
        if remark1 {
            prop_assert!(necessary, "remark1 implies the necessary conditions on {:?}", t.ranks());
        }
    }

    #[test]
    fn remark1_targets_always_peel(t in ragged_target()) {
        if check_remark1(&t).unwrap() {
            let plan = plan_peel(&t).unwrap();
            prop_assert!(verify_plan(&plan, &t).unwrap());
            for (_, count) in non_sphere_count_by_dim(&plan) {
                prop_assert!(count <= 1);
            }
        }
    }

    #[test]
    fn budgeted_targets_get_sphere_point_plans(
        n in 2usize..=7,
        middles in proptest::collection::vec(0usize..=3, 6),
        slack in 0usize..=5,
    ) {
        let mut ranks = vec![0usize; n + 1];
        ranks[1..n].copy_from_slice(&middles[..n - 1]);
        let middle_total: usize = ranks[1..n].iter().sum();
        ranks[n] = middle_total + slack;
        let t = TargetSequence::from_ranks(&ranks).unwrap();
        prop_assert!(check_prop3(&t).unwrap());
        let plan = plan_prop3(&t).unwrap();
        prop_assert_eq!(plan.operations().len(), ranks[n]);
        let spheres_and_points_only = plan
            .operations()
            .iter()
            .all(|m| !matches!(m, GeneratingManifold::ConnectedSum { .. }));
        prop_assert!(spheres_and_points_only);
        prop_assert!(verify_plan(&plan, &t).unwrap());
    }

    #[test]
    fn function_sequences_are_stable_under_extension(
        which in 0usize..5,
        n in 1usize..=8,
        extra in 1usize..=4,
    ) {
        let spec = match which {
            0 => FunctionSpec::polynomial_from_integers(&[0, 0, 1]).unwrap(),
            1 => FunctionSpec::polynomial_from_integers(&[-5, 1]).unwrap(),
            2 => FunctionSpec::exponential_with_integer_base(2).unwrap(),
            3 => FunctionSpec::logarithm_with_integer_base(2).unwrap(),
            _ => serde_json::from_str(r#"{"kind":"polynomial","coeffs":["-7/2","1/3","1"]}"#).unwrap(),
        };
        let short = sequence_from_function(&spec, n).unwrap();
        let long = sequence_from_function(&spec, n + extra).unwrap();
        prop_assert_eq!(&long.ranks()[..=n], &short.ranks()[..]);
    }
}

// ---------------------------------------------------------------------------
// Oracle agreement
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn oracle_agrees_with_the_planners(
        n in 1usize..=4,
        raw in proptest::collection::vec(0usize..=4, 5),
    ) {
        let mut ranks = vec![0usize; n + 1];
        ranks[1..=n].copy_from_slice(&raw[1..=n]);
        let total: usize = ranks.iter().sum();
        prop_assume!(total <= 8);
        let t = TargetSequence::from_ranks(&ranks).unwrap();
        let outcome = search_realization(&t, &SearchBounds::default()).unwrap();
        if let Some(plan) = outcome.plan() {
            prop_assert!(verify_plan(plan, &t).unwrap());
        }
        if let Ok(plan) = plan_peel(&t) {
            prop_assert!(verify_plan(&plan, &t).unwrap());
            prop_assert!(outcome.realized(), "peel found a plan the oracle missed on {ranks:?}");
        }
        if check_prop3(&t).unwrap() {
            prop_assert!(outcome.realized(), "budget holds but oracle infeasible on {ranks:?}");
        }
        if !outcome.realized() {
            prop_assert!(plan_peel(&t).is_err());
            prop_assert!(!check_prop3(&t).unwrap());
        }
    }
}
