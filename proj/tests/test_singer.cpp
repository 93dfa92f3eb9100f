#include <catch2/catch_amalgamated.hpp>

#include "singergq/incidence.hpp"
#include "singergq/singer.hpp"

using namespace singergq;

namespace {

// closure of the stored generators reproduces the stored element set
bool gens_generate(const Field& F, const SingerLift& L) {
  MatGroupOps ops{&F, false};
  auto cl = group_closure(ops, L.gens);
  return subgroup_key(cl) == subgroup_key(L.S);
}

std::vector<SingerGroupRecord> full_census(const Field& F, unsigned ell = 0) {
  std::vector<SingerGroupRecord> out;
  for (const auto& M : enumerate_bl(F))
    out.push_back(census_record(F, lift_eta(F, M, ell)));
  return out;
}

}  // namespace

TEST_CASE("candidate enumeration is lexicographic and complete") {
  Field F3(3), F4(4), F5(5);
  auto c3 = enumerate_bl(F3);
  REQUIRE(c3.size() == 3);
  for (unsigned t = 0; t < 3; ++t) {
    CHECK(c3[t].m == std::vector<std::uint8_t>{static_cast<std::uint8_t>(t)});
    CHECK(c3[t].m == scalar_candidate(F3, static_cast<fel>(t)).m);
  }
  CHECK(enumerate_bl(F4).size() == 16);
  CHECK(enumerate_bl(F5).size() == 5);
  CHECK(enumerate_bl(Field(8)).size() == 512);
  CHECK(enumerate_bl(Field(9)).size() == 81);
  // first candidate is zero, last is all p-1
  auto c9 = enumerate_bl(Field(9));
  CHECK(c9.front().m == std::vector<std::uint8_t>{0, 0, 0, 0});
  CHECK(c9.back().m == std::vector<std::uint8_t>{2, 2, 2, 2});
  CHECK_THROWS_AS(enumerate_bl(Field(32)), TooManyCandidates);
}

TEST_CASE("scalar candidates act by field multiplication") {
  Field F(9);
  for (unsigned t = 0; t < 9; ++t) {
    auto M = scalar_candidate(F, static_cast<fel>(t));
    for (unsigned b = 0; b < 9; ++b)
      CHECK(apply_candidate(F, M, static_cast<fel>(b)) ==
            F.mul(static_cast<fel>(t), static_cast<fel>(b)));
    fel back = 99;
    CHECK(candidate_scalar(F, M, &back));
    CHECK(back == t);
  }
  // the frobenius matrix over GF(4) is additive but not scalar
  Field F4(4);
  BLCandidate frobM{2, {1, 1, 0, 1}};
  for (unsigned b = 0; b < 4; ++b)
    CHECK(apply_candidate(F4, frobM, static_cast<fel>(b)) ==
          F4.frob(static_cast<fel>(b)));
  CHECK_FALSE(candidate_scalar(F4, frobM, nullptr));
}

TEST_CASE("plane model and its lift agree") {
  Field F(4);
  for (unsigned al = 0; al < 4; ++al)
    for (unsigned b = 0; b < 4; ++b)
      for (unsigned g = 0; g < 4; ++g) {
        Mat A = lift_map(F, 2, static_cast<fel>(al), static_cast<fel>(b),
                         static_cast<fel>(g));
        Mat U = plane_map(F, static_cast<fel>(al), static_cast<fel>(b),
                          static_cast<fel>(g));
        CHECK(plane_part(A) == U);
        for (std::uint32_t pt = 0; pt < 16; ++pt)
          CHECK(plane_image4(F, A, pt) == plane_image3(F, U, pt));
      }
}

TEST_CASE("heisenberg plane model") {
  auto H = heisenberg(5);
  CHECK(H.elements.size() == 125);
  CHECK(H.A.size() == 25);
  CHECK(H.B.size() == 25);
  CHECK(H.Z.size() == 5);
  MatGroupOps ops{&H.F, false};
  CHECK(subgroup_key(group_closure(ops, H.elements)) ==
        subgroup_key(H.elements));
  CHECK(is_abelian(ops, H.A));
  CHECK(is_abelian(ops, H.B));
  CHECK_FALSE(is_abelian(ops, H.elements));
  CHECK(center(ops, H.elements, H.elements).size() == 5);
  CHECK_THROWS_AS(heisenberg(128), GroupTooLarge);
}

TEST_CASE("maximal abelian subgroups of the plane group") {
  // odd order: q+1 subgroups of order q^2, all of exponent p
  for (unsigned q : {3u, 5u, 9u}) {
    auto H = heisenberg(q);
    MatGroupOps ops{&H.F, false};
    auto mab = maximal_abelian_subgroups(ops, H.elements);
    REQUIRE(mab.size() == q + 1);
    std::size_t elem = 0;
    for (auto& sub : mab) {
      CHECK(sub.size() == static_cast<std::size_t>(q) * q);
      if (is_elementary_abelian(ops, sub, sub, H.F.p())) ++elem;
    }
    CHECK(elem == q + 1);
  }
  // even order: q+1 subgroups but only the two distinguished ones of exponent 2
  for (unsigned q : {4u, 8u}) {
    auto H = heisenberg(q);
    MatGroupOps ops{&H.F, false};
    auto mab = maximal_abelian_subgroups(ops, H.elements);
    REQUIRE(mab.size() == q + 1);
    std::size_t elem = 0;
    for (auto& sub : mab) {
      CHECK(sub.size() == static_cast<std::size_t>(q) * q);
      if (is_elementary_abelian(ops, sub, sub, 2)) ++elem;
    }
    CHECK(elem == 2);
    // the exponent-2 ones are exactly the two coordinate subgroups
    auto ka = subgroup_key(H.A), kb = subgroup_key(H.B);
    std::size_t hit = 0;
    for (auto& sub : mab) {
      auto k = subgroup_key(sub);
      if (k == ka || k == kb) ++hit;
    }
    CHECK(hit == 2);
  }
}

TEST_CASE("quotient classification counts") {
  // abelian plane quotient iff the candidate is scalar multiplication
  for (unsigned q : {3u, 4u, 5u, 8u, 9u}) {
    Field F(q);
    auto cands = enumerate_bl(F);
    auto cls = classify_abelian_quotients(F, cands);
    CHECK(cls.abelian.size() == q);
    for (auto i : cls.abelian) CHECK(candidate_scalar(F, cands[i], nullptr));
    if (q % 2 == 0) {
      REQUIRE(cls.elementary.size() == 1);
      CHECK(cls.elementary[0] == 0);
    } else {
      CHECK(cls.elementary.size() == q);
    }
  }
}

TEST_CASE("lifts at odd q: full census") {
  // q = 3: three scalar candidates
  {
    Field F(3);
    auto recs = full_census(F);
    REQUIRE(recs.size() == 3);
    for (const auto& R : recs) {
      CHECK(R.order == 27);
      CHECK_FALSE(R.group_abelian);
      CHECK(R.center_order == 3);
      CHECK(R.derived_order == 3);
      CHECK(R.abelian_quotient);
      CHECK(R.elementary_abelian_quotient);
      CHECK(R.scalar);
    }
    CHECK(recs[0].exponent == 3);  // the translation lift
    CHECK(recs[0].nilpotency_class == 2);
    CHECK(recs[1].exponent == 9);
    CHECK(recs[2].exponent == 9);
    CHECK(recs[1].scalar_t == 1);
    CHECK(recs[2].scalar_t == 2);
  }
  // q = 5: all five lifts have the extraspecial fingerprint
  {
    Field F(5);
    auto recs = full_census(F);
    REQUIRE(recs.size() == 5);
    for (const auto& R : recs) {
      CHECK(R.order == 125);
      CHECK_FALSE(R.group_abelian);
      CHECK(R.center_order == 5);
      CHECK(R.derived_order == 5);
      CHECK(R.exponent == 5);
      CHECK(R.nilpotency_class == 2);
      CHECK(R.abelian_quotient);
      CHECK(R.elementary_abelian_quotient);
    }
  }
  // q = 9: 81 candidates, 9 scalar, the rest have class 3
  {
    Field F(9);
    auto recs = full_census(F);
    REQUIRE(recs.size() == 81);
    std::size_t scalars = 0, class2 = 0, class3 = 0, exp3 = 0;
    for (const auto& R : recs) {
      CHECK(R.order == 729);
      CHECK_FALSE(R.group_abelian);
      CHECK(R.center_order == 9);
      CHECK(R.abelian_quotient == R.scalar);
      CHECK(R.elementary_abelian_quotient == R.scalar);
      if (R.scalar) {
        ++scalars;
        CHECK(R.derived_order == 9);
      } else {
        CHECK(R.derived_order > 9);
        CHECK(R.derived_order % 9 == 0);
      }
      if (R.nilpotency_class == 2) ++class2;
      if (R.nilpotency_class == 3) ++class3;
      if (R.exponent == 3) ++exp3;
      else CHECK(R.exponent == 9);
    }
    CHECK(scalars == 9);
    CHECK(class2 == 9);
    CHECK(class3 == 72);
    CHECK(exp3 == 1);  // only the translation lift
  }
}

TEST_CASE("lifts at even q: full census") {
  // q = 4: one elementary abelian lift, fifteen nonabelian of exponent 4
  {
    Field F(4);
    auto recs = full_census(F);
    REQUIRE(recs.size() == 16);
    std::size_t ab = 0, abq = 0, elq = 0;
    for (const auto& R : recs) {
      CHECK(R.order == 64);
      if (R.group_abelian) {
        ++ab;
        CHECK(R.exponent == 2);
        CHECK(R.center_order == 64);
        CHECK(R.derived_order == 1);
        CHECK(R.nilpotency_class == 1);
      } else {
        CHECK(R.exponent == 4);
        CHECK(R.center_order == 16);
        CHECK(R.nilpotency_class == 2);
        CHECK(R.derived_order > 1);
      }
      if (R.abelian_quotient) ++abq;
      if (R.elementary_abelian_quotient) ++elq;
    }
    CHECK(ab == 1);
    CHECK(abq == 4);
    CHECK(elq == 1);
  }
  // q = 8: spot checks reached through the same interface
  {
    Field F(8);
    auto R0 = census_record(F, lift_eta(F, scalar_candidate(F, 0)));
    CHECK(R0.order == 512);
    CHECK(R0.group_abelian);
    CHECK(R0.exponent == 2);  // elementary abelian of rank 9
    auto R1 = census_record(F, lift_eta(F, scalar_candidate(F, 1)));
    CHECK_FALSE(R1.group_abelian);
    CHECK(R1.exponent == 4);
    CHECK(R1.center_order == 64);
    CHECK(R1.nilpotency_class == 2);
  }
}

TEST_CASE("stored generators generate each lift") {
  for (unsigned q : {3u, 4u, 5u}) {
    Field F(q);
    for (const auto& M : enumerate_bl(F))
      CHECK(gens_generate(F, lift_eta(F, M)));
  }
  Field F9(9);
  CHECK(gens_generate(F9, lift_eta(F9, scalar_candidate(F9, 1))));
  BLCandidate offdiag{2, {0, 1, 0, 0}};
  CHECK(gens_generate(F9, lift_eta(F9, offdiag)));
}

TEST_CASE("lifts act sharply transitively on the derived points") {
  for (unsigned q : {3u, 4u, 5u}) {
    SymplecticSpace W(q);
    DerivedSpace D = payne_at_base(W);
    Field F(q);
    for (const auto& M : enumerate_bl(F)) {
      SingerLift L = lift_eta(F, M);
      CHECK_NOTHROW(certify_sharply_transitive(W, D, L));
    }
    // also at a nonbase line label
    SingerLift L1 = lift_eta(F, scalar_candidate(F, 1), 1);
    CHECK_NOTHROW(certify_sharply_transitive(W, D, L1));
  }
  // spot checks at the prime-power sizes used by the larger runs
  {
    SymplecticSpace W(8);
    DerivedSpace D = payne_at_base(W);
    Field F(8);
    CHECK_NOTHROW(
        certify_sharply_transitive(W, D, lift_eta(F, scalar_candidate(F, 0))));
    CHECK_NOTHROW(
        certify_sharply_transitive(W, D, lift_eta(F, scalar_candidate(F, 3))));
  }
  {
    SymplecticSpace W(9);
    DerivedSpace D = payne_at_base(W);
    Field F(9);
    CHECK_NOTHROW(
        certify_sharply_transitive(W, D, lift_eta(F, scalar_candidate(F, 1))));
    BLCandidate offdiag{2, {0, 1, 0, 0}};
    CHECK_NOTHROW(certify_sharply_transitive(W, D, lift_eta(F, offdiag)));
  }
  // a too-small group is rejected
  {
    SymplecticSpace W(3);
    DerivedSpace D = payne_at_base(W);
    Field F(3);
    SingerLift L = lift_eta(F, scalar_candidate(F, 0));
    L.S.resize(9);
    CHECK_THROWS_AS(certify_sharply_transitive(W, D, L),
                    LiftNotSharplyTransitive);
  }
}

TEST_CASE("central relations inside each lift") {
  for (unsigned q : {3u, 5u}) {
    Field F(q);
    for (const auto& M : enumerate_bl(F)) {
      auto CR = central_relations(F, lift_eta(F, M));
      CHECK(CR.contains_shears);
      CHECK(CR.shears_central);
      CHECK(CR.center_is_shears);
    }
  }
  // in even characteristic the centre is strictly larger
  Field F4(4);
  auto CR0 = central_relations(F4, lift_eta(F4, scalar_candidate(F4, 0)));
  CHECK(CR0.contains_shears);
  CHECK(CR0.shears_central);
  CHECK_FALSE(CR0.center_is_shears);
  auto CR1 = central_relations(F4, lift_eta(F4, scalar_candidate(F4, 1)));
  CHECK(CR1.contains_shears);
  CHECK(CR1.shears_central);
  CHECK_FALSE(CR1.center_is_shears);
}

TEST_CASE("plane quotient of a lift matches the plane model") {
  for (unsigned q : {3u, 4u}) {
    Field F(q);
    for (const auto& M : enumerate_bl(F)) {
      auto R = quotient_matches_plane_group(F, lift_eta(F, M));
      CHECK(R.kernel_order == q);
      CHECK(R.quotient_order == static_cast<std::size_t>(q) * q);
      CHECK(R.matches_plane_group);
    }
    // also away from the base line
    auto R1 =
        quotient_matches_plane_group(F, lift_eta(F, scalar_candidate(F, 1), 2));
    CHECK(R1.kernel_order == q);
    CHECK(R1.matches_plane_group);
  }
}

TEST_CASE("cross-line overlap is the translation lift only") {
  for (unsigned q : {3u, 4u}) {
    Field F(q);
    for (unsigned e1 = 0; e1 <= q; ++e1)
      for (unsigned e2 = e1 + 1; e2 <= q; ++e2)
        CHECK(cross_line_overlap(F, e1, e2) == 1);
    CHECK(cross_line_overlap(F, 0, 0) == enumerate_bl(F).size());
  }
}

TEST_CASE("census across all lines") {
  {
    auto tot = cross_line_census(Field(3));
    CHECK(tot.lifts_total == 12);
    CHECK(tot.distinct_groups == 9);  // translation lift shared four ways
    CHECK(tot.distinct_nonabelian_quotient == 0);
    CHECK(tot.distinct_nonelementary_quotient == 0);
    CHECK(tot.abelian_quotient_per_line == 3);
    CHECK(tot.elementary_quotient_per_line == 3);
  }
  {
    auto tot = cross_line_census(Field(4));
    CHECK(tot.lifts_total == 80);
    CHECK(tot.distinct_groups == 76);
    CHECK(tot.distinct_nonabelian_quotient == 60);
    CHECK(tot.distinct_nonelementary_quotient == 75);
    CHECK(tot.abelian_quotient_per_line == 4);
    CHECK(tot.elementary_quotient_per_line == 1);
  }
}

TEST_CASE("closed-form count versus enumeration") {
  CHECK(total_count(3) == 0);
  CHECK(total_count(9) == 720);
  CHECK(total_count(4) == 74);  // does not match either enumerated count
  auto t3 = cross_line_census(Field(3));
  CHECK(static_cast<std::int64_t>(t3.distinct_nonabelian_quotient) ==
        total_count(3));
  auto t4 = cross_line_census(Field(4));
  CHECK(t4.distinct_nonabelian_quotient == 60);
  CHECK(t4.distinct_nonelementary_quotient == 75);
  CHECK(static_cast<std::int64_t>(t4.distinct_nonabelian_quotient) !=
        total_count(4));
  CHECK(static_cast<std::int64_t>(t4.distinct_nonelementary_quotient) !=
        total_count(4));
}

TEST_CASE("prime case census") {
  auto c3 = prime_case_census(3);
  CHECK(c3.abelian == 0);
  CHECK(c3.elementary == 0);
  CHECK(c3.heisenberg_like == 1);
  CHECK(c3.exponent_p2 == 2);
  CHECK_FALSE(c3.claimed_census_matches);
  auto c5 = prime_case_census(5);
  CHECK(c5.abelian == 0);
  CHECK(c5.heisenberg_like == 5);
  CHECK(c5.exponent_p2 == 0);
  CHECK_FALSE(c5.claimed_census_matches);
  auto c2 = prime_case_census(2);
  CHECK(c2.abelian == 2);
  CHECK(c2.elementary == 1);
  CHECK(c2.heisenberg_like == 0);
}

TEST_CASE("full unit-factor family and the shear-free control") {
  Field F(3);
  MatGroupOps ops{&F, false};
  auto fam = sylow_family(F);
  REQUIRE(fam.size() == 81);
  CHECK(subgroup_key(group_closure(ops, fam)) == subgroup_key(fam));
  CHECK(is_normal_in(ops, shear_subgroup(F), fam));
  // its derived subgroup contains every shear, so an order-q^3 subgroup
  // meeting the shears trivially would force the family to be abelian
  auto drv = derived_subgroup(ops, fam);
  CHECK(drv.size() == 9);
  CHECK(contains_all_shears(F, drv));
  CHECK_FALSE(is_abelian(ops, fam));
  // every lift sits inside the family
  std::unordered_set<Mat, MatHash> in_fam(fam.begin(), fam.end());
  for (const auto& M : enumerate_bl(F))
    for (const Mat& g : lift_eta(F, M).S) CHECK(in_fam.count(g) == 1);
  // the control subgroup: abelian, closed, shear-free, too small to be regular
  auto ctrl = abelian_control_subgroup(F);
  REQUIRE(ctrl.size() == 9);
  CHECK(subgroup_key(group_closure(ops, ctrl)) == subgroup_key(ctrl));
  CHECK(is_abelian(ops, ctrl));
  CHECK_FALSE(contains_all_shears(F, ctrl));
  std::size_t shears_inside = 0;
  for (const Mat& g : ctrl)
    if (g == shear(F, 0) || g == shear(F, 1) || g == shear(F, 2))
      ++shears_inside;
  CHECK(shears_inside == 1);  // identity only
  SymplecticSpace W(3);
  DerivedSpace D = payne_at_base(W);
  auto act = [&](const Mat& g, std::uint32_t dp) {
    return derived_image(W, D, g, dp);
  };
  CHECK_FALSE(is_sharply_transitive(ctrl, act, D.inc.npoints));
  CHECK_THROWS_AS(sylow_family(Field(9)), GroupTooLarge);
}

TEST_CASE("commuting dims and intersection profiles") {
  Field F(4);
  for (const auto& M : enumerate_bl(F)) {
    auto dims = commuting_dims(F, M);
    REQUIRE(dims.size() == 5);  // translation part, line part, three graphs
    CHECK(dims[1] == 0);
    // profile size equals the number of secant directions of the graph
    CHECK(intersection_profile(F, M).size() == directions_of_graph(F, M));
    // round trip through the explicit plane subgroup
    auto L = lift_eta(F, M);
    CHECK(commuting_dims_of_group(F, L.T) == dims);
  }
  Field F9(9);
  for (const auto& M : enumerate_bl(F9)) {
    CHECK(intersection_profile(F9, M).size() == directions_of_graph(F9, M));
    CHECK(commuting_dims_of_group(F9, lift_eta(F9, M).T) ==
          commuting_dims(F9, M));
  }
  // scalar candidates meet exactly one spread part, in full dimension
  auto dims0 = commuting_dims(F, scalar_candidate(F, 0));
  CHECK(dims0 == std::vector<unsigned>{2, 0, 0, 0, 0});
  auto dims1 = commuting_dims(F, scalar_candidate(F, 1));
  CHECK(dims1 == std::vector<unsigned>{0, 0, 2, 0, 0});
  CHECK(intersection_profile(F, scalar_candidate(F, 1)) ==
        std::vector<unsigned>{3});  // (2^2 - 1)/(2 - 1) prime-field points
  // group-level input validation
  std::vector<Mat> bad(5, mat_id(3));
  CHECK_THROWS_AS(commuting_dims_of_group(F, bad), WrongSize);
  std::vector<Mat> nocenter;
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned c = 0; c < 2; ++c)
        nocenter.push_back(plane_map(F, static_cast<fel>(a),
                                     static_cast<fel>(b),
                                     static_cast<fel>(c)));
  CHECK_THROWS_AS(commuting_dims_of_group(F, nocenter), NotContainingCenter);
}

TEST_CASE("subspace enumeration and complement counts") {
  CHECK(gaussian_binomial(2, 1, 3) == 4);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(2, 1, 5) == 6);
  CHECK(gaussian_binomial(6, 3, 2) == 1395);
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(6, 3, 3) == 33880);
  CHECK(gaussian_binomial(8, 4, 2) == 200787);
  // enumerator visits each subspace once
  std::size_t seen = 0;
  std::set<std::vector<vec>> uniq;
  for_each_subspace(2, 4, 2, [&](const std::vector<vec>& rows) {
    ++seen;
    uniq.insert(rows);
  });
  CHECK(seen == 35);
  CHECK(uniq.size() == 35);
  CHECK_THROWS_AS(for_each_subspace(2, 10, 5, [](const std::vector<vec>&) {}),
                  SpaceTooLarge);
  // candidate family size equals the complementary subspace count
  CHECK(count_complement_subspaces(3, 1) == 3);
  CHECK(count_complement_subspaces(2, 2) == 16);
  CHECK(count_complement_subspaces(5, 1) == 5);
  CHECK(count_complement_subspaces(2, 3) == 512);
  CHECK(count_complement_subspaces(3, 2) == 81);
}

TEST_CASE("regular spread intersection profiles") {
  for (auto [p, n] : {std::pair<unsigned, unsigned>{2, 2}, {3, 2}}) {
    SpreadSet S = regular_spread(p, n);
    REQUIRE(S.elems.size() == std::size_t(1) + 1 +
                                  ([&] {
                                    unsigned q = 1;
                                    for (unsigned i = 0; i < n; ++i) q *= p;
                                    return q - 1;
                                  }()));
    // spread parts pairwise intersect trivially
    Field Fp(p);
    for (std::size_t i = 0; i < S.elems.size(); ++i)
      for (std::size_t j = i + 1; j < S.elems.size(); ++j)
        CHECK(subspace_intersection_dim(Fp, S.elems[i], S.elems[j]) == 0);
  }
  CHECK(zeta(2, 2) == 1);
  CHECK(zeta(3, 2) == 1);
  CHECK(zeta(2, 3) == 2);
  CHECK(zeta(3, 3) == 2);
  auto prof23 = zeta_profiles(2, 3);
  REQUIRE(prof23.size() == 2);
  CHECK(prof23[0] == std::vector<unsigned>{1, 1, 1, 1, 1, 1, 1});
  CHECK(prof23[1] == std::vector<unsigned>{1, 1, 1, 1, 3});
  CHECK_THROWS_AS(zeta(2, 9), SpaceTooLarge);
}

TEST_CASE("even characteristic invariant count") {
  for (unsigned n : {2u, 3u, 4u, 5u}) {
    CHECK(even_char_invariant_count(n) == even_char_invariant_formula(n));
  }
  CHECK(even_char_invariant_formula(2) == 1);
  CHECK(even_char_invariant_formula(3) == 1);
  CHECK(even_char_invariant_formula(4) == 2);
  CHECK(even_char_invariant_formula(5) == 2);
  CHECK_THROWS_AS(even_char_invariant_count(1), std::domain_error);
}

TEST_CASE("partition counts and the analytic estimate") {
  CHECK(partition_count(5) == 7);
  CHECK(partition_count(10) == 42);
  CHECK(partition_count(50) == 204226);
  auto P5 = partitions(5);
  REQUIRE(P5.size() == 7);
  for (auto& lam : P5) {
    unsigned sum = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      sum += lam[i];
      if (i) CHECK(lam[i] <= lam[i - 1]);
    }
    CHECK(sum == 5);
  }
  CHECK(partitions(10).size() == 42);
  double ratio = hr_estimate(50) / 204226.0;
  CHECK(ratio > 1.0);
  CHECK(ratio < 1.15);
  CHECK_THROWS_AS(partition_count(61), std::domain_error);
  CHECK_THROWS_AS(partitions(31), std::domain_error);
}

TEST_CASE("partition witnesses in small spread spaces") {
  auto verify = [](unsigned p, unsigned n,
                   const std::map<std::vector<unsigned>,
                                  std::optional<PartitionWitness>>& found) {
    Field Fp(p);
    SpreadSet S = regular_spread(p, n);
    for (auto& [lam, w] : found) {
      if (!w) continue;
      REQUIRE(w->spread_idx.size() == lam.size());
      std::set<unsigned> uniq(w->spread_idx.begin(), w->spread_idx.end());
      CHECK(uniq.size() == lam.size());
      std::vector<vec> span;
      for (std::size_t j = 0; j < lam.size(); ++j) {
        unsigned d = subspace_intersection_dim(Fp, w->alpha,
                                               S.elems[w->spread_idx[j]]);
        CHECK(d == lam[j]);
        auto inter =
            subspace_intersection(Fp, w->alpha, S.elems[w->spread_idx[j]]);
        CHECK(inter.size() == lam[j]);
        span.insert(span.end(), inter.begin(), inter.end());
      }
      CHECK(rank(Fp, span) == n);
    }
  };
  auto f22 = partition_witness_search(2, 2);
  REQUIRE(f22.size() == 1);
  CHECK(f22.begin()->second.has_value());
  verify(2, 2, f22);
  auto f32 = partition_witness_search(3, 2);
  REQUIRE(f32.size() == 1);
  CHECK(f32.begin()->second.has_value());
  verify(3, 2, f32);
  auto f23 = partition_witness_search(2, 3);
  REQUIRE(f23.size() == 2);  // {2,1} and {1,1,1}
  for (auto& [lam, w] : f23) CHECK(w.has_value());
  verify(2, 3, f23);
  auto f33 = partition_witness_search(3, 3);
  REQUIRE(f33.size() == 2);
  verify(3, 3, f33);
}

TEST_CASE("second cohomology oracles") {
  CHECK(h2_bruteforce(2, 1) == 2);
  CHECK(h2_bruteforce(3, 1) == 3);
  CHECK(h2_bruteforce(5, 1) == 5);
  CHECK(h2_bruteforce(2, 2) == 64);
  CHECK(h2_bruteforce(3, 2) == 729);
  // brute force agrees with the closed form at every tested size
  for (auto [p, n] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {5, 1},
                      {2, 2}, {3, 2}, {2, 3}})
    CHECK(h2_bruteforce(p, n) == h2_order_expected(p, n));
  // ... and disagrees with the heuristic's formula beyond rank one
  CHECK(h2_order_formula(2, 2) == 16);
  CHECK(h2_order_formula(3, 2) == 81);
  CHECK(h2_bruteforce(2, 2) != h2_order_formula(2, 2));
  CHECK(h2_bruteforce(3, 2) != h2_order_formula(3, 2));
  CHECK(schur_multiplier_order(2, 9) == std::uint64_t(1) << 36);
  CHECK(schur_multiplier_order(3, 2) == 3);
  CHECK_THROWS_AS(h2_bruteforce(2, 5), SystemTooLarge);
}

TEST_CASE("fiber bound") {
  auto fb32 = fiber_bound(3, 2);
  CHECK(fb32.num == 72);
  CHECK(fb32.den == 80);
  CHECK(fb32.value == Catch::Approx(0.9));
  auto fb22 = fiber_bound(2, 2);
  CHECK(fb22.num == 15);
  CHECK(fb22.den == 15);
  CHECK(fb22.value == Catch::Approx(1.0));
  CHECK_THROWS_AS(fiber_bound(3, 1), DivisionByZero);
}

TEST_CASE("line conjugators move the distinguished line") {
  Field F(4);
  // each conjugator is a unit-factor stabilizer element
  for (unsigned ell = 0; ell <= 4; ++ell) {
    Mat C = line_conjugator(F, ell);
    CHECK(C.at(0, 0) == 1);
    CHECK(similitude_factor_entry(C) == 1);
  }
  CHECK_THROWS_AS(line_conjugator(F, 5), std::domain_error);
  // distinct labels give distinct plane direction images of (1, 0)
  std::set<std::pair<fel, fel>> dirs;
  for (unsigned ell = 0; ell <= 4; ++ell) {
    Mat U = plane_part(line_conjugator(F, ell));
    fel dx = U.at(0, 0), dy = U.at(1, 0);
    if (dy != 0) {
      fel s = F.inv(dy);
      dx = F.mul(dx, s);
      dy = 1;
    } else {
      dx = 1;
    }
    dirs.insert({dx, dy});
  }
  CHECK(dirs.size() == 5);
}
