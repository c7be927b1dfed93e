#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "unionbounds/event_space.hpp"
#include "unionbounds/system_io.hpp"

using namespace unionbounds;
using testing::q;

TEST_CASE("occupancy profiles of the reference systems") {
  const auto s2 = testing::s2();
  const Vector<Rational> p2 = occupancy_profile(s2);
  REQUIRE(p2.size() == 3);
  CHECK(p2(0) == q("1/4"));
  CHECK(p2(1) == q("1/2"));
  CHECK(p2(2) == q("1/4"));

  const auto s3 = testing::s3();
  const Vector<Rational> p3 = occupancy_profile(s3);
  REQUIRE(p3.size() == 4);
  CHECK(p3(0) == q("0.1"));
  CHECK(p3(1) == q("0.3"));
  CHECK(p3(2) == q("0.6"));
  CHECK(p3(3) == 0);
  CHECK(exact_union_probability(s3) == q("0.9"));
  CHECK(exact_union_probability(s2) == q("3/4"));
}

TEST_CASE("power moments") {
  const auto s3 = testing::s3();
  CHECK(power_moments(s3, 1) == q("3/2"));
  CHECK(power_moments(s3, 2) == q("27/10"));
  CHECK(power_moments(s3, 3) == q("51/10"));
  CHECK(power_moments(testing::s2(), 2) == q("3/2"));
  CHECK_THROWS_AS(power_moments(s3, 0), DomainError);
}

TEST_CASE("joint occupancy") {
  const Matrix<Rational> j2 = joint_occupancy(testing::s2());
  CHECK(j2(0, 0) == q("1/4"));
  CHECK(j2(1, 0) == q("1/4"));
  CHECK(j2(0, 1) == q("1/4"));
  CHECK(j2(1, 1) == q("1/4"));

  const Matrix<Rational> j3 = joint_occupancy(testing::s3());
  CHECK(j3(0, 0) == q("0.1"));
  CHECK(j3(1, 0) == q("0.45"));
  CHECK(j3(1, 1) == q("0.35"));
  CHECK(j3(0, 2) == q("0.2"));
  CHECK(j3(1, 2) == q("0.4"));
  CHECK(j3.row(2).isZero());
}

TEST_CASE("per-event moments") {
  const auto m2 = per_event_moments<Rational>(testing::s2(), ExponentParams{1, 1, 2, 1});
  CHECK(m2.params.n_support == 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(m2.sbar(0, k) == q("1/2"));
    CHECK(m2.sbar(1, k) == q("3/4"));
    CHECK(m2.delta_hat1(k) == q("1/4"));
    CHECK(m2.delta_bar1(k) == q("1/4"));
  }

  const auto m3 = per_event_moments<Rational>(testing::s3(), ExponentParams{1, 1, 3, 1});
  const char* s1[] = {"0.55", "0.35", "0.6"};
  const char* s2[] = {"1", "0.7", "1"};
  const char* s3[] = {"1.9", "1.4", "1.8"};
  for (int k = 0; k < 3; ++k) {
    CAPTURE(k);
    CHECK(m3.sbar(0, k) == q(s1[k]));
    CHECK(m3.sbar(1, k) == q(s2[k]));
    CHECK(m3.sbar(2, k) == q(s3[k]));
    CHECK(m3.delta_bar1(k) == 3 * q(s1[k]) - q(s2[k]));
    CHECK(m3.delta_bar2(k) == 3 * q(s2[k]) - q(s3[k]));
    CHECK(m3.delta_hat2(k) == q(s3[k]) - q(s2[k]));
  }
  CHECK(m3.event(2)[1] == q("0.35"));
  CHECK(m3.event(2).params.n_support == 3);

  // Under a = 2, rho = 1 the per-event first moment is E xi I_k.
  const auto a2 = per_event_moments<double>(testing::s3(), ExponentParams{2, 1, 2, 1});
  CHECK(a2.sbar(0, 0) == doctest::Approx(1.0));
  CHECK(a2.sbar(1, 1) == doctest::Approx(1.4));
}

TEST_CASE("per-event moments agree with intersection sums") {
  testing::Rng rng(17);
  for (int t = 0; t < 150; ++t) {
    const auto sys = rng.system(6, 24);
    const auto ref = testing::intersection_moments(sys);
    const auto m = per_event_moments<Rational>(sys, ExponentParams{1, 1, 3, 1});
    for (std::size_t k = 0; k < sys.event_count(); ++k) {
      CHECK(m.sbar(0, k) == ref.s1[k]);
      CHECK(m.sbar(1, k) == ref.s2[k]);
      CHECK(m.sbar(2, k) == ref.s3[k]);
    }
  }
}

TEST_CASE("occupancy identities on random systems") {
  testing::Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const auto sys = rng.system(8, 40);
    const Vector<Rational> p = occupancy_profile(sys);
    const Matrix<Rational> joint = joint_occupancy(sys);
    CHECK(p.sum() == 1);
    CHECK(exact_union_probability(sys) == testing::union_by_scan(sys));
    CHECK(exact_union_probability(sys) == 1 - p(0));
    // sum_i p_ik = P(A_k); sum_k p_ik = i p_i.
    for (Eigen::Index k = 0; k < joint.cols(); ++k) {
      const std::size_t one[] = {static_cast<std::size_t>(k)};
      CHECK(joint.col(k).sum() == intersection_probability(sys, one));
    }
    for (Eigen::Index i = 0; i < joint.rows(); ++i) CHECK(joint.row(i).sum() == (i + 1) * p(i + 1));
    // alpha_2 two ways: occupancy profile and the pairwise intersection table.
    CHECK(power_moments(sys, 2) == pairwise_intersection_sum(sys));
    // sum_k s_1(k) = alpha_1 and sum_k s_2(k) = alpha_2.
    const auto m = per_event_moments<Rational>(sys, ExponentParams{1, 1, 2, 1});
    CHECK(m.sbar.row(0).sum() == power_moments(sys, 1));
    CHECK(m.sbar.row(1).sum() == power_moments(sys, 2));
    // P(U) = sum_k R_k with R_k = sum_i p_ik / i.
    Rational total(0);
    for (Eigen::Index k = 0; k < joint.cols(); ++k)
      for (Eigen::Index i = 0; i < joint.rows(); ++i) total += joint(i, k) / (i + 1);
    CHECK(total == exact_union_probability(sys));
  }
}

TEST_CASE("occupancy moments") {
  const auto m = occupancy_moments<Rational>(testing::s3(), ExponentParams{1, 1, 3, 1});
  CHECK(m.params.n_support == 3);
  CHECK(m[1] == q("1.5"));
  CHECK(m[2] == q("2.7"));
  CHECK(m[3] == q("5.1"));
  const auto shifted = occupancy_moments<Rational>(testing::s3(), ExponentParams{0.0 + 2, 1, 2, 1});
  CHECK(shifted[1] == q("2.7"));
  CHECK(shifted[2] == q("5.1"));
}

TEST_CASE("empty events") {
  const auto sys = EventSystem::build({q("1/2"), q("1/2")}, {{}, {}});
  CHECK(exact_union_probability(sys) == 0);
  CHECK(power_moments(sys, 1) == 0);
  CHECK(occupancy_profile(sys)(0) == 1);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(EventSystem::build({q("1/2"), q("2/5")}, {{0}}), ValidationError);
  CHECK_THROWS_AS(EventSystem::build({q("3/2"), q("-1/2")}, {{0}}), ValidationError);
  CHECK_THROWS_AS(EventSystem::build({q("1")}, {{1}}), ValidationError);
  CHECK_THROWS_AS(EventSystem::build({}, {{}}), ValidationError);
  CHECK_THROWS_AS(EventSystem::build({q("1")}, {}), ValidationError);
  try {
    EventSystem::build({q("1/2"), q("2/5")}, {{0}});
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("9/10") != std::string::npos);
  }
}

TEST_CASE("prefix and window") {
  const auto s3 = testing::s3();
  const auto first_two = s3.prefix(2);
  CHECK(first_two.event_count() == 2);
  CHECK(exact_union_probability(first_two) == q("0.7"));
  const auto tail = s3.window(1, 2);
  CHECK(tail.event_atoms(0) == std::vector<std::size_t>{1, 3});
  CHECK(exact_union_probability(tail) == q("0.8"));
  CHECK_THROWS_AS(s3.prefix(0), DomainError);
  CHECK_THROWS_AS(s3.prefix(4), DomainError);
  CHECK_THROWS_AS(s3.window(2, 1), DomainError);
}

TEST_CASE("random systems are deterministic") {
  for (auto profile : {SystemProfile::dense, SystemProfile::sparse, SystemProfile::disjointish}) {
    const auto a = random_system(7, 6, 30, profile);
    const auto b = random_system(7, 6, 30, profile);
    CHECK(dump_system(a) == dump_system(b));
    CHECK(dump_system(a) != dump_system(random_system(8, 6, 30, profile)));
    CHECK(a.event_count() == 6);
    CHECK(a.atom_count() == 30);
  }
  CHECK(parse_profile("disjoint-ish") == SystemProfile::disjointish);
  CHECK(to_string(parse_profile("sparse")) == "sparse");
  CHECK_THROWS_AS(parse_profile("lumpy"), ValidationError);
  CHECK_THROWS_AS(random_system(1, 0, 3, SystemProfile::dense), DomainError);
}

TEST_CASE("rational parsing") {
  CHECK(q("0.25") == Rational(1, 4));
  CHECK(q("-3/6") == Rational(-1, 2));
  CHECK(q(" 7 ") == 7);
  CHECK(q("1e-2") == Rational(1, 100));
  CHECK_THROWS_AS(q("1/0"), ValidationError);
  CHECK_THROWS_AS(q("abc"), ValidationError);
  CHECK_THROWS_AS(q(""), ValidationError);
  testing::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Rational x = rng.rational(100000, 99991);
    CHECK(parse_rational(format_rational(x)) == x);
  }
}

TEST_CASE("system JSON round trip") {
  testing::Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const auto sys = rng.system(6, 20);
    const std::string text = dump_system(sys);
    const auto back = parse_system(text);
    CHECK(dump_system(back) == text);
    CHECK(back.weights() == sys.weights());
    for (std::size_t k = 0; k < sys.event_count(); ++k) CHECK(back.event_atoms(k) == sys.event_atoms(k));
  }
  const auto mixed = parse_system(R"({"weights": ["0.5", 0, "1/2"], "events": [[0], [0, 2]]})");
  CHECK(exact_union_probability(mixed) == 1);
  CHECK_THROWS_AS(parse_system(R"({"weights": ["1/2"], "events": [[0]]})"), ValidationError);
  CHECK_THROWS_AS(parse_system(R"({"weights": ["1"], "events": [[0]])"), ValidationError);
  CHECK_THROWS_AS(parse_system(R"({"events": [[0]]})"), ValidationError);
  try {
    parse_system("{\n \"weights\": [1,\n]}");
    FAIL("expected a syntax error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}
